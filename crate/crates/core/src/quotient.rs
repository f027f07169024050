//! Presentations of graph groups as cokernels of relation matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::CanonicalGraph;
use crate::enumerate::GeneratorBasis;
use crate::error::{CloverError, Result};
use crate::linalg::sparse::{eliminate, Echelon, Mode, SparseRow};
use crate::linalg::{smith_dense, DenseMatrix, IntegerMatrix};
use crate::vector::DiagramVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Z,
    Q,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        })
    }
}

/// Structure of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotient {
    pub degree: usize,
    pub ring: Ring,
    pub free_rank: usize,
    /// Invariant factors `>= 2`, each dividing the next. Empty over `Q`.
    pub torsion: Vec<BigInt>,
    /// Classes spanning the quotient: a basis over `Q`; over `Z` the columns
    /// that survive unit-pivot elimination (a spanning set).
    pub basis_representatives: Vec<CanonicalGraph>,
    pub generator_count: usize,
    pub relation_count: usize,
}

/// Coordinates of an element of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    pub free: Vec<BigRational>,
    /// One residue per torsion factor, in `[0, d)`.
    pub torsion: Vec<BigInt>,
}

impl Coordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|x| x.is_zero())
    }

    /// Free coordinates as integers; `None` if some coordinate is fractional.
    pub fn free_integers(&self) -> Option<Vec<BigInt>> {
        self.free
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

#[derive(Clone, Debug)]
struct IntegerPart {
    residual_cols: Vec<usize>,
    residual_pos: BTreeMap<usize, usize>,
    diag: Vec<BigInt>,
    v: DenseMatrix,
    v_inv: DenseMatrix,
    untouched: Vec<usize>,
}

/// A quotient together with everything needed to reduce vectors into it.
#[derive(Clone, Debug)]
pub struct Presentation {
    quotient: GradedQuotient,
    columns: Vec<CanonicalGraph>,
    index: BTreeMap<CanonicalGraph, usize>,
    echelon: Echelon,
    free_cols: Vec<usize>,
    integer: Option<IntegerPart>,
}

fn columns_for(basis: &GeneratorBasis, ring: Ring) -> Vec<CanonicalGraph> {
    match ring {
        Ring::Z => basis.all().cloned().collect(),
        Ring::Q => basis.generators.clone(),
    }
}

fn to_row(
    v: &DiagramVector,
    index: &BTreeMap<CanonicalGraph, usize>,
    ring: Ring,
    degree: usize,
) -> Result<SparseRow> {
    if v.degree() != degree {
        return Err(CloverError::DegreeMismatch {
            expected: degree,
            found: v.degree(),
        });
    }
    let mut row = SparseRow::new();
    for (g, k) in v.iter() {
        if ring == Ring::Q && g.is_degenerate() {
            continue;
        }
        let c = index.get(g).ok_or_else(|| {
            CloverError::InvalidGraph(format!("term `{g}` lies outside the generator basis"))
        })?;
        row.insert(*c, k.clone());
    }
    Ok(row)
}

/// The relation matrix in the column order used by [`Presentation`], with
/// the `2G = 0` rows for degenerate classes appended over `Z`.
pub fn relation_matrix(
    basis: &GeneratorBasis,
    relations: &[DiagramVector],
    ring: Ring,
) -> Result<IntegerMatrix> {
    let columns = columns_for(basis, ring);
    let index: BTreeMap<CanonicalGraph, usize> = columns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let rows = relation_rows(basis, relations, ring, &index)?;
    let mut m = IntegerMatrix::zeros(rows.len(), columns.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r {
            m.set(i, *j, x.clone());
        }
    }
    Ok(m)
}

fn relation_rows(
    basis: &GeneratorBasis,
    relations: &[DiagramVector],
    ring: Ring,
    index: &BTreeMap<CanonicalGraph, usize>,
) -> Result<Vec<SparseRow>> {
    let mut rows = relations
        .iter()
        .map(|v| to_row(v, index, ring, basis.degree))
        .collect::<Result<Vec<_>>>()?;
    if ring == Ring::Z {
        for g in &basis.degenerates {
            rows.push(SparseRow::from([(index[g], BigInt::from(2))]));
        }
    }
    Ok(rows)
}

impl Presentation {
    pub fn new(basis: &GeneratorBasis, relations: &[DiagramVector], ring: Ring) -> Result<Self> {
        let columns = columns_for(basis, ring);
        let index: BTreeMap<CanonicalGraph, usize> = columns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let rows = relation_rows(basis, relations, ring, &index)?;
        let relation_count = rows.len();
        let n = columns.len();
        let mode = match ring {
            Ring::Q => Mode::Rational,
            Ring::Z => Mode::Unit,
        };
        let echelon = eliminate(rows, n, mode);
        let pivots = echelon.pivot_columns();
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let basis_representatives = free_cols.iter().map(|&c| columns[c].clone()).collect();

        let (free_rank, torsion, integer) = match ring {
            Ring::Q => (free_cols.len(), Vec::new(), None),
            Ring::Z => {
                let mut used = vec![false; n];
                for r in &echelon.residual {
                    for c in r.keys() {
                        used[*c] = true;
                    }
                }
                let residual_cols: Vec<usize> =
                    free_cols.iter().copied().filter(|&c| used[c]).collect();
                let untouched: Vec<usize> =
                    free_cols.iter().copied().filter(|&c| !used[c]).collect();
                let residual_pos: BTreeMap<usize, usize> = residual_cols
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (c, i))
                    .collect();
                let dense: DenseMatrix = echelon
                    .residual
                    .iter()
                    .map(|r| {
                        let mut d = vec![BigInt::zero(); residual_cols.len()];
                        for (c, x) in r {
                            d[residual_pos[c]] = x.clone();
                        }
                        d
                    })
                    .collect();
                let dec = smith_dense(dense, residual_cols.len(), false, true);
                let torsion: Vec<BigInt> =
                    dec.diag.iter().filter(|d| !d.is_one()).cloned().collect();
                let free_rank = residual_cols.len() - dec.diag.len() + untouched.len();
                let part = IntegerPart {
                    residual_cols,
                    residual_pos,
                    diag: dec.diag,
                    v: dec.v.expect("tracked"),
                    v_inv: dec.v_inv.expect("tracked"),
                    untouched,
                };
                (free_rank, torsion, Some(part))
            }
        };
        let quotient = GradedQuotient {
            degree: basis.degree,
            ring,
            free_rank,
            torsion,
            basis_representatives,
            generator_count: n,
            relation_count,
        };
        Ok(Presentation {
            quotient,
            columns,
            index,
            echelon,
            free_cols,
            integer,
        })
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    pub fn degree(&self) -> usize {
        self.quotient.degree
    }

    pub fn ring(&self) -> Ring {
        self.quotient.ring
    }

    pub fn free_rank(&self) -> usize {
        self.quotient.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.quotient.torsion
    }

    pub fn columns(&self) -> &[CanonicalGraph] {
        &self.columns
    }

    /// Coordinates of the image of `v`; zero iff `v` lies in the relation span.
    pub fn reduce(&self, v: &DiagramVector) -> Result<Coordinates> {
        let ring = self.quotient.ring;
        let row = to_row(v, &self.index, ring, self.quotient.degree)?;
        match &self.integer {
            None => {
                let mut q: BTreeMap<usize, BigRational> = row
                    .into_iter()
                    .map(|(c, x)| (c, BigRational::from_integer(x)))
                    .collect();
                self.echelon.reduce_rational(&mut q);
                let free = self
                    .free_cols
                    .iter()
                    .map(|c| q.get(c).cloned().unwrap_or_else(BigRational::zero))
                    .collect();
                Ok(Coordinates {
                    free,
                    torsion: Vec::new(),
                })
            }
            Some(part) => {
                let mut r = row;
                self.echelon.reduce_integer(&mut r);
                let k = part.residual_cols.len();
                let mut w = vec![BigInt::zero(); k];
                for (c, x) in &r {
                    if let Some(&i) = part.residual_pos.get(c) {
                        for (j, wj) in w.iter_mut().enumerate() {
                            let vij = &part.v[i][j];
                            if !vij.is_zero() {
                                *wj += x * vij;
                            }
                        }
                    }
                }
                let rank = part.diag.len();
                let torsion = part
                    .diag
                    .iter()
                    .zip(&w)
                    .filter(|(d, _)| !d.is_one())
                    .map(|(d, x)| x.mod_floor(d))
                    .collect();
                let mut free: Vec<BigRational> = w[rank..]
                    .iter()
                    .cloned()
                    .map(BigRational::from_integer)
                    .collect();
                for c in &part.untouched {
                    free.push(BigRational::from_integer(
                        r.get(c).cloned().unwrap_or_default(),
                    ));
                }
                Ok(Coordinates { free, torsion })
            }
        }
    }

    pub fn is_zero(&self, v: &DiagramVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Vectors whose images have free coordinates `e_0, e_1, ...`.
    pub fn free_lifts(&self) -> Vec<DiagramVector> {
        let degree = self.quotient.degree;
        let unit = |c: usize| {
            let mut v = DiagramVector::zero(degree);
            v.add_canonical(&self.columns[c], BigInt::one());
            v
        };
        match &self.integer {
            None => self.free_cols.iter().map(|&c| unit(c)).collect(),
            Some(part) => {
                let rank = part.diag.len();
                let mut out = Vec::with_capacity(self.quotient.free_rank);
                for row in &part.v_inv[rank..] {
                    let mut v = DiagramVector::zero(degree);
                    for (i, x) in row.iter().enumerate() {
                        v.add_canonical(&self.columns[part.residual_cols[i]], x.clone());
                    }
                    out.push(v);
                }
                out.extend(part.untouched.iter().map(|&c| unit(c)));
                out
            }
        }
    }
}

/// Cokernel invariants of the relation matrix over the given ring.
pub fn present_quotient(
    basis: &GeneratorBasis,
    relations: &[DiagramVector],
    ring: Ring,
) -> Result<GradedQuotient> {
    Ok(Presentation::new(basis, relations, ring)?.quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::colors;
    use crate::enumerate::enumerate;
    use crate::graph::shapes::{dumbbell, theta};
    use crate::graph::Diagram;

    #[test]
    fn degree_zero_without_relations() {
        let b = enumerate(0, &colors(&["x"])).unwrap();
        let q = present_quotient(&b, &[], Ring::Q).unwrap();
        assert_eq!(q.free_rank, 1);
        let q = present_quotient(&b, &[], Ring::Z).unwrap();
        assert_eq!(q.free_rank, 1);
        assert!(q.torsion.is_empty());
    }

    #[test]
    fn degenerates_become_two_torsion_over_z() {
        let b = enumerate(2, &[]).unwrap();
        let q = present_quotient(&b, &[], Ring::Z).unwrap();
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion, vec![BigInt::from(2)]);
        let q = present_quotient(&b, &[], Ring::Q).unwrap();
        assert_eq!(q.free_rank, 1);
    }

    #[test]
    fn relation_vectors_reduce_to_zero() {
        let b = enumerate(2, &[]).unwrap();
        let t: Diagram = theta();
        let th = DiagramVector::from_diagram(&t);
        let db = DiagramVector::from_diagram(&dumbbell::<crate::color::Color>());
        let rel = th.scaled(&BigInt::from(3)).add(&db);
        let p = Presentation::new(&b, &[rel.clone()], Ring::Z).unwrap();
        assert!(p.is_zero(&rel).unwrap());
        // theta generates Z/3 once 3·theta + dumbbell = 0 and 2·dumbbell = 0
        assert_eq!(p.free_rank(), 0);
        assert_eq!(p.torsion(), &[BigInt::from(6)]);
        let c = p.reduce(&th).unwrap();
        assert!(!c.is_zero());
        let c6 = p.reduce(&th.scaled(&BigInt::from(6))).unwrap();
        assert!(c6.is_zero());
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let b = enumerate(2, &[]).unwrap();
        let p = Presentation::new(&b, &[], Ring::Q).unwrap();
        let err = p.reduce(&DiagramVector::zero(0)).unwrap_err();
        assert!(matches!(
            err,
            CloverError::DegreeMismatch {
                expected: 2,
                found: 0
            }
        ));
    }

    #[test]
    fn free_lifts_have_unit_coordinates() {
        let b = enumerate(2, &colors(&["x"])).unwrap();
        let rels: Vec<DiagramVector> = b
            .generators
            .iter()
            .take(3)
            .zip(b.generators.iter().skip(1))
            .map(|(g, h)| {
                let mut v = DiagramVector::from_canonical(g);
                v.add_canonical(h, BigInt::from(2));
                v
            })
            .collect();
        for ring in [Ring::Q, Ring::Z] {
            let p = Presentation::new(&b, &rels, ring).unwrap();
            for (i, l) in p.free_lifts().iter().enumerate() {
                let c = p.reduce(l).unwrap();
                for (j, x) in c.free.iter().enumerate() {
                    assert_eq!(x, &BigRational::from_integer(BigInt::from((i == j) as i32)));
                }
                assert!(c.torsion.iter().all(|t| t.is_zero()));
            }
        }
    }
}
