//! Sparse row elimination used by quotient presentations.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type SparseRow = BTreeMap<usize, BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Fraction-free elimination; any nonzero pivot, rows kept primitive.
    Rational,
    /// Only `±1` pivots; stops when none remain.
    Unit,
}

/// Pivot rows in elimination order plus the rows left unreduced.
///
/// Row `k` is zero in the pivot columns of rows `0..k`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    pub pivots: Vec<(usize, SparseRow)>,
    pub residual: Vec<SparseRow>,
}

struct Work {
    rows: Vec<Option<SparseRow>>,
    by_len: BTreeSet<(usize, usize)>,
    cols: Vec<BTreeSet<usize>>,
}

impl Work {
    fn detach(&mut self, r: usize) -> SparseRow {
        let row = self.rows[r].take().expect("active row");
        self.by_len.remove(&(row.len(), r));
        for c in row.keys() {
            self.cols[*c].remove(&r);
        }
        row
    }

    fn attach(&mut self, r: usize, row: SparseRow) {
        if row.is_empty() {
            return;
        }
        self.by_len.insert((row.len(), r));
        for c in row.keys() {
            self.cols[*c].insert(r);
        }
        self.rows[r] = Some(row);
    }

    fn choose(&self, mode: Mode) -> Option<(usize, usize)> {
        let score = |c: usize, x: &BigInt| (!x.abs().is_one(), self.cols[c].len(), c);
        for &(_, r) in &self.by_len {
            let row = self.rows[r].as_ref().expect("active row");
            let best = row
                .iter()
                .filter(|(_, x)| mode == Mode::Rational || x.abs().is_one())
                .min_by_key(|(c, x)| score(**c, x));
            if let Some((c, _)) = best {
                return Some((r, *c));
            }
            if mode == Mode::Rational {
                unreachable!("active rows are nonzero");
            }
        }
        None
    }
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for x in row.values() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.values_mut() {
        *x /= &g;
    }
}

/// `a·row - b·pivot`, dropping zeros.
fn combine(row: &SparseRow, a: &BigInt, pivot: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = SparseRow::new();
    if a.is_one() {
        out = row.clone();
    } else {
        for (c, x) in row {
            out.insert(*c, a * x);
        }
    }
    for (c, y) in pivot {
        let e = out.entry(*c).or_insert_with(BigInt::zero);
        *e -= b * y;
        if e.is_zero() {
            out.remove(c);
        }
    }
    out
}

pub(crate) fn eliminate(rows: Vec<SparseRow>, ncols: usize, mode: Mode) -> Echelon {
    let mut uniq: BTreeSet<SparseRow> = BTreeSet::new();
    for mut r in rows {
        r.retain(|_, x| !x.is_zero());
        if r.is_empty() {
            continue;
        }
        if mode == Mode::Rational {
            make_primitive(&mut r);
        }
        if r.values().next().is_some_and(|x| x.is_negative()) {
            for x in r.values_mut() {
                *x = -&*x;
            }
        }
        uniq.insert(r);
    }
    let n = uniq.len();
    let mut w = Work {
        rows: vec![None; n],
        by_len: BTreeSet::new(),
        cols: vec![BTreeSet::new(); ncols],
    };
    for (i, r) in uniq.into_iter().enumerate() {
        w.attach(i, r);
    }
    let mut out = Echelon::default();
    while let Some((r, c)) = w.choose(mode) {
        let pivot = w.detach(r);
        let a = pivot[&c].clone();
        let targets: Vec<usize> = w.cols[c].iter().copied().collect();
        for i in targets {
            let row = w.detach(i);
            let b = row[&c].clone();
            let new = match mode {
                Mode::Unit => combine(&row, &BigInt::one(), &pivot, &(&b * &a)),
                Mode::Rational => {
                    let g = a.gcd(&b);
                    let mut nr = combine(&row, &(&a / &g), &pivot, &(&b / &g));
                    make_primitive(&mut nr);
                    nr
                }
            };
            w.attach(i, new);
        }
        out.pivots.push((c, pivot));
    }
    out.residual = w.rows.into_iter().flatten().collect();
    out
}

impl Echelon {
    pub fn pivot_columns(&self) -> BTreeSet<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    /// Clears the pivot columns of an integer vector; requires unit pivots.
    pub fn reduce_integer(&self, v: &mut SparseRow) {
        for (c, row) in &self.pivots {
            let Some(x) = v.get(c).cloned() else { continue };
            let a = &row[c];
            debug_assert!(a.abs().is_one());
            let q = x * a;
            for (j, y) in row {
                let e = v.entry(*j).or_insert_with(BigInt::zero);
                *e -= &q * y;
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
    }

    pub fn reduce_rational(&self, v: &mut BTreeMap<usize, BigRational>) {
        for (c, row) in &self.pivots {
            let Some(x) = v.get(c).cloned() else { continue };
            let q = x / BigRational::from_integer(row[c].clone());
            for (j, y) in row {
                let e = v.entry(*j).or_insert_with(BigRational::zero);
                *e -= &q * BigRational::from_integer(y.clone());
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
    }
}
