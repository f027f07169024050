use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{DenseMatrix, IntegerMatrix};

/// `U·A·V = D` with `D` diagonal, `d_1 | d_2 | ...`, all entries non-negative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.nnz()
    }
}

/// Result of [`smith_dense`]; `diag` holds only the nonzero invariant factors.
#[derive(Clone, Debug)]
pub(crate) struct SmithDecomposition {
    pub diag: Vec<BigInt>,
    pub u: Option<DenseMatrix>,
    pub v: Option<DenseMatrix>,
    pub v_inv: Option<DenseMatrix>,
}

fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

struct Smith {
    a: DenseMatrix,
    u: Option<DenseMatrix>,
    v: Option<DenseMatrix>,
    v_inv: Option<DenseMatrix>,
}

impl Smith {
    // row_i -= q·row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        sub_row(&mut self.a, i, j, q);
        if let Some(u) = self.u.as_mut() {
            sub_row(u, i, j, q);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    // col_i -= q·col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] -= t;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] -= t;
                }
            }
        }
        if let Some(vi) = self.v_inv.as_mut() {
            // inverse of the column operation acts on rows: row_j += q·row_i
            sub_row(vi, j, i, &-q);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap(i, j);
        }
    }
}

fn sub_row(m: &mut DenseMatrix, i: usize, j: usize, q: &BigInt) {
    let (t, s) = if i < j {
        let (a, b) = m.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = m.split_at_mut(i);
        (&mut b[0], &a[j])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn min_entry(a: &DenseMatrix, t: usize, m: usize, n: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m {
        for j in t..n {
            if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `q` with `|x - q*p| <= |p|/2`.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(p);
    if (&r + &r).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

/// Dense Smith normal form with optional transform tracking.
pub(crate) fn smith_dense(
    a: DenseMatrix,
    cols: usize,
    track_u: bool,
    track_v: bool,
) -> SmithDecomposition {
    let m = a.len();
    let n = cols;
    #[cfg(debug_assertions)]
    let original = a.clone();
    let mut s = Smith {
        a,
        u: track_u.then(|| identity(m)),
        v: track_v.then(|| identity(n)),
        v_inv: track_v.then(|| identity(n)),
    };
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // Re-picking the smallest entry of the trailing block on every pass
        // keeps the entries from blowing up.
        loop {
            let Some((pi, pj)) = min_entry(&s.a, t, m, n) else {
                break;
            };
            s.row_swap(t, pi);
            s.col_swap(t, pj);
            let p = s.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !s.a[i][t].is_zero() {
                    let q = nearest_quotient(&s.a[i][t], &p);
                    s.row_sub(i, t, &q);
                    clean &= s.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !s.a[t][j].is_zero() {
                    let q = nearest_quotient(&s.a[t][j], &p);
                    s.col_sub(j, t, &q);
                    clean &= s.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pull any offending row into the pivot row
            match (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.a[i][j].is_multiple_of(&p))) {
                Some(i) => s.row_sub(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if s.a[t][t].is_zero() {
            break;
        }
        if s.a[t][t].is_negative() {
            s.row_negate(t);
        }
        diag.push(s.a[t][t].clone());
    }
    #[cfg(debug_assertions)]
    if let (Some(u), Some(v)) = (&s.u, &s.v) {
        let um = IntegerMatrix::from_dense(m, m, u);
        let am = IntegerMatrix::from_dense(m, n, &original);
        let vm = IntegerMatrix::from_dense(n, n, v);
        let dm = IntegerMatrix::from_dense(m, n, &s.a);
        debug_assert!(dm.is_diagonal());
        debug_assert_eq!(um.mul(&am).mul(&vm), dm);
    }
    SmithDecomposition {
        diag,
        u: s.u,
        v: s.v,
        v_inv: s.v_inv,
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let dec = smith_dense(a.to_dense(), n, true, true);
    let mut d = IntegerMatrix::zeros(m, n);
    for (i, x) in dec.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    SmithForm {
        u: IntegerMatrix::from_dense(m, m, &dec.u.expect("tracked")),
        d,
        v: IntegerMatrix::from_dense(n, n, &dec.v.expect("tracked")),
    }
}

/// Nonzero invariant factors, in divisibility order.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    smith_dense(a.to_dense(), a.cols(), false, false).diag
}
