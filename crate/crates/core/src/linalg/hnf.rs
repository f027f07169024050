use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{DenseMatrix, IntegerMatrix};

/// Row-style Hermite normal form `H = U·A`.
///
/// The first `rank` rows of `H` are in echelon form with positive pivots,
/// entries above each pivot reduced into `[0, pivot)`; the remaining rows are
/// zero. `U` is unimodular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

fn row_axpy(rows: &mut DenseMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (a, b) = rows.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

pub fn hermite_normal_form(a: &IntegerMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.to_dense();
    let mut u: DenseMatrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivot_cols.push(c);
        r += 1;
    }
    HermiteForm {
        h: IntegerMatrix::from_dense(m, n, &h),
        u: IntegerMatrix::from_dense(m, m, &u),
        rank: r,
        pivot_cols,
    }
}

/// A basis of the integer left kernel `{ x : x·A = 0 }`, as rows.
pub fn integer_left_kernel(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let hf = hermite_normal_form(a);
    let u = hf.u.to_dense();
    u.into_iter().skip(hf.rank).collect()
}
