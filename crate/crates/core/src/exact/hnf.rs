use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMat;
use crate::error::{Error, Result};

/// Row echelon form `H = T * M` with `T` unimodular.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and the
/// zero rows of `H` sit at the bottom.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub h: IntMat,
    pub t: IntMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn row_axpy(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = m.get(dst, j) - q * m.get(src, j);
        m.set(dst, j, v);
    }
}

fn row_negate(m: &mut IntMat, r: usize) {
    for x in m.row_mut(r) {
        *x = -&*x;
    }
}

pub fn echelon(m: &IntMat) -> Echelon {
    let rows = m.rows();
    let mut h = m.clone();
    let mut t = IntMat::identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for j in 0..m.cols() {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h.get(i, j).is_zero())
                .min_by(|&a, &b| h.get(a, j).abs().cmp(&h.get(b, j).abs()));
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            t.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..rows {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let q = h.get(i, j) / h.get(r, j);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut t, i, r, &q);
                if !h.get(i, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, j).is_zero() {
            continue;
        }
        if h.get(r, j).is_negative() {
            row_negate(&mut h, r);
            row_negate(&mut t, r);
        }
        let piv = h.get(r, j).clone();
        for i in 0..r {
            let q = h.get(i, j).div_floor(&piv);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut t, i, r, &q);
        }
        pivots.push(j);
        r += 1;
    }
    Echelon {
        h,
        t,
        rank: r,
        pivots,
    }
}

/// Hermite normal form with transform, `H = T * M`; requires full row rank.
pub fn hnf(m: &IntMat) -> Result<(IntMat, IntMat)> {
    let e = echelon(m);
    if e.rank < m.rows() {
        return Err(Error::Rank(format!(
            "rank {} < {} rows",
            e.rank,
            m.rows()
        )));
    }
    Ok((e.h, e.t))
}

/// HNF basis (nonzero rows) of the lattice spanned by the rows of `m`.
pub fn row_lattice(m: &IntMat) -> IntMat {
    let e = echelon(m);
    e.h.row_slice(0, e.rank)
}

/// Basis of `{ y : y * M = 0 }` in Hermite normal form, one row per generator.
pub fn left_kernel(m: &IntMat) -> IntMat {
    let e = echelon(m);
    let k = e.t.row_slice(e.rank, m.rows());
    if k.rows() == 0 {
        return k;
    }
    row_lattice(&k)
}

/// `g = gcd(a, b) = s a + t b` with `g >= 0`.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// True when all entries of the row are zero.
pub fn is_zero_row(m: &IntMat, i: usize) -> bool {
    m.row(i).iter().all(Zero::is_zero)
}

/// Absolute value of the product of the diagonal of a square HNF.
pub fn hnf_index(h: &IntMat) -> BigInt {
    (0..h.rows()).fold(BigInt::one(), |acc, i| acc * h.get(i, i))
}
