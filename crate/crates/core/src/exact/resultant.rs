use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMat;
use super::mpoly::{det_division_free, CommRing};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Sylvester matrix of `p` (degree `m`) and `q` (degree `n`), coefficients ascending.
///
/// The first `n` rows hold shifted copies of `p`, the last `m` rows of `q`;
/// within a row coefficients run from the leading one in the left column.
pub fn sylvester<T: CommRing>(p: &[T], q: &[T]) -> Result<Vec<Vec<T>>> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Domain("Sylvester matrix of an empty coefficient list".into()));
    }
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (deg, src, count) in [(m, p, n), (n, q, m)] {
        for shift in 0..count {
            let mut row = vec![T::zero(); size];
            for k in 0..=deg {
                row[shift + k] = src[deg - k].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Resultant over any commutative ring, computed division-free.
pub fn resultant_generic<T: CommRing>(p: &[T], q: &[T]) -> Result<T> {
    Ok(det_division_free(&sylvester(p, q)?))
}

/// Integer resultant via the Bareiss determinant of the Sylvester matrix.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    let s = sylvester(p.coeffs(), q.coeffs())?;
    if s.is_empty() {
        return Ok(BigInt::from(1));
    }
    IntMat::from_vecs(s)?.det()
}

/// `D(f) = (-1)^(n(n-1)/2) Res(f, f') / f_0` where `f_0` is the leading coefficient.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = f.deg()?;
    if n == 0 {
        return Err(Error::Domain("discriminant of a constant".into()));
    }
    let r = resultant(f, &f.derivative())?;
    let (q, rem) = r.div_rem(&f.leading());
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminant() {
        let f = IntPoly::from_i64(&[3, 5, 2]);
        assert_eq!(discriminant(&f).unwrap(), BigInt::from(25 - 24));
    }

    #[test]
    fn cubic_discriminant() {
        // X^3 - X + 1: -4(-1)^3 - 27 = -23
        let f = IntPoly::from_i64(&[1, -1, 0, 1]);
        assert_eq!(discriminant(&f).unwrap(), BigInt::from(-23));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(X - 2, X^2 - 1) = (2^2 - 1) = 3
        let p = IntPoly::from_i64(&[-2, 1]);
        let q = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), BigInt::from(3));
    }
}
