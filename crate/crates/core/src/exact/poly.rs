use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial over the integers, coefficients stored in ascending order.
///
/// Trailing zeros are always stripped, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, failing on the zero polynomial.
    pub fn deg(&self) -> Result<usize> {
        self.degree()
            .ok_or_else(|| Error::Domain("zero polynomial has no degree".into()))
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Residue of `f(x)` modulo `m`, in `[0, m)`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m_big = BigInt::from(m);
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            let c = c.mod_floor(&m_big);
            let c: u128 = u128::try_from(c).unwrap_or(0);
            acc = (acc * x as u128 + c) % m as u128;
        }
        acc as u64
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &IntPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| &(&acc * g) + &IntPoly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `X^n f(1/X)` for the given `n >= deg f`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    /// Quotient and remainder when every step divides exactly in the integers,
    /// which always holds when `d` has leading coefficient `+-1`.
    pub fn div_rem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = d.deg()?;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::Domain("inexact integer polynomial division".into()));
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        Ok((IntPoly::new(q), IntPoly::new(r)))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Domain("polynomial division is not exact".into()))
        }
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

macro_rules! poly_binop {
    ($ty:ident, $tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $body(self, rhs)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $body(&self, &rhs)
            }
        }
    };
}

fn add_coeffs<T: Clone + Zero + for<'x> std::ops::AddAssign<&'x T>>(a: &[T], b: &[T]) -> Vec<T> {
    let mut v: Vec<T> = vec![T::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        v[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        v[i] += c;
    }
    v
}

fn mul_coeffs<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + Mul<Output = T> + for<'x> std::ops::AddAssign<&'x T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v: Vec<T> = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += &(x.clone() * y.clone());
        }
    }
    v
}

poly_binop!(IntPoly, Add, add, |a: &IntPoly, b: &IntPoly| IntPoly::new(add_coeffs(
    &a.coeffs, &b.coeffs
)));
poly_binop!(IntPoly, Sub, sub, |a: &IntPoly, b: &IntPoly| a + &(-b));
poly_binop!(IntPoly, Mul, mul, |a: &IntPoly, b: &IntPoly| IntPoly::new(mul_coeffs(
    &a.coeffs, &b.coeffs
)));

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}X", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}X^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Univariate polynomial over the rationals, ascending coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let lc = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((RatPoly::default(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        Ok((RatPoly::new(q), RatPoly::new(r)))
    }

    /// Scale by the positive lcm of denominators, giving an integer polynomial.
    pub fn clear_denominators(&self) -> IntPoly {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

poly_binop!(RatPoly, Add, add, |a: &RatPoly, b: &RatPoly| RatPoly::new(add_coeffs(
    &a.coeffs, &b.coeffs
)));
poly_binop!(RatPoly, Sub, sub, |a: &RatPoly, b: &RatPoly| {
    let nb: Vec<BigRational> = b.coeffs.iter().map(|c| -c).collect();
    RatPoly::new(add_coeffs(&a.coeffs, &nb))
});
poly_binop!(RatPoly, Mul, mul, |a: &RatPoly, b: &RatPoly| RatPoly::new(mul_coeffs(
    &a.coeffs, &b.coeffs
)));

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let f = IntPoly::from_i64(&[1, -1, 0, 1]);
        let g = IntPoly::from_i64(&[-1, 1]);
        assert_eq!((&f * &g).coeffs().len(), 5);
        assert_eq!(format!("{f}"), "X^3 - X + 1");
        assert_eq!(format!("{}", IntPoly::from_i64(&[0, -2, 3])), "3*X^2 - 2*X");
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[2, 0, 1]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(IntPoly::from_i64(&[1, 0, 1]).div_exact(&IntPoly::from_i64(&[0, 2])).is_err());
    }

    #[test]
    fn compose_and_reverse() {
        let f = IntPoly::from_i64(&[1, 2, 3]);
        let g = IntPoly::from_i64(&[0, 1, -1]);
        let c = f.compose(&g);
        for x in -3..4 {
            let x = BigInt::from(x);
            assert_eq!(c.eval(&x), f.eval(&g.eval(&x)));
        }
        assert_eq!(f.reversed(3), IntPoly::from_i64(&[0, 3, 2, 1]));
    }

    #[test]
    fn eval_mod_handles_negatives() {
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        assert_eq!(f.eval_mod(1, 7), 3);
    }
}
