//! Effective height, degree and class-splitting bounds.
//!
//! `log*|D|` is taken to be `max(1, ln|D|)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Terms of the atanh series; each term shrinks by at least a factor 9.
const SERIES_TERMS: usize = 60;

/// Rational enclosure `[lo, hi]` of `2 atanh(z) = ln((1+z)/(1-z))` for `0 <= z <= 1/3`.
fn atanh2_enclosure(z: &BigRational) -> (BigRational, BigRational) {
    let z2 = z * z;
    let mut term = z.clone();
    let mut sum = BigRational::zero();
    for j in 0..SERIES_TERMS {
        sum += &term / BigRational::from_integer(BigInt::from(2 * j + 1));
        term = &term * &z2;
    }
    // tail <= z^(2N+1) / ((2N+1)(1 - z^2))
    let tail = &term
        / (BigRational::from_integer(BigInt::from(2 * SERIES_TERMS + 1)) * (BigRational::one() - &z2));
    let two = BigRational::from_integer(BigInt::from(2));
    (&sum * &two, (sum + tail) * two)
}

/// Rational enclosure of `ln x` for an integer `x >= 1`.
pub fn ln_enclosure(x: &BigInt) -> (BigRational, BigRational) {
    assert!(x.is_positive());
    let k = x.bits() - 1;
    let m = BigRational::new(x.clone(), BigInt::one() << k);
    let one = BigRational::one();
    let z = (&m - &one) / (&m + &one);
    let (mlo, mhi) = atanh2_enclosure(&z);
    let (l2lo, l2hi) = atanh2_enclosure(&BigRational::new(BigInt::one(), BigInt::from(3)));
    let kq = BigRational::from_integer(BigInt::from(k));
    (&kq * l2lo + mlo, kq * l2hi + mhi)
}

/// Upper bound on `ln H` for polynomials of degree `n` and discriminant `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogBound {
    /// The exact value, when it is an integer.
    pub exact: Option<BigInt>,
    /// `floor` of a certified lower enclosure of the value.
    pub lower: BigInt,
    /// `ceil` of a certified upper enclosure; never below the true value.
    pub upper: BigInt,
}

impl LogBound {
    /// Decimal exponent of `upper`, for display.
    pub fn log10_upper(&self) -> f64 {
        let lead = (&self.upper >> self.upper.bits().saturating_sub(53)).to_f64().unwrap_or(1.0);
        let shift = self.upper.bits().saturating_sub(53) as f64;
        lead.log10() + shift * std::f64::consts::LOG10_2
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exact": self.exact.as_ref().map(ToString::to_string),
            "lower": self.lower.to_string(),
            "upper": self.upper.to_string(),
            "log10_upper": self.log10_upper(),
        })
    }
}

/// `ln` of the height bound: `(16 n^3)^(25 n^2) |D|^(5n-3)` in general, or
/// `n^20 8^(n^2+19) (|D| (log*|D|)^n)^(n-1)` for monic polynomials.
pub fn coeff_bound_log(n: u32, d: &BigInt, monic: bool) -> Result<LogBound> {
    if n < 2 {
        return Err(Error::Domain("degree must be >= 2".into()));
    }
    if d.is_zero() {
        return Err(Error::Domain("discriminant must be nonzero".into()));
    }
    let ad = d.abs();
    let nb = BigInt::from(n);
    if !monic {
        let base = BigInt::from(16u32) * num_traits::pow(nb, 3);
        let v = num_traits::pow(base, (25 * n * n) as usize) * num_traits::pow(ad, (5 * n - 3) as usize);
        return Ok(LogBound {
            exact: Some(v.clone()),
            lower: v.clone(),
            upper: v,
        });
    }
    let (lo, hi) = ln_enclosure(&ad);
    let one = BigRational::one();
    // log* = 1 exactly when ln|D| <= 1
    let log_star_is_one = hi <= one;
    let clamp = |x: BigRational| if x < one { one.clone() } else { x };
    let (lo, hi) = (clamp(lo), clamp(hi));
    let prefix = num_traits::pow(nb, 20) * num_traits::pow(BigInt::from(8), (n * n + 19) as usize);
    let eval = |l: &BigRational| {
        let inner = BigRational::from_integer(ad.clone()) * num_traits::pow(l.clone(), n as usize);
        BigRational::from_integer(prefix.clone()) * num_traits::pow(inner, (n - 1) as usize)
    };
    let (vlo, vhi) = (eval(&lo), eval(&hi));
    Ok(LogBound {
        exact: log_star_is_one.then(|| vhi.to_integer()),
        lower: vlo.floor().to_integer(),
        upper: vhi.ceil().to_integer(),
    })
}

/// Largest `n` allowed by `n <= 3 + 2 log|D| / log 3` (general) or `2 + 2 log|D| / log 3` (monic),
/// decided exactly as `3^(n-3) <= D^2` resp. `3^(n-2) <= D^2`.
pub fn max_degree(d: &BigInt, monic: bool) -> Result<u64> {
    if d.is_zero() {
        return Err(Error::Domain("discriminant must be nonzero".into()));
    }
    let d2 = d * d;
    let mut e = 0u64;
    let mut p = BigInt::one();
    loop {
        let next = &p * 3;
        if next > d2 {
            break;
        }
        p = next;
        e += 1;
    }
    Ok(e + if monic { 2 } else { 3 })
}

/// Upper bound on the number of GL2 classes (general) or Z classes (monic) in a Hermite class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBound {
    pub bound: BigInt,
    /// Sharper bound once the discriminant is sufficiently large.
    pub large_discriminant: Option<u64>,
}

pub fn split_counts(n: u32, monic: bool) -> Result<SplitBound> {
    if n < 2 {
        return Err(Error::Domain("degree must be >= 2".into()));
    }
    let big = || BigInt::one() << (5 * n * n) as usize;
    let (bound, large) = match (monic, n) {
        (false, 2 | 3) => (BigInt::one(), None),
        (false, 4) => (BigInt::from(10), Some(7)),
        (true, 2) => (BigInt::one(), None),
        (true, 3) => (BigInt::from(10), None),
        (true, 4) => (BigInt::from(2760), Some(182)),
        _ => (big(), None),
    };
    Ok(SplitBound {
        bound,
        large_discriminant: large,
    })
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u32,
    pub discriminant: BigInt,
    pub monic: bool,
    pub log_height_bound: LogBound,
    pub degree_cap: u64,
    pub split: SplitBound,
}

pub fn bound_report(n: u32, d: &BigInt, monic: bool) -> Result<BoundReport> {
    Ok(BoundReport {
        n,
        discriminant: d.clone(),
        monic,
        log_height_bound: coeff_bound_log(n, d, monic)?,
        degree_cap: max_degree(d, monic)?,
        split: split_counts(n, monic)?,
    })
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "discriminant": self.discriminant.to_string(),
            "monic": self.monic,
            "log_star": "max(1, ln|D|)",
            "log_height_bound": self.log_height_bound.to_json(),
            "degree_cap": self.degree_cap,
            "degree_within_cap": u64::from(self.n) <= self.degree_cap,
            "split_bound": {
                "equivalence": if self.monic { "Z" } else { "GL2(Z)" },
                "bound": self.split.bound.to_string(),
                "large_discriminant": self.split.large_discriminant,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn ln_enclosure_is_tight() {
        for x in [1i64, 2, 3, 10, 3981, 1_000_000_007] {
            let (lo, hi) = ln_enclosure(&int(x));
            let f = (x as f64).ln();
            assert!(lo.to_f64().unwrap() <= f + 1e-12 && hi.to_f64().unwrap() >= f - 1e-12);
            assert!((&hi - &lo).to_f64().unwrap() < 1e-40);
        }
    }

    #[test]
    fn degree_caps() {
        assert_eq!(max_degree(&int(1), false).unwrap(), 3);
        assert_eq!(max_degree(&int(1), true).unwrap(), 2);
        assert_eq!(max_degree(&int(3), false).unwrap(), 5);
        assert_eq!(max_degree(&int(-3981), false).unwrap(), 18);
        assert!(max_degree(&int(0), false).is_err());
    }

    #[test]
    fn general_height_bound_is_exact() {
        let b = coeff_bound_log(2, &int(5), false).unwrap();
        assert_eq!(b.exact.unwrap(), num_traits::pow(int(128), 100) * int(78125));
    }

    #[test]
    fn monic_height_bound_encloses() {
        let b = coeff_bound_log(2, &int(3), true).unwrap();
        let want = 2f64.powi(20) * 8f64.powi(23) * 3.0 * 3f64.ln().powi(2);
        let (lo, hi) = (b.lower.to_f64().unwrap(), b.upper.to_f64().unwrap());
        assert!(lo <= want * (1.0 + 1e-12) && hi >= want * (1.0 - 1e-12));
        assert!(b.upper - b.lower <= int(1));
        // log* clamps at 1
        let one = coeff_bound_log(3, &int(2), true).unwrap();
        assert_eq!(one.exact.unwrap(), num_traits::pow(int(3), 20) * num_traits::pow(int(8), 28) * int(4));
    }

    #[test]
    fn split_table() {
        assert_eq!(split_counts(3, false).unwrap().bound, int(1));
        assert_eq!(split_counts(4, true).unwrap().bound, int(2760));
        assert_eq!(split_counts(5, false).unwrap().bound, BigInt::one() << 125usize);
    }
}
