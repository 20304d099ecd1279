use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Commutative ring interface used by the division-free determinant.
pub trait CommRing:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> CommRing for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Determinant over any commutative ring via dynamic programming over column subsets.
///
/// Uses only ring operations; cost is `O(n 2^n)` multiplications, skipping zero entries.
pub fn det_division_free<T: CommRing>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    assert!(n < usize::BITS as usize, "matrix too large for subset determinant");
    let mut dp: Vec<Option<T>> = vec![None; 1 << n];
    dp[0] = Some(T::one());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let r = mask.count_ones() as usize;
        if r == n {
            dp[mask] = Some(cur);
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || m[r][c].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let term = cur.clone() * m[r][c].clone();
            let term = if above % 2 == 1 { -term } else { term };
            let slot = &mut dp[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(v) => v + term,
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(T::zero)
}

/// Sparse multivariate polynomial over the integers.
///
/// Terms are keyed by exponent vectors of a fixed length. A polynomial with zero
/// variables is a constant; mixing variable counts in one operation adopts the
/// larger count, padding constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero_in(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero_in(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero_in(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    /// `sum_i c_i X_i`.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero_in(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero_in(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn widen(&self, nvars: usize) -> MPoly {
        if self.nvars == nvars {
            return self.clone();
        }
        assert!(
            self.nvars == 0 || self.terms.is_empty(),
            "variable count mismatch"
        );
        let mut p = MPoly::zero_in(nvars);
        for c in self.terms.values() {
            p.add_term(vec![0; nvars], c.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero_in(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, BigInt::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                t *= num_traits::pow(xi.clone(), ei as usize);
            }
            s += t;
        }
        s
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division of every coefficient by `c`; `None` if some coefficient is not divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<MPoly> {
        let mut out = MPoly::zero_in(self.nvars);
        for (e, v) in &self.terms {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.add_term(e.clone(), q);
        }
        Some(out)
    }

    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == deg)
    }

    /// Substitute `X_i -> subs[i]`, each substitution living in the same target ring.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let target = subs.first().map_or(0, MPoly::nvars);
        let mut cache: Vec<Vec<MPoly>> = subs
            .iter()
            .map(|s| vec![MPoly::constant(target, BigInt::one()), s.clone()])
            .collect();
        let mut out = MPoly::zero_in(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &subs[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(0, BigInt::one())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let n = self.nvars.max(rhs.nvars);
        let mut out = self.widen(n);
        for (e, c) in &rhs.widen(n).terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let n = self.nvars.max(rhs.nvars);
        let (a, b) = (self.widen(n), rhs.widen(n));
        let mut out = MPoly::zero_in(n);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_det_matches_bareiss() {
        let rows: Vec<Vec<i64>> = vec![
            vec![3, -1, 2, 0],
            vec![1, 0, -4, 2],
            vec![5, 2, 1, 1],
            vec![0, 3, -2, 7],
        ];
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let m = crate::exact::IntMat::from_vecs(big.clone()).unwrap();
        assert_eq!(det_division_free(&big), m.det().unwrap());
    }

    #[test]
    fn symbolic_2x2() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let d = det_division_free(&[vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]]);
        assert_eq!(d, &(&x * &x) - &(&y * &y));
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &x) + &y;
        let q = p.substitute(&[&x + &y, x.clone()]);
        let pts = [BigInt::from(2), BigInt::from(-3)];
        assert_eq!(q.eval(&pts), BigInt::from(1 + 2));
    }
}
