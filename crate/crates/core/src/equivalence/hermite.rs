use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgElement, EtaleAlgebra, IdealLattice};
use crate::error::{Error, Result};
use crate::exact::{discriminant, IntMat, IntPoly, RatMat};

/// Certifies Hermite equivalence of `f` and `g` through the root map `beta = expr(alpha)`.
///
/// Returns `U` with `U[k][j]` the coefficient of `alpha^(n-1-j)` in `beta^(n-1-k)`,
/// so that `[g](X) = +-[f](U^T X)`, when `Z[beta]`-span equals `Z[alpha]`-span;
/// `None` when the spans differ (which proves nothing about equivalence).
pub fn hermite_witness_check(f: &IntPoly, g: &IntPoly, expr: &IntPoly) -> Result<Option<IntMat>> {
    let n = f.deg()?;
    if g.deg()? != n {
        return Err(Error::Dimension(format!("degrees {n} and {} differ", g.deg()?)));
    }
    if n < 2 {
        return Err(Error::Domain("degree must be >= 2".into()));
    }
    if discriminant(f)?.is_zero() {
        return Err(Error::Degenerate("discriminant of f is zero".into()));
    }
    let alg = EtaleAlgebra::new(f)?;
    let beta = AlgElement::from_poly(&alg, expr);
    if !beta.eval_poly(g).is_zero() {
        return Err(Error::NotARoot);
    }
    if f.leading().abs() != g.leading().abs() {
        return Err(Error::ContentMismatch {
            f0: f.leading().abs().to_string(),
            g0: g.leading().abs().to_string(),
        });
    }
    let powers: Vec<Vec<_>> = (0..n)
        .map(|k| {
            let mut c = beta.pow((n - 1 - k) as u32).coords().to_vec();
            c.reverse();
            c
        })
        .collect();
    let u = RatMat::from_vecs(powers)?;
    if u.det()?.is_zero() {
        return Ok(None);
    }
    // both lattices in descending power order
    let mut desc = RatMat::zeros(n, n);
    for i in 0..n {
        desc.set(i, n - 1 - i, One::one());
    }
    let l_alpha = IdealLattice::new(&alg, desc.clone())?;
    let l_beta = IdealLattice::new(&alg, &u * &desc)?;
    if !l_alpha.equals(&l_beta)? {
        return Ok(None);
    }
    let u = u
        .to_int()
        .ok_or_else(|| Error::NotUnimodular("equal lattices with non-integral transition".into()))?;
    if !u.det()?.abs().is_one() {
        return Err(Error::NotUnimodular("equal lattices with |det U| != 1".into()));
    }
    Ok(Some(u))
}

/// `X f(X)` and `X^(n+1) f(1/X)` with a root map certifying their Hermite equivalence.
#[derive(Clone, Debug)]
pub struct ReduciblePair {
    pub g: IntPoly,
    pub h: IntPoly,
    pub witness: IntPoly,
    pub transition: IntMat,
}

/// Builds the reducible pair for monic `f` with `f(0) = 1`, degree at least 3.
///
/// The witness is `q(X) = X r(X)` with `r(alpha) = alpha^-2` in `Q[X]/(f)`.
pub fn reducible_pair(f: &IntPoly) -> Result<ReduciblePair> {
    let n = f.deg()?;
    if n < 3 {
        return Err(Error::Precondition("degree must be >= 3".into()));
    }
    if !f.is_monic() {
        return Err(Error::Precondition("f must be monic".into()));
    }
    if !f.coeff(0).is_one() {
        return Err(Error::Precondition(format!("f(0) = {} != 1", f.coeff(0))));
    }
    for x in [1i64, -1] {
        if f.eval(&BigInt::from(x)).is_zero() {
            return Err(Error::Precondition(format!("f has the rational root {x}")));
        }
    }
    if discriminant(f)?.is_zero() {
        return Err(Error::Precondition("f is not squarefree".into()));
    }
    let g = f.shift(1);
    let h = f.reversed(n).shift(1);
    // f = X s(X) + 1, so alpha^-1 = -s(alpha)
    let s = (f - &IntPoly::one()).div_exact(&IntPoly::x())?;
    let (_, r) = (&s * &s).div_rem(f)?;
    let witness = r.shift(1);
    let transition = hermite_witness_check(&g, &h, &witness)?
        .ok_or_else(|| Error::Precondition("root map does not certify equivalence".into()))?;
    Ok(ReduciblePair {
        g,
        h,
        witness,
        transition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::hermite_form;

    #[test]
    fn self_check_is_identity() {
        let f = IntPoly::from_i64(&[7, 5, 3, 2]);
        let u = hermite_witness_check(&f, &f, &IntPoly::x()).unwrap().unwrap();
        assert_eq!(u, IntMat::identity(3));
    }

    #[test]
    fn reducible_pair_example() {
        let f = IntPoly::from_i64(&[1, -1, 0, 1]);
        let p = reducible_pair(&f).unwrap();
        assert_eq!(p.g, IntPoly::from_i64(&[0, 1, -1, 0, 1]));
        assert_eq!(p.h, IntPoly::from_i64(&[0, 1, 0, -1, 1]));
        let fg = hermite_form(&p.g).unwrap();
        let fh = hermite_form(&p.h).unwrap();
        let moved = fg.act_gln(&p.transition.transpose()).unwrap();
        assert!(fh.sign_relative_to(&moved).is_some());
        assert!(matches!(
            reducible_pair(&IntPoly::from_i64(&[-1, -1, 0, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn wrong_root_reported() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let g = IntPoly::from_i64(&[2, 0, 1]);
        assert_eq!(hermite_witness_check(&f, &g, &IntPoly::x()), Err(Error::NotARoot));
    }
}
