//! GL2(Z)- and Z-equivalence, the GL2 witness solver, and Hermite witness checks.

mod hermite;
mod partition;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgElement, EtaleAlgebra};
use crate::error::{Error, Result};
use crate::exact::{left_kernel, IntMat, IntPoly};
use crate::form::{check_gl2, gl2_entries};

pub use hermite::{hermite_witness_check, reducible_pair, ReduciblePair};
pub use partition::{gl2_related, partition_gl2, Partition};

/// `sign * (cX + d)^n f((aX + b)/(cX + d))` for `gamma = [[a, b], [c, d]]`.
///
/// Acting by `g1` then `g2` equals acting by `g1 * g2`.
pub fn gl2_act(f: &IntPoly, gamma: &IntMat, sign: i8) -> Result<IntPoly> {
    check_gl2(gamma)?;
    if sign != 1 && sign != -1 {
        return Err(Error::Domain("sign must be +1 or -1".into()));
    }
    let n = f.deg()?;
    let (a, b, c, d) = gl2_entries(gamma);
    let num = IntPoly::new(vec![b, a]);
    let den = IntPoly::new(vec![d, c]);
    let mut acc = IntPoly::zero();
    for (i, ci) in f.coeffs().iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let term = &num.pow(i as u32) * &den.pow((n - i) as u32);
        acc = &acc + &term.scale(ci);
    }
    if acc.degree() != Some(n) {
        return Err(Error::DegreeDrop);
    }
    Ok(acc.scale(&BigInt::from(sign)))
}

/// `g(X) = eps^n f(eps X + a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZWitness {
    pub eps: i8,
    pub a: BigInt,
}

impl ZWitness {
    /// Polynomial `eps X - eps a`, sending a root of `f` to a root of `g`.
    pub fn root_map(&self) -> IntPoly {
        let e = BigInt::from(self.eps);
        IntPoly::new(vec![-(&e * &self.a), e])
    }

    /// The same relation as a GL2 action: `g = gl2_act(f, [[eps, a], [0, 1]], eps^n)`.
    pub fn as_gl2(&self, n: usize) -> (IntMat, i8) {
        let g = IntMat::from_vecs(vec![
            vec![BigInt::from(self.eps), self.a.clone()],
            vec![BigInt::zero(), BigInt::one()],
        ])
        .expect("2x2");
        let sign = if self.eps < 0 && n % 2 == 1 { -1 } else { 1 };
        (g, sign)
    }
}

/// Complete test for Z-equivalence of monic polynomials.
pub fn z_equiv_test(f: &IntPoly, g: &IntPoly) -> Result<Option<ZWitness>> {
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::Domain("Z-equivalence is defined for monic polynomials".into()));
    }
    let n = f.deg()?;
    if n < 2 || g.deg()? != n {
        return Err(Error::Domain("need equal degrees >= 2".into()));
    }
    let nb = BigInt::from(n);
    for eps in [1i8, -1] {
        let e = BigInt::from(eps);
        let (a, r) = (&e * g.coeff(n - 1) - f.coeff(n - 1)).div_rem(&nb);
        if !r.is_zero() {
            continue;
        }
        let shifted = f.compose(&IntPoly::new(vec![a.clone(), e.clone()]));
        let cand = if eps < 0 && n % 2 == 1 { -shifted } else { shifted };
        if &cand == g {
            return Ok(Some(ZWitness { eps, a }));
        }
    }
    Ok(None)
}

/// Moebius witness `beta = (a alpha + b)/(c alpha + d)` with `gamma = [[a, b], [c, d]]`.
///
/// The minimal polynomial of `beta` is `gl2_act(f, adj(gamma), sign)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Witness {
    pub gamma: IntMat,
    pub sign: i8,
}

impl Gl2Witness {
    /// `[[d, -b], [-c, a]]`, the matrix acting on `f` to give the minimal polynomial of `beta`.
    pub fn polynomial_action(&self) -> IntMat {
        let (a, b, c, d) = gl2_entries(&self.gamma);
        IntMat::from_vecs(vec![vec![d, -b], vec![-c, a]]).expect("2x2")
    }
}

/// Solves the linear system expressing `beta (c alpha + d) = a alpha + b` in `Z[alpha]`.
///
/// `beta_tail` holds `(b_2, ..., b_n)`, the coefficients of `alpha, ..., alpha^(n-1)`.
/// Tests this single embedding; polynomial-level completeness needs the full symmetric
/// Galois group, which the caller must supply.
pub fn gl2_witness_solve(f: &IntPoly, beta_tail: &[BigInt]) -> Result<Option<Gl2Witness>> {
    let mut full = vec![BigInt::zero()];
    full.extend(beta_tail.iter().cloned());
    gl2_witness_solve_full(f, &full)
}

/// As [`gl2_witness_solve`] with a full coordinate vector `(b_1, ..., b_n)`;
/// `b_1` is normalized away and restored in the returned witness.
pub fn gl2_witness_solve_full(f: &IntPoly, beta: &[BigInt]) -> Result<Option<Gl2Witness>> {
    if !f.is_monic() {
        return Err(Error::Domain("GL2 witness solver needs a monic polynomial".into()));
    }
    let n = f.deg()?;
    if n < 3 {
        return Err(Error::Domain("GL2 witness solver needs degree >= 3".into()));
    }
    if beta.len() != n {
        return Err(Error::Dimension(format!("beta has {} coordinates, need {n}", beta.len())));
    }
    if beta[1..].iter().all(Zero::is_zero) {
        return Err(Error::Domain("beta is a rational integer".into()));
    }
    // b[m] is the coefficient of alpha^(m-1); a_j is the coefficient of X^(n-j).
    let b = |m: usize| &beta[m - 1];
    let a = |j: usize| f.coeff(n - j);
    let bn = b(n);
    // rows m = 2..n-1: c (b_m - b_n a_{n-m}) + d b_{m+1} = 0
    let mut sys = IntMat::zeros(2, n - 2);
    for (col, m) in (2..n).enumerate() {
        sys.set(0, col, b(m) - bn * a(n - m));
        sys.set(1, col, b(m + 1).clone());
    }
    let ker = left_kernel(&sys);
    match ker.rows() {
        0 => return Ok(None),
        2 => {
            return Err(Error::Degenerate(
                "every coefficient of the (c, d) system vanishes".into(),
            ))
        }
        _ => {}
    }
    let alg = EtaleAlgebra::new(f)?;
    let beta_el = AlgElement::new(
        &alg,
        beta.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
    )?;
    for s in [1i64, -1] {
        let c = ker.get(0, 0) * s;
        let d = ker.get(0, 1) * s;
        let aa = &d * b(2) - &c * bn * a(n - 1) + &c * b(1);
        let bb = -(&c * bn * a(n)) + &d * b(1);
        let det = &aa * &d - &bb * &c;
        if !det.abs().is_one() {
            continue;
        }
        let gamma = IntMat::from_vecs(vec![vec![aa.clone(), bb.clone()], vec![c.clone(), d.clone()]])?;
        // soundness: beta (c alpha + d) = a alpha + b
        let lhs = beta_el.mul(&AlgElement::from_poly(&alg, &IntPoly::new(vec![d.clone(), c.clone()])))?;
        let rhs = AlgElement::from_poly(&alg, &IntPoly::new(vec![bb.clone(), aa.clone()]));
        if lhs != rhs {
            return Err(Error::Degenerate("solver produced an unsound witness".into()));
        }
        let w = Gl2Witness { gamma, sign: 1 };
        let image = gl2_act(f, &w.polynomial_action(), 1)?;
        let sign = if image.leading().is_negative() { -1 } else { 1 };
        return Ok(Some(Gl2Witness { sign, ..w }));
    }
    Ok(None)
}
