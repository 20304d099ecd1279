//! Pairs of ternary quadratic forms attached to binary quartics.
//!
//! Gram matrices are stored doubled, so half-integral entries stay integral.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{colon_and_kappa_search, zeta_lattice, AlgElement};
use crate::error::{Error, Result};
use crate::exact::arith::is_squarefree;
use crate::exact::{discriminant, IntMat, IntPoly, MPoly};
use crate::json::{element_to_json, int_matrix_to_json, poly_to_json};

/// Symmetric 3x3 integer matrix equal to twice a half-integral Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryQF(IntMat);

impl TernaryQF {
    pub fn new(doubled: IntMat) -> Result<Self> {
        if doubled.rows() != 3 || doubled.cols() != 3 {
            return Err(Error::Dimension("ternary forms need 3x3 matrices".into()));
        }
        if doubled.transpose() != doubled {
            return Err(Error::Domain("Gram matrix is not symmetric".into()));
        }
        Ok(TernaryQF(doubled))
    }

    pub fn doubled(&self) -> &IntMat {
        &self.0
    }

    fn congruent(&self, gamma: &IntMat) -> TernaryQF {
        TernaryQF(&(gamma * &self.0) * &gamma.transpose())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticPair {
    pub a: TernaryQF,
    pub b: TernaryQF,
}

/// `A_0` doubled: `[[0, 0, 1], [0, -2, 0], [1, 0, 0]]`.
pub fn a0() -> TernaryQF {
    TernaryQF(IntMat::from_i64(&[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]]))
}

/// `(A_0, B_f)` where `f = f0 X^4 + f1 X^3 + f2 X^2 + f3 X + f4` and
/// `B_f = [[f0, f1/2, 0], [f1/2, f2, f3/2], [0, f3/2, f4]]`.
pub fn iota(f: &IntPoly) -> Result<QuarticPair> {
    if f.degree() != Some(4) {
        return Err(Error::Domain("iota needs a quartic".into()));
    }
    let c = |i: usize| f.coeff(4 - i);
    let two = BigInt::from(2);
    let b = IntMat::from_vecs(vec![
        vec![&two * c(0), c(1), BigInt::zero()],
        vec![c(1), &two * c(2), c(3)],
        vec![BigInt::zero(), c(3), &two * c(4)],
    ])?;
    Ok(QuarticPair { a: a0(), b: TernaryQF(b) })
}

/// Recovers the quartic from `B` of a pair in the image of `iota`.
pub fn iota_inverse(pair: &QuarticPair) -> Result<IntPoly> {
    let b = pair.b.doubled();
    let half = |x: &BigInt| -> Result<BigInt> {
        if (x % BigInt::from(2)).is_zero() {
            Ok(x / BigInt::from(2))
        } else {
            Err(Error::Domain("odd diagonal entry".into()))
        }
    };
    if pair.a != a0() || !b.get(0, 2).is_zero() {
        return Err(Error::Domain("pair is not in the image of iota".into()));
    }
    Ok(IntPoly::new(vec![
        half(b.get(2, 2))?,
        b.get(1, 2).clone(),
        half(b.get(1, 1))?,
        b.get(0, 1).clone(),
        half(b.get(0, 0))?,
    ]))
}

/// `(gamma, [[r, s], [t, u]]) . (A, B) = (r gAg^T + s gBg^T, t gAg^T + u gBg^T)`.
pub fn act(pair: &QuarticPair, gamma: &IntMat, m: &IntMat) -> Result<QuarticPair> {
    if gamma.rows() != 3 || gamma.cols() != 3 || m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Dimension("need a 3x3 and a 2x2 matrix".into()));
    }
    if !gamma.is_unimodular() || !m.is_unimodular() {
        return Err(Error::Domain("action needs unimodular matrices".into()));
    }
    let ga = pair.a.congruent(gamma);
    let gb = pair.b.congruent(gamma);
    let lin = |x: &BigInt, y: &BigInt| -> TernaryQF {
        let mut out = IntMat::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                out.set(i, j, x * ga.0.get(i, j) + y * gb.0.get(i, j));
            }
        }
        TernaryQF(out)
    };
    Ok(QuarticPair {
        a: lin(m.get(0, 0), m.get(0, 1)),
        b: lin(m.get(1, 0), m.get(1, 1)),
    })
}

/// Binary cubic `4 det(xA - yB)` of the half-integral pair, as `[x^3, x^2 y, x y^2, y^3]` coefficients.
///
/// Equals `x^3 + f2 x^2 y + (f1 f3 - 4 f0 f4) x y^2 + (f1^2 f4 + f0 f3^2 - 4 f0 f2 f4) y^3`
/// on `iota(f)`, and transforms as `Q(r x - t y, -s x + u y)` under the action.
pub fn resolvent_cubic(pair: &QuarticPair) -> Result<[BigInt; 4]> {
    let entry = |i: usize, j: usize| {
        &MPoly::linear(&[pair.a.0.get(i, j).clone(), BigInt::zero()])
            - &MPoly::linear(&[BigInt::zero(), pair.b.0.get(i, j).clone()])
    };
    let m: Vec<Vec<MPoly>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let det = crate::exact::det_division_free(&m);
    // det of the doubled pencil is 8 det(xA - yB)
    let mut out: [BigInt; 4] = Default::default();
    for (k, slot) in out.iter_mut().enumerate() {
        let c = det.coeff(&[3 - k as u32, k as u32]);
        if !(&c % BigInt::from(2)).is_zero() {
            return Err(Error::Domain("pair has a half-integral diagonal".into()));
        }
        *slot = c / BigInt::from(2);
    }
    Ok(out)
}

/// `Q(r x - t y, -s x + u y)` for a binary cubic `Q`.
pub fn cubic_substitute(q: &[BigInt; 4], m: &IntMat) -> [BigInt; 4] {
    let (r, s, t, u) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let poly = MPoly::from_terms(2, (0..4).map(|k| (vec![3 - k as u32, k as u32], q[k].clone())));
    let subs = [
        MPoly::linear(&[r.clone(), -t]),
        MPoly::linear(&[-s, u.clone()]),
    ];
    let out = poly.substitute(&subs);
    std::array::from_fn(|k| out.coeff(&[3 - k as u32, k as u32]))
}

pub fn example_f() -> IntPoly {
    IntPoly::from_i64(&[255, 13, -62, -1, 4])
}

pub fn example_g() -> IntPoly {
    IntPoly::from_i64(&[-6, -7, -2, -1, 5])
}

pub fn example_gamma() -> IntMat {
    IntMat::from_i64(&[&[0, 2, -1], &[-1, 0, 1], &[-3, -15, 10]])
}

pub fn example_m() -> IntMat {
    IntMat::from_i64(&[&[0, 1], &[-1, 63]])
}

#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub action_matches: bool,
    pub discriminants_equal: bool,
    pub discriminant: BigInt,
    pub discriminant_squarefree: bool,
    pub resolvent_covariant: bool,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.action_matches
            && self.discriminants_equal
            && self.discriminant_squarefree
            && self.resolvent_covariant
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": poly_to_json(&example_f()),
            "g": poly_to_json(&example_g()),
            "gamma": int_matrix_to_json(&example_gamma()),
            "m": int_matrix_to_json(&example_m()),
            "action_matches": self.action_matches,
            "discriminants_equal": self.discriminants_equal,
            "discriminant": self.discriminant.to_string(),
            "discriminant_squarefree": self.discriminant_squarefree,
            "resolvent_covariant": self.resolvent_covariant,
            "passed": self.passed(),
        })
    }
}

/// Applies the stored transformation to `iota(g)` and compares with `iota(f)` exactly.
pub fn verify_example() -> Result<ExampleReport> {
    let (f, g) = (example_f(), example_g());
    let (pf, pg) = (iota(&f)?, iota(&g)?);
    let moved = act(&pg, &example_gamma(), &example_m())?;
    let df = discriminant(&f)?;
    let covariant = resolvent_cubic(&moved)? == cubic_substitute(&resolvent_cubic(&pg)?, &example_m());
    Ok(ExampleReport {
        action_matches: moved == pf,
        discriminants_equal: df == discriminant(&g)?,
        discriminant_squarefree: is_squarefree(&df) == Some(true),
        discriminant: df,
        resolvent_covariant: covariant && resolvent_cubic(&moved)? == resolvent_cubic(&pf)?,
    })
}

/// Outcome of a bounded search for a generator of `I_f(1)` over `R_f`.
#[derive(Clone, Debug)]
pub struct PrincipalityEvidence {
    pub generator: Option<AlgElement>,
    pub bound: u64,
    pub candidates_tested: u64,
}

impl PrincipalityEvidence {
    pub fn verdict(&self) -> String {
        match &self.generator {
            Some(_) => "principal: generator verified by exact lattice equality".into(),
            None => format!(
                "inconclusive: no generator with reduced coordinates of max-norm <= {}",
                self.bound
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generator": self.generator.as_ref().map(element_to_json),
            "bound": self.bound,
            "candidates_tested": self.candidates_tested,
            "verdict": self.verdict(),
        })
    }
}

pub fn principality_evidence(f: &IntPoly, bound: u64) -> Result<PrincipalityEvidence> {
    if discriminant(f)?.is_zero() {
        return Err(Error::Degenerate("discriminant is zero".into()));
    }
    let r = zeta_lattice(f, 0)?;
    let i = zeta_lattice(f, 1)?;
    let res = colon_and_kappa_search(&i, &r, bound)?;
    Ok(PrincipalityEvidence {
        generator: res.kappa,
        bound,
        candidates_tested: res.candidates_tested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn iota_examples() {
        let p = iota(&example_f()).unwrap();
        assert_eq!(p.b.doubled(), &IntMat::from_i64(&[&[8, -1, 0], &[-1, -124, 13], &[0, 13, 510]]));
        assert_eq!(iota_inverse(&p).unwrap(), example_f());
        let x4 = iota(&IntPoly::monomial(int(1), 4)).unwrap();
        assert_eq!(x4.b.doubled(), &IntMat::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert!(iota(&IntPoly::from_i64(&[1, 0, 1])).is_err());
    }

    #[test]
    fn resolvent_on_image() {
        let f = example_f();
        let q = resolvent_cubic(&iota(&f).unwrap()).unwrap();
        let c = |i: usize| f.coeff(4 - i);
        let want = [
            int(1),
            c(2),
            c(1) * c(3) - int(4) * c(0) * c(4),
            c(1) * c(1) * c(4) + c(0) * c(3) * c(3) - int(4) * c(0) * c(2) * c(4),
        ];
        assert_eq!(q, want);
    }

    #[test]
    fn example_transformation() {
        let r = verify_example().unwrap();
        assert!(r.action_matches && r.discriminants_equal && r.resolvent_covariant);
        assert!(r.passed());
    }

    #[test]
    fn identity_action() {
        let p = iota(&example_g()).unwrap();
        assert_eq!(act(&p, &IntMat::identity(3), &IntMat::identity(2)).unwrap(), p);
        assert!(act(&p, &IntMat::from_i64(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &IntMat::identity(2)).is_err());
    }

    #[test]
    fn monic_is_principal() {
        let e = principality_evidence(&IntPoly::from_i64(&[1, 2, -4, -1, 1]), 2).unwrap();
        let g = e.generator.unwrap();
        assert_eq!(g, AlgElement::one(g.algebra()));
    }

    #[test]
    fn example_principality() {
        let ef = principality_evidence(&example_f(), 10).unwrap();
        let gen = ef.generator.clone().expect("I_f is principal");
        let r = zeta_lattice(&example_f(), 0).unwrap();
        assert_eq!(r.scale_by(&gen).unwrap(), zeta_lattice(&example_f(), 1).unwrap());
        let eg = principality_evidence(&example_g(), 10).unwrap();
        assert!(eg.generator.is_none());
        assert!(eg.verdict().starts_with("inconclusive"));
    }
}
