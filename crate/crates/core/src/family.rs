//! Catalan-polynomial families of Hermite equivalent pairs and their certificates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{AlgElement, EtaleAlgebra};
use crate::equivalence::hermite_witness_check;
use crate::error::{Error, Result};
use crate::exact::arith::{binomial, catalan, inv_mod, is_prime, pow_mod, roots_mod_p};
use crate::exact::{discriminant, IntMat, IntPoly};
use crate::json::{int_matrix_to_json, poly_to_json};

/// `a = sum_{i <= n-2} C_i X^i` and the three derived polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyKit {
    pub n: usize,
    pub a: IntPoly,
    pub b: IntPoly,
    pub h: IntPoly,
    pub k: IntPoly,
}

fn x_minus_x2() -> IntPoly {
    IntPoly::from_i64(&[0, 1, -1])
}

fn one_minus_x() -> IntPoly {
    IntPoly::from_i64(&[1, -1])
}

fn catalan_partial_sum(n: usize) -> IntPoly {
    IntPoly::new((0..=n as u64 - 2).map(catalan).collect())
}

/// Exact quotient by `X^m`; a nonzero low coefficient is an internal failure.
fn div_x_power(p: &IntPoly, m: usize, what: &str) -> Result<IntPoly> {
    if (0..m).any(|i| !p.coeff(i).is_zero()) {
        return Err(Error::Internal(format!("{what} is not divisible by X^{m}")));
    }
    Ok(IntPoly::new(p.coeffs().iter().skip(m).cloned().collect()))
}

fn kit_any(n: usize) -> Result<FamilyKit> {
    if n < 2 {
        return Err(Error::Domain("family polynomials need n >= 2".into()));
    }
    let a = catalan_partial_sum(n);
    let x = IntPoly::x();
    let b_num = &(&(&x * &a) * &a) - &a + IntPoly::one();
    let b = div_x_power(&b_num, n - 1, "X a^2 - a + 1")?;
    let h_num = &(&one_minus_x() * &a.compose(&x_minus_x2())) - &IntPoly::one();
    let h = div_x_power(&h_num, n - 1, "(1 - X) a(X - X^2) - 1")?;
    let k = -h.compose(&one_minus_x());
    Ok(FamilyKit { n, a, b, h, k })
}

/// Builds the kit for degree `n >= 4`, checking every exact division.
pub fn build_kit(n: usize) -> Result<FamilyKit> {
    if n < 4 {
        return Err(Error::Domain("families are defined for n >= 4".into()));
    }
    let kit = kit_any(n)?;
    for (name, p) in [("b", &kit.b), ("h", &kit.h), ("k", &kit.k)] {
        if p.degree() != Some(n - 2) {
            return Err(Error::Internal(format!("deg {name} != n - 2")));
        }
    }
    if !kit.k.coeff(0).is_one() {
        return Err(Error::Internal("k(0) != 1".into()));
    }
    Ok(kit)
}

/// `k^(n)` for any `n >= 2`.
pub fn k_poly(n: usize) -> Result<IntPoly> {
    Ok(kit_any(n)?.k)
}

/// Closed form `K^(n)(X) = C_{n-1} sum_i binom(n, i) (n-1-i)(n-i) / ((n-1+i)(n+i)) X^i`.
pub fn k_shifted_closed_form(n: usize) -> Result<IntPoly> {
    if n < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    let cn = catalan(n as u64 - 1);
    let coeffs = (0..=n - 2)
        .map(|i| {
            let (n, i) = (n as i64, i as i64);
            let q = BigRational::new(
                &cn * binomial(n as u64, i as u64) * BigInt::from((n - 1 - i) * (n - i)),
                BigInt::from((n - 1 + i) * (n + i)),
            );
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::Internal(format!("K^({n}) coefficient {i} is not integral")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Checks every structural identity of the kit as exact polynomial equality.
type IdentityTest<'a> = Box<dyn Fn() -> Result<bool> + 'a>;

pub fn verify_kit_identities(kit: &FamilyKit) -> Vec<IdentityCheck> {
    let n = kit.n;
    let (a, b, h, k) = (&kit.a, &kit.b, &kit.h, &kit.k);
    let x = IntPoly::x();
    let xn = |m: usize| IntPoly::monomial(BigInt::one(), m);
    let cat = |i: usize| IntPoly::constant(catalan(i as u64));
    let sub = x_minus_x2();
    let a_sub = a.compose(&sub);

    let mut checks: Vec<(&'static str, IdentityTest)> = Vec::new();
    checks.push(("xnf", Box::new(|| {
        Ok(&(&(&x * a) * a) - a + IntPoly::one() == &xn(n - 1) * b)
    })));
    checks.push(("xnfx2x", Box::new(|| {
        Ok(&(&one_minus_x() * &a_sub) - &IntPoly::one() == &xn(n - 1) * h)
    })));
    checks.push(("k-closed-form", Box::new(|| {
        Ok(&one_minus_x().pow(n as u32 - 1) * k == &IntPoly::one() - &(&x * &a_sub))
    })));
    checks.push(("ah-relation", Box::new(|| Ok(&sub * &a_sub == &x + &(h * &xn(n))))));
    checks.push(("bhk-relation", Box::new(|| Ok(b.compose(&sub) == -(h * k)))));
    checks.push(("fg-relation", Box::new(|| {
        // both sides have degree <= 2 in u = c^(n-1) t, so three values of u prove it
        let one_minus_2xa = &IntPoly::one() - &(&x * a).scale(&BigInt::from(2));
        Ok((1..=3).all(|u| {
            let u = BigInt::from(u);
            let ft = &xn(n) + &k.scale(&u);
            let gt = &(&xn(n) + &one_minus_2xa.scale(&u)) + &b.scale(&(&u * &u));
            gt.compose(&sub) == &ft * &ft.compose(&one_minus_x())
        }))
    })));
    checks.push(("req", Box::new(|| {
        let next = k_poly(n + 1)?;
        Ok(&(&IntPoly::from_i64(&[-1, 1]) * &next) + k == &cat(n - 1) * &xn(n))
    })));
    checks.push(("kK-relation", Box::new(|| {
        Ok(k_shifted_closed_form(n)? == k.compose(&IntPoly::from_i64(&[1, 1])))
    })));
    checks.push(("doubreq", Box::new(|| {
        let next2 = k_poly(n + 2)?;
        let lhs = &IntPoly::from_i64(&[1, -2, 1]) * &next2;
        let rhs = &(k + &(&cat(n) * &xn(n + 2))) - &(&(&cat(n) * &xn(n + 1)) + &(&cat(n - 1) * &xn(n)));
        Ok(lhs == rhs)
    })));
    checks.push(("k(0) = 1", Box::new(|| Ok(k.coeff(0).is_one()))));
    checks.push(("k coefficients positive", Box::new(|| {
        Ok(k.coeffs().iter().all(Signed::is_positive))
    })));
    checks.push(("degrees n-2", Box::new(|| {
        Ok([b, h, k].iter().all(|p| p.degree() == Some(n - 2)) && a.degree() == Some(n - 2))
    })));

    checks
        .into_iter()
        .map(|(name, f)| IdentityCheck {
            name,
            holds: f().unwrap_or(false),
        })
        .collect()
}

/// `(f, g, p)` with `f = cX^n + t k(cX)`, `g = cX^n + t(1 - 2cX a(cX)) + c^(n-1) t^2 b(cX)`,
/// `p = X a(cX) - c^(n-2) t b(cX)`.
pub fn family_polys(kit: &FamilyKit, c: &BigInt, t: &BigInt) -> Result<(IntPoly, IntPoly, IntPoly)> {
    if c.is_zero() || t.is_zero() {
        return Err(Error::Domain("c and t must be nonzero".into()));
    }
    let n = kit.n;
    let cx = IntPoly::new(vec![BigInt::zero(), c.clone()]);
    let x = IntPoly::x();
    let lead = IntPoly::monomial(c.clone(), n);
    let cn1 = num_traits::pow(c.clone(), n - 1);
    let cn2 = num_traits::pow(c.clone(), n - 2);
    let a_c = kit.a.compose(&cx);
    let b_c = kit.b.compose(&cx);
    let f = &lead + &kit.k.compose(&cx).scale(t);
    let lin = &IntPoly::one() - &(&cx * &a_c).scale(&BigInt::from(2));
    let g = &(&lead + &lin.scale(t)) + &b_c.scale(&(&cn1 * t * t));
    let p = &(&x * &a_c) - &b_c.scale(&(&cn2 * t));
    Ok((f, g, p))
}

/// Eisenstein's criterion at the prime `q`.
pub fn eisenstein_check(f: &IntPoly, q: u64) -> Result<bool> {
    if !is_prime(q) {
        return Err(Error::Domain(format!("{q} is not prime")));
    }
    let n = f.deg()?;
    let q = BigInt::from(q);
    let divides = |x: &BigInt| x.is_multiple_of(&q);
    Ok(!divides(&f.leading())
        && (0..n).all(|i| divides(&f.coeff(i)))
        && !f.coeff(0).is_multiple_of(&(&q * &q)))
}

/// `S_{n,c} = {+-r^n : r in F_c^*}` as residues in `[1, c)`.
pub fn snc(n: usize, c: u64) -> Result<BTreeSet<u64>> {
    if !is_prime(c) {
        return Err(Error::Domain(format!("{c} is not prime")));
    }
    let mut s = BTreeSet::new();
    for r in 1..c {
        let v = pow_mod(r, n as u64, c);
        s.insert(v);
        s.insert(c - v);
    }
    Ok(s)
}

/// Certifies that no GL2(Z)-translate of `f` has leading coefficient `+-1`.
///
/// Applies when the prime `c` divides every coefficient but the constant term `t`:
/// then `F(a, d) = t d^n (mod c)`, which avoids `+-1` exactly when `t mod c` lies
/// outside `S_{n,c}`. Returns false when that shape does not hold.
pub fn properly_nonmonic_certificate(f: &IntPoly, c: u64) -> Result<bool> {
    if !is_prime(c) {
        return Err(Error::Domain(format!("{c} is not prime")));
    }
    if c < 3 {
        return Ok(false);
    }
    let n = f.deg()?;
    let cb = BigInt::from(c);
    if (1..=n).any(|i| !f.coeff(i).is_multiple_of(&cb)) {
        return Ok(false);
    }
    let t = f.coeff(0).mod_floor(&cb).to_u64().expect("residue below c");
    if t == 0 {
        return Ok(false);
    }
    Ok(!snc(n, c)?.contains(&t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FamilyParams {
    pub n: usize,
    pub p: u64,
    pub c: u64,
    pub t: u64,
}

fn catalan_u64(i: usize) -> Result<u64> {
    catalan(i as u64)
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("C_{i} exceeds 64 bits")))
}

/// Smallest-first search for `p`, then `c` (or `c = 1` when `monic`), then `t`.
///
/// `search_limit` bounds the number of candidates examined for each parameter.
pub fn find_params(n: usize, search_limit: u64, monic: bool) -> Result<FamilyParams> {
    if n < 4 {
        return Err(Error::Domain("families are defined for n >= 4".into()));
    }
    let cn = catalan_u64(n - 1)?;
    let k_next = k_poly(n + 1)?;
    let mut p = cn;
    let mut tried = 0;
    loop {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        if tried == search_limit {
            return Err(Error::SearchLimit {
                limit: search_limit,
                what: format!("no prime p in ({cn}, {p}) without roots of k^({}) mod p", n + 1),
            });
        }
        tried += 1;
        if roots_mod_p(&k_next, p).is_empty() {
            break;
        }
    }

    let np = (n as u64)
        .checked_mul(p)
        .ok_or_else(|| Error::Domain("n p overflows".into()))?;
    let c = if monic {
        1
    } else {
        (1..=search_limit)
            .map(|j| 1 + j * np)
            .find(|&c| is_prime(c))
            .ok_or_else(|| Error::SearchLimit {
                limit: search_limit,
                what: format!("no prime c = 1 mod {np} below {}", 1 + search_limit * np),
            })?
    };
    let s = if c > 1 { snc(n, c)? } else { BTreeSet::new() };

    let r = p - inv_mod(&BigInt::from(cn), p).expect("p > C_{n-1} is prime");
    let r = r % p;
    let t = (0..search_limit)
        .map(|j| r + j * p)
        .find(|&t| is_prime(t) && t != c && (c == 1 || !s.contains(&(t % c))))
        .ok_or_else(|| Error::SearchLimit {
            limit: search_limit,
            what: format!("no admissible prime t = {r} mod {p} below {}", r + search_limit * p),
        })?;
    Ok(FamilyParams { n, p, c, t })
}

/// Reasons the parameters fail the hypotheses; empty when all hold.
pub fn check_params(params: &FamilyParams) -> Result<Vec<String>> {
    let FamilyParams { n, p, c, t } = *params;
    let mut bad = Vec::new();
    if n < 4 {
        bad.push("n < 4".to_string());
        return Ok(bad);
    }
    let cn = catalan_u64(n - 1)?;
    if !is_prime(p) || p <= cn {
        bad.push(format!("p = {p} is not a prime above C_{} = {cn}", n - 1));
    } else {
        if !roots_mod_p(&k_poly(n + 1)?, p).is_empty() {
            bad.push(format!("k^({}) has a root mod {p}", n + 1));
        }
        let want = (p - inv_mod(&BigInt::from(cn), p).expect("prime")) % p;
        if t % p != want {
            bad.push(format!("t = {t} is not {want} mod {p}"));
        }
    }
    if !is_prime(t) {
        bad.push(format!("t = {t} is not prime"));
    }
    if t == c {
        bad.push("t = c".into());
    }
    if c != 1 {
        if !is_prime(c) {
            bad.push(format!("c = {c} is neither 1 nor prime"));
        } else {
            if (c - 1) % (n as u64 * p) != 0 {
                bad.push(format!("c = {c} is not 1 mod {}", n as u64 * p));
            }
            if snc(n, c)?.contains(&(t % c)) {
                bad.push(format!("t mod c = {} lies in S_(n,c)", t % c));
            }
        }
    }
    Ok(bad)
}

/// Every certificate for one Hermite equivalent, GL2-inequivalent pair.
#[derive(Clone, Debug)]
pub struct FamilyBundle {
    pub params: FamilyParams,
    pub f: IntPoly,
    pub g: IntPoly,
    pub p_poly: IntPoly,
    pub root_map: IntPoly,
    pub eisenstein_f: bool,
    pub eisenstein_g: bool,
    /// `U[k]` holds `beta^(n-1-k)` on `alpha^(n-1), ..., 1`.
    pub transition: IntMat,
    pub g_vanishes_at_beta: bool,
    pub p_of_beta_is_alpha: bool,
    pub nonmonic_f: Option<bool>,
    pub nonmonic_g: Option<bool>,
    /// `k^(n+1)(x) mod p` for `x = 0, ..., p-1`.
    pub nonroot_table: Vec<u64>,
    pub discriminant: BigInt,
    /// Hypotheses of the GL2-inequivalence argument (checked, not the argument itself).
    pub inequivalence_hypotheses: bool,
}

impl FamilyBundle {
    pub fn to_json(&self) -> Value {
        json!({
            "params": self.params,
            "f": poly_to_json(&self.f),
            "g": poly_to_json(&self.g),
            "p": poly_to_json(&self.p_poly),
            "root_map": poly_to_json(&self.root_map),
            "eisenstein": { "f": self.eisenstein_f, "g": self.eisenstein_g, "prime": self.params.t },
            "hermite_witness": {
                "transition": int_matrix_to_json(&self.transition),
                "det": self.transition.det().map(|d| d.to_string()).unwrap_or_default(),
            },
            "root_relations": {
                "g_vanishes_at_beta": self.g_vanishes_at_beta,
                "p_of_beta_is_alpha": self.p_of_beta_is_alpha,
            },
            "properly_nonmonic": { "f": self.nonmonic_f, "g": self.nonmonic_g },
            "nonroot_table": { "modulus": self.params.p, "values": self.nonroot_table },
            "discriminant": self.discriminant.to_string(),
            "gl2_inequivalence": if self.inequivalence_hypotheses {
                "hypotheses verified"
            } else {
                "hypotheses not verified"
            },
        })
    }
}

/// Builds `(f, g)` for valid parameters and checks every certificate; any failure is an error.
pub fn generate_certified_pair(params: &FamilyParams) -> Result<FamilyBundle> {
    let bad = check_params(params)?;
    if !bad.is_empty() {
        return Err(Error::Precondition(bad.join("; ")));
    }
    let FamilyParams { n, p, c, t } = *params;
    let kit = build_kit(n)?;
    let (cb, tb) = (BigInt::from(c), BigInt::from(t));
    let (f, g, p_poly) = family_polys(&kit, &cb, &tb)?;
    let fail = |what: &str| Err(Error::Internal(format!("certificate failed: {what}")));

    let eisenstein_f = eisenstein_check(&f, t)?;
    let eisenstein_g = eisenstein_check(&g, t)?;
    if !(eisenstein_f && eisenstein_g) {
        return fail("Eisenstein at t");
    }

    let root_map = IntPoly::new(vec![BigInt::zero(), BigInt::one(), -cb.clone()]);
    let alg = EtaleAlgebra::new(&f)?;
    let alpha = AlgElement::alpha(&alg);
    let beta = AlgElement::from_poly(&alg, &root_map);
    let g_vanishes_at_beta = beta.eval_poly(&g).is_zero();
    let p_of_beta_is_alpha = beta.eval_poly(&p_poly) == alpha;
    // p(X - cX^2) = X + c^(n-2) h(cX) f(X)
    let cx = IntPoly::new(vec![BigInt::zero(), cb.clone()]);
    let expected = &IntPoly::x()
        + &(&kit.h.compose(&cx) * &f).scale(&num_traits::pow(cb.clone(), n - 2));
    if !(g_vanishes_at_beta && p_of_beta_is_alpha && p_poly.compose(&root_map) == expected) {
        return fail("root relations between alpha and beta");
    }

    let transition = match hermite_witness_check(&f, &g, &root_map)? {
        Some(u) if u.det()?.abs().is_one() => u,
        _ => return fail("power-basis lattices differ"),
    };

    let (nonmonic_f, nonmonic_g) = if c > 1 {
        let cf = properly_nonmonic_certificate(&f, c)?;
        let cg = properly_nonmonic_certificate(&g, c)?;
        if !(cf && cg) {
            return fail("properly non-monic");
        }
        (Some(cf), Some(cg))
    } else {
        (None, None)
    };

    let k_next = k_poly(n + 1)?;
    let nonroot_table: Vec<u64> = (0..p).map(|x| k_next.eval_mod(x, p)).collect();
    if nonroot_table.contains(&0) {
        return fail("k^(n+1) has a root mod p");
    }

    let df = discriminant(&f)?;
    if df.is_zero() || df != discriminant(&g)? {
        return fail("equal nonzero discriminants");
    }

    Ok(FamilyBundle {
        params: *params,
        f,
        g,
        p_poly,
        root_map,
        eisenstein_f,
        eisenstein_g,
        transition,
        g_vanishes_at_beta,
        p_of_beta_is_alpha,
        nonmonic_f,
        nonmonic_g,
        nonroot_table,
        discriminant: df,
        inequivalence_hypotheses: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Truncated power series of `C(X)` from `C = 1 + X C^2`, independent of the binomial formula.
    fn catalan_series(len: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); len];
        c[0] = BigInt::one();
        for m in 1..len {
            c[m] = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        }
        c
    }

    #[test]
    fn partial_sum_matches_series() {
        let s = catalan_series(12);
        for n in 4..=12 {
            assert_eq!(catalan_partial_sum(n).coeffs(), &s[..n - 1]);
        }
    }

    #[test]
    fn degree_four_kit() {
        let kit = build_kit(4).unwrap();
        assert_eq!(kit.k, IntPoly::from_i64(&[1, 2, 2]));
        assert_eq!(kit.b, IntPoly::from_i64(&[5, 4, 4]));
        assert_eq!(kit.h, IntPoly::from_i64(&[-5, 6, -2]));
        assert_eq!(k_poly(5).unwrap(), IntPoly::from_i64(&[1, 3, 5, 5]));
        assert_eq!(k_poly(2).unwrap(), IntPoly::one());
        assert_eq!(k_poly(3).unwrap(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(k_shifted_closed_form(2).unwrap(), IntPoly::one());
        assert_eq!(k_shifted_closed_form(3).unwrap(), IntPoly::from_i64(&[2, 1]));
        assert!(build_kit(3).is_err());
    }

    #[test]
    fn identities_hold() {
        for n in 4..=10 {
            let kit = build_kit(n).unwrap();
            for c in verify_kit_identities(&kit) {
                assert!(c.holds, "n = {n}: {}", c.name);
            }
        }
    }

    #[test]
    fn monic_degree_four_family() {
        let kit = build_kit(4).unwrap();
        let (f, g, _) = family_polys(&kit, &BigInt::one(), &BigInt::from(2)).unwrap();
        assert_eq!(f, IntPoly::from_i64(&[2, 4, 4, 0, 1]));
        assert_eq!(g.leading(), BigInt::one());
        assert!(eisenstein_check(&f, 2).unwrap());
        assert!(!eisenstein_check(&IntPoly::from_i64(&[1, 0, 1]), 2).unwrap());
    }

    #[test]
    fn obstruction_subgroup() {
        let s = snc(4, 13).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![1, 3, 4, 9, 10, 12]);
        assert!(snc(4, 12).is_err());
        // F(a, d) = 3 d^4 mod 13 always lies in S
        assert!(!properly_nonmonic_certificate(&IntPoly::from_i64(&[3, 13, 0, 0, 13]), 13).unwrap());
        assert!(properly_nonmonic_certificate(&IntPoly::from_i64(&[2, 13, 0, 0, 13]), 13).unwrap());
    }

    #[test]
    fn params_for_degree_four() {
        let m = find_params(4, 1000, true).unwrap();
        assert_eq!((m.p, m.c, m.t), (11, 1, 2));
        let q = find_params(4, 1000, false).unwrap();
        assert_eq!((q.p, q.c), (11, 89));
        assert_eq!(q.t % 11, 2);
        assert!(check_params(&q).unwrap().is_empty());
        assert!(matches!(find_params(4, 1, false), Err(Error::SearchLimit { .. })));
    }

    #[test]
    fn certified_monic_pair() {
        let bundle = generate_certified_pair(&FamilyParams { n: 4, p: 11, c: 1, t: 2 }).unwrap();
        assert!(bundle.transition.is_unimodular());
        assert!(generate_certified_pair(&FamilyParams { n: 4, p: 7, c: 1, t: 2 }).is_err());
    }
}
