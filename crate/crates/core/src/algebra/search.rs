use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::lattice::norm_polynomial;
use super::{check_same, AlgElement, IdealLattice};
use crate::error::Result;
use crate::exact::{IntMat, IntPoly, MPoly, RatMat};

/// Outcome of a bounded search for `kappa` with `kappa * L2 = L1`.
///
/// `kappa = None` is inconclusive: no generator exists with reduced-basis
/// coordinates of max-norm at most `bound`.
#[derive(Clone, Debug)]
pub struct KappaSearch {
    pub kappa: Option<AlgElement>,
    pub bound: u64,
    pub candidates_tested: u64,
    pub norm_matches: u64,
}

/// Search `(L1 : L2)` for `kappa` with `kappa * L2 = L1`.
///
/// Scalars are detected exactly first. Otherwise the colon basis is LLL-reduced
/// against the Minkowski embedding (floating point only orders the search) and
/// integer coordinate vectors are enumerated shell by shell; every hit is
/// confirmed by exact norm and exact lattice equality.
pub fn colon_and_kappa_search(l1: &IdealLattice, l2: &IdealLattice, bound: u64) -> Result<KappaSearch> {
    check_same(l1.algebra(), l2.algebra())?;
    let alg = l1.algebra().clone();
    if let Some(q) = scalar_ratio(l1, l2) {
        return Ok(KappaSearch {
            kappa: Some(AlgElement::one(&alg).scale(&q)),
            bound,
            candidates_tested: 0,
            norm_matches: 0,
        });
    }

    let colon = l1.colon(l2)?;
    let basis = colon.canonical_basis();
    let t = lll_transform(&basis, alg.defining_poly());
    let reduced = &t.map(|x| BigRational::from_integer(x.clone())) * &basis;
    let els: Vec<AlgElement> = (0..reduced.rows())
        .map(|i| AlgElement::new(&alg, reduced.row(i).to_vec()))
        .collect::<Result<_>>()?;

    let (poly, scale) = norm_polynomial(&els)?;
    let target = BigRational::from_integer(scale) * (l1.basis().det()? / l2.basis().det()?).abs();
    let mut out = KappaSearch {
        kappa: None,
        bound,
        candidates_tested: 0,
        norm_matches: 0,
    };
    if !target.is_integer() {
        return Ok(out);
    }
    let target = target.to_integer();
    let evaluator = NormEvaluator::new(&poly);
    let n = els.len();

    for s in 1..=bound as i64 {
        let mut found = None;
        for_each_in_shell(n, s, &mut |y: &[i64]| {
            if y.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
                return false;
            }
            out.candidates_tested += 1;
            if !evaluator.abs_equals(y, &target) {
                return false;
            }
            out.norm_matches += 1;
            let coords: Vec<BigRational> = (0..n)
                .map(|j| {
                    y.iter()
                        .enumerate()
                        .fold(BigRational::zero(), |acc, (i, &yi)| {
                            acc + reduced.get(i, j) * BigRational::from_integer(BigInt::from(yi))
                        })
                })
                .collect();
            let kappa = AlgElement::new(&alg, coords).expect("coordinate length");
            match l2.scale_by(&kappa) {
                Ok(img) if img == *l1 => {
                    found = Some(kappa);
                    true
                }
                _ => false,
            }
        });
        if found.is_some() {
            out.kappa = found;
            return Ok(out);
        }
    }
    Ok(out)
}

/// `q` with `L1 = q L2` when the primitive HNFs agree.
fn scalar_ratio(l1: &IdealLattice, l2: &IdealLattice) -> Option<BigRational> {
    let content = |h: &IntMat| {
        (0..h.rows())
            .flat_map(|i| h.row(i).to_vec())
            .fold(BigInt::zero(), |g, x| g.gcd(&x))
    };
    let (c1, c2) = (content(l1.hnf()), content(l2.hnf()));
    let p1 = l1.hnf().map(|x| x / &c1);
    let p2 = l2.hnf().map(|x| x / &c2);
    (p1 == p2).then(|| {
        BigRational::new(c1, l1.denominator().clone()) / BigRational::new(c2, l2.denominator().clone())
    })
}

/// Calls `visit` on every integer vector with max-norm exactly `s`; stops when it returns true.
fn for_each_in_shell(n: usize, s: i64, visit: &mut dyn FnMut(&[i64]) -> bool) {
    for p in 0..n {
        let lo: Vec<i64> = (0..n)
            .map(|i| if i < p { -(s - 1) } else { -s })
            .collect();
        let hi: Vec<i64> = (0..n).map(|i| if i < p { s - 1 } else { s }).collect();
        let mut y = lo.clone();
        loop {
            if y[p].abs() == s && visit(&y) {
                return;
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if i == p {
                    if y[i] == -s {
                        y[i] = s;
                        break;
                    }
                    y[i] = -s;
                    continue;
                }
                if y[i] < hi[i] {
                    y[i] += 1;
                    break;
                }
                y[i] = lo[i];
            }
            if y == lo {
                break;
            }
        }
    }
}

/// Evaluates a homogeneous integer polynomial quickly in `i128` with a big-integer fallback.
struct NormEvaluator {
    small: Option<Vec<(Vec<u32>, i128)>>,
    poly: MPoly,
}

impl NormEvaluator {
    fn new(poly: &MPoly) -> Self {
        let small = poly
            .terms()
            .iter()
            .map(|(e, c)| c.to_i128().map(|c| (e.clone(), c)))
            .collect();
        NormEvaluator {
            small,
            poly: poly.clone(),
        }
    }

    fn eval_small(&self, y: &[i64]) -> Option<i128> {
        let terms = self.small.as_ref()?;
        let mut acc: i128 = 0;
        for (e, c) in terms {
            let mut t = *c;
            for (yi, &k) in y.iter().zip(e) {
                for _ in 0..k {
                    t = t.checked_mul(*yi as i128)?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn abs_equals(&self, y: &[i64], target: &BigInt) -> bool {
        if let Some(v) = self.eval_small(y) {
            return target.to_i128().is_some_and(|t| v.abs() == t);
        }
        let big: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        self.poly.eval(&big).abs() == *target
    }
}

fn complex_roots(g: &IntPoly) -> Vec<Complex<f64>> {
    let n = g.degree().unwrap_or(0);
    let lc = g.leading().to_f64().unwrap_or(1.0);
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -g.coeff(i).to_f64().unwrap_or(0.0) / lc;
    }
    c.complex_eigenvalues().iter().copied().collect()
}

/// Unimodular `T` such that `T * basis` is LLL-reduced for the Minkowski (T2) form.
fn lll_transform(basis: &RatMat, g: &IntPoly) -> IntMat {
    let n = basis.rows();
    let roots = complex_roots(g);
    let mut b: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let r: Vec<f64> = basis.row(i).iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
            let mut v = Vec::with_capacity(2 * roots.len());
            for rho in &roots {
                let mut s = Complex::new(0.0, 0.0);
                let mut p = Complex::new(1.0, 0.0);
                for c in &r {
                    s += p * *c;
                    p *= rho;
                }
                v.push(s.re);
                v.push(s.im);
            }
            v
        })
        .collect();
    let mut t: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();

    let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(x, y)| x * y).sum::<f64>();
    let gso = |b: &[Vec<f64>]| {
        let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut norms = vec![0.0; n];
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = if norms[j] > 0.0 { dot(&b[i], &star[j]) / norms[j] } else { 0.0 };
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= mu[i][j] * sk;
                }
            }
            norms[i] = dot(&v, &v);
            star.push(v);
        }
        (mu, norms)
    };

    let mut k = 1;
    let mut steps = 0;
    while k < n && steps < 10_000 {
        steps += 1;
        for j in (0..k).rev() {
            let (mu, _) = gso(&b);
            let q = mu[k][j].round();
            if q != 0.0 && q.is_finite() {
                let qi = q as i64;
                for c in 0..b[k].len() {
                    b[k][c] -= q * b[j][c];
                }
                let tj = t[j].clone();
                for (x, y) in t[k].iter_mut().zip(&tj) {
                    *x -= qi * y;
                }
            }
        }
        let (mu, norms) = gso(&b);
        if norms[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    IntMat::from_vecs(
        t.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect(),
    )
    .expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{zeta_lattice, EtaleAlgebra};
    use crate::exact::int;

    #[test]
    fn shell_enumeration_counts() {
        for (n, s) in [(1usize, 2i64), (2, 1), (3, 2)] {
            let mut count = 0;
            for_each_in_shell(n, s, &mut |y| {
                assert_eq!(y.iter().map(|v| v.abs()).max(), Some(s));
                count += 1;
                false
            });
            assert_eq!(count, (2 * s + 1).pow(n as u32) - (2 * s - 1).pow(n as u32));
        }
    }

    #[test]
    fn identical_and_scaled_lattices() {
        let f = IntPoly::from_i64(&[7, 5, 3, 2]);
        let r = zeta_lattice(&f, 0).unwrap();
        let res = colon_and_kappa_search(&r, &r, 3).unwrap();
        assert_eq!(res.kappa.unwrap(), AlgElement::one(r.algebra()));
        let three = r.scale_by(&AlgElement::from_int(r.algebra(), int(3))).unwrap();
        let res = colon_and_kappa_search(&three, &r, 3).unwrap();
        assert_eq!(res.kappa.unwrap(), AlgElement::from_int(r.algebra(), int(3)));
    }

    #[test]
    fn finds_non_scalar_generator() {
        let k = EtaleAlgebra::new(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
        let z = IdealLattice::unit(&k);
        let gen = AlgElement::from_poly(&k, &IntPoly::from_i64(&[1, 1, 1]));
        let l = z.scale_by(&gen).unwrap();
        let res = colon_and_kappa_search(&l, &z, 4).unwrap();
        let kappa = res.kappa.expect("generator found");
        assert_eq!(z.scale_by(&kappa).unwrap(), l);
    }

    #[test]
    fn lll_transform_is_unimodular() {
        let k = EtaleAlgebra::new(&IntPoly::from_i64(&[255, 13, -62, -1, 4])).unwrap();
        let b = IdealLattice::unit(&k)
            .scale_by(&AlgElement::from_poly(&k, &IntPoly::from_i64(&[371, 0, 12])))
            .unwrap();
        let t = lll_transform(b.basis(), k.defining_poly());
        assert!(t.is_unimodular());
    }
}
