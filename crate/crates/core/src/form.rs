//! Hermite's decomposable form `[f]`, the GL_n action on forms, and the GL_2 transfer matrix.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgElement, EtaleAlgebra};
use crate::error::{Error, Result};
use crate::exact::{det_division_free, discriminant, sylvester, IntMat, IntPoly, MPoly, RatMat};

/// Homogeneous form of degree `n` in `n` variables with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposableForm {
    n: usize,
    poly: MPoly,
}

impl DecomposableForm {
    pub fn new(n: usize, poly: MPoly) -> Result<Self> {
        let poly = if poly.nvars() != n && poly.terms().is_empty() {
            MPoly::zero_in(n)
        } else {
            poly
        };
        if poly.nvars() != n {
            return Err(Error::Dimension(format!(
                "form in {} variables declared with n = {n}",
                poly.nvars()
            )));
        }
        if !poly.is_homogeneous(n as u32) {
            return Err(Error::Domain(format!("form is not homogeneous of degree {n}")));
        }
        Ok(DecomposableForm { n, poly })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.poly.coeff(e)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.terms().is_empty()
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.poly.eval(x)
    }

    pub fn neg(&self) -> Self {
        DecomposableForm {
            n: self.n,
            poly: -&self.poly,
        }
    }

    /// `F(U X)`: each `X_i` becomes `sum_j U[i][j] X_j`.
    pub fn act_gln(&self, u: &IntMat) -> Result<Self> {
        if u.rows() != self.n || u.cols() != self.n {
            return Err(Error::Dimension(format!("need a {0}x{0} matrix", self.n)));
        }
        if !u.det()?.abs().is_one() {
            return Err(Error::Domain("matrix is not unimodular".into()));
        }
        let subs: Vec<MPoly> = (0..self.n).map(|i| MPoly::linear(u.row(i))).collect();
        Ok(DecomposableForm {
            n: self.n,
            poly: self.poly.substitute(&subs),
        })
    }

    /// `Some(1)` if equal, `Some(-1)` if equal to the negation, `None` otherwise.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }
}

/// Non-negative gcd of the coefficients of a nonzero form.
pub fn form_content(form: &DecomposableForm) -> Result<BigInt> {
    if form.is_zero() {
        return Err(Error::Domain("content of the zero form".into()));
    }
    Ok(form.poly.content())
}

/// `[f](X) = Res(phi_X, f)` with `phi_X(Y) = X_1 Y^(n-1) + ... + X_n`.
pub fn hermite_form(f: &IntPoly) -> Result<DecomposableForm> {
    let n = f.deg()?;
    if n < 2 {
        return Err(Error::Domain("Hermite form needs degree >= 2".into()));
    }
    let phi: Vec<MPoly> = (0..n).map(|k| MPoly::var(n, n - 1 - k)).collect();
    let fc: Vec<MPoly> = f
        .coeffs()
        .iter()
        .map(|c| MPoly::constant(n, c.clone()))
        .collect();
    let mut rows = sylvester(&phi, &fc)?;
    // Constant rows first keeps the subset recursion in integers for longer;
    // moving the last n-1 rows past the first n is an even permutation.
    rows.rotate_left(n);
    let det = det_division_free(&rows);
    DecomposableForm::new(n, det)
}

/// `t(gamma)`: row `k`, column `j` is the coefficient of `u^(n-1-j) v^j` in
/// `(d u - b v)^(n-1-k) (-c u + a v)^k`. Satisfies `[gamma f](X) = [f](t(gamma)^T X)`.
pub fn transfer_matrix(gamma: &IntMat, n: usize) -> Result<IntMat> {
    check_gl2(gamma)?;
    if n == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    let (a, b, c, d) = gl2_entries(gamma);
    let p1 = IntPoly::new(vec![d, -b]);
    let p2 = IntPoly::new(vec![-c, a]);
    let mut t = IntMat::zeros(n, n);
    for k in 0..n {
        let prod = &p1.pow((n - 1 - k) as u32) * &p2.pow(k as u32);
        for j in 0..n {
            t.set(k, j, prod.coeff(j));
        }
    }
    Ok(t)
}

pub(crate) fn gl2_entries(g: &IntMat) -> (BigInt, BigInt, BigInt, BigInt) {
    (
        g.get(0, 0).clone(),
        g.get(0, 1).clone(),
        g.get(1, 0).clone(),
        g.get(1, 1).clone(),
    )
}

pub(crate) fn check_gl2(g: &IntMat) -> Result<()> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::Dimension("expected a 2x2 matrix".into()));
    }
    if !g.det()?.abs().is_one() {
        return Err(Error::Domain("matrix is not in GL2(Z)".into()));
    }
    Ok(())
}

/// Checks `f_0^(2(n-1)) det(Tr(alpha^(i+j))) = D(f)` with traces computed in `Q[X]/(f)`.
pub fn verify_disc_identity(f: &IntPoly) -> Result<bool> {
    let n = f.deg()?;
    if n < 2 {
        return Err(Error::Domain("degree must be >= 2".into()));
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::Degenerate("discriminant is zero".into()));
    }
    let alg = EtaleAlgebra::new(f)?;
    let alpha = AlgElement::alpha(&alg);
    let traces: Vec<_> = (0..2 * n - 1)
        .map(|k| alpha.pow(k as u32).trace_and_norm().0)
        .collect();
    let mut m = RatMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, traces[i + j].clone());
        }
    }
    let lc = num_rational::BigRational::from_integer(f.leading());
    let lhs = num_traits::pow(lc, 2 * (n - 1)) * m.det()?;
    Ok(lhs == num_rational::BigRational::from_integer(disc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn form(n: usize, terms: &[(&[u32], i64)]) -> DecomposableForm {
        DecomposableForm::new(
            n,
            MPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))),
        )
        .unwrap()
    }

    #[test]
    fn sum_of_squares() {
        let f = hermite_form(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(f, form(2, &[(&[2, 0], 1), (&[0, 2], 1)]));
        let g = hermite_form(&IntPoly::from_i64(&[2, 0, 2])).unwrap();
        assert_eq!(g, form(2, &[(&[2, 0], 2), (&[0, 2], 2)]));
        assert_eq!(form_content(&g).unwrap(), int(2));
    }

    #[test]
    fn cube_roots_of_unity_norm() {
        let f = hermite_form(&IntPoly::from_i64(&[-1, 0, 0, 1])).unwrap();
        let want = form(
            3,
            &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1), (&[1, 1, 1], -3)],
        );
        assert_eq!(f, want);
        let c = hermite_form(&IntPoly::from_i64(&[-3, 0, 0, 3])).unwrap();
        assert_eq!(form_content(&c).unwrap(), int(9));
    }

    #[test]
    fn degree_one_rejected() {
        assert!(matches!(hermite_form(&IntPoly::from_i64(&[1, 1])), Err(Error::Domain(_))));
    }

    #[test]
    fn transfer_identity() {
        assert_eq!(transfer_matrix(&IntMat::identity(2), 4).unwrap(), IntMat::identity(4));
        let t = transfer_matrix(&IntMat::from_i64(&[&[1, 1], &[0, 1]]), 2).unwrap();
        assert_eq!(t, IntMat::from_i64(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn gln_action_examples() {
        let f = form(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let swap = IntMat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(f.act_gln(&swap).unwrap(), f);
        assert_eq!(f.act_gln(&IntMat::identity(2)).unwrap(), f);
        let xy = form(2, &[(&[1, 1], 1)]);
        let shear = IntMat::from_i64(&[&[1, 2], &[0, 1]]);
        // (X1 + 2 X2) X2
        assert_eq!(xy.act_gln(&shear).unwrap(), form(2, &[(&[1, 1], 1), (&[0, 2], 2)]));
        assert!(f.act_gln(&IntMat::from_i64(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn disc_identity_examples() {
        assert!(verify_disc_identity(&IntPoly::from_i64(&[1, 0, 1])).unwrap());
        assert!(verify_disc_identity(&IntPoly::from_i64(&[7, 5, 3, 2])).unwrap());
        assert!(matches!(
            verify_disc_identity(&IntPoly::from_i64(&[1, 2, 1])),
            Err(Error::Degenerate(_))
        ));
    }
}
