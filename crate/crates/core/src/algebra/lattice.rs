use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{check_same, AlgElement, Algebra, EtaleAlgebra};
use crate::error::{Error, Result};
use crate::exact::{det_division_free, discriminant, row_lattice, IntMat, IntPoly, MPoly, RatMat};
use crate::form::DecomposableForm;

/// Full-rank lattice in an etale algebra.
///
/// Keeps the basis it was built from plus the canonical pair `(d, H)`:
/// `H` is the HNF of `d * basis` and `d` is the smallest positive denominator.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    alg: Algebra,
    basis: RatMat,
    d: BigInt,
    h: IntMat,
}

impl PartialEq for IdealLattice {
    fn eq(&self, other: &Self) -> bool {
        super::same_algebra(&self.alg, &other.alg) && self.d == other.d && self.h == other.h
    }
}

fn canonical_pair(rows: &RatMat, n: usize) -> Result<(BigInt, IntMat)> {
    let d = rows.common_denominator();
    let dr = BigRational::from_integer(d.clone());
    let scaled = rows.map(|x| (x * &dr).to_integer());
    let h = row_lattice(&scaled);
    if h.rows() != n {
        return Err(Error::Rank(format!("lattice of rank {} in dimension {n}", h.rows())));
    }
    let content = (0..n)
        .flat_map(|i| h.row(i).to_vec())
        .fold(BigInt::zero(), |g, x| g.gcd(&x));
    let g = content.gcd(&d);
    Ok((&d / &g, h.map(|x| x / &g)))
}

impl IdealLattice {
    /// Lattice with the given basis rows (power-basis coordinates); must be square and nonsingular.
    pub fn new(alg: &Algebra, basis: RatMat) -> Result<Self> {
        let n = alg.degree();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::Dimension(format!(
                "lattice basis must be {n}x{n}, got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        if basis.det()?.is_zero() {
            return Err(Error::Rank("lattice basis is singular".into()));
        }
        let (d, h) = canonical_pair(&basis, n)?;
        Ok(IdealLattice {
            alg: alg.clone(),
            basis,
            d,
            h,
        })
    }

    /// Lattice spanned by an arbitrary full-rank generating set; the basis is the canonical one.
    pub fn from_generators(alg: &Algebra, gens: &RatMat) -> Result<Self> {
        let n = alg.degree();
        let (d, h) = canonical_pair(gens, n)?;
        let dr = BigRational::from_integer(d.clone());
        let basis = h.map(|x| BigRational::from_integer(x.clone()) / &dr);
        Ok(IdealLattice {
            alg: alg.clone(),
            basis,
            d,
            h,
        })
    }

    pub fn from_elements(alg: &Algebra, elems: &[AlgElement]) -> Result<Self> {
        for e in elems {
            check_same(alg, e.algebra())?;
        }
        let rows = RatMat::from_rows(
            elems.iter().map(|e| e.coords().to_vec()).collect(),
            alg.degree(),
        )?;
        Self::new(alg, rows)
    }

    /// `Z[alpha]`.
    pub fn unit(alg: &Algebra) -> Self {
        Self::new(alg, RatMat::identity(alg.degree())).expect("identity basis")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<AlgElement> {
        (0..self.basis.rows())
            .map(|i| AlgElement::new(&self.alg, self.basis.row(i).to_vec()).expect("row length"))
            .collect()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.d
    }

    pub fn hnf(&self) -> &IntMat {
        &self.h
    }

    /// Basis `H / d`.
    pub fn canonical_basis(&self) -> RatMat {
        let dr = BigRational::from_integer(self.d.clone());
        self.h.map(|x| BigRational::from_integer(x.clone()) / &dr)
    }

    pub fn equals(&self, other: &IdealLattice) -> Result<bool> {
        check_same(&self.alg, &other.alg)?;
        Ok(self.d == other.d && self.h == other.h)
    }

    /// Unimodular `U` with `basis(self) = U * basis(other)`, when the lattices coincide.
    pub fn change_of_basis(&self, other: &IdealLattice) -> Result<Option<IntMat>> {
        if !self.equals(other)? {
            return Ok(None);
        }
        let u = (&self.basis * &other.basis.inverse()?)
            .to_int()
            .ok_or_else(|| Error::NotUnimodular("non-integral change of basis between equal lattices".into()))?;
        Ok(Some(u))
    }

    /// `|det B_self| / |det B_o|`.
    pub fn norm_over(&self, o: &IdealLattice) -> Result<BigRational> {
        check_same(&self.alg, &o.alg)?;
        Ok((self.basis.det()? / o.basis.det()?).abs())
    }

    pub fn contains(&self, x: &AlgElement) -> Result<bool> {
        check_same(&self.alg, x.algebra())?;
        let inv = self.basis.inverse()?;
        Ok(inv.left_mul_vec(x.coords())?.iter().all(|c| c.is_integer()))
    }

    pub fn contains_lattice(&self, other: &IdealLattice) -> Result<bool> {
        check_same(&self.alg, &other.alg)?;
        let m = &other.basis * &self.basis.inverse()?;
        Ok(m.is_integral())
    }

    /// Span of all pairwise products of basis elements.
    pub fn mul(&self, other: &IdealLattice) -> Result<IdealLattice> {
        check_same(&self.alg, &other.alg)?;
        let mut rows = Vec::new();
        for x in self.basis_elements() {
            let m = x.mult_matrix();
            for j in 0..other.basis.rows() {
                rows.push(m.left_mul_vec(other.basis.row(j))?);
            }
        }
        Self::from_generators(&self.alg, &RatMat::from_vecs(rows)?)
    }

    pub fn pow(&self, k: u32) -> Result<IdealLattice> {
        let mut acc = IdealLattice::unit(&self.alg);
        if k == 0 {
            return Ok(acc);
        }
        acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `x * L`, basis images kept in order.
    pub fn scale_by(&self, x: &AlgElement) -> Result<IdealLattice> {
        check_same(&self.alg, x.algebra())?;
        let m = x.mult_matrix();
        let rows: Vec<Vec<BigRational>> = (0..self.basis.rows())
            .map(|i| m.left_mul_vec(self.basis.row(i)))
            .collect::<Result<_>>()?;
        IdealLattice::new(&self.alg, RatMat::from_vecs(rows)?)
    }

    /// Colon lattice `(self : other) = { x : x * other ⊆ self }`.
    pub fn colon(&self, other: &IdealLattice) -> Result<IdealLattice> {
        check_same(&self.alg, &other.alg)?;
        let n = self.alg.degree();
        let inv = self.basis.inverse()?;
        // Columns of [M_w1 B^-1 | ... | M_wn B^-1] span a lattice C; the colon is its dual.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n * n);
        for w in other.basis_elements() {
            let a = &w.mult_matrix() * &inv;
            for j in 0..n {
                cols.push((0..n).map(|i| a.get(i, j).clone()).collect());
            }
        }
        let c = IdealLattice::from_generators(&self.alg, &RatMat::from_vecs(cols)?)?;
        let dual = c.canonical_basis().inverse()?.transpose();
        IdealLattice::from_generators(&self.alg, &dual)
    }

    /// Multiplier ring `{ x : x L ⊆ L }`.
    pub fn endo_ring(&self) -> Result<IdealLattice> {
        self.colon(self)
    }

    /// True when `1` lies in the lattice and it is closed under multiplication.
    pub fn is_order(&self) -> Result<bool> {
        if !self.contains(&AlgElement::one(&self.alg))? {
            return Ok(false);
        }
        let sq = self.mul(self)?;
        self.contains_lattice(&sq)
    }

    /// Whether `self * (o : self) = o`.
    pub fn is_invertible_over(&self, o: &IdealLattice) -> Result<bool> {
        let inv = o.colon(self)?;
        self.mul(&inv)?.equals(o)
    }

    /// Discriminant of the trace form `det(Tr(w_i w_j))` of the stored basis.
    pub fn trace_discriminant(&self) -> Result<BigRational> {
        let els = self.basis_elements();
        let n = els.len();
        let mut t = RatMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let (tr, _) = els[i].mul(&els[j])?.trace_and_norm();
                t.set(i, j, tr.clone());
                t.set(j, i, tr);
            }
        }
        t.det()
    }

    /// Norm form `N(sum X_i w_i) / N_O(L)` with respect to the stored basis.
    pub fn norm_form(&self, o: &IdealLattice) -> Result<DecomposableForm> {
        check_same(&self.alg, &o.alg)?;
        if !o.is_order()? {
            return Err(Error::Domain("norm form reference lattice is not an order".into()));
        }
        let n = self.alg.degree();
        let (poly, scale) = norm_polynomial(&self.basis_elements())?;
        // form = poly / (scale * N_O(L))
        let denom = BigRational::from_integer(scale) * self.norm_over(o)?;
        let mut terms = Vec::new();
        for (e, c) in poly.terms() {
            let v = BigRational::from_integer(c.clone()) / &denom;
            if !v.is_integer() {
                return Err(Error::Domain("norm form is not integral: lattice is not an ideal of the order".into()));
            }
            terms.push((e.clone(), v.to_integer()));
        }
        DecomposableForm::new(n, MPoly::from_terms(n, terms))
    }
}

/// `P(X) = det(sum X_i * D * M_{w_i})` with `D` the common denominator, and `D^n`.
pub(crate) fn norm_polynomial(els: &[AlgElement]) -> Result<(MPoly, BigInt)> {
    let n = els.len();
    let mats: Vec<RatMat> = els.iter().map(AlgElement::mult_matrix).collect();
    let d = mats
        .iter()
        .fold(BigInt::one(), |l, m| l.lcm(&m.common_denominator()));
    let dr = BigRational::from_integer(d.clone());
    let mut entries = vec![vec![MPoly::zero_in(n); n]; n];
    for (v, m) in mats.iter().enumerate() {
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let c = (m.get(i, j) * &dr).to_integer();
                if !c.is_zero() {
                    let mut e = vec![0; n];
                    e[v] = 1;
                    slot.add_term(e, c);
                }
            }
        }
    }
    Ok((det_division_free(&entries), num_traits::pow(d, n)))
}

/// `I_f(k)`: basis `1, alpha, ..., alpha^k, zeta_{k+1}, ..., zeta_{n-1}` with
/// `zeta_i = f_0 alpha^i + f_1 alpha^(i-1) + ... + f_{i-1} alpha`, `f_0` the leading coefficient.
pub fn zeta_lattice(f: &IntPoly, k: usize) -> Result<IdealLattice> {
    let n = f.deg()?;
    if k >= n {
        return Err(Error::Domain(format!("k = {k} outside [0, {}]", n - 1)));
    }
    if discriminant(f)?.is_zero() {
        return Err(Error::Degenerate("discriminant is zero".into()));
    }
    let alg = EtaleAlgebra::new(f)?;
    zeta_lattice_in(&alg, k)
}

pub(crate) fn zeta_lattice_in(alg: &Algebra, k: usize) -> Result<IdealLattice> {
    let f = alg.defining_poly();
    let n = alg.degree();
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        if i <= k {
            row[i] = BigRational::one();
        } else {
            // f_j = coefficient of X^(n-j)
            for j in 0..i {
                row[i - j] = BigRational::from_integer(f.coeff(n - j));
            }
        }
    }
    IdealLattice::new(alg, RatMat::from_vecs(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(int(x))
    }

    #[test]
    fn zeta_basis_example() {
        let f = IntPoly::from_i64(&[7, 5, 3, 2]);
        let r = zeta_lattice(&f, 0).unwrap();
        let want = RatMat::from_vecs(vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(2), q(0)],
            vec![q(0), q(3), q(2)],
        ])
        .unwrap();
        assert_eq!(r.basis(), &want);
        let i1 = zeta_lattice(&f, 1).unwrap();
        assert_eq!(i1.basis().row(2), &[q(0), q(3), q(2)]);
        assert_eq!(i1.mul(&i1).unwrap(), zeta_lattice(&f, 2).unwrap());
    }

    #[test]
    fn norms_of_zeta_lattices() {
        let f = IntPoly::from_i64(&[7, 5, 3, 2]);
        let r = zeta_lattice(&f, 0).unwrap();
        for k in 0..3 {
            let l = zeta_lattice(&f, k).unwrap();
            let want = BigRational::new(int(1), num_traits::pow(int(2), k));
            assert_eq!(l.norm_over(&r).unwrap(), want);
        }
    }

    #[test]
    fn endo_ring_of_top_ideal_is_invariant_order() {
        let f = IntPoly::from_i64(&[7, 5, 3, 2]);
        let top = zeta_lattice(&f, 2).unwrap();
        assert_eq!(top.endo_ring().unwrap(), zeta_lattice(&f, 0).unwrap());
    }

    #[test]
    fn equality_and_change_of_basis() {
        let k = EtaleAlgebra::new(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let a = IdealLattice::unit(&k);
        let swapped = IdealLattice::new(
            &k,
            RatMat::from_vecs(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap(),
        )
        .unwrap();
        let u = a.change_of_basis(&swapped).unwrap().unwrap();
        assert_eq!(u, IntMat::from_i64(&[&[0, 1], &[1, 0]]));
        let two = a.scale_by(&AlgElement::from_int(&k, int(2))).unwrap();
        assert!(!a.equals(&two).unwrap());
        assert_eq!(two.norm_over(&a).unwrap(), q(4));
    }

    #[test]
    fn norm_forms_of_quadratics() {
        let k = EtaleAlgebra::new(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        let z = IdealLattice::unit(&k);
        let nf = z.norm_form(&z).unwrap();
        assert_eq!(nf.coeff(&[2, 0]), int(1));
        assert_eq!(nf.coeff(&[0, 2]), int(1));
        assert_eq!(nf.coeff(&[1, 1]), int(0));
        let k2 = EtaleAlgebra::new(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let z2 = IdealLattice::unit(&k2);
        let nf2 = z2.norm_form(&z2).unwrap();
        assert_eq!(nf2.coeff(&[0, 2]), int(-2));
    }

    #[test]
    fn colon_of_scaled_lattice() {
        let k = EtaleAlgebra::new(&IntPoly::from_i64(&[1, -1, 0, 1])).unwrap();
        let z = IdealLattice::unit(&k);
        let three = z.scale_by(&AlgElement::from_int(&k, int(3))).unwrap();
        assert_eq!(three.colon(&z).unwrap(), three);
        assert_eq!(z.colon(&three).unwrap().norm_over(&z).unwrap(), BigRational::new(int(1), int(27)));
    }

    #[test]
    fn imprimitive_ideal_not_invertible() {
        let f = IntPoly::from_i64(&[2, 4, 0, 2]);
        let r = zeta_lattice(&f, 0).unwrap();
        let i1 = zeta_lattice(&f, 1).unwrap();
        assert!(!i1.is_invertible_over(&r).unwrap());
        let g = IntPoly::from_i64(&[1, 2, 0, 2]);
        let rg = zeta_lattice(&g, 0).unwrap();
        assert!(zeta_lattice(&g, 1).unwrap().is_invertible_over(&rg).unwrap());
    }
}
