//! Arithmetic in `Q[X]/(g)` for squarefree `g`, and lattices inside it.

mod lattice;
mod search;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{discriminant, IntPoly, RatMat, RatPoly};

pub use lattice::{zeta_lattice, IdealLattice};
pub use search::{colon_and_kappa_search, KappaSearch};

/// `Q[X]/(g)` with `g` squarefree of degree at least 2. Elements use power-basis coordinates.
#[derive(Debug, PartialEq, Eq)]
pub struct EtaleAlgebra {
    g: IntPoly,
    n: usize,
    alpha_n: Vec<BigRational>,
}

pub type Algebra = Arc<EtaleAlgebra>;

impl EtaleAlgebra {
    pub fn new(g: &IntPoly) -> Result<Algebra> {
        let n = g.deg()?;
        if n < 2 {
            return Err(Error::Domain("algebra needs a defining polynomial of degree >= 2".into()));
        }
        if discriminant(g)?.is_zero() {
            return Err(Error::Degenerate("defining polynomial is not squarefree".into()));
        }
        let lc = BigRational::from_integer(g.leading());
        let alpha_n = (0..n)
            .map(|i| -BigRational::from_integer(g.coeff(i)) / &lc)
            .collect();
        Ok(Arc::new(EtaleAlgebra {
            g: g.clone(),
            n,
            alpha_n,
        }))
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coordinates of `v * alpha`.
    fn mul_alpha(&self, v: &[BigRational]) -> Vec<BigRational> {
        let top = v[self.n - 1].clone();
        let mut w = Vec::with_capacity(self.n);
        w.push(BigRational::zero());
        w.extend(v[..self.n - 1].iter().cloned());
        if !top.is_zero() {
            for (wi, a) in w.iter_mut().zip(&self.alpha_n) {
                *wi += &top * a;
            }
        }
        w
    }
}

/// Element of an [`EtaleAlgebra`].
#[derive(Clone, Debug)]
pub struct AlgElement {
    alg: Algebra,
    coords: Vec<BigRational>,
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.coords == other.coords
    }
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a.g == b.g
}

fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

impl AlgElement {
    pub fn new(alg: &Algebra, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != alg.n {
            return Err(Error::Dimension(format!(
                "{} coordinates in a degree-{} algebra",
                coords.len(),
                alg.n
            )));
        }
        Ok(AlgElement {
            alg: alg.clone(),
            coords,
        })
    }

    pub fn from_int(alg: &Algebra, c: BigInt) -> Self {
        let mut coords = vec![BigRational::zero(); alg.n];
        coords[0] = BigRational::from_integer(c);
        AlgElement {
            alg: alg.clone(),
            coords,
        }
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::from_int(alg, BigInt::one())
    }

    pub fn alpha(alg: &Algebra) -> Self {
        let mut coords = vec![BigRational::zero(); alg.n];
        coords[1] = BigRational::one();
        AlgElement {
            alg: alg.clone(),
            coords,
        }
    }

    /// `p(alpha)`, reduced.
    pub fn from_poly(alg: &Algebra, p: &IntPoly) -> Self {
        let mut acc = vec![BigRational::zero(); alg.n];
        for c in p.coeffs().iter().rev() {
            acc = alg.mul_alpha(&acc);
            acc[0] += BigRational::from_integer(c.clone());
        }
        AlgElement {
            alg: alg.clone(),
            coords: acc,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Integer coordinates, if all are integral.
    pub fn int_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Matrix whose row `i` holds the coordinates of `self * alpha^i`.
    pub fn mult_matrix(&self) -> RatMat {
        let mut rows = Vec::with_capacity(self.alg.n);
        let mut cur = self.coords.clone();
        for _ in 0..self.alg.n {
            let next = self.alg.mul_alpha(&cur);
            rows.push(cur);
            cur = next;
        }
        RatMat::from_vecs(rows).expect("square")
    }

    pub fn mul(&self, other: &AlgElement) -> Result<AlgElement> {
        check_same(&self.alg, &other.alg)?;
        let coords = self.mult_matrix().left_mul_vec(&other.coords)?;
        Ok(AlgElement {
            alg: self.alg.clone(),
            coords,
        })
    }

    pub fn add(&self, other: &AlgElement) -> Result<AlgElement> {
        check_same(&self.alg, &other.alg)?;
        Ok(AlgElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &AlgElement) -> Result<AlgElement> {
        check_same(&self.alg, &other.alg)?;
        Ok(AlgElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> AlgElement {
        AlgElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> AlgElement {
        let mut acc = AlgElement::one(&self.alg);
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// `p(self)` by Horner evaluation.
    pub fn eval_poly(&self, p: &IntPoly) -> AlgElement {
        let m = self.mult_matrix();
        let mut acc = vec![BigRational::zero(); self.alg.n];
        for c in p.coeffs().iter().rev() {
            acc = m.left_mul_vec(&acc).expect("square");
            acc[0] += BigRational::from_integer(c.clone());
        }
        AlgElement {
            alg: self.alg.clone(),
            coords: acc,
        }
    }

    /// Trace and norm as trace and determinant of the multiplication matrix.
    pub fn trace_and_norm(&self) -> (BigRational, BigRational) {
        let m = self.mult_matrix();
        (m.trace(), m.det().expect("square"))
    }

    /// Characteristic polynomial of multiplication by `self`.
    pub fn char_poly(&self) -> Result<RatPoly> {
        self.mult_matrix().char_poly()
    }
}
