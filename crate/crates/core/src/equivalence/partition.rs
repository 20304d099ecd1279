use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::{gl2_witness_solve_full, Gl2Witness};
use crate::algebra::{AlgElement, Algebra, EtaleAlgebra};
use crate::error::{Error, Result};
use crate::exact::{IntPoly, RatMat};

/// Classes of 0-based indices; each class sorted, classes ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
}

struct Generator {
    minpoly: IntPoly,
    coords: Vec<BigRational>,
    to_own_basis: RatMat,
}

impl Generator {
    fn new(alg: &Algebra, n: usize, idx: usize, tail: &[BigInt]) -> Result<Self> {
        if tail.len() + 1 != n {
            return Err(Error::Dimension(format!(
                "beta {} has {} coordinates, need {}",
                idx + 1,
                tail.len(),
                n - 1
            )));
        }
        let mut coords = vec![BigRational::from_integer(BigInt::from(0))];
        coords.extend(tail.iter().map(|x| BigRational::from_integer(x.clone())));
        let beta = AlgElement::new(alg, coords.clone())?;
        let powers: Vec<Vec<BigRational>> = (0..n).map(|k| beta.pow(k as u32).coords().to_vec()).collect();
        let p = RatMat::from_vecs(powers)?;
        let det = p.det()?;
        if !det.abs().is_one() {
            return Err(Error::Precondition(format!(
                "Z[beta_{}] != Z[alpha] (index {})",
                idx + 1,
                det
            )));
        }
        let minpoly = beta
            .char_poly()?
            .to_int()
            .ok_or_else(|| Error::Precondition("beta is not integral".into()))?;
        Ok(Generator {
            minpoly,
            coords,
            to_own_basis: p.inverse()?,
        })
    }

    /// Witness expressing `other` as a Moebius image of `self`, if one exists.
    fn relate(&self, other: &Generator) -> Result<Option<Gl2Witness>> {
        let w = self.to_own_basis.left_mul_vec(&other.coords)?;
        let w: Vec<BigInt> = w.iter().map(|x| x.to_integer()).collect();
        gl2_witness_solve_full(&self.minpoly, &w)
    }
}

/// Tests whether the generators `beta` and `target` (tails `(b_2, ..., b_n)`) of `Z[alpha]`
/// have GL2(Z)-related minimal polynomials, via `target = (a beta + b)/(c beta + d)`.
pub fn gl2_related(f: &IntPoly, beta: &[BigInt], target: &[BigInt]) -> Result<Option<Gl2Witness>> {
    let n = f.deg()?;
    let alg = EtaleAlgebra::new(f)?;
    let gi = Generator::new(&alg, n, 0, beta)?;
    let gj = Generator::new(&alg, n, 1, target)?;
    gi.relate(&gj)
}

/// Partition `beta_i = sum_k b_k alpha^(k-1)` (given as `(b_2, ..., b_n)`) into GL2(Z) classes.
///
/// For each ordered pair, `beta_j` is rewritten in the power basis of `beta_i` and the
/// linear witness system is solved against the minimal polynomial of `beta_i`.
/// Every `beta_i` must generate `Z[alpha]`.
pub fn partition_gl2(f: &IntPoly, betas: &[Vec<BigInt>], parallel: bool) -> Result<Partition> {
    let n = f.deg()?;
    let alg = EtaleAlgebra::new(f)?;
    let gens: Vec<Generator> = betas
        .iter()
        .enumerate()
        .map(|(idx, tail)| Generator::new(&alg, n, idx, tail))
        .collect::<Result<_>>()?;

    let m = gens.len();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let test = |&(i, j): &(usize, usize)| -> Result<Option<(usize, usize)>> {
        Ok(gens[i].relate(&gens[j])?.map(|_| (i, j)))
    };
    let related: Vec<Option<(usize, usize)>> = if parallel {
        pairs.par_iter().map(test).collect::<Result<_>>()?
    } else {
        pairs.iter().map(test).collect::<Result<_>>()?
    };

    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (i, j) in related.into_iter().flatten() {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for x in 0..m {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    Ok(Partition { classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn pairwise_test_agrees_with_table_one() {
        let t = tables::builtin(1).unwrap();
        // beta_2 and beta_5 lie in different classes, beta_1 and beta_5 in the same one
        assert!(gl2_related(&t.poly, &t.betas[1], &t.betas[4]).unwrap().is_none());
        assert!(gl2_related(&t.poly, &t.betas[0], &t.betas[4]).unwrap().is_some());
    }
}
