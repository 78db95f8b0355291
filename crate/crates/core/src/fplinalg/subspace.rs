use itertools::Itertools;
use serde::Serialize;

use super::field::{PrimeField, VectorFp};
use super::matrix::{kernel, rref, rref_in_place, MatrixFp};
use crate::error::{check_dim, Error, Result};

/// A subspace of GF(p)^n carried by its reduced row echelon basis.
///
/// The basis is canonical, so structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixFp,
}

impl Subspace {
    /// Row space of `rows`, canonicalised.
    pub fn from_rows(rows: MatrixFp) -> Self {
        let ambient_dim = rows.cols();
        let (_, basis) = rref(&rows);
        Subspace { ambient_dim, basis }
    }

    pub fn span(field: PrimeField, ambient_dim: usize, vectors: &[VectorFp]) -> Result<Self> {
        Ok(Self::from_rows(MatrixFp::from_vectors(
            field,
            ambient_dim,
            vectors,
        )?))
    }

    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: MatrixFp::zero(field, 0, ambient_dim),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: MatrixFp::identity(field, ambient_dim),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Same as [`Subspace::dim`].
    pub fn rank(&self) -> usize {
        self.dim()
    }

    pub fn basis(&self) -> &MatrixFp {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<VectorFp> {
        (0..self.dim()).map(|r| self.basis.row_vector(r)).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|&e| e != 0)
                    .expect("RREF rows are nonzero")
            })
            .collect()
    }

    pub fn contains(&self, v: &VectorFp) -> Result<bool> {
        check_dim(self.ambient_dim, v.dim())?;
        Ok(self.reduce(v).is_zero())
    }

    /// Canonical representative of `v` modulo this subspace: the pivot
    /// coordinates are cleared.
    pub fn reduce(&self, v: &VectorFp) -> VectorFp {
        let f = self.field();
        let mut x = v.coords().to_vec();
        for (r, pc) in self.pivots().into_iter().enumerate() {
            let c = x[pc];
            if c != 0 {
                for (xi, &bi) in x.iter_mut().zip(self.basis.row(r)) {
                    *xi = f.sub(*xi, f.mul(c, bi));
                }
            }
        }
        VectorFp::new(f, x)
    }

    /// Every vector of the subspace, as combinations of the basis rows in
    /// odometer order.
    pub fn elements(&self) -> impl Iterator<Item = VectorFp> + '_ {
        let f = self.field();
        VectorFp::all(f, self.dim()).map(move |c| {
            let mut x = vec![0u32; self.ambient_dim];
            for (r, &cr) in c.coords().iter().enumerate() {
                if cr == 0 {
                    continue;
                }
                for (xi, &bi) in x.iter_mut().zip(self.basis.row(r)) {
                    *xi = f.add(*xi, f.mul(cr, bi));
                }
            }
            VectorFp::new(f, x)
        })
    }

    /// Annihilator in the dual, identified with GF(p)^n by the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_rows(self.basis.stack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.field() != other.field() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// `(a + b, a ∩ b)`.
pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace)> {
    Ok((a.sum(b)?, a.intersection(b)?))
}

/// Every `k`-dimensional subspace of GF(p)^n exactly once, ordered by pivot
/// set (lexicographic) and then by the free RREF entries (row-major
/// odometer, least significant first).
pub fn enumerate_subspaces(
    ambient_dim: usize,
    k: usize,
    field: PrimeField,
) -> impl Iterator<Item = Subspace> {
    let n = ambient_dim;
    let k = k.min(n + 1);
    (0..n).combinations(k).flat_map(move |pivots| {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = pivots.clone();
                ((pc + 1)..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = (field.p() as u64).pow(free.len() as u32);
        (0..count).map(move |t| {
            let mut basis = MatrixFp::zero(field, pivots.len(), n);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(r, pc, 1);
            }
            let digits = VectorFp::from_index(field, free.len(), t);
            for (&(r, c), &d) in free.iter().zip(digits.coords()) {
                basis.set(r, c, d);
            }
            Subspace {
                ambient_dim: n,
                basis,
            }
        })
    })
}

/// Number of `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Rank of the matrix whose rows are the given slices.
pub(crate) fn rank_of_rows(field: PrimeField, cols: usize, rows: &[&[u32]]) -> usize {
    let mut e: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    rref_in_place(field, &mut e, rows.len(), cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn line(f: PrimeField, v: &[u32]) -> Subspace {
        Subspace::span(f, v.len(), &[VectorFp::new(f, v.to_vec())]).unwrap()
    }

    #[test]
    fn annihilator_small_cases() {
        let f = gf(3);
        assert_eq!(Subspace::zero(f, 2).annihilator(), Subspace::full(f, 2));
        assert_eq!(Subspace::full(f, 2).annihilator(), Subspace::zero(f, 2));
        assert_eq!(line(f, &[1, 0]).annihilator(), line(f, &[0, 1]));
    }

    #[test]
    fn sum_and_intersection_small_cases() {
        let f = gf(3);
        let a = line(f, &[1, 1]);
        let b = line(f, &[1, 2]);
        assert_eq!(subspace_ops(&a, &a).unwrap(), (a.clone(), a.clone()));
        let (s, i) = subspace_ops(&a, &b).unwrap();
        assert_eq!(s, Subspace::full(f, 2));
        assert_eq!(i, Subspace::zero(f, 2));
        let full = Subspace::full(f, 2);
        assert_eq!(subspace_ops(&a, &full).unwrap(), (full.clone(), a.clone()));
        assert!(subspace_ops(&a, &Subspace::zero(f, 3)).is_err());
    }

    #[test]
    fn enumeration_small_counts() {
        let f = gf(3);
        assert_eq!(enumerate_subspaces(3, 0, f).count(), 1);
        assert_eq!(enumerate_subspaces(2, 1, f).count(), 4);
        assert_eq!(enumerate_subspaces(4, 2, f).count(), 130);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(enumerate_subspaces(2, 3, f).count(), 0);
    }

    #[test]
    fn enumerated_bases_are_canonical() {
        let f = gf(3);
        for s in enumerate_subspaces(4, 2, f) {
            assert_eq!(Subspace::from_rows(s.basis().clone()), s);
        }
    }

    #[test]
    fn reduce_clears_pivots() {
        let f = gf(5);
        let s = line(f, &[0, 1, 3]);
        let r = s.reduce(&VectorFp::new(f, vec![2, 4, 0]));
        assert_eq!(r.coords(), &[2, 0, f.neg(f.mul(4, 3))]);
        assert!(s.contains(&VectorFp::new(f, vec![0, 2, 1])).unwrap());
    }
}
