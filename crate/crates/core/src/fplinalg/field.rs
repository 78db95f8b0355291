use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};

/// The prime field GF(p), residues kept in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const MAX_MODULUS: u32 = 1 << 16;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    /// `p^exp` as an exact integer, `None` on overflow.
    pub fn order_pow(self, exp: u32) -> Option<u128> {
        (self.p as u128).checked_pow(exp)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl Serialize for PrimeField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// A coordinate vector over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorFp {
    field: PrimeField,
    coords: Vec<u32>,
}

impl VectorFp {
    /// Builds a vector, reducing every coordinate mod p.
    pub fn new(field: PrimeField, coords: Vec<u32>) -> Self {
        let p = field.p();
        let coords = coords.into_iter().map(|c| c % p).collect();
        VectorFp { field, coords }
    }

    pub fn from_signed(field: PrimeField, coords: &[i64]) -> Self {
        VectorFp {
            field,
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    pub fn zero(field: PrimeField, dim: usize) -> Self {
        VectorFp {
            field,
            coords: vec![0; dim],
        }
    }

    pub fn unit(field: PrimeField, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(field, dim);
        v.coords[i] = 1;
        v
    }

    /// The vector whose coordinates are the base-p digits of `index`,
    /// least significant first.
    pub fn from_index(field: PrimeField, dim: usize, mut index: u64) -> Self {
        let p = field.p() as u64;
        let coords = (0..dim)
            .map(|_| {
                let c = (index % p) as u32;
                index /= p;
                c
            })
            .collect();
        VectorFp { field, coords }
    }

    /// Inverse of [`VectorFp::from_index`].
    pub fn index(&self) -> u64 {
        let p = self.field.p() as u64;
        self.coords.iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &VectorFp) -> Result<VectorFp> {
        check_dim(self.dim(), other.dim())?;
        let f = self.field;
        Ok(VectorFp {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &VectorFp) -> Result<VectorFp> {
        check_dim(self.dim(), other.dim())?;
        let f = self.field;
        Ok(VectorFp {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, a: u32) -> VectorFp {
        let f = self.field;
        let a = a % f.p();
        VectorFp {
            field: f,
            coords: self.coords.iter().map(|&c| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> VectorFp {
        let f = self.field;
        VectorFp {
            field: f,
            coords: self.coords.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    /// Standard pairing `Σ x_i y_i`.
    pub fn dot(&self, other: &VectorFp) -> Result<u32> {
        check_dim(self.dim(), other.dim())?;
        Ok(dot(self.field, &self.coords, &other.coords))
    }

    /// Every vector of GF(p)^dim in index order.
    pub fn all(field: PrimeField, dim: usize) -> impl Iterator<Item = VectorFp> {
        let total = (field.p() as u64).pow(dim as u32);
        (0..total).map(move |i| VectorFp::from_index(field, dim, i))
    }
}

impl fmt::Display for VectorFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for VectorFp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

#[inline]
pub(crate) fn dot(field: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    let p = field.p() as u64;
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc = (acc + x as u64 * y as u64) % p;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_small_values() {
        for bad in [0, 1, 4, 9, 15, 65537, 1 << 20] {
            assert!(PrimeField::new(bad).is_err(), "{bad}");
        }
        for good in [2, 3, 5, 7, 11, 65521] {
            assert_eq!(PrimeField::new(good).unwrap().p(), good);
        }
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        for p in [2, 3, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(f.inv(0), None);
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f = PrimeField::new(5).unwrap();
        for i in 0..125 {
            assert_eq!(VectorFp::from_index(f, 3, i).index(), i);
        }
        assert_eq!(VectorFp::from_index(f, 2, 7).coords(), &[2, 1]);
    }

    #[test]
    fn signed_construction_reduces() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(VectorFp::from_signed(f, &[-1, 4, 0]).coords(), &[2, 1, 0]);
    }
}
