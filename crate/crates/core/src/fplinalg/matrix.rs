use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{dot, PrimeField, VectorFp};
use super::subspace::Subspace;
use crate::error::{check_dim, Error, Result};

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixFp {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        check_dim(rows * cols, entries.len())?;
        let p = field.p();
        Ok(MatrixFp {
            field,
            rows,
            cols,
            entries: entries.into_iter().map(|e| e % p).collect(),
        })
    }

    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.as_ref().len())?;
            entries.extend(r.as_ref().iter().map(|&e| e % field.p()));
        }
        Ok(MatrixFp {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_vectors(field: PrimeField, cols: usize, rows: &[VectorFp]) -> Result<Self> {
        let coords: Vec<&[u32]> = rows.iter().map(|v| v.coords()).collect();
        Self::from_rows(field, cols, &coords)
    }

    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatrixFp {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.entries[r * self.cols + c] = value % self.field.p();
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> VectorFp {
        VectorFp::new(self.field, self.row(r).to_vec())
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = Self::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &VectorFp) -> Result<VectorFp> {
        check_dim(self.cols, x.dim())?;
        let out = (0..self.rows)
            .map(|r| dot(self.field, self.row(r), x.coords()))
            .collect();
        Ok(VectorFp::new(self.field, out))
    }

    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        check_dim(self.cols, other.rows)?;
        let f = self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &MatrixFp) -> Result<MatrixFp> {
        check_dim(self.cols, below.cols)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Ok(MatrixFp {
            field: self.field,
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn stack_all(field: PrimeField, cols: usize, blocks: &[MatrixFp]) -> Result<MatrixFp> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            check_dim(cols, b.cols)?;
            entries.extend_from_slice(&b.entries);
            rows += b.rows;
        }
        Ok(MatrixFp {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn rref(&self) -> (usize, MatrixFp) {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        let mut e = self.entries.clone();
        rref_in_place(self.field, &mut e, self.rows, self.cols).len()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self)
    }

    /// A nonzero `y` with `yᵀ·self = 0`, if the rows are dependent.
    pub fn left_null_vector(&self) -> Option<VectorFp> {
        let k = kernel(&self.transpose());
        if k.dim() == 0 {
            None
        } else {
            Some(k.basis().row_vector(0))
        }
    }
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (i, e) in self.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for MatrixFp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[u32]> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.serialize(s)
    }
}

/// Gauss–Jordan elimination in place; returns the pivot columns. On exit
/// the first `pivots.len()` rows hold the reduced row echelon form and the
/// rest are zero.
pub(crate) fn rref_in_place(
    field: PrimeField,
    e: &mut [u32],
    rows: usize,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| e[i * cols + c] != 0) else {
            continue;
        };
        if src != r {
            for j in 0..cols {
                e.swap(src * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(e[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            e[r * cols + j] = field.mul(e[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = e[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = field.mul(factor, e[r * cols + j]);
                e[i * cols + j] = field.sub(e[i * cols + j], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form with zero rows dropped, together with the rank.
pub fn rref(m: &MatrixFp) -> (usize, MatrixFp) {
    let mut e = m.entries.clone();
    let rank = rref_in_place(m.field, &mut e, m.rows, m.cols).len();
    e.truncate(rank * m.cols);
    (
        rank,
        MatrixFp {
            field: m.field,
            rows: rank,
            cols: m.cols,
            entries: e,
        },
    )
}

/// `{x : m·x = 0}`.
pub fn kernel(m: &MatrixFp) -> Subspace {
    let f = m.field;
    let cols = m.cols;
    let mut e = m.entries.clone();
    let pivots = rref_in_place(f, &mut e, m.rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u32; cols];
        x[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(e[i * cols + free]);
        }
        basis.push(x);
    }
    let basis = MatrixFp::from_rows(f, cols, &basis).expect("kernel rows have width cols");
    Subspace::from_rows(basis)
}

/// Some `x` with `m·x = b`, free variables pinned to zero; `None` when the
/// system is inconsistent.
pub fn solve(m: &MatrixFp, b: &VectorFp) -> Result<Option<VectorFp>> {
    if b.dim() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.dim(),
        });
    }
    let f = m.field;
    let w = m.cols + 1;
    let mut e = Vec::with_capacity(m.rows * w);
    for r in 0..m.rows {
        e.extend_from_slice(m.row(r));
        e.push(b.coords()[r]);
    }
    let pivots = rref_in_place(f, &mut e, m.rows, w);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![0u32; m.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = e[i * w + m.cols];
    }
    Ok(Some(VectorFp::new(f, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_of_zero_matrix_is_empty() {
        let (rank, red) = rref(&MatrixFp::zero(gf(3), 2, 2));
        assert_eq!(rank, 0);
        assert_eq!(red.rows(), 0);
        assert!(red.is_zero());
    }

    #[test]
    fn rref_of_identity() {
        let id = MatrixFp::identity(gf(5), 3);
        assert_eq!(rref(&id), (3, id.clone()));
    }

    #[test]
    fn rref_rank_one_example() {
        let f = gf(3);
        let m = MatrixFp::from_rows(f, 2, &[[1, 2], [2, 4]]).unwrap();
        let (rank, red) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(red, MatrixFp::from_rows(f, 2, &[[1, 2]]).unwrap());
    }

    #[test]
    fn kernel_small_cases() {
        let f = gf(3);
        assert_eq!(kernel(&MatrixFp::zero(f, 2, 2)).dim(), 2);
        assert_eq!(kernel(&MatrixFp::identity(f, 2)).dim(), 0);
        let k = kernel(&MatrixFp::from_rows(f, 2, &[[1, 2]]).unwrap());
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&VectorFp::new(f, vec![1, 1])).unwrap());
    }

    #[test]
    fn solve_small_cases() {
        let f = gf(3);
        let b = VectorFp::new(f, vec![2, 1]);
        assert_eq!(solve(&MatrixFp::identity(f, 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&MatrixFp::zero(f, 2, 2), &b).unwrap(), None);
        let m = MatrixFp::from_rows(f, 2, &[[1, 1], [0, 1]]).unwrap();
        assert_eq!(
            solve(&m, &b).unwrap(),
            Some(VectorFp::new(f, vec![1, 1]))
        );
        let short = VectorFp::zero(f, 3);
        assert!(matches!(
            solve(&m, &short),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn solve_pins_free_variables_to_zero() {
        let f = gf(5);
        let m = MatrixFp::from_rows(f, 3, &[[1, 2, 3]]).unwrap();
        let x = solve(&m, &VectorFp::new(f, vec![4])).unwrap().unwrap();
        assert_eq!(x.coords(), &[4, 0, 0]);
    }

    #[test]
    fn left_null_vector_annihilates_rows() {
        let f = gf(7);
        let m = MatrixFp::from_rows(f, 2, &[[1, 2], [3, 6], [0, 1]]).unwrap();
        let y = m.left_null_vector().unwrap();
        let yt = MatrixFp::from_rows(f, 3, &[y.coords()]).unwrap();
        assert!(yt.mul(&m).unwrap().is_zero());
        assert!(MatrixFp::identity(f, 3).left_null_vector().is_none());
    }
}
