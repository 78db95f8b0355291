use serde::Serialize;

use super::class2::Class2Group;
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::fplinalg::PrimeField;
use crate::rng::Lcg64;

/// Default cap on the number of elements of a table group.
pub const DEFAULT_TABLE_BUDGET: usize = 1_000_000;
/// Groups up to this order get a materialised multiplication table.
const DENSE_LIMIT: usize = 1024;
const ASSOCIATIVITY_EXHAUSTIVE_LIMIT: usize = 1000;
const ASSOCIATIVITY_SAMPLES: u64 = 100_000;
const ASSOCIATIVITY_SEED: u64 = 1;

#[derive(Clone, Debug)]
enum Mult {
    Dense(Vec<u32>),
    Unitriangular { field: PrimeField, dim: usize },
    Class2(Box<Class2Group>),
    Power { base: Box<TableGroup>, k: usize },
}

/// Finite group with elements `0..order`, an identity index, an inverse
/// table and a multiplication oracle (a dense table for small groups).
#[derive(Clone, Debug)]
pub struct TableGroup {
    order: usize,
    identity: usize,
    inverse: Vec<u32>,
    mult: Mult,
}

impl TableGroup {
    /// Loads a Cayley table given row-major. Entries must be in range and an
    /// identity and two-sided inverses must exist; associativity is left to
    /// [`TableGroup::validate`] so that corrupted tables can be examined.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table of order {order} needs {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&e| e as usize >= order) {
            return Err(Error::InvalidParameter(format!("entry {bad} out of range")));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidParameter("table has no identity".into()))?;
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .map(|b| b as u32)
                    .ok_or_else(|| Error::InvalidParameter(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableGroup {
            order,
            identity,
            inverse,
            mult: Mult::Dense(table),
        })
    }

    pub(crate) fn from_class2(g: &Class2Group) -> Self {
        let order = g.order();
        let inverse = (0..order).map(|a| g.inv(a) as u32).collect();
        let t = TableGroup {
            order,
            identity: g.identity(),
            inverse,
            mult: Mult::Class2(Box::new(g.clone())),
        };
        t.densified()
    }

    fn densified(self) -> Self {
        if self.order > DENSE_LIMIT || matches!(self.mult, Mult::Dense(_)) {
            return self;
        }
        let table = self.cayley_table();
        TableGroup {
            mult: Mult::Dense(table),
            ..self
        }
    }

    fn cayley_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b) as u32);
            }
        }
        table
    }

    /// Row-major Cayley table, materialised on demand.
    pub fn table(&self) -> Vec<u32> {
        match &self.mult {
            Mult::Dense(t) => t.clone(),
            _ => self.cayley_table(),
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.mult, Mult::Dense(_))
    }

    /// Identity and inverse laws exhaustively; associativity exhaustively up
    /// to order 1000, otherwise on seeded samples.
    pub fn validate(&self) -> TableValidation {
        let n = self.order;
        let e = self.identity;
        let identity_law = (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x);
        let inverse_law = (0..n).all(|x| {
            let y = self.inv(x);
            self.mul(x, y) == e && self.mul(y, x) == e
        });
        let (exhaustive, cases, associative) = if n <= ASSOCIATIVITY_EXHAUSTIVE_LIMIT {
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            });
            (true, (n as u64).pow(3), ok)
        } else {
            let mut rng = Lcg64::new(ASSOCIATIVITY_SEED);
            let ok = (0..ASSOCIATIVITY_SAMPLES).all(|_| {
                let (a, b, c) = (rng.below(n), rng.below(n), rng.below(n));
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            });
            (false, ASSOCIATIVITY_SAMPLES, ok)
        };
        TableValidation {
            order: n,
            identity_law,
            inverse_law,
            associativity_exhaustive: exhaustive,
            associativity_cases: cases,
            associative,
            passed: identity_law && inverse_law && associative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableValidation {
    pub order: usize,
    pub identity_law: bool,
    pub inverse_law: bool,
    pub associativity_exhaustive: bool,
    pub associativity_cases: u64,
    pub associative: bool,
    pub passed: bool,
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mult {
            Mult::Dense(t) => t[a * self.order + b] as usize,
            Mult::Unitriangular { field, dim } => ut_mul(*field, *dim, a, b),
            Mult::Class2(g) => g.mul(a, b),
            Mult::Power { base, k } => {
                let q = base.order;
                let (mut x, mut y) = (a, b);
                let mut out = 0;
                let mut scale = 1;
                for _ in 0..*k {
                    out += base.mul(x % q, y % q) * scale;
                    x /= q;
                    y /= q;
                    scale *= q;
                }
                out
            }
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn describe(&self, a: usize) -> Vec<u32> {
        match &self.mult {
            Mult::Dense(_) => vec![a as u32],
            Mult::Unitriangular { field, dim } => ut_entries(*field, *dim, a),
            Mult::Class2(g) => g.describe(a),
            Mult::Power { base, k } => {
                let q = base.order;
                let mut x = a;
                let mut out = Vec::new();
                for _ in 0..*k {
                    out.extend(base.describe(x % q));
                    x /= q;
                }
                out
            }
        }
    }
}

fn ut_cells(dim: usize) -> usize {
    dim * (dim - 1) / 2
}

/// Strictly-upper entries in row-major order, least significant first.
fn ut_entries(field: PrimeField, dim: usize, mut a: usize) -> Vec<u32> {
    let p = field.p() as usize;
    (0..ut_cells(dim))
        .map(|_| {
            let c = (a % p) as u32;
            a /= p;
            c
        })
        .collect()
}

fn ut_encode(field: PrimeField, entries: &[u32]) -> usize {
    let p = field.p() as usize;
    entries.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
}

fn ut_matrix(field: PrimeField, dim: usize, a: usize) -> Vec<u32> {
    let mut m = vec![0u32; dim * dim];
    let entries = ut_entries(field, dim, a);
    let mut it = entries.into_iter();
    for i in 0..dim {
        m[i * dim + i] = 1;
        for j in i + 1..dim {
            m[i * dim + j] = it.next().expect("cell count");
        }
    }
    m
}

fn ut_flatten(field: PrimeField, dim: usize, m: &[u32]) -> usize {
    let mut entries = Vec::with_capacity(ut_cells(dim));
    for i in 0..dim {
        for j in i + 1..dim {
            entries.push(m[i * dim + j]);
        }
    }
    ut_encode(field, &entries)
}

fn ut_mul(field: PrimeField, dim: usize, a: usize, b: usize) -> usize {
    let x = ut_matrix(field, dim, a);
    let y = ut_matrix(field, dim, b);
    let mut z = vec![0u32; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let mut acc = 0;
            for k in i..=j {
                acc = field.add(acc, field.mul(x[i * dim + k], y[k * dim + j]));
            }
            z[i * dim + j] = acc;
        }
    }
    ut_flatten(field, dim, &z)
}

fn ut_inv(field: PrimeField, dim: usize, a: usize) -> usize {
    // Back substitution for x·y = I along increasing superdiagonals.
    let x = ut_matrix(field, dim, a);
    let mut y = vec![0u32; dim * dim];
    for i in 0..dim {
        y[i * dim + i] = 1;
    }
    for gap in 1..dim {
        for i in 0..dim - gap {
            let j = i + gap;
            let mut acc = x[i * dim + j];
            for k in i + 1..j {
                acc = field.add(acc, field.mul(x[i * dim + k], y[k * dim + j]));
            }
            y[i * dim + j] = field.neg(acc);
        }
    }
    ut_flatten(field, dim, &y)
}

/// Upper unitriangular `dim × dim` matrices over GF(p).
pub fn ut_group(p: u32, dim: usize, budget: usize) -> Result<TableGroup> {
    let field = PrimeField::new(p)?;
    if dim < 2 {
        return Err(Error::InvalidParameter("unitriangular groups need dim ≥ 2".into()));
    }
    let cells = ut_cells(dim) as u32;
    let order = (p as u128)
        .checked_pow(cells)
        .filter(|&o| o <= budget as u128)
        .ok_or_else(|| Error::BudgetExceeded {
            required: format!("{p}^{cells}"),
            budget: budget as u64,
        })? as usize;
    let inverse = (0..order).map(|a| ut_inv(field, dim, a) as u32).collect();
    Ok(TableGroup {
        order,
        identity: 0,
        inverse,
        mult: Mult::Unitriangular { field, dim },
    }
    .densified())
}

/// `g^k` with componentwise multiplication; coordinate 0 is least
/// significant in the element index.
pub fn direct_power(g: &Class2Group, k: usize, budget: usize) -> Result<TableGroup> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let q = g.order();
    let order = (q as u128)
        .checked_pow(k as u32)
        .filter(|&o| o <= budget as u128)
        .ok_or_else(|| Error::BudgetExceeded {
            required: format!("{q}^{k}"),
            budget: budget as u64,
        })? as usize;
    let base = g.to_table();
    let inverse = (0..order)
        .map(|a| {
            let mut x = a;
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..k {
                out += base.inv(x % q) * scale;
                x /= q;
                scale *= q;
            }
            out as u32
        })
        .collect();
    Ok(TableGroup {
        order,
        identity: 0,
        inverse,
        mult: Mult::Power {
            base: Box::new(base),
            k,
        },
    }
    .densified())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::extraspecial;

    #[test]
    fn unitriangular_orders() {
        assert_eq!(ut_group(3, 3, DEFAULT_TABLE_BUDGET).unwrap().order(), 27);
        assert_eq!(ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap().order(), 64);
        assert_eq!(ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap().order(), 729);
        assert!(matches!(
            ut_group(7, 5, DEFAULT_TABLE_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(ut_group(3, 1, DEFAULT_TABLE_BUDGET).is_err());
    }

    #[test]
    fn unitriangular_tables_validate() {
        for (p, dim) in [(2, 3), (3, 3), (2, 4)] {
            let g = ut_group(p, dim, DEFAULT_TABLE_BUDGET).unwrap();
            assert!(g.validate().passed);
        }
    }

    #[test]
    fn ut_multiplication_matches_matrix_product() {
        let f = PrimeField::new(5).unwrap();
        // [[1,a,b],[0,1,c],[0,0,1]] entries (a,b,c) = (1,2,3) and (4,0,1)
        let x = ut_encode(f, &[1, 2, 3]);
        let y = ut_encode(f, &[4, 0, 1]);
        // a = 1+4, b = 2+0+1*1, c = 3+1
        assert_eq!(ut_entries(f, 3, ut_mul(f, 3, x, y)), vec![0, 3, 4]);
        assert_eq!(ut_mul(f, 3, x, ut_inv(f, 3, x)), 0);
    }

    #[test]
    fn direct_power_orders() {
        let g = extraspecial(3, 1).unwrap();
        let one = direct_power(&g, 1, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(one.table(), g.to_table().table());
        let two = direct_power(&g, 2, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(two.order(), 729);
        let centre = (0..729).filter(|&x| two.is_central(x)).count();
        assert_eq!(centre, 9);
        assert!(direct_power(&g, 5, DEFAULT_TABLE_BUDGET).is_err());
    }

    #[test]
    fn loaded_tables_need_identity_and_inverses() {
        // Z/3 as a table.
        let t = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        let g = TableGroup::from_table(3, t).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 2);
        assert!(TableGroup::from_table(2, vec![1, 1, 1, 1]).is_err());
        assert!(TableGroup::from_table(2, vec![0, 1, 1]).is_err());
        assert!(TableGroup::from_table(2, vec![0, 1, 1, 5]).is_err());
    }
}
