//! Finite groups on indexed elements: the bilinear-presented class-2 groups
//! and table groups (unitriangular groups, direct powers, loaded tables),
//! plus lower central series and identity checks.

mod class2;
mod extension;
mod series;
mod table;

pub use class2::{
    central_product, commutator_power_check, extraspecial, group_from_bilinear, heisenberg,
    Certificate, Class2Group, CommutatorIdentityReport,
};
pub use extension::ExtensionField;
pub use series::{
    closure, commutator_subgroup, hall_witt_check, laurent_bound_check, lower_central_series,
    lower_central_terms, IdentityReport, LaurentReport, SeriesReport, Subgroup,
};
pub use table::{direct_power, ut_group, TableGroup, TableValidation, DEFAULT_TABLE_BUDGET};

use serde::Serialize;

/// How an identity is quantified: every tuple, or a seeded sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// A finite group whose elements are the indices `0..order()`.
pub trait FiniteGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// Human-readable coordinates of an element.
    fn describe(&self, a: usize) -> Vec<u32>;

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `a^b = b⁻¹ a b`.
    fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.commutes(a, b))
    }
}

/// Prime `p` with `order = p^e`, or `None`.
pub fn prime_power_base(order: usize) -> Option<(u32, u32)> {
    if order < 2 {
        return None;
    }
    let mut q = 2usize;
    while q * q <= order && !order.is_multiple_of(q) {
        q += 1;
    }
    if !order.is_multiple_of(q) {
        q = order;
    }
    let mut rest = order;
    let mut e = 0;
    while rest.is_multiple_of(q) {
        rest /= q;
        e += 1;
    }
    (rest == 1).then_some((q as u32, e))
}
