use std::collections::VecDeque;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{prime_power_base, CheckMode, FiniteGroup};
use crate::error::{Error, Result};
use crate::rng::Lcg64;

/// Subgroup as a sorted member list with a membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Subgroup generated by `gens`, by breadth-first closure under right
/// multiplication by generators (finite groups need no inverses).
pub fn closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    let e = g.identity();
    mask[e] = true;
    let mut gens: Vec<usize> = gens.iter().copied().filter(|&s| s != e).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                queue.push_back(y);
            }
        }
    }
    let members = (0..mask.len()).filter(|&x| mask[x]).collect();
    Subgroup { members, mask }
}

/// `[H, G]` for a subgroup `H`: the closure of `{[h, y] : h ∈ H, y ∈ G}`.
pub fn commutator_subgroup<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Subgroup {
    let order = g.order();
    let mut seen: Vec<usize> = h
        .members()
        .par_iter()
        .fold(
            || vec![false; order],
            |mut acc, &x| {
                for y in 0..order {
                    acc[g.comm(x, y)] = true;
                }
                acc
            },
        )
        .reduce(
            || vec![false; order],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        )
        .into_iter()
        .enumerate()
        .filter_map(|(i, hit)| hit.then_some(i))
        .collect();
    seen.sort_unstable();
    closure(g, &seen)
}

/// Terms `γ₁ ≥ γ₂ ≥ …` ending at the trivial subgroup.
pub fn lower_central_terms<G: FiniteGroup + ?Sized>(g: &G) -> Result<Vec<Subgroup>> {
    let everything: Vec<usize> = (0..g.order()).collect();
    let mut terms = vec![Subgroup {
        mask: vec![true; g.order()],
        members: everything,
    }];
    while !terms.last().expect("nonempty").is_trivial() {
        let next = commutator_subgroup(g, terms.last().expect("nonempty"));
        if next.order() == terms.last().expect("nonempty").order() {
            return Err(Error::NotNilpotent { order: next.order() });
        }
        terms.push(next);
    }
    Ok(terms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub orders: Vec<usize>,
    pub class: usize,
}

pub fn lower_central_series<G: FiniteGroup + ?Sized>(g: &G) -> Result<SeriesReport> {
    let orders: Vec<usize> = lower_central_terms(g)?.iter().map(Subgroup::order).collect();
    Ok(SeriesReport {
        class: orders.len() - 1,
        orders,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub holds: bool,
    pub cases_checked: u64,
    pub failures: u64,
    /// First failing triple in sweep order.
    pub counterexample: Option<[usize; 3]>,
    pub mode: CheckMode,
}

fn hall_witt_holds<G: FiniteGroup + ?Sized>(g: &G, x: usize, y: usize, z: usize) -> bool {
    let term = |a: usize, b: usize, c: usize| g.conj(g.comm(g.comm(a, g.inv(b)), c), b);
    g.mul(g.mul(term(x, y, z), term(y, z, x)), term(z, x, y)) == g.identity()
}

/// Hall–Witt identity `[[x,y⁻¹],z]^y · [[y,z⁻¹],x]^z · [[z,x⁻¹],y]^x = 1`.
pub fn hall_witt_check<G: FiniteGroup + ?Sized>(g: &G, mode: CheckMode) -> IdentityReport {
    let n = g.order();
    let (cases, failures, counterexample) = match mode {
        CheckMode::Exhaustive => {
            let per_x: Vec<(u64, Option<[usize; 3]>)> = (0..n)
                .into_par_iter()
                .map(|x| {
                    let mut count = 0;
                    let mut first = None;
                    for y in 0..n {
                        for z in 0..n {
                            if !hall_witt_holds(g, x, y, z) {
                                count += 1;
                                first.get_or_insert([x, y, z]);
                            }
                        }
                    }
                    (count, first)
                })
                .collect();
            let failures = per_x.iter().map(|r| r.0).sum();
            let first = per_x.iter().find_map(|r| r.1);
            ((n as u64).pow(3), failures, first)
        }
        CheckMode::Sample { count, seed } => {
            let mut rng = Lcg64::new(seed);
            let mut failures = 0;
            let mut first = None;
            for _ in 0..count {
                let (x, y, z) = (rng.below(n), rng.below(n), rng.below(n));
                if !hall_witt_holds(g, x, y, z) {
                    failures += 1;
                    first.get_or_insert([x, y, z]);
                }
            }
            (count, failures, first)
        }
    };
    IdentityReport {
        holds: failures == 0,
        cases_checked: cases,
        failures,
        counterexample,
        mode,
    }
}

fn biguint_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    pub p: u32,
    pub series: SeriesReport,
    pub class: usize,
    /// `p^m = |γ₂ / γ₃|`.
    pub m: u32,
    pub gamma3_order: usize,
    /// `p^(2m³)`.
    #[serde(serialize_with = "biguint_string")]
    pub bound: BigUint,
    pub holds: bool,
}

/// `|γ₃| ≤ p^(2m³)` for a p-group of class at most 3.
pub fn laurent_bound_check<G: FiniteGroup + ?Sized>(g: &G) -> Result<LaurentReport> {
    let (p, _) = prime_power_base(g.order()).ok_or(Error::NotPrimePower(g.order()))?;
    let series = lower_central_series(g)?;
    if series.class > 3 {
        return Err(Error::ClassTooLarge { class: series.class });
    }
    let at = |i: usize| series.orders.get(i).copied().unwrap_or(1);
    let (gamma2, gamma3) = (at(1), at(2));
    let quotient = gamma2 / gamma3;
    let m = prime_power_base(quotient).map_or(0, |(_, e)| e);
    let bound = BigUint::from(p).pow(2 * m.pow(3));
    let holds = BigUint::from(gamma3) <= bound;
    Ok(LaurentReport {
        p,
        class: series.class,
        series,
        m,
        gamma3_order: gamma3,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{extraspecial, ut_group, TableGroup, DEFAULT_TABLE_BUDGET};

    fn cyclic(n: usize) -> TableGroup {
        let t = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        TableGroup::from_table(n, t).unwrap()
    }

    fn symmetric3() -> TableGroup {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |q: [usize; 3]| perms.iter().position(|&r| r == q).unwrap() as u32;
        let mut t = Vec::new();
        for a in perms {
            for b in perms {
                t.push(index([b[a[0]], b[a[1]], b[a[2]]]));
            }
        }
        TableGroup::from_table(6, t).unwrap()
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        let g = cyclic(9);
        assert_eq!(closure(&g, &[]).order(), 1);
        assert_eq!(closure(&g, &[3]).members(), &[0, 3, 6]);
        assert_eq!(closure(&g, &[2]).order(), 9);
    }

    #[test]
    fn series_of_small_groups() {
        let s = lower_central_series(&cyclic(9)).unwrap();
        assert_eq!((s.orders, s.class), (vec![9, 1], 1));
        let e = extraspecial(3, 1).unwrap().to_table();
        let s = lower_central_series(&e).unwrap();
        assert_eq!((s.orders, s.class), (vec![27, 3, 1], 2));
        let u = ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(lower_central_series(&u).unwrap().orders, vec![729, 27, 3, 1]);
        let u = ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(lower_central_series(&u).unwrap().orders, vec![64, 8, 2, 1]);
        assert_eq!(lower_central_series(&ut_group(3, 3, DEFAULT_TABLE_BUDGET).unwrap()).unwrap().class, 2);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        assert!(matches!(
            lower_central_series(&symmetric3()),
            Err(Error::NotNilpotent { order: 3 })
        ));
    }

    #[test]
    fn iterated_commutator_matches() {
        let u = ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap();
        let terms = lower_central_terms(&u).unwrap();
        let again = commutator_subgroup(&u, &terms[1]);
        assert_eq!(again, terms[2]);
    }

    #[test]
    fn hall_witt_on_small_groups() {
        let r = hall_witt_check(&symmetric3(), CheckMode::Exhaustive);
        assert!(r.holds);
        assert_eq!(r.cases_checked, 216);
        let e = extraspecial(3, 1).unwrap().to_table();
        assert!(hall_witt_check(&e, CheckMode::Exhaustive).holds);
    }

    #[test]
    fn laurent_on_unitriangular() {
        let r = laurent_bound_check(&ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap()).unwrap();
        assert_eq!((r.m, r.gamma3_order, r.holds), (2, 3, true));
        assert_eq!(r.bound, BigUint::from(3u32).pow(16));
        let r = laurent_bound_check(&ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap()).unwrap();
        assert_eq!((r.m, r.gamma3_order), (2, 2));
        let e = extraspecial(3, 1).unwrap().to_table();
        let r = laurent_bound_check(&e).unwrap();
        assert_eq!((r.m, r.gamma3_order, r.holds), (1, 1, true));
        assert!(matches!(
            laurent_bound_check(&ut_group(2, 5, DEFAULT_TABLE_BUDGET).unwrap()),
            Err(Error::ClassTooLarge { class: 4 })
        ));
    }
}
