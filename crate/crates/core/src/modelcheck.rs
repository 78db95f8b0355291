//! Group-language axioms evaluated on finite groups: centralizers, the
//! centre-equals-commutators sentence, σ_k on group elements, and
//! centralizer chains in direct powers.

use rayon::prelude::*;
use serde::Serialize;

use crate::bilinear::{left_map, radical, BilinearStructure};
use crate::error::{Error, Result};
use crate::fplinalg::{Subspace, VectorFp};
use crate::groups::{closure, direct_power, Class2Group, FiniteGroup, TableGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralizerMethod {
    Kernel,
    Scan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerRecord {
    pub element: usize,
    pub descriptor: Vec<u32>,
    pub order: usize,
    pub method: CentralizerMethod,
    /// `{u : β(v, u) = 0}` for a class-2 element `(v, w)`.
    pub kernel: Option<Subspace>,
}

/// Centralizer members by scanning the whole group.
pub fn centralizer_members<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> Vec<usize> {
    (0..g.order()).filter(|&y| g.commutes(x, y)).collect()
}

pub fn centralizer<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> CentralizerRecord {
    CentralizerRecord {
        element: x,
        descriptor: g.describe(x),
        order: centralizer_members(g, x).len(),
        method: CentralizerMethod::Scan,
        kernel: None,
    }
}

fn class2_kernel(g: &Class2Group, x: usize) -> Subspace {
    left_map(g.structure(), &g.v_part(x)).expect("dimensions agree").kernel()
}

/// `C(x) = {(u, w) : β(v_x, u) = 0}`, of order `p^(d + dim ker)`.
pub fn class2_centralizer(g: &Class2Group, x: usize) -> CentralizerRecord {
    let kernel = class2_kernel(g, x);
    let order = (g.p() as usize).pow((g.d() + kernel.dim()) as u32);
    CentralizerRecord {
        element: x,
        descriptor: g.describe(x),
        order,
        method: CentralizerMethod::Kernel,
        kernel: Some(kernel),
    }
}

/// Members of `ker(β(v_x, ·)) × W`, sorted.
pub fn class2_centralizer_members(g: &Class2Group, x: usize) -> Vec<usize> {
    let kernel = class2_kernel(g, x);
    let mut out: Vec<usize> = kernel
        .elements()
        .flat_map(|u| {
            VectorFp::all(g.field(), g.d())
                .map(|w| g.element(&u, &w).expect("dimensions agree"))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out
}

/// Centre by scanning for elements commuting with the generators
/// `(e_i, 0)` and `(0, f_j)`.
fn scanned_center(g: &Class2Group) -> Vec<usize> {
    let p = g.p() as usize;
    let generators: Vec<usize> = (0..g.n() + g.d()).map(|i| p.pow(i as u32)).collect();
    (0..g.order())
        .into_par_iter()
        .filter(|&x| generators.iter().all(|&s| g.commutes(x, s)))
        .collect()
}

/// Above this order commutator values are taken over lifts of `V` only.
const RHO_EXHAUSTIVE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    pub order: usize,
    pub center_order: usize,
    pub commutator_values: usize,
    /// Every element of `G × G` when true, otherwise lifts `(v, 0)` only.
    pub exhaustive_pairs: bool,
    pub pairs_checked: u64,
    pub class_at_most_two: bool,
    pub exponent_p: bool,
    pub cases_checked: u64,
    pub holds: bool,
}

/// The set of commutator values equals the centre, with class ≤ 2 and
/// exponent p.
pub fn rho_check(g: &Class2Group) -> RhoReport {
    let order = g.order();
    let center = scanned_center(g);
    let exhaustive = order <= RHO_EXHAUSTIVE_LIMIT;
    let pool: Vec<usize> = if exhaustive {
        (0..order).collect()
    } else {
        VectorFp::all(g.field(), g.n())
            .map(|v| g.lift(&v).expect("dimensions agree"))
            .collect()
    };
    let hit = pool
        .par_iter()
        .fold(
            || vec![false; order],
            |mut acc, &x| {
                for &y in &pool {
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
        );
    let values: Vec<usize> = (0..order).filter(|&x| hit[x]).collect();
    let class_at_most_two = values.iter().all(|v| center.binary_search(v).is_ok());
    let p = g.p() as u64;
    let exponent_p = (0..order)
        .into_par_iter()
        .all(|x| g.pow(x, p) == g.identity());
    let pairs_checked = (pool.len() as u64).pow(2);
    RhoReport {
        order,
        center_order: center.len(),
        commutator_values: values.len(),
        exhaustive_pairs: exhaustive,
        pairs_checked,
        class_at_most_two,
        exponent_p,
        cases_checked: pairs_checked + order as u64,
        holds: class_at_most_two && exponent_p && values == center,
    }
}

/// Coordinates of `V` outside the pivots of the radical; their unit vectors
/// span a complement of `R`, identified with `G/Z(G)`.
fn complement_coords(g: &Class2Group) -> (Subspace, Vec<usize>) {
    let rad = radical(g.structure());
    let pivots = rad.pivots();
    let free = (0..g.n()).filter(|j| !pivots.contains(j)).collect();
    (rad, free)
}

/// The structure `(G/Z(G), Z(G), commutator)` read off the group law.
///
/// `G/Z` gets the basis of lifts of the complement coordinates; `Z` gets the
/// radical basis (as `(r, 0)`) followed by the unit vectors of `W`.
pub fn structure_of(g: &Class2Group) -> Result<BilinearStructure> {
    let (rad, free) = complement_coords(g);
    if free.is_empty() {
        return Err(Error::NoNonCentral);
    }
    let f = g.field();
    let lifts: Vec<usize> = free
        .iter()
        .map(|&j| g.lift(&VectorFp::unit(f, g.n(), j)).expect("dimensions agree"))
        .collect();
    let rad_pivots = rad.pivots();
    let mut gram = Vec::with_capacity(lifts.len() * lifts.len());
    for &a in &lifts {
        for &b in &lifts {
            let c = g.comm(a, b);
            let v = g.v_part(c);
            // In RREF the coefficient of a basis row is the entry at its pivot.
            let mut coords: Vec<u32> = rad_pivots.iter().map(|&j| v.coords()[j]).collect();
            coords.extend_from_slice(g.w_part(c).coords());
            gram.push(VectorFp::new(f, coords));
        }
    }
    BilinearStructure::new(f, free.len(), rad.dim() + g.d(), gram)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaFailureKind {
    /// Some unreachable target lies in `G'^k`.
    DerivedTarget,
    /// Every target in `G'^k` is reachable; only targets using central
    /// elements outside `G'` fail.
    CentralTarget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCounterexample {
    pub tuple: Vec<usize>,
    pub tuple_coords: Vec<Vec<u32>>,
    pub target: Vec<usize>,
    pub target_coords: Vec<Vec<u32>>,
    pub kind: SigmaFailureKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSigmaVerdict {
    pub k: usize,
    pub holds: bool,
    /// Ordered tuples of coset representatives, up to the first failure.
    pub cases_checked: u64,
    pub counterexample: Option<GroupCounterexample>,
}

const MAX_TARGET_TUPLES: usize = 1 << 24;

struct SigmaTables {
    p: usize,
    dim: usize,
    reps: Vec<usize>,
    /// `comm[i * reps + j]` is the centre index of `[rep_i, rep_j]`.
    comm: Vec<u32>,
    center: Vec<usize>,
}

impl SigmaTables {
    fn add_scaled(&self, a: usize, b: usize, c: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.dim {
            out += ((a % self.p + c * (b % self.p)) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn digits(&self, mut a: usize) -> Vec<u32> {
        (0..self.dim)
            .map(|_| {
                let d = (a % self.p) as u32;
                a /= self.p;
                d
            })
            .collect()
    }

    fn span_with(&self, span: &[bool], g: usize) -> Vec<bool> {
        let mut out = span.to_vec();
        for s in (0..span.len()).filter(|&s| span[s]) {
            for c in 1..self.p {
                out[self.add_scaled(s, g, c)] = true;
            }
        }
        out
    }

    /// Reachable target tuples of `tuple`, as a bitmap over `Z^k`.
    fn reachable(&self, tuple: &[usize]) -> Vec<bool> {
        let z = self.center.len();
        let total = z.pow(tuple.len() as u32);
        let m = self.reps.len();
        let mut hit = vec![false; total];
        for x in 0..m {
            let mut t = 0;
            for &gi in tuple.iter().rev() {
                t = t * z + self.comm[gi * m + x] as usize;
            }
            hit[t] = true;
        }
        hit
    }
}

/// Depth-first sweep of ordered independent tuples extending `prefix`;
/// returns the tuple count visited and the first failing tuple.
/// A tuple of representatives with the targets it reaches.
type Miss = (Vec<usize>, Vec<bool>);

fn sweep_tuples(
    t: &SigmaTables,
    k: usize,
    prefix: &mut Vec<usize>,
    span: &[bool],
    cases: &mut u64,
) -> Option<Miss> {
    if prefix.len() == k {
        *cases += 1;
        let hit = t.reachable(prefix);
        return (!hit.iter().all(|&h| h)).then(|| (prefix.clone(), hit));
    }
    for g in 0..t.reps.len() {
        if span[g] {
            continue;
        }
        let next = t.span_with(span, g);
        prefix.push(g);
        let found = sweep_tuples(t, k, prefix, &next, cases);
        prefix.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// σ_k on the group: for independent `g_1..g_k` modulo `Z(G)` and targets
/// `h_i ∈ Z(G)`, some `x` has `[g_i, x] = h_i`.
///
/// Commutators in class 2 only depend on cosets of `Z(G)`, so the `g_i` and
/// `x` range over lifts of the complement of the radical.
pub fn sigma_on_group(g: &Class2Group, k: usize) -> Result<GroupSigmaVerdict> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (_, free) = complement_coords(g);
    if k > free.len() {
        return Ok(GroupSigmaVerdict {
            k,
            holds: true,
            cases_checked: 0,
            counterexample: None,
        });
    }
    let center = scanned_center(g);
    if center
        .len()
        .checked_pow(k as u32)
        .is_none_or(|t| t > MAX_TARGET_TUPLES)
    {
        return Err(Error::BudgetExceeded {
            required: format!("{}^{k}", center.len()),
            budget: MAX_TARGET_TUPLES as u64,
        });
    }
    let p = g.p() as usize;
    let f = g.field();
    let dim = free.len();
    let reps: Vec<usize> = (0..p.pow(dim as u32))
        .map(|i| {
            let mut v = vec![0u32; g.n()];
            let mut i = i;
            for &j in &free {
                v[j] = (i % p) as u32;
                i /= p;
            }
            g.lift(&VectorFp::new(f, v)).expect("dimensions agree")
        })
        .collect();
    let index_in_center = |c: usize| center.binary_search(&c).expect("class 2 commutators are central") as u32;
    let comm: Vec<u32> = reps
        .par_iter()
        .flat_map_iter(|&a| reps.iter().map(move |&b| index_in_center(g.comm(a, b))))
        .collect();
    let tables = SigmaTables {
        p,
        dim,
        reps,
        comm,
        center,
    };

    let mut zero_span = vec![false; tables.reps.len()];
    zero_span[0] = true;
    let blocks: Vec<(u64, Option<Miss>)> = (1..tables.reps.len())
        .into_par_iter()
        .map(|first| {
            let mut cases = 0;
            let span = tables.span_with(&zero_span, first);
            let mut prefix = vec![first];
            let found = sweep_tuples(&tables, k, &mut prefix, &span, &mut cases);
            (cases, found)
        })
        .collect();
    let mut cases = 0;
    for (count, found) in blocks {
        cases += count;
        if let Some((tuple, hit)) = found {
            let counterexample = describe_failure(g, &tables, &tuple, &hit);
            return Ok(GroupSigmaVerdict {
                k,
                holds: false,
                cases_checked: cases,
                counterexample: Some(counterexample),
            });
        }
    }
    Ok(GroupSigmaVerdict {
        k,
        holds: true,
        cases_checked: cases,
        counterexample: None,
    })
}

fn describe_failure(g: &Class2Group, t: &SigmaTables, tuple: &[usize], hit: &[bool]) -> GroupCounterexample {
    let z = t.center.len();
    let derived_values: Vec<usize> = {
        let mut v: Vec<usize> = t.comm.iter().map(|&c| t.center[c as usize]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let derived = closure(g, &derived_values);
    let decode = |mut target: usize| -> Vec<usize> {
        (0..tuple.len())
            .map(|_| {
                let c = t.center[target % z];
                target /= z;
                c
            })
            .collect()
    };
    let unreachable = || (0..hit.len()).filter(|&i| !hit[i]);
    let (target, kind) = match unreachable().find(|&i| decode(i).iter().all(|&c| derived.contains(c))) {
        Some(i) => (decode(i), SigmaFailureKind::DerivedTarget),
        None => (
            decode(unreachable().next().expect("failing tuple has an unreachable target")),
            SigmaFailureKind::CentralTarget,
        ),
    };
    let elements: Vec<usize> = tuple.iter().map(|&i| t.reps[i]).collect();
    GroupCounterexample {
        tuple_coords: tuple.iter().map(|&i| t.digits(i)).collect(),
        target_coords: target.iter().map(|&c| g.describe(c)).collect(),
        tuple: elements,
        target,
        kind,
    }
}

fn first_non_central(g: &Class2Group) -> Result<usize> {
    let center = scanned_center(g);
    (0..g.order())
        .find(|x| center.binary_search(x).is_err())
        .ok_or(Error::NoNonCentral)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub k: usize,
    pub power_order: usize,
    /// Non-central element of the base group repeated in the leading slots.
    pub base_element: usize,
    pub base_centralizer_order: usize,
    /// `φ_i` as indices in `G^k`, for `i = 1..=k`.
    pub elements: Vec<usize>,
    /// Centralizer orders by scan of `G^k`.
    pub centralizer_orders: Vec<usize>,
    /// `|C_G(x)|^i · |G|^(k−i)`.
    pub formula_orders: Vec<usize>,
    /// `C(φ_{i+1}) ⊊ C(φ_i)` as sets.
    pub strict: Vec<bool>,
    /// In `C(φ_i)` but not in `C(φ_{i+1})`, checked by multiplication.
    pub separating: Vec<usize>,
    pub separating_valid: Vec<bool>,
    pub verified: bool,
}

fn power_element(q: usize, coords: &[usize]) -> usize {
    coords.iter().rev().fold(0, |acc, &c| acc * q + c)
}

/// Nested-support chain `φ_i = (x, …, x, 1, …, 1)` in `G^k` with strictly
/// shrinking centralizers.
pub fn sop_chain_direct_power(g: &Class2Group, k: usize, budget: usize) -> Result<ChainReport> {
    let x = first_non_central(g)?;
    let power = direct_power(g, k, budget)?;
    let q = g.order();
    let e = g.identity();
    let separator = (0..q)
        .find(|&s| !g.commutes(x, s))
        .expect("non-central element has a non-commuting partner");
    let base_centralizer_order = centralizer_members(g, x).len();

    let elements: Vec<usize> = (1..=k)
        .map(|i| {
            let coords: Vec<usize> = (0..k).map(|j| if j < i { x } else { e }).collect();
            power_element(q, &coords)
        })
        .collect();
    let masks: Vec<Vec<bool>> = elements
        .iter()
        .map(|&phi| {
            (0..power.order())
                .into_par_iter()
                .map(|y| power.commutes(phi, y))
                .collect()
        })
        .collect();
    let centralizer_orders = masks.iter().map(|m| m.iter().filter(|&&b| b).count()).collect();
    let formula_orders = (1..=k)
        .map(|i| base_centralizer_order.pow(i as u32) * q.pow((k - i) as u32))
        .collect();
    let strict: Vec<bool> = masks
        .windows(2)
        .map(|w| {
            let subset = w[1].iter().zip(&w[0]).all(|(&b, &a)| !b || a);
            subset && w[1] != w[0]
        })
        .collect();
    let separating: Vec<usize> = (1..k)
        .map(|i| {
            let coords: Vec<usize> = (0..k).map(|j| if j == i { separator } else { e }).collect();
            power_element(q, &coords)
        })
        .collect();
    let separating_valid: Vec<bool> = separating
        .iter()
        .enumerate()
        .map(|(i, &y)| power.commutes(y, elements[i]) && !power.commutes(y, elements[i + 1]))
        .collect();
    let verified = strict.iter().all(|&b| b) && separating_valid.iter().all(|&b| b);
    Ok(ChainReport {
        k,
        power_order: power.order(),
        base_element: x,
        base_centralizer_order,
        elements,
        centralizer_orders,
        formula_orders,
        strict,
        separating,
        separating_valid,
        verified,
    })
}

/// Above this order the maximality replay scans coordinatewise only.
const MAXIMALITY_SCAN_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub k: usize,
    pub power_order: usize,
    pub element: usize,
    /// Base-group index of each coordinate.
    pub coordinates: Vec<usize>,
    pub centralizer_order: usize,
    /// No non-central `y` of `G^k` has `C(y) ⊊ C(element)`.
    pub validated: bool,
    /// Whether the replay scanned `G^k` directly, not only coordinatewise.
    pub scan_validated: bool,
    pub candidates_checked: u64,
}

/// A non-central element of `G^k` whose centralizer is minimal under
/// inclusion, taking the least order and then the least index.
pub fn finite_stage_maximality(g: &Class2Group, k: usize, budget: usize) -> Result<MaximalityReport> {
    first_non_central(g)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let q = g.order();
    let power_order = q
        .checked_pow(k as u32)
        .filter(|&o| o <= budget)
        .ok_or_else(|| Error::BudgetExceeded {
            required: format!("{q}^{k}"),
            budget: budget as u64,
        })?;
    let base_masks: Vec<Vec<bool>> = (0..q)
        .map(|a| (0..q).map(|b| g.commutes(a, b)).collect())
        .collect();
    let base_orders: Vec<usize> = base_masks.iter().map(|m| m.iter().filter(|&&b| b).count()).collect();
    let split = |mut y: usize| -> Vec<usize> {
        (0..k)
            .map(|_| {
                let c = y % q;
                y /= q;
                c
            })
            .collect()
    };
    let order_of = |y: usize| split(y).iter().map(|&c| base_orders[c]).product::<usize>();
    let is_central = |y: usize| order_of(y) == power_order;

    let (element, centralizer_order) = (0..power_order)
        .into_par_iter()
        .filter(|&y| !is_central(y))
        .map(|y| (order_of(y), y))
        .min()
        .map(|(o, y)| (y, o))
        .expect("a non-central element exists");
    let coordinates = split(element);

    // C(y) ⊆ C(x) in a direct product iff it holds in every coordinate.
    let subset = |a: usize, b: usize| base_masks[a].iter().zip(&base_masks[b]).all(|(&u, &v)| !u || v);
    let proper_below = |y: usize| {
        let ys = split(y);
        let inside = ys.iter().zip(&coordinates).all(|(&a, &b)| subset(a, b));
        inside && ys.iter().zip(&coordinates).any(|(&a, &b)| base_masks[a] != base_masks[b])
    };
    let product_ok = (0..power_order)
        .into_par_iter()
        .all(|y| is_central(y) || !proper_below(y));

    let scan_validated = power_order <= MAXIMALITY_SCAN_LIMIT;
    let scan_ok = !scan_validated || {
        let power: TableGroup = direct_power(g, k, budget)?;
        let cx: Vec<bool> = (0..power_order).map(|z| power.commutes(element, z)).collect();
        (0..power_order).into_par_iter().all(|y| {
            let cy: Vec<bool> = (0..power_order).map(|z| power.commutes(y, z)).collect();
            let central = cy.iter().all(|&b| b);
            let proper = cy.iter().zip(&cx).all(|(&u, &v)| !u || v) && cy != cx;
            central || !proper
        })
    };
    Ok(MaximalityReport {
        k,
        power_order,
        element,
        coordinates,
        centralizer_order,
        validated: product_ok && scan_ok,
        scan_validated,
        candidates_checked: power_order as u64,
    })
}
