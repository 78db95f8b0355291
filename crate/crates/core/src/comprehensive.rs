//! Heights and purity in finite abelian p-groups, and per-instance checking
//! of the extension condition (*) on class-2 groups.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bilinear::radical;
use crate::error::{Error, Result};
use crate::fplinalg::{enumerate_subspaces, PrimeField, Subspace, VectorFp};
use crate::groups::{Class2Group, FiniteGroup};

/// Height of an element: finite, or infinite for the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(n) => write!(f, "{n}"),
            Height::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Height::Finite(n) => s.serialize_u32(*n),
            Height::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `⊕ C_{p^{e_i}}` with `e_1 ≥ e_2 ≥ …`; elements are indexed in mixed radix
/// with the first factor least significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianPGroup {
    p: u32,
    exponents: Vec<u32>,
}

const MAX_ABELIAN_ORDER: u64 = 1 << 24;

impl AbelianPGroup {
    /// Exponents are sorted decreasingly and zero exponents dropped.
    pub fn new(p: u32, exponents: &[u32]) -> Result<Self> {
        PrimeField::new(p)?;
        let mut exponents: Vec<u32> = exponents.iter().copied().filter(|&e| e > 0).collect();
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        let total: u32 = exponents.iter().sum();
        if (p as u64).checked_pow(total).is_none_or(|o| o > MAX_ABELIAN_ORDER) {
            return Err(Error::BudgetExceeded {
                required: format!("{p}^{total}"),
                budget: MAX_ABELIAN_ORDER,
            });
        }
        Ok(AbelianPGroup { p, exponents })
    }

    /// Elementary abelian of rank `rank`.
    pub fn elementary(p: u32, rank: usize) -> Result<Self> {
        Self::new(p, &vec![1; rank])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    fn moduli(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents.iter().map(|&e| (self.p as usize).pow(e))
    }

    pub fn order(&self) -> usize {
        self.moduli().product()
    }

    pub fn exponent(&self) -> usize {
        self.moduli().next().unwrap_or(1)
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        self.moduli()
            .map(|m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.exponents.len() {
            return Err(Error::DimensionMismatch {
                expected: self.exponents.len(),
                found: coords.len(),
            });
        }
        let moduli: Vec<usize> = self.moduli().collect();
        Ok(coords
            .iter()
            .zip(&moduli)
            .rev()
            .fold(0, |acc, (&c, &m)| acc * m + c % m))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index(&sum).expect("same rank")
    }

    /// `a` added to itself `m` times.
    pub fn times(&self, a: usize, m: usize) -> usize {
        let c: Vec<usize> = self
            .coords(a)
            .iter()
            .zip(self.moduli())
            .map(|(&x, q)| (x * (m % q)) % q)
            .collect();
        self.index(&c).expect("same rank")
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            for &s in gens {
                let y = self.add(members[i], s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }
}

fn valuation(p: usize, mut c: usize) -> u32 {
    let mut v = 0;
    while c.is_multiple_of(p) {
        c /= p;
        v += 1;
    }
    v
}

/// Largest `n` with `g = p^n · h` for some `h`: the least `p`-adic valuation
/// over the nonzero coordinates.
pub fn height(a: &AbelianPGroup, g: usize) -> Height {
    let p = a.p as usize;
    a.coords(g)
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| valuation(p, c))
        .min()
        .map_or(Height::Infinite, Height::Finite)
}

/// Height of `g` computed inside the subgroup `members` (sorted, closed).
pub fn height_in(a: &AbelianPGroup, members: &[usize], g: usize) -> Height {
    if g == 0 {
        return Height::Infinite;
    }
    let q = a.p as usize;
    let mut n = 0;
    let mut scale = q;
    // g ∈ p^{n+1}B ⇔ g = scale · h for some h ∈ B.
    while scale <= a.exponent() && members.iter().any(|&h| a.times(h, scale) == g) {
        n += 1;
        scale *= q;
    }
    Height::Finite(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightMismatch {
    pub element: usize,
    pub coords: Vec<usize>,
    pub height_in_subgroup: Height,
    pub height_in_group: Height,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub subgroup_order: usize,
    pub holds: bool,
    pub cases_checked: u64,
    pub mismatch: Option<HeightMismatch>,
}

/// Whether the subgroup generated by `gens` computes the same heights as `a`.
pub fn is_pure(a: &AbelianPGroup, gens: &[usize]) -> PurityReport {
    let members = a.subgroup(gens);
    let mismatch = members.iter().find_map(|&g| {
        let (inner, outer) = (height_in(a, &members, g), height(a, g));
        (inner != outer).then(|| HeightMismatch {
            element: g,
            coords: a.coords(g),
            height_in_subgroup: inner,
            height_in_group: outer,
        })
    });
    PurityReport {
        subgroup_order: members.len(),
        holds: mismatch.is_none(),
        cases_checked: members.len() as u64,
        mismatch,
    }
}

/// One instance of (*): generators of `A ≤ G/Z(G)` given by `V`
/// coordinates, their images under `α` as central elements, `w` and `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarInstance {
    pub generators: Vec<Vec<u32>>,
    pub alpha: Vec<Vec<u32>>,
    pub w: Vec<u32>,
    pub r: u32,
}

/// The four clauses of (*) evaluated at one candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarClauses {
    pub pure: bool,
    pub order: bool,
    pub power: bool,
    pub commutators: bool,
}

impl StarClauses {
    pub fn all(&self) -> bool {
        self.pure && self.order && self.power && self.commutators
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarOutcome {
    pub witness: Option<usize>,
    pub witness_coords: Option<Vec<u32>>,
    pub clauses: Option<StarClauses>,
    pub candidates_checked: u64,
}

/// `G/Z(G)` as `GF(p)^m` on the coordinates outside the radical pivots.
struct Quotient {
    rad: Subspace,
    free: Vec<usize>,
    star: AbelianPGroup,
}

impl Quotient {
    fn new(g: &Class2Group) -> Result<Self> {
        let rad = radical(g.structure());
        let pivots = rad.pivots();
        let free: Vec<usize> = (0..g.n()).filter(|j| !pivots.contains(j)).collect();
        let star = AbelianPGroup::elementary(g.p(), free.len())?;
        Ok(Quotient { rad, free, star })
    }

    /// Index in `G*` of the coset of `(v, ·)`.
    fn project(&self, v: &VectorFp) -> usize {
        let reduced = self.rad.reduce(v);
        let coords: Vec<usize> = self.free.iter().map(|&j| reduced.coords()[j] as usize).collect();
        self.star.index(&coords).expect("rank matches")
    }

    /// Lift of a `G*` index to `(v, 0)`.
    fn lift(&self, g: &Class2Group, x: usize) -> usize {
        let mut v = vec![0u32; g.n()];
        for (&j, c) in self.free.iter().zip(self.star.coords(x)) {
            v[j] = c as u32;
        }
        g.lift(&VectorFp::new(g.field(), v)).expect("dimensions agree")
    }
}

/// A validated instance: every element of `A` with its lift and `α` value.
struct Prepared {
    /// `(index in G*, lift in G, α value in G)`.
    a: Vec<(usize, usize, usize)>,
    gens_star: Vec<usize>,
    w: usize,
    r: u32,
}

fn exp_of(g: &Class2Group, xs: impl IntoIterator<Item = usize>) -> u64 {
    let e = g.identity();
    if xs.into_iter().all(|x| x == e) {
        1
    } else {
        g.p() as u64
    }
}

fn prepare(g: &Class2Group, q: &Quotient, inst: &StarInstance) -> Result<Prepared> {
    let f = g.field();
    let (n, d) = (g.n(), g.d());
    let bad = |clause: &str| Error::InvalidInstance(clause.to_string());
    if inst.generators.len() != inst.alpha.len() {
        return Err(bad("each generator of A needs one α image"));
    }
    if inst.generators.len() > 3 {
        return Err(bad("A is limited to three generators"));
    }
    if inst.generators.iter().any(|v| v.len() != n)
        || inst.alpha.iter().any(|a| a.len() != n + d)
        || inst.w.len() != n + d
    {
        return Err(bad("coordinate count"));
    }
    let encode = |c: &[u32]| g.encode(&c.iter().map(|&x| x % g.p()).collect::<Vec<_>>());
    let alpha: Vec<usize> = inst.alpha.iter().map(|c| encode(c)).collect();
    let w = encode(&inst.w);
    let center = g.center_elements();
    if alpha.iter().chain([&w]).any(|x| center.binary_search(x).is_err()) {
        return Err(bad("α(A) ⊆ Z and w ∈ Z"));
    }
    let gen_vectors: Vec<VectorFp> = inst.generators.iter().map(|c| VectorFp::new(f, c.clone())).collect();
    let gens_star: Vec<usize> = gen_vectors.iter().map(|v| q.project(v)).collect();

    // Every combination of generators; α must agree on equal cosets.
    let p = g.p() as usize;
    let k = gen_vectors.len();
    let mut by_coset: Vec<Option<usize>> = vec![None; q.star.order()];
    let mut a = Vec::new();
    for t in 0..p.pow(k as u32) {
        let mut c = t;
        let mut star = 0;
        let mut value = g.identity();
        for i in 0..k {
            let coef = c % p;
            c /= p;
            star = q.star.add(star, q.star.times(gens_star[i], coef));
            value = g.mul(value, g.pow(alpha[i], coef as u64));
        }
        match by_coset[star] {
            Some(prev) if prev != value => return Err(bad("α is well defined on A")),
            Some(_) => {}
            None => {
                by_coset[star] = Some(value);
                a.push((star, q.lift(g, star), value));
            }
        }
    }
    a.sort_unstable();

    let pr = (p as u64).pow(inst.r);
    let exp_alpha = exp_of(g, a.iter().map(|x| x.2));
    let exp_star = q.star.exponent() as u64;
    if !(exp_alpha <= pr && pr <= exp_star) {
        return Err(bad("exp(α(A)) ≤ p^r ≤ exp(G*)"));
    }
    let exp_g = exp_of(g, 0..g.order());
    if pr * exp_of(g, [w]) > exp_g {
        return Err(bad("p^r·|w| ≤ exp(G)"));
    }
    Ok(Prepared {
        a,
        gens_star,
        w,
        r: inst.r,
    })
}

fn clauses_at(g: &Class2Group, q: &Quotient, inst: &Prepared, x: usize) -> StarClauses {
    let star = q.project(&g.v_part(x));
    let order_star = if star == 0 { 1 } else { g.p() as u64 };
    let pr = (g.p() as u64).pow(inst.r);
    let order = order_star == pr;
    let power = g.pow(x, pr) == inst.w;
    let commutators = inst.a.iter().all(|&(_, lift, value)| g.comm(lift, x) == value);
    let pure = {
        let mut gens = inst.gens_star.clone();
        gens.push(star);
        is_pure(&q.star, &gens).holds
    };
    StarClauses {
        pure,
        order,
        power,
        commutators,
    }
}

fn search(g: &Class2Group, q: &Quotient, inst: &Prepared) -> StarOutcome {
    let found = (0..g.order()).find(|&x| {
        let star = q.project(&g.v_part(x));
        let order_star = if star == 0 { 1 } else { g.p() as u64 };
        // Cheap clauses first; the full check below re-verifies all four.
        order_star == (g.p() as u64).pow(inst.r)
            && inst.a.iter().all(|&(_, lift, value)| g.comm(lift, x) == value)
            && clauses_at(g, q, inst, x).all()
    });
    match found {
        Some(x) => StarOutcome {
            witness: Some(x),
            witness_coords: Some(g.describe(x)),
            clauses: Some(clauses_at(g, q, inst, x)),
            candidates_checked: x as u64 + 1,
        },
        None => StarOutcome {
            witness: None,
            witness_coords: None,
            clauses: None,
            candidates_checked: g.order() as u64,
        },
    }
}

/// First `g` in index order satisfying the four clauses of (*), or `None`
/// after sweeping `G`. An instance violating the hypothesis is an error.
pub fn star_witness(g: &Class2Group, inst: &StarInstance) -> Result<StarOutcome> {
    let q = Quotient::new(g)?;
    let prepared = prepare(g, &q, inst)?;
    Ok(search(g, &q, &prepared))
}

/// Default cap on the number of instances a scan evaluates.
pub const DEFAULT_INSTANCE_BUDGET: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarScanReport {
    pub max_rank: usize,
    pub subgroups: u64,
    pub instances: u64,
    pub satisfied: u64,
    pub failed: u64,
    /// Candidate instances skipped because the hypothesis fails.
    pub skipped: u64,
    pub truncated: bool,
    pub first_failure: Option<StarInstance>,
    pub all_satisfied: bool,
}

/// Enumerates pure `A ≤ G*` of rank ≤ `max_rank` (RREF order), homomorphisms
/// `α` (odometer on generator images), then `r` and `w`; instances whose
/// hypothesis fails are counted as skipped.
pub fn star_scan(g: &Class2Group, max_rank: usize, max_instances: u64) -> Result<StarScanReport> {
    if max_rank == 0 || max_instances == 0 {
        return Err(Error::InvalidParameter("bounds must be positive".into()));
    }
    let q = Quotient::new(g)?;
    let m = q.free.len();
    let center = g.center_elements();
    let max_r = u32::from(m > 0);

    let mut prepared: Vec<(StarInstance, Prepared)> = Vec::new();
    let mut subgroups = 0;
    let mut skipped = 0;
    let mut truncated = false;
    'outer: for rank in 0..=max_rank.min(m).min(3) {
        for sub in enumerate_subspaces(m, rank, g.field()) {
            let gens_star: Vec<usize> = sub
                .basis_vectors()
                .iter()
                .map(|v| {
                    let c: Vec<usize> = v.coords().iter().map(|&x| x as usize).collect();
                    q.star.index(&c).expect("rank matches")
                })
                .collect();
            if !is_pure(&q.star, &gens_star).holds {
                continue;
            }
            subgroups += 1;
            let generators: Vec<Vec<u32>> = gens_star
                .iter()
                .map(|&s| g.v_part(q.lift(g, s)).into_coords())
                .collect();
            for h in 0..center.len().pow(rank as u32) {
                let mut c = h;
                let alpha: Vec<Vec<u32>> = (0..rank)
                    .map(|_| {
                        let z = center[c % center.len()];
                        c /= center.len();
                        g.describe(z)
                    })
                    .collect();
                for r in 0..=max_r {
                    for &w in &center {
                        let inst = StarInstance {
                            generators: generators.clone(),
                            alpha: alpha.clone(),
                            w: g.describe(w),
                            r,
                        };
                        match prepare(g, &q, &inst) {
                            Ok(_) if prepared.len() as u64 == max_instances => {
                                truncated = true;
                                break 'outer;
                            }
                            Ok(pr) => prepared.push((inst, pr)),
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
        }
    }

    let outcomes: Vec<bool> = prepared
        .par_iter()
        .map(|(_, pr)| search(g, &q, pr).witness.is_some())
        .collect();
    let instances = outcomes.len() as u64;
    let satisfied = outcomes.iter().filter(|&&b| b).count() as u64;
    let first_failure = outcomes.iter().position(|&b| !b).map(|i| prepared[i].0.clone());
    Ok(StarScanReport {
        max_rank,
        subgroups,
        instances,
        satisfied,
        failed: instances - satisfied,
        skipped,
        truncated,
        all_satisfied: satisfied == instances,
        first_failure,
    })
}
