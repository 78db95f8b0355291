use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::extension::ExtensionField;
use super::table::TableGroup;
use super::{closure, CheckMode, FiniteGroup};
use crate::bilinear::{is_alternating, radical, BilinearStructure};
use crate::error::{check_dim, Error, Result};
use crate::fplinalg::{PrimeField, Subspace, VectorFp};
use crate::rng::Lcg64;

/// Largest coordinate count a class-2 element may have.
const MAX_COORDS: usize = 48;
/// Orders up to which the construction certificate is exhaustive.
const EXHAUSTIVE_CERTIFICATE_LIMIT: usize = 10_000;
/// Orders up to which associativity is checked over all of `G³`.
const FULL_TRIPLE_LIMIT: usize = 243;
const CERTIFICATE_SAMPLES: u64 = 100_000;
const CERTIFICATE_SEED: u64 = 0x5eed;
/// Largest `|V|²` for which the cocycle is tabulated.
const COCYCLE_TABLE_LIMIT: usize = 1 << 20;

/// Nilpotent class-2 exponent-p group on `V × W` with
/// `(v₁,w₁)(v₂,w₂) = (v₁+v₂, w₁+w₂+½β(v₁,v₂))` for an alternating `β`.
///
/// Element indices are base-p numbers whose digits are the `V` coordinates
/// followed by the `W` coordinates, least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class2Group {
    structure: BilinearStructure,
    half: u32,
    order: usize,
    /// `|V|`.
    v_order: usize,
    /// `W` index of `½β(v_a, v_b)` at `a·|V| + b`, for small `V`.
    cocycle: Option<Arc<Vec<u32>>>,
}

impl Class2Group {
    pub fn structure(&self) -> &BilinearStructure {
        &self.structure
    }

    pub fn field(&self) -> PrimeField {
        self.structure.field()
    }

    pub fn p(&self) -> u32 {
        self.structure.field().p()
    }

    /// `dim V`.
    pub fn n(&self) -> usize {
        self.structure.n()
    }

    /// `dim W`.
    pub fn d(&self) -> usize {
        self.structure.d()
    }

    pub fn element(&self, v: &VectorFp, w: &VectorFp) -> Result<usize> {
        check_dim(self.n(), v.dim())?;
        check_dim(self.d(), w.dim())?;
        let mut coords = v.coords().to_vec();
        coords.extend_from_slice(w.coords());
        Ok(self.encode(&coords))
    }

    /// `(v, 0)`.
    pub fn lift(&self, v: &VectorFp) -> Result<usize> {
        self.element(v, &VectorFp::zero(self.field(), self.d()))
    }

    pub fn v_part(&self, x: usize) -> VectorFp {
        let c = self.coords(x);
        VectorFp::new(self.field(), c[..self.n()].to_vec())
    }

    pub fn w_part(&self, x: usize) -> VectorFp {
        let c = self.coords(x);
        VectorFp::new(self.field(), c[self.n()..].to_vec())
    }

    pub fn coords(&self, mut x: usize) -> Vec<u32> {
        let p = self.p() as usize;
        (0..self.n() + self.d())
            .map(|_| {
                let c = (x % p) as u32;
                x /= p;
                c
            })
            .collect()
    }

    pub fn encode(&self, coords: &[u32]) -> usize {
        let p = self.p() as usize;
        coords.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
    }

    /// Digitwise sum of two base-p numbers with `len` digits.
    #[inline]
    fn add_digits(&self, mut a: usize, mut b: usize, len: usize) -> usize {
        let p = self.p() as usize;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..len {
            let s = a % p + b % p;
            out += if s >= p { s - p } else { s } * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    fn decode_into(&self, mut x: usize, out: &mut [u32]) {
        let p = self.p() as usize;
        for o in out.iter_mut() {
            *o = (x % p) as u32;
            x /= p;
        }
    }

    pub fn center_expected(&self) -> Subspace {
        radical(&self.structure)
    }

    /// `Z(G) = radical(β) × W` as a list of element indices.
    pub fn center_elements(&self) -> Vec<usize> {
        let rad = radical(&self.structure);
        let f = self.field();
        let mut out: Vec<usize> = rad
            .elements()
            .flat_map(|r| {
                VectorFp::all(f, self.d())
                    .map(|w| self.element(&r, &w).expect("dimensions agree"))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Dense table when small, otherwise an oracle backed by this group.
    pub fn to_table(&self) -> TableGroup {
        TableGroup::from_class2(self)
    }

    /// Exhaustive (|G| ≤ 10⁴) or sampled check of the defining invariants.
    pub fn certify(&self) -> Certificate {
        certify(self)
    }
}

impl FiniteGroup for Class2Group {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(q) = &self.cocycle {
            let m = self.v_order;
            let (va, wa, vb, wb) = (a % m, a / m, b % m, b / m);
            let v = self.add_digits(va, vb, self.n());
            let w = self.add_digits(self.add_digits(wa, wb, self.d()), q[va * m + vb] as usize, self.d());
            return v + w * m;
        }
        let n = self.n();
        let len = n + self.d();
        let f = self.field();
        let mut x = [0u32; MAX_COORDS];
        let mut y = [0u32; MAX_COORDS];
        let mut q = [0u32; MAX_COORDS];
        self.decode_into(a, &mut x[..len]);
        self.decode_into(b, &mut y[..len]);
        self.structure.beta_raw(&x[..n], &y[..n], &mut q[..self.d()]);
        for i in 0..n {
            x[i] = f.add(x[i], y[i]);
        }
        for c in 0..self.d() {
            let t = f.add(x[n + c], y[n + c]);
            x[n + c] = f.add(t, f.mul(self.half, q[c]));
        }
        self.encode(&x[..len])
    }

    /// `(v, w)⁻¹ = (−v, −w)` since `β(v, v) = 0`.
    fn inv(&self, mut a: usize) -> usize {
        let p = self.p() as usize;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.n() + self.d() {
            let c = a % p;
            out += if c == 0 { 0 } else { p - c } * scale;
            a /= p;
            scale *= p;
        }
        out
    }

    fn describe(&self, a: usize) -> Vec<u32> {
        self.coords(a)
    }
}

/// Builds the class-2 group of an alternating structure over an odd prime.
pub fn group_from_bilinear(s: &BilinearStructure) -> Result<Class2Group> {
    let f = s.field();
    if f.p() == 2 {
        return Err(Error::EvenPrime(2));
    }
    if !is_alternating(s) {
        return Err(Error::NotAlternating);
    }
    let len = s.n() + s.d();
    let order = if len <= MAX_COORDS {
        (f.p() as u128).checked_pow(len as u32)
    } else {
        None
    };
    let order = order
        .filter(|&o| o <= (1u128 << 40))
        .ok_or_else(|| Error::InvalidParameter(format!("group of order {}^{len} is too large to index", f.p())))?
        as usize;
    let v_order = (f.p() as usize).pow(s.n() as u32);
    let half = f.inv(2).expect("p is odd");
    let cocycle = (v_order * v_order <= COCYCLE_TABLE_LIMIT).then(|| {
        let mut x = vec![0u32; s.n()];
        let mut y = vec![0u32; s.n()];
        let mut q = vec![0u32; s.d()];
        let p = f.p() as usize;
        let mut table = Vec::with_capacity(v_order * v_order);
        for a in 0..v_order {
            digits_into(a, p, &mut x);
            for b in 0..v_order {
                digits_into(b, p, &mut y);
                s.beta_raw(&x, &y, &mut q);
                let w = q.iter().rev().fold(0usize, |acc, &c| acc * p + f.mul(half, c) as usize);
                table.push(w as u32);
            }
        }
        Arc::new(table)
    });
    Ok(Class2Group {
        structure: s.clone(),
        half,
        order,
        v_order,
        cocycle,
    })
}

fn digits_into(mut x: usize, p: usize, out: &mut [u32]) {
    for o in out.iter_mut() {
        *o = (x % p) as u32;
        x /= p;
    }
}

/// Extraspecial group of order `p^{2k+1}` and exponent `p`.
pub fn extraspecial(p: u32, k: usize) -> Result<Class2Group> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let f = PrimeField::new(p)?;
    group_from_bilinear(&BilinearStructure::standard_symplectic(f, k)?)
}

/// `V = GF(p^n)^{2m}` with the standard GF(p^n)-symplectic form, viewed as
/// a GF(p)-bilinear map into `W = GF(p^n)`. `V` coordinate `a·n + s` is
/// `x^s` in GF(p^n)-coordinate `a`.
pub fn heisenberg(p: u32, n: usize, m: usize) -> Result<Class2Group> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("n and m must be at least 1".into()));
    }
    let f = PrimeField::new(p)?;
    let ext = ExtensionField::least_irreducible(f, n);
    let dim_v = 2 * m * n;
    let mut gram = vec![VectorFp::zero(f, n); dim_v * dim_v];
    for pair in 0..m {
        let (a, b) = (2 * pair, 2 * pair + 1);
        for s in 0..n {
            for t in 0..n {
                let mono = VectorFp::new(f, ext.monomial(s + t));
                gram[(a * n + s) * dim_v + b * n + t] = mono.clone();
                gram[(b * n + s) * dim_v + a * n + t] = mono.neg();
            }
        }
    }
    group_from_bilinear(&BilinearStructure::new(f, dim_v, n, gram)?)
}

/// Central product of `copies` copies of `g` amalgamated over all of `W`.
pub fn central_product(g: &Class2Group, copies: usize) -> Result<Class2Group> {
    if copies == 0 {
        return Err(Error::InvalidParameter("copies must be at least 1".into()));
    }
    let mut s = g.structure.clone();
    for _ in 1..copies {
        s = s.orthogonal_sum(&g.structure)?;
    }
    group_from_bilinear(&s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub order: usize,
    pub exhaustive: bool,
    /// `full` (all of G³), `lifts` (all triples with W-part zero: W enters
    /// the product additively, so the associator only depends on V) or
    /// `sampled`.
    pub associativity_mode: &'static str,
    pub associativity_cases: u64,
    pub associative: bool,
    pub exponent_p: bool,
    pub commutator_formula: bool,
    pub center_order: usize,
    pub center_matches: bool,
    pub derived_order: usize,
    pub derived_matches: bool,
    pub passed: bool,
}

fn certify(g: &Class2Group) -> Certificate {
    let order = g.order;
    let exhaustive = order <= EXHAUSTIVE_CERTIFICATE_LIMIT;
    let f = g.field();
    let p = g.p() as u64;
    let e = g.identity();

    let (associativity_mode, associativity_cases, associative) = if order <= FULL_TRIPLE_LIMIT {
        let t = g.to_table();
        let ok = (0..order)
            .into_par_iter()
            .all(|a| (0..order).all(|b| {
                let ab = t.mul(a, b);
                (0..order).all(|c| t.mul(ab, c) == t.mul(a, t.mul(b, c)))
            }));
        ("full", (order as u64).pow(3), ok)
    } else if exhaustive {
        let lifts: Vec<usize> = (0..(p as usize).pow(g.n() as u32))
            .map(|i| g.lift(&VectorFp::from_index(f, g.n(), i as u64)).expect("dims"))
            .collect();
        let ok = lifts.par_iter().all(|&a| {
            lifts.iter().all(|&b| {
                let ab = g.mul(a, b);
                lifts.iter().all(|&c| g.mul(ab, c) == g.mul(a, g.mul(b, c)))
            })
        });
        ("lifts", (lifts.len() as u64).pow(3), ok)
    } else {
        let mut rng = Lcg64::new(CERTIFICATE_SEED);
        let ok = (0..CERTIFICATE_SAMPLES).all(|_| {
            let (a, b, c) = (rng.below(order), rng.below(order), rng.below(order));
            g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
        });
        ("sampled", CERTIFICATE_SAMPLES, ok)
    };

    let sample_elements: Vec<usize> = if exhaustive {
        (0..order).collect()
    } else {
        let mut rng = Lcg64::new(CERTIFICATE_SEED ^ 1);
        (0..CERTIFICATE_SAMPLES.min(4096)).map(|_| rng.below(order)).collect()
    };

    let exponent_p = sample_elements.iter().all(|&x| g.pow(x, p) == e);

    let expected_comm = |x: usize, vy: &VectorFp| {
        let w = g.structure.beta(&g.v_part(x), vy).expect("dims");
        g.element(&VectorFp::zero(f, g.n()), &w).expect("dims")
    };
    let commutator_formula = if exhaustive {
        // Group the second argument by its V part: one β evaluation per class.
        let m = g.v_order;
        sample_elements.par_iter().all(|&x| {
            (0..m).all(|vb| {
                let expected = expected_comm(x, &VectorFp::from_index(f, g.n(), vb as u64));
                (0..order / m).all(|w| g.comm(x, vb + w * m) == expected)
            })
        })
    } else {
        sample_elements
            .par_iter()
            .all(|&x| sample_elements.iter().all(|&y| g.comm(x, y) == expected_comm(x, &g.v_part(y))))
    };

    // Center by scan against the generators (e_i, 0) and (0, f_j).
    let generators: Vec<usize> = (0..g.n() + g.d())
        .map(|i| (p as usize).pow(i as u32))
        .collect();
    let expected_center = g.center_elements();
    let center_matches = if exhaustive {
        let scanned: Vec<usize> = (0..order)
            .filter(|&x| generators.iter().all(|&s| g.commutes(x, s)))
            .collect();
        scanned == expected_center
    } else {
        expected_center
            .iter()
            .all(|&z| generators.iter().all(|&s| g.commutes(z, s)))
            && sample_elements.iter().all(|&x| {
                generators.iter().all(|&s| g.commutes(x, s)) == expected_center.binary_search(&x).is_ok()
            })
    };

    // G' from commutator values versus {0} × span(im β). Once the formula
    // holds on every pair, the values are exactly those on lifts of V.
    let values: BTreeSet<usize> = if exhaustive && !commutator_formula {
        (0..order)
            .into_par_iter()
            .flat_map_iter(|x| (0..order).map(move |y| g.comm(x, y)))
            .collect()
    } else if exhaustive {
        let m = g.v_order;
        (0..m)
            .into_par_iter()
            .flat_map_iter(|a| (0..m).map(move |b| g.comm(a, b)))
            .collect()
    } else {
        generators
            .iter()
            .flat_map(|&a| generators.iter().map(move |&b| g.comm(a, b)))
            .collect()
    };
    let derived = closure(g, &values.into_iter().collect::<Vec<_>>());
    let image: Vec<VectorFp> = g.structure.gram_entries().to_vec();
    let span = Subspace::span(f, g.d(), &image).expect("dims");
    let zero_v = VectorFp::zero(f, g.n());
    let mut expected_derived: Vec<usize> = span
        .elements()
        .map(|w| g.element(&zero_v, &w).expect("dims"))
        .collect();
    expected_derived.sort_unstable();
    let derived_matches = derived.members() == expected_derived.as_slice();

    let passed = associative && exponent_p && commutator_formula && center_matches && derived_matches;
    Certificate {
        order,
        exhaustive,
        associativity_mode,
        associativity_cases,
        associative,
        exponent_p,
        commutator_formula,
        center_order: expected_center.len(),
        center_matches,
        derived_order: derived.order(),
        derived_matches,
        passed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorIdentityReport {
    pub exponents: Vec<u64>,
    pub mode: CheckMode,
    /// `[x,y]^n = [x^n, y]` over all checked pairs and exponents.
    pub power_identity: bool,
    /// `[xz, y] = [x,y]^z [z,y]` over all checked triples.
    pub product_identity: bool,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub holds: bool,
}

/// Checks the class-2 commutator identities through the group law alone.
pub fn commutator_power_check(g: &Class2Group, exponents: &[u64], mode: CheckMode) -> CommutatorIdentityReport {
    let t = g.to_table();
    let order = t.order();
    let power_ok = |x: usize, y: usize| {
        let c = t.comm(x, y);
        exponents.iter().all(|&n| t.pow(c, n) == t.comm(t.pow(x, n), y))
    };
    let product_ok = |x: usize, y: usize, z: usize| {
        t.comm(t.mul(x, z), y) == t.mul(t.conj(t.comm(x, y), z), t.comm(z, y))
    };
    let (power_identity, product_identity, pairs, triples) = match mode {
        CheckMode::Exhaustive => {
            let power = (0..order)
                .into_par_iter()
                .all(|x| (0..order).all(|y| power_ok(x, y)));
            let product = (0..order)
                .into_par_iter()
                .all(|x| (0..order).all(|y| (0..order).all(|z| product_ok(x, y, z))));
            (power, product, (order as u64).pow(2), (order as u64).pow(3))
        }
        CheckMode::Sample { count, seed } => {
            let mut rng = Lcg64::new(seed);
            let mut power = true;
            let mut product = true;
            for _ in 0..count {
                let (x, y, z) = (rng.below(order), rng.below(order), rng.below(order));
                power &= power_ok(x, y);
                product &= product_ok(x, y, z);
            }
            (power, product, count, count)
        }
    };
    CommutatorIdentityReport {
        exponents: exponents.to_vec(),
        mode,
        power_identity,
        product_identity,
        pairs_checked: pairs,
        triples_checked: triples,
        holds: power_identity && product_identity,
    }
}
