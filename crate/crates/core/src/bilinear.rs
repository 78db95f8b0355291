//! Two-sorted structures `(V, W, β)` with `β: V × V → W` bilinear, and the
//! evaluators for the extension axioms ψ and σ_k over them.

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::fplinalg::{enumerate_subspaces, gaussian_binomial, MatrixFp, PrimeField, Subspace, VectorFp};

/// Default cap on the number of maps `lemma_bil_exhaust` may enumerate.
pub const DEFAULT_MAP_BUDGET: u64 = 10_000_000;

/// `β` stored by its structure constants `gram[i][j] = β(e_i, e_j) ∈ W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearStructure {
    field: PrimeField,
    n: usize,
    d: usize,
    gram: Vec<VectorFp>,
}

impl BilinearStructure {
    pub fn new(field: PrimeField, n: usize, d: usize, gram: Vec<VectorFp>) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::EvenPrime(2));
        }
        if n == 0 || d == 0 {
            return Err(Error::InvalidParameter(format!(
                "dimensions must be positive (n = {n}, d = {d})"
            )));
        }
        check_dim(n * n, gram.len())?;
        for g in &gram {
            check_dim(d, g.dim())?;
            if g.field() != field {
                return Err(Error::InvalidParameter("gram entry over another field".into()));
            }
        }
        Ok(BilinearStructure { field, n, d, gram })
    }

    pub fn zero(field: PrimeField, n: usize, d: usize) -> Result<Self> {
        Self::new(field, n, d, vec![VectorFp::zero(field, d); n * n])
    }

    /// The standard symplectic form on GF(p)^{2k}: `β(e_{2i}, e_{2i+1}) = 1`,
    /// `β(e_{2i+1}, e_{2i}) = -1`, all other constants zero; `W = GF(p)`.
    pub fn standard_symplectic(field: PrimeField, k: usize) -> Result<Self> {
        let n = 2 * k;
        let mut s = Self::zero(field, n, 1)?;
        for i in 0..k {
            s.gram[(2 * i) * n + 2 * i + 1] = VectorFp::new(field, vec![1]);
            s.gram[(2 * i + 1) * n + 2 * i] = VectorFp::new(field, vec![field.neg(1)]);
        }
        Ok(s)
    }

    /// The map with odometer index `index`: base-p digits fill the gram
    /// entries row-major, least significant coordinate first.
    pub fn from_map_index(field: PrimeField, n: usize, d: usize, index: u64) -> Result<Self> {
        let flat = VectorFp::from_index(field, n * n * d, index);
        let gram = flat
            .coords()
            .chunks(d)
            .map(|c| VectorFp::new(field, c.to_vec()))
            .collect();
        Self::new(field, n, d, gram)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `dim V`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim W`.
    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn gram(&self, i: usize, j: usize) -> &VectorFp {
        &self.gram[i * self.n + j]
    }

    pub fn gram_entries(&self) -> &[VectorFp] {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        self.gram.iter().all(VectorFp::is_zero)
    }

    /// Orthogonal sum over a shared `W`: block-diagonal structure constants.
    pub fn orthogonal_sum(&self, other: &BilinearStructure) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::InvalidParameter("orthogonal sum over different fields".into()));
        }
        check_dim(self.d, other.d)?;
        let n = self.n + other.n;
        let mut out = Self::zero(self.field, n, self.d)?;
        for i in 0..self.n {
            for j in 0..self.n {
                out.gram[i * n + j] = self.gram(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.gram[(self.n + i) * n + self.n + j] = other.gram(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn beta(&self, v1: &VectorFp, v2: &VectorFp) -> Result<VectorFp> {
        beta_eval(self, v1, v2)
    }

    /// Raw-coordinate β used on hot paths; no dimension checks.
    pub(crate) fn beta_raw(&self, v1: &[u32], v2: &[u32], out: &mut [u32]) {
        let f = self.field;
        out.iter_mut().for_each(|o| *o = 0);
        for (i, &a) in v1.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v2.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &g) in out.iter_mut().zip(self.gram[i * self.n + j].coords()) {
                    *o = f.add(*o, f.mul(ab, g));
                }
            }
        }
    }
}

/// `β(v1, v2)`, the bilinear extension of the structure constants.
pub fn beta_eval(s: &BilinearStructure, v1: &VectorFp, v2: &VectorFp) -> Result<VectorFp> {
    check_dim(s.n, v1.dim())?;
    check_dim(s.n, v2.dim())?;
    let mut out = vec![0; s.d];
    s.beta_raw(v1.coords(), v2.coords(), &mut out);
    Ok(VectorFp::new(s.field, out))
}

/// The `d × n` matrix of `z ↦ β(v, z)`.
pub fn left_map(s: &BilinearStructure, v: &VectorFp) -> Result<MatrixFp> {
    check_dim(s.n, v.dim())?;
    let f = s.field;
    let mut m = MatrixFp::zero(f, s.d, s.n);
    for (i, &a) in v.coords().iter().enumerate() {
        if a == 0 {
            continue;
        }
        for j in 0..s.n {
            for (c, &g) in s.gram(i, j).coords().iter().enumerate() {
                let cur = m.get(c, j);
                m.set(c, j, f.add(cur, f.mul(a, g)));
            }
        }
    }
    Ok(m)
}

/// The `d × n` matrix of `z ↦ β(z, v)`.
pub fn right_map(s: &BilinearStructure, v: &VectorFp) -> Result<MatrixFp> {
    check_dim(s.n, v.dim())?;
    let f = s.field;
    let mut m = MatrixFp::zero(f, s.d, s.n);
    for (j, &a) in v.coords().iter().enumerate() {
        if a == 0 {
            continue;
        }
        for i in 0..s.n {
            for (c, &g) in s.gram(i, j).coords().iter().enumerate() {
                let cur = m.get(c, i);
                m.set(c, i, f.add(cur, f.mul(a, g)));
            }
        }
    }
    Ok(m)
}

pub fn is_alternating(s: &BilinearStructure) -> bool {
    (0..s.n).all(|i| s.gram(i, i).is_zero())
        && (0..s.n).all(|i| {
            (i + 1..s.n).all(|j| {
                s.gram(i, j)
                    .add(s.gram(j, i))
                    .map(|v| v.is_zero())
                    .unwrap_or(false)
            })
        })
}

/// `{v : β(v, ·) = 0 and β(·, v) = 0}`.
pub fn radical(s: &BilinearStructure) -> Subspace {
    // Row (j, c) of the first block is v ↦ β(v, e_j)_c, the second block is
    // v ↦ β(e_j, v)_c.
    let f = s.field;
    let mut rows = Vec::with_capacity(2 * s.n * s.d);
    for j in 0..s.n {
        for c in 0..s.d {
            rows.push((0..s.n).map(|i| s.gram(i, j).coords()[c]).collect::<Vec<_>>());
            rows.push((0..s.n).map(|i| s.gram(j, i).coords()[c]).collect::<Vec<_>>());
        }
    }
    let m = MatrixFp::from_rows(f, s.n, &rows).expect("rows have width n");
    m.kernel()
}

/// A failing instance of an extension axiom: the quantified tuple of `V`
/// and one target tuple in `W` that no `z` reaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub tuple: Vec<VectorFp>,
    pub target: Vec<VectorFp>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub cases_checked: u64,
}

impl AxiomVerdict {
    fn holds(cases_checked: u64) -> Self {
        AxiomVerdict {
            holds: true,
            counterexample: None,
            cases_checked,
        }
    }
}

/// The `k·d × n` matrix of `z ↦ (β(v_1, z), …, β(v_k, z))`.
pub fn stacked_left_map(s: &BilinearStructure, tuple: &[VectorFp]) -> Result<MatrixFp> {
    let blocks = tuple
        .iter()
        .map(|v| left_map(s, v))
        .collect::<Result<Vec<_>>>()?;
    MatrixFp::stack_all(s.field, s.n, &blocks)
}

/// If the stacked map of `tuple` is not onto `W^k`, a target outside its
/// image: the unit vector at the first nonzero coordinate of a left null
/// vector.
fn unreachable_target(s: &BilinearStructure, tuple: &[VectorFp], stacked: &MatrixFp) -> Option<Counterexample> {
    let y = stacked.left_null_vector()?;
    let j = y.coords().iter().position(|&c| c != 0)?;
    let flat = VectorFp::unit(s.field, stacked.rows(), j);
    let target = flat
        .coords()
        .chunks(s.d)
        .map(|c| VectorFp::new(s.field, c.to_vec()))
        .collect();
    Some(Counterexample {
        tuple: tuple.to_vec(),
        target,
    })
}

fn psi_sweep(s: &BilinearStructure) -> AxiomVerdict {
    let f = s.field;
    let total = (f.p() as u64).pow(s.n as u32);
    let mut cases = 0u64;
    for i1 in 1..total {
        let v1 = VectorFp::from_index(f, s.n, i1);
        for i2 in 1..total {
            let v2 = VectorFp::from_index(f, s.n, i2);
            if crate::fplinalg::rank_of_rows(f, s.n, &[v1.coords(), v2.coords()]) < 2 {
                continue;
            }
            cases += 1;
            let pair = [v1.clone(), v2];
            let stacked = stacked_left_map(s, &pair).expect("dimensions agree");
            if stacked.rank() < 2 * s.d {
                return AxiomVerdict {
                    holds: false,
                    counterexample: unreachable_target(s, &pair, &stacked),
                    cases_checked: cases,
                };
            }
        }
    }
    AxiomVerdict::holds(cases)
}

/// ψ: every linearly independent pair `v_1, v_2` and every `(w_1, w_2) ∈ W²`
/// admit `z` with `β(v_i, z) = w_i`. Quantifies over all ordered
/// independent pairs in index order and stops at the first failure.
pub fn psi_check(s: &BilinearStructure) -> Result<AxiomVerdict> {
    if s.n < 2 {
        return Err(Error::PsiNeedsPlane);
    }
    Ok(psi_sweep(s))
}

/// σ_k evaluated with one RREF basis per `k`-dimensional subspace of `V`.
///
/// A change of basis of the tuple multiplies the stacked map on the left by
/// an invertible matrix, so surjectivity only depends on the span.
pub fn sigma_check(s: &BilinearStructure, k: usize) -> AxiomVerdict {
    if k > s.n {
        return AxiomVerdict::holds(0);
    }
    let mut cases = 0;
    for sub in enumerate_subspaces(s.n, k, s.field) {
        cases += 1;
        let tuple = sub.basis_vectors();
        let stacked = stacked_left_map(s, &tuple).expect("dimensions agree");
        if stacked.rank() < k * s.d {
            return AxiomVerdict {
                holds: false,
                counterexample: unreachable_target(s, &tuple, &stacked),
                cases_checked: cases,
            };
        }
    }
    AxiomVerdict::holds(cases)
}

/// Exact non-negative rational, serialised as `"num/den"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(pub Ratio<u128>);

impl Fraction {
    pub fn new(num: u128, den: u128) -> Self {
        Fraction(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        Fraction(Ratio::from_integer(0))
    }

    pub fn numer(&self) -> u128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u128 {
        *self.0.denom()
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureDensity {
    pub k: usize,
    pub subspaces: u128,
    pub failing_subspaces: u128,
    /// Failing `k`-subspaces over all `k`-subspaces of `V`.
    pub failing_subspace_fraction: Fraction,
    /// Unreachable targets in `W^k`, averaged over the failing subspaces.
    pub unreachable_target_fraction: Fraction,
}

/// How sparsely σ_k fails: exact fractions over the `k`-subspaces of `V`.
pub fn sigma_failure_density(s: &BilinearStructure, k: usize) -> Result<FailureDensity> {
    if k > s.n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds dim V = {}", s.n)));
    }
    let p = s.field.p() as u128;
    let exp = (k * s.d) as u32;
    let targets = p
        .checked_pow(exp)
        .ok_or_else(|| Error::InvalidParameter("|W|^k overflows".into()))?;
    let subspaces: Vec<Subspace> = enumerate_subspaces(s.n, k, s.field).collect();
    let (failing, unreachable) = subspaces
        .par_iter()
        .map(|sub| {
            let stacked = stacked_left_map(s, &sub.basis_vectors()).expect("dimensions agree");
            let rank = stacked.rank() as u32;
            if rank < exp {
                (1u128, targets - p.pow(rank))
            } else {
                (0, 0)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let total = subspaces.len() as u128;
    debug_assert_eq!(total, gaussian_binomial(s.n as u32, k as u32, p as u64));
    Ok(FailureDensity {
        k,
        subspaces: total,
        failing_subspaces: failing,
        failing_subspace_fraction: Fraction::new(failing, total),
        unreachable_target_fraction: if failing == 0 {
            Fraction::zero()
        } else {
            Fraction::new(unreachable, failing * targets)
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustReport {
    pub p: u32,
    pub n: usize,
    pub d: usize,
    pub maps_checked: u64,
    pub satisfying_count: u64,
    /// Odometer index of the first ψ-satisfying map, if any.
    pub first_satisfying_index: Option<u64>,
    /// `n ≥ 2` and `d ≥ 2`: the range where no map may satisfy ψ.
    pub hypothesis_applies: bool,
    /// A satisfying map inside the hypothesis range.
    pub refutation: bool,
}

fn map_count(p: u32, n: usize, d: usize) -> BigUint {
    BigUint::from(p).pow((d * n * n) as u32)
}

/// Enumerates every bilinear map `GF(p)^n × GF(p)^n → GF(p)^d` and counts
/// those satisfying ψ. For `n = 1` ψ holds vacuously.
pub fn lemma_bil_exhaust(p: u32, n: usize, d: usize, budget: u64) -> Result<ExhaustReport> {
    let field = PrimeField::new(p)?;
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter("n and d must be positive".into()));
    }
    let required = map_count(p, n, d);
    let total = match u64::try_from(&required) {
        Ok(t) if t <= budget => t,
        _ => {
            return Err(Error::BudgetExceeded {
                required: required.to_string(),
                budget,
            })
        }
    };
    let (count, first) = (0..total)
        .into_par_iter()
        .filter(|&i| {
            let s = BilinearStructure::from_map_index(field, n, d, i).expect("valid parameters");
            n < 2 || psi_sweep(&s).holds
        })
        .map(|i| (1u64, i))
        .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
    let hypothesis_applies = n >= 2 && d >= 2;
    Ok(ExhaustReport {
        p,
        n,
        d,
        maps_checked: total,
        satisfying_count: count,
        first_satisfying_index: (count > 0).then_some(first),
        hypothesis_applies,
        refutation: hypothesis_applies && count > 0,
    })
}

fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingBound {
    pub p: u32,
    pub n: usize,
    pub d: usize,
    /// Number of lines of `V`, hence of kernels `K_v` up to scaling.
    #[serde(serialize_with = "serialize_big")]
    pub family_size: BigUint,
    /// Nonzero vectors needed by `family_size` pairwise-trivially-meeting
    /// `d`-subspaces of the dual.
    #[serde(serialize_with = "serialize_big")]
    pub vectors_required: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub vectors_available: BigUint,
    pub packing_possible: bool,
}

/// Vector count behind the annihilator argument: the annihilators of the
/// kernels would be `(p^n-1)/(p-1)` subspaces of dimension `d` in an
/// `n`-dimensional dual meeting pairwise in zero.
pub fn counting_bound(p: u32, n: usize, d: usize) -> Result<CountingBound> {
    PrimeField::new(p)?;
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "counting bound needs n ≥ 2 and d ≥ 1 (n = {n}, d = {d})"
        )));
    }
    let one = BigUint::from(1u32);
    let pb = BigUint::from(p);
    let pn = pb.pow(n as u32);
    let family_size = (&pn - &one) / (&pb - &one);
    let per_subspace = pb.pow(d as u32) - &one;
    let vectors_required = &family_size * per_subspace;
    let vectors_available = pn - one;
    let packing_possible = vectors_required <= vectors_available;
    Ok(CountingBound {
        p,
        n,
        d,
        family_size,
        vectors_required,
        vectors_available,
        packing_possible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn v(f: PrimeField, c: &[u32]) -> VectorFp {
        VectorFp::new(f, c.to_vec())
    }

    #[test]
    fn beta_on_standard_symplectic() {
        let f = gf(3);
        let s = BilinearStructure::standard_symplectic(f, 1).unwrap();
        let e1 = v(f, &[1, 0]);
        let e2 = v(f, &[0, 1]);
        assert_eq!(beta_eval(&s, &e1, &e2).unwrap().coords(), &[1]);
        assert_eq!(beta_eval(&s, &e2, &e1).unwrap().coords(), &[2]);
        assert_eq!(beta_eval(&s, &e1.scale(2), &e2).unwrap().coords(), &[2]);
        assert!(beta_eval(&s, &VectorFp::zero(f, 2), &e2).unwrap().is_zero());
        assert!(beta_eval(&s, &e1, &VectorFp::zero(f, 3)).is_err());
    }

    #[test]
    fn left_map_examples() {
        let f = gf(3);
        let s = BilinearStructure::standard_symplectic(f, 1).unwrap();
        assert!(left_map(&s, &VectorFp::zero(f, 2)).unwrap().is_zero());
        let m = left_map(&s, &v(f, &[1, 0])).unwrap();
        assert_eq!(m, MatrixFp::from_rows(f, 2, &[[0, 1]]).unwrap());
    }

    #[test]
    fn alternating_examples() {
        let f = gf(3);
        assert!(is_alternating(&BilinearStructure::zero(f, 2, 2).unwrap()));
        assert!(is_alternating(&BilinearStructure::standard_symplectic(f, 2).unwrap()));
        let mut gram = vec![VectorFp::zero(f, 2); 4];
        gram[0] = v(f, &[1, 0]);
        let s = BilinearStructure::new(f, 2, 2, gram).unwrap();
        assert!(!is_alternating(&s));
    }

    #[test]
    fn radical_examples() {
        let f = gf(3);
        assert_eq!(radical(&BilinearStructure::zero(f, 3, 1).unwrap()).dim(), 3);
        assert_eq!(radical(&BilinearStructure::standard_symplectic(f, 1).unwrap()).dim(), 0);
        let plane = BilinearStructure::standard_symplectic(f, 1).unwrap();
        let s = plane.orthogonal_sum(&BilinearStructure::zero(f, 2, 1).unwrap()).unwrap();
        let r = radical(&s);
        assert_eq!(r.dim(), 2);
        assert_eq!(
            r,
            Subspace::span(f, 4, &[v(f, &[0, 0, 1, 0]), v(f, &[0, 0, 0, 1])]).unwrap()
        );
    }

    #[test]
    fn psi_rejects_lines() {
        let s = BilinearStructure::zero(gf(3), 1, 1).unwrap();
        assert_eq!(psi_check(&s), Err(Error::PsiNeedsPlane));
    }

    #[test]
    fn psi_on_zero_structure_reports_e1_e2() {
        let f = gf(3);
        let verdict = psi_check(&BilinearStructure::zero(f, 2, 1).unwrap()).unwrap();
        assert!(!verdict.holds);
        let cx = verdict.counterexample.unwrap();
        // (1,0) and (2,0) are dependent, so the first independent pair is (e1, e2).
        assert_eq!(cx.tuple, vec![v(f, &[1, 0]), v(f, &[0, 1])]);
        assert_eq!(cx.target, vec![v(f, &[1]), v(f, &[0])]);
        assert_eq!(verdict.cases_checked, 1);
    }

    #[test]
    fn sigma_vacuous_beyond_dimension() {
        let s = BilinearStructure::zero(gf(5), 2, 1).unwrap();
        assert_eq!(sigma_check(&s, 3), AxiomVerdict::holds(0));
    }

    #[test]
    fn density_of_zero_structure() {
        let f = gf(3);
        let s = BilinearStructure::zero(f, 3, 2).unwrap();
        for k in 1..=3 {
            let dens = sigma_failure_density(&s, k).unwrap();
            let targets = 3u128.pow((2 * k) as u32);
            assert_eq!(dens.failing_subspace_fraction, Fraction::new(1, 1));
            assert_eq!(dens.unreachable_target_fraction, Fraction::new(targets - 1, targets));
        }
        assert!(sigma_failure_density(&s, 4).is_err());
    }

    #[test]
    fn counting_bound_examples() {
        let b = counting_bound(3, 2, 2).unwrap();
        assert_eq!(
            (b.family_size, b.vectors_required, b.vectors_available, b.packing_possible),
            (4u32.into(), 32u32.into(), 8u32.into(), false)
        );
        let b = counting_bound(3, 2, 1).unwrap();
        assert_eq!(
            (b.family_size, b.vectors_required, b.vectors_available, b.packing_possible),
            (4u32.into(), 8u32.into(), 8u32.into(), true)
        );
        assert!(counting_bound(3, 1, 1).is_err());
        assert!(counting_bound(4, 2, 1).is_err());
    }

    #[test]
    fn exhaust_budget_names_required_count() {
        let err = lemma_bil_exhaust(7, 3, 1, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: "40353607".into(),
                budget: 1000
            }
        );
        assert_eq!(lemma_bil_exhaust(2, 2, 2, 1000), Err(Error::EvenPrime(2)));
    }

    #[test]
    fn exhaust_treats_lines_as_vacuous() {
        let r = lemma_bil_exhaust(3, 1, 2, DEFAULT_MAP_BUDGET).unwrap();
        assert_eq!((r.maps_checked, r.satisfying_count), (9, 9));
        assert!(!r.hypothesis_applies && !r.refutation);
    }

    #[test]
    fn map_index_odometer_order() {
        let f = gf(3);
        let s = BilinearStructure::from_map_index(f, 2, 1, 1).unwrap();
        assert_eq!(s.gram(0, 0).coords(), &[1]);
        let s = BilinearStructure::from_map_index(f, 2, 1, 3).unwrap();
        assert_eq!(s.gram(0, 1).coords(), &[1]);
        assert_eq!(s.gram(0, 0).coords(), &[0]);
    }
}
