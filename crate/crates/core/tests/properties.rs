use std::collections::BTreeSet;

use nilp2_core::bilinear::{
    beta_eval, is_alternating, lemma_bil_exhaust, psi_check, sigma_check, sigma_failure_density, BilinearStructure,
};
use nilp2_core::fplinalg::{enumerate_subspaces, gaussian_binomial, kernel, rref, solve, subspace_ops};
use nilp2_core::groups::group_from_bilinear;
use nilp2_core::{FiniteGroup, MatrixFp, PrimeField, Subspace, VectorFp};
use proptest::prelude::*;

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn matrix() -> impl Strategy<Value = MatrixFp> {
    (prop_oneof![Just(3u32), Just(5), Just(7)], 1usize..=6, 1usize..=6).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |e| MatrixFp::new(gf(p), r, c, e).unwrap())
    })
}

fn structure(max_n: usize, max_d: usize) -> impl Strategy<Value = BilinearStructure> {
    (prop_oneof![Just(3u32), Just(5)], 1..=max_n, 1..=max_d).prop_flat_map(|(p, n, d)| {
        prop::collection::vec(0..p, n * n * d).prop_map(move |e| {
            let f = gf(p);
            let gram = e.chunks(d).map(|c| VectorFp::new(f, c.to_vec())).collect();
            BilinearStructure::new(f, n, d, gram).unwrap()
        })
    })
}

/// Alternating structures from a random strictly upper triangle.
fn alternating(max_n: usize, max_d: usize) -> impl Strategy<Value = BilinearStructure> {
    (prop_oneof![Just(3u32), Just(5)], 1..=max_n, 1..=max_d).prop_flat_map(|(p, n, d)| {
        prop::collection::vec(0..p, n * (n - 1) / 2 * d).prop_map(move |e| {
            let f = gf(p);
            let mut gram = vec![VectorFp::zero(f, d); n * n];
            let mut it = e.chunks(d);
            for i in 0..n {
                for j in i + 1..n {
                    let v = VectorFp::new(f, it.next().unwrap().to_vec());
                    gram[j * n + i] = v.neg();
                    gram[i * n + j] = v;
                }
            }
            BilinearStructure::new(f, n, d, gram).unwrap()
        })
    })
}

fn brute_image_size(s: &BilinearStructure, tuple: &[VectorFp]) -> usize {
    VectorFp::all(s.field(), s.n())
        .map(|z| {
            tuple
                .iter()
                .flat_map(|v| beta_eval(s, v, &z).unwrap().into_coords())
                .collect::<Vec<u32>>()
        })
        .collect::<BTreeSet<_>>()
        .len()
}

fn brute_sigma(s: &BilinearStructure, k: usize) -> bool {
    let f = s.field();
    let full = (f.p() as usize).pow((k * s.d()) as u32);
    let nonzero: Vec<VectorFp> = VectorFp::all(f, s.n()).filter(|v| !v.is_zero()).collect();
    let mut tuples: Vec<Vec<VectorFp>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                nonzero.iter().filter_map(move |v| {
                    let mut u = t.clone();
                    u.push(v.clone());
                    (Subspace::span(f, s.n(), &u).unwrap().dim() == u.len()).then_some(u)
                })
            })
            .collect();
    }
    tuples.iter().all(|t| brute_image_size(s, t) == full)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix()) {
        prop_assert_eq!(m.rank() + kernel(&m).dim(), m.cols());
    }

    #[test]
    fn rref_idempotent(m in matrix()) {
        let (rank, reduced) = rref(&m);
        prop_assert_eq!(rref(&reduced), (rank, reduced.clone()));
        prop_assert_eq!(Subspace::from_rows(m.clone()), Subspace::from_rows(reduced));
    }

    #[test]
    fn kernel_is_annihilated(m in matrix()) {
        for x in kernel(&m).basis_vectors() {
            prop_assert!(m.mul_vec(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_matches_brute_force(
        (m, b) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            (prop::collection::vec(0u32..3, r * c), prop::collection::vec(0u32..3, r))
                .prop_map(move |(e, b)| (MatrixFp::new(gf(3), r, c, e).unwrap(), VectorFp::new(gf(3), b)))
        })
    ) {
        let exists = VectorFp::all(gf(3), m.cols()).any(|x| m.mul_vec(&x).unwrap() == b);
        match solve(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            None => prop_assert!(!exists),
        }
    }

    #[test]
    fn beta_is_bilinear(
        s in structure(4, 3),
        seed in any::<[u64; 3]>(),
        a in 0u32..5,
    ) {
        let f = s.field();
        let total = (f.p() as u64).pow(s.n() as u32);
        let [x, y, z] = seed.map(|t| VectorFp::from_index(f, s.n(), t % total));
        let left = beta_eval(&s, &x.scale(a).add(&y).unwrap(), &z).unwrap();
        let right = beta_eval(&s, &x, &z).unwrap().scale(a).add(&beta_eval(&s, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let left = beta_eval(&s, &z, &x.scale(a).add(&y).unwrap()).unwrap();
        let right = beta_eval(&s, &z, &x).unwrap().scale(a).add(&beta_eval(&s, &z, &y).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn psi_agrees_with_sigma_two(s in structure(3, 2)) {
        prop_assume!(s.n() >= 2);
        prop_assert_eq!(psi_check(&s).unwrap().holds, sigma_check(&s, 2).holds);
    }

    #[test]
    fn subspace_representatives_are_sound(s in structure(3, 2), k in 1usize..=3) {
        prop_assume!(s.field().p() == 3);
        prop_assert_eq!(sigma_check(&s, k).holds, brute_sigma(&s, k));
    }

    #[test]
    fn counterexamples_revalidate(s in structure(3, 2), k in 1usize..=2) {
        let v = sigma_check(&s, k);
        if let Some(cx) = v.counterexample {
            prop_assert!(!v.holds);
            let target: Vec<u32> = cx.target.iter().flat_map(|w| w.coords().to_vec()).collect();
            let hit = VectorFp::all(s.field(), s.n()).any(|z| {
                let image: Vec<u32> = cx.tuple.iter().flat_map(|v| beta_eval(&s, v, &z).unwrap().into_coords()).collect();
                image == target
            });
            prop_assert!(!hit);
        } else {
            prop_assert!(v.holds);
        }
    }

    #[test]
    fn density_zero_iff_sigma_holds(s in structure(3, 2), k in 1usize..=3) {
        prop_assume!(k <= s.n());
        let d = sigma_failure_density(&s, k).unwrap();
        prop_assert_eq!(d.failing_subspaces == 0, sigma_check(&s, k).holds);
    }

    #[test]
    fn class2_certificates(s in alternating(3, 2)) {
        prop_assume!((s.field().p() as usize).pow((s.n() + s.d()) as u32) <= 729);
        prop_assert!(is_alternating(&s));
        let g = group_from_bilinear(&s).unwrap();
        let expected = (s.field().p() as usize).pow((s.n() + s.d()) as u32);
        prop_assert_eq!(g.order(), expected);
        let c = g.certify();
        prop_assert!(c.passed, "{:?}", c);
    }
}

#[test]
fn double_annihilator_exhaustive() {
    let f = gf(3);
    for n in 1..=4 {
        for k in 0..=n {
            for s in enumerate_subspaces(n, k, f) {
                let a = s.annihilator();
                assert_eq!(a.dim(), n - k);
                assert_eq!(a.annihilator(), s);
            }
        }
    }
}

#[test]
fn modular_law_exhaustive() {
    let f = gf(3);
    let all: Vec<Subspace> = (0..=3).flat_map(|k| enumerate_subspaces(3, k, f)).collect();
    assert_eq!(all.len(), 1 + 13 + 13 + 1);
    for a in &all {
        for b in &all {
            let (sum, meet) = subspace_ops(a, b).unwrap();
            assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
            assert!(a.is_subspace_of(&sum).unwrap() && meet.is_subspace_of(b).unwrap());
        }
    }
}

#[test]
fn subspace_counts_match_gaussian_binomial() {
    for p in [3u32, 5] {
        for n in 0..=4 {
            for k in 0..=n {
                let listed: Vec<Subspace> = enumerate_subspaces(n, k, gf(p)).collect();
                let distinct: BTreeSet<&Subspace> = listed.iter().collect();
                assert_eq!(listed.len() as u128, gaussian_binomial(n as u32, k as u32, p as u64));
                assert_eq!(distinct.len(), listed.len());
                assert!(listed.iter().all(|s| s.dim() == k));
            }
        }
    }
}

#[test]
fn exhaust_is_independent_of_worker_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| lemma_bil_exhaust(3, 2, 1, 1_000_000).unwrap())
    };
    assert_eq!(run(1), run(4));
}
