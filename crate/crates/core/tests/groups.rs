use nilp2_core::bilinear::{is_alternating, radical, sigma_check, BilinearStructure};
use nilp2_core::groups::{
    central_product, commutator_power_check, direct_power, extraspecial, group_from_bilinear, hall_witt_check,
    heisenberg, laurent_bound_check, lower_central_series, lower_central_terms, ut_group, commutator_subgroup,
    CheckMode, Class2Group, FiniteGroup, DEFAULT_TABLE_BUDGET,
};
use nilp2_core::modelcheck::{
    centralizer, centralizer_members, class2_centralizer, class2_centralizer_members, finite_stage_maximality,
    rho_check, sigma_on_group, sop_chain_direct_power, structure_of,
};
use nilp2_core::{Error, PrimeField};

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn families() -> Vec<(&'static str, Class2Group)> {
    let f = gf(3);
    let plane = BilinearStructure::standard_symplectic(f, 1).unwrap();
    let with_radical = plane.orthogonal_sum(&BilinearStructure::zero(f, 1, 1).unwrap()).unwrap();
    vec![
        ("extraspecial(3,1)", extraspecial(3, 1).unwrap()),
        ("extraspecial(3,2)", extraspecial(3, 2).unwrap()),
        ("heisenberg(3,2,1)", heisenberg(3, 2, 1).unwrap()),
        ("central_product", central_product(&extraspecial(3, 1).unwrap(), 2).unwrap()),
        ("with_radical", group_from_bilinear(&with_radical).unwrap()),
    ]
}

#[test]
fn construction_examples() {
    let f = gf(3);
    let abelian = group_from_bilinear(&BilinearStructure::zero(f, 1, 1).unwrap()).unwrap();
    assert_eq!(abelian.order(), 9);
    assert_eq!(abelian.center_elements().len(), 9);

    let es = extraspecial(3, 1).unwrap();
    assert_eq!(es.order(), 27);
    assert!((0..27).all(|x| es.pow(x, 3) == 0));
    assert_eq!(extraspecial(3, 2).unwrap().order(), 243);
    assert_eq!(extraspecial(5, 1).unwrap().order(), 125);

    let s4 = BilinearStructure::standard_symplectic(f, 1)
        .unwrap()
        .orthogonal_sum(&BilinearStructure::standard_symplectic(f, 1).unwrap())
        .unwrap();
    let s = BilinearStructure::new(
        f,
        4,
        2,
        s4.gram_entries()
            .iter()
            .map(|w| nilp2_core::VectorFp::new(f, vec![w.coords()[0], 0]))
            .collect(),
    )
    .unwrap();
    assert_eq!(group_from_bilinear(&s).unwrap().order(), 729);

    let mut bad = BilinearStructure::zero(f, 2, 2).unwrap().gram_entries().to_vec();
    bad[0] = nilp2_core::VectorFp::new(f, vec![1, 0]);
    let bad = BilinearStructure::new(f, 2, 2, bad).unwrap();
    assert!(!is_alternating(&bad));
    assert!(matches!(group_from_bilinear(&bad), Err(Error::NotAlternating)));
}

#[test]
fn centres_of_extraspecial_groups() {
    for (p, k) in [(3, 1), (3, 2), (5, 1)] {
        let g = extraspecial(p, k).unwrap();
        let scanned: Vec<usize> = (0..g.order()).filter(|&x| g.is_central(x)).collect();
        assert_eq!(scanned, g.center_elements());
        assert_eq!(scanned.len(), p as usize);
    }
}

#[test]
fn heisenberg_families() {
    let h = heisenberg(3, 1, 1).unwrap();
    assert_eq!(h.structure(), extraspecial(3, 1).unwrap().structure());
    let h = heisenberg(3, 2, 1).unwrap();
    assert_eq!(h.order(), 729);
    assert_eq!(h.center_elements().len(), 9);
    assert_eq!(lower_central_series(&h.to_table()).unwrap().class, 2);
    for m in [1, 2] {
        let h = heisenberg(3, 2, m).unwrap();
        assert_eq!(h.order(), 3usize.pow((4 * m + 2) as u32));
        assert_eq!(radical(h.structure()).dim(), 0);
        assert_eq!(h.center_elements().len(), 9);
        let c = h.certify();
        assert!(c.passed, "{c:?}");
        assert_eq!(c.derived_order, 9);
    }
    assert!(sigma_check(heisenberg(3, 2, 1).unwrap().structure(), 1).holds);
    assert_eq!(heisenberg(5, 2, 1).unwrap().order(), 5usize.pow(6));
}

#[test]
fn central_products() {
    let es = extraspecial(3, 1).unwrap();
    assert_eq!(central_product(&es, 1).unwrap(), es);
    let cp = central_product(&es, 2).unwrap();
    assert_eq!(cp.order(), 27 * 27 / 3);
    assert_eq!(cp.structure(), extraspecial(3, 2).unwrap().structure());
    assert_eq!(central_product(&es, 3).unwrap().order(), 27usize.pow(3) / 9);
}

#[test]
fn certificates_for_all_families() {
    for (name, g) in families() {
        let c = g.certify();
        assert!(c.passed && c.exhaustive, "{name}: {c:?}");
    }
    let c = extraspecial(5, 1).unwrap().certify();
    assert!(c.passed && c.associativity_mode == "full");
}

#[test]
fn direct_powers() {
    let es = extraspecial(3, 1).unwrap();
    let sq = direct_power(&es, 2, DEFAULT_TABLE_BUDGET).unwrap();
    assert_eq!(sq.order(), 729);
    let centre: Vec<usize> = (0..729).filter(|&x| sq.is_central(x)).collect();
    assert_eq!(centre.len(), 9);
    assert!(matches!(direct_power(&es, 5, DEFAULT_TABLE_BUDGET), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn series_examples() {
    let cases = [
        (ut_group(3, 3, DEFAULT_TABLE_BUDGET).unwrap(), vec![27, 3, 1]),
        (ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap(), vec![64, 8, 2, 1]),
        (ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap(), vec![729, 27, 3, 1]),
        (extraspecial(3, 1).unwrap().to_table(), vec![27, 3, 1]),
    ];
    for (g, orders) in cases {
        let s = lower_central_series(&g).unwrap();
        assert_eq!(s.class, orders.len() - 1);
        assert_eq!(s.orders, orders);
        for w in s.orders.windows(2) {
            assert!(w[1] < w[0] && w[0] % w[1] == 0);
        }
    }
    let f = gf(3);
    let abelian = group_from_bilinear(&BilinearStructure::zero(f, 2, 1).unwrap()).unwrap();
    assert_eq!(lower_central_series(&abelian.to_table()).unwrap().orders, vec![27, 1]);
}

#[test]
fn iterated_commutators_on_class_three() {
    let u = ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap();
    let terms = lower_central_terms(&u).unwrap();
    let gamma2 = commutator_subgroup(&u, &terms[0]);
    assert_eq!(gamma2, terms[1]);
    assert_eq!(commutator_subgroup(&u, &gamma2), terms[2]);
}

#[test]
fn hall_witt_examples() {
    let r = hall_witt_check(&ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap(), CheckMode::Exhaustive);
    assert!(r.holds);
    assert_eq!(r.cases_checked, 64u64.pow(3));
    let r = hall_witt_check(
        &ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap(),
        CheckMode::Sample { count: 100_000, seed: 1 },
    );
    assert!(r.holds);
    assert_eq!(r.cases_checked, 100_000);
    assert!(hall_witt_check(&extraspecial(3, 1).unwrap().to_table(), CheckMode::Exhaustive).holds);
}

#[test]
fn laurent_examples() {
    let r = laurent_bound_check(&ut_group(3, 4, DEFAULT_TABLE_BUDGET).unwrap()).unwrap();
    assert_eq!((r.m, r.gamma3_order, r.bound.to_string(), r.holds), (2, 3, 3u64.pow(16).to_string(), true));
    let r = laurent_bound_check(&ut_group(2, 4, DEFAULT_TABLE_BUDGET).unwrap()).unwrap();
    assert_eq!((r.m, r.gamma3_order, r.bound.to_string(), r.holds), (2, 2, 65536.to_string(), true));
    for (_, g) in families() {
        let r = laurent_bound_check(&g.to_table()).unwrap();
        assert_eq!(r.gamma3_order, 1);
        assert!(r.holds);
    }
}

#[test]
fn commutator_identities() {
    let r = commutator_power_check(&extraspecial(3, 1).unwrap(), &[2, 3], CheckMode::Exhaustive);
    assert!(r.holds && r.triples_checked == 27u64.pow(3));
    let r = commutator_power_check(&extraspecial(5, 1).unwrap(), &[2, 3, 4, 5], CheckMode::Exhaustive);
    assert!(r.holds);
    let f = gf(3);
    let abelian = group_from_bilinear(&BilinearStructure::zero(f, 2, 1).unwrap()).unwrap();
    assert!(commutator_power_check(&abelian, &[2, 3], CheckMode::Exhaustive).holds);
}

#[test]
fn reduction_coherence() {
    for (name, g) in families() {
        let s = structure_of(&g).unwrap();
        for k in 1..=3 {
            let direct = sigma_on_group(&g, k).unwrap();
            let reduced = sigma_check(&s, k);
            assert_eq!(direct.holds, reduced.holds, "{name} k={k}");
        }
    }
}

#[test]
fn centralizer_formula_matches_scan() {
    for (name, g) in families().into_iter().filter(|(_, g)| g.order() <= 243) {
        for x in 0..g.order() {
            assert_eq!(class2_centralizer_members(&g, x), centralizer_members(&g, x), "{name} {x}");
        }
    }
    let es = extraspecial(3, 1).unwrap();
    assert_eq!(centralizer(&es, 0).order, 27);
    assert_eq!(class2_centralizer(&es, 1).order, 9);
}

#[test]
fn rho_on_extraspecial() {
    for (p, k) in [(3, 1), (3, 2), (5, 1)] {
        assert!(rho_check(&extraspecial(p, k).unwrap()).holds);
    }
    assert!(!rho_check(&families()[4].1).holds);
}

#[test]
fn sigma_profiles() {
    let es = extraspecial(3, 2).unwrap();
    assert!(sigma_on_group(&es, 1).unwrap().holds);
    assert!(sigma_on_group(&es, 2).unwrap().holds);
    let h = heisenberg(3, 2, 1).unwrap();
    assert!(sigma_on_group(&h, 1).unwrap().holds);
    assert!(!sigma_on_group(&h, 2).unwrap().holds);
}

#[test]
fn chains_and_maximality() {
    let es = extraspecial(3, 1).unwrap();
    let r = sop_chain_direct_power(&es, 4, DEFAULT_TABLE_BUDGET).unwrap();
    let expected: Vec<usize> = (1..=4).map(|i| 9usize.pow(i) * 27usize.pow(4 - i)).collect();
    assert_eq!(r.centralizer_orders, expected);
    assert!(r.verified && r.strict.len() == 3);
    for w in r.centralizer_orders.windows(2) {
        assert!(w[1] < w[0]);
    }
    // Scan oracle at k = 2.
    let sq = direct_power(&es, 2, DEFAULT_TABLE_BUDGET).unwrap();
    let r2 = sop_chain_direct_power(&es, 2, DEFAULT_TABLE_BUDGET).unwrap();
    for (phi, order) in r2.elements.iter().zip(&r2.centralizer_orders) {
        assert_eq!(centralizer_members(&sq, *phi).len(), *order);
    }

    let m = finite_stage_maximality(&es, 2, DEFAULT_TABLE_BUDGET).unwrap();
    assert!(m.validated && m.scan_validated);
    assert_eq!(m.centralizer_order, 81);
    assert_eq!(centralizer_members(&sq, m.element).len(), 81);
}
