use std::collections::BTreeMap;

use kangulate::construct::PontoonRole;
use kangulate::generate::{case_layout, convex_points, few_interior, random_points};
use kangulate::oracle::{brute_force_kangulation, OracleResult, SearchBudget};
use kangulate::partition::InfeasibleReason;
use kangulate::{
    kangulate, kangulate_with, required_j, verify_kangulation, CaseLabel, KangulateOptions, KangulateOutcome,
};

const DEBUG: KangulateOptions = KangulateOptions { debug_checks: true };

#[test]
fn every_case_is_reached_and_verifies() {
    let mut seen = BTreeMap::new();
    for case in CaseLabel::ALL {
        for variant in 0..4 {
            let (ps, k) = case_layout(case, variant).unwrap();
            let kg = kangulate_with(&ps, k, DEBUG).unwrap().found().expect("feasible layout");
            let t = &kg.trace;
            assert_eq!(t.case, case, "variant {variant}");
            assert!(verify_kangulation(&ps, &kg.graph, k).overall);
            assert_eq!(t.block_count, kg.graph.internal_faces().len());
            assert_eq!(t.j, required_j(ps.len(), k));
            if case != CaseLabel::J0 {
                assert_eq!(t.z, ps.smallest_interior());
            }
            if t.j >= 2 {
                assert_eq!(t.sites.len(), t.j - 1);
                assert_eq!(t.trees.iter().map(Vec::len).sum::<usize>(), t.sites.len());
            }
            for role in [PontoonRole::R, PontoonRole::L] {
                if let Some(o) = t.order_of(role) {
                    assert!(o >= 1 && o <= k - 3, "{role:?} order {o}");
                }
            }
            if matches!(case, CaseLabel::C2A | CaseLabel::C2B) {
                assert!(t.bad_path.is_some());
            }
            *seen.entry(case).or_insert(0) += 1;
        }
    }
    assert_eq!(seen.len(), CaseLabel::ALL.len());
}

#[test]
fn threshold_sets_always_succeed() {
    for k in 3..=8 {
        for seed in 0..6 {
            let n = 2 * k * k + seed as usize;
            let ps = random_points(n, 1 << 24, seed * 31 + k as u64).unwrap();
            let kg = kangulate_with(&ps, k, DEBUG).unwrap().found().unwrap();
            assert!(verify_kangulation(&ps, &kg.graph, k).overall, "k {k} n {n}");
        }
    }
}

#[test]
fn too_few_interior_points_is_infeasible_and_oracle_agrees() {
    // k = 4 with odd n needs one interior point
    for n in [5, 7] {
        let ps = convex_points(n, 1000, n as u64).unwrap();
        assert_eq!(ps.interior().len(), 0);
        match kangulate(&ps, 4).unwrap() {
            KangulateOutcome::Infeasible { j, reason, .. } => {
                assert_eq!(j, 1);
                assert_eq!(reason, InfeasibleReason::TooFewInteriorPoints);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(brute_force_kangulation(&ps, 4, SearchBudget::default()), OracleResult::NotFound));
    }
    // k = 5, n = 6 needs two interior points; one is not enough
    let ps = few_interior(6, 1, 1000, 3).unwrap();
    assert_eq!(ps.interior().len(), 1);
    assert!(matches!(kangulate(&ps, 5).unwrap(), KangulateOutcome::Infeasible { j: 2, .. }));
    assert!(matches!(brute_force_kangulation(&ps, 5, SearchBudget::default()), OracleResult::NotFound));
}

#[test]
fn fewer_points_than_k() {
    let ps = random_points(5, 100, 1).unwrap();
    match kangulate(&ps, 6).unwrap() {
        KangulateOutcome::Infeasible { reason, .. } => assert_eq!(reason, InfeasibleReason::TooFewPoints),
        other => panic!("{other:?}"),
    }
}

#[test]
fn small_constructions_match_the_oracle() {
    for k in 4..=5 {
        for seed in 0..20 {
            let n = 6 + (seed % 3) as usize;
            let ps = random_points(n, 12, seed).unwrap();
            let built = kangulate(&ps, k).map(|o| o.found().is_some());
            let oracle = brute_force_kangulation(&ps, k, SearchBudget::default());
            match (built, &oracle) {
                (Ok(true), OracleResult::NotFound) => panic!("construction beat exhaustive search"),
                (Ok(false), OracleResult::Found(_)) => panic!("missed a {k}-angulation of {n} points"),
                _ => {}
            }
        }
    }
}
