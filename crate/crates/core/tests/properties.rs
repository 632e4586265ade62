use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use plancherel_lab::graded::{check_restriction, young_graph_adapter};
use plancherel_lab::plancherel::{branching_identity, check_coherence, sample_growth_trial, tableau_measure};
use plancherel_lab::posets::{
    check_centrality, ideal_density_exact, lattice_z2, IdealSpec, MonotoneNumbering, Point,
};
use plancherel_lab::rational::from_u64;
use plancherel_lab::stats::first_row_statistics;
use plancherel_lab::tableau::{all_tableaux, StandardTableau};
use plancherel_lab::totpos::{toeplitz_minor, CoefficientSequence};
use plancherel_lab::transfer::transfer_step;
use plancherel_lab::young::{dim_paths, enumerate_level, Partition};
use plancherel_lab::Limits;
use proptest::prelude::*;

/// A tableau grown by choosing among the addable corners with `picks`.
fn tableau_from_picks(picks: &[usize]) -> StandardTableau {
    let mut shape = Partition::empty();
    let mut rows = Vec::with_capacity(picks.len());
    for &p in picks {
        let corners = shape.addable_cells();
        let row = corners[p % corners.len()].row;
        rows.push(row);
        shape = shape.add_cell(row).unwrap();
    }
    StandardTableau::from_added_rows(&rows).unwrap()
}

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..8, 0..max_n).prop_map(|picks| {
        if picks.is_empty() {
            Partition::empty()
        } else {
            tableau_from_picks(&picks).shape()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn transfer_keeps_tableaux_standard(picks in prop::collection::vec(0usize..16, 2..=500)) {
        let t = tableau_from_picks(&picks);
        let out = transfer_step(&t).unwrap();
        prop_assert!(StandardTableau::from_rows(out.rows().to_vec()).is_ok());
        prop_assert_eq!(out.size(), t.size() - 1);
        prop_assert!(out.shape().is_covered_by(&t.shape()));
    }
}

proptest! {
    #[test]
    fn hook_formula_matches_paths(lam in partition_strategy(24)) {
        prop_assert_eq!(lam.dim_hook(), dim_paths(&lam, &Limits::default()).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution_preserving_dim(lam in partition_strategy(30)) {
        let c = lam.conjugate();
        prop_assert_eq!(c.conjugate(), lam.clone());
        prop_assert_eq!(c.dim_hook(), lam.dim_hook());
    }

    #[test]
    fn toeplitz_row_swap_negates(
        coeffs in prop::collection::vec(-5i64..6, 1..8),
        rows in prop::collection::btree_set(0usize..8, 3),
        cols in prop::collection::btree_set(0usize..8, 3),
    ) {
        let c = CoefficientSequence::from_integers(&coeffs);
        let lim = Limits::default();
        let mut rows: Vec<usize> = rows.into_iter().collect();
        let cols: Vec<usize> = cols.into_iter().collect();
        let a = toeplitz_minor(&c, &rows, &cols, &lim).unwrap();
        rows.swap(0, 2);
        prop_assert_eq!(toeplitz_minor(&c, &rows, &cols, &lim).unwrap(), -a);
    }

    #[test]
    fn finite_ideal_density_bound(seed in any::<u64>(), k in 1u32..6) {
        let lim = Limits::default();
        let t = sample_growth_trial(120, seed, 0, &lim).unwrap().tableau;
        let numbering = MonotoneNumbering::from_tableau(&t);
        let set: BTreeSet<Point> = (0..k).map(|x| Point::xy(0, x)).collect();
        let ideal = IdealSpec::finite(&lattice_z2(), set).unwrap();
        let d = ideal_density_exact(&numbering, &ideal).unwrap();
        prop_assert!(d <= BigRational::new((k as i64).into(), 120.into()));
    }
}

#[test]
fn growth_prefixes_are_monotone_numberings() {
    let lim = Limits::default();
    let z2 = lattice_z2();
    for trial in 0..1000 {
        let t = sample_growth_trial(100, 7, trial, &lim).unwrap().tableau;
        let points = MonotoneNumbering::from_tableau(&t).elements().to_vec();
        assert!(MonotoneNumbering::new(&z2, points).is_ok(), "trial {trial}");
    }
}

#[test]
fn restriction_agrees_with_coherence() {
    let lim = Limits::default();
    let young = young_graph_adapter();
    for n in 0..=12 {
        let restricted = check_restriction(&young, n, &lim).unwrap().holds;
        assert!(restricted, "restriction fails at {n}");
        assert_eq!(branching_identity(n, &lim).unwrap(), None);
        if (1..=8).contains(&n) {
            assert_eq!(check_coherence(n, &lim).unwrap().holds, restricted);
        }
    }
}

#[test]
fn tableau_measure_is_central() {
    let lim = Limits::default();
    for n in 1..=8 {
        let weights: Vec<(MonotoneNumbering, BigRational)> = all_tableaux(n)
            .iter()
            .map(|t| (MonotoneNumbering::from_tableau(t), tableau_measure(t)))
            .collect();
        let r = check_centrality(&lattice_z2(), &weights, n, &lim).unwrap();
        assert!(r.holds, "n = {n}: {:?}", r.witness);
    }
}

#[test]
fn tableau_measure_sums_to_one_and_matches_dims() {
    for n in 1..=8 {
        let all = all_tableaux(n);
        let total: BigRational = all.iter().map(tableau_measure).sum();
        assert_eq!(total, from_u64(1));
        let dims: BigUint = enumerate_level(n, &Limits::default())
            .unwrap()
            .iter()
            .map(Partition::dim_hook)
            .sum();
        assert_eq!(BigUint::from(all.len()), dims);
        assert!(all.iter().all(|t| !tableau_measure(t).is_negative()));
    }
}

#[test]
fn pigeonhole_per_sample() {
    let r = first_row_statistics(900, 200, 5, &Limits::default()).unwrap();
    assert!(r.per_trial.iter().all(|t| t.lambda1 >= 30 || t.lambda1_prime >= 30));
}

/// At 10³ trials the statistic is dominated by sampling noise (two
/// independent 10³-samples of λ₁ alone sit near 0.07), so this runs at 10⁴
/// trials where the noise floor is about 0.025.
#[test]
fn first_row_and_column_laws_agree() {
    let r = first_row_statistics(1000, 10_000, 0x5EED_1977, &Limits::default()).unwrap();
    let tv = r.row_column_distance();
    assert!(tv <= 0.05, "row/column total variation {tv}");
}

#[test]
fn first_row_ratio_approaches_two() {
    let lim = Limits::default();
    let small = first_row_statistics(100, 100, 11, &lim).unwrap().mean_ratio;
    let large = first_row_statistics(10_000, 20, 11, &lim).unwrap().mean_ratio;
    assert!((2.0 - large).abs() < (2.0 - small).abs(), "{small} vs {large}");
}
