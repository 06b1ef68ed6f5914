mod support;

use std::collections::BTreeSet;

use lefschetz::decision::{wlp_degree, Characteristic};
use lefschetz::graph::LoopGraph;
use lefschetz::incidence::{
    incidence_ideal, incidence_matrix, loopgraph_incidence, multiplication_matrix,
};
use lefschetz::{IntegerMatrix, MonomialAlgebra};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use support::*;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn facets(
    max_nv: usize,
    max_facets: usize,
    max_size: usize,
) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1..=max_nv).prop_flat_map(move |nv| {
        (
            Just(nv),
            prop::collection::vec(prop::collection::vec(0..nv, 1..=max_size), 1..=max_facets),
        )
    })
}

fn loopless_graph(
    max_n: usize,
    max_edges: usize,
) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_edges)))
}

fn artinian(max_vars: usize) -> impl Strategy<Value = (Vec<u32>, Vec<Vec<usize>>)> {
    (1..=max_vars).prop_flat_map(|n| {
        (
            prop::collection::vec(2u32..=3, n),
            prop::collection::vec(prop::collection::vec(0..n, 2..=3), 0..=4),
        )
    })
}

fn square_system(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1..=max_n, 1..=3usize).prop_flat_map(|(n, d)| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0..n, d), n),
        )
    })
}

fn point_set(max_n: usize, max_points: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2..=max_n, 1..=3usize).prop_flat_map(move |(n, d)| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0..n, d), 1..=max_points),
        )
    })
}

fn run(check: Check) -> Result<(), TestCaseError> {
    match check {
        Ok(_) => Ok(()),
        Err(msg) => Err(TestCaseError::fail(msg)),
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn face_counts_match_f_vector((nv, fs) in facets(8, 5, 5)) {
        let d = complex(nv, &fs);
        let f = d.f_vector().unwrap();
        for i in -1..=d.dim() {
            prop_assert_eq!(d.faces(i).len() as u64, f.get(i));
        }
    }

    #[test]
    fn skeleton_of_skeleton((nv, fs) in facets(8, 5, 5), i in 0usize..5, j in 0usize..5) {
        let d = complex(nv, &fs);
        prop_assert_eq!(d.skeleton(i).skeleton(j), d.skeleton(i.min(j)));
    }

    #[test]
    fn faces_are_downward_closed((nv, fs) in facets(10, 5, 6)) {
        let d = complex(nv, &fs);
        let all: BTreeSet<Vec<usize>> = (-1..=d.dim()).flat_map(|i| d.faces(i)).collect();
        for face in &all {
            for skip in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(skip);
                prop_assert!(all.contains(&sub), "{:?} missing below {:?}", sub, face);
            }
        }
    }

    #[test]
    fn minimal_nonfaces_characterize_faces((nv, fs) in facets(10, 5, 6)) {
        let d = complex(nv, &fs);
        let mnf = d.minimal_nonfaces();
        for a in &mnf {
            for b in &mnf {
                prop_assert!(a == b || !a.iter().all(|v| b.contains(v)), "{:?} inside {:?}", a, b);
            }
        }
        for mask in 0u32..(1 << nv) {
            let set: Vec<usize> = (0..nv).filter(|&v| mask >> v & 1 == 1).collect();
            let blocked = mnf.iter().any(|n| n.iter().all(|v| set.contains(v)));
            prop_assert_eq!(d.contains_face(&set), !blocked, "{:?}", set);
        }
    }

    #[test]
    fn standard_monomials_count_faces((nv, fs) in facets(8, 5, 4)) {
        let d = complex(nv, &fs);
        let a = MonomialAlgebra::squarefree_reduction(&d).unwrap();
        let f = d.f_vector().unwrap();
        for i in 0..=(d.dim() + 2) as usize {
            prop_assert_eq!(a.dim(i) as u64, f.get(i as isize - 1));
        }
        let sk = LoopGraph::one_skeleton(&d);
        prop_assert_eq!(a.underlying_graph(), sk);
    }

    #[test]
    fn generators_are_minimal((powers, extra) in artinian(6)) {
        let i = artinian_ideal(&powers, &extra);
        let g = i.generators();
        for a in g {
            for b in g {
                prop_assert!(a == b || !a.divides(b));
            }
        }
    }

    #[test]
    fn multiplication_is_incidence((nv, fs) in facets(8, 5, 4)) {
        let d = complex(nv, &fs);
        let a = MonomialAlgebra::squarefree_reduction(&d).unwrap();
        for i in 0..=(d.dim() + 1) as usize {
            let inc = incidence_matrix(&d, i);
            prop_assert_eq!(&multiplication_matrix(&a, i).entries, &inc.entries);
            if inc.entries.rows() > 0 {
                prop_assert_eq!(inc.entries.constant_row_sum(), Some(BigInt::from(i as u64 + 1)));
            }
            if i >= 1 && inc.entries.rows() > 0 {
                let ideal = incidence_ideal(&d, i).unwrap();
                prop_assert_eq!(&ideal.log_matrix().unwrap().entries, &inc.entries);
                prop_assert!(ideal.check_incidence_shape());
            }
        }
    }

    #[test]
    fn loop_rows_sum_to_two((n, edges) in (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 1..=10)))) {
        let m = loopgraph_incidence(&graph(n, &edges)).entries;
        prop_assert_eq!(m.constant_row_sum(), Some(BigInt::from(2)));
    }

    #[test]
    fn snf_matches_modular_ranks(rows in (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))) {
        run(check_snf(&rows))?;
    }

    #[test]
    fn bareiss_matches_cofactor(rows in (0usize..=6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))) {
        let m = IntegerMatrix::from_rows(&rows);
        prop_assert_eq!(m.determinant().unwrap(), det_cofactor(&to_big(&m)));
    }

    #[test]
    fn divisors_match_minor_gcds(rows in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))) {
        let m = IntegerMatrix::from_rows(&rows);
        prop_assert_eq!(m.determinantal_divisors(), divisors_oracle(&m));
    }

    #[test]
    fn stochastic_determinants_divisible((n, system) in square_system(6)) {
        let rows: Vec<Vec<i64>> = system
            .iter()
            .map(|r| monomial_from_indices(n, r).exponents().iter().map(|&e| e as i64).collect())
            .collect();
        let d = system[0].len() as i64;
        prop_assert!((IntegerMatrix::from_rows(&rows).determinant().unwrap() % d).is_zero());
    }

    #[test]
    fn bipartite_rank_identity((n, edges) in loopless_graph(12, 16)) {
        run(check_bipartite_rank(n, &edges))?;
    }

    #[test]
    fn loop_graph_minors_are_powers_of_two((n, edges) in (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), n..=n + 4)))) {
        run(check_loop_graph_minors(n, &edges))?;
    }

    #[test]
    fn unicyclic_quadratic_maps(
        (n, parents, extra) in (2usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(0usize..64, n - 1), (0..n, 0..n)))
    ) {
        run(check_quadratic_cremona(n, &parents, extra))?;
    }

    #[test]
    fn skeleton_criterion_matches_rank((nv, fs) in facets(8, 6, 3)) {
        run(check_skeleton_criterion(nv, &fs))?;
    }

    #[test]
    fn loop_graph_criterion_matches_rank((powers, extra) in artinian(6)) {
        run(check_underlying_graph_criterion(&powers, &extra))?;
    }

    #[test]
    fn spread_and_volume_routes_agree((nv, fs) in facets(7, 5, 4)) {
        run(check_routes(nv, &fs))?;
    }

    #[test]
    fn determinant_volume_identity((n, system) in square_system(6)) {
        run(check_det_identity(n, &system))?;
    }

    #[test]
    fn coordinate_drop_invariance((n, points) in point_set(6, 10)) {
        run(check_coordinate_drop(n, &points))?;
    }

    #[test]
    fn mixed_multiplicity_monotone((n, gens) in point_set(6, 10), keep in prop::collection::vec(any::<bool>(), 1..10)) {
        run(check_monotone_mixed_mult(n, &gens, &keep))?;
    }

    #[test]
    fn positivity_at_top_index((n, gens) in point_set(6, 10)) {
        run(check_positivity_top(n, &gens))?;
    }

    #[test]
    fn degree_one_failures_only_at_two((nv, fs) in facets(8, 6, 4)) {
        run(check_degree_one_dichotomy(nv, &fs))?;
    }

    #[test]
    fn failure_set_matches_subset_gcd((nv, fs) in facets(6, 4, 3)) {
        run(check_failure_oracle(nv, &fs))?;
    }

    #[test]
    fn characteristic_bound_is_sound((nv, fs) in facets(7, 4, 3)) {
        run(check_bound_soundness(nv, &fs))?;
    }

    #[test]
    fn report_routes_agree_on_complexes((nv, fs) in facets(7, 4, 4)) {
        run(check_report_complex(nv, &fs))?;
    }

    #[test]
    fn report_routes_agree_on_ideals((powers, extra) in artinian(5)) {
        run(check_report_ideal(&powers, &extra))?;
    }

    #[test]
    fn vacuous_degrees_hold((powers, extra) in artinian(4), c in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let a = MonomialAlgebra::new(artinian_ideal(&powers, &extra)).unwrap();
        let ch = Characteristic::new(c).unwrap();
        for i in a.socle_degree()..a.socle_degree() + 3 {
            prop_assert!(wlp_degree(&a, i, ch).unwrap());
        }
    }
}
