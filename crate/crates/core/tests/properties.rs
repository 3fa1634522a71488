mod common;

use proptest::prelude::*;

use scv_core::bounds::{verify_conjecture, Verdict, VERDICT_TOL};
use scv_core::clique::{greedy_clique, max_clique_exact, Budget};
use scv_core::generators::{srg_spectrum, SrgParams};
use scv_core::graph::{parse_graph6, write_graph6, Graph};
use scv_core::spectral::eigenvalues_symmetric;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in arb_graph(80)) {
        let text = write_graph6(&g);
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(write_graph6(&back), text);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn exact_clique_matches_brute_force(g in arb_graph(11)) {
        let r = max_clique_exact(&g, &Budget::default());
        prop_assert!(r.is_exact());
        prop_assert_eq!(r.omega, common::brute_force_omega(&g));
        prop_assert!(g.is_clique(&r.witness));
        prop_assert!(greedy_clique(&g, 4, 1).omega <= r.omega);
    }

    #[test]
    fn spectrum_moments(g in arb_graph(30)) {
        prop_assume!(g.n() > 0);
        let sp = eigenvalues_symmetric(&g).unwrap();
        let m = g.m() as f64;
        prop_assert!(sp.trace().abs() <= 1e-8 * (1.0 + m));
        prop_assert!((sp.sum_of_squares() - 2.0 * m).abs() <= 1e-8 * (1.0 + m));
        let (s_plus, _) = sp.s_plus();
        prop_assert!(s_plus <= 2.0 * m + 1e-8 * (1.0 + m));
        prop_assert!(s_plus + 1e-9 >= sp.lambda1() * sp.lambda1());
    }

    #[test]
    fn bounds_sit_between_one_and_omega(g in arb_graph(18)) {
        let r = verify_conjecture(&g, &Budget::default()).unwrap();
        prop_assume!(g.n() > 0);
        prop_assert!(r.wilf >= 1.0 - VERDICT_TOL);
        prop_assert!(r.wilf <= r.omega.omega as f64 + VERDICT_TOL);
        prop_assert!(r.ew.unwrap() >= 1.0 - VERDICT_TOL);
        prop_assert_eq!(r.verdict, Verdict::Holds);
        prop_assert!(r.forms_agree);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(40)) {
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn conference_multiplicities(mu in 1u64..500) {
        let sp = srg_spectrum(&SrgParams::conference(mu)).unwrap();
        prop_assert_eq!(sp.f, 2 * mu);
        prop_assert_eq!(sp.g, 2 * mu);
        let trace = sp.d + sp.f as f64 * sp.r + sp.g as f64 * sp.s;
        prop_assert!(trace.abs() <= 1e-8 * (4 * mu) as f64);
    }
}
