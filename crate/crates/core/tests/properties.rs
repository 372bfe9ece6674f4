use proptest::prelude::*;

use domfix::adversary::{build_alpha_private_cycle, compose_component_witness};
use domfix::domination::{enumerate_gamma_sets, gamma_bruteforce, gamma_exact, is_dominating};
use domfix::fixer::{check_pi_fixer_condition, is_pi_fixer_direct};
use domfix::graph::named::{disjoint_union, edgeless};
use domfix::prism::cartesian_prism;
use domfix::{build_prism, parse_graph6, write_graph6, Graph, Permutation, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut it = bits.into_iter();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Permutation)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, images)| (g, Permutation::from_images(images).unwrap()))
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("nontrivial connected", |g| {
        g.order() >= 2 && g.is_connected()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prism_structure((g, pi) in graph_and_perm(10)) {
        let n = g.order();
        let p = build_prism(&g, &pi).unwrap();
        let h = p.graph();
        prop_assert_eq!(h.order(), 2 * n);
        prop_assert_eq!(h.size(), 2 * g.size() + n);
        for v in 0..n {
            prop_assert_eq!(h.degree(v), g.degree(v) + 1);
            prop_assert_eq!(h.degree(v + n), g.degree(v) + 1);
            prop_assert!(h.has_edge(v, pi.apply(v) + n));
        }
        let ident = cartesian_prism(&g);
        for v in 0..n {
            let cross: Vec<_> = ident.neighbors(v).iter().filter(|&w| w >= n).collect();
            prop_assert_eq!(cross, vec![v + n]);
        }
    }

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        let text = write_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn exact_matches_bruteforce(g in graph(11)) {
        let exact = gamma_exact(&g);
        prop_assert_eq!(exact.gamma, gamma_bruteforce(&g).unwrap().gamma);
        prop_assert_eq!(exact.witness.len(), exact.gamma);
        prop_assert!(is_dominating(&g, &exact.witness).unwrap());
    }

    #[test]
    fn prism_gamma_bounds((g, pi) in graph_and_perm(8)) {
        let gamma = gamma_exact(&g).gamma;
        let gp = gamma_exact(build_prism(&g, &pi).unwrap().graph()).gamma;
        prop_assert!(gamma <= gp && gp <= 2 * gamma, "γ={} γ(πG)={}", gamma, gp);
    }

    #[test]
    fn gamma_sets_are_exactly_the_minimum_dominating_sets(g in graph(9)) {
        let gamma = gamma_exact(&g).gamma;
        let listed: Vec<VertexSet> = enumerate_gamma_sets(&g, gamma).collect();
        let n = g.order();
        let mut expected = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == gamma {
                let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if is_dominating(&g, &s).unwrap() {
                    expected.push(s);
                }
            }
        }
        expected.sort_by(|a, b| a.lex_cmp(b));
        prop_assert_eq!(listed, expected);
    }

    #[test]
    fn edgeless_prisms_keep_gamma(n in 1usize..12, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let pi = Permutation::from_images(images).unwrap();
        let g = edgeless(n);
        prop_assert_eq!(gamma_exact(build_prism(&g, &pi).unwrap().graph()).gamma, n);
    }

    #[test]
    fn pi_fixer_condition_matches_direct((g, pi) in graph_and_perm(7)) {
        prop_assume!(g.order() >= 2 && g.is_connected());
        let by_condition = check_pi_fixer_condition(&g, &pi).unwrap().is_some();
        prop_assert_eq!(by_condition, is_pi_fixer_direct(&g, &pi).unwrap());
    }

    #[test]
    fn private_cycle_is_one_cycle(g in connected(10)) {
        // Greedy maximal 2-packing in label order.
        let mut d1 = Vec::new();
        let mut blocked = VertexSet::empty();
        for v in 0..g.order() {
            if g.closed_neighbors(v).is_disjoint(&blocked) {
                d1.push(v);
                blocked.union_with(&g.closed_neighbors(v));
            }
        }
        let alpha = build_alpha_private_cycle(&g, &d1).unwrap();
        let cycles = alpha.cycles();
        prop_assert_eq!(cycles.len(), 1);
        prop_assert_eq!(cycles[0].len(), d1.len() + 1);
        prop_assert_eq!(g.order() - alpha.fixed_points().len(), d1.len() + 1);
    }

    #[test]
    fn component_lift_splits_gamma(a in connected(5), b in connected(5), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let g = disjoint_union(&a, &b);
        let comps = g.connected_components();
        prop_assert_eq!(comps.len(), 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for j in 0..2 {
            let (cj, _) = &comps[j];
            let mut images: Vec<usize> = (0..cj.order()).collect();
            images.shuffle(&mut rng);
            let pi_j = Permutation::from_images(images).unwrap();
            let pi = compose_component_witness(&g, &comps, j, &pi_j).unwrap();
            let (other, _) = &comps[1 - j];
            let expected = gamma_exact(&cartesian_prism(other)).gamma
                + gamma_exact(build_prism(cj, &pi_j).unwrap().graph()).gamma;
            prop_assert_eq!(gamma_exact(build_prism(&g, &pi).unwrap().graph()).gamma, expected);
        }
    }
}
