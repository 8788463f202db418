//! Property tests against slow, independent oracles.

use proptest::prelude::*;

use planar_turan::canon::{canonical, isomorphic, CanonKey};
use planar_turan::graph6::{decode, decode_graph6, decode_sparse6, encode_graph6, encode_sparse6};
use planar_turan::pattern::{self, Pattern};
use planar_turan::planar::{self, Planarity};
use planar_turan::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k % 2 == 0 {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut p, &mut out);
    out
}

fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && permutations(g.n()).iter().any(|p| g.relabel(p) == *h)
}

/// Injective maps from pattern vertices to host vertices, tried naively.
fn brute_contains(host: &Graph, pat: &Graph) -> bool {
    fn go(host: &Graph, pat: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == pat.n() {
            return true;
        }
        for v in 0..host.n() {
            if used[v] {
                continue;
            }
            if (0..i).all(|j| !pat.has_edge(i, j) || host.has_edge(v, map[j])) {
                used[v] = true;
                map.push(v);
                if go(host, pat, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    pat.n() <= host.n() && go(host, pat, &mut Vec::new(), &mut vec![false; host.n()])
}

const PATTERNS: &[&str] = &["C3", "C4", "C5", "K4", "K2,3", "C3^+", "2C3", "C3 U C4", "K1,3", "prism"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn containment_matches_naive_injection(g in graph_strategy(7), which in 0..PATTERNS.len()) {
        let p = Pattern::parse(PATTERNS[which]).unwrap();
        let found = pattern::contains(&g, &p).unwrap();
        prop_assert_eq!(found.is_some(), brute_contains(&g, p.target()));
        if let Some(map) = found {
            prop_assert!(pattern::is_embedding(&g, p.target(), &map));
        }
    }

    #[test]
    fn canonical_form_is_relabelling_invariant(g in graph_strategy(6), seed in any::<u64>()) {
        let perms = permutations(g.n());
        let p = &perms[(seed % perms.len() as u64) as usize];
        let h = g.relabel(p);
        let (a, b) = (canonical(&g).unwrap(), canonical(&h).unwrap());
        prop_assert_eq!(a.key, b.key);
        prop_assert_eq!(a.graph(), b.graph());
        prop_assert_eq!(CanonKey::of_labeled(&g.relabel(&a.perm)), a.key);
    }

    #[test]
    fn isomorphism_matches_brute_force(g in graph_strategy(6), h in graph_strategy(6)) {
        prop_assume!(g.n() == h.n());
        prop_assert_eq!(isomorphic(&g, &h).unwrap(), brute_isomorphic(&g, &h));
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(64)) {
        let text = encode_graph6(&g);
        prop_assert_eq!(decode_graph6(&text).unwrap(), g.clone());
        prop_assert_eq!(decode(&text).unwrap(), g.clone());
        let sparse = encode_sparse6(&g);
        prop_assert_eq!(decode_sparse6(&sparse).unwrap(), g.clone());
        prop_assert_eq!(decode(&sparse).unwrap(), g);
    }

    #[test]
    fn planarity_is_certified(g in graph_strategy(9)) {
        match planar::test_planarity(&g) {
            Planarity::Planar(emb) => {
                prop_assert_eq!(emb.graph(), g.clone());
                if g.is_connected() && g.edge_count() > 0 {
                    prop_assert_eq!(emb.euler_characteristic(), 2);
                }
                if g.n() >= 3 {
                    prop_assert!(g.edge_count() <= 3 * g.n() - 6);
                }
            }
            Planarity::NonPlanar(k) => {
                prop_assert!(k.validate(&g));
                prop_assert!(g.n() >= 5 && g.edge_count() >= 9);
            }
        }
    }

    #[test]
    fn outerplanar_implies_planar(g in graph_strategy(9)) {
        if planar::is_outerplanar(&g) {
            prop_assert!(planar::is_planar(&g));
            if g.n() >= 2 {
                prop_assert!(g.edge_count() <= 2 * g.n() - 3);
            }
        }
    }
}

#[test]
fn dense_random_graphs_agree_with_naive_search() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(7);
    let k23 = Pattern::parse("K2,3").unwrap();
    let two_c4 = Pattern::parse("2C4").unwrap();
    for _ in 0..200 {
        let n = rng.gen_range(6..=8);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.6) {
                    g.add_edge(u, v);
                }
            }
        }
        for p in [&k23, &two_c4] {
            assert_eq!(
                pattern::contains(&g, p).unwrap().is_some(),
                brute_contains(&g, p.target()),
                "{}",
                encode_graph6(&g)
            );
        }
    }
}
