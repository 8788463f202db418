//! Named small graphs. Graphs pinned down by explicit edge lists are
//! written out; the rest are found by a deterministic search for a graph
//! meeting the contract. Every entry is checked against its contract
//! before it is returned.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::{outer_snake, q_triangulation, Contract};
use crate::canon;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::pattern::{self, contains_k2t};
use crate::planar;

pub const WITNESS_IDS: &[&str] = &[
    "prism",
    "lemma88-g1",
    "lemma88-g2",
    "lemma88-g3",
    "k1-c5",
    "q2-minus-u",
    "q2-prime",
    "q2-prime-minus-u",
    "q2-double-prime",
    "o7-prime",
    "o8-prime",
    "j",
    "j-prime",
    "j-double-prime",
    "d6",
    "d7",
];

fn one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    let shifted: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Graph::from_edges(n, &shifted).expect("fixed edge list")
}

fn cube() -> Graph {
    let mut g = Graph::new(8);
    for v in 0..8 {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w);
            }
        }
    }
    g
}

/// The cubic graph without triangles in which some vertex's second
/// neighbourhood induces a path.
fn lemma88_g2() -> Graph {
    one_based(8, &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (4, 5), (4, 8), (5, 6), (6, 7), (7, 8)])
}

/// Two copies of `K_4` minus an edge, joined by two edges between their
/// degree-2 vertices.
fn lemma88_g3() -> Graph {
    Graph::from_edges(
        8,
        &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (0, 4), (3, 7)],
    )
    .expect("fixed edge list")
}

/// Adds `count` edges among vertices of degree at most 3, choosing the
/// lexicographically least set that keeps the graph planar, of maximum
/// degree 4 and `K_{2,3}`-free, and satisfies `accept`.
fn least_completion(base: &Graph, count: usize, accept: impl Fn(&Graph) -> bool) -> Option<Graph> {
    let low: Vec<usize> = (0..base.n()).filter(|&v| base.degree(v) <= 3).collect();
    let mut candidates = Vec::new();
    for (i, &a) in low.iter().enumerate() {
        for &b in &low[i + 1..] {
            if !base.has_edge(a, b) {
                candidates.push((a, b));
            }
        }
    }
    fn go(g: &mut Graph, cands: &[(usize, usize)], from: usize, left: usize, accept: &dyn Fn(&Graph) -> bool) -> bool {
        if left == 0 {
            return planar::is_planar(g) && !contains_k2t(g, 3) && accept(g);
        }
        for i in from..cands.len() {
            let (a, b) = cands[i];
            if g.degree(a) >= 4 || g.degree(b) >= 4 {
                continue;
            }
            g.add_edge(a, b);
            if go(g, cands, i + 1, left - 1, accept) {
                return true;
            }
            g.remove_edge(a, b);
        }
        false
    }
    let mut g = base.clone();
    go(&mut g, &candidates, 0, count, &accept).then_some(g)
}

/// A `K_{2,3}`-free planar graph on `n` vertices with `3n - 8` edges: the
/// first one found by deleting two edges from a triangulation, scanning
/// triangulations in canonical order and edge pairs lexicographically.
fn k23_free_near_triangulation(n: usize) -> Result<Graph> {
    for t in enumerate::enumerate_triangulations(n)? {
        let edges = t.edges();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let mut g = t.clone();
                g.remove_edge(edges[i].0, edges[i].1);
                g.remove_edge(edges[j].0, edges[j].1);
                if !contains_k2t(&g, 3) {
                    return Ok(canon::canonical(&g)?.graph());
                }
            }
        }
    }
    Err(Error::Contract(format!("no K2,3-free planar graph on {n} vertices with {} edges", 3 * n - 8)))
}

/// All planar graphs, up to isomorphism, in which vertex `i` has degree
/// `seq[i]`. Exhaustive backtracking over edges; meant for `n <= 8`.
pub fn planar_with_degree_sequence(seq: &[usize]) -> Result<Vec<Graph>> {
    let n = seq.len();
    if n > 8 {
        return Err(Error::TooLarge { what: "degree-sequence search", n, max: 8 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut found = BTreeSet::new();
    let mut left = seq.to_vec();
    fn go(
        g: &mut Graph,
        pairs: &[(usize, usize)],
        at: usize,
        left: &mut [usize],
        found: &mut BTreeSet<canon::CanonKey>,
    ) -> Result<()> {
        if left.iter().all(|&d| d == 0) {
            if planar::is_planar(g) {
                found.insert(canon::canonical(g)?.key);
            }
            return Ok(());
        }
        let Some(&(a, b)) = pairs.get(at) else { return Ok(()) };
        // vertex a gets no further chances once its pairs are past
        let last_for_a = pairs.get(at + 1).is_none_or(|p| p.0 != a);
        if left[a] > 0 && left[b] > 0 {
            left[a] -= 1;
            left[b] -= 1;
            g.add_edge(a, b);
            go(g, pairs, at + 1, left, found)?;
            g.remove_edge(a, b);
            left[a] += 1;
            left[b] += 1;
        }
        if !(last_for_a && left[a] > 0) {
            go(g, pairs, at + 1, left, found)?;
        }
        Ok(())
    }
    go(&mut Graph::try_new(n)?, &pairs, 0, &mut left, &mut found)?;
    Ok(found.into_iter().map(|k| k.to_graph()).collect())
}

fn unique_with_degrees(seq: &[usize]) -> Result<Graph> {
    let mut all = planar_with_degree_sequence(seq)?;
    if all.len() != 1 {
        return Err(Error::Contract(format!(
            "expected a unique planar graph with degree sequence {seq:?}, found {}",
            all.len()
        )));
    }
    Ok(all.remove(0))
}

fn cached(slot: &'static OnceLock<Graph>, build: impl FnOnce() -> Result<Graph>) -> Result<Graph> {
    if let Some(g) = slot.get() {
        return Ok(g.clone());
    }
    let g = build()?;
    Ok(slot.get_or_init(|| g).clone())
}

fn build(id: &str) -> Result<(Graph, Contract)> {
    static J: [OnceLock<Graph>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let sized = Contract::sized;
    // Q_2 labels: rings 0..8, u = 8, v = 9
    let q2 = || q_triangulation(2, 0);
    Ok(match id {
        "prism" => (pattern::prism(), Contract { regular: Some(3), ..sized(6, 9) }.free("K4")),
        "lemma88-g1" => (cube(), Contract { regular: Some(3), ..sized(8, 12) }.free("K4")),
        "lemma88-g2" => (lemma88_g2(), Contract { regular: Some(3), ..sized(8, 12) }.free("K4")),
        "lemma88-g3" => (lemma88_g3(), Contract { regular: Some(3), ..sized(8, 12) }.free("K4")),
        "k1-c5" => (graph::join(&graph::empty(1), &graph::cycle(5))?, sized(6, 10).free("K2,3")),
        "q2-minus-u" => (q2()?.remove_vertex(8), sized(9, 20).free("prism")),
        "q2-prime" => {
            let mut g = q2()?.remove_vertex(9);
            g.add_edge(4, 6);
            (g, Contract::triangulation(9).free("K2,4"))
        }
        "q2-prime-minus-u" => {
            let mut g = q2()?.remove_vertex(9);
            g.add_edge(4, 6);
            (g.remove_vertex(8), sized(8, 17).free("K2,4"))
        }
        "q2-double-prime" => {
            let mut g = q2()?;
            let w = g.add_vertex();
            for a in [9, 4, 5] {
                g.add_edge(w, a);
            }
            (g, Contract::triangulation(11).free("K2,4"))
        }
        "o7-prime" => {
            // joins the two degree-2 vertices and the two degree-3 vertices;
            // every such completion contains K2,3 (here 3 and 6 share 1, 2, 5)
            let mut g = outer_snake(7)?;
            let ends: Vec<Vec<usize>> =
                [2, 3].iter().map(|&d| (0..7).filter(|&v| g.degree(v) == d).collect()).collect();
            for pair in &ends {
                g.add_edge(pair[0], pair[1]);
            }
            (g, Contract { max_degree: Some(4), ..sized(7, 13) })
        }
        "o8-prime" => {
            let g = least_completion(&outer_snake(8)?, 3, |g| g.is_regular(4))
                .ok_or_else(|| Error::Contract("no admissible completion of O_8".into()))?;
            (g, Contract { regular: Some(4), ..sized(8, 16) }.free("K2,3"))
        }
        "j" => (cached(&J[0], || k23_free_near_triangulation(11))?, sized(11, 25).free("K2,3")),
        "j-prime" => (cached(&J[1], || k23_free_near_triangulation(10))?, sized(10, 22).free("K2,3")),
        "j-double-prime" => (cached(&J[2], || k23_free_near_triangulation(9))?, sized(9, 19).free("K2,3")),
        "d6" => {
            let seq = vec![5, 4, 4, 3, 3, 3];
            let g = unique_with_degrees(&seq)?;
            (g, Contract { degree_sequence: Some(seq), ..sized(6, 11) }.free("K2,4"))
        }
        "d7" => {
            let seq = vec![6, 4, 4, 4, 4, 3, 3];
            let g = unique_with_degrees(&seq)?;
            (g, Contract { degree_sequence: Some(seq), ..sized(7, 14) }.free("K2,4"))
        }
        other => return Err(Error::UnknownId(format!("witness `{other}`"))),
    })
}

/// The named graph with its contract, validated.
pub fn small_witness(id: &str) -> Result<(Graph, Contract)> {
    let (g, contract) = build(id)?;
    let bad = contract.violations(&g)?;
    if !bad.is_empty() {
        return Err(Error::Contract(format!("witness `{id}`: {}", bad.join("; "))));
    }
    Ok((g, contract))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;

    #[test]
    fn every_witness_validates() {
        for id in WITNESS_IDS {
            small_witness(id).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
        assert!(matches!(small_witness("nope"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn o7_prime_is_not_k23_free() {
        let (g, _) = small_witness("o7-prime").unwrap();
        let mut d = g.degrees();
        d.sort();
        assert_eq!(d, vec![3, 3, 4, 4, 4, 4, 4]);
        assert!(contains_k2t(&g, 3));
    }

    #[test]
    fn lemma88_graphs_distinct() {
        let gs = [cube(), lemma88_g2(), lemma88_g3()];
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!isomorphic(&gs[i], &gs[j]).unwrap());
            }
        }
    }

    #[test]
    fn degree_sequence_search() {
        // C4 is the only planar graph with four vertices of degree 2
        let all = planar_with_degree_sequence(&[2, 2, 2, 2]).unwrap();
        assert_eq!(all.len(), 1);
        // degree sequence 3,3,3,3,3,3 : prism and K3,3, only the prism is planar
        let all = planar_with_degree_sequence(&[3; 6]).unwrap();
        assert_eq!(all.len(), 1);
        assert!(isomorphic(&all[0], &pattern::prism()).unwrap());
    }
}
