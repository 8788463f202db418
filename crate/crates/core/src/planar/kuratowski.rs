use std::collections::BTreeSet;

use crate::graph::{bit, Bits, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in the tested graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Greedy edge deletion down to an edge-minimal non-planar subgraph, which
/// is a Kuratowski subdivision plus isolated vertices.
pub(super) fn extract(g: &Graph) -> Kuratowski {
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
        if super::is_planar(&h) {
            h.add_edge(u, v);
        }
    }
    let branch_vertices: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch_vertices.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    Kuratowski { kind, branch_vertices, edges: h.edges() }
}

impl Kuratowski {
    /// Checks that the witness lies in `g` and is a subdivision of its kind.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut h = Graph::new(g.n());
        for &(u, v) in &self.edges {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return false;
            }
            h.add_edge(u, v);
        }
        let (want_branch, want_deg) = match self.kind {
            KuratowskiKind::K5 => (5, 4),
            KuratowskiKind::K33 => (6, 3),
        };
        if self.branch_vertices.len() != want_branch {
            return false;
        }
        let branch: u64 = self.branch_vertices.iter().fold(0, |m, &v| m | bit(v));
        for v in 0..h.n() {
            let d = h.degree(v);
            let ok = if branch & bit(v) != 0 { d == want_deg } else { d == 0 || d == 2 };
            if !ok {
                return false;
            }
        }
        // contract subdivision paths
        let mut pairs = BTreeSet::new();
        for &b in &self.branch_vertices {
            for first in Bits(h.row(b)) {
                let (mut prev, mut cur) = (b, first);
                while branch & bit(cur) == 0 {
                    let next = (h.row(cur) & !bit(prev)).trailing_zeros() as usize;
                    prev = cur;
                    cur = next;
                }
                if cur == b {
                    return false;
                }
                pairs.insert((b.min(cur), b.max(cur)));
            }
        }
        match self.kind {
            KuratowskiKind::K5 => pairs.len() == 10,
            KuratowskiKind::K33 => {
                if pairs.len() != 9 {
                    return false;
                }
                // bipartition with parts of size three
                let a = self.branch_vertices[0];
                let side: Vec<usize> = self
                    .branch_vertices
                    .iter()
                    .copied()
                    .filter(|&v| v != a && !pairs.contains(&(a.min(v), a.max(v))))
                    .collect();
                side.len() == 2 && !pairs.contains(&(side[0].min(side[1]), side[0].max(side[1])))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, join};
    use crate::planar::{test_planarity, Planarity};

    #[test]
    fn witnesses_validate() {
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let k6 = complete(6);
        let k34 = complete_bipartite(3, 4);
        let wheel_plus = join(&complete(2), &complete_bipartite(1, 3)).unwrap();
        for g in [petersen, k6, k34, complete(5), complete_bipartite(3, 3), wheel_plus] {
            match test_planarity(&g) {
                Planarity::NonPlanar(k) => assert!(k.validate(&g), "bad witness for {g:?}"),
                Planarity::Planar(_) => panic!("{g:?} reported planar"),
            }
        }
    }
}
