//! Biconnected components (Tarjan, edge stack).

use crate::graph::{bit, Bits, Graph};

/// A block as adjacency rows over the original labels. Bridges are blocks
/// with a single edge.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub vertices: u64,
    pub adj: Vec<u64>,
    pub edges: usize,
}

struct State<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    out: Vec<Block>,
}

pub(crate) fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.n();
    let mut st = State { g, disc: vec![usize::MAX; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for s in 0..n {
        if st.disc[s] == usize::MAX && g.degree(s) > 0 {
            st.visit(s, usize::MAX);
        }
    }
    st.out
}

impl<'a> State<'a> {
    fn visit(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for v in Bits(self.g.row(u)) {
            if v == parent {
                continue;
            }
            if self.disc[v] == usize::MAX {
                self.stack.push((u, v));
                self.visit(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    self.pop_block(u, v);
                }
            } else if self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }

    fn pop_block(&mut self, u: usize, v: usize) {
        let mut adj = vec![0u64; self.g.n()];
        let mut vertices = 0u64;
        let mut edges = 0;
        while let Some((a, b)) = self.stack.pop() {
            adj[a] |= bit(b);
            adj[b] |= bit(a);
            vertices |= bit(a) | bit(b);
            edges += 1;
            if (a, b) == (u, v) {
                break;
            }
        }
        self.out.push(Block { vertices, adj, edges });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, union};

    #[test]
    fn path_has_bridges() {
        let b = blocks(&path(4));
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|b| b.edges == 1));
    }

    #[test]
    fn bowtie() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let b = blocks(&g);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|b| b.edges == 3));
        // two disjoint triangles: two blocks, no shared vertex
        let b = blocks(&union(&[&cycle(3), &cycle(3)]).unwrap());
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].vertices & b[1].vertices, 0);
    }
}
