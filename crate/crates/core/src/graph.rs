//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex, so neighbourhood
//! intersections and degree counts are single machine operations. Every
//! construction in this crate stays well below the 64-vertex ceiling.

use std::fmt;

use crate::error::{invalid, Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics above [`MAX_VERTICES`]; use
    /// [`Graph::try_new`] for untrusted sizes.
    pub fn new(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "graph on {n} vertices exceeds {MAX_VERTICES}");
        Graph { n, adj: vec![0; n] }
    }

    pub fn try_new(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { what: "Graph", n, max: MAX_VERTICES });
        }
        Ok(Graph::new(n))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::try_new(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows. Rows are symmetrised and the
    /// diagonal is cleared.
    pub fn from_rows(rows: &[u64]) -> Graph {
        let n = rows.len();
        let mut g = Graph::new(n);
        let m = low_mask(n);
        for (u, &r) in rows.iter().enumerate() {
            for v in Bits(r & m & !bit(u)) {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Appends an isolated vertex and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        assert!(self.n < MAX_VERTICES);
        self.adj.push(0);
        self.n += 1;
        self.n - 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.reach(s, self.vertex_mask());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `allowed` (which must contain `s`).
    pub fn reach(&self, s: usize, allowed: u64) -> u64 {
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced on `mask`, vertices relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for w in Bits(self.adj[v] & mask) {
                if index[w] > i {
                    g.add_edge(i, index[w]);
                }
            }
        }
        g
    }

    /// `G \ S`: deletes the vertices in `mask`.
    pub fn remove_vertices(&self, mask: u64) -> Graph {
        self.induced(self.vertex_mask() & !mask)
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.remove_vertices(bit(v))
    }

    /// Number of common neighbours of `u` and `v`.
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        (self.adj[u] & self.adj[v]).count_ones() as usize
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// The primitive graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitive {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
}

/// Builds the named graph with canonical labels `0..n`.
///
/// Paths and cycles are labelled in traversal order; `K_{s,t}` puts the
/// `s`-side first.
pub fn primitive(kind: Primitive) -> Result<Graph> {
    match kind {
        Primitive::Empty(n) => Graph::try_new(n),
        Primitive::Path(n) => {
            let mut g = Graph::try_new(n)?;
            for i in 1..n {
                g.add_edge(i - 1, i);
            }
            Ok(g)
        }
        Primitive::Cycle(n) => {
            if n < 3 {
                return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
            }
            let mut g = primitive(Primitive::Path(n))?;
            g.add_edge(n - 1, 0);
            Ok(g)
        }
        Primitive::Complete(n) => {
            let mut g = Graph::try_new(n)?;
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
        Primitive::CompleteBipartite(s, t) => {
            if s < 1 || t < 1 {
                return Err(invalid(format!("K_{{s,t}} needs s,t >= 1, got ({s},{t})")));
            }
            let mut g = Graph::try_new(s + t)?;
            for u in 0..s {
                for v in s..s + t {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
    }
}

pub fn path(n: usize) -> Graph {
    primitive(Primitive::Path(n)).expect("path size")
}

pub fn cycle(n: usize) -> Graph {
    primitive(Primitive::Cycle(n)).expect("cycle size")
}

pub fn complete(n: usize) -> Graph {
    primitive(Primitive::Complete(n)).expect("complete size")
}

pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    primitive(Primitive::CompleteBipartite(s, t)).expect("bipartite size")
}

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

/// Disjoint union; the vertices of `gs[i]` follow those of `gs[i-1]`.
pub fn union(gs: &[&Graph]) -> Result<Graph> {
    let total: usize = gs.iter().map(|g| g.n()).sum();
    let mut out = Graph::try_new(total)?;
    let mut off = 0;
    for g in gs {
        for (u, v) in g.edges() {
            out.add_edge(u + off, v + off);
        }
        off += g.n();
    }
    Ok(out)
}

/// `tH`, the disjoint union of `t` copies of `h`.
pub fn copies(t: usize, h: &Graph) -> Result<Graph> {
    if t < 1 {
        return Err(invalid("copies needs t >= 1"));
    }
    let parts: Vec<&Graph> = std::iter::repeat_n(h, t).collect();
    union(&parts)
}

/// `G + H`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = union(&[g, h])?;
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, g.n() + v);
        }
    }
    Ok(out)
}

/// `C_k^+`: the cycle `0..k` plus pendant vertex `k` attached to vertex 0.
pub fn pendant_cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(invalid(format!("C_k^+ needs k >= 3, got {k}")));
    }
    let mut g = Graph::try_new(k + 1)?;
    for i in 0..k {
        g.add_edge(i, (i + 1) % k);
    }
    g.add_edge(0, k);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitives() {
        let k3 = cycle(3);
        assert_eq!((k3.n(), k3.edge_count()), (3, 3));
        assert_eq!(k3, complete(3));
        let k23 = complete_bipartite(2, 3);
        assert_eq!((k23.n(), k23.edge_count()), (5, 6));
        let p1 = path(1);
        assert_eq!((p1.n(), p1.edge_count()), (1, 0));
        assert!(primitive(Primitive::Cycle(2)).is_err());
        assert!(primitive(Primitive::CompleteBipartite(0, 3)).is_err());
        assert!(Graph::try_new(65).is_err());
    }

    #[test]
    fn joins() {
        let oct = join(&empty(2), &cycle(4)).unwrap();
        assert_eq!((oct.n(), oct.edge_count()), (6, 12));
        let w5 = join(&complete(1), &cycle(5)).unwrap();
        assert_eq!((w5.n(), w5.edge_count()), (6, 10));
        let t6 = join(&complete(2), &path(4)).unwrap();
        assert_eq!((t6.n(), t6.edge_count()), (6, 12));
    }

    #[test]
    fn unions_and_copies() {
        let g = copies(2, &cycle(3)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        assert_eq!(g.components().len(), 2);
        let g = union(&[&path(3), &path(1)]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 2));
        let g = copies(3, &cycle(4)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 12));
        assert!(copies(0, &cycle(4)).is_err());
        let e = union(&[&empty(0), &cycle(4)]).unwrap();
        assert_eq!(e, cycle(4));
    }

    #[test]
    fn pendant_cycles() {
        let g = pendant_cycle(3).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degree_sequence(), vec![3, 2, 2, 1]);
        let g = pendant_cycle(4).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 5));
        let g = pendant_cycle(6).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 7));
        assert!(pendant_cycle(2).is_err());
    }

    #[test]
    fn induced_and_removal() {
        let g = join(&empty(2), &cycle(4)).unwrap();
        let h = g.remove_vertex(0);
        assert_eq!((h.n(), h.edge_count()), (5, 8));
        let c = cycle(6).induced(0b111);
        assert_eq!(c, path(3));
    }
}
