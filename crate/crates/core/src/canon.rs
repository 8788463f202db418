//! Canonical labelling for small graphs.
//!
//! Equitable-partition refinement followed by an individualisation search
//! tree. Leaves are compared by the packed upper adjacency triangle of the
//! relabelled graph and the largest one wins. Automorphisms discovered at
//! leaves prune sibling subtrees (orbit pruning under the pointwise
//! stabiliser of the current prefix) and let the search abandon subtrees
//! equivalent to the first path. The discovered automorphisms generate the
//! full automorphism group, so their orbits are exact.

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};

/// Largest vertex count supported by [`canonical`]; the key packs the
/// 120 upper-triangle bits of a 16-vertex graph into a `u128`.
pub const MAX_CANON_VERTICES: usize = 16;

/// Total-order key: equal iff the graphs are isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    n: u8,
    bits: u128,
}

impl CanonKey {
    /// Key of `g` under its own labelling (no canonicalisation).
    pub fn of_labeled(g: &Graph) -> CanonKey {
        let order: Vec<usize> = (0..g.n()).collect();
        CanonKey { n: g.n() as u8, bits: pack(g, &order) }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Rebuilds the canonical graph this key encodes.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let mut g = Graph::new(n);
        let total = n * n.saturating_sub(1) / 2;
        let mut idx = 0;
        for p in 1..n {
            for q in 0..p {
                let shift = total - 1 - idx;
                if (self.bits >> shift) & 1 == 1 {
                    g.add_edge(p, q);
                }
                idx += 1;
            }
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonKey,
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: Vec<usize>,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        self.key.to_graph()
    }
}

/// Canonical form plus the automorphism group it uncovered.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// Generators of Aut(g); `gen[v]` is the image of `v`.
    pub generators: Vec<Vec<usize>>,
    /// `orbits[v]` is the least vertex in the orbit of `v`.
    pub orbits: Vec<usize>,
}

impl Labeling {
    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbits[u] == self.orbits[v]
    }
}

pub fn canonical(g: &Graph) -> Result<CanonicalForm> {
    Ok(label(g)?.form)
}

pub fn isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    if g.degree_sequence() != h.degree_sequence() {
        return Ok(false);
    }
    Ok(canonical(g)?.key == canonical(h)?.key)
}

pub fn label(g: &Graph) -> Result<Labeling> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::TooLarge { what: "canonical labelling", n, max: MAX_CANON_VERTICES });
    }
    if n == 0 {
        return Ok(Labeling {
            form: CanonicalForm { key: CanonKey { n: 0, bits: 0 }, perm: vec![] },
            generators: vec![],
            orbits: vec![],
        });
    }
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells);
    let mut search = Search { g, first: None, best: None, generators: Vec::new() };
    let mut prefix = Vec::with_capacity(n);
    search.descend(cells, &mut prefix, None);

    let best = search.best.expect("search reaches at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in best.order.iter().enumerate() {
        perm[v] = pos;
    }
    let orbits = orbits_of(n, &search.generators);
    Ok(Labeling {
        form: CanonicalForm { key: CanonKey { n: n as u8, bits: best.key }, perm },
        generators: search.generators,
        orbits,
    })
}

fn orbits_of(n: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gamma in gens {
        for v in 0..n {
            let a = find(&mut parent, v);
            let b = find(&mut parent, gamma[v]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Upper-triangle bits of `g` relabelled so that position `p` holds
/// vertex `order[p]`, most significant first.
fn pack(g: &Graph, order: &[usize]) -> u128 {
    let mut key: u128 = 0;
    for p in 1..order.len() {
        let row = g.row(order[p]);
        for &w in &order[..p] {
            key = (key << 1) | ((row >> w) & 1) as u128;
        }
    }
    key
}

/// Refines the ordered partition `cells` to the coarsest equitable
/// refinement. Fragments of a split cell are ordered by ascending
/// neighbour count, which keeps the result labelling-invariant.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut s = 0;
    while s < cells.len() {
        let splitter = cells[s];
        let mut split_any = false;
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell.count_ones() == 1 {
                i += 1;
                continue;
            }
            // (count, members) buckets, at most 17 distinct counts for n <= 16
            let mut buckets: Vec<(u32, u64)> = Vec::new();
            for v in Bits(cell) {
                let c = (g.row(v) & splitter).count_ones();
                match buckets.iter_mut().find(|b| b.0 == c) {
                    Some(b) => b.1 |= bit(v),
                    None => buckets.push((c, bit(v))),
                }
            }
            if buckets.len() == 1 {
                i += 1;
                continue;
            }
            buckets.sort_unstable_by_key(|b| b.0);
            let k = buckets.len();
            cells.splice(i..=i, buckets.into_iter().map(|b| b.1));
            i += k;
            split_any = true;
        }
        if split_any {
            s = 0;
        } else {
            s += 1;
        }
    }
}

struct Leaf {
    key: u128,
    order: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    /// Explores the subtree at `cells`. `diverged` is the depth at which
    /// this path left the first path, `None` while still on it. Returns
    /// `Some(d)` to unwind to depth `d`.
    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>, diverged: Option<usize>) -> Option<usize> {
        let depth = prefix.len();
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(ti) = target else {
            return self.leaf(&cells, diverged);
        };
        let cell = cells[ti];
        let mut tried = 0u64;
        for v in Bits(cell) {
            if tried != 0 && self.stabiliser_orbit(v, prefix) & tried != 0 {
                continue;
            }
            let child_diverged = match diverged {
                Some(d) => Some(d),
                None if tried == 0 => None,
                None => Some(depth),
            };
            tried |= bit(v);
            let mut child = cells.clone();
            child[ti] = cell & !bit(v);
            child.insert(ti, bit(v));
            refine(self.g, &mut child);
            prefix.push(v);
            let jump = self.descend(child, prefix, child_diverged);
            prefix.pop();
            match jump {
                Some(d) if d == depth => continue,
                Some(d) => return Some(d),
                None => {}
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], diverged: Option<usize>) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let key = pack(self.g, &order);
        let Some(first) = &self.first else {
            self.first = Some(Leaf { key, order: order.clone() });
            self.best = Some(Leaf { key, order });
            return None;
        };
        if key == first.key {
            let gamma = map_between(&first.order, &order);
            self.generators.push(gamma);
            return diverged;
        }
        let best = self.best.as_mut().expect("best set with first");
        if key == best.key {
            let gamma = map_between(&best.order, &order);
            self.generators.push(gamma);
        } else if key > best.key {
            *best = Leaf { key, order };
        }
        None
    }

    /// Orbit of `v` under the known generators that fix `prefix` pointwise.
    fn stabiliser_orbit(&self, v: usize, prefix: &[usize]) -> u64 {
        let gens: Vec<&Vec<usize>> = self.generators.iter().filter(|g| prefix.iter().all(|&p| g[p] == p)).collect();
        let mut orbit = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut next = 0u64;
            for w in Bits(frontier) {
                for g in &gens {
                    next |= bit(g[w]);
                }
            }
            next &= !orbit;
            orbit |= next;
            frontier = next;
        }
        orbit
    }
}

/// Permutation sending `from[i]` to `to[i]`.
fn map_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (a, b) in from.iter().zip(to) {
        gamma[*a] = *b;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, empty, join, path};

    #[test]
    fn c4_is_k22() {
        assert!(isomorphic(&cycle(4), &complete_bipartite(2, 2)).unwrap());
    }

    #[test]
    fn p4_is_not_star() {
        assert!(!isomorphic(&path(4), &complete_bipartite(1, 3)).unwrap());
    }

    #[test]
    fn perm_realises_key() {
        let g = join(&empty(2), &cycle(4)).unwrap();
        let form = canonical(&g).unwrap();
        assert_eq!(CanonKey::of_labeled(&g.relabel(&form.perm)), form.key);
        assert_eq!(form.graph(), g.relabel(&form.perm));
    }

    #[test]
    fn octahedron_group() {
        let g = join(&empty(2), &cycle(4)).unwrap();
        let l = label(&g).unwrap();
        // vertex-transitive
        assert!(l.orbits.iter().all(|&o| o == 0));
        for gamma in &l.generators {
            assert_eq!(g.relabel(gamma), g);
        }
    }

    #[test]
    fn path_orbits() {
        let l = label(&path(5)).unwrap();
        assert_eq!(l.orbits, vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn too_large() {
        assert!(matches!(canonical(&empty(17)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn empty_graphs() {
        let a = canonical(&empty(0)).unwrap();
        assert_eq!(a.key.n(), 0);
        let l = label(&empty(9)).unwrap();
        assert!(l.orbits.iter().all(|&o| o == 0));
    }
}
