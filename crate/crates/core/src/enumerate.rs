//! Isomorph-free generation of small graphs and plane triangulations.
//!
//! General graphs grow one vertex at a time by canonical augmentation: a
//! child is kept only when its newest vertex lies in the orbit of the
//! canonically chosen deletion vertex, and only one neighbourhood per
//! orbit of the parent's automorphism group is tried. The deletion vertex
//! is drawn from the vertices of minimum degree, so hereditary constraints
//! (planarity, degree and edge caps) prune every level, and a minimum
//! degree target is enforced with a lookahead. Most candidates are settled
//! by a cheap vertex invariant before any canonical labelling is needed.
//!
//! Triangulations grow from `K_4` by vertex splitting, the inverse of
//! contracting an edge that lies in no separating triangle. Each level is
//! deduplicated by canonical key.
//!
//! Every stream is returned in canonical-key order, each graph in its
//! canonical labelling, regardless of how work was scheduled.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::canon::{self, CanonKey};
use crate::error::{invalid, Error, Result};
use crate::graph::{bit, low_mask, Bits, Graph};
use crate::planar;

/// Largest `n` for [`enumerate_graphs`] without pruning constraints.
pub const MAX_UNCONSTRAINED: usize = 9;
/// Largest `n` for [`enumerate_graphs`] with planarity or a degree or
/// edge cap.
pub const MAX_CONSTRAINED: usize = 10;
pub const MAX_TRIANGULATION: usize = 12;
pub const MAX_ORACLE: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Constraints {
    pub n: usize,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub regular: Option<usize>,
    pub min_edges: Option<usize>,
    pub max_edges: Option<usize>,
    pub planar: bool,
    pub connected: bool,
}

impl Constraints {
    pub fn new(n: usize) -> Constraints {
        Constraints { n, ..Constraints::default() }
    }

    fn min_deg(&self) -> usize {
        self.min_degree.unwrap_or(0).max(self.regular.unwrap_or(0))
    }

    fn max_deg(&self) -> usize {
        let cap = self.max_degree.unwrap_or(usize::MAX).min(self.regular.unwrap_or(usize::MAX));
        cap.min(self.n.saturating_sub(1))
    }

    fn max_e(&self) -> usize {
        let n = self.n;
        let mut cap = self.max_edges.unwrap_or(usize::MAX).min(n * n.saturating_sub(1) / 2);
        if self.planar && n >= 3 {
            cap = cap.min(3 * n - 6);
        }
        cap
    }

    fn prunes(&self) -> bool {
        self.planar || self.max_degree.is_some() || self.regular.is_some() || self.max_edges.is_some()
    }

    fn validate(&self, max: usize) -> Result<()> {
        if self.min_deg() > self.max_degree.unwrap_or(usize::MAX).min(self.regular.unwrap_or(usize::MAX)) {
            return Err(invalid("minimum degree exceeds maximum degree"));
        }
        if self.min_edges.unwrap_or(0) > self.max_edges.unwrap_or(usize::MAX) {
            return Err(invalid("minimum edge count exceeds maximum"));
        }
        if self.n > max {
            return Err(Error::TooLarge { what: "graph enumeration", n: self.n, max });
        }
        Ok(())
    }

    /// Every constraint, checked on a finished graph.
    pub fn admits(&self, g: &Graph) -> bool {
        let e = g.edge_count();
        g.n() == self.n
            && (g.n() == 0 || (g.min_degree() >= self.min_deg() && g.max_degree() <= self.max_deg()))
            && self.regular.is_none_or(|k| g.is_regular(k))
            && e >= self.min_edges.unwrap_or(0)
            && e <= self.max_e()
            && (!self.connected || g.is_connected())
            && (!self.planar || planar::is_planar(g))
    }
}

/// Per-level pruning for an ancestor on `j` of the final `n` vertices.
struct Level<'a> {
    c: &'a Constraints,
    j: usize,
}

impl Level<'_> {
    fn admits(&self, g: &Graph) -> bool {
        let c = self.c;
        let remaining = c.n - self.j;
        let e = g.edge_count();
        if e > c.max_e() || (g.n() > 0 && g.max_degree() > c.max_deg()) {
            return false;
        }
        if g.n() > 0 && g.min_degree() + remaining < c.min_deg() {
            return false;
        }
        // the remaining vertices add at most min(i, cap) edges each
        let gain: usize = (self.j..c.n).map(|i| i.min(c.max_deg())).sum();
        e + gain >= c.min_edges.unwrap_or(0)
    }
}

/// Packed vertex invariant; the deletion vertex maximises it. Minimum
/// degree first, then neighbourhood degree sum, then edges among
/// neighbours.
fn deletion_invariant(g: &Graph, v: usize) -> u64 {
    let row = g.row(v);
    let deg = row.count_ones() as u64;
    let nsum: u64 = Bits(row).map(|w| g.degree(w) as u64).sum();
    let inner: u64 = Bits(row).map(|w| (g.row(w) & row).count_ones() as u64).sum::<u64>() / 2;
    ((64 - deg) << 40) | (nsum << 20) | inner
}

/// Does `child` come from its canonical parent by adding vertex `new`?
fn is_canonical_child(child: &Graph, new: usize) -> Result<bool> {
    let inv: Vec<u64> = (0..child.n()).map(|v| deletion_invariant(child, v)).collect();
    let best = *inv.iter().max().expect("non-empty child");
    if inv[new] != best {
        return Ok(false);
    }
    let ties: Vec<usize> = (0..child.n()).filter(|&v| inv[v] == best).collect();
    if ties.len() == 1 {
        return Ok(true);
    }
    let lab = canon::label(child)?;
    let pick = *ties.iter().max_by_key(|&&v| lab.form.perm[v]).expect("ties non-empty");
    Ok(lab.same_orbit(new, pick))
}

/// Is `s` the least element of its orbit under the group generated by
/// `gens` acting on vertex sets?
fn is_orbit_min(s: u64, gens: &[Vec<usize>]) -> bool {
    if gens.is_empty() {
        return true;
    }
    let image = |m: u64, g: &[usize]| Bits(m).fold(0u64, |acc, v| acc | bit(g[v]));
    let mut seen = HashSet::from([s]);
    let mut stack = vec![s];
    while let Some(m) = stack.pop() {
        for g in gens {
            let t = image(m, g);
            if t < s {
                return false;
            }
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    true
}

fn children(parent: &Graph, level: &Level<'_>) -> Result<Vec<Graph>> {
    let c = level.c;
    let p = parent.n();
    let lab = canon::label(parent)?;
    let pdeg = parent.degrees();
    let pmin = if p == 0 { usize::MAX } else { parent.min_degree() };
    let mut out = Vec::new();
    for s in 0..=low_mask(p) {
        let d = s.count_ones() as usize;
        // the new vertex must have minimum degree in the child
        if d > pmin.saturating_add(1) || d > c.max_deg() {
            continue;
        }
        if Bits(low_mask(p) & !s).any(|v| pdeg[v] < d) {
            continue;
        }
        if Bits(s).any(|v| pdeg[v] + 1 > c.max_deg()) {
            continue;
        }
        if !is_orbit_min(s, &lab.generators) {
            continue;
        }
        let mut child = parent.clone();
        let new = child.add_vertex();
        for v in Bits(s) {
            child.add_edge(new, v);
        }
        if !level.admits(&child) || !is_canonical_child(&child, new)? {
            continue;
        }
        if c.planar && !planar::is_planar(&child) {
            continue;
        }
        out.push(child);
    }
    Ok(out)
}

fn canonical_sorted(graphs: Vec<Graph>) -> Result<Vec<Graph>> {
    let mut keyed: Vec<CanonKey> =
        graphs.par_iter().map(|g| canon::canonical(g).map(|f| f.key)).collect::<Result<_>>()?;
    keyed.sort();
    Ok(keyed.into_iter().map(|k| k.to_graph()).collect())
}

/// One representative per isomorphism class satisfying `c`, in canonical
/// labelling, sorted by canonical key.
pub fn enumerate_graphs(c: &Constraints) -> Result<Vec<Graph>> {
    let max = if c.prunes() { MAX_CONSTRAINED } else { MAX_UNCONSTRAINED };
    c.validate(max)?;
    let mut level = vec![Graph::new(0)];
    for j in 1..=c.n {
        let lv = Level { c, j };
        let next: Vec<Vec<Graph>> = level.par_iter().map(|p| children(p, &lv)).collect::<Result<_>>()?;
        let flat: Vec<Graph> = next.into_iter().flatten().collect();
        level = if j == c.n { flat } else { canonical_sorted(flat)? };
    }
    let keep: Vec<Graph> = level.into_iter().filter(|g| c.admits(g)).collect();
    canonical_sorted(keep)
}

/// Vertex splits of `v` in a triangulation: for rotation `c_0..c_{d-1}`
/// and positions `i != j`, a new vertex takes `c_{i+1}..c_{j-1}` and is
/// joined to `c_i`, `c_j` and `v`.
fn splits(t: &Graph) -> Result<Vec<Graph>> {
    let emb = planar::embed(t)?;
    let mut out = Vec::new();
    for v in 0..t.n() {
        let rot = emb.rotation(v);
        let d = rot.len();
        for i in 0..d {
            for gap in 1..d {
                let j = (i + gap) % d;
                let mut g = t.clone();
                let w = g.add_vertex();
                for step in 1..gap {
                    let x = rot[(i + step) % d];
                    g.remove_edge(v, x);
                    g.add_edge(w, x);
                }
                g.add_edge(w, rot[i]);
                g.add_edge(w, rot[j]);
                g.add_edge(w, v);
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// One representative per isomorphism class of plane triangulations
/// (maximal planar graphs) on `n` vertices, sorted by canonical key.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Graph>> {
    if !(3..=MAX_TRIANGULATION).contains(&n) {
        if n > MAX_TRIANGULATION {
            return Err(Error::TooLarge { what: "triangulation enumeration", n, max: MAX_TRIANGULATION });
        }
        return Err(invalid(format!("triangulations need n >= 3, got {n}")));
    }
    if n == 3 {
        return Ok(vec![canon::canonical(&crate::graph::complete(3))?.graph()]);
    }
    let mut level = vec![canon::canonical(&crate::graph::complete(4))?.graph()];
    for _ in 5..=n {
        let cands: Vec<Vec<CanonKey>> = level
            .par_iter()
            .map(|t| splits(t)?.iter().map(|g| canon::canonical(g).map(|f| f.key)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let keys: BTreeSet<CanonKey> = cands.into_iter().flatten().collect();
        level = keys.into_iter().map(|k| k.to_graph()).collect();
    }
    Ok(level)
}

/// Brute-force reference for [`enumerate_graphs`]: every labelled graph
/// whose degrees are non-increasing in label order (every class has such
/// a labelling), filtered by the constraints and deduplicated by
/// canonical key.
pub fn filter_oracle(c: &Constraints) -> Result<Vec<Graph>> {
    c.validate(MAX_ORACLE)?;
    let n = c.n;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut found = BTreeSet::new();
    let mut g = Graph::new(n);
    oracle_step(&mut g, &pairs, 0, c, &mut found)?;
    Ok(found.into_iter().map(|k| k.to_graph()).collect())
}

fn oracle_step(
    g: &mut Graph,
    pairs: &[(usize, usize)],
    at: usize,
    c: &Constraints,
    found: &mut BTreeSet<CanonKey>,
) -> Result<()> {
    // once row `a` is complete its degree is final and bounds all later ones
    if at == pairs.len() || (at > 0 && pairs[at].0 != pairs[at - 1].0) {
        let done = if at == pairs.len() { g.n() } else { pairs[at].0 };
        for a in 1..done {
            if g.degree(a) > g.degree(a - 1) {
                return Ok(());
            }
        }
        if done > 0 && (done..g.n()).any(|b| g.degree(b) > g.degree(done - 1)) {
            return Ok(());
        }
    }
    if at == pairs.len() {
        if c.admits(g) {
            found.insert(canon::canonical(g)?.key);
        }
        return Ok(());
    }
    let (a, b) = pairs[at];
    oracle_step(g, pairs, at + 1, c, found)?;
    g.add_edge(a, b);
    oracle_step(g, pairs, at + 1, c, found)?;
    g.remove_edge(a, b);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{self, Pattern};

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_graphs(&Constraints::new(n)).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let c = Constraints { connected: true, ..Constraints::new(3) };
        assert_eq!(enumerate_graphs(&c).unwrap().len(), 2);
    }

    #[test]
    fn cubic_planar_k4_free_on_eight() {
        let c = Constraints { regular: Some(3), planar: true, ..Constraints::new(8) };
        let k4 = Pattern::parse("K4").unwrap();
        let free: Vec<Graph> =
            enumerate_graphs(&c).unwrap().into_iter().filter(|g| pattern::is_free(g, &k4).unwrap()).collect();
        assert_eq!(free.len(), 3);
    }

    #[test]
    fn triangulation_counts() {
        let counts: Vec<usize> = (3..=9).map(|n| enumerate_triangulations(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 14, 50]);
        assert!(enumerate_triangulations(13).is_err());
        assert!(enumerate_triangulations(2).is_err());
    }

    #[test]
    fn oracle_matches_small() {
        for n in 0..=6 {
            let c = Constraints::new(n);
            assert_eq!(filter_oracle(&c).unwrap(), enumerate_graphs(&c).unwrap(), "n={n}");
        }
        let c = Constraints { min_edges: Some(12), planar: true, ..Constraints::new(6) };
        assert_eq!(filter_oracle(&c).unwrap(), enumerate_triangulations(6).unwrap());
        assert!(filter_oracle(&Constraints::new(9)).is_err());
    }

    #[test]
    fn limits() {
        assert!(matches!(enumerate_graphs(&Constraints::new(10)), Err(Error::TooLarge { .. })));
        let bad = Constraints { min_degree: Some(4), max_degree: Some(3), ..Constraints::new(5) };
        assert!(enumerate_graphs(&bad).is_err());
    }
}
