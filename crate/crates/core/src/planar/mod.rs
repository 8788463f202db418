//! Planarity, combinatorial embeddings and face censuses.
//!
//! Blocks are embedded independently by path addition and glued at cut
//! vertices by concatenating their local rotations, which keeps the genus
//! at zero. Faces are traced from the rotation system with the rule
//! `(u -> v)` is followed by `(v -> succ_v(u))`; every dart lies on exactly
//! one face walk, so a bridge contributes twice to the order of its face.

mod blocks;
mod dmp;
mod kuratowski;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

pub use kuratowski::{Kuratowski, KuratowskiKind};

/// Rotation system: `rotation[v]` is the cyclic order of the neighbours of
/// `v`. Face walks are derived once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneEmbedding {
    rotation: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
}

impl PlaneEmbedding {
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> PlaneEmbedding {
        let faces = trace_faces(&rotation);
        PlaneEmbedding { rotation, faces }
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Face walks as vertex sequences; the walk `[v0, v1, ..]` uses darts
    /// `v0->v1, v1->v2, ..` and closes back to `v0`. An edgeless embedding
    /// has a single empty face.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The underlying graph.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for (v, rot) in self.rotation.iter().enumerate() {
            for &w in rot {
                if v < w {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    /// `n - e + f`; equals 2 for a connected plane graph.
    pub fn euler_characteristic(&self) -> i64 {
        self.n() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }
}

fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = rotation.len();
    if rotation.iter().all(Vec::is_empty) {
        return vec![Vec::new()];
    }
    // position of w in rotation[v]
    let mut pos = vec![vec![usize::MAX; n]; n];
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &w) in rot.iter().enumerate() {
            pos[v][w] = i;
        }
    }
    let mut used: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..n {
        for i in 0..rotation[u].len() {
            if used[u][i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, rotation[u][i]);
            loop {
                let ia = pos[a][b];
                if used[a][ia] {
                    break;
                }
                used[a][ia] = true;
                walk.push(a);
                let rb = &rotation[b];
                let next = rb[(pos[b][a] + 1) % rb.len()];
                a = b;
                b = next;
            }
            faces.push(walk);
        }
    }
    faces
}

/// Number of faces of each order (order = darts on the walk).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCensus {
    pub by_order: BTreeMap<usize, usize>,
    pub total: usize,
}

impl FaceCensus {
    /// `f_i`, the number of `i`-faces.
    pub fn count(&self, order: usize) -> usize {
        self.by_order.get(&order).copied().unwrap_or(0)
    }

    /// `sum_i i * f_i`, which is `2e` for every embedding.
    pub fn weighted_sum(&self) -> usize {
        self.by_order.iter().map(|(i, f)| i * f).sum()
    }
}

pub fn face_census(emb: &PlaneEmbedding) -> FaceCensus {
    let mut by_order = BTreeMap::new();
    for f in emb.faces() {
        *by_order.entry(f.len()).or_insert(0) += 1;
    }
    FaceCensus { by_order, total: emb.faces().len() }
}

#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(PlaneEmbedding),
    NonPlanar(Kuratowski),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Rotation system for any planar graph (components embedded separately),
/// or `None` if some block is non-planar.
fn rotation_system(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks::blocks(g) {
        if block.edges == 1 {
            let mut it = Bits(block.vertices);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            rotation[a].push(b);
            rotation[b].push(a);
            continue;
        }
        let faces = dmp::embed_block(&block)?;
        // succ[v][u] = w  when dart u->v is followed by v->w
        let mut succ = vec![[u8::MAX; 64]; n];
        for f in &faces {
            let len = f.len();
            for i in 0..len {
                let (u, v, w) = (f[i], f[(i + 1) % len], f[(i + 2) % len]);
                succ[v][u] = w as u8;
            }
        }
        for v in Bits(block.vertices) {
            let start = block.adj[v].trailing_zeros() as usize;
            let mut w = start;
            loop {
                rotation[v].push(w);
                w = succ[v][w] as usize;
                if w == start {
                    break;
                }
            }
        }
    }
    Some(rotation)
}

/// Planarity decision without a witness.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    if n <= 4 {
        return true;
    }
    let n_vertices_ok = |b: &blocks::Block| {
        let k = b.vertices.count_ones() as usize;
        b.edges <= 1 || b.edges <= 3 * k - 6
    };
    blocks::blocks(g).iter().all(|b| n_vertices_ok(b) && (b.edges == 1 || dmp::embed_block(b).is_some()))
}

/// Planarity decision with a witness: an embedding (all components) or a
/// Kuratowski subdivision.
pub fn test_planarity(g: &Graph) -> Planarity {
    match rotation_system(g) {
        Some(rot) => Planarity::Planar(PlaneEmbedding::from_rotation(rot)),
        None => Planarity::NonPlanar(kuratowski::extract(g)),
    }
}

/// Embedding of a connected planar graph.
pub fn embed(g: &Graph) -> Result<PlaneEmbedding> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    rotation_system(g).map(PlaneEmbedding::from_rotation).ok_or(Error::NotPlanar)
}

/// Maximal planar with at least three vertices.
pub fn is_triangulation(g: &Graph) -> bool {
    let n = g.n();
    n >= 3 && g.edge_count() == 3 * n - 6 && g.is_connected() && is_planar(g)
}

/// All vertices can lie on one face: `g` plus an apex is planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    if g.n() >= crate::graph::MAX_VERTICES {
        return false;
    }
    let mut h = g.clone();
    let apex = h.add_vertex();
    for v in 0..apex {
        h.add_edge(apex, v);
    }
    is_planar(&h)
}
