//! Extremal constructions and their contracts.
//!
//! Labeling conventions:
//!
//! * Layered cylinders (`q_triangulation`, `hex_cylinder`, `hex_family`):
//!   ring `i` (1-based) of width `w` holds `u_{i,j} = w*(i-1) + (j-1)`.
//!   Caps follow in order: wheels as centre then rim, then extra vertices.
//! * Apex constructions put the base first and the apexes last.
//! * `t_stack` marks `x = 0`, `y = 1`; the path of the join is `2..m`,
//!   stacked vertices follow.

mod witnesses;

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{self, Graph};
use crate::pattern::{self, Pattern};
use crate::planar;

pub use witnesses::{planar_with_degree_sequence, small_witness, WITNESS_IDS};

/// A graph with two marked adjacent vertices, the gluing edge for
/// [`paste_along_k2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub x: usize,
    pub y: usize,
}

impl MarkedGraph {
    pub fn new(graph: Graph, x: usize, y: usize) -> Result<MarkedGraph> {
        if x == y || x >= graph.n() || y >= graph.n() || !graph.has_edge(x, y) {
            return Err(invalid(format!("marked pair ({x}, {y}) is not an edge")));
        }
        Ok(MarkedGraph { graph, x, y })
    }
}

/// `2K_1 + C_{n-2}`: cycle on `0..n-2`, apexes `n-2` and `n-1`.
pub fn double_wheel(n: usize) -> Result<Graph> {
    if n < 6 {
        return Err(invalid(format!("double wheel needs n >= 6, got {n}")));
    }
    graph::join(&graph::cycle(n - 2), &graph::empty(2))
}

/// `K_2 + P_{m-2}` with the `K_2` on vertices 0 and 1.
pub fn stacked_join(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(invalid(format!("K2 + P(m-2) needs m >= 2, got {m}")));
    }
    if m == 2 {
        return Ok(graph::complete(2));
    }
    graph::join(&graph::complete(2), &graph::path(m - 2))
}

fn ring_edges(g: &mut Graph, rings: usize, width: usize) {
    let u = |i: usize, j: usize| width * i + (j % width);
    for i in 0..rings {
        for j in 0..width {
            g.add_edge(u(i, j), u(i, j + 1));
            if i + 1 < rings {
                g.add_edge(u(i, j), u(i + 1, j));
                g.add_edge(u(i, j), u(i + 1, j + 1));
            }
        }
    }
}

/// The prism-free triangulation on `4k + 2 + l` vertices: `k` stacked
/// 4-rings capped by `u = 4k` and `v = 4k+1`, with `x_j = 4k+2+(j-1)`
/// stacked on the faces `(u_{k-1,j}, u_{k,j}, u_{k,j+1})`.
pub fn q_triangulation(k: usize, l: usize) -> Result<Graph> {
    if k < 2 || l > 3 {
        return Err(invalid(format!("q_triangulation needs k >= 2 and l <= 3, got k={k}, l={l}")));
    }
    let n = 4 * k + 2 + l;
    let mut g = Graph::try_new(n)?;
    ring_edges(&mut g, k, 4);
    let (u, v) = (4 * k, 4 * k + 1);
    for j in 0..4 {
        g.add_edge(u, j);
        g.add_edge(v, 4 * (k - 1) + j);
    }
    for j in 0..l {
        let x = 4 * k + 2 + j;
        for w in [4 * (k - 2) + j, 4 * (k - 1) + j, 4 * (k - 1) + (j + 1) % 4] {
            g.add_edge(x, w);
        }
    }
    Ok(g)
}

/// `2C_3`-free graph with `ceil(5n/2) - 5` edges: path `0..n-2`, apex
/// `u = n-2` on the path and `v`, and `v = n-1` on a maximum independent
/// set of the path containing both ends.
pub fn tc3_lower(n: usize) -> Result<Graph> {
    if n < 6 {
        return Err(invalid(format!("tc3_lower needs n >= 6, got {n}")));
    }
    let p = n - 2;
    let mut g = graph::union(&[&graph::path(p), &graph::empty(2)])?;
    let (u, v) = (n - 2, n - 1);
    for i in 0..p {
        g.add_edge(u, i);
    }
    g.add_edge(u, v);
    let independent: Vec<usize> =
        if p % 2 == 1 { (0..p).step_by(2).collect() } else { (0..p - 3).step_by(2).chain([p - 1]).collect() };
    for s in independent {
        g.add_edge(v, s);
    }
    Ok(g)
}

/// Two adjacent apexes over a linear forest: `t` paths on `k-2` vertices,
/// one on `2k-3`, and one on `r = (n-3) mod (k-2)` vertices.
pub fn two_ck_lower(n: usize, k: usize) -> Result<Graph> {
    if k < 4 || n < 2 * k {
        return Err(invalid(format!("two_ck_lower needs n >= 2k >= 8, got n={n}, k={k}")));
    }
    let r = (n - 3) % (k - 2);
    let t = (n - (2 * k - 1) - r) / (k - 2);
    let mut parts = vec![graph::path(k - 2); t];
    parts.push(graph::path(2 * k - 3));
    if r > 0 {
        parts.push(graph::path(r));
    }
    let refs: Vec<&Graph> = parts.iter().collect();
    graph::join(&graph::union(&refs)?, &graph::complete(2))
}

/// Number of 3-faces of `K_2 + P_{m-2}`.
fn join_face_count(m: usize) -> usize {
    if m <= 2 {
        0
    } else {
        2 * m - 4
    }
}

/// The 3-faces of `K_2 + P_{m-2}` (labels as in [`stacked_join`]) as
/// sorted triples, in sorted order. The two faces of a triangle coincide
/// as triples and are both listed.
fn join_faces(m: usize) -> Vec<[usize; 3]> {
    let mut faces = Vec::new();
    if m == 3 {
        return vec![[0, 1, 2], [0, 1, 2]];
    }
    if m >= 4 {
        faces.push([0, 1, 2]);
        faces.push([0, 1, m - 1]);
        for i in 2..m - 1 {
            faces.push([0, i, i + 1]);
            faces.push([1, i, i + 1]);
        }
    }
    faces.sort();
    faces
}

/// `K_2 + P_{m-2}` with `s - m` vertices stacked on its 3-faces, one per
/// face, taken in sorted face order. Requires `m <= s <= 3m - 4` (or
/// `m = s = 2`).
pub fn t_stack(m: usize, s: usize) -> Result<MarkedGraph> {
    if m < 2 || s < m || s > m + join_face_count(m) {
        return Err(invalid(format!(
            "t_stack needs 2 <= m <= s <= m + {} (one vertex per 3-face), got m={m}, s={s}",
            join_face_count(m)
        )));
    }
    let mut g = stacked_join(m)?;
    for face in join_faces(m).into_iter().take(s - m) {
        let w = g.add_vertex();
        for a in face {
            g.add_edge(w, a);
        }
    }
    MarkedGraph::new(g, 0, 1)
}

/// Identifies all marked `x`s and all marked `y`s. The result marks
/// `x = 0`, `y = 1`; each part's other vertices follow in order.
pub fn paste_along_k2(parts: &[MarkedGraph]) -> Result<MarkedGraph> {
    if parts.is_empty() {
        return Err(invalid("paste_along_k2 needs at least one part"));
    }
    let n = 2 + parts.iter().map(|p| p.graph.n() - 2).sum::<usize>();
    let mut g = Graph::try_new(n)?;
    let mut next = 2;
    for p in parts {
        let mut map = vec![0; p.graph.n()];
        for (v, slot) in map.iter_mut().enumerate() {
            *slot = if v == p.x {
                0
            } else if v == p.y {
                1
            } else {
                next += 1;
                next - 1
            };
        }
        for (a, b) in p.graph.edges() {
            g.add_edge(map[a], map[b]);
        }
    }
    MarkedGraph::new(g, 0, 1)
}

/// Parts of the improved `2C_k` construction, in pasting order.
pub fn improved_parts(n: usize, k: usize) -> Result<Vec<MarkedGraph>> {
    if k < 7 {
        return Err(invalid(format!("improved 2C_k construction needs k >= 7, got k={k}")));
    }
    let p = k / 2;
    let (base, period, min_n) = if k % 2 == 1 { (p + 1, 3 * p - 3, 3 * k - 3) } else { (p, 3 * p - 6, 3 * k - 6) };
    if n < min_n {
        return Err(invalid(format!("improved 2C_k construction needs k >= 7 and n >= {min_n}, got n={n}, k={k}")));
    }
    let rest = n - (2 * k - 1);
    let (t, eps) = (rest / period, rest % period);
    let mut parts = Vec::with_capacity(t + 2);
    for _ in 0..t {
        parts.push(t_stack(base, period + 2)?);
    }
    parts.push(if eps + 2 < k { t_stack(eps + 2, eps + 2)? } else { t_stack(base, eps + 2)? });
    parts.push(t_stack(2 * k - 1, 2 * k - 1)?);
    Ok(parts)
}

/// The pasted improved `2C_k` construction.
pub fn two_ck_lower_improved(n: usize, k: usize) -> Result<Graph> {
    Ok(paste_along_k2(&improved_parts(n, k)?)?.graph)
}

/// `l` stacked hexagonal rings (a triangulated cylinder on `6l` vertices).
pub fn hex_cylinder(l: usize) -> Result<Graph> {
    if l < 1 {
        return Err(invalid("hex_cylinder needs l >= 1"));
    }
    let mut g = Graph::try_new(6 * l)?;
    ring_edges(&mut g, l, 6);
    Ok(g)
}

/// Attaches a 5-wheel (centre `c`, rim `c+1..c+5`) to hexagonal ring
/// `ring`, rim vertex `v_j` joined to `u_j` and `u_{j-1}`, with `u_6`
/// joined to `v_1` only. `shift` rotates the rim labels.
fn attach_wheel(g: &mut Graph, ring: usize, c: usize, shift: usize) {
    let u = |j: usize| 6 * ring + (j + shift) % 6;
    let v = |j: usize| c + 1 + j % 5;
    for j in 0..5 {
        g.add_edge(c, v(j));
        g.add_edge(v(j), v(j + 1));
        g.add_edge(u(j), v(j));
        g.add_edge(u(j), v(j + 1));
    }
    g.add_edge(u(5), v(0));
}

/// Joins a new vertex to the listed (1-based) positions of ring `ring`.
fn cap(g: &mut Graph, ring: usize, positions: &[usize]) -> usize {
    let w = g.add_vertex();
    for &j in positions {
        g.add_edge(w, 6 * ring + j - 1);
    }
    w
}

/// `K_{2,3}`-free triangulations on `6k + r` vertices: hexagonal rings
/// capped at both ends by 5-wheels or by one to three extra vertices.
///
/// `k = 2, r = 0` has no rings; it is read as two 5-wheels glued rim to
/// rim, the icosahedron. For `k = 3, r = 0` both wheels sit on the one
/// ring and the second is rotated by three positions so that no two rim
/// vertices share three neighbours.
pub fn hex_family(k: usize, r: usize) -> Result<Graph> {
    if k < 2 || r > 5 {
        return Err(invalid(format!("hex_family needs k >= 2 and r <= 5, got k={k}, r={r}")));
    }
    let n = 6 * k + r;
    if n > graph::MAX_VERTICES {
        return Err(Error::TooLarge { what: "hex_family", n, max: graph::MAX_VERTICES });
    }
    let mut g;
    match r {
        0 if k == 2 => {
            g = Graph::new(12);
            for j in 0..5 {
                g.add_edge(0, 1 + j);
                g.add_edge(1 + j, 1 + (j + 1) % 5);
                g.add_edge(6, 7 + j);
                g.add_edge(7 + j, 7 + (j + 1) % 5);
                g.add_edge(1 + j, 7 + j);
                g.add_edge(1 + j, 7 + (j + 1) % 5);
            }
        }
        0 => {
            let rings = k - 2;
            g = hex_cylinder(rings)?;
            let c1 = g.add_vertex();
            (0..5).for_each(|_| {
                g.add_vertex();
            });
            let c2 = g.add_vertex();
            (0..5).for_each(|_| {
                g.add_vertex();
            });
            attach_wheel(&mut g, 0, c1, 0);
            attach_wheel(&mut g, rings - 1, c2, if rings == 1 { 3 } else { 0 });
        }
        1 => {
            let rings = k - 1;
            g = hex_cylinder(rings)?;
            let c = g.add_vertex();
            (0..5).for_each(|_| {
                g.add_vertex();
            });
            attach_wheel(&mut g, rings - 1, c, 0);
            cap(&mut g, 0, &[1, 2, 3, 4, 5, 6]);
        }
        _ => {
            g = hex_cylinder(k)?;
            let last = k - 1;
            match r {
                2 => {
                    cap(&mut g, 0, &[1, 2, 3, 4, 5, 6]);
                    cap(&mut g, last, &[1, 2, 3, 4, 5, 6]);
                }
                3 => {
                    cap(&mut g, 0, &[1, 2, 3, 4, 5, 6]);
                    let a = cap(&mut g, last, &[1, 2, 3, 4]);
                    let b = cap(&mut g, last, &[1, 4, 5, 6]);
                    g.add_edge(a, b);
                }
                4 => {
                    for ring in [0, last] {
                        let a = cap(&mut g, ring, &[1, 2, 3, 4]);
                        let b = cap(&mut g, ring, &[1, 4, 5, 6]);
                        g.add_edge(a, b);
                    }
                }
                _ => {
                    let a = cap(&mut g, 0, &[1, 2, 3, 4]);
                    let b = cap(&mut g, 0, &[1, 4, 5, 6]);
                    g.add_edge(a, b);
                    let a = cap(&mut g, last, &[1, 2, 3]);
                    let b = cap(&mut g, last, &[3, 4, 5]);
                    let c = cap(&mut g, last, &[1, 5, 6]);
                    g.add_edge(a, b);
                    g.add_edge(b, c);
                    g.add_edge(a, c);
                }
            }
        }
    }
    Ok(g)
}

/// Chords of the zigzag outerplanar graph, 0-based:
/// `(1, n-1), (2, n-1), (2, n-2), (3, n-2), ...`.
fn snake_chords(n: usize) -> Vec<(usize, usize)> {
    (0..n - 3)
        .map(|c| if c % 2 == 0 { (1 + c / 2, n - 1 - c / 2) } else { (1 + c.div_ceil(2), n - 1 - c / 2) })
        .collect()
}

/// The maximal outerplanar graph with maximum degree 4: the `n`-cycle
/// plus a zigzag of `n - 3` chords.
pub fn outer_snake(n: usize) -> Result<Graph> {
    if n < 5 {
        return Err(invalid(format!("outer_snake needs n >= 5, got {n}")));
    }
    let mut g = graph::cycle(n);
    for (a, b) in snake_chords(n) {
        g.add_edge(a, b);
    }
    Ok(g)
}

/// `K_1 + O_{n-1}`, apex last.
pub fn apex_outer_snake(n: usize) -> Result<Graph> {
    if n < 6 {
        return Err(invalid(format!("apex_outer_snake needs n >= 6, got {n}")));
    }
    graph::join(&outer_snake(n - 1)?, &graph::empty(1))
}

/// `K_2 + (P_3 u P_{n-5})`, the `K_2` last.
pub fn k2_join_p3_path(n: usize) -> Result<Graph> {
    if n < 6 {
        return Err(invalid(format!("K2 + (P3 u P(n-5)) needs n >= 6, got {n}")));
    }
    graph::join(&graph::union(&[&graph::path(3), &graph::path(n - 5)])?, &graph::complete(2))
}

/// What a construction promises about its output.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Contract {
    pub vertices: usize,
    pub edges: usize,
    pub triangulation: bool,
    pub outerplanar: bool,
    pub max_degree: Option<usize>,
    pub regular: Option<usize>,
    /// non-increasing
    pub degree_sequence: Option<Vec<usize>>,
    pub free_of: Vec<String>,
}

impl Contract {
    fn sized(vertices: usize, edges: usize) -> Contract {
        Contract { vertices, edges, ..Contract::default() }
    }

    fn triangulation(n: usize) -> Contract {
        Contract { triangulation: true, ..Contract::sized(n, 3 * n - 6) }
    }

    fn free(mut self, pattern: &str) -> Contract {
        self.free_of.push(pattern.to_string());
        self
    }

    /// Violations of the contract (planarity is always required); empty
    /// when the graph conforms.
    pub fn violations(&self, g: &Graph) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if g.n() != self.vertices {
            out.push(format!("expected {} vertices, found {}", self.vertices, g.n()));
        }
        if g.edge_count() != self.edges {
            out.push(format!("expected {} edges, found {}", self.edges, g.edge_count()));
        }
        if !planar::is_planar(g) {
            out.push("not planar".into());
        }
        if self.triangulation && !planar::is_triangulation(g) {
            out.push("not a triangulation".into());
        }
        if self.outerplanar && !planar::is_outerplanar(g) {
            out.push("not outerplanar".into());
        }
        if let Some(d) = self.max_degree {
            if g.max_degree() != d {
                out.push(format!("expected maximum degree {d}, found {}", g.max_degree()));
            }
        }
        if let Some(d) = self.regular {
            if !g.is_regular(d) {
                out.push(format!("not {d}-regular"));
            }
        }
        if let Some(seq) = &self.degree_sequence {
            if &g.degree_sequence() != seq {
                out.push(format!("degree sequence {:?} != {:?}", g.degree_sequence(), seq));
            }
        }
        for p in &self.free_of {
            if !pattern::is_free(g, &Pattern::parse(p)?)? {
                out.push(format!("contains {p}"));
            }
        }
        Ok(out)
    }
}

/// Family id plus parameters, as accepted by the CLI.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    pub family: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub r: Option<usize>,
    pub m: Option<usize>,
    pub s: Option<usize>,
    pub id: Option<String>,
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (name, v) in [("n", self.n), ("k", self.k), ("l", self.l), ("r", self.r), ("m", self.m), ("s", self.s)] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        if let Some(id) = &self.id {
            write!(f, " id={id}")?;
        }
        Ok(())
    }
}

pub const FAMILY_IDS: &[&str] = &[
    "double-wheel",
    "stacked-join",
    "q",
    "tc3",
    "two-ck",
    "t-stack",
    "two-ck-improved",
    "hex-cylinder",
    "hex",
    "outer-snake",
    "apex-outer-snake",
    "k2-p3-path",
    "witness",
];

#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub graph: Graph,
    pub contract: Contract,
}

impl Construction {
    pub fn violations(&self) -> Result<Vec<String>> {
        self.contract.violations(&self.graph)
    }
}

fn need(v: Option<usize>, name: &str, family: &str) -> Result<usize> {
    v.ok_or_else(|| invalid(format!("family `{family}` needs --{name}")))
}

/// `ceil(5n/2) - 5`
pub fn tc3_edges(n: usize) -> usize {
    (5 * n).div_ceil(2) - 5
}

/// Builds a construction and states its contract. The contract is not
/// checked here; see [`Construction::violations`].
pub fn construct(spec: &ConstructionSpec) -> Result<Construction> {
    let f = spec.family.as_str();
    let (graph, contract) = match f {
        "double-wheel" => {
            let n = need(spec.n, "n", f)?;
            (double_wheel(n)?, Contract::triangulation(n).free("K4"))
        }
        "stacked-join" => {
            let m = need(spec.m.or(spec.n), "m", f)?;
            let c = if m >= 3 { Contract::triangulation(m) } else { Contract::sized(m, m - 1) };
            (stacked_join(m)?, c)
        }
        "q" => {
            let (k, l) = (need(spec.k, "k", f)?, spec.l.unwrap_or(0));
            (q_triangulation(k, l)?, Contract::triangulation(4 * k + 2 + l).free("prism"))
        }
        "tc3" => {
            let n = need(spec.n, "n", f)?;
            (tc3_lower(n)?, Contract::sized(n, tc3_edges(n)).free("2C3"))
        }
        "two-ck" => {
            let (n, k) = (need(spec.n, "n", f)?, need(spec.k, "k", f)?);
            let g = two_ck_lower(n, k)?;
            let e = crate::extremal::lemma2_edges(n, k)?;
            (g, Contract::sized(n, e).free(&format!("2C{k}")))
        }
        "t-stack" => {
            let (m, s) = (need(spec.m, "m", f)?, need(spec.s, "s", f)?);
            let c = if s >= 3 { Contract::triangulation(s) } else { Contract::sized(s, 1) };
            (t_stack(m, s)?.graph, c)
        }
        "two-ck-improved" => {
            let (n, k) = (need(spec.n, "n", f)?, need(spec.k, "k", f)?);
            let g = two_ck_lower_improved(n, k)?;
            let e = crate::extremal::lemma3_edges(n, k)?;
            (g, Contract::sized(n, e).free(&format!("2C{k}")))
        }
        "hex-cylinder" => {
            let l = need(spec.l, "l", f)?;
            let g = hex_cylinder(l)?;
            let e = if l == 1 { 6 } else { 18 * l - 12 };
            (g, Contract::sized(6 * l, e))
        }
        "hex" => {
            let (k, r) = (need(spec.k, "k", f)?, spec.r.unwrap_or(0));
            (hex_family(k, r)?, Contract::triangulation(6 * k + r).free("K2,3"))
        }
        "outer-snake" => {
            let n = need(spec.n, "n", f)?;
            let c = Contract { outerplanar: true, max_degree: Some(4), ..Contract::sized(n, 2 * n - 3) };
            (outer_snake(n)?, c.free("K2,3"))
        }
        "apex-outer-snake" => {
            let n = need(spec.n, "n", f)?;
            (apex_outer_snake(n)?, Contract::triangulation(n).free("K2,5"))
        }
        "k2-p3-path" => {
            let n = need(spec.n, "n", f)?;
            (k2_join_p3_path(n)?, Contract::sized(n, 3 * n - 7).free("prism"))
        }
        "witness" => {
            let id = spec.id.as_deref().ok_or_else(|| invalid("family `witness` needs --id"))?;
            let (g, c) = small_witness(id)?;
            (g, c)
        }
        other => return Err(Error::UnknownId(format!("family `{other}`"))),
    };
    Ok(Construction { spec: spec.clone(), graph, contract })
}
