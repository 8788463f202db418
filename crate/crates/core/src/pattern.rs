//! Forbidden-subgraph patterns and exact (non-induced) containment.
//!
//! Grammar (ASCII):
//!
//! ```text
//! expr   := clause (" U " clause)*
//! clause := [INT] atom
//! atom   := "C" INT ["^+"] | "K" INT | "K" INT "," INT | "prism" | "g6:" GRAPH6
//! ```
//!
//! Containment searches the components of the pattern one at a time,
//! largest first, each embedded injectively into the vertices not used by
//! earlier components. Partial states are deduplicated by the set of host
//! vertices used so far, since the remaining search depends only on that
//! set.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{self, bit, Bits, Graph};
use crate::graph6;

/// Default node limit for a single containment search.
pub const DEFAULT_NODE_LIMIT: u64 = 20_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Cycle(usize),
    PendantCycle(usize),
    Complete(usize),
    Bipartite(usize, usize),
    Prism,
    Graph6(Graph),
}

impl Atom {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Atom::Cycle(k) => graph::primitive(graph::Primitive::Cycle(*k)),
            Atom::PendantCycle(k) => graph::pendant_cycle(*k),
            Atom::Complete(k) => graph::primitive(graph::Primitive::Complete(*k)),
            Atom::Bipartite(s, t) => graph::primitive(graph::Primitive::CompleteBipartite(*s, *t)),
            Atom::Prism => Ok(prism()),
            Atom::Graph6(g) => Ok(g.clone()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cycle(k) => write!(f, "C{k}"),
            Atom::PendantCycle(k) => write!(f, "C{k}^+"),
            Atom::Complete(k) => write!(f, "K{k}"),
            Atom::Bipartite(s, t) => write!(f, "K{s},{t}"),
            Atom::Prism => write!(f, "prism"),
            Atom::Graph6(g) => write!(f, "g6:{}", graph6::encode_graph6(g)),
        }
    }
}

/// The triangular prism: triangles 0,1,2 and 3,4,5 matched by i -- i+3.
pub fn prism() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
        .expect("prism edges")
}

#[derive(Clone, Debug)]
pub struct Pattern {
    source: String,
    clauses: Vec<(usize, Atom)>,
    target: Graph,
    plan: Plan,
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Pattern> {
        let clauses = Parser { s: text.as_bytes(), pos: 0 }.expr()?;
        Pattern::from_clauses(text.trim().to_string(), clauses)
    }

    pub fn from_clauses(source: String, clauses: Vec<(usize, Atom)>) -> Result<Pattern> {
        let mut parts = Vec::new();
        for (mult, atom) in &clauses {
            let g = atom.graph()?;
            for _ in 0..*mult {
                parts.push(g.clone());
            }
        }
        let refs: Vec<&Graph> = parts.iter().collect();
        let target = graph::union(&refs)?;
        let plan = Plan::new(&target);
        Ok(Pattern { source, clauses, target, plan })
    }

    /// A pattern for an arbitrary graph.
    pub fn from_graph(g: &Graph) -> Pattern {
        Pattern::from_clauses(format!("g6:{}", graph6::encode_graph6(g)), vec![(1, Atom::Graph6(g.clone()))])
            .expect("graph patterns are always valid")
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn clauses(&self) -> &[(usize, Atom)] {
        &self.clauses
    }

    /// Normalised display form, e.g. `2C3` or `C4 U C4^+`.
    pub fn display_name(&self) -> String {
        self.clauses
            .iter()
            .map(|(m, a)| if *m == 1 { a.to_string() } else { format!("{m}{a}") })
            .collect::<Vec<_>>()
            .join(" U ")
    }

    /// `Some(t)` when the pattern is exactly `K_{2,t}`.
    pub fn as_k2t(&self) -> Option<usize> {
        match self.clauses.as_slice() {
            [(1, Atom::Bipartite(2, t))] => Some(*t),
            [(1, Atom::Bipartite(s, 2))] => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

impl std::str::FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        Pattern::parse(s)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn expect_int(&mut self, what: &str) -> Result<usize> {
        self.int().ok_or_else(|| self.err(format!("expected {what}")))
    }

    fn expr(&mut self) -> Result<Vec<(usize, Atom)>> {
        let mut out = Vec::new();
        self.skip_ws();
        loop {
            out.push(self.clause()?);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'U') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            }
        }
    }

    fn clause(&mut self) -> Result<(usize, Atom)> {
        let mult_pos = self.pos;
        let mult = self.int().unwrap_or(1);
        if mult == 0 {
            return Err(Error::Parse { pos: mult_pos, msg: "multiplicity must be at least 1".into() });
        }
        Ok((mult, self.atom()?))
    }

    fn atom(&mut self) -> Result<Atom> {
        let rest = &self.s[self.pos..];
        if rest.starts_with(b"prism") {
            self.pos += 5;
            return Ok(Atom::Prism);
        }
        if rest.starts_with(b"g6:") {
            self.pos += 3;
            let start = self.pos;
            while self.peek().is_some_and(|c| !c.is_ascii_whitespace()) {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii slice");
            let g = graph6::decode_graph6(text).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: start + pos, msg },
                other => other,
            })?;
            return Ok(Atom::Graph6(g));
        }
        let at = self.pos;
        match self.peek() {
            Some(b'C') => {
                self.pos += 1;
                let k = self.expect_int("cycle length")?;
                if k < 3 {
                    return Err(Error::Parse { pos: at, msg: format!("cycle length {k} < 3") });
                }
                if self.s[self.pos..].starts_with(b"^+") {
                    self.pos += 2;
                    Ok(Atom::PendantCycle(k))
                } else {
                    Ok(Atom::Cycle(k))
                }
            }
            Some(b'K') => {
                self.pos += 1;
                let s = self.expect_int("size")?;
                if self.peek() == Some(b',') {
                    self.pos += 1;
                    let t = self.expect_int("second part size")?;
                    if s < 1 || t < 1 {
                        return Err(Error::Parse { pos: at, msg: format!("K{s},{t} needs both parts >= 1") });
                    }
                    Ok(Atom::Bipartite(s, t))
                } else {
                    if s < 1 {
                        return Err(Error::Parse { pos: at, msg: "K0 is not a pattern".into() });
                    }
                    Ok(Atom::Complete(s))
                }
            }
            _ => Err(self.err("expected `C`, `K`, `prism` or `g6:`")),
        }
    }
}

/// Search plan for one connected pattern component.
#[derive(Clone, Debug)]
struct ComponentPlan {
    /// pattern vertices in search order
    order: Vec<usize>,
    /// for position i, positions j < i adjacent to it
    back: Vec<u64>,
    degree: Vec<usize>,
    /// image[a] < image[b] for each (a, b), checked once both are placed
    less: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
struct Plan {
    components: Vec<ComponentPlan>,
}

impl Plan {
    fn new(target: &Graph) -> Plan {
        let mut comps: Vec<u64> = target.components();
        comps.sort_by_key(|&c| {
            let edges: usize = Bits(c).map(|v| (target.row(v) & c).count_ones() as usize).sum();
            (std::cmp::Reverse(c.count_ones()), std::cmp::Reverse(edges), c.trailing_zeros())
        });
        Plan { components: comps.into_iter().map(|c| ComponentPlan::new(target, c)).collect() }
    }
}

impl ComponentPlan {
    fn new(target: &Graph, comp: u64) -> ComponentPlan {
        let deg = |v: usize| target.degree(v);
        let start = Bits(comp).max_by_key(|&v| (deg(v), std::cmp::Reverse(v))).expect("non-empty");
        let mut order = vec![start];
        let mut placed = bit(start);
        while placed != comp {
            let next = Bits(comp & !placed)
                .max_by_key(|&v| ((target.row(v) & placed).count_ones(), deg(v), std::cmp::Reverse(v)))
                .expect("remaining vertex");
            order.push(next);
            placed |= bit(next);
        }
        let mut pos = vec![usize::MAX; target.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| Bits(target.row(v) & comp).filter(|&w| pos[w] < i).fold(0u64, |m, w| m | bit(pos[w])))
            .collect();
        let degree = order.iter().map(|&v| deg(v)).collect();

        // a cycle has dihedral symmetry: fix the smallest image and a direction
        let mut less = Vec::new();
        let k = comp.count_ones() as usize;
        if k >= 3 && Bits(comp).all(|v| deg(v) == 2) {
            let c0 = start;
            let mut walk = vec![c0];
            let mut prev = c0;
            let mut cur = target.row(c0).trailing_zeros() as usize;
            while cur != c0 {
                walk.push(cur);
                let next = (target.row(cur) & !bit(prev)).trailing_zeros() as usize;
                prev = cur;
                cur = next;
            }
            for &v in &walk[1..] {
                less.push((pos[c0], pos[v]));
            }
            less.push((pos[walk[1]], pos[walk[k - 1]]));
        }
        ComponentPlan { order, back, degree, less }
    }
}

/// Exact containment search with a node budget.
struct Matcher<'a> {
    host: &'a Graph,
    host_deg: Vec<usize>,
    plan: &'a Plan,
    limit: u64,
    nodes: u64,
    seen: Vec<HashSet<u64>>,
    images: Vec<Vec<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, plan: &'a Plan, limit: u64) -> Self {
        Matcher {
            host,
            host_deg: host.degrees(),
            plan,
            limit,
            nodes: 0,
            seen: vec![HashSet::new(); plan.components.len()],
            images: plan.components.iter().map(|c| vec![usize::MAX; c.order.len()]).collect(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }

    fn component(&mut self, ci: usize, used: u64) -> Result<bool> {
        if ci == self.plan.components.len() {
            return Ok(true);
        }
        let remaining: usize = self.plan.components[ci..].iter().map(|c| c.order.len()).sum();
        if ((self.host.vertex_mask() & !used).count_ones() as usize) < remaining {
            return Ok(false);
        }
        self.place(ci, 0, used)
    }

    fn place(&mut self, ci: usize, i: usize, used: u64) -> Result<bool> {
        let plan = &self.plan.components[ci];
        if i == plan.order.len() {
            if ci + 1 == self.plan.components.len() {
                return Ok(true);
            }
            if !self.seen[ci + 1].insert(used) {
                return Ok(false);
            }
            return self.component(ci + 1, used);
        }
        let mut cand = self.host.vertex_mask() & !used;
        for j in Bits(plan.back[i]) {
            cand &= self.host.row(self.images[ci][j]);
        }
        let need = plan.degree[i];
        for v in Bits(cand) {
            self.tick()?;
            if self.host_deg[v] < need {
                continue;
            }
            let plan = &self.plan.components[ci];
            let images = &self.images[ci];
            let ok = plan.less.iter().all(|&(a, b)| {
                let ia = if a == i { v } else { images[a] };
                let ib = if b == i { v } else { images[b] };
                a.max(b) > i || ia < ib
            });
            if !ok {
                continue;
            }
            self.images[ci][i] = v;
            if self.place(ci, i + 1, used | bit(v))? {
                return Ok(true);
            }
        }
        self.images[ci][i] = usize::MAX;
        Ok(false)
    }

    fn witness(&self, pattern: &Pattern) -> Vec<usize> {
        let mut map = vec![usize::MAX; pattern.target.n()];
        for (plan, images) in self.plan.components.iter().zip(&self.images) {
            for (p, &v) in plan.order.iter().zip(images) {
                map[*p] = v;
            }
        }
        map
    }
}

/// Outcome of one containment search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Search {
    /// `witness[p]` is the host vertex of pattern vertex `p`
    pub witness: Option<Vec<usize>>,
    pub nodes: u64,
}

/// Injective, edge-preserving map from the pattern into `g` (indexed by
/// pattern vertex), using the generic engine only.
pub fn contains_generic(g: &Graph, p: &Pattern, limit: u64) -> Result<Option<Vec<usize>>> {
    Ok(search_generic(g, p, limit)?.witness)
}

fn search_generic(g: &Graph, p: &Pattern, limit: u64) -> Result<Search> {
    if p.target.n() > g.n() || p.target.edge_count() > g.edge_count() {
        return Ok(Search { witness: None, nodes: 0 });
    }
    if p.target.n() == 0 {
        return Ok(Search { witness: Some(Vec::new()), nodes: 0 });
    }
    let mut m = Matcher::new(g, &p.plan, limit);
    let witness = if m.component(0, 0)? { Some(m.witness(p)) } else { None };
    Ok(Search { witness, nodes: m.nodes })
}

/// Containment with the default node budget.
pub fn contains(g: &Graph, p: &Pattern) -> Result<Option<Vec<usize>>> {
    contains_budgeted(g, p, DEFAULT_NODE_LIMIT)
}

pub fn contains_budgeted(g: &Graph, p: &Pattern, limit: u64) -> Result<Option<Vec<usize>>> {
    Ok(search(g, p, limit)?.witness)
}

/// Containment with node accounting; `K_{2,t}` patterns take the
/// common-neighbour fast path.
pub fn search(g: &Graph, p: &Pattern, limit: u64) -> Result<Search> {
    if let Some(t) = p.as_k2t() {
        let nodes = (g.n() * g.n().saturating_sub(1) / 2) as u64;
        let witness = k2t_witness(g, t).map(|(a, b, common)| {
            let target = &p.target;
            // the side of size two is the one whose vertices have degree t
            let pair: Vec<usize> = (0..target.n()).filter(|&v| target.degree(v) == t).collect();
            let pair = if pair.len() == 2 { pair } else { (0..2).collect() };
            let rest: Vec<usize> = (0..target.n()).filter(|v| !pair.contains(v)).collect();
            let mut map = vec![usize::MAX; target.n()];
            map[pair[0]] = a;
            map[pair[1]] = b;
            for (p, c) in rest.into_iter().zip(Bits(common)) {
                map[p] = c;
            }
            map
        });
        return Ok(Search { witness, nodes });
    }
    search_generic(g, p, limit)
}

pub fn is_free(g: &Graph, p: &Pattern) -> Result<bool> {
    Ok(contains(g, p)?.is_none())
}

pub fn is_free_budgeted(g: &Graph, p: &Pattern, limit: u64) -> Result<bool> {
    Ok(contains_budgeted(g, p, limit)?.is_none())
}

fn k2t_witness(g: &Graph, t: usize) -> Option<(usize, usize, u64)> {
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let common = g.row(a) & g.row(b);
            if common.count_ones() as usize >= t {
                let mut keep = 0u64;
                for c in Bits(common).take(t) {
                    keep |= bit(c);
                }
                return Some((a, b, keep));
            }
        }
    }
    None
}

/// True iff some pair of vertices has at least `t` common neighbours,
/// i.e. `g` contains `K_{2,t}`.
pub fn contains_k2t(g: &Graph, t: usize) -> bool {
    k2t_witness(g, t).is_some()
}

/// Checks that `map` is an injective edge-preserving map of `p` into `g`.
pub fn is_embedding(g: &Graph, p: &Graph, map: &[usize]) -> bool {
    if map.len() != p.n() || map.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = 0u64;
    for &v in map {
        if seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    p.edges().iter().all(|&(a, b)| g.has_edge(map[a], map[b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty, join};

    fn octahedron() -> Graph {
        join(&empty(2), &cycle(4)).unwrap()
    }

    #[test]
    fn parse_sizes() {
        let p = Pattern::parse("2C3").unwrap();
        assert_eq!((p.target().n(), p.target().edge_count()), (6, 6));
        let p = Pattern::parse("C4 U C4^+").unwrap();
        assert_eq!((p.target().n(), p.target().edge_count()), (9, 9));
        let p = Pattern::parse("K2,4").unwrap();
        assert_eq!((p.target().n(), p.target().edge_count()), (6, 8));
        let p = Pattern::parse("g6:Bw").unwrap();
        assert_eq!(p.target(), &complete(3));
        let p = Pattern::parse("3C4").unwrap();
        assert_eq!(p.target().n(), 12);
        assert_eq!(p.display_name(), "3C4");
        assert_eq!(Pattern::parse("C5^+").unwrap().target().n(), 6);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Pattern::parse("C2"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(Pattern::parse("K0,3"), Err(Error::Parse { .. })));
        assert!(matches!(Pattern::parse("2C3 U"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(Pattern::parse("0C3"), Err(Error::Parse { .. })));
        assert!(matches!(Pattern::parse("X3"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(Pattern::parse("C3 C4"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn deterministic_parse() {
        let a = Pattern::parse("C4 U 2C3").unwrap();
        let b = Pattern::parse("C4 U 2C3").unwrap();
        assert_eq!(a.target(), b.target());
    }

    #[test]
    fn octahedron_contains_prism() {
        let p = Pattern::parse("prism").unwrap();
        let g = octahedron();
        let map = contains(&g, &p).unwrap().expect("prism in octahedron");
        assert!(is_embedding(&g, p.target(), &map));
    }

    #[test]
    fn cycle_in_itself() {
        let p = Pattern::parse("C6").unwrap();
        let map = contains(&cycle(6), &p).unwrap().unwrap();
        assert!(is_embedding(&cycle(6), p.target(), &map));
    }

    #[test]
    fn k4_not_triangle_free() {
        assert!(!is_free(&complete(4), &Pattern::parse("C3").unwrap()).unwrap());
    }

    #[test]
    fn k2t_fast_path() {
        assert!(contains_k2t(&octahedron(), 2));
        assert!(contains_k2t(&octahedron(), 4));
        assert!(!contains_k2t(&octahedron(), 5));
        assert!(!contains_k2t(&cycle(8), 2));
        let p = Pattern::parse("K2,4").unwrap();
        let map = contains(&octahedron(), &p).unwrap().unwrap();
        assert!(is_embedding(&octahedron(), p.target(), &map));
        let p = Pattern::parse("K4,2").unwrap();
        let map = contains(&octahedron(), &p).unwrap().unwrap();
        assert!(is_embedding(&octahedron(), p.target(), &map));
    }

    #[test]
    fn disjoint_components() {
        let two = Pattern::parse("2C3").unwrap();
        assert!(is_free(&complete(5), &two).unwrap());
        let g = graph::copies(2, &cycle(3)).unwrap();
        let map = contains(&g, &two).unwrap().unwrap();
        assert!(is_embedding(&g, two.target(), &map));
    }

    #[test]
    fn budget_is_an_error() {
        let p = Pattern::parse("C7").unwrap();
        let g = complete(7);
        assert!(matches!(contains_generic(&g, &p, 3), Err(Error::BudgetExceeded { limit: 3 })));
    }
}
