//! Exact planar Turán numbers at small orders.
//!
//! Two independent methods. The filter method scans every planar graph on
//! `n` vertices, densest first. The triangulation method uses the fact
//! that every planar graph on `n >= 3` vertices is a spanning subgraph of
//! some triangulation on the same vertex set, so `ex_P(n, H)` is the
//! largest `H`-free spanning subgraph of any triangulation. That subgraph
//! is found by branch and bound: locate one copy of `H`, branch on which
//! of its edges to delete, and prune with a greedy packing of
//! edge-disjoint copies (each needs its own deletion).

mod bounds;
mod verify;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{self, CanonKey};
use crate::enumerate::{self, Constraints};
use crate::error::{invalid, Error, Result};
use crate::graph::{bit, Graph};
use crate::graph6::encode_graph6;
use crate::pattern::{self, Pattern};
use crate::planar;

pub use bounds::{
    eval_bound, formula, formulas, lemma2_edges, lemma2_remainder, lemma3_edges, lemma3_period, lemma3_remainder,
    ratio_string, BoundFormula, BoundParams, BoundValue, Sense,
};
pub use verify::{
    scan_conjecture, verify_corollary_tck, verify_theorem, Item, Options, Report, Status, CONJECTURE_IDS,
    DOWDEN_K4_NOTE, THEOREM_IDS, TSTACK_NOTE,
};

/// Largest `n` for [`ex_filter`].
pub const MAX_FILTER: usize = 9;

/// Run-wide work counter shared by all workers. Overflow is detected
/// monotonically; exact final counts are not guaranteed under contention.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Budget {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used())
    }

    pub fn charge(&self, amount: u64) -> Result<()> {
        let before = self.used.fetch_add(amount, Ordering::Relaxed);
        if before.saturating_add(amount) > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }

    /// Containment search charged to this budget.
    pub fn find(&self, g: &Graph, p: &Pattern) -> Result<Option<Vec<usize>>> {
        let s = pattern::search(g, p, self.remaining().max(1)).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::BudgetExceeded { limit: self.limit },
            other => other,
        })?;
        self.charge(s.nodes)?;
        Ok(s.witness)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Filter,
    TriBb,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Filter => "filter",
            Method::TriBb => "tri-bb",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "filter" => Ok(Method::Filter),
            "tri-bb" => Ok(Method::TriBb),
            other => Err(invalid(format!("unknown method `{other}` (filter, tri-bb)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// host graphs (planar graphs or triangulations) examined
    pub graphs: u64,
    /// branch-and-bound states expanded
    pub states: u64,
    /// work charged to the budget
    pub work: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub pattern: String,
    pub value: usize,
    /// every extremal graph up to isomorphism, canonical graph6, sorted
    pub witnesses: Vec<String>,
    pub method: Method,
    pub stats: SearchStats,
}

fn planar_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Graph>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All planar graphs on `n` vertices up to isomorphism, densest first and
/// canonical-key order within an edge count. Cached per process.
pub fn planar_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    if let Some(list) = planar_cache().lock().expect("cache lock").get(&n) {
        return Ok(list.clone());
    }
    let mut list = enumerate::enumerate_graphs(&Constraints { planar: true, ..Constraints::new(n) })?;
    list.sort_by_key(|g| std::cmp::Reverse(g.edge_count()));
    let list = Arc::new(list);
    planar_cache().lock().expect("cache lock").insert(n, list.clone());
    Ok(list)
}

fn witness_strings(keys: BTreeSet<CanonKey>) -> Vec<String> {
    keys.into_iter().map(|k| encode_graph6(&k.to_graph())).collect()
}

/// `ex_P(n, p)` by scanning all planar graphs on `n <= 9` vertices.
pub fn ex_filter(n: usize, p: &Pattern, budget: &Budget) -> Result<ExtremalResult> {
    if n > MAX_FILTER {
        return Err(Error::TooLarge { what: "ex_filter", n, max: MAX_FILTER });
    }
    let graphs = planar_graphs(n)?;
    let mut stats = SearchStats::default();
    let mut value = None;
    let mut witnesses = BTreeSet::new();
    let mut start = 0;
    while start < graphs.len() {
        let e = graphs[start].edge_count();
        if value.is_some_and(|v| e < v) {
            break;
        }
        let end = start + graphs[start..].iter().take_while(|g| g.edge_count() == e).count();
        let free: Vec<Result<Option<CanonKey>>> = graphs[start..end]
            .par_iter()
            .map(|g| Ok(budget.find(g, p)?.is_none().then(|| CanonKey::of_labeled(g))))
            .collect();
        for r in free {
            if let Some(k) = r? {
                witnesses.insert(k);
                value = Some(e);
            }
        }
        stats.graphs += (end - start) as u64;
        start = end;
    }
    stats.work = budget.used();
    let value = value.expect("the edgeless graph is free of any pattern with an edge");
    Ok(ExtremalResult {
        n,
        pattern: p.display_name(),
        value,
        witnesses: witness_strings(witnesses),
        method: Method::Filter,
        stats,
    })
}

/// Branch and bound over spanning subgraphs of one host triangulation.
/// States are edge masks over the host's edge list.
struct BranchAndBound<'a> {
    host_n: usize,
    edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    pattern: &'a Pattern,
    budget: &'a Budget,
    best: &'a AtomicUsize,
    seen: HashSet<u64>,
    free: Vec<(usize, Graph)>,
    states: u64,
}

impl<'a> BranchAndBound<'a> {
    fn new(host: &Graph, pattern: &'a Pattern, budget: &'a Budget, best: &'a AtomicUsize) -> Result<Self> {
        let edges = host.edges();
        if edges.len() > 64 {
            return Err(Error::TooLarge { what: "branch and bound host edges", n: edges.len(), max: 64 });
        }
        let index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(BranchAndBound {
            host_n: host.n(),
            edges,
            index,
            pattern,
            budget,
            best,
            seen: HashSet::new(),
            free: Vec::new(),
            states: 0,
        })
    }

    fn graph(&self, mask: u64) -> Graph {
        let mut g = Graph::new(self.host_n);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask & bit(i) != 0 {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn copy_edges(&self, map: &[usize]) -> Vec<usize> {
        self.pattern
            .target()
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map[a].min(map[b]), map[a].max(map[b]));
                self.index[&(x, y)]
            })
            .collect()
    }

    /// Edge-disjoint copies found greedily, the first one given.
    fn packing(&self, g: &Graph, first: &[usize]) -> Result<u32> {
        let mut h = g.clone();
        let mut count = 1;
        let mut copy = first.to_vec();
        loop {
            for &i in &copy {
                let (a, b) = self.edges[i];
                h.remove_edge(a, b);
            }
            match self.budget.find(&h, self.pattern)? {
                Some(map) => {
                    copy = self.copy_edges(&map);
                    count += 1;
                }
                None => return Ok(count),
            }
        }
    }

    fn run(&mut self, mask: u64) -> Result<()> {
        let cur = mask.count_ones() as usize;
        if cur < self.best.load(Ordering::Relaxed) || !self.seen.insert(mask) {
            return Ok(());
        }
        self.states += 1;
        self.budget.charge(1)?;
        let g = self.graph(mask);
        let Some(map) = self.budget.find(&g, self.pattern)? else {
            self.best.fetch_max(cur, Ordering::Relaxed);
            self.free.push((cur, g));
            return Ok(());
        };
        let copy = self.copy_edges(&map);
        let lb = self.packing(&g, &copy)? as usize;
        if cur < self.best.load(Ordering::Relaxed) + lb {
            return Ok(());
        }
        for i in copy {
            self.run(mask & !bit(i))?;
        }
        Ok(())
    }
}

/// Largest number of edges in a `p`-free spanning subgraph of the
/// triangulation `t`, with every such subgraph attaining it (labelled as
/// in `t`, deduplicated by edge set).
pub fn max_free_subgraph_edges(t: &Graph, p: &Pattern, budget: &Budget) -> Result<(usize, Vec<Graph>)> {
    if !planar::is_triangulation(t) {
        return Err(invalid("max_free_subgraph_edges needs a triangulation"));
    }
    let best = AtomicUsize::new(0);
    let mut bb = BranchAndBound::new(t, p, budget, &best)?;
    let all = if bb.edges.len() == 64 { u64::MAX } else { bit(bb.edges.len()) - 1 };
    bb.run(all)?;
    let value = best.load(Ordering::Relaxed);
    let witnesses = bb.free.into_iter().filter(|(e, _)| *e == value).map(|(_, g)| g).collect();
    Ok((value, witnesses))
}

/// `ex_P(n, p)` for `3 <= n <= 12` by branch and bound over every
/// triangulation on `n` vertices.
pub fn ex_tri_bb(n: usize, p: &Pattern, budget: &Budget) -> Result<ExtremalResult> {
    if n < 3 {
        return Err(invalid(format!("ex_tri_bb needs n >= 3, got {n}")));
    }
    let tris = enumerate::enumerate_triangulations(n)?;
    let best = AtomicUsize::new(0);
    let per_host: Vec<Result<(u64, Vec<(usize, Graph)>)>> = tris
        .par_iter()
        .map(|t| {
            let mut bb = BranchAndBound::new(t, p, budget, &best)?;
            let all = bit(bb.edges.len()) - 1;
            bb.run(all)?;
            Ok((bb.states, bb.free))
        })
        .collect();
    let value = best.load(Ordering::Relaxed);
    let mut stats = SearchStats { graphs: tris.len() as u64, ..SearchStats::default() };
    let mut keys = BTreeSet::new();
    for r in per_host {
        let (states, free) = r?;
        stats.states += states;
        for (e, g) in free {
            if e == value {
                keys.insert(canon::canonical(&g)?.key);
            }
        }
    }
    stats.work = budget.used();
    Ok(ExtremalResult {
        n,
        pattern: p.display_name(),
        value,
        witnesses: witness_strings(keys),
        method: Method::TriBb,
        stats,
    })
}

/// Dispatches to a method; `None` picks branch and bound from `n = 3`.
pub fn ex(n: usize, p: &Pattern, method: Option<Method>, budget: &Budget) -> Result<ExtremalResult> {
    match method {
        Some(Method::Filter) => ex_filter(n, p, budget),
        Some(Method::TriBb) => ex_tri_bb(n, p, budget),
        None if n < 3 => ex_filter(n, p, budget),
        None => ex_tri_bb(n, p, budget),
    }
}

/// Re-checks a result: every witness decodes, is planar, `p`-free and has
/// exactly `value` edges, and the value respects `3n - 6`.
pub fn validate_result(r: &ExtremalResult, p: &Pattern) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    if r.n >= 3 && r.value > 3 * r.n - 6 {
        bad.push(format!("value {} exceeds 3n - 6", r.value));
    }
    for w in &r.witnesses {
        let g = crate::graph6::decode(w)?;
        if g.n() != r.n || g.edge_count() != r.value {
            bad.push(format!("{w}: wrong order or size"));
        }
        if !planar::is_planar(&g) {
            bad.push(format!("{w}: not planar"));
        }
        if !pattern::is_free(&g, p)? {
            bad.push(format!("{w}: contains {}", r.pattern));
        }
    }
    Ok(bad)
}
