//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//! Runs without the libtest harness so every line reaches stdout.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use planar_turan::canon::isomorphic;
use planar_turan::enumerate::{self, Constraints};
use planar_turan::extremal::{
    ex_filter, ex_tri_bb, lemma2_edges, lemma3_edges, scan_conjecture, verify_corollary_tck, verify_theorem, Budget,
    Options, Status, TSTACK_NOTE,
};
use planar_turan::family;
use planar_turan::graph6::decode_graph6;
use planar_turan::pattern::{self, Pattern};
use planar_turan::planar;
use planar_turan::{Graph, Result};

const PTURAN: &str = env!("CARGO_BIN_EXE_pturan");

#[derive(Default)]
struct Check {
    failures: Vec<String>,
    facts: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn fact(&mut self, s: impl Into<String>) {
        self.facts.push(s.into());
    }
}

fn pat(s: &str) -> Result<Pattern> {
    Pattern::parse(s)
}

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn pturan(args: &[&str]) -> (i32, String) {
    let out = Command::new(PTURAN).args(args).output().expect("pturan runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ceil_half(x: usize) -> usize {
    x.div_ceil(2)
}

fn c01_cubic_k4_free(c: &mut Check) -> Result<()> {
    let (code, out) = pturan(&[
        "enumerate",
        "--class",
        "graphs",
        "--n",
        "8",
        "--regular",
        "3",
        "--planar",
        "--then-filter",
        "K4-free",
    ]);
    c.expect(code == 0, || format!("exit code {code}"));
    let graphs: Vec<Graph> = out.lines().map(decode_graph6).collect::<Result<_>>()?;
    c.expect(graphs.len() == 3, || format!("{} classes, expected 3", graphs.len()));
    let k4 = pat("K4")?;
    for (i, g) in graphs.iter().enumerate() {
        c.expect(g.is_regular(3) && planar::is_planar(g), || format!("class {i} is not cubic planar"));
        c.expect(pattern::is_free(g, &k4)?, || format!("class {i} contains K4"));
        for h in &graphs[i + 1..] {
            c.expect(!isomorphic(g, h)?, || "two classes are isomorphic".into());
        }
    }
    for id in ["lemma88-g1", "lemma88-g2", "lemma88-g3"] {
        let named = family::small_witness(id)?.0;
        let hits = graphs.iter().filter(|g| isomorphic(g, &named).unwrap_or(false)).count();
        c.expect(hits == 1, || format!("{id} matched {hits} classes"));
    }
    c.fact(format!("{} classes", graphs.len()));
    Ok(())
}

fn c02_triangle(c: &mut Check) -> Result<()> {
    let p = pat("C3")?;
    for n in 3..=9 {
        let v = ex_filter(n, &p, &unlimited())?.value;
        c.expect(v == 2 * n - 4, || format!("filter n={n}: {v}"));
        if n >= 4 {
            let w = ex_tri_bb(n, &p, &unlimited())?.value;
            c.expect(w == v, || format!("tri-bb n={n}: {w} vs filter {v}"));
        }
    }
    Ok(())
}

fn c03_prism(c: &mut Check) -> Result<()> {
    let p = pat("prism")?;
    let mut values = Vec::new();
    for n in 6..=9 {
        let v = ex_tri_bb(n, &p, &unlimited())?.value;
        values.push(v);
        c.expect(v == 3 * n - 7, || format!("n={n}: {v}"));
        for t in enumerate::enumerate_triangulations(n)? {
            c.expect(pattern::contains(&t, &p)?.is_some(), || format!("prism-free triangulation at n={n}"));
        }
    }
    c.fact(format!("values {values:?}"));
    for n in 10..=50 {
        let g = family::q_triangulation((n - 2) / 4, (n - 2) % 4)?;
        c.expect(g.n() == n && g.edge_count() == 3 * n - 6, || format!("q at n={n} has wrong size"));
        c.expect(planar::is_triangulation(&g), || format!("q at n={n} is not a triangulation"));
        c.expect(pattern::is_free(&g, &p)?, || format!("q at n={n} contains the prism"));
    }
    Ok(())
}

fn c04_two_triangles(c: &mut Check) -> Result<()> {
    let p = pat("2C3")?;
    for n in 6..=10 {
        let r = ex_tri_bb(n, &p, &unlimited())?;
        let want = ceil_half(5 * n) - 5;
        c.expect(r.value == want, || {
            format!("n={n}: exact {} vs ceil(5n/2)-5 = {want}, witnesses {:?}", r.value, r.witnesses)
        });
    }
    for n in 6..=60 {
        let g = family::tc3_lower(n)?;
        let want = ceil_half(5 * n) - 5;
        c.expect(g.edge_count() == want, || format!("tc3_lower({n}) has {} edges", g.edge_count()));
        c.expect(planar::is_planar(&g) && pattern::is_free(&g, &p)?, || format!("tc3_lower({n}) fails"));
    }
    Ok(())
}

fn c05_pendant_triangle(c: &mut Check) -> Result<()> {
    let (plus, tri) = (pat("C3^+")?, pat("C3")?);
    for n in 4..=9 {
        let a = ex_tri_bb(n, &plus, &unlimited())?.value;
        let b = ex_tri_bb(n, &tri, &unlimited())?.value;
        c.expect(a == b, || format!("n={n}: {a} vs {b}"));
    }
    Ok(())
}

fn c06_corollary(c: &mut Check) -> Result<()> {
    let budget = unlimited();
    let r = verify_corollary_tck(3, 7, 9, &Options::new(&budget))?;
    c.expect(r.items.len() == 3, || format!("{} items", r.items.len()));
    for i in &r.items {
        c.expect(i.status == Status::Pass, || format!("{:?}: {:?} vs {:?}", i.params, i.computed, i.expected));
    }
    Ok(())
}

fn c07_bipartite(c: &mut Check) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().expect("pool");
    pool.install(|| -> Result<()> {
        let (k23, k24, k25) = (pat("K2,3")?, pat("K2,4")?, pat("K2,5")?);
        for n in 6..=8 {
            let v = ex_tri_bb(n, &k24, &unlimited())?.value;
            c.expect(v == 3 * n - 7, || format!("K2,4 n={n}: {v}"));
        }
        let v = ex_tri_bb(9, &k24, &unlimited())?.value;
        c.expect(v == 21, || format!("K2,4 n=9: {v}"));
        for n in 5..=10 {
            let r = ex_tri_bb(n, &k23, &unlimited())?;
            c.expect(r.value == 3 * n - 8, || {
                format!("K2,3 n={n}: exact {} vs 3n-8 = {}, witnesses {:?}", r.value, 3 * n - 8, r.witnesses)
            });
        }
        let extended = Budget::new(2_000_000_000);
        match ex_tri_bb(11, &k23, &extended) {
            Ok(r) => {
                c.expect(r.value == 25, || format!("K2,3 n=11 (extended): {}", r.value));
                c.fact(format!("extended n=11 finished: {}", r.value));
            }
            Err(planar_turan::Error::BudgetExceeded { .. }) => c.fact("extended n=11: budget exhausted (flagged)"),
            Err(e) => return Err(e),
        }
        for n in 12..=60 {
            let g = family::hex_family(n / 6, n % 6)?;
            c.expect(g.n() == n && planar::is_triangulation(&g), || format!("R at n={n} is not a triangulation"));
            c.expect(!pattern::contains_k2t(&g, 3), || {
                format!("R at n={n} contains K2,3 (min degree {})", g.min_degree())
            });
        }
        for n in 7..=60 {
            let g = family::apex_outer_snake(n)?;
            c.expect(g.edge_count() == 3 * n - 6, || format!("K1+O at n={n}: {} edges", g.edge_count()));
            c.expect(planar::is_planar(&g) && pattern::is_free(&g, &k25)?, || format!("K1+O at n={n} fails"));
        }
        Ok(())
    })
}

fn c08_two_cycles(c: &mut Check) -> Result<()> {
    for k in 4..=9 {
        let p = pat(&format!("2C{k}"))?;
        for n in 2 * k..=60 {
            let g = family::two_ck_lower(n, k)?;
            let want = lemma2_edges(n, k)?;
            c.expect(g.edge_count() == want, || format!("two_ck_lower({n},{k}): {} vs {want}", g.edge_count()));
            c.expect(planar::is_planar(&g) && pattern::is_free(&g, &p)?, || format!("two_ck_lower({n},{k}) fails"));
        }
        if k < 7 {
            continue;
        }
        let min_n = if k % 2 == 1 { 3 * k - 3 } else { 3 * k - 6 };
        for n in min_n..=60 {
            let parts = family::improved_parts(n, k)?;
            let g = family::paste_along_k2(&parts)?.graph;
            let want = lemma3_edges(n, k)?;
            c.expect(g.edge_count() == want, || format!("improved({n},{k}): {} vs {want}", g.edge_count()));
            c.expect(planar::is_planar(&g) && pattern::is_free(&g, &p)?, || format!("improved({n},{k}) fails"));
            if k == 7 || k == 8 {
                let sum = parts.iter().map(|h| h.graph.edge_count() - 1).sum::<usize>() + 1;
                c.expect(sum == g.edge_count(), || format!("pasting identity at ({n},{k}): {sum}"));
            }
        }
    }
    Ok(())
}

fn c09_scans(c: &mut Check) -> Result<()> {
    let budget = unlimited();
    let opts = Options::new(&budget);
    let weak = scan_conjecture("weak", 3, 9, None, &opts)?;
    let pairs: usize = (3..=9).map(|n| n - 2).sum();
    c.expect(weak.items.len() == pairs, || format!("weak scan checked {} of {pairs} pairs", weak.items.len()));
    c.expect(weak.status() == Status::Pass, || "weak scan found a counterexample".into());
    let c4 = scan_conjecture("c4", 8, 9, None, &opts)?;
    for i in &c4.items {
        let stated = i.note.as_deref().is_some_and(|n| n.starts_with("equality") || n.starts_with("strict"));
        c.expect(stated && i.computed.is_some(), || format!("c4 item {:?} lacks a verdict", i.params));
        c.fact(format!(
            "c4 n={}: exact {} vs {} ({})",
            i.params["n"],
            i.computed.as_deref().unwrap_or("-"),
            i.expected.as_deref().unwrap_or("-"),
            i.note.as_deref().unwrap_or("-")
        ));
    }
    c.expect(c4.items.len() == 2, || "c4 scan incomplete".into());
    Ok(())
}

fn c10_enumeration(c: &mut Check) -> Result<()> {
    for n in 0..=8 {
        let profiles = [
            ("unconstrained", Constraints::new(n)),
            ("cubic", Constraints { regular: Some(3), ..Constraints::new(n) }),
            ("planar", Constraints { planar: true, ..Constraints::new(n) }),
            (
                "triangulated",
                Constraints {
                    planar: true,
                    min_edges: Some((3 * n).saturating_sub(6)),
                    max_edges: Some((3 * n).saturating_sub(6)),
                    ..Constraints::new(n)
                },
            ),
            ("connected", Constraints { connected: true, ..Constraints::new(n) }),
        ];
        for (name, cons) in profiles {
            if name == "triangulated" && n < 3 {
                continue;
            }
            let a = enumerate::enumerate_graphs(&cons)?;
            let b = enumerate::filter_oracle(&cons)?;
            c.expect(a == b, || format!("{name} n={n}: {} vs oracle {}", a.len(), b.len()));
        }
    }
    let counts: Vec<usize> =
        (3..=8).map(|n| enumerate::enumerate_triangulations(n).map(|t| t.len())).collect::<Result<_>>()?;
    c.expect(counts == [1, 1, 1, 2, 5, 14], || format!("triangulation counts {counts:?}"));
    for n in ["9", "10", "11"] {
        let one = pturan(&["--jobs", "1", "enumerate", "--class", "triangulations", "--n", n]);
        let eight = pturan(&["--jobs", "8", "enumerate", "--class", "triangulations", "--n", n]);
        c.expect(one == eight && one.0 == 0, || format!("n={n} differs across job counts"));
        c.fact(format!("n={n}: {}", one.1.lines().count()));
    }
    Ok(())
}

fn c11_methods(c: &mut Check) -> Result<()> {
    for p in ["C3", "C3^+", "2C3", "prism", "K2,3", "K2,4", "2C4"] {
        let pattern = pat(p)?;
        for n in 4..=8 {
            let a = ex_filter(n, &pattern, &unlimited())?;
            let b = ex_tri_bb(n, &pattern, &unlimited())?;
            c.expect(a.value == b.value, || format!("{p} n={n}: filter {} vs tri-bb {}", a.value, b.value));
            c.expect(a.witnesses == b.witnesses, || format!("{p} n={n}: witness sets differ"));
        }
    }
    Ok(())
}

fn c12_flags(c: &mut Check) -> Result<()> {
    let budget = unlimited();
    let r = verify_theorem("dowden.k4", 4, 5, &Options::new(&budget))?;
    let got: Vec<Option<&str>> = r.items.iter().map(|i| i.computed.as_deref()).collect();
    c.expect(got == [Some("5"), Some("8")], || format!("dowden.k4 computed {got:?}"));
    c.expect(r.items.iter().all(|i| i.status == Status::Fail), || "dowden.k4 items not FAIL".into());
    c.expect(r.notes.iter().any(|n| n.contains("n >= 6")), || "dowden.k4 report lacks the range note".into());
    for k in 7..=9 {
        let opts = Options { k: Some(k), ..Options::new(&budget) };
        let r = verify_theorem("lemma3", 2 * k, 60, &opts)?;
        c.expect(r.notes.iter().any(|n| n == TSTACK_NOTE), || format!("lemma3 k={k} report lacks the note"));
        let missing = r.items.iter().filter(|i| !i.note.as_deref().is_some_and(|n| n.contains(TSTACK_NOTE))).count();
        c.expect(missing == 0, || format!("lemma3 k={k}: {missing} items lack the note"));
    }
    let (code, out) = pturan(&["verify", "--theorem", "lemma3", "--k", "7", "--from", "14", "--to", "20"]);
    c.expect(code == 0 && out.contains("3m - 4"), || format!("CLI lemma3 report: exit {code}"));
    Ok(())
}

type Criterion = (u32, &'static str, u64, fn(&mut Check) -> Result<()>);

const CRITERIA: &[Criterion] = &[
    (1, "cubic planar K4-free graphs on 8 vertices: exactly 3 classes", 60, c01_cubic_k4_free),
    (2, "ex_P(n, C3) = 2n - 4 for n = 3..9, filter and tri-bb", 600, c02_triangle),
    (3, "prism: 3n - 7 for n = 6..9, every triangulation contains it, q family to n = 50", 900, c03_prism),
    (4, "ex_P(n, 2C3) = ceil(5n/2) - 5 for n = 6..10; tc3_lower to n = 60", 1200, c04_two_triangles),
    (5, "ex_P(n, C3^+) = ex_P(n, C3) for n = 4..9", 600, c05_pendant_triangle),
    (6, "ex_P(n, C3 U C3^+) = ex_P(n, 2C3) for n = 7..9", 1200, c06_corollary),
    (7, "K2,t values and constructions (4 workers)", 2700, c07_bipartite),
    (8, "2C_k lower-bound graphs for k = 4..9, n <= 60", 600, c08_two_cycles),
    (9, "conjecture scans: weak for k <= n <= 9, c4 at n = 8, 9", 1800, c09_scans),
    (10, "enumeration against the filter oracle; stable triangulation counts", 900, c10_enumeration),
    (11, "filter and tri-bb agree on the pattern suite for n = 4..8", 1800, c11_methods),
    (12, "flagged discrepancies appear in reports", 60, c12_flags),
];

fn main() -> ExitCode {
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for &(num, title, limit, run) in CRITERIA {
        if only.is_some_and(|o| o != num) {
            continue;
        }
        let mut check = Check::default();
        let start = Instant::now();
        if let Err(e) = run(&mut check) {
            check.failures.push(format!("error: {e}"));
        }
        let elapsed = start.elapsed();
        check.expect(elapsed <= Duration::from_secs(limit), || format!("took {elapsed:.1?}, limit {limit} s"));
        let ok = check.failures.is_empty();
        failed += usize::from(!ok);
        println!("criterion {num:>2} {} ({:.1} s): {title}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        for f in &check.facts {
            println!("    {f}");
        }
        for f in &check.failures {
            println!("    failure: {f}");
        }
    }
    println!("acceptance: {} failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
