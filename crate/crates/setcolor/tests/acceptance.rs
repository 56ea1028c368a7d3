//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config as RunnerConfig, RngAlgorithm, TestRng, TestRunner};
use setcolor::claims;
use setcolor::formats::{lists_to_json, to_edge_list};
use setcolor::parallel::{self, Budget};
use setcolor_core::gadgets::{build_final, build_g1, build_g2, build_g3, build_g4, build_g5, build_pentagon, G2_CYCLE};
use setcolor_core::{
    canonicalize_natural, count_colorings, find_coloring, half_list_valid, structured_cases, ColorSet,
    DomainConstraint, HalfListEnumerator, ListAssignment, ListConstraint, VerifyMode,
};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("{what} took {took:?}, limit {limit:?}"))
}

fn rng_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        RunnerConfig { cases, ..RunnerConfig::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn pentagon_unsat() -> Result<String, String> {
    let p = build_pentagon().map_err(|e| e.to_string())?;
    let none = DomainConstraint::none();
    let start = Instant::now();
    let r = find_coloring(&p.graph, &p.base_lists, 2, &none, None).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1), "search")?;
    ensure(r.is_unsat(), "pentagon has a (L0:2)-coloring")?;
    ensure(count_colorings(&p.graph, &p.base_lists, 2, &none).unwrap() == 0, "nonzero count")?;
    // color-class bound: color c can sit on an independent subset of the
    // vertices whose list holds c, and ten vertex-color incidences are needed
    let n = p.graph.vertex_count();
    let mut total = 0;
    for c in p.base_lists.palette() {
        let holders: Vec<usize> = (0..n).filter(|&v| p.base_lists.get(v).contains(c)).collect();
        let mut best = 0;
        for mask in 0u32..1 << holders.len() {
            let pick: Vec<usize> = (0..holders.len()).filter(|i| mask >> i & 1 == 1).map(|i| holders[i]).collect();
            let independent = pick.iter().all(|&a| pick.iter().all(|&b| !p.graph.has_edge(a, b)));
            if independent {
                best = best.max(pick.len());
            }
        }
        total += best;
    }
    ensure(total == 9, format!("color-class bound gives {total}, expected 9"))?;
    Ok(format!("UNSAT in {:?}, count 0, color-class bound {total} < 10", start.elapsed()))
}

fn pentagon_universal() -> Result<String, String> {
    let p = build_pentagon().map_err(|e| e.to_string())?;
    ensure(p.v1 == 0, "v1 must be the first vertex")?;
    let c = ListConstraint::MaxIntersection(p.v1, p.v3, 1);
    let start = Instant::now();
    let streamed: Vec<ListAssignment> = HalfListEnumerator::new(&p, c).map_err(|e| e.to_string())?.collect();
    // naive oracle: every assignment over {1..10}; each orbit has a member
    // with L(v1) = {1,2}, so that list is fixed
    let naive: BTreeSet<ListAssignment> =
        oracle::all_assignments(&p.half_sizes(), 10, Some(ColorSet::from_colors(&[1, 2])))
            .into_iter()
            .filter(|l| c.holds(l))
            .map(|l| canonicalize_natural(&l).unwrap())
            .collect();
    let set: BTreeSet<ListAssignment> = streamed.iter().cloned().collect();
    ensure(set.len() == streamed.len(), "enumeration repeats an orbit")?;
    ensure(set == naive, format!("stream has {} orbits, oracle {}", set.len(), naive.len()))?;
    let stats = parallel::universal(&p, c, 1, Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure(stats.holds(), "an orbit is not colorable")?;
    within(start, Duration::from_secs(300), "run")?;
    Ok(format!("{} orbits, all colorable, oracle agrees", stats.checked))
}

fn corollary() -> Result<String, String> {
    let g = build_g1().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = find_coloring(&g.graph, &g.base_lists, 2, &DomainConstraint::none(), None).unwrap();
    within(start, Duration::from_secs(10), "search")?;
    ensure(r.is_unsat(), "g1 has a (L1:2)-coloring")?;
    let start = Instant::now();
    let stats = parallel::universal(&g, ListConstraint::Equal(g.v1, g.v3), 1, Budget::unlimited()).unwrap();
    ensure(stats.holds(), "an Equal orbit is not colorable")?;
    within(start, Duration::from_secs(7200), "enumeration")?;
    let free = parallel::universal(&g, ListConstraint::Unconstrained, 1, Budget::unlimited()).unwrap();
    let (_, bad) = free.counterexample.ok_or("dropping the constraint found no counterexample")?;
    ensure(half_list_valid(&g, &bad), "counterexample is not a half-list assignment")?;
    ensure(oracle::count_colorings(&g.graph, &bad, 1) == 0, "counterexample is colorable")?;
    ensure(bad.get(g.v1) != bad.get(g.v3), "counterexample satisfies the constraint")?;
    Ok(format!("UNSAT; {} Equal orbits colorable; unconstrained counterexample {:?}", stats.checked, bad))
}

fn y4_forced() -> Result<String, String> {
    let g = build_g2().map_err(|e| e.to_string())?;
    let c = DomainConstraint::none().avoid_colors(g.vertex("y4").unwrap(), ColorSet::from_colors(&[7, 8]));
    let start = Instant::now();
    let r = find_coloring(&g.graph, &g.base_lists, 2, &c, None).unwrap();
    within(start, Duration::from_secs(30), "forced check")?;
    ensure(r.is_unsat(), "y4 can avoid {7,8}")?;
    let start = Instant::now();
    let (c5, lists) = claims::c5_with_four_colors().map_err(|e| e.to_string())?;
    ensure(c5.vertex_count() == 5 && c5.edge_count() == 5, "cycle extraction")?;
    let r = find_coloring(&c5, &lists, 2, &DomainConstraint::none(), None).unwrap();
    ensure(r.is_unsat() && oracle::count_colorings(&c5, &lists, 2) == 0, "C5 has a (4:2)-coloring")?;
    within(start, Duration::from_secs(1), "C5 check")?;
    Ok(format!("y4 meets {{7,8}}; C5 with {{1,2,3,4}} has no 2-fold coloring ({} cycle vertices)", G2_CYCLE.len()))
}

fn z_forced() -> Result<String, String> {
    let g = build_g3().map_err(|e| e.to_string())?;
    let c78 = ColorSet::from_colors(&[7, 8]);
    let c =
        DomainConstraint::none().forbid(g.vertex("z_{1,7}").unwrap(), c78).forbid(g.vertex("z_{2,7}").unwrap(), c78);
    let start = Instant::now();
    let r = find_coloring(&g.graph, &g.base_lists, 2, &c, None).unwrap();
    within(start, Duration::from_secs(300), "forced check")?;
    ensure(r.is_unsat(), "both z_{i,7} can avoid {7,8}")?;
    Ok(format!("UNSAT with both z_{{i,7}} != {{7,8}} ({} nodes)", r.nodes_explored))
}

fn w_forced() -> Result<String, String> {
    let g = build_g4().map_err(|e| e.to_string())?;
    let mut nodes = Vec::new();
    for label in ["w_{1,3}", "w_{2,3}"] {
        let start = Instant::now();
        let c = DomainConstraint::none().forbid(g.vertex(label).unwrap(), ColorSet::from_colors(&[7, 8]));
        let r = find_coloring(&g.graph, &g.base_lists, 2, &c, None).unwrap();
        within(start, Duration::from_secs(600), label)?;
        ensure(r.is_unsat(), format!("{label} can avoid {{7,8}}"))?;
        nodes.push(r.nodes_explored);
    }
    Ok(format!("both runs UNSAT, nodes {nodes:?}"))
}

fn g5() -> Result<String, String> {
    let g = build_g5().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let direct = find_coloring(&g.graph, &g.base_lists, 2, &DomainConstraint::none(), None).unwrap();
    within(start, Duration::from_secs(1800), "direct search")?;
    let direct_time = start.elapsed();
    let start = Instant::now();
    let staged = claims::lemma6_staged(Budget::unlimited()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(60), "staged search")?;
    ensure(staged.forced && staged.residual_matches, "staged reduction does not land on (g1, L1)")?;
    ensure(direct.is_unsat() && staged.residual_unsat, "direct and staged disagree or find a coloring")?;
    let stats = parallel::sampled_colorability(&g, 10_000, claims::DEFAULT_SEED, 1, Budget::unlimited()).unwrap();
    ensure(stats.holds(), format!("{} sampled half-lists not colorable", stats.failures))?;
    Ok(format!(
        "direct UNSAT in {direct_time:?} ({} nodes), staged agrees, {} sampled half-lists colorable",
        direct.nodes_explored, stats.checked
    ))
}

fn relaxed_sampling() -> Result<String, String> {
    let mut out = Vec::new();
    for (g, n) in [(build_g2(), 10_000), (build_g3(), 2_000), (build_g4(), 2_000)] {
        let g = g.map_err(|e| e.to_string())?;
        let cases = structured_cases(&g);
        let cycle: Vec<usize> = G2_CYCLE.iter().map(|l| g.vertex(l).unwrap()).collect();
        let all_equal = |l: &ListAssignment| cycle.iter().all(|&v| l.get(v) == l.get(cycle[0]));
        ensure(cases.iter().any(all_equal), "missing the all-equal cycle case")?;
        ensure(cases.iter().any(|l| !all_equal(l)), "missing an unequal cycle case")?;
        let s = parallel::relaxed(&g, VerifyMode::Sampled { n, seed: 42 }, Budget::unlimited()).unwrap();
        ensure(s.holds(), format!("{}: {} violations", g.name, s.violations))?;
        ensure(s.checked == n + cases.len() as u64, "wrong number of cases checked")?;
        out.push(format!("{} {}", g.name, s.checked));
    }
    Ok(format!("zero violations ({})", out.join(", ")))
}

fn construction_audit() -> Result<String, String> {
    let start = Instant::now();
    let a = build_final(ColorSet::range(9, 16)).map_err(|e| e.to_string())?;
    let b = build_final(ColorSet::range(9, 16)).map_err(|e| e.to_string())?;
    ensure(a.copy_count() == 2520, format!("{} copies", a.copy_count()))?;
    ensure(a.graph.vertex_count() == 93_244, format!("{} vertices", a.graph.vertex_count()))?;
    ensure(a.graph.edge_count() == 269_646, format!("{} edges", a.graph.edge_count()))?;
    ensure(a.lists.iter().all(|l| l.len() == 8), "a list is not of size 8")?;
    let audit = setcolor_core::theorem::audit_final(&a);
    ensure(audit.ok(), format!("audit: {:?}", audit.problems.first()))?;
    let ser = |fc: &setcolor_core::gadgets::FinalConstruction| {
        to_edge_list(&fc.graph) + &serde_json::to_string(&lists_to_json(&fc.graph, &fc.lists)).unwrap()
    };
    let (sa, sb) = (ser(&a), ser(&b));
    ensure(sa == sb, "two builds serialize differently")?;
    within(start, Duration::from_secs(60), "construction")?;
    Ok(format!("2520 copies, |V|=93244, |E|=269646, {} serialized bytes identical", sa.len()))
}

fn four_choosability() -> Result<String, String> {
    let start = Instant::now();
    let fc = claims::final_construction().map_err(|e| e.to_string())?;
    let s = parallel::procedure_samples(&fc, 100, 8, claims::DEFAULT_THEOREM_SEED, Budget::unlimited())
        .map_err(|e| e.to_string())?;
    ensure(s.failures == 0, format!("{:?}", s.first_failure))?;
    ensure(s.colored == 100, "not every sample colored")?;
    within(start, Duration::from_secs(1800), "sampling")?;
    Ok(format!("100/100 size-4 assignments colored properly in {:?}", start.elapsed()))
}

fn solver_oracle() -> Result<String, String> {
    let mut runner = rng_runner(500);
    let mut sat = 0;
    for i in 0..500 {
        let inst = oracle::instance().new_tree(&mut runner).unwrap().current();
        let expected = oracle::count_colorings(&inst.graph, &inst.lists, inst.block);
        let none = DomainConstraint::none();
        let r = find_coloring(&inst.graph, &inst.lists, inst.block, &none, None).unwrap();
        let count = count_colorings(&inst.graph, &inst.lists, inst.block, &none).unwrap();
        ensure(r.is_sat() == (expected > 0) && count == expected, format!("instance {i} disagrees: {inst:?}"))?;
        sat += usize::from(expected > 0);
    }
    Ok(format!("500 instances agree ({sat} colorable)"))
}

fn canonical_properties() -> Result<String, String> {
    let mut runner = rng_runner(1000);
    for i in 0..1000 {
        let l = oracle::tiny_assignment().new_tree(&mut runner).unwrap().current();
        let map = oracle::permutation().new_tree(&mut runner).unwrap().current();
        let a = canonicalize_natural(&l).unwrap();
        let b = canonicalize_natural(&l.rename(&map)).unwrap();
        ensure(a == b, format!("pair {i}: {l:?} under {map:?}"))?;
    }
    let mut vectors = 0;
    for n in 1..=4u32 {
        for code in 0..3u32.pow(n) {
            let sizes: Vec<u32> = (0..n).map(|i| code / 3u32.pow(i) % 3).collect();
            let universe: u32 = sizes.iter().sum();
            let expected: BTreeSet<ListAssignment> = oracle::all_assignments(&sizes, universe.max(1) as u8, None)
                .iter()
                .map(|l| canonicalize_natural(l).unwrap())
                .collect();
            let order: Vec<usize> = (0..n as usize).collect();
            let got: BTreeSet<ListAssignment> =
                HalfListEnumerator::with_order(sizes.clone(), &order, ListConstraint::Unconstrained).unwrap().collect();
            ensure(got == expected, format!("orbit mismatch for sizes {sizes:?}"))?;
            vectors += 1;
        }
    }
    Ok(format!("1000 bijection pairs invariant; orbits exact on {vectors} size vectors"))
}

const CRITERIA: [(&str, Check); 12] = [
    ("pentagon has no (L0:2)-coloring", pentagon_unsat),
    ("pentagon half-lists with |L(v1)∩L(v3)| <= 1 all colorable", pentagon_universal),
    ("g1 has no (L1:2)-coloring; Equal half-lists colorable", corollary),
    ("g2 forces y4 to meet {7,8}", y4_forced),
    ("g3 forces a z_{i,7} to {7,8}", z_forced),
    ("g4 forces w_{1,3} and w_{2,3} to {7,8}", w_forced),
    ("g5 has no (L5:2)-coloring; half-lists colorable", g5),
    ("g2, g3, g4 relaxedness sampling", relaxed_sampling),
    ("final construction audit", construction_audit),
    ("4-choosability sampling on the final graph", four_choosability),
    ("solver matches generate-and-test", solver_oracle),
    ("canonicalization properties", canonical_properties),
];

fn main() -> ExitCode {
    // quiet the default hook; failures are reported on their criterion line
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}  {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
