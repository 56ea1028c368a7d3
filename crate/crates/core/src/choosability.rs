//! Quantified checks over half-list assignments: universal colorability,
//! the `(v1, v3, S)`-relaxed conditions, and reproducible sampling.
//!
//! A half-list assignment gives every vertex half as many colors as its base
//! list. The gadget is `(v1, v3, S)`-relaxed if every half-list assignment
//! `L` satisfies one of
//!
//! 1. some `L`-coloring `psi0` of `{v1, v3}` is such that every `L`-coloring
//!    of `S ∪ {v1, v3}` extending it extends to the whole graph, or
//! 2. `L(v1) = L(v3)` and some `L`-coloring `psi0` of `S` is such that every
//!    `L`-coloring of `S ∪ {v1, v3}` extending it extends to the whole graph.
//!
//! Colorings here use one color per vertex.
//!
//! Checks that run over many assignments come in two layers. The per-item
//! functions ([`check_colorable`], [`check_relaxed_at`],
//! [`sample_half_lists`]) are pure and can be spread over threads. The
//! statistics types merge order-independently. The `verify_*` drivers are
//! sequential folds over them.

use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::{HalfListEnumerator, ListConstraint};
use crate::color::{ColorSet, MAX_COLOR};
use crate::error::{Error, Result};
use crate::gadgets::G2_CYCLE;
use crate::graph::Vertex;
use crate::model::{half_list_valid, Gadget, ListAssignment, SetColoring};
use crate::solver::{SolveResult, Solver, Status};

/// Optional stop hook forwarded to every solver call.
pub type Interrupt<'a> = Option<&'a (dyn Fn() -> bool + Sync)>;

fn require_half_lists(gadget: &Gadget, lists: &ListAssignment) -> Result<()> {
    if half_list_valid(gadget, lists) {
        Ok(())
    } else {
        Err(Error::Precondition(alloc::format!("not a half-list assignment for gadget `{}`", gadget.name)))
    }
}

fn solve(
    gadget: &Gadget,
    lists: &ListAssignment,
    block: u32,
    partial: Option<&SetColoring>,
    stop: Interrupt,
) -> Result<SolveResult> {
    let mut s = Solver::new(&gadget.graph, lists, block);
    if let Some(p) = partial {
        s = s.partial(p);
    }
    if let Some(f) = stop {
        s = s.interrupt(f);
    }
    let r = s.find()?;
    if r.status == Status::Interrupted {
        return Err(Error::Interrupted);
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Universal colorability

/// Decides whether the gadget's graph is `(lists:block)`-colorable.
pub fn check_colorable(gadget: &Gadget, lists: &ListAssignment, block: u32, stop: Interrupt) -> Result<SolveResult> {
    if lists.len() != gadget.graph.vertex_count() {
        return Err(Error::DomainMismatch { expected: gadget.graph.vertex_count(), found: lists.len() });
    }
    solve(gadget, lists, block, None, stop)
}

/// Counters for a run over many assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalStats {
    pub checked: u64,
    pub failures: u64,
    pub max_solver_nodes: u64,
    pub total_solver_nodes: u64,
    /// The failing assignment with the smallest index seen.
    pub counterexample: Option<(u64, ListAssignment)>,
}

impl UniversalStats {
    pub fn record(&mut self, index: u64, lists: &ListAssignment, result: &SolveResult) {
        self.checked += 1;
        self.max_solver_nodes = self.max_solver_nodes.max(result.nodes_explored);
        self.total_solver_nodes += result.nodes_explored;
        if result.is_unsat() {
            self.failures += 1;
            if self.counterexample.as_ref().is_none_or(|(i, _)| index < *i) {
                self.counterexample = Some((index, lists.clone()));
            }
        }
    }

    pub fn merge(mut self, other: UniversalStats) -> UniversalStats {
        self.checked += other.checked;
        self.failures += other.failures;
        self.max_solver_nodes = self.max_solver_nodes.max(other.max_solver_nodes);
        self.total_solver_nodes += other.total_solver_nodes;
        self.counterexample = match (self.counterexample, other.counterexample) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Checks colorability for every canonical half-list assignment satisfying
/// `constraint`. Fails with a capacity error when enumeration is infeasible.
pub fn verify_universal_colorability(
    gadget: &Gadget,
    constraint: ListConstraint,
    block: u32,
    stop: Interrupt,
) -> Result<UniversalStats> {
    let mut stats = UniversalStats::default();
    for (i, lists) in HalfListEnumerator::new(gadget, constraint)?.enumerate() {
        let r = check_colorable(gadget, &lists, block, stop)?;
        stats.record(i as u64, &lists, &r);
    }
    Ok(stats)
}

// ---------------------------------------------------------------------------
// Sampling

/// Size of the sampling universe: `sum |L(v)|`, capped at 64.
pub fn sampling_universe(gadget: &Gadget) -> u32 {
    gadget.half_universe().min(MAX_COLOR as u32)
}

/// The `index`-th pseudo-random half-list assignment for `seed`.
///
/// Every vertex draws a uniform subset of the right size from the sampling
/// universe. `Equal(u, v)` then copies `L(u)` to `v`, and
/// `MaxIntersection(u, v, k)` swaps surplus shared colors of `v` for the
/// smallest colors used by neither list. The result depends only on
/// `(seed, index)`.
pub fn sample_half_lists(gadget: &Gadget, constraint: ListConstraint, seed: u64, index: u64) -> Result<ListAssignment> {
    let n = gadget.graph.vertex_count();
    constraint.validate(n)?;
    let universe = sampling_universe(gadget) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut lists = Vec::with_capacity(n);
    for h in gadget.half_sizes() {
        let picked: ColorSet = index::sample(&mut rng, universe, h as usize).iter().map(|c| c as u8 + 1).collect();
        lists.push(picked);
    }
    match constraint {
        ListConstraint::Unconstrained => {}
        ListConstraint::Equal(u, v) => {
            if lists[u].len() != lists[v].len() {
                return Err(Error::InvalidParameter("Equal constraint on lists of different sizes".into()));
            }
            lists[v] = lists[u];
        }
        ListConstraint::MaxIntersection(u, v, k) => {
            let shared = lists[u].intersection(lists[v]);
            let surplus = shared.len().saturating_sub(k);
            if surplus > 0 {
                let drop: ColorSet = shared.iter().skip(k as usize).collect();
                let spare = ColorSet::range(1, universe as u8).difference(lists[u].union(lists[v]));
                if spare.len() < surplus {
                    return Err(Error::InvalidParameter("universe too small to meet MaxIntersection".into()));
                }
                lists[v] = lists[v].difference(drop).union(spare.smallest(surplus));
            }
        }
    }
    Ok(ListAssignment::new(lists))
}

/// Deterministic assignments mirroring the case split of the relaxedness
/// proofs. Gadgets containing the 5-cycle `v1 u2 v3 u4 u5` get cases where
/// all cycle lists agree, where `L(v1) = L(v3)` but another cycle list
/// differs, where `L(v1) != L(v3)`, and where the cycle lists are disjoint
/// or shifted. Every gadget also gets the all-prefix assignment
/// `L(v) = {1, ..., h(v)}`. Each case comes in two versions for the
/// off-cycle vertices: prefix lists, and fresh colors disjoint from the
/// cycle.
pub fn structured_cases(gadget: &Gadget) -> Vec<ListAssignment> {
    let sizes = gadget.half_sizes();
    let universe = sampling_universe(gadget);
    let prefix = |h: u32| ColorSet::range(1, h as u8);
    let window = |start: u32, h: u32| -> ColorSet { (0..h).map(|i| ((start + i) % universe) as u8 + 1).collect() };

    let mut out = Vec::new();
    out.push(ListAssignment::new(sizes.iter().map(|&h| prefix(h)).collect()));

    let cycle: Option<Vec<Vertex>> = G2_CYCLE.iter().map(|l| gadget.graph.vertex(l)).collect();
    let Some(cycle) = cycle else {
        return out;
    };
    let h: Vec<u32> = cycle.iter().map(|&v| sizes[v]).collect();
    if h.contains(&0) || h.iter().sum::<u32>() + 2 > universe {
        return out;
    }
    // One color of the prefix swapped for the next color up.
    let tweak = |h: u32| prefix(h - 1).union(ColorSet::singleton(h as u8 + 1));
    let top = h.iter().copied().max().unwrap_or(0);
    // cycle positions: 0 = v1, 1 = u2, 2 = v3, 3 = u4, 4 = u5
    let mut patterns: Vec<[ColorSet; 5]> = Vec::new();
    let all_equal: [ColorSet; 5] = core::array::from_fn(|i| prefix(h[i]));
    patterns.push(all_equal);
    for odd in [1, 3, 4] {
        let mut p = all_equal;
        p[odd] = tweak(h[odd]);
        patterns.push(p);
    }
    let mut p = all_equal;
    p[2] = tweak(h[2]);
    patterns.push(p);
    let mut start = 0;
    patterns.push(core::array::from_fn(|i| {
        let s = window(start, h[i]);
        start += h[i];
        s
    }));
    patterns.push(core::array::from_fn(|i| window(i as u32, h[i])));

    let cycle_colors = (top + 2).max(h.iter().sum::<u32>());
    for pattern in patterns {
        for fresh in [false, true] {
            let mut lists: Vec<ColorSet> = sizes.iter().map(|&x| prefix(x)).collect();
            let mut next = cycle_colors;
            for (v, list) in lists.iter_mut().enumerate() {
                if let Some(pos) = cycle.iter().position(|&c| c == v) {
                    *list = pattern[pos];
                } else if fresh {
                    *list = window(next, sizes[v]);
                    next += sizes[v];
                }
            }
            out.push(ListAssignment::new(lists));
        }
    }
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Relaxedness

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelaxedBranch {
    /// Condition (i): a good coloring of `{v1, v3}`.
    First,
    /// Condition (ii): `L(v1) = L(v3)` and a good coloring of `S`.
    Second,
    Neither,
}

impl RelaxedBranch {
    pub fn name(self) -> &'static str {
        match self {
            RelaxedBranch::First => "(i)",
            RelaxedBranch::Second => "(ii)",
            RelaxedBranch::Neither => "neither",
        }
    }
}

/// A half-list assignment failing both conditions, with a coloring of
/// `S ∪ {v1, v3}` that does not extend. The coloring is empty when no
/// candidate `psi0` exists at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub lists: ListAssignment,
    pub partial: SetColoring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedVerdict {
    pub holds: bool,
    pub branch: RelaxedBranch,
    pub witness_psi0: Option<SetColoring>,
    pub counterexample: Option<Counterexample>,
    pub solver_calls: u64,
    pub max_solver_nodes: u64,
}

/// Outcome of evaluating one condition.
struct Condition {
    witness: Option<SetColoring>,
    /// First non-extendable coloring found, if any.
    blocked: Option<SetColoring>,
    calls: u64,
    max_nodes: u64,
}

/// All proper colorings of `vertices` (one color each, from `lists`) that
/// extend `base`.
fn colorings_of(gadget: &Gadget, lists: &ListAssignment, vertices: &[Vertex], base: &SetColoring) -> Vec<SetColoring> {
    let mut out = Vec::new();
    let mut current = base.clone();
    extend_all(gadget, lists, vertices, &mut current, &mut out);
    out
}

fn extend_all(
    gadget: &Gadget,
    lists: &ListAssignment,
    rest: &[Vertex],
    current: &mut SetColoring,
    out: &mut Vec<SetColoring>,
) {
    let Some((&v, tail)) = rest.split_first() else {
        out.push(current.clone());
        return;
    };
    if current.get(v).is_some() {
        extend_all(gadget, lists, tail, current, out);
        return;
    }
    for c in lists.get(v).iter() {
        let set = ColorSet::singleton(c);
        let clash = gadget.graph.neighbors(v).iter().any(|&u| current.get(u) == Some(set));
        if !clash {
            current.assign(v, set).expect("singleton fits block size 1");
            extend_all(gadget, lists, tail, current, out);
            current.unassign(v);
        }
    }
}

/// Evaluates one condition: candidates `psi0` range over colorings of
/// `first`, extensions over colorings of `rest`.
fn evaluate(
    gadget: &Gadget,
    lists: &ListAssignment,
    first: &[Vertex],
    rest: &[Vertex],
    stop: Interrupt,
) -> Result<Condition> {
    let n = gadget.graph.vertex_count();
    let empty = SetColoring::empty(n, 1)?;
    let mut cond = Condition { witness: None, blocked: None, calls: 0, max_nodes: 0 };
    for psi0 in colorings_of(gadget, lists, first, &empty) {
        let mut good = true;
        for ext in colorings_of(gadget, lists, rest, &psi0) {
            let r = solve(gadget, lists, 1, Some(&ext), stop)?;
            cond.calls += 1;
            cond.max_nodes = cond.max_nodes.max(r.nodes_explored);
            if r.is_unsat() {
                if cond.blocked.is_none() {
                    cond.blocked = Some(ext);
                }
                good = false;
                break;
            }
        }
        if good {
            cond.witness = Some(psi0);
            return Ok(cond);
        }
    }
    Ok(cond)
}

fn pins(gadget: &Gadget) -> ([Vertex; 2], Vec<Vertex>) {
    ([gadget.v1, gadget.v3], gadget.s_set.clone())
}

/// Decides whether `lists` satisfies condition (i) or (ii). Condition (i)
/// is tried first, so an assignment meeting both reports (i).
pub fn check_relaxed_at(gadget: &Gadget, lists: &ListAssignment, stop: Interrupt) -> Result<RelaxedVerdict> {
    require_half_lists(gadget, lists)?;
    let (ends, s) = pins(gadget);
    let first = evaluate(gadget, lists, &ends, &s, stop)?;
    let mut calls = first.calls;
    let mut max_nodes = first.max_nodes;
    if let Some(w) = first.witness {
        return Ok(RelaxedVerdict {
            holds: true,
            branch: RelaxedBranch::First,
            witness_psi0: Some(w),
            counterexample: None,
            solver_calls: calls,
            max_solver_nodes: max_nodes,
        });
    }
    if lists.get(gadget.v1) == lists.get(gadget.v3) {
        let second = evaluate(gadget, lists, &s, &ends, stop)?;
        calls += second.calls;
        max_nodes = max_nodes.max(second.max_nodes);
        if let Some(w) = second.witness {
            return Ok(RelaxedVerdict {
                holds: true,
                branch: RelaxedBranch::Second,
                witness_psi0: Some(w),
                counterexample: None,
                solver_calls: calls,
                max_solver_nodes: max_nodes,
            });
        }
    }
    let partial = match first.blocked {
        Some(p) => p,
        None => SetColoring::empty(gadget.graph.vertex_count(), 1)?,
    };
    Ok(RelaxedVerdict {
        holds: false,
        branch: RelaxedBranch::Neither,
        witness_psi0: None,
        counterexample: Some(Counterexample { lists: lists.clone(), partial }),
        solver_calls: calls,
        max_solver_nodes: max_nodes,
    })
}

/// Witnesses for both conditions, evaluated independently. The second is
/// `None` whenever `L(v1) != L(v3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchWitnesses {
    pub first: Option<SetColoring>,
    pub second: Option<SetColoring>,
}

pub fn relaxed_branches(gadget: &Gadget, lists: &ListAssignment, stop: Interrupt) -> Result<BranchWitnesses> {
    require_half_lists(gadget, lists)?;
    let (ends, s) = pins(gadget);
    let first = evaluate(gadget, lists, &ends, &s, stop)?.witness;
    let second = if lists.get(gadget.v1) == lists.get(gadget.v3) {
        evaluate(gadget, lists, &s, &ends, stop)?.witness
    } else {
        None
    };
    Ok(BranchWitnesses { first, second })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelaxedStats {
    pub checked: u64,
    pub violations: u64,
    pub branch_first: u64,
    pub branch_second: u64,
    pub solver_calls: u64,
    pub max_solver_nodes: u64,
    /// The violating case with the smallest index seen.
    pub first_violation: Option<(u64, Counterexample)>,
}

impl RelaxedStats {
    pub fn record(&mut self, index: u64, verdict: &RelaxedVerdict) {
        self.checked += 1;
        self.solver_calls += verdict.solver_calls;
        self.max_solver_nodes = self.max_solver_nodes.max(verdict.max_solver_nodes);
        match verdict.branch {
            RelaxedBranch::First => self.branch_first += 1,
            RelaxedBranch::Second => self.branch_second += 1,
            RelaxedBranch::Neither => {
                self.violations += 1;
                if self.first_violation.as_ref().is_none_or(|(i, _)| index < *i) {
                    self.first_violation = verdict.counterexample.clone().map(|c| (index, c));
                }
            }
        }
    }

    pub fn merge(mut self, other: RelaxedStats) -> RelaxedStats {
        self.checked += other.checked;
        self.violations += other.violations;
        self.branch_first += other.branch_first;
        self.branch_second += other.branch_second;
        self.solver_calls += other.solver_calls;
        self.max_solver_nodes = self.max_solver_nodes.max(other.max_solver_nodes);
        self.first_violation = match (self.first_violation, other.first_violation) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    /// The structured cases followed by `n` samples drawn from `seed`.
    Sampled {
        n: u64,
        seed: u64,
    },
}

/// The assignments a sampled run checks, in order: structured cases first,
/// then samples `0..n`.
pub fn sampled_case(gadget: &Gadget, structured: &[ListAssignment], seed: u64, i: u64) -> Result<ListAssignment> {
    match structured.get(i as usize) {
        Some(l) => Ok(l.clone()),
        None => sample_half_lists(gadget, ListConstraint::Unconstrained, seed, i - structured.len() as u64),
    }
}

pub fn verify_relaxed(gadget: &Gadget, mode: VerifyMode, stop: Interrupt) -> Result<RelaxedStats> {
    let mut stats = RelaxedStats::default();
    match mode {
        VerifyMode::Exhaustive => {
            for (i, lists) in HalfListEnumerator::new(gadget, ListConstraint::Unconstrained)?.enumerate() {
                stats.record(i as u64, &check_relaxed_at(gadget, &lists, stop)?);
            }
        }
        VerifyMode::Sampled { n, seed } => {
            let structured = structured_cases(gadget);
            for i in 0..structured.len() as u64 + n {
                let lists = sampled_case(gadget, &structured, seed, i)?;
                stats.record(i, &check_relaxed_at(gadget, &lists, stop)?);
            }
        }
    }
    Ok(stats)
}

/// Colorability over the structured cases and `n` samples.
pub fn verify_sampled_colorability(
    gadget: &Gadget,
    n: u64,
    seed: u64,
    block: u32,
    stop: Interrupt,
) -> Result<UniversalStats> {
    let structured = structured_cases(gadget);
    let mut stats = UniversalStats::default();
    for i in 0..structured.len() as u64 + n {
        let lists = sampled_case(gadget, &structured, seed, i)?;
        stats.record(i, &lists, &check_colorable(gadget, &lists, block, stop)?);
    }
    Ok(stats)
}
