//! Multi-threaded versions of the quantified checks. Results merge
//! order-independently, so they match the sequential drivers in the core
//! crate exactly.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use setcolor_core::choosability::{sampled_case, BranchWitnesses};
use setcolor_core::gadgets::FinalConstruction;
use setcolor_core::theorem::{color_by_procedure, sample_uniform_lists};
use setcolor_core::{
    check_colorable, check_relaxed_at, relaxed_branches, structured_cases, Error, Gadget, HalfListEnumerator,
    ListConstraint, RelaxedStats, Result, UniversalStats, VerifyMode,
};

/// Wall-clock limit shared by every solver call of one claim.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn new(timeout: Option<Duration>) -> Self {
        Budget { deadline: timeout.map(|t| Instant::now() + t) }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn check(&self) -> Result<()> {
        if self.expired() {
            Err(Error::Interrupted)
        } else {
            Ok(())
        }
    }
}

pub fn universal(gadget: &Gadget, constraint: ListConstraint, block: u32, budget: Budget) -> Result<UniversalStats> {
    let stop = move || budget.expired();
    HalfListEnumerator::new(gadget, constraint)?
        .enumerate()
        .par_bridge()
        .map(|(i, lists)| {
            budget.check()?;
            let mut s = UniversalStats::default();
            s.record(i as u64, &lists, &check_colorable(gadget, &lists, block, Some(&stop))?);
            Ok(s)
        })
        .try_reduce(UniversalStats::default, |a, b| Ok(a.merge(b)))
}

/// Colorability over the structured cases followed by `n` samples.
pub fn sampled_colorability(gadget: &Gadget, n: u64, seed: u64, block: u32, budget: Budget) -> Result<UniversalStats> {
    let structured = structured_cases(gadget);
    let stop = move || budget.expired();
    (0..structured.len() as u64 + n)
        .into_par_iter()
        .map(|i| {
            budget.check()?;
            let lists = sampled_case(gadget, &structured, seed, i)?;
            let mut s = UniversalStats::default();
            s.record(i, &lists, &check_colorable(gadget, &lists, block, Some(&stop))?);
            Ok(s)
        })
        .try_reduce(UniversalStats::default, |a, b| Ok(a.merge(b)))
}

pub fn relaxed(gadget: &Gadget, mode: VerifyMode, budget: Budget) -> Result<RelaxedStats> {
    let stop = move || budget.expired();
    let one = |i: u64, lists: &setcolor_core::ListAssignment| -> Result<RelaxedStats> {
        budget.check()?;
        let mut s = RelaxedStats::default();
        s.record(i, &check_relaxed_at(gadget, lists, Some(&stop))?);
        Ok(s)
    };
    match mode {
        VerifyMode::Exhaustive => HalfListEnumerator::new(gadget, ListConstraint::Unconstrained)?
            .enumerate()
            .par_bridge()
            .map(|(i, l)| one(i as u64, &l))
            .try_reduce(RelaxedStats::default, |a, b| Ok(a.merge(b))),
        VerifyMode::Sampled { n, seed } => {
            let structured = structured_cases(gadget);
            (0..structured.len() as u64 + n)
                .into_par_iter()
                .map(|i| one(i, &sampled_case(gadget, &structured, seed, i)?))
                .try_reduce(RelaxedStats::default, |a, b| Ok(a.merge(b)))
        }
    }
}

/// How many structured cases satisfy only (i), only (ii), both, neither.
pub fn structured_branch_table(gadget: &Gadget, budget: Budget) -> Result<[u64; 4]> {
    let stop = move || budget.expired();
    let cases = structured_cases(gadget);
    let found: Vec<BranchWitnesses> =
        cases.par_iter().map(|l| relaxed_branches(gadget, l, Some(&stop))).collect::<Result<_>>()?;
    let mut table = [0u64; 4];
    for w in found {
        let slot = match (w.first.is_some(), w.second.is_some()) {
            (true, false) => 0,
            (false, true) => 1,
            (true, true) => 2,
            (false, false) => 3,
        };
        table[slot] += 1;
    }
    Ok(table)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProcedureStats {
    pub colored: u64,
    pub failures: u64,
    pub instances_solved: u64,
    pub max_copy_nodes: u64,
    pub total_copy_nodes: u64,
    /// Smallest failing sample index with its error message.
    pub first_failure: Option<(u64, String)>,
}

impl ProcedureStats {
    fn merge(mut self, o: ProcedureStats) -> ProcedureStats {
        self.colored += o.colored;
        self.failures += o.failures;
        self.instances_solved += o.instances_solved;
        self.max_copy_nodes = self.max_copy_nodes.max(o.max_copy_nodes);
        self.total_copy_nodes += o.total_copy_nodes;
        self.first_failure = match (self.first_failure, o.first_failure) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Runs the 4-choosability coloring procedure on `n` random size-4 list
/// assignments over `{1..universe}`.
pub fn procedure_samples(
    fc: &FinalConstruction,
    n: u64,
    universe: u32,
    seed: u64,
    budget: Budget,
) -> Result<ProcedureStats> {
    let stop = move || budget.expired();
    let count = fc.graph.vertex_count();
    (0..n)
        .into_par_iter()
        .map(|i| {
            budget.check()?;
            let lists = sample_uniform_lists(count, 4, universe, seed, i)?;
            let mut s = ProcedureStats::default();
            match color_by_procedure(fc, &lists, Some(&stop)) {
                Ok(o) => {
                    s.colored = 1;
                    s.instances_solved = o.instances_solved as u64;
                    s.max_copy_nodes = o.max_copy_nodes;
                    s.total_copy_nodes = o.total_copy_nodes;
                }
                Err(Error::Interrupted) => return Err(Error::Interrupted),
                Err(e) => {
                    s.failures = 1;
                    s.first_failure = Some((i, e.to_string()));
                }
            }
            Ok(s)
        })
        .try_reduce(ProcedureStats::default, |a, b| Ok(a.merge(b)))
}
