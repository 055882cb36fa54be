//! Exact maximum-monochromatic-set search over any coloring oracle, an
//! independent exhaustive checker, and the verification entry point for
//! negative partition relations.
//!
//! The searcher is a depth-first extension over ground elements in
//! increasing order. A partial set X carries the list of candidates that
//! keep every u-subset monochromatic; choosing v filters the remaining
//! candidates w by testing the u-subsets that contain both v and w (the
//! only ones not already covered). Branches that cannot beat the best size
//! found so far are cut. Ties break toward the lexicographically least
//! witness, so results are reproducible; with several workers the sizes are
//! still exact and deterministic, and witnesses stay deterministic for
//! uncapped runs.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use crate::coloring::{binomial, next_subset, Color, ColoringOracle};
use crate::error::{Error, Result};

/// Default ceiling for [`exhaustive_check`]: the number of subset pairs
/// (m-subset, u-subset) it would have to enumerate.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 1_000_000_000;

/// Tuning for the pruned search.
#[derive(Default)]
pub struct SearchOptions {
    /// Worker count; 0 or 1 runs single-threaded. Parallel runs split on
    /// the smallest element of the set.
    pub jobs: usize,
    /// Abort with a budget error after this many explored nodes.
    pub node_budget: Option<u64>,
    /// Called after each completed first-level branch with (branch element,
    /// nodes in that branch, best size so far in that branch).
    pub progress: Option<ProgressFn>,
}

pub type ProgressFn = Box<dyn Fn(u64, u64, u32) + Send + Sync>;

impl SearchOptions {
    pub fn single_threaded() -> Self {
        SearchOptions::default()
    }

    pub fn with_jobs(jobs: usize) -> Self {
        SearchOptions { jobs, ..SearchOptions::default() }
    }
}

/// Result of one per-color search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorOutcome {
    pub color: Color,
    /// Exact maximum when `reached_cap` is false; otherwise the cap, and a
    /// monochromatic set of that size exists.
    pub size: u32,
    /// A set attaining `size`; lexicographically least for single-threaded
    /// and for uncapped parallel runs.
    pub witness: Vec<u64>,
    pub reached_cap: bool,
    pub nodes: u64,
}

/// Per-color maxima of an oracle, with search statistics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchResult {
    pub outcomes: Vec<ColorOutcome>,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

/// A negative partition relation claim: on `ground` elements, coloring
/// `uniformity`-subsets with `num_colors` colors, no color i admits a
/// monochromatic set of size `thresholds[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationStatement {
    pub ground: u64,
    pub uniformity: u32,
    pub num_colors: u32,
    pub thresholds: Vec<u32>,
}

impl RelationStatement {
    pub fn new(ground: u64, uniformity: u32, num_colors: u32, thresholds: Vec<u32>) -> Result<Self> {
        if thresholds.len() != num_colors as usize {
            return Err(Error::input(format!(
                "{} thresholds for {num_colors} colors",
                thresholds.len()
            )));
        }
        if thresholds.iter().any(|&t| t == 0) {
            return Err(Error::input("thresholds must be at least 1"));
        }
        Ok(RelationStatement { ground, uniformity, num_colors, thresholds })
    }

    pub fn for_oracle(oracle: &dyn ColoringOracle, thresholds: Vec<u32>) -> Result<Self> {
        RelationStatement::new(
            oracle.ground_size(),
            oracle.uniformity(),
            oracle.num_colors(),
            thresholds,
        )
    }

    pub fn matches_oracle(&self, oracle: &dyn ColoringOracle) -> Result<()> {
        if self.ground != oracle.ground_size()
            || self.uniformity != oracle.uniformity()
            || self.num_colors != oracle.num_colors()
        {
            return Err(Error::input(format!(
                "statement is about ground {} uniformity {} colors {}, oracle has \
                 ground {} uniformity {} colors {}",
                self.ground,
                self.uniformity,
                self.num_colors,
                oracle.ground_size(),
                oracle.uniformity(),
                oracle.num_colors()
            )));
        }
        Ok(())
    }
}

/// One color's verdict inside a verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorVerdict {
    pub color: Color,
    pub threshold: u32,
    /// Exact maximum when `reached` is false; equals the threshold when
    /// `reached` is true (the search stops at the first violation).
    pub max_size: u32,
    pub reached: bool,
    pub witness: Option<Vec<u64>>,
}

/// Outcome of verifying a negative relation statement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationOutcome {
    pub statement: RelationStatement,
    pub verdicts: Vec<ColorVerdict>,
    pub pass: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

struct Shared<'a> {
    oracle: &'a dyn ColoringOracle,
    color: Color,
    u: usize,
    cap: Option<u32>,
    stop: AtomicBool,
    nodes: AtomicU64,
    budget: Option<u64>,
    budget_blown: AtomicBool,
}

impl<'a> Shared<'a> {
    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

struct Worker<'a> {
    shared: &'a Shared<'a>,
    /// Local node count, flushed to the shared counter in batches so the
    /// budget check does not serialize the workers.
    local_nodes: u64,
    unflushed: u64,
    idx: Vec<usize>,
    subset: Vec<u64>,
    best_size: u32,
    best_witness: Vec<u64>,
}

const FLUSH_EVERY: u64 = 1024;

impl<'a> Worker<'a> {
    fn new(shared: &'a Shared<'a>) -> Self {
        Worker {
            shared,
            local_nodes: 0,
            unflushed: 0,
            idx: Vec::new(),
            subset: vec![0; shared.u.max(2)],
            best_size: 0,
            best_witness: Vec::new(),
        }
    }

    fn count_node(&mut self) -> Result<()> {
        self.local_nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        if self.unflushed == 0 {
            return Ok(());
        }
        let total = self.shared.nodes.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
        self.unflushed = 0;
        if let Some(limit) = self.shared.budget {
            if total > limit {
                self.shared.budget_blown.store(true, Ordering::Relaxed);
                self.shared.stop.store(true, Ordering::Relaxed);
                return Err(Error::Budget { required: u128::from(total), limit: u128::from(limit) });
            }
        }
        Ok(())
    }

    /// True when every u-subset of X + {v, w} containing both v and w has
    /// the target color. Those are exactly {v, w} plus a (u-2)-subset of X.
    fn pair_ok(&mut self, x: &[u64], v: u64, w: u64) -> Result<bool> {
        let u = self.shared.u;
        if u == 1 {
            return Ok(true);
        }
        let need = u - 2;
        if x.len() < need {
            return Ok(true);
        }
        self.subset[need] = v;
        self.subset[need + 1] = w;
        if need == 0 {
            return Ok(self.shared.oracle.color_of(&self.subset[..2])? == self.shared.color);
        }
        self.idx.clear();
        self.idx.extend(0..need);
        loop {
            for (slot, &i) in self.idx.iter().enumerate() {
                self.subset[slot] = x[i];
            }
            if self.shared.oracle.color_of(&self.subset[..need + 2])? != self.shared.color {
                return Ok(false);
            }
            // Advance the index combination; finished when none can move.
            let mut pos = need;
            loop {
                if pos == 0 {
                    return Ok(true);
                }
                pos -= 1;
                let ceiling = if pos + 1 < need { self.idx[pos + 1] - 1 } else { x.len() - 1 };
                if self.idx[pos] < ceiling {
                    self.idx[pos] += 1;
                    for j in pos + 1..need {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn record(&mut self, x: &[u64]) {
        if x.len() as u32 > self.best_size {
            self.best_size = x.len() as u32;
            self.best_witness = x.to_vec();
            if let Some(cap) = self.shared.cap {
                if self.best_size >= cap {
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    fn extend(&mut self, x: &mut Vec<u64>, cands: &[u64]) -> Result<()> {
        self.record(x);
        for (i, &v) in cands.iter().enumerate() {
            if self.shared.stopped() {
                return Ok(());
            }
            if x.len() as u32 + (cands.len() - i) as u32 <= self.best_size {
                break;
            }
            self.count_node()?;
            let mut next = Vec::with_capacity(cands.len() - i - 1);
            for &w in &cands[i + 1..] {
                if self.pair_ok(x, v, w)? {
                    next.push(w);
                }
            }
            x.push(v);
            self.extend(x, &next)?;
            x.pop();
        }
        Ok(())
    }

    /// Runs the branch of all sets whose minimum is `v`, given the elements
    /// after v. Assumes singleton feasibility was already handled.
    fn run_branch(&mut self, v: u64, rest: &[u64]) -> Result<()> {
        self.count_node()?;
        let mut cands = Vec::with_capacity(rest.len());
        for &w in rest {
            if self.pair_ok(&[], v, w)? {
                cands.push(w);
            }
        }
        let mut x = vec![v];
        self.extend(&mut x, &cands)?;
        self.flush()
    }
}

fn top_level_elements(oracle: &dyn ColoringOracle, color: Color) -> Result<Vec<u64>> {
    let m = oracle.ground_size();
    if oracle.uniformity() == 1 {
        // Only elements of the right color can ever join a set.
        (1..=m)
            .filter_map(|e| match oracle.color_of(&[e]) {
                Ok(c) if c == color => Some(Ok(e)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            })
            .collect()
    } else {
        Ok((1..=m).collect())
    }
}

/// Exact size of the largest set all of whose u-subsets have the given
/// color, plus a witness. With `cap`, stops early at the first set of that
/// size and flags `reached_cap`. Sets smaller than u are vacuously
/// monochromatic, so the answer is at least min(u - 1, ground size) for
/// uniformity >= 2.
pub fn max_monochromatic(
    oracle: &dyn ColoringOracle,
    color: Color,
    cap: Option<u32>,
    opts: &SearchOptions,
) -> Result<ColorOutcome> {
    if color >= oracle.num_colors() {
        return Err(Error::input(format!(
            "color {color} out of range 0..{}",
            oracle.num_colors()
        )));
    }
    if cap == Some(0) {
        return Ok(ColorOutcome { color, size: 0, witness: vec![], reached_cap: true, nodes: 0 });
    }
    let shared = Shared {
        oracle,
        color,
        u: oracle.uniformity() as usize,
        cap,
        stop: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        budget: opts.node_budget,
        budget_blown: AtomicBool::new(false),
    };
    let top = top_level_elements(oracle, color)?;

    let (size, witness) = if opts.jobs > 1 {
        parallel_search(&shared, &top, opts)?
    } else {
        sequential_search(&shared, &top, opts)?
    };

    let reached_cap = cap.is_some_and(|c| size >= c);
    let outcome = ColorOutcome {
        color,
        size,
        witness,
        reached_cap,
        nodes: shared.nodes.load(Ordering::Relaxed),
    };
    validate_witness(oracle, color, &outcome.witness)?;
    Ok(outcome)
}

fn sequential_search(
    shared: &Shared,
    top: &[u64],
    opts: &SearchOptions,
) -> Result<(u32, Vec<u64>)> {
    let mut worker = Worker::new(shared);
    for (i, &v) in top.iter().enumerate() {
        if shared.stopped() {
            break;
        }
        if (top.len() - i) as u32 <= worker.best_size {
            break;
        }
        let nodes_before = worker.local_nodes;
        worker.run_branch(v, &top[i + 1..])?;
        if let Some(progress) = &opts.progress {
            progress(v, worker.local_nodes - nodes_before, worker.best_size);
        }
    }
    worker.flush()?;
    Ok((worker.best_size, std::mem::take(&mut worker.best_witness)))
}

fn parallel_search(
    shared: &Shared,
    top: &[u64],
    opts: &SearchOptions,
) -> Result<(u32, Vec<u64>)> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::input(format!("cannot build worker pool: {e}")))?;
    let branches: Result<Vec<(u32, Vec<u64>)>> = pool.install(|| {
        (0..top.len())
            .into_par_iter()
            .map(|i| {
                let mut worker = Worker::new(shared);
                if !shared.stopped() {
                    worker.run_branch(top[i], &top[i + 1..])?;
                }
                if let Some(progress) = &opts.progress {
                    progress(top[i], worker.local_nodes, worker.best_size);
                }
                Ok((worker.best_size, std::mem::take(&mut worker.best_witness)))
            })
            .collect()
    });
    let branches = match branches {
        Ok(b) => b,
        Err(e) => {
            // A budget error beats any sibling error raced against it.
            if shared.budget_blown.load(Ordering::Relaxed) {
                if let Error::Budget { .. } = e {
                    return Err(e);
                }
                return Err(Error::Budget {
                    required: u128::from(shared.nodes.load(Ordering::Relaxed)),
                    limit: u128::from(shared.budget.unwrap_or(0)),
                });
            }
            return Err(e);
        }
    };
    // Branches are in increasing order of their minimum element, so taking
    // the first branch attaining the overall maximum keeps the witness
    // lexicographically least.
    let mut best: (u32, Vec<u64>) = (0, vec![]);
    for (size, witness) in branches {
        if size > best.0 {
            best = (size, witness);
        }
    }
    Ok(best)
}

/// Re-derives that every u-subset of `witness` has the claimed color.
/// Runs on every emission; a failure is a searcher bug, not bad input.
pub fn validate_witness(oracle: &dyn ColoringOracle, color: Color, witness: &[u64]) -> Result<()> {
    let u = oracle.uniformity() as usize;
    for w in witness.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::invariant("witness not strictly increasing"));
        }
    }
    if witness.len() < u {
        return Ok(());
    }
    let mut idx: Vec<u64> = (1..=u as u64).collect();
    let mut subset = vec![0u64; u];
    loop {
        for (slot, &i) in idx.iter().enumerate() {
            subset[slot] = witness[i as usize - 1];
        }
        let got = oracle.color_of(&subset)?;
        if got != color {
            return Err(Error::invariant(format!(
                "witness subset {subset:?} has color {got}, expected {color}"
            )));
        }
        if !next_subset(&mut idx, witness.len() as u64) {
            break;
        }
    }
    Ok(())
}

/// Independent oracle: does any monochromatic m-set exist? Plain
/// enumeration of every m-subset against every one of its u-subsets, with
/// no pruning; refuses instances whose enumeration would exceed `budget`
/// (default [`DEFAULT_EXHAUSTIVE_BUDGET`]) rather than sampling.
pub fn exhaustive_check(
    oracle: &dyn ColoringOracle,
    color: Color,
    m: u32,
    budget: Option<u128>,
) -> Result<bool> {
    if color >= oracle.num_colors() {
        return Err(Error::input(format!(
            "color {color} out of range 0..{}",
            oracle.num_colors()
        )));
    }
    let limit = budget.unwrap_or(DEFAULT_EXHAUSTIVE_BUDGET);
    let ground = oracle.ground_size();
    let u = oracle.uniformity();
    if m == 0 {
        return Ok(true);
    }
    if u64::from(m) > ground {
        return Ok(false);
    }
    let required = binomial(ground, u64::from(m))
        .saturating_mul(binomial(u64::from(m), u64::from(u)).max(1));
    if required > limit {
        return Err(Error::Budget { required, limit });
    }
    let mut members: Vec<u64> = (1..=u64::from(m)).collect();
    let mut idx: Vec<u64> = (1..=u64::from(u.min(m))).collect();
    let mut subset = vec![0u64; u as usize];
    'outer: loop {
        if m >= u {
            let mono = 'check: {
                idx.iter_mut().enumerate().for_each(|(j, i)| *i = j as u64 + 1);
                loop {
                    for (slot, &i) in idx.iter().enumerate() {
                        subset[slot] = members[i as usize - 1];
                    }
                    if oracle.color_of(&subset)? != color {
                        break 'check false;
                    }
                    if !next_subset(&mut idx, u64::from(m)) {
                        break 'check true;
                    }
                }
            };
            if mono {
                return Ok(true);
            }
        } else {
            // Below the uniformity every set is vacuously monochromatic.
            return Ok(true);
        }
        if !next_subset(&mut members, ground) {
            break 'outer;
        }
    }
    Ok(false)
}

/// Per-color exact maxima (no cap) over all colors of an oracle.
pub fn search_all_colors(oracle: &dyn ColoringOracle, opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    let mut nodes = 0;
    for color in 0..oracle.num_colors() {
        let out = max_monochromatic(oracle, color, None, opts)?;
        nodes += out.nodes;
        outcomes.push(out);
    }
    Ok(SearchResult { outcomes, nodes, elapsed_ms: start.elapsed().as_millis() as u64 })
}

/// Verifies a negative partition relation: for each color i, searches with
/// cap thresholds[i] and passes iff no color reaches its threshold. A
/// failing color carries the violating monochromatic set.
pub fn verify_negative_relation(
    oracle: &dyn ColoringOracle,
    statement: &RelationStatement,
    opts: &SearchOptions,
) -> Result<VerificationOutcome> {
    statement.matches_oracle(oracle)?;
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut nodes = 0;
    for (color, &threshold) in statement.thresholds.iter().enumerate() {
        let out = max_monochromatic(oracle, color as Color, Some(threshold), opts)?;
        nodes += out.nodes;
        verdicts.push(ColorVerdict {
            color: color as Color,
            threshold,
            max_size: out.size,
            reached: out.reached_cap,
            witness: if out.reached_cap { Some(out.witness) } else { None },
        });
    }
    let pass = verdicts.iter().all(|v| !v.reached);
    Ok(VerificationOutcome {
        statement: statement.clone(),
        verdicts,
        pass,
        nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
