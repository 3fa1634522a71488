//! Maximum clique: exact branch and bound, a greedy incumbent, and a
//! Motzkin–Straus replicator estimate.

use std::time::{Duration, Instant};

use rand::RngCore;
use thiserror::Error;

use crate::generators::{seeded_rng, unit_f64};
use crate::graph::{bits, Graph};

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

/// Per-call search limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_MAX_NODES,
            time_limit: Some(DEFAULT_TIME_LIMIT),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            time_limit: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueStatus {
    Exact,
    LowerBound,
    Timeout,
}

impl std::fmt::Display for CliqueStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CliqueStatus::Exact => "exact",
            CliqueStatus::LowerBound => "lower_bound",
            CliqueStatus::Timeout => "timeout",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliqueResult {
    pub omega: usize,
    /// Sorted vertex indices of a clique of size `omega`.
    pub witness: Vec<usize>,
    pub status: CliqueStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl CliqueResult {
    pub fn is_exact(&self) -> bool {
        self.status == CliqueStatus::Exact
    }
}

fn finish(g: &Graph, mut witness: Vec<usize>, status: CliqueStatus, nodes: u64, start: Instant) -> CliqueResult {
    witness.sort_unstable();
    assert!(g.is_clique(&witness), "clique witness {witness:?} is not a clique");
    CliqueResult {
        omega: witness.len(),
        witness,
        status,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    }
}

/// Greedy clique from one start vertex: repeatedly add the candidate with the
/// most neighbours inside the candidate set. Ties go to the lowest index, or
/// are broken at random when `rng` is given.
fn greedy_from(g: &Graph, start: usize, mut rng: Option<&mut dyn RngCore>) -> Vec<usize> {
    let mut clique = vec![start];
    let mut cand: Vec<u64> = g.row(start).to_vec();
    while !bits::is_empty(&cand) {
        let mut best: Vec<usize> = Vec::new();
        let mut best_score = 0;
        for v in bits::iter(&cand) {
            let score = g.row(v).iter().zip(&cand).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if best.is_empty() || score > best_score {
                best.clear();
                best.push(v);
                best_score = score;
            } else if score == best_score {
                best.push(v);
            }
        }
        let pick = match rng.as_deref_mut() {
            Some(r) => best[(r.next_u64() % best.len() as u64) as usize],
            None => best[0],
        };
        clique.push(pick);
        for (c, a) in cand.iter_mut().zip(g.row(pick)) {
            *c &= a;
        }
    }
    clique
}

/// Best of several greedy constructions. Restart 0 starts at the first
/// vertex of maximum degree; later restarts pick random starts and random
/// tie-breaks. Deterministic for a fixed seed.
pub fn greedy_clique(g: &Graph, restarts: usize, seed: u64) -> CliqueResult {
    let start = Instant::now();
    if g.n() == 0 {
        return finish(g, Vec::new(), CliqueStatus::LowerBound, 0, start);
    }
    let first = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("n > 0");
    let mut best = greedy_from(g, first, None);
    let mut rng = seeded_rng(seed);
    for _ in 0..restarts {
        let s = (rng.next_u64() % g.n() as u64) as usize;
        let c = greedy_from(g, s, Some(&mut rng));
        if c.len() > best.len() {
            best = c;
        }
    }
    finish(g, best, CliqueStatus::LowerBound, 1 + restarts as u64, start)
}

struct Search<'a> {
    /// Adjacency rows relabelled so that bit `i` is the `i`-th vertex in
    /// descending-degree order.
    rows: Vec<u64>,
    words: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: &'a Budget,
    start: Instant,
    aborted: bool,
}

impl Search<'_> {
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.max_nodes {
            self.aborted = true;
        } else if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(1024) && self.start.elapsed() >= limit {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// Greedy sequential colouring of `cand`; returns vertices in colour order
    /// together with their colour (1-based).
    fn color_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cand.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut k = 0;
        while !bits::is_empty(&uncolored) {
            k += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = bits::first(&avail) {
                bits::clear(&mut avail, v);
                bits::clear(&mut uncolored, v);
                for (a, r) in avail.iter_mut().zip(self.row(v)) {
                    *a &= !r;
                }
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        let (order, colors) = self.color_sort(&cand);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colors[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
            if bits::is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.aborted {
                return;
            }
            bits::clear(&mut cand, v);
        }
    }
}

/// Exact clique number by branch and bound over bitset candidate sets with
/// greedy-colouring upper bounds. Budget exhaustion yields
/// [`CliqueStatus::Timeout`] and the best clique seen.
pub fn max_clique_exact(g: &Graph, budget: &Budget) -> CliqueResult {
    let start = Instant::now();
    let n = g.n();
    if n == 0 {
        return finish(g, Vec::new(), CliqueStatus::Exact, 0, start);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let words = g.words();
    let mut rows = vec![0u64; n * words];
    for (i, &v) in order.iter().enumerate() {
        for u in g.neighbors(v) {
            bits::set(&mut rows[i * words..(i + 1) * words], pos[u]);
        }
    }

    let incumbent = greedy_clique(g, 8, 0);
    let mut search = Search {
        rows,
        words,
        best: incumbent.witness.iter().map(|&v| pos[v]).collect(),
        current: Vec::new(),
        nodes: 0,
        budget,
        start,
        aborted: false,
    };
    let mut all = vec![0u64; words];
    for i in 0..n {
        bits::set(&mut all, i);
    }
    search.expand(all);

    let status = if search.aborted {
        CliqueStatus::Timeout
    } else {
        CliqueStatus::Exact
    };
    let witness = search.best.iter().map(|&i| order[i]).collect();
    finish(g, witness, status, search.nodes, start)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MotzkinStrausError {
    #[error("graph has no edges; the objective is identically zero")]
    Edgeless,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicatorOptions {
    /// Iteration cap per start.
    pub max_iterations: usize,
    /// Random starts in addition to the barycentre.
    pub restarts: usize,
    pub seed: u64,
    /// Stop when the relative objective change falls below this.
    pub rel_tol: f64,
}

impl Default for ReplicatorOptions {
    fn default() -> Self {
        ReplicatorOptions {
            max_iterations: 10_000,
            restarts: 16,
            seed: 0,
            rel_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MotzkinStrausEstimate {
    /// Best value of `sum over edges x_i x_j` found on the simplex.
    pub f_star: f64,
    /// `1 / (1 - 2 f_star)`, unrounded.
    pub omega_estimate: f64,
    /// The point attaining `f_star`.
    pub x: Vec<f64>,
    pub iterations: usize,
}

/// Runs replicator dynamics `x_i <- x_i (Ax)_i / x'Ax` from the barycentre
/// and from `restarts` random points of the simplex. The result is a local
/// optimum, so `omega_estimate` is a heuristic, not a certified bound.
pub fn motzkin_straus_estimate(
    g: &Graph,
    opts: &ReplicatorOptions,
) -> Result<MotzkinStrausEstimate, MotzkinStrausError> {
    if g.m() == 0 {
        return Err(MotzkinStrausError::Edgeless);
    }
    let n = g.n();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut rng = seeded_rng(opts.seed);
    let mut best: Option<MotzkinStrausEstimate> = None;
    let mut total_iters = 0;

    for run in 0..=opts.restarts {
        let mut x: Vec<f64> = if run == 0 {
            vec![1.0 / n as f64; n]
        } else {
            // Uniform sample from the simplex.
            let raw: Vec<f64> = (0..n).map(|_| -(1.0 - unit_f64(&mut rng)).ln()).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|v| v / total).collect()
        };
        let mut ax = vec![0.0; n];
        let mut quad = 0.0;
        for it in 0..opts.max_iterations {
            for (v, slot) in ax.iter_mut().enumerate() {
                *slot = nbrs[v].iter().map(|&u| x[u]).sum();
            }
            let q: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
            if q <= 0.0 {
                // Support is an independent set; this start is stuck at 0.
                break;
            }
            for (xi, ai) in x.iter_mut().zip(&ax) {
                *xi *= ai / q;
            }
            total_iters += 1;
            let converged = it > 0 && (q - quad).abs() <= opts.rel_tol * q;
            quad = q;
            if converged {
                break;
            }
        }
        // Objective at the final point.
        for (v, slot) in ax.iter_mut().enumerate() {
            *slot = nbrs[v].iter().map(|&u| x[u]).sum();
        }
        let f = 0.5 * x.iter().zip(&ax).map(|(a, b)| a * b).sum::<f64>();
        if best.as_ref().is_none_or(|b| f > b.f_star) {
            best = Some(MotzkinStrausEstimate {
                f_star: f,
                omega_estimate: 1.0 / (1.0 - 2.0 * f),
                x,
                iterations: 0,
            });
        }
    }
    let mut best = best.expect("at least one start");
    best.iterations = total_iters;
    Ok(best)
}
