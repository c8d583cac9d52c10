//! Best-improvement 1-flip local search and its warm-start wrappers.

use crate::coloring::HardColoring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SearchRng;

/// Coloring with each vertex drawn uniformly from `0..k`.
pub fn random_coloring(n: usize, k: usize, rng: &mut SearchRng) -> Result<HardColoring> {
    if k == 0 {
        return Err(Error::invalid("color budget must be at least 1"));
    }
    HardColoring::new((0..n).map(|_| rng.index(k)).collect(), k)
}

/// Neighbor color counts plus the best available gain per vertex.
struct MoveTable<'g> {
    g: &'g Graph,
    k: usize,
    counts: Vec<u32>,
    gain: Vec<i64>,
}

impl<'g> MoveTable<'g> {
    fn new(g: &'g Graph, c: &HardColoring) -> Self {
        let k = c.k();
        let mut counts = vec![0u32; g.n() * k];
        for &(u, v) in g.edges() {
            counts[u * k + c.colors()[v]] += 1;
            counts[v * k + c.colors()[u]] += 1;
        }
        let mut table = Self {
            g,
            k,
            counts,
            gain: vec![0; g.n()],
        };
        for v in 0..g.n() {
            table.refresh(v, c.colors()[v]);
        }
        table
    }

    fn row(&self, v: usize) -> &[u32] {
        &self.counts[v * self.k..(v + 1) * self.k]
    }

    /// Loss decrease of the best recolor of `v`, currently colored `own`.
    fn refresh(&mut self, v: usize, own: usize) {
        let row = self.row(v);
        let best_other = row
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != own)
            .map(|(_, &x)| x)
            .min();
        self.gain[v] = best_other.map_or(0, |b| i64::from(row[own]) - i64::from(b));
    }

    fn recolor(&mut self, c: &mut HardColoring, v: usize, to: usize) {
        let from = c.colors()[v];
        c.set(v, to);
        for &u in self.g.neighbors(v) {
            self.counts[u * self.k + from] -= 1;
            self.counts[u * self.k + to] += 1;
            self.refresh(u, c.colors()[u]);
        }
        self.refresh(v, to);
    }
}

/// Repeatedly applies the single-vertex recolor with the largest strict loss
/// decrease until none exists.
///
/// Ties are broken uniformly among the tied vertices, then uniformly among
/// that vertex's tied target colors. `init` may use a smaller budget than `k`.
pub fn discrete_color(
    g: &Graph,
    k: usize,
    init: &HardColoring,
    rng: &mut SearchRng,
) -> Result<HardColoring> {
    if k == 0 {
        return Err(Error::invalid("color budget must be at least 1"));
    }
    if init.len() != g.n() {
        return Err(Error::shape(g.n(), init.len()));
    }
    if init.k() > k && init.colors().iter().any(|&c| c >= k) {
        return Err(Error::invalid(format!(
            "initial coloring uses colors beyond the budget {k}"
        )));
    }
    let mut c = init.with_budget(k)?;
    let mut table = MoveTable::new(g, &c);
    let mut tied = Vec::new();

    loop {
        let best = table.gain.iter().copied().max().unwrap_or(0);
        if best <= 0 {
            break;
        }
        tied.clear();
        tied.extend((0..g.n()).filter(|&v| table.gain[v] == best));
        let v = tied[rng.index(tied.len())];

        let own = c.colors()[v];
        let row = table.row(v);
        let target = i64::from(row[own]) - best;
        tied.clear();
        tied.extend((0..k).filter(|&col| col != own && i64::from(row[col]) == target));
        let to = tied[rng.index(tied.len())];

        table.recolor(&mut c, v, to);
    }
    Ok(c)
}

/// Discrete search from the 1-coloring with budgets `2, 3, ..., k`, each stage
/// warm-started from the previous result.
pub fn full_color(g: &Graph, k: usize, rng: &mut SearchRng) -> Result<HardColoring> {
    if k == 0 {
        return Err(Error::invalid("color budget must be at least 1"));
    }
    let mut c = HardColoring::monochrome(g.n());
    for j in 2..=k {
        c = discrete_color(g, j, &c, rng)?;
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleColorOutcome {
    pub coloring: HardColoring,
    pub loss: usize,
    /// Number of [`discrete_color`] invocations, `(3^k - 3) / 2` from a 1-coloring.
    pub discrete_calls: usize,
}

/// Levels at least this far from the budget fan their branches out to rayon.
const PARALLEL_DEPTH: usize = 4;

/// Three-way branching warm start.
///
/// From an `init` using `k' < k` colors, three independent discrete searches
/// with budget `k' + 1` are run, each result is recursed on, and the branch
/// with the smallest final loss wins (the earliest branch on ties).
pub fn triple_color(
    g: &Graph,
    k: usize,
    init: &HardColoring,
    rng: &mut SearchRng,
) -> Result<TripleColorOutcome> {
    triple_color_with(g, k, init, rng, true)
}

/// [`triple_color`] from the 1-coloring.
pub fn triple_color_from_scratch(
    g: &Graph,
    k: usize,
    rng: &mut SearchRng,
) -> Result<TripleColorOutcome> {
    triple_color(g, k, &HardColoring::monochrome(g.n()), rng)
}

pub(crate) fn triple_color_with(
    g: &Graph,
    k: usize,
    init: &HardColoring,
    rng: &mut SearchRng,
    parallel: bool,
) -> Result<TripleColorOutcome> {
    if k == 0 {
        return Err(Error::invalid("color budget must be at least 1"));
    }
    if init.len() != g.n() {
        return Err(Error::shape(g.n(), init.len()));
    }
    let start = init.k();
    if start > k {
        return Err(Error::invalid(format!(
            "initial coloring has budget {start}, above the target {k}"
        )));
    }
    let (coloring, discrete_calls) = triple_recurse(g, k, init.clone(), rng, parallel)?;
    let loss = crate::coloring::loss_hard(g, &coloring)?;
    Ok(TripleColorOutcome {
        coloring,
        loss,
        discrete_calls,
    })
}

fn triple_recurse(
    g: &Graph,
    k: usize,
    c: HardColoring,
    rng: &mut SearchRng,
    parallel: bool,
) -> Result<(HardColoring, usize)> {
    let level = c.k();
    if level >= k {
        return Ok((c, 0));
    }
    let mut streams = [rng.split(), rng.split(), rng.split()];
    let run = |stream: &mut SearchRng| -> Result<(HardColoring, usize, usize)> {
        let next = discrete_color(g, level + 1, &c, stream)?;
        let (done, calls) = triple_recurse(g, k, next, stream, parallel)?;
        let loss = crate::coloring::loss_hard(g, &done)?;
        Ok((done, loss, calls + 1))
    };

    let results: Vec<Result<(HardColoring, usize, usize)>> =
        if parallel && k - level >= PARALLEL_DEPTH {
            use rayon::prelude::*;
            streams.par_iter_mut().map(run).collect()
        } else {
            streams.iter_mut().map(run).collect()
        };

    let mut best: Option<(HardColoring, usize)> = None;
    let mut calls = 0;
    for r in results {
        let (coloring, loss, n) = r?;
        calls += n;
        if best.as_ref().is_none_or(|(_, l)| loss < *l) {
            best = Some((coloring, loss));
        }
    }
    Ok((best.expect("three branches").0, calls))
}

/// True if no single-vertex recolor strictly lowers the monochromatic count.
pub fn is_one_flip_optimal(g: &Graph, c: &HardColoring) -> bool {
    (0..g.n()).all(|v| {
        let own = c.colors()[v];
        let mut counts = vec![0usize; c.k()];
        for &u in g.neighbors(v) {
            counts[c.colors()[u]] += 1;
        }
        counts.iter().all(|&x| x >= counts[own])
    })
}
