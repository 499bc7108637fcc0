//! Networks for dense one-body Hamiltonians (every pair interacts).

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::isoperimetry::LinearOrder;
use crate::lattice::{make_grid, InteractionGraph, TermKind};

use super::grid::assemble;
use super::schedule::Schedule;
use super::{InteractRecord, Layer, SwapNetwork};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DenseMode {
    /// `n − 2` swap layers of odd-even brickwork.
    #[default]
    SwapOptimal,
    /// One perfect matching per interaction layer, `n − 1` of them.
    InteractionOptimal,
}

impl DenseMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DenseMode::SwapOptimal => "swap_optimal",
            DenseMode::InteractionOptimal => "interaction_optimal",
        }
    }
}

impl fmt::Display for DenseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DenseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "swap_optimal" => Ok(DenseMode::SwapOptimal),
            "interaction_optimal" => Ok(DenseMode::InteractionOptimal),
            other => Err(Error::UnsupportedMode(other.to_string())),
        }
    }
}

/// Circle-method 1-factorization of `K_n`: vertex `n − 1` stays fixed while
/// the others rotate.
pub fn round_robin_matchings(n: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("round robin needs an even n >= 2, got {n}")));
    }
    let k = n - 1;
    Ok((0..k)
        .map(|r| {
            let mut m = vec![(k, r)];
            for j in 1..n / 2 {
                m.push(((r + j) % k, (r + k - j) % k));
            }
            m
        })
        .collect())
}

pub fn dense_network(n: usize, mode: DenseMode) -> Result<SwapNetwork> {
    if n < 2 {
        return Err(invalid("dense network needs at least two modes"));
    }
    match mode {
        DenseMode::SwapOptimal => {
            let ig = InteractionGraph::complete(n)?;
            let swaps = (0..n - 2)
                .map(|k| (k % 2..n - 1).step_by(2).collect())
                .collect();
            let sched = Schedule {
                initial: (0..n).collect(),
                swaps,
            };
            assemble(&ig, &sched)
        }
        DenseMode::InteractionOptimal => {
            if n % 2 == 1 {
                return Err(Error::UnsupportedMode(format!(
                    "interaction_optimal needs an even mode count, got {n}"
                )));
            }
            matching_network(n)
        }
    }
}

/// Routes between consecutive perfect matchings with odd-even
/// transposition sort. Each matching is laid out pair by pair in order of
/// the pair's current mean position, so little movement is needed.
fn matching_network(n: usize) -> Result<SwapNetwork> {
    let grid = make_grid(&[n])?;
    let mut layers = Vec::new();
    let mut line: Vec<usize> = Vec::new();
    for m in round_robin_matchings(n)? {
        let target = if line.is_empty() {
            m.iter().flat_map(|&(a, b)| [a, b]).collect()
        } else {
            let mut pos = vec![0; n];
            for (p, &v) in line.iter().enumerate() {
                pos[v] = p;
            }
            let mut pairs: Vec<(usize, usize)> = m
                .iter()
                .map(|&(a, b)| if pos[a] < pos[b] { (a, b) } else { (b, a) })
                .collect();
            pairs.sort_by_key(|&(a, b)| pos[a] + pos[b]);
            let target: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            layers.extend(route(&mut line, &target).into_iter().map(Layer::Swap));
            target
        };
        if line.is_empty() {
            line = target.clone();
        }
        debug_assert_eq!(line, target);
        let recs = (0..n / 2)
            .map(|i| InteractRecord::pair(2 * i, TermKind::Hop, line[2 * i], line[2 * i + 1]))
            .collect();
        layers.push(Layer::Interact(recs));
    }
    let first: Vec<usize> = round_robin_matchings(n)?[0]
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect();
    SwapNetwork::new(grid, LinearOrder::from_sequence(first)?, layers)
}

/// Odd-even transposition sort of `line` into `target`; returns the
/// non-empty swap layers used.
fn route(line: &mut [usize], target: &[usize]) -> Vec<Vec<usize>> {
    let n = line.len();
    let mut rank = vec![0; n];
    for (p, &v) in target.iter().enumerate() {
        rank[v] = p;
    }
    let mut out = Vec::new();
    let mut parity = 0;
    let mut idle = 0;
    while idle < 2 {
        let layer: Vec<usize> = (parity..n.saturating_sub(1))
            .step_by(2)
            .filter(|&i| rank[line[i]] > rank[line[i + 1]])
            .collect();
        if layer.is_empty() {
            idle += 1;
        } else {
            idle = 0;
            for &i in &layer {
                line.swap(i, i + 1);
            }
            out.push(layer);
        }
        parity ^= 1;
    }
    out
}
