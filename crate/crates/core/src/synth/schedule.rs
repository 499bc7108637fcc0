//! Initial interleaving and swap scheduling for bipartite grids.
//!
//! Even-shell vertices never move on their own; odd-shell vertices travel
//! toward higher line positions until each required edge has been adjacent
//! at least once. The schedule is then recompressed so every odd vertex
//! starts as late as possible, which spreads adjacencies over more time
//! points and gives the interaction packer room to work.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::isoperimetry::{sigma_rows_with_axes, validate_axes, LinearOrder};
use crate::lattice::GridGraph;

/// Initial line order and forward swap layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Schedule {
    pub initial: Vec<usize>,
    pub swaps: Vec<Vec<usize>>,
}

impl Schedule {
    /// Line order at every time point `0..=swaps.len()`.
    pub fn lines(&self) -> Vec<Vec<usize>> {
        let mut line = self.initial.clone();
        let mut out = vec![line.clone()];
        for layer in &self.swaps {
            for &i in layer {
                line.swap(i, i + 1);
            }
            out.push(line.clone());
        }
        out
    }
}

fn infeasible(msg: impl Into<String>) -> Error {
    Error::Infeasible(msg.into())
}

/// Initial order for the σ-row scheme with the identity axis order.
pub fn interleave_orders(g: &GridGraph) -> Result<LinearOrder> {
    let axes: Vec<usize> = (0..g.ndim()).collect();
    LinearOrder::from_sequence(interleave_with_axes(g, &axes)?)
}

/// Even shells in σ-row order form a skeleton; odd-shell vertices are
/// scanned from last to first and dropped into the rightmost gap that keeps
/// them next to their lower neighbors in the same σ-row.
pub(crate) fn interleave_with_axes(g: &GridGraph, axes: &[usize]) -> Result<Vec<usize>> {
    validate_axes(g, axes)?;
    let n = g.num_vertices();
    let max_sum: usize = g.dims().iter().map(|d| d - 1).sum();
    let mut skeleton = Vec::new();
    let mut odd = Vec::new();
    for s in 0..=max_sum {
        for row in sigma_rows_with_axes(g, s, axes)? {
            if s % 2 == 0 {
                skeleton.extend(row.elements);
            } else {
                odd.extend(row.elements);
            }
        }
    }
    let mut skel_pos = vec![usize::MAX; n];
    for (i, &v) in skeleton.iter().enumerate() {
        skel_pos[v] = i;
    }
    let row_key = |v: usize| -> Vec<usize> { axes[2.min(axes.len())..].iter().map(|&a| g.component(v, a)).collect() };

    let mut gap = vec![0usize; odd.len()];
    let mut gmax = skeleton.len();
    let mut next_first = false;
    for idx in (0..odd.len()).rev() {
        let u = odd[idx];
        let s = g.coord_sum(u);
        let key = row_key(u);
        let mut js: Vec<usize> = g
            .neighbors(u)
            .into_iter()
            .filter(|&w| g.coord_sum(w) + 1 == s && row_key(w) == key)
            .map(|w| skel_pos[w])
            .collect();
        js.sort_unstable();
        match js.as_slice() {
            [lo, hi] => {
                if lo + 1 != *hi || *hi >= gmax {
                    return Err(infeasible(format!("no gap for {}", g.coord(u))));
                }
                gap[idx] = *hi;
                gmax = *hi;
                next_first = true;
            }
            [j] => {
                let j = *j;
                if j + 1 < gmax || (j + 1 == gmax && !next_first) {
                    gap[idx] = j + 1;
                    gmax = j + 1;
                    next_first = true;
                } else if j < gmax {
                    gap[idx] = j;
                    gmax = j;
                    next_first = false;
                } else {
                    return Err(infeasible(format!("no gap for {}", g.coord(u))));
                }
            }
            [] => {
                let slot = if next_first {
                    gmax
                        .checked_sub(1)
                        .ok_or_else(|| infeasible(format!("no gap for {}", g.coord(u))))?
                } else {
                    gmax
                };
                gap[idx] = slot;
                gmax = slot;
                next_first = false;
            }
            _ => return Err(infeasible(format!("{} has too many lower neighbors", g.coord(u)))),
        }
    }

    let mut line = Vec::with_capacity(n);
    let mut oi = 0;
    for slot in 0..=skeleton.len() {
        while oi < odd.len() && gap[oi] == slot {
            line.push(odd[oi]);
            oi += 1;
        }
        if slot < skeleton.len() {
            line.push(skeleton[slot]);
        }
    }
    debug_assert_eq!(line.len(), n);
    Ok(line)
}

/// Required edges indexed for fast lookup.
pub(crate) struct EdgeIndex {
    pub edges: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
    incident: Vec<Vec<(usize, usize)>>,
}

impl EdgeIndex {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut lookup = HashMap::new();
        let mut incident = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            lookup.insert((a.min(b), a.max(b)), i);
            incident[a].push((b, i));
            incident[b].push((a, i));
        }
        EdgeIndex {
            edges: edges.to_vec(),
            lookup,
            incident,
        }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }
}

/// Required edges adjacent at each time point, as `(edge, left position)`.
pub(crate) fn adjacency_windows(sched: &Schedule, idx: &EdgeIndex) -> Vec<Vec<(usize, usize)>> {
    sched
        .lines()
        .iter()
        .map(|line| {
            line.windows(2)
                .enumerate()
                .filter_map(|(p, w)| idx.get(w[0], w[1]).map(|e| (e, p)))
                .collect()
        })
        .collect()
}

/// Builds the swap schedule for the σ-row scheme under `axes`.
pub(crate) fn stage_schedule(g: &GridGraph, axes: &[usize], idx: &EdgeIndex) -> Result<Schedule> {
    let initial = interleave_with_axes(g, axes)?;
    let n = initial.len();
    let odd = |v: usize| g.coord_sum(v) % 2 == 1;

    let mut line = initial.clone();
    let mut pos = vec![0; n];
    for (p, &v) in line.iter().enumerate() {
        pos[v] = p;
    }
    let mut seen = vec![false; idx.len()];
    let mark = |line: &[usize], seen: &mut Vec<bool>| {
        for w in line.windows(2) {
            if let Some(e) = idx.get(w[0], w[1]) {
                seen[e] = true;
            }
        }
    };
    mark(&line, &mut seen);
    let mut moves = vec![0usize; n];
    let mut depth = 0;
    while seen.iter().any(|s| !s) {
        if depth > 2 * n {
            return Err(infeasible("forward pass does not converge"));
        }
        let mut want = vec![false; n];
        for (i, &u) in line.iter().enumerate() {
            if odd(u) {
                want[i] = idx.incident[u]
                    .iter()
                    .any(|&(w, e)| !seen[e] && pos[w] > i);
            }
        }
        // a blocked odd vertex pushes the run of odd vertices ahead of it
        for i in 1..n {
            if want[i - 1] && odd(line[i]) && odd(line[i - 1]) {
                want[i] = true;
            }
        }
        let mut layer = Vec::new();
        let mut used = vec![false; n];
        for l in (0..n.saturating_sub(1)).rev() {
            if used[l] || used[l + 1] {
                continue;
            }
            if want[l] && odd(line[l]) && !odd(line[l + 1]) {
                layer.push(l);
                used[l] = true;
                used[l + 1] = true;
            }
        }
        if layer.is_empty() {
            return Err(infeasible("no odd vertex can advance"));
        }
        for &l in &layer {
            moves[line[l]] += 1;
            line.swap(l, l + 1);
            pos[line[l]] = l;
            pos[line[l + 1]] = l + 1;
        }
        depth += 1;
        mark(&line, &mut seen);
    }

    // replay backwards, moving each odd vertex left as early as possible
    let mut remaining = moves;
    let mut cur = line;
    let mut rev = Vec::new();
    while remaining.iter().any(|&m| m > 0) {
        let mut layer = Vec::new();
        let mut p = 1;
        while p < n {
            let u = cur[p];
            if odd(u) && remaining[u] > 0 && !odd(cur[p - 1]) {
                layer.push(p - 1);
                p += 2;
            } else {
                p += 1;
            }
        }
        if layer.is_empty() {
            return Err(infeasible("reverse compression stalled"));
        }
        for &l in &layer {
            remaining[cur[l + 1]] -= 1;
            cur.swap(l, l + 1);
        }
        rev.push(layer);
    }
    if cur != initial {
        return Err(infeasible("reverse compression does not return to the initial order"));
    }
    rev.reverse();
    for layer in &mut rev {
        layer.sort_unstable();
    }
    Ok(Schedule {
        initial,
        swaps: rev,
    })
}
