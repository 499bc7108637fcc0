//! Assigning required edges to interaction layers.
//!
//! Given the time points at which each edge is line-adjacent, choose how
//! many interaction layers to run at each time point (0, 1 or 2) so the
//! total is minimal and every edge is interacted at one of its windows.
//! Two layers at a time point always cover everything adjacent there, split
//! by position parity. A single layer takes a maximum-weight set of disjoint
//! pairs, heavily favoring edges that have no later chance.

/// Edges and left positions for one interaction layer at `time`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PackedLayer {
    pub time: usize,
    pub edges: Vec<(usize, usize)>,
}

const ATTEMPT_BUDGET: usize = 200_000;
const LAST_CHANCE_WEIGHT: usize = 1000;

/// `windows[t]` lists `(edge, left position)` for edges adjacent at `t`.
pub(crate) fn pack(windows: &[Vec<(usize, usize)>], num_edges: usize) -> Vec<PackedLayer> {
    if num_edges == 0 {
        return Vec::new();
    }
    let packer = Packer::new(windows, num_edges);
    packer.optimal().unwrap_or_else(|| packer.lazy())
}

struct Packer<'a> {
    windows: &'a [Vec<(usize, usize)>],
    num_edges: usize,
    /// `present[t][e]` is the left position of `e` at `t`.
    present: Vec<Vec<Option<usize>>>,
}

impl<'a> Packer<'a> {
    fn new(windows: &'a [Vec<(usize, usize)>], num_edges: usize) -> Self {
        let present = windows
            .iter()
            .map(|w| {
                let mut row = vec![None; num_edges];
                for &(e, p) in w {
                    row[e] = Some(p);
                }
                row
            })
            .collect();
        Packer {
            windows,
            num_edges,
            present,
        }
    }

    fn optimal(&self) -> Option<Vec<PackedLayer>> {
        let t_len = self.windows.len();
        let mut counts = vec![0u8; t_len];
        let mut attempts = 0;
        for total in 1..=2 * t_len {
            let mut found = None;
            if self.enumerate(0, total, &mut counts, &mut attempts, &mut found) {
                return found;
            }
            if attempts > ATTEMPT_BUDGET {
                return None;
            }
        }
        None
    }

    /// Visits count vectors with the given remaining total in lexicographic
    /// order; returns true once a feasible allocation is found or the
    /// budget is spent.
    fn enumerate(
        &self,
        t: usize,
        left: usize,
        counts: &mut [u8],
        attempts: &mut usize,
        found: &mut Option<Vec<PackedLayer>>,
    ) -> bool {
        if t == counts.len() {
            if left != 0 {
                return false;
            }
            *attempts += 1;
            if let Some(layers) = self.attempt(counts) {
                *found = Some(layers);
                return true;
            }
            return *attempts > ATTEMPT_BUDGET;
        }
        let cap = if self.windows[t].is_empty() { 0 } else { 2 };
        let room = 2 * (counts.len() - t - 1);
        for c in 0..=cap.min(left) {
            if left - c > room {
                continue;
            }
            counts[t] = c as u8;
            if self.enumerate(t + 1, left - c, counts, attempts, found) {
                return true;
            }
        }
        counts[t] = 0;
        false
    }

    fn attempt(&self, counts: &[u8]) -> Option<Vec<PackedLayer>> {
        let mut done = vec![false; self.num_edges];
        let mut layers = Vec::new();
        for (t, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let open: Vec<(usize, usize)> = self.windows[t]
                .iter()
                .copied()
                .filter(|&(e, _)| !done[e])
                .collect();
            if c >= 2 {
                for parity in 0..2 {
                    let part: Vec<_> = open.iter().copied().filter(|&(_, p)| p % 2 == parity).collect();
                    for &(e, _) in &part {
                        done[e] = true;
                    }
                    if !part.is_empty() {
                        layers.push(PackedLayer { time: t, edges: part });
                    }
                }
                continue;
            }
            let weight = |e: usize| {
                let later = (t + 1..counts.len()).any(|u| counts[u] > 0 && self.present[u][e].is_some());
                if later {
                    1
                } else {
                    LAST_CHANCE_WEIGHT
                }
            };
            let chosen = max_weight_disjoint(&open, weight);
            for &(e, _) in &chosen {
                done[e] = true;
            }
            if !chosen.is_empty() {
                layers.push(PackedLayer { time: t, edges: chosen });
            }
        }
        done.iter().all(|&d| d).then_some(layers)
    }

    /// Fallback: only emit layers at a time point where some edge is about
    /// to lose its last window.
    fn lazy(&self) -> Vec<PackedLayer> {
        let mut done = vec![false; self.num_edges];
        let mut layers = Vec::new();
        let t_len = self.windows.len();
        for t in 0..t_len {
            let last_chance =
                |e: usize| !(t + 1..t_len).any(|u| self.present[u][e].is_some());
            let open: Vec<(usize, usize)> = self.windows[t]
                .iter()
                .copied()
                .filter(|&(e, _)| !done[e])
                .collect();
            if !open.iter().any(|&(e, _)| last_chance(e)) {
                continue;
            }
            let chosen = max_weight_disjoint(&open, |e| {
                if last_chance(e) {
                    LAST_CHANCE_WEIGHT
                } else {
                    1
                }
            });
            for &(e, _) in &chosen {
                done[e] = true;
            }
            layers.push(PackedLayer { time: t, edges: chosen });
            let rest: Vec<_> = open.into_iter().filter(|&(e, _)| !done[e]).collect();
            if rest.iter().any(|&(e, _)| last_chance(e)) {
                for parity in 0..2 {
                    let part: Vec<_> = rest.iter().copied().filter(|&(_, p)| p % 2 == parity).collect();
                    for &(e, _) in &part {
                        done[e] = true;
                    }
                    if !part.is_empty() {
                        layers.push(PackedLayer { time: t, edges: part });
                    }
                }
            }
        }
        layers
    }
}

/// Maximum-weight set of pairwise disjoint adjacent pairs on a line; ties
/// prefer leaving a pair out.
fn max_weight_disjoint(open: &[(usize, usize)], weight: impl Fn(usize) -> usize) -> Vec<(usize, usize)> {
    let Some(max_pos) = open.iter().map(|&(_, p)| p).max() else {
        return Vec::new();
    };
    let mut at = vec![None; max_pos + 1];
    for &(e, p) in open {
        at[p] = Some(e);
    }
    let len = max_pos + 3;
    let mut best = vec![0usize; len];
    let mut take = vec![false; len];
    for i in (0..=max_pos).rev() {
        best[i] = best[i + 1];
        if let Some(e) = at[i] {
            let v = weight(e) + best[i + 2];
            if v > best[i] {
                best[i] = v;
                take[i] = true;
            }
        }
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i <= max_pos {
        if take[i] {
            out.push((at[i].unwrap(), i));
            i += 2;
        } else {
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn covered(layers: &[PackedLayer], m: usize) -> bool {
        let mut seen = vec![false; m];
        for l in layers {
            let mut ps: Vec<usize> = l.edges.iter().map(|&(_, p)| p).collect();
            ps.sort_unstable();
            assert!(ps.windows(2).all(|w| w[1] >= w[0] + 2), "overlap in {l:?}");
            for &(e, _) in &l.edges {
                seen[e] = true;
            }
        }
        seen.iter().all(|&s| s)
    }

    #[test]
    fn path_needs_two_layers() {
        let windows = vec![vec![(0, 0), (1, 1), (2, 2)]];
        let layers = pack(&windows, 3);
        assert_eq!(layers.len(), 2);
        assert!(covered(&layers, 3));
    }

    #[test]
    fn later_windows_are_used() {
        // edge 1 overlaps edge 0 at t = 0 but is alone at t = 1
        let windows = vec![vec![(0, 0), (1, 1)], vec![(1, 3)]];
        let layers = pack(&windows, 2);
        assert_eq!(layers.len(), 2);
        assert!(covered(&layers, 2));
    }

    #[test]
    fn single_layer_when_disjoint() {
        let windows = vec![vec![(0, 0), (1, 2), (2, 4)]];
        assert_eq!(pack(&windows, 3).len(), 1);
    }

    #[test]
    fn lazy_fallback_covers() {
        let windows = vec![vec![(0, 0), (1, 1)], vec![(1, 1), (2, 2)], vec![(2, 0)]];
        let p = Packer::new(&windows, 3);
        assert!(covered(&p.lazy(), 3));
    }

    #[test]
    fn dp_prefers_heavy_pairs() {
        let open = vec![(0, 0), (1, 1), (2, 2)];
        let got = max_weight_disjoint(&open, |e| if e == 1 { 5 } else { 1 });
        assert_eq!(got, vec![(1, 1)]);
    }
}
