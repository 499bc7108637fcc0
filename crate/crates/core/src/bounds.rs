//! Bandwidth-type lower bounds on swap depth.
//!
//! The exact quantities are computed by exhaustive order enumeration; the
//! boundary profile of an initial-segment-closed isoperimetric order gives
//! the same values in polynomial time. Hubbard models get closed forms
//! cross-checked against the profile.

use serde::Serialize;

use crate::error::{check_size, invalid, Result};
use crate::isoperimetry::{
    boundary_sizes, closure, is_initial_segment_closed, vertex_boundary, wang_wang_order,
    LinearOrder,
};
use crate::lattice::{interaction_graph, GridGraph, HubbardModel, InteractionGraph};

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 9;
/// Ceiling on permutation search size regardless of the caller's limit.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    ClosedForm,
    Profile,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub bandwidth: Option<usize>,
    pub two_bandwidth: Option<usize>,
    pub swap_depth_lb: usize,
    pub interaction_depth_lb: usize,
    /// `[k, |B(r_k)|, |B(r_k) ∪ B(C(r_k))|]` for `k = 1..=|V|`.
    pub profile: Vec<[usize; 3]>,
    pub method: BoundMethod,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Rank span of `w` under `r`.
pub fn order_bandwidth(r: &LinearOrder, w: &[usize]) -> Result<usize> {
    let mut ranks = w.iter().map(|&v| {
        if v < r.len() {
            Ok(r.rank(v))
        } else {
            Err(invalid(format!("vertex {v} not in order")))
        }
    });
    let first = ranks.next().ok_or_else(|| invalid("empty vertex set"))??;
    let (mut lo, mut hi) = (first, first);
    for rk in ranks {
        let rk = rk?;
        lo = lo.min(rk);
        hi = hi.max(rk);
    }
    Ok(hi - lo)
}

/// `max(⌈(b − 1)/2⌉, ⌈(b² − 2)/2⌉)`, clamped at zero.
pub fn swap_depth_lower_bound(bandwidth: usize, two_bandwidth: usize) -> usize {
    let half_up = |x: usize| x.div_ceil(2);
    half_up(bandwidth.saturating_sub(1)).max(half_up(two_bandwidth.saturating_sub(2)))
}

/// Boundary profile of `r`. When `r` is initial-segment closed the maxima
/// of the two columns are reported as bandwidth and 2-bandwidth; for an
/// isoperimetric closed order such as the Wang-Wang order they are exact.
pub fn boundary_profile(g: &GridGraph, r: &LinearOrder) -> BoundsReport {
    let n = g.num_vertices();
    let single = boundary_sizes(g, r);
    let mut profile = Vec::with_capacity(n);
    for (k, &b) in single.iter().enumerate().skip(1) {
        let seg = r.initial_segment(k);
        let mut both = vertex_boundary(g, &seg);
        both.union_with(&vertex_boundary(g, &closure(g, &seg)));
        profile.push([k, b, both.count_ones(..)]);
    }
    let interaction_depth_lb = (0..n).map(|v| g.neighbors(v).len()).max().unwrap_or(0);
    let mut notes = Vec::new();
    let (bandwidth, two_bandwidth, swap_depth_lb) = if is_initial_segment_closed(g, r) {
        let b = profile.iter().map(|p| p[1]).max().unwrap_or(0);
        let b2 = if has_length_two_paths(g) {
            profile.iter().map(|p| p[2]).max().unwrap_or(0)
        } else {
            b
        };
        (Some(b), Some(b2), swap_depth_lower_bound(b, b2))
    } else {
        notes.push("order is not initial-segment closed; profile maxima are not certified".into());
        (None, None, 0)
    };
    BoundsReport {
        bandwidth,
        two_bandwidth,
        swap_depth_lb,
        interaction_depth_lb,
        profile,
        method: BoundMethod::Profile,
        notes,
    }
}

fn has_length_two_paths(g: &GridGraph) -> bool {
    (0..g.num_vertices()).any(|v| g.neighbors(v).len() >= 2)
}

/// Edge groups for bandwidth.
fn edge_groups(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (a, nb) in adj.iter().enumerate() {
        for &b in nb {
            if a < b {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

/// Vertex triples of every length-two path: a middle vertex and two of its
/// distinct neighbors.
fn path2_groups(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (mid, nb) in adj.iter().enumerate() {
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                out.push(vec![nb[i], mid, nb[j]]);
            }
        }
    }
    out
}

fn grid_adjacency(g: &GridGraph) -> Vec<Vec<usize>> {
    (0..g.num_vertices()).map(|v| g.neighbors(v)).collect()
}

/// Reflection-orbit representatives for the vertex placed first.
fn grid_first_candidates(g: &GridGraph) -> Vec<usize> {
    (0..g.num_vertices())
        .filter(|&v| (0..g.ndim()).all(|a| 2 * g.component(v, a) < g.dims()[a]))
        .collect()
}

/// Graph bandwidth by exhaustive search.
pub fn bandwidth_exact(g: &GridGraph, size_limit: usize) -> Result<usize> {
    let adj = grid_adjacency(g);
    span_search(&adj, &edge_groups(&adj), Some(grid_first_candidates(g)), size_limit)
}

/// Graph 2-bandwidth by exhaustive search; equals the bandwidth when the
/// graph has no length-two path.
pub fn two_bandwidth_exact(g: &GridGraph, size_limit: usize) -> Result<usize> {
    let adj = grid_adjacency(g);
    let groups = path2_groups(&adj);
    if groups.is_empty() {
        return bandwidth_exact(g, size_limit);
    }
    span_search(&adj, &groups, Some(grid_first_candidates(g)), size_limit)
}

/// Bandwidth of an arbitrary interaction graph (no symmetry pruning).
pub fn graph_bandwidth_exact(ig: &InteractionGraph, size_limit: usize) -> Result<usize> {
    let adj = ig.adjacency();
    span_search(&adj, &edge_groups(&adj), None, size_limit)
}

pub fn graph_two_bandwidth_exact(ig: &InteractionGraph, size_limit: usize) -> Result<usize> {
    let adj = ig.adjacency();
    let groups = path2_groups(&adj);
    if groups.is_empty() {
        return graph_bandwidth_exact(ig, size_limit);
    }
    span_search(&adj, &groups, None, size_limit)
}

fn span_search(
    adj: &[Vec<usize>],
    groups: &[Vec<usize>],
    first: Option<Vec<usize>>,
    size_limit: usize,
) -> Result<usize> {
    let n = adj.len();
    check_size(n, size_limit.min(MAX_EXHAUSTIVE_VERTICES))?;
    if groups.is_empty() {
        return Ok(0);
    }
    let mut search = SpanSearch::new(n, groups);
    let identity: Vec<usize> = (0..n).collect();
    let ub = search.span_of(&identity);
    Ok(search.run(ub, first.unwrap_or(identity)))
}

/// Branch and bound over vertex orders minimizing the maximum rank span of
/// a family of vertex groups. Positions are filled left to right.
struct SpanSearch {
    n: usize,
    groups: Vec<Vec<usize>>,
    member_of: Vec<Vec<usize>>,
    pos: Vec<usize>,
    group_first: Vec<usize>,
    group_placed: Vec<usize>,
    best: usize,
}

const UNPLACED: usize = usize::MAX;

impl SpanSearch {
    fn new(n: usize, groups: &[Vec<usize>]) -> Self {
        let mut member_of = vec![Vec::new(); n];
        for (gi, grp) in groups.iter().enumerate() {
            for &v in grp {
                member_of[v].push(gi);
            }
        }
        SpanSearch {
            n,
            groups: groups.to_vec(),
            member_of,
            pos: vec![UNPLACED; n],
            group_first: vec![UNPLACED; groups.len()],
            group_placed: vec![0; groups.len()],
            best: usize::MAX,
        }
    }

    fn span_of(&self, seq: &[usize]) -> usize {
        let mut rank = vec![0; self.n];
        for (p, &v) in seq.iter().enumerate() {
            rank[v] = p;
        }
        self.groups
            .iter()
            .map(|g| {
                let lo = g.iter().map(|&v| rank[v]).min().unwrap();
                let hi = g.iter().map(|&v| rank[v]).max().unwrap();
                hi - lo
            })
            .max()
            .unwrap_or(0)
    }

    /// Returns the optimum, given an achievable upper bound.
    fn run(&mut self, upper: usize, first: Vec<usize>) -> usize {
        self.best = upper;
        for v in first {
            if self.best == 0 {
                break;
            }
            self.place(v, 0);
            self.dfs(1);
            self.unplace(v);
        }
        self.best
    }

    fn place(&mut self, v: usize, p: usize) {
        self.pos[v] = p;
        for &gi in &self.member_of[v] {
            if self.group_placed[gi] == 0 {
                self.group_first[gi] = p;
            }
            self.group_placed[gi] += 1;
        }
    }

    fn unplace(&mut self, v: usize) {
        for &gi in &self.member_of[v] {
            self.group_placed[gi] -= 1;
            if self.group_placed[gi] == 0 {
                self.group_first[gi] = UNPLACED;
            }
        }
        self.pos[v] = UNPLACED;
    }

    /// Latest position each unplaced vertex may take so that every started
    /// group stays within span `best - 1`.
    fn deadline(&self, v: usize) -> usize {
        self.member_of[v]
            .iter()
            .filter(|&&gi| self.group_placed[gi] > 0)
            .map(|&gi| self.group_first[gi] + self.best - 1)
            .min()
            .unwrap_or(UNPLACED)
    }

    fn dfs(&mut self, p: usize) {
        if p == self.n {
            // every group span < best by construction
            self.best = self.span_of(&self.sequence());
            return;
        }
        let mut cands: Vec<(usize, usize)> = (0..self.n)
            .filter(|&v| self.pos[v] == UNPLACED)
            .map(|v| (self.deadline(v), v))
            .collect();
        cands.sort_unstable();
        // Hall-type check: the i-th tightest deadline must allow position p + i
        for (i, &(d, _)) in cands.iter().enumerate() {
            if d != UNPLACED && d < p + i {
                return;
            }
        }
        for &(_, v) in &cands {
            if self.best == 0 {
                return;
            }
            let ok = self.member_of[v].iter().all(|&gi| {
                self.group_placed[gi] == 0 || p - self.group_first[gi] < self.best
            });
            if !ok {
                continue;
            }
            self.place(v, p);
            self.dfs(p + 1);
            self.unplace(v);
        }
    }

    fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.n];
        for (v, &p) in self.pos.iter().enumerate() {
            seq[p] = v;
        }
        seq
    }
}

/// Closed-form bounds for a Hubbard model, cross-checked against the
/// Wang-Wang boundary profile. Where a closed form does not apply or
/// disagrees with the profile, the profile value is reported and the
/// discrepancy is noted.
pub fn hubbard_bounds(m: &HubbardModel) -> Result<BoundsReport> {
    let ig = interaction_graph(m)?;
    let g = ig.grid();
    let prof = boundary_profile(g, &wang_wang_order(g));
    let (pm, pn) = (m.rows, m.cols);
    let (closed_b, closed_b2) = if m.spin {
        if pm >= 2 {
            let b2 = if pm < pn { 4 * pm } else { 4 * pm - 1 };
            (Some(2 * pm - 1), Some(b2))
        } else {
            (None, None)
        }
    } else {
        (Some(pm), Some(2 * pm))
    };
    let mut notes = prof.notes.clone();
    let mut all_closed = true;
    let mut pick = |name: &str, closed: Option<usize>, profiled: Option<usize>| match (closed, profiled) {
        (Some(c), Some(p)) if c == p => Some(c),
        (Some(c), Some(p)) => {
            all_closed = false;
            notes.push(format!(
                "{name}: closed form gives {c}, boundary profile gives {p}; reporting {p}"
            ));
            Some(p)
        }
        (c, p) => {
            all_closed = false;
            p.or(c)
        }
    };
    let b = pick("bandwidth", closed_b, prof.bandwidth);
    let b2 = pick("two_bandwidth", closed_b2, prof.two_bandwidth);
    let swap_depth_lb = swap_depth_lower_bound(b.unwrap_or(0), b2.unwrap_or(0));
    Ok(BoundsReport {
        bandwidth: b,
        two_bandwidth: b2,
        swap_depth_lb,
        interaction_depth_lb: ig.degree_bound(),
        profile: prof.profile,
        method: if all_closed {
            BoundMethod::ClosedForm
        } else {
            BoundMethod::Profile
        },
        notes,
    })
}

/// Bounds for the complete graph on `n` modes: the least mode must pass
/// every other one, and each interaction layer is a matching.
pub fn dense_bounds(n: usize) -> Result<BoundsReport> {
    if n == 0 {
        return Err(invalid("need at least one mode"));
    }
    let b = n - 1;
    let b2 = n - 1;
    let pairs = n * (n - 1) / 2;
    let interaction_depth_lb = if n < 2 { 0 } else { pairs.div_ceil(n / 2) };
    Ok(BoundsReport {
        bandwidth: Some(b),
        two_bandwidth: Some(b2),
        swap_depth_lb: n.saturating_sub(2).max(swap_depth_lower_bound(b, b2)),
        interaction_depth_lb,
        profile: Vec::new(),
        method: BoundMethod::ClosedForm,
        notes: Vec::new(),
    })
}

/// Bounds for an arbitrary interaction graph: exhaustive when small, the
/// Wang-Wang profile when the edge set is exactly a grid, otherwise only
/// the degree bound.
pub fn graph_bounds(ig: &InteractionGraph, exhaustive_limit: usize) -> Result<BoundsReport> {
    let n = ig.num_vertices();
    let limit = exhaustive_limit.min(MAX_EXHAUSTIVE_VERTICES);
    let is_grid = ig
        .edges()
        .iter()
        .map(|e| (e.a, e.b))
        .eq(ig.grid().edges());
    if n <= limit {
        let (b, b2) = if is_grid {
            (
                bandwidth_exact(ig.grid(), limit)?,
                two_bandwidth_exact(ig.grid(), limit)?,
            )
        } else {
            (
                graph_bandwidth_exact(ig, limit)?,
                graph_two_bandwidth_exact(ig, limit)?,
            )
        };
        let profile = if is_grid {
            boundary_profile(ig.grid(), &wang_wang_order(ig.grid())).profile
        } else {
            Vec::new()
        };
        return Ok(BoundsReport {
            bandwidth: Some(b),
            two_bandwidth: Some(b2),
            swap_depth_lb: swap_depth_lower_bound(b, b2),
            interaction_depth_lb: ig.degree_bound(),
            profile,
            method: BoundMethod::Exhaustive,
            notes: Vec::new(),
        });
    }
    if is_grid {
        let mut rep = boundary_profile(ig.grid(), &wang_wang_order(ig.grid()));
        rep.interaction_depth_lb = ig.degree_bound();
        return Ok(rep);
    }
    Ok(BoundsReport {
        bandwidth: None,
        two_bandwidth: None,
        swap_depth_lb: 0,
        interaction_depth_lb: ig.degree_bound(),
        profile: Vec::new(),
        method: BoundMethod::Profile,
        notes: vec!["graph too large for exhaustive search and not a plain grid".into()],
    })
}
