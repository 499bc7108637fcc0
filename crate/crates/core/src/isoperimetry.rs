//! Linear orders, vertex boundaries, shells, σ-rows and exhaustive
//! isoperimetry checks on grid graphs.

use std::cmp::Reverse;

use fixedbitset::FixedBitSet;

use crate::error::{check_size, invalid, Result};
use crate::lattice::{Coord, GridGraph};

pub type VertexSet = FixedBitSet;

/// Hard ceiling for subset enumeration regardless of the caller's limit.
pub const MAX_SUBSET_VERTICES: usize = 24;
pub const DEFAULT_ISOPERIMETRY_LIMIT: usize = 20;

/// Bijection between vertices and line positions `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    at: Vec<usize>,
    rank: Vec<usize>,
}

impl LinearOrder {
    /// `seq[p]` is the vertex at position `p`.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut rank = vec![usize::MAX; n];
        for (p, &v) in seq.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(invalid(format!("sequence is not a permutation of 0..{n}")));
            }
            rank[v] = p;
        }
        Ok(LinearOrder { at: seq, rank })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder {
            at: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn from_coords(g: &GridGraph, coords: &[Coord]) -> Result<Self> {
        if coords.len() != g.num_vertices() {
            return Err(invalid(format!(
                "order lists {} coordinates, grid has {}",
                coords.len(),
                g.num_vertices()
            )));
        }
        let seq = coords.iter().map(|c| g.index(c)).collect::<Result<Vec<_>>>()?;
        Self::from_sequence(seq)
    }

    pub fn len(&self) -> usize {
        self.at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.at.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    #[inline]
    pub fn at(&self, pos: usize) -> usize {
        self.at[pos]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.at
    }

    /// Transposes the vertices at positions `i` and `i + 1`.
    pub fn transpose(&mut self, i: usize) {
        let (a, b) = (self.at[i], self.at[i + 1]);
        self.at.swap(i, i + 1);
        self.rank[a] = i + 1;
        self.rank[b] = i;
    }

    /// The first `k` vertices as a set.
    pub fn initial_segment(&self, k: usize) -> VertexSet {
        let mut s = VertexSet::with_capacity(self.len());
        for &v in &self.at[..k] {
            s.insert(v);
        }
        s
    }

    pub fn to_coords(&self, g: &GridGraph) -> Vec<Coord> {
        self.at.iter().map(|&v| g.coord(v)).collect()
    }
}

/// Vertices ranked by coordinate sum, ties broken by descending
/// lexicographic order of the coordinate tuple.
pub fn wang_wang_order(g: &GridGraph) -> LinearOrder {
    let mut seq: Vec<usize> = (0..g.num_vertices()).collect();
    seq.sort_by_key(|&v| (g.coord_sum(v), Reverse(g.coord(v))));
    LinearOrder::from_sequence(seq).expect("sorted vertex list is a permutation")
}

/// Vertices outside `w` adjacent to some vertex of `w`.
pub fn vertex_boundary(g: &GridGraph, w: &VertexSet) -> VertexSet {
    let mut out = VertexSet::with_capacity(g.num_vertices());
    for v in w.ones() {
        for u in g.neighbors(v) {
            if !w.contains(u) {
                out.insert(u);
            }
        }
    }
    out
}

pub fn closure(g: &GridGraph, w: &VertexSet) -> VertexSet {
    let mut out = vertex_boundary(g, w);
    out.union_with(w);
    out
}

/// Iterated boundaries from the all-zeros vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellPartition {
    pub shells: Vec<Vec<usize>>,
    shell_of: Vec<usize>,
}

impl ShellPartition {
    pub fn len(&self) -> usize {
        self.shells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shells.is_empty()
    }

    pub fn shell_of(&self, v: usize) -> usize {
        self.shell_of[v]
    }
}

/// `V_0 = {root}`, `V_i = B(V_0 ∪ … ∪ V_{i-1})`, each shell listed in
/// Wang-Wang order.
pub fn shells(g: &GridGraph) -> ShellPartition {
    let order = wang_wang_order(g);
    let n = g.num_vertices();
    let mut seen = VertexSet::with_capacity(n);
    let mut shell_of = vec![usize::MAX; n];
    let root = order.at(0);
    seen.insert(root);
    shell_of[root] = 0;
    let mut shells = vec![vec![root]];
    loop {
        let next = vertex_boundary(g, &seen);
        if next.is_clear() {
            break;
        }
        let idx = shells.len();
        let mut members: Vec<usize> = next.ones().collect();
        members.sort_by_key(|&v| order.rank(v));
        for &v in &members {
            shell_of[v] = idx;
        }
        seen.union_with(&next);
        shells.push(members);
    }
    ShellPartition { shells, shell_of }
}

/// Boundary sizes `|B(r_k)|` for `k = 0..=n`, computed incrementally.
pub fn boundary_sizes(g: &GridGraph, r: &LinearOrder) -> Vec<usize> {
    let n = g.num_vertices();
    let mut inside = vec![false; n];
    let mut touch = vec![0usize; n];
    let mut boundary = 0usize;
    let mut out = Vec::with_capacity(n + 1);
    out.push(0);
    for k in 0..n {
        let v = r.at(k);
        if touch[v] > 0 {
            boundary -= 1;
        }
        inside[v] = true;
        for u in g.neighbors(v) {
            if !inside[u] && touch[u] == 0 {
                boundary += 1;
            }
            touch[u] += 1;
        }
        out.push(boundary);
    }
    out
}

/// True iff the closure of every initial segment is again an initial segment.
pub fn is_initial_segment_closed(g: &GridGraph, r: &LinearOrder) -> bool {
    let n = g.num_vertices();
    (0..=n).all(|k| {
        let seg = r.initial_segment(k);
        let b = vertex_boundary(g, &seg);
        let size = b.count_ones(..);
        b.ones().all(|v| r.rank(v) < k + size)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoperimetryReport {
    pub ok: bool,
    /// Smallest `k` at which the order's boundary exceeds the subset minimum.
    pub counterexample_k: Option<usize>,
    pub order_boundary: Vec<usize>,
    pub min_boundary: Vec<usize>,
}

/// Minimum `|B(S)|` over all `k`-subsets, for every `k`, by enumerating
/// all `2^n` vertex subsets.
pub fn min_boundary_by_size(g: &GridGraph, size_limit: usize) -> Result<Vec<usize>> {
    let n = g.num_vertices();
    check_size(n, size_limit.min(MAX_SUBSET_VERTICES))?;
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let total = 1usize << n;
    // reach[S] = union of neighborhoods of S, built from S minus its low bit
    let mut reach = vec![0u32; total];
    let mut best = vec![usize::MAX; n + 1];
    best[0] = 0;
    for s in 1..total {
        let low = s.trailing_zeros() as usize;
        let r = reach[s & (s - 1)] | nbr[low];
        reach[s] = r;
        let b = (r & !(s as u32)).count_ones() as usize;
        let k = s.count_ones() as usize;
        if b < best[k] {
            best[k] = b;
        }
    }
    Ok(best)
}

/// Exhaustive isoperimetry certificate for `r` on `g`.
pub fn verify_isoperimetric(
    g: &GridGraph,
    r: &LinearOrder,
    size_limit: usize,
) -> Result<IsoperimetryReport> {
    let min_boundary = min_boundary_by_size(g, size_limit)?;
    let order_boundary = boundary_sizes(g, r);
    let counterexample_k = (0..order_boundary.len()).find(|&k| order_boundary[k] > min_boundary[k]);
    Ok(IsoperimetryReport {
        ok: counterexample_k.is_none(),
        counterexample_k,
        order_boundary,
        min_boundary,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRow {
    pub shell_index: usize,
    pub row_index: Vec<usize>,
    pub elements: Vec<usize>,
}

/// σ-rows of a shell with the canonical axis order.
pub fn sigma_rows(g: &GridGraph, shell_index: usize) -> Result<Vec<SigmaRow>> {
    let axes: Vec<usize> = (0..g.ndim()).collect();
    sigma_rows_with_axes(g, shell_index, &axes)
}

/// σ-rows of a shell when the grid's axes are read in the order `axes`:
/// `axes[0]` and `axes[1]` vary along a row, the rest form the row index.
/// Rows come in descending lexicographic row-index order, elements in
/// descending `axes[0]` component.
pub fn sigma_rows_with_axes(
    g: &GridGraph,
    shell_index: usize,
    axes: &[usize],
) -> Result<Vec<SigmaRow>> {
    validate_axes(g, axes)?;
    let max_sum: usize = g.dims().iter().map(|d| d - 1).sum();
    if shell_index > max_sum {
        return Err(invalid(format!(
            "shell {shell_index} out of range 0..={max_sum}"
        )));
    }
    let members: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| g.coord_sum(v) == shell_index)
        .collect();
    let row_key = |v: usize| -> Vec<usize> {
        axes.iter().skip(2).map(|&a| g.component(v, a)).collect()
    };
    let mut rows: Vec<SigmaRow> = Vec::new();
    let mut sorted = members;
    sorted.sort_by_key(|&v| (Reverse(row_key(v)), Reverse(g.component(v, axes[0]))));
    for v in sorted {
        let key = row_key(v);
        match rows.last_mut() {
            Some(row) if row.row_index == key => row.elements.push(v),
            _ => rows.push(SigmaRow {
                shell_index,
                row_index: key,
                elements: vec![v],
            }),
        }
    }
    Ok(rows)
}

pub(crate) fn validate_axes(g: &GridGraph, axes: &[usize]) -> Result<()> {
    let mut seen = vec![false; g.ndim()];
    if axes.len() != g.ndim() {
        return Err(invalid("axis order has wrong length"));
    }
    for &a in axes {
        if a >= g.ndim() || seen[a] {
            return Err(invalid(format!("{axes:?} is not an axis permutation")));
        }
        seen[a] = true;
    }
    Ok(())
}
