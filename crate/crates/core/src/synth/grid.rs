//! Networks for grid interaction graphs: Hubbard models, plain grids and
//! the triangular extension.

use crate::error::{invalid, Error, Result};
use crate::isoperimetry::{wang_wang_order, LinearOrder};
use crate::lattice::{
    interaction_graph, make_grid, GridGraph, HubbardModel, InteractionGraph, TermKind,
};

use super::pack::pack;
use super::schedule::{adjacency_windows, stage_schedule, EdgeIndex, Schedule};
use super::{all_swap_layers, InteractRecord, Layer, SwapNetwork};

/// Largest line length for which the triangular completion is searched
/// exhaustively instead of greedily.
const TRIANGULAR_SEARCH_POSITIONS: usize = 9;
const TRIANGULAR_SEARCH_NODES: usize = 5_000_000;
const TRIANGULAR_EXTRA_DEPTH: usize = 3;
/// Up to this length every start order is tried when the interleaved start
/// needs more layers than the plain grid.
const TRIANGULAR_ANY_START_POSITIONS: usize = 6;

/// Largest dimension count for which every axis order is tried.
const AXIS_SEARCH_DIMS: usize = 4;

fn edge_index(ig: &InteractionGraph) -> EdgeIndex {
    let pairs: Vec<(usize, usize)> = ig.edges().iter().map(|e| (e.a, e.b)).collect();
    EdgeIndex::new(ig.num_vertices(), &pairs)
}

/// Packs interactions onto a swap schedule and lays out the network.
pub(crate) fn assemble(ig: &InteractionGraph, sched: &Schedule) -> Result<SwapNetwork> {
    let idx = edge_index(ig);
    let windows = adjacency_windows(sched, &idx);
    let packed = pack(&windows, idx.len());
    let lines = sched.lines();
    let kinds: Vec<TermKind> = ig.edges().iter().map(|e| e.kind).collect();

    let mut layers = Vec::new();
    let mut first_interact: Option<(usize, usize)> = None;
    for (t, line) in lines.iter().enumerate() {
        for pl in packed.iter().filter(|pl| pl.time == t) {
            let recs = pl
                .edges
                .iter()
                .map(|&(e, p)| InteractRecord::pair(p, kinds[e], line[p], line[p + 1]))
                .collect();
            first_interact.get_or_insert((layers.len(), t));
            layers.push(Layer::Interact(recs));
        }
        if let Some(swaps) = sched.swaps.get(t) {
            layers.push(Layer::Swap(swaps.clone()));
        }
    }
    if !ig.site_terms().is_empty() {
        let (li, t) = match first_interact {
            Some(hit) => hit,
            None => {
                layers.insert(0, Layer::Interact(Vec::new()));
                (0, 0)
            }
        };
        let line = &lines[t];
        let mut pos = vec![0; line.len()];
        for (p, &v) in line.iter().enumerate() {
            pos[v] = p;
        }
        if let Layer::Interact(recs) = &mut layers[li] {
            for &s in ig.site_terms() {
                recs.push(InteractRecord::site(pos[s], TermKind::NumberOp, s));
            }
        }
    }
    for l in &mut layers {
        l.normalize();
    }
    SwapNetwork::new(
        ig.grid().clone(),
        LinearOrder::from_sequence(sched.initial.clone())?,
        layers,
    )
}

/// σ-row network for an interaction graph whose required edges are grid
/// edges, with rows taken along `axes`.
fn scheme_network(ig: &InteractionGraph, axes: &[usize]) -> Result<SwapNetwork> {
    let sched = stage_schedule(ig.grid(), axes, &edge_index(ig))?;
    assemble(ig, &sched)
}

/// The Hubbard network: swap depth `M − 1` without spin and `2M − 1` with
/// spin, where rows run along the spin axis and the longer side.
pub fn hubbard_network(m: &HubbardModel) -> Result<SwapNetwork> {
    let ig = interaction_graph(m)?;
    let g = ig.grid();
    let axes: Vec<usize> = if m.spin {
        let stored = |caller| g.stored_axis(caller).expect("three axes");
        vec![stored(0), stored(2), stored(1)]
    } else {
        (0..g.ndim()).collect()
    };
    scheme_network(&ig, &axes)
}

/// σ-row network for the plain grid with axes taken in the given order.
pub fn grid_network_with_axes(dims: &[usize], axes: &[usize]) -> Result<SwapNetwork> {
    let ig = InteractionGraph::grid_hops(ascending_grid(dims)?)?;
    scheme_network(&ig, axes)
}

/// σ-row network for the plain grid. Every axis order is tried for up to
/// four dimensions; the best (swap depth, interaction depth) wins, ties
/// going to the earliest order.
pub fn grid_network(dims: &[usize]) -> Result<SwapNetwork> {
    let ig = InteractionGraph::grid_hops(ascending_grid(dims)?)?;
    let nd = dims.len();
    let mut axes: Vec<usize> = (0..nd).collect();
    if nd > AXIS_SEARCH_DIMS {
        return scheme_network(&ig, &axes);
    }
    let mut best: Option<SwapNetwork> = None;
    let mut last_err = None;
    loop {
        match scheme_network(&ig, &axes) {
            Ok(net) => {
                let key = (net.swap_depth(), net.interaction_depth());
                if best
                    .as_ref()
                    .is_none_or(|b| key < (b.swap_depth(), b.interaction_depth()))
                {
                    best = Some(net);
                }
            }
            Err(e) => last_err = Some(e),
        }
        if !next_permutation(&mut axes) {
            break;
        }
    }
    best.ok_or_else(|| last_err.unwrap_or_else(|| Error::Infeasible("no axis order works".into())))
}

fn ascending_grid(dims: &[usize]) -> Result<GridGraph> {
    if dims.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid(format!("dimensions {dims:?} must be ascending")));
    }
    make_grid(dims)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The spinless grid plus edges between consecutive vertices of each
/// coordinate-sum shell, `(a, b)` to `(a − 1, b + 1)`.
pub fn triangular_graph(rows: usize, cols: usize) -> Result<InteractionGraph> {
    let m = HubbardModel::new(rows, cols, false)?;
    let base = interaction_graph(&m)?;
    let g = base.grid().clone();
    let r = wang_wang_order(&g);
    let mut edges: Vec<(usize, usize, TermKind)> =
        base.edges().iter().map(|e| (e.a, e.b, e.kind)).collect();
    for w in r.sequence().windows(2) {
        if g.coord_sum(w[0]) == g.coord_sum(w[1]) {
            edges.push((w[0], w[1], TermKind::Hop));
        }
    }
    InteractionGraph::from_parts(g, edges, base.site_terms().iter().copied())
}

/// Triangular-lattice network: the spinless swap schedule, extended until
/// the added shell edges have also been adjacent. Short lines are searched
/// exhaustively from the interleaved start (and from every start when very
/// short); longer ones get greedy layers appended.
pub fn triangular_network(rows: usize, cols: usize) -> Result<(InteractionGraph, SwapNetwork)> {
    let ig = triangular_graph(rows, cols)?;
    let g = ig.grid();
    let grid_only = InteractionGraph::grid_hops(g.clone())?;
    let axes: Vec<usize> = (0..g.ndim()).collect();
    let base = stage_schedule(g, &axes, &edge_index(&grid_only))?;
    let idx = edge_index(&ig);
    let n = g.num_vertices();
    let searched = if n <= TRIANGULAR_SEARCH_POSITIONS && idx.len() <= 64 {
        let lo = base.swaps.len();
        (lo..=lo + TRIANGULAR_EXTRA_DEPTH)
            .find_map(|d| search_schedule(&base.initial, &idx, d, TRIANGULAR_SEARCH_NODES))
    } else {
        None
    };
    let mut sched = match searched {
        Some(s) => s,
        None => greedy_complete(base.clone(), &idx)?,
    };
    if n <= TRIANGULAR_ANY_START_POSITIONS && sched.swaps.len() > base.swaps.len() {
        let mut start: Vec<usize> = (0..n).collect();
        'depth: for d in 0..sched.swaps.len() {
            loop {
                if let Some(s) = search_schedule(&start, &idx, d, TRIANGULAR_SEARCH_NODES) {
                    sched = s;
                    break 'depth;
                }
                if !next_permutation(&mut start) {
                    break;
                }
            }
            start = (0..n).collect();
        }
    }
    let net = assemble(&ig, &sched)?;
    Ok((ig, net))
}

/// Depth-limited search over all swap layers for a schedule of exactly
/// `depth` layers from `initial` covering every edge of `idx`.
fn search_schedule(initial: &[usize], idx: &EdgeIndex, depth: usize, budget: usize) -> Option<Schedule> {
    let n = initial.len();
    let full: u64 = if idx.len() == 64 { u64::MAX } else { (1u64 << idx.len()) - 1 };
    let layers = all_swap_layers(n);
    let adjacent = |line: &[usize]| -> u64 {
        line.windows(2)
            .filter_map(|w| idx.get(w[0], w[1]))
            .fold(0u64, |m, e| m | (1 << e))
    };

    struct Ctx<'a> {
        idx: &'a EdgeIndex,
        layers: &'a [Vec<usize>],
        full: u64,
        nodes: usize,
        budget: usize,
        path: Vec<usize>,
    }
    fn feasible(ctx: &Ctx, line: &[usize], seen: u64, left: usize) -> bool {
        let mut pos = vec![0; line.len()];
        for (p, &v) in line.iter().enumerate() {
            pos[v] = p;
        }
        ctx.idx.edges.iter().enumerate().all(|(e, &(a, b))| {
            seen & (1 << e) != 0 || pos[a].abs_diff(pos[b]) <= 1 + 2 * left
        })
    }
    fn rec(ctx: &mut Ctx, line: &mut Vec<usize>, seen: u64, left: usize, adjacent: &dyn Fn(&[usize]) -> u64) -> bool {
        if seen == ctx.full {
            return true;
        }
        if left == 0 || ctx.nodes > ctx.budget || !feasible(ctx, line, seen, left) {
            return false;
        }
        for li in 0..ctx.layers.len() {
            ctx.nodes += 1;
            for &i in &ctx.layers[li] {
                line.swap(i, i + 1);
            }
            let next = seen | adjacent(line);
            ctx.path.push(li);
            if rec(ctx, line, next, left - 1, adjacent) {
                return true;
            }
            ctx.path.pop();
            for &i in &ctx.layers[li] {
                line.swap(i, i + 1);
            }
        }
        false
    }

    let mut ctx = Ctx {
        idx,
        layers: &layers,
        full,
        nodes: 0,
        budget,
        path: Vec::new(),
    };
    let mut line = initial.to_vec();
    let start = adjacent(&line);
    if !rec(&mut ctx, &mut line, start, depth, &adjacent) {
        return None;
    }
    Some(Schedule {
        initial: initial.to_vec(),
        swaps: ctx.path.iter().map(|&li| layers[li].clone()).collect(),
    })
}

/// Appends layers that pull the closest uncovered pairs together until
/// every edge has been adjacent. The smallest uncovered distance strictly
/// drops each layer, so this terminates.
fn greedy_complete(mut sched: Schedule, idx: &EdgeIndex) -> Result<Schedule> {
    let mut seen = vec![false; idx.len()];
    let lines = sched.lines();
    for line in &lines {
        for w in line.windows(2) {
            if let Some(e) = idx.get(w[0], w[1]) {
                seen[e] = true;
            }
        }
    }
    let mut line = lines.last().cloned().unwrap_or_default();
    let n = line.len();
    let mut guard = 0;
    while seen.iter().any(|s| !s) {
        guard += 1;
        if guard > n * idx.len() + 1 {
            return Err(Error::Infeasible("greedy completion does not converge".into()));
        }
        let mut pos = vec![0; n];
        for (p, &v) in line.iter().enumerate() {
            pos[v] = p;
        }
        let mut open: Vec<(usize, usize, usize)> = idx
            .edges
            .iter()
            .enumerate()
            .filter(|&(e, _)| !seen[e])
            .map(|(_, &(a, b))| {
                let (pa, pb) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                (pb - pa, pa, pb)
            })
            .collect();
        open.sort_unstable();
        let mut used = vec![false; n];
        let mut layer = Vec::new();
        for &(_, pa, pb) in &open {
            for l in [pa, pb - 1] {
                if !used[l] && !used[l + 1] {
                    used[l] = true;
                    used[l + 1] = true;
                    layer.push(l);
                }
            }
            // later pairs must not drag these endpoints away
            used[pa] = true;
            used[pb] = true;
        }
        layer.sort_unstable();
        for &l in &layer {
            line.swap(l, l + 1);
        }
        for w in line.windows(2) {
            if let Some(e) = idx.get(w[0], w[1]) {
                seen[e] = true;
            }
        }
        sched.swaps.push(layer);
    }
    Ok(sched)
}
