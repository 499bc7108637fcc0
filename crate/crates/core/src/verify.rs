//! Network simulation, coverage certification and an exhaustive minimum
//! swap depth oracle.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bounds::BoundsReport;
use crate::error::{check_size, Error, Result};
use crate::isoperimetry::LinearOrder;
use crate::lattice::{Coord, InteractionGraph, TermKind};
use crate::synth::{all_swap_layers, Layer, SwapNetwork};

pub const DEFAULT_ORACLE_LIMIT: usize = 7;
/// The oracle packs a permutation into 3 bits per position.
pub const MAX_ORACLE_VERTICES: usize = 8;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedNetwork(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    /// Edge `(a, b)` with `a < b` to the first layer index interacting it.
    pub covered: BTreeMap<(usize, usize), usize>,
    pub missing: Vec<(usize, usize)>,
    /// Single-site terms with no record.
    pub missing_sites: Vec<usize>,
    pub swap_depth: usize,
    pub interaction_depth: usize,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty() && self.missing_sites.is_empty()
    }

    pub fn to_json(&self, ig: &InteractionGraph) -> String {
        #[derive(Serialize)]
        struct Covered {
            edge: [Coord; 2],
            layer: usize,
        }
        #[derive(Serialize)]
        struct Out {
            complete: bool,
            swap_depth: usize,
            interaction_depth: usize,
            covered: Vec<Covered>,
            missing: Vec<[Coord; 2]>,
            missing_sites: Vec<Coord>,
        }
        let g = ig.grid();
        let out = Out {
            complete: self.is_complete(),
            swap_depth: self.swap_depth,
            interaction_depth: self.interaction_depth,
            covered: self
                .covered
                .iter()
                .map(|(&(a, b), &layer)| Covered {
                    edge: [g.caller_coord(a), g.caller_coord(b)],
                    layer,
                })
                .collect(),
            missing: self.missing.iter().map(|&(a, b)| [g.caller_coord(a), g.caller_coord(b)]).collect(),
            missing_sites: self.missing_sites.iter().map(|&s| g.caller_coord(s)).collect(),
        };
        serde_json::to_string(&out).expect("report serializes")
    }
}

fn apply_swaps(order: &mut LinearOrder, at: &[usize], layer: usize) -> Result<()> {
    let n = order.len();
    let mut used = vec![false; n];
    for &i in at {
        if i + 1 >= n {
            return Err(malformed(format!("layer {layer}: transposition at {i} out of range")));
        }
        if used[i] || used[i + 1] {
            return Err(malformed(format!("layer {layer}: overlapping transpositions at {i}")));
        }
        used[i] = true;
        used[i + 1] = true;
    }
    for &i in at {
        order.transpose(i);
    }
    Ok(())
}

/// Line order before the first layer and after each layer.
pub fn simulate(net: &SwapNetwork) -> Result<Vec<LinearOrder>> {
    let mut order = net.initial_order().clone();
    let mut trace = vec![order.clone()];
    for (li, layer) in net.layers().iter().enumerate() {
        if let Layer::Swap(at) = layer {
            apply_swaps(&mut order, at, li)?;
        }
        trace.push(order.clone());
    }
    Ok(trace)
}

/// Certifies which required terms are interacted while adjacent. Records
/// that name the wrong vertices, overlap, or carry a term the graph does
/// not have make the network malformed.
pub fn coverage(net: &SwapNetwork, ig: &InteractionGraph) -> Result<CoverageReport> {
    if net.grid() != ig.grid() {
        return Err(malformed(format!(
            "network is on a grid of {} vertices with dims {:?}, graph has dims {:?}",
            net.num_positions(),
            net.grid().dims(),
            ig.grid().dims()
        )));
    }
    let n = net.num_positions();
    let mut order = net.initial_order().clone();
    let mut covered = BTreeMap::new();
    let mut sites_done = vec![false; n];
    let is_site_term = {
        let mut s = vec![false; n];
        for &v in ig.site_terms() {
            s[v] = true;
        }
        s
    };
    for (li, layer) in net.layers().iter().enumerate() {
        match layer {
            Layer::Swap(at) => apply_swaps(&mut order, at, li)?,
            Layer::Interact(recs) => {
                let mut used = vec![false; n];
                for r in recs {
                    let width = r.sites.len();
                    if width == 0 || width > 2 || r.at + width > n {
                        return Err(malformed(format!("layer {li}: bad record at {}", r.at)));
                    }
                    for (k, &v) in r.sites.iter().enumerate() {
                        if order.at(r.at + k) != v {
                            return Err(malformed(format!(
                                "layer {li}: position {} holds {}, record names {}",
                                r.at + k,
                                ig.grid().caller_coord(order.at(r.at + k)),
                                ig.grid().caller_coord(v)
                            )));
                        }
                    }
                    if width == 1 {
                        let v = r.sites[0];
                        if r.term != TermKind::NumberOp || !is_site_term[v] {
                            return Err(malformed(format!(
                                "layer {li}: no {} term on {}",
                                r.term,
                                ig.grid().caller_coord(v)
                            )));
                        }
                        sites_done[v] = true;
                        continue;
                    }
                    if used[r.at] || used[r.at + 1] {
                        return Err(malformed(format!("layer {li}: overlapping pairs at {}", r.at)));
                    }
                    used[r.at] = true;
                    used[r.at + 1] = true;
                    let (a, b) = (r.sites[0], r.sites[1]);
                    match ig.edge_kind(a, b) {
                        Some(k) if k == r.term => {
                            covered.entry((a.min(b), a.max(b))).or_insert(li);
                        }
                        _ => {
                            return Err(malformed(format!(
                                "layer {li}: no {} term between {} and {}",
                                r.term,
                                ig.grid().caller_coord(a),
                                ig.grid().caller_coord(b)
                            )))
                        }
                    }
                }
            }
        }
    }
    let missing = ig
        .edges()
        .iter()
        .map(|e| (e.a, e.b))
        .filter(|k| !covered.contains_key(k))
        .collect();
    let missing_sites = ig
        .site_terms()
        .iter()
        .copied()
        .filter(|&s| !sites_done[s])
        .collect();
    Ok(CoverageReport {
        covered,
        missing,
        missing_sites,
        swap_depth: net.swap_depth(),
        interaction_depth: net.interaction_depth(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Optimality {
    pub swap_optimal: bool,
    pub interaction_optimal: bool,
}

pub fn check_against_bounds(report: &CoverageReport, bounds: &BoundsReport) -> Optimality {
    Optimality {
        swap_optimal: report.swap_depth == bounds.swap_depth_lb,
        interaction_optimal: report.interaction_depth == bounds.interaction_depth_lb,
    }
}

/// Fewest swap layers over every initial order and schedule after which
/// each edge has been adjacent at some time point. Level-by-level search
/// over (permutation, covered edges), keeping per permutation only edge
/// sets not contained in another already reached.
pub fn min_swap_depth_exhaustive(ig: &InteractionGraph, size_limit: usize) -> Result<usize> {
    let n = ig.num_vertices();
    check_size(n, size_limit.min(MAX_ORACLE_VERTICES))?;
    let m = ig.edges().len();
    if m > 64 {
        return Err(Error::SizeExceeded { size: m, limit: 64 });
    }
    if m == 0 {
        return Ok(0);
    }
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut edge_id = vec![vec![u8::MAX; n]; n];
    for (i, e) in ig.edges().iter().enumerate() {
        edge_id[e.a][e.b] = i as u8;
        edge_id[e.b][e.a] = i as u8;
    }
    let pack = |line: &[usize]| line.iter().rev().fold(0u32, |acc, &v| (acc << 3) | v as u32);
    let get = |code: u32, p: usize| ((code >> (3 * p)) & 7) as usize;
    let adjacent = |code: u32| -> u64 {
        let mut mask = 0u64;
        for p in 0..n - 1 {
            let e = edge_id[get(code, p)][get(code, p + 1)];
            if e != u8::MAX {
                mask |= 1 << e;
            }
        }
        mask
    };

    let mut reached: HashMap<u32, Vec<u64>> = HashMap::new();
    let mut frontier: Vec<(u32, u64)> = Vec::new();
    let mut line: Vec<usize> = (0..n).collect();
    loop {
        let code = pack(&line);
        let mask = adjacent(code);
        if mask == full {
            return Ok(0);
        }
        reached.insert(code, vec![mask]);
        frontier.push((code, mask));
        if !next_perm(&mut line) {
            break;
        }
    }
    let layers: Vec<Vec<usize>> = all_swap_layers(n);
    for depth in 1..=n {
        let mut next = Vec::new();
        for &(code, mask) in &frontier {
            for layer in &layers {
                let mut c = code;
                for &i in layer {
                    let (a, b) = (get(c, i), get(c, i + 1));
                    c &= !(0x3f << (3 * i));
                    c |= ((b as u32) | ((a as u32) << 3)) << (3 * i);
                }
                let nm = mask | adjacent(c);
                if nm == full {
                    return Ok(depth);
                }
                let kept = reached.entry(c).or_default();
                if kept.iter().any(|&k| nm & !k == 0) {
                    continue;
                }
                kept.retain(|&k| k & !nm != 0);
                kept.push(nm);
                next.push((c, nm));
            }
        }
        frontier = next;
    }
    Err(Error::Infeasible("search exhausted without covering every edge".into()))
}

fn next_perm(a: &mut [usize]) -> bool {
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
