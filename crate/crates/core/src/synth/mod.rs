//! Swap network construction.
//!
//! A network places the vertices of a grid on a line and alternates swap
//! layers (disjoint adjacent transpositions) with interaction layers
//! (disjoint adjacent pairs carrying Hamiltonian terms).

mod dense;
mod grid;
mod pack;
mod registry;
mod schedule;

pub use dense::{dense_network, round_robin_matchings, DenseMode};
pub use grid::{
    grid_network, grid_network_with_axes, hubbard_network, triangular_graph, triangular_network,
};
pub use registry::{lookup, registry, ModelSpec, Synthesizer};
pub use schedule::interleave_orders;

use crate::error::{invalid, Result};
use crate::isoperimetry::LinearOrder;
use crate::lattice::{GridGraph, TermKind};

/// One local term evolution on the vertices at positions `at` (and `at + 1`
/// for two-site terms). `sites` lists the vertices in line order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractRecord {
    pub at: usize,
    pub term: TermKind,
    pub sites: Vec<usize>,
}

impl InteractRecord {
    pub fn pair(at: usize, term: TermKind, left: usize, right: usize) -> Self {
        InteractRecord {
            at,
            term,
            sites: vec![left, right],
        }
    }

    pub fn site(at: usize, term: TermKind, v: usize) -> Self {
        InteractRecord {
            at,
            term,
            sites: vec![v],
        }
    }

    pub fn is_pair(&self) -> bool {
        self.sites.len() == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layer {
    /// Left indices `i` of transpositions `(i, i + 1)`.
    Swap(Vec<usize>),
    Interact(Vec<InteractRecord>),
}

impl Layer {
    pub fn is_swap(&self) -> bool {
        matches!(self, Layer::Swap(_))
    }

    /// Canonical ordering: swap indices ascending; records by position with
    /// single-site records ahead of pairs at the same position.
    pub fn normalize(&mut self) {
        match self {
            Layer::Swap(at) => at.sort_unstable(),
            Layer::Interact(recs) => recs.sort_by_key(|r| (r.at, r.sites.len())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapNetwork {
    grid: GridGraph,
    initial_order: LinearOrder,
    layers: Vec<Layer>,
}

impl SwapNetwork {
    pub fn new(grid: GridGraph, initial_order: LinearOrder, layers: Vec<Layer>) -> Result<Self> {
        if initial_order.len() != grid.num_vertices() {
            return Err(invalid(format!(
                "initial order has {} positions, grid has {} vertices",
                initial_order.len(),
                grid.num_vertices()
            )));
        }
        Ok(SwapNetwork {
            grid,
            initial_order,
            layers,
        })
    }

    pub fn empty(grid: GridGraph) -> Self {
        let n = grid.num_vertices();
        SwapNetwork {
            grid,
            initial_order: LinearOrder::identity(n),
            layers: Vec::new(),
        }
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn num_positions(&self) -> usize {
        self.grid.num_vertices()
    }

    pub fn initial_order(&self) -> &LinearOrder {
        &self.initial_order
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn swap_depth(&self) -> usize {
        self.layers.iter().filter(|l| l.is_swap()).count()
    }

    pub fn interaction_depth(&self) -> usize {
        self.layers.len() - self.swap_depth()
    }

    /// Copy with layer `i` deleted.
    pub fn without_layer(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.layers.remove(i);
        out
    }
}

/// Every non-empty set of disjoint adjacent transpositions on `n` positions.
pub(crate) fn all_swap_layers(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 >= n {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        rec(i + 1, n, cur, out);
        cur.push(i);
        rec(i + 2, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}
