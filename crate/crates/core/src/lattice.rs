//! Grid graphs and the Hubbard-model interaction graphs built on them.
//!
//! Vertices are indexed in mixed-radix order with component 0 varying
//! fastest. Dimensions are stored ascending; the permutation back to the
//! caller's axis order is kept alongside so coordinates can be mapped back.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A lattice point, one component per grid dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coord(pub Vec<usize>);

impl Coord {
    pub fn new(components: impl Into<Vec<usize>>) -> Self {
        Coord(components.into())
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> From<[usize; N]> for Coord {
    fn from(v: [usize; N]) -> Self {
        Coord(v.to_vec())
    }
}

/// Finite product of path graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    dims: Vec<usize>,
    /// `axis_origin[i]` is the caller's axis that stored axis `i` came from.
    axis_origin: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

/// Builds the grid graph with the given side lengths.
pub fn make_grid(dims: &[usize]) -> Result<GridGraph> {
    GridGraph::new(dims)
}

impl GridGraph {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(invalid("grid needs at least one dimension"));
        }
        if dims.contains(&0) {
            return Err(invalid(format!("zero-length dimension in {dims:?}")));
        }
        let mut axis_origin: Vec<usize> = (0..dims.len()).collect();
        // stable, so equal sizes keep the caller's relative order
        axis_origin.sort_by_key(|&a| dims[a]);
        let sorted: Vec<usize> = axis_origin.iter().map(|&a| dims[a]).collect();
        let mut strides = Vec::with_capacity(sorted.len());
        let mut len = 1usize;
        for &d in &sorted {
            strides.push(len);
            len = len
                .checked_mul(d)
                .ok_or_else(|| invalid("grid vertex count overflows"))?;
        }
        Ok(GridGraph {
            dims: sorted,
            axis_origin,
            strides,
            len,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.len
    }

    pub fn axis_origin(&self) -> &[usize] {
        &self.axis_origin
    }

    /// Stored axis holding the caller's axis `caller_axis`.
    pub fn stored_axis(&self, caller_axis: usize) -> Option<usize> {
        self.axis_origin.iter().position(|&a| a == caller_axis)
    }

    #[inline]
    pub fn component(&self, v: usize, axis: usize) -> usize {
        (v / self.strides[axis]) % self.dims[axis]
    }

    pub fn coord(&self, v: usize) -> Coord {
        Coord((0..self.ndim()).map(|a| self.component(v, a)).collect())
    }

    pub fn coord_sum(&self, v: usize) -> usize {
        (0..self.ndim()).map(|a| self.component(v, a)).sum()
    }

    pub fn contains(&self, c: &Coord) -> bool {
        c.0.len() == self.ndim() && c.0.iter().zip(&self.dims).all(|(x, d)| x < d)
    }

    pub fn index(&self, c: &Coord) -> Result<usize> {
        if !self.contains(c) {
            return Err(invalid(format!(
                "coordinate {c} is outside grid {:?}",
                self.dims
            )));
        }
        Ok(c.0.iter().zip(&self.strides).map(|(x, s)| x * s).sum())
    }

    /// Neighbors of vertex `v`, axis by axis, lower before upper.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.ndim());
        for a in 0..self.ndim() {
            let x = self.component(v, a);
            if x > 0 {
                out.push(v - self.strides[a]);
            }
            if x + 1 < self.dims[a] {
                out.push(v + self.strides[a]);
            }
        }
        out
    }

    pub fn neighbors_of(&self, c: &Coord) -> Result<Vec<Coord>> {
        let v = self.index(c)?;
        Ok(self.neighbors(v).into_iter().map(|w| self.coord(w)).collect())
    }

    /// Axis along which `a` and `b` differ by one, if they are adjacent.
    pub fn edge_axis(&self, a: usize, b: usize) -> Option<usize> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        (0..self.ndim())
            .find(|&ax| hi - lo == self.strides[ax] && self.component(lo, ax) + 1 < self.dims[ax])
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.edge_axis(a, b).is_some()
    }

    /// All edges `(lo, hi)` with `lo < hi`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.len {
            for a in 0..self.ndim() {
                if self.component(v, a) + 1 < self.dims[a] {
                    out.push((v, v + self.strides[a]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Maps a stored coordinate back to the caller's axis order.
    pub fn to_caller(&self, c: &Coord) -> Coord {
        let mut out = vec![0; self.ndim()];
        for (stored, &orig) in self.axis_origin.iter().enumerate() {
            out[orig] = c.0[stored];
        }
        Coord(out)
    }

    /// Coordinate of `v` in the caller's axis order.
    pub fn caller_coord(&self, v: usize) -> Coord {
        self.to_caller(&self.coord(v))
    }

    pub fn caller_index(&self, c: &Coord) -> Result<usize> {
        self.index(&self.from_caller(c)?)
    }

    pub fn from_caller(&self, c: &Coord) -> Result<Coord> {
        if c.0.len() != self.ndim() {
            return Err(invalid(format!("coordinate {c} has wrong arity")));
        }
        let stored = Coord(self.axis_origin.iter().map(|&o| c.0[o]).collect());
        if !self.contains(&stored) {
            return Err(invalid(format!("coordinate {c} is outside the grid")));
        }
        Ok(stored)
    }
}

/// Hamiltonian term attached to an edge or a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// `-t (a_p^† a_q + a_q^† a_p)`
    Hop,
    /// `U n_{p,+} n_{p,-}`
    OnsitePair,
    /// `U n_p`
    NumberOp,
}

impl TermKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TermKind::Hop => "hop",
            TermKind::OnsitePair => "onsite_pair",
            TermKind::NumberOp => "number_op",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hop" => Some(TermKind::Hop),
            "onsite_pair" => Some(TermKind::OnsitePair),
            "number_op" => Some(TermKind::NumberOp),
            _ => None,
        }
    }
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fermi-Hubbard model on an `rows × cols` open-boundary grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HubbardModel {
    pub rows: usize,
    pub cols: usize,
    pub spin: bool,
    pub u: f64,
    pub t: f64,
}

impl HubbardModel {
    pub fn new(rows: usize, cols: usize, spin: bool) -> Result<Self> {
        Self::with_couplings(rows, cols, spin, 1.0, 1.0)
    }

    pub fn with_couplings(rows: usize, cols: usize, spin: bool, u: f64, t: f64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("lattice sides must be positive"));
        }
        if rows > cols {
            return Err(invalid(format!(
                "expected rows <= cols, got {rows} x {cols}"
            )));
        }
        if !u.is_finite() || !t.is_finite() {
            return Err(invalid("couplings must be finite"));
        }
        Ok(HubbardModel {
            rows,
            cols,
            spin,
            u,
            t,
        })
    }

    /// Grid shape in caller order: `[2, M, N]` with spin, `[M, N]` without.
    pub fn grid_dims(&self) -> Vec<usize> {
        if self.spin {
            vec![2, self.rows, self.cols]
        } else {
            vec![self.rows, self.cols]
        }
    }

    pub fn num_modes(&self) -> usize {
        self.grid_dims().iter().product()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InteractionEdge {
    pub a: usize,
    pub b: usize,
    pub kind: TermKind,
}

/// Vertex space, two-body terms and one-body terms of a lattice Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionGraph {
    grid: GridGraph,
    edges: Vec<InteractionEdge>,
    site_terms: Vec<usize>,
    lookup: BTreeMap<(usize, usize), TermKind>,
}

impl InteractionGraph {
    /// Builds a graph from explicit parts. Edges are normalized to `a < b`,
    /// sorted and deduplicated; self-loops are rejected.
    pub fn from_parts(
        grid: GridGraph,
        edges: impl IntoIterator<Item = (usize, usize, TermKind)>,
        site_terms: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = grid.num_vertices();
        let mut lookup = BTreeMap::new();
        for (a, b, kind) in edges {
            if a == b || a >= n || b >= n {
                return Err(invalid(format!("bad edge ({a},{b})")));
            }
            let key = (a.min(b), a.max(b));
            if let Some(prev) = lookup.insert(key, kind) {
                if prev != kind {
                    return Err(invalid(format!("edge {key:?} has two term kinds")));
                }
            }
        }
        let edges = lookup
            .iter()
            .map(|(&(a, b), &kind)| InteractionEdge { a, b, kind })
            .collect();
        let mut site_terms: Vec<usize> = site_terms.into_iter().collect();
        if site_terms.iter().any(|&s| s >= n) {
            return Err(invalid("site term outside the vertex set"));
        }
        site_terms.sort_unstable();
        site_terms.dedup();
        Ok(InteractionGraph {
            grid,
            edges,
            site_terms,
            lookup,
        })
    }

    /// Complete graph on `n` modes laid out on a path grid, all hop terms.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("need at least one mode"));
        }
        let grid = GridGraph::new(&[n])?;
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b, TermKind::Hop)));
        Self::from_parts(grid, edges, std::iter::empty())
    }

    /// Plain grid graph with every edge a hop term and no site terms.
    pub fn grid_hops(grid: GridGraph) -> Result<Self> {
        let edges: Vec<_> = grid
            .edges()
            .into_iter()
            .map(|(a, b)| (a, b, TermKind::Hop))
            .collect();
        Self::from_parts(grid, edges, std::iter::empty())
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn num_vertices(&self) -> usize {
        self.grid.num_vertices()
    }

    pub fn edges(&self) -> &[InteractionEdge] {
        &self.edges
    }

    pub fn site_terms(&self) -> &[usize] {
        &self.site_terms
    }

    pub fn edge_kind(&self, a: usize, b: usize) -> Option<TermKind> {
        self.lookup.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// Adjacency lists over the edge set.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// Maximum vertex degree over two-body terms; a lower bound on the
    /// number of interaction layers.
    pub fn degree_bound(&self) -> usize {
        let mut deg = vec![0usize; self.num_vertices()];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Graphviz rendering; `label` optionally annotates each edge.
    pub fn to_dot_with(&self, mut label: impl FnMut(&InteractionEdge) -> Option<String>) -> String {
        let mut s = String::from("graph interaction {\n");
        for v in 0..self.num_vertices() {
            s.push_str(&format!("  \"{}\";\n", self.grid.caller_coord(v)));
        }
        for e in &self.edges {
            let mut attrs = format!("term=\"{}\"", e.kind);
            if let Some(l) = label(e) {
                attrs.push_str(&format!(", label=\"{l}\""));
            }
            s.push_str(&format!(
                "  \"{}\" -- \"{}\" [{attrs}];\n",
                self.grid.caller_coord(e.a),
                self.grid.caller_coord(e.b)
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_with(|_| None)
    }
}

/// Interaction graph of a Hubbard model: the `M × N` grid with hops and
/// number operators, or the `2 × M × N` grid whose spin-axis edges carry
/// the on-site pair terms.
pub fn interaction_graph(m: &HubbardModel) -> Result<InteractionGraph> {
    let grid = GridGraph::new(&m.grid_dims())?;
    if m.spin {
        let spin_axis = grid.stored_axis(0).expect("spin axis present");
        let edges: Vec<_> = grid
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let kind = if grid.edge_axis(a, b) == Some(spin_axis) {
                    TermKind::OnsitePair
                } else {
                    TermKind::Hop
                };
                (a, b, kind)
            })
            .collect();
        InteractionGraph::from_parts(grid, edges, std::iter::empty())
    } else {
        let n = grid.num_vertices();
        let edges: Vec<_> = grid
            .edges()
            .into_iter()
            .map(|(a, b)| (a, b, TermKind::Hop))
            .collect();
        InteractionGraph::from_parts(grid, edges, 0..n)
    }
}
