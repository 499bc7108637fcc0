//! Named network constructions selectable at run time.

use once_cell::sync::Lazy;

use crate::bounds::{
    boundary_profile, dense_bounds, graph_bounds, hubbard_bounds, BoundsReport,
    DEFAULT_EXHAUSTIVE_LIMIT,
};
use crate::error::{invalid, Error, Result};
use crate::isoperimetry::wang_wang_order;
use crate::lattice::{interaction_graph, make_grid, HubbardModel, InteractionGraph};

use super::{
    dense_network, grid_network, hubbard_network, triangular_graph, triangular_network, DenseMode,
    SwapNetwork,
};

/// Model parameters as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub n: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub mode: Option<String>,
    pub u: f64,
    pub t: f64,
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec {
            rows: None,
            cols: None,
            n: None,
            dims: None,
            mode: None,
            u: 1.0,
            t: 1.0,
        }
    }
}

impl ModelSpec {
    pub fn lattice(rows: usize, cols: usize) -> Self {
        ModelSpec {
            rows: Some(rows),
            cols: Some(cols),
            ..Default::default()
        }
    }

    pub fn modes(n: usize) -> Self {
        ModelSpec {
            n: Some(n),
            ..Default::default()
        }
    }

    pub fn grid(dims: &[usize]) -> Self {
        ModelSpec {
            dims: Some(dims.to_vec()),
            ..Default::default()
        }
    }

    fn rows_cols(&self) -> Result<(usize, usize)> {
        match (self.rows, self.cols) {
            (Some(r), Some(c)) => Ok((r, c)),
            _ => Err(invalid("this model needs --rows and --cols")),
        }
    }

    fn mode_count(&self) -> Result<usize> {
        self.n.ok_or_else(|| invalid("this model needs --n"))
    }

    fn dims(&self) -> Result<&[usize]> {
        self.dims
            .as_deref()
            .ok_or_else(|| invalid("this model needs --dims"))
    }

    fn dense_mode(&self) -> Result<DenseMode> {
        self.mode.as_deref().map_or(Ok(DenseMode::default()), str::parse)
    }

    fn no_mode(&self) -> Result<()> {
        match &self.mode {
            Some(m) => Err(Error::UnsupportedMode(m.clone())),
            None => Ok(()),
        }
    }
}

pub trait Synthesizer: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn interaction_graph(&self, spec: &ModelSpec) -> Result<InteractionGraph>;
    fn network(&self, spec: &ModelSpec) -> Result<SwapNetwork>;
    fn bounds(&self, spec: &ModelSpec) -> Result<BoundsReport>;

    /// The Hubbard model behind the graph, when there is one.
    fn hubbard(&self, _spec: &ModelSpec) -> Result<Option<HubbardModel>> {
        Ok(None)
    }
}

struct Hubbard {
    spin: bool,
}

impl Hubbard {
    fn model(&self, spec: &ModelSpec) -> Result<HubbardModel> {
        spec.no_mode()?;
        let (r, c) = spec.rows_cols()?;
        HubbardModel::with_couplings(r, c, self.spin, spec.u, spec.t)
    }
}

impl Synthesizer for Hubbard {
    fn name(&self) -> &'static str {
        if self.spin {
            "spin"
        } else {
            "spinless"
        }
    }

    fn describe(&self) -> &'static str {
        if self.spin {
            "spin Hubbard model on an M x N lattice"
        } else {
            "spinless Hubbard model on an M x N lattice"
        }
    }

    fn interaction_graph(&self, spec: &ModelSpec) -> Result<InteractionGraph> {
        interaction_graph(&self.model(spec)?)
    }

    fn network(&self, spec: &ModelSpec) -> Result<SwapNetwork> {
        hubbard_network(&self.model(spec)?)
    }

    fn bounds(&self, spec: &ModelSpec) -> Result<BoundsReport> {
        hubbard_bounds(&self.model(spec)?)
    }

    fn hubbard(&self, spec: &ModelSpec) -> Result<Option<HubbardModel>> {
        self.model(spec).map(Some)
    }
}

struct Dense;

impl Synthesizer for Dense {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn describe(&self) -> &'static str {
        "dense one-body Hamiltonian on n modes"
    }

    fn interaction_graph(&self, spec: &ModelSpec) -> Result<InteractionGraph> {
        InteractionGraph::complete(spec.mode_count()?)
    }

    fn network(&self, spec: &ModelSpec) -> Result<SwapNetwork> {
        dense_network(spec.mode_count()?, spec.dense_mode()?)
    }

    fn bounds(&self, spec: &ModelSpec) -> Result<BoundsReport> {
        spec.dense_mode()?;
        dense_bounds(spec.mode_count()?)
    }
}

struct Grid;

impl Synthesizer for Grid {
    fn name(&self) -> &'static str {
        "grid"
    }

    fn describe(&self) -> &'static str {
        "nearest-neighbor hops on an n-dimensional grid"
    }

    fn interaction_graph(&self, spec: &ModelSpec) -> Result<InteractionGraph> {
        spec.no_mode()?;
        InteractionGraph::grid_hops(make_grid(spec.dims()?)?)
    }

    fn network(&self, spec: &ModelSpec) -> Result<SwapNetwork> {
        spec.no_mode()?;
        grid_network(spec.dims()?)
    }

    fn bounds(&self, spec: &ModelSpec) -> Result<BoundsReport> {
        let ig = self.interaction_graph(spec)?;
        let mut rep = boundary_profile(ig.grid(), &wang_wang_order(ig.grid()));
        rep.interaction_depth_lb = ig.degree_bound();
        Ok(rep)
    }
}

struct Triangular;

impl Synthesizer for Triangular {
    fn name(&self) -> &'static str {
        "triangular"
    }

    fn describe(&self) -> &'static str {
        "spinless lattice with extra edges inside each anti-diagonal"
    }

    fn interaction_graph(&self, spec: &ModelSpec) -> Result<InteractionGraph> {
        spec.no_mode()?;
        let (r, c) = spec.rows_cols()?;
        triangular_graph(r, c)
    }

    fn network(&self, spec: &ModelSpec) -> Result<SwapNetwork> {
        spec.no_mode()?;
        let (r, c) = spec.rows_cols()?;
        triangular_network(r, c).map(|(_, net)| net)
    }

    fn bounds(&self, spec: &ModelSpec) -> Result<BoundsReport> {
        graph_bounds(&self.interaction_graph(spec)?, DEFAULT_EXHAUSTIVE_LIMIT)
    }
}

static REGISTRY: Lazy<Vec<Box<dyn Synthesizer>>> = Lazy::new(|| {
    vec![
        Box::new(Hubbard { spin: false }),
        Box::new(Hubbard { spin: true }),
        Box::new(Dense),
        Box::new(Grid),
        Box::new(Triangular),
    ]
});

pub fn registry() -> &'static [Box<dyn Synthesizer>] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static dyn Synthesizer> {
    registry()
        .iter()
        .find(|s| s.name() == name)
        .map(|s| s.as_ref())
        .ok_or_else(|| Error::UnsupportedMode(format!("unknown model {name}")))
}
