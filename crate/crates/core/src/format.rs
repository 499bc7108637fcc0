//! Network serialization: versioned JSON, Graphviz and a plain layer trace.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isoperimetry::LinearOrder;
use crate::lattice::{make_grid, Coord, GridGraph, InteractionGraph, TermKind};
use crate::synth::{InteractRecord, Layer, SwapNetwork};
use crate::verify::coverage;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            other => Err(Error::UnsupportedMode(format!("unknown format {other}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    version: u32,
    num_positions: usize,
    initial_order: Vec<Coord>,
    layers: Vec<LayerDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum LayerDoc {
    Swap { at: Vec<usize> },
    Interact { pairs: Vec<RecordDoc> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordDoc {
    at: usize,
    term: TermKind,
    sites: Vec<Coord>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn to_json(net: &SwapNetwork) -> String {
    let g = net.grid();
    let doc = NetworkDoc {
        version: SCHEMA_VERSION,
        num_positions: net.num_positions(),
        initial_order: net.initial_order().sequence().iter().map(|&v| g.caller_coord(v)).collect(),
        layers: net
            .layers()
            .iter()
            .map(|l| match l {
                Layer::Swap(at) => LayerDoc::Swap { at: at.clone() },
                Layer::Interact(recs) => LayerDoc::Interact {
                    pairs: recs
                        .iter()
                        .map(|r| RecordDoc {
                            at: r.at,
                            term: r.term,
                            sites: r.sites.iter().map(|&v| g.caller_coord(v)).collect(),
                        })
                        .collect(),
                },
            })
            .collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("network serializes");
    s.push('\n');
    s
}

/// Reads a network; grid dimensions are one more than the largest
/// component seen on each axis.
pub fn from_json(text: &str) -> Result<SwapNetwork> {
    let doc: NetworkDoc = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    if doc.version != SCHEMA_VERSION {
        return Err(parse_err(format!("unsupported version {}", doc.version)));
    }
    let ndim = doc
        .initial_order
        .first()
        .map(|c| c.0.len())
        .ok_or_else(|| parse_err("initial_order is empty"))?;
    if ndim == 0 || doc.initial_order.iter().any(|c| c.0.len() != ndim) {
        return Err(parse_err("coordinates must share one positive length"));
    }
    let dims: Vec<usize> = (0..ndim)
        .map(|a| doc.initial_order.iter().map(|c| c.0[a]).max().unwrap_or(0) + 1)
        .collect();
    let grid = make_grid(&dims)?;
    if doc.num_positions != grid.num_vertices() || doc.initial_order.len() != doc.num_positions {
        return Err(parse_err(format!(
            "num_positions {} does not match {} coordinates on a grid of {}",
            doc.num_positions,
            doc.initial_order.len(),
            grid.num_vertices()
        )));
    }
    let index = |g: &GridGraph, c: &Coord| g.caller_index(c).map_err(|e| parse_err(e.to_string()));
    let seq = doc
        .initial_order
        .iter()
        .map(|c| index(&grid, c))
        .collect::<Result<Vec<_>>>()?;
    let order = LinearOrder::from_sequence(seq).map_err(|e| parse_err(e.to_string()))?;
    let mut layers = Vec::with_capacity(doc.layers.len());
    for l in doc.layers {
        layers.push(match l {
            LayerDoc::Swap { at } => Layer::Swap(at),
            LayerDoc::Interact { pairs } => Layer::Interact(
                pairs
                    .into_iter()
                    .map(|r| {
                        Ok(InteractRecord {
                            at: r.at,
                            term: r.term,
                            sites: r
                                .sites
                                .iter()
                                .map(|c| index(&grid, c))
                                .collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
        });
    }
    SwapNetwork::new(grid, order, layers)
}

/// One line per layer.
pub fn to_text(net: &SwapNetwork) -> String {
    let g = net.grid();
    let mut s = String::new();
    for l in net.layers() {
        match l {
            Layer::Swap(at) => {
                s.push_str("swap");
                for i in at {
                    let _ = write!(s, " {i}");
                }
            }
            Layer::Interact(recs) => {
                s.push_str("interact");
                for r in recs {
                    let sites: Vec<String> = r.sites.iter().map(|&v| g.caller_coord(v).to_string()).collect();
                    let _ = write!(s, " {}:{}:{}", r.at, r.term, sites.join("-"));
                }
            }
        }
        s.push('\n');
    }
    s
}

/// Interaction graph with each covered edge labelled by the first layer
/// interacting it. Without a model the graph is read off the records.
pub fn to_dot(net: &SwapNetwork, ig: Option<&InteractionGraph>) -> Result<String> {
    match ig {
        Some(ig) => {
            let rep = coverage(net, ig)?;
            Ok(ig.to_dot_with(|e| rep.covered.get(&(e.a, e.b)).map(|l| format!("L{l}"))))
        }
        None => {
            let mut first: BTreeMap<(usize, usize), (usize, TermKind)> = BTreeMap::new();
            let mut sites = Vec::new();
            for (li, l) in net.layers().iter().enumerate() {
                if let Layer::Interact(recs) = l {
                    for r in recs {
                        match r.sites.as_slice() {
                            [a, b] => {
                                first.entry(((*a).min(*b), (*a).max(*b))).or_insert((li, r.term));
                            }
                            [v] => sites.push(*v),
                            _ => {}
                        }
                    }
                }
            }
            let derived = InteractionGraph::from_parts(
                net.grid().clone(),
                first.iter().map(|(&(a, b), &(_, k))| (a, b, k)),
                sites,
            )?;
            Ok(derived.to_dot_with(|e| first.get(&(e.a, e.b)).map(|(l, _)| format!("L{l}"))))
        }
    }
}

pub fn export(net: &SwapNetwork, format: Format, ig: Option<&InteractionGraph>) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(net)),
        Format::Text => Ok(to_text(net)),
        Format::Dot => to_dot(net, ig),
    }
}
