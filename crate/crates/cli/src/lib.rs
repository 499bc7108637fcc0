//! `fswap` command-line front end.
//!
//! Exit status: 0 on success, 1 when verification or an optimality check
//! fails (including unreadable network contents), 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fswap_core::bounds::{
    bandwidth_exact, graph_bandwidth_exact, graph_two_bandwidth_exact, two_bandwidth_exact,
    BoundsReport, DEFAULT_EXHAUSTIVE_LIMIT,
};
use fswap_core::fermioracle::{
    mode_permutation_check, trotter_error_check, MAX_MODES, MAX_TROTTER_MODES,
};
use fswap_core::format::{export, from_json, Format};
use fswap_core::lattice::{make_grid, InteractionGraph};
use fswap_core::synth::{lookup, ModelSpec, Synthesizer, SwapNetwork};
use fswap_core::verify::{
    check_against_bounds, coverage, min_swap_depth_exhaustive, DEFAULT_ORACLE_LIMIT,
};
use fswap_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fswap", version, about = "Fermionic swap network synthesis and verification")]
pub struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a network for a model.
    Synth {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Lower bounds on swap and interaction depth.
    Bounds {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Check a network file against a model.
    Verify {
        network: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        /// Fail unless the swap depth meets the lower bound.
        #[arg(long)]
        against_bounds: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Exhaustive reference computations on small graphs.
    Oracle {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        model: OptionalModel,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Matrix-level checks of a Hubbard network.
    CheckFermionic {
        /// Network file; synthesized from the model when omitted.
        network: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        /// Trotter errors at or below this count as exact.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Convert a network file.
    Export {
        network: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[command(flatten)]
        model: OptionalModel,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[command(flatten)]
    params: ModelParams,
}

impl ModelArgs {
    fn resolve(&self) -> Result<(&'static dyn Synthesizer, ModelSpec), Failure> {
        self.params.check_selectors(self.model)?;
        Ok((self.model.synthesizer()?, self.params.spec()))
    }
}

#[derive(Args, Debug, Clone)]
struct OptionalModel {
    #[arg(long, value_enum)]
    model: Option<ModelName>,
    #[command(flatten)]
    params: ModelParams,
}

#[derive(Args, Debug, Clone)]
struct ModelParams {
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    u: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
}

impl ModelParams {
    fn given(&self) -> Vec<&'static str> {
        [
            ("rows", self.rows.is_some()),
            ("cols", self.cols.is_some()),
            ("n", self.n.is_some()),
            ("dims", self.dims.is_some()),
        ]
        .into_iter()
        .filter_map(|(name, set)| set.then_some(name))
        .collect()
    }

    fn check_selectors(&self, model: ModelName) -> Result<(), Failure> {
        let allowed = model.selectors();
        match self.given().into_iter().find(|f| !allowed.contains(f)) {
            Some(f) => Err(Failure::Usage(format!(
                "--{f} does not apply to this model; it takes --{}",
                allowed.join(" and --")
            ))),
            None => Ok(()),
        }
    }

    fn spec(&self) -> ModelSpec {
        ModelSpec {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            dims: self.dims.clone(),
            mode: self.mode.clone(),
            u: self.u,
            t: self.t,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelName {
    Spinless,
    Spin,
    Dense,
    Grid,
    Triangular,
}

impl ModelName {
    /// Size flags this model reads; the others must be absent.
    fn selectors(self) -> &'static [&'static str] {
        match self {
            ModelName::Spinless | ModelName::Spin | ModelName::Triangular => &["rows", "cols"],
            ModelName::Dense => &["n"],
            ModelName::Grid => &["dims"],
        }
    }

    fn synthesizer(self) -> Result<&'static dyn Synthesizer, Failure> {
        let name = self.to_possible_value().expect("named variant");
        Ok(lookup(name.get_name())?)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutFormat {
    Json,
    Dot,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Dot => Format::Dot,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Quantity {
    Bandwidth,
    TwoBandwidth,
    MinSwapDepth,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedNetwork(_) | Error::Parse(_) | Error::Infeasible(_) => {
                Failure::Check(e.to_string())
            }
            Error::InvalidArgument(_) | Error::SizeExceeded { .. } | Error::UnsupportedMode(_) => {
                Failure::Usage(e.to_string())
            }
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

/// Runs with the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// `argv[0]` is the program name.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cfg.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_FAIL
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("write failed: {e}")))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => emit(out, text),
    }
}

fn read_network(path: &Path) -> Result<SwapNetwork, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(from_json(&text)?)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Synth {
            model,
            out: path,
            format,
        } => {
            let (synth, spec) = model.resolve()?;
            let net = synth.network(&spec)?;
            let ig = synth.interaction_graph(&spec)?;
            let text = export(&net, format.into(), Some(&ig))?;
            write_or_print(path.as_deref(), &text, out)?;
            if path.is_some() {
                emit(
                    out,
                    &format!(
                        "swap_depth={} interaction_depth={}\n",
                        net.swap_depth(),
                        net.interaction_depth()
                    ),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Bounds { model, format } => {
            let (synth, spec) = model.resolve()?;
            let rep = synth.bounds(&spec)?;
            let text = match format {
                ReportFormat::Json => format!("{}\n", rep.to_json()),
                ReportFormat::Text => bounds_text(&rep),
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            network,
            model,
            against_bounds,
            format,
        } => {
            let (synth, spec) = model.resolve()?;
            let ig = synth.interaction_graph(&spec)?;
            let net = read_network(&network)?;
            let rep = coverage(&net, &ig)?;
            let bounds = if against_bounds {
                Some(synth.bounds(&spec)?)
            } else {
                None
            };
            let opt = bounds.as_ref().map(|b| check_against_bounds(&rep, b));
            let text = match format {
                ReportFormat::Json => {
                    let mut v: serde_json::Value =
                        serde_json::from_str(&rep.to_json(&ig)).expect("valid json");
                    if let (Some(o), Some(b)) = (opt, &bounds) {
                        v["swap_optimal"] = json!(o.swap_optimal);
                        v["interaction_optimal"] = json!(o.interaction_optimal);
                        v["swap_depth_lb"] = json!(b.swap_depth_lb);
                        v["interaction_depth_lb"] = json!(b.interaction_depth_lb);
                    }
                    format!("{v}\n")
                }
                ReportFormat::Text => {
                    let mut s = format!(
                        "covered={}/{} missing={}\n",
                        rep.covered.len(),
                        ig.edges().len(),
                        rep.missing.len() + rep.missing_sites.len()
                    );
                    for &(a, b) in &rep.missing {
                        s.push_str(&format!("missing {}-{}\n", ig.grid().caller_coord(a), ig.grid().caller_coord(b)));
                    }
                    for &v in &rep.missing_sites {
                        s.push_str(&format!("missing site {}\n", ig.grid().caller_coord(v)));
                    }
                    match (opt, &bounds) {
                        (Some(o), Some(b)) => {
                            s.push_str(&depth_line("swap_depth", rep.swap_depth, b.swap_depth_lb, o.swap_optimal));
                            s.push_str(&depth_line(
                                "interaction_depth",
                                rep.interaction_depth,
                                b.interaction_depth_lb,
                                o.interaction_optimal,
                            ));
                        }
                        _ => {
                            s.push_str(&format!("swap_depth={}\n", rep.swap_depth));
                            s.push_str(&format!("interaction_depth={}\n", rep.interaction_depth));
                        }
                    }
                    s
                }
            };
            emit(out, &text)?;
            let optimal = opt.is_none_or(|o| o.swap_optimal);
            Ok(if rep.is_complete() && optimal {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
        Command::Oracle {
            quantity,
            model,
            max_size,
        } => {
            let value = oracle(quantity, &model, max_size)?;
            emit(out, &format!("{value}\n"))?;
            Ok(EXIT_OK)
        }
        Command::CheckFermionic {
            network,
            model,
            dt,
            tol,
        } => {
            let (synth, spec) = model.resolve()?;
            let Some(hm) = synth.hubbard(&spec)? else {
                return Err(Failure::Usage(format!(
                    "check-fermionic needs a Hubbard model, not {}",
                    synth.name()
                )));
            };
            let net = match &network {
                Some(p) => read_network(p)?,
                None => synth.network(&spec)?,
            };
            let n = net.num_positions();
            if n > MAX_MODES.min(MAX_TROTTER_MODES) {
                return Err(Error::SizeExceeded {
                    size: n,
                    limit: MAX_TROTTER_MODES,
                }
                .into());
            }
            let permutation = mode_permutation_check(&net)?;
            let rep = trotter_error_check(&hm, &net, dt)?;
            let exact = rep.err <= tol;
            let pass = permutation && (exact || rep.ratio_in_range());
            let v = json!({
                "err": rep.err,
                "ratio": rep.ratio,
                "permutation": permutation,
                "pass": pass,
            });
            emit(out, &format!("{v}\n"))?;
            Ok(if pass { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Export {
            network,
            format,
            model,
            out: path,
        } => {
            let net = read_network(&network)?;
            let ig = match model.model {
                Some(m) => {
                    model.params.check_selectors(m)?;
                    Some(m.synthesizer()?.interaction_graph(&model.params.spec())?)
                }
                None if model.params.given().is_empty() => None,
                None => return Err(Failure::Usage("size flags need --model".into())),
            };
            let text = export(&net, format.into(), ig.as_ref())?;
            write_or_print(path.as_deref(), &text, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn depth_line(name: &str, depth: usize, lb: usize, optimal: bool) -> String {
    if optimal {
        format!("{name}={depth} optimal\n")
    } else {
        format!("{name}={depth} above lower bound {lb}\n")
    }
}

fn bounds_text(rep: &BoundsReport) -> String {
    let opt = |v: Option<usize>| v.map_or("unknown".to_string(), |x| x.to_string());
    let mut s = format!(
        "bandwidth={}\ntwo_bandwidth={}\nswap_depth_lb={}\ninteraction_depth_lb={}\nmethod={}\n",
        opt(rep.bandwidth),
        opt(rep.two_bandwidth),
        rep.swap_depth_lb,
        rep.interaction_depth_lb,
        serde_json::to_value(rep.method).expect("method serializes").as_str().unwrap_or("")
    );
    for n in &rep.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

fn oracle(quantity: Quantity, model: &OptionalModel, max_size: Option<usize>) -> Result<usize, Failure> {
    let spec = model.params.spec();
    let graph: InteractionGraph = match model.model {
        Some(m) => {
            model.params.check_selectors(m)?;
            m.synthesizer()?.interaction_graph(&spec)?
        }
        None => {
            model.params.check_selectors(ModelName::Grid)?;
            let dims = spec
                .dims
                .as_ref()
                .ok_or_else(|| Failure::Usage("oracle needs --dims or --model".into()))?;
            InteractionGraph::grid_hops(make_grid(dims)?)?
        }
    };
    // plain grids get reflection pruning
    let plain_grid = model.model.is_none() || model.model == Some(ModelName::Grid);
    Ok(match quantity {
        Quantity::Bandwidth => {
            let limit = max_size.unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT);
            if plain_grid {
                bandwidth_exact(graph.grid(), limit)?
            } else {
                graph_bandwidth_exact(&graph, limit)?
            }
        }
        Quantity::TwoBandwidth => {
            let limit = max_size.unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT);
            if plain_grid {
                two_bandwidth_exact(graph.grid(), limit)?
            } else {
                graph_two_bandwidth_exact(&graph, limit)?
            }
        }
        Quantity::MinSwapDepth => {
            min_swap_depth_exhaustive(&graph, max_size.unwrap_or(DEFAULT_ORACLE_LIMIT))?
        }
    })
}
