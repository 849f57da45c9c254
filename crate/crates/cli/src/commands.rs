//! Command execution. Each command renders into a `String` so the binary and
//! the tests go through the same path.

use std::fs;
use std::path::PathBuf;

use tree_asymptotics::expansion::{Analysis, AnalysisConfig};
use tree_asymptotics::{counts, Variety, VarietySpec};

use crate::cli::{Cli, Command};
use crate::config::{ConfigError, RunConfig, MAX_EXACT_SIZE};
use crate::oeis::{self, OeisFixture, Source, VerifyReport};
use crate::output::{self, EstimateJson};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const COMPUTATION: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Computation(#[from] tree_asymptotics::Error),
    #[error(transparent)]
    Expansion(#[from] tree_asymptotics::ExpansionError),
    #[error("{0}")]
    Io(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Config(_) => exit::CONFIG,
            CommandError::Computation(_) | CommandError::Expansion(_) => exit::COMPUTATION,
            CommandError::Io(_) => exit::IO,
        }
    }
}

/// What a command produced: text for stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: exit::OK }
    }
}

fn spec_for(variety: Variety, as_printed: bool) -> VarietySpec {
    match (variety, as_printed) {
        (Variety::Hierarchy, true) => VarietySpec::hierarchy_as_printed(),
        _ => VarietySpec::for_variety(variety),
    }
}

fn analysis(cfg: &RunConfig, spec: &VarietySpec, order: usize, tau_order: usize) -> Result<Analysis, CommandError> {
    let config = AnalysisConfig { terms: cfg.terms, digits: cfg.digits, puiseux_order: order, tau_order };
    log::info!("{}: N = {}, D = {}, K = {order}, L = {tau_order}", spec.name, cfg.terms, cfg.digits);
    Ok(Analysis::run(spec, &config)?)
}

pub fn run(cli: &Cli) -> Result<Outcome, CommandError> {
    let cfg = cli.global.run_config();
    cfg.validate()?;
    let as_printed = cli.global.as_printed_hierarchy;
    match &cli.command {
        Command::Counts { variety, n } => Ok(Outcome::ok(output::render_counts(&counts(*variety, *n), cfg.format))),
        Command::Expand { variety, order, tau_order, table1, table2 } => {
            cfg.check_order(*order)?;
            let l = tau_order.unwrap_or(*order);
            cfg.check_order(l.max(1))?;
            let a = analysis(&cfg, &spec_for(*variety, as_printed), *order, l)?;
            let text = match (table1, table2) {
                (false, false) => output::render_expansion(&a, cfg.format),
                _ => {
                    let mut s = String::new();
                    if *table1 {
                        s.push_str(&output::render_table("t", a.t()));
                    }
                    if *table2 {
                        s.push_str(&output::render_table("tau", a.tau()));
                    }
                    s
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Estimate { variety, n, order } => {
            cfg.check_sizes(&[*n])?;
            cfg.check_order((*order).max(1))?;
            let a = analysis(&cfg, &spec_for(*variety, as_printed), *order, *order)?;
            let table = a.error_table(&[*n], &[*order])?;
            let exact = counts(*variety, *n).get(*n).cloned().expect("counts reach n");
            let sig = cfg.digits as usize;
            let doc = EstimateJson {
                variety: a.spec.name.clone(),
                n: *n,
                order: *order,
                estimate: a.estimate(*n, *order)?.to_sci_string(sig),
                exact: exact.to_string(),
                relative_error: table.relative[0][0].to_sci_string(6),
            };
            Ok(Outcome::ok(output::render_estimate(&doc, cfg.format)))
        }
        Command::ErrorTable { variety, sizes, orders, out_dir } => {
            cfg.check_sizes(sizes)?;
            if orders.is_empty() {
                return Err(ConfigError("no orders given".into()).into());
            }
            let top = orders.iter().copied().max().unwrap_or(0);
            cfg.check_order(top.max(1))?;
            let a = analysis(&cfg, &spec_for(*variety, as_printed), top, top)?;
            let table = a.error_table(sizes, orders)?;
            let max = sizes.iter().copied().max().unwrap_or(1);
            let every: Vec<usize> = (1..=max).collect();
            let ratios = a.error_table(&every, orders)?;
            write_file(out_dir.join("ratio.csv"), &output::render_ratio_csv(&ratios, cfg.terms, cfg.digits))?;
            Ok(Outcome::ok(output::render_error_table(&table, cfg.terms, cfg.digits, cfg.format)))
        }
        Command::VerifyOeis { variety, fetch, n_max, fixture } => {
            verify_oeis(&cfg, variety.0, *fetch && !cfg.offline, *n_max, fixture.as_ref())
        }
    }
}

fn write_file(path: PathBuf, text: &str) -> Result<(), CommandError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CommandError::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(&path, text).map_err(|e| CommandError::Io(format!("{}: {e}", path.display())))
}

fn verify_oeis(
    cfg: &RunConfig,
    variety: Option<Variety>,
    online: bool,
    n_max: usize,
    fixture: Option<&PathBuf>,
) -> Result<Outcome, CommandError> {
    if n_max > MAX_EXACT_SIZE {
        return Err(ConfigError(format!("--n-max must be at most {MAX_EXACT_SIZE}")).into());
    }
    let varieties: Vec<Variety> = match variety {
        Some(v) => vec![v],
        None if fixture.is_some() => return Err(ConfigError("--fixture needs a variety".into()).into()),
        None => Variety::ALL.to_vec(),
    };
    let mut reports: Vec<(VerifyReport, &str)> = Vec::new();
    for v in varieties {
        let id = v.oeis_id();
        let (fx, source): (OeisFixture, &str) = match fixture {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CommandError::Io(format!("{}: {e}", path.display())))?;
                let fx = oeis::parse_bfile(id, &text).map_err(|e| CommandError::Io(format!("{}: {e}", path.display())))?;
                (fx, "file")
            }
            None => {
                let (fx, src) = oeis::load(id, &cfg.cache_dir, online).map_err(|e| CommandError::Io(e.to_string()))?;
                (fx, Source::name(src))
            }
        };
        let fx = OeisFixture { id: fx.id, pairs: fx.pairs.into_iter().filter(|(n, _)| *n <= n_max).collect() };
        let report = oeis::verify(&fx, &counts(v, n_max));
        reports.push((report, source));
    }
    let stdout = output::render_verify(&reports, cfg.format);
    let stderr = if reports.iter().all(|(r, _)| r.checked == 0) { "nothing to verify\n".to_string() } else { String::new() };
    let code = if reports.iter().all(|(r, _)| r.ok()) { exit::OK } else { exit::MISMATCH };
    Ok(Outcome { stdout, stderr, code })
}
