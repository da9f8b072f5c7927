mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crepant_core::crc2d::{self, RouteSelection};
use crepant_core::crc3d;
use crepant_core::exact::fmt_rational;
use crepant_core::hodge::{self, BracketMode, OrbKey};
use crepant_core::{suites, tau};

use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "crepant",
    version,
    about = "Exact orbifold Gromov-Witten correlators and crepant resolution checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Witten-Kontsevich intersection number <tau_{d1} ... tau_{dm}>_g.
    Tau {
        genus: i64,
        #[arg(allow_negative_numbers = true)]
        indices: Vec<i64>,
    },
    /// 2D orbifold correlator <prod tau_{k_i}(e_{a_i})>_g (coefficient of t).
    Corr2d {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Brackets::BruteForce)]
        brackets: Brackets,
    },
    /// 3D orbifold correlator <prod tau_0(e_{a_i})>_g.
    Corr3d {
        #[command(flatten)]
        key: KeyArgs,
    },
    /// Dump a potential as a sorted monomial table.
    Potential {
        kind: PotentialKind,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        g: u32,
        #[arg(long = "max-degree", default_value_t = 4)]
        max_degree: u32,
        /// Total Q-degree for the resolution side.
        #[arg(long = "Q-degree", alias = "Qmax", default_value_t = 3)]
        q_degree: u32,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct KeyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    g: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Brackets {
    BruteForce,
    Closed,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum PotentialKind {
    #[value(name = "2d")]
    #[serde(rename = "2d")]
    TwoD,
    #[value(name = "3d")]
    #[serde(rename = "3d")]
    ThreeD,
    Closed2d,
    Closed3d,
    Kernel2d,
    Resolution2d,
    Resolution3d,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Route {
    All,
    Kernel,
    Closed,
    Resolution,
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Four routes to the 2D potential against the polylogarithm closed form.
    Crc2d {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        g: u32,
        #[arg(long = "max-degree", default_value_t = 6)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
    },
    /// Orbifold 3D potential against the closed form, genus by genus.
    Crc3d {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long = "max-degree", default_value_t = 6)]
        max_degree: u32,
    },
    /// Vertex partition sum against the product formula.
    Vertex {
        #[arg(long)]
        n: u32,
        /// Highest power of q compared.
        #[arg(long = "q-order", alias = "qmax", default_value_t = 12)]
        q_order: u32,
        #[arg(long = "Q-degree", alias = "Qmax", default_value_t = 3)]
        q_degree: u32,
    },
    /// Consequences of the Mumford relation in the Chern ring.
    Chern {
        #[arg(long = "max-rank-sum", default_value_t = 6)]
        max_rank_sum: usize,
    },
    /// Tau engine, polylogarithm bridge, kernel lemma and series identities.
    Identities,
    /// Curly and square bracket closed forms.
    Brackets,
}

/// Everything that determines a run; embedded in every report.
#[derive(Debug, Default, Serialize)]
struct RunConfig {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_rank_sum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    route: Option<Route>,
    format: Format,
    seed: u64,
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<crepant_core::Error> for Failure {
    fn from(e: crepant_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn validate_n(n: u32) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    Ok(())
}

fn validate_degree(d: u32) -> Result<(), Failure> {
    if d < 4 {
        return Err(Failure::Usage("--max-degree must be at least 4".into()));
    }
    Ok(())
}

/// Runs the parsed command; `Ok(true)` when every check passed.
fn run(cli: Cli) -> Result<bool, Failure> {
    let out = Output::new(cli.format, cli.out.clone());
    let mut config = RunConfig {
        format: cli.format,
        seed: cli.seed,
        ..Default::default()
    };
    match cli.command {
        Command::Tau { genus, indices } => {
            let v = tau::tau(genus, &indices);
            out.value(&json!({ "value": fmt_rational(&v) }))?;
            Ok(true)
        }
        Command::Corr2d { key, k, brackets } => {
            validate_n(key.n)?;
            let mode = match brackets {
                Brackets::BruteForce => BracketMode::BruteForce,
                Brackets::Closed => BracketMode::Closed,
            };
            let v = hodge::orbifold_correlator_2d(&OrbKey::new(key.n, key.g, key.a, k), mode)?;
            out.value(&json!({ "value": fmt_rational(&v), "unit": "t" }))?;
            Ok(true)
        }
        Command::Corr3d { key } => {
            validate_n(key.n)?;
            let v = hodge::orbifold_correlator_3d(key.n, key.g, &key.a)?;
            out.value(&json!({ "value": fmt_rational(&v) }))?;
            Ok(true)
        }
        Command::Potential {
            kind,
            n,
            g,
            max_degree,
            q_degree,
        } => {
            validate_n(n)?;
            config.command = format!(
                "potential {}",
                serde_json::to_value(kind)
                    .expect("kind")
                    .as_str()
                    .unwrap_or("")
            );
            config.n = Some(n);
            config.g = Some(g);
            let (series, skipped) = match kind {
                PotentialKind::TwoD => {
                    let p =
                        crc2d::stationary_potential_2d(n, g, max_degree, BracketMode::BruteForce)?;
                    (p.series, p.skipped)
                }
                PotentialKind::Closed2d => {
                    let p = crc2d::closed_form_potential_2d(n, g, max_degree)?;
                    (p.series, p.skipped)
                }
                PotentialKind::Kernel2d => {
                    let p = crc2d::potential_2d_via_kernel(n, g, max_degree)?;
                    (p.series, p.skipped)
                }
                PotentialKind::Resolution2d => {
                    let p = crc2d::resolution_potential_2d(n, g, max_degree)?;
                    (p.series, p.skipped)
                }
                PotentialKind::ThreeD => {
                    let p = crc3d::orbifold_potential_3d(n, g, max_degree)?;
                    (p.series, p.skipped)
                }
                PotentialKind::Closed3d => {
                    let p = crc3d::closed_form_potential_3d(n, g, max_degree)?;
                    (p.series, p.skipped)
                }
                PotentialKind::Resolution3d => (
                    crc3d::resolution_potential_3d_closed(n, g, q_degree)?,
                    vec![],
                ),
            };
            match kind {
                PotentialKind::Resolution3d => config.q_degree = Some(q_degree),
                _ => config.max_degree = Some(max_degree),
            }
            out.potential(&config, &series, &skipped)?;
            Ok(true)
        }
        Command::Verify { suite } => run_suite(suite, config, &out),
    }
}

fn run_suite(suite: Suite, mut config: RunConfig, out: &Output) -> Result<bool, Failure> {
    match suite {
        Suite::Crc2d {
            n,
            g,
            max_degree,
            route,
        } => {
            validate_n(n)?;
            validate_degree(max_degree)?;
            config.command = "verify crc2d".into();
            (config.n, config.g, config.max_degree, config.route) =
                (Some(n), Some(g), Some(max_degree), Some(route));
            let routes = match route {
                Route::All => RouteSelection::All,
                Route::Kernel => RouteSelection::Kernel,
                Route::Closed => RouteSelection::Closed,
                Route::Resolution => RouteSelection::Resolution,
            };
            let r = crc2d::verify_crc2d(n, g, max_degree, routes)?;
            let ok = r.failed.is_empty() && r.change_of_variables_inverse && r.matrix_identity;
            out.report(&config, ok, &r)?;
            Ok(ok)
        }
        Suite::Crc3d {
            n,
            gmax,
            max_degree,
        } => {
            validate_n(n)?;
            validate_degree(max_degree)?;
            config.command = "verify crc3d".into();
            (config.n, config.gmax, config.max_degree) = (Some(n), Some(gmax), Some(max_degree));
            let r = crc3d::verify_crc3d(n, gmax, max_degree)?;
            let ok = r.failed.is_empty() && r.all_rational;
            out.report(&config, ok, &r)?;
            Ok(ok)
        }
        Suite::Vertex {
            n,
            q_order,
            q_degree,
        } => {
            validate_n(n)?;
            config.command = "verify vertex".into();
            (config.n, config.q_order, config.q_degree) = (Some(n), Some(q_order), Some(q_degree));
            let r = crc3d::verify_vertex_product(n, q_degree, q_order);
            let ok = r.failed.is_empty();
            out.report(&config, ok, &r)?;
            Ok(ok)
        }
        Suite::Chern { max_rank_sum } => {
            config.command = "verify chern".into();
            config.max_rank_sum = Some(max_rank_sum);
            let r = suites::chern_suite(max_rank_sum);
            out.report(&config, r.ok(), &r)?;
            Ok(r.ok())
        }
        Suite::Identities => {
            config.command = "verify identities".into();
            let r = suites::identities_suite(config.seed);
            out.report(&config, r.ok(), &r)?;
            Ok(r.ok())
        }
        Suite::Brackets => {
            config.command = "verify brackets".into();
            let r = suites::brackets_suite();
            out.report(&config, r.ok(), &r)?;
            Ok(r.ok())
        }
    }
}

fn attach_cache() {
    let Some(dir) = std::env::var_os("CREPANT_CACHE_DIR") else {
        return;
    };
    match tau::attach_cache_dir(std::path::Path::new(&dir)) {
        Ok(tau::CacheLoad::Discarded) => {
            eprintln!("warning: corrupt tau cache discarded");
        }
        Ok(_) => {}
        Err(e) => eprintln!("warning: tau cache unavailable: {e}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    attach_cache();
    let result = run(cli);
    if std::env::var_os("CREPANT_CACHE_DIR").is_some() {
        if let Err(e) = tau::flush_cache() {
            eprintln!("warning: could not write tau cache: {e}");
        }
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
