//! `capdisc`: command-line front end. Every command prints one JSON document
//! with an embedded `manifest`; everything outside the manifest is
//! deterministic in the flags.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use capdisc::admissibility::{gamma_delta, gegenbadly, jacobadly_condition, space_residue, Frac, Lambda};
use capdisc::oracle::mc_discrepancy;
use capdisc::pointsets::{generate, read_points, Generator, PointSet};
use capdisc::specfun::{spectrum, JacobiParams};
use capdisc::spectral::{discrepancy_l2, Radius, SeriesOptions};
use capdisc::studies::{jacobadly_scan, parse_n_list, prime_scan, rate_study};
use capdisc::{Error, RadiusPQ, Space};

#[derive(Parser)]
#[command(
    name = "capdisc",
    version,
    about = "L² ball discrepancy on two-point homogeneous spaces"
)]
struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true, env = "CAPDISC_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Space parameters and spectrum.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Radius admissibility.
    #[command(subcommand)]
    Radius(RadiusCmd),
    /// Discrepancy of a points file.
    #[command(subcommand)]
    Disc(DiscCmd),
    /// Rate studies and the prime-radius scan.
    #[command(subcommand)]
    Study(StudyCmd),
    /// Jacobi polynomial scans.
    #[command(subcommand)]
    Jacobi(JacobiCmd),
    /// Point set generation.
    #[command(subcommand)]
    Points(PointsCmd),
}

#[derive(Subcommand)]
enum SpaceCmd {
    Info {
        space: Space,
        /// Highest degree listed.
        #[arg(long, default_value_t = 20)]
        mmax: usize,
        /// Plain-text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand)]
enum RadiusCmd {
    /// Tests r = pπ/q. By default the space test; `--alpha/--beta` or
    /// `--gegenbauer` switch to the Jacobi or Gegenbauer form.
    Check {
        space: Space,
        radius: RadiusPQ,
        #[arg(long, requires = "beta", conflicts_with = "gegenbauer")]
        alpha: Option<Frac>,
        #[arg(long, requires = "alpha")]
        beta: Option<Frac>,
        /// A fraction, or `irrational`.
        #[arg(long)]
        gegenbauer: Option<String>,
    },
}

#[derive(Args)]
struct Output {
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DiscCmd {
    /// Spectral series value.
    Compute {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius: RadiusPQ,
        /// Truncation degree (default: automatic).
        #[arg(long = "L")]
        truncation: Option<usize>,
        /// Include per-degree terms.
        #[arg(long)]
        terms: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo estimate over ball centers.
    Oracle {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius_real: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum StudyCmd {
    /// Decay of the discrepancy with N and its fitted exponent.
    Rate {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        generator: Generator,
        #[arg(long)]
        radius: RadiusPQ,
        /// `lo:hi:xk`, `lo:hi:+k`, or a comma list.
        #[arg(long = "Ns")]
        ns: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random sets averaged per N.
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        /// Also write the rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Discrepancy at the first ⌈c_H log N / log log N⌉ prime radii.
    PrimeScan {
        #[arg(long)]
        space: Space,
        /// Points file; otherwise `--n` uniform points from `--seed`.
        #[arg(long, conflicts_with = "n")]
        points: Option<PathBuf>,
        #[arg(long, required_unless_present = "points")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/3")]
        margin: Frac,
        #[arg(long = "c-h", default_value_t = 3.0)]
        c_h: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum JacobiCmd {
    /// `min m^{1/2} |P_m^{(α,β)}(cos pπ/q)|` over a degree range.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        radius: RadiusPQ,
        #[arg(long, default_value_t = 2)]
        mmin: usize,
        #[arg(long)]
        mmax: usize,
    },
}

#[derive(Subcommand)]
enum PointsCmd {
    Generate {
        #[arg(long)]
        space: Space,
        #[arg(long)]
        kind: Generator,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap radius for `cap_cluster` (default π/10).
        #[arg(long)]
        cap_radius: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    command_line: Vec<String>,
    seeds: Vec<u64>,
    space: Option<Space>,
    started_unix: f64,
    finished_unix: f64,
    elapsed_seconds: f64,
}

struct Run {
    started: SystemTime,
    clock: Instant,
    seeds: Vec<u64>,
    space: Option<Space>,
}

impl Run {
    fn manifest(&self) -> Manifest {
        let unix = |t: SystemTime| t.duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command_line: std::env::args().collect(),
            seeds: self.seeds.clone(),
            space: self.space,
            started_unix: unix(self.started),
            finished_unix: unix(SystemTime::now()),
            elapsed_seconds: self.clock.elapsed().as_secs_f64(),
        }
    }

    /// Adds the manifest and prints or writes the document.
    fn emit(&self, body: impl Serialize, out: Option<&Path>) -> Result<(), Error> {
        let mut doc = serde_json::to_value(body).map_err(|e| Error::Parse(e.to_string()))?;
        if let Value::Object(map) = &mut doc {
            map.insert("manifest".into(), serde_json::to_value(self.manifest()).unwrap());
        }
        let text = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        match out {
            Some(path) => write_file(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(space: Space, path: &Path) -> Result<PointSet, Error> {
    let set = read_points(path)?;
    if set.space() != space {
        return Err(Error::Dimension(format!(
            "{} holds points on {}, not {space}",
            path.display(),
            set.space()
        )));
    }
    Ok(set)
}

fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    let mut run = Run {
        started: SystemTime::now(),
        clock: Instant::now(),
        seeds: Vec::new(),
        space: None,
    };
    match cmd {
        Command::Space(SpaceCmd::Info { space, mmax, table }) => {
            run.space = Some(space);
            let p = space.params();
            if table {
                println!("{space}: d={} d0={} n={} a={} b={}", p.d, p.d0, p.n, p.a(), p.b());
                if !space.supports_points() {
                    println!("point ops unsupported: parameters only");
                }
                println!("{:>4} {:>14} {:>22}", "m", "lambda_m", "d_m");
                for e in spectrum(&space, mmax) {
                    println!("{:>4} {:>14} {:>22}", e.m, e.eigenvalue, e.dim);
                }
                return Ok(());
            }
            let mut body = json!({
                "space": space,
                "params": { "d": p.d, "d0": p.d0, "n": p.n, "a": p.a(), "b": p.b() },
                "supports_points": space.supports_points(),
                "spectrum": spectrum(&space, mmax),
            });
            if !space.supports_points() {
                body["note"] = json!("point ops unsupported: parameters only");
            }
            run.emit(body, None)
        }
        Command::Radius(RadiusCmd::Check {
            space,
            radius,
            alpha,
            beta,
            gegenbauer,
        }) => {
            run.space = Some(space);
            let body = match (alpha.zip(beta), gegenbauer) {
                (Some((alpha, beta)), _) => {
                    let (gamma, delta) = gamma_delta(alpha, beta)?;
                    json!({
                        "space": space, "radius": radius, "test": "jacobi",
                        "alpha": alpha.to_string(), "beta": beta.to_string(),
                        "gamma": gamma.to_string(), "delta": delta.to_string(),
                        "admissible": jacobadly_condition(gamma, delta, radius)?,
                    })
                }
                (None, Some(l)) => {
                    let lambda = if l == "irrational" {
                        Lambda::Irrational
                    } else {
                        Lambda::Rational(l.parse()?)
                    };
                    json!({
                        "space": space, "radius": radius, "test": "gegenbauer", "lambda": l,
                        "admissible": gegenbadly(lambda, radius)?,
                    })
                }
                (None, None) => {
                    let residue = space_residue(&space, radius)?;
                    json!({
                        "space": space, "radius": radius, "test": "space",
                        "residue_mod_4": residue, "admissible": residue != 0,
                    })
                }
            };
            run.emit(body, None)
        }
        Command::Disc(DiscCmd::Compute {
            space,
            points,
            radius,
            truncation,
            terms,
            output,
        }) => {
            run.space = Some(space);
            let set = load(space, &points)?;
            run.seeds.extend(set.provenance().and_then(|p| p.seed));
            let opts = SeriesOptions {
                truncation,
                keep_terms: terms,
                ..Default::default()
            };
            let report = discrepancy_l2(&set, Radius::Exact(radius), &opts)?;
            run.emit(report, output.out.as_deref())
        }
        Command::Disc(DiscCmd::Oracle {
            space,
            points,
            radius_real,
            samples,
            seed,
            output,
        }) => {
            run.space = Some(space);
            run.seeds.push(seed);
            let set = load(space, &points)?;
            let est = mc_discrepancy(&set, radius_real, samples, seed)?;
            let body = json!({
                "space": space, "radius": Radius::real(radius_real), "n_points": set.len(),
                "estimate": est.estimate, "stderr": est.stderr, "samples": est.samples, "seed": est.seed,
            });
            run.emit(body, output.out.as_deref())
        }
        Command::Study(StudyCmd::Rate {
            space,
            generator,
            radius,
            ns,
            seed,
            replicates,
            csv,
            output,
        }) => {
            run.space = Some(space);
            run.seeds.push(seed);
            let ns = parse_n_list(&ns)?;
            let res = rate_study(space, generator, radius, &ns, seed, replicates)?;
            warn(&res.warnings);
            if let Some(path) = csv {
                write_file(&path, &res.to_csv()?)?;
            }
            run.emit(res, output.out.as_deref())
        }
        Command::Study(StudyCmd::PrimeScan {
            space,
            points,
            n,
            seed,
            margin,
            c_h,
            output,
        }) => {
            run.space = Some(space);
            let set = match points {
                Some(path) => load(space, &path)?,
                None => {
                    run.seeds.push(seed);
                    generate(space, Generator::Uniform, n.expect("required by clap"), seed)?
                }
            };
            let res = prime_scan(&set, margin.to_f64(), c_h)?;
            warn(&res.warnings);
            run.emit(res, output.out.as_deref())
        }
        Command::Jacobi(JacobiCmd::Scan {
            alpha,
            beta,
            radius,
            mmin,
            mmax,
        }) => {
            let params = JacobiParams::new(alpha, beta)?;
            let scan = jacobadly_scan(params, radius, mmin, mmax)?;
            let body = json!({
                "alpha": alpha, "beta": beta, "radius": radius, "mmin": mmin, "mmax": mmax,
                "min_scaled": scan.min_scaled, "argmin": scan.argmin, "max_scaled": scan.max_scaled,
            });
            run.emit(body, None)
        }
        Command::Points(PointsCmd::Generate {
            space,
            kind,
            n,
            seed,
            cap_radius,
            out,
        }) => {
            run.space = Some(space);
            run.seeds.push(seed);
            let kind = match (kind, cap_radius) {
                (Generator::CapCluster { .. }, Some(r)) => Generator::CapCluster { cap_radius: r },
                (_, Some(_)) => return Err(Error::Domain("--cap-radius applies to cap_cluster only".into())),
                (k, None) => k,
            };
            let set = generate(space, kind, n, seed)?;
            let body: Value = serde_json::from_str(&set.to_json()?).map_err(|e| Error::Parse(e.to_string()))?;
            run.emit(body, Some(&out))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 4,
        Error::NumericOverflow(_) | Error::Numeric(_) | Error::Convergence { .. } => 3,
        Error::Overflow(_)
        | Error::Domain(_)
        | Error::UnsupportedSpace(_)
        | Error::Dimension(_)
        | Error::Weights(_)
        | Error::Parse(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
