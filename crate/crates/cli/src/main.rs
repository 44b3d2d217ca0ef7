use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fano14_core::correspondences::{
    b_line_to_x_line, check_x_line, x_conic_to_y_line, x_line_to_b_line, y_line_to_x_conic, XConic,
};
use fano14_core::exterior::{
    classify_plane_section, decompose, GrassLine, PlaneSectionClass, Side, TwoTensor,
};
use fano14_core::fano_pair::{build_threefold, BuildOptions, ThreefoldPair};
use fano14_core::linalg::{Field, LinSubspace};
use fano14_core::pencils::{classify_pencil, Pencil};
use fano14_core::pipeline::{run_pipeline, PipelineOptions};
use fano14_core::projection::{make_context, project, restrict_to_x, segre_context};
use fano14_core::scan::{
    interpolate_w, lift, scan_sextic, scan_w_and_x, scan_y, ScanOptions, ScanReport,
};
use fano14_core::verify::{verify, Suite, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "fano14",
    version,
    about = "Genus-8 Fano threefolds, their orthogonal cubics, and exhaustive checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the pseudorandom construction.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// "q" or "fp:P".
    #[arg(long, global = true)]
    field: Option<String>,
    /// Shorthand for --field fp:P.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Scan workers; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a pair (X, Y) from the seed.
    Build,
    /// Classify a pencil of skew forms.
    ClassifyPencil {
        #[arg(long)]
        pencil: PathBuf,
    },
    /// Apply one of the line/conic correspondences.
    Correspond {
        #[arg(long, value_enum)]
        from: From,
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Project points through the construction attached to an A-line.
    Project {
        #[arg(long)]
        line: PathBuf,
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, conflicts_with = "scan_x")]
        point: Option<PathBuf>,
        #[arg(long)]
        scan_x: bool,
    },
    /// Enumerate points over a prime field.
    Scan {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        pair: Option<PathBuf>,
        /// A-line fixing the splitting for --what sextic.
        #[arg(long)]
        line: Option<PathBuf>,
        /// Write the sorted inventory here.
        #[arg(long)]
        inventory: Option<PathBuf>,
    },
    /// Run a check suite; exits non-zero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Seed to linked report: scans, correspondences, splitting, projection.
    Pipeline,
}

#[derive(Clone, Copy, ValueEnum)]
enum From {
    XLine,
    BLine,
    XConic,
    YLine,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    X,
    Y,
    W,
    Gammaw,
    Sextic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn field(cli: &Cli) -> Result<Field> {
    match (&cli.field, cli.p) {
        (Some(_), Some(_)) => bail!("give either --field or --p"),
        (Some(s), None) => Ok(s.parse()?),
        (None, Some(p)) => Ok(Field::prime(p)?),
        (None, None) => Ok(Field::prime(11)?),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(cli: &Cli, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// A pair file may be a bare pair or the output of `build`.
fn read_pair(path: &Path) -> Result<ThreefoldPair> {
    let v = read_json(path)?;
    let v = v.get("pair").cloned().unwrap_or(v);
    Ok(ThreefoldPair::from_json(&v)?)
}

fn pair_or_build(cli: &Cli, path: Option<&Path>) -> Result<ThreefoldPair> {
    match path {
        Some(p) => read_pair(p),
        None => Ok(build_threefold(cli.seed, field(cli)?, &BuildOptions::default())?.pair),
    }
}

fn read_pencil(path: &Path, f: Field) -> Result<Pencil> {
    let v = read_json(path)?;
    Ok(Pencil::from_json(f, &v)?)
}

fn subspace_at(v: &Value, key: &str, f: Field) -> Result<LinSubspace> {
    let s = v
        .get(key)
        .with_context(|| format!("payload needs {key:?}"))?;
    Ok(LinSubspace::from_json(f, s)?)
}

fn run(cli: &Cli) -> Result<bool> {
    let workers = cli.workers;
    let sopts = ScanOptions { workers };
    match &cli.command {
        Command::Build => {
            let built = build_threefold(cli.seed, field(cli)?, &BuildOptions::default())?;
            emit(
                cli,
                &json!({
                    "requested_seed": built.requested_seed,
                    "reseeds": built.reseeds,
                    "certificate": {
                        "exhaustive": built.certificate.exhaustive,
                        "tested": built.certificate.tested,
                    },
                    "pair": built.pair.to_json(),
                }),
            )?;
        }
        Command::ClassifyPencil { pencil } => {
            let l = read_pencil(pencil, field(cli)?)?;
            emit(cli, &classify_pencil(&l)?.to_json())?;
        }
        Command::Correspond { from, pair, input } => {
            let pair = read_pair(pair)?;
            let f = pair.field();
            let payload = read_json(input)?;
            let mut checks = Vec::new();
            let out = match from {
                From::XLine => {
                    let line =
                        GrassLine::from_pencil(Side::V, &subspace_at(&payload, "pencil", f)?)?;
                    check_x_line(&pair, &line)?;
                    let b = x_line_to_b_line(&pair, &line)?;
                    checks.push(("class B", true));
                    checks.push(("round trip", b_line_to_x_line(&pair, &b)? == line));
                    json!({ "b_line": b.to_json() })
                }
                From::BLine => {
                    let l = Pencil::from_json(f, &payload)?;
                    let line = b_line_to_x_line(&pair, &l)?;
                    checks.push((
                        "round trip",
                        x_line_to_b_line(&pair, &line)?.span() == l.span(),
                    ));
                    json!({ "x_line": line.to_json() })
                }
                From::XConic => {
                    let envelope = subspace_at(&payload, "envelope", f)?;
                    let conic = match classify_plane_section(&subspace_at(&payload, "plane", f)?)? {
                        PlaneSectionClass::Conic(c) => c,
                        other => bail!("plane section is {}, not a conic", other.tag()),
                    };
                    let q = XConic { envelope, conic };
                    let l = x_conic_to_y_line(&pair, &q)?;
                    checks.push(("round trip", y_line_to_x_conic(&pair, &l)? == q));
                    json!({ "y_line": l.to_json(), "class": classify_pencil(&l)?.to_json() })
                }
                From::YLine => {
                    let l = Pencil::from_json(f, &payload)?;
                    let q = y_line_to_x_conic(&pair, &l)?;
                    checks.push(("plane inside W10", q.conic.plane.is_subspace_of(pair.w10())));
                    checks.push((
                        "round trip",
                        x_conic_to_y_line(&pair, &q)?.span() == l.span(),
                    ));
                    json!({ "x_conic": q.to_json() })
                }
            };
            let passed = checks.iter().all(|c| c.1);
            let mut out = out;
            out["checks"] = checks
                .iter()
                .map(|(n, ok)| json!({"name": n, "passed": ok}))
                .collect();
            out["passed"] = json!(passed);
            emit(cli, &out)?;
            return Ok(passed);
        }
        Command::Project {
            line,
            pair,
            point,
            scan_x,
        } => {
            let pair = pair.as_deref().map(read_pair).transpose()?;
            let f = match &pair {
                Some(pr) => pr.field(),
                None => field(cli)?,
            };
            let l = read_pencil(line, f)?;
            let ctx = make_context(&l)?;
            if let Some(path) = point {
                let w = TwoTensor::from_json(f, &read_json(path)?)?;
                let pt = match &pair {
                    Some(pr) => restrict_to_x(&ctx, pr, &decompose(&w)?)?,
                    None => project(&ctx, &w)?,
                };
                emit(cli, &pt.to_json())?;
            } else if *scan_x {
                let pr = pair.as_ref().context("--scan-x needs --pair")?;
                let wx = scan_w_and_x(pr, &sopts)?;
                let mut pts = Vec::new();
                for t in &wx.x_points {
                    let q = decompose(&TwoTensor::new(Side::V, lift(f, t))?)?;
                    pts.push(restrict_to_x(&ctx, pr, &q)?.to_json());
                }
                let (a, b) = segre_context(&ctx)?;
                emit(
                    cli,
                    &json!({ "context": ctx.to_json(), "segre": {"A": a.to_json(), "B": b.to_json()}, "points": pts }),
                )?;
            } else {
                emit(cli, &ctx.to_json())?;
            }
        }
        Command::Scan {
            what,
            pair,
            line,
            inventory,
        } => {
            let pair = pair_or_build(cli, pair.as_deref())?;
            if pair.field().modulus().is_none() {
                bail!("scans need a prime field");
            }
            let report: ScanReport = match what {
                What::Y => scan_y(&pair, &sopts)?.report,
                What::Sextic => {
                    let path = line.as_deref().context("--what sextic needs --line")?;
                    let ctx = make_context(&read_pencil(path, pair.field())?)?;
                    let (a, b) = segre_context(&ctx)?;
                    scan_sextic(&pair, &a, &b, &sopts)?
                }
                What::X | What::W | What::Gammaw => {
                    let wx = scan_w_and_x(&pair, &sopts)?;
                    if matches!(what, What::W) {
                        let q = interpolate_w(&pair, &wx, 400, &sopts)?;
                        let mut r = wx.w.clone();
                        if !q.passed() {
                            r.flags.push("quartic interpolation failed".into());
                        }
                        r
                    } else if matches!(what, What::X) {
                        wx.x
                    } else {
                        wx.gamma_w
                    }
                }
            };
            if let Some(path) = inventory {
                let inv = json!(report.inventory.clone().unwrap_or_default());
                std::fs::write(path, serde_json::to_string(&inv)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(cli, &report.without_inventory().to_json())?;
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig {
                seed: cli.seed,
                field: field(cli)?,
                workers,
            };
            let r = verify(suite, &cfg);
            emit(cli, &r.to_json())?;
            return Ok(r.passed());
        }
        Command::Pipeline => {
            let opts = PipelineOptions {
                workers,
                ..PipelineOptions::default()
            };
            let run = run_pipeline(cli.seed, field(cli)?, &opts)?;
            emit(cli, &run.report)?;
        }
    }
    Ok(true)
}
