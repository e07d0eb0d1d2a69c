use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use bott_core::oracle::DEFAULT_SEED;
use bott_core::serde_int;
use bott_core::{
    build_tower, is_ample, is_nef, run_campaign, seshadri_at_with, seshadri_inf_with, seshadri_sup_with,
    strata_report, strata_report_with, BottNumbers, BottTower, CampaignConfig, CoxPoint, DivisorClass, Error, Hypotheses,
    Side, TowerSpec,
};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

/// Seshadri constants of nef line bundles on Bott towers.
#[derive(Parser)]
#[command(name = "bott", version)]
struct Cli {
    /// Emit JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rays and cone/wall counts of the fan.
    Info {
        #[command(flatten)]
        tower: TowerArgs,
    },
    /// Whether a divisor class is nef and ample.
    Nef {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Seshadri constant at one point.
    Seshadri {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        bundle: BundleArgs,
        /// Point as `[z1:w1:...:zn:wn]`; entries are rationals or `*` (nonzero).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Value on every stratum Gamma^(i) minus Gamma^(i-1).
    Strata {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Infimum over all points, with a point attaining it.
    Inf {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Supremum over all points, with a point attaining it.
    Sup {
        #[command(flatten)]
        tower: TowerArgs,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Randomized cross-check of the formula against the fixed-point oracle.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TowerArgs {
    /// Tower file: `{"n": 3, "bott_numbers": [[c12, c13], [c23]]}`.
    #[arg(long, value_name = "FILE", conflicts_with = "c")]
    tower: Option<PathBuf>,

    /// Inline Bott numbers, rows separated by `;`, e.g. `1,2;3`.
    #[arg(long, value_name = "ROWS", allow_hyphen_values = true)]
    c: Option<String>,

    /// Tower height; without --tower or --c all Bott numbers are 1.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct BundleArgs {
    /// Coefficients a_1,..,a_n of L = a_1 D_1 + .. + a_n D_n.
    #[arg(long, allow_hyphen_values = true)]
    bundle: String,

    /// Evaluate outside the positivity and nef hypotheses.
    #[arg(long)]
    formal: bool,
}

impl BundleArgs {
    fn mode(&self) -> Hypotheses {
        if self.formal {
            Hypotheses::Formal
        } else {
            Hypotheses::Enforce
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Fixed tower height; otherwise each trial draws n from 1..=max-n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Bott numbers are drawn from 1..=max-bott.
    #[arg(long, default_value_t = 9)]
    max_bott: u32,
    /// Bundle coefficients are drawn from 0..=max-coeff.
    #[arg(long, default_value_t = 99)]
    max_coeff: u32,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind(), message: e.to_string() }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct RayInfo {
    label: String,
    stage: usize,
    side: Side,
    #[serde(with = "serde_int::seq")]
    vector: Vec<BigInt>,
}

#[derive(Serialize)]
struct InfoReport {
    n: usize,
    #[serde(with = "serde_int::rows")]
    bott_numbers: Vec<Vec<BigInt>>,
    rays: Vec<RayInfo>,
    maximal_cones: u64,
    walls: u64,
}

#[derive(Serialize)]
struct NefReport {
    bundle: DivisorClass,
    nef: bool,
    ample: bool,
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<BigInt>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad integer {:?} in {what}", t.trim())).into())
        })
        .collect()
}

fn parse_bundle(s: &str) -> Result<DivisorClass, Failure> {
    Ok(DivisorClass::new(parse_ints(s, "bundle")?))
}

fn parse_rows(s: &str) -> Result<Vec<Vec<BigInt>>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|row| parse_ints(row, "--c")).collect()
}

fn usage_error(msg: impl Display) -> ! {
    Cli::command().error(ErrorKind::MissingRequiredArgument, msg).exit()
}

fn load_tower(args: &TowerArgs, bundle_len: Option<usize>) -> Result<BottTower, Failure> {
    let numbers = if let Some(path) = &args.tower {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure { kind: "Io", message: format!("{}: {e}", path.display()) })?;
        let spec: TowerSpec = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        BottNumbers::try_from(spec)?
    } else if let Some(c) = &args.c {
        let rows = parse_rows(c)?;
        BottNumbers::from_rows(rows.len() + 1, rows)?
    } else {
        let n = args
            .n
            .or(bundle_len)
            .unwrap_or_else(|| usage_error("no tower given; pass --tower, --c or --n"));
        BottNumbers::constant(n, 1)?
    };
    if let Some(n) = args.n {
        if n != numbers.dimension() {
            return Err(Error::LengthMismatch { expected: numbers.dimension(), actual: n }.into());
        }
    }
    Ok(build_tower(numbers)?)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn formal_note(formal: bool) -> &'static str {
    if formal {
        "  [formal: hypotheses not satisfied]"
    } else {
        ""
    }
}

fn info(t: &BottTower, as_json: bool) -> String {
    let n = t.dimension();
    let report = InfoReport {
        n,
        bott_numbers: t.bott_numbers().rows().to_vec(),
        rays: t
            .rays()
            .iter()
            .map(|r| RayInfo {
                label: format!("v{}", r.id.number(n)),
                stage: r.id.stage + 1,
                side: r.id.side,
                vector: r.vector.clone(),
            })
            .collect(),
        maximal_cones: t.maximal_cone_count(),
        walls: t.wall_count(),
    };
    if as_json {
        return json(&report);
    }
    let mut out = format!("Bott tower of height {n}\n");
    for (k, row) in report.bott_numbers.iter().enumerate() {
        out += &format!("  c({},{}..{}) = {}\n", k + 1, k + 2, n, join(row));
    }
    out += "rays:\n";
    for r in &report.rays {
        out += &format!("  {} = ({})\n", r.label, join(&r.vector));
    }
    out += &format!("maximal cones: {}\nwalls: {}", report.maximal_cones, report.walls);
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    let as_json = cli.json;
    Ok(match cli.command {
        Command::Info { tower } => info(&load_tower(&tower, None)?, as_json),
        Command::Nef { tower, bundle } => {
            let l = parse_bundle(&bundle.bundle)?;
            let t = load_tower(&tower, Some(l.len()))?;
            let report = NefReport { nef: is_nef(&t, &l)?, ample: is_ample(&t, &l)?, bundle: l };
            if as_json {
                json(&report)
            } else {
                format!("L = {}: nef {}, ample {}", report.bundle, report.nef, report.ample)
            }
        }
        Command::Seshadri { tower, bundle, point } => {
            let l = parse_bundle(&bundle.bundle)?;
            let x: CoxPoint = point.parse()?;
            let t = load_tower(&tower, Some(l.len()))?;
            let r = seshadri_at_with(&t, &l, &x, bundle.mode())?;
            if as_json {
                json(&r)
            } else {
                format!(
                    "epsilon(L, x) = {}  (L = {l}, x = {x}, gamma index {}, attained by a_{}){}",
                    r.value,
                    r.gamma_index,
                    r.witness_index,
                    formal_note(r.formal)
                )
            }
        }
        Command::Strata { tower, bundle } => {
            let l = parse_bundle(&bundle.bundle)?;
            let t = load_tower(&tower, Some(l.len()))?;
            let rows = strata_report_with(&t, &l, bundle.mode())?;
            let formal = bundle.formal && strata_report(&t, &l).is_err();
            if as_json {
                json(&rows)
            } else {
                let mut out = format!("L = {l}{}\nstratum  epsilon  witness\n", formal_note(formal));
                for s in &rows {
                    out += &format!("{:>7}  {:>7}  a_{}\n", s.stratum, s.value, s.witness_index);
                }
                out += &format!("table: [{}]", join(rows.iter().map(|s| &s.value)));
                out
            }
        }
        Command::Inf { tower, bundle } => global("inf", &tower, &bundle, as_json, seshadri_inf_with)?,
        Command::Sup { tower, bundle } => global("sup", &tower, &bundle, as_json, seshadri_sup_with)?,
        Command::Verify(v) => return verify(v, as_json),
    })
}

fn global(
    name: &str,
    tower: &TowerArgs,
    bundle: &BundleArgs,
    as_json: bool,
    f: fn(&BottTower, &DivisorClass, Hypotheses) -> bott_core::Result<bott_core::GlobalValue>,
) -> Result<String, Failure> {
    let l = parse_bundle(&bundle.bundle)?;
    let t = load_tower(tower, Some(l.len()))?;
    let g = f(&t, &l, bundle.mode())?;
    Ok(if as_json {
        json(&g)
    } else {
        format!(
            "{name} epsilon(L, x) = {}  (L = {l}, attained at {}, gamma index {}){}",
            g.value,
            g.witness_point,
            g.gamma_index,
            formal_note(g.formal)
        )
    })
}

fn verify(v: VerifyArgs, as_json: bool) -> Result<String, Failure> {
    let config = CampaignConfig {
        n: v.n,
        max_n: v.max_n,
        trials: v.trials,
        seed: v.seed,
        max_bott: v.max_bott,
        max_coeff: v.max_coeff,
    };
    let report = run_campaign(&config)?;
    let out = if as_json {
        json(&report)
    } else {
        let dims = match v.n {
            Some(n) => format!("n = {n}"),
            None => format!("n <= {}", v.max_n),
        };
        format!(
            "{} trials ({dims}, seed {}): {} fixed points, {} discrepancies; {} walls, {} bound violations",
            config.trials,
            config.seed,
            report.fixed_points_checked,
            report.discrepancies,
            report.walls_checked,
            report.bound_violations
        )
    };
    if report.discrepancies > 0 || report.bound_violations > 0 {
        println!("{out}");
        return Err(Failure {
            kind: if report.discrepancies > 0 { "DiscrepancyFound" } else { "BoundViolated" },
            message: format!(
                "{} discrepancies, {} bound violations",
                report.discrepancies, report.bound_violations
            ),
        });
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if as_json {
                let doc = ErrorDoc { error: ErrorBody { kind: f.kind, message: &f.message } };
                println!("{}", json(&doc));
            } else {
                eprintln!("error [{}]: {}", f.kind, f.message);
            }
            ExitCode::from(1)
        }
    }
}
