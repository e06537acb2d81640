//! `exp-metrics`: batch runs of the dimension and entropy estimators.
//!
//! Exit codes: 0 when every requested check passes, 1 when a relation
//! fails, 2 on bad usage or a violated hypothesis.

mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expmetrics::cylinder::RadiusLadder;
use expmetrics::estimate::{self, NmRange, OneSidedConfig, SlopeEstimate};
use expmetrics::measure::Measure;
use expmetrics::metric::{self, FiniteSample, MetricParams, Mode};
use expmetrics::relations::{self, Bundle, BundleConfig, Given, RelationReport, Tolerances};
use expmetrics::shift::ShiftSpace;
use expmetrics::Error;
use serde_json::{json, Value};

use inputs::MeasureSpec;
use report::{Format, Report, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read or write {0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::NoSolution(_)) => 1,
            CliError::Io(..) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "exp-metrics", version, about = "Dimension and entropy estimates for shifts with expanding metrics")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// `full:M` or `sft:PATH`.
    #[arg(long, global = true, default_value = "full:2")]
    space: String,
    #[arg(long, global = true, default_value_t = 1.3)]
    a: f64,
    #[arg(long, global = true, default_value_t = 1.3)]
    b: f64,
    /// `two-sided` or `one-sided`.
    #[arg(long, global = true, default_value = "two-sided")]
    mode: String,
    #[arg(long, global = true, default_value_t = 0.5)]
    epsilon: f64,
    /// Measure JSON file, or inline JSON.
    #[arg(long, global = true)]
    measure: Option<String>,
    #[arg(long, global = true, default_value_t = estimate::DEFAULT_HORIZON)]
    horizon: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Typical points averaged by measure estimators.
    #[arg(long, global = true, default_value_t = estimate::DEFAULT_POINTS)]
    points: usize,
    /// Ladder radii `theta^j` for `j = j_min..=j_max`.
    #[arg(long, global = true, default_value_t = 8)]
    j_min: u32,
    #[arg(long, global = true, default_value_t = 40)]
    j_max: u32,
    #[arg(long, global = true, default_value_t = 0.5)]
    theta: f64,
    /// Window sizes `n + m = s_min, s_min + s_step, …, <= s_max`.
    #[arg(long, global = true)]
    s_min: Option<u64>,
    #[arg(long, global = true)]
    s_max: Option<u64>,
    #[arg(long, global = true)]
    s_step: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_exact: Option<f64>,
    #[arg(long, global = true)]
    tol_counts: Option<f64>,
    #[arg(long, global = true)]
    tol_mc: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Box dimension; with --measure also the averaged pointwise dimension.
    Dim,
    /// Topological entropy from minimal spanning sets.
    Entropy {
        #[arg(long, default_value_t = estimate::DEFAULT_R1)]
        r1: f64,
    },
    /// Katok entropy from minimal covers of mass 1 - delta.
    Katok {
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = estimate::DEFAULT_R1)]
        r1: f64,
    },
    /// Brin-Katok local entropy.
    BrinKatok {
        #[arg(long, default_value_t = estimate::DEFAULT_R1)]
        r1: f64,
        /// Use one typical point instead of the ensemble.
        #[arg(long)]
        single: bool,
    },
    /// Neutralized entropies at radius e^{-(n+m) r}.
    Neutralized {
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Compute even when r >= 3/k, marking the estimate.
        #[arg(long)]
        allow_outside: bool,
    },
    /// Entropies of balls with radius decaying like e^{-|i| alpha}.
    Estimation {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = estimate::DEFAULT_R3)]
        r3: f64,
        #[arg(long, default_value_t = estimate::DEFAULT_R1)]
        r1: f64,
    },
    /// Checks the adapted metric's expansion, Lipschitz and sandwich bounds.
    MetricVerify {
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value_t = 60)]
        max_agree: u64,
    },
    /// Chain metric of a finite sample with the D <= rho <= 4D check.
    Frink {
        /// JSON matrix; without it a symbolic sample of --points points is used.
        #[arg(long)]
        dissimilarity: Option<String>,
    },
    /// Runs the estimator bundle and checks every identity.
    Relations {
        #[arg(long, default_value_t = 0.05)]
        r: f64,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// Solves r + 1/k = 1/k_alpha for the missing one of r, alpha.
    #[command(name = "solve-5-23")]
    Solve {
        #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
        r: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
    },
}

struct Ctx {
    c: Common,
    space: ShiftSpace,
    params: MetricParams,
    measure_spec: Option<MeasureSpec>,
    measure: Option<Measure>,
    tol: Tolerances,
}

impl Ctx {
    fn new(c: Common) -> Result<Self, CliError> {
        let mode: Mode = c.mode.parse()?;
        let space = inputs::parse_space(&c.space)?;
        let params = MetricParams::with(c.a, c.b, c.epsilon, mode)?;
        let measure_spec = c.measure.as_deref().map(MeasureSpec::load).transpose()?;
        let measure = measure_spec.as_ref().map(|m| m.build(&space)).transpose()?;
        let d = Tolerances::default();
        let tol = Tolerances {
            exact: c.tol_exact.unwrap_or(d.exact),
            counts: c.tol_counts.unwrap_or(d.counts),
            monte_carlo: c.tol_mc.unwrap_or(d.monte_carlo),
        };
        Ok(Self { c, space, params, measure_spec, measure, tol })
    }

    fn mu(&self, what: &str) -> Result<&Measure, CliError> {
        self.measure
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{what} needs --measure")))
    }

    fn ladder(&self) -> Result<RadiusLadder, CliError> {
        Ok(RadiusLadder::geometric(self.c.theta, self.c.j_min, self.c.j_max)?)
    }

    fn range_bounds(&self, default: (u64, u64, u64)) -> (u64, u64, u64) {
        (
            self.c.s_min.unwrap_or(default.0),
            self.c.s_max.unwrap_or(default.1),
            self.c.s_step.unwrap_or(default.2),
        )
    }

    fn range(&self, default: (u64, u64, u64)) -> Result<NmRange, CliError> {
        let (lo, hi, step) = self.range_bounds(default);
        Ok(match self.params.mode {
            Mode::TwoSided => NmRange::diagonal(lo, hi, step)?,
            Mode::OneSided => NmRange::forward(lo, hi, step)?,
        })
    }

    fn points(&self, mu: &Measure) -> Vec<expmetrics::shift::Point> {
        estimate::typical_points(mu, self.c.points, self.c.horizon, self.c.seed)
    }

    /// The resolved configuration echoed in every report.
    fn config(&self, extra: Value, range: Option<(u64, u64, u64)>) -> Value {
        let c = &self.c;
        let range = range.map(|d| {
            let (s_min, s_max, s_step) = self.range_bounds(d);
            json!({ "s_min": s_min, "s_max": s_max, "s_step": s_step })
        });
        let mut v = json!({
            "space": c.space,
            "space_summary": self.space.summary(),
            "params": self.params,
            "measure": self.measure_spec,
            "horizon": c.horizon,
            "seed": c.seed,
            "points": c.points,
            "ladder": { "theta": c.theta, "j_min": c.j_min, "j_max": c.j_max },
            "range": range,
            "tolerances": self.tol,
            "format": c.format,
        });
        if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
            m.extend(e);
        }
        v
    }
}

const ENTROPY_RANGE: (u64, u64, u64) = (2, 60, 2);
const KATOK_RANGE: (u64, u64, u64) = (200, 2000, 200);

fn target_check(e: &SlopeEstimate, tol: f64) -> Option<RelationReport> {
    e.target.map(|t| RelationReport::equality(format!("{} = closed form", e.quantity), e.slope, t, tol))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let ctx = Ctx::new(cli.common)?;
    let p = &ctx.params;
    let tol = ctx.tol;
    match cli.cmd {
        Cmd::Dim => {
            let ladder = ctx.ladder()?;
            let mut r = Report::new("dim", ctx.config(json!({}), None));
            r.estimates.push(estimate::box_dimension(&ctx.space, p, &ladder)?);
            if let Some(mu) = &ctx.measure {
                let pts = ctx.points(mu);
                r.estimates.push(estimate::pointwise_dimension_ensemble(mu, &pts, p, &ladder)?);
            }
            Ok(r)
        }
        Cmd::Entropy { r1 } => {
            let range = ctx.range(ENTROPY_RANGE)?;
            let mut r = Report::new("entropy", ctx.config(json!({ "r1": r1 }), Some(ENTROPY_RANGE)));
            r.estimates.push(estimate::topological_entropy_spanning(&ctx.space, p, r1, &range)?);
            Ok(r)
        }
        Cmd::Katok { delta, r1 } => {
            let mu = ctx.mu("katok")?;
            let range = ctx.range(KATOK_RANGE)?;
            let mut r = Report::new("katok", ctx.config(json!({ "delta": delta, "r1": r1 }), Some(KATOK_RANGE)));
            r.estimates.push(estimate::katok_entropy(mu, delta, p, r1, &range)?);
            Ok(r)
        }
        Cmd::BrinKatok { r1, single } => {
            let mu = ctx.mu("brin-katok")?;
            let range = ctx.range(ENTROPY_RANGE)?;
            let pts = if single { vec![mu.sample_typical(ctx.c.horizon, ctx.c.seed)] } else { ctx.points(mu) };
            let mut r = Report::new("brin-katok", ctx.config(json!({ "r1": r1, "single": single }), Some(ENTROPY_RANGE)));
            r.estimates.push(estimate::brin_katok(mu, &pts, p, estimate::WindowRule::Bowen { r1 }, &range)?);
            Ok(r)
        }
        Cmd::Neutralized { r: nr, delta, allow_outside } => {
            let range = ctx.range(ENTROPY_RANGE)?;
            let (klo, khi, kstep) = ctx.range_bounds(KATOK_RANGE);
            let cfg = ctx.config(
                json!({
                    "r": nr,
                    "delta": delta,
                    "allow_outside": allow_outside,
                    "katok_range": { "s_min": klo, "s_max": khi, "s_step": kstep },
                }),
                Some(ENTROPY_RANGE),
            );
            let mut r = Report::new("neutralized", cfg);
            if allow_outside {
                r.estimates.push(estimate::neutralized_topological_any(&ctx.space, p, nr, &range)?);
            } else {
                r.estimates.push(estimate::neutralized_topological(&ctx.space, p, nr, &range)?);
            }
            if let Some(mu) = &ctx.measure {
                let rule = estimate::WindowRule::Neutralized { r: nr };
                if !allow_outside && nr != 0.0 {
                    estimate::check_neutral_range(nr, p)?;
                }
                let pts = ctx.points(mu);
                r.estimates.push(estimate::brin_katok(mu, &pts, p, rule, &range)?);
                r.estimates.push(estimate::katok(mu, delta, p, rule, &ctx.range(KATOK_RANGE)?)?);
            }
            Ok(r)
        }
        Cmd::Estimation { alpha, r3, r1 } => {
            let cfg = ctx.config(json!({ "alpha": alpha, "r3": r3, "r1": r1 }), Some(ENTROPY_RANGE));
            let mut r = Report::new("estimation", cfg);
            let (lo, hi, step) = ctx.range_bounds(ENTROPY_RANGE);
            let range = NmRange::alpha_split(lo, hi, step, alpha, p)?;
            let pts = ctx.measure.as_ref().map(|mu| ctx.points(mu)).unwrap_or_default();
            match p.mode {
                Mode::OneSided => {
                    let oc = OneSidedConfig {
                        mu: ctx.measure.as_ref(),
                        points: &pts,
                        alpha,
                        r1,
                        r3,
                        range,
                        ladder: ctx.ladder()?,
                    };
                    let s = estimate::one_sided_suite(&ctx.space, p, &oc)?;
                    r.relations.push(RelationReport::equality(
                        "one-sided alpha entropy = dimension * (alpha + ln b)",
                        s.alpha_entropy.slope,
                        s.alpha_target,
                        tol.counts,
                    ));
                    r.estimates.extend([s.entropy, s.dimension, s.alpha_entropy]);
                    r.estimates.extend(s.alpha_measure);
                }
                Mode::TwoSided => {
                    r.estimates.push(estimate::alpha_topological(&ctx.space, p, alpha, r3, &range)?);
                    if let Some(mu) = &ctx.measure {
                        r.estimates.push(estimate::alpha_brin_katok(mu, &pts, p, alpha, r3, &range)?);
                    }
                }
            }
            Ok(r)
        }
        Cmd::MetricVerify { gamma, pairs, max_agree } => {
            let mp = metric::mather_n0(p, gamma)?;
            let sample = metric::sample_pairs(&ctx.space, pairs, ctx.c.horizon, max_agree, ctx.c.seed);
            let rep = metric::verify_hyperbolicity(&sample, &mp, p)?;
            let cfg = ctx.config(json!({ "gamma": gamma, "pairs": pairs, "max_agree": max_agree }), None);
            let mut r = Report::new("metric-verify", cfg);
            r.pass = rep.passed();
            let details = json!({ "mather": mp, "report": rep, "passed": rep.passed() });
            r.table = Some(key_value_table(&details["report"]));
            r.details = Some(details);
            Ok(r)
        }
        Cmd::Frink { dissimilarity } => {
            let sample = match &dissimilarity {
                Some(path) => FiniteSample::from_dissimilarity(inputs::load_matrix(path)?)?,
                None => {
                    let pts = (0..ctx.c.points as u64)
                        .map(|i| ctx.space.sample_point(ctx.c.horizon, ctx.c.seed.wrapping_add(i)))
                        .collect();
                    FiniteSample::from_points(pts, p)?
                }
            };
            let d = metric::frink_metrize(&sample)?;
            let n = sample.len();
            let mut table = Table { header: ["i", "j", "rho", "D"].map(String::from).to_vec(), rows: Vec::new() };
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    let (rho, dij) = (sample.rho(i, j), d.get(i, j));
                    if dij > 0.0 {
                        worst = worst.max(rho / dij);
                    }
                    table.rows.push(vec![i.to_string(), j.to_string(), rho.to_string(), dij.to_string()]);
                }
            }
            let triangle = d.triangle_violations();
            let cfg = ctx.config(json!({ "dissimilarity": dissimilarity }), None);
            let mut r = Report::new("frink", cfg);
            r.pass = triangle == 0;
            r.details = Some(json!({
                "size": n,
                "triangle_violations": triangle,
                "max_rho_over_d": worst,
                "distance": (0..n).map(|i| (0..n).map(|j| d.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }));
            r.table = Some(table);
            Ok(r)
        }
        Cmd::Relations { r: nr, alpha, delta } => {
            let (lo, hi, step) = ctx.range_bounds(ENTROPY_RANGE);
            let bc = BundleConfig {
                r: nr,
                alpha,
                delta,
                points: ctx.c.points,
                horizon: ctx.c.horizon,
                seed: ctx.c.seed,
                ladder: ctx.ladder()?,
                range: NmRange::diagonal(lo, hi, step)?,
                ..BundleConfig::default()
            };
            let bundle = Bundle::compute(&ctx.space, ctx.measure.as_ref(), p, &bc)?;
            let reports = relations::verify_identities(&bundle, &tol)?;
            let mut r = Report::new("relations", ctx.config(json!({ "r": nr, "alpha": alpha, "delta": delta, "katok_range": bc.katok_range }), Some(ENTROPY_RANGE)));
            r.pass = reports.iter().all(|x| x.pass);
            r.relations = reports;
            let Bundle {
                box_dimension,
                spanning,
                pointwise,
                brin_katok,
                katok,
                neutralized_topological,
                neutralized_katok,
                neutralized_brin_katok,
                alpha_topological,
                alpha_brin_katok,
                one_sided,
                ..
            } = bundle;
            r.estimates = [
                box_dimension,
                spanning,
                pointwise,
                brin_katok,
                katok,
                neutralized_topological,
                neutralized_katok,
                neutralized_brin_katok,
                alpha_topological,
                alpha_brin_katok,
            ]
            .into_iter()
            .flatten()
            .collect();
            if let Some(s) = one_sided {
                r.estimates.extend([s.entropy, s.dimension, s.alpha_entropy]);
                r.estimates.extend(s.alpha_measure);
            }
            for e in &r.estimates {
                if e.flagged {
                    eprintln!("warning: {} half-range slopes differ by {:.3}", e.quantity, e.spread);
                }
            }
            Ok(r)
        }
        Cmd::Solve { r: given_r, alpha } => {
            let given = match (given_r, alpha) {
                (Some(v), None) => Given::R(v),
                (None, Some(v)) => Given::Alpha(v),
                _ => return Err(CliError::Usage("give exactly one of --r, --alpha".into())),
            };
            let s = relations::solve_entropy_balance(p.a, p.b, given)?;
            let mut r = Report::new("solve-5-23", ctx.config(json!({ "given": given }), None));
            r.pass = s.report.pass;
            r.details = Some(json!({ "r": s.r, "alpha": s.alpha }));
            r.relations.push(s.report);
            let mut t = report::relation_table(&r.relations);
            t.header.extend(["r".to_string(), "alpha".to_string()]);
            for row in t.rows.iter_mut() {
                row.extend([s.r.to_string(), s.alpha.to_string()]);
            }
            r.table = Some(t);
            Ok(r)
        }
    }
    .map(|mut r: Report| {
        if r.command != "relations" && r.command != "solve-5-23" && r.command != "estimation" {
            let checks: Vec<RelationReport> = r
                .estimates
                .iter()
                .filter_map(|e| target_check(e, if e.ensemble > 0 { tol.monte_carlo } else { tol.counts }))
                .collect();
            if !checks.is_empty() {
                r.details.get_or_insert_with(|| json!({}))["checks"] = json!(checks);
            }
        }
        r
    })
}

fn key_value_table(v: &Value) -> Table {
    let mut t = Table { header: vec!["key".into(), "value".into()], rows: Vec::new() };
    if let Value::Object(m) = v {
        for (k, val) in m {
            t.rows.push(vec![k.clone(), val.to_string()]);
        }
    }
    t
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(s) = std::env::var("EXP_METRICS_THREADS") {
        let n: usize = s
            .parse()
            .map_err(|_| CliError::Usage(format!("EXP_METRICS_THREADS must be a positive integer, got {s:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.common.format;
    let out = cli.common.out.clone();
    let result = init_threads().and_then(|_| run(cli)).and_then(|r| {
        let text = r.render(format)?;
        match &out {
            Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Io(path.display().to_string(), e))?,
            None => print!("{text}"),
        }
        Ok(r.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: at least one relation failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
