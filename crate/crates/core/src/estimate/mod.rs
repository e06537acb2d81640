//! Regression estimators for dimensions and entropies.
//!
//! Each limit `r -> 0` or `n, m -> ∞` is replaced by a least-squares slope
//! over a ladder of radii or a range of window sizes. Counts come from
//! [`ShiftSpace::count_words`] and masses from [`Measure::log_mass`], both
//! exact, so regression is the only approximation.

pub mod katok;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cylinder::{
    alpha_window, ball_window, bowen_window, check_alpha, neutralized_window, CylinderIndex,
    RadiusLadder,
};
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::metric::{MetricParams, Mode};
use crate::numeric::{least_squares, ln_biguint};
use crate::shift::{Point, ShiftSpace};

pub use katok::{minimal_cover, CoverBackend, CoverCount};

/// Reference radius for fixed-radius Bowen balls.
pub const DEFAULT_R1: f64 = 0.9;
/// Reference radius for decaying-radius balls.
pub const DEFAULT_R3: f64 = 0.9;
/// Typical points averaged by ensemble estimators.
pub const DEFAULT_POINTS: usize = 100;
/// Half-width of sampled windows.
pub const DEFAULT_HORIZON: usize = 400;
/// Relative half-versus-half slope spread above which an estimate is flagged.
pub const SPREAD_TOL: f64 = 0.05;

pub fn default_ladder() -> RadiusLadder {
    RadiusLadder::dyadic(8, 40).expect("valid ladder")
}

/// Window sizes `(n, m)` at which a two-sided quantity is sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NmRange {
    pub pairs: Vec<(u64, u64)>,
}

impl NmRange {
    /// `n + m = s` for `s = s_min, s_min + step, …, <= s_max`, split as
    /// `n = ⌊s/2⌋`, `m = s - n`.
    pub fn diagonal(s_min: u64, s_max: u64, step: u64) -> Result<Self> {
        Self::split(s_min, s_max, step, 0.5)
    }

    /// Same sizes, split as `n = round(λ s)`.
    pub fn split(s_min: u64, s_max: u64, step: u64, lambda: f64) -> Result<Self> {
        if step == 0 || s_max < s_min || !(0.0..=1.0).contains(&lambda) {
            return Err(Error::HypothesisViolated(format!(
                "range needs step >= 1, s_min <= s_max and 0 <= lambda <= 1 (got {s_min}..{s_max} step {step}, lambda {lambda})"
            )));
        }
        let pairs = (s_min..=s_max)
            .step_by(step as usize)
            .map(|s| {
                let n = if lambda == 0.5 { s / 2 } else { (lambda * s as f64).round() as u64 };
                (n, s - n)
            })
            .collect();
        Ok(Self { pairs })
    }

    /// Forward-only sizes `(0, m)` for one-sided mode.
    pub fn forward(m_min: u64, m_max: u64, step: u64) -> Result<Self> {
        Self::split(m_min, m_max, step, 0.0)
    }

    pub fn default_entropy() -> Self {
        Self::diagonal(2, 60, 2).expect("valid range")
    }

    /// Long windows where the Katok count has settled.
    pub fn default_katok() -> Self {
        Self::diagonal(200, 2000, 200).expect("valid range")
    }

    /// The split for decaying-radius balls,
    /// `n : m = 1/(ln a + α) : 1/(ln b + α)`, under which the
    /// window length grows like `(n + m)·k/k_α`.
    pub fn alpha_split(s_min: u64, s_max: u64, step: u64, alpha: f64, params: &MetricParams) -> Result<Self> {
        match params.mode {
            Mode::OneSided => Self::forward(s_min, s_max, step),
            Mode::TwoSided => {
                let lambda = (1.0 / (params.a.ln() + alpha)) / params.k_alpha(alpha);
                Self::split(s_min, s_max, step, lambda)
            }
        }
    }
}

/// How `(n, m)` becomes a cylinder window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum WindowRule {
    /// Bowen ball at fixed radius `r1`.
    Bowen { r1: f64 },
    /// Bowen ball at radius `e^{-(n+m) r}`; `r = 0` means `Bowen { r1: 0.9 }`.
    Neutralized { r: f64 },
    /// Per-iterate radius `e^{-|i|α} r3`.
    Alpha { alpha: f64, r3: f64 },
}

impl WindowRule {
    pub fn window(&self, n: u64, m: u64, params: &MetricParams) -> Result<CylinderIndex> {
        let (n, m) = match params.mode {
            Mode::TwoSided => (n, m),
            Mode::OneSided => (0, n + m),
        };
        match *self {
            WindowRule::Bowen { r1 } => bowen_window(n, m, r1, params),
            WindowRule::Neutralized { r: 0.0 } => bowen_window(n, m, DEFAULT_R1, params),
            WindowRule::Neutralized { r } => neutralized_window(n, m, r, params),
            WindowRule::Alpha { alpha, r3 } => alpha_window(n, m, alpha, r3, params),
        }
    }

    /// The closed-form growth factor of window length in `n + m` relative
    /// to the classical Bowen ball.
    pub fn growth(&self, params: &MetricParams) -> f64 {
        match *self {
            WindowRule::Bowen { .. } => 1.0,
            WindowRule::Neutralized { r } => 1.0 + r * params.k(),
            WindowRule::Alpha { alpha, .. } => params.k() / params.k_alpha(alpha),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            WindowRule::Bowen { .. } => "bowen",
            WindowRule::Neutralized { .. } => "neutralized",
            WindowRule::Alpha { .. } => "alpha",
        }
    }
}

/// One ladder radius or window size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    /// The radius `r`, or `n + m`.
    pub param: f64,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub window_len: usize,
    /// Regression abscissa.
    pub x: f64,
    /// `ln` count or `-ln` mass.
    pub y: f64,
    pub fitted: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeEstimate {
    pub quantity: String,
    pub abscissa: String,
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub rows: Vec<Row>,
    /// Some ladder entries were skipped because their window left a sampled
    /// point's horizon.
    pub saturated: bool,
    pub skipped: usize,
    /// Relative difference between slopes fitted on the two halves.
    pub spread: f64,
    pub flagged: bool,
    /// Points averaged (0 for purely combinatorial quantities).
    pub ensemble: usize,
    /// Closed-form value the slope should approach.
    pub target: Option<f64>,
    pub note: Option<String>,
    pub params: MetricParams,
    pub rule: Option<WindowRule>,
}

impl SlopeEstimate {
    fn fit(
        quantity: &str,
        abscissa: &str,
        mut rows: Vec<Row>,
        skipped: usize,
        ensemble: usize,
        params: &MetricParams,
    ) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::HypothesisViolated(format!(
                "{quantity}: fewer than two usable ladder entries ({} skipped for the horizon)",
                skipped
            )));
        }
        let xs: Vec<f64> = rows.iter().map(|r| r.x).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.y).collect();
        let (slope, intercept, rms) = least_squares(&xs, &ys);
        for r in rows.iter_mut() {
            r.fitted = slope * r.x + intercept;
            r.residual = r.y - r.fitted;
        }
        let half = rows.len() / 2;
        let spread = if half >= 2 && rows.len() - half >= 2 {
            let (s1, _, _) = least_squares(&xs[..half], &ys[..half]);
            let (s2, _, _) = least_squares(&xs[half..], &ys[half..]);
            ((s1 - s2) / slope).abs()
        } else {
            0.0
        };
        Ok(Self {
            quantity: quantity.to_string(),
            abscissa: abscissa.to_string(),
            slope,
            intercept,
            residual_rms: rms,
            rows,
            saturated: skipped > 0,
            skipped,
            spread,
            flagged: spread > SPREAD_TOL,
            ensemble,
            target: None,
            note: None,
            params: *params,
            rule: None,
        })
    }

    fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        self
    }

    fn with_rule(mut self, rule: WindowRule) -> Self {
        self.rule = Some(rule);
        self
    }

    /// Relative distance of the slope from its target.
    pub fn rel_error(&self) -> Option<f64> {
        self.target.map(|t| crate::numeric::rel_error(self.slope, t))
    }
}

fn nm_row(n: u64, m: u64, w: &CylinderIndex, y: f64) -> Row {
    Row {
        param: (n + m) as f64,
        n: Some(n),
        m: Some(m),
        window_len: w.len(),
        x: (n + m) as f64,
        y,
        fitted: 0.0,
        residual: 0.0,
    }
}

fn radius_row(r: f64, w: &CylinderIndex, y: f64) -> Row {
    Row {
        param: r,
        n: None,
        m: None,
        window_len: w.len(),
        x: (1.0 / r).ln(),
        y,
        fitted: 0.0,
        residual: 0.0,
    }
}

fn require_same_space(mu: &Measure, space: &ShiftSpace) -> Result<()> {
    if mu.space() != space {
        return Err(Error::IncompatibleInputs(
            "measure and space disagree".into(),
        ));
    }
    Ok(())
}

/// Seeded stationary samples, one derived seed per point.
pub fn typical_points(mu: &Measure, count: usize, horizon: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..count).map(|_| rng.random()).collect();
    seeds
        .into_par_iter()
        .map(|s| mu.sample_typical(horizon, s))
        .collect()
}

/// `-ln μ` of each point's cylinder, or `None` if any window misfits.
fn ensemble_y(mu: &Measure, points: &[Point], w: &CylinderIndex) -> Result<Option<f64>> {
    let mut total = 0.0;
    for x in points {
        if !x.covers(w.lo, w.hi) {
            return Ok(None);
        }
        let word = w.word(x)?;
        total -= mu.log_mass(&word.symbols)?;
    }
    Ok(Some(total / points.len() as f64))
}

fn check_ladder(ladder: &RadiusLadder) -> Result<()> {
    RadiusLadder::new(ladder.r_values.clone()).map(|_| ())
}

/// Slope of `ln N(r)` against `ln(1/r)`, with `N(r)` the number of words on
/// the ball window: distinct balls of one radius are disjoint cylinders.
pub fn box_dimension(space: &ShiftSpace, params: &MetricParams, ladder: &RadiusLadder) -> Result<SlopeEstimate> {
    check_ladder(ladder)?;
    let rows: Vec<Row> = ladder
        .r_values
        .par_iter()
        .map(|&r| {
            let w = ball_window(r, params)?;
            Ok(radius_row(r, &w, ln_biguint(&space.count_words(w.len()))))
        })
        .collect::<Result<_>>()?;
    let h = space.top_entropy_oracle()?;
    Ok(SlopeEstimate::fit("box-dimension", "ln(1/r)", rows, 0, 0, params)?.with_target(h * params.k()))
}

fn pointwise_rows(mu: &Measure, points: &[Point], params: &MetricParams, ladder: &RadiusLadder) -> Result<(Vec<Row>, usize)> {
    check_ladder(ladder)?;
    let rows: Vec<Option<Row>> = ladder
        .r_values
        .par_iter()
        .map(|&r| {
            let w = ball_window(r, params)?;
            Ok(ensemble_y(mu, points, &w)?.map(|y| radius_row(r, &w, y)))
        })
        .collect::<Result<_>>()?;
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    Ok((rows.into_iter().flatten().collect(), skipped))
}

/// Slope of `ln μ(B(x, r))` against `ln r` at one point.
pub fn pointwise_dimension(mu: &Measure, x: &Point, params: &MetricParams, ladder: &RadiusLadder) -> Result<SlopeEstimate> {
    let (rows, skipped) = pointwise_rows(mu, std::slice::from_ref(x), params, ladder)?;
    if rows.is_empty() {
        let w = ball_window(ladder.r_values[0], params)?;
        return Err(Error::HorizonExceeded { index: w.hi, lo: x.lo(), hi: x.hi() });
    }
    let h = mu.entropy_oracle().entropy;
    Ok(SlopeEstimate::fit("pointwise-dimension", "ln(1/r)", rows, skipped, 1, params)?.with_target(h * params.k()))
}

/// [`pointwise_dimension`] on the point-averaged curve.
pub fn pointwise_dimension_ensemble(mu: &Measure, points: &[Point], params: &MetricParams, ladder: &RadiusLadder) -> Result<SlopeEstimate> {
    let (rows, skipped) = pointwise_rows(mu, points, params, ladder)?;
    let h = mu.entropy_oracle().entropy;
    Ok(SlopeEstimate::fit("pointwise-dimension", "ln(1/r)", rows, skipped, points.len(), params)?.with_target(h * params.k()))
}

fn rule_check(rule: &WindowRule, params: &MetricParams) -> Result<()> {
    match *rule {
        WindowRule::Bowen { r1 } => {
            if !(r1 > 0.0 && r1 < 1.0) {
                return Err(Error::RadiusOutOfRange(r1));
            }
        }
        WindowRule::Neutralized { r } => {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::ConstraintViolated(format!("r must be nonnegative, got {r}")));
            }
        }
        WindowRule::Alpha { alpha, r3 } => {
            check_alpha(alpha, params)?;
            if !(r3 > 0.0 && r3 < 1.0) {
                return Err(Error::RadiusOutOfRange(r3));
            }
        }
    }
    Ok(())
}

/// Hypothesis of the neutralized identities: `0 < r < 3/k`.
pub fn check_neutral_range(r: f64, params: &MetricParams) -> Result<()> {
    let bound = 3.0 / params.k();
    if !(r > 0.0 && r < bound) {
        // truncated so the printed bound never exceeds the true one
        let shown = (bound * 1e5).floor() / 1e5;
        return Err(Error::ConstraintViolated(format!(
            "0 < r < 3/k = {shown:.5} (k = 1/ln a + 1/ln b), got r = {r}"
        )));
    }
    Ok(())
}

/// Slope of `ln #(words on the window)` against `n + m`.
pub fn topological_entropy(space: &ShiftSpace, params: &MetricParams, rule: WindowRule, range: &NmRange) -> Result<SlopeEstimate> {
    rule_check(&rule, params)?;
    let rows: Vec<Row> = range
        .pairs
        .par_iter()
        .map(|&(n, m)| {
            let w = rule.window(n, m, params)?;
            Ok(nm_row(n, m, &w, ln_biguint(&space.count_words(w.len()))))
        })
        .collect::<Result<_>>()?;
    let h = space.top_entropy_oracle()?;
    let name = format!("topological-entropy-{}", rule.label());
    Ok(SlopeEstimate::fit(&name, "n+m", rows, 0, 0, params)?
        .with_target(h * rule.growth(params))
        .with_rule(rule))
}

/// Minimal spanning cardinality at fixed radius `r1`.
pub fn topological_entropy_spanning(space: &ShiftSpace, params: &MetricParams, r1: f64, range: &NmRange) -> Result<SlopeEstimate> {
    topological_entropy(space, params, WindowRule::Bowen { r1 }, range)
}

/// Neutralized topological entropy; requires `0 < r < 3/k`, or `r = 0`
/// for the classical case.
pub fn neutralized_topological(space: &ShiftSpace, params: &MetricParams, r: f64, range: &NmRange) -> Result<SlopeEstimate> {
    if r != 0.0 {
        check_neutral_range(r, params)?;
    }
    topological_entropy(space, params, WindowRule::Neutralized { r }, range)
}

/// As [`neutralized_topological`] for any `r >= 0`; estimates with
/// `r >= 3/k` carry a note that the closed form is unproven there.
pub fn neutralized_topological_any(space: &ShiftSpace, params: &MetricParams, r: f64, range: &NmRange) -> Result<SlopeEstimate> {
    let mut est = topological_entropy(space, params, WindowRule::Neutralized { r }, range)?;
    if r >= 3.0 / params.k() {
        est.note = Some("outside proven range: r >= 3/k".into());
    }
    Ok(est)
}

pub fn alpha_topological(space: &ShiftSpace, params: &MetricParams, alpha: f64, r3: f64, range: &NmRange) -> Result<SlopeEstimate> {
    topological_entropy(space, params, WindowRule::Alpha { alpha, r3 }, range)
}

fn bk_rows(mu: &Measure, points: &[Point], params: &MetricParams, rule: &WindowRule, range: &NmRange) -> Result<(Vec<Row>, usize)> {
    rule_check(rule, params)?;
    let rows: Vec<Option<Row>> = range
        .pairs
        .par_iter()
        .map(|&(n, m)| {
            let w = rule.window(n, m, params)?;
            Ok(ensemble_y(mu, points, &w)?.map(|y| nm_row(n, m, &w, y)))
        })
        .collect::<Result<_>>()?;
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    Ok((rows.into_iter().flatten().collect(), skipped))
}

/// Slope of `-ln μ(B(x, -n, m, ·))` against `n + m`, averaged over `points`.
pub fn brin_katok(mu: &Measure, points: &[Point], params: &MetricParams, rule: WindowRule, range: &NmRange) -> Result<SlopeEstimate> {
    if points.is_empty() {
        return Err(Error::HypothesisViolated("no sample points".into()));
    }
    let (rows, skipped) = bk_rows(mu, points, params, &rule, range)?;
    if rows.is_empty() {
        let w = rule.window(range.pairs[0].0, range.pairs[0].1, params)?;
        return Err(Error::HorizonExceeded { index: w.hi, lo: points[0].lo(), hi: points[0].hi() });
    }
    let h = mu.entropy_oracle().entropy;
    let name = format!("brin-katok-{}", rule.label());
    Ok(SlopeEstimate::fit(&name, "n+m", rows, skipped, points.len(), params)?
        .with_target(h * rule.growth(params))
        .with_rule(rule))
}

pub fn brin_katok_local(mu: &Measure, x: &Point, params: &MetricParams, r1: f64, range: &NmRange) -> Result<SlopeEstimate> {
    brin_katok(mu, std::slice::from_ref(x), params, WindowRule::Bowen { r1 }, range)
}

pub fn neutralized_brin_katok(mu: &Measure, points: &[Point], params: &MetricParams, r: f64, range: &NmRange) -> Result<SlopeEstimate> {
    if r != 0.0 {
        check_neutral_range(r, params)?;
    }
    brin_katok(mu, points, params, WindowRule::Neutralized { r }, range)
}

pub fn alpha_brin_katok(mu: &Measure, points: &[Point], params: &MetricParams, alpha: f64, r3: f64, range: &NmRange) -> Result<SlopeEstimate> {
    brin_katok(mu, points, params, WindowRule::Alpha { alpha, r3 }, range)
}

/// Slope of `ln` of the minimal cover of mass `1 - δ` against `n + m`.
pub fn katok(mu: &Measure, delta: f64, params: &MetricParams, rule: WindowRule, range: &NmRange) -> Result<SlopeEstimate> {
    rule_check(&rule, params)?;
    let rows: Vec<(Row, CoverBackend)> = range
        .pairs
        .par_iter()
        .map(|&(n, m)| {
            let w = rule.window(n, m, params)?;
            let c = minimal_cover(mu, w.len(), delta)?;
            Ok((nm_row(n, m, &w, c.log_count), c.backend))
        })
        .collect::<Result<_>>()?;
    let mut backends: Vec<&str> = Vec::new();
    for (_, b) in &rows {
        let s = match b {
            CoverBackend::Enumeration => "enumeration",
            CoverBackend::MassClasses => "mass-classes",
            CoverBackend::BestFirst => "best-first",
        };
        if !backends.contains(&s) {
            backends.push(s);
        }
    }
    let h = mu.entropy_oracle().entropy;
    let name = format!("katok-{}", rule.label());
    let mut est = SlopeEstimate::fit(&name, "n+m", rows.into_iter().map(|r| r.0).collect(), 0, 0, params)?
        .with_target(h * rule.growth(params))
        .with_rule(rule);
    est.note = Some(format!("delta = {delta}; cover backends: {}", backends.join(", ")));
    Ok(est)
}

pub fn katok_entropy(mu: &Measure, delta: f64, params: &MetricParams, r1: f64, range: &NmRange) -> Result<SlopeEstimate> {
    katok(mu, delta, params, WindowRule::Bowen { r1 }, range)
}

pub fn neutralized_katok(mu: &Measure, delta: f64, params: &MetricParams, r: f64, range: &NmRange) -> Result<SlopeEstimate> {
    if r != 0.0 {
        check_neutral_range(r, params)?;
    }
    katok(mu, delta, params, WindowRule::Neutralized { r }, range)
}

/// One-sided estimates, all on forward windows `0..=hi`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OneSidedSuite {
    pub alpha: f64,
    pub entropy: SlopeEstimate,
    pub dimension: SlopeEstimate,
    pub alpha_entropy: SlopeEstimate,
    /// Decaying-radius local entropy of the measure, when one is given.
    pub alpha_measure: Option<SlopeEstimate>,
    /// `dimension · (α + ln b)`.
    pub alpha_target: f64,
}

pub struct OneSidedConfig<'a> {
    pub mu: Option<&'a Measure>,
    pub points: &'a [Point],
    pub alpha: f64,
    pub r1: f64,
    pub r3: f64,
    pub range: NmRange,
    pub ladder: RadiusLadder,
}

pub fn one_sided_suite(space: &ShiftSpace, params: &MetricParams, cfg: &OneSidedConfig<'_>) -> Result<OneSidedSuite> {
    if params.mode != Mode::OneSided {
        return Err(Error::IncompatibleInputs("one-sided suite needs one-sided parameters".into()));
    }
    check_alpha(cfg.alpha, params)?;
    let entropy = topological_entropy(space, params, WindowRule::Bowen { r1: cfg.r1 }, &cfg.range)?;
    let dimension = box_dimension(space, params, &cfg.ladder)?;
    let rule = WindowRule::Alpha { alpha: cfg.alpha, r3: cfg.r3 };
    let alpha_entropy = topological_entropy(space, params, rule, &cfg.range)?;
    let alpha_measure = match cfg.mu {
        Some(mu) => {
            require_same_space(mu, space)?;
            Some(brin_katok(mu, cfg.points, params, rule, &cfg.range)?)
        }
        None => None,
    };
    let alpha_target = dimension.target.expect("box dimension has a target") * (cfg.alpha + params.b.ln());
    Ok(OneSidedSuite {
        alpha: cfg.alpha,
        entropy,
        dimension,
        alpha_entropy,
        alpha_measure,
        alpha_target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> MetricParams {
        MetricParams::new(1.3, 1.3).unwrap()
    }

    #[test]
    fn ranges() {
        let d = NmRange::diagonal(2, 7, 2).unwrap();
        assert_eq!(d.pairs, vec![(1, 1), (2, 2), (3, 3)]);
        assert_eq!(NmRange::diagonal(3, 3, 1).unwrap().pairs, vec![(1, 2)]);
        assert!(NmRange::diagonal(5, 2, 1).is_err());
        let s = NmRange::alpha_split(10, 10, 1, 0.1, &params()).unwrap();
        assert_eq!(s.pairs, vec![(5, 5)]);
    }

    #[test]
    fn spanning_full_shift_is_exact() {
        let full = ShiftSpace::full(2).unwrap();
        let e = topological_entropy_spanning(&full, &params(), 0.9, &NmRange::default_entropy()).unwrap();
        assert!((e.slope - 2f64.ln()).abs() < 1e-12);
        assert!(e.residual_rms < 1e-9);
        let gm = ShiftSpace::golden_mean();
        let a = topological_entropy_spanning(&gm, &params(), 0.9, &NmRange::default_entropy()).unwrap();
        let b = topological_entropy_spanning(&gm, &params(), 0.5, &NmRange::default_entropy()).unwrap();
        assert!((a.slope - b.slope).abs() < 1e-4);
        assert!((a.slope / gm.top_entropy_oracle().unwrap() - 1.0).abs() < 0.01);
    }

    #[test]
    fn neutral_guard() {
        let full = ShiftSpace::full(2).unwrap();
        let r = neutralized_topological(&full, &params(), 0.5, &NmRange::default_entropy());
        match r {
            Err(Error::ConstraintViolated(msg)) => assert!(msg.contains("0.39354"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let zero = neutralized_topological(&full, &params(), 0.0, &NmRange::default_entropy()).unwrap();
        let classic = topological_entropy_spanning(&full, &params(), DEFAULT_R1, &NmRange::default_entropy()).unwrap();
        assert_eq!(zero.slope, classic.slope);
        let outside = neutralized_topological_any(&full, &params(), 0.5, &NmRange::default_entropy()).unwrap();
        assert!(outside.note.as_deref().unwrap().contains("outside proven range"));
    }

    #[test]
    fn alpha_guard_and_degenerate() {
        let full = ShiftSpace::full(2).unwrap();
        let range = NmRange::default_entropy();
        assert!(matches!(
            alpha_topological(&full, &params(), 0.3, 0.9, &range),
            Err(Error::AlphaTooLarge { .. })
        ));
        let a0 = alpha_topological(&full, &params(), 0.0, 0.9, &range).unwrap();
        let classic = topological_entropy_spanning(&full, &params(), 0.9, &range).unwrap();
        assert!((a0.slope - classic.slope).abs() < 1e-9);
    }

    #[test]
    fn uniform_brin_katok_is_exact() {
        let full = ShiftSpace::full(2).unwrap();
        let u = Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap();
        for s in 0..5 {
            let x = u.sample_typical(100, s);
            let e = brin_katok_local(&u, &x, &params(), 0.9, &NmRange::default_entropy()).unwrap();
            assert!((e.slope - 2f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn saturation_skips_rows() {
        let full = ShiftSpace::full(2).unwrap();
        let u = Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap();
        let x = u.sample_typical(20, 3);
        let e = brin_katok_local(&u, &x, &params(), 0.9, &NmRange::default_entropy()).unwrap();
        assert!(e.saturated && e.skipped > 0);
        let tiny = u.sample_typical(1, 3);
        assert!(matches!(
            pointwise_dimension(&u, &tiny, &params(), &default_ladder()),
            Err(Error::HorizonExceeded { .. })
        ));
    }

    #[test]
    fn one_sided_requires_mode() {
        let full = ShiftSpace::full(2).unwrap();
        let cfg = OneSidedConfig {
            mu: None,
            points: &[],
            alpha: 0.1,
            r1: 0.9,
            r3: 0.9,
            range: NmRange::forward(2, 60, 2).unwrap(),
            ladder: default_ladder(),
        };
        assert!(matches!(
            one_sided_suite(&full, &params(), &cfg),
            Err(Error::IncompatibleInputs(_))
        ));
    }
}
