//! Checks of the dimension/entropy identities against computed estimates,
//! and the solver for the balance between neutralization and decay rates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimate::{
    self, alpha_brin_katok, alpha_topological, box_dimension, brin_katok, katok, neutralized_brin_katok,
    neutralized_katok, neutralized_topological, one_sided_suite, pointwise_dimension_ensemble,
    topological_entropy_spanning, typical_points, NmRange, OneSidedConfig, OneSidedSuite, SlopeEstimate,
    WindowRule,
};
use crate::measure::Measure;
use crate::metric::{MetricParams, Mode};
use crate::numeric::rel_error;
use crate::shift::ShiftSpace;
use crate::cylinder::RadiusLadder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `lhs = rhs`.
    Equality,
    /// `lhs <= rhs`, up to the tolerance.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub name: String,
    pub kind: RelationKind,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
    pub pass: bool,
    pub tolerance: f64,
}

impl RelationReport {
    pub fn equality(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let e = rel_error(lhs, rhs);
        Self { name: name.into(), kind: RelationKind::Equality, lhs, rhs, rel_error: e, pass: e <= tolerance, tolerance }
    }

    /// Relative excess of `lhs` over `rhs`; zero when the order holds.
    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let e = if lhs <= rhs { 0.0 } else { rel_error(lhs, rhs) };
        Self { name: name.into(), kind: RelationKind::AtMost, lhs, rhs, rel_error: e, pass: e <= tolerance, tolerance }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub exact: f64,
    pub counts: f64,
    pub monte_carlo: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: 1e-9, counts: 0.02, monte_carlo: 0.05 }
    }
}

/// Estimates to cross-check. Every two-sided estimate must share the same
/// `(a, b)`; the neutralized ones must share `r` and the decaying-radius
/// ones `α`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Bundle {
    pub h_top: f64,
    pub h_mu: Option<f64>,
    pub box_dimension: Option<SlopeEstimate>,
    pub spanning: Option<SlopeEstimate>,
    pub pointwise: Option<SlopeEstimate>,
    pub brin_katok: Option<SlopeEstimate>,
    pub katok: Option<SlopeEstimate>,
    pub neutralized_topological: Option<SlopeEstimate>,
    pub neutralized_katok: Option<SlopeEstimate>,
    pub neutralized_brin_katok: Option<SlopeEstimate>,
    pub alpha_topological: Option<SlopeEstimate>,
    pub alpha_brin_katok: Option<SlopeEstimate>,
    pub one_sided: Option<OneSidedSuite>,
}

/// What [`Bundle::compute`] runs.
#[derive(Debug, Clone, Serialize)]
pub struct BundleConfig {
    pub r: f64,
    pub alpha: f64,
    pub delta: f64,
    pub r1: f64,
    pub r3: f64,
    pub points: usize,
    pub horizon: usize,
    pub seed: u64,
    pub ladder: RadiusLadder,
    pub range: NmRange,
    pub katok_range: NmRange,
}

impl Default for BundleConfig {
    fn default() -> Self {
        Self {
            r: 0.05,
            alpha: 0.1,
            delta: 0.1,
            r1: estimate::DEFAULT_R1,
            r3: estimate::DEFAULT_R3,
            points: estimate::DEFAULT_POINTS,
            horizon: estimate::DEFAULT_HORIZON,
            seed: 0,
            ladder: estimate::default_ladder(),
            range: NmRange::default_entropy(),
            katok_range: NmRange::default_katok(),
        }
    }
}

/// `(s_min, s_max, step)` of a range built by [`NmRange::split`].
fn range_bounds(r: &NmRange) -> (u64, u64, u64) {
    let s: Vec<u64> = r.pairs.iter().map(|p| p.0 + p.1).collect();
    let step = if s.len() > 1 { s[1] - s[0] } else { 1 };
    (s[0], *s.last().unwrap(), step.max(1))
}

fn rule_params(e: &SlopeEstimate) -> (f64, f64, Mode) {
    (e.params.a, e.params.b, e.params.mode)
}

impl Bundle {
    /// Runs every estimator the inputs allow. With a one-sided `params`
    /// only the one-sided suite is filled.
    pub fn compute(space: &ShiftSpace, mu: Option<&Measure>, params: &MetricParams, cfg: &BundleConfig) -> Result<Self> {
        if let Some(mu) = mu {
            if mu.space() != space {
                return Err(Error::IncompatibleInputs("measure and space disagree".into()));
            }
        }
        let mut b = Bundle { h_top: space.top_entropy_oracle()?, h_mu: mu.map(|m| m.entropy_oracle().entropy), ..Default::default() };
        let points = match mu {
            Some(mu) => typical_points(mu, cfg.points, cfg.horizon, cfg.seed),
            None => Vec::new(),
        };
        if params.mode == Mode::OneSided {
            let (s_min, s_max, step) = range_bounds(&cfg.range);
            let fwd = NmRange::forward(s_min, s_max, step)?;
            let oc = OneSidedConfig { mu, points: &points, alpha: cfg.alpha, r1: cfg.r1, r3: cfg.r3, range: fwd, ladder: cfg.ladder.clone() };
            b.one_sided = Some(one_sided_suite(space, params, &oc)?);
            return Ok(b);
        }
        b.box_dimension = Some(box_dimension(space, params, &cfg.ladder)?);
        b.spanning = Some(topological_entropy_spanning(space, params, cfg.r1, &cfg.range)?);
        b.neutralized_topological = Some(neutralized_topological(space, params, cfg.r, &cfg.range)?);
        let (s_min, s_max, step) = range_bounds(&cfg.range);
        let alpha_range = NmRange::alpha_split(s_min, s_max, step, cfg.alpha, params)?;
        b.alpha_topological = Some(alpha_topological(space, params, cfg.alpha, cfg.r3, &alpha_range)?);
        if let Some(mu) = mu {
            b.pointwise = Some(pointwise_dimension_ensemble(mu, &points, params, &cfg.ladder)?);
            b.brin_katok = Some(brin_katok(mu, &points, params, WindowRule::Bowen { r1: cfg.r1 }, &cfg.range)?);
            b.katok = Some(katok(mu, cfg.delta, params, WindowRule::Bowen { r1: cfg.r1 }, &cfg.katok_range)?);
            b.neutralized_brin_katok = Some(neutralized_brin_katok(mu, &points, params, cfg.r, &cfg.range)?);
            b.neutralized_katok = Some(neutralized_katok(mu, cfg.delta, params, cfg.r, &cfg.katok_range)?);
            b.alpha_brin_katok = Some(alpha_brin_katok(mu, &points, params, cfg.alpha, cfg.r3, &alpha_range)?);
        }
        Ok(b)
    }

    fn two_sided(&self) -> Vec<&SlopeEstimate> {
        [
            &self.box_dimension,
            &self.spanning,
            &self.pointwise,
            &self.brin_katok,
            &self.katok,
            &self.neutralized_topological,
            &self.neutralized_katok,
            &self.neutralized_brin_katok,
            &self.alpha_topological,
            &self.alpha_brin_katok,
        ]
        .into_iter()
        .flatten()
        .collect()
    }

    fn check_compatible(&self) -> Result<()> {
        let all = self.two_sided();
        if let Some(first) = all.first() {
            let p0 = rule_params(first);
            for e in &all {
                if rule_params(e) != p0 {
                    return Err(Error::IncompatibleInputs(format!(
                        "{} uses (a, b) = ({}, {}) but {} uses ({}, {})",
                        e.quantity, e.params.a, e.params.b, first.quantity, p0.0, p0.1
                    )));
                }
            }
        }
        let same_rule = |xs: &[&Option<SlopeEstimate>]| -> Result<()> {
            let rules: Vec<WindowRule> = xs.iter().filter_map(|e| e.as_ref().and_then(|e| e.rule)).collect();
            let key = |r: &WindowRule| match *r {
                WindowRule::Neutralized { r } => r,
                WindowRule::Alpha { alpha, .. } => alpha,
                WindowRule::Bowen { .. } => f64::NAN,
            };
            if rules.windows(2).any(|w| key(&w[0]) != key(&w[1])) {
                return Err(Error::IncompatibleInputs(format!("window rules disagree: {rules:?}")));
            }
            Ok(())
        };
        same_rule(&[&self.neutralized_topological, &self.neutralized_katok, &self.neutralized_brin_katok])?;
        same_rule(&[&self.alpha_topological, &self.alpha_brin_katok])?;
        if self.h_mu.is_none() && [&self.pointwise, &self.brin_katok, &self.katok].iter().any(|e| e.is_some()) {
            return Err(Error::IncompatibleInputs("measure estimates without a measure entropy".into()));
        }
        Ok(())
    }
}

fn neutral_r(e: &SlopeEstimate) -> f64 {
    match e.rule {
        Some(WindowRule::Neutralized { r }) => r,
        _ => 0.0,
    }
}

fn alpha_of(e: &SlopeEstimate) -> f64 {
    match e.rule {
        Some(WindowRule::Alpha { alpha, .. }) => alpha,
        _ => 0.0,
    }
}

/// Lower and upper box-dimension ratios `ln N / ln(1/r)` over the finer
/// half of the ladder.
pub fn box_ratio_range(e: &SlopeEstimate) -> (f64, f64) {
    let tail = &e.rows[e.rows.len() / 2..];
    let ratios = tail.iter().map(|r| r.y / r.x);
    let lo = ratios.clone().fold(f64::INFINITY, f64::min);
    let hi = ratios.fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// One report per identity the bundle has the inputs for.
pub fn verify_identities(bundle: &Bundle, tol: &Tolerances) -> Result<Vec<RelationReport>> {
    bundle.check_compatible()?;
    let mut out = Vec::new();
    let h = bundle.h_top;
    if let Some(d) = &bundle.box_dimension {
        let k = d.params.k();
        out.push(RelationReport::equality("box-dimension = h_top * k", d.slope, h * k, tol.counts));
        let (lo, hi) = box_ratio_range(d);
        out.push(RelationReport::at_most("lower box <= upper box", lo, hi, tol.exact));
        out.push(RelationReport::equality("upper box = h_top * k", hi, h * k, tol.counts));
        if let Some(s) = &bundle.spanning {
            out.push(RelationReport::equality("box-dimension = spanning entropy * k", d.slope, s.slope * k, tol.counts));
        }
        if let Some(p) = &bundle.pointwise {
            out.push(RelationReport::at_most("pointwise dimension <= box dimension", p.slope, d.slope, tol.counts));
        }
    }
    if let Some(s) = &bundle.spanning {
        out.push(RelationReport::equality("spanning entropy = h_top", s.slope, h, tol.counts));
    }
    if let Some(hm) = bundle.h_mu {
        out.push(RelationReport::at_most("h_mu <= h_top", hm, h, tol.exact));
        if let Some(p) = &bundle.pointwise {
            let k = p.params.k();
            out.push(RelationReport::equality("pointwise dimension = h_mu * k", p.slope, hm * k, tol.monte_carlo));
        }
        if let Some(e) = &bundle.brin_katok {
            out.push(RelationReport::equality("brin-katok = h_mu", e.slope, hm, tol.monte_carlo));
        }
        if let Some(e) = &bundle.katok {
            out.push(RelationReport::equality("katok = h_mu", e.slope, hm, tol.counts));
        }
        if let Some(e) = &bundle.neutralized_brin_katok {
            let g = 1.0 + neutral_r(e) * e.params.k();
            out.push(RelationReport::equality("neutralized brin-katok = (1 + r k) h_mu", e.slope, g * hm, tol.monte_carlo));
        }
        if let Some(e) = &bundle.neutralized_katok {
            let g = 1.0 + neutral_r(e) * e.params.k();
            out.push(RelationReport::equality("neutralized katok = (1 + r k) h_mu", e.slope, g * hm, tol.counts));
        }
        if let Some(e) = &bundle.alpha_brin_katok {
            let p = e.params;
            out.push(RelationReport::equality(
                "alpha brin-katok * k_alpha = h_mu * k",
                e.slope * p.k_alpha(alpha_of(e)),
                hm * p.k(),
                tol.monte_carlo,
            ));
        }
    }
    if let Some(e) = &bundle.neutralized_topological {
        let g = 1.0 + neutral_r(e) * e.params.k();
        out.push(RelationReport::equality("neutralized topological = (1 + r k) h_top", e.slope, g * h, tol.counts));
    }
    if let Some(e) = &bundle.alpha_topological {
        let p = e.params;
        out.push(RelationReport::equality(
            "alpha topological * k_alpha = h_top * k",
            e.slope * p.k_alpha(alpha_of(e)),
            h * p.k(),
            tol.counts,
        ));
    }
    // topological >= katok >= brin-katok, classical and neutralized
    let chain = |top: &Option<SlopeEstimate>, k: &Option<SlopeEstimate>, bk: &Option<SlopeEstimate>, tag: &str, out: &mut Vec<RelationReport>| {
        if let (Some(t), Some(k)) = (top, k) {
            out.push(RelationReport::at_most(format!("{tag}katok <= {tag}topological"), k.slope, t.slope, tol.counts));
        }
        if let (Some(k), Some(b)) = (k, bk) {
            out.push(RelationReport::at_most(format!("{tag}brin-katok <= {tag}katok"), b.slope, k.slope, tol.counts));
        }
    };
    chain(&bundle.spanning, &bundle.katok, &bundle.brin_katok, "", &mut out);
    chain(
        &bundle.neutralized_topological,
        &bundle.neutralized_katok,
        &bundle.neutralized_brin_katok,
        "neutralized ",
        &mut out,
    );
    if let Some(s) = &bundle.one_sided {
        let lb = s.dimension.params.b.ln();
        out.push(RelationReport::equality("one-sided entropy = h_top", s.entropy.slope, h, tol.counts));
        out.push(RelationReport::equality("one-sided dimension = h_top / ln b", s.dimension.slope, h / lb, tol.counts));
        out.push(RelationReport::equality(
            "one-sided alpha entropy = dimension * (alpha + ln b)",
            s.alpha_entropy.slope,
            s.alpha_target,
            tol.counts,
        ));
        if let (Some(m), Some(hm)) = (&s.alpha_measure, bundle.h_mu) {
            out.push(RelationReport::equality(
                "one-sided alpha brin-katok = h_mu (alpha + ln b) / ln b",
                m.slope,
                hm * (s.alpha + lb) / lb,
                tol.monte_carlo,
            ));
        }
    }
    Ok(out)
}

/// Which side of the balance is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Given {
    R(f64),
    Alpha(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Balance {
    pub a: f64,
    pub b: f64,
    pub r: f64,
    pub alpha: f64,
    /// `r + 1/k` against `1/k_α` at the returned pair.
    pub report: RelationReport,
}

/// Solves `r + 1/k = 1/k_α`, where `k = 1/ln a + 1/ln b` and
/// `k_α = 1/(ln a + α) + 1/(ln b + α)`, for whichever side is missing.
///
/// With `r` given, `1/t = r + 1/k` and
/// `α = (-t(ln a + ln b) + 2 + sqrt(t²(ln a - ln b)² + 4)) / (2t)`,
/// returned only when `α < min{ln a, ln b}`.
pub fn solve_entropy_balance(a: f64, b: f64, given: Given) -> Result<Balance> {
    let params = MetricParams::new(a, b)?;
    let (la, lb) = (a.ln(), b.ln());
    let k = params.k();
    let limit = params.min_log_rate();
    let (r, alpha) = match given {
        Given::Alpha(alpha) => {
            if !(alpha > 0.0 && alpha < limit) {
                return Err(Error::HypothesisViolated(format!(
                    "0 < alpha < min{{ln a, ln b}} = {limit:.6}, got alpha = {alpha}"
                )));
            }
            (1.0 / params.k_alpha(alpha) - 1.0 / k, alpha)
        }
        Given::R(r) => {
            let bound = 3.0 / k;
            if !(r > 0.0 && r < bound) {
                let shown = (bound * 1e5).floor() / 1e5;
                return Err(Error::HypothesisViolated(format!(
                    "0 < r < 3/k = {shown:.5} (k = 1/ln a + 1/ln b), got r = {r}"
                )));
            }
            let t = 1.0 / (r + 1.0 / k);
            let alpha = (-t * (la + lb) + 2.0 + (t * t * (la - lb).powi(2) + 4.0).sqrt()) / (2.0 * t);
            if !(alpha < limit) {
                return Err(Error::NoSolution(format!(
                    "alpha = {alpha:.6} is not below min{{ln a, ln b}} = {limit:.6}"
                )));
            }
            (r, alpha)
        }
    };
    let report = RelationReport::equality("r + 1/k = 1/k_alpha", r + 1.0 / k, 1.0 / params.k_alpha(alpha), 1e-9);
    Ok(Balance { a, b, r, alpha, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_semantics() {
        let r = RelationReport::equality("x", 1.01, 1.0, 0.02);
        assert!(r.pass && (r.rel_error - 0.01).abs() < 1e-12);
        assert!(RelationReport::at_most("x", 0.5, 1.0, 0.0).pass);
        assert!(!RelationReport::at_most("x", 1.1, 1.0, 0.05).pass);
    }

    #[test]
    fn equal_rates_give_alpha_2r() {
        for i in 1..=20 {
            let r = 0.006 * i as f64;
            let s = solve_entropy_balance(1.3, 1.3, Given::R(r)).unwrap();
            assert!((s.alpha - 2.0 * r).abs() < 1e-9);
        }
        let s = solve_entropy_balance(1.3, 1.3, Given::R(0.05)).unwrap();
        assert!((s.alpha - 0.1).abs() < 1e-12);
        let back = solve_entropy_balance(1.3, 1.3, Given::Alpha(0.1)).unwrap();
        assert!((back.r - 0.05).abs() < 1e-12);
    }

    #[test]
    fn unequal_round_trip_and_no_solution() {
        for alpha in [0.01, 0.05, 0.1, 0.2, 0.25] {
            let s = solve_entropy_balance(1.3, 1.9, Given::Alpha(alpha)).unwrap();
            assert!(s.report.pass);
            let t = solve_entropy_balance(1.3, 1.9, Given::R(s.r)).unwrap();
            assert!((t.alpha - alpha).abs() < 1e-9);
        }
        match solve_entropy_balance(1.3, 1.9, Given::R(0.3)) {
            Err(Error::NoSolution(_)) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(solve_entropy_balance(1.3, 1.3, Given::R(0.5)), Err(Error::HypothesisViolated(_))));
        assert!(matches!(solve_entropy_balance(1.3, 1.3, Given::Alpha(0.3)), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn mismatched_params_rejected() {
        let full = ShiftSpace::full(2).unwrap();
        let p1 = MetricParams::new(1.3, 1.3).unwrap();
        let p2 = MetricParams::new(1.5, 1.3).unwrap();
        let range = NmRange::default_entropy();
        let b = Bundle {
            h_top: 2f64.ln(),
            box_dimension: Some(box_dimension(&full, &p1, &estimate::default_ladder()).unwrap()),
            spanning: Some(topological_entropy_spanning(&full, &p2, 0.9, &range).unwrap()),
            ..Default::default()
        };
        assert!(matches!(verify_identities(&b, &Tolerances::default()), Err(Error::IncompatibleInputs(_))));
    }

    #[test]
    fn full_shift_topological_bundle() {
        let full = ShiftSpace::full(2).unwrap();
        let p = MetricParams::new(1.3, 1.3).unwrap();
        let b = Bundle::compute(&full, None, &p, &BundleConfig::default()).unwrap();
        let reports = verify_identities(&b, &Tolerances::default()).unwrap();
        assert!(reports.len() >= 6);
        for r in reports {
            assert!(r.pass, "{r:?}");
        }
    }
}
