//! Disagreement times, the expansion function ρ, chain metrization on finite
//! samples and the Mather-style adapted metric d̃.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::inv_pow;
use crate::shift::{Point, ShiftSpace};

/// Absolute slack for inequality checks on distances in `[0, 1]`.
pub const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    TwoSided,
    OneSided,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-sided" => Ok(Mode::TwoSided),
            "one-sided" => Ok(Mode::OneSided),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Parameters of ρ. The base metric is `2^{-min{|i| : x_i != y_i}}` with
/// expansive constant `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricParams {
    pub a: f64,
    pub b: f64,
    pub epsilon: f64,
    pub mode: Mode,
}

impl MetricParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        Self::with(a, b, 0.5, Mode::TwoSided)
    }

    /// One-sided mode; `a` is carried along but never used.
    pub fn one_sided(b: f64) -> Result<Self> {
        Self::with(b, b, 0.5, Mode::OneSided)
    }

    pub fn with(a: f64, b: f64, epsilon: f64, mode: Mode) -> Result<Self> {
        if !(b > 1.0 && b.is_finite()) || (mode == Mode::TwoSided && !(a > 1.0 && a.is_finite())) {
            return Err(Error::HypothesisViolated(format!(
                "expansion rates must satisfy a > 1 and b > 1 (got a = {a}, b = {b})"
            )));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::HypothesisViolated(format!(
                "expansive constant must lie in (0, 1), got {epsilon}"
            )));
        }
        Ok(Self { a, b, epsilon, mode })
    }

    /// `1/ln a + 1/ln b`, or `1/ln b` in one-sided mode.
    pub fn k(&self) -> f64 {
        match self.mode {
            Mode::TwoSided => 1.0 / self.a.ln() + 1.0 / self.b.ln(),
            Mode::OneSided => 1.0 / self.b.ln(),
        }
    }

    /// `1/(ln a + α) + 1/(ln b + α)`, or `1/(ln b + α)` one-sided.
    pub fn k_alpha(&self, alpha: f64) -> f64 {
        match self.mode {
            Mode::TwoSided => 1.0 / (self.a.ln() + alpha) + 1.0 / (self.b.ln() + alpha),
            Mode::OneSided => 1.0 / (self.b.ln() + alpha),
        }
    }

    /// `min(ln a, ln b)`; just `ln b` one-sided.
    pub fn min_log_rate(&self) -> f64 {
        match self.mode {
            Mode::TwoSided => self.a.ln().min(self.b.ln()),
            Mode::OneSided => self.b.ln(),
        }
    }

    /// Largest `k` with `2^{-k} > ε`: the base distance exceeds ε exactly
    /// when the points disagree somewhere in `[-kappa, kappa]`.
    pub fn kappa(&self) -> u64 {
        let mut k = 0;
        while inv_pow(2.0, k + 1) > self.epsilon {
            k += 1;
        }
        k
    }

    /// Cylinder calculus needs `n^±` to be plain first-disagreement indices.
    pub fn require_first_disagreement(&self) -> Result<()> {
        if self.kappa() != 0 {
            return Err(Error::HypothesisViolated(format!(
                "cylinder windows need expansive constant 1/2 <= epsilon < 1, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// The constraint `a, b <= β` under which the chain metrization applies.
    pub fn require_frink_range(&self, beta: f64) -> Result<()> {
        let hi = match self.mode {
            Mode::TwoSided => self.a.max(self.b),
            Mode::OneSided => self.b,
        };
        if hi > beta {
            return Err(Error::HypothesisViolated(format!(
                "chain metrization needs 1 < a, b <= beta = {beta} (got a = {}, b = {})",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DisagreementTimes {
    /// Exact value when resolved, otherwise the first index past the
    /// searchable window (a lower bound on the true value).
    pub n_plus: u64,
    pub n_minus: u64,
    pub resolved: (bool, bool),
}

impl DisagreementTimes {
    pub fn coincident(&self) -> bool {
        !self.resolved.0 && !self.resolved.1
    }
}

/// Least `d >= -kappa` (stepping away from 0 in direction `dir`) with a
/// disagreement, searched up to `limit` steps away; `None` if none found.
#[inline]
fn first_disagreement(x: &Point, y: &Point, dir: i64, kappa: i64, limit: i64) -> Option<i64> {
    let mut j = -kappa;
    while j <= limit {
        let idx = dir * j;
        if x.at(idx) != y.at(idx) {
            return Some(j);
        }
        j += 1;
    }
    None
}

pub fn disagreement_times(x: &Point, y: &Point, params: &MetricParams) -> Result<DisagreementTimes> {
    if x.space() != y.space() {
        return Err(Error::DifferentSpaces);
    }
    let kappa = params.kappa() as i64;
    let fwd = x.hi().min(y.hi());
    let bwd = (-x.lo()).min(-y.lo());
    if fwd < kappa || bwd < kappa {
        return Err(Error::HorizonExceeded {
            index: kappa,
            lo: -bwd,
            hi: fwd,
        });
    }
    let (n_plus, rp) = match first_disagreement(x, y, 1, kappa, fwd) {
        Some(d) => ((d - kappa).max(0) as u64, true),
        None => ((fwd - kappa + 1) as u64, false),
    };
    let (n_minus, rm) = match first_disagreement(x, y, -1, kappa, bwd) {
        Some(d) => ((d - kappa).max(0) as u64, true),
        None => ((bwd - kappa + 1) as u64, false),
    };
    Ok(DisagreementTimes {
        n_plus,
        n_minus,
        resolved: (rp, rm),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoKind {
    Exact,
    /// A horizon-limited term could exceed the resolved one; the value is
    /// only an upper bound.
    UpperBound,
    /// Agreement on the whole common window, read as literal equality.
    Coincident,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rho {
    pub value: f64,
    pub kind: RhoKind,
}

impl Rho {
    pub fn is_exact(&self) -> bool {
        self.kind != RhoKind::UpperBound
    }
}

/// ρ from precomputed disagreement times.
///
/// An unresolved side contributes its bound `rate^{-saturated}`. If the
/// resolved side dominates that bound the value is exact.
pub fn rho_from_times(t: &DisagreementTimes, params: &MetricParams) -> Rho {
    let plus = (inv_pow(params.b, t.n_plus), t.resolved.0);
    let minus = match params.mode {
        Mode::TwoSided => (inv_pow(params.a, t.n_minus), t.resolved.1),
        Mode::OneSided => (0.0, true),
    };
    if !plus.1 && (!minus.1 || params.mode == Mode::OneSided) {
        return Rho {
            value: 0.0,
            kind: RhoKind::Coincident,
        };
    }
    let (mut exact, mut bound) = (0.0f64, 0.0f64);
    for (v, resolved) in [plus, minus] {
        if resolved {
            exact = exact.max(v);
        } else {
            bound = bound.max(v);
        }
    }
    if exact >= bound {
        Rho {
            value: exact,
            kind: RhoKind::Exact,
        }
    } else {
        Rho {
            value: bound,
            kind: RhoKind::UpperBound,
        }
    }
}

pub fn rho(x: &Point, y: &Point, params: &MetricParams) -> Result<Rho> {
    Ok(rho_from_times(&disagreement_times(x, y, params)?, params))
}

/// The uniform separation time `m` and `β = 2^{1/m}`.
///
/// Base distance above `ε/2` puts a disagreement within `κ + 1` of the
/// origin, so one of `n^+`, `n^-` is at most 1.
pub fn uniform_expansivity_bound(params: &MetricParams) -> (u64, f64) {
    let mut k = 0;
    while inv_pow(2.0, k + 1) > params.epsilon / 2.0 {
        k += 1;
    }
    let m = (k - params.kappa()).max(1);
    (m, 2f64.powf(1.0 / m as f64))
}

/// A finite set of points (or abstract labels) with its ρ matrix.
#[derive(Debug, Clone)]
pub struct FiniteSample {
    pub points: Vec<Point>,
    n: usize,
    rho: Vec<f64>,
    inexact: usize,
}

impl FiniteSample {
    pub fn from_points(points: Vec<Point>, params: &MetricParams) -> Result<Self> {
        let n = points.len();
        let mut rho_m = vec![0.0; n * n];
        let mut inexact = 0;
        for i in 0..n {
            for j in i + 1..n {
                let r = rho(&points[i], &points[j], params)?;
                if !r.is_exact() {
                    inexact += 1;
                }
                rho_m[i * n + j] = r.value;
                rho_m[j * n + i] = r.value;
            }
        }
        Ok(Self {
            points,
            n,
            rho: rho_m,
            inexact,
        })
    }

    /// A labelled dissimilarity: symmetric, zero diagonal, nonnegative.
    pub fn from_dissimilarity(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        let mut rho_m = vec![0.0; n * n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadMatrix("dissimilarity must be square".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v >= 0.0 && v.is_finite()) || (i == j && v != 0.0) || v != matrix[j][i] {
                    return Err(Error::BadMatrix(format!(
                        "entry ({i}, {j}) = {v} breaks symmetry, sign or zero diagonal"
                    )));
                }
                rho_m[i * n + j] = v;
            }
        }
        Ok(Self {
            points: Vec::new(),
            n,
            rho: rho_m,
            inexact: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn rho(&self, i: usize, j: usize) -> f64 {
        self.rho[i * self.n + j]
    }

    /// Number of off-diagonal pairs whose ρ is only a bound.
    pub fn inexact_pairs(&self) -> usize {
        self.inexact
    }

    fn require_exact(&self) -> Result<()> {
        if self.inexact > 0 {
            return Err(Error::SaturatedDistances(self.inexact));
        }
        Ok(())
    }
}

/// Triples `(i, j, k)` with `ρ(i,j) > K·max{ρ(i,k), ρ(k,j)} + 1e-12`, `i < j`.
pub fn check_quasi_metric(sample: &FiniteSample, k: f64) -> Result<Vec<(usize, usize, usize)>> {
    sample.require_exact()?;
    let n = sample.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let rij = sample.rho(i, j);
            for m in 0..n {
                if m == i || m == j {
                    continue;
                }
                if rij > k * sample.rho(i, m).max(sample.rho(m, j)) + SLACK {
                    out.push((i, j, m));
                }
            }
        }
    }
    Ok(out)
}

/// Dense symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Triples with `D(i,j) > D(i,k) + D(k,j) + 1e-12`.
    pub fn triangle_violations(&self) -> usize {
        let n = self.n;
        let mut bad = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j) > self.get(i, k) + self.get(k, j) + SLACK {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }
}

/// Shortest paths on the complete ρ-weighted graph, without preconditions.
pub fn chain_metric(sample: &FiniteSample) -> DistanceMatrix {
    let n = sample.len();
    let mut d = sample.rho.clone();
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            for j in 0..n {
                let via = dik + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// Chain metric on a sample satisfying the 2-quasi-metric inequality.
///
/// Fails if that inequality does not hold, or if the sandwich
/// `D <= ρ <= 4D` breaks afterwards.
pub fn frink_metrize(sample: &FiniteSample) -> Result<DistanceMatrix> {
    let violations = check_quasi_metric(sample, 2.0)?;
    if !violations.is_empty() {
        return Err(Error::QuasiMetricViolated(violations.len()));
    }
    let n = sample.len();
    let out = chain_metric(sample);
    for i in 0..n {
        for j in 0..n {
            let r = sample.rho(i, j);
            if out.get(i, j) > r + SLACK || r > 4.0 * out.get(i, j) + SLACK {
                return Err(Error::SandwichViolated(i, j));
            }
        }
    }
    Ok(out)
}

/// Whether ρ on the sample is an ultrametric.
///
/// Compares ρ with its subdominant ultrametric, the largest edge on the
/// minimum-spanning-tree path; the two agree exactly when ρ is ultrametric.
/// Runs in `O(n²)`.
pub fn is_ultrametric(sample: &FiniteSample) -> bool {
    let n = sample.len();
    if n <= 2 {
        return true;
    }
    // Prim on the dense matrix.
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    best[0] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&p, &q| best[p].total_cmp(&best[q]))
            .expect("a vertex remains");
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            let w = sample.rho(u, parent[u]);
            adj[u].push((parent[u], w));
            adj[parent[u]].push((u, w));
        }
        for v in 0..n {
            if !in_tree[v] && sample.rho(u, v) < best[v] {
                best[v] = sample.rho(u, v);
                parent[v] = u;
            }
        }
    }
    let mut path_max = vec![0.0f64; n];
    let mut stack = Vec::with_capacity(n);
    for root in 0..n {
        path_max[root] = 0.0;
        stack.clear();
        stack.push((root, usize::MAX));
        while let Some((u, from)) = stack.pop() {
            for &(v, w) in &adj[u] {
                if v != from {
                    path_max[v] = path_max[u].max(w);
                    stack.push((v, u));
                }
            }
        }
        for v in 0..n {
            if (path_max[v] - sample.rho(root, v)).abs() > SLACK {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatherParams {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub n0: u64,
    pub k1: f64,
    pub k2: f64,
    /// Escape constant reported by [`verify_hyperbolicity`]; `None` until
    /// calibrated or when no tested pair needed it.
    pub eps_prime: Option<f64>,
}

fn scaled_rate(rate: f64, n0: u64) -> f64 {
    4f64.powf(-1.0 / n0 as f64) * rate
}

/// Smallest `n0` with `4^{-1/n0}·a > a - γ` and `4^{-1/n0}·b > b - γ`.
pub fn mather_n0(params: &MetricParams, gamma: f64) -> Result<MatherParams> {
    let (a, b) = match params.mode {
        Mode::TwoSided => (params.a, params.b),
        Mode::OneSided => (params.b, params.b),
    };
    let limit = (a - 1.0).min(b - 1.0);
    if !(gamma > 0.0 && gamma < limit - SLACK) {
        return Err(Error::GammaTooLarge { gamma, limit });
    }
    let need = |rate: f64| 4f64.ln() / (rate / (rate - gamma)).ln();
    let mut n0 = (need(a).max(need(b)).floor() as u64).max(1);
    while n0 > 1 && scaled_rate(a, n0 - 1) > a - gamma && scaled_rate(b, n0 - 1) > b - gamma {
        n0 -= 1;
    }
    while !(scaled_rate(a, n0) > a - gamma && scaled_rate(b, n0) > b - gamma) {
        n0 += 1;
    }
    Ok(MatherParams {
        a,
        b,
        gamma,
        n0,
        k1: scaled_rate(a, n0),
        k2: scaled_rate(b, n0),
        eps_prime: None,
    })
}

/// `d̃` from a callback returning `D(σ^i x, σ^i y)`.
pub fn mather_from<F>(mp: &MatherParams, mut d_at: F) -> Result<f64>
where
    F: FnMut(i64) -> Result<f64>,
{
    let mut best = d_at(0)?;
    for i in 1..mp.n0 {
        let back = d_at(-(i as i64))? / mp.k1.powi(i as i32);
        let fwd = d_at(i as i64)? / mp.k2.powi(i as i32);
        best = best.max(back).max(fwd);
    }
    Ok(best)
}

/// The orbit sample `{σ^i x, σ^i y : |i| <= radius}` with its chain metric.
#[derive(Debug, Clone)]
pub struct OrbitSample {
    radius: i64,
    sample: FiniteSample,
    d: Option<DistanceMatrix>,
    ultrametric: bool,
}

impl OrbitSample {
    /// Builds and metrizes the sample. Ultrametric samples have `D = ρ`
    /// (every chain sum dominates its largest edge); others go through
    /// [`frink_metrize`].
    pub fn build(x: &Point, y: &Point, params: &MetricParams, radius: u64) -> Result<Self> {
        let r = radius as i64;
        let mut points = Vec::with_capacity(2 * (2 * radius as usize + 1));
        for i in -r..=r {
            points.push(x.shift(i)?);
        }
        for i in -r..=r {
            points.push(y.shift(i)?);
        }
        let sample = FiniteSample::from_points(points, params)?;
        sample.require_exact()?;
        let ultrametric = is_ultrametric(&sample);
        let d = if ultrametric {
            None
        } else {
            Some(frink_metrize(&sample)?)
        };
        Ok(Self {
            radius: r,
            sample,
            d,
            ultrametric,
        })
    }

    pub fn is_ultrametric(&self) -> bool {
        self.ultrametric
    }

    pub fn sample(&self) -> &FiniteSample {
        &self.sample
    }

    /// Chain distance between `σ^i x` and `σ^j y`.
    pub fn d_between(&self, i: i64, j: i64) -> Result<f64> {
        for s in [i, j] {
            if s.abs() > self.radius {
                return Err(Error::SampleNotOrbitClosed(s));
            }
        }
        let side = (2 * self.radius + 1) as usize;
        let u = (i + self.radius) as usize;
        let v = side + (j + self.radius) as usize;
        Ok(match &self.d {
            None => self.sample.rho(u, v),
            Some(d) => d.get(u, v),
        })
    }

    /// `D(σ^i x, σ^i y)`.
    pub fn d_shift(&self, i: i64) -> Result<f64> {
        self.d_between(i, i)
    }

    /// `d̃(σ^s x, σ^s y)`.
    pub fn mather(&self, mp: &MatherParams, s: i64) -> Result<f64> {
        mather_from(mp, |i| self.d_shift(s + i))
    }
}

/// `d̃(x, y)` through an orbit sample of radius `n0 - 1`.
pub fn mather_metric(x: &Point, y: &Point, mp: &MatherParams, params: &MetricParams) -> Result<f64> {
    let orbit = OrbitSample::build(x, y, params, mp.n0.saturating_sub(1))?;
    orbit.mather(mp, 0)
}

/// Aggregate outcome of the hyperbolicity checks over a batch of pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicityReport {
    pub pairs: usize,
    /// Pairs whose expansion inequality holds without the escape constant.
    pub expanding_pairs: usize,
    /// Smallest left-hand side among pairs that need the escape; any
    /// `0 < ε' <= eps_prime` makes every tested pair pass.
    pub eps_prime: Option<f64>,
    pub lipschitz_forward_violations: usize,
    pub lipschitz_backward_violations: usize,
    pub sandwich_violations: usize,
    /// Worst `d̃(σx,σy) / (16 b d̃(x,y))` and its backward counterpart.
    pub worst_forward_lipschitz: f64,
    pub worst_backward_lipschitz: f64,
    /// Worst of `d̃ / (4ρ)` and `ρ / (4 d̃)`.
    pub worst_sandwich: f64,
    /// Small-distance regime where expansion must hold outright.
    pub small_threshold: f64,
    pub small_pairs: usize,
    pub small_violations: usize,
    /// The `n = n0` one-step lemma: premise met, and conclusion failures.
    pub one_step_premise: usize,
    pub one_step_violations: usize,
    pub ultrametric_samples: usize,
}

impl HyperbolicityReport {
    pub fn passed(&self) -> bool {
        self.lipschitz_forward_violations == 0
            && self.lipschitz_backward_violations == 0
            && self.sandwich_violations == 0
            && self.small_violations == 0
            && self.one_step_violations == 0
            && self.eps_prime.is_none_or(|e| e > 0.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct PairOutcome {
    expanding: bool,
    lhs: f64,
    fwd_ratio: f64,
    bwd_ratio: f64,
    sandwich: f64,
    small: bool,
    premise: bool,
    one_step_ok: bool,
    ultrametric: bool,
}

fn check_pair(x: &Point, y: &Point, mp: &MatherParams, params: &MetricParams, threshold: f64) -> Result<PairOutcome> {
    let n0 = mp.n0 as i64;
    let orbit = OrbitSample::build(x, y, params, mp.n0)?;
    let here = orbit.mather(mp, 0)?;
    let fwd = orbit.mather(mp, 1)?;
    let bwd = orbit.mather(mp, -1)?;
    let rho_xy = orbit.d_shift(0).and_then(|_| rho(x, y, params))?;
    if !rho_xy.is_exact() {
        return Err(Error::SaturatedDistances(1));
    }
    let rho_xy = rho_xy.value;
    let lhs = (bwd / (mp.a - mp.gamma)).max(fwd / (mp.b - mp.gamma));
    let ratio = |num: f64, den: f64| if den == 0.0 { if num == 0.0 { 0.0 } else { f64::INFINITY } } else { num / den };
    let fwd_ratio = ratio(fwd, 16.0 * mp.b * here);
    let bwd_ratio = ratio(bwd, 16.0 * mp.a * here);
    let sandwich = ratio(here, 4.0 * rho_xy).max(ratio(rho_xy, 4.0 * here));
    let mut inner = 0.0f64;
    for i in -(n0 - 1)..=(n0 - 1) {
        inner = inner.max(orbit.d_shift(i)?);
    }
    let premise = inner <= 0.25 * (1.0 / mp.a).min(1.0 / mp.b);
    let one_step = (orbit.d_shift(n0)? / mp.b.powi(n0 as i32))
        .max(orbit.d_shift(-n0)? / mp.a.powi(n0 as i32));
    let d0 = orbit.d_shift(0)?;
    Ok(PairOutcome {
        expanding: lhs + SLACK >= here,
        lhs,
        fwd_ratio,
        bwd_ratio,
        sandwich,
        small: here < threshold,
        premise,
        one_step_ok: !premise || one_step + SLACK >= 0.25 * d0,
        ultrametric: orbit.is_ultrametric(),
    })
}

/// Checks the adapted-metric inequalities on every pair: expansion up to the
/// escape constant, the Lipschitz bounds `16b` and `16a`, and the sandwich
/// `¼d̃ <= ρ <= 4d̃`.
pub fn verify_hyperbolicity(
    pairs: &[(Point, Point)],
    mp: &MatherParams,
    params: &MetricParams,
) -> Result<HyperbolicityReport> {
    params.require_first_disagreement()?;
    let n0 = mp.n0 as i32;
    let threshold = 0.25 * (mp.k1.powi(-n0 + 1) / mp.a).min(mp.k2.powi(-n0 + 1) / mp.b);
    let outcomes: Vec<Result<PairOutcome>> = pairs
        .par_iter()
        .map(|(x, y)| check_pair(x, y, mp, params, threshold))
        .collect();
    let mut report = HyperbolicityReport {
        pairs: pairs.len(),
        expanding_pairs: 0,
        eps_prime: None,
        lipschitz_forward_violations: 0,
        lipschitz_backward_violations: 0,
        sandwich_violations: 0,
        worst_forward_lipschitz: 0.0,
        worst_backward_lipschitz: 0.0,
        worst_sandwich: 0.0,
        small_threshold: threshold,
        small_pairs: 0,
        small_violations: 0,
        one_step_premise: 0,
        one_step_violations: 0,
        ultrametric_samples: 0,
    };
    for o in outcomes {
        let o = o?;
        if o.expanding {
            report.expanding_pairs += 1;
        } else {
            report.eps_prime = Some(report.eps_prime.map_or(o.lhs, |e: f64| e.min(o.lhs)));
        }
        if o.fwd_ratio > 1.0 + SLACK {
            report.lipschitz_forward_violations += 1;
        }
        if o.bwd_ratio > 1.0 + SLACK {
            report.lipschitz_backward_violations += 1;
        }
        if o.sandwich > 1.0 + SLACK {
            report.sandwich_violations += 1;
        }
        report.worst_forward_lipschitz = report.worst_forward_lipschitz.max(o.fwd_ratio);
        report.worst_backward_lipschitz = report.worst_backward_lipschitz.max(o.bwd_ratio);
        report.worst_sandwich = report.worst_sandwich.max(o.sandwich);
        if o.small {
            report.small_pairs += 1;
            if !o.expanding {
                report.small_violations += 1;
            }
        }
        if o.premise {
            report.one_step_premise += 1;
            if !o.one_step_ok {
                report.one_step_violations += 1;
            }
        }
        if o.ultrametric {
            report.ultrametric_samples += 1;
        }
    }
    Ok(report)
}

/// Pairs `(x, y)` where `y` keeps `x` on a random block `[-u, v]` and is
/// redrawn elsewhere, with `u, v` uniform in `0..=max_agree`. A block with
/// `u = v = 0` still shares index 0; every tenth pair instead uses an
/// independent `y`.
pub fn sample_pairs(space: &ShiftSpace, count: usize, horizon: usize, max_agree: u64, seed: u64) -> Vec<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let x = space.sample_point(horizon, rng.random());
            if k % 10 == 9 {
                return (x, space.sample_point(horizon, rng.random()));
            }
            let u = rng.random_range(0..=max_agree) as i64;
            let v = rng.random_range(0..=max_agree) as i64;
            let y = x
                .resample_outside(-u, v, rng.random())
                .expect("agreement block lies inside the window");
            (x, y)
        })
        .collect()
}
