//! Balls of ρ as cylinders.
//!
//! Every ball shape used by the estimators (open balls, two-sided Bowen
//! balls, balls with radius shrinking in the window length, and balls whose
//! per-iterate radius decays exponentially) is exactly a cylinder fixing a
//! contiguous block of coordinates. This module computes those blocks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{MetricParams, Mode};
use crate::numeric::inv_pow;
use crate::shift::{Point, Word};

/// Fixed coordinates `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CylinderIndex {
    pub lo: i64,
    pub hi: i64,
}

impl CylinderIndex {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty cylinder window [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `self ⊇ other` as index sets, i.e. the cylinder of `self` is the
    /// smaller set.
    pub fn covers(&self, other: &CylinderIndex) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The horizon check every `*_to_cylinder` call performs.
    pub fn fit(self, x: &Point) -> Result<Self> {
        if !x.covers(self.lo, self.hi) {
            let index = if self.lo < x.lo() { self.lo } else { self.hi };
            return Err(Error::HorizonExceeded {
                index,
                lo: x.lo(),
                hi: x.hi(),
            });
        }
        Ok(self)
    }

    /// The word of `x` labelling this cylinder.
    pub fn word(&self, x: &Point) -> Result<Word> {
        x.word(self.lo, self.hi)
    }

    /// Whether `y` lies in the cylinder of `x`.
    pub fn contains(&self, x: &Point, y: &Point) -> Result<bool> {
        self.fit(x)?;
        self.fit(y)?;
        Ok((self.lo..=self.hi).all(|i| x.at(i) == y.at(i)))
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    Ok(())
}

/// The integer `p` with `rate^{-p} < r <= rate^{-(p-1)}`.
///
/// The floating estimate `⌊log_rate(1/r)⌋ + 1` is corrected against the
/// brackets evaluated with [`inv_pow`], so membership tests that compare
/// `inv_pow(rate, n) < r` agree with the returned window exactly.
pub fn p_of_r(r: f64, b: f64) -> Result<u64> {
    check_radius(r)?;
    let mut p = (((1.0 / r).ln() / b.ln()).floor() as u64 + 1).max(1);
    while p > 1 && inv_pow(b, p - 1) < r {
        p -= 1;
    }
    while inv_pow(b, p) >= r {
        p += 1;
    }
    Ok(p)
}

pub fn q_of_r(r: f64, a: f64) -> Result<u64> {
    p_of_r(r, a)
}

fn pq(r: f64, params: &MetricParams) -> Result<(i64, i64)> {
    params.require_first_disagreement()?;
    let p = p_of_r(r, params.b)? as i64;
    let q = match params.mode {
        Mode::TwoSided => q_of_r(r, params.a)? as i64,
        Mode::OneSided => 0,
    };
    Ok((p, q))
}

fn window(lo: i64, hi: i64, params: &MetricParams) -> CylinderIndex {
    match params.mode {
        Mode::TwoSided => CylinderIndex::new(lo, hi),
        Mode::OneSided => CylinderIndex::new(0, hi),
    }
}

/// Radii `r_j = θ^j` for `j = j_min..=j_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusLadder {
    pub r_values: Vec<f64>,
}

impl RadiusLadder {
    pub fn new(r_values: Vec<f64>) -> Result<Self> {
        if r_values.is_empty() {
            return Err(Error::HypothesisViolated("radius ladder is empty".into()));
        }
        for &r in &r_values {
            check_radius(r)?;
        }
        if r_values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::HypothesisViolated(
                "radius ladder must be strictly decreasing".into(),
            ));
        }
        Ok(Self { r_values })
    }

    pub fn geometric(theta: f64, j_min: u32, j_max: u32) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) || j_min < 1 || j_max < j_min {
            return Err(Error::HypothesisViolated(format!(
                "ladder needs 0 < theta < 1 and 1 <= j_min <= j_max (got {theta}, {j_min}, {j_max})"
            )));
        }
        Self::new((j_min..=j_max).map(|j| theta.powi(j as i32)).collect())
    }

    /// `2^{-j}`, `j = j_min..=j_max`.
    pub fn dyadic(j_min: u32, j_max: u32) -> Result<Self> {
        Self::geometric(0.5, j_min, j_max)
    }

    pub fn len(&self) -> usize {
        self.r_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_values.is_empty()
    }
}

/// Window of the open ball `B_ρ(x, r)`: `[-(q-1), p-1]`.
pub fn ball_window(r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    let (p, q) = pq(r, params)?;
    Ok(window(-(q - 1), p - 1, params))
}

pub fn ball_to_cylinder(x: &Point, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    ball_window(r, params)?.fit(x)
}

/// Window of the Bowen ball over iterates `-n..=m`: `[-(q+n-1), p+m-1]`.
pub fn bowen_window(n: u64, m: u64, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    let (p, q) = pq(r, params)?;
    Ok(window(-(q + n as i64 - 1), p + m as i64 - 1, params))
}

pub fn bowen_ball_to_cylinder(x: &Point, n: u64, m: u64, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    bowen_window(n, m, r, params)?.fit(x)
}

/// `e^{-(n+m) r}`, the radius of the neutralized ball.
pub fn neutralized_radius(n: u64, m: u64, r: f64) -> f64 {
    (-((n + m) as f64) * r).exp()
}

/// Bowen window at radius `e^{-(n+m) r}`.
pub fn neutralized_window(n: u64, m: u64, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    if !(r > 0.0) || n + m == 0 {
        return Err(Error::RadiusOutOfRange(neutralized_radius(n, m, r)));
    }
    bowen_window(n, m, neutralized_radius(n, m, r), params)
}

pub fn neutralized_ball_to_cylinder(x: &Point, n: u64, m: u64, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    neutralized_window(n, m, r, params)?.fit(x)
}

pub fn check_alpha(alpha: f64, params: &MetricParams) -> Result<()> {
    let limit = params.min_log_rate();
    if !(alpha >= 0.0 && alpha < limit) {
        return Err(Error::AlphaTooLarge { alpha, limit });
    }
    Ok(())
}

/// Window of the ball `{y : ρ(σ^i x, σ^i y) < e^{-|i|α} r, -n <= i <= m}`.
///
/// For `α < min(ln a, ln b)` the union of the per-iterate windows is
/// `[-n-(q(e^{-nα}r)-1), m+p(e^{-mα}r)-1]`: the extreme iterates dominate.
pub fn alpha_window(n: u64, m: u64, alpha: f64, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    check_alpha(alpha, params)?;
    check_radius(r)?;
    params.require_first_disagreement()?;
    let hi = m as i64 + p_of_r((-(m as f64) * alpha).exp() * r, params.b)? as i64 - 1;
    let lo = match params.mode {
        Mode::TwoSided => -(n as i64) - (q_of_r((-(n as f64) * alpha).exp() * r, params.a)? as i64 - 1),
        Mode::OneSided => 0,
    };
    Ok(CylinderIndex::new(lo, hi))
}

pub fn alpha_ball_to_cylinder(x: &Point, n: u64, m: u64, alpha: f64, r: f64, params: &MetricParams) -> Result<CylinderIndex> {
    alpha_window(n, m, alpha, r, params)?.fit(x)
}

/// `(n, m)` with `B_ρ(x, r) = B_ρ(x, -n, m, r1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BowenMatch {
    pub n: u64,
    pub m: u64,
    /// `(m + n) / ln(1/r)`.
    pub ratio: f64,
}

pub fn open_ball_as_bowen(r: f64, r1: f64, params: &MetricParams) -> Result<BowenMatch> {
    check_radius(r)?;
    check_radius(r1)?;
    if r > r1 {
        return Err(Error::RadiiOutOfOrder { r, r1 });
    }
    let (p, q) = pq(r, params)?;
    let (p1, q1) = pq(r1, params)?;
    let (n, m) = ((q - q1) as u64, (p - p1) as u64);
    Ok(BowenMatch {
        n,
        m,
        ratio: (m + n) as f64 / (1.0 / r).ln(),
    })
}

/// Integer solution matching an open ball with neutralized Bowen balls.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeutralizedMatch {
    pub m2: u64,
    pub n2: u64,
    pub j: i64,
    pub h: u64,
    /// `(m2 + n2) / ln(1/r)`.
    pub ratio: f64,
    /// The limit `k / (1 + r2 k)`.
    pub limit: f64,
    /// Every integer `h` in the admissible interval with its residual `j`
    /// and whether it gives positive `m2, n2`.
    pub candidates: Vec<(u64, i64, bool)>,
    /// Whether all candidates with positive solutions share one `j`.
    pub j_unique: bool,
}

fn neutral_terms(r: f64, h: u64, r2: f64, params: &MetricParams) -> Result<(i64, i64, i64)> {
    let s = (-(h as f64) * r2).exp();
    let dp = p_of_r(r, params.b)? as i64 - p_of_r(s, params.b)? as i64;
    let dq = q_of_r(r, params.a)? as i64 - q_of_r(s, params.a)? as i64;
    let j = dp + dq - h as i64;
    Ok((dp, dq - j, j))
}

pub fn neutralized_match(r: f64, r2: f64, params: &MetricParams) -> Result<NeutralizedMatch> {
    if params.mode != Mode::TwoSided {
        return Err(Error::HypothesisViolated(
            "neutralized matching is defined for two-sided rates".into(),
        ));
    }
    check_radius(r)?;
    let k = params.k();
    if !(r2 > 0.0 && r2 < 3.0 / k) {
        return Err(Error::ConstraintViolated(format!(
            "0 < r2 < 3/k = {:.5} (k = 1/ln a + 1/ln b), got r2 = {r2}",
            3.0 / k
        )));
    }
    if !(r < (-2.0 * r2).exp()) {
        return Err(Error::NoIntegerSolution(r));
    }
    let c = k * (1.0 / r).ln();
    let lo = (c - 2.0) / (1.0 + k * r2);
    let hi = (c + 2.0) / (1.0 + k * r2);
    let first = (lo.floor() + 1.0).max(1.0) as u64;
    let mut candidates = Vec::new();
    let mut chosen = None;
    let mut h = first;
    while (h as f64) < hi {
        // Radii e^{-h r2} must stay above r for positive differences.
        let (m2, n2, j) = neutral_terms(r, h, r2, params)?;
        let ok = m2 > 0 && n2 > 0 && j.abs() <= 2;
        candidates.push((h, j, ok));
        if ok && chosen.is_none() {
            chosen = Some((h, m2 as u64, n2 as u64, j));
        }
        h += 1;
    }
    let (h, m2, n2, j) = chosen.ok_or(Error::NoIntegerSolution(r))?;
    let js: Vec<i64> = candidates.iter().filter(|c| c.2).map(|c| c.1).collect();
    Ok(NeutralizedMatch {
        m2,
        n2,
        j,
        h,
        ratio: (m2 + n2) as f64 / (1.0 / r).ln(),
        limit: k / (1.0 + r2 * k),
        j_unique: js.iter().all(|&v| v == js[0]),
        candidates,
    })
}

/// Neutralized windows around `B_ρ(x, r)`: the ball with `(n2+2, m2)` is
/// inside and the one with `(n2-2, m2)` contains it. As cylinders,
/// inclusion of sets reverses inclusion of windows.
pub fn neutralized_sandwich(
    mt: &NeutralizedMatch,
    r: f64,
    r2: f64,
    params: &MetricParams,
) -> Result<(CylinderIndex, CylinderIndex, CylinderIndex)> {
    let ball = ball_window(r, params)?;
    let inner = neutralized_window(mt.n2 + 2, mt.m2, r2, params)?;
    let outer = neutralized_window(mt.n2.saturating_sub(2), mt.m2, r2, params)?;
    Ok((inner, ball, outer))
}

/// `(n3, m3)` for the decaying-radius ball: the largest indices whose
/// windows stay inside the window of `B_ρ(x, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaMatch {
    pub n3: u64,
    pub m3: u64,
    /// `(m3 + n3) / ln(1/r)`.
    pub ratio: f64,
    /// The limit `1/(ln a + α) + 1/(ln b + α)`.
    pub limit: f64,
}

pub fn alpha_match(r: f64, alpha: f64, r3: f64, params: &MetricParams) -> Result<AlphaMatch> {
    check_radius(r3)?;
    check_radius(r)?;
    if r >= r3 {
        return Err(Error::RadiiOutOfOrder { r, r1: r3 });
    }
    let ball = ball_window(r, params)?;
    let mut m3 = 0;
    while alpha_window(0, m3 + 1, alpha, r3, params)?.hi <= ball.hi {
        m3 += 1;
    }
    let mut n3 = 0;
    if params.mode == Mode::TwoSided {
        while alpha_window(n3 + 1, 0, alpha, r3, params)?.lo >= ball.lo {
            n3 += 1;
        }
    }
    Ok(AlphaMatch {
        n3,
        m3,
        ratio: (m3 + n3) as f64 / (1.0 / r).ln(),
        limit: params.k_alpha(alpha),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::rho;
    use crate::shift::ShiftSpace;
    use proptest::prelude::*;

    fn params() -> MetricParams {
        MetricParams::new(1.3, 1.3).unwrap()
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_of_r(0.1, 1.3).unwrap(), 9);
        assert!(1.3f64.powi(-9) < 0.1 && 0.1 <= 1.3f64.powi(-8));
        assert_eq!(p_of_r(inv_pow(1.3, 5), 1.3).unwrap(), 6);
        assert_eq!(p_of_r(0.9999, 2.0).unwrap(), 1);
        assert_eq!(p_of_r(1.0, 2.0), Err(Error::RadiusOutOfRange(1.0)));
        assert_eq!(p_of_r(0.0, 2.0), Err(Error::RadiusOutOfRange(0.0)));
    }

    #[test]
    fn window_examples() {
        let p = params();
        assert_eq!(ball_window(0.1, &p).unwrap(), CylinderIndex::new(-8, 8));
        assert_eq!(ball_window(0.1, &p).unwrap().len(), 17);
        assert_eq!(ball_window(0.99, &p).unwrap(), CylinderIndex::new(0, 0));
        assert_eq!(bowen_window(0, 0, 0.1, &p).unwrap(), ball_window(0.1, &p).unwrap());
        assert_eq!(bowen_window(10, 10, 0.1, &p).unwrap(), CylinderIndex::new(-18, 18));
        assert_eq!(p_of_r((-1f64).exp(), 1.3).unwrap(), 4);
        assert_eq!(
            neutralized_window(10, 10, 0.05, &p).unwrap(),
            CylinderIndex::new(-13, 13)
        );
        assert!(matches!(
            neutralized_window(0, 0, 0.05, &p),
            Err(Error::RadiusOutOfRange(_))
        ));
        assert_eq!(
            alpha_window(10, 10, 0.1, 0.5, &p).unwrap(),
            CylinderIndex::new(-16, 16)
        );
        assert_eq!(
            alpha_window(0, 0, 0.3, 0.5, &p),
            Err(Error::AlphaTooLarge { alpha: 0.3, limit: 1.3f64.ln() })
        );
    }

    #[test]
    fn horizon_is_checked() {
        let x = ShiftSpace::full(2).unwrap().sample_point(10, 1);
        let p = params();
        assert!(ball_to_cylinder(&x, 0.1, &p).is_ok());
        assert!(matches!(
            bowen_ball_to_cylinder(&x, 10, 10, 0.1, &p),
            Err(Error::HorizonExceeded { .. })
        ));
    }

    #[test]
    fn open_ball_match_examples() {
        let p = params();
        let same = open_ball_as_bowen(0.3, 0.3, &p).unwrap();
        assert_eq!((same.n, same.m), (0, 0));
        let m = open_ball_as_bowen(0.5, 0.9, &p).unwrap();
        assert_eq!((p_of_r(0.5, 1.3).unwrap(), p_of_r(0.9, 1.3).unwrap()), (3, 1));
        assert_eq!(m.m, 2);
        let r = 2f64.powi(-30);
        let deep = open_ball_as_bowen(r, 0.9, &p).unwrap();
        assert_eq!(deep.m, p_of_r(r, 1.3).unwrap() - 1);
        assert_eq!(deep.n, deep.m);
        assert!((deep.ratio / p.k() - 1.0).abs() < 0.01);
        assert!((p.k() - 7.62299).abs() < 1e-5);
        assert!(matches!(
            open_ball_as_bowen(0.5, 0.4, &p),
            Err(Error::RadiiOutOfOrder { .. })
        ));
        // Window identity B(r) = B(-n, m, r1).
        for &(r, r1) in &[(0.01, 0.9), (0.2, 0.5), (1e-7, 0.35)] {
            let bm = open_ball_as_bowen(r, r1, &p).unwrap();
            assert_eq!(bowen_window(bm.n, bm.m, r1, &p).unwrap(), ball_window(r, &p).unwrap());
        }
    }

    #[test]
    fn neutralized_match_examples() {
        let p = params();
        let r = 2f64.powi(-40);
        let mt = neutralized_match(r, 0.05, &p).unwrap();
        assert!(mt.j.abs() <= 2);
        assert_eq!(mt.h, mt.m2 + mt.n2);
        assert!((mt.limit - 5.5193).abs() < 1e-3);
        assert!((mt.ratio / mt.limit - 1.0).abs() < 0.02);
        let (inner, ball, outer) = neutralized_sandwich(&mt, r, 0.05, &p).unwrap();
        assert!(inner.covers(&ball) && ball.covers(&outer));
        assert!(matches!(
            neutralized_match(r, 0.5, &p),
            Err(Error::ConstraintViolated(_))
        ));
        assert!(matches!(
            neutralized_match(0.95, 0.05, &p),
            Err(Error::NoIntegerSolution(_))
        ));
    }

    #[test]
    fn ratio_limits() {
        let p = params();
        let r = 2f64.powi(-40);
        let (pp, qq) = (p_of_r(r, 1.3).unwrap(), q_of_r(r, 1.3).unwrap());
        let ratio = (pp + qq) as f64 / (1.0 / r).ln();
        assert!((ratio / p.k() - 1.0).abs() < 0.01);
        let am = alpha_match(r, 0.1, 0.9, &p).unwrap();
        assert!((am.ratio / am.limit - 1.0).abs() < 0.01, "{am:?}");
    }

    #[test]
    fn one_sided_windows_are_forward() {
        let one = MetricParams::one_sided(1.3).unwrap();
        assert_eq!(ball_window(0.1, &one).unwrap(), CylinderIndex::new(0, 8));
        assert_eq!(bowen_window(5, 3, 0.1, &one).unwrap(), CylinderIndex::new(0, 11));
        assert_eq!(alpha_window(7, 10, 0.1, 0.5, &one).unwrap(), CylinderIndex::new(0, 16));
    }

    fn union_alpha(n: u64, m: u64, alpha: f64, r: f64, p: &MetricParams) -> CylinderIndex {
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for i in -(n as i64)..=(m as i64) {
            let s = (-(i.unsigned_abs() as f64) * alpha).exp() * r;
            let w = ball_window(s, p).unwrap();
            lo = lo.min(w.lo + i);
            hi = hi.max(w.hi + i);
        }
        CylinderIndex::new(lo, hi)
    }

    proptest! {
        #[test]
        fn alpha_window_is_union(n in 0u64..40, m in 0u64..40, alpha in 0.0f64..0.26, r in 0.01f64..0.99,
                                 a in 1.05f64..3.0, b in 1.05f64..3.0) {
            let p = MetricParams::new(a, b).unwrap();
            prop_assume!(alpha < p.min_log_rate());
            prop_assert_eq!(alpha_window(n, m, alpha, r, &p).unwrap(), union_alpha(n, m, alpha, r, &p));
        }

        #[test]
        fn alpha_floor_form(n in 0u64..30, m in 0u64..30, alpha in 0.0f64..0.25, r in 0.01f64..0.99) {
            let p = params();
            let la = 1.3f64.ln();
            let fh = (m as f64 * alpha + (1.0 / r).ln()) / la;
            prop_assume!((fh - fh.round()).abs() > 1e-9);
            let fl = (n as f64 * alpha + (1.0 / r).ln()) / la;
            prop_assume!((fl - fl.round()).abs() > 1e-9);
            let w = alpha_window(n, m, alpha, r, &p).unwrap();
            prop_assert_eq!(w.hi, fh.floor() as i64 + m as i64);
            prop_assert_eq!(w.lo, -(fl.floor() as i64) - n as i64);
            if alpha == 0.0 {
                prop_assert_eq!(w, bowen_window(n, m, r, &p).unwrap());
            }
        }

        #[test]
        fn p_brackets(r in 1e-12f64..0.999_999, b in 1.01f64..5.0) {
            let p = p_of_r(r, b).unwrap();
            prop_assert!(inv_pow(b, p) < r);
            prop_assert!(r <= inv_pow(b, p - 1));
        }

        #[test]
        fn nesting(r in 1e-9f64..0.99, f in 0.01f64..1.0) {
            let p = params();
            let big = ball_window(r, &p).unwrap();
            let small_r = ball_window(r * f, &p).unwrap();
            prop_assert!(small_r.covers(&big));
        }

        #[test]
        fn neutralized_sandwich_holds(j in 12u32..60, r2 in 0.01f64..0.39) {
            let p = params();
            let r = 2f64.powi(-(j as i32));
            if let Ok(mt) = neutralized_match(r, r2, &p) {
                prop_assert!(mt.j.abs() <= 2);
                if mt.n2 >= 2 {
                    let (inner, ball, outer) = neutralized_sandwich(&mt, r, r2, &p).unwrap();
                    prop_assert!(inner.covers(&ball));
                    prop_assert!(ball.covers(&outer));
                }
            }
        }

        #[test]
        fn alpha_sandwich_holds(j in 8u32..60, alpha in 0.0f64..0.26, r3 in 0.3f64..0.95) {
            let p = params();
            let r = 2f64.powi(-(j as i32));
            prop_assume!(r < r3);
            let am = alpha_match(r, alpha, r3, &p).unwrap();
            let ball = ball_window(r, &p).unwrap();
            let inner = alpha_window(am.n3 + 1, am.m3 + 1, alpha, r3, &p).unwrap();
            prop_assert!(inner.covers(&ball));
            if am.n3 >= 1 && am.m3 >= 1 {
                let outer = alpha_window(am.n3 - 1, am.m3 - 1, alpha, r3, &p).unwrap();
                prop_assert!(ball.covers(&outer));
            }
        }
    }

    #[test]
    fn membership_matches_direct_rho() {
        let full = ShiftSpace::full(2).unwrap();
        let p = params();
        let mut mismatches = 0;
        for s in 0..500u64 {
            let x = full.sample_point(40, s);
            let y = x.resample_outside(-((s % 7) as i64), (s % 11) as i64, s + 1000).unwrap();
            let r = 0.02 + 0.9 * ((s * 37) % 100) as f64 / 100.0;
            let w = ball_to_cylinder(&x, r, &p).unwrap();
            if w.contains(&x, &y).unwrap() != (rho(&x, &y, &p).unwrap().value < r) {
                mismatches += 1;
            }
        }
        assert_eq!(mismatches, 0);
    }
}
