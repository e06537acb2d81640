//! Minimal number of same-window cylinders covering mass `1 - δ`.
//!
//! Cylinders over a fixed window partition the space, so taking them in
//! order of decreasing mass is optimal. Three backends produce the sorted
//! masses:
//!
//! * enumeration of every admissible word, for small windows;
//! * aggregation into classes of words sharing one mass, for long windows:
//!   type classes for Bernoulli measures, and a dynamic program over
//!   (start symbol, current symbol, count of each transition probability)
//!   for Markov measures;
//! * best-first expansion of prefixes, which pops full-length words in order
//!   of decreasing mass since extending a word never increases it.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, BTreeMap};

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::numeric::log_add_exp;
use crate::shift::Symbol;

/// Word-count limit for the enumeration backend.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;
/// Limit on mass classes or dynamic-programming states.
pub const CLASS_LIMIT: usize = 1 << 22;
/// Heap pushes allowed to the best-first backend.
pub const NODE_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverBackend {
    Enumeration,
    MassClasses,
    BestFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverCount {
    /// `ln` of the minimal number of cylinders.
    pub log_count: f64,
    pub backend: CoverBackend,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::HypothesisViolated(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    Ok(())
}

/// `⌈x⌉` with a relative slack of `1e-9` against rounding just above an
/// integer.
fn ceil_slack(x: f64) -> f64 {
    (x - (1e-9 * x.max(1.0)).min(1e-3)).ceil().max(1.0)
}

pub fn minimal_cover(mu: &Measure, len: usize, delta: f64) -> Result<CoverCount> {
    check_delta(delta)?;
    if len == 0 {
        return Ok(CoverCount {
            log_count: 0.0,
            backend: CoverBackend::Enumeration,
        });
    }
    let words = mu.space().count_words(len);
    if words <= ENUMERATION_LIMIT.into() {
        return Ok(CoverCount {
            log_count: by_enumeration(mu, len, delta),
            backend: CoverBackend::Enumeration,
        });
    }
    if let Some(classes) = mass_classes(mu, len) {
        return Ok(CoverCount {
            log_count: greedy_over_classes(classes, 1.0 - delta),
            backend: CoverBackend::MassClasses,
        });
    }
    Ok(CoverCount {
        log_count: best_first(mu, len, delta)?,
        backend: CoverBackend::BestFirst,
    })
}

/// Log masses of every positive-mass admissible word of length `len`.
fn all_log_masses(mu: &Measure, len: usize) -> Vec<f64> {
    let m = mu.alphabet_size();
    let mut out = Vec::new();
    let mut stack: Vec<(Symbol, usize, f64)> = Vec::new();
    for s in 0..m {
        let w = mu.marginal()[s];
        if w > 0.0 {
            stack.push((s as Symbol, 1, w.ln()));
        }
    }
    while let Some((last, depth, lm)) = stack.pop() {
        if depth == len {
            out.push(lm);
            continue;
        }
        for &next in mu.space().successors(last) {
            let p = mu.step(last, next);
            if p > 0.0 {
                stack.push((next, depth + 1, lm + p.ln()));
            }
        }
    }
    out
}

fn by_enumeration(mu: &Measure, len: usize, delta: f64) -> f64 {
    let mut masses: Vec<f64> = all_log_masses(mu, len).into_iter().map(f64::exp).collect();
    masses.sort_by(|a, b| b.total_cmp(a));
    let need = 1.0 - delta;
    let mut covered = 0.0;
    for (k, m) in masses.iter().enumerate() {
        covered += m;
        if covered >= need - 1e-12 {
            return ((k + 1) as f64).ln();
        }
    }
    (masses.len() as f64).ln()
}

/// `(log_mass, log_count)` classes, or `None` past [`CLASS_LIMIT`].
pub fn mass_classes(mu: &Measure, len: usize) -> Option<Vec<(f64, f64)>> {
    match mu {
        Measure::Bernoulli(b) => bernoulli_classes(b.weights(), len),
        Measure::Markov(_) => markov_classes(mu, len),
    }
}

/// Distinct positive values with their multiplicities.
fn distinct_values(values: impl IntoIterator<Item = f64>) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in values.into_iter().filter(|&v| v > 0.0) {
        match out.iter_mut().find(|(u, _)| *u == v) {
            Some(e) => e.1 += 1,
            None => out.push((v, 1)),
        }
    }
    out
}

fn bernoulli_classes(weights: &[f64], len: usize) -> Option<Vec<(f64, f64)>> {
    let vals = distinct_values(weights.iter().copied());
    let d = vals.len();
    // Number of compositions of len into d parts.
    let mut total = 1f64;
    for i in 1..d {
        total *= (len + i) as f64 / i as f64;
    }
    if total > CLASS_LIMIT as f64 {
        return None;
    }
    let lf = ln_gamma(len as f64 + 1.0);
    let mut out = Vec::with_capacity(total as usize);
    let mut counts = vec![0usize; d];
    fn rec(
        i: usize,
        left: usize,
        counts: &mut Vec<usize>,
        vals: &[(f64, usize)],
        lf: f64,
        out: &mut Vec<(f64, f64)>,
    ) {
        if i + 1 == vals.len() {
            counts[i] = left;
            let mut lm = 0.0;
            let mut lc = lf;
            for (k, &(v, mult)) in counts.iter().zip(vals) {
                lm += *k as f64 * v.ln();
                lc += *k as f64 * (mult as f64).ln() - ln_gamma(*k as f64 + 1.0);
            }
            out.push((lm, lc));
            return;
        }
        for k in 0..=left {
            counts[i] = k;
            rec(i + 1, left - k, counts, vals, lf, out);
        }
    }
    rec(0, len, &mut counts, &vals, lf, &mut out);
    Some(out)
}

fn markov_classes(mu: &Measure, len: usize) -> Option<Vec<(f64, f64)>> {
    let Measure::Markov(mk) = mu else {
        return None;
    };
    let m = mu.alphabet_size();
    let p = mk.transition();
    let vals: Vec<f64> = distinct_values(p.iter().flatten().copied().filter(|&v| v < 1.0))
        .into_iter()
        .map(|(v, _)| v)
        .collect();
    let d = vals.len();
    if d > 4 || len > u16::MAX as usize {
        return None;
    }
    let slot = |v: f64| vals.iter().position(|&u| u == v);
    // Counts packed into four 16-bit lanes.
    let bump = |key: u64, i: usize| key + (1u64 << (16 * i));
    let mut classes: BTreeMap<(Symbol, u64), f64> = BTreeMap::new();
    for start in 0..m {
        let w = mk.pi()[start];
        if w <= 0.0 {
            continue;
        }
        let mut layer: BTreeMap<(Symbol, u64), f64> = BTreeMap::new();
        layer.insert((start as Symbol, 0), 0.0);
        for _ in 1..len {
            let mut next: BTreeMap<(Symbol, u64), f64> = BTreeMap::new();
            for (&(cur, key), &lc) in &layer {
                for &to in mu.space().successors(cur) {
                    let pr = p[cur as usize][to as usize];
                    if pr <= 0.0 {
                        continue;
                    }
                    let nk = match slot(pr) {
                        Some(i) => bump(key, i),
                        None => key,
                    };
                    let e = next.entry((to, nk)).or_insert(f64::NEG_INFINITY);
                    *e = log_add_exp(*e, lc);
                }
            }
            if next.len() > CLASS_LIMIT {
                return None;
            }
            layer = next;
        }
        for ((_, key), lc) in layer {
            let e = classes.entry((start as Symbol, key)).or_insert(f64::NEG_INFINITY);
            *e = log_add_exp(*e, lc);
        }
    }
    let mut out: Vec<(f64, f64)> = classes
        .into_iter()
        .map(|((start, key), lc)| {
            let mut lm = mk.pi()[start as usize].ln();
            for (i, v) in vals.iter().enumerate() {
                lm += ((key >> (16 * i)) & 0xffff) as f64 * v.ln();
            }
            (lm, lc)
        })
        .collect();
    // Sort by mass for the greedy pass.
    out.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    Some(out)
}

/// Greedy cover over classes sorted or not; returns `ln` of the count.
pub fn greedy_over_classes(mut classes: Vec<(f64, f64)>, need: f64) -> f64 {
    classes.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut remaining = need;
    let mut log_total = f64::NEG_INFINITY;
    for (lm, lc) in classes {
        let class_mass = (lm + lc).exp();
        if class_mass < remaining - 1e-15 {
            remaining -= class_mass;
            log_total = log_add_exp(log_total, lc);
            continue;
        }
        let lk = remaining.max(f64::MIN_POSITIVE).ln() - lm;
        let lk = if lk < 40.0 { ceil_slack(lk.exp()).ln() } else { lk };
        return log_add_exp(log_total, lk.min(lc));
    }
    log_total
}

#[derive(PartialEq)]
struct Node {
    log_mass: f64,
    word: Vec<Symbol>,
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.log_mass
            .total_cmp(&other.log_mass)
            .then_with(|| other.word.cmp(&self.word))
    }
}

fn best_first(mu: &Measure, len: usize, delta: f64) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    let mut pushes = 0usize;
    for s in 0..mu.alphabet_size() {
        let w = mu.marginal()[s];
        if w > 0.0 {
            heap.push(Node {
                log_mass: w.ln(),
                word: vec![s as Symbol],
            });
            pushes += 1;
        }
    }
    let need = 1.0 - delta;
    let mut covered = 0.0;
    let mut count = 0u64;
    while let Some(node) = heap.pop() {
        if node.word.len() == len {
            covered += node.log_mass.exp();
            count += 1;
            if covered >= need - 1e-12 {
                return Ok((count as f64).ln());
            }
            continue;
        }
        let last = *node.word.last().expect("nonempty");
        for &next in mu.space().successors(last) {
            let p = mu.step(last, next);
            if p > 0.0 {
                pushes += 1;
                if pushes > NODE_BUDGET {
                    return Err(Error::WindowTooLarge(len));
                }
                let mut w = node.word.clone();
                w.push(next);
                heap.push(Node {
                    log_mass: node.log_mass + p.ln(),
                    word: w,
                });
            }
        }
    }
    Ok((count as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::ShiftSpace;

    fn measures() -> Vec<Measure> {
        let full = ShiftSpace::full(2).unwrap();
        let full3 = ShiftSpace::full(3).unwrap();
        vec![
            Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap(),
            Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap(),
            Measure::bernoulli(&full3, vec![0.2, 0.5, 0.3]).unwrap(),
            Measure::bernoulli(&full3, vec![0.25, 0.5, 0.25]).unwrap(),
            Measure::markov(&ShiftSpace::golden_mean(), vec![vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap(),
            Measure::markov(&full, vec![vec![0.2, 0.8], vec![0.6, 0.4]]).unwrap(),
        ]
    }

    #[test]
    fn backends_agree() {
        for mu in measures() {
            for len in 1..11 {
                for &delta in &[0.1, 0.25, 0.4, 0.73] {
                    let e = by_enumeration(&mu, len, delta);
                    let c = greedy_over_classes(mass_classes(&mu, len).unwrap(), 1.0 - delta);
                    let b = best_first(&mu, len, delta).unwrap();
                    assert!((e - c).abs() < 1e-9, "{mu:?} {len} {delta}: {e} vs {c}");
                    assert!((e - b).abs() < 1e-12, "{mu:?} {len} {delta}: {e} vs {b}");
                }
            }
        }
    }

    #[test]
    fn uniform_closed_form() {
        let full = ShiftSpace::full(2).unwrap();
        let u = Measure::bernoulli(&full, vec![0.5, 0.5]).unwrap();
        for len in [3usize, 8, 15, 25, 40] {
            let c = minimal_cover(&u, len, 0.1).unwrap();
            let exact = (0.9 * 2f64.powi(len as i32)).ceil().ln();
            assert!((c.log_count - exact).abs() < 1e-9, "{len}");
        }
        assert_eq!(minimal_cover(&u, 30, 0.1).unwrap().backend, CoverBackend::MassClasses);
    }

    #[test]
    fn small_delta_covers_everything() {
        let full = ShiftSpace::full(2).unwrap();
        let b = Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap();
        let c = minimal_cover(&b, 6, 1e-9).unwrap();
        assert!((c.log_count - 64f64.ln()).abs() < 1e-12);
        assert!(matches!(minimal_cover(&b, 6, 1.0), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn long_windows_use_classes() {
        let full = ShiftSpace::full(2).unwrap();
        let b = Measure::bernoulli(&full, vec![0.3, 0.7]).unwrap();
        let c = minimal_cover(&b, 2000, 0.25).unwrap();
        assert_eq!(c.backend, CoverBackend::MassClasses);
        assert!(c.log_count > 0.0 && c.log_count < 2000.0 * 2f64.ln());
    }
}
