//! Bernoulli and Markov measures on shift spaces.
//!
//! Cylinder masses are computed in log space; a window of a few thousand
//! symbols has mass far below the smallest positive `f64`.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::shift::{Point, ShiftSpace, Symbol, Word};

const SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliMeasure {
    space: ShiftSpace,
    weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovMeasure {
    space: ShiftSpace,
    p: Vec<Vec<f64>>,
    pi: Vec<f64>,
}

/// A shift-invariant measure with exact cylinder masses.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Bernoulli(BernoulliMeasure),
    Markov(MarkovMeasure),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub entropy: f64,
    pub notes: String,
}

fn check_probability(v: &[f64], what: &str) -> Result<()> {
    if v.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(Error::BadMeasure(format!("{what} has a negative or non-finite entry")));
    }
    let s: f64 = v.iter().sum();
    if (s - 1.0).abs() > SUM_TOL {
        return Err(Error::BadMeasure(format!("{what} sums to {s}, not 1")));
    }
    Ok(())
}

/// `-Σ v ln v` with `0 ln 0 = 0`.
fn shannon(v: &[f64]) -> f64 {
    -v.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

fn strongly_connected(p: &[Vec<f64>]) -> bool {
    let m = p.len();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..m).map(|_| g.add_node(())).collect();
    for i in 0..m {
        for j in 0..m {
            if p[i][j] > 0.0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g).len() == 1
}

const STATIONARY_CAP: usize = 1_000_000;

/// The stationary vector of an irreducible row-stochastic matrix.
///
/// Power iteration runs on the lazy chain `(P + I)/2`, which has the same
/// stationary vector and is aperiodic.
pub fn stationary(p: &[Vec<f64>]) -> Result<Vec<f64>> {
    let m = p.len();
    if m == 0 || p.iter().any(|r| r.len() != m) {
        return Err(Error::BadMeasure("transition matrix must be square".into()));
    }
    for (i, row) in p.iter().enumerate() {
        check_probability(row, &format!("row {i}"))?;
    }
    if !strongly_connected(p) {
        return Err(Error::Reducible);
    }
    let mut pi = vec![1.0 / m as f64; m];
    let mut gap = f64::INFINITY;
    for _ in 0..STATIONARY_CAP {
        let mut next = vec![0.0; m];
        for i in 0..m {
            for j in 0..m {
                next[j] += pi[i] * p[i][j];
            }
        }
        gap = (0..m).map(|j| (next[j] - pi[j]).abs()).fold(0.0, f64::max);
        for j in 0..m {
            next[j] = 0.5 * (next[j] + pi[j]);
        }
        let s: f64 = next.iter().sum();
        pi = next.into_iter().map(|v| v / s).collect();
        if gap < 1e-15 {
            return Ok(pi);
        }
    }
    Err(Error::NoConvergence {
        iterations: STATIONARY_CAP,
        gap,
    })
}

fn draw<R: Rng>(cumulative: &[f64], rng: &mut R) -> Symbol {
    let u: f64 = rng.random::<f64>() * cumulative[cumulative.len() - 1];
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1) as Symbol
}

fn cumulative(v: &[f64]) -> Vec<f64> {
    v.iter()
        .scan(0.0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

impl BernoulliMeasure {
    pub fn new(space: &ShiftSpace, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.alphabet_size() {
            return Err(Error::BadMeasure(format!(
                "{} weights for an alphabet of size {}",
                weights.len(),
                space.alphabet_size()
            )));
        }
        check_probability(&weights, "weight vector")?;
        let support: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
        for &i in &support {
            for &j in &support {
                if !space.allows(i as Symbol, j as Symbol) {
                    return Err(Error::BadMeasure(format!(
                        "symbols {i} and {j} carry weight but {i} -> {j} is forbidden"
                    )));
                }
            }
        }
        Ok(Self {
            space: space.clone(),
            weights,
        })
    }

    pub fn uniform(space: &ShiftSpace) -> Result<Self> {
        let m = space.alphabet_size();
        Self::new(space, vec![1.0 / m as f64; m])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl MarkovMeasure {
    pub fn new(space: &ShiftSpace, p: Vec<Vec<f64>>) -> Result<Self> {
        let m = space.alphabet_size();
        if p.len() != m || p.iter().any(|r| r.len() != m) {
            return Err(Error::BadMeasure(format!("transition matrix must be {m}x{m}")));
        }
        for i in 0..m {
            for j in 0..m {
                if p[i][j] > 0.0 && !space.allows(i as Symbol, j as Symbol) {
                    return Err(Error::BadMeasure(format!(
                        "P[{i}][{j}] > 0 on a forbidden transition"
                    )));
                }
            }
        }
        let pi = stationary(&p)?;
        Ok(Self {
            space: space.clone(),
            p,
            pi,
        })
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.p
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    /// `P̂_ij = π_j P_ji / π_i`, the kernel of the time-reversed chain.
    pub fn reversed(&self) -> Vec<Vec<f64>> {
        let m = self.pi.len();
        (0..m)
            .map(|i| (0..m).map(|j| self.pi[j] * self.p[j][i] / self.pi[i]).collect())
            .collect()
    }
}

impl Measure {
    pub fn bernoulli(space: &ShiftSpace, weights: Vec<f64>) -> Result<Self> {
        BernoulliMeasure::new(space, weights).map(Measure::Bernoulli)
    }

    pub fn markov(space: &ShiftSpace, p: Vec<Vec<f64>>) -> Result<Self> {
        MarkovMeasure::new(space, p).map(Measure::Markov)
    }

    pub fn space(&self) -> &ShiftSpace {
        match self {
            Measure::Bernoulli(b) => &b.space,
            Measure::Markov(m) => &m.space,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.space().alphabet_size()
    }

    /// Marginal law of one coordinate.
    pub fn marginal(&self) -> &[f64] {
        match self {
            Measure::Bernoulli(b) => &b.weights,
            Measure::Markov(m) => &m.pi,
        }
    }

    /// Probability of moving from `i` to `j` in one step.
    pub fn step(&self, i: Symbol, j: Symbol) -> f64 {
        match self {
            Measure::Bernoulli(b) => b.weights[j as usize],
            Measure::Markov(m) => m.p[i as usize][j as usize],
        }
    }

    /// Whether every coordinate is independent and identically distributed
    /// with the same all-equal weights on its support.
    pub fn is_uniform(&self) -> bool {
        match self {
            Measure::Bernoulli(b) => {
                let pos: Vec<f64> = b.weights.iter().copied().filter(|&w| w > 0.0).collect();
                pos.iter().all(|&w| w == pos[0])
            }
            Measure::Markov(_) => false,
        }
    }

    pub fn entropy_oracle(&self) -> MeasureReport {
        match self {
            Measure::Bernoulli(b) => MeasureReport {
                entropy: shannon(&b.weights),
                notes: "Bernoulli: -sum p_i ln p_i".into(),
            },
            Measure::Markov(m) => MeasureReport {
                entropy: m
                    .pi
                    .iter()
                    .zip(&m.p)
                    .map(|(&w, row)| w * shannon(row))
                    .sum(),
                notes: "Markov: -sum_i pi_i sum_j P_ij ln P_ij, pi by power iteration".into(),
            },
        }
    }

    /// `ln μ[w]`; `-inf`-mass words are reported as inadmissible.
    pub fn log_mass(&self, symbols: &[Symbol]) -> Result<f64> {
        let m = self.alphabet_size();
        if symbols.is_empty() {
            return Ok(0.0);
        }
        if symbols.iter().any(|&s| s as usize >= m) {
            return Err(Error::InadmissibleWord(format!("{symbols:?}")));
        }
        let mut lm = self.marginal()[symbols[0] as usize].ln();
        for w in symbols.windows(2) {
            lm += self.step(w[0], w[1]).ln();
        }
        if lm == f64::NEG_INFINITY || !self.space().is_admissible(symbols) {
            return Err(Error::InadmissibleWord(format!("{symbols:?}")));
        }
        Ok(lm)
    }

    /// `μ[w]`. The anchor of the word does not enter: the measure is
    /// shift-invariant.
    pub fn cylinder_mass(&self, word: &Word) -> Result<f64> {
        self.log_mass(&word.symbols).map(f64::exp)
    }

    /// A stationary two-sided sample on `[-horizon, horizon]`.
    pub fn sample_typical(&self, horizon: usize, seed: u64) -> Point {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = 2 * horizon + 1;
        let mut s = vec![0 as Symbol; len];
        match self {
            Measure::Bernoulli(b) => {
                let c = cumulative(&b.weights);
                // Index 0 first, then forward, then backward: the same
                // draw order as the Markov case.
                s[horizon] = draw(&c, &mut rng);
                for v in s[horizon + 1..].iter_mut() {
                    *v = draw(&c, &mut rng);
                }
                for v in s[..horizon].iter_mut().rev() {
                    *v = draw(&c, &mut rng);
                }
            }
            Measure::Markov(mk) => {
                let fwd: Vec<Vec<f64>> = mk.p.iter().map(|r| cumulative(r)).collect();
                let bwd: Vec<Vec<f64>> = mk.reversed().iter().map(|r| cumulative(r)).collect();
                s[horizon] = draw(&cumulative(&mk.pi), &mut rng);
                for i in horizon + 1..len {
                    s[i] = draw(&fwd[s[i - 1] as usize], &mut rng);
                }
                for i in (0..horizon).rev() {
                    s[i] = draw(&bwd[s[i + 1] as usize], &mut rng);
                }
            }
        }
        Point::from_window(self.space(), -(horizon as i64), s)
            .expect("samples follow positive-probability transitions")
    }
}
