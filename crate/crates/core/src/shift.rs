//! Full shifts and subshifts of finite type.
//!
//! A [`ShiftSpace`] is an alphabet `{0, …, M-1}` with an optional 0/1
//! transition matrix. States that cannot be continued forever in both
//! directions are trimmed at construction, so every admissible finite word
//! over the alive states extends to a bi-infinite point.
//!
//! A [`Point`] is a finite window of a two-sided sequence. Shifting a point
//! relabels coordinates without copying; the window simply moves.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Symbol = u8;

/// Largest supported alphabet; symbols are stored as bytes.
pub const MAX_ALPHABET: usize = 256;

#[derive(Debug, PartialEq, Eq)]
struct SpaceInner {
    alphabet_size: usize,
    transition: Option<Vec<Vec<bool>>>,
    alive: Vec<bool>,
    alive_list: Vec<Symbol>,
    successors: Vec<Vec<Symbol>>,
    predecessors: Vec<Vec<Symbol>>,
}

/// Immutable, cheaply clonable shift space.
#[derive(Clone)]
pub struct ShiftSpace(Arc<SpaceInner>);

impl PartialEq for ShiftSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ShiftSpace {}

impl fmt::Debug for ShiftSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShiftSpace")
            .field("alphabet_size", &self.0.alphabet_size)
            .field("full", &self.is_full())
            .field("alive", &self.0.alive_list)
            .finish()
    }
}

/// Serializable description of a space, for report headers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceSummary {
    pub alphabet_size: usize,
    pub transition: Option<Vec<Vec<u8>>>,
    pub alive_states: Vec<Symbol>,
}

impl ShiftSpace {
    /// Builds a space; `transition = None` is the full shift.
    pub fn new(alphabet_size: usize, transition: Option<Vec<Vec<u8>>>) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::BadMatrix(format!(
                "alphabet size must be at least 2, got {alphabet_size}"
            )));
        }
        if alphabet_size > MAX_ALPHABET {
            return Err(Error::BadMatrix(format!(
                "alphabet size {alphabet_size} exceeds {MAX_ALPHABET}"
            )));
        }
        let transition = match transition {
            None => None,
            Some(rows) => {
                if rows.len() != alphabet_size || rows.iter().any(|r| r.len() != alphabet_size) {
                    return Err(Error::BadMatrix(format!(
                        "expected a {alphabet_size}x{alphabet_size} matrix"
                    )));
                }
                let mut out = Vec::with_capacity(alphabet_size);
                for row in rows {
                    let mut r = Vec::with_capacity(alphabet_size);
                    for v in row {
                        match v {
                            0 => r.push(false),
                            1 => r.push(true),
                            other => {
                                return Err(Error::BadMatrix(format!("entry {other} is not 0 or 1")))
                            }
                        }
                    }
                    out.push(r);
                }
                Some(out)
            }
        };
        let alive = match &transition {
            None => vec![true; alphabet_size],
            Some(t) => trim(t),
        };
        if !alive.iter().any(|&a| a) {
            return Err(Error::AllStatesDead);
        }
        let edge = |i: usize, j: usize| -> bool {
            alive[i] && alive[j] && transition.as_ref().is_none_or(|t| t[i][j])
        };
        let alive_list: Vec<Symbol> = (0..alphabet_size)
            .filter(|&s| alive[s])
            .map(|s| s as Symbol)
            .collect();
        let successors = (0..alphabet_size)
            .map(|i| {
                (0..alphabet_size)
                    .filter(|&j| edge(i, j))
                    .map(|j| j as Symbol)
                    .collect()
            })
            .collect();
        let predecessors = (0..alphabet_size)
            .map(|j| {
                (0..alphabet_size)
                    .filter(|&i| edge(i, j))
                    .map(|i| i as Symbol)
                    .collect()
            })
            .collect();
        Ok(Self(Arc::new(SpaceInner {
            alphabet_size,
            transition,
            alive,
            alive_list,
            successors,
            predecessors,
        })))
    }

    pub fn full(alphabet_size: usize) -> Result<Self> {
        Self::new(alphabet_size, None)
    }

    /// The golden-mean shift: binary sequences without two consecutive 1s.
    pub fn golden_mean() -> Self {
        Self::new(2, Some(vec![vec![1, 1], vec![1, 0]])).expect("golden-mean matrix is valid")
    }

    /// Parses the SFT text format: `M` on the first line, then `M` rows of
    /// `M` space-separated 0/1 entries.
    pub fn from_sft_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let m: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty SFT file".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("alphabet size: {e}")))?;
        let mut rows = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let row: std::result::Result<Vec<u8>, _> =
                line.split_whitespace().map(str::parse::<u8>).collect();
            rows.push(row.map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?);
        }
        if rows.len() != m {
            return Err(Error::BadMatrix(format!("expected {m} rows, found {}", rows.len())));
        }
        Self::new(m, Some(rows))
    }

    pub fn alphabet_size(&self) -> usize {
        self.0.alphabet_size
    }

    pub fn is_full(&self) -> bool {
        self.0.transition.is_none()
    }

    pub fn alive_states(&self) -> &[Symbol] {
        &self.0.alive_list
    }

    pub fn is_alive(&self, s: Symbol) -> bool {
        (s as usize) < self.0.alphabet_size && self.0.alive[s as usize]
    }

    /// Whether `i -> j` is an allowed transition between alive states.
    pub fn allows(&self, i: Symbol, j: Symbol) -> bool {
        self.is_alive(i)
            && self.is_alive(j)
            && self
                .0
                .transition
                .as_ref()
                .is_none_or(|t| t[i as usize][j as usize])
    }

    pub fn successors(&self, s: Symbol) -> &[Symbol] {
        &self.0.successors[s as usize]
    }

    pub fn predecessors(&self, s: Symbol) -> &[Symbol] {
        &self.0.predecessors[s as usize]
    }

    /// Every symbol alive and every adjacent pair allowed.
    pub fn is_admissible(&self, symbols: &[Symbol]) -> bool {
        symbols.iter().all(|&s| self.is_alive(s))
            && symbols.windows(2).all(|w| self.allows(w[0], w[1]))
    }

    pub fn summary(&self) -> SpaceSummary {
        SpaceSummary {
            alphabet_size: self.0.alphabet_size,
            transition: self.0.transition.as_ref().map(|t| {
                t.iter()
                    .map(|r| r.iter().map(|&b| u8::from(b)).collect())
                    .collect()
            }),
            alive_states: self.0.alive_list.clone(),
        }
    }

    /// Number of admissible words of length `len` (`len >= 1`).
    ///
    /// Full shifts use `M^len`; subshifts sum the entries of `A^(len-1)`
    /// over the trimmed matrix, with powers taken by repeated squaring.
    pub fn count_words(&self, len: usize) -> BigUint {
        assert!(len >= 1, "word length must be positive");
        if self.is_full() {
            return BigUint::from(self.0.alphabet_size).pow(len as u32);
        }
        let states = &self.0.alive_list;
        let k = states.len();
        let base: Vec<Vec<BigUint>> = states
            .iter()
            .map(|&i| {
                states
                    .iter()
                    .map(|&j| {
                        if self.allows(i, j) {
                            BigUint::one()
                        } else {
                            BigUint::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let power = mat_pow(&base, len as u64 - 1, k);
        power.iter().flatten().sum()
    }

    /// `ln` of the spectral radius of the trimmed transition matrix.
    ///
    /// The radius is the maximum over strongly connected components. On each
    /// component the power iteration runs on `A + I` (primitive whenever `A`
    /// is irreducible) and stops once the Collatz–Wielandt bracket closes to
    /// relative width `1e-12`.
    pub fn top_entropy_oracle(&self) -> Result<f64> {
        if self.is_full() {
            return Ok((self.0.alphabet_size as f64).ln());
        }
        let states = &self.0.alive_list;
        let mut graph = DiGraph::<Symbol, ()>::new();
        let nodes: Vec<_> = states.iter().map(|&s| graph.add_node(s)).collect();
        for (a, &i) in states.iter().enumerate() {
            for (b, &j) in states.iter().enumerate() {
                if self.allows(i, j) {
                    graph.add_edge(nodes[a], nodes[b], ());
                }
            }
        }
        let mut radius: f64 = 0.0;
        for component in tarjan_scc(&graph) {
            let members: Vec<Symbol> = component.iter().map(|&n| graph[n]).collect();
            let has_edge = members
                .iter()
                .any(|&i| members.iter().any(|&j| self.allows(i, j)));
            if !has_edge {
                continue;
            }
            radius = radius.max(perron_root(self, &members)?);
        }
        Ok(radius.ln())
    }

    /// Seeded two-sided admissible point on the window `[-horizon, horizon]`.
    ///
    /// Index 0 is uniform over alive states; the walk proceeds forward with
    /// uniform out-edges and backward with uniform in-edges.
    pub fn sample_point(&self, horizon: usize, seed: u64) -> Point {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = horizon as i64;
        let alive = self.alive_states();
        let origin = alive[rng.random_range(0..alive.len())];
        let mut symbols = vec![0 as Symbol; 2 * horizon + 1];
        symbols[horizon] = origin;
        self.walk_forward(&mut symbols[horizon..], &mut rng);
        self.walk_backward(&mut symbols[..=horizon], &mut rng);
        Point {
            space: self.clone(),
            symbols: symbols.into(),
            first: -h,
        }
    }

    /// Fills `buf[1..]` by a forward random walk starting from `buf[0]`.
    pub(crate) fn walk_forward<R: Rng>(&self, buf: &mut [Symbol], rng: &mut R) {
        for i in 1..buf.len() {
            let next = self.successors(buf[i - 1]);
            buf[i] = next[rng.random_range(0..next.len())];
        }
    }

    /// Fills `buf[..len-1]` by a backward random walk ending at the last entry.
    pub(crate) fn walk_backward<R: Rng>(&self, buf: &mut [Symbol], rng: &mut R) {
        for i in (0..buf.len().saturating_sub(1)).rev() {
            let prev = self.predecessors(buf[i + 1]);
            buf[i] = prev[rng.random_range(0..prev.len())];
        }
    }
}

/// Iterated removal of states with no in- or out-edge among alive states.
fn trim(t: &[Vec<bool>]) -> Vec<bool> {
    let m = t.len();
    let mut alive = vec![true; m];
    loop {
        let mut changed = false;
        for s in 0..m {
            if !alive[s] {
                continue;
            }
            let out = (0..m).any(|j| alive[j] && t[s][j]);
            let inc = (0..m).any(|i| alive[i] && t[i][s]);
            if !out || !inc {
                alive[s] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>], k: usize) -> Vec<Vec<BigUint>> {
    let mut out = vec![vec![BigUint::zero(); k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

fn mat_pow(base: &[Vec<BigUint>], mut exp: u64, k: usize) -> Vec<Vec<BigUint>> {
    let mut result: Vec<Vec<BigUint>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { BigUint::one() } else { BigUint::zero() })
                .collect()
        })
        .collect();
    let mut sq = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mat_mul(&result, &sq, k);
        }
        exp >>= 1;
        if exp > 0 {
            sq = mat_mul(&sq, &sq, k);
        }
    }
    result
}

const POWER_ITERATION_CAP: usize = 100_000;
const POWER_ITERATION_RTOL: f64 = 1e-12;

/// Perron root of the irreducible block on `members`.
fn perron_root(space: &ShiftSpace, members: &[Symbol]) -> Result<f64> {
    let k = members.len();
    let adj: Vec<Vec<usize>> = members
        .iter()
        .map(|&i| {
            (0..k)
                .filter(|&b| space.allows(i, members[b]))
                .collect()
        })
        .collect();
    let mut v = vec![1.0f64; k];
    let mut gap = f64::INFINITY;
    for _ in 0..POWER_ITERATION_CAP {
        // w = (A + I) v
        let w: Vec<f64> = (0..k)
            .map(|i| v[i] + adj[i].iter().map(|&j| v[j]).sum::<f64>())
            .collect();
        let (mut lower, mut upper) = (f64::INFINITY, 0.0f64);
        for i in 0..k {
            let ratio = w[i] / v[i];
            lower = lower.min(ratio);
            upper = upper.max(ratio);
        }
        gap = (upper - lower) / upper;
        if gap <= POWER_ITERATION_RTOL {
            return Ok(0.5 * (upper + lower) - 1.0);
        }
        let norm = w.iter().copied().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / norm).collect();
    }
    Err(Error::NoConvergence {
        iterations: POWER_ITERATION_CAP,
        gap,
    })
}

/// A finite window of a two-sided sequence, over a fixed space.
///
/// The window always contains index 0. `horizon()` is the largest `H` with
/// `[-H, H]` inside the window.
#[derive(Clone)]
pub struct Point {
    space: ShiftSpace,
    symbols: Arc<[Symbol]>,
    /// Coordinate of `symbols[0]`.
    first: i64,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point[{}..={}](", self.lo(), self.hi())?;
        for s in self.symbols.iter() {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for Point {
    /// Same space, same window, same symbols.
    fn eq(&self, other: &Self) -> bool {
        self.first == other.first && self.symbols == other.symbols && self.space == other.space
    }
}

impl Point {
    /// Wraps `symbols` as the window starting at coordinate `lo`.
    pub fn from_window(space: &ShiftSpace, lo: i64, symbols: Vec<Symbol>) -> Result<Self> {
        let hi = lo + symbols.len() as i64 - 1;
        if symbols.is_empty() || lo > 0 || hi < 0 {
            return Err(Error::HorizonExceeded { index: 0, lo, hi });
        }
        if !space.is_admissible(&symbols) {
            return Err(Error::InadmissibleWord(format!("{symbols:?}")));
        }
        Ok(Self {
            space: space.clone(),
            symbols: symbols.into(),
            first: lo,
        })
    }

    pub fn space(&self) -> &ShiftSpace {
        &self.space
    }

    pub fn lo(&self) -> i64 {
        self.first
    }

    pub fn hi(&self) -> i64 {
        self.first + self.symbols.len() as i64 - 1
    }

    pub fn horizon(&self) -> u64 {
        (-self.lo()).min(self.hi()) as u64
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    #[inline]
    pub fn at(&self, index: i64) -> Option<Symbol> {
        let off = index - self.first;
        if off < 0 {
            return None;
        }
        self.symbols.get(off as usize).copied()
    }

    pub fn get(&self, index: i64) -> Result<Symbol> {
        self.at(index).ok_or(Error::HorizonExceeded {
            index,
            lo: self.lo(),
            hi: self.hi(),
        })
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        self.lo() <= lo && hi <= self.hi()
    }

    /// `σ^i x`: new coordinate `j` holds old coordinate `j + i`.
    pub fn shift(&self, i: i64) -> Result<Self> {
        if i < self.lo() || i > self.hi() {
            return Err(Error::HorizonExceeded {
                index: i,
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        Ok(Self {
            space: self.space.clone(),
            symbols: Arc::clone(&self.symbols),
            first: self.first - i,
        })
    }

    /// The word occupying coordinates `lo..=hi`.
    pub fn word(&self, lo: i64, hi: i64) -> Result<Word> {
        if !self.covers(lo, hi) {
            let index = if lo < self.lo() { lo } else { hi };
            return Err(Error::HorizonExceeded {
                index,
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        let start = (lo - self.first) as usize;
        let end = (hi - self.first) as usize;
        Ok(Word {
            symbols: self.symbols[start..=end].to_vec(),
            anchor: lo,
        })
    }

    /// Keeps coordinates `keep_lo..=keep_hi` and redraws everything else in
    /// the window by random walks out of the kept block.
    pub fn resample_outside(&self, keep_lo: i64, keep_hi: i64, seed: u64) -> Result<Self> {
        if keep_lo > keep_hi || !self.covers(keep_lo, keep_hi) {
            return Err(Error::HorizonExceeded {
                index: keep_lo,
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut buf = self.symbols.to_vec();
        let a = (keep_lo - self.first) as usize;
        let b = (keep_hi - self.first) as usize;
        self.space.walk_forward(&mut buf[b..], &mut rng);
        self.space.walk_backward(&mut buf[..=a], &mut rng);
        Ok(Self {
            space: self.space.clone(),
            symbols: buf.into(),
            first: self.first,
        })
    }
}

/// A finite factor anchored at a coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Word {
    pub symbols: Vec<Symbol>,
    pub anchor: i64,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, anchor: i64) -> Self {
        Self { symbols, anchor }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(space: &ShiftSpace, len: usize) -> u64 {
        let m = space.alphabet_size();
        let total = (m as u64).pow(len as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let w: Vec<Symbol> = (0..len)
                    .map(|_| {
                        let s = (c % m as u64) as Symbol;
                        c /= m as u64;
                        s
                    })
                    .collect();
                space.is_admissible(&w)
            })
            .count() as u64
    }

    #[test]
    fn make_space_examples() {
        let full = ShiftSpace::full(2).unwrap();
        assert_eq!(full.alive_states(), &[0, 1]);
        let gm = ShiftSpace::golden_mean();
        assert_eq!(gm.alive_states(), &[0, 1]);
        assert_eq!(
            ShiftSpace::new(2, Some(vec![vec![0, 0], vec![0, 0]])),
            Err(Error::AllStatesDead)
        );
        assert!(matches!(
            ShiftSpace::new(2, Some(vec![vec![1, 2], vec![1, 0]])),
            Err(Error::BadMatrix(_))
        ));
        assert!(matches!(
            ShiftSpace::new(2, Some(vec![vec![1, 1]])),
            Err(Error::BadMatrix(_))
        ));
        assert!(matches!(ShiftSpace::new(1, None), Err(Error::BadMatrix(_))));
    }

    #[test]
    fn trimming_removes_transient_states() {
        // 2 only feeds into 0 and has no predecessor; 1 is a sink chain into 0.
        let s = ShiftSpace::new(
            3,
            Some(vec![vec![1, 0, 0], vec![1, 0, 0], vec![1, 0, 0]]),
        )
        .unwrap();
        assert_eq!(s.alive_states(), &[0]);
        assert_eq!(s.count_words(1), BigUint::from(1u32));
        assert_eq!(s.count_words(5), BigUint::from(1u32));
    }

    #[test]
    fn word_counts() {
        let full = ShiftSpace::full(2).unwrap();
        assert_eq!(full.count_words(3), BigUint::from(8u32));
        let gm = ShiftSpace::golden_mean();
        assert_eq!(gm.count_words(3), BigUint::from(5u32));
        assert_eq!(gm.count_words(1), BigUint::from(2u32));
        for len in 1..=12 {
            assert_eq!(gm.count_words(len), BigUint::from(brute_count(&gm, len)));
        }
        let odd = ShiftSpace::new(
            3,
            Some(vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 1]]),
        )
        .unwrap();
        for len in 1..=8 {
            assert_eq!(odd.count_words(len), BigUint::from(brute_count(&odd, len)));
        }
    }

    #[test]
    fn entropy_oracle_examples() {
        let ln2 = 2f64.ln();
        assert!((ShiftSpace::full(2).unwrap().top_entropy_oracle().unwrap() - ln2).abs() < 1e-15);
        assert!(
            (ShiftSpace::full(3).unwrap().top_entropy_oracle().unwrap() - 3f64.ln()).abs() < 1e-15
        );
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let h = ShiftSpace::golden_mean().top_entropy_oracle().unwrap();
        assert!((h - phi.ln()).abs() < 1e-11, "{h}");
        assert!((h - 0.481212).abs() < 1e-6);
    }

    #[test]
    fn entropy_oracle_on_periodic_and_reducible() {
        // Period-2 cycle: radius 1, entropy 0.
        let cyc = ShiftSpace::new(2, Some(vec![vec![0, 1], vec![1, 0]])).unwrap();
        assert!(cyc.top_entropy_oracle().unwrap().abs() < 1e-11);
        // Full 2-shift on {0,1} feeding into a loop on {2}: radius 2.
        let red = ShiftSpace::new(
            3,
            Some(vec![vec![1, 1, 1], vec![1, 1, 0], vec![0, 0, 1]]),
        )
        .unwrap();
        assert!((red.top_entropy_oracle().unwrap() - 2f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn sft_text_roundtrip() {
        let s = ShiftSpace::from_sft_text("2\n1 1\n1 0\n").unwrap();
        assert_eq!(s, ShiftSpace::golden_mean());
        assert!(matches!(
            ShiftSpace::from_sft_text("2\n1 1\n"),
            Err(Error::BadMatrix(_))
        ));
        assert!(matches!(
            ShiftSpace::from_sft_text("x\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_admissible() {
        let full = ShiftSpace::full(2).unwrap();
        let p = full.sample_point(4, 1);
        assert_eq!(p.symbols().len(), 9);
        assert_eq!((p.lo(), p.hi()), (-4, 4));
        let gm = ShiftSpace::golden_mean();
        let a = gm.sample_point(30, 17);
        let b = gm.sample_point(30, 17);
        assert_eq!(a, b);
        assert!(!a.symbols().windows(2).any(|w| w == [1, 1]));
    }

    #[test]
    fn shifting() {
        let gm = ShiftSpace::golden_mean();
        let x = gm.sample_point(6, 3);
        assert_eq!(x.shift(0).unwrap(), x);
        let back = x.shift(1).unwrap().shift(-1).unwrap();
        assert_eq!(back, x);
        let y = x.shift(2).unwrap();
        for j in -8..=4 {
            assert_eq!(y.at(j), x.at(j + 2));
        }
        assert_eq!(y.horizon(), 4);
        assert!(matches!(x.shift(7), Err(Error::HorizonExceeded { .. })));
        assert!(x.shift(6).is_ok());
    }

    #[test]
    fn resampling_keeps_core() {
        let gm = ShiftSpace::golden_mean();
        let x = gm.sample_point(20, 5);
        let y = x.resample_outside(-3, 4, 99).unwrap();
        for j in -3..=4 {
            assert_eq!(x.at(j), y.at(j));
        }
        assert!(gm.is_admissible(y.symbols()));
        assert_eq!((y.lo(), y.hi()), (-20, 20));
    }
}
