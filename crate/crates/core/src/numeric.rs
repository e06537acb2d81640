//! Small numeric helpers shared by every module.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// `base^(-n)` evaluated as `exp(-n ln base)`.
///
/// Every comparison between a distance and a radius goes through this one
/// function, which keeps the cylinder brackets and direct distance evaluation
/// consistent to the last bit. The map `n -> inv_pow(base, n)` is monotone.
#[inline]
pub fn inv_pow(base: f64, n: u64) -> f64 {
    (-(n as f64) * base.ln()).exp()
}

/// Natural logarithm of an arbitrary-precision integer; `-inf` for zero.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::ln).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(e^a + e^b)` without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{x_i}`.
pub fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Ordinary least squares fit `y ≈ slope·x + intercept`.
///
/// Returns `(slope, intercept, residual_rms)`. Centered sums keep the slope of
/// an exactly linear series exact to rounding.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return (f64::NAN, ys.first().copied().unwrap_or(f64::NAN), 0.0);
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    (slope, intercept, (ss / n).sqrt())
}

/// Relative error `|lhs - rhs| / |rhs|`, falling back to absolute error at zero.
pub fn rel_error(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        (lhs - rhs).abs()
    } else {
        ((lhs - rhs) / rhs).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ln_of_huge_integer() {
        let n = BigUint::one() << 5000u32;
        assert!((ln_biguint(&n) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
        assert!((ln_biguint(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn exact_line_has_exact_slope() {
        let xs: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.7 * x + 3.0).collect();
        let (s, c, rms) = least_squares(&xs, &ys);
        assert!((s - 0.7).abs() < 1e-13);
        assert!((c - 3.0).abs() < 1e-12);
        assert!(rms < 1e-12);
    }

    #[test]
    fn inv_pow_is_monotone() {
        for &b in &[1.01, 1.3, 1.9, 2.0, 7.5] {
            let mut prev = inv_pow(b, 0);
            assert_eq!(prev, 1.0);
            for n in 1..400 {
                let v = inv_pow(b, n);
                assert!(v <= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn log_sum_matches_direct() {
        let v = [0.1f64, -2.0, 1.5];
        let direct = v.iter().map(|x| x.exp()).sum::<f64>().ln();
        assert!((log_sum_exp(v) - direct).abs() < 1e-14);
        assert!((log_add_exp(0.1, -2.0) - (0.1f64.exp() + (-2.0f64).exp()).ln()).abs() < 1e-14);
    }
}
