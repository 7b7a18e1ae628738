//! Monte Carlo integrability check for `prod_j |z_j|^{-2 lambda a_j}` on
//! the unit polydisc.
//!
//! The integral factors over coordinates. In polar form one coordinate
//! contributes `int_0^1 r^{1 - 2c} dr` with `c = lambda a_j`; over the
//! dyadic shell `[2^{-k-1}, 2^{-k}]` this scales like `4^{k(c - 1)}`, so
//! `log2` of the shell integrals is linear in `k` with slope `2(c - 1)` and
//! the integral converges iff the slope is negative. Each shell integral
//! is estimated from its own stratified uniform samples and the slope is
//! fitted by least squares. Floating point is confined to this check.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHELLS: usize = 40;
const SIGMA_BAND: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Integrable,
    Divergent,
    /// The fitted slope is within the noise band of zero.
    Inconclusive,
}

/// Integrability of `|D|^{-2 lambda}` near the origin for the divisor
/// with coefficients `a`, using `samples` points per shell and
/// coordinate.
pub fn lct_mc_oracle(
    a: &[BigRational],
    lambda: &BigRational,
    samples: usize,
    seed: u64,
) -> OracleVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = lambda.to_f64().unwrap_or(f64::INFINITY);
    let mut verdict = OracleVerdict::Integrable;
    for a in a {
        let c = lambda * a.to_f64().unwrap_or(f64::INFINITY);
        match coordinate_verdict(c, samples.max(2), &mut rng) {
            OracleVerdict::Divergent => return OracleVerdict::Divergent,
            OracleVerdict::Inconclusive => verdict = OracleVerdict::Inconclusive,
            OracleVerdict::Integrable => {}
        }
    }
    verdict
}

fn coordinate_verdict(c: f64, samples: usize, rng: &mut ChaCha8Rng) -> OracleVerdict {
    // s^power on [1/2, 1] must stay finite.
    if !c.is_finite() || c > 500.0 {
        return OracleVerdict::Divergent;
    }
    let power = 1.0 - 2.0 * c;
    // With r = 2^{-k} s, s in [1/2, 1]: the shell integral is
    // 2^{-k(power + 1)} * (1/2) * mean(s^power), kept in log2 form.
    let logs: Vec<f64> = (0..SHELLS)
        .map(|k| {
            let mean = (0..samples)
                .map(|s| {
                    let t = (s as f64 + rng.gen::<f64>()) / samples as f64;
                    (0.5 + 0.5 * t).powf(power)
                })
                .sum::<f64>()
                / samples as f64;
            -(k as f64) * (power + 1.0) - 1.0 + mean.log2()
        })
        .collect();
    let (slope, se) = fit_slope(&logs);
    let band = SIGMA_BAND * se.max(1e-12);
    if slope > band {
        OracleVerdict::Divergent
    } else if slope < -band {
        OracleVerdict::Integrable
    } else {
        OracleVerdict::Inconclusive
    }
}

/// Least-squares slope of `ys` against `0..len` and its standard error.
fn fit_slope(ys: &[f64]) -> (f64, f64) {
    let n = ys.len() as f64;
    let mx = (n - 1.0) / 2.0;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = (0..ys.len()).map(|k| (k as f64 - mx).powi(2)).sum();
    let sxy: f64 = ys
        .iter()
        .enumerate()
        .map(|(k, y)| (k as f64 - mx) * (y - my))
        .sum();
    let slope = sxy / sxx;
    let sse: f64 = ys
        .iter()
        .enumerate()
        .map(|(k, y)| (y - my - slope * (k as f64 - mx)).powi(2))
        .sum();
    (slope, (sse / (n - 2.0) / sxx).sqrt())
}
