//! Hilbert polynomials `h^0(X, -mK_X) = sum a_i m^i`: closed Riemann–Roch
//! forms in dimensions 2, 3 and 4, the projective-space reference, exact
//! Ehrhart fitting, the volume bound `(-K_X)^n <= (n+1)^n`, and the
//! threshold `m0` beyond which a volume gap forces a strict inequality of
//! section counts.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, rational, rational_from_uint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Fitted,
    Formula,
}

/// Coefficients `a_0..a_n` (constant term first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HrrCoefficients {
    pub dim: usize,
    pub coeffs: Vec<BigRational>,
    pub provenance: Provenance,
}

impl HrrCoefficients {
    fn formula(dim: usize, coeffs: Vec<BigRational>) -> Self {
        Self {
            dim,
            coeffs,
            provenance: Provenance::Formula,
        }
    }

    /// `vol/2 m^2 + vol/2 m + 1`.
    pub fn surface(vol: u64) -> Self {
        let half = BigRational::new(vol.into(), 2.into());
        Self::formula(2, vec![BigRational::one(), half.clone(), half])
    }

    /// `m(2m+1)(m+1)/12 vol + 2m + 1`.
    pub fn threefold(vol: u64) -> Self {
        let v = BigRational::from_integer(vol.into());
        Self::formula(
            3,
            vec![
                BigRational::one(),
                &v / BigInt::from(12) + BigInt::from(2),
                &v / BigInt::from(4),
                &v / BigInt::from(6),
            ],
        )
    }

    /// `(m^4 + 2m^3 + m^2)/24 vol + (m^2 + m)/24 c1^2c2 + 1`.
    pub fn fourfold(vol: u64, c1c2: i64) -> Self {
        let v = BigRational::from_integer(vol.into());
        let c = rational(c1c2, 24);
        let v24 = &v / BigInt::from(24);
        Self::formula(
            4,
            vec![
                BigRational::one(),
                c.clone(),
                &v24 + &c,
                &v24 * BigInt::from(2),
                v24,
            ],
        )
    }

    /// Expanded `C(m(n+1)+n, n) = prod_{k=1..n} (m(n+1)+k)/k`.
    pub fn projective_space(n: usize) -> Self {
        let mut poly = vec![BigRational::one()];
        let step = BigRational::from_integer(BigInt::from(n + 1));
        for k in 1..=n {
            let kk = BigRational::from_integer(BigInt::from(k));
            // multiply by (step * m + k) / k
            let factor = [BigRational::one(), &step / &kk];
            poly = poly_mul(&poly, &factor);
        }
        Self::formula(n, poly)
    }

    pub fn eval(&self, m: u64) -> BigRational {
        hrr_eval(self, m)
    }

    pub fn leading(&self) -> &BigRational {
        &self.coeffs[self.dim]
    }

    /// Checks `a_0 = 1`, `a_n = vol/n!`, `a_{n-1} = vol/(2 (n-1)!)`.
    pub fn coefficient_facts(&self, vol: u64) -> CoefficientFacts {
        let n = self.dim;
        let v = BigRational::from_integer(vol.into());
        let fact = |k: usize| -> BigInt { (1..=k).map(BigInt::from).product() };
        let get = |i: usize| {
            self.coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(BigRational::zero)
        };
        CoefficientFacts {
            constant_is_one: get(0).is_one(),
            leading_is_volume: get(n) == &v / fact(n),
            subleading_is_half_volume: n == 0 || get(n - 1) == &v / (fact(n - 1) * BigInt::from(2)),
        }
    }
}

impl fmt::Display for HrrCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientFacts {
    pub constant_is_one: bool,
    pub leading_is_volume: bool,
    pub subleading_is_half_volume: bool,
}

impl CoefficientFacts {
    pub fn all(&self) -> bool {
        self.constant_is_one && self.leading_is_volume && self.subleading_is_half_volume
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(coeffs: &[BigRational], m: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * m + c)
}

/// `h^0(P^n, -mK) = C(m(n+1)+n, n)`.
pub fn h0_pn(n: u64, m: u64) -> BigUint {
    binomial(m * (n + 1) + n, n)
}

pub fn hrr_eval(c: &HrrCoefficients, m: u64) -> BigRational {
    poly_eval(&c.coeffs, &BigRational::from_integer(m.into()))
}

fn integral(value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegralValue(value.to_string()))
    }
}

/// Surface formula `m(m+1)/2 vol + 1`; always integral.
pub fn hrr_dim2(vol: u64, m: u64) -> BigInt {
    let m = BigInt::from(m);
    &m * (&m + 1) / 2 * BigInt::from(vol) + 1
}

/// Threefold formula `m(2m+1)(m+1)/12 vol + 2m + 1`. Odd volumes can make
/// the first term fractional, which is reported rather than rounded.
pub fn hrr_dim3(vol: u64, m: u64) -> Result<BigInt> {
    let mi = BigInt::from(m);
    let head = BigRational::new(
        &mi * (2 * &mi + 1) * (&mi + 1) * BigInt::from(vol),
        12.into(),
    );
    integral(head + BigRational::from_integer(2 * mi + 1))
}

/// Fourfold formula with caller-supplied `c1^2 c2`.
pub fn hrr_dim4(vol: u64, c1c2: i64, m: u64) -> Result<BigInt> {
    integral(hrr_eval(&HrrCoefficients::fourfold(vol, c1c2), m))
}

/// Exact interpolation of a degree-`n` polynomial through the first `n + 1`
/// samples; any further samples must agree with the fit.
pub fn ehrhart_fit(samples: &[(u64, u64)], n: usize) -> Result<HrrCoefficients> {
    let mut nodes: Vec<(u64, u64)> = Vec::with_capacity(n + 1);
    let mut extra = Vec::new();
    for &(m, count) in samples {
        if let Some(&(_, c)) = nodes.iter().find(|(x, _)| *x == m) {
            if c != count {
                return Err(Error::InconsistentSamples {
                    m,
                    count: count.to_string(),
                    predicted: c.to_string(),
                });
            }
            continue;
        }
        if nodes.len() <= n {
            nodes.push((m, count));
        } else {
            extra.push((m, count));
        }
    }
    if nodes.len() < n + 1 {
        return Err(Error::InsufficientSamples {
            needed: n + 1,
            got: nodes.len(),
        });
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (k, &(xk, yk)) in nodes.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in nodes.iter().enumerate() {
            if j == k {
                continue;
            }
            let xj = BigRational::from_integer(xj.into());
            basis = poly_mul(&basis, &[-xj.clone(), BigRational::one()]);
            denom *= BigRational::from_integer(xk.into()) - xj;
        }
        let scale = BigRational::from_integer(yk.into()) / denom;
        for (c, b) in coeffs.iter_mut().zip(basis) {
            *c += &scale * b;
        }
    }
    let fit = HrrCoefficients {
        dim: n,
        coeffs,
        provenance: Provenance::Fitted,
    };
    for (m, count) in extra {
        let predicted = fit.eval(m);
        if predicted != BigRational::from_integer(count.into()) {
            return Err(Error::InconsistentSamples {
                m,
                count: count.to_string(),
                predicted: predicted.to_string(),
            });
        }
    }
    Ok(fit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FujitaStatus {
    StrictlyBelow,
    Equality,
    Violation,
}

impl fmt::Display for FujitaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::StrictlyBelow => "StrictlyBelow",
            Self::Equality => "Equality",
            Self::Violation => "Violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FujitaVerdict {
    pub volume: u64,
    pub bound: BigUint,
    pub status: FujitaStatus,
}

/// Compares `(-K_X)^n` with `(n+1)^n`. A violation is a finding, not an
/// error.
pub fn fujita_check(volume: u64, n: u32) -> FujitaVerdict {
    let bound = BigUint::from(n + 1).pow(n);
    let status = match BigUint::from(volume).cmp(&bound) {
        std::cmp::Ordering::Less => FujitaStatus::StrictlyBelow,
        std::cmp::Ordering::Equal => FujitaStatus::Equality,
        std::cmp::Ordering::Greater => FujitaStatus::Violation,
    };
    FujitaVerdict {
        volume,
        bound,
        status,
    }
}

/// Smallest `m0 >= 1` with `p(m) > 0` for every integer `m >= m0`. The
/// leading coefficient must be positive. Past the Cauchy root bound the
/// polynomial has no roots, so scanning up to it settles every larger `m`.
pub fn positivity_threshold(coeffs: &[BigRational]) -> Result<u64> {
    let lead = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map(|i| &coeffs[i])
        .filter(|c| c.is_positive())
        .ok_or_else(|| Error::InvalidInput("leading coefficient must be positive".into()))?;
    let ratio = coeffs
        .iter()
        .map(|c| (c / lead).abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let cauchy = (BigRational::one() + ratio).ceil().to_integer();
    let limit = cauchy
        .to_u64()
        .ok_or(Error::Overflow("positivity threshold"))?;
    let mut m0 = 1;
    for m in 1..=limit {
        if !poly_eval(coeffs, &BigRational::from_integer(m.into())).is_positive() {
            m0 = m + 1;
        }
    }
    Ok(m0)
}

/// `m^n/n! - 2A sum_{i<n} m^i`, the uniform lower bound on
/// `h^0(P^n, -mK) - h^0(X, -mK)` whenever the volume of `X` sits below
/// `(n+1)^n` and every lower coefficient of both polynomials is bounded by
/// `A` in absolute value.
pub fn uniform_gap_polynomial(n: usize, bound: &BigRational) -> Vec<BigRational> {
    let two_a = bound * BigInt::from(2);
    let mut coeffs = vec![-two_a; n];
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    coeffs.push(BigRational::new(BigInt::one(), fact));
    coeffs
}

fn check_reference_bound(n: usize, bound: &BigRational) -> Result<()> {
    if !bound.is_positive() {
        return Err(Error::InvalidInput(
            "coefficient bound must be positive".into(),
        ));
    }
    let pn = HrrCoefficients::projective_space(n);
    if let Some(c) = pn.coeffs[..n].iter().find(|c| c.abs() > *bound) {
        return Err(Error::InvalidInput(format!(
            "coefficient {c} of the P^{n} polynomial exceeds the bound {bound}"
        )));
    }
    Ok(())
}

/// Threshold from the uniform bound: the smallest `m0` such that
/// `m^n/n! > 2A sum_{i<n} m^i` for all `m >= m0`. The bound `A` is an input;
/// it must dominate the lower coefficients of the `P^n` polynomial.
pub fn compute_m0(n: usize, bound: &BigRational) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    check_reference_bound(n, bound)?;
    positivity_threshold(&uniform_gap_polynomial(n, bound))
}

/// Sharper threshold when the Hilbert polynomial of `X` is known as a
/// function of its volume: the largest per-volume threshold of
/// `h^0(P^n) - h^0(X)` over all volumes `1..(n+1)^n - 1`.
pub fn compute_m0_exact(n: usize, family: impl Fn(u64) -> HrrCoefficients) -> Result<u64> {
    let pn = HrrCoefficients::projective_space(n);
    let top = (n as u64 + 1).pow(n as u32);
    let mut worst = 1;
    for vol in 1..top {
        let x = family(vol);
        let diff: Vec<BigRational> = (0..=n)
            .map(|i| {
                let xi = x.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                &pn.coeffs[i] - xi
            })
            .collect();
        worst = worst.max(positivity_threshold(&diff)?);
    }
    Ok(worst)
}

/// Post-hoc check of a threshold from [`compute_m0`]: for every volume
/// `1..(n+1)^n - 1` and every `m` in `m0..=m_end`, the worst admissible
/// Hilbert polynomial `vol/n! m^n + A sum_{i<n} m^i` stays strictly below
/// `h^0(P^n, -mK)`. Returns the first counterexample `(vol, m)`.
pub fn verify_m0(n: usize, bound: &BigRational, m0: u64, m_end: u64) -> Option<(u64, u64)> {
    let top = (n as u64 + 1).pow(n as u32);
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    for m in m0..=m_end {
        let mq = BigRational::from_integer(m.into());
        let tail: BigRational = (0..n).map(|i| num_traits::pow(mq.clone(), i)).sum();
        let slack = bound * tail;
        let lead = BigRational::new(num_traits::pow(BigInt::from(m), n), fact.clone());
        let reference = rational_from_uint(&h0_pn(n as u64, m));
        for vol in 1..top {
            let worst = &lead * BigInt::from(vol) + &slack;
            if worst >= reference {
                return Some((vol, m));
            }
        }
    }
    None
}
