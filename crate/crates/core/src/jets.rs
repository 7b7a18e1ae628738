//! Jet counting at a point: dimensions of the vanishing-order filtration
//! of a section space, the Taylor-expansion estimate
//! `h_0 - h_j <= C(n+j-1, n)`, and the averaged-vanishing-order chain that
//! pushes the order of some basis divisor above `n` once `d_m` exceeds the
//! projective-space count.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::arith::{binomial, rational_from_uint};
use crate::basisdiv::SectionExponents;
use crate::error::{Error, Result};

/// `h_j = h^0(X, m_p^j (x) mL)` for `j = 0..=J`, with `h_0 = d_m` and
/// `h_J = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetProfile {
    pub n: usize,
    pub m: u64,
    pub dims: Vec<u64>,
}

impl JetProfile {
    pub fn d_m(&self) -> u64 {
        self.dims.first().copied().unwrap_or(0)
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] >= w[1])
    }

    /// `h_0 - h_j <= C(n+j-1, n)` for every `j >= 1`. Past the stored range
    /// `h_j = 0` and the bound only grows, so the last entry settles it.
    pub fn satisfies_jet_estimate(&self) -> bool {
        let h0 = self.d_m();
        self.dims
            .iter()
            .enumerate()
            .skip(1)
            .all(|(j, &h)| BigUint::from(h0 - h) <= jet_dim(self.n as u64, j as u64))
    }
}

/// Dimension of polynomials of degree `< j` in `n` variables.
pub fn jet_dim(n: u64, j: u64) -> BigUint {
    binomial(n + j - 1, n)
}

/// `sum_{j=1..J} C(n+j-1, n)`, checked against the closed form
/// `C(n+J, n+1)`.
pub fn jet_sum_identity(n: u64, big_j: u64) -> Result<BigUint> {
    let sum: BigUint = (1..=big_j).map(|j| jet_dim(n, j)).sum();
    if sum != binomial(n + big_j, n + 1) {
        return Err(Error::IdentityViolation { n, j: big_j });
    }
    Ok(sum)
}

/// Filtration dimensions of a monomial basis: `h_j` counts exponents of
/// total degree at least `j`.
pub fn profile_from_exponents(sections: &SectionExponents) -> JetProfile {
    let degrees: Vec<u64> = sections.entries().iter().map(|u| u.iter().sum()).collect();
    let top = degrees.iter().max().map_or(0, |d| d + 1);
    let dims = (0..=top)
        .map(|j| degrees.iter().filter(|&&d| d >= j).count() as u64)
        .collect();
    JetProfile {
        n: sections.n(),
        m: sections.m(),
        dims,
    }
}

/// `sum_{j>=1} h_j / (m d_m)`: the order at `p` of the basis divisor built
/// from a basis adapted to the filtration.
pub fn avg_vanishing(profile: &JetProfile) -> Result<BigRational> {
    let d = profile.d_m();
    if d == 0 {
        return Err(Error::EmptySectionSpace);
    }
    let total: u64 = profile.dims.iter().skip(1).sum();
    Ok(BigRational::new(
        BigInt::from(total),
        BigInt::from(profile.m) * BigInt::from(d),
    ))
}

/// Smallest profile compatible with the jet estimate,
/// `h_j = max(0, d_m - C(n+j-1, n))`, over `j = 0..=m(n+1)+1`.
pub fn worst_case_profile(n: usize, m: u64, d_m: u64) -> JetProfile {
    let top = m * (n as u64 + 1) + 1;
    let dims = std::iter::once(d_m)
        .chain((1..=top).map(|j| {
            let dim = jet_dim(n as u64, j);
            let d = BigUint::from(d_m);
            if d > dim {
                (d - dim).to_u64().expect("bounded by d_m")
            } else {
                0
            }
        }))
        .collect();
    JetProfile { n, m, dims }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBound {
    pub forced: bool,
    pub lower_bound: BigRational,
}

/// Lower bound on the averaged vanishing order of any section space of
/// dimension `d_m` at a point; `forced` when it exceeds `n`, in which case
/// some basis divisor has order `> n` and is not log canonical there.
pub fn excess_forced(n: usize, m: u64, d_m: u64) -> Result<ChainBound> {
    if m == 0 {
        return Err(Error::InvalidInput("level m must be positive".into()));
    }
    let lower_bound = avg_vanishing(&worst_case_profile(n, m, d_m))?;
    Ok(ChainBound {
        forced: lower_bound > BigRational::from_integer(n.into()),
        lower_bound,
    })
}

/// The unclipped chain `n + 1 + 1/m - C(m(n+1)+n+1, n+1) / (m d_m)`,
/// a weaker bound than [`excess_forced`] that crosses `n` exactly at
/// `d_m = C(m(n+1)+n, n)`.
pub fn closed_form_chain(n: usize, m: u64, d_m: u64) -> Result<BigRational> {
    if m == 0 || d_m == 0 {
        return Err(Error::InvalidInput("m and d_m must be positive".into()));
    }
    let nn = n as u64;
    let top = rational_from_uint(&binomial(m * (nn + 1) + nn + 1, nn + 1));
    let md = BigRational::from_integer(BigInt::from(m) * BigInt::from(d_m));
    let head =
        BigRational::from_integer(BigInt::from(nn + 1)) + BigRational::new(1.into(), m.into());
    Ok(head - top / md)
}
