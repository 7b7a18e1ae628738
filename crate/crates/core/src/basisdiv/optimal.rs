use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::divisor::LocalBasisDivisor;
use super::exponents::SectionExponents;
use crate::error::{Error, Result};

/// Total degree first, then lexicographic.
pub fn graded_lex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A basis of a monomial section space written against a reference
/// monomial basis: row `i` is `s_i = sum_k matrix[i][k] z^{u_k}` with
/// `u_k` the `k`-th reference exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralBasis {
    pub n: usize,
    pub m: u64,
    pub matrix: Vec<Vec<BigRational>>,
}

impl GeneralBasis {
    pub fn identity(reference: &SectionExponents) -> Self {
        let d = reference.d_m();
        let matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            n: reference.n(),
            m: reference.m(),
            matrix,
        }
    }

    fn check_against(&self, reference: &SectionExponents) -> Result<()> {
        let d = reference.d_m();
        if self.n != reference.n() || self.m != reference.m() {
            return Err(Error::InvalidInput(
                "basis and reference disagree on n or m".into(),
            ));
        }
        if self.matrix.len() != d || self.matrix.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput(format!(
                "basis matrix must be {d} x {d}"
            )));
        }
        Ok(())
    }
}

/// Random invertible integer combination of the reference monomials with
/// entries in `-5..=5`. Reproducible for a given seed.
pub fn random_basis(reference: &SectionExponents, seed: u64) -> GeneralBasis {
    let d = reference.d_m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let entries: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..d).map(|_| rng.gen_range(-5i64..=5)).collect())
            .collect();
        // Nonzero determinant mod p implies nonzero over Q; the rare draws
        // singular mod p are simply redrawn.
        if invertible_mod_p(&entries) {
            return GeneralBasis {
                n: reference.n(),
                m: reference.m(),
                matrix: entries
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|x| BigRational::from_integer(x.into()))
                            .collect()
                    })
                    .collect(),
            };
        }
    }
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn invertible_mod_p(matrix: &[Vec<i64>]) -> bool {
    let d = matrix.len();
    let mut rows: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| x.rem_euclid(PRIME as i64) as u64)
                .collect()
        })
        .collect();
    for k in 0..d {
        let Some(pivot) = (k..d).find(|&i| rows[i][k] != 0) else {
            return false;
        };
        rows.swap(k, pivot);
        let inv = pow_mod(rows[k][k], PRIME - 2);
        let (head, tail) = rows.split_at_mut(k + 1);
        let pk = &head[k];
        for row in tail.iter_mut() {
            let f = mul_mod(row[k], inv);
            if f == 0 {
                continue;
            }
            for j in k..d {
                row[j] = (row[j] + PRIME - mul_mod(f, pk[j])) % PRIME;
            }
        }
    }
    true
}

/// Row-reduces `basis` so that every section has a distinct lowest term
/// in graded-lex order and returns the exponents of those lowest terms.
/// The span is the whole reference space, so they run over exactly the
/// reference exponents.
pub fn filtration_optimal_basis(
    basis: &GeneralBasis,
    reference: &SectionExponents,
) -> Result<SectionExponents> {
    filtration_optimal_basis_by(basis, reference, graded_lex_cmp)
}

/// [`filtration_optimal_basis`] under any monomial order refining total
/// degree.
pub fn filtration_optimal_basis_by(
    basis: &GeneralBasis,
    reference: &SectionExponents,
    order: impl Fn(&[u64], &[u64]) -> Ordering,
) -> Result<SectionExponents> {
    basis.check_against(reference)?;
    let pivots = echelon(basis, reference, order)?;
    let entries = pivots
        .into_iter()
        .map(|k| reference.entries()[k].clone())
        .collect();
    SectionExponents::new(reference.n(), reference.m(), entries)
}

/// Basis divisor of an unreduced basis, coordinate by coordinate: the
/// order of `s_i` along `{z_j = 0}` is the least `j`-th exponent in its
/// support.
pub fn raw_basis_divisor(
    basis: &GeneralBasis,
    reference: &SectionExponents,
) -> Result<LocalBasisDivisor> {
    basis.check_against(reference)?;
    let n = reference.n();
    let d_m = reference.d_m();
    let denom = BigInt::from(reference.m()) * BigInt::from(d_m.max(1));
    let coefficients = (0..n)
        .map(|j| {
            let total: u64 = basis
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(reference.entries())
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(_, u)| u[j])
                        .min()
                        .unwrap_or(0)
                })
                .sum();
            BigRational::new(total.into(), denom.clone())
        })
        .collect();
    Ok(LocalBasisDivisor {
        n,
        m: reference.m(),
        d_m,
        coefficients,
    })
}

/// Pivot columns of fraction-free (Bareiss) elimination with columns
/// visited in `order` of their exponents: entry `i` is the column whose
/// monomial is the lowest term of the `i`-th reduced section.
fn echelon(
    basis: &GeneralBasis,
    reference: &SectionExponents,
    order: impl Fn(&[u64], &[u64]) -> Ordering,
) -> Result<Vec<usize>> {
    let entries = reference.entries();
    let d = entries.len();
    let mut columns: Vec<usize> = (0..d).collect();
    columns.sort_by(|&a, &b| order(&entries[a], &entries[b]));

    // Clear denominators row by row; this does not change row spaces.
    let mut rows: Vec<Vec<BigInt>> = basis
        .matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            columns
                .iter()
                .map(|&c| (&row[c] * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut previous = BigInt::one();
    for k in 0..d {
        let pivot = (k..d)
            .find(|&i| !rows[i][k].is_zero())
            .ok_or(Error::SingularMatrix)?;
        rows.swap(k, pivot);
        let (head, tail) = rows.split_at_mut(k + 1);
        let pk = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..d {
                row[j] = (&row[j] * &pk[k] - &row[k] * &pk[j]) / &previous;
            }
            row[k] = BigInt::zero();
        }
        previous = head[k][k].clone();
    }
    Ok(columns)
}
