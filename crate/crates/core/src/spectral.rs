//! Dominant eigenpair of incidence matrices.
//!
//! For the root family the Perron eigenvalue is `1 + n^(1/m)` with eigenvector
//! `(λ^(m-1), ..., λ, 1)`, `λ = n^(1/m)`. These are computed exactly here from
//! integer roots, and independently by floating-point power iteration for
//! arbitrary rule sets.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Float, One, Pow, Signed, ToPrimitive, Zero};

use crate::engine::IncidenceMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Reach, Semiring};

/// Exact decimal `mantissa / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointDecimal {
    pub mantissa: BigInt,
    pub scale: u32,
}

impl FixedPointDecimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        FixedPointDecimal { mantissa, scale }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), pow10(self.scale).into())
    }
}

impl fmt::Display for FixedPointDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.magnitude().to_string();
        let sign = if self.mantissa.sign() == Sign::Minus { "-" } else { "" };
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int}.{frac}")
    }
}

pub(crate) fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

/// `floor(radicand^(1/m) * 10^digits)` by bisection on `x^m <= radicand * 10^(m*digits)`.
pub fn integer_root_floor(radicand: &BigUint, m: u32, digits: u32) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::RootDegree);
    }
    let target = radicand * pow10(m * digits);
    if target.is_zero() {
        return Ok(BigUint::zero());
    }
    // 2^(ceil(bits/m)) > target^(1/m)
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (target.bits().div_ceil(u64::from(m)));
    // Invariant: lo^m <= target < hi^m.
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1u32;
        if Pow::pow(&mid, m) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn check_root_params(m: usize, n: u64) -> Result<u32> {
    if m < 1 {
        return Err(Error::AlphabetSize { min: 1, got: m });
    }
    if n < 1 {
        return Err(Error::Radicand(n));
    }
    u32::try_from(m).map_err(|_| Error::AlphabetSize { min: 1, got: m })
}

/// `n^(1/m)` truncated to `digits` places.
pub fn root_truncated(m: usize, n: u64, digits: u32) -> Result<FixedPointDecimal> {
    let m = check_root_params(m, n)?;
    let x = integer_root_floor(&BigUint::from(n), m, digits)?;
    Ok(FixedPointDecimal::new(x.into(), digits))
}

/// Dominant eigenvalue `1 + n^(1/m)` of the root-family incidence matrix,
/// truncated to `digits` places.
pub fn dominant_eigenvalue_root_family(m: usize, n: u64, digits: u32) -> Result<FixedPointDecimal> {
    let root = root_truncated(m, n, digits)?;
    Ok(FixedPointDecimal::new(root.mantissa + BigInt::from(pow10(digits)), digits))
}

/// Perron vector `(λ^(m-1), ..., λ, 1)` of the root family, each component
/// truncated to `digits` places. Component `k` is `(n^(m-1-k))^(1/m)`, so
/// every digit is exact.
pub fn perron_vector_root_family(m: usize, n: u64, digits: u32) -> Result<Vec<FixedPointDecimal>> {
    let degree = check_root_params(m, n)?;
    let n = BigUint::from(n);
    (0..degree)
        .rev()
        .map(|power| {
            let x = integer_root_floor(&Pow::pow(&n, power), degree, digits)?;
            Ok(FixedPointDecimal::new(x.into(), digits))
        })
        .collect()
}

/// Whether some power of `mat` is entrywise positive. Only exponents up to the
/// Wielandt bound `(m-1)^2 + 1` need checking.
pub fn is_primitive<T: Semiring>(mat: &IncidenceMatrix<T>) -> bool {
    let pattern = mat.map(|e| Reach(!e.is_zero()));
    let m = pattern.dim();
    let bound = (m - 1) * (m - 1) + 1;
    let mut power = pattern.clone();
    for _ in 1..bound {
        if power.is_positive() {
            return true;
        }
        power = power.mul(&pattern).expect("same dimension");
    }
    power.is_positive()
}

/// A floating-point estimate of the dominant eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenEstimate<F> {
    pub value: F,
    /// Scaled so the last component is 1.
    pub vector: Vec<F>,
    /// `max_j |(mat*v)_j - value*v_j|`.
    pub residual: F,
    pub iterations: usize,
}

/// Outcome of [`power_iteration`].
#[derive(Debug, Clone, PartialEq)]
pub enum PowerIteration<F> {
    Converged(EigenEstimate<F>),
    /// The iteration budget ran out; carries the last estimate.
    NotConverged(EigenEstimate<F>),
}

impl<F> PowerIteration<F> {
    pub fn estimate(&self) -> &EigenEstimate<F> {
        match self {
            PowerIteration::Converged(e) | PowerIteration::NotConverged(e) => e,
        }
    }

    pub fn into_estimate(self) -> EigenEstimate<F> {
        match self {
            PowerIteration::Converged(e) | PowerIteration::NotConverged(e) => e,
        }
    }

    pub fn converged(&self) -> bool {
        matches!(self, PowerIteration::Converged(_))
    }
}

fn apply<F: Float>(a: &[Vec<F>], v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(), |acc, (&x, &y)| acc + x * y))
        .collect()
}

/// Power iteration from the all-ones vector, normalising the last component
/// to 1, until successive eigenvalue estimates (and vector components) differ
/// by less than `tol`.
///
/// Meant for primitive matrices; on others the result is whatever the
/// iteration settles on (or `NotConverged`).
pub fn power_iteration<F, T>(mat: &IncidenceMatrix<T>, tol: F, max_iters: usize) -> PowerIteration<F>
where
    F: Float,
    T: Semiring + ToPrimitive,
{
    let a: Vec<Vec<F>> = mat
        .rows()
        .map(|row| {
            row.iter()
                .map(|e| e.to_f64().and_then(F::from).unwrap_or_else(F::infinity))
                .collect()
        })
        .collect();
    let m = a.len();
    let mut v = vec![F::one(); m];
    let mut value = F::nan();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let w = apply(&a, &v);
        let last = w[m - 1];
        if last.partial_cmp(&F::zero()) != Some(std::cmp::Ordering::Greater) || !last.is_finite() {
            break;
        }
        // Growth of the total mass; with v > 0 this is a weighted mean of the
        // componentwise ratios and so brackets the eigenvalue.
        let next = w.iter().fold(F::zero(), |s, &x| s + x) / v.iter().fold(F::zero(), |s, &x| s + x);
        let next_v: Vec<F> = w.into_iter().map(|x| x / last).collect();
        let shift = next_v
            .iter()
            .zip(&v)
            .map(|(&x, &y)| (x - y).abs())
            .fold(F::zero(), F::max);
        let delta = (next - value).abs();
        value = next;
        v = next_v;
        if delta < tol && shift < tol {
            converged = true;
            break;
        }
    }
    let av = apply(&a, &v);
    let residual = av
        .iter()
        .zip(&v)
        .map(|(&x, &y)| (x - value * y).abs())
        .fold(F::zero(), F::max);
    let estimate = EigenEstimate { value, vector: v, residual, iterations };
    if converged {
        PowerIteration::Converged(estimate)
    } else {
        PowerIteration::NotConverged(estimate)
    }
}

fn to_big_int<T: Clone + Into<BigInt>>(e: &T) -> BigInt {
    e.clone().into()
}

/// `max_j |(mat*v)_j - value*v_j|`, exactly.
pub fn exact_residual<T>(
    mat: &IncidenceMatrix<T>,
    value: &BigRational,
    vector: &[BigRational],
) -> Result<BigRational>
where
    T: Semiring + Into<BigInt>,
{
    if vector.len() != mat.dim() {
        return Err(Error::Dimension { expected: mat.dim(), got: vector.len() });
    }
    let mut worst = BigRational::zero();
    for (row, vj) in mat.rows().zip(vector) {
        let mv = row
            .iter()
            .zip(vector)
            .fold(BigRational::zero(), |acc, (e, x)| acc + x * BigRational::from(to_big_int(e)));
        let diff = (mv - value * vj).abs();
        if diff > worst {
            worst = diff;
        }
    }
    Ok(worst)
}

/// Exact residual of the truncated root-family eigenpair at `digits` places.
pub fn root_family_residual(m: usize, n: u64, digits: u32) -> Result<BigRational> {
    let rules = crate::substitution::make_root_rules(m, n)?;
    let mat: IncidenceMatrix<BigUint> = crate::engine::incidence(&rules);
    let value = dominant_eigenvalue_root_family(m, n, digits)?.to_rational();
    let vector: Vec<BigRational> = perron_vector_root_family(m, n, digits)?
        .iter()
        .map(FixedPointDecimal::to_rational)
        .collect();
    exact_residual(&mat, &value, &vector)
}

/// `det(mat - x*I)` over the rationals, by fraction-exact Gaussian elimination.
pub fn characteristic_at<T>(mat: &IncidenceMatrix<T>, x: &BigRational) -> BigRational
where
    T: Semiring + Into<BigInt>,
{
    let m = mat.dim();
    let mut a: Vec<Vec<BigRational>> = mat
        .rows()
        .map(|row| row.iter().map(|e| BigRational::from(to_big_int(e))).collect())
        .collect();
    for (j, row) in a.iter_mut().enumerate() {
        row[j] -= x;
    }
    let mut det = BigRational::one();
    for col in 0..m {
        let Some(pivot) = (col..m).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..m {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            let (upper, lower) = a.split_at_mut(r);
            for (target, pivot_entry) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= &factor * pivot_entry;
            }
        }
    }
    det
}

/// Whether `det(R - xI)` changes sign (or vanishes) between `1 + x/10^d` and
/// `1 + (x+1)/10^d`, where `x` is the truncated root mantissa.
pub fn characteristic_brackets_root(m: usize, n: u64, digits: u32) -> Result<bool> {
    let rules = crate::substitution::make_root_rules(m, n)?;
    let mat: IncidenceMatrix<BigUint> = crate::engine::incidence(&rules);
    let root = root_truncated(m, n, digits)?;
    let scale = BigRational::from(BigInt::from(pow10(digits)));
    let lo = BigRational::one() + BigRational::from(root.mantissa.clone()) / &scale;
    let hi = BigRational::one() + BigRational::from(root.mantissa + 1) / &scale;
    let at_lo = characteristic_at(&mat, &lo);
    let at_hi = characteristic_at(&mat, &hi);
    Ok(at_lo.is_zero() || at_lo.signum() != at_hi.signum())
}
