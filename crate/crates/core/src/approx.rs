//! Streams of exact rational approximants `n_j / n_{j+1}`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::engine::{incidence, step, IncidenceMatrix};
use crate::error::{Error, Result};
use crate::spectral::{pow10, root_truncated};
use crate::substitution::{make_root_rules, CountVector};

/// Default iteration cap for [`Approximants`].
pub const DEFAULT_MAX_ITERS: usize = 200;

/// A ratio of two counts. A zero denominator gives `Infinity`, or `Undefined`
/// when the numerator is zero as well.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ratio {
    Finite(BigRational),
    Infinity,
    Undefined,
}

impl Ratio {
    pub fn from_counts(num: &BigUint, den: &BigUint) -> Ratio {
        match (num.is_zero(), den.is_zero()) {
            (true, true) => Ratio::Undefined,
            (false, true) => Ratio::Infinity,
            _ => Ratio::Finite(BigRational::new(num.clone().into(), den.clone().into())),
        }
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Ratio::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Decimal rendering; non-finite values print as `infinity` and `NaN`.
    pub fn render(&self, places: usize) -> String {
        match self {
            Ratio::Finite(r) => decimal(r, places),
            Ratio::Infinity => "infinity".to_string(),
            Ratio::Undefined => "NaN".to_string(),
        }
    }
}

/// `counts[j] / counts[j+1]`.
pub fn ratio(counts: &CountVector<BigUint>, j: usize) -> Result<Ratio> {
    let m = counts.len();
    if j + 1 >= m {
        return Err(Error::RatioIndex { index: j, m });
    }
    Ok(Ratio::from_counts(&counts[j], &counts[j + 1]))
}

/// `r` with exactly `places` fractional digits, rounded to nearest with ties
/// away from zero.
pub fn decimal(r: &BigRational, places: usize) -> String {
    let negative = r.is_negative();
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let scaled = num * pow10(places as u32);
    let (mut q, rem) = scaled.div_rem(den);
    if rem << 1u32 >= *den {
        q += 1u32;
    }
    let digits = format!("{q:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if negative && !q.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `|r^m - n|`.
pub fn abs_error(r: &BigRational, m: usize, n: u64) -> BigRational {
    let power: BigRational = Pow::pow(r, m as u32);
    (power - BigRational::from_integer(BigInt::from(n))).abs()
}

/// `n^(1/m)` truncated to `digits` places, as a string.
pub fn reference_digits(m: usize, n: u64, digits: u32) -> Result<String> {
    Ok(root_truncated(m, n, digits)?.to_string())
}

/// Why a stream ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    /// Reached the iteration cap.
    MaxIters,
    /// Successive leading ratios agreed to the requested number of places.
    Converged,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::MaxIters => "max-iters",
            StopReason::Converged => "converged",
        })
    }
}

/// One line of an approximant table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximantRow {
    pub iter: usize,
    pub counts: CountVector<BigUint>,
    /// `ratios[j] = counts[j] / counts[j+1]`.
    pub ratios: Vec<Ratio>,
    pub decimals: Vec<String>,
    /// `|r_j^m - n|` for finite ratios; `None` for non-finite ratios or when
    /// the stream has no root target.
    pub abs_errors: Vec<Option<BigRational>>,
    /// Set on the last row of the stream.
    pub stop: Option<StopReason>,
}

/// The `(m, n)` of a root-family stream; used for the error column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootTarget {
    pub m: usize,
    pub n: u64,
}

/// Settings for an approximant stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxConfig {
    pub max_iters: usize,
    /// Stop once `|r_0(i) - r_0(i-1)| < 10^-stop_places`.
    pub stop_places: Option<u32>,
    /// Fractional digits in rendered decimals.
    pub places: usize,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig { max_iters: DEFAULT_MAX_ITERS, stop_places: None, places: 14 }
    }
}

/// Iterator over [`ApproximantRow`]s, starting at row 0 (the seed counts).
#[derive(Debug, Clone)]
pub struct Approximants {
    matrix: IncidenceMatrix<BigUint>,
    target: Option<RootTarget>,
    config: ApproxConfig,
    threshold: Option<BigRational>,
    counts: CountVector<BigUint>,
    iter: usize,
    previous: Option<Ratio>,
    done: bool,
}

impl Approximants {
    /// A stream over an arbitrary incidence matrix. `target` enables the
    /// exact error column.
    pub fn with_matrix(
        matrix: IncidenceMatrix<BigUint>,
        seed_counts: CountVector<BigUint>,
        target: Option<RootTarget>,
        config: ApproxConfig,
    ) -> Result<Self> {
        let m = matrix.dim();
        if m < 2 {
            return Err(Error::AlphabetSize { min: 2, got: m });
        }
        if seed_counts.len() != m {
            return Err(Error::Dimension { expected: m, got: seed_counts.len() });
        }
        if seed_counts.is_zero() {
            return Err(Error::ZeroSeed);
        }
        let threshold = config
            .stop_places
            .map(|p| BigRational::new(BigInt::one(), pow10(p).into()));
        Ok(Approximants {
            matrix,
            target,
            config,
            threshold,
            counts: seed_counts,
            iter: 0,
            previous: None,
            done: false,
        })
    }

    fn row(&self, counts: CountVector<BigUint>, stop: Option<StopReason>) -> ApproximantRow {
        let m = counts.len();
        let ratios: Vec<Ratio> = (0..m - 1)
            .map(|j| Ratio::from_counts(&counts[j], &counts[j + 1]))
            .collect();
        let decimals = ratios.iter().map(|r| r.render(self.config.places)).collect();
        let abs_errors = ratios
            .iter()
            .map(|r| match (r, self.target) {
                (Ratio::Finite(q), Some(t)) => Some(abs_error(q, t.m, t.n)),
                _ => None,
            })
            .collect();
        ApproximantRow { iter: self.iter, counts, ratios, decimals, abs_errors, stop }
    }
}

impl Iterator for Approximants {
    type Item = ApproximantRow;

    fn next(&mut self) -> Option<ApproximantRow> {
        if self.done {
            return None;
        }
        let lead = Ratio::from_counts(&self.counts[0], &self.counts[1]);
        let settled = match (&self.threshold, &self.previous, &lead) {
            (Some(eps), Some(Ratio::Finite(prev)), Ratio::Finite(cur)) => (cur - prev).abs() < *eps,
            _ => false,
        };
        let stop = if settled {
            Some(StopReason::Converged)
        } else if self.iter >= self.config.max_iters {
            Some(StopReason::MaxIters)
        } else {
            None
        };
        let next = step(&self.matrix, &self.counts).expect("dimension checked");
        let counts = std::mem::replace(&mut self.counts, next);
        let row = self.row(counts, stop);
        self.previous = Some(lead);
        self.iter += 1;
        self.done = stop.is_some();
        Some(row)
    }
}

/// The root-family stream for `n^(1/m)`; rows `0..=max_iters` unless stopped early.
pub fn approximants(
    m: usize,
    n: u64,
    seed_counts: CountVector<BigUint>,
    config: ApproxConfig,
) -> Result<Approximants> {
    if m < 2 {
        return Err(Error::AlphabetSize { min: 2, got: m });
    }
    let rules = make_root_rules(m, n)?;
    Approximants::with_matrix(incidence(&rules), seed_counts, Some(RootTarget { m, n }), config)
}
