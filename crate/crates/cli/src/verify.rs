//! The checks behind `rootsub verify`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rootsub::engine::count_trajectory;
use rootsub::spectral::root_family_residual;
use rootsub::substitution::WordIter;
use rootsub::{
    count, dominant_eigenvalue_root_family, incidence, is_primitive, power_counts,
    power_iteration, Counts, Matrix, Rational, RuleSet, Word,
};

use crate::output::scientific;

/// Outcome of one named check.
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct VerifyOptions {
    pub digits: u32,
    pub max_depth: Option<usize>,
    pub tol: f64,
    pub length_cap: usize,
    pub max_iters: usize,
}

/// Compares counts of explicitly rewritten words against the matrix route at
/// every depth the length cap allows.
pub fn oracle_equivalence(rules: &RuleSet, seed: &Word, opts: &VerifyOptions) -> Result<Check, rootsub::Error> {
    let mat: Matrix = incidence(rules);
    let m = rules.m();
    let v0: Counts = count(seed, m)?;
    let mut words = WordIter::new(rules, seed.clone(), opts.length_cap)?;
    let limit = opts.max_depth.unwrap_or(usize::MAX);
    let mut trajectory = vec![v0.clone()];
    let mut depth = 0;
    let mut longest = 0;
    let mut mismatch = None;
    for (d, word) in words.by_ref().take(limit.saturating_add(1)).enumerate() {
        if d >= trajectory.len() {
            let next = rootsub::step(&mat, trajectory.last().expect("nonempty"))?;
            trajectory.push(next);
        }
        let by_word: Counts = count(&word, m)?;
        let by_power = power_counts(&mat, &v0, d as u64)?;
        depth = d;
        longest = word.len();
        if by_word != trajectory[d] || by_word != by_power {
            mismatch = Some(d);
            break;
        }
    }
    // Sanity: the stepped trajectory and the jump agree well past the word range.
    let deep = depth + 64;
    let stepped = count_trajectory(&mat, &v0, deep)?;
    let jumped = power_counts(&mat, &v0, deep as u64)?;
    let deep_ok = stepped.last() == Some(&jumped);
    let passed = mismatch.is_none() && deep_ok;
    let detail = match mismatch {
        Some(d) => format!("word counts differ from matrix counts at depth {d}"),
        None if !deep_ok => format!("stepped and squared matrix powers differ at depth {deep}"),
        None => format!(
            "depths 0..={depth} agree (longest word {longest} symbols{})",
            if words.truncated() { ", stopped by length cap" } else { "" }
        ),
    };
    Ok(Check { name: "oracle equivalence", passed, detail })
}

pub fn primitivity(mat: &Matrix) -> Check {
    let passed = is_primitive(mat);
    Check {
        name: "primitivity",
        passed,
        detail: if passed {
            "some power of the incidence matrix is entrywise positive".into()
        } else {
            "no power up to the Wielandt bound is entrywise positive".into()
        },
    }
}

/// Root family: power iteration against the exact `1 + n^(1/m)`.
pub fn root_eigenvalue(m: usize, n: u64, opts: &VerifyOptions) -> Result<Check, rootsub::Error> {
    let mat: Matrix = incidence(&rootsub::make_root_rules(m, n)?);
    let exact = dominant_eigenvalue_root_family(m, n, opts.digits.max(20))?;
    let exact_f = exact.to_rational().to_f64().unwrap_or(f64::NAN);
    let run = power_iteration::<f64, _>(&mat, opts.tol, opts.max_iters);
    let est = run.estimate();
    let gap = (est.value - exact_f).abs();
    let bound = 10.0 * opts.tol;
    let passed = run.converged() && gap <= bound;
    Ok(Check {
        name: "dominant eigenvalue",
        passed,
        detail: format!(
            "exact {} vs power iteration {:.15} after {} iterations{} (gap {:.3e}, bound {:.1e})",
            dominant_eigenvalue_root_family(m, n, opts.digits)?,
            est.value,
            est.iterations,
            if run.converged() { "" } else { " without converging" },
            gap,
            bound
        ),
    })
}

/// Root family: exact residual of the truncated Perron pair.
pub fn root_eigenvector(m: usize, n: u64, opts: &VerifyOptions) -> Result<Check, rootsub::Error> {
    let residual = root_family_residual(m, n, opts.digits)?;
    let scale: BigUint = num_traits::pow(BigUint::from(10u32), opts.digits as usize);
    let bound = Rational::new(
        (BigUint::from(m) * BigUint::from(n + 1) * 10u32).into(),
        scale.into(),
    );
    let passed = residual <= bound;
    Ok(Check {
        name: "eigenvector residual",
        passed,
        detail: format!(
            "max |R v - (1+λ) v| = {} at {} digits (bound {})",
            scientific(&residual, 3),
            opts.digits,
            scientific(&bound, 1)
        ),
    })
}

/// General rules: power iteration must converge, and its residual must be
/// small relative to the matrix scale.
pub fn general_eigenpair(mat: &Matrix, opts: &VerifyOptions) -> (Check, Check) {
    let run = power_iteration::<f64, _>(mat, opts.tol, opts.max_iters);
    let est = run.estimate();
    let eigen = Check {
        name: "dominant eigenvalue",
        passed: run.converged(),
        detail: format!(
            "power iteration {} at {:.15} after {} iterations (no closed form for these rules)",
            if run.converged() { "converged" } else { "did not converge" },
            est.value,
            est.iterations
        ),
    };
    let norm = mat
        .rows()
        .map(|row| row.iter().map(|e| e.to_f64().unwrap_or(f64::INFINITY)).sum::<f64>())
        .fold(0.0, f64::max);
    let vmax = est.vector.iter().copied().fold(0.0, f64::max);
    let bound = 10.0 * opts.tol * (norm + est.value.abs()) * vmax.max(1.0);
    let passed = run.converged() && est.residual <= bound && est.vector.iter().all(|x| !x.is_zero() && *x > 0.0);
    let vector = Check {
        name: "eigenvector residual",
        passed,
        detail: format!("max |R v - μ v| = {:.3e} (bound {:.1e})", est.residual, bound),
    };
    (eigen, vector)
}
