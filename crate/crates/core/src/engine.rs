//! Incidence matrices and exact iteration of count vectors.
//!
//! Rewriting a word pushes its count vector forward by the incidence matrix
//! of the rule set, so deep iterates can be counted without ever building the
//! words. Entries are generic over [`Semiring`]; the crate-root aliases pick
//! arbitrary-precision integers.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Semiring;
use crate::substitution::{CountVector, RuleSet};

/// Dense square matrix; `entry(j, k)` is how often symbol `j` occurs in the
/// image of symbol `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix<T> {
    m: usize,
    entries: Vec<T>,
}

impl<T: Semiring> IncidenceMatrix<T> {
    /// Builds a matrix from rows. Fails unless `rows` is square and nonempty.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::AlphabetSize { min: 1, got: 0 });
        }
        let mut entries = Vec::with_capacity(m * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::Dimension { expected: m, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(IncidenceMatrix { m, entries })
    }

    pub fn identity(m: usize) -> Self {
        let mut entries = vec![T::zero(); m * m];
        for j in 0..m {
            entries[j * m + j] = T::one();
        }
        IncidenceMatrix { m, entries }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.m + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.m)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> IncidenceMatrix<U> {
        IncidenceMatrix { m: self.m, entries: self.entries.iter().map(f).collect() }
    }

    /// Sum of column `col`.
    pub fn column_sum(&self, col: usize) -> T {
        (0..self.m).fold(T::zero(), |acc, row| acc + self.entry(row, col).clone())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.m != rhs.m {
            return Err(Error::Dimension { expected: self.m, got: rhs.m });
        }
        let m = self.m;
        let mut entries = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let mut acc = T::zero();
                for k in 0..m {
                    let a = self.entry(i, k);
                    let b = rhs.entry(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                entries.push(acc);
            }
        }
        Ok(IncidenceMatrix { m, entries })
    }

    /// True when every entry is nonzero.
    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| !e.is_zero())
    }
}

impl<T: fmt::Display> fmt::Display for IncidenceMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.m) {
            f.write_str("[")?;
            for (k, e) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// The incidence matrix of `rules`: column `k` is the count vector of the
/// image of symbol `k`.
pub fn incidence<T: Semiring>(rules: &RuleSet) -> IncidenceMatrix<T> {
    let m = rules.m();
    let mut entries = vec![T::zero(); m * m];
    for (k, image) in rules.images().iter().enumerate() {
        for s in image.symbols() {
            let e = &mut entries[s.index() * m + k];
            *e = e.clone() + T::one();
        }
    }
    IncidenceMatrix { m, entries }
}

/// One rewriting step on counts: `mat * v`.
pub fn step<T: Semiring>(mat: &IncidenceMatrix<T>, v: &CountVector<T>) -> Result<CountVector<T>> {
    if v.len() != mat.m {
        return Err(Error::Dimension { expected: mat.m, got: v.len() });
    }
    let out = mat
        .rows()
        .map(|row| {
            row.iter().zip(v.as_slice()).fold(T::zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        })
        .collect();
    Ok(CountVector::new(out))
}

/// `mat^depth` by repeated squaring; `depth = 0` gives the identity.
pub fn matrix_power<T: Semiring>(mat: &IncidenceMatrix<T>, depth: u64) -> IncidenceMatrix<T> {
    let mut result = IncidenceMatrix::identity(mat.m);
    let mut base = mat.clone();
    let mut e = depth;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base).expect("same dimension");
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).expect("same dimension");
        }
    }
    result
}

/// Depth below which [`power_counts`] just steps the vector; matrix-matrix
/// products cost `m` times a matrix-vector product.
const STEP_THRESHOLD: u64 = 32;

/// `mat^depth * v0`, the count vector of the `depth`-th iterate.
pub fn power_counts<T: Semiring>(
    mat: &IncidenceMatrix<T>,
    v0: &CountVector<T>,
    depth: u64,
) -> Result<CountVector<T>> {
    if v0.len() != mat.m {
        return Err(Error::Dimension { expected: mat.m, got: v0.len() });
    }
    if depth <= STEP_THRESHOLD {
        return step_counts(mat, v0, depth);
    }
    step(&matrix_power(mat, depth), v0)
}

/// `mat^depth * v0` by `depth` successive applications of [`step`].
pub fn step_counts<T: Semiring>(
    mat: &IncidenceMatrix<T>,
    v0: &CountVector<T>,
    depth: u64,
) -> Result<CountVector<T>> {
    let mut v = v0.clone();
    if v.len() != mat.m {
        return Err(Error::Dimension { expected: mat.m, got: v.len() });
    }
    for _ in 0..depth {
        v = step(mat, &v)?;
    }
    Ok(v)
}

/// Every count vector `v0, mat*v0, ..., mat^depth*v0`.
pub fn count_trajectory<T: Semiring>(
    mat: &IncidenceMatrix<T>,
    v0: &CountVector<T>,
    depth: usize,
) -> Result<Vec<CountVector<T>>> {
    let mut out = Vec::with_capacity(depth + 1);
    out.push(v0.clone());
    for _ in 0..depth {
        let next = step(mat, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::make_root_rules;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn mat(rows: &[&[u64]]) -> IncidenceMatrix<u64> {
        IncidenceMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn big(v: &[u64]) -> CountVector<BigUint> {
        CountVector::new(v.iter().map(|&x| BigUint::from(x)).collect())
    }

    #[test]
    fn incidence_of_root_family() {
        let m22: IncidenceMatrix<u64> = incidence(&make_root_rules(2, 2).unwrap());
        assert_eq!(m22, mat(&[&[1, 2], &[1, 1]]));
        let m32: IncidenceMatrix<u64> = incidence(&make_root_rules(3, 2).unwrap());
        assert_eq!(m32, mat(&[&[1, 0, 2], &[1, 1, 0], &[0, 1, 1]]));
        let m23: IncidenceMatrix<u64> = incidence(&make_root_rules(2, 3).unwrap());
        assert_eq!(m23, mat(&[&[1, 3], &[1, 1]]));
    }

    #[test]
    fn step_matches_table_transitions() {
        let m = mat(&[&[1, 2], &[1, 1]]);
        assert_eq!(step(&m, &CountVector::new(vec![17, 12])).unwrap().as_slice(), &[41, 29]);
        let m = mat(&[&[1, 0, 2], &[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(step(&m, &CountVector::new(vec![9, 6, 6])).unwrap().as_slice(), &[21, 15, 12]);
        assert!(step(&m, &CountVector::zeros(3)).unwrap().is_zero());
        assert_eq!(
            step(&m, &CountVector::zeros(2)),
            Err(Error::Dimension { expected: 3, got: 2 })
        );
    }

    #[test]
    fn power_counts_reaches_last_table_rows() {
        let m22: IncidenceMatrix<BigUint> = incidence(&make_root_rules(2, 2).unwrap());
        let v = power_counts(&m22, &CountVector::unit(2, 0), 16).unwrap();
        assert_eq!(v, big(&[665857, 470832]));
        let m32: IncidenceMatrix<BigUint> = incidence(&make_root_rules(3, 2).unwrap());
        let v = power_counts(&m32, &CountVector::unit(3, 0), 15).unwrap();
        assert_eq!(v, big(&[68283, 54189, 43011]));
        let v0 = big(&[4, 5, 6]);
        assert_eq!(power_counts(&m32, &v0, 0).unwrap(), v0);
    }

    #[test]
    fn deep_power_agrees_with_stepping() {
        // Depth 300 is far past u64 range for these counts.
        let m32: IncidenceMatrix<BigUint> = incidence(&make_root_rules(3, 7).unwrap());
        let v0 = big(&[1, 2, 3]);
        let fast = power_counts(&m32, &v0, 300).unwrap();
        let slow = step_counts(&m32, &v0, 300).unwrap();
        assert_eq!(fast, slow);
        assert!(fast[0].bits() > 64);
    }

    #[test]
    fn matrix_power_small_cases() {
        let m = mat(&[&[1, 2], &[1, 1]]);
        assert_eq!(matrix_power(&m, 2), mat(&[&[3, 4], &[2, 3]]));
        assert_eq!(matrix_power(&m, 0), IncidenceMatrix::identity(2));
        let m32 = mat(&[&[1, 0, 2], &[1, 1, 0], &[0, 1, 1]]);
        assert!(!m32.is_positive());
        let p5 = matrix_power(&m32, 5);
        // Brute force: five explicit products.
        let mut brute = IncidenceMatrix::identity(3);
        for _ in 0..5 {
            brute = brute.mul(&m32).unwrap();
        }
        assert_eq!(p5, brute);
        assert!(p5.is_positive());
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        assert!(IncidenceMatrix::<u64>::from_rows(vec![vec![1, 2], vec![1]]).is_err());
        assert!(IncidenceMatrix::<u64>::from_rows(vec![]).is_err());
    }

    proptest! {
        #[test]
        fn columns_sum_to_image_lengths(
            images in (1usize..=5).prop_flat_map(|m| {
                prop::collection::vec(prop::collection::vec(0..m, 1..=6), m)
            })
        ) {
            let rules = RuleSet::new(
                images.into_iter().map(crate::substitution::Word::from_indices).collect()
            ).unwrap();
            let mat: IncidenceMatrix<u64> = incidence(&rules);
            for k in 0..rules.m() {
                prop_assert_eq!(mat.column_sum(k), rules.images()[k].len() as u64);
            }
        }

        #[test]
        fn power_counts_is_linear(
            m in 2usize..=4, n in 1u64..=6, depth in 0u64..60,
            a in 0u64..5, b in 0u64..5,
            u in prop::collection::vec(0u64..10, 4),
            v in prop::collection::vec(0u64..10, 4),
        ) {
            let mat: IncidenceMatrix<BigUint> = incidence(&make_root_rules(m, n).unwrap());
            let u = big(&u[..m]);
            let v = big(&v[..m]);
            let scale = |x: &CountVector<BigUint>, s: u64| x.map(|e| e * s);
            let lhs = power_counts(&mat, &(&scale(&u, a) + &scale(&v, b)), depth).unwrap();
            let pu = power_counts(&mat, &u, depth).unwrap();
            let pv = power_counts(&mat, &v, depth).unwrap();
            prop_assert_eq!(lhs, &scale(&pu, a) + &scale(&pv, b));
        }
    }
}
