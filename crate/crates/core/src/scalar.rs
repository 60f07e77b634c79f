//! Scalar abstractions shared by the count engine and the spectral checks.
//!
//! The count engine only needs a commutative semiring: addition, multiplication,
//! and the two identities. Arbitrary-precision integers are the production
//! choice; machine integers work for small depths, and [`Reach`] turns the
//! same matrix code into a reachability computation.

use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

/// A commutative semiring element usable as a matrix entry.
pub trait Semiring: Clone + PartialEq + Debug + Zero + One {}

impl<T> Semiring for T where T: Clone + PartialEq + Debug + Zero + One {}

/// Boolean semiring: `+` is "or", `*` is "and".
///
/// Mapping a nonnegative matrix into `Reach` keeps only the zero pattern, so
/// powers stay bounded no matter how large the real entries grow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Reach(pub bool);

impl Add for Reach {
    type Output = Reach;
    fn add(self, rhs: Reach) -> Reach {
        Reach(self.0 || rhs.0)
    }
}

impl Mul for Reach {
    type Output = Reach;
    fn mul(self, rhs: Reach) -> Reach {
        Reach(self.0 && rhs.0)
    }
}

impl Zero for Reach {
    fn zero() -> Self {
        Reach(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Reach {
    fn one() -> Self {
        Reach(true)
    }
}
