//! The commutative-ring abstraction shared by matrices and polynomials.

use std::fmt::Debug;
use std::hash::Hash;

/// A commutative unital ring element with decidable equality.
///
/// Elements carry a context (for the rings in this crate, the modulus `m`),
/// so that zero and one can be produced for empty products and identity
/// matrices. Binary operations assume both operands share a context;
/// containers such as [`crate::RingMatrix`] check this once at construction.
pub trait Ring: Clone + Eq + Hash + Debug {
    type Ctx: Clone + Eq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, value: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    /// Number of base-ring coefficients stored in the element.
    fn weight(&self) -> usize {
        1
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}
