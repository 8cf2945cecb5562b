//! Square matrices over commutative rings, with division-free
//! characteristic polynomials and the principal-minor identities.

mod charpoly;
mod matrix;
mod upoly;

pub use charpoly::{
    cayley_hamilton_check, char_poly, char_poly_by_minor_sums, column_replace_det, determinant,
    frobenius_companion, MINOR_SUM_MAX_DIM,
};
pub use matrix::RingMatrix;
pub use upoly::{CharPoly, UPoly};
