//! Exact decision procedures for matrices with finitely many distinct powers
//! over Laurent-polynomial rings `(Z/mZ)[x, x⁻¹]`, and their application to
//! linear cellular automata over `(Z/mZ)^n` and additive cellular automata
//! over finite abelian groups.
//!
//! The central fact used throughout: a square matrix `A` over a commutative
//! algebra over a finite ring has finitely many distinct powers if and only
//! if every coefficient of its characteristic polynomial is integral over the
//! base ring. For `(Z/mZ)[x, x⁻¹]` integrality means "constant modulo every
//! prime dividing `m`", which makes the question decidable.

pub mod additive;
pub mod error;
pub mod fp;
pub mod laurent;
pub mod lca;
pub mod modring;
pub mod polymat;
pub mod power_semigroup;
pub mod ring;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use modring::{factorize, Modulus, PrimePower, Residue};
pub use polymat::{CharPoly, RingMatrix, UPoly};
pub use ring::Ring;
