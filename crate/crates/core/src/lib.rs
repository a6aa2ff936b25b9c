//! Exact point counting on Danielewski and double Danielewski surfaces over
//! finite fields.

pub mod arith;
pub mod bounds;
pub mod characters;
pub mod circulant;
pub mod counting;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod random;

pub use field::{FieldElement, FieldError, FiniteField};
