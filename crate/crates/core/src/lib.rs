//! Exact arithmetic for rings with involution, hermitian forms over them and
//! the involutions of matrix algebras they induce.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod hermitian;
pub mod hyperelliptic;
pub mod involutive;
pub mod laurent;
pub mod linalg;
pub mod matrix_involution;
pub mod poly;
pub mod ring;
pub mod sample;
pub mod scalar;
mod terms;
pub mod tower;
pub mod types;

pub use error::{Error, Result};
pub use ring::{ExprRing, InvolutiveRing, Ring};
pub use scalar::{BaseField, Scalar};
