//! Exact structure-constant algebra: superalgebras, their Lie functors,
//! simplicity certificates, Dunkl operators, and truncated `U(sl2)`.

pub mod algebra;
pub mod center;
pub mod condition;
pub mod construct;
pub mod dunkl;
pub mod error;
pub mod fingerprint;
pub mod glambda;
pub mod lie;
pub mod linalg;
pub mod modp;
pub mod qalg;
pub mod queer;
pub mod scalar;
pub mod simplicity;
pub mod subquotient;

pub use algebra::{AlgebraKind, Element, Parity, SuperAlgebra};
pub use error::{Error, Result};
pub use linalg::Subspace;
pub use scalar::{FieldSpec, NuPoly, Scalar};
