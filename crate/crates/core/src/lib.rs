//! Exact bilinear and quadratic forms in the symmetric tensor category
//! Ver4+ over the finite fields GF(2^k).
//!
//! Objects are `m𝟙 ⊕ nP`, modules over `K[t]/(t²)` whose braiding is
//! twisted by the R-matrix `1⊗1 + t⊗t`. The crate classifies every
//! non-degenerate symmetric bilinear form on such an object into one of six
//! canonical families, builds explicit congruences to canonical
//! representatives, and computes the semi-ring structure given by direct sum
//! and braided tensor product.

pub mod bform;
pub mod classify;
pub mod divided;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod selfcheck;
pub mod verobj;
pub mod witt;

pub use bform::{BilinearForm, Subobject};
pub use classify::{canonical_rep, canonicalize, classify, CanonicalClass, Family, GoodPairSpace};
pub use divided::{Gamma2Basis, QuadraticForm};
pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldElem};
pub use matrix::Matrix;
pub use verobj::{Morphism, RawTModule, VerObject};
