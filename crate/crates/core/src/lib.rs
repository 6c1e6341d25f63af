//! Exact computations with logarithmic derivations of hypersurface germs.
//!
//! The crate computes the module `Der(-log D)` of vector fields tangent to a
//! divisor `D = V(f)` at the origin, decides freeness by Saito's determinant
//! criterion, and checks the Artin-quotient criterion: for a function `γ`
//! with an isolated critical point, `A_γ = O/Θ(γ)` is a complete
//! intersection and `f·J_γ ⊆ Θ(γ)` exactly when `D` is free.
//!
//! Everything is exact over the rationals. Local questions at the origin are
//! answered with standard bases for a local degree ordering; global ones
//! with Groebner bases.

pub mod artin;
pub mod error;
pub mod generic;
pub mod linalg;
pub mod logder;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod stdbasis;
pub mod verdict;

pub use error::{Error, Precondition, Result};
pub use logder::{DerivationModule, Derivation, DivisorGerm, SaitoData};
pub use par::Exec;
pub use poly::{Monomial, PolyMatrix, Polynomial, Ring, Scalar};
pub use stdbasis::{Colength, IdealData, LocusDim, ModuleData, TermOrder};
pub use verdict::Verdict;
