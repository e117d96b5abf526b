//! Exact computation of the obstruction polynomials attached to singular
//! branches `(s^a, s^b + …)`, the Gröbner-based checks built on them, and the
//! t-adic lifting of their solutions.

pub mod error;
pub mod expansion;
pub mod groebner;
pub mod lifting;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{Error, Result};

/// Identifies the algorithms behind cached verdicts; bump when any of them changes.
pub const ENGINE_VERSION: &str = concat!("equigen-core/", env!("CARGO_PKG_VERSION"), "/buchberger-gm-1");
pub use expansion::{Expansion, LocalModel, PartitionMultiplicity, SigmaModel};
pub use groebner::{Budget, GVerdict, Ideal, MonomialOrder, Verdict};
pub use lifting::{DeformVerdict, SectionProfile, SingularConfig, Weights};
pub use poly::{Homogeneity, MPoly, Monomial, VarSet};
pub use rational::Rational;
pub use series::{LaurentSlice, TSeries};
