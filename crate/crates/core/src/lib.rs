//! Exact, finite-horizon experiments with asymptotic and intrinsic density.
//!
//! Sets of naturals are modelled as [`SetStream`]s: deterministic
//! characteristic functions that can be queried below an explicit horizon.
//! Samplers (computable injections and permutations) are total programs whose
//! injectivity is checked as they are evaluated. On top of these sit the
//! constructions for prefix sets, the traceability injection, graph sets and
//! their trace adversaries, and the weak-representation machinery.
//!
//! All densities are exact rationals and all codes are arbitrary-precision
//! naturals.

pub mod bits;
pub mod constructions;
pub mod density;
pub mod error;
pub mod rng;
pub mod samplers;
pub mod weakrep;

pub use bits::BitString;
pub use density::{
    density_profile, partial_density, principal_function, Density, DensityProfile, SetStream,
};
pub use error::{Error, Result};
pub use samplers::{Sampler, SamplerKind};

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;
