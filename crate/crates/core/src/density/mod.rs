//! Sets as bit streams and exact partial densities.

mod profile;
mod stream;

pub use profile::{density_profile, partial_density, principal_function, DensityProfile};
pub(crate) use stream::parse_naturals as stream_parse_naturals;
pub use stream::{SetStream, DEFAULT_HORIZON};

/// Exact partial density `|S ∩ [0,n)| / n`.
pub type Density = num_rational::Ratio<u64>;
