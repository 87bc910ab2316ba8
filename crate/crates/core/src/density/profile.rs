use num_traits::Zero;

use super::{Density, SetStream};
use crate::error::{Error, Result};
use crate::Nat;

/// Partial densities of a stream at a list of checkpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityProfile {
    pub checkpoints: Vec<u64>,
    pub values: Vec<Density>,
    pub observed_sup: Density,
    pub observed_inf: Density,
    /// Horizon of the stream the profile was computed on.
    pub horizon: Nat,
}

/// `|{j < n : j ∈ S}| / n` in lowest terms.
pub fn partial_density(s: &SetStream, n: u64) -> Result<Density> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if Nat::from(n) > *s.horizon() {
        return Err(Error::horizon(n, s.horizon()));
    }
    let mut count = 0u64;
    for j in 0..n {
        if s.bit(j)? {
            count += 1;
        }
    }
    Ok(Density::new(count, n))
}

pub fn density_profile(s: &SetStream, checkpoints: &[u64]) -> Result<DensityProfile> {
    let (&first, _) = checkpoints.split_first().ok_or(Error::EmptyCheckpoints)?;
    if first == 0 {
        return Err(Error::ZeroLength);
    }
    for w in checkpoints.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::CheckpointOrder {
                prev: w[0],
                next: w[1],
            });
        }
    }
    let last = *checkpoints.last().expect("nonempty");
    if Nat::from(last) > *s.horizon() {
        return Err(Error::horizon(last, s.horizon()));
    }

    // one sweep over [0, last) instead of recounting per checkpoint
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut count = 0u64;
    let mut j = 0u64;
    for &n in checkpoints {
        while j < n {
            if s.bit(j)? {
                count += 1;
            }
            j += 1;
        }
        values.push(Density::new(count, n));
    }
    let observed_sup = *values.iter().max().expect("nonempty");
    let observed_inf = *values.iter().min().expect("nonempty");
    Ok(DensityProfile {
        checkpoints: checkpoints.to_vec(),
        values,
        observed_sup,
        observed_inf,
        horizon: s.horizon().clone(),
    })
}

/// `p_S(j)`: the `j`-th element of `S` in increasing order, 0-indexed.
pub fn principal_function(s: &SetStream, j: u64) -> Result<u64> {
    let mut seen = 0u64;
    let mut i = 0u64;
    while Nat::from(i) < *s.horizon() {
        if s.bit(i)? {
            if seen == j {
                return Ok(i);
            }
            seen += 1;
        }
        i = i
            .checked_add(1)
            .ok_or_else(|| Error::Overflow("principal function scan".into()))?;
    }
    Err(Error::InsufficientElements {
        wanted: j + 1,
        found: seen,
        horizon: s.horizon().clone(),
    })
}

impl DensityProfile {
    /// True when every value `v` at checkpoint `n` has `v·n` integral and
    /// lies in `[0, 1]`, and sup/inf are attained.
    pub fn is_well_formed(&self) -> bool {
        let in_range = self.checkpoints.iter().zip(&self.values).all(|(&n, v)| {
            *v <= Density::from_integer(1) && (*v * Density::from_integer(n)).is_integer()
        });
        in_range
            && !self.values.is_empty()
            && self.observed_inf <= self.observed_sup
            && self.values.contains(&self.observed_sup)
            && self.values.contains(&self.observed_inf)
            && !self.checkpoints.iter().any(|n| n.is_zero())
    }
}
