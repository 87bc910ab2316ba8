use std::collections::{BTreeSet, HashSet};

use crate::density::SetStream;
use crate::error::{Error, Result};
use crate::samplers::coding::{cantor_pair, cantor_unpair};
use crate::samplers::Sampler;
use crate::Nat;

/// `G_f = {⟨n, f(n)⟩ : n < horizon}`.
pub fn graph_set(f: &[u64], horizon: u64) -> Result<SetStream> {
    let h = usize::try_from(horizon).map_err(|_| Error::Overflow("graph horizon".into()))?;
    if f.len() < h {
        return Err(Error::Undefined {
            index: f.len() as u64,
        });
    }
    Ok(SetStream::graph_of(&f[..h]))
}

fn window(q: u64, n: u64) -> Result<u64> {
    n.checked_add(1)
        .and_then(|m| m.checked_mul(q))
        .ok_or_else(|| Error::Overflow("window (n+1)q".into()))
}

/// `{ y : ⟨x,y⟩ ∈ s([0, (n+1)q)) }`.
pub fn trace_from_sampler(s: &Sampler, q: u64, n: u64) -> Result<BTreeSet<Nat>> {
    Ok(s.image_interval(window(q, n)?)?
        .iter()
        .map(|code| cantor_unpair(code).1)
        .collect())
}

/// `{ m < horizon : ⟨m, f(m)⟩ ∈ s([0, (m+1)q)) }`.
pub fn hit_indices(s: &Sampler, f: &[u64], q: u64, horizon: u64) -> Result<BTreeSet<u64>> {
    let mut image: HashSet<Nat> = HashSet::new();
    let mut evaluated = 0u64;
    let mut hits = BTreeSet::new();
    for m in 0..horizon {
        let fm = *f.get(m as usize).ok_or(Error::Undefined { index: m })?;
        let w = window(q, m)?;
        while evaluated < w {
            image.insert(s.eval(evaluated)?);
            evaluated += 1;
        }
        if image.contains(&cantor_pair(m, fm)) {
            hits.insert(m);
        }
    }
    Ok(hits)
}
