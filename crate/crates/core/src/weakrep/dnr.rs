use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::constructions::graph_set;
use crate::error::{Error, Result};
use crate::samplers::coding::{cantor_pair, string_code};
use crate::weakrep::registry::FamilyRegistry;
use crate::Nat;

/// `Ψ^X(x) = μy [⟨x,y⟩ ∈ X]`, searched below `budget`, provided every
/// `x' ≤ x` has such a witness; otherwise divergent.
pub fn psi_eval(set: &BTreeSet<Nat>, x: u64, budget: u64) -> Option<u64> {
    let least = |x: u64| (0..budget).find(|&y| set.contains(&cantor_pair(x, y)));
    for earlier in 0..x {
        least(earlier)?;
    }
    least(x)
}

/// The experiment's map `σ ↦ e(σ)`; unmapped strings fall through to the
/// registry's always-divergent program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StringIndexMap(pub BTreeMap<BitString, usize>);

impl StringIndexMap {
    /// One `sigma:index` per line; an empty sigma is written `:index`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (sigma, index) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected 'sigma:index', got '{line}'")))?;
            let index = index
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad program index '{index}'")))?;
            map.insert(sigma.trim().parse()?, index);
        }
        Ok(StringIndexMap(map))
    }
}

/// Largest `L` with `2^L < n^5`, i.e. the longest σ with `|σ| < 5·log2 n`.
pub fn sigma_range_max_len(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the σ-range needs n ≥ 2, got {n}"
        )));
    }
    let fifth = Nat::from(n).pow(5u32);
    // largest L with 2^L < n^5
    let mut len = 0u64;
    while (Nat::one() << (len + 1)) < fifth {
        len += 1;
    }
    Ok(len)
}

/// `p(n) = 1 + max_{|σ| < 5 log n} ⟨e(σ), g(e(σ))⟩`.
pub fn p_bound(r: &FamilyRegistry, e_of: &StringIndexMap, g: &[u64], n: u64) -> Result<Nat> {
    let max_len = sigma_range_max_len(n)?;
    let total = (Nat::one() << (max_len + 1)) - Nat::one();

    let mut indices: BTreeSet<usize> = BTreeSet::new();
    let mut mapped = Nat::zero();
    for (sigma, &e) in &e_of.0 {
        if sigma.len() as u64 <= max_len {
            r.program(e)?;
            indices.insert(e);
            mapped += 1u32;
        }
    }
    if mapped < total {
        indices.insert(r.divergent_index().ok_or(Error::NoDivergentProgram)?);
    }

    let mut best = Nat::zero();
    for e in indices {
        let ge = *g.get(e).ok_or(Error::Undefined { index: e as u64 })?;
        best = best.max(cantor_pair(e as u64, ge));
    }
    Ok(best + Nat::one())
}

/// `P = { string_code(A↾p(n)) : n ∈ checkpoints }` where `A` is the graph of `g`.
pub fn build_p(
    g: &[u64],
    r: &FamilyRegistry,
    e_of: &StringIndexMap,
    checkpoints: &[u64],
) -> Result<BTreeSet<Nat>> {
    let graph = graph_set(g, g.len() as u64)?;
    let mut out = BTreeSet::new();
    for &n in checkpoints {
        let p = p_bound(r, e_of, g, n)?;
        let p = u64::try_from(&p).map_err(|_| Error::Overflow(format!("p({n}) = {p}")))?;
        out.insert(string_code(&graph.prefix(p)?));
    }
    Ok(out)
}
