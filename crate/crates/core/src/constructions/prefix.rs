use std::collections::{BTreeSet, HashMap};

use crate::bits::BitString;
use crate::density::SetStream;
use crate::error::{Error, Result};
use crate::samplers::coding::{string_code, string_decode};
use crate::samplers::Sampler;
use crate::Nat;

/// Largest full-tree height we are willing to materialise.
const MAX_FULL_HEIGHT: u64 = 20;

/// `{ string_code(A↾n) }` as a stream.
pub fn prefix_set(a: &SetStream) -> Result<SetStream> {
    SetStream::prefixes_of(a)
}

/// The injection `k ↦ string_code(A↾k)`, total for `k ≤ horizon(A)`.
pub fn prefix_code_sampler(a: &SetStream) -> Result<Sampler> {
    let h = a
        .horizon_u64()
        .ok_or_else(|| Error::Overflow("prefix enumerator horizon".into()))?;
    let a = a.clone();
    Ok(Sampler::custom(
        format!("prefixes-of({})", a.label()),
        h + 1,
        move |k| Ok(string_code(&a.prefix(k)?)),
    ))
}

/// Recovers the bits fixed by a set of prefix codes.
///
/// Position `i` of the result is defined iff some decoded string is longer
/// than `i`. Two strings disagreeing at a shared position are an error that
/// names the position and both codes.
pub fn introreduce(codes: &BTreeSet<Nat>) -> Result<BitString> {
    if codes.is_empty() {
        return Err(Error::InvalidArgument(
            "introreduction needs at least one code".into(),
        ));
    }
    // owner[i] is the code that fixed bit i
    let mut bits: Vec<bool> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    let codes: Vec<&Nat> = codes.iter().collect();
    for (ci, code) in codes.iter().enumerate() {
        let sigma = string_decode(code);
        for (i, &b) in sigma.bits().iter().enumerate() {
            if i < bits.len() {
                if bits[i] != b {
                    return Err(Error::Inconsistent {
                        position: i,
                        first: codes[owner[i]].clone(),
                        second: (*code).clone(),
                    });
                }
            } else {
                bits.push(b);
                owner.push(ci);
            }
        }
    }
    Ok(BitString::from(bits))
}

/// Bounded-width tree decoded from a sampler of prefix codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTree {
    pub q: u64,
    /// Height up to which the tree is full.
    pub full_height: u64,
    pub depth: u64,
    /// `levels[l]` holds the strings of length `l`, sorted.
    pub levels: Vec<Vec<BitString>>,
}

impl PrefixTree {
    pub fn width(&self, level: usize) -> usize {
        self.levels.get(level).map_or(0, Vec::len)
    }

    /// Largest width over the levels strictly above the full part.
    pub fn max_pruned_width(&self) -> usize {
        self.levels
            .iter()
            .skip(self.full_height as usize + 1)
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, sigma: &BitString) -> bool {
        self.levels
            .get(sigma.len())
            .is_some_and(|l| l.binary_search(sigma).is_ok())
    }
}

/// Builds the tree `T`: full up to `full_height`; beyond it a string `σ` of
/// length `n` is kept iff its parent is kept and `s([0, 2qn))` holds at least
/// `n` string codes of extensions of `σ` (σ itself included).
pub fn build_prefix_tree(s: &Sampler, q: u64, full_height: u64, depth: u64) -> Result<PrefixTree> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let full = full_height.min(depth);
    if full > MAX_FULL_HEIGHT {
        return Err(Error::InvalidArgument(format!(
            "full part of height {full} exceeds the limit {MAX_FULL_HEIGHT}"
        )));
    }

    let mut levels: Vec<Vec<BitString>> = vec![vec![BitString::new()]];
    for _ in 0..full {
        let prev = levels.last().expect("nonempty");
        let next = prev
            .iter()
            .flat_map(|s| [s.child(false), s.child(true)])
            .collect::<Vec<_>>();
        levels.push(next);
    }

    let mut image: Vec<BitString> = Vec::new();
    for n in (full + 1)..=depth {
        let window = 2u64
            .checked_mul(q)
            .and_then(|v| v.checked_mul(n))
            .ok_or_else(|| Error::Overflow("sampling window 2qn".into()))?;
        while (image.len() as u64) < window {
            image.push(string_decode(&s.eval(image.len() as u64)?));
        }
        let len = n as usize;
        let mut extensions: HashMap<&[bool], usize> = HashMap::new();
        for tau in image.iter().filter(|t| t.len() >= len) {
            *extensions.entry(&tau.bits()[..len]).or_default() += 1;
        }
        let prev = levels.last().expect("nonempty");
        let next: Vec<BitString> = prev
            .iter()
            .flat_map(|p| [p.child(false), p.child(true)])
            .filter(|sigma| extensions.get(sigma.bits()).copied().unwrap_or(0) >= len)
            .collect();
        levels.push(next);
    }
    Ok(PrefixTree {
        q,
        full_height,
        depth,
        levels,
    })
}

/// The strings at the target depth; empty if the tree died out earlier.
pub fn extract_candidates(tree: &PrefixTree) -> Vec<BitString> {
    tree.levels
        .get(tree.depth as usize)
        .cloned()
        .unwrap_or_default()
}
