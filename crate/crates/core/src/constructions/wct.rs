use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::bits::BitString;
use crate::density::{principal_function, SetStream};
use crate::error::{Error, Result};
use crate::samplers::Sampler;

/// Largest `n_max` accepted; `10!` table entries is the practical ceiling.
pub const MAX_WCT_N: u64 = 10;

pub fn factorial(n: u64) -> Result<u64> {
    (1..=n).try_fold(1u64, |acc, k| {
        acc.checked_mul(k)
            .ok_or_else(|| Error::Overflow(format!("{n}!")))
    })
}

/// Block `I_n`: `[0,1)` for `n = 1`, `[(n-1)!, n!)` for `n ≥ 2`.
pub fn wct_block(n: u64) -> Result<std::ops::Range<u64>> {
    match n {
        0 => Err(Error::InvalidArgument("blocks are indexed from 1".into())),
        1 => Ok(0..1),
        _ => Ok(factorial(n - 1)?..factorial(n)?),
    }
}

/// `A↾p_A(n!)`: the bits of `A` strictly below its `n!`-th element. The
/// result has exactly `n!` ones, at positions `p_A(0), ..., p_A(n!-1)`.
pub fn wct_target(a: &SetStream, n: u64) -> Result<BitString> {
    let end = principal_function(a, factorial(n)?)?;
    a.prefix(end)
}

/// The injection `g` together with the guesses it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WctInjection {
    pub n_max: u64,
    /// `table[j] = g(j)` for `j < n_max!`.
    pub table: Vec<u64>,
    /// `from_guess[j]` is false where the fallback (least unused value) fired.
    pub from_guess: Vec<bool>,
    pub guesses: BTreeMap<u64, BitString>,
}

impl WctInjection {
    pub fn sampler(&self) -> Sampler {
        Sampler::table(self.table.iter().copied())
    }

    pub fn get(&self, j: u64) -> Option<u64> {
        self.table.get(j as usize).copied()
    }

    /// Indices in block `I_n` that fell back instead of following `h(n)`.
    pub fn fallbacks_in_block(&self, n: u64) -> Result<Vec<u64>> {
        Ok(wct_block(n)?
            .filter(|&j| !self.from_guess[j as usize])
            .collect())
    }

    /// `j,g(j)` CSV with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,g(j)\n");
        for (j, g) in self.table.iter().enumerate() {
            let _ = writeln!(out, "{j},{g}");
        }
        out
    }
}

/// Assigns `g(j)` for `j < n_max!` in increasing order. Inside block `I_n`,
/// `g(j)` is the position of the `j`-th 1 (global `j`, 0-indexed) of `h(n)`
/// when that 1 exists and its position is still free; otherwise it is the
/// least value not yet used. A missing `h(n)` behaves like a string with no
/// ones.
pub fn build_wct_injection(h: &BTreeMap<u64, BitString>, n_max: u64) -> Result<WctInjection> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    if n_max > MAX_WCT_N {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} exceeds the limit {MAX_WCT_N}"
        )));
    }
    let total = factorial(n_max)? as usize;
    let mut table = Vec::with_capacity(total);
    let mut from_guess = Vec::with_capacity(total);
    let mut used: HashSet<u64> = HashSet::with_capacity(total);
    let mut least_free = 0u64;

    for n in 1..=n_max {
        let ones = h.get(&n).map(BitString::one_positions).unwrap_or_default();
        for j in wct_block(n)? {
            let guess = ones.get(j as usize).copied().filter(|p| !used.contains(p));
            let value = match guess {
                Some(p) => p,
                None => {
                    while used.contains(&least_free) {
                        least_free += 1;
                    }
                    least_free
                }
            };
            used.insert(value);
            table.push(value);
            from_guess.push(guess.is_some());
        }
    }
    Ok(WctInjection {
        n_max,
        table,
        from_guess,
        guesses: h.clone(),
    })
}

/// Reads guess files: one `n:<bitstring>` per line, `#` comments allowed.
pub fn parse_guesses(text: &str) -> Result<BTreeMap<u64, BitString>> {
    let mut out = BTreeMap::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (n, bits) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected 'n:<bits>', got '{line}'")))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad guess index '{n}'")))?;
        if out.insert(n, bits.trim().parse()?).is_some() {
            return Err(Error::Parse(format!("duplicate guess for n = {n}")));
        }
    }
    Ok(out)
}
