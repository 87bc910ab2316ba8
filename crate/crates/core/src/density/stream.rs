use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_traits::{One, ToPrimitive};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng;
use crate::samplers::coding::{cantor_unpair, string_decode};
use crate::Nat;

/// Horizon used for DSL streams when the caller does not pick one.
pub const DEFAULT_HORIZON: u64 = 1 << 16;

/// Indices below this are cached after first evaluation.
const MEMO_LIMIT: u64 = 1 << 24;

#[derive(Debug)]
enum Source {
    Empty,
    Full,
    Evens,
    Odds,
    Seeded { seed: u64, num: u64, den: u64 },
    Members(BTreeSet<Nat>),
    Complement(SetStream),
    Prefixes(SetStream),
    Graph(Arc<[u64]>),
    Image(Arc<[Nat]>),
}

#[derive(Debug)]
struct Inner {
    label: String,
    source: Source,
    horizon: Nat,
    // 0 = unknown, 1 = absent, 2 = present
    memo: Mutex<Vec<u8>>,
}

/// A deterministic characteristic function on `[0, horizon)`.
///
/// Cloning is cheap and clones share the memo table.
#[derive(Debug, Clone)]
pub struct SetStream(Arc<Inner>);

impl SetStream {
    fn build(label: impl Into<String>, source: Source, horizon: Nat) -> Self {
        SetStream(Arc::new(Inner {
            label: label.into(),
            source,
            horizon,
            memo: Mutex::new(Vec::new()),
        }))
    }

    pub fn empty(horizon: u64) -> Self {
        Self::build("empty", Source::Empty, horizon.into())
    }

    pub fn full(horizon: u64) -> Self {
        Self::build("full", Source::Full, horizon.into())
    }

    pub fn evens(horizon: u64) -> Self {
        Self::build("evens", Source::Evens, horizon.into())
    }

    pub fn odds(horizon: u64) -> Self {
        Self::build("odds", Source::Odds, horizon.into())
    }

    /// Bit `i` is 1 iff the `i`-th SplitMix64 output `w` satisfies
    /// `w * den < num * 2^64`.
    pub fn seeded(seed: u64, num: u64, den: u64, horizon: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidArgument(format!(
                "seed probability {num}/{den} is not in [0, 1]"
            )));
        }
        let label = if num * 2 == den {
            format!("seed:{seed}")
        } else {
            format!("seed:{seed}:p={num}/{den}")
        };
        Ok(Self::build(
            label,
            Source::Seeded { seed, num, den },
            horizon.into(),
        ))
    }

    pub fn from_members<I>(members: I, horizon: u64) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Nat>,
    {
        let members: BTreeSet<Nat> = members.into_iter().map(Into::into).collect();
        let label = format!(
            "list:{}",
            members
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Self::build(label, Source::Members(members), horizon.into())
    }

    /// The set whose characteristic bits are `bits`; the horizon is its length.
    pub fn from_bits(bits: &BitString) -> Self {
        let members = bits.one_positions();
        let mut s = Self::from_members(members, bits.len() as u64);
        Arc::get_mut(&mut s.0).expect("fresh stream").label = format!("bits:{bits}");
        s
    }

    pub fn complement(&self) -> Self {
        Self::build(
            format!("complement({})", self.label()),
            Source::Complement(self.clone()),
            self.horizon().clone(),
        )
    }

    /// Characteristic stream of the string codes of `A↾n`. Codes below
    /// `2^(h+1) - 1` decode to strings of length at most `h = horizon(A)`.
    pub(crate) fn prefixes_of(a: &SetStream) -> Result<Self> {
        let h = a.horizon_u64().ok_or_else(|| {
            Error::Overflow("prefix set of a stream with an unbounded horizon".into())
        })?;
        let h = usize::try_from(h).map_err(|_| Error::Overflow("horizon".into()))?;
        let horizon = (Nat::one() << (h + 1)) - Nat::one();
        Ok(Self::build(
            format!("prefixes({})", a.label()),
            Source::Prefixes(a.clone()),
            horizon,
        ))
    }

    /// Graph `{⟨n, f(n)⟩ : n < f.len()}`. Every code below `H(H+1)/2` has a
    /// first coordinate below `H`, so that is the evaluable horizon.
    pub(crate) fn graph_of(f: &[u64]) -> Self {
        let h = Nat::from(f.len());
        let horizon = (&h * (&h + Nat::one())) >> 1;
        Self::build(
            format!("graph(len={})", f.len()),
            Source::Graph(f.into()),
            horizon,
        )
    }

    /// Image of a strictly increasing table; decidable up to its last value.
    pub(crate) fn image_of(values: Vec<Nat>) -> Self {
        let horizon = values.last().map(|v| v + Nat::one()).unwrap_or_default();
        Self::build(
            format!("image(len={})", values.len()),
            Source::Image(values.into()),
            horizon,
        )
    }

    /// Parses the stream DSL:
    /// `empty | full | evens | odds | seed:<u64>[:p=<num>/<den>] | file:<path> | list:<n1,n2,...>`.
    pub fn parse(spec: &str, horizon: u64) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "empty" => return Ok(Self::empty(horizon)),
            "full" => return Ok(Self::full(horizon)),
            "evens" => return Ok(Self::evens(horizon)),
            "odds" => return Ok(Self::odds(horizon)),
            _ => {}
        }
        let (head, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown stream '{spec}'")))?;
        match head {
            "seed" => {
                let (seed, p) = match rest.split_once(':') {
                    Some((seed, p)) => (seed, Some(p)),
                    None => (rest, None),
                };
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad seed '{seed}'")))?;
                let (num, den) = match p {
                    None => (1, 2),
                    Some(p) => parse_probability(p)?,
                };
                Self::seeded(seed, num, den, horizon)
            }
            "list" => {
                let members = parse_naturals(rest)?;
                Ok(Self::from_members(members, horizon))
            }
            "file" => {
                let path = Path::new(rest);
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                let body: String = text
                    .lines()
                    .filter(|l| !l.trim_start().starts_with('#'))
                    .collect::<Vec<_>>()
                    .join(",");
                let members = parse_naturals(&body)?;
                let mut s = Self::from_members(members, horizon);
                Arc::get_mut(&mut s.0).expect("fresh stream").label = format!("file:{rest}");
                Ok(s)
            }
            _ => Err(Error::Parse(format!("unknown stream '{spec}'"))),
        }
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn horizon(&self) -> &Nat {
        &self.0.horizon
    }

    pub fn horizon_u64(&self) -> Option<u64> {
        self.0.horizon.to_u64()
    }

    /// Membership of `x`; rejected at or above the horizon.
    pub fn contains(&self, x: &Nat) -> Result<bool> {
        if x >= self.horizon() {
            return Err(Error::horizon(x.clone(), self.horizon()));
        }
        match x.to_u64() {
            Some(i) if i < MEMO_LIMIT => self.bit_memo(i),
            _ => self.eval(x),
        }
    }

    /// Characteristic bit at index `i`.
    pub fn bit(&self, i: u64) -> Result<bool> {
        if Nat::from(i) >= *self.horizon() {
            return Err(Error::horizon(i, self.horizon()));
        }
        if i < MEMO_LIMIT {
            self.bit_memo(i)
        } else {
            self.eval(&Nat::from(i))
        }
    }

    fn bit_memo(&self, i: u64) -> Result<bool> {
        let idx = i as usize;
        {
            let memo = self.0.memo.lock().expect("memo poisoned");
            if let Some(&v) = memo.get(idx) {
                if v != 0 {
                    return Ok(v == 2);
                }
            }
        }
        let value = self.eval(&Nat::from(i))?;
        let mut memo = self.0.memo.lock().expect("memo poisoned");
        if memo.len() <= idx {
            memo.resize(idx + 1, 0);
        }
        memo[idx] = if value { 2 } else { 1 };
        Ok(value)
    }

    fn eval(&self, x: &Nat) -> Result<bool> {
        Ok(match &self.0.source {
            Source::Empty => false,
            Source::Full => true,
            Source::Evens => !x.bit(0),
            Source::Odds => x.bit(0),
            Source::Seeded { seed, num, den } => {
                let k = x
                    .to_u64()
                    .ok_or_else(|| Error::Overflow("seeded stream index".into()))?;
                rng::bernoulli(rng::nth_output(*seed, k), *num, *den)
            }
            Source::Members(m) => m.contains(x),
            Source::Complement(s) => !s.contains(x)?,
            Source::Prefixes(a) => {
                let sigma = string_decode(x);
                let mut agrees = true;
                for (i, &b) in sigma.bits().iter().enumerate() {
                    if a.bit(i as u64)? != b {
                        agrees = false;
                        break;
                    }
                }
                agrees
            }
            Source::Graph(f) => {
                let (n, y) = cantor_unpair(x);
                match n.to_usize().and_then(|n| f.get(n)) {
                    Some(&fx) => Nat::from(fx) == y,
                    None => return Err(Error::horizon(x.clone(), self.horizon())),
                }
            }
            Source::Image(values) => values.binary_search(x).is_ok(),
        })
    }

    /// `A↾n` as a bit string.
    pub fn prefix(&self, n: u64) -> Result<BitString> {
        if Nat::from(n) > *self.horizon() {
            return Err(Error::horizon(n, self.horizon()));
        }
        (0..n)
            .map(|i| self.bit(i))
            .collect::<Result<Vec<_>>>()
            .map(BitString::from)
    }

    /// Members below `n`, in increasing order.
    pub fn members_below(&self, n: u64) -> Result<Vec<u64>> {
        if Nat::from(n) > *self.horizon() {
            return Err(Error::horizon(n, self.horizon()));
        }
        let mut out = Vec::new();
        for i in 0..n {
            if self.bit(i)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The full member list, when the source is an explicit finite set.
    pub fn finite_members(&self) -> Option<BTreeSet<Nat>> {
        match &self.0.source {
            Source::Empty => Some(BTreeSet::new()),
            Source::Members(m) => Some(m.clone()),
            Source::Graph(f) => Some(
                f.iter()
                    .enumerate()
                    .map(|(n, &y)| crate::samplers::coding::cantor_pair(Nat::from(n), Nat::from(y)))
                    .collect(),
            ),
            Source::Image(values) => Some(values.iter().cloned().collect()),
            _ => None,
        }
    }
}

impl fmt::Display for SetStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (horizon {})", self.label(), self.horizon())
    }
}

fn parse_probability(p: &str) -> Result<(u64, u64)> {
    let frac = p
        .strip_prefix("p=")
        .ok_or_else(|| Error::Parse(format!("expected p=<num>/<den>, got '{p}'")))?;
    let (num, den) = frac
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("expected <num>/<den>, got '{frac}'")))?;
    let num = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator '{num}'")))?;
    let den = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator '{den}'")))?;
    Ok((num, den))
}

pub(crate) fn parse_naturals(s: &str) -> Result<Vec<Nat>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Nat>()
                .map_err(|_| Error::Parse(format!("'{t}' is not a natural number")))
        })
        .collect()
}
