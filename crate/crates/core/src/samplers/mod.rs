//! Computable injections and permutations as total programs.

pub mod coding;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;

use crate::density::{Density, SetStream};
use crate::error::{Error, Result};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplerKind {
    Injection,
    Permutation,
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerKind::Injection => "injection",
            SamplerKind::Permutation => "permutation",
        })
    }
}

type ProgramFn = Arc<dyn Fn(u64) -> Result<Nat> + Send + Sync>;

#[derive(Clone)]
pub enum Program {
    Identity,
    Double,
    /// `x ↦ x + k`
    Shift(u64),
    /// Swap `[0,k)` with `[k,2k)`; identity elsewhere.
    SwapBlocks(u64),
    /// Finite table; a permutation table continues as the identity past its end.
    Table {
        values: Arc<[Nat]>,
        identity_tail: bool,
    },
    /// Host-supplied total function, for constructions that enumerate a set.
    Custom {
        name: String,
        f: ProgramFn,
    },
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Identity => f.write_str("Identity"),
            Program::Double => f.write_str("Double"),
            Program::Shift(k) => write!(f, "Shift({k})"),
            Program::SwapBlocks(k) => write!(f, "SwapBlocks({k})"),
            Program::Table {
                values,
                identity_tail,
            } => f
                .debug_struct("Table")
                .field("len", &values.len())
                .field("identity_tail", identity_tail)
                .finish(),
            Program::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// A total injection (or permutation) on `[0, domain_bound)`.
///
/// Every evaluation is logged; a repeated output from a different argument is
/// reported as [`Error::NotInjective`].
pub struct Sampler {
    kind: SamplerKind,
    program: Program,
    domain_bound: u64,
    label: String,
    log: Mutex<HashMap<Nat, u64>>,
}

impl fmt::Debug for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sampler")
            .field("label", &self.label)
            .field("kind", &self.kind)
            .field("program", &self.program)
            .field("domain_bound", &self.domain_bound)
            .finish()
    }
}

impl Clone for Sampler {
    fn clone(&self) -> Self {
        let log = self.log.lock().expect("sampler log poisoned").clone();
        Sampler {
            kind: self.kind,
            program: self.program.clone(),
            domain_bound: self.domain_bound,
            label: self.label.clone(),
            log: Mutex::new(log),
        }
    }
}

impl Sampler {
    fn build(kind: SamplerKind, program: Program, domain_bound: u64, label: String) -> Self {
        Sampler {
            kind,
            program,
            domain_bound,
            label,
            log: Mutex::new(HashMap::new()),
        }
    }

    pub fn identity() -> Self {
        Self::build(
            SamplerKind::Permutation,
            Program::Identity,
            u64::MAX,
            "identity".into(),
        )
    }

    pub fn double() -> Self {
        Self::build(
            SamplerKind::Injection,
            Program::Double,
            u64::MAX,
            "double".into(),
        )
    }

    pub fn shift(k: u64) -> Self {
        let kind = if k == 0 {
            SamplerKind::Permutation
        } else {
            SamplerKind::Injection
        };
        Self::build(kind, Program::Shift(k), u64::MAX, format!("shift:{k}"))
    }

    pub fn swap_blocks(k: u64) -> Self {
        Self::build(
            SamplerKind::Permutation,
            Program::SwapBlocks(k),
            u64::MAX,
            format!("swapblocks:{k}"),
        )
    }

    /// A table sampler. A table that is a bijection of `[0, len)` becomes a
    /// permutation of all naturals (identity past the table); anything else is
    /// an injection on `[0, len)`. Injectivity itself is checked on
    /// evaluation.
    pub fn table<I>(values: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Nat>,
    {
        let values: Vec<Nat> = values.into_iter().map(Into::into).collect();
        let len = values.len() as u64;
        let is_perm = is_bijection_of_prefix(&values);
        let (kind, bound) = if is_perm {
            (SamplerKind::Permutation, u64::MAX)
        } else {
            (SamplerKind::Injection, len)
        };
        Self::build(
            kind,
            Program::Table {
                values: values.into(),
                identity_tail: is_perm,
            },
            bound,
            format!("table(len={len})"),
        )
    }

    /// A finite permutation table, rejected unless it is a bijection of
    /// `[0, len)`.
    pub fn permutation_table(values: Vec<u64>) -> Result<Self> {
        let values: Vec<Nat> = values.into_iter().map(Nat::from).collect();
        if !is_bijection_of_prefix(&values) {
            return Err(Error::NotPermutation(format!(
                "table of length {} is not a bijection of [0, {})",
                values.len(),
                values.len()
            )));
        }
        Ok(Self::table(values))
    }

    /// Injection given by a host function, total on `[0, domain_bound)`.
    pub fn custom<F>(name: impl Into<String>, domain_bound: u64, f: F) -> Self
    where
        F: Fn(u64) -> Result<Nat> + Send + Sync + 'static,
    {
        let name = name.into();
        Self::build(
            SamplerKind::Injection,
            Program::Custom {
                name: name.clone(),
                f: Arc::new(f),
            },
            domain_bound,
            name,
        )
    }

    /// Parses the sampler DSL:
    /// `identity | double | shift:<k> | table:<csv-path> | swapblocks:<k>`.
    ///
    /// Table files hold either a plain list of values (comma or newline
    /// separated) or the `j,g(j)` CSV written by the injection exporter,
    /// recognised by its header line.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "identity" => return Ok(Self::identity()),
            "double" => return Ok(Self::double()),
            _ => {}
        }
        let (head, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown sampler '{spec}'")))?;
        let number = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad sampler parameter '{s}'")))
        };
        match head {
            "shift" => Ok(Self::shift(number(rest)?)),
            "swapblocks" => Ok(Self::swap_blocks(number(rest)?)),
            "table" => {
                let path = Path::new(rest);
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                let values = parse_table(&text)?;
                let mut s = Self::table(values);
                s.label = format!("table:{rest}");
                Ok(s)
            }
            _ => Err(Error::Parse(format!("unknown sampler '{spec}'"))),
        }
    }

    pub fn kind(&self) -> SamplerKind {
        self.kind
    }

    pub fn domain_bound(&self) -> u64 {
        self.domain_bound
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    /// `s(x)`, logged for the injectivity check.
    pub fn eval(&self, x: u64) -> Result<Nat> {
        if x >= self.domain_bound {
            return Err(Error::OutOfDomain {
                x,
                bound: self.domain_bound,
            });
        }
        let value = self.raw(x)?;
        let mut log = self.log.lock().expect("sampler log poisoned");
        match log.get(&value) {
            Some(&prev) if prev != x => Err(Error::NotInjective {
                first: prev.min(x),
                second: prev.max(x),
                value,
            }),
            Some(_) => Ok(value),
            None => {
                log.insert(value.clone(), x);
                Ok(value)
            }
        }
    }

    fn raw(&self, x: u64) -> Result<Nat> {
        Ok(match &self.program {
            Program::Identity => Nat::from(x),
            Program::Double => Nat::from(x) << 1,
            Program::Shift(k) => Nat::from(x) + Nat::from(*k),
            Program::SwapBlocks(k) => {
                let k = *k as u128;
                let x = x as u128;
                Nat::from(if x < k {
                    x + k
                } else if x < 2 * k {
                    x - k
                } else {
                    x
                })
            }
            Program::Table {
                values,
                identity_tail,
            } => match values.get(x as usize) {
                Some(v) => v.clone(),
                None if *identity_tail => Nat::from(x),
                None => {
                    return Err(Error::OutOfDomain {
                        x,
                        bound: values.len() as u64,
                    })
                }
            },
            Program::Custom { f, .. } => f(x)?,
        })
    }

    /// `{s(0), ..., s(n-1)}`.
    pub fn image_interval(&self, n: u64) -> Result<BTreeSet<Nat>> {
        if n > self.domain_bound {
            return Err(Error::OutOfDomain {
                x: n - 1,
                bound: self.domain_bound,
            });
        }
        (0..n).map(|x| self.eval(x)).collect()
    }

    /// Values `s(0..n)` in argument order.
    pub fn values(&self, n: u64) -> Result<Vec<Nat>> {
        (0..n).map(|x| self.eval(x)).collect()
    }
}

/// `|{j < n : s(j) ∈ S}| / n`.
pub fn preimage_partial_density(set: &SetStream, s: &Sampler, n: u64) -> Result<Density> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let mut count = 0u64;
    for j in 0..n {
        if set.contains(&s.eval(j)?)? {
            count += 1;
        }
    }
    Ok(Density::new(count, n))
}

fn is_bijection_of_prefix(values: &[Nat]) -> bool {
    let mut seen = vec![false; values.len()];
    for v in values {
        match v.to_usize() {
            Some(i) if i < values.len() && !seen[i] => seen[i] = true,
            _ => return false,
        }
    }
    true
}

fn parse_table(text: &str) -> Result<Vec<Nat>> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.first().map(|l| l.replace(' ', "")) == Some("j,g(j)".into()) {
        let mut out = Vec::with_capacity(lines.len() - 1);
        for (i, line) in lines[1..].iter().enumerate() {
            let (j, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected 'j,g(j)', got '{line}'")))?;
            if j.trim().parse::<usize>().ok() != Some(i) {
                return Err(Error::Parse(format!(
                    "row {i} of injection table has index '{j}'"
                )));
            }
            out.push(
                v.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad table value '{v}'")))?,
            );
        }
        Ok(out)
    } else {
        crate::density::stream_parse_naturals(&lines.join(","))
    }
}
