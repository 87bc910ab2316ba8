use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Result of running a program under the registry's step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Halted { value: u64, steps: u64 },
    Diverged,
}

impl Outcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            Outcome::Halted { value, .. } => Some(*value),
            Outcome::Diverged => None,
        }
    }
}

/// Programs of the toy family. Costs are in abstract steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    /// `x ↦ x`, 1 step.
    Identity,
    /// `x ↦ c`, 1 step.
    Constant(u64),
    /// `x ↦ 2x`, 1 step.
    Double,
    /// `x ↦ x + k`, 1 step.
    Shift(u64),
    /// `x ↦ x`, `x + 1` steps.
    SlowIdentity,
    /// Identity on `x < k`, divergent elsewhere.
    HaltBelow(u64),
    /// Never halts.
    Diverge,
    /// Finite table of `(value, steps)`; `None` entries and arguments past the
    /// end diverge.
    Table(Vec<Option<(u64, u64)>>),
    /// `x ↦ inner(⌊x/2⌋)` with the inner cost.
    Halved(Arc<Program>),
}

impl Program {
    fn run(&self, x: u64) -> Outcome {
        let halt = |value: u64, steps: u64| Outcome::Halted { value, steps };
        match self {
            Program::Identity => halt(x, 1),
            Program::Constant(c) => halt(*c, 1),
            Program::Double => match x.checked_mul(2) {
                Some(v) => halt(v, 1),
                None => Outcome::Diverged,
            },
            Program::Shift(k) => match x.checked_add(*k) {
                Some(v) => halt(v, 1),
                None => Outcome::Diverged,
            },
            Program::SlowIdentity => halt(x, x.saturating_add(1)),
            Program::HaltBelow(k) if x < *k => halt(x, 1),
            Program::HaltBelow(_) | Program::Diverge => Outcome::Diverged,
            Program::Table(rows) => match rows.get(x as usize) {
                Some(Some((value, steps))) => halt(*value, *steps),
                _ => Outcome::Diverged,
            },
            Program::Halved(inner) => inner.run(x / 2),
        }
    }

    /// True for programs that diverge on every input.
    pub fn is_everywhere_divergent(&self) -> bool {
        match self {
            Program::Diverge | Program::HaltBelow(0) => true,
            Program::Table(rows) => rows.iter().all(Option::is_none),
            Program::Halved(inner) => inner.is_everywhere_divergent(),
            _ => false,
        }
    }

    /// Parses one manifest entry: `identity`, `const:<c>`, `double`,
    /// `shift:<k>`, `slow-identity`, `halt-below:<k>`, `diverge`,
    /// `table:<v>[@<steps>],...` with `_` for a divergent row, or
    /// `halved:<program>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let number = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad program parameter '{s}'")))
        };
        Ok(match spec.split_once(':') {
            None => match spec {
                "identity" => Program::Identity,
                "double" => Program::Double,
                "slow-identity" => Program::SlowIdentity,
                "diverge" => Program::Diverge,
                _ => return Err(Error::Parse(format!("unknown program '{spec}'"))),
            },
            Some(("const", c)) => Program::Constant(number(c)?),
            Some(("shift", k)) => Program::Shift(number(k)?),
            Some(("halt-below", k)) => Program::HaltBelow(number(k)?),
            Some(("halved", inner)) => Program::Halved(Arc::new(Program::parse(inner)?)),
            Some(("table", rows)) => Program::Table(
                rows.split(',')
                    .filter(|r| !r.trim().is_empty())
                    .map(|r| {
                        let r = r.trim();
                        if r == "_" {
                            return Ok(None);
                        }
                        match r.split_once('@') {
                            Some((v, s)) => Ok(Some((number(v)?, number(s)?))),
                            None => Ok(Some((number(r)?, 1))),
                        }
                    })
                    .collect::<Result<_>>()?,
            ),
            Some(_) => return Err(Error::Parse(format!("unknown program '{spec}'"))),
        })
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Identity => f.write_str("identity"),
            Program::Constant(c) => write!(f, "const:{c}"),
            Program::Double => f.write_str("double"),
            Program::Shift(k) => write!(f, "shift:{k}"),
            Program::SlowIdentity => f.write_str("slow-identity"),
            Program::HaltBelow(k) => write!(f, "halt-below:{k}"),
            Program::Diverge => f.write_str("diverge"),
            Program::Table(rows) => {
                f.write_str("table:")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    match row {
                        Some((v, s)) => write!(f, "{v}@{s}")?,
                        None => f.write_str("_")?,
                    }
                }
                Ok(())
            }
            Program::Halved(inner) => write!(f, "halved:{inner}"),
        }
    }
}

/// An indexed family of programs evaluated under a shared step cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRegistry {
    programs: Vec<Program>,
    budget: u64,
}

impl FamilyRegistry {
    pub fn new(programs: Vec<Program>, budget: u64) -> Self {
        FamilyRegistry { programs, budget }
    }

    /// Manifest: one program per line, optional `budget:<n>` line (default
    /// 1000), `#` comments.
    pub fn parse_manifest(text: &str) -> Result<Self> {
        let mut budget = 1000;
        let mut programs = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(b) = line.strip_prefix("budget:") {
                budget = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad budget '{b}'")))?;
                continue;
            }
            programs.push(Program::parse(line)?);
        }
        Ok(FamilyRegistry { programs, budget })
    }

    pub fn to_manifest(&self) -> String {
        let mut out = format!("budget:{}\n", self.budget);
        for p in &self.programs {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.programs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.programs.is_empty()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn programs(&self) -> &[Program] {
        &self.programs
    }

    pub fn program(&self, e: usize) -> Result<&Program> {
        self.programs.get(e).ok_or(Error::UnknownProgram(e))
    }

    /// Runs program `e` on `x`; anything slower than the budget diverges.
    pub fn eval(&self, e: usize, x: u64) -> Result<Outcome> {
        Ok(match self.program(e)?.run(x) {
            Outcome::Halted { steps, .. } if steps > self.budget => Outcome::Diverged,
            other => other,
        })
    }

    /// Index of the first always-divergent program.
    pub fn divergent_index(&self) -> Option<usize> {
        self.programs
            .iter()
            .position(Program::is_everywhere_divergent)
    }
}

/// Program `2e` computes `n ↦ f_e(⌊n/2⌋)`; program `2e+1` is `f_e` itself.
pub fn interleave_family(r: &FamilyRegistry) -> FamilyRegistry {
    let programs = r
        .programs
        .iter()
        .flat_map(|p| [Program::Halved(Arc::new(p.clone())), p.clone()])
        .collect();
    FamilyRegistry {
        programs,
        budget: r.budget,
    }
}

/// `F(e) = G(2e)`.
pub fn diagonal_avoid(g: &[u64], e: u64) -> Result<u64> {
    let index = e
        .checked_mul(2)
        .ok_or_else(|| Error::Overflow("2e".into()))?;
    g.get(index as usize)
        .copied()
        .ok_or(Error::Undefined { index })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleave_examples() {
        let r = FamilyRegistry::new(vec![Program::Identity], 10);
        let d = interleave_family(&r);
        assert_eq!(d.len(), 2);
        let vals: Vec<u64> = (0..4)
            .map(|n| d.eval(0, n).unwrap().value().unwrap())
            .collect();
        assert_eq!(vals, vec![0, 0, 1, 1]);
        for n in 0..20 {
            assert_eq!(d.eval(1, n).unwrap(), r.eval(0, n).unwrap());
        }
        assert!(interleave_family(&FamilyRegistry::new(vec![], 10)).is_empty());
    }

    #[test]
    fn diagonal_examples() {
        let id: Vec<u64> = (0..10).collect();
        assert_eq!(diagonal_avoid(&id, 3).unwrap(), 6);
        assert_eq!(diagonal_avoid(&[5; 10], 4).unwrap(), 5);
        assert_eq!(diagonal_avoid(&[7, 1, 9], 1).unwrap(), 9);
        assert_eq!(
            diagonal_avoid(&[7, 1, 9], 2),
            Err(Error::Undefined { index: 4 })
        );
    }

    #[test]
    fn budget_caps_steps() {
        let r = FamilyRegistry::new(vec![Program::SlowIdentity], 5);
        assert_eq!(
            r.eval(0, 4).unwrap(),
            Outcome::Halted { value: 4, steps: 5 }
        );
        assert_eq!(r.eval(0, 5).unwrap(), Outcome::Diverged);
        assert_eq!(r.eval(1, 0), Err(Error::UnknownProgram(1)));
    }

    #[test]
    fn manifest_roundtrip() {
        let text = "# family\nbudget:50\nidentity\nconst:3\nhalt-below:2\ndiverge\ntable:1@2,_,5\nslow-identity\n";
        let r = FamilyRegistry::parse_manifest(text).unwrap();
        assert_eq!(r.budget(), 50);
        assert_eq!(r.len(), 6);
        assert_eq!(r.divergent_index(), Some(3));
        assert_eq!(
            r.eval(4, 0).unwrap(),
            Outcome::Halted { value: 1, steps: 2 }
        );
        assert_eq!(r.eval(4, 1).unwrap(), Outcome::Diverged);
        assert_eq!(
            r.eval(4, 2).unwrap(),
            Outcome::Halted { value: 5, steps: 1 }
        );
        assert_eq!(FamilyRegistry::parse_manifest(&r.to_manifest()).unwrap(), r);
        let d = interleave_family(&r);
        assert_eq!(FamilyRegistry::parse_manifest(&d.to_manifest()).unwrap(), d);
        assert!(FamilyRegistry::parse_manifest("frobnicate").is_err());
        assert!(FamilyRegistry::parse_manifest("budget:x").is_err());
    }
}
