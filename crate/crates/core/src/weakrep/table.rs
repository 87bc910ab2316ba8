use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::samplers::coding::{triple_code, triple_decode};
use crate::weakrep::registry::{FamilyRegistry, Outcome};
use crate::Nat;

use num_traits::ToPrimitive;

/// A decoded triple `⟨x, y, z⟩`: "f(x) = y, witnessed at stage z".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Triple {
    pub fn new(x: u64, y: u64, z: u64) -> Self {
        Triple { x, y, z }
    }

    /// `pair(x, pair(y, z))`.
    pub fn code(&self) -> Nat {
        triple_code(self.x, self.y, self.z)
    }

    pub fn from_code(code: &Nat) -> Result<Self> {
        let (x, y, z) = triple_decode(code);
        let small = |v: Nat| {
            v.to_u64()
                .ok_or_else(|| Error::Overflow(format!("triple component {v}")))
        };
        Ok(Triple::new(small(x)?, small(y)?, small(z)?))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.z)
    }
}

/// A finite set of triples read against a stage horizon.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeakRepTable {
    pub triples: BTreeSet<Triple>,
    pub horizon: u64,
}

impl WeakRepTable {
    pub fn new(triples: impl IntoIterator<Item = Triple>, horizon: u64) -> Self {
        WeakRepTable {
            triples: triples.into_iter().collect(),
            horizon,
        }
    }

    pub fn from_codes<'a>(codes: impl IntoIterator<Item = &'a Nat>, horizon: u64) -> Result<Self> {
        let triples = codes
            .into_iter()
            .map(Triple::from_code)
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(WeakRepTable { triples, horizon })
    }

    pub fn codes(&self) -> BTreeSet<Nat> {
        self.triples.iter().map(Triple::code).collect()
    }

    /// Adds `⟨x,y,z'⟩` for every `z ≤ z' ≤ horizon`.
    pub fn insert_filled(&mut self, x: u64, y: u64, z: u64) {
        for z in z..=self.horizon {
            self.triples.insert(Triple::new(x, y, z));
        }
    }

    /// Sorted `x,y,z` lines.
    pub fn to_text(&self) -> String {
        self.triples.iter().map(|t| format!("{t}\n")).collect()
    }

    pub fn parse(text: &str, horizon: u64) -> Result<Self> {
        let mut triples = BTreeSet::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts = line
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad triple line '{line}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            match parts[..] {
                [x, y, z] => {
                    triples.insert(Triple::new(x, y, z));
                }
                _ => return Err(Error::Parse(format!("expected 'x,y,z', got '{line}'"))),
            }
        }
        Ok(WeakRepTable { triples, horizon })
    }

    /// The partial function the table represents: `x ↦ y` for every witnessed x.
    pub fn represented(&self) -> BTreeMap<u64, u64> {
        self.triples.iter().map(|t| (t.x, t.y)).collect()
    }

    fn witnesses_for(&self, x: u64) -> impl Iterator<Item = &Triple> {
        self.triples
            .range(Triple::new(x, 0, 0)..=Triple::new(x, u64::MAX, u64::MAX))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bullet {
    Representation,
    Consistency,
    Monotonicity,
    DownwardClosure,
}

impl fmt::Display for Bullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bullet::Representation => "representation",
            Bullet::Consistency => "consistency",
            Bullet::Monotonicity => "monotonicity",
            Bullet::DownwardClosure => "downward-closure",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A triple whose stage or argument lies beyond the horizon.
    OutsideHorizon(Triple),
    /// Two witnesses for the same argument with different values.
    Conflict(Triple, Triple),
    /// `present` is in the table but its later-stage copy `missing` is not.
    MissingStage { present: Triple, missing: Triple },
    /// `present` witnesses convergence at `present.x` but nothing witnesses `missing_x`.
    MissingArgument { present: Triple, missing_x: u64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::OutsideHorizon(t) => write!(f, "({t}) lies outside the horizon"),
            Witness::Conflict(a, b) => write!(f, "({a}) conflicts with ({b})"),
            Witness::MissingStage { present, missing } => {
                write!(f, "({present}) present but ({missing}) missing")
            }
            Witness::MissingArgument { present, missing_x } => {
                write!(f, "({present}) present but no witness for x = {missing_x}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BulletResult {
    pub bullet: Bullet,
    pub witness: Option<Witness>,
}

impl BulletResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: [BulletResult; 4],
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(BulletResult::passed)
    }

    pub fn get(&self, bullet: Bullet) -> &BulletResult {
        self.results
            .iter()
            .find(|r| r.bullet == bullet)
            .expect("all bullets reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &BulletResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl WeakRepTable {
    /// Checks the four conditions independently.
    ///
    /// At a finite horizon the representation condition reads "every
    /// witness lies in the window `x, z ≤ horizon`", so the represented
    /// function is exactly what the window shows.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            results: [
                BulletResult {
                    bullet: Bullet::Representation,
                    witness: self.check_representation(),
                },
                BulletResult {
                    bullet: Bullet::Consistency,
                    witness: self.check_consistency(),
                },
                BulletResult {
                    bullet: Bullet::Monotonicity,
                    witness: self.check_monotonicity(),
                },
                BulletResult {
                    bullet: Bullet::DownwardClosure,
                    witness: self.check_downward_closure(),
                },
            ],
        }
    }

    fn check_representation(&self) -> Option<Witness> {
        self.triples
            .iter()
            .find(|t| t.x > self.horizon || t.z > self.horizon)
            .map(|&t| Witness::OutsideHorizon(t))
    }

    fn check_consistency(&self) -> Option<Witness> {
        let mut first: BTreeMap<u64, Triple> = BTreeMap::new();
        for &t in &self.triples {
            match first.get(&t.x) {
                Some(&f) if f.y != t.y => return Some(Witness::Conflict(f, t)),
                Some(_) => {}
                None => {
                    first.insert(t.x, t);
                }
            }
        }
        None
    }

    fn check_monotonicity(&self) -> Option<Witness> {
        // triples sort by (x, y, z): each (x, y) run must be contiguous up to the horizon
        let mut iter = self.triples.iter().peekable();
        while let Some(&start) = iter.next() {
            let mut last = start;
            while let Some(&&next) = iter.peek() {
                if next.x != start.x || next.y != start.y {
                    break;
                }
                if next.z != last.z + 1 {
                    break;
                }
                last = next;
                iter.next();
            }
            if last.z < self.horizon {
                return Some(Witness::MissingStage {
                    present: last,
                    missing: Triple::new(last.x, last.y, last.z + 1),
                });
            }
            // skip any out-of-horizon leftovers of the same run
            while let Some(&&next) = iter.peek() {
                if next.x != start.x || next.y != start.y {
                    break;
                }
                iter.next();
            }
        }
        None
    }

    fn check_downward_closure(&self) -> Option<Witness> {
        let xs: BTreeSet<u64> = self.triples.iter().map(|t| t.x).collect();
        (0u64..)
            .zip(&xs)
            .find(|(expected, x)| *x != expected)
            .map(|(expected, &x)| Witness::MissingArgument {
                present: *self.witnesses_for(x).next().expect("x is witnessed"),
                missing_x: expected,
            })
    }
}

/// `f(x)[z]↓ = y`: some `⟨x,y,z⟩` is present with `y < z`.
pub fn eval_step(t: &WeakRepTable, x: u64, z: u64) -> Result<Option<u64>> {
    let report = t.validate();
    if let Some(fail) = report.failures().next() {
        return Err(Error::InvalidTable(format!(
            "{} fails: {}",
            fail.bullet,
            fail.witness.as_ref().expect("failed bullet has a witness")
        )));
    }
    if z > t.horizon {
        return Err(Error::horizon(z, &Nat::from(t.horizon)));
    }
    Ok(t.witnesses_for(x)
        .find(|w| w.z == z && w.y < z)
        .map(|w| w.y))
}

/// Triples `⟨x,y,z⟩` with `x, z ≤ horizon` such that program `e` halts on
/// every `x' ≤ x` within `z` steps and returns `y` on `x`.
pub fn table_of_program(r: &FamilyRegistry, e: usize, horizon: u64) -> Result<WeakRepTable> {
    let mut table = WeakRepTable::new([], horizon);
    let mut slowest = 0u64;
    for x in 0..=horizon {
        match r.eval(e, x)? {
            Outcome::Halted { value, steps } => {
                slowest = slowest.max(steps);
                if slowest > horizon {
                    break;
                }
                table.insert_filled(x, value, slowest);
            }
            Outcome::Diverged => break,
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weakrep::registry::Program;

    fn filled(entries: &[(u64, u64, u64)], horizon: u64) -> WeakRepTable {
        let mut t = WeakRepTable::new([], horizon);
        for &(x, y, z) in entries {
            t.insert_filled(x, y, z);
        }
        t
    }

    #[test]
    fn consistency_failure() {
        let t = filled(&[(0, 1, 2), (0, 2, 3)], 6);
        let r = t.validate();
        assert_eq!(
            r.get(Bullet::Consistency).witness,
            Some(Witness::Conflict(
                Triple::new(0, 1, 2),
                Triple::new(0, 2, 3)
            ))
        );
        assert!(r.get(Bullet::Monotonicity).passed());
        assert!(r.get(Bullet::DownwardClosure).passed());
    }

    #[test]
    fn downward_closure_failure() {
        let t = filled(&[(1, 0, 1)], 4);
        let r = t.validate();
        assert_eq!(
            r.get(Bullet::DownwardClosure).witness,
            Some(Witness::MissingArgument {
                present: Triple::new(1, 0, 1),
                missing_x: 0
            })
        );
        assert!(r.get(Bullet::Consistency).passed());
    }

    #[test]
    fn valid_table_passes() {
        let t = filled(&[(0, 2, 3)], 6);
        assert_eq!(t.triples.len(), 4);
        assert!(t.validate().passed());
    }

    #[test]
    fn monotonicity_failure() {
        let mut t = filled(&[(0, 2, 3)], 6);
        t.triples.remove(&Triple::new(0, 2, 5));
        assert_eq!(
            t.validate().get(Bullet::Monotonicity).witness,
            Some(Witness::MissingStage {
                present: Triple::new(0, 2, 4),
                missing: Triple::new(0, 2, 5)
            })
        );
    }

    #[test]
    fn representation_failure() {
        let mut t = filled(&[(0, 2, 3)], 6);
        t.triples.insert(Triple::new(0, 2, 9));
        let r = t.validate();
        assert_eq!(
            r.get(Bullet::Representation).witness,
            Some(Witness::OutsideHorizon(Triple::new(0, 2, 9)))
        );
        assert!(r.get(Bullet::Monotonicity).passed());
        assert!(r.get(Bullet::Consistency).passed());
        assert!(r.get(Bullet::DownwardClosure).passed());
    }

    #[test]
    fn eval_step_examples() {
        let t = filled(&[(0, 2, 3)], 6);
        assert_eq!(eval_step(&t, 0, 3).unwrap(), Some(2));
        assert_eq!(eval_step(&t, 0, 2).unwrap(), None);
        assert_eq!(eval_step(&t, 1, 5).unwrap(), None);
        assert!(eval_step(&t, 0, 7).is_err());
        let empty = WeakRepTable::new([], 5);
        assert!((0..=5).all(|z| eval_step(&empty, 0, z).unwrap().is_none()));
        let bad = filled(&[(1, 0, 1)], 4);
        assert!(matches!(eval_step(&bad, 1, 2), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn identity_program_table() {
        let r = FamilyRegistry::new(vec![Program::Identity], 100);
        let t = table_of_program(&r, 0, 6).unwrap();
        assert!(t.validate().passed());
        for x in 0..=6 {
            for z in 0..=6 {
                let expected = (z > x).then_some(x);
                assert_eq!(eval_step(&t, x, z).unwrap(), expected, "x={x} z={z}");
            }
        }
    }

    #[test]
    fn divergent_and_partial_programs() {
        let r = FamilyRegistry::new(vec![Program::Diverge, Program::HaltBelow(1)], 100);
        assert!(table_of_program(&r, 0, 5).unwrap().triples.is_empty());
        let t = table_of_program(&r, 1, 5).unwrap();
        assert!(t.triples.iter().all(|t| t.x == 0));
        assert_eq!(t.triples.len(), 5);
        assert!(t.validate().passed());
    }

    #[test]
    fn text_roundtrip_and_codes() {
        let t = filled(&[(0, 2, 3), (1, 0, 4)], 5);
        let text = t.to_text();
        assert!(text.starts_with("0,2,3\n0,2,4\n"));
        assert_eq!(WeakRepTable::parse(&text, 5).unwrap(), t);
        let back = WeakRepTable::from_codes(&t.codes(), 5).unwrap();
        assert_eq!(back, t);
        assert!(WeakRepTable::parse("1,2", 5).is_err());
        assert_eq!(t.represented(), [(0, 2), (1, 0)].into());
    }
}
