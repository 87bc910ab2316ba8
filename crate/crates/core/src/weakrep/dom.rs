use num_traits::One;

use crate::density::SetStream;
use crate::error::{Error, Result};
use crate::samplers::Sampler;
use crate::Nat;

/// The image of a strictly increasing table, with bisection membership.
pub fn image_set(values: &[Nat]) -> Result<SetStream> {
    if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotMonotone { index: i + 1 });
    }
    Ok(SetStream::image_of(values.to_vec()))
}

/// One step of the dominating-branch adversary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationProbe {
    pub n: u64,
    /// `h(n) = 1 + max_{s ≤ (n+1)q} f(s)`.
    pub bound: Nat,
    /// `F(n)`.
    pub value: Nat,
    /// Whether `F(n) ∈ f([0, (n+1)q))`.
    pub captured: bool,
}

impl DominationProbe {
    /// A captured value must be strictly below the bound.
    pub fn holds(&self) -> bool {
        !self.captured || self.bound > self.value
    }
}

/// Computes `h(n) = 1 + max{ s(i) : i ≤ (n+1)q }` and records whether
/// `F(n)` was sampled in `s([0, (n+1)q))`.
pub fn dominating_adversary(f: &[Nat], s: &Sampler, q: u64, n: u64) -> Result<DominationProbe> {
    let value = f
        .get(n as usize)
        .cloned()
        .ok_or(Error::Undefined { index: n })?;
    let last = n
        .checked_add(1)
        .and_then(|m| m.checked_mul(q))
        .ok_or_else(|| Error::Overflow("(n+1)q".into()))?;
    let mut max = Nat::default();
    let mut captured = false;
    for i in 0..=last {
        let v = s.eval(i)?;
        if i < last && v == value {
            captured = true;
        }
        if v > max {
            max = v;
        }
    }
    Ok(DominationProbe {
        n,
        bound: max + Nat::one(),
        value,
        captured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powers(k: u32) -> Vec<Nat> {
        (0..k).map(|s| Nat::one() << s).collect()
    }

    #[test]
    fn image_examples() {
        let i = image_set(&powers(10)).unwrap();
        assert!(i.contains(&Nat::from(8u32)).unwrap());
        assert!(!i.contains(&Nat::from(6u32)).unwrap());
        assert!(i.contains(&Nat::from(1u32)).unwrap());
        let id: Vec<Nat> = (0u32..20).map(Nat::from).collect();
        assert_eq!(image_set(&id).unwrap().members_below(20).unwrap().len(), 20);
        let fact: Vec<Nat> = [1u32, 2, 6, 24, 120].into_iter().map(Nat::from).collect();
        assert!(image_set(&fact)
            .unwrap()
            .contains(&Nat::from(24u32))
            .unwrap());
        let bad: Vec<Nat> = [1u32, 3, 3].into_iter().map(Nat::from).collect();
        assert_eq!(
            image_set(&bad).unwrap_err(),
            Error::NotMonotone { index: 2 }
        );
    }

    #[test]
    fn adversary_examples() {
        let f = powers(10);
        let p = dominating_adversary(&f, &Sampler::identity(), 1, 2).unwrap();
        assert_eq!(p.bound, Nat::from(4u32));
        let p = dominating_adversary(&f, &Sampler::double(), 1, 1).unwrap();
        assert_eq!(p.bound, Nat::from(5u32));
        assert!(p.captured && p.holds());
        let t = Sampler::table([3u64, 9, 4]);
        let p = dominating_adversary(&f, &t, 1, 0).unwrap();
        assert_eq!(p.bound, Nat::from(10u32));
        assert!(!p.captured);
        assert!(dominating_adversary(&f, &t, 1, 2).is_err());
    }
}
