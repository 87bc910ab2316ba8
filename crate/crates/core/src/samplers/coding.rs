//! Coding bijections between naturals and pairs, binary strings and finite
//! sets.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::Nat;

/// Cantor pairing `(x+y)(x+y+1)/2 + y`.
pub fn cantor_pair(x: impl Into<Nat>, y: impl Into<Nat>) -> Nat {
    let (x, y) = (x.into(), y.into());
    let w = &x + &y;
    ((&w * (&w + Nat::one())) >> 1) + y
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let eight_z: Nat = z << 3usize;
    let w: Nat = ((eight_z + Nat::one()).sqrt() - Nat::one()) >> 1usize;
    let t = (&w * (&w + Nat::one())) >> 1;
    let y = z - t;
    let x = &w - &y;
    (x, y)
}

/// `cantor_pair` on machine words, `None` if the code exceeds `u64`.
pub fn cantor_pair_u64(x: u64, y: u64) -> Option<u64> {
    let w = x as u128 + y as u128;
    let code = w.checked_mul(w + 1)? / 2 + y as u128;
    u64::try_from(code).ok()
}

/// Triple code `⟨x,y,z⟩ = ⟨x, ⟨y,z⟩⟩`.
pub fn triple_code(x: impl Into<Nat>, y: impl Into<Nat>, z: impl Into<Nat>) -> Nat {
    cantor_pair(x, cantor_pair(y, z))
}

pub fn triple_decode(code: &Nat) -> (Nat, Nat, Nat) {
    let (x, rest) = cantor_unpair(code);
    let (y, z) = cantor_unpair(&rest);
    (x, y, z)
}

/// `2^len + value(σ) − 1`; length-lexicographic.
pub fn string_code(sigma: &BitString) -> Nat {
    let mut value = Nat::one();
    for &b in sigma.bits() {
        value <<= 1;
        if b {
            value += 1u32;
        }
    }
    value - Nat::one()
}

pub fn string_decode(code: &Nat) -> BitString {
    let m = code + Nat::one();
    let len = m.bits() - 1;
    let bits = (0..len).rev().map(|i| m.bit(i)).collect::<Vec<_>>();
    BitString::from(bits)
}

/// Canonical index `Σ 2^x`.
pub fn finite_set_code(set: &BTreeSet<u64>) -> Nat {
    let mut code = Nat::zero();
    for &x in set {
        code.set_bit(x, true);
    }
    code
}

pub fn finite_set_decode(code: &Nat) -> BTreeSet<u64> {
    (0..code.bits()).filter(|&i| code.bit(i)).collect()
}
