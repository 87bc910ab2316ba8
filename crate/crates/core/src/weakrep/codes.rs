use crate::bits::BitString;
use crate::error::{Error, Result};

/// Self-delimiting code for `n ≥ 1`: drop the leading 1 of `n` in binary,
/// double every remaining bit and append the end marker `01`. The length is
/// `2·⌊log2 n⌋ + 2`.
pub fn prefix_free_code(n: u64) -> Result<BitString> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the prefix-free code starts at 1".into(),
        ));
    }
    let payload_len = 63 - n.leading_zeros();
    let mut out = BitString::new();
    for i in (0..payload_len).rev() {
        let b = n >> i & 1 == 1;
        out.push(b);
        out.push(b);
    }
    out.push(false);
    out.push(true);
    Ok(out)
}

/// Decodes one codeword from the front of `bits`, returning the value and the
/// number of bits consumed.
pub fn prefix_free_decode(bits: &[bool]) -> Result<(u64, usize)> {
    let mut n = 1u64;
    for (i, pair) in bits.chunks(2).enumerate() {
        match *pair {
            [false, true] => return Ok((n, 2 * i + 2)),
            [b, c] if b == c => {
                n = n
                    .checked_mul(2)
                    .map(|n| n | b as u64)
                    .ok_or_else(|| Error::Overflow("prefix-free codeword".into()))?;
            }
            [true, false] => {
                return Err(Error::Parse(format!(
                    "invalid bit pair 10 at offset {}",
                    2 * i
                )))
            }
            _ => break,
        }
    }
    Err(Error::Parse("codeword has no end marker".into()))
}

/// Width of `c_n`: the least `w` with `2^w ≥ n²`.
pub fn fixed_width(n: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "fixed-width code needs n ≥ 2, got {n}"
        )));
    }
    let square = (n as u128) * (n as u128);
    Ok(128 - (square - 1).leading_zeros())
}

/// `c_n(x)`: `x < n²` in big-endian binary, zero-padded to [`fixed_width`].
pub fn fixed_width_code(n: u64, x: u64) -> Result<BitString> {
    let width = fixed_width(n)?;
    if (x as u128) >= (n as u128) * (n as u128) {
        return Err(Error::InvalidArgument(format!("{x} ≥ {n}²")));
    }
    Ok(BitString::from(
        (0..width)
            .rev()
            .map(|i| (x as u128) >> i & 1 == 1)
            .collect::<Vec<_>>(),
    ))
}

pub fn fixed_width_decode(n: u64, bits: &[bool]) -> Result<u64> {
    let width = fixed_width(n)? as usize;
    if bits.len() != width {
        return Err(Error::Parse(format!(
            "c_{n} codewords have {width} bits, got {}",
            bits.len()
        )));
    }
    let x = bits.iter().fold(0u128, |acc, &b| acc << 1 | b as u128);
    if x >= (n as u128) * (n as u128) {
        return Err(Error::Parse(format!("decoded {x} ≥ {n}²")));
    }
    Ok(x as u64)
}

/// `σ ⌢ k(n) ⌢ c_n(x)`.
pub fn assemble_sigma(sigma: &BitString, n: u64, x: u64) -> Result<BitString> {
    Ok(sigma
        .concat(&prefix_free_code(n)?)
        .concat(&fixed_width_code(n, x)?))
}
