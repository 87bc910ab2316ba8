//! Parsing of command-line inputs that are not streams or samplers.

use std::collections::BTreeSet;
use std::path::Path;

use intrinsic_density::rng::SplitMix64;
use intrinsic_density::{Error, Nat, Result};

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{s}'")))
}

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: Path::new(path).display().to_string(),
        message: e.to_string(),
    })
}

pub fn u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| number(t, "natural"))
        .collect()
}

pub fn nat_set(s: &str) -> Result<BTreeSet<Nat>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| number(t, "natural"))
        .collect()
}

/// Function tables:
/// `list:<v0,v1,...> | file:<path> | seed:<seed>:<bound>:<len> | identity:<len> | const:<c>:<len> | pow2:<len>`.
pub fn function_table(spec: &str) -> Result<Vec<u64>> {
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown function table '{spec}'")))?;
    match head {
        "list" => u64_list(rest),
        "file" => {
            let text = read_file(rest)?;
            let body: Vec<&str> = text
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect();
            u64_list(&body.join(","))
        }
        "seed" => {
            let parts: Vec<&str> = rest.split(':').collect();
            let [seed, bound, len] = parts[..] else {
                return Err(Error::Parse(format!(
                    "expected seed:<seed>:<bound>:<len>, got '{spec}'"
                )));
            };
            let seed: u64 = number(seed, "seed")?;
            let bound: u64 = number(bound, "bound")?;
            let len: u64 = number(len, "length")?;
            if bound == 0 {
                return Err(Error::InvalidArgument(
                    "value bound must be positive".into(),
                ));
            }
            let mut rng = SplitMix64::new(seed);
            Ok((0..len).map(|_| rng.below(bound)).collect())
        }
        "identity" => Ok((0..number::<u64>(rest, "length")?).collect()),
        "const" => {
            let (c, len) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected const:<c>:<len>, got '{spec}'")))?;
            let c: u64 = number(c, "constant")?;
            Ok(vec![c; number::<usize>(len, "length")?])
        }
        "pow2" => {
            let len: u32 = number(rest, "length")?;
            if len > 64 {
                return Err(Error::Overflow(format!(
                    "2^{} does not fit 64 bits",
                    len - 1
                )));
            }
            Ok((0..len).map(|s| 1u64 << s).collect())
        }
        _ => Err(Error::Parse(format!("unknown function table '{spec}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        assert_eq!(function_table("list:3,1,4").unwrap(), vec![3, 1, 4]);
        assert_eq!(function_table("identity:3").unwrap(), vec![0, 1, 2]);
        assert_eq!(function_table("const:5:2").unwrap(), vec![5, 5]);
        assert_eq!(function_table("pow2:4").unwrap(), vec![1, 2, 4, 8]);
        let r = function_table("seed:9:30:100").unwrap();
        assert_eq!(r.len(), 100);
        assert!(r.iter().all(|&v| v < 30));
        assert_eq!(r, function_table("seed:9:30:100").unwrap());
        assert!(function_table("seed:9:0:4").is_err());
        assert!(function_table("pow2:65").is_err());
        assert!(function_table("nope").is_err());
    }
}
