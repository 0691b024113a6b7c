//! Text forms for algebra elements: signed sums over monoid indices such as
//! `95 - 96 - 127 + 2·128`, and letter combinations such as `5B - 4N`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Renders `Σ c·k` as `k1 - k2 + 2·k3`.
pub fn signed_sum<I: IntoIterator<Item = (u32, i64)>>(terms: I) -> String {
    rational_sum(terms.into_iter().map(|(k, c)| (k.to_string(), BigRational::from_integer(c.into()))), false)
}

/// Like [`signed_sum`] with rational coefficients (`1/6·85`).
pub fn rational_signed_sum<I: IntoIterator<Item = (u32, BigRational)>>(terms: I) -> String {
    rational_sum(terms.into_iter().map(|(k, c)| (k.to_string(), c)), false)
}

/// Renders a combination of named basis elements: `-2B + M + 2N`,
/// `1/2·C`, `0`.
pub fn combination(coeffs: &[BigRational], names: &[String]) -> String {
    rational_sum(coeffs.iter().zip(names).map(|(c, n)| (n.clone(), c.clone())), true)
}

fn rational_sum<I: IntoIterator<Item = (String, BigRational)>>(terms: I, letters: bool) -> String {
    let mut s = String::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if letters && a.is_integer() && !a.is_one() {
            let _ = write!(s, "{a}");
        } else if !a.is_one() {
            let _ = write!(s, "{a}·");
        }
        s.push_str(&name);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn parse_coefficient(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

// Splits `a - b + c` into signed chunks; `·` and `*` both mark a coefficient.
fn signed_chunks(s: &str) -> Result<Vec<(bool, String)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    for ch in compact.chars() {
        match ch {
            '+' | '-' | '−' => {
                if !cur.is_empty() {
                    out.push((neg, std::mem::take(&mut cur)));
                } else if !out.is_empty() || neg {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                neg = ch != '+';
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("empty term in `{s}`")));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses `95 - 96 + 2·512`, `+85 -2*119` or `1/6·85`; repeated indices are
/// summed and cancelled terms dropped. Output is sorted by index.
pub fn parse_signed_sum(s: &str) -> Result<Vec<(u32, BigRational)>> {
    let mut acc: std::collections::BTreeMap<u32, BigRational> = Default::default();
    for (neg, chunk) in signed_chunks(s)? {
        let (coef, index) = match chunk.split_once(['*', '·']) {
            Some((c, k)) => (parse_coefficient(c)?, k),
            None => (BigRational::one(), chunk.as_str()),
        };
        let k: u32 = index.parse().map_err(|_| Error::Parse(format!("bad index `{index}`")))?;
        let e = acc.entry(k).or_insert_with(BigRational::zero);
        *e += if neg { -coef } else { coef };
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Parses a letter combination such as `-2B+M+2N` or `0` into coefficients
/// over `names`.
pub fn parse_combination(s: &str, names: &[String]) -> Result<Vec<BigRational>> {
    let mut out = vec![BigRational::zero(); names.len()];
    if s.trim() == "0" {
        return Ok(out);
    }
    for (neg, chunk) in signed_chunks(s)? {
        let split = chunk.find(|c: char| c.is_alphabetic()).ok_or_else(|| Error::Parse(format!("no name in `{chunk}`")))?;
        let (c, name) = chunk.split_at(split);
        let c = c.trim_end_matches(['*', '·']);
        let coef = if c.is_empty() { BigRational::one() } else { parse_coefficient(c)? };
        let at = names.iter().position(|n| n == name).ok_or_else(|| Error::Parse(format!("unknown name `{name}`")))?;
        out[at] += if neg { -coef } else { coef };
    }
    Ok(out)
}

/// `A`, `B`, … for basis positions.
pub fn letter_names(count: usize) -> Vec<String> {
    (0..count).map(|i| if i < 26 { char::from(b'A' + i as u8).to_string() } else { format!("Z{i}") }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn signed_sum_round_trip() {
        let text = "95 - 96 - 127 + 2·128";
        let terms = parse_signed_sum(text).unwrap();
        assert_eq!(terms, vec![(95, q(1, 1)), (96, q(-1, 1)), (127, q(-1, 1)), (128, q(2, 1))]);
        assert_eq!(rational_signed_sum(terms), text);
        assert_eq!(parse_signed_sum("+85 -2*119 +1/6*3").unwrap()[0], (3, q(1, 6)));
        assert_eq!(signed_sum([(1, -1), (512, 2)]), "-1 + 2·512");
    }

    #[test]
    fn combinations() {
        let names = letter_names(14);
        let c = parse_combination("-2B+M+2N", &names).unwrap();
        assert_eq!(c[1], q(-2, 1));
        assert_eq!(c[12], q(1, 1));
        assert_eq!(combination(&c, &names), "-2B + M + 2N");
        assert!(parse_combination("0", &names).unwrap().iter().all(Zero::is_zero));
        assert!(parse_combination("2Q", &names).is_err());
        assert!(parse_signed_sum("1 +").is_err());
    }
}
