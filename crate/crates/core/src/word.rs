//! Words over a signed generator alphabet.
//!
//! A letter is a nonzero `i32`: letter `k` (1-based) is generator `k-1`,
//! letter `-k` is its inverse.

use crate::error::{Error, Result};

pub type Letter = i32;
pub type Word = Vec<Letter>;

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Free reduction: cancel adjacent inverse pairs until stable.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if l == 0 {
            continue;
        }
        if let Some(&last) = out.last() {
            if last == -l {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

pub fn concat(a: &[Letter], b: &[Letter]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// Lexicographic order on (length, letters). Inverses sort after positives
/// of the same generator: the key of letter l is (gen index, is_inverse).
fn letter_key(l: Letter) -> (u32, u8) {
    (l.unsigned_abs() - 1, if l < 0 { 1 } else { 0 })
}

pub fn word_cmp(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l))))
}

/// Render a word using generator names, `^-1` marking inverses.
pub fn format_word(w: &[Letter], names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&l| {
            let name = &names[(l.unsigned_abs() - 1) as usize];
            if l < 0 {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse a word from space-separated tokens (`a`, `a^-1`, `a^3`, `1` for the
/// empty word). When every generator name is a single lowercase letter, a
/// compact run like `abA` is also accepted, capital meaning inverse.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    let lookup = |tok: &str| -> Option<Letter> {
        names.iter().position(|n| n == tok).map(|i| i as i32 + 1)
    };
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if let Some((base, pow)) = tok.split_once('^') {
            let l = lookup(base).ok_or_else(|| Error::UnknownSymbol(base.to_string()))?;
            let e: i64 = pow
                .parse()
                .map_err(|_| Error::UnknownSymbol(tok.to_string()))?;
            let letter = if e < 0 { -l } else { l };
            for _ in 0..e.unsigned_abs() {
                out.push(letter);
            }
        } else if let Some(l) = lookup(tok) {
            out.push(l);
        } else if names.iter().all(|n| n.len() == 1 && n.chars().all(|c| c.is_ascii_lowercase())) {
            for c in tok.chars() {
                let lower = c.to_ascii_lowercase().to_string();
                let l = lookup(&lower).ok_or_else(|| Error::UnknownSymbol(c.to_string()))?;
                out.push(if c.is_ascii_uppercase() { -l } else { l });
            }
        } else {
            return Err(Error::UnknownSymbol(tok.to_string()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_cancels_pairs() {
        assert_eq!(free_reduce(&[1, 2, -2]), vec![1]);
        assert_eq!(free_reduce(&[1, -1]), Vec::<Letter>::new());
        assert_eq!(free_reduce(&[1, 2, -1, -2]), vec![1, 2, -1, -2]);
    }

    #[test]
    fn parse_compact_and_tokens() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(parse_word("abA", &names).unwrap(), vec![1, 2, -1]);
        assert_eq!(parse_word("a b^-1", &names).unwrap(), vec![1, -2]);
        assert_eq!(parse_word("a^3", &names).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_word("1", &names).unwrap(), Vec::<Letter>::new());
    }

    #[test]
    fn order_is_shortlex() {
        assert!(word_cmp(&[1], &[1, 1]).is_lt());
        assert!(word_cmp(&[1], &[-1]).is_lt());
        assert!(word_cmp(&[1, 2], &[2, 1]).is_lt());
    }
}
