//! Run-length vector syntax: `(1^4,-1^4,0^17)`, `(1/2^24)`,
//! `((17/13,-9/13^5,4/13^7),(7/13^6,-6/13^7))`, and the Lorentzian class form
//! `(7|5,1^23)`. Superscript digits (`1²³`) and `−` are accepted, and
//! `a,b,...,c` expands an arithmetic progression.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::vector::ScaledVector;
use crate::error::{Error, Result};

fn normalize(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '−' | '–' => out.push('-'),
            '…' => out.push_str("..."),
            '⁰' => out.push_str("^0"),
            '¹' => out.push_str("^1"),
            '²' => out.push_str("^2"),
            '³' => out.push_str("^3"),
            '⁴' => out.push_str("^4"),
            '⁵' => out.push_str("^5"),
            '⁶' => out.push_str("^6"),
            '⁷' => out.push_str("^7"),
            '⁸' => out.push_str("^8"),
            '⁹' => out.push_str("^9"),
            c if c.is_whitespace() => {}
            c => out.push(c),
        }
    }
    // collapse "^2^3" produced by consecutive superscripts into "^23"
    let mut collapsed = String::with_capacity(out.len());
    let mut prev_digit_in_exp = false;
    let mut chars = out.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' && prev_digit_in_exp {
            continue;
        }
        if c == '^' {
            prev_digit_in_exp = false;
            collapsed.push(c);
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    collapsed.push(d);
                    chars.next();
                    prev_digit_in_exp = true;
                } else {
                    break;
                }
            }
            continue;
        }
        prev_digit_in_exp = false;
        collapsed.push(c);
    }
    collapsed
}

fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number `{tok}`"));
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

enum Token {
    Value(BigRational, usize),
    Ellipsis,
}

fn parse_items(body: &str) -> Result<Vec<BigRational>> {
    let mut tokens = Vec::new();
    for raw in body.split(',') {
        if raw.is_empty() {
            return Err(Error::Parse("empty entry".into()));
        }
        if raw == "..." {
            tokens.push(Token::Ellipsis);
            continue;
        }
        let (v, count) = match raw.split_once('^') {
            Some((v, c)) => (
                v,
                c.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad repeat count `{c}`")))?,
            ),
            None => (raw, 1),
        };
        tokens.push(Token::Value(parse_rational(v)?, count));
    }
    let mut out: Vec<BigRational> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        match &tokens[i] {
            Token::Value(v, c) => out.extend(std::iter::repeat(v.clone()).take(*c)),
            Token::Ellipsis => {
                let n = out.len();
                let next = match tokens.get(i + 1) {
                    Some(Token::Value(v, _)) => v.clone(),
                    _ => return Err(Error::Parse("`...` must be followed by a value".into())),
                };
                if n < 2 {
                    return Err(Error::Parse("`...` needs two preceding values".into()));
                }
                let step = &out[n - 1] - &out[n - 2];
                if step.is_zero() {
                    return Err(Error::Parse("`...` with zero step".into()));
                }
                let span = (&next - &out[n - 1]) / &step;
                if !span.is_integer() || !span.is_positive() {
                    return Err(Error::Parse("`...` does not reach the next value".into()));
                }
                let mut cur = out[n - 1].clone();
                let steps = span.to_integer();
                let mut k = BigInt::from(1);
                while k < steps {
                    cur += &step;
                    out.push(cur.clone());
                    k += 1;
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

fn strip_parens(s: &str) -> Result<&str> {
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected parentheses around `{s}`")))
}

/// Splits on commas at nesting depth zero.
fn split_top(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced parentheses".into()));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_group(s: &str) -> Result<Vec<BigRational>> {
    let body = strip_parens(s)?;
    if !body.contains('(') {
        return parse_items(body);
    }
    let mut out = Vec::new();
    for part in split_top(body)? {
        if part.starts_with('(') {
            out.extend(parse_group(part)?);
        } else {
            out.extend(parse_items(part)?);
        }
    }
    Ok(out)
}

/// Parses a (possibly nested) run-length vector into exact rationals.
pub fn parse_rationals(input: &str) -> Result<Vec<BigRational>> {
    let s = normalize(input);
    if s.contains('|') {
        return Err(Error::Parse("unexpected `|` in a vector".into()));
    }
    parse_group(&s)
}

pub fn parse_vector(input: &str) -> Result<ScaledVector> {
    Ok(ScaledVector::from_rationals(&parse_rationals(input)?))
}

/// Parses `(a | b_1, ..., b_n)` into `(a, [b_1, ..., b_n])`.
pub fn parse_class(input: &str) -> Result<(BigInt, Vec<BigInt>)> {
    let s = normalize(input);
    let body = strip_parens(&s)?;
    let (a, rest) = body
        .split_once('|')
        .ok_or_else(|| Error::Parse("expected `(a|b1,...,bn)`".into()))?;
    let a = parse_rational(a)?;
    let bs = parse_items(rest)?;
    let to_int = |q: BigRational| {
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::Parse("class entries must be integers".into()))
        }
    };
    Ok((to_int(a)?, bs.into_iter().map(to_int).collect::<Result<_>>()?))
}

/// Formats a vector back into run-length syntax.
pub fn format_vector(v: &ScaledVector) -> String {
    let vals = v.to_rationals();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < vals.len() {
        let mut j = i + 1;
        while j < vals.len() && vals[j] == vals[i] {
            j += 1;
        }
        let x = &vals[i];
        let s = if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        };
        if j - i > 1 {
            parts.push(format!("{s}^{}", j - i));
        } else {
            parts.push(s);
        }
        i = j;
    }
    format!("({})", parts.join(","))
}

/// Formats a Lorentzian class.
pub fn format_class(a: &BigInt, b: &[BigInt]) -> String {
    let bs: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let inner = format_vector(&ScaledVector::from_rationals(&bs));
    format!("({}|{}", a, &inner[1..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter()
            .map(|q| {
                assert!(q.is_integer());
                q.to_integer().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn run_length_vector() {
        let v = parse_rationals("(1^4,-1^4,0^17)").unwrap();
        assert_eq!(v.len(), 25);
        assert_eq!(&ints(&v)[..9], &[1, 1, 1, 1, -1, -1, -1, -1, 0]);
    }

    #[test]
    fn nested_fractions() {
        let v = parse_vector("((17/13,-9/13^5,4/13^7),(7/13^6,-6/13^7))").unwrap();
        assert_eq!(v.dim(), 26);
        assert_eq!(v.denom(), &BigInt::from(13));
    }

    #[test]
    fn superscripts_and_unicode_minus() {
        let a = parse_rationals("(1⁴,−1⁴,0¹⁷)").unwrap();
        let b = parse_rationals("(1^4,-1^4,0^17)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn class_with_ellipsis() {
        let (a, b) = parse_class("(145|51,47,45,...,7,5,3)").unwrap();
        assert_eq!(a, BigInt::from(145));
        assert_eq!(b.len(), 24);
        assert_eq!(b[0], BigInt::from(51));
        assert_eq!(b[23], BigInt::from(3));
        let (_, b) = parse_class("(145|51,47,45,…,7,5,3)").unwrap();
        assert_eq!(b.len(), 24);
    }

    #[test]
    fn class_run_length() {
        let (a, b) = parse_class("(8|4,3,2^8,1^6)").unwrap();
        assert_eq!(a, BigInt::from(8));
        assert_eq!(b.len(), 16);
    }

    #[test]
    fn format_round_trip() {
        let v = parse_vector("(1/5^20,-4/5^5)").unwrap();
        assert_eq!(format_vector(&v), "(1/5^20,-4/5^5)");
        assert_eq!(parse_vector(&format_vector(&v)).unwrap(), v);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rationals("(1,,2)").is_err());
        assert!(parse_rationals("1,2").is_err());
        assert!(parse_class("(1,2)").is_err());
        assert!(parse_rationals("(1/0)").is_err());
    }
}
