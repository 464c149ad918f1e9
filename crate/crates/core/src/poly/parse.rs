//! Text form of polynomials.
//!
//! Grammar: terms joined by `+`/`-`; a term is a `*`-separated product of
//! rational constants (`p` or `p/q`) and variable powers (`x3^2`, exponent
//! defaulting to 1). Whitespace is ignored.

use super::expvec::ExpVec;
use super::mvpoly::{MvPoly, PolyError};
use super::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// `x1, …, xn`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(BigInt::from_str(s).unwrap())
    }

    fn ident(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

/// Parses `text` over the given variable names.
pub fn parse_poly(text: &str, variables: &[String]) -> Result<MvPoly, PolyError> {
    let n = variables.len();
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut out = MvPoly::zero(n);
    let mut first = true;
    loop {
        let negative = match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                false
            }
            Some(b'-') => {
                lx.pos += 1;
                true
            }
            Some(_) if first => false,
            Some(c) => return Err(lx.err(format!("expected '+' or '-', found {:?}", c as char))),
        };
        first = false;
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; n];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.digits()?;
                    let den = if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let d = lx.digits()?;
                        if d.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    coeff *= Rational::new(num, den);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (start, name) = lx.ident();
                    let idx = variables
                        .iter()
                        .position(|v| *v == name)
                        .ok_or(PolyError::UnknownVariable { pos: start, name })?;
                    let e = if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let d = lx.digits()?;
                        u32::try_from(&d).map_err(|_| lx.err("exponent too large"))?
                    } else {
                        1
                    };
                    exps[idx] = exps[idx].checked_add(e).ok_or_else(|| lx.err("exponent too large"))?;
                }
                Some(c) => return Err(lx.err(format!("unexpected {:?}", c as char))),
                None => return Err(lx.err("unexpected end of input")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term(ExpVec::new(exps), coeff);
    }
    Ok(out)
}

/// Parses with variables `x1..xn`, where `n` is the largest index seen
/// (at least `min_vars`).
pub fn parse_poly_auto(text: &str, min_vars: usize) -> Result<MvPoly, PolyError> {
    let bytes = text.as_bytes();
    let mut n = min_vars.max(1);
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            match word.strip_prefix('x').and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k >= 1 && !word[1..].starts_with('0') => n = n.max(k),
                _ => {
                    return Err(PolyError::UnknownVariable {
                        pos: start,
                        name: word.to_string(),
                    })
                }
            }
        } else {
            i += 1;
        }
    }
    parse_poly(text, &default_names(n))
}

/// Canonical text: graded-lex descending terms, reduced fractions.
pub fn to_text(f: &MvPoly, names: &[String]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (e, c)) in f.terms().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if !a.is_one() || e.is_constant() {
            parts.push(super::rational::format_short(&a));
        }
        for (i, &p) in e.exponents().iter().enumerate() {
            match p {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], p)),
            }
        }
        s.push_str(&parts.join("*"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{rat, ratio};

    #[test]
    fn motzkin_fixture() {
        let m = parse_poly_auto("x1^2*x2^4 + x1^4*x2^2 - 3*x1^2*x2^2 + 1", 0).unwrap();
        let expected = MvPoly::from_int_terms(2, &[(&[2, 4], 1), (&[4, 2], 1), (&[2, 2], -3), (&[0, 0], 1)]);
        assert_eq!(m, expected);
        assert_eq!(
            to_text(&m, &default_names(2)),
            "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1"
        );
    }

    #[test]
    fn collects_like_terms() {
        let p = parse_poly_auto("-1/2*x1 + x1", 1).unwrap();
        assert_eq!(p, MvPoly::monomial(ExpVec::new(vec![1]), ratio(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        let names = default_names(2);
        assert!(matches!(
            parse_poly("x1 + y", &names),
            Err(PolyError::UnknownVariable { pos: 5, .. })
        ));
        assert!(matches!(
            parse_poly("x1 + + 2", &names),
            Err(PolyError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(parse_poly("3/0", &names), Err(PolyError::Syntax { .. })));
        assert!(parse_poly("", &names).is_err());
    }

    #[test]
    fn constants_and_signs() {
        let p = parse_poly_auto("-3 + 2*x1*x1", 1).unwrap();
        assert_eq!(p.constant_term(), rat(-3));
        assert_eq!(to_text(&p, &default_names(1)), "2*x1^2 - 3");
        assert_eq!(to_text(&MvPoly::zero(1), &default_names(1)), "0");
    }
}
