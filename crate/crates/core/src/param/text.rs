//! Canonical text and JSON forms of [`ParamPoly`].
//!
//! Text: terms in descending canonical monomial order, joined by " + " / " - ",
//! factors spelled q, a, b, e1, e2, xi with `^` exponents (only q may be
//! negative) and `*` between factors. JSON: a list of
//! `{"exps": [e_q, e_a, e_b, e_e1, e_e2, e_xi], "coeff": "<decimal>"}` records
//! in the same order. Parsing is the exact inverse on canonical output.

use super::{Monomial, ParamPoly, Var, ALL_VARS, NVARS};
use crate::error::ParseError;
use crate::qpoly::QPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn param_to_text(p: &ParamPoly) -> String {
    let mut terms = p.terms_sorted();
    terms.reverse();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&monomial_text(&t.coeff.abs(), &t.monomial));
    }
    out
}

fn monomial_text(mag: &BigInt, m: &Monomial) -> String {
    let mut factors: Vec<String> = Vec::new();
    if m.e_q == 1 {
        factors.push("q".to_string());
    } else if m.e_q != 0 {
        factors.push(format!("q^{}", m.e_q));
    }
    for (i, v) in ALL_VARS.iter().enumerate() {
        match m.exps[i] {
            0 => {}
            1 => factors.push(v.name().to_string()),
            e => factors.push(format!("{}^{}", v.name(), e)),
        }
    }
    if factors.is_empty() {
        return mag.to_string();
    }
    let vars = factors.join("*");
    if mag.is_one() {
        vars
    } else {
        format!("{mag}*{vars}")
    }
}

// ---------------------------------------------------------------------------
// Lexer, shared with the XY text format
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

pub(crate) fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = s[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(v)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                toks.push((start, Tok::Ident(s[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::new(i, format!("unexpected character {:?}", c as char)))
            }
        }
    }
    Ok(toks)
}

pub(crate) struct Cursor<'a> {
    toks: &'a [(usize, Tok)],
    pub pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [(usize, Tok)], input_len: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            end: input_len,
        }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub fn byte_pos(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(ParseError::new(self.byte_pos(), "trailing input"))
        }
    }

    /// Signed integer exponent after `^`.
    pub fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.bump();
        }
        match self.bump() {
            Some(Tok::Int(v)) => {
                let v: i64 = v
                    .try_into()
                    .map_err(|_| ParseError::new(self.byte_pos(), "exponent out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(ParseError::new(self.byte_pos(), "expected exponent")),
        }
    }
}

// ---------------------------------------------------------------------------
// Text parsing
// ---------------------------------------------------------------------------

pub fn param_from_text(s: &str) -> Result<ParamPoly, ParseError> {
    let toks = lex(s)?;
    let mut cur = Cursor::new(&toks, s.len());
    let p = parse_param_sum(&mut cur)?;
    cur.expect_end()?;
    Ok(p)
}

/// Sum of terms; also used for parenthesized q coefficients in the XY format.
pub(crate) fn parse_param_sum(cur: &mut Cursor) -> Result<ParamPoly, ParseError> {
    let mut acc = ParamPoly::zero();
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            Some(Tok::Minus) => {
                cur.bump();
                true
            }
            Some(Tok::Plus) if !first => {
                cur.bump();
                false
            }
            None | Some(Tok::RParen) if !first => break,
            _ if first => false,
            _ => return Err(ParseError::new(cur.byte_pos(), "expected '+' or '-'")),
        };
        let term = parse_param_term(cur)?;
        acc.add_assign(&if sign { term.neg() } else { term });
        first = false;
        match cur.peek() {
            None | Some(Tok::RParen) => break,
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            _ => return Err(ParseError::new(cur.byte_pos(), "expected '+' or '-'")),
        }
    }
    Ok(acc)
}

fn parse_param_term(cur: &mut Cursor) -> Result<ParamPoly, ParseError> {
    let mut coeff = BigInt::one();
    let mut e_q: i64 = 0;
    let mut exps = [0u32; NVARS];
    let mut any = false;
    loop {
        let pos = cur.byte_pos();
        match cur.peek().cloned() {
            Some(Tok::Int(v)) => {
                cur.bump();
                coeff *= v;
            }
            Some(Tok::Ident(name)) => {
                cur.bump();
                let e = if matches!(cur.peek(), Some(Tok::Caret)) {
                    cur.bump();
                    cur.exponent()?
                } else {
                    1
                };
                if name == "q" {
                    e_q += e;
                } else {
                    let v = Var::from_name(&name)
                        .ok_or_else(|| ParseError::new(pos, format!("unknown variable '{name}'")))?;
                    if e < 0 {
                        return Err(ParseError::new(
                            pos,
                            format!("negative exponent on '{name}' (only q is Laurent)"),
                        ));
                    }
                    exps[v as usize] += e as u32;
                }
            }
            _ => return Err(ParseError::new(pos, "expected a term")),
        }
        any = true;
        if matches!(cur.peek(), Some(Tok::Star)) {
            cur.bump();
            continue;
        }
        break;
    }
    debug_assert!(any);
    if coeff.is_zero() {
        return Ok(ParamPoly::zero());
    }
    Ok(ParamPoly::monomial(exps, QPoly::monomial(coeff, e_q)))
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

pub fn param_to_json(p: &ParamPoly) -> serde_json::Value {
    let mut terms = p.terms_sorted();
    terms.reverse();
    serde_json::Value::Array(
        terms
            .iter()
            .map(|t| {
                let mut exps = vec![serde_json::json!(t.monomial.e_q)];
                exps.extend(t.monomial.exps.iter().map(|e| serde_json::json!(e)));
                serde_json::json!({"exps": exps, "coeff": t.coeff.to_string()})
            })
            .collect(),
    )
}

pub fn param_from_json(v: &serde_json::Value) -> Result<ParamPoly, ParseError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ParseError::new(0, "expected a JSON array of terms"))?;
    let mut acc = ParamPoly::zero();
    for (i, t) in arr.iter().enumerate() {
        let exps = t
            .get("exps")
            .and_then(|e| e.as_array())
            .ok_or_else(|| ParseError::new(i, "term missing 'exps' array"))?;
        if exps.len() != NVARS + 1 {
            return Err(ParseError::new(i, format!("'exps' must have {} entries", NVARS + 1)));
        }
        let e_q = exps[0]
            .as_i64()
            .ok_or_else(|| ParseError::new(i, "bad q exponent"))?;
        let mut ve = [0u32; NVARS];
        for (j, item) in exps[1..].iter().enumerate() {
            let e = item
                .as_u64()
                .ok_or_else(|| ParseError::new(i, "variable exponents must be nonnegative"))?;
            ve[j] = e
                .try_into()
                .map_err(|_| ParseError::new(i, "exponent out of range"))?;
        }
        let coeff: BigInt = t
            .get("coeff")
            .and_then(|c| c.as_str())
            .ok_or_else(|| ParseError::new(i, "term missing 'coeff' string"))?
            .parse()
            .map_err(|_| ParseError::new(i, "bad coefficient"))?;
        acc.add_assign(&ParamPoly::monomial(ve, QPoly::monomial(coeff, e_q)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::Subst;

    #[test]
    fn basic_rendering() {
        let a = ParamPoly::var(Var::Alpha);
        let b = ParamPoly::var(Var::Beta);
        assert_eq!(param_to_text(&a.add(&b)), "a + b");
        assert_eq!(param_to_text(&ParamPoly::zero()), "0");
        assert_eq!(param_to_text(&ParamPoly::q_int(3)), "q^2 + q + 1");
        let y = b.sub(&ParamPoly::var(Var::Eps2)).mul_qpoly(&QPoly::q_power(-1));
        assert_eq!(param_to_text(&y), "q^-1*b - q^-1*e2");
    }

    #[test]
    fn parse_inverse_of_serialize() {
        let samples = [
            "a + b",
            "0",
            "q^-1*b - q^-1*e2",
            "3*q^2*a*b^2 - xi + 7",
            "q^6 + q^5 + 2*q^4 + 2*q^3 + 2*q^2 + q + 1",
        ];
        for s in samples {
            let p = param_from_text(s).unwrap();
            assert_eq!(param_to_text(&p), *s, "round trip of {s}");
            let j = param_to_json(&p);
            assert_eq!(param_from_json(&j).unwrap(), p);
        }
    }

    #[test]
    fn parse_rejects_with_position() {
        let err = param_from_text("a + $").unwrap_err();
        assert_eq!(err.pos, 4);
        let err = param_from_text("a^-2").unwrap_err();
        assert_eq!(err.pos, 0);
        assert!(err.msg.contains("only q is Laurent"));
        let err = param_from_text("a b").unwrap_err();
        assert_eq!(err.pos, 2);
        assert!(param_from_text("zz + 1").is_err());
    }

    #[test]
    fn parse_merges_duplicate_monomials() {
        let p = param_from_text("a + a").unwrap();
        assert_eq!(param_to_text(&p), "2*a");
        let p = param_from_text("a - a").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn ordering_is_graded() {
        // alpha^2 outranks q*b which outranks xi.
        let p = param_from_text("xi + a^2 + q*b").unwrap();
        assert_eq!(param_to_text(&p), "a^2 + q*b + xi");
        // q-powers compare by value inside a grade.
        let p = param_from_text("q^2*a + q*a^2").unwrap();
        assert_eq!(param_to_text(&p), "q^2*a + q*a^2");
    }

    #[test]
    fn substitute_equal_vars() {
        // beta = eps2 sends beta - eps2 to zero.
        let b = ParamPoly::var(Var::Beta);
        let e2 = ParamPoly::var(Var::Eps2);
        let s = Subst::new().set(Var::Eps2, b.clone());
        assert!(b.sub(&e2).substitute(&s).is_zero());
    }
}
