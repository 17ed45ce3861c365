//! Polynomials in the indeterminates X_i (i >= 0) and Y_i (i >= -1) over
//! Z[q, q^-1].
//!
//! X_i and Y_i are the building blocks of both combinatorial coefficient
//! formulas; Y_{-1} is the formal extension with specialization
//! q^-1 (beta - eps2). [`XYPoly::specialize`] is the ring homomorphism
//! X_i -> alpha q^i + eps1 [i]_q, Y_i -> beta q^i + eps2 [i]_q, and
//! [`XYPoly::swap_xy`] is the X <-> Y involution (undefined on Y_{-1}).

use crate::error::{ParseError, SwapError};
use crate::param::text::{lex, parse_param_sum, Cursor, Tok};
use crate::param::{ParamPoly, Var, NVARS};
use crate::qpoly::QPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Product of X and Y powers; exponents are >= 1 and indices are sorted.
/// Only Y may carry index -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct XYMonomial {
    xs: Vec<(u32, u32)>,
    ys: Vec<(i64, u32)>,
}

impl XYMonomial {
    pub fn unit() -> Self {
        XYMonomial::default()
    }

    pub fn x(i: u32) -> Self {
        XYMonomial {
            xs: vec![(i, 1)],
            ys: Vec::new(),
        }
    }

    pub fn y(i: i64) -> Self {
        assert!(i >= -1, "Y index must be >= -1");
        XYMonomial {
            xs: Vec::new(),
            ys: vec![(i, 1)],
        }
    }

    /// Squarefree product of the given X indices and Y indices.
    pub fn from_indices(xs: &[u32], ys: &[i64]) -> Self {
        let mut m = XYMonomial::unit();
        for &i in xs {
            m = m.mul(&XYMonomial::x(i));
        }
        for &i in ys {
            m = m.mul(&XYMonomial::y(i));
        }
        m
    }

    pub fn mul(&self, other: &XYMonomial) -> XYMonomial {
        fn merge<I: Ord + Copy>(a: &[(I, u32)], b: &[(I, u32)]) -> Vec<(I, u32)> {
            let mut out: Vec<(I, u32)> = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                    out.push(a[i]);
                    i += 1;
                } else if i == a.len() || b[j].0 < a[i].0 {
                    out.push(b[j]);
                    j += 1;
                } else {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
            out
        }
        XYMonomial {
            xs: merge(&self.xs, &other.xs),
            ys: merge(&self.ys, &other.ys),
        }
    }

    pub fn degree(&self) -> u64 {
        self.xs.iter().map(|&(_, e)| e as u64).sum::<u64>()
            + self.ys.iter().map(|&(_, e)| e as u64).sum::<u64>()
    }

    pub fn x_exps(&self) -> &[(u32, u32)] {
        &self.xs
    }

    pub fn y_exps(&self) -> &[(i64, u32)] {
        &self.ys
    }

    pub fn has_y_minus_one(&self) -> bool {
        self.ys.first().is_some_and(|&(i, _)| i == -1)
    }
}

/// Polynomial in the X_i and Y_i over Z[q, q^-1].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct XYPoly {
    terms: BTreeMap<XYMonomial, QPoly>,
}

impl XYPoly {
    pub fn zero() -> Self {
        XYPoly::default()
    }

    pub fn one() -> Self {
        XYPoly::from_qpoly(QPoly::one())
    }

    pub fn from_qpoly(qp: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !qp.is_zero() {
            terms.insert(XYMonomial::unit(), qp);
        }
        XYPoly { terms }
    }

    pub fn x(i: u32) -> Self {
        XYPoly::monomial(XYMonomial::x(i), QPoly::one())
    }

    pub fn y(i: i64) -> Self {
        XYPoly::monomial(XYMonomial::y(i), QPoly::one())
    }

    pub fn monomial(m: XYMonomial, qp: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !qp.is_zero() {
            terms.insert(m, qp);
        }
        XYPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(|qp| qp.term_count()).sum()
    }

    pub fn add(&self, other: &XYPoly) -> XYPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &XYPoly) {
        for (m, qp) in &other.terms {
            match self.terms.get_mut(m) {
                Some(cur) => {
                    cur.add_assign(qp);
                    if cur.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), qp.clone());
                }
            }
        }
    }

    pub fn neg(&self) -> XYPoly {
        XYPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, qp)| (m.clone(), qp.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &XYPoly) -> XYPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &XYPoly) -> XYPoly {
        let mut terms: BTreeMap<XYMonomial, QPoly> = BTreeMap::new();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                let m = m1.mul(m2);
                let prod = q1.mul(q2);
                match terms.get_mut(&m) {
                    Some(cur) => cur.add_assign(&prod),
                    None => {
                        terms.insert(m, prod);
                    }
                }
            }
        }
        terms.retain(|_, qp| !qp.is_zero());
        XYPoly { terms }
    }

    pub fn mul_qpoly(&self, qp: &QPoly) -> XYPoly {
        if qp.is_zero() {
            return XYPoly::zero();
        }
        XYPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(qp)))
                .collect(),
        }
    }

    pub fn contains_y_minus_one(&self) -> bool {
        self.terms.keys().any(|m| m.has_y_minus_one())
    }

    /// Coefficient (a polynomial in q) of an XY monomial.
    pub fn coeff_of(&self, m: &XYMonomial) -> QPoly {
        self.terms.get(m).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XYMonomial, &QPoly)> {
        self.terms.iter()
    }

    /// Exchange X_i <-> Y_i. An involution; fails if Y_{-1} occurs.
    pub fn swap_xy(&self) -> Result<XYPoly, SwapError> {
        if self.contains_y_minus_one() {
            return Err(SwapError::ContainsYMinusOne);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, qp)| {
                let xs: Vec<(u32, u32)> = m.ys.iter().map(|&(i, e)| (i as u32, e)).collect();
                let ys: Vec<(i64, u32)> = m.xs.iter().map(|&(i, e)| (i as i64, e)).collect();
                (XYMonomial { xs, ys }, qp.clone())
            })
            .collect();
        Ok(XYPoly { terms })
    }

    /// Substitute X_i -> alpha q^i + eps1 [i]_q, Y_i -> beta q^i + eps2 [i]_q
    /// (i >= 0) and Y_{-1} -> q^-1 (beta - eps2). Ring homomorphism.
    pub fn specialize(&self) -> ParamPoly {
        let mut x_pows: HashMap<(u32, u32), ParamPoly> = HashMap::new();
        let mut y_pows: HashMap<(i64, u32), ParamPoly> = HashMap::new();
        let mut acc = ParamPoly::zero();
        for (m, qp) in &self.terms {
            let mut term = ParamPoly::from_qpoly(qp.clone());
            for &(i, e) in &m.xs {
                let p = x_pows
                    .entry((i, e))
                    .or_insert_with(|| x_value(i).pow(e))
                    .clone();
                term = term.mul(&p);
            }
            for &(i, e) in &m.ys {
                let p = y_pows
                    .entry((i, e))
                    .or_insert_with(|| y_value(i).pow(e))
                    .clone();
                term = term.mul(&p);
            }
            acc.add_assign(&term);
        }
        acc
    }
}

/// X_i = alpha q^i + eps1 [i]_q.
pub fn x_value(i: u32) -> ParamPoly {
    ParamPoly::var(Var::Alpha)
        .mul_qpoly(&QPoly::q_power(i as i64))
        .add(&ParamPoly::var(Var::Eps1).mul_qpoly(&QPoly::q_int(i)))
}

/// Y_i = beta q^i + eps2 [i]_q for i >= 0; Y_{-1} = q^-1 (beta - eps2).
pub fn y_value(i: i64) -> ParamPoly {
    if i == -1 {
        return ParamPoly::var(Var::Beta)
            .sub(&ParamPoly::var(Var::Eps2))
            .mul_qpoly(&QPoly::q_power(-1));
    }
    assert!(i >= 0, "Y index must be >= -1");
    ParamPoly::var(Var::Beta)
        .mul_qpoly(&QPoly::q_power(i))
        .add(&ParamPoly::var(Var::Eps2).mul_qpoly(&QPoly::q_int(i as u32)))
}

// ---------------------------------------------------------------------------
// Text and JSON forms
// ---------------------------------------------------------------------------

/// Full-term canonical order: grade, then q exponent, then X then Y exponents.
fn term_cmp(a: &(i64, &XYMonomial), b: &(i64, &XYMonomial)) -> std::cmp::Ordering {
    let grade = |t: &(i64, &XYMonomial)| t.0 + t.1.degree() as i64;
    grade(a)
        .cmp(&grade(b))
        .then(a.0.cmp(&b.0))
        .then(a.1.xs.cmp(&b.1.xs))
        .then(a.1.ys.cmp(&b.1.ys))
}

fn xy_factor_text(m: &XYMonomial) -> String {
    let mut factors = Vec::new();
    for &(i, e) in &m.xs {
        factors.push(if e == 1 {
            format!("X{i}")
        } else {
            format!("X{i}^{e}")
        });
    }
    for &(i, e) in &m.ys {
        let name = if i == -1 {
            "Ym1".to_string()
        } else {
            format!("Y{i}")
        };
        factors.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    factors.join("*")
}

pub fn xy_to_text(p: &XYPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&XYMonomial, &QPoly)> = p.terms.iter().collect();
    terms.sort_by(|x, y| {
        term_cmp(&(x.1.min_exp(), x.0), &(y.1.min_exp(), y.0)).then(x.0.cmp(y.0))
    });
    terms.reverse();
    let mut out = String::new();
    for (idx, (m, qp)) in terms.iter().enumerate() {
        // Single q-terms carry their sign; multi-term coefficients print in parens.
        let (neg, coeff_str) = if qp.term_count() == 1 {
            let (e, c) = qp.terms().next().expect("nonzero");
            let mag = c.abs();
            let body = match (mag.is_one(), e) {
                (true, 0) => None,
                (true, 1) => Some("q".to_string()),
                (true, _) => Some(format!("q^{e}")),
                (false, 0) => Some(mag.to_string()),
                (false, 1) => Some(format!("{mag}*q")),
                (false, _) => Some(format!("{mag}*q^{e}")),
            };
            (c.is_negative(), body)
        } else {
            let constant = ParamPoly::from_qpoly((*qp).clone());
            (false, Some(format!("({constant})")))
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors = xy_factor_text(m);
        match (coeff_str, factors.is_empty()) {
            (None, true) => out.push('1'),
            (None, false) => out.push_str(&factors),
            (Some(c), true) => out.push_str(&c),
            (Some(c), false) => {
                out.push_str(&c);
                out.push('*');
                out.push_str(&factors);
            }
        }
    }
    out
}

fn parse_xy_name(pos: usize, name: &str) -> Result<Option<(bool, i64)>, ParseError> {
    if name == "q" {
        return Ok(None);
    }
    let (is_x, rest) = match name.as_bytes()[0] {
        b'X' => (true, &name[1..]),
        b'Y' => (false, &name[1..]),
        _ => return Err(ParseError::new(pos, format!("unknown variable '{name}'"))),
    };
    if !is_x && rest == "m1" {
        return Ok(Some((false, -1)));
    }
    let idx: i64 = rest
        .parse()
        .map_err(|_| ParseError::new(pos, format!("bad index in '{name}'")))?;
    Ok(Some((is_x, idx)))
}

pub fn xy_from_text(s: &str) -> Result<XYPoly, ParseError> {
    let toks = lex(s)?;
    let mut cur = Cursor::new(&toks, s.len());
    let mut acc = XYPoly::zero();
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
            None if !first => break,
            _ if first => false,
            _ => return Err(ParseError::new(cur.byte_pos(), "expected '+' or '-'")),
        };
        let term = parse_xy_term(&mut cur)?;
        acc.add_assign(&if sign { term.neg() } else { term });
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    cur.expect_end()?;
    Ok(acc)
}

fn parse_xy_term(cur: &mut Cursor) -> Result<XYPoly, ParseError> {
    let mut coeff = QPoly::one();
    let mut mono = XYMonomial::unit();
    loop {
        let pos = cur.byte_pos();
        match cur.peek().cloned() {
            Some(Tok::LParen) => {
                cur.bump();
                let inner = parse_param_sum(cur)?;
                match cur.bump() {
                    Some(Tok::RParen) => {}
                    _ => return Err(ParseError::new(cur.byte_pos(), "expected ')'")),
                }
                let qp = inner.qpoly_of(&[0u32; NVARS]);
                if inner.term_count() != qp.term_count() {
                    return Err(ParseError::new(
                        pos,
                        "parenthesized coefficient must be a polynomial in q only",
                    ));
                }
                coeff = coeff.mul(&qp);
            }
            Some(Tok::Int(v)) => {
                cur.bump();
                coeff = coeff.mul_int(&v);
            }
            Some(Tok::Ident(name)) => {
                cur.bump();
                let e = if matches!(cur.peek(), Some(Tok::Caret)) {
                    cur.bump();
                    cur.exponent()?
                } else {
                    1
                };
                match parse_xy_name(pos, &name)? {
                    None => coeff = coeff.shift(e),
                    Some((is_x, idx)) => {
                        if e <= 0 {
                            return Err(ParseError::new(pos, "X/Y exponents must be positive"));
                        }
                        let factor = if is_x {
                            let idx: u32 = idx.try_into().map_err(|_| {
                                ParseError::new(pos, "X index must be nonnegative")
                            })?;
                            XYMonomial {
                                xs: vec![(idx, e as u32)],
                                ys: vec![],
                            }
                        } else {
                            if idx < -1 {
                                return Err(ParseError::new(pos, "Y index must be >= -1"));
                            }
                            XYMonomial {
                                xs: vec![],
                                ys: vec![(idx, e as u32)],
                            }
                        };
                        mono = mono.mul(&factor);
                    }
                }
            }
            _ => return Err(ParseError::new(pos, "expected a term")),
        }
        if matches!(cur.peek(), Some(Tok::Star)) {
            cur.bump();
            continue;
        }
        break;
    }
    Ok(XYPoly::monomial(mono, coeff))
}

pub fn xy_to_json(p: &XYPoly) -> serde_json::Value {
    let mut terms: Vec<serde_json::Value> = Vec::new();
    let mut sorted: Vec<(&XYMonomial, &QPoly)> = p.terms.iter().collect();
    sorted.sort_by(|x, y| term_cmp(&(x.1.min_exp(), x.0), &(y.1.min_exp(), y.0)));
    sorted.reverse();
    for (m, qp) in sorted {
        for (e_q, c) in qp.terms() {
            terms.push(serde_json::json!({
                "e_q": e_q,
                "x": m.xs.iter().map(|&(i, e)| vec![i as i64, e as i64]).collect::<Vec<_>>(),
                "y": m.ys.iter().map(|&(i, e)| vec![i, e as i64]).collect::<Vec<_>>(),
                "coeff": c.to_string(),
            }));
        }
    }
    serde_json::Value::Array(terms)
}

impl fmt::Display for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&xy_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{param_from_text, Subst};

    #[test]
    fn arith_basics() {
        // X0*Y1 + Y1*X0 = 2 X0 Y1
        let p = XYPoly::x(0).mul(&XYPoly::y(1));
        let r = XYPoly::y(1).mul(&XYPoly::x(0));
        assert_eq!(xy_to_text(&p.add(&r)), "2*X0*Y1");
        // (X0 + Y0)^2
        let s = XYPoly::x(0).add(&XYPoly::y(0));
        assert_eq!(xy_to_text(&s.mul(&s)), "X0^2 + 2*X0*Y0 + Y0^2");
        // q*Ym1 keeps its index through multiplication by one
        let p = XYPoly::y(-1).mul_qpoly(&QPoly::q_power(1));
        assert_eq!(xy_to_text(&p.mul(&XYPoly::one())), "q*Ym1");
    }

    #[test]
    fn swap_examples() {
        let p = XYPoly::x(0).mul(&XYPoly::y(1));
        assert_eq!(xy_to_text(&p.swap_xy().unwrap()), "X1*Y0");
        let sym = XYPoly::x(0)
            .mul(&XYPoly::x(1))
            .add(&XYPoly::y(0).mul(&XYPoly::y(1)));
        assert_eq!(sym.swap_xy().unwrap(), sym);
        assert_eq!(
            XYPoly::y(-1).swap_xy(),
            Err(SwapError::ContainsYMinusOne)
        );
        // Involution on a mixed polynomial.
        let p = xy_from_text("(q + 2)*X0*Y2^3 - q^2*X1 + Y0").unwrap();
        assert_eq!(p.swap_xy().unwrap().swap_xy().unwrap(), p);
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(XYPoly::x(0).specialize(), param_from_text("a").unwrap());
        assert_eq!(XYPoly::y(0).specialize(), param_from_text("b").unwrap());
        assert_eq!(
            XYPoly::y(1).specialize(),
            param_from_text("q*b + e2").unwrap()
        );
        // q * Y_{-1} = beta - eps2
        let p = XYPoly::y(-1).mul_qpoly(&QPoly::q_power(1));
        assert_eq!(p.specialize(), param_from_text("b - e2").unwrap());
    }

    #[test]
    fn specialize_is_homomorphism() {
        let p = xy_from_text("X0*Y1 + q*X2").unwrap();
        let r = xy_from_text("Y0 - q^2*X1*Y1").unwrap();
        assert_eq!(
            p.mul(&r).specialize(),
            p.specialize().mul(&r.specialize())
        );
    }

    #[test]
    fn swap_then_specialize_is_mirror() {
        // specialize(swap(p)) = mirror(specialize(p)) with alpha<->beta, eps1<->eps2.
        let mirror = Subst::new()
            .set(Var::Alpha, ParamPoly::var(Var::Beta))
            .set(Var::Beta, ParamPoly::var(Var::Alpha))
            .set(Var::Eps1, ParamPoly::var(Var::Eps2))
            .set(Var::Eps2, ParamPoly::var(Var::Eps1));
        let p = xy_from_text("(q^2 + 1)*X0*X3*Y2 - 5*Y0*Y1 + q*X1^2").unwrap();
        assert_eq!(
            p.swap_xy().unwrap().specialize(),
            p.specialize().substitute(&mirror)
        );
    }

    #[test]
    fn text_round_trip() {
        let samples = [
            "X0*X1 + (q^2 + 1)*X0*Y0 + Y0*Y1",
            "q*X1*Y1",
            "Ym1",
            "0",
            "(q^2 + q + 1)*X0*Y0",
            "3*q^2*X0 - Y2",
        ];
        for s in samples {
            let p = xy_from_text(s).unwrap();
            assert_eq!(xy_to_text(&p), *s, "round trip of {s}");
        }
    }

    #[test]
    fn parse_rejects_bad_names() {
        assert!(xy_from_text("Z0").is_err());
        assert!(xy_from_text("Ym2").is_err());
        assert!(xy_from_text("X0^-1").is_err());
        let err = xy_from_text("X0 + (a)*Y0").unwrap_err();
        assert!(err.msg.contains("q only"));
    }
}
