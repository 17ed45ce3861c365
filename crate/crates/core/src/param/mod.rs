//! Exact arithmetic in the coefficient ring Z[q, q^-1][alpha, beta, eps1, eps2, xi].
//!
//! [`ParamPoly`] is the universal value type: every displayed coefficient,
//! weight, minor and partition function in the crate lives here. Values are
//! immutable, every operation is a pure function, and equal polynomials have
//! equal canonical term maps, so parallel reductions are order-independent.
//!
//! Internally a polynomial is a sorted map from exponent vectors on the five
//! outer variables to dense Laurent polynomials in q; the term-level view
//! (one integer coefficient per full monomial) is what serialization and the
//! documented monomial order speak about.

pub(crate) mod text;

pub use text::{param_from_json, param_from_text, param_to_json, param_to_text};

use crate::error::EvalError;
use crate::qpoly::{rational_pow, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Number of outer variables (alpha, beta, eps1, eps2, xi); q is kept apart.
pub const NVARS: usize = 5;

/// The five outer variables, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Alpha = 0,
    Beta = 1,
    Eps1 = 2,
    Eps2 = 3,
    Xi = 4,
}

pub const ALL_VARS: [Var; NVARS] = [Var::Alpha, Var::Beta, Var::Eps1, Var::Eps2, Var::Xi];

impl Var {
    /// Canonical text spelling.
    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "a",
            Var::Beta => "b",
            Var::Eps1 => "e1",
            Var::Eps2 => "e2",
            Var::Xi => "xi",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "a" => Some(Var::Alpha),
            "b" => Some(Var::Beta),
            "e1" => Some(Var::Eps1),
            "e2" => Some(Var::Eps2),
            "xi" => Some(Var::Xi),
            _ => None,
        }
    }
}

/// Exponent vector over the outer variables, the key of the internal map.
pub type VarExps = [u32; NVARS];

/// One full monomial: a signed q exponent plus outer exponents.
///
/// Total order: graded lexicographic on the vector
/// `(e_q, e_alpha, e_beta, e_eps1, e_eps2, e_xi)` with the grade
/// `e_q + e_alpha + ... + e_xi` compared first and `e_q` compared by value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub e_q: i64,
    pub exps: VarExps,
}

impl Monomial {
    pub fn grade(&self) -> i64 {
        self.e_q + self.exps.iter().map(|&e| e as i64).sum::<i64>()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade()
            .cmp(&other.grade())
            .then(self.e_q.cmp(&other.e_q))
            .then(self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// One term of the semantic (monomial -> integer) view.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: BigInt,
}

/// Exact sparse polynomial in q (Laurent), alpha, beta, eps1, eps2, xi.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<VarExps, QPoly>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ParamPoly::from_int(BigInt::one())
    }

    pub fn from_int(c: BigInt) -> Self {
        ParamPoly::from_qpoly(QPoly::from_int(c))
    }

    pub fn from_i64(c: i64) -> Self {
        ParamPoly::from_int(BigInt::from(c))
    }

    /// Constant (in the outer variables) polynomial in q.
    pub fn from_qpoly(qp: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !qp.is_zero() {
            terms.insert([0; NVARS], qp);
        }
        ParamPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0; NVARS];
        exps[v as usize] = 1;
        ParamPoly::monomial(exps, QPoly::one())
    }

    pub fn q_power(k: i64) -> Self {
        ParamPoly::from_qpoly(QPoly::q_power(k))
    }

    /// The q-integer `[n]_q`.
    pub fn q_int(n: u32) -> Self {
        ParamPoly::from_qpoly(QPoly::q_int(n))
    }

    /// Gaussian binomial `[n choose k]_q`; zero outside `0 <= k <= n`.
    pub fn q_binomial(n: i64, k: i64) -> Self {
        ParamPoly::from_qpoly(QPoly::q_binomial(n, k))
    }

    pub fn monomial(exps: VarExps, qp: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !qp.is_zero() {
            terms.insert(exps, qp);
        }
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0; NVARS])
                .is_some_and(|qp| qp.is_one())
    }

    /// Number of stored (monomial, integer) terms.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(|qp| qp.term_count()).sum()
    }

    /// All terms in ascending canonical monomial order.
    pub fn terms_sorted(&self) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .terms
            .iter()
            .flat_map(|(exps, qp)| {
                let exps = *exps;
                qp.terms()
                    .map(move |(e_q, c)| Term {
                        monomial: Monomial { e_q, exps },
                        coeff: c.clone(),
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_by(|x, y| x.monomial.cmp(&y.monomial));
        out
    }

    /// The q-polynomial attached to an outer exponent vector.
    pub fn qpoly_of(&self, exps: &VarExps) -> QPoly {
        self.terms.get(exps).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &ParamPoly) {
        for (exps, qp) in &other.terms {
            match self.terms.get_mut(exps) {
                Some(cur) => {
                    cur.add_assign(qp);
                    if cur.is_zero() {
                        self.terms.remove(exps);
                    }
                }
                None => {
                    self.terms.insert(*exps, qp.clone());
                }
            }
        }
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(exps, qp)| (*exps, qp.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut terms: BTreeMap<VarExps, QPoly> = BTreeMap::new();
        for (e1, q1) in &self.terms {
            for (e2, q2) in &other.terms {
                let mut exps = [0u32; NVARS];
                for i in 0..NVARS {
                    exps[i] = e1[i] + e2[i];
                }
                let prod = q1.mul(q2);
                match terms.get_mut(&exps) {
                    Some(cur) => cur.add_assign(&prod),
                    None => {
                        terms.insert(exps, prod);
                    }
                }
            }
        }
        terms.retain(|_, qp| !qp.is_zero());
        ParamPoly { terms }
    }

    /// Scale by an integer.
    pub fn scale(&self, c: &BigInt) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(exps, qp)| (*exps, qp.mul_int(c)))
                .collect(),
        }
    }

    /// Multiply by a polynomial in q alone.
    pub fn mul_qpoly(&self, qp: &QPoly) -> ParamPoly {
        if qp.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(exps, c)| (*exps, c.mul(qp)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// True iff the polynomial lies in Z>=0[q, alpha, beta, eps1, eps2, xi]:
    /// every stored coefficient is positive and no negative q power occurs.
    /// The zero polynomial qualifies.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|qp| qp.is_nonneg())
    }

    /// Exact evaluation at a rational point. No floating point anywhere.
    pub fn eval_rational(&self, pt: &RationalPoint) -> Result<BigRational, EvalError> {
        let vals = pt.values();
        let mut acc = BigRational::zero();
        for (exps, qp) in &self.terms {
            let mut v = qp.eval(&pt.q)?;
            for i in 0..NVARS {
                if exps[i] > 0 {
                    v *= rational_pow(&vals[i], exps[i] as i64);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Apply a substitution. Unmapped variables stay fixed.
    pub fn substitute(&self, s: &Subst) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (exps, qp) in &self.terms {
            let base_q = if s.q_to_one {
                QPoly::from_int(qp.eval_q1())
            } else {
                qp.clone()
            };
            if base_q.is_zero() {
                continue;
            }
            let mut kept = [0u32; NVARS];
            let mut factor = ParamPoly::one();
            for i in 0..NVARS {
                match &s.repl[i] {
                    None => kept[i] = exps[i],
                    Some(p) => {
                        if exps[i] > 0 {
                            factor = factor.mul(&p.pow(exps[i]));
                            if factor.is_zero() {
                                break;
                            }
                        }
                    }
                }
            }
            if factor.is_zero() {
                continue;
            }
            let term = ParamPoly::monomial(kept, base_q).mul(&factor);
            acc.add_assign(&term);
        }
        acc
    }

    /// Leading term under the canonical monomial order.
    fn leading_term(&self) -> Option<Term> {
        self.terms
            .iter()
            .flat_map(|(exps, qp)| {
                let exps = *exps;
                qp.terms().map(move |(e_q, c)| Term {
                    monomial: Monomial { e_q, exps },
                    coeff: c.clone(),
                })
            })
            .max_by(|x, y| x.monomial.cmp(&y.monomial))
    }

    /// Exact division: returns `Some(h)` with `self = d * h` when the
    /// division leaves no remainder, `None` otherwise.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let d_lead = d.leading_term().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while !rem.is_zero() {
            let r_lead = rem.leading_term().expect("nonzero remainder");
            // Monomial divisibility.
            let e_q = r_lead.monomial.e_q - d_lead.monomial.e_q;
            let mut exps = [0u32; NVARS];
            for i in 0..NVARS {
                let (re, de) = (r_lead.monomial.exps[i], d_lead.monomial.exps[i]);
                if re < de {
                    return None;
                }
                exps[i] = re - de;
            }
            let (c, r) = num_integer::Integer::div_rem(&r_lead.coeff, &d_lead.coeff);
            if !r.is_zero() {
                return None;
            }
            let t = ParamPoly::monomial(exps, QPoly::monomial(c, e_q));
            rem = rem.sub(&t.mul(d));
            quot.add_assign(&t);
        }
        Some(quot)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&param_to_text(self))
    }
}

/// Substitution map for the outer variables, with an optional q -> 1 step.
#[derive(Clone, Default)]
pub struct Subst {
    repl: [Option<ParamPoly>; NVARS],
    q_to_one: bool,
}

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn set(mut self, v: Var, p: ParamPoly) -> Self {
        self.repl[v as usize] = Some(p);
        self
    }

    pub fn set_zero(self, v: Var) -> Self {
        self.set(v, ParamPoly::zero())
    }

    pub fn q_one(mut self) -> Self {
        self.q_to_one = true;
        self
    }

    /// eps1 = eps2 = alpha * beta, the specialization behind the PASEP family.
    pub fn prime() -> Self {
        let ab = ParamPoly::var(Var::Alpha).mul(&ParamPoly::var(Var::Beta));
        Subst::new().set(Var::Eps1, ab.clone()).set(Var::Eps2, ab)
    }

    /// alpha -> xi*alpha, eps1 -> xi*alpha*beta, eps2 -> alpha*beta.
    pub fn fugacity() -> Self {
        let a = ParamPoly::var(Var::Alpha);
        let b = ParamPoly::var(Var::Beta);
        let xi = ParamPoly::var(Var::Xi);
        let ab = a.mul(&b);
        Subst::new()
            .set(Var::Alpha, xi.mul(&a))
            .set(Var::Eps1, xi.mul(&ab))
            .set(Var::Eps2, ab)
    }
}

/// Exact rational values for (q, alpha, beta, eps1, eps2, xi).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoint {
    pub q: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
    pub eps1: BigRational,
    pub eps2: BigRational,
    pub xi: BigRational,
}

impl RationalPoint {
    pub fn values(&self) -> [BigRational; NVARS] {
        [
            self.alpha.clone(),
            self.beta.clone(),
            self.eps1.clone(),
            self.eps2.clone(),
            self.xi.clone(),
        ]
    }

    /// With eps1 = eps2 = alpha*beta substituted, as the classical bridge needs.
    pub fn with_prime_eps(&self) -> RationalPoint {
        let ab = &self.alpha * &self.beta;
        RationalPoint {
            eps1: ab.clone(),
            eps2: ab,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> ParamPoly {
        ParamPoly::var(Var::Alpha)
    }
    fn b() -> ParamPoly {
        ParamPoly::var(Var::Beta)
    }

    fn point(q: (i64, i64), al: (i64, i64), be: (i64, i64)) -> RationalPoint {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        RationalPoint {
            q: r(q),
            alpha: r(al),
            beta: r(be),
            eps1: r((1, 5)),
            eps2: r((2, 7)),
            xi: r((3, 4)),
        }
    }

    #[test]
    fn arith_cancellation() {
        // (alpha + beta) + (-beta) = alpha
        assert_eq!(a().add(&b()).add(&b().neg()), a());
        // q^-1 (beta - eps2) * q = beta - eps2
        let y = b().sub(&ParamPoly::var(Var::Eps2)).mul_qpoly(&QPoly::q_power(-1));
        assert_eq!(
            y.mul(&ParamPoly::q_power(1)),
            b().sub(&ParamPoly::var(Var::Eps2))
        );
        // (alpha + beta)(alpha - beta) = alpha^2 - beta^2
        assert_eq!(
            a().add(&b()).mul(&a().sub(&b())),
            a().pow(2).sub(&b().pow(2))
        );
    }

    #[test]
    fn nonneg_examples() {
        assert!(a().add(&b()).is_nonneg());
        assert!(!a().sub(&b()).is_nonneg());
        let y = b().sub(&ParamPoly::var(Var::Eps2)).mul_qpoly(&QPoly::q_power(-1));
        assert!(!y.is_nonneg());
        assert!(ParamPoly::zero().is_nonneg());
    }

    #[test]
    fn eval_examples() {
        let pt = point((2, 1), (1, 2), (1, 3));
        let v = a().add(&b()).eval_rational(&pt).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(5), BigInt::from(6)));
        let v = ParamPoly::q_int(3).eval_rational(&pt).unwrap();
        assert_eq!(v, BigRational::from_integer(BigInt::from(7)));
        let pt0 = point((0, 1), (1, 2), (1, 3));
        assert_eq!(
            ParamPoly::q_power(-1).eval_rational(&pt0),
            Err(EvalError::ZeroToNegativePower)
        );
    }

    #[test]
    fn eval_is_ring_homomorphism() {
        let pt = point((3, 5), (-2, 3), (7, 2));
        let p = a().mul(&b()).add(&ParamPoly::q_int(4)).sub(&b().pow(2));
        let r = ParamPoly::q_power(-2).mul(&a()).add(&ParamPoly::from_i64(3));
        let lhs = p.mul(&r).eval_rational(&pt).unwrap();
        let rhs = p.eval_rational(&pt).unwrap() * r.eval_rational(&pt).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = p.add(&r).eval_rational(&pt).unwrap();
        let rhs = p.eval_rational(&pt).unwrap() + r.eval_rational(&pt).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_prime() {
        // eps1 + eps2 under the prime substitution becomes 2*alpha*beta.
        let s = Subst::prime();
        let p = ParamPoly::var(Var::Eps1).add(&ParamPoly::var(Var::Eps2));
        assert_eq!(p.substitute(&s), a().mul(&b()).scale(&BigInt::from(2)));
    }

    #[test]
    fn substitution_q_one() {
        let p = ParamPoly::q_int(4).mul(&a()); // (1+q+q^2+q^3) alpha
        let s = Subst::new().q_one();
        assert_eq!(p.substitute(&s), a().scale(&BigInt::from(4)));
    }

    #[test]
    fn div_exact_roundtrip() {
        let p = a().add(&b()).mul(&a().sub(&ParamPoly::q_power(2)));
        let q = p.div_exact(&a().add(&b())).unwrap();
        assert_eq!(q, a().sub(&ParamPoly::q_power(2)));
        assert_eq!(p.div_exact(&a().add(&ParamPoly::one())), None);
    }

    #[test]
    fn q_binomial_five_two() {
        // Frozen from the Pascal-recurrence oracle in qpoly tests.
        let expect = param_from_text("q^6 + q^5 + 2*q^4 + 2*q^3 + 2*q^2 + q + 1").unwrap();
        assert_eq!(ParamPoly::q_binomial(5, 2), expect);
    }

    #[test]
    fn q_binomial_product_identity() {
        // [n+a+b+1]_q [n+a+b choose b]_q = [n+a+1]_q [n+a+b+1 choose b]_q
        for n in 0..=4i64 {
            for aa in 0..=4i64 {
                for bb in 0..=(12 - n - aa).max(0) {
                    if n + aa > 12 - bb {
                        continue;
                    }
                    let lhs = ParamPoly::q_int((n + aa + bb + 1) as u32)
                        .mul(&ParamPoly::q_binomial(n + aa + bb, bb));
                    let rhs = ParamPoly::q_int((n + aa + 1) as u32)
                        .mul(&ParamPoly::q_binomial(n + aa + bb + 1, bb));
                    assert_eq!(lhs, rhs, "n={n} a={aa} b={bb}");
                }
            }
        }
    }
}
