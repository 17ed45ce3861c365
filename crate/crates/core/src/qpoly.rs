//! Dense Laurent polynomials in q over arbitrary-precision integers.
//!
//! These are the coefficient objects of every ring in the crate: a
//! [`crate::param::ParamPoly`] maps each monomial in the five outer variables
//! to a `QPoly`, and an XY polynomial maps each X/Y monomial to a `QPoly`.
//! Keeping the q direction dense makes the long product/sum sweeps cheap.

use crate::error::EvalError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in q: `coeffs[i]` is the coefficient of `q^(lo + i)`.
///
/// Canonical form: `coeffs` is empty (the zero polynomial) or starts and ends
/// with a nonzero entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        QPoly::from_int(BigInt::one())
    }

    pub fn from_int(c: BigInt) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly {
                lo: 0,
                coeffs: vec![c],
            }
        }
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly {
                lo: k,
                coeffs: vec![c],
            }
        }
    }

    pub fn q_power(k: i64) -> Self {
        QPoly::monomial(BigInt::one(), k)
    }

    /// The q-integer `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
    pub fn q_int(n: u32) -> Self {
        QPoly {
            lo: 0,
            coeffs: vec![BigInt::one(); n as usize],
        }
    }

    /// Gaussian binomial coefficient `[n choose k]_q`.
    ///
    /// Returns zero when `k < 0`, `n < 0`, or `k > n`. Built by the Pascal
    /// step `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
    pub fn q_binomial(n: i64, k: i64) -> Self {
        if n < 0 || k < 0 || k > n {
            return QPoly::zero();
        }
        let (n, k) = (n as usize, (k as usize).min(n as usize - k as usize + k as usize));
        let k = k.min(n - k);
        // row[j] = [m choose j]_q as dense coefficient vectors in q
        let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for m in 1..=n {
            let top = k.min(m);
            let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
            next.push(vec![BigInt::one()]);
            for j in 1..=top {
                let mut acc = if j <= m - 1 {
                    // q^j * [m-1 choose j]
                    let prev = &row[j];
                    let mut v = vec![BigInt::zero(); j];
                    v.extend(prev.iter().cloned());
                    v
                } else {
                    Vec::new()
                };
                let lower = &row[j - 1];
                if acc.len() < lower.len() {
                    acc.resize(lower.len(), BigInt::zero());
                }
                for (i, c) in lower.iter().enumerate() {
                    acc[i] += c;
                }
                next.push(acc);
            }
            row = next;
        }
        let mut out = QPoly {
            lo: 0,
            coeffs: row.swap_remove(k),
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.lo += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent of q present; 0 for the zero polynomial.
    pub fn min_exp(&self) -> i64 {
        self.lo
    }

    /// Highest exponent of q present; 0 for the zero polynomial.
    pub fn max_exp(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.lo + self.coeffs.len() as i64 - 1
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending in exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.lo + i as i64, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient of `q^k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        let idx = k - self.lo;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// True when every present coefficient is positive and no negative power
    /// of q occurs. The zero polynomial qualifies.
    pub fn is_nonneg(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.lo >= 0 && self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.max_exp().max(other.max_exp());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - lo) as usize] += c;
        }
        for (e, c) in other.terms() {
            coeffs[(e - lo) as usize] += c;
        }
        let mut out = QPoly { lo, coeffs };
        out.normalize();
        out
    }

    pub fn add_assign(&mut self, other: &QPoly) {
        *self = self.add(other);
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut out = QPoly {
            lo: self.lo + other.lo,
            coeffs,
        };
        out.normalize();
        out
    }

    pub fn mul_int(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> QPoly {
        if self.is_zero() {
            QPoly::zero()
        } else {
            QPoly {
                lo: self.lo + k,
                coeffs: self.coeffs.clone(),
            }
        }
    }

    /// Exact evaluation at a rational q.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational, EvalError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if q.is_zero() {
            if self.lo < 0 {
                return Err(EvalError::ZeroToNegativePower);
            }
            return Ok(BigRational::from_integer(self.coeff(0)));
        }
        // Horner on the dense part, then multiply by q^lo.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        let lo_pow = rational_pow(q, self.lo);
        Ok(acc * lo_pow)
    }

    /// Sum of all coefficients, i.e. the value at q = 1.
    pub fn eval_q1(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// `q^k` for a nonzero rational q and any integer k.
pub fn rational_pow(q: &BigRational, k: i64) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let mut base = if k < 0 { q.recip() } else { q.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qb(n: i64, k: i64) -> QPoly {
        QPoly::q_binomial(n, k)
    }

    #[test]
    fn q_int_basics() {
        assert!(QPoly::q_int(0).is_zero());
        assert!(QPoly::q_int(1).is_one());
        assert_eq!(QPoly::q_int(3).terms().count(), 3);
    }

    #[test]
    fn q_binomial_edges() {
        assert!(qb(3, -1).is_zero());
        assert!(qb(3, 4).is_zero());
        assert!(qb(-1, 0).is_zero());
        assert!(qb(7, 0).is_one());
        assert_eq!(qb(3, 1), QPoly::q_int(3));
    }

    #[test]
    fn q_binomial_pascal_oracle() {
        // Independent route: [n+1, k] = [n, k-1] + q^k [n, k].
        for n in 0..=12i64 {
            for k in 0..=n {
                let lhs = qb(n + 1, k);
                let rhs = qb(n, k - 1).add(&qb(n, k).shift(k));
                assert_eq!(lhs, rhs, "pascal at n={n} k={k}");
            }
        }
    }

    #[test]
    fn laurent_shift_and_eval() {
        let p = QPoly::q_int(3).shift(-1); // q^-1 + 1 + q
        assert_eq!(p.min_exp(), -1);
        let q = BigRational::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(
            p.eval(&q).unwrap(),
            BigRational::new(BigInt::from(7), BigInt::from(2))
        );
        assert_eq!(
            p.eval(&BigRational::zero()),
            Err(EvalError::ZeroToNegativePower)
        );
    }

    #[test]
    fn nonneg_detects_negative_powers() {
        assert!(QPoly::q_int(4).is_nonneg());
        assert!(!QPoly::q_power(-1).is_nonneg());
        assert!(!QPoly::from_int(BigInt::from(-3)).is_nonneg());
        assert!(QPoly::zero().is_nonneg());
    }
}
