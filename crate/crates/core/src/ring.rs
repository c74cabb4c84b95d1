//! The ring `Z[v^{±1}]` with `v = q^{1/2}`.
//!
//! Exponents are stored in half-units of `q`, i.e. in units of `v`, so every
//! quantity of the form `q^{k/2}` is an honest monomial. Coefficients are
//! arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    /// Evaluation at integer `q` hit a term `v^e` with `e` odd.
    /// This signals a parity bug in the caller, not a user error.
    #[error("odd exponent {0} in evaluation at integer q")]
    OddExponent(i64),
}

/// A Laurent polynomial in `v = q^{1/2}` with integer coefficients.
///
/// The term map never stores a zero coefficient, so equality of values is
/// componentwise equality of the maps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * v^e`.
    pub fn monomial(exponent: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    /// `v^e`.
    pub fn v_pow(exponent: i64) -> Self {
        Self::monomial(exponent, 1)
    }

    /// The abbreviation `delta = v - v^{-1}` (that is, `q^{1/2} - q^{-1/2}`).
    pub fn delta() -> Self {
        Self::monomial(1, 1).add(&Self::monomial(-1, -1))
    }

    /// Builds from `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in pairs {
            let c: BigInt = c.into();
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `v^e` (zero when absent).
    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Term pairs in increasing exponent order.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn mul_scalar(&self, c: impl Into<BigInt>) -> LaurentPoly {
        let c: BigInt = c.into();
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * &c)).collect(),
        }
    }

    /// Multiplication by `v^e`.
    pub fn shift(&self, e: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The involution `v -> v^{-1}`: every exponent is negated.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluates at `v^2 = q` for a positive integer `q`, returning an exact
    /// rational. Every stored exponent must be even.
    pub fn eval_q(&self, q: u64) -> Result<BigRational, RingError> {
        assert!(q >= 1, "q must be a positive integer");
        let q = BigInt::from(q);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(RingError::OddExponent(*e));
            }
            let k = (e / 2).unsigned_abs() as u32;
            let qk = q.pow(k);
            let term = if *e >= 0 {
                BigRational::from(c * qk)
            } else {
                BigRational::new(c.clone(), qk)
            };
            acc += term;
        }
        Ok(acc)
    }

    /// Exact division: `Some(self / d)` when `self = q * d` for some `q` in
    /// the ring, `None` otherwise.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (d_lead_e, d_lead_c) = d.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let d_min_e = *d.terms.iter().next().unwrap().0;
        // Any exact quotient has exponents within [min(self)-min(d), max(self)-max(d)].
        let qe_floor = *self.terms.iter().next().unwrap().0 - d_min_e;
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();
        while let Some((r_lead_e, r_lead_c)) = rem.iter().next_back().map(|(e, c)| (*e, c.clone()))
        {
            let qe = r_lead_e - d_lead_e;
            if qe < qe_floor || (&r_lead_c % &d_lead_c) != BigInt::zero() {
                return None;
            }
            let qc = &r_lead_c / &d_lead_c;
            quot.insert(qe, qc.clone());
            for (e, c) in &d.terms {
                let entry = rem.entry(e + qe).or_insert_with(BigInt::zero);
                *entry -= &qc * c;
            }
            rem.retain(|_, c| !c.is_zero());
        }
        Some(LaurentPoly { terms: quot })
    }

    /// Canonical textual form: sorted `[[exponent, coefficient], ...]`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("[{},{}]", e, c))
            .collect();
        format!("[{}]", body.join(","))
    }

    /// Serializes to the canonical JSON value `[[exponent, coefficient], ...]`.
    ///
    /// Coefficients that fit in an `i64` become JSON numbers; larger ones
    /// fall back to decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = match i64::try_from(c) {
                    Ok(v) => serde_json::Value::from(v),
                    Err(_) => serde_json::Value::from(c.to_string()),
                };
                serde_json::Value::Array(vec![serde_json::Value::from(*e), coeff])
            })
            .collect();
        serde_json::Value::Array(arr)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest exponent first reads like a polynomial.
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}v", mag)?,
                (_, true) => write!(f, "v^{}", e)?,
                (_, false) => write!(f, "{}v^{}", mag, e)?,
            }
        }
        Ok(())
    }
}
