//! Uniform result records for the counting checks.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

/// An exact count or prediction: an integer or a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountValue(BigRational);

impl CountValue {
    pub fn from_u128(v: u128) -> Self {
        CountValue(BigRational::from(BigInt::from(v)))
    }

    pub fn from_rational(v: BigRational) -> Self {
        CountValue(v)
    }

    pub fn rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    /// JSON value: a number when it is an integer that fits `i64`, otherwise
    /// a string like `"22/7"`.
    pub fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            if let Ok(v) = i64::try_from(self.0.numer()) {
                return serde_json::Value::from(v);
            }
        }
        serde_json::Value::from(self.to_string())
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<u128> for CountValue {
    fn from(v: u128) -> Self {
        Self::from_u128(v)
    }
}

impl From<u64> for CountValue {
    fn from(v: u64) -> Self {
        Self::from_u128(v as u128)
    }
}

/// One executed check: a left and right quantity that must agree exactly.
#[derive(Debug, Clone)]
pub struct CountReport {
    pub check: String,
    pub params: serde_json::Value,
    pub lhs: CountValue,
    pub rhs: CountValue,
    pub pass: bool,
    pub seed: Option<u64>,
}

impl CountReport {
    pub fn new(
        check: impl Into<String>,
        params: serde_json::Value,
        lhs: CountValue,
        rhs: CountValue,
    ) -> Self {
        let pass = lhs == rhs;
        CountReport {
            check: check.into(),
            params,
            lhs,
            rhs,
            pass,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Overrides the derived pass flag for checks whose success criterion is
    /// more than `lhs == rhs` (e.g. sweeps aggregated into one report).
    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = json!({
            "check": self.check,
            "params": self.params,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "pass": self.pass,
        });
        if let Some(seed) = self.seed {
            obj["seed"] = serde_json::Value::from(seed);
        }
        obj
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs = {}, rhs = {} -> {}",
            self.check,
            self.lhs,
            self.rhs,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Guards predictions that must come out integral and nonnegative.
pub fn expect_nonnegative(v: &CountValue) -> bool {
    !v.rational().is_negative()
}
