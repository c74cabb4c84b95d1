//! Extreme a-degree coefficients of reduced HOMFLYPT series of braid
//! closures in type A.
//!
//! For a braid on `n` strands with writhe `|beta|`, the coefficient of
//! `a^{|beta| ± (n-1)}` in the reduced series of the closure equals
//! `(v^{-1} - v)^{-(n-1)} (-1)^{|beta|} tau^{±}(beta)`. The coefficient is
//! kept as an exact fraction with denominator `(v^{-1} - v)^{n-1}`; division
//! is never forced, and equality is decided by cross-multiplication.

use serde_json::json;

use crate::braid::BraidWord;
use crate::coxeter::CoxFamily;
use crate::hecke::{eval_braid, tau_minus_braid};
use crate::ring::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn offset(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One extreme a-degree coefficient, as an exact fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeCoeff {
    pub numerator: LaurentPoly,
    /// Always `(v^{-1} - v)^{n-1}`.
    pub denominator: LaurentPoly,
    pub a_degree: i64,
    pub strands: usize,
}

impl ExtremeCoeff {
    /// The coefficient as a Laurent polynomial when the division is exact.
    pub fn exact_value(&self) -> Option<LaurentPoly> {
        self.numerator.div_exact(&self.denominator)
    }
}

/// The coefficient of `a^{|beta| ± (n-1)}` for a braid over `A(n-1)`.
pub fn extreme_coeff(beta: &BraidWord, sign: Sign) -> ExtremeCoeff {
    assert!(
        matches!(beta.system().family(), CoxFamily::A),
        "extreme coefficients are defined for type A braids"
    );
    let strands = beta.system().rank() + 1;
    let writhe = beta.len() as i64;
    let tau = match sign {
        Sign::Plus => eval_braid(beta).tau_plus(),
        Sign::Minus => tau_minus_braid(beta),
    };
    let mut numerator = tau;
    if writhe % 2 != 0 {
        numerator = numerator.neg();
    }
    // v^{-1} - v
    let base = LaurentPoly::v_pow(-1).sub(&LaurentPoly::v_pow(1));
    let denominator = base.pow(strands as u32 - 1);
    ExtremeCoeff {
        numerator,
        denominator,
        a_degree: writhe + sign.offset() * (strands as i64 - 1),
        strands,
    }
}

/// Equality of exact fractions by cross-multiplication.
pub fn coeff_equal(x: &ExtremeCoeff, y: &ExtremeCoeff) -> bool {
    x.numerator.mul(&y.denominator) == y.numerator.mul(&x.denominator)
}

/// Result of one check of the twist identity for extreme coefficients:
/// the lowest a-coefficient of the closure of `beta` against the highest
/// a-coefficient of the closure of `beta pi`.
#[derive(Debug, Clone)]
pub struct KalmanReport {
    pub beta: BraidWord,
    pub lhs: ExtremeCoeff,
    pub rhs: ExtremeCoeff,
    /// `rhs.a_degree - 2 l(w0)`, which realigns the twisted degree with the
    /// writhe of the original braid.
    pub rhs_degree_aligned: i64,
    pub pass: bool,
}

impl KalmanReport {
    pub fn to_json(&self) -> serde_json::Value {
        let value = self
            .lhs
            .exact_value()
            .map(|v| v.to_json())
            .unwrap_or(serde_json::Value::Null);
        json!({
            "check": "kalman",
            "beta": self.beta.letters(),
            "strands": self.lhs.strands,
            "lhs_a_degree": self.lhs.a_degree,
            "rhs_a_degree": self.rhs.a_degree,
            "rhs_a_degree_aligned": self.rhs_degree_aligned,
            "lhs_numerator": self.lhs.numerator.to_json(),
            "rhs_numerator": self.rhs.numerator.to_json(),
            "value": value,
            "pass": self.pass,
        })
    }
}

/// Checks the extreme-coefficient twist identity for one type A braid.
pub fn kalman_check(beta: &BraidWord) -> KalmanReport {
    let lhs = extreme_coeff(beta, Sign::Minus);
    let btw = beta.append_full_twist();
    let rhs = extreme_coeff(&btw, Sign::Plus);
    let w0_len = beta.system().w0().length() as i64;
    let pass = coeff_equal(&lhs, &rhs);
    KalmanReport {
        beta: beta.clone(),
        rhs_degree_aligned: rhs.a_degree - 2 * w0_len,
        lhs,
        rhs,
        pass,
    }
}
