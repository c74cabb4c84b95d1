//! The Iwahori–Hecke algebra of a finite Coxeter group over `Z[v^{±1}]`.
//!
//! Elements are sparse expansions in the standard basis `{sigma_w}`. The
//! quadratic relation is `sigma_s^2 = 1 + (v - v^{-1}) sigma_s`, equivalently
//! `(sigma_s - v)(sigma_s + v^{-1}) = 0`, so
//! `sigma_s^{-1} = sigma_s - (v - v^{-1})`.
//!
//! The functional `tau_plus` reads the identity coefficient in the standard
//! basis. The functional `tau_minus` reads it in the inverse basis
//! `{sigma_w^{-1}}`; it is computed here through the bar involution: the ring
//! involution `psi` with `psi(v) = v^{-1}` and `psi(sigma_s) = sigma_s^{-1}`
//! satisfies `psi(sigma_w^{-1}) = sigma_{w^{-1}}`, so the identity coefficient
//! of `psi(beta)` in the standard basis is the bar of the identity coefficient
//! of `beta` in the inverse basis. An independent triangular change-of-basis
//! oracle guards this shortcut for small groups.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::coxeter::{CoxElement, CoxeterSystem};
use crate::ring::LaurentPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("group order {order} exceeds the oracle bound {bound}")]
    SizeBound { order: u128, bound: u128 },
}

/// Largest group order the basis-conversion oracle will handle.
pub const ORACLE_BOUND: u128 = 24;

/// A sparse element of the Hecke algebra in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    system: CoxeterSystem,
    coeffs: BTreeMap<CoxElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(system: CoxeterSystem) -> Self {
        HeckeElement {
            system,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit `sigma_e`.
    pub fn one(system: CoxeterSystem) -> Self {
        Self::basis(&system.identity())
    }

    /// The basis element `sigma_w`.
    pub fn basis(w: &CoxElement) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w.clone(), LaurentPoly::one());
        HeckeElement {
            system: w.system(),
            coeffs,
        }
    }

    pub fn system(&self) -> CoxeterSystem {
        self.system
    }

    /// The coefficient of `sigma_w` (zero polynomial when absent).
    pub fn coeff(&self, w: &CoxElement) -> LaurentPoly {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&CoxElement, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        debug_assert_eq!(self.system, other.system);
        let mut coeffs = self.coeffs.clone();
        for (w, c) in &other.coeffs {
            let merged = match coeffs.get(w) {
                Some(existing) => existing.add(c),
                None => c.clone(),
            };
            if merged.is_zero() {
                coeffs.remove(w);
            } else {
                coeffs.insert(w.clone(), merged);
            }
        }
        HeckeElement {
            system: self.system,
            coeffs,
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        if c.is_zero() {
            return HeckeElement::zero(self.system);
        }
        HeckeElement {
            system: self.system,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Right multiplication by the generator `sigma_s`.
    ///
    /// Each term `c sigma_w` contributes `c sigma_{ws}` when the length goes
    /// up, and `c sigma_{ws} + c (v - v^{-1}) sigma_w` when it goes down.
    pub fn mul_gen(&self, s: usize) -> HeckeElement {
        let delta = LaurentPoly::delta();
        let mut out: BTreeMap<CoxElement, LaurentPoly> = BTreeMap::new();
        for (w, c) in &self.coeffs {
            let ws = w.mul_gen(s);
            let lengthens = ws.length() > w.length();
            add_term(&mut out, ws, c.clone());
            if !lengthens {
                add_term(&mut out, w.clone(), c.mul(&delta));
            }
        }
        HeckeElement {
            system: self.system,
            coeffs: out,
        }
    }

    /// Right multiplication by `sigma_s^{-1} = sigma_s - (v - v^{-1})`.
    pub fn mul_gen_inv(&self, s: usize) -> HeckeElement {
        let delta = LaurentPoly::delta();
        self.mul_gen(s).add(&self.scale(&delta.neg()))
    }

    /// `tau_plus`: the coefficient of `sigma_e` in the standard basis.
    pub fn tau_plus(&self) -> LaurentPoly {
        self.coeff(&self.system.identity())
    }

    /// Applies bar to every coefficient. Together with `mul_gen_inv` folding
    /// this realizes the involution `psi` described in the module docs.
    pub fn bar_coeffs(&self) -> HeckeElement {
        HeckeElement {
            system: self.system,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, c)| (w.clone(), c.bar()))
                .collect(),
        }
    }

    /// The coefficient of `sigma_e` when `self` is expanded in the inverse
    /// basis `{sigma_w^{-1}}`, computed by an explicit triangular change of
    /// basis. Only for group order at most [`ORACLE_BOUND`].
    pub fn tau_minus_oracle(&self) -> Result<LaurentPoly, HeckeError> {
        let order = self.system.order();
        if order > ORACLE_BOUND {
            return Err(HeckeError::SizeBound {
                order,
                bound: ORACLE_BOUND,
            });
        }
        let table = inverse_basis_table(self.system);
        // Solve h = sum_w d_w sigma_w^{-1} for d, peeling from long elements:
        // the expansion of sigma_w^{-1} has leading standard term sigma_w.
        let mut residual = self.clone();
        let mut order_desc: Vec<CoxElement> = table.keys().cloned().collect();
        order_desc.sort_by_key(|w| std::cmp::Reverse(w.length()));
        let mut d_e = LaurentPoly::zero();
        for w in order_desc {
            let c = residual.coeff(&w);
            if c.is_zero() {
                continue;
            }
            residual = residual.add(&table[&w].scale(&c.neg()));
            if w.is_identity() {
                d_e = c;
            }
        }
        debug_assert_eq!(residual, HeckeElement::zero(self.system));
        Ok(d_e)
    }

    /// JSON rendering: `[[reduced_word_of_w, laurent_pairs], ...]` sorted by
    /// reduced word.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows: Vec<(Vec<usize>, serde_json::Value)> = self
            .coeffs
            .iter()
            .map(|(w, c)| (w.reduced_word(), c.to_json()))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        serde_json::Value::Array(rows.into_iter().map(|(word, c)| json!([word, c])).collect())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(w, c)| format!("({}) s[{}]", c, w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn add_term(map: &mut BTreeMap<CoxElement, LaurentPoly>, w: CoxElement, c: LaurentPoly) {
    let merged = match map.get(&w) {
        Some(existing) => existing.add(&c),
        None => c,
    };
    if merged.is_zero() {
        map.remove(&w);
    } else {
        map.insert(w, merged);
    }
}

/// Evaluates a positive braid word in the Hecke algebra: a left-to-right fold
/// of generator multiplications starting from `sigma_e`.
pub fn eval_braid(beta: &BraidWord) -> HeckeElement {
    let mut h = HeckeElement::one(beta.system());
    for &s in beta.letters() {
        h = h.mul_gen(s);
    }
    h
}

/// The image of a positive braid under the involution `psi`: a fold of
/// `sigma_s^{-1}` multiplications.
pub fn eval_braid_inverse_letters(beta: &BraidWord) -> HeckeElement {
    let mut h = HeckeElement::one(beta.system());
    for &s in beta.letters() {
        h = h.mul_gen_inv(s);
    }
    h
}

/// `tau_minus` of a positive braid: the identity coefficient of its image in
/// the inverse basis, via the bar-involution route.
pub fn tau_minus_braid(beta: &BraidWord) -> LaurentPoly {
    eval_braid_inverse_letters(beta).tau_plus().bar()
}

/// Expansions of every `sigma_w^{-1}` in the standard basis, built by the
/// recursion `sigma_w^{-1} = sigma_u^{-1} sigma_s^{-1}` along reduced words.
fn inverse_basis_table(system: CoxeterSystem) -> BTreeMap<CoxElement, HeckeElement> {
    let mut by_length: Vec<CoxElement> = system.enumerate().expect("oracle bound already checked");
    by_length.sort_by_key(|w| w.length());
    let mut table: BTreeMap<CoxElement, HeckeElement> = BTreeMap::new();
    for w in by_length {
        if w.is_identity() {
            table.insert(w.clone(), HeckeElement::one(system));
            continue;
        }
        let word = w.reduced_word();
        let s = *word.last().unwrap();
        let u = w.mul_gen(s);
        debug_assert_eq!(u.length() + 1, w.length());
        let expanded = table[&u].mul_gen_inv(s);
        table.insert(w, expanded);
    }
    table
}

/// Result of one twist-identity check.
#[derive(Debug, Clone)]
pub struct TwistReport {
    pub beta: BraidWord,
    pub tau_minus: LaurentPoly,
    pub tau_plus_btw: LaurentPoly,
    pub pass: bool,
}

impl TwistReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "check": "twist",
            "beta": self.beta.letters(),
            "tau_minus": self.tau_minus.to_json(),
            "tau_plus_btw": self.tau_plus_btw.to_json(),
            "pass": self.pass,
        })
    }
}

/// Checks `tau_minus(beta) = tau_plus(beta pi)` for one word.
pub fn twist_check(beta: &BraidWord) -> TwistReport {
    let tau_minus = tau_minus_braid(beta);
    let tau_plus_btw = eval_braid(&beta.append_full_twist()).tau_plus();
    let pass = tau_minus == tau_plus_btw;
    TwistReport {
        beta: beta.clone(),
        tau_minus,
        tau_plus_btw,
        pass,
    }
}
