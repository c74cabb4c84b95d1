//! Positive braid words over a Coxeter system.
//!
//! A word is a bare sequence of 1-based generator indices; no normal form is
//! computed. Word equality is literal, and semantic equality is delegated to
//! Hecke images or point counts downstream.

use std::fmt;

use crate::coxeter::{CoxElement, CoxeterError, CoxeterSystem};

/// A positive braid word. `|beta|` is the letter count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    system: CoxeterSystem,
    letters: Vec<usize>,
}

impl BraidWord {
    /// The empty (identity) braid.
    pub fn identity(system: CoxeterSystem) -> Self {
        BraidWord {
            system,
            letters: Vec::new(),
        }
    }

    /// Builds a word from 1-based generator indices.
    ///
    /// Panics when a letter is out of range; there are no negative letters in
    /// the positive monoid.
    pub fn new(system: CoxeterSystem, letters: Vec<usize>) -> Self {
        for &s in &letters {
            assert!(
                system.is_generator(s),
                "letter {s} out of range for {system:?}"
            );
        }
        BraidWord { system, letters }
    }

    /// The canonical positive lift of a group element: its reduced word.
    pub fn of_element(w: &CoxElement) -> Self {
        BraidWord {
            system: w.system(),
            letters: w.reduced_word(),
        }
    }

    /// The full twist `pi = sigma_{w0}^2`.
    pub fn full_twist(system: CoxeterSystem) -> Self {
        let half = Self::of_element(&system.w0());
        half.concat(&half).expect("same system")
    }

    pub fn system(&self) -> CoxeterSystem {
        self.system
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// The writhe `|beta|`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Monoid product: `self` then `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, CoxeterError> {
        if self.system != other.system {
            return Err(CoxeterError::SystemMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            system: self.system,
            letters,
        })
    }

    /// `self` followed by the full twist.
    pub fn append_full_twist(&self) -> BraidWord {
        self.concat(&BraidWord::full_twist(self.system))
            .expect("same system")
    }

    /// The image of the word in the Coxeter group.
    pub fn coxeter_image(&self) -> CoxElement {
        let mut w = self.system.identity();
        for &s in &self.letters {
            w = w.mul_gen(s);
        }
        w
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All positive words over `system` with length at most `max_len`, in
/// length-then-lexicographic order. Intended for exhaustive sweeps.
pub fn words_up_to(system: CoxeterSystem, max_len: usize) -> Vec<BraidWord> {
    let rank = system.rank();
    let mut out = vec![BraidWord::identity(system)];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * rank);
        for word in &layer {
            for s in 1..=rank {
                let mut w = word.clone();
                w.push(s);
                out.push(BraidWord {
                    system,
                    letters: w.clone(),
                });
                next.push(w);
            }
        }
        layer = next;
    }
    out
}
