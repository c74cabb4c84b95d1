//! Finite Coxeter groups of types A, B and I2 with canonical element
//! encodings.
//!
//! Elements are stored as permutations (type A), signed permutations
//! (type B) or dihedral rotation/reflection pairs (I2), never as words
//! modulo relations, so equality and multiplication are direct.
//!
//! Generator indices are 1-based everywhere: `1..=rank`.
//!
//! Conventions:
//! - A(n): generator `i` is the transposition of `i` and `i+1` acting on
//!   `{1, ..., n+1}`.
//! - B(n): generator `1` negates the first window entry; generator `i >= 2`
//!   swaps window entries `i-1` and `i`. The edge `m(1,2) = 4`.
//! - I2(m): generators `1 = s` and `2 = t` are reflections with
//!   `ts = r` the basic rotation; elements are `r^k` or `r^k s`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("group order {order} exceeds enumeration bound {bound}")]
    SizeBound { order: u128, bound: u128 },
}

/// Default cap for exhaustive enumeration: 10!.
pub const ENUMERATION_BOUND: u128 = 3_628_800;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxFamily {
    A,
    B,
    /// Dihedral of order `2m`; the stored value is `m`.
    I2(u32),
}

/// A finite Coxeter system: a family plus a rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterSystem {
    family: CoxFamily,
    rank: usize,
}

impl CoxeterSystem {
    pub fn a(rank: usize) -> Self {
        assert!(rank >= 1, "A(n) needs rank >= 1");
        CoxeterSystem {
            family: CoxFamily::A,
            rank,
        }
    }

    pub fn b(rank: usize) -> Self {
        assert!(rank >= 2, "B(n) needs rank >= 2");
        CoxeterSystem {
            family: CoxFamily::B,
            rank,
        }
    }

    pub fn i2(m: u32) -> Self {
        assert!(m >= 2, "I2(m) needs m >= 2");
        CoxeterSystem {
            family: CoxFamily::I2(m),
            rank: 2,
        }
    }

    pub fn family(&self) -> CoxFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The Coxeter matrix entry `m(s, t)` for 1-based generator indices.
    pub fn coxeter_matrix(&self, s: usize, t: usize) -> u32 {
        assert!(
            self.is_generator(s) && self.is_generator(t),
            "generator index out of range"
        );
        if s == t {
            return 1;
        }
        let (lo, hi) = if s < t { (s, t) } else { (t, s) };
        match self.family {
            CoxFamily::A => {
                if hi - lo == 1 {
                    3
                } else {
                    2
                }
            }
            CoxFamily::B => match (lo, hi) {
                (1, 2) => 4,
                _ if hi - lo == 1 => 3,
                _ => 2,
            },
            CoxFamily::I2(m) => m,
        }
    }

    pub fn is_generator(&self, s: usize) -> bool {
        s >= 1 && s <= self.rank
    }

    /// Group order.
    pub fn order(&self) -> u128 {
        match self.family {
            CoxFamily::A => factorial(self.rank as u128 + 1),
            CoxFamily::B => (1u128 << self.rank) * factorial(self.rank as u128),
            CoxFamily::I2(m) => 2 * m as u128,
        }
    }

    pub fn identity(&self) -> CoxElement {
        let code = match self.family {
            CoxFamily::A => Code::Perm((1..=self.rank as i32 + 1).collect()),
            CoxFamily::B => Code::Signed((1..=self.rank as i32).collect()),
            CoxFamily::I2(_) => Code::Dihedral { k: 0, refl: false },
        };
        CoxElement {
            system: *self,
            code,
        }
    }

    /// The simple reflection with 1-based index `s`.
    pub fn generator(&self, s: usize) -> CoxElement {
        assert!(self.is_generator(s), "generator index {s} out of range");
        let code = match self.family {
            CoxFamily::A => {
                let mut p: Vec<i32> = (1..=self.rank as i32 + 1).collect();
                p.swap(s - 1, s);
                Code::Perm(p)
            }
            CoxFamily::B => {
                let mut w: Vec<i32> = (1..=self.rank as i32).collect();
                if s == 1 {
                    w[0] = -1;
                } else {
                    w.swap(s - 2, s - 1);
                }
                Code::Signed(w)
            }
            CoxFamily::I2(m) => {
                if s == 1 {
                    Code::Dihedral { k: 0, refl: true }
                } else {
                    Code::Dihedral {
                        k: 1 % m,
                        refl: true,
                    }
                }
            }
        };
        CoxElement {
            system: *self,
            code,
        }
    }

    /// The longest element `w0`.
    pub fn w0(&self) -> CoxElement {
        let code = match self.family {
            CoxFamily::A => Code::Perm((1..=self.rank as i32 + 1).rev().collect()),
            CoxFamily::B => Code::Signed((1..=self.rank as i32).map(|i| -i).collect()),
            CoxFamily::I2(m) => {
                if m % 2 == 0 {
                    Code::Dihedral {
                        k: m / 2,
                        refl: false,
                    }
                } else {
                    Code::Dihedral {
                        k: m.div_ceil(2),
                        refl: true,
                    }
                }
            }
        };
        CoxElement {
            system: *self,
            code,
        }
    }

    /// All elements, by breadth-first closure under the generators.
    /// Fails with `SizeBound` above [`ENUMERATION_BOUND`].
    pub fn enumerate(&self) -> Result<Vec<CoxElement>, CoxeterError> {
        self.enumerate_bounded(ENUMERATION_BOUND)
    }

    pub fn enumerate_bounded(&self, bound: u128) -> Result<Vec<CoxElement>, CoxeterError> {
        let order = self.order();
        if order > bound {
            return Err(CoxeterError::SizeBound { order, bound });
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(w) = frontier.pop() {
            out.push(w.clone());
            for s in 1..=self.rank {
                let next = w.mul_gen(s);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        debug_assert_eq!(out.len() as u128, order);
        out.sort();
        Ok(out)
    }
}

/// Canonical per-family encoding of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Code {
    /// Type A: the window `[w(1), ..., w(n+1)]` of a permutation of `{1..n+1}`.
    Perm(Vec<i32>),
    /// Type B: the window `[w(1), ..., w(n)]` of a signed permutation;
    /// `w(-i) = -w(i)` is implied.
    Signed(Vec<i32>),
    /// I2(m): `r^k` when `refl` is false, `r^k s` when true, `0 <= k < m`.
    Dihedral { k: u32, refl: bool },
}

/// An element of a finite Coxeter group, canonically encoded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxElement {
    system: CoxeterSystem,
    code: Code,
}

impl CoxElement {
    pub fn system(&self) -> CoxeterSystem {
        self.system
    }

    pub fn is_identity(&self) -> bool {
        *self == self.system.identity()
    }

    /// Group multiplication. Errors when the operands live in different
    /// systems.
    pub fn mul(&self, other: &CoxElement) -> Result<CoxElement, CoxeterError> {
        if self.system != other.system {
            return Err(CoxeterError::SystemMismatch);
        }
        Ok(self.mul_in_system(other))
    }

    /// Multiplication for operands already known to share a system.
    pub(crate) fn mul_in_system(&self, other: &CoxElement) -> CoxElement {
        debug_assert_eq!(self.system, other.system);
        let code = match (&self.code, &other.code) {
            (Code::Perm(a), Code::Perm(b)) => {
                // (a*b)(i) = a(b(i))
                Code::Perm(b.iter().map(|&i| a[(i - 1) as usize]).collect())
            }
            (Code::Signed(a), Code::Signed(b)) => {
                Code::Signed(b.iter().map(|&i| apply_signed(a, i)).collect())
            }
            (Code::Dihedral { k: k1, refl: e1 }, Code::Dihedral { k: k2, refl: e2 }) => {
                let m = match self.system.family {
                    CoxFamily::I2(m) => m,
                    _ => unreachable!(),
                };
                // (r^a s^e)(r^b s^f): s r^b = r^{-b} s.
                let k = if *e1 {
                    (k1 + m - k2 % m) % m
                } else {
                    (k1 + k2) % m
                };
                Code::Dihedral { k, refl: e1 ^ e2 }
            }
            _ => unreachable!("mixed encodings within one system"),
        };
        CoxElement {
            system: self.system,
            code,
        }
    }

    /// Right multiplication by the generator with index `s`.
    pub fn mul_gen(&self, s: usize) -> CoxElement {
        self.mul_in_system(&self.system.generator(s))
    }

    /// Left multiplication by the generator with index `s`.
    pub fn gen_mul(&self, s: usize) -> CoxElement {
        self.system.generator(s).mul_in_system(self)
    }

    pub fn inverse(&self) -> CoxElement {
        let code = match &self.code {
            Code::Perm(a) => {
                let mut inv = vec![0; a.len()];
                for (i, &v) in a.iter().enumerate() {
                    inv[(v - 1) as usize] = i as i32 + 1;
                }
                Code::Perm(inv)
            }
            Code::Signed(a) => {
                let mut inv = vec![0; a.len()];
                for (i, &v) in a.iter().enumerate() {
                    if v > 0 {
                        inv[(v - 1) as usize] = i as i32 + 1;
                    } else {
                        inv[(-v - 1) as usize] = -(i as i32 + 1);
                    }
                }
                Code::Signed(inv)
            }
            Code::Dihedral { k, refl } => {
                if *refl {
                    // reflections are involutions
                    Code::Dihedral { k: *k, refl: true }
                } else {
                    let m = match self.system.family {
                        CoxFamily::I2(m) => m,
                        _ => unreachable!(),
                    };
                    Code::Dihedral {
                        k: (m - k % m) % m,
                        refl: false,
                    }
                }
            }
        };
        CoxElement {
            system: self.system,
            code,
        }
    }

    /// Bruhat length: inversion count in type A, the signed-inversion
    /// statistic in type B, minimal word length in I2.
    pub fn length(&self) -> usize {
        match &self.code {
            Code::Perm(a) => inversions(a),
            Code::Signed(a) => {
                // inv(window) + sum of |w(i)| over the negative entries.
                let negsum: usize = a.iter().filter(|&&v| v < 0).map(|&v| (-v) as usize).sum();
                inversions(a) + negsum
            }
            Code::Dihedral { k, refl } => {
                let m = match self.system.family {
                    CoxFamily::I2(m) => m,
                    _ => unreachable!(),
                } as usize;
                let k = *k as usize;
                if !*refl {
                    // r^k = (ts)^k = (st)^{m-k}
                    std::cmp::min(2 * k, 2 * (m - k))
                } else {
                    // r^k s = s(ts)^{(m-k) mod m} = t(st)^{(k-1) mod m}
                    let via_s = 2 * ((m - k) % m) + 1;
                    let via_t = 2 * ((k + m - 1) % m) + 1;
                    std::cmp::min(via_s, via_t)
                }
            }
        }
    }

    /// True when right multiplication by generator `s` shortens the element.
    pub fn right_descent(&self, s: usize) -> bool {
        self.mul_gen(s).length() < self.length()
    }

    /// True when left multiplication by generator `s` shortens the element.
    pub fn left_descent(&self, s: usize) -> bool {
        self.gen_mul(s).length() < self.length()
    }

    /// Type A only: the window `[w(1), ..., w(n+1)]` as 1-based images.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        match &self.code {
            Code::Perm(a) => Some(a.iter().map(|&v| v as usize).collect()),
            _ => None,
        }
    }

    /// The reduced word produced by the greedy smallest-index left-descent
    /// rule. Folding the word with generator products reproduces the element.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while !w.is_identity() {
            let s = (1..=self.system.rank)
                .find(|&s| w.left_descent(s))
                .expect("non-identity element has a left descent");
            word.push(s);
            w = w.gen_mul(s);
        }
        word
    }

    /// Every reduced word of the element, by left-descent recursion.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for s in 1..=self.system.rank {
            if self.left_descent(s) {
                for tail in self.gen_mul(s).all_reduced_words() {
                    let mut word = Vec::with_capacity(tail.len() + 1);
                    word.push(s);
                    word.extend(tail);
                    out.push(word);
                }
            }
        }
        out
    }
}

impl fmt::Display for CoxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.code {
            Code::Perm(a) | Code::Signed(a) => {
                let parts: Vec<String> = a.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Code::Dihedral { k, refl } => {
                write!(f, "r^{}{}", k, if *refl { "s" } else { "" })
            }
        }
    }
}

fn apply_signed(a: &[i32], i: i32) -> i32 {
    if i > 0 {
        a[(i - 1) as usize]
    } else {
        -a[(-i - 1) as usize]
    }
}

fn inversions(a: &[i32]) -> usize {
    let mut count = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                count += 1;
            }
        }
    }
    count
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}
