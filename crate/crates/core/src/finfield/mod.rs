//! Exact linear algebra over prime fields and enumeration-based point counts.
//!
//! Everything here is exhaustive or seeded-deterministic: cosets, flags and
//! chain configurations are enumerated outright at the small sizes the checks
//! run at, and every randomized check records its seed.

pub mod closed_form;
pub mod counts;
pub mod flag;
pub mod group;
pub mod maps;
pub mod mat;
pub mod report;

pub use flag::{enumerate_flags, relative_position, Flag};
pub use mat::Mat;
pub use report::{CountReport, CountValue};

use thiserror::Error;

use crate::coxeter::CoxeterSystem;
use crate::ring::RingError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FinFieldError {
    #[error("matrix is singular")]
    Singular,
    #[error("element admits no unit-upper times unit-lower factorization")]
    NotInBigCell,
    #[error("matrix is not upper triangular")]
    NotUpperTriangular,
    #[error("element does not lie in B+ intersected with g B+ g^-1")]
    NotInHg,
    #[error("element does not lie in the Borel coset g B+")]
    NotInCoset,
    #[error("operands have mismatched dimensions or fields")]
    DimensionMismatch,
    #[error("enumeration size {size} exceeds budget {budget}")]
    SizeBound { size: u128, budget: u128 },
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    Gl,
    Sl,
    Sp4,
}

/// A split matrix group over a prime field: `GL_n`, `SL_n` or `Sp_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    family: GroupFamily,
    n: usize,
    p: u64,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, n: usize, p: u64) -> Result<Self, FinFieldError> {
        if !is_prime(p) {
            return Err(FinFieldError::InvalidSpec(format!("{p} is not prime")));
        }
        match family {
            GroupFamily::Gl | GroupFamily::Sl => {
                if !(2..=4).contains(&n) {
                    return Err(FinFieldError::InvalidSpec(format!(
                        "matrix size {n} out of the supported range 2..=4"
                    )));
                }
            }
            GroupFamily::Sp4 => {
                if n != 4 {
                    return Err(FinFieldError::InvalidSpec("Sp4 forces n = 4".into()));
                }
                if p == 2 {
                    return Err(FinFieldError::InvalidSpec(
                        "Sp4 requires odd characteristic".into(),
                    ));
                }
            }
        }
        Ok(GroupSpec { family, n, p })
    }

    pub fn gl(n: usize, p: u64) -> Result<Self, FinFieldError> {
        Self::new(GroupFamily::Gl, n, p)
    }

    pub fn sl(n: usize, p: u64) -> Result<Self, FinFieldError> {
        Self::new(GroupFamily::Sl, n, p)
    }

    pub fn sp4(p: u64) -> Result<Self, FinFieldError> {
        Self::new(GroupFamily::Sp4, 4, p)
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The Weyl group: `A(n-1)` for `GL_n`/`SL_n`, the dihedral group of
    /// order 8 for `Sp_4` (generator 1 is the coordinate swap, generator 2
    /// the long reflection).
    pub fn weyl_system(&self) -> CoxeterSystem {
        match self.family {
            GroupFamily::Gl | GroupFamily::Sl => CoxeterSystem::a(self.n - 1),
            GroupFamily::Sp4 => CoxeterSystem::i2(4),
        }
    }

    /// Rank of the maximal torus; the exponent `r` in the trace formulas.
    pub fn torus_rank(&self) -> usize {
        match self.family {
            GroupFamily::Gl => self.n,
            GroupFamily::Sl => self.n - 1,
            GroupFamily::Sp4 => 2,
        }
    }

    pub fn positive_roots(&self) -> usize {
        match self.family {
            GroupFamily::Gl | GroupFamily::Sl => self.n * (self.n - 1) / 2,
            GroupFamily::Sp4 => 4,
        }
    }

    pub fn group_order(&self) -> u128 {
        let q = self.p as u128;
        match self.family {
            GroupFamily::Gl => {
                let qn = q.pow(self.n as u32);
                (0..self.n as u32).map(|i| qn - q.pow(i)).product()
            }
            GroupFamily::Sl => {
                let qn = q.pow(self.n as u32);
                let gl: u128 = (0..self.n as u32).map(|i| qn - q.pow(i)).product();
                gl / (q - 1)
            }
            GroupFamily::Sp4 => q.pow(4) * (q.pow(2) - 1) * (q.pow(4) - 1),
        }
    }

    pub fn borel_order(&self) -> u128 {
        let q = self.p as u128;
        (q - 1).pow(self.torus_rank() as u32) * q.pow(self.positive_roots() as u32)
    }

    pub fn label(&self) -> String {
        match self.family {
            GroupFamily::Gl => format!("gl{}", self.n),
            GroupFamily::Sl => format!("sl{}", self.n),
            GroupFamily::Sp4 => "sp4".to_string(),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
