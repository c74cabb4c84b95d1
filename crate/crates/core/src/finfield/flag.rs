//! Complete flags over a prime field, as canonical coset representatives,
//! plus relative position.
//!
//! The canonical form is a column-pivot normal form: scanning columns left
//! to right, each column's lowest nonzero entry is scaled to 1, and that
//! pivot's row is cleared in every later column. (Entries to the left of a
//! pivot cannot be altered by right multiplication by upper-triangular
//! matrices and stay as they are.) Each coset of the upper-triangular Borel
//! contains exactly one such representative.

use crate::coxeter::{CoxElement, CoxeterSystem};

use super::mat::{inv_mod, neg_mod, rank_rect, Mat};
use super::FinFieldError;

/// Largest matrix size for flag enumeration and relative position.
pub const FLAG_RANK_BOUND: usize = 3;

/// A complete flag: subspace `i` is the span of the first `i` columns of the
/// canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    rep: Mat,
}

impl Flag {
    /// The standard flag, fixed by the upper-triangular Borel.
    pub fn standard(n: usize, p: u64) -> Flag {
        Flag {
            rep: Mat::identity(n, p),
        }
    }

    /// Canonical representative of the coset `m B_+`.
    pub fn from_matrix(m: &Mat) -> Result<Flag, FinFieldError> {
        if !m.is_invertible() {
            return Err(FinFieldError::Singular);
        }
        let n = m.n();
        let p = m.p();
        let mut rep = m.clone();
        for j in 0..n {
            let pivot_row = (0..n)
                .rev()
                .find(|&i| rep.get(i, j) != 0)
                .expect("invertible matrix has no zero column");
            let scale = inv_mod(rep.get(pivot_row, j), p).unwrap();
            rep.scale_col(j, scale);
            for k in j + 1..n {
                let v = rep.get(pivot_row, k);
                if v != 0 {
                    rep.add_col(k, j, neg_mod(v, p));
                }
            }
        }
        Ok(Flag { rep })
    }

    pub fn rep(&self) -> &Mat {
        &self.rep
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn p(&self) -> u64 {
        self.rep.p()
    }

    /// Left translation `m F`, i.e. conjugation of the Borel subgroup.
    pub fn translate(&self, m: &Mat) -> Result<Flag, FinFieldError> {
        Flag::from_matrix(&m.mul(&self.rep))
    }

    /// True when `g` lies in the Borel subgroup this flag corresponds to.
    pub fn stabilizes(&self, g: &Mat) -> bool {
        let inv = self
            .rep
            .inv()
            .expect("canonical representatives are invertible");
        inv.mul(g).mul(&self.rep).is_upper_triangular()
    }
}

/// All flags for an `n x n` space over `F_p`, `n <= 3`.
///
/// Enumerates canonical representatives directly: one pivot pattern per
/// permutation, free entries above each pivot except in cleared rows.
pub fn enumerate_flags(n: usize, p: u64) -> Result<Vec<Flag>, FinFieldError> {
    if n > FLAG_RANK_BOUND {
        return Err(FinFieldError::SizeBound {
            size: n as u128,
            budget: FLAG_RANK_BOUND as u128,
        });
    }
    if n == 1 {
        return Ok(vec![Flag::standard(1, p)]);
    }
    let system = CoxeterSystem::a(n - 1);
    let mut out = Vec::new();
    for w in system.enumerate().expect("tiny groups") {
        let perm = w.permutation().expect("type A");
        // pivot of column j sits in row perm[j] - 1
        let pivots: Vec<usize> = perm.iter().map(|&r| r - 1).collect();
        let mut free: Vec<(usize, usize)> = Vec::new();
        for j in 0..n {
            for i in 0..pivots[j] {
                if !pivots[..j].contains(&i) {
                    free.push((i, j));
                }
            }
        }
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut m = Mat::zero(n, p);
            for (j, &row) in pivots.iter().enumerate() {
                m.set(row, j, 1);
            }
            for (k, &(i, j)) in free.iter().enumerate() {
                m.set(i, j, idx[k] as u64);
            }
            let flag = Flag { rep: m };
            debug_assert_eq!(Flag::from_matrix(&flag.rep).unwrap(), flag);
            out.push(flag);
            if !super::group::increment_counter(&mut idx, p as usize) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Flag count for `GL_n`/`SL_n`: `prod q^{l(w)}` over the Weyl group.
pub fn flag_count(n: usize, p: u64) -> u128 {
    let q = p as u128;
    match n {
        1 => 1,
        2 => q + 1,
        3 => (q * q + q + 1) * (q + 1),
        _ => panic!("flag counts implemented for n <= 3"),
    }
}

/// Relative position of two flags, as an element of `A(n-1)`.
///
/// Computed from the rank matrix `d(i, j) = dim(F1_i \cap F2_j)`: the double
/// difference picks out a permutation matrix. The orientation is calibrated
/// so that `relative_position(std, w.std) = w` for every Weyl element `w`.
#[allow(clippy::needless_range_loop)]
pub fn relative_position(f1: &Flag, f2: &Flag) -> Result<CoxElement, FinFieldError> {
    if f1.n() != f2.n() || f1.p() != f2.p() {
        return Err(FinFieldError::DimensionMismatch);
    }
    let n = f1.n();
    let p = f1.p();
    // d[i][j] = i + j - rank of the first i columns of F1 next to the first
    // j columns of F2.
    let mut d = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            let cols = i + j;
            if cols == 0 {
                continue;
            }
            let mut buf = vec![0u64; n * cols];
            for r in 0..n {
                for c in 0..i {
                    buf[r * cols + c] = f1.rep.get(r, c);
                }
                for c in 0..j {
                    buf[r * cols + i + c] = f2.rep.get(r, c);
                }
            }
            let rank = rank_rect(n, cols, &mut buf, p) as i64;
            d[i][j] = (i + j) as i64 - rank;
        }
    }
    let mut images = vec![0usize; n];
    for i in 1..=n {
        let j = (1..=n)
            .find(|&j| d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1)
            .expect("rank matrix of a flag pair is a permutation matrix");
        images[i - 1] = j;
    }
    // `images` sends i to j in the convention opposite to the calibrated one.
    let sigma = permutation_element(f1.n(), &images);
    Ok(sigma.inverse())
}

fn permutation_element(n: usize, images: &[usize]) -> CoxElement {
    let system = CoxeterSystem::a(n - 1);
    system
        .enumerate()
        .expect("small symmetric group")
        .into_iter()
        .find(|cand| cand.permutation().unwrap() == images)
        .expect("images form a permutation window")
}

#[cfg(test)]
mod tests {
    use super::super::group::weyl_lift;
    use super::super::GroupSpec;
    use super::*;

    #[test]
    fn canonicalization_examples() {
        // identity flag
        let id = Mat::identity(2, 2);
        assert_eq!(Flag::from_matrix(&id).unwrap().rep(), &id);
        // any upper triangular matrix is the standard flag
        let b = Mat::from_rows(5, &[&[2, 1], &[0, 3]]);
        assert_eq!(Flag::from_matrix(&b).unwrap(), Flag::standard(2, 5));
        // a singular matrix is rejected
        let s = Mat::from_rows(3, &[&[1, 2], &[2, 1]]);
        assert!(matches!(
            Flag::from_matrix(&s),
            Err(FinFieldError::Singular)
        ));
    }

    #[test]
    fn representatives_identify_cosets() {
        // two matrices give the same flag iff they differ by a Borel element
        let p = 3;
        let m1 = Mat::from_rows(p, &[&[1, 1], &[1, 0]]);
        let b = Mat::from_rows(p, &[&[2, 1], &[0, 1]]);
        let m2 = m1.mul(&b);
        assert_eq!(
            Flag::from_matrix(&m1).unwrap(),
            Flag::from_matrix(&m2).unwrap()
        );
        let other = Mat::from_rows(p, &[&[1, 0], &[0, 1]]);
        assert_ne!(
            Flag::from_matrix(&m1).unwrap(),
            Flag::from_matrix(&other).unwrap()
        );
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_flags(2, 3).unwrap().len(), 4);
        assert_eq!(enumerate_flags(3, 2).unwrap().len(), 21);
        // (9 + 3 + 1)(3 + 1) = 52
        assert_eq!(enumerate_flags(3, 3).unwrap().len(), 52);
        assert_eq!(flag_count(3, 3), 52);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // canonicalize every invertible matrix and dedupe
        let n = 2;
        let p = 3u64;
        let mut brute = std::collections::BTreeSet::new();
        for a in 0..p.pow(4) {
            let entries: Vec<i64> = (0..4).map(|k| ((a / p.pow(k)) % p) as i64).collect();
            let m = Mat::from_rows(p, &[&entries[0..2], &entries[2..4]]);
            if m.is_invertible() {
                brute.insert(Flag::from_matrix(&m).unwrap());
            }
        }
        let listed: std::collections::BTreeSet<_> =
            enumerate_flags(n, p).unwrap().into_iter().collect();
        assert_eq!(brute, listed);
    }

    #[test]
    fn relative_position_identity_and_calibration() {
        for (n, p) in [(2usize, 3u64), (3, 2)] {
            let std = Flag::standard(n, p);
            assert!(relative_position(&std, &std).unwrap().is_identity());
            let spec = GroupSpec::gl(n, p).unwrap();
            let weyl = spec.weyl_system();
            for w in weyl.enumerate().unwrap() {
                let lift = weyl_lift(&w, &spec);
                let moved = std.translate(&lift).unwrap();
                assert_eq!(
                    relative_position(&std, &moved).unwrap(),
                    w,
                    "calibration failed at w = {w}"
                );
            }
        }
    }

    #[test]
    fn opposite_flags_are_in_longest_position() {
        let spec = GroupSpec::gl(3, 2).unwrap();
        let std = Flag::standard(3, 2);
        let w0 = spec.weyl_system().w0();
        let moved = std.translate(&weyl_lift(&w0, &spec)).unwrap();
        assert_eq!(relative_position(&std, &moved).unwrap(), w0);
    }

    #[test]
    fn cell_sizes_are_q_to_length() {
        for (n, p) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3)] {
            let flags = enumerate_flags(n, p).unwrap();
            let std = Flag::standard(n, p);
            let weyl = CoxeterSystem::a(n - 1);
            for w in weyl.enumerate().unwrap() {
                let count = flags
                    .iter()
                    .filter(|f| relative_position(&std, f).unwrap() == w)
                    .count() as u128;
                assert_eq!(count, (p as u128).pow(w.length() as u32), "w = {w}");
            }
        }
    }

    #[test]
    fn relative_position_is_transported_by_translation() {
        let p = 2;
        let flags = enumerate_flags(2, p).unwrap();
        let g = Mat::from_rows(p, &[&[1, 1], &[1, 0]]);
        for f1 in &flags {
            for f2 in &flags {
                let w = relative_position(f1, f2).unwrap();
                let t1 = f1.translate(&g).unwrap();
                let t2 = f2.translate(&g).unwrap();
                assert_eq!(relative_position(&t1, &t2).unwrap(), w);
            }
        }
    }

    #[test]
    fn stabilizer_membership() {
        let std = Flag::standard(2, 3);
        assert!(std.stabilizes(&Mat::from_rows(3, &[&[1, 1], &[0, 2]])));
        assert!(!std.stabilizes(&Mat::from_rows(3, &[&[1, 0], &[1, 1]])));
    }
}
