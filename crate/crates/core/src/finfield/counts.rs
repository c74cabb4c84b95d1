//! Point counts of coset and configuration varieties, and the identity
//! checks built on them.
//!
//! Chain counts use transfer matrices over the flag set: the step matrix of a
//! simple reflection `s` has a 1 at `(i, j)` when flag `i` is in relative
//! position `s` with flag `j`, and every row has exactly `q` ones. Closed
//! chains are traces of step-matrix products, which is exactly "seed the last
//! flag, extend stepwise, check the closing constraint", done for all seeds
//! at once.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::braid::BraidWord;
use crate::coxeter::CoxElement;
use crate::hecke::{eval_braid, tau_minus_braid};
use crate::rng::SplitMix64;

use super::flag::{enumerate_flags, relative_position, Flag};
use super::group::{
    enumerate_borel_coset, enumerate_hg, enumerate_unipotents, is_unipotent, sample_bruhat_cell,
    ul_factorize, weyl_lift,
};
use super::mat::Mat;
use super::report::{CountReport, CountValue};
use super::{FinFieldError, GroupFamily, GroupSpec};

/// Default cap on chain length for the configuration counts.
pub const DEFAULT_MAX_CHAIN_LEN: usize = 10;

/// `|U \cap g B_+|`: unipotent points of a Borel coset.
pub fn count_ug(g: &Mat, spec: &GroupSpec) -> Result<u128, FinFieldError> {
    Ok(enumerate_borel_coset(g, spec)?
        .iter()
        .filter(|x| is_unipotent(x))
        .count() as u128)
}

/// `|U_+ U_- \cap g B_+|`: big-cell points of a Borel coset.
pub fn count_vg(g: &Mat, spec: &GroupSpec) -> Result<u128, FinFieldError> {
    Ok(enumerate_borel_coset(g, spec)?
        .iter()
        .filter(|x| ul_factorize(x).is_ok())
        .count() as u128)
}

/// Flags in longest relative position with both the standard flag and the
/// flag of `g B_+`.
pub fn count_xg(g: &Mat, spec: &GroupSpec) -> Result<u128, FinFieldError> {
    if spec.family() == GroupFamily::Sp4 {
        return Err(FinFieldError::InvalidSpec(
            "flag-configuration counts are implemented for GL/SL only".into(),
        ));
    }
    let n = spec.n();
    let p = spec.p();
    let std = Flag::standard(n, p);
    let g_flag = Flag::from_matrix(g)?;
    let w0 = spec.weyl_system().w0();
    let mut count = 0u128;
    for f in enumerate_flags(n, p)? {
        if relative_position(&std, &f)? == w0 && relative_position(&f, &g_flag)? == w0 {
            count += 1;
        }
    }
    Ok(count)
}

/// Precomputed flag tables for chain counting over a fixed `(n, p)`.
pub struct FlagGeometry {
    flags: Vec<Flag>,
    /// step[s-1] is the 0/1 transfer matrix of generator `s`.
    step: Vec<Vec<Vec<u128>>>,
}

impl FlagGeometry {
    pub fn new(spec: &GroupSpec) -> Result<Self, FinFieldError> {
        if spec.family() == GroupFamily::Sp4 {
            return Err(FinFieldError::InvalidSpec(
                "chain counts are implemented for GL/SL only".into(),
            ));
        }
        let flags = enumerate_flags(spec.n(), spec.p())?;
        let q = spec.p() as u128;
        let count = flags.len();
        let system = spec.weyl_system();
        let mut step = vec![vec![vec![0u128; count]; count]; system.rank()];
        for (i, f1) in flags.iter().enumerate() {
            for (j, f2) in flags.iter().enumerate() {
                let w = relative_position(f1, f2)?;
                if w.length() == 1 {
                    let s = w.reduced_word()[0];
                    step[s - 1][i][j] = 1;
                }
            }
        }
        // each step from a fixed flag has exactly q continuations
        for adjacency in &step {
            for row in adjacency {
                let ones: u128 = row.iter().sum();
                debug_assert_eq!(ones, q);
            }
        }
        Ok(FlagGeometry { flags, step })
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    fn index_of(&self, f: &Flag) -> usize {
        self.flags.binary_search(f).expect("flag is enumerated")
    }

    fn chain_matrix(&self, letters: &[usize]) -> Vec<Vec<u128>> {
        let count = self.flags.len();
        let mut m: Vec<Vec<u128>> = (0..count)
            .map(|i| (0..count).map(|j| u128::from(i == j)).collect())
            .collect();
        for &s in letters {
            let a = &self.step[s - 1];
            let mut next = vec![vec![0u128; count]; count];
            for i in 0..count {
                for k in 0..count {
                    let mik = m[i][k];
                    if mik == 0 {
                        continue;
                    }
                    for j in 0..count {
                        next[i][j] += mik * a[k][j];
                    }
                }
            }
            m = next;
        }
        m
    }

    /// Closed flag chains with steps prescribed by the braid letters.
    pub fn count_x_beta(&self, beta: &BraidWord) -> u128 {
        let m = self.chain_matrix(beta.letters());
        (0..self.flags.len()).map(|i| m[i][i]).sum()
    }

    /// Unipotent-twisted closed chains: pairs of a unipotent `u` and a chain
    /// from `u^{-1} B u` back to `B`.
    pub fn count_u_beta(
        &self,
        beta: &BraidWord,
        unipotents: &[Mat],
    ) -> Result<u128, FinFieldError> {
        let m = self.chain_matrix(beta.letters());
        let mut total = 0u128;
        for u in unipotents {
            let u_inv = u.inv()?;
            for (i, f) in self.flags.iter().enumerate() {
                let moved = f.translate(&u_inv)?;
                total += m[self.index_of(&moved)][i];
            }
        }
        Ok(total)
    }
}

fn chain_guard(beta: &BraidWord, max_len: usize) -> Result<(), FinFieldError> {
    if beta.len() > max_len {
        return Err(FinFieldError::SizeBound {
            size: beta.len() as u128,
            budget: max_len as u128,
        });
    }
    Ok(())
}

/// `|X(beta)|` for a positive braid over the Weyl group of `spec`.
pub fn count_x_beta(beta: &BraidWord, spec: &GroupSpec) -> Result<u128, FinFieldError> {
    count_x_beta_bounded(beta, spec, DEFAULT_MAX_CHAIN_LEN)
}

pub fn count_x_beta_bounded(
    beta: &BraidWord,
    spec: &GroupSpec,
    max_len: usize,
) -> Result<u128, FinFieldError> {
    assert_eq!(
        beta.system(),
        spec.weyl_system(),
        "braid over the wrong Weyl group"
    );
    chain_guard(beta, max_len)?;
    Ok(FlagGeometry::new(spec)?.count_x_beta(beta))
}

/// `|U(beta)|` for a positive braid over the Weyl group of `spec`.
pub fn count_u_beta(beta: &BraidWord, spec: &GroupSpec) -> Result<u128, FinFieldError> {
    count_u_beta_bounded(beta, spec, DEFAULT_MAX_CHAIN_LEN)
}

pub fn count_u_beta_bounded(
    beta: &BraidWord,
    spec: &GroupSpec,
    max_len: usize,
) -> Result<u128, FinFieldError> {
    assert_eq!(
        beta.system(),
        spec.weyl_system(),
        "braid over the wrong Weyl group"
    );
    chain_guard(beta, max_len)?;
    let geometry = FlagGeometry::new(spec)?;
    let unipotents = enumerate_unipotents(spec)?;
    geometry.count_u_beta(beta, &unipotents)
}

/// Kawanaka's identity for the coset of a Weyl lift: unipotent points equal
/// big-cell points.
pub fn kawanaka_check(spec: &GroupSpec, w: &CoxElement) -> Result<CountReport, FinFieldError> {
    let g = weyl_lift(w, spec);
    let lhs = count_ug(&g, spec)?;
    let rhs = count_vg(&g, spec)?;
    Ok(CountReport::new(
        "kawanaka",
        json!({
            "group": spec.label(),
            "p": spec.p(),
            "w": w.reduced_word(),
        }),
        lhs.into(),
        rhs.into(),
    ))
}

/// The Steinberg count: unipotent elements, big-cell elements, and
/// `p^{n(n-1)}` all agree (GL/SL).
pub fn steinberg_check(spec: &GroupSpec) -> Result<CountReport, FinFieldError> {
    if spec.family() == GroupFamily::Sp4 {
        return Err(FinFieldError::InvalidSpec(
            "the Steinberg scan is implemented for GL/SL only".into(),
        ));
    }
    let n = spec.n();
    let p = spec.p();
    let unipotent = enumerate_unipotents(spec)?.len() as u128;
    // scan the full matrix space for big-cell members
    let mut big_cell = 0u128;
    let mut idx = vec![0usize; n * n];
    loop {
        let mut m = Mat::zero(n, p);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, idx[i * n + j] as u64);
            }
        }
        if ul_factorize(&m).is_ok() {
            big_cell += 1;
        }
        if !super::group::increment_counter(&mut idx, p as usize) {
            break;
        }
    }
    let expected = (p as u128).pow((n * (n - 1)) as u32);
    let pass = unipotent == big_cell && unipotent == expected;
    Ok(CountReport::new(
        "steinberg",
        json!({
            "group": spec.label(),
            "p": p,
            "expected": expected.to_string(),
        }),
        unipotent.into(),
        big_cell.into(),
    )
    .with_pass(pass))
}

/// `|U(beta)| = |X(beta pi)|`.
pub fn cor_check(beta: &BraidWord, spec: &GroupSpec) -> Result<CountReport, FinFieldError> {
    let lhs = count_u_beta(beta, spec)?;
    let rhs = count_x_beta(&beta.append_full_twist(), spec)?;
    Ok(CountReport::new(
        "cor",
        json!({
            "group": spec.label(),
            "p": spec.p(),
            "beta": beta.letters(),
        }),
        lhs.into(),
        rhs.into(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountSign {
    Plus,
    Minus,
}

/// The trace point-count formula.
///
/// With `q = p`, `r` the torus rank and `N` the number of positive roots:
/// `|U(beta)| (q-1)^r = |G| q^{|beta|/2} tau_minus(beta)` and
/// `|X(beta)| (q-1)^r q^N = |G| q^{|beta|/2} tau_plus(beta)`.
/// The extra `q^N` on the configuration side is forced by
/// `|X(sigma_s sigma_s)| = q (#flags)` for `GL_2` and keeps the two formulas
/// consistent with `|U(beta)| = |X(beta pi)|` under the twist identity.
pub fn hecke_count_check(
    beta: &BraidWord,
    spec: &GroupSpec,
    sign: CountSign,
) -> Result<CountReport, FinFieldError> {
    let q = spec.p();
    let r = spec.torus_rank() as u32;
    let n_roots = spec.positive_roots() as u32;
    let (label, count, tau) = match sign {
        CountSign::Minus => (
            "hecke-count-minus",
            count_u_beta(beta, spec)?,
            tau_minus_braid(beta),
        ),
        CountSign::Plus => (
            "hecke-count-plus",
            count_x_beta(beta, spec)?,
            eval_braid(beta).tau_plus(),
        ),
    };
    // q^{|beta|/2} tau as an exact rational: multiply by v^{|beta|} first so
    // that every exponent is even.
    let scaled = tau.shift(beta.len() as i64).eval_q(q)?;
    let order = BigRational::from(BigInt::from(spec.group_order()));
    let mut denom = BigRational::from(BigInt::from(q - 1).pow(r));
    if sign == CountSign::Plus {
        denom *= BigRational::from(BigInt::from(q).pow(n_roots));
    }
    let prediction = order * scaled / denom;
    Ok(CountReport::new(
        label,
        json!({
            "group": spec.label(),
            "p": q,
            "beta": beta.letters(),
            "r": r,
            "positive_roots": n_roots,
        }),
        CountValue::from_u128(count),
        CountValue::from_rational(prediction),
    ))
}

/// The quotient identities linking coset counts to configuration counts:
/// `|U_g| |G| = |U(sigma_w)| |H_g|` and `|X_g| |G| = |X(sigma_w pi)| |H_g|`
/// for `g` the lift of `w`.
pub fn prop44_check(w: &CoxElement, spec: &GroupSpec) -> Result<Vec<CountReport>, FinFieldError> {
    let g = weyl_lift(w, spec);
    let order = spec.group_order();
    let hg = enumerate_hg(&g, spec)?.len() as u128;
    let sigma_w = BraidWord::of_element(w);
    let params = json!({
        "group": spec.label(),
        "p": spec.p(),
        "w": w.reduced_word(),
        "hg_order": hg.to_string(),
    });
    let u_report = CountReport::new(
        "prop44-u",
        params.clone(),
        (count_ug(&g, spec)? * order).into(),
        (count_u_beta(&sigma_w, spec)? * hg).into(),
    );
    let x_report = CountReport::new(
        "prop44-x",
        params,
        (count_xg(&g, spec)? * order).into(),
        (count_x_beta(&sigma_w.append_full_twist(), spec)? * hg).into(),
    );
    Ok(vec![u_report, x_report])
}

/// Coset counts are constant along a Bruhat cell: sampled translates
/// `g = u w b` must reproduce the counts at the lift of `w`.
pub fn bruhat_constancy_check(
    w: &CoxElement,
    spec: &GroupSpec,
    samples: usize,
    seed: u64,
) -> Result<CountReport, FinFieldError> {
    let base = weyl_lift(w, spec);
    let base_ug = count_ug(&base, spec)?;
    let base_vg = count_vg(&base, spec)?;
    let mut rng = SplitMix64::new(seed);
    let mut mismatches = 0usize;
    for _ in 0..samples {
        let g = sample_bruhat_cell(w, spec, &mut rng);
        if count_ug(&g, spec)? != base_ug || count_vg(&g, spec)? != base_vg {
            mismatches += 1;
        }
    }
    Ok(CountReport::new(
        "constancy",
        json!({
            "group": spec.label(),
            "p": spec.p(),
            "w": w.reduced_word(),
            "samples": samples,
            "mismatches": mismatches,
        }),
        base_ug.into(),
        base_vg.into(),
    )
    .with_pass(mismatches == 0)
    .with_seed(seed))
}
