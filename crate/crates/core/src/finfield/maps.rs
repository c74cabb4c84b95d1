//! The explicit bijection from big-cell coset points to flag configurations,
//! and the equivariance checks around the retraction map.

use serde_json::json;

use crate::coxeter::CoxElement;

use super::counts::count_xg;
use super::flag::{relative_position, Flag};
use super::group::{
    action_vg, decompose_borel, enumerate_borel_coset, enumerate_hg, is_unipotent, phi_apply,
    ul_factorize, weyl_lift,
};
use super::mat::Mat;
use super::report::CountReport;
use super::{FinFieldError, GroupSpec};

/// Sends `x = g u t` in the big-cell part of `g B_+` to the flag of
/// `g u w0 B_+`, which is in longest position with both the standard flag
/// and the flag of `g`.
pub fn v_to_x_map(x: &Mat, g: &Mat, spec: &GroupSpec) -> Result<Flag, FinFieldError> {
    ul_factorize(x)?;
    let g_inv = g.inv()?;
    let b = g_inv.mul(x);
    if !b.is_upper_triangular() {
        return Err(FinFieldError::NotInCoset);
    }
    let (u, _t) = decompose_borel(&b)?;
    let w0_lift = weyl_lift(&spec.weyl_system().w0(), spec);
    Flag::from_matrix(&g.mul(&u).mul(&w0_lift))
}

/// All big-cell points of the coset `g B_+`.
pub fn enumerate_vg(g: &Mat, spec: &GroupSpec) -> Result<Vec<Mat>, FinFieldError> {
    Ok(enumerate_borel_coset(g, spec)?
        .into_iter()
        .filter(|x| ul_factorize(x).is_ok())
        .collect())
}

/// Exhaustive check that `v_to_x_map` is an equivariant bijection onto the
/// flag configuration set, for `g` the lift of `w`.
pub fn vx_bijection_check(
    spec: &GroupSpec,
    w: &CoxElement,
    check_equivariance: bool,
) -> Result<CountReport, FinFieldError> {
    let g = weyl_lift(w, spec);
    let std = Flag::standard(spec.n(), spec.p());
    let g_flag = Flag::from_matrix(&g)?;
    let w0 = spec.weyl_system().w0();
    let points = enumerate_vg(&g, spec)?;
    let mut images = std::collections::BTreeSet::new();
    let mut in_target = true;
    for x in &points {
        let flag = v_to_x_map(x, &g, spec)?;
        in_target &=
            relative_position(&std, &flag)? == w0 && relative_position(&flag, &g_flag)? == w0;
        images.insert(flag);
    }
    let injective = images.len() == points.len();
    let target_count = count_xg(&g, spec)?;
    let onto = images.len() as u128 == target_count;

    let mut equivariant = true;
    if check_equivariance {
        for b in enumerate_hg(&g, spec)? {
            for x in &points {
                let moved = action_vg(&b, x, &g)?;
                let lhs = v_to_x_map(&moved, &g, spec)?;
                let rhs = v_to_x_map(x, &g, spec)?.translate(&b)?;
                equivariant &= lhs == rhs;
            }
        }
    }

    Ok(CountReport::new(
        "vx-bijection",
        json!({
            "group": spec.label(),
            "p": spec.p(),
            "w": w.reduced_word(),
            "injective": injective,
            "lands_in_target": in_target,
            "equivariance_checked": check_equivariance,
            "equivariant": equivariant,
        }),
        (images.len() as u128).into(),
        target_count.into(),
    )
    .with_pass(injective && in_target && onto && equivariant))
}

/// Exhaustive check of the retraction invariants on one coset: images are
/// unipotent and stay in the coset, the Borel action preserves the big-cell
/// slice, and the retraction intertwines the action with conjugation.
pub fn phi_invariant_check(spec: &GroupSpec, w: &CoxElement) -> Result<CountReport, FinFieldError> {
    let g = weyl_lift(w, spec);
    let g_inv = g.inv()?;
    let points = enumerate_vg(&g, spec)?;
    let hg = enumerate_hg(&g, spec)?;
    let mut violations = 0u128;
    for x in &points {
        let (x_plus, x_minus) = ul_factorize(x)?;
        let image = phi_apply(&x_plus, &x_minus);
        if !is_unipotent(&image) || !g_inv.mul(&image).is_upper_triangular() {
            violations += 1;
        }
        for b in &hg {
            let moved = action_vg(b, x, &g)?;
            // the action preserves the big-cell slice of the coset
            let Ok((m_plus, m_minus)) = ul_factorize(&moved) else {
                violations += 1;
                continue;
            };
            if !g_inv.mul(&moved).is_upper_triangular() {
                violations += 1;
                continue;
            }
            // equivariance: phi(b . x) = b phi(x) b^{-1}
            let lhs = phi_apply(&m_plus, &m_minus);
            let rhs = b.mul(&image).mul(&b.inv()?);
            if lhs != rhs {
                violations += 1;
            }
        }
    }
    Ok(CountReport::new(
        "phi-invariants",
        json!({
            "group": spec.label(),
            "p": spec.p(),
            "w": w.reduced_word(),
            "points": points.len(),
            "hg_order": hg.len(),
        }),
        violations.into(),
        0u64.into(),
    ))
}
