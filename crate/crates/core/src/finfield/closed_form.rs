//! Numeric verification of the closed-form retraction displays: the general
//! formulas for 2x2, 3x3 and symplectic 4x4 matrices, and the per-cell
//! coordinate maps.
//!
//! Each check draws seeded samples of the free coordinates, evaluates both
//! the actual matrix product `x_+ x_- x_+^{-1}` and the transcribed display
//! polynomials, and counts mismatched entries. Divisions in the displays are
//! replaced by precomputed field inverses; everything else is integer
//! arithmetic reduced mod `p` at the end, so the transcription stays close to
//! the source formulas.

use serde_json::json;
use std::str::FromStr;

use crate::rng::SplitMix64;

use super::group::{in_group, is_unipotent, phi_apply, sp4_unipotent_lower, sp4_unipotent_upper};
use super::mat::{inv_mod, Mat};
use super::report::CountReport;
use super::{FinFieldError, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormCase {
    Sl2W0,
    Sl3Ts,
    Sl3St,
    Sl3W0,
    Sp4Gen,
}

impl ClosedFormCase {
    pub fn all() -> [ClosedFormCase; 5] {
        [
            Self::Sl2W0,
            Self::Sl3Ts,
            Self::Sl3St,
            Self::Sl3W0,
            Self::Sp4Gen,
        ]
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Sl2W0 => "sl2-w0",
            Self::Sl3Ts => "sl3-ts",
            Self::Sl3St => "sl3-st",
            Self::Sl3W0 => "sl3-w0",
            Self::Sp4Gen => "sp4-gen",
        }
    }
}

impl FromStr for ClosedFormCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl2-w0" => Ok(Self::Sl2W0),
            "sl3-ts" => Ok(Self::Sl3Ts),
            "sl3-st" => Ok(Self::Sl3St),
            "sl3-w0" => Ok(Self::Sl3W0),
            "sp4-gen" => Ok(Self::Sp4Gen),
            other => Err(format!("unknown closed-form case `{other}`")),
        }
    }
}

fn md(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn mat_from(p: u64, rows: &[Vec<i128>]) -> Mat {
    let n = rows.len();
    let mut m = Mat::zero(n, p);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, md(v, p));
        }
    }
    m
}

fn inv(p: u64, v: i128) -> i128 {
    inv_mod(md(v, p), p).expect("value sampled nonzero") as i128
}

struct Sampler<'a> {
    rng: &'a mut SplitMix64,
    p: u64,
}

impl Sampler<'_> {
    fn any(&mut self) -> i128 {
        self.rng.below(self.p) as i128
    }

    fn nonzero(&mut self) -> i128 {
        (self.rng.below(self.p - 1) + 1) as i128
    }
}

/// Runs `samples` seeded evaluations of the chosen display family.
pub fn closed_form_check(
    case: ClosedFormCase,
    p: u64,
    samples: usize,
    seed: u64,
) -> Result<CountReport, FinFieldError> {
    if p < 3 {
        return Err(FinFieldError::InvalidSpec(
            "closed-form checks need an odd prime (divisions by 2 and by sampled units)".into(),
        ));
    }
    GroupSpec::gl(2, p)?; // primality check
    let mut rng = SplitMix64::new(seed);
    let mut mismatches = 0u64;
    let mut degenerate = 0u64;
    for _ in 0..samples {
        let mut sampler = Sampler { rng: &mut rng, p };
        mismatches += match case {
            ClosedFormCase::Sl2W0 => sl2_sample(p, &mut sampler),
            ClosedFormCase::Sl3Ts => sl3_general(p, &mut sampler) + sl3_ts_cell(p, &mut sampler),
            ClosedFormCase::Sl3St => sl3_general(p, &mut sampler) + sl3_st_cell(p, &mut sampler),
            ClosedFormCase::Sl3W0 => {
                sl3_general(p, &mut sampler) + sl3_w0_cell(p, &mut sampler, &mut degenerate)
            }
            ClosedFormCase::Sp4Gen => {
                sp4_general(p, &mut sampler) + sp4_sts_cell(p, &mut sampler, &mut degenerate)
            }
        };
    }
    Ok(CountReport::new(
        "closed-form",
        json!({
            "case": case.label(),
            "p": p,
            "samples": samples,
            "degenerate_resamples": degenerate,
        }),
        mismatches.into(),
        0u64.into(),
    )
    .with_seed(seed))
}

fn entry_mismatches(actual: &Mat, display: &Mat) -> u64 {
    let n = actual.n();
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            if actual.get(i, j) != display.get(i, j) {
                count += 1;
            }
        }
    }
    count
}

fn unit_upper2(p: u64, b: i128) -> Mat {
    mat_from(p, &[vec![1, b], vec![0, 1]])
}

fn unit_lower2(p: u64, b1: i128) -> Mat {
    mat_from(p, &[vec![1, 0], vec![b1, 1]])
}

fn unit_upper3(p: u64, a: i128, b: i128, c: i128) -> Mat {
    mat_from(p, &[vec![1, a, b], vec![0, 1, c], vec![0, 0, 1]])
}

fn unit_lower3(p: u64, a1: i128, b1: i128, c1: i128) -> Mat {
    mat_from(p, &[vec![1, 0, 0], vec![a1, 1, 0], vec![b1, c1, 1]])
}

fn sl2_sample(p: u64, sampler: &mut Sampler) -> u64 {
    let mut bad = 0;
    // general formula on free coordinates
    let b = sampler.any();
    let b1 = sampler.any();
    let actual = phi_apply(&unit_upper2(p, b), &unit_lower2(p, b1));
    let display = mat_from(p, &[vec![1 + b * b1, -b * b * b1], vec![b1, 1 - b * b1]]);
    bad += entry_mismatches(&actual, &display);

    // the longest-cell coordinate map X = b'
    let bp = sampler.nonzero();
    let b = -inv(p, bp);
    let x_plus = unit_upper2(p, b);
    let x_minus = unit_lower2(p, bp);
    let x = x_plus.mul(&x_minus);
    let v_display = mat_from(p, &[vec![0, -inv(p, bp)], vec![bp, 1]]);
    bad += entry_mismatches(&x, &v_display);
    let xx = bp;
    let u_display = mat_from(p, &[vec![0, -inv(p, xx)], vec![xx, 2]]);
    bad += entry_mismatches(&phi_apply(&x_plus, &x_minus), &u_display);
    bad
}

fn sl3_display(p: u64, a: i128, b: i128, c: i128, a1: i128, b1: i128, c1: i128) -> Mat {
    mat_from(
        p,
        &[
            vec![
                1 + a * a1 + b * b1,
                b * c1 - a * a * a1 - a * b * b1,
                -a * b * a1 - b * b * b1 - b * c * c1 + a * a * c * a1 + a * b * c * b1,
            ],
            vec![
                a1 + c * b1,
                1 - a * a1 + c * c1 - a * c * b1,
                -b * a1 + a * c * a1 - b * c * b1 - c * c * c1 + a * c * c * b1,
            ],
            vec![b1, c1 - a * b1, 1 - b * b1 - c * c1 + a * c * b1],
        ],
    )
}

fn sl3_general(p: u64, sampler: &mut Sampler) -> u64 {
    let (a, b, c) = (sampler.any(), sampler.any(), sampler.any());
    let (a1, b1, c1) = (sampler.any(), sampler.any(), sampler.any());
    let actual = phi_apply(&unit_upper3(p, a, b, c), &unit_lower3(p, a1, b1, c1));
    entry_mismatches(&actual, &sl3_display(p, a, b, c, a1, b1, c1))
}

fn sl3_ts_cell(p: u64, sampler: &mut Sampler) -> u64 {
    let mut bad = 0;
    let a1 = sampler.nonzero();
    let c = sampler.nonzero();
    let b = sampler.any();
    let inv_a1 = inv(p, a1);
    let inv_c = inv(p, c);
    let a = b * inv_c - inv_a1;
    let b1 = -a1 * inv_c;
    let c1 = -inv_c;
    let x_plus = unit_upper3(p, a, b, c);
    let x_minus = unit_lower3(p, a1, b1, c1);

    let v_display = mat_from(
        p,
        &[
            vec![0, -inv_a1, b],
            vec![0, 0, c],
            vec![-a1 * inv_c, -inv_c, 1],
        ],
    );
    bad += entry_mismatches(&x_plus.mul(&x_minus), &v_display);

    let phi = phi_apply(&x_plus, &x_minus);
    let phi_display = mat_from(
        p,
        &[
            vec![0, -inv_a1, b + c * inv_a1],
            vec![0, 0, c],
            vec![-a1 * inv_c, -inv_c * (2 - b * a1 * inv_c), 3],
        ],
    );
    bad += entry_mismatches(&phi, &phi_display);

    // coordinates (Y, Z, C) = (-1/a', c, b + c/a')
    let yy = -inv_a1;
    let zz = c;
    let cc = b + c * inv_a1;
    let yz_inv = inv(p, yy * zz);
    let u_display = mat_from(
        p,
        &[
            vec![0, yy, cc],
            vec![0, 0, zz],
            vec![yz_inv, -inv(p, zz) * (3 + cc * yz_inv), 3],
        ],
    );
    bad += entry_mismatches(&phi, &u_display);
    bad
}

fn sl3_st_cell(p: u64, sampler: &mut Sampler) -> u64 {
    let mut bad = 0;
    let b = sampler.nonzero();
    let a1 = sampler.nonzero();
    let c = sampler.any();
    let inv_ba1 = inv(p, b * a1);
    let a = -inv(p, a1);
    let x_plus = unit_upper3(p, a, b, c);
    let x_minus = unit_lower3(p, a1, 0, inv_ba1);

    let v_display = mat_from(
        p,
        &[
            vec![0, 0, b],
            vec![a1, 1 + c * inv_ba1, c],
            vec![0, inv_ba1, 1],
        ],
    );
    bad += entry_mismatches(&x_plus.mul(&x_minus), &v_display);

    let phi = phi_apply(&x_plus, &x_minus);
    let phi_display = mat_from(
        p,
        &[
            vec![0, 0, b],
            vec![a1, 2 + c * inv_ba1, -(b * a1 + c * c * inv_ba1 + c)],
            vec![0, inv_ba1, 1 - c * inv_ba1],
        ],
    );
    bad += entry_mismatches(&phi, &phi_display);

    // coordinates (X, Y, A) = (a', 1/(b a'), 2 + c/(b a')); the image entry
    // at (2,2) is the source entry plus one, which pins A this way.
    let xx = a1;
    let yy = inv_ba1;
    let aa = 2 + c * inv_ba1;
    let u_display = mat_from(
        p,
        &[
            vec![0, 0, inv(p, xx * yy)],
            vec![xx, aa, -inv(p, yy) * (3 - 3 * aa + aa * aa)],
            vec![0, yy, 3 - aa],
        ],
    );
    bad += entry_mismatches(&phi, &u_display);
    bad
}

fn sl3_w0_cell(p: u64, sampler: &mut Sampler, degenerate: &mut u64) -> u64 {
    let mut bad = 0;
    // need 1 + c c' invertible for the cell to have a point over these coords
    let (b, c, c1) = loop {
        let b = sampler.nonzero();
        let c = sampler.any();
        let c1 = sampler.any();
        if md(1 + c * c1, p) != 0 {
            break (b, c, c1);
        }
        *degenerate += 1;
    };
    let b1 = -inv(p, b * (1 + c * c1));
    let a = -b * c1;
    let a1 = -c * b1;
    let x_plus = unit_upper3(p, a, b, c);
    let x_minus = unit_lower3(p, a1, b1, c1);

    let v_display = mat_from(p, &[vec![0, 0, b], vec![0, 1 + c1 * c, c], vec![b1, c1, 1]]);
    bad += entry_mismatches(&x_plus.mul(&x_minus), &v_display);
    // the cell's defining equation
    if md(1 + b * b1 + (b * b1) * (c * c1), p) != 0 {
        bad += 1;
    }

    let phi = phi_apply(&x_plus, &x_minus);
    let bb1_inv = inv(p, b * b1);
    let phi_display = mat_from(
        p,
        &[
            vec![0, 0, b],
            vec![0, 1 + c * c1, (1 + bb1_inv) * c],
            vec![b1, (1 + b * b1) * c1, 2 - c * c1],
        ],
    );
    bad += entry_mismatches(&phi, &phi_display);

    // coordinates (X, Z, A, C) = (b', b, (1 + b b') c', (1 + 1/(b b')) c)
    let xx = b1;
    let zz = b;
    let aa = (1 + b * b1) * c1;
    let cc = (1 + bb1_inv) * c;
    let xz_inv = inv(p, xx * zz);
    let u_display = mat_from(
        p,
        &[
            vec![0, 0, zz],
            vec![0, -xz_inv, cc],
            vec![xx, aa, 3 + xz_inv],
        ],
    );
    bad += entry_mismatches(&phi, &u_display);
    // the target cell's defining equation
    let lhs = (1 + xz_inv) * (1 + xz_inv) * (1 + xz_inv) + aa * cc * xz_inv;
    if md(lhs, p) != 0 {
        bad += 1;
    }
    bad
}

#[allow(clippy::too_many_arguments)]
fn sp4_display(
    p: u64,
    a: i128,
    b: i128,
    c: i128,
    d: i128,
    a1: i128,
    b1: i128,
    c1: i128,
    d1: i128,
) -> Mat {
    let f1 = b * a1 * d1 + a * d * a1 * d1;
    let g1 = a * a1 + b * b1 + c * c1 + a * d * b1;
    let g2 = -a * a1 + b * b1 + 4 * d * d1 - a * b * c1 - 3 * a * d * b1 + a * a * d * c1;
    let f12 = -(c + a * b + a * a * d) * a1 * d1;
    let g12 = 2 * b * d1 + c * b1 - a * (a * a1 + b * b1 + c * c1 - 2 * d * d1 + a * d * b1);
    let f13 = -c * a1 - b * (a * a1 + b * b1 + c * c1 + 4 * d * d1) - 2 * c * d * b1
        + a * d * (a * a1 + c * c1 - 4 * d * d1 + a * d * b1);
    let g13 = -(b * b - 2 * c * d - a * a * d * d) * a1 * d1;
    let f21 = 2 * d * a1 * d1;
    let g21 = a1 + b * c1 + 2 * d * b1 - a * d * c1;
    let f31 = b1 - a * c1;
    let g31 = a1 * d1;
    let h14 = -c * (2 * a * a1 + 2 * b * b1 + c * c1)
        - 2 * b * b * d1
        - 2 * a * d * (c * b1 + 2 * b * d1 + a * d * d1);
    let h23 = -2 * b * a1 + 2 * d * (a * a1 - 2 * b * b1 - 4 * d * d1) - b * b * c1
        + a * d * (2 * b * c1 + 4 * d * b1 - a * d * c1);
    let h32 = 2 * d1 - 2 * a * b1 + a * a * c1;
    let h41 = c1;
    mat_from(
        p,
        &[
            vec![1 + f1 + g1, f12 + g12, f13 + g13, h14],
            vec![f21 + g21, 1 - f1 + g2, h23, f13 - g13],
            vec![f31 + g31, h32, 1 - f1 - g2, f12 - g12],
            vec![h41, f31 - g31, f21 - g21, 1 + f1 - g1],
        ],
    )
}

fn sp4_general(p: u64, sampler: &mut Sampler) -> u64 {
    let (a, b, c, d) = (sampler.any(), sampler.any(), sampler.any(), sampler.any());
    let (a1, b1, c1, d1) = (sampler.any(), sampler.any(), sampler.any(), sampler.any());
    let x_plus = sp4_unipotent_upper(p, md(a, p), md(b, p), md(c, p), md(d, p));
    let x_minus = sp4_unipotent_lower(p, md(a1, p), md(b1, p), md(c1, p), md(d1, p));
    let actual = phi_apply(&x_plus, &x_minus);
    let mut bad = entry_mismatches(&actual, &sp4_display(p, a, b, c, d, a1, b1, c1, d1));
    // structural sanity on the same sample
    let spec = GroupSpec::sp4(p).expect("p odd prime");
    if !is_unipotent(&actual) || !in_group(&actual, &spec) {
        bad += 1;
    }
    bad
}

fn sp4_sts_cell(p: u64, sampler: &mut Sampler, degenerate: &mut u64) -> u64 {
    let mut bad = 0;
    let (c, a, d, a1) = loop {
        let c = sampler.nonzero();
        let a = sampler.any();
        let d = sampler.any();
        let a1 = sampler.any();
        if md(1 + a * a1, p) != 0 {
            break (c, a, d, a1);
        }
        *degenerate += 1;
    };
    let e = 1 + a * a1;
    let inv_c = inv(p, c);
    let inv_e = inv(p, e);
    let inv2 = inv(p, 2);
    // derived lower-triangular coordinates
    let c1 = -inv_c;
    let d1 = -a * a * inv2 * inv_c * inv_e;
    let b1 = -a * inv_c - a1 * d1;
    let b = c * a1 - a * d;
    let x_plus = sp4_unipotent_upper(p, md(a, p), md(b, p), md(c, p), md(d, p));
    let x_minus = sp4_unipotent_lower(p, md(a1, p), md(b1, p), md(c1, p), md(d1, p));

    let v_display = mat_from(
        p,
        &[
            vec![0, 0, 0, c],
            vec![0, inv_e, 2 * e * d - c * a1 * a1, c * a1 - 2 * a * d],
            vec![0, 0, e, -a],
            vec![-inv_c, -a * inv_c * inv_e, -a1, 1],
        ],
    );
    bad += entry_mismatches(&x_plus.mul(&x_minus), &v_display);

    let phi = phi_apply(&x_plus, &x_minus);
    let phi_display = mat_from(
        p,
        &[
            vec![0, 0, 0, c],
            vec![
                0,
                inv_e,
                2 * a * d * a1 * (2 + a * a1) * inv_e - c * a1 * a1,
                2 * a * a * d * a1 - a * a * c * a1 * a1 * a1 * inv_e,
            ],
            vec![0, 0, e, a * a * a1],
            vec![
                -inv_c,
                a * a * a1 * inv_c * inv_e,
                -2 * a * a * d * a1 * inv_c * inv_e,
                3 - a * a1 - inv_e,
            ],
        ],
    );
    bad += entry_mismatches(&phi, &phi_display);

    // coordinates (X, Y, A, B, D)
    let xx = inv_c;
    let yy = inv_e;
    let aa = -a * a * a1 * inv_e;
    let bb = a * a * d * a1 * (1 + a * a1 + inv_e) - inv2 * a * a * c * a1 * a1 * a1;
    let dd = a * d * a1 * (2 + a * a1) - inv2 * c * a1 * a1 * e;
    let inv_x = inv(p, xx);
    let inv_y = inv(p, yy);
    let u_display = mat_from(
        p,
        &[
            vec![0, 0, 0, inv_x],
            vec![0, yy, 2 * yy * dd, yy * (bb - aa * dd)],
            vec![0, 0, inv_y, -aa * inv_y],
            vec![-xx, -xx * aa, -xx * (bb + aa * dd), 4 - yy - inv_y],
        ],
    );
    bad += entry_mismatches(&phi, &u_display);

    // the target cell's defining equation:
    // X A (Y (B - A D) - (1/Y)(B + A D)) = (1/Y^2)(1 - Y)^4
    let lhs = xx * aa * (yy * (bb - aa * dd) - inv_y * (bb + aa * dd));
    let rhs = inv_y * inv_y * (1 - yy) * (1 - yy) * (1 - yy) * (1 - yy);
    if md(lhs - rhs, p) != 0 {
        bad += 1;
    }
    bad
}
