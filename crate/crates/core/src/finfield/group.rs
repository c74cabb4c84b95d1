//! Group membership, triangular factorizations, Weyl lifts, Borel
//! enumeration, and the conjugation-retraction map on the big cell.

use crate::coxeter::CoxElement;
use crate::rng::SplitMix64;

use super::mat::{inv_mod, neg_mod, Mat};
use super::{FinFieldError, GroupFamily, GroupSpec};

/// Budget for full Borel-coset scans.
pub const COSET_BUDGET: u128 = 1 << 22;

/// True when `(g - I)^n = 0`. Characteristic-free, unlike trace criteria.
pub fn is_unipotent(g: &Mat) -> bool {
    let n = g.n();
    let nilpart = g.sub(&Mat::identity(n, g.p()));
    nilpart.pow(n as u32).is_zero()
}

/// The antidiagonal Gram matrix of the symplectic form for `Sp_4`:
/// antidiagonal `(1, 1, -1, -1)`.
pub fn sp4_gram(p: u64) -> Mat {
    Mat::from_rows(
        p,
        &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, -1, 0, 0], &[-1, 0, 0, 0]],
    )
}

pub fn in_group(g: &Mat, spec: &GroupSpec) -> bool {
    if g.n() != spec.n() || g.p() != spec.p() {
        return false;
    }
    match spec.family() {
        GroupFamily::Gl => g.is_invertible(),
        GroupFamily::Sl => g.det() == 1,
        GroupFamily::Sp4 => {
            let j = sp4_gram(g.p());
            g.transpose().mul(&j).mul(g) == j
        }
    }
}

/// Unique factorization `x = x_plus * x_minus` with `x_plus` unit-upper and
/// `x_minus` unit-lower triangular, by progressive column elimination from
/// the bottom-right. Fails with `NotInBigCell` when no such factorization
/// exists.
pub fn ul_factorize(x: &Mat) -> Result<(Mat, Mat), FinFieldError> {
    let n = x.n();
    let p = x.p();
    let mut lower = x.clone();
    let mut upper = Mat::identity(n, p);
    for j in (0..n).rev() {
        if lower.get(j, j) != 1 {
            return Err(FinFieldError::NotInBigCell);
        }
        for i in 0..j {
            let m = lower.get(i, j);
            if m == 0 {
                continue;
            }
            // row_i -= m * row_j on the left factor; record m in x_plus.
            for k in 0..n {
                let v = (lower.get(i, k) + neg_mod(m * lower.get(j, k) % p, p)) % p;
                lower.set(i, k, v);
            }
            upper.set(i, j, m);
        }
    }
    debug_assert!(upper.is_unit_upper_triangular());
    debug_assert!(lower.is_unit_lower_triangular());
    debug_assert_eq!(upper.mul(&lower), *x);
    Ok((upper, lower))
}

/// Writes an invertible upper-triangular `x` as `u * t` with `u` unit-upper
/// and `t` the diagonal part.
pub fn decompose_borel(x: &Mat) -> Result<(Mat, Mat), FinFieldError> {
    if !x.is_upper_triangular() {
        return Err(FinFieldError::NotUpperTriangular);
    }
    let n = x.n();
    let p = x.p();
    let diag: Vec<u64> = (0..n).map(|i| x.get(i, i)).collect();
    if diag.contains(&0) {
        return Err(FinFieldError::Singular);
    }
    let t = Mat::diagonal(p, &diag);
    // u = x t^{-1}: scaling column j by d_j^{-1} makes the diagonal 1.
    let mut u = x.clone();
    for (j, &d) in diag.iter().enumerate() {
        u.scale_col(j, inv_mod(d, p).unwrap());
    }
    debug_assert!(u.is_unit_upper_triangular());
    debug_assert_eq!(u.mul(&t), *x);
    Ok((u, t))
}

/// The retraction `x_plus x_minus -> x_plus x_minus x_plus^{-1}`.
/// The result is unipotent, and stays in `g B+` whenever the input does.
pub fn phi_apply(x_plus: &Mat, x_minus: &Mat) -> Mat {
    debug_assert!(x_plus.is_unit_upper_triangular());
    debug_assert!(x_minus.is_unit_lower_triangular());
    let inv = x_plus
        .inv()
        .expect("unit triangular matrices are invertible");
    x_plus.mul(x_minus).mul(&inv)
}

/// The Borel action on the big-cell slice: for `b = t u` (torus part times
/// unit-upper part) and `x = x_plus x_minus`,
/// `b . x = (t u x_plus t^{-1}) (t x_minus t^{-1})`, which equals
/// `b x t^{-1}`. Conjugating the retraction by `b` intertwines this action.
pub fn action_vg(b: &Mat, x: &Mat, g: &Mat) -> Result<Mat, FinFieldError> {
    // b must lie in H_g = B+ n g B+ g^{-1}.
    if !b.is_upper_triangular() || !b.is_invertible() {
        return Err(FinFieldError::NotInHg);
    }
    let g_inv = g.inv().map_err(|_| FinFieldError::Singular)?;
    if !g_inv.mul(b).mul(g).is_upper_triangular() {
        return Err(FinFieldError::NotInHg);
    }
    // x must lie in the big cell and in g B+.
    let (x_plus, x_minus) = ul_factorize(x)?;
    if !g_inv.mul(x).is_upper_triangular() {
        return Err(FinFieldError::NotInCoset);
    }
    // torus-first decomposition b = t u
    let t = Mat::diagonal(b.p(), &(0..b.n()).map(|i| b.get(i, i)).collect::<Vec<_>>());
    let t_inv = t.inv().expect("invertible diagonal");
    let u = t_inv.mul(b);
    debug_assert!(u.is_unit_upper_triangular());
    let out = t
        .mul(&u)
        .mul(&x_plus)
        .mul(&t_inv)
        .mul(&t.mul(&x_minus).mul(&t_inv));
    debug_assert_eq!(out, b.mul(x).mul(&t_inv));
    Ok(out)
}

/// Upper unipotent of `Sp_4` in the coordinates `(a, b, c, d)`.
pub fn sp4_unipotent_upper(p: u64, a: u64, b: u64, c: u64, d: u64) -> Mat {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    Mat::from_rows(
        p,
        &[
            &[1, a, b + a * d, c],
            &[0, 1, 2 * d, b - a * d],
            &[0, 0, 1, -a],
            &[0, 0, 0, 1],
        ],
    )
}

/// Lower unipotent of `Sp_4` in the coordinates `(a', b', c', d')`.
pub fn sp4_unipotent_lower(p: u64, a: u64, b: u64, c: u64, d: u64) -> Mat {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    Mat::from_rows(
        p,
        &[
            &[1, 0, 0, 0],
            &[a, 1, 0, 0],
            &[b + a * d, 2 * d, 1, 0],
            &[c, b - a * d, -a, 1],
        ],
    )
}

fn sp4_gen_s(p: u64) -> Mat {
    Mat::from_rows(
        p,
        &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
    )
}

fn sp4_gen_t(p: u64) -> Mat {
    Mat::from_rows(
        p,
        &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 0], &[0, 0, 0, 1]],
    )
}

/// A deterministic torus-normalizing lift of a Weyl group element.
///
/// - `GL_n`: the permutation matrix with column `j` equal to `e_{w(j)}`.
/// - `SL_n`: the same with the last column negated when the permutation is
///   odd.
/// - `Sp_4`: the product of the fixed symplectic generator lifts along the
///   reduced word of `w`.
pub fn weyl_lift(w: &CoxElement, spec: &GroupSpec) -> Mat {
    assert_eq!(
        w.system(),
        spec.weyl_system(),
        "element belongs to the wrong Weyl group for {spec:?}"
    );
    let p = spec.p();
    match spec.family() {
        GroupFamily::Gl | GroupFamily::Sl => {
            let n = spec.n();
            let perm = w.permutation().expect("type A element");
            let mut m = Mat::zero(n, p);
            for (j, &image) in perm.iter().enumerate() {
                m.set(image - 1, j, 1);
            }
            if spec.family() == GroupFamily::Sl && w.length() % 2 == 1 {
                m.scale_col(n - 1, p - 1);
            }
            m
        }
        GroupFamily::Sp4 => {
            let mut m = Mat::identity(4, p);
            for s in w.reduced_word() {
                let gen = match s {
                    1 => sp4_gen_s(p),
                    2 => sp4_gen_t(p),
                    _ => unreachable!("I2 has two generators"),
                };
                m = m.mul(&gen);
            }
            debug_assert!(in_group(&m, spec));
            m
        }
    }
}

/// All torus elements of the group, as diagonal matrices.
pub fn enumerate_torus(spec: &GroupSpec) -> Vec<Mat> {
    let p = spec.p();
    let n = spec.n();
    let units: Vec<u64> = (1..p).collect();
    let mut out = Vec::new();
    match spec.family() {
        GroupFamily::Gl => {
            let mut idx = vec![0usize; n];
            loop {
                let entries: Vec<u64> = idx.iter().map(|&i| units[i]).collect();
                out.push(Mat::diagonal(p, &entries));
                if !increment_counter(&mut idx, units.len()) {
                    break;
                }
            }
        }
        GroupFamily::Sl => {
            let mut idx = vec![0usize; n - 1];
            loop {
                let mut entries: Vec<u64> = idx.iter().map(|&i| units[i]).collect();
                let prod = entries.iter().fold(1u64, |acc, &t| acc * t % p);
                entries.push(inv_mod(prod, p).unwrap());
                out.push(Mat::diagonal(p, &entries));
                if !increment_counter(&mut idx, units.len()) {
                    break;
                }
            }
        }
        GroupFamily::Sp4 => {
            for &t1 in &units {
                for &t2 in &units {
                    out.push(Mat::diagonal(
                        p,
                        &[t1, t2, inv_mod(t2, p).unwrap(), inv_mod(t1, p).unwrap()],
                    ));
                }
            }
        }
    }
    out
}

/// All elements of the unipotent radical `U_+` of the group.
pub fn enumerate_unipotent_upper(spec: &GroupSpec) -> Vec<Mat> {
    let p = spec.p();
    let n = spec.n();
    let mut out = Vec::new();
    match spec.family() {
        GroupFamily::Gl | GroupFamily::Sl => {
            let positions: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let mut idx = vec![0usize; positions.len()];
            loop {
                let mut m = Mat::identity(n, p);
                for (k, &(i, j)) in positions.iter().enumerate() {
                    m.set(i, j, idx[k] as u64);
                }
                out.push(m);
                if !increment_counter(&mut idx, p as usize) {
                    break;
                }
            }
        }
        GroupFamily::Sp4 => {
            let mut idx = vec![0usize; 4];
            loop {
                let (a, b, c, d) = (idx[0] as u64, idx[1] as u64, idx[2] as u64, idx[3] as u64);
                out.push(sp4_unipotent_upper(p, a, b, c, d));
                if !increment_counter(&mut idx, p as usize) {
                    break;
                }
            }
        }
    }
    out
}

/// All elements of the Borel subgroup `B_+ = U_+ T` of the group.
pub fn enumerate_borel(spec: &GroupSpec) -> Result<Vec<Mat>, FinFieldError> {
    let size = spec.borel_order();
    if size > COSET_BUDGET {
        return Err(FinFieldError::SizeBound {
            size,
            budget: COSET_BUDGET,
        });
    }
    let torus = enumerate_torus(spec);
    let unipotent = enumerate_unipotent_upper(spec);
    let mut out = Vec::with_capacity(torus.len() * unipotent.len());
    for u in &unipotent {
        for t in &torus {
            out.push(u.mul(t));
        }
    }
    debug_assert_eq!(out.len() as u128, size);
    Ok(out)
}

/// The coset `g B_+(F_p)`, one matrix per point.
pub fn enumerate_borel_coset(g: &Mat, spec: &GroupSpec) -> Result<Vec<Mat>, FinFieldError> {
    let borel = enumerate_borel(spec)?;
    Ok(borel.iter().map(|b| g.mul(b)).collect())
}

/// All unipotent elements of `GL_n`/`SL_n` (they coincide), as `I + N` over
/// nilpotent `N`, found by scanning all matrices.
pub fn enumerate_unipotents(spec: &GroupSpec) -> Result<Vec<Mat>, FinFieldError> {
    if spec.family() == GroupFamily::Sp4 {
        return Err(FinFieldError::InvalidSpec(
            "unipotent enumeration is implemented for GL/SL only".into(),
        ));
    }
    let n = spec.n();
    let p = spec.p();
    let size = (p as u128).pow((n * n) as u32);
    if size > COSET_BUDGET {
        return Err(FinFieldError::SizeBound {
            size,
            budget: COSET_BUDGET,
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n * n];
    loop {
        let mut m = Mat::zero(n, p);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, idx[i * n + j] as u64);
            }
        }
        if m.pow(n as u32).is_zero() {
            out.push(m.add(&Mat::identity(n, p)));
        }
        if !increment_counter(&mut idx, p as usize) {
            break;
        }
    }
    Ok(out)
}

/// `H_g = B_+ \cap g B_+ g^{-1}`, by filtering the Borel on conjugation.
pub fn enumerate_hg(g: &Mat, spec: &GroupSpec) -> Result<Vec<Mat>, FinFieldError> {
    let g_inv = g.inv().map_err(|_| FinFieldError::Singular)?;
    Ok(enumerate_borel(spec)?
        .into_iter()
        .filter(|b| g_inv.mul(b).mul(g).is_upper_triangular())
        .collect())
}

/// A seeded random element of the Bruhat cell `U_+ w B_+(F_p)`.
pub fn sample_bruhat_cell(w: &CoxElement, spec: &GroupSpec, rng: &mut SplitMix64) -> Mat {
    let p = spec.p();
    let n = spec.n();
    let lift = weyl_lift(w, spec);
    // random unit upper
    let mut u = Mat::identity(n, p);
    for i in 0..n {
        for j in i + 1..n {
            u.set(i, j, rng.below(p));
        }
    }
    // random Borel element of the group
    let torus = enumerate_torus(spec);
    let t = torus[rng.below(torus.len() as u64) as usize].clone();
    let mut u2 = Mat::identity(n, p);
    match spec.family() {
        GroupFamily::Gl | GroupFamily::Sl => {
            for i in 0..n {
                for j in i + 1..n {
                    u2.set(i, j, rng.below(p));
                }
            }
        }
        GroupFamily::Sp4 => {
            u2 = sp4_unipotent_upper(p, rng.below(p), rng.below(p), rng.below(p), rng.below(p));
        }
    }
    u.mul(&lift).mul(&u2).mul(&t)
}

pub(crate) fn increment_counter(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotence() {
        assert!(is_unipotent(&Mat::identity(2, 5)));
        assert!(!is_unipotent(&Mat::diagonal(5, &[1, 2])));
        assert!(is_unipotent(&Mat::from_rows(5, &[&[1, 1], &[0, 1]])));
    }

    #[test]
    fn membership() {
        let sl2 = GroupSpec::sl(2, 5).unwrap();
        assert!(in_group(&Mat::identity(2, 5), &sl2));
        assert!(!in_group(&Mat::diagonal(5, &[2, 1]), &sl2));
        let sp4 = GroupSpec::sp4(3).unwrap();
        assert!(in_group(&Mat::identity(4, 3), &sp4));
        // J itself: J^t J J = J fails iff J^t J != I; direct check
        let j = sp4_gram(3);
        let expected = j.transpose().mul(&j).mul(&j) == j;
        assert_eq!(in_group(&j, &sp4), expected);
    }

    #[test]
    fn ul_factorization() {
        let x = Mat::from_rows(3, &[&[2, 1], &[1, 1]]);
        let (up, lo) = ul_factorize(&x).unwrap();
        assert_eq!(up, Mat::from_rows(3, &[&[1, 1], &[0, 1]]));
        assert_eq!(lo, Mat::from_rows(3, &[&[1, 0], &[1, 1]]));
        assert_eq!(up.mul(&lo), x);

        let rot = Mat::from_rows(3, &[&[0, -1], &[1, 0]]);
        assert_eq!(ul_factorize(&rot), Err(FinFieldError::NotInBigCell));

        let id = Mat::identity(2, 3);
        assert_eq!(ul_factorize(&id).unwrap(), (id.clone(), id));
    }

    #[test]
    fn ul_uniqueness_exhaustive_n2_p3() {
        // whenever factorization succeeds, no other unit pair multiplies back
        let p = 3;
        let pairs: Vec<(Mat, Mat)> = (0..p)
            .flat_map(|b| {
                (0..p).map(move |c| {
                    (
                        Mat::from_rows(p as u64, &[&[1, b], &[0, 1]]),
                        Mat::from_rows(p as u64, &[&[1, 0], &[c, 1]]),
                    )
                })
            })
            .collect();
        for (up, lo) in &pairs {
            let x = up.mul(lo);
            let (fu, fl) = ul_factorize(&x).unwrap();
            assert_eq!((&fu, &fl), (up, lo));
            let mut found = 0;
            for (u2, l2) in &pairs {
                if u2.mul(l2) == x {
                    found += 1;
                }
            }
            assert_eq!(found, 1);
        }
    }

    #[test]
    fn borel_decomposition() {
        // x = u t with u unit-upper first: u = x t^{-1}
        let x = Mat::from_rows(5, &[&[2, 2], &[0, 1]]);
        let (u, t) = decompose_borel(&x).unwrap();
        assert_eq!(t, Mat::diagonal(5, &[2, 1]));
        assert_eq!(u, Mat::from_rows(5, &[&[1, 2], &[0, 1]]));
        assert_eq!(u.mul(&t), x);
        let d = Mat::diagonal(5, &[2, 3]);
        assert_eq!(
            decompose_borel(&d).unwrap(),
            (Mat::identity(2, 5), d.clone())
        );
        let uu = Mat::from_rows(5, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            decompose_borel(&uu).unwrap(),
            (uu.clone(), Mat::identity(2, 5))
        );
        let lower = Mat::from_rows(5, &[&[1, 0], &[1, 1]]);
        assert_eq!(
            decompose_borel(&lower),
            Err(FinFieldError::NotUpperTriangular)
        );
    }

    #[test]
    fn phi_small_cases() {
        let p = 7;
        let id = Mat::identity(2, p);
        let lo = Mat::from_rows(p, &[&[1, 0], &[3, 1]]);
        assert_eq!(phi_apply(&id, &lo), lo);
        let up = Mat::from_rows(p, &[&[1, 4], &[0, 1]]);
        assert_eq!(phi_apply(&up, &id), id);
        // the 2x2 closed form [[1+bb', -b^2 b'],[b', 1-bb']]
        let b = 4i64;
        let bp = 3i64;
        let expect = Mat::from_rows(p, &[&[1 + b * bp, -b * b * bp], &[bp, 1 - b * bp]]);
        let lo = Mat::from_rows(p, &[&[1, 0], &[bp, 1]]);
        assert_eq!(phi_apply(&up, &lo), expect);
        assert!(is_unipotent(&phi_apply(&up, &lo)));
    }

    #[test]
    fn weyl_lift_shapes() {
        let gl2 = GroupSpec::gl(2, 5).unwrap();
        let a1 = gl2.weyl_system();
        assert_eq!(weyl_lift(&a1.identity(), &gl2), Mat::identity(2, 5));
        assert_eq!(
            weyl_lift(&a1.generator(1), &gl2),
            Mat::from_rows(5, &[&[0, 1], &[1, 0]])
        );
        let sl2 = GroupSpec::sl(2, 5).unwrap();
        let lift = weyl_lift(&a1.generator(1), &sl2);
        assert_eq!(lift.det(), 1);
        assert_eq!(lift, Mat::from_rows(5, &[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn sp4_lifts_are_symplectic_and_match_display() {
        let sp4 = GroupSpec::sp4(3).unwrap();
        let i24 = sp4.weyl_system();
        for w in i24.enumerate().unwrap() {
            let lift = weyl_lift(&w, &sp4);
            assert!(in_group(&lift, &sp4), "lift of {w} not symplectic");
            // normalizes the torus
            for t in enumerate_torus(&sp4) {
                let conj = lift.mul(&t).mul(&lift.inv().unwrap());
                assert!(conj.is_diagonal());
            }
        }
        // s t s is the displayed monomial matrix
        let sts = i24
            .generator(1)
            .mul(&i24.generator(2))
            .unwrap()
            .mul(&i24.generator(1))
            .unwrap();
        let expect = Mat::from_rows(
            3,
            &[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[-1, 0, 0, 0]],
        );
        assert_eq!(weyl_lift(&sts, &sp4), expect);
    }

    #[test]
    fn borel_sizes() {
        assert_eq!(
            enumerate_borel(&GroupSpec::gl(2, 2).unwrap())
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_borel(&GroupSpec::sl(2, 3).unwrap())
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_borel(&GroupSpec::sp4(3).unwrap()).unwrap().len(),
            324
        );
        // coset points are pairwise distinct
        let spec = GroupSpec::sl(2, 3).unwrap();
        let w0 = weyl_lift(&spec.weyl_system().w0(), &spec);
        let coset = enumerate_borel_coset(&w0, &spec).unwrap();
        let set: std::collections::BTreeSet<_> = coset.iter().cloned().collect();
        assert_eq!(set.len(), coset.len());
    }

    #[test]
    fn sp4_borel_is_symplectic() {
        let spec = GroupSpec::sp4(3).unwrap();
        for b in enumerate_borel(&spec).unwrap() {
            assert!(in_group(&b, &spec));
            assert!(b.is_upper_triangular());
        }
    }

    #[test]
    fn sp4_lower_unipotents_are_symplectic() {
        let spec = GroupSpec::sp4(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let m = sp4_unipotent_lower(3, a, b, c, d);
                        assert!(in_group(&m, &spec), "{m}");
                        assert!(m.is_unit_lower_triangular());
                    }
                }
            }
        }
    }

    #[test]
    fn symplectic_factors_stay_symplectic() {
        // when a symplectic coset point factors, both triangular factors are
        // themselves symplectic
        let spec = GroupSpec::sp4(3).unwrap();
        let mut factored = 0;
        for w in spec.weyl_system().enumerate().unwrap() {
            let g = weyl_lift(&w, &spec);
            for x in enumerate_borel_coset(&g, &spec).unwrap() {
                if let Ok((up, lo)) = ul_factorize(&x) {
                    assert!(in_group(&up, &spec));
                    assert!(in_group(&lo, &spec));
                    factored += 1;
                }
            }
        }
        assert!(factored > 0);
    }

    #[test]
    fn nilpotency_matches_trace_criteria_in_good_characteristic() {
        // for SL3 over F_p with p >= 5, (g - I)^3 = 0 iff tr g = 3 and
        // tr g^2 = 3
        let p = 5u64;
        let spec = GroupSpec::sl(3, p).unwrap();
        let tr = |m: &Mat| (0..3).map(|i| m.get(i, i)).sum::<u64>() % p;
        let mut agree = 0u64;
        for w in spec.weyl_system().enumerate().unwrap() {
            let g = weyl_lift(&w, &spec);
            for x in enumerate_borel_coset(&g, &spec).unwrap() {
                let by_traces = tr(&x) == 3 % p && tr(&x.mul(&x)) == 3 % p;
                assert_eq!(is_unipotent(&x), by_traces, "{x}");
                agree += 1;
            }
        }
        // seeded random SL3 elements round out the coset sweep
        let mut rng = crate::rng::SplitMix64::new(99);
        let mut found = 0;
        while found < 5000 {
            let mut m = Mat::zero(3, p);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, rng.below(p));
                }
            }
            let det = m.det();
            if det == 0 {
                continue;
            }
            // rescale one row to land in SL3
            let fix = inv_mod(det, p).unwrap();
            for j in 0..3 {
                m.set(0, j, m.get(0, j) * fix % p);
            }
            let by_traces = tr(&m) == 3 && tr(&m.mul(&m)) == 3;
            assert_eq!(is_unipotent(&m), by_traces, "{m}");
            found += 1;
        }
        assert!(agree > 0);
    }

    #[test]
    fn unipotent_counts_match_steinberg() {
        // q^{n(n-1)}
        assert_eq!(
            enumerate_unipotents(&GroupSpec::gl(2, 2).unwrap())
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            enumerate_unipotents(&GroupSpec::gl(2, 3).unwrap())
                .unwrap()
                .len(),
            9
        );
        assert_eq!(
            enumerate_unipotents(&GroupSpec::gl(3, 2).unwrap())
                .unwrap()
                .len(),
            64
        );
    }

    #[test]
    fn hg_for_longest_element_is_torus() {
        let spec = GroupSpec::gl(2, 3).unwrap();
        let w0 = weyl_lift(&spec.weyl_system().w0(), &spec);
        let hg = enumerate_hg(&w0, &spec).unwrap();
        assert_eq!(hg.len(), 4); // (q-1)^2
        assert!(hg.iter().all(|b| b.is_diagonal()));
        let id = Mat::identity(2, 3);
        assert_eq!(enumerate_hg(&id, &spec).unwrap().len(), 12); // whole Borel
    }

    #[test]
    fn action_examples() {
        let spec = GroupSpec::sl(2, 3).unwrap();
        let g = weyl_lift(&spec.weyl_system().w0(), &spec);
        // x in V_g: from the coset scan
        let x = enumerate_borel_coset(&g, &spec)
            .unwrap()
            .into_iter()
            .find(|x| ul_factorize(x).is_ok())
            .unwrap();
        let id = Mat::identity(2, 3);
        assert_eq!(action_vg(&id, &x, &g).unwrap(), x);
        // torus acts by conjugation
        for t in enumerate_torus(&spec) {
            let lhs = action_vg(&t, &x, &g).unwrap();
            assert_eq!(lhs, t.mul(&x).mul(&t.inv().unwrap()));
        }
        // a non-H_g element is rejected
        let u = Mat::from_rows(3, &[&[1, 1], &[0, 1]]);
        assert_eq!(action_vg(&u, &x, &g), Err(FinFieldError::NotInHg));
    }
}
