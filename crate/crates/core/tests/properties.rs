//! Randomized structural laws: ring axioms, Coxeter length laws, braid/trace
//! parity, triangular factorization uniqueness, and flag-cell sizes.

use proptest::prelude::*;

use twistcheck_core::braid::BraidWord;
use twistcheck_core::coxeter::{CoxElement, CoxeterSystem};
use twistcheck_core::finfield::counts::FlagGeometry;
use twistcheck_core::finfield::flag::{enumerate_flags, relative_position, Flag};
use twistcheck_core::finfield::group::ul_factorize;
use twistcheck_core::finfield::mat::Mat;
use twistcheck_core::finfield::GroupSpec;
use twistcheck_core::hecke::{eval_braid, tau_minus_braid};
use twistcheck_core::ring::LaurentPoly;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..6).prop_map(LaurentPoly::from_pairs)
}

fn small_systems() -> Vec<CoxeterSystem> {
    vec![
        CoxeterSystem::a(1),
        CoxeterSystem::a(2),
        CoxeterSystem::a(3),
        CoxeterSystem::b(2),
        CoxeterSystem::i2(5),
    ]
}

fn arb_element() -> impl Strategy<Value = CoxElement> {
    (0usize..5, prop::collection::vec(0usize..3, 0..12)).prop_map(|(sys_idx, raw)| {
        let system = small_systems()[sys_idx];
        let mut w = system.identity();
        for r in raw {
            w = w.mul_gen(1 + r % system.rank());
        }
        w
    })
}

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (0usize..4, prop::collection::vec(0usize..3, 0..8)).prop_map(|(sys_idx, raw)| {
        let system = small_systems()[sys_idx];
        let letters = raw.into_iter().map(|r| 1 + r % system.rank()).collect();
        BraidWord::new(system, letters)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one()), a.clone());
    }

    #[test]
    fn bar_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    #[test]
    fn eval_respects_products(a in arb_poly(), b in arb_poly(), q in 1u64..6) {
        // double the exponents so evaluation at integer q is defined
        let even = |x: &LaurentPoly| {
            LaurentPoly::from_pairs(x.pairs().map(|(e, c)| (2 * e, c.clone())))
        };
        let a = even(&a);
        let b = even(&b);
        let lhs = a.mul(&b).eval_q(q).unwrap();
        let rhs = a.eval_q(q).unwrap() * b.eval_q(q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coxeter_length_law(w in arb_element(), s_raw in 0usize..3) {
        let s = 1 + s_raw % w.system().rank();
        let l0 = w.length() as i64;
        let l1 = w.mul_gen(s).length() as i64;
        prop_assert_eq!((l1 - l0).abs(), 1);
        prop_assert_eq!(w.right_descent(s), l1 < l0);
    }

    #[test]
    fn reduced_word_roundtrip(w in arb_element()) {
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        let mut x = w.system().identity();
        for s in word {
            x = x.mul_gen(s);
        }
        prop_assert_eq!(x, w.clone());
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn trace_parity(beta in arb_word()) {
        // every exponent in tau_plus/tau_minus of a word is congruent to the
        // word length mod 2
        let parity = (beta.len() % 2) as i64;
        let plus = eval_braid(&beta).tau_plus();
        let minus = tau_minus_braid(&beta);
        for (e, _) in plus.pairs() {
            prop_assert_eq!(e.rem_euclid(2), parity);
        }
        for (e, _) in minus.pairs() {
            prop_assert_eq!(e.rem_euclid(2), parity);
        }
    }

    #[test]
    fn ul_factorization_uniqueness(
        n in 2usize..4,
        p_idx in 0usize..3,
        entries in prop::collection::vec(0u64..7, 9),
    ) {
        let p = [2u64, 3, 5][p_idx];
        // build a random big-cell element from unit triangular factors
        let mut upper = Mat::identity(n, p);
        let mut lower = Mat::identity(n, p);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                upper.set(i, j, entries[k] % p);
                lower.set(j, i, entries[k + 1] % p);
                k += 2;
            }
        }
        let x = upper.mul(&lower);
        let (fu, fl) = ul_factorize(&x).unwrap();
        prop_assert_eq!(&fu, &upper);
        prop_assert_eq!(&fl, &lower);
        prop_assert_eq!(fu.mul(&fl), x);
    }

    #[test]
    fn flag_cells_have_size_q_to_length(
        geom_idx in 0usize..4,
        flag_sel in 0usize..1000,
        w_sel in 0usize..720,
    ) {
        let (n, p) = [(2usize, 2u64), (2, 3), (3, 2), (3, 3)][geom_idx];
        let flags = enumerate_flags(n, p).unwrap();
        let base = &flags[flag_sel % flags.len()];
        let weyl = CoxeterSystem::a(n - 1);
        let all = weyl.enumerate().unwrap();
        let w = &all[w_sel % all.len()];
        let count = flags
            .iter()
            .filter(|f| relative_position(base, f).unwrap() == *w)
            .count() as u128;
        prop_assert_eq!(count, (p as u128).pow(w.length() as u32));
    }
}

proptest! {
    // heavier laws get fewer cases but the same exactness
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_slice_of_twisted_chains_is_the_plain_count(
        len in 0usize..5,
        p_idx in 0usize..2,
    ) {
        // the unipotent-twisted count restricted to u = I is exactly the
        // untwisted configuration count
        let p = [2u64, 3][p_idx];
        let spec = GroupSpec::gl(2, p).unwrap();
        let beta = BraidWord::new(spec.weyl_system(), vec![1; len]);
        let geometry = FlagGeometry::new(&spec).unwrap();
        let identity_only = vec![Mat::identity(2, p)];
        prop_assert_eq!(
            geometry.count_u_beta(&beta, &identity_only).unwrap(),
            geometry.count_x_beta(&beta)
        );
    }
}

#[test]
fn ul_rejects_non_big_cell_points() {
    // trailing principal minor != 1 blocks factorization (n = 2 criterion)
    let p = 3;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = Mat::from_rows(p, &[&[a as i64, b as i64], &[c as i64, d as i64]]);
                    let in_cell = d == 1 && m.det() == 1;
                    assert_eq!(ul_factorize(&m).is_ok(), in_cell, "{m}");
                }
            }
        }
    }
}

#[test]
fn canonical_flags_are_stable_under_borel_translation() {
    let p = 3;
    let spec = GroupSpec::gl(2, p).unwrap();
    let borel = twistcheck_core::finfield::group::enumerate_borel(&spec).unwrap();
    for f in enumerate_flags(2, p).unwrap() {
        for b in &borel {
            let moved = Flag::from_matrix(&f.rep().mul(b)).unwrap();
            assert_eq!(moved, f);
        }
    }
}
