//! Acceptance suite: the full identity grid, one test per criterion.
//!
//! Each test prints a single `criterion NN <name>: PASS [...]` line (visible
//! under `--nocapture`) and asserts exact equality everywhere — there are no
//! tolerances anywhere in this crate.

use std::time::{Duration, Instant};

use twistcheck_core::braid::{words_up_to, BraidWord};
use twistcheck_core::coxeter::CoxeterSystem;
use twistcheck_core::finfield::closed_form::{closed_form_check, ClosedFormCase};
use twistcheck_core::finfield::counts::{
    bruhat_constancy_check, cor_check, count_ug, count_vg, hecke_count_check, kawanaka_check,
    prop44_check, steinberg_check, CountSign,
};
use twistcheck_core::finfield::flag::{enumerate_flags, relative_position};
use twistcheck_core::finfield::group::{ul_factorize, weyl_lift};
use twistcheck_core::finfield::maps::vx_bijection_check;
use twistcheck_core::finfield::mat::Mat;
use twistcheck_core::finfield::{CountValue, GroupSpec};
use twistcheck_core::hecke::{eval_braid, tau_minus_braid, twist_check};
use twistcheck_core::homfly::{extreme_coeff, kalman_check, Sign};
use twistcheck_core::ring::LaurentPoly;
use twistcheck_core::rng::SplitMix64;

fn finish(number: u32, name: &str, details: String, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!(
        "criterion {number:02} {name}: PASS [{details}; {:.2}s of {:.0}s budget]",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn sweep_systems() -> Vec<CoxeterSystem> {
    vec![
        CoxeterSystem::a(1),
        CoxeterSystem::a(2),
        CoxeterSystem::b(2),
        CoxeterSystem::i2(5),
    ]
}

fn random_a3_words(count: usize, max_len: usize, seed: u64) -> Vec<BraidWord> {
    let system = CoxeterSystem::a(3);
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let len = rng.below(max_len as u64 + 1) as usize;
            let letters = (0..len).map(|_| 1 + rng.below(3) as usize).collect();
            BraidWord::new(system, letters)
        })
        .collect()
}

#[test]
fn criterion_01_twist_theorem() {
    let start = Instant::now();
    let mut words = 0usize;
    for system in sweep_systems() {
        for beta in words_up_to(system, 6) {
            let report = twist_check(&beta);
            assert!(report.pass, "twist failed at {beta} over {system:?}");
            words += 1;
        }
    }
    for beta in random_a3_words(200, 12, 0xA3) {
        let report = twist_check(&beta);
        assert!(report.pass, "twist failed at {beta} over A(3)");
        words += 1;
    }
    finish(
        1,
        "twist-theorem",
        format!("{words} words"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_02_tau_minus_oracle() {
    let start = Instant::now();
    let mut words = 0usize;
    for system in sweep_systems() {
        for beta in words_up_to(system, 6) {
            let by_braid = tau_minus_braid(&beta);
            let by_oracle = eval_braid(&beta).tau_minus_oracle().unwrap();
            assert_eq!(
                by_braid, by_oracle,
                "oracle mismatch at {beta} over {system:?}"
            );
            words += 1;
        }
    }
    finish(
        2,
        "tau-minus-oracle",
        format!("{words} words"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_03_kalman_identity() {
    let start = Instant::now();
    let a2 = CoxeterSystem::a(2);
    let mut words = 0usize;
    for beta in words_up_to(a2, 5) {
        assert!(kalman_check(&beta).pass, "kalman failed at {beta}");
        words += 1;
    }
    let a1 = CoxeterSystem::a(1);
    for k in 0..=5usize {
        let beta = BraidWord::new(a1, vec![1; 2 * k + 1]);
        assert!(
            kalman_check(&beta).pass,
            "kalman failed at torus braid k={k}"
        );
        words += 1;
    }
    // the trefoil's extreme coefficient is exactly q + q^{-1}
    let trefoil = BraidWord::new(a1, vec![1, 1, 1]);
    let coeff = extreme_coeff(&trefoil, Sign::Minus);
    assert_eq!(
        coeff.exact_value().unwrap(),
        LaurentPoly::from_pairs([(2, 1), (-2, 1)])
    );
    finish(
        3,
        "kalman-identity",
        format!("{words} words"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_04_kawanaka_identity() {
    let start = Instant::now();
    let mut checks = 0usize;

    let mut grid: Vec<GroupSpec> = Vec::new();
    for p in [2u64, 3, 5, 7] {
        grid.push(GroupSpec::sl(2, p).unwrap());
    }
    for p in [2u64, 3] {
        grid.push(GroupSpec::sl(3, p).unwrap());
        grid.push(GroupSpec::gl(3, p).unwrap());
    }
    grid.push(GroupSpec::sp4(3).unwrap());

    for spec in grid {
        for w in spec.weyl_system().enumerate().unwrap() {
            let report = kawanaka_check(&spec, &w).unwrap();
            assert!(report.pass, "{report}");
            checks += 1;
        }
    }

    // pinned values: the longest-cell count for SL2 is p - 1
    for p in [2u64, 3, 5, 7] {
        let spec = GroupSpec::sl(2, p).unwrap();
        let g = weyl_lift(&spec.weyl_system().w0(), &spec);
        assert_eq!(count_ug(&g, &spec).unwrap(), (p - 1) as u128);
        assert_eq!(count_vg(&g, &spec).unwrap(), (p - 1) as u128);
    }
    // and the SL3 longest cell at p = 2 has exactly 3 points
    let spec = GroupSpec::sl(3, 2).unwrap();
    let g = weyl_lift(&spec.weyl_system().w0(), &spec);
    assert_eq!(count_ug(&g, &spec).unwrap(), 3);

    finish(
        4,
        "kawanaka-identity",
        format!("{checks} cosets"),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_05_steinberg_identity() {
    let start = Instant::now();
    let mut checks = 0usize;
    for n in [2usize, 3] {
        for p in [2u64, 3] {
            let report = steinberg_check(&GroupSpec::gl(n, p).unwrap()).unwrap();
            assert!(report.pass, "{report}");
            checks += 1;
        }
    }
    finish(
        5,
        "steinberg-identity",
        format!("{checks} scans"),
        start,
        Duration::from_secs(30),
    );
}

fn cor_grid() -> Vec<(GroupSpec, Vec<BraidWord>)> {
    let mut grid = Vec::new();
    for p in [2u64, 3] {
        let spec = GroupSpec::gl(2, p).unwrap();
        grid.push((spec, words_up_to(spec.weyl_system(), 3)));
    }
    let spec = GroupSpec::gl(3, 2).unwrap();
    let mut words = words_up_to(spec.weyl_system(), 3);
    for w in spec.weyl_system().enumerate().unwrap() {
        words.push(BraidWord::of_element(&w));
    }
    grid.push((spec, words));
    grid
}

#[test]
fn criterion_06_u_equals_x_twist() {
    let start = Instant::now();
    let mut checks = 0usize;
    for (spec, words) in cor_grid() {
        for beta in words {
            let report = cor_check(&beta, &spec).unwrap();
            assert!(report.pass, "{report}");
            checks += 1;
        }
    }
    finish(
        6,
        "u-equals-x-twist",
        format!("{checks} braids"),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_07_hecke_point_count_formulas() {
    let start = Instant::now();
    let mut checks = 0usize;
    for (spec, words) in cor_grid() {
        for beta in words {
            for sign in [CountSign::Minus, CountSign::Plus] {
                let report = hecke_count_check(&beta, &spec, sign).unwrap();
                assert!(report.pass, "{report}");
                checks += 1;
            }
        }
    }
    // the pinned instance: GL2, beta = sigma_1, p = 2 gives 6 = 6
    let spec = GroupSpec::gl(2, 2).unwrap();
    let beta = BraidWord::new(spec.weyl_system(), vec![1]);
    let report = hecke_count_check(&beta, &spec, CountSign::Minus).unwrap();
    assert_eq!(report.lhs, CountValue::from_u128(6));
    assert_eq!(report.rhs, CountValue::from_u128(6));
    finish(
        7,
        "hecke-point-counts",
        format!("{checks} formulas"),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_08_quotient_identities() {
    let start = Instant::now();
    let mut checks = 0usize;
    for spec in [GroupSpec::gl(2, 2).unwrap(), GroupSpec::gl(3, 2).unwrap()] {
        for w in spec.weyl_system().enumerate().unwrap() {
            for report in prop44_check(&w, &spec).unwrap() {
                assert!(report.pass, "{report}");
                checks += 1;
            }
        }
    }
    finish(
        8,
        "quotient-identities",
        format!("{checks} identities"),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_09_vx_bijection() {
    let start = Instant::now();
    let mut checks = 0usize;
    let mut grid: Vec<GroupSpec> = Vec::new();
    for p in [2u64, 3, 5] {
        grid.push(GroupSpec::sl(2, p).unwrap());
    }
    grid.push(GroupSpec::sl(3, 2).unwrap());
    grid.push(GroupSpec::gl(3, 2).unwrap());
    for spec in grid {
        let equivariance = spec.p() == 2;
        for w in spec.weyl_system().enumerate().unwrap() {
            let report = vx_bijection_check(&spec, &w, equivariance).unwrap();
            assert!(report.pass, "{report}");
            checks += 1;
        }
    }
    finish(
        9,
        "vx-bijection",
        format!("{checks} cosets"),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_10_closed_form_displays() {
    let start = Instant::now();
    for case in ClosedFormCase::all() {
        let report = closed_form_check(case, 101, 1000, 2024).unwrap();
        assert!(report.pass, "{report}");
        assert_eq!(
            report.lhs,
            CountValue::from_u128(0),
            "mismatched entries in {case:?}"
        );
    }
    finish(
        10,
        "closed-form-displays",
        "5 cases x 1000 samples".to_string(),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_11_bruhat_constancy() {
    let start = Instant::now();
    let mut checks = 0usize;
    for p in [2u64, 3] {
        for spec in [GroupSpec::gl(3, p).unwrap(), GroupSpec::sl(3, p).unwrap()] {
            for w in spec.weyl_system().enumerate().unwrap() {
                let report = bruhat_constancy_check(&w, &spec, 5, 0xC0DE).unwrap();
                assert!(report.pass, "{report}");
                checks += 1;
            }
        }
    }
    finish(
        11,
        "bruhat-constancy",
        format!("{checks} cells"),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_12_structural_property_suites() {
    let start = Instant::now();
    let cases = 1000usize;
    let mut rng = SplitMix64::new(0x5EED);

    // ring axioms on random triples
    let random_poly = |rng: &mut SplitMix64| {
        let terms = rng.below(6);
        LaurentPoly::from_pairs(
            (0..terms).map(|_| (rng.below(13) as i64 - 6, rng.below(19) as i64 - 9)),
        )
    };
    for _ in 0..cases {
        let a = random_poly(&mut rng);
        let b = random_poly(&mut rng);
        let c = random_poly(&mut rng);
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
    }

    // Coxeter length laws on random elements
    let systems = sweep_systems();
    for _ in 0..cases {
        let system = systems[rng.below(systems.len() as u64) as usize];
        let mut w = system.identity();
        for _ in 0..rng.below(12) {
            w = w.mul_gen(1 + rng.below(system.rank() as u64) as usize);
        }
        let s = 1 + rng.below(system.rank() as u64) as usize;
        let l0 = w.length() as i64;
        let l1 = w.mul_gen(s).length() as i64;
        assert_eq!((l1 - l0).abs(), 1);
        let word = w.reduced_word();
        assert_eq!(word.len(), w.length());
        let mut x = system.identity();
        for s in word {
            x = x.mul_gen(s);
        }
        assert_eq!(x, w);
    }

    // flag cells have size q^{l(w)}
    let geometries: Vec<(usize, u64)> = vec![(2, 2), (2, 3), (3, 2), (3, 3)];
    let flag_tables: Vec<_> = geometries
        .iter()
        .map(|&(n, p)| (n, p, enumerate_flags(n, p).unwrap()))
        .collect();
    for _ in 0..cases {
        let (n, p, flags) = &flag_tables[rng.below(flag_tables.len() as u64) as usize];
        let base = &flags[rng.below(flags.len() as u64) as usize];
        let weyl = CoxeterSystem::a(n - 1);
        let all = weyl.enumerate().unwrap();
        let w = &all[rng.below(all.len() as u64) as usize];
        let count = flags
            .iter()
            .filter(|f| relative_position(base, f).unwrap() == *w)
            .count() as u128;
        assert_eq!(count, (*p as u128).pow(w.length() as u32));
    }

    // triangular factorization recovers its factors uniquely
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.below(3) as usize];
        let n = 2 + rng.below(2) as usize;
        let mut upper = Mat::identity(n, p);
        let mut lower = Mat::identity(n, p);
        for i in 0..n {
            for j in i + 1..n {
                upper.set(i, j, rng.below(p));
                lower.set(j, i, rng.below(p));
            }
        }
        let x = upper.mul(&lower);
        let (fu, fl) = ul_factorize(&x).unwrap();
        assert_eq!(fu, upper);
        assert_eq!(fl, lower);
    }

    // trace parity: exponents match the word length mod 2
    for _ in 0..cases {
        let system = systems[rng.below(systems.len() as u64) as usize];
        let len = rng.below(8) as usize;
        let letters: Vec<usize> = (0..len)
            .map(|_| 1 + rng.below(system.rank() as u64) as usize)
            .collect();
        let beta = BraidWord::new(system, letters);
        let parity = (beta.len() % 2) as i64;
        for (e, _) in eval_braid(&beta).tau_plus().pairs() {
            assert_eq!(e.rem_euclid(2), parity);
        }
        for (e, _) in tau_minus_braid(&beta).pairs() {
            assert_eq!(e.rem_euclid(2), parity);
        }
    }

    finish(
        12,
        "structural-properties",
        format!("5 laws x {cases} cases"),
        start,
        Duration::from_secs(120),
    );
}
