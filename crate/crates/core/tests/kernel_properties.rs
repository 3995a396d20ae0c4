use proptest::prelude::*;
use quadbound::kernels::{
    kernel_for, kernel_l1_norm, kernel_s_norm, monic_quadratic_l1, optimize_monic_linear,
    optimize_monic_quadratic, Exponent, DEFAULT_GRID,
};
use quadbound::{Interval, RuleKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let a = rng.gen_range(-10.0..10.0);
    Interval::new(a, a + rng.gen_range(0.01..8.0)).unwrap()
}

#[test]
fn minimiser_roots_lie_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let iv = random_interval(&mut rng);
        let opt = optimize_monic_quadratic(iv, 60);
        let (r1, r2) = opt.roots();
        assert!(iv.contains(r1) && iv.contains(r2), "{iv}: {r1}, {r2}");
        assert!(opt.is_certified(1e-9), "{iv}");
    }
}

#[test]
fn perturbing_the_minimiser_never_helps() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let iv = random_interval(&mut rng);
        let opt = optimize_monic_quadratic(iv, 10);
        let best = monic_quadratic_l1(iv, opt.alpha, opt.gamma);
        for scale in [1e-3, 1e-2] {
            let d = scale * iv.length();
            for (da, dg) in [(d, 0.0), (-d, 0.0), (0.0, d), (0.0, -d), (d, d), (-d, -d), (d, -d), (-d, d)] {
                let q = monic_quadratic_l1(iv, opt.alpha + da, opt.gamma + dg);
                assert!(q >= best * (1.0 - 1e-14), "{iv}: ({da}, {dg}) gives {q} < {best}");
            }
        }
    }
}

#[test]
fn symmetric_intervals() {
    for (a, b, alpha, c) in [(0.0, 2.0, 1.0, 1.0), (-0.5, 0.5, 0.0, 0.0)] {
        let iv = Interval::new(a, b).unwrap();
        let lin = optimize_monic_linear(iv);
        assert_eq!(lin.center, c);
        let quad = optimize_monic_quadratic(iv, DEFAULT_GRID);
        assert_eq!(quad.alpha, alpha);
        assert_eq!(quad.min_value, (b - a).powi(3) / 16.0);
    }
}

#[test]
fn boundary_conditions_hold_on_many_intervals() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..100 {
        let iv = random_interval(&mut rng);
        for rule in [RuleKind::Trapezoid, RuleKind::Midpoint, RuleKind::Simpson] {
            for check in kernel_for(rule, iv).boundary_conditions() {
                assert!(check.holds(1e-9), "{rule} {iv}: {check:?}");
            }
        }
    }
}

proptest! {
    #[test]
    fn l1_norm_scales_with_length(a in -4.0f64..4.0, len in 0.05f64..3.0) {
        let small = Interval::new(a, a + len).unwrap();
        let large = Interval::new(2.0 * a, 2.0 * (a + len)).unwrap();
        for rule in RuleKind::ALL {
            let m = rule.derivative_order() as i32;
            let ratio = kernel_l1_norm(&kernel_for(rule, large)) / kernel_l1_norm(&kernel_for(rule, small));
            prop_assert!((ratio - 2f64.powi(m + 1)).abs() <= 1e-12 * ratio, "{rule}: {ratio}");
        }
    }

    #[test]
    fn general_s_norms_are_monotone_on_unit_length(s in 1.0f64..8.0, a in -2.0f64..2.0) {
        // length one: ‖p‖_s ≤ ‖p‖_t for s ≤ t
        let iv = Interval::new(a, a + 1.0).unwrap();
        for rule in RuleKind::ALL {
            let k = kernel_for(rule, iv);
            let lo = kernel_s_norm(&k, Exponent::finite(s).unwrap()).unwrap();
            let hi = kernel_s_norm(&k, Exponent::finite(s + 1.0).unwrap()).unwrap();
            let sup = kernel_s_norm(&k, Exponent::Infinity).unwrap();
            prop_assert!(lo <= hi * (1.0 + 1e-10) && hi <= sup * (1.0 + 1e-10), "{rule}: {lo} {hi} {sup}");
        }
    }

    #[test]
    fn quadratic_l1_never_below_the_floor(a in -5.0f64..5.0, len in 0.01f64..5.0, u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let iv = Interval::new(a, a + len).unwrap();
        let alpha = a + u * len;
        let gamma = v * (alpha - a).min(a + len - alpha);
        prop_assert!(monic_quadratic_l1(iv, alpha, gamma) >= len.powi(3) / 16.0 * (1.0 - 1e-12));
    }
}

#[test]
fn holder_chain_for_the_trapezoid_kernel() {
    let k = kernel_for(RuleKind::Trapezoid, Interval::new(0.0, 1.0).unwrap());
    let one = kernel_s_norm(&k, Exponent::finite(1.0).unwrap()).unwrap();
    let two = kernel_s_norm(&k, Exponent::finite(2.0).unwrap()).unwrap();
    let sup = kernel_s_norm(&k, Exponent::Infinity).unwrap();
    assert!(one <= two && two <= sup);
    assert!((two - (16.0 * 0.5f64.powi(5) / 15.0).sqrt()).abs() < 1e-12);
}
