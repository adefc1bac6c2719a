//! Seeded property tests across the tower.
//!
//! Each case draws a `u64` seed from proptest and builds its inputs from a
//! ChaCha8 stream, so a shrunk failure is reproducible from the seed alone.

use outer_f4::base_field::{frobenius, random_nonzero_ratfn, random_ratfn, RatFn, TitsEndoK};
use outer_f4::f4_building::F4Building;
use outer_f4::moufang_set::MoufangSet;
use outer_f4::polarity_algebra::PolarityAlgebra;
use outer_f4::quad_ext::{ext_mul, random_eelem, ExtDescriptor, ThetaChoice};
use outer_f4::quadrangle::Quadrangle;
use outer_f4::report::{expect, RunConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn building() -> &'static F4Building {
    static B: OnceLock<F4Building> = OnceLock::new();
    B.get_or_init(F4Building::standard)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn k_is_a_field(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_ratfn(&mut r, 3), random_ratfn(&mut r, 3), random_ratfn(&mut r, 3));
        prop_assert!(&(&a + &b) * &c == &(&a * &c) + &(&b * &c));
        prop_assert!(&a * &(&b * &c) == &(&a * &b) * &c);
        let n = random_nonzero_ratfn(&mut r, 3);
        prop_assert!((&n * &n.inv()).is_one());
    }

    #[test]
    fn theta_is_a_tits_endomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let th = TitsEndoK::standard();
        let (a, b) = (random_ratfn(&mut r, 3), random_ratfn(&mut r, 3));
        prop_assert!(th.apply(&(&a * &b)) == &th.apply(&a) * &th.apply(&b));
        prop_assert!(th.apply(&(&a + &b)) == &th.apply(&a) + &th.apply(&b));
        prop_assert!(th.apply(&th.apply(&a)) == frobenius(&a));
        prop_assert!(frobenius(&a) == a.square());
    }

    #[test]
    fn ratfn_display_parses_back(seed in any::<u64>()) {
        let a = random_ratfn(&mut rng(seed), 4);
        let back: RatFn = a.to_string().parse().unwrap();
        prop_assert!(back == a, "{} reparsed as {}", a, back);
    }

    #[test]
    fn extension_norm_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ext = ExtDescriptor::standard();
        let (x, y) = (random_eelem(&mut r, &ext, 2), random_eelem(&mut r, &ext, 2));
        prop_assert!(ext_mul(&x, &y).norm() == &x.norm() * &y.norm());
        prop_assert!(x.conj().conj() == x);
        for which in [ThetaChoice::One, ThetaChoice::Two] {
            prop_assert!(ext_mul(&x, &y).theta(which) == ext_mul(&x.theta(which), &y.theta(which)));
        }
    }

    #[test]
    fn q_polarizes_to_a_symmetric_alternating_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alg = PolarityAlgebra::standard();
        let p = alg.space();
        let (x, y) = (alg.random(&mut r, 2), alg.random(&mut r, 2));
        prop_assert!(p.q(&(&x + &y)) == &(&p.q(&x) + &p.q(&y)) + &p.f(&x, &y));
        prop_assert!(p.f(&x, &y) == p.f(&y, &x));
        prop_assert!(p.f(&x, &x).is_zero());
    }

    #[test]
    fn product_is_multiplicative_for_q(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alg = PolarityAlgebra::standard();
        let p = alg.space();
        let (u, v) = (alg.random(&mut r, 2), alg.random(&mut r, 2));
        prop_assert!(p.q(&alg.mul(&u, &v)) == &p.q(&u) * &p.theta_k(&p.q(&v)));
        let uvv = alg.mul(&alg.mul(&u, &v), &v);
        prop_assert!(uvv == p.scalar_mul(&p.theta_k(&p.q(&v)), &u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn uplus_is_a_group_with_involution_rho(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = Quadrangle::standard();
        let (g, h, k) = (q.random(&mut r, 1), q.random(&mut r, 1), q.random(&mut r, 1));
        prop_assert!(q.mul(&q.mul(&g, &h), &k) == q.mul(&g, &q.mul(&h, &k)));
        prop_assert!(q.mul(&g, &q.inv(&g)).is_identity());
        prop_assert!(q.rho(&q.rho(&g)) == g);
        prop_assert!(q.rho(&q.mul(&g, &h)) == q.mul(&q.rho(&g), &q.rho(&h)));
    }

    #[test]
    fn moufang_norm_agrees_and_tau_never_vanishes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ms = MoufangSet::standard();
        let x = ms.random_nonzero(&mut r, 1);
        prop_assert!(ms.norm(&x) == ms.norm_by_cases(&x));
        prop_assert!(!ms.tau(&x).unwrap().is_zero());
    }

    #[test]
    fn root_group_collection_is_associative_and_xi_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = building();
        let (g, h, k) = (b.random(&mut r, 1), b.random(&mut r, 1), b.random(&mut r, 1));
        let lhs = b.mul(&b.mul(&g, &h).unwrap(), &k).unwrap();
        let rhs = b.mul(&g, &b.mul(&h, &k).unwrap()).unwrap();
        prop_assert!(lhs == rhs, "{} vs {}", lhs, rhs);
        prop_assert!(b.xi_apply(&b.xi_apply(&g).unwrap()).unwrap() == g);
        prop_assert!(b.mul(&g, &b.inv(&g).unwrap()).unwrap().is_identity());
    }

    /// Splitting trials over threads never changes a report, including which
    /// trial is reported as the first failure.
    #[test]
    fn sharding_does_not_change_reports(seed in any::<u64>(), jobs in 2usize..6) {
        let check = |cfg: RunConfig| {
            cfg.run("coin", 64, |rng| expect("heads", rng.gen_range(0..8) != 0))
        };
        let serial = check(RunConfig::new(seed, 1));
        let sharded = check(RunConfig::new(seed, 1).with_jobs(jobs));
        prop_assert_eq!(serial, sharded);
    }
}
