use billiards_core::kinematics::{from_sigma_rho, spin_velocity, to_sigma_rho, velocity, velocity_from_sigma};
use billiards_core::{ParticleState, Rational};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn energy() -> impl Strategy<Value = f64> {
    prop_oneof![1e-3..1e3f64, -1e3..-1e-3f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn bradyon_velocity_agrees(e in energy(), v in prop_oneof![1e-3..0.999f64, -0.999..-1e-3f64]) {
        let p = ParticleState::from_velocity(e, v, 0.0, 0).unwrap();
        let sr = to_sigma_rho(&p);
        let from_sigma = velocity_from_sigma(&sr.sigma, &p.mu).unwrap();
        let direct = velocity(&p.energy, &p.momentum).unwrap();
        prop_assert!(rel(from_sigma, direct) <= 1e-12);
    }

    #[test]
    fn tachyon_velocity_agrees(e in energy(), speed in 1.001..50.0f64, left in any::<bool>()) {
        let v = if left { -speed } else { speed };
        let p = ParticleState::from_velocity(e, v, 0.0, 0).unwrap();
        prop_assert!(p.mu < 0.0);
        let sr = to_sigma_rho(&p);
        let from_sigma = velocity_from_sigma(&sr.sigma, &p.mu).unwrap();
        prop_assert!(rel(from_sigma, p.velocity()) <= 1e-12);
    }

    #[test]
    fn sigma_rho_round_trip(e in energy(), v in -3.0..3.0f64) {
        let p = ParticleState::from_velocity(e, v, 0.0, 0).unwrap();
        let sr = to_sigma_rho(&p);
        let scale = p.energy * p.energy + p.momentum * p.momentum;
        prop_assert!((sr.sigma * sr.rho - p.mu).abs() <= 1e-12 * scale);
        let (e2, p2) = from_sigma_rho(&sr);
        prop_assert!(rel(e2, p.energy) <= 1e-12);
        prop_assert!((p2 - p.momentum).abs() <= 1e-12 * p.energy.abs().max(p.momentum.abs()));
    }

    #[test]
    fn rational_sigma_rho_round_trip(num in -500i64..500, den in 1i64..50, vn in -300i64..300, vd in 1i64..100) {
        prop_assume!(num != 0);
        let e = Rational::new(num.into(), den.into());
        let v = Rational::new(vn.into(), vd.into());
        let p = ParticleState::from_velocity(e, v, Rational::from_integer(0.into()), 0).unwrap();
        let sr = to_sigma_rho(&p);
        prop_assert_eq!(sr.sigma.clone() * sr.rho.clone(), p.mu.clone());
        prop_assert_eq!(from_sigma_rho(&sr), (p.energy.clone(), p.momentum.clone()));
    }

    #[test]
    fn massless_moves_at_light_speed(e in energy(), right in any::<bool>()) {
        let momentum = if right { e } else { -e };
        let p = ParticleState::new(e, momentum, 0.0, 0.0, 0).unwrap();
        prop_assert_eq!(p.velocity().abs(), 1.0);
    }

    #[test]
    fn spin_velocity_relation(e in 1e-3..1e3f64, v in -0.999..0.999f64) {
        let p = ParticleState::from_velocity(e, v, 0.0, 0).unwrap();
        let m = p.mu.sqrt();
        let s = spin_velocity(&m, &p.energy).unwrap();
        prop_assert!((s * s - (1.0 - v * v)).abs() <= 1e-12);
    }
}

#[test]
fn rational_round_trip_is_exact() {
    use billiards_core::Scalar;
    let r = |s: &str| Rational::parse_literal(s).unwrap();
    let p = ParticleState::from_energy_momentum(r("7/3"), r("-11/5"), r("0"), 0).unwrap();
    let sr = to_sigma_rho(&p);
    assert_eq!(sr.sigma.clone() * sr.rho.clone(), p.mu);
    assert_eq!(from_sigma_rho(&sr), (p.energy.clone(), p.momentum.clone()));
}
