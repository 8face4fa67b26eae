use billiards_core::collision::{collision_condition, resolve_collision, CollisionError};
use billiards_core::{Rational, SigmaRho};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
struct Body {
    sr: SigmaRho<f64>,
    mu: f64,
}

fn body(energy: f64, velocity: f64) -> Body {
    let momentum = energy * velocity;
    let sr = SigmaRho::new(energy + momentum, energy - momentum);
    let mu = if velocity.abs() == 1.0 {
        0.0
    } else {
        energy * energy - momentum * momentum
    };
    Body { sr, mu }
}

fn velocity_kind() -> impl Strategy<Value = f64> {
    prop_oneof![-0.99..0.99f64, Just(1.0), Just(-1.0), 1.01..5.0f64, -5.0..-1.01f64,]
}

fn energy() -> impl Strategy<Value = f64> {
    prop_oneof![0.1..10.0f64, -10.0..-0.1f64]
}

fn random_body(rng: &mut ChaCha8Rng) -> Body {
    let energy = rng.random_range(0.1..10.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let velocity = match rng.random_range(0..4) {
        0 | 1 => rng.random_range(-0.99..0.99),
        2 => {
            if rng.random_bool(0.5) {
                1.0
            } else {
                -1.0
            }
        }
        _ => rng.random_range(1.01..5.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
    };
    body(energy, velocity)
}

fn scale(srs: &[&SigmaRho<f64>]) -> f64 {
    srs.iter().map(|s| s.sigma.abs() + s.rho.abs()).sum()
}

/// Checks every collision invariant; `None` for inputs without a regular collision.
fn check(i: &Body, j: &Body) -> Option<Result<(), String>> {
    let out = match resolve_collision(&i.sr, &i.mu, &j.sr, &j.mu) {
        Ok(out) => out,
        Err(CollisionError::NoCollision | CollisionError::Degenerate | CollisionError::ZeroEnergy) => return None,
    };
    let (a, b) = (&out.sr_i_after, &out.sr_j_after);
    let tol = 1e-12 * scale(&[&i.sr, &j.sr, a, b]);
    let de = (a.energy() + b.energy()) - (i.sr.energy() + j.sr.energy());
    let dp = (a.momentum() + b.momentum()) - (i.sr.momentum() + j.sr.momentum());
    if de.abs() > tol || dp.abs() > tol {
        return Some(Err(format!("conservation: dE = {de}, dP = {dp}, tol = {tol}")));
    }
    for (after, mu) in [(a, i.mu), (b, j.mu)] {
        let dm = after.mass_squared() - mu;
        if dm.abs() > 1e-12 * (after.sigma * after.rho).abs().max(mu.abs()) {
            return Some(Err(format!("mass drift {dm}")));
        }
    }
    if out.tachyonic != (out.s * out.r < 0.0) {
        return Some(Err("tachyonic flag disagrees with sr".into()));
    }
    for (flip, mu) in [(out.sign_flip_i, i.mu), (out.sign_flip_j, j.mu)] {
        if mu >= 0.0 && flip != out.tachyonic {
            return Some(Err(format!("sign flip {flip} with tachyonic {}", out.tachyonic)));
        }
    }
    Some(Ok(()))
}

#[test]
fn hundred_thousand_random_collisions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut tachyonic = 0;
    while checked < 100_000 {
        let (i, j) = (random_body(&mut rng), random_body(&mut rng));
        match check(&i, &j) {
            None => continue,
            Some(Err(msg)) => panic!("{msg}: {i:?} {j:?}"),
            Some(Ok(())) => {}
        }
        if (i.sr.sigma + j.sr.sigma) * (i.sr.rho + j.sr.rho) < 0.0 {
            tachyonic += 1;
        }
        checked += 1;
    }
    assert!(
        tachyonic > 10_000,
        "sample should exercise tachyonic collisions, got {tachyonic}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5_000))]

    #[test]
    fn collision_invariants(ei in energy(), vi in velocity_kind(), ej in energy(), vj in velocity_kind()) {
        let (i, j) = (body(ei, vi), body(ej, vj));
        if let Some(result) = check(&i, &j) {
            prop_assert!(result.is_ok(), "{:?}", result);
        }
    }

    #[test]
    fn resolving_twice_returns_the_input(ei in energy(), vi in velocity_kind(), ej in energy(), vj in velocity_kind()) {
        let (i, j) = (body(ei, vi), body(ej, vj));
        let Ok(out) = resolve_collision(&i.sr, &i.mu, &j.sr, &j.mu) else { return Ok(()); };
        prop_assume!(collision_condition(&out.sr_i_after, &out.sr_j_after));
        let back = resolve_collision(&out.sr_i_after, &i.mu, &out.sr_j_after, &j.mu).unwrap();
        let tol = 1e-11 * scale(&[&i.sr, &j.sr, &out.sr_i_after, &out.sr_j_after]);
        for (x, y) in [
            (back.sr_i_after.sigma, i.sr.sigma),
            (back.sr_i_after.rho, i.sr.rho),
            (back.sr_j_after.sigma, j.sr.sigma),
            (back.sr_j_after.rho, j.sr.rho),
        ] {
            prop_assert!((x - y).abs() <= tol, "{} vs {}", x, y);
        }
    }

    #[test]
    fn equal_masses_exchange(ei in energy(), vi in -0.99..0.99f64, ej in energy()) {
        let i = body(ei, vi);
        // Same squared mass, other energy: |P_j| = sqrt(E_j^2 - mu).
        let pj = -(ej * ej - i.mu).max(0.0).sqrt();
        let j = Body { sr: SigmaRho::new(ej + pj, ej - pj), mu: i.mu };
        if let Ok(out) = resolve_collision(&i.sr, &i.mu, &j.sr, &j.mu) {
            prop_assert_eq!(out.sr_i_after, j.sr);
            prop_assert_eq!(out.sr_j_after, i.sr);
        }
    }
}

#[test]
fn rational_collisions_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 2_000 {
        let mut frac = || Rational::new(rng.random_range(-60i64..=60).into(), rng.random_range(1i64..=12).into());
        let (si, ri, sj, rj) = (frac(), frac(), frac(), frac());
        let i = SigmaRho::new(si, ri);
        let j = SigmaRho::new(sj, rj);
        let (mu_i, mu_j) = (i.mass_squared(), j.mass_squared());
        let Ok(out) = resolve_collision(&i, &mu_i, &j, &mu_j) else {
            continue;
        };
        assert_eq!(
            out.sr_i_after.energy() + out.sr_j_after.energy(),
            i.energy() + j.energy()
        );
        assert_eq!(
            out.sr_i_after.momentum() + out.sr_j_after.momentum(),
            i.momentum() + j.momentum()
        );
        assert_eq!(out.sr_i_after.mass_squared(), mu_i);
        assert_eq!(out.sr_j_after.mass_squared(), mu_j);
        let zero = Rational::from_integer(0.into());
        for (flip, mu) in [(out.sign_flip_i, &mu_i), (out.sign_flip_j, &mu_j)] {
            if *mu >= zero {
                assert_eq!(flip, out.tachyonic);
            }
        }
        checked += 1;
    }
}
