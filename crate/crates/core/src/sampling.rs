//! Random states and random local circuits.

use std::f64::consts::{FRAC_PI_4, TAU};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::geometry::{check_distance, parametrize, Sheet, TorusPoint};
use crate::sim::{Circuit, Gate, Qubit};
use crate::state::RealState;

/// Haar-uniform point on the unit 3-sphere.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> RealState {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Ok(s) = RealState::from_unnormalized(v) {
            return s;
        }
    }
}

/// Uniform angles on the orbit at distance `d`, sheet by fair coin.
pub fn random_torus_point<R: Rng + ?Sized>(d: f64, rng: &mut R) -> Result<TorusPoint> {
    let d = check_distance(d)?;
    let a = rng.random_range(0.0..TAU);
    let b = rng.random_range(0.0..TAU);
    let sheet = if rng.random_bool(0.5) {
        Sheet::V34
    } else {
        Sheet::V12
    };
    TorusPoint::new(d, a, b, sheet)
}

pub fn random_state_on_orbit<R: Rng + ?Sized>(d: f64, rng: &mut R) -> Result<RealState> {
    Ok(parametrize(&random_torus_point(d, rng)?))
}

/// A state at a uniformly random distance in `[0, π/4]`.
pub fn random_orbit_state<R: Rng + ?Sized>(rng: &mut R) -> (f64, RealState) {
    let d = rng.random_range(0.0..=FRAC_PI_4);
    let s = random_state_on_orbit(d, rng).expect("d drawn inside the domain");
    (d, s)
}

fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> Qubit {
    if rng.random_bool(0.5) {
        Qubit::Q0
    } else {
        Qubit::Q1
    }
}

/// Circuit of `len` gates drawn from `RY(θ)` and `X` on either qubit.
pub fn random_local_circuit<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Circuit {
    let mut c = Circuit::new();
    for _ in 0..len {
        let qubit = random_qubit(rng);
        let g = if rng.random_bool(0.75) {
            Gate::Ry {
                qubit,
                angle: rng.random_range(-TAU..TAU),
            }
        } else {
            Gate::X { qubit }
        };
        c.push_valid(g);
    }
    c
}
