//! Real two-qubit states and the change of coordinates to the Bell basis
//!
//! Amplitudes are ordered `|00⟩, |01⟩, |10⟩, |11⟩`, the left qubit being the first
//! tensor factor. The Bell basis is
//!
//! ```text
//! v1 = (|00⟩ − |11⟩)/√2    v2 = (|01⟩ + |10⟩)/√2
//! v3 = (|00⟩ + |11⟩)/√2    v4 = (|01⟩ − |10⟩)/√2
//! ```
//!
//! A state and its negation describe the same physical state. Nothing here picks a
//! sign; comparisons go through [`states_equal_up_to_sign`].

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deviation from unit norm that construction silently renormalizes away.
pub const NORMALIZE_SLACK: f64 = 1e-6;

/// Non-negative comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: f64 = 1e-10;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Self(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}

const UNIT_ULPS: f64 = 4.0 * f64::EPSILON;

fn norm4(v: &[f64; 4]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn normalized(v: [f64; 4]) -> Result<[f64; 4]> {
    if v.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = norm4(&v);
    if (norm - 1.0).abs() >= NORMALIZE_SLACK {
        return Err(Error::NotNormalized { norm });
    }
    // already unit up to rounding: keep as is so serialized states round-trip exactly
    if (norm - 1.0).abs() <= UNIT_ULPS {
        return Ok(v);
    }
    Ok(v.map(|c| c / norm))
}

/// A unit vector `w1|00⟩ + w2|01⟩ + w3|10⟩ + w4|11⟩` with real amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct RealState([f64; 4]);

#[derive(Serialize, Deserialize)]
struct StateRepr {
    w: [f64; 4],
}

impl TryFrom<StateRepr> for RealState {
    type Error = Error;
    fn try_from(r: StateRepr) -> Result<Self> {
        Self::new(r.w)
    }
}

impl From<RealState> for StateRepr {
    fn from(s: RealState) -> Self {
        StateRepr { w: s.0 }
    }
}

impl RealState {
    /// `|00⟩`
    pub const ZERO: RealState = RealState([1.0, 0.0, 0.0, 0.0]);

    /// Builds a state, renormalizing inputs whose norm is within
    /// [`NORMALIZE_SLACK`] of one and rejecting everything else.
    pub fn new(w: [f64; 4]) -> Result<Self> {
        normalized(w).map(Self)
    }

    /// Normalizes an arbitrary non-zero finite vector.
    pub fn from_unnormalized(w: [f64; 4]) -> Result<Self> {
        if w.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = norm4(&w);
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(w.map(|c| c / norm)))
    }

    /// The Bell basis vector `v_k`, `k` in `1..=4`.
    pub fn bell(k: usize) -> Self {
        let mut x = [0.0; 4];
        x[k - 1] = 1.0;
        from_bell(BellCoords(x))
    }

    pub fn amplitudes(&self) -> [f64; 4] {
        self.0
    }

    /// `w1 w4 − w2 w3`, the determinant of the amplitude matrix.
    pub fn det(&self) -> f64 {
        let [w1, w2, w3, w4] = self.0;
        w1 * w4 - w2 * w3
    }

    pub fn negated(&self) -> Self {
        Self(self.0.map(|c| -c))
    }

    /// Wraps a vector known to be unit length up to rounding.
    pub(crate) fn from_raw(w: [f64; 4]) -> Self {
        debug_assert!((norm4(&w) - 1.0).abs() < NORMALIZE_SLACK, "{w:?}");
        Self(w)
    }
}

/// Coordinates `(x1, x2, x3, x4)` of a state in the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BellRepr", into = "BellRepr")]
pub struct BellCoords([f64; 4]);

#[derive(Serialize, Deserialize)]
struct BellRepr {
    x: [f64; 4],
}

impl TryFrom<BellRepr> for BellCoords {
    type Error = Error;
    fn try_from(r: BellRepr) -> Result<Self> {
        Self::new(r.x)
    }
}

impl From<BellCoords> for BellRepr {
    fn from(b: BellCoords) -> Self {
        BellRepr { x: b.0 }
    }
}

impl BellCoords {
    pub fn new(x: [f64; 4]) -> Result<Self> {
        normalized(x).map(Self)
    }

    pub fn coords(&self) -> [f64; 4] {
        self.0
    }

    /// `x1² + x2²`, squared sine of the distance to the circle through `v3, v4`.
    pub fn radius12_sq(&self) -> f64 {
        self.0[0] * self.0[0] + self.0[1] * self.0[1]
    }

    /// `x3² + x4²`
    pub fn radius34_sq(&self) -> f64 {
        self.0[2] * self.0[2] + self.0[3] * self.0[3]
    }

    pub(crate) fn from_raw(x: [f64; 4]) -> Self {
        debug_assert!((norm4(&x) - 1.0).abs() < NORMALIZE_SLACK, "{x:?}");
        Self(x)
    }
}

pub fn to_bell(s: &RealState) -> BellCoords {
    let [w1, w2, w3, w4] = s.0;
    BellCoords([
        (w1 - w4) * FRAC_1_SQRT_2,
        (w2 + w3) * FRAC_1_SQRT_2,
        (w1 + w4) * FRAC_1_SQRT_2,
        (w2 - w3) * FRAC_1_SQRT_2,
    ])
}

pub fn from_bell(b: BellCoords) -> RealState {
    let [x1, x2, x3, x4] = b.0;
    RealState([
        (x1 + x3) * FRAC_1_SQRT_2,
        (x2 + x4) * FRAC_1_SQRT_2,
        (x2 - x4) * FRAC_1_SQRT_2,
        (x3 - x1) * FRAC_1_SQRT_2,
    ])
}

/// Concurrence of a pure real state, `2|w1 w4 − w2 w3|`.
pub fn concurrence(s: &RealState) -> f64 {
    (2.0 * s.det().abs()).min(1.0)
}

/// `min(‖a − b‖, ‖a + b‖)`
pub fn sign_insensitive_distance(a: &RealState, b: &RealState) -> f64 {
    let mut minus = 0.0;
    let mut plus = 0.0;
    for (x, y) in a.0.iter().zip(b.0.iter()) {
        minus += (x - y) * (x - y);
        plus += (x + y) * (x + y);
    }
    minus.min(plus).sqrt()
}

pub fn states_equal_up_to_sign(a: &RealState, b: &RealState, tol: Tolerance) -> bool {
    sign_insensitive_distance(a, b) <= tol.eps()
}
