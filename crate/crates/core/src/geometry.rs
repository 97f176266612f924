//! Orbit geometry of real two-qubit states on the unit 3-sphere.
//!
//! In Bell coordinates, the states locally equivalent to a given one form the pair
//! of flat tori
//!
//! ```text
//! Σ_d(v3,v4): x1² + x2² = sin²d,  x3² + x4² = cos²d      (sheet V34)
//! Σ_d(v1,v2): x3² + x4² = sin²d,  x1² + x2² = cos²d      (sheet V12)
//! ```
//!
//! with `d ∈ [0, π/4]` the geodesic distance to the nearest maximally entangled
//! circle. At `d = 0` the tori collapse to the circles through `v3, v4` and
//! `v1, v2`; at `d = π/4` the two sheets coincide in the product torus.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{apply, kron, mat_vec, ry_matrix, xlog2x, Circuit, Gate, Mat2, Qubit};
use crate::state::{from_bell, to_bell, BellCoords, RealState, Tolerance};

pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

/// Below this `sin d` the angle on the collapsed factor circle is undefined.
pub const DEGENERATE_SIN: f64 = 1e-9;

/// Slack allowed on the `[0, π/4]` domain of `d`.
pub const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    MaxEntangled,
    Generic,
    Product,
}

/// One of the two tori of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sheet {
    V34,
    V12,
}

impl Sheet {
    pub fn opposite(self) -> Sheet {
        match self {
            Sheet::V34 => Sheet::V12,
            Sheet::V12 => Sheet::V34,
        }
    }
}

/// Sheet label of a classified state; `Both` only on the product torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitSheet {
    V34,
    V12,
    #[serde(rename = "BOTH")]
    Both,
}

impl OrbitSheet {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitSheet::V34 => "V34",
            OrbitSheet::V12 => "V12",
            OrbitSheet::Both => "BOTH",
        }
    }

    /// `Both` matches either sheet.
    pub fn compatible(self, other: OrbitSheet) -> bool {
        self == other || self == OrbitSheet::Both || other == OrbitSheet::Both
    }
}

impl From<Sheet> for OrbitSheet {
    fn from(s: Sheet) -> Self {
        match s {
            Sheet::V34 => OrbitSheet::V34,
            Sheet::V12 => OrbitSheet::V12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitClass {
    pub kind: OrbitKind,
    pub d: f64,
    pub sheet: OrbitSheet,
}

/// Intrinsic coordinates of a state on an orbit torus: `a` runs along the circle
/// of radius `sin d`, `b` along the circle of radius `cos d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    d: f64,
    a: f64,
    b: f64,
    sheet: Sheet,
}

impl TorusPoint {
    pub fn new(d: f64, a: f64, b: f64, sheet: Sheet) -> Result<Self> {
        let d = check_distance(d)?;
        if let Some(&bad) = [a, b].iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain {
                what: "torus angle",
                value: bad,
                domain: "finite reals",
            });
        }
        Ok(Self { d, a, b, sheet })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn sheet(&self) -> Sheet {
        self.sheet
    }
}

/// Validates `d ∈ [0, π/4]` up to [`DOMAIN_SLACK`] and clamps it into range.
pub fn check_distance(d: f64) -> Result<f64> {
    if d.is_finite() && (-DOMAIN_SLACK..=FRAC_PI_4 + DOMAIN_SLACK).contains(&d) {
        Ok(d.clamp(0.0, FRAC_PI_4))
    } else {
        Err(Error::Domain {
            what: "d",
            value: d,
            domain: "[0, π/4]",
        })
    }
}

/// Geodesic distance in `[0, π/2]` from the state to the circle `E(v3, v4)`.
fn distance_to_v34_circle(b: &BellCoords) -> f64 {
    let [x1, x2, x3, x4] = b.coords();
    // same as arcsin √(x1²+x2²), without arcsin's precision loss near 1
    x1.hypot(x2).atan2(x3.hypot(x4))
}

/// Distance `d ∈ [0, π/4]` from the state to the maximally entangled states.
pub fn entanglement_distance(s: &RealState) -> f64 {
    let raw = distance_to_v34_circle(&to_bell(s));
    raw.min(FRAC_PI_2 - raw).clamp(0.0, FRAC_PI_4)
}

pub(crate) fn sheet_of(s: &RealState) -> Sheet {
    if s.det() >= 0.0 {
        Sheet::V34
    } else {
        Sheet::V12
    }
}

pub fn classify(s: &RealState, class_tol: Tolerance) -> OrbitClass {
    let d = entanglement_distance(s);
    let kind = if d <= class_tol.eps() {
        OrbitKind::MaxEntangled
    } else if (d - FRAC_PI_4).abs() <= class_tol.eps() {
        OrbitKind::Product
    } else {
        OrbitKind::Generic
    };
    let sheet = match kind {
        OrbitKind::Product => OrbitSheet::Both,
        _ => sheet_of(s).into(),
    };
    OrbitClass { kind, d, sheet }
}

fn binary_entropy(p: f64) -> f64 {
    0.0 - (xlog2x(p) + xlog2x(1.0 - p))
}

/// Entanglement entropy of every state on the orbit at distance `d`, evaluated as
/// the binary entropy of `(1 + sin 2d)/2`.
pub fn entropy_from_distance(d: f64) -> Result<f64> {
    let d = check_distance(d)?;
    let p = (1.0 + (2.0 * d).sin().min(1.0)) / 2.0;
    Ok(binary_entropy(p).clamp(0.0, 1.0))
}

/// `1 − log₂ √((1+σ)^(1+σ) / (1−σ)^(σ−1))` with `σ = sin 2d`, written out as is.
pub fn entropy_closed_form(d: f64) -> f64 {
    let sigma = (2.0 * d).sin().min(1.0);
    let num = (1.0 + sigma).powf(1.0 + sigma);
    let den = (1.0 - sigma).powf(-1.0 + sigma);
    1.0 - (num / den).sqrt().log2()
}

/// Angle of `(x, y)` with `Arg(0) := 0`.
pub(crate) fn arg(x: f64, y: f64) -> f64 {
    if x == 0.0 && y == 0.0 {
        0.0
    } else {
        y.atan2(x)
    }
}

pub fn torus_angles(s: &RealState) -> Result<TorusPoint> {
    let d = entanglement_distance(s);
    if d.sin() < DEGENERATE_SIN {
        return Err(Error::DegenerateAngle { d });
    }
    let [x1, x2, x3, x4] = to_bell(s).coords();
    let sheet = sheet_of(s);
    let (a, b) = match sheet {
        Sheet::V34 => (arg(x1, x2), arg(x3, x4)),
        Sheet::V12 => (arg(x3, x4), arg(x1, x2)),
    };
    TorusPoint::new(d, a, b, sheet)
}

pub fn parametrize(p: &TorusPoint) -> RealState {
    let (sd, cd) = p.d.sin_cos();
    let (sa, ca) = p.a.sin_cos();
    let (sb, cb) = p.b.sin_cos();
    let x = match p.sheet {
        Sheet::V34 => [sd * ca, sd * sa, cd * cb, cd * sb],
        Sheet::V12 => [cd * cb, cd * sb, sd * ca, sd * sa],
    };
    from_bell(BellCoords::from_raw(x))
}

/// The local circuit `Ry(2s) ⊗ Ry(2t)`.
pub fn phi_circuit(sparam: f64, tparam: f64) -> Result<Circuit> {
    Circuit::from_gates(vec![
        Gate::ry(Qubit::Q0, 2.0 * sparam)?,
        Gate::ry(Qubit::Q1, 2.0 * tparam)?,
    ])
}

/// `φ(s, t) = (Ry(2s) ⊗ Ry(2t)) s0`, a parametrization of the torus through `s0`.
///
/// On either sheet this turns the `(x1, x2)` pair by `s + t` and the `(x3, x4)`
/// pair by `t − s`.
pub fn phi_surface(s0: &RealState, sparam: f64, tparam: f64) -> Result<RealState> {
    Ok(apply(&phi_circuit(sparam, tparam)?, s0))
}

// d/dθ Ry(2θ)
fn ry_double_derivative(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    [[-s, -c], [c, -s]]
}

fn dot4(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    p.iter().zip(q).map(|(x, y)| x * y).sum()
}

/// `|∂φ/∂s|² |∂φ/∂t|² − (∂φ/∂s · ∂φ/∂t)²` from analytic tangent vectors.
pub fn gram_determinant(s0: &RealState, sparam: f64, tparam: f64) -> f64 {
    let v = s0.amplitudes();
    let ds = mat_vec(
        &kron(&ry_double_derivative(sparam), &ry_matrix(2.0 * tparam)),
        &v,
    );
    let dt = mat_vec(
        &kron(&ry_matrix(2.0 * sparam), &ry_double_derivative(tparam)),
        &v,
    );
    dot4(&ds, &ds) * dot4(&dt, &dt) - dot4(&ds, &dt).powi(2)
}

/// Deviation of the Gram determinant of the φ-surface tangents from `sin²(2d)`.
pub fn immersion_defect(s0: &RealState, sparam: f64, tparam: f64) -> f64 {
    let d = entanglement_distance(s0);
    (gram_determinant(s0, sparam, tparam) - (2.0 * d).sin().powi(2)).abs()
}

/// Residuals `(x1²+x2² − sin²d, x3²+x4² − cos²d)` of the `Σ_d(v3, v4)` quadrics.
pub fn v34_quadric_residuals(s: &RealState, d: f64) -> (f64, f64) {
    let b = to_bell(s);
    let (sd, cd) = d.sin_cos();
    (b.radius12_sq() - sd * sd, b.radius34_sq() - cd * cd)
}

/// Residuals of the `sin²d` and `cos²d` quadrics of the given sheet.
pub fn sheet_quadric_residuals(s: &RealState, d: f64, sheet: Sheet) -> (f64, f64) {
    let b = to_bell(s);
    let (sd, cd) = d.sin_cos();
    let (small, large) = match sheet {
        Sheet::V34 => (b.radius12_sq(), b.radius34_sq()),
        Sheet::V12 => (b.radius34_sq(), b.radius12_sq()),
    };
    (small - sd * sd, large - cd * cd)
}

/// Residuals `(x2²+x3² − sin²d, x1²+x4² − cos²d)` of the image of `Σ_d(v3, v4)`
/// under CZ.
pub fn cz_image_quadric_residuals(s: &RealState, d: f64) -> (f64, f64) {
    let [x1, x2, x3, x4] = to_bell(s).coords();
    let (sd, cd) = d.sin_cos();
    (x2 * x2 + x3 * x3 - sd * sd, x1 * x1 + x4 * x4 - cd * cd)
}

/// Reduces an angle to `(−π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}
