//! Circuit synthesis between real two-qubit states.
//!
//! Two states on the same orbit are joined by at most `X`, `RY ⊗ RY`. States on
//! different orbits go through one CZ: the CZ image of the farther orbit's
//! `V34` torus meets the nearer orbit's `V34` torus, and a point of that
//! intersection splits the connection into two local legs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{arg, entanglement_distance, normalize_angle};
use crate::sim::{apply, apply_gate, Circuit, Gate, Qubit};
use crate::state::{
    from_bell, sign_insensitive_distance, to_bell, BellCoords, RealState, Tolerance,
};

/// Pair radius below which a state is treated as lying exactly on a circle and
/// connected with a single rotation.
const CIRCLE_RADIUS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlanRepr")]
pub struct ConnectionPlan {
    #[serde(flatten)]
    circuit: Circuit,
    intermediate: Option<RealState>,
    cz_count: usize,
    residual: f64,
}

#[derive(Deserialize)]
struct PlanRepr {
    gates: Vec<Gate>,
    intermediate: Option<RealState>,
    cz_count: usize,
    residual: f64,
}

impl TryFrom<PlanRepr> for ConnectionPlan {
    type Error = Error;
    fn try_from(r: PlanRepr) -> Result<Self> {
        let circuit = Circuit::from_gates(r.gates)?;
        if circuit.cz_count() != r.cz_count {
            return Err(Error::InvalidGate(format!(
                "cz_count {} does not match the {} CZ gates in the circuit",
                r.cz_count,
                circuit.cz_count()
            )));
        }
        Ok(Self {
            circuit,
            intermediate: r.intermediate,
            cz_count: r.cz_count,
            residual: r.residual,
        })
    }
}

impl ConnectionPlan {
    fn new(
        circuit: Circuit,
        intermediate: Option<RealState>,
        source: &RealState,
        target: &RealState,
    ) -> Self {
        let residual = sign_insensitive_distance(&apply(&circuit, source), target);
        Self {
            cz_count: circuit.cz_count(),
            circuit,
            intermediate,
            residual,
        }
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// The state on the intersection of the CZ image with the target orbit.
    pub fn intermediate(&self) -> Option<&RealState> {
        self.intermediate.as_ref()
    }

    pub fn cz_count(&self) -> usize {
        self.cz_count
    }

    /// `min ‖C·source ∓ target‖` measured on the simulator.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

fn pair_angles(b: &BellCoords) -> (f64, f64, f64, f64) {
    let [x1, x2, x3, x4] = b.coords();
    (x1.hypot(x2), arg(x1, x2), x3.hypot(x4), arg(x3, x4))
}

fn push_rotation(c: &mut Circuit, qubit: Qubit, angle: f64) {
    let angle = normalize_angle(angle);
    if angle != 0.0 {
        c.push_valid(Gate::Ry { qubit, angle });
    }
}

/// Local circuit from `a` to `b`, assuming both lie on the same orbit.
fn local_circuit(a: &RealState, b: &RealState) -> Circuit {
    let mut c = Circuit::new();
    // The sheets differ when a's (x3, x4) radius matches b's (x1, x2) radius
    // better than a's own (x1, x2) radius does. Comparing radii rather than
    // sheet labels keeps states just off the product torus exact.
    let (ba, bb) = (to_bell(a), to_bell(b));
    let target12 = bb.radius12_sq().sqrt();
    let same = (ba.radius12_sq().sqrt() - target12).abs();
    let swapped = (ba.radius34_sq().sqrt() - target12).abs();
    let mut start = *a;
    if swapped < same {
        let x = Gate::X { qubit: Qubit::Q0 };
        start = apply_gate(&x, &start);
        c.push_valid(x);
    }

    // Ry(2s) ⊗ Ry(2t) turns the (x1, x2) pair by s + t and the (x3, x4) pair by t − s.
    let (r12, th12_a, r34, th34_a) = pair_angles(&to_bell(&start));
    let (_, th12_b, _, th34_b) = pair_angles(&to_bell(b));
    let turn12 = th12_b - th12_a;
    let turn34 = th34_b - th34_a;
    let (s, t) = if r12 < CIRCLE_RADIUS {
        (-turn34, 0.0)
    } else if r34 < CIRCLE_RADIUS {
        (turn12, 0.0)
    } else {
        ((turn12 - turn34) / 2.0, (turn12 + turn34) / 2.0)
    };
    push_rotation(&mut c, Qubit::Q0, 2.0 * s);
    push_rotation(&mut c, Qubit::Q1, 2.0 * t);
    c
}

/// Connects two states of the same orbit with `RY` and `X` gates only.
pub fn local_connect(a: &RealState, b: &RealState, tol: Tolerance) -> Result<ConnectionPlan> {
    let (da, db) = (entanglement_distance(a), entanglement_distance(b));
    if (da - db).abs() > tol.eps() {
        return Err(Error::OrbitMismatch {
            source_d: da,
            target_d: db,
        });
    }
    Ok(ConnectionPlan::new(local_circuit(a, b), None, a, b))
}

/// A point of `CZ·Σ_{d0}(v3,v4) ∩ Σ_{d1}(v3,v4)` for `d0 ≥ d1`, with Bell
/// coordinates `(0, sin d1, √(sin²d0 − sin²d1), cos d0)`.
pub fn intersection_state(d0: f64, d1: f64) -> RealState {
    debug_assert!(d0 >= d1);
    let (s0, c0) = d0.sin_cos();
    let s1 = d1.sin();
    let x3 = (s0 * s0 - s1 * s1).max(0.0).sqrt();
    from_bell(BellCoords::from_raw([0.0, s1, x3, c0]))
}

/// Connects `far` to `near` (`d(far) > d(near)`) through one CZ.
fn cz_circuit(far: &RealState, near: &RealState, d_far: f64, d_near: f64) -> (Circuit, RealState) {
    let meet = intersection_state(d_far, d_near);
    let meet_pre = apply_gate(&Gate::Cz, &meet);
    let mut c = local_circuit(far, &meet_pre);
    c.push_valid(Gate::Cz);
    c.extend(&local_circuit(&meet, near));
    (c, meet)
}

/// Connects arbitrary states with local gates and at most one CZ.
pub fn cz_connect(a: &RealState, b: &RealState, tol: Tolerance) -> Result<ConnectionPlan> {
    let (da, db) = (entanglement_distance(a), entanglement_distance(b));
    if (da - db).abs() <= tol.eps() {
        return local_connect(a, b, tol);
    }
    let (circuit, meet) = if da > db {
        cz_circuit(a, b, da, db)
    } else {
        let (c, meet) = cz_circuit(b, a, db, da);
        (c.inverse(), meet)
    };
    Ok(ConnectionPlan::new(circuit, Some(meet), a, b))
}

/// Angles of the preparation template `[RY(q0, θ1), RY(q1, θ0), CZ, RY(q1, θ2)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepareAngles {
    pub theta0: f64,
    pub theta1: f64,
    pub theta2: f64,
}

/// `θ0 = Arg(w1 + i w2) − Arg(w3 + i w4)`, `θ1 = 2 arccos √(w1² + w2²)`,
/// `θ2 = Arg(w1 + i w2) + Arg(w3 + i w4)`, each reduced to `(−π, π]`.
pub fn prepare_angles(w: &RealState) -> PrepareAngles {
    let [w1, w2, w3, w4] = w.amplitudes();
    let upper = arg(w1, w2);
    let lower = arg(w3, w4);
    // 2 arccos √(w1²+w2²), computed through atan2 to stay accurate near 0
    let theta1 = 2.0 * w3.hypot(w4).atan2(w1.hypot(w2));
    PrepareAngles {
        theta0: normalize_angle(upper - lower),
        theta1: normalize_angle(theta1),
        theta2: normalize_angle(upper + lower),
    }
}

/// Placement of the three template angles on the two wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) enum TemplateLayout {
    /// θ1 on qubit 0; θ0 then θ2 on qubit 1.
    Standard,
    /// θ1 on qubit 1; θ0 then θ2 on qubit 0.
    Mirrored,
    /// θ1 on qubit 0; θ2 then θ0 on qubit 1.
    Reordered,
    /// θ1 on qubit 1; θ2 then θ0 on qubit 0.
    MirroredReordered,
}

#[cfg(test)]
impl TemplateLayout {
    pub(crate) const ALL: [TemplateLayout; 4] = [
        TemplateLayout::Standard,
        TemplateLayout::Mirrored,
        TemplateLayout::Reordered,
        TemplateLayout::MirroredReordered,
    ];
}

const PREPARE_LAYOUT: TemplateLayout = TemplateLayout::Standard;

pub(crate) fn template_circuit(angles: PrepareAngles, layout: TemplateLayout) -> Circuit {
    use TemplateLayout::*;
    let (split, other) = match layout {
        Standard | Reordered => (Qubit::Q0, Qubit::Q1),
        Mirrored | MirroredReordered => (Qubit::Q1, Qubit::Q0),
    };
    let (before, after) = match layout {
        Standard | Mirrored => (angles.theta0, angles.theta2),
        Reordered | MirroredReordered => (angles.theta2, angles.theta0),
    };
    let mut c = Circuit::new();
    c.push_valid(Gate::Ry {
        qubit: split,
        angle: angles.theta1,
    });
    c.push_valid(Gate::Ry {
        qubit: other,
        angle: before,
    });
    c.push_valid(Gate::Cz);
    c.push_valid(Gate::Ry {
        qubit: other,
        angle: after,
    });
    c
}

/// One-CZ circuit preparing `w` from `|00⟩`, up to global sign.
pub fn prepare(w: &RealState) -> Circuit {
    template_circuit(prepare_angles(w), PREPARE_LAYOUT)
}

/// Simulator residual of [`prepare`] on `|00⟩`.
pub fn prepare_residual(w: &RealState, circuit: &Circuit) -> f64 {
    sign_insensitive_distance(&apply(circuit, &RealState::ZERO), w)
}
