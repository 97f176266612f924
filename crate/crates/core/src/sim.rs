//! Dense simulator for two-qubit circuits over `Ry`, `X` and `CZ`.
//!
//! Qubit 0 is the left qubit of `|q0 q1⟩`: a gate `G` on qubit 0 acts as `G ⊗ I`,
//! on qubit 1 as `I ⊗ G`, with the standard Kronecker product over the amplitude
//! order `00, 01, 10, 11`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::RealState;

pub type Mat2 = [[f64; 2]; 2];
pub type Mat4 = [[f64; 4]; 4];

/// Eigenvalues below this count as exactly zero in the entropy sum.
const ZERO_EIGENVALUE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Qubit {
    Q0,
    Q1,
}

impl Qubit {
    pub fn index(self) -> usize {
        match self {
            Qubit::Q0 => 0,
            Qubit::Q1 => 1,
        }
    }

    pub fn other(self) -> Qubit {
        match self {
            Qubit::Q0 => Qubit::Q1,
            Qubit::Q1 => Qubit::Q0,
        }
    }
}

impl TryFrom<u8> for Qubit {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Qubit::Q0),
            1 => Ok(Qubit::Q1),
            _ => Err(Error::InvalidGate(format!("qubit index {v} is not 0 or 1"))),
        }
    }
}

impl From<Qubit> for u8 {
    fn from(q: Qubit) -> u8 {
        q.index() as u8
    }
}

/// One gate of a circuit. `CZ` is symmetric and carries no qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    Ry { qubit: Qubit, angle: f64 },
    X { qubit: Qubit },
    Cz,
}

impl Gate {
    pub fn ry(qubit: Qubit, angle: f64) -> Result<Gate> {
        let g = Gate::Ry { qubit, angle };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Gate::Ry { angle, .. } if !angle.is_finite() => Err(Error::InvalidGate(format!(
                "ry angle {angle} is not finite"
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, Gate::Cz)
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Ry { qubit, angle } => Gate::Ry {
                qubit,
                angle: -angle,
            },
            g => g,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Ry { qubit, angle } => write!(f, "RY(q{}, {angle})", qubit.index()),
            Gate::X { qubit } => write!(f, "X(q{})", qubit.index()),
            Gate::Cz => write!(f, "CZ"),
        }
    }
}

/// Ordered gate list, applied first to last.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitRepr")]
pub struct Circuit {
    gates: Vec<Gate>,
}

#[derive(Deserialize)]
struct CircuitRepr {
    gates: Vec<Gate>,
}

impl TryFrom<CircuitRepr> for Circuit {
    type Error = Error;
    fn try_from(r: CircuitRepr) -> Result<Self> {
        Circuit::from_gates(r.gates)
    }
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_gates(gates: Vec<Gate>) -> Result<Self> {
        gates.iter().try_for_each(Gate::validate)?;
        Ok(Self { gates })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate()?;
        self.gates.push(gate);
        Ok(())
    }

    pub(crate) fn push_valid(&mut self, gate: Gate) {
        debug_assert!(gate.validate().is_ok());
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &Circuit) {
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn cz_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_local()).count()
    }

    /// Gates in reverse order with every rotation angle negated.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }
}

/// `Ry(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`
pub fn ry_matrix(angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    [[c, -s], [s, c]]
}

pub const X_MATRIX: Mat2 = [[0.0, 1.0], [1.0, 0.0]];
pub const IDENTITY2: Mat2 = [[1.0, 0.0], [0.0, 1.0]];

pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    m
}

/// Lifts a single-qubit matrix onto `qubit`.
pub fn lift(single: &Mat2, qubit: Qubit) -> Mat4 {
    match qubit {
        Qubit::Q0 => kron(single, &IDENTITY2),
        Qubit::Q1 => kron(&IDENTITY2, single),
    }
}

pub fn gate_matrix(g: &Gate) -> Mat4 {
    match *g {
        Gate::Ry { qubit, angle } => lift(&ry_matrix(angle), qubit),
        Gate::X { qubit } => lift(&X_MATRIX, qubit),
        Gate::Cz => {
            let mut m = [[0.0; 4]; 4];
            m[0][0] = 1.0;
            m[1][1] = 1.0;
            m[2][2] = 1.0;
            m[3][3] = -1.0;
            m
        }
    }
}

pub fn mat_vec(m: &Mat4, v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(m.iter()) {
        *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

pub fn apply_gate(g: &Gate, s: &RealState) -> RealState {
    RealState::from_raw(mat_vec(&gate_matrix(g), &s.amplitudes()))
}

pub fn apply(c: &Circuit, s: &RealState) -> RealState {
    c.gates.iter().fold(*s, |acc, g| apply_gate(g, &acc))
}

/// Reduced density matrix of the qubit `keep`, tracing out the other one.
pub fn reduced_density(s: &RealState, keep: Qubit) -> Mat2 {
    // amplitudes as a 2×2 matrix A[q0][q1]; ρ0 = A Aᵀ, ρ1 = Aᵀ A
    let [w1, w2, w3, w4] = s.amplitudes();
    match keep {
        Qubit::Q0 => [
            [w1 * w1 + w2 * w2, w1 * w3 + w2 * w4],
            [w1 * w3 + w2 * w4, w3 * w3 + w4 * w4],
        ],
        Qubit::Q1 => [
            [w1 * w1 + w3 * w3, w1 * w2 + w3 * w4],
            [w1 * w2 + w3 * w4, w2 * w2 + w4 * w4],
        ],
    }
}

/// Eigenvalues of a real symmetric 2×2 matrix by the quadratic formula,
/// larger first, each clamped to `[0, 1]`.
pub fn symmetric_eigenvalues(m: &Mat2) -> (f64, f64) {
    let half_trace = (m[0][0] + m[1][1]) / 2.0;
    let half_gap = ((m[0][0] - m[1][1]) / 2.0).hypot(m[0][1]);
    let clamp = |v: f64| v.clamp(0.0, 1.0);
    (clamp(half_trace + half_gap), clamp(half_trace - half_gap))
}

pub fn reduced_eigenvalues_of(s: &RealState, keep: Qubit) -> (f64, f64) {
    symmetric_eigenvalues(&reduced_density(s, keep))
}

/// Eigenvalues `(λ₁ ≥ λ₂)` of the reduced state of qubit 0.
pub fn reduced_eigenvalues(s: &RealState) -> (f64, f64) {
    reduced_eigenvalues_of(s, Qubit::Q0)
}

pub(crate) fn xlog2x(p: f64) -> f64 {
    if p < ZERO_EIGENVALUE {
        0.0
    } else {
        p * p.log2()
    }
}

/// Von Neumann entropy (base 2) of either reduced state.
pub fn entropy_oracle(s: &RealState) -> f64 {
    let (l1, l2) = reduced_eigenvalues(s);
    0.0 - (xlog2x(l1) + xlog2x(l2))
}
