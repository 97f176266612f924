//! JSON documents emitted by the command-line tool.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{classify, entropy_from_distance, OrbitKind, OrbitSheet};
use crate::sim::{Circuit, Gate};
use crate::state::{concurrence, to_bell, RealState, Tolerance};
use crate::synthesis::{prepare, prepare_residual};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub d: f64,
    pub entropy: f64,
    pub class: OrbitKind,
    pub sheet: OrbitSheet,
    pub bell: [f64; 4],
    pub concurrence: f64,
}

pub fn classify_report(s: &RealState, class_tol: Tolerance) -> ClassifyReport {
    let class = classify(s, class_tol);
    ClassifyReport {
        d: class.d,
        entropy: entropy_from_distance(class.d).expect("classified distance lies in [0, π/4]"),
        class: class.kind,
        sheet: class.sheet,
        bell: to_bell(s).coords(),
        concurrence: concurrence(s),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrepareReport {
    pub gates: Vec<Gate>,
    pub residual: f64,
}

pub fn prepare_report(w: &RealState) -> PrepareReport {
    let circuit = prepare(w);
    PrepareReport {
        residual: prepare_residual(w, &circuit),
        gates: circuit.gates().to_vec(),
    }
}

impl PrepareReport {
    pub fn circuit(&self) -> Result<Circuit> {
        Circuit::from_gates(self.gates.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub d: f64,
    pub states: Vec<RealState>,
}
