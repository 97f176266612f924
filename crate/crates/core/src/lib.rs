//! Real-amplitude two-qubit states: orbit geometry on the 3-sphere, entanglement
//! distance and entropy, and synthesis of local and single-CZ circuits, checked
//! against a dense simulator.
//!
//! ```
//! use rq2::{cz_connect, RealState, Tolerance};
//!
//! let plan = cz_connect(&RealState::ZERO, &RealState::bell(3), Tolerance::default()).unwrap();
//! assert_eq!(plan.cz_count(), 1);
//! assert!(plan.residual() < 1e-12);
//! ```

pub mod error;
pub mod geometry;
pub mod mesh;
pub mod report;
pub mod sampling;
pub mod sim;
pub mod state;
pub mod synthesis;

pub use error::{Error, Result};
pub use geometry::{
    classify, entanglement_distance, entropy_from_distance, gram_determinant, immersion_defect,
    parametrize, phi_surface, torus_angles, OrbitClass, OrbitKind, OrbitSheet, Sheet, TorusPoint,
};
pub use mesh::{orbit_mesh, MeshPoint, OrbitMesh};
pub use sim::{apply, entropy_oracle, gate_matrix, reduced_eigenvalues, Circuit, Gate, Qubit};
pub use state::{
    concurrence, from_bell, states_equal_up_to_sign, to_bell, BellCoords, RealState, Tolerance,
};
pub use synthesis::{cz_connect, local_connect, prepare, ConnectionPlan};
