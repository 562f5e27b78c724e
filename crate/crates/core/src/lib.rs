//! Finite-dimensional quantum sets, quantum relations, quantum posets and
//! quantum cpos, computed as concrete operator-space linear algebra.

pub mod error;
mod linalg;
pub mod opspace;
pub mod qcpo;
pub mod qorder;
pub mod qset;
#[cfg(feature = "testing")]
pub mod random;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
pub use opspace::{ComplexMatrix, OperatorSubspace};
pub use qcpo::{Chain, PointedQPoset, Pointedness};
pub use qorder::{KrausChannel, OrderAxioms, QPoset};
pub use qset::{QFunction, QRelation, QuantumSet};
pub use states::{DensityState, Observable};
