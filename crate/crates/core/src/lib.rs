//! Construction, simulation, verification, depth analysis and documentation of
//! reusable quantum phase oracles.
//!
//! The crate centers on the range-of-integers phase oracle, which flips the sign
//! of every basis state `|x>` with `n1 <= x <= n2`, and its two implementations:
//!
//! - **A**: two less-than oracles, `less_than(n2 + 1)` then `less_than(n1)`.
//!   States below `n1` are marked twice and return to phase 0. Works on any input.
//! - **B**: `less_than(n2 - n1 + 1)` followed by a constant addition of `n1`.
//!   Shallower, but only correct on the uniform superposition with no relative phases.
//!
//! Supporting pieces are a small gate/circuit model ([`circuit`]), a dense
//! statevector simulator used as the brute-force oracle for every builder
//! ([`simulator`]), lowering to the `{CX, RZ, SX, X}` basis ([`decompose`]), the
//! depth sweep comparing A and B ([`depth`]) and generated reuse documentation
//! cards ([`cards`]).
//!
//! ```
//! use qoracle::oracles::{range_oracle_a, RangeSpec};
//! use qoracle::simulator::{apply_circuit, phase_profile, StateVector};
//!
//! let circuit = range_oracle_a(&RangeSpec::new(3, 4, 7).unwrap()).unwrap();
//! let out = apply_circuit(&circuit, &StateVector::uniform(3).unwrap()).unwrap();
//! let profile = phase_profile(&out).unwrap();
//! assert_eq!(profile.pi_phase_indices(1e-9), vec![4, 5, 6, 7]);
//! ```

pub mod cards;
pub mod circuit;
pub mod cli;
pub mod decompose;
pub mod depth;
pub mod error;
pub mod format;
pub mod oracles;
pub mod simulator;
pub mod verify;

pub use circuit::{Circuit, Gate, GateKind, GateType};
pub use decompose::{decompose_to_basis, BasisSet};
pub use error::{CircuitError, OracleError, SimError};
pub use simulator::{apply_circuit, circuit_unitary, PhaseProfile, StateVector, UnitaryMatrix};
