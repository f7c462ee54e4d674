use thiserror::Error;

use crate::circuit::GateType;

pub type Result<T, E = CircuitError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one qubit")]
    ZeroQubits,
    #[error("qubit {qubit} is out of range for a {n_qubits}-qubit circuit")]
    OperandOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {0} appears more than once in a gate")]
    DuplicateOperand(usize),
    #[error("{kind} takes {expected} operand(s), got {got}")]
    Arity {
        kind: GateType,
        expected: usize,
        got: usize,
    },
    #[error("{0} needs at least one operand")]
    EmptyOperands(GateType),
    #[error("gate angle must be finite")]
    NonFiniteTheta,
    #[error("{0} requires an angle")]
    MissingTheta(GateType),
    #[error("{0} does not take an angle")]
    UnexpectedTheta(GateType),
    #[error("cannot compose a {left}-qubit circuit with a {right}-qubit circuit")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("not a permutation of the circuit's qubits")]
    BadPermutation,
    #[error("basis set is empty")]
    EmptyBasis,
    #[error("no decomposition rule lowers {0} into the basis")]
    NoRule(GateType),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("state needs at least one qubit")]
    ZeroQubits,
    #[error("{n} qubits exceeds the simulation cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("circuit acts on {circuit} qubits but the state has {state}")]
    QubitCountMismatch { circuit: usize, state: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("basis index {index} is out of range for {n} qubits")]
    BasisOutOfRange { index: usize, n: usize },
    #[error("state vector is zero")]
    ZeroState,
    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("qubit count must be at least 1")]
    ZeroQubits,
    #[error("{n} qubits is beyond the supported width of {max}")]
    TooWide { n: usize, max: usize },
    #[error("threshold {m} is outside [0, {max}]")]
    ThresholdOutOfRange { m: u64, max: u64 },
    #[error("range [{n1}, {n2}] is invalid for {n} qubits")]
    BadRange { n: usize, n1: u64, n2: u64 },
    #[error("participant set is empty")]
    EmptyParticipants,
    #[error("missing builder parameter: {0}")]
    MissingParam(&'static str),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
