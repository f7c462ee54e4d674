//! Gate and circuit representation, composition and the ASAP layered depth metric.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{CircuitError, Result};

/// Qubit operand list. Most gates touch one or two qubits.
pub type Operands = SmallVec<[usize; 2]>;

/// Gate kind, carrying the rotation angle for parametric gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    H,
    X,
    SX,
    Z,
    RZ(f64),
    P(f64),
    CX,
    CP(f64),
    /// Multi-controlled Z. Every operand is a symmetric participant.
    MCZ,
}

/// Parameter-free tag of a [`GateKind`], used for basis sets and lookups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateType {
    H,
    X,
    SX,
    Z,
    RZ,
    P,
    CX,
    CP,
    MCZ,
}

impl GateType {
    pub const ALL: [GateType; 9] = [
        GateType::H,
        GateType::X,
        GateType::SX,
        GateType::Z,
        GateType::RZ,
        GateType::P,
        GateType::CX,
        GateType::CP,
        GateType::MCZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateType::H => "H",
            GateType::X => "X",
            GateType::SX => "SX",
            GateType::Z => "Z",
            GateType::RZ => "RZ",
            GateType::P => "P",
            GateType::CX => "CX",
            GateType::CP => "CP",
            GateType::MCZ => "MCZ",
        }
    }

    pub fn from_name(name: &str) -> Option<GateType> {
        GateType::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(name))
    }

    pub fn is_parametric(self) -> bool {
        matches!(self, GateType::RZ | GateType::P | GateType::CP)
    }

    /// Fixed operand count, or `None` for variadic kinds.
    pub fn arity(self) -> Option<usize> {
        match self {
            GateType::CX | GateType::CP => Some(2),
            GateType::MCZ => None,
            _ => Some(1),
        }
    }
}

impl fmt::Display for GateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl GateKind {
    pub fn gate_type(&self) -> GateType {
        match self {
            GateKind::H => GateType::H,
            GateKind::X => GateType::X,
            GateKind::SX => GateType::SX,
            GateKind::Z => GateType::Z,
            GateKind::RZ(_) => GateType::RZ,
            GateKind::P(_) => GateType::P,
            GateKind::CX => GateType::CX,
            GateKind::CP(_) => GateType::CP,
            GateKind::MCZ => GateType::MCZ,
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            GateKind::RZ(t) | GateKind::P(t) | GateKind::CP(t) => Some(t),
            _ => None,
        }
    }

    /// Rebuilds a kind from its tag and optional angle.
    pub fn from_parts(ty: GateType, theta: Option<f64>) -> Result<GateKind> {
        let need = |t: Option<f64>| t.ok_or(CircuitError::MissingTheta(ty));
        if !ty.is_parametric() && theta.is_some() {
            return Err(CircuitError::UnexpectedTheta(ty));
        }
        Ok(match ty {
            GateType::H => GateKind::H,
            GateType::X => GateKind::X,
            GateType::SX => GateKind::SX,
            GateType::Z => GateKind::Z,
            GateType::RZ => GateKind::RZ(need(theta)?),
            GateType::P => GateKind::P(need(theta)?),
            GateType::CX => GateKind::CX,
            GateType::CP => GateKind::CP(need(theta)?),
            GateType::MCZ => GateKind::MCZ,
        })
    }
}

/// One gate instance: a kind plus its ordered qubit operands.
///
/// Construction checks arity, operand distinctness and that any angle is finite.
/// Range checks against a qubit count happen when the gate joins a [`Circuit`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: Operands,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        let ty = kind.gate_type();
        match ty.arity() {
            Some(k) if k != qubits.len() => {
                return Err(CircuitError::Arity {
                    kind: ty,
                    expected: k,
                    got: qubits.len(),
                })
            }
            None if qubits.is_empty() => return Err(CircuitError::EmptyOperands(ty)),
            _ => {}
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(CircuitError::DuplicateOperand(*q));
            }
        }
        if let Some(t) = kind.theta() {
            if !t.is_finite() {
                return Err(CircuitError::NonFiniteTheta);
            }
        }
        Ok(Gate {
            kind,
            qubits: SmallVec::from_slice(qubits),
        })
    }

    pub fn h(q: usize) -> Gate {
        Gate::one(GateKind::H, q)
    }

    pub fn x(q: usize) -> Gate {
        Gate::one(GateKind::X, q)
    }

    pub fn sx(q: usize) -> Gate {
        Gate::one(GateKind::SX, q)
    }

    pub fn z(q: usize) -> Gate {
        Gate::one(GateKind::Z, q)
    }

    /// Panics if `theta` is not finite.
    pub fn rz(theta: f64, q: usize) -> Gate {
        assert!(theta.is_finite(), "RZ angle must be finite");
        Gate::one(GateKind::RZ(theta), q)
    }

    /// Panics if `theta` is not finite.
    pub fn p(theta: f64, q: usize) -> Gate {
        assert!(theta.is_finite(), "P angle must be finite");
        Gate::one(GateKind::P(theta), q)
    }

    /// Panics if `control == target`.
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::new(GateKind::CX, &[control, target]).expect("CX operands must differ")
    }

    /// Panics if `control == target` or `theta` is not finite.
    pub fn cp(theta: f64, control: usize, target: usize) -> Gate {
        Gate::new(GateKind::CP(theta), &[control, target]).expect("invalid CP gate")
    }

    pub fn mcz(participants: &[usize]) -> Result<Gate> {
        Gate::new(GateKind::MCZ, participants)
    }

    fn one(kind: GateKind, q: usize) -> Gate {
        Gate {
            kind,
            qubits: smallvec::smallvec![q],
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn gate_type(&self) -> GateType {
        self.kind.gate_type()
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits.iter().copied().max().unwrap_or(0)
    }

    /// Same gate with every operand `q` replaced by `map[q]`.
    pub fn relabel(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| map[q]).collect(),
        }
    }
}

/// Ordered gate sequence over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit. Panics on a zero qubit count; see [`Circuit::try_new`].
    pub fn new(n_qubits: usize) -> Circuit {
        Circuit::try_new(n_qubits).expect("circuit needs at least one qubit")
    }

    pub fn try_new(n_qubits: usize) -> Result<Circuit> {
        if n_qubits == 0 {
            return Err(CircuitError::ZeroQubits);
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::try_new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
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

    fn check(&self, gate: &Gate) -> Result<()> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.n_qubits) {
            return Err(CircuitError::OperandOutOfRange {
                qubit: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// In-place append.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Value-semantics append: `self` is left untouched.
    pub fn append(&self, gate: Gate) -> Result<Circuit> {
        let mut out = self.clone();
        out.push(gate)?;
        Ok(out)
    }

    /// Gates of `self` followed by gates of `second`.
    pub fn compose(&self, second: &Circuit) -> Result<Circuit> {
        if self.n_qubits != second.n_qubits {
            return Err(CircuitError::QubitCountMismatch {
                left: self.n_qubits,
                right: second.n_qubits,
            });
        }
        let mut gates = Vec::with_capacity(self.gates.len() + second.gates.len());
        gates.extend_from_slice(&self.gates);
        gates.extend_from_slice(&second.gates);
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates,
        })
    }

    pub(crate) fn extend_unchecked(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    /// Circuit with qubit `q` renamed to `perm[q]` in every gate.
    pub fn relabel(&self, perm: &[usize]) -> Result<Circuit> {
        if perm.len() != self.n_qubits {
            return Err(CircuitError::BadPermutation);
        }
        let mut seen = vec![false; self.n_qubits];
        for &p in perm {
            if p >= self.n_qubits || seen[p] {
                return Err(CircuitError::BadPermutation);
            }
            seen[p] = true;
        }
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().map(|g| g.relabel(perm)).collect(),
        })
    }

    /// Inverse circuit: gates reversed, each replaced by its inverse.
    pub fn inverse(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in self.gates.iter().rev() {
            let q = g.qubits();
            match g.kind() {
                GateKind::RZ(t) => gates.push(Gate::rz(-t, q[0])),
                GateKind::P(t) => gates.push(Gate::p(-t, q[0])),
                GateKind::CP(t) => gates.push(Gate::cp(-t, q[0], q[1])),
                // SX^-1 = SX^3
                GateKind::SX => gates.extend([Gate::sx(q[0]), Gate::sx(q[0]), Gate::sx(q[0])]),
                _ => gates.push(g.clone()),
            }
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates,
        }
    }

    /// Layer count under greedy as-soon-as-possible scheduling.
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let layer = 1 + g.qubits().iter().map(|&q| frontier[q]).max().unwrap_or(0);
            for &q in g.qubits() {
                frontier[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// Distinct gate types present, sorted.
    pub fn gate_types(&self) -> Vec<GateType> {
        let mut types: Vec<GateType> = self.gates.iter().map(Gate::gate_type).collect();
        types.sort();
        types.dedup();
        types
    }

    pub fn count_type(&self, ty: GateType) -> usize {
        self.gates.iter().filter(|g| g.gate_type() == ty).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_keeps_input() {
        let c = Circuit::new(3);
        let d = c.append(Gate::h(0)).unwrap();
        assert_eq!(c.len(), 0);
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn duplicate_operands_rejected() {
        assert_eq!(
            Gate::new(GateKind::CX, &[1, 1]),
            Err(CircuitError::DuplicateOperand(1))
        );
        assert!(Gate::mcz(&[0, 2, 0]).is_err());
    }

    #[test]
    fn out_of_range_rejected() {
        let c = Circuit::new(3);
        assert_eq!(
            c.append(Gate::x(5)),
            Err(CircuitError::OperandOutOfRange {
                qubit: 5,
                n_qubits: 3
            })
        );
    }

    #[test]
    fn bad_gates() {
        assert!(Gate::mcz(&[]).is_err());
        assert!(Gate::new(GateKind::RZ(f64::NAN), &[0]).is_err());
        assert!(Gate::new(GateKind::CX, &[0]).is_err());
        assert!(Gate::new(GateKind::H, &[0, 1]).is_err());
        assert!(Circuit::try_new(0).is_err());
    }

    #[test]
    fn compose_checks_width() {
        let a = Circuit::new(2);
        let b = Circuit::new(3);
        assert!(a.compose(&b).is_err());
        let c = Circuit::from_gates(3, [Gate::h(0), Gate::cx(0, 1)]).unwrap();
        assert_eq!(c.compose(&b).unwrap(), c);
    }

    #[test]
    fn depth_examples() {
        let par = Circuit::from_gates(2, [Gate::h(0), Gate::h(1)]).unwrap();
        assert_eq!(par.depth(), 1);
        let ser = Circuit::from_gates(2, [Gate::h(0), Gate::x(0)]).unwrap();
        assert_eq!(ser.depth(), 2);
        assert_eq!(Circuit::new(4).depth(), 0);
        let ladder =
            Circuit::from_gates(3, [Gate::cx(0, 1), Gate::h(2), Gate::cx(1, 2), Gate::x(0)]).unwrap();
        assert_eq!(ladder.depth(), 2);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let c = Circuit::from_gates(3, [Gate::cx(0, 2)]).unwrap();
        assert!(c.relabel(&[0, 0, 1]).is_err());
        assert!(c.relabel(&[0, 1]).is_err());
        let r = c.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(r.gates()[0].qubits(), &[2, 1]);
    }

    #[test]
    fn type_names_round_trip() {
        for t in GateType::ALL {
            assert_eq!(GateType::from_name(t.name()), Some(t));
        }
        assert_eq!(GateType::from_name("swap"), None);
    }
}
