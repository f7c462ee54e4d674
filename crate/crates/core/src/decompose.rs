//! Lowering circuits to a hardware basis gate set.
//!
//! Lowering is exact up to a global phase and assumes all-to-all connectivity,
//! so no routing or SWAP insertion happens. After lowering, a peephole pass
//! merges runs of single-qubit gates and cancels adjacent CX pairs, in the
//! spirit of a light transpiler optimization level.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate, GateKind, GateType};
use crate::error::{CircuitError, Result};
use crate::simulator::{normalize_phase, single_qubit_matrix, C64};

/// Allowed gate kinds for lowered circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSet {
    kinds: BTreeSet<GateType>,
}

impl Default for BasisSet {
    /// `{CX, RZ, SX, X}`.
    fn default() -> Self {
        BasisSet {
            kinds: [GateType::CX, GateType::RZ, GateType::SX, GateType::X]
                .into_iter()
                .collect(),
        }
    }
}

impl BasisSet {
    pub fn new(kinds: impl IntoIterator<Item = GateType>) -> Result<BasisSet> {
        let kinds: BTreeSet<GateType> = kinds.into_iter().collect();
        if kinds.is_empty() {
            return Err(CircuitError::EmptyBasis);
        }
        Ok(BasisSet { kinds })
    }

    pub fn contains(&self, ty: GateType) -> bool {
        self.kinds.contains(&ty)
    }

    pub fn kinds(&self) -> impl Iterator<Item = GateType> + '_ {
        self.kinds.iter().copied()
    }

    fn supports_peephole(&self) -> bool {
        [GateType::RZ, GateType::SX, GateType::X, GateType::CX]
            .iter()
            .all(|t| self.contains(*t))
    }
}

impl FromStr for BasisSet {
    type Err = CircuitError;

    /// Comma or whitespace separated gate names, e.g. `"cx, rz, sx, x"`.
    fn from_str(s: &str) -> Result<BasisSet> {
        let kinds = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                GateType::from_name(t).ok_or_else(|| CircuitError::Parse {
                    line: 1,
                    msg: format!("unknown gate kind '{t}'"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BasisSet::new(kinds)
    }
}

impl fmt::Display for BasisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.kinds.iter().map(|k| k.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// Maximum rule-expansion nesting before a kind is declared unreachable.
const MAX_EXPANSION: usize = 8;

/// One rewrite step. Every rule is exact up to a global phase.
fn expand(gate: &Gate) -> Option<Vec<Gate>> {
    let q = gate.qubits();
    Some(match gate.kind() {
        GateKind::H => vec![Gate::rz(FRAC_PI_2, q[0]), Gate::sx(q[0]), Gate::rz(FRAC_PI_2, q[0])],
        GateKind::Z => vec![Gate::rz(PI, q[0])],
        GateKind::P(t) => vec![Gate::rz(t, q[0])],
        GateKind::X => vec![Gate::sx(q[0]), Gate::sx(q[0])],
        // sqrt(X) = H . S . H up to phase
        GateKind::SX => vec![Gate::h(q[0]), Gate::p(FRAC_PI_2, q[0]), Gate::h(q[0])],
        GateKind::RZ(t) => vec![Gate::p(t, q[0])],
        GateKind::CX => vec![Gate::h(q[1]), Gate::cp(PI, q[0], q[1]), Gate::h(q[1])],
        GateKind::CP(t) => {
            let (c, tq) = (q[0], q[1]);
            vec![
                Gate::rz(t / 2.0, c),
                Gate::rz(t / 2.0, tq),
                Gate::cx(c, tq),
                Gate::rz(-t / 2.0, tq),
                Gate::cx(c, tq),
            ]
        }
        GateKind::MCZ => mcz_phase_polynomial(q),
    })
}

/// Ancilla-free multi-controlled Z as a parity-phase network.
///
/// Uses `pi * x_1 ... x_k = (pi / 2^(k-1)) * sum over nonempty S of (-1)^(|S|+1) * parity(S)`.
/// Parities whose highest participant is `j` are accumulated on that qubit by
/// walking a Gray code over the lower participants, so each rotation costs one CX.
/// Gate count is `2^k - 1` rotations and `2^k - 2` CX gates for `k` participants.
pub fn mcz_phase_polynomial(participants: &[usize]) -> Vec<Gate> {
    let k = participants.len();
    if k == 1 {
        return vec![Gate::z(participants[0])];
    }
    let theta = PI / (1u64 << (k - 1)) as f64;
    let mut out = Vec::new();
    for j in 0..k {
        let target = participants[j];
        let signed = |subset_size: u32| {
            if subset_size % 2 == 1 {
                theta
            } else {
                -theta
            }
        };
        out.push(Gate::rz(signed(1), target));
        let steps = 1usize << j;
        for i in 1..steps {
            let flip = i.trailing_zeros() as usize;
            out.push(Gate::cx(participants[flip], target));
            let gray = i ^ (i >> 1);
            out.push(Gate::rz(signed(1 + gray.count_ones()), target));
        }
        if j > 0 {
            // Gray walk ends on the single-element subset {j - 1}.
            out.push(Gate::cx(participants[j - 1], target));
        }
    }
    out
}

fn lower_gate(gate: &Gate, basis: &BasisSet, level: usize, out: &mut Vec<Gate>) -> Result<()> {
    if basis.contains(gate.gate_type()) {
        out.push(gate.clone());
        return Ok(());
    }
    if level >= MAX_EXPANSION {
        return Err(CircuitError::NoRule(gate.gate_type()));
    }
    let parts = expand(gate).ok_or(CircuitError::NoRule(gate.gate_type()))?;
    for g in &parts {
        lower_gate(g, basis, level + 1, out)
            .map_err(|_| CircuitError::NoRule(gate.gate_type()))?;
    }
    Ok(())
}

/// Rewrites every gate into `basis` with the registered rules, without any optimization.
pub fn lower_to_basis(circuit: &Circuit, basis: &BasisSet) -> Result<Circuit> {
    let mut gates = Vec::with_capacity(circuit.len() * 4);
    for g in circuit.gates() {
        lower_gate(g, basis, 0, &mut gates)?;
    }
    let mut out = Circuit::try_new(circuit.n_qubits())?;
    out.extend_unchecked(gates);
    Ok(out)
}

/// Lowers into `basis` and then runs the peephole pass when the basis contains
/// `{CX, RZ, SX, X}`. The result equals the input's unitary up to a global phase.
pub fn decompose_to_basis(circuit: &Circuit, basis: &BasisSet) -> Result<Circuit> {
    let lowered = lower_to_basis(circuit, basis)?;
    if basis.supports_peephole() {
        Ok(peephole(&lowered))
    } else {
        Ok(lowered)
    }
}

type Mat2 = [[C64; 2]; 2];

fn matmul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

const SYNTH_EPS: f64 = 1e-12;

fn is_identity_up_to_phase(m: &Mat2) -> bool {
    m[0][1].norm() < SYNTH_EPS && m[1][0].norm() < SYNTH_EPS && (m[0][0] - m[1][1]).norm() < SYNTH_EPS
}

/// Pushes `RZ(angle)` unless it is the identity up to global phase.
fn push_rz(out: &mut Vec<GateKind>, angle: f64) {
    let a = normalize_phase(angle);
    if a.abs() > SYNTH_EPS && (a.abs() - 2.0 * PI).abs() > SYNTH_EPS {
        out.push(GateKind::RZ(a));
    }
}

/// Shortest `{RZ, SX, X}` sequence (in circuit order) equal to `u` up to global phase.
///
/// Writes `u ~ U3(theta, phi, lambda)` and special-cases theta in {0, pi/2, pi}.
pub fn synthesize_zsx(u: &Mat2) -> Vec<GateKind> {
    let cos = u[0][0].norm();
    let sin = u[1][0].norm();
    let theta = 2.0 * sin.atan2(cos);
    let (phi, lambda);
    if sin < SYNTH_EPS {
        phi = 0.0;
        lambda = (u[1][1] / u[0][0]).arg();
    } else if cos < SYNTH_EPS {
        lambda = 0.0;
        phi = (u[1][0] / -u[0][1]).arg();
    } else {
        phi = (u[1][0] / u[0][0]).arg();
        lambda = (-u[0][1] / u[0][0]).arg();
    }
    let mut out = Vec::new();
    if theta.abs() < SYNTH_EPS {
        push_rz(&mut out, phi + lambda);
    } else if (theta - PI).abs() < SYNTH_EPS {
        out.push(GateKind::X);
        push_rz(&mut out, phi - lambda - PI);
    } else if (theta - FRAC_PI_2).abs() < SYNTH_EPS {
        push_rz(&mut out, lambda - FRAC_PI_2);
        out.push(GateKind::SX);
        push_rz(&mut out, phi + FRAC_PI_2);
    } else {
        push_rz(&mut out, lambda);
        out.push(GateKind::SX);
        push_rz(&mut out, theta + PI);
        out.push(GateKind::SX);
        push_rz(&mut out, phi + PI);
    }
    out
}

enum Slot {
    Dead,
    Fixed(Gate),
    /// Run of single-qubit gates on one qubit with their accumulated matrix.
    Run { qubit: usize, matrix: Mat2, gates: Vec<Gate> },
}

/// Merges single-qubit runs into minimal `{RZ, SX, X}` form and cancels
/// back-to-back identical CX pairs. Input must already be in that basis.
pub fn peephole(circuit: &Circuit) -> Circuit {
    let n = circuit.n_qubits();
    let mut slots: Vec<Slot> = Vec::with_capacity(circuit.len());
    // Per-qubit stack of live slot indices touching that qubit.
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); n];

    let drop_identity_run = |slots: &mut Vec<Slot>, stacks: &mut Vec<Vec<usize>>, q: usize| {
        if let Some(&top) = stacks[q].last() {
            if let Slot::Run { matrix, .. } = &slots[top] {
                if is_identity_up_to_phase(matrix) {
                    slots[top] = Slot::Dead;
                    stacks[q].pop();
                }
            }
        }
    };

    for g in circuit.gates() {
        let qs = g.qubits();
        if let Some(m) = single_qubit_matrix(g.kind()) {
            let q = qs[0];
            if let Some(&top) = stacks[q].last() {
                if let Slot::Run { matrix, gates, .. } = &mut slots[top] {
                    *matrix = matmul(&m, matrix);
                    gates.push(g.clone());
                    continue;
                }
            }
            stacks[q].push(slots.len());
            slots.push(Slot::Run {
                qubit: q,
                matrix: m,
                gates: vec![g.clone()],
            });
            continue;
        }
        for &q in qs {
            drop_identity_run(&mut slots, &mut stacks, q);
        }
        if g.gate_type() == GateType::CX {
            let (c, t) = (qs[0], qs[1]);
            if let (Some(&a), Some(&b)) = (stacks[c].last(), stacks[t].last()) {
                if a == b {
                    if let Slot::Fixed(prev) = &slots[a] {
                        if prev == g {
                            slots[a] = Slot::Dead;
                            stacks[c].pop();
                            stacks[t].pop();
                            continue;
                        }
                    }
                }
            }
        }
        let idx = slots.len();
        for &q in qs {
            stacks[q].push(idx);
        }
        slots.push(Slot::Fixed(g.clone()));
    }

    let mut gates = Vec::with_capacity(slots.len());
    for slot in slots {
        match slot {
            Slot::Dead => {}
            Slot::Fixed(g) => gates.push(g),
            Slot::Run { qubit, matrix, gates: original } => {
                let synth = synthesize_zsx(&matrix);
                if synth.len() < original.len() {
                    gates.extend(synth.into_iter().map(|k| {
                        Gate::new(k, &[qubit]).expect("single-qubit synthesized gate")
                    }));
                } else {
                    gates.extend(original);
                }
            }
        }
    }
    let mut out = Circuit::new(n);
    out.extend_unchecked(gates);
    out
}
