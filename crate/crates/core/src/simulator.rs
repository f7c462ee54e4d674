//! Dense statevector simulation, unitary extraction and phase profiles.
//!
//! Basis index bit `k` is qubit `k`, so qubit 0 is the least significant bit and
//! basis state `|i>` stands for the integer `i`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::SimError;

pub type C64 = Complex64;

/// Largest qubit count accepted for state simulation.
pub const STATE_QUBIT_CAP: usize = 20;
/// Default largest qubit count for unitary extraction.
pub const UNITARY_QUBIT_CAP: usize = 10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// 2x2 matrix of a single-qubit gate kind, row-major. `None` for multi-qubit kinds.
pub fn single_qubit_matrix(kind: GateKind) -> Option<[[C64; 2]; 2]> {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let m = match kind {
        GateKind::H => [[h, h], [h, -h]],
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::SX => {
            let a = C64::new(0.5, 0.5);
            let b = C64::new(0.5, -0.5);
            [[a, b], [b, a]]
        }
        GateKind::Z => [[ONE, ZERO], [ZERO, -ONE]],
        GateKind::RZ(t) => [
            [C64::from_polar(1.0, -t / 2.0), ZERO],
            [ZERO, C64::from_polar(1.0, t / 2.0)],
        ],
        GateKind::P(t) => [[ONE, ZERO], [ZERO, C64::from_polar(1.0, t)]],
        GateKind::CX | GateKind::CP(_) | GateKind::MCZ => return None,
    };
    Some(m)
}

/// Amplitude vector over `n` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    fn check_width(n: usize) -> Result<(), SimError> {
        if n == 0 {
            return Err(SimError::ZeroQubits);
        }
        if n > STATE_QUBIT_CAP {
            return Err(SimError::CapExceeded {
                n,
                cap: STATE_QUBIT_CAP,
            });
        }
        Ok(())
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<StateVector, SimError> {
        Self::check_width(n)?;
        if index >= 1 << n {
            return Err(SimError::BasisOutOfRange { index, n });
        }
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index] = ONE;
        Ok(StateVector {
            n_qubits: n,
            amplitudes,
        })
    }

    pub fn zero(n: usize) -> Result<StateVector, SimError> {
        StateVector::basis(n, 0)
    }

    /// Equal superposition of every basis state with no relative phase.
    pub fn uniform(n: usize) -> Result<StateVector, SimError> {
        Self::check_width(n)?;
        let dim = 1usize << n;
        let a = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector {
            n_qubits: n,
            amplitudes: vec![a; dim],
        })
    }

    /// Wraps raw amplitudes. The length must be a power of two; no normalization is applied.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<StateVector, SimError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(len));
        }
        let n = len.trailing_zeros() as usize;
        Self::check_width(n)?;
        Ok(StateVector {
            n_qubits: n,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies one gate in place. The gate must fit this state's width.
    pub fn apply_gate(&mut self, gate: &Gate) {
        let qs = gate.qubits();
        let amps = &mut self.amplitudes;
        match gate.kind() {
            GateKind::CX => {
                let (c, t) = (1usize << qs[0], 1usize << qs[1]);
                for i in 0..amps.len() {
                    if i & c != 0 && i & t == 0 {
                        amps.swap(i, i | t);
                    }
                }
            }
            GateKind::CP(theta) => {
                let mask = (1usize << qs[0]) | (1usize << qs[1]);
                let ph = C64::from_polar(1.0, theta);
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a *= ph;
                    }
                }
            }
            GateKind::MCZ => {
                let mask = qs.iter().fold(0usize, |m, &q| m | (1 << q));
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
            kind => {
                let m = single_qubit_matrix(kind).expect("single-qubit kind");
                let bit = 1usize << qs[0];
                for i in 0..amps.len() {
                    if i & bit == 0 {
                        let (a0, a1) = (amps[i], amps[i | bit]);
                        amps[i] = m[0][0] * a0 + m[0][1] * a1;
                        amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(SimError::QubitCountMismatch {
                circuit: circuit.n_qubits(),
                state: self.n_qubits,
            });
        }
        for g in circuit.gates() {
            self.apply_gate(g);
        }
        Ok(())
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: C64, other: &StateVector, beta: C64) -> Result<StateVector, SimError> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(SimError::DimensionMismatch(
                self.amplitudes.len(),
                other.amplitudes.len(),
            ));
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        })
    }

    /// Largest elementwise |self - other|.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64, SimError> {
        max_abs_diff(&self.amplitudes, &other.amplitudes)
    }
}

/// Returns `U * state` as a new vector.
pub fn apply_circuit(circuit: &Circuit, state: &StateVector) -> Result<StateVector, SimError> {
    let mut out = state.clone();
    out.apply_circuit(circuit)?;
    Ok(out)
}

/// Dense `2^n x 2^n` unitary stored column-major: column `j` is the circuit applied to `|j>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryMatrix {
    n_qubits: usize,
    data: Vec<C64>,
}

impl UnitaryMatrix {
    pub fn identity(n: usize) -> UnitaryMatrix {
        let dim = 1usize << n;
        let mut data = vec![ZERO; dim * dim];
        for j in 0..dim {
            data[j * dim + j] = ONE;
        }
        UnitaryMatrix { n_qubits: n, data }
    }

    /// Builds from a row-major nested array, mainly for tests.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<UnitaryMatrix, SimError> {
        let dim = rows.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(dim));
        }
        let mut data = vec![ZERO; dim * dim];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(SimError::DimensionMismatch(row.len(), dim));
            }
            for (c, v) in row.iter().enumerate() {
                data[c * dim + r] = *v;
            }
        }
        Ok(UnitaryMatrix {
            n_qubits: dim.trailing_zeros() as usize,
            data,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[col * self.dim() + row]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        let dim = self.dim();
        self.data[col * dim + row] = v;
    }

    pub fn column(&self, col: usize) -> &[C64] {
        let dim = self.dim();
        &self.data[col * dim..(col + 1) * dim]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix, SimError> {
        let dim = self.dim();
        if rhs.dim() != dim {
            return Err(SimError::DimensionMismatch(dim, rhs.dim()));
        }
        let mut data = vec![ZERO; dim * dim];
        for j in 0..dim {
            for k in 0..dim {
                let b = rhs.get(k, j);
                if b == ZERO {
                    continue;
                }
                let col = self.column(k);
                for i in 0..dim {
                    data[j * dim + i] += col[i] * b;
                }
            }
        }
        Ok(UnitaryMatrix {
            n_qubits: self.n_qubits,
            data,
        })
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        let dim = self.dim();
        let mut out = self.clone();
        for i in 0..dim {
            for j in 0..dim {
                out.data[j * dim + i] = self.get(j, i).conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64, SimError> {
        max_abs_diff(&self.data, &other.data)
    }

    /// Largest elementwise deviation of `U^dagger U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.adjoint().mul(self).expect("square");
        prod.max_abs_diff(&UnitaryMatrix::identity(self.n_qubits))
            .expect("same size")
    }

    /// Largest |entry| off the main diagonal.
    pub fn max_off_diagonal(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for j in 0..dim {
            for (i, v) in self.column(j).iter().enumerate() {
                if i != j {
                    worst = worst.max(v.norm());
                }
            }
        }
        worst
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.max_off_diagonal() <= tol
    }
}

/// Unitary of `circuit`, refusing circuits wider than [`UNITARY_QUBIT_CAP`].
pub fn circuit_unitary(circuit: &Circuit) -> Result<UnitaryMatrix, SimError> {
    circuit_unitary_with_cap(circuit, UNITARY_QUBIT_CAP)
}

pub fn circuit_unitary_with_cap(circuit: &Circuit, cap: usize) -> Result<UnitaryMatrix, SimError> {
    let n = circuit.n_qubits();
    if n > cap {
        return Err(SimError::CapExceeded { n, cap });
    }
    let dim = 1usize << n;
    let mut data = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        let mut s = StateVector::basis(n, j)?;
        s.apply_circuit(circuit)?;
        data.extend_from_slice(&s.amplitudes);
    }
    Ok(UnitaryMatrix { n_qubits: n, data })
}

/// Anything that can be viewed as a flat amplitude array for phase-insensitive comparison.
pub trait Amplitudes {
    fn flat(&self) -> &[C64];
}

impl Amplitudes for StateVector {
    fn flat(&self) -> &[C64] {
        &self.amplitudes
    }
}

impl Amplitudes for UnitaryMatrix {
    fn flat(&self) -> &[C64] {
        &self.data
    }
}

fn max_abs_diff(a: &[C64], b: &[C64]) -> Result<f64, SimError> {
    if a.len() != b.len() {
        return Err(SimError::DimensionMismatch(a.len(), b.len()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Max elementwise |a - phi * b| after choosing the unit scalar `phi` from the
/// largest-magnitude entry of `b`.
pub fn global_phase_distance<T: Amplitudes + ?Sized>(a: &T, b: &T) -> Result<f64, SimError> {
    let (a, b) = (a.flat(), b.flat());
    if a.len() != b.len() {
        return Err(SimError::DimensionMismatch(a.len(), b.len()));
    }
    let pivot = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let phi = if b[pivot].norm() == 0.0 || a[pivot].norm() == 0.0 {
        ONE
    } else {
        let r = a[pivot] / b[pivot];
        r / r.norm()
    };
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - phi * y).norm())
        .fold(0.0, f64::max))
}

/// True iff `a` equals `phi * b` for a single unit scalar `phi`, within `tol` elementwise.
pub fn equal_up_to_global_phase<T: Amplitudes + ?Sized>(
    a: &T,
    b: &T,
    tol: f64,
) -> Result<bool, SimError> {
    Ok(global_phase_distance(a, b)? <= tol)
}

/// Magnitudes at or below this are treated as zero in phase profiles.
pub const PROFILE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseEntry {
    pub index: usize,
    pub magnitude: f64,
    /// Radians in (-pi, pi], relative to the first nonzero amplitude.
    pub phase: f64,
}

/// Per-basis-state magnitude and relative phase of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseProfile {
    pub n_qubits: usize,
    pub entries: Vec<PhaseEntry>,
}

/// Maps an angle into (-pi, pi]. Values within 1e-12 of -pi snap to pi so a
/// sign flip always reads as +pi.
pub fn normalize_phase(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t <= -PI + PROFILE_EPS {
        t += 2.0 * PI;
    }
    t
}

pub fn phase_profile(state: &StateVector) -> Result<PhaseProfile, SimError> {
    let reference = state
        .amplitudes
        .iter()
        .find(|a| a.norm() > PROFILE_EPS)
        .ok_or(SimError::ZeroState)?
        .arg();
    let entries = state
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > PROFILE_EPS)
        .map(|(index, a)| PhaseEntry {
            index,
            magnitude: a.norm(),
            phase: normalize_phase(a.arg() - reference),
        })
        .collect();
    Ok(PhaseProfile {
        n_qubits: state.n_qubits,
        entries,
    })
}

impl PhaseProfile {
    pub fn entry(&self, index: usize) -> Option<&PhaseEntry> {
        self.entries.iter().find(|e| e.index == index)
    }

    /// Indices whose phase is within `tol` of pi.
    pub fn pi_phase_indices(&self, tol: f64) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| (e.phase - PI).abs() <= tol)
            .map(|e| e.index)
            .collect()
    }
}

impl fmt::Display for PhaseProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.n_qubits;
        writeln!(f, "{:>6}  {:>w$}  {:>12}  {:>12}  {:>8}", "state", "bits", "magnitude", "phase", "phase/pi", w = w.max(4))?;
        for e in &self.entries {
            writeln!(
                f,
                "{:>6}  {:>w$}  {:>12.10}  {:>12.9}  {:>8.4}",
                e.index,
                format!("{:0w$b}", e.index, w = w),
                e.magnitude,
                e.phase,
                e.phase / PI,
                w = w.max(4)
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        for i in 0..dim {
            let row: Vec<String> = (0..dim)
                .map(|j| {
                    let v = self.get(i, j);
                    let re = if v.re.abs() < 1e-12 { 0.0 } else { v.re };
                    let im = if v.im.abs() < 1e-12 { 0.0 } else { v.im };
                    if im == 0.0 {
                        format!("{:>14}", format!("{re:.4}"))
                    } else {
                        format!("{:>14}", format!("{re:.4}{im:+.4}i"))
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
