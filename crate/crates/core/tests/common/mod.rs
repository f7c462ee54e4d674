//! Reference implementations shared by the integration tests.
//!
//! `reference_unitary` builds each gate's full matrix straight from its
//! definition on basis states and multiplies them, sharing no code with the
//! library simulator.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64 as C;
use qoracle::{Circuit, GateKind, UnitaryMatrix};

pub type Dense = Vec<Vec<C>>;

pub fn identity(dim: usize) -> Dense {
    (0..dim)
        .map(|r| (0..dim).map(|c| if r == c { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) }).collect())
        .collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn one_qubit(kind: GateKind) -> [[C; 2]; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = C::new(0.0, 0.0);
    let o = C::new(1.0, 0.0);
    match kind {
        GateKind::H => [[C::new(r, 0.0), C::new(r, 0.0)], [C::new(r, 0.0), C::new(-r, 0.0)]],
        GateKind::X => [[z, o], [o, z]],
        // sqrt(X) = (1/2) [[1+i, 1-i], [1-i, 1+i]]
        GateKind::SX => [[C::new(0.5, 0.5), C::new(0.5, -0.5)], [C::new(0.5, -0.5), C::new(0.5, 0.5)]],
        GateKind::Z => [[o, z], [z, -o]],
        GateKind::RZ(t) => [[C::new(0.0, -t / 2.0).exp(), z], [z, C::new(0.0, t / 2.0).exp()]],
        GateKind::P(t) => [[o, z], [z, C::new(0.0, t).exp()]],
        _ => unreachable!("multi-qubit kind"),
    }
}

fn gate_matrix(n: usize, kind: GateKind, qubits: &[usize]) -> Dense {
    let dim = 1usize << n;
    let bit = |x: usize, q: usize| (x >> q) & 1;
    let mut m = vec![vec![C::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        match kind {
            GateKind::CX => {
                let row = if bit(col, qubits[0]) == 1 { col ^ (1 << qubits[1]) } else { col };
                m[row][col] = C::new(1.0, 0.0);
            }
            GateKind::CP(t) => {
                let on = bit(col, qubits[0]) == 1 && bit(col, qubits[1]) == 1;
                m[col][col] = if on { C::new(0.0, t).exp() } else { C::new(1.0, 0.0) };
            }
            GateKind::MCZ => {
                let on = qubits.iter().all(|&q| bit(col, q) == 1);
                m[col][col] = C::new(if on { -1.0 } else { 1.0 }, 0.0);
            }
            single => {
                let u = one_qubit(single);
                let q = qubits[0];
                let b = bit(col, q);
                for out in 0..2 {
                    let row = (col & !(1 << q)) | (out << q);
                    m[row][col] += u[out][b];
                }
            }
        }
    }
    m
}

pub fn reference_unitary(c: &Circuit) -> Dense {
    let dim = 1usize << c.n_qubits();
    c.gates().iter().fold(identity(dim), |acc, g| {
        matmul(&gate_matrix(c.n_qubits(), g.kind(), g.qubits()), &acc)
    })
}

pub fn max_diff(u: &UnitaryMatrix, d: &Dense) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, row) in d.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            worst = worst.max((u.get(r, c) - v).norm());
        }
    }
    worst
}

/// Diagonal +-1 matrix with -1 where `marked` holds.
pub fn phase_diagonal(n: usize, marked: impl Fn(u64) -> bool) -> Dense {
    let dim = 1usize << n;
    let mut d = identity(dim);
    for x in 0..dim {
        if marked(x as u64) {
            d[x][x] = C::new(-1.0, 0.0);
        }
    }
    d
}

/// Permutation matrix sending column `x` to row `f(x)`, with entry `sign(x)`.
pub fn signed_permutation(n: usize, f: impl Fn(u64) -> u64, sign: impl Fn(u64) -> f64) -> Dense {
    let dim = 1usize << n;
    let mut d = vec![vec![C::new(0.0, 0.0); dim]; dim];
    for x in 0..dim as u64 {
        d[f(x) as usize][x as usize] = C::new(sign(x), 0.0);
    }
    d
}

pub fn dft(n: usize) -> Dense {
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| C::from_polar(norm, 2.0 * std::f64::consts::PI * ((r * c) % dim) as f64 / dim as f64))
                .collect()
        })
        .collect()
}

/// Smallest distance between `a` and `phi * b` over unit scalars `phi`.
pub fn phase_insensitive_diff(a: &Dense, b: &Dense) -> f64 {
    let mut inner = C::new(0.0, 0.0);
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            inner += y.conj() * x;
        }
    }
    let phi = if inner.norm() > 0.0 { inner / inner.norm() } else { C::new(1.0, 0.0) };
    let mut worst: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            worst = worst.max((x - phi * y).norm());
        }
    }
    worst
}

pub fn to_dense(u: &UnitaryMatrix) -> Dense {
    (0..u.dim()).map(|r| (0..u.dim()).map(|c| u.get(r, c)).collect()).collect()
}
