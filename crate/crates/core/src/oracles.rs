//! Builders for the phase oracles: multi-controlled Z, less-than, QFT,
//! constant addition, and the two range-of-integers implementations.
//!
//! Every builder returns a [`Circuit`]; none of them look at an input state.
//! Builder parameters (thresholds, addends, range bounds) are baked into the
//! circuit and are not parameters of the resulting oracle.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::OracleError;

pub type Result<T> = std::result::Result<T, OracleError>;

/// Widest register the builders accept. Matches the statevector cap.
pub const MAX_QUBITS: usize = 20;

fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        Err(OracleError::ZeroQubits)
    } else if n > MAX_QUBITS {
        Err(OracleError::TooWide { n, max: MAX_QUBITS })
    } else {
        Ok(())
    }
}

/// Closed interval `[n1, n2]` of integers encoded on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeSpec {
    n: usize,
    n1: u64,
    n2: u64,
}

impl RangeSpec {
    /// Requires `0 <= n1 <= n2 <= 2^n - 1`.
    pub fn new(n: usize, n1: u64, n2: u64) -> Result<RangeSpec> {
        check_width(n)?;
        if n1 > n2 || n2 >= 1u64 << n {
            return Err(OracleError::BadRange { n, n1, n2 });
        }
        Ok(RangeSpec { n, n1, n2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }

    /// Number of integers in the range, `n2 - n1 + 1`.
    pub fn len(&self) -> u64 {
        self.n2 - self.n1 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u64) -> bool {
        self.n1 <= x && x <= self.n2
    }

    /// True for the strict interior ranges used by the depth sweep,
    /// `0 < n1 < n2 < 2^n - 1`.
    pub fn is_sweep_interior(&self) -> bool {
        0 < self.n1 && self.n1 < self.n2 && self.n2 < (1u64 << self.n) - 1
    }
}

/// Marks every basis state `x < m` on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LessThanSpec {
    n: usize,
    m: u64,
}

impl LessThanSpec {
    /// Requires `0 <= m <= 2^n`.
    pub fn new(n: usize, m: u64) -> Result<LessThanSpec> {
        check_width(n)?;
        let max = 1u64 << n;
        if m > max {
            return Err(OracleError::ThresholdOutOfRange { m, max });
        }
        Ok(LessThanSpec { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Constant addition `|x> -> |(x + a) mod 2^n>`. The addend is reduced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdderSpec {
    n: usize,
    a: u64,
}

impl AdderSpec {
    pub fn new(n: usize, a: u64) -> Result<AdderSpec> {
        check_width(n)?;
        Ok(AdderSpec {
            n,
            a: a & ((1u64 << n) - 1),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }
}

/// Phase flip on every basis state whose `participants` bits are all 1.
pub fn mcz(n: usize, participants: &[usize]) -> Result<Circuit> {
    check_width(n)?;
    let gate = match participants {
        [] => return Err(OracleError::EmptyParticipants),
        [q] => Gate::z(*q),
        qs => Gate::mcz(qs)?,
    };
    Ok(Circuit::from_gates(n, [gate])?)
}

/// Diagonal oracle with `-1` on every `x < m`.
///
/// For each set bit `i` of `m` (most significant first) one multi-controlled Z
/// acts on qubits `i..n`, with X conjugation on the qubits where the required
/// prefix bit is 0: bit `i` itself, and higher bits where `m` has a 0. Together
/// these mark the disjoint blocks of states that first fall below `m` at bit `i`.
/// X gates are only toggled when the required pattern changes between blocks.
///
/// `m = 0` is the empty circuit and `m = 2^n` is an explicit global `-1`
/// realized as `Z X Z X` on qubit 0.
pub fn less_than(spec: &LessThanSpec) -> Result<Circuit> {
    let n = spec.n;
    let m = spec.m;
    let mut c = Circuit::try_new(n)?;
    if m == 0 {
        return Ok(c);
    }
    if m == 1u64 << n {
        for g in [Gate::z(0), Gate::x(0), Gate::z(0), Gate::x(0)] {
            c.push(g)?;
        }
        return Ok(c);
    }
    let mut flipped = vec![false; n];
    for i in (0..n).rev().filter(|&i| m >> i & 1 == 1) {
        for (j, f) in flipped.iter_mut().enumerate().skip(i) {
            let want = j == i || m >> j & 1 == 0;
            if *f != want {
                c.push(Gate::x(j))?;
                *f = want;
            }
        }
        let participants: Vec<usize> = (i..n).collect();
        c.push(match participants.len() {
            1 => Gate::z(i),
            _ => Gate::mcz(&participants)?,
        })?;
    }
    for (j, f) in flipped.iter().enumerate() {
        if *f {
            c.push(Gate::x(j))?;
        }
    }
    Ok(c)
}

/// Fourier transform on `qubits` (listed least significant first) without the
/// final bit reversal. Afterwards `qubits[j]` carries the phase `exp(2 pi i x / 2^(j+1))`.
fn fourier_core(c: &mut Circuit, qubits: &[usize]) -> Result<()> {
    for j in (0..qubits.len()).rev() {
        c.push(Gate::h(qubits[j]))?;
        for k in (0..j).rev() {
            let angle = PI / (1u64 << (j - k)) as f64;
            c.push(Gate::cp(angle, qubits[k], qubits[j]))?;
        }
    }
    Ok(())
}

/// Quantum Fourier transform, `|x> -> 2^(-n/2) sum_y exp(2 pi i x y / 2^n) |y>`.
///
/// Includes the final qubit reversal (three CX per swap), so the unitary is the
/// textbook DFT matrix under the qubit-0-least-significant convention.
pub fn qft(n: usize) -> Result<Circuit> {
    check_width(n)?;
    let mut c = Circuit::try_new(n)?;
    let qubits: Vec<usize> = (0..n).collect();
    fourier_core(&mut c, &qubits)?;
    for j in 0..n / 2 {
        let (a, b) = (j, n - 1 - j);
        for g in [Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)] {
            c.push(g)?;
        }
    }
    Ok(c)
}

/// Exact inverse of [`qft`].
pub fn iqft(n: usize) -> Result<Circuit> {
    Ok(qft(n)?.inverse())
}

/// Draper constant adder: Fourier transform, one phase rotation per qubit
/// encoding the addend, inverse transform. Acts modulo `2^n` and preserves the
/// relative phases of a superposed input.
///
/// The `t` trailing zero bits of `a` never change, so the transform only spans
/// qubits `t..n` and adds `a >> t` there. `a = 0` gives the empty circuit.
/// The bit reversal of the full QFT is omitted on both sides since the two
/// reversals cancel.
pub fn add_const(spec: &AdderSpec) -> Result<Circuit> {
    let n = spec.n;
    let mut c = Circuit::try_new(n)?;
    if spec.a == 0 {
        return Ok(c);
    }
    let t = spec.a.trailing_zeros() as usize;
    let shifted = spec.a >> t;
    let reg: Vec<usize> = (t..n).collect();
    let mut fourier = Circuit::try_new(n)?;
    fourier_core(&mut fourier, &reg)?;
    c = c.compose(&fourier)?;
    for (j, &q) in reg.iter().enumerate() {
        // exp(2 pi i a / 2^(j+1)); only a mod 2^(j+1) matters
        let modulus = 1u64 << (j + 1);
        let residue = shifted % modulus;
        if residue != 0 {
            c.push(Gate::p(2.0 * PI * residue as f64 / modulus as f64, q))?;
        }
    }
    Ok(c.compose(&fourier.inverse())?)
}

/// Range oracle, implementation A: `less_than(n2 + 1)` then `less_than(n1)`.
///
/// States below `n1` are marked by both and return to phase 0, so the unitary is
/// diagonal with `-1` exactly on `[n1, n2]` and the oracle works on any input.
pub fn range_oracle_a(spec: &RangeSpec) -> Result<Circuit> {
    let upper = less_than(&LessThanSpec::new(spec.n, spec.n2 + 1)?)?;
    let lower = less_than(&LessThanSpec::new(spec.n, spec.n1)?)?;
    Ok(upper.compose(&lower)?)
}

/// Range oracle, implementation B: `less_than(n2 - n1 + 1)` followed by adding `n1`.
///
/// The unitary maps `|x>` to `+-|(x + n1) mod 2^n>` with `-1` iff `x < n2 - n1 + 1`,
/// which is not diagonal. It implements the range marking only on the uniform
/// superposition without relative phases; the input is not checked here.
pub fn range_oracle_b(spec: &RangeSpec) -> Result<Circuit> {
    let mark = less_than(&LessThanSpec::new(spec.n, spec.len())?)?;
    let shift = add_const(&AdderSpec::new(spec.n, spec.n1)?)?;
    Ok(mark.compose(&shift)?)
}

/// Identifier of a buildable oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleId {
    Mcz,
    LessThan,
    Qft,
    Add,
    RangeA,
    RangeB,
}

impl OracleId {
    pub const ALL: [OracleId; 6] = [
        OracleId::Mcz,
        OracleId::LessThan,
        OracleId::Qft,
        OracleId::Add,
        OracleId::RangeA,
        OracleId::RangeB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OracleId::Mcz => "mcz",
            OracleId::LessThan => "less-than",
            OracleId::Qft => "qft",
            OracleId::Add => "add",
            OracleId::RangeA => "range-a",
            OracleId::RangeB => "range-b",
        }
    }
}

impl fmt::Display for OracleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OracleId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<OracleId, String> {
        OracleId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown oracle '{s}'"))
    }
}

/// Builder parameters for any [`OracleId`]. Unused fields are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleParams {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    /// MCZ participants; every qubit when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub participants: Option<Vec<usize>>,
}

impl OracleParams {
    pub fn new(n: usize) -> OracleParams {
        OracleParams {
            n,
            m: None,
            a: None,
            n1: None,
            n2: None,
            participants: None,
        }
    }

    pub fn range(n: usize, n1: u64, n2: u64) -> OracleParams {
        OracleParams {
            n1: Some(n1),
            n2: Some(n2),
            ..OracleParams::new(n)
        }
    }

    pub fn threshold(n: usize, m: u64) -> OracleParams {
        OracleParams {
            m: Some(m),
            ..OracleParams::new(n)
        }
    }

    pub fn addend(n: usize, a: u64) -> OracleParams {
        OracleParams {
            a: Some(a),
            ..OracleParams::new(n)
        }
    }

    pub fn range_spec(&self) -> Result<RangeSpec> {
        match (self.n1, self.n2) {
            (Some(n1), Some(n2)) => RangeSpec::new(self.n, n1, n2),
            _ => Err(OracleError::MissingParam("n1 and n2")),
        }
    }

    pub fn less_than_spec(&self) -> Result<LessThanSpec> {
        LessThanSpec::new(self.n, self.m.ok_or(OracleError::MissingParam("m"))?)
    }

    pub fn adder_spec(&self) -> Result<AdderSpec> {
        AdderSpec::new(self.n, self.a.ok_or(OracleError::MissingParam("a"))?)
    }

    pub fn mcz_participants(&self) -> Vec<usize> {
        self.participants
            .clone()
            .unwrap_or_else(|| (0..self.n).collect())
    }
}

/// Builds the circuit for `id` from `params`.
pub fn build(id: OracleId, params: &OracleParams) -> Result<Circuit> {
    match id {
        OracleId::Mcz => mcz(params.n, &params.mcz_participants()),
        OracleId::LessThan => less_than(&params.less_than_spec()?),
        OracleId::Qft => qft(params.n),
        OracleId::Add => add_const(&params.adder_spec()?),
        OracleId::RangeA => range_oracle_a(&params.range_spec()?),
        OracleId::RangeB => range_oracle_b(&params.range_spec()?),
    }
}
