//! Generated reuse documentation cards for oracles.
//!
//! A card records more than the black-box function: the constituent oracles,
//! which parameters are consumed only when building the circuit versus when
//! applying it, the input-state precondition, the output-state postcondition,
//! and properties of the lowered circuit (gate set, connectivity, depth).
//! Cards are generated from the builders and can be re-checked against them
//! with [`check_card`]; `notes` is the only free-form field.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, GateType};
use crate::decompose::{decompose_to_basis, BasisSet};
use crate::depth::{sweep, DepthError, SweepSummary};
use crate::error::{CircuitError, OracleError, SimError};
use crate::oracles::{build, OracleId, OracleParams};
use crate::simulator::{apply_circuit, circuit_unitary, StateVector, C64};
use crate::verify::functional_unitary;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CardError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error("card json: {0}")]
    Json(String),
    #[error("unknown card format '{0}', expected json or markdown")]
    UnknownFormat(String),
}

impl From<CircuitError> for CardError {
    fn from(e: CircuitError) -> Self {
        CardError::Oracle(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlackBox {
    pub summary: String,
    pub formal: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub oracle: OracleId,
    pub params: OracleParams,
    pub role: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameter {
    pub name: String,
    pub value: String,
    pub description: String,
}

/// Input states on which the postcondition is guaranteed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputRequirement {
    AnyState,
    UniformNoRelativePhases,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Precondition {
    pub input: InputRequirement,
    pub description: String,
}

/// Machine-checkable effect on the output state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Effect {
    PhaseFlipInRange { n1: u64, n2: u64 },
    PhaseFlipLessThan { m: u64 },
    PhaseFlipAllOnes { participants: Vec<usize> },
    Displacement { addend: u64 },
    FourierTransform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Postcondition {
    pub effect: Effect,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepthSummaryEntry {
    pub n: usize,
    pub ranges: usize,
    pub min: usize,
    pub median: f64,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitProperties {
    /// Basis the circuit was lowered to.
    pub basis: Vec<GateType>,
    /// Gate kinds actually present after lowering.
    pub gate_set: Vec<GateType>,
    pub connectivity: String,
    /// Distinct qubit pairs coupled by two-qubit gates after lowering.
    pub coupled_pairs: usize,
    pub all_pairs_coupled: bool,
    pub diagonal: bool,
    pub depth: usize,
    pub gate_count: usize,
    /// Sweep statistics over all interior ranges, per qubit count (range oracles only).
    pub depth_summary: Vec<DepthSummaryEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDocCard {
    pub name: String,
    pub oracle: OracleId,
    pub params: OracleParams,
    pub black_box_function: BlackBox,
    pub components: Vec<Component>,
    /// True when the oracle circuit is exactly the in-order composition of `components`.
    pub exact_composition: bool,
    pub ideas: Vec<String>,
    pub builder_params: Vec<Parameter>,
    pub oracle_params: Vec<Parameter>,
    pub preconditions: Precondition,
    pub postconditions: Postcondition,
    pub circuit_properties: CircuitProperties,
    pub notes: String,
}

fn param(name: &str, value: impl ToString, description: &str) -> Parameter {
    Parameter {
        name: name.to_string(),
        value: value.to_string(),
        description: description.to_string(),
    }
}

fn coupled_pairs(c: &Circuit) -> usize {
    let mut pairs = BTreeSet::new();
    for g in c.gates() {
        let qs = g.qubits();
        for i in 0..qs.len() {
            for j in i + 1..qs.len() {
                pairs.insert((qs[i].min(qs[j]), qs[i].max(qs[j])));
            }
        }
    }
    pairs.len()
}

fn summary_entries(id: OracleId, sweep: Option<&SweepSummary>) -> Vec<DepthSummaryEntry> {
    let Some(sweep) = sweep else {
        return Vec::new();
    };
    sweep
        .per_n
        .iter()
        .filter_map(|s| {
            let stats = match id {
                OracleId::RangeA => s.depth_a,
                OracleId::RangeB => s.depth_b,
                _ => return None,
            };
            Some(DepthSummaryEntry {
                n: s.n,
                ranges: s.ranges,
                min: stats.min,
                median: stats.median,
                max: stats.max,
            })
        })
        .collect()
}

fn properties(
    id: OracleId,
    circuit: &Circuit,
    basis: &BasisSet,
    sweep: Option<&SweepSummary>,
) -> Result<CircuitProperties, CardError> {
    let lowered = decompose_to_basis(circuit, basis)?;
    let n = circuit.n_qubits();
    let pairs = coupled_pairs(&lowered);
    let all = n < 2 || pairs == n * (n - 1) / 2;
    let diagonal = circuit_unitary(circuit)?.is_diagonal(1e-9);
    Ok(CircuitProperties {
        basis: basis.kinds().collect(),
        gate_set: lowered.gate_types(),
        connectivity: format!(
            "assumes all-to-all connectivity, no routing applied; couples {pairs} of {} qubit pairs",
            n * n.saturating_sub(1) / 2
        ),
        coupled_pairs: pairs,
        all_pairs_coupled: all,
        diagonal,
        depth: lowered.depth(),
        gate_count: lowered.len(),
        depth_summary: summary_entries(id, sweep),
    })
}

const TARGET_QUBITS: &str = "any register of n qubits, listed least significant first; \
    the same circuit serves every placement";

/// Generates the card for oracle `id` built from `params`, lowered to the
/// default basis. `sweep` adds per-n depth statistics for the range oracles.
pub fn generate_card(
    id: OracleId,
    params: &OracleParams,
    sweep: Option<&SweepSummary>,
) -> Result<OracleDocCard, CardError> {
    let circuit = build(id, params)?;
    let n = params.n;
    let basis = BasisSet::default();
    let width = param(
        "n",
        n,
        "register width; used by the builder and fixes the oracle's input size",
    );
    let oracle_params = vec![param("target_qubits", format!("{n} qubits"), TARGET_QUBITS)];
    let any_state = Precondition {
        input: InputRequirement::AnyState,
        description: "any input state".into(),
    };

    let card = match id {
        OracleId::RangeA | OracleId::RangeB => {
            let r = params.range_spec()?;
            let (n1, n2) = (r.n1(), r.n2());
            let black_box = BlackBox {
                summary: format!(
                    "phase-marking oracle giving a pi phase to every basis state whose integer value lies in [{n1}, {n2}]"
                ),
                formal: format!("|x> -> f(x)|x> with f(x) = -1 if {n1} <= x <= {n2}, +1 otherwise"),
            };
            let builder_params = vec![
                width,
                param("n1", n1, "lower bound of the range; consumed only when building the circuit"),
                param("n2", n2, "upper bound of the range; consumed only when building the circuit"),
            ];
            let post = Postcondition {
                effect: Effect::PhaseFlipInRange { n1, n2 },
                description: format!(
                    "states representing integers in [{n1}, {n2}] gain a pi phase; no other change to the input state"
                ),
            };
            if id == OracleId::RangeA {
                OracleDocCard {
                    name: format!("range-of-integers oracle, implementation A, [{n1}, {n2}] on {n} qubits"),
                    oracle: id,
                    params: params.clone(),
                    black_box_function: black_box,
                    components: vec![
                        Component {
                            oracle: OracleId::LessThan,
                            params: OracleParams::threshold(n, n2 + 1),
                            role: format!("marks every x < {}", n2 + 1),
                        },
                        Component {
                            oracle: OracleId::LessThan,
                            params: OracleParams::threshold(n, n1),
                            role: format!("marks every x < {n1} a second time, returning those states to phase 0"),
                        },
                    ],
                    exact_composition: true,
                    ideas: vec![
                        "a state marked twice returns to phase 0, so two less-than oracles carve out an interval".into(),
                        "the two less-than oracles commute; either order gives the same unitary".into(),
                    ],
                    builder_params,
                    oracle_params,
                    preconditions: Precondition {
                        input: InputRequirement::AnyState,
                        description: "any input state; states are marked regardless of their amplitude".into(),
                    },
                    postconditions: post,
                    circuit_properties: properties(id, &circuit, &basis, sweep)?,
                    notes: String::new(),
                }
            } else {
                OracleDocCard {
                    name: format!("range-of-integers oracle, implementation B, [{n1}, {n2}] on {n} qubits"),
                    oracle: id,
                    params: params.clone(),
                    black_box_function: black_box,
                    components: vec![
                        Component {
                            oracle: OracleId::LessThan,
                            params: OracleParams::threshold(n, r.len()),
                            role: format!("marks the first {} states, x < {}", r.len(), r.len()),
                        },
                        Component {
                            oracle: OracleId::Add,
                            params: OracleParams::addend(n, n1),
                            role: format!("displaces the marked block by {n1} onto [{n1}, {n2}]"),
                        },
                    ],
                    exact_composition: true,
                    ideas: vec![
                        "constant addition shifts already-marked states while keeping their phases".into(),
                        "order is fixed: the less-than oracle must come before the addition".into(),
                    ],
                    builder_params,
                    oracle_params,
                    preconditions: Precondition {
                        input: InputRequirement::UniformNoRelativePhases,
                        description: format!(
                            "a full superposed input state without relative phases, 2^(-{n}/2) sum_i |i>; \
                             other inputs are permuted, e.g. |0> becomes -|{n1}>"
                        ),
                    },
                    postconditions: post,
                    circuit_properties: properties(id, &circuit, &basis, sweep)?,
                    notes: String::new(),
                }
            }
        }
        OracleId::LessThan => {
            let m = params.less_than_spec()?.m();
            let components = (0..n)
                .rev()
                .filter(|&i| m < 1 << n && m >> i & 1 == 1)
                .map(|i| Component {
                    oracle: OracleId::Mcz,
                    params: OracleParams {
                        participants: Some((i..n).collect()),
                        ..OracleParams::new(n)
                    },
                    role: format!("marks the block of states that first drop below {m} at bit {i}"),
                })
                .collect();
            OracleDocCard {
                name: format!("less-than {m} oracle on {n} qubits"),
                oracle: id,
                params: params.clone(),
                black_box_function: BlackBox {
                    summary: format!("phase-marking oracle giving a pi phase to every basis state below {m}"),
                    formal: format!("|x> -> f(x)|x> with f(x) = -1 if x < {m}, +1 otherwise"),
                },
                components,
                exact_composition: false,
                ideas: vec![
                    "one multi-controlled Z per set bit of m, with X gates selecting the matching prefix".into(),
                ],
                builder_params: vec![width, param("m", m, "threshold; consumed only when building the circuit")],
                oracle_params,
                preconditions: any_state,
                postconditions: Postcondition {
                    effect: Effect::PhaseFlipLessThan { m },
                    description: format!("states representing integers below {m} gain a pi phase; nothing else changes"),
                },
                circuit_properties: properties(id, &circuit, &basis, sweep)?,
                notes: String::new(),
            }
        }
        OracleId::Add => {
            let a = params.adder_spec()?.a();
            let components = if a == 0 {
                Vec::new()
            } else {
                let t = a.trailing_zeros() as usize;
                vec![Component {
                    oracle: OracleId::Qft,
                    params: OracleParams::new(n - t),
                    role: format!(
                        "Fourier transform (without bit reversal) on qubits {t}..{}, undone after the phase rotations",
                        n - 1
                    ),
                }]
            };
            OracleDocCard {
                name: format!("constant addition of {a} on {n} qubits"),
                oracle: id,
                params: params.clone(),
                black_box_function: BlackBox {
                    summary: format!("adds the constant {a} modulo 2^{n}"),
                    formal: format!("|x> -> |(x + {a}) mod {}>", 1u64 << n),
                },
                components,
                exact_composition: false,
                ideas: vec!["addition is a diagonal phase rotation in the Fourier basis".into()],
                builder_params: vec![width, param("a", a, "addend, reduced modulo 2^n; consumed only when building the circuit")],
                oracle_params,
                preconditions: any_state,
                postconditions: Postcondition {
                    effect: Effect::Displacement { addend: a },
                    description: format!(
                        "just a displacement on any given input state: |x> becomes |(x + {a}) mod {}>; phases of the displaced states are maintained",
                        1u64 << n
                    ),
                },
                circuit_properties: properties(id, &circuit, &basis, sweep)?,
                notes: String::new(),
            }
        }
        OracleId::Mcz => {
            let participants = params.mcz_participants();
            OracleDocCard {
                name: format!("multi-controlled Z on qubits {participants:?} of {n}"),
                oracle: id,
                params: params.clone(),
                black_box_function: BlackBox {
                    summary: "flips the sign of states where every participant qubit is 1".into(),
                    formal: format!("|x> -> -|x> iff bits {participants:?} of x are all 1"),
                },
                components: Vec::new(),
                exact_composition: false,
                ideas: vec!["symmetric in its participants; no qubit is special".into()],
                builder_params: vec![
                    width,
                    param("participants", format!("{participants:?}"), "qubits whose conjunction is marked"),
                ],
                oracle_params,
                preconditions: any_state,
                postconditions: Postcondition {
                    effect: Effect::PhaseFlipAllOnes { participants },
                    description: "states with all participant bits set gain a pi phase; nothing else changes".into(),
                },
                circuit_properties: properties(id, &circuit, &basis, sweep)?,
                notes: String::new(),
            }
        }
        OracleId::Qft => OracleDocCard {
            name: format!("quantum Fourier transform on {n} qubits"),
            oracle: id,
            params: params.clone(),
            black_box_function: BlackBox {
                summary: "discrete Fourier transform of the amplitude vector".into(),
                formal: format!("|x> -> 2^(-{n}/2) sum_y exp(2 pi i x y / 2^{n}) |y>"),
            },
            components: Vec::new(),
            exact_composition: false,
            ideas: vec!["includes the final qubit reversal so the matrix is the textbook DFT".into()],
            builder_params: vec![width],
            oracle_params,
            preconditions: any_state,
            postconditions: Postcondition {
                effect: Effect::FourierTransform,
                description: "amplitudes are replaced by their discrete Fourier transform".into(),
            },
            circuit_properties: properties(id, &circuit, &basis, sweep)?,
            notes: String::new(),
        },
    };
    Ok(card)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CardReport {
    pub card: String,
    pub checks: Vec<CheckResult>,
}

impl CardReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, claim: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.claim == claim)
    }
}

fn effect_unitary_params(card: &OracleDocCard) -> (OracleId, OracleParams) {
    let n = card.params.n;
    match &card.postconditions.effect {
        Effect::PhaseFlipInRange { n1, n2 } => (OracleId::RangeA, OracleParams::range(n, *n1, *n2)),
        Effect::PhaseFlipLessThan { m } => (OracleId::LessThan, OracleParams::threshold(n, *m)),
        Effect::PhaseFlipAllOnes { participants } => (
            OracleId::Mcz,
            OracleParams {
                participants: Some(participants.clone()),
                ..OracleParams::new(n)
            },
        ),
        Effect::Displacement { addend } => (OracleId::Add, OracleParams::addend(n, *addend)),
        Effect::FourierTransform => (OracleId::Qft, OracleParams::new(n)),
    }
}

/// Inputs exercised for a precondition. Basis states come first so the first
/// failure names the simplest counterexample.
fn precondition_inputs(req: InputRequirement, n: usize) -> Result<Vec<(String, StateVector)>, SimError> {
    let mut inputs = Vec::new();
    if req == InputRequirement::AnyState {
        for k in 0..1usize << n {
            inputs.push((format!("basis:{k}"), StateVector::basis(n, k)?));
        }
    }
    inputs.push(("uniform".to_string(), StateVector::uniform(n)?));
    if req == InputRequirement::AnyState {
        let dim = 1usize << n;
        let norm = 1.0 / (dim as f64).sqrt();
        let amps = (0..dim)
            .map(|x| C64::from_polar(norm, 0.37 * (x * x) as f64 + 0.11))
            .collect();
        inputs.push(("uniform with relative phases".to_string(), StateVector::from_amplitudes(amps)?));
    }
    Ok(inputs)
}

fn result(claim: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        claim: claim.to_string(),
        passed,
        detail: detail.into(),
    }
}

/// Re-derives every checkable claim of `card` by building and simulating the
/// referenced oracle. Intended for `n <= 6`.
pub fn check_card(card: &OracleDocCard, tol: f64) -> Result<CardReport, CardError> {
    let circuit = build(card.oracle, &card.params)?;
    let n = card.params.n;
    let unitary = circuit_unitary(&circuit)?;
    let mut checks = Vec::new();

    // components
    let mut built = Vec::new();
    for comp in &card.components {
        built.push(build(comp.oracle, &comp.params)?);
    }
    if card.exact_composition {
        let mut composed = Circuit::try_new(n)?;
        for c in &built {
            composed = composed.compose(c)?;
        }
        let dev = circuit_unitary(&composed)?.max_abs_diff(&unitary)?;
        checks.push(result(
            "components",
            dev <= tol,
            format!("{} components compose to the oracle unitary within {dev:.2e}", built.len()),
        ));
    } else {
        checks.push(result(
            "components",
            true,
            format!("{} components resolve to builders", built.len()),
        ));
    }

    // postcondition on every input allowed by the precondition
    let (eid, eparams) = effect_unitary_params(card);
    let intended = functional_unitary(eid, &eparams)?;
    let mut failure = None;
    let mut worst: f64 = 0.0;
    for (label, input) in precondition_inputs(card.preconditions.input, n)? {
        let actual = apply_circuit(&circuit, &input)?;
        for (row, a) in actual.amplitudes().iter().enumerate() {
            let want: C64 = input
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(col, v)| intended.get(row, col) * v)
                .sum();
            let d = (want - a).norm();
            worst = worst.max(d);
            if d > tol && failure.is_none() {
                failure = Some(format!(
                    "input {label}: amplitude of |{row}> expected {:.6}{:+.6}i, got {:.6}{:+.6}i",
                    want.re, want.im, a.re, a.im
                ));
            }
        }
        if failure.is_some() {
            break;
        }
    }
    checks.push(match failure {
        Some(detail) => result("postcondition", false, detail),
        None => result("postcondition", true, format!("holds on all precondition inputs, max deviation {worst:.2e}")),
    });

    // diagonal classification and precondition presence
    let diagonal = unitary.is_diagonal(tol);
    checks.push(result(
        "diagonal",
        diagonal == card.circuit_properties.diagonal,
        format!("simulated unitary is {}diagonal", if diagonal { "" } else { "not " }),
    ));
    checks.push(result(
        "preconditions",
        diagonal || !card.preconditions.description.trim().is_empty(),
        "non-diagonal oracles must state a precondition",
    ));

    // circuit properties
    let basis = BasisSet::new(card.circuit_properties.basis.iter().copied())?;
    let lowered = decompose_to_basis(&circuit, &basis)?;
    let gate_set = lowered.gate_types();
    checks.push(result(
        "gate-set",
        gate_set == card.circuit_properties.gate_set,
        format!("lowered circuit uses {gate_set:?}"),
    ));
    let mut depth_ok = lowered.depth() == card.circuit_properties.depth
        && lowered.len() == card.circuit_properties.gate_count;
    let mut depth_detail = format!("instance depth {} with {} gates", lowered.depth(), lowered.len());
    for entry in &card.circuit_properties.depth_summary {
        let fresh = sweep(entry.n, entry.n, &basis)?;
        let recomputed = summary_entries(card.oracle, Some(&fresh.summary));
        if recomputed.first() != Some(entry) {
            depth_ok = false;
            let _ = write!(depth_detail, "; summary for n={} is stale", entry.n);
        }
    }
    checks.push(result("depth", depth_ok, depth_detail));

    Ok(CardReport {
        card: card.name.clone(),
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardFormat {
    Json,
    Markdown,
}

impl FromStr for CardFormat {
    type Err = CardError;

    fn from_str(s: &str) -> Result<CardFormat, CardError> {
        match s {
            "json" => Ok(CardFormat::Json),
            "markdown" | "md" => Ok(CardFormat::Markdown),
            _ => Err(CardError::UnknownFormat(s.to_string())),
        }
    }
}

pub fn render(card: &OracleDocCard, format: CardFormat) -> String {
    match format {
        CardFormat::Json => serde_json::to_string_pretty(card).expect("card serializes") + "\n",
        CardFormat::Markdown => render_markdown(card),
    }
}

pub fn parse_json(text: &str) -> Result<OracleDocCard, CardError> {
    serde_json::from_str(text).map_err(|e| CardError::Json(e.to_string()))
}

fn type_list(types: &[GateType]) -> String {
    types.iter().map(|t| t.name()).collect::<Vec<_>>().join(", ")
}

fn render_markdown(card: &OracleDocCard) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {}\n", card.name);
    let _ = writeln!(s, "## Black Box\n");
    let _ = writeln!(s, "{}\n", card.black_box_function.summary);
    let _ = writeln!(s, "`{}`\n", card.black_box_function.formal);

    let _ = writeln!(s, "## Components\n");
    if card.components.is_empty() {
        let _ = writeln!(s, "Primitive; no constituent oracles.\n");
    } else {
        for (i, c) in card.components.iter().enumerate() {
            let _ = writeln!(s, "{}. `{}` {}: {}", i + 1, c.oracle, params_inline(&c.params), c.role);
        }
        let _ = writeln!(
            s,
            "\nExact in-order composition: {}\n",
            if card.exact_composition { "yes" } else { "no" }
        );
    }
    if !card.ideas.is_empty() {
        let _ = writeln!(s, "Ideas:\n");
        for idea in &card.ideas {
            let _ = writeln!(s, "- {idea}");
        }
        s.push('\n');
    }

    let _ = writeln!(s, "## Parameters\n");
    let _ = writeln!(s, "| kind | name | value | description |");
    let _ = writeln!(s, "|------|------|-------|-------------|");
    for p in &card.builder_params {
        let _ = writeln!(s, "| builder | {} | {} | {} |", p.name, p.value, p.description);
    }
    for p in &card.oracle_params {
        let _ = writeln!(s, "| oracle | {} | {} | {} |", p.name, p.value, p.description);
    }
    s.push('\n');

    let _ = writeln!(s, "## Pre\n");
    let _ = writeln!(s, "{}\n", card.preconditions.description);
    let _ = writeln!(s, "## Post\n");
    let _ = writeln!(s, "{}\n", card.postconditions.description);

    let p = &card.circuit_properties;
    let _ = writeln!(s, "## Circuit Properties\n");
    let _ = writeln!(s, "- basis: {}", type_list(&p.basis));
    let _ = writeln!(s, "- gate set used: {}", type_list(&p.gate_set));
    let _ = writeln!(s, "- connectivity: {}", p.connectivity);
    let _ = writeln!(s, "- all qubit pairs coupled: {}", if p.all_pairs_coupled { "yes" } else { "no" });
    let _ = writeln!(s, "- diagonal unitary: {}", if p.diagonal { "yes" } else { "no" });
    let _ = writeln!(s, "- depth: {} ({} gates)", p.depth, p.gate_count);
    if !p.depth_summary.is_empty() {
        let _ = writeln!(s, "\n| n | ranges | min depth | median depth | max depth |");
        let _ = writeln!(s, "|---|--------|-----------|--------------|-----------|");
        for e in &p.depth_summary {
            let _ = writeln!(s, "| {} | {} | {} | {} | {} |", e.n, e.ranges, e.min, e.median, e.max);
        }
    }
    if !card.notes.is_empty() {
        let _ = writeln!(s, "\n## Notes\n\n{}", card.notes);
    }
    s
}

fn params_inline(p: &OracleParams) -> String {
    let mut parts = vec![format!("n={}", p.n)];
    if let Some(m) = p.m {
        parts.push(format!("m={m}"));
    }
    if let Some(a) = p.a {
        parts.push(format!("a={a}"));
    }
    if let Some(n1) = p.n1 {
        parts.push(format!("n1={n1}"));
    }
    if let Some(n2) = p.n2 {
        parts.push(format!("n2={n2}"));
    }
    if let Some(q) = &p.participants {
        parts.push(format!("participants={q:?}"));
    }
    format!("({})", parts.join(", "))
}
