//! Line-oriented text and JSON renderings of circuits.
//!
//! Text format:
//!
//! ```text
//! qubits 3
//! H 0
//! RZ 1.5707963267948966e0 2
//! MCZ 0 1 2
//! ```
//!
//! Angles are written with 17 significant digits so parsing reproduces the
//! exact `f64`. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, GateType};
use crate::error::{CircuitError, Result};

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", circuit.n_qubits());
    for g in circuit.gates() {
        out.push_str(g.gate_type().name());
        if let Some(t) = g.kind().theta() {
            let _ = write!(out, " {t:.16e}");
        }
        for q in g.qubits() {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<Circuit> {
    let err = |line: usize, msg: String| CircuitError::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing 'qubits N' header".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["qubits", n] => n
            .parse::<usize>()
            .map_err(|_| err(hline, format!("bad qubit count '{n}'")))?,
        _ => return Err(err(hline, "expected 'qubits N' header".into())),
    };
    let mut circuit = Circuit::try_new(n).map_err(|e| err(hline, e.to_string()))?;

    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        let name = tokens.next().unwrap_or_default();
        let ty = GateType::from_name(name).ok_or_else(|| err(line, format!("unknown gate '{name}'")))?;
        let theta = if ty.is_parametric() {
            let tok = tokens.next().ok_or_else(|| err(line, format!("{ty} needs an angle")))?;
            Some(
                tok.parse::<f64>()
                    .map_err(|_| err(line, format!("bad angle '{tok}'")))?,
            )
        } else {
            None
        };
        let qubits = tokens
            .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("bad qubit index '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        let gate = GateKind::from_parts(ty, theta)
            .and_then(|k| Gate::new(k, &qubits))
            .map_err(|e| err(line, e.to_string()))?;
        circuit.push(gate).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(circuit)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateRecord {
    kind: GateType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    qubits: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitRecord {
    qubits: usize,
    gates: Vec<GateRecord>,
}

impl From<&Circuit> for CircuitRecord {
    fn from(c: &Circuit) -> Self {
        CircuitRecord {
            qubits: c.n_qubits(),
            gates: c
                .gates()
                .iter()
                .map(|g| GateRecord {
                    kind: g.gate_type(),
                    theta: g.kind().theta(),
                    qubits: g.qubits().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<CircuitRecord> for Circuit {
    type Error = CircuitError;

    fn try_from(r: CircuitRecord) -> Result<Circuit> {
        let gates = r
            .gates
            .into_iter()
            .map(|g| GateKind::from_parts(g.kind, g.theta).and_then(|k| Gate::new(k, &g.qubits)))
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(r.qubits, gates)
    }
}

impl Serialize for Circuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircuitRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Circuit, D::Error> {
        let record = CircuitRecord::deserialize(d)?;
        Circuit::try_from(record).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(circuit: &Circuit) -> String {
    serde_json::to_string_pretty(circuit).expect("circuit serializes")
}

pub fn from_json(text: &str) -> Result<Circuit> {
    serde_json::from_str(text).map_err(|e| CircuitError::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> Circuit {
        Circuit::from_gates(
            3,
            [
                Gate::h(0),
                Gate::rz(std::f64::consts::FRAC_PI_2, 2),
                Gate::cp(-0.1, 1, 0),
                Gate::mcz(&[0, 1, 2]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn text_layout() {
        let text = to_text(&sample());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "qubits 3");
        assert_eq!(lines[1], "H 0");
        assert_eq!(lines[2], "RZ 1.5707963267948966e0 2");
        assert_eq!(lines[4], "MCZ 0 1 2");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "qubits 2\nH 0\nCX 0 0\n";
        match from_text(bad) {
            Err(CircuitError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(from_text("H 0\n").is_err());
        assert!(from_text("qubits 2\nRZ 0\n").is_err());
        assert!(from_text("qubits 2\nFOO 0\n").is_err());
        assert!(from_text("qubits 2\nX 4\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = from_text("# demo\nqubits 2\n\nX 1\n# end\n").unwrap();
        assert_eq!(c.gates(), &[Gate::x(1)]);
    }

    #[test]
    fn json_rejects_unknown_fields() {
        assert!(from_json(r#"{"qubits":1,"gates":[],"extra":1}"#).is_err());
        assert!(from_json(r#"{"qubits":1,"gates":[{"kind":"H","theta":1.0,"qubits":[0]}]}"#).is_err());
        assert!(from_json(r#"{"gates":[]}"#).is_err());
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        let angle = -10.0f64..10.0;
        let q = 0..n;
        prop_oneof![
            (q.clone(), 0..4usize).prop_map(|(q, k)| match k {
                0 => Gate::h(q),
                1 => Gate::x(q),
                2 => Gate::sx(q),
                _ => Gate::z(q),
            }),
            (q.clone(), angle.clone(), any::<bool>())
                .prop_map(|(q, t, p)| if p { Gate::p(t, q) } else { Gate::rz(t, q) }),
            (q.clone(), q.clone(), angle)
                .prop_filter("distinct", |(a, b, _)| a != b)
                .prop_map(|(a, b, t)| Gate::cp(t, a, b)),
            (q.clone(), q)
                .prop_filter("distinct", |(a, b)| a != b)
                .prop_map(|(a, b)| Gate::cx(a, b)),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n)
                .prop_shuffle()
                .prop_map(|qs| Gate::mcz(&qs).unwrap()),
        ]
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        (2usize..6).prop_flat_map(|n| {
            proptest::collection::vec(arb_gate(n), 0..20)
                .prop_map(move |gs| Circuit::from_gates(n, gs).unwrap())
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(c in arb_circuit()) {
            prop_assert_eq!(from_text(&to_text(&c)).unwrap(), c);
        }

        #[test]
        fn json_round_trip(c in arb_circuit()) {
            prop_assert_eq!(from_json(&to_json(&c)).unwrap(), c);
        }
    }
}
