//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test --release --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64 as C;
use qoracle::cards::{check_card, generate_card, InputRequirement};
use qoracle::depth::{growth_check, measure_pair, sweep, GROWTH_RATIO_LIMIT};
use qoracle::oracles::*;
use qoracle::simulator::{apply_circuit, equal_up_to_global_phase, phase_profile};
use qoracle::{circuit_unitary, decompose_to_basis, BasisSet, Circuit, StateVector};
use rayon::prelude::*;

const TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn ranges(n: usize) -> Vec<RangeSpec> {
    let top = 1u64 << n;
    (0..top)
        .flat_map(|n1| (n1..top).map(move |n2| (n1, n2)))
        .map(|(n1, n2)| RangeSpec::new(n, n1, n2).unwrap())
        .collect()
}

fn uniform_output(build: fn(&RangeSpec) -> qoracle::oracles::Result<Circuit>) -> StateVector {
    let c = build(&RangeSpec::new(3, 4, 7).unwrap()).unwrap();
    apply_circuit(&c, &StateVector::uniform(3).unwrap()).unwrap()
}

fn range_a_marks_on_uniform() -> Outcome {
    let p = phase_profile(&uniform_output(range_oracle_a)).unwrap();
    let mag_dev = p.entries.iter().map(|e| (e.magnitude - 8f64.sqrt().recip()).abs()).fold(0.0, f64::max);
    let pi = p.pi_phase_indices(TOL);
    let zero_ok = p.entries.iter().filter(|e| e.index < 4).all(|e| e.phase.abs() <= TOL);
    outcome(
        p.entries.len() == 8 && mag_dev <= 1e-10 && pi == [4, 5, 6, 7] && zero_ok,
        format!("{} states, magnitude dev {mag_dev:.1e}, pi phase on {pi:?}", p.entries.len()),
    )
}

fn range_b_matches_a_on_uniform() -> Outcome {
    let dev = uniform_output(range_oracle_b).max_abs_diff(&uniform_output(range_oracle_a)).unwrap();
    outcome(dev <= TOL, format!("max deviation {dev:.2e}, no global phase allowance"))
}

fn exhaustive_range(n_max: usize, build: fn(&RangeSpec) -> qoracle::oracles::Result<Circuit>, expected: fn(&RangeSpec) -> Dense) -> Outcome {
    let specs: Vec<RangeSpec> = (3..=n_max).flat_map(ranges).collect();
    let worst = specs
        .par_iter()
        .map(|s| {
            let u = circuit_unitary(&build(s).unwrap()).unwrap();
            (max_diff(&u, &expected(s)), *s)
        })
        .reduce(|| (0.0, RangeSpec::new(3, 0, 0).unwrap()), |a, b| if b.0 > a.0 { b } else { a });
    outcome(
        worst.0 < TOL,
        format!("{} intervals, n in [3,{n_max}], max deviation {:.2e} at n={} [{}, {}]", specs.len(), worst.0, worst.1.n(), worst.1.n1(), worst.1.n2()),
    )
}

fn diagonal_pattern(s: &RangeSpec) -> Dense {
    phase_diagonal(s.n(), |x| s.contains(x))
}

fn shifted_pattern(s: &RangeSpec) -> Dense {
    let (n1, len, dim) = (s.n1(), s.len(), 1u64 << s.n());
    signed_permutation(s.n(), |x| (x + n1) % dim, |x| if x < len { -1.0 } else { 1.0 })
}

fn component_contracts() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut record = |d: f64| {
        worst = worst.max(d);
        cases += 1;
    };
    for n in 3..=5usize {
        let dim = 1u64 << n;
        for m in 0..=dim {
            let c = less_than(&LessThanSpec::new(n, m).unwrap()).unwrap();
            record(max_diff(&circuit_unitary(&c).unwrap(), &phase_diagonal(n, |x| x < m)));
        }
        for mask in 1..dim {
            let qs: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
            let u = circuit_unitary(&mcz(n, &qs).unwrap()).unwrap();
            record(max_diff(&u, &phase_diagonal(n, |x| x & mask == mask)));
        }
        let phased = StateVector::from_amplitudes(
            (0..dim).map(|x| C::from_polar((dim as f64).sqrt().recip(), 0.7 * x as f64)).collect(),
        )
        .unwrap();
        for a in 0..dim {
            let c = add_const(&AdderSpec::new(n, a).unwrap()).unwrap();
            record(max_diff(&circuit_unitary(&c).unwrap(), &signed_permutation(n, |x| (x + a) % dim, |_| 1.0)));
            let out = apply_circuit(&c, &phased).unwrap();
            for x in 0..dim {
                let moved = out.amplitudes()[((x + a) % dim) as usize];
                record((moved - phased.amplitudes()[x as usize]).norm());
            }
        }
        let round = qft(n).unwrap().compose(&iqft(n).unwrap()).unwrap();
        record(max_diff(&circuit_unitary(&round).unwrap(), &identity(dim as usize)));
    }
    outcome(worst <= TOL, format!("{cases} checks (less-than, mcz, add, qft round trip), max deviation {worst:.2e}"))
}

fn double_marking() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 3..=5usize {
        for m in 0..=1u64 << n {
            let c = less_than(&LessThanSpec::new(n, m).unwrap()).unwrap();
            let twice = c.compose(&c).unwrap();
            worst = worst.max(max_diff(&circuit_unitary(&twice).unwrap(), &identity(1 << n)));
            count += 1;
        }
    }
    outcome(worst <= TOL, format!("{count} thresholds, max deviation from identity {worst:.2e}"))
}

fn depth_ordering(sweep: &qoracle::depth::Sweep, elapsed: Duration) -> Outcome {
    let violations: Vec<_> = sweep.records.iter().filter(|r| r.depth_b >= r.depth_a).collect();
    let mut detail = format!(
        "{} of {} interior intervals have depth_b >= depth_a; sweep took {:.1}s",
        violations.len(),
        sweep.records.len(),
        elapsed.as_secs_f64()
    );
    for s in &sweep.summary.per_n {
        detail += &format!(
            "\n      n={}: B strictly lower on {:.0}% of {} intervals, median depth A {} / B {}",
            s.n,
            100.0 * s.b_lower_fraction,
            s.ranges,
            s.depth_a.median,
            s.depth_b.median
        );
    }
    let example = measure_pair(&RangeSpec::new(3, 4, 7).unwrap(), &BasisSet::default()).unwrap();
    detail += &format!("\n      n=3 [4,7] (not interior): depth A {} / B {}", example.depth_a, example.depth_b);
    let ordered = violations.is_empty() && example.depth_b < example.depth_a;
    outcome(ordered && elapsed < Duration::from_secs(600), detail)
}

fn growth(sweep: &qoracle::depth::Sweep) -> Outcome {
    match growth_check(&sweep.records) {
        Ok(report) => {
            let rows: Vec<String> = report
                .rows
                .iter()
                .map(|r| format!("n={} A {} B {}", r.n, r.max_depth_a, r.max_depth_b))
                .collect();
            outcome(
                !report.exponential_flag && report.max_ratio <= GROWTH_RATIO_LIMIT,
                format!("max consecutive ratio {:.3}; max depths {}", report.max_ratio, rows.join(", ")),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn card_fidelity() -> Outcome {
    let specs: Vec<RangeSpec> = (3..=5).flat_map(ranges).collect();
    let failures: Vec<String> = specs
        .par_iter()
        .flat_map_iter(|s| [OracleId::RangeA, OracleId::RangeB].map(|id| (id, *s)))
        .filter_map(|(id, s)| {
            let card = generate_card(id, &OracleParams::range(s.n(), s.n1(), s.n2()), None).unwrap();
            let report = check_card(&card, TOL).unwrap();
            (!report.passed()).then(|| format!("{id} n={} [{}, {}]", s.n(), s.n1(), s.n2()))
        })
        .collect();

    let mutated: Vec<(RangeSpec, bool, String)> = specs
        .par_iter()
        .filter(|s| s.n1() > 0)
        .map(|s| {
            let mut card = generate_card(OracleId::RangeB, &OracleParams::range(s.n(), s.n1(), s.n2()), None).unwrap();
            card.preconditions.input = InputRequirement::AnyState;
            card.preconditions.description = "any input state".into();
            let post = check_card(&card, TOL).unwrap().check("postcondition").cloned().unwrap();
            let caught = !post.passed && post.detail.starts_with("input basis:");
            (*s, caught, post.detail)
        })
        .collect();
    let missed = mutated.iter().filter(|m| !m.1).count();
    let example = mutated
        .iter()
        .find(|m| m.0.n() == 3 && m.0.n1() == 4 && m.0.n2() == 7)
        .map(|m| m.2.clone())
        .unwrap_or_default();
    outcome(
        failures.is_empty() && missed == 0,
        format!(
            "{} cards checked, {} failed; weakened B precondition caught on {}/{} intervals (n=3 [4,7]: {example})",
            2 * specs.len(),
            failures.len(),
            mutated.len() - missed,
            mutated.len()
        ),
    )
}

fn decomposition_soundness() -> Outcome {
    let mut jobs: Vec<(OracleId, OracleParams)> = Vec::new();
    for n in 3..=5usize {
        let dim = 1u64 << n;
        for s in ranges(n) {
            jobs.push((OracleId::RangeA, OracleParams::range(n, s.n1(), s.n2())));
            jobs.push((OracleId::RangeB, OracleParams::range(n, s.n1(), s.n2())));
        }
        jobs.extend((0..=dim).map(|m| (OracleId::LessThan, OracleParams::threshold(n, m))));
        jobs.extend((0..dim).map(|a| (OracleId::Add, OracleParams::addend(n, a))));
        jobs.extend((1..dim).map(|mask| {
            let qs = (0..n).filter(|q| mask >> q & 1 == 1).collect();
            (OracleId::Mcz, OracleParams { participants: Some(qs), ..OracleParams::new(n) })
        }));
        jobs.push((OracleId::Qft, OracleParams::new(n)));
    }
    let basis = BasisSet::default();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|(id, p)| {
            let c = build(*id, p).unwrap();
            let lowered = decompose_to_basis(&c, &basis).unwrap();
            let native = lowered.gates().iter().all(|g| basis.contains(g.gate_type()));
            let same = equal_up_to_global_phase(&circuit_unitary(&lowered).unwrap(), &circuit_unitary(&c).unwrap(), TOL).unwrap();
            (!(native && same)).then(|| format!("{id} {p:?}"))
        })
        .collect();
    outcome(bad.is_empty(), format!("{} oracle instances lowered to {basis}; {} mismatches {:?}", jobs.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let mut run = |id: usize, name: &'static str, limit: Option<Duration>, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let mut o = f();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > limit {
                o.passed = false;
                o.detail += &format!(" (over the {}s budget)", limit.as_secs());
            }
        }
        results.push((id, name, o, took));
    };

    run(1, "range A marks [4,7] on the uniform state", Some(Duration::from_secs(1)), &range_a_marks_on_uniform);
    run(2, "range B equals range A on the uniform state", Some(Duration::from_secs(1)), &range_b_matches_a_on_uniform);
    run(3, "range A unitary is the diagonal pattern", Some(Duration::from_secs(120)), &|| exhaustive_range(6, range_oracle_a, diagonal_pattern));
    run(4, "range B unitary is the shifted signed permutation", None, &|| exhaustive_range(6, range_oracle_b, shifted_pattern));
    run(5, "component contracts", None, &component_contracts);
    run(6, "double marking cancels", None, &double_marking);

    let start = Instant::now();
    let swept = sweep(3, 8, &BasisSet::default()).expect("sweep runs");
    let sweep_time = start.elapsed();
    run(7, "depth_b < depth_a on every interior interval", None, &|| depth_ordering(&swept, sweep_time));
    run(8, "max depth grows by at most 3x per qubit", None, &|| growth(&swept));
    run(9, "doc cards check out; weakened B card is caught", None, &card_fidelity);
    run(10, "decomposed oracles equal their sources", None, &decomposition_soundness);

    println!();
    for (id, name, o, took) in &results {
        println!(
            "criterion {id:>2} {}: {name} [{:.2}s] {}",
            if o.passed { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    }
    let failed = results.iter().filter(|r| !r.2.passed).count();
    println!("\nacceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
