mod common;

use common::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use qoracle::decompose::{decompose_to_basis, lower_to_basis};
use qoracle::oracles::*;
use qoracle::simulator::{apply_circuit, equal_up_to_global_phase};
use qoracle::{circuit_unitary, BasisSet, Circuit, Gate, StateVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-9;

fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    let angle = -7.0f64..7.0;
    let pair = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b);
    prop_oneof![
        (0..n, 0..4usize).prop_map(|(q, k)| [Gate::h(q), Gate::x(q), Gate::sx(q), Gate::z(q)][k].clone()),
        (0..n, angle.clone()).prop_map(|(q, t)| Gate::rz(t, q)),
        (0..n, angle.clone()).prop_map(|(q, t)| Gate::p(t, q)),
        pair.clone().prop_map(|(a, b)| Gate::cx(a, b)),
        (pair, angle).prop_map(|((a, b), t)| Gate::cp(t, a, b)),
        proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n).prop_map(|qs| Gate::mcz(&qs).unwrap()),
    ]
}

fn arb_circuit_on(n: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(arb_gate(n), 0..16).prop_map(move |gs| Circuit::from_gates(n, gs).unwrap())
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=4).prop_flat_map(arb_circuit_on)
}

fn random_state(n: usize, rng: &mut StdRng) -> StateVector {
    let amps: Vec<C> = (0..1 << n).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn arb_range() -> impl Strategy<Value = RangeSpec> {
    (3usize..=5).prop_flat_map(|n| {
        let top = (1u64 << n) - 1;
        (Just(n), 0..=top, 0..=top).prop_map(|(n, a, b)| RangeSpec::new(n, a.min(b), a.max(b)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simulator_matches_reference(c in arb_circuit()) {
        let u = circuit_unitary(&c).unwrap();
        prop_assert!(max_diff(&u, &reference_unitary(&c)) < TOL);
        prop_assert!(u.unitarity_error() < TOL);
    }

    #[test]
    fn composition_multiplies_unitaries((c1, c2) in (2usize..=4).prop_flat_map(|n| (arb_circuit_on(n), arb_circuit_on(n)))) {
        let both = circuit_unitary(&c1.compose(&c2).unwrap()).unwrap();
        let product = circuit_unitary(&c2).unwrap().mul(&circuit_unitary(&c1).unwrap()).unwrap();
        prop_assert!(both.max_abs_diff(&product).unwrap() < TOL);
    }

    #[test]
    fn application_is_linear_and_norm_preserving(c in arb_circuit(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = c.n_qubits();
        let (psi, phi) = (random_state(n, &mut rng), random_state(n, &mut rng));
        let (alpha, beta) = (C::new(0.6, 0.0), C::new(0.0, 0.8));
        let lhs = apply_circuit(&c, &psi.combine(alpha, &phi, beta).unwrap()).unwrap();
        let rhs = apply_circuit(&c, &psi).unwrap().combine(alpha, &apply_circuit(&c, &phi).unwrap(), beta).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < TOL);
        prop_assert!((apply_circuit(&c, &psi).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_undoes(c in arb_circuit()) {
        let u = circuit_unitary(&c.compose(&c.inverse()).unwrap()).unwrap();
        prop_assert!(max_diff(&u, &identity(1 << c.n_qubits())) < TOL);
    }

    #[test]
    fn relabelling_keeps_depth(c in arb_circuit(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..c.n_qubits()).collect();
        let mut rng = StdRng::seed_from_u64(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(c.relabel(&perm).unwrap().depth(), c.depth());
    }

    #[test]
    fn decomposition_is_sound(c in arb_circuit()) {
        let source = circuit_unitary(&c).unwrap();
        let basis = BasisSet::default();
        for lowered in [lower_to_basis(&c, &basis).unwrap(), decompose_to_basis(&c, &basis).unwrap()] {
            prop_assert!(lowered.gates().iter().all(|g| basis.contains(g.gate_type())));
            prop_assert!(equal_up_to_global_phase(&circuit_unitary(&lowered).unwrap(), &source, TOL).unwrap());
        }
    }

    #[test]
    fn alternative_basis_is_sound(c in arb_circuit()) {
        let basis: BasisSet = "H, P, CP".parse().unwrap();
        let lowered = decompose_to_basis(&c, &basis).unwrap();
        prop_assert!(equal_up_to_global_phase(&circuit_unitary(&lowered).unwrap(), &circuit_unitary(&c).unwrap(), TOL).unwrap());
    }

    #[test]
    fn adders_compose_additively(n in 1usize..=5, a in 0u64..64, b in 0u64..64) {
        let c = add_const(&AdderSpec::new(n, a).unwrap()).unwrap()
            .compose(&add_const(&AdderSpec::new(n, b).unwrap()).unwrap()).unwrap();
        let want = signed_permutation(n, |x| (x + a + b) % (1 << n), |_| 1.0);
        prop_assert!(max_diff(&circuit_unitary(&c).unwrap(), &want) < TOL);
    }

    #[test]
    fn adder_keeps_relative_phases(n in 2usize..=5, a in 0u64..32, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_state(n, &mut rng);
        let out = apply_circuit(&add_const(&AdderSpec::new(n, a).unwrap()).unwrap(), &psi).unwrap();
        let dim = 1usize << n;
        for x in 0..dim {
            let y = (x + a as usize) % dim;
            prop_assert!((out.amplitudes()[y] - psi.amplitudes()[x]).norm() < TOL);
        }
    }

    #[test]
    fn less_than_is_an_involution(n in 1usize..=5, m in 0u64..=32) {
        let m = m.min(1 << n);
        let lt = less_than(&LessThanSpec::new(n, m).unwrap()).unwrap();
        let twice = lt.compose(&lt).unwrap();
        prop_assert!(max_diff(&circuit_unitary(&twice).unwrap(), &identity(1 << n)) < TOL);
    }

    #[test]
    fn mcz_ignores_operand_order(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut qs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        if qs.is_empty() {
            qs.push(0);
        }
        let sorted = circuit_unitary(&mcz(n, &qs).unwrap()).unwrap();
        qs.reverse();
        let reversed = circuit_unitary(&mcz(n, &qs).unwrap()).unwrap();
        prop_assert!(sorted.max_abs_diff(&reversed).unwrap() < TOL);
        let mask: u64 = qs.iter().map(|q| 1u64 << q).sum();
        prop_assert!(max_diff(&sorted, &phase_diagonal(n, |x| x & mask == mask)) < TOL);
    }

    #[test]
    fn range_implementations_agree_on_uniform(spec in arb_range()) {
        let uniform = StateVector::uniform(spec.n()).unwrap();
        let a = apply_circuit(&range_oracle_a(&spec).unwrap(), &uniform).unwrap();
        let b = apply_circuit(&range_oracle_b(&spec).unwrap(), &uniform).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < TOL);
        let ua = circuit_unitary(&range_oracle_a(&spec).unwrap()).unwrap();
        prop_assert!(max_diff(&ua, &phase_diagonal(spec.n(), |x| spec.contains(x))) < TOL);
    }
}

#[test]
fn qft_is_the_dft() {
    for n in 1..=5 {
        let u = circuit_unitary(&qft(n).unwrap()).unwrap();
        assert!(max_diff(&u, &dft(n)) < TOL, "n={n}");
        let back = circuit_unitary(&qft(n).unwrap().compose(&iqft(n).unwrap()).unwrap()).unwrap();
        assert!(max_diff(&back, &identity(1 << n)) < TOL);
    }
}

#[test]
fn unitary_extraction_respects_cap() {
    assert!(circuit_unitary(&Circuit::new(11)).is_err());
    assert!(StateVector::uniform(21).is_err());
}
