//! Property tests for the protocol simulator.

use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use repcheck::matrix::{inner, ExactMatrix};
use repcheck::quantum::{
    conjugate_by, pauli, phase_s, phi_plus, random_rational_matrix, random_rational_state,
    teleport, PureState,
};
use repcheck::CycloNum;

fn gaussian(re: (i64, i64), im: (i64, i64)) -> CycloNum {
    CycloNum::gaussian(
        BigRational::new(re.0.into(), re.1.into()),
        BigRational::new(im.0.into(), im.1.into()),
    )
}

fn arb_amp() -> impl Strategy<Value = CycloNum> {
    ((-9i64..=9, 1i64..=6), (-9i64..=9, 1i64..=6)).prop_map(|(a, b)| gaussian(a, b))
}

fn arb_state(dim: usize) -> impl Strategy<Value = PureState> {
    proptest::collection::vec(arb_amp(), dim)
        .prop_filter("non-zero", |v| v.iter().any(|x| !x.is_zero()))
        .prop_map(|v| PureState::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn teleport_restores_any_qubit(s in arb_state(2)) {
        let t = teleport(&s).unwrap();
        prop_assert!(t.all_restored());
        prop_assert_eq!(t.total_probability(), BigRational::from_integer(1.into()));
        for o in &t.outcomes {
            prop_assert_eq!(o.probability.clone(), BigRational::new(1.into(), 4.into()));
        }
    }

    #[test]
    fn teleport_keeps_reference_entanglement(s in arb_state(4)) {
        let t = teleport(&s).unwrap();
        prop_assert!(t.all_restored());
    }

    #[test]
    fn zeta_phases_do_not_matter(s in arb_state(2), k in 0i64..8) {
        let rotated = PureState::new(s.amps().iter().map(|a| a * &CycloNum::zeta_pow(k)).collect()).unwrap();
        let t = teleport(&rotated).unwrap();
        prop_assert!(t.all_restored());
    }
}

#[test]
fn conjugation_preserves_hs_inner_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = phase_s();
    for _ in 0..40 {
        let x = random_rational_matrix(&mut rng, 2);
        let y = random_rational_matrix(&mut rng, 2);
        for u in [pauli(1), pauli(2), s.clone(), &s * &pauli(1)] {
            assert_eq!(
                ExactMatrix::hs_inner(&conjugate_by(&u, &x), &conjugate_by(&u, &y)).unwrap(),
                ExactMatrix::hs_inner(&x, &y).unwrap()
            );
        }
    }
}

#[test]
fn maximally_entangled_partial_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = phi_plus();
    let half = CycloNum::frac(1, 2);
    for _ in 0..40 {
        let m = random_rational_matrix(&mut rng, 2);
        let v = m.kron(&ExactMatrix::identity(2)).apply(phi.amps()).unwrap();
        assert_eq!(inner(phi.amps(), &v) * &half, m.trace() * &half);
    }
}

#[test]
fn seeded_random_states_are_reproducible() {
    let a = random_rational_state(&mut ChaCha8Rng::seed_from_u64(5), 4);
    let b = random_rational_state(&mut ChaCha8Rng::seed_from_u64(5), 4);
    assert_eq!(a, b);
}
