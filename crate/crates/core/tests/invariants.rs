//! Property tests for the structural invariants: transforms, duals,
//! Choquet forms and CS monotonicity under random inputs.

use proptest::prelude::*;

use csop::csop::{cs_operator, BinaryOp, CsConfig, LFunction};
use csop::decomp::{DecompositionSystem, RelationKind};
use csop::condagg::Fca;
use csop::integrals::{choquet, ChoquetForm};
use csop::setfn::{
    dual_measure, mobius_transform, zeta_transform, GroundSet, MonotoneMeasure, PointFunction,
};

/// Monotone measure from free nonnegative weights: the zeta transform of
/// a nonnegative Möbius vector is monotone (in fact totally monotone).
fn measure_from_weights(n: usize, weights: &[f64]) -> MonotoneMeasure {
    let g = GroundSet::new(n).unwrap();
    let m = g.num_subsets();
    let mut vals = vec![0.0f64; m];
    for d in 1..m {
        for e in 1..m {
            if e & d == e {
                vals[d] += weights[e % weights.len()].abs();
            }
        }
    }
    MonotoneMeasure::new(g, vals).unwrap()
}

fn arb_instance(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        proptest::collection::vec(0.0f64..1.0, n),
        proptest::collection::vec(0.0f64..1.0, 1 << n),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_zeta_roundtrip((f, w) in arb_instance(4)) {
        let _ = f;
        let mu = measure_from_weights(4, &w);
        let back = zeta_transform(&mobius_transform(&mu));
        for d in mu.ground().subsets() {
            prop_assert!((back.value(d) - mu.value(d)).abs() < 1e-9);
        }
    }

    #[test]
    fn dual_is_an_involution((f, w) in arb_instance(4)) {
        let _ = f;
        let mu = measure_from_weights(4, &w);
        let dual = dual_measure(&mu, &mu).unwrap();
        let back = dual_measure(&dual, &dual).unwrap();
        for d in mu.ground().subsets() {
            prop_assert!((back.value(d) - mu.value(d)).abs() < 1e-9);
        }
    }

    #[test]
    fn choquet_forms_agree((f, w) in arb_instance(4)) {
        let g = GroundSet::new(4).unwrap();
        let f = PointFunction::new(g, f).unwrap();
        let mu = measure_from_weights(4, &w);
        let base = choquet(&f, &mu, ChoquetForm::Standard).unwrap();
        for form in [ChoquetForm::Increments, ChoquetForm::Telescoping, ChoquetForm::Mobius] {
            prop_assert!((choquet(&f, &mu, form).unwrap() - base).abs() < 1e-9);
        }
    }

    #[test]
    fn choquet_monotone_in_f((f, w) in arb_instance(4), bump in proptest::collection::vec(0.0f64..0.5, 4)) {
        let g = GroundSet::new(4).unwrap();
        let mu = measure_from_weights(4, &w);
        let lo = PointFunction::new(g, f.clone()).unwrap();
        let hi = PointFunction::new(
            g,
            f.iter().zip(&bump).map(|(a, b)| a + b).collect(),
        ).unwrap();
        let a = choquet(&lo, &mu, ChoquetForm::Standard).unwrap();
        let b = choquet(&hi, &mu, ChoquetForm::Standard).unwrap();
        prop_assert!(a <= b + 1e-9);
    }

    #[test]
    fn cs_value_dominates_every_collection((f, w) in arb_instance(3)) {
        let g = GroundSet::new(3).unwrap();
        let f = PointFunction::new(g, f).unwrap();
        let mu = measure_from_weights(3, &w);
        let cfg = CsConfig::new(
            DecompositionSystem::Part,
            RelationKind::Diagonal,
            LFunction::L2 { op: BinaryOp::Prod },
            Fca::inf(g),
            Fca::inf(g),
        ).unwrap();
        let rep = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap();
        // the reported argmax terms re-sum to the reported value
        let s: f64 = rep.terms.iter().map(|t| t.value).sum();
        prop_assert!((s - rep.value).abs() < 1e-9);
    }
}
