//! Acceptance gate: the ten criteria, one pass/fail line each.
//! Every criterion asserts its stated tolerance and (where given) its
//! runtime budget.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csop::condagg::{make_fca, AggKind, Fca};
use csop::csop::{
    cs_operator, lovasz_generalized, BinaryOp, CsConfig, Dissimilarity, LFunction,
};
use csop::decomp::{enumerate_chains, enumerate_partitions, Collection, DecompositionSystem, RelationKind};
use csop::integrals::{
    cff_operator, choquet, f_decomposition_direct, fc_levelset, fc_operator, ie_operator,
    rc_operator, CffMode, ChoquetForm, DecompositionMethod, FPair, PermutationPolicy,
};
use csop::laws::{
    check_operator_property, find_counterexample, symmetric_grid_measures, verify_equivalence,
    CounterexampleTarget, EquivalenceLaw, OperatorProperty, SweepConfig, Verdict,
};
use csop::setfn::{
    dual_measure, mobius_transform, random_function_with, random_measure_with,
    symmetric_from_levels, zeta_transform, GroundSet, MonotoneMeasure, PointFunction, RandomClass,
};

const EPS: f64 = 1e-9;
const EXACT: f64 = 1e-12;

fn report(criterion: usize, what: &str, pass: bool) {
    println!(
        "criterion {criterion}: {what} ... {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {what}");
}

fn ex42() -> (PointFunction, MonotoneMeasure) {
    let g = GroundSet::new(2).unwrap();
    let mut vals = vec![0.0; 4];
    vals[0b01] = 0.5;
    vals[0b10] = 0.4;
    vals[0b11] = 1.0;
    (
        PointFunction::new(g, vec![0.5, 1.0]).unwrap(),
        MonotoneMeasure::new(g, vals).unwrap(),
    )
}

fn ex46() -> (PointFunction, MonotoneMeasure) {
    let g = GroundSet::new(2).unwrap();
    (
        PointFunction::new(g, vec![0.5, 0.5]).unwrap(),
        symmetric_from_levels(g, &[0.0, 1.0, 2.0]).unwrap(),
    )
}

fn ex35() -> (PointFunction, MonotoneMeasure) {
    let g = GroundSet::new(3).unwrap();
    let vals: Vec<f64> = g
        .subsets()
        .map(|d| if d == 0 { 0.0 } else { 1.0 })
        .collect();
    (
        PointFunction::new(g, vec![0.4, 0.2, 0.3]).unwrap(),
        MonotoneMeasure::new(g, vals).unwrap(),
    )
}

fn cs_chain_l4(op: BinaryOp, g: GroundSet) -> CsConfig {
    CsConfig::new(
        DecompositionSystem::Chain,
        RelationKind::RPlus,
        LFunction::L4 { op },
        Fca::inf(g),
        Fca::inf(g),
    )
    .unwrap()
}

#[test]
fn criterion_01_choquet_four_form_agreement() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        let g = GroundSet::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACC0 + n as u64);
        for _ in 0..1000 {
            let f = random_function_with(g, 1.0, &mut rng);
            let mu = random_measure_with(g, RandomClass::Monotone, &mut rng);
            let vals: Vec<f64> = (1..=4)
                .map(|i| choquet(&f, &mu, ChoquetForm::from_index(i).unwrap()).unwrap())
                .collect();
            for a in &vals {
                for b in &vals {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        &format!("four-form agreement, worst gap {worst:.2e}, {elapsed:.1}s"),
        worst <= EPS && elapsed < 10.0,
    );
}

#[test]
fn criterion_02_fixed_goldens() {
    let start = Instant::now();
    let (f42, mu42) = ex42();
    let fc42 = fc_operator(&BinaryOp::Min, &f42, &mu42, &mu42, PermutationPolicy::Canonical)
        .unwrap()
        .value;
    let cs42 = cs_operator(
        &cs_chain_l4(BinaryOp::Min, f42.ground()),
        &f42,
        &mu42,
        &mu42.as_signed(),
    )
    .unwrap()
    .value;

    let (f46, mu46) = ex46();
    let fc46 = fc_operator(&BinaryOp::Min, &f46, &mu46, &mu46, PermutationPolicy::Canonical)
        .unwrap()
        .value;
    let lvl46 = fc_levelset(&BinaryOp::Min, &f46, &mu46).unwrap();

    let (f35, mu35) = ex35();
    let pan = f_decomposition_direct(
        &BinaryOp::Prod,
        &DecompositionSystem::Part,
        &f35,
        &mu35,
        DecompositionMethod::PartitionExact,
    )
    .unwrap();
    let coll = Collection::new(f35.ground(), vec![0b001, 0b101, 0b111]).unwrap();
    let direct = f_decomposition_direct(
        &BinaryOp::Prod,
        &DecompositionSystem::Explicit(vec![coll]),
        &f35,
        &mu35,
        DecompositionMethod::LpVertex,
    )
    .unwrap();

    let elapsed = start.elapsed().as_secs_f64();
    let pass = (fc42 - 0.9).abs() <= EXACT
        && (cs42 - 1.0).abs() <= EXACT
        && cs42 > 0.9
        && (fc46 - 1.0).abs() <= EXACT
        && (lvl46 - 0.5).abs() <= EXACT
        && (pan - 0.9).abs() <= EXACT
        && direct <= 0.4 + EXACT
        && elapsed < 1.0;
    report(
        2,
        &format!(
            "golden values (fC={fc42}, CS={cs42}, fC'={fc46}, lvl={lvl46}, pan={pan}, direct={direct:.3}), {elapsed:.2}s"
        ),
        pass,
    );
}

#[test]
fn criterion_03_thm4_3_positive() {
    let start = Instant::now();
    let ops = [BinaryOp::Min, BinaryOp::Prod, BinaryOp::ProdClamped];
    let mut violations = 0usize;
    let mut checked = 0usize;

    // n = 3: exhaustive denominator-8 symmetric grid, μ = μ̂
    let g3 = GroundSet::new(3).unwrap();
    let grid = symmetric_grid_measures(g3, 8);
    assert_eq!(grid.len(), 165);
    let mut rng = ChaCha8Rng::seed_from_u64(0x43);
    for op in &ops {
        let cfg = cs_chain_l4(op.clone(), g3);
        for mu in &grid {
            for _ in 0..2 {
                let f = random_function_with(g3, 1.0, &mut rng);
                let lhs = cs_operator(&cfg, &f, mu, &mu.as_signed()).unwrap().value;
                let rhs = fc_operator(op, &f, mu, mu, PermutationPolicy::Canonical)
                    .unwrap()
                    .value;
                checked += 1;
                if (lhs - rhs).abs() > EPS {
                    violations += 1;
                }
            }
        }
    }

    // n = 4: ≥300 sampled grid measures per operation
    let g4 = GroundSet::new(4).unwrap();
    for op in &ops {
        let cfg = cs_chain_l4(op.clone(), g4);
        for _ in 0..300 {
            let mut levels: Vec<f64> = vec![0.0];
            levels.extend((0..4).map(|_| rng.gen_range(0..=8) as f64 / 8.0));
            levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mu = symmetric_from_levels(g4, &levels).unwrap();
            let f = random_function_with(g4, 1.0, &mut rng);
            let lhs = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap().value;
            let rhs = fc_operator(op, &f, &mu, &mu, PermutationPolicy::Canonical)
                .unwrap()
                .value;
            checked += 1;
            if (lhs - rhs).abs() > EPS {
                violations += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        3,
        &format!("thm4.3 positive, {checked} instances, {violations} violations, {elapsed:.1}s"),
        violations == 0 && elapsed < 60.0,
    );
}

#[test]
fn criterion_04_thm4_3_negative() {
    let rep = find_counterexample(
        &CounterexampleTarget::Thm4_3ViolatingOp {
            op: BinaryOp::ProdSquare,
        },
        &SweepConfig::new(3, 500, 0x44),
    );
    let gap_ok = rep
        .witness
        .as_ref()
        .and_then(|w| Some((w["lhs"].as_f64()? - w["rhs"].as_f64()?).abs()))
        .map(|g| g > 1e-6)
        .unwrap_or(false);
    report(
        4,
        "thm4.3 negative: a*x^2 refuted within 500 instances at n=3, gap > 1e-6",
        rep.verdict == Verdict::RefutedWithWitness && gap_ok,
    );
}

#[test]
fn criterion_05_thm4_13_both_directions() {
    let mut ok = true;
    for n in [3, 4] {
        let rep = verify_equivalence(
            &EquivalenceLaw::Thm4_13 {
                delta: Dissimilarity::Abs,
                op: BinaryOp::Prod,
            },
            &SweepConfig::new(n, 300, 0x45),
        );
        ok &= rep.verdict == Verdict::HoldsOnSample;
    }
    let rep = find_counterexample(
        &CounterexampleTarget::Thm4_13ViolatingDelta {
            delta: Dissimilarity::Square,
            op: BinaryOp::Prod,
        },
        &SweepConfig::new(3, 500, 0x45),
    );
    ok &= rep.verdict == Verdict::RefutedWithWitness;
    report(5, "thm4.13: |x-y| holds on n in {3,4}; (x-y)^2 refuted", ok);
}

#[test]
fn criterion_06_thm4_11_cc_case() {
    let mut worst: f64 = 0.0;
    let mut pi_vs_choquet: f64 = 0.0;
    let mut count = 0usize;
    for n in [3usize, 4] {
        let g = GroundSet::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x46 + n as u64);
        for c in [BinaryOp::Min, BinaryOp::Prod, BinaryOp::CopulaW] {
            let pair = FPair::copula(c.clone()).unwrap();
            let cfg = CsConfig::new(
                DecompositionSystem::Chain,
                RelationKind::RMinus,
                LFunction::L7 {
                    f1: pair.f1().clone(),
                    f2: pair.f2().clone(),
                },
                Fca::inf(g),
                Fca::inf(g),
            )
            .unwrap();
            for _ in 0..300 {
                let f = random_function_with(g, 1.0, &mut rng);
                let mu = random_measure_with(g, RandomClass::SymmetricCapacity, &mut rng);
                let lhs = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap().value;
                let rhs = cff_operator(&pair, &f, &mu, PermutationPolicy::Canonical, CffMode::Ordered)
                    .unwrap()
                    .value;
                worst = worst.max((lhs - rhs).abs());
                count += 1;
                if matches!(c, BinaryOp::Prod) {
                    let ch = choquet(&f, &mu, ChoquetForm::Standard).unwrap();
                    pi_vs_choquet = pi_vs_choquet.max((rhs - ch).abs());
                }
            }
        }
    }
    report(
        6,
        &format!(
            "thm4.11/CC on M,Pi,W: {count} instances, worst gap {worst:.2e}; cff(Pi,Pi) vs choquet {pi_vs_choquet:.2e}"
        ),
        worst <= EPS && pi_vs_choquet <= EPS,
    );
}

#[test]
fn criterion_07_duality() {
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    for n in [2usize, 3, 4] {
        let g = GroundSet::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x47 + n as u64);
        for _ in 0..300 {
            let f = random_function_with(g, 1.0, &mut rng);
            let (mu, muhat) = csop::laws::random_dominated_pair(g, &mut rng);
            let lhs = rc_operator(&BinaryOp::Prod, &f, &mu, &muhat, PermutationPolicy::Canonical)
                .unwrap()
                .value;
            let nu = dual_measure(&muhat, &muhat).unwrap();
            let nuhat = dual_measure(&mu, &mu).unwrap();
            let rhs = fc_operator(&BinaryOp::Prod, &f, &nu, &nuhat, PermutationPolicy::Canonical)
                .unwrap()
                .value;
            worst = worst.max((lhs - rhs).abs());
            count += 1;
        }
    }
    report(
        7,
        &format!("duality rc = fc∘dual, {count} instances, worst gap {worst:.2e}"),
        worst <= EPS,
    );
}

#[test]
fn criterion_08_ie_equals_cs() {
    let g = GroundSet::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x48);
    let mut worst: f64 = 0.0;
    let mut inf_vs_mobius: f64 = 0.0;
    let mut count = 0usize;
    for kind in [AggKind::Inf, AggKind::Prod] {
        let a = make_fca(kind.clone(), g).unwrap();
        for _ in 0..300 {
            let f = random_function_with(g, 1.0, &mut rng);
            let mu = random_measure_with(g, RandomClass::Monotone, &mut rng);
            let lhs = ie_operator(&BinaryOp::Prod, &a, &f, &mu).unwrap();
            let rhs = lovasz_generalized(&BinaryOp::Prod, &a, &f, &mu).unwrap();
            worst = worst.max((lhs - rhs).abs());
            count += 1;
            if matches!(kind, AggKind::Inf) {
                let ch = choquet(&f, &mu, ChoquetForm::Mobius).unwrap();
                inf_vs_mobius = inf_vs_mobius.max((lhs - ch).abs());
            }
        }
    }
    report(
        8,
        &format!(
            "ie = lovasz ({count} instances, worst gap {worst:.2e}); ie(inf,prod) vs choquet form 4 {inf_vs_mobius:.2e}"
        ),
        worst <= EXACT && inf_vs_mobius <= EPS,
    );
}

#[test]
fn criterion_09_section5_property_suite() {
    let mut ok = true;
    for n in [2usize, 3, 4] {
        let g = GroundSet::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x49 + n as u64);
        let mu = random_measure_with(g, RandomClass::Capacity, &mut rng);
        let seed = 0x49 + n as u64;

        // Prop 5.1 (zero) and Prop 5.3 (monotone) on L4(min)
        let l4min = cs_chain_l4(BinaryOp::Min, g);
        for prop in [OperatorProperty::Zero, OperatorProperty::Monotone] {
            let rep = check_operator_property(prop, &l4min, &mu, &mu.as_signed(), 200, seed);
            ok &= rep.verdict == Verdict::HoldsOnSample;
        }

        // homogeneity, subadditivity, convexity on L2(prod) with A^sum
        let sum = make_fca(AggKind::Sum, g).unwrap();
        let l2sum = CsConfig::new(
            DecompositionSystem::Part,
            RelationKind::Diagonal,
            LFunction::L2 { op: BinaryOp::Prod },
            sum.clone(),
            sum,
        )
        .unwrap();
        for prop in [
            OperatorProperty::Homogeneous,
            OperatorProperty::Subadditive,
            OperatorProperty::Convex,
        ] {
            let rep = check_operator_property(prop, &l2sum, &mu, &mu.as_signed(), 200, seed);
            ok &= rep.verdict == Verdict::HoldsOnSample;
        }

        // idempotency: (p:2) on L2(min) over single-member collections,
        // (p:3) on L4(prod) over chains, (id:n2) on L6(abs,min)
        let configs = [
            CsConfig::new(
                DecompositionSystem::Singletons,
                RelationKind::Diagonal,
                LFunction::L2 { op: BinaryOp::Min },
                Fca::inf(g),
                Fca::inf(g),
            )
            .unwrap(),
            cs_chain_l4(BinaryOp::Prod, g),
            CsConfig::new(
                DecompositionSystem::Chain,
                RelationKind::RMinus,
                LFunction::L6 {
                    delta: Dissimilarity::Abs,
                    op: BinaryOp::Min,
                },
                Fca::inf(g),
                Fca::inf(g),
            )
            .unwrap(),
        ];
        for cfg in &configs {
            let rep = check_operator_property(
                OperatorProperty::Idempotent,
                cfg,
                &mu,
                &mu.as_signed(),
                200,
                seed,
            );
            ok &= rep.verdict == Verdict::HoldsOnSample;
        }

        // the p-variation is not idempotent
        let l1 = CsConfig::new(
            DecompositionSystem::Chain,
            RelationKind::RPlus,
            LFunction::L1 { p: 2.0 },
            Fca::inf(g),
            Fca::inf(g),
        )
        .unwrap();
        let rep = check_operator_property(
            OperatorProperty::Idempotent,
            &l1,
            &mu,
            &mu.as_signed(),
            200,
            seed,
        );
        ok &= rep.verdict == Verdict::RefutedWithWitness;
    }
    report(9, "section-5 property suite over n in {2,3,4}", ok);
}

#[test]
fn criterion_10_structural() {
    // Möbius round-trip
    let g = GroundSet::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4A);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let mu = random_measure_with(g, RandomClass::Monotone, &mut rng);
        let back = zeta_transform(&mobius_transform(&mu));
        for d in g.subsets() {
            worst = worst.max((back.value(d) - mu.value(d)).abs());
        }
    }

    // Bell numbers up to B(6)
    let bell = [1usize, 2, 5, 15, 52, 203];
    let mut bell_ok = true;
    for (i, &b) in bell.iter().enumerate() {
        let gi = GroundSet::new(i + 1).unwrap();
        bell_ok &= enumerate_partitions(gi).unwrap().len() == b;
    }

    // the five chains for n = 2
    let g2 = GroundSet::new(2).unwrap();
    let chains = enumerate_chains(g2, None).unwrap().len();

    // full verify manifest through the CLI binary
    let start = Instant::now();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_csop"))
        .arg("verify")
        .output()
        .expect("csop binary runs");
    let elapsed = start.elapsed().as_secs_f64();

    report(
        10,
        &format!(
            "structural: mobius gap {worst:.2e}, bell ok {bell_ok}, chains(n=2)={chains}, verify exit {:?} in {elapsed:.1}s",
            status.status.code()
        ),
        worst <= EPS
            && bell_ok
            && chains == 5
            && status.status.success()
            && elapsed < 300.0,
    );
}
