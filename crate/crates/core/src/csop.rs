//! The Choquet-Sugeno-like operator, the L-function catalog and the
//! operators directly expressible as CS configurations.
//!
//! The operator takes the sup over the collections of a decomposition
//! system of the sum over related pairs `(C, D)` of
//! `L(A(f|C), Â(f|D), μ(C), μ̂(D))`, with `A(·|∅) = Â(·|∅) = 0` and
//! `μ̂(∅) = 0`.

use std::sync::Arc;

use crate::condagg::Fca;
use crate::decomp::{expand_system, make_relation, Collection, DecompositionSystem, RelationKind};
use crate::setfn::{
    mobius_transform, GroundSet, Mask, MonotoneMeasure, PointFunction, SignedSetFunction,
};
use crate::{Error, Result};

/// Binary operation `∘` on reals; built-ins plus opaque closures.
#[derive(Clone)]
pub enum BinaryOp {
    /// `a ∧ b`
    Min,
    /// `a · b` (also the product copula Π)
    Prod,
    /// the Łukasiewicz copula `W(a,b) = (a + b − 1)₊`
    CopulaW,
    /// `a · min(b, 1)`: section-subadditive but not of the form `g(a)·b`
    ProdClamped,
    /// `a · b²`: violates section subadditivity
    ProdSquare,
    /// opaque evaluator
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

impl BinaryOp {
    pub fn apply(&self, a: f64, b: f64) -> f64 {
        match self {
            BinaryOp::Min => a.min(b),
            BinaryOp::Prod => a * b,
            BinaryOp::CopulaW => (a + b - 1.0).max(0.0),
            BinaryOp::ProdClamped => a * b.min(1.0),
            BinaryOp::ProdSquare => a * b * b,
            BinaryOp::Custom { eval, .. } => eval(a, b),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BinaryOp::Min => "min".into(),
            BinaryOp::Prod => "prod".into(),
            BinaryOp::CopulaW => "copula:W".into(),
            BinaryOp::ProdClamped => "prod-clamped".into(),
            BinaryOp::ProdSquare => "prod-square".into(),
            BinaryOp::Custom { label, .. } => label.clone(),
        }
    }

    /// The min copula M.
    pub fn copula_m() -> BinaryOp {
        BinaryOp::Min
    }

    /// The product copula Π.
    pub fn copula_pi() -> BinaryOp {
        BinaryOp::Prod
    }
}

impl std::fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Dissimilarity `δ`: symmetric, zero exactly on the diagonal, monotone
/// under interval containment.
#[derive(Clone)]
pub enum Dissimilarity {
    /// `|x − y|`
    Abs,
    /// `(x − y)²`
    Square,
    /// `|x − y|^p`
    AbsPow(f64),
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

impl Dissimilarity {
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        match self {
            Dissimilarity::Abs => (x - y).abs(),
            Dissimilarity::Square => (x - y) * (x - y),
            Dissimilarity::AbsPow(p) => (x - y).abs().powf(*p),
            Dissimilarity::Custom { eval, .. } => eval(x, y),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Dissimilarity::Abs => "abs".into(),
            Dissimilarity::Square => "square".into(),
            Dissimilarity::AbsPow(p) => format!("abs^{p}"),
            Dissimilarity::Custom { label, .. } => label.clone(),
        }
    }
}

impl std::fmt::Debug for Dissimilarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// The 4-ary kernel `L(x, y, z, w)`; catalog entries plus opaque closures.
#[derive(Clone)]
pub enum LFunction {
    /// `|x − y|^p`
    L1 { p: f64 },
    /// `x ∘ z`
    L2 { op: BinaryOp },
    /// `y ∘ w`
    L3 { op: BinaryOp },
    /// `x ∘ (z − w)₊`
    L4 { op: BinaryOp },
    /// `(x − y)₊ ∘ z`
    L5 { op: BinaryOp },
    /// `δ(x, y) ∘ z`
    L6 { delta: Dissimilarity, op: BinaryOp },
    /// `F₁(x, z) − F₂(y, z)`
    L7 { f1: BinaryOp, f2: BinaryOp },
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64, f64, f64, f64) -> f64 + Send + Sync>,
    },
}

impl LFunction {
    pub fn eval(&self, x: f64, y: f64, z: f64, w: f64) -> f64 {
        match self {
            LFunction::L1 { p } => (x - y).abs().powf(*p),
            LFunction::L2 { op } => op.apply(x, z),
            LFunction::L3 { op } => op.apply(y, w),
            LFunction::L4 { op } => op.apply(x, (z - w).max(0.0)),
            LFunction::L5 { op } => op.apply((x - y).max(0.0), z),
            LFunction::L6 { delta, op } => op.apply(delta.apply(x, y), z),
            LFunction::L7 { f1, f2 } => f1.apply(x, z) - f2.apply(y, z),
            LFunction::Custom { eval, .. } => eval(x, y, z, w),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LFunction::L1 { p } => format!("L1(p={p})"),
            LFunction::L2 { op } => format!("L2({})", op.label()),
            LFunction::L3 { op } => format!("L3({})", op.label()),
            LFunction::L4 { op } => format!("L4({})", op.label()),
            LFunction::L5 { op } => format!("L5({})", op.label()),
            LFunction::L6 { delta, op } => format!("L6({},{})", delta.label(), op.label()),
            LFunction::L7 { f1, f2 } => format!("L7({},{})", f1.label(), f2.label()),
            LFunction::Custom { label, .. } => label.clone(),
        }
    }
}

impl std::fmt::Debug for LFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Catalog constructor with parameter validation.
pub fn l_catalog(l: LFunction) -> Result<LFunction> {
    match &l {
        LFunction::L1 { p } if *p < 1.0 => Err(Error::InvalidParameter(format!(
            "L1 requires p ≥ 1, got {p}"
        ))),
        LFunction::L7 { f1, f2 } => {
            // F₁ ≥ F₂ on a grid of the unit square
            for i in 0..=20 {
                for j in 0..=20 {
                    let (a, b) = (i as f64 / 20.0, j as f64 / 20.0);
                    if f1.apply(a, b) < f2.apply(a, b) - crate::TOL {
                        return Err(Error::InvalidParameter(format!(
                            "L7 requires F1 ≥ F2; fails at ({a},{b})"
                        )));
                    }
                }
            }
            Ok(l)
        }
        _ => Ok(l),
    }
}

/// Assembled configuration of the Choquet-Sugeno-like operator.
#[derive(Clone, Debug)]
pub struct CsConfig {
    pub system: DecompositionSystem,
    pub relation: RelationKind,
    pub l: LFunction,
    pub fca: Fca,
    pub fca_hat: Fca,
}

impl CsConfig {
    pub fn new(
        system: DecompositionSystem,
        relation: RelationKind,
        l: LFunction,
        fca: Fca,
        fca_hat: Fca,
    ) -> Result<CsConfig> {
        if fca.ground() != fca_hat.ground() {
            return Err(Error::GroundMismatch(fca.ground().n(), fca_hat.ground().n()));
        }
        Ok(CsConfig {
            system,
            relation,
            l,
            fca,
            fca_hat,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.fca.ground()
    }
}

/// One summand of the winning collection, for audit output.
#[derive(Clone, Debug)]
pub struct CsTerm {
    pub c: Mask,
    pub d: Mask,
    pub value: f64,
}

/// CS evaluation: the sup, the collection attaining it (canonical-order
/// tie-break), and the per-pair terms of that collection.
#[derive(Clone, Debug)]
pub struct CsReport {
    pub value: f64,
    pub argmax: Collection,
    pub terms: Vec<CsTerm>,
}

/// Evaluates the Choquet-Sugeno-like operator.
///
/// `μ̂` is an arbitrary signed set function; class validation is the
/// caller's concern.
pub fn cs_operator(
    cfg: &CsConfig,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    muhat: &SignedSetFunction,
) -> Result<CsReport> {
    let g = cfg.ground();
    if f.ground() != g || mu.ground() != g || muhat.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let collections = expand_system(&cfg.system, g)?;
    if collections.is_empty() {
        return Err(Error::Precondition("empty decomposition system".into()));
    }
    let mut best: Option<(f64, Collection, Vec<CsTerm>)> = None;
    for coll in collections {
        let rel = make_relation(&coll, &cfg.relation)?;
        let mut total = 0.0;
        let mut terms = Vec::with_capacity(rel.pairs.len());
        for &(c, d) in &rel.pairs {
            let x = cfg.fca.eval_raw(f, c);
            let y = cfg.fca_hat.eval_raw(f, d);
            let z = mu.value(c);
            let w = muhat.value(d);
            let v = cfg.l.eval(x, y, z, w);
            terms.push(CsTerm { c, d, value: v });
            total += v;
        }
        // strict > keeps the canonically first argmax on ties
        if best.as_ref().map_or(true, |(b, _, _)| total > *b) {
            best = Some((total, coll, terms));
        }
    }
    let (value, argmax, terms) = best.unwrap();
    Ok(CsReport {
        value,
        argmax,
        terms,
    })
}

/// Evaluation modes of the upper Sugeno-like operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SugenoMode {
    /// `sup_{D∈Σ₀} F(A(f|D), μ(D))` for an arbitrary family
    Generic,
    /// the same with `A = A^inf`
    Inf,
    /// `max_i F(f_(i), μ(B_(i)))` (requires nondecreasing `F`)
    Levelset,
}

/// Upper Sugeno-like operator; `F = ∧` yields the Sugeno integral and
/// `F = ·` the Shilkret integral.
pub fn upper_sugeno_like(
    f_op: &BinaryOp,
    a: &Fca,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    mode: SugenoMode,
) -> Result<f64> {
    let g = a.ground();
    if f.ground() != g || mu.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    match mode {
        SugenoMode::Generic | SugenoMode::Inf => {
            let inf = Fca::inf(g);
            let fam = if mode == SugenoMode::Inf { &inf } else { a };
            let mut best = f64::NEG_INFINITY;
            for d in g.nonempty_subsets() {
                best = best.max(f_op.apply(fam.eval_raw(f, d), mu.value(d)));
            }
            Ok(best)
        }
        SugenoMode::Levelset => {
            let perm = f.ascending_permutation();
            let n = g.n();
            let mut upper: Mask = g.full_mask();
            let mut best = f64::NEG_INFINITY;
            for i in 0..n {
                // B_(i) = {(i),...,(n)}
                best = best.max(f_op.apply(f.value(perm[i]), mu.value(upper)));
                upper &= !(1 << (perm[i] - 1));
            }
            Ok(best)
        }
    }
}

/// Generalized Lebesgue-style operator: sup over partitions of
/// `Σ_D A(f|D) ⊗ μ(D)`.
pub fn generalized_lebesgue(
    op: &BinaryOp,
    a: &Fca,
    f: &PointFunction,
    mu: &MonotoneMeasure,
) -> Result<f64> {
    let g = a.ground();
    if f.ground() != g || mu.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let mut best = f64::NEG_INFINITY;
    for part in crate::decomp::enumerate_partitions(g)? {
        let total: f64 = part
            .members()
            .iter()
            .map(|&d| op.apply(a.eval_raw(f, d), mu.value(d)))
            .sum();
        best = best.max(total);
    }
    Ok(best)
}

/// Möbius-based extension: `Σ_{D ≠ ∅} A(f|D) ∘ Mob(D)`.
///
/// With `∘ = ·` and `A^inf` this is the Choquet integral in Möbius form;
/// with `A^prod` the Owen extension.
pub fn lovasz_generalized(
    op: &BinaryOp,
    a: &Fca,
    f: &PointFunction,
    mu: &MonotoneMeasure,
) -> Result<f64> {
    let g = a.ground();
    if f.ground() != g || mu.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let mob = mobius_transform(mu);
    Ok(g
        .nonempty_subsets()
        .map(|d| op.apply(a.eval_raw(f, d), mob.value(d)))
        .sum())
}

/// `Σ_{D ≠ ∅} (min_D f − max_{D^c} f)₊ ∘ μ(D)`, max over ∅ taken as 0.
pub fn minmax_diff(op: &BinaryOp, f: &PointFunction, mu: &MonotoneMeasure) -> Result<f64> {
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    Ok(g
        .nonempty_subsets()
        .map(|d| {
            let gap = (f.min_on(d) - f.max_on(g.complement(d))).max(0.0);
            op.apply(gap, mu.value(d))
        })
        .sum())
}

/// Generalized p-variation: CS with `L₁(p)` and `Â = A`.
pub fn p_variation(
    p: f64,
    a: &Fca,
    f: &PointFunction,
    sys: &DecompositionSystem,
    rel: &RelationKind,
) -> Result<f64> {
    if p < 1.0 {
        return Err(Error::InvalidParameter(format!("p-variation requires p ≥ 1, got {p}")));
    }
    let g = a.ground();
    let cfg = CsConfig::new(
        sys.clone(),
        rel.clone(),
        LFunction::L1 { p },
        a.clone(),
        a.clone(),
    )?;
    // measures are irrelevant to L₁; pass the zero measure
    let zero = MonotoneMeasure::new(g, vec![0.0; g.num_subsets()]).unwrap();
    let report = cs_operator(&cfg, f, &zero, &zero.as_signed())?;
    Ok(report.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condagg::{make_fca, AggKind};
    use crate::setfn::{random_measure, RandomClass};
    use crate::TOL;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn measure(ground: GroundSet, pairs: &[(&str, f64)]) -> MonotoneMeasure {
        let mut v = vec![0.0; ground.num_subsets()];
        for (s, x) in pairs {
            v[ground.parse_subset(s).unwrap() as usize] = *x;
        }
        MonotoneMeasure::new(ground, v).unwrap()
    }

    fn ones(ground: GroundSet) -> MonotoneMeasure {
        let v = ground
            .subsets()
            .map(|d| if d == 0 { 0.0 } else { 1.0 })
            .collect();
        MonotoneMeasure::new(ground, v).unwrap()
    }

    #[test]
    fn l_catalog_formulas() {
        let l1 = l_catalog(LFunction::L1 { p: 2.0 }).unwrap();
        assert_eq!(l1.eval(3.0, 1.0, 9.9, -4.2), 4.0);
        let l4 = l_catalog(LFunction::L4 { op: BinaryOp::Min }).unwrap();
        assert!((l4.eval(0.5, 0.77, 1.0, 0.4) - 0.5).abs() < TOL);
        let l7 = l_catalog(LFunction::L7 {
            f1: BinaryOp::Prod,
            f2: BinaryOp::Prod,
        })
        .unwrap();
        assert!((l7.eval(0.3, 0.2, 0.5, 0.9) - (0.3 * 0.5 - 0.2 * 0.5)).abs() < TOL);
        assert!(l_catalog(LFunction::L1 { p: 0.5 }).is_err());
        // c·F ≤ F so (F, cF) passes, (cF, F) fails
        let half = BinaryOp::Custom {
            label: "half-prod".into(),
            eval: Arc::new(|a, b| 0.5 * a * b),
        };
        assert!(l_catalog(LFunction::L7 {
            f1: BinaryOp::Prod,
            f2: half.clone()
        })
        .is_ok());
        assert!(l_catalog(LFunction::L7 {
            f1: half,
            f2: BinaryOp::Prod
        })
        .is_err());
    }

    #[test]
    fn cs_chain_value_exceeds_ordered_form() {
        // f=(0.5,1), μ({1})=0.5, μ({2})=0.4, μ(X)=1; L₄(∧) over chains/R⁺
        let g2 = g(2);
        let f = PointFunction::new(g2, vec![0.5, 1.0]).unwrap();
        let mu = measure(g2, &[("{1}", 0.5), ("{2}", 0.4), ("{1,2}", 1.0)]);
        let cfg = CsConfig::new(
            DecompositionSystem::Chain,
            RelationKind::RPlus,
            LFunction::L4 { op: BinaryOp::Min },
            Fca::inf(g2),
            Fca::inf(g2),
        )
        .unwrap();
        let rep = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap();
        assert!((rep.value - 1.0).abs() < 1e-12);
        // witnessed by the chain {1} ⊂ X
        assert_eq!(rep.argmax.members(), &[0b11, 0b01]);
    }

    #[test]
    fn cs_zero_function_zero_value() {
        let g2 = g(2);
        let mu = measure(g2, &[("{1}", 0.5), ("{2}", 0.4), ("{1,2}", 1.0)]);
        for l in [
            LFunction::L1 { p: 1.5 },
            LFunction::L2 { op: BinaryOp::Min },
            LFunction::L4 { op: BinaryOp::Prod },
            LFunction::L5 { op: BinaryOp::Prod },
        ] {
            let cfg = CsConfig::new(
                DecompositionSystem::Chain,
                RelationKind::RPlus,
                l,
                Fca::inf(g2),
                Fca::inf(g2),
            )
            .unwrap();
            let rep = cs_operator(&cfg, &PointFunction::zero(g2), &mu, &mu.as_signed()).unwrap();
            assert!(rep.value.abs() < TOL);
        }
    }

    #[test]
    fn cs_partition_product_recovers_pan_value() {
        // L₂(·), H_part, A^inf, f=(0.4,0.2,0.3), μ≡1 → 0.9
        let g3 = g(3);
        let f = PointFunction::new(g3, vec![0.4, 0.2, 0.3]).unwrap();
        let mu = ones(g3);
        let cfg = CsConfig::new(
            DecompositionSystem::Part,
            RelationKind::Diagonal,
            LFunction::L2 { op: BinaryOp::Prod },
            Fca::inf(g3),
            Fca::inf(g3),
        )
        .unwrap();
        let rep = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap();
        assert!((rep.value - 0.9).abs() < 1e-12);
        // the all-singleton partition wins
        assert_eq!(rep.argmax.members(), &[0b001, 0b010, 0b100]);
    }

    #[test]
    fn sugeno_and_shilkret() {
        let g2 = g(2);
        let f = PointFunction::new(g2, vec![0.5, 1.0]).unwrap();
        let mu = measure(g2, &[("{1}", 0.5), ("{2}", 0.4), ("{1,2}", 1.0)]);
        let inf = Fca::inf(g2);
        // Sugeno: max(min(0.5,1), min(1,0.4), min(0.5,0.5)) = 0.5
        let sug = upper_sugeno_like(&BinaryOp::Min, &inf, &f, &mu, SugenoMode::Inf).unwrap();
        assert!((sug - 0.5).abs() < 1e-12);
        // Shilkret of 1_X under a capacity is 1
        let one = PointFunction::constant(g2, 1.0).unwrap();
        let shi = upper_sugeno_like(&BinaryOp::Prod, &inf, &one, &mu, SugenoMode::Inf).unwrap();
        assert!((shi - 1.0).abs() < 1e-12);
        // Sugeno idempotency for b ≤ 1
        let b = PointFunction::constant(g2, 0.7).unwrap();
        let v = upper_sugeno_like(&BinaryOp::Min, &inf, &b, &mu, SugenoMode::Inf).unwrap();
        assert!((v - 0.7).abs() < 1e-12);
    }

    #[test]
    fn sugeno_levelset_matches_inf_for_nondecreasing_f() {
        let g4 = g(4);
        let inf = Fca::inf(g4);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let f = crate::setfn::random_function_with(g4, 1.0, &mut rng);
            let mu = random_measure_with_rng(g4, &mut rng);
            for op in [BinaryOp::Min, BinaryOp::Prod] {
                let a = upper_sugeno_like(&op, &inf, &f, &mu, SugenoMode::Inf).unwrap();
                let b = upper_sugeno_like(&op, &inf, &f, &mu, SugenoMode::Levelset).unwrap();
                assert!((a - b).abs() < TOL, "{} vs {b} for {op:?}", a);
            }
        }
    }

    fn random_measure_with_rng(gr: GroundSet, rng: &mut ChaCha8Rng) -> MonotoneMeasure {
        crate::setfn::random_measure_with(gr, RandomClass::Monotone, rng)
    }

    #[test]
    fn sugeno_generic_equals_cs_singletons() {
        let g3 = g(3);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let inf = Fca::inf(g3);
        for _ in 0..200 {
            let f = crate::setfn::random_function_with(g3, 1.0, &mut rng);
            let mu = random_measure_with_rng(g3, &mut rng);
            for op in [BinaryOp::Min, BinaryOp::Prod] {
                let direct =
                    upper_sugeno_like(&op, &inf, &f, &mu, SugenoMode::Generic).unwrap();
                let cfg = CsConfig::new(
                    DecompositionSystem::Singletons,
                    RelationKind::Diagonal,
                    LFunction::L2 { op: op.clone() },
                    inf.clone(),
                    inf.clone(),
                )
                .unwrap();
                let cs = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap().value;
                assert!((direct - cs).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn lebesgue_examples() {
        let g3 = g(3);
        let f = PointFunction::new(g3, vec![0.4, 0.2, 0.3]).unwrap();
        let mu = ones(g3);
        let inf = Fca::inf(g3);
        let v = generalized_lebesgue(&BinaryOp::Prod, &inf, &f, &mu).unwrap();
        assert!((v - 0.9).abs() < 1e-12);

        // one-block system {{X}} is the min-max integral μ(X)·min f
        let one_block = DecompositionSystem::Explicit(vec![
            Collection::new(g3, vec![g3.full_mask()]).unwrap()
        ]);
        let cfg = CsConfig::new(
            one_block,
            RelationKind::Diagonal,
            LFunction::L2 { op: BinaryOp::Prod },
            inf.clone(),
            inf.clone(),
        )
        .unwrap();
        let rep = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap();
        assert!((rep.value - 0.2).abs() < 1e-12);

        // constant function under an additive capacity: every partition ties
        let g2 = g(2);
        let add = measure(g2, &[("{1}", 0.3), ("{2}", 0.7), ("{1,2}", 1.0)]);
        let b = PointFunction::constant(g2, 0.6).unwrap();
        let v2 = generalized_lebesgue(&BinaryOp::Prod, &Fca::inf(g2), &b, &add).unwrap();
        assert!((v2 - 0.6).abs() < 1e-12);
    }

    #[test]
    fn lebesgue_equals_cs_partitions() {
        let g4 = g(4);
        let inf = Fca::inf(g4);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let f = crate::setfn::random_function_with(g4, 1.0, &mut rng);
            let mu = random_measure_with_rng(g4, &mut rng);
            let direct = generalized_lebesgue(&BinaryOp::Prod, &inf, &f, &mu).unwrap();
            let cfg = CsConfig::new(
                DecompositionSystem::Part,
                RelationKind::Diagonal,
                LFunction::L2 { op: BinaryOp::Prod },
                inf.clone(),
                inf.clone(),
            )
            .unwrap();
            let cs = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap().value;
            assert!((direct - cs).abs() <= 1e-9);
        }
    }

    #[test]
    fn lovasz_examples() {
        let g3 = g(3);
        let f = PointFunction::new(g3, vec![0.4, 0.2, 0.3]).unwrap();
        let mu = ones(g3);
        let inf = Fca::inf(g3);
        let v = lovasz_generalized(&BinaryOp::Prod, &inf, &f, &mu).unwrap();
        assert!((v - 0.4).abs() < 1e-12);

        // additive measure: Σ f(i)μ({i}) under both A^inf and A^prod
        let g2 = g(2);
        let add = measure(g2, &[("{1}", 0.3), ("{2}", 0.7), ("{1,2}", 1.0)]);
        let f2 = PointFunction::new(g2, vec![0.5, 0.8]).unwrap();
        let expected = 0.5 * 0.3 + 0.8 * 0.7;
        for a in [Fca::inf(g2), Fca::prod(g2)] {
            let got = lovasz_generalized(&BinaryOp::Prod, &a, &f2, &add).unwrap();
            assert!((got - expected).abs() < TOL);
        }
    }

    #[test]
    fn lovasz_equals_cs_one_system() {
        let g3 = g(3);
        let inf = Fca::inf(g3);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let f = crate::setfn::random_function_with(g3, 1.0, &mut rng);
            let mu = random_measure_with_rng(g3, &mut rng);
            let mob = mobius_transform(&mu);
            let direct = lovasz_generalized(&BinaryOp::Prod, &inf, &f, &mu).unwrap();
            let cfg = CsConfig::new(
                DecompositionSystem::One,
                RelationKind::Diagonal,
                LFunction::L3 { op: BinaryOp::Prod },
                inf.clone(),
                inf.clone(),
            )
            .unwrap();
            let cs = cs_operator(&cfg, &f, &mu, &mob).unwrap().value;
            assert!((direct - cs).abs() <= 1e-9);
        }
    }

    #[test]
    fn minmax_diff_matches_choquet() {
        let g2 = g(2);
        let f = PointFunction::new(g2, vec![0.5, 1.0]).unwrap();
        let mu = measure(g2, &[("{1}", 0.5), ("{2}", 0.4), ("{1,2}", 1.0)]);
        let v = minmax_diff(&BinaryOp::Prod, &f, &mu).unwrap();
        assert!((v - 0.7).abs() < 1e-12);

        // constant: only D = X contributes
        let b = PointFunction::constant(g2, 0.3).unwrap();
        let vb = minmax_diff(&BinaryOp::Prod, &b, &mu).unwrap();
        assert!((vb - 0.3).abs() < 1e-12);

        // random capacities vs the ordered form
        let g3 = g(3);
        for seed in 0..100u64 {
            let mu = random_measure(g3, RandomClass::Capacity, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
            let f = crate::setfn::random_function_with(g3, 1.0, &mut rng);
            let a = minmax_diff(&BinaryOp::Prod, &f, &mu).unwrap();
            let b = crate::integrals::choquet(&f, &mu, crate::integrals::ChoquetForm::Standard)
                .unwrap();
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn p_variation_cases() {
        let g2 = g(2);
        // constant function, relation inside the collection (no ∅ pair):
        // every |x−x|^p term vanishes
        let inf = Fca::inf(g2);
        let b = PointFunction::constant(g2, 0.4).unwrap();
        let v = p_variation(
            2.0,
            &inf,
            &b,
            &DecompositionSystem::Chain,
            &RelationKind::Diagonal,
        )
        .unwrap();
        assert!(v.abs() < TOL);
        // with R⁺ the final drop to ∅ contributes |b − 0|^p
        let vplus = p_variation(
            2.0,
            &inf,
            &b,
            &DecompositionSystem::Chain,
            &RelationKind::RPlus,
        )
        .unwrap();
        assert!((vplus - 0.16).abs() < TOL);

        // path {1},{2} with consecutive pairs, f=(0,1), p=1 → 1
        let path = Collection::new(g2, vec![0b01, 0b10]).unwrap();
        let sys = DecompositionSystem::Explicit(vec![path]);
        let rel = RelationKind::Custom(vec![(0b01, 0b10)]);
        let f = PointFunction::new(g2, vec![0.0, 1.0]).unwrap();
        let v1 = p_variation(1.0, &inf, &f, &sys, &rel).unwrap();
        assert!((v1 - 1.0).abs() < TOL);

        // f=(0,1,0), consecutive singleton pairs, p=2 → 1 + 1 = 2
        let g3 = g(3);
        let path3 = Collection::new(g3, vec![0b001, 0b010, 0b100]).unwrap();
        let sys3 = DecompositionSystem::Explicit(vec![path3]);
        let rel3 = RelationKind::Custom(vec![(0b001, 0b010), (0b010, 0b100)]);
        let f3 = PointFunction::new(g3, vec![0.0, 1.0, 0.0]).unwrap();
        let v2 = p_variation(2.0, &Fca::inf(g3), &f3, &sys3, &rel3).unwrap();
        assert!((v2 - 2.0).abs() < TOL);
    }

    #[test]
    fn cs_monotone_in_f_for_monotone_l() {
        // L₂–L₄ with nondecreasing sections: f ≤ g ⇒ CS(f) ≤ CS(g)
        let g3 = g(3);
        let inf = Fca::inf(g3);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for l in [
            LFunction::L2 { op: BinaryOp::Min },
            LFunction::L3 { op: BinaryOp::Prod },
            LFunction::L4 { op: BinaryOp::Prod },
        ] {
            let cfg = CsConfig::new(
                DecompositionSystem::Chain,
                RelationKind::RPlus,
                l,
                inf.clone(),
                inf.clone(),
            )
            .unwrap();
            for _ in 0..100 {
                let f = crate::setfn::random_function_with(g3, 1.0, &mut rng);
                let gfun = PointFunction::new(
                    g3,
                    f.values().iter().map(|v| v + 0.2).collect(),
                )
                .unwrap();
                let mu = random_measure_with_rng(g3, &mut rng);
                let a = cs_operator(&cfg, &f, &mu, &mu.as_signed()).unwrap().value;
                let b = cs_operator(&cfg, &gfun, &mu, &mu.as_signed()).unwrap().value;
                assert!(a <= b + TOL, "{:?}", cfg.l);
            }
        }
    }

    #[test]
    fn prod_family_available_via_make_fca() {
        let g2 = g(2);
        let prod = make_fca(AggKind::Prod, g2).unwrap();
        let f = PointFunction::new(g2, vec![0.5, 1.0]).unwrap();
        assert_eq!(prod.eval_raw(&f, 0b11), 0.5);
    }
}
