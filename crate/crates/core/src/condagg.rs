//! Conditional aggregation operators `A(·|D)` and their families.
//!
//! A family assigns one aggregation evaluator to every conditional set `D`,
//! with the convention `A(·|∅) = 0`. The axioms are monotonicity on the
//! conditional set (C1) and `A(1_{D^c}|D) = 0` (C2); they imply that only
//! the values of `f` inside `D` matter.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::setfn::{card, GroundSet, Mask, PointFunction};
use crate::{Error, Result, TOL};

/// Evaluator shape of a built-in or composed family member.
#[derive(Clone)]
pub enum AggKind {
    /// `inf_{i∈D} f(i)`
    Inf,
    /// `sup_{i∈D} f(i)`
    Sup,
    /// `Π_{i∈D} f(i)`
    Prod,
    /// `Σ_{i∈D} f(i)`
    Sum,
    /// arithmetic mean over `D`
    Mean,
    /// `(Σ_{i∈D} f(i)^p)^{1/p}`, `p ≥ 1`
    PNorm(f64),
    /// `min(1, Σ_{i∈D} f(i))`
    Lukasiewicz,
    /// `α · inner`, for building non-idempotent specimens
    Scale { alpha: f64, inner: Box<AggKind> },
    /// opaque evaluator (tests and the JSON composition grammar)
    Custom(CustomAgg),
}

/// User-supplied evaluator with a label.
#[derive(Clone)]
pub struct CustomAgg {
    pub label: String,
    pub eval: Arc<dyn Fn(&PointFunction, Mask) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for AggKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&label_of(self))
    }
}

fn label_of(kind: &AggKind) -> String {
    match kind {
        AggKind::Inf => "inf".into(),
        AggKind::Sup => "sup".into(),
        AggKind::Prod => "prod".into(),
        AggKind::Sum => "sum".into(),
        AggKind::Mean => "mean".into(),
        AggKind::PNorm(p) => format!("pnorm({p})"),
        AggKind::Lukasiewicz => "lukasiewicz".into(),
        AggKind::Scale { alpha, inner } => format!("scale({alpha},{})", label_of(inner)),
        AggKind::Custom(c) => c.label.clone(),
    }
}

fn eval_kind(kind: &AggKind, f: &PointFunction, d: Mask) -> f64 {
    let g = f.ground();
    match kind {
        AggKind::Inf => f.min_on(d),
        AggKind::Sup => f.max_on(d),
        AggKind::Prod => g.points(d).map(|i| f.value(i)).product(),
        AggKind::Sum => g.points(d).map(|i| f.value(i)).sum(),
        AggKind::Mean => {
            let k = card(d);
            g.points(d).map(|i| f.value(i)).sum::<f64>() / k as f64
        }
        AggKind::PNorm(p) => g
            .points(d)
            .map(|i| f.value(i).powf(*p))
            .sum::<f64>()
            .powf(1.0 / *p),
        AggKind::Lukasiewicz => 1f64.min(g.points(d).map(|i| f.value(i)).sum()),
        AggKind::Scale { alpha, inner } => alpha * eval_kind(inner, f, d),
        AggKind::Custom(c) => (c.eval)(f, d),
    }
}

/// A family of conditional aggregation operators: one evaluator per
/// conditional set, zero on the empty set.
#[derive(Clone, Debug)]
pub struct Fca {
    ground: GroundSet,
    kind: AggKind,
}

/// Builds one of the built-in families.
pub fn make_fca(kind: AggKind, ground: GroundSet) -> Result<Fca> {
    if let AggKind::PNorm(p) = kind {
        if p < 1.0 {
            return Err(Error::InvalidParameter(format!("pnorm requires p ≥ 1, got {p}")));
        }
    }
    Ok(Fca { ground, kind })
}

impl Fca {
    pub fn inf(ground: GroundSet) -> Fca {
        Fca { ground, kind: AggKind::Inf }
    }

    pub fn sup(ground: GroundSet) -> Fca {
        Fca { ground, kind: AggKind::Sup }
    }

    pub fn prod(ground: GroundSet) -> Fca {
        Fca { ground, kind: AggKind::Prod }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn kind(&self) -> &AggKind {
        &self.kind
    }

    pub fn label(&self) -> String {
        label_of(&self.kind)
    }

    /// Evaluates `A(f|D)`; 0 when `D = ∅`. Errors on ground-set mismatch.
    pub fn eval(&self, f: &PointFunction, d: Mask) -> Result<f64> {
        if f.ground() != self.ground {
            return Err(Error::GroundMismatch(self.ground.n(), f.ground().n()));
        }
        Ok(self.eval_raw(f, d))
    }

    /// Evaluation on a pre-checked ground set.
    pub fn eval_raw(&self, f: &PointFunction, d: Mask) -> f64 {
        debug_assert_eq!(f.ground(), self.ground);
        if d == 0 {
            return 0.0;
        }
        eval_kind(&self.kind, f, d)
    }
}

/// Outcome of the (C1)/(C2) axiom probe.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub trials: usize,
    /// conditional set and probe data of the first violation
    pub witness: Option<AxiomWitness>,
}

#[derive(Clone, Debug)]
pub struct AxiomWitness {
    pub axiom: &'static str,
    pub d: Mask,
    pub f: Vec<f64>,
    pub g: Option<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Randomized probe of (C1) and exact check of (C2) on every `D`.
///
/// (C1) is sampled: `trials` random pairs `f ≤ g` (pointwise on `D`) per
/// conditional set. (C2) is exact: `f = 1_{D^c}` for every `D`.
pub fn check_condagg_axioms(a: &Fca, trials: usize, seed: u64) -> AxiomReport {
    let g = a.ground();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport {
        c1_ok: true,
        c2_ok: true,
        trials,
        witness: None,
    };

    // (C2), exact on every nonempty D
    for d in g.nonempty_subsets() {
        let ind = indicator(g, g.complement(d));
        let v = a.eval_raw(&ind, d);
        if v.abs() > TOL {
            report.c2_ok = false;
            report.witness.get_or_insert(AxiomWitness {
                axiom: "C2",
                d,
                f: ind.values().to_vec(),
                g: None,
                lhs: v,
                rhs: 0.0,
            });
        }
    }

    // (C1), randomized: f ≤ h pointwise on D
    'outer: for _ in 0..trials {
        for d in g.nonempty_subsets() {
            let f = crate::setfn::random_function_with(g, 1.0, &mut rng);
            let mut hv = f.values().to_vec();
            for i in g.points(d) {
                hv[i - 1] += rng.gen_range(0.0..1.0 - hv[i - 1]);
            }
            // outside D the larger function may be anything
            for i in g.points(g.complement(d)) {
                hv[i - 1] = rng.gen_range(0.0..1.0);
            }
            let h = PointFunction::new(g, hv).unwrap();
            let va = a.eval_raw(&f, d);
            let vb = a.eval_raw(&h, d);
            if va > vb + TOL {
                report.c1_ok = false;
                report.witness.get_or_insert(AxiomWitness {
                    axiom: "C1",
                    d,
                    f: f.values().to_vec(),
                    g: Some(h.values().to_vec()),
                    lhs: va,
                    rhs: vb,
                });
                break 'outer;
            }
        }
    }
    report
}

fn indicator(g: GroundSet, d: Mask) -> PointFunction {
    let values = (1..=g.n())
        .map(|i| if d >> (i - 1) & 1 == 1 { 1.0 } else { 0.0 })
        .collect();
    PointFunction::new(g, values).unwrap()
}

/// Structural properties checkable on a family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FcaProperty {
    /// `A(f|D) ≤ A^inf(f|D)`
    Conjunctive,
    /// `A(αf|D) = α A(f|D)`
    Homogeneous,
    /// `A(f+g|D) ≤ A(f|D) + A(g|D)`
    Subadditive,
    /// `A(b·1_X|D) = b` for every `D ≠ ∅`
    Idempotent,
    /// `A(f|{i}) = f(i)`
    InteractionI1,
    /// `A(f|D) ≥ A(f|E)` for `D ⊆ E`
    InteractionI3,
}

/// Result of a property probe with the first failing witness.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub property: FcaProperty,
    pub holds: bool,
    pub trials: usize,
    pub witness: Option<PropertyWitness>,
}

#[derive(Clone, Debug)]
pub struct PropertyWitness {
    pub d: Mask,
    pub e: Option<Mask>,
    pub f: Vec<f64>,
    pub aux: Option<Vec<f64>>,
    pub scalar: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Randomized property probe; probe functions are drawn from `[0,1)^n`
/// (the `bF¹` class) so that e.g. the product family is conjunctive on its
/// intended domain.
pub fn check_fca_property(a: &Fca, property: FcaProperty, trials: usize, seed: u64) -> PropertyReport {
    let g = a.ground();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport {
        property,
        holds: true,
        trials,
        witness: None,
    };
    let fail = |w: PropertyWitness, report: &mut PropertyReport| {
        report.holds = false;
        report.witness.get_or_insert(w);
    };

    for _ in 0..trials {
        let f = crate::setfn::random_function_with(g, 1.0, &mut rng);
        match property {
            FcaProperty::Conjunctive => {
                for d in g.nonempty_subsets() {
                    let v = a.eval_raw(&f, d);
                    let lo = f.min_on(d);
                    if v > lo + TOL {
                        fail(
                            PropertyWitness {
                                d,
                                e: None,
                                f: f.values().to_vec(),
                                aux: None,
                                scalar: None,
                                lhs: v,
                                rhs: lo,
                            },
                            &mut report,
                        );
                        return report;
                    }
                }
            }
            FcaProperty::Homogeneous => {
                let alpha = rng.gen_range(0.0..2.0);
                let scaled = PointFunction::new(
                    g,
                    f.values().iter().map(|v| alpha * v).collect(),
                )
                .unwrap();
                for d in g.nonempty_subsets() {
                    let lhs = a.eval_raw(&scaled, d);
                    let rhs = alpha * a.eval_raw(&f, d);
                    if (lhs - rhs).abs() > TOL {
                        fail(
                            PropertyWitness {
                                d,
                                e: None,
                                f: f.values().to_vec(),
                                aux: None,
                                scalar: Some(alpha),
                                lhs,
                                rhs,
                            },
                            &mut report,
                        );
                        return report;
                    }
                }
            }
            FcaProperty::Subadditive => {
                let h = crate::setfn::random_function_with(g, 1.0, &mut rng);
                let sum = PointFunction::new(
                    g,
                    f.values().iter().zip(h.values()).map(|(x, y)| x + y).collect(),
                )
                .unwrap();
                for d in g.nonempty_subsets() {
                    let lhs = a.eval_raw(&sum, d);
                    let rhs = a.eval_raw(&f, d) + a.eval_raw(&h, d);
                    if lhs > rhs + TOL {
                        fail(
                            PropertyWitness {
                                d,
                                e: None,
                                f: f.values().to_vec(),
                                aux: Some(h.values().to_vec()),
                                scalar: None,
                                lhs,
                                rhs,
                            },
                            &mut report,
                        );
                        return report;
                    }
                }
            }
            FcaProperty::Idempotent => {
                let b = rng.gen_range(0.0..1.0);
                let cst = PointFunction::constant(g, b).unwrap();
                for d in g.nonempty_subsets() {
                    let v = a.eval_raw(&cst, d);
                    if (v - b).abs() > TOL {
                        fail(
                            PropertyWitness {
                                d,
                                e: None,
                                f: cst.values().to_vec(),
                                aux: None,
                                scalar: Some(b),
                                lhs: v,
                                rhs: b,
                            },
                            &mut report,
                        );
                        return report;
                    }
                }
            }
            FcaProperty::InteractionI1 => {
                for i in 1..=g.n() {
                    let d: Mask = 1 << (i - 1);
                    let v = a.eval_raw(&f, d);
                    if (v - f.value(i)).abs() > TOL {
                        fail(
                            PropertyWitness {
                                d,
                                e: None,
                                f: f.values().to_vec(),
                                aux: None,
                                scalar: None,
                                lhs: v,
                                rhs: f.value(i),
                            },
                            &mut report,
                        );
                        return report;
                    }
                }
            }
            FcaProperty::InteractionI3 => {
                for d in g.nonempty_subsets() {
                    for e in g.nonempty_subsets() {
                        if d & e == d && a.eval_raw(&f, d) + TOL < a.eval_raw(&f, e) {
                            fail(
                                PropertyWitness {
                                    d,
                                    e: Some(e),
                                    f: f.values().to_vec(),
                                    aux: None,
                                    scalar: None,
                                    lhs: a.eval_raw(&f, d),
                                    rhs: a.eval_raw(&f, e),
                                },
                                &mut report,
                            );
                            return report;
                        }
                    }
                }
            }
        }
    }
    report
}
