//! The four discrete Choquet forms and the ordered-sum Choquet-like
//! family: fC, reverse Choquet, d-Choquet, the (F₁,F₂) operator, the
//! direct F-decomposition integral and the inclusion-exclusion operator,
//! together with their level-set variants.

use nalgebra::DMatrix;

use crate::condagg::{check_fca_property, Fca, FcaProperty};
use crate::csop::{BinaryOp, Dissimilarity};
use crate::decomp::{expand_system, Collection, DecompositionSystem};
use crate::setfn::{mobius_transform, Mask, MonotoneMeasure, PointFunction};
use crate::{Error, Result, TOL};

/// Handling of the ascending permutation when values tie.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PermutationPolicy {
    /// stable ascending sort with index tie-break
    Canonical,
    /// every permutation compatible with ascending values
    All,
}

/// Value of an ordered-sum operator; under [`PermutationPolicy::All`] the
/// range over admissible permutations and a well-definedness flag.
#[derive(Clone, Copy, Debug)]
pub struct OrderedReport {
    /// the canonical-permutation value
    pub value: f64,
    pub min: f64,
    pub max: f64,
    pub well_defined: bool,
}

/// All permutations `(·)` with `f_(1) ≤ … ≤ f_(n)`: the canonical order
/// with every rearrangement inside tie groups.
pub fn admissible_permutations(f: &PointFunction) -> Vec<Vec<usize>> {
    let canon = f.ascending_permutation();
    let n = canon.len();
    // tie groups as index ranges of the canonical order
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || f.value(canon[i]) != f.value(canon[i - 1]) {
            groups.push((start, i));
            start = i;
        }
    }
    let mut out = vec![canon.clone()];
    for &(lo, hi) in &groups {
        if hi - lo < 2 {
            continue;
        }
        let perms = permutations(&canon[lo..hi]);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for base in &out {
            for p in &perms {
                let mut q = base.clone();
                q[lo..hi].copy_from_slice(p);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Evaluates an ordered-sum operator under a permutation policy.
fn ordered_report(
    f: &PointFunction,
    policy: PermutationPolicy,
    eval: impl Fn(&[usize]) -> f64,
) -> OrderedReport {
    let canon = f.ascending_permutation();
    let value = eval(&canon);
    match policy {
        PermutationPolicy::Canonical => OrderedReport {
            value,
            min: value,
            max: value,
            well_defined: true,
        },
        PermutationPolicy::All => {
            let (mut min, mut max) = (value, value);
            for p in admissible_permutations(f) {
                let v = eval(&p);
                min = min.min(v);
                max = max.max(v);
            }
            OrderedReport {
                value,
                min,
                max,
                well_defined: max - min <= TOL,
            }
        }
    }
}

/// Upper sets `B_(i) = {(i), …, (n)}` of a permutation, index 0 ↦ B_(1).
fn upper_sets(perm: &[usize], full: Mask) -> Vec<Mask> {
    let mut out = Vec::with_capacity(perm.len());
    let mut m = full;
    for &p in perm {
        out.push(m);
        m &= !(1 << (p - 1));
    }
    out
}

/// The four equivalent forms of the discrete Choquet integral.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChoquetForm {
    /// `Σ f_(i) (μ(B_(i)) − μ(B_(i+1)))`
    Standard,
    /// `Σ (f_(i) − f_(i−1)) μ(B_(i))`
    Increments,
    /// `Σ (f_(i) μ(B_(i)) − f_(i−1) μ(B_(i)))`
    Telescoping,
    /// `Σ_D Mob(D) min_D f`
    Mobius,
}

impl ChoquetForm {
    pub fn from_index(i: u8) -> Result<ChoquetForm> {
        match i {
            1 => Ok(ChoquetForm::Standard),
            2 => Ok(ChoquetForm::Increments),
            3 => Ok(ChoquetForm::Telescoping),
            4 => Ok(ChoquetForm::Mobius),
            _ => Err(Error::InvalidParameter(format!("choquet form {i}"))),
        }
    }

    pub fn index(&self) -> u8 {
        match self {
            ChoquetForm::Standard => 1,
            ChoquetForm::Increments => 2,
            ChoquetForm::Telescoping => 3,
            ChoquetForm::Mobius => 4,
        }
    }
}

/// The discrete Choquet integral of `f` w.r.t. `μ`.
pub fn choquet(f: &PointFunction, mu: &MonotoneMeasure, form: ChoquetForm) -> Result<f64> {
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let perm = f.ascending_permutation();
    let n = g.n();
    let b = upper_sets(&perm, g.full_mask());
    let val = |i: usize| f.value(perm[i]); // f_(i+1)
    Ok(match form {
        ChoquetForm::Standard => (0..n)
            .map(|i| {
                let next = if i + 1 < n { mu.value(b[i + 1]) } else { 0.0 };
                val(i) * (mu.value(b[i]) - next)
            })
            .sum(),
        ChoquetForm::Increments => (0..n)
            .map(|i| {
                let prev = if i > 0 { val(i - 1) } else { 0.0 };
                (val(i) - prev) * mu.value(b[i])
            })
            .sum(),
        ChoquetForm::Telescoping => (0..n)
            .map(|i| {
                let prev = if i > 0 { val(i - 1) } else { 0.0 };
                val(i) * mu.value(b[i]) - prev * mu.value(b[i])
            })
            .sum(),
        ChoquetForm::Mobius => {
            let mob = mobius_transform(mu);
            g.nonempty_subsets()
                .map(|d| mob.value(d) * f.min_on(d))
                .sum()
        }
    })
}

fn require_dominates(mu: &MonotoneMeasure, muhat: &MonotoneMeasure) -> Result<()> {
    if mu.ground() != muhat.ground() {
        return Err(Error::GroundMismatch(mu.ground().n(), muhat.ground().n()));
    }
    if !mu.dominates(muhat) {
        return Err(Error::Precondition("fC/RC require μ ≥ μ̂".into()));
    }
    Ok(())
}

/// `Σ f_(i) ∘ (μ(B_(i)) − μ̂(B_(i+1)))` with `B_(n+1) = ∅`.
pub fn fc_operator(
    op: &BinaryOp,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    muhat: &MonotoneMeasure,
    policy: PermutationPolicy,
) -> Result<OrderedReport> {
    require_dominates(mu, muhat)?;
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let n = g.n();
    Ok(ordered_report(f, policy, |perm| {
        let b = upper_sets(perm, g.full_mask());
        (0..n)
            .map(|i| {
                let next = if i + 1 < n { muhat.value(b[i + 1]) } else { 0.0 };
                op.apply(f.value(perm[i]), mu.value(b[i]) - next)
            })
            .sum()
    }))
}

/// Level-set form of fC with `μ = μ̂`:
/// `Σ f_(i) ∘ (μ({f ≥ f_(i)}) − μ({f ≥ f_(i+1)}))`.
pub fn fc_levelset(op: &BinaryOp, f: &PointFunction, mu: &MonotoneMeasure) -> Result<f64> {
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let perm = f.ascending_permutation();
    let n = g.n();
    Ok((0..n)
        .map(|i| {
            let cur = mu.value(f.level_set(f.value(perm[i])));
            let next = if i + 1 < n {
                mu.value(f.level_set(f.value(perm[i + 1])))
            } else {
                0.0
            };
            op.apply(f.value(perm[i]), cur - next)
        })
        .sum())
}

/// `Σ f_(i) ∘ (μ(C_(i)) − μ̂(C_(i−1)))` with `C_(i) = {(1), …, (i)}`,
/// `C_(0) = ∅`.
pub fn rc_operator(
    op: &BinaryOp,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    muhat: &MonotoneMeasure,
    policy: PermutationPolicy,
) -> Result<OrderedReport> {
    require_dominates(mu, muhat)?;
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let n = g.n();
    Ok(ordered_report(f, policy, |perm| {
        let mut c: Mask = 0;
        let mut total = 0.0;
        for i in 0..n {
            let prev = muhat.value(c);
            c |= 1 << (perm[i] - 1);
            total += op.apply(f.value(perm[i]), mu.value(c) - prev);
        }
        total
    }))
}

/// Evaluation modes of the d-Choquet operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DChoquetMode {
    /// `Σ δ(f_(i), f_(i−1)) ∘ μ(B_(i))` with `f_(0) = 0`
    Ordered,
    /// `Σ δ(f_(i), f_(i−1)) ∘ μ({f ≥ f_(i)})`; faithful only when `0∘a = 0`
    Levelset,
}

/// The d-Choquet operator.
pub fn d_choquet(
    delta: &Dissimilarity,
    op: &BinaryOp,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    policy: PermutationPolicy,
    mode: DChoquetMode,
) -> Result<OrderedReport> {
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let n = g.n();
    Ok(ordered_report(f, policy, |perm| {
        let b = upper_sets(perm, g.full_mask());
        (0..n)
            .map(|i| {
                let prev = if i > 0 { f.value(perm[i - 1]) } else { 0.0 };
                let d = delta.apply(f.value(perm[i]), prev);
                let weight = match mode {
                    DChoquetMode::Ordered => mu.value(b[i]),
                    DChoquetMode::Levelset => mu.value(f.level_set(f.value(perm[i]))),
                };
                op.apply(d, weight)
            })
            .sum()
    }))
}

/// Pair `F₁ ≥ F₂` for the (F₁,F₂)-operator; the inequality is validated
/// on a 101×101 grid of the unit square.
#[derive(Clone, Debug)]
pub struct FPair {
    f1: BinaryOp,
    f2: BinaryOp,
}

impl FPair {
    pub fn new(f1: BinaryOp, f2: BinaryOp) -> Result<FPair> {
        for i in 0..=100 {
            for j in 0..=100 {
                let (a, b) = (i as f64 / 100.0, j as f64 / 100.0);
                if f1.apply(a, b) < f2.apply(a, b) - TOL {
                    return Err(Error::Validation(format!(
                        "FPair requires F1 ≥ F2; fails at ({a},{b}): {} < {}",
                        f1.apply(a, b),
                        f2.apply(a, b)
                    )));
                }
            }
        }
        Ok(FPair { f1, f2 })
    }

    /// `F₁ = F₂ = C` for a copula, the CC-integral case.
    pub fn copula(c: BinaryOp) -> Result<FPair> {
        FPair::new(c.clone(), c)
    }

    pub fn f1(&self) -> &BinaryOp {
        &self.f1
    }

    pub fn f2(&self) -> &BinaryOp {
        &self.f2
    }
}

/// Evaluation modes of the (F₁,F₂)-operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CffMode {
    /// `Σ (F₁(f_(i), μ(B_(i))) − F₂(f_(i−1), μ(B_(i))))`
    Ordered,
    /// `Σ (F₁(f_(i), μ({f ≥ f_(i)})) − F₂(f_(i−1), μ({f ≥ f_(i)})))`
    Levelset,
    /// ordered value clamped by `min(1, ·)`
    Clamp,
}

/// The (F₁,F₂)-operator; with `F₁ = F₂ = C` a copula this is the
/// CC-integral.
pub fn cff_operator(
    pair: &FPair,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    policy: PermutationPolicy,
    mode: CffMode,
) -> Result<OrderedReport> {
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let n = g.n();
    let mut rep = ordered_report(f, policy, |perm| {
        let b = upper_sets(perm, g.full_mask());
        (0..n)
            .map(|i| {
                let prev = if i > 0 { f.value(perm[i - 1]) } else { 0.0 };
                let weight = match mode {
                    CffMode::Ordered | CffMode::Clamp => mu.value(b[i]),
                    CffMode::Levelset => mu.value(f.level_set(f.value(perm[i]))),
                };
                pair.f1.apply(f.value(perm[i]), weight) - pair.f2.apply(prev, weight)
            })
            .sum()
    });
    if mode == CffMode::Clamp {
        rep.value = rep.value.min(1.0);
        rep.min = rep.min.min(1.0);
        rep.max = rep.max.min(1.0);
        rep.well_defined = rep.max - rep.min <= TOL;
    }
    Ok(rep)
}

/// Maximization method for the direct F-decomposition integral.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum DecompositionMethod {
    /// optimal `a_D = min_D f` per block; requires partitions and a
    /// nondecreasing `F`
    PartitionExact,
    /// exact LP vertex enumeration; requires `F(a,b) = a·b`
    LpVertex,
    /// lower bound on a uniform grid with the given step
    Grid(f64),
}

const MAX_LP_BLOCKS: usize = 6;

/// `sup { Σ_D F(a_D, μ(D)) : a ≥ 0, Σ_D a_D 1_D ≤ f }`, sup over the
/// collections of the system.
pub fn f_decomposition_direct(
    f_op: &BinaryOp,
    sys: &DecompositionSystem,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    method: DecompositionMethod,
) -> Result<f64> {
    let g = mu.ground();
    if f.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    let collections = expand_system(sys, g)?;
    if collections.is_empty() {
        return Err(Error::Precondition("empty decomposition system".into()));
    }
    let mut best = f64::NEG_INFINITY;
    for coll in &collections {
        let v = match method {
            DecompositionMethod::PartitionExact => {
                if !coll.is_partition() {
                    return Err(Error::Precondition(
                        "partition-exact method needs partition collections".into(),
                    ));
                }
                coll.members()
                    .iter()
                    .map(|&d| f_op.apply(f.min_on(d), mu.value(d)))
                    .sum()
            }
            DecompositionMethod::LpVertex => {
                if !matches!(f_op, BinaryOp::Prod) {
                    return Err(Error::Precondition(
                        "lp-vertex method needs F(a,b) = a·b".into(),
                    ));
                }
                lp_vertex_max(coll, f, mu)?
            }
            DecompositionMethod::Grid(step) => grid_max(f_op, coll, f, mu, step)?,
        };
        best = best.max(v);
    }
    Ok(best)
}

/// Exact maximum of `Σ μ(D) a_D` over `{a ≥ 0 : Σ a_D 1_D ≤ f}` by
/// enumerating basic feasible points.
fn lp_vertex_max(coll: &Collection, f: &PointFunction, mu: &MonotoneMeasure) -> Result<f64> {
    let g = coll.ground();
    let n = g.n();
    let m = coll.len();
    if m > MAX_LP_BLOCKS {
        return Err(Error::Capacity(format!(
            "lp-vertex supports ≤ {MAX_LP_BLOCKS} blocks, got {m}"
        )));
    }
    // constraint rows: n incidence rows (Σ_{D∋i} a_D ≤ f(i)) then m
    // nonnegativity rows (−a_D ≤ 0)
    let rows = n + m;
    let row = |r: usize, c: usize| -> f64 {
        if r < n {
            if coll.members()[c] >> r & 1 == 1 {
                1.0
            } else {
                0.0
            }
        } else if r - n == c {
            -1.0
        } else {
            0.0
        }
    };
    let rhs = |r: usize| -> f64 { if r < n { f.value(r + 1) } else { 0.0 } };
    let mut best = 0.0f64; // a = 0 is always feasible
    let mut chosen = vec![0usize; m];
    enumerate_combinations(rows, m, &mut chosen, 0, 0, &mut |active: &[usize]| {
        let a_mat = DMatrix::from_fn(m, m, |i, j| row(active[i], j));
        let b_vec = nalgebra::DVector::from_fn(m, |i, _| rhs(active[i]));
        if let Some(sol) = a_mat.lu().solve(&b_vec) {
            // feasibility of every constraint
            for r in 0..rows {
                let lhs: f64 = (0..m).map(|c| row(r, c) * sol[c]).sum();
                if lhs > rhs(r) + 1e-9 {
                    return;
                }
            }
            let obj: f64 = (0..m).map(|c| mu.value(coll.members()[c]) * sol[c]).sum();
            best = best.max(obj);
        }
    });
    Ok(best)
}

fn enumerate_combinations(
    total: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(buf);
        return;
    }
    for i in start..total {
        buf[depth] = i;
        enumerate_combinations(total, k, buf, depth + 1, i + 1, visit);
    }
}

const MAX_GRID_POINTS: usize = 2_000_000;

fn grid_max(
    f_op: &BinaryOp,
    coll: &Collection,
    f: &PointFunction,
    mu: &MonotoneMeasure,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("grid step {step}")));
    }
    let g = coll.ground();
    let m = coll.len();
    let fmax = f.values().iter().cloned().fold(0.0f64, f64::max);
    let levels = (fmax / step).floor() as usize + 1;
    if levels.pow(m as u32) > MAX_GRID_POINTS {
        return Err(Error::Capacity(format!(
            "grid search of {levels}^{m} points exceeds {MAX_GRID_POINTS}"
        )));
    }
    let mut idx = vec![0usize; m];
    let mut best = f64::NEG_INFINITY;
    loop {
        let a: Vec<f64> = idx.iter().map(|&k| k as f64 * step).collect();
        let feasible = (1..=g.n()).all(|i| {
            let s: f64 = (0..m)
                .filter(|&c| coll.members()[c] >> (i - 1) & 1 == 1)
                .map(|c| a[c])
                .sum();
            s <= f.value(i) + TOL
        });
        if feasible {
            let v: f64 = (0..m)
                .map(|c| f_op.apply(a[c], mu.value(coll.members()[c])))
                .sum();
            best = best.max(v);
        }
        // odometer increment
        let mut d = 0;
        loop {
            if d == m {
                return Ok(best);
            }
            idx[d] += 1;
            if idx[d] < levels {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

const IE_GATE_TRIALS: usize = 200;
const IE_GATE_SEED: u64 = 0x1e_5eed;

/// Discrete inclusion-exclusion operator
/// `Σ_{D ≠ ∅} I(f, D) ∘ Mob(D)`; the interaction operator must be
/// conjunctive and satisfy (I1), (I3).
pub fn ie_operator(
    op: &BinaryOp,
    interaction: &Fca,
    f: &PointFunction,
    mu: &MonotoneMeasure,
) -> Result<f64> {
    let g = mu.ground();
    if f.ground() != g || interaction.ground() != g {
        return Err(Error::GroundMismatch(g.n(), f.ground().n()));
    }
    for prop in [
        FcaProperty::Conjunctive,
        FcaProperty::InteractionI1,
        FcaProperty::InteractionI3,
    ] {
        let rep = check_fca_property(interaction, prop, IE_GATE_TRIALS, IE_GATE_SEED);
        if !rep.holds {
            return Err(Error::Precondition(format!(
                "interaction operator fails {prop:?}: witness {:?}",
                rep.witness
            )));
        }
    }
    let mob = mobius_transform(mu);
    Ok(g
        .nonempty_subsets()
        .map(|d| op.apply(interaction.eval_raw(f, d), mob.value(d)))
        .sum())
}
