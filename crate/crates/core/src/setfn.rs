//! Ground sets, set functions, monotone measures, Möbius/zeta transforms,
//! duals and seeded samplers.
//!
//! Points of a ground set of size `n` are `1..=n`. A subset is encoded as a
//! bitmask where point `i` occupies bit `i-1`, so subsets range over
//! `0..2^n` and the empty set is mask `0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, TOL};

/// Canonical subset encoding.
pub type Mask = u32;

/// Maximum supported ground set size (set-function storage is `2^n`).
pub const MAX_GROUND: usize = 12;

/// A finite ground set `[n] = {1, ..., n}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidGroundSize(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask of the full set `X`.
    pub fn full_mask(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    pub fn num_subsets(&self) -> usize {
        1usize << self.n
    }

    /// All subsets in canonical (ascending mask) order.
    pub fn subsets(&self) -> impl Iterator<Item = Mask> {
        0..(self.num_subsets() as Mask)
    }

    /// All nonempty subsets in canonical order.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Mask> {
        1..(self.num_subsets() as Mask)
    }

    pub fn complement(&self, m: Mask) -> Mask {
        self.full_mask() & !m
    }

    pub fn contains_mask(&self, m: Mask) -> bool {
        m <= self.full_mask()
    }

    /// Points of a subset in increasing order (1-based).
    pub fn points(&self, m: Mask) -> impl Iterator<Item = usize> {
        let n = self.n;
        (1..=n).filter(move |i| m >> (i - 1) & 1 == 1)
    }

    /// `"{1,3}"`-style rendering; the empty set prints as `"{}"`.
    pub fn format_subset(&self, m: Mask) -> String {
        let parts: Vec<String> = self.points(m).map(|i| i.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Parses `"{1,3}"`-style subset notation.
    pub fn parse_subset(&self, s: &str) -> Result<Mask> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Malformed(format!("subset `{s}` is not brace-delimited")))?;
        let mut mask: Mask = 0;
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let i: usize = part
                .parse()
                .map_err(|_| Error::Malformed(format!("bad point `{part}` in subset `{s}`")))?;
            if i == 0 || i > self.n {
                return Err(Error::Malformed(format!(
                    "point {i} out of range 1..={} in subset `{s}`",
                    self.n
                )));
            }
            mask |= 1 << (i - 1);
        }
        Ok(mask)
    }
}

/// Cardinality of a subset mask.
pub fn card(m: Mask) -> usize {
    m.count_ones() as usize
}

/// A signed set function with `value(∅) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedSetFunction {
    ground: GroundSet,
    values: Vec<f64>,
}

impl SignedSetFunction {
    /// Builds from a full table indexed by mask; `values[0]` must be 0 and
    /// all entries finite.
    pub fn new(ground: GroundSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != ground.num_subsets() {
            return Err(Error::Malformed(format!(
                "expected {} subset values, got {}",
                ground.num_subsets(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Malformed("non-finite set function value".into()));
        }
        if values[0].abs() > TOL {
            return Err(Error::Malformed(format!(
                "value(∅) = {} must be 0",
                values[0]
            )));
        }
        let mut values = values;
        values[0] = 0.0;
        Ok(SignedSetFunction { ground, values })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn value(&self, m: Mask) -> f64 {
        self.values[m as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A monotone (nonadditive) measure: grounded, nondecreasing, nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneMeasure {
    ground: GroundSet,
    values: Vec<f64>,
}

impl MonotoneMeasure {
    /// Validating constructor; rejects non-monotone tables.
    pub fn new(ground: GroundSet, values: Vec<f64>) -> Result<Self> {
        let raw = SignedSetFunction::new(ground, values)?;
        let report = validate_measure(&raw, MeasureClass::Monotone);
        if !report.pass {
            return Err(Error::Validation(report.describe(&ground)));
        }
        Ok(MonotoneMeasure {
            ground,
            values: raw.values,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn value(&self, m: Mask) -> f64 {
        self.values[m as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total(&self) -> f64 {
        self.values[self.ground.full_mask() as usize]
    }

    pub fn is_capacity(&self) -> bool {
        (self.total() - 1.0).abs() <= TOL
    }

    pub fn as_signed(&self) -> SignedSetFunction {
        SignedSetFunction {
            ground: self.ground,
            values: self.values.clone(),
        }
    }

    /// `μ(D) ≥ ν(D)` for every subset, up to tolerance.
    pub fn dominates(&self, other: &MonotoneMeasure) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| *a >= *b - TOL)
    }
}

/// Measure classes accepted by [`validate_measure`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MeasureClass {
    Signed,
    Monotone,
    Capacity,
    Symmetric,
}

/// First violated constraint found during validation.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Grounding { value: f64 },
    Negative { subset: Mask, value: f64 },
    Monotonicity { sub: Mask, sup: Mask, lo: f64, hi: f64 },
    Normalization { total: f64 },
    Symmetry { a: Mask, b: Mask, va: f64, vb: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub pass: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    fn fail(v: Violation) -> Self {
        ValidationReport {
            pass: false,
            violation: Some(v),
        }
    }

    fn ok() -> Self {
        ValidationReport {
            pass: true,
            violation: None,
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        match &self.violation {
            None => "pass".into(),
            Some(Violation::Grounding { value }) => format!("value(∅) = {value} ≠ 0"),
            Some(Violation::Negative { subset, value }) => {
                format!("value({}) = {value} < 0", ground.format_subset(*subset))
            }
            Some(Violation::Monotonicity { sub, sup, lo, hi }) => format!(
                "monotonicity fails at ({}, {}): {lo} > {hi}",
                ground.format_subset(*sub),
                ground.format_subset(*sup)
            ),
            Some(Violation::Normalization { total }) => format!("value(X) = {total} ≠ 1"),
            Some(Violation::Symmetry { a, b, va, vb }) => format!(
                "symmetry fails at ({}, {}): {va} ≠ {vb}",
                ground.format_subset(*a),
                ground.format_subset(*b)
            ),
        }
    }
}

/// Checks a set-function table against a measure class; reports the first
/// violated pair.
///
/// Monotonicity is checked over all covering pairs `D ⊂ D ∪ {i}`, which is
/// equivalent to checking all comparable pairs.
pub fn validate_measure(m: &SignedSetFunction, class: MeasureClass) -> ValidationReport {
    let g = m.ground;
    if m.value(0).abs() > TOL {
        return ValidationReport::fail(Violation::Grounding { value: m.value(0) });
    }
    if class == MeasureClass::Signed {
        return ValidationReport::ok();
    }
    for d in g.nonempty_subsets() {
        if m.value(d) < -TOL {
            return ValidationReport::fail(Violation::Negative {
                subset: d,
                value: m.value(d),
            });
        }
    }
    for d in g.nonempty_subsets() {
        for i in g.points(d) {
            let sub = d & !(1 << (i - 1));
            if m.value(sub) > m.value(d) + TOL {
                return ValidationReport::fail(Violation::Monotonicity {
                    sub,
                    sup: d,
                    lo: m.value(sub),
                    hi: m.value(d),
                });
            }
        }
    }
    if class == MeasureClass::Capacity {
        let total = m.value(g.full_mask());
        if (total - 1.0).abs() > TOL {
            return ValidationReport::fail(Violation::Normalization { total });
        }
    }
    if class == MeasureClass::Symmetric {
        // group by cardinality; compare each subset with the canonical
        // representative {1,...,k}
        for d in g.nonempty_subsets() {
            let k = card(d);
            let rep: Mask = ((1u64 << k) - 1) as Mask;
            if (m.value(d) - m.value(rep)).abs() > TOL {
                return ValidationReport::fail(Violation::Symmetry {
                    a: rep,
                    b: d,
                    va: m.value(rep),
                    vb: m.value(d),
                });
            }
        }
    }
    ValidationReport::ok()
}

/// Möbius transform: `Mob(D) = Σ_{C ⊆ D} (−1)^{|D\C|} μ(C)`.
pub fn mobius_transform(m: &MonotoneMeasure) -> SignedSetFunction {
    mobius_of_signed(&m.as_signed())
}

/// Möbius transform of an arbitrary grounded set function.
pub fn mobius_of_signed(s: &SignedSetFunction) -> SignedSetFunction {
    let g = s.ground;
    let mut v = s.values.clone();
    for bit in 0..g.n() {
        let b = 1usize << bit;
        for mask in 0..g.num_subsets() {
            if mask & b != 0 {
                v[mask] -= v[mask ^ b];
            }
        }
    }
    SignedSetFunction { ground: g, values: v }
}

/// Zeta transform (inverse of the Möbius transform):
/// `ζ(s)(D) = Σ_{C ⊆ D} s(C)`.
pub fn zeta_transform(s: &SignedSetFunction) -> SignedSetFunction {
    let g = s.ground;
    let mut v = s.values.clone();
    for bit in 0..g.n() {
        let b = 1usize << bit;
        for mask in 0..g.num_subsets() {
            if mask & b != 0 {
                v[mask] += v[mask ^ b];
            }
        }
    }
    SignedSetFunction { ground: g, values: v }
}

/// Dual w.r.t. a reference measure: `D ↦ ref(X) − ref(D^c)`.
///
/// Requires `m(X) = ref(X)`.
pub fn dual_measure(m: &MonotoneMeasure, reference: &MonotoneMeasure) -> Result<MonotoneMeasure> {
    if m.ground != reference.ground {
        return Err(Error::GroundMismatch(m.ground.n(), reference.ground.n()));
    }
    let g = m.ground;
    if (m.total() - reference.total()).abs() > TOL {
        return Err(Error::Precondition(format!(
            "dual requires m(X) = ref(X); got {} vs {}",
            m.total(),
            reference.total()
        )));
    }
    let top = reference.total();
    let values: Vec<f64> = g
        .subsets()
        .map(|d| top - reference.value(g.complement(d)))
        .collect();
    MonotoneMeasure::new(g, values)
}

/// Sampler classes for [`random_measure`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RandomClass {
    Monotone,
    Capacity,
    Symmetric,
    SymmetricCapacity,
}

/// Deterministic (per seed) sampler of monotone measures.
pub fn random_measure(ground: GroundSet, class: RandomClass, seed: u64) -> MonotoneMeasure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_measure_with(ground, class, &mut rng)
}

/// Sampler variant drawing from a caller-provided RNG, for sweeps.
pub fn random_measure_with<R: Rng>(
    ground: GroundSet,
    class: RandomClass,
    rng: &mut R,
) -> MonotoneMeasure {
    match class {
        RandomClass::Monotone | RandomClass::Capacity => {
            // raw draws monotonized by running max over covering subsets
            let mut v = vec![0.0; ground.num_subsets()];
            for mask in ground.nonempty_subsets() {
                let mut best: f64 = rng.gen_range(0.0..1.0);
                for i in ground.points(mask) {
                    best = best.max(v[(mask & !(1 << (i - 1))) as usize]);
                }
                v[mask as usize] = best;
            }
            if class == RandomClass::Capacity {
                let top = v[ground.full_mask() as usize];
                if top > 0.0 {
                    for x in v.iter_mut() {
                        *x /= top;
                    }
                }
                v[ground.full_mask() as usize] = 1.0;
            }
            MonotoneMeasure::new(ground, v).expect("sampler output is monotone")
        }
        RandomClass::Symmetric | RandomClass::SymmetricCapacity => {
            // nondecreasing level vector g(0)=0 ≤ g(1) ≤ ... ≤ g(n), μ(D)=g(|D|)
            let n = ground.n();
            let mut levels = vec![0.0f64; n + 1];
            for k in 1..=n {
                levels[k] = levels[k - 1] + rng.gen_range(0.0..1.0);
            }
            if class == RandomClass::SymmetricCapacity && levels[n] > 0.0 {
                let top = levels[n];
                for l in levels.iter_mut() {
                    *l /= top;
                }
                levels[n] = 1.0;
            }
            let v: Vec<f64> = ground.subsets().map(|d| levels[card(d)]).collect();
            MonotoneMeasure::new(ground, v).expect("sampler output is monotone")
        }
    }
}

/// Symmetric measure from its level vector `g(0)=0 ≤ g(1) ≤ … ≤ g(n)`.
pub fn symmetric_from_levels(ground: GroundSet, levels: &[f64]) -> Result<MonotoneMeasure> {
    if levels.len() != ground.n() + 1 {
        return Err(Error::Malformed(format!(
            "expected {} levels, got {}",
            ground.n() + 1,
            levels.len()
        )));
    }
    let v: Vec<f64> = ground.subsets().map(|d| levels[card(d)]).collect();
    MonotoneMeasure::new(ground, v)
}

/// A nonnegative bounded point function `f: [n] → [0, ∞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointFunction {
    ground: GroundSet,
    values: Vec<f64>,
}

impl PointFunction {
    pub fn new(ground: GroundSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != ground.n() {
            return Err(Error::Malformed(format!(
                "expected {} point values, got {}",
                ground.n(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Malformed(
                "point function entries must be finite and nonnegative".into(),
            ));
        }
        Ok(PointFunction { ground, values })
    }

    pub fn zero(ground: GroundSet) -> Self {
        PointFunction {
            ground,
            values: vec![0.0; ground.n()],
        }
    }

    pub fn constant(ground: GroundSet, b: f64) -> Result<Self> {
        PointFunction::new(ground, vec![b; ground.n()])
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Value at point `i` (1-based).
    pub fn value(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The `bF¹` flag: all entries in `[0, 1]`.
    pub fn is_unit_range(&self) -> bool {
        self.values.iter().all(|v| *v <= 1.0)
    }

    /// Mask of the t-level set `{f ≥ t}`.
    pub fn level_set(&self, t: f64) -> Mask {
        let mut m: Mask = 0;
        for (idx, v) in self.values.iter().enumerate() {
            if *v >= t {
                m |= 1 << idx;
            }
        }
        m
    }

    /// `min_{i ∈ D} f(i)`; 0 on the empty set by convention.
    pub fn min_on(&self, d: Mask) -> f64 {
        if d == 0 {
            return 0.0;
        }
        self.ground
            .points(d)
            .map(|i| self.value(i))
            .fold(f64::INFINITY, f64::min)
    }

    /// `max_{i ∈ D} f(i)`; 0 on the empty set by convention.
    pub fn max_on(&self, d: Mask) -> f64 {
        self.ground
            .points(d)
            .map(|i| self.value(i))
            .fold(0.0, f64::max)
    }

    /// Canonical ascending permutation: indices (1-based) stably sorted by
    /// value with index tie-break.
    pub fn ascending_permutation(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (1..=self.ground.n()).collect();
        idx.sort_by(|a, b| {
            self.value(*a)
                .partial_cmp(&self.value(*b))
                .unwrap()
                .then(a.cmp(b))
        });
        idx
    }

    /// Restriction `f · 1_D`.
    pub fn restrict(&self, d: Mask) -> PointFunction {
        let values = (1..=self.ground.n())
            .map(|i| if d >> (i - 1) & 1 == 1 { self.value(i) } else { 0.0 })
            .collect();
        PointFunction {
            ground: self.ground,
            values,
        }
    }
}

/// Uniform random point function with entries in `[0, hi)`.
pub fn random_function_with<R: Rng>(ground: GroundSet, hi: f64, rng: &mut R) -> PointFunction {
    let values = (0..ground.n()).map(|_| rng.gen_range(0.0..hi)).collect();
    PointFunction { ground, values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn measure_from_pairs(ground: GroundSet, pairs: &[(&str, f64)]) -> MonotoneMeasure {
        let mut v = vec![0.0; ground.num_subsets()];
        for (s, x) in pairs {
            v[ground.parse_subset(s).unwrap() as usize] = *x;
        }
        MonotoneMeasure::new(ground, v).unwrap()
    }

    #[test]
    fn subset_roundtrip() {
        let g3 = g(3);
        assert_eq!(g3.format_subset(0), "{}");
        assert_eq!(g3.format_subset(0b101), "{1,3}");
        assert_eq!(g3.parse_subset("{1,3}").unwrap(), 0b101);
        assert_eq!(g3.parse_subset("{}").unwrap(), 0);
        assert!(g3.parse_subset("{4}").is_err());
        assert!(g3.parse_subset("1,3").is_err());
    }

    #[test]
    fn validate_constant_one_is_monotone() {
        let g3 = g(3);
        let v: Vec<f64> = g3.subsets().map(|d| if d == 0 { 0.0 } else { 1.0 }).collect();
        let s = SignedSetFunction::new(g3, v).unwrap();
        assert!(validate_measure(&s, MeasureClass::Monotone).pass);
    }

    #[test]
    fn validate_symmetric_fails_on_asymmetric_pair() {
        // μ(X)=1, μ({1})=0.5, μ({2})=0.4 on [2] is not symmetric
        let g2 = g(2);
        let s = SignedSetFunction::new(g2, vec![0.0, 0.5, 0.4, 1.0]).unwrap();
        let rep = validate_measure(&s, MeasureClass::Symmetric);
        assert!(!rep.pass);
        match rep.violation.unwrap() {
            Violation::Symmetry { a, b, .. } => {
                assert_eq!((a, b), (0b01, 0b10));
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn validate_symmetric_passes() {
        // μ(X)=2, μ({1})=μ({2})=1 on [2]
        let g2 = g(2);
        let s = SignedSetFunction::new(g2, vec![0.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(validate_measure(&s, MeasureClass::Symmetric).pass);
    }

    #[test]
    fn mobius_of_additive_measure_lives_on_singletons() {
        let g2 = g(2);
        let (a, b) = (0.3, 0.45);
        let m = MonotoneMeasure::new(g2, vec![0.0, a, b, a + b]).unwrap();
        let mob = mobius_transform(&m);
        assert!((mob.value(0b01) - a).abs() < TOL);
        assert!((mob.value(0b10) - b).abs() < TOL);
        assert!(mob.value(0b11).abs() < TOL);
    }

    #[test]
    fn mobius_of_constant_one_alternates() {
        let g3 = g(3);
        let v: Vec<f64> = g3.subsets().map(|d| if d == 0 { 0.0 } else { 1.0 }).collect();
        let m = MonotoneMeasure::new(g3, v).unwrap();
        let mob = mobius_transform(&m);
        for d in g3.nonempty_subsets() {
            let expected = match card(d) {
                1 => 1.0,
                2 => -1.0,
                3 => 1.0,
                _ => unreachable!(),
            };
            assert!((mob.value(d) - expected).abs() < TOL, "at {d:#b}");
        }
    }

    #[test]
    fn zeta_inverts_mobius() {
        let g4 = g(4);
        for seed in 0..20 {
            let m = random_measure(g4, RandomClass::Monotone, seed);
            let back = zeta_transform(&mobius_transform(&m));
            for d in g4.subsets() {
                assert!((back.value(d) - m.value(d)).abs() < TOL);
            }
        }
    }

    #[test]
    fn zeta_of_delta_at_top() {
        let g2 = g(2);
        let s = SignedSetFunction::new(g2, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let z = zeta_transform(&s);
        assert_eq!(z.values(), &[0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn zeta_of_zero_is_zero() {
        let g3 = g(3);
        let s = SignedSetFunction::new(g3, vec![0.0; 8]).unwrap();
        assert!(zeta_transform(&s).values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn dual_of_additive_is_itself() {
        let g2 = g(2);
        let m = measure_from_pairs(g2, &[("{1}", 0.3), ("{2}", 0.7), ("{1,2}", 1.0)]);
        let d = dual_measure(&m, &m).unwrap();
        for (a, b) in d.values().iter().zip(m.values()) {
            assert!((a - b).abs() < TOL);
        }
    }

    #[test]
    fn dual_of_constant_one() {
        let g2 = g(2);
        let m = measure_from_pairs(g2, &[("{1}", 1.0), ("{2}", 1.0), ("{1,2}", 1.0)]);
        let d = dual_measure(&m, &m).unwrap();
        assert_eq!(d.value(0), 0.0);
        assert_eq!(d.value(0b01), 0.0);
        assert_eq!(d.value(0b10), 0.0);
        assert_eq!(d.value(0b11), 1.0);
    }

    #[test]
    fn dual_preserves_symmetry_and_is_involutive() {
        let g3 = g(3);
        for seed in 0..30 {
            let m = random_measure(g3, RandomClass::Symmetric, seed);
            let d = dual_measure(&m, &m).unwrap();
            assert!(validate_measure(&d.as_signed(), MeasureClass::Symmetric).pass);
            let dd = dual_measure(&d, &d).unwrap();
            for s in g3.subsets() {
                assert!((dd.value(s) - m.value(s)).abs() < TOL);
            }
        }
    }

    #[test]
    fn dual_total_mismatch_is_error() {
        let g2 = g(2);
        let m = measure_from_pairs(g2, &[("{1}", 0.5), ("{2}", 0.5), ("{1,2}", 1.0)]);
        let r = measure_from_pairs(g2, &[("{1}", 0.5), ("{2}", 0.5), ("{1,2}", 2.0)]);
        assert!(matches!(dual_measure(&m, &r), Err(Error::Precondition(_))));
    }

    #[test]
    fn sampler_contracts() {
        let g3 = g(3);
        let m = random_measure(g3, RandomClass::Monotone, 7);
        assert!(validate_measure(&m.as_signed(), MeasureClass::Monotone).pass);

        let g4 = g(4);
        let s = random_measure(g4, RandomClass::Symmetric, 1);
        // exact symmetric dependence on cardinality
        for a in g4.nonempty_subsets() {
            for b in g4.nonempty_subsets() {
                if card(a) == card(b) {
                    assert_eq!(s.value(a), s.value(b));
                }
            }
        }

        let c = random_measure(g3, RandomClass::Capacity, 5);
        assert!(c.is_capacity());
        let sc = random_measure(g3, RandomClass::SymmetricCapacity, 5);
        assert!(sc.is_capacity());
    }

    #[test]
    fn sampler_is_deterministic_per_seed() {
        let g4 = g(4);
        let a = random_measure(g4, RandomClass::Monotone, 42);
        let b = random_measure(g4, RandomClass::Monotone, 42);
        assert_eq!(a.values(), b.values());
        let c = random_measure(g4, RandomClass::Monotone, 43);
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn mobius_roundtrip_sweep() {
        // 1000 random monotone measures spread over n ∈ {2,3,4,5}
        let mut worst: f64 = 0.0;
        for n in 2..=5usize {
            let gn = g(n);
            for seed in 0..250u64 {
                let m = random_measure(gn, RandomClass::Monotone, seed * 7 + n as u64);
                let back = zeta_transform(&mobius_transform(&m));
                for d in gn.subsets() {
                    worst = worst.max((back.value(d) - m.value(d)).abs());
                }
            }
        }
        assert!(worst <= 1e-9, "max roundtrip error {worst}");
    }

    #[test]
    fn monotone_validation_matches_bruteforce() {
        let g4 = g(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut v: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..1.0)).collect();
            v[0] = 0.0;
            let s = SignedSetFunction::new(g4, v).unwrap();
            let fast = validate_measure(&s, MeasureClass::Monotone).pass;
            // brute force over all comparable pairs
            let mut brute = true;
            'outer: for c in g4.subsets() {
                for d in g4.subsets() {
                    if c & d == c && s.value(c) > s.value(d) + TOL {
                        brute = false;
                        break 'outer;
                    }
                }
            }
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn point_function_basics() {
        let g3 = g(3);
        let f = PointFunction::new(g3, vec![0.4, 0.2, 0.3]).unwrap();
        assert_eq!(f.min_on(0b101), 0.3);
        assert_eq!(f.max_on(0b011), 0.4);
        assert_eq!(f.min_on(0), 0.0);
        assert_eq!(f.level_set(0.3), 0b101);
        assert_eq!(f.ascending_permutation(), vec![2, 3, 1]);
        let r = f.restrict(0b001);
        assert_eq!(r.values(), &[0.4, 0.0, 0.0]);
    }
}
