//! JSON descriptors: measures, operators, problem files and evaluation
//! reports. This is the single parsing layer shared by the CLI and the
//! FFI surface.
//!
//! Measure values are explicit: every subset of the ground set must be
//! present. Omitted subsets are an error, not a default.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::condagg::{make_fca, AggKind, Fca};
use crate::csop::{
    cs_operator, generalized_lebesgue, lovasz_generalized, minmax_diff, p_variation,
    upper_sugeno_like, BinaryOp, CsConfig, Dissimilarity, LFunction, SugenoMode,
};
use crate::decomp::{Collection, DecompositionSystem, RelationKind};
use crate::integrals::{
    cff_operator, choquet, d_choquet, f_decomposition_direct, fc_levelset, fc_operator,
    ie_operator, rc_operator, CffMode, ChoquetForm, DChoquetMode, DecompositionMethod, FPair,
    OrderedReport, PermutationPolicy,
};
use crate::setfn::{mobius_transform, GroundSet, MonotoneMeasure, PointFunction};
use crate::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what}: expected an object")))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| bad(format!("{what}: missing field \"{key}\"")))
}

fn num(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number")))
}

fn text<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what}: expected a string")))
}

// ---------------------------------------------------------------------------
// measures and functions

/// Parses `{"n": 3, "values": {"{}": 0, "{1}": 1, ...}}`; all `2^n`
/// subsets are mandatory.
pub fn parse_measure(v: &Value) -> Result<MonotoneMeasure> {
    let m = obj(v, "measure")?;
    let n = num(field(m, "n", "measure")?, "measure.n")? as usize;
    let ground = GroundSet::new(n)?;
    let values = obj(field(m, "values", "measure")?, "measure.values")?;
    let mut out = vec![f64::NAN; ground.num_subsets()];
    for (k, val) in values {
        let mask = ground.parse_subset(k)?;
        out[mask as usize] = num(val, &format!("measure.values[{k}]"))?;
    }
    if let Some(d) = ground.subsets().find(|&d| out[d as usize].is_nan()) {
        return Err(bad(format!(
            "measure.values: missing subset {}",
            ground.format_subset(d)
        )));
    }
    MonotoneMeasure::new(ground, out)
}

/// Canonical JSON form of a measure.
pub fn measure_to_json(m: &MonotoneMeasure) -> Value {
    let g = m.ground();
    let values: Map<String, Value> = g
        .subsets()
        .map(|d| (g.format_subset(d), json!(m.value(d))))
        .collect();
    json!({"n": g.n(), "values": values})
}

fn parse_function(v: &Value, ground: GroundSet) -> Result<PointFunction> {
    let arr = v.as_array().ok_or_else(|| bad("f: expected an array"))?;
    let vals = arr
        .iter()
        .enumerate()
        .map(|(i, x)| num(x, &format!("f[{i}]")))
        .collect::<Result<Vec<f64>>>()?;
    PointFunction::new(ground, vals)
}

// ---------------------------------------------------------------------------
// operator components

/// Binary operation by name: `{"op": "min"}` or the bare name.
pub fn parse_op(v: &Value) -> Result<BinaryOp> {
    let name = match v {
        Value::String(s) => s.as_str(),
        _ => text(field(obj(v, "op")?, "op", "op")?, "op")?,
    };
    Ok(match name {
        "min" | "copula:M" => BinaryOp::Min,
        "prod" | "copula:Pi" => BinaryOp::Prod,
        "copula:W" => BinaryOp::CopulaW,
        "prod-clamped" => BinaryOp::ProdClamped,
        "prod-square" | "a*x^2" => BinaryOp::ProdSquare,
        other => return Err(bad(format!("unknown binary operation \"{other}\""))),
    })
}

fn op_to_json(op: &BinaryOp) -> Result<Value> {
    let name = match op {
        BinaryOp::Min => "min",
        BinaryOp::Prod => "prod",
        BinaryOp::CopulaW => "copula:W",
        BinaryOp::ProdClamped => "prod-clamped",
        BinaryOp::ProdSquare => "prod-square",
        BinaryOp::Custom { .. } => {
            return Err(bad("custom operations have no JSON form"));
        }
    };
    Ok(json!({ "op": name }))
}

/// Dissimilarity: `{"delta": "abs"}`, `"square"`, or
/// `{"delta": {"abs-pow": 3}}`.
pub fn parse_delta(v: &Value) -> Result<Dissimilarity> {
    let inner = match v {
        Value::Object(m) if m.contains_key("delta") => &m["delta"],
        _ => v,
    };
    match inner {
        Value::String(s) => match s.as_str() {
            "abs" => Ok(Dissimilarity::Abs),
            "square" => Ok(Dissimilarity::Square),
            other => Err(bad(format!("unknown dissimilarity \"{other}\""))),
        },
        Value::Object(m) if m.contains_key("abs-pow") => {
            Ok(Dissimilarity::AbsPow(num(&m["abs-pow"], "delta.abs-pow")?))
        }
        _ => Err(bad("delta: expected a name or {\"abs-pow\": p}")),
    }
}

fn delta_to_json(d: &Dissimilarity) -> Result<Value> {
    Ok(match d {
        Dissimilarity::Abs => json!({"delta": "abs"}),
        Dissimilarity::Square => json!({"delta": "square"}),
        Dissimilarity::AbsPow(p) => json!({"delta": {"abs-pow": p}}),
        Dissimilarity::Custom { .. } => {
            return Err(bad("custom dissimilarities have no JSON form"));
        }
    })
}

/// Function pair: `{"pair": {"F1": "copula:M", "F2": "copula:M"}}`.
pub fn parse_pair(v: &Value) -> Result<FPair> {
    let m = obj(v, "pair")?;
    let inner = obj(field(m, "pair", "pair")?, "pair")?;
    let f1 = parse_op(field(inner, "F1", "pair")?)?;
    let f2 = parse_op(field(inner, "F2", "pair")?)?;
    FPair::new(f1, f2)
}

fn pair_to_json(p: &FPair) -> Result<Value> {
    Ok(json!({"pair": {
        "F1": op_to_json(p.f1())?["op"],
        "F2": op_to_json(p.f2())?["op"],
    }}))
}

/// FCA descriptor: `{"kind": "inf"}`, `{"kind": "pnorm", "p": 2}`, or
/// the composition `{"kind": "scale", "alpha": 0.5, "inner": {...}}`.
pub fn parse_fca(v: &Value, ground: GroundSet) -> Result<Fca> {
    fn kind_of(v: &Value) -> Result<AggKind> {
        let m = obj(v, "fca")?;
        Ok(match text(field(m, "kind", "fca")?, "fca.kind")? {
            "inf" => AggKind::Inf,
            "sup" => AggKind::Sup,
            "prod" => AggKind::Prod,
            "sum" => AggKind::Sum,
            "mean" => AggKind::Mean,
            "pnorm" => AggKind::PNorm(num(field(m, "p", "fca pnorm")?, "fca.p")?),
            "lukasiewicz" => AggKind::Lukasiewicz,
            "scale" => AggKind::Scale {
                alpha: num(field(m, "alpha", "fca scale")?, "fca.alpha")?,
                inner: Box::new(kind_of(field(m, "inner", "fca scale")?)?),
            },
            other => return Err(bad(format!("unknown FCA kind \"{other}\""))),
        })
    }
    make_fca(kind_of(v)?, ground)
}

fn fca_to_json(a: &Fca) -> Result<Value> {
    fn kind_json(k: &AggKind) -> Result<Value> {
        Ok(match k {
            AggKind::Inf => json!({"kind": "inf"}),
            AggKind::Sup => json!({"kind": "sup"}),
            AggKind::Prod => json!({"kind": "prod"}),
            AggKind::Sum => json!({"kind": "sum"}),
            AggKind::Mean => json!({"kind": "mean"}),
            AggKind::PNorm(p) => json!({"kind": "pnorm", "p": p}),
            AggKind::Lukasiewicz => json!({"kind": "lukasiewicz"}),
            AggKind::Scale { alpha, inner } => {
                json!({"kind": "scale", "alpha": alpha, "inner": kind_json(inner)?})
            }
            AggKind::Custom(_) => return Err(bad("custom FCAs have no JSON form")),
        })
    }
    kind_json(a.kind())
}

/// Collection: `{"members": [["1"],["1","3"]], "order": "given"}`.
/// With `"order": "given"` the member order is kept (chains must be
/// listed outermost first); otherwise members are canonically sorted.
pub fn parse_collection(v: &Value, ground: GroundSet) -> Result<Collection> {
    let m = obj(v, "collection")?;
    let members = field(m, "members", "collection")?
        .as_array()
        .ok_or_else(|| bad("collection.members: expected an array"))?;
    let mut masks = Vec::with_capacity(members.len());
    for mem in members {
        let pts = mem
            .as_array()
            .ok_or_else(|| bad("collection member: expected an array of point names"))?;
        let mut mask = 0u32;
        for p in pts {
            let name = text(p, "collection member point")?;
            let i: usize = name
                .parse()
                .map_err(|_| bad(format!("bad point name \"{name}\"")))?;
            if i == 0 || i > ground.n() {
                return Err(bad(format!("point {i} outside the ground set [{}]" , ground.n())));
            }
            mask |= 1 << (i - 1);
        }
        masks.push(mask);
    }
    match m.get("order").and_then(|v| v.as_str()) {
        Some("given") => Collection::new_chain(ground, masks),
        _ => Collection::new(ground, masks),
    }
}

fn collection_to_json(c: &Collection) -> Value {
    let g = c.ground();
    let members: Vec<Value> = c
        .members()
        .iter()
        .map(|&mask| {
            Value::Array(
                g.points(mask)
                    .map(|i| Value::String(i.to_string()))
                    .collect(),
            )
        })
        .collect();
    json!({"members": members, "order": if c.is_ordered() { "given" } else { "canonical" }})
}

/// System: `{"system": "chain"}` or explicit `{"collections": [...]}`.
pub fn parse_system(v: &Value, ground: GroundSet) -> Result<DecompositionSystem> {
    let m = obj(v, "system")?;
    if let Some(name) = m.get("system") {
        return Ok(match text(name, "system")? {
            "one" => DecompositionSystem::One,
            "part" => DecompositionSystem::Part,
            "chain" => DecompositionSystem::Chain,
            "singletons" => DecompositionSystem::Singletons,
            other => return Err(bad(format!("unknown system \"{other}\""))),
        });
    }
    if let Some(colls) = m.get("collections") {
        let arr = colls
            .as_array()
            .ok_or_else(|| bad("collections: expected an array"))?;
        let parsed = arr
            .iter()
            .map(|c| parse_collection(c, ground))
            .collect::<Result<Vec<Collection>>>()?;
        return Ok(DecompositionSystem::Explicit(parsed));
    }
    Err(bad("system: expected {\"system\": name} or {\"collections\": [...]}"))
}

fn system_to_json(s: &DecompositionSystem) -> Value {
    match s {
        DecompositionSystem::One => json!({"system": "one"}),
        DecompositionSystem::Part => json!({"system": "part"}),
        DecompositionSystem::Chain => json!({"system": "chain"}),
        DecompositionSystem::Singletons => json!({"system": "singletons"}),
        DecompositionSystem::Explicit(cs) => {
            json!({"collections": cs.iter().map(collection_to_json).collect::<Vec<Value>>()})
        }
    }
}

/// Relation name: `"diagonal" | "complement" | "r+" | "r-"`.
pub fn parse_relation(v: &Value) -> Result<RelationKind> {
    Ok(match text(v, "relation")? {
        "diagonal" => RelationKind::Diagonal,
        "complement" => RelationKind::Complement,
        "r+" => RelationKind::RPlus,
        "r-" => RelationKind::RMinus,
        other => return Err(bad(format!("unknown relation \"{other}\""))),
    })
}

fn relation_to_json(r: &RelationKind) -> Result<Value> {
    Ok(Value::String(
        match r {
            RelationKind::Diagonal => "diagonal",
            RelationKind::Complement => "complement",
            RelationKind::RPlus => "r+",
            RelationKind::RMinus => "r-",
            RelationKind::Custom(_) => return Err(bad("custom relations have no JSON form")),
        }
        .into(),
    ))
}

/// L-function: `{"l": "L4", "op": {...}}` and so on per slot.
pub fn parse_l(v: &Value) -> Result<LFunction> {
    let m = obj(v, "l")?;
    Ok(match text(field(m, "l", "l")?, "l")? {
        "L1" => LFunction::L1 {
            p: num(field(m, "p", "L1")?, "l.p")?,
        },
        "L2" => LFunction::L2 {
            op: parse_op(field(m, "op", "L2")?)?,
        },
        "L3" => LFunction::L3 {
            op: parse_op(field(m, "op", "L3")?)?,
        },
        "L4" => LFunction::L4 {
            op: parse_op(field(m, "op", "L4")?)?,
        },
        "L5" => LFunction::L5 {
            op: parse_op(field(m, "op", "L5")?)?,
        },
        "L6" => LFunction::L6 {
            delta: parse_delta(field(m, "delta", "L6")?)?,
            op: parse_op(field(m, "op", "L6")?)?,
        },
        "L7" => {
            let pair = parse_pair(v)?;
            LFunction::L7 {
                f1: pair.f1().clone(),
                f2: pair.f2().clone(),
            }
        }
        other => return Err(bad(format!("unknown L-function \"{other}\""))),
    })
}

fn l_to_json(l: &LFunction) -> Result<Value> {
    Ok(match l {
        LFunction::L1 { p } => json!({"l": "L1", "p": p}),
        LFunction::L2 { op } => json!({"l": "L2", "op": op_to_json(op)?}),
        LFunction::L3 { op } => json!({"l": "L3", "op": op_to_json(op)?}),
        LFunction::L4 { op } => json!({"l": "L4", "op": op_to_json(op)?}),
        LFunction::L5 { op } => json!({"l": "L5", "op": op_to_json(op)?}),
        LFunction::L6 { delta, op } => {
            json!({"l": "L6", "delta": delta_to_json(delta)?["delta"], "op": op_to_json(op)?})
        }
        LFunction::L7 { f1, f2 } => json!({"l": "L7", "pair": {
            "F1": op_to_json(f1)?["op"], "F2": op_to_json(f2)?["op"]}}),
        LFunction::Custom { .. } => return Err(bad("custom L-functions have no JSON form")),
    })
}

// ---------------------------------------------------------------------------
// operator specs

/// Evaluation options shared across the operator families.
#[derive(Clone, Debug)]
pub struct Options {
    pub policy: PermutationPolicy,
    /// `ordered | levelset | clamp`; meaning depends on the operator
    pub mode: Option<String>,
    pub method: DecompositionMethod,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            policy: PermutationPolicy::Canonical,
            mode: None,
            method: DecompositionMethod::PartitionExact,
        }
    }
}

fn parse_options(v: Option<&Value>) -> Result<Options> {
    let mut out = Options::default();
    let Some(v) = v else { return Ok(out) };
    let m = obj(v, "options")?;
    if let Some(p) = m.get("policy") {
        out.policy = match text(p, "options.policy")? {
            "canonical" => PermutationPolicy::Canonical,
            "all" => PermutationPolicy::All,
            other => return Err(bad(format!("unknown policy \"{other}\""))),
        };
    }
    if let Some(mode) = m.get("mode") {
        out.mode = Some(text(mode, "options.mode")?.to_string());
    }
    if let Some(method) = m.get("method") {
        out.method = match method {
            Value::String(s) => match s.as_str() {
                "partition-exact" => DecompositionMethod::PartitionExact,
                "lp-vertex" => DecompositionMethod::LpVertex,
                other => return Err(bad(format!("unknown method \"{other}\""))),
            },
            Value::Object(mm) if mm.contains_key("grid") => {
                DecompositionMethod::Grid(num(&mm["grid"], "options.method.grid")?)
            }
            _ => return Err(bad("options.method: expected a name or {\"grid\": step}")),
        };
    }
    Ok(out)
}

fn options_to_json(o: &Options) -> Value {
    let mut m = Map::new();
    m.insert(
        "policy".into(),
        json!(match o.policy {
            PermutationPolicy::Canonical => "canonical",
            PermutationPolicy::All => "all",
        }),
    );
    if let Some(mode) = &o.mode {
        m.insert("mode".into(), json!(mode));
    }
    m.insert(
        "method".into(),
        match o.method {
            DecompositionMethod::PartitionExact => json!("partition-exact"),
            DecompositionMethod::LpVertex => json!("lp-vertex"),
            DecompositionMethod::Grid(s) => json!({"grid": s}),
        },
    );
    Value::Object(m)
}

/// A parsed operator descriptor from the problem file.
#[derive(Clone, Debug)]
pub enum OperatorSpec {
    Choquet { form: ChoquetForm },
    Fc { op: BinaryOp },
    FcLevelset { op: BinaryOp },
    Rc { op: BinaryOp },
    DChoquet { delta: Dissimilarity, op: BinaryOp },
    Cff { pair: FPair },
    Cc { copula: BinaryOp },
    Cs {
        l: LFunction,
        system: DecompositionSystem,
        relation: RelationKind,
        fca: AggKind,
        fca_hat: AggKind,
    },
    SugenoLike { op: BinaryOp, mode: SugenoMode },
    FDecomposition { op: BinaryOp, system: DecompositionSystem },
    Lebesgue { op: BinaryOp, fca: AggKind },
    Lovasz { op: BinaryOp, fca: AggKind },
    Minmax { op: BinaryOp },
    PVariation {
        p: f64,
        fca: AggKind,
        system: DecompositionSystem,
        relation: RelationKind,
    },
    Ie { op: BinaryOp, fca: AggKind },
}

fn fca_kind(v: Option<&Value>, ground: GroundSet) -> Result<AggKind> {
    match v {
        Some(v) => Ok(parse_fca(v, ground)?.kind().clone()),
        None => Ok(AggKind::Inf),
    }
}

/// Parses the `operator` object of a problem file.
pub fn parse_operator(v: &Value, ground: GroundSet) -> Result<OperatorSpec> {
    let m = obj(v, "operator")?;
    let id = text(field(m, "id", "operator")?, "operator.id")?;
    let op_of = |key: &str| -> Result<BinaryOp> { parse_op(field(m, key, "operator")?) };
    Ok(match id {
        "choquet" => {
            let idx = m.get("form").map(|f| num(f, "operator.form")).transpose()?.unwrap_or(1.0);
            OperatorSpec::Choquet {
                form: ChoquetForm::from_index(idx as u8)?,
            }
        }
        "fc" => OperatorSpec::Fc { op: op_of("op")? },
        "fc-levelset" => OperatorSpec::FcLevelset { op: op_of("op")? },
        "rc" => OperatorSpec::Rc { op: op_of("op")? },
        "d-choquet" => OperatorSpec::DChoquet {
            delta: parse_delta(field(m, "delta", "operator")?)?,
            op: op_of("op")?,
        },
        "cff" => OperatorSpec::Cff { pair: parse_pair(v)? },
        "cc" => OperatorSpec::Cc {
            copula: parse_op(field(m, "copula", "operator cc")?)?,
        },
        "cs" => OperatorSpec::Cs {
            l: parse_l(field(m, "l", "operator cs")?)?,
            system: parse_system(field(m, "system", "operator cs")?, ground)?,
            relation: parse_relation(field(m, "relation", "operator cs")?)?,
            fca: fca_kind(m.get("fca"), ground)?,
            fca_hat: fca_kind(m.get("fca-hat").or_else(|| m.get("fca")), ground)?,
        },
        "sugeno" => OperatorSpec::SugenoLike {
            op: BinaryOp::Min,
            mode: SugenoMode::Inf,
        },
        "shilkret" => OperatorSpec::SugenoLike {
            op: BinaryOp::Prod,
            mode: SugenoMode::Inf,
        },
        "sugeno-like" => OperatorSpec::SugenoLike {
            op: op_of("op")?,
            mode: SugenoMode::Inf,
        },
        "pan" => OperatorSpec::FDecomposition {
            op: BinaryOp::Prod,
            system: DecompositionSystem::Part,
        },
        "f-decomposition" => OperatorSpec::FDecomposition {
            op: op_of("op")?,
            system: parse_system(field(m, "system", "operator f-decomposition")?, ground)?,
        },
        "lebesgue" => OperatorSpec::Lebesgue {
            op: op_of("op")?,
            fca: fca_kind(m.get("fca"), ground)?,
        },
        "lovasz" => OperatorSpec::Lovasz {
            op: op_of("op")?,
            fca: fca_kind(m.get("fca"), ground)?,
        },
        "minmax" => OperatorSpec::Minmax { op: op_of("op")? },
        "p-variation" => OperatorSpec::PVariation {
            p: num(field(m, "p", "operator p-variation")?, "operator.p")?,
            fca: fca_kind(m.get("fca"), ground)?,
            system: parse_system(field(m, "system", "operator p-variation")?, ground)?,
            relation: parse_relation(field(m, "relation", "operator p-variation")?)?,
        },
        "ie" => OperatorSpec::Ie {
            op: op_of("op")?,
            fca: fca_kind(m.get("fca"), ground)?,
        },
        other => return Err(bad(format!("unknown operator id \"{other}\""))),
    })
}

fn operator_to_json(spec: &OperatorSpec) -> Result<Value> {
    fn kind_json(k: &AggKind) -> Result<Value> {
        match k {
            AggKind::Custom(_) => Err(bad("custom FCAs have no JSON form")),
            _ => {
                let g = GroundSet::new(1).unwrap();
                fca_to_json(&make_fca(k.clone(), g)?)
            }
        }
    }
    Ok(match spec {
        OperatorSpec::Choquet { form } => json!({"id": "choquet", "form": form.index()}),
        OperatorSpec::Fc { op } => json!({"id": "fc", "op": op_to_json(op)?}),
        OperatorSpec::FcLevelset { op } => json!({"id": "fc-levelset", "op": op_to_json(op)?}),
        OperatorSpec::Rc { op } => json!({"id": "rc", "op": op_to_json(op)?}),
        OperatorSpec::DChoquet { delta, op } => json!({
            "id": "d-choquet",
            "delta": delta_to_json(delta)?["delta"],
            "op": op_to_json(op)?,
        }),
        OperatorSpec::Cff { pair } => {
            let p = pair_to_json(pair)?;
            json!({"id": "cff", "pair": p["pair"]})
        }
        OperatorSpec::Cc { copula } => json!({"id": "cc", "copula": op_to_json(copula)?}),
        OperatorSpec::Cs {
            l,
            system,
            relation,
            fca,
            fca_hat,
        } => json!({
            "id": "cs",
            "l": l_to_json(l)?,
            "system": system_to_json(system),
            "relation": relation_to_json(relation)?,
            "fca": kind_json(fca)?,
            "fca-hat": kind_json(fca_hat)?,
        }),
        OperatorSpec::SugenoLike { op, .. } => {
            json!({"id": "sugeno-like", "op": op_to_json(op)?})
        }
        OperatorSpec::FDecomposition { op, system } => json!({
            "id": "f-decomposition",
            "op": op_to_json(op)?,
            "system": system_to_json(system),
        }),
        OperatorSpec::Lebesgue { op, fca } => json!({
            "id": "lebesgue", "op": op_to_json(op)?, "fca": kind_json(fca)?}),
        OperatorSpec::Lovasz { op, fca } => json!({
            "id": "lovasz", "op": op_to_json(op)?, "fca": kind_json(fca)?}),
        OperatorSpec::Minmax { op } => json!({"id": "minmax", "op": op_to_json(op)?}),
        OperatorSpec::PVariation {
            p,
            fca,
            system,
            relation,
        } => json!({
            "id": "p-variation",
            "p": p,
            "fca": kind_json(fca)?,
            "system": system_to_json(system),
            "relation": relation_to_json(relation)?,
        }),
        OperatorSpec::Ie { op, fca } => json!({
            "id": "ie", "op": op_to_json(op)?, "fca": kind_json(fca)?}),
    })
}

// ---------------------------------------------------------------------------
// problem files and evaluation

/// One evaluation: ground set, function, measures, operator and options.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ground: GroundSet,
    pub f: PointFunction,
    pub mu: MonotoneMeasure,
    /// defaults to `mu` when absent
    pub muhat: Option<MonotoneMeasure>,
    pub operator: OperatorSpec,
    pub options: Options,
}

/// Parses a full problem file.
pub fn parse_problem(v: &Value) -> Result<ProblemFile> {
    let m = obj(v, "problem")?;
    let n = num(field(m, "n", "problem")?, "problem.n")? as usize;
    let ground = GroundSet::new(n)?;
    let mu = parse_measure(field(m, "mu", "problem")?)?;
    if mu.ground() != ground {
        return Err(Error::GroundMismatch(ground.n(), mu.ground().n()));
    }
    let muhat = m
        .get("muhat")
        .map(|v| -> Result<MonotoneMeasure> {
            let mh = parse_measure(v)?;
            if mh.ground() != ground {
                return Err(Error::GroundMismatch(ground.n(), mh.ground().n()));
            }
            Ok(mh)
        })
        .transpose()?;
    Ok(ProblemFile {
        ground,
        f: parse_function(field(m, "f", "problem")?, ground)?,
        mu,
        muhat,
        operator: parse_operator(field(m, "operator", "problem")?, ground)?,
        options: parse_options(m.get("options"))?,
    })
}

/// Canonical (normalized) JSON form; re-parsing evaluates identically.
pub fn problem_to_json(p: &ProblemFile) -> Result<Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(p.ground.n()));
    m.insert("f".into(), json!(p.f.values()));
    m.insert("mu".into(), measure_to_json(&p.mu));
    if let Some(mh) = &p.muhat {
        m.insert("muhat".into(), measure_to_json(mh));
    }
    m.insert("operator".into(), operator_to_json(&p.operator)?);
    m.insert("options".into(), options_to_json(&p.options));
    Ok(Value::Object(m))
}

/// Evaluation report emitted by `eval`.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_collection: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub well_defined: Option<bool>,
}

impl EvalReport {
    fn plain(value: f64) -> EvalReport {
        EvalReport {
            value,
            argmax_collection: None,
            terms: Vec::new(),
            min: None,
            max: None,
            well_defined: None,
        }
    }

    fn from_ordered(r: OrderedReport, policy: PermutationPolicy) -> EvalReport {
        let mut out = EvalReport::plain(r.value);
        if policy == PermutationPolicy::All {
            out.min = Some(r.min);
            out.max = Some(r.max);
            out.well_defined = Some(r.well_defined);
        }
        out
    }
}

fn require_unit_function(f: &PointFunction) -> Result<()> {
    if f.values().iter().any(|&v| v > 1.0) {
        return Err(Error::Precondition(
            "this operator requires f with values in [0,1]".into(),
        ));
    }
    Ok(())
}

fn require_capacity(m: &MonotoneMeasure) -> Result<()> {
    if (m.total() - 1.0).abs() > crate::TOL {
        return Err(Error::Capacity(format!(
            "capacity required: μ(X) = {} ≠ 1",
            m.total()
        )));
    }
    Ok(())
}

/// Evaluates the problem file's operator.
pub fn evaluate(p: &ProblemFile) -> Result<EvalReport> {
    let muhat = p.muhat.as_ref().unwrap_or(&p.mu);
    let g = p.ground;
    let pol = p.options.policy;
    match &p.operator {
        OperatorSpec::Choquet { form } => Ok(EvalReport::plain(choquet(&p.f, &p.mu, *form)?)),
        OperatorSpec::Fc { op } => Ok(EvalReport::from_ordered(
            fc_operator(op, &p.f, &p.mu, muhat, pol)?,
            pol,
        )),
        OperatorSpec::FcLevelset { op } => Ok(EvalReport::plain(fc_levelset(op, &p.f, &p.mu)?)),
        OperatorSpec::Rc { op } => Ok(EvalReport::from_ordered(
            rc_operator(op, &p.f, &p.mu, muhat, pol)?,
            pol,
        )),
        OperatorSpec::DChoquet { delta, op } => {
            let mode = match p.options.mode.as_deref() {
                Some("levelset") => DChoquetMode::Levelset,
                _ => DChoquetMode::Ordered,
            };
            Ok(EvalReport::from_ordered(
                d_choquet(delta, op, &p.f, &p.mu, pol, mode)?,
                pol,
            ))
        }
        OperatorSpec::Cff { pair } => {
            let mode = match p.options.mode.as_deref() {
                Some("levelset") => CffMode::Levelset,
                Some("clamp") => CffMode::Clamp,
                _ => CffMode::Ordered,
            };
            Ok(EvalReport::from_ordered(
                cff_operator(pair, &p.f, &p.mu, pol, mode)?,
                pol,
            ))
        }
        OperatorSpec::Cc { copula } => {
            require_unit_function(&p.f)?;
            require_capacity(&p.mu)?;
            let pair = FPair::copula(copula.clone())?;
            Ok(EvalReport::from_ordered(
                cff_operator(&pair, &p.f, &p.mu, pol, CffMode::Ordered)?,
                pol,
            ))
        }
        OperatorSpec::Cs {
            l,
            system,
            relation,
            fca,
            fca_hat,
        } => {
            let cfg = CsConfig::new(
                system.clone(),
                relation.clone(),
                l.clone(),
                make_fca(fca.clone(), g)?,
                make_fca(fca_hat.clone(), g)?,
            )?;
            let rep = cs_operator(&cfg, &p.f, &p.mu, &muhat.as_signed())?;
            let names = rep
                .argmax
                .members()
                .iter()
                .map(|&d| g.format_subset(d))
                .collect();
            let terms = rep
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "C": g.format_subset(t.c),
                        "D": g.format_subset(t.d),
                        "value": t.value,
                    })
                })
                .collect();
            Ok(EvalReport {
                value: rep.value,
                argmax_collection: Some(names),
                terms,
                min: None,
                max: None,
                well_defined: None,
            })
        }
        OperatorSpec::SugenoLike { op, mode } => {
            let a = Fca::inf(g);
            Ok(EvalReport::plain(upper_sugeno_like(
                op, &a, &p.f, &p.mu, *mode,
            )?))
        }
        OperatorSpec::FDecomposition { op, system } => Ok(EvalReport::plain(
            f_decomposition_direct(op, system, &p.f, &p.mu, p.options.method)?,
        )),
        OperatorSpec::Lebesgue { op, fca } => {
            let a = make_fca(fca.clone(), g)?;
            Ok(EvalReport::plain(generalized_lebesgue(op, &a, &p.f, &p.mu)?))
        }
        OperatorSpec::Lovasz { op, fca } => {
            let a = make_fca(fca.clone(), g)?;
            Ok(EvalReport::plain(lovasz_generalized(op, &a, &p.f, &p.mu)?))
        }
        OperatorSpec::Minmax { op } => Ok(EvalReport::plain(minmax_diff(op, &p.f, &p.mu)?)),
        OperatorSpec::PVariation {
            p: pexp,
            fca,
            system,
            relation,
        } => {
            let a = make_fca(fca.clone(), g)?;
            Ok(EvalReport::plain(p_variation(
                *pexp, &a, &p.f, system, relation,
            )?))
        }
        OperatorSpec::Ie { op, fca } => {
            require_unit_function(&p.f)?;
            let a = make_fca(fca.clone(), g)?;
            let _ = mobius_transform(&p.mu);
            Ok(EvalReport::plain(ie_operator(op, &a, &p.f, &p.mu)?))
        }
    }
}

/// Operator catalog: `(id, anchor)` pairs mapping CLI ids to the
/// numbered formulas.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("choquet", "Eqs. 1-4"),
        ("cs", "Def. 3.2"),
        ("fc", "Eq. n:c1a"),
        ("fc-levelset", "Eq. n:c1e"),
        ("rc", "Eq. n:c5a"),
        ("d-choquet", "Eq. n:d1a"),
        ("cff", "Eq. n:cf1"),
        ("cc", "Eq. n:cf1a"),
        ("sugeno", "Eq. n:sug1, F = min"),
        ("shilkret", "Eq. n:sug1, F = prod"),
        ("sugeno-like", "Eq. n:sug1"),
        ("pan", "Eq. n:pan1"),
        ("f-decomposition", "Eq. n:pan2"),
        ("lebesgue", "Eq. n:leb1"),
        ("lovasz", "Eq. n:chm1"),
        ("minmax", "Eq. n:leb1, H = {{X}}"),
        ("p-variation", "Sec. 5"),
        ("ie", "Eq. ie:n1"),
    ]
}
