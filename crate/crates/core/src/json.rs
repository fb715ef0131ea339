//! JSON interchange.
//!
//! Scalars are strings (`"3"`, `"-1/2"`, residues as integers); a point is a
//! list of factor coordinate lists; a tensor is a flat coordinate list. Every
//! document carries its space, field included:
//!
//! ```json
//! {"space": {"dims": [1, 1], "degrees": [1, 1], "field": "GF(5)"},
//!  "points": [[["1", "0"], ["1", "0"]]],
//!  "target": ["1", "0", "0", "0"]}
//! ```
//!
//! Integers are accepted wherever a scalar string is expected.

use serde_json::{json, Map, Value};

use crate::construct::Construction;
use crate::decomp::{Decomposition, Envelope, IrredundancyReport};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};
use crate::geometry::{MppPoint, MultiProjectiveSpace, SubspaceSpec, Tensor};
use crate::oracle::{GapProfile, MinConcise, RankCertificate};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn usizes(v: &Value, what: &str) -> Result<Vec<usize>> {
    array(v, what)?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| parse_err(format!("{what} must hold natural numbers")))
        })
        .collect()
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        _ => Err(parse_err("scalar must be a string or an integer")),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(field: FieldSpec, v: &Value) -> Result<Vec<Scalar>> {
    array(v, "vector")?.iter().map(|x| scalar_from_json(field, x)).collect()
}

pub fn space_to_json(s: &MultiProjectiveSpace) -> Value {
    json!({"dims": s.dims(), "degrees": s.degrees(), "field": s.field().to_string()})
}

/// Reads a space; `field` overrides the declared one. Missing degrees mean
/// the Segre embedding.
pub fn space_from_json(v: &Value, field: Option<FieldSpec>) -> Result<MultiProjectiveSpace> {
    let dims = usizes(field_of(v, "dims")?, "dims")?;
    let degrees = match v.get("degrees") {
        Some(d) => usizes(d, "degrees")?,
        None => vec![1; dims.len()],
    };
    let field = match field {
        Some(f) => f,
        None => field_of(v, "field")?
            .as_str()
            .ok_or_else(|| parse_err("field must be a string"))?
            .parse()?,
    };
    MultiProjectiveSpace::new(dims, degrees, field)
}

pub fn point_to_json(p: &MppPoint) -> Value {
    Value::Array(p.factors().iter().map(|f| vector_to_json(f)).collect())
}

pub fn point_from_json(space: &MultiProjectiveSpace, v: &Value) -> Result<MppPoint> {
    let factors = array(v, "point")?
        .iter()
        .map(|f| vector_from_json(space.field(), f))
        .collect::<Result<Vec<_>>>()?;
    let p = MppPoint::new(factors)?;
    space.check_point(&p)?;
    Ok(p)
}

pub fn points_to_json(ps: &[MppPoint]) -> Value {
    Value::Array(ps.iter().map(point_to_json).collect())
}

pub fn tensor_to_json(t: &Tensor) -> Value {
    vector_to_json(t.coords())
}

pub fn tensor_from_json(space: &MultiProjectiveSpace, v: &Value) -> Result<Tensor> {
    let t = Tensor::new(vector_from_json(space.field(), v)?)?;
    space.check_tensor(&t)?;
    Ok(t)
}

pub fn subspace_to_json(y: &SubspaceSpec) -> Value {
    Value::Array(
        y.factors()
            .iter()
            .map(|r| Value::Array(r.basis().iter().map(|b| vector_to_json(b)).collect()))
            .collect(),
    )
}

pub fn subspace_from_json(space: &MultiProjectiveSpace, v: &Value) -> Result<SubspaceSpec> {
    let bases = array(v, "subspace")?
        .iter()
        .map(|f| array(f, "subspace factor")?.iter().map(|b| vector_from_json(space.field(), b)).collect())
        .collect::<Result<Vec<Vec<Vec<Scalar>>>>>()?;
    SubspaceSpec::new(space, bases)
}

/// The common input and output document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub space: MultiProjectiveSpace,
    pub points: Vec<MppPoint>,
    pub target: Option<Tensor>,
    pub subspace: Option<SubspaceSpec>,
    pub provenance: Option<Value>,
}

impl Document {
    pub fn parse(text: &str, field: Option<FieldSpec>) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        Self::from_json(&v, field)
    }

    pub fn from_json(v: &Value, field: Option<FieldSpec>) -> Result<Self> {
        let space = space_from_json(field_of(v, "space")?, field)?;
        let points = match v.get("points") {
            Some(ps) => array(ps, "points")?.iter().map(|p| point_from_json(&space, p)).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let target = v.get("target").map(|t| tensor_from_json(&space, t)).transpose()?;
        let subspace = v.get("subspace").map(|y| subspace_from_json(&space, y)).transpose()?;
        let provenance = v.get("provenance").cloned();
        Ok(Document { space, points, target, subspace, provenance })
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("space".into(), space_to_json(&self.space));
        m.insert("points".into(), points_to_json(&self.points));
        if let Some(t) = &self.target {
            m.insert("target".into(), tensor_to_json(t));
        }
        if let Some(y) = &self.subspace {
            m.insert("subspace".into(), subspace_to_json(y));
        }
        if let Some(p) = &self.provenance {
            m.insert("provenance".into(), p.clone());
        }
        Value::Object(m)
    }

    pub fn target(&self) -> Result<&Tensor> {
        self.target.as_ref().ok_or_else(|| parse_err("missing field \"target\""))
    }

    pub fn decomposition(&self) -> Result<Decomposition> {
        Decomposition::new(self.space.clone(), self.points.clone(), self.target()?.clone())
    }

    pub fn from_decomposition(d: &Decomposition) -> Self {
        Document {
            space: d.space().clone(),
            points: d.points().to_vec(),
            target: Some(d.target().clone()),
            subspace: None,
            provenance: None,
        }
    }

    pub fn from_construction(c: &Construction) -> Self {
        Document {
            provenance: Some(serde_json::to_value(&c.provenance).expect("plain data")),
            ..Self::from_decomposition(&c.decomposition)
        }
    }
}

pub fn report_to_json(r: &IrredundancyReport) -> Value {
    json!({
        "independent": r.independent,
        "in_span": r.in_span,
        "coefficients": r.coefficients.as_deref().map(vector_to_json),
        "irredundant": r.irredundant,
    })
}

pub fn envelope_to_json(e: &Envelope) -> Value {
    json!({
        "dims": e.dims(),
        "bases": subspace_to_json(e.subspace()),
        "full": e.is_full(),
    })
}

pub fn certificate_to_json(c: &RankCertificate) -> Value {
    json!({
        "rank": c.rank,
        "minimal_decompositions": c.minimal_decompositions.iter().map(|a| points_to_json(a)).collect::<Vec<_>>(),
        "search_space_size": c.search_space_size,
    })
}

pub fn gap_profile_to_json(g: &GapProfile) -> Value {
    json!({
        "rank": g.rank,
        "ambient_dim": g.ambient_dim,
        "gaps": g.gaps(),
        "entries": g.entries.iter().map(|e| json!({
            "t": e.t,
            "nonempty": e.nonempty,
            "count": e.count,
            "witness": e.witness.as_deref().map(points_to_json),
            "searched": e.searched,
        })).collect::<Vec<_>>(),
    })
}

pub fn min_concise_to_json(m: &MinConcise) -> Value {
    json!({
        "t": m.t,
        "rank": m.rank,
        "witness": points_to_json(&m.witness),
        "non_concise_only": m.non_concise_only,
        "empty": m.empty,
        "search_space_size": m.search_space_size,
    })
}
