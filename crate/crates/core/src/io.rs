//! JSON encodings. Rationals are `"p/q"` strings; integers that do not fit
//! in 64 bits are decimal strings.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chow::{ChowPresentation, GradedDims};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::fan::{basis_labels, ray_vector, Fan};
use crate::lattice::{ArrangementSpec, BuildingSet, DecoratedSubset};
use crate::normal::NormalComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub r: u32,
    pub n: usize,
    pub basis: Vec<String>,
    pub rays: Vec<RayJson>,
    pub cones: Vec<ConeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayJson {
    pub id: usize,
    pub subset: String,
    pub vector: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    pub ray_ids: Vec<usize>,
    /// Canonical chain text, or `null` for a nested set that is not a chain.
    pub chain: Option<String>,
}

pub fn fan_to_json(fan: &Fan) -> FanJson {
    let spec = fan.spec();
    let ids: Vec<&DecoratedSubset> = fan.rays().keys().collect();
    let rays = fan
        .rays()
        .iter()
        .enumerate()
        .map(|(id, (d, v))| RayJson {
            id,
            subset: d.to_string(),
            vector: v.coords().to_vec(),
        })
        .collect();
    let mut cones: Vec<(&Vec<DecoratedSubset>, ConeJson)> = fan
        .cones()
        .iter()
        .map(|(label, cone)| {
            let ray_ids = label
                .iter()
                .map(|d| ids.binary_search(&d).expect("cone ray is a fan ray"))
                .collect();
            let entry = ConeJson {
                dim: cone.dim(),
                ray_ids,
                chain: cone.chain().map(|c| c.to_string()),
            };
            (label, entry)
        })
        .collect();
    cones.sort_by(|a, b| a.1.dim.cmp(&b.1.dim).then_with(|| a.0.cmp(b.0)));
    FanJson {
        r: spec.r(),
        n: spec.n(),
        basis: basis_labels(spec),
        rays,
        cones: cones.into_iter().map(|(_, c)| c).collect(),
    }
}

/// Rebuilds a fan from its JSON form. The building set is taken to be the
/// set of rays; ray vectors and the basis are checked against the
/// conventions.
pub fn fan_from_json(j: &FanJson) -> Result<Fan> {
    let spec = ArrangementSpec::new(j.r, j.n)?;
    if j.basis != basis_labels(&spec) {
        return Err(Error::Parse("basis does not match (r, n)".into()));
    }
    let mut subsets = Vec::with_capacity(j.rays.len());
    for (k, ray) in j.rays.iter().enumerate() {
        if ray.id != k {
            return Err(Error::Parse(format!(
                "ray ids must be 0..{}, found {} at {k}",
                j.rays.len(),
                ray.id
            )));
        }
        let d: DecoratedSubset = ray.subset.parse()?;
        d.check(&spec)?;
        if ray_vector(&d, &spec).coords() != ray.vector.as_slice() {
            return Err(Error::Parse(format!("ray {} has vector {:?}", ray.subset, ray.vector)));
        }
        subsets.push(d);
    }
    let g = BuildingSet::validated(&spec, subsets.iter().cloned())?;
    let mut labels = Vec::with_capacity(j.cones.len());
    for cone in &j.cones {
        let label = cone
            .ray_ids
            .iter()
            .map(|&id| {
                subsets
                    .get(id)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("unknown ray id {id}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if label.len() != cone.dim {
            return Err(Error::Parse(format!(
                "cone of dim {} lists {} rays",
                cone.dim,
                label.len()
            )));
        }
        labels.push(label);
    }
    Ok(Fan::from_cones(&spec, g, labels))
}

pub fn parse_fan_json(text: &str) -> Result<Fan> {
    let j: FanJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    fan_from_json(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalComplexJson {
    pub r: u32,
    pub n: usize,
    pub cells: Vec<CellJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub union_extremes: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub chain: String,
    pub h_rep: Vec<ConstraintJson>,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub normal: Vec<String>,
    pub bound: String,
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn normal_complex_to_json(c: &NormalComplex, extremes: Option<&[Vec<Rational>]>) -> NormalComplexJson {
    NormalComplexJson {
        r: c.spec().r(),
        n: c.spec().n(),
        cells: c
            .cells()
            .iter()
            .map(|p| CellJson {
                chain: p.label.to_string(),
                h_rep: p
                    .h_rep
                    .iter()
                    .map(|h| ConstraintJson {
                        normal: rational_strings(&h.normal),
                        bound: format_rational(&h.bound),
                    })
                    .collect(),
                vertices: p.v_rep.iter().map(|v| rational_strings(v)).collect(),
            })
            .collect(),
        union_extremes: extremes.map(|e| e.iter().map(|v| rational_strings(v)).collect()),
    }
}

/// A number when it fits in 64 bits, a decimal string otherwise.
pub fn big_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn presentation_json(p: &ChowPresentation) -> Value {
    let gens: Vec<String> = p.generators().iter().map(ToString::to_string).collect();
    let relations: Vec<Value> = p
        .linear_relations()
        .iter()
        .map(|rel| {
            json!({
                "factor": rel.factor,
                "a": rel.a,
                "b": rel.b,
                "terms": rel.terms.iter().map(|&(g, c)| json!([gens[g], c])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "generators": gens,
        "linear_relations": relations,
        "independent_relations": p.independent_relation_count(),
        "monomial_relations": "D_I * D_J = 0 for incomparable I, J",
    })
}

/// Rows `{k, closed_form, oracle, match}`; `oracle` is `null` when it was
/// not run.
pub fn betti_table_json(closed: &GradedDims, oracle: Option<&GradedDims>) -> Value {
    let rows: Vec<Value> = closed
        .dims()
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let o = oracle.map(|o| &o.dims()[k]);
            json!({
                "k": k,
                "closed_form": big_json(b),
                "oracle": o.map_or(Value::Null, big_json),
                "match": o.map_or(Value::Null, |o| json!(o == b)),
            })
        })
        .collect();
    Value::Array(rows)
}
