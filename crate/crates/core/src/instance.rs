//! JSON instance files: a point set or a partition, given as explicit point
//! lists or through generators.
//!
//! ```json
//! {"dim": 2, "A": [[0,0],[1,1]], "B": [[1,0],[0,1]]}
//! {"dim": 3, "simplex": [[0,0,0],[5,0,0],[0,4,0],[0,0,3]]}
//! {"dim": 2, "S": {"box": [[0,0],[2,2]], "minus": [[1,1]]}}
//! {"dim": 2, "S": [[0,0],[1,0],[2,0]], "A": [[0,0]]}
//! {"dim": 2, "window": {"radius": 20, "rule": "lex-quadrant"}}
//! ```
//!
//! Any point list may be replaced by a generator object: `{"points": [...]}`,
//! `{"simplex": [...]}` (lattice points of the hull) or `{"box": [lo, hi]}`,
//! each optionally with `"minus": [...]`. When `S` and `A` are given, `B`
//! defaults to `S \ A`.

use serde_json::{Map, Value};
use thiserror::Error;

use crate::conditions::Partition;
use crate::error::{GeometryError, PartitionError};
use crate::geometry::{box_points, lattice_points_in_conv, IntPoint, PointSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("expected a partition (A and B), found a single point set")]
    NotAPartition,
}

fn field_err(field: &str, message: impl Into<String>) -> InstanceError {
    InstanceError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

fn geometry_err(field: &str, e: GeometryError) -> InstanceError {
    field_err(field, e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Set(PointSet),
    Partition(Partition),
}

impl Instance {
    pub fn dim(&self) -> usize {
        match self {
            Instance::Set(s) => s.dim(),
            Instance::Partition(p) => p.dim(),
        }
    }

    /// `S`, or `A ∪ B` for a partition.
    pub fn support(&self) -> PointSet {
        match self {
            Instance::Set(s) => s.clone(),
            Instance::Partition(p) => p.support(),
        }
    }

    pub fn partition(&self) -> Result<&Partition, InstanceError> {
        match self {
            Instance::Partition(p) => Ok(p),
            Instance::Set(_) => Err(InstanceError::NotAPartition),
        }
    }
}

/// Rule deciding membership in `A` for a windowed infinite example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowRule {
    /// `A = {x | x >=_lex 0}`: in the plane `{x1 > 0} ∪ {x1 = 0, x2 >= 0}`.
    LexQuadrant,
    /// `A = {(x1, x2) | x2 >= √2 · x1}`.
    AboveSqrt2Line,
}

impl WindowRule {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "lex-quadrant" => Some(WindowRule::LexQuadrant),
            "above-sqrt2-line" => Some(WindowRule::AboveSqrt2Line),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WindowRule::LexQuadrant => "lex-quadrant",
            WindowRule::AboveSqrt2Line => "above-sqrt2-line",
        }
    }

    pub fn in_a(self, x: &IntPoint) -> bool {
        match self {
            WindowRule::LexQuadrant => x.coords().iter().find(|&&c| c != 0).is_none_or(|&c| c > 0),
            WindowRule::AboveSqrt2Line => above_sqrt2_line(x[0], x[1]),
        }
    }
}

/// `x2 >= √2 · x1`, decided exactly by sign cases and squaring.
pub fn above_sqrt2_line(x1: i64, x2: i64) -> bool {
    let (a, b) = (x1 as i128, x2 as i128);
    match (a > 0, b >= 0) {
        // x2 >= 0 >= √2 x1
        (false, true) => true,
        // both sides positive: x2² >= 2 x1²
        (true, true) => b * b >= 2 * a * a,
        // x2 < 0 < √2 x1
        (true, false) => false,
        // both negative: |x2| <= √2 |x1|
        (false, false) => b * b <= 2 * a * a,
    }
}

/// The partition of `[-radius, radius]^dim` induced by a window rule.
pub fn window_partition(dim: usize, radius: i64, rule: WindowRule) -> Result<Partition, InstanceError> {
    if rule == WindowRule::AboveSqrt2Line && dim != 2 {
        return Err(field_err("window.rule", "above-sqrt2-line needs dim 2"));
    }
    if radius < 1 {
        return Err(field_err("window.radius", "radius must be positive"));
    }
    let lo = vec![-radius; dim];
    let hi = vec![radius; dim];
    let (a, b): (Vec<IntPoint>, Vec<IntPoint>) = box_points(&lo, &hi).into_iter().partition(|x| rule.in_a(x));
    let a = PointSet::new(dim, a).map_err(|e| geometry_err("window", e))?;
    let b = PointSet::new(dim, b).map_err(|e| geometry_err("window", e))?;
    Ok(Partition::new(a, b)?)
}

fn parse_int(v: &Value, field: &str) -> Result<i64, InstanceError> {
    v.as_i64().ok_or_else(|| field_err(field, format!("expected an integer in the i64 range, found {v}")))
}

fn parse_point(v: &Value, field: &str, dim: usize) -> Result<IntPoint, InstanceError> {
    let arr = v.as_array().ok_or_else(|| field_err(field, "expected a list of coordinates"))?;
    if arr.len() != dim {
        return Err(field_err(field, format!("expected {dim} coordinates, found {}", arr.len())));
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(i, c)| parse_int(c, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoint::new(coords))
}

fn parse_point_list(v: &Value, field: &str, dim: usize) -> Result<Vec<IntPoint>, InstanceError> {
    let arr = v.as_array().ok_or_else(|| field_err(field, "expected a list of points"))?;
    arr.iter()
        .enumerate()
        .map(|(i, p)| parse_point(p, &format!("{field}[{i}]"), dim))
        .collect()
}

fn parse_simplex(v: &Value, field: &str, dim: usize) -> Result<PointSet, InstanceError> {
    let vertices = parse_point_list(v, field, dim)?;
    let vs = PointSet::new(dim, vertices).map_err(|e| geometry_err(field, e))?;
    lattice_points_in_conv(&vs).map_err(|e| geometry_err(field, e))
}

fn parse_box(v: &Value, field: &str, dim: usize) -> Result<PointSet, InstanceError> {
    let corners = parse_point_list(v, field, dim)?;
    let [lo, hi] = corners.as_slice() else {
        return Err(field_err(field, "expected [lo, hi]"));
    };
    if lo.coords().iter().zip(hi.coords()).any(|(l, h)| l > h) {
        return Err(field_err(field, "lower corner exceeds upper corner"));
    }
    PointSet::new(dim, box_points(lo.coords(), hi.coords())).map_err(|e| geometry_err(field, e))
}

/// A point list or a generator object.
fn parse_points(v: &Value, field: &str, dim: usize) -> Result<PointSet, InstanceError> {
    match v {
        Value::Array(_) => PointSet::new(dim, parse_point_list(v, field, dim)?).map_err(|e| geometry_err(field, e)),
        Value::Object(obj) => {
            let known = ["points", "simplex", "box", "minus"];
            if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
                return Err(field_err(field, format!("unknown generator key `{k}`")));
            }
            let generators: Vec<&str> = ["points", "simplex", "box"]
                .into_iter()
                .filter(|k| obj.contains_key(*k))
                .collect();
            let [gen] = generators.as_slice() else {
                return Err(field_err(field, "expected exactly one of `points`, `simplex`, `box`"));
            };
            let sub = format!("{field}.{gen}");
            let base = match *gen {
                "points" => PointSet::new(dim, parse_point_list(&obj[*gen], &sub, dim)?)
                    .map_err(|e| geometry_err(&sub, e))?,
                "simplex" => parse_simplex(&obj[*gen], &sub, dim)?,
                _ => parse_box(&obj[*gen], &sub, dim)?,
            };
            match obj.get("minus") {
                None => Ok(base),
                Some(m) => {
                    let sub = format!("{field}.minus");
                    let minus = PointSet::new(dim, parse_point_list(m, &sub, dim)?).map_err(|e| geometry_err(&sub, e))?;
                    Ok(base.difference(&minus))
                }
            }
        }
        _ => Err(field_err(field, "expected a list of points or a generator object")),
    }
}

fn parse_window(v: &Value, dim: usize) -> Result<Partition, InstanceError> {
    let obj = v.as_object().ok_or_else(|| field_err("window", "expected an object"))?;
    let radius = parse_int(obj.get("radius").ok_or_else(|| field_err("window.radius", "missing"))?, "window.radius")?;
    let rule_name = obj
        .get("rule")
        .and_then(Value::as_str)
        .ok_or_else(|| field_err("window.rule", "expected a rule name"))?;
    let rule = WindowRule::parse(rule_name)
        .ok_or_else(|| field_err("window.rule", format!("unknown rule `{rule_name}`")))?;
    window_partition(dim, radius, rule)
}

/// Parses an instance from a JSON value.
pub fn instance_from_value(v: &Value) -> Result<Instance, InstanceError> {
    let obj: &Map<String, Value> = v.as_object().ok_or_else(|| field_err("<root>", "expected an object"))?;
    let known = ["dim", "S", "A", "B", "simplex", "box", "window", "id", "note"];
    if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(field_err(k, "unknown field"));
    }
    let dim = obj.get("dim").ok_or_else(|| field_err("dim", "missing"))?;
    let dim = dim
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| field_err("dim", "expected a positive integer"))? as usize;

    if let Some(w) = obj.get("window") {
        return Ok(Instance::Partition(parse_window(w, dim)?));
    }
    let s = match (obj.get("S"), obj.get("simplex"), obj.get("box")) {
        (Some(v), None, None) => Some(parse_points(v, "S", dim)?),
        (None, Some(v), None) => Some(parse_simplex(v, "simplex", dim)?),
        (None, None, Some(v)) => Some(parse_box(v, "box", dim)?),
        (None, None, None) => None,
        _ => return Err(field_err("S", "give at most one of `S`, `simplex`, `box`")),
    };
    let a = obj.get("A").map(|v| parse_points(v, "A", dim)).transpose()?;
    let b = obj.get("B").map(|v| parse_points(v, "B", dim)).transpose()?;
    match (s, a, b) {
        (Some(s), None, None) => {
            if s.is_empty() {
                return Err(field_err("S", "point set is empty"));
            }
            Ok(Instance::Set(s))
        }
        (s, Some(a), Some(b)) => {
            if let Some(s) = s {
                if let Some(p) = a.iter().chain(b.iter()).find(|p| !s.contains(p)) {
                    return Err(field_err("S", format!("point {p} of A or B is not in S")));
                }
                if s.len() != a.len() + b.len() {
                    return Err(field_err("S", "S is not the union of A and B"));
                }
            }
            Ok(Instance::Partition(Partition::new(a, b)?))
        }
        (Some(s), Some(a), None) => {
            if let Some(p) = a.iter().find(|p| !s.contains(p)) {
                return Err(field_err("A", format!("point {p} is not in S")));
            }
            Ok(Instance::Partition(Partition::from_subset(&s, a)?))
        }
        (Some(s), None, Some(b)) => {
            if let Some(p) = b.iter().find(|p| !s.contains(p)) {
                return Err(field_err("B", format!("point {p} is not in S")));
            }
            Ok(Instance::Partition(Partition::new(s.difference(&b), b)?))
        }
        (None, _, _) => Err(field_err("S", "give `S` (or a generator), or both `A` and `B`")),
    }
}

/// Parses instance text, reporting JSON syntax errors with line and column.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    instance_from_value(&v)
}

/// Serializes a partition in the instance format.
pub fn partition_to_value(p: &Partition) -> Value {
    let list = |s: &PointSet| Value::Array(s.iter().map(|x| serde_json::json!(x.coords())).collect());
    serde_json::json!({"dim": p.dim(), "A": list(p.a()), "B": list(p.b())})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_partition() {
        let inst = parse_instance(r#"{"dim":2, "A":[[0,0],[1,1]], "B":[[1,0],[0,1]]}"#).unwrap();
        let p = inst.partition().unwrap();
        assert_eq!(p.a().len(), 2);
        assert_eq!(p.b().len(), 2);
    }

    #[test]
    fn simplex_shorthand() {
        let inst = parse_instance(r#"{"dim":3, "simplex":[[0,0,0],[5,0,0],[0,4,0],[0,0,3]]}"#).unwrap();
        let Instance::Set(s) = inst else { panic!() };
        assert!(s.contains(&IntPoint::from([2, 1, 1])));
        assert!(s.contains(&IntPoint::from([1, 3, 0])));
    }

    #[test]
    fn overlap_is_rejected() {
        let e = parse_instance(r#"{"dim":1, "A":[[0]], "B":[[0]]}"#).unwrap_err();
        assert_eq!(e, InstanceError::Partition(PartitionError::Overlap(IntPoint::from([0]))));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = parse_instance(r#"{"dim":2, "A":[[0,0],[1]], "B":[[1,0]]}"#).unwrap_err();
        assert_eq!(e.to_string(), "field `A[1]`: expected 2 coordinates, found 1");
        let e = parse_instance("{\"dim\":2,\n \"A\": [[0,0],}").unwrap_err();
        assert!(matches!(e, InstanceError::Syntax { line: 2, .. }));
        let e = parse_instance(r#"{"dim":2, "S":{"box":[[0,0],[1,1]],"cube":1}}"#).unwrap_err();
        assert!(e.to_string().contains("cube"));
    }

    #[test]
    fn subset_and_generators() {
        let inst = parse_instance(r#"{"dim":2, "S":{"box":[[0,0],[2,2]], "minus":[[1,1]]}, "A":[[0,0],[0,1]]}"#).unwrap();
        let p = inst.partition().unwrap();
        assert_eq!(p.b().len(), 6);
        assert!(!p.support().contains(&IntPoint::from([1, 1])));
    }

    #[test]
    fn sqrt2_side_test() {
        assert!(above_sqrt2_line(0, 0));
        assert!(above_sqrt2_line(5, 8));
        assert!(!above_sqrt2_line(5, 7));
        assert!(above_sqrt2_line(-5, -7));
        assert!(!above_sqrt2_line(-5, -8));
        assert!(above_sqrt2_line(-3, 1));
        assert!(!above_sqrt2_line(3, -1));
    }

    #[test]
    fn windows() {
        let p = window_partition(2, 3, WindowRule::LexQuadrant).unwrap();
        assert_eq!(p.a().len() + p.b().len(), 49);
        assert!(p.a().contains(&IntPoint::from([0, 0])));
        assert!(p.b().contains(&IntPoint::from([0, -1])));
        let inst = parse_instance(r#"{"dim":2,"window":{"radius":2,"rule":"above-sqrt2-line"}}"#).unwrap();
        assert_eq!(inst.support().len(), 25);
    }
}
