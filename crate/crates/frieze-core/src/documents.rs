//! JSON documents read and written by the command line tool, all tagged `"format": "frieze/1"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cutglue::{CutLabel, CutSurface, Sheet};
use crate::error::{FriezeError, Result};
use crate::frieze::{FriezeGrid, FriezeKind, LAYOUT};
use crate::mutation::{Location, MutationReport, ReportRow};
use crate::oracle::DiffReport;
use crate::surfaces::{PolygonTriangulation, PuncturedArc, PuncturedTriangulation};

pub const FORMAT: &str = "frieze/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ArcRecord {
    Diagonal { i: usize, j: usize },
    Radius { v: usize },
    Loop { v: usize },
    Peripheral { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub arcs: Vec<ArcRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    Polygon(PolygonTriangulation),
    Punctured(PuncturedTriangulation),
}

fn parse_err(e: impl std::fmt::Display) -> FriezeError {
    FriezeError::Parse(e.to_string())
}

impl TriangulationDoc {
    pub fn from_polygon(t: &PolygonTriangulation) -> Self {
        TriangulationDoc {
            format: Some(FORMAT.into()),
            surface: "polygon".into(),
            m: Some(t.size()),
            n: None,
            arcs: t.diagonals().iter().map(|&(i, j)| ArcRecord::Diagonal { i, j }).collect(),
        }
    }

    pub fn from_punctured(t: &PuncturedTriangulation) -> Self {
        TriangulationDoc {
            format: Some(FORMAT.into()),
            surface: "punctured-disk".into(),
            m: None,
            n: Some(t.size()),
            arcs: t
                .arcs()
                .iter()
                .map(|a| match *a {
                    PuncturedArc::Radius(v) => ArcRecord::Radius { v },
                    PuncturedArc::Loop(v) => ArcRecord::Loop { v },
                    PuncturedArc::Peripheral(a, b) => ArcRecord::Peripheral { a, b },
                })
                .collect(),
        }
    }

    /// Builds the triangulation without validating it.
    pub fn surface(&self) -> Result<Surface> {
        let size = self.m.or(self.n).ok_or_else(|| parse_err("missing size field m or n"))?;
        match self.surface.as_str() {
            "polygon" => {
                let d = self
                    .arcs
                    .iter()
                    .map(|a| match *a {
                        ArcRecord::Diagonal { i, j } => Ok((i, j)),
                        other => Err(parse_err(format!("{other:?} is not a polygon diagonal"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Surface::Polygon(PolygonTriangulation::new(size, d)))
            }
            "punctured-disk" => {
                let arcs = self
                    .arcs
                    .iter()
                    .map(|a| match *a {
                        ArcRecord::Radius { v } => Ok(PuncturedArc::Radius(v)),
                        ArcRecord::Loop { v } => Ok(PuncturedArc::Loop(v)),
                        ArcRecord::Peripheral { a, b } => Ok(PuncturedArc::Peripheral(a, b)),
                        ArcRecord::Diagonal { .. } => Err(parse_err("diagonal record on a punctured disk")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Surface::Punctured(PuncturedTriangulation::new(size, arcs)))
            }
            other => Err(parse_err(format!("unknown surface {other:?}"))),
        }
    }
}

pub fn parse_triangulation(text: &str) -> Result<Surface> {
    serde_json::from_str::<TriangulationDoc>(text).map_err(parse_err)?.surface()
}

/// Small entries as JSON numbers, larger ones as decimal strings.
pub fn entry_value(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn entry_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_u64().map(BigInt::from).ok_or_else(|| parse_err(format!("bad entry {n}"))),
        Value::String(s) => s.parse().map_err(parse_err),
        other => Err(parse_err(format!("bad entry {other}"))),
    }
}

pub fn frieze_to_json(f: &FriezeGrid) -> Value {
    let (kind, n) = match f.kind() {
        FriezeKind::TypeA(n) => ("type-a", n),
        FriezeKind::TypeD(n) => ("type-d", n),
    };
    let rows: Vec<Value> = f.rows().iter().map(|r| Value::Array(r.iter().map(entry_value).collect())).collect();
    json!({
        "format": FORMAT,
        "kind": kind,
        "size": n,
        "period": f.period(),
        "layout": LAYOUT,
        "rows": rows,
    })
}

pub fn frieze_from_json(v: &Value) -> Result<FriezeGrid> {
    let field = |k: &str| v.get(k).ok_or_else(|| parse_err(format!("missing field {k}")));
    if field("format")?.as_str() != Some(FORMAT) {
        return Err(parse_err("unsupported format"));
    }
    let n = field("size")?.as_u64().ok_or_else(|| parse_err("size must be an integer"))? as usize;
    let kind = match field("kind")?.as_str() {
        Some("type-a") => FriezeKind::TypeA(n),
        Some("type-d") => FriezeKind::TypeD(n),
        other => return Err(parse_err(format!("unknown kind {other:?}"))),
    };
    if field("layout")?.as_str() != Some(LAYOUT) {
        return Err(parse_err("unsupported layout"));
    }
    let rows = field("rows")?
        .as_array()
        .ok_or_else(|| parse_err("rows must be an array"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("row must be an array"))?
                .iter()
                .map(entry_from)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FriezeGrid::new(kind, rows)
}

pub fn parse_frieze(text: &str) -> Result<FriezeGrid> {
    frieze_from_json(&serde_json::from_str(text).map_err(parse_err)?)
}

fn sheet_name(s: Sheet) -> &'static str {
    match s {
        Sheet::Alpha => "alpha",
        Sheet::Beta => "beta",
    }
}

pub fn cut_to_json(c: &CutSurface) -> Result<Value> {
    let labels: Vec<Value> = c
        .labels
        .iter()
        .map(|(&(i, j), l)| match l {
            CutLabel::Cut => json!({"i": i, "j": j, "label": "cut"}),
            CutLabel::Copy { arc, sheet } => {
                json!({"i": i, "j": j, "label": "copy", "arc": arc.to_string(), "sheet": sheet_name(*sheet)})
            }
        })
        .collect();
    use crate::surfaces::Triangulated;
    Ok(json!({
        "format": FORMAT,
        "kind": "cut",
        "n": c.n,
        "radius": c.radius,
        "tilde": serde_json::to_value(TriangulationDoc::from_polygon(&c.tilde)).map_err(parse_err)?,
        "quiddity": c.tilde.quiddity()?,
        "labels": labels,
    }))
}

fn location(l: &Location) -> Value {
    match l {
        Location::Frieze(c) => json!({"row": c.row, "column": c.column}),
        Location::Node(k) => json!({"node": k}),
    }
}

pub fn report_row_to_json(r: &ReportRow) -> Value {
    let mut p = Map::new();
    for (name, v) in &r.projections {
        p.insert((*name).into(), entry_value(v));
    }
    json!({
        "location": location(&r.location),
        "old": entry_value(&r.old),
        "region": format!("{:?}", r.region),
        "projections": p,
        "delta": r.delta.to_string(),
        "new": entry_value(&r.new),
    })
}

pub fn mutation_to_json(r: &MutationReport<FriezeGrid>, trace: bool) -> Value {
    let mut out = json!({
        "format": FORMAT,
        "kind": "mutation",
        "arc": r.arc,
        "frieze": frieze_to_json(&r.result),
    });
    if trace {
        out["trace"] = Value::Array(r.rows.iter().map(report_row_to_json).collect());
    }
    out
}

pub fn diff_to_json(surface: &str, size: usize, reports: &[DiffReport]) -> Value {
    let failures = reports.iter().filter(|r| !r.pass).count();
    json!({
        "format": FORMAT,
        "kind": "diff-report",
        "surface": surface,
        "size": size,
        "checks": reports.len(),
        "failures": failures,
        "pass": failures == 0,
        "reports": reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::frieze_a;

    #[test]
    fn triangulation_round_trip() {
        let t = PuncturedTriangulation::new(4, [PuncturedArc::Radius(0), PuncturedArc::Loop(0), PuncturedArc::Peripheral(0, 2), PuncturedArc::Peripheral(2, 0)]);
        let text = serde_json::to_string(&TriangulationDoc::from_punctured(&t)).unwrap();
        assert_eq!(parse_triangulation(&text).unwrap(), Surface::Punctured(t));
        let p = PolygonTriangulation::fan(6, 0);
        let text = serde_json::to_string(&TriangulationDoc::from_polygon(&p)).unwrap();
        assert!(text.contains("\"type\":\"diagonal\""));
        assert_eq!(parse_triangulation(&text).unwrap(), Surface::Polygon(p));
    }

    #[test]
    fn frieze_round_trip_with_large_entries() {
        let f = frieze_a(&PolygonTriangulation::fan(7, 0)).unwrap();
        assert_eq!(parse_frieze(&frieze_to_json(&f).to_string()).unwrap(), f);
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(entry_value(&big), Value::String(big.to_string()));
        assert_eq!(entry_from(&entry_value(&big)).unwrap(), big);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_triangulation("{\"surface\":\"torus\",\"m\":4,\"arcs\":[]}"), Err(FriezeError::Parse(_))));
        assert!(matches!(parse_frieze("[]"), Err(FriezeError::Parse(_))));
    }
}
