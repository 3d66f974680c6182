//! JSON file formats. Rationals are written as `"num/den"` strings; plain
//! integers (as strings or JSON numbers) are accepted on input.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{Point, Scalar};
use crate::model::{Color, Coloring, HalfPlane, Instance, Side};
use crate::verify::Violation;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {0:?}")]
    Rational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("unknown side {0:?} (expected \"upper\" or \"lower\")")]
    Side(String),
    #[error("unknown color {0:?} (expected \"blue\" or \"red\")")]
    Color(String),
}

pub fn parse_scalar(text: &str) -> Result<Scalar, IoError> {
    let t = text.trim();
    let parse_int = |s: &str| -> Result<BigInt, IoError> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(IoError::Rational(text.to_string()));
        }
        s.parse::<BigInt>().map_err(|_| IoError::Rational(text.to_string()))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(IoError::ZeroDenominator(text.to_string()));
            }
            Ok(Scalar::new(num, den))
        }
        None => Ok(Scalar::from_integer(parse_int(t)?)),
    }
}

pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Text(String),
    Number(serde_json::Number),
}

impl ScalarRepr {
    fn value(&self) -> Result<Scalar, IoError> {
        match self {
            ScalarRepr::Text(s) => parse_scalar(s),
            ScalarRepr::Number(n) => parse_scalar(&n.to_string()),
        }
    }
}

#[derive(Deserialize)]
struct HalfPlaneIn {
    a: ScalarRepr,
    b: ScalarRepr,
    side: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceIn {
    halfplanes: Vec<HalfPlaneIn>,
}

#[derive(Serialize)]
struct HalfPlaneOut {
    a: String,
    b: String,
    side: &'static str,
}

#[derive(Serialize)]
struct InstanceOut {
    halfplanes: Vec<HalfPlaneOut>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringDoc {
    colors: Vec<String>,
}

#[derive(Serialize)]
struct PointOut {
    x: String,
    y: String,
}

#[derive(Serialize)]
struct ViolationOut {
    witness: PointOut,
    covering: Vec<usize>,
    color: &'static str,
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Upper => "upper",
        Side::Lower => "lower",
    }
}

pub fn parse_instance(json: &str) -> Result<Instance, IoError> {
    let doc: InstanceIn = serde_json::from_str(json)?;
    let mut halfplanes = Vec::with_capacity(doc.halfplanes.len());
    for h in doc.halfplanes {
        let side = match h.side.as_str() {
            "upper" => Side::Upper,
            "lower" => Side::Lower,
            other => return Err(IoError::Side(other.to_string())),
        };
        halfplanes.push(HalfPlane::new(h.a.value()?, h.b.value()?, side));
    }
    Ok(Instance::new(halfplanes))
}

pub fn instance_to_json(inst: &Instance) -> String {
    let doc = InstanceOut {
        halfplanes: inst
            .halfplanes
            .iter()
            .map(|h| HalfPlaneOut { a: format_scalar(&h.a), b: format_scalar(&h.b), side: side_name(h.side) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn parse_coloring(json: &str) -> Result<Coloring, IoError> {
    let doc: ColoringDoc = serde_json::from_str(json)?;
    let colors = doc
        .colors
        .into_iter()
        .map(|c| match c.as_str() {
            "blue" => Ok(Color::Blue),
            "red" => Ok(Color::Red),
            _ => Err(IoError::Color(c)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Coloring::new(colors))
}

pub fn coloring_to_json(c: &Coloring) -> String {
    let doc = ColoringDoc { colors: c.colors.iter().map(|c| c.name().to_string()).collect() };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}

fn point_out(p: &Point) -> PointOut {
    PointOut { x: format_scalar(&p.x), y: format_scalar(&p.y) }
}

pub fn violation_to_json(v: &Violation) -> String {
    let doc = ViolationOut { witness: point_out(&v.witness), covering: v.covering.clone(), color: v.color.name() };
    serde_json::to_string(&doc).expect("serializable") + "\n"
}
