//! JSON interchange formats for fields, elements, invariants and surfaces.
//!
//! Every rational is a string `"p/q"` or `"p"`; no binary floats appear.

use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ApError, Result};
use crate::exactfield::{Field, FieldElement, NumberField, QPoly, Rational};
use crate::surface::{EdgeGluing, EdgeRef, Polygon, TranslationSurface};
use crate::wedge::{mat2, Mat2, PlanarVector, WedgeElement};

/// Environment variable bounding numerator and denominator sizes.
pub const MAX_BITS_VAR: &str = "AP_MAX_DENOM_BITS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFile {
    pub minpoly: Vec<String>,
    pub root_interval: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JFile {
    pub field: FieldFile,
    pub coords: Vec<Vec<String>>,
}

pub type ElementFile = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub field: FieldFile,
    pub polygons: Vec<Vec<[ElementFile; 2]>>,
    pub gluings: Vec<[[usize; 2]; 2]>,
}

/// A 2×2 matrix over the field of an accompanying invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldFile>,
    pub matrix: [[ElementFile; 2]; 2],
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| ApError::InvalidInput(format!("bad rational {s:?}")))
}

pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

/// Bit cap from the environment, if set.
pub fn max_bits() -> Result<Option<u64>> {
    match std::env::var(MAX_BITS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| ApError::InvalidInput(format!("{MAX_BITS_VAR} must be a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

/// Fails if any rational exceeds `bits` in numerator or denominator size.
pub fn check_bits<'a>(values: impl IntoIterator<Item = &'a Rational>, bits: Option<u64>) -> Result<()> {
    let Some(b) = bits else { return Ok(()) };
    for q in values {
        if q.numer().bits() > b || q.denom().bits() > b {
            return Err(ApError::InvalidInput(format!("rational exceeds {MAX_BITS_VAR}={b}")));
        }
    }
    Ok(())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn field_to_file(f: &NumberField) -> FieldFile {
    let (lo, hi) = f.root_interval();
    FieldFile {
        minpoly: strings(f.minpoly().coeffs()),
        root_interval: [rational_string(&lo), rational_string(&hi)],
        name: f.name().map(str::to_string),
    }
}

pub fn field_from_file(ff: &FieldFile) -> Result<Field> {
    let p = QPoly::new(parse_all(&ff.minpoly)?);
    let lo = parse_rational(&ff.root_interval[0])?;
    let hi = parse_rational(&ff.root_interval[1])?;
    let f = NumberField::new(p, lo, hi)?;
    Ok(match &ff.name {
        Some(n) => f.named(n),
        None => f,
    })
}

pub fn element_to_file(x: &FieldElement) -> ElementFile {
    strings(x.coeffs())
}

/// Accepts arrays shorter than the degree; missing coefficients are zero.
pub fn element_from_file(f: &Field, e: &ElementFile) -> Result<FieldElement> {
    let mut c = parse_all(e)?;
    if c.len() > f.degree() {
        if c[f.degree()..].iter().any(|q| !q.is_zero()) {
            return Err(ApError::InvalidInput("element has too many coefficients".into()));
        }
        c.truncate(f.degree());
    }
    c.resize(f.degree(), Rational::zero());
    Ok(FieldElement::new(f, c))
}

pub fn j_to_file(j: &WedgeElement) -> JFile {
    JFile { field: field_to_file(j.field()), coords: j.coords().iter().map(|r| strings(r)).collect() }
}

pub fn j_from_file(jf: &JFile) -> Result<WedgeElement> {
    let f = field_from_file(&jf.field)?;
    let coords = jf.coords.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
    WedgeElement::from_coords(&f, coords)
}

pub fn surface_to_file(s: &TranslationSurface) -> SurfaceFile {
    SurfaceFile {
        field: field_to_file(s.field()),
        polygons: s
            .polygons()
            .iter()
            .map(|p| p.vertices().iter().map(|v| [element_to_file(&v.x), element_to_file(&v.y)]).collect())
            .collect(),
        gluings: s
            .gluings()
            .iter()
            .map(|g| [[g.0.polygon, g.0.edge], [g.1.polygon, g.1.edge]])
            .collect(),
    }
}

/// Parses and validates a surface.
pub fn surface_from_file(sf: &SurfaceFile) -> Result<TranslationSurface> {
    let f = field_from_file(&sf.field)?;
    let polygons = sf
        .polygons
        .iter()
        .map(|p| {
            let v = p
                .iter()
                .map(|[x, y]| PlanarVector::new(element_from_file(&f, x)?, element_from_file(&f, y)?))
                .collect::<Result<Vec<_>>>()?;
            Polygon::new(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let gluings = sf
        .gluings
        .iter()
        .map(|[[p, e], [q, g]]| EdgeGluing(EdgeRef::new(*p, *e), EdgeRef::new(*q, *g)))
        .collect();
    TranslationSurface::checked(&f, polygons, gluings)
}

pub fn matrix_from_file(f: &Field, mf: &MatrixFile) -> Result<Mat2> {
    let e = |i: usize, k: usize| element_from_file(f, &mf.matrix[i][k]);
    Ok(mat2(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?))
}

pub fn matrix_to_file(m: &Mat2) -> MatrixFile {
    let e = |i: usize, k: usize| element_to_file(&m[i][k]);
    MatrixFile { field: Some(field_to_file(m[0][0].field())), matrix: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
}

pub fn surface_rationals(s: &TranslationSurface) -> Vec<Rational> {
    s.polygons()
        .iter()
        .flat_map(|p| p.vertices().iter())
        .flat_map(|v| v.x.coeffs().iter().chain(v.y.coeffs()).cloned())
        .collect()
}

pub fn j_rationals(j: &WedgeElement) -> Vec<Rational> {
    j.coords().iter().flatten().cloned().collect()
}

/// Parses a polynomial such as `x^3 - 3/2*x + 1` in a single variable.
pub fn parse_poly(s: &str) -> Result<QPoly> {
    let bad = || ApError::InvalidInput(format!("bad polynomial {s:?}"));
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(bad());
    }
    let mut var: Option<char> = None;
    let mut coeffs: Vec<Rational> = vec![];
    let mut rest = src.as_str();
    while !rest.is_empty() {
        let mut sign = Rational::from_integer(1.into());
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        }
        let end = rest
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map_or(rest.len(), |(i, _)| i);
        let term = &rest[..end];
        rest = &rest[end..];
        let pos = term.find(|c: char| c.is_alphabetic());
        let (coef, power) = match pos {
            None => (parse_rational(term).map_err(|_| bad())?, 0usize),
            Some(i) => {
                let v = term[i..].chars().next().ok_or_else(bad)?;
                if *var.get_or_insert(v) != v {
                    return Err(bad());
                }
                let head = term[..i].trim_end_matches('*');
                let c = if head.is_empty() { Rational::from_integer(1.into()) } else { parse_rational(head).map_err(|_| bad())? };
                let tail = &term[i + v.len_utf8()..];
                let p = match tail.strip_prefix('^') {
                    Some(e) => e.parse().map_err(|_| bad())?,
                    None if tail.is_empty() => 1,
                    None => return Err(bad()),
                };
                (c, p)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        coeffs[power] += sign * coef;
    }
    Ok(QPoly::new(coeffs))
}

/// Parses an element written as a polynomial in the generator.
pub fn parse_element(f: &Field, s: &str) -> Result<FieldElement> {
    let p = parse_poly(s)?;
    Ok(FieldElement::from_poly(f, &p))
}
