//! Right-angled billiard tables and their four-fold unfoldings.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::jk::{eigenvector, minpoly_dual_bases, IntegralSymmetricInput};
use crate::error::{ApError, Result};
use crate::exactfield::{rat, rational_between, Field, FieldElement, Rational};
use crate::surface::{orient, EdgeGluing, Polygon, TranslationSurface};
use crate::wedge::PlanarVector;

/// A rectangle cut from the top edge of a host column.
#[derive(Clone, Debug)]
pub struct Notch {
    pub offset: FieldElement,
    pub width: FieldElement,
    pub depth: FieldElement,
}

/// A column of the staircase, bottom-aligned at `y = 0`.
#[derive(Clone, Debug)]
pub struct Column {
    pub width: FieldElement,
    pub height: FieldElement,
    /// Notches ordered left to right, offsets relative to the column's left side.
    pub notches: Vec<Notch>,
}

fn pt(x: &FieldElement, y: &FieldElement) -> PlanarVector {
    PlanarVector::new(x.clone(), y.clone()).expect("same field")
}

/// Boundary of the staircase of columns, with repeated and collinear vertices removed.
pub fn staircase_polygon(field: &Field, columns: &[Column]) -> Result<Polygon> {
    if columns.is_empty() {
        return Err(ApError::InvalidInput("no columns".into()));
    }
    let zero = FieldElement::zero(field);
    let mut xs = vec![zero.clone()];
    for c in columns {
        let last = xs.last().expect("nonempty");
        xs.push(last + &c.width);
    }
    let mut v = vec![pt(&zero, &zero), pt(&xs[columns.len()], &zero)];
    for (k, c) in columns.iter().enumerate().rev() {
        let x0 = &xs[k];
        let h = &c.height;
        v.push(pt(&(x0 + &c.width), h));
        for n in c.notches.iter().rev() {
            let a = x0 + &n.offset;
            let b = &a + &n.width;
            let low = h - &n.depth;
            v.push(pt(&b, h));
            v.push(pt(&b, &low));
            v.push(pt(&a, &low));
            v.push(pt(&a, h));
        }
        v.push(pt(x0, h));
    }
    v.dedup();
    if v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    loop {
        let n = v.len();
        let drop = (0..n).find(|&i| orient(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]) == 0);
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => break,
        }
    }
    Polygon::new(v)
}

fn reflect(p: &PlanarVector, g: usize) -> PlanarVector {
    let x = if g & 1 == 1 { -&p.x } else { p.x.clone() };
    let y = if g & 2 == 2 { -&p.y } else { p.y.clone() };
    pt(&x, &y)
}

/// Unfolding of a polygon with axis-parallel sides by the Klein four-group of reflections.
pub fn unfold4(field: &Field, polygon: &Polygon) -> Result<TranslationSurface> {
    let n = polygon.len();
    let verts = polygon.vertices();
    let mut copies = Vec::with_capacity(4);
    for g in 0..4usize {
        let reflected = g == 1 || g == 2;
        let w = (0..n)
            .map(|k| {
                let src = if reflected { (n - k) % n } else { k };
                reflect(&verts[src], g)
            })
            .collect();
        copies.push(Polygon::new(w)?);
    }
    let copy_edge = |g: usize, e: usize| if g == 1 || g == 2 { n - 1 - e } else { e };
    let mut gluings = Vec::with_capacity(2 * n);
    for e in 0..n {
        let d = polygon.edge(e);
        let flip = match (d.x.is_zero(), d.y.is_zero()) {
            (true, false) => 1,
            (false, true) => 2,
            _ => return Err(ApError::InvalidInput("edges must be axis-parallel".into())),
        };
        for g in 0..4usize {
            let h = g ^ flip;
            if g < h {
                gluings.push(EdgeGluing::new(g, copy_edge(g, e), h, copy_edge(h, e)));
            }
        }
    }
    TranslationSurface::checked(field, copies, gluings)
}

/// Unfolded staircase of squares with side lengths given by the Perron eigenvector.
pub fn square_tiled_surface(input: &IntegralSymmetricInput) -> Result<TranslationSurface> {
    let a = &input.matrix;
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(ApError::InvalidInput("matrix must be square".into()));
    }
    if (0..n).any(|i| (0..n).any(|j| a[i][j] != a[j][i])) {
        return Err(ApError::NotSymmetric);
    }
    let u = eigenvector(a, &input.lambda)?;
    if u.iter().any(|x| x.is_zero()) {
        return Err(ApError::NonPositiveEntry);
    }
    let field = input.lambda.field();
    let columns: Vec<Column> = u
        .iter()
        .map(|x| {
            let s = if x.sign() < 0 { -x } else { x.clone() };
            Column { width: s.clone(), height: s, notches: vec![] }
        })
        .collect();
    unfold4(field, &staircase_polygon(field, &columns)?)
}

fn abs(x: &FieldElement) -> FieldElement {
    if x.sign() < 0 {
        -x
    } else {
        x.clone()
    }
}

fn mid(x: &FieldElement, bits: u32) -> Rational {
    let (lo, hi) = x.enclosure(bits);
    (lo + hi) / rat(2)
}

/// Columns realizing `Σ [θ^j, 0] ∧ [0, β_j]` with `β` the trace dual of the power basis.
pub fn rectangle_table_columns(k: &Field) -> Result<Vec<Column>> {
    let (alpha, beta) = minpoly_dual_bases(k)?;
    let mut hosts = vec![];
    let mut negs = vec![];
    for (a, b) in alpha.iter().zip(&beta) {
        if b.is_zero() {
            continue;
        }
        let term = (abs(a), abs(b));
        if a.sign() * b.sign() > 0 {
            hosts.push(term);
        } else {
            negs.push(term);
        }
    }
    if hosts.is_empty() {
        return Err(ApError::ZeroArea);
    }
    let mut bits = 32;
    loop {
        if let Some(cols) = try_columns(k, &hosts, &negs, bits)? {
            return Ok(cols);
        }
        bits *= 2;
        if bits > 4096 {
            return Err(ApError::InvalidInput("could not place notches".into()));
        }
    }
}

fn try_columns(
    k: &Field,
    hosts: &[(FieldElement, FieldElement)],
    negs: &[(FieldElement, FieldElement)],
    bits: u32,
) -> Result<Option<Vec<Column>>> {
    let mut cols: Vec<Column> = hosts
        .iter()
        .map(|(w, h)| Column { width: w.clone(), height: h.clone(), notches: vec![] })
        .collect();
    if negs.is_empty() {
        return Ok(Some(cols));
    }
    let zero = FieldElement::zero(k);
    let areas: Vec<FieldElement> = hosts.iter().map(|(w, h)| w * h).collect();
    let pos = areas.iter().fold(zero.clone(), |s, a| &s + a);
    let neg = negs.iter().fold(zero.clone(), |s, (w, h)| &s + &(w * h));
    let rho_hi = (&neg * &pos.inverse()?).enclosure(bits).1;
    if rho_hi >= Rational::one() {
        return Ok(None);
    }
    let sigma = rational_between(&rho_hi, &Rational::one());
    let c1 = (Rational::one() + sigma) / rat(2);
    let c2 = (Rational::one() + &c1) / rat(2);
    let pinv = pos.inverse()?;
    let mut r: Vec<Rational> = areas[..areas.len() - 1].iter().map(|a| mid(&(a * &pinv), bits)).collect();
    let rest = Rational::one() - r.iter().fold(Rational::zero(), |s, x| s + x);
    r.push(rest);
    if r.iter().any(|x| !x.is_positive()) {
        return Ok(None);
    }
    for (ci, col) in cols.iter_mut().enumerate() {
        let hinv = col.height.inverse()?;
        let mut pieces = vec![];
        for (w, h) in negs {
            let x = h * &hinv;
            let (lo, hi) = x.enclosure(bits);
            let t_lo = hi / &c2;
            let t_hi = lo / &c1;
            if t_lo >= t_hi {
                return Ok(None);
            }
            let t = rational_between(&t_lo, &t_hi);
            let width = w.scale(&(&t * &r[ci]));
            let depth = h.scale(&t.recip());
            if depth.cmp_value(&col.height) != Ordering::Less {
                return Ok(None);
            }
            pieces.push((width, depth));
        }
        let used = pieces.iter().fold(zero.clone(), |s, (w, _)| &s + w);
        if used.cmp_value(&col.width.scale(&c1)) != Ordering::Less {
            return Ok(None);
        }
        let gap = (&col.width - &used).scale(&Rational::from_integer((pieces.len() as i64 + 1).into()).recip());
        let mut offset = gap.clone();
        for (width, depth) in pieces {
            let next = &(&offset + &width) + &gap;
            col.notches.push(Notch { offset, width, depth });
            offset = next;
        }
    }
    Ok(Some(cols))
}

/// Unfolded right-angled table whose invariant is `8 J_K`.
pub fn rectangle_table_surface(k: &Field) -> Result<TranslationSurface> {
    let cols = rectangle_table_columns(k)?;
    unfold4(k, &staircase_polygon(k, &cols)?)
}

/// Unit square with an `α × β` rectangle moved from its bottom-left to its top-left corner, unfolded.
pub fn eh_ne_ah_example(alpha: &FieldElement, beta: &FieldElement) -> Result<TranslationSurface> {
    let f = alpha.field();
    if !alpha.same_field(beta) {
        return Err(ApError::FieldMismatch);
    }
    let zero = FieldElement::zero(f);
    let one = FieldElement::one(f);
    let in_range = |x: &FieldElement| x.sign() > 0 && x.cmp_value(&one) == Ordering::Less;
    if !in_range(alpha) || !in_range(beta) {
        return Err(ApError::OutOfRange);
    }
    let a1 = alpha + &one;
    let v = vec![
        pt(alpha, &zero),
        pt(&a1, &zero),
        pt(&a1, beta),
        pt(&one, beta),
        pt(&one, &one),
        pt(&zero, &one),
        pt(&zero, beta),
        pt(alpha, beta),
    ];
    unfold4(f, &Polygon::new(v)?)
}
