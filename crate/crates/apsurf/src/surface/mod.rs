//! Translation surfaces as polygons in `L²` glued edge to edge by translations.

mod polygon;
mod scissors;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{ApError, Result};
use crate::exactfield::linalg;
use crate::exactfield::{subfield_from_generators, Field, FieldElement, Rational, SubfieldDescription};
use crate::wedge::{PlanarVector, WedgeElement};

pub use polygon::{cmp_direction, on_segment, orient, segments_meet, triangle_j, Polygon};
pub use scissors::{reglue_swap, scissors_move, subdivide_edge};

/// Edge `edge` of polygon `polygon`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(polygon: usize, edge: usize) -> Self {
        EdgeRef { polygon, edge }
    }
}

/// Identification of two edges by translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeGluing(pub EdgeRef, pub EdgeRef);

impl EdgeGluing {
    pub fn new(p: usize, e: usize, q: usize, f: usize) -> Self {
        EdgeGluing(EdgeRef::new(p, e), EdgeRef::new(q, f))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslationSurface {
    field: Field,
    polygons: Vec<Polygon>,
    gluings: Vec<EdgeGluing>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologySummary {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub genus: usize,
    /// Cone angle divided by 2π, one entry per vertex class.
    pub cone_angle_multiples: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HolonomyKind {
    Absolute,
    Relative,
}

#[derive(Clone, Debug)]
pub struct HolonomySpace {
    pub basis: Vec<PlanarVector>,
    pub kind: HolonomyKind,
}

impl HolonomySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Membership by an exact rank test.
    pub fn contains(&self, v: &PlanarVector) -> bool {
        let n = 2 * v.field().degree();
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.coords()).collect();
        rows.push(v.coords());
        linalg::rank(&rows, n) == self.basis.len()
    }
}

impl TranslationSurface {
    /// Assembles a surface without checking it; see [`TranslationSurface::validate`].
    pub fn new(field: &Field, polygons: Vec<Polygon>, gluings: Vec<EdgeGluing>) -> Self {
        TranslationSurface {
            field: field.clone(),
            polygons,
            gluings,
        }
    }

    /// Assembles and validates.
    pub fn checked(field: &Field, polygons: Vec<Polygon>, gluings: Vec<EdgeGluing>) -> Result<Self> {
        let s = Self::new(field, polygons, gluings);
        s.validate()?;
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn gluings(&self) -> &[EdgeGluing] {
        &self.gluings
    }

    pub fn edge_vector(&self, r: EdgeRef) -> PlanarVector {
        self.polygons[r.polygon].edge(r.edge)
    }

    /// Gluing index and side (`false` for the first entry) of every edge.
    fn edge_slots(&self) -> Result<Vec<Vec<(usize, bool)>>> {
        let mut slots: Vec<Vec<Option<(usize, bool)>>> =
            self.polygons.iter().map(|p| vec![None; p.len()]).collect();
        for (g, gl) in self.gluings.iter().enumerate() {
            for (side, r) in [(false, gl.0), (true, gl.1)] {
                let slot = slots
                    .get_mut(r.polygon)
                    .and_then(|s| s.get_mut(r.edge))
                    .ok_or(ApError::UnmatchedEdge(r.polygon, r.edge))?;
                if slot.is_some() {
                    return Err(ApError::UnmatchedEdge(r.polygon, r.edge));
                }
                *slot = Some((g, side));
            }
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(p, s)| {
                s.into_iter()
                    .enumerate()
                    .map(|(e, x)| x.ok_or(ApError::UnmatchedEdge(p, e)))
                    .collect()
            })
            .collect()
    }

    fn partner(&self, slots: &[Vec<(usize, bool)>], r: EdgeRef) -> EdgeRef {
        let (g, side) = slots[r.polygon][r.edge];
        if side {
            self.gluings[g].0
        } else {
            self.gluings[g].1
        }
    }

    /// Vertex classes as cycles of corners `(polygon, vertex)`, in counterclockwise order.
    fn corner_cycles(&self, slots: &[Vec<(usize, bool)>]) -> Vec<Vec<(usize, usize)>> {
        let mut seen: Vec<Vec<bool>> = self.polygons.iter().map(|p| vec![false; p.len()]).collect();
        let mut cycles = Vec::new();
        for p in 0..self.polygons.len() {
            for i in 0..self.polygons[p].len() {
                if seen[p][i] {
                    continue;
                }
                let mut cyc = Vec::new();
                let (mut cp, mut ci) = (p, i);
                while !seen[cp][ci] {
                    seen[cp][ci] = true;
                    cyc.push((cp, ci));
                    let n = self.polygons[cp].len();
                    let nx = self.partner(slots, EdgeRef::new(cp, (ci + n - 1) % n));
                    cp = nx.polygon;
                    ci = nx.edge;
                }
                cycles.push(cyc);
            }
        }
        cycles
    }

    /// Checks every structural invariant and computes the topology.
    pub fn validate(&self) -> Result<TopologySummary> {
        if self.polygons.is_empty() {
            return Err(ApError::InvalidInput("surface has no polygons".into()));
        }
        for (k, p) in self.polygons.iter().enumerate() {
            if !p.vertices()[0].field().same_as(&self.field) {
                return Err(ApError::FieldMismatch);
            }
            if !p.is_simple_ccw() {
                return Err(ApError::NonSimplePolygon(k));
            }
        }
        let slots = self.edge_slots()?;
        for gl in &self.gluings {
            if !self.edge_vector(gl.0).add(&self.edge_vector(gl.1)).is_zero() {
                return Err(ApError::EdgeVectorMismatch(gl.0.polygon, gl.0.edge, gl.1.polygon, gl.1.edge));
            }
        }
        let mut comp: Vec<usize> = (0..self.polygons.len()).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for gl in &self.gluings {
            let (a, b) = (find(&mut comp, gl.0.polygon), find(&mut comp, gl.1.polygon));
            comp[a] = b;
        }
        let root = find(&mut comp, 0);
        if (0..self.polygons.len()).any(|p| find(&mut comp, p) != root) {
            return Err(ApError::Disconnected);
        }
        let cycles = self.corner_cycles(&slots);
        let mut multiples = Vec::with_capacity(cycles.len());
        for cyc in &cycles {
            let mut wraps = 0usize;
            for &(p, i) in cyc {
                let poly = &self.polygons[p];
                let out = poly.edge(i);
                let back = poly.edge(i + poly.len() - 1).neg();
                if cmp_direction(&back, &out) != std::cmp::Ordering::Greater {
                    wraps += 1;
                }
            }
            if wraps == 0 {
                return Err(ApError::BadConeAngle);
            }
            multiples.push(wraps);
        }
        let (v, e, f) = (cycles.len(), self.gluings.len(), self.polygons.len());
        let chi = v as i64 - e as i64 + f as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(ApError::BadConeAngle);
        }
        let genus = ((2 - chi) / 2) as usize;
        let excess: i64 = multiples.iter().map(|&m| m as i64 - 1).sum();
        if excess != 2 * genus as i64 - 2 {
            return Err(ApError::BadConeAngle);
        }
        Ok(TopologySummary {
            v,
            e,
            f,
            genus,
            cone_angle_multiples: multiples,
        })
    }

    /// `J(S)`, the sum of `J` over an ear-clipping triangulation of every polygon.
    pub fn j_invariant(&self) -> Result<WedgeElement> {
        self.validate()?;
        let mut acc = WedgeElement::zero(&self.field);
        for (k, p) in self.polygons.iter().enumerate() {
            let j = p.j_invariant().map_err(|e| match e {
                ApError::NonSimplePolygon(_) => ApError::NonSimplePolygon(k),
                other => other,
            })?;
            acc = acc.try_add(&j)?;
        }
        Ok(acc)
    }

    /// Total area by the shoelace formula.
    pub fn area(&self) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for p in &self.polygons {
            acc = &acc + &p.signed_area();
        }
        acc
    }

    /// Boundary matrices `∂₁` (vertex classes × gluings) and `∂₂` (gluings × polygons).
    /// Each gluing is oriented along its first edge.
    pub fn boundary_maps(&self) -> Result<(linalg::QMatrix, linalg::QMatrix)> {
        let slots = self.edge_slots()?;
        let cycles = self.corner_cycles(&slots);
        let mut class: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (k, cyc) in cycles.iter().enumerate() {
            for &c in cyc {
                class.insert(c, k);
            }
        }
        let (v, e, f) = (cycles.len(), self.gluings.len(), self.polygons.len());
        let mut d1 = linalg::q_zeros(v, e);
        for (g, gl) in self.gluings.iter().enumerate() {
            let n = self.polygons[gl.0.polygon].len();
            let start = class[&(gl.0.polygon, gl.0.edge)];
            let end = class[&(gl.0.polygon, (gl.0.edge + 1) % n)];
            d1[end][g] += Rational::one();
            d1[start][g] -= Rational::one();
        }
        let mut d2 = linalg::q_zeros(e, f);
        for (p, s) in slots.iter().enumerate() {
            for &(g, side) in s {
                if side {
                    d2[g][p] -= Rational::one();
                } else {
                    d2[g][p] += Rational::one();
                }
            }
        }
        Ok((d1, d2))
    }

    /// Rank of `H₁(S; Q)`.
    pub fn first_betti(&self) -> Result<usize> {
        let (d1, d2) = self.boundary_maps()?;
        let e = self.gluings.len();
        Ok(e - linalg::rank(&d1, e) - linalg::rank(&d2, self.polygons.len()))
    }

    fn holonomy_span(&self, chains: Vec<Vec<Rational>>, kind: HolonomyKind) -> HolonomySpace {
        let n2 = 2 * self.field.degree();
        let vecs: Vec<Vec<Rational>> = self.gluings.iter().map(|g| self.edge_vector(g.0).coords()).collect();
        let rows: Vec<Vec<Rational>> = chains
            .iter()
            .map(|z| {
                let mut acc = vec![Rational::zero(); n2];
                for (c, v) in z.iter().zip(&vecs) {
                    if !c.is_zero() {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a += c * b;
                        }
                    }
                }
                acc
            })
            .collect();
        let (basis, _) = linalg::row_space(&rows, n2);
        HolonomySpace {
            basis: basis.iter().map(|r| PlanarVector::from_coords(&self.field, r)).collect(),
            kind,
        }
    }

    /// Q-span of holonomies of closed cycles.
    pub fn absolute_holonomy(&self) -> Result<HolonomySpace> {
        self.validate()?;
        let (d1, _) = self.boundary_maps()?;
        let cycles = linalg::kernel(&d1, self.gluings.len(), &Rational::one());
        Ok(self.holonomy_span(cycles, HolonomyKind::Absolute))
    }

    /// Q-span of all edge vectors.
    pub fn relative_holonomy(&self) -> Result<HolonomySpace> {
        self.validate()?;
        let e = self.gluings.len();
        let chains = (0..e)
            .map(|g| (0..e).map(|k| if k == g { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Ok(self.holonomy_span(chains, HolonomyKind::Relative))
    }

    /// Field generated by the coordinates of absolute holonomy in a basis of two of its vectors.
    pub fn holonomy_field(&self) -> Result<SubfieldDescription> {
        let hol = self.absolute_holonomy()?;
        holonomy_field_of(&self.field, &hol.basis)
    }
}

/// Subfield generated by coordinates of `vecs` relative to the first R-independent pair.
pub fn holonomy_field_of(field: &Field, vecs: &[PlanarVector]) -> Result<SubfieldDescription> {
    let mut pair = None;
    'outer: for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            let d = vecs[i].cross(&vecs[j]);
            if !d.is_zero() {
                pair = Some((i, j, d));
                break 'outer;
            }
        }
    }
    let (i, j, det) = pair.ok_or(ApError::DegenerateHolonomy)?;
    let (u, v) = (&vecs[i], &vecs[j]);
    let inv = det.inverse()?;
    let mut gens = Vec::with_capacity(2 * vecs.len());
    for w in vecs {
        gens.push(&w.cross(v) * &inv);
        gens.push(&u.cross(w) * &inv);
    }
    Ok(subfield_from_generators(field, &gens))
}

#[cfg(test)]
mod tests;
