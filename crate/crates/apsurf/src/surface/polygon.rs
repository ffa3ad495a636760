//! Planar polygons with exact predicates and deterministic ear clipping.

use std::cmp::Ordering;

use crate::error::{ApError, Result};
use crate::exactfield::{ratio, FieldElement};
use crate::wedge::{wedge_of, PlanarVector, WedgeElement};

/// A polygon given by its vertices in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<PlanarVector>,
}

impl Polygon {
    pub fn new(vertices: Vec<PlanarVector>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(ApError::InvalidInput("a polygon needs at least three vertices".into()));
        }
        if vertices.iter().any(|v| !v.x.same_field(&vertices[0].x) || !v.y.same_field(&vertices[0].x)) {
            return Err(ApError::FieldMismatch);
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[PlanarVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &PlanarVector {
        &self.vertices[i % self.len()]
    }

    /// Vector of edge `i`, from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> PlanarVector {
        self.vertex(i + 1).sub(self.vertex(i))
    }

    /// Signed area by the shoelace formula.
    pub fn signed_area(&self) -> FieldElement {
        let n = self.len();
        let mut acc = FieldElement::zero(self.vertices[0].field());
        for i in 0..n {
            acc = &acc + &self.vertices[i].cross(self.vertex(i + 1));
        }
        acc.scale(&ratio(1, 2))
    }

    /// Simple with positive orientation.
    pub fn is_simple_ccw(&self) -> bool {
        let n = self.len();
        let edges: Vec<PlanarVector> = (0..n).map(|i| self.edge(i)).collect();
        if edges.iter().any(|e| e.is_zero()) {
            return false;
        }
        for i in 0..n {
            let (d0, d1) = (&edges[i], &edges[(i + 1) % n]);
            if d0.cross(d1).is_zero() && d0.dot(d1).sign() < 0 {
                return false;
            }
        }
        for i in 0..n {
            for k in i + 2..n {
                if i == 0 && k == n - 1 {
                    continue;
                }
                if segments_meet(self.vertex(i), self.vertex(i + 1), self.vertex(k), self.vertex(k + 1)) {
                    return false;
                }
            }
        }
        self.signed_area().sign() > 0
    }

    /// Winding number of the boundary around `m`, which must not lie on the boundary.
    pub fn winding_number(&self, m: &PlanarVector) -> i64 {
        let n = self.len();
        let mut w = 0i64;
        for i in 0..n {
            let (a, b) = (self.vertex(i), self.vertex(i + 1));
            let a_above = (&a.y - &m.y).sign() > 0;
            let b_above = (&b.y - &m.y).sign() > 0;
            if !a_above && b_above && orient(a, b, m) > 0 {
                w += 1;
            } else if a_above && !b_above && orient(a, b, m) < 0 {
                w -= 1;
            }
        }
        w
    }

    /// True when `p` lies on the closed boundary.
    pub fn on_boundary(&self, p: &PlanarVector) -> bool {
        (0..self.len()).any(|i| on_segment(self.vertex(i), self.vertex(i + 1), p))
    }

    /// Triangles `(i, j, k)` of vertex indices from lowest-index ear clipping.
    pub fn triangulate(&self) -> Result<Vec<[usize; 3]>> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        let mut out = Vec::with_capacity(self.len() - 2);
        while idx.len() > 3 {
            let m = idx.len();
            let ear = (0..m).find(|&k| {
                let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
                let (pa, pb, pc) = (&self.vertices[a], &self.vertices[b], &self.vertices[c]);
                orient(pa, pb, pc) > 0
                    && idx
                        .iter()
                        .filter(|&&o| o != a && o != b && o != c)
                        .all(|&o| !in_closed_triangle(pa, pb, pc, &self.vertices[o]))
            });
            let Some(k) = ear else {
                return Err(ApError::NonSimplePolygon(0));
            };
            out.push([idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]]);
            idx.remove(k);
        }
        out.push([idx[0], idx[1], idx[2]]);
        Ok(out)
    }

    /// `J` of the polygon, summed over an ear-clipping triangulation.
    pub fn j_invariant(&self) -> Result<WedgeElement> {
        let field = self.vertices[0].field();
        let mut acc = WedgeElement::zero(field);
        for [a, b, c] in self.triangulate()? {
            acc = acc.try_add(&triangle_j(&self.vertices[a], &self.vertices[b], &self.vertices[c])?)?;
        }
        Ok(acc)
    }

    pub fn translate(&self, t: &PlanarVector) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
        }
    }
}

/// `(p1 - p0) ∧ (p2 - p1)`.
pub fn triangle_j(p0: &PlanarVector, p1: &PlanarVector, p2: &PlanarVector) -> Result<WedgeElement> {
    wedge_of(&p1.sub(p0), &p2.sub(p1))
}

/// Sign of `det(b - a, c - a)`.
pub fn orient(a: &PlanarVector, b: &PlanarVector, c: &PlanarVector) -> i8 {
    b.sub(a).cross(&c.sub(a)).sign()
}

/// `p` on the closed segment `[a, b]`.
pub fn on_segment(a: &PlanarVector, b: &PlanarVector, p: &PlanarVector) -> bool {
    orient(a, b, p) == 0 && a.sub(p).dot(&b.sub(p)).sign() <= 0
}

/// `p` in the open interior of segment `[a, b]`.
pub fn strictly_inside_segment(a: &PlanarVector, b: &PlanarVector, p: &PlanarVector) -> bool {
    orient(a, b, p) == 0 && a.sub(p).dot(&b.sub(p)).sign() < 0
}

/// Closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_meet(a: &PlanarVector, b: &PlanarVector, c: &PlanarVector, d: &PlanarVector) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

fn in_closed_triangle(a: &PlanarVector, b: &PlanarVector, c: &PlanarVector, p: &PlanarVector) -> bool {
    orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0
}

/// Order of directions by argument in `[0, 2π)`.
pub fn cmp_direction(a: &PlanarVector, b: &PlanarVector) -> Ordering {
    let half = |v: &PlanarVector| {
        let (sx, sy) = (v.x.sign(), v.y.sign());
        u8::from(!(sy > 0 || (sy == 0 && sx > 0)))
    };
    match half(a).cmp(&half(b)) {
        Ordering::Equal => match a.cross(b).sign() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        },
        o => o,
    }
}
