//! Cut-and-reglue operations: edge subdivision, chord splits and partner swaps.

use crate::error::{ApError, Result};
use crate::exactfield::ratio;
use crate::wedge::PlanarVector;

use super::polygon::{on_segment, orient, strictly_inside_segment};
use super::{EdgeGluing, EdgeRef, Polygon, TranslationSurface};

/// Gluing index and side of an edge.
type Label = (usize, bool);

/// Polygons as (start vertex, label) lists; labels survive reindexing.
struct Labeled {
    field: crate::exactfield::Field,
    polys: Vec<Vec<(PlanarVector, Label)>>,
    next_gluing: usize,
}

impl Labeled {
    fn from_surface(s: &TranslationSurface) -> Result<Self> {
        let slots = s.edge_slots()?;
        let polys = s
            .polygons
            .iter()
            .zip(slots)
            .map(|(p, sl)| p.vertices().iter().cloned().zip(sl).collect())
            .collect();
        Ok(Labeled {
            field: s.field.clone(),
            polys,
            next_gluing: s.gluings.len(),
        })
    }

    fn into_surface(self) -> Result<TranslationSurface> {
        let mut ends: Vec<[Option<EdgeRef>; 2]> = vec![[None, None]; self.next_gluing];
        let mut polygons = Vec::with_capacity(self.polys.len());
        for (p, list) in self.polys.into_iter().enumerate() {
            let mut verts = Vec::with_capacity(list.len());
            for (e, (v, (g, side))) in list.into_iter().enumerate() {
                ends[g][usize::from(side)] = Some(EdgeRef::new(p, e));
                verts.push(v);
            }
            polygons.push(Polygon::new(verts)?);
        }
        let gluings = ends
            .into_iter()
            .map(|[a, b]| match (a, b) {
                (Some(a), Some(b)) => Ok(EdgeGluing(a, b)),
                _ => Err(ApError::InvalidInput("internal gluing bookkeeping failed".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TranslationSurface::new(&self.field, polygons, gluings))
    }

    fn position(&self, label: Label) -> (usize, usize) {
        for (p, list) in self.polys.iter().enumerate() {
            if let Some(e) = list.iter().position(|(_, l)| *l == label) {
                return (p, e);
            }
        }
        unreachable!("every label is present")
    }

    fn edge(&self, p: usize, e: usize) -> (PlanarVector, PlanarVector) {
        let list = &self.polys[p];
        (list[e].0.clone(), list[(e + 1) % list.len()].0.clone())
    }

    /// Inserts `pt` into the open edge `(p, e)` and the matching point into its partner.
    fn subdivide(&mut self, p: usize, e: usize, pt: &PlanarVector) {
        let (g, s) = self.polys[p][e].1;
        let (_, end) = self.edge(p, e);
        let g2 = self.next_gluing;
        self.next_gluing += 1;
        self.polys[p].insert(e + 1, (pt.clone(), (g2, s)));
        let (q, f) = self.position((g, !s));
        let start = self.polys[q][f].0.clone();
        let mirrored = start.add(pt).sub(&end);
        self.polys[q][f].1 = (g2, !s);
        self.polys[q].insert(f + 1, (mirrored, (g, !s)));
    }
}

/// Subdivides an edge and its glued partner at `pt`, which must lie strictly inside the edge.
pub fn subdivide_edge(s: &TranslationSurface, r: EdgeRef, pt: &PlanarVector) -> Result<TranslationSurface> {
    let poly = s.polygons.get(r.polygon).ok_or(ApError::OutOfRange)?;
    if r.edge >= poly.len() {
        return Err(ApError::OutOfRange);
    }
    if !strictly_inside_segment(poly.vertex(r.edge), poly.vertex(r.edge + 1), pt) {
        return Err(ApError::InvalidInput("point is not interior to the edge".into()));
    }
    let mut lab = Labeled::from_surface(s)?;
    lab.subdivide(r.polygon, r.edge, pt);
    lab.into_surface()
}

/// Makes `pt` a vertex of polygon `p`, subdividing an edge if needed.
fn ensure_vertex(lab: &mut Labeled, p: usize, pt: &PlanarVector) -> Result<()> {
    let n = lab.polys[p].len();
    if lab.polys[p].iter().any(|(v, _)| v == pt) {
        return Ok(());
    }
    for e in 0..n {
        let (a, b) = lab.edge(p, e);
        if strictly_inside_segment(&a, &b, pt) {
            lab.subdivide(p, e, pt);
            return Ok(());
        }
    }
    Err(ApError::ChordOutside)
}

/// Cuts polygon `polygon_id` along the chord between two boundary points and glues
/// the two new edges to each other.
pub fn scissors_move(
    s: &TranslationSurface,
    polygon_id: usize,
    chord: (&PlanarVector, &PlanarVector),
) -> Result<TranslationSurface> {
    let poly = s.polygons.get(polygon_id).ok_or(ApError::OutOfRange)?;
    let (pa, pb) = chord;
    if pa == pb {
        return Err(ApError::ChordDegenerate);
    }
    if !poly.on_boundary(pa) || !poly.on_boundary(pb) {
        return Err(ApError::ChordOutside);
    }
    for i in 0..poly.len() {
        let (a, b) = (poly.vertex(i), poly.vertex(i + 1));
        if on_segment(a, b, pa) && on_segment(a, b, pb) {
            return Err(ApError::ChordDegenerate);
        }
        let crosses = {
            let (o1, o2) = (orient(pa, pb, a), orient(pa, pb, b));
            let (o3, o4) = (orient(a, b, pa), orient(a, b, pb));
            o1 * o2 < 0 && o3 * o4 < 0
        };
        if crosses || strictly_inside_segment(pa, pb, a) {
            return Err(ApError::ChordOutside);
        }
    }
    let mid = pa.add(pb).scale_q(&ratio(1, 2));
    if poly.winding_number(&mid) == 0 {
        return Err(ApError::ChordOutside);
    }
    let mut lab = Labeled::from_surface(s)?;
    ensure_vertex(&mut lab, polygon_id, pa)?;
    ensure_vertex(&mut lab, polygon_id, pb)?;
    let list = std::mem::take(&mut lab.polys[polygon_id]);
    let find = |pt: &PlanarVector| list.iter().position(|(v, _)| v == pt).expect("vertex inserted");
    let (mut i, mut j) = (find(pa), find(pb));
    if i > j {
        std::mem::swap(&mut i, &mut j);
    }
    let g = lab.next_gluing;
    lab.next_gluing += 1;
    let mut a: Vec<(PlanarVector, (usize, bool))> = list[i..j].to_vec();
    a.push((list[j].0.clone(), (g, false)));
    let mut b: Vec<(PlanarVector, (usize, bool))> = list[j..].to_vec();
    b.extend_from_slice(&list[..i]);
    b.push((list[i].0.clone(), (g, true)));
    lab.polys[polygon_id] = a;
    lab.polys.push(b);
    lab.into_surface()
}

/// Exchanges the partners of two gluings whose first edges are equal vectors.
/// Polygons are untouched, so `J` is preserved while the topology may change.
pub fn reglue_swap(s: &TranslationSurface, g1: usize, g2: usize) -> Result<TranslationSurface> {
    let (a, b) = (
        *s.gluings.get(g1).ok_or(ApError::OutOfRange)?,
        *s.gluings.get(g2).ok_or(ApError::OutOfRange)?,
    );
    if g1 == g2 {
        return Err(ApError::InvalidInput("gluings must differ".into()));
    }
    if s.edge_vector(a.0) != s.edge_vector(b.0) {
        return Err(ApError::EdgeVectorMismatch(a.0.polygon, a.0.edge, b.0.polygon, b.0.edge));
    }
    let mut gluings = s.gluings.clone();
    gluings[g1] = EdgeGluing(a.0, b.1);
    gluings[g2] = EdgeGluing(b.0, a.1);
    let out = TranslationSurface::new(&s.field, s.polygons.clone(), gluings);
    out.validate()?;
    Ok(out)
}
