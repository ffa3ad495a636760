use super::*;
use crate::exactfield::{field_create, rat, ratio, NumberField, QPoly};
use crate::wedge::{area, wedge_of};

fn sqrt2() -> Field {
    field_create(QPoly::from_ints(&[-2, 0, 1]), rat(1), ratio(3, 2)).unwrap()
}

fn rect(x0: &FieldElement, y0: &FieldElement, w: &FieldElement, h: &FieldElement) -> Polygon {
    let x1 = x0 + w;
    let y1 = y0 + h;
    Polygon::new(vec![
        PlanarVector::new(x0.clone(), y0.clone()).unwrap(),
        PlanarVector::new(x1.clone(), y0.clone()).unwrap(),
        PlanarVector::new(x1, y1.clone()).unwrap(),
        PlanarVector::new(x0.clone(), y1).unwrap(),
    ])
    .unwrap()
}

fn unit_square(f: &Field, x: i64, y: i64) -> Polygon {
    let i = |v| FieldElement::from_int(f, v);
    rect(&i(x), &i(y), &i(1), &i(1))
}

fn rect_torus(f: &Field, a: &FieldElement, b: &FieldElement) -> TranslationSurface {
    let z = FieldElement::zero(f);
    TranslationSurface::new(
        f,
        vec![rect(&z, &z, a, b)],
        vec![EdgeGluing::new(0, 1, 0, 3), EdgeGluing::new(0, 2, 0, 0)],
    )
}

fn torus(f: &Field) -> TranslationSurface {
    let one = FieldElement::one(f);
    rect_torus(f, &one, &one)
}

/// Three unit squares in an L; one cone point of angle 6π.
fn l_shape(f: &Field) -> TranslationSurface {
    TranslationSurface::new(
        f,
        vec![unit_square(f, 0, 0), unit_square(f, 1, 0), unit_square(f, 0, 1)],
        vec![
            EdgeGluing::new(0, 1, 1, 3),
            EdgeGluing::new(1, 1, 0, 3),
            EdgeGluing::new(2, 1, 2, 3),
            EdgeGluing::new(0, 2, 2, 0),
            EdgeGluing::new(2, 2, 0, 0),
            EdgeGluing::new(1, 2, 1, 0),
        ],
    )
}

fn xy(f: &Field, x: i64, y: i64) -> PlanarVector {
    PlanarVector::from_ints(f, x, y)
}

#[test]
fn validate_examples() {
    let q = NumberField::rationals();
    let t = torus(&q).validate().unwrap();
    assert_eq!((t.v, t.e, t.f, t.genus), (1, 2, 1, 1));
    assert_eq!(t.cone_angle_multiples, vec![1]);
    let l = l_shape(&q).validate().unwrap();
    assert_eq!(l.genus, 2);
    assert_eq!(l.cone_angle_multiples, vec![3]);
    let bad = TranslationSurface::new(
        &q,
        vec![unit_square(&q, 0, 0)],
        vec![EdgeGluing::new(0, 3, 0, 2), EdgeGluing::new(0, 0, 0, 1)],
    );
    assert!(matches!(bad.validate(), Err(ApError::EdgeVectorMismatch(..))));
}

#[test]
fn validate_errors() {
    let q = NumberField::rationals();
    let open = TranslationSurface::new(&q, vec![unit_square(&q, 0, 0)], vec![EdgeGluing::new(0, 1, 0, 3)]);
    assert_eq!(open.validate(), Err(ApError::UnmatchedEdge(0, 0)));
    let twice = TranslationSurface::new(
        &q,
        vec![unit_square(&q, 0, 0)],
        vec![EdgeGluing::new(0, 1, 0, 3), EdgeGluing::new(0, 1, 0, 3)],
    );
    assert_eq!(twice.validate(), Err(ApError::UnmatchedEdge(0, 1)));
    let two = TranslationSurface::new(
        &q,
        vec![unit_square(&q, 0, 0), unit_square(&q, 3, 0)],
        vec![
            EdgeGluing::new(0, 1, 0, 3),
            EdgeGluing::new(0, 2, 0, 0),
            EdgeGluing::new(1, 1, 1, 3),
            EdgeGluing::new(1, 2, 1, 0),
        ],
    );
    assert_eq!(two.validate(), Err(ApError::Disconnected));
    let cw = Polygon::new(vec![xy(&q, 0, 0), xy(&q, 0, 1), xy(&q, 1, 1), xy(&q, 1, 0)]).unwrap();
    let s = TranslationSurface::new(&q, vec![cw], vec![EdgeGluing::new(0, 0, 0, 2), EdgeGluing::new(0, 1, 0, 3)]);
    assert_eq!(s.validate(), Err(ApError::NonSimplePolygon(0)));
}

#[test]
fn j_examples() {
    let q = NumberField::rationals();
    let t = torus(&q);
    let expected = wedge_of(&xy(&q, 1, 0), &xy(&q, 0, 1)).unwrap().scalar_mul(&rat(2));
    assert_eq!(t.j_invariant().unwrap(), expected);
    // Starting the square at another corner makes ear clipping use the other diagonal.
    let shifted = TranslationSurface::new(
        &q,
        vec![Polygon::new(vec![xy(&q, 1, 0), xy(&q, 1, 1), xy(&q, 0, 1), xy(&q, 0, 0)]).unwrap()],
        vec![EdgeGluing::new(0, 0, 0, 2), EdgeGluing::new(0, 1, 0, 3)],
    );
    assert_eq!(shifted.j_invariant().unwrap(), expected);

    let f = sqrt2();
    let a = FieldElement::theta(&f);
    let b = FieldElement::from_ints(&f, &[1, 1]);
    let r = rect_torus(&f, &a, &b);
    let z = FieldElement::zero(&f);
    let ab = wedge_of(
        &PlanarVector::new(a.clone(), z.clone()).unwrap(),
        &PlanarVector::new(z, b.clone()).unwrap(),
    )
    .unwrap()
    .scalar_mul(&rat(2));
    assert_eq!(r.j_invariant().unwrap(), ab);
    assert_eq!(area(&ab), &a * &b);
}

#[test]
fn holonomy_examples() {
    let q = NumberField::rationals();
    let t = torus(&q);
    let h = t.absolute_holonomy().unwrap();
    assert_eq!(h.basis, vec![xy(&q, 1, 0), xy(&q, 0, 1)]);
    assert_eq!(t.holonomy_field().unwrap().degree(), 1);
    assert_eq!(t.first_betti().unwrap(), 2);
    let l = l_shape(&q);
    assert_eq!(l.first_betti().unwrap(), 4);

    let f = sqrt2();
    let a = FieldElement::theta(&f);
    let b = FieldElement::from_ints(&f, &[1, 1]);
    let r = rect_torus(&f, &a, &b);
    let h = r.absolute_holonomy().unwrap();
    assert_eq!(h.dim(), 2);
    let z = FieldElement::zero(&f);
    assert!(h.contains(&PlanarVector::new(a.clone(), z.clone()).unwrap()));
    assert!(h.contains(&PlanarVector::new(z, b).unwrap()));
    assert!(!h.contains(&PlanarVector::from_ints(&f, 1, 0)));
    assert_eq!(r.holonomy_field().unwrap().degree(), 1);
}

#[test]
fn degenerate_holonomy() {
    let q = NumberField::rationals();
    let v = vec![xy(&q, 1, 0), xy(&q, 2, 0)];
    assert_eq!(holonomy_field_of(&q, &v).unwrap_err(), ApError::DegenerateHolonomy);
}

#[test]
fn scissors_examples() {
    let q = NumberField::rationals();
    let t = torus(&q);
    let j = t.j_invariant().unwrap();
    let cut = scissors_move(&t, 0, (&xy(&q, 0, 0), &xy(&q, 1, 1))).unwrap();
    assert_eq!(cut.polygons().len(), 2);
    assert!(cut.polygons().iter().all(|p| p.len() == 3));
    assert_eq!(cut.j_invariant().unwrap(), j);
    assert_eq!(cut.validate().unwrap().genus, 1);

    let f = sqrt2();
    let a = FieldElement::theta(&f);
    let b = FieldElement::from_ints(&f, &[1, 1]);
    let r = rect_torus(&f, &a, &b);
    let half = a.scale(&ratio(1, 2));
    let bottom = PlanarVector::new(half.clone(), FieldElement::zero(&f)).unwrap();
    let top = PlanarVector::new(half, b.clone()).unwrap();
    let split = scissors_move(&r, 0, (&bottom, &top)).unwrap();
    assert_eq!(split.polygons().len(), 2);
    assert_eq!(split.j_invariant().unwrap(), r.j_invariant().unwrap());
    let s = split.validate().unwrap();
    assert_eq!((s.genus, s.f), (1, 2));

    let outside = PlanarVector::from_ints(&f, 5, 0);
    assert_eq!(scissors_move(&r, 0, (&outside, &top)).unwrap_err(), ApError::ChordOutside);
    assert_eq!(scissors_move(&r, 0, (&top, &top)).unwrap_err(), ApError::ChordDegenerate);
}

#[test]
fn chord_through_nonconvex_region_is_rejected() {
    let q = NumberField::rationals();
    let pts = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1)];
    let l = Polygon::new(pts.iter().map(|&(x, y)| xy(&q, x, y)).collect()).unwrap();
    let s = TranslationSurface::checked(
        &q,
        vec![l],
        vec![
            EdgeGluing::new(0, 0, 0, 5),
            EdgeGluing::new(0, 1, 0, 3),
            EdgeGluing::new(0, 2, 0, 7),
            EdgeGluing::new(0, 4, 0, 6),
        ],
    )
    .unwrap();
    assert_eq!(s.validate().unwrap().genus, 2);
    let res = scissors_move(&s, 0, (&xy(&q, 2, 1), &xy(&q, 1, 2)));
    assert_eq!(res.unwrap_err(), ApError::ChordOutside);
    let res = scissors_move(&s, 0, (&xy(&q, 2, 0), &xy(&q, 2, 1)));
    assert_eq!(res.unwrap_err(), ApError::ChordDegenerate);
    let ok = scissors_move(&s, 0, (&xy(&q, 1, 0), &xy(&q, 1, 1))).unwrap();
    assert_eq!(ok.j_invariant().unwrap(), s.j_invariant().unwrap());
    assert_eq!(ok.validate().unwrap().genus, 2);
}

#[test]
fn subdivision_preserves_j() {
    let q = NumberField::rationals();
    let l = l_shape(&q);
    let mid = PlanarVector::new(FieldElement::from_rational(&q, ratio(1, 3)), FieldElement::zero(&q)).unwrap();
    let sub = subdivide_edge(&l, EdgeRef::new(0, 0), &mid).unwrap();
    let summary = sub.validate().unwrap();
    assert_eq!(summary.genus, 2);
    assert_eq!(summary.e, 7);
    assert_eq!(sub.j_invariant().unwrap(), l.j_invariant().unwrap());
    assert_eq!(sub.polygons()[0].len(), 5);
    assert_eq!(sub.polygons()[2].len(), 5);
}

#[test]
fn reglue_swap_keeps_j() {
    let q = NumberField::rationals();
    let l = l_shape(&q);
    let swapped = reglue_swap(&l, 3, 5).unwrap();
    assert_eq!(swapped.j_invariant().unwrap(), l.j_invariant().unwrap());
    assert!(matches!(reglue_swap(&l, 0, 3), Err(ApError::EdgeVectorMismatch(..))));
}
