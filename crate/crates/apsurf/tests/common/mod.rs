#![allow(dead_code)]

use apsurf::construct::{
    eh_ne_ah_example, rectangle_table_surface, square_tiled_surface, IntegralSymmetricInput,
};
use apsurf::exactfield::{field_create, rat, ratio, real_cyclotomic_field, Field, FieldElement, QPoly, Rational};
use apsurf::surface::{scissors_move, subdivide_edge, EdgeRef, Polygon, TranslationSurface};
use apsurf::wedge::{mat2, Mat2, PlanarVector};
use rand::Rng;

pub fn rationals() -> Field {
    apsurf::exactfield::NumberField::rationals()
}

pub fn sqrt2() -> Field {
    field_create(QPoly::from_ints(&[-2, 0, 1]), rat(1), ratio(3, 2)).unwrap()
}

pub fn cbrt2() -> Field {
    field_create(QPoly::from_ints(&[-2, 0, 0, 1]), ratio(5, 4), ratio(13, 10)).unwrap()
}

/// `Q(2 cos(2π/7))`, minimal polynomial `x³ + x² − 2x − 1`.
pub fn cos7() -> Field {
    let f = real_cyclotomic_field(7).unwrap();
    assert_eq!(f.minpoly(), &QPoly::from_ints(&[-1, -2, 1, 1]));
    f
}

/// The four test fields, with a symmetric integer matrix when one exists.
pub fn four_fields() -> Vec<(&'static str, Field, Option<Vec<Vec<i64>>>)> {
    vec![
        ("Q", rationals(), Some(vec![vec![1]])),
        ("Q(sqrt2)", sqrt2(), Some(vec![vec![1, 1], vec![1, -1]])),
        ("Q(cbrt2)", cbrt2(), None),
        ("Q(2cos(2pi/7))", cos7(), Some(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, -1]])),
    ]
}

pub fn el(f: &Field, c: &[i64]) -> FieldElement {
    FieldElement::from_ints(f, c)
}

pub fn xy(f: &Field, x: i64, y: i64) -> PlanarVector {
    PlanarVector::from_ints(f, x, y)
}

pub fn square_tiled_sqrt2() -> TranslationSurface {
    let f = sqrt2();
    square_tiled_surface(&IntegralSymmetricInput {
        matrix: vec![vec![1, 1], vec![1, -1]],
        lambda: FieldElement::theta(&f),
    })
    .unwrap()
}

pub fn rects(f: &Field) -> TranslationSurface {
    rectangle_table_surface(f).unwrap()
}

pub fn swap_sqrt2() -> TranslationSurface {
    let f = sqrt2();
    let a = el(&f, &[-1, 1]);
    eh_ne_ah_example(&a, &a).unwrap()
}

/// Applies `m` to every vertex; gluings are unchanged.
pub fn transform(s: &TranslationSurface, m: &Mat2) -> TranslationSurface {
    let polys = s
        .polygons()
        .iter()
        .map(|p| Polygon::new(p.vertices().iter().map(|v| v.apply(m)).collect()).unwrap())
        .collect();
    TranslationSurface::checked(s.field(), polys, s.gluings().to_vec()).unwrap()
}

pub fn shear_sqrt2() -> Mat2 {
    let f = sqrt2();
    mat2(el(&f, &[1]), el(&f, &[0]), FieldElement::theta(&f), el(&f, &[1]))
}

pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    ratio(rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

pub fn random_element<R: Rng>(rng: &mut R, f: &Field, height: i64) -> FieldElement {
    FieldElement::new(f, (0..f.degree()).map(|_| rat(rng.gen_range(-height..=height))).collect())
}

/// One random scissors move: either a chord between two vertices, or an edge subdivision
/// followed by a chord from the new vertex.
pub fn random_scissors<R: Rng>(rng: &mut R, s: &TranslationSurface) -> TranslationSurface {
    for _ in 0..200 {
        let pi = rng.gen_range(0..s.polygons().len());
        let p = &s.polygons()[pi];
        let n = p.len();
        if rng.gen_bool(0.5) {
            let e = rng.gen_range(0..n);
            let t = ratio(rng.gen_range(1..8), 8);
            let a = p.vertex(e);
            let pt = a.add(&p.edge(e).scale_q(&t));
            let Ok(sub) = subdivide_edge(s, EdgeRef::new(pi, e), &pt) else { continue };
            let q = &sub.polygons()[pi];
            let k = rng.gen_range(0..q.len());
            if let Ok(cut) = scissors_move(&sub, pi, (&pt, q.vertex(k))) {
                return cut;
            }
        } else if n > 3 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if let Ok(cut) = scissors_move(s, pi, (p.vertex(i), p.vertex(j))) {
                return cut;
            }
        }
    }
    s.clone()
}
