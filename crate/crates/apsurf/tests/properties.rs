mod common;

use apsurf::construct::jk_from_minpoly;
use apsurf::exactfield::linalg::{determinant, mat_mul, transpose, QMatrix};
use apsurf::exactfield::{rat, ratio, Field, FieldElement, Rational};
use apsurf::forms::signature;
use apsurf::io::{element_from_file, element_to_file, j_from_file, j_to_file, surface_from_file, surface_to_file};
use apsurf::periodicity::{check_wedge_identities, essential_holonomy, is_ap_direction, periodic_direction_field};
use apsurf::wedge::{area, gl2_act, mat2, mat2_det, mat2_mul, wedge_of, wedge_sum, Mat2, PlanarVector, Slope};
use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_by_index(i: usize) -> Field {
    match i % 3 {
        0 => sqrt2(),
        1 => cbrt2(),
        _ => cos7(),
    }
}

fn elem(f: &Field, c: &[i64]) -> FieldElement {
    FieldElement::new(f, (0..f.degree()).map(|k| ratio(c[k % c.len()], 1 + (c[(k + 1) % c.len()].abs() % 5))).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 3)
}

fn invertible(f: &Field, a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> Option<Mat2> {
    let m = mat2(elem(f, a), elem(f, b), elem(f, c), elem(f, d));
    (!mat2_det(&m).is_zero()).then_some(m)
}

fn random_j(f: &Field, seeds: &[(Vec<i64>, Vec<i64>)]) -> apsurf::wedge::WedgeElement {
    let pairs: Vec<(PlanarVector, PlanarVector)> = seeds
        .iter()
        .map(|(a, b)| {
            let v = PlanarVector::new(elem(f, a), elem(f, b)).unwrap();
            let w = PlanarVector::new(elem(f, b), elem(f, &[a[1], -a[0], a[2]])).unwrap();
            (v, w)
        })
        .collect();
    wedge_sum(f, &pairs).unwrap()
}

fn qsym(vals: &[i64], n: usize) -> QMatrix {
    let mut g = vec![vec![Rational::zero(); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            g[i][j] = rat(vals[k % vals.len()]);
            g[j][i] = g[i][j].clone();
            k += 1;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_axioms(fi in 0usize..3, a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = field_by_index(fi);
        let (a, b, c) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a + &b).trace(), a.trace() + b.trace());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), FieldElement::one(&f));
        }
    }

    #[test]
    fn gl2_action_composes_and_scales_area(
        fi in 0usize..3,
        m in prop::array::uniform4(coeffs()),
        n in prop::array::uniform4(coeffs()),
        s in prop::collection::vec((coeffs(), coeffs()), 1..4),
    ) {
        let f = field_by_index(fi);
        let (Some(m), Some(n)) = (invertible(&f, &m[0], &m[1], &m[2], &m[3]), invertible(&f, &n[0], &n[1], &n[2], &n[3])) else {
            return Ok(());
        };
        let j = random_j(&f, &s);
        let mn = gl2_act(&m, &gl2_act(&n, &j).unwrap()).unwrap();
        prop_assert_eq!(&mn, &gl2_act(&mat2_mul(&m, &n), &j).unwrap());
        prop_assert_eq!(area(&gl2_act(&m, &j).unwrap()), &mat2_det(&m) * &area(&j));
    }

    #[test]
    fn j_survives_scissors(seed in any::<u64>(), steps in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = square_tiled_sqrt2();
        let mut s = base.clone();
        for _ in 0..steps {
            s = random_scissors(&mut rng, &s);
        }
        prop_assert!(s.validate().is_ok());
        prop_assert_eq!(s.j_invariant().unwrap(), base.j_invariant().unwrap());
        prop_assert_eq!(s.area(), base.area());
    }

    #[test]
    fn wedge_identities_match_three_directions(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, t in 0i64..=2) {
        let f = sqrt2();
        let th = FieldElement::theta(&f);
        let m = mat2(el(&f, &[1]), el(&f, &[a]), &el(&f, &[b]) + &th.scale(&rat(t)), el(&f, &[c]));
        prop_assume!(mat2_det(&m).sign() > 0);
        let s = transform(&square_tiled_sqrt2(), &m);
        let rep = check_wedge_identities(&s).unwrap();
        let j = s.j_invariant().unwrap();
        let slopes = [Slope::rational(&f, 0, 1), Slope::rational(&f, 1, 1), Slope::Infinite];
        prop_assert_eq!(rep.pass, slopes.iter().all(|sl| is_ap_direction(&j, sl)));
    }

    #[test]
    fn essential_holonomy_is_minimal(fi in 0usize..3, s in prop::collection::vec((coeffs(), coeffs()), 1..4)) {
        let f = field_by_index(fi);
        let j = random_j(&f, &s);
        let eh = essential_holonomy(&j).unwrap();
        prop_assert!(eh.dim() % 2 == 0 && eh.dim() <= 2 * s.len());
        let mut rebuilt = apsurf::wedge::WedgeElement::zero(&f);
        for i in 0..eh.dim() {
            for k in i + 1..eh.dim() {
                let w = wedge_of(&eh.basis[i], &eh.basis[k]).unwrap().scalar_mul(&eh.skew_gram[i][k]);
                rebuilt = rebuilt.try_add(&w).unwrap();
            }
        }
        prop_assert_eq!(&rebuilt, &j);
        let spans: Vec<Vec<Rational>> = s
            .iter()
            .flat_map(|(a, b)| {
                [
                    PlanarVector::new(elem(&f, a), elem(&f, b)).unwrap(),
                    PlanarVector::new(elem(&f, b), elem(&f, &[a[1], -a[0], a[2]])).unwrap(),
                ]
            })
            .map(|v| v.coords())
            .collect();
        let r = apsurf::exactfield::linalg::rank(&spans, 2 * f.degree());
        for v in &eh.basis {
            let mut rows = spans.clone();
            rows.push(v.coords());
            prop_assert_eq!(apsurf::exactfield::linalg::rank(&rows, 2 * f.degree()), r);
        }
    }

    #[test]
    fn linear_maps_transport_essential_holonomy(
        fi in 0usize..3,
        m in prop::array::uniform4(coeffs()),
        s in prop::collection::vec((coeffs(), coeffs()), 1..3),
    ) {
        let f = field_by_index(fi);
        let Some(m) = invertible(&f, &m[0], &m[1], &m[2], &m[3]) else { return Ok(()) };
        let j = random_j(&f, &s);
        let eh = essential_holonomy(&j).unwrap();
        let eh2 = essential_holonomy(&gl2_act(&m, &j).unwrap()).unwrap();
        prop_assert_eq!(eh.dim(), eh2.dim());
        for v in &eh.basis {
            prop_assert!(eh2.contains(&v.apply(&m)));
        }
    }

    #[test]
    fn degree_bound_on_transformed_invariants(
        fi in 0usize..3,
        m in prop::array::uniform4(coeffs()),
        k in 1i64..4,
    ) {
        let f = field_by_index(fi);
        let Some(m) = invertible(&f, &m[0], &m[1], &m[2], &m[3]) else { return Ok(()) };
        let j = gl2_act(&m, &jk_from_minpoly(&f).unwrap().scalar_mul(&rat(k))).unwrap();
        let c = periodic_direction_field(&j).unwrap();
        prop_assert!(2 * c.pdf.degree() <= c.essential_holonomy.dim());
        prop_assert_eq!(c.pdf.degree(), f.degree());
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        n in 1usize..5,
        g in prop::collection::vec(-5i64..=5, 10),
        p in prop::collection::vec(-4i64..=4, 16),
    ) {
        let g = qsym(&g, n);
        let pm: QMatrix = (0..n).map(|i| (0..n).map(|j| rat(p[(i * n + j) % p.len()])).collect()).collect();
        prop_assume!(!determinant(&pm, &Rational::one()).is_zero());
        let z = Rational::zero();
        let h = mat_mul(&mat_mul(&transpose(&pm, n), &g, &z), &pm, &z);
        prop_assert_eq!(signature(&h), signature(&g));
        let sig = signature(&g);
        prop_assert_eq!(sig.n_plus + sig.n_minus + sig.n_zero, n);
    }

    #[test]
    fn io_round_trips(fi in 0usize..3, a in coeffs(), s in prop::collection::vec((coeffs(), coeffs()), 1..3), seed in any::<u64>()) {
        let f = field_by_index(fi);
        let x = elem(&f, &a);
        prop_assert_eq!(element_from_file(&f, &element_to_file(&x)).unwrap(), x);
        let j = random_j(&f, &s);
        prop_assert_eq!(j_from_file(&j_to_file(&j)).unwrap(), j);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let surf = random_scissors(&mut rng, &square_tiled_sqrt2());
        let file = surface_to_file(&surf);
        let back = surface_from_file(&file).unwrap();
        prop_assert_eq!(surface_to_file(&back), file);
        prop_assert_eq!(back.j_invariant().unwrap(), surf.j_invariant().unwrap());
    }
}
