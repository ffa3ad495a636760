//! Unfolding of rational triangles.

use std::collections::VecDeque;

use num_integer::Integer;

use crate::error::{ApError, Result};
use crate::exactfield::{ratio, real_cyclotomic_field, Field, FieldElement};
use crate::surface::{EdgeGluing, Polygon, TranslationSurface};
use crate::wedge::{mat2, mat2_det, mat2_identity, mat2_mul, Mat2, PlanarVector};

/// `2 cos(kπ / 2q)` for `k = 0..=len`, as elements of `Q(2 cos(π / 2q))`.
pub fn half_angle_cosines(field: &Field, len: usize) -> Vec<FieldElement> {
    let mut p = vec![FieldElement::from_int(field, 2), FieldElement::theta(field)];
    while p.len() <= len {
        let k = p.len();
        p.push(&(&p[1] * &p[k - 1]) - &p[k - 2]);
    }
    p.truncate(len + 1);
    p
}

struct Trig {
    p: Vec<FieldElement>,
    q: usize,
}

impl Trig {
    /// `cos(mπ / q)`.
    fn cos(&self, m: usize) -> FieldElement {
        self.p[2 * (m % (2 * self.q))].scale(&ratio(1, 2))
    }

    /// `sin(mπ / q)`.
    fn sin(&self, m: usize) -> FieldElement {
        let m = m % (2 * self.q);
        self.p[(self.q as i64 - 2 * m as i64).unsigned_abs() as usize].scale(&ratio(1, 2))
    }

    /// Reflection across a line at angle `mπ / q` through the origin.
    fn reflection(&self, m: usize) -> Mat2 {
        let c = self.cos(2 * m);
        let s = self.sin(2 * m);
        mat2(c.clone(), s.clone(), s, -&c)
    }
}

/// Field `Q(2 cos(π / 2q))` with `q = p1 + p2 + p3`.
pub fn zk_field(p: [u64; 3]) -> Result<Field> {
    check_angles(p)?;
    real_cyclotomic_field(4 * p.iter().sum::<u64>())
}

fn check_angles(p: [u64; 3]) -> Result<()> {
    if p.iter().any(|&x| x == 0) || p[0].gcd(&p[1]).gcd(&p[2]) != 1 {
        return Err(ApError::BadAngles);
    }
    Ok(())
}

/// Translation surface unfolding the triangle with angles `p_i π / (p1 + p2 + p3)`.
///
/// The triangle has vertices `A = 0`, `B = (1, 0)` and apex `C` with angle `p1` at `A`.
pub fn zk_unfold_triangle(p1: u64, p2: u64, p3: u64) -> Result<TranslationSurface> {
    let angles = [p1, p2, p3];
    let field = zk_field(angles)?;
    let q = (p1 + p2 + p3) as usize;
    let trig = Trig { p: half_angle_cosines(&field, 4 * q), q };
    let (a1, a2, a3) = (p1 as usize, p2 as usize, p3 as usize);
    let r = &trig.sin(a2) * &trig.sin(a3).inverse()?;
    let a = PlanarVector::zero(&field);
    let b = PlanarVector::from_ints(&field, 1, 0);
    let c = PlanarVector::new(&r * &trig.cos(a1), &r * &trig.sin(a1))?;
    let gens = [trig.reflection(0), trig.reflection(q - a2), trig.reflection(a1)];

    let mut group: Vec<Mat2> = vec![mat2_identity(&field)];
    let mut queue = VecDeque::from([0usize]);
    let mut table: Vec<[usize; 3]> = vec![];
    while let Some(i) = queue.pop_front() {
        let mut row = [0; 3];
        for (e, g) in gens.iter().enumerate() {
            let h = mat2_mul(&group[i], g);
            row[e] = match group.iter().position(|x| *x == h) {
                Some(j) => j,
                None => {
                    group.push(h);
                    queue.push_back(group.len() - 1);
                    group.len() - 1
                }
            };
        }
        if table.len() <= i {
            table.resize(i + 1, [0; 3]);
        }
        table[i] = row;
    }

    let one = FieldElement::one(&field);
    let reflected: Vec<bool> = group.iter().map(|g| mat2_det(g) != one).collect();
    let polygons = group
        .iter()
        .zip(&reflected)
        .map(|(g, &rf)| {
            let (ga, gb, gc) = (a.apply(g), b.apply(g), c.apply(g));
            Polygon::new(if rf { vec![ga, gc, gb] } else { vec![ga, gb, gc] })
        })
        .collect::<Result<Vec<_>>>()?;
    let side = |g: usize, e: usize| if reflected[g] { 2 - e } else { e };
    let mut gluings = vec![];
    for (g, row) in table.iter().enumerate() {
        for (e, &h) in row.iter().enumerate() {
            if g < h {
                gluings.push(EdgeGluing::new(g, side(g, e), h, side(h, e)));
            }
        }
    }
    TranslationSurface::checked(&field, polygons, gluings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{minimal_polynomial, subfield_from_generators, QPoly};

    #[test]
    fn chebyshev_values() {
        let f = real_cyclotomic_field(20).unwrap();
        let p = half_angle_cosines(&f, 20);
        assert_eq!(p[5], FieldElement::zero(&f));
        assert_eq!(p[10], FieldElement::from_int(&f, -2));
        assert_eq!(minimal_polynomial(&p[8]), QPoly::from_ints(&[-1, 1, 1]));
        assert_eq!(subfield_from_generators(&f, &[p[8].clone()]).degree(), 2);
    }

    #[test]
    fn small_triangles() {
        let s = zk_unfold_triangle(1, 1, 2).unwrap();
        let t = s.validate().unwrap();
        assert_eq!((t.f, t.genus), (8, 1));
        let s = zk_unfold_triangle(1, 2, 2).unwrap();
        let t = s.validate().unwrap();
        assert_eq!(t.f, 10);
        assert_eq!(t.genus, 2);
        assert_eq!(zk_unfold_triangle(2, 2, 2).unwrap_err(), ApError::BadAngles);
        assert_eq!(zk_unfold_triangle(0, 1, 1).unwrap_err(), ApError::BadAngles);
    }
}
