//! Subfields of an ambient number field, minimal polynomials and primitive elements.

use num_traits::One;

use super::field::{Field, FieldElement, NumberField};
use super::linalg::{self, QMatrix};
use super::poly::QPoly;
use super::Rational;
use crate::error::Result;

/// Monic minimal polynomial of `a` over Q.
pub fn minimal_polynomial(a: &FieldElement) -> QPoly {
    let n = a.field().degree();
    let one = Rational::one();
    let mut powers = vec![FieldElement::one(a.field())];
    for d in 1..=n {
        let next = powers.last().expect("nonempty") * a;
        let cols: QMatrix = (0..n)
            .map(|r| powers.iter().map(|p| p.coeffs()[r].clone()).collect())
            .collect();
        if let Some(x) = linalg::solve(&cols, d, next.coeffs(), &one) {
            let mut c: Vec<Rational> = x.into_iter().map(|v| -v).collect();
            c.push(Rational::one());
            return QPoly::new(c);
        }
        powers.push(next);
    }
    unreachable!("degree of a minimal polynomial is bounded by the field degree")
}

/// A subfield `K` of an ambient field `L`, with a canonical Q-basis and a primitive element.
#[derive(Clone, Debug)]
pub struct SubfieldDescription {
    pub ambient: Field,
    /// Reduced echelon Q-basis of `K` in the power basis of `L`.
    pub qbasis: Vec<FieldElement>,
    pub primitive: FieldElement,
    pub primitive_minpoly: QPoly,
    /// `primitive^i` for `i < deg K`, expressed in `L`.
    pub embed_powers: Vec<FieldElement>,
    pivots: Vec<usize>,
}

impl SubfieldDescription {
    /// Q inside `ambient`.
    pub fn rationals(ambient: &Field) -> Self {
        subfield_from_generators(ambient, &[])
    }

    pub fn degree(&self) -> usize {
        self.qbasis.len()
    }

    /// Coordinates of `x` in `qbasis`, if `x` lies in the subfield.
    pub fn coordinates(&self, x: &FieldElement) -> Option<Vec<Rational>> {
        if !x.same_field(&self.qbasis[0]) {
            return None;
        }
        let c: Vec<Rational> = self.pivots.iter().map(|&p| x.coeffs()[p].clone()).collect();
        let mut y = FieldElement::zero(&self.ambient);
        for (ci, b) in c.iter().zip(&self.qbasis) {
            y = &y + &b.scale(ci);
        }
        (y == *x).then_some(c)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn is_subfield_of(&self, other: &SubfieldDescription) -> bool {
        self.qbasis.iter().all(|b| other.contains(b))
    }

    /// Equality as subfields of the same ambient field.
    pub fn same_as(&self, other: &SubfieldDescription) -> bool {
        self.degree() == other.degree() && self.is_subfield_of(other)
    }

    /// The subfield as a standalone field generated by `primitive`.
    pub fn as_field(&self) -> Result<Field> {
        let p = &self.primitive_minpoly;
        if p.degree() == Some(1) {
            let r = -p.coeff(0);
            return NumberField::new_irreducible(p.clone(), &r - Rational::one(), &r + Rational::one());
        }
        let roots = p.isolate_real_roots();
        let mut bits = 16;
        loop {
            let (lo, hi) = self.primitive.enclosure(bits);
            if let Some((a, b)) = roots.iter().find(|(a, b)| *a < lo && hi < *b) {
                return NumberField::new_irreducible(p.clone(), a.clone(), b.clone());
            }
            bits += 16;
        }
    }

    /// Image in `L` of an element of [`SubfieldDescription::as_field`].
    pub fn to_ambient(&self, x: &FieldElement) -> FieldElement {
        let mut y = FieldElement::zero(&self.ambient);
        for (c, p) in x.coeffs().iter().zip(&self.embed_powers) {
            y = &y + &p.scale(c);
        }
        y
    }

    /// Coordinates of `x ∈ K` in the power basis of `primitive`.
    pub fn primitive_coordinates(&self, x: &FieldElement) -> Option<Vec<Rational>> {
        let n = self.ambient.degree();
        let m = self.degree();
        let cols: QMatrix = (0..n)
            .map(|r| self.embed_powers.iter().map(|p| p.coeffs()[r].clone()).collect())
            .collect();
        linalg::solve(&cols, m, x.coeffs(), &Rational::one())
    }

    /// Trace from `K` down to Q of an element of `K` given in `L`.
    pub fn trace(&self, x: &FieldElement) -> Rational {
        x.trace() / Rational::from_integer((self.ambient.degree() / self.degree()).into())
    }
}

/// Smallest subfield of `ambient` containing `gens`.
pub fn subfield_from_generators(ambient: &Field, gens: &[FieldElement]) -> SubfieldDescription {
    let n = ambient.degree();
    let mut rows: QMatrix = vec![FieldElement::one(ambient).coeffs().to_vec()];
    rows.extend(gens.iter().map(|g| g.coeffs().to_vec()));
    let (mut basis, mut pivots) = linalg::row_space(&rows, n);
    loop {
        let elems: Vec<FieldElement> = basis.iter().map(|r| FieldElement::new(ambient, r.clone())).collect();
        let mut ext = basis.clone();
        for i in 0..elems.len() {
            for j in i..elems.len() {
                ext.push((&elems[i] * &elems[j]).coeffs().to_vec());
            }
        }
        let (b2, p2) = linalg::row_space(&ext, n);
        if b2.len() == basis.len() {
            break;
        }
        basis = b2;
        pivots = p2;
    }
    let qbasis: Vec<FieldElement> = basis.into_iter().map(|r| FieldElement::new(ambient, r)).collect();
    let m = qbasis.len();
    let (primitive, primitive_minpoly) = find_primitive(&qbasis, m);
    let embed_powers = (0..m).map(|i| primitive.pow(i)).collect();
    SubfieldDescription {
        ambient: ambient.clone(),
        qbasis,
        primitive,
        primitive_minpoly,
        embed_powers,
        pivots,
    }
}

fn find_primitive(basis: &[FieldElement], m: usize) -> (FieldElement, QPoly) {
    let ambient = basis[0].field().clone();
    let mut h = 1usize;
    loop {
        for c in compositions(h, m) {
            let mut x = FieldElement::zero(&ambient);
            for (ci, b) in c.iter().zip(basis) {
                if *ci > 0 {
                    x = &x + &b.scale(&Rational::from_integer((*ci as i64).into()));
                }
            }
            let mp = minimal_polynomial(&x);
            if mp.degree() == Some(m) {
                return (x, mp);
            }
        }
        h += 1;
    }
}

/// Nonnegative integer vectors of length `m` summing to `h`, earlier coordinates largest first.
fn compositions(h: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![h]];
    }
    let mut out = Vec::new();
    for first in (0..=h).rev() {
        for mut rest in compositions(h - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
