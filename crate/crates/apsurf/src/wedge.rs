//! Elements of `L² ∧_Q L²` in canonical rational coordinates, SAF projections,
//! the cup-product pairing, areas and the `GL(2, L)` action.
//!
//! Coordinates are taken in the Q-basis `(θ^0 e_x, …, θ^{n-1} e_x, θ^0 e_y, …, θ^{n-1} e_y)`.
//! A coordinate matrix `C` encodes `Σ_{i<j} C[i][j] e_i ∧ e_j`. The pairing carries
//! a factor ½, so the unit square torus has `J = 2 e_x ∧ e_y` and area 1.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{ApError, Result};
use crate::exactfield::linalg::{self, QMatrix};
use crate::exactfield::{Field, FieldElement, FieldEmbedding, Rational};

/// A vector of `L²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarVector {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl PlanarVector {
    pub fn new(x: FieldElement, y: FieldElement) -> Result<Self> {
        if !x.same_field(&y) {
            return Err(ApError::FieldMismatch);
        }
        Ok(PlanarVector { x, y })
    }

    pub fn zero(field: &Field) -> Self {
        PlanarVector {
            x: FieldElement::zero(field),
            y: FieldElement::zero(field),
        }
    }

    pub fn from_ints(field: &Field, x: i64, y: i64) -> Self {
        PlanarVector {
            x: FieldElement::from_int(field, x),
            y: FieldElement::from_int(field, y),
        }
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// Q-coordinates in `Q^{2n}`.
    pub fn coords(&self) -> Vec<Rational> {
        let mut c = self.x.coeffs().to_vec();
        c.extend_from_slice(self.y.coeffs());
        c
    }

    pub fn from_coords(field: &Field, c: &[Rational]) -> Self {
        let n = field.degree();
        PlanarVector {
            x: FieldElement::new(field, c[..n].to_vec()),
            y: FieldElement::new(field, c[n..2 * n].to_vec()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &PlanarVector) -> PlanarVector {
        PlanarVector {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    pub fn sub(&self, o: &PlanarVector) -> PlanarVector {
        PlanarVector {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn neg(&self) -> PlanarVector {
        PlanarVector {
            x: -&self.x,
            y: -&self.y,
        }
    }

    pub fn scale_q(&self, q: &Rational) -> PlanarVector {
        PlanarVector {
            x: self.x.scale(q),
            y: self.y.scale(q),
        }
    }

    pub fn scale(&self, a: &FieldElement) -> PlanarVector {
        PlanarVector {
            x: &self.x * a,
            y: &self.y * a,
        }
    }

    /// `det(self, o)`.
    pub fn cross(&self, o: &PlanarVector) -> FieldElement {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn dot(&self, o: &PlanarVector) -> FieldElement {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    /// Slope `y/x`, or ∞ for vertical vectors.
    pub fn slope(&self) -> Slope {
        if self.x.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(self.y.try_div(&self.x).expect("nonzero"))
        }
    }

    /// Direction vector `(1, s)` or `(0, 1)`.
    pub fn of_slope(field: &Field, s: &Slope) -> PlanarVector {
        match s {
            Slope::Infinite => PlanarVector::from_ints(field, 0, 1),
            Slope::Finite(v) => PlanarVector {
                x: FieldElement::one(field),
                y: v.clone(),
            },
        }
    }

    pub fn apply(&self, m: &Mat2) -> PlanarVector {
        PlanarVector {
            x: &(&m[0][0] * &self.x) + &(&m[0][1] * &self.y),
            y: &(&m[1][0] * &self.x) + &(&m[1][1] * &self.y),
        }
    }
}

impl fmt::Display for PlanarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A direction in `P¹(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(FieldElement),
    Infinite,
}

impl Slope {
    pub fn rational(field: &Field, n: i64, d: i64) -> Slope {
        Slope::Finite(FieldElement::from_rational(field, crate::exactfield::ratio(n, d)))
    }

    /// Image of the slope under a linear map.
    pub fn apply(&self, field: &Field, m: &Mat2) -> Slope {
        PlanarVector::of_slope(field, self).apply(m).slope()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Infinite => f.write_str("inf"),
            Slope::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A Q-linear functional `L → Q` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional(pub Vec<Rational>);

impl Functional {
    pub fn zero(n: usize) -> Self {
        Functional(vec![Rational::zero(); n])
    }

    /// The coordinate functional `c_k`.
    pub fn coordinate(n: usize, k: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[k] = Rational::one();
        Functional(v)
    }

    pub fn eval(&self, a: &FieldElement) -> Rational {
        self.0.iter().zip(a.coeffs()).map(|(f, c)| f * c).sum()
    }
}

/// A Q-linear functional on `L²`, `(x, y) ↦ fx(x) + fy(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarFunctional {
    pub fx: Functional,
    pub fy: Functional,
}

impl PlanarFunctional {
    /// `f ∘ dx`.
    pub fn dx(f: Functional) -> Self {
        let n = f.0.len();
        PlanarFunctional {
            fx: f,
            fy: Functional::zero(n),
        }
    }

    /// `f ∘ dy`.
    pub fn dy(f: Functional) -> Self {
        let n = f.0.len();
        PlanarFunctional {
            fx: Functional::zero(n),
            fy: f,
        }
    }

    fn row(&self) -> Vec<Rational> {
        let mut r = self.fx.0.clone();
        r.extend_from_slice(&self.fy.0);
        r
    }
}

/// 2×2 matrix over L, row-major.
pub type Mat2 = [[FieldElement; 2]; 2];

pub fn mat2(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Mat2 {
    [[a, b], [c, d]]
}

pub fn mat2_identity(field: &Field) -> Mat2 {
    mat2(
        FieldElement::one(field),
        FieldElement::zero(field),
        FieldElement::zero(field),
        FieldElement::one(field),
    )
}

pub fn mat2_det(m: &Mat2) -> FieldElement {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_inverse(m: &Mat2) -> Result<Mat2> {
    let d = mat2_det(m);
    let inv = d.inverse().map_err(|_| ApError::SingularMatrix)?;
    Ok([
        [&m[1][1] * &inv, &(-&m[0][1]) * &inv],
        [&(-&m[1][0]) * &inv, &m[0][0] * &inv],
    ])
}

/// An element of `L² ∧_Q L²`.
#[derive(Clone, Debug)]
pub struct WedgeElement {
    field: Field,
    coords: QMatrix,
}

impl PartialEq for WedgeElement {
    fn eq(&self, o: &Self) -> bool {
        self.coords == o.coords && self.field.same_as(&o.field)
    }
}

impl Eq for WedgeElement {}

impl WedgeElement {
    pub fn zero(field: &Field) -> Self {
        let m = 2 * field.degree();
        WedgeElement {
            field: field.clone(),
            coords: linalg::q_zeros(m, m),
        }
    }

    /// Validates antisymmetry and size.
    pub fn from_coords(field: &Field, coords: QMatrix) -> Result<Self> {
        let m = 2 * field.degree();
        if coords.len() != m || coords.iter().any(|r| r.len() != m) {
            return Err(ApError::InvalidInput(format!("coordinate matrix must be {m}x{m}")));
        }
        for i in 0..m {
            for j in 0..m {
                if coords[i][j] != -coords[j][i].clone() {
                    return Err(ApError::InvalidInput("coordinate matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(WedgeElement {
            field: field.clone(),
            coords,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &QMatrix {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn try_add(&self, o: &WedgeElement) -> Result<WedgeElement> {
        if !self.field.same_as(&o.field) {
            return Err(ApError::FieldMismatch);
        }
        Ok(WedgeElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    pub fn scalar_mul(&self, q: &Rational) -> WedgeElement {
        WedgeElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|r| r.iter().map(|c| c * q).collect()).collect(),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| (0..m).all(|j| self.coords[i][j] == -self.coords[j][i].clone()))
    }

    /// Upper-triangle support as (i, j, value) triples.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if !self.coords[i][j].is_zero() {
                    out.push((i, j, self.coords[i][j].clone()));
                }
            }
        }
        out
    }

    /// Transports `J` along a field embedding `K → L`.
    pub fn embed(&self, e: &FieldEmbedding) -> Result<WedgeElement> {
        if !self.field.same_as(e.source()) {
            return Err(ApError::FieldMismatch);
        }
        let m = e.matrix();
        let (n_src, n_tgt) = (self.field.degree(), e.target().degree());
        let mut big = linalg::q_zeros(2 * n_tgt, 2 * n_src);
        for r in 0..n_tgt {
            for c in 0..n_src {
                big[r][c] = m[r][c].clone();
                big[n_tgt + r][n_src + c] = m[r][c].clone();
            }
        }
        Ok(WedgeElement {
            field: e.target().clone(),
            coords: congruence(&big, &self.coords),
        })
    }
}

/// `A C Aᵀ`.
fn congruence(a: &QMatrix, c: &QMatrix) -> QMatrix {
    let zero = Rational::zero();
    let ac = linalg::mat_mul(a, c, &zero);
    let at = linalg::transpose(a, c.len());
    linalg::mat_mul(&ac, &at, &zero)
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.degree();
        let label = |i: usize| {
            let (axis, k) = if i < n { ("x", i) } else { ("y", i - n) };
            match k {
                0 => format!("e{axis}"),
                1 => format!("t*e{axis}"),
                _ => format!("t^{k}*e{axis}"),
            }
        };
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(i, j, c)| format!("{c} ({})^({})", label(*i), label(*j)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `v ∧ w`.
pub fn wedge_of(v: &PlanarVector, w: &PlanarVector) -> Result<WedgeElement> {
    if !v.x.same_field(&w.x) || !v.x.same_field(&v.y) || !w.x.same_field(&w.y) {
        return Err(ApError::FieldMismatch);
    }
    let field = v.field().clone();
    let (a, b) = (v.coords(), w.coords());
    let m = a.len();
    let mut c = linalg::q_zeros(m, m);
    for i in 0..m {
        if a[i].is_zero() && b[i].is_zero() {
            continue;
        }
        for j in 0..m {
            c[i][j] = &a[i] * &b[j] - &b[i] * &a[j];
        }
    }
    Ok(WedgeElement { field, coords: c })
}

/// Sum of `v_j ∧ w_j`.
pub fn wedge_sum(field: &Field, pairs: &[(PlanarVector, PlanarVector)]) -> Result<WedgeElement> {
    let mut acc = WedgeElement::zero(field);
    for (v, w) in pairs {
        acc = acc.try_add(&wedge_of(v, w)?)?;
    }
    Ok(acc)
}

/// An element of `L ∧_Q L`.
#[derive(Clone, Debug)]
pub struct SAFValue {
    field: Field,
    coords: QMatrix,
}

impl PartialEq for SAFValue {
    fn eq(&self, o: &Self) -> bool {
        self.coords == o.coords && self.field.same_as(&o.field)
    }
}

impl SAFValue {
    pub fn zero(field: &Field) -> Self {
        let n = field.degree();
        SAFValue {
            field: field.clone(),
            coords: linalg::q_zeros(n, n),
        }
    }

    /// `a ∧ b` in `L ∧_Q L`.
    pub fn wedge(a: &FieldElement, b: &FieldElement) -> SAFValue {
        let (x, y) = (a.coeffs(), b.coeffs());
        let n = x.len();
        let coords = (0..n)
            .map(|i| (0..n).map(|j| &x[i] * &y[j] - &y[i] * &x[j]).collect())
            .collect();
        SAFValue {
            field: a.field().clone(),
            coords,
        }
    }

    pub fn add(&self, o: &SAFValue) -> SAFValue {
        SAFValue {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, o: &SAFValue) -> SAFValue {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> SAFValue {
        SAFValue {
            field: self.field.clone(),
            coords: self.coords.iter().map(|r| r.iter().map(|c| c * q).collect()).collect(),
        }
    }

    pub fn coords(&self) -> &QMatrix {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }
}

/// Q-coordinates of the images of the basis vectors of `L²` under an L-linear functional
/// `(x, y) ↦ a x + b y`, one row per basis vector.
fn functional_rows(field: &Field, a: &FieldElement, b: &FieldElement) -> QMatrix {
    let n = field.degree();
    let mut rows = Vec::with_capacity(2 * n);
    for coef in [a, b] {
        for k in 0..n {
            rows.push((coef * &FieldElement::theta(field).pow(k)).coeffs().to_vec());
        }
    }
    rows
}

/// Image of `J` under the projection killing the direction of slope `s`
/// (`dy - s dx` for finite `s`, `dx` for ∞) applied to both legs.
pub fn saf_projection(j: &WedgeElement, s: &Slope) -> SAFValue {
    let f = j.field();
    let (a, b) = match s {
        Slope::Infinite => (FieldElement::one(f), FieldElement::zero(f)),
        Slope::Finite(v) => (-v, FieldElement::one(f)),
    };
    let p = functional_rows(f, &a, &b);
    let pt = linalg::transpose(&p, f.degree());
    let zero = Rational::zero();
    let coords = linalg::mat_mul(&linalg::mat_mul(&pt, &j.coords, &zero), &p, &zero);
    SAFValue {
        field: f.clone(),
        coords,
    }
}

/// `⟨θ*, τ*⟩ = ½ Σ θ(v_j)τ(w_j) − θ(w_j)τ(v_j)`.
pub fn pairing(th: &PlanarFunctional, ta: &PlanarFunctional, j: &WedgeElement) -> Rational {
    let (u, v) = (th.row(), ta.row());
    let mut acc = Rational::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (k, vk) in v.iter().enumerate() {
            if !vk.is_zero() {
                acc += ui * &j.coords[i][k] * vk;
            }
        }
    }
    acc / Rational::from_integer(2.into())
}

/// `½ Σ det(v_j, w_j)`, the L-valued pairing of `dx` and `dy`.
pub fn area(j: &WedgeElement) -> FieldElement {
    let f = j.field();
    let n = f.degree();
    let t = FieldElement::theta(f);
    let mut acc = FieldElement::zero(f);
    for a in 0..n {
        for b in 0..n {
            let c = &j.coords[a][n + b];
            if !c.is_zero() {
                acc = &acc + &t.pow(a + b).scale(c);
            }
        }
    }
    acc.scale(&crate::exactfield::ratio(1, 2))
}

/// Rational `2n × 2n` matrix of `M` acting on `L² ≅ Q^{2n}`.
pub fn mat2_rational(field: &Field, m: &Mat2) -> QMatrix {
    let n = field.degree();
    let t = FieldElement::theta(field);
    let mut cols = Vec::with_capacity(2 * n);
    for axis in 0..2 {
        for k in 0..n {
            let p = t.pow(k);
            let img = PlanarVector {
                x: &m[0][axis] * &p,
                y: &m[1][axis] * &p,
            };
            cols.push(img.coords());
        }
    }
    linalg::transpose(&cols, 2 * n)
}

/// `M` applied to both legs of every generator.
pub fn gl2_act(m: &Mat2, j: &WedgeElement) -> Result<WedgeElement> {
    if mat2_det(m).is_zero() {
        return Err(ApError::SingularMatrix);
    }
    if m.iter().flatten().any(|e| !e.field().same_as(j.field())) {
        return Err(ApError::FieldMismatch);
    }
    let mq = mat2_rational(j.field(), m);
    Ok(WedgeElement {
        field: j.field().clone(),
        coords: congruence(&mq, &j.coords),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{field_create, rat, ratio, QPoly};

    fn sqrt2() -> Field {
        field_create(QPoly::from_ints(&[-2, 0, 1]), rat(1), ratio(3, 2)).unwrap()
    }

    fn el(f: &Field, c: &[(i64, i64)]) -> FieldElement {
        FieldElement::new(f, c.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    fn pv(x: FieldElement, y: FieldElement) -> PlanarVector {
        PlanarVector::new(x, y).unwrap()
    }

    fn jk_sqrt2(f: &Field) -> WedgeElement {
        let z = FieldElement::zero(f);
        let a = wedge_of(&pv(el(f, &[(1, 1)]), z.clone()), &pv(z.clone(), el(f, &[(1, 2)]))).unwrap();
        let b = wedge_of(&pv(el(f, &[(0, 1), (1, 1)]), z.clone()), &pv(z, el(f, &[(0, 1), (1, 4)]))).unwrap();
        a.try_add(&b).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let f = sqrt2();
        let j = wedge_of(&PlanarVector::from_ints(&f, 1, 0), &PlanarVector::from_ints(&f, 0, 1)).unwrap();
        assert_eq!(j.terms(), vec![(0, 2, rat(1))]);
        assert_eq!(j.coords()[2][0], rat(-1));
        let v = pv(el(&f, &[(1, 3)]), el(&f, &[(2, 1), (1, 1)]));
        assert!(wedge_of(&v, &v).unwrap().is_zero());
        let z = FieldElement::zero(&f);
        let w = wedge_of(
            &pv(FieldElement::theta(&f), z.clone()),
            &pv(z, el(&f, &[(0, 1), (1, 4)])),
        )
        .unwrap();
        assert_eq!(w.terms(), vec![(1, 3, ratio(1, 4))]);
    }

    #[test]
    fn saf_examples() {
        let f = sqrt2();
        let j = wedge_of(&PlanarVector::from_ints(&f, 1, 0), &PlanarVector::from_ints(&f, 0, 1)).unwrap();
        assert!(saf_projection(&j, &Slope::Finite(FieldElement::zero(&f))).is_zero());
        let s = saf_projection(&j, &Slope::Finite(FieldElement::theta(&f)));
        assert_eq!(s, SAFValue::wedge(&FieldElement::one(&f), &FieldElement::theta(&f)));
        assert!(saf_projection(&j, &Slope::rational(&f, 3, 1)).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let q = crate::exactfield::NumberField::rationals();
        let torus = wedge_of(&PlanarVector::from_ints(&q, 2, 0), &PlanarVector::from_ints(&q, 0, 1)).unwrap();
        let dx = PlanarFunctional::dx(Functional::coordinate(1, 0));
        let dy = PlanarFunctional::dy(Functional::coordinate(1, 0));
        assert_eq!(pairing(&dx, &dy, &torus), rat(1));
        assert_eq!(pairing(&dx, &dx, &torus), rat(0));
        let f = sqrt2();
        let jk = jk_sqrt2(&f);
        assert_eq!(area(&jk), el(&f, &[(1, 2)]));
        assert_eq!(pairing(&dy, &dx, &torus), rat(-1));
    }

    #[test]
    fn area_examples() {
        let q = crate::exactfield::NumberField::rationals();
        let torus = wedge_of(&PlanarVector::from_ints(&q, 2, 0), &PlanarVector::from_ints(&q, 0, 1)).unwrap();
        assert_eq!(area(&torus), FieldElement::one(&q));
        assert!(area(&WedgeElement::zero(&q)).is_zero());
    }

    #[test]
    fn gl2_examples() {
        let f = sqrt2();
        let j = wedge_of(&PlanarVector::from_ints(&f, 1, 0), &PlanarVector::from_ints(&f, 0, 1)).unwrap();
        assert_eq!(gl2_act(&mat2_identity(&f), &j).unwrap(), j);
        let d = mat2(
            FieldElement::from_int(&f, 2),
            FieldElement::zero(&f),
            FieldElement::zero(&f),
            el(&f, &[(1, 2)]),
        );
        assert_eq!(gl2_act(&d, &j).unwrap(), j);
        let s = FieldElement::theta(&f);
        let d = mat2(s.clone(), FieldElement::zero(&f), FieldElement::zero(&f), el(&f, &[(0, 1), (1, 2)]));
        let moved = gl2_act(&d, &j).unwrap();
        let expected = wedge_of(
            &pv(s.clone(), FieldElement::zero(&f)),
            &pv(FieldElement::zero(&f), el(&f, &[(0, 1), (1, 2)])),
        )
        .unwrap();
        assert_eq!(moved, expected);
        assert_ne!(moved, j);
        let sing = mat2(s.clone(), s.clone(), s.clone(), s);
        assert_eq!(gl2_act(&sing, &j).unwrap_err(), ApError::SingularMatrix);
    }

    #[test]
    fn module_structure_examples() {
        let f = sqrt2();
        let j = jk_sqrt2(&f);
        assert!(j.try_add(&j.scalar_mul(&rat(-1))).unwrap().is_zero());
        let t = wedge_of(&PlanarVector::from_ints(&f, 1, 0), &PlanarVector::from_ints(&f, 0, 1)).unwrap();
        assert!(!t.is_zero());
        let t2 = wedge_of(&PlanarVector::from_ints(&f, 2, 0), &PlanarVector::from_ints(&f, 0, 1)).unwrap();
        assert_eq!(t.scalar_mul(&rat(2)), t2);
    }
}
