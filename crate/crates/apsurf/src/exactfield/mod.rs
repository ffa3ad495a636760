//! Exact rational and real-embedded number field arithmetic.

mod factor;
mod field;
pub mod linalg;
mod poly;
mod subfield;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use factor::is_irreducible;
pub use field::{eval_lpoly, rational_between, Field, FieldElement, LPoly, NumberField};
pub use poly::{rat, ratio, QPoly};
pub use subfield::{minimal_polynomial, subfield_from_generators, SubfieldDescription};

use crate::error::{ApError, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Arithmetic operation selector for [`elem_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Validated field construction.
pub fn field_create(minpoly: QPoly, lo: Rational, hi: Rational) -> Result<Field> {
    NumberField::new(minpoly, lo, hi)
}

pub fn elem_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub fn trace(a: &FieldElement) -> Rational {
    a.trace()
}

pub fn sign(a: &FieldElement) -> i8 {
    a.sign()
}

/// Gram matrix `tr(b_i b_j)`.
pub fn trace_gram(basis: &[FieldElement]) -> linalg::QMatrix {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| (a * b).trace()).collect())
        .collect()
}

/// The basis `β` with `tr(α_i β_j) = δ_ij`.
pub fn dual_trace_basis(basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let Some(first) = basis.first() else {
        return Err(ApError::NotABasis);
    };
    let field = first.field().clone();
    if basis.len() != field.degree() || basis.iter().any(|b| !b.same_field(first)) {
        return Err(ApError::NotABasis);
    }
    let inv = linalg::inverse(&trace_gram(basis), &Rational::one()).ok_or(ApError::NotABasis)?;
    Ok(inv
        .iter()
        .map(|row| {
            let mut acc = FieldElement::zero(&field);
            for (c, b) in row.iter().zip(basis) {
                acc = &acc + &b.scale(c);
            }
            acc
        })
        .collect())
}

/// Synthetic division of a polynomial over L by `x - t`; fails unless `p(t) = 0`.
pub fn poly_div_linear(p: &[FieldElement], t: &FieldElement) -> Result<LPoly> {
    if p.is_empty() {
        return Ok(vec![]);
    }
    if p.iter().any(|c| !c.same_field(t)) {
        return Err(ApError::FieldMismatch);
    }
    let n = p.len() - 1;
    let mut q = vec![FieldElement::zero(t.field()); n];
    let mut carry = FieldElement::zero(t.field());
    for k in (1..=n).rev() {
        carry = &(&carry * t) + &p[k];
        q[k - 1] = carry.clone();
    }
    let rem = &(&carry * t) + &p[0];
    if !rem.is_zero() {
        return Err(ApError::NotARoot);
    }
    Ok(q)
}

/// A rational polynomial viewed over L.
pub fn lift_poly(field: &Field, p: &QPoly) -> LPoly {
    p.coeffs()
        .iter()
        .map(|c| FieldElement::from_rational(field, c.clone()))
        .collect()
}

/// The cyclotomic polynomial `Φ_m`.
pub fn cyclotomic_poly(m: u64) -> QPoly {
    let mut num = QPoly::monomial(Rational::one(), m as usize);
    num = &num - &QPoly::one();
    for d in 1..m {
        if m % d == 0 {
            num = num.div_rem(&cyclotomic_poly(d)).0;
        }
    }
    num
}

/// Minimal polynomial of `2cos(2π/m)`, from `Φ_m` by the substitution `w = z + 1/z`.
pub fn real_cyclotomic_minpoly(m: u64) -> QPoly {
    assert!(m >= 3, "m must be at least 3");
    let phi = cyclotomic_poly(m);
    let k = phi.degree().expect("nonzero") / 2;
    // Chebyshev-type polynomials with P_j(z + 1/z) = z^j + z^-j.
    let w = QPoly::x();
    let mut p_prev = QPoly::constant(rat(2));
    let mut p_cur = w.clone();
    let mut acc = QPoly::constant(phi.coeff(k));
    for j in 1..=k {
        if j > 1 {
            let next = &(&w * &p_cur) - &p_prev;
            p_prev = p_cur;
            p_cur = next;
        }
        acc = &acc + &p_cur.scale(&phi.coeff(k + j));
    }
    acc
}

/// The real field `Q(2cos(2π/m))` with its designated generator `2cos(2π/m)`.
pub fn real_cyclotomic_field(m: u64) -> Result<Field> {
    let p = real_cyclotomic_minpoly(m);
    if p.degree() == Some(1) {
        let r = -p.coeff(0);
        return NumberField::new(p, &r - Rational::one(), &r + Rational::one());
    }
    // 2cos(2π/m) is the largest real root.
    NumberField::largest_real_root(&p)
}

/// Field homomorphism `K -> L` determined by the image of the generator of `K`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: Field,
    target: Field,
    powers: Vec<FieldElement>,
}

impl FieldEmbedding {
    /// Checks that `image` is the real root of `K`'s minimal polynomial designated by `K`.
    pub fn new(source: &Field, image: &FieldElement) -> Result<Self> {
        let p = lift_poly(image.field(), source.minpoly());
        if !eval_lpoly(&p, image).is_zero() {
            return Err(ApError::NotARoot);
        }
        let (lo, hi) = source.root_interval();
        let t = image.field();
        let above = image - &FieldElement::from_rational(t, lo);
        let below = &FieldElement::from_rational(t, hi) - image;
        if above.sign() <= 0 || below.sign() <= 0 {
            return Err(ApError::NoRootInInterval);
        }
        let powers = (0..source.degree()).map(|i| image.pow(i)).collect();
        Ok(FieldEmbedding {
            source: source.clone(),
            target: t.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let mut y = FieldElement::zero(&self.target);
        for (c, p) in x.coeffs().iter().zip(&self.powers) {
            if !c.is_zero() {
                y = &y + &p.scale(c);
            }
        }
        y
    }

    /// Matrix (target dimension by source dimension) of the underlying Q-linear map.
    pub fn matrix(&self) -> linalg::QMatrix {
        let cols: Vec<Vec<Rational>> = self.powers.iter().map(|p| p.coeffs().to_vec()).collect();
        linalg::transpose(&cols, self.target.degree())
    }
}

/// `2^k` as a rational.
pub fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Field {
        field_create(QPoly::from_ints(&[-2, 0, 1]), rat(1), ratio(3, 2)).unwrap()
    }

    fn cbrt2() -> Field {
        field_create(QPoly::from_ints(&[-2, 0, 0, 1]), ratio(5, 4), ratio(13, 10)).unwrap()
    }

    fn el(f: &Field, c: &[(i64, i64)]) -> FieldElement {
        FieldElement::new(f, c.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn field_create_examples() {
        assert_eq!(sqrt2().degree(), 2);
        assert_eq!(cbrt2().degree(), 3);
        assert_eq!(
            field_create(QPoly::from_ints(&[-1, 0, 1]), rat(0), rat(2)).unwrap_err(),
            ApError::NotIrreducible
        );
        assert_eq!(
            field_create(QPoly::from_ints(&[-2, 0, 1]), rat(2), rat(3)).unwrap_err(),
            ApError::NoRootInInterval
        );
        assert_eq!(
            field_create(QPoly::from_ints(&[-2, 0, 1]), rat(-2), rat(2)).unwrap_err(),
            ApError::MultipleRootsInInterval
        );
    }

    #[test]
    fn arithmetic_examples() {
        let k = sqrt2();
        let s = FieldElement::theta(&k);
        assert_eq!(&s * &s, FieldElement::from_int(&k, 2));
        let l = cbrt2();
        let c = FieldElement::theta(&l);
        assert_eq!(&c * &c.pow(2), FieldElement::from_int(&l, 2));
        let two_s = s.scale(&rat(2));
        let inv = elem_arith(&FieldElement::one(&k), &two_s, ArithOp::Div).unwrap();
        assert_eq!(inv, el(&k, &[(0, 1), (1, 4)]));
        assert_eq!(&two_s * &inv, FieldElement::one(&k));
        assert_eq!(
            elem_arith(&s, &FieldElement::zero(&k), ArithOp::Div).unwrap_err(),
            ApError::DivisionByZero
        );
        assert_eq!(elem_arith(&s, &c, ArithOp::Add).unwrap_err(), ApError::FieldMismatch);
    }

    #[test]
    fn trace_examples() {
        let k = sqrt2();
        assert_eq!(trace(&FieldElement::one(&k)), rat(2));
        assert_eq!(trace(&FieldElement::theta(&k)), rat(0));
        assert_eq!(trace(&el(&k, &[(3, 1), (1, 1)])), rat(6));
        // Oracle: trace of the multiplication matrix.
        let l = cbrt2();
        let x = el(&l, &[(1, 2), (-3, 1), (5, 7)]);
        let m = x.mult_matrix();
        let t: Rational = (0..3).map(|i| m[i][i].clone()).sum();
        assert_eq!(trace(&x), t);
    }

    #[test]
    fn sign_examples() {
        let k = sqrt2();
        assert_eq!(sign(&FieldElement::zero(&k)), 0);
        assert_eq!(sign(&el(&k, &[(-1, 1), (1, 1)])), 1);
        let l = cbrt2();
        assert_eq!(sign(&el(&l, &[(1, 1), (-1, 1)])), -1);
        // 140/99 < sqrt2 < 99/70 and sqrt2 < 577/408
        assert_eq!(sign(&el(&k, &[(-140, 99), (1, 1)])), 1);
        assert_eq!(sign(&el(&k, &[(-99, 70), (1, 1)])), -1);
        assert_eq!(sign(&el(&k, &[(-577, 408), (1, 1)])), -1);
    }

    #[test]
    fn dual_basis_examples() {
        let k = sqrt2();
        let d = dual_trace_basis(&[FieldElement::one(&k), FieldElement::theta(&k)]).unwrap();
        assert_eq!(d, vec![el(&k, &[(1, 2)]), el(&k, &[(0, 1), (1, 4)])]);
        let q = NumberField::rationals();
        let d = dual_trace_basis(&[FieldElement::one(&q)]).unwrap();
        assert_eq!(d, vec![FieldElement::one(&q)]);
        let l = cbrt2();
        let b = vec![FieldElement::one(&l), FieldElement::theta(&l), FieldElement::theta(&l).pow(2)];
        assert_eq!(
            trace_gram(&b),
            vec![
                vec![rat(3), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(6)],
                vec![rat(0), rat(6), rat(0)]
            ]
        );
        let d = dual_trace_basis(&b).unwrap();
        assert_eq!(
            d,
            vec![
                el(&l, &[(1, 3)]),
                el(&l, &[(0, 1), (0, 1), (1, 6)]),
                el(&l, &[(0, 1), (1, 6)])
            ]
        );
        assert_eq!(
            dual_trace_basis(&[FieldElement::one(&k), FieldElement::from_int(&k, 2)]).unwrap_err(),
            ApError::NotABasis
        );
    }

    #[test]
    fn poly_div_linear_examples() {
        let k = sqrt2();
        let s = FieldElement::theta(&k);
        let p = lift_poly(&k, &QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(poly_div_linear(&p, &s).unwrap(), vec![s.clone(), FieldElement::one(&k)]);
        let l = cbrt2();
        let c = FieldElement::theta(&l);
        let p = lift_poly(&l, &QPoly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(
            poly_div_linear(&p, &c).unwrap(),
            vec![c.pow(2), c.clone(), FieldElement::one(&l)]
        );
        let lin = vec![-&c, FieldElement::one(&l)];
        assert_eq!(poly_div_linear(&lin, &c).unwrap(), vec![FieldElement::one(&l)]);
        assert_eq!(
            poly_div_linear(&p, &FieldElement::one(&l)).unwrap_err(),
            ApError::NotARoot
        );
    }

    #[test]
    fn minimal_polynomial_examples() {
        let k = sqrt2();
        assert_eq!(minimal_polynomial(&FieldElement::from_int(&k, 5)), QPoly::from_ints(&[-5, 1]));
        assert_eq!(minimal_polynomial(&FieldElement::theta(&k)), QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(minimal_polynomial(&el(&k, &[(1, 1), (1, 1)])), QPoly::from_ints(&[-1, -2, 1]));
        let l = cbrt2();
        let a = el(&l, &[(0, 1), (1, 1), (1, 1)]);
        assert_eq!(minimal_polynomial(&a), QPoly::from_ints(&[-6, -6, 0, 1]));
    }

    #[test]
    fn subfield_examples() {
        let k = sqrt2();
        let s = subfield_from_generators(&k, &[FieldElement::from_int(&k, 2), FieldElement::from_int(&k, 3)]);
        assert_eq!(s.degree(), 1);
        assert_eq!(s.qbasis, vec![FieldElement::one(&k)]);
        let s = subfield_from_generators(&k, &[FieldElement::theta(&k)]);
        assert_eq!(s.degree(), 2);
        assert_eq!(s.primitive_minpoly, QPoly::from_ints(&[-2, 0, 1]));
        let l = cbrt2();
        let s = subfield_from_generators(&l, &[el(&l, &[(0, 1), (1, 1), (1, 1)])]);
        assert_eq!(s.degree(), 3);
        assert_eq!(s.primitive_minpoly.degree(), Some(3));
    }

    #[test]
    fn quadratic_subfield_of_quartic() {
        // Q(2^(1/4)) contains Q(sqrt 2).
        let f = field_create(QPoly::from_ints(&[-2, 0, 0, 0, 1]), rat(1), rat(2)).unwrap();
        let t = FieldElement::theta(&f);
        let s = subfield_from_generators(&f, &[t.pow(2)]);
        assert_eq!(s.degree(), 2);
        assert!(s.contains(&t.pow(2)));
        assert!(!s.contains(&t));
        let kf = s.as_field().unwrap();
        assert_eq!(kf.degree(), 2);
        let g = FieldElement::theta(&kf);
        assert_eq!(minimal_polynomial(&s.to_ambient(&g)), s.primitive_minpoly);
    }

    #[test]
    fn real_cyclotomic_examples() {
        assert_eq!(real_cyclotomic_minpoly(3), QPoly::from_ints(&[1, 1]));
        assert_eq!(real_cyclotomic_minpoly(5), QPoly::from_ints(&[-1, 1, 1]));
        assert_eq!(real_cyclotomic_minpoly(7), QPoly::from_ints(&[-1, -2, 1, 1]));
        let f = real_cyclotomic_field(7).unwrap();
        let v = FieldElement::theta(&f).to_f64();
        assert!((v - 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
        assert_eq!(real_cyclotomic_field(4).unwrap().degree(), 1);
    }

    #[test]
    fn embedding_checks_designated_root() {
        let l = field_create(QPoly::from_ints(&[-2, 0, 0, 0, 1]), rat(1), rat(2)).unwrap();
        let t = FieldElement::theta(&l);
        let k = sqrt2();
        let e = FieldEmbedding::new(&k, &t.pow(2)).unwrap();
        assert_eq!(e.apply(&FieldElement::theta(&k)), t.pow(2));
        assert!(FieldEmbedding::new(&k, &(-&t.pow(2))).is_err());
        assert!(FieldEmbedding::new(&k, &t).is_err());
    }
}
