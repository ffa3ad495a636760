//! The canonical invariant `J_K` and its realizations from integral matrices.

use crate::error::{ApError, Result};
use crate::exactfield::linalg::{self, Matrix};
use crate::exactfield::{
    dual_trace_basis, lift_poly, poly_div_linear, Field, FieldElement, SubfieldDescription,
};
use crate::wedge::{area, gl2_act, mat2, wedge_of, PlanarVector, WedgeElement};

/// An integer matrix together with a chosen eigenvalue.
#[derive(Clone, Debug)]
pub struct IntegralSymmetricInput {
    pub matrix: Vec<Vec<i64>>,
    pub lambda: FieldElement,
}

/// `Σ_j [α_j, 0] ∧ [0, β_j]`.
pub fn diagonal_j(field: &Field, alpha: &[FieldElement], beta: &[FieldElement]) -> Result<WedgeElement> {
    let z = FieldElement::zero(field);
    let mut acc = WedgeElement::zero(field);
    for (a, b) in alpha.iter().zip(beta) {
        let u = PlanarVector::new(a.clone(), z.clone())?;
        let v = PlanarVector::new(z.clone(), b.clone())?;
        acc = acc.try_add(&wedge_of(&u, &v)?)?;
    }
    Ok(acc)
}

/// Power basis `θ^j` and its trace dual `b_j / p'(θ)`, where `p(x) / (x - θ) = Σ b_j x^j`.
pub fn minpoly_dual_bases(k: &Field) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let t = FieldElement::theta(k);
    let p = lift_poly(k, k.minpoly());
    let q = poly_div_linear(&p, &t)?;
    let dp = FieldElement::from_poly(k, &k.minpoly().derivative());
    let inv = dp.inverse()?;
    let alpha = (0..k.degree()).map(|j| t.pow(j)).collect();
    let beta = q.iter().map(|b| b * &inv).collect();
    Ok((alpha, beta))
}

/// `J_K` from the minimal polynomial; area ½.
pub fn jk_from_minpoly(k: &Field) -> Result<WedgeElement> {
    let (alpha, beta) = minpoly_dual_bases(k)?;
    diagonal_j(k, &alpha, &beta)
}

/// `J_K` from a basis and its trace dual, which is verified.
pub fn jk_from_dual_bases(alpha: &[FieldElement], beta: &[FieldElement]) -> Result<WedgeElement> {
    let first = alpha.first().ok_or(ApError::NotDualBases)?;
    let expected = dual_trace_basis(alpha).map_err(|_| ApError::NotDualBases)?;
    if expected.len() != beta.len() || expected.iter().zip(beta).any(|(a, b)| a != b) {
        return Err(ApError::NotDualBases);
    }
    diagonal_j(first.field(), alpha, beta)
}

/// Eigenvector of `a` for `λ`, scaled so its first nonzero entry is 1.
pub fn eigenvector(a: &[Vec<i64>], lambda: &FieldElement) -> Result<Vec<FieldElement>> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(ApError::InvalidInput("matrix must be square and nonempty".into()));
    }
    let f = lambda.field();
    let m: Matrix<FieldElement> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = FieldElement::from_int(f, a[i][j]);
                    if i == j {
                        &e - lambda
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let ker = linalg::kernel(&m, n, &FieldElement::one(f));
    if ker.len() != 1 {
        return Err(ApError::EigenvalueNotSimpleOverField);
    }
    let v = ker.into_iter().next().expect("one vector");
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero kernel vector").inverse()?;
    Ok(v.iter().map(|x| x * &lead).collect())
}

pub fn transpose_int(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// `Σ_i [u_i, 0] ∧ [0, v_i]` with `Au = λu` and `Aᵀv = λv`.
pub fn j_from_integral_matrix(a: &[Vec<i64>], lambda: &FieldElement) -> Result<WedgeElement> {
    let u = eigenvector(a, lambda)?;
    let v = eigenvector(&transpose_int(a), lambda)?;
    j_from_eigenvectors(&u, &v)
}

/// `Σ_i [u_i, 0] ∧ [0, v_i]` for explicitly given eigenvectors.
pub fn j_from_eigenvectors(u: &[FieldElement], v: &[FieldElement]) -> Result<WedgeElement> {
    let first = u.first().ok_or(ApError::InvalidInput("empty eigenvector".into()))?;
    if u.len() != v.len() {
        return Err(ApError::InvalidInput("eigenvectors differ in length".into()));
    }
    diagonal_j(first.field(), u, v)
}

/// `diag(1/area, 1) · J`; requires `area(J) ∈ K`.
pub fn normalize_area(j: &WedgeElement, k: &SubfieldDescription) -> Result<WedgeElement> {
    let a = area(j);
    if a.is_zero() {
        return Err(ApError::ZeroArea);
    }
    if !k.contains(&a) {
        return Err(ApError::AreaNotInK);
    }
    let f = j.field();
    let m = mat2(a.inverse()?, FieldElement::zero(f), FieldElement::zero(f), FieldElement::one(f));
    gl2_act(&m, j)
}

/// Companion matrix of a monic integer polynomial, with eigenvalue `θ` and eigenvector
/// `(1, θ, …, θ^{n-1})` for its transpose.
pub fn companion_matrix(k: &Field) -> Result<Vec<Vec<i64>>> {
    let p = k.minpoly();
    let n = k.degree();
    let mut coeffs = Vec::with_capacity(n);
    for c in &p.coeffs()[..n] {
        if !c.is_integer() {
            return Err(ApError::InvalidInput("minimal polynomial is not integral".into()));
        }
        let v: i64 = c
            .to_integer()
            .try_into()
            .map_err(|_| ApError::InvalidInput("coefficient too large".into()))?;
        coeffs.push(v);
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 1..n {
        a[i][i - 1] = 1;
    }
    for (i, c) in coeffs.iter().enumerate() {
        a[i][n - 1] = -c;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{field_create, rat, ratio, subfield_from_generators, NumberField, QPoly};

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
    fn minpoly_examples() {
        let f = sqrt2();
        let j = jk_from_minpoly(&f).unwrap();
        let expected = diagonal_j(
            &f,
            &[FieldElement::one(&f), FieldElement::theta(&f)],
            &[el(&f, &[(1, 2)]), el(&f, &[(0, 1), (1, 4)])],
        )
        .unwrap();
        assert_eq!(j, expected);
        assert_eq!(area(&j), el(&f, &[(1, 2)]));

        let q = NumberField::rationals();
        let j = jk_from_minpoly(&q).unwrap();
        assert_eq!(j.terms(), vec![(0, 1, rat(1))]);

        let c = cbrt2();
        let j = jk_from_minpoly(&c).unwrap();
        let t = FieldElement::theta(&c);
        let expected = diagonal_j(
            &c,
            &[FieldElement::one(&c), t.clone(), t.pow(2)],
            &[el(&c, &[(1, 3)]), el(&c, &[(0, 1), (0, 1), (1, 6)]), el(&c, &[(0, 1), (1, 6)])],
        )
        .unwrap();
        assert_eq!(j, expected);
    }

    #[test]
    fn dual_basis_examples() {
        let f = sqrt2();
        let one = FieldElement::one(&f);
        let t = FieldElement::theta(&f);
        let j = jk_from_dual_bases(&[one.clone(), t.clone()], &[el(&f, &[(1, 2)]), el(&f, &[(0, 1), (1, 4)])]);
        assert_eq!(j.unwrap(), jk_from_minpoly(&f).unwrap());
        let q = NumberField::rationals();
        let jq = jk_from_dual_bases(&[FieldElement::one(&q)], &[FieldElement::one(&q)]).unwrap();
        assert_eq!(jq.terms(), vec![(0, 1, rat(1))]);
        assert_eq!(
            jk_from_dual_bases(&[one.clone(), t], &[one.clone(), one]).unwrap_err(),
            ApError::NotDualBases
        );
    }

    #[test]
    fn integral_matrix_examples() {
        let f = sqrt2();
        let t = FieldElement::theta(&f);
        let a = vec![vec![0, 2], vec![1, 0]];
        let u = eigenvector(&a, &t).unwrap();
        assert_eq!(u, vec![FieldElement::one(&f), el(&f, &[(0, 1), (1, 2)])]);
        let v = eigenvector(&transpose_int(&a), &t).unwrap();
        assert_eq!(v, vec![FieldElement::one(&f), t.clone()]);
        let by_hand = j_from_eigenvectors(&[t.clone(), FieldElement::one(&f)], &[FieldElement::one(&f), t.clone()]).unwrap();
        assert_eq!(area(&by_hand), t);
        let k = subfield_from_generators(&f, &[t.clone()]);
        let target = jk_from_minpoly(&f).unwrap().scalar_mul(&rat(2));
        assert_eq!(normalize_area(&by_hand, &k).unwrap(), target);
        assert_eq!(normalize_area(&j_from_integral_matrix(&a, &t).unwrap(), &k).unwrap(), target);

        let s = vec![vec![1, 1], vec![1, -1]];
        let u = eigenvector(&s, &t).unwrap();
        assert_eq!(u, vec![FieldElement::one(&f), el(&f, &[(-1, 1), (1, 1)])]);
        assert!(u.iter().all(|x| x.sign() > 0));

        let q = NumberField::rationals();
        let j = j_from_integral_matrix(&[vec![2]], &FieldElement::from_int(&q, 2)).unwrap();
        assert_eq!(j.terms(), vec![(0, 1, rat(1))]);
        assert_eq!(
            eigenvector(&[vec![1, 0], vec![0, 1]], &FieldElement::one(&q)).unwrap_err(),
            ApError::EigenvalueNotSimpleOverField
        );
    }

    #[test]
    fn normalize_examples() {
        let q = NumberField::rationals();
        let k = SubfieldDescription::rationals(&q);
        let torus = jk_from_minpoly(&q).unwrap().scalar_mul(&rat(2));
        assert_eq!(normalize_area(&torus, &k).unwrap(), torus);
        assert_eq!(normalize_area(&WedgeElement::zero(&q), &k).unwrap_err(), ApError::ZeroArea);
        let f = sqrt2();
        let j = diagonal_j(&f, &[FieldElement::one(&f)], &[FieldElement::theta(&f)]).unwrap();
        assert_eq!(normalize_area(&j, &SubfieldDescription::rationals(&f)).unwrap_err(), ApError::AreaNotInK);
    }

    #[test]
    fn companion_has_theta() {
        let c = cbrt2();
        let a = companion_matrix(&c).unwrap();
        assert_eq!(a, vec![vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]]);
        let v = eigenvector(&transpose_int(&a), &FieldElement::theta(&c)).unwrap();
        let t = FieldElement::theta(&c);
        assert_eq!(v, vec![FieldElement::one(&c), t.clone(), t.pow(2)]);
    }
}
