//! The symmetric form `(σ, τ)`: Gram matrices, exact signatures, total reality,
//! congruence diagonalization and the isogenous rank decomposition.

use num_traits::{One, Signed, Zero};

use crate::error::{ApError, Result};
use crate::exactfield::linalg::{self, Matrix, QMatrix, Scalar};
use crate::exactfield::{FieldElement, Rational, SubfieldDescription};
use crate::periodicity::APCertificate;
use crate::wedge::{gl2_act, mat2, mat2_inverse, wedge_of, PlanarVector, WedgeElement};

/// Gram matrix of `(σ, τ)` in the basis dual to `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymGram {
    pub basis: Vec<FieldElement>,
    pub matrix: QMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Signature {
    pub fn is_positive_definite(&self) -> bool {
        self.n_minus == 0 && self.n_zero == 0
    }
}

/// One isogenous copy `J_mm` of a scaled `J_K` inside the standardized `J`.
#[derive(Clone, Debug)]
pub struct IsogenousComponent {
    pub gamma: FieldElement,
    /// Diagonal entry of the restricted form in the new basis.
    pub scale: FieldElement,
    /// Component in the standardized frame.
    pub component: WedgeElement,
}

pub fn is_symmetric<T: Scalar>(m: &Matrix<T>) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
}

pub fn gram_matrix(cert: &APCertificate) -> Result<SymGram> {
    if !is_symmetric(&cert.sym_gram) {
        return Err(ApError::NotSymmetric);
    }
    Ok(SymGram {
        basis: cert.gamma_basis.clone(),
        matrix: cert.sym_gram.clone(),
    })
}

/// Symmetric reduction: returns `P` and the diagonal of `PᵀGP`, zeros included.
fn congruence_reduce<T: Scalar>(g: &Matrix<T>) -> (Matrix<T>, Vec<T>) {
    let n = g.len();
    if n == 0 {
        return (vec![], vec![]);
    }
    let zero = g[0][0].s_zero();
    let one = g[0][0].s_one();
    let mut m = g.clone();
    let mut p: Matrix<T> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    // col_k += c col_i and row_k += c row_i on m; col_k += c col_i on p.
    let add = |m: &mut Matrix<T>, p: &mut Matrix<T>, k: usize, i: usize, c: &T| {
        for r in 0..n {
            let v = m[r][i].s_mul(c);
            m[r][k] = m[r][k].s_add(&v);
            let v = p[r][i].s_mul(c);
            p[r][k] = p[r][k].s_add(&v);
        }
        for col in 0..n {
            let v = m[i][col].s_mul(c);
            m[k][col] = m[k][col].s_add(&v);
        }
    };
    let swap = |m: &mut Matrix<T>, p: &mut Matrix<T>, a: usize, b: usize| {
        m.swap(a, b);
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in p.iter_mut() {
            row.swap(a, b);
        }
    };
    for i in 0..n {
        if m[i][i].s_is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].s_is_zero()) {
                swap(&mut m, &mut p, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].s_is_zero()) {
                add(&mut m, &mut p, i, j, &one);
            } else {
                continue;
            }
        }
        for k in i + 1..n {
            if !m[i][k].s_is_zero() {
                let c = zero.s_sub(&m[i][k].s_div(&m[i][i]));
                add(&mut m, &mut p, k, i, &c);
            }
        }
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (p, d)
}

/// Exact signature over Q.
pub fn signature(g: &QMatrix) -> Signature {
    let (_, d) = congruence_reduce(g);
    let mut s = Signature {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    for x in d {
        if x.is_zero() {
            s.n_zero += 1;
        } else if x.is_positive() {
            s.n_plus += 1;
        } else {
            s.n_minus += 1;
        }
    }
    s
}

/// `P` with `PᵀGP` diagonal; fails on degenerate forms.
pub fn diagonalize_congruence<T: Scalar>(g: &Matrix<T>) -> Result<(Matrix<T>, Vec<T>)> {
    if !is_symmetric(g) {
        return Err(ApError::NotSymmetric);
    }
    let (p, d) = congruence_reduce(g);
    if d.iter().any(|x| x.s_is_zero()) {
        return Err(ApError::Degenerate);
    }
    Ok((p, d))
}

/// Gram matrix of the trace form of `K` on its Q-basis.
pub fn trace_form(k: &SubfieldDescription) -> QMatrix {
    k.qbasis
        .iter()
        .map(|a| k.qbasis.iter().map(|b| k.trace(&(a * b))).collect())
        .collect()
}

/// Positive definite Gram, hence `K` totally real.
pub fn is_totally_real_certified(cert: &APCertificate) -> bool {
    signature(&cert.sym_gram).is_positive_definite()
}

/// Independent check: the trace form of `K` is positive definite iff `K` is totally real.
pub fn is_totally_real_by_trace(k: &SubfieldDescription) -> bool {
    signature(&trace_form(k)).is_positive_definite()
}

/// Proven lower bound on the number of terms in a diagonal decomposition.
pub fn min_terms_lower_bound(cert: &APCertificate) -> usize {
    cert.pdf.degree()
}

fn combine(elems: &[FieldElement], coeffs: &[Rational], zero: &FieldElement) -> FieldElement {
    let mut acc = zero.clone();
    for (c, b) in coeffs.iter().zip(elems) {
        if !c.is_zero() {
            acc = &acc + &b.scale(c);
        }
    }
    acc
}

/// `a ⊗ b` in `L ⊗_Q L`, flattened row-major.
fn tensor(a: &FieldElement, b: &FieldElement) -> Vec<Rational> {
    let (x, y) = (a.coeffs(), b.coeffs());
    x.iter().flat_map(|u| y.iter().map(move |v| u * v)).collect()
}

/// Splits the standardized `J` into `rank` isogenous copies of scaled `J_K`.
pub fn isogenous_decomposition(cert: &APCertificate) -> Result<Vec<IsogenousComponent>> {
    let k = &cert.pdf;
    let f = k.ambient.clone();
    let n = f.degree();
    let zero = FieldElement::zero(&f);
    let one = Rational::one();
    let j_std = &cert.standardization.j_std;
    let c = j_std.coords();
    let target: Vec<Rational> = (0..n).flat_map(|a| (0..n).map(move |b| c[a][n + b].clone())).collect();

    let mut gammas: Vec<FieldElement> = Vec::new();
    let mut span: QMatrix = Vec::new();
    for g in &cert.gamma_basis {
        let mut trial = span.clone();
        trial.extend(k.qbasis.iter().map(|kap| (kap * g).coeffs().to_vec()));
        if linalg::rank(&trial, n) > span.len() {
            span = trial;
            gammas.push(g.clone());
        }
    }
    let r = gammas.len();
    let kb = &k.qbasis;
    let kgram: QMatrix = kb.iter().map(|a| kb.iter().map(|b| k.trace(&(a * b))).collect()).collect();
    let kinv = linalg::inverse(&kgram, &one).ok_or(ApError::NotDualBases)?;
    let beta: Vec<FieldElement> = kinv.iter().map(|row| combine(kb, row, &zero)).collect();

    // Unknown c_lm = Σ_t x_lmt κ_t; column for (l, m, t) is Σ_i γ_l κ_i ⊗ γ_m κ_t β_i.
    let d = kb.len();
    let mut cols: QMatrix = Vec::with_capacity(r * r * d);
    for l in 0..r {
        for m in 0..r {
            for kt in kb {
                let mut col = vec![Rational::zero(); n * n];
                for (ki, bi) in kb.iter().zip(&beta) {
                    let t = tensor(&(&gammas[l] * ki), &(&(&gammas[m] * kt) * bi));
                    for (a, b) in col.iter_mut().zip(t) {
                        *a += b;
                    }
                }
                cols.push(col);
            }
        }
    }
    let sys = linalg::transpose(&cols, n * n);
    let x = linalg::solve(&sys, r * r * d, &target, &one).ok_or(ApError::Degenerate)?;
    let cmat: Matrix<FieldElement> = (0..r)
        .map(|l| (0..r).map(|m| combine(kb, &x[(l * r + m) * d..(l * r + m + 1) * d], &zero)).collect())
        .collect();
    let (p, diag) = diagonalize_congruence(&cmat)?;
    let pinv = linalg::inverse(&p, &FieldElement::one(&f)).ok_or(ApError::SingularMatrix)?;
    let mut out = Vec::with_capacity(r);
    for m in 0..r {
        let mut g = zero.clone();
        for l in 0..r {
            g = &g + &(&gammas[l] * &pinv[m][l]);
        }
        let mut comp = WedgeElement::zero(&f);
        for (ki, bi) in kb.iter().zip(&beta) {
            let u = PlanarVector::new(ki * &g, zero.clone())?;
            let v = PlanarVector::new(zero.clone(), &(&diag[m] * bi) * &g)?;
            comp = comp.try_add(&wedge_of(&u, &v)?)?;
        }
        out.push(IsogenousComponent {
            gamma: g,
            scale: diag[m].clone(),
            component: comp,
        });
    }
    let mut total = WedgeElement::zero(&f);
    for c in &out {
        total = total.try_add(&c.component)?;
    }
    if total != *j_std {
        return Err(ApError::Degenerate);
    }
    Ok(out)
}

/// Component transported back to the frame of the original `J`.
pub fn component_in_original_frame(cert: &APCertificate, comp: &IsogenousComponent) -> Result<WedgeElement> {
    let m = &cert.standardization.matrix;
    gl2_act(&mat2_inverse(m)?, &comp.component)
}

/// `diag(a, b)` over L.
pub fn diag2(a: FieldElement, b: FieldElement) -> crate::wedge::Mat2 {
    let z = FieldElement::zero(a.field());
    mat2(a, z.clone(), z, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{field_create, rat, ratio, NumberField, QPoly};
    use crate::periodicity::periodic_direction_field;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn sqrt2() -> crate::exactfield::Field {
        field_create(QPoly::from_ints(&[-2, 0, 1]), rat(1), ratio(3, 2)).unwrap()
    }

    fn xy_wedge(f: &crate::exactfield::Field, a: FieldElement, b: FieldElement) -> WedgeElement {
        let z = FieldElement::zero(f);
        wedge_of(&PlanarVector::new(a, z.clone()).unwrap(), &PlanarVector::new(z, b).unwrap()).unwrap()
    }

    #[test]
    fn signature_examples() {
        let g = vec![vec![ratio(1, 4), rat(0)], vec![rat(0), ratio(1, 8)]];
        assert_eq!(signature(&g), Signature { n_plus: 2, n_minus: 0, n_zero: 0 });
        let t = qm(&[&[3, 0, 0], &[0, 0, 6], &[0, 6, 0]]);
        assert_eq!(signature(&t), Signature { n_plus: 2, n_minus: 1, n_zero: 0 });
        assert_eq!(signature(&qm(&[&[0, 0], &[0, 0]])), Signature { n_plus: 0, n_minus: 0, n_zero: 2 });
    }

    #[test]
    fn diagonalize_examples() {
        let g = qm(&[&[2, 0], &[0, -5]]);
        let (p, d) = diagonalize_congruence(&g).unwrap();
        assert_eq!(p, linalg::q_identity(2));
        assert_eq!(d, vec![rat(2), rat(-5)]);
        let h = qm(&[&[0, 1], &[1, 0]]);
        let (p, d) = diagonalize_congruence(&h).unwrap();
        assert_eq!(p, vec![vec![rat(1), ratio(-1, 2)], vec![rat(1), ratio(1, 2)]]);
        assert_eq!(d, vec![rat(2), ratio(-1, 2)]);
        let (p, d) = diagonalize_congruence(&qm(&[&[7]])).unwrap();
        assert_eq!((p, d), (qm(&[&[1]]), vec![rat(7)]));
        assert_eq!(diagonalize_congruence(&qm(&[&[1, 1], &[1, 1]])).unwrap_err(), ApError::Degenerate);
        assert_eq!(diagonalize_congruence(&qm(&[&[1, 2], &[0, 1]])).unwrap_err(), ApError::NotSymmetric);
    }

    #[test]
    fn gram_and_reality_examples() {
        let f = sqrt2();
        let jk = xy_wedge(&f, FieldElement::one(&f), FieldElement::from_rational(&f, ratio(1, 2)))
            .try_add(&xy_wedge(&f, FieldElement::theta(&f), FieldElement::theta(&f).scale(&ratio(1, 4))))
            .unwrap();
        let cert = periodic_direction_field(&jk).unwrap();
        let g = gram_matrix(&cert).unwrap();
        assert_eq!(g.matrix, vec![vec![ratio(1, 4), rat(0)], vec![rat(0), ratio(1, 8)]]);
        assert!(is_totally_real_certified(&cert));
        assert!(is_totally_real_by_trace(&cert.pdf));
        assert_eq!(min_terms_lower_bound(&cert), 2);

        let q = NumberField::rationals();
        let torus = xy_wedge(&q, FieldElement::from_int(&q, 2), FieldElement::one(&q));
        let cert = periodic_direction_field(&torus).unwrap();
        assert_eq!(gram_matrix(&cert).unwrap().matrix, qm(&[&[1]]));
        assert!(is_totally_real_certified(&cert));
        assert_eq!(min_terms_lower_bound(&cert), 1);
    }

    #[test]
    fn decomposition_examples() {
        let f = sqrt2();
        let t = FieldElement::theta(&f);
        let one = FieldElement::one(&f);
        let j2 = xy_wedge(&f, one.clone(), one.clone()).try_add(&xy_wedge(&f, t.clone(), t.clone())).unwrap();
        let cert = periodic_direction_field(&j2).unwrap();
        let parts = isogenous_decomposition(&cert).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].gamma, one);
        assert_eq!(parts[1].gamma, t);
        assert_eq!(parts[0].component, xy_wedge(&f, one.clone(), one.clone()));
        assert_eq!(parts[1].component, xy_wedge(&f, t.clone(), t.clone()));

        let jk = xy_wedge(&f, one.clone(), FieldElement::from_rational(&f, ratio(1, 2)))
            .try_add(&xy_wedge(&f, t.clone(), t.scale(&ratio(1, 4))))
            .unwrap();
        let parts = isogenous_decomposition(&periodic_direction_field(&jk).unwrap()).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].gamma, one);
        assert_eq!(parts[0].component, jk);

        let q = NumberField::rationals();
        let torus = xy_wedge(&q, FieldElement::from_int(&q, 2), FieldElement::one(&q));
        let cert = periodic_direction_field(&torus).unwrap();
        let parts = isogenous_decomposition(&cert).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].gamma, FieldElement::one(&q));
        assert_eq!(component_in_original_frame(&cert, &parts[0]).unwrap(), torus);
    }
}
