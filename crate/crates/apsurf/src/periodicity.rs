//! Algebraic periodicity: AP directions, standard form, essential holonomy,
//! the multiplicative and periodic direction fields, rank and `Iso(J)` membership.

use num_traits::{One, Zero};

use crate::error::{ApError, Result};
use crate::exactfield::linalg::{self, QMatrix};
use crate::exactfield::{ratio, subfield_from_generators, Field, FieldElement, Rational, SubfieldDescription};
use crate::surface::TranslationSurface;
use crate::wedge::{gl2_act, mat2, saf_projection, Mat2, PlanarVector, SAFValue, Slope, WedgeElement};

/// Minimal Q-subspace `EH ⊆ L²` with `J ∈ EH ∧ EH`.
#[derive(Clone, Debug)]
pub struct EssentialHolonomy {
    pub field: Field,
    pub basis: Vec<PlanarVector>,
    /// `J = Σ_{i<j} R_ij f_i ∧ f_j` over the basis `f`.
    pub skew_gram: QMatrix,
}

impl EssentialHolonomy {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &PlanarVector) -> bool {
        let n2 = 2 * self.field.degree();
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.coords()).collect();
        rows.push(v.coords());
        linalg::rank(&rows, n2) == self.basis.len()
    }

    /// Q-dimension of the intersection with the L-line of slope `s`.
    pub fn line_intersection_dim(&self, s: &Slope) -> usize {
        let f = &self.field;
        let n = f.degree();
        let d = PlanarVector::of_slope(f, s);
        let t = FieldElement::theta(f);
        let line: Vec<Vec<Rational>> = (0..n).map(|k| d.scale(&t.pow(k)).coords()).collect();
        let mut rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.coords()).collect();
        rows.extend(line);
        self.dim() + n - linalg::rank(&rows, 2 * n)
    }
}

#[derive(Clone, Debug)]
pub struct StandardizationResult {
    pub matrix: Mat2,
    pub j_std: WedgeElement,
}

/// Output of the periodic direction field computation.
#[derive(Clone, Debug)]
pub struct APCertificate {
    pub slopes: [Slope; 3],
    pub standardization: StandardizationResult,
    pub essential_holonomy: EssentialHolonomy,
    /// Reduced echelon Q-basis of the x-coordinate space `Γ`.
    pub gamma_basis: Vec<FieldElement>,
    pub mult_field: SubfieldDescription,
    pub pdf: SubfieldDescription,
    pub rank: usize,
    /// Symmetric form `(σ, τ) = ⟨σ dx, τ dy⟩` in the basis dual to `gamma_basis`.
    pub sym_gram: QMatrix,
}

/// Residues of the three wedge identities over a triangulation.
#[derive(Clone, Debug)]
pub struct WedgeIdentityReport {
    /// `Σ a∧b`, `Σ c∧d`, `Σ c∧b − Σ d∧a` for side pairs `v = (a, c)`, `w = (b, d)`.
    pub residues: [SAFValue; 3],
    pub pass: bool,
}

pub fn is_ap_direction(j: &WedgeElement, s: &Slope) -> bool {
    saf_projection(j, s).is_zero()
}

/// Evaluates the wedge identities on every triangle of an ear-clipping triangulation.
pub fn check_wedge_identities(s: &TranslationSurface) -> Result<WedgeIdentityReport> {
    s.validate()?;
    let f = s.field();
    let mut r = [SAFValue::zero(f), SAFValue::zero(f), SAFValue::zero(f)];
    for p in s.polygons() {
        let vs = p.vertices();
        for [i, j, k] in p.triangulate()? {
            let v = vs[j].sub(&vs[i]);
            let w = vs[k].sub(&vs[j]);
            r[0] = r[0].add(&SAFValue::wedge(&v.x, &w.x));
            r[1] = r[1].add(&SAFValue::wedge(&v.y, &w.y));
            r[2] = r[2].add(&SAFValue::wedge(&v.y, &w.x)).sub(&SAFValue::wedge(&w.y, &v.x));
        }
    }
    let pass = r.iter().all(|x| x.is_zero());
    Ok(WedgeIdentityReport { residues: r, pass })
}

/// EH as the row space of the coordinate matrix of `J`.
pub fn essential_holonomy(j: &WedgeElement) -> Result<EssentialHolonomy> {
    if j.is_zero() {
        return Err(ApError::ZeroInvariant);
    }
    let f = j.field();
    let n2 = j.dim();
    let (rows, piv) = linalg::row_space(j.coords(), n2);
    let c = j.coords();
    let skew_gram = piv.iter().map(|&a| piv.iter().map(|&b| c[a][b].clone()).collect()).collect();
    Ok(EssentialHolonomy {
        field: f.clone(),
        basis: rows.iter().map(|r| PlanarVector::from_coords(f, r)).collect(),
        skew_gram,
    })
}

/// `M ∈ GL(2, L)` sending the slopes `s1, s2, s3` to `∞, 0, 1`, and `J` transported by it.
pub fn standardize(j: &WedgeElement, s1: &Slope, s2: &Slope, s3: &Slope) -> Result<StandardizationResult> {
    if s1 == s2 || s1 == s3 || s2 == s3 {
        return Err(ApError::SlopesNotDistinct);
    }
    for s in [s1, s2, s3] {
        if !is_ap_direction(j, s) {
            return Err(ApError::NotAPDirection);
        }
    }
    let matrix = standardizing_matrix(j.field(), s1, s2, s3)?;
    let j_std = gl2_act(&matrix, j)?;
    Ok(StandardizationResult { matrix, j_std })
}

/// Projective frame change `(s1, s2, s3) ↦ (∞, 0, 1)`.
pub fn standardizing_matrix(f: &Field, s1: &Slope, s2: &Slope, s3: &Slope) -> Result<Mat2> {
    let (d1, d2, d3) = (
        PlanarVector::of_slope(f, s1),
        PlanarVector::of_slope(f, s2),
        PlanarVector::of_slope(f, s3),
    );
    let det = d2.cross(&d1);
    if det.is_zero() {
        return Err(ApError::SlopesNotDistinct);
    }
    let inv = det.inverse()?;
    let a = &d3.cross(&d1) * &inv;
    let b = &d2.cross(&d3) * &inv;
    if a.is_zero() || b.is_zero() {
        return Err(ApError::SlopesNotDistinct);
    }
    let (c0, c1) = (d2.scale(&a), d1.scale(&b));
    let n = mat2(c0.x, c1.x, c0.y, c1.y);
    crate::wedge::mat2_inverse(&n)
}

/// Reduced echelon basis of the x-coordinates of `EH`, with pivot columns.
pub fn gamma_basis(eh: &EssentialHolonomy) -> (Vec<FieldElement>, Vec<usize>) {
    let n = eh.field.degree();
    let xs: QMatrix = eh.basis.iter().map(|v| v.x.coeffs().to_vec()).collect();
    let (rows, piv) = linalg::row_space(&xs, n);
    (rows.into_iter().map(|r| FieldElement::new(&eh.field, r)).collect(), piv)
}

fn is_split(eh: &EssentialHolonomy, gamma: &[FieldElement]) -> bool {
    let z = FieldElement::zero(&eh.field);
    eh.dim() == 2 * gamma.len()
        && gamma.iter().all(|g| {
            eh.contains(&PlanarVector::new(g.clone(), z.clone()).expect("same field"))
                && eh.contains(&PlanarVector::new(z.clone(), g.clone()).expect("same field"))
        })
}

/// Coordinates of `x ∈ Γ` in the reduced echelon basis: the pivot entries.
fn gamma_coords(x: &FieldElement, piv: &[usize]) -> Vec<Rational> {
    piv.iter().map(|&p| x.coeffs()[p].clone()).collect()
}

/// `{λ ∈ L : λΓ ⊆ Γ}`; requires `EH = Γ ⊕ Γ`.
pub fn multiplicative_field(eh: &EssentialHolonomy) -> Result<SubfieldDescription> {
    let (gamma, _) = gamma_basis(eh);
    if !is_split(eh, &gamma) {
        return Err(ApError::NotStandardized);
    }
    let f = &eh.field;
    let n = f.degree();
    let one = Rational::one();
    let gm: QMatrix = gamma.iter().map(|g| g.coeffs().to_vec()).collect();
    let ann = linalg::kernel(&gm, n, &one);
    let t = FieldElement::theta(f);
    let mut conds: QMatrix = Vec::new();
    for g in &gamma {
        let images: Vec<FieldElement> = (0..n).map(|k| &t.pow(k) * g).collect();
        for a in &ann {
            conds.push(
                images
                    .iter()
                    .map(|im| a.iter().zip(im.coeffs()).map(|(x, y)| x * y).sum())
                    .collect(),
            );
        }
    }
    let sols = if conds.is_empty() {
        linalg::q_identity(n)
    } else {
        linalg::kernel(&conds, n, &one)
    };
    let gens: Vec<FieldElement> = sols.into_iter().map(|c| FieldElement::new(f, c)).collect();
    Ok(subfield_from_generators(f, &gens))
}

/// Gram matrix of `(σ, τ)` in the basis dual to `Γ`.
pub fn symmetric_gram(j_std: &WedgeElement, piv: &[usize]) -> QMatrix {
    let n = j_std.field().degree();
    let c = j_std.coords();
    let half = ratio(1, 2);
    piv.iter()
        .map(|&a| piv.iter().map(|&b| &c[a][n + b] * &half).collect())
        .collect()
}

/// Matrix of multiplication by `λ` on `Γ`, columns are images of basis vectors.
fn mult_on_gamma(lambda: &FieldElement, gamma: &[FieldElement], piv: &[usize]) -> QMatrix {
    let cols: QMatrix = gamma.iter().map(|g| gamma_coords(&(lambda * g), piv)).collect();
    linalg::transpose(&cols, gamma.len())
}

/// `K = {λ ∈ k : λ is self-adjoint for G}` on functionals of `Γ`.
fn self_adjoint_subfield(
    k: &SubfieldDescription,
    g: &QMatrix,
    gamma: &[FieldElement],
    piv: &[usize],
) -> SubfieldDescription {
    let m = gamma.len();
    let zero = Rational::zero();
    let blocks: Vec<QMatrix> = k
        .qbasis
        .iter()
        .map(|kappa| {
            let a = linalg::transpose(&mult_on_gamma(kappa, gamma, piv), m);
            let ga = linalg::mat_mul(g, &a, &zero);
            let atg = linalg::mat_mul(&linalg::transpose(&a, m), g, &zero);
            (0..m).map(|i| (0..m).map(|j| &ga[i][j] - &atg[i][j]).collect()).collect()
        })
        .collect();
    let conds: QMatrix = (0..m * m)
        .map(|idx| blocks.iter().map(|b| b[idx / m][idx % m].clone()).collect())
        .collect();
    let sols = linalg::kernel(&conds, k.degree(), &Rational::one());
    let gens: Vec<FieldElement> = sols
        .iter()
        .map(|t| {
            let mut acc = FieldElement::zero(&k.ambient);
            for (c, b) in t.iter().zip(&k.qbasis) {
                acc = &acc + &b.scale(c);
            }
            acc
        })
        .collect();
    subfield_from_generators(&k.ambient, &gens)
}

/// Default candidate slopes: `∞, 0, 1`, slopes of EH basis vectors and their small
/// integer combinations, then small rationals. Deduplicated in order.
pub fn default_candidates(j: &WedgeElement) -> Vec<Slope> {
    let f = j.field();
    let mut out: Vec<Slope> = vec![Slope::Infinite, Slope::rational(f, 0, 1), Slope::rational(f, 1, 1)];
    let push = |s: Slope, out: &mut Vec<Slope>| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    if let Ok(eh) = essential_holonomy(j) {
        for v in &eh.basis {
            push(v.slope(), &mut out);
        }
        for (i, u) in eh.basis.iter().enumerate() {
            for v in &eh.basis[i + 1..] {
                for a in -2i64..=2 {
                    for b in -2i64..=2 {
                        if a == 0 || b == 0 {
                            continue;
                        }
                        let w = u.scale_q(&ratio(a, 1)).add(&v.scale_q(&ratio(b, 1)));
                        if !w.is_zero() {
                            push(w.slope(), &mut out);
                        }
                    }
                }
            }
        }
    }
    for q in 1..=4i64 {
        for p in -4..=4i64 {
            if num_integer::gcd(p, q) == 1 {
                push(Slope::rational(f, p, q), &mut out);
            }
        }
    }
    out
}

/// AP slopes among `candidates` (defaults when `None`), in candidate order.
pub fn find_ap_directions(j: &WedgeElement, candidates: Option<&[Slope]>) -> Vec<Slope> {
    first_ap_directions(j, candidates, usize::MAX)
}

/// The first `limit` AP slopes among the candidates.
pub fn first_ap_directions(j: &WedgeElement, candidates: Option<&[Slope]>, limit: usize) -> Vec<Slope> {
    let defaults;
    let cands = match candidates {
        Some(c) => c,
        None => {
            defaults = default_candidates(j);
            &defaults
        }
    };
    let mut out = Vec::new();
    for s in cands {
        if out.len() >= limit {
            break;
        }
        if is_ap_direction(j, s) && !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

/// Certificate from the first three AP directions found among the default candidates.
pub fn periodic_direction_field(j: &WedgeElement) -> Result<APCertificate> {
    let found = first_ap_directions(j, None, 3);
    if found.len() < 3 {
        return Err(ApError::NotAlgebraicallyPeriodic);
    }
    periodic_direction_field_with(j, [found[0].clone(), found[1].clone(), found[2].clone()])
}

/// Certificate using three given AP directions.
pub fn periodic_direction_field_with(j: &WedgeElement, slopes: [Slope; 3]) -> Result<APCertificate> {
    if j.is_zero() {
        return Err(ApError::ZeroInvariant);
    }
    let standardization = standardize(j, &slopes[0], &slopes[1], &slopes[2])?;
    let eh = essential_holonomy(&standardization.j_std)?;
    let (gamma, piv) = gamma_basis(&eh);
    let mult_field = multiplicative_field(&eh)?;
    let sym_gram = symmetric_gram(&standardization.j_std, &piv);
    let pdf = self_adjoint_subfield(&mult_field, &sym_gram, &gamma, &piv);
    let rank = eh.dim() / (2 * pdf.degree());
    Ok(APCertificate {
        slopes,
        standardization,
        essential_holonomy: eh,
        gamma_basis: gamma,
        mult_field,
        pdf,
        rank,
        sym_gram,
    })
}

/// Holonomy field equals periodic direction field.
pub fn is_completely_ap(s: &TranslationSurface) -> Result<bool> {
    let j = s.j_invariant()?;
    let cert = periodic_direction_field(&j)?;
    Ok(s.holonomy_field()?.same_as(&cert.pdf))
}

/// `M · J = J`.
pub fn iso_contains(j: &WedgeElement, m: &Mat2) -> bool {
    match gl2_act(m, j) {
        Ok(img) => img == *j,
        Err(_) => false,
    }
}
