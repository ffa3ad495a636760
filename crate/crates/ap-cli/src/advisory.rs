//! Floating-point diagnostics. Never used for verdicts.

use apsurf::exactfield::{FieldElement, NumberField};
use apsurf::surface::TranslationSurface;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// All complex roots of the minimal polynomial by Durand–Kerner iteration.
pub fn complex_roots(f: &NumberField) -> Vec<Complex64> {
    let c: Vec<f64> = f.minpoly().coeffs().iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

fn embed(x: &FieldElement, r: Complex64) -> Complex64 {
    x.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, q| acc * r + q.to_f64().unwrap_or(f64::NAN))
}

/// Largest modulus over distinct embedding pairs of the three per-pair sums.
pub fn wedge_identity_residuals(s: &TranslationSurface) -> Option<[f64; 3]> {
    let roots = complex_roots(s.field());
    let mut pairs = vec![];
    for p in s.polygons() {
        let vs = p.vertices();
        for [i, j, k] in p.triangulate().ok()? {
            pairs.push((vs[j].sub(&vs[i]), vs[k].sub(&vs[j])));
        }
    }
    let mut worst = [0.0f64; 3];
    for (si, &sr) in roots.iter().enumerate() {
        for (ti, &tr) in roots.iter().enumerate() {
            if si == ti {
                continue;
            }
            let mut sums = [Complex64::new(0.0, 0.0); 3];
            let w = |a: &FieldElement, b: &FieldElement| embed(a, sr) * embed(b, tr) - embed(b, sr) * embed(a, tr);
            for (v, u) in &pairs {
                sums[0] += w(&v.x, &u.x);
                sums[1] += w(&v.y, &u.y);
                sums[2] += w(&v.y, &u.x) - w(&u.y, &v.x);
            }
            for (k, s) in sums.iter().enumerate() {
                worst[k] = worst[k].max(s.norm());
            }
        }
    }
    Some(worst)
}
