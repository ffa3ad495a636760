use std::fs;
use std::path::{Path, PathBuf};

use apsurf::construct::{
    eh_ne_ah_example, jk_from_minpoly, rectangle_table_surface, square_tiled_surface, zk_unfold_triangle,
    IntegralSymmetricInput,
};
use apsurf::exactfield::{linalg, rat, Field, FieldElement, NumberField, QPoly, Rational};
use apsurf::forms::{gram_matrix, is_totally_real_certified, isogenous_decomposition, min_terms_lower_bound, signature};
use apsurf::io::{
    check_bits, field_from_file, field_to_file, j_rationals, j_to_file, matrix_from_file, parse_element,
    parse_poly, parse_rational, surface_from_file, surface_rationals, surface_to_file, FieldFile, JFile,
    MatrixFile, SurfaceFile,
};
use apsurf::periodicity::{
    check_wedge_identities, essential_holonomy, is_ap_direction, is_completely_ap, iso_contains,
    periodic_direction_field, APCertificate,
};
use apsurf::surface::{scissors_move, TranslationSurface};
use apsurf::wedge::{area, PlanarVector, Slope, WedgeElement};
use apsurf::{ApError, Result};
use serde_json::{json, Value};

use crate::advisory;
use crate::args::{CheckCmd, FieldArgs, FieldSpec, FormCmd, MakeCmd, SurfCmd};
use crate::report::{
    elem_json, mat2_json, qmatrix_json, slope_json, slope_text, subfield_json, vec_json,
    Report,
};

/// Errors split by exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
}

impl From<ApError> for Failure {
    fn from(e: ApError) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type CmdResult = std::result::Result<Report, Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

/// A surface or a bare invariant.
pub enum Input {
    Surface(TranslationSurface),
    J(WedgeElement),
}

impl Input {
    fn j(&self) -> Result<WedgeElement> {
        match self {
            Input::Surface(s) => s.j_invariant(),
            Input::J(j) => Ok(j.clone()),
        }
    }

    fn field(&self) -> &Field {
        match self {
            Input::Surface(s) => s.field(),
            Input::J(j) => j.field(),
        }
    }

    fn surface(&self) -> std::result::Result<&TranslationSurface, Failure> {
        match self {
            Input::Surface(s) => Ok(s),
            Input::J(_) => Err(input_err("this command needs a surface file")),
        }
    }
}

pub fn load(path: &Path, bits: Option<u64>) -> std::result::Result<Input, Failure> {
    let v: Value = read_json(path)?;
    let parse_err = |e: serde_json::Error| input_err(format!("{}: {e}", path.display()));
    let input = if v.get("polygons").is_some() {
        let sf: SurfaceFile = serde_json::from_value(v).map_err(parse_err)?;
        let s = surface_from_file(&sf)?;
        check_bits(&surface_rationals(&s), bits)?;
        Input::Surface(s)
    } else if v.get("coords").is_some() {
        let jf: JFile = serde_json::from_value(v).map_err(parse_err)?;
        let j = apsurf::io::j_from_file(&jf)?;
        check_bits(&j_rationals(&j), bits)?;
        Input::J(j)
    } else {
        return Err(input_err(format!("{}: neither a surface nor an invariant file", path.display())));
    };
    Ok(input)
}

fn parse_interval(s: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| ApError::InvalidInput("interval must be \"lo,hi\"".into()))?;
    Ok((parse_rational(lo)?, parse_rational(hi)?))
}

fn field_from_poly(p: &QPoly, interval: Option<&str>) -> Result<Field> {
    match interval {
        Some(i) => {
            let (lo, hi) = parse_interval(i)?;
            NumberField::new(p.clone(), lo, hi)
        }
        None => NumberField::largest_real_root(p),
    }
}

/// Resolves a field argument; `None` when none was given.
pub fn resolve_field(spec: &FieldSpec) -> std::result::Result<Option<Field>, Failure> {
    if let Some(path) = &spec.field {
        let ff: FieldFile = read_json(path)?;
        return Ok(Some(field_from_file(&ff)?));
    }
    match &spec.minpoly {
        Some(p) => Ok(Some(field_from_poly(&parse_poly(p)?, spec.interval.as_deref())?)),
        None => Ok(None),
    }
}

fn require_field(spec: &FieldSpec) -> std::result::Result<Field, Failure> {
    resolve_field(spec)?.ok_or_else(|| input_err("a field is required: pass --minpoly or --field"))
}

fn emit(report: &mut Report, key: &str, value: Value, out: &Option<PathBuf>) -> std::result::Result<(), Failure> {
    match out {
        Some(p) => {
            write_json(p, &value)?;
            report.line("written", p.display());
            report.put("written", json!(p.display().to_string()));
        }
        None => {
            report.put(key, value);
        }
    }
    Ok(())
}

pub fn field(args: &FieldArgs) -> CmdResult {
    let f = require_field(&args.spec)?;
    let f = match &args.name {
        Some(n) => f.named(n),
        None => f,
    };
    let mut r = Report::new("field");
    r.line("minpoly", f.minpoly().to_string_var("x")).line("degree", f.degree());
    let roots = advisory::complex_roots(&f);
    let real = roots.iter().filter(|z| z.im.abs() < 1e-9).count();
    r.advisory = Some(json!({
        "generator_approx": FieldElement::theta(&f).to_f64(),
        "real_embeddings_approx": real,
    }));
    emit(&mut r, "field", serde_json::to_value(field_to_file(&f)).expect("serializable"), &args.out)?;
    Ok(r)
}

fn surface_value(s: &TranslationSurface) -> Value {
    serde_json::to_value(surface_to_file(s)).expect("serializable")
}

fn j_value(j: &WedgeElement) -> Value {
    serde_json::to_value(j_to_file(j)).expect("serializable")
}

fn surface_certificate(r: &mut Report, s: &TranslationSurface) -> std::result::Result<(), Failure> {
    let top = s.validate()?;
    let j = s.j_invariant()?;
    r.line("genus", top.genus).line("polygons", s.polygons().len());
    r.put(
        "certificate",
        json!({
            "genus": top.genus,
            "cone_angle_multiples": top.cone_angle_multiples,
            "area": elem_json(&s.area()),
            "j": j_value(&j),
        }),
    );
    Ok(())
}

/// Characteristic polynomial of an integer matrix, by Faddeev–LeVerrier.
pub fn charpoly(a: &[Vec<i64>]) -> QPoly {
    let n = a.len();
    let am: linalg::QMatrix = a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let zero = rat(0);
    let mut c = vec![rat(0); n + 1];
    c[n] = rat(1);
    let mut m = linalg::q_zeros(n, n);
    for k in 1..=n {
        let mut next = linalg::mat_mul(&am, &m, &zero);
        for i in 0..n {
            next[i][i] += &c[n - k + 1];
        }
        m = next;
        let am_m = linalg::mat_mul(&am, &m, &zero);
        let tr = (0..n).fold(rat(0), |s, i| s + &am_m[i][i]);
        c[n - k] = -tr / rat(k as i64);
    }
    QPoly::new(c)
}

pub fn make(cmd: &MakeCmd) -> CmdResult {
    match cmd {
        MakeCmd::Jk { spec, out } => {
            let f = require_field(spec)?;
            let j = jk_from_minpoly(&f)?;
            let mut r = Report::new("make jk");
            r.line("degree", f.degree()).line("area", area(&j));
            r.put("certificate", json!({ "area": elem_json(&area(&j)), "terms": f.degree() }));
            emit(&mut r, "j", j_value(&j), out)?;
            Ok(r)
        }
        MakeCmd::Squares { matrix, spec, lambda, out } => {
            let a: Vec<Vec<i64>> = read_json(matrix)?;
            let f = match resolve_field(spec)? {
                Some(f) => f,
                None => NumberField::largest_real_root(&charpoly(&a)).map_err(|e| {
                    input_err(format!("characteristic polynomial does not define a field ({e}); pass --minpoly"))
                })?,
            };
            let lambda = match lambda {
                Some(l) => parse_element(&f, l)?,
                None => FieldElement::theta(&f),
            };
            let s = square_tiled_surface(&IntegralSymmetricInput { matrix: a, lambda })?;
            let mut r = Report::new("make squares");
            surface_certificate(&mut r, &s)?;
            emit(&mut r, "surface", surface_value(&s), out)?;
            Ok(r)
        }
        MakeCmd::Rects { spec, out } => {
            let f = require_field(spec)?;
            let s = rectangle_table_surface(&f)?;
            let mut r = Report::new("make rects");
            surface_certificate(&mut r, &s)?;
            emit(&mut r, "surface", surface_value(&s), out)?;
            Ok(r)
        }
        MakeCmd::Zk { p1, p2, p3, out } => {
            let s = zk_unfold_triangle(*p1, *p2, *p3)?;
            let mut r = Report::new("make zk");
            surface_certificate(&mut r, &s)?;
            emit(&mut r, "surface", surface_value(&s), out)?;
            Ok(r)
        }
        MakeCmd::Swap { spec, alpha, beta, out } => {
            let f = resolve_field(spec)?.unwrap_or_else(NumberField::rationals);
            let s = eh_ne_ah_example(&parse_element(&f, alpha)?, &parse_element(&f, beta)?)?;
            let mut r = Report::new("make swap");
            surface_certificate(&mut r, &s)?;
            emit(&mut r, "surface", surface_value(&s), out)?;
            Ok(r)
        }
    }
}

fn parse_slope(f: &Field, s: &str) -> Result<Slope> {
    match s.trim() {
        "inf" | "infinity" | "oo" | "∞" => Ok(Slope::Infinite),
        e => Ok(Slope::Finite(parse_element(f, e)?)),
    }
}

fn certificate_json(c: &APCertificate) -> Value {
    json!({
        "slopes": c.slopes.iter().map(slope_json).collect::<Vec<_>>(),
        "standardization_matrix": mat2_json(&c.standardization.matrix),
        "j_std": j_value(&c.standardization.j_std),
        "essential_holonomy": {
            "dim": c.essential_holonomy.dim(),
            "basis": c.essential_holonomy.basis.iter().map(vec_json).collect::<Vec<_>>(),
            "skew_gram": qmatrix_json(&c.essential_holonomy.skew_gram),
        },
        "gamma_basis": c.gamma_basis.iter().map(elem_json).collect::<Vec<_>>(),
        "multiplicative_field": subfield_json(&c.mult_field),
        "periodic_direction_field": subfield_json(&c.pdf),
        "rank": c.rank,
        "symmetric_gram": qmatrix_json(&c.sym_gram),
    })
}

fn certify(input: &Input) -> std::result::Result<Option<APCertificate>, Failure> {
    match periodic_direction_field(&input.j()?) {
        Ok(c) => Ok(Some(c)),
        Err(ApError::NotAlgebraicallyPeriodic) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn not_certified(command: &str) -> Report {
    let mut r = Report::new(command);
    r.verdict = Some(false);
    r.line("result", "fewer than three algebraically periodic directions found among candidates");
    r
}

pub fn check(cmd: &CheckCmd, bits: Option<u64>) -> CmdResult {
    match cmd {
        CheckCmd::Ap { input, slope } => {
            let inp = load(input, bits)?;
            let s = parse_slope(inp.field(), slope)?;
            let ok = is_ap_direction(&inp.j()?, &s);
            let mut r = Report::new("check ap");
            r.verdict = Some(ok);
            r.line("slope", slope_text(&s));
            r.put("slope", slope_json(&s));
            Ok(r)
        }
        CheckCmd::Identities { input } => {
            let inp = load(input, bits)?;
            let s = inp.surface()?;
            let rep = check_wedge_identities(s)?;
            let mut r = Report::new("check identities");
            r.verdict = Some(rep.pass);
            let names = ["horizontal", "vertical", "cross"];
            let residues: serde_json::Map<String, Value> = names
                .iter()
                .zip(&rep.residues)
                .map(|(n, v)| (n.to_string(), qmatrix_json(v.coords())))
                .collect();
            for (n, v) in names.iter().zip(&rep.residues) {
                r.line(&format!("{n} residue zero"), v.is_zero());
            }
            r.put("residues", Value::Object(residues));
            if let Some(w) = advisory::wedge_identity_residuals(s) {
                r.advisory = Some(json!({ "max_pair_sums": { "horizontal": w[0], "vertical": w[1], "cross": w[2] } }));
            }
            Ok(r)
        }
        CheckCmd::Pdf { input } => {
            let inp = load(input, bits)?;
            let Some(c) = certify(&inp)? else { return Ok(not_certified("check pdf")) };
            let mut r = Report::new("check pdf");
            r.verdict = Some(true);
            r.line("pdf minpoly", c.pdf.primitive_minpoly.to_string_var("x"))
                .line("pdf degree", c.pdf.degree())
                .line("multiplicative field degree", c.mult_field.degree())
                .line("EH dim", c.essential_holonomy.dim())
                .line("rank", c.rank);
            r.put("certificate", certificate_json(&c));
            Ok(r)
        }
        CheckCmd::Complete { input } => {
            let inp = load(input, bits)?;
            let s = inp.surface()?;
            let mut r = Report::new("check complete");
            match is_completely_ap(s) {
                Ok(v) => {
                    r.verdict = Some(v);
                    let h = s.holonomy_field()?;
                    r.line("holonomy field degree", h.degree());
                    r.put("holonomy_field", subfield_json(&h));
                }
                Err(ApError::NotAlgebraicallyPeriodic) => {
                    r.verdict = Some(false);
                    r.line("result", "not certified algebraically periodic");
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
        CheckCmd::Iso { input, matrix, standardize } => {
            let inp = load(input, bits)?;
            let mf: MatrixFile = read_json(matrix)?;
            let f = inp.field().clone();
            if let Some(ff) = &mf.field {
                if !field_from_file(ff)?.same_as(&f) {
                    return Err(input_err("matrix field differs from the invariant's field"));
                }
            }
            let m = matrix_from_file(&f, &mf)?;
            let j = if *standardize {
                match certify(&inp)? {
                    Some(c) => c.standardization.j_std,
                    None => return Ok(not_certified("check iso")),
                }
            } else {
                inp.j()?
            };
            let mut r = Report::new("check iso");
            r.verdict = Some(iso_contains(&j, &m));
            r.put("matrix", mat2_json(&m));
            Ok(r)
        }
        CheckCmd::Eh { input } => {
            let inp = load(input, bits)?;
            let eh = essential_holonomy(&inp.j()?)?;
            let mut r = Report::new("check eh");
            r.line("EH dim", eh.dim());
            r.put("basis", json!(eh.basis.iter().map(vec_json).collect::<Vec<_>>()));
            r.put("skew_gram", qmatrix_json(&eh.skew_gram));
            if let Input::Surface(s) = &inp {
                let ah = s.absolute_holonomy()?;
                r.line("absolute holonomy dim", ah.dim());
                r.put("absolute_holonomy_dim", json!(ah.dim()));
                r.verdict = Some(ah.dim() == eh.dim());
            }
            Ok(r)
        }
    }
}

pub fn form(cmd: &FormCmd, bits: Option<u64>) -> CmdResult {
    let (name, input) = match cmd {
        FormCmd::Gram { input } => ("form gram", input),
        FormCmd::Signature { input } => ("form signature", input),
        FormCmd::Decompose { input } => ("form decompose", input),
    };
    let inp = load(input, bits)?;
    let Some(c) = certify(&inp)? else { return Ok(not_certified(name)) };
    let g = gram_matrix(&c)?;
    let mut r = Report::new(name);
    match cmd {
        FormCmd::Gram { .. } => {
            r.put("basis", json!(g.basis.iter().map(elem_json).collect::<Vec<_>>()));
            r.put("gram", qmatrix_json(&g.matrix));
            r.line("size", g.matrix.len());
        }
        FormCmd::Signature { .. } => {
            let sig = signature(&g.matrix);
            let totally_real = is_totally_real_certified(&c);
            r.verdict = Some(totally_real);
            r.line("signature", format!("({}, {}, {})", sig.n_plus, sig.n_minus, sig.n_zero))
                .line("min terms lower bound", min_terms_lower_bound(&c));
            r.put("signature", json!([sig.n_plus, sig.n_minus, sig.n_zero]));
            r.put("totally_real", json!(totally_real));
        }
        FormCmd::Decompose { .. } => {
            let comps = isogenous_decomposition(&c)?;
            r.line("components", comps.len());
            r.put(
                "components",
                json!(comps
                    .iter()
                    .map(|k| json!({
                        "gamma": elem_json(&k.gamma),
                        "scale": elem_json(&k.scale),
                        "component": j_value(&k.component),
                    }))
                    .collect::<Vec<_>>()),
            );
            r.put("standardization_matrix", mat2_json(&c.standardization.matrix));
        }
    }
    Ok(r)
}

fn parse_point(f: &Field, s: &str) -> Result<PlanarVector> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| ApError::InvalidInput("point must be \"x,y\"".into()))?;
    PlanarVector::new(parse_element(f, x)?, parse_element(f, y)?)
}

pub fn surf(cmd: &SurfCmd, bits: Option<u64>) -> CmdResult {
    match cmd {
        SurfCmd::Validate { input } | SurfCmd::Genus { input } => {
            let inp = load(input, bits)?;
            let t = inp.surface()?.validate()?;
            let mut r = Report::new(if matches!(cmd, SurfCmd::Genus { .. }) { "surf genus" } else { "surf validate" });
            r.verdict = Some(true);
            r.line("genus", t.genus).line("V E F", format!("{} {} {}", t.v, t.e, t.f));
            r.put(
                "topology",
                json!({ "v": t.v, "e": t.e, "f": t.f, "genus": t.genus, "cone_angle_multiples": t.cone_angle_multiples }),
            );
            Ok(r)
        }
        SurfCmd::J { input, out } => {
            let inp = load(input, bits)?;
            let j = inp.j()?;
            let mut r = Report::new("surf j");
            r.line("area", area(&j)).line("terms", j.terms().len());
            emit(&mut r, "j", j_value(&j), out)?;
            Ok(r)
        }
        SurfCmd::Holonomy { input } => {
            let inp = load(input, bits)?;
            let s = inp.surface()?;
            let abs = s.absolute_holonomy()?;
            let rel = s.relative_holonomy()?;
            let mut r = Report::new("surf holonomy");
            r.line("absolute dim", abs.dim()).line("relative dim", rel.dim());
            r.put("absolute", json!(abs.basis.iter().map(vec_json).collect::<Vec<_>>()));
            r.put("relative", json!(rel.basis.iter().map(vec_json).collect::<Vec<_>>()));
            match s.holonomy_field() {
                Ok(h) => {
                    r.line("holonomy field degree", h.degree());
                    r.put("holonomy_field", subfield_json(&h));
                }
                Err(ApError::DegenerateHolonomy) => {
                    r.line("holonomy field", "undefined (holonomy does not span the plane)");
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
        SurfCmd::Cut { input, polygon, from, to, out } => {
            let inp = load(input, bits)?;
            let s = inp.surface()?;
            let f = s.field().clone();
            let cut = scissors_move(s, *polygon, (&parse_point(&f, from)?, &parse_point(&f, to)?))?;
            let mut r = Report::new("surf cut");
            r.verdict = Some(cut.j_invariant()? == s.j_invariant()?);
            r.line("polygons", cut.polygons().len());
            emit(&mut r, "surface", surface_value(&cut), out)?;
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        assert_eq!(charpoly(&[vec![1, 1], vec![1, -1]]), QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(
            charpoly(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, -1]]),
            QPoly::from_ints(&[-1, -2, 1, 1])
        );
        assert_eq!(charpoly(&[vec![3]]), QPoly::from_ints(&[-3, 1]));
    }

    #[test]
    fn slopes_parse() {
        let f = NumberField::largest_real_root(&QPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(parse_slope(&f, "inf").unwrap(), Slope::Infinite);
        assert_eq!(parse_slope(&f, "x+1").unwrap(), Slope::Finite(FieldElement::from_ints(&f, &[1, 1])));
    }
}
