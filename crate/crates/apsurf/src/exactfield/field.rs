//! Real-embedded number fields `Q(θ)` and their elements in the power basis.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::is_irreducible;
use super::linalg::{self, QMatrix, Scalar};
use super::poly::{ratio, QPoly};
use super::Rational;
use crate::error::{ApError, Result};

/// Shared handle to a number field.
pub type Field = Arc<NumberField>;

/// `Q(θ)` for a designated real root θ of an irreducible monic polynomial.
#[derive(Debug)]
pub struct NumberField {
    minpoly: QPoly,
    degree: usize,
    interval: (Rational, Rational),
    sign_at_lo: i8,
    refined: RwLock<(Rational, Rational)>,
    traces: Vec<Rational>,
    reduction: Vec<Vec<Rational>>,
    name: Option<String>,
}

impl NumberField {
    /// Builds the field, checking monicity, irreducibility and root isolation.
    pub fn new(minpoly: QPoly, lo: Rational, hi: Rational) -> Result<Field> {
        Self::build(minpoly, lo, hi, true)
    }

    /// Same as [`NumberField::new`] without the irreducibility proof; the caller
    /// guarantees it (e.g. for minimal polynomials computed in a field).
    pub(crate) fn new_irreducible(minpoly: QPoly, lo: Rational, hi: Rational) -> Result<Field> {
        Self::build(minpoly, lo, hi, false)
    }

    fn build(minpoly: QPoly, lo: Rational, hi: Rational, check: bool) -> Result<Field> {
        let degree = match minpoly.degree() {
            Some(d) if d >= 1 && minpoly.is_monic() => d,
            _ => return Err(ApError::NotMonic),
        };
        if lo >= hi {
            return Err(ApError::InvalidInput("empty root interval".into()));
        }
        if check && !is_irreducible(&minpoly) {
            return Err(ApError::NotIrreducible);
        }
        let at_lo = minpoly.eval(&lo);
        let at_hi = minpoly.eval(&hi);
        let mut count = minpoly.count_roots(&lo, &hi);
        if at_hi.is_zero() {
            count -= 1;
        }
        match count {
            0 => return Err(ApError::NoRootInInterval),
            1 => {}
            _ => return Err(ApError::MultipleRootsInInterval),
        }
        if at_lo.is_zero() {
            return Err(ApError::NoRootInInterval);
        }
        let sign_at_lo = if at_lo.is_positive() { 1 } else { -1 };
        let traces = newton_traces(&minpoly, degree);
        let reduction = reduction_table(&minpoly, degree);
        Ok(Arc::new(NumberField {
            minpoly,
            degree,
            interval: (lo.clone(), hi.clone()),
            sign_at_lo,
            refined: RwLock::new((lo, hi)),
            traces,
            reduction,
            name: None,
        }))
    }

    /// `Q` presented as `Q(1)` with minimal polynomial `x - 1`.
    pub fn rationals() -> Field {
        Self::new_irreducible(QPoly::from_ints(&[-1, 1]), Rational::zero(), Rational::from_integer(2.into()))
            .expect("x - 1 has a root in (0, 2)")
    }

    /// The field generated by the largest real root of an irreducible `p`.
    pub fn largest_real_root(p: &QPoly) -> Result<Field> {
        let roots = p.isolate_real_roots();
        let (lo, hi) = roots.last().cloned().ok_or(ApError::NoRootInInterval)?;
        Self::new(p.monic(), lo, hi)
    }

    /// Attaches a display name.
    pub fn named(self: Field, name: &str) -> Field {
        let f = Arc::try_unwrap(self).unwrap_or_else(|a| a.duplicate());
        Arc::new(NumberField {
            name: Some(name.to_string()),
            ..f
        })
    }

    fn duplicate(&self) -> NumberField {
        NumberField {
            minpoly: self.minpoly.clone(),
            degree: self.degree,
            interval: self.interval.clone(),
            sign_at_lo: self.sign_at_lo,
            refined: RwLock::new(self.refined.read().expect("lock").clone()),
            traces: self.traces.clone(),
            reduction: self.reduction.clone(),
            name: self.name.clone(),
        }
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn root_interval(&self) -> (Rational, Rational) {
        self.interval.clone()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// True when both handles denote the same embedded field.
    pub fn same_as(&self, other: &NumberField) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.minpoly != other.minpoly {
            return false;
        }
        if self.interval == other.interval {
            return true;
        }
        let lo = (&self.interval.0).max(&other.interval.0).clone();
        let hi = (&self.interval.1).min(&other.interval.1).clone();
        if lo >= hi {
            return false;
        }
        let mut c = self.minpoly.count_roots(&lo, &hi);
        if self.minpoly.eval(&hi).is_zero() {
            c -= 1;
        }
        c == 1 && !self.minpoly.eval(&lo).is_zero()
    }

    /// Isolating interval for θ of width at most `2^-bits`.
    pub fn root_enclosure(&self, bits: u32) -> (Rational, Rational) {
        let target = ratio(1, 1) / Rational::from_integer(BigInt::one() << bits);
        {
            let r = self.refined.read().expect("lock");
            if &r.1 - &r.0 <= target {
                return r.clone();
            }
        }
        let mut r = self.refined.write().expect("lock");
        while &r.1 - &r.0 > target {
            let m = (&r.0 + &r.1) / Rational::from_integer(2.into());
            let v = self.minpoly.eval(&m);
            if v.is_zero() {
                *r = (m.clone(), m);
                break;
            }
            let s = if v.is_positive() { 1 } else { -1 };
            if s == self.sign_at_lo {
                r.0 = m;
            } else {
                r.1 = m;
            }
        }
        r.clone()
    }

    /// `tr(θ^k)` for `k < degree`.
    pub fn power_traces(&self) -> &[Rational] {
        &self.traces
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.degree;
        if v.len() <= n {
            let mut out = v.to_vec();
            out.resize(n, Rational::zero());
            return out;
        }
        if v.len() <= 2 * n - 1 {
            let mut out = v[..n].to_vec();
            for (k, c) in v.iter().enumerate().skip(n) {
                if c.is_zero() {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&self.reduction[k - n]) {
                    *o += c * t;
                }
            }
            return out;
        }
        let r = QPoly::new(v.to_vec()).rem(&self.minpoly);
        let mut out = r.coeffs().to_vec();
        out.resize(n, Rational::zero());
        out
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

fn newton_traces(p: &QPoly, n: usize) -> Vec<Rational> {
    // p = x^n + a_{n-1} x^{n-1} + ... + a_0
    let a = |i: usize| p.coeff(i);
    let mut s: Vec<Rational> = vec![Rational::from_integer(BigInt::from(n))];
    for k in 1..n {
        let mut acc = Rational::from_integer(BigInt::from(k)) * a(n - k);
        for i in 1..k {
            acc += a(n - i) * &s[k - i];
        }
        s.push(-acc);
    }
    s
}

fn reduction_table(p: &QPoly, n: usize) -> Vec<Vec<Rational>> {
    let mut table = Vec::new();
    let mut cur: Vec<Rational> = (0..n).map(|i| -p.coeff(i)).collect();
    for _ in n..(2 * n).saturating_sub(1) {
        table.push(cur.clone());
        let top = cur[n - 1].clone();
        let mut next = vec![Rational::zero(); n];
        for i in 1..n {
            next[i] = cur[i - 1].clone();
        }
        for (i, x) in next.iter_mut().enumerate() {
            *x -= &top * p.coeff(i);
        }
        cur = next;
    }
    table
}

/// Element `c_0 + c_1 θ + ... + c_{n-1} θ^{n-1}` of a number field.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    /// Builds an element from power-basis coefficients, reducing modulo the minimal polynomial.
    pub fn new(field: &Field, coeffs: Vec<Rational>) -> Self {
        let coeffs = field.reduce(&coeffs);
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn from_rational(field: &Field, q: Rational) -> Self {
        Self::new(field, vec![q])
    }

    pub fn from_int(field: &Field, q: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(q.into()))
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator θ.
    pub fn theta(field: &Field) -> Self {
        Self::new(field, vec![Rational::zero(), Rational::one()])
    }

    /// Value of a rational polynomial at θ.
    pub fn from_poly(field: &Field, p: &QPoly) -> Self {
        Self::new(field, p.coeffs().to_vec())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        self.field.same_as(&other.field)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(ApError::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(self.sub_unchecked(o))
    }

    pub fn try_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn try_div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inverse()?))
    }

    fn add_unchecked(&self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub_unchecked(&self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul_unchecked(&self, o: &FieldElement) -> FieldElement {
        let n = self.coeffs.len();
        let mut conv = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.reduce(&conv),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo the minimal polynomial.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(ApError::DivisionByZero);
        }
        let (g, s, _) = self.to_poly().xgcd(self.field.minpoly());
        debug_assert!(g == QPoly::one());
        Ok(FieldElement::from_poly(&self.field, &s))
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> FieldElement {
        let mut acc = FieldElement::one(&self.field);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Trace over Q, i.e. the trace of the multiplication matrix.
    pub fn trace(&self) -> Rational {
        self.coeffs
            .iter()
            .zip(self.field.power_traces())
            .map(|(c, t)| c * t)
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Matrix of multiplication by `self` on the power basis (column `j` = `self * θ^j`).
    pub fn mult_matrix(&self) -> QMatrix {
        let n = self.field.degree();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut e = vec![Rational::zero(); n];
                e[j] = Rational::one();
                self.mul_unchecked(&FieldElement::new(&self.field, e)).coeffs
            })
            .collect();
        linalg::transpose(&cols, n)
    }

    /// Enclosure `[lo, hi]` of the real value.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let p = self.to_poly();
        let target = Rational::one() / Rational::from_integer(BigInt::one() << bits);
        let mut b = bits.max(8);
        loop {
            let (lo, hi) = self.field.root_enclosure(b);
            let (a, c) = p.eval_interval(&lo, &hi);
            if &c - &a <= target {
                return (a, c);
            }
            b += 16;
        }
    }

    /// Exact sign of the real value.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.coeffs[0].is_positive() { 1 } else { -1 };
        }
        let p = self.to_poly();
        let mut bits = 16u32;
        loop {
            let (lo, hi) = self.field.root_enclosure(bits);
            let (a, b) = p.eval_interval(&lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            bits = if bits < 128 { bits + 16 } else { bits * 2 };
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Floating-point approximation, for display and advisory output only.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(60);
        let m = (lo + hi) / Rational::from_integer(2.into());
        m.numer().to_f64().unwrap_or(f64::NAN) / m.denom().to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_field(other)
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_string_var("t"))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    /// Panics on mismatched fields; see [`FieldElement::try_add`].
    fn add(self, o: &FieldElement) -> FieldElement {
        self.try_add(o).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.try_sub(o).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.try_mul(o).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Scalar for FieldElement {
    fn s_zero(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn s_one(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn s_add(&self, o: &Self) -> Self {
        self.add_unchecked(o)
    }
    fn s_sub(&self, o: &Self) -> Self {
        self.sub_unchecked(o)
    }
    fn s_mul(&self, o: &Self) -> Self {
        self.mul_unchecked(o)
    }
    fn s_div(&self, o: &Self) -> Self {
        self.mul_unchecked(&o.inverse().expect("nonzero pivot"))
    }
}

/// Polynomial with coefficients in a number field, low-to-high.
pub type LPoly = Vec<FieldElement>;

/// Evaluates a polynomial over L at `x`.
pub fn eval_lpoly(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero(x.field());
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Rational enclosure helper: some rational strictly between two disjoint enclosures.
pub fn rational_between(below: &Rational, above: &Rational) -> Rational {
    debug_assert!(below < above);
    let mut k = 0u32;
    loop {
        let scale = Rational::from_integer(BigInt::one() << k);
        let c = (below * &scale).floor() + Rational::one();
        let cand = c / &scale;
        if &cand < above {
            return cand;
        }
        k += 1;
    }
}
