//! Irreducibility test over Q.
//!
//! A modular degree sieve (distinct-degree factorization modulo small primes)
//! proves irreducibility in almost all cases; whatever factor degrees survive
//! the sieve are settled by Kronecker's interpolation search, so the test is
//! complete.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::QPoly;
use super::Rational;

const SIEVE_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// True iff `p` (nonzero, degree >= 1) is irreducible over Q.
pub fn is_irreducible(p: &QPoly) -> bool {
    let n = match p.degree() {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    if p.gcd(&p.derivative()).degree() != Some(0) {
        return false;
    }
    let f = p.primitive_integer();
    if f[0].is_zero() {
        return false;
    }
    let mut allowed: BTreeSet<usize> = (1..=n / 2).collect();
    for &pr in &SIEVE_PRIMES {
        if allowed.is_empty() {
            return true;
        }
        let Some(degs) = factor_degrees_mod(&f, pr) else {
            continue;
        };
        let sums = subset_sums(&degs);
        allowed.retain(|d| sums.contains(d));
    }
    for d in allowed {
        if kronecker_factor(&f, d).is_some() {
            return false;
        }
    }
    true
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let f = r[k] * inv % p;
        if f != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = k - dm + i;
                r[idx] = (r[idx] + p - f * c % p) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
    }
    fp_trim(r)
}

fn fp_divexact(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    for k in (dm..r.len()).rev() {
        let f = r[k] * inv % p;
        q[k - dm] = f;
        if f != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = k - dm + i;
                r[idx] = (r[idx] + p - f * c % p) % p;
            }
        }
    }
    fp_trim(q)
}

fn fp_mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    fp_rem(&fp_trim(v), m, p)
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_mulmod(&r, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

/// Degrees of the irreducible factors of `f` mod `p`, or `None` when `p` divides the
/// leading coefficient or `f` is not square-free modulo `p`.
fn factor_degrees_mod(f: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let pb = BigInt::from(p);
    let g: Fp = fp_trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap_or(0))
            .collect(),
    );
    if g.len() != f.len() {
        return None;
    }
    let deriv: Fp = fp_trim(
        g.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * (k as u64 % p) % p)
            .collect(),
    );
    if deriv.is_empty() || fp_gcd(&g, &deriv, p).len() != 1 {
        return None;
    }
    let mut rest = g;
    let mut degs = Vec::new();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.len() > 1 && 2 * d <= rest.len() - 1 {
        h = fp_powmod(&h, p, &rest, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let hx = fp_trim(hx);
        let gd = fp_gcd(&rest, &hx, p);
        if gd.len() > 1 {
            for _ in 0..(gd.len() - 1) / d {
                degs.push(d);
            }
            rest = fp_divexact(&rest, &gd, p);
            h = fp_rem(&h, &rest, p);
        }
        d += 1;
    }
    if rest.len() > 1 {
        degs.push(rest.len() - 1);
    }
    Some(degs)
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Searches for an integer factor of degree exactly `d`.
fn kronecker_factor(f: &[BigInt], d: usize) -> Option<QPoly> {
    let fq = QPoly::new(f.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let mut pts: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut k = 0i64;
    while pts.len() < 3 * (d + 1) + 2 {
        let a = BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        k += 1;
        let v = eval_int(f, &a);
        if v.is_zero() {
            return Some(QPoly::new(vec![
                Rational::from_integer(-a),
                Rational::one(),
            ]));
        }
        pts.push((a, divisors(&v)));
    }
    pts.sort_by_key(|(_, ds)| ds.len());
    pts.truncate(d + 1);
    let xs: Vec<Rational> = pts.iter().map(|(a, _)| Rational::from_integer(a.clone())).collect();
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| {
            let mut c = ds.clone();
            if i > 0 {
                c.extend(ds.iter().map(|x| -x));
            }
            c
        })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let ys: Vec<Rational> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| Rational::from_integer(c[i].clone()))
            .collect();
        let g = lagrange(&xs, &ys);
        if g.degree() == Some(d) && g.coeffs().iter().all(|c| c.is_integer()) && fq.rem(&g).is_zero()
        {
            return Some(g);
        }
        let mut j = 0;
        loop {
            if j > d {
                return None;
            }
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, xi) in xs.iter().enumerate() {
        let mut term = QPoly::constant(ys[i].clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = QPoly::new(vec![-xj.clone(), Rational::one()]);
                term = &term * &lin;
                term = term.scale(&(Rational::one() / (xi - xj)));
            }
        }
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cases() {
        assert!(is_irreducible(&QPoly::from_ints(&[-2, 0, 1])));
        assert!(is_irreducible(&QPoly::from_ints(&[-2, 0, 0, 1])));
        assert!(!is_irreducible(&QPoly::from_ints(&[-1, 0, 1])));
        assert!(is_irreducible(&QPoly::from_ints(&[-1, -2, 1, 1])));
        // (x^2 - 2)(x^2 - 3)
        assert!(!is_irreducible(&QPoly::from_ints(&[6, 0, -5, 0, 1])));
        // x^4 - 10x^2 + 1 splits modulo every prime, yet is irreducible.
        assert!(is_irreducible(&QPoly::from_ints(&[1, 0, -10, 0, 1])));
        // (x^2 + x + 1)(x^3 - 2)
        let p = &QPoly::from_ints(&[1, 1, 1]) * &QPoly::from_ints(&[-2, 0, 0, 1]);
        assert!(!is_irreducible(&p));
        assert!(!is_irreducible(&QPoly::from_ints(&[4, 0, 0, 0, 1])));
    }

    #[test]
    fn modular_degrees() {
        // x^2 - 2 is irreducible mod 3 and 5, splits mod 7.
        let f = QPoly::from_ints(&[-2, 0, 1]).primitive_integer();
        assert_eq!(factor_degrees_mod(&f, 3), Some(vec![2]));
        assert_eq!(factor_degrees_mod(&f, 7), Some(vec![1, 1]));
    }
}
