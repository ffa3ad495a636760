//! Exact Gaussian elimination over Q and over number fields.
//!
//! Pivots are always the first nonzero entry in column order, so every result
//! (reduced row echelon forms, kernel bases) is canonical.

use num_traits::{One, Zero};

use super::Rational;

/// Minimal field interface needed by the elimination routines.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn s_zero(&self) -> Self;
    fn s_one(&self) -> Self;
    fn s_is_zero(&self) -> bool;
    fn s_add(&self, o: &Self) -> Self;
    fn s_sub(&self, o: &Self) -> Self;
    fn s_mul(&self, o: &Self) -> Self;
    /// Division by a nonzero element.
    fn s_div(&self, o: &Self) -> Self;
}

impl Scalar for Rational {
    fn s_zero(&self) -> Self {
        Rational::zero()
    }
    fn s_one(&self) -> Self {
        Rational::one()
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
}

pub type Matrix<T> = Vec<Vec<T>>;
pub type QMatrix = Matrix<Rational>;

pub fn q_zeros(r: usize, c: usize) -> QMatrix {
    vec![vec![Rational::zero(); c]; r]
}

pub fn q_identity(n: usize) -> QMatrix {
    let mut m = q_zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose<T: Clone>(m: &Matrix<T>, ncols: usize) -> Matrix<T> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, zero: &T) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = zero.clone();
                    for k in 0..inner {
                        if !row[k].s_is_zero() && !b[k][j].s_is_zero() {
                            acc = acc.s_add(&row[k].s_mul(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Scalar>(a: &Matrix<T>, v: &[T], zero: &T) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = zero.clone();
            for (x, y) in row.iter().zip(v) {
                if !x.s_is_zero() && !y.s_is_zero() {
                    acc = acc.s_add(&x.s_mul(y));
                }
            }
            acc
        })
        .collect()
}

/// In-place reduced row echelon form; returns pivot columns. Zero rows are dropped.
pub fn rref<T: Scalar>(m: &mut Matrix<T>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].s_is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].s_one().s_div(&m[r][c]);
        for x in m[r].iter_mut() {
            if !x.s_is_zero() {
                *x = x.s_mul(&inv);
            }
        }
        for i in 0..m.len() {
            if i == r || m[i][c].s_is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..ncols {
                if !m[r][j].s_is_zero() {
                    let d = f.s_mul(&m[r][j]);
                    m[i][j] = m[i][j].s_sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank<T: Scalar>(m: &Matrix<T>, ncols: usize) -> usize {
    let mut a = m.clone();
    rref(&mut a, ncols).len()
}

/// Basis of `{v : m v = 0}`, one vector per free column with that coordinate equal to one.
pub fn kernel<T: Scalar>(m: &Matrix<T>, ncols: usize, one: &T) -> Vec<Vec<T>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let zero = one.s_zero();
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[f] = one.clone();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = zero.s_sub(&a[i][f]);
        }
        out.push(v);
    }
    out
}

/// Canonical basis of the row space (reduced echelon rows).
pub fn row_space<T: Scalar>(rows: &Matrix<T>, ncols: usize) -> (Matrix<T>, Vec<usize>) {
    let mut a = rows.clone();
    let p = rref(&mut a, ncols);
    (a, p)
}

pub fn inverse<T: Scalar>(m: &Matrix<T>, one: &T) -> Option<Matrix<T>> {
    let n = m.len();
    if n == 0 {
        return Some(vec![]);
    }
    let zero = one.s_zero();
    let mut a: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    let piv = rref(&mut a, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some solution of `a x = b`, if one exists.
pub fn solve<T: Scalar>(a: &Matrix<T>, ncols: usize, b: &[T], one: &T) -> Option<Vec<T>> {
    let zero = one.s_zero();
    let mut aug: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug, ncols + 1);
    if piv.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![zero; ncols];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Determinant by elimination.
pub fn determinant<T: Scalar>(m: &Matrix<T>, one: &T) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut det = one.clone();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].s_is_zero()) else {
            return one.s_zero();
        };
        if p != c {
            a.swap(p, c);
            det = one.s_zero().s_sub(&det);
        }
        det = det.s_mul(&a[c][c]);
        for i in c + 1..n {
            if a[i][c].s_is_zero() {
                continue;
            }
            let f = a[i][c].s_div(&a[c][c]);
            for j in c..n {
                let d = f.s_mul(&a[c][j]);
                a[i][j] = a[i][j].s_sub(&d);
            }
        }
    }
    det
}
