//! Dense matrices over a [`Field`] and the handful of solvers the crate needs.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn column(v: Vec<S>) -> Self {
        Mat { rows: v.len(), cols: 1, data: v }
    }

    pub fn scalar(x: S) -> Self {
        Mat { rows: 1, cols: 1, data: vec![x] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out: Mat<S> = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let out_row = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (x, b) in out_row.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        *x = x.clone() + &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, o: &Mat<S>) -> Mat<S> {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out: Mat<S> = Mat::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * o.rows + k) * c + j * o.cols + l] = a.clone() * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn add(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn scale(&self, x: &S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * x).collect() }
    }

    /// Adds `x * o` in place.
    pub fn axpy(&mut self, x: &S, o: &Mat<S>) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix axpy shape mismatch");
        if x.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = a.clone() + &(x.clone() * b);
            }
        }
    }

    pub fn trace(&self) -> S {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).fold(S::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest entry modulus, used for residuals.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_c64().norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the numerical values.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.to_c64().norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

fn pivot_threshold<S: Field>(scale: f64) -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-9 * scale.max(1.0)
    }
}

fn is_negligible<S: Field>(x: &S, thr: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= thr
    }
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve<S: Field>(a: &Mat<S>, b: &Mat<S>) -> Option<Mat<S>> {
    let n = a.rows;
    assert_eq!(n, a.cols, "solve needs a square matrix");
    assert_eq!(n, b.rows, "right-hand side shape mismatch");
    let m = b.cols;
    let scale = a.max_abs();
    let thr = pivot_threshold::<S>(scale);
    let mut rows: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend_from_slice(b.row(i));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !is_negligible(&rows[r][col], thr))
            .max_by(|&x, &y| rows[x][col].magnitude().total_cmp(&rows[y][col].magnitude()))?;
        rows.swap(col, piv);
        let p = rows[col][col].inv()?;
        for x in rows[col].iter_mut() {
            *x = x.clone() * &p;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
    }
    Some(Mat::from_fn(n, m, |i, j| rows[i][n + j].clone()))
}

pub fn inverse<S: Field>(a: &Mat<S>) -> Option<Mat<S>> {
    solve(a, &Mat::identity(a.rows))
}

/// Incrementally collects linearly independent vectors.
///
/// Keeps a reduced echelon copy of the accepted vectors so membership tests
/// are a single reduction pass.
#[derive(Clone, Debug)]
pub struct SpanBuilder<S> {
    len: usize,
    echelon: Vec<(usize, Vec<S>)>,
    accepted: Vec<Vec<S>>,
}

impl<S: Field> SpanBuilder<S> {
    pub fn new(len: usize) -> Self {
        SpanBuilder { len, echelon: Vec::new(), accepted: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.accepted.len()
    }

    fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut r = v.to_vec();
        for (p, row) in &self.echelon {
            let f = r[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        r
    }

    /// Adds `v` if it is independent of the vectors already accepted.
    pub fn push(&mut self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let scale = v.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
        if scale == 0.0 {
            return false;
        }
        let r = self.reduce(v);
        let thr = if S::EXACT { 0.0 } else { 1e-8 * scale };
        let piv = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !is_negligible(*x, thr))
            .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
            .map(|(i, _)| i);
        let Some(p) = piv else { return false };
        let inv = r[p].inv().expect("nonzero pivot");
        let mut row: Vec<S> = r.into_iter().map(|x| x * &inv).collect();
        row[p] = S::one();
        for (_, other) in self.echelon.iter_mut() {
            let f = other[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in other.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        self.echelon.push((p, row));
        self.accepted.push(v.to_vec());
        true
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[S]) -> bool {
        let scale = v.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
        let thr = if S::EXACT { 0.0 } else { 1e-8 * scale.max(1e-300) };
        self.reduce(v).iter().all(|x| is_negligible(x, thr))
    }

    pub fn into_vectors(self) -> Vec<Vec<S>> {
        self.accepted
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.accepted
    }
}

/// Basis of the right kernel {x : a x = 0}.
pub fn nullspace<S: Field>(a: &Mat<S>) -> Vec<Vec<S>> {
    let (n, m) = (a.rows, a.cols);
    let thr = pivot_threshold::<S>(a.max_abs());
    let mut rows: Vec<Vec<S>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let piv = (r..n)
            .filter(|&i| !is_negligible(&rows[i][c], thr))
            .max_by(|&x, &y| rows[x][c].magnitude().total_cmp(&rows[y][c].magnitude()));
        let Some(p) = piv else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); m];
            v[f] = S::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}
