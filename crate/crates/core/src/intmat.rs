//! Small dense integer matrices: products, powers, Bareiss determinant and
//! Smith normal form with transforms.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMat { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &IntMat) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMat) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn pow(&self, e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let id = Self::identity(self.rows);
        let mut p = self.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    /// Evaluates an integer polynomial (low degree first) at this matrix.
    pub fn eval_poly(&self, coeffs: &[i64]) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = &acc * self;
            acc = acc.add(&Self::identity(n).scale(c));
        }
        acc
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMat {
    type Output = IntMat;
    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// `u · a · v = d` with `d` diagonal, `d[i] | d[i+1]`, and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub diag: Vec<i64>,
}

pub fn smith_normal_form(a: &IntMat) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut u_inv = IntMat::identity(m);
    let mut v = IntMat::identity(n);

    // row op: row_i += k * row_j, tracked in u and its inverse
    fn row_add(d: &mut IntMat, u: &mut IntMat, ui: &mut IntMat, i: usize, j: usize, k: i64) {
        for c in 0..d.cols() {
            let x = d[(j, c)];
            d[(i, c)] += k * x;
        }
        for c in 0..u.cols() {
            let x = u[(j, c)];
            u[(i, c)] += k * x;
        }
        for r in 0..ui.rows() {
            let x = ui[(r, i)];
            ui[(r, j)] -= k * x;
        }
    }
    fn row_swap(d: &mut IntMat, u: &mut IntMat, ui: &mut IntMat, i: usize, j: usize) {
        for c in 0..d.cols() {
            let t = d[(i, c)];
            d[(i, c)] = d[(j, c)];
            d[(j, c)] = t;
        }
        for c in 0..u.cols() {
            let t = u[(i, c)];
            u[(i, c)] = u[(j, c)];
            u[(j, c)] = t;
        }
        for r in 0..ui.rows() {
            let t = ui[(r, i)];
            ui[(r, i)] = ui[(r, j)];
            ui[(r, j)] = t;
        }
    }
    fn row_neg(d: &mut IntMat, u: &mut IntMat, ui: &mut IntMat, i: usize) {
        for c in 0..d.cols() {
            d[(i, c)] = -d[(i, c)];
        }
        for c in 0..u.cols() {
            u[(i, c)] = -u[(i, c)];
        }
        for r in 0..ui.rows() {
            ui[(r, i)] = -ui[(r, i)];
        }
    }
    fn col_add(d: &mut IntMat, v: &mut IntMat, i: usize, j: usize, k: i64) {
        for r in 0..d.rows() {
            let x = d[(r, j)];
            d[(r, i)] += k * x;
        }
        for r in 0..v.rows() {
            let x = v[(r, j)];
            v[(r, i)] += k * x;
        }
    }
    fn col_swap(d: &mut IntMat, v: &mut IntMat, i: usize, j: usize) {
        for r in 0..d.rows() {
            let t = d[(r, i)];
            d[(r, i)] = d[(r, j)];
            d[(r, j)] = t;
        }
        for r in 0..v.rows() {
            let t = v[(r, i)];
            v[(r, i)] = v[(r, j)];
            v[(r, j)] = t;
        }
    }

    let r = m.min(n);
    let mut t = 0;
    while t < r {
        // pivot: smallest nonzero absolute value in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)] != 0 && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(&mut d, &mut u, &mut u_inv, t, pi);
        col_swap(&mut d, &mut v, t, pj);
        loop {
            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(p);
                if q != 0 {
                    row_add(&mut d, &mut u, &mut u_inv, i, t, -q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(p);
                if q != 0 {
                    col_add(&mut d, &mut v, j, t, -q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| d[(i, j)] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        row_add(&mut d, &mut u, &mut u_inv, t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/col t to the pivot
            let mut best = (t, t);
            for i in t..m {
                if d[(i, t)] != 0 && d[(i, t)].abs() < d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if d[(t, j)] != 0 && d[(t, j)].abs() < d[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                row_swap(&mut d, &mut u, &mut u_inv, t, best.0);
            }
            if best.1 != t {
                col_swap(&mut d, &mut v, t, best.1);
            }
        }
        if d[(t, t)] < 0 {
            row_neg(&mut d, &mut u, &mut u_inv, t);
        }
        t += 1;
    }
    let diag = (0..r).map(|i| d[(i, i)]).collect();
    Smith { u, u_inv, v, diag }
}
