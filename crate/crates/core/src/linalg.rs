//! Dense matrices and sparse vectors over a cyclotomic field.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::CycNum;

/// Sparse vector: sorted `(index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, CycNum)>;

/// Accumulator for sparse linear combinations.
#[derive(Default, Clone)]
pub struct Acc {
    terms: BTreeMap<usize, CycNum>,
}

impl Acc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, k: usize, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => *v += c,
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &[(usize, CycNum)], s: &CycNum) {
        for (k, c) in v {
            self.add(*k, &(c * s));
        }
    }

    pub fn add_vec(&mut self, v: &[(usize, CycNum)]) {
        for (k, c) in v {
            self.add(*k, c);
        }
    }

    pub fn finish(self) -> SparseVec {
        self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub fn sparse_scale(v: &[(usize, CycNum)], s: &CycNum) -> SparseVec {
    if s.is_zero() {
        return vec![];
    }
    v.iter().map(|(k, c)| (*k, c * s)).collect()
}

pub fn sparse_to_dense(v: &[(usize, CycNum)], dim: usize, order: u32) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(order); dim];
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

pub fn dense_to_sparse(v: &[CycNum]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// Dense row-major matrix over `Q(ζ_order)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycNum>,
}

/// Reduced row echelon form with its pivot columns.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Matrix { rows, cols, order, data: vec![CycNum::zero(order); rows * cols] }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.set(i, i, CycNum::one(order));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>, order: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, order, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<CycNum>], rows: usize, order: u32) -> Self {
        let mut m = Self::zeros(rows, cols.len(), order);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.order);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, order: self.order, data }
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = CycNum::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, order: self.order, data }
    }

    pub fn scale(&self, s: &CycNum) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, order: self.order, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    /// Gauss-Jordan elimination; skips zero entries throughout.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            let nz: Vec<usize> = (c..m.cols).filter(|&j| !m.get(r, j).is_zero()).collect();
            for &j in &nz {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for &j in &nz {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel basis: one vector per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        let Rref { matrix: m, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![CycNum::zero(self.order); self.cols];
                v[f] = CycNum::one(self.order);
                for (r, &p) in pivots.iter().enumerate() {
                    let x = m.get(r, f);
                    if !x.is_zero() {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// Determinant by forward elimination.
    pub fn det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = CycNum::one(self.order);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return CycNum::zero(self.order);
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            let inv = piv.inv().expect("nonzero pivot");
            let nz: Vec<usize> = (c + 1..n).filter(|&j| !m.get(c, j).is_zero()).collect();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for &j in &nz {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
                m.set(i, c, CycNum::zero(self.order));
            }
        }
        det
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[CycNum]) -> Option<Vec<CycNum>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix: m, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![CycNum::zero(self.order); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.order);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycNum::one(self.order));
        }
        let Rref { matrix: m, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n, self.order);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|c| c.to_string()).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Coordinates with respect to a fixed family of independent vectors.
pub struct Coordinates {
    rows: Vec<usize>,
    inv: Matrix,
    basis: Vec<SparseVec>,
    order: u32,
}

impl Coordinates {
    /// `None` if the vectors are dependent.
    pub fn new(basis: &[Vec<CycNum>], dim: usize, order: u32) -> Option<Self> {
        let m = basis.len();
        if m == 0 {
            return Some(Coordinates { rows: vec![], inv: Matrix::zeros(0, 0, order), basis: vec![], order });
        }
        let rows = Matrix::from_rows(basis.to_vec(), order).rref().pivots;
        if rows.len() < m {
            return None;
        }
        debug_assert!(basis.iter().all(|v| v.len() == dim));
        let mut sub = Matrix::zeros(m, m, order);
        for (r, &p) in rows.iter().enumerate() {
            for (a, v) in basis.iter().enumerate() {
                sub.set(r, a, v[p].clone());
            }
        }
        let inv = sub.inverse()?;
        Some(Coordinates { rows, inv, basis: basis.iter().map(|v| dense_to_sparse(v)).collect(), order })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[(usize, CycNum)]) -> Option<Vec<CycNum>> {
        let mut rhs = vec![CycNum::zero(self.order); self.rows.len()];
        for (r, &p) in self.rows.iter().enumerate() {
            if let Some((_, c)) = v.iter().find(|(k, _)| *k == p) {
                rhs[r] = c.clone();
            }
        }
        let x = self.inv.apply(&rhs);
        let mut acc = Acc::new();
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc.add_scaled(&self.basis[a], c);
            }
        }
        let mut back = acc;
        for (k, c) in v {
            back.add(*k, &-c);
        }
        back.finish().is_empty().then_some(x)
    }
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vec<CycNum>], order: u32) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), order).rank()
}

/// Dimension of `{M : MG = GM for all G}` for square matrices of one size.
pub fn commutant_dim(mats: &[Matrix]) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let n = first.rows();
    let order = first.order();
    let mut rows = Vec::with_capacity(mats.len() * n * n);
    for g in mats {
        for i in 0..n {
            for j in 0..n {
                // (MG − GM)_{ij} = Σ_k M_{ik} G_{kj} − G_{ik} M_{kj}
                let mut row = vec![CycNum::zero(order); n * n];
                for k in 0..n {
                    let a = g.get(k, j);
                    if !a.is_zero() {
                        row[i * n + k] += a;
                    }
                    let b = g.get(i, k);
                    if !b.is_zero() {
                        row[k * n + j] -= b;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    n * n - rank_of(&rows, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(1, x)).collect()).collect(), 1)
    }

    #[test]
    fn rank_det_kernel() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.rank(), 2);
        assert!(a.det().is_zero());
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(CycNum::is_zero));
        let b = m(&[&[2, -1], &[-1, 2]]);
        assert_eq!(b.det(), CycNum::from_int(1, 3));
    }

    #[test]
    fn inverse_and_solve() {
        let b = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), Matrix::identity(3, 1));
        let x = b.solve(&[CycNum::from_int(1, 1), CycNum::zero(1), CycNum::zero(1)]).unwrap();
        assert_eq!(b.apply(&x), vec![CycNum::from_int(1, 1), CycNum::zero(1), CycNum::zero(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[CycNum::one(1), CycNum::zero(1)]).is_none());
    }

    #[test]
    fn cyclotomic_entries() {
        let z = CycNum::root_of_unity(3, 1);
        let a = Matrix::from_rows(vec![vec![z.clone(), CycNum::one(3)], vec![CycNum::one(3), z.pow(2).unwrap()]], 3);
        // det = ζ^3 - 1 = 0
        assert!(a.det().is_zero());
        assert_eq!(a.rank(), 1);
    }
}
