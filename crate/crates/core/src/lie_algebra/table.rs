use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::linalg::{dense_to_sparse, sparse_scale, Acc, Coordinates, Matrix, SparseVec};

/// Structure constants `[b_i, b_j] = Σ c_k b_k`, stored for `i < j`.
#[derive(Clone)]
pub struct StructureTable {
    dim: usize,
    field_order: u32,
    entries: HashMap<(u32, u32), SparseVec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum JacobiMode {
    Full,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct JacobiReport {
    pub mode: JacobiMode,
    pub triples_checked: usize,
    pub violation: Option<[usize; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl StructureTable {
    pub fn new(dim: usize, field_order: u32) -> Self {
        StructureTable { dim, field_order, entries: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    /// Sets `[b_i, b_j] = v` (and hence `[b_j, b_i] = −v`).
    pub fn set(&mut self, i: usize, j: usize, v: SparseVec) {
        assert_ne!(i, j, "[b, b] = 0");
        let (key, v) = if i < j { ((i as u32, j as u32), v) } else { ((j as u32, i as u32), sparse_scale(&v, &CycNum::from_int(self.field_order, -1))) };
        if v.is_empty() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    /// Stored pairs `(i, j)` with `i < j`, sorted.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.entries.keys().map(|&(i, j)| (i as usize, j as usize)).collect();
        v.sort_unstable();
        v
    }

    pub fn num_nonzero(&self) -> usize {
        self.entries.len()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => vec![],
            Less => self.entries.get(&(i as u32, j as u32)).cloned().unwrap_or_default(),
            Greater => self
                .entries
                .get(&(j as u32, i as u32))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    fn add_basis_bracket(&self, acc: &mut Acc, i: usize, j: usize, s: &CycNum) {
        if i == j {
            return;
        }
        let (key, neg) = if i < j { ((i as u32, j as u32), false) } else { ((j as u32, i as u32), true) };
        if let Some(v) = self.entries.get(&key) {
            let s = if neg { -s } else { s.clone() };
            acc.add_scaled(v, &s);
        }
    }

    /// `[b_i, y]`.
    pub fn bracket_basis_vec(&self, i: usize, y: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Acc::new();
        for (j, c) in y {
            self.add_basis_bracket(&mut acc, i, *j, c);
        }
        acc.finish()
    }

    pub fn bracket(&self, x: &[(usize, CycNum)], y: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Acc::new();
        for (i, a) in x {
            for (j, b) in y {
                self.add_basis_bracket(&mut acc, *i, *j, &(a * b));
            }
        }
        acc.finish()
    }

    /// `[b_i, [b_j, b_k]] + [b_j, [b_k, b_i]] + [b_k, [b_i, b_j]] = 0`.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc = Acc::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, coeff) in self.basis_bracket(b, c) {
                self.add_basis_bracket(&mut acc, a, l, &coeff);
            }
        }
        acc.finish().is_empty()
    }

    /// Jacobi over all unordered basis triples.
    pub fn verify_jacobi_full(&self) -> JacobiReport {
        let n = self.dim;
        let violation = (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobi_holds(i, j, k) {
                        return Some([i, j, k]);
                    }
                }
            }
            None
        });
        let triples = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        JacobiReport { mode: JacobiMode::Full, triples_checked: triples, violation }
    }

    /// Jacobi on `samples` uniformly random triples of distinct basis elements.
    pub fn verify_jacobi_sampled(&self, samples: usize, seed: u64) -> JacobiReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim;
        let triples: Vec<[u32; 3]> = (0..samples)
            .map(|_| loop {
                let t = [rng.gen_range(0..n) as u32, rng.gen_range(0..n) as u32, rng.gen_range(0..n) as u32];
                if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                    break t;
                }
            })
            .collect();
        let violation = triples
            .par_iter()
            .find_map_first(|t| {
                let [i, j, k] = t.map(|x| x as usize);
                (!self.jacobi_holds(i, j, k)).then_some([i, j, k])
            });
        JacobiReport { mode: JacobiMode::Sampled { samples, seed }, triples_checked: samples, violation }
    }

    /// Jacobi on every unordered triple meeting the first `rank` basis elements.
    pub fn verify_jacobi_prefix(&self, rank: usize) -> JacobiReport {
        let n = self.dim;
        let violation = (0..rank.min(n)).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobi_holds(i, j, k) {
                        return Some([i, j, k]);
                    }
                }
            }
            None
        });
        let r = rank.min(n);
        let triples = (0..r).map(|i| (n - i - 1) * (n - i - 2) / 2).sum();
        JacobiReport { mode: JacobiMode::Full, triples_checked: triples, violation }
    }

    /// Columns of `ad b_i`.
    pub fn adjoint(&self, i: usize) -> Vec<SparseVec> {
        (0..self.dim).map(|k| self.basis_bracket(i, k)).collect()
    }

    /// `K(b_i, b_j) = tr(ad b_i ∘ ad b_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim;
        let ads: Vec<Vec<SparseVec>> = (0..n).into_par_iter().map(|i| self.adjoint(i)).collect();
        let rows: Vec<Vec<CycNum>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut t = CycNum::zero(self.field_order);
                        for (k, col) in ads[j].iter().enumerate() {
                            for (l, c) in col {
                                if let Some((_, x)) = ads[i][*l].iter().find(|(m, _)| *m == k) {
                                    t += &(x * c);
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, self.field_order)
    }

    /// Returns a copy with one structure constant negated (for negative controls).
    pub fn corrupted(&self, i: usize, j: usize) -> Self {
        let mut t = self.clone();
        let v = self.basis_bracket(i, j);
        t.set(i, j, sparse_scale(&v, &CycNum::from_int(self.field_order, -1)));
        t
    }

    /// Structure constants of the subalgebra spanned by the independent vectors
    /// `basis`; `None` if the span is not closed under the bracket.
    pub fn restrict(&self, basis: &[Vec<CycNum>]) -> Option<StructureTable> {
        let coords = Coordinates::new(basis, self.dim, self.field_order)?;
        let sparse: Vec<SparseVec> = basis.iter().map(|v| dense_to_sparse(v)).collect();
        let m = basis.len();
        let mut out = StructureTable::new(m, self.field_order);
        for a in 0..m {
            for b in a + 1..m {
                let br = self.bracket(&sparse[a], &sparse[b]);
                if !br.is_empty() {
                    out.set(a, b, dense_to_sparse(&coords.solve(&br)?));
                }
            }
        }
        Some(out)
    }

    /// Whether all structure constants are rational.
    pub fn is_rational(&self) -> bool {
        self.entries.values().flatten().all(|(_, c)| c.as_rational().is_some())
    }

    /// Whether all structure constants are rational integers.
    pub fn is_integral(&self) -> bool {
        self.entries.values().flatten().all(|(_, c)| c.as_integer().is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// sl2 with basis h, e, f.
    fn sl2() -> StructureTable {
        let mut t = StructureTable::new(3, 1);
        let i = |v| CycNum::from_int(1, v);
        t.set(0, 1, vec![(1, i(2))]);
        t.set(0, 2, vec![(2, i(-2))]);
        t.set(1, 2, vec![(0, i(1))]);
        t
    }

    #[test]
    fn sl2_jacobi_and_killing() {
        let t = sl2();
        assert!(t.verify_jacobi_full().passed());
        let k = t.killing_form();
        assert_eq!(k.get(0, 0), &CycNum::from_int(1, 8));
        assert_eq!(k.get(1, 2), &CycNum::from_int(1, 4));
        assert!(!k.det().is_zero());
    }

    #[test]
    fn antisymmetric_storage() {
        let t = sl2();
        assert_eq!(t.basis_bracket(2, 1), vec![(0, CycNum::from_int(1, -1))]);
    }

    #[test]
    fn corrupted_table_fails_jacobi() {
        let mut t = StructureTable::new(4, 1);
        let i = |v| CycNum::from_int(1, v);
        // gl2-like: h, e, f plus a central element; break [h, e]
        t.set(0, 1, vec![(1, i(2))]);
        t.set(0, 2, vec![(2, i(-2))]);
        t.set(1, 2, vec![(0, i(1))]);
        assert!(t.verify_jacobi_full().passed());
        let bad = t.corrupted(0, 1);
        assert_eq!(bad.verify_jacobi_full().violation, Some([0, 1, 2]));
    }
}
