use rayon::prelude::*;

use super::morphism::LinearMap;
use super::table::{JacobiMode, JacobiReport, StructureTable};
use super::LieError;
use crate::cyclotomic::CycNum;
use crate::datum::InputDatum;
use crate::linalg::{Acc, SparseVec};

/// `𝔥 = 𝔱 ⊕ 𝔩` with basis `h_1..h_ℓ` (simple coroots) followed by
/// `X_{s(α)}` for the roots in lattice order.
pub struct GradedLieAlgebra {
    datum: InputDatum,
    table: StructureTable,
    labels: Vec<String>,
    wtilde: LinearMap,
}

/// Label of a root basis vector: `x+1,0,1` or `x-1,0,1`.
pub fn root_label(root: &[i64]) -> String {
    let sign = if root.iter().any(|&x| x < 0) { '-' } else { '+' };
    let coords: Vec<String> = root.iter().map(|x| x.abs().to_string()).collect();
    format!("x{sign}{}", coords.join(","))
}

impl GradedLieAlgebra {
    /// Builds the algebra after checking that the datum satisfies both properties.
    pub fn construct(datum: InputDatum) -> Result<Self, LieError> {
        let report = datum.validate();
        if !report.valid() {
            return Err(LieError::InvalidDatum(report));
        }
        Ok(Self::construct_unchecked(datum))
    }

    pub fn construct_unchecked(datum: InputDatum) -> Self {
        let l = datum.lattice().rank();
        let roots = datum.lattice().roots();
        let dim = l + roots.len();
        let order = datum.field_order();
        let pairs: Vec<(usize, usize, SparseVec)> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|i| {
                let datum = &datum;
                (i + 1..dim).filter_map(move |j| {
                    let v = bracket_formula(datum, i, j);
                    (!v.is_empty()).then_some((i, j, v))
                })
            })
            .collect();
        let mut table = StructureTable::new(dim, order);
        for (i, j, v) in pairs {
            table.set(i, j, v);
        }
        let mut labels: Vec<String> = (1..=l).map(|i| format!("h{i}")).collect();
        labels.extend(roots.iter().map(|r| root_label(r)));
        let wtilde = lift_w(&datum);
        GradedLieAlgebra { datum, table, labels, wtilde }
    }

    pub fn datum(&self) -> &InputDatum {
        &self.datum
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.datum.lattice().rank()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn field_order(&self) -> u32 {
        self.table.field_order()
    }

    pub fn d(&self) -> u64 {
        self.datum.d()
    }

    /// Basis index of `X_{s(α)}`.
    pub fn root_basis(&self, root: &[i64]) -> Option<usize> {
        self.datum.lattice().root_index(root).map(|k| self.rank() + k)
    }

    /// `α∨ = Σ a_k h_k`.
    pub fn coroot(&self, root: &[i64]) -> SparseVec {
        coroot_vec(root, self.field_order())
    }

    /// The lift `w̃`.
    pub fn wtilde(&self) -> &LinearMap {
        &self.wtilde
    }

    /// Re-evaluates the bracket formula in both orders on every basis pair.
    pub fn verify_antisymmetry(&self) -> Result<usize, (usize, usize)> {
        let n = self.dim();
        let bad = (0..n).into_par_iter().find_map_first(|i| {
            for j in i..n {
                let a = bracket_formula(&self.datum, i, j);
                let b = bracket_formula(&self.datum, j, i);
                let mut sum = Acc::new();
                sum.add_vec(&a);
                sum.add_vec(&b);
                if !sum.finish().is_empty() {
                    return Some((i, j));
                }
            }
            None
        });
        match bad {
            Some(p) => Err(p),
            None => Ok(n * (n + 1) / 2),
        }
    }

    /// `[h_i, X_{s(α)}] = (α_i, α) X_{s(α)}` for every coroot and root.
    pub fn verify_root_action(&self) -> bool {
        let l = self.rank();
        let lat = self.datum.lattice();
        lat.roots().iter().enumerate().all(|(k, r)| {
            (0..l).all(|i| {
                let expected = lat.inner(&lat.simple_root(i), r);
                let got = self.table.basis_bracket(i, l + k);
                if expected == 0 {
                    got.is_empty()
                } else {
                    got == vec![(l + k, CycNum::from_int(self.field_order(), expected))]
                }
            })
        })
    }

    /// Full Jacobi, or sampled Jacobi together with every triple meeting `𝔱`.
    pub fn verify_jacobi(&self, mode: JacobiMode) -> Vec<JacobiReport> {
        match mode {
            JacobiMode::Full => vec![self.table.verify_jacobi_full()],
            JacobiMode::Sampled { samples, seed } => vec![
                self.table.verify_jacobi_sampled(samples, seed),
                self.table.verify_jacobi_prefix(self.rank()),
            ],
        }
    }

    /// `w̃` preserves brackets on every basis pair.
    pub fn verify_wtilde_homomorphism(&self) -> Result<usize, (usize, usize)> {
        self.wtilde.is_homomorphism(&self.table, &self.table)
    }

    /// Replaces the structure table (negative controls).
    pub fn with_table(mut self, table: StructureTable) -> Self {
        self.table = table;
        self
    }
}

pub(crate) fn coroot_vec(root: &[i64], order: u32) -> SparseVec {
    root.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(k, &a)| (k, CycNum::from_int(order, a)))
        .collect()
}

/// The defining bracket on basis elements.
pub(crate) fn bracket_formula(datum: &InputDatum, i: usize, j: usize) -> SparseVec {
    let lat = datum.lattice();
    let l = lat.rank();
    let order = datum.field_order();
    let roots = lat.roots();
    match (i < l, j < l) {
        (true, true) => vec![],
        (true, false) => {
            let c = lat.inner(&lat.simple_root(i), &roots[j - l]);
            if c == 0 {
                vec![]
            } else {
                vec![(j, CycNum::from_int(order, c))]
            }
        }
        (false, true) => {
            let c = lat.inner(&lat.simple_root(j), &roots[i - l]);
            if c == 0 {
                vec![]
            } else {
                vec![(i, CycNum::from_int(order, -c))]
            }
        }
        (false, false) => {
            let a = &roots[i - l];
            let b = &roots[j - l];
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let is_zero = sum.iter().all(|&x| x == 0);
            let target = if is_zero { None } else { lat.root_index(&sum) };
            if !is_zero && target.is_none() {
                return vec![];
            }
            let phase = datum.zeta(datum.cocycle_exp(a, b) as i64);
            let coeff = &datum.eps(a, b) * &phase;
            match target {
                None => coroot_vec(a, order).into_iter().map(|(k, c)| (k, &c * &coeff)).collect(),
                Some(t) => vec![(l + t, coeff)],
            }
        }
    }
}

/// `w̃(h_i) = (wα_i)∨`, `w̃(X_{s(α)}) = X_{s(wα)}`.
fn lift_w(datum: &InputDatum) -> LinearMap {
    let lat = datum.lattice();
    let l = lat.rank();
    let order = datum.field_order();
    let w = datum.w();
    let mut cols: Vec<SparseVec> = (0..l).map(|i| coroot_vec(&w.apply(&lat.simple_root(i)), order)).collect();
    for r in lat.roots() {
        let t = lat.root_index(&w.apply(r)).expect("w permutes the roots");
        cols.push(vec![(l + t, CycNum::one(order))]);
    }
    LinearMap::new(cols, order)
}
