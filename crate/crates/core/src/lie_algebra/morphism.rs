use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use super::graded::{coroot_vec, GradedLieAlgebra};
use super::table::StructureTable;
use crate::cyclotomic::CycNum;
use crate::intmat::IntMat;
use crate::lattice::{Class, LatticeAut, RootLattice};
use crate::linalg::{Acc, Matrix, SparseVec};

/// A linear map given by the sparse images of basis vectors.
#[derive(Clone, Debug)]
pub struct LinearMap {
    cols: Vec<SparseVec>,
    order: u32,
}

impl LinearMap {
    pub fn new(cols: Vec<SparseVec>, order: u32) -> Self {
        LinearMap { cols, order }
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        LinearMap::new((0..dim).map(|i| vec![(i, CycNum::one(order))]).collect(), order)
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, i: usize) -> &SparseVec {
        &self.cols[i]
    }

    pub fn apply(&self, v: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Acc::new();
        for (i, c) in v {
            acc.add_scaled(&self.cols[*i], c);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(other.cols.iter().map(|c| self.apply(c)).collect(), self.order)
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(i, c)| c.len() == 1 && c[0].0 == i && c[0].1.is_one())
    }

    /// Multiplicative order, if at most `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_identity() {
                return Some(k);
            }
            p = self.compose(&p);
        }
        None
    }

    /// `tr(self^k)` for `k = 0..n`.
    pub fn power_traces(&self, n: usize) -> Vec<CycNum> {
        let mut out = Vec::with_capacity(n);
        let mut p = LinearMap::identity(self.dim(), self.order);
        for _ in 0..n {
            let mut t = CycNum::zero(self.order);
            for (i, c) in p.cols.iter().enumerate() {
                if let Some((_, x)) = c.iter().find(|(k, _)| *k == i) {
                    t += x;
                }
            }
            out.push(t);
            p = self.compose(&p);
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n, self.order);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    /// `f([b_i, b_j]) = [f b_i, f b_j]` on all basis pairs; returns the pair count
    /// or the first failing pair.
    pub fn is_homomorphism(&self, src: &StructureTable, dst: &StructureTable) -> Result<usize, (usize, usize)> {
        let n = src.dim();
        let bad = (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                let lhs = self.apply(&src.basis_bracket(i, j));
                let rhs = dst.bracket(&self.cols[i], &self.cols[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
            None
        });
        match bad {
            Some(p) => Err(p),
            None => Ok(n * n.saturating_sub(1) / 2),
        }
    }

    /// `self ∘ other = other ∘ self`.
    pub fn commutes_with(&self, other: &LinearMap) -> bool {
        (0..self.dim()).all(|i| self.apply(&other.cols[i]) == other.apply(&self.cols[i]))
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols
    }
}

/// `ι(λ)`: `X_{s(α)} ↦ ⟨λ, πα⟩ X_{s(α)}`, identity on `𝔱`.
pub fn inner_automorphism(alg: &GradedLieAlgebra, lambda: &[i64]) -> LinearMap {
    let datum = alg.datum();
    let l = alg.rank();
    let order = alg.field_order();
    let mut cols: Vec<SparseVec> = (0..l).map(|i| vec![(i, CycNum::one(order))]).collect();
    for (k, r) in datum.lattice().roots().iter().enumerate() {
        let e = datum.class_commutator(lambda, &datum.class_of(r));
        cols.push(vec![(l + k, datum.zeta(e as i64))]);
    }
    LinearMap::new(cols, order)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("ψ is not an isometry between the lattices")]
    NotIsometry,
    #[error("ψ w ≠ w' ψ")]
    NotEquivariant,
    #[error("ε'(ψα, ψβ) ≠ ε(α, β) at {0:?}, {1:?}")]
    EpsilonMismatch(Vec<i64>, Vec<i64>),
    #[error("the extension map is not a homomorphism at classes {0:?}, {1:?}")]
    NotHomomorphism(Class, Class),
    #[error("the data live over different fields")]
    FieldMismatch,
}

/// `φ(ζ^e, a) = (ζ^{e + f(a)}, ψ̄a)`, with `f` indexed by class index.
pub struct DatumIsomorphism {
    pub psi: IntMat,
    pub f: Vec<u64>,
}

impl DatumIsomorphism {
    pub fn with_trivial_phase(psi: IntMat, src: &GradedLieAlgebra) -> Self {
        DatumIsomorphism { psi, f: vec![0; src.datum().group().order()] }
    }
}

/// The Lie isomorphism `α∨ ↦ ψ(α)∨`, `X_{s(α)} ↦ ζ^{f(πα)} X'_{s(ψα)}` after
/// checking that `(ψ, φ)` is an isomorphism of input data.
pub fn apply_datum_isomorphism(
    src: &GradedLieAlgebra,
    dst: &GradedLieAlgebra,
    iso: &DatumIsomorphism,
) -> Result<LinearMap, IsoError> {
    let (a, b) = (src.datum(), dst.datum());
    if a.field_order() != b.field_order() {
        return Err(IsoError::FieldMismatch);
    }
    let psi = &iso.psi;
    let g = a.lattice().gram();
    if psi.rows() != g.rows() || &(&psi.transpose() * b.lattice().gram()) * psi != *g {
        return Err(IsoError::NotIsometry);
    }
    if psi * a.w().matrix() != b.w().matrix() * psi {
        return Err(IsoError::NotEquivariant);
    }
    let roots = a.lattice().roots();
    let images: Vec<Vec<i64>> = roots.iter().map(|r| psi.apply(r)).collect();
    let bad_eps = (0..roots.len()).into_par_iter().find_map_first(|i| {
        for j in 0..roots.len() {
            if b.eps(&images[i], &images[j]) != a.eps(&roots[i], &roots[j]) {
                return Some((roots[i].clone(), roots[j].clone()));
            }
        }
        None
    });
    if let Some((x, y)) = bad_eps {
        return Err(IsoError::EpsilonMismatch(x, y));
    }
    let ga = a.group();
    let gb = b.group();
    let d = a.d() as i64;
    let psibar = |c: &[i64]| gb.project(&psi.apply(&ga.lift(c)));
    let f = |c: &[i64]| iso.f[ga.index_of(c)] as i64;
    for x in ga.classes() {
        for y in ga.classes() {
            let lhs = a.extension().cocycle(&x, &y) as i64 + f(&ga.add(&x, &y));
            let rhs = f(&x) + f(&y) + b.extension().cocycle(&psibar(&x), &psibar(&y)) as i64;
            if (lhs - rhs).rem_euclid(d) != 0 {
                return Err(IsoError::NotHomomorphism(x, y));
            }
        }
    }
    let l = src.rank();
    let order = a.field_order();
    let lat = a.lattice();
    let mut cols: Vec<SparseVec> = (0..l).map(|i| coroot_vec(&psi.apply(&lat.simple_root(i)), order)).collect();
    for (r, img) in roots.iter().zip(&images) {
        let t = dst.root_basis(img).expect("isometries map roots to roots");
        cols.push(vec![(t, a.zeta(f(&a.class_of(r))))]);
    }
    Ok(LinearMap::new(cols, order))
}

/// Some `g ∈ W` with `g w g⁻¹ = w'`, by breadth-first search over the Weyl group.
pub fn find_conjugator(lattice: &RootLattice, w: &LatticeAut, w2: &LatticeAut, limit: usize) -> Option<IntMat> {
    let n = lattice.rank();
    let refl: Vec<IntMat> = (1..=n).map(|i| lattice.reflection(i).expect("valid index")).collect();
    let start = IntMat::identity(n);
    let mut seen: HashSet<IntMat> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        if &g * w.matrix() == w2.matrix() * &g {
            return Some(g);
        }
        for s in &refl {
            let h = s * &g;
            if seen.len() < limit && seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    None
}
