use num_rational::BigRational;
use rayon::prelude::*;

use super::graded::GradedLieAlgebra;
use super::LieError;
use crate::cyclotomic::CycNum;
use crate::epsilon::EpsilonKind;
use crate::linalg::{dense_to_sparse, rank_of, sparse_to_dense, Acc, Matrix, SparseVec};

/// `𝔥 = ⊕_j 𝔥_j`, `𝔥_j` the `ζ^j`-eigenspace of `w̃`.
pub struct Grading {
    pub d: u64,
    pub bases: Vec<Vec<Vec<CycNum>>>,
}

impl Grading {
    /// Eigenspaces as exact kernels of `w̃ − ζ^j`.
    pub fn compute(alg: &GradedLieAlgebra) -> Self {
        let d = alg.d();
        let w = alg.wtilde().to_matrix();
        let n = alg.dim();
        let order = alg.field_order();
        let bases = (0..d)
            .into_par_iter()
            .map(|j| {
                let shift = Matrix::identity(n, order).scale(&CycNum::root_of_unity(order, j as i64));
                w.sub(&shift).kernel()
            })
            .collect();
        Grading { d, bases }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.dims().iter().sum()
    }

    /// `𝔤 = 𝔥_0`.
    pub fn fixed(&self) -> &[Vec<CycNum>] {
        &self.bases[0]
    }

    pub fn sparse_basis(&self, j: usize) -> Vec<SparseVec> {
        self.bases[j].iter().map(|v| dense_to_sparse(v)).collect()
    }
}

/// `dim 𝔥_j = (1/d) Σ_i ζ^{−ij} tr(w̃^i)`, independent of any kernel computation.
pub fn projector_dims(alg: &GradedLieAlgebra) -> Vec<i64> {
    let d = alg.d() as usize;
    let order = alg.field_order();
    let traces = alg.wtilde().power_traces(d);
    let inv_d = CycNum::from_rational(order, &BigRational::new(1.into(), (d as i64).into()));
    (0..d)
        .map(|j| {
            let mut s = CycNum::zero(order);
            for (i, t) in traces.iter().enumerate() {
                s += &(t * &CycNum::root_of_unity(order, -((i * j) as i64)));
            }
            let v = &s * &inv_d;
            let z = v.as_integer().expect("projector traces are integers");
            i64::try_from(z).expect("small dimension")
        })
        .collect()
}

/// Orbits of `w` on root indices, each listed from its smallest index.
pub fn orbits(alg: &GradedLieAlgebra) -> Vec<Vec<usize>> {
    let lat = alg.datum().lattice();
    let w = alg.datum().w();
    let n = lat.roots().len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cur = w.apply(&lat.roots()[start]);
        loop {
            let k = lat.root_index(&cur).expect("w permutes roots");
            if k == start {
                break;
            }
            seen[k] = true;
            orbit.push(k);
            cur = w.apply(&cur);
        }
        out.push(orbit);
    }
    out
}

/// `Z_{s(α)} = Σ_{j<d} X_{s(w^j α)}`.
pub fn z_vector(alg: &GradedLieAlgebra, root: &[i64]) -> SparseVec {
    let w = alg.datum().w();
    let order = alg.field_order();
    let mut acc = Acc::new();
    let mut cur = root.to_vec();
    for _ in 0..alg.d() {
        acc.add(alg.root_basis(&cur).expect("root"), &CycNum::one(order));
        cur = w.apply(&cur);
    }
    acc.finish()
}

impl Grading {
    /// The `Z`-vectors of orbit representatives are fixed by `w̃` and span `𝔥_0`.
    pub fn z_span_is_fixed(&self, alg: &GradedLieAlgebra) -> bool {
        let lat = alg.datum().lattice();
        let zs: Vec<SparseVec> = orbits(alg).iter().map(|o| z_vector(alg, &lat.roots()[o[0]])).collect();
        if zs.iter().any(|z| &alg.wtilde().apply(z) != z) {
            return false;
        }
        let dense: Vec<Vec<CycNum>> = zs.iter().map(|z| sparse_to_dense(z, alg.dim(), alg.field_order())).collect();
        rank_of(&dense, alg.field_order()) == self.fixed().len() && zs.len() == self.fixed().len()
    }
}

/// `[𝔥_i, 𝔥_j] ⊆ 𝔥_{i+j}` on the first `per_piece` basis vectors of each piece.
pub fn graded_bracket_check(alg: &GradedLieAlgebra, grading: &Grading, per_piece: usize) -> Result<usize, (usize, usize)> {
    let d = grading.d as usize;
    let order = alg.field_order();
    let pieces: Vec<Vec<SparseVec>> =
        (0..d).map(|j| grading.sparse_basis(j).into_iter().take(per_piece).collect()).collect();
    let mut count = 0;
    for i in 0..d {
        for j in 0..d {
            let zeta = CycNum::root_of_unity(order, ((i + j) % d) as i64);
            for x in &pieces[i] {
                for y in &pieces[j] {
                    let b = alg.table().bracket(x, y);
                    let wb = alg.wtilde().apply(&b);
                    let expected: SparseVec = b.iter().map(|(k, c)| (*k, c * &zeta)).collect();
                    if wb != expected {
                        return Err((i, j));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `K(𝔥_i, 𝔥_j) = 0` unless `i + j ≡ 0 (mod d)`.
pub fn killing_orthogonality(grading: &Grading, killing: &Matrix) -> Result<usize, (usize, usize)> {
    let d = grading.d as usize;
    let kt = killing.transpose();
    let mut count = 0;
    for i in 0..d {
        for j in 0..d {
            if (i + j) % d == 0 {
                continue;
            }
            for x in &grading.bases[i] {
                let kx = kt.apply(x);
                for y in &grading.bases[j] {
                    let mut s = CycNum::zero(killing.order());
                    for (a, b) in kx.iter().zip(y) {
                        if !a.is_zero() && !b.is_zero() {
                            s += &(a * b);
                        }
                    }
                    if !s.is_zero() {
                        return Err((i, j));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Compares `[Z_{s(α)}, Z_{s(β)}]` from the structure table with
/// `Σ_{(w^jα, β) = −1} ε_w(w^jα, β) ζ^{c(w^jα, β)} Z_{s(w^jα + β)}`
/// for every orbit representative `α` and every root `β`.
pub fn z_bracket_check(alg: &GradedLieAlgebra) -> Result<Result<usize, (Vec<i64>, Vec<i64>)>, LieError> {
    let datum = alg.datum();
    if datum.epsilon().kind() != EpsilonKind::EpsW {
        return Err(LieError::EpsilonNotEpsW);
    }
    let lat = datum.lattice();
    let roots = lat.roots();
    let w = datum.w();
    let reps: Vec<usize> = orbits(alg).iter().map(|o| o[0]).collect();
    let zs: Vec<SparseVec> = roots.iter().map(|r| z_vector(alg, r)).collect();
    let bad = reps.par_iter().find_map_first(|&ai| {
        let alpha = &roots[ai];
        for (bi, beta) in roots.iter().enumerate() {
            let lhs = alg.table().bracket(&zs[ai], &zs[bi]);
            let mut rhs = Acc::new();
            let mut wa = alpha.clone();
            for _ in 0..alg.d() {
                if lat.inner(&wa, beta) == -1 {
                    let sum: Vec<i64> = wa.iter().zip(beta).map(|(x, y)| x + y).collect();
                    let k = lat.root_index(&sum).expect("(γ, β) = −1 makes γ + β a root");
                    let coeff = &datum.eps(&wa, beta) * &datum.zeta(datum.cocycle_exp(&wa, beta) as i64);
                    rhs.add_scaled(&zs[k], &coeff);
                }
                wa = w.apply(&wa);
            }
            if lhs != rhs.finish() {
                return Some((alpha.clone(), beta.clone()));
            }
        }
        None
    });
    Ok(match bad {
        Some(p) => Err(p),
        None => Ok(reps.len() * roots.len()),
    })
}
