use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::heisenberg::HeisenbergRep;
use super::RepError;
use crate::central_ext::ExtElement;
use crate::cyclotomic::CycNum;
use crate::datum::InputDatum;
use crate::epsilon::EpsilonKind;
use crate::lie_algebra::{orbits, z_vector, GradedLieAlgebra};
use crate::linalg::{rank_of, Matrix, SparseVec};

/// `ρ̃(Z_{s(α)}) = ρ(0, πα)` on orbit representatives, over `Q(ζ_L)` with
/// `L = lcm` of the algebra and representation field orders.
pub struct ExtendedRep {
    order: u32,
    /// Smallest root index of each `w`-orbit.
    reps: Vec<usize>,
    /// Orbit position of every root.
    orbit_of: Vec<usize>,
    zs: Vec<SparseVec>,
    images: Vec<Matrix>,
    /// `ρ(0, π γ)` for every root `γ`.
    root_images: Vec<Matrix>,
}

fn embed_matrix(m: &Matrix, order: u32) -> Matrix {
    let mut out = Matrix::zeros(m.rows(), m.cols(), order);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_zero() {
                out.set(i, j, x.embed(order).expect("order divides the common field"));
            }
        }
    }
    out
}

fn lcm(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

pub fn extend_to_g(alg: &GradedLieAlgebra, rep: &HeisenbergRep) -> Result<ExtendedRep, RepError> {
    let datum = alg.datum();
    if datum.epsilon().kind() != EpsilonKind::EpsW {
        return Err(RepError::EpsilonNotEpsW);
    }
    let lat = datum.lattice();
    let roots = lat.roots();
    let w = datum.w();
    // π(w^j s(α)) = π(s(α)) along every orbit
    for r in roots {
        let c = datum.class_of(r);
        let mut cur = r.clone();
        for _ in 0..datum.d() {
            cur = w.apply(&cur);
            if datum.class_of(&cur) != c {
                return Err(RepError::OrbitNotConstant(r.clone()));
            }
        }
    }
    let order = lcm(alg.field_order(), rep.field_order());
    let orbs = orbits(alg);
    let mut orbit_of = vec![0; roots.len()];
    for (k, o) in orbs.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    let root_images: Vec<Matrix> = roots
        .par_iter()
        .map(|r| embed_matrix(&rep.matrix(&ExtElement { e: 0, cls: datum.class_of(r) }), order))
        .collect();
    let reps: Vec<usize> = orbs.iter().map(|o| o[0]).collect();
    let images = reps.iter().map(|&i| root_images[i].clone()).collect();
    let zs = reps.iter().map(|&i| z_vector(alg, &roots[i])).collect();
    Ok(ExtendedRep { order, reps, orbit_of, zs, images, root_images })
}

impl ExtendedRep {
    pub fn field_order(&self) -> u32 {
        self.order
    }

    pub fn num_generators(&self) -> usize {
        self.reps.len()
    }

    /// Root index of each orbit representative.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn generator_images(&self) -> &[Matrix] {
        &self.images
    }

    /// Coordinates of `v ∈ 𝔤` in the `Z`-basis, read at orbit representatives and
    /// confirmed by reconstruction.
    pub fn z_coordinates(&self, alg: &GradedLieAlgebra, v: &SparseVec) -> Option<Vec<CycNum>> {
        let rank = alg.rank();
        let coeff = |u: &SparseVec, k: usize| u.iter().find(|(i, _)| *i == k).map(|(_, c)| c.clone());
        let coords: Vec<CycNum> = self
            .reps
            .iter()
            .zip(&self.zs)
            .map(|(&r, z)| {
                let zc = coeff(z, rank + r).expect("Z_O meets its representative");
                coeff(v, rank + r).map_or(CycNum::zero(self.order), |c| c.checked_div(&zc).expect("nonzero"))
            })
            .collect();
        let mut acc = crate::linalg::Acc::new();
        for (c, z) in coords.iter().zip(&self.zs) {
            if !c.is_zero() {
                acc.add_scaled(z, c);
            }
        }
        (&acc.finish() == v).then_some(coords)
    }

    pub fn apply(&self, alg: &GradedLieAlgebra, v: &SparseVec) -> Option<Matrix> {
        let coords = self.z_coordinates(alg, v)?;
        let n = self.images[0].rows();
        let mut out = Matrix::zeros(n, n, self.order);
        for (c, m) in coords.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&m.scale(&c.embed(self.order).expect("common field")));
            }
        }
        Some(out)
    }

    /// Span dimension of `ρ̃(𝔤)` inside `End(V)`.
    pub fn image_rank(&self) -> usize {
        let vecs: Vec<Vec<CycNum>> = self.images.iter().map(|m| m.entries().to_vec()).collect();
        rank_of(&vecs, self.order)
    }

    pub fn image_commutant_dim(&self) -> usize {
        crate::linalg::commutant_dim(&self.images)
    }
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).sub(&b.mul(a))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RepHomReport {
    pub pairs_checked: usize,
    /// First pair of orbit representatives where `ρ̃` of the algebra bracket differs.
    pub bracket_route_failure: Option<(usize, usize)>,
    /// First pair where the expansion through `ρ(π(w^jα + β))` differs.
    pub expansion_route_failure: Option<(usize, usize)>,
}

impl RepHomReport {
    pub fn passed(&self) -> bool {
        self.bracket_route_failure.is_none() && self.expansion_route_failure.is_none()
    }
}

/// Checks `ρ̃([Z_α, Z_β]) = [ρ̃(Z_α), ρ̃(Z_β)]` on every pair of generators, once through
/// the structure table and once through
/// `Σ_{(w^jα, β) = −1} ε_w(w^jα, β) ζ^{c(w^jα, β)} ρ(0, π(w^jα + β))`.
pub fn verify_rep_homomorphism(alg: &GradedLieAlgebra, ext: &ExtendedRep) -> RepHomReport {
    let datum = alg.datum();
    let lat = datum.lattice();
    let roots = lat.roots();
    let w = datum.w();
    let m = ext.reps.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let lhs = commutator(&ext.images[a], &ext.images[b]);
            let bracket = alg.table().bracket(&ext.zs[a], &ext.zs[b]);
            let via_table = ext.apply(alg, &bracket);
            let ok_table = via_table.as_ref() == Some(&lhs);

            let n = lhs.rows();
            let mut sum = Matrix::zeros(n, n, ext.order);
            let beta = &roots[ext.reps[b]];
            let mut wa = roots[ext.reps[a]].clone();
            for _ in 0..datum.d() {
                if lat.inner(&wa, beta) == -1 {
                    let g: Vec<i64> = wa.iter().zip(beta).map(|(x, y)| x + y).collect();
                    let k = lat.root_index(&g).expect("γ + β is a root");
                    let coeff = &datum.eps(&wa, beta) * &datum.zeta(datum.cocycle_exp(&wa, beta) as i64);
                    sum = sum.add(&ext.root_images[k].scale(&coeff.embed(ext.order).expect("common field")));
                }
                wa = w.apply(&wa);
            }
            (ok_table, sum == lhs)
        })
        .collect();
    let first = |f: fn(&(bool, bool)) -> bool| {
        results.iter().zip(&pairs).find(|(r, _)| !f(r)).map(|(_, &(a, b))| (ext.reps[a], ext.reps[b]))
    };
    RepHomReport {
        pairs_checked: pairs.len(),
        bracket_route_failure: first(|r| r.0),
        expansion_route_failure: first(|r| r.1),
    }
}

/// `ρ̃(Z)` depends only on the orbit: the matrix attached to each root equals that
/// of its representative.
pub fn orbit_constancy(ext: &ExtendedRep) -> bool {
    ext.root_images.iter().enumerate().all(|(i, m)| m == &ext.images[ext.orbit_of[i]])
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PairingSumReport {
    pub pairs: usize,
    pub eligible: usize,
    pub failure: Option<(Vec<i64>, Vec<i64>)>,
}

impl PairingSumReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// For root pairs with every `(w^jα, β) ∈ {0, ±1}`, compares
/// `1 − ⟨β, α⟩_w` with `Σ_{(w^jα, β) = −1} ε_w(w^jα, β)`.
pub fn pairing_sum_check(datum: &InputDatum) -> Result<PairingSumReport, RepError> {
    if datum.epsilon().kind() != EpsilonKind::EpsW {
        return Err(RepError::EpsilonNotEpsW);
    }
    let lat = datum.lattice();
    let roots = lat.roots();
    let w = datum.w();
    let d = datum.d();
    let orbits: Vec<Vec<Vec<i64>>> = roots
        .iter()
        .map(|a| {
            let mut cur = a.clone();
            (0..d)
                .map(|_| {
                    let out = cur.clone();
                    cur = w.apply(&cur);
                    out
                })
                .collect()
        })
        .collect();
    let per_alpha: Vec<(usize, Option<(Vec<i64>, Vec<i64>)>)> = orbits
        .par_iter()
        .map(|orbit| {
            let alpha = &orbit[0];
            let mut eligible = 0;
            for beta in roots {
                let ips: Vec<i64> = orbit.iter().map(|x| lat.inner(x, beta)).collect();
                if ips.iter().any(|x| x.abs() > 1) {
                    continue;
                }
                eligible += 1;
                let lhs = &CycNum::one(datum.field_order())
                    - &datum.zeta(datum.pairings().pairing_w(beta, alpha) as i64);
                let mut rhs = CycNum::zero(datum.field_order());
                for (x, ip) in orbit.iter().zip(&ips) {
                    if *ip == -1 {
                        rhs += &datum.eps(x, beta);
                    }
                }
                if lhs != rhs {
                    return (eligible, Some((alpha.clone(), beta.clone())));
                }
            }
            (eligible, None)
        })
        .collect();
    Ok(PairingSumReport {
        pairs: roots.len() * roots.len(),
        eligible: per_alpha.iter().map(|r| r.0).sum(),
        failure: per_alpha.into_iter().find_map(|r| r.1),
    })
}

/// `Σ_{j<d} P(ζ^j) = d Σ_{i ≡ 0 (d)} c_i` on random integer polynomials.
pub fn root_sum_check(d: u32, trials: usize, seed: u64) -> Result<usize, Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let deg = rng.gen_range(0..3 * d as usize + 2);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-50..=50)).collect();
        let mut lhs = CycNum::zero(d);
        for j in 0..d {
            let z = CycNum::root_of_unity(d, j as i64);
            let mut v = CycNum::zero(d);
            for c in coeffs.iter().rev() {
                v = &(&v * &z) + &CycNum::from_int(d, *c);
            }
            lhs += &v;
        }
        let rhs: i64 = coeffs.iter().step_by(d as usize).sum::<i64>() * d as i64;
        if lhs.as_integer() != Some(BigInt::from(rhs)) {
            return Err(coeffs);
        }
    }
    Ok(trials)
}
