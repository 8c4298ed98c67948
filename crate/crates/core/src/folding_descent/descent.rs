use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use super::DescentError;
use crate::cyclotomic::{euler_phi, CycNum};
use crate::lattice::LatticeAut;
use crate::lie_algebra::{GradedLieAlgebra, LinearMap, StructureTable};
use crate::linalg::{dense_to_sparse, sparse_to_dense, Acc, Coordinates, Matrix, SparseVec};

/// A cyclic group `Γ = ⟨σ⟩` acting on `(Λ, H)` and on `ζ` by `ζ ↦ ζ^s`.
pub struct GaloisAction {
    pub sigma: LatticeAut,
    pub s: i64,
    /// Phase `f` of the action on `H`: `σ(ζ^e, a) = (ζ^{se + f(a)}, σ̄a)`, by class index.
    pub f: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DescentConditions {
    /// `σ w σ⁻¹ = w^s`.
    pub a1: bool,
    /// `s` is a unit modulo the field order.
    pub a2: bool,
    /// `σ` descends to `Λ_w` and defines a homomorphism of `H`.
    pub a3: bool,
    /// `σ(⟨α, β⟩) = ⟨σα, σβ⟩`.
    pub pairing: bool,
    /// `σ(ε(α, β)) = ε(σα, σβ)`.
    pub epsilon: bool,
}

impl DescentConditions {
    pub fn all(&self) -> bool {
        self.a1 && self.a2 && self.a3 && self.pairing && self.epsilon
    }
}

/// A `k_0`-form: basis vectors in `𝔥` and structure constants over `k_0`.
pub struct Form {
    /// Order of the cyclotomic field `k_0` (1 for `Q`).
    pub base_order: u32,
    pub basis: Vec<Vec<CycNum>>,
    pub table: StructureTable,
}

pub fn check_conditions(alg: &GradedLieAlgebra, action: &GaloisAction) -> DescentConditions {
    let datum = alg.datum();
    let n = alg.field_order() as i64;
    let d = datum.d() as i64;
    let sig = action.sigma.matrix();
    let w = datum.w();
    let a1 = sig * w.matrix() == &w.power(action.s) * sig;
    let a2 = action.s.gcd(&n) == 1;
    let g = datum.group();
    let sbar = |c: &[i64]| g.project(&sig.apply(&g.lift(c)));
    let l = datum.lattice().rank();
    let descends = (0..l).all(|i| {
        let mut e = vec![0; l];
        e[i] = 1;
        let v: Vec<i64> = e.iter().zip(w.apply(&e)).map(|(a, b)| a - b).collect();
        g.is_trivial(&sig.apply(&v))
    });
    let f = |c: &[i64]| action.f[g.index_of(c)] as i64;
    let ext = datum.extension();
    let hom = descends
        && action.f.len() == g.order()
        && g.classes().all(|x| {
            g.classes().all(|y| {
                let lhs = ext.cocycle(&sbar(&x), &sbar(&y)) as i64 + f(&g.add(&x, &y));
                let rhs = action.s * ext.cocycle(&x, &y) as i64 + f(&x) + f(&y);
                (lhs - rhs).rem_euclid(d) == 0
            })
        });
    let roots = datum.lattice().roots();
    let images: Vec<Vec<i64>> = roots.iter().map(|r| sig.apply(r)).collect();
    let pairing = (0..roots.len()).all(|i| {
        (0..roots.len()).all(|j| {
            let a = datum.class_of(&roots[i]);
            let b = datum.class_of(&roots[j]);
            let lhs = action.s * datum.class_commutator(&a, &b) as i64;
            let rhs = datum.class_commutator(&datum.class_of(&images[i]), &datum.class_of(&images[j])) as i64;
            (lhs - rhs).rem_euclid(d) == 0
        })
    });
    let epsilon = a2
        && (0..roots.len()).all(|i| {
            (0..roots.len()).all(|j| {
                datum.eps(&roots[i], &roots[j]).galois(action.s).expect("unit exponent")
                    == datum.eps(&images[i], &images[j])
            })
        });
    DescentConditions { a1, a2, a3: hom, pairing, epsilon }
}

/// `a_σ(Σ x_k b_k) = Σ σ(x_k) a_σ(b_k)`.
pub struct SemilinearMap {
    cols: LinearMap,
    s: i64,
}

impl SemilinearMap {
    pub fn new(alg: &GradedLieAlgebra, action: &GaloisAction) -> Self {
        let datum = alg.datum();
        let lat = datum.lattice();
        let l = lat.rank();
        let order = alg.field_order();
        let sig = action.sigma.matrix();
        let g = datum.group();
        let mut cols: Vec<SparseVec> = (0..l)
            .map(|i| {
                sig.apply(&lat.simple_root(i))
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(k, &a)| (k, CycNum::from_int(order, a)))
                    .collect()
            })
            .collect();
        for r in lat.roots() {
            let t = alg.root_basis(&sig.apply(r)).expect("σ permutes roots");
            let phase = action.f[g.index_of(&datum.class_of(r))] as i64;
            cols.push(vec![(t, datum.zeta(phase))]);
        }
        SemilinearMap { cols: LinearMap::new(cols, order), s: action.s }
    }

    pub fn apply(&self, v: &[(usize, CycNum)]) -> SparseVec {
        let mut acc = Acc::new();
        for (k, x) in v {
            let sx = x.galois(self.s).expect("unit exponent");
            acc.add_scaled(self.cols.column(*k), &sx);
        }
        acc.finish()
    }
}

fn rational_coords(x: &CycNum, order: u32) -> Vec<BigRational> {
    let e = x.embed(order).expect("element of the ambient field");
    e.coeffs()
}

/// The `Q`-form `𝔥^Γ` for `Γ` the full Galois group of `Q(ζ_n)`, or `𝔥` itself
/// for trivial `Γ`.
pub fn galois_descend(alg: &GradedLieAlgebra, action: &GaloisAction) -> Result<Form, DescentError> {
    let cond = check_conditions(alg, action);
    if !cond.all() {
        return Err(DescentError::ActionConditionsViolated(cond));
    }
    let n = alg.field_order();
    let dim = alg.dim();
    let deg = euler_phi(n);
    let trivial = action.s.rem_euclid(n as i64) == 1
        && action.sigma.matrix() == &crate::intmat::IntMat::identity(alg.rank())
        && action.f.iter().all(|&x| x == 0);
    if trivial {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|k| if i == k { CycNum::one(n) } else { CycNum::zero(n) }).collect())
            .collect();
        return Ok(Form { base_order: n, basis, table: alg.table().clone() });
    }
    let gamma = (1..=deg as i64)
        .find(|&k| pow_mod(action.s, k, n as i64) == 1)
        .unwrap_or(0);
    if gamma as usize != deg {
        return Err(DescentError::NotFullGaloisGroup { order: gamma as usize, degree: deg });
    }
    let a = SemilinearMap::new(alg, action);
    // matrix of a_σ − 1 on Q-coordinates (basis vector k, power p) ↦ index k·deg + p
    let big = dim * deg;
    let mut m = Matrix::zeros(big, big, 1);
    for k in 0..dim {
        for p in 0..deg {
            let img = a.apply(&[(k, CycNum::root_of_unity(n, p as i64))]);
            let col = k * deg + p;
            for (t, c) in img {
                for (q, x) in rational_coords(&c, n).into_iter().enumerate() {
                    m.set(t * deg + q, col, CycNum::from_rational(1, &x));
                }
            }
            let cur = m.get(col, col).clone();
            m.set(col, col, &cur - &CycNum::one(1));
        }
    }
    let kernel = m.kernel();
    let basis: Vec<Vec<CycNum>> = kernel
        .iter()
        .map(|v| {
            (0..dim)
                .map(|k| {
                    let coeffs: Vec<BigRational> =
                        (0..deg).map(|p| v[k * deg + p].as_rational().expect("rational kernel")).collect();
                    CycNum::from_coeffs(n, &coeffs).expect("degree-length coefficients")
                })
                .collect()
        })
        .collect();
    if basis.len() != dim {
        return Err(DescentError::WrongDimension { expected: dim, found: basis.len() });
    }
    let table = rational_table(alg.table(), &basis)?;
    Ok(Form { base_order: 1, basis, table })
}

fn pow_mod(b: i64, e: i64, m: i64) -> i64 {
    let mut r = 1i64;
    for _ in 0..e {
        r = (r * b).rem_euclid(m);
    }
    r.rem_euclid(m)
}

/// Structure constants of `span(basis)`, required to be rational.
pub fn rational_table(table: &StructureTable, basis: &[Vec<CycNum>]) -> Result<StructureTable, DescentError> {
    let sub = table.restrict(basis).ok_or(DescentError::NotClosed)?;
    if !sub.is_rational() {
        return Err(DescentError::NotRational);
    }
    let mut out = StructureTable::new(sub.dim(), 1);
    for (i, j) in sub.nonzero_pairs() {
        let v = sub
            .basis_bracket(i, j)
            .into_iter()
            .map(|(k, c)| (k, CycNum::from_rational(1, &c.as_rational().expect("rational"))))
            .collect();
        out.set(i, j, v);
    }
    Ok(out)
}

/// `a_σ ∘ φ = φ ∘ a_σ` on basis vectors, for `φ` with rational matrix.
pub fn is_equivariant(alg: &GradedLieAlgebra, action: &GaloisAction, phi: &LinearMap) -> bool {
    let a = SemilinearMap::new(alg, action);
    (0..alg.dim()).all(|k| {
        let e = vec![(k, CycNum::one(alg.field_order()))];
        a.apply(&phi.apply(&e)) == phi.apply(&a.apply(&e))
    })
}

/// The `φ`-fixed part of a form, with its structure constants.
pub fn fixed_part(alg: &GradedLieAlgebra, form: &Form, phi: &LinearMap) -> Result<Form, DescentError> {
    let order = alg.field_order();
    let coords = Coordinates::new(&form.basis, alg.dim(), order).ok_or(DescentError::NotClosed)?;
    let m = form.basis.len();
    let mut y = Matrix::zeros(m, m, order);
    for (a, u) in form.basis.iter().enumerate() {
        let img = phi.apply(&dense_to_sparse(u));
        let x = coords.solve(&img).ok_or(DescentError::NotClosed)?;
        for (c, v) in x.into_iter().enumerate() {
            if v.as_rational().is_none() {
                return Err(DescentError::NotRational);
            }
            y.set(c, a, v);
        }
    }
    let kernel = y.sub(&Matrix::identity(m, order)).kernel();
    let basis: Vec<Vec<CycNum>> = kernel
        .iter()
        .map(|z| {
            let mut acc = Acc::new();
            for (a, c) in z.iter().enumerate() {
                if !c.is_zero() {
                    acc.add_scaled(&dense_to_sparse(&form.basis[a]), c);
                }
            }
            sparse_to_dense(&acc.finish(), alg.dim(), order)
        })
        .collect();
    let table = rational_table(alg.table(), &basis)?;
    Ok(Form { base_order: 1, basis, table })
}

/// `det K_form / det K` and whether it is a square in the ambient field, together
/// with the exact check `Pᵀ K P = K_form`.
pub fn killing_comparison(alg: &GradedLieAlgebra, form: &Form) -> (CycNum, Option<bool>, bool) {
    let order = alg.field_order();
    let k = alg.table().killing_form();
    let kf = form.table.killing_form();
    let p = Matrix::from_cols(&form.basis, alg.dim(), order);
    let pkp = p.transpose().mul(&k).mul(&p);
    let m = form.basis.len();
    let congruent = (0..m).all(|i| (0..m).all(|j| pkp.get(i, j) == kf.get(i, j)));
    let ratio = kf.det().checked_div(&k.det()).expect("nondegenerate Killing form");
    let ratio = ratio.embed(order).expect("rational ratio embeds");
    let square = ratio.is_square();
    (ratio, square, congruent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{CocycleChoice, InputDatum};
    use crate::epsilon::EpsilonKind;
    use crate::folding_descent::{fold, FoldingCase};
    use crate::lattice::RootLattice;

    fn g2_action(alg: &GradedLieAlgebra) -> GaloisAction {
        let sigma = LatticeAut::from_word(alg.datum().lattice(), &[2]).unwrap();
        GaloisAction { sigma, s: 5, f: vec![0; alg.datum().group().order()] }
    }

    #[test]
    fn g2_descends_to_rationals() {
        let (_, case) = FoldingCase::table().into_iter().find(|(l, _)| *l == "D4G2").unwrap();
        let folded = fold(&case).unwrap();
        let alg = &folded.algebra;
        assert_eq!(alg.field_order(), 6);
        let action = g2_action(alg);
        assert!(check_conditions(alg, &action).all());
        let form = galois_descend(alg, &action).unwrap();
        assert_eq!(form.basis.len(), 28);
        assert!(form.table.verify_jacobi_full().passed());
        assert!(is_equivariant(alg, &action, &folded.phi));
        let g2 = fixed_part(alg, &form, &folded.phi).unwrap();
        assert_eq!(g2.basis.len(), 14);
        assert!(g2.table.is_rational());
        let (_, square, congruent) = killing_comparison(alg, &form);
        assert!(congruent);
        assert_eq!(square, Some(true));
    }

    #[test]
    fn trivial_group_returns_the_algebra() {
        let lat = RootLattice::build("A2").unwrap();
        let w = LatticeAut::coxeter_power(&lat, &[1, 2], 1).unwrap();
        let datum = InputDatum::new(lat, w, CocycleChoice::Snf, EpsilonKind::EpsW).unwrap();
        let alg = GradedLieAlgebra::construct(datum).unwrap();
        let sigma = LatticeAut::from_word(alg.datum().lattice(), &[]).unwrap();
        let id = GaloisAction { sigma, s: 1, f: vec![0; alg.datum().group().order()] };
        let form = galois_descend(&alg, &id).unwrap();
        assert_eq!(form.basis.len(), alg.dim());
        assert_eq!(form.base_order, alg.field_order());
    }

    #[test]
    fn violated_condition_is_reported() {
        let (_, case) = FoldingCase::table().into_iter().find(|(l, _)| *l == "D4G2").unwrap();
        let alg = fold(&case).unwrap().algebra;
        let mut action = g2_action(&alg);
        action.s = 1;
        let cond = check_conditions(&alg, &action);
        assert!(!cond.a1);
        assert!(matches!(galois_descend(&alg, &action), Err(DescentError::ActionConditionsViolated(_))));
    }
}
