//! Central extensions of a coinvariant group by `⟨ζ_d⟩`, presented by a
//! bilinear cocycle on the Smith generators, and the pulled-back root cover.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::intmat::IntMat;
use crate::lattice::{Class, CoinvariantGroup, LatticeAut, RootLattice};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtError {
    #[error("pairing is not alternating at generator {0}")]
    PairingNotAlternating(usize),
    #[error("pairing value {value} on generators ({i}, {j}) is not well defined modulo the invariant factors")]
    PairingNotBilinear { i: usize, j: usize, value: u64 },
    #[error("commutator differs from the prescribed pairing on classes {a:?}, {b:?}")]
    CommutatorMismatch { a: Class, b: Class },
    #[error("lattice pairing is not constant on coinvariant classes at {alpha:?}, {beta:?}")]
    NotClassFunction { alpha: Vec<i64>, beta: Vec<i64> },
    #[error("{0:?} + {1:?} is neither a root nor zero")]
    SumNotRootOrZero(Vec<i64>, Vec<i64>),
    #[error("cocycle table has the wrong shape")]
    BadTable,
}

/// Exhaustive class-pair checks up to this group order; sampling above it.
pub const EXHAUSTIVE_LIMIT: usize = 625;
pub const SAMPLE_PAIRS: usize = 10_000;
pub const SAMPLE_SEED: u64 = 42;

/// `H` as the set `⟨ζ⟩ × Λ_w` with the product twisted by a bilinear cocycle.
#[derive(Debug, Clone)]
pub struct Extension {
    d: u64,
    group: CoinvariantGroup,
    /// `c(x_i, x_j)` as exponents of `ζ_d`.
    table: Vec<Vec<u64>>,
}

/// `(ζ^e, a)` in `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExtElement {
    pub e: u64,
    pub cls: Class,
}

/// `(ζ^e, α)` in `Λ̃ = Λ ×_{Λ_w} H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedRoot {
    pub e: u64,
    pub root: Vec<i64>,
}

impl Extension {
    /// Upper-triangular cocycle realizing an alternating pairing on the generators:
    /// `c(x_i, x_j) = ⟨x_i, x_j⟩` for `i < j` and `0` otherwise.
    pub fn build_cocycle(
        group: CoinvariantGroup,
        d: u64,
        pairing: impl Fn(&[i64], &[i64]) -> u64,
    ) -> Result<Self, ExtError> {
        let n = group.ngens();
        let gens: Vec<Class> = (0..n).map(|i| group.generator(i)).collect();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            if !pairing(&gens[i], &gens[i]).is_multiple_of(d) {
                return Err(ExtError::PairingNotAlternating(i));
            }
            for j in i + 1..n {
                table[i][j] = pairing(&gens[i], &gens[j]) % d;
            }
        }
        Self::with_table(group, d, table)
    }

    /// The direct product `⟨ζ⟩ × Λ_w`.
    pub fn direct_product(group: CoinvariantGroup, d: u64) -> Self {
        let n = group.ngens();
        Extension { d, group, table: vec![vec![0; n]; n] }
    }

    pub fn with_table(group: CoinvariantGroup, d: u64, table: Vec<Vec<u64>>) -> Result<Self, ExtError> {
        let n = group.ngens();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(ExtError::BadTable);
        }
        let f = group.factors();
        for i in 0..n {
            for j in 0..n {
                let v = table[i][j] % d;
                if !(v * f[i] as u64).is_multiple_of(d) || !(v * f[j] as u64).is_multiple_of(d) {
                    return Err(ExtError::PairingNotBilinear { i, j, value: v });
                }
            }
        }
        Ok(Extension { d, group, table })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn group(&self) -> &CoinvariantGroup {
        &self.group
    }

    pub fn table(&self) -> &[Vec<u64>] {
        &self.table
    }

    /// `|H| = d · |Λ_w|`.
    pub fn order(&self) -> usize {
        self.d as usize * self.group.order()
    }

    /// Exponent of `c(a, b)`.
    pub fn cocycle(&self, a: &[i64], b: &[i64]) -> u64 {
        let d = self.d as i64;
        let mut s = 0i64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                s = (s + x * y % d * self.table[i][j] as i64) % d;
            }
        }
        s.rem_euclid(d) as u64
    }

    /// Exponent of the commutator `aba⁻¹b⁻¹` of lifts: `c(a, b) − c(b, a)`.
    pub fn commutator(&self, a: &[i64], b: &[i64]) -> u64 {
        let d = self.d as i64;
        (self.cocycle(a, b) as i64 - self.cocycle(b, a) as i64).rem_euclid(d) as u64
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement { e: 0, cls: self.group.zero() }
    }

    pub fn central(&self, e: u64) -> ExtElement {
        ExtElement { e: e % self.d, cls: self.group.zero() }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement {
            e: (a.e + b.e + self.cocycle(&a.cls, &b.cls)) % self.d,
            cls: self.group.add(&a.cls, &b.cls),
        }
    }

    /// `(ζ^{−i} c(−a, a)^{−1} c(0, 0)^{−1}, −a)`.
    pub fn inv(&self, a: &ExtElement) -> ExtElement {
        let zero = self.group.zero();
        let c00 = self.cocycle(&zero, &zero);
        assert_eq!(c00, 0, "bilinear cocycle has c(0, 0) = 1");
        let neg = self.group.neg(&a.cls);
        let d = self.d as i64;
        let e = (-(a.e as i64) - self.cocycle(&neg, &a.cls) as i64 - c00 as i64).rem_euclid(d);
        ExtElement { e: e as u64, cls: neg }
    }

    pub fn group_commutator(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let ab = self.mul(a, b);
        let ainv = self.inv(a);
        let binv = self.inv(b);
        self.mul(&self.mul(&ab, &ainv), &binv)
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.d).flat_map(move |e| self.group.classes().map(move |cls| ExtElement { e, cls }))
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> ExtElement {
        let idx = rng.gen_range(0..self.group.order());
        ExtElement { e: rng.gen_range(0..self.d), cls: self.group.class_at(idx) }
    }

    /// Checks that the commutator of the extension equals `pairing` on classes,
    /// exhaustively up to [`EXHAUSTIVE_LIMIT`] elements and by sampling above.
    pub fn verify_commutator(&self, pairing: impl Fn(&[i64], &[i64]) -> u64) -> Result<usize, ExtError> {
        let check = |a: &Class, b: &Class| -> Result<(), ExtError> {
            let lhs = self.group_commutator(
                &ExtElement { e: 0, cls: a.clone() },
                &ExtElement { e: 0, cls: b.clone() },
            );
            if lhs.cls != self.group.zero() || lhs.e != pairing(a, b) % self.d {
                return Err(ExtError::CommutatorMismatch { a: a.clone(), b: b.clone() });
            }
            Ok(())
        };
        let n = self.group.order();
        if n <= EXHAUSTIVE_LIMIT {
            let classes: Vec<Class> = self.group.classes().collect();
            for a in &classes {
                for b in &classes {
                    check(a, b)?;
                }
            }
            Ok(n * n)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            for _ in 0..SAMPLE_PAIRS {
                let a = self.group.class_at(rng.gen_range(0..n));
                let b = self.group.class_at(rng.gen_range(0..n));
                check(&a, &b)?;
            }
            Ok(SAMPLE_PAIRS)
        }
    }

    /// `C` with `c(πα, πβ) ≡ αᵀ C β (mod d)` for lattice vectors.
    pub fn lattice_cocycle_matrix(&self) -> IntMat {
        let u = self.group.u();
        let n = u.cols();
        let sel: Vec<Vec<i64>> = self.group.positions().iter().map(|&p| u.row(p).to_vec()).collect();
        let mut out = IntMat::zeros(n, n);
        for (i, ri) in sel.iter().enumerate() {
            for (j, rj) in sel.iter().enumerate() {
                let t = self.table[i][j] as i64;
                if t == 0 {
                    continue;
                }
                for a in 0..n {
                    for b in 0..n {
                        out[(a, b)] = (out[(a, b)] + ri[a] * rj[b] * t).rem_euclid(self.d as i64);
                    }
                }
            }
        }
        out
    }

    /// `s(α) = (0, α)`.
    pub fn tilde_lift(&self, root: &[i64]) -> ExtendedRoot {
        ExtendedRoot { e: 0, root: root.to_vec() }
    }

    pub fn project_root(&self, r: &ExtendedRoot) -> ExtElement {
        ExtElement { e: r.e, cls: self.group.project(&r.root) }
    }

    /// Product in `Λ̃`; the root part is the plain sum.
    pub fn tilde_mul(&self, a: &ExtendedRoot, b: &ExtendedRoot) -> ExtendedRoot {
        let c = self.cocycle(&self.group.project(&a.root), &self.group.project(&b.root));
        ExtendedRoot {
            e: (a.e + b.e + c) % self.d,
            root: a.root.iter().zip(&b.root).map(|(x, y)| x + y).collect(),
        }
    }

    /// Product restricted to pairs with `α + β ∈ Φ ∪ {0}`.
    pub fn tilde_mul_typed(
        &self,
        lattice: &RootLattice,
        a: &ExtendedRoot,
        b: &ExtendedRoot,
    ) -> Result<ExtendedRoot, ExtError> {
        let p = self.tilde_mul(a, b);
        if p.root.iter().all(|&x| x == 0) || lattice.root_index(&p.root).is_some() {
            Ok(p)
        } else {
            Err(ExtError::SumNotRootOrZero(a.root.clone(), b.root.clone()))
        }
    }

    /// `w · (ζ^e, α) = (ζ^e, wα)`.
    pub fn act(&self, w: &LatticeAut, r: &ExtendedRoot) -> ExtendedRoot {
        ExtendedRoot { e: r.e, root: w.apply(&r.root) }
    }
}

/// Class pairing of a lattice pairing, read off on lifted generators, after
/// checking that the lattice pairing only depends on classes of roots.
pub fn class_pairing_from_lattice(
    lattice: &RootLattice,
    group: &CoinvariantGroup,
    d: u64,
    pairing: impl Fn(&[i64], &[i64]) -> u64,
) -> Result<Vec<Vec<u64>>, ExtError> {
    let n = group.ngens();
    let lifts: Vec<Vec<i64>> = (0..n).map(|i| group.lift(&group.generator(i))).collect();
    let mat: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|j| pairing(&lifts[i], &lifts[j]) % d).collect()).collect();
    let eval = |a: &[i64], b: &[i64]| -> u64 {
        let mut s = 0u64;
        for i in 0..n {
            for j in 0..n {
                s = (s + (a[i] * b[j]) as u64 % d * mat[i][j]) % d;
            }
        }
        s
    };
    for alpha in lattice.roots() {
        let pa = group.project(alpha);
        for beta in lattice.roots() {
            if eval(&pa, &group.project(beta)) != pairing(alpha, beta) % d {
                return Err(ExtError::NotClassFunction { alpha: alpha.clone(), beta: beta.clone() });
            }
        }
    }
    Ok(mat)
}

/// Evaluates a generator pairing matrix bilinearly on classes.
pub fn eval_class_pairing(mat: &[Vec<u64>], d: u64, a: &[i64], b: &[i64]) -> u64 {
    let mut s = 0u64;
    for (i, row) in mat.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            s = (s + (a[i] * b[j]).rem_euclid(d as i64) as u64 * v) % d;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Pairings;

    fn e8_d5() -> (RootLattice, LatticeAut) {
        let l = RootLattice::build("E8").unwrap();
        let w = LatticeAut::coxeter_power(&l, &[1, 2, 3, 4, 5, 6, 7, 8], 6).unwrap();
        (l, w)
    }

    #[test]
    fn e8_order5_commutator_exhaustive() {
        let (l, w) = e8_d5();
        let p = Pairings::new(&l, &w).unwrap();
        let g = CoinvariantGroup::new(&w).unwrap();
        assert_eq!(g.factors(), &[5, 5]);
        let mat = class_pairing_from_lattice(&l, &g, 5, |a, b| p.pairing_w(a, b)).unwrap();
        let ext = Extension::build_cocycle(g, 5, |a, b| eval_class_pairing(&mat, 5, a, b)).unwrap();
        let n = ext.verify_commutator(|a, b| eval_class_pairing(&mat, 5, a, b)).unwrap();
        assert_eq!(n, 625);
        // nondegenerate on (Z/5)^2
        assert_ne!(mat[0][1], 0);
    }

    #[test]
    fn group_laws() {
        let (l, w) = e8_d5();
        let p = Pairings::new(&l, &w).unwrap();
        let g = CoinvariantGroup::new(&w).unwrap();
        let mat = class_pairing_from_lattice(&l, &g, 5, |a, b| p.pairing_w(a, b)).unwrap();
        let ext = Extension::build_cocycle(g, 5, |a, b| eval_class_pairing(&mat, 5, a, b)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let a = ext.random_element(&mut rng);
            let b = ext.random_element(&mut rng);
            let c = ext.random_element(&mut rng);
            assert_eq!(ext.mul(&a, &ext.inv(&a)), ext.identity());
            assert_eq!(ext.mul(&ext.mul(&a, &b), &c), ext.mul(&a, &ext.mul(&b, &c)));
            let z = ext.central(3);
            assert_eq!(ext.mul(&z, &a), ext.mul(&a, &z));
        }
    }

    #[test]
    fn lattice_cocycle_matrix_agrees() {
        let (l, w) = e8_d5();
        let p = Pairings::new(&l, &w).unwrap();
        let g = CoinvariantGroup::new(&w).unwrap();
        let mat = class_pairing_from_lattice(&l, &g, 5, |a, b| p.pairing_w(a, b)).unwrap();
        let ext = Extension::build_cocycle(g, 5, |a, b| eval_class_pairing(&mat, 5, a, b)).unwrap();
        let cm = ext.lattice_cocycle_matrix();
        for a in l.roots().iter().step_by(7) {
            for b in l.roots().iter().step_by(5) {
                let direct = ext.cocycle(&ext.group().project(a), &ext.group().project(b));
                let via: i64 = a.iter().zip(cm.apply(b)).map(|(x, y)| x * y).sum();
                assert_eq!(direct, via.rem_euclid(5) as u64);
            }
        }
    }

    #[test]
    fn a1_minus_one() {
        let l = RootLattice::build("A1").unwrap();
        let w = LatticeAut::minus_identity(&l);
        let g = CoinvariantGroup::new(&w).unwrap();
        assert_eq!(g.factors(), &[2]);
        let ext = Extension::build_cocycle(g, 2, |a, b| (2 * a[0] * b[0]).rem_euclid(2) as u64).unwrap();
        assert_eq!(ext.table(), &[vec![0]]);
        let r = ext.tilde_lift(&[1]);
        assert_eq!(ext.tilde_mul(&r, &r).e, 0);
    }

    #[test]
    fn alternating_required() {
        let l = RootLattice::build("A1").unwrap();
        let g = CoinvariantGroup::new(&LatticeAut::minus_identity(&l)).unwrap();
        assert_eq!(Extension::build_cocycle(g, 2, |_, _| 1).unwrap_err(), ExtError::PairingNotAlternating(0));
    }
}
