//! Input data `(Λ, w, H, ε)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::central_ext::{class_pairing_from_lattice, eval_class_pairing, ExtError, Extension};
use crate::cyclotomic::CycNum;
use crate::epsilon::{validate_input_datum, Epsilon, EpsilonError, EpsilonEval, EpsilonKind, ValidationReport};
use crate::intmat::IntMat;
use crate::lattice::{Class, CoinvariantGroup, LatticeAut, LatticeError, Pairings, RootLattice};

#[derive(Debug, Error)]
pub enum DatumError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Extension(#[from] ExtError),
    #[error(transparent)]
    Epsilon(#[from] EpsilonError),
}

/// How the extension `H` is presented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleChoice {
    /// Upper-triangular cocycle on the Smith generators realizing `⟨·,·⟩_w`.
    Snf,
    /// `⟨ζ⟩ × Λ_w` with trivial cocycle.
    DirectProduct,
}

pub struct InputDatum {
    lattice: RootLattice,
    w: LatticeAut,
    pairings: Pairings,
    ext: Extension,
    cocycle: CocycleChoice,
    eps: Epsilon,
    /// `c(πα, πβ) = αᵀ C β mod d`.
    cocycle_matrix: IntMat,
    /// Generator matrix of the commutator pairing of `H` on classes.
    class_pairing: Vec<Vec<u64>>,
}

impl InputDatum {
    pub fn new(
        lattice: RootLattice,
        w: LatticeAut,
        cocycle: CocycleChoice,
        eps: EpsilonKind,
    ) -> Result<Self, DatumError> {
        let pairings = Pairings::new(&lattice, &w)?;
        let group = CoinvariantGroup::new(&w)?;
        let d = w.order();
        let ext = match cocycle {
            CocycleChoice::Snf => {
                let mat = class_pairing_from_lattice(&lattice, &group, d, |a, b| pairings.pairing_w(a, b))?;
                Extension::build_cocycle(group, d, |a, b| eval_class_pairing(&mat, d, a, b))?
            }
            CocycleChoice::DirectProduct => Extension::direct_product(group, d),
        };
        let n = ext.group().ngens();
        let class_pairing = (0..n)
            .map(|i| {
                (0..n).map(|j| ext.commutator(&ext.group().generator(i), &ext.group().generator(j))).collect()
            })
            .collect();
        let eps = Epsilon::new(eps, &lattice, &w, &ext)?;
        let cocycle_matrix = ext.lattice_cocycle_matrix();
        Ok(InputDatum { lattice, w, pairings, ext, cocycle, eps, cocycle_matrix, class_pairing })
    }

    pub fn lattice(&self) -> &RootLattice {
        &self.lattice
    }

    pub fn w(&self) -> &LatticeAut {
        &self.w
    }

    pub fn pairings(&self) -> &Pairings {
        &self.pairings
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn group(&self) -> &CoinvariantGroup {
        self.ext.group()
    }

    pub fn cocycle_choice(&self) -> CocycleChoice {
        self.cocycle
    }

    pub fn epsilon(&self) -> &Epsilon {
        &self.eps
    }

    pub fn d(&self) -> u64 {
        self.w.order()
    }

    pub fn field_order(&self) -> u32 {
        self.w.order() as u32
    }

    /// `ζ_d^k` in the ambient field.
    pub fn zeta(&self, k: i64) -> CycNum {
        CycNum::root_of_unity(self.field_order(), k)
    }

    /// Exponent of `c(πα, πβ)`, the phase in `s(α)s(β) = ζ^e s(α + β)`.
    pub fn cocycle_exp(&self, a: &[i64], b: &[i64]) -> u64 {
        let cb = self.cocycle_matrix.apply(b);
        let s: i64 = a.iter().zip(&cb).map(|(x, y)| x * y).sum();
        s.rem_euclid(self.d() as i64) as u64
    }

    /// Exponent of the commutator pairing of `H` on classes.
    pub fn class_commutator(&self, a: &[i64], b: &[i64]) -> u64 {
        eval_class_pairing(&self.class_pairing, self.d(), a, b)
    }

    pub fn class_of(&self, v: &[i64]) -> Class {
        self.ext.group().project(v)
    }

    pub fn eps(&self, a: &[i64], b: &[i64]) -> CycNum {
        self.eps.eval(a, b)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_input_datum(&self.lattice, &self.w, &self.ext, &self.eps)
    }

    pub fn validate_with(&self, eps: &dyn EpsilonEval) -> ValidationReport {
        validate_input_datum(&self.lattice, &self.w, &self.ext, eps)
    }

    /// Short description, e.g. `E8 w^5 (Z/5)^2 eps_w`.
    pub fn describe(&self) -> String {
        let f: Vec<String> = self.group().factors().iter().map(|x| format!("Z/{x}")).collect();
        format!(
            "{} order {} coinvariants [{}] {:?} {}",
            self.lattice.label(),
            self.d(),
            f.join(" x "),
            self.cocycle,
            self.eps.kind()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::{eps_w_ratio_check, Corrupted};

    fn datum(label: &str, word: &[usize], power: u64, eps: EpsilonKind) -> InputDatum {
        let l = RootLattice::build(label).unwrap();
        let w = LatticeAut::coxeter_power(&l, word, power).unwrap();
        InputDatum::new(l, w, CocycleChoice::Snf, eps).unwrap()
    }

    #[test]
    fn coxeter_data_are_valid() {
        for (label, word) in [("A2", vec![1, 2]), ("A3", vec![1, 3, 2]), ("D4", vec![2, 1, 3, 4])] {
            let dt = datum(label, &word, 1, EpsilonKind::EpsW);
            let r = dt.validate();
            assert!(r.valid(), "{label}: {r:?}");
            eps_w_ratio_check(dt.lattice(), dt.pairings(), dt.epsilon()).unwrap();
        }
    }

    #[test]
    fn a1_eps_w_value() {
        let l = RootLattice::build("A1").unwrap();
        let w = LatticeAut::minus_identity(&l);
        let dt = InputDatum::new(l, w, CocycleChoice::Snf, EpsilonKind::EpsW).unwrap();
        // (α, −α) = −2 so (wα, −α) = 2 and ε = (1 − (−1))^2 = 4
        assert_eq!(dt.eps(&[1], &[-1]), CycNum::from_int(2, 4));
        assert_eq!(dt.eps(&[1], &[1]), CycNum::from_rational(2, &num_rational::BigRational::new(1.into(), 4.into())));
    }

    #[test]
    fn minus_one_trivial_eps_valid() {
        let l = RootLattice::build("D4").unwrap();
        let w = LatticeAut::minus_identity(&l);
        let dt = InputDatum::new(l, w, CocycleChoice::Snf, EpsilonKind::Trivial).unwrap();
        assert!(dt.validate().valid());
    }

    #[test]
    fn corrupted_eps_fails() {
        let dt = datum("A2", &[1, 2], 1, EpsilonKind::EpsW);
        let bad = Corrupted { inner: dt.epsilon(), alpha: vec![1, 0], beta: vec![0, 1] };
        let r = dt.validate_with(&bad);
        assert!(!r.property1);
        assert!(r.counterexamples.iter().any(|c| c.alpha == vec![1, 0] && c.beta == vec![0, 1]));
    }
}
