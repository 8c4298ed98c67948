//! The ε-pairings and the input-datum property checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::central_ext::Extension;
use crate::cyclotomic::CycNum;
use crate::intmat::IntMat;
use crate::lattice::{LatticeAut, Pairings, RootLattice};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpsilonError {
    #[error("the odd variant needs odd d, got {0}")]
    EvenOrder(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonKind {
    EpsW,
    Trivial,
    D3Variant,
    OddVariant,
}

impl fmt::Display for EpsilonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsilonKind::EpsW => "eps_w",
            EpsilonKind::Trivial => "trivial",
            EpsilonKind::D3Variant => "d3_variant",
            EpsilonKind::OddVariant => "odd_variant",
        })
    }
}

/// Anything that can serve as `ε` on lattice vectors.
pub trait EpsilonEval: Sync {
    fn eval(&self, a: &[i64], b: &[i64]) -> CycNum;
}

/// A named ε-pairing bound to `(Λ, w, H)`, with values in `Q(ζ_d)`.
pub struct Epsilon {
    kind: EpsilonKind,
    d: u64,
    /// `(w^j)ᵀ G` for `j = 0..d`.
    gram_pows: Vec<IntMat>,
    /// Commutator pairing of `H` pulled back to `Λ`.
    comm: IntMat,
    /// `(1 − ζ^{−j})` and inverses, `j = 1..d`.
    factors: Vec<(CycNum, CycNum)>,
    cache: Mutex<HashMap<Vec<i64>, CycNum>>,
}

fn bil(m: &IntMat, a: &[i64], b: &[i64]) -> i64 {
    let mb = m.apply(b);
    a.iter().zip(&mb).map(|(x, y)| x * y).sum()
}

impl Epsilon {
    pub fn new(
        kind: EpsilonKind,
        lattice: &RootLattice,
        w: &LatticeAut,
        ext: &Extension,
    ) -> Result<Self, EpsilonError> {
        let d = w.order();
        if kind == EpsilonKind::OddVariant && d.is_multiple_of(2) {
            return Err(EpsilonError::EvenOrder(d));
        }
        let mut gram_pows = Vec::with_capacity(d as usize);
        let mut wj = IntMat::identity(lattice.rank());
        for _ in 0..d {
            gram_pows.push(&wj.transpose() * lattice.gram());
            wj = &wj * w.matrix();
        }
        let c = ext.lattice_cocycle_matrix();
        let comm = c.sub(&c.transpose());
        let order = d as u32;
        let factors = (1..d as i64)
            .map(|j| {
                let f = &CycNum::one(order) - &CycNum::root_of_unity(order, -j);
                let inv = f.inv().expect("1 − ζ^{−j} is nonzero for 0 < j < d");
                (f, inv)
            })
            .collect();
        Ok(Epsilon { kind, d, gram_pows, comm, factors, cache: Mutex::new(HashMap::new()) })
    }

    pub fn kind(&self) -> EpsilonKind {
        self.kind
    }

    pub fn field_order(&self) -> u32 {
        self.d as u32
    }

    /// `(w^j α, β)`.
    pub fn inner_pow(&self, j: usize, a: &[i64], b: &[i64]) -> i64 {
        bil(&self.gram_pows[j % self.gram_pows.len()], a, b)
    }

    /// Exponent of the commutator pairing `⟨α, β⟩` of `H`.
    pub fn commutator_exp(&self, a: &[i64], b: &[i64]) -> u64 {
        bil(&self.comm, a, b).rem_euclid(self.d as i64) as u64
    }

    fn eps_w(&self, a: &[i64], b: &[i64]) -> CycNum {
        let key: Vec<i64> = (1..self.d as usize).map(|j| self.inner_pow(j, a, b)).collect();
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let mut v = CycNum::one(self.d as u32);
        for (n, (f, inv)) in key.iter().zip(&self.factors) {
            let base = if *n >= 0 { f } else { inv };
            for _ in 0..n.unsigned_abs() {
                v *= base;
            }
        }
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        v
    }

    fn signed_root(&self, sign_exp: i64, zeta_exp: i64) -> CycNum {
        let r = CycNum::root_of_unity(self.d as u32, zeta_exp);
        if sign_exp.rem_euclid(2) == 1 {
            -r
        } else {
            r
        }
    }
}

impl EpsilonEval for Epsilon {
    fn eval(&self, a: &[i64], b: &[i64]) -> CycNum {
        let order = self.d as u32;
        match self.kind {
            EpsilonKind::Trivial => CycNum::one(order),
            EpsilonKind::EpsW => self.eps_w(a, b),
            EpsilonKind::D3Variant => {
                let sign = self.inner_pow(1, b, a);
                self.signed_root(sign, self.commutator_exp(a, b) as i64)
            }
            EpsilonKind::OddVariant => {
                let half = (self.d as usize - 1) / 2;
                let sign: i64 = (1..=half).map(|j| self.inner_pow(j, b, a)).sum();
                self.signed_root(sign, self.commutator_exp(a, b) as i64 * half as i64)
            }
        }
    }
}

/// Outcome of the two input-datum properties over all root pairs.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub property1: bool,
    pub property2: bool,
    pub pairs_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub property: u8,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.property1 && self.property2
    }
}

const MAX_COUNTEREXAMPLES: usize = 4;

/// Checks, over every ordered pair of roots,
/// 1. `ε(α, β) = −⟨β, α⟩ ε(β, α)` whenever `(α, β) = −1`;
/// 2. `ε(wα, wβ) = ε(α, β)`.
pub fn validate_input_datum(
    lattice: &RootLattice,
    w: &LatticeAut,
    ext: &Extension,
    eps: &dyn EpsilonEval,
) -> ValidationReport {
    let c = ext.lattice_cocycle_matrix();
    let comm = c.sub(&c.transpose());
    let d = w.order();
    let order = d as u32;
    let roots = lattice.roots();
    let wroots: Vec<Vec<i64>> = roots.iter().map(|r| w.apply(r)).collect();
    let per_alpha: Vec<(Vec<Counterexample>, bool, bool)> = (0..roots.len())
        .into_par_iter()
        .map(|i| {
            let a = &roots[i];
            let mut found = Vec::new();
            let (mut p1, mut p2) = (true, true);
            for (j, b) in roots.iter().enumerate() {
                let eab = eps.eval(a, b);
                if lattice.inner(a, b) == -1 {
                    let k = bil(&comm, b, a).rem_euclid(d as i64);
                    let rhs = -(&CycNum::root_of_unity(order, k) * &eps.eval(b, a));
                    if eab != rhs {
                        p1 = false;
                        if found.len() < MAX_COUNTEREXAMPLES {
                            found.push(Counterexample { property: 1, alpha: a.clone(), beta: b.clone() });
                        }
                    }
                }
                if eps.eval(&wroots[i], &wroots[j]) != eab {
                    p2 = false;
                    if found.len() < MAX_COUNTEREXAMPLES {
                        found.push(Counterexample { property: 2, alpha: a.clone(), beta: b.clone() });
                    }
                }
            }
            (found, p1, p2)
        })
        .collect();
    let mut report = ValidationReport {
        property1: true,
        property2: true,
        pairs_checked: roots.len() * roots.len(),
        counterexamples: Vec::new(),
    };
    for (found, p1, p2) in per_alpha {
        report.property1 &= p1;
        report.property2 &= p2;
        for cx in found {
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                report.counterexamples.push(cx);
            }
        }
    }
    report
}

/// Negative control: an ε with a single value sign-flipped.
pub struct Corrupted<'a> {
    pub inner: &'a dyn EpsilonEval,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl EpsilonEval for Corrupted<'_> {
    fn eval(&self, a: &[i64], b: &[i64]) -> CycNum {
        let v = self.inner.eval(a, b);
        if a == self.alpha.as_slice() && b == self.beta.as_slice() {
            -v
        } else {
            v
        }
    }
}

/// Checks `ε_w(α, β) / ε_w(β, α) = (−1)^{(α, β)} ⟨β, α⟩_w` on all root pairs;
/// returns the first failing pair.
pub fn eps_w_ratio_check(
    lattice: &RootLattice,
    pairings: &Pairings,
    eps: &Epsilon,
) -> Result<usize, (Vec<i64>, Vec<i64>)> {
    let roots = lattice.roots();
    let order = pairings.d() as u32;
    let bad = (0..roots.len()).into_par_iter().find_map_first(|i| {
        let a = &roots[i];
        for b in roots {
            let lhs = &eps.eval(a, b) * &eps.eval(b, a).inv().expect("ε values are units");
            let mut rhs = CycNum::root_of_unity(order, pairings.pairing_w(b, a) as i64);
            if lattice.inner(a, b).rem_euclid(2) == 1 {
                rhs = -rhs;
            }
            if lhs != rhs {
                return Some((a.clone(), b.clone()));
            }
        }
        None
    });
    match bad {
        Some(p) => Err(p),
        None => Ok(roots.len() * roots.len()),
    }
}
