use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::RepError;
use crate::central_ext::{ExtElement, Extension};
use crate::cyclotomic::CycNum;
use crate::lattice::{Class, CoinvariantGroup};
use crate::linalg::Matrix;

/// A subgroup of `Λ_w` on which a pairing vanishes, maximal with that property.
#[derive(Debug, Clone, Serialize)]
pub struct IsotropicSubgroup {
    /// Generators in the order they were added.
    pub generators: Vec<Class>,
    /// All elements, sorted by class index.
    pub elements: Vec<Class>,
    pub radical_order: usize,
}

fn span(group: &CoinvariantGroup, elements: &BTreeSet<usize>, x: &[i64]) -> BTreeSet<usize> {
    let mut out = elements.clone();
    let mut frontier: Vec<usize> = elements.iter().copied().collect();
    while let Some(i) = frontier.pop() {
        let y = group.add(&group.class_at(i), x);
        let k = group.index_of(&y);
        if out.insert(k) {
            frontier.push(k);
        }
    }
    out
}

/// Greedy maximal isotropic subgroup: the radical first, then classes in index order.
pub fn maximal_isotropic(group: &CoinvariantGroup, pairing: impl Fn(&[i64], &[i64]) -> u64) -> IsotropicSubgroup {
    let gens: Vec<Class> = (0..group.ngens()).map(|i| group.generator(i)).collect();
    let radical: Vec<Class> = group.classes().filter(|c| gens.iter().all(|g| pairing(c, g) == 0)).collect();
    let mut elements: BTreeSet<usize> = BTreeSet::from([group.index_of(&group.zero())]);
    let mut generators = Vec::new();
    for r in &radical {
        if !elements.contains(&group.index_of(r)) {
            elements = span(group, &elements, r);
            generators.push(r.clone());
        }
    }
    for x in group.classes() {
        if elements.contains(&group.index_of(&x)) {
            continue;
        }
        if generators.iter().all(|g| pairing(&x, g) == 0) {
            elements = span(group, &elements, &x);
            generators.push(x);
        }
    }
    IsotropicSubgroup {
        generators,
        elements: elements.into_iter().map(|i| group.class_at(i)).collect(),
        radical_order: radical.len(),
    }
}

impl IsotropicSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_isotropic(&self, pairing: impl Fn(&[i64], &[i64]) -> u64) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| pairing(a, b) == 0))
    }

    /// No class outside pairs trivially with every element.
    pub fn is_maximal(&self, group: &CoinvariantGroup, pairing: impl Fn(&[i64], &[i64]) -> u64) -> bool {
        let inside: BTreeSet<&Class> = self.elements.iter().collect();
        group
            .classes()
            .filter(|c| !inside.contains(c))
            .all(|c| self.generators.iter().any(|g| pairing(&c, g) != 0))
    }
}

/// A monomial matrix `e_t ↦ ζ^{phase[t]} e_{perm[t]}` with phases in `Q/Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phase: Vec<Rational64>,
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

impl Monomial {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self · other`.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        let phase = other.phase.iter().zip(&other.perm).map(|(p, &t)| frac(*p + self.phase[t])).collect();
        Monomial { perm, phase }
    }

    pub fn to_matrix(&self, order: u32) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n, order);
        for (t, (&s, p)) in self.perm.iter().zip(&self.phase).enumerate() {
            m.set(s, t, root_of_unity_at(order, *p));
        }
        m
    }

    pub fn trace(&self, order: u32) -> CycNum {
        let mut acc = CycNum::zero(order);
        for (t, (&s, p)) in self.perm.iter().zip(&self.phase).enumerate() {
            if s == t {
                acc += &root_of_unity_at(order, *p);
            }
        }
        acc
    }
}

/// `exp(2πi x)` in `Q(ζ_order)`; requires `order · x ∈ Z`.
pub fn root_of_unity_at(order: u32, x: Rational64) -> CycNum {
    let k = x * Rational64::from_integer(order as i64);
    assert!(k.is_integer(), "phase {x} does not lie in Q(ζ_{order})");
    CycNum::root_of_unity(order, k.to_integer())
}

/// `Ind_Ã^H χ̃` for `Ã` the preimage of a maximal isotropic subgroup.
#[derive(Debug, Clone)]
pub struct HeisenbergRep {
    ext: Extension,
    central: u64,
    subgroup: IsotropicSubgroup,
    /// Relative orders of the generators along `A_0 ⊂ A_1 ⊂ ...`.
    rel_orders: Vec<i64>,
    /// `χ̃(0, a_i)` as elements of `Q/Z`.
    gen_phases: Vec<Rational64>,
    /// Polycyclic exponents of each element of `A`, keyed by class index.
    normal_form: HashMap<usize, Vec<i64>>,
    coset_reps: Vec<Class>,
    coset_of: Vec<usize>,
    field_order: u32,
}

impl HeisenbergRep {
    /// Induces from the greedy maximal isotropic subgroup, with `ζ ↦ ζ^central` on
    /// the center and `χ̃(0, a_i)` shifted by `twist[i] / n_i`.
    pub fn induce(ext: &Extension, central: u64, twist: &[i64]) -> Result<Self, RepError> {
        let d = ext.d();
        if (central % d).gcd(&d) != 1 && d > 1 {
            return Err(RepError::CharacterDoesNotExtend(format!("{central} is not a unit mod {d}")));
        }
        let group = ext.group();
        let subgroup = maximal_isotropic(group, |a, b| ext.commutator(a, b));
        let mut rep = HeisenbergRep {
            ext: ext.clone(),
            central,
            rel_orders: Vec::new(),
            gen_phases: Vec::new(),
            normal_form: HashMap::from([(group.index_of(&group.zero()), Vec::new())]),
            coset_reps: Vec::new(),
            coset_of: Vec::new(),
            field_order: 1,
            subgroup,
        };
        let gens = rep.subgroup.generators.clone();
        for (i, a) in gens.iter().enumerate() {
            let prev: Vec<(usize, Vec<i64>)> = rep.normal_form.iter().map(|(k, v)| (*k, v.clone())).collect();
            let mut n = 1i64;
            let mut x = a.clone();
            while !rep.normal_form.contains_key(&group.index_of(&x)) {
                n += 1;
                x = group.add(&x, a);
            }
            // t_i^{n_i} lies over A_{i-1}, where χ̃ is already known
            let t = ExtElement { e: 0, cls: a.clone() };
            let mut power = t.clone();
            for _ in 1..n {
                power = ext.mul(&power, &t);
            }
            let base = rep.chi(&power).expect("power lies over the previous subgroup");
            let shift = twist.get(i).copied().unwrap_or(0);
            rep.gen_phases.push(frac((base + Rational64::from_integer(shift)) / n));
            rep.rel_orders.push(n);
            let mut next = HashMap::new();
            for (idx, nf) in &prev {
                let b = group.class_at(*idx);
                let mut y = b;
                for k in 0..n {
                    let mut v = nf.clone();
                    v.resize(i, 0);
                    v.push(k);
                    next.insert(group.index_of(&y), v);
                    y = group.add(&y, a);
                }
            }
            rep.normal_form = next;
        }
        for v in rep.normal_form.values_mut() {
            v.resize(gens.len(), 0);
        }
        let mut lcm = d as i64;
        for p in &rep.gen_phases {
            lcm = lcm.lcm(p.denom());
        }
        rep.field_order = u32::try_from(lcm).expect("small field order");
        rep.build_cosets();
        rep.check_character()?;
        Ok(rep)
    }

    fn build_cosets(&mut self) {
        let group = self.ext.group();
        let mut coset_of = vec![usize::MAX; group.order()];
        for x in group.classes() {
            let ix = group.index_of(&x);
            if coset_of[ix] != usize::MAX {
                continue;
            }
            let t = self.coset_reps.len();
            for a in &self.subgroup.elements {
                coset_of[group.index_of(&group.add(&x, a))] = t;
            }
            self.coset_reps.push(x);
        }
        self.coset_of = coset_of;
    }

    /// `χ̃(h)` in `Q/Z` for `h` over `A`.
    pub fn chi(&self, h: &ExtElement) -> Option<Rational64> {
        let group = self.ext.group();
        let nf = self.normal_form.get(&group.index_of(&h.cls))?;
        let mut prod = self.ext.identity();
        let mut phase = Rational64::zero();
        for (i, &k) in nf.iter().enumerate() {
            let t = ExtElement { e: 0, cls: self.subgroup.generators[i].clone() };
            for _ in 0..k {
                prod = self.ext.mul(&prod, &t);
            }
            phase += self.gen_phases[i] * k;
        }
        let d = self.ext.d() as i64;
        let e = (h.e as i64 - prod.e as i64).rem_euclid(d);
        Some(frac(phase + Rational64::new(self.central as i64 * e, d)))
    }

    /// `χ̃` is a homomorphism on all of `Ã`.
    fn check_character(&self) -> Result<(), RepError> {
        let d = self.ext.d();
        let elems: Vec<ExtElement> = (0..d)
            .flat_map(|e| self.subgroup.elements.iter().map(move |c| ExtElement { e, cls: c.clone() }))
            .collect();
        for a in &elems {
            for b in &elems {
                let ab = self.ext.mul(a, b);
                let lhs = self.chi(&ab);
                let rhs = self.chi(a).zip(self.chi(b)).map(|(x, y)| frac(x + y));
                if lhs.is_none() || lhs != rhs {
                    return Err(RepError::CharacterDoesNotExtend(format!("{a:?}, {b:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn subgroup(&self) -> &IsotropicSubgroup {
        &self.subgroup
    }

    pub fn central_exponent(&self) -> u64 {
        self.central
    }

    pub fn coset_reps(&self) -> &[Class] {
        &self.coset_reps
    }

    /// `χ̃(0, a_i)` along the generators of `A`.
    pub fn generator_phases(&self) -> &[Rational64] {
        &self.gen_phases
    }

    /// `ρ(h) e_t = χ̃(t̂'⁻¹ h t̂) e_{t'}`.
    pub fn monomial(&self, h: &ExtElement) -> Monomial {
        let group = self.ext.group();
        let mut perm = Vec::with_capacity(self.dim());
        let mut phase = Vec::with_capacity(self.dim());
        for r in &self.coset_reps {
            let g = self.ext.mul(h, &ExtElement { e: 0, cls: r.clone() });
            let t2 = self.coset_of[group.index_of(&g.cls)];
            let lift = ExtElement { e: 0, cls: self.coset_reps[t2].clone() };
            let a = self.ext.mul(&self.ext.inv(&lift), &g);
            perm.push(t2);
            phase.push(self.chi(&a).expect("t̂'⁻¹ h t̂ lies over A"));
        }
        Monomial { perm, phase }
    }

    pub fn matrix(&self, h: &ExtElement) -> Matrix {
        self.monomial(h).to_matrix(self.field_order)
    }

    /// `ρ(ζ)` and `ρ(0, x_i)` for the generators of `Λ_w`.
    pub fn generators(&self) -> Vec<(String, Matrix)> {
        let group = self.ext.group();
        let mut out = vec![("zeta".to_string(), self.matrix(&self.ext.central(1)))];
        for i in 0..group.ngens() {
            out.push((format!("x{}", i + 1), self.matrix(&ExtElement { e: 0, cls: group.generator(i) })));
        }
        out
    }

    /// `ρ(a)ρ(b) = ρ(ab)` on random pairs.
    pub fn check_homomorphism(&self, samples: usize, seed: u64) -> Result<usize, (ExtElement, ExtElement)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = self.ext.random_element(&mut rng);
            let b = self.ext.random_element(&mut rng);
            if self.monomial(&a).compose(&self.monomial(&b)) != self.monomial(&self.ext.mul(&a, &b)) {
                return Err((a, b));
            }
        }
        Ok(samples)
    }

    /// `ρ(ζ^e, 0) = ζ^{central·e} I` for every `e`.
    pub fn check_central_character(&self) -> bool {
        let d = self.ext.d() as i64;
        (0..self.ext.d()).all(|e| {
            let m = self.monomial(&self.ext.central(e));
            let want = frac(Rational64::new(self.central as i64 * e as i64, d));
            m.perm.iter().enumerate().all(|(t, &s)| s == t) && m.phase.iter().all(|p| *p == want)
        })
    }

    /// `Σ_{h ∈ H} |tr ρ(h)|²`, which equals `|H|` exactly when `ρ` is irreducible.
    pub fn character_norm(&self) -> CycNum {
        let order = self.field_order;
        let mut acc = CycNum::zero(order);
        for h in self.ext.elements() {
            let t = self.monomial(&h).trace(order);
            if !t.is_zero() {
                acc += &(&t * &t.conj());
            }
        }
        acc
    }

    pub fn is_irreducible_by_characters(&self) -> bool {
        let n = self.character_norm();
        n.as_integer().is_some_and(|x| x == (self.ext.order() as i64).into())
    }

    pub fn commutant_dim(&self) -> usize {
        let mats: Vec<Matrix> = self.generators().into_iter().map(|(_, m)| m).collect();
        crate::linalg::commutant_dim(&mats)
    }

    pub fn trace(&self, h: &ExtElement) -> CycNum {
        self.monomial(h).trace(self.field_order)
    }
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial { perm: (0..n).collect(), phase: vec![Rational64::zero(); n] }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(t, &s)| s == t) && self.phase.iter().all(|p| p.is_zero())
    }
}
