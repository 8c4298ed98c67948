//! Simply laced root lattices, their automorphisms, coinvariant groups and
//! the two `ζ`-valued pairings attached to an elliptic automorphism.
//!
//! Vectors are integer coordinates in the simple-root basis. Simple roots
//! follow the Bourbaki numbering; indices in public APIs are 1-based.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::cyclotomic::cyclotomic_polynomial;
use crate::intmat::{smith_normal_form, IntMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown lattice type {0:?}")]
    UnknownType(String),
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("permutation is not an automorphism of the Dynkin diagram")]
    NotDiagramAutomorphism,
    #[error("word is not a Coxeter element (each simple reflection exactly once)")]
    NotCoxeterWord,
    #[error("matrix does not preserve the Gram form")]
    NotAnIsometry,
    #[error("matrix has the wrong shape for rank {0}")]
    BadShape(usize),
    #[error("automorphism is not elliptic")]
    NotElliptic,
    #[error("automorphism has infinite or very large order")]
    InfiniteOrder,
    #[error("minimal polynomial check failed: M(1) = {m} does not divide d = {d}")]
    MinPolyIndex { m: i64, d: u64 },
}

/// A simple component type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Simple {
    A(usize),
    D(usize),
    E(usize),
}

impl Simple {
    pub fn rank(self) -> usize {
        match self {
            Simple::A(n) | Simple::D(n) | Simple::E(n) => n,
        }
    }

    pub fn label(self) -> String {
        match self {
            Simple::A(n) => format!("A{n}"),
            Simple::D(n) => format!("D{n}"),
            Simple::E(n) => format!("E{n}"),
        }
    }

    pub fn coxeter_number(self) -> usize {
        match self {
            Simple::A(n) => n + 1,
            Simple::D(n) => 2 * n - 2,
            Simple::E(6) => 12,
            Simple::E(7) => 18,
            Simple::E(_) => 30,
        }
    }

    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            Simple::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            Simple::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Simple::E(n) => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan(self) -> IntMat {
        let n = self.rank();
        let mut g = IntMat::identity(n).scale(2);
        for (a, b) in self.edges() {
            g[(a, b)] = -1;
            g[(b, a)] = -1;
        }
        g
    }

    fn parse(s: &str) -> Option<Simple> {
        let s = s.trim();
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().ok()?;
        match head {
            "A" | "a" if n >= 1 => Some(Simple::A(n)),
            "D" | "d" if n >= 4 => Some(Simple::D(n)),
            "E" | "e" if (6..=8).contains(&n) => Some(Simple::E(n)),
            _ => None,
        }
    }
}

/// A simply laced root lattice with its enumerated roots.
#[derive(Debug, Clone)]
pub struct RootLattice {
    label: String,
    components: Vec<Simple>,
    gram: IntMat,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootLattice {
    /// Builds the lattice for a label such as `"E8"` or `"A2+A1"`.
    pub fn build(label: &str) -> Result<Self, LatticeError> {
        let components: Option<Vec<Simple>> = label.split('+').map(Simple::parse).collect();
        let components = components.ok_or_else(|| LatticeError::UnknownType(label.to_string()))?;
        let rank: usize = components.iter().map(|c| c.rank()).sum();
        let mut gram = IntMat::zeros(rank, rank);
        let mut off = 0;
        for c in &components {
            let g = c.cartan();
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    gram[(off + i, off + j)] = g[(i, j)];
                }
            }
            off += c.rank();
        }
        let roots = enumerate_roots(&gram);
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let label = components.iter().map(|c| c.label()).collect::<Vec<_>>().join("+");
        Ok(RootLattice { label, components, gram, roots, index })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[Simple] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let gb = self.gram.apply(b);
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    fn check_index(&self, i: usize) -> Result<(), LatticeError> {
        if i == 0 || i > self.rank() {
            Err(LatticeError::IndexOutOfRange { index: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    /// Matrix of the simple reflection `w_i` (1-based).
    pub fn reflection(&self, i: usize) -> Result<IntMat, LatticeError> {
        self.check_index(i)?;
        let n = self.rank();
        let mut m = IntMat::identity(n);
        for j in 0..n {
            m[(i - 1, j)] -= self.gram[(i - 1, j)];
        }
        Ok(m)
    }

    /// Whether a matrix preserves the Gram form.
    pub fn is_isometry(&self, m: &IntMat) -> bool {
        m.rows() == self.rank() && m.cols() == self.rank() && &(&m.transpose() * &self.gram) * m == self.gram
    }
}

/// Breadth-first closure of the simple roots under simple reflections.
fn enumerate_roots(gram: &IntMat) -> Vec<Vec<i64>> {
    let n = gram.rows();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let gv = gram.apply(&v);
        for i in 0..n {
            if gv[i] == 0 {
                continue;
            }
            let mut r = v.clone();
            r[i] -= gv[i];
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}

/// An isometry of a root lattice with its order and ellipticity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeAut {
    matrix: IntMat,
    order: u64,
    elliptic: bool,
}

const ORDER_LIMIT: u64 = 10_000;

impl LatticeAut {
    pub fn from_matrix(lattice: &RootLattice, matrix: IntMat) -> Result<Self, LatticeError> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Err(LatticeError::BadShape(lattice.rank()));
        }
        if !lattice.is_isometry(&matrix) {
            return Err(LatticeError::NotAnIsometry);
        }
        let order = matrix.order(ORDER_LIMIT).ok_or(LatticeError::InfiniteOrder)?;
        let n = matrix.rows();
        let elliptic = n > 0 && IntMat::identity(n).sub(&matrix).det() != 0;
        Ok(LatticeAut { matrix, order, elliptic })
    }

    /// Product of simple reflections, `[i, j]` meaning `w_i ∘ w_j`.
    pub fn from_word(lattice: &RootLattice, word: &[usize]) -> Result<Self, LatticeError> {
        let mut m = IntMat::identity(lattice.rank());
        for &i in word {
            m = &m * &lattice.reflection(i)?;
        }
        Self::from_matrix(lattice, m)
    }

    pub fn minus_identity(lattice: &RootLattice) -> Self {
        Self::from_matrix(lattice, IntMat::identity(lattice.rank()).scale(-1)).expect("-1 is an isometry")
    }

    /// Diagram automorphism sending `α_i` to `α_{perm[i-1]}` (1-based images).
    pub fn diagram(lattice: &RootLattice, perm: &[usize]) -> Result<Self, LatticeError> {
        let n = lattice.rank();
        if perm.len() != n {
            return Err(LatticeError::BadShape(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            lattice.check_index(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(LatticeError::NotDiagramAutomorphism);
            }
        }
        let g = lattice.gram();
        for i in 0..n {
            for j in 0..n {
                if g[(perm[i] - 1, perm[j] - 1)] != g[(i, j)] {
                    return Err(LatticeError::NotDiagramAutomorphism);
                }
            }
        }
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(perm[i] - 1, i)] = 1;
        }
        Self::from_matrix(lattice, m)
    }

    /// `c^e` for a Coxeter word `c`.
    pub fn coxeter_power(lattice: &RootLattice, word: &[usize], e: u64) -> Result<Self, LatticeError> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=lattice.rank()).collect::<Vec<_>>() {
            return Err(LatticeError::NotCoxeterWord);
        }
        let c = Self::from_word(lattice, word)?;
        Self::from_matrix(lattice, c.matrix.pow(e))
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_elliptic(&self) -> bool {
        self.elliptic
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.apply(v)
    }

    /// `w^k v` for any integer `k`.
    pub fn apply_pow(&self, k: i64, v: &[i64]) -> Vec<i64> {
        let k = k.rem_euclid(self.order as i64);
        let mut out = v.to_vec();
        for _ in 0..k {
            out = self.matrix.apply(&out);
        }
        out
    }

    pub fn power(&self, k: i64) -> IntMat {
        self.matrix.pow(k.rem_euclid(self.order as i64) as u64)
    }

    pub fn compose(&self, lattice: &RootLattice, other: &LatticeAut) -> LatticeAut {
        Self::from_matrix(lattice, &self.matrix * &other.matrix).expect("composition of isometries")
    }

    pub fn inverse(&self, lattice: &RootLattice) -> LatticeAut {
        Self::from_matrix(lattice, self.power(-1)).expect("inverse of an isometry")
    }
}

/// A residue tuple, one entry per nontrivial invariant factor.
pub type Class = Vec<i64>;

/// `Λ / (1 - w)Λ` presented through a Smith normal form.
#[derive(Debug, Clone)]
pub struct CoinvariantGroup {
    factors: Vec<i64>,
    positions: Vec<usize>,
    u: IntMat,
    u_inv: IntMat,
}

impl CoinvariantGroup {
    pub fn new(w: &LatticeAut) -> Result<Self, LatticeError> {
        if !w.is_elliptic() {
            return Err(LatticeError::NotElliptic);
        }
        let n = w.matrix().rows();
        let s = smith_normal_form(&IntMat::identity(n).sub(w.matrix()));
        let mut factors = Vec::new();
        let mut positions = Vec::new();
        for (i, &d) in s.diag.iter().enumerate() {
            if d != 1 {
                factors.push(d);
                positions.push(i);
            }
        }
        Ok(CoinvariantGroup { factors, positions, u: s.u, u_inv: s.u_inv })
    }

    /// Nontrivial invariant factors, ascending and dividing each other.
    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn zero(&self) -> Class {
        vec![0; self.factors.len()]
    }

    pub fn project(&self, v: &[i64]) -> Class {
        let y = self.u.apply(v);
        self.positions.iter().zip(&self.factors).map(|(&p, &d)| y[p].rem_euclid(d)).collect()
    }

    pub fn lift(&self, c: &[i64]) -> Vec<i64> {
        let mut y = vec![0; self.u.rows()];
        for ((&p, &d), &r) in self.positions.iter().zip(&self.factors).zip(c) {
            y[p] = r.rem_euclid(d);
        }
        self.u_inv.apply(&y)
    }

    /// The generator `x_i` as a class.
    pub fn generator(&self, i: usize) -> Class {
        let mut c = self.zero();
        c[i] = 1;
        c
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Class {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect()
    }

    pub fn neg(&self, a: &[i64]) -> Class {
        a.iter().zip(&self.factors).map(|(x, d)| (-x).rem_euclid(*d)).collect()
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Class {
        a.iter().zip(&self.factors).map(|(x, d)| (k * x).rem_euclid(*d)).collect()
    }

    /// Mixed-radix index, first generator most significant.
    pub fn index_of(&self, c: &[i64]) -> usize {
        c.iter().zip(&self.factors).fold(0usize, |acc, (x, d)| acc * (*d as usize) + x.rem_euclid(*d) as usize)
    }

    pub fn class_at(&self, mut idx: usize) -> Class {
        let mut c = vec![0; self.factors.len()];
        for (slot, &d) in c.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        c
    }

    pub fn classes(&self) -> impl Iterator<Item = Class> + '_ {
        (0..self.order()).map(|i| self.class_at(i))
    }

    /// Whether `v ∈ (1 - w)Λ`.
    pub fn is_trivial(&self, v: &[i64]) -> bool {
        self.project(v).iter().all(|&x| x == 0)
    }

    pub fn u(&self) -> &IntMat {
        &self.u
    }

    /// Rows of `U` carrying the nontrivial invariant factors.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// Minimal polynomial of a finite-order integer matrix, as a product of
/// cyclotomic polynomials `Φ_k` (`k | order`) that are singular at the matrix.
pub fn minimal_polynomial(m: &IntMat, order: u64) -> Vec<i64> {
    let mut poly = vec![1i64];
    for k in 1..=order {
        if !order.is_multiple_of(k) {
            continue;
        }
        let phi = cyclotomic_polynomial(k as u32);
        if m.eval_poly(&phi).det() == 0 {
            poly = poly_mul(&poly, &phi);
        }
    }
    debug_assert!(m.eval_poly(&poly) == IntMat::zeros(m.rows(), m.cols()));
    poly
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(p(t) - p(1)) / (t - 1)` by synthetic division.
pub fn divided_difference_at_one(p: &[i64]) -> Vec<i64> {
    let deg = p.len() - 1;
    if deg == 0 {
        return vec![0];
    }
    let mut q = vec![0; deg];
    let mut acc = 0;
    for k in (1..=deg).rev() {
        acc += p[k];
        q[k - 1] = acc;
    }
    q
}

/// The alternating pairings attached to an elliptic `w`, as exponents of `ζ_d`.
#[derive(Debug, Clone)]
pub struct Pairings {
    d: u64,
    minpoly: Vec<i64>,
    m: i64,
    /// `d0 · G · M0(w)`: `⟨α, β⟩_w = ζ^{αᵀ P β}`.
    reeder: IntMat,
    /// `Σ_j j (w^j)ᵀ G`: `C(α, β) = ζ^{αᵀ L β}`.
    lepowsky: IntMat,
}

impl Pairings {
    pub fn new(lattice: &RootLattice, w: &LatticeAut) -> Result<Self, LatticeError> {
        if !w.is_elliptic() {
            return Err(LatticeError::NotElliptic);
        }
        let d = w.order();
        let minpoly = minimal_polynomial(w.matrix(), d);
        let n = lattice.rank();
        if w.matrix().eval_poly(&minpoly) != IntMat::zeros(n, n) {
            return Err(LatticeError::NotElliptic);
        }
        let m: i64 = minpoly.iter().sum();
        if m == 0 || d as i64 % m != 0 {
            return Err(LatticeError::MinPolyIndex { m, d });
        }
        let d0 = d as i64 / m;
        let m0 = divided_difference_at_one(&minpoly);
        let reeder = (lattice.gram() * &w.matrix().eval_poly(&m0)).scale(d0);
        let mut lepowsky = IntMat::zeros(n, n);
        let mut wj = IntMat::identity(n);
        for j in 1..d {
            wj = &wj * w.matrix();
            lepowsky = lepowsky.add(&(&wj.transpose() * lattice.gram()).scale(j as i64));
        }
        Ok(Pairings { d, minpoly, m, reeder, lepowsky })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.minpoly
    }

    /// `m = M(1)`.
    pub fn m(&self) -> i64 {
        self.m
    }

    fn bilinear(&self, mat: &IntMat, a: &[i64], b: &[i64]) -> u64 {
        let mb = mat.apply(b);
        let s: i64 = a.iter().zip(&mb).map(|(x, y)| x * y).sum();
        s.rem_euclid(self.d as i64) as u64
    }

    /// Exponent of `⟨α, β⟩_w` through the minimal polynomial.
    pub fn pairing_w(&self, a: &[i64], b: &[i64]) -> u64 {
        self.bilinear(&self.reeder, a, b)
    }

    /// Exponent of `C(α, β) = ζ^{Σ j (w^j α, β)}`.
    pub fn pairing_lepowsky(&self, a: &[i64], b: &[i64]) -> u64 {
        self.bilinear(&self.lepowsky, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (label, count) in [("A1", 2), ("A2", 6), ("A3", 12), ("D4", 24), ("D5", 40), ("E6", 72), ("E7", 126), ("E8", 240)] {
            assert_eq!(RootLattice::build(label).unwrap().roots().len(), count, "{label}");
        }
        assert_eq!(RootLattice::build("A2+A1").unwrap().roots().len(), 8);
        assert!(RootLattice::build("F4").is_err());
    }

    #[test]
    fn roots_sorted_and_closed_under_negation() {
        let l = RootLattice::build("D4").unwrap();
        let r = l.roots();
        assert!(r.windows(2).all(|w| w[0] < w[1]));
        for v in r {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            assert!(l.root_index(&neg).is_some());
            assert_eq!(l.inner(v, v), 2);
        }
    }

    #[test]
    fn coxeter_orders() {
        let a2 = RootLattice::build("A2").unwrap();
        let c = LatticeAut::from_word(&a2, &[1, 2]).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.is_elliptic());
        assert_eq!(IntMat::identity(2).sub(c.matrix()).det(), 3);
        let d4 = RootLattice::build("D4").unwrap();
        assert_eq!(LatticeAut::from_word(&d4, &[2, 1, 3, 4]).unwrap().order(), 6);
        let id = LatticeAut::from_word(&d4, &[]).unwrap();
        assert_eq!(id.order(), 1);
        assert!(!id.is_elliptic());
        assert!(LatticeAut::from_word(&d4, &[5]).is_err());
    }

    #[test]
    fn e8_coxeter_powers() {
        let e8 = RootLattice::build("E8").unwrap();
        let word: Vec<usize> = (1..=8).collect();
        assert_eq!(LatticeAut::from_word(&e8, &word).unwrap().order(), 30);
        let w5 = LatticeAut::coxeter_power(&e8, &word, 6).unwrap();
        assert_eq!(w5.order(), 5);
        assert!(w5.is_elliptic());
        let w2 = LatticeAut::coxeter_power(&e8, &word, 15).unwrap();
        assert_eq!(w2, LatticeAut::minus_identity(&e8));
        assert!(LatticeAut::coxeter_power(&e8, &[1, 2], 1).is_err());
    }

    #[test]
    fn diagram_automorphisms() {
        let d4 = RootLattice::build("D4").unwrap();
        let t = LatticeAut::diagram(&d4, &[3, 2, 4, 1]).unwrap();
        assert_eq!(t.order(), 3);
        assert!(!t.is_elliptic());
        assert_eq!(LatticeAut::diagram(&d4, &[2, 1, 3, 4]), Err(LatticeError::NotDiagramAutomorphism));
    }

    #[test]
    fn coinvariant_examples() {
        let a2 = RootLattice::build("A2").unwrap();
        let c = LatticeAut::from_word(&a2, &[1, 2]).unwrap();
        assert_eq!(CoinvariantGroup::new(&c).unwrap().factors(), &[3]);
        let e8 = RootLattice::build("E8").unwrap();
        let g = CoinvariantGroup::new(&LatticeAut::minus_identity(&e8)).unwrap();
        assert_eq!(g.factors(), &[2; 8]);
        let word: Vec<usize> = (1..=8).collect();
        let w5 = LatticeAut::coxeter_power(&e8, &word, 6).unwrap();
        assert_eq!(CoinvariantGroup::new(&w5).unwrap().factors(), &[5, 5]);
        let id = LatticeAut::from_word(&a2, &[]).unwrap();
        assert!(CoinvariantGroup::new(&id).is_err());
    }

    #[test]
    fn project_lift_round_trip() {
        let e8 = RootLattice::build("E8").unwrap();
        let word: Vec<usize> = (1..=8).collect();
        let w = LatticeAut::coxeter_power(&e8, &word, 10).unwrap();
        let g = CoinvariantGroup::new(&w).unwrap();
        assert_eq!(g.factors(), &[3, 3, 3, 3]);
        for c in g.classes() {
            assert_eq!(g.project(&g.lift(&c)), c);
        }
        for r in e8.roots() {
            let wr = w.apply(r);
            assert_eq!(g.project(r), g.project(&wr));
        }
    }

    #[test]
    fn minus_identity_pairing() {
        let d4 = RootLattice::build("D4").unwrap();
        let w = LatticeAut::minus_identity(&d4);
        let p = Pairings::new(&d4, &w).unwrap();
        assert_eq!(p.minimal_polynomial(), &[1, 1]);
        for a in d4.roots() {
            for b in d4.roots() {
                let e = d4.inner(a, b).rem_euclid(2) as u64;
                assert_eq!(p.pairing_w(a, b), e);
                assert_eq!(p.pairing_lepowsky(a, b), e);
            }
        }
    }

    #[test]
    fn divided_difference() {
        // (t^2 + t + 1 - 3) / (t - 1) = t + 2
        assert_eq!(divided_difference_at_one(&[1, 1, 1]), vec![2, 1]);
        assert_eq!(divided_difference_at_one(&[1, 1]), vec![1]);
    }
}
