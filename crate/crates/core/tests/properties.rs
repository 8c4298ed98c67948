use std::sync::OnceLock;

use graded_lie::central_ext::ExtElement;
use graded_lie::cyclotomic::CycNum;
use graded_lie::datum::{CocycleChoice, InputDatum};
use graded_lie::epsilon::EpsilonKind;
use graded_lie::lattice::{LatticeAut, RootLattice};
use graded_lie::lie_algebra::GradedLieAlgebra;
use graded_lie::linalg::SparseVec;
use graded_lie::reps::{root_sum_check, HeisenbergRep};
use proptest::prelude::*;

const ORDERS: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 30];

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-20i64..=20, order as usize).prop_map(move |cs| {
        let mut x = CycNum::zero(order);
        for (k, c) in cs.iter().enumerate() {
            x += &CycNum::root_of_unity(order, k as i64).scale_int(*c);
        }
        x
    })
}

fn cyc_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(ORDERS).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!((&b * &a).checked_div(&a).unwrap(), b.clone());
        }
    }

    #[test]
    fn galois_is_a_ring_homomorphism((a, b, _) in cyc_triple(), s in 1i64..60) {
        let n = a.order() as i64;
        prop_assume!(num_integer::gcd(s, n) == 1);
        let g = |x: &CycNum| x.galois(s).unwrap();
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn embedding_round_trips((a, b, _) in cyc_triple(), m in 1u32..4) {
        let n = a.order() * m;
        let (ea, eb) = (a.embed(n).unwrap(), b.embed(n).unwrap());
        prop_assert_eq!(ea.restrict(a.order()).unwrap().coeffs(), a.coeffs());
        prop_assert_eq!(&ea * &eb, (&a * &b).embed(n).unwrap());
    }

    #[test]
    fn roots_of_unity_are_canonical(n in 1u32..=30, k in -100i64..100) {
        let z = CycNum::root_of_unity(n, k);
        prop_assert!(z.pow(n as i64).unwrap().is_one());
        prop_assert_eq!(z.coeffs(), CycNum::root_of_unity(n, k.rem_euclid(n as i64)).coeffs());
        let ord = n / num_integer::gcd(n, k.unsigned_abs() as u32).max(1);
        let ord = if k == 0 { 1 } else { ord };
        prop_assert!(z.pow(ord as i64).unwrap().is_one());
        for e in 1..ord {
            prop_assert!(!z.pow(e as i64).unwrap().is_one());
        }
    }

    #[test]
    fn root_sums(d in 1u32..=12, seed in any::<u64>()) {
        prop_assert!(root_sum_check(d, 5, seed).is_ok());
    }
}

struct Fixture {
    datum: InputDatum,
    alg: GradedLieAlgebra,
}

fn fixtures() -> &'static Vec<Fixture> {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mk = |label: &str, w: &dyn Fn(&RootLattice) -> LatticeAut, eps| {
            let lat = RootLattice::build(label).unwrap();
            let w = w(&lat);
            let datum = InputDatum::new(lat, w, CocycleChoice::Snf, eps).unwrap();
            let alg = GradedLieAlgebra::construct(InputDatum::new(datum.lattice().clone(), datum.w().clone(), CocycleChoice::Snf, eps).unwrap()).unwrap();
            Fixture { datum, alg }
        };
        let cox = |l: &RootLattice| LatticeAut::from_word(l, &(1..=l.rank()).collect::<Vec<_>>()).unwrap();
        vec![
            mk("A2", &cox, EpsilonKind::EpsW),
            mk("A3", &cox, EpsilonKind::EpsW),
            mk("D4", &cox, EpsilonKind::EpsW),
            mk("D4", &|l| LatticeAut::minus_identity(l), EpsilonKind::Trivial),
            mk("E8", &|l| LatticeAut::coxeter_power(l, &[1, 2, 3, 4, 5, 6, 7, 8], 6).unwrap(), EpsilonKind::EpsW),
        ]
    })
}

fn lattice_vec(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
}

fn fixture_and_vectors() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (0..fixtures().len()).prop_flat_map(|i| {
        let r = fixtures()[i].datum.lattice().rank();
        (Just(i), lattice_vec(r), lattice_vec(r), lattice_vec(r))
    })
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn root(i: usize, k: usize) -> Vec<i64> {
    let roots = fixtures()[i].datum.lattice().roots();
    roots[k % roots.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_words_are_isometries(label in prop::sample::select(&["A3", "D5", "E6", "E8"][..]), word in prop::collection::vec(1usize..=8, 0..12)) {
        let lat = RootLattice::build(label).unwrap();
        let word: Vec<usize> = word.into_iter().map(|i| (i - 1) % lat.rank() + 1).collect();
        let w = LatticeAut::from_word(&lat, &word).unwrap();
        let m = w.matrix();
        prop_assert_eq!(&(&m.transpose() * lat.gram()) * m, lat.gram().clone());
        prop_assert_eq!(w.power(w.order() as i64), graded_lie::intmat::IntMat::identity(lat.rank()));
    }

    #[test]
    fn pairing_is_bilinear_and_skew((i, a, a2, b) in fixture_and_vectors()) {
        let f = &fixtures()[i];
        let p = f.datum.pairings();
        let d = f.datum.d();
        prop_assert_eq!((p.pairing_w(&a, &b) + p.pairing_w(&a2, &b)) % d, p.pairing_w(&add(&a, &a2), &b));
        prop_assert_eq!((p.pairing_w(&a, &b) + p.pairing_w(&b, &a)) % d, 0);
        prop_assert_eq!(p.pairing_w(&a, &a), 0);
        prop_assert_eq!(p.pairing_w(&a, &b), p.pairing_lepowsky(&a, &b));
    }

    #[test]
    fn projection_is_a_homomorphism((i, a, b, _) in fixture_and_vectors()) {
        let f = &fixtures()[i];
        let g = f.datum.group();
        prop_assert_eq!(g.project(&add(&a, &b)), g.add(&g.project(&a), &g.project(&b)));
        let wa = f.datum.w().apply(&a);
        let diff: Vec<i64> = a.iter().zip(&wa).map(|(x, y)| x - y).collect();
        prop_assert_eq!(g.project(&diff), g.zero());
        prop_assert_eq!(g.project(&g.lift(&g.project(&a))), g.project(&a));
    }

    #[test]
    fn elliptic_elements_fix_no_root(i in 0..5usize, k in 0usize..240) {
        let f = &fixtures()[i];
        let r = root(i, k);
        prop_assert_ne!(f.datum.w().apply(&r), r);
    }

    #[test]
    fn epsilon_is_bilinear((i, a, a2, b) in fixture_and_vectors()) {
        let f = &fixtures()[i];
        let eps = |x: &[i64], y: &[i64]| f.datum.eps(x, y);
        prop_assert_eq!(eps(&add(&a, &a2), &b), &eps(&a, &b) * &eps(&a2, &b));
        prop_assert_eq!(eps(&a, &add(&b, &a2)), &eps(&a, &b) * &eps(&a, &a2));
    }

    #[test]
    fn extension_is_a_group(i in 0..5usize, seed in any::<u64>()) {
        use rand::SeedableRng;
        let ext = fixtures()[i].datum.extension();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (ext.random_element(&mut rng), ext.random_element(&mut rng), ext.random_element(&mut rng));
        prop_assert_eq!(ext.mul(&ext.mul(&a, &b), &c), ext.mul(&a, &ext.mul(&b, &c)));
        prop_assert_eq!(ext.mul(&a, &ext.inv(&a)), ext.identity());
        let z = ext.central(1);
        prop_assert_eq!(ext.mul(&z, &a), ext.mul(&a, &z));
        let comm = ext.group_commutator(&a, &b);
        prop_assert_eq!(comm.cls.clone(), ext.group().zero());
        prop_assert_eq!(comm.e, ext.commutator(&a.cls, &b.cls));
    }
}

fn sparse(alg: &GradedLieAlgebra, coeffs: &[(usize, i64)]) -> SparseVec {
    let n = alg.field_order();
    let mut v: Vec<(usize, CycNum)> = coeffs
        .iter()
        .map(|&(k, c)| (k % alg.dim(), CycNum::from_int(n, c)))
        .collect();
    v.sort_by_key(|x| x.0);
    v.dedup_by_key(|x| x.0);
    v.retain(|x| !x.1.is_zero());
    v
}

fn lie_vec() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..248, -3i64..=3), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(i in 0..5usize, x in lie_vec(), y in lie_vec(), z in lie_vec()) {
        let alg = &fixtures()[i].alg;
        let t = alg.table();
        let (x, y, z) = (sparse(alg, &x), sparse(alg, &y), sparse(alg, &z));
        let neg: SparseVec = t.bracket(&y, &x).into_iter().map(|(k, c)| (k, -c)).collect();
        prop_assert_eq!(t.bracket(&x, &y), neg);
        let mut acc = graded_lie::linalg::Acc::new();
        acc.add_vec(&t.bracket(&x, &t.bracket(&y, &z)));
        acc.add_vec(&t.bracket(&y, &t.bracket(&z, &x)));
        acc.add_vec(&t.bracket(&z, &t.bracket(&x, &y)));
        prop_assert!(acc.finish().is_empty());
    }

    #[test]
    fn wtilde_preserves_brackets(i in 0..5usize, x in lie_vec(), y in lie_vec()) {
        let alg = &fixtures()[i].alg;
        let t = alg.table();
        let w = alg.wtilde();
        let (x, y) = (sparse(alg, &x), sparse(alg, &y));
        prop_assert_eq!(w.apply(&t.bracket(&x, &y)), t.bracket(&w.apply(&x), &w.apply(&y)));
    }
}

fn e8_rep() -> &'static HeisenbergRep {
    static CELL: OnceLock<HeisenbergRep> = OnceLock::new();
    CELL.get_or_init(|| HeisenbergRep::induce(fixtures()[4].datum.extension(), 1, &[]).unwrap())
}

fn ext_element() -> impl Strategy<Value = ExtElement> {
    (0u64..5, 0i64..5, 0i64..5).prop_map(|(e, a, b)| ExtElement { e, cls: vec![a, b] })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn heisenberg_rep_is_a_homomorphism(a in ext_element(), b in ext_element()) {
        let rep = e8_rep();
        let ext = rep.extension();
        let ab = ext.mul(&a, &b);
        prop_assert_eq!(rep.monomial(&a).compose(&rep.monomial(&b)), rep.monomial(&ab));
        let n = rep.field_order();
        prop_assert_eq!(rep.matrix(&a).mul(&rep.matrix(&b)), rep.monomial(&ab).to_matrix(n));
    }

    #[test]
    fn central_character(e in 0u64..5) {
        let rep = e8_rep();
        let m = rep.matrix(&rep.extension().central(e));
        let z = CycNum::root_of_unity(5, e as i64).embed(rep.field_order()).unwrap();
        prop_assert_eq!(m, graded_lie::linalg::Matrix::identity(rep.dim(), rep.field_order()).scale(&z));
    }
}
