//! Heisenberg representations of `H` and their extension to the degree-zero piece.

mod extension;
mod heisenberg;

use thiserror::Error;

pub use extension::{
    extend_to_g, orbit_constancy, pairing_sum_check, root_sum_check, verify_rep_homomorphism, ExtendedRep,
    PairingSumReport, RepHomReport,
};
pub use heisenberg::{maximal_isotropic, root_of_unity_at, HeisenbergRep, IsotropicSubgroup, Monomial};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("the character does not extend: {0}")]
    CharacterDoesNotExtend(String),
    #[error("the representation extension needs ε = ε_w")]
    EpsilonNotEpsW,
    #[error("π is not constant on the w-orbit of {0:?}")]
    OrbitNotConstant(Vec<i64>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central_ext::ExtElement;
    use crate::datum::{CocycleChoice, InputDatum};
    use crate::epsilon::EpsilonKind;
    use crate::lattice::{LatticeAut, RootLattice};
    use crate::lie_algebra::GradedLieAlgebra;

    fn datum(label: &str, word: &[usize], power: u64, eps: EpsilonKind) -> InputDatum {
        let lat = RootLattice::build(label).unwrap();
        let w = LatticeAut::coxeter_power(&lat, word, power).unwrap();
        InputDatum::new(lat, w, CocycleChoice::Snf, eps).unwrap()
    }

    fn e8(power: u64) -> InputDatum {
        datum("E8", &[1, 2, 3, 4, 5, 6, 7, 8], power, EpsilonKind::EpsW)
    }

    #[test]
    fn isotropic_lines_in_order_five_plane() {
        let d = e8(6);
        let ext = d.extension();
        let g = ext.group();
        let pair = |a: &[i64], b: &[i64]| ext.commutator(a, b);
        let a = maximal_isotropic(g, pair);
        assert_eq!(a.order(), 5);
        assert!(a.is_isotropic(pair) && a.is_maximal(g, pair));
        // every line of F_5^2 is isotropic and maximal
        let lines: Vec<Vec<i64>> = vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3], vec![1, 4]];
        for l in lines {
            let sub = IsotropicSubgroup {
                generators: vec![l.clone()],
                elements: (0..5).map(|k| g.scale(k, &l)).collect(),
                radical_order: 1,
            };
            assert!(sub.is_isotropic(pair) && sub.is_maximal(g, pair), "{l:?}");
        }
    }

    #[test]
    fn trivial_pairing_gives_characters() {
        let d = datum("A2", &[1, 2], 1, EpsilonKind::EpsW);
        let rep = HeisenbergRep::induce(d.extension(), 1, &[]).unwrap();
        assert_eq!(rep.subgroup().order(), d.group().order());
        assert_eq!(rep.dim(), 1);
        assert!(rep.check_homomorphism(1000, 1).is_ok());
    }

    #[test]
    fn lagrangian_for_minus_identity() {
        let lat = RootLattice::build("E8").unwrap();
        let w = LatticeAut::minus_identity(&lat);
        let d = InputDatum::new(lat, w, CocycleChoice::Snf, EpsilonKind::EpsW).unwrap();
        let ext = d.extension();
        let pair = |a: &[i64], b: &[i64]| ext.commutator(a, b);
        let a = maximal_isotropic(ext.group(), pair);
        assert_eq!(a.order(), 16);
        assert!(a.is_maximal(ext.group(), pair));
        let rep = HeisenbergRep::induce(ext, 1, &[]).unwrap();
        assert_eq!(rep.dim(), 16);
        assert!(rep.is_irreducible_by_characters());
    }

    #[test]
    fn order_five_heisenberg_rep() {
        let d = e8(6);
        let rep = HeisenbergRep::induce(d.extension(), 1, &[]).unwrap();
        assert_eq!(rep.dim(), 5);
        assert!(rep.check_homomorphism(10_000, 42).is_ok());
        assert!(rep.check_central_character());
        assert!(rep.is_irreducible_by_characters());
        assert_eq!(rep.commutant_dim(), 1);
    }

    #[test]
    fn central_characters_separate_reps() {
        let d = e8(6);
        let ext = d.extension();
        let a = HeisenbergRep::induce(ext, 1, &[]).unwrap();
        let b = HeisenbergRep::induce(ext, 2, &[]).unwrap();
        let z = ext.central(1);
        assert_ne!(a.trace(&z), b.trace(&z));
        assert!(b.check_homomorphism(1000, 7).is_ok());
        assert!(HeisenbergRep::induce(ext, 5, &[]).is_err());
    }

    #[test]
    fn twisted_character_is_still_a_rep() {
        let d = e8(10);
        let rep = HeisenbergRep::induce(d.extension(), 1, &[1, 2]).unwrap();
        assert!(rep.check_homomorphism(2000, 3).is_ok());
        assert_eq!(rep.commutant_dim(), 1);
    }

    #[test]
    fn extension_to_degree_zero_piece() {
        let alg = GradedLieAlgebra::construct(e8(6)).unwrap();
        let rep = HeisenbergRep::induce(alg.datum().extension(), 1, &[]).unwrap();
        let ext = extend_to_g(&alg, &rep).unwrap();
        assert_eq!(ext.num_generators(), 48);
        assert!(orbit_constancy(&ext));
        let report = verify_rep_homomorphism(&alg, &ext);
        assert!(report.passed(), "{report:?}");
        assert_eq!(ext.image_rank(), 24);
        assert_eq!(ext.image_commutant_dim(), 1);
        // every image is traceless
        assert!(ext.generator_images().iter().all(|m| m.trace().is_zero()));
        // ρ(ζ s(α)) = ζ ρ(s(α))
        let cls = alg.datum().class_of(&alg.datum().lattice().roots()[0]);
        let lhs = rep.matrix(&ExtElement { e: 1, cls: cls.clone() });
        let rhs = rep.matrix(&ExtElement { e: 0, cls }).scale(&crate::cyclotomic::CycNum::root_of_unity(5, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_of_a_character() {
        let alg = GradedLieAlgebra::construct(datum("A2", &[1, 2], 1, EpsilonKind::EpsW)).unwrap();
        let rep = HeisenbergRep::induce(alg.datum().extension(), 1, &[]).unwrap();
        let ext = extend_to_g(&alg, &rep).unwrap();
        assert_eq!(ext.num_generators(), 2);
        assert!(verify_rep_homomorphism(&alg, &ext).passed());
        // the degree-zero piece is abelian here, so any character is a representation
        let z0 = crate::lie_algebra::z_vector(&alg, &alg.datum().lattice().roots()[0]);
        let z1 = crate::lie_algebra::z_vector(&alg, &alg.datum().lattice().roots()[ext.representatives()[1]]);
        assert!(alg.table().bracket(&z0, &z1).is_empty());
    }

    #[test]
    fn extension_requires_eps_w() {
        let alg = GradedLieAlgebra::construct(datum("E8", &[1, 2, 3, 4, 5, 6, 7, 8], 10, EpsilonKind::OddVariant))
            .unwrap();
        let rep = HeisenbergRep::induce(alg.datum().extension(), 1, &[]).unwrap();
        assert!(matches!(extend_to_g(&alg, &rep), Err(RepError::EpsilonNotEpsW)));
    }

    #[test]
    fn pairing_sum_identity() {
        for d in [datum("A2", &[1, 2], 1, EpsilonKind::EpsW), datum("D4", &[2, 1, 3, 4], 1, EpsilonKind::EpsW), e8(10)] {
            let r = pairing_sum_check(&d).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = pairing_sum_check(&datum("D4", &[2, 1, 3, 4], 1, EpsilonKind::EpsW)).unwrap();
        assert!(r.eligible > 0);
    }

    #[test]
    fn root_sums_of_polynomials() {
        for d in [1, 2, 3, 5, 6, 12] {
            assert!(root_sum_check(d, 200, 42).is_ok());
        }
    }
}
