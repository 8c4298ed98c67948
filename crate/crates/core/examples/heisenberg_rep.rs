//! The 5-dimensional Heisenberg representation for E8 and its extension to the degree-0 piece.

use graded_lie::cli::DatumSpec;
use graded_lie::lie_algebra::GradedLieAlgebra;
use graded_lie::reps::{extend_to_g, verify_rep_homomorphism, HeisenbergRep};

fn main() {
    let alg = GradedLieAlgebra::construct(DatumSpec::from_case("e8-d5").unwrap().datum().unwrap()).unwrap();
    let rep = HeisenbergRep::induce(alg.datum().extension(), 1, &[]).unwrap();
    println!("isotropic subgroup: {:?}", rep.subgroup().elements);
    println!("dim {}, field Q(ζ{})", rep.dim(), rep.field_order());
    for (label, m) in rep.generators() {
        println!("{label}:");
        for i in 0..m.rows() {
            println!("  {}", m.row(i).iter().map(|c| format!("{c:>6}")).collect::<Vec<_>>().join(" "));
        }
    }
    println!("homomorphism on 1000 pairs: {:?}", rep.check_homomorphism(1000, 42));
    println!("commutant dim {}", rep.commutant_dim());

    let ext = extend_to_g(&alg, &rep).unwrap();
    let hom = verify_rep_homomorphism(&alg, &ext);
    println!(
        "{} generators, homomorphism on {} pairs: {}, image dim {}, commutant {}",
        ext.num_generators(),
        hom.pairs_checked,
        hom.passed(),
        ext.image_rank(),
        ext.image_commutant_dim()
    );
}
