//! Jacobi identity: full on D4, sampled on E8, and a corrupted control.

use graded_lie::cli::DatumSpec;
use graded_lie::lie_algebra::{GradedLieAlgebra, JacobiMode};

fn main() {
    let d4 = GradedLieAlgebra::construct(DatumSpec::from_case("d4-coxeter").unwrap().datum().unwrap()).unwrap();
    for r in d4.verify_jacobi(JacobiMode::Full) {
        println!("D4 full: {} triples, passed {}", r.triples_checked, r.passed());
    }

    let e8 = GradedLieAlgebra::construct(DatumSpec::from_case("e8-d3").unwrap().datum().unwrap()).unwrap();
    for r in e8.verify_jacobi(JacobiMode::Sampled { samples: 100_000, seed: 42 }) {
        println!("E8 {:?}: {} triples, passed {}", r.mode, r.triples_checked, r.passed());
    }

    let (i, j) = d4.table().nonzero_pairs()[40];
    let bad = d4.table().corrupted(i, j);
    let r = bad.verify_jacobi_full();
    println!("corrupted D4 at ({i}, {j}): passed {}, witness {:?}", r.passed(), r.violation);
}
