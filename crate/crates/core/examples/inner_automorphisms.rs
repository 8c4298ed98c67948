//! Inner automorphisms from coinvariant classes, and the lift of w.

use graded_lie::cli::DatumSpec;
use graded_lie::lie_algebra::{inner_automorphism, GradedLieAlgebra};

fn main() {
    let alg = GradedLieAlgebra::construct(DatumSpec::from_case("e8-d5").unwrap().datum().unwrap()).unwrap();
    let group = alg.datum().group();
    println!("coinvariants {:?}", group.factors());
    for c in group.classes() {
        let m = inner_automorphism(&alg, &c);
        println!(
            "class {c:?}: order {:?}, automorphism {}, commutes with w̃ {}",
            m.order(10),
            m.is_homomorphism(alg.table(), alg.table()).is_ok(),
            m.commutes_with(alg.wtilde())
        );
    }
    println!("w̃ has order {:?}", alg.wtilde().order(10));
    println!("traces of w̃^k: {:?}", alg.wtilde().power_traces(alg.d() as usize).iter().map(|t| t.to_string()).collect::<Vec<_>>());
}
