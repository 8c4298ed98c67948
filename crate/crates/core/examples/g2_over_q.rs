//! A rational form of G2 obtained by folding D4 and descending from Q(ζ6).

use graded_lie::cli::DatumSpec;
use graded_lie::folding_descent::{check_conditions, fixed_part, fold, galois_descend, killing_comparison};

fn main() {
    let spec = DatumSpec::from_case("descend:G2Q").unwrap();
    let folded = fold(&spec.folding_case().unwrap()).unwrap();
    let alg = &folded.algebra;
    let action = spec.galois_action(alg.datum()).unwrap();
    println!("descent conditions: {:?}", check_conditions(alg, &action));

    let form = galois_descend(alg, &action).unwrap();
    println!("Q-form: dim {}, rational {}", form.basis.len(), form.table.is_rational());
    let (ratio, square, congruent) = killing_comparison(alg, &form);
    println!("Killing determinant ratio {ratio}, square {square:?}, congruent {congruent}");

    let g2 = fixed_part(alg, &form, &folded.phi).unwrap();
    println!("fixed part: dim {}, rational {}", g2.basis.len(), g2.table.is_rational());
    println!("Jacobi over Q: {}", g2.table.verify_jacobi_full().passed());
}
