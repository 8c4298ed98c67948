//! Builds E8 from an order-5 elliptic element and prints its grading.

use graded_lie::cli::{DatumSpec, structure_json};
use graded_lie::lie_algebra::{GradedLieAlgebra, Grading};

fn main() {
    let datum = DatumSpec::from_case("e8-d5").unwrap().datum().unwrap();
    println!("{}", datum.describe());
    let alg = GradedLieAlgebra::construct(datum).unwrap();
    println!("dim {}, {} nonzero brackets, field Q(ζ{})", alg.dim(), alg.table().num_nonzero(), alg.field_order());
    let g = Grading::compute(&alg);
    println!("graded pieces: {:?}", g.dims());
    let x = alg.labels()[8].clone();
    let y = alg.labels()[247].clone();
    let v = alg.table().basis_bracket(8, 247);
    println!("[{x}, {y}] = {:?}", v.iter().map(|(k, c)| format!("({c}) {}", alg.labels()[*k])).collect::<Vec<_>>());
    let json = structure_json(alg.labels(), alg.table(), Some(&g), Some(alg.d()));
    println!("export has {} bracket entries", json["brackets"].as_array().unwrap().len());
}
