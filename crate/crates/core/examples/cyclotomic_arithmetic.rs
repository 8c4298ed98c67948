//! Exact arithmetic in cyclotomic fields.

use graded_lie::cyclotomic::CycNum;

fn main() {
    let z6 = CycNum::root_of_unity(6, 1);
    let one = CycNum::one(6);
    // ζ_6 satisfies x² − x + 1
    let poly = &(&(&z6 * &z6) - &z6) + &one;
    println!("ζ6² − ζ6 + 1 = {poly}");

    let a = &z6 + &CycNum::from_int(6, 3);
    let inv = a.inv().expect("nonzero");
    println!("(ζ6 + 3)⁻¹ = {inv}");
    println!("check: {}", &a * &inv);

    println!("σ_5(ζ6) = {}", z6.galois(5).unwrap());
    println!("norm(ζ6 + 3) = {}", a.norm());

    let z3 = CycNum::root_of_unity(3, 1);
    let mixed = &z3 + &CycNum::root_of_unity(4, 1);
    println!("ζ3 + i lives at order {}: {mixed}", mixed.order());
    println!("json: {}", serde_json::to_string(&z6).unwrap());
}
