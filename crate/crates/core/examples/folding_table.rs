//! Fixed subalgebras under diagram automorphisms commuting with a Coxeter element.

use graded_lie::folding_descent::{fold, FoldingCase};

fn main() {
    println!("{:<6} {:>4} {:>5} {:>6} {:>6} {:>6}", "case", "dim", "type", "long", "short", "ratio");
    for (name, case) in FoldingCase::table() {
        let f = fold(&case).unwrap();
        let s = &f.summary;
        println!(
            "{name:<6} {:>4} {:>5} {:>6} {:>6} {:>6}",
            s.dim,
            s.type_name.as_deref().unwrap_or("?"),
            s.long_roots,
            s.short_roots,
            s.length_ratio
        );
        println!("       Cartan matrix {:?}", s.cartan);
    }
}
