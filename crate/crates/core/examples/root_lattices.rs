//! Root lattices, automorphisms and coinvariant groups.

use graded_lie::lattice::{CoinvariantGroup, LatticeAut, RootLattice};

fn main() {
    for label in ["A2", "D4", "E6", "E7", "E8"] {
        let lat = RootLattice::build(label).unwrap();
        let word: Vec<usize> = (1..=lat.rank()).collect();
        let c = LatticeAut::from_word(&lat, &word).unwrap();
        println!("{label}: rank {}, {} roots, Coxeter number {}", lat.rank(), lat.roots().len(), c.order());
    }

    let e8 = RootLattice::build("E8").unwrap();
    for power in [15, 10, 6] {
        let w = LatticeAut::coxeter_power(&e8, &[1, 2, 3, 4, 5, 6, 7, 8], power).unwrap();
        let group = CoinvariantGroup::new(&w).unwrap();
        println!(
            "E8, c^{power}: order {}, elliptic {}, coinvariants {:?} ({} classes)",
            w.order(),
            w.is_elliptic(),
            group.factors(),
            group.order()
        );
    }
}
