//! The commutator pairing of a lattice automorphism, computed two ways.

use graded_lie::datum::{CocycleChoice, InputDatum};
use graded_lie::epsilon::EpsilonKind;
use graded_lie::lattice::{LatticeAut, RootLattice};

fn main() {
    let lat = RootLattice::build("E8").unwrap();
    let w = LatticeAut::coxeter_power(&lat, &[1, 2, 3, 4, 5, 6, 7, 8], 6).unwrap();
    let datum = InputDatum::new(lat, w, CocycleChoice::Snf, EpsilonKind::EpsW).unwrap();
    let p = datum.pairings();
    let roots = datum.lattice().roots();

    let mut hist = vec![0usize; datum.d() as usize];
    let mut agree = true;
    for a in roots {
        for b in roots {
            let e = p.pairing_w(a, b);
            agree &= e == p.pairing_lepowsky(a, b);
            hist[e as usize] += 1;
        }
    }
    println!("both formulas agree on all {} root pairs: {agree}", roots.len() * roots.len());
    println!("pairs by exponent of ζ5: {hist:?}");

    let (a, b) = (&roots[0], &roots[17]);
    println!("⟨{a:?}, {b:?}⟩ = ζ^{}", p.pairing_w(a, b));
    println!("ε_w at that pair = {}", datum.eps(a, b));
}
