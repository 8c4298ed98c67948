//! One PASS/FAIL line per acceptance criterion.

use std::time::Instant;

use graded_lie::cli::{self, coxeter_triviality, DatumSpec, Options};
use graded_lie::datum::{CocycleChoice, InputDatum};
use graded_lie::epsilon::{Corrupted, EpsilonKind};
use graded_lie::folding_descent::{fixed_part, fold, galois_descend, killing_comparison};
use graded_lie::lattice::{LatticeAut, RootLattice};
use graded_lie::lie_algebra::{z_bracket_check, GradedLieAlgebra, Grading, JacobiMode};
use graded_lie::reps::{extend_to_g, pairing_sum_check, verify_rep_homomorphism, HeisenbergRep};

type Outcome = (bool, String);

fn algebra(case: &str) -> GradedLieAlgebra {
    GradedLieAlgebra::construct(DatumSpec::from_case(case).unwrap().datum().unwrap()).unwrap()
}

fn ade_up_to_rank_8() -> Vec<String> {
    let mut labels: Vec<String> = (1..=8).map(|n| format!("A{n}")).collect();
    labels.extend((4..=8).map(|n| format!("D{n}")));
    labels.extend(["E6", "E7", "E8"].map(String::from));
    labels
}

/// Every bundled case that is not a fold or descent case.
fn inventory() -> Vec<&'static str> {
    cli::case_names().into_iter().filter(|n| !n.starts_with("fold-") && !n.starts_with("descend-")).collect()
}

fn desk_scale() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for case in ["a1-minus1", "a2-coxeter", "a3-coxeter", "d4-coxeter"] {
        let alg = algebra(case);
        let lat = alg.datum().lattice();
        let dim_ok = alg.dim() == lat.rank() + lat.roots().len();
        let jac = alg.verify_jacobi(JacobiMode::Full).iter().all(|r| r.passed());
        let det = !alg.table().killing_form().det().is_zero();
        ok &= dim_ok && jac && det;
        notes.push(format!("{case} dim {}", alg.dim()));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 5.0;
    (ok, format!("{}; full Jacobi, Killing det nonzero; {secs:.2}s", notes.join(", ")))
}

fn e8_suite() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (case, d, h0, factors) in [
        ("e8-d2", 2usize, 120usize, vec![2i64; 8]),
        ("e8-d3", 3, 80, vec![3; 4]),
        ("e8-d5", 5, 48, vec![5, 5]),
    ] {
        let alg = algebra(case);
        let reports = alg.verify_jacobi(JacobiMode::Sampled { samples: 1_000_000, seed: 42 });
        let jac = reports.len() == 2 && reports.iter().all(|r| r.passed());
        let order = alg.wtilde().order(4 * d);
        let dims = Grading::compute(&alg).dims();
        let got_factors = alg.datum().group().factors().to_vec();
        let pass = alg.dim() == 248 && jac && order == Some(d) && dims[0] == h0 && got_factors == factors;
        ok &= pass;
        notes.push(format!("d={d}: dim {} h0 {} order {order:?} coinvariants {got_factors:?}", alg.dim(), dims[0]));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 600.0;
    (ok, format!("{}; {secs:.1}s", notes.join("; ")))
}

fn pairing_equality() -> Outcome {
    let mut pairs = 0;
    for case in inventory() {
        let datum = DatumSpec::from_case(case).unwrap().datum().unwrap();
        let p = datum.pairings();
        let roots = datum.lattice().roots();
        for a in roots {
            for b in roots {
                if p.pairing_w(a, b) != p.pairing_lepowsky(a, b) {
                    return (false, format!("{case}: {a:?}, {b:?}"));
                }
                pairs += 1;
            }
        }
    }
    (true, format!("{pairs} root pairs over {} data", inventory().len()))
}

fn input_datum_validity() -> Outcome {
    for case in inventory() {
        let spec = DatumSpec::from_case(case).unwrap();
        let lat = spec.lattice().unwrap();
        let w = spec.automorphism.build(&lat).unwrap();
        let datum = InputDatum::new(lat, w, CocycleChoice::Snf, EpsilonKind::EpsW).unwrap();
        let r = datum.validate();
        if !r.valid() {
            return (false, format!("{case}: {:?}", r.counterexamples));
        }
    }
    let datum = DatumSpec::from_case("a2-coxeter").unwrap().datum().unwrap();
    let roots = datum.lattice().roots();
    let (a, b) = (roots[0].clone(), roots.iter().find(|b| datum.lattice().inner(&roots[0], b) == -1).unwrap().clone());
    let bad = Corrupted { inner: datum.epsilon(), alpha: a, beta: b };
    let r = datum.validate_with(&bad);
    let witnessed = !r.valid() && !r.counterexamples.is_empty();
    (witnessed, format!("eps_w valid on {} data; corrupted control fails with {} witnesses", inventory().len(), r.counterexamples.len()))
}

fn pairing_sum() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for case in ["a2-coxeter", "d4-coxeter", "e8-d3", "e8-d5"] {
        let datum = DatumSpec::from_case(case).unwrap().datum().unwrap();
        let r = pairing_sum_check(&datum).unwrap();
        ok &= r.passed();
        notes.push(format!("{case} {} eligible", r.eligible));
    }
    (ok, format!("exhaustive: {}", notes.join(", ")))
}

fn z_bracket() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for case in ["a2-coxeter", "d4-coxeter", "e8-d3"] {
        let r = z_bracket_check(&algebra(case)).unwrap();
        ok &= r.is_ok();
        notes.push(format!("{case} {:?}", r));
    }
    (ok, format!("exhaustive: {}", notes.join(", ")))
}

fn rep_extension() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (case, dim) in [("e8-d5", 5usize), ("e8-d3", 9)] {
        let alg = algebra(case);
        let rep = HeisenbergRep::induce(alg.datum().extension(), 1, &[]).unwrap();
        let ext = extend_to_g(&alg, &rep).unwrap();
        let hom = verify_rep_homomorphism(&alg, &ext);
        ok &= rep.dim() == dim && hom.passed();
        let mut note = format!("{case}: dim {} on {} generator pairs", rep.dim(), hom.pairs_checked);
        if dim == 5 {
            let (rank, commutant) = (ext.image_rank(), ext.image_commutant_dim());
            let traceless = ext.generator_images().iter().all(|m| m.trace().is_zero());
            ok &= rank == 24 && commutant == 1 && traceless;
            note += &format!(", image dim {rank}, traceless, commutant {commutant}");
        }
        notes.push(note);
    }
    (ok, notes.join("; "))
}

fn folding_table() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (case, dim, ratio) in [("fold:A3C2", 10, "2"), ("fold:D5B4", 36, "2"), ("fold:D4G2", 14, "3"), ("fold:E6F4", 52, "2")] {
        let spec = DatumSpec::from_case(case).unwrap();
        let fcase = spec.folding_case().unwrap();
        let expected = fcase.expected.clone();
        let s = fold(&fcase).unwrap().summary;
        ok &= s.dim == dim && s.length_ratio == ratio && s.type_name == expected;
        notes.push(format!("{} dim {} ratio {}", s.type_name.unwrap_or_default(), s.dim, s.length_ratio));
    }
    let triv = match coxeter_triviality() {
        Ok(n) => format!("Coxeter pairing trivial on {n} irreducible lattices"),
        Err(l) => {
            ok = false;
            format!("Coxeter pairing nontrivial on {l}")
        }
    };
    (ok, format!("{}; {triv}", notes.join(", ")))
}

fn g2_over_q() -> Outcome {
    let spec = DatumSpec::from_case("descend:G2Q").unwrap();
    let folded = fold(&spec.folding_case().unwrap()).unwrap();
    let alg = &folded.algebra;
    let action = spec.galois_action(alg.datum()).unwrap();
    let form = galois_descend(alg, &action).unwrap();
    let fixed = fixed_part(alg, &form, &folded.phi).unwrap();
    let (ratio, square, congruent) = killing_comparison(alg, &form);
    let ok = form.basis.len() == 28
        && form.table.is_rational()
        && fixed.basis.len() == 14
        && fixed.table.is_rational()
        && fixed.table.verify_jacobi_full().passed()
        && square == Some(true)
        && congruent;
    (ok, format!("Q-form dim {}, fixed part dim {}, Killing det ratio {ratio} square {square:?}", form.basis.len(), fixed.basis.len()))
}

fn integrality() -> Outcome {
    let labels = ade_up_to_rank_8();
    for l in &labels {
        let lat = RootLattice::build(l).unwrap();
        let w = LatticeAut::minus_identity(&lat);
        let alg = GradedLieAlgebra::construct(InputDatum::new(lat, w, CocycleChoice::Snf, EpsilonKind::Trivial).unwrap()).unwrap();
        if !alg.table().is_integral() {
            return (false, format!("{l} has a non-integral constant"));
        }
    }
    (true, format!("{} types with w = -1, trivial ε", labels.len()))
}

fn determinism() -> Outcome {
    let opts = Options::default();
    let mut n = 0;
    for name in cli::case_names() {
        let spec = DatumSpec::from_case(name).unwrap();
        let run = || {
            let o = if name.starts_with("fold-") {
                cli::fold_case(&spec)
            } else if name.starts_with("descend-") {
                cli::descend(&spec)
            } else {
                cli::construct(&spec)
            };
            o.unwrap().artifact
        };
        let (a, b) = (run(), run());
        if a.is_none() || a != b {
            return (false, format!("{name} differs between runs"));
        }
        n += 1;
    }
    let rep_a = cli::rep(&DatumSpec::from_case("e8-d3").unwrap(), &opts).unwrap().artifact;
    let rep_b = cli::rep(&DatumSpec::from_case("e8-d3").unwrap(), &opts).unwrap().artifact;
    (rep_a.is_some() && rep_a == rep_b, format!("{n} named cases and one rep artifact byte-identical across runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("desk-scale construction", desk_scale),
        ("E8 suite", e8_suite),
        ("pairing equality", pairing_equality),
        ("input-datum validity", input_datum_validity),
        ("pairing-sum identity", pairing_sum),
        ("Z-bracket identity", z_bracket),
        ("representation extension", rep_extension),
        ("folding table", folding_table),
        ("G2 over Q", g2_over_q),
        ("integrality", integrality),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        println!("{} {:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, k + 1);
        if !ok {
            failed.push(*name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
