use serde_json::{json, Value};

use super::report::{matrix_json, structure_json, to_pretty, vectors_json, Report};
use super::spec::DatumSpec;
use super::CliError;
use crate::datum::InputDatum;
use crate::epsilon::{eps_w_ratio_check, EpsilonKind};
use crate::folding_descent::{
    check_conditions, fixed_part, fold, galois_descend, is_equivariant, killing_comparison, pairing_is_trivial,
};
use crate::lattice::{LatticeAut, RootLattice};
use crate::lie_algebra::{
    graded_bracket_check, killing_orthogonality, projector_dims, root_label, z_bracket_check, GradedLieAlgebra,
    Grading, JacobiMode, LieError,
};
use crate::reps::{
    extend_to_g, orbit_constancy, pairing_sum_check, root_sum_check, verify_rep_homomorphism, HeisenbergRep,
};

/// Jacobi on every triple up to this dimension when no mode is given.
pub const FULL_JACOBI_LIMIT: usize = 80;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const REP_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Sampled,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub mode: Option<Mode>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { mode: None, seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES }
    }
}

impl Options {
    fn jacobi_mode(&self, dim: usize) -> JacobiMode {
        let full = match self.mode {
            Some(m) => m == Mode::Full,
            None => dim <= FULL_JACOBI_LIMIT,
        };
        if full {
            JacobiMode::Full
        } else {
            JacobiMode::Sampled { samples: self.samples, seed: self.seed }
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub artifact: Option<String>,
}

fn construct_checked(datum: InputDatum, report: &mut Report) -> Option<GradedLieAlgebra> {
    match GradedLieAlgebra::construct(datum) {
        Ok(alg) => {
            report.push("input-datum", true, "both input-datum properties hold on all root pairs");
            Some(alg)
        }
        Err(LieError::InvalidDatum(r)) => {
            report.push_with("input-datum", false, "not an input datum", serde_json::to_value(&r).ok());
            None
        }
        Err(e) => {
            report.push("input-datum", false, e.to_string());
            None
        }
    }
}

fn algebra_artifact(alg: &GradedLieAlgebra, grading: &Grading) -> Value {
    structure_json(alg.labels(), alg.table(), Some(grading), Some(alg.d()))
}

pub fn construct(spec: &DatumSpec) -> Result<Outcome, CliError> {
    let mut report = Report::new("construct", &spec.label());
    let datum = spec.datum()?;
    let Some(alg) = construct_checked(datum, &mut report) else {
        return Ok(Outcome { report, artifact: None });
    };
    let grading = Grading::compute(&alg);
    report.push(
        "construct",
        grading.total() == alg.dim(),
        format!("dim {}, grading dims {:?}", alg.dim(), grading.dims()),
    );
    Ok(Outcome { artifact: Some(to_pretty(&algebra_artifact(&alg, &grading))), report })
}

fn pairing_equality(datum: &InputDatum) -> Result<usize, (Vec<i64>, Vec<i64>)> {
    let roots = datum.lattice().roots();
    let p = datum.pairings();
    for a in roots {
        for b in roots {
            if p.pairing_w(a, b) != p.pairing_lepowsky(a, b) {
                return Err((a.clone(), b.clone()));
            }
        }
    }
    Ok(roots.len() * roots.len())
}

fn is_minus_identity(datum: &InputDatum) -> bool {
    let n = datum.lattice().rank();
    datum.w().matrix() == &crate::intmat::IntMat::identity(n).scale(-1)
}

pub fn verify(spec: &DatumSpec, opts: &Options) -> Result<Outcome, CliError> {
    let mut report = Report::new("verify", &spec.label());
    let datum = spec.datum()?;
    report.push_result("pairing-equality", pairing_equality(&datum), |n| format!("{n} root pairs"));
    let ext = datum.extension();
    report.push_result(
        "commutator-pairing",
        ext.verify_commutator(|a, b| datum.class_commutator(a, b)).map_err(|e| e.to_string()),
        |n| format!("{n} class pairs"),
    );
    if datum.epsilon().kind() == EpsilonKind::EpsW {
        report.push_result(
            "eps-ratio",
            eps_w_ratio_check(datum.lattice(), datum.pairings(), datum.epsilon()),
            |n| format!("{n} root pairs"),
        );
    }
    let Some(alg) = construct_checked(datum, &mut report) else {
        return Ok(Outcome { report, artifact: None });
    };
    report.push_result("antisymmetry", alg.verify_antisymmetry(), |n| format!("{n} basis pairs"));
    report.push("root-action", alg.verify_root_action(), "ad of simple coroots acts on root vectors by (α_i, β)");
    for (k, j) in alg.verify_jacobi(opts.jacobi_mode(alg.dim())).into_iter().enumerate() {
        let label = if k == 0 { "jacobi" } else { "jacobi-cartan-triples" };
        let detail = match &j.mode {
            JacobiMode::Full => format!("{} triples", j.triples_checked),
            JacobiMode::Sampled { samples, seed } => format!("{samples} sampled triples, seed {seed}"),
        };
        report.push_with(label, j.passed(), detail, j.violation.map(|v| json!(v)));
    }
    let killing = alg.table().killing_form();
    let rank = killing.rank();
    report.push("killing-nondegenerate", rank == alg.dim(), format!("rank {rank} of {}", alg.dim()));
    report.push_result("wtilde-automorphism", alg.verify_wtilde_homomorphism(), |n| format!("{n} basis pairs"));
    let order = alg.wtilde().order(4 * alg.d() as usize);
    report.push("wtilde-order", order == Some(alg.d() as usize), format!("order {order:?}, d = {}", alg.d()));
    let grading = Grading::compute(&alg);
    let proj = projector_dims(&alg);
    let dims: Vec<i64> = grading.dims().iter().map(|&x| x as i64).collect();
    report.push(
        "grading-dims",
        dims == proj && grading.total() == alg.dim(),
        format!("kernels {dims:?}, projector traces {proj:?}"),
    );
    report.push("z-span", grading.z_span_is_fixed(&alg), format!("Z-vectors span the degree-0 piece of dim {}", dims[0]));
    report.push_result("graded-bracket", graded_bracket_check(&alg, &grading, 6), |n| format!("{n} pairs"));
    report.push_result("killing-orthogonality", killing_orthogonality(&grading, &killing), |n| format!("{n} pairs"));
    if let Ok(r) = z_bracket_check(&alg) {
        report.push_result("z-bracket", r, |n| format!("{n} (orbit, root) pairs"));
    }
    if is_minus_identity(alg.datum()) && alg.datum().epsilon().kind() == EpsilonKind::Trivial {
        report.push("integrality", alg.table().is_integral(), "all structure constants are integers");
    }
    Ok(Outcome { artifact: Some(to_pretty(&algebra_artifact(&alg, &grading))), report })
}

pub fn fold_case(spec: &DatumSpec) -> Result<Outcome, CliError> {
    let mut report = Report::new("fold", &spec.label());
    let mut case = spec.folding_case()?;
    let expected = case.expected.take();
    let folded = match fold(&case) {
        Ok(f) => f,
        Err(e) => {
            report.push("fold", false, e.to_string());
            return Ok(Outcome { report, artifact: None });
        }
    };
    let s = &folded.summary;
    report.push("coxeter-pairing-trivial", s.coxeter_pairing_trivial, "⟨·,·⟩_c vanishes on all root pairs");
    report.push(
        "pinned-automorphism",
        folded.phi_homomorphism && folded.phi_order.is_some(),
        format!("bracket automorphism of order {:?}", folded.phi_order),
    );
    report.push(
        "fixed-dimension",
        s.dim == s.roots + s.rank,
        format!("dim {} = {} roots + rank {}", s.dim, s.roots, s.rank),
    );
    let type_ok = match &expected {
        Some(e) => s.type_name.as_deref() == Some(e.as_str()),
        None => s.type_name.is_some(),
    };
    report.push(
        "type",
        type_ok,
        format!(
            "{} ({} long, {} short, ratio {}), expected {}",
            s.type_name.as_deref().unwrap_or("unidentified"),
            s.long_roots,
            s.short_roots,
            s.length_ratio,
            expected.as_deref().unwrap_or("any")
        ),
    );
    report.push("cartan-subalgebra", s.cartan_self_centralizing, "abelian and self-centralizing");
    let j = folded.fixed_table.verify_jacobi_full();
    report.push_with("jacobi", j.passed(), format!("{} triples", j.triples_checked), j.violation.map(|v| json!(v)));
    let labels: Vec<String> = (1..=s.dim).map(|i| format!("v{i}")).collect();
    let mut art = structure_json(&labels, &folded.fixed_table, None, None);
    art["fold"] = serde_json::to_value(s).expect("summary serializes");
    art["embedding"] = vectors_json(&folded.fixed_basis);
    Ok(Outcome { report, artifact: Some(to_pretty(&art)) })
}

pub fn descend(spec: &DatumSpec) -> Result<Outcome, CliError> {
    let mut report = Report::new("descend", &spec.label());
    let (alg, phi) = if spec.fold.is_some() {
        match fold(&spec.folding_case()?) {
            Ok(f) => (f.algebra, Some(f.phi)),
            Err(e) => {
                report.push("fold", false, e.to_string());
                return Ok(Outcome { report, artifact: None });
            }
        }
    } else {
        match construct_checked(spec.datum()?, &mut report) {
            Some(a) => (a, None),
            None => return Ok(Outcome { report, artifact: None }),
        }
    };
    let action = spec.galois_action(alg.datum())?;
    let cond = check_conditions(&alg, &action);
    report.push_with(
        "descent-conditions",
        cond.all(),
        format!("σwσ⁻¹ = w^s: {}, s unit: {}, action on H: {}, pairing: {}, ε: {}", cond.a1, cond.a2, cond.a3, cond.pairing, cond.epsilon),
        None,
    );
    let form = match galois_descend(&alg, &action) {
        Ok(f) => f,
        Err(e) => {
            report.push("descent", false, e.to_string());
            return Ok(Outcome { report, artifact: None });
        }
    };
    report.push(
        "descent",
        form.basis.len() == alg.dim() && form.table.is_rational(),
        format!("fixed Q-dimension {} = dim {}, rational structure constants", form.basis.len(), alg.dim()),
    );
    let j = form.table.verify_jacobi_full();
    report.push_with("jacobi", j.passed(), format!("{} triples over Q", j.triples_checked), j.violation.map(|v| json!(v)));
    let (ratio, square, congruent) = killing_comparison(&alg, &form);
    report.push("killing-congruence", congruent, "PᵀKP equals the Killing form of the Q-form");
    report.push(
        "killing-square-class",
        square == Some(true),
        format!("det ratio {ratio} is a square: {square:?}"),
    );
    let mut art = structure_json(
        &(1..=form.basis.len()).map(|i| format!("q{i}")).collect::<Vec<_>>(),
        &form.table,
        None,
        None,
    );
    art["embedding"] = vectors_json(&form.basis);
    if let Some(phi) = phi {
        report.push("equivariance", is_equivariant(&alg, &action, &phi), "a_σ commutes with φ̃ on basis vectors");
        match fixed_part(&alg, &form, &phi) {
            Ok(fixed) => {
                report.push(
                    "fixed-part",
                    fixed.table.is_rational(),
                    format!("φ̃-fixed Q-form of dim {}", fixed.basis.len()),
                );
                art["fixed_part"] = structure_json(
                    &(1..=fixed.basis.len()).map(|i| format!("g{i}")).collect::<Vec<_>>(),
                    &fixed.table,
                    None,
                    None,
                );
            }
            Err(e) => report.push("fixed-part", false, e.to_string()),
        }
    }
    Ok(Outcome { report, artifact: Some(to_pretty(&art)) })
}

pub fn rep(spec: &DatumSpec, opts: &Options) -> Result<Outcome, CliError> {
    let mut report = Report::new("rep", &spec.label());
    let datum = spec.datum()?;
    let rs = spec.rep.clone().unwrap_or_default();
    let ext = datum.extension();
    let hrep = match HeisenbergRep::induce(ext, rs.central, &rs.twist) {
        Ok(r) => r,
        Err(e) => {
            report.push("induce", false, e.to_string());
            return Ok(Outcome { report, artifact: None });
        }
    };
    let pair = |a: &[i64], b: &[i64]| ext.commutator(a, b);
    let sub = hrep.subgroup();
    report.push(
        "maximal-isotropic",
        sub.is_isotropic(pair) && sub.is_maximal(ext.group(), pair),
        format!("order {} of {}, index {}", sub.order(), ext.group().order(), hrep.dim()),
    );
    let samples = if opts.mode == Some(Mode::Sampled) { opts.samples.min(REP_SAMPLES) } else { REP_SAMPLES };
    match hrep.check_homomorphism(samples, opts.seed) {
        Ok(n) => report.push("heisenberg-homomorphism", true, format!("{n} random pairs, seed {}", opts.seed)),
        Err((a, b)) => report.push_with("heisenberg-homomorphism", false, "product mismatch", Some(json!([a, b]))),
    }
    report.push("central-character", hrep.check_central_character(), format!("ρ(ζ^e) = ζ^({}e) I", rs.central));
    report.push(
        "character-norm",
        hrep.is_irreducible_by_characters(),
        format!("Σ|tr ρ(h)|² = {} against |H| = {}", hrep.character_norm(), ext.order()),
    );
    let cd = hrep.commutant_dim();
    report.push("commutant", cd == 1, format!("commutant dimension {cd}"));
    let mut art = json!({
        "schema": super::report::SCHEMA,
        "dim": hrep.dim(),
        "field_order": hrep.field_order(),
        "generators": hrep.generators().iter().map(|(l, m)| (l.clone(), matrix_json(m))).collect::<serde_json::Map<_, _>>(),
        "subgroup": sub.elements,
        "character": hrep.generator_phases().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    if datum.epsilon().kind() == EpsilonKind::EpsW {
        let Some(alg) = construct_checked(datum, &mut report) else {
            return Ok(Outcome { report, artifact: None });
        };
        let ext_rep = extend_to_g(&alg, &hrep).map_err(|e| CliError::Spec(e.to_string()))?;
        report.push("orbit-constancy", orbit_constancy(&ext_rep), "π is constant on w-orbits");
        let hom = verify_rep_homomorphism(&alg, &ext_rep);
        report.push_with(
            "rep-homomorphism",
            hom.passed(),
            format!("{} generator pairs, bracket and expansion routes", hom.pairs_checked),
            (!hom.passed()).then(|| serde_json::to_value(&hom).expect("serializes")),
        );
        let n = hrep.dim();
        let rank = ext_rep.image_rank();
        let traceless = ext_rep.generator_images().iter().all(|m| m.trace().is_zero());
        let (ok, detail) = if n > 1 {
            (traceless && rank == n * n - 1, format!("dim ρ̃(g) = {rank}, traceless: {traceless}, sl_{n} has dim {}", n * n - 1))
        } else {
            (rank <= 1, format!("dim ρ̃(g) = {rank} on a 1-dim space"))
        };
        report.push("image-rank", ok, detail);
        let icd = ext_rep.image_commutant_dim();
        report.push("image-commutant", icd == 1, format!("commutant of ρ̃(g) has dimension {icd}"));
        let roots = alg.datum().lattice().roots();
        art["z_images"] = ext_rep
            .representatives()
            .iter()
            .zip(ext_rep.generator_images())
            .map(|(&r, m)| (root_label(&roots[r]), matrix_json(m)))
            .collect::<serde_json::Map<_, _>>()
            .into();
        art["z_field_order"] = json!(ext_rep.field_order());
    }
    Ok(Outcome { report, artifact: Some(to_pretty(&art)) })
}

/// `⟨·,·⟩_c` for a Coxeter element of every irreducible lattice of this family up to rank 8.
pub fn coxeter_triviality() -> Result<usize, String> {
    let mut labels: Vec<String> = (1..=8).map(|n| format!("A{n}")).collect();
    labels.extend((4..=8).map(|n| format!("D{n}")));
    labels.extend(["E6", "E7", "E8"].map(String::from));
    for l in &labels {
        let lat = RootLattice::build(l).map_err(|e| e.to_string())?;
        let word: Vec<usize> = (1..=lat.rank()).collect();
        let c = LatticeAut::from_word(&lat, &word).map_err(|e| e.to_string())?;
        if !pairing_is_trivial(&lat, &c) {
            return Err(l.clone());
        }
    }
    Ok(labels.len())
}

pub fn prop_check(spec: &DatumSpec, opts: &Options) -> Result<Outcome, CliError> {
    let mut report = Report::new("prop-check", &spec.label());
    let datum = spec.datum()?;
    report.push_result("pairing-equality", pairing_equality(&datum), |n| format!("{n} root pairs"));
    report.push_result("root-sum", root_sum_check(datum.d() as u32, 1000, opts.seed), |n| {
        format!("{n} random integer polynomials, seed {}", opts.seed)
    });
    report.push_result("coxeter-pairing-trivial", coxeter_triviality(), |n| format!("{n} irreducible lattices"));
    if datum.epsilon().kind() == EpsilonKind::EpsW {
        match pairing_sum_check(&datum) {
            Ok(r) => report.push_with(
                "pairing-sum",
                r.passed(),
                format!("{} eligible of {} root pairs", r.eligible, r.pairs),
                r.failure.map(|f| json!(f)),
            ),
            Err(e) => report.push("pairing-sum", false, e.to_string()),
        }
        if let Some(alg) = construct_checked(datum, &mut report) {
            if let Ok(r) = z_bracket_check(&alg) {
                report.push_result("z-bracket", r, |n| format!("{n} (orbit, root) pairs"));
            }
        }
    }
    Ok(Outcome { report, artifact: None })
}
