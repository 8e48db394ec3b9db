mod common;

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use centralizer::cli::{default_config, emit_report, run, run_suite, OutputFormat, Suite};
use centralizer::coeff::{MultiPoly, Rational, Scalar};
use centralizer::invariants::{
    parity_check, stability_table, witness_min_rank, witness_point, Invariant,
};
use centralizer::lie::{index_labels, lie_algebra, AlgebraSpec, Family};
use centralizer::pbw::hc::{gelfand_invariant, Weight};
use centralizer::pbw::ideal::{ideal_membership, in_centralizer_zero, pi_projection, Side};
use centralizer::pbw::{Pbw, UeaElement};
use centralizer::relations::{
    all_pass, check_centralizer_images, check_projection_coherence_a, check_projection_coherence_bcd, check_qdet,
    check_reflection, check_symmetry, check_ternary, inner_entries, CheckReport,
};
use centralizer::series_matrix::{
    build_phi_tensor, build_s_eta, build_s_eta_signed, build_sigma, build_t_eta, build_t_phi, first_coefficients_match,
};
use centralizer::symfun::{
    chi_series, eigenvalue_bridge, lambda_var, newton_residuals, project_pi, GenKind, ShiftedSymFn,
};
use centralizer::coeff::Var;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn expect(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn all_ok(reports: &[CheckReport], what: &str) -> Result<(), String> {
    match reports.iter().find(|r| !r.pass) {
        None => Ok(()),
        Some(r) => Err(format!("{what}: {} {:?} {:?}", r.name, r.instance.indices, r.witness)),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let spent = start.elapsed();
    expect(spent < limit, || format!("{what} took {spent:.1?}, limit {limit:?}"))
}

fn lie_axioms() -> Outcome {
    let start = Instant::now();
    let specs = [AlgebraSpec::gl(3), AlgebraSpec::o(4), AlgebraSpec::o(5), AlgebraSpec::o(6), AlgebraSpec::sp(4)];
    let mut triples = 0;
    for spec in specs {
        let lie = lie_algebra(spec);
        expect(lie.antisymmetry_defects().is_empty(), || format!("antisymmetry fails in {spec}"))?;
        expect(lie.jacobi_defects().is_empty(), || format!("Jacobi fails in {spec}"))?;
        triples += lie.dim().pow(3);
    }
    within(start, Duration::from_secs(60), "axioms")?;
    Ok(format!("{triples} Jacobi triples"))
}

fn ternary_eta() -> Outcome {
    let mut total = 0;
    for (n, limit) in [(2, 60), (3, 900)] {
        let start = Instant::now();
        let alg = Pbw::<Rational>::hc(AlgebraSpec::gl(n));
        let r = check_ternary(&build_t_eta(&alg, n, 4).map_err(|e| e.to_string())?, "eta", false)
            .map_err(|e| e.to_string())?;
        all_ok(&r, &format!("gl({n})"))?;
        expect(r.len() == n.pow(4), || format!("gl({n}) covers {} tuples", r.len()))?;
        within(start, Duration::from_secs(limit), &format!("gl({n})"))?;
        total += r.len();
    }
    Ok(format!("{total} index tuples"))
}

type Mat<R> = Vec<Vec<UeaElement<R>>>;

fn gens<R: Scalar>(alg: &Arc<Pbw<R>>, n: usize) -> Mat<R> {
    let labels = index_labels(alg.spec().family, n);
    labels.iter().map(|&i| labels.iter().map(|&j| alg.gen(i, j).unwrap()).collect()).collect()
}

fn shifted_diag<R: Scalar>(alg: &Arc<Pbw<R>>, m: &Mat<R>, s: R) -> Mat<R> {
    let mut out = m.clone();
    for (k, row) in out.iter_mut().enumerate() {
        row[k] = row[k].plus(&alg.scalar(s.clone()));
    }
    out
}

fn mat_mul<R: Scalar>(alg: &Arc<Pbw<R>>, a: &Mat<R>, b: &Mat<R>) -> Mat<R> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(alg.zero(), |acc, k| acc.plus(&a[i][k].times(&b[k][j])))).collect())
        .collect()
}

fn ternary_phi() -> Outcome {
    let c = MultiPoly::c();
    let alg = Pbw::<MultiPoly>::hc(AlgebraSpec::gl(2));
    let t = build_t_phi(&alg, 2, &c, 3).map_err(|e| e.to_string())?;
    let r = check_ternary(&t, "phi", false).map_err(|e| e.to_string())?;
    all_ok(&r, "ternary")?;
    let t4 = build_t_phi(&alg, 2, &c, 4).map_err(|e| e.to_string())?;
    let e = gens(&alg, 2);
    expect(first_coefficients_match(&t4, &shifted_diag(&alg, &e, -c.clone())), || "first coefficient".into())?;
    let e_minus_n = shifted_diag(&alg, &e, MultiPoly::int(-2));
    for m in 2..=4 {
        expect(t4.coefficient(m) == mat_mul(&alg, &t4.coefficient(m - 1), &e_minus_n), || format!("recursion at M={m}"))?;
    }
    Ok(format!("{} tuples, recursion M<=4", r.len()))
}

fn projection_a() -> Outcome {
    let c = MultiPoly::c();
    let mut count = 0;
    for n in [3, 2] {
        let r = check_projection_coherence_a(n, &c, 4, None).map_err(|e| e.to_string())?;
        all_ok(&r, &format!("gl({n})"))?;
        count += r.len();
    }
    let wrong = MultiPoly::int(4);
    let r = check_projection_coherence_a(3, &c, 4, Some(&wrong)).map_err(|e| e.to_string())?;
    expect(!all_pass(&r), || "perturbed control passed".into())?;
    Ok(format!("{count} memberships, control fails"))
}

fn qdet_centrality() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        let spec = AlgebraSpec::gl(n);
        let alg = Pbw::<Rational>::hc(spec);
        let r = check_qdet(&build_t_eta(&alg, n, 4).map_err(|e| e.to_string())?, "eta").map_err(|e| e.to_string())?;
        all_ok(&r, &format!("eta gl({n})"))?;
        count += r.len();
        let alg = Pbw::<MultiPoly>::hc(spec);
        let t = build_t_phi(&alg, n, &MultiPoly::c(), 4).map_err(|e| e.to_string())?;
        let r = check_qdet(&t, "phi").map_err(|e| e.to_string())?;
        all_ok(&r, &format!("phi gl({n})"))?;
        count += r.len();
    }
    Ok(format!("{count} checks"))
}

fn twisted_relations() -> Outcome {
    let mut count = 0;
    for spec in [AlgebraSpec::o(3), AlgebraSpec::o(4), AlgebraSpec::o(5), AlgebraSpec::sp(2), AlgebraSpec::sp(4)] {
        let alg = Pbw::<Rational>::hc(spec);
        let s = build_s_eta(&alg, spec.rank, 3).map_err(|e| e.to_string())?;
        let r = check_reflection(&s, "eta", false).map_err(|e| e.to_string())?;
        all_ok(&r, &format!("reflection {spec}"))?;
        count += r.len();
        let r = check_symmetry(&s, "eta", None).map_err(|e| e.to_string())?;
        all_ok(&r, &format!("symmetry {spec}"))?;
        count += r.len();
    }
    let alg = Pbw::<Rational>::hc(AlgebraSpec::sp(2));
    let wrong = build_s_eta_signed(&alg, 1, 3, true).map_err(|e| e.to_string())?;
    let refl = check_reflection(&wrong, "eta", false).map_err(|e| e.to_string())?;
    let sym = check_symmetry(&wrong, "eta", None).map_err(|e| e.to_string())?;
    expect(!all_pass(&refl) || !all_pass(&sym), || "wrong-sign control passed".into())?;
    Ok(format!("{count} checks, control fails"))
}

fn sigma_coherence() -> Outcome {
    let c = MultiPoly::c();
    let mut count = 0;
    for spec in [AlgebraSpec::sp(4), AlgebraSpec::o(5)] {
        let r = check_projection_coherence_bcd(spec, &c, 3, None).map_err(|e| e.to_string())?;
        all_ok(&r, &spec.to_string())?;
        if spec.family == Family::B {
            expect(r.iter().any(|x| x.instance.indices.contains(&0)), || "no 0-index instance".into())?;
        }
        count += r.len();
    }
    Ok(format!("{count} memberships"))
}

fn chi_compatibility() -> Outcome {
    let c = MultiPoly::c();
    let mut count = 0;
    for family in [Family::B, Family::C, Family::D] {
        for n in 1..=4 {
            let spec = AlgebraSpec::new(family, n);
            for k in [2, 4, 6] {
                let chi = chi_series(spec, &c, k).map_err(|e| e.to_string())?;
                let lower = chi_series(spec.with_rank(n - 1), &c, k).map_err(|e| e.to_string())?;
                for j in 0..=k {
                    expect(&project_pi(chi.coeff(j), spec, &c) == lower.coeff(j), || format!("{spec} K={k} u^-{j}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} coefficients"))
}

fn tensor_model() -> Outcome {
    let mut count = 0;
    for spec in [AlgebraSpec::sp(2), AlgebraSpec::o(3)] {
        let alg = Pbw::<MultiPoly>::hc(spec);
        let s = build_phi_tensor(&alg, spec.rank, &MultiPoly::c(), 2).map_err(|e| e.to_string())?;
        let r = check_reflection(&s, "phi-tensor", false).map_err(|e| e.to_string())?;
        all_ok(&r, &format!("reflection {spec}"))?;
        count += r.len();
        let r = check_symmetry(&s, "phi-tensor", None).map_err(|e| e.to_string())?;
        all_ok(&r, &format!("symmetry {spec}"))?;
        count += r.len();
    }
    Ok(format!("{count} checks"))
}

fn centralizer_property() -> Outcome {
    let c = MultiPoly::c();
    let mut count = 0;
    for order in 1..=3 {
        let alg = Pbw::<MultiPoly>::hc(AlgebraSpec::gl(3));
        let t = build_t_phi(&alg, 3, &c, order).map_err(|e| e.to_string())?;
        let r = check_centralizer_images(&t, 1, "phi", &inner_entries(&t, 1)).map_err(|e| e.to_string())?;
        all_ok(&r, "gl(3)")?;
        count += r.len();
        for spec in [AlgebraSpec::o(5), AlgebraSpec::sp(4)] {
            let alg = Pbw::<MultiPoly>::hc(spec);
            let s = build_sigma(&alg, 2, &c, order, None).map_err(|e| e.to_string())?;
            let r = check_centralizer_images(&s, 1, "sigma", &inner_entries(&s, 1)).map_err(|e| e.to_string())?;
            all_ok(&r, &spec.to_string())?;
            count += r.len();
        }
    }
    Ok(format!("{count} commutator checks"))
}

fn symmetric_functions() -> Outcome {
    let c = MultiPoly::c();
    for spec in [AlgebraSpec::gl(3), AlgebraSpec::o(5), AlgebraSpec::o(4), AlgebraSpec::sp(4)] {
        for (name, m, r) in newton_residuals(spec, 6, &c).map_err(|e| e.to_string())? {
            expect(r.is_zero(), || format!("{spec} {name} {m}"))?;
        }
    }
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for m in 1..=6 {
            let f = ShiftedSymFn::from_generator(family, GenKind::P, m, &c, 1..=6).map_err(|e| e.to_string())?;
            expect(f.is_coherent(), || format!("{family:?} p{m}: {:?}", f.incoherent_ranks()))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checks = 0;
    for spec in [AlgebraSpec::gl(3), AlgebraSpec::o(5), AlgebraSpec::sp(4), AlgebraSpec::o(4)] {
        let alg = Pbw::<MultiPoly>::hc(spec);
        let central: Vec<UeaElement<MultiPoly>> =
            (2..=3).map(|k| gelfand_invariant(&alg, k)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let weight: Weight = (1..=spec.rank)
                .map(|k| {
                    let Var::Lambda(i) = lambda_var(spec.family, k) else { unreachable!() };
                    (i, MultiPoly::int(rng.gen_range(-5..=5)))
                })
                .collect();
            for a in &central {
                expect(eigenvalue_bridge(a, &weight).map_err(|e| e.to_string())?, || format!("{spec} {weight:?}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("Newton to order 6, p_m coherent m,n<=6, {checks} eigenvalue checks"))
}

fn invariant_theory() -> Outcome {
    let mut stable = 0;
    for n in 2..=4 {
        for spec in [AlgebraSpec::gl(n), AlgebraSpec::o(2 * n + 1), AlgebraSpec::o(2 * n), AlgebraSpec::sp(2 * n)] {
            let table = stability_table(spec, 4).map_err(|e| e.to_string())?;
            if let Some((inv, _)) = table.iter().find(|(_, ok)| !ok) {
                return Err(format!("{spec} {inv} unstable"));
            }
            stable += table.len();
        }
    }
    for family in [AlgebraSpec::gl(1), AlgebraSpec::o(3), AlgebraSpec::o(2), AlgebraSpec::sp(2)] {
        let spec = family.with_rank(witness_min_rank(family, 1, 2));
        let w = witness_point(spec, 1, 2).map_err(|e| e.to_string())?;
        expect(w.is_antisymmetric(), || format!("{spec} witness is not in g"))?;
        expect(w.family_rank() == w.invariants.len(), || format!("{spec} Jacobian rank {}", w.family_rank()))?;
    }
    let mut parity = 0;
    for spec in [AlgebraSpec::o(4), AlgebraSpec::o(5), AlgebraSpec::sp(4), AlgebraSpec::o(6)] {
        for power in 1..=4 {
            for &i in &spec.index_set() {
                for &j in &spec.index_set() {
                    let inv = Invariant::Corner { i, j, power };
                    expect(parity_check(spec, inv).map_err(|e| e.to_string())?, || format!("{spec} {inv}"))?;
                    parity += 1;
                }
            }
        }
    }
    Ok(format!("{stable} stability checks, 4 witnesses, {parity} parity entries"))
}

fn left_right_membership() -> Outcome {
    let c = MultiPoly::c();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut summary = Vec::new();
    for (family, ranks) in [
        (Family::A, vec![2usize, 3]),
        (Family::B, vec![1, 2]),
        (Family::C, vec![1, 2]),
        (Family::D, vec![2]),
    ] {
        let mut samples = 0;
        let mut members = 0;
        for &n in &ranks {
            let spec = AlgebraSpec::new(family, n);
            let alg = Pbw::<MultiPoly>::hc(spec);
            let want = 120 / ranks.len();
            let elems = common::sample_weight_zero(&alg, want, &mut rng);
            for (k, a) in elems.iter().enumerate() {
                let e = |x: centralizer::pbw::PbwError| x.to_string();
                expect(in_centralizer_zero(a).map_err(e)?, || format!("{spec} sample {k} is not weight zero"))?;
                let left = ideal_membership(a, Side::Left, &c).map_err(e)?;
                let right = ideal_membership(a, Side::Right, &c).map_err(e)?;
                expect(left == right, || format!("{spec} sample {k}: left {left}, right {right}"))?;
                if k % 5 < 4 {
                    expect(left, || format!("{spec} constructed sample {k} is not a member"))?;
                }
                members += usize::from(left);
                if spec.rank >= 2 && k + 1 < elems.len() {
                    let b = &elems[k + 1];
                    let lhs = pi_projection(&a.times(b), &c).map_err(e)?;
                    let rhs = pi_projection(a, &c).map_err(e)?.times(&pi_projection(b, &c).map_err(e)?);
                    expect(lhs == rhs, || format!("{spec} projection of product {k}"))?;
                }
                samples += 1;
            }
        }
        expect(samples >= 100, || format!("{family:?}: only {samples} samples"))?;
        summary.push(format!("{family:?} {samples} ({members} in ideal)"));
    }
    Ok(summary.join(", "))
}

fn determinism() -> Outcome {
    let mut config = default_config(AlgebraSpec::gl(2), Suite::Reference);
    let mut outputs = Vec::new();
    for jobs in [1, 2, 4, 8] {
        config.jobs = jobs;
        let reports = run_suite(&config).map_err(|e| e.to_string())?;
        outputs.push(emit_report(None, &reports, OutputFormat::Json));
    }
    expect(outputs.windows(2).all(|w| w[0] == w[1]), || "reports differ across pool sizes".into())?;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["centralizer", "check-relations", "--spec", "gl:2", "--suite", "reference", "--jobs", "4"], &mut out, &mut err);
    expect(code == 0, || String::from_utf8_lossy(&err).into_owned())?;
    let golden = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/reference.json")).map_err(|e| e.to_string())?;
    expect(out == golden, || "reference report differs from the golden file".into())?;
    Ok(format!("{} bytes identical for 1, 2, 4, 8 workers", outputs[0].len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("Lie axioms", lie_axioms),
        ("ternary relation for eta", ternary_eta),
        ("phi with symbolic c", ternary_phi),
        ("projection coherence gl", projection_a),
        ("quantum determinant", qdet_centrality),
        ("twisted relations", twisted_relations),
        ("sigma coherence", sigma_coherence),
        ("chi compatibility", chi_compatibility),
        ("tensor model", tensor_model),
        ("centralizer property", centralizer_property),
        ("symmetric functions", symmetric_functions),
        ("invariant theory", invariant_theory),
        ("left/right membership", left_right_membership),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    let stderr = std::io::stderr();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let line = match &outcome {
            Ok(detail) => format!("criterion {:>2} PASS {name}: {detail} ({:.1?})\n", k + 1, start.elapsed()),
            Err(why) => format!("criterion {:>2} FAIL {name}: {why} ({:.1?})\n", k + 1, start.elapsed()),
        };
        stderr.lock().write_all(line.as_bytes()).unwrap();
        if outcome.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
