use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::{MultiPoly, Rational};
use crate::lie::{kappa, AlgebraSpec, Family};
use crate::pbw::Pbw;
use crate::relations::{
    check_centralizer_images, check_commutator_identity, check_projection_coherence_a, check_projection_coherence_bcd,
    check_qdet, check_reflection, check_symmetry, check_ternary, inner_entries, sort_reports, CheckReport,
    RelationError,
};
use crate::series_matrix::{build_phi_tensor, build_s_eta, build_sigma, build_t_eta, build_t_phi};

use super::config::{CMode, ConfigError, Suite, SuiteConfig};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("worker pool: {0}")]
    Pool(String),
}

type Job = Box<dyn Fn() -> Result<Vec<CheckReport>, RelationError> + Send + Sync>;

fn ternary_jobs(spec: AlgebraSpec, order: usize, c: MultiPoly, perturb: bool) -> Vec<Job> {
    let n = spec.rank;
    vec![
        Box::new(move || {
            let alg = Pbw::<Rational>::hc(spec);
            check_ternary(&build_t_eta(&alg, n, order)?, "eta", perturb)
        }),
        Box::new(move || {
            let alg = Pbw::<MultiPoly>::hc(spec);
            check_ternary(&build_t_phi(&alg, n, &c, order)?, "phi", perturb)
        }),
    ]
}

fn twisted_jobs(spec: AlgebraSpec, order: usize, perturb: bool) -> Vec<Job> {
    let n = spec.rank;
    let sign = perturb.then_some(!spec.is_orthogonal());
    vec![
        Box::new(move || {
            let alg = Pbw::<Rational>::hc(spec);
            check_reflection(&build_s_eta(&alg, n, order)?, "eta", perturb)
        }),
        Box::new(move || {
            let alg = Pbw::<Rational>::hc(spec);
            check_symmetry(&build_s_eta(&alg, n, order)?, "eta", sign)
        }),
    ]
}

fn tensor_jobs(spec: AlgebraSpec, order: usize, c: MultiPoly, perturb: bool) -> Vec<Job> {
    let n = spec.rank;
    let sign = perturb.then_some(!spec.is_orthogonal());
    let c2 = c.clone();
    vec![
        Box::new(move || {
            let alg = Pbw::<MultiPoly>::hc(spec);
            check_reflection(&build_phi_tensor(&alg, n, &c, order)?, "phi-tensor", perturb)
        }),
        Box::new(move || {
            let alg = Pbw::<MultiPoly>::hc(spec);
            check_symmetry(&build_phi_tensor(&alg, n, &c2, order)?, "phi-tensor", sign)
        }),
    ]
}

fn commutator_jobs(spec: AlgebraSpec, order: usize, c: MultiPoly) -> Vec<Job> {
    let n = spec.rank;
    vec![Box::new(move || {
        let alg = Pbw::<MultiPoly>::hc(spec);
        if spec.family == Family::A {
            check_commutator_identity(&build_t_phi(&alg, n, &c, order)?, "phi")
        } else {
            check_commutator_identity(&build_s_eta(&alg, n, order)?, "eta")
        }
    })]
}

fn centralizer_jobs(spec: AlgebraSpec, m: usize, order: usize, c: MultiPoly, perturb: bool) -> Vec<Job> {
    let n = spec.rank;
    vec![Box::new(move || {
        let alg = Pbw::<MultiPoly>::hc(spec);
        let (s, builder) = if spec.family == Family::A {
            (build_t_phi(&alg, n, &c, order)?, "phi")
        } else {
            (build_sigma(&alg, n, &c, order, None)?, "sigma")
        };
        let entries = if perturb {
            let labels = s.labels().to_vec();
            labels.iter().flat_map(|&i| labels.iter().map(move |&j| (i, j))).collect()
        } else {
            inner_entries(&s, m as i32)
        };
        check_centralizer_images(&s, m as i32, builder, &entries)
    })]
}

fn projection_jobs(spec: AlgebraSpec, order: usize, c: MultiPoly, perturb: bool) -> Vec<Job> {
    (2..=spec.rank)
        .rev()
        .map(|r| {
            let c = c.clone();
            let job: Job = Box::new(move || {
                let top = spec.with_rank(r);
                if spec.family == Family::A {
                    let wrong = MultiPoly::int(r as i64 + 1);
                    check_projection_coherence_a(r, &c, order, perturb.then_some(&wrong))
                } else {
                    let wrong = &MultiPoly::constant(kappa(top)) + &MultiPoly::int(1);
                    check_projection_coherence_bcd(top, &c, order, perturb.then_some(&wrong))
                }
            });
            job
        })
        .collect()
}

fn qdet_jobs(spec: AlgebraSpec, order: usize, c: MultiPoly) -> Vec<Job> {
    let n = spec.rank;
    vec![
        Box::new(move || {
            let alg = Pbw::<Rational>::hc(spec);
            check_qdet(&build_t_eta(&alg, n, order)?, "eta")
        }),
        Box::new(move || {
            let alg = Pbw::<MultiPoly>::hc(spec);
            check_qdet(&build_t_phi(&alg, n, &c, order)?, "phi")
        }),
    ]
}

fn reference_jobs() -> Vec<Job> {
    let c = MultiPoly::c();
    let mut jobs = ternary_jobs(AlgebraSpec::gl(2), 3, c.clone(), false);
    jobs.extend(twisted_jobs(AlgebraSpec::sp(2), 3, false));
    jobs.extend(twisted_jobs(AlgebraSpec::o(3), 2, false));
    jobs.extend(tensor_jobs(AlgebraSpec::o(3), 2, c.clone(), false));
    jobs.extend(commutator_jobs(AlgebraSpec::gl(2), 2, c.clone()));
    jobs.extend(centralizer_jobs(AlgebraSpec::sp(4), 1, 2, c.clone(), false));
    jobs.extend(projection_jobs(AlgebraSpec::gl(2), 3, c.clone(), false));
    jobs.extend(projection_jobs(AlgebraSpec::sp(4), 2, c.clone(), false));
    jobs.extend(qdet_jobs(AlgebraSpec::gl(2), 3, c));
    jobs
}

fn jobs_for(config: &SuiteConfig) -> Vec<Job> {
    let spec = config.spec;
    let k = config.order;
    let c = config.c.as_poly();
    let p = config.perturb;
    match config.suite {
        Suite::Ternary => ternary_jobs(spec, k, c, p),
        Suite::Twisted => twisted_jobs(spec, k, p),
        Suite::Tensor => tensor_jobs(spec, k, c, p),
        Suite::Commutator => commutator_jobs(spec, k, c),
        Suite::Centralizer => centralizer_jobs(spec, config.m, k, c, p),
        Suite::Projection => projection_jobs(spec, k, c, p),
        Suite::Qdet => qdet_jobs(spec, k, c),
        Suite::Reference => reference_jobs(),
    }
}

/// Runs the configured suite on a pool of `config.jobs` workers; the result
/// is sorted by instance and independent of the pool size.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    config.validate()?;
    let jobs = jobs_for(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| SuiteError::Pool(e.to_string()))?;
    let results: Vec<Result<Vec<CheckReport>, RelationError>> = pool.install(|| jobs.par_iter().map(|job| job()).collect());
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    sort_reports(&mut reports);
    Ok(reports)
}

/// Default configuration for a spec: symbolic c, m = 0, K = 3, one worker.
pub fn default_config(spec: AlgebraSpec, suite: Suite) -> SuiteConfig {
    SuiteConfig {
        spec,
        m: 0,
        order: 3,
        c: CMode::Symbolic,
        suite,
        format: super::config::OutputFormat::Json,
        jobs: 1,
        perturb: false,
    }
}
