//! Verification of the Yangian and twisted-Yangian relations on evaluation
//! images, quantum determinants, projection coherence and centralizer
//! properties. Every check yields one [`CheckReport`] per instance.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{
    clear_denominators, int, rat, BiSeries, CoeffError, LinearFactor, MultiPoly, Rational, RationalTerm,
    Scalar, TruncSeries,
};
use crate::lie::{theta, AlgebraSpec, Family};
use crate::pbw::hc::{centralizer_check, hc_omega};
use crate::pbw::ideal::{ideal_membership, Side};
use crate::pbw::{Pbw, PbwError, UeaElement};
use crate::series_matrix::{build_sigma, build_t_phi_shifted, MatrixError, SeriesMatrix, UeaSeries};
use crate::symfun::{chi_series, project_pi, wprime_invariance_check, SymError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelationError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("two-variable relations need order at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("projection needs rank at least {needed}, got {rank}")]
    RankTooSmall { rank: usize, needed: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Instance {
    pub relation: String,
    pub builder: String,
    pub spec: String,
    pub order: usize,
    pub indices: Vec<i32>,
}

/// Location of the first nonzero residual coefficient: the powers of u⁻¹
/// and v⁻¹ (negative for positive powers) and the residual itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<i32>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub instance: Instance,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(name: impl Into<String>, instance: Instance) -> Self {
        CheckReport { name: name.into(), instance, pass: true, witness: None }
    }

    pub fn failed(name: impl Into<String>, instance: Instance, witness: Witness) -> Self {
        CheckReport { name: name.into(), instance, pass: false, witness: Some(witness) }
    }

    pub fn verdict(name: impl Into<String>, instance: Instance, ok: bool, witness: impl FnOnce() -> Witness) -> Self {
        if ok {
            Self::passed(name, instance)
        } else {
            Self::failed(name, instance, witness())
        }
    }
}

pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| (&a.name, &a.instance).cmp(&(&b.name, &b.instance)));
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

fn instance(relation: &str, builder: &str, spec: AlgebraSpec, order: usize, indices: Vec<i32>) -> Instance {
    Instance { relation: relation.into(), builder: builder.into(), spec: spec.to_string(), order, indices }
}

/// Products of coefficients of two matrix entries: (a, b) ↦ p⁽ᵃ⁾ q⁽ᵇ⁾.
struct PairTable<R: Scalar> {
    labels: Vec<i32>,
    order: usize,
    cells: Vec<BiSeries<UeaElement<R>>>,
}

impl<R: Scalar> PairTable<R> {
    fn build(m: &SeriesMatrix<R>) -> Self {
        let labels = m.labels().to_vec();
        let order = m.order();
        let pairs: Vec<(i32, i32)> = labels.iter().flat_map(|&i| labels.iter().map(move |&j| (i, j))).collect();
        let idx: Vec<(usize, usize)> =
            (0..pairs.len()).flat_map(|p| (0..pairs.len()).map(move |q| (p, q))).collect();
        let cells = idx
            .par_iter()
            .map(|&(p, q)| {
                let (i, j) = pairs[p];
                let (k, l) = pairs[q];
                BiSeries::outer_uv(m.get(i, j), m.get(k, l))
            })
            .collect();
        PairTable { labels, order, cells }
    }

    fn pos(&self, i: i32, j: i32) -> usize {
        let n = self.labels.len();
        let a = self.labels.iter().position(|&x| x == i).expect("label");
        let b = self.labels.iter().position(|&x| x == j).expect("label");
        a * n + b
    }

    /// x_{ij}(u) y_{kl}(v).
    fn uv(&self, ij: (i32, i32), kl: (i32, i32)) -> &BiSeries<UeaElement<R>> {
        let n2 = self.labels.len() * self.labels.len();
        &self.cells[self.pos(ij.0, ij.1) * n2 + self.pos(kl.0, kl.1)]
    }

    /// x_{ij}(v) y_{kl}(u).
    fn vu(&self, ij: (i32, i32), kl: (i32, i32)) -> BiSeries<UeaElement<R>> {
        let s = self.uv(ij, kl);
        BiSeries::from_fn(self.order, |a, b| s.get(b, a).clone())
    }
}

fn tuples(labels: &[i32], arity: usize) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| labels.iter().map(move |&x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

fn window_report<R: Scalar>(
    name: &str,
    inst: Instance,
    lhs: &[RationalTerm<UeaElement<R>>],
    rhs: &[RationalTerm<UeaElement<R>>],
    denominator: &[LinearFactor],
) -> Result<CheckReport, RelationError> {
    let residual = clear_denominators(lhs, rhs, denominator)?.residual();
    Ok(match residual.first_nonzero() {
        None => CheckReport::passed(name, inst),
        Some((a, b, c)) => CheckReport::failed(name, inst, Witness { u: a, v: Some(b), residual: c.to_string() }),
    })
}

fn require_order(order: usize) -> Result<(), RelationError> {
    if order < 2 {
        Err(RelationError::OrderTooSmall(order))
    } else {
        Ok(())
    }
}

/// (u−v)[t_ij(u), t_kl(v)] = t_kj(u)t_il(v) − t_kj(v)t_il(u) for every (i,j,k,l).
/// With `perturb`, the sign of the last term is flipped.
pub fn check_ternary<R: Scalar>(t: &SeriesMatrix<R>, builder: &str, perturb: bool) -> Result<Vec<CheckReport>, RelationError> {
    if t.family() != Family::A {
        return Err(MatrixError::NeedsGl.into());
    }
    require_order(t.order())?;
    let table = PairTable::build(t);
    let spec = t.label_spec();
    let mut out: Vec<CheckReport> = tuples(t.labels(), 4)
        .par_iter()
        .map(|ix| {
            let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
            let comm = table.uv((i, j), (k, l)).minus(&table.vu((k, l), (i, j)));
            let first = table.uv((k, j), (i, l)).clone();
            let second = table.vu((k, j), (i, l));
            let rhs = if perturb { first.plus(&second) } else { first.minus(&second) };
            window_report(
                "ternary",
                instance("ternary", builder, spec, t.order(), ix.clone()),
                &[RationalTerm::plain(comm)],
                &[RationalTerm::over(rhs, vec![LinearFactor::UMinusV])],
                &[LinearFactor::UMinusV],
            )
        })
        .collect::<Result<_, _>>()?;
    sort_reports(&mut out);
    Ok(out)
}

/// The reflection relation with (u−v)(u+v) cleared, for every (i,j,k,l).
/// With `perturb`, the sign θ_{k,−j} of the first (u+v) term is flipped.
pub fn check_reflection<R: Scalar>(s: &SeriesMatrix<R>, builder: &str, perturb: bool) -> Result<Vec<CheckReport>, RelationError> {
    if s.family() == Family::A {
        return Err(MatrixError::NeedsTwisted.into());
    }
    require_order(s.order())?;
    let table = PairTable::build(s);
    let spec = s.label_spec();
    let th = |a: i32, b: i32| Rational::from_integer(theta(spec, a, b).into());
    let mut out: Vec<CheckReport> = tuples(s.labels(), 4)
        .par_iter()
        .map(|ix| {
            let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
            let comm = table.uv((i, j), (k, l)).minus(&table.vu((k, l), (i, j)));
            let a = table.uv((k, j), (i, l)).minus(&table.vu((k, j), (i, l)));
            let mut t1 = th(k, -j);
            if perturb {
                t1 = -t1;
            }
            let b = table.uv((i, -k), (-j, l)).scaled(&t1).minus(&table.vu((k, -i), (-l, j)).scaled(&th(i, -l)));
            let c = table.uv((k, -i), (-j, l)).minus(&table.vu((k, -i), (-j, l))).scaled(&th(i, -j));
            window_report(
                "reflection",
                instance("reflection", builder, spec, s.order(), ix.clone()),
                &[RationalTerm::plain(comm)],
                &[
                    RationalTerm::over(a, vec![LinearFactor::UMinusV]),
                    RationalTerm::over(b.scaled(&int(-1)), vec![LinearFactor::UPlusV]),
                    RationalTerm::over(c, vec![LinearFactor::UMinusV, LinearFactor::UPlusV]),
                ],
                &[LinearFactor::UMinusV, LinearFactor::UPlusV],
            )
        })
        .collect::<Result<_, _>>()?;
    sort_reports(&mut out);
    Ok(out)
}

/// θ_ij s_{−j,−i}(−u) = s_ij(u) ± (s_ij(u) − s_ij(−u))/(2u), multiplied by 2u.
/// The sign is + for orthogonal families unless `sign_override` is given.
pub fn check_symmetry<R: Scalar>(
    s: &SeriesMatrix<R>,
    builder: &str,
    sign_override: Option<bool>,
) -> Result<Vec<CheckReport>, RelationError> {
    if s.family() == Family::A {
        return Err(MatrixError::NeedsTwisted.into());
    }
    let spec = s.label_spec();
    let plus = sign_override.unwrap_or(spec.is_orthogonal());
    let order = s.order();
    let zero = s.algebra().zero();
    let mut out: Vec<CheckReport> = tuples(s.labels(), 2)
        .par_iter()
        .map(|ix| {
            let (i, j) = (ix[0], ix[1]);
            let sij = s.get(i, j);
            let st = s.get(-j, -i);
            let th = Rational::from_integer(theta(spec, i, j).into());
            let coeff = |f: &UeaSeries<R>, k: i32| if k < 0 { zero.clone() } else { f.coeff(k as usize).clone() };
            let parity = |k: i32| if k.rem_euclid(2) == 0 { int(1) } else { int(-1) };
            let mut witness = None;
            for a in -1..order as i32 {
                let lhs = coeff(st, a + 1).scaled(&(&th * parity(a + 1) * int(2)));
                let diff = coeff(sij, a).minus(&coeff(sij, a).scaled(&parity(a)));
                let mut rhs = coeff(sij, a + 1).scaled(&int(2));
                rhs = if plus { rhs.plus(&diff) } else { rhs.minus(&diff) };
                let r = lhs.minus(&rhs);
                if !r.is_zero() {
                    witness = Some(Witness { u: a, v: None, residual: r.to_string() });
                    break;
                }
            }
            let inst = instance("symmetry", builder, spec, order, ix.clone());
            match witness {
                None => CheckReport::passed("symmetry", inst),
                Some(w) => CheckReport::failed("symmetry", inst, w),
            }
        })
        .collect();
    sort_reports(&mut out);
    Ok(out)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Σ_p sgn(p) t_{p(1),1}(u) t_{p(2),2}(u−1) ⋯ t_{p(n),n}(u−n+1).
pub fn qdet<R: Scalar>(t: &SeriesMatrix<R>) -> Result<UeaSeries<R>, RelationError> {
    if t.family() != Family::A {
        return Err(MatrixError::NeedsGl.into());
    }
    let alg = t.algebra().clone();
    let n = t.size();
    let shifted: Vec<Vec<UeaSeries<R>>> = (1..=n as i32)
        .map(|i| {
            (1..=n as i32)
                .map(|k| t.get(i, k).shift(&alg.scalar(R::from_rational(int(1 - k as i64)))))
                .collect()
        })
        .collect();
    let mut acc = TruncSeries::zero_like(&alg.one(), t.order());
    for (p, sign) in permutations(n) {
        let mut term = TruncSeries::constant(alg.one(), t.order());
        for (k, &pk) in p.iter().enumerate() {
            term = term.times(&shifted[pk][k]);
        }
        acc = if sign > 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    Ok(acc)
}

/// γₙ(u): 1 for orthogonal families, (2u+1)/(2u−2n+1) for sp(2n).
pub fn gamma_series(spec: AlgebraSpec, order: usize) -> Result<TruncSeries<Rational>, RelationError> {
    match spec.family {
        Family::A => Err(MatrixError::NeedsTwisted.into()),
        Family::C => Ok(TruncSeries::linear_ratio(&rat(1, 2), &(rat(1, 2) - int(spec.rank as i64)), order)),
        _ => Ok(TruncSeries::constant(int(1), order)),
    }
}

/// Every qdet coefficient commutes with the whole algebra, and its
/// Harish-Chandra image is shifted-symmetric.
pub fn check_qdet<R: Scalar>(t: &SeriesMatrix<R>, builder: &str) -> Result<Vec<CheckReport>, RelationError> {
    let q = qdet(t)?;
    let spec = t.algebra().spec();
    let mut out = Vec::new();
    for k in 1..=t.order() {
        let a = q.coeff(k);
        let central = centralizer_check(a, 0)?;
        out.push(CheckReport::verdict(
            "qdet-central",
            instance("qdet-central", builder, spec, t.order(), vec![k as i32]),
            central,
            || Witness { u: k as i32, v: None, residual: a.to_string() },
        ));
        if central {
            let image = hc_omega(a)?;
            out.push(CheckReport::verdict(
                "qdet-hc-symmetric",
                instance("qdet-hc-symmetric", builder, spec, t.order(), vec![k as i32]),
                wprime_invariance_check(&image, spec),
                || Witness { u: k as i32, v: None, residual: image.to_string() },
            ));
        }
    }
    sort_reports(&mut out);
    Ok(out)
}

fn membership_report<R: Scalar>(
    name: &str,
    inst: Instance,
    a: &UeaElement<R>,
    c: &R,
    m: usize,
) -> Result<CheckReport, RelationError> {
    let ok = ideal_membership(a, Side::Left, c)?;
    Ok(CheckReport::verdict(name, inst, ok, || Witness { u: m as i32, v: None, residual: a.to_string() }))
}

/// Coherence of the φ-images for gl: (i) τ⁽ᴹ⁾_{in|n} ∈ I(n); (ii)
/// τ⁽ᴹ⁾_{ij|n} − τ⁽ᴹ⁾_{ij|n−1} ∈ I(n) for i, j ≤ n−1. `shift_override`
/// replaces the shift n of the rank-n image.
pub fn check_projection_coherence_a<R: Scalar>(
    n: usize,
    c: &R,
    order: usize,
    shift_override: Option<&R>,
) -> Result<Vec<CheckReport>, RelationError> {
    if n < 2 {
        return Err(RelationError::RankTooSmall { rank: n, needed: 2 });
    }
    let spec = AlgebraSpec::gl(n);
    let alg = Pbw::left_ideal(spec, c);
    let own = R::from_rational(int(n as i64));
    let top = build_t_phi_shifted(&alg, n, c, shift_override.unwrap_or(&own), order)?;
    let lower = build_t_phi_shifted(&alg, n - 1, c, &R::from_rational(int(n as i64 - 1)), order)?;
    coherence_reports(spec, &top, &lower, c, order, "phi")
}

/// Coherence of the Σ-images for o and sp, with i, j ranging over the full
/// index sets (0 included for odd orthogonal), plus the χ projection.
pub fn check_projection_coherence_bcd(
    spec: AlgebraSpec,
    c: &MultiPoly,
    order: usize,
    kappa_override: Option<&MultiPoly>,
) -> Result<Vec<CheckReport>, RelationError> {
    let n = spec.rank;
    if n < 2 {
        return Err(RelationError::RankTooSmall { rank: n, needed: 2 });
    }
    if spec.family == Family::A {
        return Err(MatrixError::NeedsTwisted.into());
    }
    let alg = Pbw::left_ideal(spec, c);
    let top = build_sigma(&alg, n, c, order, kappa_override)?;
    let lower = build_sigma(&alg, n - 1, c, order, None)?;
    let mut out = coherence_reports(spec, &top, &lower, c, order, "sigma")?;
    let chi_n = chi_series(spec, c, order)?;
    let chi_lower = chi_series(spec.with_rank(n - 1), c, order)?;
    for k in 0..=order {
        let projected = project_pi(chi_n.coeff(k), spec, c);
        let ok = &projected == chi_lower.coeff(k);
        out.push(CheckReport::verdict(
            "chi-projection",
            instance("chi-projection", "chi", spec, order, vec![k as i32]),
            ok,
            || Witness { u: k as i32, v: None, residual: (&projected - chi_lower.coeff(k)).to_string() },
        ));
    }
    sort_reports(&mut out);
    Ok(out)
}

fn coherence_reports<R: Scalar>(
    spec: AlgebraSpec,
    top: &SeriesMatrix<R>,
    lower: &SeriesMatrix<R>,
    c: &R,
    order: usize,
    builder: &str,
) -> Result<Vec<CheckReport>, RelationError> {
    let n = spec.rank as i32;
    let mut jobs: Vec<(String, Vec<i32>, UeaElement<R>)> = Vec::new();
    for &i in top.labels() {
        for m in 1..=order {
            jobs.push(("coherence-boundary".into(), vec![i, n, m as i32], top.get(i, n).coeff(m).clone()));
        }
    }
    for &i in lower.labels() {
        for &j in lower.labels() {
            for m in 1..=order {
                let d = top.get(i, j).coeff(m).minus(lower.get(i, j).coeff(m));
                jobs.push(("coherence-difference".into(), vec![i, j, m as i32], d));
            }
        }
    }
    let mut out: Vec<CheckReport> = jobs
        .par_iter()
        .map(|(name, ix, a)| {
            membership_report(name, instance(name, builder, spec, order, ix.clone()), a, c, ix[2] as usize)
        })
        .collect::<Result<_, _>>()?;
    sort_reports(&mut out);
    Ok(out)
}

/// Entries (i, j) of the image whose coefficients commute with g_m(n).
pub fn check_centralizer_images<R: Scalar>(
    s: &SeriesMatrix<R>,
    m: i32,
    builder: &str,
    entries: &[(i32, i32)],
) -> Result<Vec<CheckReport>, RelationError> {
    let spec = s.algebra().spec();
    let jobs: Vec<(i32, i32, usize)> =
        entries.iter().flat_map(|&(i, j)| (1..=s.order()).map(move |k| (i, j, k))).collect();
    let mut out: Vec<CheckReport> = jobs
        .par_iter()
        .map(|&(i, j, k)| {
            let a = s.get(i, j).coeff(k);
            let ok = centralizer_check(a, m)?;
            Ok(CheckReport::verdict(
                "centralizer",
                instance("centralizer", builder, spec, s.order(), vec![i, j, k as i32, m]),
                ok,
                || Witness { u: k as i32, v: None, residual: a.to_string() },
            ))
        })
        .collect::<Result<_, PbwError>>()?;
    sort_reports(&mut out);
    Ok(out)
}

/// Index pairs with |i|, |j| ≤ m in the matrix labels.
pub fn inner_entries<R: Scalar>(s: &SeriesMatrix<R>, m: i32) -> Vec<(i32, i32)> {
    let inner: Vec<i32> = s.labels().iter().copied().filter(|i| i.abs() <= m).collect();
    inner.iter().flat_map(|&i| inner.iter().map(move |&j| (i, j))).collect()
}

/// [t⁽¹⁾_kl, t_ij(u)] = δ_il t_kj(u) − δ_kj t_il(u) for gl, and the
/// four-term analogue with θ signs otherwise, using the matrix's own u⁻¹
/// coefficients as the left factors.
pub fn check_commutator_identity<R: Scalar>(s: &SeriesMatrix<R>, builder: &str) -> Result<Vec<CheckReport>, RelationError> {
    let spec = s.label_spec();
    let twisted = spec.family != Family::A;
    let zero = s.algebra().zero();
    let delta = |a: i32, b: i32| a == b;
    let th = |a: i32, b: i32| Rational::from_integer(theta(spec, a, b).into());
    let mut out: Vec<CheckReport> = tuples(s.labels(), 4)
        .par_iter()
        .map(|ix| {
            let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
            let first = s.get(k, l).coeff(1);
            let mut witness = None;
            for r in 0..=s.order() {
                let lhs = first.commutator(s.get(i, j).coeff(r));
                let mut rhs = zero.clone();
                if delta(i, l) {
                    rhs = rhs.plus(s.get(k, j).coeff(r));
                }
                if delta(k, j) {
                    rhs = rhs.minus(s.get(i, l).coeff(r));
                }
                if twisted {
                    if delta(k, -i) {
                        rhs = rhs.minus(&s.get(-l, j).coeff(r).scaled(&th(i, -l)));
                    }
                    if delta(-j, l) {
                        rhs = rhs.plus(&s.get(i, -k).coeff(r).scaled(&th(k, -j)));
                    }
                }
                let d = lhs.minus(&rhs);
                if !d.is_zero() {
                    witness = Some(Witness { u: r as i32, v: None, residual: d.to_string() });
                    break;
                }
            }
            let inst = instance("commutator", builder, spec, s.order(), ix.clone());
            match witness {
                None => CheckReport::passed("commutator", inst),
                Some(w) => CheckReport::failed("commutator", inst, w),
            }
        })
        .collect();
    sort_reports(&mut out);
    Ok(out)
}
