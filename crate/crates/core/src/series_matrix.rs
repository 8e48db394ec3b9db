//! Matrices of truncated series with enveloping-algebra coefficients:
//! T(u) images for gl(n), S(u) and Σ(u) images for o(N) and sp(N).

use std::sync::Arc;

use crate::coeff::{rat, MultiPoly, Rational, Scalar, TruncSeries};
use crate::lie::{index_labels, kappa, theta, AlgebraSpec, Family};
use crate::pbw::hc::mat_mul;
use crate::pbw::{Pbw, PbwError, UeaElement};
use crate::symfun::chi_series;

pub type UeaSeries<R> = TruncSeries<UeaElement<R>>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("operation requires families B, C or D")]
    NeedsTwisted,
    #[error("operation requires family A")]
    NeedsGl,
    #[error("matrix rank {0} exceeds the algebra rank {1}")]
    RankTooLarge(usize, usize),
}

/// Square matrix of series, rows and columns labeled by a family index set.
#[derive(Clone, Debug)]
pub struct SeriesMatrix<R: Scalar> {
    family: Family,
    rank: usize,
    labels: Vec<i32>,
    entries: Vec<UeaSeries<R>>,
}

impl<R: Scalar> SeriesMatrix<R> {
    pub fn from_fn(
        family: Family,
        rank: usize,
        mut f: impl FnMut(i32, i32) -> UeaSeries<R>,
    ) -> Self {
        let labels = index_labels(family, rank);
        let mut entries = Vec::with_capacity(labels.len() * labels.len());
        for &i in &labels {
            for &j in &labels {
                entries.push(f(i, j));
            }
        }
        SeriesMatrix { family, rank, labels, entries }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Spec of the matrix algebra the labels come from (g(n) for this rank).
    pub fn label_spec(&self) -> AlgebraSpec {
        AlgebraSpec::new(self.family, self.rank)
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    pub fn algebra(&self) -> &Arc<Pbw<R>> {
        self.entries[0].coeff(0).algebra()
    }

    fn pos(&self, i: i32) -> usize {
        self.labels.iter().position(|&x| x == i).unwrap_or_else(|| panic!("label {i} not in matrix"))
    }

    pub fn has_label(&self, i: i32) -> bool {
        self.labels.contains(&i)
    }

    pub fn get(&self, i: i32, j: i32) -> &UeaSeries<R> {
        let n = self.size();
        &self.entries[self.pos(i) * n + self.pos(j)]
    }

    /// Matrix of the u⁻ᵏ coefficients.
    pub fn coefficient(&self, k: usize) -> Vec<Vec<UeaElement<R>>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.entries[a * n + b].coeff(k).clone()).collect()).collect()
    }

    pub fn map(&self, f: impl Fn(&UeaSeries<R>) -> UeaSeries<R>) -> Self {
        SeriesMatrix {
            family: self.family,
            rank: self.rank,
            labels: self.labels.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.labels, other.labels);
        let n = self.size();
        let zero = TruncSeries::zero_like(self.entries[0].coeff(0), self.order());
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    acc = acc.plus(&self.entries[a * n + k].times(&other.entries[k * n + b]));
                }
                entries.push(acc);
            }
        }
        SeriesMatrix { family: self.family, rank: self.rank, labels: self.labels.clone(), entries }
    }

    /// s(u) ↦ s(u + a) entrywise.
    pub fn shift(&self, a: &R) -> Self {
        let alg = self.algebra().clone();
        let a = alg.scalar(a.clone());
        self.map(|s| s.shift(&a))
    }

    /// s(u) ↦ s(−u) entrywise.
    pub fn negate_arg(&self) -> Self {
        self.map(|s| s.negate_arg())
    }

    pub fn minus(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.minus(b)).collect();
        SeriesMatrix { family: self.family, rank: self.rank, labels: self.labels.clone(), entries }
    }
}

fn gen_matrix<R: Scalar>(alg: &Arc<Pbw<R>>, family: Family, n: usize) -> Result<Vec<Vec<UeaElement<R>>>, PbwError> {
    let labels = index_labels(family, n);
    labels.iter().map(|&i| labels.iter().map(|&j| alg.gen(i, j)).collect()).collect()
}

fn check_rank<R: Scalar>(alg: &Arc<Pbw<R>>, family: Family, n: usize) -> Result<(), MatrixError> {
    if alg.spec().family != family {
        return Err(if family == Family::A { MatrixError::NeedsGl } else { MatrixError::NeedsTwisted });
    }
    if n > alg.spec().rank {
        return Err(MatrixError::RankTooLarge(n, alg.spec().rank));
    }
    Ok(())
}

/// (1 − F/u)⁻¹ = Σ Fᴹ u⁻ᴹ for the generator matrix of g(n) inside `alg`.
fn resolvent<R: Scalar>(alg: &Arc<Pbw<R>>, family: Family, n: usize, order: usize) -> Result<SeriesMatrix<R>, MatrixError> {
    let f = gen_matrix(alg, family, n)?;
    let size = f.len();
    let mut powers = vec![identity(alg, size)];
    for m in 1..=order {
        powers.push(mat_mul(&powers[m - 1], &f));
    }
    let mut a = 0;
    let mut entries = Vec::new();
    for _ in 0..size {
        for b in 0..size {
            entries.push(TruncSeries::from_coeffs(powers.iter().map(|p| p[a][b].clone()).collect()));
        }
        a += 1;
    }
    Ok(SeriesMatrix { family, rank: n, labels: index_labels(family, n), entries })
}

fn identity<R: Scalar>(alg: &Arc<Pbw<R>>, size: usize) -> Vec<Vec<UeaElement<R>>> {
    (0..size).map(|a| (0..size).map(|b| if a == b { alg.one() } else { alg.zero() }).collect()).collect()
}

/// η: T(u) ↦ (1 − E/u)⁻¹ for gl(n) ⊂ `alg`.
pub fn build_t_eta<R: Scalar>(alg: &Arc<Pbw<R>>, n: usize, order: usize) -> Result<SeriesMatrix<R>, MatrixError> {
    check_rank(alg, Family::A, n)?;
    resolvent(alg, Family::A, n, order)
}

/// φₙ: T(u) ↦ (u+n−c)/(u+n)·(1 − E/(u+n))⁻¹.
pub fn build_t_phi<R: Scalar>(alg: &Arc<Pbw<R>>, n: usize, c: &R, order: usize) -> Result<SeriesMatrix<R>, MatrixError> {
    build_t_phi_shifted(alg, n, c, &R::from_rational(Rational::from_integer((n as i64).into())), order)
}

/// f(u+a)·(1 − E/(u+a))⁻¹ with f(u) = 1 − c u⁻¹; the shift a = n gives φₙ.
pub fn build_t_phi_shifted<R: Scalar>(
    alg: &Arc<Pbw<R>>,
    n: usize,
    c: &R,
    shift: &R,
    order: usize,
) -> Result<SeriesMatrix<R>, MatrixError> {
    let eta = build_t_eta(alg, n, order)?;
    let mut f = TruncSeries::constant(alg.one(), order);
    if order >= 1 {
        f.set_coeff(1, alg.scalar(c.negated()));
    }
    let a = alg.scalar(shift.clone());
    let f = f.shift(&a);
    Ok(eta.map(|s| f.times(&s.shift(&a))))
}

/// η: S(u) ↦ 1 + F/(u ± ½), upper sign orthogonal.
pub fn build_s_eta<R: Scalar>(alg: &Arc<Pbw<R>>, n: usize, order: usize) -> Result<SeriesMatrix<R>, MatrixError> {
    let family = alg.spec().family;
    if family == Family::A {
        return Err(MatrixError::NeedsTwisted);
    }
    build_s_eta_signed(alg, n, order, alg.spec().is_orthogonal())
}

/// 1 + F/(u + ½) when `plus_half`, else 1 + F/(u − ½). Exposed for sign controls.
pub fn build_s_eta_signed<R: Scalar>(
    alg: &Arc<Pbw<R>>,
    n: usize,
    order: usize,
    plus_half: bool,
) -> Result<SeriesMatrix<R>, MatrixError> {
    let family = alg.spec().family;
    check_rank(alg, family, n)?;
    let f = gen_matrix(alg, family, n)?;
    let step = if plus_half { rat(-1, 2) } else { rat(1, 2) };
    let labels = index_labels(family, n);
    let mut entries = Vec::new();
    for a in 0..labels.len() {
        for b in 0..labels.len() {
            let mut coeffs = vec![if a == b { alg.one() } else { alg.zero() }];
            let mut p = Rational::from_integer(1.into());
            for _ in 1..=order {
                coeffs.push(f[a][b].scaled(&p));
                p *= &step;
            }
            entries.push(TruncSeries::from_coeffs(coeffs));
        }
    }
    Ok(SeriesMatrix { family, rank: n, labels, entries })
}

/// Σ(u) = (u+c+κ)/(u+κ)·(1 − F/(u+κ))⁻¹ with κ = κₙ unless overridden.
pub fn build_sigma<R: Scalar>(
    alg: &Arc<Pbw<R>>,
    n: usize,
    c: &R,
    order: usize,
    kappa_override: Option<&R>,
) -> Result<SeriesMatrix<R>, MatrixError> {
    let family = alg.spec().family;
    if family == Family::A {
        return Err(MatrixError::NeedsTwisted);
    }
    check_rank(alg, family, n)?;
    let k = match kappa_override {
        Some(k) => k.clone(),
        None => R::from_rational(kappa(AlgebraSpec::new(family, n))),
    };
    let res = resolvent(alg, family, n, order)?;
    let mut pre = TruncSeries::constant(alg.one(), order);
    if order >= 1 {
        pre.set_coeff(1, alg.scalar(c.clone()));
    }
    let ka = alg.scalar(k);
    Ok(res.map(|s| pre.times(s).shift(&ka)))
}

/// φₙ for o(N), sp(N) in the tensor model U(g(n)) ⊗ ℚ[λ, c]: χₙ(u)·Σ(u).
pub fn build_phi_tensor(
    alg: &Arc<Pbw<MultiPoly>>,
    n: usize,
    c: &MultiPoly,
    order: usize,
) -> Result<SeriesMatrix<MultiPoly>, MatrixError> {
    let spec = AlgebraSpec::new(alg.spec().family, n);
    let sigma = build_sigma(alg, n, c, order, None)?;
    let chi = chi_series(spec, c, order).map_err(|_| MatrixError::NeedsTwisted)?;
    Ok(scalar_multiply(&chi, &sigma))
}

/// (Aᵗ)_{ij} = θ_{ij} A_{−j,−i}.
pub fn transpose_t<R: Scalar>(m: &SeriesMatrix<R>) -> Result<SeriesMatrix<R>, MatrixError> {
    if m.family == Family::A {
        return Err(MatrixError::NeedsTwisted);
    }
    let spec = m.label_spec();
    Ok(SeriesMatrix::from_fn(m.family, m.rank, |i, j| {
        let e = m.get(-j, -i);
        if theta(spec, i, j) == 1 {
            e.clone()
        } else {
            e.negated()
        }
    }))
}

/// Multiply every entry by a central scalar series.
pub fn scalar_multiply<R: Scalar>(chi: &TruncSeries<R>, m: &SeriesMatrix<R>) -> SeriesMatrix<R> {
    let alg = m.algebra().clone();
    let lifted = chi.map(|x| alg.scalar(x.clone()));
    m.map(|s| lifted.times(s))
}

/// Check that the u⁻¹ coefficient equals `expected` and the constant term is 1.
pub fn first_coefficients_match<R: Scalar>(m: &SeriesMatrix<R>, expected: &[Vec<UeaElement<R>>]) -> bool {
    let alg = m.algebra();
    let n = m.size();
    let c0 = m.coefficient(0);
    let c1 = m.coefficient(1);
    (0..n).all(|a| {
        (0..n).all(|b| {
            let unit = if a == b { alg.one() } else { alg.zero() };
            c0[a][b] == unit && c1[a][b] == expected[a][b]
        })
    })
}
