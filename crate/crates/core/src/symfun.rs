//! Shifted symmetric functions for gl and their analogues for o and sp:
//! power sums, elementary and complete functions, the projections π_{n,c},
//! shifted Weyl-group invariance and the series χₙ(u).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coeff::{int, rat, CoeffError, MultiPoly, Rational, Scalar, TruncSeries, Var};
use crate::lie::{rho, AlgebraSpec, Family, LieError};
use crate::pbw::hc::{highest_weight_eigenvalue, to_shifted_vars, verma_eigenvalue, Weight};
use crate::pbw::{PbwError, UeaElement};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("generator index must be at least 1")]
    ZeroIndex,
    #[error("cannot parse weight: {0}")]
    BadWeight(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    P,
    E,
    H,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GenKind::P => "p",
            GenKind::E => "e",
            GenKind::H => "h",
        };
        write!(f, "{s}")
    }
}

impl FromStr for GenKind {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p" => Ok(GenKind::P),
            "e" => Ok(GenKind::E),
            "h" => Ok(GenKind::H),
            _ => Err(SymError::BadWeight(format!("unknown generator kind {s}"))),
        }
    }
}

/// λ-variable of the k-th coordinate at rank n: λ_k for gl, λ₋ₖ otherwise.
pub fn lambda_var(family: Family, k: usize) -> Var {
    match family {
        Family::A => Var::Lambda(k as i32),
        _ => Var::Lambda(-(k as i32)),
    }
}

/// Pairs (xₖ, yₖ) whose power sums, elementary and complete functions give
/// the generators: (λₖ − k, c − k) for gl and (lₖ², (lₖᶜ)²) otherwise.
fn alphabet(spec: AlgebraSpec, c: &MultiPoly) -> Result<Vec<(MultiPoly, MultiPoly)>, SymError> {
    let n = spec.rank;
    let mut out = Vec::with_capacity(n);
    match spec.family {
        Family::A => {
            for k in 1..=n {
                let shift = MultiPoly::int(k as i64);
                out.push((&MultiPoly::var(lambda_var(Family::A, k)) - &shift, c - &shift));
            }
        }
        family => {
            let r = rho(spec)?;
            for k in 1..=n {
                let rk = MultiPoly::constant(r[k - 1].clone());
                let l = &MultiPoly::var(lambda_var(family, k)) + &rk;
                let lc = c + &rk;
                out.push((l.pow(2), lc.pow(2)));
            }
        }
    }
    Ok(out)
}

/// Coefficients of Π (1 + xₖt)/(1 + yₖt) (kind E) or Π (1 − yₖt)/(1 − xₖt)
/// (kind H) up to tᵐ.
fn product_series(pairs: &[(MultiPoly, MultiPoly)], kind: GenKind, order: usize) -> Result<TruncSeries<MultiPoly>, SymError> {
    let mut acc = TruncSeries::constant(MultiPoly::one(), order);
    for (x, y) in pairs {
        let (num, den) = match kind {
            GenKind::E => (x.clone(), y.clone()),
            _ => (-y, -x),
        };
        let mut n = TruncSeries::constant(MultiPoly::one(), order);
        let mut d = TruncSeries::constant(MultiPoly::one(), order);
        if order >= 1 {
            n.set_coeff(1, num);
            d.set_coeff(1, den);
        }
        acc = acc.times(&n).times(&d.invert()?);
    }
    Ok(acc)
}

/// The degree-n truncation of p_m, e_m or h_m.
pub fn generator(spec: AlgebraSpec, kind: GenKind, m: usize, c: &MultiPoly) -> Result<MultiPoly, SymError> {
    if m == 0 {
        return Err(SymError::ZeroIndex);
    }
    let pairs = alphabet(spec, c)?;
    match kind {
        GenKind::P => {
            let mut out = MultiPoly::zero();
            for (x, y) in &pairs {
                out = &out + &(&x.pow(m as u32) - &y.pow(m as u32));
            }
            Ok(out)
        }
        _ => Ok(product_series(&pairs, kind, m)?.coeff(m).clone()),
    }
}

pub fn generators_a(kind: GenKind, m: usize, n: usize, c: &MultiPoly) -> Result<MultiPoly, SymError> {
    generator(AlgebraSpec::gl(n), kind, m, c)
}

pub fn generators_bcd(kind: GenKind, m: usize, spec: AlgebraSpec, c: &MultiPoly) -> Result<MultiPoly, SymError> {
    if spec.family == Family::A {
        return Err(LieError::RhoForTypeA.into());
    }
    generator(spec, kind, m, c)
}

/// π_{n,c}: λₙ = c for gl, λ₋ₙ = c otherwise.
pub fn project_pi(f: &MultiPoly, spec: AlgebraSpec, c: &MultiPoly) -> MultiPoly {
    f.substitute(lambda_var(spec.family, spec.rank), c)
}

/// Residuals of the three Newton-type identities at degree 1..=order:
/// Σ (−1)ʳ eᵣ h_{m−r}, m eₘ − Σ (−1)ʳ⁻¹ pᵣ e_{m−r}, m hₘ − Σ pᵣ h_{m−r}.
pub fn newton_residuals(spec: AlgebraSpec, order: usize, c: &MultiPoly) -> Result<Vec<(String, usize, MultiPoly)>, SymError> {
    let pairs = alphabet(spec, c)?;
    let e = product_series(&pairs, GenKind::E, order)?;
    let h = product_series(&pairs, GenKind::H, order)?;
    let p: Vec<MultiPoly> = (0..=order)
        .map(|m| if m == 0 { Ok(MultiPoly::zero()) } else { generator(spec, GenKind::P, m, c) })
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for m in 1..=order {
        let mut eh = MultiPoly::zero();
        let mut pe = e.coeff(m).scale(&int(m as i64));
        let mut ph = h.coeff(m).scale(&int(m as i64));
        for r in 0..=m {
            let sign = if r % 2 == 0 { int(1) } else { int(-1) };
            eh = &eh + &(e.coeff(r) * h.coeff(m - r)).scale(&sign);
            if r >= 1 {
                pe = &pe + &(&p[r] * e.coeff(m - r)).scale(&sign);
                ph = &ph - &(&p[r] * h.coeff(m - r));
            }
        }
        out.push(("eh".to_string(), m, eh));
        out.push(("pe".to_string(), m, pe));
        out.push(("ph".to_string(), m, ph));
    }
    Ok(out)
}

/// A coherent sequence (fₙ) stored at ranks n₀..=n_max.
#[derive(Clone, Debug)]
pub struct ShiftedSymFn {
    pub family: Family,
    pub c: MultiPoly,
    pub levels: BTreeMap<usize, MultiPoly>,
    pub expression: Option<(GenKind, usize)>,
}

impl ShiftedSymFn {
    pub fn from_generator(family: Family, kind: GenKind, m: usize, c: &MultiPoly, ranks: std::ops::RangeInclusive<usize>) -> Result<Self, SymError> {
        let mut levels = BTreeMap::new();
        for n in ranks {
            levels.insert(n, generator(AlgebraSpec::new(family, n), kind, m, c)?);
        }
        Ok(ShiftedSymFn { family, c: c.clone(), levels, expression: Some((kind, m)) })
    }

    /// Ranks n at which π_{n,c}(fₙ) ≠ fₙ₋₁.
    pub fn incoherent_ranks(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for (&n, f) in &self.levels {
            if n == 0 {
                continue;
            }
            if let Some(g) = self.levels.get(&(n - 1)) {
                if &project_pi(f, AlgebraSpec::new(self.family, n), &self.c) != g {
                    bad.push(n);
                }
            }
        }
        bad
    }

    pub fn is_coherent(&self) -> bool {
        self.incoherent_ranks().is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.levels.values().map(MultiPoly::total_degree).max().unwrap_or(0)
    }
}

/// A weight λ ~ λᶜ: the value c and finitely many deviating coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSeq {
    pub c: MultiPoly,
    pub deviations: BTreeMap<usize, MultiPoly>,
}

impl WeightSeq {
    pub fn vacuum(c: MultiPoly) -> Self {
        WeightSeq { c, deviations: BTreeMap::new() }
    }

    pub fn min_rank(&self) -> usize {
        self.deviations.keys().next_back().copied().unwrap_or(0)
    }

    /// λ-values at rank n, keyed as the λ-variables of the family.
    pub fn at_rank(&self, family: Family, n: usize) -> Weight {
        (1..=n)
            .map(|k| {
                let key = if family == Family::A { k as i32 } else { -(k as i32) };
                (key, self.deviations.get(&k).cloned().unwrap_or_else(|| self.c.clone()))
            })
            .collect()
    }

    pub fn evaluate(&self, f: &MultiPoly, family: Family, n: usize) -> MultiPoly {
        let map: HashMap<Var, MultiPoly> =
            self.at_rank(family, n).into_iter().map(|(i, v)| (Var::Lambda(i), v)).collect();
        f.substitute_many(&map)
    }
}

/// `c=<rational|sym>; dev=[k:value,...]`, with k the coordinate position 1, 2, ….
impl FromStr for WeightSeq {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SymError::BadWeight(s.to_string());
        let mut c = None;
        let mut deviations = BTreeMap::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "c" => {
                    let v = value.trim();
                    c = Some(if v == "sym" {
                        MultiPoly::c()
                    } else {
                        MultiPoly::constant(crate::coeff::rational::parse_rational(v).ok_or_else(bad)?)
                    });
                }
                "dev" => {
                    let inner = value.trim().strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(bad)?;
                    for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                        let (k, v) = item.split_once(':').ok_or_else(bad)?;
                        let k: usize = k.trim().parse().map_err(|_| bad())?;
                        if k == 0 {
                            return Err(bad());
                        }
                        let v = crate::coeff::rational::parse_rational(v).ok_or_else(bad)?;
                        deviations.insert(k, MultiPoly::constant(v));
                    }
                }
                _ => return Err(bad()),
            }
        }
        Ok(WeightSeq { c: c.ok_or_else(bad)?, deviations })
    }
}

fn swap_map(a: Var, b: Var) -> impl Fn(Var) -> Var {
    move |v| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    }
}

/// Invariance under the shifted action of the Weyl group: permutations of
/// λₖ − k for gl; signed permutations of lₖ otherwise, with an even number
/// of sign changes for o(2n).
pub fn wprime_invariance_check(f: &MultiPoly, spec: AlgebraSpec) -> bool {
    let g = to_shifted_vars(f, spec);
    let n = spec.rank;
    let var = |k: usize| match spec.family {
        Family::A => Var::Shifted(k as i32),
        _ => Var::Shifted(-(k as i32)),
    };
    for k in 1..n {
        if g.map_vars(swap_map(var(k), var(k + 1))) != g {
            return false;
        }
    }
    let flip = |h: &MultiPoly, ks: &[usize]| {
        let map: HashMap<Var, MultiPoly> = ks.iter().map(|&k| (var(k), -MultiPoly::var(var(k)))).collect();
        h.substitute_many(&map)
    };
    match spec.family {
        Family::A => true,
        Family::D => (2..=n).all(|k| flip(&g, &[1, k]) == g),
        _ => n == 0 || flip(&g, &[1]) == g,
    }
}

/// ((u+½)² − a²)/((u+½)² − b²) in powers of u⁻¹.
fn quadratic_ratio(a2: &MultiPoly, b2: &MultiPoly, order: usize) -> Result<TruncSeries<MultiPoly>, SymError> {
    let quarter = MultiPoly::constant(rat(1, 4));
    let build = |s2: &MultiPoly| {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        coeffs[0] = MultiPoly::one();
        if order >= 1 {
            coeffs[1] = MultiPoly::one();
        }
        if order >= 2 {
            coeffs[2] = &quarter - s2;
        }
        TruncSeries::from_coeffs(coeffs)
    };
    Ok(build(a2).times(&build(b2).invert()?))
}

fn l_squares(spec: AlgebraSpec) -> Result<Vec<(MultiPoly, Rational)>, SymError> {
    let r = rho(spec)?;
    Ok((1..=spec.rank)
        .map(|k| {
            let l = &MultiPoly::var(lambda_var(spec.family, k)) + &MultiPoly::constant(r[k - 1].clone());
            (l.pow(2), r[k - 1].clone())
        })
        .collect())
}

/// χₙ(u) = (u+ρ₁−c+½)/(u+ρ₁+½) · Π ((u+½)² − lᵢ²)/((u+½)² − (ρᵢ−c)²), with ρ₁ = −ρ₋₁.
pub fn chi_series(spec: AlgebraSpec, c: &MultiPoly, order: usize) -> Result<TruncSeries<MultiPoly>, SymError> {
    let rho1 = match rho(spec.with_rank(1))?.first() {
        Some(r) => -r.clone(),
        None => Rational::from_integer(0.into()),
    };
    let base = MultiPoly::constant(&rho1 + rat(1, 2));
    let mut acc = TruncSeries::linear_ratio(&(&base - c), &base, order);
    for (l2, r) in l_squares(spec)? {
        let lc = c + &MultiPoly::constant(r);
        acc = acc.times(&quadratic_ratio(&l2, &lc.pow(2), order)?);
    }
    Ok(acc)
}

/// Π ((u+½)² − lᵢ²)/((u+½)² − ρᵢ²): the Harish-Chandra image of the
/// normalized Sklyanin determinant, kept as a reference series.
pub fn hc_sdet_rhs(spec: AlgebraSpec, order: usize) -> Result<TruncSeries<MultiPoly>, SymError> {
    let mut acc = TruncSeries::constant(MultiPoly::one(), order);
    for (l2, r) in l_squares(spec)? {
        acc = acc.times(&quadratic_ratio(&l2, &MultiPoly::constant(&r * &r), order)?);
    }
    Ok(acc)
}

/// ω(a) at λ compared with the scalar by which a acts on the highest vector.
pub fn eigenvalue_bridge<R: Scalar>(a: &UeaElement<R>, weight: &Weight) -> Result<bool, PbwError> {
    let via_hc = highest_weight_eigenvalue(a, weight)?;
    Ok(verma_eigenvalue(a, weight)? == Some(via_hc))
}

/// Rank of the Jacobian of p₁..p_k with respect to the λ-variables at a
/// fixed generic rational point (c specialized to 1/3).
pub fn power_sum_jacobian_rank(family: Family, k: usize, n: usize) -> Result<usize, SymError> {
    let spec = AlgebraSpec::new(family, n);
    let c = MultiPoly::constant(rat(1, 3));
    let polys: Vec<MultiPoly> = (1..=k).map(|m| generator(spec, GenKind::P, m, &c)).collect::<Result<_, _>>()?;
    let vars: Vec<Var> = (1..=n).map(|i| lambda_var(family, i)).collect();
    let point: HashMap<Var, Rational> =
        vars.iter().enumerate().map(|(i, &v)| (v, rat(7 * (i as i64 + 1) * (i as i64 + 1) + 3, 5 + 2 * i as i64))).collect();
    Ok(crate::coeff::jacobian_rank(&polys, &vars, &point).expect("point covers every variable"))
}
