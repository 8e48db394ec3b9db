use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::{jacobian_rank, rat, MultiPoly, Rational, Var};
use crate::lie::{canonicalize, expand_in_units, index_labels, lie_algebra, theta, AlgebraSpec, Family, GenIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("index ({0},{1}) is not an entry of {2}")]
    BadIndex(i32, i32, AlgebraSpec),
    #[error("corner ({i},{j}) lies outside |i|,|j| <= {m}")]
    CornerOutOfRange { i: i32, j: i32, m: usize },
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("polynomial is not a trace or corner invariant of {0}")]
    NotAFamily(AlgebraSpec),
    #[error("rank {rank} is too small, need n >= {needed}")]
    RankTooSmall { rank: usize, needed: usize },
}

/// tr(x^M) or the (i,j) entry of x^M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Invariant {
    Trace { power: u32 },
    Corner { i: i32, j: i32, power: u32 },
}

impl Invariant {
    pub fn power(&self) -> u32 {
        match *self {
            Invariant::Trace { power } | Invariant::Corner { power, .. } => power,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Trace { power } => write!(f, "tr(x^{power})"),
            Invariant::Corner { i, j, power } => write!(f, "(x^{power})[{i},{j}]"),
        }
    }
}

/// Square matrix of polynomials indexed by the labels of a spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    labels: Vec<i32>,
    position: HashMap<i32, usize>,
    entries: Vec<Vec<MultiPoly>>,
}

impl PolyMatrix {
    pub fn zero(labels: Vec<i32>) -> Self {
        let size = labels.len();
        let position = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        PolyMatrix { labels, position, entries: vec![vec![MultiPoly::zero(); size]; size] }
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn get(&self, i: i32, j: i32) -> &MultiPoly {
        &self.entries[self.position[&i]][self.position[&j]]
    }

    fn add_to(&mut self, i: i32, j: i32, value: &MultiPoly) {
        let (a, b) = (self.position[&i], self.position[&j]);
        self.entries[a][b] = &self.entries[a][b] + value;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let size = self.labels.len();
        let mut out = PolyMatrix::zero(self.labels.clone());
        for i in 0..size {
            for k in 0..size {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..size {
                    if other.entries[k][j].is_zero() {
                        continue;
                    }
                    let p = &self.entries[i][k] * &other.entries[k][j];
                    out.entries[i][j] = &out.entries[i][j] + &p;
                }
            }
        }
        out
    }

    pub fn minus(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = self.clone();
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (e, o) in row.iter_mut().zip(orow) {
                *e = &*e - o;
            }
        }
        out
    }

    pub fn power(&self, m: u32) -> PolyMatrix {
        let mut out = self.clone();
        for _ in 1..m {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (k, row) in self.entries.iter().enumerate() {
            acc = &acc + &row[k];
        }
        acc
    }
}

/// x_ij in the independent coordinates X(g), g canonical.
pub fn coordinate(spec: AlgebraSpec, i: i32, j: i32) -> MultiPoly {
    match canonicalize(spec, i, j) {
        Some((s, g)) => MultiPoly::var(Var::X(g.i, g.j)).scale(&Rational::from_integer(s.into())),
        None => MultiPoly::zero(),
    }
}

pub fn coordinate_matrix(spec: AlgebraSpec) -> PolyMatrix {
    let labels = spec.index_set();
    let mut out = PolyMatrix::zero(labels.clone());
    for &i in &labels {
        for &j in &labels {
            out.add_to(i, j, &coordinate(spec, i, j));
        }
    }
    out
}

fn validate(spec: AlgebraSpec, inv: Invariant) -> Result<(), InvariantError> {
    if inv.power() == 0 {
        return Err(InvariantError::ZeroPower);
    }
    if let Invariant::Corner { i, j, .. } = inv {
        if !spec.contains(i) || !spec.contains(j) {
            return Err(InvariantError::BadIndex(i, j, spec));
        }
    }
    Ok(())
}

/// tr(x^M) or (x^M)_ij for a corner with |i|,|j| <= m.
pub fn invariant_gen(spec: AlgebraSpec, m: usize, inv: Invariant) -> Result<MultiPoly, InvariantError> {
    validate(spec, inv)?;
    if let Invariant::Corner { i, j, .. } = inv {
        if i.unsigned_abs() as usize > m || j.unsigned_abs() as usize > m {
            return Err(InvariantError::CornerOutOfRange { i, j, m });
        }
    }
    Ok(evaluate_on(&coordinate_matrix(spec).power(inv.power()), inv))
}

fn evaluate_on(power: &PolyMatrix, inv: Invariant) -> MultiPoly {
    match inv {
        Invariant::Trace { .. } => power.trace(),
        Invariant::Corner { i, j, .. } => power.get(i, j).clone(),
    }
}

/// Coordinates generating I′(n): entries of the form x_{in}.
pub fn ideal_letters(spec: AlgebraSpec) -> BTreeSet<Var> {
    let n = spec.rank as i32;
    spec.index_set()
        .into_iter()
        .filter_map(|i| canonicalize(spec, i, n))
        .map(|(_, g)| Var::X(g.i, g.j))
        .collect()
}

/// Every monomial contains a generator of I′(n).
pub fn in_graded_ideal(f: &MultiPoly, letters: &BTreeSet<Var>) -> bool {
    f.terms().all(|(mono, _)| mono.iter().any(|(v, _)| letters.contains(v)))
}

/// Recognizes `f` as tr(x^M) or (x^M)_ij of `spec`.
pub fn identify(spec: AlgebraSpec, f: &MultiPoly) -> Option<Invariant> {
    let degree = f.total_degree();
    if degree == 0 || f.terms().any(|(mono, _)| mono.iter().map(|(_, e)| e).sum::<u32>() != degree) {
        return None;
    }
    let power = coordinate_matrix(spec).power(degree);
    let trace = Invariant::Trace { power: degree };
    if &evaluate_on(&power, trace) == f {
        return Some(trace);
    }
    for &i in power.labels() {
        for &j in power.labels() {
            let corner = Invariant::Corner { i, j, power: degree };
            if &evaluate_on(&power, corner) == f {
                return Some(corner);
            }
        }
    }
    None
}

/// gen_n − gen_{n−1} ∈ I′(n) for a trace or corner invariant `f` of `spec`.
pub fn stability_check(spec: AlgebraSpec, f: &MultiPoly) -> Result<bool, InvariantError> {
    if spec.rank < 2 {
        return Err(InvariantError::RankTooSmall { rank: spec.rank, needed: 2 });
    }
    let inv = identify(spec, f).ok_or(InvariantError::NotAFamily(spec))?;
    stable_difference(spec, inv, f)
}

fn stable_difference(spec: AlgebraSpec, inv: Invariant, f: &MultiPoly) -> Result<bool, InvariantError> {
    let lower = spec.with_rank(spec.rank - 1);
    let below = invariant_gen(lower, lower.rank, inv)?;
    Ok(in_graded_ideal(&(f - &below), &ideal_letters(spec)))
}

pub fn stability_of(spec: AlgebraSpec, inv: Invariant) -> Result<bool, InvariantError> {
    if spec.rank < 2 {
        return Err(InvariantError::RankTooSmall { rank: spec.rank, needed: 2 });
    }
    let f = invariant_gen(spec, spec.rank, inv)?;
    stable_difference(spec, inv, &f)
}

/// Stability of every trace and every corner with |i|,|j| <= n − 1, up to `max_power`.
pub fn stability_table(spec: AlgebraSpec, max_power: u32) -> Result<Vec<(Invariant, bool)>, InvariantError> {
    if spec.rank < 2 {
        return Err(InvariantError::RankTooSmall { rank: spec.rank, needed: 2 });
    }
    let lower = spec.with_rank(spec.rank - 1);
    let letters = ideal_letters(spec);
    let (x, y) = (coordinate_matrix(spec), coordinate_matrix(lower));
    let (mut top, mut bottom) = (x.clone(), y.clone());
    let mut out = Vec::new();
    for power in 1..=max_power {
        if power > 1 {
            top = top.mul(&x);
            bottom = bottom.mul(&y);
        }
        let mut invs = vec![Invariant::Trace { power }];
        for &i in lower.index_set().iter() {
            for &j in lower.index_set().iter() {
                invs.push(Invariant::Corner { i, j, power });
            }
        }
        for inv in invs {
            let diff = &evaluate_on(&top, inv) - &evaluate_on(&bottom, inv);
            out.push((inv, in_graded_ideal(&diff, &letters)));
        }
    }
    Ok(out)
}

/// Index and power combinations kept for orthogonal and symplectic corners.
pub fn parity_allowed(spec: AlgebraSpec, inv: Invariant) -> bool {
    match (spec.family, inv) {
        (Family::A, _) => true,
        (_, Invariant::Trace { power }) => power % 2 == 0,
        (_, Invariant::Corner { i, j, power }) => {
            let odd = power % 2 == 1;
            let strict = if spec.is_orthogonal() { odd } else { !odd };
            if strict {
                i + j < 0
            } else {
                i + j <= 0
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum ParityClass {
    Allowed,
    Vanishes,
    Mirror { of: Invariant, sign: i32 },
}

/// Where a generator sits relative to the parity restrictions.
pub fn parity_class(spec: AlgebraSpec, inv: Invariant) -> ParityClass {
    if parity_allowed(spec, inv) {
        return ParityClass::Allowed;
    }
    match inv {
        Invariant::Trace { .. } => ParityClass::Vanishes,
        Invariant::Corner { i, j, power } => {
            if i + j == 0 {
                ParityClass::Vanishes
            } else {
                let sign = if power % 2 == 0 { 1 } else { -1 } * theta(spec, i, j);
                ParityClass::Mirror { of: Invariant::Corner { i: -j, j: -i, power }, sign }
            }
        }
    }
}

/// Checks the parity class of `inv` against the expanded polynomials.
pub fn parity_check(spec: AlgebraSpec, inv: Invariant) -> Result<bool, InvariantError> {
    validate(spec, inv)?;
    let power = coordinate_matrix(spec).power(inv.power());
    let f = evaluate_on(&power, inv);
    Ok(match parity_class(spec, inv) {
        ParityClass::Allowed => true,
        ParityClass::Vanishes => f.is_zero(),
        ParityClass::Mirror { of, sign } => f == evaluate_on(&power, of).scale(&Rational::from_integer(sign.into())),
    })
}

/// The generators whose independence the witness certifies.
pub fn independent_family(spec: AlgebraSpec, m: usize, order: u32) -> Vec<Invariant> {
    let corner_labels = index_labels(spec.family, m);
    let mut out = Vec::new();
    for power in 1..=order {
        let trace = Invariant::Trace { power };
        if parity_allowed(spec, trace) {
            out.push(trace);
        }
        for &i in &corner_labels {
            for &j in &corner_labels {
                let corner = Invariant::Corner { i, j, power };
                if parity_allowed(spec, corner) {
                    out.push(corner);
                }
            }
        }
    }
    out
}

/// Block-cyclic matrix with symbolic y and z parameters.
#[derive(Clone, Debug)]
pub struct WitnessPoint {
    pub spec: AlgebraSpec,
    pub m: usize,
    pub order: u32,
    pub invariants: Vec<Invariant>,
    pub blocks: BTreeMap<Invariant, Vec<i32>>,
    pub parameters: Vec<Var>,
    pub matrix: PolyMatrix,
}

fn z_var(i: i32, j: i32, power: u32) -> Var {
    Var::Z(i, j, power)
}

fn corner_count(spec: AlgebraSpec, m: usize, order: u32) -> usize {
    independent_family(spec, m, order)
        .iter()
        .map(|inv| match inv {
            Invariant::Corner { power, .. } => *power as usize - 1,
            Invariant::Trace { .. } => 0,
        })
        .sum()
}

/// Smallest rank hosting the witness blocks.
pub fn witness_min_rank(spec: AlgebraSpec, m: usize, order: u32) -> usize {
    m + corner_count(spec, m, order) + order as usize
}

pub fn witness_point(spec: AlgebraSpec, m: usize, order: u32) -> Result<WitnessPoint, InvariantError> {
    let needed = witness_min_rank(spec, m, order);
    if spec.rank < needed || order == 0 {
        return Err(InvariantError::RankTooSmall { rank: spec.rank, needed: needed.max(m + 1) });
    }
    let n = spec.rank as i32;
    let k = order as i32;
    let invariants = independent_family(spec, m, order);
    let mut blocks = BTreeMap::new();
    let mut next = m as i32 + 1;
    let mut parameters: Vec<Var> = (1..=order).map(Var::Y).collect();
    let mut chains = PolyMatrix::zero(spec.index_set());
    for inv in &invariants {
        let Invariant::Corner { i, j, power } = *inv else { continue };
        let omega: Vec<i32> = (next..next + power as i32 - 1).collect();
        next += power as i32 - 1;
        let z = MultiPoly::var(z_var(i, j, power));
        parameters.push(z_var(i, j, power));
        let last = if spec.family != Family::A && i + j == 0 { rat(1, 2) } else { Rational::one() };
        let one = MultiPoly::one();
        if omega.is_empty() {
            chains.add_to(i, j, &z.scale(&last));
        } else {
            chains.add_to(omega[omega.len() - 1], j, &z);
            for w in omega.windows(2) {
                chains.add_to(w[0], w[1], &one);
            }
            chains.add_to(i, omega[0], &one.scale(&last));
        }
        blocks.insert(*inv, omega);
    }
    let mut matrix = if spec.family == Family::A { chains } else { chains.minus(&twisted_transpose(spec, &chains)) };
    for a in spec.index_set() {
        if a.abs() > n - k {
            let y = MultiPoly::var(Var::Y((a.abs() - (n - k)) as u32));
            let sign = if spec.family == Family::A { 1 } else { a.signum() };
            matrix.add_to(a, a, &y.scale(&Rational::from_integer(sign.into())));
        }
    }
    Ok(WitnessPoint { spec, m, order, invariants, blocks, parameters, matrix })
}

/// (xᵗ)_ij = θ_ij x_{−j,−i}.
pub fn twisted_transpose(spec: AlgebraSpec, x: &PolyMatrix) -> PolyMatrix {
    let mut out = PolyMatrix::zero(x.labels().to_vec());
    for &i in x.labels() {
        for &j in x.labels() {
            let v = x.get(-j, -i).scale(&Rational::from_integer(theta(spec, i, j).into()));
            out.add_to(i, j, &v);
        }
    }
    out
}

impl WitnessPoint {
    /// xᵗ = −x, trivially true in type A.
    pub fn is_antisymmetric(&self) -> bool {
        if self.spec.family == Family::A {
            return true;
        }
        let t = twisted_transpose(self.spec, &self.matrix);
        self.matrix.labels().iter().all(|&i| self.matrix.labels().iter().all(|&j| t.get(i, j) == &-self.matrix.get(i, j)))
    }

    /// Restriction of a polynomial in the coordinates to the witness matrices.
    pub fn evaluate(&self, f: &MultiPoly) -> MultiPoly {
        let map: HashMap<Var, MultiPoly> = f
            .variables()
            .into_iter()
            .filter_map(|v| match v {
                Var::X(i, j) => Some((v, self.matrix.get(i, j).clone())),
                _ => None,
            })
            .collect();
        f.substitute_many(&map)
    }

    /// Invariants restricted to the witness, computed from the matrix powers.
    pub fn evaluations(&self) -> Vec<(Invariant, MultiPoly)> {
        let mut powers: BTreeMap<u32, PolyMatrix> = BTreeMap::new();
        self.invariants
            .iter()
            .map(|inv| {
                let p = powers.entry(inv.power()).or_insert_with(|| self.matrix.power(inv.power()));
                (*inv, evaluate_on(p, *inv))
            })
            .collect()
    }

    /// Deterministic rational point away from the obvious degeneracies.
    pub fn generic_point(&self) -> HashMap<Var, Rational> {
        self.parameters.iter().enumerate().map(|(t, v)| (*v, rat(3 * t as i64 + 2, 2 * t as i64 + 7))).collect()
    }

    /// Rank of ∂(f∘x)/∂(y, z) at the generic point.
    pub fn jacobian_rank(&self, polys: &[MultiPoly]) -> usize {
        let restricted: Vec<MultiPoly> = polys.iter().map(|f| self.evaluate(f)).collect();
        jacobian_rank(&restricted, &self.parameters, &self.generic_point()).unwrap_or(0)
    }

    pub fn family_rank(&self) -> usize {
        let polys: Vec<MultiPoly> = self.evaluations().into_iter().map(|(_, f)| f).collect();
        jacobian_rank(&polys, &self.parameters, &self.generic_point()).unwrap_or(0)
    }

    /// Traces are a multiple of Σ y^M plus a function of z; corners are
    /// z_{ijM} plus a function of z's of lower power.
    pub fn is_triangular(&self) -> bool {
        let mult = if self.spec.family == Family::A { 1 } else { 2 };
        self.evaluations().into_iter().all(|(inv, f)| match inv {
            Invariant::Trace { power } => {
                let mut rest = f;
                for k in 1..=self.order {
                    rest = &rest - &MultiPoly::var(Var::Y(k)).pow(power).scale(&Rational::from_integer(mult.into()));
                }
                rest.variables().iter().all(|v| !matches!(v, Var::Y(_)))
            }
            Invariant::Corner { i, j, power } => {
                let rest = &f - &MultiPoly::var(z_var(i, j, power));
                rest.variables().iter().all(|v| match v {
                    Var::Z(_, _, l) => *l < power,
                    _ => false,
                })
            }
        })
    }
}

/// Derivative of `f` along the coadjoint action of F_g.
pub fn coadjoint_derivative(spec: AlgebraSpec, g: GenIndex, f: &MultiPoly) -> MultiPoly {
    let labels = spec.index_set();
    let mut gen = PolyMatrix::zero(labels);
    for ((a, b), c) in expand_in_units(spec, g) {
        gen.add_to(a, b, &MultiPoly::constant(c));
    }
    let x = coordinate_matrix(spec);
    let flow = gen.mul(&x).minus(&x.mul(&gen));
    let mut out = MultiPoly::zero();
    for h in lie_algebra(spec).basis() {
        let v = Var::X(h.i, h.j);
        if !f.contains_var(v) {
            continue;
        }
        out = &out + &(&f.derivative(v) * flow.get(h.i, h.j));
    }
    out
}

/// Killed by every generator of g_m(n).
pub fn is_coadjoint_invariant(spec: AlgebraSpec, m: usize, f: &MultiPoly) -> bool {
    let alg = lie_algebra(spec);
    alg.sub_basis(m as i32).into_iter().all(|k| coadjoint_derivative(spec, alg.basis()[k], f).is_zero())
}

/// Warning for orthogonal and symplectic degrees reaching n − m.
pub fn degree_warning(spec: AlgebraSpec, m: usize, degree: u32) -> Option<String> {
    if spec.family == Family::A || (degree as usize) < spec.rank.saturating_sub(m) {
        return None;
    }
    Some(format!(
        "degree {degree} reaches n - m = {} for {spec}; determinant-type invariants are not covered",
        spec.rank.saturating_sub(m)
    ))
}
