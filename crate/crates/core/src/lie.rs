//! Index sets, canonical bases, θ signs, brackets and ρ vectors for gl(n),
//! o(2n), o(2n+1) and sp(2n).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::coeff::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// gl(n)
    A,
    /// o(2n+1)
    B,
    /// sp(2n)
    C,
    /// o(2n)
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpec {
    pub family: Family,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("unrecognized algebra `{0}` (expected gl:n, o:N or sp:2n)")]
    UnknownSpec(String),
    #[error("rho is defined for families B, C, D only")]
    RhoForTypeA,
    #[error("index ({0},{1}) is outside the index set of {2}")]
    IndexOutOfRange(i32, i32, AlgebraSpec),
    #[error("rank {0} is too small for this operation")]
    RankTooSmall(usize),
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        AlgebraSpec { family, rank }
    }

    pub fn gl(n: usize) -> Self {
        Self::new(Family::A, n)
    }

    /// o(N) for the matrix size N.
    pub fn o(size: usize) -> Self {
        if size % 2 == 1 {
            Self::new(Family::B, size / 2)
        } else {
            Self::new(Family::D, size / 2)
        }
    }

    /// sp(N) for the even matrix size N.
    pub fn sp(size: usize) -> Self {
        Self::new(Family::C, size / 2)
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self.family, Family::B | Family::D)
    }

    pub fn with_rank(&self, rank: usize) -> Self {
        Self::new(self.family, rank)
    }

    /// Matrix size N.
    pub fn size(&self) -> usize {
        match self.family {
            Family::A => self.rank,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    pub fn index_set(&self) -> Vec<i32> {
        index_labels(self.family, self.rank)
    }

    pub fn contains(&self, i: i32) -> bool {
        let n = self.rank as i32;
        match self.family {
            Family::A => (1..=n).contains(&i),
            Family::B => (-n..=n).contains(&i),
            Family::C | Family::D => i != 0 && (-n..=n).contains(&i),
        }
    }

    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * n,
            Family::B | Family::C => 2 * n * n + n,
            Family::D => n * (2 * n).saturating_sub(1),
        }
    }
}

/// Matrix labels for the rank-`n` member of a family: 1..n, or −n..n with 0 in family B only.
pub fn index_labels(family: Family, n: usize) -> Vec<i32> {
    let n = n as i32;
    match family {
        Family::A => (1..=n).collect(),
        Family::B => (-n..=n).collect(),
        Family::C | Family::D => (-n..=n).filter(|&i| i != 0).collect(),
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "gl:{}", self.rank),
            Family::B | Family::D => write!(f, "o:{}", self.size()),
            Family::C => write!(f, "sp:{}", self.size()),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::UnknownSpec(s.to_string());
        let (name, num) = s.trim().split_once(':').ok_or_else(bad)?;
        let k: usize = num.trim().parse().map_err(|_| bad())?;
        let spec = match name.trim() {
            "gl" => AlgebraSpec::gl(k),
            "o" => AlgebraSpec::o(k),
            "sp" if k.is_multiple_of(2) => AlgebraSpec::sp(k),
            _ => return Err(bad()),
        };
        if spec.rank == 0 {
            return Err(bad());
        }
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIndex {
    pub i: i32,
    pub j: i32,
}

impl GenIndex {
    pub fn new(i: i32, j: i32) -> Self {
        GenIndex { i, j }
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriClass {
    Lower,
    Cartan,
    Upper,
}

pub fn tri_class(g: GenIndex) -> TriClass {
    match g.i.cmp(&g.j) {
        std::cmp::Ordering::Less => TriClass::Upper,
        std::cmp::Ordering::Equal => TriClass::Cartan,
        std::cmp::Ordering::Greater => TriClass::Lower,
    }
}

pub fn theta(spec: AlgebraSpec, i: i32, j: i32) -> i32 {
    match spec.family {
        Family::C => i.signum() * j.signum(),
        _ => 1,
    }
}

fn is_canonical(spec: AlgebraSpec, g: GenIndex) -> bool {
    match spec.family {
        Family::A => true,
        Family::C => g.i + g.j < 0 || (g.i + g.j == 0 && g.i != 0),
        Family::B | Family::D => g.i + g.j < 0,
    }
}

/// F_ij as ±(canonical basis element), or `None` when F_ij = 0.
pub fn canonicalize(spec: AlgebraSpec, i: i32, j: i32) -> Option<(i32, GenIndex)> {
    let g = GenIndex::new(i, j);
    if is_canonical(spec, g) {
        return Some((1, g));
    }
    if i + j == 0 {
        return None;
    }
    Some((-theta(spec, i, j), GenIndex::new(-j, -i)))
}

/// F_ij written in matrix units.
pub fn expand_in_units(spec: AlgebraSpec, g: GenIndex) -> BTreeMap<(i32, i32), Rational> {
    let mut out = BTreeMap::new();
    let mut add = |k: (i32, i32), c: Rational| {
        let e = out.entry(k).or_insert_with(Rational::zero);
        *e += c;
    };
    add((g.i, g.j), Rational::one());
    if spec.family != Family::A {
        add((-g.j, -g.i), Rational::from_integer((-theta(spec, g.i, g.j)).into()));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn unit_bracket(
    x: &BTreeMap<(i32, i32), Rational>,
    y: &BTreeMap<(i32, i32), Rational>,
) -> BTreeMap<(i32, i32), Rational> {
    let mut out: BTreeMap<(i32, i32), Rational> = BTreeMap::new();
    for (&(a, b), cx) in x {
        for (&(c, d), cy) in y {
            let k = cx * cy;
            if b == c {
                *out.entry((a, d)).or_insert_with(Rational::zero) += &k;
            }
            if d == a {
                *out.entry((c, b)).or_insert_with(Rational::zero) -= &k;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Structure constants over the canonical basis, computed once per spec.
#[derive(Debug)]
pub struct LieAlgebra {
    spec: AlgebraSpec,
    basis: Vec<GenIndex>,
    position: HashMap<GenIndex, usize>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl LieAlgebra {
    fn build(spec: AlgebraSpec) -> Self {
        let labels = spec.index_set();
        let mut basis = Vec::new();
        for &i in &labels {
            for &j in &labels {
                let g = GenIndex::new(i, j);
                if is_canonical(spec, g) {
                    basis.push(g);
                }
            }
        }
        let position: HashMap<GenIndex, usize> = basis.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let units: Vec<_> = basis.iter().map(|g| expand_in_units(spec, *g)).collect();
        let mut table = vec![vec![Vec::new(); basis.len()]; basis.len()];
        for x in 0..basis.len() {
            for y in 0..basis.len() {
                let br = unit_bracket(&units[x], &units[y]);
                let mut combo = Vec::new();
                for (k, g) in basis.iter().enumerate() {
                    if let Some(c) = br.get(&(g.i, g.j)) {
                        let weight = if spec.family == Family::C && g.i + g.j == 0 { rat(1, 2) } else { Rational::one() };
                        combo.push((k, c * weight));
                    }
                }
                debug_assert_eq!(
                    {
                        let mut back: BTreeMap<(i32, i32), Rational> = BTreeMap::new();
                        for (k, c) in &combo {
                            for (e, v) in &units[*k] {
                                *back.entry(*e).or_insert_with(Rational::zero) += c * v;
                            }
                        }
                        back.retain(|_, c| !c.is_zero());
                        back
                    },
                    br
                );
                table[x][y] = combo;
            }
        }
        LieAlgebra { spec, basis, position, table }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GenIndex] {
        &self.basis
    }

    pub fn index_of(&self, g: GenIndex) -> Option<usize> {
        self.position.get(&g).copied()
    }

    /// Structure constants of [b_x, b_y].
    pub fn bracket(&self, x: usize, y: usize) -> &[(usize, Rational)] {
        &self.table[x][y]
    }

    /// [F_a, F_b] for arbitrary index pairs, in the canonical basis.
    pub fn bracket_gen(&self, a: GenIndex, b: GenIndex) -> Result<Vec<(usize, Rational)>, LieError> {
        let ca = self.locate(a)?;
        let cb = self.locate(b)?;
        let (Some((sa, xa)), Some((sb, xb))) = (ca, cb) else {
            return Ok(Vec::new());
        };
        let s = Rational::from_integer((sa * sb).into());
        Ok(self.table[xa][xb].iter().map(|(k, c)| (*k, c * &s)).collect())
    }

    /// F_g as ± a basis position, `None` if zero.
    pub fn locate(&self, g: GenIndex) -> Result<Option<(i32, usize)>, LieError> {
        if !self.spec.contains(g.i) || !self.spec.contains(g.j) {
            return Err(LieError::IndexOutOfRange(g.i, g.j, self.spec));
        }
        Ok(canonicalize(self.spec, g.i, g.j).map(|(s, c)| (s, self.position[&c])))
    }

    /// Basis of g_m(n): canonical elements with m+1 ≤ |i|, |j|.
    pub fn sub_basis(&self, m: i32) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| {
                let g = self.basis[k];
                g.i.abs() > m && g.j.abs() > m
            })
            .collect()
    }

    pub fn cartan(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&k| tri_class(self.basis[k]) == TriClass::Cartan).collect()
    }

    fn dense(&self, combo: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (k, c) in combo {
            out[*k] += c;
        }
        out
    }

    fn bracket_dense(&self, v: &[Rational], z: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (t, d) in &self.table[k][z] {
                out[*t] += c * d;
            }
        }
        out
    }

    /// Pairs (x, y) with [b_x, b_y] ≠ −[b_y, b_x].
    pub fn antisymmetry_defects(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.dim() {
            for y in x..self.dim() {
                let a = self.dense(&self.table[x][y]);
                let b = self.dense(&self.table[y][x]);
                if a.iter().zip(&b).any(|(p, q)| !(p + q).is_zero()) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Triples (x, y, z) with [[b_x, b_y], b_z] + [[b_y, b_z], b_x] + [[b_z, b_x], b_y] ≠ 0.
    pub fn jacobi_defects(&self) -> Vec<(usize, usize, usize)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let mut sum = self.bracket_dense(&self.dense(&self.table[x][y]), z);
                    for (k, v) in self.bracket_dense(&self.dense(&self.table[y][z]), x).into_iter().enumerate() {
                        sum[k] += v;
                    }
                    for (k, v) in self.bracket_dense(&self.dense(&self.table[z][x]), y).into_iter().enumerate() {
                        sum[k] += v;
                    }
                    if sum.iter().any(|c| !c.is_zero()) {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }
}

/// Shared structure-constant table for `spec`.
pub fn lie_algebra(spec: AlgebraSpec) -> Arc<LieAlgebra> {
    static CACHE: OnceLock<Mutex<HashMap<AlgebraSpec, Arc<LieAlgebra>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(a) = cache.lock().unwrap().get(&spec) {
        return a.clone();
    }
    let built = Arc::new(LieAlgebra::build(spec));
    cache.lock().unwrap().entry(spec).or_insert(built).clone()
}

/// ρ₋ᵢ for i = 1..n.
pub fn rho(spec: AlgebraSpec) -> Result<Vec<Rational>, LieError> {
    let n = spec.rank as i64;
    let values = match spec.family {
        Family::A => return Err(LieError::RhoForTypeA),
        Family::B => (1..=n).map(|i| rat(2 * i - 1, 2)).collect(),
        Family::C => (1..=n).map(|i| rat(i, 1)).collect(),
        Family::D => (1..=n).map(|i| rat(i - 1, 1)).collect(),
    };
    Ok(values)
}

/// κₙ = (N ∓ 1)/2, upper sign orthogonal.
pub fn kappa(spec: AlgebraSpec) -> Rational {
    let size = spec.size() as i64;
    if spec.is_orthogonal() {
        rat(size - 1, 2)
    } else {
        rat(size + 1, 2)
    }
}
