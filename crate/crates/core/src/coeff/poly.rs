use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::Rational;
use super::ring::{RingElem, Scalar};

/// Commuting indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    C,
    /// Weight coordinate λ_i.
    Lambda(i32),
    /// Shifted weight coordinate: λ_i − i in type A, l_i = λ_i + ρ_i otherwise.
    Shifted(i32),
    Y(u32),
    /// Witness parameter attached to a matrix entry (i, j) and a power M.
    Z(i32, i32, u32),
    /// Matrix-entry coordinate.
    X(i32, i32),
    /// Formal variable of generating functions.
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::C => write!(f, "c"),
            Var::Lambda(i) => write!(f, "lambda[{i}]"),
            Var::Shifted(i) => write!(f, "l[{i}]"),
            Var::Y(i) => write!(f, "y[{i}]"),
            Var::Z(i, j, m) => write!(f, "z[{i},{j};{m}]"),
            Var::X(i, j) => write!(f, "x[{i},{j}]"),
            Var::T => write!(f, "t"),
        }
    }
}

pub type PMono = SmallVec<[(Var, u32); 4]>;

fn mono_mul(a: &PMono, b: &PMono) -> PMono {
    let mut out = PMono::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPoly {
    terms: BTreeMap<PMono, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(PMono::new(), r);
        }
        MultiPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(&[(v, 1)], Rational::one())
    }

    pub fn c() -> Self {
        Self::var(Var::C)
    }

    pub fn monomial(exps: &[(Var, u32)], coeff: Rational) -> Self {
        let mut m: PMono = exps.iter().copied().filter(|e| e.1 > 0).collect();
        m.sort_by_key(|a| a.0);
        let mut merged = PMono::new();
        for (v, e) in m {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(merged, coeff);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Rational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&PMono::new()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&PMono::new()).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: PMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|x| x.1).sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().find(|x| x.0 == v).map(|x| x.1).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.iter().any(|x| x.0 == v))
    }

    /// Replace `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Self {
        let mut map = HashMap::new();
        map.insert(v, value.clone());
        self.substitute_many(&map)
    }

    pub fn substitute_many(&self, map: &HashMap<Var, MultiPoly>) -> Self {
        let mut powers: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = PMono::new();
            let mut factor = Self::constant(c.clone());
            for &(v, e) in m {
                match map.get(&v) {
                    Some(val) => {
                        let p = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                        factor = &factor * &*p;
                    }
                    None => kept.push((v, e)),
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(mono_mul(&kept, &fm), fc);
            }
        }
        out
    }

    /// Evaluate at a point; `None` if some variable is left unassigned.
    pub fn eval(&self, point: &HashMap<Var, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                let x = point.get(&v)?;
                t *= super::rational::pow(x, e);
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|x| x.0 == v) {
                let e = m[pos].1;
                let mut nm = m.clone();
                if e == 1 {
                    nm.remove(pos);
                } else {
                    nm[pos].1 = e - 1;
                }
                out.add_term(nm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Coefficient polynomial of v^e (other variables kept).
    pub fn coefficient_of(&self, v: Var, e: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let got = m.iter().find(|x| x.0 == v).map(|x| x.1).unwrap_or(0);
            if got == e {
                let nm: PMono = m.iter().copied().filter(|x| x.0 != v).collect();
                out.add_term(nm, c.clone());
            }
        }
        out
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let exps: Vec<(Var, u32)> = m.iter().map(|&(v, e)| (f(v), e)).collect();
            for (nm, nc) in Self::monomial(&exps, c.clone()).terms {
                out.add_term(nm, nc);
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_empty() {
                parts.push(abs.to_string());
            }
            for &(v, e) in m {
                if e == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("{v}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Rational> for MultiPoly {
    fn from(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
}

impl RingElem for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero()
    }
    fn one_like(&self) -> Self {
        MultiPoly::one()
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if c.is_zero() {
            None
        } else {
            Some(MultiPoly::constant(c.recip()))
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Scalar for MultiPoly {
    fn zero_scalar() -> Self {
        MultiPoly::zero()
    }
    fn one_scalar() -> Self {
        MultiPoly::one()
    }
    fn from_rational(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
    fn to_poly(&self) -> MultiPoly {
        self.clone()
    }
    fn from_poly(p: &MultiPoly) -> Option<Self> {
        Some(p.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
