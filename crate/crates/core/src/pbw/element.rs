use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::coeff::{MultiPoly, Rational, RingElem, Scalar};
use crate::lie::GenIndex;

use super::{Mono, Pbw, PbwError};

/// A finite combination of normal monomials over a fixed alphabet.
#[derive(Clone)]
pub struct UeaElement<R: Scalar> {
    alg: Arc<Pbw<R>>,
    terms: BTreeMap<Mono, R>,
}

impl<R: Scalar> UeaElement<R> {
    pub(crate) fn from_terms(alg: Arc<Pbw<R>>, terms: BTreeMap<Mono, R>) -> Self {
        UeaElement { alg, terms }
    }

    pub fn algebra(&self) -> &Arc<Pbw<R>> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Coefficient of the empty monomial.
    pub fn scalar_part(&self) -> R {
        self.terms.get(&Mono::new()).cloned().unwrap_or_else(R::zero_scalar)
    }

    pub fn as_scalar(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero_scalar()),
            1 => self.terms.get(&Mono::new()).cloned(),
            _ => None,
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), PbwError> {
        if self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(PbwError::AlgebraMismatch(self.alg.describe(), other.alg.describe()))
        }
    }

    fn add_into(terms: &mut BTreeMap<Mono, R>, m: &Mono, c: &R) {
        if c.vanishes() {
            return;
        }
        match terms.get_mut(m) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.vanishes() {
                    terms.remove(m);
                }
            }
            None => {
                terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn try_plus(&self, other: &Self) -> Result<Self, PbwError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::add_into(&mut terms, m, c);
        }
        Ok(UeaElement { alg: self.alg.clone(), terms })
    }

    pub fn try_minus(&self, other: &Self) -> Result<Self, PbwError> {
        self.try_plus(&other.negated())
    }

    pub fn try_times(&self, other: &Self) -> Result<Self, PbwError> {
        self.check_same(other)?;
        let mut out: BTreeMap<Mono, R> = BTreeMap::new();
        if self.terms.is_empty() || other.terms.is_empty() {
            return Ok(UeaElement { alg: self.alg.clone(), terms: out });
        }
        for (mb, cb) in &other.terms {
            let mut cur: HashMap<Mono, R> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
            for &x in mb.iter() {
                let mut next: HashMap<Mono, R> = HashMap::with_capacity(cur.len());
                for (t, c) in &cur {
                    for (t2, c2) in self.alg.mul_mono_letter(t, x).iter() {
                        let v = c.times(c2);
                        match next.get_mut(t2) {
                            Some(e) => e.add_assign_ref(&v),
                            None => {
                                next.insert(t2.clone(), v);
                            }
                        }
                    }
                }
                next.retain(|_, c| !c.vanishes());
                cur = next;
            }
            for (t, c) in cur {
                Self::add_into(&mut out, &t, &c.times(cb));
            }
        }
        Ok(UeaElement { alg: self.alg.clone(), terms: out })
    }

    pub fn try_commutator(&self, other: &Self) -> Result<Self, PbwError> {
        self.try_times(other)?.try_minus(&other.try_times(self)?)
    }

    /// Panicking versions for elements known to share an algebra.
    pub fn plus(&self, other: &Self) -> Self {
        self.try_plus(other).expect("same algebra")
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.try_minus(other).expect("same algebra")
    }

    pub fn times(&self, other: &Self) -> Self {
        self.try_times(other).expect("same algebra")
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.try_commutator(other).expect("same algebra")
    }

    pub fn negated(&self) -> Self {
        UeaElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect() }
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.scaled(r);
            if !v.vanishes() {
                terms.insert(m.clone(), v);
            }
        }
        UeaElement { alg: self.alg.clone(), terms }
    }

    pub fn scale_by(&self, r: &R) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.times(r);
            if !v.vanishes() {
                terms.insert(m.clone(), v);
            }
        }
        UeaElement { alg: self.alg.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.vanishes() {
                terms.insert(m.clone(), v);
            }
        }
        UeaElement { alg: self.alg.clone(), terms }
    }

    /// Re-expand over another alphabet of the same or a larger algebra.
    pub fn to_algebra(&self, target: &Arc<Pbw<R>>) -> Result<Self, PbwError> {
        if self.alg.same_as(target) {
            return Ok(UeaElement { alg: target.clone(), terms: self.terms.clone() });
        }
        let mut images: Vec<Option<UeaElement<R>>> = vec![None; self.alg.letters.len()];
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut prod = target.scalar(c.clone());
            for &x in m.iter() {
                if images[x as usize].is_none() {
                    let l = &self.alg.letters[x as usize];
                    let img = target.gen(l.label.i, l.label.j)?.minus(&target.scalar(l.offset.clone()));
                    images[x as usize] = Some(img);
                }
                prod = prod.times(images[x as usize].as_ref().unwrap());
            }
            out = out.plus(&prod);
        }
        Ok(out)
    }

    /// Leading homogeneous part as a polynomial in commuting matrix
    /// coordinates x_g (labels of the canonical basis), offsets dropped.
    pub fn top_symbol(&self) -> MultiPoly {
        let d = self.degree();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.len() != d {
                continue;
            }
            let mut p = c.to_poly();
            for &x in m.iter() {
                let l = &self.alg.letters[x as usize];
                let (s, b) = self.alg.lie.locate(l.label).expect("alphabet labels are valid").expect("nonzero");
                let g = self.alg.lie.basis()[b];
                p = &p * &MultiPoly::var(crate::coeff::Var::X(g.i, g.j)).scale(&Rational::from_integer(s.into()));
            }
            out = &out + &p;
        }
        out
    }

    /// Words of the element as label sequences, in the element's letter order.
    pub fn label_words(&self) -> Vec<(Vec<GenIndex>, R)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.iter().map(|&x| self.alg.letters[x as usize].label).collect(), c.clone()))
            .collect()
    }
}

impl<R: Scalar> PartialEq for UeaElement<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.alg.same_as(&other.alg) {
            self.terms == other.terms
        } else {
            match other.to_algebra(&self.alg) {
                Ok(o) => self.terms == o.terms,
                Err(_) => false,
            }
        }
    }
}

impl<R: Scalar> fmt::Debug for UeaElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Scalar> fmt::Display for UeaElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let family_a = self.alg.spec().family == crate::lie::Family::A;
        let sym = if family_a { "E" } else { "F" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut word: Vec<String> = Vec::new();
                let mut k = 0;
                while k < m.len() {
                    let x = m[k];
                    let mut e = 1;
                    while k + e < m.len() && m[k + e] == x {
                        e += 1;
                    }
                    let l = &self.alg.letters[x as usize];
                    let mut s = format!("{sym}[{},{}]", l.label.i, l.label.j);
                    if !l.offset.vanishes() {
                        s = format!("({s} - ({}))", l.offset.render());
                    }
                    if e > 1 {
                        s = format!("{s}^{e}");
                    }
                    word.push(s);
                    k += e;
                }
                let coeff = c.render();
                if word.is_empty() {
                    format!("({coeff})")
                } else if coeff == "1" {
                    word.join("*")
                } else {
                    format!("({coeff})*{}", word.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Scalar> RingElem for UeaElement<R> {
    fn zero_like(&self) -> Self {
        self.alg.zero()
    }
    fn one_like(&self) -> Self {
        self.alg.one()
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        UeaElement::plus(self, other)
    }
    fn minus(&self, other: &Self) -> Self {
        UeaElement::minus(self, other)
    }
    fn times(&self, other: &Self) -> Self {
        UeaElement::times(self, other)
    }
    fn negated(&self) -> Self {
        UeaElement::negated(self)
    }
    fn scaled(&self, r: &Rational) -> Self {
        UeaElement::scaled(self, r)
    }
    fn try_inverse(&self) -> Option<Self> {
        let s = self.as_scalar()?;
        let inv = s.try_inverse()?;
        Some(self.alg.scalar(inv))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            Self::add_into(&mut self.terms, m, c);
        }
    }
}
