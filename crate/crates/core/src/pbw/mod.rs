//! PBW normal forms in U(g(n)) over an ordered alphabet of basis letters.
//!
//! A letter is F_g − offset for a label g, where the offset is a central
//! scalar. Letters are totally ordered by their position in the alphabet, and
//! an element is stored as a combination of non-decreasing letter words.

mod element;
pub mod hc;
pub mod ideal;

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;
use smallvec::SmallVec;

use crate::coeff::{Rational, Scalar};
use crate::lie::{lie_algebra, tri_class, AlgebraSpec, GenIndex, LieAlgebra, LieError, TriClass};

pub use element::UeaElement;

pub type Mono = SmallVec<[u8; 12]>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PbwError {
    #[error("elements live in different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("element does not commute with the Cartan generator F[{0},{0}]; it is not in the centralizer A(n)^0")]
    NotInCentralizer(i32),
    #[error("element has nonzero weight (fails to commute with {0})")]
    NonzeroWeight(GenIndex),
    #[error("alphabet does not cover the canonical basis of {0}")]
    IncompleteAlphabet(AlgebraSpec),
    #[error("operation needs rank at least {0}")]
    RankTooSmall(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterClass {
    Lower,
    Cartan,
    Upper,
    Row,
    Middle,
    Column,
    Shifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    /// lower < cartan < upper
    Hc,
    /// row-n < IDEAL(n−1) < column-n < shifted
    LeftIdeal,
    /// shifted < row-n < IDEAL(n−1) < column-n
    RightIdeal,
    /// Alphabet supplied by the caller; the tag disambiguates cache entries.
    Custom(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Letter<R> {
    pub label: GenIndex,
    pub offset: R,
    pub class: LetterClass,
}

impl<R: Scalar> Letter<R> {
    pub fn plain(label: GenIndex, class: LetterClass) -> Self {
        Letter { label, offset: R::zero_scalar(), class }
    }
}

#[derive(Clone, Debug)]
struct Combo<R> {
    letters: Vec<(u8, R)>,
    constant: R,
}

type Memo<R> = DashMap<(Mono, u8), Arc<Vec<(Mono, R)>>>;

/// An ordered PBW alphabet for U(g) with its bracket table and product memo.
pub struct Pbw<R: Scalar> {
    lie: Arc<LieAlgebra>,
    kind: OrderKind,
    tag: String,
    letters: Vec<Letter<R>>,
    /// basis position → (letter, s) with B = s·(letter + offset)
    basis_letter: Vec<(u8, i32)>,
    table: Vec<Vec<Combo<R>>>,
    memo: Memo<R>,
}

impl<R: Scalar> fmt::Debug for Pbw<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pbw({}, {:?}, {})", self.lie.spec(), self.kind, self.tag)
    }
}

impl<R: Scalar> Pbw<R> {
    /// Build an algebra from an explicit alphabet. `tag` names the central
    /// offsets (used for cache identity and diagnostics).
    pub fn from_letters(
        spec: AlgebraSpec,
        kind: OrderKind,
        tag: String,
        letters: Vec<Letter<R>>,
    ) -> Result<Self, PbwError> {
        let lie = lie_algebra(spec);
        let mut basis_letter: Vec<Option<(u8, i32)>> = vec![None; lie.dim()];
        for (k, l) in letters.iter().enumerate() {
            let (s, b) = lie.locate(l.label)?.ok_or(PbwError::IncompleteAlphabet(spec))?;
            if basis_letter[b].is_some() {
                return Err(PbwError::IncompleteAlphabet(spec));
            }
            basis_letter[b] = Some((k as u8, s));
        }
        let basis_letter: Vec<(u8, i32)> =
            basis_letter.into_iter().collect::<Option<_>>().ok_or(PbwError::IncompleteAlphabet(spec))?;
        let lie_ref = &lie;
        let mut table = Vec::with_capacity(letters.len());
        for p in 0..letters.len() {
            let mut row = Vec::with_capacity(letters.len());
            for q in 0..letters.len() {
                let br = lie_ref.bracket_gen(letters[p].label, letters[q].label)?;
                let mut combo = Combo { letters: Vec::new(), constant: R::zero_scalar() };
                for (b, coef) in br {
                    let (l, s) = basis_letter[b];
                    let c = coef * Rational::from_integer(s.into());
                    combo.constant = combo.constant.plus(&letters[l as usize].offset.scaled(&c));
                    combo.letters.push((l, R::from_rational(c)));
                }
                combo.letters.sort_by_key(|t| t.0);
                row.push(combo);
            }
            table.push(row);
        }
        Ok(Pbw { lie, kind, tag, letters, basis_letter, table, memo: DashMap::new() })
    }

    /// Harish-Chandra order: lower < cartan < upper, no offsets.
    pub fn hc(spec: AlgebraSpec) -> Arc<Self> {
        cached(spec, OrderKind::Hc, String::new(), || {
            let lie = lie_algebra(spec);
            let mut letters: Vec<Letter<R>> = Vec::new();
            for class in [TriClass::Lower, TriClass::Cartan, TriClass::Upper] {
                for g in lie.basis() {
                    if tri_class(*g) == class {
                        let lc = match class {
                            TriClass::Lower => LetterClass::Lower,
                            TriClass::Cartan => LetterClass::Cartan,
                            TriClass::Upper => LetterClass::Upper,
                        };
                        letters.push(Letter::plain(*g, lc));
                    }
                }
            }
            Pbw::from_letters(spec, OrderKind::Hc, String::new(), letters).expect("HC alphabet covers the basis")
        })
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.lie.spec()
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    pub fn letters(&self) -> &[Letter<R>] {
        &self.letters
    }

    pub fn describe(&self) -> String {
        format!("{} {:?} {}", self.spec(), self.kind, self.tag)
    }

    fn same_as(&self, other: &Pbw<R>) -> bool {
        std::ptr::eq(self, other) || (self.spec() == other.spec() && self.kind == other.kind && self.tag == other.tag)
    }

    pub fn zero(self: &Arc<Self>) -> UeaElement<R> {
        UeaElement::from_terms(self.clone(), Default::default())
    }

    pub fn one(self: &Arc<Self>) -> UeaElement<R> {
        self.scalar(R::one_scalar())
    }

    pub fn scalar(self: &Arc<Self>, r: R) -> UeaElement<R> {
        let mut terms = std::collections::BTreeMap::new();
        if !r.vanishes() {
            terms.insert(Mono::new(), r);
        }
        UeaElement::from_terms(self.clone(), terms)
    }

    pub fn letter(self: &Arc<Self>, k: usize) -> UeaElement<R> {
        let mut terms = std::collections::BTreeMap::new();
        terms.insert(Mono::from_slice(&[k as u8]), R::one_scalar());
        UeaElement::from_terms(self.clone(), terms)
    }

    /// F_ij (E_ij in family A) as an element.
    pub fn gen(self: &Arc<Self>, i: i32, j: i32) -> Result<UeaElement<R>, PbwError> {
        match self.lie.locate(GenIndex::new(i, j))? {
            None => Ok(self.zero()),
            Some((s, b)) => Ok(self.basis_element(b).scaled(&Rational::from_integer(s.into()))),
        }
    }

    /// The canonical basis element at position `b`.
    pub fn basis_element(self: &Arc<Self>, b: usize) -> UeaElement<R> {
        let (l, s) = self.basis_letter[b];
        let e = self.letter(l as usize).plus(&self.scalar(self.letters[l as usize].offset.clone()));
        e.scaled(&Rational::from_integer(s.into()))
    }

    /// m·x for a normal monomial m and a letter x, as normal terms.
    pub(crate) fn mul_mono_letter(&self, m: &[u8], x: u8) -> Arc<Vec<(Mono, R)>> {
        if m.last().is_none_or(|&y| y <= x) {
            let mut out = Mono::from_slice(m);
            out.push(x);
            return Arc::new(vec![(out, R::one_scalar())]);
        }
        let key = (Mono::from_slice(m), x);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let y = *m.last().unwrap();
        let head = &m[..m.len() - 1];
        let mut acc: HashMap<Mono, R> = HashMap::new();
        let push = |acc: &mut HashMap<Mono, R>, t: &Mono, c: R| {
            if c.vanishes() {
                return;
            }
            match acc.get_mut(t) {
                Some(v) => {
                    v.add_assign_ref(&c);
                }
                None => {
                    acc.insert(t.clone(), c);
                }
            }
        };
        for (t, c) in self.mul_mono_letter(head, x).iter() {
            for (t2, c2) in self.mul_mono_letter(t, y).iter() {
                push(&mut acc, t2, c.times(c2));
            }
        }
        let combo = &self.table[y as usize][x as usize];
        for (z, cz) in &combo.letters {
            for (t, c) in self.mul_mono_letter(head, *z).iter() {
                push(&mut acc, t, cz.times(c));
            }
        }
        if !combo.constant.vanishes() {
            push(&mut acc, &Mono::from_slice(head), combo.constant.clone());
        }
        let mut out: Vec<(Mono, R)> = acc.into_iter().filter(|(_, c)| !c.vanishes()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let out = Arc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// Normal form of arbitrary letter words by repeatedly rewriting the
    /// leftmost adjacent out-of-order pair yx into xy + [y,x].
    pub fn normal_form_words(self: &Arc<Self>, words: &[(Vec<u8>, R)]) -> UeaElement<R> {
        let mut pending: std::collections::BTreeMap<Vec<u8>, R> = std::collections::BTreeMap::new();
        let add = |map: &mut std::collections::BTreeMap<Vec<u8>, R>, w: Vec<u8>, c: R| {
            if c.vanishes() {
                return;
            }
            let e = map.entry(w).or_insert_with(R::zero_scalar);
            e.add_assign_ref(&c);
        };
        for (w, c) in words {
            add(&mut pending, w.clone(), c.clone());
        }
        let mut done: std::collections::BTreeMap<Mono, R> = std::collections::BTreeMap::new();
        while let Some((w, c)) = pending.pop_last() {
            if c.vanishes() {
                continue;
            }
            match w.windows(2).position(|p| p[0] > p[1]) {
                None => {
                    let e = done.entry(Mono::from_slice(&w)).or_insert_with(R::zero_scalar);
                    e.add_assign_ref(&c);
                }
                Some(i) => {
                    let (y, x) = (w[i], w[i + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    add(&mut pending, swapped, c.clone());
                    let combo = &self.table[y as usize][x as usize];
                    for (z, cz) in &combo.letters {
                        let mut nw = w[..i].to_vec();
                        nw.push(*z);
                        nw.extend_from_slice(&w[i + 2..]);
                        add(&mut pending, nw, c.times(cz));
                    }
                    if !combo.constant.vanishes() {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(&w[i + 2..]);
                        add(&mut pending, nw, c.times(&combo.constant));
                    }
                }
            }
        }
        done.retain(|_, c| !c.vanishes());
        UeaElement::from_terms(self.clone(), done)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn letter_position(&self, label: GenIndex) -> Option<usize> {
        self.letters.iter().position(|l| l.label == label)
    }
}

type CacheKey = (TypeId, AlgebraSpec, OrderKind, String);

/// Share one algebra (and its product memo) per key.
pub(crate) fn cached<R: Scalar>(
    spec: AlgebraSpec,
    kind: OrderKind,
    tag: String,
    build: impl FnOnce() -> Pbw<R>,
) -> Arc<Pbw<R>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (TypeId::of::<R>(), spec, kind, tag);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone().downcast::<Pbw<R>>().expect("cache entries are keyed by type");
    }
    let built: Arc<Pbw<R>> = Arc::new(build());
    let mut guard = cache.lock().unwrap();
    let entry = guard.entry(key).or_insert_with(|| built.clone() as Arc<dyn Any + Send + Sync>);
    entry.clone().downcast::<Pbw<R>>().expect("cache entries are keyed by type")
}
