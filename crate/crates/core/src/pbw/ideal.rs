//! The ideal orders, membership in I(n) and J(n), and the projection π_{n,c}.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::Scalar;
use crate::lie::{index_labels, AlgebraSpec, Family, GenIndex};

use super::{cached, Letter, LetterClass, Mono, OrderKind, Pbw, PbwError, UeaElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// I(n), generated on the left by the column-n generators.
    Left,
    /// J(n), generated on the right by the row-n generators.
    Right,
}

struct Level<R> {
    row: Vec<Letter<R>>,
    col: Vec<Letter<R>>,
    shifted: Letter<R>,
}

fn level<R: Scalar>(family: Family, n: usize, c: &R) -> Level<R> {
    let ni = n as i32;
    let inner = index_labels(family, n - 1);
    let mut row: Vec<Letter<R>> =
        inner.iter().map(|&j| Letter::plain(GenIndex::new(ni, j), LetterClass::Row)).collect();
    let mut col: Vec<Letter<R>> =
        inner.iter().map(|&i| Letter::plain(GenIndex::new(i, ni), LetterClass::Column)).collect();
    if family == Family::C {
        row.push(Letter::plain(GenIndex::new(ni, -ni), LetterClass::Row));
        col.insert(0, Letter::plain(GenIndex::new(-ni, ni), LetterClass::Column));
    }
    let offset = if family == Family::A { c.clone() } else { c.negated() };
    Level { row, col, shifted: Letter { label: GenIndex::new(ni, ni), offset, class: LetterClass::Shifted } }
}

/// Letters of IDEAL(n) with every class tag set to `Middle`.
fn nested<R: Scalar>(family: Family, n: usize, c: &R) -> Vec<Letter<R>> {
    if n == 0 {
        return Vec::new();
    }
    let lv = level(family, n, c);
    let mut out = lv.row;
    out.extend(nested(family, n - 1, c));
    out.extend(lv.col);
    out.push(lv.shifted);
    for l in &mut out {
        l.class = LetterClass::Middle;
    }
    out
}

fn alphabet<R: Scalar>(spec: AlgebraSpec, side: Side, c: &R) -> Vec<Letter<R>> {
    let n = spec.rank;
    let lv = level(spec.family, n, c);
    let middle = nested(spec.family, n - 1, c);
    let mut out = Vec::new();
    match side {
        Side::Left => {
            out.extend(lv.row);
            out.extend(middle);
            out.extend(lv.col);
            out.push(lv.shifted);
        }
        Side::Right => {
            out.push(lv.shifted);
            out.extend(lv.row);
            out.extend(middle);
            out.extend(lv.col);
        }
    }
    out
}

impl<R: Scalar> Pbw<R> {
    /// IDEAL(n): row-n < IDEAL(n−1) < column-n < shifted Cartan letter.
    pub fn left_ideal(spec: AlgebraSpec, c: &R) -> Arc<Self> {
        Self::ideal_order(spec, Side::Left, c)
    }

    /// Mirror order for J(n): shifted < row-n < IDEAL(n−1) < column-n.
    pub fn right_ideal(spec: AlgebraSpec, c: &R) -> Arc<Self> {
        Self::ideal_order(spec, Side::Right, c)
    }

    pub fn ideal_order(spec: AlgebraSpec, side: Side, c: &R) -> Arc<Self> {
        let kind = match side {
            Side::Left => OrderKind::LeftIdeal,
            Side::Right => OrderKind::RightIdeal,
        };
        let tag = c.render();
        cached(spec, kind, tag.clone(), || {
            Pbw::from_letters(spec, kind, tag, alphabet(spec, side, c)).expect("ideal alphabet covers the basis")
        })
    }
}

/// The generator F_nn (E_nn in family A) whose centralizer is A(n)⁰.
pub fn top_cartan<R: Scalar>(alg: &Arc<Pbw<R>>) -> Result<UeaElement<R>, PbwError> {
    let n = alg.spec().rank as i32;
    alg.gen(n, n)
}

pub fn in_centralizer_zero<R: Scalar>(a: &UeaElement<R>) -> Result<bool, PbwError> {
    Ok(a.try_commutator(&top_cartan(a.algebra())?)?.is_zero())
}

/// Membership in I(n) or J(n) for the ideal attached to the parameter c.
pub fn ideal_membership<R: Scalar>(a: &UeaElement<R>, side: Side, c: &R) -> Result<bool, PbwError> {
    let alg = Pbw::ideal_order(a.algebra().spec(), side, c);
    let b = a.to_algebra(&alg)?;
    let marks = match side {
        Side::Left => [LetterClass::Column, LetterClass::Shifted],
        Side::Right => [LetterClass::Row, LetterClass::Shifted],
    };
    let letters = alg.letters();
    let member = b.terms().all(|(m, _)| m.iter().any(|&x| marks.contains(&letters[x as usize].class)));
    Ok(member)
}

/// π_{n,c}: A(n)⁰ → A(n−1), returned over IDEAL(n−1).
pub fn pi_projection<R: Scalar>(a: &UeaElement<R>, c: &R) -> Result<UeaElement<R>, PbwError> {
    let spec = a.algebra().spec();
    if spec.rank < 2 {
        return Err(PbwError::RankTooSmall(2));
    }
    if !in_centralizer_zero(a)? {
        return Err(PbwError::NotInCentralizer(spec.rank as i32));
    }
    let src = Pbw::left_ideal(spec, c);
    let dst = Pbw::left_ideal(spec.with_rank(spec.rank - 1), c);
    let b = a.to_algebra(&src)?;
    let remap: Vec<Option<u8>> = src
        .letters()
        .iter()
        .map(|l| {
            if l.class != LetterClass::Middle {
                return None;
            }
            dst.letter_position(l.label).map(|k| k as u8)
        })
        .collect();
    let mut terms = BTreeMap::new();
    'mono: for (m, coef) in b.terms() {
        let mut nm = Mono::new();
        for &x in m.iter() {
            match remap[x as usize] {
                Some(y) => nm.push(y),
                None => continue 'mono,
            }
        }
        debug_assert!(nm.windows(2).all(|w| w[0] <= w[1]));
        terms.insert(nm, coef.clone());
    }
    Ok(UeaElement::from_terms(dst, terms))
}
