//! Harish-Chandra images, Gelfand invariants, highest-weight eigenvalues and
//! centralizer tests.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::coeff::{MultiPoly, Scalar, Var};
use crate::lie::{rho, tri_class, AlgebraSpec, Family, GenIndex, TriClass};

use super::{LetterClass, Mono, Pbw, PbwError, UeaElement};

/// λ-variable attached to a Cartan label (E_ii ↦ λ_i, canonical F_{−i,−i} ↦ λ_{−i}).
fn cartan_var(g: GenIndex) -> Var {
    Var::Lambda(g.i)
}

pub fn check_weight_zero<R: Scalar>(a: &UeaElement<R>) -> Result<(), PbwError> {
    let alg = a.algebra();
    for b in alg.lie().cartan() {
        let h = alg.basis_element(b);
        if !a.try_commutator(&h)?.is_zero() {
            return Err(PbwError::NonzeroWeight(alg.lie().basis()[b]));
        }
    }
    Ok(())
}

/// ω(a) as a polynomial in the λ-variables.
pub fn hc_omega<R: Scalar>(a: &UeaElement<R>) -> Result<MultiPoly, PbwError> {
    check_weight_zero(a)?;
    let hc = Pbw::<R>::hc(a.algebra().spec());
    let b = a.to_algebra(&hc)?;
    let letters = hc.letters();
    let mut out = MultiPoly::zero();
    for (m, c) in b.terms() {
        if m.iter().any(|&x| letters[x as usize].class != LetterClass::Cartan) {
            continue;
        }
        let mut p = c.to_poly();
        for &x in m.iter() {
            p = &p * &MultiPoly::var(cartan_var(letters[x as usize].label));
        }
        out = &out + &p;
    }
    Ok(out)
}

/// Rewrite a λ-polynomial in the shifted variables: λ_i − i (family A) or
/// l_{−i} = λ_{−i} + ρ_{−i}.
pub fn to_shifted_vars(f: &MultiPoly, spec: AlgebraSpec) -> MultiPoly {
    let mut map = HashMap::new();
    let n = spec.rank as i32;
    match spec.family {
        Family::A => {
            for i in 1..=n {
                map.insert(Var::Lambda(i), &MultiPoly::var(Var::Shifted(i)) + &MultiPoly::int(i as i64));
            }
        }
        _ => {
            let r = rho(spec).expect("BCD rho");
            for i in 1..=n {
                map.insert(
                    Var::Lambda(-i),
                    &MultiPoly::var(Var::Shifted(-i)) - &MultiPoly::constant(r[(i - 1) as usize].clone()),
                );
            }
        }
    }
    f.substitute_many(&map)
}

/// Σ_i (F^M)_{ii}, the trace of the M-th matrix power of generators.
pub fn gelfand_invariant<R: Scalar>(alg: &Arc<Pbw<R>>, m: usize) -> Result<UeaElement<R>, PbwError> {
    let labels = alg.spec().index_set();
    let f: Vec<Vec<UeaElement<R>>> = labels
        .iter()
        .map(|&i| labels.iter().map(|&j| alg.gen(i, j)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut p = f.clone();
    for _ in 1..m {
        p = mat_mul(&p, &f);
    }
    let mut tr = alg.zero();
    if m == 0 {
        return Ok(alg.scalar(R::from_rational(crate::coeff::int(labels.len() as i64))));
    }
    for (k, row) in p.iter().enumerate() {
        tr = tr.plus(&row[k]);
    }
    Ok(tr)
}

pub(crate) fn mat_mul<R: Scalar>(a: &[Vec<UeaElement<R>>], b: &[Vec<UeaElement<R>>]) -> Vec<Vec<UeaElement<R>>> {
    let n = a.len();
    let zero = a[0][0].algebra().zero();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = zero.clone();
                    for k in 0..n {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc = acc.plus(&a[i][k].times(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Values of λ-variables by index (i for family A, −i for BCD).
pub type Weight = BTreeMap<i32, MultiPoly>;

pub fn weight_substitution(weight: &Weight) -> HashMap<Var, MultiPoly> {
    weight.iter().map(|(i, v)| (Var::Lambda(*i), v.clone())).collect()
}

/// ω(a) evaluated at λ.
pub fn highest_weight_eigenvalue<R: Scalar>(a: &UeaElement<R>, weight: &Weight) -> Result<MultiPoly, PbwError> {
    Ok(hc_omega(a)?.substitute_many(&weight_substitution(weight)))
}

/// a·v_λ in the Verma module, computed letter by letter on the highest
/// vector. Keys are lower-letter words of the HC alphabet.
pub fn verma_action<R: Scalar>(a: &UeaElement<R>, weight: &Weight) -> Result<BTreeMap<Mono, MultiPoly>, PbwError> {
    let spec = a.algebra().spec();
    let hc = Pbw::<R>::hc(spec);
    let subst = weight_substitution(weight);
    let letters_a = a.algebra().letters().to_vec();
    let lambda_of = |g: GenIndex| MultiPoly::var(cartan_var(g)).substitute_many(&subst);
    let mut total: BTreeMap<Mono, MultiPoly> = BTreeMap::new();
    for (word, coef) in a.terms() {
        let mut state: BTreeMap<Mono, MultiPoly> = BTreeMap::new();
        state.insert(Mono::new(), coef.to_poly());
        for &x in word.iter().rev() {
            let l = &letters_a[x as usize];
            let g = hc.gen(l.label.i, l.label.j)?;
            let off = l.offset.to_poly();
            let mut next: BTreeMap<Mono, MultiPoly> = BTreeMap::new();
            for (y, cy) in &state {
                let mut ey = std::collections::BTreeMap::new();
                ey.insert(y.clone(), R::one_scalar());
                let prod = g.times(&UeaElement::from_terms(hc.clone(), ey));
                for (m, c) in prod.terms() {
                    let mut lower = Mono::new();
                    let mut val = &c.to_poly() * cy;
                    let mut killed = false;
                    for &z in m.iter() {
                        let lz = &hc.letters()[z as usize];
                        match tri_class(lz.label) {
                            TriClass::Lower => lower.push(z),
                            TriClass::Cartan => val = &val * &lambda_of(lz.label),
                            TriClass::Upper => {
                                killed = true;
                                break;
                            }
                        }
                    }
                    if killed || val.is_zero() {
                        continue;
                    }
                    let e = next.entry(lower).or_insert_with(MultiPoly::zero);
                    *e = &*e + &val;
                }
                if !off.is_zero() {
                    let e = next.entry(y.clone()).or_insert_with(MultiPoly::zero);
                    *e = &*e - &(&off * cy);
                }
            }
            next.retain(|_, v| !v.is_zero());
            state = next;
        }
        for (k, v) in state {
            let e = total.entry(k).or_insert_with(MultiPoly::zero);
            *e = &*e + &v;
        }
    }
    total.retain(|_, v| !v.is_zero());
    Ok(total)
}

/// Scalar by which `a` acts on the highest vector, if a·v_λ is proportional to v_λ.
pub fn verma_eigenvalue<R: Scalar>(a: &UeaElement<R>, weight: &Weight) -> Result<Option<MultiPoly>, PbwError> {
    let v = verma_action(a, weight)?;
    if v.keys().any(|k| !k.is_empty()) {
        return Ok(None);
    }
    Ok(Some(v.get(&Mono::new()).cloned().unwrap_or_else(MultiPoly::zero)))
}

/// Does `a` commute with every basis element of g_m(n)?
pub fn centralizer_check<R: Scalar>(a: &UeaElement<R>, m: i32) -> Result<bool, PbwError> {
    let alg = a.algebra();
    for b in alg.lie().sub_basis(m) {
        if !a.try_commutator(&alg.basis_element(b))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
