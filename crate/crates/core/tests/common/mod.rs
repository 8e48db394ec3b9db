use std::sync::Arc;

use centralizer::coeff::{rat, MultiPoly};
use centralizer::lie::{index_labels, Family};
use centralizer::pbw::{Pbw, UeaElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn top_weight(n: i32, a: i32) -> i32 {
    i32::from(a == n) - i32::from(a == -n)
}

/// Eigenvalue of ad(F_nn) on F_ij.
pub fn weight(n: i32, i: i32, j: i32) -> i32 {
    top_weight(n, i) - top_weight(n, j)
}

fn generators(alg: &Arc<Pbw<MultiPoly>>) -> Vec<(i32, UeaElement<MultiPoly>)> {
    let spec = alg.spec();
    let n = spec.rank as i32;
    let labels = spec.index_set();
    let mut out = Vec::new();
    for &i in &labels {
        for &j in &labels {
            let g = alg.gen(i, j).unwrap();
            if !g.is_zero() {
                out.push((weight(n, i, j), g));
            }
        }
    }
    out
}

fn coefficient(rng: &mut ChaCha8Rng) -> MultiPoly {
    let p = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    let k = MultiPoly::constant(rat(p, rng.gen_range(1..=2)));
    if rng.gen_bool(0.3) {
        &k * &MultiPoly::c()
    } else {
        k
    }
}

/// A product of up to `len` generators whose weights add up to `target`.
fn word(gens: &[(i32, UeaElement<MultiPoly>)], target: i32, len: usize, rng: &mut ChaCha8Rng) -> UeaElement<MultiPoly> {
    loop {
        let picks: Vec<usize> = (0..len.saturating_sub(1)).map(|_| rng.gen_range(0..gens.len())).collect();
        let partial: i32 = picks.iter().map(|&k| gens[k].0).sum();
        let closing: Vec<usize> = (0..gens.len()).filter(|&k| gens[k].0 == target - partial).collect();
        if closing.is_empty() {
            continue;
        }
        let last = closing[rng.gen_range(0..closing.len())];
        let mut order: Vec<usize> = picks;
        order.insert(rng.gen_range(0..=order.len()), last);
        let alg = gens[0].1.algebra().clone();
        return order.iter().fold(alg.one(), |acc, &k| acc.times(&gens[k].1));
    }
}

/// F_nn − c in type A, F_nn + c otherwise: the shifted Cartan generator of the ideal.
pub fn shifted_cartan(alg: &Arc<Pbw<MultiPoly>>, c: &MultiPoly) -> UeaElement<MultiPoly> {
    let spec = alg.spec();
    let n = spec.rank as i32;
    let shift = if spec.family == Family::A { -c.clone() } else { c.clone() };
    alg.gen(n, n).unwrap().plus(&alg.scalar(shift))
}

/// Weight-zero elements of U(g(n)): random sums of words, and words built
/// to lie in the ideal on one side.
pub fn sample_weight_zero(alg: &Arc<Pbw<MultiPoly>>, count: usize, rng: &mut ChaCha8Rng) -> Vec<UeaElement<MultiPoly>> {
    let spec = alg.spec();
    let n = spec.rank as i32;
    let gens = generators(alg);
    let c = MultiPoly::c();
    let shifted = shifted_cartan(alg, &c);
    let mut inner: Vec<i32> = index_labels(spec.family, spec.rank - 1);
    if spec.family == Family::C {
        inner.push(-n);
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = word(&gens, 0, rng.gen_range(0..=2), rng).scale_by(&coefficient(rng));
        let i = inner[rng.gen_range(0..inner.len())];
        let pair = alg.gen(n, i).unwrap().times(&alg.gen(i, n).unwrap());
        let sample = match out.len() % 5 {
            0 => x.times(&pair),
            1 => pair.times(&x),
            2 => x.times(&shifted),
            3 => shifted.times(&x).plus(&x.times(&pair)),
            _ => {
                let y = word(&gens, 0, rng.gen_range(1..=3), rng).scale_by(&coefficient(rng));
                x.plus(&y)
            }
        };
        out.push(sample);
    }
    out
}
