use std::collections::HashMap;

use num_traits::Zero;

use super::poly::{MultiPoly, Var};
use super::rational::Rational;

/// Rank over ℚ by Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let p = m[r][col].clone();
        for i in (r + 1)..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            for j in col..ncols {
                let t = &m[r][j] * &f;
                m[i][j] -= t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of the Jacobian ∂fᵢ/∂vⱼ evaluated at `point`. Variables missing
/// from `point` make the evaluation fail and are reported as `None`.
pub fn jacobian_rank(polys: &[MultiPoly], vars: &[Var], point: &HashMap<Var, Rational>) -> Option<usize> {
    let mut rows = Vec::with_capacity(polys.len());
    for f in polys {
        let mut row = Vec::with_capacity(vars.len());
        for &v in vars {
            row.push(f.derivative(v).eval(point)?);
        }
        rows.push(row);
    }
    Some(rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::int;

    #[test]
    fn rank_of_small_matrices() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&a), 1);
        let b = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(rank(&b), 2);
        assert_eq!(rank(&[]), 0);
    }
}
