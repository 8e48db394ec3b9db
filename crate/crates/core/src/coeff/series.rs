use num_traits::One;

use super::rational::{binomial, Rational};
use super::ring::RingElem;
use super::CoeffError;

/// Power series in u⁻¹ truncated after u⁻ᴷ. Slot k holds the coefficient
/// of u⁻ᵏ. Coefficients need not commute; products keep the written order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T: RingElem> TruncSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant slot");
        TruncSeries { coeffs }
    }

    pub fn constant(value: T, order: usize) -> Self {
        let zero = value.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = value;
        TruncSeries { coeffs }
    }

    pub fn zero_like(template: &T, order: usize) -> Self {
        TruncSeries { coeffs: vec![template.zero_like(); order + 1] }
    }

    pub fn one_like(template: &T, order: usize) -> Self {
        Self::constant(template.one_like(), order)
    }

    /// `value · u⁻ᵖ`.
    pub fn monomial(value: T, power: usize, order: usize) -> Self {
        let mut s = Self::zero_like(&value, order);
        if power <= order {
            s.coeffs[power] = value;
        }
        s
    }

    /// Expansion of (u + α)/(u + β) = 1 + (α − β) Σ_{k≥1} (−β)^{k−1} u⁻ᵏ.
    pub fn linear_ratio(alpha: &T, beta: &T, order: usize) -> Self {
        let diff = alpha.minus(beta);
        let mb = beta.negated();
        let mut coeffs = vec![alpha.one_like()];
        let mut p = alpha.one_like();
        for _ in 1..=order {
            coeffs.push(diff.times(&p));
            p = p.times(&mb);
        }
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, value: T) {
        self.coeffs[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElem::vanishes)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn map<U: RingElem>(&self, f: impl Fn(&T) -> U) -> TruncSeries<U> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.plus(b))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.minus(b))
    }

    pub fn negated(&self) -> Self {
        self.map(|a| a.negated())
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        self.map(|a| a.scaled(r))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        TruncSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        let k = self.order();
        let mut coeffs = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let mut acc = self.coeffs[0].zero_like();
            for i in 0..=n {
                if self.coeffs[i].vanishes() || other.coeffs[n - i].vanishes() {
                    continue;
                }
                acc.add_assign_ref(&self.coeffs[i].times(&other.coeffs[n - i]));
            }
            coeffs.push(acc);
        }
        TruncSeries { coeffs }
    }

    /// Multiply every coefficient on the left by `x`.
    pub fn left_mul(&self, x: &T) -> Self {
        self.map(|a| x.times(a))
    }

    /// Multiply every coefficient on the right by `x`.
    pub fn right_mul(&self, x: &T) -> Self {
        self.map(|a| a.times(x))
    }

    pub fn invert(&self) -> Result<Self, CoeffError> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(CoeffError::NotInvertible)?;
        let k = self.order();
        let mut r: Vec<T> = vec![inv0.clone()];
        for n in 1..=k {
            let mut acc = inv0.zero_like();
            for j in 1..=n {
                if self.coeffs[j].vanishes() {
                    continue;
                }
                acc.add_assign_ref(&self.coeffs[j].times(&r[n - j]));
            }
            r.push(inv0.times(&acc).negated());
        }
        Ok(TruncSeries { coeffs: r })
    }

    /// Expansion of s(u + a), with a central.
    pub fn shift(&self, a: &T) -> Self {
        let k = self.order();
        let mut out = vec![a.zero_like(); k + 1];
        out[0] = self.coeffs[0].clone();
        let ma = a.negated();
        let mut powers = vec![a.one_like()];
        for j in 1..=k {
            let next = powers[j - 1].times(&ma);
            powers.push(next);
        }
        for m in 1..=k {
            if self.coeffs[m].vanishes() {
                continue;
            }
            for j in 0..=(k - m) {
                if powers[j].vanishes() {
                    continue;
                }
                let b = binomial((m - 1 + j) as u64, j as u64);
                let term = self.coeffs[m].times(&powers[j]).scaled(&b);
                out[m + j].add_assign_ref(&term);
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Expansion of s(−u).
    pub fn negate_arg(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.negated() } else { c.clone() })
                .collect(),
        }
    }

    /// u·s(u) split into its u¹ coefficient and a series of order K−1.
    pub fn times_u(&self) -> (T, Self) {
        assert!(self.order() >= 1);
        (self.coeffs[0].clone(), TruncSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.vanishes())
    }
}

impl<T: RingElem> TruncSeries<T> {
    pub fn eq_up_to(&self, other: &Self, order: usize) -> bool {
        (0..=order).all(|k| self.coeffs[k] == other.coeffs[k])
    }
}

/// Geometric series Σ xᵏ u⁻ᵏ = (1 − x/u)⁻¹.
pub fn geometric<T: RingElem>(x: &T, order: usize) -> TruncSeries<T> {
    let mut coeffs = vec![x.one_like()];
    for k in 1..=order {
        let next = coeffs[k - 1].times(x);
        coeffs.push(next);
    }
    TruncSeries { coeffs }
}

pub fn unit_rational(order: usize) -> TruncSeries<Rational> {
    TruncSeries::constant(Rational::one(), order)
}
