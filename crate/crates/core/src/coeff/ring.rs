use std::fmt::Debug;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::Rational;

/// Coefficient ring for truncated series. Elements may carry context
/// (an enveloping-algebra element knows its algebra), so units are built
/// from an existing element.
pub trait RingElem: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
    /// Two-sided inverse when the element is an invertible scalar.
    fn try_inverse(&self) -> Option<Self>;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

/// Scalar coefficients of enveloping-algebra elements: commutative and
/// constructible without context.
pub trait Scalar: RingElem + Send + Sync + 'static {
    fn zero_scalar() -> Self;
    fn one_scalar() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn to_poly(&self) -> MultiPoly;
    fn from_poly(p: &MultiPoly) -> Option<Self>;
    fn render(&self) -> String;
}

impl RingElem for Rational {
    fn zero_like(&self) -> Self {
        <Rational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rational as One>::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
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
        self * r
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Scalar for Rational {
    fn zero_scalar() -> Self {
        <Rational as Zero>::zero()
    }
    fn one_scalar() -> Self {
        <Rational as One>::one()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_poly(&self) -> MultiPoly {
        MultiPoly::constant(self.clone())
    }
    fn from_poly(p: &MultiPoly) -> Option<Self> {
        p.as_constant()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
