use num_traits::One;

use super::rational::Rational;
use super::ring::RingElem;
use super::series::TruncSeries;
use super::CoeffError;

/// Series in u⁻¹ and v⁻¹ truncated to the rectangle 0 ≤ a, b ≤ K.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<T> {
    order: usize,
    coeffs: Vec<T>,
}

impl<T: RingElem> BiSeries<T> {
    pub fn zero_like(template: &T, order: usize) -> Self {
        BiSeries { order, coeffs: vec![template.zero_like(); (order + 1) * (order + 1)] }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut coeffs = Vec::with_capacity((order + 1) * (order + 1));
        for a in 0..=order {
            for b in 0..=order {
                coeffs.push(f(a, b));
            }
        }
        BiSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.order + 1) + b
    }

    pub fn get(&self, a: usize, b: usize) -> &T {
        &self.coeffs[self.idx(a, b)]
    }

    pub fn set(&mut self, a: usize, b: usize, value: T) {
        let i = self.idx(a, b);
        self.coeffs[i] = value;
    }

    /// f(u)·g(v) with f written first.
    pub fn outer_uv(f: &TruncSeries<T>, g: &TruncSeries<T>) -> Self {
        let k = f.order();
        assert_eq!(k, g.order());
        let mut coeffs = Vec::with_capacity((k + 1) * (k + 1));
        for a in 0..=k {
            for b in 0..=k {
                coeffs.push(mul_skip_zero(f.coeff(a), g.coeff(b)));
            }
        }
        BiSeries { order: k, coeffs }
    }

    /// f(v)·g(u) with f written first.
    pub fn outer_vu(f: &TruncSeries<T>, g: &TruncSeries<T>) -> Self {
        let k = f.order();
        assert_eq!(k, g.order());
        let mut coeffs = Vec::with_capacity((k + 1) * (k + 1));
        for a in 0..=k {
            for b in 0..=k {
                coeffs.push(mul_skip_zero(f.coeff(b), g.coeff(a)));
            }
        }
        BiSeries { order: k, coeffs }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        BiSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a.scaled(r)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElem::vanishes)
    }
}

fn mul_skip_zero<T: RingElem>(a: &T, b: &T) -> T {
    if a.vanishes() || b.vanishes() {
        a.zero_like()
    } else {
        a.times(b)
    }
}

/// Polynomial in u, v with rational coefficients, as (u-power, v-power, coefficient).
#[derive(Clone, Debug, PartialEq)]
pub struct UvPoly(pub Vec<(u32, u32, Rational)>);

impl UvPoly {
    pub fn one() -> Self {
        UvPoly(vec![(0, 0, Rational::one())])
    }

    pub fn factor(f: LinearFactor) -> Self {
        let sign = match f {
            LinearFactor::UMinusV => -Rational::one(),
            LinearFactor::UPlusV => Rational::one(),
        };
        UvPoly(vec![(1, 0, Rational::one()), (0, 1, sign)])
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out: Vec<(u32, u32, Rational)> = Vec::new();
        for (a1, b1, c1) in &self.0 {
            for (a2, b2, c2) in &other.0 {
                let key = (a1 + a2, b1 + b2);
                let c = c1 * c2;
                match out.iter_mut().find(|t| (t.0, t.1) == key) {
                    Some(t) => t.2 += c,
                    None => out.push((key.0, key.1, c)),
                }
            }
        }
        out.retain(|t| !t.2.vanishes());
        out.sort_by_key(|t| (t.0, t.1));
        UvPoly(out)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|t| t.0.max(t.1)).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearFactor {
    UMinusV,
    UPlusV,
}

/// `numerator(u,v) / Π denominator · series`.
#[derive(Clone, Debug)]
pub struct RationalTerm<T> {
    pub numerator: UvPoly,
    pub denominator: Vec<LinearFactor>,
    pub series: BiSeries<T>,
}

impl<T> RationalTerm<T> {
    pub fn plain(series: BiSeries<T>) -> Self {
        RationalTerm { numerator: UvPoly::one(), denominator: Vec::new(), series }
    }

    pub fn over(series: BiSeries<T>, denominator: Vec<LinearFactor>) -> Self {
        RationalTerm { numerator: UvPoly::one(), denominator, series }
    }

    pub fn with_numerator(mut self, numerator: UvPoly) -> Self {
        self.numerator = numerator;
        self
    }
}

/// Coefficients of a cleared two-variable identity on the window
/// −d ≤ a, b ≤ K − d. Negative indices are coefficients of positive powers.
#[derive(Clone, Debug, PartialEq)]
pub struct Window<T> {
    pub low: i32,
    pub high: i32,
    coeffs: Vec<T>,
}

impl<T: RingElem> Window<T> {
    fn width(&self) -> usize {
        (self.high - self.low + 1) as usize
    }

    fn idx(&self, a: i32, b: i32) -> usize {
        ((a - self.low) as usize) * self.width() + (b - self.low) as usize
    }

    pub fn get(&self, a: i32, b: i32) -> &T {
        &self.coeffs[self.idx(a, b)]
    }

    pub fn minus(&self, other: &Self) -> Self {
        Window {
            low: self.low,
            high: self.high,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    /// First nonzero position in row-major order.
    pub fn first_nonzero(&self) -> Option<(i32, i32, &T)> {
        for a in self.low..=self.high {
            for b in self.low..=self.high {
                let c = self.get(a, b);
                if !c.vanishes() {
                    return Some((a, b, c));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct ClearedPair<T> {
    pub lhs: Window<T>,
    pub rhs: Window<T>,
}

impl<T: RingElem> ClearedPair<T> {
    pub fn residual(&self) -> Window<T> {
        self.lhs.minus(&self.rhs)
    }
}

fn cofactor(full: &[LinearFactor], part: &[LinearFactor]) -> Result<UvPoly, CoeffError> {
    let mut rest: Vec<LinearFactor> = full.to_vec();
    for f in part {
        let pos = rest.iter().position(|g| g == f).ok_or(CoeffError::DenominatorMismatch)?;
        rest.remove(pos);
    }
    Ok(rest.iter().fold(UvPoly::one(), |acc, f| acc.times(&UvPoly::factor(*f))))
}

fn clear_side<T: RingElem>(
    terms: &[RationalTerm<T>],
    denominator: &[LinearFactor],
    template: &T,
    order: usize,
    d: i32,
) -> Result<Window<T>, CoeffError> {
    let low = -d;
    let high = order as i32 - d;
    let width = (high - low + 1) as usize;
    let mut coeffs = vec![template.zero_like(); width * width];
    for term in terms {
        if term.series.order() != order {
            return Err(CoeffError::OrderMismatch);
        }
        let poly = term.numerator.times(&cofactor(denominator, &term.denominator)?);
        for (al, be, pc) in &poly.0 {
            for a in low..=high {
                let sa = a + *al as i32;
                if sa < 0 || sa > order as i32 {
                    continue;
                }
                for b in low..=high {
                    let sb = b + *be as i32;
                    if sb < 0 || sb > order as i32 {
                        continue;
                    }
                    let c = term.series.get(sa as usize, sb as usize);
                    if c.vanishes() {
                        continue;
                    }
                    let i = ((a - low) as usize) * width + (b - low) as usize;
                    coeffs[i].add_assign_ref(&c.scaled(pc));
                }
            }
        }
    }
    Ok(Window { low, high, coeffs })
}

/// Multiply both sides of `Σ lhs = Σ rhs` by Π `denominator` and return the
/// polynomial-coefficient sides on the window where truncation cannot leak in.
pub fn clear_denominators<T: RingElem>(
    lhs: &[RationalTerm<T>],
    rhs: &[RationalTerm<T>],
    denominator: &[LinearFactor],
) -> Result<ClearedPair<T>, CoeffError> {
    let first = lhs.first().or(rhs.first()).ok_or(CoeffError::EmptyRelation)?;
    let order = first.series.order();
    let template = first.series.get(0, 0).clone();
    let d = denominator.len() as i32;
    if (order as i32) < d {
        return Err(CoeffError::EmptyWindow { order, degree: d as usize });
    }
    Ok(ClearedPair {
        lhs: clear_side(lhs, denominator, &template, order, d)?,
        rhs: clear_side(rhs, denominator, &template, order, d)?,
    })
}
