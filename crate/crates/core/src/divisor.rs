//! Divisors on the curve and their sigma-twists.

use std::collections::BTreeMap;
use std::fmt;

use crate::curve::{Curve, CurvePoint, Translation};
use crate::error::Result;
use crate::scalar::Field;

/// A finite formal sum of points with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Divisor<F: Field> {
    terms: BTreeMap<CurvePoint<F>, i64>,
}

impl<F: Field> Default for Divisor<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Divisor<F> {
    pub fn zero() -> Self {
        Divisor { terms: BTreeMap::new() }
    }

    pub fn point(p: CurvePoint<F>) -> Self {
        Self::from_terms([(p, 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (CurvePoint<F>, i64)>>(terms: I) -> Self {
        let mut d = Self::zero();
        for (p, c) in terms {
            d.add_term(p, c);
        }
        d
    }

    pub fn add_term(&mut self, p: CurvePoint<F>, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.coeff(&p) + c;
        if v == 0 {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, v);
        }
    }

    pub fn coeff(&self, p: &CurvePoint<F>) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvePoint<F>, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &CurvePoint<F>> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (p, c) in o.terms() {
            d.add_term(p.clone(), c);
        }
        d
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Divisor { terms: self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect() }
    }

    /// Coefficientwise `self <= o`.
    pub fn le(&self, o: &Self) -> bool {
        o.sub(self).is_effective()
    }

    /// Coefficientwise maximum.
    pub fn sup(&self, o: &Self) -> Self {
        let mut d = Self::zero();
        for p in self.support().chain(o.support()) {
            if d.terms.contains_key(p) {
                continue;
            }
            d.add_term(p.clone(), self.coeff(p).max(o.coeff(p)));
        }
        d
    }

    /// Coefficientwise minimum.
    pub fn inf(&self, o: &Self) -> Self {
        self.scale(-1).sup(&o.scale(-1)).scale(-1)
    }

    /// The positive part.
    pub fn positive_part(&self) -> Self {
        self.sup(&Self::zero())
    }

    pub fn validate(&self, curve: &Curve<F>) -> Result<()> {
        self.support().try_for_each(|p| curve.check(p))
    }

    /// `x^{sigma^j}`: every point `p` replaced by `p - j t`.
    pub fn twist(&self, sigma: &Translation<F>, j: i64) -> Self {
        if j == 0 {
            return self.clone();
        }
        Self::from_terms(self.terms().map(|(p, c)| (sigma.twist_point(p, j), c)))
    }

    /// `[x]_n = x + x^sigma + ... + x^{sigma^{n-1}}`, with `[x]_0 = 0`.
    pub fn cumulative(&self, sigma: &Translation<F>, n: usize) -> Self {
        (0..n as i64).fold(Self::zero(), |acc, i| acc.add(&self.twist(sigma, i)))
    }
}

impl<F: Field> fmt::Display for Divisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.terms() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match c {
                1 => write!(f, "+{p}")?,
                -1 => write!(f, "-{p}")?,
                c if c > 0 => write!(f, "+{c}{p}")?,
                c => write!(f, "{c}{p}")?,
            }
        }
        Ok(())
    }
}
