//! Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, the
//! chord-tangent group law, and translations by a fixed point.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> CurvePoint<F> {
    pub fn affine(x: F, y: F) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Curve<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

impl<F: Field> Curve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self> {
        let c = Curve { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.map(F::from_i64);
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn discriminant(&self) -> F {
        let c = |n: i64| F::from_i64(n);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.clone() * a1.clone() + c(4) * a2.clone();
        let b4 = c(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.clone() * a3.clone() + c(4) * a6.clone();
        let b8 = a1.clone() * a1.clone() * a6.clone() + c(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.clone() * a3.clone()
            - a4.clone() * a4.clone();
        -(b2.clone() * b2.clone() * b8.clone()) - c(8) * b4.clone() * b4.clone() * b4.clone()
            - c(27) * b6.clone() * b6.clone()
            + c(9) * b2 * b4 * b6
    }

    /// Right-hand side `x^3 + a2 x^2 + a4 x + a6`.
    pub fn cubic(&self, x: &F) -> F {
        ((x.clone() + self.a2.clone()) * x.clone() + self.a4.clone()) * x.clone() + self.a6.clone()
    }

    /// `a1 x + a3`, the coefficient of `y` in the curve relation.
    pub fn linear_y_coeff(&self, x: &F) -> F {
        self.a1.clone() * x.clone() + self.a3.clone()
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                y.clone() * y.clone() + self.linear_y_coeff(x) * y.clone() == self.cubic(x)
            }
        }
    }

    pub fn check(&self, p: &CurvePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(p.to_string()))
        }
    }

    /// `P` is 2-torsion (or the identity): `2y + a1 x + a3 = 0`.
    pub fn is_two_torsion(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => (y.clone() + y.clone() + self.linear_y_coeff(x)).is_zero(),
        }
    }

    pub fn negate(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y.clone() - self.linear_y_coeff(x)),
        }
    }

    /// Group law without input validation.
    pub fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let c = |n: i64| F::from_i64(n);
        let (lambda, nu) = if x1 == x2 {
            let denom = y1.clone() + y2.clone() + self.linear_y_coeff(x2);
            if denom.is_zero() {
                return CurvePoint::Infinity;
            }
            let denom = c(2) * y1.clone() + self.linear_y_coeff(x1);
            let num = c(3) * x1.clone() * x1.clone() + c(2) * self.a2.clone() * x1.clone() + self.a4.clone()
                - self.a1.clone() * y1.clone();
            let num_nu = -(x1.clone() * x1.clone() * x1.clone()) + self.a4.clone() * x1.clone()
                + c(2) * self.a6.clone()
                - self.a3.clone() * y1.clone();
            let inv = denom.inv();
            (num * inv.clone(), num_nu * inv)
        } else {
            let inv = (x2.clone() - x1.clone()).inv();
            (
                (y2.clone() - y1.clone()) * inv.clone(),
                (y1.clone() * x2.clone() - y2.clone() * x1.clone()) * inv,
            )
        };
        let x3 = lambda.clone() * lambda.clone() + self.a1.clone() * lambda.clone()
            - self.a2.clone()
            - x1.clone()
            - x2.clone();
        let y3 = -(lambda + self.a1.clone()) * x3.clone() - nu - self.a3.clone();
        CurvePoint::affine(x3, y3)
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn sub_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        self.add_unchecked(p, &self.negate(q))
    }

    /// `n P` by double-and-add; `n` may be negative.
    pub fn multiple_unchecked(&self, n: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        let base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        acc
    }

    pub fn multiple(&self, n: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        Ok(self.multiple_unchecked(n, p))
    }

    /// Over the rationals the torsion orders are `1..=10` and `12`, so a point
    /// none of whose multiples `n P` for those `n` vanishes has infinite order.
    pub fn is_infinite_order(&self, p: &CurvePoint<F>) -> bool {
        if p.is_infinity() {
            return false;
        }
        let mut acc = CurvePoint::Infinity;
        for n in 1..=12 {
            acc = self.add_unchecked(&acc, p);
            if n != 11 && acc.is_infinity() {
                return false;
            }
        }
        true
    }
}

/// The automorphism `sigma(P) = P + t` for a point `t` of infinite order.
///
/// Twisting follows the convention `p^{sigma^j} = sigma^{-j}(p) = p - j t`.
#[derive(Debug)]
pub struct Translation<F: Field> {
    curve: Curve<F>,
    t: CurvePoint<F>,
    multiples: Mutex<HashMap<i64, CurvePoint<F>>>,
}

impl<F: Field> Clone for Translation<F> {
    fn clone(&self) -> Self {
        Translation { curve: self.curve.clone(), t: self.t.clone(), multiples: Mutex::new(HashMap::new()) }
    }
}

impl<F: Field> Translation<F> {
    pub fn new(curve: Curve<F>, t: CurvePoint<F>) -> Result<Self> {
        curve.check(&t)?;
        if !curve.is_infinite_order(&t) {
            return Err(Error::FiniteOrder(t.to_string()));
        }
        Ok(Translation { curve, t, multiples: Mutex::new(HashMap::new()) })
    }

    pub fn curve(&self) -> &Curve<F> {
        &self.curve
    }

    pub fn point(&self) -> &CurvePoint<F> {
        &self.t
    }

    /// `j t`, memoized.
    pub fn multiple_of_t(&self, j: i64) -> CurvePoint<F> {
        if let Some(p) = self.multiples.lock().unwrap().get(&j) {
            return p.clone();
        }
        let p = self.curve.multiple_unchecked(j, &self.t);
        self.multiples.lock().unwrap().insert(j, p.clone());
        p
    }

    /// `sigma^j(p) = p + j t`.
    pub fn apply(&self, p: &CurvePoint<F>, j: i64) -> CurvePoint<F> {
        if j == 0 {
            return p.clone();
        }
        self.curve.add_unchecked(p, &self.multiple_of_t(j))
    }

    /// `p^{sigma^j} = p - j t`.
    pub fn twist_point(&self, p: &CurvePoint<F>, j: i64) -> CurvePoint<F> {
        self.apply(p, -j)
    }

    /// Index `j` with `q = p^{sigma^j}`, searched for `|j| <= cap`.
    pub fn orbit_index(&self, p: &CurvePoint<F>, q: &CurvePoint<F>, cap: i64) -> Option<i64> {
        let diff = self.curve.sub_unchecked(p, q);
        (0..=cap).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).find(|&j| self.multiple_of_t(j) == diff)
    }
}

/// Checked `sigma_twist_point`: `p^{sigma^j}`.
pub fn sigma_twist_point<F: Field>(sigma: &Translation<F>, p: &CurvePoint<F>, j: i64) -> Result<CurvePoint<F>> {
    sigma.curve().check(p)?;
    Ok(sigma.twist_point(p, j))
}
