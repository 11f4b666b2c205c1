//! The function field `k(E)` of a Weierstrass curve: elements `u(x) + v(x) y`
//! with `u, v` rational in `x`, plus local analysis at rational points.

use std::fmt;

use crate::curve::{Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;
use crate::series::Series;

/// A rational function of `x` with coprime numerator and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().inv();
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// Like [`RatFunc::new`] for a caller that already knows `num` and `den`
    /// are coprime; skips the gcd.
    pub fn from_coprime(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading().unwrap().inv();
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Value at `x`, or `None` when the denominator vanishes there.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `u(x) + v(x) y`, canonical: `y` appears to degree at most one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FnElem<F: Field> {
    pub u: RatFunc<F>,
    pub v: RatFunc<F>,
}

/// Result of evaluating a function at a point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value<F: Field> {
    Finite(F),
    Pole,
}

impl<F: Field> Value<F> {
    pub fn finite(self) -> Option<F> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Pole => None,
        }
    }
}

impl<F: Field> FnElem<F> {
    pub fn new(u: RatFunc<F>, v: RatFunc<F>) -> Self {
        FnElem { u, v }
    }

    pub fn zero() -> Self {
        FnElem { u: RatFunc::zero(), v: RatFunc::zero() }
    }

    pub fn constant(c: F) -> Self {
        FnElem { u: RatFunc::from_poly(Poly::constant(c)), v: RatFunc::zero() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        FnElem { u: RatFunc::from_poly(Poly::monomial(F::one(), 1)), v: RatFunc::zero() }
    }

    pub fn y() -> Self {
        FnElem { u: RatFunc::zero(), v: RatFunc::from_poly(Poly::one()) }
    }

    /// `(a(x) + b(x) y) / d(x)`.
    pub fn from_polys(a: Poly<F>, b: Poly<F>, d: Poly<F>) -> Self {
        FnElem { u: RatFunc::new(a, d.clone()), v: RatFunc::new(b, d) }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        FnElem { u: self.u.add(&o.u), v: self.v.add(&o.v) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FnElem { u: self.u.sub(&o.u), v: self.v.sub(&o.v) }
    }

    pub fn neg(&self) -> Self {
        FnElem { u: self.u.neg(), v: self.v.neg() }
    }

    pub fn scale(&self, c: &F) -> Self {
        FnElem { u: self.u.scale(c), v: self.v.scale(c) }
    }

    /// Common-denominator form `(a + b y) / d` with `d` monic.
    pub fn as_polys(&self) -> (Poly<F>, Poly<F>, Poly<F>) {
        let g = Poly::gcd(self.u.den(), self.v.den());
        let (l, _) = (self.u.den() * self.v.den()).div_rem(&g);
        let (cu, _) = l.div_rem(self.u.den());
        let (cv, _) = l.div_rem(self.v.den());
        (self.u.num() * &cu, self.v.num() * &cv, l)
    }
}

impl<F: Field> fmt::Display for FnElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u.is_zero(), self.v.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.u),
            (true, false) => write!(f, "({})*y", self.v),
            (false, false) => write!(f, "{} + ({})*y", self.u, self.v),
        }
    }
}

/// Arithmetic and local analysis in the function field of a fixed curve.
#[derive(Clone, Debug)]
pub struct FunctionField<F: Field> {
    curve: Curve<F>,
}

impl<F: Field> FunctionField<F> {
    pub fn new(curve: Curve<F>) -> Self {
        FunctionField { curve }
    }

    pub fn curve(&self) -> &Curve<F> {
        &self.curve
    }

    fn cubic_poly(&self) -> Poly<F> {
        let c = &self.curve;
        Poly::new(vec![c.a6.clone(), c.a4.clone(), c.a2.clone(), F::one()])
    }

    fn linear_poly(&self) -> Poly<F> {
        Poly::new(vec![self.curve.a3.clone(), self.curve.a1.clone()])
    }

    pub fn mul(&self, f: &FnElem<F>, g: &FnElem<F>) -> FnElem<F> {
        let vv = f.v.mul(&g.v);
        let u = f.u.mul(&g.u).add(&vv.mul_poly(&self.cubic_poly()));
        let v = f.u.mul(&g.v).add(&f.v.mul(&g.u)).sub(&vv.mul_poly(&self.linear_poly()));
        FnElem { u, v }
    }

    pub fn inv(&self, f: &FnElem<F>) -> Result<FnElem<F>> {
        if f.is_zero() {
            return Err(Error::Arithmetic("inverse of zero in the function field"));
        }
        // (u + v y)(u + v y') with y' = -y - (a1 x + a3) the conjugate root.
        let lin = RatFunc::from_poly(self.linear_poly());
        let cub = RatFunc::from_poly(self.cubic_poly());
        let norm = f.u.mul(&f.u).sub(&f.u.mul(&f.v).mul(&lin)).sub(&f.v.mul(&f.v).mul(&cub));
        let norm_inv = norm.inv().ok_or(Error::Arithmetic("zero norm"))?;
        let cu = f.u.sub(&f.v.mul(&lin));
        Ok(FnElem { u: cu.mul(&norm_inv), v: f.v.neg().mul(&norm_inv) })
    }

    pub fn pow(&self, f: &FnElem<F>, e: usize) -> FnElem<F> {
        let mut acc = FnElem::one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `x - x_P`, with divisor `P + (-P) - 2 O`; `1` at `O`.
    pub fn vertical(&self, p: &CurvePoint<F>) -> FnElem<F> {
        match p.x() {
            None => FnElem::one(),
            Some(x0) => FnElem::x().sub(&FnElem::constant(x0.clone())),
        }
    }

    /// The line through `a` and `b` (tangent when equal), with divisor
    /// `a + b + (-(a + b)) - 3 O`; vertical or constant when it passes
    /// through `O`.
    pub fn line(&self, a: &CurvePoint<F>, b: &CurvePoint<F>) -> FnElem<F> {
        let c = &self.curve;
        let (x1, y1, x2, y2) = match (a, b) {
            (CurvePoint::Infinity, _) => return self.vertical(b),
            (_, CurvePoint::Infinity) => return self.vertical(a),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if c.negate(a) == *b {
            return self.vertical(a);
        }
        let lambda = if x1 == x2 {
            let num = F::from_i64(3) * x1.clone() * x1.clone() + F::from_i64(2) * c.a2.clone() * x1.clone() + c.a4.clone()
                - c.a1.clone() * y1.clone();
            num * (F::from_i64(2) * y1.clone() + c.linear_y_coeff(x1)).inv()
        } else {
            (y2.clone() - y1.clone()) * (x2.clone() - x1.clone()).inv()
        };
        // y - y1 - lambda (x - x1)
        let u = Poly::new(vec![lambda.clone() * x1.clone() - y1.clone(), -lambda]);
        FnElem::from_polys(u, Poly::one(), Poly::one())
    }

    /// `x - x_P` is a uniformizer at `P` exactly when `P` is affine and not
    /// 2-torsion.
    fn check_local_point(&self, p: &CurvePoint<F>) -> Result<()> {
        self.curve.check(p)?;
        if p.is_infinity() {
            return Err(Error::UnsupportedPoint { point: p.to_string(), reason: "point at infinity" });
        }
        if self.curve.is_two_torsion(p) {
            return Err(Error::UnsupportedPoint { point: p.to_string(), reason: "2-torsion point" });
        }
        Ok(())
    }

    /// Expansion of `y` at a non-2-torsion affine point in `t = x - x_P`.
    pub fn y_expansion(&self, p: &CurvePoint<F>, prec: usize) -> Result<Series<F>> {
        self.check_local_point(p)?;
        let (x0, y0) = (p.x().unwrap(), p.y().unwrap());
        let c = &self.curve;
        let g = self.cubic_poly().taylor_shift(x0);
        let lin0 = c.linear_y_coeff(x0);
        let d = F::from_i64(2) * y0.clone() + lin0.clone();
        let d_inv = d.inv();
        let mut cs: Vec<F> = vec![y0.clone()];
        for k in 1..prec {
            let mut s = F::zero();
            for i in 1..k {
                s = s + cs[i].clone() * cs[k - i].clone();
            }
            let prev = c.a1.clone() * cs[k - 1].clone();
            cs.push((g.coeff(k) - s - prev) * d_inv.clone());
        }
        Ok(Series::new(cs, prec))
    }

    /// Laurent expansion at `P`: the valuation and the first `order`
    /// coefficients starting there.
    pub fn laurent_expansion(&self, f: &FnElem<F>, p: &CurvePoint<F>, order: usize) -> Result<(i64, Vec<F>)> {
        self.check_local_point(p)?;
        if f.is_zero() {
            return Err(Error::Arithmetic("order of the zero function is undefined"));
        }
        let x0 = p.x().unwrap();
        let (a, b, d) = f.as_polys();
        let k = d.root_multiplicity(x0);
        let d_shift = d.taylor_shift(x0);
        let unit: Vec<F> = d_shift.coeffs()[k..].to_vec();
        let a_shift = a.taylor_shift(x0);
        let b_shift = b.taylor_shift(x0);
        // The numerator a + b y has at most max(2 deg a, 2 deg b + 3) zeros.
        let bound = a.degree().map_or(0, |n| 2 * n).max(b.degree().map_or(0, |n| 2 * n + 3));
        let mut prec = order + 4;
        loop {
            let prec_now = prec.min(bound + order + 1);
            let y = self.y_expansion(p, prec_now)?;
            let num = Series::from_poly(&a_shift, prec_now).add(&Series::from_poly(&b_shift, prec_now).mul(&y));
            if let Some(val) = num.valuation() {
                if prec_now >= val + order {
                    let w = Series::new(unit.clone(), order).inverse().expect("unit");
                    let head = num.shift_down(val);
                    let head = Series::new(head.into_coeffs(), order).mul(&w);
                    return Ok((val as i64 - k as i64, head.into_coeffs()));
                }
            } else if prec_now == bound + order + 1 {
                return Err(Error::Inconsistent("nonzero function with vanishing expansion".into()));
            }
            prec *= 2;
        }
    }

    /// First `order` coefficients of `f` in `x - x_P` at a point where `f`
    /// is regular.
    pub fn local_expansion(&self, f: &FnElem<F>, p: &CurvePoint<F>, order: usize) -> Result<Vec<F>> {
        if f.is_zero() {
            self.check_local_point(p)?;
            return Ok(vec![F::zero(); order]);
        }
        let (val, head) = self.laurent_expansion(f, p, order)?;
        if val < 0 {
            return Err(Error::Arithmetic("function has a pole at the expansion point"));
        }
        let val = val as usize;
        let mut out = vec![F::zero(); order];
        for (i, c) in head.into_iter().enumerate() {
            if val + i < order {
                out[val + i] = c;
            }
        }
        Ok(out)
    }

    pub fn ord_at_infinity(&self, f: &FnElem<F>) -> Result<i64> {
        let ou = f.u.degree().map(|d| -2 * d);
        let ov = f.v.degree().map(|d| -2 * d - 3);
        match (ou, ov) {
            (None, None) => Err(Error::Arithmetic("order of the zero function is undefined")),
            (Some(a), None) => Ok(a),
            (None, Some(b)) => Ok(b),
            (Some(a), Some(b)) => Ok(a.min(b)),
        }
    }

    pub fn ord_at(&self, f: &FnElem<F>, p: &CurvePoint<F>) -> Result<i64> {
        if p.is_infinity() {
            return self.ord_at_infinity(f);
        }
        Ok(self.laurent_expansion(f, p, 1)?.0)
    }

    /// `f(P)` for affine `P`, or [`Value::Pole`].
    pub fn evaluate(&self, f: &FnElem<F>, p: &CurvePoint<F>) -> Result<Value<F>> {
        let (x0, y0) = match p {
            CurvePoint::Infinity => {
                return Err(Error::UnsupportedPoint { point: p.to_string(), reason: "use ord_at_infinity at O" })
            }
            CurvePoint::Affine { x, y } => (x, y),
        };
        if let (Some(u), Some(v)) = (f.u.eval(x0), f.v.eval(x0)) {
            return Ok(Value::Finite(u + v * y0.clone()));
        }
        let (val, head) = self.laurent_expansion(f, p, 1)?;
        Ok(match val {
            v if v < 0 => Value::Pole,
            0 => Value::Finite(head[0].clone()),
            _ => Value::Finite(F::zero()),
        })
    }
}
