//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use sklyanin_core::curve::{Curve, CurvePoint, Translation};
use sklyanin_core::divisor::Divisor;
use sklyanin_core::linalg::{self, EchelonBasis};
use sklyanin_core::riemann_roch::{rr_basis, SectionSpace};
use sklyanin_core::thcr::{GradedSpace, SectionId, TwistedRing};
use sklyanin_core::{Field, Rational};

pub type Point = CurvePoint<Rational>;
pub type Div = Divisor<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// `y^2 + y = x^3 - x` with `t = (0, 0)`; rank one, so every rational point
/// is a multiple of `t`.
pub fn sigma37() -> Translation<Rational> {
    Translation::new(Curve::from_i64([0, 0, 1, -1, 0]).unwrap(), CurvePoint::affine(q(0), q(0))).unwrap()
}

/// `y^2 + y = x^3 + x^2 - 2x` with `t = (0, 0)`; rank two, and `(1, 0)` is not
/// on the orbit of `t`.
pub fn sigma389() -> Translation<Rational> {
    Translation::new(Curve::from_i64([0, 1, 1, -2, 0]).unwrap(), CurvePoint::affine(q(0), q(0))).unwrap()
}

pub fn off_orbit_389() -> Point {
    CurvePoint::affine(q(1), q(0))
}

pub fn ring37() -> TwistedRing {
    TwistedRing::standard(sigma37())
}

pub fn ring389() -> TwistedRing {
    TwistedRing::standard(sigma389())
}

/// Brute-force effectiveness scan: `[x]_n` effective for all `n` in `lo..=hi`.
pub fn effective_on(sigma: &Translation<Rational>, x: &Div, lo: usize, hi: usize) -> bool {
    (lo..=hi).all(|n| x.cumulative(sigma, n).is_effective())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Equal,
    /// left contains right
    Contains,
}

/// Decides relations between spaces without the engine's sampling: each
/// section is evaluated directly from its definition at points `base + k t`
/// for `|k| >= start`, and solved for in the symbolic Riemann-Roch basis of
/// the joint bound. More than `deg(bound)` agreeing points pin a section of
/// `L(bound)` down exactly, so the resulting coordinates are exact.
pub struct Oracle<'a> {
    pub ring: &'a TwistedRing,
    pub base: Point,
    pub start: i64,
}

impl<'a> Oracle<'a> {
    pub fn new(ring: &'a TwistedRing, base: Point, start: i64) -> Self {
        Oracle { ring, base, start }
    }

    fn points(&self, bound: &Div, ids: &[SectionId], need: usize) -> Vec<(Point, Vec<Rational>)> {
        let sigma = self.ring.sigma();
        let curve = sigma.curve();
        let bad: Vec<&Rational> = bound.support().filter_map(|p| p.x()).collect();
        let mut out = Vec::new();
        let mut k = self.start;
        while out.len() < need {
            let p = curve.add_unchecked(&self.base, &sigma.multiple_of_t(k));
            k = if k > 0 { -k } else { -k + 1 };
            assert!(k.abs() < self.start + 400, "oracle ran out of points");
            let Some(x) = p.x() else { continue };
            if bad.contains(&x) {
                continue;
            }
            let vals: Option<Vec<Rational>> = ids.iter().map(|&id| self.ring.value_at(id, &p)).collect();
            if let Some(v) = vals {
                out.push((p, v));
            }
        }
        out
    }

    /// Coordinates of each section in `rr`, or `None` if one of them is not
    /// in `L(bound)`.
    pub fn coordinates(&self, rr: &SectionSpace<Rational>, ids: &[SectionId]) -> Option<Vec<Vec<Rational>>> {
        let ff = self.ring.function_field();
        let need = rr.bound().degree().max(0) as usize + 3;
        let pts = self.points(rr.bound(), ids, need);
        let mat: Vec<Vec<Rational>> = pts
            .iter()
            .map(|(p, _)| rr.basis().iter().map(|f| ff.evaluate(f, p).unwrap().finite().expect("basis finite off the bound")).collect())
            .collect();
        (0..ids.len())
            .map(|i| {
                let rhs: Vec<Rational> = pts.iter().map(|(_, v)| v[i].clone()).collect();
                linalg::solve(&mat, &rhs, rr.dim())
            })
            .collect()
    }

    pub fn holds(&self, rel: Rel, left: &GradedSpace, right: &GradedSpace) -> bool {
        if left.degree() != right.degree() {
            return false;
        }
        let bound = left.bound().sup(right.bound());
        let rr = rr_basis(self.ring.function_field(), &bound).unwrap();
        let (Some(a), Some(b)) = (self.coordinates(&rr, left.basis()), self.coordinates(&rr, right.basis())) else {
            return false;
        };
        if linalg::rank(&a, rr.dim()) != a.len() || linalg::rank(&b, rr.dim()) != b.len() {
            return false;
        }
        let mut ea = EchelonBasis::new(rr.dim());
        a.iter().for_each(|v| {
            ea.insert(v);
        });
        let mut eb = EchelonBasis::new(rr.dim());
        b.iter().for_each(|v| {
            eb.insert(v);
        });
        let b_in_a = b.iter().all(|v| ea.contains(v));
        match rel {
            Rel::Contains => b_in_a,
            Rel::Equal => b_in_a && a.iter().all(|v| eb.contains(v)),
        }
    }
}

/// Running count of relations re-decided by the oracle.
#[derive(Default)]
pub struct Tally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, oracle: &Oracle, label: &str, rel: Rel, left: &GradedSpace, right: &GradedSpace, expected: bool) {
        self.checked += 1;
        if oracle.holds(rel, left, right) != expected {
            self.failures.push(label.to_string());
        }
    }
}
