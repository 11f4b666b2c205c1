//! The worked virtual-blowup example: `U` generated by `X_1`, `X_2`, `X_3`
//! built from a point `p` and its twists `p_j = p^{sigma^j}`, checked against
//! every dimension and product identity it is supposed to satisfy.

use std::collections::BTreeMap;

use crate::blowup::{blowdown_view, generate_graded};
use crate::curve::CurvePoint;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::orbit::{OrbitCalculus, DEFAULT_ORBIT_CAP};
use crate::report::Report;
use crate::thcr::{GradedSpace, TwistedRing};
use crate::Rational;

type Point = CurvePoint<Rational>;

/// How `X_2` is built. `FullPiece` replaces the product by the whole
/// subtracted piece and must break the degree-2 count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum X2Mode {
    Product,
    FullPiece,
}

#[derive(Clone, Debug)]
pub struct ExampleConfig {
    pub p: Point,
    pub max_degree: usize,
    pub x2_mode: X2Mode,
}

impl ExampleConfig {
    pub fn new(p: Point) -> Self {
        ExampleConfig { p, max_degree: 8, x2_mode: X2Mode::Product }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `left` contains `right`.
    Contains,
}

#[derive(Clone, Debug)]
pub struct AssertedRelation {
    pub label: String,
    pub degree: usize,
    pub relation: Relation,
    pub left: GradedSpace,
    pub right: GradedSpace,
    pub expected: bool,
}

#[derive(Default)]
struct Recorder {
    rep: Report,
    relations: Vec<AssertedRelation>,
}

impl Recorder {
    #[allow(clippy::too_many_arguments)]
    fn check(&mut self, ring: &TwistedRing, label: &str, degree: usize, relation: Relation, left: &GradedSpace, right: &GradedSpace, expected: bool, source: &str) -> Result<()> {
        let got = match relation {
            Relation::Equal => ring.equal(left, right)?,
            Relation::Contains => ring.contains(left, right)?,
        };
        self.rep.check(label, Some(degree), got, expected, source);
        self.relations.push(AssertedRelation { label: label.to_string(), degree, relation, left: left.clone(), right: right.clone(), expected });
        Ok(())
    }
}

/// `x = p - p^sigma + p^{sigma^2}`.
pub fn virtual_divisor(ring: &TwistedRing, p: &Point) -> Divisor<Rational> {
    let s = ring.sigma();
    Divisor::from_terms([(p.clone(), 1), (s.twist_point(p, 1), -1), (s.twist_point(p, 2), 1)])
}

pub fn run_example(ring: &TwistedRing, cfg: &ExampleConfig) -> Result<Report> {
    Ok(run_example_with_relations(ring, cfg)?.0)
}

/// Like [`run_example`], also returning every asserted equality and
/// containment together with the spaces involved, so callers can re-check
/// them by other means.
pub fn run_example_with_relations(ring: &TwistedRing, cfg: &ExampleConfig) -> Result<(Report, Vec<AssertedRelation>)> {
    let curve = ring.sigma().curve();
    curve.check(&cfg.p)?;
    if cfg.p.is_infinity() || curve.is_two_torsion(&cfg.p) {
        return Err(Error::UnsupportedPoint { point: cfg.p.to_string(), reason: "p must be affine and not 2-torsion" });
    }
    if cfg.max_degree < 5 {
        return Err(Error::OutOfRange(format!("max degree {} < 5", cfg.max_degree)));
    }
    let sigma = ring.sigma();
    let pj = |j: i64| sigma.twist_point(&cfg.p, j);
    let s1 = |j: i64| ring.graded_piece(1, &Divisor::point(pj(j)));
    let x = virtual_divisor(ring, &cfg.p);
    let mut rec = Recorder::default();

    let calc = OrbitCalculus::new(sigma, DEFAULT_ORBIT_CAP);
    let veff = calc.is_virtually_effective(&x)?;
    rec.rep.check("x virtually effective", None, veff.verdict, true, "virtual effectiveness of p - p1 + p2");
    let normalized = calc.normalized_divisor(&x)?;
    rec.rep.check("deg normalized divisor", None, normalized.degree(), x.degree(), "normalized divisor of x");
    for n in 2..=cfg.max_degree {
        let expected = Divisor::from_terms([(cfg.p.clone(), 1), (pj(n as i64 + 1), 1)]).add(&Divisor::from_terms((2..n as i64).map(|j| (pj(j), 1))));
        rec.rep.check("[x]_n = p + p2 + ... + p(n-1) + p(n+1)", Some(n), x.cumulative(sigma, n) == expected, true, "cumulative sums of x");
    }

    let sp = s1(0)?;
    let sp2 = s1(2)?;
    rec.rep.check("dim S(p)_1", Some(1), sp.dim(), 2usize, "one-point blowup degree 1");
    let x1 = ring.intersect(&sp, &sp2)?;
    rec.rep.check("dim X1", Some(1), x1.dim(), 1usize, "X1 = S(p)_1 cap S(p2)_1");
    let x1_piece = ring.graded_piece(1, &Divisor::from_terms([(pj(0), 1), (pj(2), 1)]))?;
    rec.check(ring, "X1 = H0(L(-p-p2))", 1, Relation::Equal, &x1, &x1_piece, true, "X1 = S(p)_1 cap S(p2)_1")?;

    let b: Vec<GradedSpace> = (0..=cfg.max_degree)
        .map(|n| if n == 0 { Ok(ring.unit()) } else { ring.graded_piece(n, &x.cumulative(sigma, n)) })
        .collect::<Result<_>>()?;
    let x2_product = ring.space_product(&sp, &sp2)?;
    let x2 = match cfg.x2_mode {
        X2Mode::Product => x2_product.clone(),
        X2Mode::FullPiece => b[2].clone(),
    };
    rec.rep.check("dim X2", Some(2), x2.dim(), 3usize, "X2 = S(p)_1 S(p2)_1");
    rec.rep.check("dim B2", Some(2), b[2].dim(), 4usize, "B = B(E, L(-x), sigma)");
    rec.check(ring, "X2 in B2", 2, Relation::Contains, &b[2], &x2, true, "X2 = S(p)_1 S(p2)_1")?;
    let x3 = b[3].clone();
    rec.rep.check("dim X3", Some(3), x3.dim(), 6usize, "X3 = H0(L3(-[x]_3))");

    let seeds = BTreeMap::from([(1, x1.clone()), (2, x2.clone()), (3, x3.clone())]);
    let u = generate_graded(ring, &seeds, cfg.max_degree)?;
    for n in 0..=cfg.max_degree {
        let expected = match n {
            0 | 1 => 1,
            2 => 3,
            _ => 2 * n,
        };
        rec.rep.check("dim U", Some(n), u.piece(n)?.dim(), expected, "U = k + X1 + X2 + B>=3");
    }
    for n in 1..=cfg.max_degree {
        rec.rep.check("dim B", Some(n), b[n].dim(), 2 * n, "B = B(E, L(-x), sigma)");
        rec.check(ring, "U_n = B_n", n, Relation::Equal, u.piece(n)?, &b[n], n >= 3, "U = k + X1 + X2 + B>=3")?;
    }
    rec.check(ring, "U_1 = X1", 1, Relation::Equal, u.piece(1)?, &x1, true, "U = k + X1 + X2 + B>=3")?;
    rec.check(ring, "U_2 = X2", 2, Relation::Equal, u.piece(2)?, &x2_product, true, "U = k + X1 + X2 + B>=3")?;
    let blowdown = blowdown_view(ring, &x, cfg.max_degree)?;
    rec.rep.check("B view matches pieces", None, blowdown.dims().iter().map(|&d| d as i64).collect::<Vec<_>>(), b.iter().map(|s| s.dim() as i64).collect::<Vec<_>>(), "B = B(E, L(-x), sigma)");

    let x2sq = ring.space_product(&x2, &x2)?;
    rec.check(ring, "X2 X2 = B4", 4, Relation::Equal, &x2sq, &b[4], true, "square of X2 fills B4")?;
    rec.check(ring, "B4 in U4", 4, Relation::Contains, u.piece(4)?, &b[4], true, "square of X2 fills B4")?;
    let triple = ring.space_product_many(&[&sp, &s1(1)?, &sp2])?;
    rec.check(ring, "X3 = S(p)_1 S(p1)_1 S(p2)_1", 3, Relation::Equal, &triple, &x3, true, "X3 as a triple product")?;
    let x2x3 = ring.space_product(&x2, &x3)?;
    rec.check(ring, "X2 X3 = B5", 5, Relation::Equal, &x2x3, &b[5], true, "X2 X3 fills B5")?;

    let x2_alt = ring.space_product(&s1(3)?, &s1(-1)?)?;
    rec.rep.check("dim X2' = S(p3)_1 S(p-1)_1", Some(2), x2_alt.dim(), 4usize, "transporter example");
    rec.check(ring, "X2' = B2", 2, Relation::Equal, &x2_alt, &b[2], true, "transporter example")?;
    let y = ring.space_product(&s1(-1)?, &s1(3)?)?;
    rec.rep.check("dim Y = S(p-1)_1 S(p3)_1", Some(2), y.dim(), 4usize, "transporter example");
    let z = ring.left_transporter(&s1(5)?, &y)?;
    rec.rep.check("dim Z", Some(1), z.dim(), 1usize, "transporter example");
    let z_piece = ring.graded_piece(1, &Divisor::from_terms([(pj(-2), 1), (pj(3), 1)]))?;
    rec.check(ring, "Z = H0(L(-p-2 - p3))", 1, Relation::Equal, &z, &z_piece, true, "transporter example")?;
    let s3y = ring.space_product(&s1(3)?, &y)?;
    rec.rep.check("dim S(p3)_1 Y", Some(3), s3y.dim(), 6usize, "transporter example");
    let s3y_piece = ring.graded_piece(3, &Divisor::from_terms([(pj(0), 1), (pj(3), 1), (pj(5), 1)]))?;
    rec.check(ring, "S(p3)_1 Y = H0(L3(-p-p3-p5))", 3, Relation::Equal, &s3y, &s3y_piece, true, "transporter example")?;
    Ok((rec.rep, rec.relations))
}
