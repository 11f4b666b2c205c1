//! Subalgebras of `B(E, L, sigma)` generated by seeds, their Hilbert series,
//! Veronese views, and the seeds of the blowups `S(d)` and `T(d)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::thcr::{GradedSpace, TwistedRing};
use crate::Rational;

type Div = Divisor<Rational>;

/// Integer power series `c_0 + c_1 t + ...` with a fixed number of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub coeffs: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(coeffs: Vec<i64>) -> Self {
        HilbertSeries { coeffs }
    }

    /// Series of `R` from that of `R / gR` when `g` is central of degree 3
    /// and `R` is g-divisible: `c_n = sum_k cbar_{n - 3k}`.
    pub fn lift_by_g(&self) -> Self {
        let mut out = self.coeffs.clone();
        for n in 3..out.len() {
            out[n] += out[n - 3];
        }
        HilbertSeries { coeffs: out }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// A rational function `num(t) / den(t)` with integer coefficients and
/// `den(0) = +-1`, expanded as a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ClosedForm {
    /// `(t^2 + (1 - d) t + 1) / (t - 1)^2`, the bar-side series of a blowup at
    /// a divisor of degree `d`.
    pub fn blowup_bar(d: i64) -> Self {
        ClosedForm { num: vec![1, 1 - d, 1], den: vec![1, -2, 1] }
    }

    /// The same divided by `1 - t^3`.
    pub fn blowup_lifted(d: i64) -> Self {
        let bar = Self::blowup_bar(d);
        ClosedForm { num: bar.num, den: poly_mul(&bar.den, &[1, 0, 0, -1]) }
    }

    pub fn expand(&self, terms: usize) -> HilbertSeries {
        assert!(self.den[0].abs() == 1, "constant term of the denominator must be a unit");
        let mut c = vec![0i64; terms];
        for n in 0..terms {
            let mut acc = self.num.get(n).copied().unwrap_or(0);
            for k in 1..self.den.len().min(n + 1) {
                acc -= self.den[k] * c[n - k];
            }
            c[n] = acc * self.den[0];
        }
        HilbertSeries { coeffs: c }
    }
}

/// Generating spaces by degree; degree 0 is always `span{1}`.
pub type SubalgebraSeeds = BTreeMap<usize, GradedSpace>;

/// Pieces `A_0, ..., A_N` of a graded subalgebra (or a reindexing of one).
#[derive(Clone, Debug)]
pub struct GradedAlgebraView {
    pieces: Vec<GradedSpace>,
}

impl GradedAlgebraView {
    pub fn from_pieces(pieces: Vec<GradedSpace>) -> Self {
        GradedAlgebraView { pieces }
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, n: usize) -> Result<&GradedSpace> {
        self.pieces.get(n).ok_or_else(|| Error::OutOfRange(format!("piece {n} beyond computed degree {}", self.max_degree())))
    }

    pub fn pieces(&self) -> &[GradedSpace] {
        &self.pieces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(GradedSpace::dim).collect()
    }

    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries::new(self.pieces.iter().map(|p| p.dim() as i64).collect())
    }
}

fn check_effective(d: &Div, max_degree: i64) -> Result<()> {
    if !d.is_effective() {
        return Err(Error::Input(format!("blowup divisor {d} must be effective")));
    }
    if d.degree() > max_degree {
        return Err(Error::OutOfRange(format!("blowup divisor {d} has degree {} > {max_degree}", d.degree())));
    }
    Ok(())
}

/// Seeds of `S(d)`: in degree `i = 1, 2, 3` the sections vanishing on `[d]_i`.
pub fn seeds_for_s_blowup(ring: &TwistedRing, d: &Div) -> Result<SubalgebraSeeds> {
    check_effective(d, 2)?;
    (1..=3).map(|i| Ok((i, ring.graded_piece(i, &d.cumulative(ring.sigma(), i))?))).collect()
}

/// Seed of `T(d)`: one space in ambient degree 3, the sections vanishing on `d`.
pub fn seeds_for_t_blowup(ring: &TwistedRing, d: &Div) -> Result<SubalgebraSeeds> {
    check_effective(d, 7)?;
    Ok(BTreeMap::from([(3, ring.graded_piece(3, d)?)]))
}

/// `A_n = seed_n + sum_{0<i<n} A_i A_{n-i}` for `n <= max_degree`.
///
/// Each `A_n` only uses pieces of lower degree, so one ascending pass already
/// yields the subalgebra generated by the seeds.
pub fn generate_graded(ring: &TwistedRing, seeds: &SubalgebraSeeds, max_degree: usize) -> Result<GradedAlgebraView> {
    if let Some((&n, _)) = seeds.iter().find(|(&n, _)| n == 0) {
        return Err(Error::Input(format!("seed in degree {n}; degree 0 is always the scalars")));
    }
    let mut pieces = vec![ring.unit()];
    for n in 1..=max_degree {
        let seed = seeds.get(&n);
        if let Some(s) = seed {
            if s.degree() != n {
                return Err(Error::Incompatible(format!("seed listed at degree {n} has degree {}", s.degree())));
            }
        }
        let mut bound: Option<Div> = seed.map(|s| s.bound().clone());
        // a zero factor contributes nothing, and its nominal bound would only
        // loosen the joint one
        for i in 1..n {
            if pieces[i].dim() == 0 || pieces[n - i].dim() == 0 {
                continue;
            }
            let b = ring.product_bound(pieces[i].bound(), i, pieces[n - i].bound());
            bound = Some(bound.map_or(b.clone(), |acc| acc.sup(&b)));
        }
        let bound = bound.unwrap_or_else(|| ring.sheaf().cumulative(n));
        let cap = ring.rr_cap(&bound)?;
        let mut acc = GradedSpace::zero(n, bound);
        if let Some(s) = seed {
            acc = ring.sum(&acc, s)?;
        }
        for i in 1..n {
            if acc.dim() == cap {
                break;
            }
            if pieces[i].dim() == 0 || pieces[n - i].dim() == 0 {
                continue;
            }
            let prod = ring.space_product(&pieces[i], &pieces[n - i])?;
            acc = ring.sum(&acc, &prod)?;
        }
        pieces.push(acc);
    }
    Ok(GradedAlgebraView { pieces })
}

/// `n -> A_{dn}` for `n <= n_max`.
pub fn veronese_view(view: &GradedAlgebraView, d: usize, n_max: usize) -> Result<GradedAlgebraView> {
    if d == 0 {
        return Err(Error::Input("Veronese index must be positive".into()));
    }
    if d * n_max > view.max_degree() {
        return Err(Error::OutOfRange(format!("Veronese degree {} beyond computed degree {}", d * n_max, view.max_degree())));
    }
    Ok(GradedAlgebraView { pieces: (0..=n_max).map(|n| view.pieces[d * n].clone()).collect() })
}

/// `B(E, L(-x), sigma)` up to degree `max_degree`: pieces `L([D_L]_n - [x]_n)`.
pub fn blowdown_view(ring: &TwistedRing, x: &Div, max_degree: usize) -> Result<GradedAlgebraView> {
    let mut pieces = vec![ring.unit()];
    for n in 1..=max_degree {
        pieces.push(ring.graded_piece(n, &x.cumulative(ring.sigma(), n))?);
    }
    Ok(GradedAlgebraView { pieces })
}

/// Piecewise equality on degrees `n0..=n_max`.
pub fn eventually_equal(ring: &TwistedRing, a: &GradedAlgebraView, b: &GradedAlgebraView, n0: usize, n_max: usize) -> Result<bool> {
    for n in n0..=n_max {
        if !ring.equal(a.piece(n)?, b.piece(n)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{Curve, CurvePoint, Translation};
    use crate::Field;

    fn ring() -> TwistedRing {
        let c = Curve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let t = CurvePoint::affine(Rational::from_i64(0), Rational::from_i64(0));
        TwistedRing::standard(Translation::new(c, t).unwrap())
    }

    #[test]
    fn closed_form_expansions() {
        assert_eq!(ClosedForm::blowup_bar(0).expand(5).coeffs, vec![1, 3, 6, 9, 12]);
        assert_eq!(ClosedForm::blowup_bar(1).expand(5).coeffs, vec![1, 2, 4, 6, 8]);
        assert_eq!(ClosedForm::blowup_bar(2).expand(5).coeffs, vec![1, 1, 2, 3, 4]);
        let lifted = ClosedForm::blowup_lifted(2).expand(7);
        assert_eq!(lifted.coeffs, vec![1, 1, 2, 4, 5, 7, 10]);
        assert_eq!(ClosedForm::blowup_bar(2).expand(7).lift_by_g(), lifted);
        assert_eq!(HilbertSeries::new(vec![1, 2, 4, 6, 8]).lift_by_g().coeffs, vec![1, 2, 4, 7, 10]);
        assert_eq!(HilbertSeries::new(vec![0; 4]).lift_by_g().coeffs, vec![0; 4]);
    }

    #[test]
    fn full_degree_one_seed_gives_the_ambient_ring() {
        let r = ring();
        let seeds = BTreeMap::from([(1, r.ambient_piece(1).unwrap())]);
        let v = generate_graded(&r, &seeds, 4).unwrap();
        assert_eq!(v.dims(), vec![1, 3, 6, 9, 12]);
        let amb = blowdown_view(&r, &Divisor::zero(), 4).unwrap();
        assert!(eventually_equal(&r, &v, &amb, 0, 4).unwrap());
        let ver = veronese_view(&v, 2, 2).unwrap();
        assert_eq!(ver.dims(), vec![1, 6, 12]);
        assert!(veronese_view(&v, 2, 3).is_err());
    }

    #[test]
    fn seed_preconditions() {
        let r = ring();
        let s = r.sigma().clone();
        let p = s.apply(s.point(), 1);
        let three = Divisor::from_terms([(p.clone(), 3)]);
        assert!(matches!(seeds_for_s_blowup(&r, &three), Err(Error::OutOfRange(_))));
        let neg = Divisor::from_terms([(p.clone(), -1)]);
        assert!(matches!(seeds_for_s_blowup(&r, &neg), Err(Error::Input(_))));
        let eight = Divisor::from_terms([(p.clone(), 8)]);
        assert!(matches!(seeds_for_t_blowup(&r, &eight), Err(Error::OutOfRange(_))));
        let dims: Vec<usize> = seeds_for_s_blowup(&r, &Divisor::point(p)).unwrap().values().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 4, 6]);
        let t0 = seeds_for_t_blowup(&r, &Divisor::zero()).unwrap();
        assert_eq!(t0[&3].dim(), 9);
    }
}
