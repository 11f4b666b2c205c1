//! Bases of Riemann-Roch spaces `L(D) = { f : div(f) + D >= 0 }`.
//!
//! Denominators are cleared with `s = prod (x - c)^{e_c}`, one factor per
//! x-coordinate in the affine support, which turns `L(D)` into a subspace of
//! `L(N O)` cut out by vanishing conditions at finitely many points. `L(N O)`
//! has the monomial basis `x^i y^j` with `j <= 1` and `2i + 3j <= N`.

use std::collections::BTreeMap;

use crate::curve::CurvePoint;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::function_field::{FnElem, FunctionField, RatFunc};
use crate::linalg;
use crate::poly::Poly;
use crate::scalar::Field;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace<F: Field> {
    bound: Divisor<F>,
    basis: Vec<FnElem<F>>,
}

impl<F: Field> SectionSpace<F> {
    pub fn new(bound: Divisor<F>, basis: Vec<FnElem<F>>) -> Self {
        SectionSpace { bound, basis }
    }

    pub fn bound(&self) -> &Divisor<F> {
        &self.bound
    }

    pub fn basis(&self) -> &[FnElem<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `L(D)` reduced to `L(N O)`: `f` lies in `L(D)` iff `f s` is a polynomial
/// in `x, y` with pole order at most `n` at `O` vanishing to order `m` at
/// each listed point.
struct Clearing<F: Field> {
    s: Poly<F>,
    /// `s = prod (x - c)^e`.
    roots: Vec<(F, usize)>,
    n: i64,
    conditions: Vec<(CurvePoint<F>, usize)>,
    monomials: Vec<(usize, usize)>,
}

impl<F: Field> Clearing<F> {
    fn new(ff: &FunctionField<F>, d: &Divisor<F>) -> Result<Self> {
        let curve = ff.curve();
        d.validate(curve)?;
        // x-coordinate -> (a point with that x, max(n_P, n_{-P}, 0))
        let mut classes: BTreeMap<F, (CurvePoint<F>, i64)> = BTreeMap::new();
        for (p, c) in d.terms() {
            if let Some(x) = p.x() {
                if curve.is_two_torsion(p) {
                    return Err(Error::UnsupportedPoint { point: p.to_string(), reason: "2-torsion point" });
                }
                let e = classes.entry(x.clone()).or_insert((p.clone(), 0));
                e.1 = e.1.max(c);
            }
        }
        let mut s = Poly::one();
        let mut roots = Vec::new();
        let mut conditions = Vec::new();
        let mut total = 0;
        for (x, (p, e)) in &classes {
            let e = *e;
            total += e;
            s = &s * &Poly::linear_root(x).pow(e as usize);
            if e > 0 {
                roots.push((x.clone(), e as usize));
            }
            for q in [p.clone(), curve.negate(p)] {
                let m = e - d.coeff(&q);
                if m > 0 {
                    conditions.push((q, m as usize));
                }
            }
        }
        let n = d.coeff(&CurvePoint::Infinity) + 2 * total;
        let mut monomials = Vec::new();
        if n >= 0 {
            for j in 0..=1usize {
                for i in 0.. {
                    if (2 * i + 3 * j) as i64 > n {
                        break;
                    }
                    monomials.push((i, j));
                }
            }
        }
        Ok(Clearing { s, roots, n, conditions, monomials })
    }

    fn condition_rows(&self, ff: &FunctionField<F>) -> Result<Vec<Vec<F>>> {
        let mut rows = Vec::new();
        for (q, m) in &self.conditions {
            let m = *m;
            let y = ff.y_expansion(q, m)?;
            let x0 = q.x().unwrap().clone();
            let mut x_pows = vec![Series::constant(F::one(), m)];
            let x = Series::new(vec![x0, F::one()], m);
            let top = self.monomials.iter().map(|&(i, _)| i).max().unwrap_or(0);
            for i in 1..=top {
                x_pows.push(x_pows[i - 1].mul(&x));
            }
            let cols: Vec<Series<F>> = self
                .monomials
                .iter()
                .map(|&(i, j)| if j == 0 { x_pows[i].clone() } else { x_pows[i].mul(&y) })
                .collect();
            for k in 0..m {
                rows.push(cols.iter().map(|c| c.coeff(k)).collect());
            }
        }
        Ok(rows)
    }

    fn to_elem(&self, c: &[F]) -> FnElem<F> {
        let mut a = vec![F::zero(); self.monomials.len()];
        let mut b = vec![F::zero(); self.monomials.len()];
        for (&(i, j), v) in self.monomials.iter().zip(c) {
            if j == 0 {
                a[i] = v.clone();
            } else {
                b[i] = v.clone();
            }
        }
        FnElem::new(self.over_s(Poly::new(a)), self.over_s(Poly::new(b)))
    }

    /// `p / s` in lowest terms, cancelling only the known roots of `s`.
    fn over_s(&self, mut p: Poly<F>) -> RatFunc<F> {
        if p.is_zero() {
            return RatFunc::zero();
        }
        let mut den = Poly::one();
        for (c, e) in &self.roots {
            let lin = Poly::linear_root(c);
            let mut k = *e;
            while k > 0 {
                let (q, r) = p.div_rem(&lin);
                if !r.is_zero() {
                    break;
                }
                p = q;
                k -= 1;
            }
            den = &den * &lin.pow(k);
        }
        RatFunc::from_coprime(p, den)
    }

    /// Monomial coordinates of `f s`, or `None` if it is not in `L(N O)`.
    fn from_elem(&self, ff: &FunctionField<F>, f: &FnElem<F>) -> Option<Vec<F>> {
        let h = ff.mul(f, &FnElem::from_polys(self.s.clone(), Poly::zero(), Poly::one()));
        if h.u.den().degree() != Some(0) || h.v.den().degree() != Some(0) {
            return None;
        }
        let mut out = vec![F::zero(); self.monomials.len()];
        let mut used = 0;
        for (k, &(i, j)) in self.monomials.iter().enumerate() {
            let p = if j == 0 { h.u.num() } else { h.v.num() };
            out[k] = p.coeff(i);
            if !out[k].is_zero() {
                used += 1;
            }
        }
        let nonzero = h.u.num().coeffs().iter().chain(h.v.num().coeffs()).filter(|c| !c.is_zero()).count();
        (used == nonzero).then_some(out)
    }
}

/// Basis of `L(D)`. Affine support points must not be 2-torsion.
pub fn rr_basis<F: Field>(ff: &FunctionField<F>, d: &Divisor<F>) -> Result<SectionSpace<F>> {
    let cl = Clearing::new(ff, d)?;
    if cl.n < 0 || cl.monomials.is_empty() {
        return Ok(SectionSpace::new(d.clone(), Vec::new()));
    }
    let rows = cl.condition_rows(ff)?;
    let ker = linalg::kernel(&rows, cl.monomials.len());
    let basis = ker.iter().map(|c| cl.to_elem(c)).collect();
    Ok(SectionSpace::new(d.clone(), basis))
}

/// Coordinates of `f` in the basis of `space`, or `None` if `f` is not in it.
/// Exact: `f s` is tested symbolically against the monomial description.
pub fn coordinates<F: Field>(ff: &FunctionField<F>, f: &FnElem<F>, space: &SectionSpace<F>) -> Result<Option<Vec<F>>> {
    if f.is_zero() {
        return Ok(Some(vec![F::zero(); space.dim()]));
    }
    let cl = Clearing::new(ff, space.bound())?;
    let Some(h) = cl.from_elem(ff, f) else { return Ok(None) };
    let mons: Vec<Vec<F>> = space
        .basis()
        .iter()
        .map(|b| cl.from_elem(ff, b).ok_or_else(|| Error::Inconsistent("basis element outside its bound".into())))
        .collect::<Result<_>>()?;
    let cols = linalg::transpose(&mons, cl.monomials.len());
    Ok(linalg::solve(&cols, &h, space.dim()))
}

pub fn space_membership<F: Field>(ff: &FunctionField<F>, f: &FnElem<F>, space: &SectionSpace<F>) -> Result<bool> {
    Ok(coordinates(ff, f, space)?.is_some())
}

/// `L(D)` as `{ h / g }`, with `g` a product of lines and verticals satisfying
/// `div g = D - (S) - (n - 1) O` where `n = deg D` and `S` is the sum of `D`
/// in the group law. Then `h` ranges over `L((S) + (n - 1) O)`, which has an
/// explicit basis, so no linear algebra is needed.
#[derive(Clone, Debug)]
pub struct FactoredSpace<F: Field> {
    pub bound: Divisor<F>,
    /// Numerators `h_i` of the basis elements `h_i / g`.
    pub numerators: Vec<FnElem<F>>,
    /// `g` as a list of `(factor, exponent)`.
    pub denominator: Vec<(FnElem<F>, i64)>,
}

impl<F: Field> FactoredSpace<F> {
    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    /// `g` expanded in the function field.
    pub fn expanded_denominator(&self, ff: &FunctionField<F>) -> Result<FnElem<F>> {
        let mut g = FnElem::one();
        for (f, e) in &self.denominator {
            let f = if *e < 0 { ff.inv(f)? } else { f.clone() };
            g = ff.mul(&g, &ff.pow(&f, e.unsigned_abs() as usize));
        }
        Ok(g)
    }

    pub fn to_section_space(&self, ff: &FunctionField<F>) -> Result<SectionSpace<F>> {
        let g_inv = ff.inv(&self.expanded_denominator(ff)?)?;
        let basis = self.numerators.iter().map(|h| ff.mul(h, &g_inv)).collect();
        Ok(SectionSpace::new(self.bound.clone(), basis))
    }
}

fn check_support<F: Field>(ff: &FunctionField<F>, d: &Divisor<F>) -> Result<()> {
    d.validate(ff.curve())?;
    for p in d.support() {
        if !p.is_infinity() && ff.curve().is_two_torsion(p) {
            return Err(Error::UnsupportedPoint { point: p.to_string(), reason: "2-torsion point" });
        }
    }
    Ok(())
}

/// Basis of `L(D)` in factored form; same space as [`rr_basis`].
pub fn rr_basis_factored<F: Field>(ff: &FunctionField<F>, d: &Divisor<F>) -> Result<FactoredSpace<F>> {
    check_support(ff, d)?;
    let curve = ff.curve();
    let mut r = CurvePoint::Infinity;
    let mut denominator = Vec::new();
    let mut push = |f: FnElem<F>, e: i64| {
        if f != FnElem::one() {
            denominator.push((f, e));
        }
    };
    for (p, c) in d.terms() {
        if p.is_infinity() {
            continue;
        }
        for _ in 0..c.unsigned_abs() {
            if c > 0 {
                let next = curve.add_unchecked(&r, p);
                push(ff.line(&r, p), 1);
                push(ff.vertical(&next), -1);
                r = next;
            } else {
                let next = curve.sub_unchecked(&r, p);
                push(ff.vertical(&r), 1);
                push(ff.line(&next, p), -1);
                r = next;
            }
        }
    }
    let n = d.degree();
    let mut numerators = Vec::new();
    let monomials = |top: i64| -> Vec<FnElem<F>> {
        let mut out = vec![FnElem::one()];
        for order in 2..=top {
            let (i, j) = if order % 2 == 0 { (order / 2, 0) } else { ((order - 3) / 2, 1) };
            let xi = ff.pow(&FnElem::x(), i as usize);
            out.push(if j == 0 { xi } else { ff.mul(&xi, &FnElem::y()) });
        }
        out
    };
    match (&r, n) {
        (_, n) if n < 0 => {}
        (CurvePoint::Infinity, 0) => numerators.push(FnElem::one()),
        (_, 0) => {}
        (CurvePoint::Infinity, n) => numerators = monomials(n),
        (CurvePoint::Affine { x, y }, n) => {
            numerators = monomials(n - 1);
            if n >= 2 {
                // simple poles at S and O only
                let y_neg = -y.clone() - curve.linear_y_coeff(x);
                let num = FnElem::y().sub(&FnElem::constant(y_neg));
                numerators.push(ff.mul(&num, &ff.inv(&ff.vertical(&r))?));
            }
        }
    }
    Ok(FactoredSpace { bound: d.clone(), numerators, denominator })
}
