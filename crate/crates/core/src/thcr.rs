//! Graded pieces and twisted multiplication in `B(E, L, sigma)`.
//!
//! The degree-`n` piece is `L([D_L]_n)` and the product of `f` in degree `m`
//! with `g` is `f * (g o sigma^m)`. Pulling back along `sigma^m` is never done
//! symbolically. Sections are handles (a Riemann-Roch basis function, a formal
//! product, or a linear combination) evaluated on demand at sample points
//! `H + jG + kt`, with every value memoized. A nonzero element of `L(J)` has
//! at most `deg J` zeros away from the support of `J`, so `deg J + 1` samples
//! off that support determine it; all linear algebra on sections happens on
//! those value vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::curve::{CurvePoint, Translation};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::function_field::{FnElem, FunctionField};
use crate::linalg::{self, EchelonBasis};
use crate::riemann_roch::{rr_basis, SectionSpace};
use crate::Rational;

type Point = CurvePoint<Rational>;
type Div = Divisor<Rational>;

/// A line bundle `L = O(D_L)` together with the translation `sigma`.
#[derive(Clone, Debug)]
pub struct SheafData {
    base: Div,
    sigma: Translation<Rational>,
}

impl SheafData {
    pub fn new(base: Div, sigma: Translation<Rational>) -> Result<Self> {
        base.validate(sigma.curve())?;
        if base.degree() < 1 {
            return Err(Error::Input(format!("base divisor {base} must have positive degree")));
        }
        Ok(SheafData { base, sigma })
    }

    /// `D_L = 3 O`.
    pub fn standard(sigma: Translation<Rational>) -> Self {
        SheafData { base: Divisor::from_terms([(CurvePoint::Infinity, 3)]), sigma }
    }

    pub fn base(&self) -> &Div {
        &self.base
    }

    pub fn sigma(&self) -> &Translation<Rational> {
        &self.sigma
    }

    /// `[D_L]_n`.
    pub fn cumulative(&self, n: usize) -> Div {
        self.base.cumulative(&self.sigma, n)
    }
}

/// Sample points are `offset + j generator` for `j = 1, -1, 2, -2, ...`.
/// Alternating signs keep `|j|`, and with it the height, small.
#[derive(Clone, Debug)]
pub struct SampleSchedule {
    pub generator: Point,
    pub offset: Point,
    pub margin: usize,
}

impl SampleSchedule {
    pub fn for_translation(sigma: &Translation<Rational>) -> Self {
        SampleSchedule { generator: sigma.point().clone(), offset: CurvePoint::Infinity, margin: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionId(usize);

#[derive(Debug)]
enum SectionDef {
    Function(FnElem<Rational>),
    Product { left: SectionId, right: SectionId, shift: i64 },
    Combination(Vec<(Rational, SectionId)>),
}

/// A homogeneous element: a section of `O(bound)` in a given degree.
#[derive(Clone, Debug)]
pub struct GradedElem {
    pub degree: usize,
    pub bound: Div,
    pub id: SectionId,
}

/// A subspace of the degree-`degree` piece, contained in `L(bound)`, with
/// linearly independent basis handles.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    degree: usize,
    bound: Div,
    basis: Vec<SectionId>,
}

impl GradedSpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bound(&self) -> &Div {
        &self.bound
    }

    pub fn basis(&self) -> &[SectionId] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(degree: usize, bound: Div) -> Self {
        GradedSpace { degree, bound, basis: Vec::new() }
    }

    pub fn elements(&self) -> Vec<GradedElem> {
        self.basis.iter().map(|&id| GradedElem { degree: self.degree, bound: self.bound.clone(), id }).collect()
    }
}

#[derive(Default)]
struct Memo {
    points: HashMap<(i64, i64), Point>,
    values: HashMap<(SectionId, i64, i64), Option<Rational>>,
    pieces: HashMap<(usize, Div), GradedSpace>,
}

/// Evaluation-model engine for one `(E, L, sigma)`. Shared reads are safe;
/// the memo tables sit behind one lock that is never held across a
/// recursive evaluation.
pub struct TwistedRing {
    ff: FunctionField<Rational>,
    sheaf: SheafData,
    schedule: SampleSchedule,
    generator_is_t: bool,
    sections: Mutex<Vec<Arc<SectionDef>>>,
    memo: Mutex<Memo>,
}

fn eval_fn(f: &FnElem<Rational>, x: &Rational, y: &Rational) -> Option<Rational> {
    Some(f.u.eval(x)? + f.v.eval(x)? * y.clone())
}

fn schedule_index(i: usize) -> i64 {
    let k = (i / 2 + 1) as i64;
    if i % 2 == 0 {
        k
    } else {
        -k
    }
}

impl TwistedRing {
    pub fn new(sheaf: SheafData, schedule: SampleSchedule) -> Result<Self> {
        let curve = sheaf.sigma().curve().clone();
        curve.check(&schedule.generator)?;
        curve.check(&schedule.offset)?;
        if !curve.is_infinite_order(&schedule.generator) {
            return Err(Error::FiniteOrder(schedule.generator.to_string()));
        }
        let generator_is_t = &schedule.generator == sheaf.sigma().point();
        Ok(TwistedRing {
            ff: FunctionField::new(curve),
            sheaf,
            schedule,
            generator_is_t,
            sections: Mutex::new(Vec::new()),
            memo: Mutex::new(Memo::default()),
        })
    }

    pub fn standard(sigma: Translation<Rational>) -> Self {
        let schedule = SampleSchedule::for_translation(&sigma);
        Self::new(SheafData::standard(sigma), schedule).expect("translation point is valid")
    }

    pub fn sheaf(&self) -> &SheafData {
        &self.sheaf
    }

    pub fn sigma(&self) -> &Translation<Rational> {
        self.sheaf.sigma()
    }

    pub fn function_field(&self) -> &FunctionField<Rational> {
        &self.ff
    }

    fn register(&self, def: SectionDef) -> SectionId {
        let mut s = self.sections.lock().unwrap();
        s.push(Arc::new(def));
        SectionId(s.len() - 1)
    }

    fn def(&self, id: SectionId) -> Arc<SectionDef> {
        self.sections.lock().unwrap()[id.0].clone()
    }

    fn key(&self, j: i64, k: i64) -> (i64, i64) {
        if self.generator_is_t {
            (j + k, 0)
        } else {
            (j, k)
        }
    }

    /// `offset + j generator + k t`.
    fn point(&self, j: i64, k: i64) -> Point {
        let key = self.key(j, k);
        if let Some(p) = self.memo.lock().unwrap().points.get(&key) {
            return p.clone();
        }
        let curve = self.sigma().curve();
        let p = if self.generator_is_t {
            curve.add_unchecked(&self.schedule.offset, &self.sigma().multiple_of_t(key.0))
        } else {
            let base = curve.add_unchecked(&self.schedule.offset, &curve.multiple_unchecked(key.0, &self.schedule.generator));
            self.sigma().apply(&base, key.1)
        };
        self.memo.lock().unwrap().points.insert(key, p.clone());
        p
    }

    /// Value of a section at `offset + j generator + k t`, or `None` where the
    /// representation cannot be evaluated directly.
    fn eval(&self, id: SectionId, j: i64, k: i64) -> Option<Rational> {
        let (j, k) = self.key(j, k);
        if let Some(v) = self.memo.lock().unwrap().values.get(&(id, j, k)) {
            return v.clone();
        }
        let v = match &*self.def(id) {
            SectionDef::Function(f) => match self.point(j, k) {
                CurvePoint::Infinity => None,
                CurvePoint::Affine { x, y } => eval_fn(f, &x, &y),
            },
            SectionDef::Product { left, right, shift } => {
                let a = self.eval(*left, j, k);
                a.and_then(|a| self.eval(*right, j, k + shift).map(|b| a * b))
            }
            SectionDef::Combination(terms) => {
                let mut acc = Rational::zero();
                let mut ok = true;
                for (c, s) in terms {
                    match self.eval(*s, j, k) {
                        Some(v) => acc += c * v,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                ok.then_some(acc)
            }
        };
        self.memo.lock().unwrap().values.insert((id, j, k), v.clone());
        v
    }

    /// Schedule indices usable for comparing `ids` inside `L(bound)`: off the
    /// support of `bound` (and its negatives) and with every section defined.
    fn samples(&self, bound: &Div, ids: &[SectionId]) -> Result<Vec<i64>> {
        let need = bound.degree().max(0) as usize + 1 + self.schedule.margin;
        let bad_x: Vec<&Rational> = bound.support().filter_map(|p| p.x()).collect();
        let mut out = Vec::with_capacity(need);
        let limit = 4 * need + 64;
        for i in 0..limit {
            if out.len() == need {
                break;
            }
            let j = schedule_index(i);
            let p = self.point(j, 0);
            let Some(x) = p.x() else { continue };
            if bad_x.contains(&x) {
                continue;
            }
            if ids.iter().all(|&id| self.eval(id, j, 0).is_some()) {
                out.push(j);
            }
        }
        if out.len() < need {
            return Err(Error::Sampling(format!("found {} of {need} sample points for bound {bound}", out.len())));
        }
        Ok(out)
    }

    fn row(&self, id: SectionId, samples: &[i64]) -> Vec<Rational> {
        samples.iter().map(|&j| self.eval(id, j, 0).expect("sample admissible")).collect()
    }

    /// Values of `ids` at `samples`, one row per section, with each sample
    /// column rescaled to coprime integers. Rescaling a column changes no
    /// rank, containment or kernel, and keeps elimination cheap.
    fn rows(&self, ids: &[SectionId], samples: &[i64]) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = ids.iter().map(|&id| self.row(id, samples)).collect();
        for c in 0..samples.len() {
            let den = rows.iter().fold(BigInt::one(), |acc, r| acc.lcm(r[c].denom()));
            let ints: Vec<BigInt> = rows.iter().map(|r| r[c].numer() * (&den / r[c].denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if g.is_zero() {
                continue;
            }
            for (r, v) in rows.iter_mut().zip(ints) {
                r[c] = Rational::from_integer(v / &g);
            }
        }
        rows
    }

    /// `L(bound)` in the given degree.
    pub fn space_for_bound(&self, degree: usize, bound: Div) -> Result<GradedSpace> {
        let key = (degree, bound);
        if let Some(s) = self.memo.lock().unwrap().pieces.get(&key) {
            return Ok(s.clone());
        }
        let rr = rr_basis(&self.ff, &key.1)?;
        let basis = rr.basis().iter().map(|f| self.register(SectionDef::Function(f.clone()))).collect();
        let space = GradedSpace { degree, bound: key.1.clone(), basis };
        self.memo.lock().unwrap().pieces.insert(key, space.clone());
        Ok(space)
    }

    /// `L([D_L]_n - subtract)`.
    pub fn graded_piece(&self, n: usize, subtract: &Div) -> Result<GradedSpace> {
        self.space_for_bound(n, self.sheaf.cumulative(n).sub(subtract))
    }

    pub fn ambient_piece(&self, n: usize) -> Result<GradedSpace> {
        self.graded_piece(n, &Divisor::zero())
    }

    pub fn function_elem(&self, degree: usize, bound: Div, f: FnElem<Rational>) -> GradedElem {
        GradedElem { degree, bound, id: self.register(SectionDef::Function(f)) }
    }

    /// Bound of a product of sections of `O(a)` in degree `m` and `O(b)`.
    pub fn product_bound(&self, a: &Div, m: usize, b: &Div) -> Div {
        a.add(&b.twist(self.sigma(), m as i64))
    }

    pub fn twisted_multiply(&self, f: &GradedElem, g: &GradedElem) -> GradedElem {
        let id = self.register(SectionDef::Product { left: f.id, right: g.id, shift: f.degree as i64 });
        GradedElem { degree: f.degree + g.degree, bound: self.product_bound(&f.bound, f.degree, &g.bound), id }
    }

    pub fn combine(&self, degree: usize, bound: Div, terms: Vec<(Rational, SectionId)>) -> GradedElem {
        GradedElem { degree, bound, id: self.register(SectionDef::Combination(terms)) }
    }

    /// `dim L(bound)`, an upper bound for any subspace of it.
    pub fn rr_cap(&self, bound: &Div) -> Result<usize> {
        let d = bound.degree();
        if d >= 1 {
            Ok(d as usize)
        } else {
            Ok(rr_basis(&self.ff, bound)?.dim())
        }
    }

    /// An independent subset of `candidates` spanning the same space, taken
    /// greedily in order and stopping once `cap` is reached.
    fn independent(&self, bound: &Div, candidates: &[SectionId], cap: usize) -> Result<Vec<SectionId>> {
        if candidates.is_empty() || cap == 0 {
            return Ok(Vec::new());
        }
        let samples = self.samples(bound, candidates)?;
        let rows = self.rows(candidates, &samples);
        let mut ech = EchelonBasis::new(samples.len());
        let mut chosen = Vec::new();
        for (&id, row) in candidates.iter().zip(&rows) {
            if ech.insert(row) {
                chosen.push(id);
                if chosen.len() == cap {
                    break;
                }
            }
        }
        Ok(chosen)
    }

    /// Span of the given elements, which must share a degree.
    pub fn span(&self, degree: usize, elems: &[GradedElem]) -> Result<GradedSpace> {
        let mut bound = Divisor::zero();
        for (i, e) in elems.iter().enumerate() {
            if e.degree != degree {
                return Err(Error::Incompatible(format!("element of degree {} in a degree-{degree} span", e.degree)));
            }
            bound = if i == 0 { e.bound.clone() } else { bound.sup(&e.bound) };
        }
        let ids: Vec<SectionId> = elems.iter().map(|e| e.id).collect();
        let cap = if elems.is_empty() { 0 } else { self.rr_cap(&bound)? };
        let basis = self.independent(&bound, &ids, cap)?;
        Ok(GradedSpace { degree, bound, basis })
    }

    /// Span of all twisted products `u * v`.
    pub fn space_product(&self, u: &GradedSpace, v: &GradedSpace) -> Result<GradedSpace> {
        let m = u.degree;
        let bound = self.product_bound(&u.bound, m, &v.bound);
        let degree = u.degree + v.degree;
        if u.dim() == 0 || v.dim() == 0 {
            return Ok(GradedSpace::zero(degree, bound));
        }
        let mut ids = Vec::with_capacity(u.dim() * v.dim());
        for &a in &u.basis {
            for &b in &v.basis {
                ids.push(self.register(SectionDef::Product { left: a, right: b, shift: m as i64 }));
            }
        }
        let cap = self.rr_cap(&bound)?;
        let basis = self.independent(&bound, &ids, cap)?;
        Ok(GradedSpace { degree, bound, basis })
    }

    /// Product of several spaces, left to right.
    pub fn space_product_many(&self, spaces: &[&GradedSpace]) -> Result<GradedSpace> {
        let (first, rest) = spaces.split_first().ok_or_else(|| Error::Input("empty product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, s| self.space_product(&acc, s))
    }

    fn same_degree(u: &GradedSpace, v: &GradedSpace) -> Result<()> {
        if u.degree != v.degree {
            return Err(Error::Incompatible(format!("degrees {} and {}", u.degree, v.degree)));
        }
        Ok(())
    }

    pub fn sum(&self, u: &GradedSpace, v: &GradedSpace) -> Result<GradedSpace> {
        Self::same_degree(u, v)?;
        let bound = u.bound.sup(&v.bound);
        let ids: Vec<SectionId> = u.basis.iter().chain(&v.basis).copied().collect();
        let cap = if ids.is_empty() { 0 } else { self.rr_cap(&bound)? };
        let basis = self.independent(&bound, &ids, cap)?;
        Ok(GradedSpace { degree: u.degree, bound, basis })
    }

    pub fn intersect(&self, u: &GradedSpace, v: &GradedSpace) -> Result<GradedSpace> {
        Self::same_degree(u, v)?;
        let bound = u.bound.inf(&v.bound);
        if u.dim() == 0 || v.dim() == 0 {
            return Ok(GradedSpace::zero(u.degree, bound));
        }
        let join = u.bound.sup(&v.bound);
        let ids: Vec<SectionId> = u.basis.iter().chain(&v.basis).copied().collect();
        let samples = self.samples(&join, &ids)?;
        let cols = self.rows(&ids, &samples);
        let (du, dv) = (u.dim(), v.dim());
        // sum a_i u_i - sum b_j v_j = 0 at every sample
        let mat: Vec<Vec<Rational>> = (0..samples.len())
            .map(|s| (0..du + dv).map(|c| if c < du { cols[c][s].clone() } else { -cols[c][s].clone() }).collect())
            .collect();
        let ker = linalg::kernel(&mat, du + dv);
        let basis = ker
            .into_iter()
            .map(|c| {
                let terms = c[..du].iter().cloned().zip(u.basis.iter().copied()).filter(|(a, _)| !a.is_zero()).collect();
                self.register(SectionDef::Combination(terms))
            })
            .collect();
        Ok(GradedSpace { degree: u.degree, bound, basis })
    }

    /// Whether `v` is a subspace of `u`.
    pub fn contains(&self, u: &GradedSpace, v: &GradedSpace) -> Result<bool> {
        Self::same_degree(u, v)?;
        if v.dim() == 0 {
            return Ok(true);
        }
        if v.dim() > u.dim() {
            return Ok(false);
        }
        let join = u.bound.sup(&v.bound);
        let ids: Vec<SectionId> = u.basis.iter().chain(&v.basis).copied().collect();
        let samples = self.samples(&join, &ids)?;
        let rows = self.rows(&ids, &samples);
        let mut ech = EchelonBasis::new(samples.len());
        for r in &rows[..u.dim()] {
            ech.insert(r);
        }
        Ok(rows[u.dim()..].iter().all(|r| ech.contains(r)))
    }

    pub fn equal(&self, u: &GradedSpace, v: &GradedSpace) -> Result<bool> {
        Self::same_degree(u, v)?;
        Ok(u.dim() == v.dim() && self.contains(u, v)?)
    }

    pub fn elem_in(&self, e: &GradedElem, space: &GradedSpace) -> Result<bool> {
        let single = GradedSpace { degree: e.degree, bound: e.bound.clone(), basis: vec![e.id] };
        self.contains(space, &single)
    }

    /// `{ s in B_1 : W s is contained in Y }`.
    pub fn left_transporter(&self, w: &GradedSpace, y: &GradedSpace) -> Result<GradedSpace> {
        if y.degree != w.degree + 1 {
            return Err(Error::Incompatible(format!("transporter from degree {} into degree {}", w.degree, y.degree)));
        }
        let b1 = self.ambient_piece(1)?;
        if w.dim() == 0 {
            return Ok(b1);
        }
        let a = w.degree as i64;
        let mut prods = Vec::new();
        for &wi in &w.basis {
            for &bk in &b1.basis {
                prods.push(self.register(SectionDef::Product { left: wi, right: bk, shift: a }));
            }
        }
        let join = y.bound.sup(&self.product_bound(&w.bound, w.degree, &b1.bound));
        let ids: Vec<SectionId> = y.basis.iter().chain(&prods).copied().collect();
        let samples = self.samples(&join, &ids)?;
        let rows = self.rows(&ids, &samples);
        let mut ech = EchelonBasis::new(samples.len());
        for r in &rows[..y.dim()] {
            ech.insert(r);
        }
        let prod_rows = &rows[y.dim()..];
        let nb = b1.dim();
        // Reduction modulo Y is linear, so sum_k c_k (w_i b_k) lies in Y iff
        // sum_k c_k residual(w_i b_k) = 0.
        let mut mat = Vec::new();
        for i in 0..w.dim() {
            let res: Vec<Vec<Rational>> = (0..nb).map(|k| ech.reduce(&prod_rows[i * nb + k])).collect();
            for s in 0..samples.len() {
                mat.push((0..nb).map(|k| res[k][s].clone()).collect());
            }
        }
        let ker = linalg::kernel(&mat, nb);
        let basis = ker
            .into_iter()
            .map(|c| {
                let terms = c.into_iter().zip(b1.basis.iter().copied()).filter(|(a, _)| !a.is_zero()).collect();
                self.register(SectionDef::Combination(terms))
            })
            .collect();
        Ok(GradedSpace { degree: 1, bound: b1.bound, basis })
    }

    /// The section as an explicit function, solved in the Riemann-Roch basis
    /// of `bound`.
    pub fn materialize(&self, id: SectionId, bound: &Div) -> Result<FnElem<Rational>> {
        let rr = rr_basis(&self.ff, bound)?;
        if rr.dim() == 0 {
            return Err(Error::Inconsistent(format!("nonzero section requested in L({bound}) = 0")));
        }
        let ids: Vec<SectionId> = rr.basis().iter().map(|f| self.register(SectionDef::Function(f.clone()))).collect();
        let mut all = ids.clone();
        all.push(id);
        let samples = self.samples(bound, &all)?;
        let mut cols = self.rows(&all, &samples);
        let target = cols.pop().expect("target row");
        let mat = linalg::transpose(&cols, samples.len());
        let coeffs = linalg::solve(&mat, &target, ids.len())
            .ok_or_else(|| Error::Inconsistent(format!("section does not lie in L({bound})")))?;
        let mut f = FnElem::zero();
        for (c, b) in coeffs.iter().zip(rr.basis()) {
            if !c.is_zero() {
                f = f.add(&b.scale(c));
            }
        }
        Ok(f)
    }

    pub fn to_section_space(&self, space: &GradedSpace) -> Result<SectionSpace<Rational>> {
        let basis = space.basis.iter().map(|&id| self.materialize(id, &space.bound)).collect::<Result<_>>()?;
        Ok(SectionSpace::new(space.bound.clone(), basis))
    }

    /// Value of a section at an explicit point, computed from its definition.
    /// Intended for independent checks against materialized functions.
    pub fn value_at(&self, id: SectionId, p: &Point) -> Option<Rational> {
        match &*self.def(id) {
            SectionDef::Function(f) => match p {
                CurvePoint::Infinity => None,
                CurvePoint::Affine { x, y } => eval_fn(f, x, y),
            },
            SectionDef::Product { left, right, shift } => {
                let a = self.value_at(*left, p)?;
                let b = self.value_at(*right, &self.sigma().apply(p, *shift))?;
                Some(a * b)
            }
            SectionDef::Combination(terms) => {
                terms.iter().try_fold(Rational::zero(), |acc, (c, s)| Some(acc + c * self.value_at(*s, p)?))
            }
        }
    }

    /// `1` in degree 0.
    pub fn unit(&self) -> GradedSpace {
        let id = self.register(SectionDef::Function(FnElem::constant(Rational::one())));
        GradedSpace { degree: 0, bound: Divisor::zero(), basis: vec![id] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::Field;

    fn ring() -> TwistedRing {
        let c = Curve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let t = CurvePoint::affine(Rational::from_i64(0), Rational::from_i64(0));
        TwistedRing::standard(Translation::new(c, t).unwrap())
    }

    #[test]
    fn ambient_dims() {
        let r = ring();
        for n in 1..=5 {
            assert_eq!(r.ambient_piece(n).unwrap().dim(), 3 * n);
        }
        assert_eq!(r.ambient_piece(0).unwrap().dim(), 1);
    }

    #[test]
    fn degree_one_generates() {
        let r = ring();
        let b1 = r.ambient_piece(1).unwrap();
        let b2 = r.ambient_piece(2).unwrap();
        let b11 = r.space_product(&b1, &b1).unwrap();
        assert_eq!(b11.dim(), 6);
        assert!(r.equal(&b11, &b2).unwrap());
        let b3 = r.space_product(&b11, &b1).unwrap();
        assert!(r.equal(&b3, &r.ambient_piece(3).unwrap()).unwrap());
    }

    #[test]
    fn unit_is_neutral() {
        let r = ring();
        let one = r.unit();
        let b1 = r.ambient_piece(1).unwrap();
        assert!(r.equal(&r.space_product(&one, &b1).unwrap(), &b1).unwrap());
        assert!(r.equal(&r.space_product(&b1, &one).unwrap(), &b1).unwrap());
        let p = r.space_product(&one, &one).unwrap();
        assert_eq!(r.materialize(p.basis()[0], p.bound()).unwrap(), FnElem::one());
    }

    #[test]
    fn intersection_and_sum() {
        let r = ring();
        let s = r.sigma().clone();
        let p = s.apply(s.point(), 1);
        let sp = r.graded_piece(1, &Divisor::point(p.clone())).unwrap();
        let sp2 = r.graded_piece(1, &Divisor::point(s.twist_point(&p, 2))).unwrap();
        let both = r.intersect(&sp, &sp2).unwrap();
        assert_eq!(both.dim(), 1);
        assert!(r.contains(&sp, &both).unwrap());
        assert!(r.contains(&sp2, &both).unwrap());
        assert_eq!(r.sum(&sp, &sp2).unwrap().dim(), 3);
        assert!(r.equal(&r.intersect(&sp, &sp).unwrap(), &sp).unwrap());
        assert!(r.equal(&r.sum(&sp, &GradedSpace::zero(1, Divisor::zero())).unwrap(), &sp).unwrap());
        assert!(r.intersect(&sp, &r.ambient_piece(2).unwrap()).is_err());
    }

    #[test]
    fn transporter_trivial_cases() {
        let r = ring();
        let b1 = r.ambient_piece(1).unwrap();
        let b2 = r.ambient_piece(2).unwrap();
        assert_eq!(r.left_transporter(&b1, &b2).unwrap().dim(), 3);
        assert_eq!(r.left_transporter(&GradedSpace::zero(1, Divisor::zero()), &b2).unwrap().dim(), 3);
    }

    #[test]
    fn materialized_product_matches_pointwise_values() {
        let r = ring();
        let b1 = r.ambient_piece(1).unwrap().elements();
        let prod = r.twisted_multiply(&b1[1], &b1[2]);
        let f = r.materialize(prod.id, &prod.bound).unwrap();
        let curve = r.sigma().curve().clone();
        let q = curve.multiple_unchecked(7, &CurvePoint::affine(Rational::from_i64(1), Rational::from_i64(0)));
        let direct = r.value_at(prod.id, &q).unwrap();
        let via = r.function_field().evaluate(&f, &q).unwrap().finite().unwrap();
        assert_eq!(direct, via);
    }
}
