//! The three-generator Sklyanin algebra
//! `k<x, y, z> / (a zy + b yz + c x^2, a xz + b zx + c y^2, a yx + b xy + c z^2)`,
//! computed degree by degree.
//!
//! `S_k` is built as `(S_{k-1} (x) V) / image(S_{k-2} (x) R)`, so each degree
//! only needs a small elimination. Basis elements of `S_k` are normal words:
//! words of length `k` not chosen as pivots. The literal description, the
//! span of all `u r v` inside the `3^n` words, is available as
//! [`ideal_slice_rank`] for cross-checking.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis};
use crate::scalar::Field;

/// Letters are `x = 0`, `y = 1`, `z = 2`; a word is a list of letters.
pub type Word = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SklyaninParams<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Field> SklyaninParams<F> {
    pub fn new(a: F, b: F, c: F) -> Self {
        SklyaninParams { a, b, c }
    }

    /// The relations as lists of `(coefficient, first letter, second letter)`.
    pub fn relations(&self) -> [[(F, u8, u8); 3]; 3] {
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        [
            [(a.clone(), 2, 1), (b.clone(), 1, 2), (c.clone(), 0, 0)],
            [(a.clone(), 0, 2), (b.clone(), 2, 0), (c.clone(), 1, 1)],
            [(a, 1, 0), (b, 0, 1), (c, 2, 2)],
        ]
    }
}

struct Level<F: Field> {
    words: Vec<Word>,
    /// Image in `S_k` of (normal word `i` of `S_{k-1}`) times letter `l`, at
    /// index `3 i + l`.
    proj: Vec<Vec<F>>,
}

/// Graded pieces `S_0, ..., S_n` with their multiplication.
pub struct SklyaninAlgebra<F: Field> {
    params: SklyaninParams<F>,
    levels: Vec<Level<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Screening {
    pub dim_s2: usize,
    pub dim_s3: usize,
    pub central_dim: usize,
    pub degenerate: bool,
    pub reasons: Vec<String>,
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

impl<F: Field> SklyaninAlgebra<F> {
    pub fn new(params: SklyaninParams<F>, max_degree: usize) -> Self {
        let mut alg = SklyaninAlgebra {
            params,
            levels: vec![Level { words: vec![Vec::new()], proj: Vec::new() }],
        };
        alg.levels.push(Level { words: (0..3).map(|l| vec![l]).collect(), proj: (0..3).map(|l| unit(3, l)).collect() });
        while alg.max_degree() < max_degree {
            alg.extend();
        }
        alg
    }

    pub fn params(&self) -> &SklyaninParams<F> {
        &self.params
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    fn extend(&mut self) {
        let k = self.levels.len();
        let prev = &self.levels[k - 1];
        let prev2 = &self.levels[k - 2];
        let width = 3 * prev.words.len();
        let mut rows = Vec::new();
        for i in 0..prev2.words.len() {
            for rel in self.params.relations() {
                let mut row = vec![F::zero(); width];
                for (coef, first, second) in rel {
                    if coef.is_zero() {
                        continue;
                    }
                    for (j, v) in prev.proj[3 * i + first as usize].iter().enumerate() {
                        if !v.is_zero() {
                            let slot = &mut row[3 * j + second as usize];
                            *slot = slot.clone() + coef.clone() * v.clone();
                        }
                    }
                }
                rows.push(row);
            }
        }
        let pivots = linalg::rref(&mut rows, width);
        let mut is_pivot = vec![false; width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..width).filter(|&c| !is_pivot[c]).collect();
        let mut position = vec![usize::MAX; width];
        for (n, &c) in free.iter().enumerate() {
            position[c] = n;
        }
        let words = free
            .iter()
            .map(|&c| {
                let mut w = prev.words[c / 3].clone();
                w.push((c % 3) as u8);
                w
            })
            .collect();
        let mut proj: Vec<Vec<F>> = (0..width).map(|c| if is_pivot[c] { Vec::new() } else { unit(free.len(), position[c]) }).collect();
        for (row, &p) in rows.iter().zip(&pivots) {
            proj[p] = free.iter().map(|&c| -row[c].clone()).collect();
        }
        self.levels.push(Level { words, proj });
    }

    fn level(&self, n: usize) -> Result<&Level<F>> {
        self.levels.get(n).ok_or_else(|| Error::OutOfRange(format!("degree {n} beyond computed degree {}", self.max_degree())))
    }

    pub fn graded_dim(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.words.len())
    }

    pub fn normal_words(&self, n: usize) -> Result<&[Word]> {
        Ok(&self.level(n)?.words)
    }

    /// `v * letter` for `v` in `S_n`.
    pub fn right_mul_letter(&self, n: usize, v: &[F], letter: u8) -> Result<Vec<F>> {
        let next = self.level(n + 1)?;
        let mut out = vec![F::zero(); next.words.len()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&next.proj[3 * i + letter as usize]) {
                if !p.is_zero() {
                    *o = o.clone() + c.clone() * p.clone();
                }
            }
        }
        Ok(out)
    }

    /// The image of an arbitrary word in `S_{len}`.
    pub fn word(&self, w: &[u8]) -> Result<Vec<F>> {
        let mut v = vec![F::one()];
        for (n, &l) in w.iter().enumerate() {
            v = self.right_mul_letter(n, &v, l)?;
        }
        Ok(v)
    }

    /// Product of `s` in `S_i` and `t` in `S_j`.
    pub fn mul(&self, i: usize, s: &[F], j: usize, t: &[F]) -> Result<Vec<F>> {
        let mut out = vec![F::zero(); self.graded_dim(i + j)?];
        for (c, w) in t.iter().zip(self.normal_words(j)?) {
            if c.is_zero() {
                continue;
            }
            let mut v = s.to_vec();
            for (k, &l) in w.iter().enumerate() {
                v = self.right_mul_letter(i + k, &v, l)?;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.clone() + c.clone() * x;
            }
        }
        Ok(out)
    }

    fn commutator_rows(&self, n: usize, g: &[F]) -> Result<Vec<Vec<F>>> {
        (0..3u8)
            .map(|l| {
                let letter = unit(3, l as usize);
                let gl = self.mul(n, g, 1, &letter)?;
                let lg = self.mul(1, &letter, n, g)?;
                Ok(gl.into_iter().zip(lg).map(|(a, b)| a - b).collect())
            })
            .collect()
    }

    pub fn is_central(&self, n: usize, g: &[F]) -> Result<bool> {
        Ok(self.commutator_rows(n, g)?.iter().flatten().all(|c| c.is_zero()))
    }

    /// Basis of the degree-3 elements commuting with `x`, `y` and `z`.
    pub fn central_cubics(&self) -> Result<Vec<Vec<F>>> {
        if self.graded_dim(2)? != 6 {
            return Err(Error::Degenerate(format!("dim S_2 = {} instead of 6", self.graded_dim(2)?)));
        }
        let d3 = self.graded_dim(3)?;
        // column b: the commutators of the b-th normal word, stacked
        let mut cols = Vec::with_capacity(d3);
        for b in 0..d3 {
            cols.push(self.commutator_rows(3, &unit(d3, b))?.concat());
        }
        let height = cols.first().map_or(0, Vec::len);
        Ok(linalg::kernel(&linalg::transpose(&cols, height), d3))
    }

    /// Rank of `g S_{n-3}` inside `S_n`.
    pub fn g_image_rank(&self, g: &[F], n: usize) -> Result<usize> {
        if n < 3 {
            return Ok(0);
        }
        let d = self.graded_dim(n - 3)?;
        let mut ech = EchelonBasis::new(self.graded_dim(n)?);
        for b in 0..d {
            ech.insert(&self.mul(3, g, n - 3, &unit(d, b))?);
        }
        Ok(ech.rank())
    }

    /// `dim (S / gS)_n`.
    pub fn quotient_dim(&self, g: &[F], n: usize) -> Result<usize> {
        if !self.is_central(3, g)? {
            return Err(Error::NotCentral("g does not commute with the generators".into()));
        }
        Ok(self.graded_dim(n)? - self.g_image_rank(g, n)?)
    }

    /// Degeneracy screen: `dim S_2 = 6`, `dim S_3 = 10` and a unique central
    /// cubic up to scalars.
    pub fn screen(&self) -> Result<Screening> {
        let dim_s2 = self.graded_dim(2)?;
        let dim_s3 = self.graded_dim(3)?;
        let central_dim = if dim_s2 == 6 { self.central_cubics()?.len() } else { 0 };
        let mut reasons = Vec::new();
        if dim_s2 != 6 {
            reasons.push(format!("dim S_2 = {dim_s2}, expected 6"));
        }
        if dim_s3 != 10 {
            reasons.push(format!("dim S_3 = {dim_s3}, expected 10"));
        }
        if dim_s2 == 6 && central_dim != 1 {
            reasons.push(format!("central cubics span dimension {central_dim}, expected 1"));
        }
        Ok(Screening { dim_s2, dim_s3, central_dim, degenerate: !reasons.is_empty(), reasons })
    }
}

/// Rank of the span of all `u r v` with `|u| + |v| = n - 2` inside the
/// `3^n`-dimensional space of words. Exponential; meant for small `n`.
pub fn ideal_slice_rank<F: Field>(params: &SklyaninParams<F>, n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let width = 3usize.pow(n as u32);
    let mut ech = EchelonBasis::new(width);
    for left in 0..=n - 2 {
        let right = n - 2 - left;
        let scale_right = 3usize.pow(right as u32);
        let scale_mid = 9 * scale_right;
        for u in 0..3usize.pow(left as u32) {
            for v in 0..scale_right {
                for rel in params.relations() {
                    let mut row = vec![F::zero(); width];
                    for (coef, first, second) in rel {
                        let idx = u * scale_mid + (3 * first as usize + second as usize) * scale_right + v;
                        row[idx] = row[idx].clone() + coef;
                    }
                    ech.insert(&row);
                }
            }
        }
    }
    ech.rank()
}
