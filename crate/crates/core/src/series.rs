//! Truncated power series `c0 + c1 t + ... + O(t^prec)`.

use crate::poly::Poly;
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    /// Series with exactly `prec` known coefficients (padded or cut).
    pub fn new(mut coeffs: Vec<F>, prec: usize) -> Self {
        coeffs.resize(prec, F::zero());
        Series { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        Series { coeffs: vec![F::zero(); prec] }
    }

    pub fn constant(c: F, prec: usize) -> Self {
        Self::new(vec![c], prec)
    }

    pub fn from_poly(p: &Poly<F>, prec: usize) -> Self {
        Self::new(p.coeffs().iter().take(prec).cloned().collect(), prec)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        Series { coeffs: (0..prec).map(|k| self.coeffs[k].clone() + other.coeffs[k].clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        Series { coeffs: (0..prec).map(|k| self.coeffs[k].clone() - other.coeffs[k].clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let mut out = vec![F::zero(); prec];
        for (i, a) in self.coeffs.iter().take(prec).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(prec - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    /// Inverse of a unit (nonzero constant term).
    pub fn inverse(&self) -> Option<Self> {
        let prec = self.precision();
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let c0_inv = c0.inv();
        let mut out: Vec<F> = Vec::with_capacity(prec);
        out.push(c0_inv.clone());
        for k in 1..prec {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * c0_inv.clone()));
        }
        Some(Series { coeffs: out })
    }

    /// Divide by `t^k`, losing `k` coefficients of precision. The first `k`
    /// coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Series { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }
}
