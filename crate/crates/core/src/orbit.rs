//! Sigma-orbit calculus on divisors: orbit decomposition, virtual
//! effectiveness with certificates, the `u - v + v^sigma` decomposition and
//! normalized divisors.
//!
//! Along one orbit write `p_i = p^{sigma^i}` and let `a_0, ..., a_k` be the
//! coefficients of a divisor `x` there. The coefficient of `[x]_n` at `p_j`
//! is `a_{j-n+1} + ... + a_j`, so once `n >= k + 2` the coefficients of
//! `[x]_n` along the orbit are exactly the prefix sums, the total, and the
//! suffix sums of `a`. Virtual effectiveness is therefore decided by the
//! signs of those partial sums.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::curve::{CurvePoint, Translation};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::reduction::certify_not_multiple;
use crate::Rational;

pub const DEFAULT_ORBIT_CAP: i64 = 16;

/// Coefficients of a divisor along one orbit: `coeffs[i]` sits at
/// `representative^{sigma^i}`. The lowest index present is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProfile {
    pub representative: CurvePoint<Rational>,
    pub coeffs: BTreeMap<i64, i64>,
}

impl OrbitProfile {
    /// Highest occupied index.
    pub fn span(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn dense(&self) -> Vec<i64> {
        (0..=self.span()).map(|i| self.coeffs.get(&i).copied().unwrap_or(0)).collect()
    }

    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

/// Where a virtually non-effective divisor stays negative: for every
/// `n >= from_n`, `[x]_n` has `coefficient` at `representative^{sigma^m}` with
/// `m = index` or `m = index + n` when `shifts_with_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeWitness {
    #[serde(skip)]
    pub representative: CurvePoint<Rational>,
    pub from_n: usize,
    pub index: i64,
    pub shifts_with_n: bool,
    pub coefficient: i64,
}

impl NegativeWitness {
    pub fn point_at(&self, sigma: &Translation<Rational>, n: usize) -> CurvePoint<Rational> {
        let m = if self.shifts_with_n { self.index + n as i64 } else { self.index };
        sigma.twist_point(&self.representative, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeffCertificate {
    pub verdict: bool,
    /// Least `n0` with `[x]_n` effective for every `n >= n0` (when true).
    pub threshold: Option<usize>,
    /// Least `n >= 1` with `[x]_n` effective, if any.
    pub least_effective_n: Option<usize>,
    pub witness: Option<NegativeWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub u: Divisor<Rational>,
    pub v: Divisor<Rational>,
    /// Least `k` with `v <= [u]_k`.
    pub k: usize,
}

pub struct OrbitCalculus<'a> {
    sigma: &'a Translation<Rational>,
    cap: i64,
}

impl<'a> OrbitCalculus<'a> {
    pub fn new(sigma: &'a Translation<Rational>, cap: i64) -> Self {
        OrbitCalculus { sigma, cap }
    }

    pub fn sigma(&self) -> &Translation<Rational> {
        self.sigma
    }

    /// Split the support of `x` into sigma-orbits. Two points are on the same
    /// orbit when their difference is `j t` with `|j| <= cap`, and on different
    /// orbits when reduction modulo some prime certifies it; anything else is
    /// an error.
    pub fn orbit_profiles(&self, x: &Divisor<Rational>) -> Result<Vec<OrbitProfile>> {
        x.validate(self.sigma.curve())?;
        let curve = self.sigma.curve();
        let mut orbits: Vec<(CurvePoint<Rational>, Vec<(CurvePoint<Rational>, i64)>)> = Vec::new();
        for (p, _) in x.terms() {
            let mut placed = false;
            'search: for (_, members) in orbits.iter_mut() {
                for (m, i) in members.iter() {
                    if let Some(j) = self.sigma.orbit_index(m, p, self.cap) {
                        let idx = i + j;
                        members.push((p.clone(), idx));
                        placed = true;
                        break 'search;
                    }
                }
            }
            if placed {
                continue;
            }
            for (rep, _) in &orbits {
                let diff = curve.sub_unchecked(rep, p);
                if certify_not_multiple(curve, self.sigma.point(), &diff).is_none() {
                    return Err(Error::IndeterminateOrbit(rep.to_string(), p.to_string(), self.cap));
                }
            }
            orbits.push((p.clone(), vec![(p.clone(), 0)]));
        }
        Ok(orbits
            .into_iter()
            .map(|(_, members)| {
                let lo = members.iter().map(|(_, i)| *i).min().unwrap();
                let rep = members.iter().find(|(_, i)| *i == lo).unwrap().0.clone();
                let coeffs = members.iter().map(|(p, i)| (i - lo, x.coeff(p))).collect();
                OrbitProfile { representative: rep, coeffs }
            })
            .collect())
    }

    fn effective_at(profiles: &[OrbitProfile], n: usize) -> bool {
        profiles.iter().all(|o| {
            let a = o.dense();
            let k = a.len();
            (0..k + n.saturating_sub(1)).all(|j| {
                let lo = (j + 1).saturating_sub(n);
                let hi = j.min(k - 1);
                lo > hi || a[lo..=hi].iter().sum::<i64>() >= 0
            })
        })
    }

    pub fn is_virtually_effective(&self, x: &Divisor<Rational>) -> Result<VeffCertificate> {
        let profiles = self.orbit_profiles(x)?;
        let stable = profiles.iter().map(|o| o.span() as usize + 2).max().unwrap_or(1);
        let least_effective_n = (1..=stable).find(|&n| Self::effective_at(&profiles, n));
        let mut witness = None;
        for o in &profiles {
            let a = o.dense();
            let k = a.len() as i64 - 1;
            let mut prefix = 0;
            for (j, c) in a.iter().enumerate() {
                prefix += c;
                if prefix < 0 {
                    witness = Some(NegativeWitness {
                        representative: o.representative.clone(),
                        from_n: j + 1,
                        index: j as i64,
                        shifts_with_n: false,
                        coefficient: prefix,
                    });
                    break;
                }
            }
            if witness.is_some() {
                break;
            }
            let mut suffix = 0;
            for j in (0..a.len()).rev() {
                suffix += a[j];
                if suffix < 0 {
                    witness = Some(NegativeWitness {
                        representative: o.representative.clone(),
                        from_n: (k - j as i64 + 1) as usize,
                        index: j as i64 - 1,
                        shifts_with_n: true,
                        coefficient: suffix,
                    });
                    break;
                }
            }
            if witness.is_some() {
                break;
            }
        }
        if witness.is_some() {
            return Ok(VeffCertificate { verdict: false, threshold: None, least_effective_n, witness });
        }
        let threshold = (0..=stable).rev().take_while(|&n| Self::effective_at(&profiles, n)).last().unwrap_or(stable);
        Ok(VeffCertificate { verdict: true, threshold: Some(threshold), least_effective_n, witness: None })
    }

    /// Effective `u`, `v` with `x = u - v + v^sigma`, chosen greedily along each
    /// orbit with `u` minimal at every index.
    pub fn decompose(&self, x: &Divisor<Rational>) -> Result<Decomposition> {
        if !self.is_virtually_effective(x)?.verdict {
            return Err(Error::NotVirtuallyEffective);
        }
        let mut u = Divisor::zero();
        let mut v = Divisor::zero();
        for o in self.orbit_profiles(x)? {
            let mut carry = 0i64;
            for (j, a) in o.dense().into_iter().enumerate() {
                let uj = (a - carry).max(0);
                carry = (carry - a).max(0);
                let p = self.sigma.twist_point(&o.representative, j as i64);
                u.add_term(p.clone(), uj);
                v.add_term(p, carry);
            }
            debug_assert_eq!(carry, 0);
        }
        let mut k = 0;
        while !v.le(&u.cumulative(self.sigma, k)) {
            k += 1;
        }
        Ok(Decomposition { u, v, k })
    }

    /// One point per orbit (its lowest occupied index) carrying the orbit's
    /// coefficient sum.
    pub fn normalized_divisor(&self, x: &Divisor<Rational>) -> Result<Divisor<Rational>> {
        let mut d = Divisor::zero();
        for o in self.orbit_profiles(x)? {
            let e = o.total();
            if e < 0 {
                return Err(Error::NegativeOrbitSum(o.representative.to_string(), e));
            }
            d.add_term(o.representative, e);
        }
        Ok(d)
    }
}
