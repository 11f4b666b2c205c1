//! Reduction modulo primes of good reduction, used to certify that two
//! rational points lie on different sigma-orbits.
//!
//! Reduction is a group homomorphism at a good prime, so if `d = j t` over
//! the rationals then `d mod l` lies in the cyclic subgroup generated by
//! `t mod l`. Finding a prime where it does not proves `d` is not an integer
//! multiple of `t`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::curve::{Curve, CurvePoint};
use crate::scalar::Zp;
use crate::Rational;

fn reduce_int<const P: u64>(n: &BigInt) -> Zp<P> {
    let r = n.mod_floor(&BigInt::from(P));
    Zp::new(r.to_i64().unwrap())
}

/// `q mod P`, or `None` when `P` divides the denominator.
fn reduce_rational<const P: u64>(q: &Rational) -> Option<Zp<P>> {
    let d = reduce_int::<P>(q.denom());
    if d.value() == 0 {
        return None;
    }
    Some(reduce_int::<P>(q.numer()) / d)
}

fn reduce_curve<const P: u64>(c: &Curve<Rational>) -> Option<Curve<Zp<P>>> {
    let r = |a: &Rational| reduce_rational::<P>(a);
    Curve::new(r(&c.a1)?, r(&c.a2)?, r(&c.a3)?, r(&c.a4)?, r(&c.a6)?).ok()
}

fn reduce_point<const P: u64>(p: &CurvePoint<Rational>) -> Option<CurvePoint<Zp<P>>> {
    match p {
        CurvePoint::Infinity => Some(CurvePoint::Infinity),
        CurvePoint::Affine { x, y } => match (reduce_rational::<P>(x), reduce_rational::<P>(y)) {
            (Some(x), Some(y)) => Some(CurvePoint::affine(x, y)),
            (None, None) => Some(CurvePoint::Infinity),
            _ => None,
        },
    }
}

/// `Some(true)` when `d mod P` is outside the subgroup generated by `t mod P`,
/// `Some(false)` when inside, `None` when `P` is unusable.
fn outside_mod<const P: u64>(c: &Curve<Rational>, t: &CurvePoint<Rational>, d: &CurvePoint<Rational>) -> Option<bool> {
    let cp = reduce_curve::<P>(c)?;
    let tp = reduce_point::<P>(t)?;
    let dp = reduce_point::<P>(d)?;
    if !cp.contains(&tp) || !cp.contains(&dp) {
        return None;
    }
    let mut acc = CurvePoint::Infinity;
    loop {
        if acc == dp {
            return Some(false);
        }
        acc = cp.add_unchecked(&acc, &tp);
        if acc.is_infinity() {
            return Some(true);
        }
    }
}

macro_rules! try_primes {
    ($c:expr, $t:expr, $d:expr; $($p:literal),*) => {
        $( if outside_mod::<$p>($c, $t, $d) == Some(true) { return Some($p); } )*
    };
}

/// A prime certifying `d` is not an integer multiple of `t`, if one is found
/// among the primes tried.
pub fn certify_not_multiple(c: &Curve<Rational>, t: &CurvePoint<Rational>, d: &CurvePoint<Rational>) -> Option<u64> {
    if d.is_infinity() {
        return None;
    }
    try_primes!(c, t, d; 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
        197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293);
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Field;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn independent_points_are_separated() {
        // rank-two curve y^2 + y = x^3 + x^2 - 2x
        let c = Curve::from_i64([0, 1, 1, -2, 0]).unwrap();
        let t = CurvePoint::affine(q(0), q(0));
        let p = CurvePoint::affine(q(1), q(0));
        assert!(c.contains(&p));
        assert!(certify_not_multiple(&c, &t, &p).is_some());
    }

    #[test]
    fn multiples_are_never_separated() {
        let c = Curve::from_i64([0, 0, 1, -1, 0]).unwrap();
        let t = CurvePoint::affine(q(0), q(0));
        for j in [1, 2, -3, 7, 20] {
            let d = c.multiple_unchecked(j, &t);
            assert_eq!(certify_not_multiple(&c, &t, &d), None);
        }
    }
}
