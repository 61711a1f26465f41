//! Exact arithmetic in the ring E = Z[w] of Eisenstein integers, where w is a
//! primitive cube root of unity.
//!
//! Elements are stored on the basis {1, w} with arbitrary-precision
//! components. Every magnitude comparison goes through the integer norm form
//! a^2 - ab + b^2; no floating point is used anywhere.
//!
//! The element theta = w - wbar = 1 + 2w (a square root of -3) plays a
//! special role: E/theta E is the field with three elements, and the covering
//! radius of E in the complex plane is 1/sqrt(3), which is what makes
//! `nearest_quotient` useful for height reduction.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// An Eisenstein integer a + b*w on the basis {1, w}.
///
/// Ordering is lexicographic on (a, b); it has no arithmetic meaning and is
/// used only for deterministic normalization and tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisInt {
    pub a: BigInt,
    pub b: BigInt,
}

/// A residue modulo theta, i.e. an element of the three-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct F3Scalar(pub u8);

impl F3Scalar {
    pub fn new(v: i64) -> Self {
        F3Scalar(v.rem_euclid(3) as u8)
    }

    pub fn add(self, other: F3Scalar) -> F3Scalar {
        F3Scalar((self.0 + other.0) % 3)
    }

    pub fn sub(self, other: F3Scalar) -> F3Scalar {
        F3Scalar((3 + self.0 - other.0) % 3)
    }

    pub fn mul(self, other: F3Scalar) -> F3Scalar {
        F3Scalar((self.0 * other.0) % 3)
    }

    pub fn neg(self) -> F3Scalar {
        F3Scalar((3 - self.0) % 3)
    }

    /// Multiplicative inverse; 1 and 2 are their own inverses.
    pub fn inv(self) -> Option<F3Scalar> {
        match self.0 {
            0 => None,
            v => Some(F3Scalar(v)),
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl EisInt {
    pub fn new(a: i64, b: i64) -> Self {
        EisInt {
            a: BigInt::from(a),
            b: BigInt::from(b),
        }
    }

    pub fn from_bigints(a: BigInt, b: BigInt) -> Self {
        EisInt { a, b }
    }

    pub fn zero() -> Self {
        EisInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisInt::new(1, 0)
    }

    /// The cube root of unity w.
    pub fn omega() -> Self {
        EisInt::new(0, 1)
    }

    /// The conjugate cube root wbar = w^2 = -1 - w.
    pub fn omega_bar() -> Self {
        EisInt::new(-1, -1)
    }

    /// theta = w - wbar = 1 + 2w, with theta^2 = -3.
    pub fn theta() -> Self {
        EisInt::new(1, 2)
    }

    /// The six units of E: the powers of -w.
    pub fn units() -> [EisInt; 6] {
        [
            EisInt::new(1, 0),
            EisInt::new(-1, 0),
            EisInt::new(0, 1),
            EisInt::new(0, -1),
            EisInt::new(-1, -1),
            EisInt::new(1, 1),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// True when the element is a rational integer (b = 0).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation: a + bw |-> (a - b) - bw.
    pub fn conj(&self) -> EisInt {
        EisInt {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// The ring norm a^2 - ab + b^2 = x * conj(x); nonnegative and
    /// multiplicative.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Trace x + conj(x) = 2a - b, a rational integer.
    pub fn trace(&self) -> BigInt {
        2 * &self.a - &self.b
    }

    pub fn scale(&self, s: &BigInt) -> EisInt {
        EisInt {
            a: &self.a * s,
            b: &self.b * s,
        }
    }

    /// Exact division; errors unless `d` divides `self`.
    pub fn div_exact(&self, d: &EisInt) -> Result<EisInt, Error> {
        let (q, r) = self.euclid_div(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonIntegral)
        }
    }

    /// Euclidean division: returns (q, r) with self = q*d + r and
    /// norm(r) < norm(d). Rounding each coordinate of the exact quotient
    /// gives norm(r) <= (3/4) norm(d).
    pub fn euclid_div(&self, d: &EisInt) -> Result<(EisInt, EisInt), Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // self/d = self * conj(d) / norm(d), then round both coordinates.
        let nd = d.norm();
        let num = self * &d.conj();
        let q = EisInt {
            a: round_div(&num.a, &nd),
            b: round_div(&num.b, &nd),
        };
        let r = self - &(&q * d);
        debug_assert!(r.norm() < nd);
        Ok((q, r))
    }

    /// Greatest common divisor by Euclid's algorithm, returned as the
    /// canonical associate (zero if both inputs are zero).
    pub fn gcd(&self, other: &EisInt) -> EisInt {
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let (_, r) = x.euclid_div(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.canonical_associate()
    }

    /// The associate u*x (u a unit) lying in the sector 0 <= arg < pi/3,
    /// i.e. the unique associate with b >= 0 and b < a; zero maps to zero.
    pub fn canonical_associate(&self) -> EisInt {
        if self.is_zero() {
            return EisInt::zero();
        }
        for u in EisInt::units() {
            let c = self * &u;
            if !c.b.is_negative() && c.b < c.a {
                return c;
            }
        }
        unreachable!("the six sectors of width pi/3 cover the punctured plane")
    }

    /// The Eisenstein integer q minimizing norm(self - q*d), i.e. the lattice
    /// point nearest to the exact quotient self/d. The covering radius of E
    /// is 1/sqrt(3), so the result always satisfies
    /// 3 * norm(self - q*d) <= norm(d). Ties on the Voronoi boundary break to
    /// the lexicographically least (a, b).
    pub fn nearest_quotient(&self, d: &EisInt) -> Result<EisInt, Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q0, _) = self.euclid_div(d)?;
        let mut best: Option<(BigInt, EisInt)> = None;
        for da in -2i64..=2 {
            for db in -2i64..=2 {
                let q = &q0 + &EisInt::new(da, db);
                let n = (self - &(&q * d)).norm();
                match &best {
                    Some((bn, bq)) if (&n, &q) >= (bn, bq) => {}
                    _ => best = Some((n, q)),
                }
            }
        }
        let (n, q) = best.unwrap();
        debug_assert!(&n * 3 <= d.norm());
        let _ = n;
        Ok(q)
    }

    /// Reduction modulo theta, the ring homomorphism E -> F3 sending w to 1:
    /// a + bw |-> a + b (mod 3).
    pub fn mod_theta(&self) -> F3Scalar {
        let m = (&self.a + &self.b).mod_floor(&BigInt::from(3));
        F3Scalar(m.to_u8().unwrap())
    }

    /// Parse entries like "3", "-1+2w", "2-wb", "w", "-wb" where w is the
    /// cube root of unity and wb its conjugate.
    pub fn parse(s: &str) -> Result<EisInt, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse(s));
        }
        let mut out = EisInt::zero();
        let mut term = String::new();
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in s.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 {
                terms.push(term.clone());
                term.clear();
            }
            term.push(c);
        }
        terms.push(term);
        for t in terms {
            let (body, neg) = match t.strip_prefix('-') {
                Some(rest) => (rest, true),
                None => (t.strip_prefix('+').unwrap_or(&t), false),
            };
            let (coeff_str, kind) = if let Some(c) = body.strip_suffix("wb") {
                (c, 2u8)
            } else if let Some(c) = body.strip_suffix('w') {
                (c, 1u8)
            } else {
                (body, 0u8)
            };
            let coeff: BigInt = if coeff_str.is_empty() && kind != 0 {
                BigInt::one()
            } else {
                coeff_str.parse().map_err(|_| Error::Parse(s.clone()))?
            };
            let coeff = if neg { -coeff } else { coeff };
            match kind {
                0 => out.a += coeff,
                1 => out.b += coeff,
                // wb = -1 - w
                2 => {
                    out.a -= &coeff;
                    out.b -= &coeff;
                }
                _ => unreachable!(),
            }
        }
        Ok(out)
    }
}

/// Round n/d to the nearest integer (d > 0 assumed nonzero; ties toward
/// negative infinity, which only affects Voronoi-boundary cases that
/// `nearest_quotient` re-resolves anyway).
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let num: BigInt = 2 * n + d - 1;
    let den: BigInt = 2 * d;
    num.div_floor(&den)
}

impl fmt::Debug for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_one() {
                return write!(f, "w");
            }
            return write!(f, "{}w", self.b);
        }
        if self.b.is_negative() {
            if self.b == BigInt::from(-1) {
                write!(f, "{}-w", self.a)
            } else {
                write!(f, "{}{}w", self.a, self.b)
            }
        } else if self.b.is_one() {
            write!(f, "{}+w", self.a)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $a:ident, $b:ident, $body:expr) => {
        impl<'a, 'b> $trait<&'b EisInt> for &'a EisInt {
            type Output = EisInt;
            fn $method(self, rhs: &'b EisInt) -> EisInt {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<EisInt> for EisInt {
            type Output = EisInt;
            fn $method(self, rhs: EisInt) -> EisInt {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a EisInt> for EisInt {
            type Output = EisInt;
            fn $method(self, rhs: &'a EisInt) -> EisInt {
                $trait::$method(&self, rhs)
            }
        }
        impl<'a> $trait<EisInt> for &'a EisInt {
            type Output = EisInt;
            fn $method(self, rhs: EisInt) -> EisInt {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, x, y, EisInt {
    a: &x.a + &y.a,
    b: &x.b + &y.b,
});

forward_binop!(Sub, sub, x, y, EisInt {
    a: &x.a - &y.a,
    b: &x.b - &y.b,
});

// (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w, using w^2 = -1 - w.
forward_binop!(Mul, mul, x, y, {
    let bd = &x.b * &y.b;
    EisInt {
        a: &x.a * &y.a - &bd,
        b: &x.a * &y.b + &x.b * &y.a - &bd,
    }
});

impl Neg for &EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        EisInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        -&self
    }
}

impl AddAssign<&EisInt> for EisInt {
    fn add_assign(&mut self, rhs: &EisInt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&EisInt> for EisInt {
    fn sub_assign(&mut self, rhs: &EisInt) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&EisInt> for EisInt {
    fn mul_assign(&mut self, rhs: &EisInt) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ei(a: i64, b: i64) -> EisInt {
        EisInt::new(a, b)
    }

    #[test]
    fn omega_cubed_is_one() {
        let w = EisInt::omega();
        assert_eq!(&(&w * &w) * &w, EisInt::one());
        // w * w^2 = 1 directly
        assert_eq!(&w * &EisInt::omega_bar(), EisInt::one());
    }

    #[test]
    fn theta_squared_is_minus_three() {
        let t = EisInt::theta();
        assert_eq!(&t * &t, ei(-3, 0));
        assert_eq!(t.conj(), -&t);
        assert_eq!(t.norm(), BigInt::from(3));
    }

    #[test]
    fn norms() {
        assert_eq!(EisInt::omega().norm(), BigInt::from(1));
        // 2 - wbar = 3 + w has norm 9 - 3 + 1 = 7
        let x = ei(2, 0) - EisInt::omega_bar();
        assert_eq!(x, ei(3, 1));
        assert_eq!(x.norm(), BigInt::from(7));
    }

    #[test]
    fn conj_is_ring_automorphism() {
        let x = ei(3, -2);
        let y = ei(-1, 5);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn euclid_div_examples() {
        // (theta, 2) -> q = w, r = 1
        let (q, r) = EisInt::theta().euclid_div(&ei(2, 0)).unwrap();
        assert_eq!(q, EisInt::omega());
        assert_eq!(r, EisInt::one());
        // (6, theta) -> q = -2 theta, r = 0
        let (q, r) = ei(6, 0).euclid_div(&EisInt::theta()).unwrap();
        assert_eq!(q, ei(-2, -4));
        assert!(r.is_zero());
        // (x, 1) -> (x, 0)
        let (q, r) = ei(17, -5).euclid_div(&EisInt::one()).unwrap();
        assert_eq!(q, ei(17, -5));
        assert!(r.is_zero());
        assert!(ei(1, 0).euclid_div(&EisInt::zero()).is_err());
    }

    #[test]
    fn nearest_quotient_examples() {
        // (theta, 2) -> w, a Voronoi tie with 1+w broken lexicographically
        let q = EisInt::theta().nearest_quotient(&ei(2, 0)).unwrap();
        assert_eq!(q, EisInt::omega());
        // exact quotients come back unchanged
        let x = ei(7, -3);
        let d = ei(2, 5);
        assert_eq!((&x * &d).nearest_quotient(&d).unwrap(), x);
    }

    #[test]
    fn mod_theta_examples() {
        assert_eq!(EisInt::theta().mod_theta(), F3Scalar(0));
        assert_eq!(EisInt::omega().mod_theta(), F3Scalar(1));
        assert_eq!(ei(2, 0).mod_theta(), F3Scalar(2));
        // theta divides w - 1, so w = 1 mod theta
        let (_, r) = (EisInt::omega() - EisInt::one())
            .euclid_div(&EisInt::theta())
            .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn canonical_associate_sector() {
        assert_eq!(EisInt::one().canonical_associate(), EisInt::one());
        assert_eq!(EisInt::omega().canonical_associate(), EisInt::one());
        // theta's canonical associate is -w*theta = 2 + w
        assert_eq!(EisInt::theta().canonical_associate(), ei(2, 1));
        for u in EisInt::units() {
            assert_eq!((ei(2, 1) * u).canonical_associate(), ei(2, 1));
        }
    }

    #[test]
    fn parse_entries() {
        assert_eq!(EisInt::parse("3").unwrap(), ei(3, 0));
        assert_eq!(EisInt::parse("-1+2w").unwrap(), ei(-1, 2));
        assert_eq!(EisInt::parse("2-wb").unwrap(), ei(3, 1));
        assert_eq!(EisInt::parse("w").unwrap(), ei(0, 1));
        assert_eq!(EisInt::parse("-wb").unwrap(), ei(1, 1));
        assert!(EisInt::parse("").is_err());
        assert!(EisInt::parse("q").is_err());
    }

    #[test]
    fn euclid_and_covering_bounds_bulk() {
        // ten thousand seeded pairs: remainder strictly smaller, covering
        // radius bound exact
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(2026);
        for _ in 0..10_000 {
            let n = ei(rng.gen_range(-100_000..=100_000), rng.gen_range(-100_000..=100_000));
            let d = ei(rng.gen_range(-300..=300), rng.gen_range(-300..=300));
            if d.is_zero() {
                continue;
            }
            let (q, r) = n.euclid_div(&d).unwrap();
            assert_eq!(&(&q * &d) + &r, n);
            assert!(r.norm() < d.norm());
            let nq = n.nearest_quotient(&d).unwrap();
            assert!((&n - &(&nq * &d)).norm() * 3 <= d.norm());
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = ei(a, b);
            let y = ei(c, d);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn euclid_div_remainder_small(a in -1000i64..1000, b in -1000i64..1000,
                                      c in -1000i64..1000, d in -1000i64..1000) {
            let n = ei(a, b);
            let den = ei(c, d);
            prop_assume!(!den.is_zero());
            let (q, r) = n.euclid_div(&den).unwrap();
            prop_assert_eq!(&(&q * &den) + &r, n);
            prop_assert!(r.norm() < den.norm());
        }

        // Exact restatement of the covering radius 1/sqrt(3): the nearest
        // lattice point is within squared distance norm(d)/3.
        #[test]
        fn nearest_quotient_covering_bound(a in -1000i64..1000, b in -1000i64..1000,
                                           c in -100i64..100, d in -100i64..100) {
            let n = ei(a, b);
            let den = ei(c, d);
            prop_assume!(!den.is_zero());
            let q = n.nearest_quotient(&den).unwrap();
            let r = &n - &(&q * &den);
            prop_assert!(r.norm() * 3 <= den.norm());
        }

        // Oracle: brute force over a radius-2 box around the rounded quotient
        // finds no strictly better lattice point.
        #[test]
        fn nearest_quotient_is_minimal(a in -300i64..300, b in -300i64..300,
                                       c in -40i64..40, d in -40i64..40) {
            let n = ei(a, b);
            let den = ei(c, d);
            prop_assume!(!den.is_zero());
            let q = n.nearest_quotient(&den).unwrap();
            let best = (&n - &(&q * &den)).norm();
            let (q0, _) = n.euclid_div(&den).unwrap();
            for da in -2i64..=2 {
                for db in -2i64..=2 {
                    let cand = &q0 + &ei(da, db);
                    prop_assert!((&n - &(&cand * &den)).norm() >= best);
                }
            }
        }

        #[test]
        fn mod_theta_is_ring_hom(a in -500i64..500, b in -500i64..500,
                                 c in -500i64..500, d in -500i64..500) {
            let x = ei(a, b);
            let y = ei(c, d);
            prop_assert_eq!((&x + &y).mod_theta(), x.mod_theta().add(y.mod_theta()));
            prop_assert_eq!((&x * &y).mod_theta(), x.mod_theta().mul(y.mod_theta()));
        }

        #[test]
        fn gcd_divides_both(a in -200i64..200, b in -200i64..200,
                            c in -200i64..200, d in -200i64..200) {
            let x = ei(a, b);
            let y = ei(c, d);
            let g = x.gcd(&y);
            if g.is_zero() {
                prop_assert!(x.is_zero() && y.is_zero());
            } else {
                prop_assert!(x.div_exact(&g).is_ok());
                prop_assert!(y.div_exact(&g).is_ok());
            }
        }
    }
}
