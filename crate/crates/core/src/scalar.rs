//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! All arithmetic in this crate is exact. Rationals keep a fast small-word
//! representation and spill into `BigRational` on overflow; prime-field
//! elements are residues in `[0, p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::Error;

/// The base field of an algebra: the rationals or a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Validates the descriptor (primality of p for `Fp`).
    pub fn checked(self) -> Result<Field, Error> {
        match self {
            Field::Q => Ok(self),
            Field::Fp(p) => {
                if is_prime_u64(p) {
                    Ok(self)
                } else {
                    Err(Error::Validation(format!("{p} is not prime")))
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(Rat::zero()),
            Field::Fp(p) => Scalar::Fp { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(Rat::from_i64(n)),
            Field::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, v: m }
            }
        }
    }

    /// Parses an exact coefficient string: `a` or `a/b` over Q, a residue over F_p.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        match self {
            Field::Q => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (s, None),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::Validation(format!("bad rational '{s}'")))?;
                let d: BigInt = match den {
                    Some(d) => d
                        .parse()
                        .map_err(|_| Error::Validation(format!("bad rational '{s}'")))?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(Error::Validation(format!("zero denominator in '{s}'")));
                }
                Ok(Scalar::Rat(Rat::from_big(BigRational::new(n, d))))
            }
            Field::Fp(p) => {
                let n: i128 = s
                    .parse()
                    .map_err(|_| Error::Validation(format!("bad residue '{s}'")))?;
                let v = n.rem_euclid(*p as i128) as u64;
                Ok(Scalar::Fp { p: *p, v })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact rational, reduced, with positive denominator.
#[derive(Clone, Debug)]
pub enum Rat {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn zero() -> Rat {
        Rat::Small { num: 0, den: 1 }
    }

    pub fn from_i64(n: i64) -> Rat {
        Rat::Small { num: n, den: 1 }
    }

    /// Builds from a raw numerator/denominator pair, reducing.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::norm_i128(num as i128, den as i128)
    }

    fn norm_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        if num == 0 {
            return Rat::zero();
        }
        let neg = (num < 0) != (den < 0);
        let un = num.unsigned_abs();
        let ud = den.unsigned_abs();
        let g = gcd_u128(un, ud);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = if neg { -(un as i64) } else { un as i64 };
            Rat::Small { num: n, den: ud as i64 }
        } else {
            let mut n = BigInt::from(un);
            if neg {
                n = -n;
            }
            Rat::Big(Box::new(BigRational::new(n, BigInt::from(ud))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new reduces and fixes the sign of the denominator.
        let (n, d) = (r.numer(), r.denom());
        if let (Some(ns), Some(ds)) = (to_i64(n), to_i64(d)) {
            Rat::Small { num: ns, den: ds }
        } else {
            Rat::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small { num, den } => BigRational::new(BigInt::from(*num), BigInt::from(*den)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small { num, .. } => *num == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rat::Small { num, den } => *num == 1 && *den == 1,
            Rat::Big(b) => b.is_one(),
        }
    }

    pub fn add(&self, other: &Rat) -> Rat {
        if let (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) = (self, other) {
            let num = (*a as i128) * (*d as i128) + (*c as i128) * (*b as i128);
            let den = (*b as i128) * (*d as i128);
            return Rat::norm_i128(num, den);
        }
        Rat::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        if let (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) = (self, other) {
            let num = (*a as i128) * (*c as i128);
            let den = (*b as i128) * (*d as i128);
            return Rat::norm_i128(num, den);
        }
        Rat::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small { num, den } => {
                if *num == i64::MIN {
                    Rat::norm_i128(-(*num as i128), *den as i128)
                } else {
                    Rat::Small { num: -num, den: *den }
                }
            }
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    pub fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Small { num, den } => Rat::norm_i128(*den as i128, *num as i128),
            Rat::Big(b) => Rat::from_big(b.recip()),
        })
    }
}

fn to_i64(n: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    n.to_i64()
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small { num: a, den: b }, Rat::Small { num: c, den: d }) => a == c && b == d,
            // Mixed cases cannot be equal: Big is only used out of i64 range.
            (Rat::Small { .. }, Rat::Big(_)) | (Rat::Big(_), Rat::Small { .. }) => false,
            (Rat::Big(x), Rat::Big(y)) => x == y,
        }
    }
}
impl Eq for Rat {}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small { num, den } => {
                if *den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            Rat::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

/// An exact field element. F_p elements carry their modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(Rat),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Fp { p: *p, v: (v + w) % p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "field mismatch");
                let m = ((*v as u128) * (*w as u128) % (*p as u128)) as u64;
                Scalar::Fp { p: *p, v: m }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) => a.inv().map(Scalar::Rat),
            Scalar::Fp { p, v } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Fp { p: *p, v: mod_pow(*v, p - 2, *p) })
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is deterministic for all u64.
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rat_basics() {
        let a = Rat::new(2, 4);
        assert_eq!(a, Rat::new(1, 2));
        assert_eq!(a.to_big(), br(1, 2));
        let b = Rat::new(-3, -6);
        assert_eq!(b, Rat::new(1, 2));
        let c = Rat::new(3, -6);
        assert_eq!(c.to_big(), br(-1, 2));
        assert!(Rat::zero().is_zero());
        assert!(Rat::new(5, 5).is_one());
        assert_eq!(a.inv().unwrap(), Rat::from_i64(2));
        assert!(Rat::zero().inv().is_none());
    }

    #[test]
    fn rat_overflow_promotes() {
        let big = Rat::Small { num: i64::MAX, den: 1 };
        let sq = big.mul(&big);
        assert_eq!(sq.to_big(), big.to_big() * big.to_big());
        // And demotes back when a later operation shrinks the value.
        let back = sq.mul(&big.inv().unwrap()).mul(&big.inv().unwrap());
        assert!(matches!(back, Rat::Small { .. }));
        assert!(back.is_one());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::Fp(5).checked().unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(a.mul(&b), f.from_i64(2));
        assert_eq!(a.add(&b), f.from_i64(2));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert!(Field::Fp(6).checked().is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-11/4"] {
            let x = Field::Q.parse(s).unwrap();
            assert_eq!(format!("{x}"), s);
        }
        // Non-canonical inputs parse to canonical form.
        assert_eq!(format!("{}", Field::Q.parse("4/6").unwrap()), "2/3");
        assert_eq!(format!("{}", Field::Fp(7).parse("-1").unwrap()), "6");
        assert!(Field::Q.parse("1/0").is_err());
        assert!(Field::Q.parse("x").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(5));
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
    }

    proptest! {
        // The small-word fast path must agree with BigRational on everything.
        #[test]
        fn rat_matches_bigrational(a in -10_000i64..10_000, b in 1i64..200,
                                   c in -10_000i64..10_000, d in 1i64..200) {
            let x = Rat::new(a, b);
            let y = Rat::new(c, d);
            prop_assert_eq!(x.add(&y).to_big(), br(a, b) + br(c, d));
            prop_assert_eq!(x.sub(&y).to_big(), br(a, b) - br(c, d));
            prop_assert_eq!(x.mul(&y).to_big(), br(a, b) * br(c, d));
            if c != 0 {
                prop_assert_eq!(x.mul(&y.inv().unwrap()).to_big(), br(a, b) / br(c, d));
            }
        }

        #[test]
        fn rat_extreme_values_normalize(a in any::<i64>(), b in any::<i64>().prop_filter("nonzero", |x| *x != 0)) {
            let x = Rat::new(a, b);
            let big = x.to_big();
            // Round-tripping through BigRational is the identity.
            prop_assert_eq!(Rat::from_big(big.clone()).to_big(), big);
        }
    }
}
