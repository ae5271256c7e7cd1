//! Exact coefficient fields: the rationals and prime fields F_p.
//!
//! Every scalar is kept in a unique canonical form (reduced fraction with
//! positive denominator, or residue in `[0, p)`), so structural equality of
//! values, matrices, and serialized output is exact.

use crate::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Coefficient field: `Q` or `F_p` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Field {
    Rationals,
    Prime { p: u64 },
}

impl Field {
    /// Prime field constructor; checks primality by trial division.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p >= (1 << 31) {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
            Field::Prime { p } => Scalar::Mod { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(Box::new(BigRational::from(BigInt::from(n)))),
            Field::Prime { p } => {
                let p = *p;
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { val: r, p }
            }
        }
    }

    /// Parse the canonical string encoding: `a` or `a/b` over `Q`,
    /// a decimal residue over `F_p`.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        match self {
            Field::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| Error::Parse(s.to_string()))?;
                let den: BigInt = den.parse().map_err(|_| Error::Parse(s.to_string()))?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rat(Box::new(BigRational::new(num, den))))
            }
            Field::Prime { .. } => {
                let v: i64 = s.parse().map_err(|_| Error::Parse(s.to_string()))?;
                Ok(self.from_i64(v))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Values of distinct fields never mix; mixing them
/// is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Box<BigRational>),
    Mod { val: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { val, .. } => *val == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(Box::new(r.recip()))),
            Scalar::Mod { val, p } => Ok(Scalar::Mod {
                val: mod_pow(*val, *p - 2, *p),
                p: *p,
            }),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar, Error> {
        let (base, e) = if e < 0 {
            (self.inv()?, (-e) as u64)
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = base.field().one();
        let mut sq = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }
}

fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut bb = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % p as u128;
        }
        bb = bb * bb % p as u128;
        e >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $fn:ident, $ratop:tt, $modexpr:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => {
                        Scalar::Rat(Box::new(&**a $ratop &**b))
                    }
                    (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) if p == q => {
                        #[allow(clippy::redundant_closure_call)]
                        Scalar::Mod { val: ($modexpr)(*a, *b, *p), p: *p }
                    }
                    (a, b) => panic!("field mismatch: {} vs {}", a.field(), b.field()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                (&self).$fn(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, |a: u64, b: u64, p: u64| (a + b) % p);
scalar_binop!(Sub, sub, -, |a: u64, b: u64, p: u64| (a + p - b) % p);
scalar_binop!(Mul, mul, *, |a: u64, b: u64, p: u64| ((a as u128 * b as u128) % p as u128) as u64);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(Box::new(-&**r)),
            Scalar::Mod { val, p } => Scalar::Mod {
                val: (p - val) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

/// A primitive `n`-th root of unity in `field`, when one exists.
///
/// Over `Q` only `n = 1, 2` have one. Over `F_p` the multiplicative group is
/// cyclic of order `p - 1`, so a root exists iff `n | p - 1`; the result is
/// `g^((p-1)/n)` for the smallest primitive root `g`, which is deterministic.
pub fn primitive_root_of_unity(n: u64, field: Field) -> Result<Scalar, Error> {
    if n == 0 {
        return Err(Error::NoSuchRoot { n, field });
    }
    match field {
        Field::Rationals => match n {
            1 => Ok(field.one()),
            2 => Ok(field.from_i64(-1)),
            _ => Err(Error::NoSuchRoot { n, field }),
        },
        Field::Prime { p } => {
            if (p - 1) % n != 0 {
                return Err(Error::NoSuchRoot { n, field });
            }
            if n == 1 {
                return Ok(field.one());
            }
            let g = smallest_primitive_root(p);
            Ok(Scalar::Mod {
                val: mod_pow(g, (p - 1) / n, p),
                p,
            })
        }
    }
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    'next: for g in 2..p {
        for q in &factors {
            if mod_pow(g, (p - 1) / q, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("F_p always has a primitive root");
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
