//! Exact field arithmetic over the rationals and over prime fields.
//!
//! Every scalar is kept in canonical form: reduced fraction with positive
//! denominator over `Q`, residue in `[0, p)` over `F_p`. Equality of scalars
//! is therefore plain structural equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("malformed scalar literal {0:?}, expected -?digits(/digits)?")]
    Malformed(String),
    #[error("zero denominator in scalar literal {0:?}")]
    ZeroDenominator(String),
    #[error("denominator of {literal:?} is zero modulo {p}")]
    DenominatorZeroModP { literal: String, p: u64 },
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDesc, FieldDesc),
}

/// Descriptor of the ground field: `Q` or `F_p` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FieldDesc {
    pub fn rationals() -> Self {
        FieldDesc::Rationals
    }

    /// Builds `F_p`, rejecting composite (or < 2) moduli.
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if is_prime_u64(p) {
            Ok(FieldDesc::PrimeField(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Rationals => 0,
            FieldDesc::PrimeField(p) => *p,
        }
    }

    pub fn is_char_two(&self) -> bool {
        self.characteristic() == 2
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Embeds an integer into the field (reduced mod `p` over `F_p`).
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldDesc::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldDesc::PrimeField(p) => {
                let m = *p as i128;
                let v = ((n as i128 % m) + m) % m;
                Scalar::Mod {
                    value: v as u64,
                    modulus: *p,
                }
            }
        }
    }

    /// Parses the uniform text format `-?digits(/digits)?`.
    ///
    /// Over `F_p` a fraction `a/b` denotes `a * b^{-1} mod p` and requires
    /// `b` nonzero mod `p`.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let num = parse_int(num_str, true).ok_or_else(|| ScalarError::Malformed(text.into()))?;
        let den = match den_str {
            Some(d) => parse_int(d, false).ok_or_else(|| ScalarError::Malformed(text.into()))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator(text.into()));
        }
        match self {
            FieldDesc::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldDesc::PrimeField(p) => {
                let n = bigint_mod(&num, *p);
                let d = bigint_mod(&den, *p);
                if d == 0 {
                    return Err(ScalarError::DenominatorZeroModP {
                        literal: text.into(),
                        p: *p,
                    });
                }
                let inv = mod_inverse(d, *p).expect("nonzero residue mod prime is invertible");
                Ok(Scalar::Mod {
                    value: mul_mod(n, inv, *p),
                    modulus: *p,
                })
            }
        }
    }
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -n } else { n })
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.is_negative() {
        r += &m;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below u64 modulus"),
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    let p = p as i128;
    Some((((s0 % p) + p) % p) as u64)
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Rat(_) => FieldDesc::Rationals,
            Scalar::Mod { modulus, .. } => FieldDesc::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (fa, fb) = (self.field(), other.field());
        if fa == fb {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(fa, fb))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_neg(&self) -> Result<Scalar, ScalarError> {
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        })
    }

    /// Multiplicative inverse; errors on zero.
    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_inverse(*value, *modulus).expect("nonzero residue"),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.checked_inv()?)
    }

    /// Canonical text rendering; `parse(render(x)) == x`.
    pub fn render(&self) -> String {
        self.to_string()
    }
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
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from one field")
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg().expect("negation is total")
    }
}

/// `acc[l] += c * v[l]` over the whole row; the workhorse of tensor evaluation.
pub(crate) fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}
