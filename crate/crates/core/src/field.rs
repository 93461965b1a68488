//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Two layers live here. The [`Field`] trait is the statically typed
//! substrate used by every algorithm in the crate: algorithms are generic
//! over `F: Field` and work on `F::Elem` values without per-operation field
//! checks. [`Scalar`] is the dynamically tagged value used at the edges
//! (parsing, serialization, the CLI), where two operands may come from
//! different fields and mixing them must be rejected.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not a prime in [2, 65536)")]
    BadModulus(u64),
    #[error("cannot parse scalar {text:?} over {field}: {reason}")]
    Parse {
        text: String,
        field: FieldSpec,
        reason: String,
    },
    #[error("cannot parse field {0:?}; expected \"Q\" or \"GF(p)\"")]
    BadFieldName(String),
}

/// Which field an algebra lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if p < 2 || p >= MAX_MODULUS as u64 || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| FieldError::BadFieldName(s.to_string()))?;
        let p: u64 = inner
            .parse()
            .map_err(|_| FieldError::BadFieldName(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
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

/// A field whose elements can be manipulated exactly.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// All elements in canonical order, or `None` for an infinite field.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn order(&self) -> Option<u64> {
        self.spec().modulus().map(u64::from)
    }

    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, FieldError>;
}

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators. `BigRational` keeps values in lowest terms with a positive
/// denominator after every operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        parse_rational(s)
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, FieldError> {
        match &s.value {
            ScalarValue::Rational(r) => Ok(r.clone()),
            ScalarValue::Residue(_) => Err(FieldError::MixedFields(FieldSpec::Rationals, s.spec)),
        }
    }
}

/// GF(p) for a prime p < 2^16; residues are stored reduced in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, FieldError> {
        FieldSpec::prime(p).map(|_| PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            text: s.to_string(),
            field: self.spec(),
            reason: reason.to_string(),
        };
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err("expected a decimal residue"));
        }
        let v: u64 = s.parse().map_err(|_| err("residue too large"))?;
        if v >= self.p as u64 {
            return Err(err("residue out of range"));
        }
        Ok(v as u32)
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar {
            spec: self.spec(),
            value: ScalarValue::Residue(*a),
        }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u32, FieldError> {
        match (&s.value, s.spec == self.spec()) {
            (ScalarValue::Residue(v), true) => Ok(*v),
            _ => Err(FieldError::MixedFields(self.spec(), s.spec)),
        }
    }
}

fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let err = |reason: &str| FieldError::Parse {
        text: s.to_string(),
        field: FieldSpec::Rationals,
        reason: reason.to_string(),
    };
    let int = |t: &str| -> Result<BigInt, FieldError> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err("expected an integer or a/b"));
        }
        t.parse::<BigInt>().map_err(|_| err("expected an integer or a/b"))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((n, d)) => {
            let n = int(n)?;
            let d = int(d)?;
            if !d.is_positive() {
                return Err(err("denominator must be positive"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ScalarValue {
    Rational(BigRational),
    Residue(u32),
}

/// A field element tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    spec: FieldSpec,
    value: ScalarValue,
}

impl Scalar {
    pub fn rational(r: BigRational) -> Scalar {
        Scalar {
            spec: FieldSpec::Rationals,
            value: ScalarValue::Rational(r),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Scalar, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar::rational(BigRational::new(num.into(), den.into())))
    }

    pub fn residue(spec: FieldSpec, v: i64) -> Result<Scalar, FieldError> {
        match spec {
            FieldSpec::Prime(p) => Ok(Scalar {
                spec,
                value: ScalarValue::Residue(v.rem_euclid(p as i64) as u32),
            }),
            FieldSpec::Rationals => Ok(Scalar::rational(BigRational::from_integer(v.into()))),
        }
    }

    pub fn zero(spec: FieldSpec) -> Scalar {
        Scalar::residue(spec, 0).expect("zero exists in every field")
    }

    pub fn parse(spec: FieldSpec, s: &str) -> Result<Scalar, FieldError> {
        match spec {
            FieldSpec::Rationals => Rationals.parse(s).map(Scalar::rational),
            FieldSpec::Prime(p) => {
                let f = PrimeField { p };
                f.parse(s).map(|v| f.to_scalar(&v))
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            ScalarValue::Rational(r) => r.is_zero(),
            ScalarValue::Residue(v) => *v == 0,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(FieldError::MixedFields(self.spec, other.spec))
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(&PrimeField, &u32, &u32) -> u32,
    ) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value, self.spec) {
            (ScalarValue::Rational(a), ScalarValue::Rational(b), _) => ScalarValue::Rational(q(a, b)),
            (ScalarValue::Residue(a), ScalarValue::Residue(b), FieldSpec::Prime(p)) => {
                ScalarValue::Residue(fp(&PrimeField { p }, a, b))
            }
            _ => unreachable!("value variant always matches its spec"),
        };
        Ok(Scalar {
            spec: self.spec,
            value,
        })
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |a, b| a + b, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |a, b| a - b, |f, a, b| f.sub(a, b))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |a, b| a * b, |f, a, b| f.mul(a, b))
    }

    pub fn neg(&self) -> Scalar {
        let value = match (&self.value, self.spec) {
            (ScalarValue::Rational(a), _) => ScalarValue::Rational(-a),
            (ScalarValue::Residue(a), FieldSpec::Prime(p)) => ScalarValue::Residue(PrimeField { p }.neg(a)),
            _ => unreachable!("value variant always matches its spec"),
        };
        Scalar {
            spec: self.spec,
            value,
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match (&self.value, self.spec) {
            (ScalarValue::Rational(a), _) => ScalarValue::Rational(a.recip()),
            (ScalarValue::Residue(a), FieldSpec::Prime(p)) => {
                ScalarValue::Residue(PrimeField { p }.inv(a).expect("nonzero residue"))
            }
            _ => unreachable!("value variant always matches its spec"),
        };
        Ok(Scalar {
            spec: self.spec,
            value,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ScalarValue::Rational(r) => f.write_str(&format_rational(r)),
            ScalarValue::Residue(v) => write!(f, "{v}"),
        }
    }
}

/// Operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Single entry point over the four field operations; `b` is required for
/// the binary ones and ignored otherwise.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => a.add(b.expect("add takes two operands")),
        ArithOp::Mul => a.mul(b.expect("mul takes two operands")),
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.inv(),
    }
}
