//! Exact coefficient rings parameterized by the loop value `delta`.
//!
//! Every ring used by the crate implements [`Ring`]. Rings are small context
//! values (they carry the modulus and the designated `delta`), elements are
//! plain data. No floating point is used anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A commutative ring with a distinguished loop parameter.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    /// Descriptor string, e.g. `"Z"` or `"Fp:5"`.
    fn descriptor(&self) -> RingKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map.
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// The loop parameter.
    fn delta(&self) -> Self::Elem;
    /// Membership test (e.g. residues must lie in `0..p`).
    fn contains(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn delta_pow(&self, e: u32) -> Self::Elem {
        self.pow(&self.delta(), e)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Rings over which homology can be computed exactly: the integers and fields.
pub trait ExactRing: Ring {
    fn is_field(&self) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// `a / b` when `b` divides `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// A generator of the ideal `(a, b)`, normalized (gcd over Z, 0 or 1 over a field).
    fn ideal_gen(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Canonical integer for a torsion coefficient (only meaningful over Z).
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;
}

/// Field operations used by Gaussian elimination.
pub trait Field: ExactRing {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// Which ring a descriptor names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
    IntegerPolynomial,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "Fp:{p}"),
            RingKind::IntegerPolynomial => write!(f, "Z[delta]"),
        }
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(RingKind::Integers),
            "Q" => Ok(RingKind::Rationals),
            "Z[delta]" => Ok(RingKind::IntegerPolynomial),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::BadDescriptor(format!("unknown ring {other:?}")))?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(RingKind::PrimeField(p))
            }
        }
    }
}

impl From<RingKind> for String {
    fn from(k: RingKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for RingKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Value of the loop parameter: an integer, or the indeterminate itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeltaSpec {
    Value(i64),
    Generic,
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaSpec::Value(v) => write!(f, "{v}"),
            DeltaSpec::Generic => write!(f, "generic"),
        }
    }
}

impl FromStr for DeltaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(DeltaSpec::Generic);
        }
        s.parse::<i64>()
            .map(DeltaSpec::Value)
            .map_err(|_| Error::BadDescriptor(format!("bad delta {s:?}")))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integers {
    delta: BigInt,
}

impl Integers {
    pub fn new(delta: i64) -> Self {
        Integers { delta: BigInt::from(delta) }
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> RingKind {
        RingKind::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn delta(&self) -> BigInt {
        self.delta.clone()
    }
    fn contains(&self, _a: &BigInt) -> bool {
        true
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl ExactRing for Integers {
    fn is_field(&self) -> bool {
        false
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return if a.is_zero() { Some(BigInt::zero()) } else { None };
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn ideal_gen(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
    fn to_bigint(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals {
    delta: BigRational,
}

impl Rationals {
    pub fn new(delta: i64) -> Self {
        Rationals { delta: BigRational::from_integer(BigInt::from(delta)) }
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> RingKind {
        RingKind::Rationals
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn delta(&self) -> BigRational {
        self.delta.clone()
    }
    fn contains(&self, _a: &BigRational) -> bool {
        true
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl ExactRing for Rationals {
    fn is_field(&self) -> bool {
        true
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            return a.is_zero().then(BigRational::zero);
        }
        Some(a / b)
    }
    fn ideal_gen(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() && b.is_zero() {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    }
    fn to_bigint(&self, a: &BigRational) -> BigInt {
        a.to_integer()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    delta: u64,
}

impl PrimeField {
    pub fn new(p: u64, delta: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::BadDescriptor(format!("modulus {p} too large")));
        }
        let delta = delta.rem_euclid(p as i64) as u64;
        Ok(PrimeField { p, delta })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> RingKind {
        RingKind::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    fn delta(&self) -> u64 {
        self.delta
    }
    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl ExactRing for PrimeField {
    fn is_field(&self) -> bool {
        true
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        if *b == 0 {
            return (*a == 0).then_some(0);
        }
        Some(self.mul(a, &self.inv(b)))
    }
    fn ideal_gen(&self, a: &u64, b: &u64) -> u64 {
        u64::from(*a != 0 || *b != 0)
    }
    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut e = self.p - 2;
        let mut base = *a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Sparse polynomial in `delta` with integer coefficients.
///
/// Canonical form: exponent-sorted map with no zero coefficients, so derived
/// equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<u32, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// The indeterminate `delta`.
    pub fn delta() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Evaluate at `target.delta()` through the canonical map `Z -> target`.
    pub fn specialize<R: Ring>(&self, target: &R) -> R::Elem {
        let d = target.delta();
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let term = target.mul(&target.from_int(c), &target.pow(&d, *e));
            acc = target.add(&acc, &term);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "delta^{e}")?,
                (_, false) => write!(f, "{mag}*delta^{e}")?,
            }
        }
        Ok(())
    }
}

/// `Z[delta]` with `delta` the indeterminate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyRing;

impl Ring for PolyRing {
    type Elem = Poly;

    fn descriptor(&self) -> RingKind {
        RingKind::IntegerPolynomial
    }
    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(1)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn from_int(&self, n: &BigInt) -> Poly {
        Poly::constant(n.clone())
    }
    fn delta(&self) -> Poly {
        Poly::delta()
    }
    fn contains(&self, a: &Poly) -> bool {
        a.terms.values().all(|c| !c.is_zero())
    }
    fn render(&self, a: &Poly) -> String {
        a.to_string()
    }
    fn delta_pow(&self, e: u32) -> Poly {
        Poly::monomial(1, e)
    }
}

/// A ring chosen at run time from descriptors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyRing {
    Integers(Integers),
    Rationals(Rationals),
    PrimeField(PrimeField),
    IntegerPolynomial(PolyRing),
}

impl AnyRing {
    pub fn new(kind: &RingKind, delta: &DeltaSpec) -> Result<Self> {
        match (kind, delta) {
            (RingKind::IntegerPolynomial, DeltaSpec::Generic) => Ok(AnyRing::IntegerPolynomial(PolyRing)),
            (RingKind::IntegerPolynomial, DeltaSpec::Value(_)) => Err(Error::BadDescriptor(
                "Z[delta] takes delta = generic; specialize to another ring instead".into(),
            )),
            (_, DeltaSpec::Generic) => Err(Error::BadDescriptor(format!("{kind} needs an integer delta"))),
            (RingKind::Integers, DeltaSpec::Value(d)) => Ok(AnyRing::Integers(Integers::new(*d))),
            (RingKind::Rationals, DeltaSpec::Value(d)) => Ok(AnyRing::Rationals(Rationals::new(*d))),
            (RingKind::PrimeField(p), DeltaSpec::Value(d)) => Ok(AnyRing::PrimeField(PrimeField::new(*p, *d)?)),
        }
    }

    pub fn parse(ring: &str, delta: &str) -> Result<Self> {
        Self::new(&ring.parse()?, &delta.parse()?)
    }

    pub fn kind(&self) -> RingKind {
        match self {
            AnyRing::Integers(r) => r.descriptor(),
            AnyRing::Rationals(r) => r.descriptor(),
            AnyRing::PrimeField(r) => r.descriptor(),
            AnyRing::IntegerPolynomial(r) => r.descriptor(),
        }
    }

    pub fn delta_spec(&self) -> DeltaSpec {
        match self {
            AnyRing::Integers(r) => DeltaSpec::Value(r.delta.to_i64().expect("small delta")),
            AnyRing::Rationals(r) => DeltaSpec::Value(r.delta.to_integer().to_i64().expect("small delta")),
            AnyRing::PrimeField(r) => DeltaSpec::Value(r.delta as i64),
            AnyRing::IntegerPolynomial(_) => DeltaSpec::Generic,
        }
    }
}

/// Run a generic body with the concrete ring behind an [`AnyRing`].
///
/// The body is instantiated once per exact ring; `Z[delta]` is routed to
/// `$poly` since homology is only computed after specialization.
#[macro_export]
macro_rules! with_exact_ring {
    ($any:expr, $r:ident => $body:expr, poly => $poly:expr) => {
        match $any {
            $crate::coeff::AnyRing::Integers($r) => $body,
            $crate::coeff::AnyRing::Rationals($r) => $body,
            $crate::coeff::AnyRing::PrimeField($r) => $body,
            $crate::coeff::AnyRing::IntegerPolynomial(_) => $poly,
        }
    };
}

/// Dynamically typed ring element, for descriptor-driven arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    ring: AnyRing,
    value: ScalarValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ScalarValue {
    Int(BigInt),
    Rat(BigRational),
    Residue(u64),
    Poly(Poly),
}

macro_rules! scalar_binop {
    ($name:ident, $op:ident) => {
        pub fn $name(&self, other: &Scalar) -> Result<Scalar> {
            if self.ring != other.ring {
                return Err(Error::MixedRing(
                    format!("{} (delta={})", self.ring.kind(), self.ring.delta_spec()),
                    format!("{} (delta={})", other.ring.kind(), other.ring.delta_spec()),
                ));
            }
            let value = match (&self.ring, &self.value, &other.value) {
                (AnyRing::Integers(r), ScalarValue::Int(a), ScalarValue::Int(b)) => ScalarValue::Int(r.$op(a, b)),
                (AnyRing::Rationals(r), ScalarValue::Rat(a), ScalarValue::Rat(b)) => ScalarValue::Rat(r.$op(a, b)),
                (AnyRing::PrimeField(r), ScalarValue::Residue(a), ScalarValue::Residue(b)) => {
                    ScalarValue::Residue(r.$op(a, b))
                }
                (AnyRing::IntegerPolynomial(r), ScalarValue::Poly(a), ScalarValue::Poly(b)) => {
                    ScalarValue::Poly(r.$op(a, b))
                }
                _ => unreachable!("scalar value always matches its ring"),
            };
            Ok(Scalar { ring: self.ring.clone(), value })
        }
    };
}

impl Scalar {
    pub fn from_int(ring: &AnyRing, n: i64) -> Scalar {
        let n = BigInt::from(n);
        let value = match ring {
            AnyRing::Integers(r) => ScalarValue::Int(r.from_int(&n)),
            AnyRing::Rationals(r) => ScalarValue::Rat(r.from_int(&n)),
            AnyRing::PrimeField(r) => ScalarValue::Residue(r.from_int(&n)),
            AnyRing::IntegerPolynomial(r) => ScalarValue::Poly(r.from_int(&n)),
        };
        Scalar { ring: ring.clone(), value }
    }

    pub fn delta(ring: &AnyRing) -> Scalar {
        let value = match ring {
            AnyRing::Integers(r) => ScalarValue::Int(r.delta()),
            AnyRing::Rationals(r) => ScalarValue::Rat(r.delta()),
            AnyRing::PrimeField(r) => ScalarValue::Residue(r.delta()),
            AnyRing::IntegerPolynomial(r) => ScalarValue::Poly(r.delta()),
        };
        Scalar { ring: ring.clone(), value }
    }

    scalar_binop!(add, add);
    scalar_binop!(sub, sub);
    scalar_binop!(mul, mul);

    pub fn neg(&self) -> Scalar {
        let value = match (&self.ring, &self.value) {
            (AnyRing::Integers(r), ScalarValue::Int(a)) => ScalarValue::Int(r.neg(a)),
            (AnyRing::Rationals(r), ScalarValue::Rat(a)) => ScalarValue::Rat(r.neg(a)),
            (AnyRing::PrimeField(r), ScalarValue::Residue(a)) => ScalarValue::Residue(r.neg(a)),
            (AnyRing::IntegerPolynomial(r), ScalarValue::Poly(a)) => ScalarValue::Poly(r.neg(a)),
            _ => unreachable!("scalar value always matches its ring"),
        };
        Scalar { ring: self.ring.clone(), value }
    }

    /// Specialize a `Z[delta]` scalar into `target`.
    pub fn specialize(&self, target: &AnyRing) -> Result<Scalar> {
        let ScalarValue::Poly(p) = &self.value else {
            return Err(Error::BadDescriptor("only Z[delta] scalars can be specialized".into()));
        };
        let value = match target {
            AnyRing::Integers(r) => ScalarValue::Int(p.specialize(r)),
            AnyRing::Rationals(r) => ScalarValue::Rat(p.specialize(r)),
            AnyRing::PrimeField(r) => ScalarValue::Residue(p.specialize(r)),
            AnyRing::IntegerPolynomial(_) => ScalarValue::Poly(p.clone()),
        };
        Ok(Scalar { ring: target.clone(), value })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ScalarValue::Int(a) => write!(f, "{a}"),
            ScalarValue::Rat(a) => write!(f, "{a}"),
            ScalarValue::Residue(a) => write!(f, "{a}"),
            ScalarValue::Poly(a) => write!(f, "{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn integer_and_modular_arithmetic() {
        let z = Integers::new(0);
        assert_eq!(z.add(&BigInt::from(2), &BigInt::from(3)), BigInt::from(5));
        let f5 = PrimeField::new(5, 0).unwrap();
        assert_eq!(f5.mul(&3, &4), 2);
        assert_eq!(f5.inv(&3), 2);
        assert_eq!(f5.neg(&0), 0);
    }

    #[test]
    fn polynomial_difference_of_squares() {
        let r = PolyRing;
        let a = r.add(&Poly::delta(), &Poly::constant(1));
        let b = r.sub(&Poly::delta(), &Poly::constant(1));
        let prod = r.mul(&a, &b);
        assert_eq!(prod, Poly::from_terms([(2, BigInt::from(1)), (0, BigInt::from(-1))]));
        assert_eq!(prod.to_string(), "delta^2 - 1");
    }

    #[test]
    fn specialization_examples() {
        let p = Poly::from_terms([(2, BigInt::from(1)), (0, BigInt::from(-1))]);
        assert_eq!(p.specialize(&Integers::new(2)), BigInt::from(3));
        assert_eq!(Poly::delta().specialize(&Integers::new(0)), BigInt::from(0));
        let q = Poly::delta().add(&Poly::constant(3));
        assert_eq!(q.specialize(&PrimeField::new(3, 1).unwrap()), 1);
    }

    #[test]
    fn descriptors_parse() {
        assert_eq!("Z".parse::<RingKind>().unwrap(), RingKind::Integers);
        assert_eq!("Fp:7".parse::<RingKind>().unwrap(), RingKind::PrimeField(7));
        assert!(matches!("Fp:9".parse::<RingKind>(), Err(Error::NotPrime(9))));
        assert!("R".parse::<RingKind>().is_err());
        assert_eq!("generic".parse::<DeltaSpec>().unwrap(), DeltaSpec::Generic);
        assert_eq!("-1".parse::<DeltaSpec>().unwrap(), DeltaSpec::Value(-1));
        assert!(AnyRing::parse("Z[delta]", "2").is_err());
        assert!(AnyRing::parse("Q", "generic").is_err());
    }

    #[test]
    fn mixed_ring_operands_are_rejected() {
        let f3 = AnyRing::parse("Fp:3", "1").unwrap();
        let f5 = AnyRing::parse("Fp:5", "1").unwrap();
        let a = Scalar::from_int(&f3, 2);
        let b = Scalar::from_int(&f5, 2);
        assert!(matches!(a.add(&b), Err(Error::MixedRing(..))));
        assert_eq!(a.mul(&a).unwrap().to_string(), "1");
        let zd = AnyRing::parse("Z[delta]", "generic").unwrap();
        let d = Scalar::delta(&zd);
        let s = d.mul(&d).unwrap().sub(&Scalar::from_int(&zd, 1)).unwrap();
        assert_eq!(s.to_string(), "delta^2 - 1");
        let z2 = AnyRing::parse("Z", "2").unwrap();
        assert_eq!(s.specialize(&z2).unwrap().to_string(), "3");
    }

    fn poly_strategy() -> impl Strategy<Value = Poly> {
        prop::collection::vec((0u32..5, -6i64..6), 0..5)
            .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn specialization_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), d in -3i64..4) {
            let z = Integers::new(d);
            prop_assert_eq!(a.mul(&b).specialize(&z), a.specialize(&z) * b.specialize(&z));
            prop_assert_eq!(a.add(&b).specialize(&z), a.specialize(&z) + b.specialize(&z));
            let f = PrimeField::new(5, d).unwrap();
            prop_assert_eq!(a.mul(&b).specialize(&f), f.mul(&a.specialize(&f), &b.specialize(&f)));
            prop_assert_eq!(a.add(&b).specialize(&f), f.add(&a.specialize(&f), &b.specialize(&f)));
        }

        #[test]
        fn canonical_form_is_unique(a in poly_strategy(), b in poly_strategy()) {
            // a + b - b must be identical to a, term by term.
            let r = PolyRing;
            let back = r.sub(&r.add(&a, &b), &b);
            prop_assert_eq!(&back, &a);
            prop_assert!(r.contains(&back));
        }
    }
}
