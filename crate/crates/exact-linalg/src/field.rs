//! Coefficient fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::LinalgError;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The prime field with `p` elements (`p = 2` is the default).
    Prime(u32),
    /// The rational numbers.
    Rational,
}

impl FieldKind {
    /// Parses `f2`, `fp(7)`, `fp7`, `fp:7`, `f7`, `q` or `rational`.
    pub fn parse(s: &str) -> Result<Self, LinalgError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "rationals" {
            return Ok(FieldKind::Rational);
        }
        let digits = t
            .strip_prefix("fp(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix("fp"))
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| LinalgError::Parse(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| LinalgError::Parse(format!("unknown field `{s}`")))?;
        check_prime(p)?;
        Ok(FieldKind::Prime(p as u32))
    }

    /// Canonical token used in dumps and reports.
    pub fn token(&self) -> String {
        match self {
            FieldKind::Prime(2) => "f2".to_string(),
            FieldKind::Prime(p) => format!("fp({p})"),
            FieldKind::Rational => "rational".to_string(),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

fn check_prime(p: u64) -> Result<(), LinalgError> {
    if !(2..(1 << 31)).contains(&p) || !num_integer_is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    Ok(())
}

fn num_integer_is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field whose elements are manipulated through a (cheap) field descriptor.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn kind(&self) -> FieldKind;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, LinalgError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    /// `a + c*b`, the workhorse of elimination.
    fn add_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(c, b))
    }
}

/// `Z/p` with `p < 2^31`, elements stored as canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const F2: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u64) -> Result<Self, LinalgError> {
        check_prime(p)?;
        Ok(PrimeField { p: p as u32 })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::F2
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
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
        // Fermat: a^(p-2).
        let p = self.p as u64;
        let mut base = *a as u64 % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(acc as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn fmt_elem(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u32, LinalgError> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| LinalgError::Parse(format!("bad residue `{s}`")))?;
        Ok(self.from_i64(v))
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

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
    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, LinalgError> {
        let bad = || LinalgError::Parse(format!("bad rational `{s}`"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(FieldKind::parse("fp(15)").is_err());
    }

    #[test]
    fn parses_field_tokens() {
        assert_eq!(FieldKind::parse("f2").unwrap(), FieldKind::Prime(2));
        assert_eq!(FieldKind::parse("fp(5)").unwrap(), FieldKind::Prime(5));
        assert_eq!(FieldKind::parse("fp:13").unwrap(), FieldKind::Prime(13));
        assert_eq!(FieldKind::parse("rational").unwrap(), FieldKind::Rational);
        for k in [FieldKind::Prime(2), FieldKind::Prime(3), FieldKind::Rational] {
            assert_eq!(FieldKind::parse(&k.token()).unwrap(), k);
        }
    }

    #[test]
    fn rational_format_roundtrip() {
        let q = Rationals;
        for s in ["0", "-3", "7/2", "-5/12"] {
            let v = q.parse_elem(s).unwrap();
            assert_eq!(q.fmt_elem(&v), s);
        }
        assert!(q.parse_elem("1/0").is_err());
    }
}
