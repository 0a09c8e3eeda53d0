use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field descriptor. Every scalar carries one; mixing descriptors is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds the prime field 𝔽_p after checking that p is prime and small
    /// enough for u128 products.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p >= (1u64 << 32) || !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { v: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts "Q", "QQ", "rational", "GF(p)", "F_p", "Fp" and a bare prime.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rational" | "rationals" => return Ok(Field::Rational),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field descriptor {s:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of ℚ (reduced, positive denominator) or of 𝔽_p (residue in [0,p)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field(), other.field())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a + b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Ok(Scalar::Fp { v: (a + b) % p, p: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a - b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Ok(Scalar::Fp { v: (a + p - b) % p, p: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a * b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Ok(Scalar::Fp {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Q(r) => Some(Scalar::Q(r.recip())),
            Scalar::Fp { v, p } => Some(Scalar::Fp { v: pow_mod(*v, p - 2, *p), p: *p }),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv().ok_or(Error::Singular)?;
        self.checked_mul(&inv)
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Some(acc)
    }

    /// Canonical text: "n" or "n/d" over ℚ, the residue in [0,p) over 𝔽_p.
    pub fn to_canonical(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    /// Parses a scalar in the given field. Prime-field residues must already
    /// be canonical, so "7" is rejected in 𝔽₇.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let t = s.trim();
        match field {
            Field::Rational => {
                let (n, d) = match t.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (t, "1"),
                };
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::Validation(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let v: BigInt = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                if v.is_negative() || v >= BigInt::from(p) {
                    return Err(Error::Validation(format!(
                        "non-canonical residue {s:?} in GF({p})"
                    )));
                }
                Ok(Scalar::Fp { v: v.to_u64().unwrap_or(0), p })
            }
        }
    }

    /// Small integer value when the scalar is an integer that fits in i64.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(r) if r.denom().is_one() => r.numer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    b = acc as u64;
    b
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

// Operator sugar panics on mismatched descriptors. All matrices and
// structures validate their field at construction, so library code only
// reaches these with a single descriptor in play.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }
}

impl Scalar {
    /// In-place `self += a * b`, the inner loop of every contraction.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: x, p: pa }, Scalar::Fp { v: y, p: pb })
                if p == pa && p == pb =>
            {
                let m = *p as u128;
                *v = ((*v as u128 + (*x as u128 * *y as u128) % m) % m) as u64;
            }
            (Scalar::Q(acc), Scalar::Q(x), Scalar::Q(y)) => {
                *acc += x * y;
            }
            _ => panic!("field mismatch in add_mul"),
        }
    }

    pub fn add_assign(&mut self, a: &Scalar) {
        match (&mut *self, a) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: x, p: pa }) if p == pa => {
                *v = (*v + x) % *p;
            }
            (Scalar::Q(acc), Scalar::Q(x)) => {
                *acc += x;
            }
            _ => panic!("field mismatch in add_assign"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        let f = Field::Rational;
        let a = Scalar::parse(f, "2/4").unwrap();
        assert_eq!(a.to_canonical(), "1/2");
        let b = Scalar::parse(f, "-3/-6").unwrap();
        assert_eq!(b.to_canonical(), "1/2");
        assert_eq!((&a + &b).to_canonical(), "1");
    }

    #[test]
    fn residues_must_be_canonical() {
        let f = Field::prime(7).unwrap();
        assert!(Scalar::parse(f, "6").is_ok());
        assert!(matches!(Scalar::parse(f, "7"), Err(Error::Validation(_))));
        assert!(matches!(Scalar::parse(f, "-1"), Err(Error::Validation(_))));
    }

    #[test]
    fn mixed_fields_are_an_error() {
        let a = Field::Rational.one();
        let b = Field::Prime(7).one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(_, _))));
        let c = Field::Prime(5).one();
        assert!(b.checked_mul(&c).is_err());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::Prime(7);
        for k in 1..7 {
            let x = f.int(k);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
        assert_eq!(f.int(2).pow(3).unwrap(), f.one());
    }

    #[test]
    fn field_descriptors_parse() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("GF(7)".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("F_7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("GF(8)".parse::<Field>().is_err());
    }
}
