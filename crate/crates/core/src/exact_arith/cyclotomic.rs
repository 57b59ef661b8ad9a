use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{euler_phi, field, lcm};
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// An element of the cyclotomic field `Q(ζ_n)`.
///
/// Stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` as integer numerators over
/// one positive common denominator, reduced so that the numerators and the
/// denominator share no factor. The representation is unique for a fixed
/// conductor, so structural comparison decides equality. Values with
/// different conductors are compared after embedding both into the lcm.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Hashable exact key of a cyclotomic number at a fixed conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloKey {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), euler_phi(n));
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            return Cyclotomic {
                n,
                num,
                den: BigInt::one(),
            };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        Cyclotomic { n, num, den }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyclotomic {
            n: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Self::from_parts(1, vec![q.numer().clone()], q.denom().clone())
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let num = f.zeta_pow[e].iter().map(|&c| BigInt::from(c)).collect();
        Cyclotomic {
            n,
            num,
            den: BigInt::one(),
        }
    }

    /// The primitive root of unity `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds an element from power-basis coefficients; the length must be `φ(n)`.
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedNumber("conductor must be positive".into()));
        }
        let phi = euler_phi(n);
        if coeffs.len() != phi {
            return Err(Error::MalformedNumber(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Ok(Self::from_parts(n, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn key(&self) -> CycloKey {
        CycloKey {
            n: self.n,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_m)`, where `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.n) {
            return Err(Error::ConductorMismatch {
                from: self.n,
                to: m,
            });
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut out = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.zeta_pow[(i * step) % m as usize];
            for (o, &z) in out.iter_mut().zip(row) {
                if z != 0 {
                    *o += c * z;
                }
            }
        }
        Ok(Cyclotomic {
            n: m,
            num: out,
            den: self.den.clone(),
        })
    }

    fn embedded(&self, m: u32) -> Self {
        self.embed(m).expect("conductor divides the target")
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.n, b.n);
        (a.embedded(m), b.embedded(m))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.n != other.n {
            let (a, b) = Self::common(self, other);
            return a.add_impl(&b, negate);
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| {
                let l = x * &other.den;
                let r = y * &self.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Self::from_parts(self.n, num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.n != other.n {
            let (a, b) = Self::common(self, other);
            return a.mul_impl(&b);
        }
        let n = self.n;
        if n == 1 || n == 2 {
            return Self::from_parts(n, vec![&self.num[0] * &other.num[0]], &self.den * &other.den);
        }
        if self.is_zero() || other.is_zero() {
            return Self::from_parts(n, vec![BigInt::zero(); self.num.len()], BigInt::one());
        }
        let f = field(n);
        let phi = f.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = prod.drain(..phi).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.zeta_pow[(phi + k) % n as usize];
            for (o, &z) in out.iter_mut().zip(row) {
                if z != 0 {
                    *o += &c * z;
                }
            }
        }
        Self::from_parts(n, out, &self.den * &other.den)
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            let inv = Self::from_rational(&q.recip());
            return Ok(if self.n == 1 { inv } else { inv.embedded(self.n) });
        }
        let f = field(self.n);
        let modulus: Vec<Rational> = f.cyclo.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let a: Vec<Rational> = self.coeffs();
        let (g, s) = poly_ext_gcd(modulus, a);
        // g is a nonzero constant because Φ_n is irreducible
        debug_assert_eq!(g.len(), 1);
        let c = g[0].clone();
        let mut coeffs: Vec<Rational> = s.into_iter().map(|x| x / &c).collect();
        coeffs.resize(f.phi, Rational::zero());
        Self::from_coeffs(self.n, &coeffs)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one().embedded(self.n);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Image under the Galois automorphism `ζ_n ↦ ζ_n^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(k.gcd(&n), 1, "Galois exponent must be a unit mod the conductor");
        let f = field(self.n);
        let mut out = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * k).rem_euclid(n) as usize;
            for (o, &z) in out.iter_mut().zip(&f.zeta_pow[e]) {
                if z != 0 {
                    *o += c * z;
                }
            }
        }
        Self::from_parts(self.n, out, self.den.clone())
    }

    /// Complex conjugate (the automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Smallest conductor whose field contains the element, re-expressed there.
    pub fn reduce_conductor(&self) -> Self {
        let n = self.n;
        let mut divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        for m in divisors {
            if m == n {
                break;
            }
            // fixed by every automorphism that is trivial on Q(ζ_m)
            let fixed = (1..n as i64)
                .filter(|k| k.gcd(&(n as i64)) == 1 && k % m as i64 == 1 % m as i64)
                .all(|k| self.galois(k) == *self);
            if !fixed {
                continue;
            }
            if let Some(y) = self.solve_in_subfield(m) {
                return y;
            }
        }
        self.clone()
    }

    fn solve_in_subfield(&self, m: u32) -> Option<Self> {
        // columns: embeddings of the power basis of Q(ζ_m)
        let phi_m = euler_phi(m);
        let cols: Vec<Vec<Rational>> = (0..phi_m)
            .map(|i| Self::zeta_pow(m, i as i64).embedded(self.n).coeffs())
            .collect();
        let target = self.coeffs();
        let rows = target.len();
        let mut aug: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let sol = super::rational::solve_unique(&mut aug, phi_m)?;
        let y = Self::from_coeffs(m, &sol).ok()?;
        (y.embedded(self.n) == *self).then_some(y)
    }

    /// Floating-point rendering `(re, im)` for debug display only.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub_scaled(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rational::zero());
    }
    for (i, x) in b.iter().enumerate() {
        if !x.is_zero() {
            a[i + shift] -= x * c;
        }
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() && !(rem.len() == 1 && rem[0].is_zero()) {
        let shift = rem.len() - 1 - db;
        let c = rem.last().expect("nonempty") / &lead;
        poly_sub_scaled(&mut rem, b, &c, shift);
        quot[shift] += &c;
        rem.pop();
        if rem.is_empty() {
            rem.push(Rational::zero());
        }
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(m, a)`.
fn poly_ext_gcd(m: Vec<Rational>, a: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = m;
    let mut r1 = a;
    trim(&mut r1);
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let mut s2 = s0.clone();
        let qs = poly_mul(&q, &s1);
        if s2.len() < qs.len() {
            s2.resize(qs.len(), Rational::zero());
        }
        for (x, y) in s2.iter_mut().zip(qs) {
            *x -= y;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::common(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for Cyclotomic {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// Panics on a zero divisor, like integer division; use `checked_div` otherwise.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, i),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            conductor: self.n,
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Cyclotomic::from_coeffs(repr.conductor, &coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> Cyclotomic {
        Cyclotomic::zeta(n)
    }

    #[test]
    fn zeta3_minimal_polynomial() {
        let w = z(3);
        assert!((&(&w * &w) + &w + Cyclotomic::one()).is_zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = z(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn inverse_of_zeta5() {
        let w = z(5);
        assert_eq!(w.inv().unwrap(), Cyclotomic::zeta_pow(5, 4));
        assert_eq!(Cyclotomic::one().checked_div(&w).unwrap(), Cyclotomic::zeta_pow(5, 4));
    }

    #[test]
    fn inverse_of_general_element() {
        let x = &(&z(7) + &Cyclotomic::from_int(3)) - &(&Cyclotomic::zeta_pow(7, 3) * &Cyclotomic::from_int(2));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors_promote_to_lcm() {
        let s = &z(3) + &z(4);
        assert_eq!(s.conductor(), 12);
        assert_eq!(&s - &z(4), z(3));
    }

    #[test]
    fn embedding_rejects_non_multiple() {
        assert_eq!(
            z(3).embed(4),
            Err(Error::ConductorMismatch { from: 3, to: 4 })
        );
    }

    #[test]
    fn reduce_conductor_finds_subfield() {
        let x = z(3).embed(12).unwrap();
        let r = x.reduce_conductor();
        assert_eq!(r.conductor(), 3);
        assert_eq!(r, z(3));
        let q = Cyclotomic::from_int(-1).embed(20).unwrap().reduce_conductor();
        assert_eq!(q.conductor(), 1);
    }

    #[test]
    fn galois_conjugation() {
        assert_eq!(z(5).galois(2), Cyclotomic::zeta_pow(5, 2));
        assert_eq!(z(8).conj(), Cyclotomic::zeta_pow(8, 7));
    }

    #[test]
    fn json_shape() {
        let w = z(3);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"conductor":3,"coeffs":["0/1","1/1"]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":5,"coeffs":["1/1"]}"#).is_err());
    }

    #[test]
    fn display() {
        let x = &z(3) * &Cyclotomic::from_int(2) + Cyclotomic::one();
        assert_eq!(x.to_string(), "1 + 2*z3");
    }
}
