//! Exact arithmetic over `Q` and cyclotomic fields `Q(ζ_n)`.

mod cyclotomic;
mod field;
mod rational;
mod unity;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::{CycloKey, Cyclotomic};
pub use field::{euler_phi, lcm, prime_factors};
pub use rational::{format_rational, parse_rational, rat, rational_nth_root, rational_string, Rational};
pub use unity::RootOfUnity;

use crate::error::{Error, Result};

/// Largest conductor any root extraction may introduce.
pub const DEFAULT_CONDUCTOR_BOUND: u32 = 1080;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyclo_embed(x: &Cyclotomic, new_conductor: u32) -> Result<Cyclotomic> {
    x.embed(new_conductor)
}

pub fn cyclo_arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// `2ζ_3 + 1`, a square root of `-3`.
pub fn sqrt_minus3() -> Cyclotomic {
    &(Cyclotomic::zeta(3) * Cyclotomic::from_int(2)) + &Cyclotomic::one()
}

/// Quadratic Gauss sum `Σ (k/p) ζ_p^k` for an odd prime `p`; squares to `±p`.
fn gauss_sum(p: u64) -> Cyclotomic {
    let p32 = p as u32;
    let mut residues = vec![false; p as usize];
    for k in 1..p {
        residues[((k * k) % p) as usize] = true;
    }
    let mut acc = Cyclotomic::zero();
    for k in 1..p {
        let z = Cyclotomic::zeta_pow(p32, k as i64);
        acc = if residues[k as usize] { acc + z } else { acc - z };
    }
    acc
}

fn sqrt_prime(p: u64) -> Cyclotomic {
    match p {
        // ζ_8 + ζ_8^{-1}
        2 => Cyclotomic::zeta(8) - Cyclotomic::zeta_pow(8, 3),
        _ if p % 4 == 1 => gauss_sum(p),
        _ => -(Cyclotomic::zeta(4) * gauss_sum(p)),
    }
}

/// A square root of a rational number inside a cyclotomic field: the
/// positive real root for `q > 0`, and `i·√|q|` for `q < 0`.
pub fn sqrt_rational(q: &Rational, conductor_bound: u32) -> Result<Cyclotomic> {
    if q.is_zero() {
        return Ok(Cyclotomic::zero());
    }
    let overflow = || Error::ConductorOverflow(format!("square root of {q}"));
    let n = q.numer().abs() * q.denom();
    let (square, primes) = rational::square_free_part(&n, 1 << 20).ok_or_else(overflow)?;
    let mut conductor = 1u32;
    for &p in &primes {
        let c = if p == 2 { 8 } else if p % 4 == 1 { p } else { 4 * p };
        conductor = lcm(conductor, u32::try_from(c).map_err(|_| overflow())?);
    }
    if q.is_negative() {
        conductor = lcm(conductor, 4);
    }
    if conductor > conductor_bound {
        return Err(overflow());
    }
    let mut acc = Cyclotomic::from_rational(&Rational::new(square, q.denom().clone()));
    for p in primes {
        acc = acc * sqrt_prime(p);
    }
    if q.is_negative() {
        acc = acc * Cyclotomic::zeta(4);
    }
    Ok(acc)
}

/// If `x` is a root of unity, returns `(L, j)` with `x = ζ_L^j`, where
/// `L = lcm(2, conductor)`.
pub fn root_of_unity_log(x: &Cyclotomic) -> Option<(u32, u32)> {
    let l = lcm(2, x.conductor());
    if !x.pow(l as i64).ok()?.is_one() {
        return None;
    }
    (0..l).find(|&j| Cyclotomic::zeta_pow(l, j as i64) == *x).map(|j| (l, j))
}

/// Multiplicative order of a root of unity, `None` otherwise.
pub fn root_of_unity_order(x: &Cyclotomic) -> Option<u32> {
    let (l, j) = root_of_unity_log(x)?;
    Some(l / num_integer::gcd(l, j))
}

/// Some `c` with `c^n = a`, for `a` a rational-times-root-of-unity up to a
/// quadratic irrationality (every determinant of a finite-order matrix over
/// a cyclotomic field has this shape).
pub fn nth_root(a: &Cyclotomic, n: u32, conductor_bound: u32) -> Result<Cyclotomic> {
    let overflow = || Error::ConductorOverflow(format!("{n}-th root of {a}"));
    if a.is_zero() {
        return Ok(Cyclotomic::zero());
    }
    if n == 1 {
        return Ok(a.clone());
    }
    // smallest k with a^k rational
    let bound = lcm(2, a.conductor());
    let mut power = a.clone();
    let mut k = 1u32;
    let r = loop {
        if let Some(r) = power.as_rational() {
            break r;
        }
        k += 1;
        if k > bound {
            return Err(overflow());
        }
        power = &power * a;
    };
    // |c|^{2nk} = r^2
    let t = rational_nth_root(&(&r * &r), n * k).ok_or_else(overflow)?;
    let s = sqrt_rational(&t, conductor_bound)?;
    let u = a.checked_div(&s.pow(n as i64)?)?;
    let (l, j) = root_of_unity_log(&u).ok_or_else(overflow)?;
    let big = n.checked_mul(l).ok_or_else(overflow)?;
    if big > conductor_bound {
        return Err(overflow());
    }
    let c = (s * Cyclotomic::zeta_pow(big, j as i64)).reduce_conductor();
    debug_assert!(c.pow(n as i64).is_ok_and(|p| p == *a));
    if c.pow(n as i64)? != *a {
        return Err(overflow());
    }
    Ok(c)
}
