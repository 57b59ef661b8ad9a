use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::MalformedNumber(format!("not a rational: `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Renders as `"p/q"`, including `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Gaussian elimination on an augmented system with `ncols` unknowns.
/// Returns the solution when it exists and is unique.
pub(crate) fn solve_unique(aug: &mut [Vec<Rational>], ncols: usize) -> Option<Vec<Rational>> {
    let rows = aug.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let r = (pivot_row..rows).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot_row, r);
        let p = aug[pivot_row][col].clone();
        for x in aug[pivot_row].iter_mut() {
            *x /= &p;
        }
        let prow = aug[pivot_row].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    Some((0..ncols).map(|c| aug[c][ncols].clone()).collect())
}

/// Exact `k`-th root of a nonnegative rational, if it is rational.
pub fn rational_nth_root(q: &Rational, k: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let root = |x: &BigInt| {
        let r = x.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Writes a positive integer as `a² · m` with `m` squarefree; `None` if
/// trial division up to `limit` leaves a cofactor it cannot certify.
pub(crate) fn square_free_part(n: &BigInt, limit: u64) -> Option<(BigInt, Vec<u64>)> {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut primes = Vec::new();
    let mut p: u64 = 2;
    while p <= limit {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &bp;
        }
        if e % 2 == 1 {
            primes.push(p);
        }
        p += 1;
    }
    if !rest.is_one() {
        let bp = BigInt::from(limit);
        if &bp * &bp < rest {
            return None;
        }
        let last: u64 = rest.try_into().ok()?;
        primes.push(last);
    }
    primes.sort_unstable();
    Some((square, primes))
}

/// Serde adapter writing a rational as `"p/q"`; use with `#[serde(with = ...)]`.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(format_rational(&rat(0, 5)), "0/1");
        assert_eq!(format_rational(&rat(4, 2)), "2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_nth_root(&rat(2, 1), 2), None);
    }

    #[test]
    fn square_free() {
        let (a, m) = square_free_part(&BigInt::from(360), 1000).unwrap();
        assert_eq!(a, BigInt::from(6));
        assert_eq!(m, vec![2, 5]);
        let (a, m) = square_free_part(&BigInt::from(49), 1000).unwrap();
        assert_eq!((a, m), (BigInt::from(7), vec![]));
    }

    #[test]
    fn solve_small_system() {
        let mut aug = vec![
            vec![rat(1, 1), rat(1, 1), rat(3, 1)],
            vec![rat(1, 1), rat(-1, 1), rat(1, 1)],
            vec![rat(2, 1), rat(0, 1), rat(4, 1)],
        ];
        assert_eq!(solve_unique(&mut aug, 2), Some(vec![rat(2, 1), rat(1, 1)]));
    }
}
