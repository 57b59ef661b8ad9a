//! Roots of unity written as `z<n>^<k>`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{root_of_unity_log, Cyclotomic};
use crate::error::Error;

/// `ζ_order^exponent` with `gcd(order, exponent) = 1` (and `1` as `ζ_1^0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(order: u32, exponent: u32) -> Self {
        assert!(order > 0);
        let e = exponent % order;
        let g = num_integer::gcd(order, e).max(1);
        if e == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        RootOfUnity { order: order / g, exponent: e / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    /// `None` when `x` is not a root of unity.
    pub fn from_cyclotomic(x: &Cyclotomic) -> Option<Self> {
        root_of_unity_log(x).map(|(l, j)| RootOfUnity::new(l, j))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.order, self.exponent as i64).reduce_conductor()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (n, 1) => write!(f, "z{n}"),
            (n, k) => write!(f, "z{n}^{k}"),
        }
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::MalformedNumber(format!("not a root of unity: {s:?}"));
        match s.trim() {
            "1" => return Ok(RootOfUnity::one()),
            "-1" => return Ok(RootOfUnity::new(2, 1)),
            _ => {}
        }
        let rest = s.trim().strip_prefix('z').ok_or_else(bad)?;
        let (n, k) = match rest.split_once('^') {
            Some((n, k)) => (n, k),
            None => (rest, "1"),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        let k: u32 = k.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(RootOfUnity::new(n, k))
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_and_roundtrip() {
        assert_eq!(RootOfUnity::new(12, 4), RootOfUnity::new(3, 1));
        assert_eq!(RootOfUnity::new(6, 3).to_string(), "-1");
        for r in [RootOfUnity::one(), RootOfUnity::new(5, 2), RootOfUnity::new(4, 1)] {
            assert_eq!(r.to_string().parse::<RootOfUnity>().unwrap(), r);
            assert_eq!(RootOfUnity::from_cyclotomic(&r.to_cyclotomic()), Some(r));
        }
        assert!("z0".parse::<RootOfUnity>().is_err());
        assert!(RootOfUnity::from_cyclotomic(&Cyclotomic::from_int(2)).is_none());
    }
}
