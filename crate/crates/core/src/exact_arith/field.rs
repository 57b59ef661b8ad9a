//! Per-conductor tables: the cyclotomic polynomial and the reduced power
//! basis images of every power of the generating root of unity.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

#[derive(Debug)]
pub(crate) struct FieldData {
    pub phi: usize,
    /// Coefficients of the n-th cyclotomic polynomial, constant term first.
    pub cyclo: Vec<i64>,
    /// `zeta_pow[e]` holds `ζ_n^e` reduced to the power basis, for `0 <= e < n`.
    pub zeta_pow: Vec<Vec<i64>>,
}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();

pub(crate) fn field(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "conductor must be positive");
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().expect("field cache poisoned").get(&n) {
        return Arc::clone(f);
    }
    let data = Arc::new(build(n));
    cache
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(data)
        .clone()
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Exact division of integer polynomials by a monic divisor.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub(crate) fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 = prod_{d | n} Phi_d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = div_monic(&p, &field(d).cyclo);
        }
    }
    p
}

fn build(n: u32) -> FieldData {
    let cyclo = cyclotomic_polynomial(n);
    let phi = cyclo.len() - 1;
    debug_assert_eq!(phi, euler_phi(n));
    let mut zeta_pow = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!()
    }
    for _ in 0..n {
        zeta_pow.push(cur.clone());
        // multiply by x and reduce the x^phi term
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * cyclo[i];
            }
        }
    }
    FieldData {
        phi,
        cyclo,
        zeta_pow,
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
