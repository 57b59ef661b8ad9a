//! Picard lattices of P², P¹×P¹ and blowups of P² in at most three points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    P2,
    Quadric,
    /// Blowup of P² in `k` general points.
    BlowupOfP2(u8),
}

/// Integer coordinates in the lattice basis: `H, E_1, .., E_k` for blowups of
/// P², `F_1, F_2` for the quadric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, t: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|x| x * t).collect())
    }
}

impl std::ops::Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLattice {
    pub kind: LatticeKind,
    pub intersection: Vec<Vec<i64>>,
    pub canonical: DivisorClass,
}

impl SurfaceLattice {
    pub fn p2() -> Self {
        SurfaceLattice { kind: LatticeKind::P2, intersection: vec![vec![1]], canonical: DivisorClass(vec![-3]) }
    }

    pub fn quadric() -> Self {
        SurfaceLattice {
            kind: LatticeKind::Quadric,
            intersection: vec![vec![0, 1], vec![1, 0]],
            canonical: DivisorClass(vec![-2, -2]),
        }
    }

    pub fn blowup(k: u8) -> Result<Self> {
        if k > 3 {
            return Err(Error::Input(format!("blowups of P2 in {k} > 3 points are not supported")));
        }
        let n = k as usize + 1;
        let intersection = (0..n)
            .map(|i| (0..n).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect())
            .collect();
        let mut canonical = vec![1; n];
        canonical[0] = -3;
        Ok(SurfaceLattice { kind: LatticeKind::BlowupOfP2(k), intersection, canonical: DivisorClass(canonical) })
    }

    pub fn from_kind(kind: LatticeKind) -> Result<Self> {
        match kind {
            LatticeKind::P2 => Ok(Self::p2()),
            LatticeKind::Quadric => Ok(Self::quadric()),
            LatticeKind::BlowupOfP2(k) => Self::blowup(k),
        }
    }

    pub fn rank(&self) -> usize {
        self.intersection.len()
    }

    pub fn anticanonical(&self) -> DivisorClass {
        self.canonical.scaled(-1)
    }

    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!("class of length {} in a rank {} lattice", coords.len(), self.rank())));
        }
        Ok(DivisorClass(coords.to_vec()))
    }

    /// Pullback of a line, `H`.
    pub fn line(&self) -> Option<DivisorClass> {
        match self.kind {
            LatticeKind::Quadric => None,
            _ => Some(self.basis(0)),
        }
    }

    /// Exceptional curve `E_i`, `1 <= i <= k`.
    pub fn exceptional(&self, i: usize) -> Option<DivisorClass> {
        match self.kind {
            LatticeKind::BlowupOfP2(k) if (1..=k as usize).contains(&i) => Some(self.basis(i)),
            _ => None,
        }
    }

    /// Strict transform of the line through the listed blown-up points.
    pub fn line_through(&self, points: &[usize]) -> Option<DivisorClass> {
        let mut c = self.line()?;
        for &i in points {
            c = &c - &self.exceptional(i)?;
        }
        Some(c)
    }

    /// Ruling class `F_i`, `i ∈ {1, 2}`, on the quadric.
    pub fn fiber(&self, i: usize) -> Option<DivisorClass> {
        match self.kind {
            LatticeKind::Quadric if i == 1 || i == 2 => Some(self.basis(i - 1)),
            _ => None,
        }
    }

    fn basis(&self, i: usize) -> DivisorClass {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<i64> {
        pairing(a, a, self)
    }

    pub fn degree(&self) -> i64 {
        pairing(&self.canonical, &self.canonical, self).expect("canonical class has lattice rank")
    }
}

pub fn pairing(a: &DivisorClass, b: &DivisorClass, lat: &SurfaceLattice) -> Result<i64> {
    let n = lat.rank();
    if a.0.len() != n || b.0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "classes of length {} and {} in a rank {n} lattice",
            a.0.len(),
            b.0.len()
        )));
    }
    Ok((0..n).map(|i| (0..n).map(|j| a.0[i] * lat.intersection[i][j] * b.0[j]).sum::<i64>()).sum())
}

/// All classes with `E² = -1` and `E·K = -1`. Empty on P² and the quadric.
pub fn neg_one_curves(lat: &SurfaceLattice) -> Vec<DivisorClass> {
    let LatticeKind::BlowupOfP2(k) = lat.kind else {
        return Vec::new();
    };
    // a² + 1 = Σ b_i² and 3a + Σ b_i = 1 force |a| <= 3 and |b_i| <= 3 when k <= 3
    const B: i64 = 3;
    let k = k as usize;
    let mut out = Vec::new();
    let mut v = vec![-B; k + 1];
    loop {
        let c = DivisorClass(v.clone());
        if pairing(&c, &c, lat) == Ok(-1) && pairing(&c, &lat.canonical, lat) == Ok(-1) {
            out.push(c);
        }
        let mut i = 0;
        while i <= k && v[i] == B {
            v[i] = -B;
            i += 1;
        }
        if i > k {
            break;
        }
        v[i] += 1;
    }
    out.sort();
    out
}

/// Whether `Σ mult_i · class_i = -m·K`.
pub fn is_anticanonical(classes: &[(DivisorClass, u32)], lat: &SurfaceLattice, m: u32) -> Result<bool> {
    let mut total = DivisorClass(vec![0; lat.rank()]);
    for (c, mult) in classes {
        if c.0.len() != lat.rank() {
            return Err(Error::DimensionMismatch(format!("class of length {} in a rank {} lattice", c.0.len(), lat.rank())));
        }
        total = &total + &c.scaled(*mult as i64);
    }
    Ok(total == lat.canonical.scaled(-(m as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        for (k, n) in [(0u8, 0usize), (1, 1), (2, 3), (3, 6)] {
            assert_eq!(neg_one_curves(&SurfaceLattice::blowup(k).unwrap()).len(), n, "k = {k}");
        }
        assert!(neg_one_curves(&SurfaceLattice::quadric()).is_empty());
        assert!(SurfaceLattice::blowup(4).is_err());
    }

    #[test]
    fn pairings() {
        let q = SurfaceLattice::quadric();
        let (f1, f2) = (q.fiber(1).unwrap(), q.fiber(2).unwrap());
        assert_eq!(pairing(&f1, &f2, &q).unwrap(), 1);
        let s = &f1 + &f2;
        assert_eq!(pairing(&s, &s, &q).unwrap(), 2);
        assert_eq!(q.degree(), 8);
        let s6 = SurfaceLattice::blowup(3).unwrap();
        assert_eq!(pairing(&s6.canonical, &s6.canonical, &s6).unwrap(), 6);
        assert_eq!(SurfaceLattice::p2().degree(), 9);
        assert!(pairing(&f1, &DivisorClass(vec![1]), &q).is_err());
    }

    #[test]
    fn hexagon_on_dp6() {
        let s6 = SurfaceLattice::blowup(3).unwrap();
        let curves = neg_one_curves(&s6);
        let all: Vec<_> = curves.iter().map(|c| (c.clone(), 1)).collect();
        assert!(is_anticanonical(&all, &s6, 1).unwrap());
        // every (-1)-curve meets exactly two others, once each
        for a in &curves {
            let meets: Vec<i64> = curves.iter().filter(|b| *b != a).map(|b| pairing(a, b, &s6).unwrap()).collect();
            assert!(meets.iter().all(|&x| x == 0 || x == 1));
            assert_eq!(meets.iter().filter(|&&x| x == 1).count(), 2);
        }
    }

    #[test]
    fn dp7_curves_form_a_chain() {
        let s7 = SurfaceLattice::blowup(2).unwrap();
        let curves = neg_one_curves(&s7);
        let l = s7.line_through(&[1, 2]).unwrap();
        assert!(curves.contains(&l));
        for a in &curves {
            for b in &curves {
                if a != b {
                    assert!(pairing(a, b, &s7).unwrap() >= 0);
                }
            }
        }
    }

    #[test]
    fn quadric_fibers_and_p2_line() {
        let q = SurfaceLattice::quadric();
        let f1 = q.fiber(1).unwrap();
        let f2 = q.fiber(2).unwrap();
        let four = [(f1.clone(), 1), (f1, 1), (f2.clone(), 1), (f2, 1)];
        assert!(is_anticanonical(&four, &q, 1).unwrap());
        let p2 = SurfaceLattice::p2();
        assert!(!is_anticanonical(&[(p2.line().unwrap(), 1)], &p2, 1).unwrap());
        assert!(is_anticanonical(&[(p2.line().unwrap(), 3)], &p2, 1).unwrap());
    }

    proptest! {
        #[test]
        fn anticanonical_check_is_linear(k in 0u8..=3, t in 1u32..5, mults in proptest::collection::vec(0u32..4, 7)) {
            let lat = SurfaceLattice::blowup(k).unwrap();
            let mut classes: Vec<(DivisorClass, u32)> = neg_one_curves(&lat).into_iter().zip(mults.iter().copied()).collect();
            if let Some(h) = lat.line() {
                classes.push((h, mults[6]));
            }
            let base = is_anticanonical(&classes, &lat, 1).unwrap();
            let scaled: Vec<_> = classes.iter().map(|(c, m)| (c.clone(), m * t)).collect();
            prop_assert_eq!(base, is_anticanonical(&scaled, &lat, t).unwrap());
        }
    }
}
