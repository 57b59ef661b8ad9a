//! Finite subgroups of `PGL_2 × PGL_2`, possibly extended by a factor swap,
//! and their Goursat decomposition.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{projective_canonical, AbstractGroupId, FiniteGroup, ProjectiveGroup, Subset};
use crate::error::{Error, Result};
use crate::exact_arith::{lcm, CycloKey};
use crate::linalg::Matrix;

/// An automorphism of `P¹×P¹`: `(x, y) ↦ (a·x, b·y)`, or `(x, y) ↦ (a·y, b·x)`
/// when `swap` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairElement {
    pub a: Matrix,
    pub b: Matrix,
    pub swap: bool,
}

impl PairElement {
    pub fn new(a: Matrix, b: Matrix) -> Self {
        PairElement { a, b, swap: false }
    }

    pub fn swapping(a: Matrix, b: Matrix) -> Self {
        PairElement { a, b, swap: true }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &PairElement) -> PairElement {
        let (a, b) = if self.swap {
            (self.a.matmul(&other.b), self.b.matmul(&other.a))
        } else {
            (self.a.matmul(&other.a), self.b.matmul(&other.b))
        };
        PairElement { a, b, swap: self.swap ^ other.swap }
    }

    fn normalized(&self, conductor: u32) -> PairElement {
        PairElement {
            a: projective_canonical(&self.a.with_conductor(conductor)),
            b: projective_canonical(&self.b.with_conductor(conductor)),
            swap: self.swap,
        }
    }

    fn key(&self) -> (Vec<CycloKey>, Vec<CycloKey>, bool) {
        (self.a.key(), self.b.key(), self.swap)
    }

    fn conductor(&self) -> u32 {
        lcm(self.a.conductor(), self.b.conductor())
    }
}

/// A finite group of automorphisms of `P¹×P¹` given by closure.
#[derive(Clone, Debug)]
pub struct PairGroup {
    conductor: u32,
    generators: Vec<PairElement>,
    raw_generators: Vec<PairElement>,
    elements: Vec<PairElement>,
    group: FiniteGroup,
}

impl PairGroup {
    pub fn close(generators: &[PairElement]) -> Result<Self> {
        Self::close_with_cap(generators, super::order_cap())
    }

    pub fn close_with_cap(generators: &[PairElement], cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidQuadricData("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            for m in [&g.a, &g.b] {
                if m.rows() != 2 || m.cols() != 2 {
                    return Err(Error::DimensionMismatch(format!("pair generator {i} is not 2x2")));
                }
                if m.det().is_zero() {
                    return Err(Error::NonInvertibleGenerator { index: i });
                }
            }
        }
        let conductor = generators.iter().fold(1, |acc, g| lcm(acc, g.conductor()));
        let gens: Vec<PairElement> = generators.iter().map(|g| g.normalized(conductor)).collect();
        let id = Matrix::identity(2).with_conductor(conductor);
        let identity = PairElement::new(id.clone(), id);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity.key(), 0usize)]);
        let mut right = Vec::new();
        let mut tree = vec![None];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            order.push(e);
            let mut row = Vec::new();
            for (k, g) in gens.iter().enumerate() {
                let p = elements[e].compose(g).normalized(conductor);
                let key = p.key();
                let idx = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= cap {
                            return Err(Error::OrderCapExceeded { cap });
                        }
                        index.insert(key, i);
                        elements.push(p);
                        tree.push(Some((e, k)));
                        queue.push_back(i);
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
        }
        let gen_idx = gens.iter().map(|g| index[&g.key()]).collect();
        let group = FiniteGroup::from_right_actions(&right, gen_idx, tree, &order);
        let raw_generators = generators
            .iter()
            .map(|g| PairElement { a: g.a.with_conductor(conductor), b: g.b.with_conductor(conductor), swap: g.swap })
            .collect();
        Ok(PairGroup { conductor, generators: gens, raw_generators, elements, group })
    }

    /// Builds the group from a complete element list, rejecting lists that
    /// are not closed under composition.
    pub fn from_elements(elements: &[PairElement]) -> Result<Self> {
        let g = Self::close(elements)?;
        let conductor = g.conductor;
        let mut distinct: Vec<_> = elements.iter().map(|e| e.normalized(conductor).key()).collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != g.order() {
            return Err(Error::NotClosed(format!(
                "{} distinct pairs generate a group of order {}",
                distinct.len(),
                g.order()
            )));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[PairElement] {
        &self.generators
    }

    /// Generators as given, before projective normalization.
    pub fn raw_generators(&self) -> &[PairElement] {
        &self.raw_generators
    }

    /// Element `i` as a product of the raw generators.
    pub fn raw_element(&self, i: usize) -> PairElement {
        let id = Matrix::identity(2).with_conductor(self.conductor);
        let mut e = PairElement::new(id.clone(), id);
        for k in self.group.word(i) {
            e = e.compose(&self.raw_generators[k]);
        }
        e
    }

    pub fn elements(&self) -> &[PairElement] {
        &self.elements
    }

    pub fn abstract_group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn swaps_factors(&self) -> bool {
        self.elements.iter().any(|e| e.swap)
    }

    /// Indices of the factor-preserving elements.
    pub fn preserving_indices(&self) -> Subset {
        (0..self.order()).filter(|&i| !self.elements[i].swap).collect()
    }

    /// The factor-preserving subgroup `G_0`.
    pub fn preserving_subgroup(&self) -> Result<PairGroup> {
        if !self.swaps_factors() {
            return Ok(self.clone());
        }
        let idx = self.preserving_indices();
        let gens: Vec<PairElement> = self
            .group
            .small_generating_set(&idx)
            .into_iter()
            .map(|i| self.raw_element(i))
            .collect();
        if gens.is_empty() {
            let id = Matrix::identity(2);
            return PairGroup::close(&[PairElement::new(id.clone(), id)]);
        }
        PairGroup::close(&gens)
    }
}

/// Goursat data of a factor-preserving group `G_0 ⊂ A_1 × A_2`.
#[derive(Clone, Debug)]
pub struct GoursatData {
    pub a1: ProjectiveGroup,
    pub a2: ProjectiveGroup,
    /// `K_1 = {a : (a, 1) ∈ G_0}` as indices into `a1`.
    pub k1: Subset,
    pub k2: Subset,
    /// `A_1/K_1 ≅ A_2/K_2`.
    pub r: AbstractGroupId,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoursatSummary {
    pub a1: AbstractGroupId,
    pub a2: AbstractGroupId,
    pub k1: usize,
    pub k2: usize,
    pub r: AbstractGroupId,
    pub order: usize,
}

impl GoursatData {
    pub fn summary(&self) -> GoursatSummary {
        GoursatSummary {
            a1: self.a1.abstract_group().recognize(),
            a2: self.a2.abstract_group().recognize(),
            k1: self.k1.len(),
            k2: self.k2.len(),
            r: self.r,
            order: self.order,
        }
    }
}

/// Decomposes a factor-preserving pair group as a fibered product.
pub fn goursat(g0: &PairGroup) -> Result<GoursatData> {
    if g0.swaps_factors() {
        return Err(Error::InvalidQuadricData("Goursat decomposition needs a factor-preserving group".into()));
    }
    let a1 = ProjectiveGroup::close(&g0.raw_generators.iter().map(|e| e.a.clone()).collect::<Vec<_>>(), true)?;
    let a2 = ProjectiveGroup::close(&g0.raw_generators.iter().map(|e| e.b.clone()).collect::<Vec<_>>(), true)?;
    let proj: Vec<(usize, usize)> = g0
        .elements
        .iter()
        .map(|e| {
            let i = a1.index_of(&e.a).expect("projection lies in A1");
            let j = a2.index_of(&e.b).expect("projection lies in A2");
            (i, j)
        })
        .collect();
    let mut k1: Subset = proj.iter().filter(|p| p.1 == 0).map(|p| p.0).collect();
    let mut k2: Subset = proj.iter().filter(|p| p.0 == 0).map(|p| p.1).collect();
    k1.sort_unstable();
    k2.sort_unstable();
    let n = g0.order();
    if n != a1.order() * k2.len() || n != a2.order() * k1.len() {
        return Err(Error::NotClosed("Goursat order identity fails".into()));
    }
    let (q1, coset1) = a1.abstract_group().quotient(&k1);
    let (q2, coset2) = a2.abstract_group().quotient(&k2);
    // the induced pairing of cosets must be a well-defined bijection
    let mut pairing: Vec<Option<usize>> = vec![None; q1.order()];
    for &(i, j) in &proj {
        let (c1, c2) = (coset1[i], coset2[j]);
        match pairing[c1] {
            None => pairing[c1] = Some(c2),
            Some(c) if c == c2 => {}
            Some(_) => return Err(Error::NotClosed("coset pairing is not well defined".into())),
        }
    }
    let mut hit = vec![false; q2.order()];
    for c in pairing.iter().flatten() {
        hit[*c] = true;
    }
    if q1.order() != q2.order() || hit.iter().any(|h| !h) {
        return Err(Error::NotClosed("coset pairing is not a bijection".into()));
    }
    let r = q1.recognize();
    Ok(GoursatData { a1, a2, k1, k2, r, order: n })
}
