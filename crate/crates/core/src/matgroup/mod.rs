//! Finite matrix groups over cyclotomic fields.

mod abstract_group;
mod pairs;
pub mod presets;
mod spec;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

pub use abstract_group::{is_isomorphic, models, AbstractGroupId, FiniteGroup, Subset};
pub use pairs::{goursat, GoursatData, PairElement, PairGroup};
pub use spec::{GroupSpec, PairGroupSpec};

use crate::error::{Error, Result};
use crate::exact_arith::{lcm, nth_root, CycloKey, Cyclotomic, DEFAULT_CONDUCTOR_BOUND};
use crate::linalg::Matrix;

/// A 2×2 or 3×3 invertible matrix over a cyclotomic field.
pub type ExactMatrix = Matrix;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Current closure order cap.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Overrides the closure order cap for every later closure in the process.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Scales `m` so that its first nonzero entry in row-major order is 1.
pub fn projective_canonical(m: &ExactMatrix) -> ExactMatrix {
    let lead = m
        .entries()
        .iter()
        .find(|x| !x.is_zero())
        .expect("invertible matrix has a nonzero entry");
    if lead.is_one() {
        return m.clone();
    }
    m.scale(&lead.inv().expect("nonzero"))
}

/// A finite group of matrices, closed under multiplication, with equality
/// either exact or up to scalars.
#[derive(Clone, Debug)]
pub struct ProjectiveGroup {
    dim: usize,
    projective: bool,
    conductor: u32,
    generators: Vec<ExactMatrix>,
    /// Generators with the scaling they were given in.
    raw_generators: Vec<ExactMatrix>,
    elements: Vec<ExactMatrix>,
    group: FiniteGroup,
    index: HashMap<Vec<CycloKey>, usize>,
}

impl ProjectiveGroup {
    /// Closes the generators under multiplication, with the process-wide order cap.
    pub fn close(generators: &[ExactMatrix], projective: bool) -> Result<Self> {
        Self::close_with_cap(generators, projective, order_cap())
    }

    pub fn close_with_cap(generators: &[ExactMatrix], projective: bool, cap: usize) -> Result<Self> {
        let dim = generators.first().map_or(0, Matrix::rows);
        if dim == 0 {
            return Err(Error::DimensionMismatch("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!("generator {i} is not {dim}x{dim}")));
            }
            if g.det().is_zero() {
                return Err(Error::NonInvertibleGenerator { index: i });
            }
        }
        let conductor = generators.iter().fold(1, |acc, g| lcm(acc, g.conductor()));
        let norm = |m: &Matrix| {
            let m = m.with_conductor(conductor);
            if projective {
                projective_canonical(&m)
            } else {
                m
            }
        };
        let gens: Vec<Matrix> = generators.iter().map(norm).collect();
        let identity = Matrix::identity(dim).with_conductor(conductor);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity.key(), 0usize)]);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut tree = vec![None];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            order.push(e);
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let p = norm(&elements[e].matmul(g));
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
        // `right` is indexed by BFS position, which equals element index
        let generator_idx: Vec<usize> = gens.iter().map(|g| index[&g.key()]).collect();
        let group = FiniteGroup::from_right_actions(&right, generator_idx, tree, &order);
        let raw_generators = generators.iter().map(|g| g.with_conductor(conductor)).collect();
        Ok(ProjectiveGroup { dim, projective, conductor, generators: gens, raw_generators, elements, group, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    /// Generators as given, before projective normalization.
    pub fn raw_generators(&self) -> &[ExactMatrix] {
        &self.raw_generators
    }

    /// Element `i` as a product of the raw generators; equals `elements()[i]`
    /// up to a scalar.
    pub fn raw_element(&self, i: usize) -> ExactMatrix {
        let mut m = Matrix::identity(self.dim).with_conductor(self.conductor);
        for k in self.group.word(i) {
            m = m.matmul(&self.raw_generators[k]);
        }
        m
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExactMatrix {
        &self.elements[i]
    }

    /// Multiplication table and derived abstract structure.
    pub fn abstract_group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Index of the group element equal to `m` (up to scalars when projective).
    pub fn index_of(&self, m: &ExactMatrix) -> Option<usize> {
        let c = m.conductor();
        let m = if self.conductor.is_multiple_of(c) {
            m.with_conductor(self.conductor)
        } else {
            let reduced = Matrix::new(
                m.rows(),
                m.cols(),
                m.entries().iter().map(Cyclotomic::reduce_conductor).collect(),
            );
            if !self.conductor.is_multiple_of(reduced.conductor()) {
                // a scalar multiple may still lie in the group's field
                if !self.projective {
                    return None;
                }
                let canon = projective_canonical(m).uniform();
                let canon = Matrix::new(
                    canon.rows(),
                    canon.cols(),
                    canon.entries().iter().map(Cyclotomic::reduce_conductor).collect(),
                );
                if !self.conductor.is_multiple_of(canon.conductor()) {
                    return None;
                }
                canon.with_conductor(self.conductor)
            } else {
                reduced.with_conductor(self.conductor)
            }
        };
        let m = if self.projective { projective_canonical(&m) } else { m };
        self.index.get(&m.key()).copied()
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        self.index_of(m).is_some()
    }

    /// True when every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &ProjectiveGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Subgroup on the given element indices.
    pub fn subgroup(&self, elements: &[usize]) -> Result<ProjectiveGroup> {
        let gens = self.group.small_generating_set(elements);
        if gens.is_empty() {
            return ProjectiveGroup::close(&[Matrix::identity(self.dim).with_conductor(self.conductor)], self.projective);
        }
        let mats: Vec<Matrix> = gens.iter().map(|&i| self.raw_element(i)).collect();
        ProjectiveGroup::close(&mats, self.projective)
    }

    /// The contragredient group `g ↦ (g^{-1})^T`.
    pub fn dual(&self) -> Result<ProjectiveGroup> {
        let gens: Vec<Matrix> = self
            .raw_generators
            .iter()
            .map(|g| Ok(g.inverse()?.transpose()))
            .collect::<Result<_>>()?;
        ProjectiveGroup::close(&gens, self.projective)
    }

    /// Multiplicative order of each element.
    pub fn element_order(&self, i: usize) -> usize {
        self.group.element_order(i)
    }
}

/// `c·m` with `det(c·m) = 1`, for an `n×n` matrix `m`.
pub fn sl_normalize(m: &ExactMatrix, conductor_bound: u32) -> Result<ExactMatrix> {
    let n = m.rows() as u32;
    let d = m.det();
    let c = nth_root(&d.inv()?, n, conductor_bound)?;
    Ok(m.scale(&c).uniform())
}

/// Full preimage of a projective group in `SL_n`, with exact equality.
pub fn sl_lift(g: &ProjectiveGroup) -> Result<ProjectiveGroup> {
    sl_lift_with_bound(g, DEFAULT_CONDUCTOR_BOUND)
}

pub fn sl_lift_with_bound(g: &ProjectiveGroup, conductor_bound: u32) -> Result<ProjectiveGroup> {
    let n = g.dim();
    let mut gens: Vec<Matrix> = g
        .raw_generators()
        .iter()
        .zip(g.generators())
        .map(|(raw, canonical)| sl_normalize(raw, conductor_bound).or_else(|_| sl_normalize(canonical, conductor_bound)))
        .collect::<Result<_>>()?;
    gens.push(Matrix::scalar(n, &Cyclotomic::zeta(n as u32)));
    ProjectiveGroup::close(&gens, false)
}

/// Exact multiplicative order of `m`, given a multiple of it.
pub fn order_dividing(m: &ExactMatrix, multiple: u64) -> Option<u32> {
    if !m.pow(multiple as u32).is_identity() {
        return None;
    }
    let mut order = multiple;
    for p in crate::exact_arith::prime_factors(multiple) {
        while order.is_multiple_of(p) && m.pow((order / p) as u32).is_identity() {
            order /= p;
        }
    }
    Some(order as u32)
}

/// Each generator rescaled into `SL_n`, with its exact order there.
pub fn lifted_generators(g: &ProjectiveGroup) -> Result<Vec<(ExactMatrix, u32)>> {
    let n = g.dim() as u64;
    let fg = g.abstract_group();
    g.raw_generators()
        .iter()
        .zip(g.generators())
        .zip(fg.generators())
        .map(|((raw, canonical), &idx)| {
            let m = sl_normalize(raw, DEFAULT_CONDUCTOR_BOUND)
                .or_else(|_| sl_normalize(canonical, DEFAULT_CONDUCTOR_BOUND))?;
            let multiple = n * fg.element_order(idx) as u64;
            let order = order_dividing(&m, multiple)
                .ok_or_else(|| Error::EigenvalueOutsideField(format!("lifted generator has no order dividing {multiple}")))?;
            Ok((m, order))
        })
        .collect()
}

/// Structural summary of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure {
    pub order: usize,
    pub is_abelian: bool,
    pub class_sizes: Vec<usize>,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<usize>,
    pub normal_abelian_subgroups: Vec<NormalAbelian>,
    pub is_simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalAbelian {
    pub order: usize,
    pub rank: usize,
    pub invariants: Vec<usize>,
    pub quotient: AbstractGroupId,
    #[serde(skip)]
    pub elements: Subset,
}

pub fn structure(g: &FiniteGroup) -> GroupStructure {
    let classes = g.conjugacy_classes();
    let mut class_sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    let derived = g.derived_subgroup();
    let (ab, _) = g.quotient(&derived);
    let ab_all: Vec<usize> = (0..ab.order()).collect();
    let normals = g.normal_subgroups();
    let normal_abelian_subgroups = normals
        .iter()
        .filter(|s| g.subgroup_is_abelian(s))
        .map(|s| {
            let invariants = g.abelian_invariants(s);
            NormalAbelian {
                order: s.len(),
                rank: invariants.len(),
                invariants,
                quotient: g.quotient(s).0.recognize(),
                elements: s.clone(),
            }
        })
        .collect();
    GroupStructure {
        order: g.order(),
        is_abelian: g.is_abelian(),
        class_sizes,
        order_histogram: g.order_histogram(),
        center_order: g.center().len(),
        derived_order: derived.len(),
        abelianization: ab.abelian_invariants(&ab_all),
        normal_abelian_subgroups,
        is_simple: normals.len() == 2,
    }
}

pub fn recognize(g: &FiniteGroup) -> AbstractGroupId {
    g.recognize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(n, k)
    }

    #[test]
    fn cyclic_order_five() {
        let g = ProjectiveGroup::close(&[Matrix::diag(&[z(5, 1), Cyclotomic::one()])], true).unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn canonical_form_examples() {
        let two = Cyclotomic::from_int(2);
        let m = Matrix::diag(&[two.clone(), two.clone(), two]);
        assert!(projective_canonical(&m).is_identity());
        let m = Matrix::from_int_rows(&[&[0, 3], &[1, 0]]);
        let c = projective_canonical(&m);
        assert_eq!(c.get(0, 1), &Cyclotomic::one());
        assert_eq!(c.get(1, 0), &Cyclotomic::from_rational(&rat(1, 3)));
        let w = z(3, 1);
        let a = Matrix::from_rows(vec![
            vec![Cyclotomic::zero(), w.clone(), Cyclotomic::from_int(2)],
            vec![Cyclotomic::one(), Cyclotomic::zero(), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::zero(), w.clone()],
        ])
        .unwrap();
        assert_eq!(projective_canonical(&a.scale(&w)), projective_canonical(&a));
        let c = projective_canonical(&a);
        assert_eq!(projective_canonical(&c), c);
    }

    #[test]
    fn projective_versus_exact_equality() {
        let m = Matrix::diag(&[z(4, 1), Cyclotomic::from_int(-1)]);
        assert_eq!(ProjectiveGroup::close(std::slice::from_ref(&m), true).unwrap().order(), 4);
        assert_eq!(ProjectiveGroup::close(&[m], false).unwrap().order(), 4);
        let s = Matrix::scalar(2, &z(4, 1));
        assert_eq!(ProjectiveGroup::close(std::slice::from_ref(&s), true).unwrap().order(), 1);
        assert_eq!(ProjectiveGroup::close(&[s], false).unwrap().order(), 4);
    }

    #[test]
    fn order_cap_and_singular_generators() {
        let t = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(ProjectiveGroup::close_with_cap(&[t], true, 50).unwrap_err(), Error::OrderCapExceeded { cap: 50 });
        let s = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            ProjectiveGroup::close(&[Matrix::identity(2), s], true).unwrap_err(),
            Error::NonInvertibleGenerator { index: 1 }
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let g = ProjectiveGroup::close(
            &[Matrix::diag(&[z(3, 1), Cyclotomic::one()]), Matrix::from_int_rows(&[&[0, 1], &[1, 0]])],
            true,
        )
        .unwrap();
        let again = ProjectiveGroup::close(g.elements(), true).unwrap();
        assert_eq!(again.order(), g.order());
        assert!(g.elements().iter().all(|m| again.contains(m)));
    }

    #[test]
    fn trivial_lift_is_the_center() {
        let g = ProjectiveGroup::close(&[Matrix::identity(3)], true).unwrap();
        let l = sl_lift(&g).unwrap();
        assert_eq!(l.order(), 3);
        assert!(l.elements().iter().all(Matrix::is_scalar));
    }

    #[test]
    fn c6_structure() {
        let g = ProjectiveGroup::close(&[Matrix::diag(&[z(6, 1), Cyclotomic::one()])], true).unwrap();
        let s = structure(g.abstract_group());
        assert!(s.is_abelian);
        assert_eq!(s.derived_order, 1);
        assert_eq!(s.abelianization, vec![6]);
        assert_eq!(recognize(g.abstract_group()), AbstractGroupId::Cyclic(6));
    }
}
