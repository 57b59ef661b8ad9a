//! Equivariant coregularity of P², P¹×P¹, F₁ and the del Pezzo surfaces of
//! degree 7 and 6, with invariant anticanonical cycles or curves as witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dualcomplex::{
    act, coreg0_obstruction, log_cy_topology, ActionSpec, ActionSummary, ComplexAction, CurveConfiguration,
    GeneratorSpec, Obstruction, Symmetry, Topology,
};
use crate::error::{Error, Result};
use crate::exact_arith::{Cyclotomic, RootOfUnity};
use crate::invariants::{
    diagonal_11_curve, monomial_labels, nondegenerate_member, pair_semi_invariant_character, pair_semi_invariants,
    semi_invariant_character, semi_invariants, FormDegree, MAX_DEGREE,
};
use crate::linalg::{projective_normalize, projectively_equal, Matrix, Vector};
use crate::matgroup::{goursat, models, presets, AbstractGroupId, FiniteGroup, PairGroup, ProjectiveGroup};
use crate::picard::{is_anticanonical, pairing, DivisorClass, LatticeKind, SurfaceLattice};
use crate::projclassify::{
    classify_p2, classify_p3, eigen_points, fixed_locus, invariant_lines, line_basis, point_orbits,
    restriction_to_line, GroupTypeP2, GroupTypeP3, P3Kind, ProjectivePoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    P2,
    Quadric,
    F1,
    Dp7,
    Dp6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exceptionality {
    Exceptional,
    WeaklyExceptionalOnly,
    NotWeaklyExceptional,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rigidity {
    SuperRigid,
    RigidNotSuper,
    NotRigid,
    NotApplicable,
}

/// An invariant cycle of curves with coefficient 1 whose sum is anticanonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub configuration: CurveConfiguration,
    pub lattice: LatticeKind,
    /// Divisor class of each component, in component order.
    pub classes: Vec<DivisorClass>,
    pub topology: Topology,
    /// Images of component ids under each group generator.
    pub generators: Vec<GeneratorSpec>,
    /// Abelian invariants of a factor acting trivially on every component.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trivial_factor: Vec<usize>,
    pub action: ActionSummary,
    pub anticanonical: bool,
    pub obstruction: Obstruction,
}

/// An invariant curve given by a semi-invariant form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveWitness {
    pub degree: FormDegree,
    pub monomials: Vec<String>,
    pub form: Vector,
    pub character: Vec<RootOfUnity>,
}

/// The exceptional curve of `F₁` with its anticanonical residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalCurveWitness {
    pub class: DivisorClass,
    pub residual: DivisorClass,
    /// `-K - E` meets the exceptional curve and the ruling nonnegatively.
    pub residual_nef: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Cycle(CycleWitness),
    Curve(CurveWitness),
    ExceptionalCurve(ExceptionalCurveWitness),
}

/// Goursat and diagonality data of a group on `P¹×P¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricSummary {
    pub a1: GroupTypeP2,
    pub a2: GroupTypeP2,
    pub k1: usize,
    pub k2: usize,
    pub r: AbstractGroupId,
    pub g0_order: usize,
    pub swaps_factors: bool,
    pub diagonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub p3_type: Option<P3Kind>,
    pub coregularity: u8,
    pub lct_gt_1: bool,
    /// Exact value of `lct_G`, where known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lct: Option<String>,
    pub exceptionality: Exceptionality,
    pub rigidity: Rigidity,
    pub surface: SurfaceKind,
    pub group_order: usize,
    pub structure: AbstractGroupId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadric: Option<QuadricSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ClassificationReport {
    /// Broken consistency rules, empty for a sound report.
    pub fn consistency_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if (self.coregularity == 2) != self.lct_gt_1 {
            out.push("coregularity 2 and lct > 1 disagree".to_string());
        }
        if self.surface == SurfaceKind::P2 {
            let exc = self.exceptionality == Exceptionality::Exceptional;
            let sup = self.rigidity == Rigidity::SuperRigid;
            if exc != (self.coregularity == 2) || sup != exc {
                out.push("coregularity 2, exceptional and super-rigid disagree".to_string());
            }
        }
        if self.coregularity <= 1 && self.witness.is_none() {
            out.push(format!("coregularity {} without a witness", self.coregularity));
        }
        out
    }
}

type Key = (char, Vec<usize>);

/// A cycle of curves keyed by the points that define them: `('L', [i, j])`
/// is the line through points `i` and `j`, `('E', [i])` the exceptional
/// curve over point `i`.
struct CycleModel {
    keys: Vec<Key>,
    labels: Vec<&'static str>,
    classes: Vec<DivisorClass>,
    lattice: SurfaceLattice,
}

impl CycleModel {
    fn configuration(&self) -> CurveConfiguration {
        let n = self.keys.len() as u32;
        let mut c = CurveConfiguration::cycle(n);
        for (comp, label) in c.components.iter_mut().zip(&self.labels) {
            comp.label = Some(label.to_string());
        }
        c
    }

    fn generator(&self, image: impl Fn(&Key) -> Key) -> Result<GeneratorSpec> {
        let mut components = BTreeMap::new();
        for (i, k) in self.keys.iter().enumerate() {
            let target = image(k);
            let j = self
                .keys
                .iter()
                .position(|x| *x == target)
                .ok_or_else(|| Error::NotAnAction("the group does not preserve the witness cycle".into()))?;
            components.insert(i as u32, j as u32);
        }
        Ok(GeneratorSpec { components, crossings: None })
    }

    /// Generators acting on the defining points through `perms`.
    fn point_generators(&self, perms: &[Vec<usize>]) -> Result<Vec<GeneratorSpec>> {
        perms
            .iter()
            .map(|p| {
                self.generator(|(c, pts)| {
                    let mut v: Vec<usize> = pts.iter().map(|&i| p[i]).collect();
                    v.sort_unstable();
                    (*c, v)
                })
            })
            .collect()
    }

    fn witness(&self, group: &FiniteGroup, generators: Vec<GeneratorSpec>) -> Result<CycleWitness> {
        let config = self.configuration();
        let syms = generators
            .iter()
            .map(|g| Symmetry::from_ids(&config, &g.components, g.crossings.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let action = ComplexAction::new(&config, group, &syms)?;
        finish_cycle(config, self, generators, Vec::new(), &action)
    }
}

fn finish_cycle(
    configuration: CurveConfiguration,
    model: &CycleModel,
    generators: Vec<GeneratorSpec>,
    trivial_factor: Vec<usize>,
    action: &ComplexAction,
) -> Result<CycleWitness> {
    let topology = log_cy_topology(&configuration)?;
    let summed: Vec<(DivisorClass, u32)> = model.classes.iter().map(|c| (c.clone(), 1)).collect();
    Ok(CycleWitness {
        anticanonical: is_anticanonical(&summed, &model.lattice, 1)?,
        obstruction: coreg0_obstruction(action)?,
        action: action.summary(),
        configuration,
        lattice: model.lattice.kind,
        classes: model.classes.clone(),
        topology,
        generators,
        trivial_factor,
    })
}

fn line(i: usize, j: usize) -> Key {
    ('L', vec![i.min(j), i.max(j)])
}

fn position(pts: &[ProjectivePoint], q: &ProjectivePoint) -> Option<usize> {
    pts.iter().position(|p| projectively_equal(p.coords(), q.coords()))
}

/// Permutation of `pts` induced by each generator of the group.
fn point_permutations(g: &ProjectiveGroup, pts: &[ProjectivePoint]) -> Result<Vec<Vec<usize>>> {
    g.abstract_group()
        .generators()
        .iter()
        .map(|&i| {
            let m = g.element(i);
            pts.iter()
                .map(|p| {
                    position(pts, &p.apply(m))
                        .ok_or_else(|| Error::NotAnAction("witness points are not permuted by the group".into()))
                })
                .collect()
        })
        .collect()
}

fn non_collinear(a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> bool {
    let m = Matrix::from_columns(&[a.coords().to_vec(), b.coords().to_vec(), c.coords().to_vec()]);
    !m.det().is_zero()
}

/// Points fixed by the whole group: isolated ones and basis points of
/// positive-dimensional fixed loci.
fn fixed_candidates(g: &ProjectiveGroup) -> Result<Vec<ProjectivePoint>> {
    let locus = fixed_locus(g)?;
    let mut pts = locus.points.clone();
    for s in &locus.subspaces {
        for j in 0..s.cols() {
            pts.push(ProjectivePoint::new(&s.column(j)).expect("nonzero"));
        }
    }
    Ok(pts)
}

fn is_fixed(g: &ProjectiveGroup, p: &ProjectivePoint) -> bool {
    g.generators().iter().all(|m| projectively_equal(p.apply(m).coords(), p.coords()))
}

/// Three non-collinear fixed points, the first equal to `first` if given.
fn fixed_triangle(g: &ProjectiveGroup, first: Option<&ProjectivePoint>) -> Result<[ProjectivePoint; 3]> {
    let cands = fixed_candidates(g)?;
    let heads: Vec<ProjectivePoint> = match first {
        Some(p) => vec![p.clone()],
        None => cands.clone(),
    };
    for p in &heads {
        for (i, q) in cands.iter().enumerate() {
            for r in &cands[i + 1..] {
                if non_collinear(p, q, r) {
                    return Ok([p.clone(), q.clone(), r.clone()]);
                }
            }
        }
    }
    Err(Error::NotClosed("no triangle of fixed points".into()))
}

/// Two points of `P¹` forming an invariant set: both fixed points of a
/// cyclic group, else the first orbit of size 2.
pub fn invariant_pair(a: &ProjectiveGroup) -> Result<Option<[ProjectivePoint; 2]>> {
    let e = |i: usize| {
        let mut v = vec![Cyclotomic::zero(), Cyclotomic::zero()];
        v[i] = Cyclotomic::one();
        ProjectivePoint::new(&v).expect("nonzero")
    };
    if a.order() == 1 {
        return Ok(Some([e(0), e(1)]));
    }
    let orbits = point_orbits(a, &eigen_points(a)?);
    let singles: Vec<&ProjectivePoint> = orbits.iter().filter(|o| o.len() == 1).map(|o| &o[0]).collect();
    if let [p, q, ..] = singles.as_slice() {
        return Ok(Some([(*p).clone(), (*q).clone()]));
    }
    Ok(orbits.iter().find(|o| o.len() == 2).map(|o| [o[0].clone(), o[1].clone()]))
}

/// Fixed point `p` and an invariant pair on an invariant line missing `p`
/// with dihedral image.
fn b1_triangle(g: &ProjectiveGroup, p: &ProjectivePoint) -> Result<[ProjectivePoint; 3]> {
    for l in invariant_lines(g)? {
        if crate::linalg::dot(p.coords(), l.coords()).is_zero() {
            continue;
        }
        let image = restriction_to_line(g, &l)?;
        if !matches!(classify_p2(&image)?.kind, GroupTypeP2::Dihedral(_)) {
            continue;
        }
        if let Some([u, v]) = invariant_pair(&image)? {
            let basis = line_basis(&l);
            let lift = |x: &ProjectivePoint| ProjectivePoint::new(&basis.mul_vec(x.coords())).expect("nonzero");
            return Ok([p.clone(), lift(&u), lift(&v)]);
        }
    }
    Err(Error::NotClosed("no invariant line with a dihedral image".into()))
}

fn p2_triangle(g: &ProjectiveGroup, t: &GroupTypeP3) -> Result<[ProjectivePoint; 3]> {
    match t.kind {
        P3Kind::A => fixed_triangle(g, None),
        P3Kind::B1 => b1_triangle(g, t.witness.fixed_point.as_ref().ok_or(Error::NoFixedPoint)?),
        P3Kind::C | P3Kind::D => {
            let n = t.witness.normal_subgroup.as_ref().ok_or(Error::UnclassifiableGroup { order: g.order() })?;
            match n.eigenpoints.as_slice() {
                [a, b, c] => Ok([a.clone(), b.clone(), c.clone()]),
                _ => Err(Error::NotClosed("normal subgroup has no eigen-triangle".into())),
            }
        }
        _ => Err(Error::NotClosed(format!("type {} has no invariant triangle", t.kind))),
    }
}

fn triangle_witness(g: &ProjectiveGroup, pts: &[ProjectivePoint; 3]) -> Result<CycleWitness> {
    let lat = SurfaceLattice::p2();
    let h = lat.line().expect("P2 has a line class");
    let model = CycleModel {
        keys: vec![line(1, 2), line(0, 2), line(0, 1)],
        labels: vec!["line", "line", "line"],
        classes: vec![h.clone(), h.clone(), h],
        lattice: lat,
    };
    let gens = model.point_generators(&point_permutations(g, pts)?)?;
    model.witness(g.abstract_group(), gens)
}

/// Lowest-degree invariant curve of degree at most 3.
fn plane_curve_witness(g: &ProjectiveGroup) -> Result<Option<CurveWitness>> {
    for d in 1..=3 {
        let rep = semi_invariants(g, d)?;
        if let Some(line) = rep.lines.first() {
            let form = line.sample_form.clone();
            let character = semi_invariant_character(g, &form, d)?
                .ok_or_else(|| Error::NotClosed("sample form is not semi-invariant".into()))?;
            return Ok(Some(CurveWitness {
                degree: FormDegree::Degree(d),
                monomials: rep.monomials,
                form,
                character,
            }));
        }
    }
    Ok(None)
}

fn p2_columns(kind: P3Kind, structure: AbstractGroupId) -> (u8, Exceptionality, Rigidity) {
    use Exceptionality::*;
    use Rigidity::*;
    match kind {
        P3Kind::A | P3Kind::B1 => (0, NotWeaklyExceptional, NotRigid),
        P3Kind::B2 => (1, NotWeaklyExceptional, NotRigid),
        P3Kind::C if structure == AbstractGroupId::Alt4 => (0, NotWeaklyExceptional, NotRigid),
        P3Kind::D if structure == AbstractGroupId::Sym4 => (0, NotWeaklyExceptional, NotRigid),
        P3Kind::C | P3Kind::D => (0, WeaklyExceptionalOnly, RigidNotSuper),
        P3Kind::E => (1, WeaklyExceptionalOnly, RigidNotSuper),
        P3Kind::H => (1, NotWeaklyExceptional, RigidNotSuper),
        P3Kind::F | P3Kind::G | P3Kind::I | P3Kind::K => (2, Exceptional, SuperRigid),
    }
}

fn lct_value(kind: P3Kind) -> Option<String> {
    match kind {
        P3Kind::I => Some("4/3".into()),
        P3Kind::K => Some("2".into()),
        _ => None,
    }
}

pub fn coreg_p2(g: &ProjectiveGroup) -> Result<ClassificationReport> {
    let t = classify_p3(g)?;
    let structure = g.abstract_group().recognize();
    let (coregularity, exceptionality, rigidity) = p2_columns(t.kind, structure);
    let witness = match coregularity {
        0 => Some(Witness::Cycle(triangle_witness(g, &p2_triangle(g, &t)?)?)),
        1 => Some(Witness::Curve(
            plane_curve_witness(g)?.ok_or_else(|| Error::NotClosed(format!("type {} has no curve of degree <= 3", t.kind)))?,
        )),
        _ => None,
    };
    Ok(ClassificationReport {
        p3_type: Some(t.kind),
        coregularity,
        lct_gt_1: coregularity == 2,
        lct: lct_value(t.kind),
        exceptionality,
        rigidity,
        surface: SurfaceKind::P2,
        group_order: g.order(),
        structure,
        quadric: None,
        witness,
    })
}

/// A group on `P¹×P¹` with its factor-preserving part and Goursat data.
#[derive(Clone, Debug)]
pub struct QuadricGroupData {
    pub group: PairGroup,
    pub g0: PairGroup,
    pub a1: ProjectiveGroup,
    pub a2: ProjectiveGroup,
    pub summary: QuadricSummary,
}

impl QuadricGroupData {
    pub fn new(group: &PairGroup) -> Result<Self> {
        let g0 = group.preserving_subgroup()?;
        let gd = goursat(&g0)?;
        let t1 = classify_p2(&gd.a1)?.kind;
        let t2 = classify_p2(&gd.a2)?.kind;
        let swaps = group.swaps_factors();
        if swaps && t1 != t2 {
            return Err(Error::InvalidQuadricData(format!("a factor swap between non-isomorphic {t1} and {t2}")));
        }
        let diagonal = diagonal_11_curve(&g0)?.diagonal;
        let summary = QuadricSummary {
            a1: t1,
            a2: t2,
            k1: gd.k1.len(),
            k2: gd.k2.len(),
            r: gd.r,
            g0_order: g0.order(),
            swaps_factors: swaps,
            diagonal,
        };
        Ok(QuadricGroupData { group: group.clone(), g0, a1: gd.a1, a2: gd.a2, summary })
    }
}

/// Coregularity on `P¹×P¹` from the types of the factor images and
/// diagonality.
pub fn quadric_coregularity(a1: GroupTypeP2, a2: GroupTypeP2, diagonal: bool) -> u8 {
    match (a1.is_cyclic_or_dihedral(), a2.is_cyclic_or_dihedral()) {
        (true, true) => 0,
        (true, false) | (false, true) => 1,
        (false, false) if diagonal => 1,
        (false, false) => 2,
    }
}

fn product_of_linear_forms(pts: &[ProjectivePoint; 2]) -> Vector {
    // the form vanishing at (u0 : u1) is u1*x0 - u0*x1
    let lin = |p: &ProjectivePoint| (p.coords()[1].clone(), -&p.coords()[0]);
    let (a, b) = lin(&pts[0]);
    let (c, d) = lin(&pts[1]);
    vec![&a * &c, &(&a * &d) + &(&b * &c), &b * &d]
}

fn quadric_cycle(data: &QuadricGroupData) -> Result<CycleWitness> {
    let s1 = invariant_pair(&data.a1)?.ok_or_else(|| Error::NotClosed("A1 has no invariant pair".into()))?;
    let swap = data.group.elements().iter().find(|e| e.swap);
    let s2 = match swap {
        Some(e) => [s1[0].apply(&e.b), s1[1].apply(&e.b)],
        None => invariant_pair(&data.a2)?.ok_or_else(|| Error::NotClosed("A2 has no invariant pair".into()))?,
    };
    let lat = SurfaceLattice::quadric();
    let (f1, f2) = (lat.fiber(1).expect("quadric"), lat.fiber(2).expect("quadric"));
    // 'V' is {s1[i]} × P¹, 'H' is P¹ × {s2[i]}
    let model = CycleModel {
        keys: vec![('V', vec![0]), ('H', vec![0]), ('V', vec![1]), ('H', vec![1])],
        labels: vec!["fiber", "fiber", "fiber", "fiber"],
        classes: vec![f1.clone(), f2.clone(), f1, f2],
        lattice: lat,
    };
    let find = |set: &[ProjectivePoint; 2], q: ProjectivePoint| {
        position(set, &q).ok_or_else(|| Error::NotAnAction("fiber pair is not invariant".into()))
    };
    let g = &data.group;
    let mut gens = Vec::new();
    for &i in g.abstract_group().generators() {
        let e = &g.elements()[i];
        let mut images = BTreeMap::new();
        for k in 0..2 {
            let (v, h) = if e.swap {
                (('H', find(&s2, s1[k].apply(&e.b))?), ('V', find(&s1, s2[k].apply(&e.a))?))
            } else {
                (('V', find(&s1, s1[k].apply(&e.a))?), ('H', find(&s2, s2[k].apply(&e.b))?))
            };
            images.insert(('V', vec![k]), (v.0, vec![v.1]));
            images.insert(('H', vec![k]), (h.0, vec![h.1]));
        }
        gens.push(model.generator(|k| images[k].clone())?);
    }
    model.witness(g.abstract_group(), gens)
}

fn quadric_curve(data: &QuadricGroupData) -> Result<CurveWitness> {
    let g = &data.group;
    let s = &data.summary;
    let (degree, form) = if s.a1.is_cyclic_or_dihedral() != s.a2.is_cyclic_or_dihedral() {
        let first = s.a1.is_cyclic_or_dihedral();
        let a = if first { &data.a1 } else { &data.a2 };
        let pair = invariant_pair(a)?.ok_or_else(|| Error::NotClosed("no invariant fiber pair".into()))?;
        let form = product_of_linear_forms(&pair);
        if first {
            ((2, 0), form)
        } else {
            ((0, 2), form)
        }
    } else {
        let rep = pair_semi_invariants(g, 1, 1)?;
        let form = rep
            .lines
            .iter()
            .find_map(|l| nondegenerate_member(l.basis.as_ref().expect("basis kept in memory")))
            .ok_or_else(|| Error::NotClosed("no irreducible invariant (1,1) curve".into()))?;
        ((1, 1), form)
    };
    let form: Vector = projective_normalize(&form).expect("nonzero form").into_iter().map(|x| x.reduce_conductor()).collect();
    let character = pair_semi_invariant_character(g, &form, degree.0, degree.1)?
        .ok_or_else(|| Error::NotClosed("witness curve is not invariant".into()))?;
    let degree = FormDegree::Bidegree(degree.0, degree.1);
    Ok(CurveWitness { degree, monomials: monomial_labels(4, degree), form, character })
}

pub fn coreg_quadric(data: &QuadricGroupData) -> Result<ClassificationReport> {
    let s = &data.summary;
    let coregularity = quadric_coregularity(s.a1, s.a2, s.diagonal);
    let witness = match coregularity {
        0 => Some(Witness::Cycle(quadric_cycle(data)?)),
        1 => Some(Witness::Curve(quadric_curve(data)?)),
        _ => None,
    };
    Ok(ClassificationReport {
        p3_type: None,
        coregularity,
        lct_gt_1: coregularity == 2,
        lct: None,
        exceptionality: Exceptionality::NotApplicable,
        rigidity: Rigidity::NotApplicable,
        surface: SurfaceKind::Quadric,
        group_order: data.group.order(),
        structure: data.group.abstract_group().recognize(),
        quadric: Some(s.clone()),
        witness,
    })
}

/// `F₁` as the blowup of P² at a fixed point of `g`; the first fixed point
/// is used when `point` is absent.
pub fn coreg_f1(g: &ProjectiveGroup, point: Option<&ProjectivePoint>) -> Result<ClassificationReport> {
    if g.dim() != 3 {
        return Err(Error::DimensionMismatch("F1 needs a group on P2".into()));
    }
    let p = match point {
        Some(p) if p.dim() == 3 && is_fixed(g, p) => p.clone(),
        Some(_) => return Err(Error::NoFixedPoint),
        None => fixed_candidates(g)?.into_iter().next().ok_or(Error::NoFixedPoint)?,
    };
    let t = classify_p3(g)?;
    let lat = SurfaceLattice::blowup(1)?;
    let e = lat.exceptional(1).expect("one exceptional curve");
    let (coregularity, witness) = match t.kind {
        P3Kind::A | P3Kind::B1 => {
            let tri = if t.kind == P3Kind::A { fixed_triangle(g, Some(&p))? } else { b1_triangle(g, &p)? };
            let h = lat.line().expect("line class");
            let he = &h - &e;
            let model = CycleModel {
                keys: vec![('E', vec![0]), line(0, 1), line(1, 2), line(0, 2)],
                labels: vec!["exceptional", "line", "line", "line"],
                classes: vec![e.clone(), he.clone(), h, he],
                lattice: lat,
            };
            let gens = model.point_generators(&point_permutations(g, &tri)?)?;
            (0, Witness::Cycle(model.witness(g.abstract_group(), gens)?))
        }
        P3Kind::B2 => {
            let residual = &lat.anticanonical() - &e;
            let ruling = &lat.line().expect("line class") - &e;
            let residual_nef = pairing(&residual, &e, &lat)? >= 0 && pairing(&residual, &ruling, &lat)? >= 0;
            (1, Witness::ExceptionalCurve(ExceptionalCurveWitness { class: e, residual, residual_nef }))
        }
        _ => return Err(Error::NoFixedPoint),
    };
    Ok(ClassificationReport {
        p3_type: Some(t.kind),
        coregularity,
        lct_gt_1: false,
        lct: None,
        exceptionality: Exceptionality::NotApplicable,
        rigidity: Rigidity::NotApplicable,
        surface: SurfaceKind::F1,
        group_order: g.order(),
        structure: g.abstract_group().recognize(),
        quadric: None,
        witness: Some(witness),
    })
}

/// A group on P² preserving the pair of points blown up to get `S_7`.
#[derive(Clone, Debug)]
pub struct Dp7Data {
    pub group: ProjectiveGroup,
    pub points: [ProjectivePoint; 2],
}

pub fn coreg_dp7(data: &Dp7Data) -> Result<ClassificationReport> {
    let g = &data.group;
    let [p1, p2] = &data.points;
    let bad = |m: &str| Error::InvalidDp7Data(m.to_string());
    if g.dim() != 3 || p1.dim() != 3 || p2.dim() != 3 {
        return Err(bad("points and group must live on P2"));
    }
    if projectively_equal(p1.coords(), p2.coords()) {
        return Err(bad("the two points coincide"));
    }
    let pair = [p1.clone(), p2.clone()];
    for m in g.generators() {
        if position(&pair, &p1.apply(m)).is_none() || position(&pair, &p2.apply(m)).is_none() {
            return Err(bad("the point pair is not invariant"));
        }
    }
    // a fixed point off the line through the pair, by complete reducibility
    let q = fixed_candidates(g)?
        .into_iter()
        .find(|q| non_collinear(p1, p2, q))
        .ok_or_else(|| bad("no fixed point off the line through the pair"))?;
    let pts = [p1.clone(), p2.clone(), q];
    let lat = SurfaceLattice::blowup(2)?;
    let h = lat.line().expect("line class");
    let (e1, e2) = (lat.exceptional(1).expect("E1"), lat.exceptional(2).expect("E2"));
    let model = CycleModel {
        keys: vec![('E', vec![0]), line(0, 1), ('E', vec![1]), line(1, 2), line(0, 2)],
        labels: vec!["exceptional", "line", "exceptional", "line", "line"],
        classes: vec![e1.clone(), lat.line_through(&[1, 2]).expect("line"), e2.clone(), &h - &e2, &h - &e1],
        lattice: lat,
    };
    let gens = model.point_generators(&point_permutations(g, &pts).map_err(|_| bad("group does not permute the points"))?)?;
    let witness = model.witness(g.abstract_group(), gens)?;
    Ok(zero_report(SurfaceKind::Dp7, g.order(), g.abstract_group().recognize(), witness))
}

fn zero_report(surface: SurfaceKind, order: usize, structure: AbstractGroupId, witness: CycleWitness) -> ClassificationReport {
    ClassificationReport {
        p3_type: None,
        coregularity: 0,
        lct_gt_1: false,
        lct: None,
        exceptionality: Exceptionality::NotApplicable,
        rigidity: Rigidity::NotApplicable,
        surface,
        group_order: order,
        structure,
        quadric: None,
        witness: Some(Witness::Cycle(witness)),
    }
}

/// A group on `S_6`: its symmetries of the hexagon of (−1)-curves, numbered
/// `E1, L12, E2, L23, E3, L13` from 0, times a finite subgroup of the torus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dp6Data {
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    /// Abelian invariants of the torus part.
    #[serde(default)]
    pub torus: Vec<usize>,
}

impl Dp6Data {
    /// The full hexagon symmetry group `D_12` times the given torus part.
    pub fn full(torus: &[usize]) -> Self {
        let rot = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let refl = (0..6).map(|i| (i, (6 - i) % 6)).collect();
        Dp6Data {
            generators: vec![
                GeneratorSpec { components: rot, crossings: None },
                GeneratorSpec { components: refl, crossings: None },
            ],
            torus: torus.to_vec(),
        }
    }
}

pub fn coreg_dp6(data: &Dp6Data) -> Result<ClassificationReport> {
    let bad = |e: Error| Error::InvalidDp6Data(e.to_string());
    if data.torus.contains(&0) {
        return Err(Error::InvalidDp6Data("torus factor of order 0".into()));
    }
    let t = models::abelian(&data.torus);
    let all: Vec<usize> = (0..t.order()).collect();
    if t.abelian_rank(&all) > 2 {
        return Err(Error::InvalidDp6Data("a finite subgroup of a 2-dimensional torus has rank at most 2".into()));
    }
    let lat = SurfaceLattice::blowup(3)?;
    let e = |i| lat.exceptional(i).expect("exceptional class");
    let l = |i, j| lat.line_through(&[i, j]).expect("line class");
    let model = CycleModel {
        keys: vec![('E', vec![1]), line(1, 2), ('E', vec![2]), line(2, 3), ('E', vec![3]), line(1, 3)],
        labels: vec!["E1", "L12", "E2", "L23", "E3", "L13"],
        classes: vec![e(1), l(1, 2), e(2), l(2, 3), e(3), l(1, 3)],
        lattice: lat,
    };
    let config = model.configuration();
    let spec = ActionSpec { generators: data.generators.clone(), trivial_factor: data.torus.clone() };
    let action = act(&config, &spec).map_err(bad)?;
    let witness = finish_cycle(config, &model, data.generators.clone(), data.torus.clone(), &action)?;
    Ok(zero_report(SurfaceKind::Dp6, action.group().order(), action.group().recognize(), witness))
}

/// A surface together with the acting group.
#[derive(Clone, Debug)]
pub enum SurfaceSpec {
    P2(ProjectiveGroup),
    Quadric(PairGroup),
    F1 { group: ProjectiveGroup, point: Option<ProjectivePoint> },
    Dp7(Dp7Data),
    Dp6(Dp6Data),
}

pub fn classify(spec: &SurfaceSpec) -> Result<ClassificationReport> {
    match spec {
        SurfaceSpec::P2(g) => coreg_p2(g),
        SurfaceSpec::Quadric(g) => coreg_quadric(&QuadricGroupData::new(g)?),
        SurfaceSpec::F1 { group, point } => coreg_f1(group, point.as_ref()),
        SurfaceSpec::Dp7(d) => coreg_dp7(d),
        SurfaceSpec::Dp6(d) => coreg_dp6(d),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConicBundleVerdict {
    PossiblyZero,
    PositiveCertified,
}

/// A conic bundle whose fiber or base image is `A4`, `S4` or `A5` has
/// positive coregularity. The converse does not hold.
pub fn conic_bundle_obstruction(fiber: GroupTypeP2, base: GroupTypeP2) -> ConicBundleVerdict {
    if fiber.is_polyhedral() || base.is_polyhedral() {
        ConicBundleVerdict::PositiveCertified
    } else {
        ConicBundleVerdict::PossiblyZero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusReport {
    pub normalizes_torus: bool,
    /// Outcome of the search for an invariant triangle among special
    /// points on P²; absent on other surfaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle_found: Option<bool>,
}

/// Orbit of `p` if it has at most `limit` points.
fn small_orbit(g: &ProjectiveGroup, p: &ProjectivePoint, limit: usize) -> Option<Vec<ProjectivePoint>> {
    let mut out: Vec<ProjectivePoint> = vec![p.clone()];
    for m in g.elements() {
        let q = p.apply(m);
        if position(&out, &q).is_none() {
            out.push(q);
            if out.len() > limit {
                return None;
            }
        }
    }
    Some(out)
}

/// Searches an invariant set of three non-collinear points among the fixed
/// points and eigenpoints of single elements.
pub fn find_invariant_triangle(g: &ProjectiveGroup) -> Result<Option<[ProjectivePoint; 3]>> {
    let mut cands = fixed_candidates(g)?;
    cands.extend(eigen_points(g)?);
    let mut orbits: Vec<Vec<ProjectivePoint>> = Vec::new();
    for p in &cands {
        if orbits.iter().any(|o| position(o, p).is_some()) {
            continue;
        }
        if let Some(o) = small_orbit(g, p, 3) {
            orbits.push(o);
        }
    }
    let ok = |a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint| non_collinear(a, b, c);
    for o in orbits.iter().filter(|o| o.len() == 3) {
        if ok(&o[0], &o[1], &o[2]) {
            return Ok(Some([o[0].clone(), o[1].clone(), o[2].clone()]));
        }
    }
    let ones: Vec<&ProjectivePoint> = orbits.iter().filter(|o| o.len() == 1).map(|o| &o[0]).collect();
    for o in orbits.iter().filter(|o| o.len() == 2) {
        if let Some(p) = ones.iter().find(|p| ok(p, &o[0], &o[1])) {
            return Ok(Some([(*p).clone(), o[0].clone(), o[1].clone()]));
        }
    }
    for (i, a) in ones.iter().enumerate() {
        for (j, b) in ones.iter().enumerate().skip(i + 1) {
            for c in &ones[j + 1..] {
                if ok(a, b, c) {
                    return Ok(Some([(*a).clone(), (*b).clone(), (*c).clone()]));
                }
            }
        }
    }
    Ok(None)
}

/// Whether the group lies in the normalizer of a two-dimensional torus,
/// decided as coregularity 0.
pub fn normalizes_torus(spec: &SurfaceSpec) -> Result<TorusReport> {
    let report = classify(spec)?;
    let normalizes_torus = report.coregularity == 0;
    let triangle_found = match spec {
        SurfaceSpec::P2(g) => {
            let found = find_invariant_triangle(g)?.is_some();
            if found && !normalizes_torus {
                return Err(Error::NotClosed("invariant triangle found for a group of positive coregularity".into()));
            }
            Some(found)
        }
        _ => None,
    };
    Ok(TorusReport { normalizes_torus, triangle_found })
}

/// Rows of the table of finite subgroups of `Aut(P²)`: label and preset.
pub const TABLE1_ROWS: [(&str, &str); 13] = [
    ("A", "typeA_diag9"),
    ("B1", "typeB1_d6"),
    ("B2", "typeB2_tetra"),
    ("A4 ≅ C2^2 ⋊ C3", "typeC_a4"),
    ("C but not A4", "typeC21"),
    ("S4 ≅ C2^2 ⋊ S3", "typeD_s4"),
    ("D but not S4", "typeD54"),
    ("E", "typeE36"),
    ("F", "typeF72"),
    ("G", "hessian216"),
    ("H", "typeH60"),
    ("I", "klein168"),
    ("K", "valentiner"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub group: String,
    pub preset: String,
    pub coregularity: String,
    pub lct: String,
    pub exceptionality: String,
    pub rigidity: String,
    pub report: ClassificationReport,
}

impl Table1Row {
    pub fn new(group: &str, preset: &str, report: ClassificationReport) -> Self {
        let lct = report.lct.clone().unwrap_or_else(|| if report.lct_gt_1 { "> 1".into() } else { "≤ 1".into() });
        let exceptionality = match report.exceptionality {
            Exceptionality::Exceptional => "yes",
            Exceptionality::WeaklyExceptionalOnly => "weakly",
            Exceptionality::NotWeaklyExceptional => "no",
            Exceptionality::NotApplicable => "n/a",
        };
        let rigidity = match report.rigidity {
            Rigidity::SuperRigid => "super",
            Rigidity::RigidNotSuper => "yes",
            Rigidity::NotRigid => "no",
            Rigidity::NotApplicable => "n/a",
        };
        Table1Row {
            group: group.into(),
            preset: preset.into(),
            coregularity: report.coregularity.to_string(),
            lct,
            exceptionality: exceptionality.into(),
            rigidity: rigidity.into(),
            report,
        }
    }

    pub fn cells(&self) -> [&str; 5] {
        [&self.group, &self.coregularity, &self.lct, &self.exceptionality, &self.rigidity]
    }
}

/// Classifies every row from its preset generators; rows run in parallel.
pub fn table1() -> Result<Vec<Table1Row>> {
    let results: Vec<Result<Table1Row>> = std::thread::scope(|s| {
        let handles: Vec<_> = TABLE1_ROWS
            .iter()
            .map(|&(label, preset)| {
                s.spawn(move || {
                    let g = presets::group(preset)?;
                    let report = coreg_p2(&g)?;
                    let row = Table1Row::new(label, preset, report);
                    let expected_type = label.chars().next().filter(|_| label.len() <= 2).map(|_| label);
                    let got = row.report.p3_type.map(|k| k.to_string());
                    if expected_type.is_some_and(|t| Some(t.to_string()) != got) {
                        return Err(Error::PresetSelfTestFailed(format!("{preset} classified as {got:?}, expected {label}")));
                    }
                    Ok(row)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table row worker panicked")).collect()
    });
    results.into_iter().collect()
}

pub const TABLE1_HEADER: [&str; 5] = ["Group", "G-coregularity", "lct_G", "Exceptionality", "G-rigidity"];

/// Aligned text rendering with the header row first.
pub fn render_table(rows: &[Table1Row]) -> String {
    let mut all: Vec<[&str; 5]> = vec![TABLE1_HEADER];
    all.extend(rows.iter().map(Table1Row::cells));
    let widths: Vec<usize> = (0..5).map(|c| all.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &all {
        let cells: Vec<String> =
            r.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

/// Preset pairs `(H, G)` with `H ⊂ G` in the same coordinates.
pub const PLANE_SUBGROUP_PAIRS: &[(&str, &str)] = &[
    ("typeC_a4", "typeD_s4"),
    ("typeC_heisenberg9", "typeE36"),
    ("typeE36", "typeF72"),
    ("typeF72", "hessian216"),
    ("typeD54", "hessian216"),
    ("typeA_cyclic7", "typeC21"),
    ("typeC21", "klein168"),
    ("typeC_a4", "icosa_so3"),
    ("icosa_so3", "valentiner"),
    ("typeA_cyclic3", "typeB1_d6"),
];

pub const QUADRIC_SUBGROUP_PAIRS: &[(&str, &str)] = &[
    ("pair_c3_x_1", "pair_c3_x_d8"),
    ("pair_1_x_d8", "pair_c3_x_d8"),
    ("pair_1_x_a5", "pair_d6_x_a5"),
    ("pair_d6_x_1", "pair_d6_x_a5"),
    ("pair_diag_a4", "pair_diag_s4"),
    ("pair_diag_a4", "pair_a4_c3_a4"),
    ("pair_a4_c3_a4", "pair_a4_x_a4"),
    ("pair_diag_a4", "pair_diag_a4_swap"),
];

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = self.p3_type {
            write!(f, "type {t}, ")?;
        }
        write!(f, "coregularity {}, lct {}", self.coregularity, if self.lct_gt_1 { "> 1" } else { "≤ 1" })?;
        if let Some(l) = &self.lct {
            write!(f, " (= {l})")?;
        }
        Ok(())
    }
}

/// Lowest degree of an invariant curve, searching up to `max`.
pub fn lowest_invariant_degree(g: &ProjectiveGroup, max: u32) -> Result<Option<u32>> {
    for d in 1..=max.min(MAX_DEGREE) {
        if semi_invariants(g, d)?.has_invariant_curve() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
