//! Types of finite subgroups of `PGL_2` and `PGL_3`, with fixed points and
//! invariant lines.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;
use crate::linalg::{joint_eigenspaces, projective_normalize, vec_key, JointEigenspace, Matrix, Vector};
use crate::matgroup::{lifted_generators, sl_lift, structure, AbstractGroupId, ProjectiveGroup, Subset};

/// A point of `P^{n-1}`, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(Vector);

impl ProjectivePoint {
    /// `None` for the zero vector.
    pub fn new(v: &[Cyclotomic]) -> Option<Self> {
        projective_normalize(v).map(|w| ProjectivePoint(w.into_iter().map(|x| x.reduce_conductor()).collect()))
    }

    pub fn coords(&self) -> &[Cyclotomic] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Image under a matrix acting on column vectors.
    pub fn apply(&self, m: &Matrix) -> ProjectivePoint {
        ProjectivePoint::new(&m.mul_vec(&self.0)).expect("invertible matrix")
    }

    fn sort_key(&self) -> Vec<crate::exact_arith::CycloKey> {
        vec_key(&self.0)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// Isolated fixed points together with positive-dimensional fixed loci.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub points: Vec<ProjectivePoint>,
    /// Column bases of fixed subspaces of dimension ≥ 2.
    pub subspaces: Vec<Matrix>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.subspaces.is_empty()
    }
}

fn sorted(mut pts: Vec<ProjectivePoint>) -> Vec<ProjectivePoint> {
    pts.sort_by_key(ProjectivePoint::sort_key);
    pts.dedup();
    pts
}

/// Common eigenspaces of the `SL`-lifted generators.
pub fn common_eigenspaces(g: &ProjectiveGroup) -> Result<Vec<JointEigenspace>> {
    let lifted = lifted_generators(g)?;
    let (ops, orders): (Vec<Matrix>, Vec<u32>) = lifted.into_iter().unzip();
    Ok(joint_eigenspaces(&ops, &orders))
}

pub fn fixed_locus(g: &ProjectiveGroup) -> Result<FixedLocus> {
    let spaces = common_eigenspaces(g)?;
    let mut points = Vec::new();
    let mut subspaces = Vec::new();
    for s in spaces {
        if s.dim() == 1 {
            points.push(ProjectivePoint::new(&s.basis.column(0)).expect("nonzero eigenvector"));
        } else {
            subspaces.push(s.basis);
        }
    }
    Ok(FixedLocus { points: sorted(points), subspaces })
}

/// Isolated fixed points of the group on `P^{n-1}`.
pub fn fixed_points(g: &ProjectiveGroup) -> Result<Vec<ProjectivePoint>> {
    Ok(fixed_locus(g)?.points)
}

/// Invariant lines of a group on `P²`, as points of the dual plane.
pub fn invariant_lines(g: &ProjectiveGroup) -> Result<Vec<ProjectivePoint>> {
    if g.dim() != 3 {
        return Err(Error::DimensionMismatch("invariant lines need a group on P2".into()));
    }
    fixed_points(&g.dual()?)
}

/// True when the group is diagonal in some basis.
pub fn is_diagonalizable(g: &ProjectiveGroup) -> Result<bool> {
    let spaces = common_eigenspaces(g)?;
    Ok(spaces.iter().map(JointEigenspace::dim).sum::<usize>() == g.dim())
}

/// Finite subgroups of `PGL_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupTypeP2 {
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Alt4,
    Sym4,
    Alt5,
}

impl GroupTypeP2 {
    pub fn from_abstract(id: AbstractGroupId) -> Option<Self> {
        Some(match id {
            AbstractGroupId::Trivial => GroupTypeP2::Cyclic(1),
            AbstractGroupId::Cyclic(n) => GroupTypeP2::Cyclic(n),
            AbstractGroupId::Dihedral(n) => GroupTypeP2::Dihedral(n),
            AbstractGroupId::Sym3 => GroupTypeP2::Dihedral(6),
            AbstractGroupId::Alt4 => GroupTypeP2::Alt4,
            AbstractGroupId::Sym4 => GroupTypeP2::Sym4,
            AbstractGroupId::Alt5 => GroupTypeP2::Alt5,
            AbstractGroupId::Other(_) => return None,
        })
    }

    pub fn order(&self) -> usize {
        match *self {
            GroupTypeP2::Cyclic(n) | GroupTypeP2::Dihedral(n) => n,
            GroupTypeP2::Alt4 => 12,
            GroupTypeP2::Sym4 => 24,
            GroupTypeP2::Alt5 => 60,
        }
    }

    pub fn is_cyclic_or_dihedral(&self) -> bool {
        matches!(self, GroupTypeP2::Cyclic(_) | GroupTypeP2::Dihedral(_))
    }

    /// `A_4`, `S_4` or `A_5`.
    pub fn is_polyhedral(&self) -> bool {
        !self.is_cyclic_or_dihedral()
    }
}

impl fmt::Display for GroupTypeP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTypeP2::Cyclic(n) => write!(f, "C{n}"),
            GroupTypeP2::Dihedral(n) => write!(f, "D{n}"),
            GroupTypeP2::Alt4 => write!(f, "A4"),
            GroupTypeP2::Sym4 => write!(f, "S4"),
            GroupTypeP2::Alt5 => write!(f, "A5"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1Classification {
    pub kind: GroupTypeP2,
    /// Smallest orbit among points with nontrivial stabilizer.
    pub min_orbit: usize,
}

/// Points of `P^{n-1}` fixed by some nontrivial element.
pub fn eigen_points(g: &ProjectiveGroup) -> Result<Vec<ProjectivePoint>> {
    let lift = sl_lift(g)?;
    let mut pts = Vec::new();
    for i in 1..lift.order() {
        let m = lift.element(i);
        if m.is_scalar() {
            continue;
        }
        let order = lift.element_order(i) as u32;
        for s in joint_eigenspaces(std::slice::from_ref(m), &[order]) {
            if s.dim() == 1 {
                pts.push(ProjectivePoint::new(&s.basis.column(0)).expect("nonzero"));
            }
        }
    }
    Ok(sorted(pts))
}

/// Orbit of a point under all elements of the group.
pub fn orbit(g: &ProjectiveGroup, p: &ProjectivePoint) -> Vec<ProjectivePoint> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in g.elements() {
        let q = p.apply(m);
        if seen.insert(q.sort_key()) {
            out.push(q);
        }
    }
    sorted(out)
}

fn orbit_sizes(g: &ProjectiveGroup, pts: &[ProjectivePoint]) -> Vec<usize> {
    let mut done: HashSet<_> = HashSet::new();
    let mut sizes = Vec::new();
    for p in pts {
        if done.contains(&p.sort_key()) {
            continue;
        }
        let o = orbit(g, p);
        for q in &o {
            done.insert(q.sort_key());
        }
        sizes.push(o.len());
    }
    sizes
}

/// Type of a finite group acting faithfully on `P¹`, cross-checked against
/// its smallest special orbit.
pub fn classify_p2(g: &ProjectiveGroup) -> Result<P1Classification> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch("classify_p2 needs 2x2 generators".into()));
    }
    let id = g.abstract_group().recognize();
    let kind = GroupTypeP2::from_abstract(id).ok_or(Error::UnrecognizedGroup { order: g.order() })?;
    let min_orbit = if g.order() == 1 {
        1
    } else {
        orbit_sizes(g, &eigen_points(g)?).into_iter().min().unwrap_or(0)
    };
    if (min_orbit <= 2) != kind.is_cyclic_or_dihedral() {
        return Err(Error::UnrecognizedGroup { order: g.order() });
    }
    Ok(P1Classification { kind, min_orbit })
}

/// Types of finite subgroups of `PGL_3`; type B is split by the image on
/// the invariant line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum P3Kind {
    A,
    B1,
    B2,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    K,
}

impl P3Kind {
    pub const ALL: [P3Kind; 11] =
        [P3Kind::A, P3Kind::B1, P3Kind::B2, P3Kind::C, P3Kind::D, P3Kind::E, P3Kind::F, P3Kind::G, P3Kind::H, P3Kind::I, P3Kind::K];

    pub fn parse(s: &str) -> Option<Self> {
        P3Kind::ALL.into_iter().find(|k| k.to_string() == s)
    }
}

impl fmt::Display for P3Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The normal diagonalizable abelian subgroup behind types C and D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalDiagonal {
    pub order: usize,
    pub invariants: Vec<usize>,
    /// Element indices into the ambient group.
    pub elements: Subset,
    /// The three common eigenpoints of `N`.
    pub eigenpoints: Vec<ProjectivePoint>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct P3Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<ProjectivePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_line: Option<ProjectivePoint>,
    /// Image of the group on the invariant line (type B).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_image: Option<GroupTypeP2>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_subgroup: Option<NormalDiagonal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTypeP3 {
    pub kind: P3Kind,
    pub witness: P3Witness,
}

/// Column basis of the plane `{v : ℓ·v = 0}`.
pub fn line_basis(line: &ProjectivePoint) -> Matrix {
    let row = Matrix::new(1, line.dim(), line.coords().to_vec());
    Matrix::from_columns(&row.kernel()).uniform()
}

/// Matrices of the group generators restricted to an invariant subspace.
pub fn restrict(g: &ProjectiveGroup, basis: &Matrix) -> Result<Vec<Matrix>> {
    g.raw_generators()
        .iter()
        .map(|m| {
            Matrix::solve_in_span(basis, &m.matmul(basis))
                .ok_or_else(|| Error::NotClosed("subspace is not invariant".into()))
        })
        .collect()
}

/// Image of a group fixing a line on that line, as a subgroup of `PGL_2`.
pub fn restriction_to_line(g: &ProjectiveGroup, line: &ProjectivePoint) -> Result<ProjectiveGroup> {
    ProjectiveGroup::close(&restrict(g, &line_basis(line))?, true)
}

fn lies_on(p: &ProjectivePoint, line: &ProjectivePoint) -> bool {
    crate::linalg::dot(p.coords(), line.coords()).is_zero()
}

/// Common eigenpoints of a subgroup given by element indices, when the
/// subgroup is diagonalizable.
pub fn diagonal_eigenpoints(g: &ProjectiveGroup, elements: &[usize]) -> Result<Option<Vec<ProjectivePoint>>> {
    let h = g.subgroup(elements)?;
    let spaces = common_eigenspaces(&h)?;
    if spaces.iter().map(JointEigenspace::dim).sum::<usize>() != g.dim() {
        return Ok(None);
    }
    let mut pts = Vec::new();
    for s in &spaces {
        // inside a higher-dimensional eigenspace pick the coordinate-aligned basis
        for j in 0..s.dim() {
            pts.push(ProjectivePoint::new(&s.basis.column(j)).expect("nonzero"));
        }
    }
    Ok(Some(sorted(pts)))
}

fn classify_fixed(g: &ProjectiveGroup, fixed: &FixedLocus) -> Result<GroupTypeP3> {
    if g.abstract_group().is_abelian() && is_diagonalizable(g)? {
        return Ok(GroupTypeP3 {
            kind: P3Kind::A,
            witness: P3Witness { fixed_point: fixed.points.first().cloned(), ..Default::default() },
        });
    }
    let p = fixed.points.first().cloned().ok_or(Error::UnclassifiableGroup { order: g.order() })?;
    let lines = invariant_lines(g)?;
    let mut best: Option<(ProjectivePoint, GroupTypeP2, usize)> = None;
    for line in lines.into_iter().filter(|l| !lies_on(&p, l)) {
        let image = restriction_to_line(g, &line)?;
        let c = classify_p2(&image)?;
        if best.as_ref().is_none_or(|b| c.kind.order() > b.2) {
            best = Some((line, c.kind, c.kind.order()));
        }
    }
    let (line, image, _) = best.ok_or(Error::UnclassifiableGroup { order: g.order() })?;
    let kind = match image {
        GroupTypeP2::Dihedral(_) => P3Kind::B1,
        GroupTypeP2::Alt4 | GroupTypeP2::Sym4 | GroupTypeP2::Alt5 => P3Kind::B2,
        GroupTypeP2::Cyclic(_) => return Err(Error::UnclassifiableGroup { order: g.order() }),
    };
    Ok(GroupTypeP3 {
        kind,
        witness: P3Witness { fixed_point: Some(p), invariant_line: Some(line), line_image: Some(image), normal_subgroup: None },
    })
}

fn classify_imprimitive(g: &ProjectiveGroup) -> Result<Option<GroupTypeP3>> {
    let st = structure(g.abstract_group());
    for want in [P3Kind::C, P3Kind::D] {
        for n in &st.normal_abelian_subgroups {
            let matches = match want {
                P3Kind::C => n.quotient == AbstractGroupId::Cyclic(3),
                _ => n.quotient.same_as(&AbstractGroupId::Dihedral(6)),
            };
            if !matches {
                continue;
            }
            if let Some(eigenpoints) = diagonal_eigenpoints(g, &n.elements)? {
                return Ok(Some(GroupTypeP3 {
                    kind: want,
                    witness: P3Witness {
                        normal_subgroup: Some(NormalDiagonal {
                            order: n.order,
                            invariants: n.invariants.clone(),
                            elements: n.elements.clone(),
                            eigenpoints,
                        }),
                        ..Default::default()
                    },
                }));
            }
        }
    }
    Ok(None)
}

/// Type of a finite group acting on `P²`.
pub fn classify_p3(g: &ProjectiveGroup) -> Result<GroupTypeP3> {
    if g.dim() != 3 {
        return Err(Error::DimensionMismatch("classify_p3 needs 3x3 generators".into()));
    }
    let fixed = fixed_locus(g)?;
    if !fixed.is_empty() {
        return classify_fixed(g, &fixed);
    }
    if let Some(t) = classify_imprimitive(g)? {
        return Ok(t);
    }
    let fg = g.abstract_group();
    let kind = match g.order() {
        36 => P3Kind::E,
        72 => P3Kind::F,
        216 => P3Kind::G,
        60 if fg.is_simple() => P3Kind::H,
        168 => P3Kind::I,
        360 => P3Kind::K,
        order => return Err(Error::UnclassifiableGroup { order }),
    };
    Ok(GroupTypeP3 { kind, witness: P3Witness::default() })
}

/// Orbits of the given points, smallest first.
pub fn point_orbits(g: &ProjectiveGroup, pts: &[ProjectivePoint]) -> Vec<Vec<ProjectivePoint>> {
    let mut seen: HashMap<_, ()> = HashMap::new();
    let mut out = Vec::new();
    for p in pts {
        if seen.contains_key(&p.sort_key()) {
            continue;
        }
        let o = orbit(g, p);
        for q in &o {
            seen.insert(q.sort_key(), ());
        }
        out.push(o);
    }
    out.sort_by_key(Vec::len);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::presets;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(n, k)
    }

    #[test]
    fn torus_fixed_points_are_coordinate_points() {
        let g = ProjectiveGroup::close(&[Matrix::diag(&[z(5, 1), z(5, 2), Cyclotomic::one()])], true).unwrap();
        let pts = fixed_points(&g).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(invariant_lines(&g).unwrap().len(), 3);
    }

    #[test]
    fn type_b_has_one_fixed_point() {
        for name in ["typeB1_d6", "typeB2_tetra"] {
            let g = presets::group(name).unwrap();
            assert_eq!(fixed_points(&g).unwrap().len(), 1, "{name}");
            assert!(!invariant_lines(&g).unwrap().is_empty());
        }
    }

    #[test]
    fn primitive_groups_have_no_fixed_points() {
        for name in ["hessian216", "valentiner"] {
            let g = presets::group(name).unwrap();
            assert!(fixed_points(&g).unwrap().is_empty(), "{name}");
            assert!(invariant_lines(&g).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn p1_types_and_orbits() {
        let c = classify_p2(&presets::group("cyclic_7").unwrap()).unwrap();
        assert_eq!((c.kind, c.min_orbit), (GroupTypeP2::Cyclic(7), 1));
        let d = classify_p2(&presets::group("dihedral_10").unwrap()).unwrap();
        assert_eq!((d.kind, d.min_orbit), (GroupTypeP2::Dihedral(10), 2));
        let i = classify_p2(&presets::group("icosa_pgl2").unwrap()).unwrap();
        assert_eq!((i.kind, i.min_orbit), (GroupTypeP2::Alt5, 12));
        let t = classify_p2(&presets::group("tetra_pgl2").unwrap()).unwrap();
        assert_eq!((t.kind, t.min_orbit), (GroupTypeP2::Alt4, 4));
    }

    #[test]
    fn small_plane_presets() {
        for (name, kind) in [
            ("typeA_diag9", P3Kind::A),
            ("typeA_cyclic7", P3Kind::A),
            ("typeB1_d6", P3Kind::B1),
            ("typeB2_tetra", P3Kind::B2),
            ("typeC_a4", P3Kind::C),
            ("typeC_heisenberg9", P3Kind::C),
            ("typeD_s4", P3Kind::D),
            ("typeH60", P3Kind::H),
        ] {
            assert_eq!(classify_p3(&presets::group(name).unwrap()).unwrap().kind, kind, "{name}");
        }
    }

    #[test]
    fn type_c_witness_is_three_points() {
        let t = classify_p3(&presets::group("typeC21").unwrap()).unwrap();
        assert_eq!(t.kind, P3Kind::C);
        let n = t.witness.normal_subgroup.unwrap();
        assert_eq!(n.order, 7);
        assert_eq!(n.eigenpoints.len(), 3);
    }
}

#[cfg(test)]
mod preset_tests {
    use super::*;
    use crate::matgroup::presets;

    #[test]
    fn every_plane_preset_has_its_documented_type() {
        for name in presets::plane_names() {
            let g = presets::group(name).unwrap();
            let t = classify_p3(&g).unwrap();
            assert_eq!(t.kind.to_string(), presets::documented_type(name).unwrap(), "{name}");
            let n = fixed_points(&g).unwrap().len();
            match t.kind {
                P3Kind::A => assert!(n >= 1 || g.abstract_group().is_abelian()),
                P3Kind::B1 | P3Kind::B2 => assert_eq!(n, 1, "{name}"),
                _ => assert_eq!(n, 0, "{name}"),
            }
        }
    }
}
