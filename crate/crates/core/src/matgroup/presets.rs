//! Built-in generator matrices, each checked against its documented order
//! before use.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::{PairElement, PairGroup, ProjectiveGroup};
use crate::error::{Error, Result};
use crate::exact_arith::{rat, sqrt_minus3, Cyclotomic};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetSurface {
    /// A group acting on `P¹`.
    Line,
    /// A group acting on `P²`.
    Plane,
    /// A group acting on `P¹×P¹`.
    Quadric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresetInfo {
    pub name: String,
    pub surface: PresetSurface,
    /// Projective order; `None` for parametrized families.
    pub order: Option<usize>,
    /// Type label: the `P²` type letter, the `P¹` group, or the quadric case.
    pub documented_type: String,
    pub description: String,
}

fn z(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::zeta_pow(n, k)
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_int(v)
}

fn m(rows: Vec<Vec<Cyclotomic>>) -> Matrix {
    Matrix::from_rows(rows).expect("square preset").uniform()
}

fn perm3() -> Matrix {
    Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])
}

fn hessian_s() -> Matrix {
    Matrix::diag(&[int(1), z(3, 1), z(3, 2)])
}

fn hessian_u() -> Matrix {
    Matrix::diag(&[int(1), int(1), z(3, 1)])
}

fn hessian_v() -> Matrix {
    let w = z(3, 1);
    let w2 = z(3, 2);
    let f = m(vec![
        vec![int(1), int(1), int(1)],
        vec![int(1), w.clone(), w2.clone()],
        vec![int(1), w2, w],
    ]);
    f.scale(&sqrt_minus3().inv().expect("nonzero"))
}

fn sqrt5() -> Cyclotomic {
    &(&(z(5, 1) + z(5, 4)) * &int(2)) + &int(1)
}

fn sqrt_minus7() -> Cyclotomic {
    z(7, 1) + z(7, 2) + z(7, 4) - z(7, 3) - z(7, 5) - z(7, 6)
}

/// Rotation group of the icosahedron in `SO_3`.
fn icosahedral_so3() -> Vec<Matrix> {
    let tau = &(&int(1) + &sqrt5()) * &Cyclotomic::from_rational(&rat(1, 2));
    let tau_inv = &tau - &int(1);
    let half = Cyclotomic::from_rational(&rat(1, 2));
    let r = m(vec![
        vec![int(1), -tau.clone(), tau_inv.clone()],
        vec![tau.clone(), tau_inv.clone(), int(-1)],
        vec![tau_inv, int(1), tau],
    ])
    .scale(&half);
    vec![Matrix::diag(&[int(1), int(-1), int(-1)]), perm3(), r]
}

fn binary_icosahedral() -> Vec<Matrix> {
    let (a, b) = (z(5, 1) - z(5, 4), z(5, 2) - z(5, 3));
    let t = m(vec![vec![-a.clone(), b.clone()], vec![b, a]]).scale(&sqrt5().inv().expect("nonzero"));
    vec![Matrix::diag(&[z(5, 3), z(5, 2)]), t]
}

fn galois(mat: &Matrix, k: i64) -> Matrix {
    Matrix::new(mat.rows(), mat.cols(), mat.entries().iter().map(|x| x.galois(k)).collect())
}

/// Binary icosahedral generators twisted by `ζ_5 ↦ ζ_5²`: the other
/// two-dimensional representation of the same group.
fn binary_icosahedral_conjugate() -> Vec<Matrix> {
    binary_icosahedral().iter().map(|g| galois(&g.with_conductor(5), 2)).collect()
}

fn tetrahedral_pgl2() -> Vec<Matrix> {
    let i = z(4, 1);
    vec![
        Matrix::diag(&[int(1), int(-1)]),
        Matrix::from_int_rows(&[&[0, 1], &[1, 0]]),
        m(vec![vec![int(1), i.clone()], vec![int(1), -i]]),
    ]
}

fn octahedral_pgl2() -> Vec<Matrix> {
    let mut g = tetrahedral_pgl2();
    g.push(Matrix::diag(&[z(4, 1), int(1)]));
    g
}

/// Binary tetrahedral group in `SL_2`.
fn binary_tetrahedral() -> Vec<Matrix> {
    let i = z(4, 1);
    let h = Cyclotomic::from_rational(&rat(1, 2));
    vec![
        Matrix::diag(&[i.clone(), -i.clone()]),
        Matrix::from_int_rows(&[&[0, 1], &[-1, 0]]),
        m(vec![
            vec![&int(1) + &i, &int(-1) + &i],
            vec![&int(1) + &i, &int(1) - &i],
        ])
        .scale(&h),
    ]
}

fn block(g: &Matrix) -> Matrix {
    let mut out = Matrix::identity(3).with_conductor(g.conductor());
    for r in 0..2 {
        for c in 0..2 {
            out.set(r, c, g.get(r, c).clone());
        }
    }
    out
}

/// Action of a 2×2 matrix on binary quadratic forms in `x², xy, y²`.
fn sym2(g: &Matrix) -> Matrix {
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    m(vec![
        vec![a * a, a * b, b * b],
        vec![&(a * c) * &int(2), a * d + b * c, &(b * d) * &int(2)],
        vec![c * c, c * d, d * d],
    ])
}

fn monomial_a4() -> Vec<Matrix> {
    vec![
        Matrix::diag(&[int(1), int(-1), int(-1)]),
        Matrix::diag(&[int(-1), int(1), int(-1)]),
        perm3(),
    ]
}

fn monomial_s4() -> Vec<Matrix> {
    let mut g = monomial_a4();
    g.push(Matrix::from_int_rows(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, -1]]));
    g
}

fn klein_diag() -> Matrix {
    Matrix::diag(&[z(7, 1), z(7, 4), z(7, 2)])
}

fn klein_r() -> Matrix {
    let a = z(7, 1) - z(7, 6);
    let b = z(7, 2) - z(7, 5);
    let c = z(7, 4) - z(7, 3);
    let r = m(vec![
        vec![a.clone(), b.clone(), c.clone()],
        vec![b.clone(), c.clone(), a.clone()],
        vec![c, a, b],
    ]);
    r.scale(&(-sqrt_minus7().inv().expect("nonzero")))
}

fn pgl2_cyclic(n: usize) -> Vec<Matrix> {
    vec![Matrix::diag(&[z(n as u32, 1), int(1)])]
}

fn pgl2_dihedral(order: usize) -> Vec<Matrix> {
    let mut g = pgl2_cyclic(order / 2);
    g.push(Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));
    g
}

struct PlaneOrLine {
    name: &'static str,
    surface: PresetSurface,
    order: usize,
    kind: &'static str,
    description: &'static str,
    build: fn() -> Vec<Matrix>,
}

const FIXED: &[PlaneOrLine] = &[
    PlaneOrLine { name: "tetra_pgl2", surface: PresetSurface::Line, order: 12, kind: "A4", description: "tetrahedral group in PGL2", build: tetrahedral_pgl2 },
    PlaneOrLine { name: "octa_pgl2", surface: PresetSurface::Line, order: 24, kind: "S4", description: "octahedral group in PGL2", build: octahedral_pgl2 },
    PlaneOrLine { name: "icosa_pgl2", surface: PresetSurface::Line, order: 60, kind: "A5", description: "icosahedral group in PGL2 from binary icosahedral generators over Q(z5)", build: binary_icosahedral },
    PlaneOrLine { name: "icosa_pgl2_conj", surface: PresetSurface::Line, order: 60, kind: "A5", description: "icosahedral group in PGL2, Galois-twisted generators", build: binary_icosahedral_conjugate },
    PlaneOrLine { name: "binary_tetra_sl2", surface: PresetSurface::Line, order: 12, kind: "A4", description: "binary tetrahedral generators in SL2", build: binary_tetrahedral },
    PlaneOrLine { name: "typeA_diag9", surface: PresetSurface::Plane, order: 9, kind: "A", description: "diagonal C3 x C3", build: || vec![Matrix::diag(&[z(3, 1), int(1), int(1)]), Matrix::diag(&[int(1), z(3, 1), int(1)])] },
    PlaneOrLine { name: "typeA_cyclic7", surface: PresetSurface::Plane, order: 7, kind: "A", description: "diag(z7, z7^4, z7^2)", build: || vec![klein_diag()] },
    PlaneOrLine { name: "typeA_cyclic3", surface: PresetSurface::Plane, order: 3, kind: "A", description: "diag(z3, z3^2, 1)", build: || vec![Matrix::diag(&[z(3, 1), z(3, 2), int(1)])] },
    PlaneOrLine { name: "typeB1_d6", surface: PresetSurface::Plane, order: 6, kind: "B1", description: "diag(z3, z3^2, 1) and the swap of x and y", build: || vec![Matrix::diag(&[z(3, 1), z(3, 2), int(1)]), Matrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])] },
    PlaneOrLine { name: "typeB2_tetra", surface: PresetSurface::Plane, order: 24, kind: "B2", description: "binary tetrahedral group acting on two coordinates", build: || binary_tetrahedral().iter().map(block).collect() },
    PlaneOrLine { name: "typeC_a4", surface: PresetSurface::Plane, order: 12, kind: "C", description: "monomial A4 = C2^2 : C3", build: monomial_a4 },
    PlaneOrLine { name: "typeC_heisenberg9", surface: PresetSurface::Plane, order: 9, kind: "C", description: "Heisenberg C3^2 generated by diag(1, z3, z3^2) and the cyclic permutation", build: || vec![hessian_s(), perm3()] },
    PlaneOrLine { name: "typeC21", surface: PresetSurface::Plane, order: 21, kind: "C", description: "C7 : C3 from diag(z7, z7^4, z7^2) and the cyclic permutation", build: || vec![klein_diag(), perm3()] },
    PlaneOrLine { name: "typeD_s4", surface: PresetSurface::Plane, order: 24, kind: "D", description: "monomial S4 = C2^2 : S3", build: monomial_s4 },
    PlaneOrLine { name: "typeD54", surface: PresetSurface::Plane, order: 54, kind: "D", description: "C3^2 : S3, diagonal cube roots with all coordinate permutations", build: || vec![hessian_s(), hessian_u(), perm3(), hessian_v().matmul(&hessian_v())] },
    PlaneOrLine { name: "typeE36", surface: PresetSurface::Plane, order: 36, kind: "E", description: "C3^2 : C4 inside the Hessian group", build: || vec![hessian_s(), perm3(), hessian_v()] },
    PlaneOrLine { name: "typeF72", surface: PresetSurface::Plane, order: 72, kind: "F", description: "C3^2 : Q8 inside the Hessian group", build: || {
        let u = hessian_u();
        let uvu = u.matmul(&hessian_v()).matmul(&u.inverse().expect("invertible"));
        vec![hessian_s(), perm3(), hessian_v(), uvu]
    } },
    PlaneOrLine { name: "hessian216", surface: PresetSurface::Plane, order: 216, kind: "G", description: "Hessian group C3^2 : SL(2,3)", build: || vec![hessian_s(), perm3(), hessian_v(), hessian_u()] },
    PlaneOrLine { name: "typeH60", surface: PresetSurface::Plane, order: 60, kind: "H", description: "A5 acting on binary quadratic forms", build: || binary_icosahedral().iter().map(sym2).collect() },
    PlaneOrLine { name: "icosa_so3", surface: PresetSurface::Plane, order: 60, kind: "H", description: "rotation group of the icosahedron", build: icosahedral_so3 },
    PlaneOrLine { name: "klein168", surface: PresetSurface::Plane, order: 168, kind: "I", description: "Klein group PSL(2,7)", build: || vec![klein_diag(), perm3(), klein_r()] },
    PlaneOrLine { name: "valentiner", surface: PresetSurface::Plane, order: 360, kind: "K", description: "Valentiner group A6", build: || {
        let mut g = icosahedral_so3();
        g.push(m(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), z(3, 1)],
            vec![int(0), z(3, 2), int(0)],
        ]));
        g
    } },
];

struct QuadricPreset {
    name: &'static str,
    order: usize,
    kind: &'static str,
    description: &'static str,
    build: fn() -> Vec<PairElement>,
}

fn id2() -> Matrix {
    Matrix::identity(2)
}

fn left(gs: &[Matrix]) -> Vec<PairElement> {
    gs.iter().map(|g| PairElement::new(g.clone(), id2())).collect()
}

fn right(gs: &[Matrix]) -> Vec<PairElement> {
    gs.iter().map(|g| PairElement::new(id2(), g.clone())).collect()
}

fn diagonal(gs: &[Matrix]) -> Vec<PairElement> {
    gs.iter().map(|g| PairElement::new(g.clone(), g.clone())).collect()
}

fn a4_over_c3() -> Vec<PairElement> {
    let t = tetrahedral_pgl2();
    // t[0], t[1] generate the Klein four-group, t[2] has order 3
    let mut g = left(&t[..2]);
    g.extend(right(&t[..2]));
    g.push(PairElement::new(t[2].clone(), t[2].clone()));
    g
}

const QUADRIC: &[QuadricPreset] = &[
    QuadricPreset { name: "pair_c3_x_d8", order: 24, kind: "C3 x D8", description: "C3 on the first factor, D8 on the second", build: || {
        let mut g = left(&pgl2_cyclic(3));
        g.extend(right(&pgl2_dihedral(8)));
        g
    } },
    QuadricPreset { name: "pair_c3_x_1", order: 3, kind: "C3 x 1", description: "C3 on the first factor", build: || left(&pgl2_cyclic(3)) },
    QuadricPreset { name: "pair_1_x_d8", order: 8, kind: "1 x D8", description: "D8 on the second factor", build: || right(&pgl2_dihedral(8)) },
    QuadricPreset { name: "pair_d6_x_a5", order: 360, kind: "D6 x A5", description: "D6 on the first factor, A5 on the second", build: || {
        let mut g = left(&pgl2_dihedral(6));
        g.extend(right(&binary_icosahedral()));
        g
    } },
    QuadricPreset { name: "pair_d6_x_1", order: 6, kind: "D6 x 1", description: "D6 on the first factor", build: || left(&pgl2_dihedral(6)) },
    QuadricPreset { name: "pair_1_x_a5", order: 60, kind: "1 x A5", description: "A5 on the second factor", build: || right(&binary_icosahedral()) },
    QuadricPreset { name: "pair_diag_a4", order: 12, kind: "diag A4", description: "A4 acting identically on both factors", build: || diagonal(&tetrahedral_pgl2()) },
    QuadricPreset { name: "pair_diag_s4", order: 24, kind: "diag S4", description: "S4 acting identically on both factors", build: || diagonal(&octahedral_pgl2()) },
    QuadricPreset { name: "pair_diag_a5", order: 60, kind: "diag A5", description: "A5 acting identically on both factors", build: || diagonal(&binary_icosahedral()) },
    QuadricPreset { name: "pair_diag_a4_swap", order: 24, kind: "diag A4 + swap", description: "diagonal A4 together with the factor swap", build: || {
        let mut g = diagonal(&tetrahedral_pgl2());
        g.push(PairElement::swapping(id2(), id2()));
        g
    } },
    QuadricPreset { name: "pair_a4_c3_a4", order: 48, kind: "A4 x_C3 A4", description: "pairs of A4 elements with equal image in C3", build: a4_over_c3 },
    QuadricPreset { name: "pair_a4_x_a4", order: 144, kind: "A4 x A4", description: "direct product of two A4", build: || {
        let t = tetrahedral_pgl2();
        let mut g = left(&t);
        g.extend(right(&t));
        g
    } },
    QuadricPreset { name: "pair_a5_twisted", order: 60, kind: "A5 via two lifts", description: "A5 acting through the two non-isomorphic binary icosahedral representations", build: || {
        binary_icosahedral()
            .into_iter()
            .zip(binary_icosahedral_conjugate())
            .map(|(a, b)| PairElement::new(a, b))
            .collect()
    } },
    QuadricPreset { name: "pair_c5_twisted", order: 5, kind: "C5 twisted", description: "z5 on the first factor, z5^2 on the second", build: || {
        vec![PairElement::new(Matrix::diag(&[z(5, 1), int(1)]), Matrix::diag(&[z(5, 2), int(1)]))]
    } },
];

/// Every preset, including the parametrized `cyclic_<n>` and `dihedral_<2n>` families.
pub fn list() -> Vec<PresetInfo> {
    let mut out = vec![
        PresetInfo {
            name: "cyclic_<n>".into(),
            surface: PresetSurface::Line,
            order: None,
            documented_type: "Cn".into(),
            description: "diag(zn, 1) in PGL2".into(),
        },
        PresetInfo {
            name: "dihedral_<2n>".into(),
            surface: PresetSurface::Line,
            order: None,
            documented_type: "D2n".into(),
            description: "diag(zn, 1) and the swap in PGL2".into(),
        },
    ];
    out.extend(FIXED.iter().map(|p| PresetInfo {
        name: p.name.into(),
        surface: p.surface,
        order: Some(p.order),
        documented_type: p.kind.into(),
        description: p.description.into(),
    }));
    out.extend(QUADRIC.iter().map(|p| PresetInfo {
        name: p.name.into(),
        surface: PresetSurface::Quadric,
        order: Some(p.order),
        documented_type: p.kind.into(),
        description: p.description.into(),
    }));
    out
}

/// Names of the fixed (non-parametrized) `P²` presets.
pub fn plane_names() -> Vec<&'static str> {
    FIXED.iter().filter(|p| p.surface == PresetSurface::Plane).map(|p| p.name).collect()
}

pub fn quadric_names() -> Vec<&'static str> {
    QUADRIC.iter().map(|p| p.name).collect()
}

/// Documented `P²` type letter (or `P¹` group name) of a preset.
pub fn documented_type(name: &str) -> Option<&'static str> {
    FIXED.iter().find(|p| p.name == name).map(|p| p.kind).or_else(|| QUADRIC.iter().find(|p| p.name == name).map(|p| p.kind))
}

fn parse_family(name: &str) -> Option<(Vec<Matrix>, usize)> {
    if let Some(n) = name.strip_prefix("cyclic_") {
        let n: usize = n.parse().ok().filter(|&n| (1..=1000).contains(&n))?;
        return Some((pgl2_cyclic(n), n));
    }
    if let Some(n) = name.strip_prefix("dihedral_") {
        let n: usize = n.parse().ok().filter(|&n: &usize| n >= 4 && n % 2 == 0 && n <= 2000)?;
        return Some((pgl2_dihedral(n), n));
    }
    None
}

fn cache() -> &'static Mutex<HashMap<String, ProjectiveGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<String, ProjectiveGroup>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pair_cache() -> &'static Mutex<HashMap<String, PairGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<String, PairGroup>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn self_test(name: &str, got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::PresetSelfTestFailed(format!("{name}: closure order {got}, documented {want}")))
    }
}

/// Projective group of a `P¹` or `P²` preset, closed and self-tested.
pub fn group(name: &str) -> Result<ProjectiveGroup> {
    if let Some(g) = cache().lock().expect("preset cache").get(name) {
        return Ok(g.clone());
    }
    let (gens, want) = if let Some(p) = FIXED.iter().find(|p| p.name == name) {
        ((p.build)(), p.order)
    } else if let Some(found) = parse_family(name) {
        found
    } else {
        return Err(Error::UnknownPreset(name.into()));
    };
    let g = ProjectiveGroup::close(&gens, true)?;
    self_test(name, g.order(), want)?;
    cache().lock().expect("preset cache").insert(name.into(), g.clone());
    Ok(g)
}

/// Pair group of a `P¹×P¹` preset, closed and self-tested.
pub fn pair_group(name: &str) -> Result<PairGroup> {
    if let Some(g) = pair_cache().lock().expect("preset cache").get(name) {
        return Ok(g.clone());
    }
    let p = QUADRIC.iter().find(|p| p.name == name).ok_or_else(|| Error::UnknownPreset(name.into()))?;
    let g = PairGroup::close(&(p.build)())?;
    self_test(name, g.order(), p.order)?;
    pair_cache().lock().expect("preset cache").insert(name.into(), g.clone());
    Ok(g)
}

/// Closes every fixed preset and checks its order.
pub fn self_test_all() -> Result<()> {
    for p in FIXED {
        group(p.name)?;
    }
    for p in QUADRIC {
        pair_group(p.name)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_presets_close_to_documented_orders() {
        for name in ["tetra_pgl2", "octa_pgl2", "icosa_pgl2", "typeA_diag9", "typeB1_d6", "typeC_a4", "typeD_s4", "typeE36", "typeH60"] {
            group(name).unwrap();
        }
        assert_eq!(group("cyclic_7").unwrap().order(), 7);
        assert_eq!(group("dihedral_10").unwrap().order(), 10);
    }

    #[test]
    fn unknown_names() {
        assert_eq!(group("nope").unwrap_err(), Error::UnknownPreset("nope".into()));
        assert!(group("dihedral_7").is_err());
        assert!(pair_group("hessian216").is_err());
    }

    #[test]
    fn hessian_generator_has_determinant_one() {
        assert!(hessian_v().det().is_one());
        assert!(klein_r().det().is_one());
        assert_eq!(sqrt5().pow(2).unwrap(), int(5));
        assert_eq!(sqrt_minus7().pow(2).unwrap(), int(-7));
    }
}

#[cfg(test)]
mod slow_tests {
    use super::*;
    use crate::matgroup::sl_lift;

    #[test]
    fn every_preset_matches_its_documented_order() {
        self_test_all().unwrap();
    }

    #[test]
    fn lifts_of_plane_presets() {
        for (name, lifted) in [("typeE36", 108), ("typeF72", 216), ("hessian216", 648), ("typeH60", 180), ("klein168", 504), ("valentiner", 1080)] {
            let l = sl_lift(&group(name).unwrap()).map(|g| g.order()); assert_eq!(l, Ok(lifted), "{name}");
        }
        assert_eq!(sl_lift(&group("icosa_pgl2").unwrap()).unwrap().order(), 120);
    }
}
