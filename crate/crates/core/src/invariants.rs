//! Semi-invariant forms: invariant curves of degree `d` on `P²` and of
//! bidegree `(a, b)` on `P¹×P¹`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{rat, Cyclotomic, RootOfUnity, DEFAULT_CONDUCTOR_BOUND};
use crate::linalg::{joint_eigenspaces, projective_normalize, JointEigenspace, Matrix, Vector};
use crate::matgroup::{lifted_generators, order_dividing, sl_normalize, PairElement, PairGroup, ProjectiveGroup};

/// Largest degree accepted by the semi-invariant search.
pub const MAX_DEGREE: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormDegree {
    /// Forms of degree `d` in as many variables as the matrix has rows.
    Degree(u32),
    /// Forms of bidegree `(a, b)` in `x_0, x_1; y_0, y_1`.
    Bidegree(u32, u32),
}

impl FormDegree {
    fn check(&self) -> Result<()> {
        match *self {
            FormDegree::Degree(d) if (1..=MAX_DEGREE).contains(&d) => Ok(()),
            FormDegree::Bidegree(a, b) if a + b > 0 && a <= MAX_DEGREE && b <= MAX_DEGREE => Ok(()),
            other => Err(Error::Input(format!("unsupported degree {other:?}"))),
        }
    }
}

/// Exponent vectors of degree `d` in `n` variables, `x_0^d` first.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

const PLANE_VARS: [&str; 3] = ["x", "y", "z"];
const PAIR_VARS: [&str; 4] = ["x0", "x1", "y0", "y1"];

fn monomial_label(exps: &[u32], names: &[&str]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Names of the monomial basis used for forms of the given degree.
pub fn monomial_labels(nvars: usize, degree: FormDegree) -> Vec<String> {
    match degree {
        FormDegree::Degree(d) => {
            let names: Vec<&str> = if nvars <= 3 { PLANE_VARS[..nvars].to_vec() } else { vec!["?"; nvars] };
            monomials(nvars, d).iter().map(|m| monomial_label(m, &names)).collect()
        }
        FormDegree::Bidegree(a, b) => {
            let mut out = Vec::new();
            for mx in monomials(2, a) {
                for my in monomials(2, b) {
                    let mut e = mx.clone();
                    e.extend(my);
                    out.push(monomial_label(&e, &PAIR_VARS));
                }
            }
            out
        }
    }
}

type Poly = HashMap<Vec<u32>, Cyclotomic>;

fn poly_mul_linear(p: &Poly, lin: &[Cyclotomic]) -> Poly {
    let mut out: Poly = HashMap::new();
    for (e, c) in p {
        for (i, l) in lin.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            let mut f = e.clone();
            f[i] += 1;
            let v = c * l;
            let slot = out.entry(f).or_insert_with(Cyclotomic::zero);
            *slot = &*slot + &v;
        }
    }
    out
}

/// Action of `g` on forms of degree `d`, `F ↦ F∘g⁻¹`, in the basis of
/// [`monomials`]. This is a left action: `ρ(gh) = ρ(g)ρ(h)`.
pub fn sym_power(g: &Matrix, d: u32) -> Result<Matrix> {
    let n = g.rows();
    let h = g.inverse()?;
    let basis = monomials(n, d);
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cols = Vec::with_capacity(basis.len());
    for m in &basis {
        // substitute x_i ↦ Σ_j h_ij x_j
        let mut p: Poly = HashMap::from([(vec![0; n], Cyclotomic::one())]);
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                p = poly_mul_linear(&p, &h.row(i));
            }
        }
        let mut col = vec![Cyclotomic::zero(); basis.len()];
        for (e, c) in p {
            col[index[&e]] = c;
        }
        cols.push(col);
    }
    Ok(Matrix::from_columns(&cols).uniform())
}

/// Permutation of `V_a ⊗ V_b` exchanging the two tensor factors, for `a = b`.
fn factor_swap(dim: usize) -> Matrix {
    let mut p = Matrix::zeros(dim * dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            p.set(j * dim + i, i * dim + j, Cyclotomic::one());
        }
    }
    p
}

/// Action of a `P¹×P¹` automorphism on forms of bidegree `(a, b)`. A swapping
/// element needs `a = b`.
pub fn pair_power(e: &PairElement, a: u32, b: u32) -> Result<Matrix> {
    if !e.swap {
        return Ok(sym_power(&e.a, a)?.kronecker(&sym_power(&e.b, b)?).uniform());
    }
    if a != b {
        return Err(Error::InvalidQuadricData(format!("bidegree ({a},{b}) is not preserved by a factor swap")));
    }
    let inner = sym_power(&e.b, a)?.kronecker(&sym_power(&e.a, a)?);
    Ok(factor_swap(a as usize + 1).matmul(&inner).uniform())
}

/// Matrix of a group element on forms of the given degree.
pub fn sym_power_matrix(g: &Matrix, degree: FormDegree) -> Result<Matrix> {
    degree.check()?;
    match degree {
        FormDegree::Degree(d) => sym_power(g, d),
        FormDegree::Bidegree(a, b) => {
            if g.rows() != 2 {
                return Err(Error::DimensionMismatch("bidegree action needs a 2x2 matrix".into()));
            }
            pair_power(&PairElement::new(g.clone(), g.clone()), a, b)
        }
    }
}

/// A line of semi-invariant forms sharing one character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInvariantLine {
    /// Eigenvalue on each lifted generator.
    pub character: Vec<RootOfUnity>,
    pub dimension: usize,
    /// A nonzero form with this character.
    pub sample_form: Vector,
    /// Column basis of the whole eigenspace.
    #[serde(skip)]
    pub basis: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInvariantReport {
    pub degree: FormDegree,
    pub monomials: Vec<String>,
    pub lines: Vec<SemiInvariantLine>,
    /// Sum of the dimensions over all characters.
    pub total_dimension: usize,
    /// Dimension for the trivial character.
    pub invariant_dimension: usize,
}

impl SemiInvariantReport {
    /// True when some curve of this degree is invariant.
    pub fn has_invariant_curve(&self) -> bool {
        self.total_dimension > 0
    }

    /// The form, when exactly one curve of this degree is invariant.
    pub fn unique_curve(&self) -> Option<&Vector> {
        match self.lines.as_slice() {
            [line] if line.dimension == 1 => Some(&line.sample_form),
            _ => None,
        }
    }
}

fn report(degree: FormDegree, nvars: usize, ops: &[Matrix], orders: &[u32]) -> SemiInvariantReport {
    let spaces = joint_eigenspaces(ops, orders);
    let lines: Vec<SemiInvariantLine> = spaces.into_iter().map(to_line).collect();
    let total_dimension = lines.iter().map(|l| l.dimension).sum();
    let invariant_dimension =
        lines.iter().filter(|l| l.character.iter().all(RootOfUnity::is_one)).map(|l| l.dimension).sum();
    SemiInvariantReport { degree, monomials: monomial_labels(nvars, degree), lines, total_dimension, invariant_dimension }
}

fn to_line(s: JointEigenspace) -> SemiInvariantLine {
    let character = s
        .character
        .iter()
        .map(|c| RootOfUnity::from_cyclotomic(c).expect("eigenvalues of finite-order operators are roots of unity"))
        .collect();
    let sample = projective_normalize(&s.basis.column(0)).expect("nonzero basis vector");
    SemiInvariantLine {
        character,
        dimension: s.dim(),
        sample_form: sample.into_iter().map(|x| x.reduce_conductor()).collect(),
        basis: Some(s.basis),
    }
}

/// Semi-invariant forms of degree `d` for a group on `P^{n-1}`, computed on
/// the `SL`-lifted generators.
pub fn semi_invariants(g: &ProjectiveGroup, d: u32) -> Result<SemiInvariantReport> {
    let degree = FormDegree::Degree(d);
    degree.check()?;
    let lifted = lifted_generators(g)?;
    let mut ops = Vec::new();
    let mut orders = Vec::new();
    for (m, o) in lifted {
        ops.push(sym_power(&m, d)?);
        orders.push(o);
    }
    Ok(report(degree, g.dim(), &ops, &orders))
}

/// Each generator of a pair group with both matrices rescaled into `SL_2`,
/// with the order of the rescaled element.
pub fn lifted_pair_generators(g: &PairGroup) -> Result<Vec<(PairElement, u32)>> {
    let fg = g.abstract_group();
    g.raw_generators()
        .iter()
        .zip(g.generators())
        .zip(fg.generators())
        .map(|((raw, canonical), &idx)| {
            let lift = |m: &Matrix, c: &Matrix| {
                sl_normalize(m, DEFAULT_CONDUCTOR_BOUND).or_else(|_| sl_normalize(c, DEFAULT_CONDUCTOR_BOUND))
            };
            let a = lift(&raw.a, &canonical.a)?;
            let b = lift(&raw.b, &canonical.b)?;
            let e = raw;
            let lifted = PairElement { a, b, swap: e.swap };
            // the lift of an order-k element has order dividing 4k
            let multiple = 4 * fg.element_order(idx) as u64;
            let order = order_dividing(&block_form(&lifted), multiple).ok_or_else(|| {
                Error::EigenvalueOutsideField("lifted pair generator has no finite order".into())
            })?;
            Ok((lifted, order))
        })
        .collect()
}

/// Faithful 4×4 matrix of a pair element on `V_1 ⊕ V_2`.
fn block_form(e: &PairElement) -> Matrix {
    let c = crate::exact_arith::lcm(e.a.conductor(), e.b.conductor());
    let mut m = Matrix::zeros(4, 4).with_conductor(c);
    for r in 0..2 {
        for col in 0..2 {
            m.set(r, col, e.a.get(r, col).clone());
            m.set(r + 2, col + 2, e.b.get(r, col).clone());
        }
    }
    if e.swap {
        let p = Matrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        p.matmul(&m)
    } else {
        m
    }
}

/// Semi-invariant forms of bidegree `(a, b)` for a group on `P¹×P¹`.
pub fn pair_semi_invariants(g: &PairGroup, a: u32, b: u32) -> Result<SemiInvariantReport> {
    let degree = FormDegree::Bidegree(a, b);
    degree.check()?;
    let mut ops = Vec::new();
    let mut orders = Vec::new();
    for (e, o) in lifted_pair_generators(g)? {
        ops.push(pair_power(&e, a, b)?);
        orders.push(o);
    }
    Ok(report(degree, 4, &ops, &orders))
}

/// Character of `form` under every lifted generator, or `None` when the
/// form is not semi-invariant.
pub fn semi_invariant_character(g: &ProjectiveGroup, form: &[Cyclotomic], d: u32) -> Result<Option<Vec<RootOfUnity>>> {
    let mut chars = Vec::new();
    for (m, _) in lifted_generators(g)? {
        let image = sym_power(&m, d)?.mul_vec(form);
        match proportionality(form, &image) {
            Some(c) => match RootOfUnity::from_cyclotomic(&c) {
                Some(r) => chars.push(r),
                None => return Ok(None),
            },
            None => return Ok(None),
        }
    }
    Ok(Some(chars))
}

/// Pair-group version of [`semi_invariant_character`] for bidegree `(a, b)`.
pub fn pair_semi_invariant_character(g: &PairGroup, form: &[Cyclotomic], a: u32, b: u32) -> Result<Option<Vec<RootOfUnity>>> {
    let mut chars = Vec::new();
    for (e, _) in lifted_pair_generators(g)? {
        let image = pair_power(&e, a, b)?.mul_vec(form);
        match proportionality(form, &image).and_then(|c| RootOfUnity::from_cyclotomic(&c)) {
            Some(r) => chars.push(r),
            None => return Ok(None),
        }
    }
    Ok(Some(chars))
}

/// `c` with `w = c·v`, if any.
fn proportionality(v: &[Cyclotomic], w: &[Cyclotomic]) -> Option<Cyclotomic> {
    let i = v.iter().position(|x| !x.is_zero())?;
    let c = (&w[i] * &v[i].inv().ok()?).reduce_conductor();
    v.iter().zip(w).all(|(x, y)| &(x * &c) == y).then_some(c)
}

/// Complete homogeneous symmetric polynomial `h_d` of the eigenvalues of a
/// matrix, from power sums `tr(m^k)` by Newton's identities.
pub fn complete_symmetric_trace(m: &Matrix, d: u32) -> Cyclotomic {
    let mut p = Vec::with_capacity(d as usize + 1);
    let mut power = Matrix::identity(m.rows()).with_conductor(m.conductor());
    p.push(Cyclotomic::from_int(m.rows() as i64));
    for _ in 1..=d {
        power = power.matmul(m);
        p.push(power.trace());
    }
    let mut h = vec![Cyclotomic::one()];
    for k in 1..=d as usize {
        let mut s = Cyclotomic::zero();
        for i in 1..=k {
            s = s + &p[i] * &h[k - i];
        }
        h.push(s * Cyclotomic::from_rational(&rat(1, k as i64)));
    }
    h.pop().expect("nonempty")
}

/// Dimensions from averaging characters over the group generated by the
/// lifted generators: `(trivial character, all linear characters)`.
pub fn character_sum_dimensions(g: &ProjectiveGroup, d: u32) -> Result<(usize, usize)> {
    let lifted: Vec<Matrix> = lifted_generators(g)?.into_iter().map(|(m, _)| m).collect();
    let lift = ProjectiveGroup::close(&lifted, false)?;
    // F∘g⁻¹ has trace h_d of the eigenvalues of g⁻¹
    let h: Vec<Cyclotomic> = (0..lift.order())
        .map(|i| complete_symmetric_trace(&lift.element(lift.abstract_group().inv(i)).clone(), d))
        .collect();
    let derived = lift.abstract_group().derived_subgroup();
    Ok((average(&h, &(0..lift.order()).collect::<Vec<_>>())?, average(&h, &derived)?))
}

/// The same two dimensions for bidegree forms on `P¹×P¹`, averaging traces
/// of the action matrices over the group they generate.
pub fn pair_character_sum_dimensions(g: &PairGroup, a: u32, b: u32) -> Result<(usize, usize)> {
    let ops: Vec<Matrix> =
        lifted_pair_generators(g)?.iter().map(|(e, _)| pair_power(e, a, b)).collect::<Result<_>>()?;
    let image = ProjectiveGroup::close(&ops, false)?;
    let tr: Vec<Cyclotomic> = image.elements().iter().map(Matrix::trace).collect();
    let derived = image.abstract_group().derived_subgroup();
    Ok((average(&tr, &(0..image.order()).collect::<Vec<_>>())?, average(&tr, &derived)?))
}

fn average(values: &[Cyclotomic], over: &[usize]) -> Result<usize> {
    let s = over.iter().fold(Cyclotomic::zero(), |acc, &i| acc + &values[i]);
    let q = (s * Cyclotomic::from_rational(&rat(1, over.len() as i64)))
        .as_rational()
        .ok_or_else(|| Error::NotClosed("character average is not rational".into()))?;
    if !q.is_integer() || q < rat(0, 1) {
        return Err(Error::NotClosed(format!("character average {q} is not a dimension")));
    }
    Ok(q.to_integer().try_into().expect("small dimension"))
}

/// A `G_0`-invariant curve of bidegree `(1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve11 {
    pub character: Vec<RootOfUnity>,
    /// Coefficients of `x0*y0, x0*y1, x1*y0, x1*y1`.
    pub form: Vector,
    /// The coefficient matrix is nondegenerate.
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalityReport {
    /// One member per character line, irreducible when the line has one.
    pub curves: Vec<Curve11>,
    /// The invariant curve when it is unique and irreducible.
    pub unique_irreducible: Option<Curve11>,
    pub diagonal: bool,
}

fn det11(f: &[Cyclotomic]) -> Cyclotomic {
    &f[0] * &f[3] - &f[1] * &f[2]
}

/// A member of the span with nonzero determinant, if the determinant does
/// not vanish identically on it.
pub(crate) fn nondegenerate_member(basis: &Matrix) -> Option<Vector> {
    let cols: Vec<Vector> = (0..basis.cols()).map(|j| basis.column(j)).collect();
    // a quadratic form vanishing at every e_i and e_i + e_j is zero
    for (i, c) in cols.iter().enumerate() {
        if !det11(c).is_zero() {
            return Some(c.clone());
        }
        for d in &cols[i + 1..] {
            let s: Vector = c.iter().zip(d).map(|(x, y)| x + y).collect();
            if !det11(&s).is_zero() {
                return Some(s);
            }
        }
    }
    None
}

/// Invariant `(1,1)`-curves of a factor-preserving group on `P¹×P¹`. The
/// action is diagonal iff one of them is irreducible.
pub fn diagonal_11_curve(g0: &PairGroup) -> Result<DiagonalityReport> {
    if g0.swaps_factors() {
        return Err(Error::InvalidQuadricData("diagonality is decided on the factor-preserving subgroup".into()));
    }
    let rep = pair_semi_invariants(g0, 1, 1)?;
    let mut curves = Vec::new();
    for line in &rep.lines {
        let basis = line.basis.as_ref().expect("basis kept in memory");
        let (form, irreducible) = match nondegenerate_member(basis) {
            Some(f) => (f, true),
            None => (line.sample_form.clone(), false),
        };
        let form = projective_normalize(&form).expect("nonzero").into_iter().map(|x| x.reduce_conductor()).collect();
        curves.push(Curve11 { character: line.character.clone(), form, irreducible });
    }
    let unique_irreducible = match (rep.lines.as_slice(), curves.as_slice()) {
        ([line], [c]) if line.dimension == 1 && c.irreducible => Some(c.clone()),
        _ => None,
    };
    let diagonal = curves.iter().any(|c| c.irreducible);
    Ok(DiagonalityReport { curves, unique_irreducible, diagonal })
}


#[cfg(test)]
mod preset_tests {
    use super::*;
    use crate::matgroup::presets;

    fn dims(name: &str, d: u32) -> (usize, usize) {
        let g = presets::group(name).unwrap();
        let r = semi_invariants(&g, d).unwrap();
        let (triv, all) = character_sum_dimensions(&g, d).unwrap();
        assert_eq!((triv, all), (r.invariant_dimension, r.total_dimension), "{name} degree {d}");
        (r.total_dimension, r.lines.len())
    }

    #[test]
    fn invariant_curves_of_low_degree() {
        assert_eq!(dims("typeE36", 1).0, 0);
        assert_eq!(dims("typeE36", 2).0, 0);
        assert!(dims("typeE36", 3).0 > 0);
        assert_eq!(dims("typeH60", 2), (1, 1));
        assert_eq!(dims("typeB2_tetra", 1), (1, 1));
        for name in ["typeF72", "hessian216", "klein168", "valentiner"] {
            for d in 1..=3 {
                assert_eq!(dims(name, d).0, 0, "{name} degree {d}");
            }
        }
    }
}
