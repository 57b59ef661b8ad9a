//! Dense matrices over cyclotomic fields: products, elimination, kernels
//! and simultaneous eigenspaces.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{lcm, CycloKey, Cyclotomic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Column vector.
pub type Vector = Vec<Cyclotomic>;

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Cyclotomic>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix::new(r, c, rows.into_iter().flatten().collect()))
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| Cyclotomic::from_int(v))).collect();
        Matrix::new(rows.len(), rows.first().map_or(0, |r| r.len()), data)
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix::new(r, c, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Cyclotomic::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Cyclotomic::one())
    }

    pub fn scalar(n: usize, c: &Cyclotomic) -> Self {
        let mut m = Matrix::zeros(n, n).with_conductor(c.conductor());
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[Cyclotomic]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m.uniform()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Least common conductor of the entries.
    pub fn conductor(&self) -> u32 {
        self.data.iter().fold(1, |acc, x| lcm(acc, x.conductor()))
    }

    /// All entries re-expressed over conductor `n`, which must be a common multiple.
    pub fn with_conductor(&self, n: u32) -> Self {
        let data = self
            .data
            .iter()
            .map(|x| x.embed(n).expect("target conductor is a common multiple"))
            .collect();
        Matrix::new(self.rows, self.cols, data)
    }

    /// Entries brought to their common conductor.
    pub fn uniform(&self) -> Self {
        self.with_conductor(self.conductor())
    }

    pub fn key(&self) -> Vec<CycloKey> {
        self.data.iter().map(Cyclotomic::key).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::new(self.cols, self.rows, data)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect())
    }

    /// `self - μ·I`.
    pub fn shift(&self, mu: &Cyclotomic) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - mu;
            m.set(i, i, v);
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<Cyclotomic> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    acc = Some(match acc {
                        Some(s) => s + p,
                        None => p,
                    });
                }
                data.push(acc.unwrap_or_else(|| {
                    Cyclotomic::zero()
                        .embed(lcm(self.data[0].conductor(), other.data[0].conductor()))
                        .expect("lcm")
                }));
            }
        }
        Matrix::new(self.rows, other.cols, data)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Cyclotomic::zero(), |acc, k| {
                    let a = self.get(i, k);
                    if a.is_zero() || v[k].is_zero() {
                        acc
                    } else {
                        acc + a * &v[k]
                    }
                })
            })
            .collect()
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).fold(Cyclotomic::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_of(&Cyclotomic::one())
    }

    fn is_scalar_of(&self, c: &Cyclotomic) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j) == c } else { self.get(i, j).is_zero() })
            })
    }

    /// True when the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.is_square() && self.rows > 0 && self.is_scalar_of(&self.get(0, 0).clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Matrix::identity(self.rows).with_conductor(self.conductor());
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i1 in 0..self.rows {
            for i2 in 0..other.rows {
                for j1 in 0..self.cols {
                    for j2 in 0..other.cols {
                        data.push(self.get(i1, j1) * other.get(i2, j2));
                    }
                }
            }
        }
        Matrix::new(rows, cols, data)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let c = self.conductor();
        let zero = Cyclotomic::zero().embed(c).expect("conductor");
        let one = Cyclotomic::one().embed(c).expect("conductor");
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); n];
                v[f] = one.clone();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Cyclotomic {
        assert!(self.is_square());
        let n = self.rows;
        match n {
            0 => return Cyclotomic::one(),
            1 => return self.data[0].clone(),
            2 => return self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            3 => {
                let g = |i, j| self.get(i, j);
                return g(0, 0) * &(g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                    - g(0, 1) * &(g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * &(g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
            }
            _ => {}
        }
        let mut m = self.clone();
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Cyclotomic::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Cyclotomic::one());
        }
        let aug = aug.with_conductor(self.conductor());
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Coordinates `X` with `basis · X = self`, when every column of `self`
    /// lies in the column span of `basis` (columns independent).
    pub fn solve_in_span(basis: &Matrix, target: &Matrix) -> Option<Matrix> {
        assert_eq!(basis.rows, target.rows);
        let k = basis.cols;
        let mut aug = Matrix::zeros(basis.rows, k + target.cols);
        for i in 0..basis.rows {
            for j in 0..k {
                aug.set(i, j, basis.get(i, j).clone());
            }
            for j in 0..target.cols {
                aug.set(i, k + j, target.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        // inconsistent rows have a pivot in the target block
        let mut out = Matrix::zeros(k, target.cols);
        for i in 0..k {
            for j in 0..target.cols {
                out.set(i, j, r.get(i, k + j).clone());
            }
        }
        Some(out)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn projective_normalize(v: &[Cyclotomic]) -> Option<Vector> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().ok()?;
    Some(v.iter().map(|x| x * &inv).collect())
}

pub fn vec_key(v: &[Cyclotomic]) -> Vec<CycloKey> {
    v.iter().map(Cyclotomic::key).collect()
}

pub fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    a.iter().zip(b).fold(Cyclotomic::zero(), |acc, (x, y)| acc + x * y)
}

pub fn cross(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vector {
    assert!(a.len() == 3 && b.len() == 3);
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// True when the two nonzero vectors span the same line.
pub fn projectively_equal(a: &[Cyclotomic], b: &[Cyclotomic]) -> bool {
    match (projective_normalize(a), projective_normalize(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// A joint eigenspace of a family of commuting-on-it operators.
#[derive(Clone, Debug)]
pub struct JointEigenspace {
    /// Eigenvalue of each operator, in input order.
    pub character: Vec<Cyclotomic>,
    /// Column basis.
    pub basis: Matrix,
}

impl JointEigenspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Eigenspaces of a finite-order matrix `m` with `m^order = 1`; eigenvalues
/// are searched among the `order`-th roots of unity.
pub fn eigenspaces(m: &Matrix, order: u32) -> Vec<(Cyclotomic, Matrix)> {
    joint_eigenspaces(std::slice::from_ref(m), &[order])
        .into_iter()
        .map(|mut e| (e.character.remove(0), e.basis))
        .collect()
}

/// Simultaneous eigenspaces: vectors `v` with `g_i v = χ_i v` for every
/// operator, grouped by the character `χ`. Operators must have finite
/// orders dividing the given ones.
pub fn joint_eigenspaces(ops: &[Matrix], orders: &[u32]) -> Vec<JointEigenspace> {
    assert_eq!(ops.len(), orders.len());
    let Some(first) = ops.first() else {
        return Vec::new();
    };
    let n = first.rows();
    let mut spaces = vec![JointEigenspace {
        character: Vec::new(),
        basis: Matrix::identity(n).with_conductor(first.conductor()),
    }];
    for (op, &order) in ops.iter().zip(orders) {
        let c = lcm(op.conductor(), order);
        let mut next = Vec::new();
        for space in spaces {
            let b = space.basis.with_conductor(lcm(space.basis.conductor(), c));
            let gb = op.matmul(&b);
            let mut found = 0;
            for j in 0..order {
                if found == b.cols() {
                    break;
                }
                let mu = Cyclotomic::zeta_pow(order, j as i64).embed(lcm(c, b.conductor())).expect("lcm");
                let ker = gb.sub(&b.scale(&mu)).kernel();
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let cols: Vec<Vector> = ker.iter().map(|x| b.mul_vec(x)).collect();
                let mut character = space.character.clone();
                character.push(mu.reduce_conductor());
                next.push(JointEigenspace {
                    character,
                    basis: Matrix::from_columns(&cols).uniform(),
                });
            }
        }
        spaces = next;
    }
    spaces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(n, k)
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![
            vec![z(3, 1), Cyclotomic::from_int(2), Cyclotomic::zero()],
            vec![Cyclotomic::one(), z(3, 2), Cyclotomic::from_int(-1)],
            vec![Cyclotomic::zero(), Cyclotomic::one(), Cyclotomic::from_int(5)],
        ])
        .unwrap()
        .uniform();
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).is_identity());
        assert!(!m.det().is_zero());
    }

    #[test]
    fn singular_inverse_fails() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::DivisionByZero));
        assert!(m.det().is_zero());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Cyclotomic::is_zero));
        }
    }

    #[test]
    fn determinant_by_elimination_matches_expansion() {
        let m = Matrix::from_int_rows(&[&[2, 0, 1, 3], &[1, 1, 0, 0], &[0, 4, 1, 2], &[1, 0, 0, 1]]);
        assert_eq!(m.det(), Cyclotomic::from_int(5));
    }

    #[test]
    fn diagonal_eigenspaces() {
        let m = Matrix::diag(&[z(3, 1), z(3, 2), Cyclotomic::one()]);
        let es = eigenspaces(&m, 3);
        assert_eq!(es.len(), 3);
        assert!(es.iter().all(|(_, b)| b.cols() == 1));
    }

    #[test]
    fn joint_eigenspaces_split_by_second_operator() {
        let a = Matrix::diag(&[Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::from_int(-1)]);
        let b = Matrix::diag(&[Cyclotomic::one(), Cyclotomic::from_int(-1), Cyclotomic::from_int(-1)]);
        let js = joint_eigenspaces(&[a, b], &[2, 2]);
        assert_eq!(js.len(), 3);
        let permutation = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let js = joint_eigenspaces(&[permutation], &[3]);
        assert_eq!(js.iter().map(JointEigenspace::dim).sum::<usize>(), 3);
    }

    #[test]
    fn projective_vectors() {
        let a = vec![Cyclotomic::zero(), Cyclotomic::from_int(3), Cyclotomic::from_rational(&rat(3, 2))];
        let b = vec![Cyclotomic::zero(), Cyclotomic::from_int(2), Cyclotomic::one()];
        assert!(projectively_equal(&a, &b));
        let c = cross(&a, &b);
        assert!(c.iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn solve_in_span_recovers_coordinates() {
        let basis = Matrix::from_int_rows(&[&[1, 0], &[1, 1], &[0, 1]]);
        let target = Matrix::from_int_rows(&[&[2], &[5], &[3]]);
        let x = Matrix::solve_in_span(&basis, &target).unwrap();
        assert_eq!(x, Matrix::from_int_rows(&[&[2], &[3]]));
        let off = Matrix::from_int_rows(&[&[1], &[0], &[1]]);
        assert!(Matrix::solve_in_span(&basis, &off).is_none());
    }
}
