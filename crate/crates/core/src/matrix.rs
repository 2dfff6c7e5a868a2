//! Dense matrices and vectors over `Q(ζ8)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// Row-major dense matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<CycloNum>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        ExactMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        ExactMatrix::new(
            rows,
            cols,
            data.iter().map(|&v| CycloNum::from_int(v)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![CycloNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycloNum::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &CycloNum) -> Self {
        ExactMatrix::identity(n).scale(c)
    }

    /// Column vector.
    pub fn column(v: &[CycloNum]) -> Self {
        ExactMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: &[CycloNum], w: &[CycloNum]) -> Self {
        let data = v
            .iter()
            .flat_map(|a| w.iter().map(move |b| a * &b.conj()))
            .collect();
        ExactMatrix {
            rows: v.len(),
            cols: w.len(),
            data,
        }
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

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>> {
        Ok(self.try_mul(&ExactMatrix::column(v))?.data)
    }

    pub fn scale(&self, c: &CycloNum) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = ExactMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, e: u32) -> ExactMatrix {
        (0..e).fold(ExactMatrix::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == ExactMatrix::identity(self.rows)
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square() && (&self.adjoint() * self).is_identity()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.adjoint() == *self
    }

    /// `Some(c)` when the matrix equals `c·𝟙`.
    pub fn as_scalar(&self) -> Option<CycloNum> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        (*self == ExactMatrix::scalar(self.rows, &c)).then_some(c)
    }

    /// Hilbert–Schmidt inner product `tr(X† Y)`.
    pub fn hs_inner(x: &ExactMatrix, y: &ExactMatrix) -> Result<CycloNum> {
        if x.rows != y.rows || x.cols != y.cols {
            return Err(Error::DimensionMismatch(
                "HS inner product of unequal shapes".into(),
            ));
        }
        Ok(x.data.iter().zip(&y.data).map(|(a, b)| a.conj() * b).sum())
    }

    /// Matrix unit `E_ij` of the given size.
    pub fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        m.set(i, j, CycloNum::one());
        m
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix shapes must agree")
    }
}

impl Mul for ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: ExactMatrix) -> ExactMatrix {
        &self * &rhs
    }
}

fn zip_with(
    a: &ExactMatrix,
    b: &ExactMatrix,
    f: impl Fn(&CycloNum, &CycloNum) -> CycloNum,
) -> ExactMatrix {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "matrix shapes must agree"
    );
    ExactMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&CycloNum::from_int(-1))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let w = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let c = &cells[i * self.cols + j];
                    format!("{}{c}", " ".repeat(w - c.chars().count()))
                })
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `⟨a|b⟩ = Σ conj(aᵢ) bᵢ`
pub fn inner(a: &[CycloNum], b: &[CycloNum]) -> CycloNum {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[CycloNum]) -> CycloNum {
    inner(v, v)
}

pub fn kron_vec(a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// If `a = c·b` for some scalar `c`, returns `c`. Both vectors must be non-zero.
pub fn proportionality(a: &[CycloNum], b: &[CycloNum]) -> Option<CycloNum> {
    if a.len() != b.len() {
        return None;
    }
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = &a[k] / &b[k];
    if c.is_zero() {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| *x == &c * y).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-3i64..=3, -3i64..=3), n * n).prop_map(move |v| {
            let data = v
                .into_iter()
                .map(|(a, b)| CycloNum::from_int(a) + CycloNum::from_int(b) * CycloNum::i())
                .collect();
            ExactMatrix::new(n, n, data).unwrap()
        })
    }

    #[test]
    fn kron_shapes_and_values() {
        let a = ExactMatrix::from_ints(2, 2, &[1, 2, 3, 4]).unwrap();
        let b = ExactMatrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 0), &CycloNum::from_int(1));
        assert_eq!(k.get(1, 3), &CycloNum::from_int(2));
        assert_eq!(k.get(2, 1), &CycloNum::zero());
        assert_eq!(k.trace(), CycloNum::from_int(10));
    }

    #[test]
    fn shape_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(ExactMatrix::new(2, 2, vec![CycloNum::one()]).is_err());
        assert!(ExactMatrix::from_rows(vec![vec![CycloNum::one()], vec![]]).is_err());
    }

    #[test]
    fn proportional_vectors() {
        let b = vec![CycloNum::one(), CycloNum::i()];
        let a: Vec<CycloNum> = b.iter().map(|x| x * &CycloNum::zeta()).collect();
        assert_eq!(proportionality(&a, &b), Some(CycloNum::zeta()));
        let c = vec![CycloNum::one(), CycloNum::one()];
        assert_eq!(proportionality(&c, &b), None);
    }

    proptest! {
        #[test]
        fn adjoint_reverses_products(a in arb_matrix(2), b in arb_matrix(2)) {
            prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
            prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        }

        #[test]
        fn kron_is_multiplicative(a in arb_matrix(2), b in arb_matrix(2), c in arb_matrix(2), d in arb_matrix(2)) {
            prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
            prop_assert_eq!(a.kron(&b).trace(), a.trace() * b.trace());
        }
    }
}
