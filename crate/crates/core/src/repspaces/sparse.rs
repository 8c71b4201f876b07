use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qalg::{format_rational, to_f64, Rational};

/// Entry type of a [`SparseOperator`]: exact rationals or `f64`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative_value(&self) -> bool;
    fn render(&self) -> String;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative_value(&self) -> bool {
        *self < 0.0
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

/// A sparse matrix stored row by row, with optional basis labels.
///
/// Zero entries are never stored.
#[derive(Clone, Debug)]
pub struct SparseOperator<T> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, T>>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl<T: Scalar> PartialEq for SparseOperator<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<T: Scalar> SparseOperator<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseOperator {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, T::one());
        }
        m
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            m.add_to(i, j, v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(Error::Shape("label count does not match dimensions".into()));
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
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

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        match row.remove(&j) {
            Some(old) => {
                let s = old + v;
                if !s.is_zero() {
                    row.insert(j, s);
                }
            }
            None => {
                row.insert(j, v);
            }
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, T> {
        &self.data[i]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let p = a.clone() * b.clone();
                    match acc.remove(j) {
                        Some(old) => {
                            acc.insert(*j, old + p);
                        }
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (i, j, v) in rhs.entries() {
            out.add_to(i, j, if negate { -v.clone() } else { v.clone() });
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, true)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v = v.clone() * c.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            out.data[j].insert(i, v.clone());
        }
        out.row_labels = self.col_labels.clone();
        out.col_labels = self.row_labels.clone();
        out
    }

    /// Kronecker product, `self` acting on the more significant factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for (i1, j1, a) in self.entries() {
            for (i2, j2, b) in rhs.entries() {
                out.data[i1 * rhs.rows + i2].insert(j1 * rhs.cols + j2, a.clone() * b.clone());
            }
        }
        out
    }

    /// `self * v` for a dense vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (j, a)| acc + a.clone() * v[*j].clone())
            })
            .collect())
    }

    /// `self * v` for a sparse vector.
    pub fn apply_sparse(&self, v: &BTreeMap<usize, T>) -> BTreeMap<usize, T> {
        // Column access through the rows: fine for the sizes used here.
        let mut out = BTreeMap::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = T::zero();
            let mut any = false;
            if row.len() <= v.len() {
                for (j, a) in row {
                    if let Some(x) = v.get(j) {
                        acc = acc + a.clone() * x.clone();
                        any = true;
                    }
                }
            } else {
                for (j, x) in v {
                    if let Some(a) = row.get(j) {
                        acc = acc + a.clone() * x.clone();
                        any = true;
                    }
                }
            }
            if any && !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.matmul(rhs)?.sub(&rhs.matmul(self)?)
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseOperator<U> {
        let mut out = SparseOperator::<U>::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, f(v));
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = self.col_labels.clone();
        out
    }

    pub fn to_f64(&self) -> SparseOperator<f64> {
        self.map(|v| v.to_f64())
    }

    /// Submatrix on the given row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (p, &r) in rows.iter().enumerate() {
            for (j, v) in &self.data[r] {
                if let Some(&q) = col_pos.get(j) {
                    out.data[p].insert(q, v.clone());
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let d = self.sub(rhs).expect("shapes must agree");
        d.entries()
            .map(|(_, _, v)| v.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::int;

    #[test]
    fn product_and_kron() {
        let a = SparseOperator::from_dense(&[vec![int(1), int(2)], vec![int(0), int(1)]]);
        let b = SparseOperator::from_dense(&[vec![int(0), int(1)], vec![int(1), int(0)]]);
        let ab = a.matmul(&b).unwrap();
        assert_eq!(
            ab.to_dense(),
            vec![vec![int(2), int(1)], vec![int(1), int(0)]]
        );
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 1), int(1));
        assert_eq!(k.get(0, 3), int(2));
        assert_eq!(k.get(2, 3), int(1));
        assert!(a.matmul(&SparseOperator::zeros(3, 1)).is_err());
    }

    #[test]
    fn no_stored_zeros() {
        let mut m = SparseOperator::<Rational>::zeros(2, 2);
        m.add_to(0, 0, int(1));
        m.add_to(0, 0, int(-1));
        assert_eq!(m.nnz(), 0);
        m.set(1, 1, int(0));
        assert_eq!(m.nnz(), 0);
        let i = SparseOperator::<Rational>::identity(3);
        assert!(i.sub(&i).unwrap().is_zero());
    }

    #[test]
    fn apply_vectors() {
        let a = SparseOperator::from_dense(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(a.apply(&[1.0, 1.0]).unwrap(), vec![3.0, 7.0]);
        let v: BTreeMap<usize, f64> = [(1, 1.0)].into_iter().collect();
        let w = a.apply_sparse(&v);
        assert_eq!(w.get(&0), Some(&2.0));
        assert_eq!(w.get(&1), Some(&4.0));
        assert_eq!(a.transpose().get(0, 1), 3.0);
    }
}
