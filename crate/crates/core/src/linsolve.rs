//! Dense exact linear algebra: row reduction, linear solves, nullspaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::multipoly::{Monomial, Polynomial};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> ScalarMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch(cols, bad.len()));
        }
        let n = rows.len();
        Ok(ScalarMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row-echelon form, its rank and the pivot columns.
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let t = m[(r, j)].clone() * factor.clone();
                    m[(i, j)] = m[(i, j)].clone() - t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// A basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (red, _, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![F::zero(); self.cols];
                x[fc] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -red[(r, fc)].clone();
                }
                x
            })
            .collect()
    }
}

impl<F> std::ops::Index<(usize, usize)> for ScalarMatrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for ScalarMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for ScalarMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A particular solution of `a · x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(a: &ScalarMatrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if b.len() != a.rows {
        return Err(Error::SizeMismatch(a.rows, b.len()));
    }
    let mut aug = ScalarMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (red, rank, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate().take(rank) {
        x[pc] = red[(r, a.cols)].clone();
    }
    Ok(Some(x))
}

/// Coefficient vector of a linear form over the variables of its table.
pub fn linear_coefficients<F: Field>(form: &Polynomial<F>) -> Result<Vec<F>> {
    if !form.is_zero() && (form.degree() != Some(1) || !form.is_homogeneous()) {
        return Err(Error::NotLinear(form.to_string()));
    }
    let n = form.nvars();
    Ok((0..n).map(|i| form.coefficient(&Monomial::var(n, i, 1))).collect())
}

/// True iff the coefficient vectors of the linear forms are independent.
pub fn are_independent_linear_forms<F: Field>(forms: &[Polynomial<F>]) -> Result<bool> {
    if let Some(first) = forms.first() {
        if forms.iter().any(|f| !f.same_ring(first)) {
            return Err(Error::VarMismatch);
        }
    }
    let rows = forms.iter().map(linear_coefficients).collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(true);
    }
    Ok(ScalarMatrix::from_rows(rows)?.rank() == forms.len())
}
