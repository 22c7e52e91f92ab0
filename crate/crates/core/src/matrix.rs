//! Small dense matrices over the rational-function field.

use crate::error::{Error, Result};
use crate::poly::Var;
use crate::ratfunc::RationalFunction;
use crate::scalar::Coeff;

#[derive(Clone, PartialEq, Eq)]
pub struct RFMatrix<C> {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction<C>>,
}

impl<C: Coeff> std::fmt::Debug for RFMatrix<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<&RationalFunction<C>>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<C: Coeff> RFMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RFMatrix {
            rows,
            cols,
            entries: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(RFMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Jacobian of `fs` with respect to `vars`: entry `(i, j) = ∂fᵢ/∂varⱼ`.
    pub fn jacobian(fs: &[RationalFunction<C>], vars: &[Var]) -> Self {
        let mut m = Self::zeros(fs.len(), vars.len());
        for (i, f) in fs.iter().enumerate() {
            for (j, v) in vars.iter().enumerate() {
                m.set(i, j, f.derivative(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction<C>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[RationalFunction<C>]) -> Result<Vec<RationalFunction<C>>> {
        if v.len() != self.cols {
            return Err(Error::Invalid("dimension mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(RationalFunction::zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect())
    }

    /// Row echelon form by Gaussian elimination; returns the pivot columns.
    fn echelon(&mut self, rhs: &mut [RationalFunction<C>]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !self.get(i, c).is_zero())
                .min_by_key(|&i| self.get(i, c).size())
            else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.entries.swap(p * self.cols + j, r * self.cols + j);
                }
                if !rhs.is_empty() {
                    rhs.swap(p, r);
                }
            }
            let piv_inv = self.get(r, c).inv().unwrap();
            for i in r + 1..self.rows {
                if self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c) * &piv_inv;
                for j in c..self.cols {
                    let t = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, t);
                }
                if !rhs.is_empty() {
                    rhs[i] = &rhs[i] - &(&f * &rhs[r]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon(&mut []).len()
    }

    pub fn determinant(&self) -> Result<RationalFunction<C>> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = RationalFunction::one();
        let n = self.rows;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(RationalFunction::zero());
            };
            if p != c {
                for j in 0..n {
                    m.entries.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let piv_inv = piv.inv()?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &piv_inv;
                for j in c..n {
                    let t = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, t);
                }
            }
        }
        Ok(det)
    }
}

/// Solves `M · sol = rhs` exactly for square nonsingular `M`.
pub fn solve_linear<C: Coeff>(m: &RFMatrix<C>, rhs: &[RationalFunction<C>]) -> Result<Vec<RationalFunction<C>>> {
    if m.rows != m.cols || rhs.len() != m.rows {
        return Err(Error::Invalid("solve_linear needs a square system".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    let pivots = a.echelon(&mut b);
    if pivots.len() < n {
        return Err(Error::SingularMatrix);
    }
    let mut sol = vec![RationalFunction::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            acc = &acc - &(a.get(i, j) * &sol[j]);
        }
        sol[i] = acc.checked_div(a.get(i, i))?;
    }
    Ok(sol)
}

/// Reduced row echelon basis of the row space of `rows` (all of equal length).
pub fn row_space_rref<C: Coeff>(rows: &[Vec<RationalFunction<C>>]) -> Vec<Vec<RationalFunction<C>>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = RFMatrix::from_rows(rows.to_vec()).expect("rectangular");
    let pivots = m.echelon(&mut []);
    let r = pivots.len();
    for (k, &c) in pivots.iter().enumerate().rev() {
        let inv = m.get(k, c).inv().unwrap();
        for j in 0..m.cols {
            let t = m.get(k, j) * &inv;
            m.set(k, j, t);
        }
        for i in 0..k {
            if m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..m.cols {
                let t = m.get(i, j) - &(&f * m.get(k, j));
                m.set(i, j, t);
            }
        }
    }
    (0..r).map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect()).collect()
}

/// Basis of the right kernel `{v : M·v = 0}`, one vector per free column.
pub fn nullspace<C: Coeff>(m: &RFMatrix<C>) -> Vec<Vec<RationalFunction<C>>> {
    let rows: Vec<Vec<RationalFunction<C>>> =
        (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect()).collect();
    let rref = row_space_rref(&rows);
    let pivots: Vec<usize> = rref
        .iter()
        .map(|row| row.iter().position(|e| !e.is_zero()).expect("nonzero row"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RationalFunction::zero(); m.cols];
        v[free] = RationalFunction::one();
        for (row, &pc) in rref.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}
