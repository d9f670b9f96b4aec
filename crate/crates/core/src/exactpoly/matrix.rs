use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::poly::{same_ring, MPoly, Ring};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

/// How [`PolyMatrix::det_with`] expands the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetMethod {
    /// Fraction-free Gaussian elimination with exact polynomial division.
    #[default]
    Bareiss,
    /// Laplace expansion along rows with the column-subset minors memoized.
    Minors,
}

/// Rectangular matrix of polynomials over a common ring, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<MPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_fn(ring: &Arc<Ring>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix::new(ring, rows, cols, entries).expect("entries built in the matrix ring")
    }

    /// Builds from a row list, checking it is rectangular.
    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        PolyMatrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { MPoly::one(ring) } else { MPoly::zero(ring) })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> Result<MPoly>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = entries[0].ring().clone();
        PolyMatrix::new(&ring, self.rows, self.cols, entries)
    }

    /// Keeps the listed rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.rows });
        }
        Ok(Self::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(MPoly::zero(&self.ring), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        }))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<RatMatrix> {
        let vals = self.entries.iter().map(|e| e.evaluate(point)).collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix::from_vec(self.rows, self.cols, vals))
    }

    pub fn det(&self) -> Result<MPoly> {
        self.det_with(DetMethod::Bareiss)
    }

    pub fn det_with(&self, method: DetMethod) -> Result<MPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(match method {
            DetMethod::Bareiss => self.det_bareiss(),
            DetMethod::Minors => self.det_minors(),
        })
    }

    fn det_bareiss(&self) -> MPoly {
        let n = self.rows;
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = MPoly::one(&self.ring);
        for k in 0..n.saturating_sub(1) {
            if a.get(k, k).is_zero() {
                // prefer the sparsest nonzero pivot below
                let Some(p) = (k + 1..n).filter(|&i| !a.get(i, k).is_zero()).min_by_key(|&i| a.get(i, k).len()) else {
                    return MPoly::zero(&self.ring);
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let aik = a.get(i, k).clone();
                for j in k + 1..n {
                    let num = &(&pivot * a.get(i, j)) - &(&aik * a.get(k, j));
                    let v = if prev.is_constant() {
                        num.scale(&prev.constant_term().recip())
                    } else {
                        num.exact_divide(&prev).expect("Bareiss quotient is exact")
                    };
                    a.entries[i * n + j] = v;
                }
                a.entries[i * n + k] = MPoly::zero(&self.ring);
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn det_minors(&self) -> MPoly {
        let n = self.rows;
        let mut memo: HashMap<u64, MPoly> = HashMap::new();
        fn rec(m: &PolyMatrix, row: usize, cols: u64, memo: &mut HashMap<u64, MPoly>) -> MPoly {
            if cols == 0 {
                return MPoly::one(&m.ring);
            }
            if let Some(v) = memo.get(&cols) {
                return v.clone();
            }
            let mut acc = MPoly::zero(&m.ring);
            let mut sign_pos = 0;
            for j in 0..m.cols {
                if cols & (1 << j) == 0 {
                    continue;
                }
                let e = m.get(row, j);
                if !e.is_zero() {
                    let sub = rec(m, row + 1, cols & !(1 << j), memo);
                    let t = e * &sub;
                    acc = if sign_pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                sign_pos += 1;
            }
            memo.insert(cols, acc.clone());
            acc
        }
        // each column subset fixes the row it is expanded from
        rec(self, 0, (1u64 << n) - 1, &mut memo)
    }
}

/// Symmetric matrix `sum_i y_i G_i` in a fresh ring of dual variables.
pub fn linear_combination(ring: &Arc<Ring>, mats: &[RatMatrix]) -> Result<PolyMatrix> {
    if mats.len() != ring.nvars() {
        return Err(Error::LengthMismatch { expected: ring.nvars(), got: mats.len() });
    }
    let (r, c) = (mats[0].rows(), mats[0].cols());
    if mats.iter().any(|m| m.rows() != r || m.cols() != c) {
        return Err(Error::Invalid("matrices of different shapes".into()));
    }
    Ok(PolyMatrix::from_fn(ring, r, c, |i, j| {
        let terms = mats.iter().enumerate().filter(|(_, m)| !m[(i, j)].is_zero()).map(|(k, m)| {
            (super::Monomial::var(ring.nvars(), k), m[(i, j)].clone())
        });
        MPoly::from_terms(ring, terms)
    }))
}

impl PolyMatrix {
    /// Whether all entries are constants.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(MPoly::is_constant)
    }

    /// Rational matrix of constant entries.
    pub fn to_rational(&self) -> Option<RatMatrix> {
        self.is_constant().then(|| {
            RatMatrix::from_vec(self.rows, self.cols, self.entries.iter().map(MPoly::constant_term).collect())
        })
    }

    pub fn scalar(ring: &Arc<Ring>, m: &RatMatrix) -> Self {
        Self::from_fn(ring, m.rows(), m.cols(), |i, j| MPoly::constant(ring, m[(i, j)].clone()))
    }
}
