//! Exact linear algebra: small dense matrices for coordinate changes, kernels
//! of evaluation matrices, and ranks of the Koszul differentials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse vector as `(column, value)` pairs, strictly increasing in column,
/// without zero values.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Column count at which rank computations switch from dense to sparse
/// elimination.
pub const DENSE_RANK_LIMIT: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MatrixShape {
                expected: c,
                rows: r,
                cols: c,
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Permutation matrix exchanging two coordinates.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::identity(n);
        m.set(a, a, F::zero());
        m.set(b, b, F::zero());
        m.set(a, b, F::one());
        m.set(b, a, F::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape {
                expected: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero())
            })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::MatrixShape {
                expected: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::<F>::identity(n).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let s = a[col][col].inverse().unwrap();
            for j in 0..n {
                a[col][j] = a[col][j].clone() * s.clone();
                inv[col][j] = inv[col][j].clone() * s.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
                }
            }
        }
        Matrix::from_rows(inv)
    }

    pub fn rank(&self) -> usize {
        let vecs = (0..self.rows).map(|i| dense_to_sparse(self.row(i))).collect();
        F::rank(vecs, self.cols)
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut a = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let s = a[r][c].inverse().unwrap();
            for x in &mut a[r][c..cols] {
                *x = x.clone() * s.clone();
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Unit-diagonal upper-triangular matrix with off-diagonal entries drawn
/// from the field, deterministic in `seed`.
pub fn random_upper_triangular<F: Scalar>(n: usize, seed: u64) -> Matrix<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, F::sample(&mut rng));
        }
    }
    m
}

pub fn dense_to_sparse<F: Scalar>(row: &[F]) -> SparseVec<F> {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Rank over a field by Gaussian elimination; dense below
/// [`DENSE_RANK_LIMIT`] columns, incremental sparse echelon form above.
pub fn rank_over_field<F: Scalar>(vectors: Vec<SparseVec<F>>, ncols: usize) -> usize {
    if vectors.is_empty() || ncols == 0 {
        return 0;
    }
    if ncols < DENSE_RANK_LIMIT {
        dense_rank(vectors, ncols)
    } else {
        sparse_rank(vectors)
    }
}

fn dense_rank<F: Scalar>(vectors: Vec<SparseVec<F>>, ncols: usize) -> usize {
    let mut a: Vec<Vec<F>> = vectors
        .into_iter()
        .filter(|v| !v.is_empty())
        .map(|v| {
            let mut row = vec![F::zero(); ncols];
            for (c, x) in v {
                row[c] = x;
            }
            row
        })
        .collect();
    let rows = a.len();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].inverse().unwrap();
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone() * inv.clone();
            for j in c..ncols {
                if !prow[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * prow[j].clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

fn sparse_rank<F: Scalar>(vectors: Vec<SparseVec<F>>) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Incremental row echelon form over a field.
#[derive(Debug, Clone, Default)]
pub struct Echelon<F> {
    // pivot column -> monic row whose first entry sits in that column
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored rows; returns the reduced vector.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut done = 0;
        // entries before `done` are already non-pivot columns
        while done < v.len() {
            let (c, lead) = v[done].clone();
            match self.pivots.get(&c) {
                Some(p) => v = axpy(&v, &-lead, p),
                None => done += 1,
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let mut v = v;
        while let Some((c, lead)) = v.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => v = axpy(&v, &-lead, p),
                None => {
                    let inv = lead.inverse().unwrap();
                    let v: SparseVec<F> = v.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
                    self.pivots.insert(c, v);
                    return true;
                }
            }
        }
        false
    }
}

/// `a + s * b` for sparse vectors.
pub fn axpy<F: Scalar>(a: &SparseVec<F>, s: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() + s.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `QQ` by integer row operations. Each row is scaled to a
/// primitive integer vector; elimination `v <- p_c * v - v_c * p` keeps
/// entries integral and the content is divided out after every step.
pub fn rank_fraction_free(vectors: Vec<SparseVec<BigRational>>, _ncols: usize) -> usize {
    let mut pivots: HashMap<usize, SparseVec<BigInt>> = HashMap::new();
    for v in vectors {
        let mut v = primitive(clear_denominators(&v));
        while let Some((c, lead)) = v.first().cloned() {
            match pivots.get(&c) {
                Some(p) => {
                    let pc = &p[0].1;
                    v = primitive(int_combine(pc, &v, &lead, p));
                }
                None => {
                    pivots.insert(c, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn clear_denominators(v: &SparseVec<BigRational>) -> SparseVec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    v.iter()
        .map(|(c, x)| (*c, x.numer() * (&l / x.denom())))
        .collect()
}

fn primitive(v: SparseVec<BigInt>) -> SparseVec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|(c, x)| (c, x / &g)).collect()
}

/// `a * v - b * p`, dropping zeros.
fn int_combine(a: &BigInt, v: &SparseVec<BigInt>, b: &BigInt, p: &SparseVec<BigInt>) -> SparseVec<BigInt> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let x = a * &v[i].1 - b * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
