use num_traits::{One, Zero};

use super::matrix::{axpy, conj_vector, dot, is_zero_vector};
use super::{LinalgError, Matrix, Scalar};

/// A linear subspace of `K^n` held in reduced row-echelon form.
///
/// Rows are sorted by pivot column, every pivot entry is one and every
/// pivot column is zero outside its own row. The representation is
/// canonical, so `==` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: (0..ambient_dim).map(|i| super::unit_vector(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subspace::zero(ambient_dim);
        for i in indices {
            s.insert_unchecked(super::unit_vector(ambient_dim, i));
        }
        s
    }

    pub fn span<V: AsRef<[Scalar]>>(
        vectors: impl IntoIterator<Item = V>,
        ambient_dim: usize,
    ) -> Result<Self, LinalgError> {
        let mut s = Subspace::zero(ambient_dim);
        for v in vectors {
            s.insert(v.as_ref())?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, len: usize) -> Result<(), LinalgError> {
        if len != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: len });
        }
        Ok(())
    }

    /// Residual of `v` after elimination against the basis. Zero iff `v` is in the span.
    fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let t = -r[p].clone();
            axpy(&mut r, &t, row);
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        Ok(is_zero_vector(&self.residual(v)))
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        Ok(self.insert_unchecked(v.to_vec()))
    }

    fn insert_unchecked(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.residual(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let t = -row[p].clone();
                axpy(row, &t, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_len(other.ambient_dim)?;
        let (mut big, small) = if self.dim() >= other.dim() { (self.clone(), other) } else { (other.clone(), self) };
        for row in &small.rows {
            big.insert_unchecked(row.clone());
        }
        Ok(big)
    }

    /// The linear functionals vanishing on `self`, as vectors under the bilinear dot product.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient_dim;
        let mut out = Subspace::zero(n);
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            out.insert_unchecked(v);
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_len(other.ambient_dim)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        // x = sum c_k s_k lies in `other` iff it is killed by every functional of ann(other).
        let ann = other.annihilator();
        let constraints: Vec<Vec<Scalar>> =
            ann.rows.iter().map(|y| self.rows.iter().map(|s| dot(s, y)).collect()).collect();
        let coeffs = nullspace_of_rows(&constraints, self.dim());
        self.combine(&coeffs)
    }

    /// Maps a subspace of coefficient space `K^dim(self)` into the ambient space.
    fn combine(&self, coeffs: &Subspace) -> Result<Subspace, LinalgError> {
        let mut out = Subspace::zero(self.ambient_dim);
        for c in &coeffs.rows {
            let mut x = vec![Scalar::zero(); self.ambient_dim];
            for (ck, sk) in c.iter().zip(&self.rows) {
                axpy(&mut x, ck, sk);
            }
            out.insert_unchecked(x);
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_len(other.ambient_dim)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.rows.iter().all(|r| is_zero_vector(&other.residual(r))))
    }

    /// `{x in within : <x, s>_a = 0 for every s in self and every gram a}`.
    pub fn joint_orthogonal_complement(&self, within: &Subspace, grams: &[Matrix]) -> Result<Subspace, LinalgError> {
        self.check_len(within.ambient_dim)?;
        for g in grams {
            if g.rows() != self.ambient_dim || g.cols() != self.ambient_dim {
                return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: g.rows() });
            }
        }
        if !self.is_subspace_of(within)? {
            return Err(LinalgError::NotContained);
        }
        // For x = sum c_k w_k the condition reads sum_k c_k (w_k^T G conj(s)) = 0.
        let mut constraints = Vec::new();
        for g in grams {
            for s in &self.rows {
                let gs = mat_vec(g, &conj_vector(s));
                let row: Vec<Scalar> = within.rows.iter().map(|w| dot(w, &gs)).collect();
                if !is_zero_vector(&row) {
                    constraints.push(row);
                }
            }
        }
        let coeffs = nullspace_of_rows(&constraints, within.dim());
        within.combine(&coeffs)
    }
}

fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    (0..m.rows()).map(|r| dot(m.row(r), v)).collect()
}

fn nullspace_of_rows(rows: &[Vec<Scalar>], cols: usize) -> Subspace {
    let mut row_space = Subspace::zero(cols);
    for r in rows {
        row_space.insert_unchecked(r.clone());
    }
    row_space.annihilator()
}

/// Exact kernel `{x : M x = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    nullspace_of_rows(&m.row_vectors(), m.cols())
}

/// Kernel of a matrix given as a list of (possibly sparse-origin) rows.
pub fn nullspace_rows(rows: &[Vec<Scalar>], cols: usize) -> Result<Subspace, LinalgError> {
    for r in rows {
        if r.len() != cols {
            return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
        }
    }
    Ok(nullspace_of_rows(rows, cols))
}

pub fn rank(m: &Matrix) -> usize {
    Subspace::span(m.row_vectors(), m.cols()).map(|s| s.dim()).unwrap_or(0)
}
