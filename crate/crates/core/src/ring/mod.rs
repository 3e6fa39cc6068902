//! Finite-dimensional group-graded associative rings with a finite family
//! of semidefinite inner products.
//!
//! A ring is given on a homogeneous basis `e_0, ..., e_{n-1}`: every basis
//! element carries one degree, products of basis elements are sparse
//! structure-constant vectors, and each inner product is an `n x n` Gram
//! matrix. Subspaces of a finite-dimensional space are closed, so closures
//! never appear explicitly.

mod validate;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::group::{GroupElement, GroupSignature};
use crate::linalg::{form, is_zero_vector, LinalgError, Matrix, Scalar, Subspace};

pub use validate::{validate, Violation, ViolationKind, ViolationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("malformed ring: {0}")]
    Malformed(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("subspace is not a graded subring: {0}")]
    NotGradedSubring(String),
}

/// One structure constant: the coefficient of `e_k` in `e_i e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

impl StructureEntry {
    pub fn new(i: usize, j: usize, k: usize, value: Scalar) -> Self {
        StructureEntry { i, j, k, value }
    }
}

/// Sparse vector, sorted by index, without zero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRing {
    sig: GroupSignature,
    labels: Vec<String>,
    degrees: Vec<GroupElement>,
    structure: BTreeMap<(usize, usize), SparseVec>,
    grams: Vec<Matrix>,
    components: BTreeMap<GroupElement, Vec<usize>>,
}

impl GradedRing {
    /// Builds a ring after structural checks only. Axioms are checked by [`validate`].
    pub fn new(
        sig: GroupSignature,
        labels: Vec<String>,
        degrees: Vec<GroupElement>,
        entries: impl IntoIterator<Item = StructureEntry>,
        grams: Vec<Matrix>,
    ) -> Result<Self, RingError> {
        let n = labels.len();
        if degrees.len() != n {
            return Err(RingError::Malformed(format!("{} labels but {} degrees", n, degrees.len())));
        }
        for (i, d) in degrees.iter().enumerate() {
            if !sig.conforms(d) {
                return Err(RingError::Malformed(format!("degrees[{i}] = {d} does not conform to the group")));
            }
        }
        let mut structure: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (idx, e) in entries.into_iter().enumerate() {
            if e.i >= n || e.j >= n || e.k >= n {
                return Err(RingError::Malformed(format!(
                    "structure[{idx}] = ({}, {}, {}) out of range for dimension {n}",
                    e.i, e.j, e.k
                )));
            }
            let slot = structure.entry((e.i, e.j)).or_default();
            if slot.contains_key(&e.k) {
                return Err(RingError::Malformed(format!(
                    "structure[{idx}] duplicates entry ({}, {}, {})",
                    e.i, e.j, e.k
                )));
            }
            slot.insert(e.k, e.value);
        }
        let structure = structure
            .into_iter()
            .map(|(key, v)| (key, v.into_iter().filter(|(_, s)| !s.is_zero()).collect::<SparseVec>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        if grams.is_empty() {
            return Err(RingError::Malformed("at least one Gram matrix is required".into()));
        }
        for (a, g) in grams.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(RingError::Malformed(format!(
                    "grams[{a}] is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let mut components: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            components.entry(d.clone()).or_default().push(i);
        }
        Ok(GradedRing { sig, labels, degrees, structure, grams, components })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.sig
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn grams(&self) -> &[Matrix] {
        &self.grams
    }

    pub fn identity(&self) -> GroupElement {
        self.sig.identity()
    }

    /// Structure constants as `(i, j, k, value)` in lexicographic order.
    pub fn structure_entries(&self) -> impl Iterator<Item = StructureEntry> + '_ {
        self.structure
            .iter()
            .flat_map(|(&(i, j), v)| v.iter().map(move |(k, s)| StructureEntry::new(i, j, *k, s.clone())))
    }

    /// `e_i e_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.structure.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn has_nonzero_product(&self) -> bool {
        !self.structure.is_empty()
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), RingError> {
        if v.len() != self.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), found: v.len() }.into());
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, RingError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let p = self.basis_product(i, j);
                if p.is_empty() {
                    continue;
                }
                let c = ui * vj;
                for (k, s) in p {
                    out[*k] += &(&c * s);
                }
            }
        }
        Ok(out)
    }

    /// `e_i v`
    pub fn left_basis_mul(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, s) in self.basis_product(i, j) {
                out[*k] += &(vj * s);
            }
        }
        out
    }

    /// `v e_i`
    pub fn right_basis_mul(&self, v: &[Scalar], i: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, s) in self.basis_product(j, i) {
                out[*k] += &(vj * s);
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        crate::linalg::unit_vector(self.dim(), i)
    }

    /// Non-identity degrees with a nonzero component.
    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.components.keys().filter(|g| !g.is_identity()).cloned().collect()
    }

    /// Attained degrees with the basis indices of each component.
    pub fn components(&self) -> &BTreeMap<GroupElement, Vec<usize>> {
        &self.components
    }

    pub fn component_indices(&self, g: &GroupElement) -> &[usize] {
        self.components.get(g).map_or(&[], Vec::as_slice)
    }

    pub fn component(&self, g: &GroupElement) -> Subspace {
        Subspace::coordinate(self.dim(), self.component_indices(g).iter().copied())
    }

    pub fn identity_component(&self) -> Subspace {
        self.component(&self.identity())
    }

    /// Projection of `v` onto the component of degree `g`.
    pub fn project(&self, v: &[Scalar], g: &GroupElement) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for &i in self.component_indices(g) {
            out[i] = v[i].clone();
        }
        out
    }

    /// Nonzero homogeneous parts of `v`, keyed by degree.
    pub fn homogeneous_parts(&self, v: &[Scalar]) -> Vec<(GroupElement, Vec<Scalar>)> {
        self.components
            .keys()
            .map(|g| (g.clone(), self.project(v, g)))
            .filter(|(_, p)| !is_zero_vector(p))
            .collect()
    }

    /// The ring structure induced on a graded subring, with the ambient
    /// Gram family restricted to it. The new basis is the union of the
    /// echelon bases of `sub ∩ E_g` over attained degrees `g`.
    pub fn restrict(&self, sub: &Subspace) -> Result<GradedRing, RingError> {
        let n = self.dim();
        if sub.ambient_dim() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, found: sub.ambient_dim() }.into());
        }
        let mut pieces: BTreeMap<GroupElement, (usize, Subspace)> = BTreeMap::new();
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut degrees = Vec::new();
        for g in self.components.keys() {
            let piece = sub.intersect(&self.component(g))?;
            if piece.is_zero() {
                continue;
            }
            pieces.insert(g.clone(), (basis.len(), piece.clone()));
            for b in piece.basis() {
                basis.push(b.clone());
                degrees.push(g.clone());
            }
        }
        if basis.len() != sub.dim() {
            return Err(RingError::NotGradedSubring(format!(
                "homogeneous parts span dimension {} of {}",
                basis.len(),
                sub.dim()
            )));
        }
        let mut entries = Vec::new();
        for (a, (ba, da)) in basis.iter().zip(&degrees).enumerate() {
            for (b, (bb, db)) in basis.iter().zip(&degrees).enumerate() {
                let p = self.multiply(ba, bb)?;
                if is_zero_vector(&p) {
                    continue;
                }
                let target = self.sig.compose(da, db).map_err(|e| RingError::Malformed(e.to_string()))?;
                let coords = pieces
                    .get(&target)
                    .and_then(|(offset, piece)| piece.coordinates(&p).ok().flatten().map(|c| (*offset, c)));
                let Some((offset, coords)) = coords else {
                    return Err(RingError::NotGradedSubring(format!("product of basis vectors {a} and {b} leaves it")));
                };
                for (c, value) in coords.into_iter().enumerate() {
                    if !value.is_zero() {
                        entries.push(StructureEntry::new(a, b, offset + c, value));
                    }
                }
            }
        }
        let grams = self
            .grams
            .iter()
            .map(|g| {
                let mut m = Matrix::zeros(basis.len(), basis.len());
                for (a, x) in basis.iter().enumerate() {
                    for (b, y) in basis.iter().enumerate() {
                        m.set(a, b, form(g, x, y));
                    }
                }
                m
            })
            .collect();
        let labels = basis.iter().map(|b| self.describe(b)).collect();
        GradedRing::new(self.sig.clone(), labels, degrees, entries, grams)
    }

    /// Human-readable linear combination of basis labels.
    pub fn describe(&self, v: &[Scalar]) -> String {
        let terms: Vec<(usize, &Scalar)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        match terms.as_slice() {
            [] => "0".to_string(),
            [(i, c)] if **c == Scalar::from_integer(1) => self.labels[*i].clone(),
            _ => terms.iter().map(|(i, c)| format!("({c})*{}", self.labels[*i])).collect::<Vec<_>>().join(" + "),
        }
    }

    /// The ring with every Gram matrix replaced; structure untouched.
    pub fn with_grams(&self, grams: Vec<Matrix>) -> Result<GradedRing, RingError> {
        GradedRing::new(
            self.sig.clone(),
            self.labels.clone(),
            self.degrees.clone(),
            self.structure_entries().collect::<Vec<_>>(),
            grams,
        )
    }

    /// Applies `f` to each structure entry, dropping entries mapped to `None`.
    pub fn map_structure(
        &self,
        mut f: impl FnMut(StructureEntry) -> Option<StructureEntry>,
    ) -> Result<GradedRing, RingError> {
        let entries: Vec<StructureEntry> = self.structure_entries().filter_map(&mut f).collect();
        GradedRing::new(self.sig.clone(), self.labels.clone(), self.degrees.clone(), entries, self.grams.clone())
    }
}
