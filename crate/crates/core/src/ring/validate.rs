use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::GradedRing;
use crate::linalg::{conj_vector, nullspace_rows, psd_witness, LinalgError, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Grading,
    Associativity,
    Orthogonality,
    Psd,
    Hausdorff,
    Malformed,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Grading => "grading",
            ViolationKind::Associativity => "associativity",
            ViolationKind::Orthogonality => "orthogonality",
            ViolationKind::Psd => "psd",
            ViolationKind::Hausdorff => "hausdorff",
            ViolationKind::Malformed => "malformed",
        };
        f.write_str(s)
    }
}

/// One failed axiom with its witness.
///
/// Witness layout by kind:
/// - grading: indices `[i, j, k]`, scalars `[coefficient of e_k in e_i e_j]`
/// - associativity: indices `[i, j, k]`, scalars `(e_i e_j) e_k - e_i (e_j e_k)`
/// - orthogonality: indices `[gram, i, j]`, scalars `[G_ij]`
/// - psd: indices `[gram]`, scalars a vector `x` with `<x, x> < 0`
/// - hausdorff: scalars a nonzero `x` with `<x, x> = 0` for every gram
/// - malformed: free-form message, indices when a position is known
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    pub scalars: Vec<Scalar>,
    pub message: String,
}

impl Violation {
    pub fn malformed(message: impl Into<String>) -> Self {
        Violation { kind: ViolationKind::Malformed, indices: vec![], scalars: vec![], message: message.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn kinds(&self) -> BTreeSet<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }

    pub fn of_kind(&self, kind: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }
}

/// Exhaustively checks grading compatibility, associativity, orthogonality
/// of distinct components, semidefiniteness and joint separation.
pub fn validate(ring: &GradedRing) -> ViolationReport {
    let mut violations = Vec::new();
    check_grading(ring, &mut violations);
    check_associativity(ring, &mut violations);
    check_orthogonality(ring, &mut violations);
    check_psd(ring, &mut violations);
    if !violations.iter().any(|v| v.kind == ViolationKind::Malformed) {
        check_hausdorff(ring, &mut violations);
    }
    ViolationReport { violations }
}

fn check_grading(ring: &GradedRing, out: &mut Vec<Violation>) {
    let sig = ring.signature();
    for e in ring.structure_entries() {
        let expected = sig.compose(ring.degree(e.i), ring.degree(e.j)).expect("degrees conform");
        if *ring.degree(e.k) != expected {
            out.push(Violation {
                kind: ViolationKind::Grading,
                indices: vec![e.i, e.j, e.k],
                message: format!(
                    "e_{} e_{} has a component along e_{} of degree {} but deg(e_{}) deg(e_{}) = {}",
                    e.i,
                    e.j,
                    e.k,
                    ring.degree(e.k),
                    e.i,
                    e.j,
                    expected
                ),
                scalars: vec![e.value],
            });
        }
    }
}

fn accumulate(acc: &mut BTreeMap<usize, Scalar>, coeff: &Scalar, v: &[(usize, Scalar)]) {
    for (k, s) in v {
        *acc.entry(*k).or_insert_with(Scalar::zero) += &(coeff * s);
    }
}

fn check_associativity(ring: &GradedRing, out: &mut Vec<Violation>) {
    let n = ring.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = ring.basis_product(i, j);
            for k in 0..n {
                let jk = ring.basis_product(j, k);
                if ij.is_empty() && jk.is_empty() {
                    continue;
                }
                let mut diff: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (l, c) in ij {
                    accumulate(&mut diff, c, ring.basis_product(*l, k));
                }
                for (l, c) in jk {
                    accumulate(&mut diff, &-c, ring.basis_product(i, *l));
                }
                if diff.values().all(Zero::is_zero) {
                    continue;
                }
                let mut dense = vec![Scalar::zero(); n];
                for (l, s) in diff {
                    dense[l] = s;
                }
                out.push(Violation {
                    kind: ViolationKind::Associativity,
                    indices: vec![i, j, k],
                    scalars: dense,
                    message: format!("(e_{i} e_{j}) e_{k} != e_{i} (e_{j} e_{k})"),
                });
            }
        }
    }
}

fn check_orthogonality(ring: &GradedRing, out: &mut Vec<Violation>) {
    for (a, gram) in ring.grams().iter().enumerate() {
        let mut seen = BTreeSet::new();
        for (r, c, value) in gram.nonzero_entries() {
            let pair = (r.min(c), r.max(c));
            if ring.degree(r) == ring.degree(c) || !seen.insert(pair) {
                continue;
            }
            out.push(Violation {
                kind: ViolationKind::Orthogonality,
                indices: vec![a, pair.0, pair.1],
                scalars: vec![gram.get(pair.0, pair.1).clone()],
                message: format!(
                    "gram {a} pairs e_{} (degree {}) with e_{} (degree {}) to {value}",
                    pair.0,
                    ring.degree(pair.0),
                    pair.1,
                    ring.degree(pair.1)
                ),
            });
        }
    }
}

fn check_psd(ring: &GradedRing, out: &mut Vec<Violation>) {
    for (a, gram) in ring.grams().iter().enumerate() {
        match psd_witness(gram) {
            Ok(None) => {}
            Ok(Some(x)) => out.push(Violation {
                kind: ViolationKind::Psd,
                indices: vec![a],
                message: format!("gram {a} is not positive semidefinite"),
                scalars: x,
            }),
            Err(LinalgError::NotHermitian { row, col }) => out.push(Violation {
                kind: ViolationKind::Malformed,
                indices: vec![a, row, col],
                scalars: vec![gram.get(row, col).clone(), gram.get(col, row).clone()],
                message: format!("gram {a} is not Hermitian at ({row}, {col})"),
            }),
            Err(e) => out.push(Violation::malformed(format!("gram {a}: {e}"))),
        }
    }
}

fn check_hausdorff(ring: &GradedRing, out: &mut Vec<Violation>) {
    let n = ring.dim();
    let rows: Vec<Vec<Scalar>> = ring.grams().iter().flat_map(|g| g.row_vectors()).collect();
    let kernel = nullspace_rows(&rows, n).expect("gram shapes checked at construction");
    if let Some(y) = kernel.basis().first() {
        // G y = 0 for every gram, so x = conj(y) has <x, x> = y^* G y = 0.
        out.push(Violation {
            kind: ViolationKind::Hausdorff,
            indices: vec![],
            scalars: conj_vector(y),
            message: format!("joint kernel of the Gram family has dimension {}", kernel.dim()),
        });
    }
}
