//! Structural hypotheses on a graded ring and graded simplicity, decided
//! both by the structural criterion and by brute-force ideal closure.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connections::{connection_classes, is_symmetric_support};
use crate::decomposition::{basis_product_span, decompose, inverse_pair_product, support_one_span};
use crate::group::GroupElement;
use crate::linalg::{form, nullspace_rows, to_sparse, Scalar, Subspace};
use crate::ring::{GradedRing, SparseVec};

/// `E_1 != 0` and every support component is a line.
pub fn is_maximal_length(ring: &GradedRing) -> bool {
    !ring.identity_component().is_zero() && ring.support().iter().all(|g| ring.component_indices(g).len() == 1)
}

/// Checks `E_g E_h + E_h E_g != 0` whenever `g in Σ`, `h in Σ ∪ {1}`, `gh in Σ`.
/// Returns the first failing `(g, h)` with `g`, then `h`, ascending.
pub fn is_sigma_multiplicative(ring: &GradedRing) -> (bool, Option<(GroupElement, GroupElement)>) {
    let support = ring.support();
    let mut partners: Vec<GroupElement> = support.iter().cloned().collect();
    partners.push(ring.identity());
    partners.sort();
    for g in &support {
        for h in &partners {
            let gh = ring.signature().compose(g, h).expect("degrees conform");
            if !support.contains(&gh) {
                continue;
            }
            let (eg, eh) = (ring.component_indices(g), ring.component_indices(h));
            if basis_product_span(ring, eg, eh).is_zero() && basis_product_span(ring, eh, eg).is_zero() {
                return (false, Some((g.clone(), h.clone())));
            }
        }
    }
    (true, None)
}

/// `{v : vE = 0 and Ev = 0}`
pub fn annihilator(ring: &GradedRing) -> Subspace {
    let n = ring.dim();
    // Row (side, i, k) holds the coefficients of e_k in e_i v (side 0) or v e_i (side 1).
    let mut rows: BTreeMap<(u8, usize, usize), Vec<Scalar>> = BTreeMap::new();
    for e in ring.structure_entries() {
        let zero_row = || vec![Scalar::default(); n];
        rows.entry((0, e.i, e.k)).or_insert_with(zero_row)[e.j] = e.value.clone();
        rows.entry((1, e.j, e.k)).or_insert_with(zero_row)[e.i] = e.value;
    }
    let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
    nullspace_rows(&rows, n).expect("rows have ambient length")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceFailure {
    pub g: GroupElement,
    pub h: GroupElement,
    pub gram: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coherence {
    pub coherent: bool,
    /// `span{E_g E_{g^-1} : g in Σ} = E_1`
    pub span_condition: bool,
    pub failures: Vec<CoherenceFailure>,
}

fn pairing_vanishes(gram: &crate::linalg::Matrix, a: &Subspace, b: &Subspace) -> bool {
    a.basis().iter().all(|x| b.basis().iter().all(|y| num_traits::Zero::is_zero(&form(gram, x, y))))
}

/// Span condition plus, for all `g, h in Σ` and every Gram, the pairing of
/// `E_g E_{g^-1}` with `E_h E_{h^-1}` vanishes iff the pairing of `E_g` with
/// `E_h E_{h^-1} E_g` vanishes.
pub fn is_coherent(ring: &GradedRing) -> Coherence {
    let span_condition = support_one_span(ring) == ring.identity_component();
    let support: Vec<GroupElement> = ring.support().into_iter().collect();
    let pair_products: Vec<Subspace> = support.iter().map(|g| inverse_pair_product(ring, g)).collect();
    let n = ring.dim();
    let mut failures = Vec::new();
    for (gi, g) in support.iter().enumerate() {
        let eg = ring.component(g);
        for (hi, h) in support.iter().enumerate() {
            let hh = &pair_products[hi];
            let mut triple = Subspace::zero(n);
            for x in hh.basis() {
                for &k in ring.component_indices(g) {
                    triple.insert(&ring.right_basis_mul(x, k)).expect("ambient dimension");
                }
            }
            for (a, gram) in ring.grams().iter().enumerate() {
                let left = pairing_vanishes(gram, &pair_products[gi], hh);
                let right = pairing_vanishes(gram, &eg, &triple);
                if left != right {
                    failures.push(CoherenceFailure { g: g.clone(), h: h.clone(), gram: a });
                }
            }
        }
    }
    Coherence { coherent: span_condition && failures.is_empty(), span_condition, failures }
}

/// The smallest graded ideal containing `v`.
pub fn ideal_closure(ring: &GradedRing, v: &[Scalar]) -> Subspace {
    let n = ring.dim();
    let mut s = Subspace::zero(n);
    let mut work: Vec<Vec<Scalar>> = Vec::new();
    for (_, part) in ring.homogeneous_parts(v) {
        if s.insert(&part).expect("ambient dimension") {
            work.push(part);
        }
    }
    // Every queued vector is homogeneous, so the span stays graded.
    while let Some(w) = work.pop() {
        if s.is_full() {
            break;
        }
        for i in 0..n {
            for p in [ring.left_basis_mul(i, &w), ring.right_basis_mul(&w, i)] {
                if s.insert(&p).expect("ambient dimension") {
                    work.push(p);
                }
            }
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    SigmaMultiplicative,
    MaximalLength,
    ZeroAnnihilator,
    SymmetricSupport,
    NonemptySupport,
    NonzeroProduct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "failed", rename_all = "snake_case")]
pub enum TheoremVerdict {
    Simple,
    NotSimple,
    HypothesesNotMet(Vec<Hypothesis>),
}

impl TheoremVerdict {
    pub fn decided(&self) -> Option<bool> {
        match self {
            TheoremVerdict::Simple => Some(true),
            TheoremVerdict::NotSimple => Some(false),
            TheoremVerdict::HypothesesNotMet(_) => None,
        }
    }
}

pub fn unmet_hypotheses(ring: &GradedRing) -> Vec<Hypothesis> {
    let mut failed = Vec::new();
    if !is_sigma_multiplicative(ring).0 {
        failed.push(Hypothesis::SigmaMultiplicative);
    }
    if !is_maximal_length(ring) {
        failed.push(Hypothesis::MaximalLength);
    }
    if !annihilator(ring).is_zero() {
        failed.push(Hypothesis::ZeroAnnihilator);
    }
    if !is_symmetric_support(ring).0 {
        failed.push(Hypothesis::SymmetricSupport);
    }
    if ring.support().is_empty() {
        failed.push(Hypothesis::NonemptySupport);
    }
    if !ring.has_nonzero_product() {
        failed.push(Hypothesis::NonzeroProduct);
    }
    failed
}

/// Under the structural hypotheses: simple iff the support is one
/// connection class and `E_1 = span{E_g E_{g^-1}}`.
pub fn graded_simple_theorem(ring: &GradedRing) -> TheoremVerdict {
    let failed = unmet_hypotheses(ring);
    if !failed.is_empty() {
        return TheoremVerdict::HypothesesNotMet(failed);
    }
    if connection_classes(ring).len() == 1 && support_one_span(ring) == ring.identity_component() {
        TheoremVerdict::Simple
    } else {
        TheoremVerdict::NotSimple
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    Simple,
    /// `witness` generates a proper nonzero graded ideal of dimension `ideal_dim`;
    /// absent when the product itself is zero.
    NotSimple { witness: Option<SparseVec>, ideal_dim: usize },
    Inconclusive,
}

impl OracleVerdict {
    pub fn decided(&self) -> Option<bool> {
        match self {
            OracleVerdict::Simple => Some(true),
            OracleVerdict::NotSimple { .. } => Some(false),
            OracleVerdict::Inconclusive => None,
        }
    }
}

/// Refutes simplicity by closing every homogeneous basis vector and
/// `samples` seeded random vectors of `E_1`. Simplicity is confirmed when
/// all those closures are `E` and every nonzero vector of a component of
/// dimension above one is sent by some basis multiplication to a nonzero
/// vector of a one-dimensional component; then every nonzero graded ideal
/// contains a tested line.
pub fn graded_simple_oracle(ring: &GradedRing, samples: usize, seed: u64) -> OracleVerdict {
    let n = ring.dim();
    if !ring.has_nonzero_product() {
        return OracleVerdict::NotSimple { witness: None, ideal_dim: 0 };
    }
    let proper = |s: &Subspace| !s.is_zero() && !s.is_full();
    for i in 0..n {
        let c = ideal_closure(ring, &ring.unit(i));
        if proper(&c) {
            return OracleVerdict::NotSimple { witness: Some(to_sparse(&ring.unit(i))), ideal_dim: c.dim() };
        }
    }
    let e1 = ring.component_indices(&ring.identity()).to_vec();
    if !e1.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut v = vec![Scalar::default(); n];
            for &i in &e1 {
                v[i] = Scalar::from_integer(rng.gen_range(-3..=3));
            }
            let c = ideal_closure(ring, &v);
            if proper(&c) {
                return OracleVerdict::NotSimple { witness: Some(to_sparse(&v)), ideal_dim: c.dim() };
            }
        }
    }
    if every_wide_component_reaches_a_line(ring) {
        OracleVerdict::Simple
    } else {
        OracleVerdict::Inconclusive
    }
}

fn every_wide_component_reaches_a_line(ring: &GradedRing) -> bool {
    let n = ring.dim();
    let sig = ring.signature();
    let is_line = |g: &GroupElement| ring.component_indices(g).len() == 1;
    for (g, idx) in ring.components() {
        if idx.len() <= 1 {
            continue;
        }
        // x = sum_a x_a e_{idx[a]}; collect the linear maps x -> e_i x, x e_i landing in lines.
        let mut rows = Vec::new();
        for i in 0..n {
            let target = sig.compose(ring.degree(i), g).expect("degrees conform");
            if !is_line(&target) {
                continue;
            }
            let k = ring.component_indices(&target)[0];
            let left: Vec<Scalar> = idx.iter().map(|&j| coefficient(ring.basis_product(i, j), k)).collect();
            let right: Vec<Scalar> = idx.iter().map(|&j| coefficient(ring.basis_product(j, i), k)).collect();
            rows.push(left);
            rows.push(right);
        }
        if !nullspace_rows(&rows, idx.len()).expect("row lengths").is_zero() {
            return false;
        }
    }
    true
}

fn coefficient(sparse: &[(usize, Scalar)], k: usize) -> Scalar {
    sparse.iter().find(|(i, _)| *i == k).map(|(_, s)| s.clone()).unwrap_or_default()
}

/// Per class ideal, viewed as a graded ring in its own right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassIdealSimplicity {
    pub representative: GroupElement,
    pub dim: usize,
    pub verdict: TheoremVerdict,
    pub annihilator_zero: bool,
}

/// When the ring is Σ-multiplicative, of maximal length, with zero
/// annihilator, symmetric support and coherent, every class ideal should be
/// graded simple and the ideals mutually orthogonal. `None` when those
/// hypotheses fail.
pub fn class_ideals_simplicity(ring: &GradedRing) -> Option<(Vec<ClassIdealSimplicity>, bool)> {
    let failed = unmet_hypotheses(ring);
    let structural = failed.iter().all(|h| matches!(h, Hypothesis::NonemptySupport | Hypothesis::NonzeroProduct));
    if !structural || !is_coherent(ring).coherent {
        return None;
    }
    let d = decompose(ring).ok()?;
    let checks = d
        .ideals
        .iter()
        .map(|c| {
            let sub = ring.restrict(&c.ideal).expect("class ideals are graded subrings");
            ClassIdealSimplicity {
                representative: c.class.representative.clone(),
                dim: sub.dim(),
                verdict: graded_simple_theorem(&sub),
                annihilator_zero: annihilator(&sub).is_zero(),
            }
        })
        .collect();
    Some((checks, d.orthogonal_ideals))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub maximal_length: bool,
    pub sigma_multiplicative: bool,
    pub sigma_counterexample: Option<(GroupElement, GroupElement)>,
    /// Echelon basis of the annihilator.
    pub annihilator: Vec<SparseVec>,
    pub symmetric_support: bool,
    pub asymmetry_witness: Option<GroupElement>,
    pub coherence: Coherence,
    pub simple_by_theorem: TheoremVerdict,
    pub simple_by_oracle: OracleVerdict,
}

impl PropertyReport {
    /// The theorem and the oracle agree whenever both are decided.
    pub fn consistent(&self) -> bool {
        match (self.simple_by_theorem.decided(), self.simple_by_oracle.decided()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

pub fn analyze(ring: &GradedRing, samples: usize, seed: u64) -> PropertyReport {
    let (sigma_multiplicative, sigma_counterexample) = is_sigma_multiplicative(ring);
    let (symmetric_support, asymmetry_witness) = is_symmetric_support(ring);
    PropertyReport {
        maximal_length: is_maximal_length(ring),
        sigma_multiplicative,
        sigma_counterexample,
        annihilator: annihilator(ring).basis().iter().map(|v| to_sparse(v)).collect(),
        symmetric_support,
        asymmetry_witness,
        coherence: is_coherent(ring),
        simple_by_theorem: graded_simple_theorem(ring),
        simple_by_oracle: graded_simple_oracle(ring, samples, seed),
    }
}
