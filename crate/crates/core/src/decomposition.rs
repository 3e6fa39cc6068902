//! The graded ideals `E_[g] = E_{1,[g]} + V_[g]` attached to connection
//! classes, the complement `U` of `span{E_g E_{g^-1}}` in `E_1`, and the
//! checks that the ideals cover the ring, annihilate each other and are
//! mutually orthogonal.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::connections::{connection_classes, ConnectionClass, ConnectionClasses};
use crate::group::GroupElement;
use crate::linalg::{form, is_zero_vector, LinalgError, Scalar, Subspace};
use crate::properties::is_coherent;
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("{0:?} is not a connection class")]
    NotABlock(Vec<GroupElement>),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub(crate) fn dense(n: usize, sparse: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for (k, s) in sparse {
        v[*k] = s.clone();
    }
    v
}

/// `span{e_i e_j : i in left, j in right}`
pub(crate) fn basis_product_span(ring: &GradedRing, left: &[usize], right: &[usize]) -> Subspace {
    let n = ring.dim();
    let mut s = Subspace::zero(n);
    for &i in left {
        for &j in right {
            let p = ring.basis_product(i, j);
            if !p.is_empty() {
                s.insert(&dense(n, p)).expect("ambient dimension");
            }
        }
    }
    s
}

/// `E_g E_{g^-1}`
pub(crate) fn inverse_pair_product(ring: &GradedRing, g: &GroupElement) -> Subspace {
    let inv = ring.signature().invert(g).expect("degree conforms");
    basis_product_span(ring, ring.component_indices(g), ring.component_indices(&inv))
}

fn one_span_of<'a>(ring: &GradedRing, members: impl IntoIterator<Item = &'a GroupElement>) -> Subspace {
    let mut s = Subspace::zero(ring.dim());
    for h in members {
        s = s.sum(&inverse_pair_product(ring, h)).expect("ambient dimension");
    }
    s
}

fn homog_sum_of<'a>(ring: &GradedRing, members: impl IntoIterator<Item = &'a GroupElement>) -> Subspace {
    Subspace::coordinate(ring.dim(), members.into_iter().flat_map(|h| ring.component_indices(h).iter().copied()))
}

fn check_block(ring: &GradedRing, class: &BTreeSet<GroupElement>) -> Result<(), DecompositionError> {
    if connection_classes(ring).blocks().contains(class) {
        Ok(())
    } else {
        Err(DecompositionError::NotABlock(class.iter().cloned().collect()))
    }
}

/// `E_{1,[g]} = span{E_h E_{h^-1} : h in class}`
pub fn class_one_span(ring: &GradedRing, class: &BTreeSet<GroupElement>) -> Result<Subspace, DecompositionError> {
    check_block(ring, class)?;
    Ok(one_span_of(ring, class))
}

/// `V_[g]`, the sum of the components of degrees in the class.
pub fn class_homog_sum(ring: &GradedRing, class: &BTreeSet<GroupElement>) -> Result<Subspace, DecompositionError> {
    check_block(ring, class)?;
    Ok(homog_sum_of(ring, class))
}

/// `E_[g] = E_{1,[g]} + V_[g]`, checked to be a graded ideal.
pub fn class_ideal(ring: &GradedRing, class: &BTreeSet<GroupElement>) -> Result<Subspace, DecompositionError> {
    check_block(ring, class)?;
    ideal_of(ring, class)
}

fn ideal_of<'a>(
    ring: &GradedRing,
    members: impl IntoIterator<Item = &'a GroupElement> + Clone,
) -> Result<Subspace, DecompositionError> {
    let ideal = one_span_of(ring, members.clone()).sum(&homog_sum_of(ring, members.clone()))?;
    if !is_graded_ideal(ring, &ideal)? {
        let names: Vec<String> = members.into_iter().map(|g| g.to_string()).collect();
        return Err(DecompositionError::TheoremViolation(format!(
            "the subspace attached to class {{{}}} is not a graded ideal",
            names.join(", ")
        )));
    }
    Ok(ideal)
}

/// `S E ⊆ S`, `E S ⊆ S`, and `S` is the sum of its homogeneous parts.
pub fn is_graded_ideal(ring: &GradedRing, s: &Subspace) -> Result<bool, LinalgError> {
    Ok(ideal_defect(ring, s)?.is_none())
}

/// The first vector showing that `s` is not a graded ideal, if any.
pub fn ideal_defect(ring: &GradedRing, s: &Subspace) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if s.ambient_dim() != ring.dim() {
        return Err(LinalgError::DimensionMismatch { expected: ring.dim(), found: s.ambient_dim() });
    }
    for v in s.basis() {
        for (_, part) in ring.homogeneous_parts(v) {
            if !s.contains(&part)? {
                return Ok(Some(part));
            }
        }
        for i in 0..ring.dim() {
            for p in [ring.left_basis_mul(i, v), ring.right_basis_mul(v, i)] {
                if !s.contains(&p)? {
                    return Ok(Some(p));
                }
            }
        }
    }
    Ok(None)
}

/// `span{E_g E_{g^-1} : g in Σ}`
pub fn support_one_span(ring: &GradedRing) -> Subspace {
    one_span_of(ring, &ring.support())
}

/// The joint orthogonal complement `U` of `span{E_g E_{g^-1}}` inside `E_1`,
/// and whether the two together span `E_1`.
pub fn complement_u(ring: &GradedRing) -> Result<(Subspace, bool), LinalgError> {
    let e1 = ring.identity_component();
    let s = support_one_span(ring);
    let u = s.joint_orthogonal_complement(&e1, ring.grams())?;
    let exact = s.sum(&u)? == e1;
    Ok((u, exact))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassIdeal {
    pub class: ConnectionClass,
    pub one_span: Subspace,
    pub homog_sum: Subspace,
    pub ideal: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub classes: ConnectionClasses,
    /// One entry per class, in class order.
    pub ideals: Vec<ClassIdeal>,
    pub complement_u: Subspace,
    /// `span{E_g E_{g^-1}} + U = E_1`
    pub complement_exact: bool,
    /// `U + sum of ideals = E`
    pub covers: bool,
    /// Products between ideals of distinct classes vanish.
    pub pairwise_zero: bool,
    /// Ideals of distinct classes are orthogonal under every Gram.
    pub orthogonal_ideals: bool,
    pub coherent: bool,
    /// `dim U + sum dim E_[g] - dim(U + sum E_[g])`; zero iff the sum is direct.
    pub dim_defect: usize,
}

fn cross_products_vanish(ring: &GradedRing, a: &Subspace, b: &Subspace) -> bool {
    a.basis().iter().all(|x| {
        b.basis().iter().all(|y| {
            is_zero_vector(&ring.multiply(x, y).expect("ambient dimension"))
                && is_zero_vector(&ring.multiply(y, x).expect("ambient dimension"))
        })
    })
}

fn orthogonal(ring: &GradedRing, a: &Subspace, b: &Subspace) -> bool {
    ring.grams().iter().all(|g| a.basis().iter().all(|x| b.basis().iter().all(|y| form(g, x, y).is_zero())))
}

pub fn decompose(ring: &GradedRing) -> Result<IdealDecomposition, DecompositionError> {
    let classes = connection_classes(ring);
    let mut ideals = Vec::with_capacity(classes.len());
    for class in &classes.classes {
        ideals.push(ClassIdeal {
            class: class.clone(),
            one_span: one_span_of(ring, &class.members),
            homog_sum: homog_sum_of(ring, &class.members),
            ideal: ideal_of(ring, &class.members)?,
        });
    }
    let (complement_u, complement_exact) = complement_u(ring)?;
    let mut total = complement_u.clone();
    let mut dim_sum = complement_u.dim();
    for c in &ideals {
        total = total.sum(&c.ideal)?;
        dim_sum += c.ideal.dim();
    }
    let covers = total.is_full();
    let mut pairwise_zero = true;
    let mut orthogonal_ideals = true;
    for (a, ca) in ideals.iter().enumerate() {
        for cb in &ideals[a + 1..] {
            pairwise_zero &= cross_products_vanish(ring, &ca.ideal, &cb.ideal);
            orthogonal_ideals &= orthogonal(ring, &ca.ideal, &cb.ideal);
        }
    }
    let coherent = is_coherent(ring).coherent;
    if !pairwise_zero {
        return Err(DecompositionError::TheoremViolation("ideals of distinct classes multiply to nonzero".into()));
    }
    if complement_exact && !covers {
        return Err(DecompositionError::TheoremViolation("U and the class ideals do not span the ring".into()));
    }
    if coherent && !orthogonal_ideals {
        return Err(DecompositionError::TheoremViolation("coherent ring with non-orthogonal class ideals".into()));
    }
    Ok(IdealDecomposition {
        classes,
        ideals,
        complement_u,
        complement_exact,
        covers,
        pairwise_zero,
        orthogonal_ideals,
        coherent,
        dim_defect: dim_sum - total.dim(),
    })
}
