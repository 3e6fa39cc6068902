//! Worked examples on banded matrix-unit rings, group algebras and small
//! hand-built rings.

use std::collections::BTreeSet;

use graded_core::connections::{connected, connection_classes, is_symmetric_support, verify_certificate, ConnectionPath};
use graded_core::decomposition::{class_homog_sum, class_ideal, class_one_span, complement_u, decompose, is_graded_ideal};
use graded_core::generators::{
    banded_degree, gen_banded, gen_direct_sum, gen_group_algebra, gen_null, gen_triangular, BandedRingParams, Embedding,
};
use graded_core::group::{GroupElement, GroupSignature};
use graded_core::linalg::{Scalar, Subspace};
use graded_core::properties::{
    annihilator, graded_simple_oracle, graded_simple_theorem, ideal_closure, is_coherent, is_maximal_length,
    is_sigma_multiplicative, Hypothesis, OracleVerdict, TheoremVerdict,
};
use graded_core::ring::{validate, GradedRing, StructureEntry};
use graded_core::spec_file::RingSpecFile;

fn banded(n: usize, r: usize) -> (BandedRingParams, GradedRing) {
    let p = BandedRingParams::new(n, r);
    let ring = gen_banded(&p).unwrap();
    (p, ring)
}

/// `x_{a,t}^-1 x_{b,t}` with 1-based `a`, `b` and 0-based `t`.
fn x(ring: &GradedRing, p: &BandedRingParams, a: usize, b: usize, t: usize) -> GroupElement {
    ring.signature().element(banded_degree(p, a - 1, b - 1, t)).unwrap()
}

fn band(ring: &GradedRing, p: &BandedRingParams, t: usize) -> BTreeSet<GroupElement> {
    let mut s = BTreeSet::new();
    for a in 1..=p.n {
        for b in (1..=p.n).filter(|&b| b != a) {
            s.insert(x(ring, p, a, b, t));
        }
    }
    s
}

#[test]
fn five_step_connection_inside_a_band() {
    let (p, ring) = banded(4, 2);
    let t = 1;
    let (n, m, r, s, u, v) = (1, 2, 3, 4, 4, 1);
    let q = x(&ring, &p, n, m, t);
    let target = x(&ring, &p, r, s, t);
    let path = ConnectionPath {
        from: q.clone(),
        to: target.clone(),
        elements: vec![q, x(&ring, &p, u, n, t), x(&ring, &p, m, v, t), x(&ring, &p, r, u, t), x(&ring, &p, v, s, t)],
    };
    assert!(verify_certificate(&ring, &path));

    let mut broken = path.clone();
    broken.elements.swap(1, 2);
    assert!(!verify_certificate(&ring, &broken));

    let found = connected(&ring, &path.from, &path.to).unwrap().unwrap();
    assert!(verify_certificate(&ring, &found));
    assert!(found.len() <= path.len());
}

#[test]
fn bands_are_not_connected_to_each_other() {
    let (p, ring) = banded(3, 3);
    for t in 0..3 {
        for w in (0..3).filter(|&w| w != t) {
            assert_eq!(connected(&ring, &x(&ring, &p, 1, 2, t), &x(&ring, &p, 2, 3, w)).unwrap(), None);
        }
    }
    let classes = connection_classes(&ring);
    let mut blocks = classes.blocks();
    blocks.sort();
    let mut expected: Vec<_> = (0..3).map(|t| band(&ring, &p, t)).collect();
    expected.sort();
    assert_eq!(blocks, expected);
}

#[test]
fn banded_dimensions() {
    for (n, r) in [(2, 1), (3, 2), (4, 3)] {
        let (p, ring) = banded(n, r);
        assert!(validate(&ring).is_empty());
        assert_eq!(ring.support().len(), r * n * (n - 1));
        assert!(is_maximal_length(&ring));
        assert!(is_sigma_multiplicative(&ring).0);
        assert!(annihilator(&ring).is_zero());
        assert!(is_symmetric_support(&ring).0);
        assert!(is_coherent(&ring).coherent);
        for t in 0..r {
            let class = band(&ring, &p, t);
            let one = class_one_span(&ring, &class).unwrap();
            let homog = class_homog_sum(&ring, &class).unwrap();
            let ideal = class_ideal(&ring, &class).unwrap();
            assert_eq!((one.dim(), homog.dim(), ideal.dim()), (n, n * (n - 1), n * n));
            let diagonal = Subspace::coordinate(ring.dim(), (0..n).map(|i| p.index(i, i, t)));
            assert_eq!(one, diagonal);
            let pr = &p;
            let block = Subspace::coordinate(ring.dim(), (0..n).flat_map(|i| (0..n).map(move |j| pr.index(i, j, t))));
            assert_eq!(ideal, block);
        }
        let d = decompose(&ring).unwrap();
        assert_eq!(d.ideals.len(), r);
        assert!(d.complement_u.is_zero());
        assert!(d.complement_exact && d.covers && d.pairwise_zero && d.orthogonal_ideals && d.coherent);
        assert_eq!(d.dim_defect, 0);
    }
}

#[test]
fn band_ideals_are_simple() {
    let (p, ring) = banded(3, 2);
    assert_eq!(graded_simple_theorem(&ring), TheoremVerdict::NotSimple);
    assert_eq!(graded_simple_oracle(&ring, 4, 0).decided(), Some(false));
    for t in 0..2 {
        let block = class_ideal(&ring, &band(&ring, &p, t)).unwrap();
        let sub = ring.restrict(&block).unwrap();
        assert_eq!(graded_simple_theorem(&sub), TheoremVerdict::Simple);
        assert_eq!(graded_simple_oracle(&sub, 4, 0), OracleVerdict::Simple);
    }
}

#[test]
fn single_matrix_unit_is_not_an_ideal() {
    let (p, ring) = banded(2, 1);
    let line = Subspace::span([ring.unit(p.index(0, 1, 0))], ring.dim()).unwrap();
    assert!(!is_graded_ideal(&ring, &line).unwrap());
    assert!(is_graded_ideal(&ring, &Subspace::full(ring.dim())).unwrap());
    assert_eq!(ideal_closure(&ring, &ring.unit(p.index(0, 1, 0))).dim(), 4);
}

#[test]
fn matrix_units_multiply() {
    let (p, ring) = banded(3, 2);
    let e = |n, m, t| ring.unit(p.index(n, m, t));
    assert_eq!(ring.multiply(&e(0, 1, 1), &e(1, 2, 1)).unwrap(), e(0, 2, 1));
    assert!(ring.multiply(&e(0, 1, 1), &e(0, 2, 1)).unwrap().iter().all(|s| s == &Scalar::from_integer(0)));
    assert!(ring.multiply(&e(0, 1, 0), &e(1, 2, 1)).unwrap().iter().all(|s| s == &Scalar::from_integer(0)));
    assert_eq!(ring.labels()[p.index(0, 1, 1)], "a((1,2),(2,2))");
}

#[test]
fn colliding_degrees_break_maximal_length() {
    let (p, ring) = banded(2, 2);
    let mut spec = RingSpecFile::from_ring(&ring, serde_json::json!({}));
    for n in 0..2 {
        for m in 0..2 {
            spec.degrees[p.index(n, m, 1)] = spec.degrees[p.index(n, m, 0)].clone();
        }
    }
    let merged = spec.to_ring().unwrap();
    assert!(validate(&merged).is_empty());
    assert!(!is_maximal_length(&merged));
    assert!(matches!(
        graded_simple_theorem(&merged),
        TheoremVerdict::HypothesesNotMet(h) if h == vec![Hypothesis::MaximalLength]
    ));
}

#[test]
fn triangular_ring_has_asymmetric_support() {
    let ring = gen_triangular(2);
    let (symmetric, witness) = is_symmetric_support(&ring);
    assert!(!symmetric);
    let g = witness.unwrap();
    assert!(ring.support().contains(&g));
    assert!(!ring.support().contains(&ring.signature().invert(&g).unwrap()));
    match graded_simple_theorem(&ring) {
        TheoremVerdict::HypothesesNotMet(h) => assert!(h.contains(&Hypothesis::SymmetricSupport)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn two_bands_as_a_direct_sum() {
    let (_, one) = banded(2, 1);
    let sum = gen_direct_sum(&one, &one, Embedding::Disjoint).unwrap();
    assert!(validate(&sum).is_empty());
    let d = decompose(&sum).unwrap();
    assert_eq!(d.ideals.len(), 2);
    assert!(d.ideals.iter().all(|i| i.ideal.dim() == 4));
    assert_eq!(graded_simple_theorem(&sum), TheoremVerdict::NotSimple);
}

#[test]
fn zero_line_is_the_complement_and_the_annihilator() {
    let (_, ring) = banded(2, 1);
    let sum = gen_direct_sum(&ring, &gen_null(1), Embedding::Disjoint).unwrap();
    let line = Subspace::coordinate(sum.dim(), [4]);
    let (u, exact) = complement_u(&sum).unwrap();
    assert!(exact);
    assert_eq!(u, line);
    assert_eq!(annihilator(&sum), line);
    let d = decompose(&sum).unwrap();
    assert!(d.covers);
    assert_eq!(d.complement_u, line);
    assert!(matches!(
        graded_simple_theorem(&sum),
        TheoremVerdict::HypothesesNotMet(h) if h == vec![Hypothesis::ZeroAnnihilator]
    ));
}

#[test]
fn dropped_product_breaks_sigma_multiplicativity() {
    let (p, ring) = banded(3, 1);
    let (i, j) = (p.index(0, 1, 0), p.index(1, 2, 0));
    let defective = ring.map_structure(|e| if (e.i, e.j) == (i, j) { None } else { Some(e) }).unwrap();
    let (ok, counterexample) = is_sigma_multiplicative(&defective);
    assert!(!ok);
    assert!(counterexample.is_some());
}

#[test]
fn group_algebras() {
    for torsion in [vec![2], vec![3], vec![2, 2]] {
        let sig = GroupSignature::new(0, torsion.clone()).unwrap();
        let ring = gen_group_algebra(&sig).unwrap();
        assert!(validate(&ring).is_empty());
        assert_eq!(ring.support().len() as u64, sig.order().unwrap() - 1);
        assert_eq!(connection_classes(&ring).len(), 1, "{torsion:?}");
        assert_eq!(graded_simple_theorem(&ring), TheoremVerdict::Simple);
        assert_eq!(graded_simple_oracle(&ring, 4, 1), OracleVerdict::Simple);
    }
}

#[test]
fn trivial_grading_has_empty_support() {
    let sig = GroupSignature::trivial();
    let ring = GradedRing::new(
        sig.clone(),
        vec!["1".into()],
        vec![sig.identity()],
        vec![StructureEntry::new(0, 0, 0, Scalar::from_integer(1))],
        vec![graded_core::linalg::Matrix::identity(1)],
    )
    .unwrap();
    assert!(ring.support().is_empty());
    assert!(connection_classes(&ring).is_empty());
    match graded_simple_theorem(&ring) {
        TheoremVerdict::HypothesesNotMet(h) => assert_eq!(h, vec![Hypothesis::NonemptySupport]),
        other => panic!("{other:?}"),
    }
    assert_eq!(graded_simple_oracle(&ring, 2, 0), OracleVerdict::Simple);
}
