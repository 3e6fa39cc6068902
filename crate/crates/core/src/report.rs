//! Analysis reports: a serializable record of every requested analysis plus
//! the list of checks that decide the exit status. The text form is rendered
//! from the record alone.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::connections::{connection_classes, is_symmetric_support, ConnectionClasses, SupportGraph};
use crate::decomposition::decompose;
use crate::group::GroupElement;
use crate::linalg::to_sparse;
use crate::properties::{
    analyze, class_ideals_simplicity, graded_simple_oracle, graded_simple_theorem, ClassIdealSimplicity,
    OracleVerdict, PropertyReport, TheoremVerdict,
};
use crate::ring::{validate, GradedRing, SparseVec, ViolationReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Request {
    pub classes: bool,
    pub decomposition: bool,
    pub properties: bool,
    pub simplicity: bool,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub dim: usize,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub grams: usize,
    pub attained_degrees: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSummary {
    pub size: usize,
    pub symmetric: bool,
    pub asymmetry_witness: Option<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    pub representative: GroupElement,
    pub members: Vec<GroupElement>,
    pub dim: usize,
    pub one_span_dim: usize,
    pub homog_sum_dim: usize,
    pub basis: Vec<SparseVec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub ideals: Vec<IdealSummary>,
    pub u_dim: usize,
    pub u_basis: Vec<SparseVec>,
    pub complement_exact: bool,
    pub covers: bool,
    pub pairwise_zero: bool,
    pub orthogonal_ideals: bool,
    pub coherent: bool,
    pub dim_defect: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicitySummary {
    pub theorem: TheoremVerdict,
    pub oracle: OracleVerdict,
    /// Present when the ring meets the hypotheses for splitting into simple ideals.
    pub class_ideals: Option<Vec<ClassIdealSimplicity>>,
    pub class_ideals_orthogonal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    pub ring: RingSummary,
    pub validation: ViolationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<SupportSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<ConnectionClasses>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub properties: Option<PropertyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<SimplicitySummary>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

/// Validates `ring`, then runs the requested analyses if validation passed.
pub fn build_report(command: &str, ring: &GradedRing, request: &Request) -> AnalysisReport {
    let mut report = AnalysisReport {
        command: command.to_string(),
        ring: RingSummary {
            dim: ring.dim(),
            free_rank: ring.signature().free_rank(),
            torsion: ring.signature().torsion().to_vec(),
            grams: ring.grams().len(),
            attained_degrees: ring.components().len(),
        },
        validation: validate(ring),
        support: None,
        classes: None,
        decomposition: None,
        properties: None,
        simplicity: None,
        checks: Vec::new(),
        timing_ms: None,
    };
    let valid = report.validation.is_empty();
    let detail = (!valid).then(|| format!("{} violation(s)", report.validation.violations.len()));
    report.check("axioms", valid, detail);
    if !valid {
        return report;
    }
    if request.classes || request.decomposition || request.properties || request.simplicity {
        let (symmetric, asymmetry_witness) = is_symmetric_support(ring);
        report.support = Some(SupportSummary { size: ring.support().len(), symmetric, asymmetry_witness });
    }
    if request.classes && !request.decomposition {
        add_classes(&mut report, ring, connection_classes(ring));
    }
    if request.decomposition {
        add_decomposition(&mut report, ring);
    }
    if request.properties {
        let props = analyze(ring, request.samples, request.seed);
        report.check("theorem_matches_oracle", props.consistent(), None);
        report.properties = Some(props);
    }
    if request.simplicity {
        add_simplicity(&mut report, ring, request);
    }
    report
}

fn add_classes(report: &mut AnalysisReport, ring: &GradedRing, classes: ConnectionClasses) {
    let graph = SupportGraph::of(ring);
    let verified = classes.classes.iter().flat_map(|c| &c.certificates).all(|p| graph.verify(p));
    report.check("certificates_verify", verified, None);
    let sig = ring.signature();
    let inverse_closed = classes.classes.iter().all(|c| {
        c.members.iter().all(|h| {
            let inv = sig.invert(h).expect("support conforms");
            !graph.support().contains(&inv) || c.contains(&inv)
        })
    });
    report.check("classes_closed_under_inverse", inverse_closed, None);
    report.classes = Some(classes);
}

fn add_decomposition(report: &mut AnalysisReport, ring: &GradedRing) {
    let d = match decompose(ring) {
        Ok(d) => d,
        Err(e) => {
            report.check("decomposition", false, Some(e.to_string()));
            return;
        }
    };
    add_classes(report, ring, d.classes.clone());
    let cover_detail = (!d.complement_exact)
        .then(|| "the forms admit no joint orthogonal complement of span{E_g E_g^-1} in E_1".to_string());
    report.check("cover", d.covers || !d.complement_exact, cover_detail);
    report.check("pairwise_zero", d.pairwise_zero, None);
    report.check("orthogonal_if_coherent", d.orthogonal_ideals || !d.coherent, None);
    let sparse_basis = |s: &crate::linalg::Subspace| s.basis().iter().map(|v| to_sparse(v)).collect();
    report.decomposition = Some(DecompositionSummary {
        ideals: d
            .ideals
            .iter()
            .map(|c| IdealSummary {
                representative: c.class.representative.clone(),
                members: c.class.members.clone(),
                dim: c.ideal.dim(),
                one_span_dim: c.one_span.dim(),
                homog_sum_dim: c.homog_sum.dim(),
                basis: sparse_basis(&c.ideal),
            })
            .collect(),
        u_dim: d.complement_u.dim(),
        u_basis: sparse_basis(&d.complement_u),
        complement_exact: d.complement_exact,
        covers: d.covers,
        pairwise_zero: d.pairwise_zero,
        orthogonal_ideals: d.orthogonal_ideals,
        coherent: d.coherent,
        dim_defect: d.dim_defect,
    });
}

fn add_simplicity(report: &mut AnalysisReport, ring: &GradedRing, request: &Request) {
    let theorem = graded_simple_theorem(ring);
    let oracle = graded_simple_oracle(ring, request.samples, request.seed);
    let agree = match (theorem.decided(), oracle.decided()) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    report.check("theorem_matches_oracle", agree, None);
    let (class_ideals, class_ideals_orthogonal) = match class_ideals_simplicity(ring) {
        Some((checks, orthogonal)) => {
            let all_simple = checks.iter().all(|c| c.verdict == TheoremVerdict::Simple && c.annihilator_zero);
            report.check("class_ideals_simple", all_simple, None);
            report.check("class_ideals_orthogonal", orthogonal, None);
            (Some(checks), Some(orthogonal))
        }
        None => (None, None),
    };
    report.simplicity = Some(SimplicitySummary { theorem, oracle, class_ideals, class_ideals_orthogonal });
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn theorem_text(v: &TheoremVerdict) -> String {
    match v {
        TheoremVerdict::Simple => "graded simple".into(),
        TheoremVerdict::NotSimple => "not graded simple".into(),
        TheoremVerdict::HypothesesNotMet(h) => {
            let names: Vec<String> =
                h.iter().map(|x| serde_json::to_value(x).unwrap().as_str().unwrap().to_string()).collect();
            format!("hypotheses not met ({})", names.join(", "))
        }
    }
}

fn oracle_text(v: &OracleVerdict) -> String {
    match v {
        OracleVerdict::Simple => "graded simple".into(),
        OracleVerdict::NotSimple { witness: None, .. } => "not graded simple (zero product)".into(),
        OracleVerdict::NotSimple { witness: Some(w), ideal_dim } => {
            let terms: Vec<String> = w.iter().map(|(i, s)| format!("{s}*e{i}")).collect();
            format!("not graded simple ({} generates an ideal of dimension {ideal_dim})", terms.join(" + "))
        }
        OracleVerdict::Inconclusive => "inconclusive".into(),
    }
}

fn elements(gs: &[GroupElement]) -> String {
    gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Human-readable rendering, a pure function of the report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let o = &mut out;
    let _ = writeln!(o, "{}: dimension {}, group Z^{} x {:?}, {} gram(s)", r.command, r.ring.dim, r.ring.free_rank, r.ring.torsion, r.ring.grams);
    if r.validation.is_empty() {
        let _ = writeln!(o, "validation: ok");
    } else {
        let _ = writeln!(o, "validation: {} violation(s)", r.validation.violations.len());
        for v in &r.validation.violations {
            let _ = writeln!(o, "  [{}] {} indices={:?}", v.kind, v.message, v.indices);
        }
    }
    if let Some(s) = &r.support {
        let _ = writeln!(o, "support: {} element(s), symmetric: {}", s.size, yes_no(s.symmetric));
        if let Some(w) = &s.asymmetry_witness {
            let _ = writeln!(o, "  {w} is in the support but its inverse is not");
        }
    }
    if let Some(c) = &r.classes {
        let _ = writeln!(o, "connection classes: {}", c.classes.len());
        for class in &c.classes {
            let _ = writeln!(o, "  [{}] = {{{}}}", class.representative, elements(&class.members));
        }
    }
    if let Some(d) = &r.decomposition {
        let _ = writeln!(o, "ideals: {}", d.ideals.len());
        for i in &d.ideals {
            let _ = writeln!(
                o,
                "  E[{}]: dimension {} (E_1 part {}, homogeneous part {})",
                i.representative, i.dim, i.one_span_dim, i.homog_sum_dim
            );
        }
        let _ = writeln!(o, "U: dimension {}, complement exact: {}", d.u_dim, yes_no(d.complement_exact));
        let _ = writeln!(
            o,
            "covers: {}, pairwise zero: {}, orthogonal ideals: {}, coherent: {}, sum defect: {}",
            yes_no(d.covers),
            yes_no(d.pairwise_zero),
            yes_no(d.orthogonal_ideals),
            yes_no(d.coherent),
            d.dim_defect
        );
    }
    if let Some(p) = &r.properties {
        let _ = writeln!(o, "maximal length: {}", yes_no(p.maximal_length));
        let _ = write!(o, "sigma-multiplicative: {}", yes_no(p.sigma_multiplicative));
        match &p.sigma_counterexample {
            Some((g, h)) => {
                let _ = writeln!(o, " (fails at g={g}, h={h})");
            }
            None => {
                let _ = writeln!(o);
            }
        }
        let _ = writeln!(o, "annihilator: dimension {}", p.annihilator.len());
        let _ = writeln!(o, "symmetric support: {}", yes_no(p.symmetric_support));
        let _ = writeln!(
            o,
            "coherent: {} (span condition: {}, pairing failures: {})",
            yes_no(p.coherence.coherent),
            yes_no(p.coherence.span_condition),
            p.coherence.failures.len()
        );
        let _ = writeln!(o, "simple by theorem: {}", theorem_text(&p.simple_by_theorem));
        let _ = writeln!(o, "simple by oracle: {}", oracle_text(&p.simple_by_oracle));
    }
    if let Some(s) = &r.simplicity {
        let _ = writeln!(o, "simple by theorem: {}", theorem_text(&s.theorem));
        let _ = writeln!(o, "simple by oracle: {}", oracle_text(&s.oracle));
        if let Some(list) = &s.class_ideals {
            for c in list {
                let _ = writeln!(o, "  class ideal E[{}] (dimension {}): {}", c.representative, c.dim, theorem_text(&c.verdict));
            }
        }
    }
    for c in &r.checks {
        let _ = write!(o, "check {}: {}", c.name, if c.passed { "pass" } else { "FAIL" });
        match &c.detail {
            Some(d) => {
                let _ = writeln!(o, " ({d})");
            }
            None => {
                let _ = writeln!(o);
            }
        }
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(o, "time: {ms} ms");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_banded, BandedRingParams};

    fn full() -> Request {
        Request { classes: true, decomposition: true, properties: true, simplicity: true, samples: 2, seed: 1 }
    }

    #[test]
    fn json_round_trips() {
        let ring = gen_banded(&BandedRingParams::new(2, 2)).unwrap();
        let report = build_report("all", &ring, &full());
        assert!(report.passed(), "{:?}", report.checks);
        let json = report.to_json();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), json);
        assert_eq!(render_text(&back), render_text(&report));
    }

    #[test]
    fn sections_follow_request() {
        let ring = gen_banded(&BandedRingParams::new(2, 1)).unwrap();
        let r = build_report("validate", &ring, &Request::default());
        assert!(r.support.is_none() && r.classes.is_none() && r.decomposition.is_none());
        let json = r.to_json();
        assert!(!json.contains("\"classes\"") && !json.contains("timing_ms"));
        let r = build_report("decompose", &ring, &Request { decomposition: true, ..Request::default() });
        assert_eq!(r.decomposition.as_ref().unwrap().ideals.len(), 1);
        assert!(r.classes.is_some() && r.properties.is_none());
        assert!(render_text(&r).contains("ideals: 1"));
    }
}
