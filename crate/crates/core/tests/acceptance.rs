//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All comparisons are exact (tolerance 0);
//! the only numeric bound is the 5 s runtime limit of criterion 1.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use graded_core::connections::SupportGraph;
use graded_core::decomposition::{decompose, is_graded_ideal};
use graded_core::generators::{gen_banded, gen_direct_sum, gen_group_algebra, gen_random, BandedRingParams, Embedding};
use graded_core::group::{GroupElement, GroupSignature};
use graded_core::linalg::{form, is_zero_vector, Scalar, Subspace};
use graded_core::properties::{
    annihilator, graded_simple_oracle, graded_simple_theorem, is_coherent, is_maximal_length, is_sigma_multiplicative,
    unmet_hypotheses,
};
use graded_core::report::AnalysisReport;
use graded_core::ring::{GradedRing, ViolationKind};
use graded_core::spec_file::RingSpecFile;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FLEET_SIZE: u64 = 200;
const FLEET_MAX_DIM: usize = 24;
const ORACLE_MAX_DIM: usize = 16;
const ORACLE_SAMPLES: usize = 8;
const RUNTIME_LIMIT: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_graded")
}

fn graded(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn fleet() -> Vec<GradedRing> {
    (0..FLEET_SIZE).map(|s| gen_random(s, FLEET_MAX_DIM)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(dir: &Path) -> Outcome {
    let spec = dir.join("banded-4-3.json");
    let start = Instant::now();
    let gen = graded(&["gen", "banded", "--n", "4", "--r", "3", "-o", spec.to_str().unwrap()]);
    ensure(gen.status.success(), || "gen banded failed".into())?;
    let out = graded(&["decompose", spec.to_str().unwrap(), "--report", "json"]);
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || format!("decompose exit {:?}", out.status.code()))?;
    let report: AnalysisReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let d = report.decomposition.ok_or("no decomposition section")?;
    let ring = RingSpecFile::load(&spec).map_err(|e| e.to_string())?.to_ring().map_err(|e| e.to_string())?;
    let params = BandedRingParams::new(4, 3);
    // class t must be exactly the off-diagonal degrees of band t
    let mut expected: Vec<BTreeSet<GroupElement>> = (0..3)
        .map(|t| {
            let mut s = BTreeSet::new();
            for n in 0..4 {
                for m in (0..4).filter(|&m| m != n) {
                    s.insert(ring.degree(params.index(n, m, t)).clone());
                }
            }
            s
        })
        .collect();
    expected.sort();
    let mut found: Vec<BTreeSet<GroupElement>> = d.ideals.iter().map(|i| i.members.iter().cloned().collect()).collect();
    found.sort();
    ensure(found == expected, || "classes differ from the bands".into())?;
    let dims: Vec<usize> = d.ideals.iter().map(|i| i.dim).collect();
    ensure(dims == vec![16, 16, 16], || format!("ideal dimensions {dims:?}"))?;
    // each ideal is exactly the span of its band's units
    for i in &d.ideals {
        let basis: Vec<Vec<Scalar>> = i
            .basis
            .iter()
            .map(|sv| {
                let mut v = vec![Scalar::zero(); ring.dim()];
                for (k, s) in sv {
                    v[*k] = s.clone();
                }
                v
            })
            .collect();
        let ideal = Subspace::span(basis, ring.dim()).unwrap();
        let band = (0..3).find(|&t| ideal.contains(&ring.unit(params.index(0, 0, t))).unwrap()).ok_or("no band")?;
        let units = Subspace::coordinate(ring.dim(), (0..16).map(|k| band * 16 + k));
        ensure(ideal == units, || format!("ideal {} is not band {}", i.representative, band + 1))?;
    }
    ensure(d.u_dim == 0, || format!("dim U = {}", d.u_dim))?;
    ensure(d.covers && d.pairwise_zero && d.orthogonal_ideals && d.dim_defect == 0, || "flags".into())?;
    ensure(elapsed < RUNTIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("3 classes = bands, ideals {dims:?}, U = 0, direct orthogonal sum, {:.2}s < 5s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        for r in 1..=3 {
            let ring = gen_banded(&BandedRingParams::new(n, r)).map_err(|e| e.to_string())?;
            let tag = format!("N={n} r={r}");
            ensure(is_maximal_length(&ring), || format!("{tag}: maximal length"))?;
            ensure(is_sigma_multiplicative(&ring).0, || format!("{tag}: sigma-multiplicative"))?;
            ensure(is_coherent(&ring).coherent, || format!("{tag}: coherent"))?;
            ensure(SupportGraph::of(&ring).asymmetry_witness().is_none(), || format!("{tag}: symmetric"))?;
            ensure(annihilator(&ring).is_zero(), || format!("{tag}: annihilator"))?;
            count += 1;
        }
    }
    Ok(format!("{count} rings: maximal length, sigma-multiplicative, coherent, symmetric, Ann = 0"))
}

fn criterion_3(fleet: &[GradedRing]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut pairs, mut triples, mut certificates) = (0usize, 0usize, 0usize);
    for (seed, ring) in fleet.iter().enumerate() {
        let graph = SupportGraph::of(ring);
        let support: Vec<GroupElement> = graph.support().iter().cloned().collect();
        let mut related = vec![vec![false; support.len()]; support.len()];
        for (a, g) in support.iter().enumerate() {
            for (b, h) in support.iter().enumerate() {
                if let Some(p) = graph.connected(g, h).map_err(|e| e.to_string())? {
                    ensure(graph.verify(&p), || format!("seed {seed}: certificate {g} -> {h} rejected"))?;
                    certificates += 1;
                    related[a][b] = true;
                }
                pairs += 1;
            }
        }
        for (a, row) in related.iter().enumerate() {
            ensure(row[a], || format!("seed {seed}: not reflexive at {}", support[a]))?;
            for (b, &rel) in row.iter().enumerate() {
                ensure(rel == related[b][a], || format!("seed {seed}: not symmetric"))?;
            }
        }
        let idx: Vec<usize> = (0..support.len()).collect();
        for _ in 0..if support.is_empty() { 0 } else { 200 } {
            let (a, b, c) = (*idx.choose(&mut rng).unwrap(), *idx.choose(&mut rng).unwrap(), *idx.choose(&mut rng).unwrap());
            if related[a][b] && related[b][c] {
                ensure(related[a][c], || format!("seed {seed}: not transitive"))?;
                triples += 1;
            }
        }
    }
    Ok(format!("{} instances, {pairs} pairs, {triples} chained triples, {certificates} certificates verified", fleet.len()))
}

fn criterion_4(fleet: &[GradedRing]) -> Outcome {
    let (mut ideals, mut cross) = (0usize, 0usize);
    for (seed, ring) in fleet.iter().enumerate() {
        let d = decompose(ring).map_err(|e| format!("seed {seed}: {e}"))?;
        for c in &d.ideals {
            ensure(is_graded_ideal(ring, &c.ideal).unwrap(), || format!("seed {seed}: not a graded ideal"))?;
            for x in c.ideal.basis() {
                for y in c.ideal.basis() {
                    let p = ring.multiply(x, y).unwrap();
                    ensure(c.ideal.contains(&p).unwrap(), || format!("seed {seed}: not a subring"))?;
                }
            }
            ideals += 1;
        }
        for (a, ca) in d.ideals.iter().enumerate() {
            for cb in d.ideals.iter().skip(a + 1) {
                for x in ca.ideal.basis() {
                    for y in cb.ideal.basis() {
                        let zero = is_zero_vector(&ring.multiply(x, y).unwrap())
                            && is_zero_vector(&ring.multiply(y, x).unwrap());
                        ensure(zero, || format!("seed {seed}: cross-class product nonzero"))?;
                        cross += 2;
                    }
                }
            }
        }
    }
    Ok(format!("{ideals} class ideals graded and closed, {cross} cross-class basis products exactly zero"))
}

fn criterion_5(fleet: &[GradedRing]) -> Outcome {
    let mut coherent = 0;
    for (seed, ring) in fleet.iter().enumerate() {
        let d = decompose(ring).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(d.covers, || format!("seed {seed}: U + ideals does not cover"))?;
        if is_coherent(ring).coherent {
            coherent += 1;
            ensure(d.orthogonal_ideals, || format!("seed {seed}: coherent but ideals not orthogonal"))?;
            for (a, ca) in d.ideals.iter().enumerate() {
                for cb in d.ideals.iter().skip(a + 1) {
                    for g in ring.grams() {
                        for x in ca.ideal.basis() {
                            for y in cb.ideal.basis() {
                                ensure(form(g, x, y).is_zero(), || format!("seed {seed}: nonzero pairing"))?;
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(coherent > 0, || "no coherent instance in the fleet".into())?;
    Ok(format!("covers on all {} instances; orthogonal ideals on all {coherent} coherent instances", fleet.len()))
}

fn criterion_6(fleet: &[GradedRing]) -> Outcome {
    // (name, ring, expected verdict when known in advance)
    let mut pool: Vec<(String, GradedRing, Option<bool>)> = Vec::new();
    for n in 2..=4 {
        for r in 1..=4 {
            if n * n * r <= ORACLE_MAX_DIM {
                let ring = gen_banded(&BandedRingParams::new(n, r)).unwrap();
                pool.push((format!("banded N={n} r={r}"), ring, Some(r == 1)));
            }
        }
    }
    for torsion in [vec![2], vec![3], vec![5], vec![2, 2], vec![2, 4], vec![3, 3]] {
        let sig = GroupSignature::new(0, torsion.clone()).unwrap();
        pool.push((format!("group algebra {torsion:?}"), gen_group_algebra(&sig).unwrap(), Some(true)));
    }
    let one_band = gen_banded(&BandedRingParams::new(2, 1)).unwrap();
    let sum = gen_direct_sum(&one_band, &one_band, Embedding::Disjoint).unwrap();
    pool.push(("two one-band summands".into(), sum, Some(false)));
    let z3 = gen_group_algebra(&GroupSignature::new(0, vec![3]).unwrap()).unwrap();
    let mixed = gen_direct_sum(&one_band, &z3, Embedding::Disjoint).unwrap();
    pool.push(("one-band ring plus group algebra".into(), mixed, Some(false)));
    for (seed, ring) in fleet.iter().enumerate() {
        if ring.dim() <= ORACLE_MAX_DIM {
            pool.push((format!("fleet seed {seed}"), ring.clone(), None));
        }
    }
    let (mut compared, mut simple, mut inconclusive) = (0, 0, 0);
    for (name, ring, expected) in &pool {
        if !unmet_hypotheses(ring).is_empty() {
            continue;
        }
        let theorem = graded_simple_theorem(ring).decided().ok_or("decided theorem expected")?;
        let Some(oracle) = graded_simple_oracle(ring, ORACLE_SAMPLES, 6).decided() else {
            inconclusive += 1;
            continue;
        };
        ensure(theorem == oracle, || format!("{name}: theorem {theorem}, oracle {oracle}"))?;
        if let Some(e) = expected {
            ensure(theorem == *e, || format!("{name}: expected simple = {e}"))?;
        }
        compared += 1;
        simple += usize::from(theorem);
    }
    ensure(compared >= 20, || format!("only {compared} conclusive instances"))?;
    Ok(format!(
        "{compared} instances compared ({simple} simple, {} not), {inconclusive} inconclusive, 0 disagreements",
        compared - simple
    ))
}

const GRADING: &str = r#"{"format_version": 1, "group": {"free_rank": 1, "torsion": []},
 "basis": ["a", "b"], "degrees": [[1], [0]],
 "structure": [{"i": 0, "j": 0, "k": 1, "scalar": "1"}],
 "grams": [{"format": "dense", "rows": [["1", "0"], ["0", "1"]]}]}"#;
const ASSOCIATIVITY: &str = r#"{"format_version": 1, "group": {"free_rank": 0, "torsion": []},
 "basis": ["a", "b"], "degrees": [[], []],
 "structure": [{"i": 0, "j": 0, "k": 1, "scalar": "1"}, {"i": 0, "j": 1, "k": 0, "scalar": "1"}],
 "grams": [{"format": "dense", "rows": [["1", "0"], ["0", "1"]]}]}"#;
const ORTHOGONALITY: &str = r#"{"format_version": 1, "group": {"free_rank": 1, "torsion": []},
 "basis": ["a", "b"], "degrees": [[0], [1]], "structure": [],
 "grams": [{"format": "dense", "rows": [["2", "1"], ["1", "2"]]}]}"#;
const PSD: &str = r#"{"format_version": 1, "group": {"free_rank": 0, "torsion": []},
 "basis": ["a", "b"], "degrees": [[], []], "structure": [],
 "grams": [{"format": "dense", "rows": [["1", "2"], ["2", "1"]]}]}"#;
const HAUSDORFF: &str = r#"{"format_version": 1, "group": {"free_rank": 0, "torsion": []},
 "basis": ["a", "b"], "degrees": [[], []], "structure": [],
 "grams": [{"format": "sparse", "entries": [[0, 0, "1"]]}]}"#;
const BAD_SCALAR: &str = r#"{"format_version": 1, "group": {"free_rank": 0, "torsion": []},
 "basis": ["a"], "degrees": [[]],
 "structure": [{"i": 0, "j": 0, "k": 0, "scalar": "1/0"}],
 "grams": [{"format": "dense", "rows": [["1"]]}]}"#;

fn planted(dir: &Path, name: &str, text: &str, kind: ViolationKind) -> Result<(), String> {
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, text).unwrap();
    let out = graded(&["validate", path.to_str().unwrap(), "--report", "json"]);
    ensure(out.status.code() == Some(1), || format!("{name}: exit {:?}", out.status.code()))?;
    let report: AnalysisReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let kinds = report.validation.kinds();
    ensure(kinds == BTreeSet::from([kind]), || format!("{name}: kinds {kinds:?}"))?;
    let ring = RingSpecFile::parse(text).unwrap().to_ring().unwrap();
    let sig = ring.signature();
    for v in &report.validation.violations {
        let ok = match kind {
            ViolationKind::Grading => {
                let (i, j, k) = (v.indices[0], v.indices[1], v.indices[2]);
                let coeff = ring.multiply(&ring.unit(i), &ring.unit(j)).unwrap()[k].clone();
                !coeff.is_zero() && *ring.degree(k) != sig.compose(ring.degree(i), ring.degree(j)).unwrap()
            }
            ViolationKind::Associativity => {
                let (i, j, k) = (ring.unit(v.indices[0]), ring.unit(v.indices[1]), ring.unit(v.indices[2]));
                let left = ring.multiply(&ring.multiply(&i, &j).unwrap(), &k).unwrap();
                let right = ring.multiply(&i, &ring.multiply(&j, &k).unwrap()).unwrap();
                let diff: Vec<Scalar> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
                !is_zero_vector(&diff) && diff == v.scalars
            }
            ViolationKind::Orthogonality => {
                let (a, i, j) = (v.indices[0], v.indices[1], v.indices[2]);
                ring.degree(i) != ring.degree(j) && !ring.grams()[a].get(i, j).is_zero()
            }
            ViolationKind::Psd => {
                let q = form(&ring.grams()[v.indices[0]], &v.scalars, &v.scalars);
                q.real_sign() == Some(std::cmp::Ordering::Less)
            }
            ViolationKind::Hausdorff => {
                !is_zero_vector(&v.scalars) && ring.grams().iter().all(|g| form(g, &v.scalars, &v.scalars).is_zero())
            }
            ViolationKind::Malformed => false,
        };
        ensure(ok, || format!("{name}: witness {:?} does not exhibit the defect", v.indices))?;
    }
    Ok(())
}

fn criterion_7(dir: &Path) -> Outcome {
    planted(dir, "grading", GRADING, ViolationKind::Grading)?;
    planted(dir, "associativity", ASSOCIATIVITY, ViolationKind::Associativity)?;
    planted(dir, "orthogonality", ORTHOGONALITY, ViolationKind::Orthogonality)?;
    planted(dir, "psd", PSD, ViolationKind::Psd)?;
    planted(dir, "hausdorff", HAUSDORFF, ViolationKind::Hausdorff)?;
    let path = dir.join("bad-scalar.json");
    std::fs::write(&path, BAD_SCALAR).unwrap();
    let out = graded(&["validate", path.to_str().unwrap()]);
    ensure(out.status.code() == Some(2), || format!("malformed scalar: exit {:?}", out.status.code()))?;
    let err = String::from_utf8_lossy(&out.stderr);
    ensure(err.contains("line 3") && err.contains("structure[0].scalar"), || format!("diagnostic: {err}"))?;
    Ok("grading, associativity, orthogonality, psd, hausdorff defects reported alone with valid witnesses (exit 1); \
        malformed scalar rejected at line 3, structure[0].scalar (exit 2)"
        .into())
}

fn criterion_8(dir: &Path) -> Outcome {
    let mut reports = Vec::new();
    let mut specs = Vec::new();
    for run in 0..2 {
        let spec = dir.join(format!("random-42-{run}.json"));
        let gen = graded(&["gen", "random", "--seed", "42", "-o", spec.to_str().unwrap()]);
        ensure(gen.status.success(), || "gen random failed".into())?;
        let out = graded(&["decompose", spec.to_str().unwrap(), "--report", "json"]);
        ensure(out.status.code() == Some(0), || format!("decompose exit {:?}", out.status.code()))?;
        specs.push(std::fs::read(&spec).unwrap());
        reports.push(out.stdout);
    }
    ensure(specs[0] == specs[1], || "ring-spec files differ".into())?;
    ensure(reports[0] == reports[1], || "reports differ".into())?;
    Ok(format!("identical spec files and identical {}-byte JSON reports", reports[0].len()))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let fleet = fleet();
    let criteria: Vec<Criterion> = vec![
        ("banded ring splits into one simple ideal per band", Box::new(|| criterion_1(dir.path()))),
        ("banded rings meet every structural hypothesis", Box::new(criterion_2)),
        ("connection is an equivalence relation", Box::new(|| criterion_3(&fleet))),
        ("class ideals are graded ideals and annihilate each other", Box::new(|| criterion_4(&fleet))),
        ("cover and orthogonality under coherence", Box::new(|| criterion_5(&fleet))),
        ("simplicity criterion agrees with the oracle", Box::new(|| criterion_6(&fleet))),
        ("validation soundness on planted defects", Box::new(|| criterion_7(dir.path()))),
        ("determinism of gen random and decompose", Box::new(|| criterion_8(dir.path()))),
    ];
    let mut failed = 0;
    println!("acceptance: {} criteria, fleet of {FLEET_SIZE} random rings (dim <= {FLEET_MAX_DIM})", criteria.len());
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
