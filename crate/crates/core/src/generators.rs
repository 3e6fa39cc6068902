//! Constructors for rings that satisfy every axiom by design: banded
//! matrix-unit rings graded through primes, group algebras of finite
//! groups, zero-product and triangular rings, direct sums, and seeded random
//! compositions of these.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{GroupElement, GroupSignature};
use crate::linalg::{Matrix, Scalar};
use crate::ring::{GradedRing, StructureEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParams(msg.into())
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn first_primes(count: usize) -> Vec<u64> {
    (2..).filter(|&p| is_prime(p)).take(count).collect()
}

/// Banded matrix units `a((n,t),(m,t))` for `n, m < N`, `t < r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandedRingParams {
    pub n: usize,
    pub r: usize,
    /// Prime attached to `(n, t)` at position `n * r + t`. Defaults to the first `N r` primes.
    pub primes: Option<Vec<u64>>,
    /// One Gram `t_a I` per weight; each weight is rational and at least 1.
    pub weights: Vec<BigRational>,
}

impl BandedRingParams {
    pub fn new(n: usize, r: usize) -> Self {
        BandedRingParams { n, r, primes: None, weights: vec![BigRational::one()] }
    }

    pub fn prime_map(&self) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| first_primes(self.n * self.r))
    }

    pub fn dim(&self) -> usize {
        self.r * self.n * self.n
    }

    /// Basis index of `a((n,t),(m,t))`, zero-based.
    pub fn index(&self, n: usize, m: usize, t: usize) -> usize {
        t * self.n * self.n + n * self.n + m
    }

    fn validate(&self) -> Result<(), GeneratorError> {
        if self.n == 0 || self.r == 0 {
            return Err(invalid("band size and band count must be positive"));
        }
        if self.weights.is_empty() {
            return Err(invalid("at least one weight is required"));
        }
        if let Some(w) = self.weights.iter().find(|w| **w < BigRational::one()) {
            return Err(invalid(format!("weight {w} is smaller than 1")));
        }
        let primes = self.prime_map();
        if primes.len() != self.n * self.r {
            return Err(invalid(format!("expected {} primes, got {}", self.n * self.r, primes.len())));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(invalid(format!("{p} is not prime")));
        }
        let distinct: BTreeSet<u64> = primes.iter().copied().collect();
        if distinct.len() != primes.len() {
            return Err(invalid("prime map is not injective"));
        }
        Ok(())
    }
}

/// Degree `x_{n,t}^-1 x_{m,t}` in the free group on the used primes, which
/// are ordered ascending.
pub fn banded_degree(params: &BandedRingParams, n: usize, m: usize, t: usize) -> Vec<i64> {
    let primes = params.prime_map();
    let mut sorted = primes.clone();
    sorted.sort_unstable();
    let coord = |p: u64| sorted.binary_search(&p).expect("prime in map");
    let mut e = vec![0i64; primes.len()];
    e[coord(primes[n * params.r + t])] -= 1;
    e[coord(primes[m * params.r + t])] += 1;
    e
}

pub fn gen_banded(params: &BandedRingParams) -> Result<GradedRing, GeneratorError> {
    params.validate()?;
    let (nn, r) = (params.n, params.r);
    let sig = GroupSignature::free(nn * r);
    let mut labels = Vec::with_capacity(params.dim());
    let mut degrees = Vec::with_capacity(params.dim());
    let mut entries = Vec::new();
    for t in 0..r {
        for n in 0..nn {
            for m in 0..nn {
                labels.push(format!("a(({},{}),({},{}))", n + 1, t + 1, m + 1, t + 1));
                degrees.push(sig.element(banded_degree(params, n, m, t)).expect("length matches"));
                for q in 0..nn {
                    entries.push(StructureEntry::new(
                        params.index(n, m, t),
                        params.index(m, q, t),
                        params.index(n, q, t),
                        Scalar::one(),
                    ));
                }
            }
        }
    }
    let grams = params.weights.iter().map(|w| Matrix::scaled_identity(params.dim(), &Scalar::real(w.clone()))).collect();
    GradedRing::new(sig, labels, degrees, entries, grams).map_err(|e| invalid(e.to_string()))
}

/// Group algebra of a finite group graded by the group itself.
pub fn gen_group_algebra(sig: &GroupSignature) -> Result<GradedRing, GeneratorError> {
    let elements = sig.enumerate().ok_or_else(|| invalid("group algebra needs a finite group"))?;
    let position: BTreeMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut entries = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        for (j, h) in elements.iter().enumerate() {
            let gh = sig.compose(g, h).expect("enumerated elements conform");
            entries.push(StructureEntry::new(i, j, position[&gh], Scalar::one()));
        }
    }
    let labels = elements.iter().map(|g| format!("u{g}")).collect();
    let n = elements.len();
    GradedRing::new(sig.clone(), labels, elements, entries, vec![Matrix::identity(n)]).map_err(|e| invalid(e.to_string()))
}

/// `dim` basis vectors in degree 1 with every product zero.
pub fn gen_null(dim: usize) -> GradedRing {
    let sig = GroupSignature::trivial();
    let labels = (0..dim).map(|i| format!("z{}", i + 1)).collect();
    GradedRing::new(sig.clone(), labels, vec![sig.identity(); dim], vec![], vec![Matrix::identity(dim)])
        .expect("well-formed")
}

/// Upper-triangular `n x n` matrix units `e_ij` (`i <= j`) in degree
/// `x_i^-1 x_j` of `Z^n`. The support is not symmetric for `n >= 2`.
pub fn gen_triangular(n: usize) -> GradedRing {
    let sig = GroupSignature::free(n);
    let mut index = BTreeMap::new();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..n {
        for j in i..n {
            index.insert((i, j), labels.len());
            labels.push(format!("e({},{})", i + 1, j + 1));
            let mut e = vec![0i64; n];
            e[i] -= 1;
            e[j] += 1;
            degrees.push(sig.element(e).expect("length matches"));
        }
    }
    let mut entries = Vec::new();
    for (&(i, j), &a) in &index {
        for k in j..n {
            entries.push(StructureEntry::new(a, index[&(j, k)], index[&(i, k)], Scalar::one()));
        }
    }
    let dim = labels.len();
    GradedRing::new(sig, labels, degrees, entries, vec![Matrix::identity(dim)]).expect("well-formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    /// The two groups become direct factors of a common group.
    Disjoint,
    /// Both rings already share one group; their supports must not meet.
    Shared,
}

/// Coordinates of a factor inside the product signature.
fn product_signature(a: &GroupSignature, b: &GroupSignature) -> (GroupSignature, Vec<usize>, Vec<usize>) {
    let free = a.free_rank() + b.free_rank();
    let mut torsion: Vec<(i64, usize, usize)> = a.torsion().iter().enumerate().map(|(i, &m)| (m, 0, i)).collect();
    torsion.extend(b.torsion().iter().enumerate().map(|(i, &m)| (m, 1, i)));
    torsion.sort();
    let mut map_a: Vec<usize> = (0..a.free_rank()).collect();
    let mut map_b: Vec<usize> = (a.free_rank()..free).collect();
    map_a.resize(a.len(), 0);
    map_b.resize(b.len(), 0);
    for (pos, &(_, side, i)) in torsion.iter().enumerate() {
        let map = if side == 0 { (&mut map_a, a.free_rank()) } else { (&mut map_b, b.free_rank()) };
        map.0[map.1 + i] = free + pos;
    }
    let sig = GroupSignature::new(free, torsion.iter().map(|t| t.0).collect()).expect("moduli sorted and valid");
    (sig, map_a, map_b)
}

fn embed(sig: &GroupSignature, map: &[usize], g: &GroupElement) -> GroupElement {
    let mut e = vec![0i64; sig.len()];
    for (c, &x) in g.exponents().iter().enumerate() {
        e[map[c]] = x;
    }
    sig.element(e).expect("length matches")
}

/// Block-diagonal direct sum. Missing Gram matrices of the shorter family are zero blocks.
pub fn gen_direct_sum(a: &GradedRing, b: &GradedRing, embedding: Embedding) -> Result<GradedRing, GeneratorError> {
    let (sig, degrees) = match embedding {
        Embedding::Disjoint => {
            let (sig, map_a, map_b) = product_signature(a.signature(), b.signature());
            let degrees: Vec<GroupElement> = a
                .degrees()
                .iter()
                .map(|g| embed(&sig, &map_a, g))
                .chain(b.degrees().iter().map(|g| embed(&sig, &map_b, g)))
                .collect();
            (sig, degrees)
        }
        Embedding::Shared => {
            if a.signature() != b.signature() {
                return Err(invalid("shared embedding needs equal groups"));
            }
            if let Some(g) = a.support().intersection(&b.support()).next() {
                return Err(invalid(format!("supports collide at {g}")));
            }
            (a.signature().clone(), a.degrees().iter().chain(b.degrees()).cloned().collect())
        }
    };
    let offset = a.dim();
    let mut entries: Vec<StructureEntry> = a.structure_entries().collect();
    entries.extend(b.structure_entries().map(|e| StructureEntry::new(e.i + offset, e.j + offset, e.k + offset, e.value)));
    let count = a.grams().len().max(b.grams().len());
    let block = |r: &GradedRing, i: usize| r.grams().get(i).cloned().unwrap_or_else(|| Matrix::zeros(r.dim(), r.dim()));
    let grams = (0..count).map(|i| block(a, i).block_diag(&block(b, i))).collect();
    let names_a: BTreeSet<&String> = a.labels().iter().collect();
    let clash = b.labels().iter().any(|l| names_a.contains(l));
    let labels = if clash {
        a.labels().iter().map(|l| format!("L.{l}")).chain(b.labels().iter().map(|l| format!("R.{l}"))).collect()
    } else {
        a.labels().iter().chain(b.labels()).cloned().collect()
    };
    GradedRing::new(sig, labels, degrees, entries, grams).map_err(|e| invalid(e.to_string()))
}

/// A direct sum of one to three random summands of total dimension at most
/// `max_dim`: banded rings with random primes and weights, group algebras of
/// small finite groups, and occasionally a triangular or zero-product ring.
pub fn gen_random(seed: u64, max_dim: usize) -> GradedRing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut budget = max_dim.max(1);
    let mut pool = first_primes(40);
    pool.shuffle(&mut rng);
    let summands = rng.gen_range(1..=3);
    let mut ring: Option<GradedRing> = None;
    for _ in 0..summands {
        if budget == 0 {
            break;
        }
        let Some(next) = random_summand(&mut rng, budget, &mut pool) else {
            break;
        };
        budget -= next.dim();
        ring = Some(match ring {
            None => next,
            Some(r) => gen_direct_sum(&r, &next, Embedding::Disjoint).expect("disjoint sums always succeed"),
        });
    }
    ring.unwrap_or_else(|| gen_null(1))
}

fn random_summand(rng: &mut ChaCha8Rng, budget: usize, pool: &mut Vec<u64>) -> Option<GradedRing> {
    let kind = rng.gen_range(0..10);
    if kind < 6 {
        let n = rng.gen_range(1..=3usize);
        let max_r = budget / (n * n);
        if max_r == 0 {
            return None;
        }
        let r = rng.gen_range(1..=max_r.min(2));
        if pool.len() < n * r {
            return None;
        }
        let primes: Vec<u64> = pool.drain(..n * r).collect();
        let weights = (0..rng.gen_range(1..=2))
            .map(|_| {
                let den = rng.gen_range(1..=4i64);
                BigRational::new(BigInt::from(den + rng.gen_range(0..=6i64)), BigInt::from(den))
            })
            .collect();
        let params = BandedRingParams { n, r, primes: Some(primes), weights };
        Some(gen_banded(&params).expect("valid random parameters"))
    } else if kind < 9 {
        let groups: [&[i64]; 7] = [&[2], &[3], &[4], &[5], &[6], &[2, 2], &[2, 4]];
        let fitting: Vec<&[i64]> = groups.into_iter().filter(|t| t.iter().product::<i64>() as usize <= budget).collect();
        let torsion = fitting.choose(rng)?;
        let sig = GroupSignature::new(0, torsion.to_vec()).expect("valid moduli");
        Some(gen_group_algebra(&sig).expect("finite group"))
    } else if rng.gen_bool(0.5) && budget >= 3 {
        Some(gen_triangular(2))
    } else {
        Some(gen_null(1))
    }
}
