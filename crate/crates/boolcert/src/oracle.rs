//! Ground truth by exhaustion, plus input generators and the audit
//! harness that grades pipeline verdicts against enumeration.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{certify, PipelineConfig, Verdict, VerdictTag};
use crate::error::Error;
use crate::ring::{counter_to_mask, mask_to_point, Monomial, MultilinearPoly};
use crate::scalar::GaussianRational;
use crate::symmetry::PolySystem;

/// Exhaustively enumerated zero set of a system over the Boolean cube.
#[derive(Debug, Clone)]
pub struct VarietyReport {
    pub n: usize,
    /// Common zeros in lexicographic point order.
    pub points: Vec<Vec<u8>>,
    pub count: usize,
    pub elapsed: Duration,
}

/// Checks all `2^n` cube points. Refuses when `n` exceeds `cube_cap`.
pub fn brute_force(f_sys: &PolySystem, cube_cap: usize) -> Result<VarietyReport, Error> {
    let n = f_sys.n();
    if n > cube_cap {
        return Err(Error::CubeTooLarge { n, cap: cube_cap });
    }
    let start = Instant::now();
    let points: Vec<Vec<u8>> = (0u64..1u64 << n)
        .into_par_iter()
        .filter_map(|counter| {
            let mask = counter_to_mask(counter, n);
            f_sys
                .vanishes_at_mask(mask)
                .then(|| mask_to_point(mask, n))
        })
        .collect();
    Ok(VarietyReport {
        n,
        count: points.len(),
        points,
        elapsed: start.elapsed(),
    })
}

/// Which Boolean system to derive from a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphEncoding {
    /// One equation `x_u * x_v = 0` per edge; zeros are the independent
    /// sets, encoded by their indicator vectors.
    IndependentSet,
    /// The edge equations plus `sum x_i = s`; zeros are the independent
    /// sets of size exactly `s`.
    IndependentSetOfSize(usize),
}

/// Encodes a graph on `n_vertices` vertices as a polynomial system whose
/// Boolean zeros are its independent sets. Edges may arrive in any order
/// or orientation and may repeat; self-loops and out-of-range endpoints
/// are rejected.
pub fn encode_graph(
    edges: &[(usize, usize)],
    n_vertices: usize,
    kind: GraphEncoding,
) -> Result<PolySystem, Error> {
    if n_vertices == 0 || n_vertices > crate::ring::MAX_VARS {
        return Err(Error::InvalidSystem {
            msg: format!(
                "graph must have between 1 and {} vertices, got {n_vertices}",
                crate::ring::MAX_VARS
            ),
        });
    }
    let mut canonical: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n_vertices || v >= n_vertices || u == v {
            return Err(Error::InvalidEdge {
                u,
                v,
                n: n_vertices,
            });
        }
        canonical.push((u.min(v), u.max(v)));
    }
    canonical.sort_unstable();
    canonical.dedup();

    let mut polys: Vec<(String, MultilinearPoly)> = canonical
        .iter()
        .map(|&(u, v)| {
            let m = Monomial::from_indices([u, v]);
            (
                format!("e{u}_{v}"),
                MultilinearPoly::from_terms(n_vertices, [(m, GaussianRational::one())]),
            )
        })
        .collect();
    if let GraphEncoding::IndependentSetOfSize(s) = kind {
        let mut size = MultilinearPoly::constant(n_vertices, -GaussianRational::from_int(s as i64));
        for v in 0..n_vertices {
            size = size.add(&MultilinearPoly::var(n_vertices, v));
        }
        polys.push(("size".to_string(), size));
    }
    if polys.is_empty() {
        // edgeless graph with no size constraint: every point is a zero
        polys.push(("zero".to_string(), MultilinearPoly::zero(n_vertices)));
    }
    PolySystem::new(n_vertices, polys)
}

/// Draws a random system: ambient size in `1..=max_n`, member count in
/// `1..=max_k`, each member a nonzero combination of at most `max_terms`
/// square-free monomials with small Gaussian-rational coefficients.
pub fn random_system<R: Rng>(rng: &mut R, max_n: usize, max_k: usize, max_terms: usize) -> PolySystem {
    assert!((1..=crate::ring::MAX_VARS).contains(&max_n));
    assert!(max_k >= 1 && max_terms >= 1);
    let pool = coefficient_pool();
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_k);
    let mut polys = Vec::with_capacity(k);
    for idx in 0..k {
        let poly = loop {
            let t = rng.gen_range(1..=max_terms);
            let terms: Vec<(Monomial, GaussianRational)> = (0..t)
                .map(|_| {
                    let mask = rng.gen_range(0..1u64 << n) as u32;
                    let coeff = pool[rng.gen_range(0..pool.len())].clone();
                    (Monomial::from_bits(mask), coeff)
                })
                .collect();
            let candidate = MultilinearPoly::from_terms(n, terms);
            if !candidate.is_zero() {
                break candidate;
            }
        };
        polys.push((format!("f{idx}"), poly));
    }
    PolySystem::new(n, polys).expect("generated system is structurally valid")
}

fn coefficient_pool() -> Vec<GaussianRational> {
    let i = GaussianRational::i();
    let one = GaussianRational::one();
    let two = GaussianRational::from_int(2);
    let half = GaussianRational::from_ratio(1, 2);
    vec![
        one.clone(),
        -one.clone(),
        two.clone(),
        -two,
        GaussianRational::from_int(3),
        i.clone(),
        -i.clone(),
        one + i,
        half.clone(),
        -half,
    ]
}

/// How a verdict relates to enumerated ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuditClass {
    /// The verdict's claim is confirmed by enumeration.
    #[serde(rename = "SOUND")]
    Sound,
    /// The pipeline declined to decide; enumeration shows what it missed.
    #[serde(rename = "PAPER_GAP")]
    PaperGap,
    /// The verdict's claim is contradicted by enumeration.
    #[serde(rename = "UNSOUND")]
    Unsound,
}

impl std::fmt::Display for AuditClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AuditClass::Sound => "SOUND",
            AuditClass::PaperGap => "PAPER_GAP",
            AuditClass::Unsound => "UNSOUND",
        };
        write!(f, "{s}")
    }
}

/// A verdict graded against exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub verdict: Verdict,
    pub oracle: VarietyReport,
    pub class: AuditClass,
    pub detail: String,
}

/// Runs the pipeline and the exhaustive oracle on the same system and
/// classifies the outcome. `INCONCLUSIVE` is graded `PAPER_GAP` either
/// way, with the detail distinguishing a missed solution from a missed
/// emptiness certificate.
pub fn audit(f_sys: &PolySystem, config: &PipelineConfig) -> Result<AuditReport, Error> {
    let verdict = certify(f_sys, config)?;
    let oracle = brute_force(f_sys, config.cube_cap)?;
    let empty = oracle.points.is_empty();
    let (class, detail) = match verdict.tag {
        VerdictTag::SolutionFound => {
            let w = verdict
                .witness
                .as_ref()
                .expect("a found solution always carries a witness");
            if oracle.points.contains(w) {
                (
                    AuditClass::Sound,
                    "witness confirmed by enumeration".to_string(),
                )
            } else {
                (
                    AuditClass::Unsound,
                    format!("claimed witness {w:?} is not a zero of the system"),
                )
            }
        }
        VerdictTag::NoSolutionCertified => {
            if empty {
                (
                    AuditClass::Sound,
                    "emptiness confirmed by enumeration".to_string(),
                )
            } else {
                (
                    AuditClass::Unsound,
                    format!(
                        "emptiness was certified but the zero set has {} point(s)",
                        oracle.count
                    ),
                )
            }
        }
        VerdictTag::Inconclusive => {
            if empty {
                (
                    AuditClass::PaperGap,
                    "zero set is empty but the pipeline could not certify it".to_string(),
                )
            } else {
                (
                    AuditClass::PaperGap,
                    format!(
                        "zero set has {} point(s) but no candidate matched a zero column",
                        oracle.count
                    ),
                )
            }
        }
    };
    Ok(AuditReport {
        verdict,
        oracle,
        class,
        detail,
    })
}
