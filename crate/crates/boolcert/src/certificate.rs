//! The decision layer: a necessary condition read off the roots of the
//! eliminated univariate, and a sufficient condition read off a matrix of
//! permuted system members evaluated at candidate points.
//!
//! The two tests are one-sided in opposite directions, so the pipeline has
//! three honest outcomes: certified emptiness, a verified solution, or an
//! explicit "inconclusive" — it never infers emptiness from the matrix test
//! failing.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{eliminate_univariate, ElimOptions, Mode, Root, UnivariatePoly};
use crate::error::Error;
use crate::oracle;
use crate::ring::{counter_to_mask, mask_to_point, point_to_mask, MultilinearPoly};
use crate::saturation::build_g;
use crate::scalar::GaussianRational;
use crate::symmetry::{DestabilizerSet, Permutation, PolySystem};

/// Outcome tag of a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictTag {
    #[serde(rename = "NO_SOLUTION_CERTIFIED")]
    NoSolutionCertified,
    #[serde(rename = "SOLUTION_FOUND")]
    SolutionFound,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictTag::NoSolutionCertified => "NO_SOLUTION_CERTIFIED",
            VerdictTag::SolutionFound => "SOLUTION_FOUND",
            VerdictTag::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "{s}")
    }
}

/// Full result of a certification run, with enough context to audit it.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub tag: VerdictTag,
    /// A Boolean point of the zero set; present exactly for
    /// [`VerdictTag::SolutionFound`], always re-verified before emission.
    pub witness: Option<Vec<u8>>,
    pub mode: Mode,
    /// Destabilizer size of the input system.
    pub c: usize,
    pub stab_order: usize,
    /// The eliminated univariate, when one was found.
    pub p: Option<UnivariatePoly>,
    /// How many candidate points were actually evaluated.
    pub beta_candidates_tried: usize,
    /// Human-readable trail of which test decided (or why none did).
    pub evidence: String,
}

/// Result of checking that every root is Boolean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NecessaryOutcome {
    Pass,
    /// Some root (or unfactored remainder) lies outside `{0, 1}`.
    FailNonBoolean { index: usize, root: Root },
    /// The root list is empty because `p = 1`: the ideal is the unit ideal,
    /// so the saturated system has no zeros at all.
    FailUnitIdeal,
}

/// The necessary condition: a solvable system forces every root of `p` to
/// be Boolean, so any non-Boolean root — or an empty root list, which means
/// `p = 1` — certifies emptiness of the saturated system's zero set.
pub fn necessary_check(beta: &[Root]) -> NecessaryOutcome {
    if beta.is_empty() {
        return NecessaryOutcome::FailUnitIdeal;
    }
    for (index, root) in beta.iter().enumerate() {
        if !root.is_boolean() {
            return NecessaryOutcome::FailNonBoolean {
                index,
                root: root.clone(),
            };
        }
    }
    NecessaryOutcome::Pass
}

/// The matrix of permuted system members: rows follow the system, columns
/// follow the destabilizer, entry `(k, j)` is `sigma_j . f_k`.
#[derive(Debug, Clone)]
pub struct CertificateMatrix {
    source: PolySystem,
    sigmas: Vec<Permutation>,
    entries: Vec<Vec<MultilinearPoly>>,
}

/// Builds the matrix. An empty destabilizer is an error: the test is
/// vacuous for fully symmetric systems, which must be decided by direct
/// evaluation or enumeration instead.
pub fn build_matrix(
    f_sys: &PolySystem,
    destab: &DestabilizerSet,
) -> Result<CertificateMatrix, Error> {
    if destab.c() == 0 {
        return Err(Error::EmptyDestabilizer);
    }
    assert_eq!(f_sys.n(), destab.n(), "degree mismatch");
    let sigmas: Vec<Permutation> = destab.destab().to_vec();
    let entries = f_sys
        .polys()
        .iter()
        .map(|f| sigmas.iter().map(|s| s.apply(f)).collect())
        .collect();
    Ok(CertificateMatrix {
        source: f_sys.clone(),
        sigmas,
        entries,
    })
}

impl CertificateMatrix {
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn c(&self) -> usize {
        self.sigmas.len()
    }

    pub fn entry(&self, k: usize, j: usize) -> &MultilinearPoly {
        &self.entries[k][j]
    }

    pub fn sigma(&self, j: usize) -> &Permutation {
        &self.sigmas[j]
    }

    /// Every entry evaluated at an arbitrary point.
    pub fn evaluate_at(&self, point: &[GaussianRational]) -> Vec<Vec<GaussianRational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(point)).collect())
            .collect()
    }

    /// Scans columns left to right at a Boolean point; the first all-zero
    /// column yields the witness `b` with `b_i = beta[sigma(i)]`, re-checked
    /// against the source system before being returned.
    pub fn zero_column_at(&self, beta: &[u8]) -> Option<(usize, Vec<u8>)> {
        self.zero_column_at_mask(point_to_mask(beta))
    }

    pub fn zero_column_at_mask(&self, beta_mask: u32) -> Option<(usize, Vec<u8>)> {
        let n = self.source.n();
        for (j, sigma) in self.sigmas.iter().enumerate() {
            if self
                .entries
                .iter()
                .all(|row| row[j].evaluate_bool(beta_mask).is_zero())
            {
                let witness_mask = sigma.pullback_mask(beta_mask);
                assert!(
                    self.source.vanishes_at_mask(witness_mask),
                    "zero column {j} produced a point that does not solve the system; \
                     this falsifies the permutation identity"
                );
                return Some((j, mask_to_point(witness_mask, n)));
            }
        }
        None
    }
}

/// Caps and knobs for the full pipeline.
#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    pub mode: Mode,
    pub elim_var: usize,
    pub quotient_cap: usize,
    /// Raw-mode multiplier degree cap; `None` means the ambient `n`.
    pub raw_degree_cap: Option<usize>,
    /// Most candidate points ever evaluated.
    pub beta_budget: usize,
    pub group_cap: usize,
    pub cube_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mode: Mode::Quotient,
            elim_var: 0,
            quotient_cap: 16,
            raw_degree_cap: None,
            beta_budget: 10_000,
            group_cap: 8,
            cube_cap: 16,
        }
    }
}

/// Candidate points assembled from a Boolean root multiset, as cube masks
/// in lexicographic point order, truncated to `budget`. Returns the masks
/// and whether truncation happened.
///
/// With fewer roots than variables, the multiset is padded with 0s and 1s
/// in every possible way, so the candidates are all points containing the
/// roots as a sub-multiset; with more roots than variables, the candidates
/// are the points contained in the root multiset; with equal counts, its
/// distinct permutations.
pub fn beta_candidate_masks(beta: &[Root], n: usize, budget: usize) -> (Vec<u32>, bool) {
    let ones = beta
        .iter()
        .filter(|r| matches!(r, Root::Value(v) if v.is_one()))
        .count() as u32;
    let zeros = beta
        .iter()
        .filter(|r| matches!(r, Root::Value(v) if v.is_zero()))
        .count() as u32;
    debug_assert_eq!(
        (ones + zeros) as usize,
        beta.len(),
        "candidate assembly requires Boolean roots"
    );
    let m = beta.len();
    let mut masks = Vec::new();
    let mut truncated = false;
    for counter in 0u64..(1u64 << n) {
        let mask = counter_to_mask(counter, n);
        let c1 = mask.count_ones();
        let c0 = n as u32 - c1;
        let keep = if m <= n {
            c1 >= ones && c0 >= zeros
        } else {
            c1 <= ones && c0 <= zeros
        };
        if keep {
            if masks.len() == budget {
                truncated = true;
                break;
            }
            masks.push(mask);
        }
    }
    (masks, truncated)
}

/// Runs the whole pipeline on a system: stabilizer split, symmetrized
/// products, elimination, the necessary root check, then the zero-column
/// search over candidate points (or, for fully symmetric systems where the
/// matrix is vacuous, direct evaluation backed by cube enumeration).
pub fn certify(f_sys: &PolySystem, config: &PipelineConfig) -> Result<Verdict, Error> {
    let n = f_sys.n();
    let split = f_sys.stabilizer(config.group_cap)?;
    let sat = build_g(f_sys, &split);
    let elim_opts = ElimOptions {
        quotient_cap: config.quotient_cap,
        raw_degree_cap: config.raw_degree_cap,
    };
    let elim = eliminate_univariate(&sat, config.elim_var, config.mode, &elim_opts)?;
    let c = split.c();
    let stab_order = split.stab_order();

    let verdict = |tag, witness, tried, evidence: String| Verdict {
        tag,
        witness,
        mode: config.mode,
        c,
        stab_order,
        p: elim.p.clone(),
        beta_candidates_tried: tried,
        evidence,
    };

    if elim.p.is_some() {
        match necessary_check(&elim.beta) {
            NecessaryOutcome::FailUnitIdeal => {
                return Ok(verdict(
                    VerdictTag::NoSolutionCertified,
                    None,
                    0,
                    "p = 1: the saturated ideal is the unit ideal, so its zero set is empty \
                     and the system has no solution"
                        .to_string(),
                ));
            }
            NecessaryOutcome::FailNonBoolean { index, root } => {
                return Ok(verdict(
                    VerdictTag::NoSolutionCertified,
                    None,
                    0,
                    format!("necessary condition failed: root beta_{index} = {root} lies outside {{0, 1}}"),
                ));
            }
            NecessaryOutcome::Pass => {}
        }
    }

    let (candidates, truncated) = beta_candidate_masks(&elim.beta, n, config.beta_budget);
    let truncation_note = if truncated {
        format!(" (candidate budget of {} exhausted)", config.beta_budget)
    } else {
        String::new()
    };
    let p_note = if elim.p.is_none() {
        "no univariate within the degree cap, so every cube point is a candidate; "
    } else {
        ""
    };

    if c == 0 {
        // the matrix test is vacuous: decide directly
        for (i, &mask) in candidates.iter().enumerate() {
            if f_sys.vanishes_at_mask(mask) {
                return Ok(verdict(
                    VerdictTag::SolutionFound,
                    Some(mask_to_point(mask, n)),
                    i + 1,
                    format!("{p_note}matrix test vacuous (c = 0); direct evaluation succeeded at candidate {i}"),
                ));
            }
        }
        let tried = candidates.len();
        if n <= config.cube_cap {
            let report = oracle::brute_force(f_sys, config.cube_cap)?;
            return Ok(match report.points.first() {
                Some(first) => verdict(
                    VerdictTag::SolutionFound,
                    Some(first.clone()),
                    tried,
                    format!("{p_note}matrix test vacuous (c = 0); candidates missed, but cube enumeration found a zero"),
                ),
                None => verdict(
                    VerdictTag::NoSolutionCertified,
                    None,
                    tried,
                    format!("{p_note}matrix test vacuous (c = 0); exhaustive cube enumeration confirms the zero set is empty"),
                ),
            });
        }
        return Ok(verdict(
            VerdictTag::Inconclusive,
            None,
            tried,
            format!(
                "{p_note}matrix test vacuous (c = 0), {tried} candidates failed{truncation_note}, \
                 and the cube exceeds the enumeration cap"
            ),
        ));
    }

    let matrix = build_matrix(f_sys, &split)?;
    let hit = candidates
        .par_iter()
        .enumerate()
        .find_map_first(|(i, &mask)| {
            matrix
                .zero_column_at_mask(mask)
                .map(|(j, witness)| (i, j, witness))
        });
    match hit {
        Some((i, j, witness)) => {
            let beta_point = mask_to_point(candidates[i], n);
            Ok(verdict(
                VerdictTag::SolutionFound,
                Some(witness),
                i + 1,
                format!(
                    "{p_note}zero column {j} (sigma = {}) at beta = {beta_point:?}",
                    matrix.sigma(j)
                ),
            ))
        }
        None => Ok(verdict(
            VerdictTag::Inconclusive,
            None,
            candidates.len(),
            format!(
                "{p_note}no zero column across {} candidate points{truncation_note}; \
                 the zero-column test is one-sided, so emptiness cannot be inferred",
                candidates.len()
            ),
        )),
    }
}
