//! Symmetrized products: each `f_k` is replaced by the product of all its
//! destabilizer-permuted copies, reduced in the quotient ring.
//!
//! The resulting `g_k` vanishes at a Boolean point exactly when *some*
//! permuted copy of `f_k` does, so the zero set of the new system `G`
//! contains every `Z(F_sigma)` with `sigma` outside the stabilizer.

use rayon::prelude::*;

use crate::ring::MultilinearPoly;
use crate::symmetry::{DestabilizerSet, PolySystem};

/// A source system together with its destabilizer split and the symmetrized
/// polynomials, one per source polynomial.
#[derive(Debug, Clone)]
pub struct SaturatedSystem {
    source: PolySystem,
    destab: DestabilizerSet,
    g_polys: Vec<MultilinearPoly>,
}

impl SaturatedSystem {
    pub fn source(&self) -> &PolySystem {
        &self.source
    }

    pub fn destab(&self) -> &DestabilizerSet {
        &self.destab
    }

    pub fn g_polys(&self) -> &[MultilinearPoly] {
        &self.g_polys
    }

    pub fn g(&self, k: usize) -> &MultilinearPoly {
        &self.g_polys[k]
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn k(&self) -> usize {
        self.g_polys.len()
    }

    /// `G` as a named system (names carried over from the source), for
    /// feeding back into anything that consumes systems.
    pub fn g_system(&self) -> PolySystem {
        PolySystem::new(
            self.source.n(),
            self.source
                .names()
                .iter()
                .cloned()
                .zip(self.g_polys.iter().cloned()),
        )
        .expect("source system was valid")
    }
}

/// Upper bound on the term count of a symmetrized product whose source has
/// `n` terms: `n^c`, except that an empty destabilizer leaves the source
/// untouched (bound `n`). Saturating: the true count never nears u128 range.
pub fn term_bound(n: usize, c: usize) -> u128 {
    if c == 0 {
        n as u128
    } else {
        (n as u128).saturating_pow(c.try_into().unwrap_or(u32::MAX))
    }
}

/// The product of all destabilizer-permuted copies of `f`, reduced as it
/// goes. An empty destabilizer returns `f` itself (the empty product would
/// collapse the system to a unit), and a singleton returns the one permuted
/// copy.
pub fn symmetrized_product(f: &MultilinearPoly, destab: &DestabilizerSet) -> MultilinearPoly {
    let mut acc: Option<MultilinearPoly> = None;
    for sigma in destab.destab() {
        let factor = sigma.apply(f);
        acc = Some(match acc {
            None => factor,
            Some(a) => &a * &factor,
        });
    }
    acc.unwrap_or_else(|| f.clone())
}

/// Symmetrizes every polynomial of the system. The term bound is a theorem
/// (reduction only ever merges terms), so a violation is a bug and panics
/// rather than returning an error.
pub fn build_g(source: &PolySystem, destab: &DestabilizerSet) -> SaturatedSystem {
    assert_eq!(source.n(), destab.n(), "degree mismatch");
    let g_polys: Vec<MultilinearPoly> = source
        .polys()
        .par_iter()
        .map(|f| symmetrized_product(f, destab))
        .collect();
    for ((name, f), g) in source.iter().zip(&g_polys) {
        let bound = term_bound(f.term_count(), destab.c());
        assert!(
            (g.term_count() as u128) <= bound,
            "term bound falsified for {name}: {} terms, bound {bound}",
            g.term_count(),
        );
        g.debug_audit();
    }
    SaturatedSystem {
        source: source.clone(),
        destab: destab.clone(),
        g_polys,
    }
}
