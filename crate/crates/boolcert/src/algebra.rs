//! Elimination inside the ideal generated by a saturated system: find a
//! univariate polynomial `p` in the chosen variable together with cofactors
//! `h_k` such that `p = sum h_k * g_k`, then extract its roots.
//!
//! Two readings of "the ideal" are supported:
//!
//! * [`Mode::Quotient`] works in the 2^N-dimensional quotient ring, where
//!   the only univariate normal forms are spans of `{1, x}`. Here `p` always
//!   exists and divides `x^2 - x`, so every root is Boolean.
//! * [`Mode::Raw`] works with the multilinear representatives as plain
//!   polynomials (no field equations) and searches for a univariate
//!   combination using square-free monomial multipliers up to a degree cap.
//!   The search may find nothing, and roots may lie outside `{0, 1}`.
//!
//! Both modes re-expand the claimed combination exactly before returning;
//! a mismatch is a bug and panics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::ring::{Monomial, MultilinearPoly};
use crate::saturation::SaturatedSystem;
use crate::scalar::GaussianRational;

/// Which ideal the elimination runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quotient,
    Raw,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Quotient => write!(f, "quotient"),
            Mode::Raw => write!(f, "raw"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quotient" => Ok(Mode::Quotient),
            "raw" => Ok(Mode::Raw),
            other => Err(format!("unknown mode {other:?} (expected quotient or raw)")),
        }
    }
}

/// A dense univariate polynomial in one named ring variable, coefficients
/// ascending by degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    var: usize,
    coeffs: Vec<GaussianRational>,
}

impl UnivariatePoly {
    pub fn new(var: usize, mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { var, coeffs }
    }

    pub fn one(var: usize) -> Self {
        Self::new(var, vec![GaussianRational::one()])
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Ascending coefficients, constant term first.
    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> UnivariatePoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv();
                UnivariatePoly {
                    var: self.var,
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }

    pub fn evaluate(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Exact synthetic division by `x - r`; `None` unless `r` is a root.
    pub fn divide_root(&self, r: &GaussianRational) -> Option<UnivariatePoly> {
        if self.coeffs.is_empty() {
            return None;
        }
        let mut quotient = vec![GaussianRational::zero(); self.coeffs.len() - 1];
        let mut carry = GaussianRational::zero();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            let value = c + &(&carry * r);
            if d == 0 {
                if !value.is_zero() {
                    return None;
                }
            } else {
                quotient[d - 1] = value.clone();
                carry = value;
            }
        }
        Some(UnivariatePoly::new(self.var, quotient))
    }

    /// The image in the quotient ring: `x^e` collapses to `x` for `e >= 1`.
    pub fn reduce_multilinear(&self, ambient: usize) -> MultilinearPoly {
        let mut linear = GaussianRational::zero();
        let mut constant = GaussianRational::zero();
        for (d, c) in self.coeffs.iter().enumerate() {
            if d == 0 {
                constant += c;
            } else {
                linear += c;
            }
        }
        MultilinearPoly::from_terms(
            ambient,
            [
                (Monomial::from_var(self.var), linear),
                (Monomial::ONE, constant),
            ],
        )
    }
}

/// Grammar-compatible text: descending powers, `x0^2 - 3*x0 + 2` style.
impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, neg: bool, body: String| -> fmt::Result {
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")
        };
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            let power = match d {
                0 => String::new(),
                1 => format!("x{}", self.var),
                _ => format!("x{}^{d}", self.var),
            };
            let re = c.re();
            let im = c.im();
            for (part, unit) in [(re, ""), (im, "i")] {
                if part.is_zero() {
                    continue;
                }
                let mag = part.abs();
                let coeff_body = if mag.is_one() && unit.is_empty() {
                    String::new()
                } else if mag.is_one() {
                    unit.to_string()
                } else {
                    format!("{mag}{unit}")
                };
                let body = match (coeff_body.is_empty(), power.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => power.clone(),
                    (false, true) => coeff_body,
                    (false, false) => format!("{coeff_body}*{power}"),
                };
                emit(f, part.is_negative(), body)?;
            }
        }
        Ok(())
    }
}

/// One root of a univariate polynomial, or a factor that resisted exact
/// root extraction over the Gaussian rationals. The marker only ever wraps
/// factors with no roots in `{0, 1}` (Boolean roots are stripped first), so
/// it is itself evidence of a non-Boolean root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Root {
    Value(GaussianRational),
    UnknownFactor(UnivariatePoly),
}

impl Root {
    pub fn is_boolean(&self) -> bool {
        match self {
            Root::Value(v) => v.is_zero() || v.is_one(),
            Root::UnknownFactor(_) => false,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Value(v) => write!(f, "{v}"),
            Root::UnknownFactor(p) => write!(f, "UNKNOWN_FACTOR({p})"),
        }
    }
}

/// Roots with multiplicity. Boolean roots are divided out first, then
/// linear and quadratic factors are solved exactly over Q(i); anything left
/// is reported as an [`Root::UnknownFactor`]. Elimination only ever
/// produces degree <= 2 here, but higher degrees degrade gracefully to the
/// marker instead of guessing.
pub fn roots_of(p: &UnivariatePoly) -> Vec<Root> {
    assert!(!p.is_zero(), "the zero polynomial has no root list");
    let mut rest = p.monic();
    let mut roots = Vec::new();
    for b in [GaussianRational::zero(), GaussianRational::one()] {
        while rest.degree() >= 1 {
            match rest.divide_root(&b) {
                Some(q) => {
                    roots.push(Root::Value(b.clone()));
                    rest = q;
                }
                None => break,
            }
        }
    }
    match rest.degree() {
        0 => {}
        1 => {
            // monic x + c0
            roots.push(Root::Value(-&rest.coeffs[0]));
        }
        2 => {
            // monic x^2 + b x + c
            let b = rest.coeffs[1].clone();
            let c = rest.coeffs[0].clone();
            let disc = &(&b * &b) - &(&c * &GaussianRational::from_int(4));
            match disc.sqrt() {
                Some(s) => {
                    let half = GaussianRational::from_ratio(1, 2);
                    roots.push(Root::Value(&(&(-&b) + &s) * &half));
                    roots.push(Root::Value(&(&(-&b) - &s) * &half));
                }
                None => roots.push(Root::UnknownFactor(rest)),
            }
        }
        _ => roots.push(Root::UnknownFactor(rest)),
    }
    roots
}

// ---------------------------------------------------------------------------
// exact row echelon with cofactor provenance
// ---------------------------------------------------------------------------

/// A fully back-reduced row: monic at its pivot (the maximal key), with the
/// cofactor combination that produced it.
struct EchRow<K: Ord + Clone> {
    terms: BTreeMap<K, GaussianRational>,
    cofs: Vec<MultilinearPoly>,
}

/// Incremental exact reduced row echelon over sparse rows keyed by an
/// arbitrary ordered monomial type. Maintains, for every row, the invariant
/// `row = sum cofs[k] (*) generator_k` under whichever bilinear product the
/// caller's rows were built with; reduction and scaling preserve it.
struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, EchRow<K>>,
    width: usize,
    ambient: usize,
}

fn sub_scaled<K: Ord + Clone>(
    terms: &mut BTreeMap<K, GaussianRational>,
    cofs: &mut [MultilinearPoly],
    row: &EchRow<K>,
    c: &GaussianRational,
) {
    for (k, rc) in &row.terms {
        let delta = c * rc;
        match terms.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(-&delta);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() -= &delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
    for (h, rh) in cofs.iter_mut().zip(&row.cofs) {
        *h = &*h - &rh.scale(c);
    }
}

impl<K: Ord + Clone> Echelon<K> {
    fn new(ambient: usize, width: usize) -> Self {
        Echelon {
            rows: BTreeMap::new(),
            width,
            ambient,
        }
    }

    /// Eliminates every pivot occurring in `terms`, updating `cofs` so the
    /// row invariant survives.
    fn reduce_in_place(
        &self,
        terms: &mut BTreeMap<K, GaussianRational>,
        cofs: &mut [MultilinearPoly],
    ) {
        loop {
            let hit = terms
                .keys()
                .rev()
                .find(|k| self.rows.contains_key(*k))
                .cloned();
            let Some(key) = hit else { break };
            let c = terms[&key].clone();
            sub_scaled(terms, cofs, &self.rows[&key], &c);
        }
    }

    /// Reduces and, if anything survives, installs a new monic row and
    /// back-reduces the rest. Returns whether the rank grew.
    fn insert(
        &mut self,
        mut terms: BTreeMap<K, GaussianRational>,
        mut cofs: Vec<MultilinearPoly>,
    ) -> bool {
        debug_assert_eq!(cofs.len(), self.width);
        self.reduce_in_place(&mut terms, &mut cofs);
        let Some((pivot, lead)) = terms.last_key_value().map(|(k, c)| (k.clone(), c.clone()))
        else {
            return false;
        };
        let inv = lead.inv();
        for c in terms.values_mut() {
            *c = &*c * &inv;
        }
        for h in &mut cofs {
            *h = h.scale(&inv);
        }
        let new_row = EchRow { terms, cofs };
        let affected: Vec<K> = self
            .rows
            .iter()
            .filter(|(_, row)| row.terms.contains_key(&pivot))
            .map(|(k, _)| k.clone())
            .collect();
        for key in affected {
            let mut row = self.rows.remove(&key).expect("key just listed");
            let c = row.terms[&pivot].clone();
            sub_scaled(&mut row.terms, &mut row.cofs, &new_row, &c);
            self.rows.insert(key, row);
        }
        self.rows.insert(pivot, new_row);
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

// ---------------------------------------------------------------------------
// quotient-mode machinery
// ---------------------------------------------------------------------------

/// A triangularized spanning set of the ideal generated by a saturated
/// system inside the quotient ring, with cofactor provenance: each basis
/// row knows the combination of generators that produced it.
pub struct IdealBasis {
    ech: Echelon<Monomial>,
    k: usize,
}

/// Builds the basis by sweeping every (square-free monomial, generator)
/// product through exact elimination. Requires `2^n` to stay below the
/// quotient cap.
pub fn ideal_basis(sat: &SaturatedSystem, quotient_cap: usize) -> Result<IdealBasis, Error> {
    let n = sat.n();
    if n > quotient_cap {
        return Err(Error::QuotientTooLarge {
            n,
            cap: quotient_cap,
        });
    }
    let k = sat.k();
    let mut ech = Echelon::new(n, k);
    for (slot, g) in sat.g_polys().iter().enumerate() {
        for bits in 0u64..(1u64 << n) {
            let m = Monomial::from_bits(bits as u32);
            let row = g.mul_monomial(m);
            let mut cofs = vec![MultilinearPoly::zero(n); k];
            cofs[slot] = MultilinearPoly::from_terms(n, [(m, GaussianRational::one())]);
            ech.insert(row.terms().map(|(m, c)| (m, c.clone())).collect(), cofs);
        }
    }
    Ok(IdealBasis { ech, k })
}

impl IdealBasis {
    /// Rank of the ideal as a linear subspace of the quotient.
    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn ambient_n(&self) -> usize {
        self.ech.ambient
    }

    /// Basis rows in ascending pivot order, each with the cofactors
    /// expressing it as a combination of the generators.
    pub fn rows(&self) -> Vec<(MultilinearPoly, Vec<MultilinearPoly>)> {
        self.ech
            .rows
            .values()
            .map(|row| {
                (
                    MultilinearPoly::from_terms(
                        self.ech.ambient,
                        row.terms.iter().map(|(m, c)| (*m, c.clone())),
                    ),
                    row.cofs.clone(),
                )
            })
            .collect()
    }

    /// Fully reduces `f`, returning the residue and cofactors with
    /// `f = residue + sum h_k * g_k`.
    pub fn reduce(&self, f: &MultilinearPoly) -> (MultilinearPoly, Vec<MultilinearPoly>) {
        let mut terms: BTreeMap<Monomial, GaussianRational> =
            f.terms().map(|(m, c)| (m, c.clone())).collect();
        let mut cofs = vec![MultilinearPoly::zero(self.ech.ambient); self.k];
        self.ech.reduce_in_place(&mut terms, &mut cofs);
        let residue = MultilinearPoly::from_terms(
            self.ech.ambient,
            terms.into_iter().collect::<Vec<_>>(),
        );
        // the engine kept terms - sum cofs*g constant, so h = -cofs
        let h = cofs.iter().map(|h| h.neg()).collect();
        (residue, h)
    }

    pub fn contains(&self, f: &MultilinearPoly) -> bool {
        self.reduce(f).0.is_zero()
    }
}

/// Monomial order that pushes everything outside `{1, x_var}` above the
/// univariate normal forms, so elimination pivots land on the univariate
/// span last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct ElimKey {
    away: bool,
    mon: Monomial,
}

fn elim_key(m: Monomial, var: usize) -> ElimKey {
    let away = !(m.is_one() || m == Monomial::from_var(var));
    ElimKey { away, mon: m }
}

// ---------------------------------------------------------------------------
// raw-mode machinery: plain polynomials without the field equations
// ---------------------------------------------------------------------------

/// A plain-ring monomial: per-variable exponents. Ordered by total degree,
/// then exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PlainMono {
    exps: Vec<u32>,
}

impl PlainMono {
    fn from_monomial(m: Monomial, n: usize) -> Self {
        let mut exps = vec![0u32; n];
        for i in m.indices() {
            exps[i] = 1;
        }
        PlainMono { exps }
    }

    fn mul(&self, other: &PlainMono) -> PlainMono {
        PlainMono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `Some(e)` when the monomial is `x_var^e` (including `e = 0`).
    fn pure_power(&self, var: usize) -> Option<u32> {
        for (i, &e) in self.exps.iter().enumerate() {
            if i != var && e != 0 {
                return None;
            }
        }
        Some(self.exps[var])
    }
}

impl Ord for PlainMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for PlainMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PlainPoly {
    ambient: usize,
    terms: BTreeMap<PlainMono, GaussianRational>,
}

impl PlainPoly {
    fn zero(ambient: usize) -> Self {
        PlainPoly {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    fn from_multilinear(f: &MultilinearPoly) -> Self {
        let n = f.ambient_n();
        PlainPoly {
            ambient: n,
            terms: f
                .terms()
                .map(|(m, c)| (PlainMono::from_monomial(m, n), c.clone()))
                .collect(),
        }
    }

    fn from_univariate(p: &UnivariatePoly, ambient: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (d, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; ambient];
            exps[p.var()] = d as u32;
            terms.insert(PlainMono { exps }, c.clone());
        }
        PlainPoly { ambient, terms }
    }

    fn add_assign(&mut self, other: &PlainPoly) {
        for (m, c) in &other.terms {
            match self.terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }

    fn mul(&self, other: &PlainPoly) -> PlainPoly {
        let mut out: BTreeMap<PlainMono, GaussianRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match out.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        PlainPoly {
            ambient: self.ambient,
            terms: out,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RawKey {
    away: bool,
    mon: PlainMono,
}

fn raw_key(m: PlainMono, var: usize) -> RawKey {
    RawKey {
        away: m.pure_power(var).is_none(),
        mon: m,
    }
}

// ---------------------------------------------------------------------------
// elimination proper
// ---------------------------------------------------------------------------

/// Caps for [`eliminate_univariate`].
#[derive(Debug, Clone, Copy)]
pub struct ElimOptions {
    /// Quotient-mode guard: refuse `n` above this (dimension `2^n`).
    pub quotient_cap: usize,
    /// Raw-mode multiplier degree cap; `None` means the ambient `n`.
    pub raw_degree_cap: Option<usize>,
}

impl Default for ElimOptions {
    fn default() -> Self {
        ElimOptions {
            quotient_cap: 16,
            raw_degree_cap: None,
        }
    }
}

/// The outcome of an elimination: a univariate `p` (or nothing, in raw
/// mode), its roots, and the cofactors certifying the combination.
#[derive(Debug, Clone)]
pub struct EliminationResult {
    pub mode: Mode,
    pub var: usize,
    /// Monic univariate generator; `None` only in raw mode when the bounded
    /// search found no univariate member at all.
    pub p: Option<UnivariatePoly>,
    /// Roots of `p` with multiplicity; empty when `p` is `1` or `None`.
    pub beta: Vec<Root>,
    /// One cofactor per generator; `sum h_k * g_k` reproduces `p` (in the
    /// quotient for quotient mode, as plain polynomials for raw mode).
    pub cofactors: Vec<MultilinearPoly>,
    /// The multiplier degree cap used (raw mode only).
    pub raw_degree_cap: Option<usize>,
    /// Always true on a returned value: the combination was re-expanded and
    /// compared against `p` before returning.
    pub verified: bool,
}

/// Finds the minimal-degree monic univariate polynomial in `var` lying in
/// the ideal of the saturated system, with certifying cofactors.
///
/// Quotient mode always produces a `p` dividing `x^2 - x`: the monic
/// generator of the univariate part of the ideal, or `x*(x-1)` itself (with
/// zero cofactors, since it reduces to zero) when no proper univariate
/// member exists — its roots are then exactly the possible values of the
/// variable on the zero set.
pub fn eliminate_univariate(
    sat: &SaturatedSystem,
    var: usize,
    mode: Mode,
    opts: &ElimOptions,
) -> Result<EliminationResult, Error> {
    let n = sat.n();
    if var >= n {
        return Err(Error::InvalidSystem {
            msg: format!("elimination variable x{var} out of range (vars: {n})"),
        });
    }
    match mode {
        Mode::Quotient => eliminate_quotient(sat, var, opts),
        Mode::Raw => eliminate_raw(sat, var, opts),
    }
}

fn eliminate_quotient(
    sat: &SaturatedSystem,
    var: usize,
    opts: &ElimOptions,
) -> Result<EliminationResult, Error> {
    let n = sat.n();
    if n > opts.quotient_cap {
        return Err(Error::QuotientTooLarge {
            n,
            cap: opts.quotient_cap,
        });
    }
    let k = sat.k();
    let mut ech: Echelon<ElimKey> = Echelon::new(n, k);
    for (slot, g) in sat.g_polys().iter().enumerate() {
        for bits in 0u64..(1u64 << n) {
            let m = Monomial::from_bits(bits as u32);
            let row = g.mul_monomial(m);
            let mut cofs = vec![MultilinearPoly::zero(n); k];
            cofs[slot] = MultilinearPoly::from_terms(n, [(m, GaussianRational::one())]);
            ech.insert(
                row.terms().map(|(m, c)| (elim_key(m, var), c.clone())).collect(),
                cofs,
            );
        }
    }

    let one_key = elim_key(Monomial::ONE, var);
    let var_key = elim_key(Monomial::from_var(var), var);
    let (p, cofactors) = if let Some(row) = ech.rows.get(&one_key) {
        // the ideal contains 1: unit ideal
        (UnivariatePoly::one(var), row.cofs.clone())
    } else if let Some(row) = ech.rows.get(&var_key) {
        // monic x + b, with b Boolean-negated by semisimplicity
        let b = row
            .terms
            .get(&one_key)
            .cloned()
            .unwrap_or_else(GaussianRational::zero);
        let beta = -&b;
        assert!(
            beta.is_zero() || beta.is_one(),
            "univariate generator x{var} - ({beta}) has a non-Boolean root \
             in the quotient; this falsifies semisimplicity"
        );
        (
            UnivariatePoly::new(var, vec![b, GaussianRational::one()]),
            row.cofs.clone(),
        )
    } else {
        // no proper univariate member: the full relation x^2 - x, which is
        // zero in the quotient, so the certifying combination is zero
        (
            UnivariatePoly::new(
                var,
                vec![
                    GaussianRational::zero(),
                    GaussianRational::from_int(-1),
                    GaussianRational::one(),
                ],
            ),
            vec![MultilinearPoly::zero(n); k],
        )
    };

    // mandatory re-expansion check
    let mut combo = MultilinearPoly::zero(n);
    for (h, g) in cofactors.iter().zip(sat.g_polys()) {
        combo = &combo + &(h * g);
    }
    assert_eq!(
        combo,
        p.reduce_multilinear(n),
        "cofactor combination does not reproduce p (quotient mode)"
    );

    let beta = if p.is_one() { Vec::new() } else { roots_of(&p) };
    Ok(EliminationResult {
        mode: Mode::Quotient,
        var,
        p: Some(p),
        beta,
        cofactors,
        raw_degree_cap: None,
        verified: true,
    })
}

fn eliminate_raw(
    sat: &SaturatedSystem,
    var: usize,
    opts: &ElimOptions,
) -> Result<EliminationResult, Error> {
    let n = sat.n();
    let cap = opts.raw_degree_cap.unwrap_or(n).min(n);
    let k = sat.k();
    let plain_gens: Vec<PlainPoly> = sat.g_polys().iter().map(PlainPoly::from_multilinear).collect();

    let mut ech: Echelon<RawKey> = Echelon::new(n, k);
    for (slot, plain_g) in plain_gens.iter().enumerate() {
        for bits in 0u64..(1u64 << n) {
            let m = Monomial::from_bits(bits as u32);
            if m.degree() > cap {
                continue;
            }
            let plain_m = PlainMono::from_monomial(m, n);
            let mut terms: BTreeMap<RawKey, GaussianRational> = BTreeMap::new();
            for (gm, gc) in &plain_g.terms {
                terms.insert(raw_key(plain_m.mul(gm), var), gc.clone());
            }
            let mut cofs = vec![MultilinearPoly::zero(n); k];
            cofs[slot] = MultilinearPoly::from_terms(n, [(m, GaussianRational::one())]);
            ech.insert(terms, cofs);
        }
    }

    // the univariate rows have pivots { away: false, x_var^d }; the minimal
    // degree element of their span is the row with the smallest pivot
    let best = ech
        .rows
        .iter()
        .filter(|(key, _)| !key.away)
        .min_by_key(|(key, _)| key.mon.degree());
    let Some((pivot, row)) = best else {
        return Ok(EliminationResult {
            mode: Mode::Raw,
            var,
            p: None,
            beta: Vec::new(),
            cofactors: Vec::new(),
            raw_degree_cap: Some(cap),
            verified: true,
        });
    };
    let top = pivot.mon.degree() as usize;
    let mut coeffs = vec![GaussianRational::zero(); top + 1];
    for (key, c) in &row.terms {
        let d = key
            .mon
            .pure_power(var)
            .expect("univariate pivot row stayed univariate") as usize;
        coeffs[d] = c.clone();
    }
    let p = UnivariatePoly::new(var, coeffs);
    debug_assert!(p.is_monic());
    let cofactors = row.cofs.clone();

    // mandatory re-expansion check, in the plain ring
    let mut combo = PlainPoly::zero(n);
    for (h, plain_g) in cofactors.iter().zip(&plain_gens) {
        combo.add_assign(&PlainPoly::from_multilinear(h).mul(plain_g));
    }
    assert_eq!(
        combo,
        PlainPoly::from_univariate(&p, n),
        "cofactor combination does not reproduce p (raw mode)"
    );

    let beta = if p.is_one() { Vec::new() } else { roots_of(&p) };
    Ok(EliminationResult {
        mode: Mode::Raw,
        var,
        p: Some(p),
        beta,
        cofactors,
        raw_degree_cap: Some(cap),
        verified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::{cube_masks, mask_to_point, point_to_scalars};
    use crate::saturation::build_g;
    use crate::symmetry::PolySystem;

    fn saturated(n: usize, sources: &[&str]) -> SaturatedSystem {
        let sys = PolySystem::new(
            n,
            sources
                .iter()
                .enumerate()
                .map(|(k, s)| (format!("f{k}"), parse_poly(s, n).unwrap())),
        )
        .unwrap();
        let split = sys.stabilizer(8).unwrap();
        build_g(&sys, &split)
    }

    fn rational(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn univariate_display_and_eval() {
        let p = UnivariatePoly::new(
            0,
            vec![
                GaussianRational::from_int(2),
                GaussianRational::from_int(-3),
                GaussianRational::one(),
            ],
        );
        assert_eq!(p.to_string(), "x0^2 - 3*x0 + 2");
        assert!(p.evaluate(&GaussianRational::one()).is_zero());
        assert!(p.evaluate(&GaussianRational::from_int(2)).is_zero());
        assert_eq!(
            p.evaluate(&GaussianRational::zero()),
            GaussianRational::from_int(2)
        );
    }

    #[test]
    fn roots_examples() {
        // x*(x-1)
        let p = UnivariatePoly::new(
            0,
            vec![
                GaussianRational::zero(),
                GaussianRational::from_int(-1),
                GaussianRational::one(),
            ],
        );
        assert_eq!(
            roots_of(&p),
            vec![
                Root::Value(GaussianRational::zero()),
                Root::Value(GaussianRational::one()),
            ]
        );

        let p = UnivariatePoly::new(0, vec![GaussianRational::from_int(-1), GaussianRational::one()]);
        assert_eq!(roots_of(&p), vec![Root::Value(GaussianRational::one())]);

        // (x-1)(x-2)
        let p = UnivariatePoly::new(
            0,
            vec![
                GaussianRational::from_int(2),
                GaussianRational::from_int(-3),
                GaussianRational::one(),
            ],
        );
        let roots = roots_of(&p);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Root::Value(GaussianRational::one())));
        assert!(roots.contains(&Root::Value(GaussianRational::from_int(2))));
        assert!(!roots.iter().all(|r| r.is_boolean()));

        // x^2 + 1 over Q(i)
        let p = UnivariatePoly::new(
            0,
            vec![GaussianRational::one(), GaussianRational::zero(), GaussianRational::one()],
        );
        let roots = roots_of(&p);
        assert!(roots.contains(&Root::Value(GaussianRational::i())));
        assert!(roots.contains(&Root::Value(-GaussianRational::i())));

        // x^2 - x - 1 has no Gaussian rational roots
        let p = UnivariatePoly::new(
            0,
            vec![
                GaussianRational::from_int(-1),
                GaussianRational::from_int(-1),
                GaussianRational::one(),
            ],
        );
        match roots_of(&p).as_slice() {
            [Root::UnknownFactor(q)] => assert_eq!(q, &p),
            other => panic!("expected a single unknown factor, got {other:?}"),
        }

        // scaling does not change roots
        let p = UnivariatePoly::new(
            0,
            vec![rational("-1/2"), rational("1/2")],
        );
        assert_eq!(roots_of(&p), vec![Root::Value(GaussianRational::one())]);
    }

    #[test]
    fn basis_of_unit_ideal_spans_everything() {
        let sat = saturated(2, &["x0", "x0 - 1"]);
        let basis = ideal_basis(&sat, 16).unwrap();
        assert_eq!(basis.dim(), 4);
        assert!(basis.contains(&MultilinearPoly::one(2)));
    }

    #[test]
    fn basis_of_single_variable() {
        let sat = saturated(1, &["x0"]);
        let basis = ideal_basis(&sat, 16).unwrap();
        assert_eq!(basis.dim(), 1);
        let rows = basis.rows();
        assert_eq!(rows[0].0, parse_poly("x0", 1).unwrap());
    }

    #[test]
    fn basis_matches_vanishing_functions() {
        // the swap of {x0*x1, x0 - 1} saturates to {x0*x1, x1 - 1}, whose
        // zero set is the single point (0, 1); the ideal must be exactly the
        // functions vanishing there: dimension 3 of 4
        let sat = saturated(2, &["x0*x1", "x0 - 1"]);
        assert_eq!(sat.g(1), &parse_poly("x1 - 1", 2).unwrap());
        let basis = ideal_basis(&sat, 16).unwrap();
        assert_eq!(basis.dim(), 3);
        let point = point_to_scalars(&[0, 1]);
        for (row, cofs) in basis.rows() {
            assert!(row.evaluate(&point).is_zero());
            // provenance: the cofactor combination reproduces the row
            let mut combo = MultilinearPoly::zero(2);
            for (h, g) in cofs.iter().zip(sat.g_polys()) {
                combo = &combo + &(h * g);
            }
            assert_eq!(combo, row);
        }
        for member in ["x0", "x1 - 1", "x0*x1"] {
            assert!(basis.contains(&parse_poly(member, 2).unwrap()), "{member}");
        }
        assert!(!basis.contains(&MultilinearPoly::one(2)));
        // reduce returns consistent cofactors for members
        let f = parse_poly("x0 + 3*x1 - 3", 2).unwrap();
        let (residue, h) = basis.reduce(&f);
        let mut combo = residue.clone();
        for (h, g) in h.iter().zip(sat.g_polys()) {
            combo = &combo + &(h * g);
        }
        assert_eq!(combo, f);
        assert!(residue.is_zero());
    }

    #[test]
    fn basis_dimension_counts_zero_set() {
        // dim(ideal) = 2^n - |Z(G)| by semisimplicity; exercised on a few
        // hand systems
        for (n, sources) in [
            (2, vec!["x0*x1"]),
            (2, vec!["x0 + x1 - 1"]),
            (3, vec!["x0*x1", "x1*x2"]),
            (3, vec!["x0 - 1", "x1"]),
        ] {
            let sat = saturated(n, &sources);
            let g_sys = sat.g_system();
            let zeros = cube_masks(n)
                .filter(|&m| g_sys.vanishes_at_mask(m))
                .count();
            let basis = ideal_basis(&sat, 16).unwrap();
            assert_eq!(basis.dim(), (1 << n) - zeros, "system {sources:?}");
        }
    }

    #[test]
    fn eliminate_generator_already_univariate() {
        let sat = saturated(1, &["x0 - 1"]);
        let res = eliminate_univariate(&sat, 0, Mode::Quotient, &ElimOptions::default()).unwrap();
        let p = res.p.unwrap();
        assert_eq!(p.to_string(), "x0 - 1");
        assert_eq!(res.beta, vec![Root::Value(GaussianRational::one())]);
        assert_eq!(res.cofactors, vec![MultilinearPoly::one(1)]);
    }

    #[test]
    fn eliminate_recovers_cofactors() {
        let sat = saturated(2, &["x0*x1", "x0 - 1"]);
        let res = eliminate_univariate(&sat, 0, Mode::Quotient, &ElimOptions::default()).unwrap();
        let p = res.p.unwrap();
        assert_eq!(p.to_string(), "x0");
        assert_eq!(res.beta, vec![Root::Value(GaussianRational::zero())]);
        assert_eq!(
            res.cofactors,
            vec![
                MultilinearPoly::one(2),
                parse_poly("x0", 2).unwrap().neg(),
            ]
        );
    }

    #[test]
    fn eliminate_unit_ideal() {
        let sat = saturated(1, &["x0", "x0 - 1"]);
        let res = eliminate_univariate(&sat, 0, Mode::Quotient, &ElimOptions::default()).unwrap();
        assert!(res.p.as_ref().unwrap().is_one());
        assert!(res.beta.is_empty());
        // 1 = 1*(x0) + (-1)*(x0 - 1)
        assert_eq!(
            res.cofactors,
            vec![MultilinearPoly::one(1), MultilinearPoly::one(1).neg()]
        );
    }

    #[test]
    fn eliminate_trivial_intersection_gives_field_relation() {
        let sat = saturated(2, &["x0*x1"]);
        let res = eliminate_univariate(&sat, 0, Mode::Quotient, &ElimOptions::default()).unwrap();
        let p = res.p.unwrap();
        assert_eq!(p.to_string(), "x0^2 - x0");
        assert_eq!(
            res.beta,
            vec![
                Root::Value(GaussianRational::zero()),
                Root::Value(GaussianRational::one()),
            ]
        );
        assert!(res.cofactors.iter().all(|h| h.is_zero()));
    }

    #[test]
    fn quotient_roots_match_projection() {
        // root set of p == projection of Z(G) onto the variable, for each
        // variable of a few systems
        for (n, sources) in [
            (2, vec!["x0*x1"]),
            (2, vec!["x0*x1", "x0 - 1"]),
            (2, vec!["x0 + x1 - 1"]),
            (3, vec!["x0*x1", "x1*x2"]),
            (2, vec!["x0", "x0 - 1"]),
            (3, vec!["x0*x1*x2 - 1"]),
        ] {
            let sat = saturated(n, &sources);
            let g_sys = sat.g_system();
            for var in 0..n {
                let res =
                    eliminate_univariate(&sat, var, Mode::Quotient, &ElimOptions::default())
                        .unwrap();
                let p = res.p.unwrap();
                let mut projection: Vec<u8> = cube_masks(n)
                    .filter(|&m| g_sys.vanishes_at_mask(m))
                    .map(|m| mask_to_point(m, n)[var])
                    .collect();
                projection.sort_unstable();
                projection.dedup();
                let mut root_bits: Vec<u8> = res
                    .beta
                    .iter()
                    .map(|r| match r {
                        Root::Value(v) if v.is_zero() => 0,
                        Root::Value(v) if v.is_one() => 1,
                        other => panic!("non-Boolean quotient root {other}"),
                    })
                    .collect();
                root_bits.sort_unstable();
                root_bits.dedup();
                assert_eq!(root_bits, projection, "system {sources:?} var {var}");
                assert_eq!(p.is_one(), projection.is_empty());
            }
        }
    }

    #[test]
    fn raw_mode_finds_non_boolean_roots() {
        // x0 and x1 are the two roots of t^2 - 3t + 2 here, so the plain
        // ideal contains that quadratic in x0 alone
        let sat = saturated(2, &["x0 + x1 - 3", "x0*x1 - 2"]);
        assert_eq!(sat.destab().c(), 0);
        let res = eliminate_univariate(&sat, 0, Mode::Raw, &ElimOptions::default()).unwrap();
        let p = res.p.unwrap();
        assert_eq!(p.to_string(), "x0^2 - 3*x0 + 2");
        assert_eq!(res.raw_degree_cap, Some(2));
        assert!(res.beta.contains(&Root::Value(GaussianRational::one())));
        assert!(res.beta.contains(&Root::Value(GaussianRational::from_int(2))));
    }

    #[test]
    fn raw_mode_can_find_nothing() {
        // every monomial of x0*x1 - x1 contains x1, and multiplying keeps it
        // that way, so no univariate in x0 exists in the plain ideal
        let sat = saturated(2, &["x0*x1 - x1"]);
        let res = eliminate_univariate(&sat, 0, Mode::Raw, &ElimOptions::default()).unwrap();
        assert!(res.p.is_none());
        assert!(res.beta.is_empty());
        assert!(res.cofactors.is_empty());
    }

    #[test]
    fn raw_mode_unit_ideal() {
        let sat = saturated(1, &["x0", "x0 - 1"]);
        let res = eliminate_univariate(&sat, 0, Mode::Raw, &ElimOptions::default()).unwrap();
        assert!(res.p.as_ref().unwrap().is_one());
        assert!(res.beta.is_empty());
    }

    #[test]
    fn eliminate_rejects_bad_variable() {
        let sat = saturated(2, &["x0*x1"]);
        assert!(matches!(
            eliminate_univariate(&sat, 5, Mode::Quotient, &ElimOptions::default()),
            Err(Error::InvalidSystem { .. })
        ));
    }

    #[test]
    fn quotient_cap_respected() {
        let sat = saturated(3, &["x0*x1*x2"]);
        let opts = ElimOptions {
            quotient_cap: 2,
            raw_degree_cap: None,
        };
        assert!(matches!(
            eliminate_univariate(&sat, 0, Mode::Quotient, &opts),
            Err(Error::QuotientTooLarge { n: 3, cap: 2 })
        ));
        assert!(matches!(
            ideal_basis(&sat, 2),
            Err(Error::QuotientTooLarge { n: 3, cap: 2 })
        ));
    }
}
