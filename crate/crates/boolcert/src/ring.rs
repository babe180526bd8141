//! Arithmetic in `C = Q(i)[x0..x_{N-1}] / (x_i^2 - x_i)`.
//!
//! Monomials are *sets* of variable indices, so reduction modulo the field
//! equations is structural: multiplying monomials takes the union of their
//! index sets, which is exactly `x_i^2 -> x_i`. Square-freeness is therefore
//! an invariant of the representation, not a postcondition to re-establish.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalar::GaussianRational;

/// Hard representation limit: monomials are 32-bit index sets.
pub const MAX_VARS: usize = 32;

/// A square-free monomial: the set of variable indices that occur in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u32);

impl Monomial {
    /// The empty monomial (the constant `1`).
    pub const ONE: Monomial = Monomial(0);

    pub fn from_var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of representable range");
        Monomial(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u32;
        for i in indices {
            assert!(i < MAX_VARS, "variable index {i} out of representable range");
            bits |= 1 << i;
        }
        Monomial(bits)
    }

    pub fn from_bits(bits: u32) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VARS && self.0 & (1 << i) != 0
    }

    /// Product in the quotient ring: union of index sets (`x_i^2 -> x_i`).
    pub fn product(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Ascending variable indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn max_index(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(31 - self.0.leading_zeros() as usize)
        }
    }
}

/// Lexicographic comparison of ascending index sequences.
fn lex_seq_cmp(mut a: u32, mut b: u32) -> Ordering {
    while a != 0 && b != 0 {
        let ia = a.trailing_zeros();
        let ib = b.trailing_zeros();
        if ia != ib {
            return ia.cmp(&ib);
        }
        a &= a - 1;
        b &= b - 1;
    }
    a.count_ones().cmp(&b.count_ones())
}

/// Graded order: degree first; within a degree, `x0` counts as the largest
/// variable, so the maximum element of each degree is the one whose index
/// sequence is lexicographically smallest. Reverse iteration then yields the
/// canonical display order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_seq_cmp(self.0, other.0).reverse())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "x{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// A sparse square-free polynomial with Gaussian rational coefficients.
///
/// Invariants: no stored zero coefficients, every monomial index below
/// `ambient`, and equality is exact equality of the term maps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultilinearPoly {
    ambient: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultilinearPoly {
    pub fn zero(ambient: usize) -> Self {
        assert!(ambient <= MAX_VARS, "ambient {ambient} exceeds {MAX_VARS}");
        MultilinearPoly {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: usize, c: GaussianRational) -> Self {
        Self::from_terms(ambient, [(Monomial::ONE, c)])
    }

    pub fn one(ambient: usize) -> Self {
        Self::constant(ambient, GaussianRational::one())
    }

    /// The polynomial `x_i`.
    pub fn var(ambient: usize, i: usize) -> Self {
        assert!(i < ambient, "variable x{i} out of ambient {ambient}");
        Self::from_terms(ambient, [(Monomial::from_var(i), GaussianRational::one())])
    }

    /// Builds a polynomial by accumulating terms; repeated monomials are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I>(ambient: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        assert!(ambient <= MAX_VARS, "ambient {ambient} exceeds {MAX_VARS}");
        let mut map: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (m, c) in terms {
            if let Some(max) = m.max_index() {
                assert!(max < ambient, "monomial {m} out of ambient {ambient}");
            }
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        MultilinearPoly {
            ambient,
            terms: map,
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &GaussianRational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Option<&GaussianRational> {
        self.terms.get(&m)
    }

    /// The largest monomial present.
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_ambient(rhs);
        let mut out = self.terms.clone();
        for (m, c) in &rhs.terms {
            match out.entry(*m) {
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
        let out = MultilinearPoly {
            ambient: self.ambient,
            terms: out,
        };
        out.debug_audit();
        out
    }

    pub fn neg(&self) -> Self {
        MultilinearPoly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Product reduced modulo the field equations: monomials multiply by
    /// index-set union, so the result is square-free by construction.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_ambient(rhs);
        let mut acc: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.product(*m2);
                let c = c1 * c2;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let out = MultilinearPoly {
            ambient: self.ambient,
            terms: acc,
        };
        out.debug_audit();
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ambient);
        }
        MultilinearPoly {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        if let Some(max) = m.max_index() {
            assert!(max < self.ambient, "monomial {m} out of ambient {}", self.ambient);
        }
        Self::from_terms(
            self.ambient,
            self.terms.iter().map(|(k, c)| (k.product(m), c.clone())),
        )
    }

    /// Exact evaluation at an arbitrary point of `Q(i)^N`.
    pub fn evaluate(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(
            point.len(),
            self.ambient,
            "point length {} != ambient {}",
            point.len(),
            self.ambient
        );
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for i in m.indices() {
                if val.is_zero() {
                    break;
                }
                val = &val * &point[i];
            }
            acc += &val;
        }
        acc
    }

    /// Evaluation at a Boolean point given as a bitmask (`bit i` set means
    /// `x_i = 1`): a term survives exactly when its index set is contained in
    /// the mask.
    pub fn evaluate_bool(&self, mask: u32) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            if m.bits() & !mask == 0 {
                acc += c;
            }
        }
        acc
    }

    /// Renames variables through `f` (a bijection on `0..ambient`).
    pub fn map_vars<F: Fn(usize) -> usize>(&self, f: F) -> Self {
        Self::from_terms(
            self.ambient,
            self.terms.iter().map(|(m, c)| {
                (Monomial::from_indices(m.indices().map(&f)), c.clone())
            }),
        )
    }

    fn check_ambient(&self, rhs: &Self) {
        assert_eq!(
            self.ambient, rhs.ambient,
            "ambient mismatch: {} vs {}",
            self.ambient, rhs.ambient
        );
    }

    /// Walks the representation invariants; a no-op in release builds.
    pub fn debug_audit(&self) {
        #[cfg(debug_assertions)]
        {
            for (m, c) in &self.terms {
                assert!(!c.is_zero(), "stored zero coefficient at {m}");
                if let Some(max) = m.max_index() {
                    assert!(max < self.ambient, "monomial {m} out of ambient {}", self.ambient);
                }
            }
        }
    }
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPoly[N={}]({})", self.ambient, self)
    }
}

/// Canonical text form: descending degree, then index sets in lexicographic
/// order. A coefficient with both real and imaginary parts prints as two
/// adjacent terms so the output stays inside the grammar; `parse` re-merges
/// them, making the round trip exact.
impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{One, Signed};

        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // (negative?, magnitude text without sign)
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
        for (m, c) in self.terms.iter().rev() {
            let re = c.re();
            let im = c.im();
            if !re.is_zero() {
                let mag = re.abs();
                let body = if m.is_one() {
                    format!("{mag}")
                } else if mag.is_one() {
                    format!("{m}")
                } else {
                    format!("{mag}*{m}")
                };
                emit(f, re.is_negative(), body)?;
            }
            if !im.is_zero() {
                let mag = im.abs();
                let coeff = if mag.is_one() {
                    "i".to_string()
                } else {
                    format!("{mag}i")
                };
                let body = if m.is_one() {
                    coeff
                } else {
                    format!("{coeff}*{m}")
                };
                emit(f, im.is_negative(), body)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn add(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        MultilinearPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn sub(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        MultilinearPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn mul(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        MultilinearPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn neg(self) -> MultilinearPoly {
        MultilinearPoly::neg(self)
    }
}

/// The `counter`-th Boolean point of the `n`-cube in lexicographic order of
/// the tuple `(b_0, ..., b_{n-1})`, as a mask: `b_0` is the most significant
/// digit of the counter.
pub fn counter_to_mask(counter: u64, n: usize) -> u32 {
    let mut mask = 0u32;
    for i in 0..n {
        if counter >> (n - 1 - i) & 1 == 1 {
            mask |= 1 << i;
        }
    }
    mask
}

/// All Boolean points of the `n`-cube as masks, in lexicographic order of the
/// tuple `(b_0, ..., b_{n-1})`.
pub fn cube_masks(n: usize) -> impl Iterator<Item = u32> {
    assert!(n <= MAX_VARS);
    (0u64..(1u64 << n)).map(move |m| counter_to_mask(m, n))
}

/// Converts a mask to the point `(b_0, ..., b_{n-1})` with entries 0/1.
pub fn mask_to_point(mask: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((mask >> i) & 1) as u8).collect()
}

/// Converts a 0/1 point to its mask.
pub fn point_to_mask(point: &[u8]) -> u32 {
    let mut mask = 0u32;
    for (i, &b) in point.iter().enumerate() {
        assert!(b <= 1, "point entry {b} is not Boolean");
        if b == 1 {
            mask |= 1 << i;
        }
    }
    mask
}

/// A Boolean point as explicit 0/1 coordinates.
pub fn point_to_scalars(point: &[u8]) -> Vec<GaussianRational> {
    point
        .iter()
        .map(|&b| {
            if b == 1 {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
        .collect()
}
