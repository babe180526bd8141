//! The symmetric group acting on polynomials by variable relabeling.
//!
//! A permutation `sigma` sends `f` to `sigma . f`, obtained by substituting
//! `x_i -> x_{sigma(i)}`. This is a left action:
//! `(sigma tau) . f = sigma . (tau . f)`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::ring::MultilinearPoly;

/// A permutation of `{0, .., n-1}`, stored as its image list: entry `i` is
/// `sigma(i)`. Serializes as that list, e.g. `[2,0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0, .., n-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::InvalidPermutation {
                    msg: format!("image {img} out of range for degree {n}"),
                });
            }
            if seen[img] {
                return Err(Error::InvalidPermutation {
                    msg: format!("image {img} repeated"),
                });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// `self (then) after other`: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn invert(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// The action on polynomials: substitute `x_i -> x_{sigma(i)}`.
    pub fn apply(&self, f: &MultilinearPoly) -> MultilinearPoly {
        assert_eq!(self.n(), f.ambient_n(), "degree mismatch");
        f.map_vars(|i| self.images[i])
    }

    /// Pulls a point back through the action: if `g = sigma . f` then
    /// `g(b) = f(self.pullback_point(b))`, the point `i -> b[sigma(i)]`.
    pub fn pullback_point<T: Clone>(&self, point: &[T]) -> Vec<T> {
        assert_eq!(self.n(), point.len(), "degree mismatch");
        self.images.iter().map(|&i| point[i].clone()).collect()
    }

    /// `pullback_point` on a Boolean point packed as a bitmask.
    pub fn pullback_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        for (i, &img) in self.images.iter().enumerate() {
            if mask >> img & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

/// All of `Sym(n)` in lexicographic order of image lists. Refuses `n` above
/// `cap` (the factorial blowup guard).
pub fn enumerate_group(n: usize, cap: usize) -> Result<Vec<Permutation>, Error> {
    if n > cap {
        return Err(Error::GroupTooLarge { n, cap });
    }
    let perms: Vec<Permutation> = (0..n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect();
    debug_assert!(perms.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
    Ok(perms)
}

/// A finite system of named polynomials over a common ambient `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    n: usize,
    names: Vec<String>,
    polys: Vec<MultilinearPoly>,
}

impl PolySystem {
    pub fn new<I, S>(n: usize, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (S, MultilinearPoly)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut polys = Vec::new();
        for (name, f) in entries {
            let name = name.into();
            if f.ambient_n() != n {
                return Err(Error::InvalidSystem {
                    msg: format!("{name} has ambient {} but vars: {n}", f.ambient_n()),
                });
            }
            if names.contains(&name) {
                return Err(Error::InvalidSystem {
                    msg: format!("duplicate name {name}"),
                });
            }
            names.push(name);
            polys.push(f);
        }
        if polys.is_empty() {
            return Err(Error::InvalidSystem {
                msg: "a system needs at least one polynomial".to_string(),
            });
        }
        Ok(PolySystem { n, names, polys })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polynomials.
    pub fn k(&self) -> usize {
        self.polys.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn polys(&self) -> &[MultilinearPoly] {
        &self.polys
    }

    pub fn poly(&self, k: usize) -> &MultilinearPoly {
        &self.polys[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &MultilinearPoly)> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.polys.iter())
    }

    /// The system `{sigma . f_k}`, names carried along.
    pub fn permuted(&self, sigma: &Permutation) -> PolySystem {
        PolySystem {
            n: self.n,
            names: self.names.clone(),
            polys: self.polys.iter().map(|f| sigma.apply(f)).collect(),
        }
    }

    /// Whether `sigma` maps the system onto itself *as a set* of canonical
    /// polynomials (names and order are irrelevant here).
    pub fn is_invariant_under(&self, sigma: &Permutation) -> bool {
        let original: BTreeSet<&MultilinearPoly> = self.polys.iter().collect();
        self.polys
            .iter()
            .map(|f| sigma.apply(f))
            .all(|g| original.contains(&g))
    }

    /// Evaluates every polynomial at a Boolean point given as a bitmask;
    /// true when all vanish.
    pub fn vanishes_at_mask(&self, mask: u32) -> bool {
        self.polys.iter().all(|f| f.evaluate_bool(mask).is_zero())
    }

    /// Splits `Sym(n)` into the stabilizer of the system and its complement.
    pub fn stabilizer(&self, group_cap: usize) -> Result<DestabilizerSet, Error> {
        let group = enumerate_group(self.n, group_cap)?;
        let flags: Vec<bool> = group
            .par_iter()
            .map(|sigma| self.is_invariant_under(sigma))
            .collect();
        let mut stab = Vec::new();
        let mut destab = Vec::new();
        for (sigma, keep) in group.into_iter().zip(flags) {
            if keep {
                stab.push(sigma);
            } else {
                destab.push(sigma);
            }
        }
        let split = DestabilizerSet { stab, destab };
        // closure sanity check, skipped once quadratic cost would bite
        debug_assert!(split.stab.len() > 720 || is_subgroup(&split.stab));
        Ok(split)
    }
}

/// The outcome of splitting `Sym(n)` against a system: the stabilizer
/// subgroup and the complementary set of "destabilizing" permutations, both
/// in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerSet {
    stab: Vec<Permutation>,
    destab: Vec<Permutation>,
}

impl DestabilizerSet {
    /// Degree of the underlying group (the stabilizer always holds the
    /// identity, so it is never empty).
    pub fn n(&self) -> usize {
        self.stab[0].n()
    }

    pub fn stab(&self) -> &[Permutation] {
        &self.stab
    }

    pub fn destab(&self) -> &[Permutation] {
        &self.destab
    }

    pub fn stab_order(&self) -> usize {
        self.stab.len()
    }

    /// The count `c` of non-stabilizing permutations.
    pub fn c(&self) -> usize {
        self.destab.len()
    }
}

/// Checks that a set of permutations is closed under composition and
/// inverses and contains the identity. Quadratic; meant for tests and small
/// stabilizers.
pub fn is_subgroup(perms: &[Permutation]) -> bool {
    if perms.is_empty() {
        return false;
    }
    let n = perms[0].n();
    let set: BTreeSet<&Permutation> = perms.iter().collect();
    if !set.contains(&Permutation::identity(n)) {
        return false;
    }
    perms.iter().all(|p| set.contains(&p.invert()))
        && perms
            .iter()
            .all(|p| perms.iter().all(|q| set.contains(&p.compose(q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::cube_masks;
    use crate::scalar::GaussianRational;
    use proptest::prelude::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn system(n: usize, sources: &[&str]) -> PolySystem {
        PolySystem::new(
            n,
            sources
                .iter()
                .enumerate()
                .map(|(k, s)| (format!("f{k}"), parse_poly(s, n).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let got = enumerate_group(3, 8).unwrap();
        let expected: Vec<Permutation> = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|im| perm(im))
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_size_and_cap() {
        assert_eq!(enumerate_group(4, 8).unwrap().len(), 24);
        assert_eq!(enumerate_group(0, 8).unwrap().len(), 1);
        assert!(matches!(
            enumerate_group(9, 8),
            Err(Error::GroupTooLarge { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn compose_and_invert() {
        let sigma = perm(&[1, 2, 0]);
        let tau = perm(&[0, 2, 1]);
        // (sigma tau)(i) = sigma(tau(i))
        assert_eq!(sigma.compose(&tau), perm(&[1, 0, 2]));
        assert_eq!(tau.compose(&sigma), perm(&[2, 1, 0]));
        assert!(sigma.compose(&sigma.invert()).is_identity());
        assert!(sigma.invert().compose(&sigma).is_identity());
    }

    #[test]
    fn apply_relabels_variables() {
        let f = parse_poly("x0*x1 - 1", 3).unwrap();
        let sigma = perm(&[1, 2, 0]);
        assert_eq!(sigma.apply(&f), parse_poly("x1*x2 - 1", 3).unwrap());
    }

    #[test]
    fn apply_agrees_with_pullback_evaluation() {
        let f = parse_poly("x0*x1 + 2*x2 - x0", 3).unwrap();
        for images in [[1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0]] {
            let sigma = perm(&images);
            let g = sigma.apply(&f);
            for mask in cube_masks(3) {
                let b: Vec<GaussianRational> = (0..3)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect();
                assert_eq!(g.evaluate(&b), f.evaluate(&sigma.pullback_point(&b)));
                assert_eq!(
                    g.evaluate_bool(mask),
                    f.evaluate_bool(sigma.pullback_mask(mask))
                );
            }
        }
    }

    #[test]
    fn stabilizer_of_path() {
        // edges (0,1) and (1,2): only the identity and the end-swap fix the
        // system, so c = 6 - 2 = 4
        let sys = system(3, &["x0*x1", "x1*x2"]);
        let split = sys.stabilizer(8).unwrap();
        assert_eq!(split.stab(), &[perm(&[0, 1, 2]), perm(&[2, 1, 0])]);
        assert_eq!(split.c(), 4);
        assert_eq!(
            split.destab(),
            &[
                perm(&[0, 2, 1]),
                perm(&[1, 0, 2]),
                perm(&[1, 2, 0]),
                perm(&[2, 0, 1]),
            ]
        );
        assert!(is_subgroup(split.stab()));
    }

    #[test]
    fn fully_symmetric_system_has_no_destabilizer() {
        let sys = system(3, &["x0 + x1 + x2 - 2"]);
        let split = sys.stabilizer(8).unwrap();
        assert_eq!(split.stab_order(), 6);
        assert_eq!(split.c(), 0);
    }

    #[test]
    fn asymmetric_system_keeps_only_identity() {
        let sys = system(3, &["x0 + 2*x1 + 4*x2"]);
        let split = sys.stabilizer(8).unwrap();
        assert_eq!(split.stab_order(), 1);
        assert!(split.stab()[0].is_identity());
        assert_eq!(split.c(), 5);
    }

    #[test]
    fn stabilizers_are_subgroups() {
        for sources in [
            vec!["x0*x1", "x1*x2", "x2*x3"],
            vec!["x0*x1 - 1", "x2*x3 - 1"],
            vec!["x0 - x1", "x1 - x2", "x2 - x3"],
        ] {
            let sys = system(4, &sources);
            let split = sys.stabilizer(8).unwrap();
            assert!(is_subgroup(split.stab()), "system {sources:?}");
            assert_eq!(split.stab_order() + split.c(), 24);
        }
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_ok());
    }

    #[test]
    fn system_validation() {
        let f = parse_poly("x0", 2).unwrap();
        assert!(PolySystem::new(3, [("f", f.clone())]).is_err());
        assert!(PolySystem::new(2, [("f", f.clone()), ("f", f.clone())]).is_err());
        let empty: Vec<(String, MultilinearPoly)> = vec![];
        assert!(PolySystem::new(2, empty).is_err());
    }

    proptest! {
        #[test]
        fn action_is_left_composition(
            raw in proptest::collection::vec((0u32..32, -3i64..4), 0..6),
            seed1 in 0usize..120,
            seed2 in 0usize..120,
        ) {
            let n = 5;
            let group = enumerate_group(n, 8).unwrap();
            let sigma = &group[seed1 % group.len()];
            let tau = &group[seed2 % group.len()];
            let f = MultilinearPoly::from_terms(
                n,
                raw.into_iter().map(|(mask, c)| {
                    (crate::ring::Monomial::from_bits(mask), GaussianRational::from_int(c))
                }),
            );
            let lhs = sigma.compose(tau).apply(&f);
            let rhs = sigma.apply(&tau.apply(&f));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
