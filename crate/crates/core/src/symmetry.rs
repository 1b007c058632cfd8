//! Automorphisms of the prism's face poset.
//!
//! For m != 4 the group is generated by the ring rotation x, the ring
//! reflection y and the top/bottom swap z, with x^m = y^2 = z^2 = 1,
//! x^u y = y x^(m-u), and z central; every element has the normal form
//! x^u y^v z^w and the group has order 4m. For m = 4 the prism is the cube,
//! whose face poset has 48 automorphisms; there the brute-force search over
//! facet bijections is authoritative and the x, y, z words only describe a
//! subgroup.
//!
//! The group acts on colorings on the right, `coloring ∘ g`; equality of
//! group elements is decided on mappings, never on words.

use crate::budget::Budget;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::prism::{FacetId, PrismComplex};
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Normal form x^u y^v z^w of a poset automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Word {
    /// Exponent u of the ring rotation, reduced modulo m on construction.
    pub ring_rotation: u32,
    /// Whether the ring reflection y participates.
    pub ring_reflection: bool,
    /// Whether the top/bottom swap z participates.
    pub level_swap: bool,
}

impl Word {
    pub fn new(ring_rotation: u32, ring_reflection: bool, level_swap: bool) -> Self {
        Word { ring_rotation, ring_reflection, level_swap }
    }

    pub fn identity() -> Self {
        Word::new(0, false, false)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ring_rotation == 0 && !self.ring_reflection && !self.level_swap {
            return write!(f, "id");
        }
        match self.ring_rotation {
            0 => {}
            1 => write!(f, "x")?,
            u => write!(f, "x^{u}")?,
        }
        if self.ring_reflection {
            write!(f, "y")?;
        }
        if self.level_swap {
            write!(f, "z")?;
        }
        Ok(())
    }
}

/// An automorphism of the face poset of the m-sided prism, represented by
/// its action on facets.
#[derive(Debug, Clone)]
pub struct FacetPermutation {
    m: u32,
    /// images[p] is the canonical position of the image of the facet at
    /// canonical position p.
    images: Vec<usize>,
    word: Option<Word>,
}

impl PartialEq for FacetPermutation {
    /// Mapping equality; words are a convenience and do not participate.
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.images == other.images
    }
}

impl Eq for FacetPermutation {}

impl Hash for FacetPermutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.images.hash(state);
    }
}

fn word_images(m: u32, word: Word) -> Vec<usize> {
    let mut images = Vec::with_capacity(m as usize + 2);
    if word.level_swap {
        images.push(1);
        images.push(0);
    } else {
        images.push(0);
        images.push(1);
    }
    for i in 1..=m {
        let reflected = if word.ring_reflection { m + 1 - i } else { i };
        let target = (reflected - 1 + word.ring_rotation) % m + 1;
        images.push((target + 1) as usize);
    }
    images
}

impl FacetPermutation {
    /// The element x^u y^v z^w. The exponent u is reduced modulo m.
    ///
    /// Requires m >= 3. For m = 4 the words describe only a subgroup of the
    /// full cube group; [`full_group`] returns all 48 elements.
    pub fn from_word(m: u32, word: Word) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!(
                "structural automorphisms need m >= 3, got m = {m}"
            )));
        }
        let reduced = Word::new(word.ring_rotation % m, word.ring_reflection, word.level_swap);
        Ok(FacetPermutation {
            m,
            images: word_images(m, reduced),
            word: Some(reduced),
        })
    }

    pub fn identity(m: u32) -> Result<Self> {
        Self::from_word(m, Word::identity())
    }

    pub(crate) fn from_images(m: u32, images: Vec<usize>) -> Self {
        FacetPermutation { m, images, word: None }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Image positions indexed by canonical facet position.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The stored normal form, if the permutation was built from one.
    pub fn word(&self) -> Option<Word> {
        self.word
    }

    /// Image of a facet under the permutation.
    pub fn apply(&self, facet: FacetId) -> Result<FacetId> {
        let position = match facet {
            FacetId::Top => 0,
            FacetId::Bottom => 1,
            FacetId::Side(i) if i >= 1 && i <= self.m => (i + 1) as usize,
            FacetId::Side(_) => return Err(Error::UnknownFacet { facet, m: self.m }),
        };
        Ok(position_to_facet(self.images[position]))
    }

    /// The composite mapping self ∘ other (apply `other` first).
    ///
    /// When both operands carry words the result's word is derived from the
    /// relations x^u y = y x^(m-u) and z central, then cross-checked against
    /// the composed mapping in debug builds.
    pub fn compose(&self, other: &FacetPermutation) -> Result<FacetPermutation> {
        if self.m != other.m {
            return Err(Error::MismatchedPrism(self.m, other.m));
        }
        let images: Vec<usize> = (0..self.images.len())
            .map(|p| self.images[other.images[p]])
            .collect();
        let word = match (self.word, other.word) {
            (Some(g), Some(h)) => {
                let m = self.m;
                let rotated = if g.ring_reflection {
                    (m - h.ring_rotation % m) % m
                } else {
                    h.ring_rotation % m
                };
                let combined = Word::new(
                    (g.ring_rotation + rotated) % m,
                    g.ring_reflection ^ h.ring_reflection,
                    g.level_swap ^ h.level_swap,
                );
                debug_assert_eq!(word_images(m, combined), images);
                Some(combined)
            }
            _ => None,
        };
        Ok(FacetPermutation { m: self.m, images, word })
    }

    pub fn inverse(&self) -> FacetPermutation {
        let mut images = vec![0usize; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[q] = p;
        }
        let word = self.word.map(|w| {
            let rotation = if w.ring_reflection {
                w.ring_rotation
            } else {
                (self.m - w.ring_rotation % self.m) % self.m
            };
            Word::new(rotation, w.ring_reflection, w.level_swap)
        });
        FacetPermutation { m: self.m, images, word }
    }

    /// Whether the mapping sends every vertex triple of `complex` to a
    /// vertex triple.
    pub fn is_automorphism_of(&self, complex: &PrismComplex) -> bool {
        if self.m != complex.m() || self.images.len() != complex.facet_count() {
            return false;
        }
        let triples: BTreeSet<[usize; 3]> = complex
            .position_triples()
            .iter()
            .map(|t| sorted3(*t))
            .collect();
        complex.position_triples().iter().all(|&[a, b, c]| {
            triples.contains(&sorted3([self.images[a], self.images[b], self.images[c]]))
        })
    }

    /// Cycles of the mapping on canonical positions, each cycle listed from
    /// its smallest member, cycles ordered by smallest member.
    pub fn position_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut current = self.images[start];
            while current != start {
                seen[current] = true;
                cycle.push(current);
                current = self.images[current];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Recovers the normal form by matching the mapping against every
    /// candidate word. Returns the stored word when present; returns None
    /// for the cube automorphisms that move a polygon facet to the ring.
    pub fn as_word(&self) -> Option<Word> {
        if self.word.is_some() {
            return self.word;
        }
        for rotation in 0..self.m {
            for reflection in [false, true] {
                for swap in [false, true] {
                    let candidate = Word::new(rotation, reflection, swap);
                    if word_images(self.m, candidate) == self.images {
                        return Some(candidate);
                    }
                }
            }
        }
        None
    }

    /// The image sequence of the ordered facet list, e.g.
    /// `s2 s1 a1 a4 a3 a2`.
    pub fn digest(&self) -> String {
        let names: Vec<String> = self
            .images
            .iter()
            .map(|&q| position_to_facet(q).to_string())
            .collect();
        names.join(" ")
    }

    pub(crate) fn permute_into(&self, source: &[u8], target: &mut [u8]) {
        for (p, &q) in self.images.iter().enumerate() {
            target[p] = source[q];
        }
    }
}

fn position_to_facet(position: usize) -> FacetId {
    match position {
        0 => FacetId::Top,
        1 => FacetId::Bottom,
        p => FacetId::Side((p - 1) as u32),
    }
}

fn sorted3(mut triple: [usize; 3]) -> [usize; 3] {
    triple.sort_unstable();
    triple
}

/// The coloring `coloring ∘ g`: the facet F receives the color of g(F).
/// Validity is preserved. Panics if the sizes disagree.
pub fn act_on_coloring(g: &FacetPermutation, coloring: &Coloring) -> Coloring {
    assert_eq!(
        g.images().len(),
        coloring.len(),
        "permutation and coloring belong to different prisms"
    );
    let mut colors = vec![0u8; coloring.len()];
    g.permute_into(coloring.color_indices(), &mut colors);
    Coloring::from_color_indices(colors).expect("permuting a coloring keeps colors valid")
}

/// The full automorphism group of the face poset: the 4m words x^u y^v z^w
/// for m != 4, and the 48 cube automorphisms found by brute force for m = 4.
/// The returned list is duplicate-free and deterministic.
pub fn full_group(m: u32) -> Result<Vec<FacetPermutation>> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "the automorphism group is provided for m >= 3, got m = {m}"
        )));
    }
    if m == 4 {
        return poset_automorphisms(&PrismComplex::new(4)?, &Budget::default());
    }
    let mut group = Vec::with_capacity(4 * m as usize);
    for rotation in 0..m {
        for reflection in [false, true] {
            for swap in [false, true] {
                group.push(FacetPermutation::from_word(
                    m,
                    Word::new(rotation, reflection, swap),
                )?);
            }
        }
    }
    Ok(group)
}

/// All facet bijections mapping the vertex-triple family onto itself, by
/// backtracking over images with adjacency-based pruning. Results are in
/// lexicographic order of their image sequences.
pub fn poset_automorphisms(
    complex: &PrismComplex,
    budget: &Budget,
) -> Result<Vec<FacetPermutation>> {
    let n = complex.facet_count();
    if n as u32 > budget.max_search_facets {
        return Err(Error::ResourceLimit {
            what: "face-poset automorphism search over facet count",
            requested: n as u32,
            limit: budget.max_search_facets,
        });
    }
    let adjacency = complex.facet_adjacency();
    let degrees = (0..n).map(|p| adjacency.degree(p)).collect();
    let search = AutomorphismSearch {
        n,
        adjacency,
        degrees,
        triples: complex
            .position_triples()
            .iter()
            .map(|t| sorted3(*t))
            .collect(),
    };
    let mut found = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search.run(0, &mut images, &mut used, &mut found);
    Ok(found
        .into_iter()
        .map(|images| FacetPermutation::from_images(complex.m(), images))
        .collect())
}

struct AutomorphismSearch {
    n: usize,
    adjacency: crate::prism::FacetAdjacency,
    degrees: Vec<usize>,
    triples: BTreeSet<[usize; 3]>,
}

impl AutomorphismSearch {
    fn run(
        &self,
        position: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if position == self.n {
            let ok = self.triples.iter().all(|&[a, b, c]| {
                self.triples
                    .contains(&sorted3([images[a], images[b], images[c]]))
            });
            if ok {
                found.push(images.clone());
            }
            return;
        }
        for candidate in 0..self.n {
            if used[candidate] || self.degrees[candidate] != self.degrees[position] {
                continue;
            }
            let consistent = (0..position).all(|earlier| {
                self.adjacency.adjacent_positions(earlier, position)
                    == self.adjacency.adjacent_positions(images[earlier], candidate)
            });
            if !consistent {
                continue;
            }
            images[position] = candidate;
            used[candidate] = true;
            self.run(position + 1, images, used, found);
            used[candidate] = false;
            images[position] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Coloring;
    use std::collections::BTreeSet;

    fn word(m: u32, u: u32, v: bool, w: bool) -> FacetPermutation {
        FacetPermutation::from_word(m, Word::new(u, v, w)).unwrap()
    }

    #[test]
    fn generator_relations() {
        for m in [3u32, 5, 6, 7] {
            let x = word(m, 1, false, false);
            let y = word(m, 0, true, false);
            let z = word(m, 0, false, true);
            let id = FacetPermutation::identity(m).unwrap();

            // x^m = y^2 = z^2 = 1
            assert_eq!(word(m, m - 1, false, false).compose(&x).unwrap(), id);
            assert_eq!(y.compose(&y).unwrap(), id);
            assert_eq!(z.compose(&z).unwrap(), id);
            // x y = y x^(m-1)
            assert_eq!(
                x.compose(&y).unwrap(),
                y.compose(&word(m, m - 1, false, false)).unwrap()
            );
            // z commutes with everything
            for u in 0..m {
                let g = word(m, u, true, false);
                assert_eq!(g.compose(&z).unwrap(), z.compose(&g).unwrap());
            }
            assert_eq!(x.compose(&id).unwrap(), x);
        }
    }

    #[test]
    fn generator_actions_on_facets() {
        let y5 = word(5, 0, true, false);
        assert_eq!(y5.apply(FacetId::Side(1)).unwrap(), FacetId::Side(5));
        let z6 = word(6, 0, false, true);
        assert_eq!(z6.apply(FacetId::Top).unwrap(), FacetId::Bottom);
        assert_eq!(z6.apply(FacetId::Bottom).unwrap(), FacetId::Top);
        for i in 1..=6 {
            assert_eq!(z6.apply(FacetId::Side(i)).unwrap(), FacetId::Side(i));
        }
        let x3 = word(3, 1, false, false);
        assert_eq!(x3.apply(FacetId::Side(3)).unwrap(), FacetId::Side(1));
    }

    #[test]
    fn composition_word_normalization_is_exhaustive() {
        // The debug_assert in compose checks the word against the mapping;
        // exercise every pair for two group sizes.
        for m in [5u32, 6] {
            let group = full_group(m).unwrap();
            for g in &group {
                for h in &group {
                    let composed = g.compose(h).unwrap();
                    assert!(composed.word().is_some());
                }
            }
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        for m in [5u32, 6] {
            let id = FacetPermutation::identity(m).unwrap();
            for g in full_group(m).unwrap() {
                let inv = g.inverse();
                assert_eq!(g.compose(&inv).unwrap(), id);
                assert_eq!(inv.compose(&g).unwrap(), id);
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(full_group(5).unwrap().len(), 20);
        assert_eq!(full_group(6).unwrap().len(), 24);
        assert_eq!(full_group(4).unwrap().len(), 48);
        assert!(full_group(2).is_err());
    }

    #[test]
    fn group_is_duplicate_free_and_closed() {
        for m in [3u32, 4, 5, 6] {
            let group = full_group(m).unwrap();
            let set: BTreeSet<Vec<usize>> =
                group.iter().map(|g| g.images().to_vec()).collect();
            assert_eq!(set.len(), group.len(), "m={m}");
            assert!(set.contains(FacetPermutation::identity(m).unwrap().images()));
            for g in &group {
                assert!(set.contains(g.inverse().images()));
                for h in &group {
                    assert!(set.contains(g.compose(h).unwrap().images()));
                }
            }
        }
    }

    #[test]
    fn bruteforce_matches_structural_group() {
        for m in 3..=6u32 {
            let complex = PrismComplex::new(m).unwrap();
            let brute = poset_automorphisms(&complex, &Budget::default()).unwrap();
            let expected: BTreeSet<Vec<usize>> = full_group(m)
                .unwrap()
                .iter()
                .map(|g| g.images().to_vec())
                .collect();
            let got: BTreeSet<Vec<usize>> =
                brute.iter().map(|g| g.images().to_vec()).collect();
            assert_eq!(got, expected, "m={m}");
            for g in &brute {
                assert!(g.is_automorphism_of(&complex));
            }
        }
    }

    #[test]
    fn bruteforce_respects_the_facet_budget() {
        let complex = PrismComplex::new(9).unwrap();
        assert!(matches!(
            poset_automorphisms(&complex, &Budget::default()),
            Err(Error::ResourceLimit { .. })
        ));
        assert_eq!(
            poset_automorphisms(&complex, &Budget::unlimited())
                .unwrap()
                .len(),
            36
        );
    }

    #[test]
    fn reflections_split_the_ring_into_small_orbits() {
        for m in [6u32, 8] {
            for u in (1..m).step_by(2) {
                let g = word(m, u, true, false);
                let ring_orbits: Vec<Vec<usize>> = g
                    .position_cycles()
                    .into_iter()
                    .filter(|orbit| orbit.iter().all(|&p| p >= 2))
                    .collect();
                assert!(ring_orbits.iter().all(|orbit| orbit.len() <= 2));
                let fixed = ring_orbits.iter().filter(|orbit| orbit.len() == 1).count();
                assert_eq!(fixed, 2, "m={m} u={u}");
            }
        }
    }

    #[test]
    fn word_recovery_from_mappings() {
        let complex = PrismComplex::new(4).unwrap();
        let cube = poset_automorphisms(&complex, &Budget::default()).unwrap();
        let with_words = cube.iter().filter(|g| g.as_word().is_some()).count();
        // Exactly the D8 x Z2 subgroup admits the x^u y^v z^w form.
        assert_eq!(with_words, 16);
        for g in &cube {
            if let Some(w) = g.as_word() {
                assert_eq!(&word(4, w.ring_rotation, w.ring_reflection, w.level_swap), g);
            } else {
                // The rest move a polygon facet into the ring.
                assert!(g.images()[0] >= 2 || g.images()[1] >= 2);
            }
        }
    }

    #[test]
    fn word_rendering() {
        assert_eq!(Word::identity().to_string(), "id");
        assert_eq!(Word::new(3, false, false).to_string(), "x^3");
        assert_eq!(Word::new(1, true, false).to_string(), "xy");
        assert_eq!(Word::new(0, true, true).to_string(), "yz");
        assert_eq!(Word::new(2, true, true).to_string(), "x^2yz");
    }

    #[test]
    fn action_is_right_composition() {
        let m = 5;
        let complex = PrismComplex::new(m).unwrap();
        let coloring = Coloring::from_color_indices(vec![1, 3, 2, 4, 2, 4, 6]).unwrap();
        assert!(crate::coloring::is_valid(&complex, &coloring).unwrap());
        let id = FacetPermutation::identity(m).unwrap();
        assert_eq!(act_on_coloring(&id, &coloring), coloring);

        // act(g, act(h, c)) = act(h ∘ g, c)
        for g in full_group(m).unwrap() {
            for h in full_group(m).unwrap() {
                let left = act_on_coloring(&g, &act_on_coloring(&h, &coloring));
                let right = act_on_coloring(&h.compose(&g).unwrap(), &coloring);
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn level_swap_fixes_colorings_with_equal_polygon_colors() {
        let complex = PrismComplex::new(3).unwrap();
        let coloring = Coloring::from_color_indices(vec![1, 1, 2, 4, 6]).unwrap();
        assert!(crate::coloring::is_valid(&complex, &coloring).unwrap());
        let z = word(3, 0, false, true);
        assert_eq!(act_on_coloring(&z, &coloring), coloring);
    }

    #[test]
    fn action_preserves_validity() {
        let complex = PrismComplex::new(6).unwrap();
        let coloring = Coloring::from_color_indices(vec![1, 3, 2, 4, 2, 4, 2, 4]).unwrap();
        assert!(crate::coloring::is_valid(&complex, &coloring).unwrap());
        for g in full_group(6).unwrap() {
            let moved = act_on_coloring(&g, &coloring);
            assert!(crate::coloring::is_valid(&complex, &moved).unwrap());
        }
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        let g5 = word(5, 1, false, false);
        let g6 = word(6, 1, false, false);
        assert_eq!(g5.compose(&g6), Err(Error::MismatchedPrism(5, 6)));
    }
}
