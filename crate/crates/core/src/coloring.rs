//! Validation, enumeration and counting of (Z2)^3-colorings on a prism.
//!
//! A coloring assigns a nonzero vector of (Z2)^3 to every facet so that the
//! three colors meeting at each vertex are linearly independent. The
//! enumeration kernel is a backtracking search in the canonical facet order
//! s1, s2, a1..am with color choices tried in the order 1..=7; it prunes on
//! every vertex triple as soon as the triple is fully assigned, so the visit
//! order is the lexicographic order on color tuples and is identical no
//! matter how the work is split across threads.
//!
//! All counters return arbitrary-precision integers: the counts grow like
//! `168 * 4^m` and every cross-check in this crate compares them exactly.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Vector};
use crate::prism::{FacetId, PrismComplex};
use crate::symmetry::FacetPermutation;
use num_bigint::BigUint;
use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of colors for n = 3: the nonzero vectors of (Z2)^3.
pub const COLOR_COUNT: u8 = 7;

/// Depth up to which the search tree is expanded into independent tasks
/// when counting or collecting in parallel.
#[cfg(feature = "parallel")]
const SPLIT_DEPTH: usize = 4;

/// A total assignment of colors to the facets of a prism, stored as color
/// indices 1..=7 in the canonical facet order s1, s2, a1..am.
///
/// The derived ordering is the lexicographic order on that sequence, which
/// is the canonical order used for orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<u8>,
}

impl Coloring {
    /// Builds a coloring from color indices in canonical facet order.
    /// Indices must lie in 1..=7; validity against a prism is a separate
    /// check ([`is_valid`]).
    pub fn from_color_indices(colors: Vec<u8>) -> Result<Self> {
        for &c in &colors {
            if c == 0 {
                return Err(Error::ZeroColor);
            }
            if c > COLOR_COUNT {
                return Err(Error::VectorOutOfRange { bits: c, dim: 3 });
            }
        }
        Ok(Coloring { colors })
    }

    pub(crate) fn from_raw(colors: Vec<u8>) -> Self {
        Coloring { colors }
    }

    /// Color indices in canonical facet order.
    pub fn color_indices(&self) -> &[u8] {
        &self.colors
    }

    /// Color at a canonical facet position. Panics if out of range.
    pub fn color_at(&self, position: usize) -> Gf2Vector {
        Gf2Vector::color(self.colors[position]).expect("stored colors are valid")
    }

    /// Color of a named facet.
    pub fn color_of(&self, complex: &PrismComplex, facet: FacetId) -> Result<Gf2Vector> {
        let position = complex.position(facet)?;
        if position >= self.colors.len() {
            return Err(Error::MissingFacet(facet));
        }
        Ok(self.color_at(position))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// A partial assignment of colors to facets, used to pin facets before
/// enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    entries: BTreeMap<FacetId, Gf2Vector>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pins a facet to a color. The color must be a nonzero vector of
    /// (Z2)^3. Re-setting a facet overwrites the previous pin.
    pub fn set(&mut self, facet: FacetId, color: Gf2Vector) -> Result<()> {
        if color.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: color.dim() });
        }
        if color.is_zero() {
            return Err(Error::ZeroColor);
        }
        self.entries.insert(facet, color);
        Ok(())
    }

    pub fn get(&self, facet: FacetId) -> Option<Gf2Vector> {
        self.entries.get(&facet).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FacetId, Gf2Vector)> + '_ {
        self.entries.iter().map(|(&f, &v)| (f, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Whether every vertex triple of the complex receives independent colors.
///
/// This is the reference validity check: it runs Gaussian elimination per
/// vertex via [`gf2::is_independent`] and does not share code with the
/// enumeration kernel's pruning test.
pub fn is_valid(complex: &PrismComplex, coloring: &Coloring) -> Result<bool> {
    let n = complex.facet_count();
    if coloring.len() < n {
        return Err(Error::MissingFacet(complex.facet_at(coloring.len())));
    }
    if coloring.len() > n {
        return Err(Error::InvalidArgument(format!(
            "assignment covers {} facets but the prism has {}",
            coloring.len(),
            n
        )));
    }
    for triple in complex.position_triples() {
        let vectors = [
            coloring.color_at(triple[0]),
            coloring.color_at(triple[1]),
            coloring.color_at(triple[2]),
        ];
        if !gf2::is_independent(&vectors, 3)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Backtracking state shared by all enumeration entry points.
struct SearchContext {
    facet_count: usize,
    fixed: Vec<Option<u8>>,
    /// Vertex triples grouped by the facet position that completes them.
    completing: Vec<Vec<[usize; 3]>>,
}

impl SearchContext {
    fn new(complex: &PrismComplex, partial: &PartialAssignment) -> Result<Self> {
        let n = complex.facet_count();
        let mut fixed = vec![None; n];
        for (facet, color) in partial.iter() {
            let position = complex.position(facet)?;
            fixed[position] = Some(color.color_index());
        }

        // Reject a partial assignment that already violates a vertex.
        for triple in complex.position_triples() {
            let colors: Vec<u8> = triple.iter().filter_map(|&p| fixed[p]).collect();
            if colors.len() == 3 && !gf2::triple_independent(colors[0], colors[1], colors[2]) {
                return Err(Error::InconsistentAssignment {
                    f0: complex.facet_at(triple[0]),
                    f1: complex.facet_at(triple[1]),
                    f2: complex.facet_at(triple[2]),
                });
            }
        }

        let mut completing = vec![Vec::new(); n];
        for &triple in complex.position_triples() {
            let last = triple.into_iter().max().expect("triple is nonempty");
            completing[last].push(triple);
        }
        Ok(SearchContext { facet_count: n, fixed, completing })
    }

    #[inline]
    fn choices(&self, position: usize) -> std::ops::RangeInclusive<u8> {
        match self.fixed[position] {
            Some(c) => c..=c,
            None => 1..=COLOR_COUNT,
        }
    }

    #[inline]
    fn consistent_at(&self, buffer: &[u8], position: usize) -> bool {
        self.completing[position]
            .iter()
            .all(|&[a, b, c]| gf2::triple_independent(buffer[a], buffer[b], buffer[c]))
    }

    fn count_from(&self, buffer: &mut [u8], position: usize) -> u128 {
        if position == self.facet_count {
            return 1;
        }
        let mut total = 0;
        for color in self.choices(position) {
            buffer[position] = color;
            if self.consistent_at(buffer, position) {
                total += self.count_from(buffer, position + 1);
            }
        }
        total
    }

    fn visit_from<F: FnMut(&[u8])>(&self, buffer: &mut [u8], position: usize, visitor: &mut F) {
        if position == self.facet_count {
            visitor(buffer);
            return;
        }
        for color in self.choices(position) {
            buffer[position] = color;
            if self.consistent_at(buffer, position) {
                self.visit_from(buffer, position + 1, visitor);
            }
        }
    }

    fn count_sequential(&self) -> u128 {
        let mut buffer = vec![0u8; self.facet_count];
        self.count_from(&mut buffer, 0)
    }

    /// Consistent prefixes of the search tree at `depth`, in visit order.
    #[cfg(feature = "parallel")]
    fn frontier(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut prefixes = Vec::new();
        let mut buffer = vec![0u8; self.facet_count];
        self.frontier_from(&mut buffer, 0, depth, &mut prefixes);
        prefixes
    }

    #[cfg(feature = "parallel")]
    fn frontier_from(
        &self,
        buffer: &mut [u8],
        position: usize,
        depth: usize,
        prefixes: &mut Vec<Vec<u8>>,
    ) {
        if position == depth {
            prefixes.push(buffer.to_vec());
            return;
        }
        for color in self.choices(position) {
            buffer[position] = color;
            if self.consistent_at(buffer, position) {
                self.frontier_from(buffer, position + 1, depth, prefixes);
            }
        }
    }

    #[cfg(feature = "parallel")]
    fn count_parallel(&self) -> u128 {
        let depth = SPLIT_DEPTH.min(self.facet_count);
        self.frontier(depth)
            .into_par_iter()
            .map(|mut prefix| self.count_from(&mut prefix, depth))
            .sum()
    }

    fn count(&self) -> u128 {
        #[cfg(feature = "parallel")]
        {
            self.count_parallel()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.count_sequential()
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn collect_sequential(&self) -> Vec<Coloring> {
        let mut out = Vec::new();
        let mut buffer = vec![0u8; self.facet_count];
        self.visit_from(&mut buffer, 0, &mut |colors| {
            out.push(Coloring::from_raw(colors.to_vec()))
        });
        out
    }

    /// Collects all extensions. With the parallel feature the frontier tasks
    /// run concurrently and their result blocks are concatenated in task
    /// order, which reproduces the sequential visit order exactly.
    fn collect(&self) -> Vec<Coloring> {
        #[cfg(feature = "parallel")]
        {
            let depth = SPLIT_DEPTH.min(self.facet_count);
            let blocks: Vec<Vec<Coloring>> = self
                .frontier(depth)
                .into_par_iter()
                .map(|mut prefix| {
                    let mut block = Vec::new();
                    self.visit_from(&mut prefix, depth, &mut |colors| {
                        block.push(Coloring::from_raw(colors.to_vec()))
                    });
                    block
                })
                .collect();
            blocks.into_iter().flatten().collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.collect_sequential()
        }
    }
}

/// Visits every valid total extension of `fixed` exactly once, in the
/// deterministic order induced by the facet order s1, s2, a1..am and the
/// color order 1..=7, and returns the number visited.
pub fn enumerate_colorings<F: FnMut(&Coloring)>(
    complex: &PrismComplex,
    fixed: &PartialAssignment,
    mut visitor: F,
) -> Result<BigUint> {
    let ctx = SearchContext::new(complex, fixed)?;
    let mut count: u128 = 0;
    let mut buffer = vec![0u8; ctx.facet_count];
    ctx.visit_from(&mut buffer, 0, &mut |colors| {
        count += 1;
        visitor(&Coloring::from_raw(colors.to_vec()));
    });
    Ok(BigUint::from(count))
}

/// Number of valid total extensions of `fixed`. Splits the search tree
/// across threads when the `parallel` feature is enabled; the result does
/// not depend on the split.
pub fn count_extensions(complex: &PrismComplex, fixed: &PartialAssignment) -> Result<BigUint> {
    let ctx = SearchContext::new(complex, fixed)?;
    Ok(BigUint::from(ctx.count()))
}

/// Single-threaded variant of [`count_extensions`], kept callable in every
/// build for cross-checking and benchmarks.
pub fn count_extensions_sequential(
    complex: &PrismComplex,
    fixed: &PartialAssignment,
) -> Result<BigUint> {
    let ctx = SearchContext::new(complex, fixed)?;
    Ok(BigUint::from(ctx.count_sequential()))
}

/// All valid total extensions of `fixed`, in enumeration order.
pub fn collect_colorings(
    complex: &PrismComplex,
    fixed: &PartialAssignment,
) -> Result<Vec<Coloring>> {
    let ctx = SearchContext::new(complex, fixed)?;
    Ok(ctx.collect())
}

fn check_enumeration_budget(m: u32, budget: &Budget) -> Result<()> {
    if m > budget.max_enumeration_m {
        return Err(Error::ResourceLimit {
            what: "full coloring enumeration for m",
            requested: m,
            limit: budget.max_enumeration_m,
        });
    }
    Ok(())
}

/// Total number of colorings of the m-sided prism, by full enumeration.
///
/// The count is obtained by exhaustive search over all seven colors for all
/// facets; no symmetry shortcut is taken, so it is an oracle independent of
/// both the closed formulas and the normalized counts.
pub fn count_colorings(m: u32, budget: &Budget) -> Result<BigUint> {
    check_enumeration_budget(m, budget)?;
    let complex = PrismComplex::new(m)?;
    count_extensions(&complex, &PartialAssignment::new())
}

/// The admissible bottom colors once s1 = e1, a1 = e2, a2 = e3 are pinned.
pub const ADMISSIBLE_BOTTOM_COLORS: [u8; 4] = [1, 3, 5, 7];

/// Number of colorings normalized by the free GL(3, Z2) action: s1 = e1,
/// a1 = e2, a2 = e3, and optionally a prescribed bottom color.
///
/// The bottom color must be one of e1, e1+e2, e1+e3, e1+e2+e3; the other
/// three nonzero vectors force a dependent triple at a bottom vertex or are
/// excluded by the pinned s1. Without a filter the count is the sum over
/// the four admissible bottom values.
pub fn count_normalized(m: u32, bottom_filter: Option<Gf2Vector>) -> Result<BigUint> {
    let complex = PrismComplex::new(m)?;
    let mut fixed = PartialAssignment::new();
    fixed.set(FacetId::Top, Gf2Vector::E1)?;
    fixed.set(FacetId::Side(1), Gf2Vector::E2)?;
    fixed.set(FacetId::Side(2), Gf2Vector::E3)?;
    if let Some(bottom) = bottom_filter {
        if bottom.dim() != 3 || !ADMISSIBLE_BOTTOM_COLORS.contains(&bottom.bits()) {
            return Err(Error::InvalidBottomFilter(bottom));
        }
        fixed.set(FacetId::Bottom, bottom)?;
    }
    count_extensions(&complex, &fixed)
}

/// Number of colorings with equal top and bottom colors, by enumeration
/// over the seven possible shared colors.
pub fn count_same_top_bottom(m: u32, budget: &Budget) -> Result<BigUint> {
    check_enumeration_budget(m, budget)?;
    let complex = PrismComplex::new(m)?;
    let mut total = BigUint::from(0u32);
    for color in 1..=COLOR_COUNT {
        let shared = Gf2Vector::color(color)?;
        let mut fixed = PartialAssignment::new();
        fixed.set(FacetId::Top, shared)?;
        fixed.set(FacetId::Bottom, shared)?;
        total += count_extensions(&complex, &fixed)?;
    }
    Ok(total)
}

/// Number of colorings fixed by the automorphism `g`, i.e. colorings with
/// `coloring = coloring ∘ g`.
///
/// A coloring is fixed by `g` exactly when it is constant on every facet
/// orbit of `g`, so the search assigns one color per orbit (orbits ordered
/// by their smallest facet position) and validates all original vertex
/// triples. No GL normalization shortcut applies here: `g` need not
/// preserve any pinned facet choice.
pub fn count_fixed_colorings(complex: &PrismComplex, g: &FacetPermutation) -> Result<BigUint> {
    if !g.is_automorphism_of(complex) {
        return Err(Error::NotAnAutomorphism);
    }
    let orbits = g.position_cycles();
    let n = complex.facet_count();
    let mut orbit_rank = vec![0usize; n];
    for (rank, orbit) in orbits.iter().enumerate() {
        for &position in orbit {
            orbit_rank[position] = rank;
        }
    }
    // Triples grouped by the orbit whose assignment completes them.
    let mut completing = vec![Vec::new(); orbits.len()];
    for &triple in complex.position_triples() {
        let last = triple
            .iter()
            .map(|&p| orbit_rank[p])
            .max()
            .expect("triple is nonempty");
        completing[last].push(triple);
    }

    fn recurse(
        orbits: &[Vec<usize>],
        completing: &[Vec<[usize; 3]>],
        buffer: &mut [u8],
        rank: usize,
    ) -> u128 {
        if rank == orbits.len() {
            return 1;
        }
        let mut total = 0;
        for color in 1..=COLOR_COUNT {
            for &position in &orbits[rank] {
                buffer[position] = color;
            }
            let ok = completing[rank]
                .iter()
                .all(|&[a, b, c]| gf2::triple_independent(buffer[a], buffer[b], buffer[c]));
            if ok {
                total += recurse(orbits, completing, buffer, rank + 1);
            }
        }
        total
    }

    let mut buffer = vec![0u8; n];
    Ok(BigUint::from(recurse(&orbits, &completing, &mut buffer, 0)))
}
