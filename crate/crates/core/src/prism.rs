//! Combinatorial face data of the m-sided prism.
//!
//! The prism has a top facet `s1`, a bottom facet `s2`, and side facets
//! `a1..am` arranged in a cycle. Each vertex lies on exactly three facets:
//! one of the two polygon facets and two consecutive side facets. That
//! incidence data is all the rest of the crate needs: coloring validity and
//! face-poset automorphy are both statements about the vertex triples.
//!
//! The degenerate case m = 2 is admitted as a formal object. Its two top
//! (and two bottom) vertex records carry the same facet triple; validity
//! checks consume the triple set, where the multiplicity is irrelevant.

use crate::error::{Error, Result};
use std::fmt;

/// Identity of one facet of the prism.
///
/// The declaration order `Top < Bottom < Side(1) < Side(2) < ...` is the
/// canonical facet order used by enumeration and canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetId {
    Top,
    Bottom,
    /// Side facet with 1-based ring index.
    Side(u32),
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetId::Top => write!(f, "s1"),
            FacetId::Bottom => write!(f, "s2"),
            FacetId::Side(i) => write!(f, "a{i}"),
        }
    }
}

/// One vertex of the prism, kept as an indexed record so that m = 2 (where
/// triples coincide) stays representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexRecord {
    /// Ring position in 1..=m.
    pub ring_index: u32,
    /// 1 for the top polygon, 2 for the bottom one.
    pub level: u32,
    /// The three facets meeting at this vertex.
    pub facets: [FacetId; 3],
}

/// Face data of the m-sided prism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrismComplex {
    m: u32,
    facets: Vec<FacetId>,
    vertices: Vec<VertexRecord>,
    /// Facet positions of each vertex record, parallel to `vertices`.
    triples: Vec<[usize; 3]>,
}

impl PrismComplex {
    /// Builds the face data for the m-sided prism. Requires m >= 2.
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::PrismTooSmall(m));
        }
        let mut facets = vec![FacetId::Top, FacetId::Bottom];
        facets.extend((1..=m).map(FacetId::Side));

        let mut vertices = Vec::with_capacity(2 * m as usize);
        let mut triples = Vec::with_capacity(2 * m as usize);
        for level in 1..=2u32 {
            let polygon = if level == 1 { FacetId::Top } else { FacetId::Bottom };
            for i in 1..=m {
                let next = i % m + 1;
                vertices.push(VertexRecord {
                    ring_index: i,
                    level,
                    facets: [polygon, FacetId::Side(i), FacetId::Side(next)],
                });
                triples.push([
                    (level - 1) as usize,
                    (i + 1) as usize,
                    (next + 1) as usize,
                ]);
            }
        }
        Ok(PrismComplex {
            m,
            facets,
            vertices,
            triples,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of facets, m + 2.
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Facets in canonical order s1, s2, a1..am.
    pub fn facets(&self) -> &[FacetId] {
        &self.facets
    }

    /// The 2m vertex records.
    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    /// Position of a facet in the canonical order.
    pub fn position(&self, facet: FacetId) -> Result<usize> {
        match facet {
            FacetId::Top => Ok(0),
            FacetId::Bottom => Ok(1),
            FacetId::Side(i) if i >= 1 && i <= self.m => Ok((i + 1) as usize),
            FacetId::Side(_) => Err(Error::UnknownFacet { facet, m: self.m }),
        }
    }

    /// Facet at a canonical position. Panics if out of range.
    pub fn facet_at(&self, position: usize) -> FacetId {
        self.facets[position]
    }

    /// Vertex triples as facet positions, parallel to [`Self::vertices`].
    pub(crate) fn position_triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// The adjacency relation: two facets are adjacent iff they co-occur in
    /// some vertex triple.
    pub fn facet_adjacency(&self) -> FacetAdjacency {
        let n = self.facet_count();
        let mut matrix = vec![false; n * n];
        for triple in &self.triples {
            for (k, &a) in triple.iter().enumerate() {
                for &b in &triple[k + 1..] {
                    matrix[a * n + b] = true;
                    matrix[b * n + a] = true;
                }
            }
        }
        FacetAdjacency { m: self.m, size: n, matrix }
    }
}

/// Symmetric facet adjacency relation of a prism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetAdjacency {
    m: u32,
    size: usize,
    matrix: Vec<bool>,
}

impl FacetAdjacency {
    pub fn adjacent(&self, a: FacetId, b: FacetId) -> Result<bool> {
        let pa = position_for(self.m, a)?;
        let pb = position_for(self.m, b)?;
        Ok(self.matrix[pa * self.size + pb])
    }

    pub(crate) fn adjacent_positions(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.size + b]
    }

    /// Number of facets adjacent to the facet at the given position.
    pub(crate) fn degree(&self, position: usize) -> usize {
        (0..self.size)
            .filter(|&other| self.matrix[position * self.size + other])
            .count()
    }
}

fn position_for(m: u32, facet: FacetId) -> Result<usize> {
    match facet {
        FacetId::Top => Ok(0),
        FacetId::Bottom => Ok(1),
        FacetId::Side(i) if i >= 1 && i <= m => Ok((i + 1) as usize),
        FacetId::Side(_) => Err(Error::UnknownFacet { facet, m }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn facet_and_vertex_counts() {
        for (m, facets, vertices) in [(3, 5, 6), (4, 6, 8), (10, 12, 20)] {
            let p = PrismComplex::new(m).unwrap();
            assert_eq!(p.facet_count(), facets);
            assert_eq!(p.vertices().len(), vertices);
        }
    }

    #[test]
    fn too_small_is_rejected() {
        assert_eq!(PrismComplex::new(0), Err(Error::PrismTooSmall(0)));
        assert_eq!(PrismComplex::new(1), Err(Error::PrismTooSmall(1)));
    }

    #[test]
    fn digon_prism_has_coincident_triples() {
        let p = PrismComplex::new(2).unwrap();
        assert_eq!(p.facet_count(), 4);
        assert_eq!(p.vertices().len(), 4);
        let top: BTreeSet<_> = p
            .vertices()
            .iter()
            .filter(|v| v.level == 1)
            .map(|v| {
                let mut t = v.facets;
                t.sort();
                t
            })
            .collect();
        // Both top records carry {s1, a1, a2}.
        assert_eq!(top.len(), 1);
    }

    #[test]
    fn triples_are_distinct_for_m_at_least_3() {
        for m in 3..=8 {
            let p = PrismComplex::new(m).unwrap();
            let distinct: BTreeSet<_> = p
                .position_triples()
                .iter()
                .map(|t| {
                    let mut t = *t;
                    t.sort();
                    t
                })
                .collect();
            assert_eq!(distinct.len(), 2 * m as usize);
        }
    }

    #[test]
    fn incidence_counts() {
        for m in 3..=9u32 {
            let p = PrismComplex::new(m).unwrap();
            // 2m vertices with 3 incidences each.
            let total: usize = p.vertices().iter().map(|v| v.facets.len()).sum();
            assert_eq!(total, 6 * m as usize);
            for i in 1..=m {
                let side = FacetId::Side(i);
                let count = p.vertices().iter().filter(|v| v.facets.contains(&side)).count();
                assert_eq!(count, 4);
            }
            for polygon in [FacetId::Top, FacetId::Bottom] {
                let count = p
                    .vertices()
                    .iter()
                    .filter(|v| v.facets.contains(&polygon))
                    .count();
                assert_eq!(count, m as usize);
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let p3 = PrismComplex::new(3).unwrap().facet_adjacency();
        assert!(p3.adjacent(FacetId::Side(1), FacetId::Side(2)).unwrap());
        let p5 = PrismComplex::new(5).unwrap().facet_adjacency();
        assert!(!p5.adjacent(FacetId::Side(1), FacetId::Side(3)).unwrap());
        for m in [2, 3, 4, 7] {
            let adj = PrismComplex::new(m).unwrap().facet_adjacency();
            assert!(!adj.adjacent(FacetId::Top, FacetId::Bottom).unwrap());
            assert!(adj.adjacent(FacetId::Top, FacetId::Side(1)).unwrap());
        }
    }

    #[test]
    fn unknown_facet_is_rejected() {
        let p = PrismComplex::new(3).unwrap();
        assert!(matches!(
            p.position(FacetId::Side(4)),
            Err(Error::UnknownFacet { .. })
        ));
        assert!(matches!(
            p.facet_adjacency().adjacent(FacetId::Side(9), FacetId::Top),
            Err(Error::UnknownFacet { .. })
        ));
    }

    #[test]
    fn side_facets_form_a_single_cycle() {
        for m in 3..=9u32 {
            let adj = PrismComplex::new(m).unwrap().facet_adjacency();
            // Walk the ring starting at a1, never revisiting; it must come
            // back to a1 after exactly m steps.
            let neighbors = |i: u32| -> Vec<u32> {
                (1..=m)
                    .filter(|&j| j != i && adj.adjacent(FacetId::Side(i), FacetId::Side(j)).unwrap())
                    .collect()
            };
            for i in 1..=m {
                assert_eq!(neighbors(i).len(), 2, "m={m} i={i}");
            }
            let mut seen = vec![false; m as usize + 1];
            let mut prev = 1u32;
            let mut current = neighbors(1)[0];
            seen[1] = true;
            let mut steps = 1;
            while current != 1 {
                seen[current as usize] = true;
                let next = neighbors(current)
                    .into_iter()
                    .find(|&j| j != prev)
                    .expect("ring neighbor");
                prev = current;
                current = next;
                steps += 1;
            }
            assert_eq!(steps, m);
            assert!((1..=m).all(|i| seen[i as usize]));
        }
    }

    #[test]
    fn degrees_separate_polygons_from_sides_except_on_the_cube() {
        let p = PrismComplex::new(6).unwrap();
        let adj = p.facet_adjacency();
        assert_eq!(adj.degree(0), 6);
        assert_eq!(adj.degree(2), 4);
        let cube = PrismComplex::new(4).unwrap().facet_adjacency();
        for pos in 0..6 {
            assert_eq!(cube.degree(pos), 4);
        }
    }
}
