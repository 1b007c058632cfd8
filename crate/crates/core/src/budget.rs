//! Resource budgets for the brute-force code paths.

/// Caps on the exhaustive searches.
///
/// The enumeration cap bounds `m` for full coloring enumeration (the search
/// visits on the order of `4^m` states). The orbit cap bounds `m` for
/// operations that materialize the entire coloring set in memory. The facet
/// cap bounds the factorial search for face-poset automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `m` accepted by full-enumeration counters (default 12).
    pub max_enumeration_m: u32,
    /// Largest `m` accepted by orbit materialization (default 8).
    pub max_orbit_m: u32,
    /// Largest facet count accepted by the automorphism search (default 10).
    pub max_search_facets: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumeration_m: 12,
            max_orbit_m: 8,
            max_search_facets: 10,
        }
    }
}

impl Budget {
    /// A budget that never refuses. Exhaustive searches then run however
    /// long they take; use with care.
    pub fn unlimited() -> Self {
        Budget {
            max_enumeration_m: u32::MAX,
            max_orbit_m: u32::MAX,
            max_search_facets: u32::MAX,
        }
    }
}
