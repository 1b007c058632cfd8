//! Orbit counting and orbit representatives for the automorphism action on
//! colorings — the brute-force ground truth for the class counts.
//!
//! The orbit count is the exact average of per-element fixed-coloring
//! counts over the group. The average must be an integer; a remainder
//! signals a bug and surfaces as an internal-consistency error rather than
//! a rounded result. Orbit representatives are obtained by materializing
//! all colorings and mapping each to the lexicographic minimum of its
//! orbit, which is canonical because orbits are disjoint.

use crate::budget::Budget;
use crate::coloring::{self, Coloring, PartialAssignment};
use crate::error::{Error, Result};
use crate::prism::PrismComplex;
use crate::symmetry::{self, FacetPermutation};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Result bundle of a Burnside run over one prism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub m: u32,
    pub group_order: u64,
    /// Fixed-coloring count per group element, keyed by the normal form
    /// x^u y^v z^w for m != 4 and by the mapping digest for m = 4.
    pub fixed_counts: BTreeMap<String, BigUint>,
    pub orbit_count: BigUint,
    /// Lexicographically minimal coloring of each orbit, sorted; only
    /// populated on request.
    pub representatives: Option<Vec<Coloring>>,
}

/// Report key for a group element.
fn element_key(m: u32, g: &FacetPermutation) -> String {
    if m == 4 {
        g.digest()
    } else {
        g.as_word()
            .map(|w| w.to_string())
            .unwrap_or_else(|| g.digest())
    }
}

/// Fixed-coloring counts for every element of `group`, in group order.
pub fn fixed_count_sweep_sequential(
    complex: &PrismComplex,
    group: &[FacetPermutation],
) -> Result<Vec<BigUint>> {
    group
        .iter()
        .map(|g| coloring::count_fixed_colorings(complex, g))
        .collect()
}

/// Parallel fixed-coloring sweep; per-element counts are independent and
/// the collected order matches the group order.
#[cfg(feature = "parallel")]
pub fn fixed_count_sweep(
    complex: &PrismComplex,
    group: &[FacetPermutation],
) -> Result<Vec<BigUint>> {
    group
        .par_iter()
        .map(|g| coloring::count_fixed_colorings(complex, g))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn fixed_count_sweep(
    complex: &PrismComplex,
    group: &[FacetPermutation],
) -> Result<Vec<BigUint>> {
    fixed_count_sweep_sequential(complex, group)
}

/// Counts coloring orbits by averaging fixed-coloring counts over the full
/// automorphism group.
pub fn orbit_count_bruteforce(m: u32, budget: &Budget) -> Result<OrbitSummary> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "orbit counting needs m >= 3, got m = {m}"
        )));
    }
    if m > budget.max_enumeration_m {
        return Err(Error::ResourceLimit {
            what: "Burnside fixed-point counting for m",
            requested: m,
            limit: budget.max_enumeration_m,
        });
    }
    let complex = PrismComplex::new(m)?;
    let group = symmetry::full_group(m)?;
    let counts = fixed_count_sweep(&complex, &group)?;

    let mut fixed_counts = BTreeMap::new();
    let mut sum = BigUint::zero();
    for (g, count) in group.iter().zip(&counts) {
        sum += count;
        if fixed_counts.insert(element_key(m, g), count.clone()).is_some() {
            return Err(Error::InternalConsistency(format!(
                "duplicate group element key for m = {m}"
            )));
        }
    }

    let group_order = group.len() as u64;
    let (orbit_count, remainder) = sum.div_rem(&BigUint::from(group_order));
    if !remainder.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "Burnside average for m = {m} is not an integer: {sum} over {group_order}"
        )));
    }
    Ok(OrbitSummary {
        m,
        group_order,
        fixed_counts,
        orbit_count,
        representatives: None,
    })
}

fn canonical_form(
    colors: &[u8],
    group: &[FacetPermutation],
    scratch: &mut [u8],
) -> Vec<u8> {
    let mut best = colors.to_vec();
    for g in group {
        g.permute_into(colors, scratch);
        if scratch[..] < best[..] {
            best.copy_from_slice(scratch);
        }
    }
    best
}

/// Partitions all colorings of the m-sided prism into orbits under the full
/// automorphism group acting by `coloring ∘ g`. Returns the
/// lexicographically minimal coloring of each orbit together with the orbit
/// size, sorted by representative.
pub fn orbit_partition(m: u32, budget: &Budget) -> Result<Vec<(Coloring, u64)>> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "orbit materialization needs m >= 3, got m = {m}"
        )));
    }
    if m > budget.max_orbit_m {
        return Err(Error::ResourceLimit {
            what: "orbit materialization for m",
            requested: m,
            limit: budget.max_orbit_m,
        });
    }
    let complex = PrismComplex::new(m)?;
    let group = symmetry::full_group(m)?;
    let all = coloring::collect_colorings(&complex, &PartialAssignment::new())?;
    let n = complex.facet_count();

    #[cfg(feature = "parallel")]
    let canonical: Vec<Vec<u8>> = all
        .par_iter()
        .map_init(
            || vec![0u8; n],
            |scratch, c| canonical_form(c.color_indices(), &group, scratch),
        )
        .collect();
    #[cfg(not(feature = "parallel"))]
    let canonical: Vec<Vec<u8>> = {
        let mut scratch = vec![0u8; n];
        all.iter()
            .map(|c| canonical_form(c.color_indices(), &group, &mut scratch))
            .collect()
    };

    let mut tally: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for form in canonical {
        *tally.entry(form).or_insert(0) += 1;
    }
    Ok(tally
        .into_iter()
        .map(|(colors, size)| (Coloring::from_color_indices(colors).expect("canonical forms are colorings"), size))
        .collect())
}

/// The lexicographically minimal coloring of each orbit, sorted.
pub fn orbit_representatives(m: u32, budget: &Budget) -> Result<Vec<Coloring>> {
    Ok(orbit_partition(m, budget)?
        .into_iter()
        .map(|(representative, _)| representative)
        .collect())
}

/// Burnside summary with the representative list attached. The two routes
/// must agree on the orbit count; a mismatch is an internal-consistency
/// failure.
pub fn orbit_summary_with_representatives(m: u32, budget: &Budget) -> Result<OrbitSummary> {
    let mut summary = orbit_count_bruteforce(m, budget)?;
    let representatives = orbit_representatives(m, budget)?;
    if BigUint::from(representatives.len() as u64) != summary.orbit_count {
        return Err(Error::InternalConsistency(format!(
            "orbit partition found {} representatives but the Burnside average is {}",
            representatives.len(),
            summary.orbit_count
        )));
    }
    summary.representatives = Some(representatives);
    Ok(summary)
}
