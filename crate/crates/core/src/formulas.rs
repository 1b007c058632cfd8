//! The closed-form computation path: recurrences, Euler's totient, and the
//! exact count of coloring classes.
//!
//! Three integer sequences drive the counts. With the top, first and second
//! side facets pinned to e1, e2, e3, the remaining colorings split by the
//! bottom facet's color, and each of the three possible cases satisfies a
//! linear recurrence:
//!
//! - `A` (bottom = e1): a(j) = 2a(j-1) + 8a(j-2), a(1) = 1, a(2) = 2;
//! - `B` (bottom = e1+e2, and by the e2/e3 swap also e1+e3):
//!   b(j) = b(j-1) + 4b(j-2), b(1) = b(2) = 1;
//! - `C` (bottom = e1+e2+e3): c(j) = 2c(j-1) + 4c(j-2) - 6c(j-3) - 3c(j-4)
//!   + 4c(j-5), with c(1) = c(2) = 1, c(3) = 3, c(4) = 7, c(5) = 17.
//!
//! The prism with m sides then has `168 * [a(m-1) + 2b(m-1) + c(m-1)]`
//! colorings in total, and the orbit count of colorings under the face-poset
//! automorphism group is an exact divisor-sum expression on top of these.
//! Everything here is arbitrary-precision integer arithmetic; the final
//! division in the class count must be exact and failure to divide is
//! reported as an internal-consistency error, never rounded.

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::symmetry::Word;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Names of the three coloring-count recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqName {
    A,
    B,
    C,
}

/// Memo tables for the recurrences, for callers that need many values.
/// The free functions below build a fresh cache per call and stay pure.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    a: Vec<BigUint>,
    b: Vec<BigUint>,
    c: Vec<BigUint>,
    /// rho1 at even arguments 0, 2, 4, ...
    rho1_even: Vec<BigUint>,
}

impl Default for SequenceCache {
    fn default() -> Self {
        Self::new()
    }
}

fn biguints(values: &[u32]) -> Vec<BigUint> {
    values.iter().map(|&v| BigUint::from(v)).collect()
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            a: biguints(&[1, 2]),
            b: biguints(&[1, 1]),
            c: biguints(&[1, 1, 3, 7, 17]),
            rho1_even: biguints(&[5, 12]),
        }
    }

    /// a(j) for j >= 1.
    pub fn a(&mut self, j: u32) -> Result<BigUint> {
        require_positive_index(j)?;
        let idx = (j - 1) as usize;
        while self.a.len() <= idx {
            let k = self.a.len();
            let next = 2u32 * &self.a[k - 1] + 8u32 * &self.a[k - 2];
            self.a.push(next);
        }
        Ok(self.a[idx].clone())
    }

    /// b(j) for j >= 1.
    pub fn b(&mut self, j: u32) -> Result<BigUint> {
        require_positive_index(j)?;
        let idx = (j - 1) as usize;
        while self.b.len() <= idx {
            let k = self.b.len();
            let next = &self.b[k - 1] + 4u32 * &self.b[k - 2];
            self.b.push(next);
        }
        Ok(self.b[idx].clone())
    }

    /// c(j) for j >= 1. The five-term recurrence applies from j = 6; the
    /// base cases cover j = 1..=5.
    pub fn c(&mut self, j: u32) -> Result<BigUint> {
        require_positive_index(j)?;
        let idx = (j - 1) as usize;
        while self.c.len() <= idx {
            let k = self.c.len();
            let signed = 2 * BigInt::from(self.c[k - 1].clone())
                + 4 * BigInt::from(self.c[k - 2].clone())
                - 6 * BigInt::from(self.c[k - 3].clone())
                - 3 * BigInt::from(self.c[k - 4].clone())
                + 4 * BigInt::from(self.c[k - 5].clone());
            self.c.push(nonnegative(signed, "five-term recurrence for c")?);
        }
        Ok(self.c[idx].clone())
    }

    /// rho1(m): 0 for odd m, 5 at m = 0, 12 at m = 2, and
    /// rho1(m-2) + 4*rho1(m-4) for larger even m.
    pub fn rho1(&mut self, m: u32) -> BigUint {
        if m % 2 == 1 {
            return BigUint::zero();
        }
        let idx = (m / 2) as usize;
        while self.rho1_even.len() <= idx {
            let k = self.rho1_even.len();
            let next = &self.rho1_even[k - 1] + 4u32 * &self.rho1_even[k - 2];
            self.rho1_even.push(next);
        }
        self.rho1_even[idx].clone()
    }
}

fn require_positive_index(j: u32) -> Result<()> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "sequence index must be at least 1".into(),
        ));
    }
    Ok(())
}

fn nonnegative(value: BigInt, context: &str) -> Result<BigUint> {
    if value.is_negative() {
        return Err(Error::InternalConsistency(format!(
            "{context} produced a negative value {value}"
        )));
    }
    Ok(value.magnitude().clone())
}

/// Value of the named recurrence at index j >= 1.
pub fn seq(name: SeqName, j: u32) -> Result<BigUint> {
    let mut cache = SequenceCache::new();
    match name {
        SeqName::A => cache.a(j),
        SeqName::B => cache.b(j),
        SeqName::C => cache.c(j),
    }
}

/// Closed form of the A recurrence: `(4^j - (-1)^j 2^j) / 6`, computed with
/// exact integer exponentiation; the divisibility by 6 is checked before
/// dividing.
pub fn seq_a_closed(j: u32) -> Result<BigUint> {
    require_positive_index(j)?;
    let four = BigUint::from(4u32).pow(j);
    let two = BigUint::from(2u32).pow(j);
    let numerator = if j.is_multiple_of(2) { four - two } else { four + two };
    let (quotient, remainder) = numerator.div_rem(&BigUint::from(6u32));
    if !remainder.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "closed form for a({j}) is not divisible by 6"
        )));
    }
    Ok(quotient)
}

/// Alternate four-term recurrence for C:
/// `c(j) = 2c(j-1) + 3c(j-2) - 4c(j-3) + (-1)^j * 2`, valid from j = 4 on
/// the base cases c(1..=3).
pub fn seq_c_alt(j: u32) -> Result<BigUint> {
    if j < 4 {
        return Err(Error::InvalidArgument(format!(
            "the alternate recurrence for c needs j >= 4, got j = {j}"
        )));
    }
    let mut window: [BigInt; 3] = [BigInt::from(1), BigInt::from(1), BigInt::from(3)];
    let mut value = BigInt::zero();
    for k in 4..=j {
        let parity = if k % 2 == 0 { 2 } else { -2 };
        value = 2 * &window[2] + 3 * &window[1] - 4 * &window[0] + parity;
        window = [window[1].clone(), window[2].clone(), value.clone()];
    }
    nonnegative(value, "alternate recurrence for c")
}

/// Euler's totient, by trial-division factorization and the product
/// formula over prime powers.
pub fn euler_phi(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("totient is defined for n >= 1".into()));
    }
    let mut remaining = n;
    let mut phi: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= remaining {
        if remaining.is_multiple_of(p) {
            let mut power = 1;
            while remaining.is_multiple_of(p) {
                remaining /= p;
                power *= p;
            }
            phi *= power - power / p;
        }
        p += 1;
    }
    if remaining > 1 {
        phi *= remaining - 1;
    }
    Ok(BigUint::from(phi))
}

/// rho1(m), via the cached recurrence.
pub fn rho1(m: u32) -> BigUint {
    SequenceCache::new().rho1(m)
}

/// rho2(m): 2^m for even m, 0 for odd m.
pub fn rho2(m: u32) -> BigUint {
    if m.is_multiple_of(2) {
        BigUint::from(2u32).pow(m)
    } else {
        BigUint::zero()
    }
}

fn require_prism_size(m: u32, minimum: u32) -> Result<()> {
    if m < minimum {
        return Err(Error::InvalidArgument(format!(
            "formula is defined for m >= {minimum}, got m = {m}"
        )));
    }
    Ok(())
}

/// Total number of colorings of the m-sided prism:
/// `168 * [a(m-1) + 2b(m-1) + c(m-1)]`, for m >= 2.
///
/// m = 2 is the formal digon prism; the divisor sum in the class count
/// consumes it for every even m, and exhaustive enumeration over its two
/// distinct vertex triples confirms the value 672.
pub fn lambda_count_formula(m: u32) -> Result<BigUint> {
    require_prism_size(m, 2)?;
    let mut cache = SequenceCache::new();
    let j = m - 1;
    let sum = cache.a(j)? + 2u32 * cache.b(j)? + cache.c(j)?;
    Ok(168u32 * sum)
}

/// Formula-path mirror of the normalized brute-force count: with s1, a1, a2
/// pinned to e1, e2, e3, the count of extensions equals a(m-1), b(m-1),
/// b(m-1) or c(m-1) depending on the bottom color, and their sum when no
/// bottom filter is given.
pub fn normalized_count_formula(m: u32, bottom_filter: Option<Gf2Vector>) -> Result<BigUint> {
    require_prism_size(m, 2)?;
    let mut cache = SequenceCache::new();
    let j = m - 1;
    match bottom_filter {
        None => Ok(cache.a(j)? + 2u32 * cache.b(j)? + cache.c(j)?),
        Some(v) if v.dim() == 3 && v.bits() == 0b001 => cache.a(j),
        Some(v) if v.dim() == 3 && (v.bits() == 0b011 || v.bits() == 0b101) => cache.b(j),
        Some(v) if v.dim() == 3 && v.bits() == 0b111 => cache.c(j),
        Some(v) => Err(Error::InvalidBottomFilter(v)),
    }
}

/// Number of colorings whose top and bottom facets share a color:
/// `168 * a(m-1)`, for m >= 2.
pub fn nu_formula(m: u32) -> Result<BigUint> {
    require_prism_size(m, 2)?;
    Ok(168u32 * seq(SeqName::A, m - 1)?)
}

fn divisors(m: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number of equivalence classes of colorings of the m-sided prism under
/// the face-poset automorphism group, for m >= 3.
///
/// For m != 4 this is the exact average
/// `(1/4m) * { sum over divisors k > 1 of m of phi(m/k) * [lambda(k) +
/// nu(k)] + 21m rho1(m) + 42m rho2(m) }`; the divisor k ranges over all
/// divisors of m greater than 1, including 2 for even m and m itself. The
/// division must be exact. For m = 4 the prism is the cube, whose 32 extra
/// automorphisms fix no coloring, and the count is 259.
pub fn class_count_formula(m: u32) -> Result<BigUint> {
    require_prism_size(m, 3)?;
    if m == 4 {
        return Ok(BigUint::from(259u32));
    }
    let mut sum = BigUint::zero();
    for k in divisors(m) {
        if k <= 1 {
            continue;
        }
        let phi = euler_phi((m / k) as u64)?;
        sum += phi * (lambda_count_formula(k)? + nu_formula(k)?);
    }
    sum += 21u32 * m * rho1(m);
    sum += 42u32 * m * rho2(m);
    let (quotient, remainder) = sum.div_rem(&BigUint::from(4 * m));
    if !remainder.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "class-count sum for m = {m} is not divisible by 4m"
        )));
    }
    Ok(quotient)
}

/// Number of colorings fixed by the automorphism with the given normal
/// form, straight from the per-case analysis:
///
/// - rotations x^u: `lambda(gcd(u, m))` when gcd(u, m) > 1 (with u = 0
///   giving the identity and the full count), otherwise 0;
/// - rotations combined with the top/bottom swap, x^u z: `nu(gcd(u, m))`
///   when gcd(u, m) > 1, otherwise 0;
/// - reflections with m odd, or with even u and m even: 0;
/// - x^u y with u odd and m even: `42 * [rho1(m) + rho2(m)]`;
/// - x^u y z with u odd and m even: `42 * rho2(m)`.
///
/// `None` stands for a cube automorphism without a normal form; those move
/// a polygon facet to the ring and fix no coloring.
pub fn fixed_count_formula(m: u32, word: Option<&Word>) -> Result<BigUint> {
    require_prism_size(m, 3)?;
    let Some(word) = word else {
        return Ok(BigUint::zero());
    };
    let u = word.ring_rotation % m;
    if !word.ring_reflection {
        let k = u.gcd(&m);
        if k <= 1 {
            return Ok(BigUint::zero());
        }
        return if word.level_swap {
            nu_formula(k)
        } else {
            lambda_count_formula(k)
        };
    }
    if m % 2 == 1 || u.is_multiple_of(2) {
        return Ok(BigUint::zero());
    }
    if word.level_swap {
        Ok(42u32 * rho2(m))
    } else {
        Ok(42u32 * (rho1(m) + rho2(m)))
    }
}

/// Convenience accessor: the class count as u64 where it fits (it always
/// does for desk-scale m); handy for reports.
pub fn class_count_u64(m: u32) -> Result<Option<u64>> {
    Ok(class_count_formula(m)?.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn recurrence_prefixes() {
        let expected_a = [1u64, 2, 12, 40, 176, 672, 2752, 10880, 43776];
        let expected_b = [1u64, 1, 5, 9, 29, 65, 181, 441, 1165];
        let expected_c = [1u64, 1, 3, 7, 17, 45, 111, 291, 733];
        for (j, &v) in expected_a.iter().enumerate() {
            assert_eq!(seq(SeqName::A, j as u32 + 1).unwrap(), big(v), "a({})", j + 1);
        }
        for (j, &v) in expected_b.iter().enumerate() {
            assert_eq!(seq(SeqName::B, j as u32 + 1).unwrap(), big(v), "b({})", j + 1);
        }
        for (j, &v) in expected_c.iter().enumerate() {
            assert_eq!(seq(SeqName::C, j as u32 + 1).unwrap(), big(v), "c({})", j + 1);
        }
    }

    #[test]
    fn zero_index_is_rejected() {
        for name in [SeqName::A, SeqName::B, SeqName::C] {
            assert!(seq(name, 0).is_err());
        }
        assert!(seq_a_closed(0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(seq_a_closed(1).unwrap(), big(1));
        assert_eq!(seq_a_closed(2).unwrap(), big(2));
        assert_eq!(seq_a_closed(9).unwrap(), big(43776));
    }

    #[test]
    fn alternate_c_examples() {
        assert_eq!(seq_c_alt(4).unwrap(), big(7));
        assert_eq!(seq_c_alt(5).unwrap(), big(17));
        assert_eq!(seq_c_alt(9).unwrap(), big(733));
        assert!(seq_c_alt(3).is_err());
    }

    #[test]
    fn sequences_grow_monotonically() {
        let mut cache = SequenceCache::new();
        for j in 2..=20 {
            assert!(cache.a(j + 1).unwrap() > cache.a(j).unwrap());
            assert!(cache.b(j + 1).unwrap() > cache.b(j).unwrap());
            assert!(cache.c(j).unwrap() > BigUint::zero());
        }
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1).unwrap(), big(1));
        assert_eq!(euler_phi(6).unwrap(), big(2));
        assert_eq!(euler_phi(12).unwrap(), big(4));
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn totient_is_multiplicative_on_coprime_arguments() {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        for p in 1..=100u64 {
            for q in 1..=100u64 {
                if gcd(p, q) == 1 {
                    assert_eq!(
                        euler_phi(p * q).unwrap(),
                        euler_phi(p).unwrap() * euler_phi(q).unwrap(),
                        "p={p} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho1(0), big(5));
        assert_eq!(rho1(2), big(12));
        assert_eq!(rho1(4), big(32));
        assert_eq!(rho1(6), big(80));
        assert_eq!(rho1(8), big(208));
        assert_eq!(rho1(10), big(528));
        assert_eq!(rho1(5), big(0));
        assert_eq!(rho2(6), big(64));
        assert_eq!(rho2(7), big(0));
        assert_eq!(rho2(0), big(1));
    }

    #[test]
    fn coloring_count_values() {
        assert_eq!(lambda_count_formula(2).unwrap(), big(672));
        assert_eq!(lambda_count_formula(3).unwrap(), big(840));
        assert_eq!(lambda_count_formula(4).unwrap(), big(4200));
        assert_eq!(lambda_count_formula(10).unwrap(), big(7868952));
        assert!(lambda_count_formula(1).is_err());
    }

    #[test]
    fn same_color_count_values() {
        assert_eq!(nu_formula(2).unwrap(), big(168));
        assert_eq!(nu_formula(3).unwrap(), big(336));
        assert_eq!(nu_formula(4).unwrap(), big(2016));
    }

    #[test]
    fn class_count_values() {
        assert_eq!(class_count_formula(4).unwrap(), big(259));
        assert_eq!(class_count_formula(5).unwrap(), big(882));
        assert_eq!(class_count_formula(9).unwrap(), big(107086));
        assert!(class_count_formula(2).is_err());
    }

    #[test]
    fn cube_class_count_agrees_with_the_displayed_average() {
        // (1/48) { phi(2)[lambda(2) + nu(2)] + [lambda(4) + nu(4)]
        //          + 84 rho1(4) + 168 rho2(4) } = 259
        let sum = euler_phi(2).unwrap()
            * (lambda_count_formula(2).unwrap() + nu_formula(2).unwrap())
            + (lambda_count_formula(4).unwrap() + nu_formula(4).unwrap())
            + 84u32 * rho1(4)
            + 168u32 * rho2(4);
        let (q, r) = sum.div_rem(&big(48));
        assert!(r.is_zero());
        assert_eq!(q, big(259));
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn normalized_formula_cases() {
        assert_eq!(normalized_count_formula(3, None).unwrap(), big(5));
        assert_eq!(
            normalized_count_formula(2, Some(Gf2Vector::E1)).unwrap(),
            big(1)
        );
        assert_eq!(
            normalized_count_formula(6, Some(Gf2Vector::color(7).unwrap())).unwrap(),
            big(17)
        );
        let bad = Gf2Vector::E2;
        assert_eq!(
            normalized_count_formula(5, Some(bad)),
            Err(Error::InvalidBottomFilter(bad))
        );
    }

    #[test]
    fn fixed_count_cases() {
        // Rotation with gcd 3 on the hexagonal prism.
        assert_eq!(
            fixed_count_formula(6, Some(&Word::new(3, false, false))).unwrap(),
            big(840)
        );
        // Full rotation cycle fixes nothing.
        assert_eq!(
            fixed_count_formula(5, Some(&Word::new(1, false, false))).unwrap(),
            big(0)
        );
        // Identity fixes everything.
        assert_eq!(
            fixed_count_formula(6, Some(&Word::identity())).unwrap(),
            lambda_count_formula(6).unwrap()
        );
        // Top/bottom swap counts same-color colorings.
        assert_eq!(
            fixed_count_formula(6, Some(&Word::new(0, false, true))).unwrap(),
            nu_formula(6).unwrap()
        );
        assert_eq!(
            fixed_count_formula(6, Some(&Word::new(2, false, true))).unwrap(),
            nu_formula(2).unwrap()
        );
        // Odd-rotation reflections on an even prism.
        assert_eq!(
            fixed_count_formula(6, Some(&Word::new(1, true, false))).unwrap(),
            big(6048)
        );
        assert_eq!(
            fixed_count_formula(6, Some(&Word::new(1, true, true))).unwrap(),
            big(2688)
        );
        // Dead reflections.
        assert_eq!(fixed_count_formula(5, Some(&Word::new(0, true, false))).unwrap(), big(0));
        assert_eq!(fixed_count_formula(6, Some(&Word::new(2, true, false))).unwrap(), big(0));
        // Cube automorphisms without a normal form.
        assert_eq!(fixed_count_formula(4, None).unwrap(), big(0));
    }
}
