//! Brute-force ground truth, independent of the decomposition recursion.
//!
//! [`enumerate_sk`] lists *every* rational in `[0, 1]` with denominator at
//! most `q_max` whose canonical expansion uses only partial quotients
//! `>= k` (zero included). Sums of pairs from that list are searched
//! directly — no continuants, no gap formulas — which makes the results
//! usable as a cross-check against both the gap machinery and the
//! decomposition algorithm at desk scale.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::decompose::{decompose_checked, Termination};
use crate::gaps::GapInterval;
use crate::rational::{Int, Rational};
use crate::source::NumberSource;
use crate::{Error, Result};

/// All elements of `S(k)` with denominator `<= q_max`, sorted ascending.
#[derive(Debug, Clone)]
pub struct BoundedSkEnumeration {
    /// Digit floor.
    pub k: u64,
    /// Denominator bound.
    pub q_max: u64,
    /// The elements, ascending and duplicate-free.
    pub elements: Vec<Rational>,
}

/// Enumerates `S(k)` up to denominator `q_max` by depth-first search over
/// digit strings with digits `>= k`, pruning on the denominator
/// recurrence `q_next = a * q + q_prev`. Every canonical string reached
/// within the bound is recorded, so the result is exact and complete.
pub fn enumerate_sk(k: u64, q_max: u64) -> Result<BoundedSkEnumeration> {
    if k < 1 {
        return Err(Error::InvalidParams("digit floor k must be >= 1".into()));
    }
    if q_max < 1 {
        return Err(Error::InvalidParams("denominator bound must be >= 1".into()));
    }
    let mut elements = vec![Rational::zero()];
    if k == 1 {
        // The one canonical expansion ending in a 1: the value 1 itself.
        elements.push(Rational::from(Int::from(1)));
    }
    dfs(k, q_max, (1, 0), (0, 1), &mut elements);
    elements.sort_unstable();
    Ok(BoundedSkEnumeration { k, q_max, elements })
}

/// Extends the digit string whose last two convergents are `prev` and
/// `cur` (as `(p, q)` pairs) by every digit that keeps the denominator
/// within bound; records the canonical ones (final digit `>= 2`).
fn dfs(k: u64, q_max: u64, prev: (u64, u64), cur: (u64, u64), out: &mut Vec<Rational>) {
    let mut a = k;
    loop {
        let q_next = a as u128 * cur.1 as u128 + prev.1 as u128;
        if q_next > q_max as u128 {
            return;
        }
        let q_next = q_next as u64;
        let p_next = a * cur.0 + prev.0;
        if a >= 2 {
            out.push(Rational::new(Int::from(p_next), Int::from(q_next)));
        }
        dfs(k, q_max, cur, (p_next, q_next), out);
        a += 1;
    }
}

impl BoundedSkEnumeration {
    /// Binary-search membership test.
    pub fn contains(&self, x: &Rational) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Searches for a pair `(u, v)` of elements with `u + v = target`,
    /// scanning the sorted list from both ends. `None` means only "no
    /// witness at this denominator bound" — never non-membership.
    pub fn sumset_contains(&self, target: &Rational) -> Option<(Rational, Rational)> {
        if self.elements.is_empty() {
            return None;
        }
        let mut i = 0;
        let mut j = self.elements.len() - 1;
        loop {
            let sum = &self.elements[i] + &self.elements[j];
            match sum.cmp(target) {
                Ordering::Equal => {
                    return Some((self.elements[i].clone(), self.elements[j].clone()))
                }
                Ordering::Less => i += 1,
                Ordering::Greater => {
                    if j == 0 {
                        return None;
                    }
                    j -= 1;
                }
            }
            if i > j {
                return None;
            }
        }
    }

    /// Checks that no pair of elements sums strictly inside the gap.
    /// Returns the emptiness verdict together with a counterexample pair
    /// when there is one (which would falsify the gap construction).
    ///
    /// # Panics
    ///
    /// Panics when the gap belongs to a different digit floor than the
    /// enumeration.
    pub fn gap_interior_empty(&self, gap: &GapInterval) -> (bool, Option<(Rational, Rational)>) {
        assert_eq!(
            self.k, gap.k,
            "gap digit floor must match the enumeration"
        );
        for (idx, u) in self.elements.iter().enumerate() {
            // With v >= u the sum is at least 2u; past hi/2 nothing fits.
            let doubled = u + u;
            if doubled >= gap.hi {
                break;
            }
            // v must satisfy v > lo - u, v < hi - u, v >= u.
            let min_v = &gap.lo - u;
            let start = self.elements[idx..]
                .partition_point(|v| v <= &min_v)
                + idx;
            if start < self.elements.len() {
                let v = &self.elements[start];
                if u + v < gap.hi {
                    return (false, Some((u.clone(), v.clone())));
                }
            }
        }
        (true, None)
    }
}

/// Agreement record from [`cross_check_decomposition`]: an `Ok` report
/// certifies that both output fractions of the checked decomposition were
/// found independently in the enumeration and sum to `x`.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    /// The decomposed value.
    pub x: Rational,
    /// Digit floor used for both the decomposition and the enumeration.
    pub k: u64,
    /// Denominator bound of the enumeration.
    pub q_max: u64,
    /// Value of the first expansion.
    pub first: Rational,
    /// Value of the second expansion.
    pub second: Rational,
    /// Steps the decomposition took.
    pub steps: usize,
}

/// Decomposes `x` with digit floor `k`, then independently confirms both
/// output fractions against `enumerate_sk(k, q_max)`.
///
/// Requires the decomposition to terminate exactly with both denominators
/// within `q_max` (a parameter error otherwise); a genuine disagreement —
/// an output fraction missing from the enumeration or a wrong sum — is an
/// invariant violation.
pub fn cross_check_decomposition(x: &Rational, k: u64, q_max: u64) -> Result<CrossCheckReport> {
    let src = NumberSource::rational(x.clone())?;
    let result = decompose_checked(&src, k, 64)?;
    if result.termination != Termination::ExactFinite {
        return Err(Error::InvalidParams(format!(
            "decomposition of {x} did not terminate exactly within the step limit"
        )));
    }
    let first = result.p_over_q;
    let second = result.s_over_t;
    let bound = Int::from(q_max);
    if first.denom() > &bound || second.denom() > &bound {
        return Err(Error::InvalidParams(format!(
            "decomposition denominators {} and {} exceed the enumeration bound {q_max}",
            first.denom(),
            second.denom()
        )));
    }
    let enumeration = enumerate_sk(k, q_max)?;
    for value in [&first, &second] {
        if !enumeration.contains(value) {
            return Err(Error::InvariantViolation {
                step: result.steps,
                what: format!("decomposition output {value} is missing from the S({k}) enumeration"),
            });
        }
    }
    if &first + &second != *x {
        return Err(Error::InvariantViolation {
            step: result.steps,
            what: format!("{first} + {second} != {x}"),
        });
    }
    Ok(CrossCheckReport {
        x: x.clone(),
        k,
        q_max,
        first,
        second,
        steps: result.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::ContinuedFraction;
    use crate::gaps::gap;
    use crate::rational::ratio;

    #[test]
    fn enumeration_small_goldens() {
        let e = enumerate_sk(3, 10).unwrap();
        let expected: Vec<Rational> = [
            (0, 1),
            (1, 10),
            (1, 9),
            (1, 8),
            (1, 7),
            (1, 6),
            (1, 5),
            (1, 4),
            (3, 10),
            (1, 3),
        ]
        .iter()
        .map(|&(p, q)| ratio(p, q))
        .collect();
        assert_eq!(e.elements, expected);

        let e = enumerate_sk(1, 3).unwrap();
        let expected: Vec<Rational> = [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]
            .iter()
            .map(|&(p, q)| ratio(p, q))
            .collect();
        assert_eq!(e.elements, expected);

        let e = enumerate_sk(10, 9).unwrap();
        assert_eq!(e.elements, vec![ratio(0, 1)]);
    }

    #[test]
    fn enumeration_matches_direct_digit_filter() {
        // Independent method: walk every reduced fraction and inspect its
        // canonical expansion digit by digit.
        for k in 2..=4u64 {
            let e = enumerate_sk(k, 40).unwrap();
            let mut direct = vec![ratio(0, 1)];
            for q in 1..=40i64 {
                for p in 1..=q {
                    let x = ratio(p, q);
                    if x.denom() != &Int::from(q) {
                        continue; // not reduced
                    }
                    let cf = ContinuedFraction::from_rational(&x).unwrap();
                    if cf.digits().iter().all(|d| d >= &Int::from(k)) && !cf.digits().is_empty() {
                        direct.push(x);
                    }
                }
            }
            direct.sort_unstable();
            assert_eq!(e.elements, direct, "k={k}");
        }
    }

    #[test]
    fn enumeration_nesting_and_max() {
        for k in 1..=6u64 {
            let outer = enumerate_sk(k, 200).unwrap();
            let inner = enumerate_sk(k + 1, 200).unwrap();
            for x in &inner.elements {
                assert!(outer.contains(x), "k={k}: {x} missing from outer set");
            }
            assert_eq!(
                outer.elements.last().unwrap(),
                &Rational::new(Int::from(1), Int::from(k.max(1))),
                "largest element is 1/k"
            );
        }
    }

    #[test]
    fn sum_witnesses() {
        let e = enumerate_sk(3, 20).unwrap();
        let (u, v) = e.sumset_contains(&ratio(7, 12)).unwrap();
        assert_eq!(&u + &v, ratio(7, 12));
        assert!(e.contains(&u) && e.contains(&v));
        assert_eq!((u, v), (ratio(1, 4), ratio(1, 3)));

        let (u, v) = e.sumset_contains(&ratio(3, 5)).unwrap();
        assert_eq!((u, v), (ratio(3, 10), ratio(3, 10)));

        let e = enumerate_sk(3, 100).unwrap();
        assert!(e.sumset_contains(&ratio(59, 100)).is_none());
    }

    #[test]
    fn gap_interiors_have_no_witnesses() {
        let e = enumerate_sk(3, 100).unwrap();
        for n in 1..=2 {
            let g = gap(3, n).unwrap();
            let (empty, cex) = e.gap_interior_empty(&g);
            assert!(empty, "G_(3,{n}) interior hit: {cex:?}");
        }
        // Sanity check of the scan itself: a fake interval around a known
        // sum must produce a counterexample.
        let fake = GapInterval {
            k: 3,
            n: 1,
            lo: ratio(7, 12) - ratio(1, 1000),
            hi: ratio(7, 12) + ratio(1, 1000),
        };
        let (empty, cex) = e.gap_interior_empty(&fake);
        assert!(!empty);
        let (u, v) = cex.unwrap();
        assert!(&u + &v > fake.lo && &u + &v < fake.hi);
    }

    #[test]
    fn cross_checks_agree() {
        let r = cross_check_decomposition(&ratio(34, 55), 2, 1000).unwrap();
        assert_eq!(r.first, ratio(37, 75));
        assert_eq!(r.second, ratio(103, 825));
        assert_eq!(r.steps, 2);

        let r = cross_check_decomposition(&ratio(1, 2), 3, 10).unwrap();
        assert_eq!((r.first, r.second), (ratio(1, 3), ratio(1, 6)));

        let r = cross_check_decomposition(&ratio(1, 4), 5, 20).unwrap();
        assert_eq!((r.first, r.second), (ratio(1, 5), ratio(1, 20)));

        // Bound too small for the second denominator.
        assert!(cross_check_decomposition(&ratio(34, 55), 2, 100).is_err());
        // Out of the decomposition interval.
        assert!(cross_check_decomposition(&ratio(3, 4), 3, 100).is_err());
    }
}
