//! Gap intervals of the sumset `S(k) + S(k)`.
//!
//! `S(k)` is the set of numbers in `[0, 1]` (zero included) whose partial
//! quotients are all `>= k`. Its sumset lives inside `[0, 2/k]` but misses
//! a chain of open intervals. With `M_{k,n}` the value of the length-`n`
//! run `[k, k, ..., k]`, `m_{k,n}` the value of the same run followed by a
//! final `1`, and `d_{k,n}` the continuant of the run (the denominator of
//! `M_{k,n}`), the missing intervals are
//!
//! ```text
//! G_{k,n} = (M_{k,n} + m_{k,n},  2 M_{k,n+1})    for odd n,
//! G_{k,n} = (2 M_{k,n+1},  M_{k,n} + m_{k,n})    for even n,
//! ```
//!
//! all endpoints attained by explicit pairs. Odd-indexed gaps increase
//! strictly toward the separator `2/S_k = sqrt(k^2+4) - k` (where `S_k` is
//! the metallic mean, the positive root of `x^2 - k x - 1`), even-indexed
//! gaps decrease strictly toward it from above, which makes the whole
//! family pairwise disjoint — [`verify_disjoint`] certifies exactly that
//! chain of inequalities, and [`classify`] uses it to decide where a point
//! of `[0, 2/k]` stands in finitely many comparisons.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::cf::continuant;
use crate::rational::{Int, Rational};
use crate::{Error, Result};

/// `d_{k,n}`: the continuant of `n` copies of `k` (`d_{k,0} = 1`).
pub fn run_continuant(k: u64, n: usize) -> Int {
    assert!(k >= 1, "digit floor must be positive");
    continuant(&vec![Int::from(k); n]).expect("run digits are positive")
}

/// `d_{k,n}` extended with `d_{k,-1} = 0`, for the semiconvergent at n = 1.
fn run_continuant_ext(k: u64, n: isize) -> Int {
    if n < 0 {
        Int::zero()
    } else {
        run_continuant(k, n as usize)
    }
}

/// `M_{k,n} = [k, ..., k]` (`n` copies) `= d_{k,n-1} / d_{k,n}`.
pub fn metallic_convergent(k: u64, n: usize) -> Rational {
    assert!(n >= 1, "convergent index must be positive");
    Rational::new(run_continuant(k, n - 1), run_continuant(k, n))
}

/// `m_{k,n} = [k, ..., k, 1]` (`n` copies of `k`, then a one): the mediant
/// of `M_{k,n}` and `M_{k,n-1}`, with denominator `d_{k,n} + d_{k,n-1}`.
pub fn metallic_semiconvergent(k: u64, n: usize) -> Rational {
    assert!(n >= 1, "semiconvergent index must be positive");
    let n = n as isize;
    Rational::new(
        run_continuant_ext(k, n - 1) + run_continuant_ext(k, n - 2),
        run_continuant_ext(k, n) + run_continuant_ext(k, n - 1),
    )
}

/// Compares `x` with the separator `2/S_k = sqrt(k^2+4) - k` exactly, by
/// comparing `(x + k)^2` with `k^2 + 4` in integers.
///
/// `Equal` never occurs for rational `x`: `k^2 + 4` sits strictly between
/// `k^2` and `(k+2)^2` and would have to be `(k+1)^2`, which no integer
/// `k` satisfies.
pub fn metallic_compare(x: &Rational, k: u64) -> Ordering {
    assert!(k >= 1, "metallic index must be positive");
    let k = Int::from(k);
    // (p + kq)^2 vs (k^2 + 4) q^2 with x = p/q, q > 0.
    let shifted = x.numer() + &k * x.denom();
    let lhs = &shifted * &shifted;
    let rhs = (&k * &k + Int::from(4)) * (x.denom() * x.denom());
    let ord = lhs.cmp(&rhs);
    debug_assert_ne!(ord, Ordering::Equal, "k^2 + 4 is never a perfect square");
    ord
}

/// The separator `sqrt(k^2+4) - k` truncated to `decimals` decimal places.
pub fn separator_decimal(k: u64, decimals: usize) -> String {
    assert!(k >= 1, "metallic index must be positive");
    let k = Int::from(k);
    let scale = crate::rational::pow10(decimals as u32);
    // floor(sqrt(k^2+4) * 10^d) = isqrt((k^2+4) * 10^2d), exact because
    // the radicand is never a perfect square.
    let scaled = ((&k * &k + Int::from(4)) * &scale * &scale).sqrt() - &k * &scale;
    let int_part = &scaled / &scale;
    let frac_part = (&scaled % &scale).to_string();
    if decimals == 0 {
        format!("{int_part}")
    } else {
        format!("{int_part}.{frac_part:0>width$}", width = decimals)
    }
}

/// One open interval missed by `S(k) + S(k)`, with both endpoints attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapInterval {
    /// Digit floor of the underlying set `S(k)`.
    pub k: u64,
    /// 1-based gap index.
    pub n: usize,
    /// Left endpoint (excluded from the gap, attained by the sumset).
    pub lo: Rational,
    /// Right endpoint (excluded from the gap, attained by the sumset).
    pub hi: Rational,
}

impl GapInterval {
    /// Whether `x` lies strictly inside the gap.
    pub fn contains(&self, x: &Rational) -> bool {
        x > &self.lo && x < &self.hi
    }

    /// A pair of `S(k)` elements summing exactly to `lo`.
    pub fn lo_witness(&self) -> (Rational, Rational) {
        if self.n % 2 == 1 {
            (
                metallic_convergent(self.k, self.n),
                metallic_semiconvergent(self.k, self.n),
            )
        } else {
            let half = metallic_convergent(self.k, self.n + 1);
            (half.clone(), half)
        }
    }

    /// A pair of `S(k)` elements summing exactly to `hi`.
    pub fn hi_witness(&self) -> (Rational, Rational) {
        if self.n % 2 == 1 {
            let half = metallic_convergent(self.k, self.n + 1);
            (half.clone(), half)
        } else {
            (
                metallic_convergent(self.k, self.n),
                metallic_semiconvergent(self.k, self.n),
            )
        }
    }
}

impl fmt::Display for GapInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Builds the gap interval `G_{k,n}`.
pub fn gap(k: u64, n: usize) -> Result<GapInterval> {
    if k < 3 {
        return Err(Error::InvalidParams(format!(
            "gap intervals need k >= 3, got {k}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParams("gap index is 1-based".into()));
    }
    let sum = metallic_convergent(k, n) + metallic_semiconvergent(k, n);
    let doubled = Rational::from(Int::from(2)) * metallic_convergent(k, n + 1);
    let (lo, hi) = if n % 2 == 1 {
        (sum, doubled)
    } else {
        (doubled, sum)
    };
    assert!(lo < hi, "gap endpoints out of order for k={k}, n={n}");
    Ok(GapInterval { k, n, lo, hi })
}

/// Where a point of `[0, 2/k]` stands relative to the known structure of
/// `S(k) + S(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClassification {
    /// In `[0, 1/(k-1)]`, hence in the sumset (every such point splits).
    CoveredByTheorem,
    /// Strictly inside `G_{k,n}`, hence not in the sumset.
    GapExcluded(usize),
    /// Exactly an endpoint of `G_{k,n}`, hence in the sumset.
    GapEndpoint(usize),
    /// Exactly `2/k = 1/k + 1/k`, the largest element of the sumset.
    MaxEndpoint,
    /// No theorem applies at this point.
    Unknown,
}

impl PointClassification {
    /// Stable lowercase name (used by serialized reports).
    pub fn as_str(&self) -> &'static str {
        match self {
            PointClassification::CoveredByTheorem => "covered_by_theorem",
            PointClassification::GapExcluded(_) => "gap_excluded",
            PointClassification::GapEndpoint(_) => "gap_endpoint",
            PointClassification::MaxEndpoint => "max_endpoint",
            PointClassification::Unknown => "unknown",
        }
    }
}

/// Classifies `x` in `[0, 2/k]` against the covered interval, the gap
/// family (scanned on the correct side of the separator, stopping as soon
/// as monotonicity rules out further hits), and the right endpoint.
pub fn classify(x: &Rational, k: u64, n_max: usize) -> Result<PointClassification> {
    if k < 3 {
        return Err(Error::InvalidParams(format!(
            "classification needs k >= 3, got {k}"
        )));
    }
    let max = Rational::new(Int::from(2), Int::from(k));
    if x < &Rational::zero() || x > &max {
        return Err(Error::OutOfRange {
            what: "classification point",
            range: "[0, 2/k]",
            value: x.to_string(),
        });
    }
    if x == &max {
        return Ok(PointClassification::MaxEndpoint);
    }
    if x <= &Rational::new(Int::one(), Int::from(k - 1)) {
        return Ok(PointClassification::CoveredByTheorem);
    }
    match metallic_compare(x, k) {
        Ordering::Less => {
            // Odd-indexed gaps rise strictly toward the separator; once x
            // falls below a gap it is below every later one.
            let mut n = 1;
            while n <= n_max {
                let g = gap(k, n)?;
                if x < &g.lo {
                    break;
                }
                if x == &g.lo || x == &g.hi {
                    return Ok(PointClassification::GapEndpoint(n));
                }
                if x < &g.hi {
                    return Ok(PointClassification::GapExcluded(n));
                }
                n += 2;
            }
        }
        Ordering::Greater => {
            // Even-indexed gaps sink strictly toward the separator; once x
            // rises above a gap it is above every later one.
            let mut n = 2;
            while n <= n_max {
                let g = gap(k, n)?;
                if x > &g.hi {
                    break;
                }
                if x == &g.lo || x == &g.hi {
                    return Ok(PointClassification::GapEndpoint(n));
                }
                if x > &g.lo {
                    return Ok(PointClassification::GapExcluded(n));
                }
                n += 2;
            }
        }
        Ordering::Equal => unreachable!("separator is irrational"),
    }
    Ok(PointClassification::Unknown)
}

/// The full chain of exact inequalities that makes `G_{k,1..n_max}`
/// pairwise disjoint.
#[derive(Debug, Clone)]
pub struct DisjointnessCertificate {
    /// Digit floor of the underlying set.
    pub k: u64,
    /// Largest gap index covered by the certificate.
    pub n_max: usize,
    /// The gaps themselves, in index order.
    pub gaps: Vec<GapInterval>,
    /// `G_{k,1} < G_{k,3} < ...` as whole intervals.
    pub odd_chain_increasing: bool,
    /// `G_{k,2} > G_{k,4} > ...` as whole intervals.
    pub even_chain_decreasing: bool,
    /// Every odd-indexed gap lies entirely below the separator.
    pub odd_gaps_below_separator: bool,
    /// Every even-indexed gap lies entirely above the separator.
    pub even_gaps_above_separator: bool,
    /// `M_{k,2n-1} + m_{k,2n-1} < 2 M_{k,2n} < M_{k,2n+1} + m_{k,2n+1}`
    /// for all applicable `n`.
    pub ordering_inequalities_hold: bool,
}

impl DisjointnessCertificate {
    /// Whether every checked inequality held, i.e. the gaps are pairwise
    /// disjoint.
    pub fn disjoint(&self) -> bool {
        self.odd_chain_increasing
            && self.even_chain_decreasing
            && self.odd_gaps_below_separator
            && self.even_gaps_above_separator
            && self.ordering_inequalities_hold
    }
}

/// Certifies pairwise disjointness of `G_{k,1..n_max}` by exact
/// comparisons: both parity chains strictly monotone toward the separator,
/// each gap entirely on its own side of it, and the explicit ordering
/// inequalities between consecutive odd endpoints.
pub fn verify_disjoint(k: u64, n_max: usize) -> Result<DisjointnessCertificate> {
    let mut gaps = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        gaps.push(gap(k, n)?);
    }

    let mut odd_chain_increasing = true;
    let mut even_chain_decreasing = true;
    for pair in gaps.chunks(2).collect::<Vec<_>>().windows(2) {
        // pair[0] holds gaps 2i+1, 2i+2; pair[1] holds 2i+3, 2i+4 (the
        // second element may be absent at the end).
        let g_odd = &pair[0][0];
        let g_odd_next = &pair[1][0];
        if g_odd.hi >= g_odd_next.lo {
            odd_chain_increasing = false;
        }
        if let (Some(g_even), Some(g_even_next)) = (pair[0].get(1), pair[1].get(1)) {
            if g_even_next.hi >= g_even.lo {
                even_chain_decreasing = false;
            }
        }
    }

    let mut odd_gaps_below_separator = true;
    let mut even_gaps_above_separator = true;
    for g in &gaps {
        let lo_side = metallic_compare(&g.lo, k);
        let hi_side = metallic_compare(&g.hi, k);
        if g.n % 2 == 1 {
            if lo_side != Ordering::Less || hi_side != Ordering::Less {
                odd_gaps_below_separator = false;
            }
        } else if lo_side != Ordering::Greater || hi_side != Ordering::Greater {
            even_gaps_above_separator = false;
        }
    }

    // M_{k,2n-1} + m_{k,2n-1} < 2 M_{k,2n} < M_{k,2n+1} + m_{k,2n+1}.
    let mut ordering_inequalities_hold = true;
    let mut n = 1;
    while 2 * n - 1 <= n_max {
        let left = metallic_convergent(k, 2 * n - 1) + metallic_semiconvergent(k, 2 * n - 1);
        let middle = Rational::from(Int::from(2)) * metallic_convergent(k, 2 * n);
        let right = metallic_convergent(k, 2 * n + 1) + metallic_semiconvergent(k, 2 * n + 1);
        if !(left < middle && middle < right) {
            ordering_inequalities_hold = false;
        }
        n += 1;
    }

    Ok(DisjointnessCertificate {
        k,
        n_max,
        gaps,
        odd_chain_increasing,
        even_chain_decreasing,
        odd_gaps_below_separator,
        even_gaps_above_separator,
        ordering_inequalities_hold,
    })
}
