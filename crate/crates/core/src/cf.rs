//! Canonical continued fractions, convergents, continuants, and cylinder
//! intervals.
//!
//! Throughout the crate a continued fraction `[a1, a2, ..., an]` denotes the
//! fractional-part expansion
//!
//! ```text
//! [a1, a2, ..., an] = 1 / (a1 + 1 / (a2 + ... + 1 / an)),
//! ```
//!
//! a number in `[0, 1]`. The empty sequence denotes `0`, and `[1]` denotes
//! `1`. Every rational in `[0, 1]` has exactly one canonical expansion whose
//! last partial quotient is `>= 2` (with `[1]` as the sole exception for the
//! value `1`); the other classical expansion, ending `..., a, 1`, is merged
//! to `..., a+1` on ingestion.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::rational::{Int, Rational};
use crate::{Error, Result};

/// Validates that every entry of `digits` is `>= 1`.
fn check_digits(digits: &[Int]) -> Result<()> {
    for (i, d) in digits.iter().enumerate() {
        if !d.is_positive() {
            return Err(Error::BadQuotient {
                pos: i + 1,
                value: d.to_string(),
            });
        }
    }
    Ok(())
}

/// Renders a digit slice as `[a1,a2,...]`.
pub fn format_digits(digits: &[Int]) -> String {
    let body: Vec<String> = digits.iter().map(Int::to_string).collect();
    format!("[{}]", body.join(","))
}

/// A finite continued fraction in canonical form.
///
/// Invariants: all partial quotients are `>= 1`; the last is `>= 2` unless
/// the whole expansion is `[1]` (the value `1`) or empty (the value `0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    digits: Vec<Int>,
}

impl ContinuedFraction {
    /// Builds a continued fraction from partial quotients, merging a
    /// trailing `..., a, 1` into `..., a+1` so the result is canonical.
    pub fn new(mut digits: Vec<Int>) -> Result<Self> {
        check_digits(&digits)?;
        if digits.len() >= 2 && digits.last().map(Int::is_one).unwrap_or(false) {
            digits.pop();
            *digits.last_mut().expect("len >= 1 after pop") += 1;
        }
        Ok(Self { digits })
    }

    /// The canonical expansion of a rational `x` in `[0, 1]`, via the
    /// Euclidean algorithm. `0` maps to the empty expansion, `1` to `[1]`.
    pub fn from_rational(x: &Rational) -> Result<Self> {
        if x.is_negative() || x > &Rational::one() {
            return Err(Error::OutOfRange {
                what: "continued fraction argument",
                range: "[0, 1]",
                value: x.to_string(),
            });
        }
        if x.is_zero() {
            return Ok(Self { digits: Vec::new() });
        }
        if x.is_one() {
            return Ok(Self {
                digits: vec![Int::one()],
            });
        }
        let mut digits = Vec::new();
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        // Loop invariant: 0 < num < den. The final quotient is automatically
        // >= 2, because an exact division with quotient 1 would force
        // num == den.
        while !num.is_zero() {
            let a = &den / &num;
            let rem = &den - &a * &num;
            digits.push(a);
            den = std::mem::replace(&mut num, rem);
        }
        Ok(Self { digits })
    }

    /// The partial quotients.
    pub fn digits(&self) -> &[Int] {
        &self.digits
    }

    /// Number of partial quotients.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// True for the expansion of `0`.
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The exact value in `[0, 1]`.
    pub fn value(&self) -> Rational {
        let mut conv = ConvergentPair::new();
        for d in &self.digits {
            conv.push(d);
        }
        conv.value()
    }

    /// The convergents `(p_n/q_n, q_n)` for `n = 1, ..., len`.
    ///
    /// Denominators are strictly increasing from the second convergent on,
    /// and the final convergent equals [`value`](Self::value).
    pub fn convergents(&self) -> Vec<(Rational, Int)> {
        let mut conv = ConvergentPair::new();
        let mut out = Vec::with_capacity(self.digits.len());
        for d in &self.digits {
            conv.push(d);
            out.push((conv.value(), conv.den().clone()));
        }
        out
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(&self.digits))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `[a1,a2,...]` (whitespace around entries is tolerated) and
    /// canonicalizes the result.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                expected: "a bracketed quotient list [a1,a2,...]",
            })?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Self::new(Vec::new());
        }
        let mut digits = Vec::new();
        for piece in inner.split(',') {
            let d = Int::from_str(piece.trim()).map_err(|_| Error::Parse {
                input: s.to_string(),
                expected: "a bracketed quotient list [a1,a2,...]",
            })?;
            digits.push(d);
        }
        Self::new(digits)
    }
}

/// Running numerator/denominator pairs for a continued fraction read left to
/// right: after `n` pushes it holds `p_n/q_n` and `p_{n-1}/q_{n-1}` under
/// the standard recurrence
///
/// ```text
/// p_n = a_n p_{n-1} + p_{n-2},    p_0 = 0, p_{-1} = 1,
/// q_n = a_n q_{n-1} + q_{n-2},    q_0 = 1, q_{-1} = 0.
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair {
    num: Int,
    den: Int,
    prev_num: Int,
    prev_den: Int,
    count: usize,
}

impl Default for ConvergentPair {
    fn default() -> Self {
        Self::new()
    }
}

impl ConvergentPair {
    /// The empty state `p_0/q_0 = 0/1`, `p_{-1}/q_{-1} = 1/0`.
    pub fn new() -> Self {
        Self {
            num: Int::zero(),
            den: Int::one(),
            prev_num: Int::one(),
            prev_den: Int::zero(),
            count: 0,
        }
    }

    /// Appends a partial quotient.
    pub fn push(&mut self, digit: &Int) {
        let next_num = digit * &self.num + &self.prev_num;
        let next_den = digit * &self.den + &self.prev_den;
        self.prev_num = std::mem::replace(&mut self.num, next_num);
        self.prev_den = std::mem::replace(&mut self.den, next_den);
        self.count += 1;
    }

    /// `p_n/q_n` (equal to `0` before any push).
    pub fn value(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    /// The mediant `(p_n + p_{n-1}) / (q_n + q_{n-1})`, i.e. the value of
    /// the expansion extended by a final quotient `1`.
    pub fn mediant(&self) -> Rational {
        Rational::new(&self.num + &self.prev_num, &self.den + &self.prev_den)
    }

    /// `p_n`.
    pub fn num(&self) -> &Int {
        &self.num
    }

    /// `q_n`.
    pub fn den(&self) -> &Int {
        &self.den
    }

    /// `p_{n-1}`.
    pub fn prev_num(&self) -> &Int {
        &self.prev_num
    }

    /// `q_{n-1}`.
    pub fn prev_den(&self) -> &Int {
        &self.prev_den
    }

    /// Number of quotients pushed so far.
    pub fn count(&self) -> usize {
        self.count
    }
}

/// The continuant `K(c_1, ..., c_n)`: the denominator of the continued
/// fraction `[c_1, ..., c_n]` as a polynomial in its entries, with
/// `K() = 1` and `K(c) = c`.
///
/// Errors if any entry is `< 1`.
pub fn continuant(digits: &[Int]) -> Result<Int> {
    check_digits(digits)?;
    // K_{-1} = 0, K_0 = 1, K_j = c_j K_{j-1} + K_{j-2}.
    let mut prev = Int::zero();
    let mut cur = Int::one();
    for d in digits {
        let next = d * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// A cylinder: the set of numbers in `[0, 1]` whose expansion begins with a
/// fixed block of partial quotients, which is always a half-open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl CylinderInterval {
    /// Exact interval length `hi - lo`.
    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Exact membership test, honoring endpoint closedness.
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }
}

impl fmt::Display for CylinderInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

/// The cylinder of all numbers whose expansion starts with `digits`.
///
/// With convergents `p/q` and `p'/q'` of the block, the interval is
/// `[p/q, (p+p')/(q+q'))` when the block length is even and
/// `((p+p')/(q+q'), p/q]` when it is odd; its length is `1/(q(q+q'))`
/// either way. The empty block yields `[0, 1]`.
pub fn cylinder(digits: &[Int]) -> Result<CylinderInterval> {
    check_digits(digits)?;
    if digits.is_empty() {
        return Ok(CylinderInterval {
            lo: Rational::zero(),
            hi: Rational::one(),
            lo_closed: true,
            hi_closed: true,
        });
    }
    let mut conv = ConvergentPair::new();
    for d in digits {
        conv.push(d);
    }
    let exact = conv.value();
    let mediant = conv.mediant();
    Ok(if digits.len() % 2 == 0 {
        CylinderInterval {
            lo: exact,
            hi: mediant,
            lo_closed: true,
            hi_closed: false,
        }
    } else {
        CylinderInterval {
            lo: mediant,
            hi: exact,
            lo_closed: false,
            hi_closed: true,
        }
    })
}

/// An exact lower bound for the continuant ratio `K(b) / K(c)` of two
/// equally long sequences with `b_i >= c_i >= 1`, read off a split position
/// `split` (`1 <= split < len`):
///
/// ```text
/// K(b)       K(b_1..b_s) - K(c_1..c_s) + (K(b_1..b_{s-1}) - K(c_1..c_{s-1})) / (c_{s+1} + 1)
/// ---- >= 1 + -----------------------------------------------------------------------------
/// K(c)                        K(c_1..c_s) + K(c_1..c_{s-1}) / c_{s+1}
/// ```
///
/// The bound is exact rational output; callers choose the split.
pub fn continuant_ratio_bound(b: &[Int], c: &[Int], split: usize) -> Result<Rational> {
    if b.len() != c.len() {
        return Err(Error::InvalidParams(format!(
            "continuant ratio bound needs equal lengths, got {} and {}",
            b.len(),
            c.len()
        )));
    }
    if split == 0 || split >= b.len() {
        return Err(Error::InvalidParams(format!(
            "split position must satisfy 1 <= split < len, got split={} len={}",
            split,
            b.len()
        )));
    }
    check_digits(b)?;
    check_digits(c)?;
    for (i, (bi, ci)) in b.iter().zip(c).enumerate() {
        if bi < ci {
            return Err(Error::InvalidParams(format!(
                "entrywise dominance b_i >= c_i required, violated at position {} ({} < {})",
                i + 1,
                bi,
                ci
            )));
        }
    }
    let kb_s = continuant(&b[..split])?;
    let kb_s1 = continuant(&b[..split - 1])?;
    let kc_s = continuant(&c[..split])?;
    let kc_s1 = continuant(&c[..split - 1])?;
    let c_next = &c[split];

    let head = Rational::from(&kb_s - &kc_s);
    let tail = Rational::new(&kb_s1 - &kc_s1, c_next + Int::one());
    let denom = Rational::from(kc_s.clone()) + Rational::new(kc_s1, c_next.clone());
    Ok(Rational::one() + (head + tail) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn cf(digits: &[u64]) -> ContinuedFraction {
        ContinuedFraction::new(digits.iter().map(|&d| Int::from(d)).collect()).unwrap()
    }

    fn ints(digits: &[u64]) -> Vec<Int> {
        digits.iter().map(|&d| Int::from(d)).collect()
    }

    #[test]
    fn zero_and_one_have_the_degenerate_expansions() {
        assert_eq!(ContinuedFraction::from_rational(&ratio(0, 1)).unwrap(), cf(&[]));
        assert_eq!(ContinuedFraction::from_rational(&ratio(1, 1)).unwrap(), cf(&[1]));
        assert_eq!(cf(&[]).value(), ratio(0, 1));
        assert_eq!(cf(&[1]).value(), ratio(1, 1));
    }

    #[test]
    fn expansion_of_34_55_is_canonical() {
        let x = ContinuedFraction::from_rational(&ratio(34, 55)).unwrap();
        assert_eq!(x, cf(&[1, 1, 1, 1, 1, 1, 1, 2]));
        assert_eq!(x.value(), ratio(34, 55));
    }

    #[test]
    fn trailing_one_is_merged_on_ingestion() {
        assert_eq!(cf(&[1, 1, 1, 1, 1, 1, 1, 1, 1]), cf(&[1, 1, 1, 1, 1, 1, 1, 2]));
        assert_eq!(cf(&[8, 102, 1]), cf(&[8, 103]));
        assert_eq!(cf(&[2, 1]), cf(&[3]));
        assert_eq!(cf(&[1, 1]), cf(&[2]));
        assert_eq!(cf(&[1, 1]).value(), ratio(1, 2));
    }

    #[test]
    fn known_values() {
        assert_eq!(cf(&[2, 37]).value(), ratio(37, 75));
        assert_eq!(cf(&[8, 103]).value(), ratio(103, 825));
        assert_eq!(cf(&[3, 3]).value(), ratio(3, 10));
        assert_eq!(cf(&[3, 3]).value() + cf(&[3, 3, 1]).value(), ratio(3, 10) + ratio(4, 13));
        assert_eq!(cf(&[2]).value(), ratio(1, 2));
        assert_eq!(cf(&[5, 20]).value(), ratio(20, 101));
    }

    #[test]
    fn round_trip_small_denominators() {
        for q in 1u64..=300 {
            for p in 0..=q {
                let x = Rational::new(Int::from(p), Int::from(q));
                let e = ContinuedFraction::from_rational(&x).unwrap();
                assert_eq!(e.value(), x, "value of expansion of {p}/{q}");
                // Canonical form: last quotient >= 2 unless the expansion
                // is [] or [1].
                if let Some(last) = e.digits().last() {
                    assert!(
                        *last >= Int::from(2u32) || e.digits() == [Int::one()],
                        "expansion of {p}/{q} not canonical: {e}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_and_bad_digits() {
        assert!(ContinuedFraction::from_rational(&ratio(3, 2)).is_err());
        assert!(ContinuedFraction::from_rational(&ratio(-1, 2)).is_err());
        assert!(ContinuedFraction::new(ints(&[3, 0, 2])).is_err());
        assert!(continuant(&[Int::from(-3)]).is_err());
    }

    #[test]
    fn convergents_match_prefixes_and_grow() {
        let e = cf(&[1, 1, 1, 1, 1, 1, 1, 2]);
        let convs = e.convergents();
        assert_eq!(convs.len(), 8);
        assert_eq!(convs[0].0, ratio(1, 1));
        assert_eq!(convs[1].0, ratio(1, 2));
        assert_eq!(convs[2].0, ratio(2, 3));
        assert_eq!(convs.last().unwrap().0, ratio(34, 55));
        for w in convs.windows(2).skip(1) {
            assert!(w[0].1 < w[1].1, "denominators strictly increase");
        }
    }

    #[test]
    fn continuant_small_cases() {
        assert_eq!(continuant(&[]).unwrap(), Int::one());
        assert_eq!(continuant(&ints(&[7])).unwrap(), Int::from(7u32));
        assert_eq!(continuant(&ints(&[3, 3])).unwrap(), Int::from(10u32));
        assert_eq!(continuant(&ints(&[4, 4, 4])).unwrap(), Int::from(72u32));
        assert_eq!(continuant(&ints(&[2, 3, 5, 7])).unwrap(), Int::from(266u32));
        assert_eq!(continuant(&ints(&[7, 5, 3, 2])).unwrap(), Int::from(266u32));
    }

    #[test]
    fn continuant_equals_expansion_denominator() {
        let digits = ints(&[2, 37]);
        let e = ContinuedFraction::new(digits.clone()).unwrap();
        assert_eq!(&continuant(&digits).unwrap(), e.value().denom());
    }

    #[test]
    fn cylinder_intervals_match_hand_computation() {
        let c1 = cylinder(&ints(&[2])).unwrap();
        assert_eq!((c1.lo, c1.hi), (ratio(1, 3), ratio(1, 2)));
        assert!(!c1.lo_closed && c1.hi_closed);

        let c2 = cylinder(&ints(&[2, 2])).unwrap();
        assert_eq!((c2.lo.clone(), c2.hi.clone()), (ratio(2, 5), ratio(3, 7)));
        assert!(c2.lo_closed && !c2.hi_closed);
        assert_eq!(c2.length(), ratio(1, 35));

        let c3 = cylinder(&ints(&[1])).unwrap();
        assert_eq!((c3.lo, c3.hi), (ratio(1, 2), ratio(1, 1)));

        let all = cylinder(&[]).unwrap();
        assert!(all.contains(&ratio(0, 1)) && all.contains(&ratio(1, 1)));
    }

    #[test]
    fn cylinder_contains_its_own_expansions() {
        let digits = ints(&[2, 1, 4]);
        let c = cylinder(&digits).unwrap();
        // [2,1,4] itself and one proper extension lie inside.
        let v = ContinuedFraction::new(digits.clone()).unwrap().value();
        assert!(c.contains(&v));
        let mut longer = digits.clone();
        longer.push(Int::from(9u32));
        let w = ContinuedFraction::new(longer).unwrap().value();
        assert!(c.contains(&w));
        // The sibling block [2,1,5] does not.
        let sibling = ContinuedFraction::new(ints(&[2, 1, 5])).unwrap().value();
        assert!(!c.contains(&sibling));
    }

    #[test]
    fn ratio_bound_examples() {
        let b = ints(&[6, 6]);
        let c = ints(&[3, 3]);
        assert_eq!(continuant_ratio_bound(&b, &c, 1).unwrap(), ratio(19, 10));

        let b = ints(&[4, 4, 4]);
        let c = ints(&[2, 2, 2]);
        assert_eq!(continuant_ratio_bound(&b, &c, 1).unwrap(), ratio(9, 5));
        // The bound really is a lower bound here: K(4,4,4)/K(2,2,2) = 72/12.
        assert!(ratio(72, 12) >= ratio(9, 5));
    }

    #[test]
    fn ratio_bound_validates_inputs() {
        let b = ints(&[6, 6]);
        let c = ints(&[3, 3]);
        assert!(continuant_ratio_bound(&b, &c, 0).is_err());
        assert!(continuant_ratio_bound(&b, &c, 2).is_err());
        assert!(continuant_ratio_bound(&b, &c[..1], 1).is_err());
        assert!(continuant_ratio_bound(&c, &b, 1).is_err(), "dominance is required");
    }

    #[test]
    fn parse_and_display() {
        let e: ContinuedFraction = "[2,37]".parse().unwrap();
        assert_eq!(e, cf(&[2, 37]));
        assert_eq!(e.to_string(), "[2,37]");
        let z: ContinuedFraction = "[]".parse().unwrap();
        assert!(z.is_empty());
        assert_eq!(z.to_string(), "[]");
        let spaced: ContinuedFraction = " [ 1, 2 , 3 ] ".parse().unwrap();
        assert_eq!(spaced, cf(&[1, 2, 3]));
        // Parsing canonicalizes a trailing 1.
        let merged: ContinuedFraction = "[1,1,1,1,1,1,1,1,1]".parse().unwrap();
        assert_eq!(merged, cf(&[1, 1, 1, 1, 1, 1, 1, 2]));
        assert!("2,3".parse::<ContinuedFraction>().is_err());
        assert!("[2,x]".parse::<ContinuedFraction>().is_err());
        assert!("[2,0]".parse::<ContinuedFraction>().is_err());
    }
}
