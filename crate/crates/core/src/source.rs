//! Exact number sources: rationals, quadratic surds, and digit streams.
//!
//! The decomposition driver in [`crate::decompose`] only ever asks one
//! question of its input: *what is the `n`-th partial quotient of `x - s`
//! for an exact rational shift `s`?* A [`NumberSource`] answers that
//! question exactly for three kinds of input:
//!
//! * [`NumberSource::Rational`] — answered by the Euclidean algorithm;
//!   running past the end of the expansion reports
//!   [`PartialQuotient::UndefinedIndex`], which is precisely the
//!   termination signal of the decomposition.
//! * [`NumberSource::Surd`] — quadratic irrationals `(a + b*sqrt(d))/c`,
//!   answered by exact floor/reciprocal steps on integer coefficients.
//! * [`NumberSource::Stream`] — a number known only through finitely many
//!   partial quotients (or a generator for them). Queries are answered by
//!   interval refinement: the prefix pins `x` into a cylinder, the shift is
//!   subtracted from both endpoints, and a digit is reported only when the
//!   whole interval agrees on it. When the stream cannot decide, the honest
//!   answer [`PartialQuotient::Exhausted`] is returned instead of a guess.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cf::{cylinder, ContinuedFraction, CylinderInterval};
use crate::rational::{Int, Rational};
use crate::{Error, Result};

/// Answer to a partial-quotient query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialQuotient {
    /// The quotient exists and equals this positive integer.
    Digit(Int),
    /// The (rational) value has fewer partial quotients than requested.
    UndefinedIndex,
    /// A stream source ran out of refinement depth before the quotient was
    /// determined.
    Exhausted,
}

impl PartialQuotient {
    /// Unwraps the digit, panicking otherwise (test helper).
    pub fn unwrap_digit(self) -> Int {
        match self {
            PartialQuotient::Digit(d) => d,
            other => panic!("expected a digit, got {other:?}"),
        }
    }
}

/// A real quadratic irrational `(a + b*sqrt(d)) / c` with integer
/// coefficients, kept in the normal form `c > 0`, `gcd(a, b, c) = 1`,
/// `b != 0`, and `d >= 2` squarefree-or-not but never a perfect square.
///
/// All arithmetic (shift by a rational, reciprocal, floor, comparison with
/// a rational) is exact; in particular `floor` uses only integer square
/// roots, which is unambiguous because `b^2 d` is never a perfect square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: Int,
    b: Int,
    d: Int,
    c: Int,
}

impl Surd {
    /// Builds `(a + b*sqrt(d))/c`, validating that the number is genuinely
    /// irrational (`b != 0`, `d` not a perfect square) and `c != 0`.
    pub fn new(a: Int, b: Int, d: Int, c: Int) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidParams("surd denominator c must be nonzero".into()));
        }
        if b.is_zero() {
            return Err(Error::InvalidParams(
                "surd coefficient b must be nonzero; use a rational p/q instead".into(),
            ));
        }
        if d < Int::from(2) {
            return Err(Error::OutOfRange {
                what: "surd radicand d",
                range: "[2, \u{221e})",
                value: d.to_string(),
            });
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(Error::InvalidParams(format!(
                "radicand {d} is a perfect square; use a rational p/q instead"
            )));
        }
        let (a, b, c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        let g = a.gcd(&b).gcd(&c);
        Ok(Self {
            a: a / &g,
            b: b / &g,
            d,
            c: c / g,
        })
    }

    /// Coefficients `(a, b, d, c)`.
    pub fn coefficients(&self) -> (&Int, &Int, &Int, &Int) {
        (&self.a, &self.b, &self.d, &self.c)
    }

    /// Exact comparison with a rational. Never returns `Equal`: the value
    /// is irrational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        // Sign of (a + b sqrt(d))/c - p/q with c, q > 0 is the sign of
        // A + B sqrt(d), A = a q - p c, B = b q.
        let a_part = &self.a * r.denom() - r.numer() * &self.c;
        let b_part = &self.b * r.denom();
        debug_assert!(!b_part.is_zero());
        let radical_sq = &b_part * &b_part * &self.d;
        let a_sq = &a_part * &a_part;
        if b_part.is_positive() {
            if !a_part.is_negative() {
                Ordering::Greater
            } else if a_sq < radical_sq {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if !a_part.is_positive() {
            Ordering::Less
        } else if a_sq < radical_sq {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// `self - r`, exactly.
    pub fn sub_rational(&self, r: &Rational) -> Self {
        let a = &self.a * r.denom() - r.numer() * &self.c;
        let b = &self.b * r.denom();
        let c = &self.c * r.denom();
        Self::reduced(a, b, self.d.clone(), c)
    }

    /// `1 / self`, exactly. The value must be nonzero, which is automatic
    /// for an irrational.
    pub fn recip(&self) -> Self {
        // c / (a + b sqrt(d)) = c (a - b sqrt(d)) / (a^2 - b^2 d).
        let denom = &self.a * &self.a - &self.b * &self.b * &self.d;
        debug_assert!(!denom.is_zero(), "a^2 - b^2 d = 0 would make sqrt(d) rational");
        let a = &self.c * &self.a;
        let b = -(&self.c * &self.b);
        Self::reduced(a, b, self.d.clone(), denom)
    }

    /// Exact floor.
    pub fn floor(&self) -> Int {
        // floor(a + b sqrt(d)) first: with t = isqrt(b^2 d) we have
        // t < |b| sqrt(d) < t + 1 (never equal: b^2 d is not a perfect
        // square), so the numerator floor is a + t for b > 0 and
        // a - t - 1 for b < 0. Dividing by c > 0 cannot cross an integer
        // inside the open unit interval, so floor(L / c) finishes the job.
        let t = (&self.b * &self.b * &self.d).sqrt();
        let numerator_floor = if self.b.is_positive() {
            &self.a + t
        } else {
            &self.a - t - Int::one()
        };
        numerator_floor.div_floor(&self.c)
    }

    /// Iterator over the (infinite) partial quotients of a surd in `(0, 1)`.
    pub fn digits(&self) -> SurdDigits {
        SurdDigits { state: self.clone() }
    }

    fn reduced(a: Int, b: Int, d: Int, c: Int) -> Self {
        debug_assert!(!c.is_zero());
        let (a, b, c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        let g = a.gcd(&b).gcd(&c);
        Self {
            a: a / &g,
            b: b / &g,
            d,
            c: c / g,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
    }
}

/// Partial-quotient iterator for a [`Surd`] in the open unit interval:
/// repeatedly take the reciprocal, emit its floor, keep the fractional part.
#[derive(Debug, Clone)]
pub struct SurdDigits {
    state: Surd,
}

impl Iterator for SurdDigits {
    type Item = Int;

    fn next(&mut self) -> Option<Int> {
        let inv = self.state.recip();
        let digit = inv.floor();
        self.state = inv.sub_rational(&Rational::from(digit.clone()));
        Some(digit)
    }
}

/// How many cylinder-refinement levels a stream query may use before giving
/// up and answering [`PartialQuotient::Exhausted`].
pub const DEFAULT_REFINEMENT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum StreamBacking {
    /// An explicit finite list of leading partial quotients.
    Finite(Vec<Int>),
    /// The fractional part of e: quotients 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, ...
    EMinusTwo,
}

/// A number identified only by (a prefix of) its partial quotients.
///
/// The number is treated as an unknown point strictly inside the cylinder of
/// every available prefix — the intended use is a genuinely irrational
/// number whose expansion is known only so far. A rational smuggled in as a
/// stream sits on a cylinder boundary, so queries about it eventually
/// exhaust rather than fabricate an answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stream {
    backing: StreamBacking,
    refinement_limit: usize,
    provenance: Option<String>,
}

impl Stream {
    /// A stream over an explicit quotient list (all entries `>= 1`).
    pub fn from_digits(digits: Vec<Int>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidParams("a stream needs at least one quotient".into()));
        }
        for (i, d) in digits.iter().enumerate() {
            if !d.is_positive() {
                return Err(Error::BadQuotient {
                    pos: i + 1,
                    value: d.to_string(),
                });
            }
        }
        Ok(Self {
            backing: StreamBacking::Finite(digits),
            refinement_limit: DEFAULT_REFINEMENT_LIMIT,
            provenance: None,
        })
    }

    /// Parses the stream file format: one partial quotient per line, `#`
    /// starts a comment (whole-line or trailing), blank lines ignored. The
    /// first comment line, if any, is kept as the stream's provenance note.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut digits = Vec::new();
        let mut provenance = None;
        for (lineno, raw) in text.lines().enumerate() {
            let (data, comment) = match raw.split_once('#') {
                Some((before, after)) => (before, Some(after.trim())),
                None => (raw, None),
            };
            if provenance.is_none() {
                if let Some(note) = comment {
                    if !note.is_empty() {
                        provenance = Some(note.to_string());
                    }
                }
            }
            let data = data.trim();
            if data.is_empty() {
                continue;
            }
            let d: Int = data.parse().map_err(|_| Error::Parse {
                input: format!("line {}: {raw:?}", lineno + 1),
                expected: "one integer partial quotient per line",
            })?;
            if !d.is_positive() {
                return Err(Error::BadQuotient {
                    pos: lineno + 1,
                    value: d.to_string(),
                });
            }
            digits.push(d);
        }
        let mut stream = Self::from_digits(digits)?;
        stream.provenance = provenance;
        Ok(stream)
    }

    /// Reads [`Stream::from_text`] input from a file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut stream = Self::from_text(&text)?;
        if stream.provenance.is_none() {
            stream.provenance = Some(format!("stream file {}", path.display()));
        }
        Ok(stream)
    }

    /// The built-in quotient pattern of `e - 2`.
    pub fn e_minus_two() -> Self {
        Self {
            backing: StreamBacking::EMinusTwo,
            refinement_limit: DEFAULT_REFINEMENT_LIMIT,
            provenance: Some("built-in pattern 1,2,1,1,4,1,1,6,... (fractional part of e)".into()),
        }
    }

    /// Caps the refinement depth per digit query.
    pub fn with_refinement_limit(mut self, limit: usize) -> Self {
        self.refinement_limit = limit.max(1);
        self
    }

    /// The quotient at 1-based position `pos`, if available.
    pub fn digit(&self, pos: usize) -> Option<Int> {
        debug_assert!(pos >= 1);
        match &self.backing {
            StreamBacking::Finite(digits) => digits.get(pos - 1).cloned(),
            StreamBacking::EMinusTwo => Some(e_minus_two_digit(pos)),
        }
    }

    /// Number of quotients on hand (`None` when generated without bound).
    pub fn available_depth(&self) -> Option<usize> {
        match &self.backing {
            StreamBacking::Finite(digits) => Some(digits.len()),
            StreamBacking::EMinusTwo => None,
        }
    }

    /// Deepest cylinder this stream may refine to.
    fn max_depth(&self) -> usize {
        match self.available_depth() {
            Some(len) => len.min(self.refinement_limit),
            None => self.refinement_limit,
        }
    }

    /// Provenance note, if the stream carries one.
    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    fn prefix(&self, depth: usize) -> Option<Vec<Int>> {
        (1..=depth).map(|i| self.digit(i)).collect()
    }
}

/// Quotient `pos` (1-based) of `e - 2 = [1, 2, 1, 1, 4, 1, 1, 6, ...]`:
/// after the leading 1 the pattern is `2m, 1, 1` for `m = 1, 2, 3, ...`.
fn e_minus_two_digit(pos: usize) -> Int {
    if pos == 1 {
        return Int::one();
    }
    let offset = pos - 2;
    if offset % 3 == 0 {
        Int::from(2 * (offset / 3 + 1))
    } else {
        Int::one()
    }
}

/// The longest block of partial quotients shared by *every* number in the
/// open interval `(lo, hi)`, up to `max_digits` of them.
///
/// Requires `0 <= lo < hi <= 1`. The walk keeps the exact image of the
/// interval under the shift-invert map: a digit `a` is emitted only when
/// the current interval fits inside `(1/(a+1), 1/a]`, the first-digit
/// cylinder of `a`, so the result is sound for rational and irrational
/// members alike.
pub fn open_interval_prefix(lo: &Rational, hi: &Rational, max_digits: usize) -> Result<Vec<Int>> {
    if lo.is_negative() || hi > &Rational::one() || lo >= hi {
        return Err(Error::InvalidParams(format!(
            "open_interval_prefix needs 0 <= lo < hi <= 1, got ({lo}, {hi})"
        )));
    }
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let mut digits = Vec::new();
    while digits.len() < max_digits {
        if !lo.is_positive() {
            break; // values arbitrarily close to 0 admit arbitrarily large first digits
        }
        // Largest digit a with hi <= 1/a.
        let a = hi.denom().div_floor(hi.numer());
        // The whole interval fits in (1/(a+1), 1/a] only if lo >= 1/(a+1).
        if lo < Rational::new(Int::one(), &a + Int::one()) {
            break;
        }
        // Map y to 1/y - a; order reverses.
        let next_lo = hi.recip() - Rational::from(a.clone());
        let next_hi = lo.recip() - Rational::from(a.clone());
        digits.push(a);
        lo = next_lo;
        hi = next_hi;
    }
    Ok(digits)
}

fn pi_minus_three_digits() -> &'static [Int] {
    static DIGITS: OnceLock<Vec<Int>> = OnceLock::new();
    DIGITS.get_or_init(|| {
        let stream = Stream::from_text(include_str!("../data/pi-minus-3.txt"))
            .expect("bundled quotient file is well-formed");
        match stream.backing {
            StreamBacking::Finite(digits) => digits,
            StreamBacking::EMinusTwo => unreachable!(),
        }
    })
}

fn pi_minus_three_provenance() -> &'static str {
    static NOTE: OnceLock<String> = OnceLock::new();
    NOTE.get_or_init(|| {
        Stream::from_text(include_str!("../data/pi-minus-3.txt"))
            .expect("bundled quotient file is well-formed")
            .provenance
            .expect("bundled quotient file carries a provenance comment")
    })
}

/// An exact number in `(0, 1]`, queryable for partial quotients of shifted
/// copies of itself.
#[derive(Debug, Clone)]
pub enum NumberSource {
    Rational(Rational),
    Surd(Surd),
    Stream(Stream),
}

impl NumberSource {
    /// A rational source; the value must lie in `(0, 1]`.
    pub fn rational(value: Rational) -> Result<Self> {
        if !value.is_positive() || value > Rational::one() {
            return Err(Error::OutOfRange {
                what: "source value",
                range: "(0, 1]",
                value: value.to_string(),
            });
        }
        Ok(NumberSource::Rational(value))
    }

    /// A quadratic-surd source; the value must lie in `(0, 1)`.
    pub fn surd(surd: Surd) -> Result<Self> {
        if surd.cmp_rational(&Rational::zero()) != Ordering::Greater
            || surd.cmp_rational(&Rational::one()) != Ordering::Less
        {
            return Err(Error::OutOfRange {
                what: "source value",
                range: "(0, 1)",
                value: surd.to_string(),
            });
        }
        Ok(NumberSource::Surd(surd))
    }

    /// A stream source (value implicitly in `(0, 1]` because quotients are
    /// `>= 1`).
    pub fn stream(stream: Stream) -> Self {
        NumberSource::Stream(stream)
    }

    /// Built-in stream for `e - 2`.
    pub fn e_minus_2() -> Self {
        NumberSource::Stream(Stream::e_minus_two())
    }

    /// Built-in stream for `pi - 3`, backed by a bundled table of certified
    /// partial quotients.
    pub fn pi_minus_3() -> Self {
        let mut stream =
            Stream::from_digits(pi_minus_three_digits().to_vec()).expect("bundled digits valid");
        stream.provenance = Some(pi_minus_three_provenance().to_string());
        NumberSource::Stream(stream)
    }

    /// Parses a number literal:
    ///
    /// * `p/q` or a bare integer — rational;
    /// * `[a1,a2,...]` — the value of a finite continued fraction;
    /// * `surd:a,b,d,c` — the quadratic irrational `(a + b*sqrt(d))/c`;
    /// * `stream:PATH` — quotient file, one partial quotient per line;
    /// * `e-2`, `pi-3` — built-in streams.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "e-2" {
            return Ok(Self::e_minus_2());
        }
        if t == "pi-3" {
            return Ok(Self::pi_minus_3());
        }
        if let Some(rest) = t.strip_prefix("surd:") {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(Error::Parse {
                    input: text.to_string(),
                    expected: "surd:a,b,d,c with four integers",
                });
            }
            let mut nums = Vec::with_capacity(4);
            for p in &parts {
                nums.push(p.parse::<Int>().map_err(|_| Error::Parse {
                    input: text.to_string(),
                    expected: "surd:a,b,d,c with four integers",
                })?);
            }
            let c = nums.pop().expect("len 4");
            let d = nums.pop().expect("len 3");
            let b = nums.pop().expect("len 2");
            let a = nums.pop().expect("len 1");
            return Self::surd(Surd::new(a, b, d, c)?);
        }
        if let Some(rest) = t.strip_prefix("stream:") {
            return Ok(Self::stream(Stream::from_file(Path::new(rest.trim()))?));
        }
        if t.starts_with('[') {
            let cf: ContinuedFraction = t.parse()?;
            return Self::rational(cf.value());
        }
        Self::rational(crate::rational::parse_rational(t)?)
    }

    /// The exact value, when the source is rational.
    pub fn exact_value_if_rational(&self) -> Option<&Rational> {
        match self {
            NumberSource::Rational(v) => Some(v),
            _ => None,
        }
    }

    /// Provenance note (streams only).
    pub fn provenance(&self) -> Option<&str> {
        match self {
            NumberSource::Stream(s) => s.provenance(),
            _ => None,
        }
    }

    /// Short human-readable description for reports.
    pub fn describe(&self) -> String {
        match self {
            NumberSource::Rational(v) => format!("rational {}/{}", v.numer(), v.denom()),
            NumberSource::Surd(s) => format!("surd {s}"),
            NumberSource::Stream(s) => match s.available_depth() {
                Some(n) => format!("stream of {n} partial quotients"),
                None => "stream (generated quotients)".into(),
            },
        }
    }

    /// The `n`-th partial quotient (1-based) of `self - shift`.
    ///
    /// The shifted value must lie in `[0, 1]`; values `0` and `1` have the
    /// expansions `[]` and `[1]`, so `0` answers `UndefinedIndex` for every
    /// `n` and `1` answers `1` for `n = 1` only. Stream sources answer
    /// `Exhausted` when the available quotients cannot pin the answer down.
    pub fn partial_quotient(&self, shift: &Rational, n: usize) -> Result<PartialQuotient> {
        if n == 0 {
            return Err(Error::InvalidParams("quotient positions are 1-based".into()));
        }
        match self {
            NumberSource::Rational(v) => {
                let y = v - shift;
                if y.is_negative() || y > Rational::one() {
                    return Err(Error::OutOfRange {
                        what: "shifted value",
                        range: "[0, 1]",
                        value: y.to_string(),
                    });
                }
                let expansion = ContinuedFraction::from_rational(&y)?;
                Ok(match expansion.digits().get(n - 1) {
                    Some(d) => PartialQuotient::Digit(d.clone()),
                    None => PartialQuotient::UndefinedIndex,
                })
            }
            NumberSource::Surd(s) => {
                let y = s.sub_rational(shift);
                if y.cmp_rational(&Rational::zero()) == Ordering::Less
                    || y.cmp_rational(&Rational::one()) == Ordering::Greater
                {
                    return Err(Error::OutOfRange {
                        what: "shifted value",
                        range: "[0, 1]",
                        value: y.to_string(),
                    });
                }
                let digit = y.digits().nth(n - 1).expect("surd digits are infinite");
                Ok(PartialQuotient::Digit(digit))
            }
            NumberSource::Stream(stream) => stream_partial_quotient(stream, shift, n),
        }
    }

    /// An exact interval certified to contain the value, derived from the
    /// first `depth` partial quotients.
    ///
    /// Rational sources collapse to the degenerate point interval once
    /// `depth` reaches their full expansion; stream sources error with
    /// [`Error::Exhausted`] when `depth` exceeds the quotients on hand.
    pub fn enclosing_interval(&self, depth: usize) -> Result<CylinderInterval> {
        match self {
            NumberSource::Rational(v) => {
                let expansion = ContinuedFraction::from_rational(v)?;
                if depth >= expansion.len() {
                    Ok(CylinderInterval {
                        lo: v.clone(),
                        hi: v.clone(),
                        lo_closed: true,
                        hi_closed: true,
                    })
                } else {
                    cylinder(&expansion.digits()[..depth])
                }
            }
            NumberSource::Surd(s) => {
                let digits: Vec<Int> = s.digits().take(depth).collect();
                cylinder(&digits)
            }
            NumberSource::Stream(stream) => {
                let prefix = stream.prefix(depth).ok_or_else(|| {
                    Error::Exhausted(format!(
                        "interval at depth {depth} requested, stream has {}",
                        stream.available_depth().map_or_else(
                            || "unbounded quotients".to_string(),
                            |n| format!("only {n}")
                        )
                    ))
                })?;
                cylinder(&prefix)
            }
        }
    }

    /// Exact comparison of the value against a rational.
    ///
    /// Stream sources refine until the interval separates from `r`; if the
    /// quotients on hand never separate (in particular if the stream is a
    /// rational in disguise equal to `r`), this errors with
    /// [`Error::Exhausted`].
    pub fn cmp_rational(&self, r: &Rational) -> Result<Ordering> {
        match self {
            NumberSource::Rational(v) => Ok(v.cmp(r)),
            NumberSource::Surd(s) => Ok(s.cmp_rational(r)),
            NumberSource::Stream(stream) => {
                for depth in refinement_schedule(stream.max_depth()) {
                    let prefix = match stream.prefix(depth) {
                        Some(p) => p,
                        None => break,
                    };
                    let cyl = cylinder(&prefix)?;
                    // The value is strictly interior to its cylinders.
                    if &cyl.lo >= r {
                        return Ok(Ordering::Greater);
                    }
                    if &cyl.hi <= r {
                        return Ok(Ordering::Less);
                    }
                }
                Err(Error::Exhausted(format!(
                    "stream quotients cannot separate the value from {r}"
                )))
            }
        }
    }
}

/// Escalating refinement depths: double up to the cap, always ending
/// exactly at the cap.
fn refinement_schedule(max_depth: usize) -> impl Iterator<Item = usize> {
    let mut depths = Vec::new();
    let mut d = 8usize;
    while d < max_depth {
        depths.push(d);
        d = d.saturating_mul(2);
    }
    depths.push(max_depth);
    depths.into_iter()
}

fn stream_partial_quotient(
    stream: &Stream,
    shift: &Rational,
    n: usize,
) -> Result<PartialQuotient> {
    for depth in refinement_schedule(stream.max_depth()) {
        let prefix = match stream.prefix(depth) {
            Some(p) => p,
            None => break,
        };
        let cyl = cylinder(&prefix)?;
        // The value is strictly interior to the cylinder; shift the open
        // interior exactly.
        let lo = &cyl.lo - shift;
        let hi = &cyl.hi - shift;
        if !hi.is_positive() {
            return Err(Error::OutOfRange {
                what: "shifted value",
                range: "[0, 1]",
                value: format!("at most {hi}"),
            });
        }
        if lo >= Rational::one() {
            return Err(Error::OutOfRange {
                what: "shifted value",
                range: "[0, 1]",
                value: format!("at least {lo}"),
            });
        }
        if lo.is_negative() || hi > Rational::one() {
            continue; // the shifted value is not yet pinned inside [0, 1]
        }
        let digits = open_interval_prefix(&lo, &hi, n)?;
        if digits.len() >= n {
            return Ok(PartialQuotient::Digit(digits[n - 1].clone()));
        }
    }
    Ok(PartialQuotient::Exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(digits: &[u64]) -> Vec<Int> {
        digits.iter().map(|&d| Int::from(d)).collect()
    }

    fn surd(a: i64, b: i64, d: i64, c: i64) -> Surd {
        Surd::new(Int::from(a), Int::from(b), Int::from(d), Int::from(c)).unwrap()
    }

    #[test]
    fn surd_validation() {
        assert!(Surd::new(Int::from(1), Int::from(1), Int::from(4), Int::from(3)).is_err());
        assert!(Surd::new(Int::from(1), Int::from(0), Int::from(2), Int::from(3)).is_err());
        assert!(Surd::new(Int::from(1), Int::from(1), Int::from(2), Int::from(0)).is_err());
        assert!(Surd::new(Int::from(1), Int::from(1), Int::from(1), Int::from(3)).is_err());
    }

    #[test]
    fn surd_floor_and_compare() {
        let sqrt2 = surd(0, 1, 2, 1);
        assert_eq!(sqrt2.floor(), Int::from(1));
        let neg = surd(0, -1, 2, 1);
        assert_eq!(neg.floor(), Int::from(-2));
        let x = surd(-2, 2, 2, 1); // 2(sqrt 2 - 1) ~ 0.8284
        assert_eq!(x.floor(), Int::from(0));
        assert_eq!(x.cmp_rational(&ratio(4, 5)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&ratio(5, 6)), Ordering::Less);
        assert_eq!(x.cmp_rational(&ratio(0, 1)), Ordering::Greater);
    }

    #[test]
    fn surd_digit_patterns() {
        // sqrt(2) - 1 = [2, 2, 2, ...]
        let x = surd(-1, 1, 2, 1);
        let digits: Vec<Int> = x.digits().take(10).collect();
        assert_eq!(digits, ints(&[2; 10]));

        // (sqrt(5) - 1)/2 = [1, 1, 1, ...]
        let phi = surd(-1, 1, 5, 2);
        let digits: Vec<Int> = phi.digits().take(10).collect();
        assert_eq!(digits, ints(&[1; 10]));

        // 2(sqrt(2) - 1) = [1, 4, 1, 4, ...]
        let y = surd(-2, 2, 2, 1);
        let digits: Vec<Int> = y.digits().take(8).collect();
        assert_eq!(digits, ints(&[1, 4, 1, 4, 1, 4, 1, 4]));

        // sqrt(13) - 3 = [1, 1, 1, 1, 6, ...] (period 5)
        let z = surd(-3, 1, 13, 1);
        let digits: Vec<Int> = z.digits().take(10).collect();
        assert_eq!(digits, ints(&[1, 1, 1, 1, 6, 1, 1, 1, 1, 6]));
    }

    #[test]
    fn e_minus_two_pattern() {
        let s = Stream::e_minus_two();
        let digits: Vec<Int> = (1..=12).map(|i| s.digit(i).unwrap()).collect();
        assert_eq!(digits, ints(&[1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, 1]));
        assert_eq!(s.available_depth(), None);
    }

    #[test]
    fn pi_minus_three_bundled_digits() {
        let src = NumberSource::pi_minus_3();
        for (i, expect) in [7u64, 15, 1, 292, 1, 1, 1, 2].into_iter().enumerate() {
            let got = src.partial_quotient(&ratio(0, 1), i + 1).unwrap();
            assert_eq!(got, PartialQuotient::Digit(Int::from(expect)), "digit {}", i + 1);
        }
        assert!(src.provenance().unwrap().contains("pi"));
    }

    #[test]
    fn rational_partial_quotients() {
        let src = NumberSource::rational(ratio(34, 55)).unwrap();
        let expected = [1u64, 1, 1, 1, 1, 1, 1, 2];
        for (i, e) in expected.into_iter().enumerate() {
            assert_eq!(
                src.partial_quotient(&ratio(0, 1), i + 1).unwrap(),
                PartialQuotient::Digit(Int::from(e))
            );
        }
        assert_eq!(
            src.partial_quotient(&ratio(0, 1), 9).unwrap(),
            PartialQuotient::UndefinedIndex
        );
        // Shifted: 34/55 - 1/2 = 13/110 = [8, 2, 6].
        assert_eq!(
            src.partial_quotient(&ratio(1, 2), 1).unwrap(),
            PartialQuotient::Digit(Int::from(8))
        );
        // Shift past the value is a domain error.
        assert!(src.partial_quotient(&ratio(9, 10), 1).is_err());
    }

    #[test]
    fn value_one_has_expansion_bracket_one() {
        let src = NumberSource::rational(ratio(1, 1)).unwrap();
        assert_eq!(
            src.partial_quotient(&ratio(0, 1), 1).unwrap(),
            PartialQuotient::Digit(Int::one())
        );
        assert_eq!(
            src.partial_quotient(&ratio(0, 1), 2).unwrap(),
            PartialQuotient::UndefinedIndex
        );
        // Shift to exactly zero: the empty expansion.
        assert_eq!(
            src.partial_quotient(&ratio(1, 1), 1).unwrap(),
            PartialQuotient::UndefinedIndex
        );
    }

    #[test]
    fn source_domain_validation() {
        assert!(NumberSource::rational(ratio(0, 1)).is_err());
        assert!(NumberSource::rational(ratio(3, 2)).is_err());
        assert!(NumberSource::rational(ratio(1, 1)).is_ok());
        assert!(NumberSource::surd(surd(-2, 2, 2, 1)).is_ok());
        // sqrt(2) > 1 is out of range.
        assert!(NumberSource::surd(surd(0, 1, 2, 1)).is_err());
        // 1 - sqrt(2) < 0 is out of range.
        assert!(NumberSource::surd(surd(1, -1, 2, 1)).is_err());
    }

    #[test]
    fn open_interval_prefix_examples() {
        let digits = open_interval_prefix(&ratio(3, 5), &ratio(1, 1), 5).unwrap();
        assert_eq!(digits, ints(&[1]));

        let digits = open_interval_prefix(&ratio(15, 106), &ratio(16, 113), 5).unwrap();
        assert_eq!(digits, ints(&[7, 15]));

        let digits = open_interval_prefix(&ratio(0, 1), &ratio(1, 2), 5).unwrap();
        assert!(digits.is_empty());

        // An interval straddling 1/3 decides no digit.
        let digits = open_interval_prefix(&ratio(32, 100), &ratio(34, 100), 5).unwrap();
        assert!(digits.is_empty());

        assert!(open_interval_prefix(&ratio(1, 2), &ratio(1, 3), 5).is_err());
    }

    #[test]
    fn stream_queries_refine_or_exhaust() {
        let s = NumberSource::stream(Stream::from_digits(ints(&[2, 2])).unwrap());
        assert_eq!(
            s.partial_quotient(&ratio(0, 1), 1).unwrap(),
            PartialQuotient::Digit(Int::from(2))
        );
        assert_eq!(
            s.partial_quotient(&ratio(0, 1), 2).unwrap(),
            PartialQuotient::Digit(Int::from(2))
        );
        assert_eq!(
            s.partial_quotient(&ratio(0, 1), 3).unwrap(),
            PartialQuotient::Exhausted
        );

        // Shifting by the value's own cylinder floor leaves the sign of the
        // remainder undecidable: honest exhaustion, not a guess.
        assert_eq!(
            s.partial_quotient(&ratio(2, 5), 1).unwrap(),
            PartialQuotient::Exhausted
        );
    }

    #[test]
    fn stream_cmp_and_intervals() {
        let pi = NumberSource::pi_minus_3();
        assert_eq!(pi.cmp_rational(&ratio(1, 7)).unwrap(), Ordering::Less);
        assert_eq!(pi.cmp_rational(&ratio(1, 8)).unwrap(), Ordering::Greater);
        let i4 = pi.enclosing_interval(4).unwrap();
        let i5 = pi.enclosing_interval(5).unwrap();
        assert!(i4.lo <= i5.lo && i5.hi <= i4.hi, "deeper intervals nest");
        assert!(NumberSource::pi_minus_3().enclosing_interval(100_000).is_err());

        let r = NumberSource::rational(ratio(34, 55)).unwrap();
        let exact = r.enclosing_interval(8).unwrap();
        assert_eq!(exact.lo, ratio(34, 55));
        assert_eq!(exact.hi, ratio(34, 55));
        assert!(exact.lo_closed && exact.hi_closed);
        let partial = r.enclosing_interval(3).unwrap();
        assert!(partial.contains(&ratio(34, 55)));
    }

    #[test]
    fn parse_literal_forms() {
        assert!(matches!(
            NumberSource::parse_literal("34/55").unwrap(),
            NumberSource::Rational(v) if v == ratio(34, 55)
        ));
        assert!(matches!(
            NumberSource::parse_literal("1").unwrap(),
            NumberSource::Rational(v) if v == ratio(1, 1)
        ));
        assert!(matches!(
            NumberSource::parse_literal("[2,37]").unwrap(),
            NumberSource::Rational(v) if v == ratio(37, 75)
        ));
        assert!(matches!(
            NumberSource::parse_literal("surd:-2,2,2,1").unwrap(),
            NumberSource::Surd(_)
        ));
        assert!(matches!(
            NumberSource::parse_literal("e-2").unwrap(),
            NumberSource::Stream(_)
        ));
        assert!(matches!(
            NumberSource::parse_literal("pi-3").unwrap(),
            NumberSource::Stream(_)
        ));
        assert!(NumberSource::parse_literal("surd:1,2,3").is_err());
        assert!(NumberSource::parse_literal("nonsense").is_err());
        assert!(NumberSource::parse_literal("0/5").is_err());
        assert!(NumberSource::parse_literal("stream:/no/such/file").is_err());
    }

    #[test]
    fn stream_text_format() {
        let text = "# digits of something\n7\n15 # trailing note\n\n1\n292\n";
        let s = Stream::from_text(text).unwrap();
        assert_eq!(s.available_depth(), Some(4));
        assert_eq!(s.digit(2), Some(Int::from(15)));
        assert_eq!(s.provenance(), Some("digits of something"));
        assert!(Stream::from_text("3\n0\n").is_err());
        assert!(Stream::from_text("# only comments\n").is_err());
        assert!(Stream::from_text("3\nx\n").is_err());
    }
}
