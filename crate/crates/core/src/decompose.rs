//! Splitting a number into a sum of two continued fractions with large
//! partial quotients.
//!
//! Given `x` in `(0, 1]`, the construction builds two expansions
//! `[c_1, c_2, ...]` and `[b_1, b_2, ...]` whose convergents `p_n/q_n` and
//! `s_n/t_n` satisfy `x ≈ p_n/q_n + s_n/t_n`, by alternating two greedy
//! digit choices:
//!
//! ```text
//! c_1 = a_1(x) + 1,
//! b_n = a_n(x - p_n/q_n),           n = 1, 2, ...
//! c_{n+1} = a_{n+1}(x - s_n/t_n) + 1,
//! ```
//!
//! where `a_j(y)` is the `j`-th partial quotient of `y`. The `+1` on the
//! `c` side keeps each remainder strictly inside the cylinder it is read
//! from, which forces every partial quotient of both outputs to be at
//! least as large as the corresponding first-expansion digit — that is
//! the whole point: for `x <= 1/(k-1)` all digits come out `>= k`.
//!
//! A run terminates three ways:
//!
//! * [`Termination::ExactFinite`] — a remainder ran out of partial
//!   quotients, so `x` equals the finite sum exactly (only rationals do
//!   this);
//! * [`Termination::DepthReached`] — `max_steps` full steps completed;
//! * [`Termination::SourceExhausted`] — a stream source could not decide
//!   the next digit.
//!
//! Each completed step `n` is certified on the spot (unless opted out):
//! dominance `b_n >= c_n`, the two defining step inequalities
//!
//! ```text
//! q_n q_{n-1} > t_{n-1} (t_{n-1} + t_{n-2}),
//! t_{n-1} (t_n + t_{n-1}) > q_n (q_n - q_{n-1}),
//! ```
//!
//! the strictly shrinking error bound `1/(t_n (t_n + t_{n-1}))`, and — for
//! sources that can decide it — the exact residual inequality
//! `|x - p_n/q_n - s_n/t_n| < 1/(t_n (t_n + t_{n-1}))`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::cf::{ContinuedFraction, ConvergentPair};
use crate::rational::{Int, Rational};
use crate::source::{NumberSource, PartialQuotient};
use crate::{Error, Result};

/// How a decomposition run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The sum of the two finite expansions equals the input exactly.
    ExactFinite,
    /// `max_steps` full steps were completed.
    DepthReached,
    /// The source could not decide the next partial quotient.
    SourceExhausted,
}

impl Termination {
    /// Stable lowercase name (used by serialized reports).
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::ExactFinite => "exact_finite",
            Termination::DepthReached => "depth_reached",
            Termination::SourceExhausted => "source_exhausted",
        }
    }
}

/// Exact per-step certificate data for step `n`.
///
/// `ck_lower_bound` is the strict lower bound the *next* `c` digit must
/// exceed, `(t_n^2 + t_n t_{n-1} - q_{n-1} q_n) / q_n^2`; `bk_lower_bound`
/// is the strict lower bound this step's `b_n` must exceed,
/// `(q_n^2 - q_{n-1} q_n - t_{n-1}^2 - t_{n-2} t_{n-1}) / t_{n-1}^2`. Both
/// are rational restatements of the two step inequalities, reported so a
/// consumer can see how much slack each step had.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDiagnostics {
    /// 1-based step index `n`.
    pub index: usize,
    /// The digit `c_n`.
    pub c_digit: Int,
    /// The digit `b_n`.
    pub b_digit: Int,
    /// Convergent `p_n/q_n` of the `c` expansion.
    pub p_over_q: Rational,
    /// Convergent `s_n/t_n` of the `b` expansion.
    pub s_over_t: Rational,
    /// Strict lower bound for `c_{n+1}`.
    pub ck_lower_bound: Rational,
    /// Strict lower bound that `b_n` was checked against.
    pub bk_lower_bound: Rational,
    /// Certified error bound `1/(t_n (t_n + t_{n-1}))` for the partial sum.
    pub error_bound: Rational,
}

/// In-flight decomposition state: both digit lists and both convergent
/// pairs.
#[derive(Debug, Clone, Default)]
pub struct DecompositionState {
    c: Vec<Int>,
    b: Vec<Int>,
    pq: ConvergentPair,
    st: ConvergentPair,
}

impl DecompositionState {
    /// Digits `c_1, ..., c_N` chosen so far.
    pub fn c_digits(&self) -> &[Int] {
        &self.c
    }

    /// Digits `b_1, ..., b_M` chosen so far (`M` is `N` or `N - 1`).
    pub fn b_digits(&self) -> &[Int] {
        &self.b
    }

    /// Convergent state of the `c` expansion.
    pub fn pq(&self) -> &ConvergentPair {
        &self.pq
    }

    /// Convergent state of the `b` expansion.
    pub fn st(&self) -> &ConvergentPair {
        &self.st
    }

    /// Completed steps (= number of `b` digits).
    pub fn steps(&self) -> usize {
        self.b.len()
    }
}

/// The certified error bound `1/(t_n (t_n + t_{n-1}))` of the current
/// state; errors with [`Error::NoSteps`] before the first full step.
pub fn error_bound(state: &DecompositionState) -> Result<Rational> {
    if state.st.count() == 0 {
        return Err(Error::NoSteps);
    }
    let t = state.st.den();
    let t_prev = state.st.prev_den();
    Ok(Rational::new(Int::one(), t * (t + t_prev)))
}

/// Result of a decomposition run.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    /// The first expansion (digits `c_i`).
    pub c: ContinuedFraction,
    /// The second expansion (digits `b_i`).
    pub b: ContinuedFraction,
    /// How the run ended.
    pub termination: Termination,
    /// Completed steps (pairs of digits).
    pub steps: usize,
    /// Final convergent of the `c` expansion — the exact value of `c`.
    pub p_over_q: Rational,
    /// Final convergent of the `b` expansion — the exact value of `b`.
    pub s_over_t: Rational,
    /// Valid upper bound on `|x - p/q - s/t|`: zero for exact runs, the
    /// final certified step bound otherwise (1 if no step completed).
    pub achieved_error: Rational,
    /// Per-step certificates.
    pub diagnostics: Vec<StepDiagnostics>,
    /// Whether the merged digit sequence `c_1, b_1, c_2, b_2, ...` came out
    /// non-decreasing in this run. Recorded as an observation only; nothing
    /// is asserted about it.
    pub merged_nondecreasing: bool,
}

impl DecompositionResult {
    /// The exact sum of the two finite expansions.
    pub fn sum(&self) -> Rational {
        &self.p_over_q + &self.s_over_t
    }
}

/// Knobs for a decomposition run.
#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    /// Maximum number of full steps (must be `>= 1`).
    pub max_steps: usize,
    /// Verify the per-step certificates while running (on by default; turn
    /// off only to time the bare recursion).
    pub check_invariants: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            max_steps: 64,
            check_invariants: true,
        }
    }
}

/// Digit floors asserted during a run (beyond the always-true `c_i >= 2`,
/// `b_i >= c_i`).
#[derive(Debug, Clone, Default)]
struct DigitRequirements {
    c_min: Option<Int>,
    b_min: Option<Int>,
    /// Assert `c_{n+1} >= (c_1 - 1)^2` whenever `c_1 >= 3`.
    growth_from_c1: bool,
}

/// Runs the plain construction with default certificate checks.
pub fn decompose(src: &NumberSource, max_steps: usize) -> Result<DecompositionResult> {
    decompose_with(
        src,
        &DecomposeOptions {
            max_steps,
            ..Default::default()
        },
    )
}

/// Runs the plain construction with explicit options.
pub fn decompose_with(src: &NumberSource, opts: &DecomposeOptions) -> Result<DecompositionResult> {
    run(src, &DigitRequirements::default(), opts)
}

/// Decomposition with a uniform digit floor: requires the source value in
/// `(0, 1/(k-1)]` and asserts that every produced digit of both expansions
/// is `>= k`; when `c_1 >= 3`, additionally asserts the growth law
/// `c_{n+1} >= (c_1 - 1)^2`.
pub fn decompose_checked(src: &NumberSource, k: u64, max_steps: usize) -> Result<DecompositionResult> {
    decompose_checked_with(
        src,
        k,
        &DecomposeOptions {
            max_steps,
            ..Default::default()
        },
    )
}

/// [`decompose_checked`] with explicit options.
pub fn decompose_checked_with(
    src: &NumberSource,
    k: u64,
    opts: &DecomposeOptions,
) -> Result<DecompositionResult> {
    if k < 2 {
        return Err(Error::InvalidParams(format!(
            "uniform digit floor needs k >= 2, got {k}"
        )));
    }
    let upper = Rational::new(Int::one(), Int::from(k - 1));
    require_at_most(src, &upper, "(0, 1/(k-1)]")?;
    let req = DigitRequirements {
        c_min: Some(Int::from(k)),
        b_min: Some(Int::from(k)),
        growth_from_c1: true,
    };
    run(src, &req, opts)
}

/// Decomposition with split digit floors `c_i >= m`, `b_i >= n`.
///
/// Supported parameter ranges, with the matching input intervals:
///
/// * `3 <= m < n <= (m-1)^2` — source value in `(0, 1/(m-1)]`;
/// * `n = m^2`, `m >= 2` — source value in `(0, (m+1)/m^2]`.
pub fn decompose_mixed(
    src: &NumberSource,
    m: u64,
    n: u64,
    max_steps: usize,
) -> Result<DecompositionResult> {
    decompose_mixed_with(
        src,
        m,
        n,
        &DecomposeOptions {
            max_steps,
            ..Default::default()
        },
    )
}

/// [`decompose_mixed`] with explicit options.
pub fn decompose_mixed_with(
    src: &NumberSource,
    m: u64,
    n: u64,
    opts: &DecomposeOptions,
) -> Result<DecompositionResult> {
    let square = m.checked_mul(m).ok_or_else(|| {
        Error::InvalidParams(format!("digit floor m = {m} too large"))
    })?;
    if n == square && m >= 2 {
        // Interval (0, (m+1)/m^2].
        let upper = Rational::new(Int::from(m + 1), Int::from(square));
        require_at_most(src, &upper, "(0, (m+1)/m^2]")?;
    } else if m >= 3 && m < n && n <= (m - 1) * (m - 1) {
        let upper = Rational::new(Int::one(), Int::from(m - 1));
        require_at_most(src, &upper, "(0, 1/(m-1)]")?;
    } else {
        return Err(Error::InvalidParams(format!(
            "unsupported floor pair (m, n) = ({m}, {n}); need 3 <= m < n <= (m-1)^2 or n = m^2 with m >= 2"
        )));
    }
    let req = DigitRequirements {
        c_min: Some(Int::from(m)),
        b_min: Some(Int::from(n)),
        growth_from_c1: false,
    };
    run(src, &req, opts)
}

fn require_at_most(src: &NumberSource, upper: &Rational, range: &'static str) -> Result<()> {
    if src.cmp_rational(upper)? == Ordering::Greater {
        return Err(Error::OutOfRange {
            what: "source value",
            range,
            value: src.describe(),
        });
    }
    Ok(())
}

fn violation(step: usize, what: impl Into<String>) -> Error {
    Error::InvariantViolation {
        step,
        what: what.into(),
    }
}

/// The alternating digit recursion shared by all public entry points.
fn run(
    src: &NumberSource,
    req: &DigitRequirements,
    opts: &DecomposeOptions,
) -> Result<DecompositionResult> {
    if opts.max_steps == 0 {
        return Err(Error::InvalidParams("max_steps must be >= 1".into()));
    }
    let check = opts.check_invariants;
    let mut state = DecompositionState::default();
    let mut diagnostics: Vec<StepDiagnostics> = Vec::new();

    // Opening digit: c_1 = a_1(x) + 1. Sources are positive, so the first
    // partial quotient of x itself always exists.
    let termination = match src.partial_quotient(&Rational::zero(), 1)? {
        PartialQuotient::Digit(a1) => {
            push_c(&mut state, a1 + Int::one(), req, check)?;
            drive(src, &mut state, &mut diagnostics, req, opts)?
        }
        PartialQuotient::UndefinedIndex => {
            return Err(violation(0, "first partial quotient undefined for a positive source"))
        }
        PartialQuotient::Exhausted => Termination::SourceExhausted,
    };

    let achieved_error = match termination {
        Termination::ExactFinite => Rational::zero(),
        _ if state.st.count() == 0 => Rational::one(),
        _ => error_bound(&state)?,
    };

    if check && termination == Termination::ExactFinite {
        // Exact termination is only possible for rational inputs, where the
        // claimed identity can be confirmed outright.
        let sum = state.pq.value() + state.st.value();
        match src.exact_value_if_rational() {
            Some(x) if *x == sum => {}
            Some(x) => {
                return Err(violation(
                    state.steps(),
                    format!("exact termination but {} + {} != {}", state.pq.value(), state.st.value(), x),
                ))
            }
            None => {
                return Err(violation(
                    state.steps(),
                    "exact termination reported for a source with no exact rational value",
                ))
            }
        }
    }

    let merged_nondecreasing = merged_is_nondecreasing(&state.c, &state.b);
    Ok(DecompositionResult {
        c: ContinuedFraction::new(state.c.clone())?,
        b: ContinuedFraction::new(state.b.clone())?,
        termination,
        steps: state.b.len(),
        p_over_q: state.pq.value(),
        s_over_t: state.st.value(),
        achieved_error,
        diagnostics,
        merged_nondecreasing,
    })
}

/// Main loop: alternate `b_n` and `c_{n+1}` queries until termination.
fn drive(
    src: &NumberSource,
    state: &mut DecompositionState,
    diagnostics: &mut Vec<StepDiagnostics>,
    req: &DigitRequirements,
    opts: &DecomposeOptions,
) -> Result<Termination> {
    let check = opts.check_invariants;
    loop {
        let n = state.c.len();
        debug_assert_eq!(state.b.len() + 1, n);

        // b_n: the n-th partial quotient of x - p_n/q_n.
        match src.partial_quotient(&state.pq.value(), n)? {
            PartialQuotient::UndefinedIndex => return Ok(Termination::ExactFinite),
            PartialQuotient::Exhausted => return Ok(Termination::SourceExhausted),
            PartialQuotient::Digit(b_n) => {
                complete_step(src, state, diagnostics, b_n, req, check)?;
            }
        }
        if state.b.len() == opts.max_steps {
            return Ok(Termination::DepthReached);
        }

        // c_{n+1}: one more than the (n+1)-th partial quotient of x - s_n/t_n.
        match src.partial_quotient(&state.st.value(), n + 1)? {
            PartialQuotient::UndefinedIndex => return Ok(Termination::ExactFinite),
            PartialQuotient::Exhausted => return Ok(Termination::SourceExhausted),
            PartialQuotient::Digit(a) => {
                push_c(state, a + Int::one(), req, check)?;
            }
        }
    }
}

fn push_c(state: &mut DecompositionState, digit: Int, req: &DigitRequirements, check: bool) -> Result<()> {
    let index = state.c.len() + 1;
    if check {
        if digit < Int::from(2) {
            return Err(violation(index, format!("c_{index} = {digit} < 2")));
        }
        if let Some(c_min) = &req.c_min {
            if &digit < c_min {
                return Err(violation(
                    index,
                    format!("digit floor violated: c_{index} = {digit} < {c_min}"),
                ));
            }
        }
        if req.growth_from_c1 && index >= 2 {
            let c1 = &state.c[0];
            if c1 >= &Int::from(3) {
                let base = c1 - Int::one();
                let needed = &base * &base;
                if digit < needed {
                    return Err(violation(
                        index,
                        format!("growth law violated: c_{index} = {digit} < (c_1 - 1)^2 = {needed}"),
                    ));
                }
            }
        }
    }
    state.pq.push(&digit);
    state.c.push(digit);
    Ok(())
}

/// Installs `b_n`, running every step certificate that is decidable.
fn complete_step(
    src: &NumberSource,
    state: &mut DecompositionState,
    diagnostics: &mut Vec<StepDiagnostics>,
    b_n: Int,
    req: &DigitRequirements,
    check: bool,
) -> Result<()> {
    let n = state.c.len();
    let c_n = state.c[n - 1].clone();

    // Values before the push: q_n, q_{n-1} from pq; t_{n-1}, t_{n-2} from st.
    let q_n = state.pq.den().clone();
    let q_prev = state.pq.prev_den().clone();
    let t_prev = state.st.den().clone();
    let t_prev2 = state.st.prev_den().clone();

    if check {
        if b_n < c_n {
            return Err(violation(n, format!("dominance violated: b_{n} = {b_n} < c_{n} = {c_n}")));
        }
        if let Some(b_min) = &req.b_min {
            if &b_n < b_min {
                return Err(violation(
                    n,
                    format!("digit floor violated: b_{n} = {b_n} < {b_min}"),
                ));
            }
        }
        // q_n q_{n-1} > t_{n-1} (t_{n-1} + t_{n-2}), as integers.
        let lhs = &q_n * &q_prev;
        let rhs = &t_prev * (&t_prev + &t_prev2);
        if lhs <= rhs {
            return Err(violation(
                n,
                format!("step inequality failed: q_n q_(n-1) = {lhs} <= t_(n-1)(t_(n-1)+t_(n-2)) = {rhs}"),
            ));
        }
    }

    // Strict lower bound b_n was (implicitly) checked against; reported in
    // the diagnostics in rational form.
    let bk_lower_bound = Rational::new(
        &q_n * &q_n - &q_prev * &q_n - &t_prev * &t_prev - &t_prev2 * &t_prev,
        &t_prev * &t_prev,
    );

    let prev_bound = if state.st.count() == 0 {
        None
    } else {
        Some(error_bound(state)?)
    };

    state.st.push(&b_n);
    state.b.push(b_n.clone());

    let t_n = state.st.den().clone();
    let bound = error_bound(state)?;

    if check {
        // t_{n-1} (t_n + t_{n-1}) > q_n (q_n - q_{n-1}), as integers.
        let lhs = &t_prev * (&t_n + &t_prev);
        let rhs = &q_n * (&q_n - &q_prev);
        if lhs <= rhs {
            return Err(violation(
                n,
                format!("step inequality failed: t_(n-1)(t_n+t_(n-1)) = {lhs} <= q_n(q_n-q_(n-1)) = {rhs}"),
            ));
        }
        if let Some(prev) = &prev_bound {
            if &bound >= prev {
                return Err(violation(
                    n,
                    format!("error bound did not shrink: {bound} >= {prev}"),
                ));
            }
        }
        check_residual(src, state, &bound, n)?;
    }

    let ck_lower_bound = Rational::new(
        &t_n * &t_n + &t_n * &t_prev - &q_prev * &q_n,
        &q_n * &q_n,
    );

    diagnostics.push(StepDiagnostics {
        index: n,
        c_digit: c_n,
        b_digit: b_n,
        p_over_q: state.pq.value(),
        s_over_t: state.st.value(),
        ck_lower_bound,
        bk_lower_bound,
        error_bound: bound,
    });
    Ok(())
}

/// Verifies `|x - p_n/q_n - s_n/t_n| < bound` when the source can decide
/// it; stream sources that cannot separate simply skip the check.
fn check_residual(
    src: &NumberSource,
    state: &DecompositionState,
    bound: &Rational,
    n: usize,
) -> Result<()> {
    let sum = state.pq.value() + state.st.value();
    let lo = &sum - bound;
    let hi = &sum + bound;
    let above = match src.cmp_rational(&lo) {
        Ok(ord) => ord == Ordering::Greater,
        Err(Error::Exhausted(_)) => return Ok(()),
        Err(e) => return Err(e),
    };
    let below = match src.cmp_rational(&hi) {
        Ok(ord) => ord == Ordering::Less,
        Err(Error::Exhausted(_)) => return Ok(()),
        Err(e) => return Err(e),
    };
    if !(above && below) {
        return Err(violation(
            n,
            format!("residual bound failed: |x - {sum}| not < {bound}"),
        ));
    }
    Ok(())
}

fn merged_is_nondecreasing(c: &[Int], b: &[Int]) -> bool {
    let mut merged: Vec<&Int> = Vec::with_capacity(c.len() + b.len());
    for i in 0..c.len().max(b.len()) {
        if let Some(ci) = c.get(i) {
            merged.push(ci);
        }
        if let Some(bi) = b.get(i) {
            merged.push(bi);
        }
    }
    merged.windows(2).all(|w| w[0] <= w[1])
}
