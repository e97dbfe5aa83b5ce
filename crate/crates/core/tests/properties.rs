//! Randomized structural checks for the expansion, interval, and
//! decomposition machinery.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;

use cfsum_core::cf::{
    continuant, continuant_ratio_bound, cylinder, ContinuedFraction, ConvergentPair,
};
use cfsum_core::decompose::{decompose, Termination};
use cfsum_core::rational::{Int, Rational};
use cfsum_core::source::{NumberSource, PartialQuotient, Surd};

fn ints(digits: &[u64]) -> Vec<Int> {
    digits.iter().map(|&d| Int::from(d)).collect()
}

fn big_ratio(p: u64, q: u64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

/// Value of a raw digit string (no canonicalization involved).
fn raw_value(digits: &[Int]) -> Rational {
    let mut conv = ConvergentPair::new();
    for d in digits {
        conv.push(d);
    }
    conv.value()
}

proptest! {
    #[test]
    fn expansion_round_trips(q in 1u64..=1_000_000, p_seed in any::<u64>()) {
        let p = p_seed % (q + 1);
        let x = big_ratio(p, q);
        let cf = ContinuedFraction::from_rational(&x).unwrap();
        prop_assert_eq!(cf.value(), x.clone());
        // Canonical form: empty for zero, the lone [1] for one, and
        // otherwise a final digit >= 2.
        if x.is_zero() {
            prop_assert!(cf.is_empty());
        } else if x.is_one() {
            prop_assert_eq!(cf.digits(), &ints(&[1])[..]);
        } else {
            prop_assert!(cf.digits().last().unwrap() >= &Int::from(2));
        }
        prop_assert!(cf.digits().iter().all(|d| d >= &Int::one()));
    }

    #[test]
    fn continuants_are_symmetric(digits in prop::collection::vec(1u64..=1000, 0..=20)) {
        let forward = ints(&digits);
        let mut backward = forward.clone();
        backward.reverse();
        prop_assert_eq!(continuant(&forward).unwrap(), continuant(&backward).unwrap());
    }

    #[test]
    fn continuants_split(
        digits in prop::collection::vec(1u64..=50, 2..=12),
        j_seed in any::<usize>(),
    ) {
        // K(a_1..a_n) = K(a_1..a_j) K(a_{j+1}..a_n)
        //             + K(a_1..a_{j-1}) K(a_{j+2}..a_n).
        let d = ints(&digits);
        let n = d.len();
        let j = 1 + j_seed % (n - 1);
        let whole = continuant(&d).unwrap();
        let split = continuant(&d[..j]).unwrap() * continuant(&d[j..]).unwrap()
            + continuant(&d[..j - 1]).unwrap() * continuant(&d[j + 1..]).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn cylinders_have_unit_fraction_length(digits in prop::collection::vec(1u64..=20, 1..=8)) {
        let d = ints(&digits);
        let cyl = cylinder(&d).unwrap();
        let mut conv = ConvergentPair::new();
        for digit in &d {
            conv.push(digit);
        }
        let expected = Rational::new(Int::one(), conv.den() * (conv.den() + conv.prev_den()));
        prop_assert_eq!(cyl.length(), expected);
        // The block value is the closed end, the mediant the open end.
        prop_assert!(cyl.contains(&conv.value()));
        prop_assert!(!cyl.contains(&conv.mediant()));
    }

    #[test]
    fn ratio_bound_is_a_lower_bound(
        pairs in prop::collection::vec((1u64..=30, 0u64..=20), 2..=10),
        split_seed in any::<usize>(),
    ) {
        let c: Vec<Int> = pairs.iter().map(|&(base, _)| Int::from(base)).collect();
        let b: Vec<Int> = pairs.iter().map(|&(base, inc)| Int::from(base + inc)).collect();
        let split = 1 + split_seed % (pairs.len() - 1);
        let bound = continuant_ratio_bound(&b, &c, split).unwrap();
        let actual = Rational::new(continuant(&b).unwrap(), continuant(&c).unwrap());
        prop_assert!(actual >= bound, "K(b)/K(c) = {} < bound {}", actual, bound);
    }

    #[test]
    fn single_digit_bumps_alternate_direction(
        digits in prop::collection::vec(1u64..=20, 1..=8),
        pos_seed in any::<usize>(),
        bump in 1u64..=10,
    ) {
        // Raising the digit at (1-based) position i lowers the value for
        // odd i and raises it for even i.
        let d = ints(&digits);
        let i = pos_seed % d.len();
        let mut bumped = d.clone();
        bumped[i] += Int::from(bump);
        let before = raw_value(&d);
        let after = raw_value(&bumped);
        if i % 2 == 0 {
            prop_assert!(after < before);
        } else {
            prop_assert!(after > before);
        }
    }

    #[test]
    fn shifted_quotients_match_direct_expansion(
        xq in 1u64..=1000,
        xp_seed in any::<u64>(),
        sq in 1u64..=1000,
        sp_seed in any::<u64>(),
    ) {
        let xp = 1 + xp_seed % xq;
        let x = big_ratio(xp, xq);
        let sp = sp_seed % (sq + 1);
        let shift = big_ratio(sp, sq);
        prop_assume!(shift <= x);
        let src = NumberSource::rational(x.clone()).unwrap();
        let y = &x - &shift;
        let expected = ContinuedFraction::from_rational(&y).unwrap();
        for n in 1..=4usize {
            let got = src.partial_quotient(&shift, n).unwrap();
            match expected.digits().get(n - 1) {
                Some(d) => prop_assert_eq!(got, PartialQuotient::Digit(d.clone())),
                None => prop_assert_eq!(got, PartialQuotient::UndefinedIndex),
            }
        }
    }

    #[test]
    fn surd_digit_prefixes_pin_the_value(
        d in 2u64..=50,
        a_seed in -20i64..=20,
        c in 1i64..=20,
    ) {
        let root = (d as f64).sqrt();
        prop_assume!(root.fract() > 1e-9); // skip perfect squares
        // Aim (a + sqrt(d))/c into (0, 1): need -sqrt(d) < a < c - sqrt(d).
        let a = a_seed;
        prop_assume!((a as f64) > -root && (a as f64) < c as f64 - root);
        let surd = Surd::new(Int::from(a), Int::from(1), Int::from(d), Int::from(c)).unwrap();
        // Every digit prefix must produce a cylinder that strictly
        // contains the value — that pins each digit uniquely.
        let digits: Vec<Int> = surd.digits().take(8).collect();
        for len in 1..=digits.len() {
            let cyl = cylinder(&digits[..len]).unwrap();
            prop_assert_eq!(surd.cmp_rational(&cyl.lo), Ordering::Greater);
            prop_assert_eq!(surd.cmp_rational(&cyl.hi), Ordering::Less);
        }
    }

    #[test]
    fn enclosing_intervals_nest(q in 1u64..=10_000, p_seed in any::<u64>()) {
        let p = 1 + p_seed % q;
        let x = big_ratio(p, q);
        let src = NumberSource::rational(x.clone()).unwrap();
        let depth_cap = ContinuedFraction::from_rational(&x).unwrap().digits().len();
        let mut previous: Option<cfsum_core::cf::CylinderInterval> = None;
        for depth in 0..=depth_cap.min(6) {
            let interval = src.enclosing_interval(depth).unwrap();
            prop_assert!(interval.contains(&x), "depth {}: {} not in {}", depth, x, interval);
            if let Some(outer) = previous {
                prop_assert!(interval.lo >= outer.lo && interval.hi <= outer.hi);
            }
            previous = Some(interval);
        }
    }

    #[test]
    fn random_rationals_decompose_cleanly(q in 2u64..=2000, p_seed in any::<u64>()) {
        let p = 1 + p_seed % (q - 1);
        let x = big_ratio(p, q);
        let src = NumberSource::rational(x.clone()).unwrap();
        // All certificate checks are on by default; any violation errors.
        let result = decompose(&src, 64).unwrap();
        prop_assert_eq!(result.termination, Termination::ExactFinite);
        prop_assert_eq!(result.sum(), x);
        prop_assert_eq!(result.steps, result.b.digits().len());
        prop_assert_eq!(result.diagnostics.len(), result.steps);
        for (b, c) in result.b.digits().iter().zip(result.c.digits()) {
            prop_assert!(b >= c);
        }
        for w in result.diagnostics.windows(2) {
            prop_assert!(w[1].error_bound < w[0].error_bound);
        }
    }
}
