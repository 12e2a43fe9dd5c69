//! Subtractive Euclidean dynamics on the nonnegative quadrant of the plane,
//! their matrix bookkeeping, and the bridge to classical continued-fraction
//! digits.
//!
//! One step subtracts the smaller coordinate from the larger; which branch
//! fired is recorded as a letter, and the letters accumulate into a product
//! of the two elementary unipotent matrices. The column cone of that product
//! is exactly the set of starting vectors sharing the letter prefix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{IMatrix, Int, RVector, Rat};
use num_traits::{Signed, Zero};

/// Branch letter of one subtractive step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EStep {
    /// First branch: first coordinate at least the second; subtract second
    /// from first. Matrix `[[1,1],[0,1]]`.
    B1,
    /// Second branch: strictly smaller first coordinate; subtract first from
    /// second. Matrix `[[1,0],[1,1]]`.
    B2,
}

/// `[[1,1],[0,1]]`: the matrix whose column cone is the first branch region.
pub fn b1_matrix() -> IMatrix {
    IMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]])
}

/// `[[1,0],[1,1]]`: the matrix whose column cone is the second branch region.
pub fn b2_matrix() -> IMatrix {
    IMatrix::from_i64_rows(&[vec![1, 0], vec![1, 1]])
}

pub fn step_matrix(s: EStep) -> IMatrix {
    match s {
        EStep::B1 => b1_matrix(),
        EStep::B2 => b2_matrix(),
    }
}

fn check_plane_nonneg(v: &RVector) -> Result<()> {
    if v.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "plane step needs a 2-vector, got length {}",
            v.len()
        )));
    }
    if !v.is_nonnegative() {
        return Err(Error::OutOfDomain(format!("negative coordinate in {v}")));
    }
    Ok(())
}

/// One subtractive step. Ties take the first branch, so `(c,c) -> (0,c)`.
pub fn e_step(v: &RVector) -> Result<(RVector, EStep)> {
    check_plane_nonneg(v)?;
    let (a, b) = (&v[0], &v[1]);
    if a >= b {
        Ok((RVector::new(vec![a - b, b.clone()]), EStep::B1))
    } else {
        Ok((RVector::new(vec![a.clone(), b - a]), EStep::B2))
    }
}

/// Sorted variant: returns `(min, max - min)`. On ties the two coordinates
/// are already equal and the result is `(c, 0)`.
pub fn e_sigma_step(v: &RVector) -> Result<RVector> {
    check_plane_nonneg(v)?;
    let (a, b) = (&v[0], &v[1]);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Ok(RVector::new(vec![lo.clone(), hi - lo]))
}

/// Variant on the sorted domain `0 <= v1 <= v2`: subtract the first
/// coordinate from the second, then restore sortedness.
pub fn e_pi_step(v: &RVector) -> Result<RVector> {
    check_plane_nonneg(v)?;
    if v[0] > v[1] {
        return Err(Error::OutOfDomain(format!("{v} is not sorted ascending")));
    }
    let rest = &v[1] - &v[0];
    if v[0] <= rest {
        Ok(RVector::new(vec![v[0].clone(), rest]))
    } else {
        Ok(RVector::new(vec![rest, v[0].clone()]))
    }
}

/// A finite subtractive expansion: the branch letters, the accumulated
/// matrix product (whose column cone contains the starting vector), and
/// whether the expansion stopped because a coordinate reached zero.
#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    pub steps: Vec<EStep>,
    pub cone: IMatrix,
    pub terminated: bool,
    pub final_vector: RVector,
}

/// Runs up to `depth` subtractive steps from `v`, stopping early when a
/// coordinate reaches zero.
pub fn expansion(v: &RVector, depth: usize) -> Result<Expansion> {
    check_plane_nonneg(v)?;
    let mut cur = v.clone();
    let mut steps = Vec::new();
    let mut cone = IMatrix::identity(2);
    let mut terminated = false;
    for _ in 0..depth {
        if cur.iter().any(|c| c.is_zero()) {
            terminated = true;
            break;
        }
        let (next, s) = e_step(&cur)?;
        cone = cone.mul(&step_matrix(s))?;
        steps.push(s);
        cur = next;
    }
    if !terminated && cur.iter().any(|c| c.is_zero()) {
        terminated = true;
    }
    // The column cone must still contain the start: cur has nonnegative
    // coordinates and cone * cur reconstructs v.
    debug_assert_eq!(cone.apply(&cur).unwrap(), *v);
    Ok(Expansion {
        steps,
        cone,
        terminated,
        final_vector: cur,
    })
}

/// Converts branch letters to continued-fraction digits `[a0; a1, a2, ...]`
/// of the coordinate ratio: `a0` counts leading first-branch letters (zero
/// if the expansion opens with the second branch), and subsequent digits are
/// the alternating run lengths. For terminated expansions the trailing
/// digit 1 is folded into its predecessor so the digits match the canonical
/// division-based expansion.
pub fn cf_digits(e: &Expansion) -> Result<Vec<u64>> {
    if e.steps.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    let mut blocks: Vec<(EStep, u64)> = Vec::new();
    for &s in &e.steps {
        match blocks.last_mut() {
            Some((letter, count)) if *letter == s => *count += 1,
            _ => blocks.push((s, 1)),
        }
    }
    let mut digits: Vec<u64> = Vec::new();
    if blocks[0].0 == EStep::B2 {
        digits.push(0);
    }
    digits.extend(blocks.iter().map(|&(_, c)| c));
    if e.terminated && digits.len() >= 2 && *digits.last().unwrap() == 1 {
        digits.pop();
        *digits.last_mut().unwrap() += 1;
    }
    Ok(digits)
}

/// Division-based continued-fraction digits of `p/q` with the canonical
/// convention that the last digit exceeds 1 (except for `p/q` integral).
/// Requires `p >= 0` and `q > 0`.
pub fn cf_floor(p: &Int, q: &Int) -> Result<Vec<u64>> {
    if q.is_zero() || q.is_negative() || p.is_negative() {
        return Err(Error::OutOfDomain(format!(
            "continued fraction wants p >= 0, q > 0; got {p}/{q}"
        )));
    }
    let mut digits = Vec::new();
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (quot, rem) = num_integer::div_rem(a.clone(), b.clone());
        let d: u64 = quot
            .try_into()
            .map_err(|_| Error::OutOfDomain("digit exceeds u64".into()))?;
        digits.push(d);
        a = b;
        b = rem;
    }
    Ok(digits)
}

/// Evaluates `[a0; a1, ...]` back to a rational (test oracle for digit
/// conventions).
pub fn cf_value(digits: &[u64]) -> Result<Rat> {
    if digits.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    let mut value = Rat::from_integer(Int::from(*digits.last().unwrap()));
    for &d in digits.iter().rev().skip(1) {
        if value.is_zero() {
            return Err(Error::Degenerate("zero tail in continued fraction".into()));
        }
        value = Rat::from_integer(Int::from(d)) + value.recip();
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, rat_int};

    fn v(a: i64, b: i64) -> RVector {
        RVector::from_ints(&[a, b])
    }

    #[test]
    fn single_steps_and_tie_convention() {
        let (out, s) = e_step(&v(5, 3)).unwrap();
        assert_eq!((out, s), (v(2, 3), EStep::B1));
        let (out, s) = e_step(&v(2, 3)).unwrap();
        assert_eq!((out, s), (v(2, 1), EStep::B2));
        let (out, s) = e_step(&v(4, 4)).unwrap();
        assert_eq!((out, s), (v(0, 4), EStep::B1), "tie takes the first branch");
        assert!(e_step(&v(-1, 2)).is_err());
        assert!(e_step(&RVector::from_ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn sorted_variants() {
        assert_eq!(e_sigma_step(&v(5, 3)).unwrap(), v(3, 2));
        assert_eq!(e_sigma_step(&v(3, 5)).unwrap(), v(3, 2));
        assert_eq!(e_sigma_step(&v(1, 1)).unwrap(), v(1, 0));
        assert_eq!(e_pi_step(&v(2, 5)).unwrap(), v(2, 3));
        assert_eq!(e_pi_step(&v(2, 3)).unwrap(), v(1, 2));
        assert!(e_pi_step(&v(3, 2)).is_err());
    }

    #[test]
    fn sigma_step_is_sorted_plain_step() {
        // The sorted variant sees the same multiset as the plain one.
        let mut plain = v(89, 55);
        let mut sorted = v(89, 55);
        for _ in 0..9 {
            plain = e_step(&plain).unwrap().0;
            sorted = e_sigma_step(&sorted).unwrap();
            let mut m1 = vec![plain[0].clone(), plain[1].clone()];
            let mut m2 = vec![sorted[0].clone(), sorted[1].clone()];
            m1.sort();
            m2.sort();
            assert_eq!(m1, m2);
        }
    }

    #[test]
    fn expansion_records_letters_and_cone() {
        let e = expansion(&v(5, 3), 4).unwrap();
        assert_eq!(
            e.steps,
            vec![EStep::B1, EStep::B2, EStep::B1, EStep::B1],
            "5,3 -> 2,3 -> 2,1 -> 1,1 -> 0,1"
        );
        assert!(e.terminated);
        assert_eq!(e.final_vector, v(0, 1));
        // Cone columns reconstruct the start from the final vector.
        assert_eq!(e.cone.apply(&v(0, 1)).unwrap(), v(5, 3));
        // And the branch membership holds at every prefix:
        // (5,3) = B1 B2 B1 B1 applied to (0,1); all partial inverses stay
        // nonnegative on (5,3).
        let mut cur = v(5, 3);
        for &s in &e.steps {
            let m = step_matrix(s).unimodular_inverse().unwrap();
            cur = m.apply(&cur).unwrap();
            assert!(cur.is_nonnegative(), "prefix cone membership");
        }
    }

    #[test]
    fn expansion_stops_at_zero_coordinate() {
        let e = expansion(&v(1, 1), 2).unwrap();
        assert_eq!(e.steps, vec![EStep::B1]);
        assert!(e.terminated);
        let e = expansion(&v(0, 7), 5).unwrap();
        assert!(e.steps.is_empty());
        assert!(e.terminated);
        let e = expansion(&v(89, 55), 3).unwrap();
        assert_eq!(e.steps.len(), 3);
        assert!(!e.terminated);
    }

    #[test]
    fn expansion_handles_rationals() {
        let start = RVector::new(vec![rat(7, 2), rat_int(2)]);
        let e = expansion(&start, 10).unwrap();
        // 7/2, 2 -> 3/2, 2 -> 3/2, 1/2 -> 1, 1/2 -> 1/2, 1/2 -> 0, 1/2.
        assert_eq!(
            e.steps,
            vec![EStep::B1, EStep::B2, EStep::B1, EStep::B1, EStep::B1]
        );
        assert!(e.terminated);
    }

    #[test]
    fn digits_match_division_oracle_on_hand_cases() {
        for (p, q, expect) in [
            (5i64, 3i64, vec![1, 1, 2]),
            (3, 5, vec![0, 1, 1, 2]),
            (1, 7, vec![0, 7]),
            (2, 5, vec![0, 2, 2]),
            (4, 6, vec![0, 1, 2]),
            (7, 7, vec![1]),
            (8, 1, vec![8]),
        ] {
            let e = expansion(&v(p, q), 200).unwrap();
            assert!(e.terminated);
            let got = cf_digits(&e).unwrap();
            assert_eq!(got, expect, "letters for {p}/{q}");
            let oracle = cf_floor(&int(p), &int(q)).unwrap();
            assert_eq!(got, oracle, "oracle for {p}/{q}");
            assert_eq!(cf_value(&got).unwrap(), rat(p, q));
        }
    }

    #[test]
    fn digits_of_unterminated_prefix_keep_trailing_one() {
        // 200 steps of the golden pair stay unterminated at small depth.
        let e = expansion(&v(89, 55), 5).unwrap();
        assert!(!e.terminated);
        let d = cf_digits(&e).unwrap();
        assert_eq!(d, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn empty_expansion_has_no_digits() {
        let e = expansion(&v(0, 3), 4).unwrap();
        assert!(matches!(cf_digits(&e), Err(Error::EmptyExpansion)));
    }

    #[test]
    fn division_oracle_ground_truth() {
        assert_eq!(cf_floor(&int(355), &int(113)).unwrap(), vec![3, 7, 16]);
        assert_eq!(cf_floor(&int(0), &int(9)).unwrap(), vec![0]);
        assert!(cf_floor(&int(3), &int(0)).is_err());
    }
}
