//! Interval exchange transformations with exact rational breakpoints.
//!
//! The exchange built from lengths `lambda` and permutation `pi` cuts
//! `[0, |lambda|)` at the partial sums of `lambda` and rearranges the pieces
//! so that piece `i` lands at image position `pi(i)`, keeping orientation.

use crate::error::{Error, Result};
use crate::numerics::{RVector, Rat};
use crate::perm::Perm;
use num_traits::Zero;

/// An interval exchange transformation on `[0, total)`.
#[derive(Debug, Clone)]
pub struct Iet {
    lambda: RVector,
    perm: Perm,
    /// Partial sums `0 = alpha_0 < alpha_1 < ... < alpha_n = total`.
    alpha: Vec<Rat>,
    /// Partial sums of the image lengths.
    alpha_image: Vec<Rat>,
    /// Per-interval translation.
    offsets: Vec<Rat>,
}

fn partial_sums(v: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut acc = Rat::zero();
    out.push(acc.clone());
    for x in v {
        acc += x;
        out.push(acc.clone());
    }
    out
}

impl Iet {
    pub fn new(lambda: RVector, perm: Perm) -> Result<Iet> {
        if lambda.len() != perm.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} lengths against {} symbols",
                lambda.len(),
                perm.n()
            )));
        }
        if !lambda.is_positive() {
            return Err(Error::OutOfDomain(format!(
                "lengths must be strictly positive, got {lambda}"
            )));
        }
        let n = perm.n();
        // Image lengths: position j receives the piece pi^{-1}(j).
        let image_lengths: Vec<Rat> = (1..=n)
            .map(|j| lambda[perm.invert(j) - 1].clone())
            .collect();
        let alpha = partial_sums(lambda.as_slice());
        let alpha_image = partial_sums(&image_lengths);
        let offsets = (1..=n)
            .map(|i| &alpha_image[perm.apply(i) - 1] - &alpha[i - 1])
            .collect();
        Ok(Iet {
            lambda,
            perm,
            alpha,
            alpha_image,
            offsets,
        })
    }

    pub fn lambda(&self) -> &RVector {
        &self.lambda
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn total(&self) -> &Rat {
        self.alpha.last().expect("nonempty")
    }

    /// Interior cut points `alpha_1, ..., alpha_{n-1}`.
    pub fn breakpoints(&self) -> &[Rat] {
        &self.alpha[1..self.alpha.len() - 1]
    }

    /// Partial sums of the image lengths, `0` through `total`.
    pub fn image_partial_sums(&self) -> &[Rat] {
        &self.alpha_image
    }

    /// One-based index of the piece containing `x`.
    pub fn interval_of(&self, x: &Rat) -> Result<usize> {
        if x < &Rat::zero() || x >= self.total() {
            return Err(Error::OutOfDomain(format!(
                "{} outside [0, {})",
                crate::numerics::fmt_rat(x),
                crate::numerics::fmt_rat(self.total())
            )));
        }
        Ok((1..self.alpha.len())
            .find(|&i| x < &self.alpha[i])
            .expect("partial sums cover the domain"))
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let i = self.interval_of(x)?;
        Ok(x + &self.offsets[i - 1])
    }

    /// First return of `x` to `[0, cut)` under repeated application,
    /// with exact breakpoint detection: the whole visited orbit (including
    /// `x` itself) must avoid the interior cut points.
    ///
    /// Returns the return point and the return time. Errors with
    /// [`Error::BreakpointHit`] on a cut-point collision and
    /// [`Error::IterationCap`] after `cap` applications without return.
    pub fn first_return(&self, cut: &Rat, x: &Rat, cap: usize) -> Result<(Rat, usize)> {
        if cut <= &Rat::zero() || cut > self.total() {
            return Err(Error::OutOfDomain(format!(
                "cut {} outside (0, {}]",
                crate::numerics::fmt_rat(cut),
                crate::numerics::fmt_rat(self.total())
            )));
        }
        if x < &Rat::zero() || x >= cut {
            return Err(Error::OutOfDomain(format!(
                "start {} outside [0, cut)",
                crate::numerics::fmt_rat(x)
            )));
        }
        let mut y = x.clone();
        let mut steps = 0usize;
        loop {
            if self.breakpoints().contains(&y) {
                return Err(Error::BreakpointHit { step: steps });
            }
            y = self.eval(&y)?;
            steps += 1;
            if &y < cut {
                return Ok((y, steps));
            }
            if steps >= cap {
                return Err(Error::IterationCap { cap });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, rat_int};

    fn iet(lambda: &[i64], row: &[usize]) -> Iet {
        Iet::new(
            RVector::from_ints(lambda),
            Perm::from_bottom_row(row).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn two_piece_exchange_is_a_rotation() {
        let t = iet(&[3, 2], &[2, 1]);
        assert_eq!(t.total(), &rat_int(5));
        assert_eq!(t.breakpoints(), &[rat_int(3)]);
        assert_eq!(t.eval(&rat_int(1)).unwrap(), rat_int(3));
        assert_eq!(t.eval(&rat_int(4)).unwrap(), rat_int(1));
        assert_eq!(t.eval(&rat(1, 2)).unwrap(), rat(5, 2));
        assert!(t.eval(&rat_int(5)).is_err());
        assert!(t.eval(&rat_int(-1)).is_err());
    }

    #[test]
    fn three_piece_exchange_matches_hand_layout() {
        // Lengths (2,3,4), image order (3,1,2): piece 3 first, then 1, 2.
        let t = iet(&[2, 3, 4], &[3, 1, 2]);
        assert_eq!(t.eval(&rat_int(0)).unwrap(), rat_int(4));
        assert_eq!(t.eval(&rat_int(2)).unwrap(), rat_int(6));
        assert_eq!(t.eval(&rat_int(8)).unwrap(), rat_int(3));
        assert_eq!(t.interval_of(&rat_int(5)).unwrap(), 3);
    }

    #[test]
    fn exchange_is_a_bijection_of_the_pieces() {
        let t = iet(&[2, 3, 4], &[3, 1, 2]);
        // Image intervals tile [0, 9): collect (start, end) per piece.
        let mut images: Vec<(Rat, Rat)> = (1..=3)
            .map(|i| {
                let lo = t.eval(&t.alpha[i - 1]).unwrap();
                let hi = &lo + &t.lambda()[i - 1];
                (lo, hi)
            })
            .collect();
        images.sort();
        let mut expect_start = rat_int(0);
        for (lo, hi) in images {
            assert_eq!(lo, expect_start);
            expect_start = hi;
        }
        assert_eq!(expect_start, rat_int(9));
    }

    #[test]
    fn first_return_times_are_one_or_two_at_induction_cut() {
        let t = iet(&[3, 2], &[2, 1]);
        // Induction removes the shorter rightmost piece: cut = 3.
        let cut = rat_int(3);
        let (y, k) = t.first_return(&cut, &rat(1, 2), 10).unwrap();
        assert_eq!((y, k), (rat(5, 2), 1));
        let (y, k) = t.first_return(&cut, &rat_int(2), 10).unwrap();
        assert_eq!((y, k), (rat_int(1), 2));
    }

    #[test]
    fn orbit_through_a_cut_point_is_reported() {
        let t = iet(&[3, 2], &[2, 1]);
        let cut = rat_int(3);
        // T(1) = 3, the interior cut point.
        assert!(matches!(
            t.first_return(&cut, &rat_int(1), 10),
            Err(Error::BreakpointHit { step: 1 })
        ));
        // Starting on the cut point fails immediately...
        let small_cut = rat(7, 2);
        assert!(matches!(
            t.first_return(&small_cut, &rat_int(3), 10),
            Err(Error::BreakpointHit { step: 0 })
        ));
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let t = iet(&[3, 2], &[2, 1]);
        // Returns to a tiny window take many steps; cap below that.
        let cut = rat(1, 2);
        assert!(matches!(
            t.first_return(&cut, &rat(1, 4), 1),
            Err(Error::IterationCap { cap: 1 })
        ));
    }

    #[test]
    fn induced_map_agrees_with_first_return_on_a_hand_case() {
        use crate::induction;
        let lambda = RVector::from_ints(&[4, 2, 1]);
        let perm = Perm::from_bottom_row(&[2, 3, 1]).unwrap();
        let t = Iet::new(lambda.clone(), perm.clone()).unwrap();
        let state = induction::RauzyState::new(lambda, perm).unwrap();
        let (next, _, _) = induction::step(&state).unwrap();
        let t_next = Iet::new(next.lambda.clone(), next.perm.clone()).unwrap();
        let cut = t_next.total().clone();
        assert_eq!(cut, rat_int(6));
        for x in [rat(1, 2), rat(7, 2), rat(11, 2), rat(9, 4)] {
            let (ret, time) = t.first_return(&cut, &x, 10).unwrap();
            assert!(time == 1 || time == 2, "return time at induction cut");
            assert_eq!(ret, t_next.eval(&x).unwrap(), "at {x}");
        }
    }
}
