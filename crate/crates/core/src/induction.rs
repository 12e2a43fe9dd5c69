//! One-step induction on interval exchange data `(lambda, pi)`: shorten the
//! domain by the smaller of the two rightmost intervals (last interval vs
//! last image interval), with exact integer transition matrices.
//!
//! Every orbit carries its accumulated matrix product and inverse; the
//! inverse has nonnegative entries and reconstructs the starting lengths
//! from the current ones, and both facts are re-checked at every step.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{IMatrix, Int, RVector};
use crate::perm::Perm;
use num_traits::One;

/// Which of the two induction cases fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    /// Last interval strictly longer than the last image interval.
    A,
    /// Last image interval strictly longer than the last interval.
    B,
}

/// Length data plus combinatorial data for one exchange.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RauzyState {
    pub lambda: RVector,
    pub perm: Perm,
}

impl RauzyState {
    /// Validates positivity, matching dimensions, and irreducibility.
    pub fn new(lambda: RVector, perm: Perm) -> Result<RauzyState> {
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
        if let Some(prefix) = perm.reducible_prefix() {
            return Err(Error::Reducible { prefix });
        }
        Ok(RauzyState { lambda, perm })
    }
}

/// Transition matrix of the first case: identity with an extra `-1` in the
/// last row at the column of the interval whose image comes last.
pub fn matrix_a(pi: &Perm) -> IMatrix {
    let n = pi.n();
    let p_star = pi.invert(n);
    let mut m = IMatrix::identity(n);
    m.set(n - 1, p_star - 1, -Int::one());
    m
}

/// Inverse of [`matrix_a`]: identity with `+1` at the same position.
/// Nonnegative, as required for cone bookkeeping.
pub fn inverse_matrix_a(pi: &Perm) -> IMatrix {
    let n = pi.n();
    let p_star = pi.invert(n);
    let mut m = IMatrix::identity(n);
    m.set(n - 1, p_star - 1, Int::one());
    m
}

/// Transition matrix of the second case: the interval whose image comes
/// last (position `p*`) is cut by the last length, which is reinserted as a
/// new interval right after it.
pub fn matrix_b(pi: &Perm) -> IMatrix {
    let n = pi.n();
    let p_star = pi.invert(n);
    let mut m = IMatrix::zero(n, n);
    for j in 1..=n {
        if j < p_star {
            m.set(j - 1, j - 1, Int::one());
        } else if j == p_star {
            m.set(j - 1, j - 1, Int::one());
            m.set(j - 1, n - 1, -Int::one());
        } else if j == p_star + 1 {
            m.set(j - 1, n - 1, Int::one());
        } else {
            m.set(j - 1, j - 2, Int::one());
        }
    }
    m
}

/// Inverse of [`matrix_b`], written explicitly; all entries nonnegative.
pub fn inverse_matrix_b(pi: &Perm) -> IMatrix {
    let n = pi.n();
    let p_star = pi.invert(n);
    let mut m = IMatrix::zero(n, n);
    for j in 1..=n {
        if j < p_star {
            m.set(j - 1, j - 1, Int::one());
        } else if j == p_star {
            m.set(j - 1, j - 1, Int::one());
            m.set(j - 1, j, Int::one());
        } else if j < n {
            m.set(j - 1, j, Int::one());
        } else {
            m.set(j - 1, p_star, Int::one());
        }
    }
    m
}

pub fn step_matrix(pi: &Perm, mv: Move) -> IMatrix {
    match mv {
        Move::A => matrix_a(pi),
        Move::B => matrix_b(pi),
    }
}

pub fn inverse_step_matrix(pi: &Perm, mv: Move) -> IMatrix {
    match mv {
        Move::A => inverse_matrix_a(pi),
        Move::B => inverse_matrix_b(pi),
    }
}

/// One induction step. Errors with [`Error::BoundaryTie`] when the last
/// interval and the last image interval have equal length; the induced
/// exchange would drop to fewer intervals there, so the step is undefined.
pub fn step(state: &RauzyState) -> Result<(RauzyState, Move, IMatrix)> {
    let n = state.perm.n();
    let p_star = state.perm.invert(n);
    let last = &state.lambda[n - 1];
    let last_image = &state.lambda[p_star - 1];
    let mv = if last > last_image {
        Move::A
    } else if last < last_image {
        Move::B
    } else {
        return Err(Error::BoundaryTie);
    };
    let m = step_matrix(&state.perm, mv);
    let lambda = m.apply(&state.lambda)?;
    let perm = match mv {
        Move::A => state.perm.move_a(),
        Move::B => state.perm.move_b(),
    };
    debug_assert!(lambda.is_positive());
    Ok((RauzyState { lambda, perm }, mv, m))
}

/// [`step`] followed by rescaling the lengths to unit sum. The branch and
/// combinatorics are scale-invariant, so this is the projectivized map.
pub fn normalized_step(state: &RauzyState) -> Result<(RauzyState, Move, IMatrix)> {
    let (next, mv, m) = step(state)?;
    let lambda = next.lambda.normalized_l1()?;
    Ok((
        RauzyState {
            lambda,
            perm: next.perm,
        },
        mv,
        m,
    ))
}

/// How an orbit run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitEnd {
    /// All requested steps were taken.
    Completed,
    /// A boundary tie stopped the orbit after `step` completed steps.
    Boundary { step: usize },
}

/// A finite orbit with full matrix bookkeeping.
#[derive(Debug, Clone, Serialize)]
pub struct PathRecord {
    pub initial: RauzyState,
    /// State after each step.
    pub states: Vec<RauzyState>,
    pub moves: Vec<Move>,
    pub step_matrices: Vec<IMatrix>,
    /// Product of the step matrices, latest leftmost.
    pub cocycle: IMatrix,
    /// Inverse of the product; nonnegative, maps current lengths back to
    /// the initial ones.
    pub inverse_cocycle: IMatrix,
}

impl PathRecord {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn final_state(&self) -> &RauzyState {
        self.states.last().unwrap_or(&self.initial)
    }
}

/// Runs up to `depth` induction steps, with exactness self-checks after
/// each one: the accumulated product times its accumulated inverse is the
/// identity, and the inverse maps the current lengths to the initial ones.
pub fn orbit(start: &RauzyState, depth: usize) -> Result<(PathRecord, OrbitEnd)> {
    let n = start.perm.n();
    // Revalidate: `RauzyState` fields are public.
    let start = RauzyState::new(start.lambda.clone(), start.perm.clone())?;
    let mut rec = PathRecord {
        initial: start.clone(),
        states: Vec::new(),
        moves: Vec::new(),
        step_matrices: Vec::new(),
        cocycle: IMatrix::identity(n),
        inverse_cocycle: IMatrix::identity(n),
    };
    let mut cur = start;
    let mut end = OrbitEnd::Completed;
    for k in 0..depth {
        let (next, mv, m) = match step(&cur) {
            Ok(t) => t,
            Err(Error::BoundaryTie) => {
                end = OrbitEnd::Boundary { step: k };
                break;
            }
            Err(e) => return Err(e),
        };
        rec.cocycle = m.mul(&rec.cocycle)?;
        rec.inverse_cocycle = rec.inverse_cocycle.mul(&inverse_step_matrix(&cur.perm, mv))?;
        // Exactness self-checks, every step.
        assert_eq!(
            rec.cocycle.mul(&rec.inverse_cocycle)?,
            IMatrix::identity(n),
            "accumulated product times accumulated inverse"
        );
        assert!(
            rec.inverse_cocycle.is_nonnegative(),
            "accumulated inverse stays nonnegative"
        );
        assert_eq!(
            rec.inverse_cocycle.apply(&next.lambda)?,
            rec.initial.lambda,
            "inverse reconstructs the initial lengths"
        );
        rec.states.push(next.clone());
        rec.moves.push(mv);
        rec.step_matrices.push(m);
        cur = next;
    }
    Ok((rec, end))
}
