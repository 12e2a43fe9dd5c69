//! Planar overlap machinery: window quadrilaterals around a base direction,
//! chord trapezoids cut out by a cone, their subtractive images, and the
//! product-region bounds used by the higher-dimensional analogue.
//!
//! Everything here is exact rational arithmetic except the Monte Carlo
//! estimators, which are seeded and deterministic (see [`crate::sampling`]).

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cones::{self, Cone, ConePath};
use crate::error::{Error, Result};
use crate::euclid::{e_step, EStep};
use crate::geom2d::{intersection_area, shoelace_area, Point};
use crate::numerics::{rat, rat_int, Int, Rat, RVector};
use crate::sampling::{mc_conditional, mc_fraction, rng_for, McEstimate};

/// Cross product of two vectors based at the origin.
fn xprod(u: &Point, v: &Point) -> Rat {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Dot product of an integer column with a rational point.
fn col_dot(col: &[Int], v: &Point) -> Rat {
    Rat::from_integer(col[0].clone()) * &v.0 + Rat::from_integer(col[1].clone()) * &v.1
}

/// Squared Euclidean norm of a rational point.
fn norm_sq(v: &Point) -> Rat {
    &v.0 * &v.0 + &v.1 * &v.1
}

/// The window quadrilateral at a base point.
///
/// For a base point `b` in the open quadrant and a sharpness parameter
/// `n >= 1`, the quadrilateral has vertices
/// `p = b - w`, `q = b + w`, `r = (1 + 1/n) q`, `s = (1 + 1/n) p`,
/// where `w` is the clockwise quarter-turn of `b` scaled by `1/(2n)`.
/// The inner edge `[p, q]` is the chord through `b` orthogonal to it; `q`
/// is the clockwise-most direction and `p` the counterclockwise-most.
#[derive(Debug, Clone)]
pub struct Quad {
    pub n: u64,
    pub base: Point,
    pub p: Point,
    pub q: Point,
    pub r: Point,
    pub s: Point,
}

impl Quad {
    /// Vertices in positive (counterclockwise) boundary order.
    pub fn vertices(&self) -> [Point; 4] {
        [
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
            self.s.clone(),
        ]
    }

    /// Exact area via the shoelace formula.
    pub fn area(&self) -> Rat {
        let vs = self.vertices().to_vec();
        shoelace_area(&vs)
    }

    /// Largest squared distance from the base point to a vertex.
    pub fn circum_dist_sq(&self) -> Rat {
        self.vertices()
            .iter()
            .map(|v| norm_sq(&(&v.0 - &self.base.0, &v.1 - &self.base.1)))
            .max()
            .expect("four vertices")
    }
}

/// Builds the window quadrilateral at `base` with sharpness `n`.
///
/// Errors: `Degenerate` if the base point lies on an axis, `OutOfDomain`
/// if `n = 0` or a vertex leaves the open quadrant (which happens exactly
/// when the two coordinates differ by more than a factor of `2n`).
pub fn build_qn(base: &Point, n: u64) -> Result<Quad> {
    if n == 0 {
        return Err(Error::OutOfDomain("sharpness must be at least 1".into()));
    }
    if !base.0.is_positive() || !base.1.is_positive() {
        return Err(Error::Degenerate(
            "window base point must lie in the open quadrant".into(),
        ));
    }
    let half = Rat::new(Int::one(), Int::from(2 * n));
    let w = (&base.1 * &half, -(&base.0 * &half));
    let p = (&base.0 - &w.0, &base.1 - &w.1);
    let q = (&base.0 + &w.0, &base.1 + &w.1);
    let stretch = rat(n as i64 + 1, n as i64);
    let r = (&q.0 * &stretch, &q.1 * &stretch);
    let s = (&p.0 * &stretch, &p.1 * &stretch);
    for v in [&p, &q, &r, &s] {
        if !v.0.is_positive() || !v.1.is_positive() {
            return Err(Error::OutOfDomain(
                "window vertex leaves the open quadrant".into(),
            ));
        }
    }
    Ok(Quad {
        n,
        base: base.clone(),
        p,
        q,
        r,
        s,
    })
}

/// Closed-form area of the window quadrilateral:
/// `(2n + 1) / (2 n^3)` times the squared norm of the base point.
pub fn qn_area_formula(base: &Point, n: u64) -> Rat {
    let n = n as i64;
    rat(2 * n + 1, 2 * n * n * n) * norm_sq(base)
}

/// Closed-form squared circumradius about the base point:
/// `(5n^2 + 2n + 1) / (4 n^4)` times the squared norm of the base point.
pub fn circumradius_sq(base: &Point, n: u64) -> Rat {
    let n = n as i64;
    rat(5 * n * n + 2 * n + 1, 4 * n * n * n * n) * norm_sq(base)
}

/// Ratio of the area of the window quadrilateral to the area of the disc of
/// the same circumradius, with the disc area counted as `pi r^2 / pi`, i.e.
/// the exact rational part `2n(2n+1) / (5n^2 + 2n + 1)`. Divide by pi to
/// compare against an actual disc.
pub fn ball_ratio(n: u64) -> Rat {
    let n = n as i64;
    rat(2 * n * (2 * n + 1), 5 * n * n + 2 * n + 1)
}

/// True when the direction `v` lies in the closed angular window of the quad.
pub fn window_contains_vector(quad: &Quad, v: &Point) -> bool {
    !xprod(&quad.q, v).is_negative() && !xprod(v, &quad.p).is_negative()
}

/// Extracts the two columns of a planar cone generator, checking positive
/// orientation (first column clockwise of the second).
fn plane_cone_columns(cone: &Cone) -> Result<(Vec<Int>, Vec<Int>)> {
    if cone.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "planar cone expected, got dimension {}",
            cone.dim()
        )));
    }
    let c1 = cone.generator().column(0);
    let c2 = cone.generator().column(1);
    let orient = &c1[0] * &c2[1] - &c1[1] * &c2[0];
    if !orient.is_positive() {
        return Err(Error::Degenerate(
            "cone columns must be positively oriented".into(),
        ));
    }
    Ok((c1, c2))
}

/// True when the cone lies inside the closed angular window of the quad.
pub fn cone_in_window(quad: &Quad, cone: &Cone) -> Result<bool> {
    let (c1, c2) = plane_cone_columns(cone)?;
    let c1 = (
        Rat::from_integer(c1[0].clone()),
        Rat::from_integer(c1[1].clone()),
    );
    let c2 = (
        Rat::from_integer(c2[0].clone()),
        Rat::from_integer(c2[1].clone()),
    );
    Ok(!xprod(&quad.q, &c1).is_negative() && !xprod(&c2, &quad.p).is_negative())
}

/// True when the open cone meets the open angular window of the quad.
pub fn cone_meets_window(quad: &Quad, cone: &Cone) -> Result<bool> {
    let (c1, c2) = plane_cone_columns(cone)?;
    let c1 = (
        Rat::from_integer(c1[0].clone()),
        Rat::from_integer(c1[1].clone()),
    );
    let c2 = (
        Rat::from_integer(c2[0].clone()),
        Rat::from_integer(c2[1].clone()),
    );
    Ok(xprod(&quad.q, &c2).is_positive() && xprod(&c1, &quad.p).is_positive())
}

/// Intercepts of the two chords of the window cut out by a cone.
///
/// For a cone with columns `c1, c2` inside the window of a quad with base
/// `b`, the ray through `c_i` crosses the inner chord at `alpha_i * c_i`
/// with `alpha_i = |b|^2 / <c_i, b>`, and the outer chord at `beta_i * c_i`
/// with `beta_i = (1 + 1/n) alpha_i`.
#[derive(Debug, Clone, Serialize)]
pub struct TrapezoidChord {
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub alpha1: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub alpha2: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub beta1: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub beta2: Rat,
}

impl TrapezoidChord {
    /// The common ratio `alpha_i / beta_i = n / (n + 1)`.
    pub fn common_ratio(&self) -> Rat {
        &self.alpha1 / &self.beta1
    }

    /// The outer intercept ratio `beta2 / beta1`.
    pub fn beta_ratio(&self) -> Rat {
        &self.beta2 / &self.beta1
    }
}

/// Computes the chord intercepts of a cone inside the window of `quad`.
///
/// Errors with `OutOfDomain` when the cone is not contained in the window.
pub fn trapezoid_chord(quad: &Quad, cone: &Cone) -> Result<TrapezoidChord> {
    if !cone_in_window(quad, cone)? {
        return Err(Error::OutOfDomain(
            "cone is not contained in the window".into(),
        ));
    }
    let (c1, c2) = plane_cone_columns(cone)?;
    let bnorm = norm_sq(&quad.base);
    let s1 = col_dot(&c1, &quad.base);
    let s2 = col_dot(&c2, &quad.base);
    debug_assert!(s1.is_positive() && s2.is_positive());
    let alpha1 = &bnorm / &s1;
    let alpha2 = &bnorm / &s2;
    let stretch = rat(quad.n as i64 + 1, quad.n as i64);
    Ok(TrapezoidChord {
        beta1: &alpha1 * &stretch,
        beta2: &alpha2 * &stretch,
        alpha1,
        alpha2,
    })
}

/// Exact check that the chord endpoints `alpha_i c_i` lie on the inner edge
/// `[p, q]` and `beta_i c_i` on the outer edge `[s, r]` of the quad.
pub fn chord_on_edges(quad: &Quad, cone: &Cone, chord: &TrapezoidChord) -> Result<bool> {
    let (c1, c2) = plane_cone_columns(cone)?;
    let on_segment = |a: &Point, b: &Point, x: &Point| -> bool {
        let ab = (&b.0 - &a.0, &b.1 - &a.1);
        let ax = (&x.0 - &a.0, &x.1 - &a.1);
        if !xprod(&ab, &ax).is_zero() {
            return false;
        }
        let t = &ab.0 * &ax.0 + &ab.1 * &ax.1;
        let len = &ab.0 * &ab.0 + &ab.1 * &ab.1;
        !t.is_negative() && t <= len
    };
    let scaled = |col: &[Int], f: &Rat| -> Point {
        (
            Rat::from_integer(col[0].clone()) * f,
            Rat::from_integer(col[1].clone()) * f,
        )
    };
    Ok(on_segment(&quad.p, &quad.q, &scaled(&c1, &chord.alpha1))
        && on_segment(&quad.p, &quad.q, &scaled(&c2, &chord.alpha2))
        && on_segment(&quad.s, &quad.r, &scaled(&c1, &chord.beta1))
        && on_segment(&quad.s, &quad.r, &scaled(&c2, &chord.beta2)))
}

/// Exact squared form of the chord norm comparison: for a cone inside the
/// window, `(alpha2 |c2|)^2 |q|^2 >= (alpha1 |c1|)^2 |b|^2`, because both
/// chord endpoints lie between distance `|b|` and `|q|` from the origin.
pub fn chord_norm_inequality(quad: &Quad, cone: &Cone, chord: &TrapezoidChord) -> Result<bool> {
    let (c1, c2) = plane_cone_columns(cone)?;
    let nc1 = Rat::from_integer(&c1[0] * &c1[0] + &c1[1] * &c1[1]);
    let nc2 = Rat::from_integer(&c2[0] * &c2[0] + &c2[1] * &c2[1]);
    let lhs = &chord.alpha2 * &chord.alpha2 * nc2 * norm_sq(&quad.q);
    let rhs = &chord.alpha1 * &chord.alpha1 * nc1 * norm_sq(&quad.base);
    Ok(lhs >= rhs)
}

/// Validates a pair of chord intercept vectors: positive, `alpha_i < beta_i`,
/// and similar (`alpha1/beta1 = alpha2/beta2`). Returns the common ratio.
fn validate_intercepts(alpha: &(Rat, Rat), beta: &(Rat, Rat)) -> Result<Rat> {
    for x in [&alpha.0, &alpha.1, &beta.0, &beta.1] {
        if !x.is_positive() {
            return Err(Error::OutOfDomain("intercepts must be positive".into()));
        }
    }
    if alpha.0 >= beta.0 || alpha.1 >= beta.1 {
        return Err(Error::OutOfDomain(
            "inner intercepts must be strictly below outer ones".into(),
        ));
    }
    let t1 = &alpha.0 / &beta.0;
    let t2 = &alpha.1 / &beta.1;
    if t1 != t2 {
        return Err(Error::OutOfDomain(
            "intercept pairs must share a common ratio".into(),
        ));
    }
    Ok(t1)
}

/// Harmonic mean point of a pair: the diagonal coordinate `x1 x2 / (x1 + x2)`
/// where the segment from `(x1, 0)` to `(0, x2)` crosses the diagonal.
fn diag_cut(x: &(Rat, Rat)) -> Rat {
    &x.0 * &x.1 / (&x.0 + &x.1)
}

/// The trapezoid between the two intercept segments, as a convex polygon
/// `(a1,0), (b1,0), (0,b2), (0,a2)` in positive orientation.
pub fn t_polygon(alpha: &(Rat, Rat), beta: &(Rat, Rat)) -> Result<Vec<Point>> {
    validate_intercepts(alpha, beta)?;
    let zero = Rat::zero;
    Ok(vec![
        (alpha.0.clone(), zero()),
        (beta.0.clone(), zero()),
        (zero(), beta.1.clone()),
        (zero(), alpha.1.clone()),
    ])
}

/// The upper half of the trapezoid (second coordinate at least the first),
/// cut along the diagonal.
pub fn t_plus_polygon(alpha: &(Rat, Rat), beta: &(Rat, Rat)) -> Result<Vec<Point>> {
    validate_intercepts(alpha, beta)?;
    let ca = diag_cut(alpha);
    let cb = diag_cut(beta);
    Ok(vec![
        (ca.clone(), ca),
        (cb.clone(), cb),
        (Rat::zero(), beta.1.clone()),
        (Rat::zero(), alpha.1.clone()),
    ])
}

/// The image of the upper half under one subtractive step `(x, y) -> (x, y - x)`:
/// the diagonal edge lands on the horizontal axis.
pub fn e_t_plus_polygon(alpha: &(Rat, Rat), beta: &(Rat, Rat)) -> Result<Vec<Point>> {
    validate_intercepts(alpha, beta)?;
    let ca = diag_cut(alpha);
    let cb = diag_cut(beta);
    Ok(vec![
        (ca, Rat::zero()),
        (cb, Rat::zero()),
        (Rat::zero(), beta.1.clone()),
        (Rat::zero(), alpha.1.clone()),
    ])
}

/// Exact fraction of the trapezoid above the diagonal:
/// `mu(T_plus) / mu(T) = beta2 / (beta1 + beta2)` for similar intercepts.
pub fn tplus_ratio(alpha: &(Rat, Rat), beta: &(Rat, Rat)) -> Result<Rat> {
    validate_intercepts(alpha, beta)?;
    Ok(&beta.1 / (&beta.0 + &beta.1))
}

/// Exact report on one trapezoid overlap instance.
///
/// The three conditions, for intercepts `alpha = t * beta` and sharpness `n`:
/// - `gap_condition`: the outer diagonal cut clears the midpoint of the
///   horizontal intercepts, `b1 b2 / (b1 + b2) >= (a1 + b1) / 2`;
/// - `ratio_condition`: `beta2 >= (2n + 1) beta1`;
/// - `overlap_condition`: the subtractive image of the upper half overlaps
///   the upper half in at least half of its area.
///
/// `ratio_implies_gap` holds vacuously unless `ratio_condition` and
/// `t <= n/(n+1)` both hold, and `gap_implies_overlap` vacuously unless
/// `gap_condition` holds.
#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub n: u64,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub t: Rat,
    pub t_at_most_canonical: bool,
    pub gap_condition: bool,
    pub ratio_condition: bool,
    pub overlap_condition: bool,
    pub ratio_implies_gap: bool,
    pub gap_implies_overlap: bool,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub t_area: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub t_plus_area: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub overlap_area: Rat,
}

/// Runs the exact overlap check for one intercept pair at sharpness `n`.
pub fn check_euclid_intersection(
    alpha: &(Rat, Rat),
    beta: &(Rat, Rat),
    n: u64,
) -> Result<IntersectionReport> {
    let t = validate_intercepts(alpha, beta)?;
    let canonical = rat(n as i64, n as i64 + 1);
    let t_at_most_canonical = t <= canonical;
    let cb = diag_cut(beta);
    let gap_condition = &cb + &cb >= &alpha.0 + &beta.0;
    let ratio_condition = &beta.1 >= &(&beta.0 * rat_int(2 * n as i64 + 1));
    let tp = t_plus_polygon(alpha, beta)?;
    let etp = e_t_plus_polygon(alpha, beta)?;
    let t_area = shoelace_area(&t_polygon(alpha, beta)?);
    let t_plus_area = shoelace_area(&tp);
    let overlap_area = intersection_area(&tp, &etp);
    let overlap_condition = &overlap_area + &overlap_area >= t_plus_area;
    Ok(IntersectionReport {
        n,
        t: t.clone(),
        t_at_most_canonical,
        gap_condition,
        ratio_condition,
        overlap_condition,
        ratio_implies_gap: !(ratio_condition && t_at_most_canonical) || gap_condition,
        gap_implies_overlap: !gap_condition || overlap_condition,
        t_area,
        t_plus_area,
        overlap_area,
    })
}

/// A product-shaped slice in dimension `n`: the set of nonnegative vectors
/// with `sum(v_i / upper_i) <= 1 <= sum(v_i / lower_i)` — the region between
/// the two simplices with the given axis intercepts.
#[derive(Debug, Clone)]
pub struct Slice {
    lower: RVector,
    upper: RVector,
}

impl Slice {
    /// Requires `0 < lower_i <= upper_i` in every coordinate.
    pub fn new(lower: RVector, upper: RVector) -> Result<Slice> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "intercept vectors of equal positive length required, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        if !lower.is_positive() {
            return Err(Error::OutOfDomain("lower intercepts must be positive".into()));
        }
        for (l, u) in lower.iter().zip(upper.iter()) {
            if u < l {
                return Err(Error::OutOfDomain(
                    "upper intercepts must dominate lower ones".into(),
                ));
            }
        }
        Ok(Slice { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &RVector {
        &self.lower
    }

    pub fn upper(&self) -> &RVector {
        &self.upper
    }

    /// Common ratio `lower_i / upper_i` when it exists.
    pub fn common_ratio(&self) -> Option<Rat> {
        let first = &self.lower[0] / &self.upper[0];
        for (l, u) in self.lower.iter().zip(self.upper.iter()).skip(1) {
            if &(l / u) != &first {
                return None;
            }
        }
        Some(first)
    }

    /// Exact membership test.
    pub fn contains(&self, v: &RVector) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} in slice of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        if !v.is_nonnegative() {
            return Ok(false);
        }
        let mut by_upper = Rat::zero();
        let mut by_lower = Rat::zero();
        for ((x, u), l) in v.iter().zip(self.upper.iter()).zip(self.lower.iter()) {
            by_upper = by_upper + x / u;
            by_lower = by_lower + x / l;
        }
        Ok(by_upper <= Rat::one() && Rat::one() <= by_lower)
    }
}

/// Exact volume of a slice: `(prod(upper) - prod(lower)) / n!`.
pub fn slice_measure(s: &Slice) -> Rat {
    let mut pu = Rat::one();
    let mut pl = Rat::one();
    for (l, u) in s.lower.iter().zip(s.upper.iter()) {
        pu = pu * u;
        pl = pl * l;
    }
    let mut fact = Int::one();
    for k in 2..=s.dim() {
        fact *= Int::from(k);
    }
    (pu - pl) / Rat::from_integer(fact)
}

/// Lattice resolution for the Monte Carlo samplers.
const MC_DEN: u64 = 1 << 16;

/// Integer acceptance data for slice sampling: draws `k_i in 0..=D` encode
/// `v_i = k_i upper_i / D`; membership reduces to two integer comparisons.
struct SliceSampler {
    dim: usize,
    /// Scaled weights `w_i` with `sum k_i w_i >= bound` iff `sum v_i / lower_i >= 1`.
    weights: Vec<Int>,
    bound: Int,
}

impl SliceSampler {
    fn new(s: &Slice) -> SliceSampler {
        // sum k_i (u_i / l_i) >= D after clearing the common denominator Q:
        // sum k_i w_i >= D Q with w_i = numer_i * (Q / denom_i).
        let ratios: Vec<Rat> = s
            .lower
            .iter()
            .zip(s.upper.iter())
            .map(|(l, u)| u / l)
            .collect();
        let mut q = Int::one();
        for r in &ratios {
            q = num_integer::lcm(q, r.denom().clone());
        }
        let weights = ratios
            .iter()
            .map(|r| r.numer() * (&q / r.denom()))
            .collect();
        SliceSampler {
            dim: s.dim(),
            weights,
            bound: Int::from(MC_DEN) * q,
        }
    }

    /// Draws lattice coordinates and applies the two simplex tests.
    fn draw(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Option<Vec<u64>> {
        let ks: Vec<u64> = (0..self.dim).map(|_| rng.gen_range(0..=MC_DEN)).collect();
        let plain: u64 = ks.iter().sum();
        if plain > MC_DEN {
            return None;
        }
        let mut weighted = Int::zero();
        for (k, w) in ks.iter().zip(&self.weights) {
            weighted += Int::from(*k) * w;
        }
        if weighted < self.bound {
            return None;
        }
        Some(ks)
    }
}

/// Monte Carlo estimate of the slice volume by rejection from the bounding
/// box `prod [0, upper_i]`, using exact integer acceptance on a lattice.
pub fn slice_mc(s: &Slice, samples: u64, seed: u64, workers: u64) -> McEstimate {
    let sampler = SliceSampler::new(s);
    let box_volume: f64 = s
        .upper
        .iter()
        .map(|u| u.to_f64().expect("finite intercept"))
        .product();
    mc_fraction(seed, workers, samples, |rng| sampler.draw(rng).is_some()).scaled(box_volume)
}

/// Exact fraction of a common-ratio slice on the side where the last
/// coordinate does not exceed the one before it:
/// `upper_{n-1} / (upper_{n-1} + upper_n)`. Requires dimension at least 2
/// and a common `lower_i / upper_i` ratio.
pub fn pplus_exact_ratio(s: &Slice) -> Result<Rat> {
    if s.dim() < 2 {
        return Err(Error::DimensionMismatch(
            "dimension at least 2 required for the half-slice ratio".into(),
        ));
    }
    if s.common_ratio().is_none() {
        return Err(Error::OutOfDomain(
            "half-slice ratio needs a common intercept ratio".into(),
        ));
    }
    let u1 = &s.upper[s.dim() - 2];
    let u2 = &s.upper[s.dim() - 1];
    Ok(u1 / (u1 + u2))
}

/// Report on the half-slice lower bound at an integer threshold `N`:
/// when `upper_{n-1} / upper_n >= N / 2`, the half-slice takes at least
/// `N / (N + 2)` of the slice.
#[derive(Debug, Clone, Serialize)]
pub struct PplusReport {
    pub threshold: u64,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub exact_ratio: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub bound: Rat,
    pub precondition: bool,
    pub bound_holds: bool,
}

/// Evaluates the half-slice bound exactly.
pub fn pplus_bound(s: &Slice, threshold: u64) -> Result<PplusReport> {
    let exact_ratio = pplus_exact_ratio(s)?;
    let bound = rat(threshold as i64, threshold as i64 + 2);
    let u1 = &s.upper[s.dim() - 2];
    let u2 = &s.upper[s.dim() - 1];
    let precondition = &(u1 / u2) >= &rat(threshold as i64, 2);
    let bound_holds = exact_ratio >= bound;
    Ok(PplusReport {
        threshold,
        exact_ratio,
        bound,
        precondition,
        bound_holds,
    })
}

/// Monte Carlo check of the half-slice fraction: among slice points, the
/// fraction with last coordinate at most the previous one.
pub fn pplus_mc(s: &Slice, samples: u64, seed: u64, workers: u64) -> McEstimate {
    let sampler = SliceSampler::new(s);
    let n = s.dim();
    let u_prev = s.upper[n - 2].clone();
    let u_last = s.upper[n - 1].clone();
    mc_conditional(
        seed,
        workers,
        samples,
        |rng| {
            sampler
                .draw(rng)
                .map(|ks| (ks[n - 2], ks[n - 1]))
        },
        // v_{n-1} >= v_n  iff  k_{n-1} u_{n-1} >= k_n u_n, exactly.
        |&(kp, kl)| Rat::from_integer(Int::from(kp)) * &u_prev >= Rat::from_integer(Int::from(kl)) * &u_last,
    )
}

/// Parameters for the full overlap witness pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessParams {
    #[serde(serialize_with = "crate::numerics::serialize_rat_pair")]
    pub center: (Rat, Rat),
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub radius: Rat,
    /// Sharpness of the window quadrilateral built at the disc center.
    pub n_quad: u64,
    /// Distortion threshold the witness cone must exceed.
    pub threshold: u64,
    /// Cap on the centering descent depth.
    pub depth_cap: usize,
    /// Number of exact lattice samples drawn for the overlap estimate.
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams {
            center: (rat_int(1), rat(89, 55)),
            radius: rat(1, 10),
            n_quad: 22,
            threshold: 8,
            depth_cap: 96,
            samples: 100_000,
            seed: 7,
            workers: 8,
        }
    }
}

/// Empirical side of the witness: a seeded estimate of the overlap between
/// the disc's images after `stage` and `stage + 1` subtractive steps, seen
/// through the witness cone.
///
/// On the cone the iterated map is a single unimodular matrix, so a disc
/// sample contributes a hit exactly when it lies in the cone and its image
/// under one more branch letter returns to the disc — both exact rational
/// tests. Hits therefore form a plain binomial count; the scaled estimate is
/// a lower bound for the full overlap of the two image sets (other branch
/// pieces can only add area) and `overlap_sigma` is its honest standard
/// error.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessMc {
    pub samples: u64,
    pub hits: u64,
    pub disc_area: f64,
    pub overlap_estimate: f64,
    pub overlap_sigma: f64,
}

/// Outcome of the overlap witness pipeline.
///
/// `guarantee` is the fully exact part: the window quadrilateral fits in the
/// disc, a cone inside its angular window meets the distortion and intercept
/// ratio conditions, the chord endpoints land on the window edges, and the
/// trapezoid half overlaps its subtractive image in positive exact area.
/// The Monte Carlo block is an independent empirical cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub params: WitnessParams,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub quad_area: Rat,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub circumradius_sq: Rat,
    pub quad_in_disc: bool,
    pub found: bool,
    pub cone_path: Option<String>,
    pub stage: Option<usize>,
    #[serde(serialize_with = "crate::numerics::serialize_opt_rat")]
    pub distortion: Option<Rat>,
    #[serde(serialize_with = "crate::numerics::serialize_opt_rat")]
    pub beta_ratio: Option<Rat>,
    pub chord_on_edges: bool,
    pub chord_norms_ok: bool,
    pub intersection: Option<IntersectionReport>,
    pub overlap_positive: bool,
    pub guarantee: bool,
    pub mc: Option<WitnessMc>,
}

/// Finds a witness cone inside the window: descend along the center's own
/// subtractive path until the cone fits in the window, then append
/// second-branch letters (which grow the first column) until both the
/// distortion and the intercept ratio conditions hold.
fn witness_cone(quad: &Quad, center: &Point, threshold: u64, depth_cap: usize) -> Result<Option<Cone>> {
    let mut v = RVector::new(vec![center.0.clone(), center.1.clone()]);
    let mut steps: Vec<EStep> = Vec::new();
    let mut contained = false;
    for _ in 0..=depth_cap {
        let cone = cones::cone_of_euclid_path(&steps);
        if cone_in_window(quad, &cone)? {
            contained = true;
            break;
        }
        let (next, letter) = e_step(&v)?;
        v = next;
        steps.push(letter);
    }
    if !contained {
        return Ok(None);
    }
    let need = Rat::from_integer(Int::from(2 * quad.n + 1));
    let dist_need = Rat::from_integer(Int::from(threshold));
    let cap = steps.len() + 16 * (2 * quad.n as usize + threshold as usize + 4);
    loop {
        let cone = cones::cone_of_euclid_path(&steps);
        let (c1, c2) = plane_cone_columns(&cone)?;
        let s1 = col_dot(&c1, &quad.base);
        let s2 = col_dot(&c2, &quad.base);
        // beta2 / beta1 = <c1, base> / <c2, base>
        let ratio_ok = s1 >= &need * &s2;
        let dist_ok = cone.distortion_l1() > dist_need;
        if ratio_ok && dist_ok {
            debug_assert!(cone_in_window(quad, &cone)?);
            return Ok(Some(cone));
        }
        if steps.len() >= cap {
            return Ok(None);
        }
        steps.push(EStep::B2);
    }
}

/// Estimates the overlap of the disc's images after `stage` and `stage + 1`
/// subtractive steps, restricted to the witness cone's branch.
///
/// For the cone's branch word `w` the first `stage` steps act on the cone as
/// the single matrix `A = G^-1` (with `G` the cone generator), and one more
/// second-branch letter extends the word to `w'` with generator `G'`. A disc
/// point `z` witnesses overlap exactly when `A z` stays in the closed
/// quadrant (so `z` is in the cone and `A z` lies in the `stage`-image) and
/// `G' A z` is back in the disc (so `A z` also lies in the `stage + 1`
/// image). Both tests are exact, the maps preserve area, and the estimate is
/// the disc area times the hit fraction.
fn overlap_mc(params: &WitnessParams, cone: &Cone) -> Result<WitnessMc> {
    let a = cone.generator().unimodular_inverse()?;
    let extended = match cone.path() {
        ConePath::Euclid(steps) => {
            let mut ext = steps.to_vec();
            ext.push(EStep::B2);
            cones::cone_of_euclid_path(&ext)
        }
        ConePath::Rauzy { .. } => unreachable!("witness cones follow subtractive paths"),
    };
    let forward = extended.generator().clone();
    let den = Int::from(MC_DEN);
    let rsq = &params.radius * &params.radius;
    let n_workers = params.workers.max(1);
    let base = params.samples / n_workers;
    let extra = params.samples % n_workers;
    let hits: u64 = (0..n_workers)
        .into_par_iter()
        .map(|w| {
            let quota = base + u64::from(w < extra);
            let mut rng = rng_for(params.seed, w);
            let mut h = 0u64;
            for _ in 0..quota {
                // Rejection from the bounding square in pure integers:
                // offsets (2u - D)/D for u in 0..=D, accepted inside the disc.
                let (du, dv) = loop {
                    let u = i64::from(rng.gen_range(0..=MC_DEN as u32)) * 2 - MC_DEN as i64;
                    let v = i64::from(rng.gen_range(0..=MC_DEN as u32)) * 2 - MC_DEN as i64;
                    if u * u + v * v <= (MC_DEN * MC_DEN) as i64 {
                        break (u, v);
                    }
                };
                let x = &params.center.0 + &params.radius * Rat::new(Int::from(du), den.clone());
                let y = &params.center.1 + &params.radius * Rat::new(Int::from(dv), den.clone());
                let z = RVector::new(vec![x, y]);
                let image = a.apply(&z).expect("planar");
                if !image.is_nonnegative() {
                    continue;
                }
                let back = forward.apply(&image).expect("planar");
                let dx = &back[0] - &params.center.0;
                let dy = &back[1] - &params.center.1;
                if &dx * &dx + &dy * &dy <= rsq {
                    h += 1;
                }
            }
            h
        })
        .sum();
    let disc_area = std::f64::consts::PI
        * (&params.radius * &params.radius).to_f64().expect("finite");
    let p_hat = if params.samples == 0 {
        0.0
    } else {
        hits as f64 / params.samples as f64
    };
    let overlap_sigma = if params.samples == 0 {
        0.0
    } else {
        disc_area * (p_hat * (1.0 - p_hat) / params.samples as f64).sqrt()
    };
    Ok(WitnessMc {
        samples: params.samples,
        hits,
        disc_area,
        overlap_estimate: p_hat * disc_area,
        overlap_sigma,
    })
}

/// Runs the full overlap witness pipeline for a disc in the open quadrant.
///
/// Exact part: build the window quadrilateral at the disc center, verify it
/// fits inside the disc, find a cone in its angular window with distortion
/// above the threshold and outer intercept ratio at least `2 n_quad + 1`,
/// and check that the resulting trapezoid half overlaps its subtractive
/// image in positive exact area. Empirical part: a seeded lower-bound
/// estimate of the overlap between the disc's `stage` and `stage + 1`
/// images through the witness cone, with a binomial standard error.
pub fn witness_intersection(params: &WitnessParams) -> Result<WitnessReport> {
    if !params.radius.is_positive() {
        return Err(Error::Degenerate("disc radius must be positive".into()));
    }
    if &params.center.0 <= &params.radius || &params.center.1 <= &params.radius {
        return Err(Error::OutOfDomain(
            "disc must lie inside the open quadrant".into(),
        ));
    }
    let quad = build_qn(&params.center, params.n_quad)?;
    let rsq = &params.radius * &params.radius;
    let quad_in_disc = quad.circum_dist_sq() <= rsq;
    let cone = witness_cone(&quad, &params.center, params.threshold, params.depth_cap)?;
    let mut report = WitnessReport {
        params: params.clone(),
        quad_area: quad.area(),
        circumradius_sq: circumradius_sq(&params.center, params.n_quad),
        quad_in_disc,
        found: cone.is_some(),
        cone_path: None,
        stage: None,
        distortion: None,
        beta_ratio: None,
        chord_on_edges: false,
        chord_norms_ok: false,
        intersection: None,
        overlap_positive: false,
        guarantee: false,
        mc: None,
    };
    let Some(cone) = cone else {
        return Ok(report);
    };
    let stage = match cone.path() {
        ConePath::Euclid(steps) => steps.len(),
        ConePath::Rauzy { .. } => unreachable!("witness cones follow subtractive paths"),
    };
    report.cone_path = Some(cone.path().to_compact());
    report.stage = Some(stage);
    report.distortion = Some(cone.distortion_l1());
    let chord = trapezoid_chord(&quad, &cone)?;
    report.beta_ratio = Some(chord.beta_ratio());
    report.chord_on_edges = chord_on_edges(&quad, &cone, &chord)?;
    report.chord_norms_ok = chord_norm_inequality(&quad, &cone, &chord)?;
    let alpha = (chord.alpha1.clone(), chord.alpha2.clone());
    let beta = (chord.beta1.clone(), chord.beta2.clone());
    let inter = check_euclid_intersection(&alpha, &beta, params.n_quad)?;
    report.overlap_positive = inter.overlap_area.is_positive();
    report.guarantee =
        quad_in_disc && report.chord_on_edges && report.overlap_positive && inter.ratio_condition;
    report.intersection = Some(inter);
    report.mc = Some(overlap_mc(params, &cone)?);
    Ok(report)
}
