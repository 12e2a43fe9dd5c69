//! Cones of starting vectors sharing a walk prefix.
//!
//! A walk prefix (subtractive letters in the plane, or induction moves from
//! a base permutation) determines a nonnegative unimodular matrix; the walk
//! is followed exactly by the vectors in the closed cone spanned by its
//! columns. This module builds those matrices, measures their caps and
//! distortion, and assembles partitions into distorted cones.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euclid::{step_matrix as euclid_step_matrix, EStep};
use crate::induction::{inverse_step_matrix, Move};
use crate::numerics::{IMatrix, Int, RVector, Rat};
use crate::perm::Perm;

/// The walk prefix that generated a cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConePath {
    /// Subtractive branch letters in the plane.
    Euclid(Vec<EStep>),
    /// Induction moves from a base permutation.
    Rauzy {
        base: Perm,
        moves: Vec<Move>,
        end: Perm,
    },
}

impl ConePath {
    /// Compact rendering: digits `1`/`2` for subtractive letters, letters
    /// `a`/`b` for induction moves; `.` for the empty path.
    pub fn to_compact(&self) -> String {
        let s: String = match self {
            ConePath::Euclid(steps) => steps
                .iter()
                .map(|s| match s {
                    EStep::B1 => '1',
                    EStep::B2 => '2',
                })
                .collect(),
            ConePath::Rauzy { moves, .. } => moves
                .iter()
                .map(|m| match m {
                    Move::A => 'a',
                    Move::B => 'b',
                })
                .collect(),
        };
        if s.is_empty() {
            ".".into()
        } else {
            s
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ConePath::Euclid(steps) => steps.len(),
            ConePath::Rauzy { moves, .. } => moves.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A closed simplicial cone spanned by the columns of a nonnegative
/// unimodular matrix, remembering the walk that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Cone {
    generator: IMatrix,
    #[serde(skip)]
    inverse: IMatrix,
    path: ConePath,
}

impl Cone {
    fn from_parts(generator: IMatrix, inverse: IMatrix, path: ConePath) -> Cone {
        debug_assert_eq!(
            generator.mul(&inverse).unwrap(),
            IMatrix::identity(generator.rows()),
            "generator and inverse must be a unimodular pair"
        );
        Cone {
            generator,
            inverse,
            path,
        }
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    /// The nonnegative unimodular matrix whose columns span the cone.
    pub fn generator(&self) -> &IMatrix {
        &self.generator
    }

    pub fn inverse(&self) -> &IMatrix {
        &self.inverse
    }

    pub fn path(&self) -> &ConePath {
        &self.path
    }

    /// Closed-cone membership: the coordinates of `v` in the column basis
    /// are all nonnegative.
    pub fn contains(&self, v: &RVector) -> Result<bool> {
        Ok(self.inverse.apply(v)?.is_nonnegative())
    }

    /// Column L1 norms of the generator.
    pub fn column_norms(&self) -> Vec<Int> {
        (0..self.dim()).map(|j| self.generator.col_l1(j)).collect()
    }

    /// Largest column L1 norm over smallest.
    pub fn distortion_l1(&self) -> Rat {
        let norms = self.column_norms();
        let max = norms.iter().max().expect("nonempty").clone();
        let min = norms.iter().min().expect("nonempty").clone();
        Rat::new(max, min)
    }

    /// Ratio of the last column's L1 norm to the second-to-last's; the
    /// quantity driven up by repeated loop moves.
    pub fn last_column_ratio(&self) -> Rat {
        let n = self.dim();
        Rat::new(self.generator.col_l1(n - 1), self.generator.col_l1(n - 2))
    }

    /// Lebesgue measure of the cap `{v in cone : |v|_1 <= alpha}`, which is
    /// a corner simplex with volume `alpha^n / (n! * prod_j |col_j|_1)`.
    pub fn cap_measure(&self, alpha: &Rat) -> Result<Rat> {
        if alpha.is_negative() {
            return Err(Error::OutOfDomain("negative cap height".into()));
        }
        let n = self.dim();
        let mut out = Rat::one();
        for _ in 0..n {
            out *= alpha;
        }
        for k in 1..=n {
            out /= Rat::from_integer(Int::from(k));
        }
        for norm in self.column_norms() {
            out /= Rat::from_integer(norm);
        }
        Ok(out)
    }

    /// Fraction of the standard simplex cap occupied by this cone:
    /// `1 / prod_j |col_j|_1`.
    pub fn unit_fraction(&self) -> Rat {
        let mut denom = Int::one();
        for norm in self.column_norms() {
            denom *= norm;
        }
        Rat::new(Int::one(), denom)
    }
}

/// Cone of plane vectors whose subtractive expansion starts with `steps`.
pub fn cone_of_euclid_path(steps: &[EStep]) -> Cone {
    let mut generator = IMatrix::identity(2);
    let mut inverse = IMatrix::identity(2);
    for &s in steps {
        let m = euclid_step_matrix(s);
        generator = generator.mul(&m).expect("2x2");
        inverse = m
            .unimodular_inverse()
            .expect("elementary")
            .mul(&inverse)
            .expect("2x2");
    }
    Cone::from_parts(generator, inverse, ConePath::Euclid(steps.to_vec()))
}

/// Cone of length vectors at `base` whose induction path starts with
/// `moves`. The generator accumulates the nonnegative inverse step
/// matrices in path order.
pub fn cone_of_rauzy_path(base: &Perm, moves: &[Move]) -> Result<Cone> {
    if let Some(prefix) = base.reducible_prefix() {
        return Err(Error::Reducible { prefix });
    }
    let n = base.n();
    let mut generator = IMatrix::identity(n);
    let mut inverse = IMatrix::identity(n);
    let mut perm = base.clone();
    for &mv in moves {
        let back = inverse_step_matrix(&perm, mv);
        let fwd = crate::induction::step_matrix(&perm, mv);
        generator = generator.mul(&back)?;
        inverse = fwd.mul(&inverse)?;
        perm = match mv {
            Move::A => perm.move_a(),
            Move::B => perm.move_b(),
        };
    }
    Ok(Cone::from_parts(
        generator,
        inverse,
        ConePath::Rauzy {
            base: base.clone(),
            moves: moves.to_vec(),
            end: perm,
        },
    ))
}

/// Cap-measure ratio of a nested pair of cones: how much of `sup`'s cap the
/// sub-cone occupies. Errors unless every column of `sub` lies in `sup`.
pub fn simplex_volume_ratio(sub: &Cone, sup: &Cone) -> Result<Rat> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cones of dimension {} and {}",
            sub.dim(),
            sup.dim()
        )));
    }
    for j in 0..sub.dim() {
        let col = RVector::new(
            sub.generator
                .column(j)
                .into_iter()
                .map(Rat::from_integer)
                .collect(),
        );
        if !sup.contains(&col)? {
            return Err(Error::OutOfDomain(format!(
                "column {} of the sub-cone leaves the super-cone",
                j + 1
            )));
        }
    }
    let mut num = Int::one();
    for norm in sup.column_norms() {
        num *= norm;
    }
    let mut den = Int::one();
    for norm in sub.column_norms() {
        den *= norm;
    }
    Ok(Rat::new(num, den))
}

/// Extends a cone whose path ends at a loop permutation by `extra` second
/// moves. At a loop permutation the second move fixes the permutation and
/// adds the second-to-last column into the last one, so the generator
/// changes only in its last column.
pub fn extend_loop(cone: &Cone, extra: usize) -> Result<Cone> {
    let ConePath::Rauzy { base, moves, end } = &cone.path else {
        return Err(Error::OutOfDomain(
            "loop extension needs an induction-path cone".into(),
        ));
    };
    if !end.is_loop() {
        return Err(Error::OutOfDomain(format!(
            "path ends at {end}, which has no second-move self-loop"
        )));
    }
    let n = cone.dim();
    // (I + E)^extra = I + extra*E for the nilpotent E at (n-1, n).
    let mut back = IMatrix::identity(n);
    back.set(n - 2, n - 1, Int::from(extra));
    let mut fwd = IMatrix::identity(n);
    fwd.set(n - 2, n - 1, -Int::from(extra));
    let generator = cone.generator.mul(&back)?;
    let inverse = fwd.mul(&cone.inverse)?;
    let mut new_moves = moves.clone();
    new_moves.extend(std::iter::repeat(Move::B).take(extra));
    Ok(Cone::from_parts(
        generator,
        inverse,
        ConePath::Rauzy {
            base: base.clone(),
            moves: new_moves,
            end: end.clone(),
        },
    ))
}

/// A depth-capped partition into distorted cones, plus the exact fraction
/// of the standard simplex cap left uncovered by the kept cones.
#[derive(Debug, Clone, Serialize)]
pub struct Partition {
    pub kept: Vec<Cone>,
    #[serde(serialize_with = "crate::numerics::serialize_rat")]
    pub uncovered: Rat,
    /// Tree nodes visited while building the partition.
    pub scanned: usize,
}

impl Partition {
    pub fn covered(&self) -> Rat {
        Rat::one() - &self.uncovered
    }
}

/// Splits the nonnegative quadrant along the subtractive branch tree,
/// keeping each cone as soon as its L1 distortion exceeds `threshold` and
/// abandoning branches at `depth_cap`. Kept cones have pairwise disjoint
/// interiors; their cap fractions plus `uncovered` sum to one exactly.
pub fn euclid_distorted_partition(threshold: u64, depth_cap: usize) -> Partition {
    let mut kept = Vec::new();
    let mut covered = Rat::zero();
    let mut scanned = 0usize;
    let threshold = Rat::from_integer(Int::from(threshold));
    let mut stack = vec![cone_of_euclid_path(&[])];
    while let Some(cone) = stack.pop() {
        scanned += 1;
        if !cone.path().is_empty() && cone.distortion_l1() > threshold {
            covered += cone.unit_fraction();
            kept.push(cone);
            continue;
        }
        if cone.path().len() >= depth_cap {
            continue;
        }
        let ConePath::Euclid(steps) = cone.path() else {
            unreachable!()
        };
        // Push second branch first so the first branch is explored first.
        for s in [EStep::B2, EStep::B1] {
            let mut next = steps.clone();
            next.push(s);
            let m = euclid_step_matrix(s);
            let generator = cone.generator.mul(&m).expect("2x2");
            let inverse = m
                .unimodular_inverse()
                .expect("elementary")
                .mul(&cone.inverse)
                .expect("2x2");
            stack.push(Cone::from_parts(generator, inverse, ConePath::Euclid(next)));
        }
    }
    kept.sort_by_key(|c| match c.path() {
        ConePath::Euclid(steps) => steps
            .iter()
            .map(|s| matches!(s, EStep::B2) as u8)
            .collect::<Vec<_>>(),
        _ => unreachable!(),
    });
    Partition {
        kept,
        uncovered: Rat::one() - covered,
        scanned,
    }
}

/// Splits the length cone at a loop permutation along the induction move
/// tree, keeping a cone when its path has come back to `base` with last
/// column ratio above `threshold`. Branches are abandoned at `depth_cap`.
pub fn rauzy_distorted_partition(
    base: &Perm,
    threshold: u64,
    depth_cap: usize,
) -> Result<Partition> {
    if let Some(prefix) = base.reducible_prefix() {
        return Err(Error::Reducible { prefix });
    }
    if !base.is_loop() {
        return Err(Error::OutOfDomain(format!(
            "partition base {base} must carry a second-move self-loop"
        )));
    }
    let mut kept = Vec::new();
    let mut covered = Rat::zero();
    let mut scanned = 0usize;
    let threshold = Rat::from_integer(Int::from(threshold));
    let mut stack = vec![cone_of_rauzy_path(base, &[])?];
    while let Some(cone) = stack.pop() {
        scanned += 1;
        let ConePath::Rauzy { moves, end, .. } = cone.path().clone() else {
            unreachable!()
        };
        if !moves.is_empty() && &end == base && cone.last_column_ratio() > threshold {
            covered += cone.unit_fraction();
            kept.push(cone);
            continue;
        }
        if moves.len() >= depth_cap {
            continue;
        }
        for mv in [Move::B, Move::A] {
            let back = inverse_step_matrix(&end, mv);
            let fwd = crate::induction::step_matrix(&end, mv);
            let generator = cone.generator.mul(&back)?;
            let inverse = fwd.mul(&cone.inverse)?;
            let mut next_moves = moves.clone();
            next_moves.push(mv);
            let next_end = match mv {
                Move::A => end.move_a(),
                Move::B => end.move_b(),
            };
            stack.push(Cone::from_parts(
                generator,
                inverse,
                ConePath::Rauzy {
                    base: base.clone(),
                    moves: next_moves,
                    end: next_end,
                },
            ));
        }
    }
    kept.sort_by_key(|c| match c.path() {
        ConePath::Rauzy { moves, .. } => moves
            .iter()
            .map(|m| matches!(m, Move::B) as u8)
            .collect::<Vec<_>>(),
        _ => unreachable!(),
    });
    Ok(Partition {
        kept,
        uncovered: Rat::one() - covered,
        scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, rat_int};

    #[test]
    fn empty_path_is_the_full_quadrant() {
        let c = cone_of_euclid_path(&[]);
        assert_eq!(c.generator(), &IMatrix::identity(2));
        assert!(c.contains(&RVector::from_ints(&[3, 5])).unwrap());
        assert!(c.contains(&RVector::from_ints(&[0, 0])).unwrap());
        assert!(!c.contains(&RVector::from_ints(&[-1, 2])).unwrap());
        assert_eq!(c.path().to_compact(), ".");
    }

    #[test]
    fn letter_prefix_cone_membership() {
        let c = cone_of_euclid_path(&[EStep::B1, EStep::B2]);
        assert_eq!(
            c.generator(),
            &IMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]])
        );
        // (5,3) expands B1 B2 ..., (3,5) does not.
        assert!(c.contains(&RVector::from_ints(&[5, 3])).unwrap());
        assert!(!c.contains(&RVector::from_ints(&[3, 5])).unwrap());
        assert_eq!(c.distortion_l1(), rat(3, 2));
        assert_eq!(c.path().to_compact(), "12");
    }

    #[test]
    fn prefix_cones_nest_and_membership_matches_expansion() {
        let v = RVector::from_ints(&[89, 55]);
        let e = crate::euclid::expansion(&v, 8).unwrap();
        for k in 0..=8 {
            let c = cone_of_euclid_path(&e.steps[..k]);
            assert!(c.contains(&v).unwrap(), "prefix of length {k}");
        }
        // A wrong letter at the end breaks membership.
        let mut wrong = e.steps[..7].to_vec();
        wrong.push(match e.steps[7] {
            EStep::B1 => EStep::B2,
            EStep::B2 => EStep::B1,
        });
        assert!(!cone_of_euclid_path(&wrong).contains(&v).unwrap());
    }

    #[test]
    fn induction_path_cone_columns() {
        let base = Perm::from_bottom_row(&[2, 3, 1]).unwrap();
        let c = cone_of_rauzy_path(&base, &[Move::A]).unwrap();
        assert_eq!(
            c.generator(),
            &IMatrix::from_i64_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]),
            "columns e1+e3, e2, e3"
        );
        if let ConePath::Rauzy { end, .. } = c.path() {
            assert_eq!(end.bottom_row(), vec![2, 3, 1]);
        } else {
            panic!("wrong path kind");
        }
    }

    #[test]
    fn induction_cone_contains_exactly_the_matching_starts() {
        let base = Perm::from_bottom_row(&[2, 3, 1]).unwrap();
        // (1,2,4) goes a, (4,2,1) goes b.
        let ca = cone_of_rauzy_path(&base, &[Move::A]).unwrap();
        let cb = cone_of_rauzy_path(&base, &[Move::B]).unwrap();
        let va = RVector::from_ints(&[1, 2, 4]);
        let vb = RVector::from_ints(&[4, 2, 1]);
        assert!(ca.contains(&va).unwrap());
        assert!(!ca.contains(&vb).unwrap());
        assert!(cb.contains(&vb).unwrap());
        assert!(!cb.contains(&va).unwrap());
    }

    #[test]
    fn cap_measure_matches_shoelace_oracle() {
        let c = cone_of_euclid_path(&[EStep::B1, EStep::B2]);
        // Cap triangle: origin and the two columns scaled to L1 length
        // alpha.
        let alpha = rat(3, 4);
        let tri = vec![
            (rat_int(0), rat_int(0)),
            (&alpha * rat(2, 3), &alpha * rat(1, 3)),
            (&alpha * rat(1, 2), &alpha * rat(1, 2)),
        ];
        let oracle = crate::geom2d::shoelace_area(&tri);
        assert_eq!(c.cap_measure(&alpha).unwrap(), oracle);
        assert_eq!(c.cap_measure(&rat_int(1)).unwrap(), rat(1, 12));
        assert!(c.cap_measure(&rat_int(-1)).is_err());
    }

    #[test]
    fn volume_ratio_of_nested_prefixes() {
        let sup = cone_of_euclid_path(&[EStep::B1]);
        let sub = cone_of_euclid_path(&[EStep::B1, EStep::B2]);
        assert_eq!(simplex_volume_ratio(&sub, &sup).unwrap(), rat(1, 3));
        // Non-nested pair errors.
        let other = cone_of_euclid_path(&[EStep::B2]);
        assert!(simplex_volume_ratio(&sub, &other).is_err());
    }

    #[test]
    fn child_fractions_sum_to_parent_fraction() {
        for steps in [
            vec![],
            vec![EStep::B1],
            vec![EStep::B1, EStep::B2],
            vec![EStep::B2, EStep::B2, EStep::B1],
        ] {
            let parent = cone_of_euclid_path(&steps);
            let mut left = steps.clone();
            left.push(EStep::B1);
            let mut right = steps.clone();
            right.push(EStep::B2);
            let sum = cone_of_euclid_path(&left).unit_fraction()
                + cone_of_euclid_path(&right).unit_fraction();
            assert_eq!(sum, parent.unit_fraction());
        }
    }

    #[test]
    fn norm_product_grows_at_least_linearly() {
        // At depth k every prefix cone satisfies |l1| * |l2| >= k + 1.
        fn walk(steps: &mut Vec<EStep>, depth: usize) {
            let c = cone_of_euclid_path(steps);
            let norms = c.column_norms();
            let product = &norms[0] * &norms[1];
            assert!(
                product >= int((steps.len() + 1) as i64),
                "depth {} path {:?}",
                steps.len(),
                steps
            );
            if steps.len() == depth {
                return;
            }
            for s in [EStep::B1, EStep::B2] {
                steps.push(s);
                walk(steps, depth);
                steps.pop();
            }
        }
        walk(&mut Vec::new(), 8);
    }

    #[test]
    fn loop_extension_changes_only_the_last_column() {
        let base = Perm::from_bottom_row(&[2, 1]).unwrap();
        let c = cone_of_rauzy_path(&base, &[]).unwrap();
        let ext = extend_loop(&c, 3).unwrap();
        assert_eq!(
            ext.generator(),
            &IMatrix::from_i64_rows(&[vec![1, 3], vec![0, 1]])
        );
        // Same thing step by step.
        let stepwise = cone_of_rauzy_path(&base, &[Move::B, Move::B, Move::B]).unwrap();
        assert_eq!(ext.generator(), stepwise.generator());
        assert_eq!(ext.inverse(), stepwise.inverse());
        // Ratio of cap volumes: new cap over old is |l2| / (|l2| + 3|l1|).
        assert_eq!(simplex_volume_ratio(&ext, &c).unwrap(), rat(1, 4));
    }

    #[test]
    fn loop_extension_requires_a_loop_end() {
        let base = Perm::from_bottom_row(&[3, 2, 1]).unwrap();
        let c = cone_of_rauzy_path(&base, &[]).unwrap();
        assert!(extend_loop(&c, 2).is_err());
        let e = cone_of_euclid_path(&[]);
        assert!(extend_loop(&e, 2).is_err());
    }

    #[test]
    fn threshold_one_partition_covers_everything_at_depth_one() {
        let p = euclid_distorted_partition(1, 12);
        assert_eq!(p.kept.len(), 2);
        assert_eq!(p.uncovered, rat_int(0));
        let paths: Vec<String> = p.kept.iter().map(|c| c.path().to_compact()).collect();
        assert_eq!(paths, vec!["1", "2"]);
    }

    #[test]
    fn partition_bookkeeping_is_exact() {
        let p = euclid_distorted_partition(5, 12);
        let mut covered = Rat::zero();
        for c in &p.kept {
            assert!(c.distortion_l1() > rat_int(5));
            covered += c.unit_fraction();
        }
        assert_eq!(covered + &p.uncovered, rat_int(1));
        // Frozen values from an exhaustive exact tree walk: 232 kept cones
        // and an uncovered fraction of about 0.20834.
        assert_eq!(p.kept.len(), 232);
        assert!(p.uncovered > rat(1, 5));
        assert!(p.uncovered < rat(21, 100));
    }

    #[test]
    fn zero_depth_partition_covers_nothing() {
        let p = euclid_distorted_partition(7, 0);
        assert!(p.kept.is_empty());
        assert_eq!(p.uncovered, rat_int(1));
    }

    #[test]
    fn kept_cones_have_disjoint_interiors() {
        let p = euclid_distorted_partition(3, 9);
        // Generic sample points land in at most one kept cone's interior;
        // use strict positivity of the coordinates to avoid boundaries.
        for v in [
            RVector::new(vec![rat(355, 7), rat(113, 5)]),
            RVector::new(vec![rat(89, 3), rat(55, 2)]),
            RVector::new(vec![rat(13, 11), rat(700, 9)]),
        ] {
            let mut hits = 0;
            for c in &p.kept {
                if c.inverse().apply(&v).unwrap().is_positive() {
                    hits += 1;
                }
            }
            assert!(hits <= 1, "{v} in {hits} open cones");
        }
    }

    #[test]
    fn rauzy_partition_at_a_loop_base() {
        let base = Perm::from_bottom_row(&[3, 1, 2]).unwrap();
        assert!(base.is_loop());
        let p = rauzy_distorted_partition(&base, 2, 8).unwrap();
        assert!(!p.kept.is_empty());
        for c in &p.kept {
            let ConePath::Rauzy { end, moves, .. } = c.path() else {
                panic!()
            };
            assert_eq!(end, &base, "kept cones end back at the base");
            assert!(!moves.is_empty());
            assert!(c.last_column_ratio() > rat_int(2));
            assert!(c.generator().is_nonnegative());
        }
        let total = p
            .kept
            .iter()
            .fold(Rat::zero(), |acc, c| acc + c.unit_fraction());
        assert_eq!(total + &p.uncovered, rat_int(1));
        assert!(p.uncovered >= rat_int(0));
        assert!(p.uncovered < rat_int(1));
    }

    #[test]
    fn rauzy_partition_rejects_bad_bases() {
        let not_loop = Perm::from_bottom_row(&[3, 2, 1]).unwrap();
        assert!(rauzy_distorted_partition(&not_loop, 2, 6).is_err());
        let reducible = Perm::from_bottom_row(&[2, 1, 3]).unwrap();
        assert!(rauzy_distorted_partition(&reducible, 2, 6).is_err());
    }
}
