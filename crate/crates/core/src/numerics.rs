//! Exact arithmetic building blocks: arbitrary-precision rationals, rational
//! vectors, and dense integer matrices with unimodular inverses.
//!
//! Everything here is exact. Floating point appears nowhere in this module;
//! callers that need decimal output convert at the edge.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rat = BigRational;

/// Convenience constructor for small integers.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Rational `p/q` from machine integers. Panics if `q == 0`; use
/// [`parse_rat`] for untrusted input.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    BigRational::new(int(p), int(q))
}

/// Rational with denominator one.
pub fn rat_int(p: i64) -> Rat {
    BigRational::from_integer(int(p))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or `-p/q` with arbitrary-precision parts.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::OutOfDomain(format!("cannot parse rational from {s:?}"));
    match s.split_once('/') {
        None => {
            let p: Int = s.parse().map_err(|_| mk_err())?;
            Ok(BigRational::from_integer(p))
        }
        Some((ps, qs)) => {
            let p: Int = ps.trim().parse().map_err(|_| mk_err())?;
            let q: Int = qs.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::OutOfDomain(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Serializes a rational as its `p/q` string; for use in
/// `#[serde(serialize_with = ...)]` attributes.
pub fn serialize_rat<S: Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&fmt_rat(r))
}

/// Optional-rational variant of [`serialize_rat`].
pub fn serialize_opt_rat<S: Serializer>(
    r: &Option<Rat>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(x) => ser.serialize_some(&fmt_rat(x)),
        None => ser.serialize_none(),
    }
}

/// Serializes a rational point as a two-element `p/q` string array.
pub fn serialize_rat_pair<S: Serializer>(
    p: &(Rat, Rat),
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_some(&[fmt_rat(&p.0), fmt_rat(&p.1)])
}

/// A vector of exact rationals.
///
/// Indexing is zero-based at the API level; operations that speak about
/// "coordinate i" of a length vector in one-based terms document so locally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RVector(Vec<Rat>);

impl RVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        RVector(entries)
    }

    /// Integer-entried vector, mostly for tests and CLI parsing.
    pub fn from_ints(entries: &[i64]) -> Self {
        RVector(entries.iter().map(|&v| rat_int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rat> {
        self.0
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, v| acc + v)
    }

    /// Sum of absolute values.
    pub fn l1_norm(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, v| acc + v.abs())
    }

    pub fn min(&self) -> Option<&Rat> {
        self.0.iter().min()
    }

    pub fn max(&self) -> Option<&Rat> {
        self.0.iter().max()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|v| v.is_positive())
    }

    pub fn scale(&self, c: &Rat) -> RVector {
        RVector(self.0.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, rhs: &RVector) -> Result<RVector> {
        self.check_len(rhs)?;
        Ok(RVector(
            self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, rhs: &RVector) -> Result<RVector> {
        self.check_len(rhs)?;
        Ok(RVector(
            self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Rescales to unit coordinate sum. Errors when the sum is zero.
    pub fn normalized_l1(&self) -> Result<RVector> {
        let s = self.sum();
        if s.is_zero() {
            return Err(Error::Degenerate("cannot normalize zero-sum vector".into()));
        }
        Ok(RVector(self.0.iter().map(|v| v / &s).collect()))
    }

    fn check_len(&self, rhs: &RVector) -> Result<()> {
        if self.len() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                rhs.len()
            )));
        }
        Ok(())
    }
}

impl Index<usize> for RVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(v))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(fmt_rat).collect();
        strings.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        let entries = strings
            .iter()
            .map(|s| parse_rat(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RVector(entries))
    }
}

/// Dense integer matrix, row-major. Sized for the small dimensions used
/// here (n <= 10 or so); entries grow without bound and stay exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(IMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Test/CLI helper with machine-integer entries. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// L1 norm of column `j` (sum of absolute entries).
    pub fn col_l1(&self, j: usize) -> Int {
        (0..self.rows).fold(Int::zero(), |acc, i| acc + self.get(i, j).abs())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn transpose(&self) -> IMatrix {
        let mut t = IMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IMatrix) -> Result<IMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over the rationals.
    pub fn apply(&self, v: &RVector) -> Result<RVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let out = (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rat::zero(), |acc, j| {
                    acc + Rat::from_integer(self.get(i, j).clone()) * &v[j]
                })
            })
            .collect();
        Ok(RVector::new(out))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // Exact by the Bareiss identity.
                    a[i][j] = num / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    /// Inverse of a matrix with determinant +-1. The result is again an
    /// integer matrix; any other determinant is rejected.
    pub fn unimodular_inverse(&self) -> Result<IMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let d = self.det()?;
        if !(d.is_one() || (-&d).is_one()) {
            return Err(Error::NotUnimodular { det: d.to_string() });
        }
        let n = self.rows;
        // Gauss-Jordan over the rationals on [self | I].
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            Rat::from_integer(self.get(i, j).clone())
                        } else if j - n == i {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&r| !a[r][k].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(k, pivot_row);
            let pivot = a[k][k].clone();
            for j in k..2 * n {
                a[k][j] = &a[k][j] / &pivot;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let factor = a[i][k].clone();
                    for j in k..2 * n {
                        let delta = &factor * &a[k][j];
                        a[i][j] = &a[i][j] - delta;
                    }
                }
            }
        }
        let mut inv = IMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                debug_assert!(v.denom().is_one(), "unimodular inverse must be integral");
                inv.set(i, j, v.numer().clone());
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for IMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for IMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        rows.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(de)?;
        let parsed: std::result::Result<Vec<Vec<Int>>, D::Error> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        s.parse::<Int>()
                            .map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
                    })
                    .collect()
            })
            .collect();
        IMatrix::from_rows(parsed?).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_formatting_round_trips() {
        for s in ["3", "-7", "22/7", "-5/3", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        // Non-reduced input reduces.
        assert_eq!(fmt_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn vector_norms_and_ops() {
        let v = RVector::from_ints(&[3, -4]);
        assert_eq!(v.l1_norm(), rat_int(7));
        assert_eq!(v.sum(), rat_int(-1));
        assert!(!v.is_nonnegative());
        let w = RVector::from_ints(&[1, 2]).normalized_l1().unwrap();
        assert_eq!(w.as_slice(), &[rat(1, 3), rat(2, 3)]);
        assert!(RVector::from_ints(&[0, 0]).normalized_l1().is_err());
    }

    #[test]
    fn matrix_product_of_elementary_generators() {
        // [[1,1],[0,1]] * [[1,0],[1,1]] = [[2,1],[1,1]], column sums 3 and 2.
        let b1 = IMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        let b2 = IMatrix::from_i64_rows(&[vec![1, 0], vec![1, 1]]);
        let p = b1.mul(&b2).unwrap();
        assert_eq!(p, IMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]));
        assert_eq!(p.col_l1(0), int(3));
        assert_eq!(p.col_l1(1), int(2));
    }

    #[test]
    fn determinant_matches_cofactor_values() {
        let m = IMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det().unwrap(), int(1));
        let m = IMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det().unwrap(), int(-1));
        let m = IMatrix::from_i64_rows(&[
            vec![2, 0, 1],
            vec![1, 3, 2],
            vec![1, 1, 1],
        ]);
        // Cofactor expansion: 2*(3-2) - 0 + 1*(1-3) = 0.
        assert_eq!(m.det().unwrap(), int(0));
        let m = IMatrix::from_i64_rows(&[
            vec![1, 2, 3],
            vec![0, 1, 4],
            vec![5, 6, 0],
        ]);
        assert_eq!(m.det().unwrap(), int(1));
    }

    #[test]
    fn unimodular_inverse_round_trips() {
        let m = IMatrix::from_i64_rows(&[
            vec![1, 2, 3],
            vec![0, 1, 4],
            vec![5, 6, 0],
        ]);
        let inv = m.unimodular_inverse().unwrap();
        let n = m.rows();
        assert_eq!(m.mul(&inv).unwrap(), IMatrix::identity(n));
        assert_eq!(inv.mul(&m).unwrap(), IMatrix::identity(n));
    }

    #[test]
    fn non_unimodular_matrices_are_rejected() {
        let m = IMatrix::from_i64_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            m.unimodular_inverse(),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn apply_is_exact() {
        let m = IMatrix::from_i64_rows(&[vec![1, -1], vec![0, 1]]);
        let v = RVector::new(vec![rat(5, 3), rat(1, 3)]);
        let out = m.apply(&v).unwrap();
        assert_eq!(out.as_slice(), &[rat(4, 3), rat(1, 3)]);
    }

    #[test]
    fn serde_round_trips() {
        let v = RVector::new(vec![rat(5, 3), rat_int(-2)]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["5/3","-2"]"#);
        let back: RVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);

        let m = IMatrix::from_i64_rows(&[vec![1, -1], vec![0, 1]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1","-1"],["0","1"]]"#);
        let back: IMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
