//! Exact rational matrices for realizations.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::sign::Sign;

/// Dense matrix over arbitrary-precision rationals. No operation rounds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn sign_of(x: &BigRational) -> Sign {
    if x.is_zero() {
        Sign::Zero
    } else if x.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

impl RationalMatrix {
    pub fn zeros_rect(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn zeros(n: usize) -> RationalMatrix {
        RationalMatrix::zeros_rect(n, n)
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> RationalMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, entries }
    }

    /// Square matrix from integer rows, mostly for fixtures.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<RationalMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix::from_fn(rows.len(), cols, |i, j| ratio(rows[i][j], 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RationalMatrix::zeros_rect(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, rhs: &RationalMatrix) {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }

    pub fn pow(&self, e: usize) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = RationalMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> RationalMatrix {
        RationalMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j).clone())
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, b: &RationalMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(row0 + i, col0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn sign_pattern(&self) -> SignMatrix {
        SignMatrix::from_fn(self.rows, self.cols, |i, j| sign_of(self.get(i, j)))
    }

    /// Entries as `"p/q"` strings (`"p"` when the denominator is 1).
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<RationalMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (line, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Parse { line: line + 1, msg: "ragged rational row".into() });
            }
            for cell in row {
                entries.push(parse_rational(cell).ok_or_else(|| Error::Parse {
                    line: line + 1,
                    msg: format!("not a rational number: {cell:?}"),
                })?);
            }
        }
        Ok(RationalMatrix { rows: rows.len(), cols, entries })
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// `B ∈ Q(A)`: every entry of `B` has the sign prescribed by `A`.
pub fn qualitative_member(b: &RationalMatrix, a: &SignMatrix) -> Result<bool> {
    if (b.rows(), b.cols()) != (a.rows(), a.cols()) {
        return Err(Error::Dimension(format!(
            "{}x{} matrix against {}x{} pattern",
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(b.sign_pattern() == *a)
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix{:?}", self.to_string_rows())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_string_rows() {
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let z = RationalMatrix::zeros(2);
        assert!(qualitative_member(&z, &SignMatrix::zeros(2)).unwrap());
        let mut b = RationalMatrix::zeros(1);
        b.set(0, 0, ratio(1, 2));
        assert!(!qualitative_member(&b, &"-".parse().unwrap()).unwrap());
        assert!(qualitative_member(&b, &"+".parse().unwrap()).unwrap());
        assert!(qualitative_member(&b, &SignMatrix::zeros(2)).is_err());
    }

    #[test]
    fn exact_powers() {
        let b = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let sq = b.pow(2).unwrap();
        assert_eq!(sq.get(0, 1), &ratio(2, 1));
        let half = RationalMatrix::from_fn(2, 2, |_, _| ratio(1, 2));
        assert_eq!(half.pow(2).unwrap(), half);
    }

    #[test]
    fn string_round_trip() {
        let b = RationalMatrix::from_fn(2, 2, |i, j| ratio(i as i64 - 1, j as i64 + 2));
        let back = RationalMatrix::from_string_rows(&b.to_string_rows()).unwrap();
        assert_eq!(back, b);
        assert!(RationalMatrix::from_string_rows(&[vec!["1/0".into()]]).is_err());
    }
}
