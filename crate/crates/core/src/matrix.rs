//! Dense sign matrices stored as two bit planes.
//!
//! Each entry takes two bits: one in the `plus` plane and one in the `minus`
//! plane, rows laid out one after another. `Amb` sets both. With this layout a
//! qualitative product is a handful of word-wide ORs per nonzero entry of the
//! left factor, which is what keeps the exhaustive oracles fast.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sign::Sign;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    plus: Vec<u64>,
    minus: Vec<u64>,
}

impl SignMatrix {
    /// Zero pattern with `rows` rows and `cols` columns. Off-diagonal blocks
    /// of a partitioned pattern are rectangular; everything that needs a
    /// square operand checks for it.
    pub fn zeros_rect(rows: usize, cols: usize) -> SignMatrix {
        let words = cols.div_ceil(WORD);
        SignMatrix {
            rows,
            cols,
            words,
            plus: vec![0; rows * words],
            minus: vec![0; rows * words],
        }
    }

    pub fn zeros(n: usize) -> SignMatrix {
        SignMatrix::zeros_rect(n, n)
    }

    pub fn identity(n: usize) -> SignMatrix {
        let mut m = SignMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Sign::Plus);
        }
        m
    }

    /// The all-`+` pattern `J`.
    pub fn all_plus(rows: usize, cols: usize) -> SignMatrix {
        SignMatrix::constant(rows, cols, Sign::Plus)
    }

    pub fn constant(rows: usize, cols: usize, s: Sign) -> SignMatrix {
        SignMatrix::from_fn(rows, cols, |_, _| s)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Sign) -> SignMatrix {
        let mut m = SignMatrix::zeros_rect(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a pattern from row vectors; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<Sign>]) -> Result<SignMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {}",
                bad + 1,
                rows[bad].len(),
                cols
            )));
        }
        Ok(SignMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
    }

    /// Parses rows written as strings over `+ - 0 #`, e.g. `["+-", "0+"]`.
    /// Convenient for tests and fixtures; the CLI parser adds line handling
    /// and the `#` gate on top of this.
    pub fn from_strs(rows: &[&str]) -> Result<SignMatrix> {
        let mut parsed = Vec::with_capacity(rows.len());
        for (line, row) in rows.iter().enumerate() {
            let signs = row
                .chars()
                .map(|c| {
                    Sign::from_char(c).ok_or_else(|| Error::Parse {
                        line: line + 1,
                        msg: format!("illegal character {c:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            parsed.push(signs);
        }
        SignMatrix::from_rows(&parsed)
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

    /// Order of a square pattern.
    pub fn order(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> (usize, u64) {
        debug_assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (i * self.words + j / WORD, 1u64 << (j % WORD))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Sign {
        let (w, bit) = self.slot(i, j);
        Sign::from_bits(self.plus[w] & bit != 0, self.minus[w] & bit != 0)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, s: Sign) {
        let (w, bit) = self.slot(i, j);
        let (p, m) = s.bits();
        if p {
            self.plus[w] |= bit;
        } else {
            self.plus[w] &= !bit;
        }
        if m {
            self.minus[w] |= bit;
        } else {
            self.minus[w] &= !bit;
        }
    }

    pub fn row(&self, i: usize) -> Vec<Sign> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Sign>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| self.get(i, j)))
    }

    pub fn is_proper(&self) -> bool {
        self.plus.iter().zip(&self.minus).all(|(p, m)| p & m == 0)
    }

    pub(crate) fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::Ambiguous)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|&w| w == 0)
    }

    /// True when no entry is `Zero`.
    pub fn is_entrywise_nonzero(&self) -> bool {
        (0..self.rows).all(|i| {
            let r = self.row_range(i);
            self.plus[r.clone()]
                .iter()
                .zip(&self.minus[r])
                .enumerate()
                .all(|(w, (p, m))| p | m == self.word_mask(w))
        })
    }

    pub fn nonzero_count(&self) -> usize {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| (p | m).count_ones() as usize)
            .sum()
    }

    #[inline]
    fn row_range(&self, i: usize) -> Range<usize> {
        i * self.words..(i + 1) * self.words
    }

    #[inline]
    fn word_mask(&self, w: usize) -> u64 {
        let used = (self.cols - w * WORD).min(WORD);
        if used == WORD {
            u64::MAX
        } else {
            (1u64 << used) - 1
        }
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        let r = self.row_range(i);
        self.plus[r.clone()].iter().chain(&self.minus[r]).all(|&w| w == 0)
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn rows_equal(&self, a: usize, b: usize) -> bool {
        self.plus[self.row_range(a)] == self.plus[self.row_range(b)]
            && self.minus[self.row_range(a)] == self.minus[self.row_range(b)]
    }

    pub fn cols_equal(&self, a: usize, b: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, a) == self.get(i, b))
    }

    /// Qualitative product `self * rhs`.
    pub fn mat_mul(&self, rhs: &SignMatrix) -> Result<SignMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &SignMatrix) -> SignMatrix {
        let mut out = SignMatrix::zeros_rect(self.rows, rhs.cols);
        self.mul_into(rhs, &mut out);
        out
    }

    /// `self * rhs` written over `out`, which must already have the product's
    /// shape. Lets tight loops reuse one buffer.
    pub(crate) fn mul_into(&self, rhs: &SignMatrix, out: &mut SignMatrix) {
        debug_assert!(self.cols == rhs.rows && out.rows == self.rows && out.cols == rhs.cols);
        out.plus.fill(0);
        out.minus.fill(0);
        let ow = out.words;
        for i in 0..self.rows {
            let (op, om) = (i * ow, (i + 1) * ow);
            for w in 0..self.words {
                let p = self.plus[i * self.words + w];
                let m = self.minus[i * self.words + w];
                let mut nz = p | m;
                while nz != 0 {
                    let bit = nz.trailing_zeros() as usize;
                    nz &= nz - 1;
                    let k = w * WORD + bit;
                    let (rp, rm) = (&rhs.plus[rhs.row_range(k)], &rhs.minus[rhs.row_range(k)]);
                    let (kp, km) = ((p >> bit) & 1 == 1, (m >> bit) & 1 == 1);
                    let (dst_p, dst_m) = {
                        let (a, b) = (&mut out.plus[op..om], &mut out.minus[op..om]);
                        (a, b)
                    };
                    for x in 0..ow {
                        let (bp, bm) = (rp[x], rm[x]);
                        match (kp, km) {
                            (true, false) => {
                                dst_p[x] |= bp;
                                dst_m[x] |= bm;
                            }
                            (false, true) => {
                                dst_p[x] |= bm;
                                dst_m[x] |= bp;
                            }
                            _ => {
                                dst_p[x] |= bp | bm;
                                dst_m[x] |= bp | bm;
                            }
                        }
                    }
                }
            }
        }
    }

    /// Entrywise qualitative sum.
    pub fn add(&self, rhs: &SignMatrix) -> Result<SignMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        out.add_assign_unchecked(rhs);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, rhs: &SignMatrix) {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        for (a, b) in self.plus.iter_mut().zip(&rhs.plus) {
            *a |= b;
        }
        for (a, b) in self.minus.iter_mut().zip(&rhs.minus) {
            *a |= b;
        }
    }

    /// `A^e` by left-to-right repeated multiplication, `A^{e} = A^{e-1} A`.
    /// `e = 0` gives the identity.
    pub fn pow(&self, e: usize) -> Result<SignMatrix> {
        let n = self.require_square()?;
        if e == 0 {
            return Ok(SignMatrix::identity(n));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul_unchecked(self);
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> SignMatrix {
        SignMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn negate(&self) -> SignMatrix {
        SignMatrix {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
            ..self.clone()
        }
    }

    /// Permutation similarity. Position `i` of the result takes original index
    /// `perm[i]`, i.e. `B[i][j] = A[perm[i]][perm[j]]` (this is `PᵀAP`).
    pub fn permute(&self, perm: &[usize]) -> Result<SignMatrix> {
        let n = self.require_square()?;
        check_permutation(perm, n)?;
        Ok(SignMatrix::from_fn(n, n, |i, j| self.get(perm[i], perm[j])))
    }

    /// Signature similarity `DAD`, `d` a vector over `{+, -}`.
    pub fn signature(&self, d: &[Sign]) -> Result<SignMatrix> {
        let n = self.require_square()?;
        if d.len() != n {
            return Err(Error::Dimension(format!("signature of length {} for order {n}", d.len())));
        }
        if d.iter().any(|s| !matches!(s, Sign::Plus | Sign::Minus)) {
            return Err(Error::InvalidSignature);
        }
        Ok(SignMatrix::from_fn(n, n, |i, j| d[i] * self.get(i, j) * d[j]))
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> SignMatrix {
        let k = indices.len();
        SignMatrix::from_fn(k, k, |i, j| self.get(indices[i], indices[j]))
    }

    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> SignMatrix {
        SignMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j))
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, b: &SignMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(row0 + i, col0 + j, b.get(i, j));
            }
        }
    }

    /// True when every nonzero entry of `self` appears with the same sign in
    /// `other`. Entries are compared as sets of term signs, so `#` in `other`
    /// contains anything and `#` in `self` is only contained in `#`.
    pub fn is_subpattern_of(&self, other: &SignMatrix) -> Result<bool> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot compare {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.plus.iter().zip(&other.plus).all(|(a, b)| a & !b == 0)
            && self.minus.iter().zip(&other.minus).all(|(a, b)| a & !b == 0))
    }

    /// Minimal potence index `k <= k_max` with `A^{k+1} = A`.
    ///
    /// Powers are recorded as they are produced; if a power repeats before `A`
    /// comes back, the sequence has entered a cycle that excludes `A` and the
    /// search stops early.
    pub fn potence_index(&self, k_max: usize) -> Result<PotenceReport> {
        self.require_square()?;
        let mut seen: HashMap<SignMatrix, usize> = HashMap::new();
        seen.insert(self.clone(), 1);
        let mut power = self.clone();
        let mut exponent = 1;
        while exponent <= k_max {
            power = power.mul_unchecked(self);
            exponent += 1;
            if power == *self {
                return Ok(PotenceReport {
                    k: Some(exponent - 1),
                    period_entered: false,
                    powers_examined: exponent - 1,
                });
            }
            if seen.insert(power.clone(), exponent).is_some() {
                return Ok(PotenceReport {
                    k: None,
                    period_entered: true,
                    powers_examined: exponent - 1,
                });
            }
        }
        Ok(PotenceReport { k: None, period_entered: false, powers_examined: exponent - 1 })
    }

    /// For a square pattern with exactly one nonzero, proper entry in every
    /// row and column, the column index and sign of that entry in each row.
    pub fn monomial(&self) -> Option<Vec<(usize, Sign)>> {
        if !self.is_square() {
            return None;
        }
        let mut seen = vec![false; self.cols];
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let r = self.row_range(i);
            let mut found = None;
            for (w, (p, m)) in self.plus[r.clone()].iter().zip(&self.minus[r]).enumerate() {
                if p & m != 0 {
                    return None;
                }
                let nz = p | m;
                if nz == 0 {
                    continue;
                }
                if found.is_some() || nz.count_ones() != 1 {
                    return None;
                }
                found = Some(w * WORD + nz.trailing_zeros() as usize);
            }
            let j = found?;
            if std::mem::replace(&mut seen[j], true) {
                return None;
            }
            out.push((j, self.get(i, j)));
        }
        Some(out)
    }

    /// `A^{k+1} = A`, the fixed-point form of k-potence (k need not be minimal).
    pub fn satisfies_power_identity(&self, k: usize) -> Result<bool> {
        Ok(self.pow(k + 1)? == *self)
    }
}

/// Default search bound for [`SignMatrix::potence_index`]:
/// `2 * lcm(1..=n)`, capped at 2520.
pub fn default_kmax(n: usize) -> usize {
    let mut l: usize = 1;
    for i in 2..=n.max(1) {
        l = num_integer::lcm(l, i);
        if l >= 2520 {
            return 2520;
        }
    }
    (2 * l).min(2520)
}

/// Outcome of a potence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotenceReport {
    /// Smallest `k` with `A^{k+1} = A`, if one was found.
    pub k: Option<usize>,
    /// Powers started repeating without returning to `A`.
    pub period_entered: bool,
    /// Number of multiplications performed.
    pub powers_examined: usize,
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!("length {} for order {n}", perm.len())));
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut hit[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Free-function form of [`SignMatrix::mat_mul`].
pub fn mat_mul(a: &SignMatrix, b: &SignMatrix) -> Result<SignMatrix> {
    a.mat_mul(b)
}

/// Free-function form of [`SignMatrix::pow`]; `e >= 1`.
pub fn mat_pow(a: &SignMatrix, e: usize) -> Result<SignMatrix> {
    if e == 0 {
        return Err(Error::Dimension("exponent must be positive".into()));
    }
    a.pow(e)
}

pub fn subpattern(a: &SignMatrix, b: &SignMatrix) -> Result<bool> {
    a.is_subpattern_of(b)
}

/// Equivalence operations on patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `PᵀAP` with `perm[i]` the original index placed at position `i`.
    Permutation(Vec<usize>),
    /// `DAD` with `D = diag(d)`.
    Signature(Vec<Sign>),
    Transpose,
    Negate,
}

impl Transform {
    pub fn apply(&self, a: &SignMatrix) -> Result<SignMatrix> {
        a.require_square()?;
        match self {
            Transform::Permutation(p) => a.permute(p),
            Transform::Signature(d) => a.signature(d),
            Transform::Transpose => Ok(a.transpose()),
            Transform::Negate => Ok(a.negate()),
        }
    }
}

pub fn transform(a: &SignMatrix, t: &Transform) -> Result<SignMatrix> {
    t.apply(a)
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: String = (0..self.cols).map(|j| self.get(i, j).to_char()).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_char()).collect())
            .collect();
        write!(f, "SignMatrix{rows:?}")
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    /// Whitespace-separated rows, e.g. `"+- 0+"`.
    fn from_str(s: &str) -> Result<SignMatrix> {
        let rows: Vec<&str> = s.split_whitespace().collect();
        SignMatrix::from_strs(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    fn m(s: &str) -> SignMatrix {
        s.parse().unwrap()
    }

    fn p(n: usize) -> SignMatrix {
        SignMatrix::from_fn(n, n, |i, j| if (i + 1) % n == j { Plus } else { Zero })
    }

    #[test]
    fn permutation_pattern_squared() {
        assert_eq!(p(2).mat_mul(&p(2)).unwrap(), m("+0 0+"));
        let j = SignMatrix::all_plus(2, 2);
        assert_eq!(j.mat_mul(&j).unwrap(), j);
    }

    #[test]
    fn mixed_path_square_is_ambiguous_at_1_4() {
        let a = m("++-+ 0+0+ 000+ 000+");
        let sq = a.mat_mul(&a).unwrap();
        assert_eq!(sq.get(0, 3), Amb);
        assert!(!sq.is_proper());
    }

    #[test]
    fn powers() {
        let q1 = m("-");
        assert_eq!(q1.pow(2).unwrap(), m("+"));
        assert_eq!(q1.pow(3).unwrap(), m("-"));
        assert_eq!(p(3).pow(4).unwrap(), p(3));
        assert!(mat_pow(&q1, 0).is_err());
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(m("+0 0+").mat_mul(&m("+")), Err(Error::Dimension(_))));
        assert!(matches!(m("+").is_subpattern_of(&m("+0 0+")), Err(Error::Dimension(_))));
        assert!(SignMatrix::from_strs(&["+0", "0"]).is_err());
    }

    #[test]
    fn potence_examples() {
        assert_eq!(m("+- 0+").potence_index(10).unwrap().k, Some(1));
        let q2 = m("0+ -0");
        assert_eq!(q2.potence_index(10).unwrap().k, Some(4));
    }

    #[test]
    fn subpattern_examples() {
        let b = m("+- 0+");
        assert!(SignMatrix::zeros(2).is_subpattern_of(&b).unwrap());
        assert!(b.is_subpattern_of(&b).unwrap());
        assert!(!m("+").is_subpattern_of(&m("-")).unwrap());
    }

    #[test]
    fn transforms() {
        let a = m("+-0 0+- -00");
        assert_eq!(Transform::Signature(vec![Plus; 3]).apply(&a).unwrap(), a);
        assert_eq!(Transform::Negate.apply(&m("-")).unwrap(), m("+"));
        assert_eq!(a.transpose().transpose(), a);
        assert!(Transform::Permutation(vec![0, 0, 1]).apply(&a).is_err());
        assert!(Transform::Signature(vec![Plus, Zero, Plus]).apply(&a).is_err());
        let b = a.permute(&[2, 0, 1]).unwrap();
        assert_eq!(b.get(0, 0), a.get(2, 2));
        assert_eq!(b.get(0, 1), a.get(2, 0));
    }

    #[test]
    fn wide_matrices_use_several_words() {
        let n = 70;
        let a = p(n);
        assert_eq!(a.pow(n + 1).unwrap(), a);
        assert!(SignMatrix::all_plus(3, 70).is_entrywise_nonzero());
        let mut z = SignMatrix::all_plus(3, 70);
        z.set(2, 69, Zero);
        assert!(!z.is_entrywise_nonzero());
    }

    #[test]
    fn default_kmax_values() {
        assert_eq!(default_kmax(1), 2);
        assert_eq!(default_kmax(3), 12);
        assert_eq!(default_kmax(8), 1680);
        assert_eq!(default_kmax(9), 2520);
    }
}
