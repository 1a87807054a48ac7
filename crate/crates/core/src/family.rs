//! Admissible off-diagonal blocks between two cyclic diagonal blocks.
//!
//! Between two nonzero blocks the off-diagonal block commutes with the
//! diagonal ones, which pins it to tiled copies of a `g×g` circulant
//! (`∑ b_h P_g^h`) or an alternatingly signed anticirculant (`∑ b_h Q_g^h`),
//! `g = gcd(m, n)`. A 1×1 zero block on either side leaves a free vector, and
//! two adjacent zero blocks force zero.

use std::fmt;

use num_integer::Integer;

use crate::cyclic::BlockType;
use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Circulant,
    Anticirculant,
    ZeroForced,
    RowVector,
    ColVector,
    /// A free 1×1 entry between two non-adjacent zero blocks.
    Scalar,
}

/// One member of a family: the kind, `g` and the coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirculantSpec {
    pub g: usize,
    pub kind: FamilyKind,
    pub b: Vec<Sign>,
    /// Tile `(i, j)` carries the extra sign `(-)^{i+j}`.
    pub leading_sign_alternation: bool,
}

/// Family of admissible blocks for a pair of diagonal block tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub rows: BlockType,
    pub cols: BlockType,
    pub kind: FamilyKind,
    pub g: usize,
}

/// Family for the block between diagonal blocks `ti` (rows) and `tj`
/// (columns). `adjacent` matters only for two zero blocks.
pub fn block_family(ti: BlockType, tj: BlockType, adjacent: bool) -> Family {
    use BlockType::*;
    let (kind, g) = match (ti, tj) {
        (P(m), P(n)) => (FamilyKind::Circulant, m.gcd(&n)),
        (P(m), Q(n)) => {
            let g = m.gcd(&n);
            (if (m / g) % 2 == 1 { FamilyKind::ZeroForced } else { FamilyKind::Anticirculant }, g)
        }
        (Q(m), P(n)) => {
            let g = m.gcd(&n);
            (if (n / g) % 2 == 1 { FamilyKind::ZeroForced } else { FamilyKind::Anticirculant }, g)
        }
        (Q(m), Q(n)) => {
            let g = m.gcd(&n);
            (if ((m + n) / g) % 2 == 1 { FamilyKind::ZeroForced } else { FamilyKind::Anticirculant }, g)
        }
        (ZeroOne, ZeroOne) => (if adjacent { FamilyKind::ZeroForced } else { FamilyKind::Scalar }, 1),
        (ZeroOne, _) => (FamilyKind::RowVector, 1),
        (_, ZeroOne) => (FamilyKind::ColVector, 1),
    };
    Family { rows: ti, cols: tj, kind, g }
}

impl Family {
    pub fn block_rows(&self) -> usize {
        self.rows.size()
    }

    pub fn block_cols(&self) -> usize {
        self.cols.size()
    }

    /// Length of the coefficient vector.
    pub fn coeff_len(&self) -> usize {
        match self.kind {
            FamilyKind::Circulant | FamilyKind::Anticirculant => self.g,
            FamilyKind::ZeroForced => 0,
            FamilyKind::RowVector => self.block_cols(),
            FamilyKind::ColVector => self.block_rows(),
            FamilyKind::Scalar => 1,
        }
    }

    pub fn member_count(&self) -> usize {
        3usize.pow(self.coeff_len() as u32)
    }

    pub fn spec(&self, b: Vec<Sign>) -> CirculantSpec {
        CirculantSpec {
            g: self.g,
            kind: self.kind,
            b,
            leading_sign_alternation: self.kind == FamilyKind::Anticirculant,
        }
    }

    pub fn materialize(&self, b: &[Sign]) -> Result<SignMatrix> {
        materialize(&self.spec(b.to_vec()), self.block_rows(), self.block_cols())
    }

    /// Every member, coefficient vectors in lexicographic order over
    /// `(0, +, -)`.
    pub fn members(&self) -> impl Iterator<Item = SignMatrix> + '_ {
        let len = self.coeff_len();
        (0..self.member_count()).map(move |mut code| {
            let mut b = vec![Sign::Zero; len];
            for slot in b.iter_mut().rev() {
                *slot = Sign::PROPER[code % 3];
                code /= 3;
            }
            self.materialize(&b).expect("family coefficients have the family's length")
        })
    }

    /// Coefficient vector of `block` if it belongs to the family.
    pub fn coefficients(&self, block: &SignMatrix) -> Option<Vec<Sign>> {
        if (block.rows(), block.cols()) != (self.block_rows(), self.block_cols()) || !block.is_proper() {
            return None;
        }
        let b: Vec<Sign> = match self.kind {
            FamilyKind::Circulant | FamilyKind::Anticirculant => (0..self.g).map(|h| block.get(0, h)).collect(),
            FamilyKind::ZeroForced => Vec::new(),
            FamilyKind::RowVector => block.row(0),
            FamilyKind::ColVector => (0..block.rows()).map(|i| block.get(i, 0)).collect(),
            FamilyKind::Scalar => vec![block.get(0, 0)],
        };
        (self.materialize(&b).ok()? == *block).then_some(b)
    }

    pub fn contains(&self, block: &SignMatrix) -> bool {
        self.coefficients(block).is_some()
    }
}

/// Tiles the family member described by `spec` into a `rows × cols` block.
pub fn materialize(spec: &CirculantSpec, rows: usize, cols: usize) -> Result<SignMatrix> {
    let bad = |msg: String| Err(Error::InconsistentForm(msg));
    match spec.kind {
        FamilyKind::Circulant | FamilyKind::Anticirculant => {
            let g = spec.g;
            if g == 0 || rows % g != 0 || cols % g != 0 || spec.b.len() != g {
                return bad(format!("circulant of order {g} with {} coefficients cannot tile {rows}x{cols}", spec.b.len()));
            }
            let anti = spec.kind == FamilyKind::Anticirculant;
            Ok(SignMatrix::from_fn(rows, cols, |i, j| {
                let (r, c) = (i % g, j % g);
                let mut s = spec.b[(c + g - r) % g];
                if anti && c < r {
                    s = -s;
                }
                if spec.leading_sign_alternation && (i / g + j / g) % 2 == 1 {
                    s = -s;
                }
                s
            }))
        }
        FamilyKind::ZeroForced => {
            if !spec.b.is_empty() {
                return bad("zero-forced block carries coefficients".into());
            }
            Ok(SignMatrix::zeros_rect(rows, cols))
        }
        FamilyKind::RowVector => {
            if rows != 1 || spec.b.len() != cols {
                return bad(format!("row vector of length {} cannot fill {rows}x{cols}", spec.b.len()));
            }
            Ok(SignMatrix::from_fn(1, cols, |_, j| spec.b[j]))
        }
        FamilyKind::ColVector => {
            if cols != 1 || spec.b.len() != rows {
                return bad(format!("column vector of length {} cannot fill {rows}x{cols}", spec.b.len()));
            }
            Ok(SignMatrix::from_fn(rows, 1, |i, _| spec.b[i]))
        }
        FamilyKind::Scalar => {
            if (rows, cols) != (1, 1) || spec.b.len() != 1 {
                return bad("scalar block must be 1x1".into());
            }
            Ok(SignMatrix::constant(1, 1, spec.b[0]))
        }
    }
}

/// `aii · b = b · ajj` with both products free of ambiguous entries.
pub fn commute_check(aii: &SignMatrix, b: &SignMatrix, ajj: &SignMatrix) -> Result<bool> {
    Commutation::new(aii, ajj).holds(b)
}

/// [`commute_check`] with the diagonal blocks fixed, for testing many
/// off-diagonal blocks against the same pair.
#[derive(Clone, Debug)]
pub struct Commutation<'a> {
    aii: &'a SignMatrix,
    ajj: &'a SignMatrix,
    monomial: Option<(Vec<(usize, Sign)>, Vec<(usize, Sign)>)>,
}

impl<'a> Commutation<'a> {
    pub fn new(aii: &'a SignMatrix, ajj: &'a SignMatrix) -> Commutation<'a> {
        let monomial = aii.monomial().zip(ajj.monomial());
        Commutation { aii, ajj, monomial }
    }

    pub fn holds(&self, b: &SignMatrix) -> Result<bool> {
        let (aii, ajj) = (self.aii, self.ajj);
        if aii.cols() != b.rows() || b.cols() != ajj.rows() {
            return Err(Error::Dimension(format!(
                "cannot commute {}x{} through {}x{} and {}x{}",
                aii.rows(),
                aii.cols(),
                b.rows(),
                b.cols(),
                ajj.rows(),
                ajj.cols()
            )));
        }
        match &self.monomial {
            // Both sides are signed permutations of the entries of `b`, so no
            // sums arise: (aii b)[r][c] = s_r b[σ(r)][c] and, with ajj[k][c_k] = t_k,
            // (b ajj)[r][c_k] = b[r][k] t_k.
            Some((left, right)) => Ok(b.is_proper()
                && left.iter().enumerate().all(|(r, &(sigma, s))| {
                    right.iter().enumerate().all(|(k, &(c, t))| s * b.get(sigma, c) == b.get(r, k) * t)
                })),
            None => commute_by_products(aii, b, ajj),
        }
    }
}

fn commute_by_products(aii: &SignMatrix, b: &SignMatrix, ajj: &SignMatrix) -> Result<bool> {
    let left = aii.mat_mul(b)?;
    let right = b.mat_mul(ajj)?;
    Ok(left.is_proper() && right.is_proper() && left == right)
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::Circulant => "circulant",
            FamilyKind::Anticirculant => "anticirculant",
            FamilyKind::ZeroForced => "zero",
            FamilyKind::RowVector => "row vector",
            FamilyKind::ColVector => "column vector",
            FamilyKind::Scalar => "scalar",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{make_p, make_q};
    use BlockType::*;

    fn m(s: &str) -> SignMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn table_entries() {
        let f = block_family(P(2), P(2), true);
        assert_eq!((f.kind, f.g, f.member_count()), (FamilyKind::Circulant, 2, 9));
        assert_eq!(block_family(Q(1), Q(2), true).kind, FamilyKind::ZeroForced);
        assert_eq!(block_family(Q(1), P(2), true).kind, FamilyKind::Anticirculant);
        assert_eq!(block_family(ZeroOne, ZeroOne, true).kind, FamilyKind::ZeroForced);
        assert_eq!(block_family(ZeroOne, ZeroOne, false).kind, FamilyKind::Scalar);
        assert_eq!(block_family(ZeroOne, Q(3), false).kind, FamilyKind::RowVector);
        assert_eq!(block_family(P(3), ZeroOne, false).kind, FamilyKind::ColVector);
    }

    #[test]
    fn materialized_members() {
        let f = block_family(P(2), P(2), true);
        assert_eq!(f.materialize(&[Sign::Plus, Sign::Zero]).unwrap(), SignMatrix::identity(2));
        assert_eq!(f.coefficients(&m("-+ +-")), Some(vec![Sign::Minus, Sign::Plus]));
        let spec = CirculantSpec { g: 1, kind: FamilyKind::Anticirculant, b: vec![Sign::Plus], leading_sign_alternation: true };
        assert_eq!(materialize(&spec, 1, 2).unwrap(), m("+-"));
        assert!(materialize(&spec, 1, 0).is_ok());
        let bad = CirculantSpec { g: 2, kind: FamilyKind::Circulant, b: vec![Sign::Plus; 2], leading_sign_alternation: false };
        assert!(materialize(&bad, 3, 2).is_err());
    }

    #[test]
    fn commutation() {
        let p2 = make_p(2);
        let f = block_family(P(2), P(2), true);
        let b = f.materialize(&[Sign::Plus, Sign::Minus]).unwrap();
        assert!(commute_check(&p2, &b, &p2).unwrap());
        assert!(!commute_check(&p2, &m("+0 00"), &p2).unwrap());
        assert!(commute_check(&p2, &SignMatrix::zeros(2), &p2).unwrap());
        assert!(commute_check(&p2, &m("+ #"), &make_q(1)).is_ok_and(|c| !c));
        assert!(commute_check(&p2, &m("+"), &p2).is_err());
        let q1 = make_q(1);
        for member in block_family(Q(1), P(2), true).members() {
            assert!(commute_check(&q1, &member, &p2).unwrap());
        }
    }

    #[test]
    fn monomial_shortcut_matches_products() {
        let tags = [P(1), Q(1), P(2), Q(2), P(3), Q(3)];
        for ti in tags {
            for tj in tags {
                let (a, c) = (ti.pattern(), tj.pattern());
                let cells = ti.size() * tj.size();
                for mut code in 0..3usize.pow(cells as u32) {
                    let b = SignMatrix::from_fn(ti.size(), tj.size(), |_, _| {
                        let s = Sign::PROPER[code % 3];
                        code /= 3;
                        s
                    });
                    assert_eq!(commute_check(&a, &b, &c).unwrap(), commute_by_products(&a, &b, &c).unwrap(), "{ti} {tj} {b:?}");
                }
            }
        }
    }
}
