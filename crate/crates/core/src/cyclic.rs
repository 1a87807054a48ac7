//! Circulant permutation patterns `P_m`, `Q_m` and the cyclic normal form.
//!
//! An irreducible sign k-potent pattern is permutation and signature similar
//! to a pattern whose cyclic classes are joined by all-`+` blocks around the
//! cycle, except the closing block which is `alpha * J`. Its reduced matrix
//! is then `P_m` (`alpha = +`) or `Q_m` (`alpha = -`).

use std::collections::VecDeque;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_integer::{gcd, lcm};

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::rational::RationalMatrix;
use crate::sign::Sign;
use crate::structure::{extraneous_indices, frobenius_normal_form, is_irreducible, ranges_from_sizes, DiagonalKind};

/// `m×m` circulant permutation pattern: `+` on the first superdiagonal and at
/// `(m, 1)`.
pub fn make_p(m: usize) -> SignMatrix {
    cycle(m, Sign::Plus)
}

/// `make_p(m)` with the `(m, 1)` entry replaced by `-`.
pub fn make_q(m: usize) -> SignMatrix {
    cycle(m, Sign::Minus)
}

fn cycle(m: usize, closing: Sign) -> SignMatrix {
    assert!(m >= 1, "cycle length must be positive");
    let mut a = SignMatrix::zeros(m);
    for i in 0..m - 1 {
        a.set(i, i + 1, Sign::Plus);
    }
    a.set(m - 1, 0, closing);
    a
}

/// Tag of a diagonal block in cyclic normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockType {
    P(usize),
    Q(usize),
    /// 1×1 zero block.
    ZeroOne,
}

impl BlockType {
    /// Number of cyclic classes (order of the reduced block).
    pub fn size(self) -> usize {
        match self {
            BlockType::P(m) | BlockType::Q(m) => m,
            BlockType::ZeroOne => 1,
        }
    }

    /// Potence index of the block on its own; 1 for the zero block.
    pub fn potence(self) -> usize {
        match self {
            BlockType::P(m) => m,
            BlockType::Q(m) => 2 * m,
            BlockType::ZeroOne => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == BlockType::ZeroOne
    }

    /// The reduced diagonal block.
    pub fn pattern(self) -> SignMatrix {
        match self {
            BlockType::P(m) => make_p(m),
            BlockType::Q(m) => make_q(m),
            BlockType::ZeroOne => SignMatrix::zeros(1),
        }
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockType::P(m) => write!(f, "P{m}"),
            BlockType::Q(m) => write!(f, "Q{m}"),
            BlockType::ZeroOne => write!(f, "0"),
        }
    }
}

impl FromStr for BlockType {
    type Err = Error;

    /// `P<m>`, `Q<m>` or `0`.
    fn from_str(s: &str) -> Result<BlockType> {
        let s = s.trim();
        let bad = || Error::Parse { line: 1, msg: format!("bad block tag {s:?}; expected P<m>, Q<m> or 0") };
        if s == "0" {
            return Ok(BlockType::ZeroOne);
        }
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let m: usize = tail.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        match head {
            "P" | "p" => Ok(BlockType::P(m)),
            "Q" | "q" => Ok(BlockType::Q(m)),
            _ => Err(bad()),
        }
    }
}

/// Cyclic structure of one irreducible block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicBlock {
    /// `perm[i]` is the local index placed at position `i`; classes are
    /// consecutive.
    pub perm: Vec<usize>,
    /// Signature per position, applied after `perm`.
    pub signature: Vec<Sign>,
    pub class_sizes: Vec<usize>,
    /// Sign of the closing block.
    pub alpha: Sign,
    pub block_type: BlockType,
}

/// Result of trying to recognize cyclic structure. Failure is an ordinary
/// answer: the block is then not sign k-potent for any k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Cyclic(CyclicBlock),
    NotCyclic(String),
}

impl Recognition {
    pub fn cyclic(self) -> Option<CyclicBlock> {
        match self {
            Recognition::Cyclic(c) => Some(c),
            Recognition::NotCyclic(_) => None,
        }
    }
}

/// Recognizes the cyclic structure of an irreducible pattern.
///
/// The period `g` is the gcd of `depth(u) + 1 - depth(v)` over all edges of a
/// BFS from vertex 0, classes are depth residues mod `g`, and the signature is
/// propagated down the BFS tree so that tree edges get the sign they must have
/// in the target form (`+`, or `alpha` for edges closing the cycle). Both
/// closing signs are tried, `+` first.
pub fn cyclic_structure(a: &SignMatrix) -> Result<Recognition> {
    let n = a.require_square()?;
    a.require_proper()?;
    if !is_irreducible(a)? {
        return Err(Error::Reducible);
    }
    if n == 1 {
        let alpha = a.get(0, 0);
        return Ok(Recognition::Cyclic(CyclicBlock {
            perm: vec![0],
            signature: vec![Sign::Plus],
            class_sizes: vec![1],
            alpha,
            block_type: if alpha == Sign::Plus { BlockType::P(1) } else { BlockType::Q(1) },
        }));
    }

    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    depth[0] = 0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for v in 0..n {
            if a.get(u, v).is_nonzero() && depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }

    let mut g = 0usize;
    for u in 0..n {
        for v in 0..n {
            if a.get(u, v).is_nonzero() {
                g = gcd(g, (depth[u] + 1).abs_diff(depth[v]));
            }
        }
    }
    debug_assert!(g >= 1);
    let class: Vec<usize> = depth.iter().map(|d| d % g).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (class[v], v));
    let mut class_sizes = vec![0; g];
    for &c in &class {
        class_sizes[c] += 1;
    }
    if class_sizes.contains(&0) {
        return Ok(Recognition::NotCyclic("empty cyclic class".into()));
    }

    let target = |c: usize, alpha: Sign| if c == g - 1 { alpha } else { Sign::Plus };
    let mut last_reason = String::new();
    for alpha in [Sign::Plus, Sign::Minus] {
        let mut s = vec![Sign::Plus; n];
        for &v in order.iter().skip(1) {
            let u = parent[v];
            s[v] = s[u] * a.get(u, v) * target(class[u], alpha);
        }
        let mismatch = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).find(|&(u, v)| {
            let expected = if class[v] == (class[u] + 1) % g { target(class[u], alpha) } else { Sign::Zero };
            s[u] * a.get(u, v) * s[v] != expected
        });
        match mismatch {
            None => {
                return Ok(Recognition::Cyclic(CyclicBlock {
                    signature: perm.iter().map(|&v| s[v]).collect(),
                    perm,
                    class_sizes,
                    alpha,
                    block_type: if alpha == Sign::Plus { BlockType::P(g) } else { BlockType::Q(g) },
                }));
            }
            Some((u, v)) => {
                last_reason = format!(
                    "entry ({}, {}) breaks the cyclic block structure of period {g}",
                    u + 1,
                    v + 1
                );
            }
        }
    }
    Ok(Recognition::NotCyclic(last_reason))
}

/// Global permutation and signature putting a pattern in cyclic normal form,
/// plus per-block metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    /// `perm[i]` is the original index placed at position `i`.
    pub perm: Vec<usize>,
    /// Signature per position, applied after `perm`.
    pub signature: Vec<Sign>,
    pub block_sizes: Vec<usize>,
    pub block_types: Vec<BlockType>,
    /// Per block, sizes of its cyclic classes in order (`[1]` for zero blocks).
    pub class_sizes: Vec<Vec<usize>>,
    /// Per block, the closing sign (`None` for zero blocks).
    pub alpha: Vec<Option<Sign>>,
}

impl CyclicForm {
    /// Form for a pattern that is already in reduced cyclic normal form with
    /// the given diagonal block types (identity permutation and signature).
    pub fn reduced(block_types: &[BlockType]) -> CyclicForm {
        let block_sizes: Vec<usize> = block_types.iter().map(|t| t.size()).collect();
        let n = block_sizes.iter().sum();
        CyclicForm {
            perm: (0..n).collect(),
            signature: vec![Sign::Plus; n],
            class_sizes: block_sizes.iter().map(|&s| vec![1; s]).collect(),
            alpha: block_types
                .iter()
                .map(|t| match t {
                    BlockType::P(_) => Some(Sign::Plus),
                    BlockType::Q(_) => Some(Sign::Minus),
                    BlockType::ZeroOne => None,
                })
                .collect(),
            block_sizes,
            block_types: block_types.to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        ranges_from_sizes(&self.block_sizes)
    }

    /// Position ranges of the cyclic classes of block `b`.
    pub fn class_ranges(&self, b: usize) -> Vec<Range<usize>> {
        let start = self.block_ranges()[b].start;
        ranges_from_sizes(&self.class_sizes[b]).into_iter().map(|r| r.start + start..r.end + start).collect()
    }

    /// The lcm of the block potence indices.
    pub fn k(&self) -> Result<usize> {
        potence_index_cnf(&self.block_types)
    }

    /// `B[i][j] = sig[i] * A[perm[i]][perm[j]] * sig[j]`.
    pub fn apply(&self, a: &SignMatrix) -> Result<SignMatrix> {
        a.permute(&self.perm)?.signature(&self.signature)
    }

    /// Maps a rational matrix in cyclic-normal-form coordinates back to the
    /// coordinates of the original pattern.
    pub fn pull_back(&self, b: &RationalMatrix) -> RationalMatrix {
        let n = self.order();
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let x = b.get(i, j).clone();
                let flip = self.signature[i] != self.signature[j];
                out.set(self.perm[i], self.perm[j], if flip { -x } else { x });
            }
        }
        out
    }
}

/// Frobenius normal form followed by cyclic recognition of every nonzero
/// diagonal block. Returns the form and the transformed pattern.
pub fn to_cyclic_normal_form(a: &SignMatrix) -> Result<(CyclicForm, SignMatrix)> {
    let n = a.require_square()?;
    a.require_proper()?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let extraneous = extraneous_indices(a);
    if !extraneous.is_empty() {
        return Err(Error::Extraneous(extraneous));
    }
    let fnf = frobenius_normal_form(a)?;
    let mut form = CyclicForm {
        perm: Vec::with_capacity(n),
        signature: Vec::with_capacity(n),
        block_sizes: fnf.block_sizes.clone(),
        block_types: Vec::new(),
        class_sizes: Vec::new(),
        alpha: Vec::new(),
    };
    for (b, (members, kind)) in fnf.components().into_iter().zip(&fnf.kinds).enumerate() {
        match kind {
            DiagonalKind::ZeroOne => {
                form.perm.push(members[0]);
                form.signature.push(Sign::Plus);
                form.block_types.push(BlockType::ZeroOne);
                form.class_sizes.push(vec![1]);
                form.alpha.push(None);
            }
            DiagonalKind::Irreducible => {
                let sub = a.principal_submatrix(&members);
                match cyclic_structure(&sub)? {
                    Recognition::Cyclic(c) => {
                        form.perm.extend(c.perm.iter().map(|&p| members[p]));
                        form.signature.extend_from_slice(&c.signature);
                        form.block_types.push(c.block_type);
                        form.class_sizes.push(c.class_sizes);
                        form.alpha.push(Some(c.alpha));
                    }
                    Recognition::NotCyclic(reason) => {
                        return Err(Error::NotCyclic { block: b + 1, reason });
                    }
                }
            }
        }
    }
    let transformed = form.apply(a)?;
    Ok((form, transformed))
}

/// `k = lcm` of the block indices: `m` for `P(m)`, `2m` for `Q(m)`, 1 for zero.
pub fn potence_index_cnf(types: &[BlockType]) -> Result<usize> {
    if types.iter().all(|t| t.is_zero()) {
        return Err(Error::AllZeroBlocks);
    }
    Ok(types.iter().fold(1, |k, t| lcm(k, t.potence())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{expand_with, red};
    use Sign::*;

    fn m(s: &str) -> SignMatrix {
        s.parse().unwrap()
    }

    fn cyc(a: &SignMatrix) -> CyclicBlock {
        cyclic_structure(a).unwrap().cyclic().expect("should be cyclic")
    }

    #[test]
    fn constructors() {
        assert_eq!(make_p(1), m("+"));
        assert_eq!(make_p(2), m("0+ +0"));
        assert_eq!(make_q(1), m("-"));
        assert_eq!(make_q(2).pow(2).unwrap(), m("-0 0-"));
        assert_eq!(make_p(5).potence_index(100).unwrap().k, Some(5));
        assert_eq!(make_q(3).potence_index(100).unwrap().k, Some(6));
    }

    #[test]
    fn block_type_parsing() {
        assert_eq!("P2".parse::<BlockType>().unwrap(), BlockType::P(2));
        assert_eq!("q13".parse::<BlockType>().unwrap(), BlockType::Q(13));
        assert_eq!("0".parse::<BlockType>().unwrap(), BlockType::ZeroOne);
        assert!("P0".parse::<BlockType>().is_err());
        assert!("R2".parse::<BlockType>().is_err());
        assert!("".parse::<BlockType>().is_err());
    }

    #[test]
    fn recognizes_plain_cycle() {
        let c = cyc(&make_p(4));
        assert_eq!(c.block_type, BlockType::P(4));
        assert_eq!(c.perm, vec![0, 1, 2, 3]);
        assert_eq!(c.signature, vec![Plus; 4]);
    }

    #[test]
    fn recovers_signature() {
        let d = vec![Plus, Minus];
        let a = make_q(2).signature(&d).unwrap();
        let c = cyc(&a);
        assert_eq!(c.block_type, BlockType::Q(2));
        assert_eq!(c.signature, d);
        let back = a.permute(&c.perm).unwrap().signature(&c.signature).unwrap();
        assert_eq!(back, make_q(2));
    }

    #[test]
    fn class_sizes_of_expanded_cycle() {
        // classes {1,2} and {3} joined by J, closing sign -
        let a = m("00+ 00+ --0");
        let c = cyc(&a);
        assert_eq!(c.block_type, BlockType::Q(2));
        assert_eq!(c.class_sizes, vec![2, 1]);
    }

    #[test]
    fn negative_all_minus_is_q1() {
        let c = cyc(&SignMatrix::constant(2, 2, Minus));
        assert_eq!(c.block_type, BlockType::Q(1));
        assert_eq!(c.class_sizes, vec![2]);
        assert_eq!(cyc(&SignMatrix::all_plus(3, 3)).block_type, BlockType::P(1));
    }

    #[test]
    fn failure_is_a_value() {
        // irreducible, but a - on a non-closing path and a + on another
        let a = m("++ -+");
        assert!(matches!(cyclic_structure(&a).unwrap(), Recognition::NotCyclic(_)));
        assert!(a.potence_index(100).unwrap().k.is_none());
        assert_eq!(cyclic_structure(&m("++ 0+")), Err(Error::Reducible));
    }

    #[test]
    fn worked_kpotent_example_blocks() {
        let a = m("0++-+- +0-+-+ 000+-+ 0000+- 000+0+ 00000-");
        let (form, t) = to_cyclic_normal_form(&a).unwrap();
        assert_eq!(form.block_types, vec![BlockType::P(2), BlockType::ZeroOne, BlockType::P(2), BlockType::Q(1)]);
        assert_eq!(t, a);
        assert_eq!(potence_index_cnf(&form.block_types).unwrap(), 2);
    }

    #[test]
    fn direct_sum_and_all_plus() {
        let mut a = SignMatrix::zeros(5);
        a.set_block(0, 0, &make_p(2));
        a.set_block(2, 2, &make_p(3));
        let (form, _) = to_cyclic_normal_form(&a).unwrap();
        assert_eq!(form.block_types, vec![BlockType::P(2), BlockType::P(3)]);

        let (form, _) = to_cyclic_normal_form(&SignMatrix::all_plus(3, 3)).unwrap();
        assert_eq!(form.block_types, vec![BlockType::P(1)]);
        assert_eq!(form.class_sizes, vec![vec![3]]);
    }

    #[test]
    fn extraneous_rows_are_rejected() {
        assert!(matches!(to_cyclic_normal_form(&m("+0 00")), Err(Error::Extraneous(_))));
    }

    #[test]
    fn lcm_rule() {
        use BlockType::*;
        assert_eq!(potence_index_cnf(&[P(2), ZeroOne, P(2), Q(1)]).unwrap(), 2);
        assert_eq!(potence_index_cnf(&[P(3)]).unwrap(), 3);
        assert_eq!(potence_index_cnf(&[Q(2), P(4)]).unwrap(), 4);
        assert_eq!(potence_index_cnf(&[ZeroOne, ZeroOne]), Err(Error::AllZeroBlocks));
    }

    #[test]
    fn red_of_recognized_block_is_p_or_q() {
        let a = expand_with(&make_q(3), &[2, 1, 3]).unwrap();
        let d = vec![Plus, Minus, Minus, Plus, Minus, Plus];
        let a = a.signature(&d).unwrap().permute(&[5, 0, 3, 1, 4, 2]).unwrap();
        let c = cyc(&a);
        let back = a.permute(&c.perm).unwrap().signature(&c.signature).unwrap();
        assert_eq!(red(&back).unwrap().entries, make_q(3));
        assert_eq!(c.class_sizes.iter().sum::<usize>(), 6);
    }
}
