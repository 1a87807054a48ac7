//! Column-by-column construction of sign k-potent patterns in reduced cyclic
//! normal form.
//!
//! Block indices are 0-based. Cells are the off-diagonal blocks, visited
//! column by column and bottom-up inside each column. Every cell takes a
//! member of the family between its two diagonal blocks.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::cyclic::{potence_index_cnf, BlockType};
use crate::error::{Error, Result};
use crate::family::{block_family, Family};
use crate::matrix::SignMatrix;
use crate::search::{CellRule, Lcg, Search, SearchStats};
use crate::structure::ranges_from_sizes;

/// Diagonal block tags of a reduced cyclic normal form, with their `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KDiagSpec {
    blocks: Vec<BlockType>,
    k: usize,
}

impl KDiagSpec {
    pub fn new(blocks: Vec<BlockType>) -> Result<KDiagSpec> {
        if blocks.is_empty() {
            return Err(Error::Empty);
        }
        let k = potence_index_cnf(&blocks)?;
        Ok(KDiagSpec { blocks, k })
    }

    pub fn blocks(&self) -> &[BlockType] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(|t| t.size()).sum()
    }

    pub fn ranges(&self) -> Vec<Range<usize>> {
        ranges_from_sizes(&self.blocks.iter().map(|t| t.size()).collect::<Vec<_>>())
    }

    /// Number of maximal runs of consecutive zero diagonal blocks.
    pub fn zero_runs(&self) -> usize {
        let mut runs = 0;
        let mut prev_zero = false;
        for t in &self.blocks {
            if t.is_zero() && !prev_zero {
                runs += 1;
            }
            prev_zero = t.is_zero();
        }
        runs
    }

    /// The block diagonal pattern with every off-diagonal block zero.
    pub fn diagonal(&self) -> SignMatrix {
        let mut a = SignMatrix::zeros(self.order());
        for (t, r) in self.blocks.iter().zip(self.ranges()) {
            a.set_block(r.start, r.start, &t.pattern());
        }
        a
    }

    /// Off-diagonal cells in construction order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let n = self.blocks.len();
        (1..n).flat_map(|j| (0..j).rev().map(move |i| (i, j))).collect()
    }

    pub fn family(&self, i: usize, j: usize) -> Family {
        block_family(self.blocks[i], self.blocks[j], j == i + 1)
    }
}

impl FromStr for KDiagSpec {
    type Err = Error;

    /// Comma-separated tags such as `P2,0,P2,Q1`.
    fn from_str(s: &str) -> Result<KDiagSpec> {
        let blocks = s
            .split(',')
            .map(|t| t.trim().parse::<BlockType>())
            .collect::<Result<Vec<_>>>()?;
        KDiagSpec::new(blocks)
    }
}

impl fmt::Display for KDiagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        f.write_str(&tags.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// The construction as stated: forced blocks where the rules force them,
    /// otherwise family members passing the unambiguity look-ahead.
    SinglePass,
    /// Forced blocks are kept only if unambiguous and in the family; free
    /// cells branch over every family member (containing the forced part),
    /// and each completed pattern must satisfy `A^{k+1} = A`.
    Filtered,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "single" | "single_pass" | "single-pass" => Ok(Strategy::SinglePass),
            "filtered" => Ok(Strategy::Filtered),
            _ => Err(Error::Parse { line: 1, msg: format!("unknown strategy {s:?}") }),
        }
    }
}

/// Block arithmetic over a pattern laid out by a [`KDiagSpec`].
struct Blocks {
    spec: KDiagSpec,
    ranges: Vec<Range<usize>>,
    /// `diag_pows[i][e]` is `A_ii^e`, with `A_ii^0 = I`.
    diag_pows: Vec<Vec<SignMatrix>>,
    families: Vec<Vec<Family>>,
    cells: Vec<(usize, usize)>,
}

impl Blocks {
    fn new(spec: KDiagSpec) -> Blocks {
        let k = spec.k;
        let diag_pows = spec
            .blocks
            .iter()
            .map(|t| {
                let d = t.pattern();
                let mut pows = vec![SignMatrix::identity(t.size())];
                for e in 1..=k {
                    let next = pows[e - 1].mul_unchecked(&d);
                    pows.push(next);
                }
                pows
            })
            .collect();
        let n = spec.blocks.len();
        let families = (0..n).map(|i| (0..n).map(|j| spec.family(i, j)).collect()).collect();
        Blocks { ranges: spec.ranges(), cells: spec.cells(), diag_pows, families, spec }
    }

    fn k(&self) -> usize {
        self.spec.k
    }

    fn get(&self, a: &SignMatrix, i: usize, j: usize) -> SignMatrix {
        a.block(self.ranges[i].clone(), self.ranges[j].clone())
    }

    fn pow(&self, i: usize, e: usize) -> &SignMatrix {
        &self.diag_pows[i][e]
    }

    fn is_zero_block(&self, i: usize) -> bool {
        self.spec.blocks[i].is_zero()
    }

    /// `∑_{p=1}^{k} A_ll^{k-p} X A_jj^{p-1}`.
    fn spread(&self, l: usize, x: &SignMatrix, j: usize) -> SignMatrix {
        let k = self.k();
        let mut acc = SignMatrix::zeros_rect(x.rows(), x.cols());
        for p in 1..=k {
            let term = self.pow(l, k - p).mul_unchecked(x).mul_unchecked(self.pow(j, p - 1));
            acc.add_assign_unchecked(&term);
        }
        acc
    }

    /// `∑_{r ∈ range} A_lr A_rj`, with `A_ij` replaced by `cand` when `i`
    /// falls in the range.
    fn chain_sum(&self, a: &SignMatrix, l: usize, range: Range<usize>, j: usize, cand: Option<(usize, &SignMatrix)>) -> SignMatrix {
        let mut acc = SignMatrix::zeros_rect(self.ranges[l].len(), self.ranges[j].len());
        for r in range {
            let a_rj = match cand {
                Some((i, c)) if i == r => c.clone(),
                _ => self.get(a, r, j),
            };
            acc.add_assign_unchecked(&self.get(a, l, r).mul_unchecked(&a_rj));
        }
        acc
    }

    /// `∑_{r ∈ range} A_lr A_rr^{k-1} A_rj`, same substitution rule.
    fn damped_chain_sum(
        &self,
        a: &SignMatrix,
        l: usize,
        range: Range<usize>,
        j: usize,
        cand: Option<(usize, &SignMatrix)>,
    ) -> SignMatrix {
        let mut acc = SignMatrix::zeros_rect(self.ranges[l].len(), self.ranges[j].len());
        for r in range {
            let a_rj = match cand {
                Some((i, c)) if i == r => c.clone(),
                _ => self.get(a, r, j),
            };
            let term = self.get(a, l, r).mul_unchecked(self.pow(r, self.k() - 1)).mul_unchecked(&a_rj);
            acc.add_assign_unchecked(&term);
        }
        acc
    }

    /// Look-ahead of the construction: with `cand` placed at `(i, j)`, the
    /// sums governing the blocks above it in column `j` stay unambiguous.
    fn look_ahead_ok(&self, a: &SignMatrix, i: usize, j: usize, cand: &SignMatrix) -> bool {
        (0..i).all(|l| {
            let x = self.chain_sum(a, l, i..j, j, Some((i, cand)));
            let mut s = self.spread(l, &x, j);
            s.add_assign_unchecked(&self.damped_chain_sum(a, l, i..j, j, Some((i, cand))));
            s.is_proper()
        })
    }

    fn choices(&self, a: &SignMatrix, i: usize, j: usize, strategy: Strategy) -> Vec<SignMatrix> {
        let family = &self.families[i][j];
        let filtered = strategy == Strategy::Filtered;
        if i + 1 == j {
            return family
                .members()
                .filter(|m| filtered || self.look_ahead_ok(a, i, j, m))
                .collect();
        }
        let forced = |value: SignMatrix| -> Vec<SignMatrix> {
            if !value.is_proper() || (filtered && !family.contains(&value)) {
                Vec::new()
            } else {
                vec![value]
            }
        };
        if self.is_zero_block(i) && self.is_zero_block(j) {
            return forced(self.damped_chain_sum(a, i, i + 1..j, j, None));
        }
        let x = self.chain_sum(a, i, i + 1..j, j, None);
        if !x.is_proper() {
            return Vec::new();
        }
        let z = self.spread(i, &x, j);
        if x.is_entrywise_nonzero() {
            return forced(z);
        }
        if !z.is_proper() {
            return Vec::new();
        }
        family
            .members()
            .filter(|m| z.is_subpattern_of(m).unwrap_or(false))
            .filter(|m| filtered || self.look_ahead_ok(a, i, j, m))
            .collect()
    }
}

struct KPotentRule {
    blocks: Blocks,
    strategy: Strategy,
}

impl CellRule for KPotentRule {
    type Choice = SignMatrix;

    fn cell_count(&self) -> usize {
        self.blocks.cells.len()
    }

    fn choices(&self, state: &SignMatrix, cell: usize) -> Result<Vec<SignMatrix>> {
        let (i, j) = self.blocks.cells[cell];
        Ok(self.blocks.choices(state, i, j, self.strategy))
    }

    fn assign(&self, state: &mut SignMatrix, cell: usize, choice: &SignMatrix) {
        let (i, j) = self.blocks.cells[cell];
        state.set_block(self.blocks.ranges[i].start, self.blocks.ranges[j].start, choice);
    }

    fn clear(&self, state: &mut SignMatrix, cell: usize) {
        let (i, j) = self.blocks.cells[cell];
        let zero = SignMatrix::zeros_rect(self.blocks.ranges[i].len(), self.blocks.ranges[j].len());
        state.set_block(self.blocks.ranges[i].start, self.blocks.ranges[j].start, &zero);
    }

    fn accept(&self, state: &SignMatrix) -> Result<bool> {
        state.satisfies_power_identity(self.blocks.k())
    }
}

fn check_strategy(spec: &KDiagSpec, strategy: Strategy) -> Result<()> {
    let runs = spec.zero_runs();
    if strategy == Strategy::SinglePass && runs >= 2 {
        return Err(Error::MultipleZeroRuns { runs });
    }
    Ok(())
}

/// Depth-first stream of the k-potent patterns built from a spec. Every
/// emitted pattern satisfies `A^{k+1} = A` with `k = spec.k()`; completed
/// patterns failing it are counted in [`SearchStats::rejected`].
pub struct KPotentGenerator {
    search: Search<KPotentRule>,
}

impl KPotentGenerator {
    pub fn new(spec: &KDiagSpec, strategy: Strategy) -> Result<KPotentGenerator> {
        check_strategy(spec, strategy)?;
        let rule = KPotentRule { blocks: Blocks::new(spec.clone()), strategy };
        Ok(KPotentGenerator { search: Search::new(rule, spec.diagonal()) })
    }

    pub fn instrumented(spec: &KDiagSpec, strategy: Strategy) -> Result<KPotentGenerator> {
        let mut g = KPotentGenerator::new(spec, strategy)?;
        g.search = g.search.recording();
        Ok(g)
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.search.rule().blocks.cells
    }

    pub fn stats(&self) -> &SearchStats {
        &self.search.stats
    }
}

impl Iterator for KPotentGenerator {
    type Item = Result<SignMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        self.search.next()
    }
}

pub use crate::idem::GenerationMode;

pub fn generate_kpotent(spec: &KDiagSpec, strategy: Strategy, mode: GenerationMode) -> Result<Vec<SignMatrix>> {
    match mode {
        GenerationMode::All => KPotentGenerator::new(spec, strategy)?.collect(),
        GenerationMode::Sample { count, seed } => {
            let mut g = KPotentGenerator::new(spec, strategy)?;
            let mut rng = Lcg::new(seed);
            let mut out = Vec::with_capacity(count);
            // Filtered branches can dead-end; draws that do are retried with
            // the continuing generator state, up to a fixed budget.
            let budget = count.saturating_mul(64).max(64);
            for _ in 0..budget {
                if out.len() == count {
                    break;
                }
                if let Some(m) = g.search.sample_one(&mut rng)? {
                    out.push(m);
                }
            }
            Ok(out)
        }
    }
}

/// Admissible blocks at cell `(i, j)` of a partially built pattern, for
/// replaying a construction by hand. Cells before `(i, j)` in construction
/// order must already hold their blocks.
pub fn kpotent_choices(spec: &KDiagSpec, strategy: Strategy, partial: &SignMatrix, i: usize, j: usize) -> Result<Vec<SignMatrix>> {
    let n = spec.blocks.len();
    if i >= j || j >= n {
        return Err(Error::Dimension(format!("block cell ({i}, {j}) outside a strictly upper {n}-block pattern")));
    }
    if partial.rows() != spec.order() || partial.cols() != spec.order() {
        return Err(Error::Dimension(format!("pattern is not {0}x{0}", spec.order())));
    }
    partial.require_proper()?;
    Ok(Blocks::new(spec.clone()).choices(partial, i, j, strategy))
}

/// Outcome of the k-potence condition for one off-diagonal block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCondition {
    pub i: usize,
    pub j: usize,
    pub holds: bool,
    /// The path sum has an ambiguous entry.
    pub ambiguous: bool,
}

/// For each block `(i, j)`, `i < j`, compares `A_ij` with the sum over
/// weakly increasing block chains `i ≤ i_1 ≤ … ≤ i_k ≤ j` of
/// `A_{i i_1} A_{i_1 i_2} ⋯ A_{i_k j}`.
pub fn condition_of_kpotence(a: &SignMatrix, block_sizes: &[usize], k: usize) -> Result<Vec<BlockCondition>> {
    let n = a.require_square()?;
    a.require_proper()?;
    if block_sizes.iter().sum::<usize>() != n || block_sizes.contains(&0) {
        return Err(Error::Dimension(format!("block sizes {block_sizes:?} do not partition {n}")));
    }
    if k == 0 {
        return Err(Error::Dimension("k must be positive".into()));
    }
    let ranges = ranges_from_sizes(block_sizes);
    let nb = ranges.len();
    let blk = |i: usize, j: usize| a.block(ranges[i].clone(), ranges[j].clone());
    let mut out = Vec::new();
    for i in 0..nb {
        // walk[x] = sum of products of `steps` factors from block i to block x
        let mut walk: Vec<SignMatrix> = (0..nb).map(|x| if x >= i { blk(i, x) } else { SignMatrix::zeros_rect(ranges[i].len(), ranges[x].len()) }).collect();
        for _ in 0..k {
            let mut next: Vec<SignMatrix> = (0..nb).map(|y| SignMatrix::zeros_rect(ranges[i].len(), ranges[y].len())).collect();
            for (y, slot) in next.iter_mut().enumerate().skip(i) {
                for x in i..=y {
                    slot.add_assign_unchecked(&walk[x].mul_unchecked(&blk(x, y)));
                }
            }
            walk = next;
        }
        for (j, sum) in walk.iter().enumerate().skip(i + 1) {
            let ambiguous = !sum.is_proper();
            out.push(BlockCondition { i, j, holds: !ambiguous && *sum == blk(i, j), ambiguous });
        }
    }
    Ok(out)
}
