//! Coarsest symmetric block partition and the reduced matrix `red(A)`.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::structure::ranges_from_sizes;

/// Contiguous symmetric partition of `0..n` into nonempty consecutive ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    ranges: Vec<Range<usize>>,
}

impl BlockPartition {
    pub fn from_sizes(sizes: &[usize]) -> Result<BlockPartition> {
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::Dimension("class sizes must be positive".into()));
        }
        Ok(BlockPartition { ranges: ranges_from_sizes(sizes) })
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.ranges.iter().map(Range::len).collect()
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn order(&self) -> usize {
        self.ranges.last().map_or(0, |r| r.end)
    }
}

/// `red(A)` together with the class sizes of the partition that induced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMatrix {
    pub entries: SignMatrix,
    pub class_sizes: Vec<usize>,
}

/// Two adjacent indices belong to the same class exactly when their full rows
/// agree and their full columns agree; that makes every induced block
/// constant, and the maximal runs of such pairs give the coarsest partition.
pub fn coarsest_partition(a: &SignMatrix) -> Result<BlockPartition> {
    let n = a.require_square()?;
    a.require_proper()?;
    let mut sizes = Vec::new();
    let mut run = 0;
    for p in 0..n {
        run += 1;
        let merge_next = p + 1 < n && a.rows_equal(p, p + 1) && a.cols_equal(p, p + 1);
        if !merge_next {
            sizes.push(run);
            run = 0;
        }
    }
    BlockPartition::from_sizes(&sizes)
}

pub fn red(a: &SignMatrix) -> Result<ReducedMatrix> {
    let partition = coarsest_partition(a)?;
    let starts: Vec<usize> = partition.ranges().iter().map(|r| r.start).collect();
    let m = starts.len();
    let entries = SignMatrix::from_fn(m, m, |s, t| a.get(starts[s], starts[t]));
    Ok(ReducedMatrix { entries, class_sizes: partition.sizes() })
}

/// Inverse of [`red`]: block `(s, t)` becomes `entries(s, t) * J`.
pub fn expand(r: &ReducedMatrix) -> Result<SignMatrix> {
    let m = r.entries.require_square()?;
    if r.class_sizes.len() != m {
        return Err(Error::Dimension(format!(
            "{} class sizes for a {m}x{m} reduced matrix",
            r.class_sizes.len()
        )));
    }
    let partition = BlockPartition::from_sizes(&r.class_sizes)?;
    let mut class_of = Vec::with_capacity(partition.order());
    for (s, range) in partition.ranges().iter().enumerate() {
        class_of.extend(std::iter::repeat_n(s, range.len()));
    }
    let n = class_of.len();
    Ok(SignMatrix::from_fn(n, n, |i, j| r.entries.get(class_of[i], class_of[j])))
}

/// Convenience: expand `entries` with the given class sizes.
pub fn expand_with(entries: &SignMatrix, class_sizes: &[usize]) -> Result<SignMatrix> {
    expand(&ReducedMatrix { entries: entries.clone(), class_sizes: class_sizes.to_vec() })
}
