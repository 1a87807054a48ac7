//! Digraph view of a pattern: irreducibility, Frobenius normal form and
//! extraneous zero rows/columns.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::matrix::SignMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagonalKind {
    Irreducible,
    /// A 1×1 zero diagonal block.
    ZeroOne,
}

/// Permutation placing a pattern in block upper triangular form with
/// irreducible or 1×1 zero diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    /// `perm[i]` is the original index placed at position `i`.
    pub perm: Vec<usize>,
    pub block_sizes: Vec<usize>,
    pub kinds: Vec<DiagonalKind>,
}

impl FrobeniusForm {
    /// Position ranges of the diagonal blocks in the permuted pattern.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        ranges_from_sizes(&self.block_sizes)
    }

    /// Original indices belonging to each block, in block order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.block_ranges().into_iter().map(|r| self.perm[r].to_vec()).collect()
    }
}

pub(crate) fn ranges_from_sizes(sizes: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

/// Strongly connected components of the digraph `i -> j` iff `a_ij != 0`,
/// as a component id per vertex. Iterative Tarjan; ids are assigned in the
/// order components complete, which is a reverse topological order.
fn strong_components(a: &SignMatrix) -> (Vec<usize>, usize) {
    let n = a.rows();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| a.get(i, j).is_nonzero()).collect())
        .collect();

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut n_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next successor position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = succ[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = n_comp;
                    if w == v {
                        break;
                    }
                }
                n_comp += 1;
            }
        }
    }
    (comp, n_comp)
}

/// Irreducible means strongly connected; a 1×1 pattern is irreducible iff
/// its entry is nonzero. The empty pattern is not irreducible.
pub fn is_irreducible(a: &SignMatrix) -> Result<bool> {
    let n = a.require_square()?;
    match n {
        0 => Ok(false),
        1 => Ok(a.get(0, 0).is_nonzero()),
        _ => Ok(strong_components(a).1 == 1),
    }
}

/// Frobenius normal form. Components are ordered topologically along the
/// edges (so the permuted pattern is block upper triangular), taking the
/// component with the lowest original index first whenever several are
/// available; indices inside a component keep their original order.
pub fn frobenius_normal_form(a: &SignMatrix) -> Result<FrobeniusForm> {
    let n = a.require_square()?;
    a.require_proper()?;
    let (comp, n_comp) = strong_components(a);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_comp];
    for v in 0..n {
        members[comp[v]].push(v);
    }
    let min_vertex: Vec<usize> = members.iter().map(|m| m[0]).collect();

    let mut indegree = vec![0usize; n_comp];
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n_comp];
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).is_nonzero() && comp[i] != comp[j] {
                out_edges[comp[i]].push(comp[j]);
            }
        }
    }
    for edges in &mut out_edges {
        edges.sort_unstable();
        edges.dedup();
        for &t in edges.iter() {
            indegree[t] += 1;
        }
    }

    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..n_comp)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((min_vertex[c], c)))
        .collect();
    let mut perm = Vec::with_capacity(n);
    let mut block_sizes = Vec::with_capacity(n_comp);
    let mut kinds = Vec::with_capacity(n_comp);
    while let Some(Reverse((_, c))) = ready.pop() {
        let m = &members[c];
        perm.extend_from_slice(m);
        block_sizes.push(m.len());
        kinds.push(if m.len() == 1 && a.get(m[0], m[0]).is_zero() {
            DiagonalKind::ZeroOne
        } else {
            DiagonalKind::Irreducible
        });
        for &t in &out_edges[c] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                ready.push(Reverse((min_vertex[t], t)));
            }
        }
    }
    debug_assert_eq!(perm.len(), n);
    Ok(FrobeniusForm { perm, block_sizes, kinds })
}

/// Removes every index whose row and column are both entirely zero.
/// Returns the principal submatrix on the kept indices and those indices.
pub fn strip_extraneous(a: &SignMatrix) -> Result<(SignMatrix, Vec<usize>)> {
    a.require_square()?;
    a.require_proper()?;
    let kept = kept_indices(a);
    Ok((a.principal_submatrix(&kept), kept))
}

pub(crate) fn kept_indices(a: &SignMatrix) -> Vec<usize> {
    (0..a.rows()).filter(|&i| !(a.row_is_zero(i) && a.col_is_zero(i))).collect()
}

pub fn extraneous_indices(a: &SignMatrix) -> Vec<usize> {
    (0..a.rows()).filter(|&i| a.row_is_zero(i) && a.col_is_zero(i)).collect()
}
