//! Fixtures and brute-force helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use signpat::idem::DiagSpec;
use signpat::kpotent::KDiagSpec;
use signpat::oracle::{enumerate, EnumSpec, Predicate, Shape};
use signpat::{BlockType, Sign, SignMatrix};

pub fn m(s: &str) -> SignMatrix {
    s.parse().expect("fixture pattern")
}

/// Produced by the earliest column-wise construction, yet its square has an
/// ambiguous `(1,4)` entry.
pub fn ambiguous_square() -> SignMatrix {
    m("++-+ 0+0+ 000+ 000+")
}

/// Upper triangular 5×5 prefix whose last column cannot be completed; the
/// `(1,5)` entry is left to the caller.
pub fn stalled_prefix(a15: Sign) -> SignMatrix {
    let mut a = m("+---0 000++ 00+0- 000++ 0000+");
    a.set(0, 4, a15);
    a
}

pub fn stalled_diag() -> DiagSpec {
    "+0+++".parse().unwrap()
}

/// Result of the idempotent construction walked by hand from diagonal `+0+++`.
pub fn idempotent_walkthrough() -> SignMatrix {
    m("+---- 000++ 00+0+ 000++ 0000+")
}

/// Result of the k-potent construction walked by hand from blocks `P2,0,P2,Q1`.
pub fn kpotent_walkthrough() -> SignMatrix {
    m("0++-+- +0-+-+ 000+-+ 0000+- 000+0+ 00000-")
}

/// Blocks `0,P2,0,P1` with every block chosen except `A_14`, which then has
/// no admissible value.
pub fn stuck_kpotent_prefix() -> (KDiagSpec, SignMatrix) {
    let spec: KDiagSpec = "0,P2,0,P1".parse().unwrap();
    let mut a = spec.diagonal();
    a.set_block(0, 1, &m("+-"));
    a.set(0, 3, Sign::Plus);
    a.set_block(1, 3, &m("0 +"));
    a.set(3, 4, Sign::Plus);
    a.set_block(1, 4, &m("+ +"));
    (spec, a)
}

/// All upper triangular idempotent patterns with the given diagonal.
pub fn idempotent_oracle(diag: &DiagSpec) -> BTreeSet<SignMatrixKey> {
    let spec = EnumSpec::new(diag.len(), Shape::UpperTriangular(diag.signs().to_vec()), Predicate::Idempotent);
    enumerate(&spec).unwrap().iter().map(key).collect()
}

/// Orderable identity of a pattern.
pub type SignMatrixKey = (usize, Vec<Sign>);

pub fn key(a: &SignMatrix) -> SignMatrixKey {
    (a.rows(), a.entries().collect())
}

pub fn keys<'a>(it: impl IntoIterator<Item = &'a SignMatrix>) -> BTreeSet<SignMatrixKey> {
    it.into_iter().map(key).collect()
}

/// Every block specification of length `1..=max_blocks` over `tags` that has
/// a nonzero block.
pub fn block_specs(max_blocks: usize, tags: &[BlockType]) -> Vec<KDiagSpec> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<BlockType>> = vec![Vec::new()];
    for _ in 0..max_blocks {
        let mut next = Vec::new();
        for prefix in &current {
            for &t in tags {
                let mut v = prefix.clone();
                v.push(t);
                if v.iter().any(|b| !b.is_zero()) {
                    out.push(KDiagSpec::new(v.clone()).unwrap());
                }
                next.push(v);
            }
        }
        current = next;
    }
    out
}

pub fn tags(s: &str) -> Vec<BlockType> {
    s.split(',').map(|t| t.parse().unwrap()).collect()
}

/// Curated specifications with four or five blocks, mixing zero runs and
/// both cyclic types.
pub const LONG_SPECS: &[&str] = &[
    "P2,0,P2,Q1",
    "0,P1,0,P1,0",
    "P1,0,0,P1",
    "Q1,0,P2,0",
    "0,Q2,0,P1",
    "P3,0,0,Q1,0",
    "0,0,P2,0,0",
    "P1,Q1,0,P2",
    "0,P2,0,P1",
    "Q1,0,0,0,P1",
    "P2,P2,0,Q1,0",
    "0,P1,P2,0,Q1",
];
