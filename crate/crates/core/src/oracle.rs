//! Exhaustive enumeration of small patterns and equivalence classes.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kpotent::KDiagSpec;
use crate::matrix::{default_kmax, SignMatrix};
use crate::sign::Sign;

pub const FULL_CAP: usize = 4;
pub const UPPER_CAP: usize = 6;
pub const CANONICAL_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Every entry free.
    Full,
    /// Fixed diagonal, free strictly upper entries, zero below.
    UpperTriangular(Vec<Sign>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// `A² = A`.
    Idempotent,
    /// Sign potence index exactly `k`.
    KPotent(usize),
    /// Sign k-potent for some `k`.
    PotentAny,
    /// `A^{k+1} = A`, so the index divides `k`.
    Period(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub n: usize,
    pub shape: Shape,
    pub predicate: Predicate,
    pub cap: Option<usize>,
}

impl EnumSpec {
    pub fn new(n: usize, shape: Shape, predicate: Predicate) -> EnumSpec {
        EnumSpec { n, shape, predicate, cap: None }
    }

    pub fn with_cap(mut self, cap: usize) -> EnumSpec {
        self.cap = Some(cap);
        self
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        match self.shape {
            Shape::Full => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
            Shape::UpperTriangular(_) => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        }
    }

    fn base(&self) -> SignMatrix {
        let mut a = SignMatrix::zeros(self.n);
        if let Shape::UpperTriangular(d) = &self.shape {
            for (i, &s) in d.iter().enumerate() {
                a.set(i, i, s);
            }
        }
        a
    }

    fn validate(&self) -> Result<()> {
        let (cap, free) = match &self.shape {
            Shape::Full => (self.cap.unwrap_or(FULL_CAP), self.n * self.n),
            Shape::UpperTriangular(d) => {
                if d.len() != self.n || !d.iter().all(|s| s.is_proper()) {
                    return Err(Error::Dimension(format!("diagonal of length {} for order {}", d.len(), self.n)));
                }
                (self.cap.unwrap_or(UPPER_CAP), self.n * (self.n.saturating_sub(1)) / 2)
            }
        };
        if self.n > cap {
            return Err(Error::CapExceeded { n: self.n, cap, required: format!("3^{free} candidates") });
        }
        match self.predicate {
            Predicate::KPotent(0) | Predicate::Period(0) => Err(Error::Dimension("k must be positive".into())),
            _ => Ok(()),
        }
    }
}

/// `scratch` and `spare` are product buffers of `a`'s shape.
fn holds(a: &SignMatrix, p: Predicate, scratch: &mut SignMatrix, spare: &mut SignMatrix) -> bool {
    match p {
        Predicate::Idempotent => {
            a.mul_into(a, scratch);
            scratch == a
        }
        Predicate::Period(k) => {
            scratch.clone_from(a);
            for _ in 0..k {
                scratch.mul_into(a, spare);
                std::mem::swap(scratch, spare);
            }
            scratch == a
        }
        Predicate::KPotent(k) => index_of(a) == Some(k),
        Predicate::PotentAny => index_of(a).is_some(),
    }
}

fn index_of(a: &SignMatrix) -> Option<usize> {
    a.potence_index(default_kmax(a.rows())).ok().and_then(|r| r.k)
}

/// Cells fixed per parallel work unit; the rest are stepped in place.
const PREFIX_CELLS: usize = 4;

/// Every pattern of the shape satisfying the predicate, in lexicographic
/// order of the free cells (row-major, `0 < + < -`). Work is split on the
/// first few cells; each unit steps the remaining cells in place with the
/// last cell fastest, and units are concatenated in order.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<SignMatrix>> {
    spec.validate()?;
    let cells = spec.cells();
    let base = spec.base();
    let split = cells.len().min(PREFIX_CELLS);
    let (head, tail) = cells.split_at(split);
    let units = 3u64.pow(split as u32);
    let chunks: Vec<Vec<SignMatrix>> = (0..units)
        .into_par_iter()
        .map(|mut code| {
            let mut a = base.clone();
            for &(i, j) in head.iter().rev() {
                a.set(i, j, Sign::PROPER[(code % 3) as usize]);
                code /= 3;
            }
            let mut digits = vec![0usize; tail.len()];
            let mut found = Vec::new();
            let (mut scratch, mut spare) = (base.clone(), base.clone());
            loop {
                if holds(&a, spec.predicate, &mut scratch, &mut spare) {
                    found.push(a.clone());
                }
                let mut carried = true;
                for (d, &(i, j)) in digits.iter_mut().rev().zip(tail.iter().rev()) {
                    *d = (*d + 1) % 3;
                    a.set(i, j, Sign::PROPER[*d]);
                    if *d != 0 {
                        carried = false;
                        break;
                    }
                }
                if carried {
                    return found;
                }
            }
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Least pattern, comparing row-major entries with `0 < + < - < #`, over
/// all permutation similarities, signature similarities, negation and
/// transposition.
pub fn canonical_form(a: &SignMatrix) -> Result<SignMatrix> {
    let n = a.require_square()?;
    if n > CANONICAL_CAP {
        return Err(Error::CapExceeded { n, cap: CANONICAL_CAP, required: format!("{n}! permutations") });
    }
    let variants = [a.to_rows(), a.transpose().to_rows()];
    let mut best: Option<Vec<Sign>> = None;
    let mut cand = vec![Sign::Zero; n * n];
    for perm in permutations(n) {
        for v in &variants {
            for mask in 0u32..1 << n {
                let d = |i: usize| mask >> i & 1 == 1;
                for negate in [false, true] {
                    // Entries are produced in row-major order, so a candidate
                    // is dropped at the first entry exceeding the best so far.
                    let mut below = best.is_none();
                    let mut dropped = false;
                    'fill: for i in 0..n {
                        for j in 0..n {
                            let mut s = v[perm[i]][perm[j]];
                            if d(i) != d(j) {
                                s = -s;
                            }
                            if negate {
                                s = -s;
                            }
                            let at = i * n + j;
                            cand[at] = s;
                            if !below {
                                let b = best.as_ref().expect("set when not below")[at];
                                if s > b {
                                    dropped = true;
                                    break 'fill;
                                }
                                below = s < b;
                            }
                        }
                    }
                    if !dropped && below {
                        best = Some(cand.clone());
                    }
                }
            }
        }
    }
    let best = best.unwrap_or_default();
    Ok(SignMatrix::from_fn(n, n, |i, j| best[i * n + j]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub total: usize,
    pub classes: usize,
}

pub fn census(spec: &EnumSpec) -> Result<Census> {
    let found = enumerate(spec)?;
    let forms = found
        .par_iter()
        .map(canonical_form)
        .collect::<Result<Vec<_>>>()?;
    let classes: BTreeSet<Vec<Sign>> = forms.iter().map(|f| f.entries().collect()).collect();
    Ok(Census { total: found.len(), classes: classes.len() })
}

/// Every pattern with the spec's diagonal whose off-diagonal blocks are
/// arbitrary members of their families and which satisfies `A^{k+1} = A`,
/// cells varying in construction order (last cell fastest).
pub fn enumerate_block_kpotent(spec: &KDiagSpec) -> Result<Vec<SignMatrix>> {
    let ranges = spec.ranges();
    let cells = spec.cells();
    let options: Vec<Vec<SignMatrix>> = cells.iter().map(|&(i, j)| spec.family(i, j).members().collect()).collect();
    let total: u64 = options.iter().map(|o| o.len() as u64).product();
    let base = spec.diagonal();
    let k = spec.k();
    Ok((0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut a = base.clone();
            for (c, &(i, j)) in cells.iter().enumerate().rev() {
                let len = options[c].len() as u64;
                a.set_block(ranges[i].start, ranges[j].start, &options[c][(code % len) as usize]);
                code /= len;
            }
            (a.pow(k + 1).ok()? == a).then_some(a)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> SignMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn one_by_one() {
        let idem = enumerate(&EnumSpec::new(1, Shape::Full, Predicate::Idempotent)).unwrap();
        assert_eq!(idem, vec![m("0"), m("+")]);
        let two = enumerate(&EnumSpec::new(1, Shape::Full, Predicate::KPotent(2))).unwrap();
        assert_eq!(two, vec![m("-")]);
        let c = census(&EnumSpec::new(1, Shape::Full, Predicate::Idempotent)).unwrap();
        assert_eq!(c, Census { total: 2, classes: 2 });
    }

    #[test]
    fn upper_triangular() {
        let spec = EnumSpec::new(2, Shape::UpperTriangular(vec![Sign::Plus, Sign::Plus]), Predicate::Idempotent);
        assert_eq!(enumerate(&spec).unwrap().len(), 3);
    }

    #[test]
    fn caps() {
        assert!(matches!(
            enumerate(&EnumSpec::new(5, Shape::Full, Predicate::Idempotent)),
            Err(Error::CapExceeded { n: 5, cap: 4, .. })
        ));
        assert!(canonical_form(&SignMatrix::zeros(9)).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_form(&m("-")).unwrap(), canonical_form(&m("+")).unwrap());
        let a = m("+-0 0+- +00");
        let c = canonical_form(&a).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
        assert_eq!(canonical_form(&a.transpose()).unwrap(), c);
        assert_eq!(canonical_form(&a.signature(&[Sign::Minus, Sign::Plus, Sign::Minus]).unwrap()).unwrap(), c);
    }
}
