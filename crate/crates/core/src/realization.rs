//! Which sign k-potent patterns allow k-potence, and exact realizations of
//! those that do.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclic::{to_cyclic_normal_form, CyclicForm};
use crate::error::{Error, Result};
use crate::matrix::{default_kmax, SignMatrix};
use crate::rational::{qualitative_member, RationalMatrix};
use crate::sign::Sign;
use crate::structure::kept_indices;

/// Off-diagonal blocks joining two nonzero diagonal blocks that are not zero.
/// Block indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpoReport {
    pub is_ppo: bool,
    pub violations: Vec<(usize, usize)>,
}

fn check_form(a: &SignMatrix, cnf: &CyclicForm) -> Result<()> {
    let n = a.require_square()?;
    a.require_proper()?;
    if n != cnf.order() || cnf.block_sizes.iter().sum::<usize>() != n {
        return Err(Error::InconsistentForm(format!("form of order {} for a {n}x{n} pattern", cnf.order())));
    }
    let ranges = cnf.block_ranges();
    for (s, rs) in ranges.iter().enumerate() {
        for rt in &ranges[..s] {
            if !a.block(rs.clone(), rt.clone()).is_zero() {
                return Err(Error::InconsistentForm("pattern is not block upper triangular".into()));
            }
        }
        if cnf.block_types[s].is_zero() != a.block(rs.clone(), rs.clone()).is_zero() {
            return Err(Error::InconsistentForm(format!("diagonal block {} does not match its type", s + 1)));
        }
    }
    Ok(())
}

/// `a` must already be in the cyclic normal form described by `cnf`.
pub fn is_ppo(a: &SignMatrix, cnf: &CyclicForm) -> Result<PpoReport> {
    check_form(a, cnf)?;
    let ranges = cnf.block_ranges();
    let mut violations = Vec::new();
    for i in 0..ranges.len() {
        for j in i + 1..ranges.len() {
            let both_nonzero = !cnf.block_types[i].is_zero() && !cnf.block_types[j].is_zero();
            if both_nonzero && !a.block(ranges[i].clone(), ranges[j].clone()).is_zero() {
                violations.push((i, j));
            }
        }
    }
    Ok(PpoReport { is_ppo: violations.is_empty(), violations })
}

/// Answer of [`allows_kpotence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allowance {
    pub allows: bool,
    /// Sign potence index of the pattern.
    pub k: usize,
    /// PPO violations in the cyclic normal form, 0-based block indices.
    pub violations: Vec<(usize, usize)>,
}

/// Decides whether some real matrix with the sign pattern of `a` satisfies
/// `B^{k+1} = B`, `k` the sign potence index of `a`. Extraneous zero rows and
/// columns are dropped first; an all-zero pattern allows idempotence.
pub fn allows_kpotence(a: &SignMatrix) -> Result<Allowance> {
    let n = a.require_square()?;
    a.require_proper()?;
    let report = a.potence_index(default_kmax(n))?;
    let k = report.k.ok_or(Error::NotKPotent { kmax: default_kmax(n) })?;
    let kept = kept_indices(a);
    if kept.is_empty() {
        return Ok(Allowance { allows: true, k, violations: Vec::new() });
    }
    let core = a.principal_submatrix(&kept);
    let (cnf, c) = to_cyclic_normal_form(&core)?;
    let ppo = is_ppo(&c, &cnf)?;
    Ok(Allowance { allows: ppo.is_ppo, k, violations: ppo.violations })
}

fn unit(s: Sign, den: usize) -> BigRational {
    let x = BigRational::new(1.into(), den.into());
    match s {
        Sign::Plus => x,
        Sign::Minus => -x,
        _ => BigRational::zero(),
    }
}

/// Real matrix in `Q(c)` with `B^{k+1} = B`, built in cyclic normal form
/// coordinates. `c` is in the form described by `cnf` and in PPO.
fn build_in_form(c: &SignMatrix, cnf: &CyclicForm, k: usize) -> Result<RationalMatrix> {
    let n = c.rows();
    let ranges = cnf.block_ranges();
    let nb = ranges.len();
    let mut block_of = vec![0; n];
    let mut class_size = vec![1; n];
    for b in 0..nb {
        for r in ranges[b].clone() {
            block_of[r] = b;
        }
        for cr in cnf.class_ranges(b) {
            for r in cr.clone() {
                class_size[r] = cr.len();
            }
        }
    }
    let zero_block = |b: usize| cnf.block_types[b].is_zero();
    let mut out = RationalMatrix::zeros(n);
    for u in 0..n {
        for v in 0..n {
            let s = c.get(u, v);
            if s.is_zero() {
                continue;
            }
            let (bu, bv) = (block_of[u], block_of[v]);
            let den = match (zero_block(bu), zero_block(bv)) {
                // diagonal blocks and nonzero-to-zero columns: by source class
                (false, true) => class_size[u],
                (false, false) if bu == bv => class_size[u],
                // zero-to-nonzero rows: by target class
                (true, false) => class_size[v],
                (false, false) => {
                    return Err(Error::NotPpo(vec![(bu, bv)]));
                }
                (true, true) => continue,
            };
            out.set(u, v, unit(s, den));
        }
    }
    // Zero-to-zero cells, column by column and bottom-up: the sum over weakly
    // increasing chains of k intermediate blocks strictly between the pair.
    let blk = |m: &RationalMatrix, i: usize, j: usize| m.block(ranges[i].clone(), ranges[j].clone());
    for j in 0..nb {
        if !zero_block(j) {
            continue;
        }
        for i in (0..j).rev() {
            if !zero_block(i) || i + 1 == j {
                continue;
            }
            let inner = i + 1..j;
            let mut walk: Vec<RationalMatrix> = inner.clone().map(|t| blk(&out, i, t)).collect();
            for _ in 1..k {
                walk = inner
                    .clone()
                    .map(|t2| {
                        let mut acc = RationalMatrix::zeros_rect(ranges[i].len(), ranges[t2].len());
                        for t in i + 1..=t2 {
                            acc.add_assign(&walk[t - i - 1].mul(&blk(&out, t, t2)).expect("block shapes agree"));
                        }
                        acc
                    })
                    .collect();
            }
            let mut total = RationalMatrix::zeros_rect(ranges[i].len(), ranges[j].len());
            for t in inner {
                total.add_assign(&walk[t - i - 1].mul(&blk(&out, t, j)).expect("block shapes agree"));
            }
            out.set_block(ranges[i].start, ranges[j].start, &total);
        }
    }
    Ok(out)
}

/// Builds `B ∈ Q(a)` with `B^{k+1} = B`, where `a` has no extraneous zero
/// rows/columns, `cnf` is its cyclic normal form and `k` is the sign potence
/// index. The result is verified before it is returned.
pub fn build_realization(a: &SignMatrix, cnf: &CyclicForm) -> Result<RationalMatrix> {
    let n = a.require_square()?;
    let k = a.potence_index(default_kmax(n))?.k.ok_or(Error::NotKPotent { kmax: default_kmax(n) })?;
    let c = cnf.apply(a)?;
    let ppo = is_ppo(&c, cnf)?;
    if !ppo.is_ppo {
        return Err(Error::NotPpo(ppo.violations));
    }
    let b = cnf.pull_back(&build_in_form(&c, cnf, k)?);
    if !verify_realization(&b, a, k)? {
        return Err(Error::Internal("constructed realization failed verification".into()));
    }
    Ok(b)
}

/// A verified realization of a whole pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub b: RationalMatrix,
    pub k: usize,
}

/// [`build_realization`] for any sign k-potent pattern: extraneous zero
/// rows/columns are removed, realized as zero, and the form is computed.
pub fn realize(a: &SignMatrix) -> Result<Realization> {
    let n = a.require_square()?;
    a.require_proper()?;
    let k = a.potence_index(default_kmax(n))?.k.ok_or(Error::NotKPotent { kmax: default_kmax(n) })?;
    let kept = kept_indices(a);
    let mut b = RationalMatrix::zeros(n);
    if !kept.is_empty() {
        let core = a.principal_submatrix(&kept);
        let (cnf, _) = to_cyclic_normal_form(&core)?;
        let inner = build_realization(&core, &cnf)?;
        for (x, &u) in kept.iter().enumerate() {
            for (y, &v) in kept.iter().enumerate() {
                b.set(u, v, inner.get(x, y).clone());
            }
        }
    }
    if !verify_realization(&b, a, k)? {
        return Err(Error::Internal("constructed realization failed verification".into()));
    }
    Ok(Realization { b, k })
}

/// Exact check of `B^{k+1} = B` and `sign(B) = A`.
pub fn verify_realization(b: &RationalMatrix, a: &SignMatrix, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Dimension("k must be positive".into()));
    }
    if !qualitative_member(b, a)? {
        return Ok(false);
    }
    Ok(b.pow(k + 1)? == *b)
}

/// Exact answer for 2×2 upper triangular patterns: some `B ∈ Q(A)` has
/// `B² = B` iff both diagonal signs are in `{0, +}` and, when `a_12 ≠ 0`,
/// exactly one of them is `+`. (`b_ii² = b_ii` pins `b_ii ∈ {0, 1}`, and
/// `b_12 = (b_11 + b_22) b_12` forces `b_12 = 0` unless `b_11 + b_22 = 1`.)
pub fn closed_form_idempotent_2x2(a: &SignMatrix) -> Result<bool> {
    if (a.rows(), a.cols()) != (2, 2) || a.get(1, 0).is_nonzero() {
        return Err(Error::Dimension("expected a 2x2 upper triangular pattern".into()));
    }
    a.require_proper()?;
    let (d1, d2) = (a.get(0, 0), a.get(1, 1));
    if d1 == Sign::Minus || d2 == Sign::Minus {
        return Ok(false);
    }
    Ok(a.get(0, 1).is_zero() || (d1 == Sign::Plus) != (d2 == Sign::Plus))
}

/// Restricted chain sum for one block pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenSum {
    pub i: usize,
    pub j: usize,
    pub vanishes: bool,
}

/// For block pairs `i + 1 < j` with a nonzero diagonal block on at least one
/// side, the sum of `A_{i i_1} A_{i_1 i_2} ⋯ A_{i_k j}` over weakly
/// increasing chains `i ≤ i_1 ≤ … ≤ i_k ≤ j` that visit some block strictly
/// between `i` and `j`, and whether it is the zero block.
pub fn forbidden_sum_check(a: &SignMatrix, cnf: &CyclicForm, k: usize) -> Result<Vec<ForbiddenSum>> {
    check_form(a, cnf)?;
    if k == 0 {
        return Err(Error::Dimension("k must be positive".into()));
    }
    let ranges = cnf.block_ranges();
    let nb = ranges.len();
    let blk = |i: usize, j: usize| a.block(ranges[i].clone(), ranges[j].clone());
    let mut out = Vec::new();
    for i in 0..nb {
        for j in i + 2..nb {
            if cnf.block_types[i].is_zero() && cnf.block_types[j].is_zero() {
                continue;
            }
            let rows = ranges[i].len();
            let zeros = |t: usize| SignMatrix::zeros_rect(rows, ranges[t].len());
            // walk[flag][t - i]: chains ending at block t; flag marks a visit
            // strictly inside (i, j)
            let mut walk: [Vec<SignMatrix>; 2] = [(i..=j).map(zeros).collect(), (i..=j).map(zeros).collect()];
            walk[0][0] = SignMatrix::identity(rows);
            for _ in 0..k {
                let mut next: [Vec<SignMatrix>; 2] = [(i..=j).map(zeros).collect(), (i..=j).map(zeros).collect()];
                for flag in 0..2 {
                    for t in i..=j {
                        for t2 in t..=j {
                            let f2 = if flag == 1 || (t2 != i && t2 != j) { 1 } else { 0 };
                            let term = walk[flag][t - i].mul_unchecked(&blk(t, t2));
                            next[f2][t2 - i].add_assign_unchecked(&term);
                        }
                    }
                }
                walk = next;
            }
            let mut total = SignMatrix::zeros_rect(rows, ranges[j].len());
            for t in i..=j {
                total.add_assign_unchecked(&walk[1][t - i].mul_unchecked(&blk(t, j)));
            }
            out.push(ForbiddenSum { i, j, vanishes: total.is_zero() });
        }
    }
    Ok(out)
}

/// Largest denominator in a realization, for diagnostics.
pub fn max_denominator(b: &RationalMatrix) -> num_bigint::BigInt {
    let mut best = num_bigint::BigInt::one();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let d = b.get(i, j).denom().clone();
            if d > best {
                best = d;
            }
        }
    }
    best
}
