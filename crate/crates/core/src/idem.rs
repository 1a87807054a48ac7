//! Column-by-column construction of every reduced sign idempotent pattern.
//!
//! Indices are 0-based. The pattern is upper triangular with a diagonal over
//! `{0, +}`; off-diagonal cells are filled column by column (`j = 1..n`),
//! each column bottom-up (`i = j-1 down to 0`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::search::{CellRule, Lcg, Search, SearchStats};
use crate::sign::Sign;

/// Diagonal of a reduced upper triangular pattern, each entry `0` or `+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagSpec {
    diag: Vec<Sign>,
}

impl DiagSpec {
    pub fn new(diag: Vec<Sign>) -> Result<DiagSpec> {
        if diag.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(s) = diag.iter().find(|s| !matches!(s, Sign::Zero | Sign::Plus)) {
            return Err(Error::Dimension(format!("diagonal entries must be 0 or +, found {s}")));
        }
        Ok(DiagSpec { diag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.diag[i]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.diag
    }

    /// Every diagonal of length `n`, in lexicographic order with `0 < +`.
    pub fn all(n: usize) -> Vec<DiagSpec> {
        (0..1usize << n)
            .map(|mask| DiagSpec {
                diag: (0..n)
                    .map(|i| if mask >> (n - 1 - i) & 1 == 1 { Sign::Plus } else { Sign::Zero })
                    .collect(),
            })
            .collect()
    }

    fn initial(&self) -> SignMatrix {
        let n = self.len();
        let mut a = SignMatrix::zeros(n);
        for i in 0..n {
            a.set(i, i, self.diag[i]);
        }
        a
    }
}

impl FromStr for DiagSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<DiagSpec> {
        let diag = s
            .trim()
            .chars()
            .map(|c| {
                Sign::from_char(c).ok_or_else(|| Error::Parse { line: 1, msg: format!("bad diagonal character {c:?}") })
            })
            .collect::<Result<Vec<_>>>()?;
        DiagSpec::new(diag)
    }
}

impl fmt::Display for DiagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.diag.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

/// Admissible signs of one cell, kept in branch order `0, +, -`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChoiceSet {
    allowed: Vec<Sign>,
}

impl ChoiceSet {
    fn of(mut allowed: Vec<Sign>) -> ChoiceSet {
        allowed.sort();
        allowed.dedup();
        ChoiceSet { allowed }
    }

    pub fn all() -> ChoiceSet {
        ChoiceSet { allowed: vec![Sign::Zero, Sign::Plus, Sign::Minus] }
    }

    pub fn single(s: Sign) -> ChoiceSet {
        ChoiceSet { allowed: vec![s] }
    }

    pub fn contains(&self, s: Sign) -> bool {
        self.allowed.contains(&s)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.allowed
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }
}

fn column_sum(a: &SignMatrix, l: usize, range: std::ops::Range<usize>, j: usize) -> Result<Sign> {
    let x = range.fold(Sign::Zero, |acc, p| acc + a.get(l, p) * a.get(p, j));
    if x == Sign::Amb {
        return Err(Error::Internal(format!("ambiguous sum for row {l}, column {j}")));
    }
    Ok(x)
}

/// Signs admissible at cell `(i, j)` given the cells already fixed: every
/// column before `j` and the cells `(i', j)` with `i' > i`.
pub fn free_choices(partial: &SignMatrix, i: usize, j: usize, diag: &DiagSpec) -> Result<ChoiceSet> {
    let n = partial.require_square()?;
    if n != diag.len() || i >= j || j >= n {
        return Err(Error::Dimension(format!("cell ({i}, {j}) outside a strictly upper {n}x{n} pattern")));
    }
    let both_zero = diag.get(i).is_zero() && diag.get(j).is_zero();
    if i + 1 == j {
        return Ok(if both_zero { ChoiceSet::single(Sign::Zero) } else { ChoiceSet::all() });
    }
    let x = column_sum(partial, i, i + 1..j, j)?;
    if x.is_nonzero() {
        return Ok(ChoiceSet::single(x));
    }
    if both_zero {
        return Ok(ChoiceSet::single(Sign::Zero));
    }
    let mut allowed = vec![Sign::Zero, Sign::Plus, Sign::Minus];
    for l in 0..i {
        let xl = column_sum(partial, l, i + 1..j, j)?;
        let a_li = partial.get(l, i);
        if (a_li * xl).is_nonzero() {
            // a_li is ±, so a_li * s = xl has the unique solution s = a_li * xl
            let required = a_li * xl;
            allowed.retain(|&s| s.is_zero() || s == required);
        }
    }
    Ok(ChoiceSet::of(allowed))
}

struct IdemRule {
    diag: DiagSpec,
    cells: Vec<(usize, usize)>,
}

impl IdemRule {
    fn new(diag: DiagSpec) -> IdemRule {
        let n = diag.len();
        let cells = (1..n).flat_map(|j| (0..j).rev().map(move |i| (i, j))).collect();
        IdemRule { diag, cells }
    }
}

impl CellRule for IdemRule {
    type Choice = Sign;

    fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn choices(&self, state: &SignMatrix, cell: usize) -> Result<Vec<Sign>> {
        let (i, j) = self.cells[cell];
        Ok(free_choices(state, i, j, &self.diag)?.allowed)
    }

    fn assign(&self, state: &mut SignMatrix, cell: usize, choice: &Sign) {
        let (i, j) = self.cells[cell];
        state.set(i, j, *choice);
    }

    fn clear(&self, state: &mut SignMatrix, cell: usize) {
        let (i, j) = self.cells[cell];
        state.set(i, j, Sign::Zero);
    }
}

/// Depth-first stream of every reduced sign idempotent pattern with the
/// given diagonal, branches taken in the order `0, +, -`.
pub struct IdempotentGenerator {
    search: Search<IdemRule>,
}

impl IdempotentGenerator {
    pub fn new(diag: &DiagSpec) -> IdempotentGenerator {
        IdempotentGenerator { search: Search::new(IdemRule::new(diag.clone()), diag.initial()) }
    }

    /// Also records per-cell assignment counts for every emitted pattern.
    pub fn instrumented(diag: &DiagSpec) -> IdempotentGenerator {
        IdempotentGenerator { search: Search::new(IdemRule::new(diag.clone()), diag.initial()).recording() }
    }

    /// Cells in assignment order.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.search.rule().cells
    }

    pub fn stats(&self) -> &SearchStats {
        &self.search.stats
    }
}

impl Iterator for IdempotentGenerator {
    type Item = Result<SignMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        self.search.next()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerationMode {
    All,
    /// `count` independent draws, each cell's branch picked by [`Lcg`].
    Sample { count: usize, seed: u64 },
}

pub fn generate_idempotent(diag: &DiagSpec, mode: GenerationMode) -> Result<Vec<SignMatrix>> {
    match mode {
        GenerationMode::All => IdempotentGenerator::new(diag).collect(),
        GenerationMode::Sample { count, seed } => {
            let mut search = Search::new(IdemRule::new(diag.clone()), diag.initial());
            let mut rng = Lcg::new(seed);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                match search.sample_one(&mut rng)? {
                    Some(m) => out.push(m),
                    None => return Err(Error::Internal("idempotent construction reached an empty choice set".into())),
                }
            }
            Ok(out)
        }
    }
}

/// A completed instrumented run.
#[derive(Clone, Debug)]
pub struct IdempotentRun {
    pub cells: Vec<(usize, usize)>,
    pub matrices: Vec<SignMatrix>,
    pub stats: SearchStats,
}

pub fn run_instrumented(diag: &DiagSpec) -> Result<IdempotentRun> {
    let mut generator = IdempotentGenerator::instrumented(diag);
    let matrices = generator.by_ref().collect::<Result<Vec<_>>>()?;
    Ok(IdempotentRun { cells: generator.cells().to_vec(), matrices, stats: generator.stats().clone() })
}

/// Per-cell assignment counts, one vector per emitted pattern.
pub fn count_assignments(run: &IdempotentRun) -> &[Vec<u32>] {
    &run.stats.assignment_counts
}
