//! Depth-first search over cell assignments, shared by the two generators.
//!
//! A rule supplies the cells in assignment order and, for a partially filled
//! pattern, the admissible values of the next cell. The search keeps one
//! frame per assigned cell and counts how many times each cell is assigned on
//! the current branch, so a construction that revisits a cell shows up as a
//! count above 1.

use crate::error::Result;
use crate::matrix::SignMatrix;

pub(crate) trait CellRule {
    type Choice: Clone;

    fn cell_count(&self) -> usize;

    /// Admissible values of cell `cell`, all earlier cells being assigned.
    fn choices(&self, state: &SignMatrix, cell: usize) -> Result<Vec<Self::Choice>>;

    fn assign(&self, state: &mut SignMatrix, cell: usize, choice: &Self::Choice);

    fn clear(&self, state: &mut SignMatrix, cell: usize);

    /// Final filter on a completed pattern.
    fn accept(&self, _state: &SignMatrix) -> Result<bool> {
        Ok(true)
    }
}

/// 64-bit linear congruential generator used for reproducible sampling:
/// `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
/// and a uniform index below `len` is `(state >> 33) % len` taken after the
/// update. The initial state is the seed.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        self.state
    }

    pub fn below(&mut self, len: usize) -> usize {
        assert!(len > 0);
        ((self.next_u64() >> 33) % len as u64) as usize
    }
}

/// Per-branch bookkeeping of a finished search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Assignment count of every cell, one vector per emitted pattern.
    pub assignment_counts: Vec<Vec<u32>>,
    /// States where a cell had no admissible value.
    pub dead_ends: usize,
    /// Completed patterns rejected by the final filter.
    pub rejected: usize,
}

impl SearchStats {
    pub fn all_single_assignment(&self) -> bool {
        self.assignment_counts.iter().flatten().all(|&c| c == 1)
    }
}

struct Frame<C> {
    choices: Vec<C>,
    next: usize,
}

pub(crate) struct Search<R: CellRule> {
    rule: R,
    state: SignMatrix,
    stack: Vec<Frame<R::Choice>>,
    counts: Vec<u32>,
    started: bool,
    failed: bool,
    pub(crate) stats: SearchStats,
    record_counts: bool,
}

impl<R: CellRule> Search<R> {
    pub(crate) fn new(rule: R, initial: SignMatrix) -> Search<R> {
        let cells = rule.cell_count();
        Search {
            rule,
            state: initial,
            stack: Vec::with_capacity(cells),
            counts: vec![0; cells],
            started: false,
            failed: false,
            stats: SearchStats::default(),
            record_counts: false,
        }
    }

    pub(crate) fn recording(mut self) -> Self {
        self.record_counts = true;
        self
    }

    pub(crate) fn rule(&self) -> &R {
        &self.rule
    }

    /// Pushes the frame for the next unassigned cell. Returns false on a
    /// dead end.
    fn open(&mut self) -> Result<bool> {
        let cell = self.stack.len();
        let choices = self.rule.choices(&self.state, cell)?;
        if choices.is_empty() {
            self.stats.dead_ends += 1;
            return Ok(false);
        }
        self.stack.push(Frame { choices, next: 0 });
        Ok(true)
    }

    fn emit(&mut self) -> Result<Option<SignMatrix>> {
        if self.rule.accept(&self.state)? {
            if self.record_counts {
                self.stats.assignment_counts.push(self.counts.clone());
            }
            Ok(Some(self.state.clone()))
        } else {
            self.stats.rejected += 1;
            Ok(None)
        }
    }

    fn step(&mut self) -> Result<Option<SignMatrix>> {
        let total = self.rule.cell_count();
        if !self.started {
            self.started = true;
            if total == 0 {
                return self.emit();
            }
            if !self.open()? {
                return Ok(None);
            }
        }
        loop {
            let depth = self.stack.len();
            let Some(frame) = self.stack.last_mut() else {
                return Ok(None);
            };
            let cell = depth - 1;
            if frame.next > 0 {
                self.rule.clear(&mut self.state, cell);
                self.counts[cell] -= 1;
            }
            if frame.next == frame.choices.len() {
                self.stack.pop();
                continue;
            }
            let choice = frame.choices[frame.next].clone();
            frame.next += 1;
            self.rule.assign(&mut self.state, cell, &choice);
            self.counts[cell] += 1;
            if depth == total {
                if let Some(m) = self.emit()? {
                    return Ok(Some(m));
                }
                continue;
            }
            self.open()?;
        }
    }

    /// Draws one completion with the generator; `None` if the drawn branch
    /// dead-ends or is rejected.
    pub(crate) fn sample_one(&mut self, rng: &mut Lcg) -> Result<Option<SignMatrix>> {
        let total = self.rule.cell_count();
        for cell in 0..total {
            self.rule.clear(&mut self.state, cell);
        }
        for cell in 0..total {
            let choices = self.rule.choices(&self.state, cell)?;
            if choices.is_empty() {
                self.stats.dead_ends += 1;
                return Ok(None);
            }
            let pick = &choices[rng.below(choices.len())];
            self.rule.assign(&mut self.state, cell, pick);
        }
        if self.rule.accept(&self.state)? {
            Ok(Some(self.state.clone()))
        } else {
            self.stats.rejected += 1;
            Ok(None)
        }
    }
}

impl<R: CellRule> Iterator for Search<R> {
    type Item = Result<SignMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.step() {
            Ok(Some(m)) => Some(Ok(m)),
            Ok(None) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_sequence_is_fixed() {
        let mut rng = Lcg::new(0);
        assert_eq!(rng.next_u64(), 1442695040888963407);
        assert_eq!(rng.next_u64(), 1442695040888963407u64.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407));
        let mut a = Lcg::new(42);
        let mut b = Lcg::new(42);
        for _ in 0..100 {
            assert_eq!(a.below(7), b.below(7));
        }
    }
}
