//! Backtracking search for normalized GH(g, λ) matrices over `Z_g`.
//!
//! Adding a constant to a row or a column preserves the GH property, so the
//! first row and first column are fixed to zero. Row permutations preserve it
//! too, so rows are generated in strictly increasing lexicographic order.
//! Columns 1.. may be permuted among themselves without disturbing the
//! normalization, so columns are kept in non-decreasing lexicographic order as
//! well (rows and columns can always be sorted simultaneously).
//! Cells are filled row by row with values tried in ascending order, and a
//! branch is cut as soon as some residue occurs more than λ times among the
//! differences against an earlier row. The first completion reached is
//! therefore the lexicographically least normalized, doubly sorted GH(g, λ).

use serde::{Deserialize, Serialize};

use super::GHMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_MAX_SIDE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of cell assignments tried.
    pub budget: u64,
    /// Largest `g·λ` the search accepts.
    pub max_side: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, max_side: DEFAULT_MAX_SIDE }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotFound {
    /// The whole normalized tree was explored: no GH(g, λ) over `Z_g` exists.
    Exhausted,
    /// The node budget ran out first; nothing is known.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { matrix: GHMatrix, nodes: u64 },
    NotFound { reason: NotFound, nodes: u64 },
}

impl SearchOutcome {
    pub fn matrix(&self) -> Option<&GHMatrix> {
        match self {
            Self::Found { matrix, .. } => Some(matrix),
            Self::NotFound { .. } => None,
        }
    }

    pub fn into_matrix(self) -> Option<GHMatrix> {
        match self {
            Self::Found { matrix, .. } => Some(matrix),
            Self::NotFound { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Self::Found { nodes, .. } | Self::NotFound { nodes, .. } => *nodes,
        }
    }
}

struct Searcher {
    g: usize,
    lambda: u16,
    n: usize,
    grid: Vec<u8>,
    // counts[(i * n + k) * g + d]: occurrences of d among row i - row k so far
    counts: Vec<u16>,
    // col_tied[i * n + j]: columns j - 1 and j agree on rows 0..i
    col_tied: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

impl Searcher {
    fn cell(&self, i: usize, j: usize) -> usize {
        self.grid[i * self.n + j] as usize
    }

    fn count_idx(&self, i: usize, k: usize, d: usize) -> usize {
        (i * self.n + k) * self.g + d
    }

    fn start_row(&mut self, i: usize) {
        for j in 1..self.n {
            self.col_tied[i * self.n + j] =
                self.col_tied[(i - 1) * self.n + j] && self.cell(i - 1, j) == self.cell(i - 1, j - 1);
        }
        for k in 0..i {
            let base = self.count_idx(i, k, 0);
            self.counts[base..base + self.g].fill(0);
            self.counts[base] = 1;
        }
    }

    /// Tries to place `v` at `(i, j)`; on failure nothing is left modified.
    fn place(&mut self, i: usize, j: usize, v: usize) -> bool {
        for k in 0..i {
            let d = (v + self.g - self.cell(k, j)) % self.g;
            let idx = self.count_idx(i, k, d);
            if self.counts[idx] == self.lambda {
                self.unplace_prefix(i, j, v, k);
                return false;
            }
            self.counts[idx] += 1;
        }
        self.grid[i * self.n + j] = v as u8;
        true
    }

    fn unplace_prefix(&mut self, i: usize, j: usize, v: usize, upto: usize) {
        for k in 0..upto {
            let d = (v + self.g - self.cell(k, j)) % self.g;
            let idx = self.count_idx(i, k, d);
            self.counts[idx] -= 1;
        }
    }

    fn descend(&mut self, i: usize, j: usize, tight: bool) -> Step {
        if j == self.n {
            if i + 1 == self.n {
                return Step::Done;
            }
            self.start_row(i + 1);
            return self.descend(i + 1, 1, true);
        }
        let mut lo = if tight { self.cell(i - 1, j) } else { 0 };
        if self.col_tied[i * self.n + j] {
            lo = lo.max(self.cell(i, j - 1));
        }
        for v in lo..self.g {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            if !self.place(i, j, v) {
                continue;
            }
            let next_tight = tight && v == self.cell(i - 1, j);
            match self.descend(i, j + 1, next_tight) {
                Step::Dead => self.unplace_prefix(i, j, v, i),
                other => return other,
            }
        }
        Step::Dead
    }
}

/// Deterministic search for a GH(g, λ) over `Z_g`.
pub fn gh_search(g: u32, lambda: u32, config: &SearchConfig) -> Result<SearchOutcome> {
    if g < 2 || g > u8::MAX as u32 + 1 {
        return Err(Error::Parameter(format!("group order {g} outside 2..=256")));
    }
    if lambda == 0 {
        return Err(Error::Parameter("lambda must be positive".into()));
    }
    let n = g as usize * lambda as usize;
    if n > config.max_side {
        return Err(Error::Parameter(format!(
            "GH({g}, {lambda}) has side {n}, above the search limit {}",
            config.max_side
        )));
    }
    let mut s = Searcher {
        g: g as usize,
        lambda: lambda as u16,
        n,
        grid: vec![0; n * n],
        counts: vec![0; n * n * g as usize],
        col_tied: vec![true; n * n],
        nodes: 0,
        budget: config.budget,
    };
    let step = if n == 1 {
        Step::Done
    } else {
        s.start_row(1);
        s.descend(1, 1, true)
    };
    let nodes = s.nodes.min(config.budget);
    Ok(match step {
        Step::Done => {
            let rows = s.grid.chunks(n).map(|r| r.iter().map(|&e| e as u32).collect()).collect();
            let matrix = GHMatrix::new(g, lambda, rows)?;
            SearchOutcome::Found { matrix, nodes }
        }
        Step::Dead => SearchOutcome::NotFound { reason: NotFound::Exhausted, nodes },
        Step::OutOfBudget => SearchOutcome::NotFound { reason: NotFound::Budget, nodes },
    })
}
