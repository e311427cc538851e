//! Exhaustive search for a marking of `V` that picks exactly one vector from
//! every basis.

use serde::{Deserialize, Serialize};

use super::KSPair;

/// Characteristic vector of the marked subset `V_1` of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub marked: Vec<bool>,
}

impl Coloring {
    /// True iff every basis contains exactly one marked vector.
    pub fn is_valid_for(&self, p: &KSPair) -> bool {
        self.marked.len() == p.vectors().len()
            && p.bases().iter().all(|b| b.iter().filter(|&&i| self.marked[i]).count() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum NoncolorOutcome {
    NoValidColoring { nodes: u64 },
    FoundColoring { coloring: Coloring, nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

impl NoncolorOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            Self::NoValidColoring { nodes }
            | Self::FoundColoring { nodes, .. }
            | Self::BudgetExceeded { nodes } => *nodes,
        }
    }
}

/// Odd number of bases and every vector in an even number of them: the
/// counting argument alone rules out any valid coloring.
pub fn parity_refutes(p: &KSPair) -> bool {
    p.bases().len() % 2 == 1 && p.memberships().iter().all(|m| m % 2 == 0)
}

struct Solver {
    order: Vec<usize>,
    // bases containing each vector
    incidence: Vec<Vec<usize>>,
    marked_in: Vec<u32>,
    open_in: Vec<u32>,
    value: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Verdict {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Solver {
    fn assign(&mut self, v: usize, mark: bool) -> bool {
        for &b in &self.incidence[v] {
            if mark && self.marked_in[b] == 1 {
                return false;
            }
            if !mark && self.marked_in[b] == 0 && self.open_in[b] == 1 {
                return false;
            }
        }
        for &b in &self.incidence[v] {
            self.open_in[b] -= 1;
            self.marked_in[b] += mark as u32;
        }
        self.value[v] = mark;
        true
    }

    fn unassign(&mut self, v: usize) {
        let mark = std::mem::take(&mut self.value[v]);
        for &b in &self.incidence[v] {
            self.open_in[b] += 1;
            self.marked_in[b] -= mark as u32;
        }
    }

    fn run(&mut self, depth: usize) -> Verdict {
        let Some(&v) = self.order.get(depth) else {
            return Verdict::Found;
        };
        for mark in [true, false] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Verdict::OutOfBudget;
            }
            if !self.assign(v, mark) {
                continue;
            }
            match self.run(depth + 1) {
                Verdict::Exhausted => self.unassign(v),
                other => return other,
            }
        }
        Verdict::Exhausted
    }
}

/// Backtracking over 0/1 assignments to `V`, pruning any basis that already
/// holds two marks or has no open slot left for its single mark. Vectors are
/// visited in descending order of basis membership.
///
/// The answer is decided purely from the incidence structure; orthogonality is
/// not consulted.
pub fn noncolor_check(p: &KSPair, budget: u64) -> NoncolorOutcome {
    let nv = p.vectors().len();
    let mut incidence = vec![Vec::new(); nv];
    for (b, basis) in p.bases().iter().enumerate() {
        for &v in basis {
            incidence[v].push(b);
        }
    }
    let mut order: Vec<usize> = (0..nv).filter(|&v| !incidence[v].is_empty()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(incidence[v].len()), v));
    let mut s = Solver {
        order,
        incidence,
        marked_in: vec![0; p.bases().len()],
        open_in: p.bases().iter().map(|b| b.len() as u32).collect(),
        value: vec![false; nv],
        nodes: 0,
        budget,
    };
    let verdict = s.run(0);
    let nodes = s.nodes.min(budget);
    match verdict {
        Verdict::Found => NoncolorOutcome::FoundColoring { coloring: Coloring { marked: s.value }, nodes },
        Verdict::Exhausted => NoncolorOutcome::NoValidColoring { nodes },
        Verdict::OutOfBudget => NoncolorOutcome::BudgetExceeded { nodes },
    }
}
