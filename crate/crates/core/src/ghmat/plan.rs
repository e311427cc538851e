//! Construction plans for GH(g, n/g) matrices with `g > 2`.
//!
//! The planner is greedy over a small rule set: prime multiplication tables,
//! registered imports, Kronecker-sum composition and (for small sides) the
//! backtracking search. It makes no claim about which orders are reachable in
//! general; an order it cannot reach may still admit a suitable matrix.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::search::{gh_search, SearchConfig, SearchOutcome};
use super::{gh_compose, gh_cyclic_prime, is_prime, verify_gh, GHMatrix};
use crate::error::{Error, Result};

/// Even orders up to 100 for which no GH(g, n/g) over `Z_g` with `g > 2` is
/// known. Without registered imports the planner never returns a recipe for them.
pub const EXCLUDED_ORDERS: [usize; 13] = [2, 4, 8, 32, 40, 42, 60, 64, 66, 70, 78, 84, 88];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    PrimeBase { p: u32 },
    Search { g: u32, lambda: u32 },
    Compose { left: Box<Step>, right: Box<Step> },
    Import { source: String, g: u32, lambda: u32 },
}

impl Step {
    /// `(g, λ)` of the matrix this step produces.
    pub fn params(&self) -> (u32, u32) {
        match self {
            Step::PrimeBase { p } => (*p, 1),
            Step::Search { g, lambda } | Step::Import { g, lambda, .. } => (*g, *lambda),
            Step::Compose { left, right } => {
                let (g, a) = left.params();
                let (_, b) = right.params();
                (g, g * a * b)
            }
        }
    }

    /// Leaves first, in execution order.
    pub fn flatten(&self) -> Vec<&Step> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Step>) {
        if let Step::Compose { left, right } = self {
            left.collect(out);
            right.collect(out);
        }
        out.push(self);
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::PrimeBase { p } => write!(f, "PrimeBase({p})"),
            Step::Search { g, lambda } => write!(f, "Search({g},{lambda})"),
            Step::Compose { left, right } => write!(f, "Compose({left}, {right})"),
            Step::Import { source, .. } => write!(f, "Import({source})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub target: usize,
    pub g: u32,
    pub lambda: u32,
    pub construction: Step,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GH({}, {}) of side {} = {}", self.g, self.lambda, self.target, self.construction)
    }
}

#[derive(Clone, Debug)]
struct Imported {
    source: String,
    matrix: GHMatrix,
}

#[derive(Clone, Debug, Default)]
pub struct Planner {
    search: SearchConfig,
    imports: Vec<Imported>,
}

impl Planner {
    pub fn new(search: SearchConfig) -> Self {
        Self { search, imports: Vec::new() }
    }

    pub fn search_config(&self) -> &SearchConfig {
        &self.search
    }

    /// Makes an external GH matrix available to recipes. Only verified
    /// matrices are accepted.
    pub fn register_import(&mut self, source: impl Into<String>, matrix: GHMatrix) -> Result<()> {
        if !verify_gh(&matrix).pass {
            return Err(Error::NotVerified("generalized Hadamard matrix"));
        }
        self.imports.push(Imported { source: source.into(), matrix });
        Ok(())
    }

    pub fn has_imports(&self) -> bool {
        !self.imports.is_empty()
    }

    /// Finds a recipe for a GH(g, n/g) over `Z_g` with `g > 2`, trying `g` in
    /// increasing order.
    pub fn plan(&self, n: usize) -> Result<Option<Recipe>> {
        if n < 2 {
            return Err(Error::Parameter(format!("order must be at least 2, got {n}")));
        }
        if n % 2 == 1 {
            return Err(Error::OddOrder(n));
        }
        if self.imports.is_empty() && EXCLUDED_ORDERS.contains(&n) {
            return Ok(None);
        }
        self.plan_unguarded(n)
    }

    fn plan_unguarded(&self, n: usize) -> Result<Option<Recipe>> {
        let mut memo = HashMap::new();
        for g in (3..=n).filter(|g| n.is_multiple_of(*g)) {
            let (Ok(g32), Ok(lambda)) = (u32::try_from(g), u32::try_from(n / g)) else {
                continue;
            };
            if let Some(step) = self.build(g32, lambda, &mut memo)? {
                return Ok(Some(Recipe { target: n, g: g32, lambda, construction: step }));
            }
        }
        Ok(None)
    }

    fn build(
        &self,
        g: u32,
        lambda: u32,
        memo: &mut HashMap<(u32, u32), Option<Step>>,
    ) -> Result<Option<Step>> {
        if let Some(hit) = memo.get(&(g, lambda)) {
            return Ok(hit.clone());
        }
        let step = self.build_uncached(g, lambda, memo)?;
        memo.insert((g, lambda), step.clone());
        Ok(step)
    }

    fn build_uncached(
        &self,
        g: u32,
        lambda: u32,
        memo: &mut HashMap<(u32, u32), Option<Step>>,
    ) -> Result<Option<Step>> {
        if lambda == 1 && is_prime(g as u64) {
            return Ok(Some(Step::PrimeBase { p: g }));
        }
        if let Some(imp) = self.imports.iter().find(|i| i.matrix.g() == g && i.matrix.lambda() == lambda) {
            return Ok(Some(Step::Import { source: imp.source.clone(), g, lambda }));
        }
        if lambda.is_multiple_of(g) {
            let rest = lambda / g;
            for left in (1..=rest).rev().filter(|d| rest.is_multiple_of(*d)) {
                let Some(l) = self.build(g, left, memo)? else { continue };
                let Some(r) = self.build(g, rest / left, memo)? else { continue };
                return Ok(Some(Step::Compose { left: Box::new(l), right: Box::new(r) }));
            }
        }
        let side = g as usize * lambda as usize;
        if side <= self.search.max_side && g <= 256 {
            if let SearchOutcome::Found { .. } = gh_search(g, lambda, &self.search)? {
                return Ok(Some(Step::Search { g, lambda }));
            }
        }
        Ok(None)
    }

    /// Runs a recipe step by step.
    pub fn execute(&self, recipe: &Recipe) -> Result<GHMatrix> {
        let m = self.execute_step(&recipe.construction)?;
        if m.side() != recipe.target {
            return Err(Error::Malformed(format!(
                "recipe produced side {}, expected {}",
                m.side(),
                recipe.target
            )));
        }
        Ok(m)
    }

    fn execute_step(&self, step: &Step) -> Result<GHMatrix> {
        match step {
            Step::PrimeBase { p } => gh_cyclic_prime(*p),
            Step::Search { g, lambda } => match gh_search(*g, *lambda, &self.search)? {
                SearchOutcome::Found { matrix, .. } => Ok(matrix),
                SearchOutcome::NotFound { reason, nodes } => Err(Error::SearchFailed {
                    g: *g,
                    lambda: *lambda,
                    reason: format!("{reason:?} after {nodes} nodes"),
                }),
            },
            Step::Compose { left, right } => {
                gh_compose(&self.execute_step(left)?, &self.execute_step(right)?)
            }
            Step::Import { source, .. } => self
                .imports
                .iter()
                .find(|i| &i.source == source)
                .map(|i| i.matrix.clone())
                .ok_or_else(|| Error::MissingImport(source.clone())),
        }
    }
}

/// [`Planner::plan`] with the default search limits and no imports.
pub fn plan_order(n: usize) -> Result<Option<Recipe>> {
    Planner::default().plan(n)
}
