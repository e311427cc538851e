//! End-to-end run for a target dimension: plan a GH matrix, build it, lift it
//! to an S-Hadamard matrix, assemble the Kochen-Specker pair and verify each
//! stage.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ghmat::plan::{Planner, Recipe};
use crate::ghmat::{verify_gh, GHMatrix, GhReport};
use crate::ksset::noncolor::{noncolor_check, NoncolorOutcome};
use crate::ksset::{build_ks, ks_stats, verify_ks, KSPair, KsReport, KsStats};
use crate::shadamard::{from_gh, verify_shadamard, SHadamard, ShReport};

#[derive(Clone, Debug, Default)]
pub struct PipelineConfig {
    pub planner: Planner,
    /// Also run the non-colorability search with this node budget.
    pub noncolor_budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GhStage {
    pub matrix: GHMatrix,
    pub report: GhReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShStage {
    pub matrix: SHadamard,
    pub report: ShReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct KsStage {
    pub report: KsReport,
    pub stats: KsStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noncolor: Option<NoncolorOutcome>,
    #[serde(skip)]
    pub pair: KSPair,
}

/// Every stage that ran, with its verification report. Later stages are
/// absent when an earlier one fails.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineBundle {
    pub n: usize,
    pub pass: bool,
    pub recipe: Recipe,
    pub gh: GhStage,
    pub shadamard: Option<ShStage>,
    pub ks: Option<KsStage>,
}

#[derive(Clone, Debug)]
pub enum PipelineOutcome {
    /// The planner has no construction for this order.
    Unreachable {
        n: usize,
    },
    Completed(Box<PipelineBundle>),
}

pub fn run_pipeline(n: usize, config: &PipelineConfig) -> Result<PipelineOutcome> {
    let Some(recipe) = config.planner.plan(n)? else {
        return Ok(PipelineOutcome::Unreachable { n });
    };
    let matrix = config.planner.execute(&recipe)?;
    let report = verify_gh(&matrix);
    let mut bundle =
        PipelineBundle { n, pass: false, recipe, gh: GhStage { matrix, report }, shadamard: None, ks: None };
    if !bundle.gh.report.pass {
        return Ok(PipelineOutcome::Completed(Box::new(bundle)));
    }

    let h = from_gh(&bundle.gh.matrix)?;
    let sh_report = verify_shadamard(&h);
    let sh_pass = sh_report.pass;
    bundle.shadamard = Some(ShStage { matrix: h.clone(), report: sh_report });
    if !sh_pass {
        return Ok(PipelineOutcome::Completed(Box::new(bundle)));
    }

    let pair = match build_ks(&h) {
        Ok(p) => p,
        Err(Error::OddOrder(_)) => unreachable!("planner only accepts even orders"),
        Err(e) => return Err(e),
    };
    let report = verify_ks(&pair);
    let stats = ks_stats(&pair);
    let noncolor = config.noncolor_budget.map(|b| noncolor_check(&pair, b));
    let colorless = noncolor.as_ref().is_none_or(|o| matches!(o, NoncolorOutcome::NoValidColoring { .. }));
    bundle.pass = report.pass && colorless;
    bundle.ks = Some(KsStage { report, stats, noncolor, pair });
    Ok(PipelineOutcome::Completed(Box::new(bundle)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_six_end_to_end() {
        let cfg = PipelineConfig { noncolor_budget: Some(1_000_000), ..Default::default() };
        let PipelineOutcome::Completed(b) = run_pipeline(6, &cfg).unwrap() else {
            panic!("order 6 must be reachable");
        };
        assert!(b.pass);
        let ks = b.ks.as_ref().unwrap();
        assert_eq!((ks.stats.vectors, ks.stats.bases), (21, 7));
        assert!(matches!(ks.noncolor, Some(NoncolorOutcome::NoValidColoring { .. })));
    }

    #[test]
    fn unreachable_and_odd() {
        let cfg = PipelineConfig::default();
        assert!(matches!(run_pipeline(2, &cfg).unwrap(), PipelineOutcome::Unreachable { n: 2 }));
        assert!(matches!(run_pipeline(7, &cfg), Err(Error::OddOrder(7))));
    }
}
