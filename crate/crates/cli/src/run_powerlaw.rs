//! `powerlaw verify`: solve a scenario and assert its bounds.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use gep_core::powerlaw::{make_cost, solve, PowerLawError, PowerLawSolution};
use gep_core::simplex;

use crate::report::{self, Check, ScenarioOutcome};
use crate::scenario::{self, PowerlawScenario};
use crate::RunOpts;

#[derive(Serialize)]
struct Report<'a> {
    scenario: &'a str,
    kind: &'a str,
    mode: &'a str,
    d: usize,
    tol: f64,
    max_iters: usize,
    /// Absent when the optimizer could not certify a minimizer.
    solution: Option<&'a PowerLawSolution>,
    checks: &'a [Check],
    pass: bool,
}

pub fn verify(path: &Path, opts: &RunOpts) -> Result<ScenarioOutcome> {
    let sc: PowerlawScenario = scenario::load(path, "powerlaw")?;
    let stem = report::scenario_stem(path);
    let in_file = || path.display().to_string();

    let prob = make_cost(sc.d, sc.cost.clone()).with_context(in_file)?;
    let tol = opts.tol.or(sc.tol).unwrap_or(1e-8);
    if !(tol > 0.0) || !tol.is_finite() {
        bail!("{}: tolerance must be positive and finite, got {tol}", in_file());
    }
    let init = match &sc.init {
        Some(v) => v.clone(),
        None => simplex::uniform(sc.d),
    };
    let max_iters = sc.max_iters.unwrap_or(200_000);

    let mut checks = Vec::new();
    let solution = match solve(&prob, &init, tol, max_iters) {
        Ok(solution) => {
            checks.push(Check::new(
                "optimizer",
                true,
                format!(
                    "converged in {} iterations, certified residual {:e}",
                    solution.iterations, solution.grad_norm
                ),
            ));
            Some(solution)
        }
        Err(e @ (PowerLawError::NonConvergence { .. } | PowerLawError::BoundaryCollapse { .. })) => {
            checks.push(Check::new("optimizer", false, e.to_string()));
            None
        }
        Err(e) => return Err(e).with_context(in_file),
    };

    if let Some(solution) = &solution {
        let h = &solution.hypotheses;
        checks.push(Check::new("hypotheses", h.passes(), h.to_string()));
        if let Some(bound) = sc.assert.stationarity_spread {
            checks.push(Check::new(
                "stationarity",
                solution.stationarity_spread <= bound,
                format!(
                    "stationarity values spread {:e}, bound {bound:e}",
                    solution.stationarity_spread
                ),
            ));
        }
        if let Some(bound) = sc.assert.max_residual {
            match solution.residual {
                Some(residual) => checks.push(Check::new(
                    "residual",
                    residual <= bound,
                    format!("max |y_k - q_k| = {residual:e}, bound {bound:e}"),
                )),
                None => checks.push(Check::new(
                    "residual",
                    false,
                    "no predicted distribution: the hypotheses fail at the minimizer".to_string(),
                )),
            }
        }
    } else {
        if sc.assert.stationarity_spread.is_some() {
            checks.push(Check::new("stationarity", false, "no certified minimizer"));
        }
        if sc.assert.max_residual.is_some() {
            checks.push(Check::new("residual", false, "no certified minimizer"));
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    let report_json = report::to_json(&Report {
        scenario: &stem,
        kind: &sc.kind,
        mode: "verify",
        d: sc.d,
        tol,
        max_iters,
        solution: solution.as_ref(),
        checks: &checks,
        pass,
    })?;

    let csv = solution.as_ref().map(|solution| {
        let rows = (1..=sc.d).map(|k| {
            let y = solution.y[k - 1];
            let q = solution
                .predicted
                .as_ref()
                .map(|q| q[k - 1].to_string())
                .unwrap_or_default();
            vec![k.to_string(), y.to_string(), q]
        });
        (
            "distribution.csv",
            report::csv_table(&["k", "y_k", "q_hat_k"], rows),
        )
    });

    report::finish(opts, stem, report_json, csv, &checks)
}
