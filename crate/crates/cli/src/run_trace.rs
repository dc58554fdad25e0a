//! `gep trace`: evaluate every force along a scenario's trajectory.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use gep_core::{better_adapted, force_trace};

use crate::report::{self, Check, ScenarioOutcome};
use crate::scenario::{self, TraceScenario};
use crate::RunOpts;

#[derive(Serialize)]
struct ForceRow<'a> {
    time: f64,
    u: &'a [f64],
    d: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    scenario: &'a str,
    kind: &'a str,
    mode: &'a str,
    /// Number of unification-force components.
    k: usize,
    times: usize,
    first: ForceRow<'a>,
    #[serde(rename = "final")]
    last: ForceRow<'a>,
    /// Every force non-decreasing between consecutive grid times.
    monotone: bool,
    /// The last grid state dominates the first.
    final_dominates_start: bool,
    checks: &'a [Check],
    pass: bool,
}

pub fn trace(path: &Path, opts: &RunOpts) -> Result<ScenarioOutcome> {
    let sc: TraceScenario = scenario::load(path, "gep-trace")?;
    let stem = report::scenario_stem(path);
    let in_file = || path.display().to_string();
    let inputs = sc.build().with_context(in_file)?;

    let trace = force_trace(
        &inputs.space,
        &inputs.gs,
        &inputs.pop,
        &inputs.inters,
        &inputs.cost,
        &inputs.avg,
        &inputs.div,
    )
    .with_context(in_file)?;

    let times = trace.times();
    let u = trace.u();
    let d = trace.d();
    let monotone = (1..times.len()).all(|i| {
        u[i].iter().zip(&u[i - 1]).all(|(now, before)| now >= before) && d[i] >= d[i - 1]
    });
    let last_time = *times.last().expect("non-empty trace");
    let final_dominates_start =
        better_adapted(&trace, times[0], last_time).with_context(in_file)?;

    let mut checks = Vec::new();
    if inputs.assert.monotone {
        checks.push(Check::new(
            "monotone_trace",
            monotone,
            format!("every force non-decreasing over {} grid times", times.len()),
        ));
    }
    if inputs.assert.final_dominates_start {
        checks.push(Check::new(
            "final_dominates_start",
            final_dominates_start,
            format!("state at t = {last_time} against t = {}", times[0]),
        ));
    }

    let pass = checks.iter().all(|c| c.pass);
    let report_json = report::to_json(&Report {
        scenario: &stem,
        kind: &sc.kind,
        mode: "trace",
        k: trace.k(),
        times: times.len(),
        first: ForceRow {
            time: times[0],
            u: &u[0],
            d: d[0],
        },
        last: ForceRow {
            time: last_time,
            u: u.last().expect("non-empty trace"),
            d: *d.last().expect("non-empty trace"),
        },
        monotone,
        final_dominates_start,
        checks: &checks,
        pass,
    })?;

    let csv = Some(("trace.csv", trace.to_csv_string()));
    report::finish(opts, stem, report_json, csv, &checks)
}
