//! The `verify` suites.

use std::ops::RangeInclusive;

use clap::ValueEnum;
use serde_json::{json, Value};

use ro2alg::backend::Backend;
use ro2alg::bordism::{conner_floyd_cokernel, conner_floyd_model, firsching_check, firsching_hypothesis, BordismModel};
use ro2alg::checks::{
    check_additive, check_generation, check_invertible, check_restriction_surjective, detection_suite,
    exactness_suite, two_route_suite, SuiteReport, Window,
};
use ro2alg::Group;

use crate::backends::{named, resolve, Context, Selected};
use crate::{BackendArg, CliError, CliResult, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Exactness,
    Generation,
    Additive,
    Invertible,
    BetaIdentities,
    DkTwoRoutes,
    Detection,
    ConnerFloyd,
    Firsching,
    All,
}

pub struct Options {
    pub max_rank: usize,
    pub k: Option<RangeInclusive<i64>>,
    pub v_size: RangeInclusive<u32>,
    pub trunc: Option<i64>,
    pub samples: usize,
    pub seed: u64,
}

impl Options {
    fn window(&self) -> Window {
        Window::new(self.max_rank, self.k.clone().unwrap_or(-4..=4), self.v_size.clone())
    }

    fn degrees(&self, default: RangeInclusive<i64>) -> RangeInclusive<i64> {
        self.k.clone().unwrap_or(default)
    }
}

const DEFAULT_BACKENDS: [&str; 3] = ["bredon", "borel", "psi-universal"];

/// Expected `(additive, invertible)` for the default backends.
fn expected_properties(name: &str) -> Option<(bool, bool)> {
    match name {
        "bredon" => Some((true, false)),
        "borel" => Some((true, true)),
        "psi-universal" => Some((false, true)),
        _ => None,
    }
}

/// One line of a verification report.
struct Entry {
    suite: &'static str,
    backend: String,
    passed: bool,
    detail: String,
    json: Value,
}

impl Entry {
    fn from_suite(suite: &'static str, r: &SuiteReport) -> Self {
        let detail = match &r.counterexample {
            None => format!("{} checks", r.checked),
            Some(c) => format!("{} checks, counterexample: {c}", r.checked),
        };
        Entry {
            suite,
            backend: r.backend.clone(),
            passed: r.passed,
            detail,
            json: serde_json::to_value(r).unwrap_or(Value::Null),
        }
    }
}

fn backends(arg: &BackendArg) -> CliResult<Vec<Backend>> {
    match (&arg.backend, resolve(arg, "bredon")?) {
        (None, _) => DEFAULT_BACKENDS.iter().map(|n| named(n)).collect(),
        (Some(_), Selected::Algebra(b)) => Ok(vec![b]),
        (Some(_), Selected::Model) => Err(CliError::Usage("the bordism model only supports `verify conner-floyd`".into())),
    }
}

fn exactness(arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    backends(arg)?
        .iter()
        .map(|b| Ok(Entry::from_suite("exactness", &exactness_suite(b.as_ref(), &opts.window())?)))
        .collect()
}

fn generation(arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    let mut out = Vec::new();
    for b in backends(arg)? {
        out.push(Entry::from_suite("generation", &check_generation(b.as_ref(), &opts.window())?));
        out.push(Entry::from_suite("generation", &check_restriction_surjective(b.as_ref(), &opts.window())?));
    }
    Ok(out)
}

/// With the default backends, compare against the expected matrix; with an
/// explicit backend, pass iff the property holds.
fn additive(arg: &BackendArg) -> CliResult<Vec<Entry>> {
    let explicit = arg.backend.is_some();
    backends(arg)?
        .iter()
        .map(|b| {
            let holds = check_additive(b.as_ref())?;
            let expected = if explicit { true } else { expected_properties(&b.name()).map_or(true, |e| e.0) };
            Ok(Entry {
                suite: "additive",
                backend: b.name(),
                passed: holds == expected,
                detail: format!("additive {holds}, expected {expected}"),
                json: json!({"additive": holds, "expected": expected}),
            })
        })
        .collect()
}

fn invertible(arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    let explicit = arg.backend.is_some();
    backends(arg)?
        .iter()
        .map(|b| {
            let r = check_invertible(b.as_ref(), &opts.window())?;
            let expected = if explicit { true } else { expected_properties(&b.name()).map_or(true, |e| e.1) };
            let mut entry = Entry::from_suite("invertible", &r);
            entry.passed = r.passed == expected;
            entry.detail = format!("invertible {}, expected {expected}; {}", r.passed, entry.detail);
            Ok(entry)
        })
        .collect()
}

fn beta_identities(ctx: &Context, arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    backends(arg)?
        .into_iter()
        .map(|b| {
            let trunc = opts.trunc.unwrap_or(if b.name() == "psi-universal" { 5 } else { 6 });
            let r = ctx.expander(b).verify_beta_identities(trunc)?;
            Ok(Entry {
                suite: "beta-identities",
                backend: r.backend.clone(),
                passed: r.passed(),
                detail: format!(
                    "trunc {trunc}: β0 = t/a {}, identity i {}, identity ii {}",
                    r.beta0_is_t_over_a, r.identity_i, r.identity_ii
                ),
                json: serde_json::to_value(&r).unwrap_or(Value::Null),
            })
        })
        .collect()
}

fn two_routes(ctx: &Context, arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    let top = opts.trunc.unwrap_or(4);
    backends(arg)?
        .into_iter()
        .map(|b| {
            let r = two_route_suite(&ctx.expander(b), &opts.window(), opts.samples, top, opts.seed)?;
            Ok(Entry::from_suite("dk-two-routes", &r))
        })
        .collect()
}

fn detection(ctx: &Context, arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    let chosen = match arg.backend {
        None => vec![named("bredon")?],
        Some(_) => backends(arg)?,
    };
    chosen
        .into_iter()
        .map(|b| {
            let r = detection_suite(&ctx.expander(b), &opts.window(), opts.samples, 32, opts.seed)?;
            Ok(Entry::from_suite("detection", &r))
        })
        .collect()
}

fn conner_floyd(ctx: &Context, arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    let model_trunc = || -> CliResult<u32> {
        u32::try_from(opts.trunc.unwrap_or(8)).map_err(|_| CliError::Usage("--trunc must be nonnegative".into()))
    };
    let mut reports = Vec::new();
    let with_model = match (&arg.backend, resolve(arg, "bredon")?) {
        (None, _) => {
            for name in ["bredon", "borel"] {
                reports.push(conner_floyd_cokernel(&ctx.localizations(named(name)?), opts.degrees(-4..=5))?);
            }
            true
        }
        (Some(_), Selected::Model) => true,
        (Some(_), Selected::Algebra(b)) => {
            reports.push(conner_floyd_cokernel(&ctx.localizations(b), opts.degrees(-4..=5))?);
            false
        }
    };
    if with_model {
        let degrees = opts.degrees(0..=5);
        let degrees = (*degrees.start()).max(0)..=*degrees.end();
        reports.push(conner_floyd_model(&BordismModel::build(model_trunc()?)?, degrees)?);
    }
    Ok(reports
        .iter()
        .map(|r| {
            let bad: Vec<i64> = r.rows.iter().filter(|row| !row.ok()).map(|row| row.degree).collect();
            Entry {
                suite: "conner-floyd",
                backend: r.backend.clone(),
                passed: r.passed(),
                detail: if bad.is_empty() {
                    format!("{} degrees", r.rows.len())
                } else {
                    format!("fails in degrees {bad:?}")
                },
                json: r.to_json(),
            }
        })
        .collect())
}

fn firsching(ctx: &Context, arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    let mut targets: Vec<(Backend, usize)> = Vec::new();
    match arg.backend {
        None => {
            targets.extend((1..=opts.max_rank).map(|r| named("bredon").map(|b| (b, r))).collect::<CliResult<Vec<_>>>()?);
            targets.push((named("borel")?, 1));
        }
        Some(_) => {
            for b in backends(arg)? {
                targets.extend((1..=opts.max_rank).map(|r| (b.clone(), r)));
            }
        }
    }
    let degrees = opts.degrees(-3..=3);
    let mut out = Vec::new();
    for (b, rank) in targets {
        let locs = ctx.localizations(b);
        let group = Group::new(rank);
        let hypothesis = firsching_hypothesis(&locs, group, degrees.clone())?;
        let r = firsching_check(&locs, group, degrees.clone())?;
        out.push(Entry {
            suite: "firsching",
            backend: format!("{} rank {rank}", r.backend),
            passed: hypothesis && r.passed(),
            detail: format!("regularity {hypothesis}, {} degrees", r.rows.len()),
            json: r.to_json(),
        });
    }
    Ok(out)
}

fn entries(ctx: &Context, suite: Suite, arg: &BackendArg, opts: &Options) -> CliResult<Vec<Entry>> {
    match suite {
        Suite::Exactness => exactness(arg, opts),
        Suite::Generation => generation(arg, opts),
        Suite::Additive => additive(arg),
        Suite::Invertible => invertible(arg, opts),
        Suite::BetaIdentities => beta_identities(ctx, arg, opts),
        Suite::DkTwoRoutes => two_routes(ctx, arg, opts),
        Suite::Detection => detection(ctx, arg, opts),
        Suite::ConnerFloyd => conner_floyd(ctx, arg, opts),
        Suite::Firsching => firsching(ctx, arg, opts),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Exactness,
                Suite::Additive,
                Suite::Invertible,
                Suite::BetaIdentities,
                Suite::DkTwoRoutes,
                Suite::ConnerFloyd,
                Suite::Firsching,
            ] {
                out.extend(entries(ctx, s, arg, opts)?);
            }
            Ok(out)
        }
    }
}

pub fn run(ctx: &Context, suite: Suite, arg: &BackendArg, opts: &Options) -> CliResult<Report> {
    if opts.max_rank == 0 || opts.max_rank > 6 {
        return Err(CliError::Usage(format!("--max-rank {} must be between 1 and 6", opts.max_rank)));
    }
    if suite != Suite::ConnerFloyd && matches!(resolve(arg, "bredon")?, Selected::Model) && arg.backend.is_some() {
        return Err(CliError::Usage("the bordism model only supports `verify conner-floyd`".into()));
    }
    let list = entries(ctx, suite, arg, opts)?;
    let passed = list.iter().all(|e| e.passed);
    let mut table = String::new();
    for e in &list {
        let verdict = if e.passed { "PASS" } else { "FAIL" };
        table.push_str(&format!("{verdict} {} [{}]: {}\n", e.suite, e.backend, e.detail));
    }
    table.push_str(&format!("{} of {} passed\n", list.iter().filter(|e| e.passed).count(), list.len()));
    let json = json!({
        "passed": passed,
        "results": list.iter().map(|e| json!({
            "suite": e.suite, "backend": e.backend, "passed": e.passed, "detail": e.detail, "report": e.json,
        })).collect::<Vec<_>>(),
    });
    let mut report = Report::new(json, table);
    report.passed = passed;
    Ok(report)
}
