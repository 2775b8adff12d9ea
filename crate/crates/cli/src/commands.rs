//! The non-verification subcommands.

use std::fmt::Write as _;

use serde_json::{json, Value};

use ro2alg::bordism::{alexander_basis, BordismModel, GnCohomology, GnElement};
use ro2alg::fgl::{law_to_json, universal_2torsion, TwoTorsionFGL};
use ro2alg::group::{circuits as all_circuits, enumerate_characters, gradings_in_window};
use ro2alg::ring::{self, GradedRing};
use ro2alg::{Character, Group, RepGrading};

use crate::backends::{resolve, Context, DimsCache, Selected};
use crate::{BackendArg, CliError, CliResult, Report, WindowArgs};

fn group_of(window: &WindowArgs) -> CliResult<Group> {
    if window.group_rank > 6 {
        return Err(CliError::Usage(format!("--group-rank {} is above 6", window.group_rank)));
    }
    Ok(Group::new(window.group_rank))
}

/// Degrees of the window that the model can reconstruct.
fn model_degrees(window: &WindowArgs) -> std::ops::RangeInclusive<i64> {
    (*window.k.start()).max(0)..=*window.k.end()
}

pub fn dims(ctx: &Context, arg: &BackendArg, window: &WindowArgs, trunc: u32) -> CliResult<Report> {
    let _ = ctx;
    match resolve(arg, "bredon")? {
        Selected::Model => model_dims(window, trunc),
        Selected::Algebra(b) => {
            let group = group_of(window)?;
            let mut cache = DimsCache::open(&b.name());
            let gradings = gradings_in_window(group, window.k.clone(), window.v_size.clone());
            let mut rows = Vec::new();
            for m in &gradings {
                rows.push((m.clone(), cache.dim(b.as_ref(), m)?));
            }
            cache.save()?;
            let json = json!({
                "backend": b.name(),
                "group_rank": group.rank,
                "rows": rows.iter().map(|(m, d)| json!({"grading": m.to_json(), "label": m.to_string(), "dim": d})).collect::<Vec<_>>(),
            });
            let table = if group.rank == 1 { rank_one_table(window, &rows) } else { list_table(&rows) };
            Ok(Report::new(json, table))
        }
    }
}

/// Rows `k`, columns `m` for the gradings `k - mσ`.
fn rank_one_table(window: &WindowArgs, rows: &[(RepGrading, usize)]) -> String {
    let mut out = String::from("k\\m");
    for m in window.v_size.clone() {
        let _ = write!(out, " {m:>3}");
    }
    out.push('\n');
    for k in window.k.clone() {
        let _ = write!(out, "{k:>3}");
        for m in window.v_size.clone() {
            let d = rows.iter().find(|(g, _)| g.k == k && g.size() == m).map_or(0, |(_, d)| *d);
            let _ = write!(out, " {d:>3}");
        }
        out.push('\n');
    }
    out
}

fn list_table(rows: &[(RepGrading, usize)]) -> String {
    let width = rows.iter().map(|(m, _)| m.to_string().len()).max().unwrap_or(0);
    rows.iter().map(|(m, d)| format!("{:<width$}  {d}\n", m.to_string())).collect()
}

fn model_dims(window: &WindowArgs, trunc: u32) -> CliResult<Report> {
    let model = BordismModel::build(trunc)?;
    let mut rows = Vec::new();
    let mut table = String::from("  k  N_k  PhiC_k  N(C)_k\n");
    for k in model_degrees(window) {
        let n = model.base().dim(k)?;
        let phi = model.phi().dim(k)?;
        let nc = match model.reconstruct_nc(k) {
            Ok(b) => Some(b.len()),
            Err(e) if e.is_window_exhaustion() => None,
            Err(e) => return Err(e.into()),
        };
        let shown = nc.map_or_else(|| "-".to_string(), |d| d.to_string());
        let _ = writeln!(table, "{k:>3}  {n:>3}  {phi:>6}  {shown:>6}");
        rows.push(json!({"degree": k, "N": n, "PhiC": phi, "NC": nc}));
    }
    Ok(Report::new(json!({"backend": "bordism-model", "trunc": trunc, "rows": rows}), table))
}

pub fn basis(ctx: &Context, arg: &BackendArg, window: &WindowArgs, trunc: u32) -> CliResult<Report> {
    let _ = ctx;
    match resolve(arg, "bredon")? {
        Selected::Model => {
            let model = BordismModel::build(trunc)?;
            let mut rows = Vec::new();
            let mut table = String::new();
            for k in model_degrees(window) {
                let phi = model.phi().basis_labels(k)?;
                let nc: Option<Vec<String>> = match model.reconstruct_nc(k) {
                    Ok(b) => Some(b.iter().map(|y| model.render(y)).collect()),
                    Err(e) if e.is_window_exhaustion() => None,
                    Err(e) => return Err(e.into()),
                };
                let _ = writeln!(table, "degree {k}");
                let _ = writeln!(table, "  PhiC: {}", phi.join(", "));
                if let Some(nc) = &nc {
                    let _ = writeln!(table, "  N(C): {}", nc.join(", "));
                }
                rows.push(json!({"degree": k, "PhiC": phi, "NC": nc}));
            }
            Ok(Report::new(json!({"backend": "bordism-model", "rows": rows}), table))
        }
        Selected::Algebra(b) => {
            let group = group_of(window)?;
            let mut rows = Vec::new();
            let mut table = String::new();
            for m in gradings_in_window(group, window.k.clone(), window.v_size.clone()) {
                let labels = b.basis_labels(&m)?;
                if labels.is_empty() {
                    continue;
                }
                let _ = writeln!(table, "{m}: {}", labels.join(", "));
                rows.push(json!({"grading": m.to_json(), "label": m.to_string(), "basis": labels}));
            }
            Ok(Report::new(json!({"backend": b.name(), "group_rank": group.rank, "rows": rows}), table))
        }
    }
}

pub fn circuits(rank: usize) -> CliResult<Report> {
    if !(1..=6).contains(&rank) {
        return Err(CliError::Usage(format!("--rank {rank} must be between 1 and 6")));
    }
    let group = Group::new(rank);
    let list = all_circuits(&enumerate_characters(group))?;
    let bredon = ro2alg::backend::BredonBackend::default();
    let p = bredon.presentation(group)?;
    let names = p.algebra.generator_names();
    let mut rows = Vec::new();
    let mut table = String::new();
    for (circuit, relation) in list.iter().zip(p.algebra.relations()) {
        let chars: Vec<String> = circuit.iter().map(Character::to_bitstring).collect();
        let rel = relation.render(&names);
        let _ = writeln!(table, "{{{}}}  r = {rel}", chars.join(", "));
        rows.push(json!({"circuit": chars, "relation": rel}));
    }
    let _ = writeln!(table, "{} circuits", list.len());
    Ok(Report::new(json!({"rank": rank, "circuits": rows}), table))
}

fn fgl_table(f: &TwoTorsionFGL) -> CliResult<String> {
    let mut table = String::new();
    for (i, j) in f.nonzero_coefficients() {
        if i <= j {
            let c = ring::render(f.ring().as_ref(), f.coefficient(i, j)?);
            let _ = writeln!(table, "c({i},{j}) = {c}");
        }
    }
    let _ = writeln!(table, "trunc {}, exact {}, additive {}", f.trunc(), f.is_exact(), f.is_additive());
    Ok(table)
}

pub fn fgl(ctx: &Context, arg: &BackendArg, universal: bool, trunc: u32) -> CliResult<Report> {
    let selected = if universal { Selected::Model } else { resolve(arg, "bredon")? };
    match selected {
        Selected::Model => {
            let law = universal_2torsion(trunc)?;
            let dims = law.dims(i64::from(trunc) - 1)?;
            let mut table = format!("universal 2-torsion law, dims {dims:?}\n");
            table.push_str(&fgl_table(&law.fgl)?);
            Ok(Report::new(law_to_json("universal", &law.ring, &law.fgl), table))
        }
        Selected::Algebra(b) => {
            let f = ctx.expander(b.clone()).fgl_of_algebra(trunc)?;
            let json = json!({"backend": b.name(), "fgl": f.to_json(), "additive": f.is_additive(), "exact": f.is_exact()});
            Ok(Report::new(json, fgl_table(&f)?))
        }
    }
}

pub fn betas(ctx: &Context, arg: &BackendArg, max_n: usize, trunc: u32) -> CliResult<Report> {
    let mut rows = Vec::new();
    let mut table = String::new();
    match resolve(arg, "bredon")? {
        Selected::Model => {
            let model = BordismModel::build(trunc)?;
            for n in 0..=max_n {
                let d1 = model.d1_beta(n)?.render();
                let _ = writeln!(table, "d_1(β{n}) = {d1}");
                rows.push(json!({"n": n, "d1": d1}));
            }
            for (i, z) in model.zeta_classes(max_n.min(model.num_betas() - 1))?.iter().enumerate() {
                let _ = writeln!(table, "ζ{} = {}  effective {}", i + 1, model.render(z), model.is_effective(z)?);
            }
            Ok(Report::new(json!({"backend": "bordism-model", "betas": rows}), table))
        }
        Selected::Algebra(b) => {
            let x = ctx.expander(b.clone());
            let phi = x.localizations().phi(Group::new(1));
            let n_max = i64::try_from(max_n).map_err(|_| CliError::Usage("--max-n too large".into()))?;
            for (n, beta) in x.betas(n_max)?.iter().enumerate() {
                let r = ring::render(phi.as_ref(), beta);
                let _ = writeln!(table, "β{n} = {r}");
                rows.push(json!({"n": n, "beta": r}));
            }
            Ok(Report::new(json!({"backend": b.name(), "betas": rows}), table))
        }
    }
}

pub fn reconstruct_nc(max_degree: i64, trunc: Option<u32>) -> CliResult<Report> {
    let needed = u32::try_from(max_degree + ro2alg::bordism::SAFETY_MARGIN)
        .map_err(|_| CliError::Usage("--max-degree must be nonnegative".into()))?;
    let model = BordismModel::build(trunc.unwrap_or(needed.max(8)))?;
    let mut dims = Vec::new();
    let mut rows = Vec::new();
    let mut table = String::new();
    for k in 0..=max_degree {
        let basis = model.reconstruct_nc(k)?;
        let rendered: Vec<String> = basis.iter().map(|y| model.render(y)).collect();
        let _ = writeln!(table, "N(C)_{k}: dim {}  {}", basis.len(), rendered.join(", "));
        dims.push(basis.len());
        rows.push(json!({"degree": k, "dim": basis.len(), "basis": rendered}));
    }
    let predicted = alexander_basis(model.base().as_ref(), max_degree)?.predicted;
    let agree = predicted == dims;
    let _ = writeln!(
        table,
        "Alexander cross-check: predicted {predicted:?}, reconstructed {dims:?}: {}",
        if agree { "agree" } else { "DISAGREE" }
    );
    let mut report = Report::new(
        json!({"trunc": model.trunc(), "rows": rows, "dims": dims, "alexander": predicted, "agree": agree}),
        table,
    );
    report.passed = agree;
    Ok(report)
}

pub fn alexander(max_degree: i64) -> CliResult<Report> {
    let trunc = u32::try_from(max_degree + 1)
        .map_err(|_| CliError::Usage("--max-degree must be nonnegative".into()))?
        .max(2);
    let law = universal_2torsion(trunc)?;
    let basis = alexander_basis(law.ring.as_ref(), max_degree)?;
    let mut table = String::new();
    for s in &basis.symbols {
        let _ = writeln!(table, "{:>3}  {s}", s.degree());
    }
    let _ = writeln!(table, "predicted dim N(C)_k: {:?}", basis.predicted);
    let json = json!({
        "basis": basis.symbols.iter().map(|s| json!({"symbol": s.to_string(), "degree": s.degree()})).collect::<Vec<_>>(),
        "predicted": basis.predicted,
    });
    Ok(Report::new(json, table))
}

fn parse_gn_monomial(n: usize, s: &str) -> CliResult<Vec<u32>> {
    let mut e = vec![0u32; n];
    if s.trim() == "1" {
        return Ok(e);
    }
    for factor in s.split('*') {
        let (name, exp) = factor.trim().split_once('^').unwrap_or((factor.trim(), "1"));
        let i: usize = name
            .strip_prefix('p')
            .and_then(|i| i.parse().ok())
            .filter(|i| (1..=n).contains(i))
            .ok_or_else(|| CliError::Usage(format!("unknown class {name:?} in G_{n}")))?;
        let exp: u32 = exp.parse().map_err(|_| CliError::Usage(format!("bad exponent in {factor:?}")))?;
        e[i - 1] += exp;
    }
    Ok(e)
}

pub fn gn_cohomology(n: usize, product: Option<&[String]>) -> CliResult<Report> {
    let g = GnCohomology::new(n)?;
    let dims = g.dims();
    let top = g.power(&g.generator(n), u32::try_from(n).unwrap_or(u32::MAX));
    let confluent = n > 6 || g.is_confluent();
    let mut table = format!("H^*(G_{n}; F2) dims {dims:?}\n");
    let mut json = json!({"n": n, "dims": dims, "top_power": g.render(&top), "confluent": confluent});
    for k in 0..=u32::try_from(n).unwrap_or(0) {
        let b: Vec<String> = g.basis(k).into_iter().map(|m| g.render(&GnElement::from([m]))).collect();
        let _ = writeln!(table, "  degree {k}: {}", b.join(", "));
    }
    let _ = writeln!(table, "p{n}^{n} = {}", g.render(&top));
    if n <= 6 {
        let _ = writeln!(table, "rewriting confluent: {confluent}");
    }
    if let Some([x, y]) = product {
        let e: Vec<u32> = parse_gn_monomial(n, x)?
            .iter()
            .zip(parse_gn_monomial(n, y)?)
            .map(|(a, b)| a + b)
            .collect();
        let nf = g.reduce(&e).map_or_else(GnElement::new, |m| GnElement::from([m]));
        let _ = writeln!(table, "({x}) * ({y}) = {}", g.render(&nf));
        json["product"] = Value::String(g.render(&nf));
    }
    let mut report = Report::new(json, table);
    report.passed = confluent;
    Ok(report)
}
