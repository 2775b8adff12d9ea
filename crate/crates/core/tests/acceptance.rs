//! The eleven acceptance criteria.  Each prints one PASS/FAIL line; the test
//! fails if any criterion fails or the whole run exceeds 60 seconds.

use std::sync::Arc;
use std::time::{Duration, Instant};

use ro2alg::backend::{Backend, BredonBackend};
use ro2alg::bordism::{
    alexander_basis, conner_floyd_cokernel, conner_floyd_model, firsching_check, firsching_hypothesis,
    BordismModel, GnCohomology, GnElement,
};
use ro2alg::checks::{
    check_additive, check_generation, check_invertible, check_restriction_surjective, check_t_localized_iso,
    detection_suite, exactness_suite, two_route_suite, BredonMorphism, SuiteReport, Window,
};
use ro2alg::expansions::Expander;
use ro2alg::fgl::{borel_backend, partition_count, universal_2torsion};
use ro2alg::localization::Localizations;
use ro2alg::{Group, Result};

type Outcome = Result<(bool, String)>;

fn bredon() -> Backend {
    Arc::new(BredonBackend::default())
}

fn borel() -> Backend {
    Arc::new(borel_backend())
}

fn universal() -> Backend {
    Arc::new(universal_2torsion(8).expect("universal law").backend().expect("exact law"))
}

fn suites(reports: &[SuiteReport]) -> (bool, String) {
    let ok = reports.iter().all(|r| r.passed);
    let detail = reports
        .iter()
        .map(|r| match &r.counterexample {
            None => format!("{} {}: {} ok", r.backend, r.name, r.checked),
            Some(c) => format!("{} {}: {c}", r.backend, r.name),
        })
        .collect::<Vec<_>>()
        .join("; ");
    (ok, detail)
}

fn exactness() -> Outcome {
    let rank3 = Window { max_rank: 3, ..Window::default() };
    let reports = vec![
        exactness_suite(bredon().as_ref(), &rank3)?,
        exactness_suite(borel().as_ref(), &Window::default())?,
        exactness_suite(universal().as_ref(), &Window::default())?,
    ];
    Ok(suites(&reports))
}

fn generation() -> Outcome {
    let w = Window { max_rank: 3, ..Window::default() };
    let mut reports = Vec::new();
    for b in [bredon(), borel()] {
        reports.push(check_generation(b.as_ref(), &w)?);
        reports.push(check_restriction_surjective(b.as_ref(), &w)?);
    }
    Ok(suites(&reports))
}

fn additivity_matrix() -> Outcome {
    let expected = [(bredon(), true, false), (borel(), true, true), (universal(), false, true)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (b, additive, invertible) in expected {
        let a = check_additive(b.as_ref())?;
        let i = check_invertible(b.as_ref(), &Window::default())?.passed;
        ok &= a == additive && i == invertible;
        detail.push(format!("{}: additive {a}, invertible {i}", b.name()));
    }
    Ok((ok, detail.join("; ")))
}

fn universal_morphism() -> Outcome {
    let target = borel();
    let morphism = BredonMorphism::new(target.clone(), 3)?;
    let report = check_t_localized_iso(
        &morphism,
        &Localizations::new(bredon()),
        &Localizations::new(target),
        3,
        -4..=2,
    )?;
    Ok(suites(&[report]))
}

fn fgl() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for b in [bredon(), borel()] {
        let f = Expander::new(b.clone()).fgl_of_algebra(6)?;
        ok &= f.is_additive() && f.is_exact();
        detail.push(format!("{} additive {}", b.name(), f.is_additive()));
    }
    let dims = universal_2torsion(8)?.dims(7)?;
    let oracle: Vec<usize> = (0..=7).map(partition_count).collect();
    ok &= dims == oracle && dims == [1, 0, 1, 0, 2, 1, 3, 1];
    detail.push(format!("universal dims {dims:?}"));
    Ok((ok, detail.join("; ")))
}

fn beta_identities() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (b, trunc) in [(bredon(), 6), (borel(), 6), (universal(), 5)] {
        let r = Expander::new(b).verify_beta_identities(trunc)?;
        ok &= r.passed();
        detail.push(format!("{} trunc {trunc}: {}", r.backend, if r.passed() { "ok" } else { "failed" }));
    }
    Ok((ok, detail.join("; ")))
}

fn two_routes() -> Outcome {
    let reports = [bredon(), borel(), universal()]
        .into_iter()
        .map(|b| two_route_suite(&Expander::new(b), &Window::default(), 20, 4, 11))
        .collect::<Result<Vec<_>>>()?;
    let enough = reports.iter().all(|r| r.checked >= 20);
    let (ok, detail) = suites(&reports);
    Ok((ok && enough, detail))
}

fn detection() -> Outcome {
    let r = detection_suite(&Expander::new(bredon()), &Window::default(), 30, 32, 5)?;
    Ok(suites(&[r]))
}

fn bordism() -> Outcome {
    let start = Instant::now();
    let model = BordismModel::build(8)?;
    let dims = (0..=6).map(|k| Ok(model.reconstruct_nc(k)?.len())).collect::<Result<Vec<_>>>()?;
    let predicted = alexander_basis(model.base().as_ref(), 6)?.predicted;
    let mut ok = dims == predicted && dims[..3] == [1, 0, 2];
    for z in model.zeta_classes(4)? {
        ok &= model.is_effective(&z)?;
    }
    for n in 0..=4 {
        ok &= !model.is_effective(&model.beta(n)?)?;
    }
    let elapsed = start.elapsed();
    ok &= elapsed <= Duration::from_secs(10);
    Ok((ok, format!("reconstructed {dims:?}, Alexander {predicted:?}, {:.2}s", elapsed.as_secs_f64())))
}

fn classical() -> Outcome {
    let bredon_locs = Localizations::new(bredon());
    let borel_locs = Localizations::new(borel());
    let cf = [
        conner_floyd_cokernel(&bredon_locs, -4..=5)?,
        conner_floyd_cokernel(&borel_locs, -4..=5)?,
        conner_floyd_model(&BordismModel::build(8)?, 0..=5)?,
    ];
    let mut ok = cf.iter().all(|r| r.passed());
    let mut detail = vec![format!("Conner–Floyd {}", if ok { "ok" } else { "failed" })];
    for (locs, rank) in [(&bredon_locs, 1), (&bredon_locs, 2), (&borel_locs, 1)] {
        let group = Group::new(rank);
        let hypothesis = firsching_hypothesis(locs, group, -3..=3)?;
        let r = firsching_check(locs, group, -3..=3)?;
        ok &= hypothesis && r.passed();
        detail.push(format!("Firsching {} rank {rank}: {}", r.backend, r.passed()));
    }
    Ok((ok, detail.join("; ")))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gn() -> Outcome {
    let mut ok = true;
    for n in 1..=6 {
        let g = GnCohomology::new(n)?;
        ok &= g.dims() == (0..=n).map(|k| binomial(n, k)).collect::<Vec<_>>();
        ok &= g.power(&g.generator(n), n as u32) == GnElement::from([(1u64 << n) - 1]);
        ok &= g.is_confluent();
    }
    Ok((ok, "n = 1..6".into()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("exactness", exactness),
        ("generation and surjectivity", generation),
        ("additivity and invertibility", additivity_matrix),
        ("universal morphism", universal_morphism),
        ("formal group laws", fgl),
        ("beta identities", beta_identities),
        ("two-route d_K", two_routes),
        ("detection", detection),
        ("bordism reconstruction", bordism),
        ("Conner–Floyd and Firsching", classical),
        ("G_n cohomology", gn),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} ({:.2}s): {detail}", i + 1, t.elapsed().as_secs_f64());
        if !ok {
            failures.push(i + 1);
        }
    }
    let total = start.elapsed();
    println!("total {:.2}s", total.as_secs_f64());
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
    assert!(total < Duration::from_secs(60), "acceptance run took {total:?}");
}
