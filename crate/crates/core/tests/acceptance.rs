//! Acceptance suite: prints one pass/fail line per criterion and exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tamegamma::constructions::{build_better, build_cusp, build_g2, build_noncusp, build_ramakrishnan, build_so2n, build_so6};
use tamegamma::{selftest, Check, FamilyBounds, Group, Parity, RamBeta, Report, Scene, Q};

type Outcome = std::result::Result<String, String>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(String::new())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn suite(c: Check) -> Outcome {
    if c.passed {
        Ok(c.detail)
    } else {
        Err(c.detail)
    }
}

fn scenario(r: tamegamma::Result<Report>) -> Outcome {
    let r = r.map_err(err)?;
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    ensure(r.passed, format!("failed checks: {failed:?}"))?;
    let extra = r.comparisons.iter().map(|g| format!("{} twists", g.tested)).collect::<Vec<_>>().join(", ");
    Ok(format!("{} checks; {extra}", r.checks.len()))
}

fn scenarios(items: Vec<tamegamma::Result<Report>>) -> Outcome {
    let mut out = Vec::new();
    for r in items {
        out.push(scenario(r)?);
    }
    Ok(out.join(" | "))
}

/// The perturbed input must fail and must fail exactly the named check among others.
fn flips(r: tamegamma::Result<Report>, name: &str) -> std::result::Result<String, String> {
    let r = r.map_err(err)?;
    let c = r.check(name).ok_or_else(|| format!("{}: no check named {name:?}", r.scenario))?;
    ensure(!c.passed && !r.passed, format!("{}: {name:?} still passes", r.scenario))?;
    Ok(format!("{}: {name}", r.scenario))
}

fn negative_controls() -> Outcome {
    let b = FamilyBounds::default();
    let s5 = Scene::new(5).map_err(err)?;
    let s7 = Scene::new(7).map_err(err)?;
    let s13 = Scene::new(13).map_err(err)?;
    let out = [
        flips(build_noncusp(&s5, 3, &b, true), "gamma-equivalent to level 2")?,
        flips(build_cusp(&s5, Group::Sp(4), &FamilyBounds::new(1, q(2), 24), true), "gamma-equivalent to level 3")?,
        flips(build_better(&s13, 4, Parity::Orthogonal, &FamilyBounds::new(1, q(1), 4), true, false), "gamma-equivalent to level 2")?,
        flips(build_so6(&s7, (1, 3), true), "∧³± weight multisets equal over L")?,
        flips(build_so2n(&s7, 4, 9, true), "not SO-conjugate")?,
        flips(build_g2(&s5, &FamilyBounds::new(2, q(1), 4), true), "PGL_3 determinant condition")?,
        flips(build_ramakrishnan(&s13, RamBeta::Deep, &b, true), "∧¹ gamma equal for character twists")?,
    ];
    Ok(out.join("; "))
}

fn main() -> ExitCode {
    let b = FamilyBounds::default();
    let better_bounds = FamilyBounds::new(2, q(1), 4);
    type Job = Box<dyn FnOnce() -> Outcome>;
    let criteria: Vec<(u32, &str, u64, Job)> = vec![
        (1, "exact arithmetic", 5, Box::new(|| suite(selftest::exact(1)))),
        (2, "field arithmetic", 30, Box::new(|| suite(selftest::fields(2)))),
        (3, "local factors", 60, Box::new(|| suite(selftest::factors(3)))),
        (4, "gamma verdict vs character criterion", 300, Box::new(|| suite(selftest::gamma_criterion(4)))),
        (5, "t_β bounds", 60, Box::new(|| suite(selftest::t_beta(5)))),
        (6, "noncusp (N, p) = (3, 5)", 60, Box::new(move || scenario(build_noncusp(&Scene::new(5).map_err(err)?, 3, &b, false)))),
        (
            7,
            "cusp Sp_8, p = 5",
            300,
            Box::new(|| {
                let s = Scene::new(5).map_err(err)?;
                let fam = FamilyBounds::default();
                scenarios(vec![
                    build_cusp(&s, Group::Sp(4), &fam, false),
                    build_cusp(&s, Group::Sp(3), &fam, false),
                    build_cusp(&s, Group::SOEven(3), &fam, false),
                    build_cusp(&s, Group::SOOdd(3), &fam, false),
                ])
            }),
        ),
        (8, "better (N, p) = (4, 13)", 300, Box::new(move || scenario(build_better(&Scene::new(13).map_err(err)?, 4, Parity::Orthogonal, &better_bounds, false, false)))),
        (9, "SO_6 at p = 7", 60, Box::new(|| scenario(build_so6(&Scene::new(7).map_err(err)?, (1, 3), false)))),
        (10, "SO_8 padding (N, M, p) = (4, 9, 7)", 30, Box::new(|| scenario(build_so2n(&Scene::new(7).map_err(err)?, 4, 9, false)))),
        (
            11,
            "G_2 at p = 5 (non-Galois) and p = 7 (Galois)",
            300,
            Box::new(|| {
                let fam = FamilyBounds::default();
                scenarios(vec![build_g2(&Scene::new(5).map_err(err)?, &fam, false), build_g2(&Scene::new(7).map_err(err)?, &fam, false)])
            }),
        ),
        (12, "quartic exterior powers at p = 13", 300, Box::new(|| scenario(build_ramakrishnan(&Scene::new(13).map_err(err)?, RamBeta::Deep, &FamilyBounds::default(), false)))),
        (13, "negative controls", 600, Box::new(negative_controls)),
    ];
    let mut failures = 0;
    for (id, title, limit, job) in criteria {
        let t = Instant::now();
        let res = job();
        let dt = t.elapsed();
        let res = match res {
            Ok(s) if dt > Duration::from_secs(limit) => Err(format!("{s} (over the {limit} s limit)")),
            r => r,
        };
        match res {
            Ok(s) => println!("criterion {id:>2} PASS  {title} [{:.1}s] {s}", dt.as_secs_f64()),
            Err(s) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {title} [{:.1}s] {s}", dt.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
