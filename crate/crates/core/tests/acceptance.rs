//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lamcat::lambda_theory::semi_closed_obstruction;
use lamcat::report::{CheckRecord, SuiteReport, Verdict};
use lamcat::suite::{run_suite, SuiteConfig, SuiteName};

type Outcome = Result<String, String>;

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn suite(name: SuiteName, cfg: SuiteConfig) -> Result<(SuiteReport, Duration), String> {
    let (r, d) = timed(|| run_suite(name, &cfg));
    r.map(|r| (r, d)).map_err(|e| e.to_string())
}

fn failing(r: &SuiteReport) -> Vec<String> {
    r.records
        .iter()
        .filter(|c| c.verdict != Verdict::Equal)
        .map(|c| format!("{} {:?}", c.id, c.verdict))
        .collect()
}

fn find<'a>(r: &'a SuiteReport, id: &str) -> Result<&'a CheckRecord, String> {
    r.record(id).ok_or_else(|| format!("missing record {id}"))
}

fn within(d: Duration, limit: u64, what: &str) -> Result<(), String> {
    if d > Duration::from_secs(limit) {
        return Err(format!("{what} took {d:.2?}, limit {limit}s"));
    }
    Ok(())
}

fn all_equal(r: &SuiteReport) -> Result<(), String> {
    let bad = failing(r);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join(", "))
    }
}

fn identities() -> Outcome {
    let (r, d) = suite(SuiteName::Paper, SuiteConfig { fuel: 10_000, ..Default::default() })?;
    let items = [
        "paper.a.retraction",
        "paper.b.abstraction",
        "paper.c.fst",
        "paper.c.snd",
        "paper.d.product",
        "paper.e.roundtrip.d",
        "paper.e.roundtrip.phi",
        "paper.f.evaluation",
        "paper.g.triangle",
        "paper.h.eps_app",
        "paper.i.fixed_point",
    ];
    for id in items {
        find(&r, id)?;
    }
    if r.records.len() != items.len() {
        return Err(format!("{} records, expected {}", r.records.len(), items.len()));
    }
    all_equal(&r)?;
    let fix = find(&r, "paper.i.fixed_point")?;
    if fix.steps > 50 {
        return Err(format!("fixed point took {} steps", fix.steps));
    }
    within(d, 10, "paper suite")?;
    Ok(format!("{} items Equal in {d:.2?}", items.len()))
}

fn clone() -> Outcome {
    let cfg = SuiteConfig { exhaustive_finite: true, ..Default::default() };
    let (r, d) = suite(SuiteName::Clone, cfg)?;
    let assoc = find(&r, "clone.endo2.associativity")?;
    let n = assoc.tally.map(|t| t.equal).unwrap_or(0);
    for prefix in ["clone.lambda.", "clone.lambda[closed]."] {
        for rec in r.records.iter().filter(|c| c.id.starts_with(prefix)) {
            let t = rec.tally.ok_or("missing tally")?;
            if t.distinct > 0 || t.unknown_rate() > 0.01 || t.total() < 500 {
                return Err(format!("{}: {t:?}", rec.id));
            }
        }
    }
    let endo = r.records.iter().filter(|c| c.id.starts_with("clone.endo2."));
    for rec in endo {
        if rec.verdict != Verdict::Equal {
            return Err(format!("{} {:?}", rec.id, rec.verdict));
        }
    }
    within(d, 30, "clone suite")?;
    Ok(format!("{n} exhaustive associativity instances, sampled laws clean, {d:.2?}"))
}

fn lambda() -> Outcome {
    let (r, _) = suite(SuiteName::Lambda, SuiteConfig::default())?;
    let beta = find(&r, "lambda.lambda.interpret.beta")?;
    let t = beta.tally.ok_or("missing tally")?;
    if t.total() != 1000 || t.distinct > 0 || t.unknown_rate() > 0.05 {
        return Err(format!("interpreter: {t:?}"));
    }
    for prefix in ["lambda.map.eta.", "lambda.map.inclusion."] {
        let recs: Vec<_> = r.records.iter().filter(|c| c.id.starts_with(prefix)).collect();
        if recs.is_empty() {
            return Err(format!("no {prefix} records"));
        }
        if let Some(bad) = recs.iter().find(|c| c.verdict != Verdict::Equal) {
            return Err(format!("{} {:?}", bad.id, bad.verdict));
        }
    }
    Ok(format!("interpreter {} Equal / {} Unknown of 1000; both theory maps pass", t.equal, t.unknown))
}

fn representation() -> Outcome {
    let (r, _) = suite(SuiteName::Representation, SuiteConfig::default())?;
    let oracle = find(&r, "representation.U[closed].compose.oracle")?;
    let ot = oracle.tally.ok_or("missing tally")?;
    if oracle.verdict != Verdict::Equal || ot.total() < 200 {
        return Err(format!("composition oracle: {ot:?}"));
    }
    let rt1 = find(&r, "representation.roundtrip.d")?.tally.ok_or("missing tally")?;
    let rt2 = find(&r, "representation.roundtrip.phi")?.tally.ok_or("missing tally")?;
    if rt1.total() != 200 || rt1.distinct > 0 || rt2.total() != 500 || rt2.distinct > 0 {
        return Err(format!("round trips: {rt1:?} {rt2:?}"));
    }
    if r.summary.distinct > 0 {
        return Err(failing(&r).join(", "));
    }
    Ok(format!("oracle {} Equal; round trips {}/200 and {}/500 Equal", ot.equal, rt1.equal, rt2.equal))
}

fn karoubi() -> Outcome {
    let (r, d) = suite(SuiteName::Karoubi, SuiteConfig::default())?;
    all_equal(&r)?;
    within(d, 60, "karoubi suite")?;
    let n: usize = r.records.iter().filter_map(|c| c.tally).map(|t| t.total()).sum();
    Ok(format!("{} laws, {n} instances Equal in {d:.2?}", r.records.len()))
}

fn fundamental() -> Outcome {
    let (r, _) = suite(SuiteName::Fundamental, SuiteConfig::default())?;
    all_equal(&r)?;
    let tri = find(&r, "fundamental.triangle")?.tally.ok_or("missing tally")?;
    if tri.equal < 200 {
        return Err(format!("triangle on {} terms", tri.equal));
    }
    for id in ["fundamental.naturality.id", "fundamental.naturality.inclusion"] {
        let t = find(&r, id)?.tally.ok_or("missing tally")?;
        if t.equal != 100 {
            return Err(format!("{id}: {t:?}"));
        }
    }
    find(&r, "fundamental.map.eta.compose")?;
    Ok(format!("triangle on {} terms, naturality for two homs, η certified", tri.equal))
}

fn obstruction() -> Outcome {
    let (res, d) = timed(|| (1..=4).map(semi_closed_obstruction).collect::<Result<Vec<_>, _>>());
    let obs = res.map_err(|e| e.to_string())?;
    let two = &obs[1];
    if (two.unary, two.binary) != (Some(4), Some(16)) {
        return Err(format!("|X| = 2 gives {:?}", (two.unary, two.binary)));
    }
    for o in &obs[1..] {
        if !o.impossible {
            return Err(format!("|X| = {} not reported impossible", o.carrier));
        }
    }
    within(d, 1, "obstruction")?;
    Ok(format!("(4, 16) at |X| = 2, impossible for 2..=4, {d:.2?}"))
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig { seed: 42, ..Default::default() };
    let a = run_suite(SuiteName::All, &cfg).map_err(|e| e.to_string())?.to_json();
    let b = run_suite(SuiteName::All, &cfg).map_err(|e| e.to_string())?.to_json();
    if a != b {
        return Err("reports differ".into());
    }
    Ok(format!("{} bytes, identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 identity checklist", identities),
        ("2 clone laws", clone),
        ("3 lambda theory", lambda),
        ("4 representation", representation),
        ("5 karoubi", karoubi),
        ("6 fundamental", fundamental),
        ("7 obstruction", obstruction),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
