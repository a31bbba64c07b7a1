//! Acceptance criteria, one line each: `[PASS]` or `[FAIL]`, the measured
//! runtime and its limit. Exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gpin_core::scalars::Field;
use gpin_core::suite::{parse_report, run_suite, Status, SuiteConfig, SuiteReport, SUITES};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

/// Runs `body`, failing it if it errors or exceeds `limit`.
fn criterion(number: u32, name: &str, limit: Duration, body: impl FnOnce() -> Result<Outcome, String>) -> bool {
    let start = Instant::now();
    let outcome = body().unwrap_or_else(fail);
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let ok = outcome.ok && in_time;
    let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs());
    let late = if in_time { "" } else { ", over the time limit" };
    println!(
        "[{}] {number:>2}. {name}: {} ({timing}{late})",
        if ok { "PASS" } else { "FAIL" },
        outcome.detail
    );
    ok
}

fn run(id: &str, config: &SuiteConfig) -> Result<SuiteReport, String> {
    run_suite(id, config).map_err(|e| format!("{id}: {e}"))
}

/// Every named check is present, ran at least `min_cases` times and never failed.
fn require(report: &SuiteReport, checks: &[&str], min_cases: u64) -> Result<(), String> {
    for name in checks {
        let tally = report.check(name).ok_or_else(|| format!("{}: check '{name}' missing", report.suite_id))?;
        if tally.cases < min_cases || tally.failures > 0 {
            return Err(format!("{}: '{name}' {} cases, {} failures", report.suite_id, tally.cases, tally.failures));
        }
    }
    Ok(())
}

fn clean(report: &SuiteReport) -> Result<(), String> {
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!(
            "{}: {} failures, first '{}' on {}: expected {}, got {}",
            report.suite_id,
            report.failures.len(),
            f.check,
            f.case,
            f.expected,
            f.got
        )),
    }
}

fn gpin(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gpin")).args(args).output().map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("terminated by a signal")?;
    Ok((code, String::from_utf8(out.stdout).map_err(|e| e.to_string())?))
}

fn clifford_axioms() -> Result<Outcome, String> {
    let report = run("clifford-axioms", &SuiteConfig::default())?;
    clean(&report)?;
    let spaces = report.config.spaces.len() as u64;
    require(&report, &["associativity", "blade count is 2^n", "even part has half the blades"], 1)?;
    require(&report, &["associativity"], 200 * spaces)?;
    Ok(pass(format!("{spaces} spaces over Q and F3, n = 1..5, 200 triples each")))
}

fn involution_laws() -> Result<Outcome, String> {
    let report = run("clifford-axioms", &SuiteConfig { seed: 1, ..SuiteConfig::default() })?;
    clean(&report)?;
    let spaces = report.config.spaces.len() as u64;
    let laws = [
        "alpha^2 = id",
        "reversal^2 = id",
        "bar^2 = id",
        "(ab)* = b* a*",
        "bar(ab) = bar(b) bar(a)",
        "bar = alpha o reversal",
    ];
    require(&report, &laws, 100 * spaces)?;
    Ok(pass(format!("{} laws on 100 pairs in each of {spaces} spaces", laws.len())))
}

fn zeta() -> Result<Outcome, String> {
    let report = run("zeta", &SuiteConfig::default())?;
    clean(&report)?;
    if report.checks.len() != 4 {
        return Err(format!("expected 4 checks, found {}", report.checks.len()));
    }
    let spaces = report.config.spaces.len() as u64;
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    require(&report, &names, spaces)?;
    Ok(pass(format!("4 checks on {spaces} spaces over Q, F3, F5, n = 1..5")))
}

fn group_layer() -> Result<Outcome, String> {
    let report = run("centers", &SuiteConfig::default())?;
    clean(&report)?;
    require(
        &report,
        &[
            "P is onto O(V)",
            "ker P is the nonzero scalars",
            "P is a homomorphism",
            "sign(g) = det P(g)",
            "N is multiplicative",
            "center of GPin matches brute force",
            "center of GSpin matches brute force",
            "GSpin of a plane is commutative",
        ],
        1,
    )?;
    Ok(pass(format!("{} enumerated elements over {} F3 spaces", report.cases_run, report.config.spaces.len())))
}

fn commuting() -> Result<Outcome, String> {
    let report = run("commuting", &SuiteConfig::default())?;
    clean(&report)?;
    require(&report, &["g1 g2 g1^-1 = (-1)^(odd and odd) g2"], 1)?;
    let pairs = report.check("g1 g2 g1^-1 = (-1)^(odd and odd) g2").map_or(0, |c| c.cases);
    Ok(pass(format!("{pairs} enumerated pairs over n = 3, 4")))
}

fn mvw() -> Result<Outcome, String> {
    let config = SuiteConfig { field: Some(Field::Prime(3)), ..SuiteConfig::default() };
    let report = run("mvw", &config)?;
    clean(&report)?;
    require(&report, &["h is conjugate to h^-1 in O(V)", "beta h^-1 beta^-1 = h"], 1)?;
    let total = report.check("h is conjugate to h^-1 in O(V)").map_or(0, |c| c.cases);
    Ok(pass(format!("{total} isometries of O2(F3) and O3(F3) over all square classes")))
}

fn centralizer_orders() -> Result<Outcome, String> {
    let config = SuiteConfig { field: Some(Field::Prime(3)), slow: true, ..SuiteConfig::default() };
    let report = run("centralizer-orders", &config)?;
    clean(&report)?;
    require(&report, &["|O(V)_h| matches the block formula"], 10)?;
    require(
        &report,
        &[
            "|SO(V)_h| matches S(O(V+) x O(V-))",
            "P(GPin(V)_g) matches the described subgroup",
            "P(GSpin(V)_g) = SO(V+) x SO(V-) on the orthogonal part",
        ],
        1,
    )?;
    let h = report.check("|O(V)_h| matches the block formula").map_or(0, |c| c.cases);
    Ok(pass(format!("{h} semisimple h over F3 with n = 1..4")))
}

/// Pass with exit code 0 and no findings, or exit code 2 with every finding listed.
fn conjugacy() -> Result<Outcome, String> {
    let mut summary = Vec::new();
    for id in ["conjugacy", "gspin-conjugacy"] {
        let (code, stdout) = gpin(&["suite", id, "--field", "Fp:3", "--format", "json"])?;
        let report = parse_report(&stdout).map_err(|e| e.to_string())?;
        clean(&report)?;
        match (code, report.status) {
            (0, Status::Pass) => summary.push(format!("{id}: pass")),
            (2, Status::Findings) if !report.findings.is_empty() => {
                summary.push(format!("{id}: {} findings reported", report.findings.len()))
            }
            (code, status) => return Err(format!("{id}: exit code {code} with status {status}")),
        }
    }
    let report = run("conjugacy", &SuiteConfig::default())?;
    require(&report, &["eta sigma_V(g) eta^-1 = g", "det P(eta) = (-1)^k for g in GSpin(V)"], 1)?;
    let gspin = run("gspin-conjugacy", &SuiteConfig::default())?;
    require(&gspin, &["g is conjugate to e^k sigma_V(g) e^-k in GSpin(V)"], 1)?;
    Ok(pass(summary.join("; ")))
}

fn tilde_actions() -> Result<Outcome, String> {
    let report = run("tilde-actions", &SuiteConfig::default())?;
    clean(&report)?;
    let spaces = report.config.spaces.len() as u64;
    require(&report, &["(ab).x = a.(b.x)", "(t beta)^2 acts trivially", "chi is a homomorphism"], 4 * 100 * spaces)?;
    require(
        &report,
        &["beta^2 = 1", "tau preserves the GPinW subgroup", "tau preserves the GSpinW subgroup"],
        1,
    )?;
    Ok(pass(format!("100 triples per group on {spaces} F3 spaces with n = 3, 4")))
}

fn determinism() -> Result<Outcome, String> {
    for spec in SUITES {
        let args = ["suite", spec.id, "--seed", "42", "--format", "json"];
        let (first_code, first) = gpin(&args)?;
        let (second_code, second) = gpin(&args)?;
        if first != second || first_code != second_code {
            return Err(format!("{}: reports differ between runs", spec.id));
        }
    }
    Ok(pass(format!("{} suites re-run with seed 42, byte-identical JSON", SUITES.len())))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "Clifford axioms", secs(10), clifford_axioms),
        criterion(2, "Involution laws", secs(5), involution_laws),
        criterion(3, "zeta suite", secs(5), zeta),
        criterion(4, "Group layer", secs(60), group_layer),
        criterion(5, "Commuting elements", secs(60), commuting),
        criterion(6, "MVW", secs(60), mvw),
        criterion(7, "Centralizer orders (--slow)", secs(300), centralizer_orders),
        criterion(8, "Conjugacy of g and sigma_V(g)", secs(300), conjugacy),
        criterion(9, "Tilde actions", secs(30), tilde_actions),
        criterion(10, "Determinism", secs(600), determinism),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
