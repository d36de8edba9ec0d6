//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 10 requires d_iso to intertwine for exactly one branch of ν; both branches
//! intertwine for every (k, r), so that check fails. It is listed in `KNOWN_FAILING` and the
//! run exits non-zero if it ever starts passing or if anything else fails.

use std::process::ExitCode;
use std::time::Instant;

use thetaforge::scalar::default_prec_bits;
use thetaforge::verify::{self, IntRange, VerifyReport};

const SEED: u64 = 0;

/// (criterion, check id) pairs expected to fail.
const KNOWN_FAILING: &[(usize, &str)] = &[(10, "d_iso_exactly_one_branch")];

fn rg(lo: u32, hi: u32) -> IntRange {
    IntRange::new(lo, hi).unwrap()
}

fn criterion(n: usize, prec: u32) -> Vec<VerifyReport> {
    let r = |x: thetaforge::error::Result<VerifyReport>| x.unwrap_or_else(|e| panic!("criterion {n}: {e}"));
    match n {
        1 => vec![r(verify::heisenberg_svn(rg(2, 12)))],
        2 => vec![r(verify::egorov_abelian(rg(2, 8), 50, SEED, prec))],
        3 => vec![r(verify::f_of_t_recovery(rg(2, 12)))],
        4 => vec![r(verify::product_to_sum(rg(2, 8), 500, SEED))],
        5 => vec![r(verify::presentation(rg(2, 10)))],
        6 => vec![r(verify::pillow_svn(rg(2, 8)))],
        7 => vec![r(verify::mcg_matrices(rg(2, 12), rg(3, 8), 30, SEED, prec))],
        8 => vec![r(verify::gauss_sums(rg(2, 12)))],
        9 => vec![r(verify::hopf_determinant(rg(2, 12)))],
        10 => vec![r(verify::quantum_group(rg(2, 10)))],
        11 => vec![r(verify::fusion(rg(2, 10)))],
        12 => vec![r(verify::verlinde(rg(3, 10), rg(1, 1), prec)), r(verify::verlinde(rg(3, 8), rg(2, 3), prec))],
        13 => vec![r(verify::theta(prec))],
        _ => unreachable!(),
    }
}

fn main() -> ExitCode {
    let prec = default_prec_bits();
    let results: Vec<(usize, Vec<VerifyReport>, f64)> = std::thread::scope(|s| {
        let hs: Vec<_> = (1..=13)
            .map(|n| {
                s.spawn(move || {
                    let t = Instant::now();
                    let reps = criterion(n, prec);
                    (n, reps, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });

    let mut unexpected = 0;
    for (n, reps, secs) in &results {
        let checks: usize = reps.iter().map(|r| r.checks_run).sum();
        let failures: Vec<_> = reps.iter().flat_map(|r| r.failures.iter()).collect();
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {status} ({checks} checks, {} failures, {secs:.1}s)", failures.len());
        for rep in reps {
            for note in &rep.notes {
                println!("    note: {note}");
            }
        }
        let known: Vec<&str> = KNOWN_FAILING.iter().filter(|(c, _)| c == n).map(|(_, id)| *id).collect();
        for f in &failures {
            if !known.contains(&f.check_id.as_str()) {
                unexpected += 1;
                println!("    unexpected failure {} [{}]: expected {}, got {}", f.check_id, f.inputs, f.expected, f.actual);
            }
        }
        for id in &known {
            let count = failures.iter().filter(|f| f.check_id == *id).count();
            if count == 0 {
                unexpected += 1;
                println!("    known failure {id} no longer fails; update KNOWN_FAILING");
            } else {
                let first = failures.iter().find(|f| f.check_id == *id).unwrap();
                println!("    known failure {id}: {count} cases, e.g. [{}] expected {}, got {}", first.inputs, first.expected, first.actual);
            }
        }
    }
    let passed = results.iter().filter(|(_, reps, _)| reps.iter().all(|r| r.passed())).count();
    println!("acceptance: {passed}/13 PASS");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
