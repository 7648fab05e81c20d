//! One PASS or FAIL line per acceptance criterion; exits nonzero if any fail.

use std::process::{Command, ExitCode};

use iffkit::verify::{Config, Outcome, CRITERIA};

/// `merge` run twice as a separate process must print the same bytes.
fn merge_is_byte_identical() -> Outcome {
    let run = || Command::new(env!("CARGO_BIN_EXE_iffkit")).args(["merge", "span.align"]).env_remove("IFFKIT_CORPUS").output();
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let same = a.status.success() && a.stdout == b.stdout && a.status == b.status && !a.stdout.is_empty();
            Outcome { passed: same, detail: format!("binary merge output identical across runs: {same}") }
        }
        (Err(e), _) | (_, Err(e)) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA.iter().map(|c| s.spawn(move || (c.run)(&cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = 0;
    for (c, mut o) in CRITERIA.iter().zip(results) {
        if c.number == 10 {
            let m = merge_is_byte_identical();
            o = Outcome { passed: o.passed && m.passed, detail: format!("{}; {}", o.detail, m.detail) };
        }
        if !o.passed {
            failed += 1;
        }
        println!("{} criterion {:>2} {}: {}", if o.passed { "PASS" } else { "FAIL" }, c.number, c.title, o.detail);
    }
    println!("{} criteria, {failed} failed", CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
