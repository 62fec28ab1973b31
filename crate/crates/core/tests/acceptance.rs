//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use placid::bench::{run_suite, Suite, SuiteParams};
use placid::checker::TropWitness;
use placid::forge::{build_identity, QMode};

struct Criterion {
    id: u32,
    name: &'static str,
    suite: Suite,
    params: SuiteParams,
    limit: Duration,
}

fn params(rank: Option<usize>, samples: Option<usize>, budget_secs: u64) -> SuiteParams {
    SuiteParams {
        rank,
        samples,
        seed: 7,
        budget: Duration::from_secs(budget_secs),
    }
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "identity length n=6",
            suite: Suite::IdentityLength,
            params: params(Some(6), None, 60),
            limit: Duration::from_secs(1),
        },
        Criterion {
            id: 2,
            name: "tableau examples",
            suite: Suite::Examples,
            params: params(None, None, 60),
            limit: Duration::from_secs(1),
        },
        Criterion {
            id: 3,
            name: "Knuth invariance n<=4",
            suite: Suite::Knuth,
            params: params(None, None, 60),
            limit: Duration::from_secs(30),
        },
        Criterion {
            id: 4,
            name: "faithfulness n=3 |w|<=5",
            suite: Suite::Faithfulness,
            params: params(Some(3), None, 60),
            limit: Duration::from_secs(120),
        },
        Criterion {
            id: 5,
            name: "readability semantics",
            suite: Suite::Readability,
            params: params(None, Some(2000), 60),
            limit: Duration::from_secs(120),
        },
        Criterion {
            id: 6,
            name: "lattice oracle n<=5",
            suite: Suite::Lattice,
            params: params(None, None, 60),
            limit: Duration::from_secs(60),
        },
        Criterion {
            id: 7,
            name: "chain-length bound",
            suite: Suite::Chain,
            params: params(None, None, 60),
            limit: Duration::from_secs(60),
        },
        Criterion {
            id: 8,
            name: "splitting postconditions",
            suite: Suite::Split,
            params: params(Some(6), Some(10_000), 60),
            limit: Duration::from_secs(120),
        },
        Criterion {
            id: 9,
            name: "splitting-paths inequality",
            suite: Suite::Paths,
            params: params(Some(4), Some(2000), 60),
            limit: Duration::from_secs(120),
        },
        Criterion {
            id: 10,
            name: "identities hold n=3,4",
            suite: Suite::Plactic,
            params: params(None, Some(10_000), 150),
            limit: Duration::from_secs(300),
        },
        Criterion {
            id: 11,
            name: "UT_{n+1} separation",
            suite: Suite::Tropical,
            params: params(None, Some(100_000), 60),
            limit: Duration::from_secs(120),
        },
        Criterion {
            id: 12,
            name: "rank-2 identity fails at rank 3",
            suite: Suite::Echo,
            params: params(None, Some(100_000), 300),
            limit: Duration::from_secs(300),
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = run_suite(c.suite, &c.params);
        let elapsed = start.elapsed();
        let (mut ok, mut detail) = match outcome {
            Ok(o) => (o.passed, format!("{} cases; {}", o.cases, o.summary)),
            Err(e) => (false, format!("error: {e}")),
        };
        if ok && c.id == 1 {
            let len = build_identity(6, false, QMode::Minimal).map(|b| b.length);
            if len != Ok(1298) {
                ok = false;
                detail = format!("length {len:?}, expected 1298");
            }
        }
        if ok && c.id == 11 {
            let frozen: TropWitness = serde_json::from_str(placid::bench::UT3_WITNESS_FIXTURE).expect("fixture parses");
            if frozen.dim != 3 || frozen.reverify().is_err() {
                ok = false;
                detail = "frozen witness failed re-verification".into();
            }
        }
        if ok && elapsed > c.limit {
            ok = false;
            detail = format!("over time limit {:?}; {detail}", c.limit);
        }
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {:<32} {:>9.3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
