//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use coxbrauer::brauer_tree::to_dot;
use coxbrauer::fixtures::{g2_tree, G2_ELL, G2_QSQ};
use coxbrauer::root_data::table_rows;
use coxbrauer::selftest::{run, Options};

fn main() -> ExitCode {
    let results = run(&Options::default());
    for r in &results {
        println!("{}", r.line());
    }
    let mut ok = results.len() == 12 && results.iter().all(|r| r.passed);

    // The golden file on disk, not the copy compiled into the library.
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/2g2.dot"));
    let dot = to_dot(&g2_tree(G2_QSQ, G2_ELL).expect("2G2 fixture"));
    let golden_ok = golden.is_ok_and(|g| g == dot);
    println!("[{}] golden 2g2.dot", if golden_ok { "PASS" } else { "FAIL" });
    ok &= golden_ok;

    let mut rows = table_rows();
    rows[0].degrees[0] += 1;
    let neg = run(&Options { filter: Some("coxeter-tables".into()), table: Some(rows) });
    let neg_ok = neg.len() == 1 && !neg[0].passed;
    println!("[{}] corrupted table rejected: {}", if neg_ok { "PASS" } else { "FAIL" }, neg[0].detail);
    ok &= neg_ok;

    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
