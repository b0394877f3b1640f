//! Runs A1 to A10 and prints one line per criterion. Fails when the set of
//! failing criteria differs from `KNOWN_FAILURES`.

use gapprob::acceptance::{matches_known, run_suite, Suite, KNOWN_FAILURES};

fn main() {
    let results = run_suite(Suite::All, |r| println!("{r}"));
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} pass, known failures {:?}", results.len(), KNOWN_FAILURES);
    if !matches_known(&results) {
        eprintln!("acceptance: failing criteria differ from the known failures");
        std::process::exit(1);
    }
}
