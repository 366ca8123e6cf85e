//! Runs the qpft verification suite on a small random corpus and prints a summary.

use std::collections::BTreeMap;

use wqpft::testkit::{random_corpus, run_suite, Suite, Tolerances};

fn main() -> wqpft::Result<()> {
    let corpus = random_corpus(7, 6);
    let reports = run_suite(Suite::Qpft, &corpus, &Tolerances::standard())?;
    let mut summary: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for r in &reports {
        let e = summary.entry(r.identity_name.as_str()).or_default();
        e.0 += 1;
        e.1 += usize::from(r.pass);
        e.2 = e.2.max(r.rel_defect);
    }
    for (name, (n, ok, worst)) in summary {
        println!("{name:<30} {ok:>3}/{n:<3} worst {worst:.2e}");
    }
    Ok(())
}
