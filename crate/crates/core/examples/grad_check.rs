//! Comparing the hand-derived GCN gradients with central finite differences.
//!
//! `cargo run --release --example grad_check`

use kcolor::gcn::grad_check_suite;

fn main() -> kcolor::Result<()> {
    for case in grad_check_suite(9, 1) {
        let r = case.run(1e-5)?;
        println!(
            "n={:2} depth={} k={} loss={:<14} entries={:5} rel err {:.2e}",
            case.n, case.depth, case.k, case.loss.to_string(), r.entries, r.max_rel_error
        );
    }
    Ok(())
}
