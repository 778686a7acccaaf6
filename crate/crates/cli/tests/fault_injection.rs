//! Mutation smoke test: with dephasing sabotaged, the suite must fail and
//! name C_m faithfulness. Run with `cargo test -p qmr-cli --features fault-injection`.
#![cfg(feature = "fault-injection")]

use std::process::Command;

#[test]
fn sabotaged_dephasing_fails_faithfulness() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmr"))
        .args(["suite", "--trials", "20"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("C_m faithfulness"), "{err}");
    assert!(err.contains("counterexample seed"), "{err}");
}
