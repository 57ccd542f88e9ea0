//! The generated quartic systems compared byte for byte with checked-in
//! snapshots. Set `UPDATE_GOLDEN=1` to rewrite the snapshots.

use std::path::PathBuf;

use modcurve::locus;

fn snapshot(p: u32) -> String {
    let sys = locus::generate_ideal(p).unwrap();
    serde_json::to_string_pretty(&locus::system_to_json(&sys)).unwrap() + "\n"
}

fn check(p: u32) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{p}.json"));
    let now = snapshot(p);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &now).unwrap();
    }
    let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(now, stored, "snapshot for p = {p} changed");
}

#[test]
fn level_seven_snapshot() {
    check(7);
}

#[test]
fn level_eleven_snapshot() {
    check(11);
}

#[test]
fn level_thirteen_snapshot() {
    check(13);
}
