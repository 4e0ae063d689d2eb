//! Text outputs compared byte for byte with checked-in files.

use wzproof::conjecture::{render_table, table_rows};
use wzproof::paths::enumerate_x;

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn table_rows_match_golden() {
    assert_eq!(render_table(&table_rows(3)), golden("table1.txt"));
}

#[test]
fn x1_dump_matches_golden() {
    let dump: String = enumerate_x(1).iter().map(|p| format!("{p}\n")).collect();
    assert_eq!(dump, golden("x1.txt"));
}
