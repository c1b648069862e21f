//! Reference-data directory override. The override is controlled by a
//! process-global environment variable, so every stage lives in one test
//! function of its own binary.

use std::path::Path;

use telechan::report::{
    load_reference_lists, load_reference_tables, DATA_ENV, LISTS_FILE, TABLE_FILES,
};

#[test]
fn data_dir_override_is_honoured() {
    // Stage 1: without the variable the embedded data loads.
    std::env::remove_var(DATA_ENV);
    let embedded_tables = load_reference_tables().expect("embedded tables load");
    assert_eq!(embedded_tables.len(), 8);
    let embedded_lists = load_reference_lists().expect("embedded lists load");
    assert_eq!(embedded_lists.len(), 3);

    // Stage 2: a missing directory is an error, not a silent fallback.
    std::env::set_var(DATA_ENV, "/nonexistent/telechan-data");
    assert!(load_reference_tables().is_err());
    assert!(load_reference_lists().is_err());

    // Stage 3: a directory holding copies of the bundled files loads and
    // agrees with the embedded data.
    let dir = tempfile::tempdir().expect("tempdir");
    let source = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for name in TABLE_FILES {
        std::fs::copy(source.join(name), dir.path().join(name)).expect("copy table");
    }
    std::fs::copy(source.join(LISTS_FILE), dir.path().join(LISTS_FILE)).expect("copy lists");
    std::env::set_var(DATA_ENV, dir.path());
    let copied_tables = load_reference_tables().expect("copied tables load");
    assert_eq!(copied_tables.len(), embedded_tables.len());
    for (a, b) in copied_tables.iter().zip(&embedded_tables) {
        assert_eq!(a.channel, b.channel);
        assert_eq!(a.rows.len(), b.rows.len());
    }
    assert_eq!(load_reference_lists().expect("copied lists load").len(), 3);

    // Stage 4: a missing table file inside an existing directory is reported.
    std::fs::remove_file(dir.path().join(TABLE_FILES[0])).expect("remove one table");
    assert!(load_reference_tables().is_err());
    assert!(load_reference_lists().is_ok(), "lists are unaffected");

    // Stage 5: malformed JSON is rejected with an error, not a panic.
    std::fs::write(dir.path().join(TABLE_FILES[0]), "{ not json").expect("write junk");
    assert!(load_reference_tables().is_err());

    std::env::remove_var(DATA_ENV);
}
