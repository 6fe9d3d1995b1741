mod common;

/// Set `QSIGMA_BLESS=1` to rewrite the recorded outputs.
#[test]
fn golden_outputs_are_byte_exact() {
    let cases = common::load_all();
    assert!(!cases.is_empty());
    if std::env::var_os("QSIGMA_BLESS").is_some() {
        cases.iter().for_each(common::bless);
        return;
    }
    let failures: Vec<String> = cases.iter().filter_map(|g| common::check(g).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
}
