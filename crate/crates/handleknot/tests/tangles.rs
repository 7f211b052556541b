mod common;

#[test]
fn tangle_lemma_tables() {
    for p in [3, 5] {
        for q in [3, 5] {
            let bad = common::tangle_table_mismatches(p, q);
            assert!(bad.is_empty(), "{} mismatches, first: {:?}", bad.len(), bad);
        }
    }
}
