mod props;

const CASES: u32 = 128;

#[test]
fn enumeration_is_basis_invariant() {
    props::basis_invariance(CASES).unwrap();
}

#[test]
fn determinant_is_basis_invariant() {
    props::determinant_invariance(CASES).unwrap();
}

#[test]
fn enumeration_is_negation_symmetric() {
    props::negation_symmetry(CASES).unwrap();
}

#[test]
fn enumeration_matches_box_scan() {
    props::box_oracle(CASES).unwrap();
}

#[test]
fn coset_minima_are_translation_invariant() {
    props::translation_invariance(CASES).unwrap();
}

#[test]
fn s_census_is_symmetric() {
    props::s_symmetry(CASES).unwrap();
}

#[test]
fn extremality_matches_coset_minima() {
    props::extremality_matches_coset_minima(CASES).unwrap();
}

#[test]
fn hnf_is_idempotent() {
    props::hnf_idempotence(CASES).unwrap();
}

#[test]
fn results_do_not_depend_on_threads() {
    props::thread_determinism(CASES).unwrap();
}

#[test]
fn adjunction_genus_ignores_order() {
    props::adjunction_permutation_invariance(CASES).unwrap();
}
