mod suites;

macro_rules! suite_tests {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                suites::run(stringify!($name));
            }
        )*
    };
}

suite_tests!(
    stereo_matches_substitution_off_sphere,
    stereo_on_sphere_is_scaled_top_part,
    stereo_coercive_outside_unit_ball,
    stereo_height_bound,
    witness_transport_off_sphere,
    witness_transport_on_sphere,
    unisos_round_trip,
    rur_substitution_identity,
    single_field_mutation_invalidates,
    psd_agrees_with_principal_minors,
    h_t_structure,
);

#[test]
fn every_suite_is_listed() {
    assert_eq!(suites::SUITES.len(), 11);
}
