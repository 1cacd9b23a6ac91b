use algebra_spec::*;

fn presets() -> Vec<WhaSpec> {
    vec![
        z2_sigma_z(),
        build_function_algebra(&GroupTable::cyclic(2)).unwrap(),
        build_group_algebra_regular(&GroupTable::symmetric3()).unwrap(),
        build_kac_paljutkin(),
        build_lee_yang(),
    ]
}

#[test]
fn canonical_round_trip_is_byte_identical() {
    for s in presets() {
        let text = to_canonical_json(&s);
        let back = from_json_str(&text).unwrap();
        assert!(
            to_canonical_json(&back) == text,
            "round trip changed the text"
        );
        assert_eq!(back.n(), s.n());
        assert_eq!(back.mult_tensor(), s.mult_tensor());
        assert_eq!(back.coproduct_tensor(), s.coproduct_tensor());
    }
}

#[test]
fn save_then_load_through_a_file() {
    let dir = std::env::temp_dir().join(format!("algebra_spec_json_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ly.json");
    let s = build_lee_yang();
    save_spec(&s, &path).unwrap();
    let back = load_spec(&path).unwrap();
    assert_eq!(back.labels(), s.labels());
    assert!(std::fs::read_to_string(&path).unwrap() == to_canonical_json(&back));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn committed_z2_preset_loads() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../presets/z2.json");
    let s = load_spec(path).unwrap();
    assert_eq!(s.n(), 2);
    assert!(to_canonical_json(&s) == to_canonical_json(&z2_sigma_z()));
}

#[test]
fn corrupted_file_is_a_parse_error() {
    let mut text = to_canonical_json(&z2_sigma_z());
    text.truncate(text.len() / 2);
    assert!(matches!(from_json_str(&text), Err(SpecError::Parse(_))));
    assert!(matches!(
        from_json_str("{\"version\": 1}"),
        Err(SpecError::Parse(_))
    ));
}

#[test]
fn out_of_range_index_is_a_dimension_error() {
    let text =
        to_canonical_json(&z2_sigma_z()).replacen("[1, 1, 0, 1.0, 0.0]", "[1, 1, 7, 1.0, 0.0]", 1);
    assert!(matches!(from_json_str(&text), Err(SpecError::Dimension(_))));
}

#[test]
fn broken_star_is_detected() {
    // Replacing the star of g by 2g breaks φ(x*) = φ(x)†.
    let text = to_canonical_json(&z2_sigma_z()).replacen(
        "\"star\": [\n    [0, 0, 1.0, 0.0],\n    [1, 1, 1.0, 0.0]",
        "\"star\": [\n    [0, 0, 1.0, 0.0],\n    [1, 1, 2.0, 0.0]",
        1,
    );
    assert!(matches!(
        from_json_str(&text),
        Err(SpecError::NotStarRep { .. })
    ));
}

#[test]
fn negative_zero_is_normalized() {
    let text = to_canonical_json(&build_lee_yang());
    assert!(!text.contains("-0.0"));
}
