use wpbm_core::{Labeling, Poset};
use wpbm_harness::generate::random_linear_code;
use wpbm_harness::instance::{digest, Instance, InstanceError};

const SPACE_ONLY: &str = r#"{
  "field": {"q": 5},
  "weight": {"kind": "table", "values": [0, 1, 2, 2, 1]},
  "poset": {"elements": 3, "cover": [[1, 3], [2, 3]]},
  "labeling": [1, 2, 1]
}"#;

#[test]
fn save_then_load_is_identity_on_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let inst = random_linear_code(11, 3, Poset::chain(3), Labeling::new(vec![2, 1, 2]).unwrap(), 2).unwrap();
    inst.save(&path).unwrap();
    let loaded = Instance::load(&path).unwrap();
    assert_eq!(loaded, inst.canonical().unwrap());
    loaded.save(&path).unwrap();
    assert_eq!(Instance::load(&path).unwrap(), loaded);
}

#[test]
fn space_only_instances_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("space.json");
    std::fs::write(&path, SPACE_ONLY).unwrap();
    let inst = Instance::load(&path).unwrap();
    assert!(inst.code.is_none());
    let space = inst.space(1 << 20).unwrap();
    assert_eq!((space.n(), space.s()), (4, 3));
    inst.save(&path).unwrap();
    assert_eq!(Instance::load(&path).unwrap(), inst);
}

#[test]
fn missing_file_and_bad_json_are_distinguished() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(Instance::load(dir.path().join("nope.json")), Err(InstanceError::Io { .. })));
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"field\": {\"q\": 2},\n  \"colour\": 1\n}").unwrap();
    assert!(matches!(Instance::load(&path), Err(InstanceError::Parse { line: 3, .. })));
}

#[test]
fn inconsistent_files_name_the_field() {
    let cases = [
        (SPACE_ONLY.replace("\"q\": 5", "\"q\": 6"), "field"),
        (SPACE_ONLY.replace("[0, 1, 2, 2, 1]", "[0, 1, 2]"), "weight"),
        (SPACE_ONLY.replace("[[1, 3], [2, 3]]", "[[1, 3], [3, 1]]"), "poset"),
        (SPACE_ONLY.replace("[1, 2, 1]", "[1, 2]"), "labeling"),
    ];
    for (text, field) in cases {
        let err = Instance::parse(&text).unwrap().space(1 << 20).unwrap_err();
        assert!(matches!(err, InstanceError::Consistency { field: f, .. } if f == field), "{field}: {err}");
    }
}

#[test]
fn digests_track_content() {
    let a = random_linear_code(1, 2, Poset::chain(2), Labeling::trivial(2), 1).unwrap();
    let b = random_linear_code(1, 2, Poset::chain(2), Labeling::trivial(2), 1).unwrap();
    let c = random_linear_code(1, 2, Poset::antichain(2), Labeling::trivial(2), 1).unwrap();
    assert_eq!(digest(std::slice::from_ref(&a)), digest(&[b]));
    assert_ne!(digest(&[a]), digest(&[c]));
}
