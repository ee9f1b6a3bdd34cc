//! The JSON files under `fixtures/` describe the same objects as the
//! `fixtures` module.

use std::path::PathBuf;
use std::sync::Arc;

use latticelab::{fixtures, EndoMonoid, Lattice, Limits, LinearMorphism, MonoidSpec, MorphismSpec};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn lattice_files_match_the_module() {
    let pairs = [
        ("c2.json", fixtures::two()),
        ("c3.json", fixtures::c3()),
        ("b2.json", fixtures::b2()),
        ("b3.json", fixtures::b3()),
        ("m3.json", fixtures::m3()),
        ("n5.json", fixtures::n5()),
        ("excip.json", fixtures::excip()),
    ];
    for (file, expected) in pairs {
        let loaded = Lattice::from_json(&read(file), 64).unwrap();
        assert_eq!(loaded, expected, "{file}");
        assert_eq!(loaded.name(), expected.name(), "{file}");
        assert_eq!(
            loaded.to_json() + "\n",
            read(file),
            "{file} is not canonical"
        );
    }
}

#[test]
fn shift_morphism_file_is_the_chain_shift() {
    let c3 = Arc::new(fixtures::c3());
    let spec: MorphismSpec = serde_json::from_str(&read("fig1-morphism.json")).unwrap();
    let phi = LinearMorphism::from_spec(&spec, &c3, &c3).unwrap();
    assert_eq!(phi.map(), fixtures::chain_shift(&c3).map());
    assert_eq!(c3.name_of(phi.kernel()), "n");
}

#[test]
fn module_monoid_file_is_closed() {
    let c3 = Arc::new(fixtures::c3());
    let spec: MonoidSpec = serde_json::from_str(&read("c3-module-monoid.json")).unwrap();
    let m = EndoMonoid::from_spec(&c3, &spec, &Limits::default()).unwrap();
    assert_eq!(m.len(), 3);
    assert!(m.index_of(fixtures::chain_shift(&c3).map()).is_some());
}
