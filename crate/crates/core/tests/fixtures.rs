//! The committed fixtures are regenerated by the library; set
//! `UPDATE_FIXTURES=1` to rewrite them.

mod common;

use std::fs;

use tensor3_decomp::constitutive::voigt::from_voigt;
use tensor3_decomp::format::{self, tensor_to_json, voigt_to_json};

fn check(name: &str, content: String) {
    let path = common::fixture(name);
    let content = content + "\n";
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        fs::write(&path, &content).unwrap();
    }
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        content,
        "{name} is stale; rerun with UPDATE_FIXTURES=1"
    );
}

#[test]
fn epsilon_fixture() {
    check("epsilon.json", tensor_to_json(&common::epsilon_tensor()));
    assert_eq!(
        format::read_tensor(&common::fixture("epsilon.json")).unwrap(),
        common::epsilon_tensor()
    );
}

#[test]
fn voigt_fixture() {
    let d = from_voigt(&common::voigt_fixture_table());
    check("voigt.json", voigt_to_json(&d));
    assert_eq!(
        format::read_voigt(&common::fixture("voigt.json")).unwrap(),
        d
    );
}
