use std::path::PathBuf;

use crate::exactlin::Field;
use crate::instance::{parse_instance_file, Instance, ParseOptions, DEFAULT_PRIME};

pub fn instance_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name)
}

pub fn load_with(name: &str, field: Field) -> Instance {
    let opts = ParseOptions {
        field: Some(field),
        ..Default::default()
    };
    parse_instance_file(&instance_path(name), &opts).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> Instance {
    load_with(name, Field::Rational)
}

pub fn fields() -> [Field; 2] {
    [Field::Rational, Field::prime(DEFAULT_PRIME).unwrap()]
}
