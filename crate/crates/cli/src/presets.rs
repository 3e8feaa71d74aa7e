//! Instances shipped with the binary.

use crate::instance::{parse_instance, InstanceFile};
use crate::CliError;

macro_rules! preset {
    ($name:literal) => {
        ($name, include_str!(concat!("../presets/", $name, ".json")))
    };
}

/// `(name, JSON source)` in listing order.
pub const PRESETS: &[(&str, &str)] = &[
    preset!("abelian3"),
    preset!("heisenberg3-randers"),
    preset!("heisenberg3-central"),
    preset!("heisenberg3-generic"),
    preset!("so3"),
    preset!("heisenberg3-r-berwald"),
    preset!("matsumoto-berwald"),
    preset!("kropina-berwald"),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Result<&'static str, CliError> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| CliError::UnknownPreset(name.to_string()))
}

pub fn load(name: &str) -> Result<InstanceFile, CliError> {
    parse_instance(source(name)?)
}
