//! TOML form of a fuzzy color space.
//!
//! ```toml
//! name = "hue-10"
//! model = "hsi"
//! partition = "ruspini"
//!
//! [[color]]
//! label = "red"
//! h = { kind = "triangular", params = [300.0, 0.0, 30.0] }
//! s = { kind = "trapezoidal", params = [0.0, 0.0, 1.0, 1.0] }
//! x = { kind = "trapezoidal", params = [0.0, 0.0, 1.0, 1.0] }
//! ```
//!
//! `x` is the model's third component (I, L or V). An optional per-color
//! `combiner` is `"min"` (default) or `"product"`. The kind `"sigmoid"` is
//! reserved and currently rejected.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use super::{
    Combiner, Domain, FuzzyColor, FuzzyColorSpace, FuzzyError, MembershipFunction, PartitionMode,
    Shape,
};
use crate::color::ColorModelId;

/// Bytes of the bundled ten-label hue partition.
pub const BUNDLED_HUE_PARTITION: &str = include_str!("../../data/hue10.toml");

#[derive(Debug, Error)]
pub enum FuzzyConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown membership kind '{0}' (expected triangular, trapezoidal or gaussian)")]
    UnknownKind(String),
    #[error("membership kind '{0}' is reserved but not supported yet")]
    ReservedKind(String),
    #[error("{kind} takes {expected} parameters, got {got}")]
    Arity {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown partition mode '{0}' (expected ruspini or none)")]
    Partition(String),
    #[error("unknown combiner '{0}' (expected min or product)")]
    Combiner(String),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    name: String,
    description: Option<String>,
    model: ColorModelId,
    partition: String,
    #[serde(rename = "color", default)]
    colors: Vec<ColorEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ColorEntry {
    label: String,
    h: FunctionEntry,
    s: FunctionEntry,
    x: FunctionEntry,
    combiner: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionEntry {
    kind: String,
    params: Vec<f64>,
}

impl FunctionEntry {
    fn build(&self, domain: Domain) -> Result<MembershipFunction, FuzzyConfigError> {
        let (expected, shape): (usize, fn(&[f64]) -> Shape) = match self.kind.as_str() {
            "triangular" => (3, |p| Shape::Triangular { a: p[0], b: p[1], c: p[2] }),
            "trapezoidal" => (4, |p| Shape::Trapezoidal { a: p[0], b: p[1], c: p[2], d: p[3] }),
            "gaussian" => (2, |p| Shape::Gaussian { mean: p[0], sigma: p[1] }),
            "sigmoid" => return Err(FuzzyConfigError::ReservedKind(self.kind.clone())),
            other => return Err(FuzzyConfigError::UnknownKind(other.to_owned())),
        };
        if self.params.len() != expected {
            return Err(FuzzyConfigError::Arity {
                kind: self.kind.clone(),
                expected,
                got: self.params.len(),
            });
        }
        Ok(MembershipFunction::new(shape(&self.params), domain)?)
    }
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_owned()).to_string()
}

fn function_line(key: &str, f: &MembershipFunction) -> String {
    let shape = f.shape();
    let params: Vec<String> = shape.params().iter().map(|p| format!("{p:?}")).collect();
    format!(
        "{key} = {{ kind = \"{}\", params = [{}] }}\n",
        shape.kind(),
        params.join(", ")
    )
}

impl FuzzyColorSpace {
    pub fn from_config_str(text: &str) -> Result<Self, FuzzyConfigError> {
        let file: SpaceFile = toml::from_str(text)?;
        let mode = match file.partition.as_str() {
            "ruspini" => PartitionMode::Ruspini,
            "none" => PartitionMode::None,
            other => return Err(FuzzyConfigError::Partition(other.to_owned())),
        };
        let colors = file
            .colors
            .iter()
            .map(|c| {
                let combiner = match c.combiner.as_deref() {
                    None | Some("min") => Combiner::Min,
                    Some("product") => Combiner::Product,
                    Some(other) => return Err(FuzzyConfigError::Combiner(other.to_owned())),
                };
                Ok(FuzzyColor::new(
                    c.label.clone(),
                    c.h.build(Domain::Circular)?,
                    c.s.build(Domain::Linear)?,
                    c.x.build(Domain::Linear)?,
                    combiner,
                )?)
            })
            .collect::<Result<Vec<_>, FuzzyConfigError>>()?;
        let space = FuzzyColorSpace::new(file.name, file.model, colors, mode)?;
        Ok(match file.description {
            Some(d) => space.with_description(d),
            None => space,
        })
    }

    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name = {}", toml_string(&self.name)).unwrap();
        if let Some(d) = &self.description {
            writeln!(out, "description = {}", toml_string(d)).unwrap();
        }
        writeln!(out, "model = \"{}\"", self.model.name()).unwrap();
        let mode = match self.partition_mode {
            PartitionMode::Ruspini => "ruspini",
            PartitionMode::None => "none",
        };
        writeln!(out, "partition = \"{mode}\"").unwrap();
        for c in &self.colors {
            writeln!(out, "\n[[color]]").unwrap();
            writeln!(out, "label = {}", toml_string(&c.label)).unwrap();
            out.push_str(&function_line("h", &c.mu_h));
            out.push_str(&function_line("s", &c.mu_s));
            out.push_str(&function_line("x", &c.mu_x));
            if c.combiner != Combiner::Min {
                writeln!(out, "combiner = \"{}\"", c.combiner.name()).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_round_trips_byte_for_byte() {
        let space = FuzzyColorSpace::bundled();
        assert_eq!(space.colors().len(), 10);
        assert_eq!(space.to_config_string(), BUNDLED_HUE_PARTITION);
    }

    #[test]
    fn reserved_and_unknown_kinds() {
        let text = BUNDLED_HUE_PARTITION.replacen("triangular", "sigmoid", 1);
        assert!(matches!(
            FuzzyColorSpace::from_config_str(&text),
            Err(FuzzyConfigError::ReservedKind(_))
        ));
        let text = BUNDLED_HUE_PARTITION.replacen("triangular", "bell", 1);
        assert!(matches!(
            FuzzyColorSpace::from_config_str(&text),
            Err(FuzzyConfigError::UnknownKind(_))
        ));
    }

    #[test]
    fn arity_is_checked() {
        let text = BUNDLED_HUE_PARTITION.replacen("params = [300.0, 0.0, 30.0]", "params = [300.0, 0.0]", 1);
        assert!(matches!(
            FuzzyColorSpace::from_config_str(&text),
            Err(FuzzyConfigError::Arity { expected: 3, got: 2, .. })
        ));
    }

    #[test]
    fn broken_partition_is_rejected_in_ruspini_mode() {
        let text = BUNDLED_HUE_PARTITION.replacen("params = [300.0, 0.0, 30.0]", "params = [310.0, 0.0, 30.0]", 1);
        assert!(matches!(
            FuzzyColorSpace::from_config_str(&text),
            Err(FuzzyConfigError::Fuzzy(FuzzyError::NotRuspini { .. }))
        ));
        let relaxed = text.replace("partition = \"ruspini\"", "partition = \"none\"");
        assert!(FuzzyColorSpace::from_config_str(&relaxed).is_ok());
    }

    #[test]
    fn product_combiner_survives_a_round_trip() {
        let mut space = FuzzyColorSpace::bundled();
        space.colors[0].combiner = Combiner::Product;
        let again = FuzzyColorSpace::from_config_str(&space.to_config_string()).unwrap();
        assert_eq!(again, space);
    }
}
