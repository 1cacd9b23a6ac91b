//! Selection of the generating element `x` and of random positive elements.

use std::path::PathBuf;
use std::str::FromStr;

use algebra_spec::{AlgebraElement, WhaSpec};
use numeric_core::c64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use wha_engine::DistinguishedElements;

use crate::commands::CliError;

/// Choice of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XSelector {
    /// The canonical regular element `Ω`.
    Omega,
    /// The unit `1`.
    Unit,
    /// The trivial dual character `χ̂₁` read as an element of the algebra.
    ChiHat1,
    /// Coefficients read from a JSON file.
    File(PathBuf),
}

impl FromStr for XSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "omega" => XSelector::Omega,
            "unit" => XSelector::Unit,
            "chihat1" => XSelector::ChiHat1,
            path => XSelector::File(PathBuf::from(path)),
        })
    }
}

impl XSelector {
    /// Label used in reports.
    pub fn label(&self) -> String {
        match self {
            XSelector::Omega => "omega".into(),
            XSelector::Unit => "unit".into(),
            XSelector::ChiHat1 => "chihat1".into(),
            XSelector::File(p) => format!("file:{}", p.display()),
        }
    }

    /// The selected element.
    pub fn resolve(
        &self,
        spec: &WhaSpec,
        d: &DistinguishedElements,
    ) -> Result<AlgebraElement, CliError> {
        match self {
            XSelector::Omega => Ok(d.big_omega.clone()),
            XSelector::Unit => Ok(spec.unit()),
            XSelector::ChiHat1 => Ok(d.dual_characters_in_a[d.trivial_dual_sector].clone()),
            XSelector::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                parse_element(&text, spec.n())
            }
        }
    }
}

/// Parse a JSON array of `n` coefficients, each a number or a `[re, im]` pair.
pub fn parse_element(text: &str, n: usize) -> Result<AlgebraElement, CliError> {
    let bad = |why: &str| CliError::Input(format!("element file: {why}"));
    let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
    if items.len() != n {
        return Err(bad(&format!(
            "expected {n} coefficients, found {}",
            items.len()
        )));
    }
    let coeffs = items
        .iter()
        .map(|v| match v {
            Value::Number(x) => x.as_f64().map(|re| c64(re, 0.0)),
            Value::Array(p) if p.len() == 2 => Some(c64(p[0].as_f64()?, p[1].as_f64()?)),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| bad("coefficients must be numbers or [re, im] pairs"))?;
    Ok(AlgebraElement::new(coeffs))
}

/// `y*y` for `y` with coefficients uniform in the unit square, seeded by `seed`.
pub fn random_positive(spec: &WhaSpec, seed: u64) -> AlgebraElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = AlgebraElement::new(
        (0..spec.n())
            .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    );
    spec.mul(&spec.star(&y), &y)
}
