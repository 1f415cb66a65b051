//! Group description files.

use serde::{Deserialize, Serialize};

use h1loc_core::matgroup::{IntegerGroup, MatrixGroup};
use h1loc_core::modring::{IntMatrix, ModMatrix, Modulus};
use h1loc_core::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulusSpec {
    pub p: i64,
    pub n: u32,
}

/// `{"modulus": {"p", "n"}, "dimension", "generators", "label"?}`; entries
/// are arbitrary integers and are reduced on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub modulus: ModulusSpec,
    pub dimension: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn check_square(dimension: usize, generators: &[Vec<Vec<i64>>]) -> Result<()> {
    if dimension == 0 {
        return Err(Error::Dimension("dimension must be positive".into()));
    }
    for (i, g) in generators.iter().enumerate() {
        if g.len() != dimension || g.iter().any(|row| row.len() != dimension) {
            return Err(Error::Dimension(format!(
                "generator {i} is not {dimension}x{dimension}"
            )));
        }
    }
    Ok(())
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: GroupSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        spec.matrices()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::new(self.modulus.p, self.modulus.n)
    }

    /// Reduced generators, each checked to be invertible.
    pub fn matrices(&self) -> Result<Vec<ModMatrix>> {
        let m = self.modulus()?;
        check_square(self.dimension, &self.generators)?;
        self.generators
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                let g = ModMatrix::from_rows(m, rows)?;
                if !g.is_invertible() {
                    return Err(Error::NotInvertible(i));
                }
                Ok(g)
            })
            .collect()
    }

    pub fn group(&self, cap: usize) -> Result<MatrixGroup> {
        MatrixGroup::enumerate(self.modulus()?, self.dimension, self.matrices()?, cap)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegerGroupSpecFile {
    pub dimension: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl IntegerGroupSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: IntegerGroupSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        check_square(spec.dimension, &spec.generators)?;
        Ok(spec)
    }

    pub fn group(&self, default_cap: usize) -> Result<IntegerGroup> {
        let gens = self
            .generators
            .iter()
            .map(|rows| {
                let rows: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|r| r.iter().map(|&a| a as i128).collect())
                    .collect();
                IntMatrix::from_rows(&rows)
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerGroup::enumerate(self.dimension, gens, self.cap.unwrap_or(default_cap))
    }
}
