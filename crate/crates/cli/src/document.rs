//! JSON documents describing a model complex and, optionally, its involution.
//!
//! ```json
//! {
//!   "name": "figure8",
//!   "generators": [{"name": "x", "i": 0, "j": 0, "maslov": 0}, ...],
//!   "differential": {"a": [["b", 0], ["c", 0]], "b": [["e", 1]]},
//!   "involution": {"x": [["x", 0]], ...},
//!   "metadata": {"tau": 0, "provenance": "thin"}
//! }
//! ```
//!
//! `maslov` may be omitted on every generator at once. The gradings are then
//! `i + j - tau` if `metadata.tau` is given, and otherwise fixed by the
//! differential and normalized so that `H(B+)` starts in grading zero.

use std::collections::{BTreeMap, HashMap};

use hfi_core::involution::{verify_involution, FilteredMorphism, InvolutionReport, UMap};
use hfi_core::knot::{
    assign_relative_maslov, normalize_maslov, validate_complex, DiffTerm, Generator, ModelComplex, ValidationReport,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub i: i64,
    pub j: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maslov: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<(String, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<BTreeMap<String, Vec<(String, i64)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaslovSource {
    Given,
    FromTau,
    Normalized,
}

impl MaslovSource {
    pub fn label(self) -> &'static str {
        match self {
            MaslovSource::Given => "given",
            MaslovSource::FromTau => "i + j - tau",
            MaslovSource::Normalized => "inferred and normalized",
        }
    }
}

/// A document turned into a complex, with its validation results.
#[derive(Clone, Debug)]
pub struct LoadedDocument {
    pub complex: ModelComplex,
    pub involution: Option<FilteredMorphism>,
    pub maslov_source: MaslovSource,
    pub validation: ValidationReport,
    pub involution_report: Option<InvolutionReport>,
}

impl LoadedDocument {
    pub fn is_valid(&self) -> bool {
        self.validation.is_ok() && self.involution_report.as_ref().is_none_or(InvolutionReport::is_valid)
    }
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    /// Pretty JSON, terminated by a newline.
    pub fn emit(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents always serialize");
        out.push('\n');
        out
    }

    pub fn from_model(c: &ModelComplex, involution: Option<&FilteredMorphism>) -> Self {
        let name_of = |k: usize| c.generator(k).name.clone();
        let generators = c
            .generators()
            .iter()
            .map(|g| GeneratorEntry { name: g.name.clone(), i: g.i, j: g.j, maslov: Some(g.maslov) })
            .collect();
        let differential = (0..c.len())
            .filter(|&k| !c.differential(k).is_empty())
            .map(|k| (name_of(k), c.differential(k).iter().map(|t| (name_of(t.target), t.upower)).collect()))
            .collect();
        let involution = involution.map(|iota| {
            (0..c.len())
                .map(|k| (name_of(k), iota.map.image(k).iter().map(|&(t, u)| (name_of(t), u)).collect()))
                .collect()
        });
        ComplexDocument {
            name: c.name().to_string(),
            generators,
            differential,
            involution,
            metadata: Some(Metadata { tau: c.tau(), provenance: Some(c.provenance().label().to_string()) }),
        }
    }

    fn index(&self) -> Result<HashMap<&str, usize>, CliError> {
        let mut index = HashMap::new();
        for (k, g) in self.generators.iter().enumerate() {
            if index.insert(g.name.as_str(), k).is_some() {
                return Err(CliError::Document(format!("duplicate generator {:?}", g.name)));
            }
        }
        Ok(index)
    }

    fn tau(&self) -> Option<i64> {
        self.metadata.as_ref().and_then(|m| m.tau)
    }

    /// Build the complex and involution, then run `validate_complex` and
    /// `verify_involution`. Structural problems are errors; validation
    /// failures are recorded in the result.
    pub fn load(&self) -> Result<LoadedDocument, CliError> {
        let index = self.index()?;
        let lookup = |name: &str, context: &str| {
            index.get(name).copied().ok_or_else(|| CliError::Document(format!("{context} names unknown generator {name:?}")))
        };

        let mut differential = vec![Vec::new(); self.generators.len()];
        for (source, terms) in &self.differential {
            let s = lookup(source, "differential")?;
            for (target, upower) in terms {
                differential[s].push(DiffTerm::new(lookup(target, &format!("differential of {source:?}"))?, *upower));
            }
        }

        let given = self.generators.iter().filter(|g| g.maslov.is_some()).count();
        let source = match (given, self.tau()) {
            (n, _) if n == self.generators.len() => MaslovSource::Given,
            (0, Some(_)) => MaslovSource::FromTau,
            (0, None) => MaslovSource::Normalized,
            _ => return Err(CliError::Document("maslov must be given for all generators or for none".into())),
        };
        let tau = self.tau().unwrap_or(0);
        let generators: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.i, g.j, g.maslov.unwrap_or(g.i + g.j - tau)))
            .collect();
        let mut complex = ModelComplex::new(self.name.clone(), generators, differential, self.tau())?;
        if source == MaslovSource::Normalized {
            let relative = assign_relative_maslov(&complex, []).map_err(|e| {
                CliError::Document(format!("{e}; give maslov gradings or metadata.tau"))
            })?;
            let regraded = complex
                .generators()
                .iter()
                .zip(relative)
                .map(|(g, m)| Generator::new(g.name.clone(), g.i, g.j, m))
                .collect();
            let diff = (0..complex.len()).map(|k| complex.differential(k).to_vec()).collect();
            complex = normalize_maslov(&ModelComplex::new(self.name.clone(), regraded, diff, None)?)?;
        }

        let involution = match &self.involution {
            None => None,
            Some(block) => {
                let mut terms = vec![Vec::new(); complex.len()];
                for (source, images) in block {
                    let s = lookup(source, "involution")?;
                    for (target, upower) in images {
                        terms[s].push((lookup(target, &format!("involution of {source:?}"))?, *upower));
                    }
                }
                Some(FilteredMorphism::involution(UMap::from_terms(terms)))
            }
        };
        let validation = validate_complex(&complex);
        let involution_report = match &involution {
            Some(iota) if validation.is_ok() => Some(verify_involution(&complex, iota)),
            _ => None,
        };
        Ok(LoadedDocument { complex, involution, maslov_source: source, validation, involution_report })
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(cut) => message[..cut].to_string(),
        None => message.to_string(),
    }
}

/// Parse and validate a document. Validation failures become errors.
pub fn parse_complex_file(text: &str) -> Result<LoadedDocument, CliError> {
    let loaded = ComplexDocument::parse(text)?.load()?;
    if !loaded.validation.is_ok() {
        return Err(CliError::Document(format!("complex fails validation: {}", loaded.validation)));
    }
    if let Some(report) = loaded.involution_report.as_ref().filter(|r| !r.is_valid()) {
        return Err(CliError::Document(format!("involution fails verification: {}", report.to_string().replace('\n', "; "))));
    }
    Ok(loaded)
}
