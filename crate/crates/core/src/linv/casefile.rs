//! The JSON case-file schema.  Everything is validated before any p-adic
//! work, and errors name the offending key.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::case::{CaseData, CaseSpec, CaseType, EigenCharacter, SyntheticSpec};
use super::LinvError;
use crate::galois::ClassFunction;
use crate::group::FiniteGroup;
use crate::numfield::{parse_rational, AutomorphismGroup, NumFieldError, NumberField};

pub const DEFAULT_PRECISION: u32 = 40;
pub const DEFAULT_GUARD: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CaseFileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed case file: {0}")]
    Syntax(String),
    #[error("{key}: {message}")]
    Key { key: String, message: String },
}

fn key_err(key: impl Into<String>, message: impl std::fmt::Display) -> CaseFileError {
    CaseFileError::Key { key: key.into(), message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub case_type: CaseType,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<AutomorphismSpec>,
    pub characters: CharacterSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugation_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<SyntheticFile>,
}

/// Q(θ, √d) with θ a root of f; coefficients constant term first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub d: i64,
    pub f_coeffs: Vec<i64>,
}

/// Images of θ and √d as coordinates θ^i·s^j, i fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub theta_image: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_image: Option<Vec<String>>,
}

/// One character value Σ c·ζ_m^k at a group element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharValue {
    pub element: usize,
    pub m: u32,
    pub terms: Vec<(i64, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<CharValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<CharValue>>,
    pub beta_over_alpha_exponent: i64,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<String>>,
    pub pi: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Strategy {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_order: Option<Vec<usize>>,
}

/// Group data without a number field; log vectors are drawn from the seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticFile {
    pub seed: u64,
    pub permutations: Vec<Vec<usize>>,
    pub frobenius: usize,
}

/// A validated case ready to build.
#[derive(Clone, Debug)]
pub enum LoadedCase {
    Field(CaseSpec),
    Synthetic(SyntheticSpec),
}

impl LoadedCase {
    pub fn build(&self) -> Result<CaseData, LinvError> {
        match self {
            LoadedCase::Field(s) => s.build(),
            LoadedCase::Synthetic(s) => s.build(),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn class_function(n: usize, values: &[CharValue], key: &str) -> Result<ClassFunction, CaseFileError> {
    let mut entries = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        if v.element >= n {
            return Err(key_err(format!("{key}[{i}].element"), format!("{} is not an index below {n}", v.element)));
        }
        let mut terms = Vec::with_capacity(v.terms.len());
        for (j, (e, c)) in v.terms.iter().enumerate() {
            let c = parse_rational(c).ok_or_else(|| key_err(format!("{key}[{i}].terms[{j}]"), format!("bad rational {c:?}")))?;
            terms.push((*e, c));
        }
        entries.push((v.element, v.m, terms));
    }
    ClassFunction::from_entries(n, &entries).map_err(|e| key_err(key, e))
}

fn automorphism_key(e: NumFieldError) -> CaseFileError {
    match e {
        NumFieldError::BadAutomorphism { index, reason } => key_err(format!("automorphisms[{index}]"), reason),
        NumFieldError::Duplicate(i, j) => key_err(format!("automorphisms[{j}]"), format!("duplicates automorphism {i}")),
        NumFieldError::NotClosed(i, j) => key_err("automorphisms", format!("composition of {i} and {j} is missing")),
        e => key_err("automorphisms", e),
    }
}

impl CaseFile {
    pub fn from_json(text: &str) -> Result<Self, CaseFileError> {
        serde_json::from_str(text).map_err(|e| CaseFileError::Syntax(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CaseFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CaseFileError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Validates every key; flags override the file, which overrides the defaults.
    pub fn resolve(&self, precision: Option<u32>, guard: Option<u32>) -> Result<LoadedCase, CaseFileError> {
        if !is_prime(self.p) || self.p == 2 {
            return Err(key_err("p", format!("{} is not an odd prime", self.p)));
        }
        let precision = precision.or(self.precision).unwrap_or(DEFAULT_PRECISION);
        let guard = guard.or(self.guard).unwrap_or(DEFAULT_GUARD);
        if precision == 0 {
            return Err(key_err("precision", "must be positive"));
        }
        if 2 * guard >= precision {
            return Err(key_err("guard", format!("2·{guard} must be below the precision {precision}")));
        }
        if self.characters.m == 0 {
            return Err(key_err("characters.m", "must be positive"));
        }
        let eta = EigenCharacter { exponent: self.characters.beta_over_alpha_exponent, m: self.characters.m };
        let sigma_order = self.strategy.as_ref().and_then(|s| s.sigma_order.clone());
        if self.case_type == CaseType::Greenberg23 {
            return Err(key_err("case_type", "greenberg23 is run by its own subcommand"));
        }
        if let Some(syn) = &self.synthetic {
            if self.case_type != CaseType::Exotic {
                return Err(key_err("synthetic", "synthetic data is only supported for exotic cases"));
            }
            for k in ["field", "automorphisms", "units"] {
                let present = match k {
                    "field" => self.field.is_some(),
                    "automorphisms" => !self.automorphisms.is_empty(),
                    _ => self.units.is_some(),
                };
                if present {
                    return Err(key_err(k, "not allowed together with synthetic"));
                }
            }
            let group = FiniteGroup::from_permutations(&syn.permutations)
                .map_err(|e| key_err("synthetic.permutations", e))?;
            let n = group.order();
            if syn.frobenius >= n {
                return Err(key_err("synthetic.frobenius", format!("{} is not an index below {n}", syn.frobenius)));
            }
            let chi = self.characters.chi.as_ref().ok_or_else(|| key_err("characters.chi", "required for exotic cases"))?;
            let chi = class_function(n, chi, "characters.chi")?;
            self.check_conjugation(n)?;
            return Ok(LoadedCase::Synthetic(SyntheticSpec {
                p: self.p,
                precision,
                guard,
                group,
                frobenius: syn.frobenius,
                chi,
                eta,
                conjugation: self.conjugation_index,
                seed: syn.seed,
                sigma_order,
            }));
        }

        let fs = self.field.as_ref().ok_or_else(|| key_err("field", "required unless synthetic"))?;
        let field = NumberField::from_i64(fs.d, &fs.f_coeffs).map_err(|e| key_err("field", e))?;
        let images: Vec<(Vec<String>, Option<Vec<String>>)> =
            self.automorphisms.iter().map(|a| (a.theta_image.clone(), a.s_image.clone())).collect();
        let group = AutomorphismGroup::parse(&field, &images).map_err(automorphism_key)?;
        let n = group.order();
        let (name, values) = match self.case_type {
            CaseType::Exotic => ("characters.chi", &self.characters.chi),
            _ => ("characters.psi", &self.characters.psi),
        };
        let values = values.as_ref().ok_or_else(|| key_err(name, "required for this case type"))?;
        let character = class_function(n, values, name)?;
        let units = self.units.as_ref().ok_or_else(|| key_err("units", "required unless synthetic"))?;
        let element = |v: &[String], key: &str| {
            field.parse(v).map_err(|e| match e {
                NumFieldError::Parse { index, text } => key_err(format!("{key}[{index}]"), format!("bad rational {text:?}")),
                e => key_err(key, e),
            })
        };
        let pi = element(&units.pi, "units.pi")?;
        let epsilon = units.epsilon.as_ref().map(|e| element(e, "units.epsilon")).transpose()?;
        self.check_conjugation(n)?;
        Ok(LoadedCase::Field(CaseSpec {
            case_type: self.case_type,
            p: self.p,
            precision,
            guard,
            group,
            character,
            eta,
            conjugation: self.conjugation_index,
            epsilon,
            pi,
            sigma_order,
        }))
    }

    fn check_conjugation(&self, n: usize) -> Result<(), CaseFileError> {
        match self.conjugation_index {
            Some(c) if c >= n => Err(key_err("conjugation_index", format!("{c} is not an index below {n}"))),
            _ => Ok(()),
        }
    }
}
