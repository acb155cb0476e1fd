//! Run configuration: a TOML file describing the input datasets
//! (pronouncing dictionary, frequency corpus, norm tables with their
//! column schemas) and the surprisal options. Relative paths resolve
//! against the directory containing the config file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{ColumnRef, NormLayout, NormSchema, NormTarget};
use crate::surprisal::{Smoothing, SurprisalOptions, Weighting};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config {path} does not parse")]
    Parse {
        path: PathBuf,
        #[source]
        source: Box<toml::de::Error>,
    },
    #[error("config norm table {name:?}: {reason}")]
    InvalidNormTable { name: String, reason: String },
    #[error("config: {reason}")]
    Invalid { reason: String },
}

/// Frequency corpus location and column names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyConfig {
    pub path: PathBuf,
    pub word_column: String,
    pub count_column: String,
}

/// Norm table layout selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutKind {
    Wide,
    Long,
}

impl fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayoutKind::Wide => write!(f, "wide"),
            LayoutKind::Long => write!(f, "long"),
        }
    }
}

/// One norm table. `columns` (wide) or `keys` (long) map source
/// column headers or key strings to lexicon field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    pub name: String,
    pub path: PathBuf,
    pub layout: LayoutKind,
    /// `"tab"`, `"comma"`, or a single character; autodetected from
    /// the first line when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delimiter: Option<String>,
    /// Word column: a header name, or a zero-based index for
    /// headerless long tables.
    pub word_column: ColumnRef,
    /// Wide layout: source column -> lexicon field.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub columns: BTreeMap<String, String>,
    /// Long layout only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key_column: Option<ColumnRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_column: Option<ColumnRef>,
    /// Long layout: key string -> lexicon field.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub keys: BTreeMap<String, String>,
    /// Long layout: whether the file starts with a header row
    /// (default true). Wide tables always have one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub has_header: Option<bool>,
}

fn parse_target(name: &str, table: &str) -> Result<NormTarget, ConfigError> {
    NormTarget::from_name(name).ok_or_else(|| {
        let valid = [
            "Morpheme_Length",
            "PoS",
            "Iconicity_Rating",
            "Humor",
            "NRC_Valence",
            "G_Valence",
            "Recall_Accuracy",
        ]
        .map(str::to_string);
        let mut valid = valid.to_vec();
        valid.extend(crate::ingest::Emotion::ALL.map(|e| e.name().to_string()));
        ConfigError::InvalidNormTable {
            name: table.to_string(),
            reason: format!("unknown lexicon field {name:?}; valid fields: {}", valid.join(", ")),
        }
    })
}

fn parse_delimiter(raw: &str, table: &str) -> Result<u8, ConfigError> {
    match raw {
        "tab" => Ok(b'\t'),
        "comma" => Ok(b','),
        s if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        other => Err(ConfigError::InvalidNormTable {
            name: table.to_string(),
            reason: format!(
                "delimiter must be \"tab\", \"comma\", or one ASCII character, got {other:?}"
            ),
        }),
    }
}

impl NormConfig {
    fn invalid(&self, reason: impl Into<String>) -> ConfigError {
        ConfigError::InvalidNormTable {
            name: self.name.clone(),
            reason: reason.into(),
        }
    }

    /// Translate to the parsing schema, rejecting inconsistent
    /// layout/field combinations.
    pub fn to_schema(&self) -> Result<NormSchema, ConfigError> {
        let delimiter = match &self.delimiter {
            Some(raw) => Some(parse_delimiter(raw, &self.name)?),
            None => None,
        };
        let layout = match self.layout {
            LayoutKind::Wide => {
                if self.key_column.is_some() || self.value_column.is_some() {
                    return Err(
                        self.invalid("key_column/value_column are only valid for layout = \"long\"")
                    );
                }
                if !self.keys.is_empty() {
                    return Err(self.invalid("keys is only valid for layout = \"long\""));
                }
                if self.has_header == Some(false) {
                    return Err(self.invalid("wide tables always have a header row"));
                }
                if self.columns.is_empty() {
                    return Err(self.invalid("wide tables need a [columns] mapping"));
                }
                let word_column = match &self.word_column {
                    ColumnRef::Name(name) => name.clone(),
                    ColumnRef::Index(_) => {
                        return Err(self.invalid(
                            "wide tables reference the word column by header name, not index",
                        ))
                    }
                };
                let mut columns = Vec::with_capacity(self.columns.len());
                for (source, target) in &self.columns {
                    columns.push((source.clone(), parse_target(target, &self.name)?));
                }
                NormLayout::Wide { word_column, columns }
            }
            LayoutKind::Long => {
                if !self.columns.is_empty() {
                    return Err(self.invalid("columns is only valid for layout = \"wide\""));
                }
                let key_column = self
                    .key_column
                    .clone()
                    .ok_or_else(|| self.invalid("long tables need key_column"))?;
                let value_column = self
                    .value_column
                    .clone()
                    .ok_or_else(|| self.invalid("long tables need value_column"))?;
                if self.keys.is_empty() {
                    return Err(self.invalid("long tables need a [keys] mapping"));
                }
                let mut keys = Vec::with_capacity(self.keys.len());
                for (key, target) in &self.keys {
                    keys.push((key.clone(), parse_target(target, &self.name)?));
                }
                NormLayout::Long {
                    has_header: self.has_header.unwrap_or(true),
                    word_column: self.word_column.clone(),
                    key_column,
                    value_column,
                    keys,
                }
            }
        };
        Ok(NormSchema {
            name: self.name.clone(),
            layout,
            delimiter,
        })
    }
}

/// Surprisal options as they appear in config files. All fields have
/// defaults so the whole section can be omitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct SurprisalConfig {
    pub weighting: Weighting,
    pub boundaries: bool,
    pub smoothing: Smoothing,
    pub leave_one_out: bool,
}

impl SurprisalConfig {
    pub fn to_options(self) -> SurprisalOptions {
        SurprisalOptions {
            weighting: self.weighting,
            boundaries: self.boundaries,
            smoothing: self.smoothing,
            leave_one_out: self.leave_one_out,
        }
    }
}

/// The full run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Pronouncing dictionary path.
    pub dictionary: PathBuf,
    /// Phoneme inventory override; the built-in inventory when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inventory: Option<PathBuf>,
    pub frequency: FrequencyConfig,
    /// Norm tables, applied in order; later tables override earlier
    /// values for the same word and field.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub norms: Vec<NormConfig>,
    #[serde(default)]
    pub surprisal: SurprisalConfig,
}

impl RunConfig {
    /// Parse config text without touching the filesystem.
    pub fn parse(text: &str, origin: &Path) -> Result<RunConfig, ConfigError> {
        let config: RunConfig = toml::from_str(text).map_err(|source| ConfigError::Parse {
            path: origin.to_path_buf(),
            source: Box::new(source),
        })?;
        let mut seen = std::collections::BTreeSet::new();
        for norm in &config.norms {
            if !seen.insert(norm.name.as_str()) {
                return Err(ConfigError::Invalid {
                    reason: format!("two norm tables share the name {:?}", norm.name),
                });
            }
        }
        Ok(config)
    }

    /// Load a config file and resolve its relative paths against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = RunConfig::parse(&text, path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        config.resolve_paths(base);
        Ok(config)
    }

    /// Make every dataset path absolute relative to `base`.
    pub fn resolve_paths(&mut self, base: &Path) {
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        resolve(&mut self.dictionary);
        if let Some(inventory) = &mut self.inventory {
            resolve(inventory);
        }
        resolve(&mut self.frequency.path);
        for norm in &mut self.norms {
            resolve(&mut norm.path);
        }
    }

    /// Every dataset file the config references, with its role.
    pub fn input_paths(&self) -> Vec<(String, &Path)> {
        let mut paths = vec![("dictionary".to_string(), self.dictionary.as_path())];
        if let Some(inventory) = &self.inventory {
            paths.push(("inventory".to_string(), inventory.as_path()));
        }
        paths.push(("frequency".to_string(), self.frequency.path.as_path()));
        for norm in &self.norms {
            paths.push((format!("norms.{}", norm.name), norm.path.as_path()));
        }
        paths
    }

    /// Validate beyond parsing: norm schemas must be coherent and
    /// every referenced file must exist. Returns every problem found,
    /// empty when the config is usable.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for norm in &self.norms {
            if let Err(err) = norm.to_schema() {
                problems.push(err.to_string());
            }
        }
        for (role, path) in self.input_paths() {
            if !path.is_file() {
                problems.push(format!("{role}: file not found: {}", path.display()));
            }
        }
        problems
    }
}
