//! TOML configuration: resource paths, backend choice, pipeline
//! parameters and service settings.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::backend::LiveConfig;
use crate::rank::ScoreWeights;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file {0} not found")]
    Missing(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(String),
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

/// Resource locations. Unset entries fall back to the bundled resources.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(default)]
pub struct Paths {
    pub ontology: Vec<PathBuf>,
    pub wordnet: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    pub tag_lexicon: Option<PathBuf>,
    pub corpus_manifest: Option<PathBuf>,
    /// Prebuilt index written by `sieu index`; preferred over the manifest.
    pub corpus_index: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    #[default]
    Corpus,
    Live,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(default)]
pub struct BackendSection {
    pub kind: BackendKind,
    pub live: LiveConfig,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default)]
pub struct PipelineParams {
    pub q_max: usize,
    pub e_max: usize,
    pub depth: usize,
    pub siblings: bool,
    pub use_wordnet: bool,
    /// Results requested per refined query.
    pub k: usize,
    pub k_out: usize,
    pub theta: usize,
    pub k_min: usize,
    pub rrf_k: f64,
    pub ontology_scale: f64,
    pub wordnet_weight: f64,
    pub location_triggers: Option<Vec<String>>,
    /// Fetch each candidate page and score its meta keywords as snippet text.
    pub deep_scoring: bool,
    pub weights: ScoreWeights,
}

impl Default for PipelineParams {
    fn default() -> Self {
        Self {
            q_max: 16,
            e_max: 5,
            depth: 1,
            siblings: true,
            use_wordnet: true,
            k: 10,
            k_out: 20,
            theta: 1,
            k_min: 5,
            rrf_k: 60.0,
            ontology_scale: 0.9,
            wordnet_weight: 0.8,
            location_triggers: None,
            deep_scoring: false,
            weights: ScoreWeights::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default)]
pub struct ServiceSection {
    pub bind: String,
    pub port: u16,
    /// Origins allowed by CORS; empty allows any origin.
    pub cors_origins: Vec<String>,
}

impl Default for ServiceSection {
    fn default() -> Self {
        Self {
            bind: "127.0.0.1".into(),
            port: 8080,
            cors_origins: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default)]
pub struct Config {
    pub paths: Paths,
    pub backend: BackendSection,
    pub pipeline: PipelineParams,
    pub service: ServiceSection,
}

impl Config {
    /// Reads and validates a config file. Relative paths are resolved
    /// against the file's directory. Unknown keys are returned as warnings.
    pub fn load(path: &Path) -> Result<(Self, Vec<String>), ConfigError> {
        if !path.exists() {
            return Err(ConfigError::Missing(path.to_path_buf()));
        }
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let (mut config, warnings) = Self::parse(&text)?;
        config.resolve_paths(path.parent().unwrap_or(Path::new(".")));
        config.validate()?;
        for w in &warnings {
            log::warn!("{}: {w}", path.display());
        }
        Ok((config, warnings))
    }

    /// Parses TOML text without touching the filesystem.
    pub fn parse(text: &str) -> Result<(Self, Vec<String>), ConfigError> {
        let mut warnings = Vec::new();
        let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        let config: Config = serde_ignored::deserialize(de, |key| warnings.push(format!("unknown key `{key}`")))
            .map_err(|e| ConfigError::Syntax(e.to_string()))?;
        config.validate_values()?;
        Ok((config, warnings))
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        let paths = &mut self.paths;
        paths.ontology.iter_mut().for_each(fix);
        for p in [
            &mut paths.wordnet,
            &mut paths.stoplist,
            &mut paths.tag_lexicon,
            &mut paths.corpus_manifest,
            &mut paths.corpus_index,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
    }

    fn validate_values(&self) -> Result<(), ConfigError> {
        let p = &self.pipeline;
        if let Some(name) = p.weights.invalid() {
            return Err(ConfigError::invalid(
                &format!("pipeline.weights.{name}"),
                "weights must be finite and non-negative",
            ));
        }
        for (key, v) in [
            ("pipeline.q_max", p.q_max),
            ("pipeline.e_max", p.e_max),
            ("pipeline.k", p.k),
            ("pipeline.k_out", p.k_out),
        ] {
            if v == 0 {
                return Err(ConfigError::invalid(key, "must be at least 1"));
            }
        }
        for (key, v) in [
            ("pipeline.ontology_scale", p.ontology_scale),
            ("pipeline.wordnet_weight", p.wordnet_weight),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(ConfigError::invalid(key, "must lie strictly between 0 and 1"));
            }
        }
        if !(p.rrf_k.is_finite() && p.rrf_k >= 0.0) {
            return Err(ConfigError::invalid(
                "pipeline.rrf_k",
                "must be finite and non-negative",
            ));
        }
        if self.backend.kind == BackendKind::Live && self.backend.live.endpoint_template.is_empty() {
            return Err(ConfigError::invalid(
                "backend.live.endpoint_template",
                "required for the live backend",
            ));
        }
        Ok(())
    }

    /// Checks value ranges and that every referenced path exists.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.validate_values()?;
        let paths = &self.paths;
        let mut named: Vec<(&str, &PathBuf)> = paths.ontology.iter().map(|p| ("paths.ontology", p)).collect();
        for (key, p) in [
            ("paths.wordnet", &paths.wordnet),
            ("paths.stoplist", &paths.stoplist),
            ("paths.tag_lexicon", &paths.tag_lexicon),
            ("paths.corpus_manifest", &paths.corpus_manifest),
            ("paths.corpus_index", &paths.corpus_index),
        ] {
            if let Some(p) = p {
                named.push((key, p));
            }
        }
        for (key, p) in named {
            if !p.exists() {
                return Err(ConfigError::invalid(key, format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }
}
