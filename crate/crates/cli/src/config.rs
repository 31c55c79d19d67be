//! Effective run configuration: plain-text `key=value` config files,
//! overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use qbelt::counting::PositivityConvention;
use qbelt::DynkinType;

use crate::CliError;

/// Parsed `key=value` file; blank lines and `#` comments are ignored.
pub fn load_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "config {}:{}: expected key=value, got `{line}`",
                path.display(),
                lineno + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Fallback chain: explicit flag, then config file, then default.
pub struct Settings {
    file: BTreeMap<String, String>,
}

impl Settings {
    pub fn new(file: BTreeMap<String, String>) -> Self {
        Settings { file }
    }

    pub fn string(&self, flag: Option<&str>, key: &str) -> Option<String> {
        flag.map(str::to_string)
            .or_else(|| self.file.get(key).cloned())
    }

    pub fn parse<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file.get(key) {
            Some(raw) => raw
                .parse::<T>()
                .map_err(|_| CliError::Config(format!("config key {key}: bad value `{raw}`"))),
            None => Ok(default),
        }
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.file.get(key) {
            Some(raw) => raw
                .parse::<bool>()
                .map_err(|_| CliError::Config(format!("config key {key}: bad boolean `{raw}`"))),
            None => Ok(false),
        }
    }

    pub fn dynkin(&self, flag: Option<&str>) -> Result<DynkinType, CliError> {
        let raw = self
            .string(flag, "type")
            .ok_or_else(|| CliError::Config("--type is required".into()))?;
        DynkinType::parse(&raw).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn convention(&self, flag: Option<&str>) -> Result<PositivityConvention, CliError> {
        match self
            .string(flag, "convention")
            .unwrap_or_else(|| "support".into())
            .as_str()
        {
            "support" => Ok(PositivityConvention::Support),
            "cutoff" => Ok(PositivityConvention::Cutoff),
            other => Err(CliError::Config(format!(
                "unknown positivity convention `{other}` (use support or cutoff)"
            ))),
        }
    }
}

/// Parse `alpha,i,count;alpha,i,count;...` triples.
pub fn parse_n_vector(raw: &str, rank: usize) -> Result<qbelt::NVector, CliError> {
    let mut pairs = Vec::new();
    for chunk in raw.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let fields: Vec<&str> = chunk.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(CliError::Config(format!(
                "bad n entry `{chunk}`: expected alpha,i,count"
            )));
        }
        let alpha: usize = fields[0]
            .parse()
            .map_err(|_| CliError::Config(format!("bad node `{}`", fields[0])))?;
        let i: usize = fields[1]
            .parse()
            .map_err(|_| CliError::Config(format!("bad string length `{}`", fields[1])))?;
        let count: u64 = fields[2]
            .parse()
            .map_err(|_| CliError::Config(format!("bad count `{}`", fields[2])))?;
        if alpha < 1 || alpha > rank {
            return Err(CliError::Config(format!(
                "node {alpha} out of range 1..={rank}"
            )));
        }
        pairs.push((alpha, i, count));
    }
    qbelt::NVector::from_pairs(pairs).map_err(|e| CliError::Config(e.to_string()))
}

/// Parse a comma-separated dominant weight with exactly `rank` labels.
pub fn parse_weight(raw: &str, rank: usize) -> Result<qbelt::Weight, CliError> {
    let labels: Result<Vec<i64>, _> = raw.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let labels = labels.map_err(|_| CliError::Config(format!("bad weight `{raw}`")))?;
    if labels.len() != rank {
        return Err(CliError::Config(format!(
            "weight `{raw}` has {} labels for rank {rank}",
            labels.len()
        )));
    }
    qbelt::Weight::new(labels).map_err(|e| CliError::Config(e.to_string()))
}
