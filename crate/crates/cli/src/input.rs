use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::Value;

use superrough::approximation::{ApproximationSpace, SpaceJson};
use superrough::lattice::{FiniteLattice, LatticeJson};
use superrough::partial::{ModelJson, PartialAlgebraModel, Theory};
use superrough::Error;

use crate::LatticeSource;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error("clause failure: {0}")]
    ClauseFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Json { .. } | CliError::Usage(_) => 2,
            CliError::ClauseFailure(_) => 5,
            CliError::Lib(e) => match e {
                Error::Parse(_)
                | Error::InvalidPoset(_)
                | Error::InvalidSpace(_)
                | Error::DuplicateElement(_)
                | Error::NotALattice { .. }
                | Error::SignatureMismatch(_)
                | Error::ArityMismatch { .. }
                | Error::UnboundVariable(_) => 2,
                Error::UnknownObject(_) | Error::UnknownElement(_) => 3,
                Error::SizeCapExceeded { .. } => 4,
                Error::RepresentationFailure { .. } => 6,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn space(path: &Path) -> CliResult<ApproximationSpace> {
    Ok(ApproximationSpace::from_json(&read_json::<SpaceJson>(path)?)?)
}

/// A model file, or any object carrying one under `model`.
pub fn model(path: &Path) -> CliResult<PartialAlgebraModel> {
    let mut value: Value = read_json(path)?;
    if let Some(inner) = value.get_mut("model") {
        value = inner.take();
    }
    let json: ModelJson = serde_json::from_value(value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(PartialAlgebraModel::from_json(&json)?)
}

pub fn theory(path: &Path) -> CliResult<Theory> {
    let name = path
        .file_stem()
        .map_or_else(|| "theory".into(), |s| s.to_string_lossy().into_owned());
    Ok(Theory::parse(&name, &read_text(path)?)?)
}

pub fn lattice(source: &LatticeSource, cap: usize) -> CliResult<FiniteLattice> {
    let l = match (&source.lattice, source.chain, source.boolean) {
        (Some(path), _, _) => read_json::<LatticeJson>(path)?.to_lattice()?,
        (_, Some(n), _) if n > 0 => FiniteLattice::chain(n),
        (_, _, Some(k)) if k < 7 => FiniteLattice::boolean(k),
        (_, _, Some(k)) => {
            return Err(Error::SizeCapExceeded {
                what: "lattice",
                size: 1 << k.min(63),
                cap,
            }
            .into())
        }
        _ => {
            return Err(CliError::Usage(
                "give --lattice, --chain N (N > 0) or --boolean K".into(),
            ))
        }
    };
    if l.len() > cap {
        return Err(Error::SizeCapExceeded {
            what: "lattice",
            size: l.len(),
            cap,
        }
        .into());
    }
    Ok(l)
}

/// Comma-separated object ids; surrounding braces and blanks are ignored.
pub fn id_list(text: &str) -> Vec<String> {
    text.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

pub enum VerifyInput {
    Space(PathBuf),
    Model(PathBuf),
    Lattice(PathBuf),
    Missing,
}

impl VerifyInput {
    pub fn new(space: Option<PathBuf>, model: Option<PathBuf>, lattice: Option<PathBuf>) -> Self {
        match (space, model, lattice) {
            (Some(p), _, _) => VerifyInput::Space(p),
            (_, Some(p), _) => VerifyInput::Model(p),
            (_, _, Some(p)) => VerifyInput::Lattice(p),
            _ => VerifyInput::Missing,
        }
    }
}
