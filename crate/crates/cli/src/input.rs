//! Reading structure, group and instance files.

use std::path::{Path, PathBuf};

use nilp2_core::format::{parse_group, parse_instance, parse_structure, GroupData};
use nilp2_core::groups::group_from_bilinear;
use nilp2_core::{BilinearStructure, Class2Group, StarInstance, TableGroup};
use thiserror::Error;

use crate::report::InputDigest;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: nilp2_core::Error },
    #[error(transparent)]
    Core(#[from] nilp2_core::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A loaded file together with its digest.
pub struct Loaded<T> {
    pub value: T,
    pub digest: InputDigest,
}

fn read(path: &Path) -> CliResult<(String, InputDigest)> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let digest = InputDigest::of(path, &bytes);
    let text = String::from_utf8(bytes).map_err(|_| {
        CliError::Input { path: path.into(), source: nilp2_core::Error::Parse { line: 1, msg: "not UTF-8".into() } }
    })?;
    Ok((text, digest))
}

fn first_token(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

/// Either kind of group file.
pub enum AnyGroup {
    Class2(Class2Group),
    Table(TableGroup),
}

impl AnyGroup {
    pub fn to_table(&self) -> TableGroup {
        match self {
            AnyGroup::Class2(g) => g.to_table(),
            AnyGroup::Table(t) => t.clone(),
        }
    }
}

fn in_file<T>(path: &Path, r: nilp2_core::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::Input { path: path.into(), source })
}

/// A structure file, or the structure of a `bilinear` group file.
pub fn load_structure(path: &Path) -> CliResult<Loaded<BilinearStructure>> {
    let (text, digest) = read(path)?;
    let value = match first_token(&text) {
        Some("bilinear") | Some("table") => match in_file(path, parse_group(&text))? {
            GroupData::Bilinear(s) => s,
            GroupData::Table(_) => return Err(usage(format!("{}: expected a bilinear structure, found a table", path.display()))),
        },
        _ => in_file(path, parse_structure(&text))?,
    };
    Ok(Loaded { value, digest })
}

pub fn load_any_group(path: &Path) -> CliResult<Loaded<AnyGroup>> {
    let (text, digest) = read(path)?;
    let value = match first_token(&text) {
        Some("bilinear") | Some("table") => match in_file(path, parse_group(&text))? {
            GroupData::Bilinear(s) => AnyGroup::Class2(in_file(path, group_from_bilinear(&s))?),
            GroupData::Table(t) => AnyGroup::Table(t),
        },
        _ => AnyGroup::Class2(in_file(path, parse_structure(&text).and_then(|s| group_from_bilinear(&s)))?),
    };
    Ok(Loaded { value, digest })
}

pub fn load_class2(path: &Path) -> CliResult<Loaded<Class2Group>> {
    let loaded = load_structure(path)?;
    let value = in_file(path, group_from_bilinear(&loaded.value))?;
    Ok(Loaded { value, digest: loaded.digest })
}

pub fn load_instance(path: &Path, g: &Class2Group) -> CliResult<Loaded<StarInstance>> {
    let (text, digest) = read(path)?;
    let value = in_file(path, parse_instance(&text, g.p(), g.n(), g.d()))?;
    Ok(Loaded { value, digest })
}
