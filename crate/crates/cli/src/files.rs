//! On-disk JSON formats for instances, flows and programs.

use std::fs;
use std::path::Path;

use relaxgap_core::valleys::{FlowArc, TspInstance};
use relaxgap_core::LinearProgram;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    #[serde(flatten)]
    pub instance: TspInstance,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowFile {
    pub version: u32,
    pub arcs: Vec<FlowArc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramFile {
    pub version: u32,
    pub program: LinearProgram,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Format { path: path.to_owned(), message: e.to_string() })
}

fn check_version(path: &Path, version: u32) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::Format {
            path: path.to_owned(),
            message: format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        });
    }
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<TspInstance, CliError> {
    let file: InstanceFile = read(path)?;
    check_version(path, file.version)?;
    file.instance.validate()?;
    Ok(file.instance)
}

pub fn load_flow(path: &Path) -> Result<Vec<FlowArc>, CliError> {
    let file: FlowFile = read(path)?;
    check_version(path, file.version)?;
    Ok(file.arcs)
}

pub fn load_program(path: &Path) -> Result<LinearProgram, CliError> {
    let file: ProgramFile = read(path)?;
    check_version(path, file.version)?;
    file.program.validate()?;
    Ok(file.program)
}
