//! Data tables, either bundled or read from a directory.
//!
//! A data directory may hold any of `catalog.json`, `quat.json` and
//! `facts.json`; missing files fall back to the bundled copies.

use std::fs;
use std::path::{Path, PathBuf};

use gavt_core::classify::{Classifier, Facts};
use gavt_core::groups::catalog::Catalog;
use gavt_core::quat::QuatData;
use gavt_core::{Error, Result};

pub const DATA_ENV: &str = "GAVT_DATA";

#[derive(Clone, Debug, Default)]
pub struct DataDir {
    pub path: Option<PathBuf>,
}

impl DataDir {
    pub fn new(path: Option<PathBuf>) -> DataDir {
        DataDir { path }
    }

    fn read(&self, name: &str) -> Result<Option<String>> {
        let Some(dir) = &self.path else { return Ok(None) };
        let file = dir.join(name);
        if !file.exists() {
            return Ok(None);
        }
        fs::read_to_string(&file).map(Some).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))
    }

    pub fn catalog(&self) -> Result<Catalog> {
        match self.read("catalog.json")? {
            Some(s) => Catalog::from_json(&s),
            None => Ok(Catalog::builtin()),
        }
    }

    pub fn quat(&self) -> Result<QuatData> {
        match self.read("quat.json")? {
            Some(s) => QuatData::from_json(&s),
            None => Ok(QuatData::builtin()),
        }
    }

    pub fn facts(&self) -> Result<Facts> {
        match self.read("facts.json")? {
            Some(s) => Facts::from_json(&s),
            None => Ok(Facts::builtin()),
        }
    }

    pub fn classifier(&self) -> Result<Classifier> {
        Ok(Classifier::new(self.facts()?, self.quat()?, self.catalog()?))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.path.as_deref()
    }
}
