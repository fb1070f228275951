use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use sha2::{Digest, Sha256};

use super::manifest::Task;
use super::run::{ResultRecord, ENGINE_VERSION};
use crate::error::Result;
use crate::kh::Deformation;
use crate::link::{to_pd, LinkDiagram};

/// Hex SHA-256 of everything a record depends on.
pub fn record_key(d: &LinkDiagram, task: &Task, prime: u32, deformation: Deformation, budget: usize, memory: Option<usize>) -> String {
    let input = json!({
        "engine": ENGINE_VERSION,
        "pd": to_pd(d),
        "loops": d.loops(),
        "task": task,
        "p": prime,
        "deformation": deformation,
        "budget": budget,
        "memory": memory,
    });
    hex::encode(Sha256::digest(input.to_string().as_bytes()))
}

/// Records stored as `<key>.json` under a directory; `Cache::none()` stores nothing.
#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn none() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache { dir: Some(dir.as_ref().to_path_buf()) })
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// A stored record; unreadable files count as misses.
    pub fn get(&self, key: &str) -> Option<ResultRecord> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok().filter(|r: &ResultRecord| r.key == key)
    }

    /// Writes through a temporary file so readers never see a partial record.
    pub fn put(&self, r: &ResultRecord) -> Result<()> {
        let Some(path) = self.path(&r.key) else { return Ok(()) };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(r)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}
