use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl_group::GroupContext;

use super::{CharacterTable, ClassFunction};

/// Bumped whenever the table format or the row order changes.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// `$MACTAB_CACHE` if set, else `./.mactab-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("MACTAB_CACHE").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".mactab-cache"))
}

#[derive(Serialize, Deserialize)]
struct ClassRecord {
    label: serde_json::Value,
    size: u64,
    centralizer: u64,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    schema_version: u32,
    n: usize,
    q: u64,
    classes: Vec<ClassRecord>,
    degrees: Vec<i128>,
    characters: Vec<ClassFunction>,
}

pub(crate) fn cache_path(dir: &Path, n: usize, q: u64) -> PathBuf {
    dir.join(format!("gl{n}_q{q}.v{CACHE_SCHEMA_VERSION}.json"))
}

fn class_records(ctx: &GroupContext) -> Result<Vec<ClassRecord>> {
    ctx.classes()
        .iter()
        .map(|c| {
            Ok(ClassRecord {
                label: serde_json::to_value(&c.label)?,
                size: c.size,
                centralizer: c.centralizer,
            })
        })
        .collect()
}

pub(crate) fn serialize_table(ctx: &GroupContext, table: &CharacterTable) -> Result<String> {
    let file = TableFile {
        schema_version: CACHE_SCHEMA_VERSION,
        n: table.n,
        q: table.q,
        classes: class_records(ctx)?,
        degrees: table.degrees(),
        characters: table.rows().to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s)
}

/// Reads a cached table; `Ok(None)` when absent, stale, or for a different class list.
pub(crate) fn load(dir: &Path, ctx: &GroupContext) -> Result<Option<CharacterTable>> {
    let path = cache_path(dir, ctx.n(), ctx.q());
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let Ok(file) = serde_json::from_str::<TableFile>(&text) else { return Ok(None) };
    if file.schema_version != CACHE_SCHEMA_VERSION || file.n != ctx.n() || file.q != ctx.q() {
        return Ok(None);
    }
    let expected = class_records(ctx)?;
    let same = file.classes.len() == expected.len()
        && file.classes.iter().zip(&expected).all(|(a, b)| {
            a.label == b.label && a.size == b.size && a.centralizer == b.centralizer
        });
    if !same || file.characters.iter().any(|c| c.len() != expected.len()) {
        return Ok(None);
    }
    Ok(Some(CharacterTable::from_rows(file.n, file.q, file.characters)))
}

pub(crate) fn store(dir: &Path, ctx: &GroupContext, table: &CharacterTable) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, ctx.n(), ctx.q());
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serialize_table(ctx, table)?)?;
    fs::rename(&tmp, &path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(path)
}

impl CharacterTable {
    /// Loads from `dir` when a valid cache entry exists, else computes and stores it.
    pub fn load_or_compute(ctx: &GroupContext, dir: &Path) -> Result<Self> {
        if let Some(t) = load(dir, ctx)? {
            return Ok(t);
        }
        let t = Self::compute(ctx)?;
        store(dir, ctx, &t)?;
        Ok(t)
    }

    /// The exact bytes written to the cache.
    pub fn to_cache_json(&self, ctx: &GroupContext) -> Result<String> {
        serialize_table(ctx, self)
    }

    pub fn cache_file(dir: &Path, n: usize, q: u64) -> PathBuf {
        cache_path(dir, n, q)
    }
}
