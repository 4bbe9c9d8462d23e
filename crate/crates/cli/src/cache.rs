//! On-disk cache for `beta-sep` results.
//!
//! One JSON file per cache key. The key covers everything that can change
//! the answer (canonical group, caps, sweep flags, crate version); worker
//! count is excluded because results are worker-invariant. Loaded entries
//! are trusted only after the stored witness re-verifies as a group atom
//! of the stored length; anything stale, tampered with, or unreadable is
//! silently recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use sepnoether_core::blockmonoid::Context;
use sepnoether_core::sepnoether::{self, BetaSepResult, SweepOptions};
use sepnoether_core::{lattice, Error, GroupSpec, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    group: String,
    version: String,
    node_cap: u64,
    element_cap: u64,
    sweep_cap: u64,
    audit: bool,
    symmetry: bool,
    include_identity: bool,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    key: CacheKey,
    beta_sep: u64,
    upper_bound: u64,
    witness_elements: Vec<String>,
    witness_vector: String,
    subsets_examined: u64,
    subsets_pruned: u64,
}

pub struct CachedBetaSep {
    pub result: BetaSepResult,
    pub cache: &'static str,
}

fn key_for(group: &GroupSpec, opts: &SweepOptions) -> CacheKey {
    CacheKey {
        group: group.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        node_cap: opts.node_cap,
        element_cap: opts.element_cap,
        sweep_cap: opts.sweep_cap,
        audit: opts.audit,
        symmetry: opts.symmetry,
        include_identity: opts.include_identity,
    }
}

fn file_for(dir: &Path, key: &CacheKey) -> PathBuf {
    dir.join(format!(
        "beta-sep_{}_n{}_e{}_s{}_a{}_y{}_i{}_v{}.json",
        key.group,
        key.node_cap,
        key.element_cap,
        key.sweep_cap,
        u8::from(key.audit),
        u8::from(key.symmetry),
        u8::from(key.include_identity),
        key.version,
    ))
}

fn try_load(
    path: &Path,
    key: &CacheKey,
    group: &GroupSpec,
    node_cap: u64,
) -> Option<BetaSepResult> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.schema != 1 || file.key != *key {
        return None;
    }
    if file.upper_bound != sepnoether::upper_bound(group) {
        return None;
    }
    let elements = file
        .witness_elements
        .iter()
        .map(|t| group.parse_element(t))
        .collect::<Result<Vec<_>>>()
        .ok()?;
    let vector = file.witness_vector.parse().ok()?;
    let ctx = Context::allowing_identity(group.clone(), elements.clone()).ok()?;
    let verdict = lattice::is_group_atom(&ctx, &vector, node_cap).ok()?;
    if !verdict.is_group_atom || vector.length() != file.beta_sep {
        return None;
    }
    Some(BetaSepResult {
        value: file.beta_sep,
        witness_context: elements,
        witness_vector: vector,
        subsets_examined: file.subsets_examined,
        subsets_pruned: file.subsets_pruned,
        elapsed: Duration::ZERO,
    })
}

fn store(path: &Path, key: &CacheKey, group: &GroupSpec, result: &BetaSepResult) -> Result<()> {
    let dir = path
        .parent()
        .ok_or_else(|| Error::InvalidInput("cache path has no parent directory".to_string()))?;
    fs::create_dir_all(dir)
        .map_err(|e| Error::InvalidInput(format!("cache dir {}: {e}", dir.display())))?;
    let file = CacheFile {
        schema: 1,
        key: key.clone(),
        beta_sep: result.value,
        upper_bound: sepnoether::upper_bound(group),
        witness_elements: result
            .witness_context
            .iter()
            .map(|e| e.to_string())
            .collect(),
        witness_vector: result.witness_vector.to_string(),
        subsets_examined: result.subsets_examined,
        subsets_pruned: result.subsets_pruned,
    };
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| Error::Internal(format!("cache encoding: {e}")))?;
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cache file {}: {e}", path.display())))
}

pub fn beta_sep_cached(
    group: &GroupSpec,
    opts: &SweepOptions,
    cache_dir: Option<&Path>,
) -> Result<CachedBetaSep> {
    let Some(dir) = cache_dir else {
        return Ok(CachedBetaSep {
            result: sepnoether::beta_sep(group, opts)?,
            cache: "off",
        });
    };
    let start = Instant::now();
    let key = key_for(group, opts);
    let path = file_for(dir, &key);
    if let Some(mut result) = try_load(&path, &key, group, opts.node_cap) {
        result.elapsed = start.elapsed();
        return Ok(CachedBetaSep {
            result,
            cache: "hit",
        });
    }
    let result = sepnoether::beta_sep(group, opts)?;
    store(&path, &key, group, &result)?;
    Ok(CachedBetaSep {
        result,
        cache: "miss",
    })
}
