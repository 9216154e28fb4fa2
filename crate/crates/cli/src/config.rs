//! Run configuration and the on-disk sieve cache.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use skolem_set::arith::{CacheError, PrimeTable, DEFAULT_ROUNDS};
use skolem_set::decide::DEFAULT_MODULI_SEED;
use skolem_set::lrs::DEFAULT_EXACT_CAP;
use skolem_set::skolem::DEFAULT_SCAN_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Settings shared by every subcommand. A JSON file may set any subset of
/// the fields; command-line flags override the file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub sieve_limit: u64,
    /// Where the sieve is cached between runs; `None` keeps it in memory.
    pub cache_path: Option<PathBuf>,
    pub scan_cap: u64,
    pub exact_cap: u64,
    pub probable_prime_rounds: u32,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sieve_limit: 1 << 24,
            cache_path: None,
            scan_cap: DEFAULT_SCAN_CAP,
            exact_cap: DEFAULT_EXACT_CAP,
            probable_prime_rounds: DEFAULT_ROUNDS,
            threads: 0,
            output_format: OutputFormat::Text,
            seed: DEFAULT_MODULI_SEED,
        }
    }
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Config, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let config: Config = serde_json::from_str(&text)
            .map_err(|e| format!("bad config {}: {e}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("sieve_limit", self.sieve_limit),
            ("scan_cap", self.scan_cap),
            ("exact_cap", self.exact_cap),
            ("probable_prime_rounds", self.probable_prime_rounds as u64),
        ] {
            if v == 0 {
                return Err(format!("{name} must be positive"));
            }
        }
        Ok(())
    }
}

/// How [`load_or_build_cache`] obtained its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOrigin {
    /// No cache path configured.
    InMemory,
    Loaded,
    /// Sieved and written to the cache path.
    Built,
    /// Sieved, but the cache path could not be written.
    BuiltUnsaved,
}

#[derive(Debug)]
pub struct CachedTable {
    pub table: PrimeTable,
    pub origin: CacheOrigin,
    pub warnings: Vec<String>,
}

/// The prime table for `config.sieve_limit`, read from `config.cache_path`
/// when a valid cache with the same limit is there and rebuilt otherwise.
pub fn load_or_build_cache(config: &Config) -> skolem_set::Result<CachedTable> {
    let limit = config.sieve_limit;
    let Some(path) = &config.cache_path else {
        return Ok(CachedTable {
            table: PrimeTable::new(limit)?,
            origin: CacheOrigin::InMemory,
            warnings: Vec::new(),
        });
    };
    let mut warnings = Vec::new();
    match PrimeTable::load(path, limit) {
        Ok(table) => {
            return Ok(CachedTable {
                table,
                origin: CacheOrigin::Loaded,
                warnings,
            });
        }
        Err(CacheError::Io(e)) if e.kind() == ErrorKind::NotFound => {}
        Err(CacheError::LimitMismatch { found, .. }) => warnings.push(format!(
            "cache {} holds primes up to {found}; rebuilding for {limit}",
            path.display()
        )),
        Err(e) => warnings.push(format!(
            "cache {} rejected ({e}); rebuilding",
            path.display()
        )),
    }
    let table = PrimeTable::new(limit)?;
    let origin = match table.save(path) {
        Ok(()) => CacheOrigin::Built,
        Err(e) => {
            warnings.push(format!(
                "cannot write cache {} ({e}); using an in-memory table",
                path.display()
            ));
            CacheOrigin::BuiltUnsaved
        }
    };
    Ok(CachedTable {
        table,
        origin,
        warnings,
    })
}
