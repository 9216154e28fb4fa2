//! The `skolem` command-line tool.
//!
//! [`run`] parses arguments, resolves the [`Config`], sizes the thread pool
//! and dispatches to the library. Exit codes: 0 success, 1 domain error,
//! 2 usage error, 3 resource error.

mod args;
mod commands;
pub mod config;
mod report;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{load_or_build_cache, CacheOrigin, CachedTable, Config, OutputFormat};

use args::{Cli, GlobalArgs};

pub(crate) enum Failure {
    Usage(String),
    Lib(skolem_set::Error),
    Io(io::Error),
}

impl From<skolem_set::Error> for Failure {
    fn from(e: skolem_set::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        use skolem_set::Error;
        match self {
            Failure::Lib(Error::Domain(_) | Error::Contract(_)) => 1,
            Failure::Usage(_) | Failure::Lib(Error::Parse(_)) => 2,
            Failure::Lib(Error::Resource(_)) | Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io(e) => format!("i/o error: {e}"),
        }
    }
}

fn resolve_config(g: &GlobalArgs) -> Result<Config, String> {
    let mut c = match &g.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Some(v) = g.sieve_limit {
        c.sieve_limit = v;
    }
    if let Some(v) = &g.cache_path {
        c.cache_path = Some(v.clone());
    }
    if let Some(v) = g.scan_cap {
        c.scan_cap = v;
    }
    if let Some(v) = g.exact_cap {
        c.exact_cap = v;
    }
    if let Some(v) = g.probable_prime_rounds {
        c.probable_prime_rounds = v;
    }
    if let Some(v) = g.threads {
        c.threads = v;
    }
    if let Some(v) = g.seed {
        c.seed = v;
    }
    if g.json {
        c.output_format = OutputFormat::Json;
    } else if let Some(f) = g.format {
        c.output_format = f;
    }
    c.validate()?;
    Ok(c)
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let result = resolve_config(&cli.global)
        .map_err(Failure::Usage)
        .and_then(|config| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.threads)
                .build()
                .map_err(|e| {
                    Failure::Usage(format!("cannot start {} threads: {e}", config.threads))
                })?;
            pool.install(|| commands::execute(cli.command, &config, out, err))
        })
        .and_then(|()| Ok(out.flush()?));
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}
