//! Backend selection and the on-disk dimension cache.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use ro2alg::backend::{AlgebraBackend, Backend, BredonBackend};
use ro2alg::expansions::Expander;
use ro2alg::fgl::{borel_backend, free_gt_from_json, universal_2torsion, DEFAULT_TRUNC};
use ro2alg::localization::Localizations;
use ro2alg::RepGrading;

use crate::{BackendArg, CliError, CliResult};

/// Environment variable naming a directory for memoized dimension tables.
pub const CACHE_ENV: &str = "RO2ALG_CACHE_DIR";

pub struct Context {
    pub max_stage: u32,
}

impl Context {
    pub fn localizations(&self, b: Backend) -> Arc<Localizations> {
        Arc::new(Localizations::with_max_stage(b, self.max_stage))
    }

    pub fn expander(&self, b: Backend) -> Expander {
        Expander::with_localizations(self.localizations(b))
    }
}

pub enum Selected {
    Algebra(Backend),
    Model,
}

pub fn named(name: &str) -> CliResult<Backend> {
    Ok(match name {
        "bredon" => Arc::new(BredonBackend::default()),
        "borel" => Arc::new(borel_backend()),
        "psi-universal" => Arc::new(universal_2torsion(DEFAULT_TRUNC)?.backend()?),
        other => return Err(CliError::Usage(format!("unknown backend {other:?}"))),
    })
}

fn from_file(path: &str) -> CliResult<Backend> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {path}: {e}")))?;
    let value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("parsing {path}: {e}")))?;
    Ok(Arc::new(free_gt_from_json(&value)?))
}

/// Resolve `--backend`, falling back to `default` when absent.
pub fn resolve(arg: &BackendArg, default: &str) -> CliResult<Selected> {
    let words: Vec<&str> = match &arg.backend {
        None => vec![default],
        Some(v) => v.iter().map(String::as_str).collect(),
    };
    match words.as_slice() {
        ["bordism-model"] => Ok(Selected::Model),
        ["free-gt", path] => Ok(Selected::Algebra(from_file(path)?)),
        [single] if single.starts_with("free-gt:") => Ok(Selected::Algebra(from_file(&single["free-gt:".len()..])?)),
        ["free-gt"] => Err(CliError::Usage("free-gt needs a law file: --backend free-gt <file>".into())),
        [name] => Ok(Selected::Algebra(named(name)?)),
        _ => Err(CliError::Usage(format!("a second --backend value only follows free-gt, got {words:?}"))),
    }
}

/// Memoized dimensions per backend, persisted as JSON when the cache
/// directory is set.
pub struct DimsCache {
    path: Option<PathBuf>,
    dims: BTreeMap<String, usize>,
    dirty: bool,
}

impl DimsCache {
    pub fn open(backend: &str) -> Self {
        let path = std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(format!("dims-{backend}.json")));
        let dims = path
            .as_ref()
            .and_then(|p| std::fs::read_to_string(p).ok())
            .and_then(|t| serde_json::from_str(&t).ok())
            .unwrap_or_default();
        DimsCache { path, dims, dirty: false }
    }

    pub fn dim(&mut self, b: &dyn AlgebraBackend, m: &RepGrading) -> CliResult<usize> {
        let key = format!("C^{} {m}", m.group().rank);
        if let Some(&d) = self.dims.get(&key) {
            return Ok(d);
        }
        let d = b.dim(m)?;
        self.dims.insert(key, d);
        self.dirty = true;
        Ok(d)
    }

    pub fn save(&self) -> CliResult<()> {
        if let (Some(path), true) = (&self.path, self.dirty) {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, serde_json::to_string_pretty(&self.dims).unwrap_or_default())?;
        }
        Ok(())
    }
}
