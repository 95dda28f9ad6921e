//! On-disk character cache, one JSON file per character.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qg2_core::{FamilyId, QPolynomial};

use crate::json::{CharacterJson, VERSION};
use crate::Engine;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "QG2_CACHE";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// What a lookup found.
#[derive(Debug)]
pub enum Lookup {
    Hit(QPolynomial),
    Miss,
    /// The file exists but cannot be used: unreadable, malformed, written
    /// by another version, or not a character of this module.
    Stale(String),
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// `--cache-dir` if given, else `$QG2_CACHE`, else no cache.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Option<Cache> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File name for a module, e.g. `Dt_k2_l1_s-3.recursive.json`.
    pub fn path(&self, id: &FamilyId, engine: Engine) -> PathBuf {
        self.dir.join(format!(
            "{}_k{}_l{}_s{}.{}.json",
            id.family.name(),
            id.k,
            id.l,
            id.s,
            engine.name()
        ))
    }

    pub fn load(&self, id: &FamilyId, engine: Engine) -> Lookup {
        let path = self.path(id, engine);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Stale(e.to_string()),
        };
        let j = match CharacterJson::parse(&text) {
            Ok(j) => j,
            Err(e) => return Lookup::Stale(e.to_string()),
        };
        if j.version != VERSION {
            return Lookup::Stale(format!("written by version {}", j.version));
        }
        if j.engine != engine.name() {
            return Lookup::Stale(format!("written by engine {}", j.engine));
        }
        match j.character() {
            Ok(p) if p.leading().map(|t| &t.0) == Some(&id.head()) => Lookup::Hit(p),
            Ok(_) => Lookup::Stale(format!("not a character with head {}", id.head())),
            Err(e) => Lookup::Stale(e.to_string()),
        }
    }

    /// Write through a temporary file and rename, so readers never see a
    /// partial entry.
    pub fn store(&self, id: &FamilyId, engine: Engine, p: &QPolynomial) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let text = CharacterJson::new(p, engine)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))?
            .to_string_pretty();
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(self.path(id, engine)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let id: FamilyId = "B[k=0,l=1,s=0]".parse().unwrap();
        assert!(matches!(cache.load(&id, Engine::Fm), Lookup::Miss));
        let p = qg2_core::tsystem::fm_family_character(&id, &Default::default()).unwrap();
        cache.store(&id, Engine::Fm, &p).unwrap();
        match cache.load(&id, Engine::Fm) {
            Lookup::Hit(q) => assert_eq!(q, p),
            other => panic!("{:?}", other),
        }
        assert!(matches!(cache.load(&id, Engine::Recursive), Lookup::Miss));
    }

    #[test]
    fn corrupt_and_foreign_entries_are_stale() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let id: FamilyId = "B[k=0,l=1,s=0]".parse().unwrap();
        fs::write(cache.path(&id, Engine::Fm), "{not json").unwrap();
        assert!(matches!(cache.load(&id, Engine::Fm), Lookup::Stale(_)));

        let p = qg2_core::tsystem::fundamental_character(qg2_core::Node::Two);
        cache.store(&id, Engine::Fm, &p).unwrap();
        assert!(matches!(cache.load(&id, Engine::Fm), Lookup::Stale(_)));

        let q = qg2_core::tsystem::fundamental_character(qg2_core::Node::One);
        let mut j = CharacterJson::new(&q, Engine::Fm).unwrap();
        j.version = "0.0.0-old".into();
        fs::write(cache.path(&id, Engine::Fm), j.to_string_pretty()).unwrap();
        assert!(matches!(cache.load(&id, Engine::Fm), Lookup::Stale(_)));
    }
}
