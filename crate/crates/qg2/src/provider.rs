//! A thread-safe character provider backed by either engine and an
//! optional on-disk cache.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use qg2_core::fm::FmOptions;
use qg2_core::tsystem::{fm_family_character, CharacterProvider, RecursiveEngine};
use qg2_core::{FamilyId, QPolynomial, Result};

use crate::cache::{Cache, Lookup};
use crate::Engine;

#[derive(Debug, Default)]
pub struct CacheStats {
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
    pub stale: AtomicUsize,
    pub write_errors: AtomicUsize,
}

pub struct SharedProvider {
    engine: Engine,
    fm_options: FmOptions,
    cache: Option<Cache>,
    memo: RwLock<HashMap<FamilyId, Arc<QPolynomial>>>,
    // the recursive engine memoizes internally and is not Sync
    recursive: Mutex<RecursiveEngine>,
    pub stats: CacheStats,
}

impl SharedProvider {
    pub fn new(engine: Engine, fm_options: FmOptions, cache: Option<Cache>) -> SharedProvider {
        SharedProvider {
            engine,
            fm_options,
            cache,
            memo: RwLock::new(HashMap::new()),
            recursive: Mutex::new(RecursiveEngine::default()),
            stats: CacheStats::default(),
        }
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    fn compute(&self, id: &FamilyId) -> Result<QPolynomial> {
        match self.engine {
            Engine::Fm => fm_family_character(id, &self.fm_options),
            Engine::Recursive => {
                let e = self.recursive.lock().unwrap_or_else(|p| p.into_inner());
                Ok((*e.compute(id)?).clone())
            }
        }
    }

    fn lookup(&self, id: &FamilyId) -> Option<QPolynomial> {
        let cache = self.cache.as_ref()?;
        match cache.load(id, self.engine) {
            Lookup::Hit(p) => {
                self.stats.hits.fetch_add(1, Ordering::Relaxed);
                Some(p)
            }
            Lookup::Miss => {
                self.stats.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
            Lookup::Stale(why) => {
                log::warn!("recomputing {}: cache entry unusable ({})", id, why);
                self.stats.stale.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }
}

impl CharacterProvider for SharedProvider {
    fn character(&self, id: &FamilyId) -> Result<Arc<QPolynomial>> {
        if let Some(p) = self.memo.read().unwrap_or_else(|p| p.into_inner()).get(id) {
            return Ok(p.clone());
        }
        let p = match self.lookup(id) {
            Some(p) => p,
            None => {
                let p = if id.family.is_tilde() {
                    let plain = FamilyId {
                        family: id.family.plain(),
                        ..*id
                    };
                    self.character(&plain)?.iota()
                } else {
                    self.compute(id)?
                };
                if let Some(c) = &self.cache {
                    if let Err(e) = c.store(id, self.engine, &p) {
                        log::warn!("cannot write cache entry for {}: {}", id, e);
                        self.stats.write_errors.fetch_add(1, Ordering::Relaxed);
                    }
                }
                p
            }
        };
        // a racing thread may have inserted the same character; both are
        // equal, keep the first
        let mut memo = self.memo.write().unwrap_or_else(|p| p.into_inner());
        Ok(memo.entry(*id).or_insert_with(|| Arc::new(p)).clone())
    }
}
