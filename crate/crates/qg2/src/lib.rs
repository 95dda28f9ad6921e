//! Command line front end for `qg2-core`: JSON files, a character cache
//! and a thread-safe character provider.

pub mod cache;
pub mod cli;
pub mod json;
pub mod provider;

use std::fmt;
use std::str::FromStr;

/// Which algorithm produced a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Fm,
    Recursive,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Fm => "fm",
            Engine::Recursive => "recursive",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Engine, String> {
        match s {
            "fm" => Ok(Engine::Fm),
            "recursive" => Ok(Engine::Recursive),
            _ => Err(format!("unknown engine {:?}", s)),
        }
    }
}
