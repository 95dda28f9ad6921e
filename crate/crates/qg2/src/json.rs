//! The JSON file format for characters.
//!
//! ```json
//! {"head": [[1, 0, 1]], "terms": [{"m": [[1, 0, 1]], "c": 1}], "dim": 7,
//!  "engine": "fm", "version": "0.1.0"}
//! ```
//!
//! Monomials are lists of `[node, shift, exponent]` sorted by `(node,
//! shift)`; terms follow the canonical term order of the core crate.

use qg2_core::{LMonomial, Node, QPolynomial};
use serde::{Deserialize, Serialize};

use crate::Engine;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Triple = (u8, i32, i32);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub m: Vec<Triple>,
    pub c: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub head: Vec<Triple>,
    pub terms: Vec<TermJson>,
    pub dim: u64,
    pub engine: String,
    pub version: String,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node label {0} is neither 1 nor 2")]
    Node(u8),
    #[error("{0}")]
    Core(#[from] qg2_core::Error),
    #[error("stated dimension {stated} differs from the coefficient sum {actual}")]
    Dimension { stated: u64, actual: u64 },
    #[error("stated head is not the leading term")]
    Head,
}

pub fn triples(m: &LMonomial) -> Vec<Triple> {
    m.factors()
        .iter()
        .map(|(v, e)| (v.node.label(), v.shift, *e))
        .collect()
}

pub fn monomial(t: &[Triple]) -> Result<LMonomial, FormatError> {
    let mut out = Vec::with_capacity(t.len());
    for &(n, s, e) in t {
        let node = Node::from_label(n as i64).ok_or(FormatError::Node(n))?;
        out.push((node, s, e));
    }
    Ok(LMonomial::from_triples(out))
}

impl CharacterJson {
    pub fn new(p: &QPolynomial, engine: Engine) -> Result<CharacterJson, FormatError> {
        let head = p.leading().map(|t| triples(&t.0)).unwrap_or_default();
        Ok(CharacterJson {
            head,
            terms: p
                .iter()
                .map(|(m, c)| TermJson {
                    m: triples(m),
                    c: *c,
                })
                .collect(),
            dim: p.mass()?,
            engine: engine.name().to_string(),
            version: VERSION.to_string(),
        })
    }

    /// Rebuild the polynomial, checking the redundant fields.
    pub fn character(&self) -> Result<QPolynomial, FormatError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((monomial(&t.m)?, t.c));
        }
        let p = QPolynomial::from_terms(terms)?;
        let actual = p.mass()?;
        if actual != self.dim {
            return Err(FormatError::Dimension {
                stated: self.dim,
                actual,
            });
        }
        let head = p.leading().map(|t| triples(&t.0)).unwrap_or_default();
        if head != self.head {
            return Err(FormatError::Head);
        }
        Ok(p)
    }

    pub fn to_string_pretty(&self) -> String {
        // struct fields serialize in declaration order, so this is byte
        // deterministic
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<CharacterJson, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p: QPolynomial = "1_0 + 1_2^-1 2_1 + 2*1_4 1_8^-1".parse().unwrap();
        let j = CharacterJson::new(&p, Engine::Fm).unwrap();
        assert_eq!(j.head, vec![(1, 0, 1)]);
        assert_eq!(j.dim, 4);
        let text = j.to_string_pretty();
        let back = CharacterJson::parse(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.character().unwrap(), p);
        assert_eq!(back.to_string_pretty(), text);
    }

    #[test]
    fn rejects_tampering() {
        let p: QPolynomial = "1_0 + 1_2^-1 2_1".parse().unwrap();
        let mut j = CharacterJson::new(&p, Engine::Fm).unwrap();
        j.dim = 3;
        assert!(matches!(j.character(), Err(FormatError::Dimension { .. })));
        let mut j = CharacterJson::new(&p, Engine::Fm).unwrap();
        j.terms[0].m[0].0 = 3;
        assert!(matches!(j.character(), Err(FormatError::Node(3))));
        assert!(CharacterJson::parse("{\"head\": [").is_err());
    }
}
