//! The FM algorithm, its truncated variant, and a checker for
//! truncation certificates.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::monomial::{a_monomial, factor_over_a, LMonomial, Node};
use crate::poly::{Monomial, Poly, QPolynomial};
use crate::sl2::{beta, sl2_expansion, Sl2Monomial};

/// Default bound on the number of distinct monomials.
pub const DEFAULT_MAX_TERMS: usize = 5_000_000;

/// The set `U` of admissible `A_{i,aq^s}` for truncated computations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    #[default]
    All,
    /// Every node, shifts strictly below the bound.
    ShiftBelow(i32),
    Explicit(BTreeSet<(Node, i32)>),
}

impl Truncation {
    pub fn explicit<I: IntoIterator<Item = (Node, i32)>>(it: I) -> Truncation {
        Truncation::Explicit(it.into_iter().collect())
    }

    pub fn allows(&self, node: Node, shift: i32) -> bool {
        match self {
            Truncation::All => true,
            Truncation::ShiftBelow(b) => shift < *b,
            Truncation::Explicit(set) => set.contains(&(node, shift)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FmOptions {
    pub max_terms: usize,
    /// Fail with `SecondDominantFound` instead of flagging the output.
    pub expect_special: bool,
    pub truncation: Truncation,
}

impl Default for FmOptions {
    fn default() -> Self {
        FmOptions {
            max_terms: DEFAULT_MAX_TERMS,
            expect_special: true,
            truncation: Truncation::All,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FmOutput {
    pub character: QPolynomial,
    /// Dominant monomials other than the head met during the run.
    pub extra_dominants: Vec<LMonomial>,
    /// Monomials where the colouring could not be completed.
    pub inconsistencies: Vec<LMonomial>,
}

impl FmOutput {
    /// The algorithm only proves its output for special modules with a
    /// consistent colouring.
    pub fn unverified(&self) -> bool {
        !self.extra_dominants.is_empty() || !self.inconsistencies.is_empty()
    }
}

/// One non-trivial term of an sl2 expansion, normalised so that the lowest
/// shift of the sl2 head is 0.
struct ExpTerm {
    delta: LMonomial,
    a_shifts: Box<[i32]>,
    depth: usize,
    coeff: u64,
}

#[derive(Default)]
struct ExpansionCache {
    map: HashMap<(Node, Sl2Monomial), Rc<[ExpTerm]>>,
}

impl ExpansionCache {
    fn get(&mut self, node: Node, b: &Sl2Monomial) -> Result<Rc<[ExpTerm]>> {
        if let Some(e) = self.map.get(&(node, b.clone())) {
            return Ok(e.clone());
        }
        let exp = sl2_expansion(b, node.step())?;
        let mut terms = Vec::with_capacity(exp.len());
        for (avec, c) in exp.iter() {
            if avec.is_one() {
                continue;
            }
            let mut delta = LMonomial::one();
            let mut shifts = Vec::new();
            let mut depth = 0usize;
            for &(s, e) in avec.factors() {
                delta = delta.mul_pow(&a_monomial(node, s), e);
                shifts.push(s);
                depth += (-e) as usize;
            }
            terms.push(ExpTerm {
                delta,
                a_shifts: shifts.into_boxed_slice(),
                depth,
                coeff: *c,
            });
        }
        let rc: Rc<[ExpTerm]> = terms.into();
        self.map.insert((node, b.clone()), rc.clone());
        Ok(rc)
    }
}

#[derive(Clone, Copy, Default)]
struct Rec {
    mult: u64,
    colored: [u64; 2],
}

/// Run the algorithm from the dominant monomial `m_plus`.
///
/// Monomials are processed level by level in the number of `A^{-1}` factors,
/// and inside a level in decreasing term order, so the output does not depend
/// on hashing.
pub fn fm_run(m_plus: &LMonomial, opts: &FmOptions) -> Result<FmOutput> {
    if !m_plus.is_dominant() {
        return Err(Error::NotDominant(m_plus.to_string()));
    }
    let top = m_plus.height();
    let mut cache = ExpansionCache::default();
    let mut table: HashMap<LMonomial, Rec> = HashMap::new();
    table.insert(
        m_plus.clone(),
        Rec {
            mult: 1,
            colored: [0, 0],
        },
    );
    let mut levels: Vec<Vec<LMonomial>> = alloc::vec![alloc::vec![m_plus.clone()]];
    let mut extra_dominants = Vec::new();
    let mut inconsistencies = Vec::new();
    let mut d = 0;
    while d < levels.len() {
        let mut level = core::mem::take(&mut levels[d]);
        level.sort_unstable_by(|a, b| b.cmp(a));
        for m in level {
            debug_assert_eq!((top - m.height()) as usize, d);
            if d > 0 && m.is_dominant() {
                if opts.expect_special {
                    return Err(Error::SecondDominantFound(m.to_string()));
                }
                extra_dominants.push(m.clone());
            }
            for node in Node::ALL {
                let i = node.index();
                let rec = table[&m];
                if !m.is_i_dominant(node) {
                    if rec.colored[i] != rec.mult {
                        if opts.expect_special {
                            return Err(Error::FmInconsistent(m.to_string()));
                        }
                        inconsistencies.push(m.clone());
                    }
                    continue;
                }
                let residual = rec.mult - rec.colored[i];
                if residual == 0 {
                    continue;
                }
                let b = beta(&m, node);
                if !b.is_one() {
                    let offset = b.factors()[0].0;
                    let exp = cache.get(node, &b.tau(-offset))?;
                    for t in exp.iter() {
                        if !t
                            .a_shifts
                            .iter()
                            .all(|&s| opts.truncation.allows(node, s + offset))
                        {
                            continue;
                        }
                        let child = m.mul_shifted(&t.delta, offset);
                        let add = residual
                            .checked_mul(t.coeff)
                            .ok_or(Error::CoefficientOverflow)?;
                        let depth = d + t.depth;
                        let entry = table.entry(child);
                        let r = match entry {
                            hashbrown::hash_map::Entry::Occupied(o) => o.into_mut(),
                            hashbrown::hash_map::Entry::Vacant(v) => {
                                if levels.len() <= depth {
                                    levels.resize_with(depth + 1, Vec::new);
                                }
                                levels[depth].push(v.key().clone());
                                v.insert(Rec::default())
                            }
                        };
                        r.colored[i] = r.colored[i]
                            .checked_add(add)
                            .ok_or(Error::CoefficientOverflow)?;
                        r.mult = r.mult.max(r.colored[i]);
                    }
                    if table.len() > opts.max_terms {
                        return Err(Error::TermCapExceeded(opts.max_terms));
                    }
                }
                table.get_mut(&m).expect("present").colored[i] = rec.mult;
            }
        }
        d += 1;
    }
    let character = Poly::from_terms(table.into_iter().map(|(m, r)| (m, r.mult)))?;
    Ok(FmOutput {
        character,
        extra_dominants,
        inconsistencies,
    })
}

/// q-character of the irreducible module with highest monomial `m_plus`.
pub fn fm_character(m_plus: &LMonomial, opts: &FmOptions) -> Result<QPolynomial> {
    Ok(fm_run(m_plus, opts)?.character)
}

/// The part of the q-character lying in `m_plus * Q_U^-`, computed by
/// running the algorithm with only `A_{i,a}^{-1}`, `(i,a)` in `U`.
pub fn truncated_character(m_plus: &LMonomial, u: &Truncation) -> Result<QPolynomial> {
    let opts = FmOptions {
        truncation: u.clone(),
        ..FmOptions::default()
    };
    fm_character(m_plus, &opts)
}

/// Which condition of the truncation criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateCondition {
    /// Every element lies in `m_plus * Q_U^-`.
    Lattice,
    /// `m_plus` is the only dominant element.
    Dominance,
    /// Closure under single `A^{-1}` steps from `U`.
    Closure,
    /// Each `i`-class matches a truncated sl2 character.
    Sl2Classes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub passed: bool,
    pub failed: Option<CertificateCondition>,
    pub detail: String,
}

impl CertificateReport {
    fn fail(c: CertificateCondition, detail: String) -> CertificateReport {
        CertificateReport {
            passed: false,
            failed: Some(c),
            detail,
        }
    }
}

/// Truncated sl2 character of `beta_i(m)`, keeping the terms whose A-shifts
/// are all admissible for node `i`.
fn truncated_sl2(m: &LMonomial, node: Node, u: &Truncation) -> Result<Poly<Sl2Monomial>> {
    let b = beta(m, node);
    let exp = sl2_expansion(&b, node.step())?;
    let r = node.r();
    let mut terms = Vec::new();
    for (avec, c) in exp.iter() {
        if !avec.factors().iter().all(|&(s, _)| u.allows(node, s)) {
            continue;
        }
        let mut y = Vec::new();
        for &(s, e) in avec.factors() {
            y.push((s - r, e));
            y.push((s + r, e));
        }
        terms.push((b.mul(&Sl2Monomial::from_pairs(y)), *c));
    }
    Poly::from_terms(terms)
}

/// Check the four conditions under which `set` equals the truncation of the
/// q-character of `m_plus` to `m_plus * Q_U^-`.
pub fn check_truncation_certificate(
    m_plus: &LMonomial,
    u: &Truncation,
    set: &[LMonomial],
) -> Result<CertificateReport> {
    use CertificateCondition::*;
    let members: HashSet<&LMonomial> = set.iter().collect();
    if members.len() != set.len() {
        return Err(Error::InvalidParameters("repeated monomial in the set".into()));
    }
    for m in set {
        let ok = match factor_over_a(m_plus, m) {
            Ok(v) => v.is_nonpositive() && v.entries().iter().all(|e| u.allows(e.0.node, e.0.shift)),
            Err(_) => false,
        };
        if !ok {
            return Ok(CertificateReport::fail(Lattice, format!("{} not in m_+ Q_U^-", m)));
        }
    }
    let dominant: Vec<&LMonomial> = set.iter().filter(|m| m.is_dominant()).collect();
    if dominant.len() != 1 || dominant[0] != m_plus {
        return Ok(CertificateReport::fail(
            Dominance,
            format!("dominant elements: {:?}", dominant.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
        ));
    }
    for m in set {
        for m2 in set {
            let v = match factor_over_a(m, m2) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let e = v.entries();
            if e.len() != 2 {
                continue;
            }
            let (down, up) = match (e[0].1, e[1].1) {
                (-1, 1) => (e[0].0, e[1].0),
                (1, -1) => (e[1].0, e[0].0),
                _ => continue,
            };
            let _ = up;
            if !u.allows(down.node, down.shift) {
                continue;
            }
            let step = m.mul_pow(&a_monomial(down.node, down.shift), -1);
            if !members.contains(&step) {
                return Ok(CertificateReport::fail(
                    Closure,
                    format!("{} is in the set but {} is not", m2, step),
                ));
            }
        }
    }
    let mut sl2_cache: HashMap<(usize, Node), Poly<Sl2Monomial>> = HashMap::new();
    for m in set {
        for node in Node::ALL {
            let class: Vec<&LMonomial> = set
                .iter()
                .filter(|m2| factor_over_a(m, m2).is_ok_and(|v| v.only_node(node)))
                .collect();
            let class_sum = Poly::from_terms(class.iter().map(|m2| (beta(m2, node), 1)))?;
            let mut matches = 0;
            for (idx, cand) in set.iter().enumerate() {
                if !cand.is_i_dominant(node) {
                    continue;
                }
                let ch = match sl2_cache.get(&(idx, node)) {
                    Some(ch) => ch,
                    None => {
                        let ch = truncated_sl2(cand, node, u)?;
                        sl2_cache.entry((idx, node)).or_insert(ch)
                    }
                };
                if *ch == class_sum {
                    matches += 1;
                }
            }
            if matches != 1 {
                return Ok(CertificateReport::fail(
                    Sl2Classes,
                    format!("node {} class of {}: {} matching heads", node, m, matches),
                ));
            }
        }
    }
    Ok(CertificateReport {
        passed: true,
        failed: None,
        detail: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> LMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn fundamental_dimensions() {
        let o = FmOptions::default();
        assert_eq!(fm_character(&m("1_0"), &o).unwrap().mass().unwrap(), 7);
        assert_eq!(fm_character(&m("2_0"), &o).unwrap().mass().unwrap(), 15);
    }

    #[test]
    fn non_dominant_input_rejected() {
        assert!(matches!(
            fm_character(&m("1_0^-1"), &FmOptions::default()),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn term_cap() {
        let o = FmOptions {
            max_terms: 3,
            ..FmOptions::default()
        };
        assert_eq!(fm_character(&m("2_0"), &o), Err(Error::TermCapExceeded(3)));
    }

    #[test]
    fn non_special_module_is_flagged() {
        let o = FmOptions {
            expect_special: false,
            ..FmOptions::default()
        };
        let out = fm_run(&m("1_0 1_2 1_4 2_11"), &o).unwrap();
        assert!(out.unverified());
        assert!(matches!(
            fm_character(&m("1_0 1_2 1_4 2_11"), &FmOptions::default()),
            Err(Error::SecondDominantFound(_))
        ));
    }

    #[test]
    fn truncation_small_set() {
        let head = m("1_1 2_8");
        let t = truncated_character(&head, &Truncation::ShiftBelow(11)).unwrap();
        assert_eq!(t.len(), 2);
        let set: Vec<LMonomial> = t.monomials().cloned().collect();
        let rep = check_truncation_certificate(&head, &Truncation::ShiftBelow(11), &set).unwrap();
        assert!(rep.passed, "{:?}", rep);
        let rep = check_truncation_certificate(&head, &Truncation::ShiftBelow(11), &set[..1]).unwrap();
        assert!(!rep.passed);
    }
}
