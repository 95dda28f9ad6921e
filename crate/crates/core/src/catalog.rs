//! Highest monomials of the named families and the coincidences between them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::monomial::{LMonomial, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    B,
    C,
    D,
    E,
    F,
    Bt,
    Ct,
    Dt,
    Et,
    Ft,
    /// `1_s 1_{s+2} ... 1_{s+2k-2}`.
    KR1,
    /// `2_s 2_{s+6} ... 2_{s+6k-6}`.
    KR2,
    /// Minimal affinization of `k omega_1 + l omega_2` whose node-2 string
    /// comes first.
    MinAff,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::Bt,
        Family::Ct,
        Family::Dt,
        Family::Et,
        Family::Ft,
        Family::KR1,
        Family::KR2,
        Family::MinAff,
    ];
    pub const PLAIN: [Family; 5] = [Family::B, Family::C, Family::D, Family::E, Family::F];

    pub fn name(self) -> &'static str {
        match self {
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::Bt => "Bt",
            Family::Ct => "Ct",
            Family::Dt => "Dt",
            Family::Et => "Et",
            Family::Ft => "Ft",
            Family::KR1 => "KR1",
            Family::KR2 => "KR2",
            Family::MinAff => "MinAff",
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(
            self,
            Family::Bt | Family::Ct | Family::Dt | Family::Et | Family::Ft
        )
    }

    pub fn tilde(self) -> Option<Family> {
        Some(match self {
            Family::B => Family::Bt,
            Family::C => Family::Ct,
            Family::D => Family::Dt,
            Family::E => Family::Et,
            Family::F => Family::Ft,
            _ => return None,
        })
    }

    pub fn plain(self) -> Family {
        match self {
            Family::Bt => Family::B,
            Family::Ct => Family::C,
            Family::Dt => Family::D,
            Family::Et => Family::E,
            Family::Ft => Family::F,
            f => f,
        }
    }

    /// Toggle between a family and its mirror.
    pub fn mirror(self) -> Option<Family> {
        if self.is_tilde() {
            Some(self.plain())
        } else {
            self.tilde()
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {:?}", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub family: Family,
    pub k: u32,
    pub l: u32,
    pub s: i32,
}

impl FamilyId {
    pub const fn new(family: Family, k: u32, l: u32, s: i32) -> FamilyId {
        FamilyId { family, k, l, s }
    }

    pub fn with_s(self, s: i32) -> FamilyId {
        FamilyId { s, ..self }
    }

    pub fn mirror(self) -> Option<FamilyId> {
        Some(FamilyId {
            family: self.family.mirror()?,
            ..self
        })
    }

    pub fn head(&self) -> LMonomial {
        highest_monomial(self)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[k={},l={},s={}]",
            self.family.name(),
            self.k,
            self.l,
            self.s
        )
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// `B[k=2,l=1,s=0]`; missing keys default to 0, `ℓ` is accepted for `l`.
    fn from_str(text: &str) -> Result<FamilyId> {
        let bad = || Error::Parse(format!("expected e.g. B[k=1,l=0,s=0], got {:?}", text));
        let t = text.trim();
        let (name, rest) = t.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let mut id = FamilyId::new(name.trim().parse()?, 0, 0, 0);
        let mut seen = BTreeSet::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(bad)?;
            let key = match key.trim() {
                "ℓ" => "l",
                k => k,
            };
            if !seen.insert(String::from(key)) {
                return Err(Error::Parse(format!("repeated key {:?} in {:?}", key, text)));
            }
            let val = val.trim();
            match key {
                "k" => id.k = val.parse().map_err(|_| bad())?,
                "l" => id.l = val.parse().map_err(|_| bad())?,
                "s" => id.s = val.parse().map_err(|_| bad())?,
                _ => return Err(Error::Parse(format!("unknown key {:?} in {:?}", key, text))),
            }
        }
        Ok(id)
    }
}

fn push_range(v: &mut Vec<(Node, i32, i32)>, node: Node, count: i64, f: impl Fn(i32) -> i32) {
    for i in 0..count.max(0) as i32 {
        v.push((node, f(i), 1));
    }
}

/// Highest monomial of a family member. Empty ranges give the identity.
pub fn highest_monomial(id: &FamilyId) -> LMonomial {
    use Node::{One, Two};
    let (k, l, s) = (id.k as i32, id.l as i32, id.s);
    let mut v = Vec::new();
    match id.family.plain() {
        Family::B => {
            push_range(&mut v, Two, k as i64, |i| s + 6 * i);
            push_range(&mut v, One, l as i64, |i| s + 6 * k + 2 * i + 1);
        }
        Family::C => {
            push_range(&mut v, Two, k as i64, |i| s + 6 * i);
            push_range(&mut v, Two, l as i64, |i| s + 6 * k + 6 * i + 4);
        }
        Family::D => {
            push_range(&mut v, Two, k as i64, |i| s + 6 * i);
            v.push((One, s + 6 * k + 1, 1));
            push_range(&mut v, Two, l as i64, |i| s + 6 * k + 6 * i + 8);
        }
        Family::E => {
            push_range(&mut v, One, k as i64, |i| s + 2 * i);
            // i runs over 0..=floor((l-1)/2) and 0..=floor((l-2)/2)
            push_range(&mut v, Two, ((l - 1).div_euclid(2) + 1) as i64, |i| {
                s + 2 * k + 6 * i + 3
            });
            push_range(&mut v, Two, ((l - 2).div_euclid(2) + 1) as i64, |i| {
                s + 2 * k + 6 * i + 5
            });
        }
        Family::F => {
            push_range(&mut v, One, k as i64, |i| s + 2 * i);
            push_range(&mut v, One, l as i64, |i| s + 2 * k + 2 * i + 6);
        }
        Family::KR1 => push_range(&mut v, One, k as i64, |i| s + 2 * i),
        Family::KR2 => push_range(&mut v, Two, k as i64, |i| s + 6 * i),
        Family::MinAff => return minimal_affinization_monomial(id.k, id.l, s, Orientation::TwoFirst),
        _ => unreachable!("plain() never returns a tilde family"),
    }
    let m = LMonomial::from_triples(v);
    if id.family.is_tilde() {
        m.reflect()
    } else {
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    TwoFirst,
    OneFirst,
}

/// Head of the minimal affinization of `k omega_1 + l omega_2`, shifted by
/// `s`. `TwoFirst` gives `2_0 ... 2_{6l-6} 1_{6l+1} ... 1_{6l+2k-1}`,
/// `OneFirst` gives `1_0 ... 1_{2k-2} 2_{2k+5} ... 2_{2k+6l-1}`.
pub fn minimal_affinization_monomial(k: u32, l: u32, s: i32, o: Orientation) -> LMonomial {
    let (k, l) = (k as i32, l as i32);
    let mut v = Vec::new();
    match o {
        Orientation::TwoFirst => {
            push_range(&mut v, Node::Two, l as i64, |i| s + 6 * i);
            push_range(&mut v, Node::One, k as i64, |i| s + 6 * l + 2 * i + 1);
        }
        Orientation::OneFirst => {
            push_range(&mut v, Node::One, k as i64, |i| s + 2 * i);
            push_range(&mut v, Node::Two, l as i64, |i| s + 2 * k + 6 * i + 5);
        }
    }
    LMonomial::from_triples(v)
}

fn relabel(id: FamilyId, family: Family) -> FamilyId {
    FamilyId { family, ..id }
}

/// Direct images of one id under the coincidence rules, in both directions.
fn rule_images(id: FamilyId) -> Vec<FamilyId> {
    use Family::*;
    let mut out = Vec::new();
    let (k, l, s) = (id.k, id.l, id.s);
    let t = id.family.is_tilde();
    let f = |p: Family| if t { p.tilde().unwrap() } else { p };
    let plain = id.family.plain();
    match plain {
        B if l == 0 && !matches!(id.family, KR1 | KR2 | MinAff) => {
            out.push(FamilyId::new(f(C), k, 0, s));
            out.push(FamilyId::new(f(C), 0, k, s - 4));
        }
        _ => {}
    }
    if matches!(plain, B) && !matches!(id.family, KR1 | KR2 | MinAff) {
        if l == 1 {
            out.push(FamilyId::new(f(D), k, 0, s));
            // B~_{k,1}^{(s)} = D_{0,k}^{(-s-6k-2)} and its mirror
            let other = if t { D } else { Dt };
            out.push(FamilyId::new(other, 0, k, -s - 6 * k as i32 - 2));
        }
        if k == 0 {
            out.push(FamilyId::new(f(E), l, 0, s + 1));
        }
        if !t {
            if l == 0 {
                out.push(FamilyId::new(KR2, k, 0, s));
            }
            if k == 0 {
                out.push(FamilyId::new(KR1, l, 0, s + 1));
            }
            out.push(FamilyId::new(MinAff, l, k, s));
        }
    }
    match id.family {
        C | Ct => {
            if l == 0 {
                out.push(relabel(id, f(B)));
            }
            if k == 0 {
                out.push(FamilyId::new(f(B), l, 0, s + 4));
            }
        }
        D | Dt => {
            if l == 0 {
                out.push(FamilyId::new(f(B), k, 1, s));
            }
            if k == 0 {
                let other = if t { B } else { Bt };
                out.push(FamilyId::new(other, l, 1, -s - 6 * l as i32 - 2));
            }
        }
        E | Et => {
            if l == 0 {
                out.push(FamilyId::new(f(B), 0, k, s - 1));
                out.push(FamilyId::new(f(F), 0, k, s - 6));
                out.push(FamilyId::new(f(F), k, 0, s));
            }
        }
        F | Ft => {
            if k == 0 {
                out.push(FamilyId::new(f(E), l, 0, s + 6));
            }
            if l == 0 {
                out.push(FamilyId::new(f(E), k, 0, s));
            }
        }
        KR1 => out.push(FamilyId::new(B, 0, k, s - 1)),
        KR2 => out.push(FamilyId::new(B, k, 0, s)),
        MinAff => out.push(FamilyId::new(B, l, k, s)),
        _ => {}
    }
    out
}

/// Every id reachable from `id` through the coincidence rules (at most four
/// rule applications) whose highest monomial equals that of `id`. Sorted,
/// includes `id`.
pub fn trivial_aliases(id: &FamilyId) -> Vec<FamilyId> {
    let head = highest_monomial(id);
    let mut seen: BTreeSet<FamilyId> = BTreeSet::new();
    seen.insert(*id);
    let mut frontier = alloc::vec![*id];
    for _ in 0..4 {
        let mut next = Vec::new();
        for x in frontier {
            for y in rule_images(x) {
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter()
        .filter(|x| highest_monomial(x) == head)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> FamilyId {
        s.parse().unwrap()
    }

    fn m(s: &str) -> LMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn heads() {
        assert_eq!(id("B[k=1,l=1,s=0]").head(), m("2_0 1_7"));
        assert_eq!(id("E[k=3,l=1,s=1]").head(), m("1_1 1_3 1_5 2_10"));
        assert_eq!(id("B[k=0,l=0,s=5]").head(), LMonomial::one());
        assert_eq!(id("Bt[k=1,l=3,s=-11]").head(), m("1_0 1_2 1_4 2_11"));
        assert_eq!(id("E[k=0,l=2,s=0]").head(), m("2_3 2_5"));
        assert_eq!(id("D[k=0,l=1,s=-1]").head(), m("1_0 2_7"));
    }

    #[test]
    fn parse_display_roundtrip() {
        let x = id("Ft[ k=2, l=1 ,s=-3]");
        assert_eq!(x.to_string(), "Ft[k=2,l=1,s=-3]");
        assert_eq!(id(&x.to_string()), x);
        assert_eq!(id("KR2[k=3]"), FamilyId::new(Family::KR2, 3, 0, 0));
        assert!("B[k=1,k=2]".parse::<FamilyId>().is_err());
        assert!("G[k=1]".parse::<FamilyId>().is_err());
        assert!("B[k=-1]".parse::<FamilyId>().is_err());
        assert!("B(k=1)".parse::<FamilyId>().is_err());
    }

    #[test]
    fn alias_examples() {
        let a = trivial_aliases(&id("E[k=2,l=0,s=3]"));
        assert!(a.contains(&id("B[k=0,l=2,s=2]")));
        assert!(a.contains(&id("F[k=0,l=2,s=-3]")));
        assert!(a.contains(&id("F[k=2,l=0,s=3]")));
        let a = trivial_aliases(&id("D[k=2,l=0,s=1]"));
        assert!(a.contains(&id("B[k=2,l=1,s=1]")));
        let a = trivial_aliases(&id("B[k=0,l=0,s=0]"));
        assert!(a.contains(&id("C[k=0,l=0,s=0]")));
        assert!(a.contains(&id("B[k=0,l=0,s=0]")));
        let a = trivial_aliases(&id("D[k=0,l=2,s=0]"));
        assert!(a.contains(&id("Bt[k=2,l=1,s=-14]")));
    }

    #[test]
    fn minimal_affinizations() {
        assert_eq!(
            minimal_affinization_monomial(1, 1, 0, Orientation::TwoFirst),
            m("2_0 1_7")
        );
        assert_eq!(
            minimal_affinization_monomial(1, 1, 0, Orientation::OneFirst),
            m("1_0 2_7")
        );
        assert_eq!(
            minimal_affinization_monomial(0, 0, 4, Orientation::OneFirst),
            LMonomial::one()
        );
    }
}
