//! The T-system and extended T-system relations as explicit module lists.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::catalog::{Family, FamilyId};
use crate::error::{Error, Result};
use crate::monomial::LMonomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// Node-1 Kirillov-Reshetikhin T-system, parameter `l`.
    Tsys1,
    /// Node-2 Kirillov-Reshetikhin T-system, parameter `k`.
    Tsys2,
    Bext,
    /// `E_{0,l}` as a product, parameter `l`.
    E0,
    /// `E_{1,l}` as a product, parameter `l`.
    E1,
    /// Parameters `k = t >= 2` and `l`.
    Eext,
    Cext,
    /// `D_{0,l}` relation, parameter `l`.
    D0,
    Dext,
    Fext,
}

impl RelationKind {
    pub const ALL: [RelationKind; 10] = [
        RelationKind::Tsys1,
        RelationKind::Tsys2,
        RelationKind::Bext,
        RelationKind::E0,
        RelationKind::E1,
        RelationKind::Eext,
        RelationKind::Cext,
        RelationKind::D0,
        RelationKind::Dext,
        RelationKind::Fext,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Tsys1 => "tsys1",
            RelationKind::Tsys2 => "tsys2",
            RelationKind::Bext => "bext",
            RelationKind::E0 => "e0",
            RelationKind::E1 => "e1",
            RelationKind::Eext => "eext",
            RelationKind::Cext => "cext",
            RelationKind::D0 => "d0",
            RelationKind::Dext => "dext",
            RelationKind::Fext => "fext",
        }
    }

    /// Whether the relation uses `k`, `l`, or both.
    pub fn uses(self) -> (bool, bool) {
        match self {
            RelationKind::Tsys1 | RelationKind::E0 | RelationKind::E1 | RelationKind::D0 => {
                (false, true)
            }
            RelationKind::Tsys2 => (true, false),
            _ => (true, true),
        }
    }

    /// The relation is a plain product `[X] = [T][B]`.
    pub fn is_product(self) -> bool {
        matches!(self, RelationKind::E0 | RelationKind::E1)
    }
}

impl FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<RelationKind> {
        let low = s.to_ascii_lowercase();
        RelationKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == low)
            .ok_or_else(|| Error::Parse(format!("unknown relation {:?}", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationId {
    pub kind: RelationKind,
    /// The mirrored relation among tilde modules.
    pub tilde: bool,
    /// `t` for `Eext`.
    pub k: u32,
    pub l: u32,
    pub s: i32,
}

impl RelationId {
    pub fn new(kind: RelationKind, k: u32, l: u32, s: i32) -> RelationId {
        RelationId {
            kind,
            tilde: false,
            k,
            l,
            s,
        }
    }

    pub fn mirrored(self) -> RelationId {
        RelationId {
            tilde: !self.tilde,
            ..self
        }
    }

    /// Case label for the relations whose sources depend on residues.
    pub fn case(&self) -> Option<String> {
        match self.kind {
            RelationKind::Eext => {
                let t = self.k;
                let r = (t as i64 - 2).div_euclid(3);
                let p = self.l.div_ceil(2);
                let form = ["3r+2", "3r+3", "3r+4"][(t as usize + 1) % 3];
                let lform = if self.l % 2 == 1 { "2p-1" } else { "2p" };
                Some(format!("t={},l={} (r={},p={})", form, lform, r, p))
            }
            RelationKind::Fext => {
                let form = ["3r+3", "3r+1", "3r+2"][self.k as usize % 3];
                Some(format!("k={} (r={})", form, (self.k as i64 - 1).div_euclid(3)))
            }
            _ => None,
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (uk, ul) = self.kind.uses();
        write!(f, "{}", self.kind.name())?;
        if self.tilde {
            write!(f, "~")?;
        }
        write!(f, "[")?;
        if uk {
            let key = if self.kind == RelationKind::Eext { "t" } else { "k" };
            write!(f, "{}={},", key, self.k)?;
        }
        if ul {
            write!(f, "l={},", self.l)?;
        }
        write!(f, "s={}]", self.s)
    }
}

/// `[L][R] = [T][B] + [S_1]...[S_n]`.
///
/// For the product relations `[E] = [T][B]` the module `E` is stored as
/// `left`, `right` is empty and there are no sources, so the identity reads
/// `[L] = [T][B] + 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: RelationId,
    pub left: FamilyId,
    pub right: Option<FamilyId>,
    pub top: FamilyId,
    pub bottom: Option<FamilyId>,
    pub sources: Vec<FamilyId>,
}

impl RelationInstance {
    /// Every module mentioned, left to right.
    pub fn modules(&self) -> Vec<FamilyId> {
        let mut v = vec![self.left];
        v.extend(self.right);
        v.push(self.top);
        v.extend(self.bottom);
        v.extend(self.sources.iter().copied());
        v
    }

    pub fn left_head(&self) -> LMonomial {
        head_product(core::iter::once(self.left).chain(self.right))
    }

    pub fn top_head(&self) -> LMonomial {
        head_product(core::iter::once(self.top).chain(self.bottom))
    }

    pub fn source_head(&self) -> Option<LMonomial> {
        if self.sources.is_empty() {
            None
        } else {
            Some(head_product(self.sources.iter().copied()))
        }
    }

    /// Head monomials are compatible: `L R` and `T B` share the head, and
    /// the source head is obtained from it by `A^{-1}` steps.
    pub fn heads_consistent(&self) -> bool {
        let lr = self.left_head();
        if lr != self.top_head() {
            return false;
        }
        match self.source_head() {
            None => true,
            Some(sh) => {
                sh != lr
                    && crate::monomial::factor_over_a(&lr, &sh).is_ok_and(|v| v.is_nonpositive())
            }
        }
    }
}

fn head_product<I: IntoIterator<Item = FamilyId>>(ids: I) -> LMonomial {
    ids.into_iter()
        .fold(LMonomial::one(), |acc, id| acc.mul(&id.head()))
}

fn id(f: Family, k: i64, l: i64, s: i64) -> FamilyId {
    debug_assert!(k >= 0 && l >= 0);
    FamilyId::new(f, k as u32, l as u32, s as i32)
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Materialize the modules of a relation.
pub fn relation_instance(rid: &RelationId) -> Result<RelationInstance> {
    use Family::*;
    use RelationKind::*;
    let (k, l, s) = (rid.k as i64, rid.l as i64, rid.s as i64);
    let bad = |why: &str| Error::InvalidParameters(format!("{}: {}", rid, why));
    let (uk, ul) = rid.kind.uses();
    if ul && l < 1 {
        return Err(bad("l must be at least 1"));
    }
    if uk && k < 1 {
        return Err(bad("k must be at least 1"));
    }
    if !uk && k != 0 || !ul && l != 0 {
        return Err(bad("unused parameter must be 0"));
    }
    let (left, right, top, bottom, sources) = match rid.kind {
        Tsys1 => (
            id(B, 0, l, s),
            Some(id(B, 0, l, s + 2)),
            id(B, 0, l + 1, s),
            Some(id(B, 0, l - 1, s + 2)),
            vec![
                id(B, floor_div(l + 2, 3), 0, s + 2),
                id(B, floor_div(l + 1, 3), 0, s + 4),
                id(B, floor_div(l, 3), 0, s + 6),
            ],
        ),
        Tsys2 => (
            id(B, k, 0, s),
            Some(id(B, k, 0, s + 6)),
            id(B, k + 1, 0, s),
            Some(id(B, k - 1, 0, s + 6)),
            vec![id(B, 0, 3 * k, s)],
        ),
        Bext => (
            id(B, k, l - 1, s),
            Some(id(B, k - 1, l, s + 6)),
            id(B, k, l, s),
            Some(id(B, k - 1, l - 1, s + 6)),
            vec![
                id(E, 3 * k - 1, ceil_div(2 * l - 2, 3), s + 1),
                id(B, floor_div(l - 1, 3), 0, s + 6 * k + 6),
            ],
        ),
        E0 => (
            id(E, 0, l, s),
            None,
            id(B, floor_div(l + 1, 2), 0, s + 3),
            Some(id(B, floor_div(l, 2), 0, s + 5)),
            vec![],
        ),
        E1 => (
            id(E, 1, l, s),
            None,
            id(D, 0, floor_div(l, 2), s - 1),
            Some(id(B, floor_div(l + 1, 2), 0, s + 5)),
            vec![],
        ),
        Eext => {
            let t = k;
            if t < 2 {
                return Err(bad("t must be at least 2"));
            }
            let r = floor_div(t - 2, 3);
            let p = ceil_div(l, 2);
            let odd = l % 2 == 1;
            let src = match ((t - 2) % 3, odd) {
                (0, true) => vec![
                    id(D, r, p - 1, s + 1),
                    id(B, r + p, 0, s + 3),
                    id(B, r, 3 * p - 2, s + 5),
                ],
                (0, false) => vec![
                    id(B, r + p + 1, 0, s + 1),
                    id(C, r, p, s + 3),
                    id(B, r, 3 * p - 1, s + 5),
                ],
                (1, true) => vec![
                    id(B, r + 1, 3 * p - 2, s + 1),
                    id(D, r, p - 1, s + 3),
                    id(B, r + p, 0, s + 5),
                ],
                (1, false) => vec![
                    id(B, r + 1, 3 * p - 1, s + 1),
                    id(B, r + p + 1, 0, s + 3),
                    id(C, r, p, s + 5),
                ],
                (2, true) => vec![
                    id(B, r + p + 1, 0, s + 1),
                    id(B, r + 1, 3 * p - 2, s + 3),
                    id(D, r, p - 1, s + 5),
                ],
                _ => vec![
                    id(C, r + 1, p, s + 1),
                    id(B, r + 1, 3 * p - 1, s + 3),
                    id(B, r + p + 1, 0, s + 5),
                ],
            };
            (
                id(E, t, l - 1, s),
                Some(id(E, t - 1, l, s + 2)),
                id(E, t, l, s),
                Some(id(E, t - 1, l - 1, s + 2)),
                src,
            )
        }
        Cext => (
            id(C, k, l - 1, s),
            Some(id(C, k - 1, l, s + 6)),
            id(C, k, l, s),
            Some(id(C, k - 1, l - 1, s + 6)),
            vec![id(F, 3 * k - 2, 3 * l - 2, s + 1)],
        ),
        D0 => (
            id(D, 0, l - 1, s),
            Some(id(B, l, 0, s + 8)),
            id(D, 0, l, s),
            Some(id(B, l - 1, 0, s + 8)),
            vec![id(B, 0, 3 * l - 1, s + 4)],
        ),
        Dext => (
            id(D, k, l - 1, s),
            Some(id(D, k - 1, l, s + 6)),
            id(D, k, l, s),
            Some(id(D, k - 1, l - 1, s + 6)),
            vec![id(F, 3 * k - 1, 3 * l - 1, s + 1)],
        ),
        Fext => {
            let r = floor_div(k - 1, 3);
            let tail = id(B, floor_div(l - 1, 3), 0, s + 2 * k + 11);
            let src = match (k - 1) % 3 {
                0 => vec![
                    id(B, r, 0, s + 1),
                    id(D, r, floor_div(l, 3), s + 3),
                    id(C, r, floor_div(l + 1, 3), s + 5),
                    tail,
                ],
                1 => vec![
                    id(C, r + 1, floor_div(l + 1, 3), s + 1),
                    id(B, r, 0, s + 3),
                    id(D, r, floor_div(l, 3), s + 5),
                    tail,
                ],
                _ => vec![
                    id(D, r + 1, floor_div(l, 3), s + 1),
                    id(C, r + 1, floor_div(l + 1, 3), s + 3),
                    id(B, r, 0, s + 5),
                    tail,
                ],
            };
            (
                id(F, k, l - 1, s),
                Some(id(F, k - 1, l, s + 2)),
                id(F, k, l, s),
                Some(id(F, k - 1, l - 1, s + 2)),
                src,
            )
        }
    };
    let mut inst = RelationInstance {
        id: *rid,
        left,
        right,
        top,
        bottom,
        sources,
    };
    if rid.tilde {
        inst = mirror_instance(inst)?;
    }
    Ok(inst)
}

/// The mirrored relation: every module replaced by its tilde partner, with
/// left and right exchanged.
fn mirror_instance(inst: RelationInstance) -> Result<RelationInstance> {
    let m = |x: FamilyId| {
        x.mirror()
            .ok_or_else(|| Error::InvalidParameters(format!("{} has no mirror", x)))
    };
    let (left, right) = match inst.right {
        Some(r) => (m(r)?, Some(m(inst.left)?)),
        None => (m(inst.left)?, None),
    };
    Ok(RelationInstance {
        id: inst.id,
        left,
        right,
        top: m(inst.top)?,
        bottom: inst.bottom.map(m).transpose()?,
        sources: inst.sources.into_iter().map(m).collect::<Result<_>>()?,
    })
}

/// The relation having `id` as its top module, if `id` is not reduced to
/// something smaller by a coincidence of heads. Shift is preserved.
pub fn top_relation(id: &FamilyId) -> Option<RelationId> {
    use Family::*;
    use RelationKind::*;
    let (k, l, s) = (id.k, id.l, id.s);
    let r = |kind, k, l| Some(RelationId::new(kind, k, l, s));
    match id.family {
        B if k == 0 && l >= 2 => r(Tsys1, 0, l - 1),
        B if l == 0 && k >= 2 => r(Tsys2, k - 1, 0),
        B if k >= 1 && l >= 1 => r(Bext, k, l),
        C if k >= 1 && l >= 1 => r(Cext, k, l),
        D if k == 0 && l >= 1 => r(D0, 0, l),
        D if k >= 1 && l >= 1 => r(Dext, k, l),
        E if k == 0 && l >= 1 => r(E0, 0, l),
        E if k == 1 && l >= 1 => r(E1, 0, l),
        E if k >= 2 && l >= 1 => r(Eext, k, l),
        F if k >= 1 && l >= 1 => r(Fext, k, l),
        _ => None,
    }
}

/// Every relation instance with `1 <= k <= kmax`, `1 <= l <= lmax` (or
/// `t` in `2..=tmax` for `Eext`) at shift `s`, plain and mirrored.
pub fn grid(kmax: u32, lmax: u32, tmax: u32, s: i32) -> Vec<RelationId> {
    let mut out = Vec::new();
    for kind in RelationKind::ALL {
        let (uk, ul) = kind.uses();
        let ks: Vec<u32> = match (kind, uk) {
            (RelationKind::Eext, _) => (2..=tmax).collect(),
            (_, true) => (1..=kmax).collect(),
            (_, false) => vec![0],
        };
        let ls: Vec<u32> = if ul { (1..=lmax).collect() } else { vec![0] };
        for &k in &ks {
            for &l in &ls {
                let rid = RelationId::new(kind, k, l, s);
                out.push(rid);
                out.push(rid.mirrored());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationKind::*;

    fn fid(s: &str) -> FamilyId {
        s.parse().unwrap()
    }

    #[test]
    fn tsys2_k1() {
        let i = relation_instance(&RelationId::new(Tsys2, 1, 0, 0)).unwrap();
        assert_eq!(i.left, fid("B[k=1,l=0,s=0]"));
        assert_eq!(i.right, Some(fid("B[k=1,l=0,s=6]")));
        assert_eq!(i.top, fid("B[k=2,l=0,s=0]"));
        assert_eq!(i.bottom, Some(fid("B[k=0,l=0,s=6]")));
        assert_eq!(i.sources, vec![fid("B[k=0,l=3,s=0]")]);
    }

    #[test]
    fn e0_l2() {
        let i = relation_instance(&RelationId::new(E0, 0, 2, 0)).unwrap();
        assert_eq!(i.left, fid("E[k=0,l=2,s=0]"));
        assert_eq!(i.top, fid("B[k=1,l=0,s=3]"));
        assert_eq!(i.bottom, Some(fid("B[k=1,l=0,s=5]")));
        assert!(i.sources.is_empty());
    }

    #[test]
    fn eext_first_case() {
        let i = relation_instance(&RelationId::new(Eext, 2, 1, 0)).unwrap();
        assert_eq!(
            i.sources,
            vec![fid("D[k=0,l=0,s=1]"), fid("B[k=1,l=0,s=3]"), fid("B[k=0,l=1,s=5]")]
        );
    }

    #[test]
    fn heads_agree_on_grid() {
        for rid in grid(3, 3, 6, 0) {
            let i = relation_instance(&rid).unwrap();
            assert!(i.heads_consistent(), "{}", rid);
        }
        for rid in grid(2, 2, 5, 7) {
            assert!(relation_instance(&rid).unwrap().heads_consistent(), "{}", rid);
        }
    }

    #[test]
    fn mirror_swaps_sides() {
        let p = relation_instance(&RelationId::new(Cext, 1, 2, 0)).unwrap();
        let t = relation_instance(&RelationId::new(Cext, 1, 2, 0).mirrored()).unwrap();
        assert_eq!(t.left, p.right.unwrap().mirror().unwrap());
        assert_eq!(t.right, p.left.mirror());
        assert_eq!(t.top, p.top.mirror().unwrap());
    }

    #[test]
    fn parameter_ranges() {
        assert!(relation_instance(&RelationId::new(Bext, 0, 1, 0)).is_err());
        assert!(relation_instance(&RelationId::new(Eext, 1, 1, 0)).is_err());
        assert!(relation_instance(&RelationId::new(Tsys1, 1, 1, 0)).is_err());
        assert!(relation_instance(&RelationId::new(Tsys1, 0, 0, 0)).is_err());
    }

    #[test]
    fn case_labels() {
        assert_eq!(
            RelationId::new(Eext, 2, 1, 0).case().unwrap(),
            "t=3r+2,l=2p-1 (r=0,p=1)"
        );
        assert_eq!(RelationId::new(Fext, 4, 1, 0).case().unwrap(), "k=3r+1 (r=1)");
    }

    #[test]
    fn top_relations_reproduce_top() {
        for f in Family::PLAIN {
            for k in 0..4 {
                for l in 0..4 {
                    let x = FamilyId::new(f, k, l, 3);
                    if let Some(rid) = top_relation(&x) {
                        let i = relation_instance(&rid).unwrap();
                        let t = if rid.kind.is_product() { i.left } else { i.top };
                        assert_eq!(t.head(), x.head(), "{}", x);
                    }
                }
            }
        }
    }
}
