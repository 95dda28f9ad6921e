//! Characters computed from the two fundamental ones using only shifts,
//! coincidences of heads and relations solved for their top module.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::relations::{relation_instance, top_relation};
use super::{solve_top_above, CharacterProvider, TruncationFloors, DEFAULT_WORK_BUDGET};
use crate::kernel::multiply_above;
use crate::catalog::{Family, FamilyId};
use crate::error::{Error, Result};
use crate::monomial::{Node, Weight};
use crate::poly::QPolynomial;

/// q-character of `1_0`.
pub const CHI_1_0: &str =
    "1_0 + 1_2^-1 2_1 + 1_4 1_6 2_7^-1 + 1_4 1_8^-1 + 1_6^-1 1_8^-1 2_5 + 1_10 2_11^-1 + 1_12^-1";

/// q-character of `2_0`.
pub const CHI_2_0: &str = "2_0 + 1_1 1_3 1_5 2_6^-1 + 1_1 1_3 1_7^-1 + 1_1 1_5^-1 1_7^-1 2_4 \
    + 1_3^-1 1_5^-1 1_7^-1 2_2 2_4 + 1_1 1_9 2_10^-1 + 2_4 2_8^-1 + 1_3^-1 1_9 2_2 2_10^-1 \
    + 1_5 1_7 1_9 2_8^-1 2_10^-1 + 1_1 1_11^-1 + 1_3^-1 1_11^-1 2_2 + 1_5 1_7 1_11^-1 2_8^-1 \
    + 1_5 1_9^-1 1_11^-1 + 1_7^-1 1_9^-1 1_11^-1 2_6 + 2_12^-1";

pub fn fundamental_character(node: Node) -> QPolynomial {
    let text = match node {
        Node::One => CHI_1_0,
        Node::Two => CHI_2_0,
    };
    text.parse().expect("embedded character parses")
}

/// Reduce to a plain family member with `k, l` as small as the
/// coincidences of heads allow.
fn canonical(id: &FamilyId) -> FamilyId {
    use Family::*;
    let (k, l, s) = (id.k, id.l, id.s);
    let next = match id.family {
        KR1 => FamilyId::new(B, 0, k, s - 1),
        KR2 => FamilyId::new(B, k, 0, s),
        MinAff => FamilyId::new(B, l, k, s),
        C if l == 0 => FamilyId::new(B, k, 0, s),
        C if k == 0 => FamilyId::new(B, l, 0, s + 4),
        D if l == 0 => FamilyId::new(B, k, 1, s),
        E if l == 0 => FamilyId::new(B, 0, k, s - 1),
        F if l == 0 => FamilyId::new(E, k, 0, s),
        F if k == 0 => FamilyId::new(E, l, 0, s + 6),
        _ => return *id,
    };
    canonical(&next)
}

/// Memoized recursive computation. Every entry is stored at shift 0 with
/// the weight above which it is exact.
///
/// A module needed only as an input of a relation is computed only in the
/// weight spaces that can reach the requested part of the top, unless
/// `exhaustive` is set. Truncated divisions do not check the other weight
/// spaces, so only exhaustive runs certify every relation they use.
pub struct RecursiveEngine {
    /// Bound on monomial products for a single relation solve.
    pub budget: u64,
    pub exhaustive: bool,
    memo: RefCell<BTreeMap<FamilyId, (Arc<QPolynomial>, Weight)>>,
    active: RefCell<BTreeSet<FamilyId>>,
    log: RefCell<Vec<FamilyId>>,
}

impl Default for RecursiveEngine {
    fn default() -> Self {
        RecursiveEngine::new(DEFAULT_WORK_BUDGET)
    }
}

fn head_weight(id: &FamilyId) -> Weight {
    id.head().weight()
}

impl RecursiveEngine {
    pub fn new(budget: u64) -> RecursiveEngine {
        RecursiveEngine {
            budget,
            exhaustive: false,
            memo: RefCell::new(BTreeMap::new()),
            active: RefCell::new(BTreeSet::new()),
            log: RefCell::new(Vec::new()),
        }
    }

    /// Every intermediate character is computed in full.
    pub fn exhaustive(budget: u64) -> RecursiveEngine {
        RecursiveEngine {
            exhaustive: true,
            ..RecursiveEngine::new(budget)
        }
    }

    /// Modules solved so far, in the order they were finished.
    pub fn schedule(&self) -> Vec<FamilyId> {
        self.log.borrow().clone()
    }

    pub fn compute(&self, id: &FamilyId) -> Result<Arc<QPolynomial>> {
        self.compute_floor(id, None)
    }

    /// A polynomial agreeing with the character of `id` in every weight
    /// space whose weight dominates `floor`. Other terms may be missing.
    pub fn compute_above(&self, id: &FamilyId, floor: Weight) -> Result<Arc<QPolynomial>> {
        self.compute_floor(id, Some(floor))
    }

    fn compute_floor(&self, id: &FamilyId, floor: Option<Weight>) -> Result<Arc<QPolynomial>> {
        if id.family.is_tilde() {
            let plain = FamilyId {
                family: id.family.plain(),
                ..*id
            };
            return Ok(Arc::new(self.compute(&plain)?.iota()));
        }
        let c = canonical(id);
        let base = c.with_s(0);
        // the lowest weight is the negative of the highest one, and the
        // head is always kept
        let top = head_weight(&base);
        let floor = match floor {
            Some(f) if !self.exhaustive => f.sup(-top).inf(top),
            _ => -top,
        };
        let p = self.compute_at_zero(&base, floor)?;
        Ok(if c.s == 0 { p } else { Arc::new(p.tau(c.s)) })
    }

    fn compute_at_zero(&self, id: &FamilyId, mut floor: Weight) -> Result<Arc<QPolynomial>> {
        if let Some((p, f)) = self.memo.borrow().get(id) {
            if floor.dominates(*f) {
                return Ok(p.clone());
            }
            // cover the earlier request too
            floor = floor.inf(*f);
        }
        let head = id.head();
        let result = if head.is_one() {
            QPolynomial::one()
        } else if head.factors().len() == 1 && head.factors()[0].1 == 1 {
            let v = head.factors()[0].0;
            fundamental_character(v.node).tau(v.shift)
        } else {
            if !self.active.borrow_mut().insert(*id) {
                return Err(Error::RecursionCycle(format!("{}", id)));
            }
            let r = self.solve(id, floor);
            self.active.borrow_mut().remove(id);
            r?
        };
        if result.leading().map(|t| &t.0) != Some(&head) {
            return Err(Error::IdentityFails(format!(
                "solution for {} does not have the expected head",
                id
            )));
        }
        let p = Arc::new(result);
        let stored = if head.factors().len() <= 1 {
            -head.weight()
        } else {
            floor
        };
        self.memo.borrow_mut().insert(*id, (p.clone(), stored));
        self.log.borrow_mut().push(*id);
        Ok(p)
    }

    fn solve(&self, id: &FamilyId, floor: Weight) -> Result<QPolynomial> {
        let rid = top_relation(id)
            .ok_or_else(|| Error::InvalidParameters(format!("no relation has {} as top", id)))?;
        let inst = relation_instance(&rid)?;
        let trunc = (!self.exhaustive).then_some(floor);
        if rid.kind.is_product() {
            let top = inst.top;
            let bot = inst.bottom.expect("product relations have two factors");
            let (ht, hb) = (head_weight(&top), head_weight(&bot));
            let t = self.compute_above(&top, floor - hb)?;
            let b = self.compute_above(&bot, floor - ht)?;
            return multiply_above(&t, &b, self.budget, trunc);
        }
        let right_id = inst.right.expect("relation has a right module");
        let bottom_id = inst.bottom.expect("relation has a bottom module");
        let hs: Vec<Weight> = inst.sources.iter().map(head_weight).collect();
        let fl = TruncationFloors::new(
            floor,
            head_weight(&inst.top),
            head_weight(&inst.left),
            head_weight(&right_id),
            head_weight(&bottom_id),
            &hs,
        );
        let left = self.compute_above(&inst.left, fl.left)?;
        let right = self.compute_above(&right_id, fl.right)?;
        let bottom = self.compute_above(&bottom_id, fl.bottom)?;
        let sources = inst
            .sources
            .iter()
            .zip(&fl.sources)
            .map(|(x, f)| self.compute_above(x, *f))
            .collect::<Result<Vec<_>>>()?;
        let srcs: Vec<&QPolynomial> = sources.iter().map(|p| &**p).collect();
        solve_top_above(&left, &right, &bottom, &srcs, self.budget, trunc)
    }
}

impl CharacterProvider for RecursiveEngine {
    fn character(&self, id: &FamilyId) -> Result<Arc<QPolynomial>> {
        self.compute(id)
    }
}
