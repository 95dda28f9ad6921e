//! Relations among the families, their verification as exact polynomial
//! identities, and recursive computation of characters from them.

mod dominance;
mod recursive;
mod relations;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::catalog::FamilyId;
use crate::error::{Error, Result};
use crate::fm::{fm_character, FmOptions};
use crate::kernel::{self, Filter, Summand};
use crate::monomial::{LMonomial, Weight};
use crate::poly::QPolynomial;

pub use dominance::{
    c_case_certificate, c_case_truncation_set, check_witness, expected_product_dominants,
    irreducibility_certificate, product_modules, witness_monomials, CertificateHalf,
    IrreducibilityReport, ProductCase, Witness, WitnessReport,
};
pub use recursive::{fundamental_character, RecursiveEngine, CHI_1_0, CHI_2_0};
pub use relations::{grid, relation_instance, top_relation, RelationId, RelationInstance, RelationKind};

/// Default bound on monomial products per identity check or division.
pub const DEFAULT_WORK_BUDGET: u64 = 40_000_000_000;

/// Source of q-characters for family members.
pub trait CharacterProvider {
    fn character(&self, id: &FamilyId) -> Result<Arc<QPolynomial>>;
}

/// Head translated so that its lowest shift is 0, with the translation.
pub fn normalized_head(id: &FamilyId) -> (LMonomial, i32) {
    let h = id.head();
    match h.min_shift() {
        Some(lo) => (h.tau(-lo), lo),
        None => (h, 0),
    }
}

/// Character of a family member by the FM algorithm. Tilde members are
/// obtained from their plain partner through the involution.
pub fn fm_family_character(id: &FamilyId, opts: &FmOptions) -> Result<QPolynomial> {
    if id.family.is_tilde() {
        let plain = FamilyId {
            family: id.family.plain(),
            ..*id
        };
        return Ok(fm_family_character(&plain, opts)?.iota());
    }
    let (h, lo) = normalized_head(id);
    Ok(fm_character(&h, opts)?.tau(lo))
}

/// FM characters memoized by normalized head.
#[derive(Default)]
pub struct FmProvider {
    pub options: FmOptions,
    memo: RefCell<BTreeMap<LMonomial, Arc<QPolynomial>>>,
}

impl FmProvider {
    pub fn new(options: FmOptions) -> FmProvider {
        FmProvider {
            options,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    fn plain(&self, id: &FamilyId) -> Result<(Arc<QPolynomial>, i32)> {
        let (h, lo) = normalized_head(id);
        if let Some(p) = self.memo.borrow().get(&h) {
            return Ok((p.clone(), lo));
        }
        let p = Arc::new(fm_character(&h, &self.options)?);
        self.memo.borrow_mut().insert(h, p.clone());
        Ok((p, lo))
    }
}

impl CharacterProvider for FmProvider {
    fn character(&self, id: &FamilyId) -> Result<Arc<QPolynomial>> {
        if id.family.is_tilde() {
            let plain = FamilyId {
                family: id.family.plain(),
                ..*id
            };
            return Ok(Arc::new(self.character(&plain)?.iota()));
        }
        let (p, lo) = self.plain(id)?;
        if lo == 0 {
            Ok(p)
        } else {
            Ok(Arc::new(p.tau(lo)))
        }
    }
}

/// Characters of the modules of one relation.
#[derive(Clone, Debug)]
pub struct RelationCharacters {
    pub left: Arc<QPolynomial>,
    pub right: Option<Arc<QPolynomial>>,
    pub top: Arc<QPolynomial>,
    pub bottom: Option<Arc<QPolynomial>>,
    pub sources: Vec<Arc<QPolynomial>>,
}

impl RelationCharacters {
    pub fn fetch<P: CharacterProvider + ?Sized>(inst: &RelationInstance, chars: &P) -> Result<Self> {
        Ok(RelationCharacters {
            left: chars.character(&inst.left)?,
            right: inst.right.map(|x| chars.character(&x)).transpose()?,
            top: chars.character(&inst.top)?,
            bottom: inst.bottom.map(|x| chars.character(&x)).transpose()?,
            sources: inst
                .sources
                .iter()
                .map(|x| chars.character(x))
                .collect::<Result<_>>()?,
        })
    }

    /// Apply the involution to every character.
    pub fn iota(&self) -> RelationCharacters {
        let f = |p: &Arc<QPolynomial>| Arc::new(p.iota());
        RelationCharacters {
            left: f(&self.left),
            right: self.right.as_ref().map(f),
            top: f(&self.top),
            bottom: self.bottom.as_ref().map(f),
            sources: self.sources.iter().map(f).collect(),
        }
    }

    /// Mirror of a plain relation's characters, arranged like the tilde
    /// instance (left and right exchanged).
    pub fn mirrored(&self) -> RelationCharacters {
        let mut m = self.iota();
        if let Some(r) = m.right.take() {
            m.right = Some(core::mem::replace(&mut m.left, r));
        }
        m
    }

    /// Product of all sources; `None` when there are none.
    pub fn source_product(&self) -> Result<Option<QPolynomial>> {
        product_of(&self.sources)
    }
}

fn top_weight(p: &QPolynomial) -> Weight {
    p.leading().map_or(Weight::default(), |t| t.0.weight())
}

/// Product of the characters; `None` for an empty list.
pub(crate) fn product_of(polys: &[Arc<QPolynomial>]) -> Result<Option<QPolynomial>> {
    let Some((first, rest)) = polys.split_first() else {
        return Ok(None);
    };
    let mut acc = (**first).clone();
    for p in rest {
        acc = kernel::multiply(&acc, p, DEFAULT_WORK_BUDGET)?;
    }
    Ok(Some(acc))
}

/// A product of any number of factors as at most two: everything but the
/// last factor is multiplied out, the last one is left to the kernel.
struct TwoFactors<'a> {
    pre: Option<QPolynomial>,
    rest: Vec<&'a QPolynomial>,
}

impl<'a> TwoFactors<'a> {
    fn new(polys: &[&'a QPolynomial]) -> Result<TwoFactors<'a>> {
        TwoFactors::above(polys, None)
    }

    /// Only the terms of the full product with weight dominating `floor`
    /// are kept exact.
    fn above(polys: &[&'a QPolynomial], floor: Option<Weight>) -> Result<TwoFactors<'a>> {
        if polys.len() <= 2 {
            return Ok(TwoFactors {
                pre: None,
                rest: polys.to_vec(),
            });
        }
        let (last, init) = polys.split_last().expect("nonempty");
        let tops: Vec<Weight> = polys.iter().map(|p| top_weight(p)).collect();
        let mut acc = (*init[0]).clone();
        for (i, p) in init.iter().enumerate().skip(1) {
            let later = tops[i + 1..].iter().fold(Weight::default(), |a, b| a + *b);
            acc = kernel::multiply_above(&acc, p, DEFAULT_WORK_BUDGET, floor.map(|f| f - later))?;
        }
        Ok(TwoFactors {
            pre: Some(acc),
            rest: vec![*last],
        })
    }

    fn factors(&self) -> Vec<&QPolynomial> {
        self.pre.iter().chain(self.rest.iter().copied()).collect()
    }

    fn coefficient(&self, m: &LMonomial) -> u64 {
        match self.factors()[..] {
            [] => u64::from(m.is_one()),
            [a] => a.coefficient(m),
            [a, b] => product_coefficient(a, b, m),
            _ => unreachable!("at most two factors"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub monomial: LMonomial,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub relation: RelationId,
    pub passed: bool,
    /// `dim L * dim R`.
    pub lhs_mass: u64,
    /// `dim T * dim B`.
    pub product_mass: u64,
    /// Product of the source dimensions, 0 without sources.
    pub source_mass: u64,
    pub discrepancy: Option<Discrepancy>,
}

impl VerificationReport {
    pub fn masses(&self) -> String {
        format!(
            "{} = {} + {}",
            self.lhs_mass, self.product_mass, self.source_mass
        )
    }
}

fn opt_mass(p: &Option<Arc<QPolynomial>>) -> Result<u64> {
    p.as_ref().map_or(Ok(1), |p| p.mass())
}

fn mass_product(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::CoefficientOverflow)
}

/// Coefficient of `m` in `a * b` without forming the product.
pub fn product_coefficient(a: &QPolynomial, b: &QPolynomial, m: &LMonomial) -> u64 {
    a.iter()
        .map(|(x, c)| c * b.coefficient(&m.div(x)))
        .sum()
}

fn side_coefficient(x: &Arc<QPolynomial>, y: &Option<Arc<QPolynomial>>, m: &LMonomial) -> u64 {
    match y {
        Some(y) => product_coefficient(x, y, m),
        None => x.coefficient(m),
    }
}

/// Check `[L][R] = [T][B] + prod [S_i]` on the given characters.
pub fn verify_with(
    rid: RelationId,
    ch: &RelationCharacters,
    budget: u64,
) -> Result<VerificationReport> {
    let lhs_mass = mass_product(ch.left.mass()?, opt_mass(&ch.right)?)?;
    let product_mass = mass_product(ch.top.mass()?, opt_mass(&ch.bottom)?)?;
    let srcs: Vec<&QPolynomial> = ch.sources.iter().map(|p| &**p).collect();
    let src = TwoFactors::new(&srcs)?;
    let source_mass = if srcs.is_empty() {
        0
    } else {
        srcs.iter()
            .try_fold(1u64, |acc, p| mass_product(acc, p.mass()?))?
    };
    let mut lhs: Vec<&QPolynomial> = vec![&ch.left];
    lhs.extend(ch.right.as_deref());
    let mut rhs: Vec<&QPolynomial> = vec![&ch.top];
    rhs.extend(ch.bottom.as_deref());
    let mut sum = vec![Summand::plus(lhs), Summand::minus(rhs)];
    if !srcs.is_empty() {
        sum.push(Summand::minus(src.factors()));
    }
    let discrepancy = match kernel::residual(&sum, budget)? {
        None => None,
        Some((m, _)) => {
            let l = side_coefficient(&ch.left, &ch.right, &m);
            let r = side_coefficient(&ch.top, &ch.bottom, &m)
                + if srcs.is_empty() { 0 } else { src.coefficient(&m) };
            Some(Discrepancy {
                monomial: m,
                lhs: l,
                rhs: r,
            })
        }
    };
    Ok(VerificationReport {
        relation: rid,
        passed: discrepancy.is_none(),
        lhs_mass,
        product_mass,
        source_mass,
        discrepancy,
    })
}

/// Materialize a relation and check it on characters from `chars`.
pub fn verify_relation<P: CharacterProvider + ?Sized>(
    inst: &RelationInstance,
    chars: &P,
) -> Result<VerificationReport> {
    let ch = RelationCharacters::fetch(inst, chars)?;
    verify_with(inst.id, &ch, DEFAULT_WORK_BUDGET)
}

/// Like [`verify_relation`] but a failed identity becomes an error.
pub fn require_relation<P: CharacterProvider + ?Sized>(
    inst: &RelationInstance,
    chars: &P,
) -> Result<VerificationReport> {
    let rep = verify_relation(inst, chars)?;
    match &rep.discrepancy {
        None => Ok(rep),
        Some(d) => Err(Error::IdentityFails(format!(
            "{}: coefficient of {} is {} on the left and {} on the right",
            inst.id, d.monomial, d.lhs, d.rhs
        ))),
    }
}

/// Check the mirrored relation using the involution applied to the
/// characters of the plain one, with no new character computation.
pub fn verify_mirror(plain: &RelationInstance, ch: &RelationCharacters) -> Result<VerificationReport> {
    if plain.id.tilde {
        return Err(Error::InvalidParameters(format!("{} is already mirrored", plain.id)));
    }
    let tilde = relation_instance(&plain.id.mirrored())?;
    let m = ch.mirrored();
    let heads = [
        (&m.left, tilde.left),
        (&m.top, tilde.top),
    ];
    for (p, id) in heads {
        if p.leading().map(|t| &t.0) != Some(&id.head()) {
            return Err(Error::IdentityFails(format!(
                "image of the involution does not have head {}",
                id
            )));
        }
    }
    verify_with(tilde.id, &m, DEFAULT_WORK_BUDGET)
}

/// The quotient `q` with `num = den * q`, by leading-term elimination one
/// weight space at a time.
pub fn poly_div_exact(num: &QPolynomial, den: &QPolynomial) -> Result<QPolynomial> {
    if den.is_empty() {
        return Err(Error::NotDivisible);
    }
    kernel::divide(&[Summand::plus(vec![num])], den, DEFAULT_WORK_BUDGET)
}

/// Solve `[L][R] = [T][B] + S` for `T`.
pub fn solve_top(
    left: &QPolynomial,
    right: &QPolynomial,
    bottom: &QPolynomial,
    sources: &[&QPolynomial],
    budget: u64,
) -> Result<QPolynomial> {
    solve_top_above(left, right, bottom, sources, budget, None)
}

/// The terms of `T` whose weight dominates `floor`. Each input only has to
/// be exact in the weights that can reach those terms, see
/// [`TruncationFloors`]. Divisibility is not checked in other weights.
pub fn solve_top_above(
    left: &QPolynomial,
    right: &QPolynomial,
    bottom: &QPolynomial,
    sources: &[&QPolynomial],
    budget: u64,
    floor: Option<Weight>,
) -> Result<QPolynomial> {
    let mut sum = vec![Summand::plus(vec![left, right])];
    let num_floor = floor.map(|f| f + top_weight(bottom));
    let src = TwoFactors::above(sources, num_floor)?;
    if !sources.is_empty() {
        sum.push(Summand::minus(src.factors()));
    }
    kernel::divide_above(&sum, bottom, budget, floor)
}

/// Weights the inputs of `[L][R] = [T][B] + prod [S_i]` must be exact
/// above (in the dominance order) for `T` to be exact above `top`.
/// Arguments are the weights of the heads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationFloors {
    pub left: Weight,
    pub right: Weight,
    pub bottom: Weight,
    pub sources: Vec<Weight>,
}

impl TruncationFloors {
    pub fn new(
        top: Weight,
        h_top: Weight,
        h_left: Weight,
        h_right: Weight,
        h_bottom: Weight,
        h_sources: &[Weight],
    ) -> Self {
        let num = top + h_bottom;
        let total = h_sources.iter().fold(Weight::default(), |a, b| a + *b);
        TruncationFloors {
            left: num - h_right,
            right: num - h_left,
            bottom: top + h_bottom - h_top,
            sources: h_sources.iter().map(|h| num - (total - *h)).collect(),
        }
    }
}

/// Dominant monomials with multiplicities, in decreasing term order.
pub fn dominant_monomials(p: &QPolynomial) -> Vec<(LMonomial, u64)> {
    p.dominant_terms()
}

pub fn anti_dominant_monomials(p: &QPolynomial) -> Vec<(LMonomial, u64)> {
    p.anti_dominant_terms()
}

/// Dominant monomials of a product of characters, scanning only dominant
/// weight spaces.
pub fn product_dominant_monomials(factors: &[&QPolynomial]) -> Result<Vec<(LMonomial, u64)>> {
    product_filtered(factors, &|w: Weight| w.is_dominant(), &|m: &LMonomial| {
        m.is_dominant()
    })
}

/// Anti-dominant monomials of a product of characters.
pub fn product_anti_dominant_monomials(factors: &[&QPolynomial]) -> Result<Vec<(LMonomial, u64)>> {
    product_filtered(factors, &|w: Weight| (-w).is_dominant(), &|m: &LMonomial| {
        m.is_anti_dominant()
    })
}

fn product_filtered(
    factors: &[&QPolynomial],
    wf: &dyn Fn(Weight) -> bool,
    mf: &dyn Fn(&LMonomial) -> bool,
) -> Result<Vec<(LMonomial, u64)>> {
    let two = TwoFactors::new(factors)?;
    let fs = two.factors();
    let f = Filter {
        weight: wf,
        monomial: mf,
    };
    Ok(kernel::collect(&[Summand::plus(fs)], &f, DEFAULT_WORK_BUDGET)?
        .into_iter()
        .map(|(m, c)| (m, c as u64))
        .collect())
}

/// Whether `p` has exactly one dominant monomial.
pub fn is_special(p: &QPolynomial) -> bool {
    p.iter().filter(|t| t.0.is_dominant()).count() == 1
}

/// Whether `p` has exactly one anti-dominant monomial.
pub fn is_anti_special(p: &QPolynomial) -> bool {
    p.iter().filter(|t| t.0.is_anti_dominant()).count() == 1
}

/// Short label for reports.
pub fn describe(inst: &RelationInstance) -> String {
    let mut s = inst.left.to_string();
    if let Some(r) = inst.right {
        s.push_str(&format!(" * {}", r));
    }
    s.push_str(&format!(" = {}", inst.top));
    if let Some(b) = inst.bottom {
        s.push_str(&format!(" * {}", b));
    }
    if !inst.sources.is_empty() {
        let src: Vec<String> = inst.sources.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(" + {}", src.join(" * ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn division_examples() {
        let a = fundamental_character(crate::Node::One);
        let b = fundamental_character(crate::Node::Two);
        let ab = a.try_mul(&b).unwrap();
        assert_eq!(poly_div_exact(&ab, &b).unwrap(), a);
        assert_eq!(poly_div_exact(&a, &b), Err(Error::NotDivisible));
        assert_eq!(poly_div_exact(&a, &QPolynomial::zero()), Err(Error::NotDivisible));
    }

    #[test]
    fn tsys2_k1_masses() {
        let fm = FmProvider::default();
        let inst = relation_instance(&RelationId::new(RelationKind::Tsys2, 1, 0, 0)).unwrap();
        let rep = verify_relation(&inst, &fm).unwrap();
        assert!(rep.passed);
        assert_eq!((rep.lhs_mass, rep.product_mass, rep.source_mass), (225, 92, 133));
    }

    #[test]
    fn corrupted_instance_fails() {
        let fm = FmProvider::default();
        let mut inst = relation_instance(&RelationId::new(RelationKind::Tsys2, 1, 0, 0)).unwrap();
        inst.bottom = Some(FamilyId::new(crate::Family::B, 1, 0, 6));
        let rep = verify_relation(&inst, &fm).unwrap();
        assert!(!rep.passed);
        let d = rep.discrepancy.unwrap();
        assert_ne!(d.lhs, d.rhs);
        assert!(require_relation(&inst, &fm).is_err());
    }

    #[test]
    fn product_scan_matches_materialized() {
        let a = fundamental_character(crate::Node::Two);
        let b = a.tau(6);
        let c = p("1_3 + 1_5^-1 2_4");
        let full = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        assert_eq!(
            product_dominant_monomials(&[&a, &b, &c]).unwrap(),
            dominant_monomials(&full)
        );
        assert_eq!(
            product_anti_dominant_monomials(&[&a, &b]).unwrap(),
            anti_dominant_monomials(&a.try_mul(&b).unwrap())
        );
    }
}
