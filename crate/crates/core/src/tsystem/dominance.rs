//! Dominant monomials of the products `L R` and `T B`, and the witnesses
//! showing that `T B` has no composition factor other than its head.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{product_coefficient, CharacterProvider};
use crate::catalog::{Family, FamilyId};
use crate::error::{Error, Result};
use crate::fm::{check_truncation_certificate, fm_run, CertificateReport, FmOptions, Truncation};
use crate::monomial::{a_monomial, LMonomial, Node};
use crate::poly::QPolynomial;

/// The six product shapes `L R` whose dominant monomials are listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductCase {
    B,
    C,
    /// `D_{0,l-1} B_{l,0}`; `k` is unused.
    D0,
    D,
    E,
    F,
}

impl ProductCase {
    pub const ALL: [ProductCase; 6] = [
        ProductCase::B,
        ProductCase::C,
        ProductCase::D0,
        ProductCase::D,
        ProductCase::E,
        ProductCase::F,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductCase::B => "b",
            ProductCase::C => "c",
            ProductCase::D0 => "d0",
            ProductCase::D => "d",
            ProductCase::E => "e",
            ProductCase::F => "f",
        }
    }
}

impl fmt::Display for ProductCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProductCase> {
        let t = s.trim().to_ascii_lowercase();
        ProductCase::ALL
            .into_iter()
            .find(|c| c.name() == t)
            .ok_or_else(|| Error::Parse(format!("unknown product case {:?}", s)))
    }
}

fn check_range(case: ProductCase, k: u32, l: u32) -> Result<()> {
    let ok = match case {
        ProductCase::D0 => k == 0 && l >= 1,
        _ => k >= 1 && l >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "case {} is not defined for k={}, l={}",
            case, k, l
        )))
    }
}

/// `((L, R), (T, B))` for the case.
pub fn product_modules(
    case: ProductCase,
    k: u32,
    l: u32,
    s: i32,
) -> Result<((FamilyId, FamilyId), (FamilyId, FamilyId))> {
    check_range(case, k, l)?;
    let (fam, shift) = match case {
        ProductCase::B => (Family::B, 6),
        ProductCase::C => (Family::C, 6),
        ProductCase::D => (Family::D, 6),
        ProductCase::E => (Family::E, 2),
        ProductCase::F => (Family::F, 2),
        ProductCase::D0 => {
            return Ok((
                (
                    FamilyId::new(Family::D, 0, l - 1, s),
                    FamilyId::new(Family::B, l, 0, s + 8),
                ),
                (
                    FamilyId::new(Family::D, 0, l, s),
                    FamilyId::new(Family::B, l - 1, 0, s + 8),
                ),
            ))
        }
    };
    Ok((
        (
            FamilyId::new(fam, k, l - 1, s),
            FamilyId::new(fam, k - 1, l, s + shift),
        ),
        (
            FamilyId::new(fam, k, l, s),
            FamilyId::new(fam, k - 1, l - 1, s + shift),
        ),
    ))
}

type Step = Vec<(Node, i32)>;

fn a1(s: i32) -> (Node, i32) {
    (Node::One, s)
}

fn a2(s: i32) -> (Node, i32) {
    (Node::Two, s)
}

/// The `A^{-1}` factors taking `M_{j-1}` to `M_j`, for `j = 1, 2, ...`.
fn steps(case: ProductCase, k: u32, l: u32, s: i32) -> Result<Vec<Step>> {
    check_range(case, k, l)?;
    let (k, l) = (k as i32, l as i32);
    let mut out = Vec::new();
    match case {
        ProductCase::B => {
            for j in 1..l {
                out.push(vec![a1(s + 6 * k + 2 * l - 2 * j)]);
            }
            out.push(vec![a2(s + 6 * k - 3), a1(s + 6 * k)]);
            for j in l + 1..k + l {
                out.push(vec![a2(s + 6 * k - 3 - 6 * (j - l))]);
            }
        }
        ProductCase::C => {
            for j in 1..l {
                out.push(vec![a2(s + 6 * k + 6 * l + 1 - 6 * j)]);
            }
            out.push(vec![
                a2(s + 6 * k - 3),
                a1(s + 6 * k),
                a1(s + 6 * k - 2),
                a2(s + 6 * k + 1),
            ]);
            for j in l + 1..k + l {
                out.push(vec![a2(s + 6 * k - 3 - 6 * (j - l))]);
            }
        }
        ProductCase::D0 => {
            for j in 1..l {
                out.push(vec![a2(s + 6 * l + 5 - 6 * j)]);
            }
            out.push(vec![a1(s + 2), a2(s + 5)]);
        }
        ProductCase::D => {
            for j in 1..l {
                out.push(vec![a2(s + 6 * k + 6 * l + 5 - 6 * j)]);
            }
            out.push(vec![a1(s + 6 * k + 2), a2(s + 6 * k + 5)]);
            out.push(vec![a2(s + 6 * k - 3), a1(s + 6 * k)]);
            for j in l + 2..=k + l {
                out.push(vec![a2(s + 6 * k - 3 - 6 * (j - l - 1))]);
            }
        }
        ProductCase::E => {
            let r = l / 2;
            let total = (k + r - 1).max(0) as usize;
            if l % 2 == 1 {
                for j in 1..=r {
                    out.push(vec![a2(s + 2 * k + 3 * l + 3 - 6 * j)]);
                }
                out.push(vec![a1(s + 2 * k - 1), a1(s + 2 * k - 3), a2(s + 2 * k)]);
                for j in r + 2..k + r {
                    out.push(vec![a1(s + 2 * k - 5 - 2 * (j - r - 2))]);
                }
            } else {
                for j in 1..r {
                    out.push(vec![a2(s + 2 * k + 3 * l + 2 - 6 * j)]);
                }
                out.push(vec![a1(s + 2 * k - 1), a2(s + 2 * k + 2)]);
                for j in r + 1..k + r {
                    out.push(vec![a1(s + 2 * k - 3 - 2 * (j - r - 1))]);
                }
            }
            out.truncate(total);
        }
        ProductCase::F => {
            for j in 1..l {
                out.push(vec![a1(s + 2 * k + 2 * l + 5 - 2 * j)]);
            }
            out.push(vec![a1(s + 2 * k - 1), a2(s + 2 * k + 2), a1(s + 2 * k + 5)]);
            for j in l + 1..k + l {
                out.push(vec![a1(s + 2 * k - 3 - 2 * (j - l - 1))]);
            }
        }
    }
    Ok(out)
}

fn apply(m: &LMonomial, step: &[(Node, i32)]) -> LMonomial {
    step.iter()
        .fold(m.clone(), |acc, &(n, s)| acc.div(&a_monomial(n, s)))
}

/// `M_0, M_1, ...`: the dominant monomials of `chi(L) chi(R)`. All but the
/// last are the dominant monomials of `chi(T) chi(B)`.
pub fn expected_product_dominants(case: ProductCase, k: u32, l: u32, s: i32) -> Result<Vec<LMonomial>> {
    let ((left, right), _) = product_modules(case, k, l, s)?;
    let mut m = left.head().mul(&right.head());
    let mut out = vec![m.clone()];
    for st in steps(case, k, l, s)? {
        m = apply(&m, &st);
        out.push(m.clone());
    }
    Ok(out)
}

/// One dominant monomial `M_i` of `chi(T) chi(B)` with `i >= 1`, the
/// witness `n_i` and the `A`'s leading from `M_i` to `n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: usize,
    pub dominant: LMonomial,
    pub witness: LMonomial,
    pub lowering: Vec<(Node, i32)>,
}

/// `n_i = M_i` times the same `A^{-1}` factors that produced `M_i`.
pub fn witness_monomials(case: ProductCase, k: u32, l: u32, s: i32) -> Result<Vec<Witness>> {
    let ms = expected_product_dominants(case, k, l, s)?;
    let st = steps(case, k, l, s)?;
    // M_1 .. M_{N-1}; M_N is the head of the source product.
    let n = ms.len() - 1;
    Ok((1..n)
        .map(|i| Witness {
            index: i,
            dominant: ms[i].clone(),
            witness: apply(&ms[i], &st[i - 1]),
            lowering: st[i - 1].clone(),
        })
        .collect())
}

/// Status of one half of a witness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateHalf {
    Established,
    Failed(String),
    /// Holds by the cited argument but no finite check was found.
    Asserted(String),
}

impl CertificateHalf {
    pub fn is_established(&self) -> bool {
        matches!(self, CertificateHalf::Established)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub witness: Witness,
    /// `n_i` does not occur in `chi(T) chi(B)`.
    pub absent_from_product: CertificateHalf,
    /// `n_i` occurs in `chi(M_i)`.
    pub in_dominant_character: CertificateHalf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub case: ProductCase,
    pub k: u32,
    pub l: u32,
    pub s: i32,
    pub top: FamilyId,
    pub bottom: FamilyId,
    pub witnesses: Vec<WitnessReport>,
}

impl IrreducibilityReport {
    /// Both halves hold for every witness.
    pub fn established(&self) -> bool {
        self.witnesses
            .iter()
            .all(|w| w.absent_from_product.is_established() && w.in_dominant_character.is_established())
    }

    /// No half was found false.
    pub fn consistent(&self) -> bool {
        self.witnesses.iter().all(|w| {
            !matches!(w.absent_from_product, CertificateHalf::Failed(_))
                && !matches!(w.in_dominant_character, CertificateHalf::Failed(_))
        })
    }
}

/// Truncated character of `m` over the `A`'s in `u`, as a checked set.
fn truncated_membership(m: &LMonomial, u: &[(Node, i32)], target: &LMonomial) -> Result<CertificateHalf> {
    let trunc = Truncation::explicit(u.iter().copied());
    let opts = FmOptions {
        expect_special: false,
        truncation: trunc.clone(),
        ..FmOptions::default()
    };
    let out = fm_run(m, &opts)?;
    if out.character.iter().any(|(_, c)| *c != 1) {
        return Ok(CertificateHalf::Asserted(String::from(
            "truncated character has multiplicities",
        )));
    }
    let set: Vec<LMonomial> = out.character.monomials().cloned().collect();
    let rep = check_truncation_certificate(m, &trunc, &set)?;
    if !rep.passed {
        return Ok(CertificateHalf::Asserted(format!("truncation check: {}", rep.detail)));
    }
    Ok(if set.contains(target) {
        CertificateHalf::Established
    } else {
        CertificateHalf::Failed(format!("{} is not in the truncated character", target))
    })
}

/// Check one witness against given characters of `T` and `B`.
pub fn check_witness(top: &QPolynomial, bottom: &QPolynomial, w: &Witness) -> Result<WitnessReport> {
    let c = product_coefficient(top, bottom, &w.witness);
    let absent = if c == 0 {
        CertificateHalf::Established
    } else {
        CertificateHalf::Failed(format!("{} has coefficient {} in the product", w.witness, c))
    };
    Ok(WitnessReport {
        witness: w.clone(),
        absent_from_product: absent,
        in_dominant_character: truncated_membership(&w.dominant, &w.lowering, &w.witness)?,
    })
}

pub fn irreducibility_certificate<P: CharacterProvider + ?Sized>(
    case: ProductCase,
    k: u32,
    l: u32,
    s: i32,
    chars: &P,
) -> Result<IrreducibilityReport> {
    let (_, (top, bottom)) = product_modules(case, k, l, s)?;
    let t = chars.character(&top)?;
    let b = chars.character(&bottom)?;
    let witnesses = witness_monomials(case, k, l, s)?
        .iter()
        .map(|w| check_witness(&t, &b, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(IrreducibilityReport {
        case,
        k,
        l,
        s,
        top,
        bottom,
        witnesses,
    })
}

/// The `A`'s lowering `M_l` to `n_l` in the `C` case.
pub fn c_case_truncation_set(k: u32, s: i32) -> Truncation {
    let b = s + 6 * k as i32;
    Truncation::explicit([a2(b - 3), a1(b), a1(b - 2), a2(b + 1)])
}

/// Check that `m_0 = M_l, ..., m_4 = n_l` is the full truncation of
/// `chi(M_l)` over `u`.
pub fn c_case_certificate(k: u32, l: u32, s: i32, u: &Truncation) -> Result<CertificateReport> {
    let ms = expected_product_dominants(ProductCase::C, k, l, s)?;
    let b = s + 6 * k as i32;
    let mut set = vec![ms[l as usize].clone()];
    for a in [a2(b - 3), a1(b), a1(b - 2), a2(b + 1)] {
        let next = apply(set.last().expect("nonempty"), &[a]);
        set.push(next);
    }
    check_truncation_certificate(&set[0], u, &set)
}
