//! Characters of irreducible modules of quantum affine sl2, in the variables
//! `Y_{aq_i^s}` of one node, and their pull-back to G2 monomials.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::monomial::{a_monomial, LMonomial, Node};
use crate::poly::{Monomial, Poly, QPolynomial};

/// Laurent monomial in the sl2 variables `Y_s`. Stored as sorted
/// `(shift, exponent)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sl2Monomial {
    degree: i64,
    factors: Box<[(i32, i32)]>,
}

fn norm_pairs(mut v: Vec<(i32, i32)>) -> Vec<(i32, i32)> {
    v.sort_unstable_by_key(|p| p.0);
    let mut out: Vec<(i32, i32)> = Vec::with_capacity(v.len());
    for (s, e) in v {
        match out.last_mut() {
            Some(l) if l.0 == s => l.1 += e,
            _ => out.push((s, e)),
        }
        if out.last().is_some_and(|l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

impl Sl2Monomial {
    pub fn from_pairs<I: IntoIterator<Item = (i32, i32)>>(it: I) -> Sl2Monomial {
        let f = norm_pairs(it.into_iter().collect());
        Sl2Monomial {
            degree: f.iter().map(|p| p.1 as i64).sum(),
            factors: f.into_boxed_slice(),
        }
    }

    pub fn factors(&self) -> &[(i32, i32)] {
        &self.factors
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.factors.iter().all(|p| p.1 > 0)
    }

    pub fn pow(&self, e: i32) -> Sl2Monomial {
        Sl2Monomial::from_pairs(self.factors.iter().map(|&(s, x)| (s, x * e)))
    }

    pub fn tau(&self, b: i32) -> Sl2Monomial {
        Sl2Monomial {
            degree: self.degree,
            factors: self.factors.iter().map(|&(s, e)| (s + b, e)).collect(),
        }
    }
}

impl Monomial for Sl2Monomial {
    fn one() -> Self {
        Sl2Monomial::default()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.factors.len() + other.factors.len());
        v.extend_from_slice(&self.factors);
        v.extend_from_slice(&other.factors);
        Sl2Monomial::from_pairs(v)
    }
}

impl Ord for Sl2Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(x), None) => return x.1.cmp(&0),
                    (None, Some(y)) => return 0.cmp(&y.1),
                    (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                        Ordering::Less => return x.1.cmp(&0),
                        Ordering::Greater => return 0.cmp(&y.1),
                        Ordering::Equal => {
                            if x.1 != y.1 {
                                return x.1.cmp(&y.1);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Sl2Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sl2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "Y_{}", s)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Sl2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sl2Monomial({})", self)
    }
}

/// The sl2 simple root monomial `A_b = Y_{b-r} Y_{b+r}` for a node with
/// symmetrizer `r`.
pub fn sl2_a(b: i32, r: i32) -> Sl2Monomial {
    Sl2Monomial::from_pairs([(b - r, 1), (b + r, 1)])
}

/// Restriction of a G2 monomial to the variables of `node`.
pub fn beta(m: &LMonomial, node: Node) -> Sl2Monomial {
    Sl2Monomial::from_pairs(m.node_part(node))
}

/// A q-string `{c - (k-1)r, ..., c + (k-1)r}` with spacing `step = 2r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2String {
    pub center_shift: i32,
    pub length: u32,
    pub step: i32,
}

impl Sl2String {
    pub fn from_lowest(lowest: i32, length: u32, step: i32) -> Sl2String {
        let r = step / 2;
        Sl2String {
            center_shift: lowest + (length as i32 - 1) * r,
            length,
            step,
        }
    }

    pub fn lowest(&self) -> i32 {
        self.center_shift - (self.length as i32 - 1) * (self.step / 2)
    }

    pub fn highest(&self) -> i32 {
        self.center_shift + (self.length as i32 - 1) * (self.step / 2)
    }

    pub fn shifts(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.length as i32).map(move |j| self.lowest() + j * self.step)
    }

    fn residue(&self) -> i32 {
        self.lowest().rem_euclid(self.step)
    }

    pub fn contains(&self, other: &Sl2String) -> bool {
        self.step == other.step
            && self.residue() == other.residue()
            && self.lowest() <= other.lowest()
            && other.highest() <= self.highest()
    }

    /// Product of the `Y_s` over the string.
    pub fn head(&self) -> Sl2Monomial {
        Sl2Monomial::from_pairs(self.shifts().map(|s| (s, 1)))
    }
}

/// Two strings are in general position when their union is not a string or
/// one contains the other.
pub fn in_general_position(a: &Sl2String, b: &Sl2String) -> Result<bool> {
    if a.step != b.step {
        return Err(Error::StepMismatch(a.step, b.step));
    }
    if a.contains(b) || b.contains(a) {
        return Ok(true);
    }
    let union_is_string = a.residue() == b.residue()
        && a.highest() + a.step >= b.lowest()
        && b.highest() + b.step >= a.lowest();
    Ok(!union_is_string)
}

/// Split a dominant sl2 monomial into strings in general position.
///
/// Repeatedly takes the longest run starting at the smallest remaining
/// shift of each residue class.
pub fn decompose_strings(m: &Sl2Monomial, step: i32) -> Result<Vec<Sl2String>> {
    if !m.is_dominant() {
        return Err(Error::NotDominant(m.to_string()));
    }
    let mut counts: BTreeMap<i32, i32> = m.factors().iter().copied().collect();
    let mut out = Vec::new();
    while let Some((&lo, _)) = counts.iter().next() {
        let mut len = 0u32;
        let mut s = lo;
        while let Some(c) = counts.get_mut(&s) {
            *c -= 1;
            if *c == 0 {
                counts.remove(&s);
            }
            len += 1;
            s += step;
        }
        out.push(Sl2String::from_lowest(lo, len, step));
    }
    for (i, a) in out.iter().enumerate() {
        for b in &out[i + 1..] {
            if !in_general_position(a, b)? {
                return Err(Error::DecompositionFailed(m.to_string()));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Terms of a string character as A-vectors: entry `(b, -c)` stands for
/// `A_b^{-c}`.
fn string_avectors(s: &Sl2String) -> Poly<Sl2Monomial> {
    let r = s.step / 2;
    let k = s.length as i32;
    let mut terms = Vec::with_capacity(s.length as usize + 1);
    let mut acc: Vec<(i32, i32)> = Vec::new();
    terms.push((Sl2Monomial::default(), 1));
    for j in 0..k {
        acc.push((s.center_shift + (k - 2 * j) * r, -1));
        terms.push((Sl2Monomial::from_pairs(acc.iter().copied()), 1));
    }
    Poly::from_terms(terms).expect("string characters have unit coefficients")
}

fn realize(avec: &Sl2Monomial, r: i32) -> Sl2Monomial {
    let mut v = Vec::with_capacity(avec.factors().len() * 2);
    for &(b, e) in avec.factors() {
        v.push((b - r, e));
        v.push((b + r, e));
    }
    Sl2Monomial::from_pairs(v)
}

/// `q`-character of the evaluation module attached to a string.
pub fn string_character(s: &Sl2String) -> Poly<Sl2Monomial> {
    let head = s.head();
    let r = s.step / 2;
    string_avectors(s)
        .map_monomials(|a| head.mul(&realize(a, r)))
        .expect("unit coefficients")
}

/// Expansion of the sl2 character of a dominant monomial in A-coordinates.
pub fn sl2_expansion(m: &Sl2Monomial, step: i32) -> Result<Poly<Sl2Monomial>> {
    let strings = decompose_strings(m, step)?;
    let mut acc = Poly::one();
    for s in &strings {
        acc = acc.try_mul(&string_avectors(s))?;
    }
    Ok(acc)
}

/// q-character of the irreducible sl2 module with highest monomial `m`.
pub fn sl2_character(m: &Sl2Monomial, step: i32) -> Result<Poly<Sl2Monomial>> {
    let r = step / 2;
    sl2_expansion(m, step)?.map_monomials(|a| m.mul(&realize(a, r)))
}

/// Write `m = base * prod A_b^{v_b}` in the sl2 lattice.
fn sl2_factor(base: &Sl2Monomial, m: &Sl2Monomial, r: i32) -> Option<Vec<(i32, i32)>> {
    let mut rest: BTreeMap<i32, i32> = BTreeMap::new();
    for &(s, e) in m.factors() {
        *rest.entry(s).or_insert(0) += e;
    }
    for &(s, e) in base.factors() {
        *rest.entry(s).or_insert(0) -= e;
    }
    rest.retain(|_, e| *e != 0);
    let lo = *rest.keys().next()?;
    let mut out = Vec::new();
    while let Some((&h, &e)) = rest.iter().next_back() {
        let b = h - r;
        if b - r < lo {
            return None;
        }
        for s in [b - r, b + r] {
            let x = rest.entry(s).or_insert(0);
            *x -= e;
            if *x == 0 {
                rest.remove(&s);
            }
        }
        out.push((b, e));
    }
    Some(out)
}

/// Lift an sl2 polynomial through `beta_i` around `base`: each term
/// `beta_i(base) * prod A_b^{-c}` maps to `base * prod A_{i,b}^{-c}`.
pub fn pull_back(base: &LMonomial, node: Node, p: &Poly<Sl2Monomial>) -> Result<QPolynomial> {
    let b0 = beta(base, node);
    let r = node.r();
    let mut terms = Vec::with_capacity(p.len());
    for (t, c) in p.iter() {
        let v = if *t == b0 {
            Vec::new()
        } else {
            sl2_factor(&b0, t, r).ok_or_else(|| Error::NotAPullback(t.to_string()))?
        };
        if v.iter().any(|x| x.1 > 0) {
            return Err(Error::NotAPullback(t.to_string()));
        }
        let mut m = base.clone();
        for (b, e) in v {
            m = m.mul_pow(&a_monomial(node, b), e);
        }
        terms.push((m, *c));
    }
    Poly::from_terms(terms)
}
