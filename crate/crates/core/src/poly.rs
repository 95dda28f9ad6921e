//! Polynomials with positive integer coefficients over a monomial group.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::Hash;
use core::str::FromStr;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::monomial::LMonomial;

/// A commutative monomial group with a total order compatible with
/// multiplication.
pub trait Monomial: Clone + Ord + Eq + Hash + fmt::Display {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Monomial for LMonomial {
    fn one() -> Self {
        LMonomial::one()
    }
    fn mul(&self, other: &Self) -> Self {
        LMonomial::mul(self, other)
    }
}

/// Finite sum of monomials with strictly positive `u64` coefficients.
///
/// Terms are kept in decreasing term order, so the first term is the
/// leading one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M> {
    terms: Vec<(M, u64)>,
}

/// A q-character or a product of q-characters.
pub type QPolynomial = Poly<LMonomial>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Poly::zero()
    }
}

fn add_coeff(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::CoefficientOverflow)
}

impl<M: Monomial> Poly<M> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::monomial(M::one())
    }

    pub fn monomial(m: M) -> Self {
        Poly {
            terms: alloc::vec![(m, 1)],
        }
    }

    /// Collect terms, combining repeats; zero coefficients are dropped.
    pub fn from_terms<I: IntoIterator<Item = (M, u64)>>(it: I) -> Result<Self> {
        let mut v: Vec<(M, u64)> = it.into_iter().filter(|t| t.1 != 0).collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(M, u64)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = add_coeff(last.1, c)?,
                _ => out.push((m, c)),
            }
        }
        Ok(Poly { terms: out })
    }

    /// Terms already sorted in strictly decreasing order with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(M, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 > 0));
        Poly { terms }
    }

    fn from_map(map: HashMap<M, u64>) -> Self {
        let mut v: Vec<(M, u64)> = map.into_iter().filter(|t| t.1 != 0).collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms: v }
    }

    pub fn terms(&self) -> &[(M, u64)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(M, u64)> {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = &(M, u64)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.iter().map(|t| &t.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(M, u64)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &M) -> u64 {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn contains(&self, m: &M) -> bool {
        self.coefficient(m) > 0
    }

    /// Sum of coefficients. For a q-character this is the dimension.
    pub fn mass(&self) -> Result<u64> {
        self.terms
            .iter()
            .try_fold(0u64, |acc, t| add_coeff(acc, t.1))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), add_coeff(a[i].1, b[j].1)?));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Poly { terms: out })
    }

    /// `self - other`; every coefficient of `other` must be covered.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while j < b.len() {
            if i >= a.len() || a[i].0 < b[j].0 {
                return Err(Error::NegativeCoefficient(b[j].0.to_string()));
            }
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Equal => {
                    let c = a[i]
                        .1
                        .checked_sub(b[j].1)
                        .ok_or_else(|| Error::NegativeCoefficient(b[j].0.to_string()))?;
                    if c > 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
                Ordering::Less => unreachable!(),
            }
        }
        out.extend_from_slice(&a[i..]);
        Ok(Poly { terms: out })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.len() == 1 && self.terms[0].1 == 1 {
            return Ok(other.mul_monomial(&self.terms[0].0));
        }
        if other.len() == 1 && other.terms[0].1 == 1 {
            return Ok(self.mul_monomial(&other.terms[0].0));
        }
        let mut map: HashMap<M, u64> = HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 24));
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let cd = c.checked_mul(*d).ok_or(Error::CoefficientOverflow)?;
                let slot = map.entry(m.mul(n)).or_insert(0);
                *slot = add_coeff(*slot, cd)?;
            }
        }
        Ok(Poly::from_map(map))
    }

    pub fn try_product<'a, I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Self>,
        M: 'a,
    {
        let mut acc = Poly::one();
        for f in factors {
            acc = acc.try_mul(f)?;
        }
        Ok(acc)
    }

    /// Multiplication by a monomial keeps the order, so no sort is needed.
    pub fn mul_monomial(&self, m: &M) -> Self {
        Poly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), *c)).collect(),
        }
    }

    pub fn try_scale(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Ok(Poly::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.checked_mul(k).ok_or(Error::CoefficientOverflow)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly { terms })
    }

    /// Apply a map to every monomial and re-collect.
    pub fn map_monomials<N: Monomial, F: FnMut(&M) -> N>(&self, mut f: F) -> Result<Poly<N>> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), *c)))
    }

    /// First monomial in term order where the coefficients differ, with the
    /// two coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(M, u64, u64)> {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return None,
                (Some(x), None) => return Some((x.0.clone(), x.1, 0)),
                (None, Some(y)) => return Some((y.0.clone(), 0, y.1)),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => return Some((x.0.clone(), x.1, 0)),
                    Ordering::Less => return Some((y.0.clone(), 0, y.1)),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return Some((x.0.clone(), x.1, y.1));
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl QPolynomial {
    pub fn tau(&self, b: i32) -> QPolynomial {
        // a uniform shift preserves the term order
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.tau(b), *c)).collect(),
        }
    }

    pub fn iota(&self) -> QPolynomial {
        self.map_monomials(|m| m.iota())
            .expect("a bijection on monomials cannot overflow")
    }

    pub fn reflect(&self) -> QPolynomial {
        self.map_monomials(|m| m.reflect())
            .expect("a bijection on monomials cannot overflow")
    }

    pub fn dominant_terms(&self) -> Vec<(LMonomial, u64)> {
        self.terms.iter().filter(|t| t.0.is_dominant()).cloned().collect()
    }

    pub fn anti_dominant_terms(&self) -> Vec<(LMonomial, u64)> {
        self.terms
            .iter()
            .filter(|t| t.0.is_anti_dominant())
            .cloned()
            .collect()
    }
}

impl<M: Monomial> core::ops::Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: &Poly<M>) -> Poly<M> {
        self.try_add(rhs).expect("coefficient overflow")
    }
}

impl<M: Monomial> core::ops::Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: &Poly<M>) -> Poly<M> {
        self.try_mul(rhs).expect("coefficient overflow")
    }
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != 1 {
                write!(f, "{}*", c)?;
            }
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

impl<M: Monomial> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl FromStr for QPolynomial {
    type Err = Error;

    /// Terms separated by `+`, each with an optional `c*` prefix.
    fn from_str(s: &str) -> Result<QPolynomial> {
        let mut terms = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty term in {:?}", s)));
            }
            let (c, m) = match part.split_once('*') {
                Some((c, rest)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) => {
                    let c: u64 = c
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient in {:?}", part)))?;
                    (c, rest)
                }
                _ => (1, part),
            };
            terms.push((m.parse::<LMonomial>()?, c));
        }
        Poly::from_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render_roundtrip() {
        let x = p("1_0 + 2*1_2^-1 2_1");
        assert_eq!(x.to_string(), "1_0 + 2*1_2^-1 2_1");
        assert_eq!(x.mass().unwrap(), 3);
    }

    #[test]
    fn product_and_quotient() {
        let a = p("1_0 + 1_2^-1 2_1");
        let b = p("2_0 + 2_6^-1");
        let ab = a.try_mul(&b).unwrap();
        assert_eq!(ab.mass().unwrap(), 4);
        assert_eq!(ab.coefficient(&"1_0 2_0".parse().unwrap()), 1);
        let sum = ab.try_add(&a).unwrap();
        assert_eq!(sum.try_sub(&a).unwrap(), ab);
    }

    #[test]
    fn subtraction_rejects_negatives() {
        let a = p("1_0");
        let b = p("1_2");
        assert!(matches!(a.try_sub(&b), Err(Error::NegativeCoefficient(_))));
        assert!(matches!(
            p("1_0").try_sub(&p("2*1_0")),
            Err(Error::NegativeCoefficient(_))
        ));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Poly::from_terms([(LMonomial::one(), u64::MAX)]).unwrap();
        assert_eq!(big.try_add(&Poly::one()), Err(Error::CoefficientOverflow));
        assert_eq!(big.try_mul(&p("2*1")), Err(Error::CoefficientOverflow));
    }

    #[test]
    fn first_difference_reports_earliest_term() {
        let a = p("1_0 + 1_2^-1 2_1");
        let b = p("1_0 + 2*1_2^-1 2_1");
        let d = a.first_difference(&b).unwrap();
        assert_eq!(d.0.to_string(), "1_2^-1 2_1");
        assert_eq!((d.1, d.2), (1, 2));
        assert!(a.first_difference(&a).is_none());
    }
}
