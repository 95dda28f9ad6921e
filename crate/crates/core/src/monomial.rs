//! Laurent monomials in the variables `Y_{i,aq^s}` with `a` fixed.
//!
//! A variable is written `i_s` (node `i`, shift `s`). Node 1 is the short
//! root, node 2 the long one.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A node of the G2 Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    One,
    Two,
}

impl Node {
    pub const ALL: [Node; 2] = [Node::One, Node::Two];

    /// The symmetrizer `r_i`: 1 for the short node, 3 for the long node.
    pub const fn r(self) -> i32 {
        match self {
            Node::One => 1,
            Node::Two => 3,
        }
    }

    /// Spacing between consecutive shifts of an sl2 string for this node.
    pub const fn step(self) -> i32 {
        2 * self.r()
    }

    pub const fn index(self) -> usize {
        match self {
            Node::One => 0,
            Node::Two => 1,
        }
    }

    pub const fn label(self) -> u8 {
        match self {
            Node::One => 1,
            Node::Two => 2,
        }
    }

    pub fn from_label(label: i64) -> Option<Node> {
        match label {
            1 => Some(Node::One),
            2 => Some(Node::Two),
            _ => None,
        }
    }

    pub const fn other(self) -> Node {
        match self {
            Node::One => Node::Two,
            Node::Two => Node::One,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The variable `Y_{node, aq^shift}`. Ordered by `(node, shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub node: Node,
    pub shift: i32,
}

impl Var {
    pub const fn new(node: Node, shift: i32) -> Var {
        Var { node, shift }
    }
}

pub type Factor = (Var, i32);

/// Weight in the basis of fundamental weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub w1: i64,
    pub w2: i64,
}

impl Weight {
    pub const fn new(w1: i64, w2: i64) -> Weight {
        Weight { w1, w2 }
    }

    /// `alpha_1 = 2 omega_1 - omega_2`, `alpha_2 = -3 omega_1 + 2 omega_2`.
    pub const fn simple_root(node: Node) -> Weight {
        match node {
            Node::One => Weight::new(2, -1),
            Node::Two => Weight::new(-3, 2),
        }
    }

    /// Height in the root basis. Since `omega_1 = 2 alpha_1 + alpha_2` and
    /// `omega_2 = 3 alpha_1 + 2 alpha_2`, the height is `3 w1 + 5 w2`.
    pub const fn height(self) -> i64 {
        3 * self.w1 + 5 * self.w2
    }

    pub const fn is_dominant(self) -> bool {
        self.w1 >= 0 && self.w2 >= 0
    }

    /// Coordinates in the basis of simple roots.
    pub const fn root_coords(self) -> (i64, i64) {
        (2 * self.w1 + 3 * self.w2, self.w1 + 2 * self.w2)
    }

    pub const fn from_root_coords(r1: i64, r2: i64) -> Weight {
        Weight::new(2 * r1 - 3 * r2, -r1 + 2 * r2)
    }

    /// Whether `self - o` is a sum of simple roots.
    pub const fn dominates(self, o: Weight) -> bool {
        let (a, b) = self.root_coords();
        let (c, d) = o.root_coords();
        a >= c && b >= d
    }

    /// Least upper bound in the dominance order.
    pub fn sup(self, o: Weight) -> Weight {
        let (a, b) = self.root_coords();
        let (c, d) = o.root_coords();
        Weight::from_root_coords(a.max(c), b.max(d))
    }

    /// Greatest lower bound in the dominance order.
    pub fn inf(self, o: Weight) -> Weight {
        let (a, b) = self.root_coords();
        let (c, d) = o.root_coords();
        Weight::from_root_coords(a.min(c), b.min(d))
    }

    pub const fn get(self, node: Node) -> i64 {
        match node {
            Node::One => self.w1,
            Node::Two => self.w2,
        }
    }
}

impl core::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.w1 + o.w1, self.w2 + o.w2)
    }
}

impl core::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.w1 - o.w1, self.w2 - o.w2)
    }
}

impl core::ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.w1, -self.w2)
    }
}

/// Sorted sparse exponent vector with no zero entries.
pub(crate) fn normalize(mut v: Vec<Factor>) -> Vec<Factor> {
    v.sort_unstable_by_key(|a| a.0);
    let mut out: Vec<Factor> = Vec::with_capacity(v.len());
    for (var, e) in v {
        match out.last_mut() {
            Some(last) if last.0 == var => last.1 += e,
            _ => out.push((var, e)),
        }
        if out.last().is_some_and(|l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `a * b^e` on sorted sparse vectors.
pub(crate) fn merge(a: &[Factor], b: &[Factor], e: i32) -> Vec<Factor> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, b[j].1 * e));
                j += 1;
            }
            Ordering::Equal => {
                let s = a[i].1 + b[j].1 * e;
                if s != 0 {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(v, x)| (v, x * e)));
    out
}

/// Lexicographic comparison of exponent vectors, keys read in increasing
/// `(node, shift)` order with absent keys counting as zero.
fn lex_cmp(a: &[Factor], b: &[Factor]) -> Ordering {
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
}

fn weight_of_factors(f: &[Factor]) -> Weight {
    let mut w = Weight::default();
    for &(v, e) in f {
        match v.node {
            Node::One => w.w1 += e as i64,
            Node::Two => w.w2 += e as i64,
        }
    }
    w
}

/// A Laurent monomial in the `Y` variables.
///
/// The total order (`Ord`) is the term order used for polynomials: first by
/// the height of the weight, then lexicographically on the exponent vector.
/// It is compatible with multiplication.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LMonomial {
    height: i64,
    factors: Box<[Factor]>,
}

impl LMonomial {
    pub fn one() -> LMonomial {
        LMonomial {
            height: 0,
            factors: Box::new([]),
        }
    }

    pub(crate) fn from_sorted(factors: Vec<Factor>) -> LMonomial {
        let height = weight_of_factors(&factors).height();
        LMonomial {
            height,
            factors: factors.into_boxed_slice(),
        }
    }

    /// Build from arbitrary `(node, shift, exponent)` triples; repeated
    /// variables are combined.
    pub fn from_triples<I: IntoIterator<Item = (Node, i32, i32)>>(it: I) -> LMonomial {
        let v = it.into_iter().map(|(n, s, e)| (Var::new(n, s), e)).collect();
        LMonomial::from_sorted(normalize(v))
    }

    pub fn from_factors<I: IntoIterator<Item = Factor>>(it: I) -> LMonomial {
        LMonomial::from_sorted(normalize(it.into_iter().collect()))
    }

    pub fn var(node: Node, shift: i32) -> LMonomial {
        LMonomial::from_sorted(alloc::vec![(Var::new(node, shift), 1)])
    }

    /// Factors sorted by `(node, shift)`, all exponents nonzero.
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, node: Node, shift: i32) -> i32 {
        let key = Var::new(node, shift);
        match self.factors.binary_search_by(|f| f.0.cmp(&key)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &LMonomial) -> LMonomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        LMonomial {
            height: self.height + other.height,
            factors: merge(&self.factors, &other.factors, 1).into_boxed_slice(),
        }
    }

    /// `self * tau_b(other)` without materialising the shifted factor.
    pub(crate) fn mul_shifted(&self, other: &LMonomial, b: i32) -> LMonomial {
        let a = &self.factors;
        let o = &other.factors;
        let mut out = Vec::with_capacity(a.len() + o.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < o.len() {
            let key = Var::new(o[j].0.node, o[j].0.shift + b);
            match a[i].0.cmp(&key) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((key, o[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1 + o[j].1;
                    if s != 0 {
                        out.push((key, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(o[j..].iter().map(|&(v, e)| (Var::new(v.node, v.shift + b), e)));
        LMonomial {
            height: self.height + other.height,
            factors: out.into_boxed_slice(),
        }
    }

    /// `self * other^e`.
    pub fn mul_pow(&self, other: &LMonomial, e: i32) -> LMonomial {
        LMonomial {
            height: self.height + other.height * e as i64,
            factors: merge(&self.factors, &other.factors, e).into_boxed_slice(),
        }
    }

    pub fn div(&self, other: &LMonomial) -> LMonomial {
        self.mul_pow(other, -1)
    }

    pub fn inv(&self) -> LMonomial {
        self.pow(-1)
    }

    pub fn pow(&self, e: i32) -> LMonomial {
        if e == 0 {
            return LMonomial::one();
        }
        LMonomial {
            height: self.height * e as i64,
            factors: self.factors.iter().map(|&(v, x)| (v, x * e)).collect(),
        }
    }

    pub fn weight(&self) -> Weight {
        weight_of_factors(&self.factors)
    }

    /// Height of the weight; each `A^{-1}` lowers it by one.
    pub fn height(&self) -> i64 {
        self.height
    }

    /// Total degree of the `node` variables.
    pub fn degree(&self, node: Node) -> i64 {
        self.factors
            .iter()
            .filter(|f| f.0.node == node)
            .map(|f| f.1 as i64)
            .sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.factors.iter().all(|f| f.1 > 0)
    }

    pub fn is_anti_dominant(&self) -> bool {
        self.factors.iter().all(|f| f.1 < 0)
    }

    pub fn is_i_dominant(&self, node: Node) -> bool {
        self.factors.iter().all(|f| f.0.node != node || f.1 > 0)
    }

    /// Variables at the largest shift in the support all carry negative
    /// exponents.
    pub fn is_right_negative(&self) -> Result<bool> {
        let top = self.max_shift().ok_or(Error::EmptyMonomial)?;
        Ok(self
            .factors
            .iter()
            .filter(|f| f.0.shift == top)
            .all(|f| f.1 < 0))
    }

    pub fn max_shift(&self) -> Option<i32> {
        self.factors.iter().map(|f| f.0.shift).max()
    }

    pub fn min_shift(&self) -> Option<i32> {
        self.factors.iter().map(|f| f.0.shift).min()
    }

    /// Add `b` to every shift.
    pub fn tau(&self, b: i32) -> LMonomial {
        if b == 0 {
            return self.clone();
        }
        LMonomial {
            height: self.height,
            factors: self
                .factors
                .iter()
                .map(|&(v, e)| (Var::new(v.node, v.shift + b), e))
                .collect(),
        }
    }

    /// The involution `Y_{i,aq^s} -> Y_{i,aq^{12-s}}^{-1}`.
    pub fn iota(&self) -> LMonomial {
        let v = self
            .factors
            .iter()
            .map(|&(v, e)| (Var::new(v.node, 12 - v.shift), -e))
            .collect();
        LMonomial::from_sorted(normalize(v))
    }

    /// Negate every shift, keeping exponents.
    pub fn reflect(&self) -> LMonomial {
        let v = self
            .factors
            .iter()
            .map(|&(v, e)| (Var::new(v.node, -v.shift), e))
            .collect();
        LMonomial::from_sorted(normalize(v))
    }

    /// The factors of one node as `(shift, exponent)` pairs, increasing shift.
    pub fn node_part(&self, node: Node) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.factors
            .iter()
            .filter(move |f| f.0.node == node)
            .map(|f| (f.0.shift, f.1))
    }
}

impl Ord for LMonomial {
    fn cmp(&self, other: &LMonomial) -> Ordering {
        self.height
            .cmp(&other.height)
            .then_with(|| lex_cmp(&self.factors, &other.factors))
    }
}

impl PartialOrd for LMonomial {
    fn partial_cmp(&self, other: &LMonomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for LMonomial {
    fn default() -> Self {
        LMonomial::one()
    }
}

impl core::ops::Mul for &LMonomial {
    type Output = LMonomial;
    fn mul(self, rhs: &LMonomial) -> LMonomial {
        LMonomial::mul(self, rhs)
    }
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}_{}", v.node, v.shift)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LMonomial({})", self)
    }
}

fn parse_int(s: &str) -> Result<i32> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    t.parse::<i32>()
        .map_err(|_| Error::Parse(alloc::format!("bad integer {:?}", s)))
}

fn parse_factor(tok: &str) -> Result<Factor> {
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, parse_int(e)?),
        None => (tok, 1),
    };
    let (node, shift) = base
        .split_once('_')
        .ok_or_else(|| Error::Parse(alloc::format!("expected i_s, got {:?}", tok)))?;
    let node = Node::from_label(parse_int(node)? as i64)
        .ok_or_else(|| Error::Parse(alloc::format!("unknown node in {:?}", tok)))?;
    Ok((Var::new(node, parse_int(shift)?), exp))
}

impl FromStr for LMonomial {
    type Err = Error;

    /// Accepts the rendered form, e.g. `1_0 1_2^-1 2_1`, with optional
    /// braces (`1_{12}^{-1}`) and `*` between factors. `1` is the identity.
    fn from_str(s: &str) -> Result<LMonomial> {
        let mut v = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*') {
            if tok.is_empty() || tok == "1" {
                continue;
            }
            v.push(parse_factor(tok)?);
        }
        Ok(LMonomial::from_sorted(normalize(v)))
    }
}

/// `A_{i,aq^s}`.
///
/// `A_{1,s} = 1_{s-1} 1_{s+1} 2_s^{-1}` and
/// `A_{2,s} = 2_{s-3} 2_{s+3} 1_{s-2}^{-1} 1_s^{-1} 1_{s+2}^{-1}`.
pub fn a_monomial(node: Node, s: i32) -> LMonomial {
    use Node::*;
    match node {
        One => LMonomial::from_triples([(One, s - 1, 1), (One, s + 1, 1), (Two, s, -1)]),
        Two => LMonomial::from_triples([
            (Two, s - 3, 1),
            (Two, s + 3, 1),
            (One, s - 2, -1),
            (One, s, -1),
            (One, s + 2, -1),
        ]),
    }
}

/// Exponents of the `A_{i,aq^s}` in a product of A-monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVector {
    entries: Box<[Factor]>,
}

impl AVector {
    pub fn from_entries<I: IntoIterator<Item = (Node, i32, i32)>>(it: I) -> AVector {
        let v = it.into_iter().map(|(n, s, e)| (Var::new(n, s), e)).collect();
        AVector {
            entries: normalize(v).into_boxed_slice(),
        }
    }

    pub fn entries(&self) -> &[Factor] {
        &self.entries
    }

    pub fn get(&self, node: Node, shift: i32) -> i32 {
        let key = Var::new(node, shift);
        match self.entries.binary_search_by(|f| f.0.cmp(&key)) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonpositive(&self) -> bool {
        self.entries.iter().all(|e| e.1 <= 0)
    }

    /// Number of `A^{-1}` factors, counted with sign.
    pub fn depth(&self) -> i64 {
        -self.entries.iter().map(|e| e.1 as i64).sum::<i64>()
    }

    pub fn only_node(&self, node: Node) -> bool {
        self.entries.iter().all(|e| e.0.node == node)
    }

    pub fn realize(&self) -> LMonomial {
        let mut m = LMonomial::one();
        for &(v, e) in self.entries.iter() {
            m = m.mul_pow(&a_monomial(v.node, v.shift), e);
        }
        m
    }
}

impl fmt::Display for AVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "A_{},{}^{}", v.node, v.shift, e)?;
        }
        Ok(())
    }
}

/// Write `m = base * prod A^{v}` and return `v`.
///
/// Works by triangular elimination: the variable of largest shift in
/// `m / base` is the top entry of exactly one `A_{1,*}` (`1_{s+1}`) or one
/// `A_{2,*}` (`2_{s+3}`).
pub fn factor_over_a(base: &LMonomial, m: &LMonomial) -> Result<AVector> {
    let mut rest: Vec<Factor> = merge(m.factors(), base.factors(), -1);
    let lo = match rest.iter().map(|f| f.0.shift).min() {
        Some(lo) => lo,
        None => return Ok(AVector::default()),
    };
    let mut out: Vec<Factor> = Vec::new();
    let fail = || Error::NotInLattice(m.div(base).to_string());
    while let Some(h) = rest.iter().map(|f| f.0.shift).max() {
        for node in Node::ALL {
            let e = rest
                .iter()
                .find(|f| f.0 == Var::new(node, h))
                .map(|f| f.1)
                .unwrap_or(0);
            if e == 0 {
                continue;
            }
            let a = h - node.r();
            // A_{1,a} reaches down to 1_{a-1}; A_{2,a} down to 2_{a-3}.
            if a - node.r() < lo {
                return Err(fail());
            }
            rest = merge(&rest, a_monomial(node, a).factors(), -e);
            out.push((Var::new(node, a), e));
        }
    }
    Ok(AVector {
        entries: normalize(out).into_boxed_slice(),
    })
}

/// Shorthand for [`LMonomial::weight`].
pub fn weight_of(m: &LMonomial) -> Weight {
    m.weight()
}

/// Owned string rendering of a monomial.
pub fn render(m: &LMonomial) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> LMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn a_monomials_match_cartan() {
        assert_eq!(a_monomial(Node::One, 1), m("1_0 1_2 2_1^-1"));
        assert_eq!(
            a_monomial(Node::Two, 3),
            m("2_0 2_6 1_1^-1 1_3^-1 1_5^-1")
        );
        assert_eq!(a_monomial(Node::One, 0).weight(), Weight::simple_root(Node::One));
        assert_eq!(a_monomial(Node::Two, 0).weight(), Weight::simple_root(Node::Two));
        assert_eq!(a_monomial(Node::One, 4).height(), 1);
        assert_eq!(a_monomial(Node::Two, 4).height(), 1);
    }

    #[test]
    fn render_and_parse() {
        let x = LMonomial::from_triples([(Node::Two, 1, 1), (Node::One, 2, -1), (Node::One, 0, 1)]);
        assert_eq!(x.to_string(), "1_0 1_2^-1 2_1");
        assert_eq!(m("1_{12}^{-1} * 2_3"), m("1_12^-1 2_3"));
        assert_eq!(m("1"), LMonomial::one());
        assert!("3_0".parse::<LMonomial>().is_err());
    }

    #[test]
    fn products_cancel() {
        let x = m("1_0 2_3^2");
        assert_eq!(x.mul(&x.inv()), LMonomial::one());
        assert_eq!(x.mul(&m("1_0^-1")), m("2_3^2"));
    }

    #[test]
    fn right_negative_examples() {
        assert!(m("1_2^-1 2_1").is_right_negative().unwrap());
        assert!(a_monomial(Node::One, 0).inv().is_right_negative().unwrap());
        assert!(!m("1_0 1_2").is_right_negative().unwrap());
        assert_eq!(LMonomial::one().is_right_negative(), Err(Error::EmptyMonomial));
    }

    #[test]
    fn factor_examples() {
        let base = m("1_0");
        let v = factor_over_a(&base, &m("1_2^-1 2_1")).unwrap();
        assert_eq!(v, AVector::from_entries([(Node::One, 1, -1)]));
        assert!(matches!(
            factor_over_a(&base, &m("1_1")),
            Err(Error::NotInLattice(_))
        ));
        let deep = m("1_0").mul(&a_monomial(Node::Two, 5).inv()).mul(&a_monomial(Node::One, 1).pow(-2));
        let v = factor_over_a(&m("1_0"), &deep).unwrap();
        assert_eq!(v.realize(), deep.div(&m("1_0")));
        assert_eq!(v.depth(), 3);
    }

    #[test]
    fn iota_and_tau() {
        assert_eq!(m("1_0").iota(), m("1_12^-1"));
        assert_eq!(m("1_0 2_3^-1").tau(4), m("1_4 2_7^-1"));
        assert_eq!(m("1_0 2_3^-1").iota().iota(), m("1_0 2_3^-1"));
    }

    #[test]
    fn term_order_is_graded() {
        let head = m("1_0");
        let lower = head.mul(&a_monomial(Node::One, 1).inv());
        assert!(head > lower);
        assert_eq!(head.height() - lower.height(), 1);
    }
}
