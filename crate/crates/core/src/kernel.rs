//! Weight-sliced evaluation of sums of products of q-characters.
//!
//! Monomials are re-encoded as dense exponent vectors over the variables that
//! occur in the inputs. Work proceeds one weight space at a time in
//! decreasing height, so only a single slice of a large product is ever held
//! in memory.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::monomial::{LMonomial, Node, Var, Weight};
use crate::poly::QPolynomial;

/// `sign * product of factors`; an empty factor list is the constant 1.
pub(crate) struct Summand<'a> {
    pub sign: i64,
    pub factors: Vec<&'a QPolynomial>,
}

impl<'a> Summand<'a> {
    pub fn plus(factors: Vec<&'a QPolynomial>) -> Summand<'a> {
        Summand { sign: 1, factors }
    }

    pub fn minus(factors: Vec<&'a QPolynomial>) -> Summand<'a> {
        Summand { sign: -1, factors }
    }
}

enum Outcome {
    Zero,
    /// Largest monomial with a nonzero net coefficient.
    Nonzero(LMonomial, i128),
    Quotient(QPolynomial),
    Collected(Vec<(LMonomial, i128)>),
}

/// Restricts a scan to some weight spaces and monomials.
pub(crate) struct Filter<'f> {
    pub weight: &'f dyn Fn(Weight) -> bool,
    pub monomial: &'f dyn Fn(&LMonomial) -> bool,
}

struct Layout {
    slots: Vec<Var>,
    index: BTreeMap<Var, usize>,
}

impl Layout {
    fn new<'a, I: IntoIterator<Item = &'a QPolynomial>>(polys: I) -> Layout {
        let mut vars = BTreeSet::new();
        for p in polys {
            for (m, _) in p.iter() {
                for &(v, _) in m.factors() {
                    vars.insert(v);
                }
            }
        }
        let slots: Vec<Var> = vars.into_iter().collect();
        let index = slots.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Layout { slots, index }
    }

    fn encode<K: Key>(&self, m: &LMonomial) -> K {
        K::encode(m.factors().iter().map(|&(v, e)| (self.index[&v], e)))
    }

    fn decode<K: Key>(&self, key: &K) -> LMonomial {
        let mut d = [0i32; MAX_SLOTS];
        key.digits(&mut d[..self.slots.len()]);
        let f = d[..self.slots.len()]
            .iter()
            .zip(&self.slots)
            .filter(|(e, _)| **e != 0)
            .map(|(e, v)| (*v, *e))
            .collect();
        LMonomial::from_sorted(f)
    }
}

const MAX_SLOTS: usize = 256;

/// Exponent vector over the layout's slots. Sums and differences are only
/// meaningful while every entry stays within `LIMIT` in absolute value.
trait Key: Copy + Eq + core::hash::Hash {
    const LIMIT: i32;
    const SLOTS: usize;
    fn encode<I: Iterator<Item = (usize, i32)>>(it: I) -> Self;
    fn digits(&self, out: &mut [i32]);
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
}

impl<const N: usize> Key for [i8; N] {
    const LIMIT: i32 = i8::MAX as i32;
    const SLOTS: usize = N;

    fn encode<I: Iterator<Item = (usize, i32)>>(it: I) -> Self {
        let mut out = [0i8; N];
        for (i, e) in it {
            out[i] = e as i8;
        }
        out
    }

    fn digits(&self, out: &mut [i32]) {
        for (o, e) in out.iter_mut().zip(self) {
            *o = *e as i32;
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = [0i8; N];
        for i in 0..N {
            out[i] = self[i].wrapping_add(o[i]);
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        let mut out = [0i8; N];
        for i in 0..N {
            out[i] = self[i].wrapping_sub(o[i]);
        }
        out
    }
}

/// Up to 32 exponents in `-7..=7`, as the integer `sum e_i 16^i`. The
/// balanced base-16 expansion is unique, so integer addition is exact as
/// long as the entries of the result stay in range.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Packed(i128);

impl Key for Packed {
    const LIMIT: i32 = 7;
    const SLOTS: usize = 32;

    fn encode<I: Iterator<Item = (usize, i32)>>(it: I) -> Self {
        Packed(it.fold(0i128, |acc, (i, e)| acc + ((e as i128) << (4 * i))))
    }

    fn digits(&self, out: &mut [i32]) {
        let mut v = self.0;
        for o in out.iter_mut() {
            let mut d = (v & 15) as i32;
            if d > 7 {
                d -= 16;
            }
            *o = d;
            v = (v - d as i128) >> 4;
        }
    }

    fn add(&self, o: &Self) -> Self {
        Packed(self.0.wrapping_add(o.0))
    }

    fn sub(&self, o: &Self) -> Self {
        Packed(self.0.wrapping_sub(o.0))
    }
}

/// Two [`Packed`] halves, for up to 64 exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Packed2(Packed, Packed);

impl Key for Packed2 {
    const LIMIT: i32 = 7;
    const SLOTS: usize = 64;

    fn encode<I: Iterator<Item = (usize, i32)>>(it: I) -> Self {
        let (mut lo, mut hi) = (0i128, 0i128);
        for (i, e) in it {
            if i < 32 {
                lo += (e as i128) << (4 * i);
            } else {
                hi += (e as i128) << (4 * (i - 32));
            }
        }
        Packed2(Packed(lo), Packed(hi))
    }

    fn digits(&self, out: &mut [i32]) {
        let k = out.len().min(32);
        let (a, b) = out.split_at_mut(k);
        self.0.digits(a);
        self.1.digits(b);
    }

    fn add(&self, o: &Self) -> Self {
        Packed2(self.0.add(&o.0), self.1.add(&o.1))
    }

    fn sub(&self, o: &Self) -> Self {
        Packed2(self.0.sub(&o.0), self.1.sub(&o.1))
    }
}

/// Sum of `exponent * shift` over the node 1 variables. Additive under
/// multiplication, so it refines the weight grading of a product. Grading
/// by node 2 as well splits the groups too finely to pay off.
type Grade = i64;

fn grade(m: &LMonomial) -> Grade {
    m.factors()
        .iter()
        .filter(|(v, _)| v.node == Node::One)
        .map(|&(v, e)| e as i64 * v.shift as i64)
        .sum()
}

struct Group<K> {
    grade: Grade,
    items: Vec<(K, u64)>,
}

/// One weight space, split by grade.
type Slice<K> = Vec<Group<K>>;

fn group_terms<K: Key>(mut terms: Vec<(Grade, K, u64)>) -> Slice<K> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Slice<K> = Vec::new();
    for (g, k, c) in terms {
        match out.last_mut() {
            Some(last) if last.grade == g => last.items.push((k, c)),
            _ => out.push(Group {
                grade: g,
                items: alloc::vec![(k, c)],
            }),
        }
    }
    out
}

struct Sliced<K> {
    by_weight: BTreeMap<Weight, Slice<K>>,
    max_abs: i32,
    min_height: i64,
}

impl<K: Key> Sliced<K> {
    fn new(layout: &Layout, p: &QPolynomial) -> Sliced<K> {
        let mut raw: BTreeMap<Weight, Vec<(Grade, K, u64)>> = BTreeMap::new();
        let mut max_abs = 0;
        let mut min_height = i64::MAX;
        for (m, c) in p.iter() {
            for &(_, e) in m.factors() {
                max_abs = max_abs.max(e.abs());
            }
            min_height = min_height.min(m.height());
            if max_abs <= K::LIMIT {
                raw.entry(m.weight())
                    .or_default()
                    .push((grade(m), layout.encode(m), *c));
            }
        }
        Sliced {
            by_weight: raw.into_iter().map(|(w, t)| (w, group_terms(t))).collect(),
            max_abs,
            min_height,
        }
    }

    fn get(&self, w: &Weight) -> Option<&Slice<K>> {
        self.by_weight.get(w)
    }
}

fn order_key(w: Weight) -> (i64, i64, i64) {
    (-w.height(), w.w1, w.w2)
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn spend(&mut self, n: usize) -> Result<()> {
        self.used = self.used.saturating_add(n as u64);
        if self.used > self.limit {
            return Err(Error::WorkBudgetExceeded(self.limit));
        }
        Ok(())
    }
}

/// `sign * a * b` (or `sign * a`) lands in grade `grade`.
struct Task<'s, K> {
    grade: Grade,
    a: &'s [(K, u64)],
    b: Option<&'s [(K, u64)]>,
    sign: i64,
}

fn pair_tasks<'s, K>(tasks: &mut Vec<Task<'s, K>>, a: &'s Slice<K>, b: &'s Slice<K>, sign: i64) {
    for ga in a {
        for gb in b {
            tasks.push(Task {
                grade: ga.grade + gb.grade,
                a: &ga.items,
                b: Some(&gb.items),
                sign,
            });
        }
    }
}

/// Coefficients of one grade. Grades are usually tiny, so a short list
/// is scanned linearly until it grows past `SMALL`.
struct Acc<K> {
    small: Vec<(K, i64)>,
    map: HashMap<K, i64>,
}

const SMALL: usize = 24;

impl<K: Key> Acc<K> {
    fn new() -> Acc<K> {
        Acc {
            small: Vec::new(),
            map: HashMap::new(),
        }
    }

    fn clear(&mut self) {
        self.small.clear();
        if self.map.capacity() > 4 * SMALL {
            // iteration cost follows capacity, not length
            self.map = HashMap::new();
        } else {
            self.map.clear();
        }
    }

    fn add(&mut self, k: K, v: i64) -> Result<()> {
        if self.map.is_empty() {
            if let Some(e) = self.small.iter_mut().find(|e| e.0 == k) {
                e.1 = e.1.checked_add(v).ok_or(Error::CoefficientOverflow)?;
                return Ok(());
            }
            if self.small.len() < SMALL {
                self.small.push((k, v));
                return Ok(());
            }
            self.map.extend(self.small.drain(..));
        }
        let slot = self.map.entry(k).or_insert(0);
        *slot = slot.checked_add(v).ok_or(Error::CoefficientOverflow)?;
        Ok(())
    }

    fn iter(&self) -> impl Iterator<Item = (&K, &i64)> {
        self.small.iter().map(|(k, v)| (k, v)).chain(self.map.iter())
    }
}

fn accumulate<K: Key>(acc: &mut Acc<K>, t: &Task<'_, K>, budget: &mut Budget) -> Result<()> {
    let Some(b) = t.b else {
        for (x, c) in t.a {
            acc.add(*x, t.sign * *c as i64)?;
        }
        return Ok(());
    };
    budget.spend(t.a.len() * b.len())?;
    for (x, c) in t.a {
        for (y, d) in b {
            let cd = (*c as i64)
                .checked_mul(*d as i64)
                .ok_or(Error::CoefficientOverflow)?;
            acc.add(x.add(y), t.sign * cd)?;
        }
    }
    Ok(())
}

/// `Ok(None)` when some exponent leaves the range of the key type.
fn run<K: Key>(
    layout: &Layout,
    num: &[Summand<'_>],
    den: Option<&QPolynomial>,
    filter: Option<&Filter<'_>>,
    limit: u64,
    floor: Option<Weight>,
) -> Result<Option<Outcome>> {
    if layout.slots.len() > K::SLOTS {
        return Ok(None);
    }
    let one = QPolynomial::one();
    let mut terms: Vec<(i64, Vec<Sliced<K>>)> = Vec::new();
    for s in num {
        let mut f: Vec<Sliced<K>> = s.factors.iter().map(|p| Sliced::new(layout, p)).collect();
        if f.is_empty() {
            f.push(Sliced::new(layout, &one));
        }
        if f.len() > 2 {
            return Err(Error::InvalidParameters("summands have at most two factors".into()));
        }
        if f.iter().map(|x| x.max_abs).sum::<i32>() > K::LIMIT {
            return Ok(None);
        }
        if f.iter().any(|x| x.by_weight.is_empty()) {
            continue;
        }
        terms.push((s.sign, f));
    }

    let mut work: BTreeSet<(i64, i64, i64)> = BTreeSet::new();
    let mut num_min = i64::MAX;
    for (_, f) in &terms {
        num_min = num_min.min(f.iter().map(|x| x.min_height).sum());
        if f.len() == 1 {
            work.extend(f[0].by_weight.keys().map(|w| order_key(*w)));
        } else {
            for a in f[0].by_weight.keys() {
                for b in f[1].by_weight.keys() {
                    work.insert(order_key(*a + *b));
                }
            }
        }
    }

    let den = match den {
        Some(d) => {
            let lead = d.leading().ok_or(Error::NotDivisible)?;
            let s: Sliced<K> = Sliced::new(layout, d);
            if s.max_abs > K::LIMIT {
                return Ok(None);
            }
            let head_w = lead.0.weight();
            let head_slice = &s.by_weight[&head_w];
            let shape_ok = head_slice.len() == 1
                && head_slice[0].items.len() == 1
                && s.by_weight.keys().all(|w| *w == head_w || w.height() < head_w.height());
            if !shape_ok {
                return Err(Error::InvalidParameters(
                    "divisor must have a one-dimensional top weight space".into(),
                ));
            }
            let (b0, c0) = head_slice[0].items[0];
            let head_g = head_slice[0].grade;
            Some((s, head_w, head_g, b0, c0))
        }
        None => None,
    };
    // with a floor the inputs are truncated and their lowest terms mean
    // nothing
    let t_min = match &den {
        _ if floor.is_some() => i64::MIN,
        Some((s, ..)) if num_min != i64::MAX => num_min - s.min_height,
        _ => i64::MAX,
    };
    let stop = floor.map(|f| f + den.as_ref().map_or(Weight::default(), |d| d.1));

    let n = layout.slots.len();
    let mut budget = Budget { used: 0, limit };
    let mut quotient: BTreeMap<Weight, Slice<K>> = BTreeMap::new();
    let mut q_max_abs = 0i32;
    let mut out_terms: Vec<(LMonomial, u64)> = Vec::new();
    let mut worst: Option<(LMonomial, i128)> = None;
    let mut acc: Acc<K> = Acc::new();
    let mut collected: Vec<(LMonomial, i128)> = Vec::new();
    let mut dx = [0i32; MAX_SLOTS];
    let mut db = [0i32; MAX_SLOTS];
    if let Some((_, _, _, b0, _)) = &den {
        b0.digits(&mut db[..n]);
    }

    while let Some(key) = work.pop_first() {
        let nu = Weight::new(key.1, key.2);
        if let Some(f) = stop {
            if nu.height() < f.height() {
                break;
            }
            if !nu.dominates(f) {
                continue;
            }
        }
        if filter.is_some_and(|f| !(f.weight)(nu)) {
            continue;
        }
        let mut tasks: Vec<Task<'_, K>> = Vec::new();
        for (sign, f) in &terms {
            if f.len() == 1 {
                if let Some(sl) = f[0].get(&nu) {
                    for g in sl {
                        tasks.push(Task {
                            grade: g.grade,
                            a: &g.items,
                            b: None,
                            sign: *sign,
                        });
                    }
                }
            } else {
                for (a, sa) in &f[0].by_weight {
                    if let Some(sb) = f[1].get(&(nu - *a)) {
                        pair_tasks(&mut tasks, sa, sb, *sign);
                    }
                }
            }
        }
        let assign = match &den {
            Some((ds, head_w, _, _, _)) => {
                if q_max_abs + ds.max_abs > K::LIMIT {
                    return Ok(None);
                }
                for (mu, qs) in &quotient {
                    let beta = nu - *mu;
                    if beta == *head_w {
                        continue;
                    }
                    if let Some(dsl) = ds.get(&beta) {
                        pair_tasks(&mut tasks, qs, dsl, -1);
                    }
                }
                Some(nu.height() - head_w.height() >= t_min)
            }
            None => None,
        };
        tasks.sort_unstable_by_key(|t| t.grade);

        let mut q_slice: Slice<K> = Vec::new();
        let mut i = 0;
        while i < tasks.len() {
            let g = tasks[i].grade;
            acc.clear();
            while i < tasks.len() && tasks[i].grade == g {
                accumulate(&mut acc, &tasks[i], &mut budget)?;
                i += 1;
            }
            if let Some((_, _, head_g, b0, c0)) = &den {
                if assign != Some(true) {
                    if acc.iter().any(|(_, c)| *c != 0) {
                        return Err(Error::NotDivisible);
                    }
                    continue;
                }
                let mut items = Vec::new();
                for (x, c) in acc.iter() {
                    if *c == 0 {
                        continue;
                    }
                    if *c < 0 || !(*c as u64).is_multiple_of(*c0) {
                        return Err(Error::NotDivisible);
                    }
                    x.digits(&mut dx[..n]);
                    for j in 0..n {
                        let e = (dx[j] - db[j]).abs();
                        if e > K::LIMIT {
                            return Ok(None);
                        }
                        q_max_abs = q_max_abs.max(e);
                    }
                    items.push((x.sub(b0), *c as u64 / c0));
                }
                if !items.is_empty() {
                    q_slice.push(Group {
                        grade: g - head_g,
                        items,
                    });
                }
                continue;
            }
            for (x, c) in acc.iter() {
                if *c == 0 {
                    continue;
                }
                let m = layout.decode(x);
                match filter {
                    Some(f) => {
                        if (f.monomial)(&m) {
                            collected.push((m, *c as i128));
                        }
                    }
                    None => {
                        if worst.as_ref().is_none_or(|w| m > w.0) {
                            worst = Some((m, *c as i128));
                        }
                    }
                }
            }
        }
        drop(tasks);

        if let Some((ds, head_w, ..)) = &den {
            if !q_slice.is_empty() {
                let mu = nu - *head_w;
                for beta in ds.by_weight.keys() {
                    if beta != head_w {
                        work.insert(order_key(mu + *beta));
                    }
                }
                for grp in &q_slice {
                    for (q, c) in &grp.items {
                        out_terms.push((layout.decode(q), *c));
                    }
                }
                quotient.insert(mu, q_slice);
            }
            continue;
        }
        if filter.is_none() {
            if let Some(w) = &worst {
                // slices come in decreasing height, and the first nonzero
                // slice holds the largest monomial unless a later slice of
                // equal height beats it
                let h = w.0.height();
                if work.first().is_none_or(|k| -k.0 < h) {
                    break;
                }
            }
        }
    }

    if filter.is_some() {
        collected.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        return Ok(Some(Outcome::Collected(collected)));
    }
    if den.is_some() {
        out_terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        return Ok(Some(Outcome::Quotient(QPolynomial::from_sorted_unchecked(out_terms))));
    }
    Ok(Some(match worst {
        None => Outcome::Zero,
        Some((m, c)) => Outcome::Nonzero(m, c),
    }))
}

fn dispatch(
    num: &[Summand<'_>],
    den: Option<&QPolynomial>,
    filter: Option<&Filter<'_>>,
    limit: u64,
    floor: Option<Weight>,
) -> Result<Outcome> {
    let layout = Layout::new(
        num.iter()
            .flat_map(|s| s.factors.iter().copied())
            .chain(den),
    );
    let n = layout.slots.len();
    let packed = if n <= Packed::SLOTS {
        run::<Packed>(&layout, num, den, filter, limit, floor)?
    } else if n <= Packed2::SLOTS {
        run::<Packed2>(&layout, num, den, filter, limit, floor)?
    } else {
        None
    };
    if let Some(o) = packed {
        return Ok(o);
    }
    let wide = match n {
        0..=32 => run::<[i8; 32]>(&layout, num, den, filter, limit, floor),
        33..=64 => run::<[i8; 64]>(&layout, num, den, filter, limit, floor),
        65..=128 => run::<[i8; 128]>(&layout, num, den, filter, limit, floor),
        129..=MAX_SLOTS => run::<[i8; MAX_SLOTS]>(&layout, num, den, filter, limit, floor),
        n => Err(Error::InvalidParameters(alloc::format!(
            "{} distinct variables is more than the kernel supports",
            n
        ))),
    }?;
    wide.ok_or(Error::CoefficientOverflow)
}

/// Largest monomial of the sum with a nonzero coefficient, if any.
pub(crate) fn residual(num: &[Summand<'_>], limit: u64) -> Result<Option<(LMonomial, i128)>> {
    match dispatch(num, None, None, limit, None)? {
        Outcome::Nonzero(m, c) => Ok(Some((m, c))),
        _ => Ok(None),
    }
}

/// The polynomial `q` with `sum = den * q`.
pub(crate) fn divide(num: &[Summand<'_>], den: &QPolynomial, limit: u64) -> Result<QPolynomial> {
    divide_above(num, den, limit, None)
}

/// The terms of the quotient whose weight dominates `floor`. Other weight
/// spaces are neither computed nor checked, so the inputs only need to be
/// correct in the weights that reach the computed part.
pub(crate) fn divide_above(
    num: &[Summand<'_>],
    den: &QPolynomial,
    limit: u64,
    floor: Option<Weight>,
) -> Result<QPolynomial> {
    match dispatch(num, Some(den), None, limit, floor)? {
        Outcome::Quotient(q) => Ok(q),
        _ => unreachable!("division always yields a quotient"),
    }
}

/// Nonzero terms of the sum that pass the filter, in decreasing term order.
pub(crate) fn collect(
    num: &[Summand<'_>],
    filter: &Filter<'_>,
    limit: u64,
) -> Result<Vec<(LMonomial, i128)>> {
    match dispatch(num, None, Some(filter), limit, None)? {
        Outcome::Collected(v) => Ok(v),
        _ => unreachable!("a filtered scan always collects"),
    }
}

/// `a * b`.
pub(crate) fn multiply(a: &QPolynomial, b: &QPolynomial, limit: u64) -> Result<QPolynomial> {
    multiply_above(a, b, limit, None)
}

/// The terms of `a * b` whose weight dominates `floor`.
pub(crate) fn multiply_above(
    a: &QPolynomial,
    b: &QPolynomial,
    limit: u64,
    floor: Option<Weight>,
) -> Result<QPolynomial> {
    let all = Filter {
        weight: &|_| true,
        monomial: &|_| true,
    };
    let terms = match dispatch(&[Summand::plus(alloc::vec![a, b])], None, Some(&all), limit, floor)? {
        Outcome::Collected(v) => v,
        _ => unreachable!("a filtered scan always collects"),
    };
    let terms = terms
        .into_iter()
        .map(|(m, c)| u64::try_from(c).map(|c| (m, c)).map_err(|_| Error::CoefficientOverflow))
        .collect::<Result<Vec<_>>>()?;
    Ok(QPolynomial::from_sorted_unchecked(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(s: &str) -> QPolynomial {
        s.parse().unwrap()
    }

    fn key_arithmetic<K: Key>(n: usize) {
        // small deterministic walk over exponent vectors in -3..=3
        let mut state = 0x2545_f491u32;
        let mut next = || {
            state = state.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
            ((state >> 16) % 7) as i32 - 3
        };
        for _ in 0..200 {
            let a: Vec<i32> = (0..n).map(|_| next()).collect();
            let b: Vec<i32> = (0..n).map(|_| next()).collect();
            let ka = K::encode(a.iter().copied().enumerate());
            let kb = K::encode(b.iter().copied().enumerate());
            let mut d = vec![0; n];
            ka.digits(&mut d);
            assert_eq!(d, a);
            ka.add(&kb).digits(&mut d);
            assert_eq!(d, a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>());
            ka.sub(&kb).digits(&mut d);
            assert_eq!(d, a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>());
            assert!(ka.add(&kb).sub(&kb) == ka);
        }
    }

    #[test]
    fn keys_round_trip() {
        key_arithmetic::<Packed>(32);
        key_arithmetic::<Packed>(5);
        key_arithmetic::<Packed2>(64);
        key_arithmetic::<Packed2>(40);
        key_arithmetic::<[i8; 32]>(32);
    }

    #[test]
    fn residual_of_identity_is_zero() {
        let a = p("1_0 + 1_2^-1 2_1");
        let b = p("2_0 + 2_6^-1");
        let ab = a.try_mul(&b).unwrap();
        let r = residual(
            &[Summand::plus(vec![&a, &b]), Summand::minus(vec![&ab])],
            u64::MAX,
        )
        .unwrap();
        assert_eq!(r, None);
    }

    #[test]
    fn residual_reports_largest() {
        let a = p("1_0 + 1_2^-1 2_1");
        let b = p("1_0");
        let r = residual(&[Summand::plus(vec![&a]), Summand::minus(vec![&b])], u64::MAX)
            .unwrap()
            .unwrap();
        assert_eq!(r.0, "1_2^-1 2_1".parse().unwrap());
        assert_eq!(r.1, 1);
    }

    #[test]
    fn divide_roundtrip() {
        let a = p("1_0 + 1_2^-1 2_1 + 1_4 1_8^-1");
        let b = p("2_0 + 1_1 1_3 1_5 2_6^-1 + 2_12^-1");
        let ab = a.try_mul(&b).unwrap();
        let q = divide(&[Summand::plus(vec![&ab])], &b, u64::MAX).unwrap();
        assert_eq!(q, a);
        assert!(matches!(
            divide(&[Summand::plus(vec![&a])], &b, u64::MAX),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn collect_dominant_terms() {
        let a = p("1_0 + 1_2^-1 2_1 + 1_4 1_8^-1");
        let b = p("1_2 + 1_4^-1 2_3");
        let ab = a.try_mul(&b).unwrap();
        let f = Filter {
            weight: &|w: Weight| w.is_dominant(),
            monomial: &|m: &LMonomial| m.is_dominant(),
        };
        let got = collect(&[Summand::plus(vec![&a, &b])], &f, u64::MAX).unwrap();
        let want: Vec<(LMonomial, i128)> =
            ab.dominant_terms().into_iter().map(|(m, c)| (m, c as i128)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn multiply_matches_poly() {
        let a = p("1_0 + 1_2^-1 2_1 + 1_4 1_8^-1");
        let b = p("2_0 + 1_1 1_3 1_5 2_6^-1 + 2_12^-1");
        assert_eq!(multiply(&a, &b, u64::MAX).unwrap(), a.try_mul(&b).unwrap());
    }

    #[test]
    fn wide_exponents_fall_back() {
        // exponents beyond the packed range force the byte-array keys
        let a = p("1_0^6 2_1^-7 + 1_2^-1");
        let b = p("1_0^5 + 2_1^-3");
        assert_eq!(multiply(&a, &b, u64::MAX).unwrap(), a.try_mul(&b).unwrap());
        let ab = a.try_mul(&b).unwrap();
        let q = divide(&[Summand::plus(vec![&ab])], &b, u64::MAX).unwrap();
        assert_eq!(q, a);
    }

    #[test]
    fn many_variables() {
        // more than 32 and more than 64 slots
        for n in [40, 80] {
            let mut x = QPolynomial::one();
            for i in 0..n {
                let f: QPolynomial = alloc::format!("1_{} + 2_{}^-1", 2 * i, 2 * i + 1).parse().unwrap();
                x = x.try_mul(&f).unwrap();
                if x.len() > 64 {
                    break;
                }
            }
            let y: QPolynomial = alloc::format!("1_{} + 1_{}^-1", 4 * n, 4 * n + 2).parse().unwrap();
            let z = p("2_3 + 1_7^-2");
            assert_eq!(multiply(&x, &y, u64::MAX).unwrap(), x.try_mul(&y).unwrap());
            let wide = x.try_mul(&z).unwrap();
            assert_eq!(divide(&[Summand::plus(vec![&wide])], &z, u64::MAX).unwrap(), x);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = p("1_0 + 1_2^-1 2_1");
        assert!(matches!(
            residual(&[Summand::plus(vec![&a, &a])], 0),
            Err(Error::WorkBudgetExceeded(0))
        ));
    }
}
