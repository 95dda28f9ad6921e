//! The Weyl group of G2 acting on weights, and the invariance of weight
//! multiplicities of a character.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::monomial::{Node, Weight};
use crate::poly::QPolynomial;

/// Order of the Weyl group.
pub const ORDER: usize = 12;

/// `s_i(w) = w - w_i alpha_i`.
pub fn reflect(w: Weight, node: Node) -> Weight {
    let a = Weight::simple_root(node);
    let c = w.get(node);
    Weight::new(w.w1 - c * a.w1, w.w2 - c * a.w2)
}

/// All group elements applied to `w`, as words in the simple reflections
/// of length at most 6 (the longest element has length 6).
pub fn group_images(w: Weight) -> Vec<Weight> {
    // s1 s2 has order 6, so the reduced words are the alternating ones
    let mut out = Vec::with_capacity(ORDER);
    for first in [Node::One, Node::Two] {
        let mut x = w;
        let mut node = first;
        for len in 0..=6 {
            if len > 0 {
                x = reflect(x, node);
                node = node.other();
            }
            if first == Node::One || (len > 0 && len < 6) {
                out.push(x);
            }
        }
    }
    out
}

pub fn orbit(w: Weight) -> Vec<Weight> {
    let mut v = group_images(w);
    v.sort_unstable();
    v.dedup();
    v
}

/// The dominant weight in the orbit of `w`.
pub fn dominant_representative(w: Weight) -> Weight {
    let mut x = w;
    loop {
        if x.w1 < 0 {
            x = reflect(x, Node::One);
        } else if x.w2 < 0 {
            x = reflect(x, Node::Two);
        } else {
            return x;
        }
    }
}

/// Total multiplicity of each weight.
pub fn weight_multiset(p: &QPolynomial) -> BTreeMap<Weight, u64> {
    let mut m = BTreeMap::new();
    for (x, c) in p.iter() {
        *m.entry(x.weight()).or_insert(0) += c;
    }
    m
}

/// First weight whose multiplicity differs from that of its image under a
/// simple reflection.
pub fn invariance_violation(p: &QPolynomial) -> Option<(Weight, Node)> {
    let m = weight_multiset(p);
    for (w, c) in &m {
        for node in [Node::One, Node::Two] {
            if m.get(&reflect(*w, node)).copied().unwrap_or(0) != *c {
                return Some((*w, node));
            }
        }
    }
    None
}

pub fn is_weyl_invariant(p: &QPolynomial) -> bool {
    invariance_violation(p).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsystem::fundamental_character;

    #[test]
    fn reflections_are_involutions() {
        let w = Weight::new(3, -2);
        for n in [Node::One, Node::Two] {
            assert_eq!(reflect(reflect(w, n), n), w);
        }
        assert_eq!(reflect(Weight::simple_root(Node::One), Node::One), -Weight::simple_root(Node::One));
    }

    #[test]
    fn orbits() {
        assert_eq!(group_images(Weight::new(1, 1)).len(), ORDER);
        assert_eq!(orbit(Weight::new(1, 1)).len(), 12);
        assert_eq!(orbit(Weight::new(1, 0)).len(), 6);
        assert_eq!(orbit(Weight::new(0, 1)).len(), 6);
        assert_eq!(orbit(Weight::default()), [Weight::default()]);
        assert!(orbit(Weight::new(2, 1)).contains(&Weight::new(-2, -1)));
        assert_eq!(dominant_representative(Weight::new(-2, -1)), Weight::new(2, 1));
    }

    #[test]
    fn fundamentals_are_invariant() {
        for n in [Node::One, Node::Two] {
            assert!(is_weyl_invariant(&fundamental_character(n)));
        }
        let lopsided: QPolynomial = "1_0 + 1_2^-1 2_1".parse().unwrap();
        assert!(!is_weyl_invariant(&lopsided));
    }
}
