//! Closed-form dimensions of the five families.

use alloc::format;

use crate::catalog::{Family, FamilyId};
use crate::error::{Error, Result};
use crate::poly::QPolynomial;

/// `(coefficient, power of k, power of l)`.
type Term = (i128, u32, u32);

fn ev(terms: &[Term], k: i128, l: i128) -> i128 {
    terms
        .iter()
        .map(|&(c, a, b)| c * k.pow(a) * l.pow(b))
        .sum()
}

fn divide(num: i128, den: i128, what: &str) -> Result<u64> {
    if num % den != 0 || num < 0 {
        return Err(Error::NonIntegralResult(format!("{}: {}/{}", what, num, den)));
    }
    u64::try_from(num / den).map_err(|_| Error::CoefficientOverflow)
}

#[rustfmt::skip]
const T_B0: &[Term] = &[
    (54, 3, 3), (243, 3, 2), (363, 3, 1), (180, 3, 0), (2784, 2, 2), (1080, 2, 0), (162, 2, 4),
    (2880, 2, 1), (1134, 2, 3), (162, 1, 5), (1539, 1, 4), (5490, 1, 3), (9132, 1, 2), (7057, 1, 1),
    (2040, 1, 0), (54, 0, 6), (648, 0, 5), (3069, 0, 4), (7272, 0, 3), (8977, 0, 2), (5380, 0, 1),
    (1200, 0, 0),
];
#[rustfmt::skip]
const T_B1: &[Term] = &[
    (171, 2, 1), (120, 2, 0), (54, 2, 2), (600, 1, 0), (621, 1, 2), (108, 1, 3), (1116, 1, 1),
    (54, 0, 4), (450, 0, 3), (1341, 0, 2), (1665, 0, 1), (700, 0, 0),
];
#[rustfmt::skip]
const T_B2: &[Term] = &[
    (300, 2, 0), (261, 2, 1), (54, 2, 2), (891, 1, 2), (2376, 1, 1), (2040, 1, 0), (108, 1, 3),
    (54, 0, 4), (630, 0, 3), (2691, 0, 2), (4995, 0, 1), (3400, 0, 0),
];
#[rustfmt::skip]
const T_C: &[Term] = &[
    (3, 2, 0), (3, 2, 1), (12, 1, 0), (15, 1, 1), (3, 1, 2), (3, 0, 2), (12, 0, 1), (10, 0, 0),
];
#[rustfmt::skip]
const T_D: &[Term] = &[
    (3, 2, 1), (6, 2, 0), (3, 1, 2), (30, 1, 0), (21, 1, 1), (6, 0, 2), (30, 0, 1), (35, 0, 0),
];
#[rustfmt::skip]
const T_E00: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (81, 3, 3), (468, 3, 2), (825, 3, 1), (432, 3, 0),
    (81, 2, 4), (711, 2, 3), (2184, 2, 2), (2754, 2, 1), (1179, 2, 0), (27, 1, 5), (342, 1, 4),
    (1593, 1, 3), (3438, 1, 2), (3435, 1, 1), (1260, 1, 0), (18, 0, 5), (180, 0, 4), (696, 0, 3),
    (1296, 0, 2), (1160, 0, 1), (400, 0, 0),
];
#[rustfmt::skip]
const T_E01: &[Term] = &[
    (27, 4, 1), (54, 4, 0), (81, 3, 2), (414, 3, 1), (510, 3, 0), (81, 2, 3), (684, 2, 2),
    (1842, 2, 1), (1611, 2, 0), (27, 1, 4), (342, 1, 3), (1512, 1, 2), (2808, 1, 1), (1875, 1, 0),
    (18, 0, 4), (180, 0, 3), (642, 0, 2), (960, 0, 1), (500, 0, 0),
];
#[rustfmt::skip]
const T_E10: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (81, 3, 3), (477, 3, 2), (852, 3, 1), (450, 3, 0),
    (81, 2, 4), (747, 2, 3), (2373, 2, 2), (3069, 2, 1), (1341, 2, 0), (27, 1, 5), (387, 1, 4),
    (1935, 1, 3), (4353, 1, 2), (4461, 1, 1), (1665, 1, 0), (36, 0, 5), (360, 0, 4), (1374, 0, 3),
    (2490, 0, 2), (2140, 0, 1), (700, 0, 0),
];
#[rustfmt::skip]
const T_E11: &[Term] = &[
    (27, 4, 1), (54, 4, 0), (81, 3, 2), (450, 3, 1), (582, 3, 0), (81, 2, 3), (774, 2, 2),
    (2310, 2, 1), (2193, 2, 0), (27, 1, 4), (414, 1, 3), (2124, 1, 2), (4488, 1, 1), (3375, 1, 0),
    (36, 0, 4), (396, 0, 3), (1590, 0, 2), (2760, 0, 1), (1750, 0, 0),
];
#[rustfmt::skip]
const T_E20: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (108, 3, 3), (648, 3, 2), (1176, 3, 1), (630, 3, 0),
    (162, 2, 4), (1458, 2, 3), (4629, 2, 2), (6057, 2, 1), (2691, 2, 0), (108, 1, 5), (1296, 1, 4),
    (5946, 1, 3), (12942, 1, 2), (13230, 1, 1), (4995, 1, 0), (27, 0, 6), (405, 0, 5),
    (2439, 0, 4), (7515, 0, 3), (12429, 0, 2), (10395, 0, 1), (3400, 0, 0),
];
#[rustfmt::skip]
const T_E21: &[Term] = &[
    (9, 2, 1), (18, 2, 0), (18, 1, 2), (99, 1, 1), (128, 1, 0), (9, 0, 3), (81, 0, 2), (237, 0, 1),
    (225, 0, 0),
];
#[rustfmt::skip]
const T_F00: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (54, 3, 3), (405, 3, 2), (801, 3, 1), (432, 3, 0),
    (27, 2, 4), (405, 2, 3), (1746, 2, 2), (2646, 2, 1), (1179, 2, 0), (81, 1, 4), (801, 1, 3),
    (2646, 1, 2), (3342, 1, 1), (1260, 1, 0), (54, 0, 4), (432, 0, 3), (1179, 0, 2), (1260, 0, 1),
    (400, 0, 0),
];
#[rustfmt::skip]
const T_F10: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (54, 3, 3), (414, 3, 2), (828, 3, 1), (450, 3, 0),
    (27, 2, 4), (414, 2, 3), (1854, 2, 2), (2907, 2, 1), (1341, 2, 0), (81, 1, 4), (864, 1, 3),
    (3063, 1, 2), (4116, 1, 1), (1665, 1, 0), (54, 0, 4), (498, 0, 3), (1563, 0, 2), (1905, 0, 1),
    (700, 0, 0),
];
#[rustfmt::skip]
const T_F20: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (54, 3, 3), (504, 3, 2), (1098, 3, 1), (630, 3, 0),
    (27, 2, 4), (558, 2, 3), (3042, 2, 2), (5355, 2, 1), (2691, 2, 0), (135, 1, 4), (1764, 1, 3),
    (7395, 1, 2), (11190, 1, 1), (4995, 1, 0), (162, 0, 4), (1734, 0, 3), (6249, 0, 2),
    (8475, 0, 1), (3400, 0, 0),
];
#[rustfmt::skip]
const T_F01: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (54, 3, 3), (414, 3, 2), (864, 3, 1), (498, 3, 0),
    (27, 2, 4), (414, 2, 3), (1854, 2, 2), (3063, 2, 1), (1563, 2, 0), (81, 1, 4), (828, 1, 3),
    (2907, 1, 2), (4116, 1, 1), (1905, 1, 0), (54, 0, 4), (450, 0, 3), (1341, 0, 2), (1665, 0, 1),
    (700, 0, 0),
];
#[rustfmt::skip]
const T_F11: &[Term] = &[
    (27, 4, 2), (81, 4, 1), (54, 4, 0), (54, 3, 3), (450, 3, 2), (972, 3, 1), (570, 3, 0),
    (27, 2, 4), (450, 2, 3), (2214, 2, 2), (3891, 2, 1), (2061, 2, 0), (81, 1, 4), (972, 1, 3),
    (3891, 1, 2), (6060, 1, 1), (2985, 1, 0), (54, 0, 4), (570, 0, 3), (2061, 0, 2), (2985, 0, 1),
    (1400, 0, 0),
];
#[rustfmt::skip]
const T_F21: &[Term] = &[
    (9, 2, 2), (27, 2, 1), (18, 2, 0), (45, 1, 2), (135, 1, 1), (88, 1, 0), (54, 0, 2),
    (164, 0, 1), (105, 0, 0),
];
#[rustfmt::skip]
const T_F02: &[Term] = &[
    (27, 4, 2), (135, 4, 1), (162, 4, 0), (54, 3, 3), (558, 3, 2), (1764, 3, 1), (1734, 3, 0),
    (27, 2, 4), (504, 2, 3), (3042, 2, 2), (7395, 2, 1), (6249, 2, 0), (81, 1, 4), (1098, 1, 3),
    (5355, 1, 2), (11190, 1, 1), (8475, 1, 0), (54, 0, 4), (630, 0, 3), (2691, 0, 2), (4995, 0, 1),
    (3400, 0, 0),
];
#[rustfmt::skip]
const T_F12: &[Term] = &[
    (9, 2, 2), (45, 2, 1), (54, 2, 0), (27, 1, 2), (135, 1, 1), (164, 1, 0), (18, 0, 2),
    (88, 0, 1), (105, 0, 0),
];
#[rustfmt::skip]
const T_F22: &[Term] = &[
    (27, 4, 2), (135, 4, 1), (162, 4, 0), (54, 3, 3), (630, 3, 2), (2124, 3, 1), (2166, 3, 0),
    (27, 2, 4), (630, 2, 3), (4374, 2, 2), (11661, 2, 1), (10473, 2, 0), (135, 1, 4),
    (2124, 1, 3), (11661, 1, 2), (26748, 1, 1), (21759, 1, 0), (162, 0, 4), (2166, 0, 3),
    (10473, 0, 2), (21759, 0, 1), (16400, 0, 0),
];

fn dim_b(k: i128, big_l: i128) -> Result<u64> {
    let (l, r) = (big_l / 3, big_l % 3);
    let (pre, body) = match r {
        0 => ((l + 2) * (l + 1) * (1 + k) * (k + 3 + l) * (k + 2 + l), T_B0),
        1 => (
            (l + 3) * (l + 2) * (l + 1) * (1 + k) * (k + 2 + l) * (k + 4 + l) * (k + 3 + l),
            T_B1,
        ),
        _ => (
            (l + 3) * (l + 2) * (l + 1) * (1 + k) * (k + 4 + l) * (k + 3 + l) * (2 + k + l),
            T_B2,
        ),
    };
    divide(pre * ev(body, k, l), 14400, "B")
}

fn dim_c(k: i128, l: i128) -> Result<u64> {
    let pre = (l + 2) * (l + 1) * (k + 2) * (k + 1) * (k + 3 + l) * (k + 2 + l);
    divide(pre * ev(T_C, k, l), 240, "C")
}

fn dim_d(k: i128, l: i128) -> Result<u64> {
    let pre = (l + 2) * (l + 1) * (k + 2) * (k + 1) * (k + 3 + l) * (k + 4 + l);
    divide(pre * ev(T_D, k, l), 240, "D")
}

fn sq(x: i128) -> i128 {
    x * x
}

fn dim_e(big_k: i128, big_l: i128) -> Result<u64> {
    let (k, rk) = (big_k / 3, big_k % 3);
    let (l, rl) = (big_l / 2, big_l % 2);
    let (pre, body, den) = match (rk, rl) {
        (0, 0) => (
            (l + 2) * (l + 1) * (k + 1) * (k + l + 1) * sq(k + l + 2) * sq(k + l + 3),
            T_E00,
            28800,
        ),
        (0, _) => (
            (l + 3) * (l + 2) * (l + 1) * (k + 1) * (k + l + 4) * sq(k + l + 2) * sq(k + l + 3),
            T_E01,
            28800,
        ),
        (1, 0) => (
            (l + 2) * (l + 1) * (k + 1) * (k + l + 4) * sq(k + l + 2) * sq(k + l + 3),
            T_E10,
            28800,
        ),
        (1, _) => (
            (l + 3) * (l + 2) * (l + 1) * (k + 1) * (k + l + 2) * sq(k + l + 3) * sq(k + l + 4),
            T_E11,
            28800,
        ),
        (_, 0) => (
            (l + 2) * (l + 1) * (k + 2) * (k + 1) * (k + l + 4) * (k + l + 2) * sq(k + l + 3),
            T_E20,
            28800,
        ),
        (_, _) => (
            (l + 3)
                * (l + 2)
                * (l + 1)
                * (k + 2)
                * (k + 1)
                * (k + l + 5)
                * (k + l + 2)
                * sq(k + l + 3)
                * sq(k + l + 4),
            T_E21,
            9600,
        ),
    };
    divide(pre * ev(body, k, l), den, "E")
}

fn dim_f(big_k: i128, big_l: i128) -> Result<u64> {
    let (k, rk) = (big_k / 3, big_k % 3);
    let (l, rl) = (big_l / 3, big_l % 3);
    // shared prefactor pieces
    let l0 = sq(l + 2) * sq(l + 1);
    let l1 = (l + 3) * (l + 1) * sq(l + 2);
    let k0 = sq(k + 2) * sq(k + 1);
    let k1 = (k + 3) * (k + 1) * sq(k + 2);
    let (pre, body, den) = match (rk, rl) {
        (0, 0) => (l0 * k0 * sq(k + l + 3), T_F00, 57600),
        (1, 0) => (l0 * k1 * (k + l + 4) * (k + l + 3), T_F10, 57600),
        (2, 0) => (l0 * k1 * (k + l + 4) * (k + l + 3), T_F20, 57600),
        (0, 1) => (l1 * k0 * (k + l + 4) * (k + l + 3), T_F01, 57600),
        (1, 1) => (l1 * k1 * (k + l + 3) * (k + l + 4), T_F11, 57600),
        (2, 1) => (
            l1 * k1 * (k + l + 3) * (k + l + 5) * sq(k + l + 4),
            T_F21,
            19200,
        ),
        (0, 2) => (l1 * k0 * (k + l + 4) * (k + l + 3), T_F02, 57600),
        (1, 2) => (
            l1 * k1 * (k + l + 3) * (k + l + 5) * sq(k + l + 4),
            T_F12,
            19200,
        ),
        _ => (l1 * k1 * (k + l + 4) * (k + l + 5), T_F22, 57600),
    };
    divide(pre * ev(body, k, l), den, "F")
}

/// Dimension of a family member from the closed formulas. Tilde families
/// share the dimension of their mirror; the shorthand families are read
/// through their `B` aliases.
pub fn dim_closed_form(family: Family, k: u32, l: u32) -> Result<u64> {
    let (k, l) = (k as i128, l as i128);
    match family.plain() {
        Family::B => dim_b(k, l),
        Family::C => dim_c(k, l),
        Family::D => dim_d(k, l),
        Family::E => dim_e(k, l),
        Family::F => dim_f(k, l),
        Family::KR1 => dim_b(0, k),
        Family::KR2 => dim_b(k, 0),
        Family::MinAff => dim_b(l, k),
        _ => unreachable!(),
    }
}

pub fn dim_of_id(id: &FamilyId) -> Result<u64> {
    dim_closed_form(id.family, id.k, id.l)
}

/// Sum of the coefficients.
pub fn dim_of_character(p: &QPolynomial) -> Result<u64> {
    p.mass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Family::*;

    #[test]
    fn small_values() {
        assert_eq!(dim_closed_form(B, 0, 0).unwrap(), 1);
        assert_eq!(dim_closed_form(B, 1, 0).unwrap(), 15);
        assert_eq!(dim_closed_form(B, 0, 1).unwrap(), 7);
        assert_eq!(dim_closed_form(B, 0, 2).unwrap(), 34);
        assert_eq!(dim_closed_form(B, 1, 1).unwrap(), 71);
        assert_eq!(dim_closed_form(C, 0, 2).unwrap(), 92);
        assert_eq!(dim_closed_form(C, 0, 1).unwrap(), 15);
        assert_eq!(dim_closed_form(D, 0, 1).unwrap(), 71);
        assert_eq!(dim_closed_form(F, 1, 1).unwrap(), 42);
        assert_eq!(dim_closed_form(E, 1, 1).unwrap(), 105);
        assert_eq!(dim_closed_form(B, 0, 3).unwrap(), 133);
    }

    #[test]
    fn all_integral_up_to_fifty() {
        for f in Family::PLAIN {
            for k in 0..=50 {
                for l in 0..=50 {
                    dim_closed_form(f, k, l).unwrap();
                }
            }
        }
    }

    #[test]
    fn trivial_relations_on_dimensions() {
        for k in 0..=6 {
            let e = dim_closed_form(E, k, 0).unwrap();
            assert_eq!(e, dim_closed_form(B, 0, k).unwrap());
            assert_eq!(e, dim_closed_form(F, k, 0).unwrap());
            assert_eq!(e, dim_closed_form(F, 0, k).unwrap());
            assert_eq!(dim_closed_form(B, k, 0).unwrap(), dim_closed_form(C, 0, k).unwrap());
            assert_eq!(dim_closed_form(D, k, 0).unwrap(), dim_closed_form(B, k, 1).unwrap());
        }
        for l in 0..=6u32 {
            let lhs = dim_closed_form(E, 0, l).unwrap();
            let rhs = dim_closed_form(B, l.div_ceil(2), 0).unwrap() * dim_closed_form(B, l / 2, 0).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
