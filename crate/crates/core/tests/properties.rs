use proptest::prelude::*;
use qg2_core::fm::{fm_character, FmOptions};
use qg2_core::sl2::{
    beta, decompose_strings, in_general_position, pull_back, sl2_character, string_character,
    Sl2Monomial, Sl2String,
};
use qg2_core::tsystem::{fm_family_character, RecursiveEngine};
use qg2_core::weyl::{invariance_violation, is_weyl_invariant};
use qg2_core::{factor_over_a, AVector, Family, FamilyId, LMonomial, Node};

fn node() -> impl Strategy<Value = Node> {
    prop_oneof![Just(Node::One), Just(Node::Two)]
}

fn monomial(max_vars: usize) -> impl Strategy<Value = LMonomial> {
    prop::collection::vec((node(), -20i32..=20, -3i32..=3), 0..=max_vars)
        .prop_map(LMonomial::from_triples)
}

fn a_vector() -> impl Strategy<Value = AVector> {
    prop::collection::vec((node(), -20i32..=20, -3i32..=3), 0..=6).prop_map(AVector::from_entries)
}

fn a_inverse_product() -> impl Strategy<Value = LMonomial> {
    prop::collection::vec((node(), -20i32..=20, 1i32..=2), 1..=5).prop_map(|v| {
        AVector::from_entries(v.into_iter().map(|(n, s, e)| (n, s, -e))).realize()
    })
}

/// Family members cheap enough for FM and recursion inside a property.
fn small_id() -> impl Strategy<Value = FamilyId> {
    let fam = prop_oneof![
        Just(Family::B),
        Just(Family::C),
        Just(Family::D),
        Just(Family::E),
        Just(Family::F),
        Just(Family::Bt),
        Just(Family::Ct),
        Just(Family::Dt),
        Just(Family::Et),
        Just(Family::Ft),
    ];
    (fam, 0u32..=2, 0u32..=2, -8i32..=8).prop_filter_map("kept small", |(f, k, l, s)| {
        let cheap = match f.plain() {
            Family::D => k + l <= 2,
            Family::C => k + l <= 3,
            _ => true,
        };
        cheap.then(|| FamilyId::new(f, k, l, s))
    })
}

fn sl2_string() -> impl Strategy<Value = Sl2String> {
    (-30i32..=30, 1u32..=8, prop_oneof![Just(2), Just(6)])
        .prop_map(|(lo, len, step)| Sl2String::from_lowest(lo, len, step))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_over_a_round_trip(base in monomial(6), v in a_vector()) {
        let m = base.mul(&v.realize());
        prop_assert_eq!(factor_over_a(&base, &m).unwrap(), v);
    }

    #[test]
    fn monomial_group_laws(a in monomial(5), b in monomial(5), c in monomial(5)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&LMonomial::one()), a.clone());
        prop_assert!(a.mul(&a.inv()).is_one());
        prop_assert_eq!(a.mul(&b).weight(), a.weight() + b.weight());
    }

    #[test]
    fn right_negative_products(a in a_inverse_product(), b in a_inverse_product()) {
        prop_assert!(a.is_right_negative().unwrap());
        let ab = a.mul(&b);
        prop_assert!(ab.is_right_negative().unwrap());
        prop_assert!(!ab.is_dominant());
    }

    #[test]
    fn iota_and_tau(m in monomial(6), b in -15i32..=15, c in -15i32..=15) {
        prop_assert_eq!(m.iota().iota(), m.clone());
        if m.is_dominant() {
            prop_assert!(m.iota().is_anti_dominant());
        }
        prop_assert_eq!(m.tau(b).tau(c), m.tau(b + c));
    }

    #[test]
    fn tau_commutes_with_products(b in -12i32..=12) {
        let p = fm_character(&"1_0".parse().unwrap(), &FmOptions::default()).unwrap();
        let q = fm_character(&"2_3".parse().unwrap(), &FmOptions::default()).unwrap();
        prop_assert_eq!(p.try_mul(&q).unwrap().tau(b), p.tau(b).try_mul(&q.tau(b)).unwrap());
    }

    #[test]
    fn string_character_mass(s in sl2_string()) {
        let p = string_character(&s);
        prop_assert_eq!(p.len() as u32, s.length + 1);
        prop_assert_eq!(p.mass().unwrap(), (s.length + 1) as u64);
    }

    #[test]
    fn sl2_decomposition(v in prop::collection::vec(-6i32..=6, 1..=5), step in prop_oneof![Just(2), Just(6)]) {
        let m = Sl2Monomial::from_pairs(v.iter().map(|x| (x * step, 1)));
        let strings = decompose_strings(&m, step).unwrap();
        let total: u32 = strings.iter().map(|s| s.length).sum();
        prop_assert_eq!(total as usize, v.len());
        for (i, a) in strings.iter().enumerate() {
            for b in &strings[i + 1..] {
                prop_assert!(in_general_position(a, b).unwrap());
            }
        }
        let mut rev = v.clone();
        rev.reverse();
        let m2 = Sl2Monomial::from_pairs(rev.iter().map(|x| (x * step, 1)));
        prop_assert_eq!(&decompose_strings(&m2, step).unwrap(), &strings);
        let ch = sl2_character(&m, step).unwrap();
        prop_assert_eq!(ch.leading().unwrap(), &(m.clone(), 1));
        let mass: u64 = strings.iter().map(|s| s.length as u64 + 1).product();
        prop_assert_eq!(ch.mass().unwrap(), mass);
    }

    #[test]
    fn pull_back_restricts_back(m in monomial(4), n in node()) {
        let mut d = m.clone();
        for (v, e) in m.factors() {
            if *e < 0 {
                d = d.mul_pow(&LMonomial::var(v.node, v.shift), -*e);
            }
        }
        let b = beta(&d, n);
        let p = sl2_character(&b, n.step()).unwrap();
        let up = pull_back(&d, n, &p).unwrap();
        prop_assert_eq!(up.map_monomials(|x| beta(x, n)).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fm_shift_equivariance(id in small_id(), b in -20i32..=20) {
        let o = FmOptions::default();
        let p = fm_family_character(&id, &o).unwrap();
        let moved = id.with_s(id.s + b);
        // tilde modules are mirror images, so their spectral shift runs backwards
        let d = if id.family.is_tilde() { -b } else { b };
        prop_assert_eq!(moved.head(), id.head().tau(d));
        let q = fm_family_character(&moved, &o).unwrap();
        prop_assert_eq!(q, p.tau(d));
        if !id.family.is_tilde() {
            let h = id.head();
            prop_assert_eq!(fm_character(&h.tau(b), &o).unwrap(), fm_character(&h, &o).unwrap().tau(b));
        }
    }

    #[test]
    fn weyl_invariance(id in small_id()) {
        let p = fm_family_character(&id, &FmOptions::default()).unwrap();
        prop_assert!(is_weyl_invariant(&p), "{} at {:?}", id, invariance_violation(&p));
    }

    #[test]
    fn fm_agrees_with_recursion(id in small_id()) {
        let p = fm_family_character(&id, &FmOptions::default()).unwrap();
        let q = RecursiveEngine::default().compute(&id).unwrap();
        prop_assert_eq!(&*q, &p);
    }
}
