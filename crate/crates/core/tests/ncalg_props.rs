use num_traits::{One, Zero};
use proptest::prelude::*;
use twreal::ncalg::{
    del, is_in_cone, normal_form, normal_form_with, DiscElement, DiscMonomial, Letter, Sign,
    Strategy as Reduction, Word,
};
use twreal::scalar::{GaussRational, QLaurent};

fn coeff() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -2i64..=2), 1..3).prop_map(|ts| {
        QLaurent::from_terms(
            ts.into_iter()
                .map(|(e, re, im)| (e, GaussRational::complex(re, im))),
        )
    })
}

fn element() -> impl Strategy<Value = DiscElement> {
    prop::collection::vec(((0u32..3, 0u32..3), coeff()), 0..4).prop_map(|ts| {
        DiscElement::from_terms(
            ts.into_iter()
                .map(|((a, b), c)| (DiscMonomial::new(a, b), c)),
        )
    })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(Letter::Z), Just(Letter::ZStar)], 0..=max)
        .prop_map(Word::new)
}

fn cone_element(n: u32) -> impl Strategy<Value = DiscElement> {
    prop::collection::vec(((0u32..4, 0u32..4), coeff()), 0..3).prop_map(move |ts| {
        DiscElement::from_terms(
            ts.into_iter()
                .map(|((a, b), c)| (DiscMonomial::new(a * n + b, b), c)),
        )
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn leibniz(p: &DiscElement, r: &DiscElement, s: Sign) -> DiscElement {
    &(&del(p, s) * &r.nu(2)) + &(p * &del(r, s))
}

proptest! {
    #[test]
    fn strategies_agree(w in word(10)) {
        let left = normal_form_with(&w, Reduction::Leftmost);
        prop_assert!(left.is_canonical());
        prop_assert_eq!(&left, &normal_form_with(&w, Reduction::Rightmost));
        prop_assert_eq!(&left, &w.product());
    }

    #[test]
    fn word_text_round_trip(w in word(10)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn element_text_round_trip(p in element()) {
        prop_assert_eq!(p.to_string().parse::<DiscElement>().unwrap(), p);
    }

    #[test]
    fn associative(p in element(), r in element(), s in element()) {
        let lhs = &(&p * &r) * &s;
        prop_assert!(lhs.is_canonical());
        prop_assert_eq!(lhs, &p * &(&r * &s));
    }

    #[test]
    fn distributive(p in element(), r in element(), s in element()) {
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
    }

    #[test]
    fn star_is_antimultiplicative_involution(p in element(), r in element()) {
        prop_assert_eq!(p.star().star(), p.clone());
        prop_assert_eq!((&p * &r).star(), &r.star() * &p.star());
    }

    #[test]
    fn nu_is_automorphism(p in element(), r in element(), k in -3i64..=3) {
        prop_assert_eq!((&p * &r).nu(k), &p.nu(k) * &r.nu(k));
        prop_assert_eq!(p.nu(k).nu(-k), p.clone());
        prop_assert_eq!(p.nu(1).star().nu(1), p.star());
    }

    #[test]
    fn twisted_leibniz(p in element(), r in element(), s in sign()) {
        prop_assert_eq!(del(&(&p * &r), s), leibniz(&p, &r, s));
    }

    #[test]
    fn leibniz_along_any_split(w in word(8), cut in 0usize..=8, s in sign()) {
        let cut = cut.min(w.len());
        let (u, v) = w.0.split_at(cut);
        let (u, v) = (normal_form(&Word::new(u.to_vec())), normal_form(&Word::new(v.to_vec())));
        prop_assert_eq!(del(&normal_form(&w), s), leibniz(&u, &v, s));
    }

    #[test]
    fn q_skew(p in element(), s in sign()) {
        let lhs = del(&p.nu(-1), s).nu(1);
        prop_assert_eq!(lhs, del(&p, s).scale(&QLaurent::q_pow(2 * s.as_int())));
    }

    #[test]
    fn star_compatible(p in element(), s in sign()) {
        prop_assert_eq!(del(&p, s).star().nu(1), del(&p.star(), s.flip()).nu(-1));
    }

    #[test]
    fn degree_shift(a in 0u32..5, b in 0u32..5, s in sign()) {
        let m = DiscMonomial::new(a, b);
        let d = del(&DiscElement::monomial(a, b), s);
        for deg in d.degrees() {
            prop_assert_eq!(deg, m.degree() + 2 * s.as_int());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_closed_under_mul_and_star(p in cone_element(3), r in cone_element(3)) {
        prop_assert!(is_in_cone(&p, 3));
        prop_assert!(is_in_cone(&(&p * &r), 3));
        prop_assert!(is_in_cone(&p.star(), 3));
    }
}

#[test]
fn cone_generators_stay_in_cone() {
    for n in [2u32, 3, 5] {
        let gens = twreal::ncalg::ConeGens::new(n as i64).unwrap();
        let prod = gens.x() * gens.y();
        assert!(is_in_cone(&prod, n));
        assert!(is_in_cone(&prod.star(), n));
    }
}

#[test]
fn derivations_on_unit_and_relation() {
    for s in [Sign::Plus, Sign::Minus] {
        assert!(del(&DiscElement::one(), s).is_zero());
        let zs_z = leibniz(&DiscElement::zs(), &DiscElement::z(), s);
        let q2 = QLaurent::q_pow(2);
        let rhs =
            &DiscElement::monomial(1, 1).scale(&q2) + &DiscElement::scalar(&QLaurent::one() - &q2);
        assert_eq!(zs_z, del(&rhs, s));
    }
}
