use num_traits::{One, Zero};
use proptest::prelude::*;
use twreal::scalar::{GaussRational, QLaurent};

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        GaussRational::ratio(a, b) + GaussRational::ratio(c, d) * GaussRational::i()
    })
}

fn laurent() -> impl Strategy<Value = QLaurent> {
    prop::collection::vec((-5i64..=5, gauss()), 0..4).prop_map(QLaurent::from_terms)
}

proptest! {
    #[test]
    fn gauss_field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, GaussRational::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, GaussRational::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn gauss_conj(a in gauss(), b in gauss()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        let abc = &(&a * &b) * &c;
        prop_assert!(abc.is_canonical());
        prop_assert_eq!(&abc, &(&a * &(&b * &c)));
        let sum = &a * &(&b + &c);
        prop_assert!(sum.is_canonical());
        prop_assert_eq!(sum, &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        let diff = &a - &a;
        prop_assert!(diff.is_canonical());
        prop_assert!(diff.is_zero());
        prop_assert_eq!(&a * &QLaurent::one(), a.clone());
    }

    #[test]
    fn laurent_conj_is_involutive_homomorphism(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(QLaurent::q_pow(3).conj(), QLaurent::q_pow(3));
    }

    #[test]
    fn laurent_shift_is_q_power(a in laurent(), k in -6i64..=6) {
        prop_assert_eq!(a.shift(k), &a * &QLaurent::q_pow(k));
        prop_assert_eq!(a.shift(k).shift(-k), a);
    }

    #[test]
    fn text_round_trip(a in gauss(), p in laurent()) {
        prop_assert_eq!(a.to_string().parse::<GaussRational>().unwrap(), a);
        prop_assert_eq!(p.to_string().parse::<QLaurent>().unwrap(), p);
    }

    #[test]
    fn json_round_trip(a in gauss(), p in laurent()) {
        let back: GaussRational = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
        let back: QLaurent = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}
