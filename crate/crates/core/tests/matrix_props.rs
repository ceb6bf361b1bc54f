use num_traits::Zero;
use proptest::prelude::*;
use twreal::conformal::{AntiLinearOp, Matrix};
use twreal::scalar::GaussRational;

fn entry() -> impl Strategy<Value = GaussRational> {
    (-3i64..=3, -2i64..=2, 1i64..=3)
        .prop_map(|(re, im, d)| GaussRational::complex(re, im) * GaussRational::ratio(1, d))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(entry(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, |i, j| v[i * n + j].clone()))
}

fn swap4() -> Matrix {
    Matrix::from_fn(4, |i, j| {
        let (a, b) = (i / 2, i % 2);
        GaussRational::from_int((j == b * 2 + a) as i64)
    })
}

fn quaternionic() -> Matrix {
    Matrix::from_ints([[0, -1], [1, 0]])
}

proptest! {
    #[test]
    fn ring_and_adjoint(a in matrix(3), b in matrix(3), c in matrix(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert!((&a + &a.adjoint()).is_hermitian());
        prop_assert_eq!(a.commutator(&b), &(&a * &b) - &(&b * &a));
    }

    #[test]
    fn determinant_and_inverse(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
        match a.inverse() {
            Some(inv) => {
                prop_assert!((&a * &inv).is_identity());
                prop_assert!((&inv * &a).is_identity());
            }
            None => prop_assert!(a.det().is_zero()),
        }
    }

    #[test]
    fn gram_matrices_are_positive(a in matrix(3)) {
        let g = &(&a.adjoint() * &a) + &Matrix::identity(3);
        prop_assert!(g.is_positive_definite());
        prop_assert!(!g.scale(&GaussRational::from_int(-1)).is_positive_definite());
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn real_structure_conjugation(a in matrix(4), b in matrix(4), v in prop::collection::vec(entry(), 4)) {
        let j = AntiLinearOp::new(swap4()).unwrap();
        prop_assert_eq!(j.jmj(&(&a * &b)), &j.jmj(&a) * &j.jmj(&b));
        prop_assert_eq!(j.jmj(&j.jmj(&a)), a.clone());
        prop_assert_eq!(j.jmj(&a.adjoint()), j.jmj(&a).adjoint());
        prop_assert_eq!(j.apply(&a.apply(&v)), j.jmj(&a).apply(&j.apply(&v)));
        prop_assert_eq!(j.apply(&j.inverse().apply(&v)), v);
    }

    #[test]
    fn composites_match_pointwise(a in matrix(2), v in prop::collection::vec(entry(), 2)) {
        let j = AntiLinearOp::new(quaternionic()).unwrap();
        prop_assert!(j.square().scale(&GaussRational::from_int(-1)).is_identity());
        let conj_v: Vec<GaussRational> = v.iter().map(|x| x.conj()).collect();
        prop_assert_eq!(a.apply(&j.apply(&v)), j.after(&a).apply(&conj_v));
        prop_assert_eq!(j.apply(&a.apply(&v)), j.before(&a).apply(&conj_v));
    }
}
