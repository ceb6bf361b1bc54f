//! Twisted skew-derivations `∂±` obeying `∂(ab) = ∂(a)·ν^t(b) + a·∂(b)`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;

use super::{DiscElement, DiscMonomial, Letter};
use crate::scalar::QLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `+1` or `-1`.
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A pair of ν^t-skew derivations on the disc algebra, determined by their
/// values on the generators.
///
/// Implementors supply generator values; [`SkewDerivations::apply`] extends
/// them to all elements by peeling one generator at a time from the left.
/// Whether the extension respects the disc relation is not checked here;
/// the property tests cover the built-in pair.
pub trait SkewDerivations: Send + Sync {
    fn on_generator(&self, letter: Letter, sign: Sign) -> DiscElement;

    /// Exponent `t` of the twisting automorphism `ν^t`.
    fn twist(&self) -> i64 {
        2
    }

    fn apply(&self, p: &DiscElement, sign: Sign) -> DiscElement {
        let mut out = DiscElement::zero();
        for (m, c) in p.terms() {
            out += &self.on_monomial(m, sign).scale(c);
        }
        out
    }

    fn on_monomial(&self, m: DiscMonomial, sign: Sign) -> DiscElement {
        leibniz_on_monomial(self, m, sign)
    }
}

/// `∂(g·rest) = ∂(g)·ν^t(rest) + g·∂(rest)` with `g` the leftmost generator
/// of `m`; the recursion goes through `on_monomial` so implementors may cache.
pub fn leibniz_on_monomial<S: SkewDerivations + ?Sized>(
    d: &S,
    m: DiscMonomial,
    sign: Sign,
) -> DiscElement {
    if m == DiscMonomial::ONE {
        return DiscElement::zero();
    }
    let (letter, generator, rest) = if m.a > 0 {
        (Letter::Z, DiscElement::z(), DiscMonomial::new(m.a - 1, m.b))
    } else {
        (
            Letter::ZStar,
            DiscElement::zs(),
            DiscMonomial::new(0, m.b - 1),
        )
    };
    let twisted_rest = DiscElement::term(rest, QLaurent::q_pow(d.twist() * rest.degree()));
    let head = &d.on_generator(letter, sign) * &twisted_rest;
    let tail = &generator * &d.on_monomial(rest, sign);
    &head + &tail
}

thread_local! {
    static DEL_CACHE: RefCell<HashMap<(DiscMonomial, Sign), DiscElement>> = RefCell::new(HashMap::new());
}

/// The derivations of the quantum disc:
/// `∂₋(z) = z*`, `∂₋(z*) = 0`, `∂₊(z) = 0`, `∂₊(z*) = q²z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiscDerivations;

impl SkewDerivations for DiscDerivations {
    fn on_generator(&self, letter: Letter, sign: Sign) -> DiscElement {
        match (sign, letter) {
            (Sign::Minus, Letter::Z) => DiscElement::zs(),
            (Sign::Minus, Letter::ZStar) => DiscElement::zero(),
            (Sign::Plus, Letter::Z) => DiscElement::zero(),
            (Sign::Plus, Letter::ZStar) => DiscElement::z().scale(&QLaurent::q_pow(2)),
        }
    }

    fn on_monomial(&self, m: DiscMonomial, sign: Sign) -> DiscElement {
        if let Some(hit) = DEL_CACHE.with(|c| c.borrow().get(&(m, sign)).cloned()) {
            return hit;
        }
        let value = leibniz_on_monomial(self, m, sign);
        DEL_CACHE.with(|c| c.borrow_mut().insert((m, sign), value.clone()));
        value
    }
}

/// `∂±(p)` for the disc derivations.
pub fn del(p: &DiscElement, sign: Sign) -> DiscElement {
    DiscDerivations.apply(p, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(k: i64) -> QLaurent {
        QLaurent::q_pow(k)
    }

    #[test]
    fn generator_values() {
        assert_eq!(del(&DiscElement::z(), Sign::Minus), DiscElement::zs());
        assert_eq!(
            del(&DiscElement::zs(), Sign::Plus),
            DiscElement::z().scale(&q(2))
        );
        assert!(del(&DiscElement::zs(), Sign::Minus).is_zero());
        assert!(del(&DiscElement::z(), Sign::Plus).is_zero());
    }

    #[test]
    fn unit_is_annihilated() {
        assert!(del(&DiscElement::one(), Sign::Plus).is_zero());
        assert!(del(&DiscElement::one(), Sign::Minus).is_zero());
    }

    #[test]
    fn del_minus_z_squared() {
        // ∂₋(z·z) = z*·ν²(z) + z·z* = q²z*z + zz* = (1+q⁴)zz* + q²(1−q²)
        let got = del(&DiscElement::monomial(2, 0), Sign::Minus);
        let want = DiscElement::from_terms([
            (DiscMonomial::new(1, 1), &QLaurent::one() + &q(4)),
            (DiscMonomial::ONE, &q(2) - &q(4)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn consistent_on_defining_relation() {
        // ∂(z*z) must equal ∂(q²zz* + 1 − q²); both sides from the Leibniz rule.
        for sign in [Sign::Plus, Sign::Minus] {
            let via_word = {
                let d_zs = del(&DiscElement::zs(), sign);
                let d_z = del(&DiscElement::z(), sign);
                &(&d_zs * &DiscElement::z().nu(2)) + &(&DiscElement::zs() * &d_z)
            };
            let normal = &DiscElement::zs() * &DiscElement::z();
            assert_eq!(del(&normal, sign), via_word, "{sign:?}");
        }
    }
}
