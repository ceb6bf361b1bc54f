//! The spectral triple over the quantum cone.
//!
//! `H = H₊ ⊕ H₋` with `H₊` spanned by disc monomials of degree `≡ +1 (mod N)`
//! and `H₋` by those of degree `≡ −1 (mod N)`. The cone acts by
//! `π(a)h = ν²(a)h`, and
//!
//! ```text
//! D(h₊, h₋) = (−q⁻¹ ∂₊(h₋), q ∂₋(h₊))
//! J(h₊, h₋) = (−h₋*, h₊*)
//! γ(h₊, h₋) = (h₊, −h₋)
//! ```
//!
//! Every operator maps a basis monomial to a finite combination, so each axiom
//! can be checked exactly, one basis vector at a time.

pub(crate) mod check;

pub use check::{verify_cone, ConeVerification, SignTriple};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::ncalg::{
    is_in_cone, ConeGens, DiscDerivations, DiscElement, DiscMonomial, Sign, SkewDerivations,
};
use crate::report::{exact_terms, Evidence, ExactValue};
use crate::scalar::QLaurent;

/// An element of `H = H₊ ⊕ H₋`. The two slots are independent even when the
/// residue classes coincide (as for `N = 2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVector {
    plus: DiscElement,
    minus: DiscElement,
    modulus: u32,
}

fn in_class(p: &DiscElement, modulus: u32, residue: i64) -> bool {
    let n = i64::from(modulus);
    p.degrees().all(|d| (d - residue).rem_euclid(n) == 0)
}

impl HVector {
    pub fn new(plus: DiscElement, minus: DiscElement, modulus: u32) -> Result<Self> {
        let h = HVector {
            plus,
            minus,
            modulus,
        };
        if modulus < 2 {
            return Err(Error::InvalidModulus(i64::from(modulus)));
        }
        if !h.is_valid() {
            return Err(Error::InvalidHVector(format!(
                "{h}: plus slot needs degrees ≡ +1 and minus slot degrees ≡ −1 (mod {modulus})"
            )));
        }
        Ok(h)
    }

    pub fn zero(modulus: u32) -> Self {
        HVector::raw(DiscElement::zero(), DiscElement::zero(), modulus)
    }

    /// A basis vector: the monomial placed in the given slot.
    pub fn basis(slot: Sign, m: DiscMonomial, modulus: u32) -> Self {
        let e = DiscElement::term(m, QLaurent::one());
        match slot {
            Sign::Plus => HVector::raw(e, DiscElement::zero(), modulus),
            Sign::Minus => HVector::raw(DiscElement::zero(), e, modulus),
        }
    }

    fn raw(plus: DiscElement, minus: DiscElement, modulus: u32) -> Self {
        HVector {
            plus,
            minus,
            modulus,
        }
    }

    pub fn plus(&self) -> &DiscElement {
        &self.plus
    }

    pub fn minus(&self) -> &DiscElement {
        &self.minus
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    /// Degree invariants of both slots hold.
    pub fn is_valid(&self) -> bool {
        in_class(&self.plus, self.modulus, 1) && in_class(&self.minus, self.modulus, -1)
    }

    fn map(&self, f: impl Fn(&DiscElement) -> DiscElement) -> Self {
        HVector::raw(f(&self.plus), f(&self.minus), self.modulus)
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn add(&self, other: &HVector) -> Self {
        HVector::raw(
            &self.plus + &other.plus,
            &self.minus + &other.minus,
            self.modulus,
        )
    }

    pub fn sub(&self, other: &HVector) -> Self {
        HVector::raw(
            &self.plus - &other.plus,
            &self.minus - &other.minus,
            self.modulus,
        )
    }

    /// Right multiplication of both slots by `r` in the disc algebra.
    pub fn right_mul(&self, r: &DiscElement) -> Self {
        self.map(|p| p * r)
    }

    /// Parses `[plus, minus]` with each slot in element syntax.
    pub fn parse(s: &str, modulus: u32) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(s, 0, "expected `[plus, minus]`"))?;
        let (p, m) = inner
            .split_once(',')
            .ok_or_else(|| ParseError::new(s, 0, "expected a comma between slots"))?;
        HVector::new(p.parse()?, m.parse()?, modulus)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.plus, self.minus)
    }
}

impl Evidence for HVector {
    fn render(&self) -> String {
        self.to_string()
    }
    fn exact(&self) -> Option<ExactValue> {
        Some(ExactValue::HVector {
            plus: exact_terms(&self.plus),
            minus: exact_terms(&self.minus),
        })
    }
}

/// All basis monomials `z^a z*^b` of `H₊` then `H₋` with `a + b ≤ cutoff`,
/// ordered by total degree and then by decreasing `a`.
pub fn basis_enumerate(modulus: i64, cutoff: u32) -> Result<Vec<(Sign, DiscMonomial)>> {
    let n = crate::ncalg::cone_modulus(modulus)?;
    let mut out = Vec::new();
    for (slot, residue) in [(Sign::Plus, 1), (Sign::Minus, -1)] {
        out.extend(
            monomials_up_to(cutoff)
                .filter(|m| (m.degree() - residue).rem_euclid(i64::from(n)) == 0)
                .map(|m| (slot, m)),
        );
    }
    Ok(out)
}

/// Cone spanning monomials (`a − b ≡ 0 mod N`) with `a + b ≤ cutoff`.
pub fn cone_basis(modulus: i64, cutoff: u32) -> Result<Vec<DiscMonomial>> {
    let n = crate::ncalg::cone_modulus(modulus)?;
    Ok(monomials_up_to(cutoff)
        .filter(|m| m.degree().rem_euclid(i64::from(n)) == 0)
        .collect())
}

fn monomials_up_to(cutoff: u32) -> impl Iterator<Item = DiscMonomial> {
    (0..=cutoff).flat_map(|total| {
        (0..=total)
            .rev()
            .map(move |a| DiscMonomial::new(a, total - a))
    })
}

/// A ℤ-graded triple built from the disc algebra: residue classes `±1 mod N`,
/// a pair of skew-derivations, and the scalar coefficients of `D`.
///
/// The axiom checkers only use the operators defined here, so a different
/// derivation pair can be plugged in without touching them.
#[derive(Clone, Debug)]
pub struct GradedTripleSpec<S = DiscDerivations> {
    gens: ConeGens,
    derivations: S,
    /// `D(h₊, h₋) = (d_plus · ∂₊(h₋), d_minus · ∂₋(h₊))`
    d_plus: QLaurent,
    d_minus: QLaurent,
}

/// The quantum-cone triple, with `D = (−q⁻¹∂₊, q∂₋)`.
pub type ConeTriple = GradedTripleSpec<DiscDerivations>;

impl ConeTriple {
    pub fn new(modulus: i64) -> Result<Self> {
        GradedTripleSpec::with_derivations(
            modulus,
            DiscDerivations,
            -QLaurent::q_pow(-1),
            QLaurent::q_pow(1),
        )
    }
}

impl<S: SkewDerivations> GradedTripleSpec<S> {
    pub fn with_derivations(
        modulus: i64,
        derivations: S,
        d_plus: QLaurent,
        d_minus: QLaurent,
    ) -> Result<Self> {
        Ok(GradedTripleSpec {
            gens: ConeGens::new(modulus)?,
            derivations,
            d_plus,
            d_minus,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.gens.modulus()
    }

    pub fn gens(&self) -> &ConeGens {
        &self.gens
    }

    /// Signs `(ε, ε′, ε″)` the construction is claimed to have.
    pub fn claimed_signs(&self) -> (i64, i64, i64) {
        (-1, 1, -1)
    }

    fn require_cone(&self, a: &DiscElement) -> Result<()> {
        if is_in_cone(a, self.modulus()) {
            Ok(())
        } else {
            Err(Error::NotInCone {
                element: a.to_string(),
                modulus: self.modulus(),
            })
        }
    }

    pub fn basis_vector(&self, slot: Sign, m: DiscMonomial) -> HVector {
        HVector::basis(slot, m, self.modulus())
    }

    pub fn vector(&self, plus: DiscElement, minus: DiscElement) -> Result<HVector> {
        HVector::new(plus, minus, self.modulus())
    }

    /// `π(a)h = ν²(a)h` on both slots.
    pub fn pi_act(&self, a: &DiscElement, h: &HVector) -> Result<HVector> {
        self.require_cone(a)?;
        let twisted = a.nu(2);
        Ok(h.map(|p| &twisted * p))
    }

    pub fn d_apply(&self, h: &HVector) -> HVector {
        let plus = self
            .derivations
            .apply(&h.minus, Sign::Plus)
            .scale(&self.d_plus);
        let minus = self
            .derivations
            .apply(&h.plus, Sign::Minus)
            .scale(&self.d_minus);
        HVector::raw(plus, minus, h.modulus)
    }

    pub fn j_apply(&self, h: &HVector) -> HVector {
        HVector::raw(-h.minus.star(), h.plus.star(), h.modulus)
    }

    /// `J⁻¹(h₊, h₋) = (h₋*, −h₊*)`, the inverse of [`Self::j_apply`].
    pub fn j_inverse(&self, h: &HVector) -> HVector {
        HVector::raw(h.minus.star(), -h.plus.star(), h.modulus)
    }

    pub fn gamma_apply(&self, h: &HVector) -> HVector {
        HVector::raw(h.plus.clone(), -&h.minus, h.modulus)
    }

    /// `ν^k` on both slots.
    pub fn nu_h(&self, h: &HVector, k: i64) -> HVector {
        h.map(|p| p.nu(k))
    }

    /// `[D, π(a)]h = Dπ(a)h − π(a)Dh`, computed directly.
    pub fn commutator(&self, a: &DiscElement, h: &HVector) -> Result<HVector> {
        let d_pi = self.d_apply(&self.pi_act(a, h)?);
        let pi_d = self.pi_act(a, &self.d_apply(h))?;
        Ok(d_pi.sub(&pi_d))
    }

    /// `Jπ(b)J⁻¹h`, computed directly.
    pub fn jbj(&self, b: &DiscElement, h: &HVector) -> Result<HVector> {
        Ok(self.j_apply(&self.pi_act(b, &self.j_inverse(h))?))
    }

    /// `J ν̄^t(π(c)) J⁻¹ h = J ν^t π(c) ν^{−t} J⁻¹ h`.
    pub fn j_twisted_pi_j(&self, c: &DiscElement, t: i64, h: &HVector) -> Result<HVector> {
        let inner = self.nu_h(&self.j_inverse(h), -t);
        let acted = self.nu_h(&self.pi_act(c, &inner)?, t);
        Ok(self.j_apply(&acted))
    }

    /// The right module structure of `H^{J,ν^t}`: `h·b = J ν̄^t(π(b*)) J⁻¹ h`.
    pub fn right_module_action(&self, h: &HVector, b: &DiscElement, t: i64) -> Result<HVector> {
        self.j_twisted_pi_j(&b.star(), t, h)
    }
}

impl ConeTriple {
    /// Closed form of `[D, π(a)]h`: `h₊ ↦ +q⁵ ν²(∂₋(a)h₊)` in the minus slot
    /// and `h₋ ↦ −q⁻⁵ ν²(∂₊(a)h₋)` in the plus slot. Extended linearly to
    /// vectors with both slots populated.
    pub fn commutator_closed_form(&self, a: &DiscElement, h: &HVector) -> Result<HVector> {
        self.require_cone(a)?;
        let to_minus = (&crate::ncalg::del(a, Sign::Minus) * &h.plus)
            .nu(2)
            .scale(&QLaurent::q_pow(5));
        let to_plus = (&crate::ncalg::del(a, Sign::Plus) * &h.minus)
            .nu(2)
            .scale(&-QLaurent::q_pow(-5));
        Ok(HVector::raw(to_plus, to_minus, h.modulus))
    }

    /// Closed form of `Jπ(b)J⁻¹h`: right multiplication by `ν⁻²(b*)`.
    pub fn jbj_closed_form(&self, b: &DiscElement, h: &HVector) -> Result<HVector> {
        self.require_cone(b)?;
        Ok(h.right_mul(&b.star().nu(-2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QLaurent {
        QLaurent::q_pow(k)
    }

    fn el(s: &str) -> DiscElement {
        s.parse().unwrap()
    }

    fn triple(n: i64) -> ConeTriple {
        ConeTriple::new(n).unwrap()
    }

    fn v(t: &ConeTriple, p: &str, m: &str) -> HVector {
        t.vector(el(p), el(m)).unwrap()
    }

    #[test]
    fn basis_small_cases() {
        assert!(basis_enumerate(2, 0).unwrap().is_empty());
        let b = basis_enumerate(2, 2).unwrap();
        let z = DiscMonomial::new(1, 0);
        let zs = DiscMonomial::new(0, 1);
        assert_eq!(
            b,
            vec![
                (Sign::Plus, z),
                (Sign::Plus, zs),
                (Sign::Minus, z),
                (Sign::Minus, zs)
            ]
        );
        let b = basis_enumerate(3, 2).unwrap();
        assert_eq!(
            b,
            vec![
                (Sign::Plus, z),
                (Sign::Plus, DiscMonomial::new(0, 2)),
                (Sign::Minus, zs),
                (Sign::Minus, DiscMonomial::new(2, 0)),
            ]
        );
        assert!(basis_enumerate(1, 3).is_err());
    }

    #[test]
    fn hvector_rejects_wrong_classes() {
        assert!(HVector::new(el("z*zs"), DiscElement::zero(), 2).is_err());
        assert!(HVector::new(DiscElement::zero(), el("z"), 3).is_err());
        // N = 2: both slots hold odd degrees.
        assert!(HVector::new(el("z"), el("z"), 2).is_ok());
    }

    #[test]
    fn pi_examples() {
        let t = triple(2);
        let h = v(&t, "z", "0");
        assert_eq!(t.pi_act(&DiscElement::one(), &h).unwrap(), h);
        let x = t.gens().x().clone();
        assert_eq!(t.pi_act(&x, &h).unwrap(), v(&t, "q^2*z-q^2*z^2*zs", "0"));
        let y = t.gens().y().clone();
        let got = t.pi_act(&y, &v(&t, "0", "zs")).unwrap();
        assert_eq!(got, v(&t, "0", "q^4*z^2*zs"));
        assert!(matches!(
            t.pi_act(&DiscElement::z(), &h),
            Err(Error::NotInCone { .. })
        ));
    }

    #[test]
    fn dirac_examples() {
        let t = triple(2);
        assert_eq!(t.d_apply(&v(&t, "z", "0")), v(&t, "0", "q*zs"));
        assert_eq!(t.d_apply(&v(&t, "0", "zs")), v(&t, "-q*z", "0"));
        assert!(t.d_apply(&HVector::zero(2)).is_zero());
    }

    #[test]
    fn reality_examples() {
        let t = triple(2);
        let h = v(&t, "z", "0");
        assert_eq!(t.j_apply(&h), v(&t, "0", "zs"));
        assert_eq!(t.j_apply(&v(&t, "0", "zs")), v(&t, "-z", "0"));
        assert_eq!(t.j_apply(&t.j_apply(&h)), h.neg());
        assert_eq!(t.j_inverse(&t.j_apply(&h)), h);
        assert_eq!(t.j_inverse(&v(&t, "0", "zs")), v(&t, "z", "0"));
        let w = v(&t, "(1+i)*q*z-zs", "i*z^2*zs");
        assert_eq!(t.j_apply(&t.j_inverse(&w)), w);
    }

    #[test]
    fn grading_and_nu_examples() {
        let t = triple(2);
        assert_eq!(t.gamma_apply(&v(&t, "z", "0")), v(&t, "z", "0"));
        assert_eq!(t.gamma_apply(&v(&t, "0", "zs")), v(&t, "0", "-zs"));
        assert_eq!(t.nu_h(&v(&t, "z", "0"), 1), v(&t, "q*z", "0"));
        assert_eq!(t.nu_h(&v(&t, "0", "zs"), 1), v(&t, "0", "q^-1*zs"));
        let w = v(&t, "z-3*zs", "z^2*zs");
        assert_eq!(t.nu_h(&t.nu_h(&w, 1), -1), w);
    }

    #[test]
    fn closed_forms_match_direct() {
        let t = triple(2);
        let x = t.gens().x().clone();
        let y = t.gens().y().clone();
        let h_plus = v(&t, "z", "0");
        let h_minus = v(&t, "0", "zs");
        for (a, h) in [(&x, &h_plus), (&y, &h_minus), (&x, &h_minus), (&y, &h_plus)] {
            assert_eq!(
                t.commutator(a, h).unwrap(),
                t.commutator_closed_form(a, h).unwrap()
            );
            assert_eq!(t.jbj(a, h).unwrap(), t.jbj_closed_form(a, h).unwrap());
        }
        // a = 1 has vanishing commutator
        assert!(t
            .commutator_closed_form(&DiscElement::one(), &h_plus)
            .unwrap()
            .is_zero());
        // explicit values of the closed forms
        let want = (&crate::ncalg::del(&x, Sign::Minus) * &DiscElement::z())
            .nu(2)
            .scale(&q(5));
        assert_eq!(
            t.commutator_closed_form(&x, &h_plus).unwrap(),
            HVector::raw(DiscElement::zero(), want, 2)
        );
        assert_eq!(
            t.jbj_closed_form(&x, &h_plus).unwrap(),
            HVector::raw(&DiscElement::z() * &x, DiscElement::zero(), 2)
        );
        let yb = t.jbj_closed_form(&y, &h_minus).unwrap();
        assert_eq!(yb, v(&t, "0", "q^4*zs^3"));
    }

    #[test]
    fn hvector_text_roundtrip() {
        let t = triple(3);
        let h = v(&t, "q*z-zs^2", "(1-q^2)*zs");
        assert_eq!(h.to_string(), "[-zs^2+q*z, (1-q^2)*zs]");
        assert_eq!(HVector::parse(&h.to_string(), 3).unwrap(), h);
    }
}
