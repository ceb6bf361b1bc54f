//! The quantum disc `O(D_q)`: the *-algebra generated by `z` subject to
//! `z*z − q²zz* = 1 − q²`.
//!
//! Elements are always stored in normal order, as combinations of monomials
//! `z^a z*^b` with [`QLaurent`] coefficients. Products are normalized with a
//! closed-form commutation of `z*^b` past `z^c`; the literal rewriting system
//! lives in [`word`] and serves as an independent oracle.

mod cone;
mod derivation;
mod syntax;
mod word;

pub(crate) use cone::validate_modulus as cone_modulus;
pub use cone::{cone_relation_check, is_in_cone, ConeGens};
pub use derivation::{del, DiscDerivations, Sign, SkewDerivations};
pub use word::{normal_form, normal_form_with, Letter, Strategy, Word};

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::scalar::{GaussRational, QLaurent};

/// The normal-ordered monomial `z^a z*^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscMonomial {
    pub a: u32,
    pub b: u32,
}

impl DiscMonomial {
    pub const ONE: DiscMonomial = DiscMonomial { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        DiscMonomial { a, b }
    }

    /// `|z^a z*^b| = a − b`.
    pub fn degree(self) -> i64 {
        i64::from(self.a) - i64::from(self.b)
    }

    pub fn total(self) -> u32 {
        self.a + self.b
    }

    /// Factors in element syntax, e.g. `["z^2", "zs"]`.
    pub(crate) fn factors(self) -> Vec<String> {
        let mut out = Vec::new();
        match self.a {
            0 => {}
            1 => out.push("z".to_string()),
            a => out.push(format!("z^{a}")),
        }
        match self.b {
            0 => {}
            1 => out.push("zs".to_string()),
            b => out.push(format!("zs^{b}")),
        }
        out
    }
}

impl fmt::Display for DiscMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// A finite combination `Σ c_{ab} z^a z*^b` in normal order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscElement {
    terms: BTreeMap<DiscMonomial, QLaurent>,
}

impl DiscElement {
    pub fn scalar(c: QLaurent) -> Self {
        DiscElement::term(DiscMonomial::ONE, c)
    }

    pub fn term(m: DiscMonomial, c: QLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiscElement { terms }
    }

    /// `z^a z*^b` with coefficient one.
    pub fn monomial(a: u32, b: u32) -> Self {
        DiscElement::term(DiscMonomial::new(a, b), QLaurent::one())
    }

    pub fn z() -> Self {
        DiscElement::monomial(1, 0)
    }

    pub fn zs() -> Self {
        DiscElement::monomial(0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (DiscMonomial, QLaurent)>) -> Self {
        let mut out = DiscElement::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (DiscMonomial, &QLaurent)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: DiscMonomial) -> QLaurent {
        self.terms.get(&m).cloned().unwrap_or_else(QLaurent::zero)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms
            .values()
            .all(|c| !c.is_zero() && c.is_canonical())
    }

    /// `Some(c)` when the element is the scalar `c·1`.
    pub fn as_scalar(&self) -> Option<QLaurent> {
        match self.terms.len() {
            0 => Some(QLaurent::zero()),
            1 => self.terms.get(&DiscMonomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        if c.is_zero() {
            return DiscElement::zero();
        }
        DiscElement::from_terms(self.terms.iter().map(|(&m, x)| (m, x * c)))
    }

    pub fn scale_gauss(&self, c: &GaussRational) -> Self {
        self.scale(&QLaurent::constant(c.clone()))
    }

    /// The *-involution: anti-linear, with `(z^a z*^b)* = z^b z*^a`.
    pub fn star(&self) -> Self {
        DiscElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (DiscMonomial::new(m.b, m.a), c.conj()))
                .collect(),
        }
    }

    /// `ν^k`: multiplies each degree-`d` component by `q^{k·d}`.
    pub fn nu(&self, k: i64) -> Self {
        DiscElement {
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, c.shift(k * m.degree())))
                .collect(),
        }
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn degree_components(&self) -> BTreeMap<i64, DiscElement> {
        let mut out: BTreeMap<i64, DiscElement> = BTreeMap::new();
        for (&m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(m, c.clone());
        }
        out
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().map(|m| m.degree())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(DiscElement::one(), |acc, _| &acc * self)
    }

    fn add_term(&mut self, m: DiscMonomial, c: &QLaurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }
}

type Terms = Rc<Vec<(DiscMonomial, QLaurent)>>;

thread_local! {
    static SWAP_CACHE: RefCell<HashMap<(u32, u32), Terms>> =
        RefCell::new(HashMap::new());
}

/// Normal form of `z*^b z^c` as a list of terms.
fn swap(b: u32, c: u32) -> Terms {
    if let Some(hit) = SWAP_CACHE.with(|cache| cache.borrow().get(&(b, c)).cloned()) {
        return hit;
    }
    // Left-multiply z^c by z* b times using
    //   z* · z^i z*^j = q^{2i} z^i z*^{j+1} + (1 − q^{2i}) z^{i−1} z*^j.
    let mut current = DiscElement::monomial(c, 0);
    for _ in 0..b {
        let mut next = DiscElement::zero();
        for (m, coeff) in current.terms() {
            let i = i64::from(m.a);
            next.add_term(DiscMonomial::new(m.a, m.b + 1), &coeff.shift(2 * i));
            if m.a > 0 {
                let factor = &QLaurent::one() - &QLaurent::q_pow(2 * i);
                next.add_term(DiscMonomial::new(m.a - 1, m.b), &(coeff * &factor));
            }
        }
        current = next;
    }
    let result = Rc::new(current.terms.into_iter().collect::<Vec<_>>());
    SWAP_CACHE.with(|cache| cache.borrow_mut().insert((b, c), result.clone()));
    result
}

/// Normal-ordered product of two monomials.
pub fn mul_monomials(left: DiscMonomial, right: DiscMonomial) -> DiscElement {
    let mut out = DiscElement::zero();
    for (m, c) in swap(left.b, right.a).iter() {
        out.add_term(DiscMonomial::new(left.a + m.a, m.b + right.b), c);
    }
    out
}

impl Zero for DiscElement {
    fn zero() -> Self {
        DiscElement {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for DiscElement {
    fn one() -> Self {
        DiscElement::scalar(QLaurent::one())
    }
}

impl<'a> Mul<&'a DiscElement> for &'a DiscElement {
    type Output = DiscElement;
    fn mul(self, rhs: &DiscElement) -> DiscElement {
        let mut out = DiscElement::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                let coeff = c1 * c2;
                if m1.b == 0 || m2.a == 0 {
                    out.add_term(DiscMonomial::new(m1.a + m2.a, m1.b + m2.b), &coeff);
                    continue;
                }
                for (m, c) in swap(m1.b, m2.a).iter() {
                    out.add_term(DiscMonomial::new(m1.a + m.a, m.b + m2.b), &(c * &coeff));
                }
            }
        }
        out
    }
}

impl Mul for DiscElement {
    type Output = DiscElement;
    fn mul(self, rhs: DiscElement) -> DiscElement {
        &self * &rhs
    }
}

impl AddAssign<&DiscElement> for DiscElement {
    fn add_assign(&mut self, rhs: &DiscElement) {
        for (&m, c) in &rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&DiscElement> for DiscElement {
    fn sub_assign(&mut self, rhs: &DiscElement) {
        for (&m, c) in &rhs.terms {
            self.add_term(m, &-c);
        }
    }
}

impl<'a> Add<&'a DiscElement> for &'a DiscElement {
    type Output = DiscElement;
    fn add(self, rhs: &DiscElement) -> DiscElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a DiscElement> for &'a DiscElement {
    type Output = DiscElement;
    fn sub(self, rhs: &DiscElement) -> DiscElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for DiscElement {
    type Output = DiscElement;
    fn add(mut self, rhs: DiscElement) -> DiscElement {
        self += &rhs;
        self
    }
}

impl Sub for DiscElement {
    type Output = DiscElement;
    fn sub(mut self, rhs: DiscElement) -> DiscElement {
        self -= &rhs;
        self
    }
}

impl Neg for DiscElement {
    type Output = DiscElement;
    fn neg(self) -> DiscElement {
        DiscElement {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &DiscElement {
    type Output = DiscElement;
    fn neg(self) -> DiscElement {
        -self.clone()
    }
}
