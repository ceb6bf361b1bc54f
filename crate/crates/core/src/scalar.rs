//! Exact scalars: Gaussian rationals and Laurent polynomials in a formal,
//! real parameter `q` with Gaussian-rational coefficients.
//!
//! `q` is never evaluated. Two [`QLaurent`] values are equal exactly when they
//! agree as Laurent polynomials, so every identity checked with them holds for
//! all `q` at once.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// A complex number `re + im·i` with exact rational parts.
///
/// `BigRational` keeps itself reduced with a positive denominator, so derived
/// equality is structural equality of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `num/den`, real. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussRational::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn complex(re: i64, im: i64) -> Self {
        GaussRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        GaussRational::complex(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, always real and nonnegative.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational::new(&self.re / &n, -&self.im / &n))
    }

    /// Positive real part, zero imaginary part.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    pub(crate) fn write_expr(&self, f: &mut impl fmt::Write) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im),
            (false, false) => {
                write!(f, "({}", self.re)?;
                if self.im.is_positive() {
                    f.write_char('+')?;
                }
                write_imag(f, &self.im)?;
                f.write_char(')')
            }
        }
    }
}

fn write_imag(f: &mut impl fmt::Write, im: &BigRational) -> fmt::Result {
    if im.is_one() {
        f.write_str("i")
    } else if (-im).is_one() {
        f.write_str("-i")
    } else {
        write!(f, "{}*i", im)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::from_int(1)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        &self + &rhs
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        &self - &rhs
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

/// Fixture syntax: `a/b`, `c/d i`, `a/b+c/d i`, `i`, `-i`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &BigRational| {
            if im.is_one() {
                f.write_str("i")
            } else if (-im).is_one() {
                f.write_str("-i")
            } else {
                write!(f, "{} i", im)
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if self.im.is_positive() {
                    f.write_str("+")?;
                }
                imag(f, &self.im)
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad integer `{num}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad integer `{den}`"))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for GaussRational {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let err = |msg: String| ParseError::new(input, 0, msg);
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s)
                .map(|re| GaussRational::new(re, BigRational::zero()))
                .map_err(err);
        };
        // Split `re ± im` at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).map_err(err)?,
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part).map_err(err)?
        };
        Ok(GaussRational::new(re, im))
    }
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// A Laurent polynomial `Σ c_k q^k` with nonzero Gaussian-rational
/// coefficients, stored sparsely by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLaurent {
    terms: BTreeMap<i64, GaussRational>,
}

impl QLaurent {
    pub fn constant(c: GaussRational) -> Self {
        QLaurent::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        QLaurent::constant(GaussRational::from_int(n))
    }

    pub fn monomial(c: GaussRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        QLaurent { terms }
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: i64) -> Self {
        QLaurent::monomial(GaussRational::one(), k)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GaussRational)>) -> Self {
        let mut out = QLaurent::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> GaussRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    }

    /// `Some((c, k))` when the value is the single term `c·q^k`.
    pub fn as_monomial(&self) -> Option<(&GaussRational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (c, e))
        } else {
            None
        }
    }

    /// Canonical form holds: no stored zero coefficient.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
    }

    pub fn conj(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, c.conj())).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e.checked_add(k).expect("q exponent overflow"), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Inverse, defined only for monomials `c·q^k` with `c ≠ 0`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(QLaurent::monomial(c.inv()?, -k))
    }

    fn add_term(&mut self, exp: i64, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn write_expr(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, c, e, &[], idx == 0)?;
        }
        Ok(())
    }
}

/// Writes `c·q^e·factors` with an explicit leading sign (omitted for a
/// positive first term). Complex coefficients are parenthesized.
pub(crate) fn write_signed_term(
    f: &mut impl fmt::Write,
    c: &GaussRational,
    e: i64,
    factors: &[String],
    first: bool,
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let negative;
    if c.is_real() || c.re().is_zero() {
        let (mag, imaginary) = if c.is_real() {
            (c.re().clone(), false)
        } else {
            (c.im().clone(), true)
        };
        negative = mag.is_negative();
        let mag = mag.abs();
        let bare = e == 0 && factors.is_empty() && !imaginary;
        if !mag.is_one() || bare {
            parts.push(mag.to_string());
        }
        if imaginary {
            parts.push("i".into());
        }
    } else {
        negative = false;
        let mut s = String::new();
        c.write_expr(&mut s)?;
        parts.push(s);
    }
    match e {
        0 => {}
        1 => parts.push("q".into()),
        _ => parts.push(format!("q^{e}")),
    }
    parts.extend(factors.iter().cloned());
    if negative {
        f.write_char('-')?;
    } else if !first {
        f.write_char('+')?;
    }
    f.write_str(&parts.join("*"))
}

impl Zero for QLaurent {
    fn zero() -> Self {
        QLaurent {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for QLaurent {
    fn one() -> Self {
        QLaurent::q_pow(0)
    }
}

impl<'a> Add<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                let e = e1.checked_add(e2).expect("q exponent overflow");
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, &-c);
        }
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(mut self, rhs: QLaurent) -> QLaurent {
        self += &rhs;
        self
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(mut self, rhs: QLaurent) -> QLaurent {
        self -= &rhs;
        self
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        &self * &rhs
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -self.clone()
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_expr(f)
    }
}

/// Serialized as `[[exp, re_num, re_den, im_num, im_den], ...]` sorted by
/// exponent. Integers are decimal strings so they stay arbitrary precision.
impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(i64, String, String, String, String)> = self
            .terms
            .iter()
            .map(|(&e, c)| {
                (
                    e,
                    c.re().numer().to_string(),
                    c.re().denom().to_string(),
                    c.im().numer().to_string(),
                    c.im().denom().to_string(),
                )
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<(i64, String, String, String, String)>::deserialize(deserializer)?;
        let big = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let mut out = QLaurent::zero();
        for (e, rn, rd, inum, iden) in rows {
            let (rd, iden) = (big(&rd)?, big(&iden)?);
            if rd.is_zero() || iden.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            let c = GaussRational::new(
                BigRational::new(big(&rn)?, rd),
                BigRational::new(big(&inum)?, iden),
            );
            out.add_term(e, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QLaurent {
        QLaurent::q_pow(k)
    }

    fn one() -> QLaurent {
        QLaurent::one()
    }

    #[test]
    fn monomial_exponents_cancel() {
        assert_eq!(&q(1) * &q(-1), one());
        assert_eq!(&q(2) * &q(-2), one());
        assert_eq!(q(0), one());
        assert_eq!(q(5).as_monomial(), Some((&GaussRational::one(), 5)));
    }

    #[test]
    fn difference_of_squares() {
        let a = &one() - &q(2);
        let b = &one() + &q(2);
        assert_eq!(&a * &b, &one() - &q(4));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = &(&one() - &q(2)) + &q(-3).scale(&GaussRational::i());
        assert_eq!(&p + &QLaurent::zero(), p);
        assert!((&p - &p).is_zero());
        assert!((&p - &p).is_canonical());
    }

    #[test]
    fn conj_fixes_q_and_flips_i() {
        let iq = QLaurent::monomial(GaussRational::i(), 1);
        assert_eq!(iq.conj(), QLaurent::monomial(-GaussRational::i(), 1));
        let p = &one() - &q(2);
        assert_eq!(p.conj(), p);
        assert_eq!(iq.conj().conj(), iq);
    }

    #[test]
    fn gauss_parse_fixture_forms() {
        let cases = [
            ("0", GaussRational::zero()),
            ("-3/6", GaussRational::ratio(-1, 2)),
            ("i", GaussRational::i()),
            ("-i", -GaussRational::i()),
            ("2 i", GaussRational::complex(0, 2)),
            (
                "1/2+3/4 i",
                GaussRational::new(
                    BigRational::new(1.into(), 2.into()),
                    BigRational::new(3.into(), 4.into()),
                ),
            ),
            ("1-i", GaussRational::complex(1, -1)),
            ("-1-2i", GaussRational::complex(-1, -2)),
        ];
        for (s, want) in cases {
            assert_eq!(s.parse::<GaussRational>().unwrap(), want, "{s}");
            assert_eq!(want.to_string().parse::<GaussRational>().unwrap(), want);
        }
        assert!("".parse::<GaussRational>().is_err());
        assert!("1/0".parse::<GaussRational>().is_err());
        assert!("x".parse::<GaussRational>().is_err());
    }

    #[test]
    fn gauss_inverse() {
        let z = GaussRational::complex(3, -4);
        assert_eq!(&z * &z.inv().unwrap(), GaussRational::one());
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn laurent_display() {
        assert_eq!((&one() - &q(2)).to_string(), "1-q^2");
        assert_eq!(
            QLaurent::monomial(GaussRational::ratio(-1, 2), -1).to_string(),
            "-1/2*q^-1"
        );
        assert_eq!(
            QLaurent::monomial(GaussRational::complex(1, 1), 1).to_string(),
            "(1+i)*q"
        );
        assert_eq!(QLaurent::zero().to_string(), "0");
    }

    #[test]
    fn serde_tuple_layout() {
        let p = &QLaurent::monomial(GaussRational::ratio(1, 2), -1)
            + &QLaurent::monomial(GaussRational::complex(0, 3), 2);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[-1,"1","2","0","1"],[2,"0","1","3","1"]]"#);
        let back: QLaurent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
