//! Free-monoid words over `{z, z*}` and the oriented rewriting rule
//! `z*z → q²zz* + (1 − q²)`.
//!
//! Each rewrite removes at least one `(z*, z)` inversion, so reduction
//! terminates under any strategy.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{DiscElement, DiscMonomial};
use crate::error::ParseError;
use crate::scalar::QLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Z,
    ZStar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

/// Which redex to contract when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the letters computed with the algebra multiplication,
    /// independent of the rewriting engine.
    pub fn product(&self) -> DiscElement {
        self.0.iter().fold(DiscElement::one(), |acc, l| {
            let g = match l {
                Letter::Z => DiscElement::z(),
                Letter::ZStar => DiscElement::zs(),
            };
            &acc * &g
        })
    }

    fn redex(&self, strategy: Strategy) -> Option<usize> {
        let mut hits = self
            .0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Letter::ZStar && w[1] == Letter::Z)
            .map(|(i, _)| i);
        match strategy {
            Strategy::Leftmost => hits.next(),
            Strategy::Rightmost => hits.next_back(),
        }
    }

    /// `z^a z*^b` if the word is already normal ordered.
    fn as_normal(&self) -> Option<DiscMonomial> {
        let a = self.0.iter().take_while(|&&l| l == Letter::Z).count();
        if self.0[a..].iter().all(|&l| l == Letter::ZStar) {
            Some(DiscMonomial::new(a as u32, (self.0.len() - a) as u32))
        } else {
            None
        }
    }
}

/// Normal form by exhaustive rewriting, contracting leftmost redexes.
pub fn normal_form(w: &Word) -> DiscElement {
    normal_form_with(w, Strategy::Leftmost)
}

/// Normal form by exhaustive rewriting under the given strategy. Equal words
/// produced along the way are merged before the next round.
pub fn normal_form_with(w: &Word, strategy: Strategy) -> DiscElement {
    let mut pending: BTreeMap<Word, QLaurent> = BTreeMap::new();
    pending.insert(w.clone(), QLaurent::one());
    let mut done = DiscElement::zero();
    let q2 = QLaurent::q_pow(2);
    let one_minus_q2 = &QLaurent::one() - &q2;
    while !pending.is_empty() {
        let mut next: BTreeMap<Word, QLaurent> = BTreeMap::new();
        let mut push = |word: Word, c: QLaurent| {
            let slot = next.entry(word).or_default();
            *slot += &c;
        };
        for (word, coeff) in pending {
            if coeff.is_zero() {
                continue;
            }
            let Some(i) = word.redex(strategy) else {
                let m = word.as_normal().expect("redex-free word is normal ordered");
                done += &DiscElement::term(m, coeff);
                continue;
            };
            let mut swapped = word.0.clone();
            swapped[i] = Letter::Z;
            swapped[i + 1] = Letter::ZStar;
            push(Word(swapped), &coeff * &q2);
            let mut dropped = word.0;
            dropped.drain(i..i + 2);
            push(Word(dropped), &coeff * &one_minus_q2);
        }
        pending = next;
    }
    done
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Z => "z",
                Letter::ZStar => "zs",
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Accepts products of `z`, `zs` with optional nonnegative powers, e.g.
/// `zs*z^2*zs`, or `1` for the empty word.
impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let trimmed = s.trim();
        if trimmed == "1" {
            return Ok(Word::default());
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for factor in s.split('*') {
            let f = factor.trim();
            let (base, exp) = match f.split_once('^') {
                Some((b, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| {
                        ParseError::new(s, offset, format!("bad exponent in `{f}`"))
                    })?;
                    (b.trim(), e)
                }
                None => (f, 1),
            };
            let letter = match base {
                "z" => Letter::Z,
                "zs" => Letter::ZStar,
                _ => {
                    return Err(ParseError::new(
                        s,
                        offset,
                        format!("expected `z` or `zs`, found `{base}`"),
                    ))
                }
            };
            letters.extend(std::iter::repeat_n(letter, exp as usize));
            offset += factor.len() + 1;
        }
        Ok(Word(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QLaurent {
        QLaurent::q_pow(k)
    }

    #[test]
    fn defining_relation() {
        let w: Word = "zs*z".parse().unwrap();
        let want = DiscElement::from_terms([
            (DiscMonomial::new(1, 1), q(2)),
            (DiscMonomial::ONE, &QLaurent::one() - &q(2)),
        ]);
        assert_eq!(normal_form(&w), want);
    }

    #[test]
    fn normal_word_is_fixed() {
        let w: Word = "z*zs".parse().unwrap();
        assert_eq!(normal_form(&w), DiscElement::monomial(1, 1));
    }

    #[test]
    fn zs_z_z_both_strategies() {
        let w: Word = "zs*z*z".parse().unwrap();
        let want = DiscElement::from_terms([
            (DiscMonomial::new(2, 1), q(4)),
            (DiscMonomial::new(1, 0), &QLaurent::one() - &q(4)),
        ]);
        assert_eq!(normal_form_with(&w, Strategy::Leftmost), want);
        assert_eq!(normal_form_with(&w, Strategy::Rightmost), want);
        assert_eq!(w.product(), want);
    }

    #[test]
    fn word_parse_and_print() {
        let w: Word = "zs^2*z".parse().unwrap();
        assert_eq!(w.0, vec![Letter::ZStar, Letter::ZStar, Letter::Z]);
        assert_eq!(w.to_string(), "zs*zs*z");
        assert!("y".parse::<Word>().is_err());
        assert_eq!("1".parse::<Word>().unwrap(), Word::default());
    }
}
