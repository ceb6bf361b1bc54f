//! The quantum cone `O(C^N_q)`, embedded in the disc as the span of degrees
//! divisible by `N` via `x ↦ 1 − zz*`, `y ↦ z^N`.

use num_traits::One;

use super::DiscElement;
use crate::error::{Error, Result};
use crate::report::{inputs, AxiomId, AxiomReport};
use crate::scalar::QLaurent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGens {
    modulus: u32,
    x: DiscElement,
    y: DiscElement,
}

impl ConeGens {
    pub fn new(modulus: i64) -> Result<Self> {
        let n = validate_modulus(modulus)?;
        Ok(ConeGens {
            modulus: n,
            x: &DiscElement::one() - &DiscElement::monomial(1, 1),
            y: DiscElement::monomial(n, 0),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Image of the self-adjoint generator, `1 − zz*`.
    pub fn x(&self) -> &DiscElement {
        &self.x
    }

    /// Image of `y`, namely `z^N`.
    pub fn y(&self) -> &DiscElement {
        &self.y
    }
}

pub(crate) fn validate_modulus(modulus: i64) -> Result<u32> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    u32::try_from(modulus).map_err(|_| Error::InvalidModulus(modulus))
}

/// True iff every nonzero homogeneous component has degree divisible by `N`.
pub fn is_in_cone(p: &DiscElement, modulus: u32) -> bool {
    p.degrees().all(|d| d.rem_euclid(i64::from(modulus)) == 0)
}

/// Checks the three defining relations of the cone on the embedded
/// generators, plus self-adjointness of `x`:
///
/// * `xy = q^{2N} yx`
/// * `yy* = ∏_{l=0}^{N−1} (1 − q^{−2l} x)`
/// * `y*y = ∏_{l=1}^{N} (1 − q^{2l} x)`
pub fn cone_relation_check(modulus: i64) -> Result<Vec<AxiomReport>> {
    let gens = ConeGens::new(modulus)?;
    let n = i64::from(gens.modulus);
    let (x, y) = (gens.x(), gens.y());
    let y_star = y.star();
    let factor = |l: i64| &DiscElement::one() - &x.scale(&QLaurent::q_pow(2 * l));
    let ins = || inputs([("N", n.to_string())]);

    let xy = AxiomReport::compare(
        AxiomId::ConeXy,
        ins(),
        &(x * y),
        &(y * x).scale(&QLaurent::q_pow(2 * n)),
    );
    let yy_star_rhs = (0..n).fold(DiscElement::one(), |acc, l| &acc * &factor(-l));
    let yy_star = AxiomReport::compare(AxiomId::ConeYyStar, ins(), &(y * &y_star), &yy_star_rhs);
    let y_star_y_rhs = (1..=n).fold(DiscElement::one(), |acc, l| &acc * &factor(l));
    let y_star_y = AxiomReport::compare(AxiomId::ConeYStarY, ins(), &(&y_star * y), &y_star_y_rhs);
    let x_sa = AxiomReport::compare(AxiomId::ConeXSelfAdjoint, ins(), &x.star(), x);
    Ok(vec![xy, yy_star, y_star_y, x_sa])
}
