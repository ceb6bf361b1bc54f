use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{basis_enumerate, cone_basis, ConeTriple, GradedTripleSpec, HVector};
use crate::error::Result;
use crate::ncalg::{is_in_cone, DiscElement, SkewDerivations};
use crate::report::{inputs, sort_reports, AxiomId, AxiomReport};
use crate::scalar::QLaurent;

/// Signs read off from the data; `None` when the instances disagree or are
/// all degenerate (both sides zero).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignTriple {
    pub epsilon: Option<i64>,
    pub epsilon_prime: Option<i64>,
    pub epsilon_double_prime: Option<i64>,
}

/// Decides `s ∈ {+1, −1}` with `lhs = s·rhs` on every non-degenerate pair.
pub(crate) fn common_sign<T, I>(
    pairs: I,
    negate: impl Fn(&T) -> T,
    is_zero: impl Fn(&T) -> bool,
) -> Option<i64>
where
    T: PartialEq,
    I: IntoIterator<Item = (T, T)>,
{
    let mut plus = true;
    let mut minus = true;
    let mut seen = false;
    for (lhs, rhs) in pairs {
        if is_zero(&lhs) && is_zero(&rhs) {
            continue;
        }
        seen = true;
        plus &= lhs == rhs;
        minus &= lhs == negate(&rhs);
    }
    match (seen, plus, minus) {
        (true, true, false) => Some(1),
        (true, false, true) => Some(-1),
        _ => None,
    }
}

fn scaled(h: &HVector, sign: i64) -> HVector {
    if sign < 0 {
        h.neg()
    } else {
        h.clone()
    }
}

impl<S: SkewDerivations> GradedTripleSpec<S> {
    /// Checks one instance of an axiom that needs only the triple's operators.
    /// Returns `None` for oracle axioms, which need closed forms.
    pub fn check_structural(
        &self,
        axiom: AxiomId,
        a: &DiscElement,
        b: &DiscElement,
        h: &HVector,
    ) -> Option<Result<AxiomReport>> {
        let (eps, eps_prime, eps_double_prime) = self.claimed_signs();
        let run = || -> Result<AxiomReport> {
            let hs = h.to_string();
            let just_h = || inputs([("h", hs.clone())]);
            let a_h = || inputs([("a", a.to_string()), ("h", hs.clone())]);
            let abh = || {
                inputs([
                    ("a", a.to_string()),
                    ("b", b.to_string()),
                    ("h", hs.clone()),
                ])
            };
            let report = match axiom {
                AxiomId::O0 => {
                    let lhs = self.pi_act(a, &self.jbj(b, h)?)?;
                    let rhs = self.jbj(b, &self.pi_act(a, h)?)?;
                    AxiomReport::compare(axiom, abh(), &lhs, &rhs)
                }
                AxiomId::To1 => {
                    let lhs = self.commutator(a, &self.j_twisted_pi_j(b, 2, h)?)?;
                    let rhs = self.jbj(b, &self.commutator(a, h)?)?;
                    AxiomReport::compare(axiom, abh(), &lhs, &rhs)
                }
                AxiomId::To1r => {
                    // ν̂ is ν restricted to the cone.
                    let lhs = self.commutator(a, &self.jbj(&b.nu(1), h)?)?;
                    let rhs = self.jbj(&b.nu(-1), &self.commutator(a, h)?)?;
                    AxiomReport::compare(axiom, abh(), &lhs, &rhs)
                }
                AxiomId::To1Equiv => {
                    let to1 = self
                        .check_structural(AxiomId::To1, a, b, h)
                        .expect("structural")?
                        .passed();
                    let to1r = self
                        .check_structural(AxiomId::To1r, a, b, h)
                        .expect("structural")?
                        .passed();
                    AxiomReport::compare(axiom, abh(), &to1, &to1r)
                }
                AxiomId::Right => {
                    // [D,π(a)] : H^{J,ν²} → H^{J,id} is right linear.
                    let lhs = self.commutator(a, &self.right_module_action(h, b, 2)?)?;
                    let rhs = self.right_module_action(&self.commutator(a, h)?, b, 0)?;
                    AxiomReport::compare(axiom, abh(), &lhs, &rhs)
                }
                AxiomId::Tc => {
                    let lhs = self.d_apply(&self.j_apply(&self.nu_h(h, 1)));
                    let rhs = self.nu_h(&self.j_apply(&self.d_apply(h)), 1);
                    AxiomReport::compare(axiom, just_h(), &lhs, &scaled(&rhs, eps_prime))
                }
                AxiomId::Reg => {
                    let lhs = self.nu_h(&self.j_apply(&self.nu_h(h, 1)), 1);
                    AxiomReport::compare(axiom, just_h(), &lhs, &self.j_apply(h))
                }
                AxiomId::JSquare => {
                    let lhs = self.j_apply(&self.j_apply(h));
                    AxiomReport::compare(axiom, just_h(), &lhs, &scaled(h, eps))
                }
                AxiomId::GammaSq => {
                    let lhs = self.gamma_apply(&self.gamma_apply(h));
                    AxiomReport::compare(axiom, just_h(), &lhs, h)
                }
                AxiomId::GammaComm => {
                    let lhs = self.gamma_apply(&self.pi_act(a, h)?);
                    let rhs = self.pi_act(a, &self.gamma_apply(h))?;
                    AxiomReport::compare(axiom, a_h(), &lhs, &rhs)
                }
                AxiomId::GammaD => {
                    let lhs = self.gamma_apply(&self.d_apply(h));
                    let rhs = self.d_apply(&self.gamma_apply(h)).neg();
                    AxiomReport::compare(axiom, just_h(), &lhs, &rhs)
                }
                AxiomId::GammaNu2 => {
                    let lhs = self.nu_h(&self.gamma_apply(h), 2);
                    let rhs = self.gamma_apply(&self.nu_h(h, 2));
                    AxiomReport::compare(axiom, just_h(), &lhs, &rhs)
                }
                AxiomId::GammaJ => {
                    let lhs = self.gamma_apply(&self.j_apply(h));
                    let rhs = self.j_apply(&self.gamma_apply(h));
                    AxiomReport::compare(axiom, just_h(), &lhs, &scaled(&rhs, eps_double_prime))
                }
                AxiomId::NuHat => {
                    // ν̄(π(a)) = π(ν(a))
                    let lhs = self.nu_h(&self.pi_act(a, &self.nu_h(h, -1))?, 1);
                    let rhs = self.pi_act(&a.nu(1), h)?;
                    AxiomReport::compare(axiom, a_h(), &lhs, &rhs)
                }
                AxiomId::Image => {
                    let inside = is_in_cone(&a.nu(1), self.modulus());
                    AxiomReport::compare(axiom, inputs([("a", a.to_string())]), &inside, &true)
                }
                _ => unreachable!("filtered below"),
            };
            Ok(report)
        };
        match axiom {
            AxiomId::CommutatorOracle
            | AxiomId::JbjOracle
            | AxiomId::ConeXy
            | AxiomId::ConeYyStar
            | AxiomId::ConeYStarY
            | AxiomId::ConeXSelfAdjoint
            | AxiomId::AlphaPrimeCentral
            | AxiomId::FluctuationTc
            | AxiomId::FluctuationClosure
            | AxiomId::FluctuationComposite
            | AxiomId::DiracHermitian => None,
            _ => Some(run()),
        }
    }

    /// Signs extracted from `J²`, `DJν` against `νJD`, and `γJ` against `Jγ`.
    pub fn extract_signs(&self, basis: &[HVector]) -> SignTriple {
        let neg = |h: &HVector| h.neg();
        let zero = |h: &HVector| h.is_zero();
        SignTriple {
            epsilon: common_sign(
                basis
                    .iter()
                    .map(|h| (self.j_apply(&self.j_apply(h)), h.clone())),
                neg,
                zero,
            ),
            epsilon_prime: common_sign(
                basis.iter().map(|h| {
                    (
                        self.d_apply(&self.j_apply(&self.nu_h(h, 1))),
                        self.nu_h(&self.j_apply(&self.d_apply(h)), 1),
                    )
                }),
                neg,
                zero,
            ),
            epsilon_double_prime: common_sign(
                basis.iter().map(|h| {
                    (
                        self.gamma_apply(&self.j_apply(h)),
                        self.j_apply(&self.gamma_apply(h)),
                    )
                }),
                neg,
                zero,
            ),
        }
    }
}

impl ConeTriple {
    /// Evaluates both sides of one axiom instance exactly. Inputs not used by
    /// the axiom are ignored.
    pub fn check_axiom(
        &self,
        axiom: AxiomId,
        a: &DiscElement,
        b: &DiscElement,
        h: &HVector,
    ) -> Result<AxiomReport> {
        if let Some(report) = self.check_structural(axiom, a, b, h) {
            return report;
        }
        let hs = h.to_string();
        match axiom {
            AxiomId::CommutatorOracle => Ok(AxiomReport::compare(
                axiom,
                inputs([("a", a.to_string()), ("h", hs)]),
                &self.commutator(a, h)?,
                &self.commutator_closed_form(a, h)?,
            )),
            AxiomId::JbjOracle => Ok(AxiomReport::compare(
                axiom,
                inputs([("b", b.to_string()), ("h", hs)]),
                &self.jbj(b, h)?,
                &self.jbj_closed_form(b, h)?,
            )),
            other => Ok(AxiomReport::compare(
                other,
                inputs([("error", "axiom does not apply to the cone triple".into())]),
                &false,
                &true,
            )),
        }
    }
}

/// Result of a full cone run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeVerification {
    pub reports: Vec<AxiomReport>,
    pub signs: SignTriple,
}

#[derive(Clone, Copy)]
enum Shape {
    H,
    Ah,
    Bh,
    Abh,
}

const PLAN: [(AxiomId, Shape); 17] = [
    (AxiomId::O0, Shape::Abh),
    (AxiomId::To1, Shape::Abh),
    (AxiomId::To1r, Shape::Abh),
    (AxiomId::Tc, Shape::H),
    (AxiomId::Reg, Shape::H),
    (AxiomId::GammaSq, Shape::H),
    (AxiomId::GammaComm, Shape::Ah),
    (AxiomId::GammaD, Shape::H),
    (AxiomId::GammaNu2, Shape::H),
    (AxiomId::GammaJ, Shape::H),
    (AxiomId::Right, Shape::Abh),
    (AxiomId::Image, Shape::Ah),
    (AxiomId::JSquare, Shape::H),
    (AxiomId::To1Equiv, Shape::Abh),
    (AxiomId::NuHat, Shape::Ah),
    (AxiomId::CommutatorOracle, Shape::Ah),
    (AxiomId::JbjOracle, Shape::Bh),
];

/// Runs every axiom over `h` in the basis of `H` up to `cutoff` and `a, b`
/// over cone monomials up to `algebra_cutoff`.
///
/// Every identity is linear in each of `a`, `b`, `h`, so checking spanning
/// monomials covers their span. Instances run in parallel on the current
/// rayon pool; the report order does not depend on scheduling.
pub fn verify_cone(modulus: i64, cutoff: u32, algebra_cutoff: u32) -> Result<ConeVerification> {
    let triple = ConeTriple::new(modulus)?;
    let hs: Vec<HVector> = basis_enumerate(modulus, cutoff)?
        .into_iter()
        .map(|(slot, m)| triple.basis_vector(slot, m))
        .collect();
    let algebra: Vec<DiscElement> = cone_basis(modulus, algebra_cutoff)?
        .into_iter()
        .map(|m| DiscElement::term(m, QLaurent::from_int(1)))
        .collect();

    let mut tasks: Vec<(AxiomId, usize, usize, usize, usize)> = Vec::new();
    for (axiom, shape) in PLAN {
        let mut index = 0;
        let mut push = |ia: usize, ib: usize, ih: usize| {
            tasks.push((axiom, index, ia, ib, ih));
            index += 1;
        };
        match shape {
            Shape::H => (0..hs.len()).for_each(|ih| push(0, 0, ih)),
            Shape::Ah => {
                for ia in 0..algebra.len() {
                    (0..hs.len()).for_each(|ih| push(ia, 0, ih));
                }
            }
            Shape::Bh => {
                for ib in 0..algebra.len() {
                    (0..hs.len()).for_each(|ih| push(0, ib, ih));
                }
            }
            Shape::Abh => {
                for ia in 0..algebra.len() {
                    for ib in 0..algebra.len() {
                        (0..hs.len()).for_each(|ih| push(ia, ib, ih));
                    }
                }
            }
        }
    }

    let mut reports = tasks
        .par_iter()
        .map(|&(axiom, index, ia, ib, ih)| {
            let report = triple.check_axiom(axiom, &algebra[ia], &algebra[ib], &hs[ih])?;
            Ok(report.with_index(index))
        })
        .collect::<Result<Vec<_>>>()?;
    sort_reports(&mut reports);

    Ok(ConeVerification {
        reports,
        signs: triple.extract_signs(&hs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Sign;
    use crate::report::Verdict;

    fn el(s: &str) -> DiscElement {
        s.parse().unwrap()
    }

    #[test]
    fn spot_checks() {
        let t = ConeTriple::new(2).unwrap();
        let x = t.gens().x().clone();
        let hp = t.vector(el("z"), el("0")).unwrap();
        let hm = t.vector(el("0"), el("zs")).unwrap();
        for (axiom, h) in [(AxiomId::O0, &hp), (AxiomId::Tc, &hp), (AxiomId::Reg, &hm)] {
            let r = t.check_axiom(axiom, &x, &x, h).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn wrong_sign_is_caught() {
        // DJν = −νJD would be KO-dimension 6; it must not pass.
        let t = ConeTriple::new(2).unwrap();
        let h = t.basis_vector(Sign::Plus, crate::ncalg::DiscMonomial::new(1, 0));
        let lhs = t.d_apply(&t.j_apply(&t.nu_h(&h, 1)));
        let rhs = t.nu_h(&t.j_apply(&t.d_apply(&h)), 1);
        assert_eq!(lhs, rhs);
        assert_ne!(lhs, rhs.neg());
    }

    #[test]
    fn small_run_passes_with_ko2_signs() {
        let run = verify_cone(2, 3, 2).unwrap();
        let failures: Vec<_> = run.reports.iter().filter(|r| !r.passed()).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(
            run.signs,
            SignTriple {
                epsilon: Some(-1),
                epsilon_prime: Some(1),
                epsilon_double_prime: Some(-1)
            }
        );
    }

    #[test]
    fn empty_basis_is_vacuous() {
        let run = verify_cone(2, 0, 2).unwrap();
        assert!(run.reports.is_empty());
        assert_eq!(run.signs, SignTriple::default());
    }

    #[test]
    fn report_order_is_deterministic() {
        let first = verify_cone(3, 2, 3).unwrap();
        let second = verify_cone(3, 2, 3).unwrap();
        assert_eq!(first, second);
        assert!(first
            .reports
            .windows(2)
            .all(|w| (w[0].axiom, w[0].index) < (w[1].axiom, w[1].index)));
    }
}
