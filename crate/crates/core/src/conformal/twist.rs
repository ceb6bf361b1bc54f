use std::collections::BTreeMap;

use super::matrix::Matrix;
use super::triple::{k_prime, ConformalFactor, FiniteTriple};
use crate::error::{Error, Result};
use crate::graded_triple::check::common_sign;
use crate::graded_triple::SignTriple;
use crate::report::{inputs, sort_reports, AxiomId, AxiomReport};
use crate::scalar::GaussRational;

/// A finite triple with a twisted Dirac operator `D`, twist `ν`, and an
/// invertible `U ∈ π(A)` implementing `ν̂`, so that `π(ν̂(a)) = U⁻¹π(a)U`.
#[derive(Clone, Debug)]
pub struct TwistedTriple {
    base: FiniteTriple,
    dirac: Matrix,
    nu: Matrix,
    nu_inv: Matrix,
    nu_hat: Matrix,
    nu_hat_inv: Matrix,
}

impl TwistedTriple {
    /// The base triple with `ν = id`.
    pub fn untwisted(base: &FiniteTriple) -> Self {
        let id = Matrix::identity(base.dim());
        TwistedTriple {
            base: base.clone(),
            dirac: base.dirac().clone(),
            nu: id.clone(),
            nu_inv: id.clone(),
            nu_hat: id.clone(),
            nu_hat_inv: id,
        }
    }

    /// Assembles a twisted triple without checking any axiom. Only shapes and
    /// invertibility are enforced.
    pub fn from_parts(
        base: &FiniteTriple,
        dirac: Matrix,
        nu: Matrix,
        nu_hat: Matrix,
    ) -> Result<Self> {
        let n = base.dim();
        dirac.check_dim("D", n)?;
        nu.check_dim("nu", n)?;
        nu_hat.check_dim("nu_hat", n)?;
        let nu_inv = nu
            .inverse()
            .ok_or_else(|| Error::BadFactor("ν is singular".into()))?;
        let nu_hat_inv = nu_hat
            .inverse()
            .ok_or_else(|| Error::BadFactor("ν̂ implementer is singular".into()))?;
        Ok(TwistedTriple {
            base: base.clone(),
            dirac,
            nu,
            nu_inv,
            nu_hat,
            nu_hat_inv,
        })
    }

    pub fn base(&self) -> &FiniteTriple {
        &self.base
    }

    pub fn dirac(&self) -> &Matrix {
        &self.dirac
    }

    pub fn nu(&self) -> &Matrix {
        &self.nu
    }

    pub fn nu_inverse(&self) -> &Matrix {
        &self.nu_inv
    }

    /// `U` with `π(ν̂(a)) = U⁻¹π(a)U`.
    pub fn nu_hat(&self) -> &Matrix {
        &self.nu_hat
    }

    pub fn with_nu(&self, nu: Matrix) -> Result<Self> {
        TwistedTriple::from_parts(&self.base, self.dirac.clone(), nu, self.nu_hat.clone())
    }

    pub(crate) fn with_dirac(&self, dirac: Matrix) -> Self {
        TwistedTriple {
            dirac,
            ..self.clone()
        }
    }

    /// `ν^t X ν^{-t}`.
    pub fn nu_bar(&self, x: &Matrix, t: i32) -> Matrix {
        let (fwd, back) = if t >= 0 {
            (&self.nu, &self.nu_inv)
        } else {
            (&self.nu_inv, &self.nu)
        };
        let mut out = x.clone();
        for _ in 0..t.unsigned_abs() {
            out = &(fwd * &out) * back;
        }
        out
    }

    /// `π(ν̂^t(a))` for `a` given by its image.
    pub fn nu_hat_apply(&self, pi_a: &Matrix, t: i32) -> Matrix {
        let (fwd, back) = if t >= 0 {
            (&self.nu_hat_inv, &self.nu_hat)
        } else {
            (&self.nu_hat, &self.nu_hat_inv)
        };
        let mut out = pi_a.clone();
        for _ in 0..t.unsigned_abs() {
            out = &(fwd * &out) * back;
        }
        out
    }

    pub fn commutator(&self, pi_a: &Matrix) -> Matrix {
        self.dirac.commutator(pi_a)
    }

    /// Matrix of `h ↦ h·b = J ν̄^t(π(b*)) J⁻¹ h`.
    pub fn right_action(&self, pi_b: &Matrix, t: i32) -> Matrix {
        self.base.j().jmj(&self.nu_bar(&pi_b.adjoint(), t))
    }

    /// One instance of an axiom, with `a` and `b` named by algebra basis
    /// words. Inputs an axiom does not use are ignored.
    pub fn check(&self, axiom: AxiomId, a: Option<&str>, b: Option<&str>) -> Result<AxiomReport> {
        let algebra = self.base.algebra();
        let resolve = |label: Option<&str>, name: &str| -> Result<&Matrix> {
            let label =
                label.ok_or_else(|| Error::NotInAlgebra(format!("missing input `{name}`")))?;
            algebra
                .lookup(label)
                .ok_or_else(|| Error::NotInAlgebra(format!("`{label}`")))
        };
        let j = self.base.j();
        let signs = self.base.signs();
        let eps = |s: Option<i64>| GaussRational::from_int(s.unwrap_or(1));
        let n = self.base.dim();
        let none = BTreeMap::new;
        let a_in = || inputs([("a", a.unwrap_or_default().to_string())]);
        let ab_in = || {
            inputs([
                ("a", a.unwrap_or_default().to_string()),
                ("b", b.unwrap_or_default().to_string()),
            ])
        };
        let gamma = || {
            self.base
                .gamma()
                .ok_or_else(|| Error::GammaFails("the triple has no grading".into()))
        };
        let report = match axiom {
            AxiomId::DiracHermitian => {
                AxiomReport::compare(axiom, none(), &self.dirac, &self.dirac.adjoint())
            }
            AxiomId::JSquare => AxiomReport::compare(
                axiom,
                none(),
                &j.square(),
                &Matrix::identity(n).scale(&eps(signs.epsilon)),
            ),
            AxiomId::Tc => {
                let lhs = j.after(&self.dirac).clone();
                let lhs = &lhs * &self.nu.conj();
                let rhs = (&self.nu * &j.before(&self.dirac)).scale(&eps(signs.epsilon_prime));
                AxiomReport::compare(axiom, none(), &lhs, &rhs)
            }
            AxiomId::Reg => {
                let lhs = &j.after(&self.nu) * &self.nu.conj();
                AxiomReport::compare(axiom, none(), &lhs, j.matrix())
            }
            AxiomId::GammaSq => {
                let g = gamma()?;
                AxiomReport::compare(axiom, none(), &(g * g), &Matrix::identity(n))
            }
            AxiomId::GammaD => {
                let g = gamma()?;
                AxiomReport::compare(axiom, none(), &(g * &self.dirac), &-&(&self.dirac * g))
            }
            AxiomId::GammaNu2 => {
                let g = gamma()?;
                let nu2 = &self.nu * &self.nu;
                AxiomReport::compare(axiom, none(), &(&nu2 * g), &(g * &nu2))
            }
            AxiomId::GammaJ => {
                let g = gamma()?;
                let rhs = j.before(g).scale(&eps(signs.epsilon_double_prime));
                AxiomReport::compare(axiom, none(), &j.after(g), &rhs)
            }
            AxiomId::GammaComm => {
                let g = gamma()?;
                let pa = resolve(a, "a")?;
                AxiomReport::compare(axiom, a_in(), &(g * pa), &(pa * g))
            }
            AxiomId::NuHat => {
                let pa = resolve(a, "a")?;
                AxiomReport::compare(
                    axiom,
                    a_in(),
                    &self.nu_bar(pa, 1),
                    &self.nu_hat_apply(pa, 1),
                )
            }
            AxiomId::Image => {
                let pa = resolve(a, "a")?;
                let inside = algebra.contains(&self.nu_bar(pa, 1));
                AxiomReport::compare(axiom, a_in(), &inside, &true)
            }
            AxiomId::O0 => {
                let (pa, pb) = (resolve(a, "a")?, resolve(b, "b")?);
                let jbj = j.jmj(pb);
                AxiomReport::compare(axiom, ab_in(), &(pa * &jbj), &(&jbj * pa))
            }
            AxiomId::To1 => {
                let (pa, pb) = (resolve(a, "a")?, resolve(b, "b")?);
                let c = self.commutator(pa);
                let lhs = &c * &j.jmj(&self.nu_bar(pb, 2));
                let rhs = &j.jmj(pb) * &c;
                AxiomReport::compare(axiom, ab_in(), &lhs, &rhs)
            }
            AxiomId::To1r => {
                let (pa, pb) = (resolve(a, "a")?, resolve(b, "b")?);
                let c = self.commutator(pa);
                let lhs = &c * &j.jmj(&self.nu_hat_apply(pb, 1));
                let rhs = &j.jmj(&self.nu_hat_apply(pb, -1)) * &c;
                AxiomReport::compare(axiom, ab_in(), &lhs, &rhs)
            }
            AxiomId::To1Equiv => {
                let to1 = self.check(AxiomId::To1, a, b)?.passed();
                let to1r = self.check(AxiomId::To1r, a, b)?.passed();
                AxiomReport::compare(axiom, ab_in(), &to1, &to1r)
            }
            AxiomId::Right => {
                let (pa, pb) = (resolve(a, "a")?, resolve(b, "b")?);
                let c = self.commutator(pa);
                let lhs = &c * &self.right_action(pb, 2);
                let rhs = &self.right_action(pb, 0) * &c;
                AxiomReport::compare(axiom, ab_in(), &lhs, &rhs)
            }
            other => {
                return Err(Error::NotInAlgebra(format!(
                    "axiom {} is not a finite-triple axiom",
                    other.name()
                )))
            }
        };
        Ok(report)
    }

    /// Signs read off from `J²`, `DJν` against `νJD`, and `γJ` against `Jγ`.
    pub fn extract_signs(&self) -> SignTriple {
        let j = self.base.j();
        let neg = |m: &Matrix| -m;
        let zero = |m: &Matrix| m.is_zero();
        let n = self.base.dim();
        SignTriple {
            epsilon: common_sign([(j.square(), Matrix::identity(n))], neg, zero),
            epsilon_prime: common_sign(
                [(
                    &j.after(&self.dirac) * &self.nu.conj(),
                    &self.nu * &j.before(&self.dirac),
                )],
                neg,
                zero,
            ),
            epsilon_double_prime: self
                .base
                .gamma()
                .and_then(|g| common_sign([(j.after(g), j.before(g))], neg, zero)),
        }
    }
}

const SINGLE: [AxiomId; 4] = [
    AxiomId::DiracHermitian,
    AxiomId::JSquare,
    AxiomId::Tc,
    AxiomId::Reg,
];
const GAMMA_SINGLE: [AxiomId; 4] = [
    AxiomId::GammaSq,
    AxiomId::GammaD,
    AxiomId::GammaNu2,
    AxiomId::GammaJ,
];
const PAIRS: [AxiomId; 5] = [
    AxiomId::O0,
    AxiomId::To1,
    AxiomId::To1r,
    AxiomId::To1Equiv,
    AxiomId::Right,
];

/// Exact checks of every twisted-reality condition on an algebra basis.
pub fn verify_twisted(t: &TwistedTriple) -> Vec<AxiomReport> {
    let labels: Vec<&str> = t
        .base()
        .algebra()
        .elements()
        .iter()
        .map(|(l, _)| l.as_str())
        .collect();
    let mut tasks: Vec<(AxiomId, Option<&str>, Option<&str>)> =
        SINGLE.iter().map(|&x| (x, None, None)).collect();
    let mut singles_a = vec![AxiomId::NuHat, AxiomId::Image];
    if t.base().gamma().is_some() {
        tasks.extend(GAMMA_SINGLE.iter().map(|&x| (x, None, None)));
        singles_a.push(AxiomId::GammaComm);
    }
    for &axiom in &singles_a {
        tasks.extend(labels.iter().map(|&a| (axiom, Some(a), None)));
    }
    for &axiom in &PAIRS {
        for &a in &labels {
            tasks.extend(labels.iter().map(|&b| (axiom, Some(a), Some(b))));
        }
    }
    let mut counters: BTreeMap<AxiomId, usize> = BTreeMap::new();
    let mut reports: Vec<AxiomReport> = tasks
        .into_iter()
        .map(|(axiom, a, b)| {
            let idx = counters.entry(axiom).or_default();
            let report = t
                .check(axiom, a, b)
                .expect("labels come from the basis")
                .with_index(*idx);
            *idx += 1;
            report
        })
        .collect();
    sort_reports(&mut reports);
    reports
}

/// Conformal twist: `D_k = k′Dk′`, `ν = k⁻¹k′`, `ν̂` implemented by `k`.
pub fn build_twisted(base: &FiniteTriple, k: &ConformalFactor) -> Result<TwistedTriple> {
    let kp = k_prime(k, base.j());
    let dirac = &(&kp * base.dirac()) * &kp;
    let nu = k.inverse() * &kp;
    TwistedTriple::from_parts(base, dirac, nu, k.matrix().clone())
}

/// Retwist by a further factor: `D ↦ k′Dk′`, `ν ↦ μ = k′νk⁻¹`. Requires
/// `ν(kk′)ν⁻¹ = kk′`.
pub fn retwist(t: &TwistedTriple, k: &ConformalFactor) -> Result<TwistedTriple> {
    let kp = k_prime(k, t.base().j());
    let kkp = k.matrix() * &kp;
    if t.nu_bar(&kkp, 1) != kkp {
        return Err(Error::TwistIncompatible);
    }
    let dirac = &(&kp * t.dirac()) * &kp;
    let mu = &(&kp * t.nu()) * k.inverse();
    let nu_hat = k.matrix() * t.nu_hat();
    TwistedTriple::from_parts(t.base(), dirac, mu, nu_hat)
}
