use super::matrix::Matrix;
use super::twist::TwistedTriple;
use crate::error::{Error, Result};
use crate::report::{inputs, AxiomId, AxiomReport};
use crate::scalar::GaussRational;

/// `Σ π(aᵢ)[D, π(bᵢ)]` together with the pairs it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pairs: Vec<(Matrix, Matrix)>,
    value: Matrix,
}

impl OneForm {
    /// Assembles the one-form relative to `dirac`.
    pub fn new(dirac: &Matrix, pairs: Vec<(Matrix, Matrix)>) -> Self {
        let mut value = Matrix::zeros(dirac.dim());
        for (a, b) in &pairs {
            value = &value + &(a * &dirac.commutator(b));
        }
        OneForm { pairs, value }
    }

    pub fn zero(n: usize) -> Self {
        OneForm {
            pairs: Vec::new(),
            value: Matrix::zeros(n),
        }
    }

    pub fn pairs(&self) -> &[(Matrix, Matrix)] {
        &self.pairs
    }

    pub fn value(&self) -> &Matrix {
        &self.value
    }

    /// Pairs of the adjoint form, valid when `dirac` is hermitian:
    /// `(a[D,b])* = −[D, b*a*] + b*[D, a*]`.
    pub fn adjoint_pairs(&self) -> Vec<(Matrix, Matrix)> {
        let n = self.value.dim();
        let minus_one = Matrix::identity(n).scale(&GaussRational::from_int(-1));
        self.pairs
            .iter()
            .flat_map(|(a, b)| {
                let (a_s, b_s) = (a.adjoint(), b.adjoint());
                [(minus_one.clone(), &b_s * &a_s), (b_s, a_s)]
            })
            .collect()
    }
}

/// Pairs exhibiting `[α, π(d)]` as a one-form, from
/// `[D,π(b)]π(d) = [D,π(bd)] − π(b)[D,π(d)]`.
pub fn commutator_pairs(alpha: &OneForm, d: &Matrix) -> Vec<(Matrix, Matrix)> {
    let minus = GaussRational::from_int(-1);
    alpha
        .pairs()
        .iter()
        .flat_map(|(a, b)| {
            [
                (a.clone(), b * d),
                ((a * b).scale(&minus), d.clone()),
                ((d * a).scale(&minus), b.clone()),
            ]
        })
        .collect()
}

impl TwistedTriple {
    /// A one-form relative to this triple's Dirac operator. Every entry must
    /// lie in the represented algebra.
    pub fn one_form(&self, pairs: Vec<(Matrix, Matrix)>) -> Result<OneForm> {
        let algebra = self.base().algebra();
        for (a, b) in &pairs {
            for m in [a, b] {
                m.check_dim("one-form pair", self.base().dim())?;
                if !algebra.contains(m) {
                    return Err(Error::NotInAlgebra(m.to_string()));
                }
            }
        }
        Ok(OneForm::new(self.dirac(), pairs))
    }

    /// The one-form on `pairs` plus its adjoint, which is hermitian.
    pub fn self_adjoint_one_form(&self, pairs: Vec<(Matrix, Matrix)>) -> Result<OneForm> {
        let half = self.one_form(pairs)?;
        let mut all = half.pairs.clone();
        all.extend(half.adjoint_pairs());
        self.one_form(all)
    }

    /// `α′ = νJαJ⁻¹ν`.
    pub fn alpha_prime(&self, alpha: &OneForm) -> Matrix {
        &(self.nu() * &self.base().j().jmj(alpha.value())) * self.nu()
    }

    /// `α + ε′α′`.
    pub fn fluctuation_term(&self, alpha: &OneForm) -> Matrix {
        let eps_prime = GaussRational::from_int(self.base().signs().epsilon_prime.unwrap_or(1));
        alpha.value() + &self.alpha_prime(alpha).scale(&eps_prime)
    }

    /// `D_α = D + α + ε′α′`; `α + ε′α′` must be hermitian.
    pub fn fluctuate(&self, alpha: &OneForm) -> Result<TwistedTriple> {
        let term = self.fluctuation_term(alpha);
        if !term.is_hermitian() {
            return Err(Error::NotSelfAdjoint);
        }
        Ok(self.with_dirac(self.dirac() + &term))
    }

    pub fn check_alpha_prime_central(
        &self,
        alpha: &OneForm,
        label: &str,
        pi_a: &Matrix,
    ) -> AxiomReport {
        let ap = self.alpha_prime(alpha);
        AxiomReport::compare(
            AxiomId::AlphaPrimeCentral,
            inputs([("a", label.to_string())]),
            &ap.commutator(pi_a),
            &Matrix::zeros(pi_a.dim()),
        )
    }

    /// `(α + ε′α′)Jν = ε′νJ(α + ε′α′)`.
    pub fn check_fluctuation_tc(&self, alpha: &OneForm) -> AxiomReport {
        let j = self.base().j();
        let s = self.fluctuation_term(alpha);
        let eps_prime = GaussRational::from_int(self.base().signs().epsilon_prime.unwrap_or(1));
        let lhs = &j.after(&s) * &self.nu().conj();
        let rhs = (self.nu() * &j.before(&s)).scale(&eps_prime);
        AxiomReport::compare(AxiomId::FluctuationTc, Default::default(), &lhs, &rhs)
    }

    /// `[D_α, π(a)] = [D, π(a)] + [α, π(a)]`, then `[α, π(a)]` rebuilt as an
    /// explicit one-form. Reports the first part that fails.
    pub fn fluctuation_closure_check(
        &self,
        alpha: &OneForm,
        label: &str,
        pi_a: &Matrix,
    ) -> AxiomReport {
        let d_alpha = self.dirac() + &self.fluctuation_term(alpha);
        let direct = alpha.value().commutator(pi_a);
        let split = AxiomReport::compare(
            AxiomId::FluctuationClosure,
            inputs([("a", label.to_string()), ("part", "commutator".into())]),
            &d_alpha.commutator(pi_a),
            &(&self.commutator(pi_a) + &direct),
        );
        if !split.passed() {
            return split;
        }
        let rebuilt = OneForm::new(self.dirac(), commutator_pairs(alpha, pi_a));
        AxiomReport::compare(
            AxiomId::FluctuationClosure,
            inputs([("a", label.to_string()), ("part", "one_form".into())]),
            rebuilt.value(),
            &direct,
        )
    }

    /// The one-form `γ` relative to this triple's `D` with
    /// `(D_α)_β = D_γ`, where `β` is a one-form relative to `D_α`.
    pub fn composite_one_form(&self, alpha: &OneForm, beta: &OneForm) -> OneForm {
        let mut pairs = alpha.pairs().to_vec();
        for (c, d) in beta.pairs() {
            pairs.push((c.clone(), d.clone()));
            pairs.extend(
                commutator_pairs(alpha, d)
                    .into_iter()
                    .map(|(a, b)| (c * &a, b)),
            );
        }
        OneForm::new(self.dirac(), pairs)
    }

    /// Fluctuates by `α`, then by the pairs of `beta` taken relative to
    /// `D_α`, and compares with one fluctuation by the composite.
    pub fn check_fluctuation_composite(
        &self,
        alpha: &OneForm,
        beta_pairs: Vec<(Matrix, Matrix)>,
    ) -> Result<AxiomReport> {
        let first = self.fluctuate(alpha)?;
        let beta = first.one_form(beta_pairs)?;
        let twice = first.fluctuate(&beta)?;
        let composite = self.composite_one_form(alpha, &beta);
        let once = self.fluctuate(&composite)?;
        Ok(AxiomReport::compare(
            AxiomId::FluctuationComposite,
            Default::default(),
            twice.dirac(),
            once.dirac(),
        ))
    }
}
