//! Axiom verdicts and their witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ncalg::DiscElement;
use crate::scalar::{GaussRational, QLaurent};

/// Identifies the identity an [`AxiomReport`] checks. Declaration order is
/// the report sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AxiomId {
    /// `[π(a), Jπ(b)J⁻¹] = 0`
    O0,
    /// `[D,π(a)] J ν̄²(π(b)) J⁻¹ = J π(b) J⁻¹ [D,π(a)]`
    To1,
    /// `[D,π(a)] J π(ν̂(b)) J⁻¹ = J π(ν̂⁻¹(b)) J⁻¹ [D,π(a)]`
    To1r,
    /// `DJν = ε′ νJD`
    Tc,
    /// `νJν = J`
    Reg,
    GammaSq,
    GammaComm,
    GammaD,
    GammaNu2,
    /// `γJ = ε″ Jγ`
    GammaJ,
    /// `[D,π(a)]` is right-linear from `H^{J,ν²}` to `H^{J,id}`.
    Right,
    /// `ν π(a) ν⁻¹` lies in `π(A)`.
    Image,
    /// `J² = ε`
    JSquare,
    /// TO1 and TO1R give the same verdict on an instance.
    To1Equiv,
    /// `ν π(a) ν⁻¹ = π(ν̂(a))`
    NuHat,
    /// Direct `[D,π(a)]h` against its closed form.
    CommutatorOracle,
    /// Direct `Jπ(b)J⁻¹h` against its closed form.
    JbjOracle,
    ConeXy,
    ConeYyStar,
    ConeYStarY,
    ConeXSelfAdjoint,
    /// `[α′, π(a)] = 0`
    AlphaPrimeCentral,
    /// `(α + ε′α′)Jν = ε′νJ(α + ε′α′)`
    FluctuationTc,
    /// `[D_α, π(a)] = [D, π(a)] + [α, π(a)]` with `[α, π(a)]` rebuilt as a one-form.
    FluctuationClosure,
    /// A double fluctuation equals one fluctuation by the composite one-form.
    FluctuationComposite,
    /// Hermiticity of the (new) Dirac operator.
    DiracHermitian,
}

impl AxiomId {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One term `coeff · z^a z*^b` of an exact witness value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactTerm {
    pub a: u32,
    pub b: u32,
    pub coeff: QLaurent,
}

/// Structured exact encoding of a witness side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactValue {
    Element {
        terms: Vec<ExactTerm>,
    },
    HVector {
        plus: Vec<ExactTerm>,
        minus: Vec<ExactTerm>,
    },
    Matrix {
        rows: Vec<Vec<GaussRational>>,
    },
}

pub(crate) fn exact_terms(p: &DiscElement) -> Vec<ExactTerm> {
    p.terms()
        .map(|(m, c)| ExactTerm {
            a: m.a,
            b: m.b,
            coeff: c.clone(),
        })
        .collect()
}

/// Both sides of a failed identity, in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs_exact: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_exact: Option<ExactValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    /// Position of the instance in enumeration order.
    pub index: usize,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A value that can appear on one side of a checked identity.
pub trait Evidence: PartialEq {
    fn render(&self) -> String;
    fn exact(&self) -> Option<ExactValue> {
        None
    }
}

impl Evidence for DiscElement {
    fn render(&self) -> String {
        self.to_string()
    }
    fn exact(&self) -> Option<ExactValue> {
        Some(ExactValue::Element {
            terms: exact_terms(self),
        })
    }
}

impl Evidence for bool {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl AxiomReport {
    pub fn pass(axiom: AxiomId, inputs: BTreeMap<String, String>) -> Self {
        AxiomReport {
            axiom,
            index: 0,
            inputs,
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn fail(axiom: AxiomId, inputs: BTreeMap<String, String>, witness: Witness) -> Self {
        AxiomReport {
            axiom,
            index: 0,
            inputs,
            verdict: Verdict::Fail,
            witness: Some(witness),
        }
    }

    /// Pass iff `lhs == rhs`; a failure carries both sides.
    pub fn compare<T: Evidence + ?Sized>(
        axiom: AxiomId,
        inputs: BTreeMap<String, String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        if lhs == rhs {
            AxiomReport::pass(axiom, inputs)
        } else {
            AxiomReport::fail(
                axiom,
                inputs,
                Witness {
                    lhs: lhs.render(),
                    rhs: rhs.render(),
                    lhs_exact: lhs.exact(),
                    rhs_exact: rhs.exact(),
                },
            )
        }
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Builds an input map from `(name, value)` pairs.
pub fn inputs<const K: usize>(pairs: [(&str, String); K]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Stable report order: axiom, then enumeration index.
pub fn sort_reports(reports: &mut [AxiomReport]) {
    reports.sort_by_key(|r| (r.axiom, r.index));
}
