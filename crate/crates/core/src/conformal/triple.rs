use std::path::Path;

use serde::{Deserialize, Serialize};

use super::matrix::{Matrix, Span};
use crate::error::{Error, ParseError, Result};
use crate::graded_triple::SignTriple;
use crate::report::{Evidence, ExactValue};
use crate::scalar::GaussRational;

impl Evidence for Matrix {
    fn render(&self) -> String {
        self.to_string()
    }
    fn exact(&self) -> Option<ExactValue> {
        Some(ExactValue::Matrix { rows: self.rows() })
    }
}

/// The antilinear map `h ↦ K·conj(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiLinearOp {
    k: Matrix,
    k_inv: Matrix,
}

impl AntiLinearOp {
    pub fn new(k: Matrix) -> Result<Self> {
        let k_inv = k
            .inverse()
            .ok_or_else(|| Error::BadJSquare("J_matrix is singular".into()))?;
        Ok(AntiLinearOp { k, k_inv })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.k
    }

    pub fn apply(&self, h: &[GaussRational]) -> Vec<GaussRational> {
        let conj: Vec<_> = h.iter().map(GaussRational::conj).collect();
        self.k.apply(&conj)
    }

    /// Matrix of the linear map `J²`.
    pub fn square(&self) -> Matrix {
        &self.k * &self.k.conj()
    }

    pub fn inverse(&self) -> AntiLinearOp {
        AntiLinearOp {
            k: self.k_inv.conj(),
            k_inv: self.k.conj(),
        }
    }

    /// `J M J⁻¹` as a linear map.
    pub fn jmj(&self, m: &Matrix) -> Matrix {
        &(&self.k * &m.conj()) * &self.k_inv
    }

    /// Matrix `L·K` of the antilinear composite `L∘J`.
    pub fn after(&self, l: &Matrix) -> Matrix {
        l * &self.k
    }

    /// Matrix `K·conj(R)` of the antilinear composite `J∘R`.
    pub fn before(&self, r: &Matrix) -> Matrix {
        &self.k * &r.conj()
    }
}

/// A basis of the unital algebra generated by the represented generators,
/// each element labelled by the word that produced it.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    elements: Vec<(String, Matrix)>,
    span: Span,
}

impl AlgebraBasis {
    pub fn generate(n: usize, generators: &[Matrix]) -> Self {
        let mut span = Span::new();
        let one = Matrix::identity(n);
        span.insert(&one);
        let mut elements = vec![("1".to_string(), one)];
        let mut next = 0;
        while next < elements.len() {
            let (label, e) = elements[next].clone();
            for (gi, g) in generators.iter().enumerate() {
                let p = &e * g;
                if span.insert(&p) {
                    let word = if label == "1" {
                        format!("g{gi}")
                    } else {
                        format!("{label}*g{gi}")
                    };
                    elements.push((word, p));
                }
            }
            next += 1;
        }
        AlgebraBasis { elements, span }
    }

    pub fn elements(&self) -> &[(String, Matrix)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.dim() == self.elements[0].1.dim() && self.span.contains(m)
    }

    pub fn lookup(&self, label: &str) -> Option<&Matrix> {
        self.elements
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, m)| m)
    }
}

/// JSON form of a finite triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub n: usize,
    pub generators: Vec<Matrix>,
    #[serde(rename = "D")]
    pub dirac: Matrix,
    #[serde(rename = "J_matrix")]
    pub j_matrix: Matrix,
    pub epsilon: i64,
    pub epsilon_prime: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_double_prime: Option<i64>,
}

/// JSON form of a conformal factor: `k` as an `n×n` matrix in `π(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub k: Matrix,
}

fn check_sign(s: i64) -> Result<i64> {
    if s == 1 || s == -1 {
        Ok(s)
    } else {
        Err(Error::InvalidSign(s))
    }
}

/// A validated real spectral triple on `Cⁿ`.
#[derive(Clone, Debug)]
pub struct FiniteTriple {
    n: usize,
    generators: Vec<Matrix>,
    dirac: Matrix,
    j: AntiLinearOp,
    gamma: Option<Matrix>,
    epsilon: i64,
    epsilon_prime: i64,
    epsilon_double_prime: Option<i64>,
    algebra: AlgebraBasis,
}

impl FiniteTriple {
    /// Validates dimensions, hermiticity of `D`, `J² = ε`, the grading, and
    /// the untwisted order-zero and order-one conditions on an algebra basis.
    pub fn new(fixture: Fixture) -> Result<Self> {
        let Fixture {
            n,
            generators,
            dirac,
            j_matrix,
            epsilon,
            epsilon_prime,
            gamma,
            epsilon_double_prime,
            ..
        } = fixture;
        for (i, g) in generators.iter().enumerate() {
            g.check_dim(&format!("generators[{i}]"), n)?;
        }
        dirac.check_dim("D", n)?;
        j_matrix.check_dim("J_matrix", n)?;
        if let Some(g) = &gamma {
            g.check_dim("gamma", n)?;
        }
        let epsilon = check_sign(epsilon)?;
        let epsilon_prime = check_sign(epsilon_prime)?;
        let epsilon_double_prime = epsilon_double_prime.map(check_sign).transpose()?;
        if !dirac.is_hermitian() {
            return Err(Error::NonHermitianD);
        }
        let j = AntiLinearOp::new(j_matrix)?;
        if j.square() != Matrix::identity(n).scale(&GaussRational::from_int(epsilon)) {
            return Err(Error::BadJSquare(format!("K·conj(K) is not {epsilon}·id")));
        }
        match (&gamma, epsilon_double_prime) {
            (Some(_), None) => {
                return Err(Error::GammaFails(
                    "gamma given without epsilon_double_prime".into(),
                ))
            }
            (None, Some(_)) => {
                return Err(Error::GammaFails(
                    "epsilon_double_prime given without gamma".into(),
                ))
            }
            _ => {}
        }
        if let Some(g) = &gamma {
            if !(g * g).is_identity() {
                return Err(Error::GammaFails("gamma² ≠ id".into()));
            }
            if !g.anticommutator(&dirac).is_zero() {
                return Err(Error::GammaFails(
                    "gamma does not anticommute with D".into(),
                ));
            }
            if let Some(i) = generators.iter().position(|a| !g.commutator(a).is_zero()) {
                return Err(Error::GammaFails(format!(
                    "gamma does not commute with generators[{i}]"
                )));
            }
        }
        let algebra = AlgebraBasis::generate(n, &generators);
        let triple = FiniteTriple {
            n,
            generators,
            dirac,
            j,
            gamma,
            epsilon,
            epsilon_prime,
            epsilon_double_prime,
            algebra,
        };
        if let Some((a, b)) = triple.order_zero_violation() {
            return Err(Error::OrderZeroViolated(format!(
                "[π({a}), Jπ({b})J⁻¹] ≠ 0"
            )));
        }
        if let Some((a, b)) = triple.order_one_violation() {
            return Err(Error::OrderOneViolated(format!(
                "[D,π({a})]·Jπ({b})J⁻¹ ≠ Jπ({b})J⁻¹·[D,π({a})]"
            )));
        }
        Ok(triple)
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let fixture: Fixture = parse_json(text, origin)?;
        FiniteTriple::new(fixture)
    }

    pub fn to_fixture(&self) -> Fixture {
        Fixture {
            description: None,
            n: self.n,
            generators: self.generators.clone(),
            dirac: self.dirac.clone(),
            j_matrix: self.j.matrix().clone(),
            epsilon: self.epsilon,
            epsilon_prime: self.epsilon_prime,
            gamma: self.gamma.clone(),
            epsilon_double_prime: self.epsilon_double_prime,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn dirac(&self) -> &Matrix {
        &self.dirac
    }

    pub fn j(&self) -> &AntiLinearOp {
        &self.j
    }

    pub fn gamma(&self) -> Option<&Matrix> {
        self.gamma.as_ref()
    }

    pub fn algebra(&self) -> &AlgebraBasis {
        &self.algebra
    }

    /// The signs stated by the fixture.
    pub fn signs(&self) -> SignTriple {
        SignTriple {
            epsilon: Some(self.epsilon),
            epsilon_prime: Some(self.epsilon_prime),
            epsilon_double_prime: self.epsilon_double_prime,
        }
    }

    fn basis_pairs(&self) -> impl Iterator<Item = (&(String, Matrix), &(String, Matrix))> {
        let els = self.algebra.elements();
        els.iter()
            .flat_map(move |a| els.iter().map(move |b| (a, b)))
    }

    fn order_zero_violation(&self) -> Option<(String, String)> {
        self.basis_pairs()
            .find(|((_, a), (_, b))| !a.commutator(&self.j.jmj(b)).is_zero())
            .map(|((la, _), (lb, _))| (la.clone(), lb.clone()))
    }

    fn order_one_violation(&self) -> Option<(String, String)> {
        self.basis_pairs()
            .find(|((_, a), (_, b))| {
                !self
                    .dirac
                    .commutator(a)
                    .commutator(&self.j.jmj(b))
                    .is_zero()
            })
            .map(|((la, _), (lb, _))| (la.clone(), lb.clone()))
    }

    /// Resolves a JSON pair entry: a generator index, `"id"`, a basis word
    /// such as `"g0*g1"`, or an explicit matrix in the algebra span.
    pub fn resolve_element(&self, value: &serde_json::Value) -> Result<Matrix> {
        let bad = |msg: String| Error::Parse(ParseError::new(&value.to_string(), 0, msg));
        match value {
            serde_json::Value::Number(k) => {
                let idx = k
                    .as_u64()
                    .ok_or_else(|| bad("generator index must be a non-negative integer".into()))?;
                self.generators
                    .get(idx as usize)
                    .cloned()
                    .ok_or_else(|| bad(format!("no generator {idx}")))
            }
            serde_json::Value::String(s) if s == "id" => Ok(Matrix::identity(self.n)),
            serde_json::Value::String(s) => self
                .algebra
                .lookup(s)
                .cloned()
                .ok_or_else(|| bad(format!("unknown algebra element `{s}`"))),
            _ => {
                let m: Matrix =
                    serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
                m.check_dim("pair element", self.n)?;
                if !self.algebra.contains(&m) {
                    return Err(Error::NotInAlgebra(m.to_string()));
                }
                Ok(m)
            }
        }
    }
}

/// A positive invertible element `k` of `π(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalFactor {
    k: Matrix,
    k_inv: Matrix,
}

impl ConformalFactor {
    /// Checks dimension, span membership, and exact positivity (Sylvester).
    pub fn new(k: Matrix, triple: &FiniteTriple) -> Result<Self> {
        k.check_dim("k", triple.dim())?;
        if !k.is_hermitian() {
            return Err(Error::BadFactor("k is not hermitian".into()));
        }
        if !k.is_positive_definite() {
            return Err(Error::BadFactor("k is not positive definite".into()));
        }
        if !triple.algebra().contains(&k) {
            return Err(Error::BadFactor(
                "k is not in the represented algebra".into(),
            ));
        }
        let k_inv = k.inverse().expect("positive definite");
        Ok(ConformalFactor { k, k_inv })
    }

    pub fn from_json(text: &str, origin: &str, triple: &FiniteTriple) -> Result<Self> {
        let file: FactorFile = parse_json(text, origin)?;
        ConformalFactor::new(file.k, triple)
    }

    pub fn identity(triple: &FiniteTriple) -> Self {
        let n = triple.dim();
        ConformalFactor {
            k: Matrix::identity(n),
            k_inv: Matrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.k
    }

    pub fn inverse(&self) -> &Matrix {
        &self.k_inv
    }
}

/// `k′ = JkJ⁻¹`.
pub fn k_prime(k: &ConformalFactor, j: &AntiLinearOp) -> Matrix {
    j.jmj(k.matrix())
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let offset = line_col_offset(text, e.line(), e.column());
        Error::Parse(ParseError::new(
            origin,
            offset,
            format!("line {}, column {}: {e}", e.line(), e.column()),
        ))
    })
}

fn line_col_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads and validates a fixture file.
pub fn parse_fixture(path: impl AsRef<Path>) -> Result<FiniteTriple> {
    let path = path.as_ref();
    FiniteTriple::from_json(&read_file(path)?, &path.display().to_string())
}

/// Loads a conformal factor file and validates it against `triple`.
pub fn parse_factor(path: impl AsRef<Path>, triple: &FiniteTriple) -> Result<ConformalFactor> {
    let path = path.as_ref();
    ConformalFactor::from_json(&read_file(path)?, &path.display().to_string(), triple)
}

/// KO-dimension mod 8 from the sign table; `ε″` is given exactly in the
/// even case.
pub fn ko_dimension(
    epsilon: i64,
    epsilon_prime: i64,
    epsilon_double_prime: Option<i64>,
) -> Result<u8> {
    let signs = (
        check_sign(epsilon)?,
        check_sign(epsilon_prime)?,
        epsilon_double_prime.map(check_sign).transpose()?,
    );
    let ko = match signs {
        (1, 1, Some(1)) => 0,
        (-1, 1, Some(-1)) => 2,
        (-1, 1, Some(1)) => 4,
        (1, 1, Some(-1)) => 6,
        (1, -1, None) => 1,
        (-1, 1, None) => 3,
        (-1, -1, None) => 5,
        (1, 1, None) => 7,
        _ => {
            let dp = epsilon_double_prime.map_or("absent".to_string(), |s| format!("{s:+}"));
            return Err(Error::NotInTable(format!(
                "({epsilon:+}, {epsilon_prime:+}, {dp})"
            )));
        }
    };
    Ok(ko)
}

impl SignTriple {
    /// Table lookup when the signs were determined.
    pub fn ko_dimension(&self) -> Option<u8> {
        ko_dimension(
            self.epsilon?,
            self.epsilon_prime?,
            self.epsilon_double_prime,
        )
        .ok()
    }
}
