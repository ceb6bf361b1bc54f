//! Configurable verification runs, report rendering, and witness replay.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::conformal::{
    build_twisted, ko_dimension, parse_factor, parse_fixture, parse_json, read_file, retwist,
    verify_twisted, ConformalFactor, FiniteTriple, Matrix, OneForm, TwistedTriple,
};
use crate::error::{Error, Result};
use crate::graded_triple::{verify_cone, ConeTriple, HVector, SignTriple};
use crate::ncalg::{cone_relation_check, DiscElement};
use crate::report::{sort_reports, AxiomId, AxiomReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Cone,
    Conformal,
    Fluctuation,
    Retwist,
    Ko,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// What to verify. Fields not used by the target must be `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub target: Target,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_cutoff: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<PathBuf>,
    /// Conformal factor file; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<PathBuf>,
    /// Second factor for `retwist`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_factor: Option<PathBuf>,
    /// One-form pairs for `fluctuation`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PathBuf>,
    /// `(ε, ε′, ε″)` for `ko`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<(i64, i64, Option<i64>)>,
    #[serde(skip)]
    pub format: Format,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub jobs: Option<usize>,
    /// Record wall-clock time in the report.
    #[serde(skip)]
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(target: Target) -> Self {
        SuiteConfig {
            target,
            modulus: None,
            cutoff: None,
            algebra_cutoff: None,
            fixture: None,
            factor: None,
            second_factor: None,
            pairs: None,
            signs: None,
            format: Format::Text,
            jobs: None,
            timing: false,
        }
    }

    pub fn cone(modulus: i64, cutoff: u32, algebra_cutoff: u32) -> Self {
        SuiteConfig {
            modulus: Some(modulus),
            cutoff: Some(cutoff),
            algebra_cutoff: Some(algebra_cutoff),
            ..SuiteConfig::new(Target::Cone)
        }
    }

    fn require<T: Clone>(value: &Option<T>, field: &str) -> Result<T> {
        value
            .clone()
            .ok_or_else(|| Error::Config(format!("missing required parameter `{field}`")))
    }

    fn forbid<T>(&self, value: &Option<T>, field: &str) -> Result<()> {
        match value {
            Some(_) => Err(Error::Config(format!(
                "parameter `{field}` does not apply to target `{}`",
                self.target_name()
            ))),
            None => Ok(()),
        }
    }

    fn target_name(&self) -> String {
        serde_json::to_value(self.target)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }

    /// Parameter presence must match the target.
    pub fn validate(&self) -> Result<()> {
        let cone_fields = |c: &Self| -> Result<()> {
            c.forbid(&c.modulus, "modulus")?;
            c.forbid(&c.cutoff, "cutoff")?;
            c.forbid(&c.algebra_cutoff, "algebra_cutoff")
        };
        match self.target {
            Target::Cone => {
                SuiteConfig::require(&self.modulus, "modulus")?;
                self.forbid(&self.fixture, "fixture")?;
                self.forbid(&self.factor, "factor")?;
                self.forbid(&self.second_factor, "second_factor")?;
                self.forbid(&self.pairs, "pairs")?;
                self.forbid(&self.signs, "signs")
            }
            Target::Conformal | Target::Fluctuation | Target::Retwist => {
                cone_fields(self)?;
                SuiteConfig::require(&self.fixture, "fixture")?;
                self.forbid(&self.signs, "signs")?;
                if self.target == Target::Retwist {
                    SuiteConfig::require(&self.second_factor, "second_factor")?;
                } else {
                    self.forbid(&self.second_factor, "second_factor")?;
                }
                if self.target == Target::Fluctuation {
                    SuiteConfig::require(&self.pairs, "pairs")?;
                } else {
                    self.forbid(&self.pairs, "pairs")?;
                }
                Ok(())
            }
            Target::Ko => {
                cone_fields(self)?;
                self.forbid(&self.fixture, "fixture")?;
                self.forbid(&self.factor, "factor")?;
                self.forbid(&self.second_factor, "second_factor")?;
                self.forbid(&self.pairs, "pairs")?;
                SuiteConfig::require(&self.signs, "signs").map(|_| ())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub axioms: usize,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub reports: Vec<AxiomReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ko_dimension: Option<u8>,
    pub summary: Summary,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    fn assemble(
        config: &SuiteConfig,
        mut reports: Vec<AxiomReport>,
        signs: Option<SignTriple>,
        ko: Option<u8>,
    ) -> Self {
        sort_reports(&mut reports);
        let axioms: BTreeSet<AxiomId> = reports.iter().map(|r| r.axiom).collect();
        let failures = reports.iter().filter(|r| !r.passed()).count();
        SuiteReport {
            config: config.clone(),
            summary: Summary {
                axioms: axioms.len(),
                instances: reports.len(),
                failures,
            },
            verdict: if failures == 0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            reports,
            signs,
            ko_dimension: ko,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// 0 on pass, 1 on any failed instance.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// One-form pairs for a fluctuation run. Entries are a generator index,
/// `"id"`, an algebra basis word, or an explicit matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub alpha: Vec<(serde_json::Value, serde_json::Value)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<(serde_json::Value, serde_json::Value)>>,
    /// Add the adjoint pairs so that the one-forms are hermitian.
    #[serde(default = "yes")]
    pub self_adjoint: bool,
}

fn yes() -> bool {
    true
}

/// The triple a finite-target config describes, before fluctuation.
fn twisted_from_config(config: &SuiteConfig) -> Result<TwistedTriple> {
    let base = parse_fixture(SuiteConfig::require(&config.fixture, "fixture")?)?;
    let k = match &config.factor {
        Some(path) => parse_factor(path, &base)?,
        None => ConformalFactor::identity(&base),
    };
    let twisted = build_twisted(&base, &k)?;
    match config.target {
        Target::Retwist => {
            let k2 = parse_factor(
                SuiteConfig::require(&config.second_factor, "second_factor")?,
                &base,
            )?;
            retwist(&twisted, &k2)
        }
        _ => Ok(twisted),
    }
}

struct Fluctuation {
    twisted: TwistedTriple,
    alpha: OneForm,
    beta: Option<Vec<(Matrix, Matrix)>>,
}

fn resolve_pairs(
    base: &FiniteTriple,
    raw: &[(serde_json::Value, serde_json::Value)],
) -> Result<Vec<(Matrix, Matrix)>> {
    raw.iter()
        .map(|(a, b)| Ok((base.resolve_element(a)?, base.resolve_element(b)?)))
        .collect()
}

fn fluctuation_from_config(config: &SuiteConfig) -> Result<Fluctuation> {
    let twisted = twisted_from_config(config)?;
    let path = SuiteConfig::require(&config.pairs, "pairs")?;
    let file: PairsFile = parse_json(&read_file(&path)?, &path.display().to_string())?;
    let alpha_pairs = resolve_pairs(twisted.base(), &file.alpha)?;
    let alpha = if file.self_adjoint {
        twisted.self_adjoint_one_form(alpha_pairs)?
    } else {
        twisted.one_form(alpha_pairs)?
    };
    let beta = match &file.beta {
        Some(raw) => {
            let mut pairs = resolve_pairs(twisted.base(), raw)?;
            if file.self_adjoint {
                let adjoint = twisted.one_form(pairs.clone())?.adjoint_pairs();
                pairs.extend(adjoint);
            }
            Some(pairs)
        }
        None => None,
    };
    Ok(Fluctuation {
        twisted,
        alpha,
        beta,
    })
}

fn fluctuation_reports(f: &Fluctuation) -> Result<(Vec<AxiomReport>, TwistedTriple)> {
    let t = &f.twisted;
    let mut reports = Vec::new();
    for (i, (label, a)) in t.base().algebra().elements().iter().enumerate() {
        reports.push(
            t.check_alpha_prime_central(&f.alpha, label, a)
                .with_index(i),
        );
        reports.push(
            t.fluctuation_closure_check(&f.alpha, label, a)
                .with_index(i),
        );
    }
    reports.push(t.check_fluctuation_tc(&f.alpha));
    let fluctuated = t.fluctuate(&f.alpha)?;
    if let Some(beta) = &f.beta {
        reports.push(t.check_fluctuation_composite(&f.alpha, beta.clone())?);
    }
    reports.extend(verify_twisted(&fluctuated));
    Ok((reports, fluctuated))
}

fn run_inner(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    match config.target {
        Target::Cone => {
            let modulus = SuiteConfig::require(&config.modulus, "modulus")?;
            let cutoff = config.cutoff.unwrap_or(4);
            let run = verify_cone(modulus, cutoff, config.algebra_cutoff.unwrap_or(cutoff))?;
            let mut reports = run.reports;
            reports.extend(cone_relation_check(modulus)?);
            Ok(SuiteReport::assemble(
                config,
                reports,
                Some(run.signs),
                run.signs.ko_dimension(),
            ))
        }
        Target::Conformal | Target::Retwist => {
            let t = twisted_from_config(config)?;
            let signs = t.extract_signs();
            Ok(SuiteReport::assemble(
                config,
                verify_twisted(&t),
                Some(signs),
                signs.ko_dimension(),
            ))
        }
        Target::Fluctuation => {
            let f = fluctuation_from_config(config)?;
            let (reports, fluctuated) = fluctuation_reports(&f)?;
            let signs = fluctuated.extract_signs();
            Ok(SuiteReport::assemble(
                config,
                reports,
                Some(signs),
                signs.ko_dimension(),
            ))
        }
        Target::Ko => {
            let (e, ep, edp) = SuiteConfig::require(&config.signs, "signs")?;
            let ko = ko_dimension(e, ep, edp)?;
            let signs = SignTriple {
                epsilon: Some(e),
                epsilon_prime: Some(ep),
                epsilon_double_prime: edp,
            };
            Ok(SuiteReport::assemble(
                config,
                Vec::new(),
                Some(signs),
                Some(ko),
            ))
        }
    }
}

/// Runs a suite. Errors are input or configuration problems; axiom
/// failures are verdicts inside the report.
pub fn run(config: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start {jobs} workers: {e}")))?
            .install(|| run_inner(config))?,
        None => run_inner(config)?,
    };
    if config.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn sign_str(s: Option<i64>) -> String {
    match s {
        Some(1) => "+1".into(),
        Some(-1) => "-1".into(),
        Some(other) => other.to_string(),
        None => "undetermined".into(),
    }
}

/// Renders a report. Text lists failures first with witnesses, then the
/// signs and a summary line; JSON is the serialized report.
pub fn emit_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for r in report.reports.iter().filter(|r| !r.passed()) {
                let _ = writeln!(out, "FAIL {} #{}", r.axiom.name(), r.index);
                for (k, v) in &r.inputs {
                    let _ = writeln!(out, "  {k} = {v}");
                }
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "  lhs: {}", w.lhs);
                    let _ = writeln!(out, "  rhs: {}", w.rhs);
                }
            }
            if let Some(s) = &report.signs {
                let _ = write!(
                    out,
                    "signs: epsilon = {}, epsilon' = {}, epsilon'' = {}",
                    sign_str(s.epsilon),
                    sign_str(s.epsilon_prime),
                    s.epsilon_double_prime
                        .map_or("absent".into(), |x| sign_str(Some(x)))
                );
                match report.ko_dimension {
                    Some(ko) => {
                        let _ = writeln!(out, "; KO-dimension {ko}");
                    }
                    None => out.push('\n'),
                }
            }
            if let Some(ms) = report.elapsed_ms {
                let _ = writeln!(out, "time: {ms} ms");
            }
            let s = &report.summary;
            if report.passed() {
                let _ = writeln!(out, "PASS ({} axioms, {} instances)", s.axioms, s.instances);
            } else {
                let _ = writeln!(
                    out,
                    "FAIL ({} of {} instances failed, {} axioms)",
                    s.failures, s.instances, s.axioms
                );
            }
            out
        }
    }
}

/// Recomputes the instance behind `report` through the module operation
/// that produced it. A replayed failure carries the same witness.
pub fn replay(config: &SuiteConfig, report: &AxiomReport) -> Result<AxiomReport> {
    let input = |k: &str| report.inputs.get(k).map(String::as_str);
    let again = match config.target {
        Target::Cone => {
            let modulus = SuiteConfig::require(&config.modulus, "modulus")?;
            match report.axiom {
                AxiomId::ConeXy
                | AxiomId::ConeYyStar
                | AxiomId::ConeYStarY
                | AxiomId::ConeXSelfAdjoint => cone_relation_check(modulus)?
                    .into_iter()
                    .find(|r| r.axiom == report.axiom)
                    .ok_or_else(|| {
                        Error::Config(format!("no instance of {}", report.axiom.name()))
                    })?,
                axiom => {
                    let triple = ConeTriple::new(modulus)?;
                    let el = |k: &str| -> Result<DiscElement> {
                        Ok(input(k)
                            .map(str::parse)
                            .transpose()?
                            .unwrap_or_else(DiscElement::zero))
                    };
                    let h = match input("h") {
                        Some(h) => HVector::parse(h, triple.modulus())?,
                        None => HVector::zero(triple.modulus()),
                    };
                    triple.check_axiom(axiom, &el("a")?, &el("b")?, &h)?
                }
            }
        }
        Target::Conformal | Target::Retwist => {
            twisted_from_config(config)?.check(report.axiom, input("a"), input("b"))?
        }
        Target::Fluctuation => {
            let f = fluctuation_from_config(config)?;
            let t = &f.twisted;
            let element = |k: &str| -> Result<(String, Matrix)> {
                let label =
                    input(k).ok_or_else(|| Error::Config(format!("missing input `{k}`")))?;
                let m = t
                    .base()
                    .algebra()
                    .lookup(label)
                    .ok_or_else(|| Error::NotInAlgebra(label.to_string()))?;
                Ok((label.to_string(), m.clone()))
            };
            match report.axiom {
                AxiomId::AlphaPrimeCentral => {
                    let (l, a) = element("a")?;
                    t.check_alpha_prime_central(&f.alpha, &l, &a)
                }
                AxiomId::FluctuationClosure => {
                    let (l, a) = element("a")?;
                    t.fluctuation_closure_check(&f.alpha, &l, &a)
                }
                AxiomId::FluctuationTc => t.check_fluctuation_tc(&f.alpha),
                AxiomId::FluctuationComposite => {
                    let beta = f
                        .beta
                        .clone()
                        .ok_or_else(|| Error::Config("pairs file has no beta".into()))?;
                    t.check_fluctuation_composite(&f.alpha, beta)?
                }
                axiom => t
                    .fluctuate(&f.alpha)?
                    .check(axiom, input("a"), input("b"))?,
            }
        }
        Target::Ko => return Err(Error::Config("ko runs have no instances".into())),
    };
    Ok(again.with_index(report.index))
}
