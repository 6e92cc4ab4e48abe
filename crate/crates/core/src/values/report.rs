use super::advantage::{no_advantage_iff, no_advantage_sufficient, NoAdvantageCertificate, SignVectors};
use super::bounds::{linear_norm_bound, linear_norm_bound_best, BestNormBound};
use super::classical::{classical_value_with_budget, ClassicalResult, DeterministicStrategy, DEFAULT_CLASSICAL_BUDGET};
use super::ns::{ns_value_with_budget, NsResult};
use super::triviality::triviality_check;
use super::xor::{xor_quantum_bias, XorBiasResult, XorSdpOptions};
use crate::error::{Error, Result};
use crate::games::{xor_matrix, LinearGame, Partition};
use crate::numerics::DEFAULT_LP_BUDGET;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: &str = "1.0.0";

/// Slack allowed between values that must be ordered.
pub const SANDWICH_TOL: f64 = 1e-7;

pub fn report_schema_version() -> &'static str {
    REPORT_SCHEMA_VERSION
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Internal(format!("non-finite number {x} in report")));
    }
    let r: f64 = format!("{x:.11e}")
        .parse()
        .map_err(|e| Error::Internal(format!("rounding {x}: {e}")))?;
    // No negative zeros in reports.
    Ok(r + 0.0)
}

/// Converts a result to report JSON: floats rounded to 12 significant
/// digits, field order preserved. Report types omit absent optionals, so a
/// null can only come from a NaN or infinity and is rejected.
pub fn to_report_json<T: Serialize>(t: &T) -> Result<Value> {
    let v = serde_json::to_value(t).map_err(|e| Error::Internal(format!("serializing report: {e}")))?;
    round_value(v, "")
}

fn round_value(v: Value, path: &str) -> Result<Value> {
    Ok(match v {
        Value::Null => {
            return Err(Error::Internal(format!("non-finite number at {path}")));
        }
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN))?;
            serde_json::Number::from_f64(x)
                .map(Value::Number)
                .ok_or_else(|| Error::Internal(format!("non-finite number at {path}")))?
        }
        Value::Array(a) => Value::Array(
            a.into_iter()
                .enumerate()
                .map(|(i, x)| round_value(x, &format!("{path}[{i}]")))
                .collect::<Result<_>>()?,
        ),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, x)| {
                    let p = format!("{path}.{k}");
                    Ok((k, round_value(x, &p)?))
                })
                .collect::<Result<_>>()?,
        ),
        other => other,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render_report(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Player lists are 0-based internally and 1-based in reports.
pub(crate) fn one_based<S: Serializer>(players: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(players.iter().map(|p| p + 1))
}

pub(crate) fn one_based_index<S: Serializer>(player: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*player as u64 + 1)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValueAnalyses {
    pub classical: bool,
    pub ns: bool,
    pub quantum_xor: bool,
    pub bound: bool,
    pub no_advantage: bool,
    pub triviality: bool,
}

#[derive(Debug, Clone)]
pub struct ValueOptions {
    pub xor: XorSdpOptions,
    pub classical_budget: f64,
    pub lp_budget: usize,
    /// Tolerance for the no-advantage spectral radius test.
    pub tol: f64,
    /// Restrict the norm bound to one cut instead of minimizing over all.
    pub partition: Option<Partition>,
}

impl Default for ValueOptions {
    fn default() -> Self {
        Self {
            xor: XorSdpOptions::default(),
            classical_budget: DEFAULT_CLASSICAL_BUDGET,
            lp_budget: DEFAULT_LP_BUDGET,
            tol: 1e-8,
            partition: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NoAdvantageSection {
    pub iff: NoAdvantageCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sufficient: Option<SignVectors>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialSection {
    pub trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<DeterministicStrategy>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportFlags {
    /// Every computed pair of values is correctly ordered within [`SANDWICH_TOL`].
    pub sandwich_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_exceeds_one: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub no_quantum_advantage: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum_converged: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ns: Option<NsResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum_xor: Option<XorBiasResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_bound: Option<BestNormBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub no_advantage: Option<NoAdvantageSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triviality: Option<TrivialSection>,
    pub flags: ReportFlags,
}

/// Runs the requested analyses on one game.
pub fn analyze_values(g: &LinearGame, which: &ValueAnalyses, opts: &ValueOptions) -> Result<ValueReport> {
    let needs_xor = which.quantum_xor || which.no_advantage;
    if needs_xor && !g.is_xor() {
        return Err(Error::arg("quantum-xor and no-advantage need a two-player XOR game"));
    }
    let classical = if which.classical || which.no_advantage {
        Some(classical_value_with_budget(g, opts.classical_budget)?)
    } else {
        None
    };
    let ns = which.ns.then(|| ns_value_with_budget(g, opts.lp_budget)).transpose()?;
    let phi = needs_xor.then(|| xor_matrix(g)).transpose()?;
    let quantum_xor = match (&phi, which.quantum_xor) {
        (Some(phi), true) => Some(xor_quantum_bias(phi, &opts.xor)?),
        _ => None,
    };
    let norm_bound = if which.bound {
        Some(match &opts.partition {
            Some(s) => {
                let nb = linear_norm_bound(g, s)?;
                BestNormBound {
                    bound: nb.bound,
                    partition: nb.partition.clone(),
                    all: vec![nb],
                }
            }
            None => linear_norm_bound_best(g)?,
        })
    } else {
        None
    };
    let no_advantage = match (&phi, &classical, which.no_advantage) {
        (Some(phi), Some(c), true) => Some(NoAdvantageSection {
            iff: no_advantage_iff(phi, &c.strategy, opts.tol)?,
            sufficient: no_advantage_sufficient(phi)?,
        }),
        _ => None,
    };
    let triviality = which
        .triviality
        .then(|| triviality_check(g))
        .transpose()?
        .map(|s| TrivialSection {
            trivial: s.is_some(),
            strategy: s,
        });
    let flags = ReportFlags {
        sandwich_ok: sandwich_ok(
            classical.as_ref().filter(|_| which.classical).map(|c| c.value),
            quantum_xor.as_ref().map(|q| q.value),
            norm_bound.as_ref().map(|b| b.bound),
            ns.as_ref().map(|n| n.value),
        ),
        bound_exceeds_one: norm_bound.as_ref().map(|b| b.bound > 1.0),
        no_quantum_advantage: no_advantage.as_ref().map(|n| n.iff.verdict),
        quantum_converged: quantum_xor.as_ref().map(|q| q.converged),
    };
    Ok(ValueReport {
        classical: classical.filter(|_| which.classical),
        ns,
        quantum_xor,
        norm_bound,
        no_advantage,
        triviality,
        flags,
    })
}

/// `classical <= quantum <= bound`, `classical <= ns <= 1`, skipping absent values.
pub fn sandwich_ok(classical: Option<f64>, quantum: Option<f64>, bound: Option<f64>, ns: Option<f64>) -> bool {
    let le = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(a), Some(b)) => a <= b + SANDWICH_TOL,
        _ => true,
    };
    le(classical, quantum)
        && le(quantum, bound)
        && le(classical, bound)
        && le(classical, ns)
        && le(ns, Some(1.0 + 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.853_553_390_593_273_7).unwrap(), 0.853_553_390_593);
        assert_eq!(round_sig(1.0).unwrap(), 1.0);
        assert!(round_sig(f64::NAN).is_err());
        assert!(round_sig(f64::INFINITY).is_err());
    }

    #[test]
    fn null_is_rejected() {
        #[derive(Serialize)]
        struct Bad {
            x: f64,
        }
        assert!(to_report_json(&Bad { x: f64::NAN }).is_err());
        let ok = to_report_json(&Bad { x: 2.0 / 3.0 }).unwrap();
        assert_eq!(ok.to_string(), r#"{"x":0.666666666667}"#);
    }

    #[test]
    fn chsh_report() {
        let g = build_chsh_d(2).unwrap();
        let which = ValueAnalyses {
            classical: true,
            ns: true,
            quantum_xor: true,
            bound: true,
            no_advantage: true,
            triviality: true,
        };
        let r = analyze_values(&g, &which, &ValueOptions::default()).unwrap();
        assert_eq!(r.classical.as_ref().unwrap().value, 0.75);
        assert!(r.flags.sandwich_ok);
        assert_eq!(r.flags.no_quantum_advantage, Some(false));
        let v = to_report_json(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["classical", "ns", "quantum_xor", "norm_bound", "no_advantage", "triviality", "flags"]);
        assert_eq!(v["norm_bound"]["partition"], serde_json::json!([1]));
        assert_eq!(v["quantum_xor"]["value"].as_f64().unwrap(), 0.853_553_390_593);
    }

    #[test]
    fn xor_only_analyses() {
        let g = build_chsh_d(3).unwrap();
        let which = ValueAnalyses { quantum_xor: true, ..Default::default() };
        assert!(matches!(analyze_values(&g, &which, &ValueOptions::default()), Err(Error::Argument(_))));
    }

    #[test]
    fn sandwich() {
        assert!(sandwich_ok(Some(0.75), Some(0.85), Some(0.86), Some(1.0)));
        assert!(!sandwich_ok(Some(0.9), Some(0.85), None, None));
        assert!(!sandwich_ok(None, None, None, Some(1.1)));
    }
}
