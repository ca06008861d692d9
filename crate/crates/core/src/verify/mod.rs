//! Independent oracles and identity checks.
//!
//! Every check returns a [`VerificationReport`]. A report passes iff all of
//! its witnesses hold, so a failing report always names at least one
//! concrete point or coefficient where the identity breaks.

mod cover;
mod lemma;
mod nonvanishing;
mod z6;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::groups::{Element, Group, Irrep};
use crate::reprings::TracePoint;

pub use cover::{
    check_cover_identity, check_trace_constraint, check_zp_degree, euler_classes, predicted_j_trace,
    solve_zp_oracle,
};
pub use lemma::{audit_regular_wedge_trace, check_product_lemma, newton_product, regular_wedge_trace};
pub use nonvanishing::check_coeff_nonvanishing;
pub use z6::{check_z6_betas, check_z6_consistency};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Trace point, coefficient or sub-claim being compared.
    pub at: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_us: u64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.ok)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} {} [{}] ({} µs)",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            params.join(", "),
            self.elapsed_us
        )?;
        for w in &self.witnesses {
            let mark = if w.ok { "ok " } else { "BAD" };
            write!(f, "\n  {mark} {}: expected {}, got {}", w.at, w.expected, w.actual)?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

/// Accumulates witnesses and times the check.
pub struct ReportBuilder {
    identity: String,
    params: BTreeMap<String, String>,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(identity: impl Into<String>) -> Self {
        ReportBuilder {
            identity: identity.into(),
            params: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn compare(&mut self, at: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, ok: bool) {
        let flat = |s: String| s.replace('\n', " ");
        self.witnesses.push(Witness {
            at: at.into(),
            expected: flat(expected.to_string()),
            actual: flat(actual.to_string()),
            ok,
        });
    }

    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, at: impl Into<String>, expected: &T, actual: &T) -> bool {
        let ok = expected == actual;
        self.compare(at, expected, actual, ok);
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(self) -> VerificationReport {
        let pass = self.witnesses.iter().all(|w| w.ok);
        VerificationReport {
            identity: self.identity,
            pass,
            witnesses: self.witnesses,
            params: self.params,
            notes: self.notes,
            elapsed_us: self.start.elapsed().as_micros() as u64,
        }
    }
}

/// The multiplicities `N_λ`, `M_λ` of a finite-dimensional approximation,
/// used only for nontrivial `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationParams {
    pub default_n: u64,
    pub default_m: u64,
    pub n: BTreeMap<Irrep, u64>,
    pub m: BTreeMap<Irrep, u64>,
}

impl Default for ApproximationParams {
    fn default() -> Self {
        Self::uniform(1, 1)
    }
}

impl ApproximationParams {
    pub fn uniform(n: u64, m: u64) -> Self {
        ApproximationParams {
            default_n: n,
            default_m: m,
            n: BTreeMap::new(),
            m: BTreeMap::new(),
        }
    }

    pub fn n_of(&self, l: Irrep) -> u64 {
        self.n.get(&l).copied().unwrap_or(self.default_n)
    }

    pub fn m_of(&self, l: Irrep) -> u64 {
        self.m.get(&l).copied().unwrap_or(self.default_m)
    }
}

impl fmt::Display for ApproximationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={},M={}", self.default_n, self.default_m)?;
        for (l, v) in &self.n {
            write!(f, ",N[{}]={v}", l.0)?;
        }
        for (l, v) in &self.m {
            write!(f, ",M[{}]={v}", l.0)?;
        }
        Ok(())
    }
}

pub(crate) fn element_label(group: &Group, g: Element) -> String {
    if g == group.identity() {
        "e".to_string()
    } else {
        group.class_label(g)
    }
}

pub(crate) fn point_label(group: &Group, g: Element, at: TracePoint) -> String {
    format!("({}, {at})", element_label(group, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_round_trip() {
        let mut b = ReportBuilder::new("demo").param("p", 3);
        b.compare("(e, J)", 32, 26, false);
        b.note("a note");
        let r = b.finish();
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"pass\":false"));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
