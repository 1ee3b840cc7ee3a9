//! JSON equation documents.

use std::fmt;
use std::path::Path;

use genroots::engine::{Equation, Term, TermFunction};
use genroots::Complex64;
use serde::{Deserialize, Serialize};

use crate::json::Pair;

#[derive(Debug)]
pub struct DocumentError(pub String);

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DocumentError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Power,
    Exp,
    Log,
    Sin,
    Cos,
    SelfPower,
    ExpScaled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub coef: Pair,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Pair>,
}

/// `sum coef_i p_i(z) + constant`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDocument {
    pub terms: Vec<TermDocument>,
    pub constant: Pair,
}

impl TermDocument {
    fn function(&self, at: &str) -> Result<TermFunction, DocumentError> {
        let need = |field: &str, v: Option<Pair>, wanted: bool| match (v, wanted) {
            (Some(_), false) => Err(DocumentError(format!("{at}.{field}: not allowed for kind {:?}", self.kind))),
            (None, true) => Err(DocumentError(format!("{at}.{field}: required for kind {:?}", self.kind))),
            _ => Ok(v.map(Complex64::from)),
        };
        let r = need("r", self.r, self.kind == Kind::Power)?;
        let tau = need("tau", self.tau, self.kind == Kind::ExpScaled)?;
        Ok(match self.kind {
            Kind::Power => TermFunction::Power(r.unwrap()),
            Kind::Exp => TermFunction::Exp,
            Kind::Log => TermFunction::Log,
            Kind::Sin => TermFunction::Sin,
            Kind::Cos => TermFunction::Cos,
            Kind::SelfPower => TermFunction::SelfPower,
            Kind::ExpScaled => TermFunction::ExpScaled(tau.unwrap()),
        })
    }
}

impl EquationDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError(format!("equation document: {e}")))
    }

    /// Inline JSON when `source` starts with `{`, standard input for `-`, else a path.
    pub fn load(source: &str) -> Result<Self, DocumentError> {
        let text = if source.trim_start().starts_with('{') {
            source.to_string()
        } else if source == "-" {
            std::io::read_to_string(std::io::stdin()).map_err(|e| DocumentError(format!("stdin: {e}")))?
        } else {
            std::fs::read_to_string(Path::new(source)).map_err(|e| DocumentError(format!("{source}: {e}")))?
        };
        Self::parse(&text)
    }

    pub fn equation(&self) -> Result<Equation, DocumentError> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| Ok(Term::new(t.coef.into(), t.function(&format!("terms[{i}]"))?)))
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Equation::new(terms, self.constant.into()).map_err(|e| DocumentError(e.to_string()))
    }
}
