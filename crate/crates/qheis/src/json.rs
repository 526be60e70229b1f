//! JSON schemas for elements, vectors and reports.
//!
//! All polynomial and scalar payloads are canonical strings, so serialized
//! documents are deterministic byte-for-byte: equal values serialize
//! identically, and round trips through these types are exact.

use crate::algebra::HqElement;
use crate::annihilator::{CentralSearchResult, ScalarSearchResult};
use crate::eliminant::EliminantReport;
use crate::laurent::{ActionReport, LaurentVector};
use crate::scalar::{QMode, Scalar};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
}

impl From<&QMode> for ModeJson {
    fn from(mode: &QMode) -> Self {
        match mode {
            QMode::Rational(v) => ModeJson {
                kind: "rational".to_string(),
                value: Some(v.to_string()),
                d: None,
            },
            QMode::Symbolic => ModeJson {
                kind: "symbolic".to_string(),
                value: None,
                d: None,
            },
            QMode::RootOfUnity(d) => ModeJson {
                kind: "root_of_unity".to_string(),
                value: None,
                d: Some(*d),
            },
        }
    }
}

impl TryFrom<&ModeJson> for QMode {
    type Error = String;

    fn try_from(j: &ModeJson) -> Result<QMode, String> {
        match j.kind.as_str() {
            "rational" => {
                let v = j.value.as_ref().ok_or("rational mode needs a value")?;
                let r = BigRational::from_str(v).map_err(|e| format!("bad value: {e}"))?;
                Ok(QMode::Rational(r))
            }
            "symbolic" => Ok(QMode::Symbolic),
            "root_of_unity" => {
                let d = j.d.ok_or("root_of_unity mode needs d")?;
                Ok(QMode::RootOfUnity(d))
            }
            other => Err(format!("unknown mode kind '{other}'")),
        }
    }
}

/// One normal-form term: coefficient of `B^b A^a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub b: u32,
    pub a: u32,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub mode: ModeJson,
    pub terms: Vec<TermJson>,
}

impl From<&HqElement> for ElementJson {
    fn from(e: &HqElement) -> Self {
        ElementJson {
            mode: ModeJson::from(e.mode()),
            terms: e
                .terms_graded_desc()
                .into_iter()
                .map(|((b, a), c)| TermJson {
                    b,
                    a,
                    c: c.canonical_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementJson> for HqElement {
    type Error = String;

    fn try_from(j: &ElementJson) -> Result<HqElement, String> {
        let mode = QMode::try_from(&j.mode)?;
        let mut e = HqElement::zero(&mode);
        for t in &j.terms {
            let c = Scalar::parse_canonical(&t.c, mode.domain())?;
            e = e.add(&HqElement::monomial(&mode, t.b, t.a, c));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub lo: i64,
    pub coeffs: Vec<String>,
}

impl From<&LaurentVector> for VectorJson {
    fn from(v: &LaurentVector) -> Self {
        match v.window() {
            None => VectorJson {
                lo: 0,
                coeffs: Vec::new(),
            },
            Some((lo, _)) => VectorJson {
                lo,
                coeffs: v.iter().map(|(_, c)| c.canonical_string()).collect(),
            },
        }
    }
}

impl VectorJson {
    pub fn to_vector(&self, mode: &QMode) -> Result<LaurentVector, String> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| Scalar::parse_canonical(s, mode.domain()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentVector::from_coeffs(self.lo, coeffs))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub size: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveJson {
    pub m_degree: u32,
    pub poly: String,
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadingCheckJson {
    pub degree: u32,
    pub actual: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadingChecksJson {
    pub lambda: LeadingCheckJson,
    pub mu: LeadingCheckJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EliminantReportJson {
    pub mode: ModeJson,
    pub p: String,
    pub q: String,
    pub matrix: MatrixJson,
    pub delta: String,
    pub curves: Vec<CurveJson>,
    pub s: u64,
    pub t: u64,
    pub lambda_degree: u32,
    pub mu_degree: u32,
    pub leading_checks: LeadingChecksJson,
    pub annihilation: Vec<bool>,
}

pub fn eliminant_report_json(
    p: &HqElement,
    q: &HqElement,
    report: &EliminantReport,
) -> EliminantReportJson {
    let md = &report.metadata;
    EliminantReportJson {
        mode: ModeJson::from(p.mode()),
        p: p.to_string(),
        q: q.to_string(),
        matrix: MatrixJson {
            size: report.matrix.size(),
            entries: report
                .matrix
                .rows()
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
        },
        delta: report.delta.to_string(),
        curves: report
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| CurveJson {
                m_degree: i as u32,
                poly: c.to_string(),
                nonzero: !c.is_zero(),
            })
            .collect(),
        s: md.s_bound,
        t: md.t_bound,
        lambda_degree: md.lambda_degree,
        mu_degree: md.mu_degree,
        leading_checks: LeadingChecksJson {
            lambda: LeadingCheckJson {
                degree: md.lambda_degree,
                actual: md.lambda_leading.to_string_var("M"),
                expected: md.lambda_leading_expected.to_string_var("M"),
                matches: md.lambda_leading_matches,
            },
            mu: LeadingCheckJson {
                degree: md.mu_degree,
                actual: md.mu_leading.to_string_var("M"),
                expected: md.mu_leading_expected.to_string_var("M"),
                matches: md.mu_leading_matches,
            },
        },
        annihilation: report.annihilation.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnihilateJson {
    pub mode: ModeJson,
    pub p: String,
    pub q: String,
    pub central: bool,
    pub polynomial: String,
    pub bounds: (u32, u32),
    pub kernel_dimension: usize,
    pub verified: bool,
}

pub fn scalar_search_json(
    p: &HqElement,
    q: &HqElement,
    res: &ScalarSearchResult,
) -> AnnihilateJson {
    AnnihilateJson {
        mode: ModeJson::from(p.mode()),
        p: p.to_string(),
        q: q.to_string(),
        central: false,
        polynomial: res.polynomial.to_string(),
        bounds: res.bounds,
        kernel_dimension: res.kernel_dimension,
        verified: res.verified,
    }
}

pub fn central_search_json(
    p: &HqElement,
    q: &HqElement,
    res: &CentralSearchResult,
) -> AnnihilateJson {
    AnnihilateJson {
        mode: ModeJson::from(p.mode()),
        p: p.to_string(),
        q: q.to_string(),
        central: true,
        polynomial: res.relation.to_string(),
        bounds: res.bounds,
        kernel_dimension: res.kernel_dimension,
        verified: res.verified,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepApplyJson {
    pub mode: ModeJson,
    pub element: String,
    pub input: VectorJson,
    pub output: VectorJson,
    pub input_window: Option<(i64, i64)>,
    pub output_window: Option<(i64, i64)>,
    pub boundary_loss: bool,
}

pub fn rep_apply_json(
    element: &HqElement,
    input: &LaurentVector,
    output: &LaurentVector,
    report: &ActionReport,
) -> RepApplyJson {
    RepApplyJson {
        mode: ModeJson::from(element.mode()),
        element: element.to_string(),
        input: VectorJson::from(input),
        output: VectorJson::from(output),
        input_window: report.input_window,
        output_window: report.output_window,
        boundary_loss: report.boundary_loss,
    }
}
