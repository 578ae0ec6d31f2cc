//! JSON renderings of results and errors.

use liecoh_core::cohomology::CohomologyClass;
use liecoh_core::io::{cochain_json, matrix_json, vector_json};
use liecoh_core::linalg::{InconsistencyCertificate, Matrix};
use liecoh_core::Error;
use serde_json::{json, Value};

/// A report and its exit code.
pub struct Outcome {
    pub report: Value,
    pub code: u8,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }

    pub fn negative(report: Value) -> Self {
        Outcome { report, code: 2 }
    }

    pub fn from_flag(success: bool, report: Value) -> Self {
        Outcome {
            report,
            code: if success { 0 } else { 2 },
        }
    }
}

pub fn class_json(c: &CohomologyClass) -> Value {
    json!({
        "degree": c.space().degree(),
        "h_dim": c.space().h_dim(),
        "zero": c.is_zero(),
        "coordinates": vector_json(&c.coordinates()),
        "representative": cochain_json(c.representative()),
    })
}

pub fn certificate_json(c: &InconsistencyCertificate) -> Value {
    json!({"combination": vector_json(&c.combination), "value": c.value.to_string()})
}

pub fn pair_json(p: &(Matrix, Matrix)) -> Value {
    json!({"alpha": matrix_json(&p.0), "beta": matrix_json(&p.1)})
}

fn variant(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::DegreeMismatch { .. } => "DegreeMismatch",
        Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
        Error::NotAnIdeal { .. } => "NotAnIdeal",
        Error::NotAHomomorphism(..) => "NotAHomomorphism",
        Error::JacobiViolation(..) => "JacobiViolation",
        Error::InvalidFactorSystem { .. } => "InvalidFactorSystem",
        Error::NoLift(_) => "NoLift",
        Error::Obstructed(_) => "Obstructed",
        Error::NotASection => "NotASection",
        Error::SpaceMismatch => "SpaceMismatch",
        Error::NoOmegaLift(_) => "NoOmegaLift",
        Error::InvalidCrossedModule(_) => "InvalidCrossedModule",
        Error::FactorizationFailure(_) => "FactorizationFailure",
        Error::NoGamma(_) => "NoGamma",
        Error::PreconditionFailed { .. } => "PreconditionFailed",
        Error::UnknownName(_) => "UnknownName",
        Error::UnknownBundle(_) => "UnknownBundle",
        Error::Parse(_) => "ParseError",
        Error::InvariantViolation(_) => "InvariantViolation",
        Error::Io(_) => "IoError",
    }
}

/// Mathematical negatives exit 2 with their certificate; the rest exit 1.
pub fn error_report(e: &Error) -> (Value, u8) {
    let mut report = json!({"error": variant(e), "message": e.to_string()});
    let m = report.as_object_mut().expect("object");
    let code = match e {
        Error::InvalidFactorSystem {
            condition,
            detail,
            jacobi_triple,
        } => {
            m.insert(
                "certificate".into(),
                json!({
                    "condition": condition,
                    "detail": detail,
                    "jacobi_triple": jacobi_triple.map(|(i, j, k)| json!([i, j, k])),
                }),
            );
            2
        }
        Error::Obstructed(class) => {
            m.insert("certificate".into(), class_json(class));
            2
        }
        Error::InvalidCrossedModule(failures) => {
            m.insert("certificate".into(), json!({"failures": failures}));
            2
        }
        Error::JacobiViolation(i, j, k) => {
            m.insert("jacobi_triple".into(), json!([i, j, k]));
            1
        }
        Error::InvariantViolation(v) => {
            m.insert("violations".into(), json!(v));
            1
        }
        Error::NoLift(_) | Error::NoGamma(_) | Error::NoOmegaLift(_) | Error::NotAHomomorphism(..) => 2,
        _ => 1,
    };
    (report, code)
}
