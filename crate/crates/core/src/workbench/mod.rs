//! Named domains, the case auditor, the end-to-end verification suite and
//! the JSON spec format.

mod audit;
mod catalog;
mod verify;

pub use audit::{audit_bounds, case_exclusions, parse_n_range, Admitted, AuditError, CaseTable, Excluded};
pub use catalog::{
    ball_product_spec, catalog, catalog_query, d6_s1_form, form54, parse_query, CatalogEntry, CatalogError,
    Check, Expectation, Params, Relation, CATALOG,
};
pub use verify::{
    d6tilde_g1_direction, is_d6tilde_g1_direction, known_value_queries, s1_draws, verify_paper, ClaimResult,
    VerifyReport,
};

use thiserror::Error;

use crate::forms::{validate, FormError, Validation};
use crate::grading::SiegelDomainSpec;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("H is not Omega-Hermitian: {0}")]
    Invalid(String),
}

/// Reads a spec from `builtin:NAME?…` or a JSON file. File specs are
/// validated with `samples` draws from `seed`; `Unverified` is accepted.
pub fn load_spec(source: &str, samples: usize, seed: u64) -> Result<SiegelDomainSpec, LoadError> {
    if let Some(q) = source.strip_prefix("builtin:") {
        let e = catalog_query(q)?;
        if !e.prevalidated {
            check_valid(&e.spec, samples, seed)?;
        }
        return Ok(e.spec);
    }
    let text = std::fs::read_to_string(source).map_err(|e| LoadError::Io { path: source.into(), source: e })?;
    let spec = spec_from_json(&text)?;
    check_valid(&spec, samples, seed)?;
    Ok(spec)
}

fn check_valid(d: &SiegelDomainSpec, samples: usize, seed: u64) -> Result<(), LoadError> {
    match validate(&d.form, &d.cone, samples, seed)? {
        Validation::Invalid(r) => Err(LoadError::Invalid(r)),
        Validation::Valid | Validation::Unverified(_) => Ok(()),
    }
}

pub fn spec_from_json(text: &str) -> Result<SiegelDomainSpec, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn spec_to_json(d: &SiegelDomainSpec) -> String {
    serde_json::to_string_pretty(d).expect("specs always serialize")
}
