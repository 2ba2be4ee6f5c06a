//! Coefficient data for the `KH` sequences, read from JSON:
//!
//! ```json
//! {"0": {"generators": 2, "relations": [], "sigma": [[0, 1], [1, 0]]},
//!  "-1": {"generators": 0, "relations": [], "sigma": []}}
//! ```
//!
//! Each degree is `Z^generators` modulo the listed relation vectors, with
//! `σ` given on the generators as a matrix of rows.

use std::collections::BTreeMap;

use leavitt_core::homology::CoefficientData;
use leavitt_core::intlin::cokernel;
use leavitt_core::{BigInt, IntMatrix, SigmaModule};
use serde::Deserialize;

#[derive(Deserialize)]
struct DegreeJson {
    generators: usize,
    #[serde(default)]
    relations: Vec<Vec<i64>>,
    sigma: Vec<Vec<i64>>,
}

#[derive(Debug)]
pub enum CoefficientError {
    Json(serde_json::Error),
    BadDegree(String),
    Shape(String),
    /// `σ` does not preserve the relations or is not an involution.
    NotAModule(String),
}

impl std::fmt::Display for CoefficientError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientError::Json(e) => write!(f, "invalid coefficient JSON: {e}"),
            CoefficientError::BadDegree(d) => write!(f, "bad degree key '{d}'"),
            CoefficientError::Shape(d) => write!(f, "degree {d}: matrix shapes do not match the generator count"),
            CoefficientError::NotAModule(d) => write!(f, "degree {d}: sigma is not an involution of the presented group"),
        }
    }
}

impl std::error::Error for CoefficientError {}

/// The module `Z^n / ⟨relations⟩` with `σ` induced from `sigma`.
pub fn presented_module(n: usize, relations: &IntMatrix, sigma: &IntMatrix) -> Option<SigmaModule> {
    let group = cokernel(relations);
    let action = group.proj().mul(sigma).mul(group.section());
    // σ must send relations to relations.
    let images = sigma.mul(relations);
    if (0..images.cols()).any(|j| !group.is_zero_elem(&group.project(&images.col(j)))) {
        return None;
    }
    debug_assert_eq!(group.ambient_dim(), n);
    SigmaModule::new(group, action).ok()
}

pub fn parse_coefficients(s: &str) -> Result<CoefficientData, CoefficientError> {
    let raw: BTreeMap<String, DegreeJson> = serde_json::from_str(s).map_err(CoefficientError::Json)?;
    let mut data = CoefficientData::new();
    for (key, d) in raw {
        let degree: i64 = key.trim().parse().map_err(|_| CoefficientError::BadDegree(key.clone()))?;
        let n = d.generators;
        if d.sigma.len() != n || d.sigma.iter().any(|r| r.len() != n) || d.relations.iter().any(|r| r.len() != n) {
            return Err(CoefficientError::Shape(key));
        }
        let sigma = IntMatrix::from_vec(n, n, d.sigma.iter().flatten().map(|&x| BigInt::from(x)).collect());
        let mut relations = IntMatrix::zeros(n, d.relations.len());
        for (j, r) in d.relations.iter().enumerate() {
            for (i, &x) in r.iter().enumerate() {
                relations[(i, j)] = BigInt::from(x);
            }
        }
        let module = presented_module(n, &relations, &sigma).ok_or(CoefficientError::NotAModule(key))?;
        data = data.with(degree, module);
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_ring() {
        let c = parse_coefficients(r#"{"0": {"generators": 2, "sigma": [[0, 1], [1, 0]]}}"#).unwrap();
        let m = c.get(0).unwrap();
        assert_eq!(m.underlying().rank(), 2);
        assert!(!m.is_trivial());
    }

    #[test]
    fn torsion_with_sign() {
        let c = parse_coefficients(r#"{"1": {"generators": 1, "relations": [[3]], "sigma": [[-1]]}}"#).unwrap();
        assert_eq!(c.get(1).unwrap().underlying().order(), Some(3.into()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_coefficients(r#"{"x": {"generators": 0, "sigma": []}}"#),
            Err(CoefficientError::BadDegree(_))
        ));
        assert!(matches!(
            parse_coefficients(r#"{"0": {"generators": 1, "sigma": [[2]]}}"#),
            Err(CoefficientError::NotAModule(_))
        ));
        assert!(matches!(
            parse_coefficients(r#"{"0": {"generators": 2, "relations": [[2, 0]], "sigma": [[0, 1], [1, 0]]}}"#),
            Err(CoefficientError::NotAModule(_))
        ));
        assert!(matches!(
            parse_coefficients(r#"{"0": {"generators": 2, "sigma": [[1]]}}"#),
            Err(CoefficientError::Shape(_))
        ));
    }
}
