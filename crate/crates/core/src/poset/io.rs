//! The JSON poset format: `{"n": 3, "leq": [[0, 1], [0, 2], [1, 2]]}`,
//! listing every non-reflexive pair of the (transitively closed) order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FinitePoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub leq: Vec<[usize; 2]>,
}

#[derive(Debug, Error)]
pub enum PosetJsonError {
    #[error("malformed poset JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid poset: {0}")]
    Invalid(#[from] PosetError),
}

impl From<&FinitePoset> for PosetJson {
    fn from(p: &FinitePoset) -> Self {
        PosetJson {
            n: p.len(),
            leq: p.strict_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<&PosetJson> for FinitePoset {
    type Error = PosetError;

    fn try_from(j: &PosetJson) -> Result<Self, PosetError> {
        let n = j.n;
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &[a, b] in &j.leq {
            if a >= n || b >= n {
                return Err(PosetError::OutOfRange(a.max(b), n));
            }
            rel[a][b] = true;
        }
        FinitePoset::from_relation(&rel)
    }
}

impl FinitePoset {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PosetJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, PosetJsonError> {
        let j: PosetJson = serde_json::from_str(s)?;
        Ok(FinitePoset::try_from(&j)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_lists_closure_pairs() {
        assert_eq!(
            FinitePoset::chain(3).to_json(),
            r#"{"n":3,"leq":[[0,1],[0,2],[1,2]]}"#
        );
    }

    #[test]
    fn reading_rejects_non_closed_relations() {
        let err = FinitePoset::from_json(r#"{"n":3,"leq":[[0,1],[1,2]]}"#).unwrap_err();
        assert!(matches!(
            err,
            PosetJsonError::Invalid(PosetError::NotTransitive(0, 1, 2))
        ));
        assert!(FinitePoset::from_json(r#"{"n":2,"leq":[[0,5]]}"#).is_err());
        assert!(FinitePoset::from_json("nope").is_err());
    }

    #[test]
    fn round_trip() {
        let p = FinitePoset::from_generating_pairs(5, &[(0, 2), (1, 2), (2, 4), (3, 4)]).unwrap();
        assert_eq!(FinitePoset::from_json(&p.to_json()).unwrap(), p);
    }
}
