//! Named families: finite structures via [`make`] and countable ones via
//! [`oracle`], both addressed by specs like `omega-pairs:n=6,bottom=true`.

pub mod chains;
pub mod example48;
pub mod families;
pub mod oracle;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poset::FinitePoset;
use crate::semilattice::FiniteJoinSemilattice;

pub use chains::{Example48Chain, FinSetsChain, IdealChain, OmegaPairsChain, OmegaStarChain};
pub use oracle::{
    truncate, Example48, FinSets, OmegaChain, OmegaPairs, OmegaStar, OraclePoset, Remark414, Truncation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("bad family spec: {0}")]
    BadSpec(String),
    #[error("truncation is not join-closed: the join of {a} and {b} lies deeper")]
    TruncationNotJoinClosed { a: String, b: String },
    #[error("oracle inconsistency: {0}")]
    BadOracle(String),
}

/// `name:key=value,key=value`. A token without `=` continues the previous
/// value, so `sierp:perm=2,0,3,1` keeps the whole list; a leading bare
/// token is the `n` parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        let s = s.trim();
        let s = s.strip_prefix("catalog:").unwrap_or(s);
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim().to_ascii_lowercase().replace('_', "-");
        if name.is_empty() {
            return Err(CatalogError::BadSpec(s.to_string()));
        }
        let mut params = BTreeMap::new();
        let mut last: Option<String> = None;
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some((k, v)) = tok.split_once('=') {
                let k = k.trim().to_ascii_lowercase().replace('_', "-");
                params.insert(k.clone(), v.trim().to_string());
                last = Some(k);
            } else if let Some(k) = &last {
                let v: &mut String = params.get_mut(k).expect("key inserted");
                v.push(',');
                v.push_str(tok);
            } else {
                params.insert("n".to_string(), tok.to_string());
                last = Some("n".to_string());
            }
        }
        Ok(FamilySpec { name, params })
    }

    fn bad(&self, why: &str) -> CatalogError {
        CatalogError::BadSpec(format!("{}: {why}", self.name))
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CatalogError> {
        self.params
            .get(key)
            .map(|v| v.parse().map_err(|_| self.bad(&format!("{key} must be a non-negative integer"))))
            .transpose()
    }

    pub fn required(&self, key: &str) -> Result<usize, CatalogError> {
        self.usize(key)?.ok_or_else(|| self.bad(&format!("missing {key}")))
    }

    pub fn bool(&self, key: &str) -> Result<bool, CatalogError> {
        match self.params.get(key).map(String::as_str) {
            None | Some("false") | Some("0") | Some("no") => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some(_) => Err(self.bad(&format!("{key} must be true or false"))),
        }
    }

    pub fn list(&self, key: &str) -> Result<Vec<usize>, CatalogError> {
        let v = self.params.get(key).ok_or_else(|| self.bad(&format!("missing {key}")))?;
        v.split(',')
            .map(|t| t.trim().parse().map_err(|_| self.bad(&format!("{key} must be a list of integers"))))
            .collect()
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), CatalogError> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(self.bad(&format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }
}

/// A finite family member with display labels.
#[derive(Debug, Clone)]
pub struct Structure {
    pub spec: String,
    pub poset: FinitePoset,
    pub semilattice: Option<FiniteJoinSemilattice>,
    pub labels: Vec<String>,
}

impl Structure {
    fn lattice(spec: &str, l: FiniteJoinSemilattice, labels: Vec<String>) -> Self {
        Structure {
            spec: spec.to_string(),
            poset: l.poset().clone(),
            semilattice: Some(l),
            labels,
        }
    }

    fn plain(spec: &str, p: FinitePoset) -> Self {
        let labels = (0..p.len()).map(|x| x.to_string()).collect();
        let semilattice = FiniteJoinSemilattice::new(p.clone()).ok();
        Structure {
            spec: spec.to_string(),
            poset: p,
            semilattice,
            labels,
        }
    }
}

pub fn make(spec: &str) -> Result<Structure, CatalogError> {
    let fs = FamilySpec::parse(spec)?;
    let small = |n: usize, limit: usize| -> Result<usize, CatalogError> {
        if n > limit {
            Err(fs.bad(&format!("size {n} exceeds {limit}")))
        } else {
            Ok(n)
        }
    };
    match fs.name.as_str() {
        "boolean" => {
            fs.check_keys(&["n"])?;
            let n = small(fs.required("n")?, 12)?;
            Ok(Structure::lattice(spec, families::boolean(n), families::boolean_labels(n)))
        }
        "chain" => {
            fs.check_keys(&["n"])?;
            Ok(Structure::plain(spec, families::chain(small(fs.required("n")?, 4096)?)))
        }
        "antichain" => {
            fs.check_keys(&["n"])?;
            Ok(Structure::plain(spec, families::antichain(small(fs.required("n")?, 4096)?)))
        }
        "omega-pairs" | "omega-pairs-with-bottom" => {
            fs.check_keys(&["n", "bottom"])?;
            let n = small(fs.required("n")?, 64)?;
            let bottom = fs.name == "omega-pairs-with-bottom" || fs.bool("bottom")?;
            Ok(Structure::lattice(
                spec,
                families::omega_pairs(n, bottom),
                families::omega_pairs_labels(n, bottom),
            ))
        }
        "l-alpha" => {
            fs.check_keys(&["n"])?;
            let n = small(fs.required("n")?, 4096)?;
            let mut labels = vec!["0".to_string(), "a".to_string()];
            labels.extend((0..n).map(|k| format!("c{k}")));
            labels.push("1".into());
            Ok(Structure::lattice(spec, families::l_alpha(n), labels))
        }
        "sierp" => {
            fs.check_keys(&["perm"])?;
            let perm = fs.list("perm")?;
            let p = families::sierp(&perm).ok_or_else(|| fs.bad("perm must be a permutation of 0..n-1"))?;
            Ok(Structure::plain(spec, p))
        }
        "omega-alpha" => {
            fs.check_keys(&["alpha", "n"])?;
            let alpha = small(fs.required("alpha")?, 64)?;
            let n = small(fs.required("n")?, 64)?;
            let mut s = Structure::plain(spec, families::omega_alpha(alpha, n));
            s.labels = (0..alpha * n).map(|v| format!("({},{})", v / alpha.max(1), v % alpha.max(1))).collect();
            Ok(s)
        }
        "example48" | "example48-p" => {
            fs.check_keys(&["n"])?;
            let n = small(fs.required("n")?, 10)?;
            let (l, elems) = families::example48_p(n);
            Ok(Structure::lattice(spec, l, elems.iter().map(|e| e.label()).collect()))
        }
        "example48-q" => {
            fs.check_keys(&["n"])?;
            let n = small(fs.required("n")?, 4096)?;
            let mut s = Structure::plain(spec, families::example48_q(n));
            s.labels = (0..2 * (n + 1)).map(|x| format!("({},{})", x / 2, x % 2)).collect();
            Ok(s)
        }
        "omega-plus-omegastar" => {
            fs.check_keys(&["a", "b"])?;
            let a = small(fs.required("a")?, 4096)?;
            let b = small(fs.required("b")?, 4096)?;
            let mut s = Structure::plain(spec, families::omega_plus_omegastar(a, b));
            s.labels = (0..a).map(|x| x.to_string()).chain((0..b).map(|k| format!("-{}", k + 1))).collect();
            Ok(s)
        }
        _ => Err(CatalogError::BadSpec(format!("unknown family {}", fs.name))),
    }
}

/// An oracle family and, when the family has one, its chain of ideals.
pub struct OracleFamily {
    pub poset: Box<dyn OraclePoset>,
    pub chain: Option<Box<dyn IdealChain>>,
}

pub fn oracle(spec: &str) -> Result<OracleFamily, CatalogError> {
    let fs = FamilySpec::parse(spec)?;
    let fam = |poset: Box<dyn OraclePoset>, chain: Option<Box<dyn IdealChain>>| Ok(OracleFamily { poset, chain });
    match fs.name.as_str() {
        "fin-sets" => {
            fs.check_keys(&[])?;
            fam(Box::new(FinSets), Some(Box::new(FinSetsChain)))
        }
        "omega-star" => {
            fs.check_keys(&[])?;
            fam(Box::new(OmegaStar), Some(Box::new(OmegaStarChain)))
        }
        "omega" => {
            fs.check_keys(&[])?;
            fam(Box::new(OmegaChain), None)
        }
        "omega-pairs" | "omega-pairs-with-bottom" => {
            fs.check_keys(&["bottom"])?;
            let pairs = OmegaPairs {
                bottom: fs.name == "omega-pairs-with-bottom" || fs.bool("bottom")?,
            };
            fam(Box::new(pairs), Some(Box::new(OmegaPairsChain { pairs })))
        }
        "example48" => {
            fs.check_keys(&[])?;
            fam(Box::new(Example48), Some(Box::new(Example48Chain)))
        }
        "remark414" => {
            fs.check_keys(&[])?;
            fam(
                Box::new(Remark414),
                Some(Box::new(OmegaPairsChain {
                    pairs: OmegaPairs { bottom: true },
                })),
            )
        }
        _ => Err(CatalogError::BadSpec(format!("unknown oracle family {}", fs.name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::iso;

    #[test]
    fn spec_parsing() {
        let s = FamilySpec::parse("omega_pairs:n=6,bottom=true").unwrap();
        assert_eq!(s.name, "omega-pairs");
        assert_eq!(s.required("n").unwrap(), 6);
        assert!(s.bool("bottom").unwrap());
        let s = FamilySpec::parse("sierp:perm=2,0,3,1").unwrap();
        assert_eq!(s.list("perm").unwrap(), vec![2, 0, 3, 1]);
        let s = FamilySpec::parse("catalog:boolean:3").unwrap();
        assert_eq!(s.required("n").unwrap(), 3);
        assert!(FamilySpec::parse("").is_err());
    }

    #[test]
    fn make_families() {
        assert_eq!(make("omega-pairs:n=4").unwrap().poset.len(), 6);
        assert_eq!(make("omega-pairs:n=4,bottom=true").unwrap().poset.len(), 7);
        assert!(!make("l-alpha:n=2").unwrap().semilattice.unwrap().lattice_tests().is_modular);
        assert_eq!(make("example48:n=5").unwrap().poset.len(), families::example48_p(5).0.len());
        assert!(make("boolean:n=2").unwrap().semilattice.is_some());
        assert!(make("antichain:n=2").unwrap().semilattice.is_none());
        assert!(matches!(make("nope:n=1"), Err(CatalogError::BadSpec(_))));
        assert!(matches!(make("boolean:n=x"), Err(CatalogError::BadSpec(_))));
        assert!(matches!(make("boolean:m=2"), Err(CatalogError::BadSpec(_))));
        assert!(matches!(make("sierp:perm=0,0"), Err(CatalogError::BadSpec(_))));
    }

    #[test]
    fn oracle_examples() {
        let f = oracle("fin_sets").unwrap();
        let c = f.chain.unwrap();
        assert!(!c.contains(2, 0b11));
        assert!(c.contains(2, (1 << 3) | (1 << 5)));
        let f = oracle("omega-pairs").unwrap();
        let c = f.chain.unwrap();
        let p = OmegaPairs { bottom: false };
        assert!(!c.contains(3, p.code(2, 5)));
        assert!(c.contains(3, p.code(3, 5)));
        let t = truncate(oracle("omega-star").unwrap().poset.as_ref(), 5).unwrap();
        assert_eq!(t.poset.len(), 5);
        assert!(iso(&t.poset, &FinitePoset::chain(5)).is_some());
        assert!(oracle("boolean").is_err());
    }

    #[test]
    fn oracle_and_finite_forms_agree() {
        for d in 0..=6 {
            let t = truncate(&FinSets, d).unwrap();
            assert_eq!(t.poset, *families::boolean(d + 1).poset());
            let t = truncate(&OmegaPairs { bottom: true }, d).unwrap();
            assert!(iso(&t.poset, families::omega_pairs(d + 1, true).poset()).is_some());
            let t = truncate(&OmegaPairs { bottom: false }, d).unwrap();
            assert!(iso(&t.poset, families::omega_pairs(d + 1, false).poset()).is_some());
            let t = truncate(&Example48, d).unwrap();
            assert!(iso(&t.poset, families::example48_p(d).0.poset()).is_some());
            let t = truncate(&OmegaChain, d).unwrap();
            assert_eq!(t.poset, FinitePoset::chain(d + 1));
        }
    }
}
