//! Pattern growth over the truncations of an oracle family.

use rayon::prelude::*;
use serde::Serialize;

use super::ChainError;
use crate::catalog::{truncate, IdealChain, OraclePoset};
use crate::embed::forbidden_scan;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnoseRow {
    pub depth: usize,
    pub size: usize,
    /// Largest `k ≤ depth` with `boolean(k)` join-embedded in `Tr_depth`.
    pub boolean_k: usize,
    /// Largest `k ≤ depth` with `omega_pairs_with_bottom(k)` join-embedded.
    pub omega_k: usize,
    pub width: usize,
    /// Strict drops among `I_0 ∩ Tr_d ⊇ I_1 ∩ Tr_d ⊇ …`, `n ≤ d`, when the
    /// family has a chain of ideals.
    pub descending: Option<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trend {
    pub indicator: &'static str,
    pub values: Vec<usize>,
    pub nondecreasing: bool,
    pub flat: bool,
}

impl Trend {
    fn new(indicator: &'static str, values: Vec<usize>) -> Self {
        Trend {
            indicator,
            nondecreasing: values.windows(2).all(|w| w[0] <= w[1]),
            flat: values.windows(2).all(|w| w[0] == w[1]),
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub family: String,
    pub rows: Vec<DiagnoseRow>,
    pub trends: Vec<Trend>,
}

impl GrowthReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,depth,size,boolean_k,omega_k,width,descending,nodes\n");
        for r in &self.rows {
            let desc = r.descending.map(|d| d.to_string()).unwrap_or_default();
            out += &format!(
                "{},{},{},{},{},{},{},{}\n",
                self.family, r.depth, r.size, r.boolean_k, r.omega_k, r.width, desc, r.nodes
            );
        }
        out
    }

    pub fn trend(&self, indicator: &str) -> Option<&Trend> {
        self.trends.iter().find(|t| t.indicator == indicator)
    }
}

fn row(o: &dyn OraclePoset, chain: Option<&dyn IdealChain>, d: usize, budget: u64) -> Result<DiagnoseRow, ChainError> {
    let t = truncate(o, d)?;
    let l = t.semilattice.as_ref().ok_or(ChainError::NoJoinOracle)?;
    let scan = forbidden_scan(l, d, budget)?;
    let descending = chain.map(|c| {
        let sizes: Vec<usize> = (0..=d).map(|n| t.codes.iter().filter(|&&x| c.contains(n, x)).count()).collect();
        sizes.windows(2).filter(|w| w[1] < w[0]).count()
    });
    Ok(DiagnoseRow {
        depth: d,
        size: t.codes.len(),
        boolean_k: scan.max_bk,
        omega_k: scan.max_omegak,
        width: t.poset.width(),
        descending,
        nodes: scan.nodes,
    })
}

/// One row per `d ≤ depth`, computed in parallel; `budget` applies to each
/// embedding search.
pub fn diagnose(
    o: &dyn OraclePoset,
    chain: Option<&dyn IdealChain>,
    depth: usize,
    budget: u64,
) -> Result<GrowthReport, ChainError> {
    if !o.has_join() {
        return Err(ChainError::NoJoinOracle);
    }
    let rows = (0..=depth)
        .into_par_iter()
        .map(|d| row(o, chain, d, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let col = |f: fn(&DiagnoseRow) -> usize| rows.iter().map(f).collect::<Vec<_>>();
    let mut trends = vec![
        Trend::new("boolean_k", col(|r| r.boolean_k)),
        Trend::new("omega_k", col(|r| r.omega_k)),
        Trend::new("width", col(|r| r.width)),
    ];
    if chain.is_some() {
        trends.push(Trend::new("descending", col(|r| r.descending.unwrap_or(0))));
    }
    Ok(GrowthReport {
        family: o.name(),
        rows,
        trends,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{FinSets, FinSetsChain, OmegaChain, OmegaPairs, OmegaPairsChain};
    use crate::embed::DEFAULT_NODE_BUDGET;

    #[test]
    fn fin_sets_boolean_growth() {
        let r = diagnose(&FinSets, Some(&FinSetsChain), 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.trend("boolean_k").unwrap().values, vec![0, 1, 2, 3, 4]);
        // boolean(d + 1) holds omega_pairs_with_bottom(k) once 2k - 4 ≤ d + 1.
        assert_eq!(r.trend("omega_k").unwrap().values, vec![0, 1, 2, 3, 4]);
        assert!(r.to_csv().lines().count() == 6);
    }

    #[test]
    fn omega_pairs_growth() {
        let p = OmegaPairs { bottom: true };
        let r = diagnose(&p, Some(&OmegaPairsChain { pairs: p }), 5, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.trend("omega_k").unwrap().values, vec![0, 1, 2, 3, 4, 5]);
        assert!(r.trend("boolean_k").unwrap().values.iter().all(|&k| k <= 2));
    }

    #[test]
    fn omega_chain_is_flat() {
        let r = diagnose(&OmegaChain, None, 8, DEFAULT_NODE_BUDGET).unwrap();
        let b = &r.trend("boolean_k").unwrap().values;
        assert!(b[1..].iter().all(|&k| k == 1));
        assert!(r.trend("width").unwrap().flat);
        assert!(r.trend("omega_k").unwrap().values[2..].iter().all(|&k| k == 2));
    }
}
