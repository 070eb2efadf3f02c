use std::path::Path;

use serde_json::{json, Value};

use ordlab::catalog::{self, truncate, CatalogError};
use ordlab::chain_lab::{
    diagnose, is_separating, lemma_3_1_extract, lemma_3_2_extract, prop_1_2_descent, ramsey_extract,
    remark414_antichain, remark414_descent_fixture, ChainError,
};
use ordlab::embed::{search, EmbedError, Mode};
use ordlab::ideals::{ideal_lattice, inclusion_order, initial_segment_lattice, set_label};
use ordlab::theorems::{self, SweepParams, TheoremError};
use ordlab::poset::PosetJson;
use ordlab::{FiniteJoinSemilattice, FinitePoset};

use crate::report::{Outcome, Verdict};
use crate::{Cli, Command, Format, TableFormat, What};

type Error = Box<dyn std::error::Error>;

pub enum Output {
    Report(Outcome),
    Artifact(String),
}

/// A finite operand: a JSON poset file, a catalog family, or a truncation
/// of an oracle family.
struct Loaded {
    poset: FinitePoset,
    semilattice: Option<FiniteJoinSemilattice>,
    labels: Vec<String>,
}

fn load(spec: &str, depth: usize) -> Result<Loaded, Error> {
    if Path::new(spec).is_file() {
        let poset = FinitePoset::from_json(&std::fs::read_to_string(spec)?)?;
        return Ok(Loaded {
            labels: (0..poset.len()).map(|x| x.to_string()).collect(),
            semilattice: FiniteJoinSemilattice::new(poset.clone()).ok(),
            poset,
        });
    }
    match catalog::make(spec) {
        Ok(s) => Ok(Loaded {
            poset: s.poset,
            semilattice: s.semilattice,
            labels: s.labels,
        }),
        Err(CatalogError::BadSpec(why)) if why.starts_with("unknown family") => {
            let fam = catalog::oracle(spec)?;
            let t = truncate(fam.poset.as_ref(), depth)?;
            Ok(Loaded {
                labels: t.labels(fam.poset.as_ref()),
                poset: t.poset,
                semilattice: t.semilattice,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn run(cli: &Cli) -> Result<Output, Error> {
    let budget = cli.budget;
    Ok(match &cli.command {
        Command::Verify { id, max_size, seed, k, trials } => {
            let params = SweepParams {
                max_size: *max_size,
                k: *k,
                seed: *seed,
                trials: *trials,
                budget,
            };
            Output::Report(verify(id, &params)?)
        }
        Command::Gen { spec, depth, export } => {
            let l = load(spec, *depth)?;
            match export {
                Some(f) => Output::Artifact(render(&l.poset, &l.labels, *f, spec)),
                None => Output::Report(gen(&l)),
            }
        }
        Command::Embed { mode, a, b, depth } => {
            let (a, b) = (load(a, *depth)?, load(b, *depth)?);
            Output::Report(embed((*mode).into(), &a, &b, budget)?)
        }
        Command::Extract { lemma, family, k, depth } => Output::Report(extract(lemma, family, *k, *depth)?),
        Command::Diagnose { family, depth, format } => {
            let fam = catalog::oracle(family)?;
            match diagnose(fam.poset.as_ref(), fam.chain.as_deref(), *depth, budget) {
                Ok(r) if *format == TableFormat::Csv => Output::Artifact(r.to_csv()),
                Ok(r) => {
                    let nodes = r.rows.iter().map(|row| row.nodes).sum();
                    Output::Report(Outcome::new(Verdict::Verified, json!(r)).with_counters(nodes, r.rows.len()))
                }
                Err(ChainError::Embed(EmbedError::BudgetExhausted { budget })) => Output::Report(Outcome::new(
                    Verdict::BudgetExhausted,
                    json!({ "budget": budget, "depth": depth }),
                )),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Export { spec, format, what, depth } => {
            let l = load(spec, *depth)?;
            Output::Artifact(match what {
                What::Poset => render(&l.poset, &l.labels, *format, spec),
                What::DownSets => {
                    let d = initial_segment_lattice(&l.poset)?;
                    render(d.lattice.poset(), &d.labels(), *format, spec)
                }
                What::Ideals => {
                    let ideals = ideal_lattice(&l.poset)?;
                    let labels: Vec<String> = ideals.iter().map(|i| set_label(&i.members())).collect();
                    render(&inclusion_order(&ideals), &labels, *format, spec)
                }
            })
        }
    })
}

fn render(p: &FinitePoset, labels: &[String], format: Format, name: &str) -> String {
    match format {
        Format::Json => serde_json::to_string(&PosetJson::from(p)).expect("plain data serializes"),
        Format::Dot => p.to_dot(&dot_name(name), Some(labels)),
    }
}

fn dot_name(spec: &str) -> String {
    spec.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn verify(id: &str, params: &SweepParams) -> Result<Outcome, Error> {
    match theorems::verify(id, params) {
        Ok(r) => {
            let verdict = if r.pass { Verdict::Pass } else { Verdict::Fail };
            let checked = r.checked;
            Ok(Outcome::new(verdict, json!(r)).with_counters(0, checked))
        }
        Err(TheoremError::Embed(EmbedError::BudgetExhausted { budget })) => Ok(Outcome::new(
            Verdict::BudgetExhausted,
            json!({ "id": id, "budget": budget }),
        )),
        Err(e) => Err(e.into()),
    }
}

fn gen(l: &Loaded) -> Outcome {
    let p = &l.poset;
    let mut w = json!({
        "size": p.len(),
        "height": p.height(),
        "width": p.width(),
        "labels": l.labels,
        "poset": PosetJson::from(p),
        "join_semilattice": l.semilattice.is_some(),
    });
    if let Some(s) = &l.semilattice {
        w["bottom"] = json!(s.bottom());
        w["top"] = json!(s.top());
        w["lattice_laws"] = json!(s.lattice_tests());
        w["join_irreducibles"] = json!(s.join_irreducibles().ok());
        w["join_primes"] = json!(s.join_primes().ok());
    }
    Outcome::new(Verdict::Verified, w).with_counters(0, 1)
}

fn embed(mode: Mode, a: &Loaded, b: &Loaded, budget: u64) -> Result<Outcome, Error> {
    let operands = match mode {
        Mode::Order => Some(((&a.poset).into(), (&b.poset).into())),
        _ => a.semilattice.as_ref().zip(b.semilattice.as_ref()).map(|(x, y)| (x.into(), y.into())),
    };
    let Some((oa, ob)) = operands else {
        return Err(format!("{mode:?} mode needs join-semilattice operands").into());
    };
    match search(mode, oa, ob, budget) {
        Ok(r) => Ok(match r.map {
            Some(m) => {
                let pairs: Vec<[&str; 2]> = (0..a.poset.len())
                    .map(|x| [a.labels[x].as_str(), b.labels[m.image(x)].as_str()])
                    .collect();
                Outcome::new(Verdict::Verified, json!({ "mode": mode, "map": m.table, "labeled": pairs }))
                    .with_counters(r.nodes, 2)
            }
            None => Outcome::new(
                Verdict::Refuted,
                json!({ "mode": mode, "map": null, "exhaustive_search_nodes": r.nodes }),
            )
            .with_counters(r.nodes, 2),
        }),
        Err(EmbedError::BudgetExhausted { budget }) => Ok(Outcome::new(
            Verdict::BudgetExhausted,
            json!({ "mode": mode, "budget": budget }),
        )),
        Err(e) => Err(e.into()),
    }
}

fn chain_failure(e: ChainError, context: Value) -> Result<Outcome, Error> {
    let verdict = match e {
        ChainError::SeparationFailedAtStep { .. } | ChainError::VerificationFailed(_) => Verdict::Refuted,
        ChainError::WitnessSearchExhausted { .. } => Verdict::UnknownAtDepth,
        ChainError::Embed(EmbedError::BudgetExhausted { .. }) => Verdict::BudgetExhausted,
        e => return Err(e.into()),
    };
    Ok(Outcome::new(verdict, json!({ "error": e.to_string(), "detail": e_json(&e), "context": context })))
}

fn e_json(e: &ChainError) -> Value {
    match e {
        ChainError::SeparationFailedAtStep { step } => json!({ "separation_failed_at_step": step }),
        ChainError::WitnessSearchExhausted { step, depth } => json!({ "step": step, "depth": depth }),
        _ => Value::Null,
    }
}

fn extract(lemma: &str, family: &str, k: usize, depth: usize) -> Result<Outcome, Error> {
    match lemma {
        "3.1" | "3.2" => {
            let fam = catalog::oracle(family)?;
            let chain = fam.chain.as_deref().ok_or(ChainError::NoChain)?;
            let result = if lemma == "3.1" {
                lemma_3_1_extract(chain, k, depth).map(|w| json!(w))
            } else {
                lemma_3_2_extract(chain, k, depth).map(|w| json!(w))
            };
            match result {
                Ok(w) => Ok(Outcome::new(Verdict::Verified, json!({ "lemma": lemma, "witness": w })).with_counters(0, 1)),
                Err(e) => {
                    let sep = is_separating(chain, depth.min(12));
                    chain_failure(e, json!({ "lemma": lemma, "separation": sep }))
                }
            }
        }
        "1.2" => {
            require_remark414(family)?;
            let (q, chain, xs) = remark414_descent_fixture(k);
            match prop_1_2_descent(&q, &chain, &xs) {
                Ok(d) => Ok(Outcome::new(Verdict::Verified, json!({ "lemma": lemma, "m": k, "descent": d }))),
                Err(e) => chain_failure(e, json!({ "lemma": lemma, "m": k })),
            }
        }
        "4.13" => {
            require_remark414(family)?;
            let (q, fam) = remark414_antichain(k);
            match ramsey_extract(&q, &fam) {
                Ok(r) => Ok(Outcome::new(Verdict::Verified, json!({ "lemma": lemma, "m": k, "ramsey": r }))),
                Err(e) => chain_failure(e, json!({ "lemma": lemma, "m": k })),
            }
        }
        _ => Err(format!("unknown lemma {lemma:?}; expected 3.1, 3.2, 1.2 or 4.13").into()),
    }
}

fn require_remark414(family: &str) -> Result<(), Error> {
    match family {
        "remark414" => Ok(()),
        _ => Err(format!("this extraction runs on the remark414 fixtures, not {family}").into()),
    }
}
