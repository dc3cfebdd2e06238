//! JSON and DOT renderings used by the command line tool. Every output is a
//! pure function of its inputs, so repeated runs are byte-identical.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{check_independence, cluster_variables, enumerate, EnumerateOptions, ExchangeGraph, ExploreError, IndependenceReport, Mutator};
use crate::cartan::{fold_doubleprime, fold_prime, find_unfolding, identify_type, CartanError, CartanMatrix, FoldingData, TypeLabel};
use crate::fold::{check_consistency, fold_seed, lifted_initial_seed, orbit_mutate, FoldError, FoldedSeed, SeedFolding};
use crate::seed::{CanonicalSeed, Seed, SeedError};
use crate::weyl::{longest_word, LiftedWord, ReducedWord};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Fold(#[from] FoldError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
}

/// Everything derived from a type label and a reduced word of its longest
/// element: the unfolding, the lifted word, and the unfolded and folded
/// initial seeds.
#[derive(Clone, Debug)]
pub struct TypeSetup {
    pub type_label: TypeLabel,
    pub folding: FoldingData,
    pub folded_cartan: CartanMatrix,
    pub word: ReducedWord,
    pub lifted: LiftedWord,
    pub unfolded: Seed,
    pub seed_folding: SeedFolding,
    pub folded: FoldedSeed,
}

impl TypeSetup {
    /// `word` uses folded letters (1-based orbit numbers); defaults to the
    /// greedy longest word.
    pub fn new(t: TypeLabel, word: Option<ReducedWord>) -> Result<Self, ReportError> {
        let folding = find_unfolding(t)?;
        let folded_cartan = fold_doubleprime(&folding);
        let word = word.unwrap_or_else(|| longest_word(&folded_cartan));
        let (unfolded, seed_folding) = lifted_initial_seed(&folding, &word)?;
        let folded = fold_seed(&unfolded, &seed_folding)?;
        let lifted = seed_folding.lifted_word().cloned().expect("lifted seed folding");
        Ok(TypeSetup {
            type_label: t,
            folding,
            folded_cartan,
            word,
            lifted,
            unfolded,
            seed_folding,
            folded,
        })
    }

    pub fn is_folded(&self) -> bool {
        !self.folding.is_identity()
    }

    /// The seed whose exchange graph describes the type: the folded seed for
    /// non-simply-laced types (or the unfolded one when asked), the word seed
    /// itself otherwise.
    pub fn working_seed(&self, unfolded: bool) -> &Seed {
        if unfolded || !self.is_folded() {
            &self.unfolded
        } else {
            &self.folded.seed
        }
    }
}

/// Short stable digest of a canonical seed.
pub fn fingerprint(key: &CanonicalSeed) -> String {
    let bytes = serde_json::to_vec(key).expect("canonical seeds serialize");
    hex::encode(Sha256::digest(&bytes))[..12].to_string()
}

fn folding_json(f: &FoldingData) -> Value {
    json!({
        "source_type": identify_type(f.source()).map(|t| t.to_string()),
        "source": f.source(),
        "perm": f.perm_labels(),
        "orbits": f.orbit_labels(),
        "order": f.order(),
    })
}

pub fn fold_report(t: TypeLabel) -> Result<Value, ReportError> {
    let f = find_unfolding(t)?;
    Ok(json!({
        "type": t.to_string(),
        "cartan": CartanMatrix::from_type(t),
        "unfolding": folding_json(&f),
        "c_prime": fold_prime(&f),
        "c_doubleprime": fold_doubleprime(&f),
    }))
}

pub fn seed_report(setup: &TypeSetup) -> Value {
    json!({
        "type": setup.type_label.to_string(),
        "word": setup.word,
        "lifted_word": setup.lifted.letters(),
        "seed": setup.unfolded,
        "folded_seed": setup.is_folded().then(|| setup.folded.to_json()),
    })
}

/// Mutates along `sequence` (block ids for folded types, vertex ids
/// otherwise). For folded types the orbit-mutated unfolded seed is folded and
/// compared with direct mutation of the folded seed; the flag reports whether
/// they agree.
pub fn mutate_report(setup: &TypeSetup, sequence: &[usize]) -> Result<(Value, bool), ReportError> {
    if !setup.is_folded() {
        let s = setup.unfolded.mutate_sequence(sequence)?;
        return Ok((
            json!({
                "type": setup.type_label.to_string(),
                "sequence": sequence,
                "seed": s,
            }),
            true,
        ));
    }
    let sf = &setup.seed_folding;
    let unfolded = sequence
        .iter()
        .try_fold(setup.unfolded.clone(), |s, &b| orbit_mutate(&s, sf, b))?;
    let folded = FoldedSeed {
        seed: setup.folded.seed.mutate_sequence(sequence)?,
        symmetrizer: setup.folded.symmetrizer.clone(),
    };
    let consistent = check_consistency(&setup.unfolded, sf, sequence)?;
    Ok((
        json!({
            "type": setup.type_label.to_string(),
            "sequence": sequence,
            "folded_seed": folded.to_json(),
            "unfolded_seed": unfolded,
            "consistent": consistent,
        }),
        consistent,
    ))
}

pub struct ExploreOutput {
    pub json: Value,
    pub dot: String,
    pub complete: bool,
}

fn graph_json(setup: &TypeSetup, structure: &str, g: &ExchangeGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .zip(&g.keys)
        .enumerate()
        .map(|(i, (s, key))| {
            let names = |frozen: bool| -> Vec<String> {
                key.vertices
                    .iter()
                    .filter(|(f, _)| *f == frozen)
                    .map(|(_, v)| v.to_string())
                    .collect()
            };
            json!({
                "index": i,
                "fingerprint": fingerprint(key),
                "mutable": names(false),
                "frozen": names(true),
                "vertex_ids": s.len(),
            })
        })
        .collect();
    let edges: Vec<Value> = g.edges.iter().map(|e| json!([e.from, e.label, e.to])).collect();
    let variables = cluster_variables(g).map(|v| v.len()).ok();
    json!({
        "type": setup.type_label.to_string(),
        "structure": structure,
        "complete": g.complete,
        "node_count": g.nodes.len(),
        "edge_count": g.edges.len(),
        "origin": g.origin,
        "cluster_variable_count": variables,
        "nodes": nodes,
        "edges": edges,
    })
}

/// Undirected DOT graph; each exchange is drawn once, labelled from its
/// lower-numbered end.
pub fn graph_dot(g: &ExchangeGraph) -> String {
    let mut out = String::from("graph exchange {\n");
    for (i, key) in g.keys.iter().enumerate() {
        let shape = if i == g.origin { ", shape=box" } else { "" };
        out.push_str(&format!("  n{i} [label=\"{}\"{shape}];\n", fingerprint(key)));
    }
    for e in g.edges.iter().filter(|e| e.from < e.to) {
        out.push_str(&format!("  n{} -- n{} [label=\"{}\"];\n", e.from, e.to, e.label));
    }
    out.push_str("}\n");
    out
}

pub fn explore_report(setup: &TypeSetup, unfolded: bool, opts: EnumerateOptions) -> Result<ExploreOutput, ReportError> {
    let seed = setup.working_seed(unfolded);
    let structure = if setup.is_folded() && !unfolded { "folded" } else { "unfolded" };
    let g = match enumerate(seed, Mutator::Ordinary, opts) {
        Ok(g) => g,
        Err(ExploreError::CapExceeded { partial, .. }) => *partial,
        Err(e) => return Err(e.into()),
    };
    Ok(ExploreOutput {
        json: graph_json(setup, structure, &g),
        dot: graph_dot(&g),
        complete: g.complete,
    })
}

pub fn check_report(
    setup: &TypeSetup,
    unfolded: bool,
    degree: u32,
    opts: EnumerateOptions,
) -> Result<(Value, IndependenceReport), ReportError> {
    let g = enumerate(setup.working_seed(unfolded), Mutator::Ordinary, opts)?;
    let report = check_independence(&g, degree, opts.parallelism)?;
    Ok((
        json!({
            "type": setup.type_label.to_string(),
            "structure": if setup.is_folded() && !unfolded { "folded" } else { "unfolded" },
            "clusters": g.nodes.len(),
            "report": report,
        }),
        report,
    ))
}
