//! Exchange-graph enumeration and the checks built on it.
//!
//! Enumeration is a level-synchronous breadth-first search. Each frontier is
//! expanded in parallel; children are merged into the seen-set sequentially
//! in frontier order, so node discovery is independent of the schedule.
//! Nodes are re-sorted by canonical form before the graph is returned.

mod independence;
pub mod rank;
pub mod report;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::fold::{orbit_mutate, FoldError, SeedFolding};
use crate::laurent::LaurentPoly;
use crate::par::{self, Parallelism};
use crate::seed::{CanonicalSeed, Seed, SeedError};

pub use independence::{check_independence, IndependenceReport};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Frontier nodes expanded per parallel batch.
const FRONTIER_CHUNK: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExploreError {
    #[error("node cap of {cap} reached before the exchange graph closed")]
    CapExceeded { cap: usize, partial: Box<ExchangeGraph> },
    #[error("exchange graph is incomplete")]
    Incomplete,
    #[error("degree bound must be at least 1")]
    DegreeBound,
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

/// Which mutations generate the graph.
#[derive(Clone, Copy, Debug)]
pub enum Mutator<'a> {
    /// Single-vertex mutation at every mutable vertex.
    Ordinary,
    /// Orbit mutation at every mutable block.
    Orbit(&'a SeedFolding),
}

impl Mutator<'_> {
    fn labels(&self, s: &Seed) -> Vec<usize> {
        match self {
            Mutator::Ordinary => s.mutable_ids(),
            Mutator::Orbit(sf) => sf.mutable_blocks(s),
        }
    }

    fn apply(&self, s: &Seed, label: usize) -> Result<Seed, ExploreError> {
        Ok(match self {
            Mutator::Ordinary => s.mutate(label)?,
            Mutator::Orbit(sf) => orbit_mutate(s, sf, label)?,
        })
    }
}

/// Directed edge `from --label--> to`; `label` is a vertex id or block id of
/// the stored representative of `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub label: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeGraph {
    /// One representative seed per node, sorted by canonical form.
    pub nodes: Vec<Seed>,
    pub keys: Vec<CanonicalSeed>,
    /// Sorted by `(from, label)`.
    pub edges: Vec<Edge>,
    pub origin: usize,
    pub complete: bool,
}

impl ExchangeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Every edge has a reverse edge.
    pub fn is_involutive(&self) -> bool {
        let set: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        self.edges.iter().all(|e| set.contains(&(e.to, e.from)))
    }

    pub fn index_of(&self, key: &CanonicalSeed) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub cap: usize,
    pub parallelism: Parallelism,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            cap: DEFAULT_CAP,
            parallelism: Parallelism::default(),
        }
    }
}

type Expansion = Result<Vec<(usize, Seed, CanonicalSeed)>, ExploreError>;

/// Breadth-first closure of `s` under `mutator`, deduplicated by canonical
/// seed form. Hitting the cap yields [`ExploreError::CapExceeded`] carrying
/// the partial graph (with `complete == false`).
pub fn enumerate(s: &Seed, mutator: Mutator<'_>, opts: EnumerateOptions) -> Result<ExchangeGraph, ExploreError> {
    let mut seen: HashMap<CanonicalSeed, usize> = HashMap::new();
    let mut nodes = vec![s.clone()];
    let mut keys = vec![s.canonical()?];
    seen.insert(keys[0].clone(), 0);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut complete = opts.cap >= 1;

    'search: while !frontier.is_empty() {
        let mut next = Vec::new();
        // Chunked so that a level overflowing the cap is not expanded in full.
        for chunk in frontier.chunks(FRONTIER_CHUNK) {
            let batch: Vec<&Seed> = chunk.iter().map(|&n| &nodes[n]).collect();
            let expanded: Vec<Expansion> = par::map(&batch, opts.parallelism, |seed| {
                mutator
                    .labels(seed)
                    .into_iter()
                    .map(|l| {
                        let child = mutator.apply(seed, l)?;
                        let key = child.canonical()?;
                        Ok((l, child, key))
                    })
                    .collect()
            });
            for (&from, children) in chunk.iter().zip(expanded) {
                for (label, child, key) in children? {
                    let to = match seen.get(&key) {
                        Some(&i) => i,
                        None => {
                            if nodes.len() >= opts.cap {
                                complete = false;
                                break 'search;
                            }
                            let i = nodes.len();
                            seen.insert(key.clone(), i);
                            nodes.push(child);
                            keys.push(key);
                            next.push(i);
                            i
                        }
                    };
                    edges.push(Edge { from, label, to });
                }
            }
        }
        frontier = next;
    }

    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut rank = vec![0; nodes.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut edges: Vec<Edge> = edges
        .into_iter()
        .map(|e| Edge {
            from: rank[e.from],
            label: e.label,
            to: rank[e.to],
        })
        .collect();
    edges.sort();
    let mut slots: Vec<Option<(Seed, CanonicalSeed)>> = nodes.into_iter().zip(keys).map(Some).collect();
    let (nodes, keys) = order
        .iter()
        .map(|&i| slots[i].take().expect("each node moved once"))
        .unzip();
    let graph = ExchangeGraph {
        nodes,
        keys,
        edges,
        origin: rank[0],
        complete,
    };
    if complete {
        Ok(graph)
    } else {
        Err(ExploreError::CapExceeded {
            cap: opts.cap,
            partial: Box::new(graph),
        })
    }
}

/// All variables of all nodes (mutable and frozen), deduplicated and sorted.
pub fn cluster_variables(g: &ExchangeGraph) -> Result<Vec<LaurentPoly>, ExploreError> {
    if !g.complete {
        return Err(ExploreError::Incomplete);
    }
    let set: BTreeSet<&LaurentPoly> = g.nodes.iter().flat_map(|s| s.variables()).collect();
    Ok(set.into_iter().cloned().collect())
}
