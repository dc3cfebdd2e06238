use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::rank::{primitive_row, EchelonBasis};
use super::{cluster_variables, ExchangeGraph, ExploreError};
use crate::laurent::{LaurentPoly, Monomial};
use crate::par::{self, Parallelism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub monomial_count: usize,
    pub rank: usize,
    pub degree_bound: u32,
    pub independent: bool,
}

/// Exponent vectors of total degree `<= d` over `n` variables.
fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; n], &mut out);
    out
}

/// Symbolic cluster monomial: `(global variable index, exponent)` pairs.
type Symbolic = Vec<(usize, u32)>;

/// Rank of the cluster monomials of degree `<= d` expanded in the initial
/// variables. Monomials are deduplicated symbolically (by which cluster
/// variables they use), never by value, so equal expansions of distinct
/// monomials show up as a rank deficit.
pub fn check_independence(
    g: &ExchangeGraph,
    d: u32,
    parallelism: Parallelism,
) -> Result<IndependenceReport, ExploreError> {
    if d < 1 {
        return Err(ExploreError::DegreeBound);
    }
    let vars = cluster_variables(g)?;
    let index: HashMap<&LaurentPoly, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let mut monomials: BTreeSet<Symbolic> = BTreeSet::new();
    for node in &g.nodes {
        let cluster: Vec<usize> = node.variables().map(|v| index[v]).collect();
        for exps in exponent_vectors(cluster.len(), d) {
            let mut m: Symbolic = cluster
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e > 0)
                .map(|(&v, &e)| (v, e))
                .collect();
            m.sort_unstable();
            monomials.insert(m);
        }
    }
    let monomials: Vec<Symbolic> = monomials.into_iter().collect();

    let one = vars
        .first()
        .map(|v| LaurentPoly::one(v.vars()))
        .ok_or(ExploreError::Incomplete)?;
    let expanded: Vec<LaurentPoly> = par::map(&monomials, parallelism, |m| {
        m.iter()
            .fold(one.clone(), |acc, &(v, e)| &acc * &vars[v].pow(e))
    });

    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &expanded {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m).or_insert(next);
        }
    }
    let mut basis = EchelonBasis::new();
    for p in &expanded {
        let row: Vec<_> = p.terms().map(|(m, c)| (columns[m], c.clone())).collect();
        basis.insert(primitive_row(&row));
    }
    let rank = basis.rank();
    Ok(IndependenceReport {
        monomial_count: monomials.len(),
        rank,
        degree_bound: d,
        independent: rank == monomials.len(),
    })
}
