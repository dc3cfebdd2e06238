//! Exact rank of sparse rational matrices.
//!
//! Rows are scaled to primitive integer vectors and reduced against an
//! echelon basis with integer row operations (`a*r - b*p`, then divide by
//! the content), so no fractions are formed and entries stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse row: `(column, value)` sorted by column, no zero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Clear denominators and divide out the content; the sign is normalised so
/// the leading entry is positive.
pub fn primitive_row(row: &[(usize, BigRational)]) -> SparseRow {
    let lcm = row.iter().fold(BigInt::one(), |a, (_, c)| a.lcm(c.denom()));
    let mut out: SparseRow = row
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (*j, (c * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    out.sort_by_key(|(j, _)| *j);
    normalise(&mut out);
    out
}

fn normalise(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |a, (_, c)| a.gcd(c));
    if g.is_zero() {
        return;
    }
    let flip = row.first().is_some_and(|(_, c)| c.is_negative());
    for (_, c) in row.iter_mut() {
        *c = &*c / &g;
        if flip {
            *c = -&*c;
        }
    }
}

/// `a*r - b*p`, merged by column; both inputs sorted.
fn combine(r: &SparseRow, a: &BigInt, p: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (col, v) = match (r.get(i), p.get(j)) {
            (Some((cr, vr)), Some((cp, vp))) if cr == cp => {
                i += 1;
                j += 1;
                (*cr, a * vr - b * vp)
            }
            (Some((cr, vr)), Some((cp, _))) if cr < cp => {
                i += 1;
                (*cr, a * vr)
            }
            (Some((cr, vr)), None) => {
                i += 1;
                (*cr, a * vr)
            }
            (_, Some((cp, vp))) => {
                j += 1;
                (*cp, -(b * vp))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Incremental echelon basis over the integers.
#[derive(Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, SparseRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `row`; returns false when it lies in the span of earlier rows.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        normalise(&mut row);
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    row = combine(&row, &(pv / &g), p, &(&lv / &g));
                    normalise(&mut row);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn exact_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}
