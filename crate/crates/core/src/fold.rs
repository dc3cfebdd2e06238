//! Orbit mutation on automorphism-invariant seeds and projection of such
//! seeds to the folded (non-simply-laced) cluster structure.
//!
//! An invariant seed carries a vertex permutation `sigma` whose cycles are the
//! blocks. Mutating at a block means mutating at every vertex of the block;
//! those mutations commute because the exchange matrix vanishes inside a
//! block. Folding sends `x_b` to `y_[b]` and sums exchange-matrix rows over
//! blocks.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanError, FoldingData};
use crate::laurent::{LaurentError, LaurentPoly, Vars};
use crate::par::{self, Parallelism};
use crate::seed::{initial_seed, Seed, SeedError, SeedJson, Vertex, VertexPerm};
use crate::weyl::{lift_word, LiftedWord, ReducedWord, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("seed is not invariant under the block automorphism")]
    NonInvariant,
    #[error("block {0} is frozen")]
    FrozenBlock(usize),
    #[error("no block with id {0}")]
    UnknownBlock(usize),
    #[error("block {0} mixes frozen and mutable vertices")]
    MixedBlock(usize),
    #[error("exchange matrix does not vanish inside block {0}")]
    BlockNotCommuting(usize),
    #[error("mutations inside block {0} depend on their order")]
    OrderDependent(usize),
    #[error("orbit mutation at block {0} broke invariance")]
    InvariantBroken(usize),
    #[error("folded data depends on the block representative")]
    RepresentativeMismatch,
    #[error("blocks do not partition the vertices or sigma does not preserve them")]
    BadBlocks,
    #[error("seed has {got} vertices, folding expects {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// Block structure of an unfolded seed together with its automorphism.
#[derive(Clone, Debug)]
pub struct SeedFolding {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    sigma: VertexPerm,
    unfolded_vars: Vars,
    folded_vars: Vars,
    projection: HashMap<String, LaurentPoly>,
    check_order: bool,
    folding: Option<FoldingData>,
    lifted: Option<LiftedWord>,
}

impl SeedFolding {
    /// `blocks` are 0-based vertex lists (each sorted on construction);
    /// `sigma` must map every block onto itself. Unfolded variables are
    /// `x1..xk`, folded ones `y1..ym`.
    pub fn from_parts(blocks: Vec<Vec<usize>>, sigma: VertexPerm) -> Result<Self, FoldError> {
        let k = sigma.len();
        let mut block_of = vec![usize::MAX; k];
        let mut blocks = blocks;
        for (bi, blk) in blocks.iter_mut().enumerate() {
            blk.sort_unstable();
            if blk.is_empty() {
                return Err(FoldError::BadBlocks);
            }
            for &p in blk.iter() {
                if p >= k || block_of[p] != usize::MAX {
                    return Err(FoldError::BadBlocks);
                }
                block_of[p] = bi;
            }
        }
        if block_of.contains(&usize::MAX) || (0..k).any(|p| block_of[sigma.apply(p)] != block_of[p]) {
            return Err(FoldError::BadBlocks);
        }
        let unfolded_vars = Vars::indexed("x", k);
        let folded_vars = Vars::indexed("y", blocks.len());
        let projection = (0..k)
            .map(|p| (unfolded_vars.names()[p].clone(), LaurentPoly::var(&folded_vars, block_of[p])))
            .collect();
        Ok(SeedFolding {
            blocks,
            block_of,
            sigma,
            unfolded_vars,
            folded_vars,
            projection,
            check_order: cfg!(debug_assertions),
            folding: None,
            lifted: None,
        })
    }

    /// Blocks are the orbit runs of the lifted word; `sigma` moves each
    /// position to the position of the automorphism image of its letter.
    pub fn for_lifted_word(folding: FoldingData, lifted: LiftedWord) -> Result<Self, FoldError> {
        let src = folding.source();
        let mut images = vec![0; lifted.len()];
        let mut blocks = Vec::with_capacity(lifted.blocks().len());
        for blk in lifted.blocks() {
            let range: Vec<usize> = (blk.start..blk.start + blk.len).collect();
            for &p in &range {
                let i = src.index_of(lifted.letters()[p])?;
                let target = src.labels()[folding.perm()[i]];
                images[p] = *range
                    .iter()
                    .find(|&&q| lifted.letters()[q] == target)
                    .ok_or(FoldError::BadBlocks)?;
            }
            blocks.push(range);
        }
        let mut sf = Self::from_parts(blocks, VertexPerm::new(images)?)?;
        sf.folding = Some(folding);
        sf.lifted = Some(lifted);
        Ok(sf)
    }

    /// Toggle the second-order recomputation inside [`orbit_mutate`]. On by
    /// default in debug builds.
    pub fn with_order_check(mut self, on: bool) -> Self {
        self.check_order = on;
        self
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// 0-based block of 0-based vertex `p`.
    pub fn block_of(&self, p: usize) -> usize {
        self.block_of[p]
    }

    pub fn block_sizes(&self) -> Vec<i64> {
        self.blocks.iter().map(|b| b.len() as i64).collect()
    }

    pub fn sigma(&self) -> &VertexPerm {
        &self.sigma
    }

    pub fn unfolded_vars(&self) -> &Vars {
        &self.unfolded_vars
    }

    pub fn folded_vars(&self) -> &Vars {
        &self.folded_vars
    }

    pub fn folding(&self) -> Option<&FoldingData> {
        self.folding.as_ref()
    }

    pub fn lifted_word(&self) -> Option<&LiftedWord> {
        self.lifted.as_ref()
    }

    /// 1-based ids of blocks whose vertices are all mutable in `s`.
    pub fn mutable_blocks(&self, s: &Seed) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].iter().all(|&p| !s.vertices()[p].frozen))
            .map(|b| b + 1)
            .collect()
    }

    fn check_size(&self, s: &Seed) -> Result<(), FoldError> {
        if s.len() != self.sigma.len() {
            return Err(FoldError::SizeMismatch {
                got: s.len(),
                expected: self.sigma.len(),
            });
        }
        Ok(())
    }

    pub fn is_invariant(&self, s: &Seed) -> bool {
        s.len() == self.sigma.len() && s.is_invariant_in_place(&self.sigma, &self.sigma)
    }
}

/// Unfolded initial seed of a reduced word over `fold_doubleprime(f)` and
/// the block structure of its lift.
pub fn lifted_initial_seed(f: &FoldingData, w: &ReducedWord) -> Result<(Seed, SeedFolding), FoldError> {
    let lifted = lift_word(w, f)?;
    let seed = initial_seed(f.source(), &lifted.word())?;
    let sf = SeedFolding::for_lifted_word(f.clone(), lifted)?;
    Ok((seed, sf))
}

fn block_ids<'a>(sf: &'a SeedFolding, s: &Seed, blk: usize) -> Result<&'a [usize], FoldError> {
    let ids = blk
        .checked_sub(1)
        .and_then(|b| sf.blocks.get(b))
        .ok_or(FoldError::UnknownBlock(blk))?;
    let frozen = ids.iter().filter(|&&p| s.vertices()[p].frozen).count();
    if frozen == ids.len() {
        return Err(FoldError::FrozenBlock(blk));
    }
    if frozen > 0 {
        return Err(FoldError::MixedBlock(blk));
    }
    Ok(ids)
}

/// Mutate at every vertex of block `blk` (1-based), smallest vertex first.
pub fn orbit_mutate(s: &Seed, sf: &SeedFolding, blk: usize) -> Result<Seed, FoldError> {
    sf.check_size(s)?;
    if !sf.is_invariant(s) {
        return Err(FoldError::NonInvariant);
    }
    let ids = block_ids(sf, s, blk)?;
    for &p in ids {
        for &q in ids {
            if s.b()[p][q] != 0 {
                return Err(FoldError::BlockNotCommuting(blk));
            }
        }
    }
    let out = ids.iter().try_fold(s.clone(), |acc, &p| acc.mutate(p + 1))?;
    if sf.check_order && ids.len() > 1 {
        let rev = ids.iter().rev().try_fold(s.clone(), |acc, &p| acc.mutate(p + 1))?;
        if rev != out {
            return Err(FoldError::OrderDependent(blk));
        }
    }
    if !sf.is_invariant(&out) {
        return Err(FoldError::InvariantBroken(blk));
    }
    Ok(out)
}

/// `x_b -> y_[b]`.
pub fn project_variable(p: &LaurentPoly, sf: &SeedFolding) -> Result<LaurentPoly, FoldError> {
    Ok(p.substitute(&sf.folded_vars, &sf.projection)?)
}

/// A folded seed and its block sizes. The sizes `d` satisfy
/// `B'_ij d_j = -B'_ji d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedSeed {
    pub seed: Seed,
    pub symmetrizer: Vec<i64>,
}

impl FoldedSeed {
    pub fn to_json(&self) -> SeedJson {
        self.seed.to_json(Some(&self.symmetrizer))
    }
}

impl Serialize for FoldedSeed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// One vertex per block; `B'[I][J] = sum_{b in I} B[b][c]` for any `c` in `J`.
pub fn fold_seed(s: &Seed, sf: &SeedFolding) -> Result<FoldedSeed, FoldError> {
    sf.check_size(s)?;
    if !sf.is_invariant(s) {
        return Err(FoldError::NonInvariant);
    }
    let m = sf.blocks.len();
    let mut vertices = Vec::with_capacity(m);
    for blk in &sf.blocks {
        let rep = blk[0];
        let y = project_variable(&s.vertices()[rep].variable, sf)?;
        for &p in &blk[1..] {
            if s.vertices()[p].frozen != s.vertices()[rep].frozen
                || project_variable(&s.vertices()[p].variable, sf)? != y
            {
                return Err(FoldError::RepresentativeMismatch);
            }
        }
        vertices.push(Vertex {
            frozen: s.vertices()[rep].frozen,
            variable: y,
        });
    }
    let mut b = vec![vec![0i64; m]; m];
    for (i, bi) in sf.blocks.iter().enumerate() {
        for (j, bj) in sf.blocks.iter().enumerate() {
            let col_sum = |c: usize| bi.iter().map(|&r| s.b()[r][c]).sum::<i64>();
            let v = col_sum(bj[0]);
            if bj[1..].iter().any(|&c| col_sum(c) != v) {
                return Err(FoldError::RepresentativeMismatch);
            }
            b[i][j] = v;
        }
    }
    Ok(FoldedSeed {
        seed: Seed::new(vertices, b)?,
        symmetrizer: sf.block_sizes(),
    })
}

/// Folding commutes with mutation along `blocks`: the fold of the orbit
/// mutated seed equals the ordinary mutation of the folded seed, compared as
/// canonical seeds after every step.
pub fn check_consistency(s: &Seed, sf: &SeedFolding, blocks: &[usize]) -> Result<bool, FoldError> {
    let mut unfolded = s.clone();
    let mut folded = fold_seed(s, sf)?.seed;
    for &blk in blocks {
        unfolded = orbit_mutate(&unfolded, sf, blk)?;
        folded = folded.mutate(blk)?;
        if fold_seed(&unfolded, sf)?.seed.canonical()? != folded.canonical()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`check_consistency`] over many sequences, in input order.
pub fn check_consistency_batch(
    s: &Seed,
    sf: &SeedFolding,
    sequences: &[Vec<usize>],
    parallelism: Parallelism,
) -> Result<Vec<bool>, FoldError> {
    par::map(sequences, parallelism, |seq| check_consistency(s, sf, seq))
        .into_iter()
        .collect()
}
