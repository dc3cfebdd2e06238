//! Cluster seeds, seed mutation and the initial seed of a reduced word.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{symmetrizer_of, CartanError, CartanMatrix};
use crate::laurent::{LaurentError, LaurentPoly, Vars};
use crate::weyl::{ReducedWord, RootSystem, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("no vertex with id {0}")]
    UnknownVertex(usize),
    #[error("exchange matrix is not square of size {0}")]
    Shape(usize),
    #[error("exchange matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("exchange at vertex {vertex} has no Laurent quotient: {source}")]
    InternalLaurentViolation { vertex: usize, source: LaurentError },
    #[error("variables of one seed live over different variable lists")]
    MixedVars,
    #[error("two vertices carry the same variable")]
    VariableCollision,
    #[error("permutation is not a bijection of {0} items")]
    NotPermutation(usize),
    #[error("automorphism mixes frozen and mutable vertices")]
    MixesFrozen,
    #[error("initial seeds need a simply-laced Cartan matrix")]
    NotSimplyLaced,
    #[error("word of length {got} is not a reduced word of the longest element (length {expected})")]
    NotLongestWord { got: usize, expected: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub frozen: bool,
    pub variable: LaurentPoly,
}

/// Exchange matrix plus one variable per vertex. Vertex ids are 1-based
/// positions in `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    vertices: Vec<Vertex>,
    b: Vec<Vec<i64>>,
}

/// A 0-based permutation of vertex (or variable) indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPerm(Vec<usize>);

impl VertexPerm {
    pub fn new(images: Vec<usize>) -> Result<Self, SeedError> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &i in &images {
            if i >= n || hit[i] {
                return Err(SeedError::NotPermutation(n));
            }
            hit[i] = true;
        }
        Ok(VertexPerm(images))
    }

    /// From 1-based vertex ids.
    pub fn from_ids(ids: &[usize]) -> Result<Self, SeedError> {
        Self::new(ids.iter().map(|&i| i.wrapping_sub(1)).collect())
    }

    pub fn identity(n: usize) -> Self {
        VertexPerm((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn compose(&self, other: &VertexPerm) -> VertexPerm {
        VertexPerm(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// Order-independent normal form used for equality up to relabelling:
/// vertices sorted by `(frozen, variable)`, matrix permuted accordingly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalSeed {
    pub vertices: Vec<(bool, LaurentPoly)>,
    pub b: Vec<Vec<i64>>,
}

impl Seed {
    pub fn new(vertices: Vec<Vertex>, b: Vec<Vec<i64>>) -> Result<Self, SeedError> {
        let n = vertices.len();
        if b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(SeedError::Shape(n));
        }
        if let Some(v0) = vertices.first() {
            if vertices.iter().any(|v| v.variable.vars() != v0.variable.vars()) {
                return Err(SeedError::MixedVars);
            }
        }
        if (0..n).any(|i| b[i][i] != 0) || skew_symmetrizer(&b).is_none() {
            return Err(SeedError::NotSkewSymmetrizable);
        }
        Ok(Seed { vertices, b })
    }

    /// Fresh generators `prefix1..prefixN` on the vertices of `b`.
    pub fn with_fresh_variables(b: Vec<Vec<i64>>, frozen: &[bool], prefix: &str) -> Result<Self, SeedError> {
        let vars = Vars::indexed(prefix, frozen.len());
        let vertices = frozen
            .iter()
            .enumerate()
            .map(|(i, &f)| Vertex {
                frozen: f,
                variable: LaurentPoly::var(&vars, i),
            })
            .collect();
        Seed::new(vertices, b)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn vertex(&self, id: usize) -> Result<&Vertex, SeedError> {
        id.checked_sub(1)
            .and_then(|i| self.vertices.get(i))
            .ok_or(SeedError::UnknownVertex(id))
    }

    /// Ids of mutable vertices, ascending.
    pub fn mutable_ids(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&id| !self.vertices[id - 1].frozen).collect()
    }

    pub fn frozen_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.frozen).count()
    }

    pub fn variables(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.vertices.iter().map(|v| &v.variable)
    }

    /// Positive `d` with `d_i B_ij = -d_j B_ji`.
    pub fn skew_symmetrizer(&self) -> Option<Vec<i64>> {
        skew_symmetrizer(&self.b)
    }

    /// Fomin-Zelevinsky mutation at vertex `id` (column convention).
    pub fn mutate(&self, id: usize) -> Result<Seed, SeedError> {
        let k = id.checked_sub(1).filter(|&k| k < self.len()).ok_or(SeedError::UnknownVertex(id))?;
        if self.vertices[k].frozen {
            return Err(SeedError::FrozenVertex(id));
        }
        let vars = self.vertices[k].variable.vars().clone();
        let mut pos = LaurentPoly::one(&vars);
        let mut neg = LaurentPoly::one(&vars);
        for (i, v) in self.vertices.iter().enumerate() {
            let e = self.b[i][k];
            if e > 0 {
                pos = &pos * &v.variable.pow(e as u32);
            } else if e < 0 {
                neg = &neg * &v.variable.pow((-e) as u32);
            }
        }
        let fresh = (&pos + &neg)
            .div_exact(&self.vertices[k].variable)
            .map_err(|source| SeedError::InternalLaurentViolation { vertex: id, source })?;

        let n = self.len();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                b[i][j] = if i == k || j == k {
                    -self.b[i][j]
                } else {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    self.b[i][j] + bik.signum() * (bik * bkj).max(0)
                };
            }
        }
        let mut vertices = self.vertices.clone();
        vertices[k].variable = fresh;
        Ok(Seed { vertices, b })
    }

    pub fn mutate_sequence(&self, ids: &[usize]) -> Result<Seed, SeedError> {
        ids.iter().try_fold(self.clone(), |s, &id| s.mutate(id))
    }

    /// Move vertex `i` to `sigma(i)` and rename variable `j` to `var_map(j)`.
    pub fn apply_automorphism(&self, sigma: &VertexPerm, var_map: &VertexPerm) -> Result<Seed, SeedError> {
        let n = self.len();
        if sigma.len() != n {
            return Err(SeedError::NotPermutation(n));
        }
        let nvars = self.vertices.first().map_or(0, |v| v.variable.vars().len());
        if var_map.len() != nvars {
            return Err(SeedError::NotPermutation(nvars));
        }
        if (0..n).any(|i| self.vertices[i].frozen != self.vertices[sigma.apply(i)].frozen) {
            return Err(SeedError::MixesFrozen);
        }
        let mut vertices = self.vertices.clone();
        let mut b = vec![vec![0; n]; n];
        for i in 0..n {
            vertices[sigma.apply(i)] = Vertex {
                frozen: self.vertices[i].frozen,
                variable: self.vertices[i].variable.permute_vars(var_map.images()),
            };
            for j in 0..n {
                b[sigma.apply(i)][sigma.apply(j)] = self.b[i][j];
            }
        }
        Ok(Seed { vertices, b })
    }

    /// Invariance up to the canonical vertex matching.
    pub fn is_invariant(&self, sigma: &VertexPerm, var_map: &VertexPerm) -> bool {
        match (self.apply_automorphism(sigma, var_map), self.canonical()) {
            (Ok(moved), Ok(c)) => moved.canonical().is_ok_and(|m| m == c),
            _ => false,
        }
    }

    /// Stricter than [`Seed::is_invariant`]: vertex `sigma(i)` must carry
    /// exactly the image of vertex `i`.
    pub fn is_invariant_in_place(&self, sigma: &VertexPerm, var_map: &VertexPerm) -> bool {
        self.apply_automorphism(sigma, var_map).is_ok_and(|m| m == *self)
    }

    /// The sorting permutation: `order[r]` is the vertex index at rank `r`.
    pub fn canonical_order(&self) -> Result<Vec<usize>, SeedError> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let (va, vb) = (&self.vertices[a], &self.vertices[b]);
            (va.frozen, &va.variable).cmp(&(vb.frozen, &vb.variable))
        });
        if order
            .windows(2)
            .any(|w| self.vertices[w[0]].variable == self.vertices[w[1]].variable)
        {
            return Err(SeedError::VariableCollision);
        }
        Ok(order)
    }

    pub fn canonical(&self) -> Result<CanonicalSeed, SeedError> {
        let order = self.canonical_order()?;
        Ok(CanonicalSeed {
            vertices: order
                .iter()
                .map(|&i| (self.vertices[i].frozen, self.vertices[i].variable.clone()))
                .collect(),
            b: order.iter().map(|&i| order.iter().map(|&j| self.b[i][j]).collect()).collect(),
        })
    }

    /// Reorder vertices: the new vertex `r` is the old vertex `order[r]`.
    pub fn reorder(&self, order: &[usize]) -> Seed {
        Seed {
            vertices: order.iter().map(|&i| self.vertices[i].clone()).collect(),
            b: order.iter().map(|&i| order.iter().map(|&j| self.b[i][j]).collect()).collect(),
        }
    }

    pub fn to_json(&self, symmetrizer: Option<&[i64]>) -> SeedJson {
        SeedJson {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| VertexJson {
                    id: i + 1,
                    frozen: v.frozen,
                    variable: v.variable.clone(),
                })
                .collect(),
            b: self.b.clone(),
            symmetrizer: symmetrizer.map(<[i64]>::to_vec),
        }
    }
}

pub(crate) fn skew_symmetrizer(b: &[Vec<i64>]) -> Option<Vec<i64>> {
    symmetrizer_of(b, |a, c| a == -c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub frozen: bool,
    pub variable: LaurentPoly,
}

/// Wire form of a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub vertices: Vec<VertexJson>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<i64>>,
}

impl TryFrom<SeedJson> for Seed {
    type Error = SeedError;
    fn try_from(j: SeedJson) -> Result<Self, SeedError> {
        let mut vs = j.vertices;
        vs.sort_by_key(|v| v.id);
        if vs.iter().enumerate().any(|(i, v)| v.id != i + 1) {
            return Err(SeedError::Shape(vs.len()));
        }
        Seed::new(
            vs.into_iter()
                .map(|v| Vertex {
                    frozen: v.frozen,
                    variable: v.variable,
                })
                .collect(),
            j.b,
        )
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json(None).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        Seed::try_from(SeedJson::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// Positions of a word with their successors (`b+`: next position carrying
/// the same letter). Positions without a successor are frozen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSeedLayout {
    letters: Vec<u32>,
    successor: Vec<Option<usize>>,
}

impl WordSeedLayout {
    pub fn new(word: &ReducedWord) -> Self {
        let letters = word.letters().to_vec();
        let successor = (0..letters.len())
            .map(|b| (b + 1..letters.len()).find(|&c| letters[c] == letters[b]))
            .collect();
        WordSeedLayout { letters, successor }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// 0-based successor of 0-based position `b`.
    pub fn successor(&self, b: usize) -> Option<usize> {
        self.successor[b]
    }

    pub fn is_frozen(&self, b: usize) -> bool {
        self.successor[b].is_none()
    }

    pub fn frozen(&self) -> Vec<bool> {
        self.successor.iter().map(Option::is_none).collect()
    }

    /// Exchange matrix of the word seed: for `b < c`, `B_bc = 1` when
    /// `c = b+`, `B_bc = C[i_b][i_c]` when `b < c < b+ < c+` (a missing
    /// successor counts as infinity and infinity < infinity is false), else 0;
    /// `B_cb = -B_bc`.
    pub fn exchange_matrix(&self, c: &CartanMatrix) -> Result<Vec<Vec<i64>>, SeedError> {
        let k = self.letters.len();
        let idx: Vec<usize> = self
            .letters
            .iter()
            .map(|&l| c.index_of(l))
            .collect::<Result<_, _>>()?;
        let mut b = vec![vec![0i64; k]; k];
        for p in 0..k {
            for q in p + 1..k {
                let bp = self.successor[p];
                let bq = self.successor[q];
                let v = if bp == Some(q) {
                    1
                } else {
                    let q_before_bp = bp.is_none_or(|s| q < s);
                    let bp_before_bq = match (bp, bq) {
                        (Some(s), Some(t)) => s < t,
                        (Some(_), None) => true,
                        (None, _) => false,
                    };
                    if q_before_bp && bp_before_bq {
                        c.entry(idx[p], idx[q])
                    } else {
                        0
                    }
                };
                b[p][q] = v;
                b[q][p] = -v;
            }
        }
        Ok(b)
    }
}

/// The seed attached to a reduced word of the longest element of a
/// simply-laced Weyl group: one vertex per position, named `x1..xk`.
pub fn initial_seed(c: &CartanMatrix, w: &ReducedWord) -> Result<Seed, SeedError> {
    if !c.is_simply_laced() {
        return Err(SeedError::NotSimplyLaced);
    }
    let rs = RootSystem::new(c);
    let expected = rs.positive_roots().len();
    if w.len() != expected || !rs.is_reduced(w)? {
        return Err(SeedError::NotLongestWord { got: w.len(), expected });
    }
    let layout = WordSeedLayout::new(w);
    let b = layout.exchange_matrix(c)?;
    Seed::with_fresh_variables(b, &layout.frozen(), "x")
}
