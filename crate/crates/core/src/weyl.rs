//! Root systems and Weyl groups of finite type.
//!
//! Weyl group elements are stored as permutations of the full root list
//! (positive roots first, then their negatives). Length is the number of
//! positive roots sent to negative ones.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{fold_doubleprime, CartanError, CartanMatrix, FoldingData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u32>),
    #[error("letter {0} is not an orbit of the folding")]
    UnknownOrbit(u32),
}

/// A root in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
}

/// A word in the simple reflections, letters being Cartan labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReducedWord(pub Vec<u32>);

impl ReducedWord {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One folded letter expanded into the members of its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    /// Folded letter (1-based orbit number).
    pub tag: u32,
    /// 0-based position of the first letter of the run.
    pub start: usize,
    pub len: usize,
}

/// A word over the source diagram whose positions are grouped into orbit
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftedWord {
    letters: Vec<u32>,
    blocks: Vec<Block>,
}

impl LiftedWord {
    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn word(&self) -> ReducedWord {
        ReducedWord(self.letters.clone())
    }

    pub fn folded(&self) -> ReducedWord {
        ReducedWord(self.blocks.iter().map(|b| b.tag).collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement(Vec<usize>);

impl WeylElement {
    /// `(self * other)(r) = self(other(r))`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement(other.0.iter().map(|&r| self.0[r]).collect())
    }

    pub fn image(&self, root: usize) -> usize {
        self.0[root]
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Root>,
    n_pos: usize,
    simple: Vec<WeylElement>,
}

impl RootSystem {
    pub fn new(cartan: &CartanMatrix) -> Self {
        let n = cartan.rank();
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            Root(v)
        };
        let mut seen: HashSet<Root> = (0..n).map(unit).collect();
        let mut queue: VecDeque<Root> = (0..n).map(unit).collect();
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                if b == unit(i) {
                    continue;
                }
                let g = reflect(cartan, i, &b);
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        let mut pos: Vec<Root> = seen.into_iter().collect();
        pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| Root(r.0.iter().map(|c| -c).collect())));
        let index: HashMap<&Root, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let simple = (0..n)
            .map(|i| WeylElement(roots.iter().map(|r| index[&reflect(cartan, i, r)]).collect()))
            .collect();
        RootSystem {
            cartan: cartan.clone(),
            roots,
            n_pos,
            simple,
        }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement((0..self.roots.len()).collect())
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.simple[i]
    }

    fn indices(&self, w: &ReducedWord) -> Result<Vec<usize>, WeylError> {
        w.0.iter()
            .map(|&l| self.cartan.index_of(l).map_err(WeylError::from))
            .collect()
    }

    /// The element `s_{w1} s_{w2} ... s_{wk}`.
    pub fn element(&self, w: &ReducedWord) -> Result<WeylElement, WeylError> {
        Ok(self
            .indices(w)?
            .into_iter()
            .fold(self.identity(), |acc, i| acc.compose(&self.simple[i])))
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        (0..self.n_pos).filter(|&r| w.0[r] >= self.n_pos).count()
    }

    pub fn is_reduced(&self, w: &ReducedWord) -> Result<bool, WeylError> {
        Ok(self.length(&self.element(w)?) == w.len())
    }

    /// Greedy ascent from the identity: append the smallest-labelled simple
    /// reflection that raises the length until none does.
    pub fn longest_word(&self) -> ReducedWord {
        let mut order: Vec<usize> = (0..self.cartan.rank()).collect();
        order.sort_by_key(|&i| self.cartan.labels()[i]);
        let mut w = self.identity();
        let mut letters = Vec::new();
        // w(alpha_i) > 0 iff l(w s_i) > l(w); simple root i sits at index i's
        // position among positive roots, found once here
        let simple_idx: Vec<usize> = (0..self.cartan.rank())
            .map(|i| {
                self.roots
                    .iter()
                    .position(|r| r.0.iter().enumerate().all(|(j, &c)| c == i64::from(i == j)))
                    .expect("simple root present")
            })
            .collect();
        while let Some(&i) = order.iter().find(|&&i| w.0[simple_idx[i]] < self.n_pos) {
            letters.push(self.cartan.labels()[i]);
            w = w.compose(&self.simple[i]);
        }
        ReducedWord(letters)
    }

    /// Every group element, by closure under right multiplication.
    pub fn elements(&self) -> Vec<WeylElement> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for s in &self.simple {
                let ws = w.compose(s);
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
            out.push(w);
        }
        out
    }
}

/// `s_i(b) = b - <b, a_i^vee> a_i` with `<b, a_i^vee> = sum_j b_j C_ij`.
fn reflect(c: &CartanMatrix, i: usize, b: &Root) -> Root {
    let pairing: i64 = b.0.iter().enumerate().map(|(j, &bj)| bj * c.entry(i, j)).sum();
    let mut out = b.0.clone();
    out[i] -= pairing;
    Root(out)
}

pub fn positive_roots(c: &CartanMatrix) -> Vec<Root> {
    RootSystem::new(c).positive_roots().to_vec()
}

pub fn is_reduced(c: &CartanMatrix, w: &ReducedWord) -> Result<bool, WeylError> {
    RootSystem::new(c).is_reduced(w)
}

pub fn longest_word(c: &CartanMatrix) -> ReducedWord {
    RootSystem::new(c).longest_word()
}

/// Replace every folded letter by the run of its orbit members.
///
/// `w` is a word over `fold_doubleprime(f)`, whose labels are 1-based orbit
/// numbers. The lift is re-checked for reducedness in the source group.
pub fn lift_word(w: &ReducedWord, f: &FoldingData) -> Result<LiftedWord, WeylError> {
    let folded = fold_doubleprime(f);
    for &l in w.letters() {
        if l == 0 || l as usize > f.orbits().len() {
            return Err(WeylError::UnknownOrbit(l));
        }
    }
    if !RootSystem::new(&folded).is_reduced(w)? {
        return Err(WeylError::NotReduced(w.0.clone()));
    }
    let labels = f.source().labels();
    let mut letters = Vec::new();
    let mut blocks = Vec::new();
    for &l in w.letters() {
        let orbit = &f.orbits()[l as usize - 1];
        blocks.push(Block {
            tag: l,
            start: letters.len(),
            len: orbit.len(),
        });
        letters.extend(orbit.iter().map(|&i| labels[i]));
    }
    let lifted = ReducedWord(letters);
    if !RootSystem::new(f.source()).is_reduced(&lifted)? {
        return Err(WeylError::NotReduced(lifted.0));
    }
    Ok(LiftedWord {
        letters: lifted.0,
        blocks,
    })
}
