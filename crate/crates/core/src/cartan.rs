//! Cartan matrices of finite type, admissible diagram automorphisms and the
//! two folding constructions.
//!
//! Convention: `C[i][j] = 2(a_i, a_j) / (a_i, a_i)`. With it, folding `A_{2n-1}`
//! by its flip gives `B_n` under [`fold_prime`] and `C_n` under
//! [`fold_doubleprime`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("invalid Dynkin type `{0}`")]
    InvalidType(String),
    #[error("matrix is not square or does not match its {0} labels")]
    Shape(usize),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(u32),
    #[error("unknown vertex label {0}")]
    UnknownLabel(u32),
    #[error("diagonal entry at {0} is not 2")]
    Diagonal(u32),
    #[error("off-diagonal entry ({0}, {1}) is positive or has an asymmetric zero pattern")]
    OffDiagonal(u32, u32),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("matrix is not of finite type")]
    NotFiniteType,
    #[error("source matrix is not simply-laced")]
    NotSimplyLaced,
    #[error("permutation is not a bijection of the label set")]
    NotBijection,
    #[error("permutation is not a diagram automorphism")]
    NotAutomorphism,
    #[error("automorphism is not admissible: {0} and {1} share an orbit and are adjacent")]
    NotAdmissible(u32, u32),
    #[error("no unfolding found for {0}")]
    NoUnfolding(TypeLabel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

/// A finite Dynkin type such as `A3` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeLabel {
    family: Family,
    rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self, CartanError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(TypeLabel { family, rank })
        } else {
            Err(CartanError::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        self.family.is_simply_laced()
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CartanError::InvalidType(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank = digits.parse().map_err(|_| bad())?;
        TypeLabel::new(family, rank).map_err(|_| bad())
    }
}

/// Integer Cartan matrix of finite type, indexed by an ordered list of labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CartanJson")]
pub struct CartanMatrix {
    labels: Vec<u32>,
    entries: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct CartanJson {
    labels: Vec<u32>,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<CartanJson> for CartanMatrix {
    type Error = CartanError;
    fn try_from(j: CartanJson) -> Result<Self, Self::Error> {
        CartanMatrix::new(j.labels, j.entries)
    }
}

impl CartanMatrix {
    /// Validates the Cartan axioms, symmetrizability and finite type.
    pub fn new(labels: Vec<u32>, entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(CartanError::Shape(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(CartanError::DuplicateLabel(*l));
            }
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(CartanError::Diagonal(labels[i]));
            }
            for j in 0..n {
                if i != j && (entries[i][j] > 0 || (entries[i][j] == 0) != (entries[j][i] == 0)) {
                    return Err(CartanError::OffDiagonal(labels[i], labels[j]));
                }
            }
        }
        let c = CartanMatrix { labels, entries };
        if c.symmetrizer().is_none() {
            return Err(CartanError::NotSymmetrizable);
        }
        if !c.leading_minors_positive() {
            return Err(CartanError::NotFiniteType);
        }
        Ok(c)
    }

    /// Standard matrix of type `t`, labels `1..=rank` in Bourbaki order.
    pub fn from_type(t: TypeLabel) -> Self {
        let n = t.rank;
        let mut e = vec![vec![0i64; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            e[i - 1][j - 1] = -1;
            e[j - 1][i - 1] = -1;
        };
        match t.family {
            Family::A | Family::B | Family::C => {
                for i in 1..n {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 1..n - 1 {
                    link(i, i + 1);
                }
                link(n - 2, n);
            }
            Family::E => {
                link(1, 3);
                link(2, 4);
                for i in 3..n {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(1, 2);
                link(2, 3);
                link(3, 4);
            }
            Family::G => link(1, 2),
        }
        match t.family {
            Family::B => e[n - 1][n - 2] = -2,
            Family::C => e[n - 2][n - 1] = -2,
            Family::F => e[2][1] = -2,
            Family::G => e[1][0] = -3,
            _ => {}
        }
        CartanMatrix::new((1..=n as u32).collect(), e).expect("standard Cartan matrix")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn index_of(&self, label: u32) -> Result<usize, CartanError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(CartanError::UnknownLabel(label))
    }

    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || matches!(self.entries[i][j], 0 | -1)))
    }

    pub fn transpose(&self) -> Self {
        let n = self.rank();
        CartanMatrix {
            labels: self.labels.clone(),
            entries: (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect(),
        }
    }

    /// Block-diagonal sum; the labels of `other` are shifted past `self`'s.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.rank();
        let m = other.rank();
        let offset = self.labels.iter().copied().max().unwrap_or(0);
        let mut entries = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            entries[i][..n].copy_from_slice(&self.entries[i]);
        }
        for i in 0..m {
            entries[n + i][n..].copy_from_slice(&other.entries[i]);
        }
        let labels = self
            .labels
            .iter()
            .copied()
            .chain(other.labels.iter().map(|l| l + offset))
            .collect();
        CartanMatrix { labels, entries }
    }

    /// Positive integers `d` with `d_i C_ij = d_j C_ji`, smallest per component.
    pub fn symmetrizer(&self) -> Option<Vec<i64>> {
        symmetrizer_of(&self.entries, |a, b| a == b)
    }

    fn leading_minors_positive(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let minor: Vec<Vec<i64>> = self.entries[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&minor).is_positive()
        })
    }

    /// Index permutation `p` with `other[p(i)][p(j)] == self[i][j]`, if any.
    pub fn isomorphism_to(&self, other: &Self) -> Option<Vec<usize>> {
        if self.rank() != other.rank() {
            return None;
        }
        let mut out = Vec::new();
        search_maps(&self.entries, &other.entries, true, &mut out);
        out.into_iter().next()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// All diagram automorphisms as index permutations, lexicographic by image.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        search_maps(&self.entries, &self.entries, false, &mut out);
        out
    }
}

/// Shared by Cartan and exchange matrices: `rel(d_i m_ij, d_j m_ji)` must hold
/// for every pair, propagating `d` through each connected component.
pub(crate) fn symmetrizer_of(m: &[Vec<i64>], rel: impl Fn(i64, i64) -> bool) -> Option<Vec<i64>> {
    let n = m.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().expect("set");
            for j in 0..n {
                if i == j || m[i][j] == 0 {
                    continue;
                }
                if m[j][i] == 0 {
                    return None;
                }
                // d_j = d_i m_ij / m_ji up to sign, which rel() checks below
                let dj = (&di * BigInt::from(m[i][j]) / BigInt::from(m[j][i])).abs();
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                        comp.push(j);
                    }
                    Some(prev) if *prev != dj => return None,
                    Some(_) => {}
                }
            }
        }
        let lcm = comp
            .iter()
            .map(|&i| d[i].as_ref().expect("set").denom().clone())
            .fold(BigInt::one(), |a, b| a.lcm(&b));
        for &i in &comp {
            let v = d[i].as_ref().expect("set") * &lcm;
            d[i] = Some(v);
        }
        let g = comp
            .iter()
            .map(|&i| d[i].as_ref().expect("set").numer().clone())
            .fold(BigInt::zero(), |a, b| a.gcd(&b));
        for &i in &comp {
            let v = d[i].as_ref().expect("set") / BigRational::from_integer(g.clone());
            d[i] = Some(v);
        }
    }
    let d: Vec<i64> = d
        .into_iter()
        .map(|v| v.expect("set").to_integer().to_i64())
        .collect::<Option<_>>()?;
    for i in 0..n {
        for j in 0..n {
            if i != j && !rel(d[i] * m[i][j], d[j] * m[j][i]) {
                return None;
            }
        }
    }
    Some(d)
}

/// Exact determinant by rational elimination.
pub(crate) fn determinant(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= &piv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &piv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Backtracking search for bijections `p` with `to[p i][p j] == from[i][j]`.
fn search_maps(from: &[Vec<i64>], to: &[Vec<i64>], first_only: bool, out: &mut Vec<Vec<usize>>) {
    fn go(
        from: &[Vec<i64>],
        to: &[Vec<i64>],
        first_only: bool,
        map: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = map.len();
        if i == from.len() {
            out.push(map.clone());
            return;
        }
        for cand in 0..to.len() {
            if used[cand] || to[cand][cand] != from[i][i] {
                continue;
            }
            let ok = (0..i).all(|j| to[cand][map[j]] == from[i][j] && to[map[j]][cand] == from[j][i]);
            if !ok {
                continue;
            }
            used[cand] = true;
            map.push(cand);
            go(from, to, first_only, map, used, out);
            map.pop();
            used[cand] = false;
            if first_only && !out.is_empty() {
                return;
            }
        }
    }
    let mut used = vec![false; to.len()];
    go(from, to, first_only, &mut Vec::new(), &mut used, out);
}

/// An admissible automorphism of a simply-laced Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoldingData {
    source: CartanMatrix,
    perm: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    order: usize,
}

impl FoldingData {
    /// `perm[i]` is the index image of source index `i`.
    pub fn new(source: CartanMatrix, perm: Vec<usize>) -> Result<Self, CartanError> {
        if !source.is_simply_laced() {
            return Err(CartanError::NotSimplyLaced);
        }
        if !check_admissible(&source, &perm)? {
            let n = source.rank();
            if (0..n).any(|i| (0..n).any(|j| source.entries[perm[i]][perm[j]] != source.entries[i][j])) {
                return Err(CartanError::NotAutomorphism);
            }
            let orbits = orbits_of(&source, &perm);
            for o in &orbits {
                for &i in o {
                    for &j in o {
                        if i != j && source.entries[i][j] != 0 {
                            return Err(CartanError::NotAdmissible(source.labels[i], source.labels[j]));
                        }
                    }
                }
            }
        }
        let orbits = orbits_of(&source, &perm);
        let order = orbits.iter().map(Vec::len).fold(1usize, |a, b| a.lcm(&b));
        Ok(FoldingData {
            source,
            perm,
            orbits,
            order,
        })
    }

    pub fn identity(source: CartanMatrix) -> Result<Self, CartanError> {
        let perm = (0..source.rank()).collect();
        Self::new(source, perm)
    }

    /// Build from cycles written with source labels, e.g. `&[&[1, 3]]`.
    pub fn from_cycles(source: CartanMatrix, cycles: &[&[u32]]) -> Result<Self, CartanError> {
        let mut perm: Vec<usize> = (0..source.rank()).collect();
        let mut seen = vec![false; source.rank()];
        for cyc in cycles {
            for (k, &l) in cyc.iter().enumerate() {
                let i = source.index_of(l)?;
                if seen[i] {
                    return Err(CartanError::NotBijection);
                }
                seen[i] = true;
                perm[i] = source.index_of(cyc[(k + 1) % cyc.len()])?;
            }
        }
        Self::new(source, perm)
    }

    pub fn source(&self) -> &CartanMatrix {
        &self.source
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Orbits as source indices: sorted by their smallest label, members
    /// ascending by label.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Orbits written with source labels.
    pub fn orbit_labels(&self) -> Vec<Vec<u32>> {
        self.orbits
            .iter()
            .map(|o| o.iter().map(|&i| self.source.labels[i]).collect())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Orbit position (0-based) of a source index.
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbits.iter().position(|o| o.contains(&i)).expect("orbits partition the source")
    }

    /// Label images, for reporting.
    pub fn perm_labels(&self) -> Vec<u32> {
        self.perm.iter().map(|&p| self.source.labels[p]).collect()
    }
}

fn orbits_of(c: &CartanMatrix, perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut o = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            o.push(i);
            i = perm[i];
        }
        o.sort_by_key(|&i| c.labels[i]);
        orbits.push(o);
    }
    orbits.sort_by_key(|o| c.labels[o[0]]);
    orbits
}

/// True iff `perm` is a diagram automorphism whose orbits contain no
/// adjacent pair. Errors when `perm` is not a bijection of the index set.
pub fn check_admissible(c: &CartanMatrix, perm: &[usize]) -> Result<bool, CartanError> {
    let n = c.rank();
    if perm.len() != n {
        return Err(CartanError::NotBijection);
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || hit[p] {
            return Err(CartanError::NotBijection);
        }
        hit[p] = true;
    }
    if (0..n).any(|i| (0..n).any(|j| c.entries[perm[i]][perm[j]] != c.entries[i][j])) {
        return Ok(false);
    }
    Ok(orbits_of(c, perm)
        .iter()
        .all(|o| o.iter().all(|&i| o.iter().all(|&j| i == j || c.entries[i][j] == 0))))
}

fn fold_with(f: &FoldingData, divide_by_row: bool) -> CartanMatrix {
    let m = f.orbits.len();
    let mut entries = vec![vec![0i64; m]; m];
    for (a, oi) in f.orbits.iter().enumerate() {
        for (b, oj) in f.orbits.iter().enumerate() {
            let sum: i64 = oi
                .iter()
                .flat_map(|&i| oj.iter().map(move |&j| (i, j)))
                .map(|(i, j)| f.source.entries[i][j])
                .sum();
            let size = if divide_by_row { oi.len() } else { oj.len() } as i64;
            assert_eq!(sum % size, 0, "admissible folding yields integral entries");
            entries[a][b] = sum / size;
        }
    }
    CartanMatrix::new((1..=m as u32).collect(), entries).expect("folding yields a finite-type Cartan matrix")
}

/// `C'_{IJ} = (1/#I) sum_{(i,j) in I x J} C_ij`, indexed by orbit number.
pub fn fold_prime(f: &FoldingData) -> CartanMatrix {
    fold_with(f, true)
}

/// `C''_{IJ} = (1/#J) sum_{(i,j) in I x J} C_ij`, indexed by orbit number.
pub fn fold_doubleprime(f: &FoldingData) -> CartanMatrix {
    fold_with(f, false)
}

/// A simply-laced source and admissible automorphism whose `fold_doubleprime`
/// is isomorphic to the matrix of `t`.
///
/// Simply-laced types return their identity folding. Otherwise sources are
/// tried by increasing rank up to `4 * rank(t)`, families in letter order,
/// automorphisms in lexicographic order; the first match wins.
pub fn find_unfolding(t: TypeLabel) -> Result<FoldingData, CartanError> {
    let target = CartanMatrix::from_type(t);
    if t.is_simply_laced() {
        return FoldingData::identity(target);
    }
    for rank in t.rank..=4 * t.rank {
        for family in [Family::A, Family::D, Family::E] {
            let Ok(src_type) = TypeLabel::new(family, rank) else {
                continue;
            };
            let src = CartanMatrix::from_type(src_type);
            for perm in src.automorphisms() {
                let Ok(f) = FoldingData::new(src.clone(), perm) else {
                    continue;
                };
                if f.orbits.len() == t.rank && fold_doubleprime(&f).is_isomorphic(&target) {
                    return Ok(f);
                }
            }
        }
    }
    Err(CartanError::NoUnfolding(t))
}

/// Name of the simply-laced type of a connected source matrix, when it is a
/// standard one. Used for reports.
pub fn identify_type(c: &CartanMatrix) -> Option<TypeLabel> {
    let n = c.rank();
    [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G]
        .into_iter()
        .filter_map(|f| TypeLabel::new(f, n).ok())
        .find(|t| CartanMatrix::from_type(*t).is_isomorphic(c))
}
