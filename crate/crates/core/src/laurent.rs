//! Exact multivariate Laurent polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so structural equality is mathematical equality and
//! the derived `Ord` gives a deterministic total order on polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },
    #[error("no exact Laurent quotient exists")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` has no image")]
    Unmapped(String),
    #[error("image of `{0}` is not invertible but the variable occurs with a negative exponent")]
    NotInvertible(String),
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
}

/// An ordered, shared list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(LaurentError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Vars(names.into()))
    }

    /// `prefix1, prefix2, ..., prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Vars((1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn zero(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self <= other`.
    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Vars, c: BigRational) -> Self {
        Self::monomial(vars, Monomial::zero(vars.len()), c)
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The generator `vars[i]`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, Monomial::new(e), BigRational::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Build from `(coefficient, exponents)` pairs; like terms are combined.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (BigRational, Vec<i32>)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            if e.len() != vars.len() {
                return Err(LaurentError::ExponentLength {
                    got: e.len(),
                    expected: vars.len(),
                });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// A single nonzero term, which makes the polynomial a unit.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.vars != other.vars {
            return Err(LaurentError::VarMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^shift` (exponents may be negative).
    pub fn shift(&self, shift: &Monomial) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(shift), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    /// Zero for the zero polynomial.
    pub fn min_exponents(&self) -> Monomial {
        let n = self.vars.len();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::zero(n);
        };
        let mut min = first.0.to_vec();
        for m in it {
            for (a, b) in min.iter_mut().zip(m.0.iter()) {
                *a = (*a).min(*b);
            }
        }
        Monomial::new(min)
    }

    /// Exact quotient `self / q` in the Laurent polynomial ring.
    ///
    /// Both operands are first stripped of their monomial content; since the
    /// variables are primes of the polynomial ring, a Laurent quotient exists
    /// iff the stripped divisor divides the stripped dividend as ordinary
    /// polynomials. That is decided by graded-lex leading-term division.
    pub fn div_exact(&self, q: &Self) -> Result<Self, LaurentError> {
        self.check_vars(q)?;
        if q.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let mp = self.min_exponents();
        let mq = q.min_exponents();
        let neg = |m: &Monomial| Monomial(m.0.iter().map(|e| -e).collect());
        let p0 = self.shift(&neg(&mp));
        let q0 = q.shift(&neg(&mq));

        if q0.is_monomial() {
            // Unit divisor: only the coefficient is left.
            let (_, c) = q0.leading_term().expect("nonzero");
            return Ok(p0.scale(&c.recip()).shift(&mp.div(&mq)));
        }

        let (lm_q, lc_q) = q0.leading_term().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let mut rem = p0;
        let mut quot = Self::zero(&self.vars);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            if !lm_q.divides(lm_r) {
                return Err(LaurentError::NotDivisible);
            }
            let m = lm_r.div(&lm_q);
            let c = lc_r / &lc_q;
            for (mb, cb) in &q0.terms {
                rem.add_term(mb.mul(&m), -(&c * cb));
            }
            quot.add_term(m, c);
        }
        Ok(quot.shift(&mp.div(&mq)))
    }

    /// Ring homomorphism sending each variable to its image in `map`.
    ///
    /// Every image must live over `target`. Variables that occur with a
    /// negative exponent must map to monomials.
    pub fn substitute(
        &self,
        target: &Vars,
        map: &HashMap<String, LaurentPoly>,
    ) -> Result<Self, LaurentError> {
        let mut images = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let img = map
                .get(name)
                .ok_or_else(|| LaurentError::Unmapped(name.clone()))?;
            if img.vars != *target {
                return Err(LaurentError::VarMismatch {
                    left: img.vars.names().to_vec(),
                    right: target.names().to_vec(),
                });
            }
            images.push(img);
        }

        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut mono = Monomial::zero(target.len());
            let mut coeff = c.clone();
            let mut rest: Option<LaurentPoly> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i];
                if img.is_zero() {
                    if e < 0 {
                        return Err(LaurentError::NotInvertible(self.vars.names()[i].clone()));
                    }
                    coeff = BigRational::zero();
                    break;
                }
                if img.is_monomial() {
                    let (im, ic) = img.leading_term().expect("monomial");
                    for (a, b) in mono.0.iter_mut().zip(im.0.iter()) {
                        *a += b * e;
                    }
                    coeff *= ic.pow(e);
                } else if e < 0 {
                    return Err(LaurentError::NotInvertible(self.vars.names()[i].clone()));
                } else {
                    let pw = img.pow(e as u32);
                    rest = Some(match rest {
                        None => pw,
                        Some(r) => &r * &pw,
                    });
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let head = Self::monomial(target, mono, coeff);
            let term = match rest {
                None => head,
                Some(r) => &head * &r,
            };
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Rename variables by index: the variable at index `i` becomes the one
    /// at index `perm[i]` over the same variable list.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vars.len());
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; m.0.len()];
                    for (i, &x) in m.0.iter().enumerate() {
                        e[perm[i]] = x;
                    }
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    /// Panics on mismatched variable lists; use `try_add` to handle that.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("mismatched variable lists")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("mismatched variable lists")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("mismatched variable lists")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigRational::one())
    }
}

pub fn format_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, LaurentError> {
    let bad = || LaurentError::BadCoefficient(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.names()[i], e)),
                }
            }
            let (sign, abs) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { format!("({abs})") };
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: format_rational(c),
                    exps: m.0.to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = LaurentJson::deserialize(d)?;
        let vars = Vars::new(raw.vars).map_err(D::Error::custom)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| parse_rational(&t.coeff).map(|c| (c, t.exps)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        LaurentPoly::from_terms(&vars, terms).map_err(D::Error::custom)
    }
}
