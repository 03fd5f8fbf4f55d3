//! Sparse multivariate polynomials over [`CycNum`] coefficients.
//!
//! Variables may come in conjugate pairs (`z` and `zb` standing for a complex
//! coordinate and its conjugate); unpaired variables are real-type and fixed
//! by conjugation. Terms are kept in graded-lexicographic order, which makes
//! printing canonical and comparisons deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed};
use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::linear::LinearMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("unknown variable `{0}` in conjugate pair")]
    UnknownPairMember(String),
    #[error("variable `{0}` cannot be its own conjugate")]
    SelfPair(String),
    #[error("variable `{0}` appears in more than one conjugate pair")]
    ConflictingPair(String),
}

/// Ordered variable names plus the conjugation pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    conj: Vec<Option<usize>>,
}

impl VarTable {
    pub fn new(names: &[&str]) -> Result<Arc<Self>, TableError> {
        Self::with_pairs(names, &[])
    }

    /// Builds a table where each `(a, b)` entry marks `a` and `b` as a
    /// conjugate pair. The pairing must be an involution without fixed
    /// points.
    pub fn with_pairs(names: &[&str], pairs: &[(&str, &str)]) -> Result<Arc<Self>, TableError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(TableError::DuplicateName(n.clone()));
            }
        }
        let mut conj = vec![None; names.len()];
        for (a, b) in pairs {
            let ia = names
                .iter()
                .position(|n| n == a)
                .ok_or_else(|| TableError::UnknownPairMember(a.to_string()))?;
            let ib = names
                .iter()
                .position(|n| n == b)
                .ok_or_else(|| TableError::UnknownPairMember(b.to_string()))?;
            if ia == ib {
                return Err(TableError::SelfPair(a.to_string()));
            }
            for (idx, other) in [(ia, ib), (ib, ia)] {
                match conj[idx] {
                    None => conj[idx] = Some(other),
                    Some(existing) if existing == other => {}
                    Some(_) => return Err(TableError::ConflictingPair(names[idx].clone())),
                }
            }
        }
        Ok(Arc::new(VarTable { names, conj }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The conjugate partner of variable `i`, if it is paired.
    pub fn conj_of(&self, i: usize) -> Option<usize> {
        self.conj[i]
    }

    /// The conjugation involution extended by the identity on real-type
    /// variables.
    pub fn conj_involution(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.conj[i].unwrap_or(i)).collect()
    }
}

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Weighted degree under one integer weight vector.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
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

/// Sparse polynomial; no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, CycNum>,
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, CycNum::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: CycNum) -> Self {
        let mut p = Self::zero(table);
        p.add_term(Monomial::unit(table.len()), c);
        p
    }

    pub fn variable(table: &Arc<VarTable>, index: usize) -> Self {
        assert!(index < table.len(), "variable index out of range");
        let mut exps = vec![0; table.len()];
        exps[index] = 1;
        let mut p = Self::zero(table);
        p.add_term(Monomial(exps), CycNum::one());
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> CycNum {
        self.terms.get(mono).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// True when every term has the same total degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    fn add_term(&mut self, mono: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_table(&self, other: &Poly) {
        assert!(self.table == other.table, "mismatched variable table");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_table(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_table(other);
        let mut out = Self::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Self::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Complex conjugation: conjugates coefficients and swaps exponents of
    /// paired variables.
    pub fn conj(&self) -> Poly {
        let inv = self.table.conj_involution();
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let exps: Vec<u32> = (0..self.table.len()).map(|i| m.0[inv[i]]).collect();
            out.add_term(Monomial(exps), c.conj());
        }
        out
    }

    /// Substitutes the image column of each variable, i.e. computes `p ∘ L`.
    pub fn substitute_linear(&self, map: &LinearMap) -> Poly {
        assert!(self.table == *map.table(), "mismatched variable table");
        let images: Vec<Poly> = (0..self.table.len()).map(|j| map.image_of(j)).collect();
        self.compose(&images)
    }

    /// Substitutes `images[j]` for variable `j`; all images must share one
    /// table, which becomes the table of the result.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(
            images.len(),
            self.table.len(),
            "one image per variable required"
        );
        let target = if let Some(first) = images.first() {
            for im in images {
                first.check_table(im);
            }
            first.table.clone()
        } else {
            self.table.clone()
        };
        // Cache powers of each image as they are needed.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|im| vec![Poly::one(&target), im.clone()])
            .collect();
        let power = |j: usize, e: u32, powers: &mut Vec<Vec<Poly>>| -> Poly {
            while powers[j].len() <= e as usize {
                let next = powers[j].last().unwrap().mul(&images[j]);
                powers[j].push(next);
            }
            powers[j][e as usize].clone()
        };
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&power(j, e, &mut powers));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Keeps the terms of total degree at most `d`.
    pub fn grade_truncate(&self, d: u32) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading (largest) monomial in graded-lex order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 1 {
                parts.push(self.table.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.table.name(i), e));
            }
        }
        parts.join("*")
    }
}

/// Canonical printing: terms in decreasing graded-lex order, coefficients in
/// cyclotomic canonical form. The output reparses to the same polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = self.fmt_monomial(m);
            let (negative, body) = match c.as_rational() {
                Some(q) => {
                    let mag = q.abs();
                    let body = if mono.is_empty() {
                        format!("{mag}")
                    } else if mag.is_one() {
                        // A leading "-x^2" would reparse as (-x)^2, so spell
                        // the unit coefficient out in that one position.
                        let first_exp = m.0.iter().find(|&&e| e > 0).copied().unwrap_or(0);
                        if first && q.is_negative() && first_exp > 1 {
                            format!("1*{mono}")
                        } else {
                            mono
                        }
                    } else {
                        format!("{mag}*{mono}")
                    };
                    (q.is_negative(), body)
                }
                None => {
                    let body = if mono.is_empty() {
                        format!("({c})")
                    } else {
                        format!("({c})*{mono}")
                    };
                    (false, body)
                }
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}
