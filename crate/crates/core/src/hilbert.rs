//! Transfer of generating sets: from a generating set of the `H`-invariant
//! ring to one of the `Γ`-invariant ring.
//!
//! For index 2 the generators are `R_0(u_i)` together with the pairwise
//! products `R_1(u_i)R_1(u_j)`. For general index `m` they are `R_0(u_i)`
//! together with the products `Π R_j(u_i)^{α_ji}` whose class
//! multiplicities `α(j) = Σ_i α_ji` satisfy `Σ_j j·α(j) ≡ 0 (mod m)`.
//! Only minimal exponent patterns are emitted: any valid product factors
//! through minimal ones, and a pigeonhole argument on partial sums mod `m`
//! bounds minimal patterns by total multiplicity `m`, so a bounded
//! exhaustive search is complete.

use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::group::GroupSpec;
use crate::poly::{Poly, VarTable};
use crate::reynolds::reynolds;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("the pairwise construction requires index m = 2 (got m = {m}); use the general construction")]
    IndexNotTwo { m: u64 },
}

/// The three bivariate polynomials expressing symmetric power combinations
/// of a quantity `u` and its coset image `δu` through `a = (u + δu)/2` and
/// `b = ((u - δu)/2)^2`:
///
/// * `power_sum` gives `u^t + δu^t`,
/// * `full_sum` gives `Σ_{k=0}^{t} u^k δu^{t-k}`,
/// * `difference_quotient` gives `(u^t - δu^t) / ((u - δu)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPowers {
    pub power_sum: Poly,
    pub full_sum: Poly,
    pub difference_quotient: Poly,
}

/// Computes the degree-`t` polynomials of [`PairPowers`] in abstract
/// variables `a`, `b`, by the recurrences
///
/// ```text
/// F_t = 2a·F_{t-1} - (a² - b)·F_{t-2},      F_0 = 2, F_1 = 2a
/// G_t = F_t + (a² - b)·G_{t-2},             G_0 = 1, G_1 = 2a
/// H_t = 2·G_{t-1},                          H_0 = 0
/// ```
///
/// using `u + δu = 2a` and `u·δu = a² - b`.
pub fn pair_power_polys(t: u32) -> PairPowers {
    let table = VarTable::new(&["a", "b"]).unwrap();
    let a = Poly::variable(&table, 0);
    let b = Poly::variable(&table, 1);
    let two_a = a.scale(&CycNum::from_integer(2));
    let prod = a.pow(2).sub(&b); // u·δu
    let mut f = vec![
        Poly::constant(&table, CycNum::from_integer(2)),
        two_a.clone(),
    ];
    let mut g = vec![Poly::one(&table), two_a.clone()];
    for i in 2..=t as usize {
        let fi = two_a.mul(&f[i - 1]).sub(&prod.mul(&f[i - 2]));
        f.push(fi);
        let gi = f[i].add(&prod.mul(&g[i - 2]));
        g.push(gi);
    }
    let h = if t == 0 {
        Poly::zero(&table)
    } else {
        g[t as usize - 1].scale(&CycNum::from_integer(2))
    };
    PairPowers {
        power_sum: f[t as usize].clone(),
        full_sum: g[t as usize].clone(),
        difference_quotient: h,
    }
}

/// Exponent matrix `α_{ji}` over relative classes `j = 1..m-1` and
/// generators `i = 1..s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentPattern {
    alpha: Vec<Vec<u32>>,
}

impl ExponentPattern {
    pub fn new(alpha: Vec<Vec<u32>>) -> Self {
        ExponentPattern { alpha }
    }

    /// Number of relative classes, `m - 1`.
    pub fn num_classes(&self) -> usize {
        self.alpha.len()
    }

    pub fn num_generators(&self) -> usize {
        self.alpha.first().map(|r| r.len()).unwrap_or(0)
    }

    /// Entry `α_{ji}` with 1-based `j` and `i`.
    pub fn entry(&self, j: usize, i: usize) -> u32 {
        self.alpha[j - 1][i - 1]
    }

    /// Class multiplicity `α(j) = Σ_i α_{ji}`, 1-based `j`.
    pub fn class_multiplicity(&self, j: usize) -> u32 {
        self.alpha[j - 1].iter().sum()
    }

    /// `Σ_j j·α(j)`.
    pub fn weighted_sum(&self) -> u64 {
        (1..=self.num_classes())
            .map(|j| j as u64 * self.class_multiplicity(j) as u64)
            .sum()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.alpha.iter().flatten().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_multiplicity() == 0
    }

    /// Nonzero and `Σ_j j·α(j) ≡ 0 (mod m)`.
    pub fn is_valid(&self, m: u64) -> bool {
        !self.is_zero() && self.weighted_sum().is_multiple_of(m)
    }

    /// Componentwise difference, when `other ≤ self` everywhere.
    pub fn checked_sub(&self, other: &ExponentPattern) -> Option<ExponentPattern> {
        let mut alpha = self.alpha.clone();
        for (row, orow) in alpha.iter_mut().zip(&other.alpha) {
            for (e, oe) in row.iter_mut().zip(orow) {
                *e = e.checked_sub(*oe)?;
            }
        }
        Some(ExponentPattern { alpha })
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.alpha
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(i, &e)| (j + 1, i + 1, e)))
    }
}

/// All minimal valid exponent patterns for index `m` and `s` generators.
/// A valid pattern is minimal when it is not the sum of two valid nonzero
/// patterns; any valid pattern with total multiplicity above `m` splits at
/// two equal partial sums mod `m`, so the search over totals `≤ m` finds
/// every minimal pattern.
pub fn minimal_patterns(m: u64, s: usize) -> Vec<ExponentPattern> {
    assert!(m >= 2, "index must be at least 2");
    assert!(s >= 1, "at least one generator required");
    let rows = (m - 1) as usize;
    let cells = rows * s;
    let mut out = Vec::new();
    let mut current = vec![0u32; cells];
    enumerate_cells(0, m as u32, &mut current, &mut |flat| {
        let pattern = ExponentPattern {
            alpha: flat.chunks(s).map(|c| c.to_vec()).collect(),
        };
        if pattern.is_valid(m) && is_minimal(&pattern, m) {
            out.push(pattern);
        }
    });
    out.sort_by_key(|p| (p.total_multiplicity(), p.alpha.clone()));
    out
}

fn enumerate_cells(idx: usize, budget: u32, current: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if idx == current.len() {
        emit(current);
        return;
    }
    for e in 0..=budget {
        current[idx] = e;
        enumerate_cells(idx + 1, budget - e, current, emit);
    }
    current[idx] = 0;
}

/// True when no proper nonzero sub-pattern is valid (its complement is then
/// automatically valid, so the pattern would split).
fn is_minimal(pattern: &ExponentPattern, m: u64) -> bool {
    let flat: Vec<u32> = pattern.alpha.iter().flatten().copied().collect();
    let s = pattern.num_generators();
    let mut current = vec![0u32; flat.len()];
    let mut split_found = false;
    enumerate_sub(0, &flat, &mut current, &mut |sub| {
        if split_found {
            return;
        }
        let total: u32 = sub.iter().sum();
        if total == 0 || total == pattern.total_multiplicity() {
            return;
        }
        let weighted: u64 = sub
            .iter()
            .enumerate()
            .map(|(c, &e)| ((c / s) as u64 + 1) * e as u64)
            .sum();
        if weighted.is_multiple_of(m) {
            split_found = true;
        }
    });
    !split_found
}

fn enumerate_sub(idx: usize, bound: &[u32], current: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if idx == bound.len() {
        emit(current);
        return;
    }
    for e in 0..=bound[idx] {
        current[idx] = e;
        enumerate_sub(idx + 1, bound, current, emit);
    }
    current[idx] = 0;
}

/// A labeled generator of the invariant ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub poly: Poly,
    /// Which Reynolds products produced this element, e.g. `R1(u2)^2`.
    pub provenance: String,
}

/// A pruned, deterministically ordered generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    elements: Vec<Generator>,
    pruned: bool,
}

impl GeneratorSet {
    fn new() -> Self {
        GeneratorSet {
            elements: Vec::new(),
            pruned: false,
        }
    }

    fn push(&mut self, poly: Poly, provenance: String) {
        self.elements.push(Generator { poly, provenance });
        self.pruned = false;
    }

    /// Builds a set from bare polynomials, labeling them `g1, g2, …`.
    pub fn from_polys<I: IntoIterator<Item = Poly>>(polys: I) -> GeneratorSet {
        let mut set = GeneratorSet::new();
        for (i, p) in polys.into_iter().enumerate() {
            set.push(p, format!("g{}", i + 1));
        }
        set
    }

    pub fn elements(&self) -> &[Generator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    /// Drops zero polynomials, exact duplicates, and scalar multiples of an
    /// element kept earlier. No algebraic redundancy beyond that is
    /// removed; deeper verification is the oracle's job.
    pub fn prune(&mut self) {
        let mut kept: Vec<Generator> = Vec::new();
        for gen in self.elements.drain(..) {
            if gen.poly.is_zero() {
                continue;
            }
            if kept.iter().any(|k| is_scalar_multiple(&k.poly, &gen.poly)) {
                continue;
            }
            kept.push(gen);
        }
        self.elements = kept;
        self.pruned = true;
    }

    /// Orders by total degree, then by the canonical printed form.
    pub fn sort_canonical(&mut self) {
        self.elements
            .sort_by_cached_key(|g| (g.poly.total_degree().unwrap_or(0), g.poly.to_string()));
    }

    /// Removes every element whose canonical text equals `text`; returns
    /// whether anything matched.
    pub fn remove_by_text(&mut self, text: &str) -> bool {
        let before = self.elements.len();
        self.elements.retain(|g| g.poly.to_string() != text);
        before != self.elements.len()
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Generator;
    type IntoIter = std::slice::Iter<'a, Generator>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

fn is_scalar_multiple(p: &Poly, q: &Poly) -> bool {
    if p.num_terms() != q.num_terms() {
        return false;
    }
    let mut ratio: Option<CycNum> = None;
    for ((mp, cp), (mq, cq)) in p.terms().zip(q.terms()) {
        if mp != mq {
            return false;
        }
        match &ratio {
            None => ratio = Some(cq.div(cp).expect("stored coefficients are nonzero")),
            Some(r) => {
                if cp.mul(r) != *cq {
                    return false;
                }
            }
        }
    }
    true
}

/// Index-2 generating set `{R_0(u_i)} ∪ {R_1(u_i)R_1(u_j), i ≤ j}`, pruned.
pub fn main1_generators(g: &GroupSpec, h_basis: &[Poly]) -> Result<GeneratorSet, HilbertError> {
    if g.m() != 2 {
        return Err(HilbertError::IndexNotTwo { m: g.m() });
    }
    let mut set = GeneratorSet::new();
    for (i, u) in h_basis.iter().enumerate() {
        set.push(reynolds(g, 0, u).expect("0 < m"), format!("R0(u{})", i + 1));
    }
    let anti: Vec<Poly> = h_basis
        .iter()
        .map(|u| reynolds(g, 1, u).expect("1 < m"))
        .collect();
    for i in 0..anti.len() {
        for j in i..anti.len() {
            let provenance = if i == j {
                format!("R1(u{})^2", i + 1)
            } else {
                format!("R1(u{})*R1(u{})", i + 1, j + 1)
            };
            set.push(anti[i].mul(&anti[j]), provenance);
        }
    }
    set.prune();
    set.sort_canonical();
    Ok(set)
}

/// General-index generating set: `{R_0(u_i)}` plus one product per minimal
/// exponent pattern, pruned. For `m = 2` the pruned result agrees with
/// [`main1_generators`] up to ordering.
pub fn main2_generators(g: &GroupSpec, h_basis: &[Poly]) -> GeneratorSet {
    let m = g.m();
    let s = h_basis.len();
    let mut set = GeneratorSet::new();
    for (i, u) in h_basis.iter().enumerate() {
        set.push(reynolds(g, 0, u).expect("0 < m"), format!("R0(u{})", i + 1));
    }
    if s == 0 {
        set.prune();
        set.sort_canonical();
        return set;
    }
    let projections: Vec<Vec<Poly>> = (1..m)
        .map(|j| {
            h_basis
                .iter()
                .map(|u| reynolds(g, j, u).expect("j < m"))
                .collect()
        })
        .collect();
    for pattern in minimal_patterns(m, s) {
        let mut product = Poly::one(g.table());
        let mut labels = Vec::new();
        for (j, i, e) in pattern.entries() {
            if e == 0 {
                continue;
            }
            let factor = &projections[j - 1][i - 1];
            if factor.is_zero() {
                product = Poly::zero(g.table());
                labels.clear();
                break;
            }
            product = product.mul(&factor.pow(e));
            labels.push(if e == 1 {
                format!("R{j}(u{i})")
            } else {
                format!("R{j}(u{i})^{e}")
            });
        }
        if !product.is_zero() {
            set.push(product, labels.join("*"));
        }
    }
    set.prune();
    set.sort_canonical();
    set
}
