//! Brute-force certification of generator sets.
//!
//! Independently of the Reynolds machinery, the invariants of degree `≤ d`
//! are computed by exact linear algebra: monomials are pre-filtered by the
//! torus weights and by diagonal generators (both act on monomials by
//! characters), and the remaining generators contribute a linear system
//! whose nullspace is the invariant subspace. The graded span of a
//! candidate generator set is then compared against it, echelon basis by
//! echelon basis, degree by degree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::group::{GroupSpec, HGenerator};
use crate::hilbert::GeneratorSet;
use crate::linalg::{nullspace, rref};
use crate::linear::LinearMap;
use crate::poly::{Monomial, Poly, VarTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("generator `{0}` is not homogeneous; the graded oracle needs homogeneous generators")]
    InhomogeneousGenerator(String),
}

/// Per-degree echelonized bases of a graded subspace of the polynomial
/// algebra, up to a degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    degree_bound: u32,
    bases: Vec<Vec<Poly>>,
}

impl GradedSpace {
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.bases
            .get(degree as usize)
            .map(|b| b.len())
            .unwrap_or(0)
    }

    pub fn basis(&self, degree: u32) -> &[Poly] {
        self.bases
            .get(degree as usize)
            .map(|b| b.as_slice())
            .unwrap_or(&[])
    }
}

/// All exponent vectors of total degree `d`, in descending graded-lex
/// order (matching the column order used for echelonization).
fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(exps: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
        if idx + 1 == exps.len() {
            exps[idx] = remaining;
            out.push(Monomial(exps.clone()));
            exps[idx] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            exps[idx] = e;
            rec(exps, idx + 1, remaining - e, out);
        }
        exps[idx] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(&mut exps, 0, d, &mut out);
    out.sort();
    out.reverse();
    out
}

/// The monomial character of a diagonal map: the product of diagonal
/// entries raised to the exponents.
fn diagonal_character(map: &LinearMap, m: &Monomial) -> CycNum {
    let mut acc = CycNum::one();
    for (i, &e) in m.0.iter().enumerate() {
        if e > 0 {
            acc = acc.mul(&map.entry(i, i).pow(e as u64));
        }
    }
    acc
}

/// Rows of coefficients of `polys` over the given column monomials, reduced
/// to echelon form and read back as polynomials.
fn echelon_basis(table: &Arc<VarTable>, polys: &[Poly], columns: &[Monomial]) -> Vec<Poly> {
    if polys.is_empty() {
        return Vec::new();
    }
    let col_index: BTreeMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix: Vec<Vec<CycNum>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![CycNum::zero(); columns.len()];
            for (m, c) in p.terms() {
                row[col_index[m]] = c.clone();
            }
            row
        })
        .collect();
    rref(&mut matrix);
    matrix
        .into_iter()
        .filter(|row| row.iter().any(|c| !c.is_zero()))
        .map(|row| {
            let mut p = Poly::zero(table);
            for (i, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    p = p.add(&Poly::constant(table, c).mul(&monomial_poly(table, &columns[i])));
                }
            }
            p
        })
        .collect()
}

fn monomial_poly(table: &Arc<VarTable>, m: &Monomial) -> Poly {
    let mut p = Poly::one(table);
    for (i, &e) in m.0.iter().enumerate() {
        if e > 0 {
            p = p.mul(&Poly::variable(table, i).pow(e));
        }
    }
    p
}

/// Computes an echelonized basis of the full-group invariants in each
/// degree `≤ d` by solving `f ∘ γ = f` for every listed generator and for
/// `δ`, exactly.
pub fn invariants_up_to_degree(g: &GroupSpec, d: u32) -> GradedSpace {
    let table = g.table();
    let nvars = table.len();
    // Diagonal constraints act monomial-wise and become a pre-filter; the
    // rest feed the linear system.
    let mut diagonal: Vec<&LinearMap> = Vec::new();
    let mut general: Vec<&LinearMap> = Vec::new();
    for gen in g.h_generators() {
        match gen {
            HGenerator::Linear(map) => {
                if map.is_diagonal() {
                    diagonal.push(map);
                } else {
                    general.push(map);
                }
            }
            HGenerator::Torus(_) => {}
        }
    }
    if g.delta().is_diagonal() {
        diagonal.push(g.delta());
    } else {
        general.push(g.delta());
    }
    let toruses: Vec<_> = g
        .h_generators()
        .iter()
        .filter_map(|gen| match gen {
            HGenerator::Torus(t) => Some(t),
            _ => None,
        })
        .collect();

    let mut bases = Vec::with_capacity(d as usize + 1);
    for degree in 0..=d {
        let columns = monomials_of_degree(nvars, degree);
        let filtered: Vec<&Monomial> = columns
            .iter()
            .filter(|m| toruses.iter().all(|t| t.fixes_monomial(m)))
            .filter(|m| {
                diagonal
                    .iter()
                    .all(|map| diagonal_character(map, m).is_one())
            })
            .collect();
        if filtered.is_empty() {
            bases.push(Vec::new());
            continue;
        }
        let solutions: Vec<Vec<CycNum>> = if general.is_empty() {
            (0..filtered.len())
                .map(|i| {
                    let mut v = vec![CycNum::zero(); filtered.len()];
                    v[i] = CycNum::one();
                    v
                })
                .collect()
        } else {
            // Row per (constraint map, appearing monomial): the coefficient
            // of each monomial in f∘γ - f must vanish. Monomials produced
            // outside the filtered set must cancel too, so rows range over
            // every monomial that appears.
            let mut rows: BTreeMap<(usize, Monomial), Vec<CycNum>> = BTreeMap::new();
            for (gi, map) in general.iter().enumerate() {
                for (ai, m) in filtered.iter().enumerate() {
                    let diff = monomial_poly(table, m)
                        .substitute_linear(map)
                        .sub(&monomial_poly(table, m));
                    for (mono, c) in diff.terms() {
                        let row = rows
                            .entry((gi, mono.clone()))
                            .or_insert_with(|| vec![CycNum::zero(); filtered.len()]);
                        row[ai] = c.clone();
                    }
                }
            }
            let matrix: Vec<Vec<CycNum>> = rows.into_values().collect();
            nullspace(&matrix, filtered.len())
        };
        let polys: Vec<Poly> = solutions
            .iter()
            .map(|v| {
                let mut p = Poly::zero(table);
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        p = p.add(
                            &Poly::constant(table, c.clone())
                                .mul(&monomial_poly(table, filtered[i])),
                        );
                    }
                }
                p
            })
            .collect();
        let basis = echelon_basis(table, &polys, &columns);
        // Soundness re-check after echelonization.
        for b in &basis {
            assert!(g.h_fixes(b), "oracle basis element is not H-invariant");
            assert!(
                b.substitute_linear(g.delta()) == *b,
                "oracle basis element moves under delta"
            );
        }
        bases.push(basis);
    }
    GradedSpace {
        degree_bound: d,
        bases,
    }
}

/// The graded span of all products of the generators with total degree
/// `≤ d`, echelonized per degree. Generators must be homogeneous; constants
/// are ignored (the constants are always present in degree zero).
pub fn subalgebra_span(
    table: &Arc<VarTable>,
    gens: &GeneratorSet,
    d: u32,
) -> Result<GradedSpace, OracleError> {
    let mut degrees = Vec::new();
    let mut polys = Vec::new();
    for gen in gens.elements() {
        if gen.poly.is_zero() {
            continue;
        }
        if !gen.poly.is_homogeneous() {
            return Err(OracleError::InhomogeneousGenerator(gen.poly.to_string()));
        }
        let deg = gen.poly.total_degree().unwrap_or(0);
        if deg == 0 || deg > d {
            continue;
        }
        degrees.push(deg);
        polys.push(gen.poly.clone());
    }
    let mut buckets: Vec<Vec<Poly>> = vec![Vec::new(); d as usize + 1];
    buckets[0].push(Poly::one(table));
    // Depth-first products over non-decreasing generator indices.
    fn rec(
        start: usize,
        current: &Poly,
        degree: u32,
        polys: &[Poly],
        degrees: &[u32],
        bound: u32,
        buckets: &mut Vec<Vec<Poly>>,
    ) {
        for i in start..polys.len() {
            let next_degree = degree + degrees[i];
            if next_degree > bound {
                continue;
            }
            let next = current.mul(&polys[i]);
            buckets[next_degree as usize].push(next.clone());
            rec(i, &next, next_degree, polys, degrees, bound, buckets);
        }
    }
    rec(0, &Poly::one(table), 0, &polys, &degrees, d, &mut buckets);
    let bases = (0..=d)
        .map(|degree| {
            let columns = monomials_of_degree(table.len(), degree);
            echelon_basis(table, &buckets[degree as usize], &columns)
        })
        .collect();
    Ok(GradedSpace {
        degree_bound: d,
        bases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: u32,
    pub dim_invariants: usize,
    pub dim_span: usize,
    pub ok: bool,
}

/// Outcome of comparing the brute-force invariants against the span of a
/// generator set, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    pub rows: Vec<DegreeRow>,
    pub pass: bool,
    /// First failing degree with an invariant outside the span, when one
    /// exists.
    pub witness: Option<(u32, Poly)>,
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree  invariants  span  status")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>6}  {:>10}  {:>4}  {}",
                row.degree,
                row.dim_invariants,
                row.dim_span,
                if row.ok { "ok" } else { "MISMATCH" }
            )?;
        }
        match (&self.pass, &self.witness) {
            (true, _) => write!(f, "PASS: generators span the invariants through the bound"),
            (false, Some((d, w))) => {
                write!(f, "FAIL at degree {d}: invariant outside the span: {w}")
            }
            (false, None) => write!(f, "FAIL: span exceeds the invariant space"),
        }
    }
}

/// Reduces `p` against an echelonized basis (unit pivots at leading
/// monomials); the remainder is zero iff `p` lies in the span.
fn reduce_against(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rem = p.clone();
    for b in basis {
        if let Some(lead) = b.leading_monomial() {
            let c = rem.coeff(lead);
            if !c.is_zero() {
                rem = rem.sub(&b.scale(&c));
            }
        }
    }
    rem
}

/// PASS iff the graded span of `gens` equals the brute-force invariant
/// space in every degree `≤ d`, comparing echelon bases, not dimensions.
pub fn certify(g: &GroupSpec, gens: &GeneratorSet, d: u32) -> Result<CertReport, OracleError> {
    let invariants = invariants_up_to_degree(g, d);
    let span = subalgebra_span(g.table(), gens, d)?;
    let mut rows = Vec::new();
    let mut witness = None;
    let mut pass = true;
    for degree in 0..=d {
        let inv_basis = invariants.basis(degree);
        let span_basis = span.basis(degree);
        let ok = inv_basis == span_basis;
        if !ok && pass {
            pass = false;
            for b in inv_basis {
                if !reduce_against(b, span_basis).is_zero() {
                    witness = Some((degree, b.clone()));
                    break;
                }
            }
        }
        rows.push(DegreeRow {
            degree,
            dim_invariants: inv_basis.len(),
            dim_span: span_basis.len(),
            ok,
        });
    }
    Ok(CertReport {
        rows,
        pass,
        witness,
    })
}
