//! Group data: generators of the symmetry subgroup `H`, the coset
//! representative `δ`, the index `m`, and the character value `σ(δ)`.
//!
//! Continuous subgroups enter only as torus weight vectors used to check
//! `H`-invariance monomial by monomial; all averaging elsewhere runs over
//! the `m` cosets `δ^k H`, which is a finite sum.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::linear::LinearMap;
use crate::poly::{Poly, VarTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("index m must be at least 2 (got {0})")]
    IndexTooSmall(u64),
    #[error("mismatched variable table")]
    MismatchedTable,
    #[error("torus weight vector has wrong length (expected {expected}, got {got})")]
    WeightLength { expected: usize, got: usize },
    #[error("paired variables `{a}` and `{b}` must carry opposite weights")]
    WeightsNotOpposite { a: String, b: String },
}

/// Integer weight vectors of a torus action, one per torus parameter.
/// A monomial is fixed by the torus iff its weighted degree vanishes for
/// every parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusWeights {
    table: Arc<VarTable>,
    weights: Vec<Vec<i64>>,
}

impl TorusWeights {
    pub fn new(table: &Arc<VarTable>, weights: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        for w in &weights {
            if w.len() != table.len() {
                return Err(GroupError::WeightLength {
                    expected: table.len(),
                    got: w.len(),
                });
            }
            for i in 0..table.len() {
                if let Some(j) = table.conj_of(i) {
                    if w[i] != -w[j] {
                        return Err(GroupError::WeightsNotOpposite {
                            a: table.name(i).to_string(),
                            b: table.name(j).to_string(),
                        });
                    }
                }
            }
        }
        Ok(TorusWeights {
            table: table.clone(),
            weights,
        })
    }

    pub fn parameters(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn fixes(&self, p: &Poly) -> bool {
        p.terms()
            .all(|(m, _)| self.weights.iter().all(|w| m.weight(w) == 0))
    }

    pub fn fixes_monomial(&self, m: &crate::poly::Monomial) -> bool {
        self.weights.iter().all(|w| m.weight(w) == 0)
    }
}

/// A generator of the symmetry subgroup `H`: either a finite linear map or
/// a torus factor given by its weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HGenerator {
    Linear(LinearMap),
    Torus(TorusWeights),
}

impl HGenerator {
    pub fn fixes(&self, p: &Poly) -> bool {
        match self {
            HGenerator::Linear(map) => p.substitute_linear(map) == *p,
            HGenerator::Torus(t) => t.fixes(p),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            HGenerator::Linear(_) => "linear",
            HGenerator::Torus(_) => "torus",
        }
    }
}

/// The full group datum: `Γ = ⟨H, δ⟩` with `σ(δ)` a primitive `m`-th root
/// of unity and `σ ≡ 1` on `H`.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    table: Arc<VarTable>,
    h_generators: Vec<HGenerator>,
    delta: LinearMap,
    m: u64,
    sigma_delta: CycNum,
    /// δ^0 .. δ^m, precomputed.
    delta_powers: Vec<LinearMap>,
}

impl GroupSpec {
    pub fn new(
        table: &Arc<VarTable>,
        h_generators: Vec<HGenerator>,
        delta: LinearMap,
        m: u64,
        sigma_delta: CycNum,
    ) -> Result<Self, GroupError> {
        if m < 2 {
            return Err(GroupError::IndexTooSmall(m));
        }
        if delta.table() != table {
            return Err(GroupError::MismatchedTable);
        }
        for g in &h_generators {
            let ok = match g {
                HGenerator::Linear(map) => map.table() == table,
                HGenerator::Torus(t) => t.table == *table,
            };
            if !ok {
                return Err(GroupError::MismatchedTable);
            }
        }
        let mut delta_powers = Vec::with_capacity(m as usize + 1);
        delta_powers.push(LinearMap::identity(table));
        for _ in 0..m {
            let next = delta.after(delta_powers.last().unwrap());
            delta_powers.push(next);
        }
        Ok(GroupSpec {
            table: table.clone(),
            h_generators,
            delta,
            m,
            sigma_delta,
            delta_powers,
        })
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn sigma_delta(&self) -> &CycNum {
        &self.sigma_delta
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn delta_power(&self, k: u64) -> LinearMap {
        if k < self.delta_powers.len() as u64 {
            self.delta_powers[k as usize].clone()
        } else {
            self.delta.pow(k as u32)
        }
    }

    pub fn h_generators(&self) -> &[HGenerator] {
        &self.h_generators
    }

    /// True when every listed `H`-generator fixes `p`.
    pub fn h_fixes(&self, p: &Poly) -> bool {
        self.h_generators.iter().all(|g| g.fixes(p))
    }

    /// `p ∘ δ^k`.
    pub fn coset_substitute(&self, k: u64, p: &Poly) -> Poly {
        if k == 0 {
            return p.clone();
        }
        p.substitute_linear(&self.delta_power(k))
    }

    /// Checks the algebraic setup against a claimed generating set of the
    /// `H`-invariant ring: every element must be fixed by every
    /// `H`-generator and by `δ^m`, and `σ(δ)` must be a primitive `m`-th
    /// root of unity. Failures are reported, not thrown.
    pub fn validate(&self, h_basis: &[Poly]) -> ValidationReport {
        let mut checks = Vec::new();
        let mut warnings = Vec::new();
        for (j, u) in h_basis.iter().enumerate() {
            for (i, g) in self.h_generators.iter().enumerate() {
                checks.push(Check {
                    description: format!(
                        "h_basis[{}] is fixed by h_generator[{}] ({})",
                        j + 1,
                        i + 1,
                        g.kind()
                    ),
                    passed: g.fixes(u),
                });
            }
        }
        let delta_m = &self.delta_powers[self.m as usize];
        for (j, u) in h_basis.iter().enumerate() {
            checks.push(Check {
                description: format!("h_basis[{}] is fixed by delta^{}", j + 1, self.m),
                passed: u.substitute_linear(delta_m) == *u,
            });
        }
        let primitive = self.sigma_delta.pow(self.m).is_one()
            && (1..self.m).all(|j| !self.sigma_delta.pow(j).is_one());
        checks.push(Check {
            description: format!("sigma(delta) is a primitive {}-th root of unity", self.m),
            passed: primitive,
        });
        if !h_basis.is_empty()
            && h_basis
                .iter()
                .all(|u| u.substitute_linear(&self.delta) == *u)
        {
            warnings.push(
                "delta acts trivially on every h_basis element; every projection except R_0 \
                 vanishes on the algebra they generate"
                    .to_string(),
            );
        }
        ValidationReport { checks, warnings }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub description: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.description
            )?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        write!(f, "{}", if self.passed() { "valid" } else { "invalid" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parser::parse_poly;

    #[test]
    fn o2_setup_validates() {
        let (g, basis) = fixtures::o2();
        let report = g.validate(&basis);
        assert!(report.passed(), "{report}");
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn z3z3_setup_validates() {
        let (g, basis) = fixtures::z3z3();
        let report = g.validate(&basis);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn d6_torus_setup_validates() {
        let (g, basis) = fixtures::d6t2z2();
        let report = g.validate(&basis);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn non_invariant_basis_element_is_named() {
        let (g, mut basis) = fixtures::o2();
        // Perturb u_1 = z*zb to z^2, which the rotation weights reject.
        basis[0] = parse_poly("z^2", g.table()).unwrap();
        let report = g.validate(&basis);
        assert!(!report.passed());
        let failing: Vec<_> = report.failures().map(|c| c.description.clone()).collect();
        assert_eq!(
            failing,
            vec!["h_basis[1] is fixed by h_generator[1] (torus)".to_string()]
        );
    }

    #[test]
    fn trivial_delta_passes_with_warning() {
        let table = VarTable::new(&["x"]).unwrap();
        let delta = LinearMap::identity(&table);
        let g = GroupSpec::new(&table, vec![], delta, 2, CycNum::from_integer(-1)).unwrap();
        let basis = vec![parse_poly("x", &table).unwrap()];
        let report = g.validate(&basis);
        assert!(report.passed());
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].contains("delta acts trivially"));
    }

    #[test]
    fn non_primitive_sigma_is_reported() {
        let table = VarTable::new(&["x"]).unwrap();
        let delta = LinearMap::diagonal(&table, vec![CycNum::from_integer(-1)]).unwrap();
        // ζ_4² = -1 is not a primitive 4-th root.
        let g = GroupSpec::new(&table, vec![], delta, 4, CycNum::from_integer(-1)).unwrap();
        let report = g.validate(&[parse_poly("x^4", &table).unwrap()]);
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|c| c.description.contains("primitive 4-th root")));
    }

    #[test]
    fn coset_substitution_examples() {
        let (g, _) = fixtures::z3z3();
        let z2 = parse_poly("z2", g.table()).unwrap();
        let zeta3 = CycNum::root_of_unity(1, 3).unwrap();
        assert_eq!(g.coset_substitute(1, &z2), z2.scale(&zeta3));
        assert_eq!(g.coset_substitute(0, &z2), z2);

        let (o2, _) = fixtures::o2();
        let x = parse_poly("x", o2.table()).unwrap();
        assert_eq!(o2.coset_substitute(1, &x), x.neg());

        // Minus the identity negates an odd-degree polynomial.
        let (d6, basis) = fixtures::d6t2z2();
        assert_eq!(d6.coset_substitute(1, &basis[3]), basis[3].neg());
        assert_eq!(d6.coset_substitute(1, &basis[0]), basis[0]);
    }

    #[test]
    fn coset_substitution_is_a_ring_homomorphism() {
        let (g, basis) = fixtures::z3z3();
        let p = basis[1].add(&basis[3]);
        let q = basis[0].mul(&basis[4]);
        for k in 0..g.m() {
            assert_eq!(
                g.coset_substitute(k, &p.mul(&q)),
                g.coset_substitute(k, &p).mul(&g.coset_substitute(k, &q))
            );
            assert_eq!(
                g.coset_substitute(k, &p.add(&q)),
                g.coset_substitute(k, &p).add(&g.coset_substitute(k, &q))
            );
        }
    }

    #[test]
    fn delta_to_the_m_fixes_the_basis() {
        for (g, basis) in [fixtures::o2(), fixtures::z3z3(), fixtures::d6t2z2()] {
            for u in &basis {
                assert_eq!(g.coset_substitute(g.m(), u), *u);
            }
        }
    }

    #[test]
    fn paired_weights_must_be_opposite() {
        let t = VarTable::with_pairs(&["z", "zb"], &[("z", "zb")]).unwrap();
        let err = TorusWeights::new(&t, vec![vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::WeightsNotOpposite { .. }));
        assert!(TorusWeights::new(&t, vec![vec![2, -2]]).is_ok());
    }
}
