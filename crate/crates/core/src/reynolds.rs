//! Relative Reynolds projections and the induced decomposition of the
//! `H`-invariant algebra.
//!
//! For `0 ≤ j < m` the projection is the coset average
//!
//! ```text
//! R_j(f) = (1/m) Σ_{k=0}^{m-1} conj(σ(δ)^{jk}) · (f ∘ δ^k),
//! ```
//!
//! an exact computation since `σ(δ)` is a root of unity and coefficients
//! are cyclotomic rationals. On `H`-invariant input, `R_j` projects onto
//! the polynomials `f` with `f ∘ δ = σ(δ)^j · f`; the formula itself is
//! total, but its projection properties are only guaranteed on
//! `H`-invariant arguments.

use num::BigRational;
use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::group::GroupSpec;
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReynoldsError {
    #[error("relative index {j} out of range; the group has index {m}")]
    IndexOutOfRange { j: u64, m: u64 },
}

/// The `σ^j`-relative Reynolds projection of `f`.
pub fn reynolds(g: &GroupSpec, j: u64, f: &Poly) -> Result<Poly, ReynoldsError> {
    let m = g.m();
    if j >= m {
        return Err(ReynoldsError::IndexOutOfRange { j, m });
    }
    let mut acc = Poly::zero(g.table());
    for k in 0..m {
        let weight = g.sigma_delta().pow(j * k).conj();
        acc = acc.add(&g.coset_substitute(k, f).scale(&weight));
    }
    let inv_m = CycNum::from_rational(BigRational::new(1.into(), m.into()));
    Ok(acc.scale(&inv_m))
}

/// True iff `f` is fixed by every `H`-generator and satisfies
/// `f ∘ δ = σ(δ)^j · f` exactly. Thanks to the coset structure this single
/// `δ`-condition captures relative invariance under the whole group.
pub fn is_relative_invariant(g: &GroupSpec, j: u64, f: &Poly) -> bool {
    debug_assert!(j < g.m());
    if !g.h_fixes(f) {
        return false;
    }
    let scaled = f.scale(&g.sigma_delta().pow(j % g.m()));
    g.coset_substitute(1, f) == scaled
}

/// An `H`-invariant polynomial split into its `m` relative-invariant
/// components `f = f_0 + f_1 + … + f_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    components: Vec<Poly>,
    source: Poly,
}

impl Decomposition {
    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn source(&self) -> &Poly {
        &self.source
    }

    /// Re-checks the defining properties: the components sum back to the
    /// source and component `j` is `σ^j`-relative invariant. Intended for a
    /// verify mode; `decompose` itself does not pay for this.
    pub fn verify(&self, g: &GroupSpec) -> Result<(), String> {
        let mut sum = Poly::zero(self.source.table());
        for c in &self.components {
            sum = sum.add(c);
        }
        if sum != self.source {
            return Err("components do not sum back to the input".to_string());
        }
        for (j, c) in self.components.iter().enumerate() {
            if !is_relative_invariant(g, j as u64, c) {
                return Err(format!("component {j} is not sigma^{j}-relative invariant"));
            }
        }
        Ok(())
    }
}

/// Splits an `H`-invariant polynomial into its relative-invariant
/// components via the `m` Reynolds projections.
pub fn decompose(g: &GroupSpec, f: &Poly) -> Decomposition {
    let components = (0..g.m())
        .map(|j| reynolds(g, j, f).expect("j < m by construction"))
        .collect();
    Decomposition {
        components,
        source: f.clone(),
    }
}
