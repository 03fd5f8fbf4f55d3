//! Exact computations with invariants and relative invariants of linear
//! group actions.
//!
//! Given a group `Γ` acting linearly on a complex vector space, together with
//! a normal subgroup `H` of finite cyclic index `m` (presented through its
//! generators and a coset representative `δ`), this crate computes the
//! relative Reynolds projections `R_0, …, R_{m-1}` on `H`-invariant
//! polynomials, the induced direct-sum decomposition, and a generating set of
//! the `Γ`-invariant ring from a known generating set of the `H`-invariant
//! ring. A brute-force linear-algebra oracle certifies generator sets degree
//! by degree.
//!
//! All arithmetic is exact: coefficients live in cyclotomic fields
//! `Q(ζ_N)` with arbitrary-precision rational coordinates. There is no
//! floating point anywhere.

pub mod cyclotomic;
pub mod group;
pub mod hilbert;
pub mod linalg;
pub mod linear;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod reynolds;
pub mod specfile;

#[cfg(test)]
pub(crate) mod fixtures;

pub use cyclotomic::CycNum;
pub use group::{GroupSpec, HGenerator, TorusWeights, ValidationReport};
pub use hilbert::{
    main1_generators, main2_generators, minimal_patterns, pair_power_polys, ExponentPattern,
    GeneratorSet,
};
pub use linear::LinearMap;
pub use oracle::{certify, invariants_up_to_degree, subalgebra_span, CertReport, GradedSpace};
pub use parser::{parse_poly, parse_scalar, print_poly, ParseError};
pub use poly::{Monomial, Poly, VarTable};
pub use reynolds::{decompose, is_relative_invariant, reynolds, Decomposition};
pub use specfile::{load_spec, parse_spec, LoadedSpec, SpecError};
