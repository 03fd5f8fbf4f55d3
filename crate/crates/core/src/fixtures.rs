//! Shared test fixtures: the worked example groups used across the test
//! suites, plus a deterministic generator of random `H`-invariant
//! polynomials (random algebra combinations of a given generating set).

use std::sync::Arc;

use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CycNum;
use crate::group::{GroupSpec, HGenerator, TorusWeights};
use crate::linear::LinearMap;
use crate::parser::parse_poly;
use crate::poly::{Poly, VarTable};

pub(crate) fn zeta(k: i64, n: u64) -> CycNum {
    CycNum::root_of_unity(k, n).unwrap()
}

/// Builds a map where column `j` has a single entry `coeff` in row given by
/// `images[j] = (row, coeff)`.
fn map_from_images(table: &Arc<VarTable>, images: &[(usize, CycNum)]) -> LinearMap {
    let n = table.len();
    let mut matrix = vec![vec![CycNum::zero(); n]; n];
    for (j, (i, c)) in images.iter().enumerate() {
        matrix[*i][j] = c.clone();
    }
    LinearMap::new(table, matrix).unwrap()
}

/// O(2) acting on C x R: rotations fix `x` and turn `z`; the flip sends
/// `(z, x)` to `(zb, -x)`. H = SO(2), m = 2.
pub(crate) fn o2() -> (GroupSpec, Vec<Poly>) {
    let table = VarTable::with_pairs(&["z", "zb", "x"], &[("z", "zb")]).unwrap();
    let rotations = TorusWeights::new(&table, vec![vec![1, -1, 0]]).unwrap();
    let one = CycNum::one;
    let kappa = map_from_images(
        &table,
        &[(1, one()), (0, one()), (2, CycNum::from_integer(-1))],
    );
    let g = GroupSpec::new(
        &table,
        vec![HGenerator::Torus(rotations)],
        kappa,
        2,
        CycNum::from_integer(-1),
    )
    .unwrap();
    let basis = ["z*zb", "x"]
        .iter()
        .map(|s| parse_poly(s, &table).unwrap())
        .collect();
    (g, basis)
}

/// Z3 x Z3 acting diagonally on C^2; H = Z3 x 1 and delta = (1, ζ3), m = 3.
pub(crate) fn z3z3() -> (GroupSpec, Vec<Poly>) {
    let table =
        VarTable::with_pairs(&["z1", "z1b", "z2", "z2b"], &[("z1", "z1b"), ("z2", "z2b")]).unwrap();
    let xi = LinearMap::diagonal(
        &table,
        vec![zeta(1, 3), zeta(2, 3), CycNum::one(), CycNum::one()],
    )
    .unwrap();
    let delta = LinearMap::diagonal(
        &table,
        vec![CycNum::one(), CycNum::one(), zeta(1, 3), zeta(2, 3)],
    )
    .unwrap();
    let g = GroupSpec::new(&table, vec![HGenerator::Linear(xi)], delta, 3, zeta(1, 3)).unwrap();
    let basis = ["z1*z1b", "z1^3", "z1b^3", "z2", "z2b"]
        .iter()
        .map(|s| parse_poly(s, &table).unwrap())
        .collect();
    (g, basis)
}

/// (D6 semidirect T^2) + Z2 acting on C^3: coordinate permutations, overall
/// conjugation, a rank-2 torus, and delta = -identity, m = 2.
pub(crate) fn d6t2z2() -> (GroupSpec, Vec<Poly>) {
    let table = VarTable::with_pairs(
        &["z1", "z1b", "z2", "z2b", "z3", "z3b"],
        &[("z1", "z1b"), ("z2", "z2b"), ("z3", "z3b")],
    )
    .unwrap();
    let one = CycNum::one;
    // z1 -> z2 -> z3 -> z1 (and the same on conjugates)
    let cycle = map_from_images(
        &table,
        &[
            (2, one()),
            (3, one()),
            (4, one()),
            (5, one()),
            (0, one()),
            (1, one()),
        ],
    );
    // z1 <-> z2
    let swap = map_from_images(
        &table,
        &[
            (2, one()),
            (3, one()),
            (0, one()),
            (1, one()),
            (4, one()),
            (5, one()),
        ],
    );
    // z_i <-> conj(z_i)
    let flip = map_from_images(
        &table,
        &[
            (1, one()),
            (0, one()),
            (3, one()),
            (2, one()),
            (5, one()),
            (4, one()),
        ],
    );
    let torus = TorusWeights::new(
        &table,
        vec![vec![1, -1, 0, 0, -1, 1], vec![0, 0, 1, -1, -1, 1]],
    )
    .unwrap();
    let minus_one = LinearMap::diagonal(&table, vec![CycNum::from_integer(-1); 6]).unwrap();
    let g = GroupSpec::new(
        &table,
        vec![
            HGenerator::Linear(cycle),
            HGenerator::Linear(swap),
            HGenerator::Linear(flip),
            HGenerator::Torus(torus),
        ],
        minus_one,
        2,
        CycNum::from_integer(-1),
    )
    .unwrap();
    let basis = [
        "z1*z1b + z2*z2b + z3*z3b",
        "z1*z1b*z2*z2b + z1*z1b*z3*z3b + z2*z2b*z3*z3b",
        "z1*z1b*z2*z2b*z3*z3b",
        "z1*z2*z3 + z1b*z2b*z3b",
    ]
    .iter()
    .map(|s| parse_poly(s, &table).unwrap())
    .collect();
    (g, basis)
}

/// Z4 generated by i acting on C; the whole group sits in the delta cosets
/// (H is trivial), m = 4.
pub(crate) fn z4() -> GroupSpec {
    let table = VarTable::with_pairs(&["z", "zb"], &[("z", "zb")]).unwrap();
    let delta = LinearMap::diagonal(&table, vec![zeta(1, 4), zeta(3, 4)]).unwrap();
    GroupSpec::new(&table, vec![], delta, 4, zeta(1, 4)).unwrap()
}

fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// A random polynomial combination of `basis`: a short sum of products of
/// basis elements with small nonzero integer coefficients. Invariance under
/// `H` holds by construction.
pub(crate) fn random_combination(basis: &[Poly], rng: &mut ChaCha8Rng) -> Poly {
    let table = basis[0].table().clone();
    let n_products = 1 + pick(rng, 3);
    let mut acc = Poly::zero(&table);
    for _ in 0..n_products {
        let coeff = loop {
            let c = pick(rng, 7) as i64 - 3;
            if c != 0 {
                break c;
            }
        };
        let mut prod = Poly::constant(&table, CycNum::from_integer(coeff));
        for _ in 0..(1 + pick(rng, 2)) {
            prod = prod.mul(&basis[pick(rng, basis.len())]);
        }
        acc = acc.add(&prod);
    }
    acc
}
