//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycNum`] stores rational coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{N-1}` and keeps them reduced modulo the `N`-th
//! cyclotomic polynomial `Φ_N`, so equality at a fixed order is a plain
//! coefficient comparison. Operands of different orders are lifted to the
//! least common multiple order before combining.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational scalar used for all coordinates.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
}

/// An element of `Q(ζ_N)`, canonicalized modulo `Φ_N`.
#[derive(Debug, Clone)]
pub struct CycNum {
    order: u64,
    /// Length-`order` coordinate vector; entries at index `≥ φ(order)` are
    /// zero after canonicalization.
    coeffs: Vec<Rational>,
}

impl CycNum {
    fn from_raw(order: u64, coeffs: Vec<Rational>) -> Self {
        debug_assert!(order >= 1);
        let mut folded = vec![Rational::zero(); order as usize];
        for (exp, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let idx = exp % order as usize;
                folded[idx] += c;
            }
        }
        reduce_mod_cyclotomic(order, &mut folded);
        CycNum {
            order,
            coeffs: folded,
        }
    }

    pub fn zero() -> Self {
        CycNum {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        CycNum {
            order: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        CycNum {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ_N^k`, with `k` taken modulo `N`. Errors when `N = 0`.
    pub fn root_of_unity(k: i64, order: u64) -> Result<Self, CycError> {
        if order == 0 {
            return Err(CycError::ZeroOrder);
        }
        let exp = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); order as usize];
        coeffs[exp] = Rational::one();
        Ok(Self::from_raw(order, coeffs))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    /// The rational value when this element lies in `Q`, i.e. all
    /// coordinates above index 0 vanish.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Rewrite in `Q(ζ_M)` for `M` a multiple of the current order.
    fn lift_to(&self, new_order: u64) -> CycNum {
        debug_assert!(new_order.is_multiple_of(self.order));
        if new_order == self.order {
            return self.clone();
        }
        let ratio = (new_order / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); new_order as usize];
        for (exp, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[exp * ratio] = c.clone();
            }
        }
        Self::from_raw(new_order, coeffs)
    }

    fn common_order(&self, other: &CycNum) -> u64 {
        self.order.lcm(&other.order)
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let n = self.common_order(other);
        let a = self.lift_to(n);
        let b = other.lift_to(n);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Self::from_raw(n, coeffs)
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let n = self.common_order(other);
        let a = self.lift_to(n);
        let b = other.lift_to(n);
        let mut coeffs = vec![Rational::zero(); n as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let idx = (i + j) % n as usize;
                coeffs[idx] += x * y;
            }
        }
        Self::from_raw(n, coeffs)
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm against
    /// `Φ_N` in `Q[x]`.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let phi = cyclotomic_polynomial(self.order);
        let a = trim(self.coeffs.clone());
        let (g, s) = poly_ext_gcd(&a, &phi);
        // Φ_N is irreducible over Q, so the gcd with a nonzero residue is a
        // nonzero constant.
        debug_assert!(g.len() == 1 && !g[0].is_zero());
        let ginv = g[0].recip();
        let mut coeffs = vec![Rational::zero(); self.order as usize];
        for (i, c) in s.iter().enumerate() {
            coeffs[i] = c * &ginv;
        }
        Ok(Self::from_raw(self.order, coeffs))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Complex conjugation: `ζ_N^k ↦ ζ_N^{N-k}`.
    pub fn conj(&self) -> CycNum {
        let n = self.order as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(n - k) % n] = c.clone();
            }
        }
        Self::from_raw(self.order, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one();
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
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = self.common_order(other);
        self.lift_to(n).coeffs == other.lift_to(n).coeffs
    }
}

impl Eq for CycNum {}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                CycNum::$inner(self, rhs)
            }
        }
        impl std::ops::$trait for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                CycNum::$inner(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);

/// Prints the canonical form with terms in increasing power of `ζ_N`,
/// e.g. `1/2 - zeta(12)^5`. The output reparses to the same value.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "zeta({})", self.order)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Coefficients of `Φ_N` (ascending, monic), memoized per order.
fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_N = (x^N - 1) / Π_{d | N, d < N} Φ_d
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Reduce a length-`n` coordinate vector modulo `Φ_n` in place.
fn reduce_mod_cyclotomic(n: u64, coeffs: &mut [Rational]) {
    if n == 1 {
        return;
    }
    let phi = cyclotomic_polynomial(n);
    let deg_phi = phi.len() - 1;
    // Reduce highest powers first: x^k ≡ x^k - x^{k-deg}·Φ_n.
    for k in (deg_phi..coeffs.len()).rev() {
        if coeffs[k].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut coeffs[k], Rational::zero());
        for (i, p) in phi.iter().enumerate().take(deg_phi) {
            if !p.is_zero() {
                let delta = &lead * p;
                coeffs[k - deg_phi + i] -= delta;
            }
        }
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_deg(p: &[Rational]) -> usize {
    p.len() - 1
}

/// Exact division of `num` by monic `den`; the remainder must vanish.
fn poly_div_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let (q, r) = poly_divmod(num, den);
    debug_assert!(
        r.iter().all(|c| c.is_zero()),
        "non-exact polynomial division"
    );
    q
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let dd = poly_deg(&den);
    let lead_inv = den[dd].recip();
    let mut rem = num.to_vec();
    if poly_deg(&rem) < dd {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let factor = &rem[k] * &lead_inv;
        rem[k] = Rational::zero();
        for (i, d) in den.iter().enumerate().take(dd) {
            if !d.is_zero() {
                let delta = &factor * d;
                rem[k - dd + i] -= delta;
            }
        }
        quot[k - dd] = factor;
    }
    (trim(quot), trim(rem))
}

fn poly_scale(p: &[Rational], s: &Rational) -> Vec<Rational> {
    p.iter().map(|c| c * s).collect()
}

fn poly_mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)`.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}
