//! The two binomial determinant families, their product formulas, the
//! row-reduction recursion for the second family, and the mod-`p` facts the
//! certifier relies on.
//!
//! * `Det1(n, a, k)`: the `(k+1) x (k+1)` Toeplitz matrix with entry
//!   `binom(n, a + k - i + j)` at `(i, j)`. The top row runs
//!   `binom(n, a+k) .. binom(n, a+2k)`, the bottom row `binom(n, a) .. binom(n, a+k)`.
//! * `Det2(n, a, k)`: entry `binom(n + 2i, a + i + j)`; its determinant is
//!   written `F(n, a, k)`.
//!
//! Closed forms are evaluated as exact rationals and must come out integral.
//! Parameters that make a denominator vanish are rejected.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{
    binomial_general, binomial_mod_p, into_integer, log_exact, BigInt, BigRational, PrimeField, Residue,
};
use crate::linear_solver::{bareiss_determinant, FpMatrix, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinomFamily {
    Det1,
    Det2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinomMatrixSpec {
    pub family: BinomFamily,
    pub n: i64,
    pub a: u64,
    pub k: usize,
}

impl BinomMatrixSpec {
    pub fn det1(n: i64, a: u64, k: usize) -> Self {
        BinomMatrixSpec { family: BinomFamily::Det1, n, a, k }
    }

    pub fn det2(n: i64, a: u64, k: usize) -> Self {
        BinomMatrixSpec { family: BinomFamily::Det2, n, a, k }
    }

    pub fn size(&self) -> usize {
        self.k + 1
    }

    /// `(upper, lower)` of the binomial at `(i, j)`.
    fn entry_indices(&self, i: usize, j: usize) -> (i64, u64) {
        let (a, k) = (self.a, self.k as u64);
        let (i, j) = (i as u64, j as u64);
        match self.family {
            BinomFamily::Det1 => (self.n, a + k - i + j),
            BinomFamily::Det2 => (self.n + 2 * i as i64, a + i + j),
        }
    }
}

pub fn build_matrix(spec: &BinomMatrixSpec) -> IntMatrix {
    let s = spec.size();
    IntMatrix::from_fn(s, s, |i, j| {
        let (n, m) = spec.entry_indices(i, j);
        binomial_general(n, m)
    })
}

fn ratio(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        Err(Error::ZeroDenominator)
    } else {
        Ok(BigRational::new(num, den))
    }
}

fn binom(n: i64, m: u64) -> BigInt {
    binomial_general(n, m)
}

/// `prod_{i=0..k} binom(n+i, a+k) / prod_{i=0..k} binom(a+k+i, a+k)`.
pub fn det1_closed_form(n: i64, a: u64, k: usize) -> Result<BigRational> {
    let top = a + k as u64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..=k as i64 {
        num *= binom(n + i, top);
        den *= binom(top as i64 + i, top);
    }
    ratio(num, den)
}

/// Closed form of `F(n, a, k)`:
///
/// ```text
///   prod_{i=0..k} binom(n+2i, a+2i)      prod_{j=0..k-1} binom(2a-n+k+j, k-j)
///   -------------------------------- *  -------------------------------------
///   prod_{j=0..k-1} binom(a+k+j, k-j)    prod_{j=0..k-1} binom(n-a+k-j, k-j)
/// ```
pub fn det2_closed_form(n: i64, a: u64, k: usize) -> Result<BigRational> {
    let a_ = a as i64;
    let k_ = k as i64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..=k_ {
        num *= binom(n + 2 * i, (a_ + 2 * i) as u64);
    }
    for j in 0..k_ {
        let width = (k_ - j) as u64;
        den *= binom(a_ + k_ + j, width);
        num *= binom(2 * a_ - n + k_ + j, width);
        den *= binom(n - a_ + k_ - j, width);
    }
    ratio(num, den)
}

/// Both sides of the one-step recursion
/// `F(n,a,k) / F(n+2,a+2,k-1) = binom(n,a) * prod_{s=1..k} s(s+2a-n) / prod_{r=1..k} (a+r)(n-a+r)`.
///
/// Clearing the first column leaves row `r` scaled by `1/((a+r)(n-a+r))` and
/// column `s` scaled by `s(s+2a-n)`, each exactly once, so the two products
/// are separate rather than nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl RatioCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn det2_ratio_check(n: i64, a: u64, k: usize) -> Result<RatioCheck> {
    if k == 0 {
        return Err(Error::InvalidParameter("the recursion needs k >= 1".into()));
    }
    let full = bareiss_determinant(&build_matrix(&BinomMatrixSpec::det2(n, a, k)))?;
    let sub = bareiss_determinant(&build_matrix(&BinomMatrixSpec::det2(n + 2, a + 2, k - 1)))?;
    let lhs = ratio(full, sub)?;
    let a_ = a as i64;
    let mut num = binom(n, a);
    let mut den = BigInt::one();
    for s in 1..=k as i64 {
        num *= BigInt::from(s * (s + 2 * a_ - n));
    }
    for r in 1..=k as i64 {
        den *= BigInt::from((a_ + r) * (n - a_ + r));
    }
    let rhs = ratio(num, den)?;
    Ok(RatioCheck { lhs, rhs })
}

/// Exact closed-form value of a spec's determinant, checked to be integral.
pub fn closed_form_value(spec: &BinomMatrixSpec) -> Result<BigInt> {
    let r = match spec.family {
        BinomFamily::Det1 => det1_closed_form(spec.n, spec.a, spec.k)?,
        BinomFamily::Det2 => det2_closed_form(spec.n, spec.a, spec.k)?,
    };
    into_integer(&r)
}

/// The matrix reduced mod `p`, built entry-wise with Lucas binomials when the
/// upper index is non-negative.
pub fn build_matrix_mod_p(spec: &BinomMatrixSpec, field: &PrimeField) -> FpMatrix {
    let s = spec.size();
    let mut m = FpMatrix::zeros(*field, s, s);
    for i in 0..s {
        for j in 0..s {
            let (n, k) = spec.entry_indices(i, j);
            let v = if n >= 0 { binomial_mod_p(n as u64, k, field) } else { field.reduce_big(&binomial_general(n, k)) };
            m.set(i, j, v);
        }
    }
    m
}

/// Determinant of the spec's matrix reduced mod `p`.
pub fn invertibility_mod_p(spec: &BinomMatrixSpec, field: &PrimeField) -> Residue {
    build_matrix_mod_p(spec, field).determinant().expect("square by construction")
}

/// The coefficient matrix of the two-variable containment at
/// `q = n k + 1`: `Det1((n-1)k, 0, k)`.
pub fn unit_containment_spec(n: u64, k: u64) -> BinomMatrixSpec {
    BinomMatrixSpec::det1(((n - 1) * k) as i64, 0, k as usize)
}

/// The coefficient matrix of the shifted containment used when
/// `p = n k + delta`, `2 <= delta <= n-1`: `Det1((n-1)k + 1, 1, k)`.
pub fn shifted_containment_spec(n: u64, k: u64) -> BinomMatrixSpec {
    BinomMatrixSpec::det1(((n - 1) * k + 1) as i64, 1, k as usize)
}

/// The grouped-coefficient matrix for `n = 3`, `p = 6m + 5`: `Det2(4m+3, 2m+2, m)`.
pub fn cubic_grouping_spec(m: u64) -> BinomMatrixSpec {
    BinomMatrixSpec::det2((4 * m + 3) as i64, 2 * m + 2, m as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRow {
    pub r: u64,
    /// `binom((n-1)k + r, k) mod p`
    pub lhs: Residue,
    /// `(-1)^k binom(2k - r, k) mod p`
    pub rhs: Residue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub k: u64,
    pub rows: Vec<CongruenceRow>,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs)
    }
}

/// `binom((n-1)k + r, k) = (-1)^k binom(2k - r, k) mod p` for `0 <= r <= k`,
/// where `q = n k + 1` is a power of `p`.
pub fn congruence_identity_check(n: u64, q: u64, p: u64) -> Result<CongruenceReport> {
    let field = PrimeField::new(p)?;
    if log_exact(q, p).is_none() {
        return Err(Error::NotCharacteristicPower { q, p });
    }
    if n < 2 || q % n != 1 % n {
        return Err(Error::InvalidParameter(format!("q = {q} is not 1 mod n = {n}")));
    }
    let k = (q - 1) / n;
    let sign = |v: Residue| if k.is_multiple_of(2) { v } else { field.neg(v) };
    let rows = (0..=k)
        .map(|r| CongruenceRow {
            r,
            lhs: binomial_mod_p((n - 1) * k + r, k, &field),
            rhs: sign(binomial_mod_p(2 * k - r, k, &field)),
        })
        .collect();
    Ok(CongruenceReport { n, q, p, k, rows })
}

/// One row of the identity suite: the Bareiss value against the product
/// formula and, for `Det2` with `k >= 1`, the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub spec: BinomMatrixSpec,
    pub bareiss: BigInt,
    /// `None` when a denominator of the product formula vanishes.
    pub closed_form: Option<BigRational>,
    /// `None` when `k = 0` or the smaller determinant vanishes.
    pub ratio: Option<RatioCheck>,
}

impl IdentityCase {
    pub fn defined(&self) -> bool {
        self.closed_form.is_some()
    }

    pub fn holds(&self) -> bool {
        self.closed_form.as_ref().is_none_or(|c| *c == BigRational::from_integer(self.bareiss.clone()))
            && self.ratio.as_ref().is_none_or(RatioCheck::holds)
    }
}

fn identity_case(spec: BinomMatrixSpec) -> Result<IdentityCase> {
    let bareiss = bareiss_determinant(&build_matrix(&spec))?;
    let closed = match spec.family {
        BinomFamily::Det1 => det1_closed_form(spec.n, spec.a, spec.k),
        BinomFamily::Det2 => det2_closed_form(spec.n, spec.a, spec.k),
    };
    let closed_form = match closed {
        Ok(v) => Some(v),
        Err(Error::ZeroDenominator) => None,
        Err(e) => return Err(e),
    };
    let ratio = match (spec.family, spec.k) {
        (BinomFamily::Det2, k) if k > 0 => match det2_ratio_check(spec.n, spec.a, k) {
            Ok(r) => Some(r),
            Err(Error::ZeroDenominator) => None,
            Err(e) => return Err(e),
        },
        _ => None,
    };
    Ok(IdentityCase { spec, bareiss, closed_form, ratio })
}

/// `Det1` over `a <= 5`, `k <= 4`, `a + 2k <= n <= a + 2k + 6`, then `Det2`
/// over `a <= 6`, `k <= 4`, `0 <= n <= 2a + 2`.
pub fn identity_suite() -> Result<Vec<IdentityCase>> {
    let mut out = Vec::new();
    for a in 0..=5u64 {
        for k in 0..=4usize {
            let lo = a as i64 + 2 * k as i64;
            for n in lo..=lo + 6 {
                out.push(identity_case(BinomMatrixSpec::det1(n, a, k))?);
            }
        }
    }
    for a in 0..=6u64 {
        for k in 0..=4usize {
            for n in 0..=2 * a as i64 + 2 {
                out.push(identity_case(BinomMatrixSpec::det2(n, a, k))?);
            }
        }
    }
    Ok(out)
}
