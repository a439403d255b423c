//! Scalar arithmetic: big integers and rationals (re-exported from `num`),
//! prime fields with canonical residues, generalized binomial coefficients
//! and multiplicative orders.

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// A residue in `[0, p)`.
pub type Residue = u64;

/// Largest accepted modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality by trial division. Only meant for `n < 2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// The prime field `F_p`. Elements are plain [`Residue`]s and all arithmetic
/// goes through the field value, which keeps matrices and polynomials free of
/// per-element modulus copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> Residue {
        v % self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> Residue {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_big(&self, v: &BigInt) -> Residue {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    #[inline]
    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Residue, b: Residue) -> Residue {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        a * b % self.p
    }

    pub fn pow(&self, base: Residue, mut exp: u64) -> Residue {
        let mut acc = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Residue) -> Option<Residue> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        Some(self.pow(a, self.p - 2))
    }

    /// Signed representative in `(-p/2, p/2]`, for display.
    pub fn signed(&self, a: Residue) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// `n (n-1) ... (n-m+1) / m!` for any integer `n`; `binom(n, 0) = 1`.
pub fn binomial_general(n: i64, m: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= BigInt::from(n) - BigInt::from(i);
        den *= BigInt::from(i + 1);
        if num.is_zero() {
            return num;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// `binom(n, m) mod p` through the base-`p` digits of `n` and `m` (Lucas).
pub fn binomial_mod_p(n: u64, m: u64, field: &PrimeField) -> Residue {
    let p = field.modulus();
    let (mut n, mut m) = (n, m);
    let mut acc = 1 % p;
    while m > 0 {
        let (nd, md) = (n % p, m % p);
        if md > nd {
            return 0;
        }
        acc = field.mul(acc, small_binomial_mod_p(nd, md, field));
        n /= p;
        m /= p;
    }
    acc
}

// Both arguments are below p, so the denominator is a unit.
fn small_binomial_mod_p(n: u64, m: u64, field: &PrimeField) -> Residue {
    let m = m.min(n - m);
    let mut num = 1;
    let mut den = 1;
    for i in 0..m {
        num = field.mul(num, field.reduce(n - i));
        den = field.mul(den, field.reduce(i + 1));
    }
    field.mul(num, field.inv(den).expect("i + 1 < p"))
}

/// Smallest `e >= 1` with `p^e = 1 mod n`.
pub fn mult_order(p: u64, n: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    if p.gcd(&n) != 1 {
        return Err(Error::PDividesN { p, n });
    }
    let base = p % n;
    let mut acc = base;
    let mut e = 1u32;
    while acc != 1 % n {
        acc = acc * base % n;
        e += 1;
    }
    Ok(e)
}

/// Checked `p^e`.
pub fn checked_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::Overflow("p^e exceeds u64"))
}

/// Returns `Some(e)` when `q = p^e`.
pub fn log_exact(q: u64, p: u64) -> Option<u32> {
    if q == 0 || p < 2 {
        return None;
    }
    let mut e = 0;
    let mut v = q;
    while v.is_multiple_of(p) {
        v /= p;
        e += 1;
    }
    (v == 1).then_some(e)
}

/// Exact integer value of a rational that must be integral.
pub fn into_integer(r: &BigRational) -> Result<BigInt> {
    if r.denom().is_one() {
        Ok(r.numer().clone())
    } else {
        Err(Error::NonIntegral(r.to_string()))
    }
}

pub fn sign_of(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// The exponent bookkeeping around a Frobenius power `q = p^e`: `q = n k + delta`
/// with `0 <= delta < n`, plus `m` with `p = 6m + 5` when `n = 3` and
/// `p = 5 mod 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerParams {
    pub n: u64,
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub k: u64,
    pub delta: u64,
    pub m: Option<u64>,
}

impl PowerParams {
    pub fn new(n: u64, p: u64, e: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
        }
        PrimeField::new(p)?;
        if n.is_multiple_of(p) {
            return Err(Error::PDividesN { p, n });
        }
        let q = checked_power(p, e)?;
        let m = (n == 3 && p % 6 == 5).then(|| (p - 5) / 6);
        Ok(PowerParams { n, p, e, q, k: q / n, delta: q % n, m })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_binomial(n: u64, m: u64) -> BigInt {
        if m > n {
            return BigInt::zero();
        }
        let fact = |k: u64| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
        fact(n) / (fact(m) * fact(n - m))
    }

    #[test]
    fn binomial_general_examples() {
        assert_eq!(binomial_general(5, 2), BigInt::from(10));
        assert_eq!(binomial_general(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_general(7, 0), BigInt::from(1));
        assert_eq!(binomial_general(3, 5), BigInt::zero());
    }

    #[test]
    fn binomial_mod_p_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(binomial_mod_p(12, 5, &f7), 1);
        assert_eq!(binomial_mod_p(4, 2, &f2), 0);
        assert_eq!(binomial_mod_p(6, 3, &f7), 6);
        assert_eq!(binomial_mod_p(3, 5, &f7), 0);
    }

    #[test]
    fn lucas_agrees_with_exact_values() {
        for p in (2..100).filter(|&p| is_prime(p)) {
            let field = PrimeField::new(p).unwrap();
            for n in 0..=40u64 {
                for m in 0..=n {
                    let exact = binomial_general(n as i64, m);
                    assert_eq!(exact, naive_binomial(n, m));
                    assert_eq!(binomial_mod_p(n, m, &field), field.reduce_big(&exact), "({n},{m},{p})");
                }
            }
        }
    }

    #[test]
    fn pascal_and_negation() {
        for n in -10i64..=20 {
            for m in 1..=12u64 {
                assert_eq!(binomial_general(n, m), binomial_general(n - 1, m) + binomial_general(n - 1, m - 1));
            }
        }
        for n in 1..=10i64 {
            for m in 0..=10u64 {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                assert_eq!(binomial_general(-n, m), BigInt::from(sign) * binomial_general(n + m as i64 - 1, m));
            }
        }
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(7, 3).unwrap(), 1);
        assert_eq!(mult_order(2, 3).unwrap(), 2);
        assert_eq!(mult_order(5, 3).unwrap(), 2);
        assert_eq!(mult_order(3, 3), Err(Error::PDividesN { p: 3, n: 3 }));
        assert_eq!(mult_order(2, 4), Err(Error::PDividesN { p: 2, n: 4 }));
    }

    #[test]
    fn mult_order_divides_phi() {
        let phi = |n: u64| (1..=n).filter(|i| i.gcd(&n) == 1).count() as u32;
        for n in 2..40u64 {
            for p in (2..200).filter(|&p| is_prime(p) && n % p != 0) {
                let e = mult_order(p, n).unwrap();
                assert_eq!(phi(n) % e, 0, "p={p} n={n}");
                let pe = (0..e).fold(1u64, |acc, _| acc * p % n);
                assert_eq!(pe, 1 % n);
            }
        }
    }

    #[test]
    fn field_inverse_round_trip() {
        for p in [2u64, 3, 5, 7, 11, 13, 65521, 2147483647] {
            let f = PrimeField::new(p).unwrap();
            for a in [1u64, 2, 3, p - 1, p / 2 + 1] {
                let a = f.reduce(a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn field_rejects_bad_moduli() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(1 << 31), Err(Error::ModulusTooLarge(1 << 31)));
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn power_params_decomposition() {
        let pp = PowerParams::new(3, 7, 1).unwrap();
        assert_eq!((pp.q, pp.k, pp.delta, pp.m), (7, 2, 1, None));
        let pp = PowerParams::new(3, 11, 1).unwrap();
        assert_eq!((pp.q, pp.k, pp.delta, pp.m), (11, 3, 2, Some(1)));
        let pp = PowerParams::new(3, 2, 3).unwrap();
        assert_eq!((pp.q, pp.k, pp.delta), (8, 2, 2));
        assert!(PowerParams::new(4, 2, 1).is_err());
        assert!(PowerParams::new(3, 9, 1).is_err());
    }

    #[test]
    fn log_exact_detects_powers() {
        assert_eq!(log_exact(8, 2), Some(3));
        assert_eq!(log_exact(1, 7), Some(0));
        assert_eq!(log_exact(12, 2), None);
    }
}
