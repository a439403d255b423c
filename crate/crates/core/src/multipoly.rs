//! Sparse multivariate polynomials over a prime field.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded lexicographic order (total degree first, then lexicographic with
//! `x1 > x2 > ...`). Iteration order, Macaulay column order and the canonical
//! text form all derive from it, so every output is reproducible.
//!
//! The canonical text form lists terms from the largest monomial down,
//! separated by `" + "`. A term is `c*x1^2*x3`, with the coefficient omitted
//! when it is `1` and exponents omitted when they are `1`. The zero
//! polynomial is `0`. Coefficients are canonical residues in `[0, p)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact_arith::{log_exact, PrimeField, Residue};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; arity];
        e[i] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("monomial exponent")))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_scale(&self, factor: u32) -> Result<Monomial> {
        self.0
            .iter()
            .map(|a| a.checked_mul(factor).ok_or(Error::Overflow("monomial exponent")))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `arity` variables, ascending in the
/// graded order.
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(arity), d, arity, &mut out);
    out.sort();
    out
}

/// Number of monomials of degree `d` in `arity` variables, saturating.
pub fn monomial_count(arity: usize, d: u32) -> u64 {
    if arity == 0 {
        return u64::from(d == 0);
    }
    // binom(d + arity - 1, arity - 1)
    let r = (arity - 1) as u64;
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc * (d as u128 + i as u128) / i as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A polynomial ring `F_p[v1, ..., vr]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(field: PrimeField, vars: impl IntoIterator<Item = S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate variable {v:?}")));
            }
        }
        Ok(PolyRing { field, vars: vars.into() })
    }

    /// Variables `{prefix}1, ..., {prefix}{arity}`.
    pub fn indexed(field: PrimeField, prefix: &str, arity: usize) -> Self {
        PolyRing::new(field, (1..=arity).map(|i| format!("{prefix}{i}"))).expect("valid names")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(&self, c: Residue) -> MultiPoly {
        self.term(self.field.reduce(c), Monomial::one(self.arity()))
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        self.term(1, Monomial::var(self.arity(), i, 1))
    }

    pub fn term(&self, c: Residue, m: Monomial) -> MultiPoly {
        assert_eq!(m.arity(), self.arity(), "monomial arity");
        let mut terms = BTreeMap::new();
        let c = self.field.reduce(c);
        if c != 0 {
            terms.insert(m, c);
        }
        MultiPoly { ring: self.clone(), terms }
    }

    pub fn monomial(&self, m: Monomial) -> MultiPoly {
        self.term(1, m)
    }

    /// `v1 + v2 + ... + vr`.
    pub fn variable_sum(&self) -> MultiPoly {
        (0..self.arity()).fold(self.zero(), |acc, i| &acc + &self.var(i))
    }

    /// Parse the canonical text form. Also accepts `-` between terms, spaces
    /// anywhere and `*` between a coefficient and the variables.
    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = self.zero();
        let mut chunks = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > start {
                chunks.push(&compact[start..i]);
                start = i;
            }
        }
        chunks.push(&compact[start..]);
        for chunk in chunks {
            let (negate, body) = match chunk.as_bytes()[0] {
                b'+' => (false, &chunk[1..]),
                b'-' => (true, &chunk[1..]),
                _ => (false, chunk),
            };
            let (c, m) = self.parse_term(body)?;
            let c = if negate { self.field.neg(c) } else { c };
            out.add_term(c, m);
        }
        Ok(out)
    }

    fn parse_term(&self, body: &str) -> Result<(Residue, Monomial)> {
        if body.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut coeff = 1u64;
        let mut exps = vec![0u32; self.arity()];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {body:?}")));
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                let v: u64 = factor.parse().map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                coeff = self.field.mul(coeff, self.field.reduce(v));
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let idx = self
                .vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            exps[idx] = exps[idx].checked_add(exp).ok_or(Error::Overflow("monomial exponent"))?;
        }
        Ok((coeff, Monomial(exps)))
    }
}

/// A polynomial in a [`PolyRing`]. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Residue>,
}

impl MultiPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Residue)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Residue {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// The single monomial when `self` is `c * m`.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, c: Residue, m: Monomial) {
        let f = self.ring.field;
        let c = f.reduce(c);
        if c == 0 {
            return;
        }
        debug_assert_eq!(m.arity(), self.ring.arity());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c, m.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.ring.field.neg(1))
    }

    pub fn scale(&self, c: Residue) -> MultiPoly {
        let f = self.ring.field;
        let c = f.reduce(c);
        if c == 0 {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), f.mul(*v, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, c: Residue, m: &Monomial) -> Result<MultiPoly> {
        let f = self.ring.field;
        let c = f.reduce(c);
        if c == 0 {
            return Ok(self.ring.zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, v)| Ok((t.checked_mul(m)?, f.mul(*v, c))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    /// Term-wise exponent scaling by `p`: the Frobenius map over `F_p`.
    pub fn frobenius(&self) -> Result<MultiPoly> {
        let p = u32::try_from(self.ring.field.modulus()).map_err(|_| Error::Overflow("modulus"))?;
        let terms =
            self.terms.iter().map(|(m, c)| Ok((m.checked_scale(p)?, *c))).collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    /// Division of exponents by `n`: the substitution `A_i = x_i^n`. The
    /// result lives in `target`, which must have the same arity.
    pub fn compress_exponents(&self, n: u32, target: &PolyRing) -> Result<MultiPoly> {
        if target.arity() != self.ring.arity() {
            return Err(Error::WrongArity { expected: self.ring.arity(), found: target.arity() });
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let mut out = target.zero();
        for (m, c) in self.terms() {
            let mut exps = Vec::with_capacity(m.arity());
            for &e in m.exponents() {
                if e % n != 0 {
                    return Err(Error::NotDivisible { exponent: e, n });
                }
                exps.push(e / n);
            }
            out.add_term(c, Monomial(exps));
        }
        Ok(out)
    }

    /// Inverse of [`MultiPoly::compress_exponents`].
    pub fn expand_exponents(&self, n: u32, target: &PolyRing) -> Result<MultiPoly> {
        if target.arity() != self.ring.arity() {
            return Err(Error::WrongArity { expected: self.ring.arity(), found: target.arity() });
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        let mut out = target.zero();
        for (m, c) in self.terms() {
            out.add_term(c, m.checked_scale(n)?);
        }
        Ok(out)
    }

    /// Same polynomial with its terms re-homed in `target` (identical field and
    /// arity, possibly different variable names).
    pub fn rename_into(&self, target: &PolyRing) -> Result<MultiPoly> {
        if target.arity() != self.ring.arity() || target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        Ok(MultiPoly { ring: target.clone(), terms: self.terms.clone() })
    }
}

pub fn poly_mul(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    f.check_ring(g)?;
    let field = f.ring.field;
    let mut acc: BTreeMap<Monomial, Residue> = BTreeMap::new();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let m = m1.checked_mul(m2)?;
            let v = field.mul(c1, c2);
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, v);
        }
    }
    acc.retain(|_, c| *c != 0);
    Ok(MultiPoly { ring: f.ring.clone(), terms: acc })
}

/// `f^d`. Writes `d = p^s * r` with `p` not dividing `r`, computes `f^r` by
/// square-and-multiply and applies the Frobenius map `s` times.
pub fn poly_pow(f: &MultiPoly, d: u64) -> Result<MultiPoly> {
    let p = f.ring.field.modulus();
    let mut r = d;
    let mut s = 0;
    while r > 0 && r.is_multiple_of(p) {
        r /= p;
        s += 1;
    }
    let mut out = pow_by_squaring(f, r)?;
    for _ in 0..s {
        out = out.frobenius()?;
    }
    Ok(out)
}

fn pow_by_squaring(f: &MultiPoly, mut d: u64) -> Result<MultiPoly> {
    let mut acc = f.ring.one();
    let mut base = f.clone();
    while d > 0 {
        if d & 1 == 1 {
            acc = poly_mul(&acc, &base)?;
        }
        d >>= 1;
        if d > 0 {
            base = poly_mul(&base, &base)?;
        }
    }
    Ok(acc)
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    /// Panics on ring mismatch; use [`MultiPoly::checked_add`] otherwise.
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    /// Panics on ring mismatch or exponent overflow; use [`poly_mul`] otherwise.
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        poly_mul(self, rhs).expect("poly_mul")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if *c != 1 || m.degree() == 0 {
                parts.push(c.to_string());
            }
            for (v, &e) in self.ring.vars.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => parts.push(v.clone()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Homogeneous ideal generators, optionally together with a hypersurface
/// relation `f` defining the quotient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    ring: PolyRing,
    generators: Vec<MultiPoly>,
    relation: Option<MultiPoly>,
}

impl IdealSpec {
    pub fn new(ring: &PolyRing, generators: Vec<MultiPoly>, relation: Option<MultiPoly>) -> Result<Self> {
        for g in generators.iter().chain(relation.iter()) {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(IdealSpec { ring: ring.clone(), generators, relation })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn relation(&self) -> Option<&MultiPoly> {
        self.relation.as_ref()
    }

    pub fn with_relation(&self, relation: Option<MultiPoly>) -> Result<IdealSpec> {
        IdealSpec::new(&self.ring, self.generators.clone(), relation)
    }
}

/// `I^[q]`: generators raised to the `q`-th power, relation unchanged.
pub fn bracket_power(ideal: &IdealSpec, q: u64) -> Result<IdealSpec> {
    let p = ideal.ring.field.modulus();
    if log_exact(q, p).is_none() {
        return Err(Error::NotCharacteristicPower { q, p });
    }
    let generators = ideal.generators.iter().map(|g| poly_pow(g, q)).collect::<Result<Vec<_>>>()?;
    IdealSpec::new(&ideal.ring, generators, ideal.relation.clone())
}

/// `x1 * x2 * ... * xr`.
pub fn variable_product(ring: &PolyRing) -> MultiPoly {
    ring.monomial(Monomial(vec![1; ring.arity()]))
}

/// `x1^n + ... + xr^n`.
pub fn fermat_form(ring: &PolyRing, n: u32) -> MultiPoly {
    let mut out = ring.zero();
    for i in 0..ring.arity() {
        out.add_term(1, Monomial::var(ring.arity(), i, n));
    }
    out
}

/// `(v1^e, ..., vr^e)`, one pure power per variable.
pub fn pure_powers(ring: &PolyRing, e: u32) -> Vec<MultiPoly> {
    (0..ring.arity()).map(|i| ring.monomial(Monomial::var(ring.arity(), i, e))).collect()
}
