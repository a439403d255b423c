//! Homogeneous ideal membership by degree-`d` linear algebra.
//!
//! For homogeneous `h` of degree `d` and homogeneous generators `g_i`,
//! `h` lies in `(g_1, ..., g_s)` iff `h` is an `F_p`-combination of the
//! products `m * g_i` with `m` a monomial of degree `d - deg g_i`. The
//! coefficient vectors of those products are the rows of the Macaulay
//! matrix; membership is solvability of a linear system.
//!
//! Two constructions of that system exist here:
//!
//! * [`MacaulaySystem::full`] lists every degree-`d` monomial and every
//!   multiple. It is the literal definition and is used by
//!   [`power_span_containment`].
//! * [`MacaulaySystem::connected`] is what [`macaulay_membership`] solves.
//!   Columns divisible by a monomial generator are absorbed (that generator's
//!   multiple is a unit row), and only the rows and columns reachable from the
//!   target's remaining support through shared monomials are kept. The
//!   Macaulay matrix is block diagonal along those components, so restricting
//!   to the target's block decides the same question. For the Fermat-type
//!   relations used in this crate, the blocks are the exponent classes modulo
//!   `n`, which keeps direct checks in the quotient ring small.
//!
//! Membership in a hypersurface quotient `S / (f)` with homogeneous `f` is
//! decided by adjoining `f` as an extra generator: any representation of `h`
//! can be truncated to its degree-`d` component, so the graded pieces agree.
//!
//! Every `Member` verdict carries a [`MembershipWitness`] that has already been
//! re-expanded and compared with the target term by term.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exact_arith::{PrimeField, Residue};
use crate::linear_solver::{solve_mod_p, FpMatrix, Solution};
use crate::multipoly::{
    monomial_count, monomials_of_degree, poly_mul, poly_pow, IdealSpec, Monomial, MultiPoly, PolyRing,
};

/// Largest number of degree-`d` monomials an instance may have before the
/// checks refuse it.
pub const DESK_SCALE_MONOMIALS: u64 = 200_000;

/// A multiple `multiplier * generators[generator]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MacaulayRow {
    pub generator: usize,
    pub multiplier: Monomial,
}

#[derive(Clone, Debug)]
pub struct MacaulaySystem {
    pub degree: u32,
    /// Ascending graded order.
    pub columns: Vec<Monomial>,
    /// Generator order, then multipliers in ascending graded order.
    pub rows: Vec<MacaulayRow>,
    field: PrimeField,
    entries: Vec<BTreeMap<usize, Residue>>,
}

impl MacaulaySystem {
    /// Every degree-`d` monomial as a column, every multiple as a row.
    pub fn full(ring: &PolyRing, generators: &[MultiPoly], degree: u32) -> Result<Self> {
        check_desk_scale(ring.arity(), degree)?;
        let columns = monomials_of_degree(ring.arity(), degree);
        let mut rows = Vec::new();
        for (gi, g) in generators.iter().enumerate() {
            let Some(dg) = g.degree() else { continue };
            if dg > degree {
                continue;
            }
            for m in monomials_of_degree(ring.arity(), degree - dg) {
                rows.push(MacaulayRow { generator: gi, multiplier: m });
            }
        }
        Self::assemble(ring.field(), generators, degree, columns, rows)
    }

    /// The block of the system containing `target`, with columns divisible by
    /// a monomial generator absorbed. Monomial generators contribute no rows.
    pub fn connected(target: &MultiPoly, generators: &[MultiPoly]) -> Result<Self> {
        let ring = target.ring();
        let degree = target.degree().unwrap_or(0);
        check_desk_scale(ring.arity(), degree)?;
        let absorb = Absorber::new(generators);
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue: VecDeque<Monomial> = VecDeque::new();
        for (m, _) in target.terms() {
            if absorb.owner(m).is_none() && seen.insert(m.clone()) {
                queue.push_back(m.clone());
            }
        }
        let mut rows: BTreeSet<MacaulayRow> = BTreeSet::new();
        while let Some(u) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                if absorb.is_monomial(gi) || g.is_zero() {
                    continue;
                }
                for (t, _) in g.terms() {
                    let Some(mult) = t.quotient_of(&u) else { continue };
                    let row = MacaulayRow { generator: gi, multiplier: mult };
                    if rows.contains(&row) {
                        continue;
                    }
                    for (t2, _) in g.terms() {
                        let col = t2.checked_mul(&row.multiplier)?;
                        if absorb.owner(&col).is_none() && seen.insert(col.clone()) {
                            queue.push_back(col);
                        }
                    }
                    rows.insert(row);
                }
            }
        }
        let mut columns: Vec<Monomial> = seen.into_iter().collect();
        columns.sort();
        Self::assemble(ring.field(), generators, degree, columns, rows.into_iter().collect())
    }

    fn assemble(
        field: PrimeField,
        generators: &[MultiPoly],
        degree: u32,
        columns: Vec<Monomial>,
        rows: Vec<MacaulayRow>,
    ) -> Result<Self> {
        let index: BTreeMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut entries = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut e = BTreeMap::new();
            for (t, c) in generators[row.generator].terms() {
                let m = t.checked_mul(&row.multiplier)?;
                if let Some(&j) = index.get(&m) {
                    e.insert(j, c);
                }
            }
            entries.push(e);
        }
        Ok(MacaulaySystem { degree, columns, rows, field, entries })
    }

    /// Transposed Macaulay matrix: one row per column monomial, one column per
    /// multiple, so that membership reads `A x = b`.
    pub fn transposed_matrix(&self) -> FpMatrix {
        let mut a = FpMatrix::zeros(self.field, self.columns.len(), self.rows.len());
        for (j, e) in self.entries.iter().enumerate() {
            for (&i, &c) in e {
                a.set(i, j, c);
            }
        }
        a
    }

    /// Rows as coefficient vectors over `columns`.
    pub fn matrix(&self) -> FpMatrix {
        let mut a = FpMatrix::zeros(self.field, self.rows.len(), self.columns.len());
        for (i, e) in self.entries.iter().enumerate() {
            for (&j, &c) in e {
                a.set(i, j, c);
            }
        }
        a
    }

    pub fn coordinates(&self, h: &MultiPoly) -> Vec<Residue> {
        self.columns.iter().map(|m| h.coefficient(m)).collect()
    }
}

fn check_desk_scale(arity: usize, degree: u32) -> Result<()> {
    let count = monomial_count(arity, degree);
    if count > DESK_SCALE_MONOMIALS {
        return Err(Error::DeskScale(format!("{count} monomials of degree {degree} in {arity} variables")));
    }
    Ok(())
}

struct Absorber {
    monomials: Vec<Option<Monomial>>,
}

impl Absorber {
    fn new(generators: &[MultiPoly]) -> Self {
        Absorber { monomials: generators.iter().map(|g| g.as_monomial().cloned()).collect() }
    }

    fn is_monomial(&self, gi: usize) -> bool {
        self.monomials[gi].is_some()
    }

    /// First monomial generator dividing `m`.
    fn owner(&self, m: &Monomial) -> Option<(usize, &Monomial)> {
        self.monomials.iter().enumerate().find_map(|(i, g)| g.as_ref().filter(|g| g.divides(m)).map(|g| (i, g)))
    }
}

/// Coefficients `g_1, ..., g_s` (and `g_f` in the quotient case) with
/// `h = sum g_i f_i (+ g_f f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub generator_coefficients: Vec<MultiPoly>,
    pub relation_coefficient: Option<MultiPoly>,
}

impl MembershipWitness {
    /// Validates by re-expansion.
    pub fn new(
        target: &MultiPoly,
        ideal: &IdealSpec,
        generator_coefficients: Vec<MultiPoly>,
        relation_coefficient: Option<MultiPoly>,
    ) -> Result<Self> {
        let w = MembershipWitness { generator_coefficients, relation_coefficient };
        if w.expand(ideal)? == *target {
            Ok(w)
        } else {
            Err(Error::WitnessMismatch)
        }
    }

    pub fn expand(&self, ideal: &IdealSpec) -> Result<MultiPoly> {
        if self.generator_coefficients.len() != ideal.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} generators",
                self.generator_coefficients.len(),
                ideal.generators().len()
            )));
        }
        let mut acc = ideal.ring().zero();
        for (c, g) in self.generator_coefficients.iter().zip(ideal.generators()) {
            acc = acc.checked_add(&poly_mul(c, g)?)?;
        }
        match (&self.relation_coefficient, ideal.relation()) {
            (Some(c), Some(f)) => acc = acc.checked_add(&poly_mul(c, f)?)?,
            (None, _) => {}
            (Some(_), None) => return Err(Error::DimensionMismatch("relation coefficient without relation".into())),
        }
        Ok(acc)
    }

    pub fn verify(&self, target: &MultiPoly, ideal: &IdealSpec) -> bool {
        self.expand(ideal).is_ok_and(|e| e == *target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMembership {
    pub degree: u32,
    /// Rank of the solved Macaulay block.
    pub rank: usize,
    pub columns: usize,
    pub rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(MembershipWitness),
    NotMember(NonMembership),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn witness(&self) -> Option<&MembershipWitness> {
        match self {
            Membership::Member(w) => Some(w),
            Membership::NotMember(_) => None,
        }
    }
}

fn check_inputs(h: &MultiPoly, ideal: &IdealSpec) -> Result<()> {
    if h.ring() != ideal.ring() {
        return Err(Error::RingMismatch);
    }
    if !h.is_homogeneous() {
        return Err(Error::Inhomogeneous);
    }
    Ok(())
}

/// Decide `h in (generators)`; returns per-generator coefficients.
fn decide(h: &MultiPoly, generators: &[MultiPoly]) -> Result<std::result::Result<Vec<MultiPoly>, NonMembership>> {
    let ring = h.ring();
    if h.is_zero() {
        return Ok(Ok(vec![ring.zero(); generators.len()]));
    }
    let system = MacaulaySystem::connected(h, generators)?;
    let mut coeffs = vec![ring.zero(); generators.len()];
    if !system.columns.is_empty() {
        let a = system.transposed_matrix();
        let b = system.coordinates(h);
        match solve_mod_p(&a, &b)? {
            Solution::NoSolution { rank } => {
                return Ok(Err(NonMembership {
                    degree: system.degree,
                    rank,
                    columns: system.columns.len(),
                    rows: system.rows.len(),
                }))
            }
            Solution::Unique(x) => {
                for (row, c) in system.rows.iter().zip(x) {
                    coeffs[row.generator].add_term(c, row.multiplier.clone());
                }
            }
        }
    }
    // What is left over must sit on absorbed columns.
    let mut residual = h.clone();
    for (c, g) in coeffs.iter().zip(generators) {
        if !c.is_zero() {
            residual = residual.checked_sub(&poly_mul(c, g)?)?;
        }
    }
    let absorb = Absorber::new(generators);
    for (m, c) in residual.terms() {
        let (gi, gm) = absorb.owner(m).ok_or(Error::WitnessMismatch)?;
        let lead = generators[gi].coefficient(gm);
        let inv = ring.field().inv(lead).expect("stored coefficients are nonzero");
        let mult = gm.quotient_of(m).expect("owner divides");
        coeffs[gi].add_term(ring.field().mul(c, inv), mult);
    }
    Ok(Ok(coeffs))
}

/// Membership of homogeneous `h` in the ideal generated by
/// `ideal.generators()` in the polynomial ring. Any relation on `ideal` is
/// ignored; see [`quotient_membership`].
pub fn macaulay_membership(h: &MultiPoly, ideal: &IdealSpec) -> Result<Membership> {
    check_inputs(h, ideal)?;
    let plain = ideal.with_relation(None)?;
    Ok(match decide(h, plain.generators())? {
        Ok(coeffs) => Membership::Member(MembershipWitness::new(h, &plain, coeffs, None)?),
        Err(nm) => Membership::NotMember(nm),
    })
}

/// Membership of homogeneous `h` in `I R` where `R = S / (f)`, decided as
/// `h in (g_1, ..., g_s, f)` in `S`. The witness carries the `f` coefficient.
pub fn quotient_membership(h: &MultiPoly, ideal: &IdealSpec) -> Result<Membership> {
    check_inputs(h, ideal)?;
    let f = ideal.relation().ok_or_else(|| Error::InvalidParameter("quotient membership needs a relation".into()))?;
    let mut gens = ideal.generators().to_vec();
    gens.push(f.clone());
    Ok(match decide(h, &gens)? {
        Ok(mut coeffs) => {
            let gf = coeffs.pop();
            Membership::Member(MembershipWitness::new(h, ideal, coeffs, gf)?)
        }
        Err(nm) => Membership::NotMember(nm),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub degree: u32,
    /// Every degree-`d` monomial with its membership, ascending graded order.
    pub monomials: Vec<(Monomial, bool)>,
    pub rank: usize,
}

impl ContainmentReport {
    pub fn contained(&self) -> bool {
        self.monomials.iter().all(|(_, c)| *c)
    }

    pub fn failing(&self) -> Vec<&Monomial> {
        self.monomials.iter().filter(|(_, c)| !*c).map(|(m, _)| m).collect()
    }
}

/// Whether `(A, B)^d` is contained in a two-variable ideal, through the row
/// echelon form of the full degree-`d` Macaulay matrix.
pub fn power_span_containment(degree: u32, ideal: &IdealSpec) -> Result<ContainmentReport> {
    if ideal.ring().arity() != 2 {
        return Err(Error::WrongArity { expected: 2, found: ideal.ring().arity() });
    }
    let system = MacaulaySystem::full(ideal.ring(), ideal.generators(), degree)?;
    let mut echelon = system.matrix();
    let pivots = echelon.row_reduce();
    let rank = pivots.len();
    let f = echelon.field();
    let monomials = system
        .columns
        .iter()
        .enumerate()
        .map(|(j, m)| {
            // e_j against the reduced rows: clear pivot positions and see
            // whether anything survives.
            let mut v = vec![0; system.columns.len()];
            v[j] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let factor = v[c];
                if factor != 0 {
                    for (k, &e) in echelon.row(r).iter().enumerate() {
                        v[k] = f.sub(v[k], f.mul(factor, e));
                    }
                }
            }
            (m.clone(), v.iter().all(|&x| x == 0))
        })
        .collect();
    Ok(ContainmentReport { degree, monomials, rank })
}

/// The ideal `(A^a, B^b, (A + B)^c)` in a two-variable ring.
pub fn binomial_power_ideal(ring: &PolyRing, a: u32, b: u32, c: u32) -> Result<IdealSpec> {
    if ring.arity() != 2 {
        return Err(Error::WrongArity { expected: 2, found: ring.arity() });
    }
    let gens = vec![
        ring.monomial(Monomial::var(2, 0, a)),
        ring.monomial(Monomial::var(2, 1, b)),
        poly_pow(&ring.variable_sum(), c as u64)?,
    ];
    IdealSpec::new(ring, gens, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImplicationStatus {
    /// Premise false; the implication holds vacuously.
    PremiseFalse,
    Held,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationReport {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub r: usize,
    pub p: u64,
    pub premise: bool,
    pub conclusion: bool,
}

impl ImplicationReport {
    pub fn status(&self) -> ImplicationStatus {
        match (self.premise, self.conclusion) {
            (false, _) => ImplicationStatus::PremiseFalse,
            (true, true) => ImplicationStatus::Held,
            (true, false) => ImplicationStatus::Counterexample,
        }
    }

    pub fn holds(&self) -> bool {
        self.status() != ImplicationStatus::Counterexample
    }
}

/// `(A_1 ... A_s)^alpha (A_1 + ... + A_s)^e` against
/// `(A_1^(alpha+gamma), ..., A_s^(alpha+gamma), (A_1 + ... + A_s)^(alpha+gamma))`
/// in `s` variables.
fn variable_step_membership(field: PrimeField, s: usize, alpha: u32, e: u32, gamma: u32) -> Result<bool> {
    let ring = PolyRing::indexed(field, "A", s);
    let degree = s as u32 * alpha + e;
    check_desk_scale(s, degree)?;
    let sum = ring.variable_sum();
    let prod = ring.monomial(Monomial::new(vec![alpha; s]));
    let target = poly_mul(&prod, &poly_pow(&sum, e as u64)?)?;
    let top = alpha + gamma;
    let mut gens: Vec<MultiPoly> = (0..s).map(|i| ring.monomial(Monomial::var(s, i, top))).collect();
    gens.push(poly_pow(&sum, top as u64)?);
    let ideal = IdealSpec::new(&ring, gens, None)?;
    Ok(macaulay_membership(&target, &ideal)?.is_member())
}

/// Decide both sides of the variable-adding step directly: the premise in
/// `r - 1` variables with exponent `beta`, the conclusion in `r` variables
/// with exponent `beta + gamma - 1`.
pub fn induce_step_check(alpha: u32, beta: u32, gamma: u32, r: usize, p: u64) -> Result<ImplicationReport> {
    if alpha == 0 || beta == 0 || gamma == 0 {
        return Err(Error::InvalidParameter("alpha, beta, gamma must be positive".into()));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r = {r} must be at least 2")));
    }
    let field = PrimeField::new(p)?;
    let premise = variable_step_membership(field, r - 1, alpha, beta, gamma)?;
    let conclusion = variable_step_membership(field, r, alpha, beta + gamma - 1, gamma)?;
    Ok(ImplicationReport { alpha, beta, gamma, r, p, premise, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{fermat_form, pure_powers, variable_product};

    fn ab(p: u64) -> PolyRing {
        PolyRing::new(PrimeField::new(p).unwrap(), ["A", "B"]).unwrap()
    }

    fn xyz(p: u64) -> PolyRing {
        PolyRing::new(PrimeField::new(p).unwrap(), ["x", "y", "z"]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let r = ab(5);
        let h = r.parse("A^2*B + A*B^2").unwrap();
        let i = IdealSpec::new(&r, vec![r.parse("A^2").unwrap(), r.parse("B^2").unwrap()], None).unwrap();
        let w = macaulay_membership(&h, &i).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.generator_coefficients, vec![r.parse("B").unwrap(), r.parse("A").unwrap()]);

        let r2 = ab(2);
        let i = binomial_power_ideal(&r2, 2, 2, 2).unwrap();
        let out = macaulay_membership(&r2.parse("A*B").unwrap(), &i).unwrap();
        assert!(matches!(out, Membership::NotMember(NonMembership { degree: 2, .. })));

        let i = binomial_power_ideal(&r, 3, 3, 3).unwrap();
        let w = macaulay_membership(&h, &i).unwrap();
        assert_eq!(w.witness().unwrap().generator_coefficients, vec![r.constant(3), r.constant(3), r.constant(2)]);
    }

    #[test]
    fn membership_rejects_inhomogeneous() {
        let r = ab(5);
        let i = binomial_power_ideal(&r, 2, 2, 2).unwrap();
        assert_eq!(macaulay_membership(&r.parse("A^2 + B").unwrap(), &i), Err(Error::Inhomogeneous));
        assert_eq!(IdealSpec::new(&r, vec![r.parse("A + 1").unwrap()], None), Err(Error::Inhomogeneous));
    }

    #[test]
    fn quotient_examples() {
        let r = xyz(2);
        let f = fermat_form(&r, 3);
        let ideal = IdealSpec::new(&r, pure_powers(&r, 16), Some(f.clone())).unwrap();
        let h = poly_pow(&variable_product(&r), 8).unwrap();
        let out = quotient_membership(&h, &ideal).unwrap();
        assert!(out.witness().unwrap().verify(&h, &ideal));

        let h = poly_mul(&f, &r.var(0)).unwrap();
        let ideal = IdealSpec::new(&r, vec![], Some(f.clone())).unwrap();
        let w = quotient_membership(&h, &ideal).unwrap();
        assert_eq!(w.witness().unwrap().relation_coefficient, Some(r.var(0)));

        let r = xyz(7);
        let ideal = IdealSpec::new(&r, pure_powers(&r, 14), Some(fermat_form(&r, 3))).unwrap();
        let h = poly_pow(&variable_product(&r), 7).unwrap();
        assert!(!quotient_membership(&h, &ideal).unwrap().is_member());
    }

    #[test]
    fn quotient_requires_relation() {
        let r = xyz(7);
        let ideal = IdealSpec::new(&r, pure_powers(&r, 2), None).unwrap();
        assert!(quotient_membership(&r.parse("x*y").unwrap(), &ideal).is_err());
    }

    #[test]
    fn connected_block_agrees_with_full_system() {
        // Same verdicts as solving the literal full Macaulay system.
        for p in [2u64, 3, 5, 7] {
            let r = xyz(p);
            let f = fermat_form(&r, 3);
            for e in 3..7u32 {
                let mut gens = pure_powers(&r, e);
                gens.push(f.clone());
                for d in e..e + 4 {
                    for m in monomials_of_degree(3, d) {
                        let h = r.monomial(m);
                        let full = MacaulaySystem::full(&r, &gens, d).unwrap();
                        let a = full.transposed_matrix();
                        let expected = solve_mod_p(&a, &full.coordinates(&h)).unwrap().vector().is_some();
                        let ideal = IdealSpec::new(&r, gens.clone(), None).unwrap();
                        assert_eq!(macaulay_membership(&h, &ideal).unwrap().is_member(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn containment_examples() {
        let r = ab(7);
        let i = binomial_power_ideal(&r, 4, 4, 4).unwrap();
        assert!(power_span_containment(6, &i).unwrap().contained());
        assert!(power_span_containment(5, &i).unwrap().contained());

        let r = ab(2);
        let i = binomial_power_ideal(&r, 2, 2, 2).unwrap();
        let rep = power_span_containment(2, &i).unwrap();
        assert!(!rep.contained());
        assert_eq!(rep.failing(), vec![&Monomial::new(vec![1, 1])]);
        assert_eq!(rep.monomials.len(), 3);
    }

    #[test]
    fn containment_rejects_other_arity() {
        let r = xyz(7);
        let i = IdealSpec::new(&r, pure_powers(&r, 2), None).unwrap();
        assert_eq!(power_span_containment(3, &i), Err(Error::WrongArity { expected: 2, found: 3 }));
    }

    #[test]
    fn containment_matches_per_monomial_membership() {
        for p in [2u64, 3, 5, 7, 11] {
            let r = ab(p);
            for (a, b, c) in [(2, 2, 2), (3, 3, 3), (4, 4, 4), (3, 5, 4), (5, 5, 5)] {
                let i = binomial_power_ideal(&r, a, b, c).unwrap();
                let mut prev = false;
                for d in 0..12 {
                    let rep = power_span_containment(d, &i).unwrap();
                    for (m, inside) in &rep.monomials {
                        let direct = macaulay_membership(&r.monomial(m.clone()), &i).unwrap();
                        assert_eq!(direct.is_member(), *inside, "p={p} ({a},{b},{c}) d={d} {m:?}");
                    }
                    assert!(!prev || rep.contained(), "containment must persist upward");
                    prev = rep.contained();
                }
            }
        }
    }

    #[test]
    fn induce_step_examples() {
        let rep = induce_step_check(1, 1, 1, 3, 5).unwrap();
        assert!(rep.premise && rep.conclusion);
        assert_eq!(induce_step_check(2, 2, 2, 3, 7).unwrap().status(), ImplicationStatus::Held);
        // One variable: A^(alpha+beta) in (A^(alpha+gamma)) needs beta >= gamma.
        let rep = induce_step_check(1, 1, 2, 2, 5).unwrap();
        assert_eq!(rep.status(), ImplicationStatus::PremiseFalse);
        assert!(rep.holds());
        assert!(induce_step_check(0, 1, 1, 3, 5).is_err());
        assert!(induce_step_check(1, 1, 1, 3, 4).is_err());
    }

    #[test]
    fn multiples_of_members_are_members() {
        let r = ab(5);
        let i = binomial_power_ideal(&r, 3, 3, 3).unwrap();
        let h = r.parse("A^2*B + A*B^2").unwrap();
        assert!(macaulay_membership(&h, &i).unwrap().is_member());
        for m in monomials_of_degree(2, 2) {
            let hm = poly_mul(&h, &r.monomial(m)).unwrap();
            assert!(macaulay_membership(&hm, &i).unwrap().is_member());
        }
    }
}
