//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use fclosure_cli::certificate::{
    closure_from, closure_json, read_certificate, render, set_elapsed, without_timing, write_certificate,
};
use fclosure_core::closure_certifier::{
    certify_frobenius_closure, certify_tight_closure, check_f_pure, fedder_oracle, CertifyOptions, ClaimKind,
    ClosureCertificate, ProofPath, Verdict,
};
use fclosure_core::determinant_identities::{
    closed_form_value, congruence_identity_check, cubic_grouping_spec, identity_suite, invertibility_mod_p,
    unit_containment_spec, BinomFamily, BinomMatrixSpec,
};
use fclosure_core::exact_arith::{is_prime, BigInt, PrimeField};
use fclosure_core::membership::{induce_step_check, ImplicationStatus};

type Check = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts(exponents: Vec<u32>) -> CertifyOptions {
    CertifyOptions { exponents, ..CertifyOptions::default() }
}

fn find_direct<'a>(
    cert: &'a ClosureCertificate,
    target: &str,
) -> Option<&'a fclosure_core::closure_certifier::MembershipRecord> {
    cert.memberships().find(|m| m.target.to_string() == target)
}

fn criterion_1() -> Check {
    let suite = identity_suite().map_err(err)?;
    let mut det1 = 0;
    let mut det2_defined = 0;
    let mut ratios = 0;
    for case in &suite {
        ensure(case.holds(), || format!("{:?} fails", case.spec))?;
        match case.spec.family {
            BinomFamily::Det1 => {
                ensure(case.defined(), || format!("{:?} has no closed form", case.spec))?;
                det1 += 1;
            }
            BinomFamily::Det2 => {
                det2_defined += usize::from(case.defined());
                ratios += usize::from(case.ratio.is_some());
            }
        }
    }
    let spot = |spec: BinomMatrixSpec| suite.iter().find(|c| c.spec == spec).map(|c| c.bareiss.clone());
    ensure(spot(BinomMatrixSpec::det1(4, 1, 1)) == Some(BigInt::from(20)), || "det1(4,1,1) != 20".into())?;
    ensure(spot(BinomMatrixSpec::det2(7, 4, 1)) == Some(BigInt::from(294)), || "det2(7,4,1) != 294".into())?;
    Ok(format!("{det1} Det1 cases, {det2_defined} defined Det2 cases, {ratios} ratio checks"))
}

fn criterion_2() -> Check {
    let mut count = 0;
    for n in [3u64, 4, 5] {
        for p in (2..=128u64).filter(|&p| is_prime(p) && n % p != 0) {
            let field = PrimeField::new(p).map_err(err)?;
            let mut q = p;
            while q <= 128 {
                if q % n == 1 {
                    let k = (q - 1) / n;
                    let det = invertibility_mod_p(&unit_containment_spec(n, k), &field);
                    ensure(det == 1, || format!("n={n} q={q}: determinant {det} mod {p}"))?;
                    let cong = congruence_identity_check(n, q, p).map_err(err)?;
                    ensure(cong.holds() && cong.rows.len() as u64 == k + 1, || format!("n={n} q={q}: congruence"))?;
                    count += 1;
                }
                q *= p;
            }
        }
    }
    Ok(format!("{count} (n, q) pairs"))
}

fn criterion_3() -> Check {
    let cases = [(3u64, 7u64, 1u32), (3, 13, 1), (3, 2, 2), (3, 5, 2), (4, 5, 1), (4, 13, 1), (5, 11, 1)];
    for (n, p, e) in cases {
        let cert = certify_tight_closure(n, p, &opts(vec![e])).map_err(err)?;
        ensure(cert.verdict == Verdict::Verified, || format!("({n},{p},{e}) not verified"))?;
        let stage = &cert.stages[0];
        ensure(stage.containments.iter().all(|c| c.report.contained()), || format!("({n},{p},{e}) containment"))?;
        if (n, p, e) == (3, 7, 1) || (n, p, e) == (3, 2, 2) {
            let target = if p == 7 { "x1^8*x2^8*x3^8" } else { "x1^5*x2^5*x3^5" };
            let gen = if p == 7 { "x1^14" } else { "x1^8" };
            let m = find_direct(&cert, target).ok_or_else(|| format!("({n},{p},{e}) missing direct check"))?;
            ensure(m.outcome.is_member(), || format!("({n},{p},{e}) direct check not Member"))?;
            ensure(m.ideal.generators()[0].to_string() == gen, || format!("({n},{p},{e}) generator"))?;
            ensure(m.ideal.relation().is_some(), || "direct check not in R".into())?;
        }
    }
    Ok(format!("{} instances", cases.len()))
}

fn frobenius_cases() -> [(u64, u64, ProofPath); 7] {
    [
        (3, 2, ProofPath::CharTwoCubic),
        (3, 5, ProofPath::CubicFiveModSix),
        (3, 11, ProofPath::CubicFiveModSix),
        (4, 3, ProofPath::SmallPrimeIdentity),
        (4, 7, ProofPath::ShiftedContainment),
        (5, 7, ProofPath::ShiftedContainment),
        (5, 13, ProofPath::ShiftedContainment),
    ]
}

fn criterion_4() -> Check {
    let mut direct = 0;
    for (n, p, path) in frobenius_cases() {
        let cert = certify_frobenius_closure(n, p, &CertifyOptions::default()).map_err(err)?;
        ensure(cert.claim == ClaimKind::FrobeniusMembership, || format!("({n},{p}) claim"))?;
        ensure(cert.proof_path == path, || format!("({n},{p}) path {:?}", cert.proof_path))?;
        ensure(cert.verdict == Verdict::Verified, || format!("({n},{p}) not verified"))?;
        let stage = &cert.stages[0];
        let q = stage.params.q;
        ensure(n != 3 || p != 2 || q == 8, || "p = 2 must use q = 8".into())?;
        let degree = n * (n - 2) * q;
        let label_prefix = "direct membership in R";
        let found = stage.memberships.iter().find(|m| m.label.starts_with(label_prefix));
        if degree <= 60 {
            let m = found.ok_or_else(|| format!("({n},{p}) direct check missing at degree {degree}"))?;
            ensure(m.outcome.is_member(), || format!("({n},{p}) direct check not Member"))?;
            direct += 1;
        } else {
            ensure(found.is_none(), || format!("({n},{p}) direct check above the bound"))?;
        }
    }
    Ok(format!("{} instances, {direct} direct cross-checks", frobenius_cases().len()))
}

fn criterion_5() -> Check {
    for p in [7u64, 13] {
        let cert = certify_frobenius_closure(3, p, &CertifyOptions::default()).map_err(err)?;
        ensure(cert.claim == ClaimKind::FrobeniusNonMembership, || format!("(3,{p}) claim"))?;
        ensure(cert.verdict == Verdict::Verified, || format!("(3,{p}) not verified"))?;
        let target = format!("x1^{p}*x2^{p}*x3^{p}");
        let m = find_direct(&cert, &target).ok_or_else(|| format!("(3,{p}) missing direct check"))?;
        ensure(!m.outcome.is_member(), || format!("(3,{p}) direct check is Member"))?;
        ensure(m.ideal.generators()[0].to_string() == format!("x1^{}", 2 * p), || "bracket ideal".into())?;
    }
    Ok("(3,7) and (3,13) NotMember at q = p".into())
}

fn criterion_6() -> Check {
    let mut count = 0;
    for n in 3..=6u64 {
        for p in (2..100u64).filter(|&p| is_prime(p) && n % p != 0) {
            let oracle = fedder_oracle(n, p).map_err(err)?;
            ensure(oracle == (p % n == 1), || format!("disagreement at n={n} p={p}"))?;
            let cert = check_f_pure(n, p).map_err(err)?;
            ensure((cert.claim == ClaimKind::FPure) == oracle, || format!("certificate at n={n} p={p}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs, 0 disagreements"))
}

fn criterion_7() -> Check {
    let mut count = 0;
    for m in 0..=30u64 {
        let p = 6 * m + 5;
        if !is_prime(p) {
            continue;
        }
        let field = PrimeField::new(p).map_err(err)?;
        let spec = cubic_grouping_spec(m);
        let by_elimination = invertibility_mod_p(&spec, &field);
        let by_formula = field.reduce_big(&closed_form_value(&spec).map_err(err)?);
        ensure(by_elimination == by_formula, || format!("m={m}: routes disagree"))?;
        ensure(by_elimination != 0, || format!("m={m}: F vanishes mod {p}"))?;
        count += 1;
    }
    Ok(format!("{count} primes 6m+5"))
}

fn criterion_8() -> Check {
    let (mut premise_true, mut total) = (0, 0);
    for alpha in 1..=3 {
        for beta in 1..=3 {
            for gamma in 1..=3 {
                for r in [3usize, 4] {
                    for p in [2u64, 5, 7] {
                        let report = induce_step_check(alpha, beta, gamma, r, p).map_err(err)?;
                        ensure(report.status() != ImplicationStatus::Counterexample, || format!("{report:?}"))?;
                        premise_true += usize::from(report.premise);
                        total += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{total} instances, {premise_true} with true premise, no counterexample"))
}

fn criterion_9() -> Check {
    let mut certs = Vec::new();
    for (n, p, e) in [(3u64, 7u64, 1u32), (3, 13, 1), (3, 2, 2), (3, 5, 2), (4, 5, 1), (4, 13, 1), (5, 11, 1)] {
        certs.push(certify_tight_closure(n, p, &opts(vec![e])).map_err(err)?);
    }
    for (n, p, _) in frobenius_cases() {
        certs.push(certify_frobenius_closure(n, p, &CertifyOptions::default()).map_err(err)?);
    }
    let mut witnesses = 0;
    for cert in &certs {
        for m in cert.memberships().filter(|m| m.outcome.is_member()) {
            let w = m.witness().expect("members carry witnesses");
            ensure(w.verify(&m.target, &m.ideal), || format!("{} for ({},{})", m.label, cert.n, cert.p))?;
            witnesses += 1;
        }
    }
    let dir = tempfile::tempdir().map_err(err)?;
    for (i, cert) in certs.iter().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        let mut value = closure_json(cert);
        set_elapsed(&mut value, 7);
        write_certificate(&value, &path).map_err(err)?;
        let bytes = std::fs::read_to_string(&path).map_err(err)?;
        let read = read_certificate(&path).map_err(err)?;
        let parsed = closure_from(&read).map_err(err)?;
        ensure(&parsed == cert, || format!("certificate {i} does not round-trip"))?;
        let mut again = closure_json(&parsed);
        set_elapsed(&mut again, 7);
        ensure(render(&again) == bytes, || format!("certificate {i} is not byte-identical"))?;
        let rerun = match cert.claim {
            ClaimKind::TightClosureMembership => {
                certify_tight_closure(cert.n, cert.p, &opts(vec![cert.stages[0].params.e])).map_err(err)?
            }
            _ => certify_frobenius_closure(cert.n, cert.p, &CertifyOptions::default()).map_err(err)?,
        };
        let mut fresh = closure_json(&rerun);
        set_elapsed(&mut fresh, 12345);
        ensure(render(&without_timing(&fresh)) == render(&without_timing(&read)), || {
            format!("certificate {i} differs between runs")
        })?;
    }
    Ok(format!("{witnesses} witnesses re-expanded, {} certificates round-tripped", certs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("determinant identity suite", criterion_1, 10),
        ("unit determinant and congruence", criterion_2, 10),
        ("tight-closure memberships", criterion_3, 60),
        ("Frobenius-closure memberships", criterion_4, 60),
        ("Frobenius non-membership", criterion_5, 30),
        ("F-purity concordance", criterion_6, 10),
        ("grouped determinant nonvanishing", criterion_7, 5),
        ("variable-adding step audit", criterion_8, 60),
        ("witness soundness and certificate round trip", criterion_9, 120),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let line = match (&result, within) {
            (Ok(detail), true) => format!("PASS criterion {}: {name} ({detail}) in {:.2?}", i + 1, elapsed),
            (Ok(detail), false) => {
                format!("FAIL criterion {}: {name} ({detail}) took {:.2?}, limit {limit} s", i + 1, elapsed)
            }
            (Err(why), _) => format!("FAIL criterion {}: {name}: {why} ({:.2?})", i + 1, elapsed),
        };
        if !(result.is_ok() && within) {
            failures += 1;
        }
        println!("{line}");
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
