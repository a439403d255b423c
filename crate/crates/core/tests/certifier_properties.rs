use fclosure_core::closure_certifier::{
    certify_frobenius_closure, certify_tight_closure, check_f_pure, fedder_oracle, CertifyOptions, ClaimKind,
    ProofPath, Verdict,
};
use fclosure_core::exact_arith::is_prime;

fn bounded(bound: u32) -> CertifyOptions {
    CertifyOptions { degree_bound: bound, ..CertifyOptions::default() }
}

#[test]
fn frobenius_iff_boundary() {
    for n in 3..=5u64 {
        for p in (2..50).filter(|&p| is_prime(p) && n % p != 0) {
            let cert = certify_frobenius_closure(n, p, &bounded(30)).unwrap();
            assert_eq!(cert.verdict, Verdict::Verified, "n={n} p={p}");
            let member = cert.claim == ClaimKind::FrobeniusMembership;
            assert_eq!(member, p % n != 1, "n={n} p={p}");
            assert!(cert.proof_path.consistent_with(n, p));
        }
    }
}

#[test]
fn fedder_oracle_concordance() {
    for n in 3..=6u64 {
        for p in (2..100).filter(|&p| is_prime(p) && n % p != 0) {
            assert_eq!(fedder_oracle(n, p).unwrap(), p % n == 1, "n={n} p={p}");
            let cert = check_f_pure(n, p).unwrap();
            let expected = if p % n == 1 { ClaimKind::FPure } else { ClaimKind::NotFPure };
            assert_eq!(cert.claim, expected);
        }
    }
}

#[test]
fn two_path_concordance() {
    for (n, p, e) in [(3u64, 7u64, 1u32), (3, 2, 2), (3, 13, 1), (4, 5, 1)] {
        let options = CertifyOptions { exponents: vec![e], degree_bound: 60 };
        let cert = certify_tight_closure(n, p, &options).unwrap();
        let stage = &cert.stages[0];
        let containment = stage.containments.iter().all(|c| c.report.contained());
        for m in &stage.memberships {
            assert_eq!(m.outcome.is_member(), containment, "{} for n={n} p={p}", m.label);
        }
    }
}

#[test]
fn containment_reports_cover_every_monomial() {
    for (n, p) in [(3u64, 7u64), (3, 13), (4, 5), (4, 13), (5, 11)] {
        let cert = certify_tight_closure(n, p, &bounded(0)).unwrap();
        for stage in &cert.stages {
            let k = stage.params.k;
            for c in &stage.containments {
                assert_eq!(c.report.monomials.len() as u64, (2 * n - 3) * k + 1);
            }
        }
    }
    for (n, p) in [(4u64, 7u64), (5, 7), (5, 13)] {
        let cert = certify_frobenius_closure(n, p, &bounded(0)).unwrap();
        let k = cert.stages[0].params.k;
        assert_eq!(cert.stages[0].containments[0].report.monomials.len() as u64, (2 * n - 3) * k + 1);
    }
}

#[test]
fn cubic_determinant_guard() {
    for p in (5..200).filter(|&p| is_prime(p) && p % 6 == 5) {
        let cert = certify_frobenius_closure(3, p, &bounded(0)).unwrap();
        assert_eq!(cert.proof_path, ProofPath::CubicFiveModSix);
        assert_ne!(cert.stages[0].determinants[0].mod_p, 0, "p={p}");
        assert!(cert.is_verified());
    }
}

#[test]
fn verified_certificates_carry_evidence() {
    let mut certs = Vec::new();
    for (n, p) in [(3u64, 2u64), (3, 5), (3, 7), (4, 3), (4, 7), (5, 2)] {
        certs.push(certify_frobenius_closure(n, p, &bounded(40)).unwrap());
    }
    certs.push(certify_tight_closure(3, 7, &bounded(40)).unwrap());
    for cert in &certs {
        assert!(cert.is_verified());
        assert!(cert.witnesses_sound());
        let evidence = cert.fedder.is_some()
            || cert
                .stages
                .iter()
                .any(|s| !s.containments.is_empty() || s.memberships.iter().any(|m| m.witness().is_some()));
        assert!(evidence);
    }
}
