//! Subcommands, the shared job runner and exit codes.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use fclosure_core::closure_certifier::{
    certify_frobenius_closure, certify_tight_closure, check_f_pure, direct_membership, CertifyOptions,
    ClosureCertificate, DeterminantRecord, DeterminantRequirement, Expectation, MembershipRecord, Stage,
    DEFAULT_DEGREE_BOUND,
};
use fclosure_core::determinant_identities::{
    congruence_identity_check, cubic_grouping_spec, identity_suite, shifted_containment_spec, unit_containment_spec,
    CongruenceReport, IdentityCase,
};
use fclosure_core::exact_arith::{binomial_mod_p, mult_order, PowerParams, PrimeField};
use fclosure_core::membership::Membership;

use crate::certificate::{self, KIND_CLOSURE, KIND_DETERMINANTS, KIND_ORACLE};
use crate::config;
use crate::{CliError, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "fclosure", version, about = "Tight and Frobenius closure certificates for diagonal hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify (x1...xn)^((n-2)q+1) in I^[q] for q = p^e = 1 mod n.
    Tight(InstanceArgs),
    /// Decide (x1...xn)^(n-2) against the Frobenius closure of I.
    Frobenius(InstanceArgs),
    /// Decide F-purity of the diagonal hypersurface.
    Fpure(PairArgs),
    /// Determinant identity suite, or the determinants of one instance.
    Det(DetArgs),
    /// Raw quotient membership of (x1...xn)^((n-2)q) in I^[q].
    Oracle(OracleArgs),
    /// Re-check the witnesses of a certificate file.
    VerifyCert { file: PathBuf },
    /// Run the jobs of a JSON config, one certificate per job.
    Batch {
        #[arg(long)]
        batch: PathBuf,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InstanceArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: u64,
    /// Exponents e, comma separated.
    #[arg(long, value_delimiter = ',')]
    e: Vec<u32>,
    #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
    degree_bound: u32,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DetArgs {
    #[arg(long, requires = "p")]
    n: Option<u64>,
    #[arg(long, requires = "n")]
    p: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    e: Vec<u32>,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Use the exponent (n-2)q + 1.
    #[arg(long)]
    tight: bool,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

/// One unit of work, shared by the subcommands and batch mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Tight { n: u64, p: u64, options: CertifyOptions },
    Frobenius { n: u64, p: u64, options: CertifyOptions },
    FPure { n: u64, p: u64 },
    Det { n: Option<u64>, p: Option<u64>, exponents: Vec<u32> },
    Oracle { n: u64, p: u64, e: u32, tight: bool },
}

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::Tight { .. } => "tight",
            Job::Frobenius { .. } => "frobenius",
            Job::FPure { .. } => "fpure",
            Job::Det { .. } => "det",
            Job::Oracle { .. } => "oracle",
        }
    }

    pub fn file_stem(&self) -> String {
        match self {
            Job::Tight { n, p, .. } | Job::Frobenius { n, p, .. } | Job::FPure { n, p } => {
                format!("{}-n{n}-p{p}", self.command())
            }
            Job::Det { n: Some(n), p: Some(p), .. } => format!("det-n{n}-p{p}"),
            Job::Det { .. } => "det-suite".into(),
            Job::Oracle { n, p, e, tight } => format!("oracle-n{n}-p{p}-e{e}{}", if *tight { "-tight" } else { "" }),
        }
    }
}

/// The result of a job: the certificate (without timing), the verdict
/// string, the exit code and a human-readable report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub certificate: Value,
    pub verdict: String,
    pub exit_code: i32,
    pub report: Vec<String>,
}

fn closure_outcome(cert: &ClosureCertificate) -> Outcome {
    let mut report = vec![format!("claim: {}", cert.claim.name()), format!("proof path: {}", cert.proof_path.tag())];
    for stage in &cert.stages {
        report.extend(stage_lines(stage));
    }
    if let Some(f) = &cert.fedder {
        let w = f.witness.as_ref().map_or("none".into(), |w| format!("{w:?}"));
        report.push(format!("fedder: criterion {} oracle {} witness {w}", f.criterion, f.oracle));
    }
    let verdict = certificate::verdict_text(cert).to_string();
    report.push(format!("verdict: {verdict}"));
    Outcome {
        certificate: certificate::closure_json(cert),
        verdict,
        exit_code: if cert.is_verified() { EXIT_OK } else { EXIT_REFUTED },
        report,
    }
}

fn stage_lines(stage: &Stage) -> Vec<String> {
    let pp = &stage.params;
    let mut out = vec![format!("q = {}^{} = {}: k = {}, delta = {}", pp.p, pp.e, pp.q, pp.k, pp.delta)];
    for d in &stage.determinants {
        let exact = d.exact.as_ref().map_or("-".into(), ToString::to_string);
        out.push(format!("  determinant {}: {} (mod p: {})", d.label, exact, d.mod_p));
    }
    if let Some(c) = &stage.congruence {
        out.push(format!("  congruence rows 0..={}: {}", c.k, if c.holds() { "hold" } else { "FAIL" }));
    }
    for c in &stage.containments {
        let status = if c.report.contained() { "contained" } else { "NOT contained" };
        out.push(format!("  {}: {status} ({} monomials)", c.label, c.report.monomials.len()));
    }
    for m in &stage.memberships {
        let outcome = if m.outcome.is_member() { "Member" } else { "NotMember" };
        let ok = if m.agrees() { "" } else { " (unexpected)" };
        out.push(format!("  {}: {outcome}{ok}", m.label));
    }
    for s in &stage.skipped {
        out.push(format!("  skipped {s}"));
    }
    out
}

type InstanceRecords = Vec<(PowerParams, Vec<DeterminantRecord>, Option<CongruenceReport>)>;

/// Determinants backing the certifier for one `(n, p)`: the unit determinant
/// and congruence for each `q = 1 mod n`, plus the shifted or grouped
/// determinant when `q = p` falls in one of those cases.
fn instance_determinants(n: u64, p: u64, exponents: &[u32]) -> Result<InstanceRecords, CliError> {
    let field = PrimeField::new(p)?;
    let exponents = if exponents.is_empty() { vec![mult_order(p, n)?] } else { exponents.to_vec() };
    let mut out = Vec::new();
    for e in exponents {
        let params = PowerParams::new(n, p, e)?;
        if params.q % n == 1 && params.q > 1 {
            let det = DeterminantRecord::compute(
                "unit containment determinant",
                unit_containment_spec(n, params.k),
                &field,
                DeterminantRequirement::EqualsOne,
            )?;
            let cong = congruence_identity_check(n, params.q, p)?;
            out.push((params, vec![det], Some(cong)));
        }
    }
    let base = PowerParams::new(n, p, 1)?;
    if let Some(m) = base.m {
        let det = DeterminantRecord::compute(
            "grouped coefficient determinant",
            cubic_grouping_spec(m),
            &field,
            DeterminantRequirement::Nonzero,
        )?;
        out.push((base, vec![det], None));
    } else if n >= 4 && base.k >= 1 && base.delta >= 2 {
        let det = DeterminantRecord::compute(
            "shifted containment determinant",
            shifted_containment_spec(n, base.k),
            &field,
            DeterminantRequirement::Nonzero,
        )?;
        out.push((base, vec![det], None));
    }
    if out.is_empty() {
        return Err(CliError::Format(format!("no determinant applies to n = {n}, p = {p}")));
    }
    Ok(out)
}

fn det_outcome(n: Option<u64>, p: Option<u64>, exponents: &[u32]) -> Result<Outcome, CliError> {
    let mut report = Vec::new();
    let (cases, records): (Vec<IdentityCase>, InstanceRecords) = match (n, p) {
        (Some(n), Some(p)) => (Vec::new(), instance_determinants(n, p, exponents)?),
        (None, None) => (identity_suite()?, Vec::new()),
        _ => return Err(CliError::Format("det needs both --n and --p, or neither".into())),
    };
    let mut passed = true;
    if !cases.is_empty() {
        let failures: Vec<&IdentityCase> = cases.iter().filter(|c| !c.holds()).collect();
        let defined = cases.iter().filter(|c| c.defined()).count();
        report.push(format!("identity cases: {} ({defined} with defined product formula)", cases.len()));
        for c in &failures {
            report.push(format!("  FAIL {:?}", c.spec));
        }
        passed &= failures.is_empty();
    }
    for (params, dets, cong) in &records {
        let field = params.field();
        for d in dets {
            let exact = d.exact.as_ref().map_or("-".into(), ToString::to_string);
            let ok = d.satisfied(&field);
            passed &= ok;
            report.push(format!(
                "q = {}: {} {:?}({}, {}, {}) = {exact}, mod p = {}{}",
                params.q,
                d.label,
                d.spec.family,
                d.spec.n,
                d.spec.a,
                d.spec.k,
                d.mod_p,
                if ok { "" } else { " FAIL" }
            ));
        }
        if let Some(c) = cong {
            passed &= c.holds();
            report.push(format!("q = {}: congruence {}", params.q, if c.holds() { "holds" } else { "FAILS" }));
        }
    }
    let verdict = if passed { "verified" } else { "refuted" };
    report.push(format!("verdict: {verdict}"));
    Ok(Outcome {
        certificate: certificate::determinant_suite_json(&cases, &records, passed),
        verdict: verdict.into(),
        exit_code: if passed { EXIT_OK } else { EXIT_REFUTED },
        report,
    })
}

fn oracle_outcome(n: u64, p: u64, e: u32, tight: bool) -> Result<Outcome, CliError> {
    if n < 2 {
        return Err(CliError::Format("n must be at least 2".into()));
    }
    if e == 0 {
        return Err(CliError::Format("e must be at least 1".into()));
    }
    let params = PowerParams::new(n, p, e)?;
    let q = params.q;
    let t = (n - 2) * q + u64::from(tight);
    let (target, ideal, outcome) = direct_membership(&params, t, (n - 1) * q, n as usize)?;
    let expected = if outcome.is_member() { Expectation::Member } else { Expectation::NotMember };
    let label = format!("(x1...xn)^{t} in (x_i^{}) in R", (n - 1) * q);
    let verdict = if outcome.is_member() { "Member" } else { "NotMember" };
    let mut report = vec![format!("q = {q}: {label}"), format!("verdict: {verdict}")];
    if let Membership::NotMember(nm) = &outcome {
        report.insert(
            1,
            format!("  degree {} block: {} rows, {} columns, rank {}", nm.degree, nm.rows, nm.columns, nm.rank),
        );
    }
    let record = MembershipRecord { label, target, ideal, expected, outcome };
    Ok(Outcome {
        certificate: certificate::oracle_json(&params, &record),
        verdict: verdict.into(),
        exit_code: EXIT_OK,
        report,
    })
}

/// Runs a job. Errors are precondition or input failures.
pub fn execute(job: &Job) -> Result<Outcome, CliError> {
    match job {
        Job::Tight { n, p, options } => Ok(closure_outcome(&certify_tight_closure(*n, *p, options)?)),
        Job::Frobenius { n, p, options } => Ok(closure_outcome(&certify_frobenius_closure(*n, *p, options)?)),
        Job::FPure { n, p } => Ok(closure_outcome(&check_f_pure(*n, *p)?)),
        Job::Det { n, p, exponents } => det_outcome(*n, *p, exponents),
        Job::Oracle { n, p, e, tight } => oracle_outcome(*n, *p, *e, *tight),
    }
}

/// Runs a job and stamps the elapsed time on its certificate.
pub fn execute_timed(job: &Job) -> Result<(Outcome, u64), CliError> {
    let start = Instant::now();
    let mut outcome = execute(job)?;
    let elapsed = start.elapsed().as_millis() as u64;
    certificate::set_elapsed(&mut outcome.certificate, elapsed);
    Ok((outcome, elapsed))
}

fn run_single(job: Job, json_out: Option<PathBuf>) -> Result<i32, CliError> {
    let (outcome, elapsed) = execute_timed(&job)?;
    for line in &outcome.report {
        println!("{line}");
    }
    println!("elapsed: {elapsed} ms");
    if let Some(path) = json_out {
        certificate::write_certificate(&outcome.certificate, &path)?;
        println!("certificate written to {}", path.display());
    }
    Ok(outcome.exit_code)
}

/// Re-verifies the witnesses in a certificate file. Returns the number of
/// witnesses checked, or a description of the first failure.
pub fn verify_certificate(value: &Value) -> Result<Result<usize, String>, CliError> {
    match certificate::kind_of(value)? {
        KIND_CLOSURE => {
            let cert = certificate::closure_from(value)?;
            if !cert.proof_path.consistent_with(cert.n, cert.p) {
                return Ok(Err(format!(
                    "proof path {} does not fit n = {}, p = {}",
                    cert.proof_path.tag(),
                    cert.n,
                    cert.p
                )));
            }
            let mut checked = 0;
            for stage in &cert.stages {
                for m in &stage.memberships {
                    if let Some(w) = m.witness() {
                        if !w.verify(&m.target, &m.ideal) {
                            return Ok(Err(format!("witness for {:?} does not re-expand", m.label)));
                        }
                        checked += 1;
                    }
                }
                for c in &stage.containments {
                    if c.report.monomials.len() as u64 != u64::from(c.report.degree) + 1 {
                        return Ok(Err(format!("containment report {:?} is incomplete", c.label)));
                    }
                }
            }
            if let Some(f) = &cert.fedder {
                if let Some(a) = &f.witness {
                    if !fedder_witness_valid(f.n, f.p, a)? {
                        return Ok(Err("Fedder witness does not survive".into()));
                    }
                    checked += 1;
                }
            }
            Ok(Ok(checked))
        }
        KIND_ORACLE => {
            let (_, record) = certificate::oracle_from(value)?;
            match record.witness() {
                Some(w) if !w.verify(&record.target, &record.ideal) => Ok(Err("witness does not re-expand".into())),
                Some(_) => Ok(Ok(1)),
                None => Ok(Ok(0)),
            }
        }
        KIND_DETERMINANTS => Ok(Ok(0)),
        other => Err(CliError::Format(format!("unknown certificate kind {other:?}"))),
    }
}

fn fedder_witness_valid(n: u64, p: u64, a: &[u64]) -> Result<bool, CliError> {
    let field = PrimeField::new(p)?;
    if a.len() as u64 != n || a.iter().sum::<u64>() != p - 1 || a.iter().any(|&x| x.saturating_mul(n) > p - 1) {
        return Ok(false);
    }
    let mut rest = p - 1;
    let mut coeff = 1;
    for &x in a {
        coeff = field.mul(coeff, binomial_mod_p(rest, x, &field));
        rest -= x;
    }
    Ok(coeff != 0)
}

fn run_verify(path: &Path) -> Result<i32, CliError> {
    let value = certificate::read_certificate(path)?;
    match verify_certificate(&value)? {
        Ok(count) => {
            println!("{}: {count} witnesses re-verified", path.display());
            Ok(EXIT_OK)
        }
        Err(reason) => {
            println!("{}: FAILED: {reason}", path.display());
            Ok(EXIT_REFUTED)
        }
    }
}

/// One row of the batch summary.
#[derive(Clone, Debug)]
pub struct BatchRow {
    pub index: usize,
    pub job: String,
    pub verdict: String,
    pub elapsed_ms: u64,
    pub file: Option<PathBuf>,
}

type JobResult = Result<(Outcome, u64), CliError>;

/// Runs every job of a config concurrently and writes one certificate per
/// successful job. Rejected jobs appear in the summary only.
pub fn batch_verify(config_path: &Path) -> Result<Vec<BatchRow>, CliError> {
    let config = config::load(config_path)?;
    if !config.jobs.is_empty() {
        fs::create_dir_all(&config.output_dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", config.output_dir.display())))?;
    }
    let results: Vec<(String, JobResult)> = config
        .jobs
        .par_iter()
        .map(|spec| match spec.to_job() {
            Ok(job) => (job.file_stem(), execute_timed(&job)),
            Err(e) => (spec.command.clone(), Err(e)),
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    for (index, (name, result)) in results.into_iter().enumerate() {
        let row = match result {
            Ok((outcome, elapsed_ms)) => {
                let file = config.output_dir.join(format!("{index:03}-{name}.json"));
                certificate::write_certificate(&outcome.certificate, &file)?;
                BatchRow { index, job: name, verdict: outcome.verdict, elapsed_ms, file: Some(file) }
            }
            Err(e) => BatchRow { index, job: name, verdict: format!("rejected: {e}"), elapsed_ms: 0, file: None },
        };
        rows.push(row);
    }
    Ok(rows)
}

fn run_batch(path: &Path) -> Result<i32, CliError> {
    let rows = batch_verify(path)?;
    println!("{:<5} {:<28} {:>10}  verdict", "job", "name", "elapsed");
    for r in &rows {
        println!("{:<5} {:<28} {:>8}ms  {}", r.index, r.job, r.elapsed_ms, r.verdict);
    }
    println!("{} jobs", rows.len());
    Ok(EXIT_OK)
}

/// Parses arguments and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Tight(a) => run_single(
            Job::Tight { n: a.n, p: a.p, options: CertifyOptions { exponents: a.e, degree_bound: a.degree_bound } },
            a.json_out,
        ),
        Command::Frobenius(a) => run_single(
            Job::Frobenius { n: a.n, p: a.p, options: CertifyOptions { exponents: a.e, degree_bound: a.degree_bound } },
            a.json_out,
        ),
        Command::Fpure(a) => run_single(Job::FPure { n: a.n, p: a.p }, a.json_out),
        Command::Det(a) => run_single(Job::Det { n: a.n, p: a.p, exponents: a.e }, a.json_out),
        Command::Oracle(a) => run_single(Job::Oracle { n: a.n, p: a.p, e: a.e, tight: a.tight }, a.json_out),
        Command::VerifyCert { file } => run_verify(&file),
        Command::Batch { batch } => run_batch(&batch),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
