//! JSON certificate files.
//!
//! Keys are sorted, big integers are decimal strings and polynomials use the
//! canonical text form of [`MultiPoly`]. `elapsed_ms` is the only field that
//! varies between runs of the same job.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use fclosure_core::closure_certifier::{
    ClaimKind, ClosureCertificate, ContainmentRecord, DeterminantRecord, DeterminantRequirement, Expectation,
    FedderReport, MembershipRecord, ProofPath, Stage, Verdict,
};
use fclosure_core::determinant_identities::{
    BinomFamily, BinomMatrixSpec, CongruenceReport, CongruenceRow, IdentityCase,
};
use fclosure_core::exact_arith::{BigInt, PowerParams, PrimeField};
use fclosure_core::membership::{ContainmentReport, Membership, MembershipWitness, NonMembership};
use fclosure_core::multipoly::{IdealSpec, MultiPoly, PolyRing};

use crate::CliError;

pub const SCHEMA_VERSION: u64 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const KIND_CLOSURE: &str = "closure";
pub const KIND_ORACLE: &str = "oracle";
pub const KIND_DETERMINANTS: &str = "determinant-suite";

type Res<T> = std::result::Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn get_u64(v: &Value, key: &str) -> Res<u64> {
    field(v, key)?.as_u64().ok_or_else(|| bad(format!("{key:?} is not an unsigned integer")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Res<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| bad(format!("{key:?} is not a string")))
}

fn get_bool(v: &Value, key: &str) -> Res<bool> {
    field(v, key)?.as_bool().ok_or_else(|| bad(format!("{key:?} is not a boolean")))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Res<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| bad(format!("{key:?} is not an array")))
}

fn get_opt<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

fn get_big(v: &Value, key: &str) -> Res<BigInt> {
    get_str(v, key)?.parse().map_err(|_| bad(format!("{key:?} is not a decimal integer")))
}

fn get_opt_big(v: &Value, key: &str) -> Res<Option<BigInt>> {
    get_opt(v, key).map(|_| get_big(v, key)).transpose()
}

fn strings(v: &Value, key: &str) -> Res<Vec<String>> {
    get_array(v, key)?
        .iter()
        .map(|s| s.as_str().map(String::from).ok_or_else(|| bad(format!("{key:?} holds a non-string"))))
        .collect()
}

/// Canonical bytes of a certificate value: pretty-printed, sorted keys,
/// trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_certificate(value: &Value, path: &Path) -> Res<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(render(value).as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn read_certificate(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// The value with `elapsed_ms` removed, for determinism comparisons.
pub fn without_timing(value: &Value) -> Value {
    let mut v = value.clone();
    if let Some(obj) = v.as_object_mut() {
        obj.remove("elapsed_ms");
    }
    v
}

pub fn set_elapsed(value: &mut Value, elapsed_ms: u64) {
    if let Some(obj) = value.as_object_mut() {
        obj.insert("elapsed_ms".into(), json!(elapsed_ms));
    }
}

fn header(kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("toolkit_version".into(), json!(TOOLKIT_VERSION));
    m.insert("kind".into(), json!(kind));
    m
}

pub fn kind_of(value: &Value) -> Res<&str> {
    let version = get_u64(value, "schema_version")?;
    if version != SCHEMA_VERSION {
        return Err(bad(format!("unsupported schema version {version}")));
    }
    get_str(value, "kind")
}

fn params_json(p: &PowerParams) -> Value {
    json!({ "n": p.n, "p": p.p, "e": p.e, "q": p.q, "k": p.k, "delta": p.delta, "m": p.m })
}

fn params_from(v: &Value) -> Res<PowerParams> {
    let e = u32::try_from(get_u64(v, "e")?).map_err(|_| bad("e out of range"))?;
    let params = PowerParams::new(get_u64(v, "n")?, get_u64(v, "p")?, e)?;
    let m = get_opt(v, "m").map(|_| get_u64(v, "m")).transpose()?;
    if (get_u64(v, "q")?, get_u64(v, "k")?, get_u64(v, "delta")?, m) != (params.q, params.k, params.delta, params.m) {
        return Err(bad("params are inconsistent"));
    }
    Ok(params)
}

fn spec_json(s: &BinomMatrixSpec) -> Value {
    let family = match s.family {
        BinomFamily::Det1 => "Det1",
        BinomFamily::Det2 => "Det2",
    };
    json!({ "family": family, "n": s.n, "a": s.a, "k": s.k })
}

fn spec_from(v: &Value) -> Res<BinomMatrixSpec> {
    let family = match get_str(v, "family")? {
        "Det1" => BinomFamily::Det1,
        "Det2" => BinomFamily::Det2,
        other => return Err(bad(format!("unknown determinant family {other:?}"))),
    };
    let n = field(v, "n")?.as_i64().ok_or_else(|| bad("\"n\" is not an integer"))?;
    Ok(BinomMatrixSpec { family, n, a: get_u64(v, "a")?, k: get_u64(v, "k")? as usize })
}

fn opt_big_json(v: &Option<BigInt>) -> Value {
    v.as_ref().map_or(Value::Null, |x| json!(x.to_string()))
}

fn determinant_json(d: &DeterminantRecord) -> Value {
    let requirement = match d.requirement {
        DeterminantRequirement::EqualsOne => "equals-one",
        DeterminantRequirement::Nonzero => "nonzero",
    };
    json!({
        "label": d.label,
        "matrix": spec_json(&d.spec),
        "exact": opt_big_json(&d.exact),
        "closed_form": opt_big_json(&d.closed_form),
        "mod_p": d.mod_p.to_string(),
        "requirement": requirement,
    })
}

fn determinant_from(v: &Value) -> Res<DeterminantRecord> {
    let requirement = match get_str(v, "requirement")? {
        "equals-one" => DeterminantRequirement::EqualsOne,
        "nonzero" => DeterminantRequirement::Nonzero,
        other => return Err(bad(format!("unknown requirement {other:?}"))),
    };
    let mod_p = get_str(v, "mod_p")?.parse().map_err(|_| bad("\"mod_p\" is not a residue"))?;
    Ok(DeterminantRecord {
        label: get_str(v, "label")?.into(),
        spec: spec_from(field(v, "matrix")?)?,
        exact: get_opt_big(v, "exact")?,
        closed_form: get_opt_big(v, "closed_form")?,
        mod_p,
        requirement,
    })
}

fn congruence_json(c: &CongruenceReport) -> Value {
    let rows: Vec<Value> = c.rows.iter().map(|r| json!({ "r": r.r, "lhs": r.lhs, "rhs": r.rhs })).collect();
    json!({ "n": c.n, "q": c.q, "p": c.p, "k": c.k, "rows": rows })
}

fn congruence_from(v: &Value) -> Res<CongruenceReport> {
    let rows = get_array(v, "rows")?
        .iter()
        .map(|r| Ok(CongruenceRow { r: get_u64(r, "r")?, lhs: get_u64(r, "lhs")?, rhs: get_u64(r, "rhs")? }))
        .collect::<Res<Vec<_>>>()?;
    Ok(CongruenceReport { n: get_u64(v, "n")?, q: get_u64(v, "q")?, p: get_u64(v, "p")?, k: get_u64(v, "k")?, rows })
}

fn ring_from(v: &Value, field: PrimeField) -> Res<PolyRing> {
    Ok(PolyRing::new(field, strings(v, "variables")?)?)
}

fn polys(ring: &PolyRing, v: &Value, key: &str) -> Res<Vec<MultiPoly>> {
    strings(v, key)?.iter().map(|s| Ok(ring.parse(s)?)).collect()
}

fn opt_poly(ring: &PolyRing, v: &Value, key: &str) -> Res<Option<MultiPoly>> {
    get_opt(v, key).map(|_| Ok(ring.parse(get_str(v, key)?)?)).transpose()
}

fn texts(ps: &[MultiPoly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn ideal_json(ideal: &IdealSpec, out: &mut Map<String, Value>) {
    out.insert("variables".into(), json!(ideal.ring().variables()));
    out.insert("generators".into(), json!(texts(ideal.generators())));
    out.insert("relation".into(), ideal.relation().map_or(Value::Null, |f| json!(f.to_string())));
}

fn ideal_from(v: &Value, field: PrimeField) -> Res<IdealSpec> {
    let ring = ring_from(v, field)?;
    let gens = polys(&ring, v, "generators")?;
    let relation = opt_poly(&ring, v, "relation")?;
    Ok(IdealSpec::new(&ring, gens, relation)?)
}

fn expectation_name(e: Expectation) -> &'static str {
    match e {
        Expectation::Member => "Member",
        Expectation::NotMember => "NotMember",
    }
}

pub fn membership_json(m: &MembershipRecord) -> Value {
    let mut out = Map::new();
    out.insert("label".into(), json!(m.label));
    out.insert("target".into(), json!(m.target.to_string()));
    ideal_json(&m.ideal, &mut out);
    out.insert("expected".into(), json!(expectation_name(m.expected)));
    match &m.outcome {
        Membership::Member(w) => {
            out.insert("outcome".into(), json!("Member"));
            out.insert(
                "witness".into(),
                json!({
                    "generator_coefficients": texts(&w.generator_coefficients),
                    "relation_coefficient": w.relation_coefficient.as_ref().map(ToString::to_string),
                }),
            );
            out.insert("non_membership".into(), Value::Null);
        }
        Membership::NotMember(nm) => {
            out.insert("outcome".into(), json!("NotMember"));
            out.insert("witness".into(), Value::Null);
            out.insert(
                "non_membership".into(),
                json!({ "degree": nm.degree, "rank": nm.rank, "columns": nm.columns, "rows": nm.rows }),
            );
        }
    }
    Value::Object(out)
}

/// Parses a membership record. Witnesses are taken as written; callers
/// re-verify them.
pub fn membership_from(v: &Value, field: PrimeField) -> Res<MembershipRecord> {
    let ideal = ideal_from(v, field)?;
    let ring = ideal.ring().clone();
    let expected = match get_str(v, "expected")? {
        "Member" => Expectation::Member,
        "NotMember" => Expectation::NotMember,
        other => return Err(bad(format!("unknown expectation {other:?}"))),
    };
    let outcome = match get_str(v, "outcome")? {
        "Member" => {
            let w = field_obj(v, "witness")?;
            Membership::Member(MembershipWitness {
                generator_coefficients: polys(&ring, w, "generator_coefficients")?,
                relation_coefficient: opt_poly(&ring, w, "relation_coefficient")?,
            })
        }
        "NotMember" => {
            let nm = field_obj(v, "non_membership")?;
            Membership::NotMember(NonMembership {
                degree: get_u64(nm, "degree")? as u32,
                rank: get_u64(nm, "rank")? as usize,
                columns: get_u64(nm, "columns")? as usize,
                rows: get_u64(nm, "rows")? as usize,
            })
        }
        other => return Err(bad(format!("unknown outcome {other:?}"))),
    };
    Ok(MembershipRecord {
        label: get_str(v, "label")?.into(),
        target: ring.parse(get_str(v, "target")?)?,
        ideal,
        expected,
        outcome,
    })
}

fn field_obj<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    get_opt(v, key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn containment_json(c: &ContainmentRecord) -> Value {
    let mut out = Map::new();
    out.insert("label".into(), json!(c.label));
    ideal_json(&c.ideal, &mut out);
    out.insert("degree".into(), json!(c.report.degree));
    out.insert("rank".into(), json!(c.report.rank));
    let ring = c.ideal.ring();
    let monomials: Vec<Value> = c
        .report
        .monomials
        .iter()
        .map(|(m, inside)| json!({ "monomial": ring.monomial(m.clone()).to_string(), "contained": inside }))
        .collect();
    out.insert("monomials".into(), Value::Array(monomials));
    Value::Object(out)
}

fn containment_from(v: &Value, field: PrimeField) -> Res<ContainmentRecord> {
    let ideal = ideal_from(v, field)?;
    let monomials = get_array(v, "monomials")?
        .iter()
        .map(|entry| {
            let poly = ideal.ring().parse(get_str(entry, "monomial")?)?;
            let m = poly.as_monomial().cloned().ok_or_else(|| bad("containment entry is not a monomial"))?;
            Ok((m, get_bool(entry, "contained")?))
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(ContainmentRecord {
        label: get_str(v, "label")?.into(),
        report: ContainmentReport {
            degree: get_u64(v, "degree")? as u32,
            monomials,
            rank: get_u64(v, "rank")? as usize,
        },
        ideal,
    })
}

fn stage_json(s: &Stage) -> Value {
    json!({
        "params": params_json(&s.params),
        "determinants": s.determinants.iter().map(determinant_json).collect::<Vec<_>>(),
        "congruence": s.congruence.as_ref().map(congruence_json),
        "containments": s.containments.iter().map(containment_json).collect::<Vec<_>>(),
        "memberships": s.memberships.iter().map(membership_json).collect::<Vec<_>>(),
        "skipped": s.skipped,
    })
}

fn stage_from(v: &Value) -> Res<Stage> {
    let params = params_from(field(v, "params")?)?;
    let f = params.field();
    Ok(Stage {
        params,
        determinants: get_array(v, "determinants")?.iter().map(determinant_from).collect::<Res<_>>()?,
        congruence: get_opt(v, "congruence").map(congruence_from).transpose()?,
        containments: get_array(v, "containments")?.iter().map(|c| containment_from(c, f)).collect::<Res<_>>()?,
        memberships: get_array(v, "memberships")?.iter().map(|m| membership_from(m, f)).collect::<Res<_>>()?,
        skipped: strings(v, "skipped")?,
    })
}

fn fedder_json(f: &FedderReport) -> Value {
    json!({ "n": f.n, "p": f.p, "criterion": f.criterion, "oracle": f.oracle, "witness": f.witness })
}

fn fedder_from(v: &Value) -> Res<FedderReport> {
    let witness = get_opt(v, "witness")
        .map(|w| {
            w.as_array()
                .ok_or_else(|| bad("Fedder witness is not an array"))?
                .iter()
                .map(|a| a.as_u64().ok_or_else(|| bad("Fedder exponent is not an integer")))
                .collect::<Res<Vec<_>>>()
        })
        .transpose()?;
    Ok(FedderReport {
        n: get_u64(v, "n")?,
        p: get_u64(v, "p")?,
        criterion: get_bool(v, "criterion")?,
        oracle: get_bool(v, "oracle")?,
        witness,
    })
}

/// The verdict as written to file. F-purity decisions report the decided
/// property itself.
pub fn verdict_text(cert: &ClosureCertificate) -> &'static str {
    match (cert.claim, cert.verdict) {
        (ClaimKind::FPure | ClaimKind::NotFPure, Verdict::Verified) => cert.claim.name(),
        (_, v) => v.name(),
    }
}

fn verdict_from(text: &str, claim: ClaimKind) -> Res<Verdict> {
    if text == claim.name() && matches!(claim, ClaimKind::FPure | ClaimKind::NotFPure) {
        return Ok(Verdict::Verified);
    }
    Verdict::from_name(text).ok_or_else(|| bad(format!("unknown verdict {text:?}")))
}

pub fn closure_json(cert: &ClosureCertificate) -> Value {
    let mut m = header(KIND_CLOSURE);
    m.insert("claim".into(), json!(cert.claim.name()));
    m.insert("proof_path".into(), json!(cert.proof_path.tag()));
    m.insert("verdict".into(), json!(verdict_text(cert)));
    m.insert("n".into(), json!(cert.n));
    m.insert("p".into(), json!(cert.p));
    m.insert("params".into(), cert.stages.first().map_or(Value::Null, |s| params_json(&s.params)));
    m.insert("stages".into(), Value::Array(cert.stages.iter().map(stage_json).collect()));
    m.insert("fedder".into(), cert.fedder.as_ref().map_or(Value::Null, fedder_json));
    m.insert("assumptions".into(), json!(cert.assumptions));
    Value::Object(m)
}

pub fn closure_from(v: &Value) -> Res<ClosureCertificate> {
    if kind_of(v)? != KIND_CLOSURE {
        return Err(bad("not a closure certificate"));
    }
    let claim_text = get_str(v, "claim")?;
    let claim = ClaimKind::from_name(claim_text).ok_or_else(|| bad(format!("unknown claim {claim_text:?}")))?;
    let tag = get_str(v, "proof_path")?;
    let proof_path = ProofPath::from_tag(tag).ok_or_else(|| bad(format!("unknown proof path {tag:?}")))?;
    let stages = get_array(v, "stages")?.iter().map(stage_from).collect::<Res<Vec<_>>>()?;
    if let (Some(first), Some(params)) = (stages.first(), get_opt(v, "params")) {
        if params_from(params)? != first.params {
            return Err(bad("top-level params differ from the first stage"));
        }
    }
    Ok(ClosureCertificate {
        claim,
        n: get_u64(v, "n")?,
        p: get_u64(v, "p")?,
        proof_path,
        stages,
        fedder: get_opt(v, "fedder").map(fedder_from).transpose()?,
        assumptions: strings(v, "assumptions")?,
        verdict: verdict_from(get_str(v, "verdict")?, claim)?,
    })
}

pub fn oracle_json(params: &PowerParams, record: &MembershipRecord) -> Value {
    let mut m = header(KIND_ORACLE);
    let verdict = if record.outcome.is_member() { "Member" } else { "NotMember" };
    m.insert("verdict".into(), json!(verdict));
    m.insert("n".into(), json!(params.n));
    m.insert("p".into(), json!(params.p));
    m.insert("params".into(), params_json(params));
    m.insert("membership".into(), membership_json(record));
    Value::Object(m)
}

pub fn oracle_from(v: &Value) -> Res<(PowerParams, MembershipRecord)> {
    if kind_of(v)? != KIND_ORACLE {
        return Err(bad("not an oracle certificate"));
    }
    let params = params_from(field(v, "params")?)?;
    let record = membership_from(field(v, "membership")?, params.field())?;
    Ok((params, record))
}

fn rational_text(r: &fclosure_core::exact_arith::BigRational) -> String {
    r.to_string()
}

pub fn identity_case_json(c: &IdentityCase) -> Value {
    json!({
        "matrix": spec_json(&c.spec),
        "bareiss": c.bareiss.to_string(),
        "closed_form": c.closed_form.as_ref().map(rational_text),
        "ratio": c.ratio.as_ref().map(|r| json!({ "lhs": rational_text(&r.lhs), "rhs": rational_text(&r.rhs) })),
        "holds": c.holds(),
    })
}

pub fn determinant_suite_json(
    cases: &[IdentityCase],
    records: &[(PowerParams, Vec<DeterminantRecord>, Option<CongruenceReport>)],
    passed: bool,
) -> Value {
    let mut m = header(KIND_DETERMINANTS);
    m.insert("verdict".into(), json!(if passed { "verified" } else { "refuted" }));
    m.insert("identities".into(), Value::Array(cases.iter().map(identity_case_json).collect()));
    let instances: Vec<Value> = records
        .iter()
        .map(|(params, dets, cong)| {
            json!({
                "params": params_json(params),
                "determinants": dets.iter().map(determinant_json).collect::<Vec<_>>(),
                "congruence": cong.as_ref().map(congruence_json),
            })
        })
        .collect();
    m.insert("instances".into(), Value::Array(instances));
    Value::Object(m)
}
