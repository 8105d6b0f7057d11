use std::fmt::Write as _;
use std::path::Path;

use aks_workbench::estimator::{compare_table, ResourceEstimate};
use aks_workbench::miller_rabin::{default_bases, random_bases};
use aks_workbench::number_theory::{bit_length, multiplicative_order, witness_bound};
use aks_workbench::validator::{
    audit_batch, parse_pairs, validate as validate_pair, ValidationReport,
};
use aks_workbench::{
    aks_test, mr_test, parse_natural, CompositeWitness, MrOutcome, Natural, Outcome,
};
use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::Algorithm;

/// What a command produced: both renderings plus the exit status.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

pub struct TestOptions {
    pub algorithm: Algorithm,
    pub max_bits: u64,
    pub force: bool,
    pub bases: Option<Vec<String>>,
    pub random_bases: Option<usize>,
    pub seed: Option<u64>,
}

fn parse_at_least_two(text: &str) -> Result<Natural, String> {
    let n = parse_natural(text).map_err(|e| e.to_string())?;
    if n < BigUint::from(2u8) {
        return Err("n must exceed 1".to_string());
    }
    Ok(n)
}

fn opt_string(v: Option<&Natural>) -> Value {
    v.map_or(Value::Null, |n| Value::String(n.to_string()))
}

fn witness_json(w: &CompositeWitness) -> Value {
    match w {
        CompositeWitness::PerfectPower(p) => json!({
            "kind": "perfect_power",
            "base": p.base.to_string(),
            "exponent": p.exponent,
        }),
        CompositeWitness::SharedFactor(a) => json!({ "kind": "shared_factor", "a": a.to_string() }),
        CompositeWitness::Congruence(a) => json!({ "kind": "congruence", "a": a.to_string() }),
    }
}

fn witness_text(w: &CompositeWitness) -> String {
    match w {
        CompositeWitness::PerfectPower(p) => format!("witness {}^{}", p.base, p.exponent),
        CompositeWitness::SharedFactor(a) => format!("witness a={a} shares a factor with n"),
        CompositeWitness::Congruence(a) => format!("witness a={a} breaks the congruence"),
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Prime => "PRIME",
        Outcome::Composite => "COMPOSITE",
    }
}

fn mr_name(o: MrOutcome) -> &'static str {
    match o {
        MrOutcome::ProbablyPrime => "PROBABLY_PRIME",
        MrOutcome::Composite => "COMPOSITE",
    }
}

fn mr_bases(n: &Natural, options: &TestOptions) -> Result<Vec<Natural>, String> {
    if let Some(count) = options.random_bases {
        let mut rng = match options.seed {
            Some(seed) => rand::rngs::StdRng::seed_from_u64(seed),
            None => rand::rngs::StdRng::from_entropy(),
        };
        let bases = random_bases(n, count, &mut rng);
        // n < 5 leaves no base in [2, n - 2]; the test then decides n directly
        return Ok(if bases.is_empty() {
            default_bases()
        } else {
            bases
        });
    }
    match &options.bases {
        Some(list) => list
            .iter()
            .map(|b| parse_natural(b).map_err(|e| e.to_string()))
            .collect(),
        None => Ok(default_bases()),
    }
}

pub fn test(number: &str, options: &TestOptions) -> Result<Report, String> {
    let n = parse_at_least_two(number)?;
    let bits = bit_length(&n).map_err(|e| e.to_string())?;
    let run_aks = options.algorithm != Algorithm::MillerRabin;
    let run_mr = options.algorithm != Algorithm::Aks;

    if run_aks && bits > options.max_bits && !options.force {
        return refuse(&n, bits, options.max_bits);
    }

    let mut text = format!("n = {n} ({bits} bits)\n");
    let mut results = Vec::new();
    let mut aks_prime = None;
    let mut mr_prime = None;

    if run_aks {
        let (verdict, trace) = aks_test(&n).map_err(|e| e.to_string())?;
        let r = trace
            .chosen_r
            .as_ref()
            .map_or("-".to_string(), |r| r.to_string());
        let _ = write!(
            text,
            "aks: {} (step {}, r = {r}",
            outcome_name(verdict.outcome()),
            verdict.deciding_step()
        );
        if let Some(count) = &trace.witness_count {
            let _ = write!(text, ", witnesses {}/{}", trace.witnesses_checked, count);
        }
        if let Some(w) = verdict.detail() {
            let _ = write!(text, ", {}", witness_text(w));
        }
        text.push_str(")\n");
        results.push(json!({
            "algorithm": "aks",
            "outcome": outcome_name(verdict.outcome()),
            "deciding_step": verdict.deciding_step(),
            "chosen_r": opt_string(trace.chosen_r.as_ref()),
            "witness_count": opt_string(trace.witness_count.as_ref()),
            "witnesses_checked": trace.witnesses_checked.to_string(),
            "detail": verdict.detail().map_or(Value::Null, witness_json),
        }));
        aks_prime = Some(verdict.is_prime());
    }

    if run_mr {
        let bases = mr_bases(&n, options)?;
        let outcome = mr_test(&n, &bases).map_err(|e| e.to_string())?;
        let listed: Vec<String> = bases.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(
            text,
            "miller-rabin: {} (bases {})",
            mr_name(outcome),
            listed.join(",")
        );
        results.push(json!({
            "algorithm": "miller-rabin",
            "outcome": mr_name(outcome),
            "bases": listed,
        }));
        mr_prime = Some(outcome == MrOutcome::ProbablyPrime);
    }

    let (status, agree) = match (aks_prime, mr_prime) {
        (Some(a), Some(m)) if a != m => (3, Some(false)),
        (Some(a), Some(_)) => (if a { 0 } else { 1 }, Some(true)),
        (Some(p), None) | (None, Some(p)) => (if p { 0 } else { 1 }, None),
        (None, None) => unreachable!("at least one engine runs"),
    };
    if agree == Some(false) {
        text.push_str("engines disagree\n");
    }
    let json = json!({
        "command": "test",
        "n": n.to_string(),
        "bits": bits,
        "results": results,
        "agree": agree,
        "status": status,
    });
    Ok(Report { text, json, status })
}

fn refuse(n: &Natural, bits: u64, max_bits: u64) -> Result<Report, String> {
    let rows = compare_table(&Natural::from(bits), &Natural::one()).map_err(|e| e.to_string())?;
    let reason = format!(
        "{bits}-bit input exceeds the AKS guard of {max_bits} bits; pass --force to run anyway"
    );
    let mut text = format!("refused: {reason}\nprojected storage for the congruence step:\n");
    text.push_str(&estimate_table_text(&rows));
    let json = json!({
        "command": "test",
        "n": n.to_string(),
        "bits": bits,
        "refused": true,
        "reason": reason,
        "projected": rows.iter().map(estimate_json).collect::<Vec<_>>(),
        "status": 2,
    });
    Ok(Report {
        text,
        json,
        status: 2,
    })
}

fn estimate_json(e: &ResourceEstimate) -> Value {
    json!({
        "name": e.scenario.name(),
        "input_bits": e.input_bits.to_string(),
        "r_value": opt_string(e.r_value.as_ref()),
        "storage_bits": e.storage_bits.to_string(),
        "storage_bytes": e.storage_bytes.to_string(),
        "human_readable": e.human_readable,
    })
}

fn estimate_table_text(rows: &[ResourceEstimate]) -> String {
    let mut out = format!(
        "{:<18} {:>10} {:>22} {:>26} {:>24}  {}\n",
        "scenario", "input_bits", "r", "storage_bits", "storage_bytes", "size"
    );
    for e in rows {
        let r = e
            .r_value
            .as_ref()
            .map_or("-".to_string(), |r| r.to_string());
        let _ = writeln!(
            out,
            "{:<18} {:>10} {:>22} {:>26} {:>24}  {}",
            e.scenario.name(),
            e.input_bits,
            r,
            e.storage_bits,
            e.storage_bytes,
            e.human_readable
        );
    }
    out
}

pub fn estimate(bits: &str, k: &str) -> Result<Report, String> {
    let bits = parse_natural(bits).map_err(|e| e.to_string())?;
    let k = parse_natural(k).map_err(|e| e.to_string())?;
    let rows = compare_table(&bits, &k).map_err(|e| e.to_string())?;
    let json = json!({
        "command": "estimate",
        "input_bits": bits.to_string(),
        "k": k.to_string(),
        "rows": rows.iter().map(estimate_json).collect::<Vec<_>>(),
    });
    Ok(Report {
        text: estimate_table_text(&rows),
        json,
        status: 0,
    })
}

fn report_text(rep: &ValidationReport) -> String {
    let order = rep
        .order
        .as_ref()
        .map_or("-".to_string(), |o| o.to_string());
    format!(
        "n={} r={} bits={} ord={} threshold={} {}: {}\n",
        rep.n,
        rep.r,
        rep.n_bit_length,
        order,
        rep.required_threshold,
        if rep.valid { "VALID" } else { "INVALID" },
        rep.reason
    )
}

fn report_json(rep: &ValidationReport) -> Value {
    json!({
        "n": rep.n.to_string(),
        "r": rep.r.to_string(),
        "n_bit_length": rep.n_bit_length,
        "order": opt_string(rep.order.as_ref()),
        "required_threshold": rep.required_threshold.to_string(),
        "valid": rep.valid,
        "reason": rep.reason,
    })
}

pub fn validate(n: Option<&str>, r: Option<&str>, file: Option<&Path>) -> Result<Report, String> {
    let pairs = match (n, r, file) {
        (_, _, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_pairs(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (Some(n), Some(r), None) => {
            let n = parse_natural(n).map_err(|e| e.to_string())?;
            let r = parse_natural(r).map_err(|e| e.to_string())?;
            vec![(n, r)]
        }
        _ => return Err("validate needs <n> <r> or --file <path>".to_string()),
    };
    let reports = audit_batch(&pairs).map_err(|e| e.to_string())?;
    let all_valid = reports.iter().all(|r| r.valid);
    let status = if all_valid { 0 } else { 1 };
    let text: String = reports.iter().map(report_text).collect();
    let json = json!({
        "command": "validate",
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
        "all_valid": all_valid,
        "status": status,
    });
    Ok(Report { text, json, status })
}

pub fn find_r(n: &str) -> Result<Report, String> {
    let n = parse_at_least_two(n)?;
    let r = aks_workbench::find_r(&n).map_err(|e| e.to_string())?;
    let order = multiplicative_order(&n, &r)
        .map_err(|e| e.to_string())?
        .expect("find_r only returns r coprime to n");
    let rep = validate_pair(&n, &r).map_err(|e| e.to_string())?;
    let bound = witness_bound(&r, &n).map_err(|e| e.to_string())?;
    let text = format!(
        "n={n} r={r} ord={order} threshold={} witness_bound={bound}\n",
        rep.required_threshold
    );
    let json = json!({
        "command": "find-r",
        "n": n.to_string(),
        "r": r.to_string(),
        "order": order.to_string(),
        "threshold": rep.required_threshold.to_string(),
        "witness_bound": bound.to_string(),
    });
    Ok(Report {
        text,
        json,
        status: 0,
    })
}
