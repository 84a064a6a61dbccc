//! Human and JSON renderings. Every big integer goes to JSON as a decimal string.

use std::fmt::{Display, Write};

use num_bigint::BigInt;
use serde_json::{json, Value};

use absirr::certify::{BadPrimeReport, BoundValue, Certificate, PrimeCheck, PrimeOutcome};
use absirr::criterion::CriterionMatrix;
use absirr::family::{FamilyInstance, SearchHit};
use absirr::oracle::{Field, OracleStatus, OracleVerdict};
use absirr::BiPoly;

pub struct Report {
    pub text: String,
    pub json: Value,
}

fn s(v: impl Display) -> Value {
    Value::String(v.to_string())
}

fn opt(v: Option<impl Display>) -> Value {
    v.map_or(Value::Null, s)
}

pub fn bound(b: &BoundValue, total: Option<(usize, BigInt)>) -> Report {
    let mut text = String::new();
    writeln!(text, "m = {}, n = {}, H = {}", b.m, b.n, b.height).unwrap();
    writeln!(text, "base = {}", b.base).unwrap();
    writeln!(text, "N = {}", b.exponent_num).unwrap();
    writeln!(text, "B = {}", b).unwrap();
    writeln!(text, "B^2 = {}", b.squared_value).unwrap();
    if b.is_integral() {
        writeln!(text, "B = {} (exact)", b.ceil_value).unwrap();
    } else {
        writeln!(text, "ceil(B) = {}", b.ceil_value).unwrap();
    }
    if let Some((d, v)) = &total {
        writeln!(text, "total-degree bound (d = {d}) = {v}").unwrap();
    }
    let json = json!({
        "m": b.m,
        "n": b.n,
        "height": s(&b.height),
        "base": s(&b.base),
        "exponent": b.exponent_num,
        "expression": s(b),
        "squared_value": s(&b.squared_value),
        "ceil_value": s(&b.ceil_value),
        "integral": b.is_integral(),
        "total_degree": total.as_ref().map(|(d, _)| *d),
        "total_degree_bound": opt(total.as_ref().map(|(_, v)| v)),
    });
    Report { text, json }
}

pub fn matrix(m: &CriterionMatrix) -> Report {
    let ring = m.modulus().map_or("Z".to_string(), |p| format!("F_{p}"));
    let (dm, dn) = m.degrees();
    let row_labels: Vec<String> = (0..m.rows()).map(|r| {
        let (k, l) = m.row_label(r);
        format!("{k},{l}")
    }).collect();
    let col_labels: Vec<String> = (0..m.cols()).map(|c| m.col_label(c).to_string()).collect();
    let entries: Vec<Vec<String>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.entry(r, c).to_string()).collect()).collect();

    let mut text = String::new();
    writeln!(text, "M(f) for degree ({dm}, {dn}): {} x {} over {ring}", m.rows(), m.cols()).unwrap();
    let width = entries.iter().flatten().chain(&col_labels).map(String::len).max().unwrap_or(1);
    let label_width = row_labels.iter().map(String::len).max().unwrap_or(1);
    let header: Vec<String> = col_labels.iter().map(|c| format!("{c:>width$}")).collect();
    writeln!(text, "{:label_width$}  {}", "", header.join(" ")).unwrap();
    for (label, row) in row_labels.iter().zip(&entries) {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(text, "{label:>label_width$}  {}", cells.join(" ")).unwrap();
    }
    let json = json!({
        "degrees": [dm, dn],
        "rows": m.rows(),
        "cols": m.cols(),
        "modulus": opt(m.modulus()),
        "row_labels": row_labels,
        "col_labels": col_labels,
        "entries": entries,
    });
    Report { text, json }
}

pub fn certificate<P: BiPoly>(c: &Certificate<P>) -> Report {
    let mut text = format!("{} rank {}/{}", c.verdict, c.rank, c.full_rank);
    if let (Some(p), Some(b), Some(exceeds)) = (&c.modulus, &c.bound, c.exceeds_bound) {
        let shown = if b.is_integral() { b.ceil_value.to_string() } else { format!("{b} (ceil {})", b.ceil_value) };
        let rel = if exceeds { "exceeds" } else { "does not exceed" };
        write!(text, " (p={p} {rel} bound {shown})").unwrap();
    }
    text.push('\n');
    if let Some(w) = &c.witness {
        writeln!(text, "witness: {w}").unwrap();
    }
    if c.degree_dropped {
        text.push_str("degree dropped modulo p\n");
    }
    if c.transposed {
        text.push_str("transposed: x and y swapped since deg_y f = 0\n");
    }
    let json = json!({
        "verdict": c.verdict.as_str(),
        "rank": c.rank,
        "full_rank": c.full_rank,
        "modulus": opt(c.modulus.as_ref()),
        "witness": c.witness.as_ref().map_or(Value::Null, |w| json!({"r": s(&w.r), "s": s(&w.s)})),
        "bound": opt(c.bound.as_ref().map(|b| &b.ceil_value)),
        "exceeds_bound": c.exceeds_bound,
        "degree_dropped": c.degree_dropped,
        "transposed": c.transposed,
    });
    Report { text, json }
}

fn prime_check_json(c: &PrimeCheck) -> Value {
    match &c.outcome {
        PrimeOutcome::Certified { rank, full_rank, degree_dropped, verdict } => json!({
            "p": s(&c.p),
            "rank": rank,
            "full_rank": full_rank,
            "degree_dropped": degree_dropped,
            "verdict": verdict.as_str(),
        }),
        PrimeOutcome::Degenerate => json!({"p": s(&c.p), "verdict": "DEGENERATE"}),
    }
}

fn prime_check_text(c: &PrimeCheck) -> String {
    match &c.outcome {
        PrimeOutcome::Certified { rank, full_rank, degree_dropped, verdict } => {
            let drop = if *degree_dropped { ", degree dropped" } else { "" };
            format!("{} ({verdict}, rank {rank}/{full_rank}{drop})", c.p)
        }
        PrimeOutcome::Degenerate => format!("{} (f mod p is constant)", c.p),
    }
}

pub fn bad_primes(r: &BadPrimeReport) -> Report {
    let mut text = String::new();
    writeln!(text, "minor D = {}", r.minor.det_value).unwrap();
    writeln!(text, "rows {:?}", r.minor.row_indices).unwrap();
    writeln!(text, "cols {:?}", r.minor.col_indices).unwrap();
    writeln!(text, "D^2 <= {} (Hadamard)", r.hadamard_squared).unwrap();
    let factors: Vec<String> = r
        .factorization
        .prime_factors
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    writeln!(text, "factored primes: {}", if factors.is_empty() { "none".into() } else { factors.join(" * ") })
        .unwrap();
    if r.cofactor_note != BigInt::from(1) {
        let why = if r.factorization.budget_exhausted { "rho budget exhausted" } else { "unfactored" };
        writeln!(text, "cofactor: {} ({why})", r.cofactor_note).unwrap();
    }
    for c in &r.confirmed_bad {
        writeln!(text, "bad: {}", prime_check_text(c)).unwrap();
    }
    for c in &r.ruled_out {
        writeln!(text, "ruled out: {}", prime_check_text(c)).unwrap();
    }
    for h in &r.rejected_hints {
        writeln!(text, "rejected hint: {h}").unwrap();
    }
    if r.transposed {
        text.push_str("transposed: x and y swapped since deg_y f = 0\n");
    }
    let json = json!({
        "minor": {
            "value": s(&r.minor.det_value),
            "rows": r.minor.row_indices,
            "cols": r.minor.col_indices,
        },
        "hadamard_squared": s(&r.hadamard_squared),
        "prime_factors": r.factorization.prime_factors.iter()
            .map(|(p, e)| json!({"p": s(p), "e": e})).collect::<Vec<_>>(),
        "cofactor": s(&r.cofactor_note),
        "budget_exhausted": r.factorization.budget_exhausted,
        "confirmed_bad": r.confirmed_bad.iter().map(prime_check_json).collect::<Vec<_>>(),
        "ruled_out": r.ruled_out.iter().map(prime_check_json).collect::<Vec<_>>(),
        "rejected_hints": r.rejected_hints.iter().map(s).collect::<Vec<_>>(),
        "transposed": r.transposed,
    });
    Report { text, json }
}

fn instance_text(i: &FamilyInstance, text: &mut String) {
    writeln!(text, "f = {}", i.f).unwrap();
    writeln!(text, "H = {}", i.height).unwrap();
    let prime = if i.g_is_prime { "prime" } else { "not prime" };
    writeln!(text, "g_{}({}) = {} ({prime})", i.m, i.ell, i.g_value).unwrap();
    if let Some(u) = &i.split_root {
        writeln!(text, "split root u = {u}: x - {u} divides f mod {}", i.g_value).unwrap();
    }
    let rel = if i.inequality_holds { ">=" } else { "<" };
    writeln!(text, "g = {} {rel} H^{} = {}", i.g_value, 2 * i.m, i.height.pow(2 * i.m as u32)).unwrap();
}

fn instance_json(i: &FamilyInstance) -> Value {
    json!({
        "m": i.m,
        "n": i.n,
        "ell": i.ell,
        "f": s(&i.f),
        "height": s(&i.height),
        "g_value": s(&i.g_value),
        "g_is_prime": i.g_is_prime,
        "split_root": opt(i.split_root.as_ref()),
        "inequality_holds": i.inequality_holds,
    })
}

pub fn family(i: &FamilyInstance) -> Report {
    let mut text = String::new();
    instance_text(i, &mut text);
    Report { text, json: instance_json(i) }
}

pub fn search(hits: &[SearchHit]) -> Report {
    let mut text = String::new();
    for h in hits {
        let i = &h.instance;
        let u = i.split_root.as_ref().map_or("-".to_string(), ToString::to_string);
        let divides = h.divides.map_or("-".to_string(), |d| d.to_string());
        let c = &h.certificate;
        writeln!(
            text,
            "l={} p={} u={u} divides={divides} {} rank {}/{} p>=H^{}: {}",
            i.ell, i.g_value, c.verdict, c.rank, c.full_rank, 2 * i.m, i.inequality_holds
        )
        .unwrap();
    }
    writeln!(text, "{} hit(s)", hits.len()).unwrap();
    let records: Vec<Value> = hits
        .iter()
        .map(|h| {
            let mut v = instance_json(&h.instance);
            v["divides"] = json!(h.divides);
            v["verdict"] = json!(h.certificate.verdict.as_str());
            v["rank"] = json!(h.certificate.rank);
            v["full_rank"] = json!(h.certificate.full_rank);
            v
        })
        .collect();
    Report { text, json: json!({ "hits": records }) }
}

fn field_name(f: &Field) -> String {
    match f.min_poly() {
        None => format!("F_{}", f.p()),
        Some((c0, c1)) => {
            let mid = match c1.to_string().as_str() {
                "0" => String::new(),
                "1" => "+a".into(),
                c => format!("+{c}*a"),
            };
            format!("F_{} = F_{}[a]/(a^2{mid}+{c0})", f.size(), f.p())
        }
    }
}

pub fn oracle(v: &OracleVerdict) -> Report {
    let field = field_name(&v.field);
    let (text, status) = match &v.status {
        OracleStatus::FactorFound { g, h } => (
            format!("FACTOR_FOUND over {field}\ng = {g}\nh = {h}\n"),
            json!({"kind": "FACTOR_FOUND", "g": s(g), "h": s(h)}),
        ),
        OracleStatus::NoFactorWithinScope => (
            format!("NO_FACTOR_WITHIN_SCOPE over {field} ({} candidates)\n", v.candidates_tried),
            json!({"kind": "NO_FACTOR_WITHIN_SCOPE"}),
        ),
    };
    let json = json!({
        "status": status,
        "field": field,
        "field_size": s(v.field.size()),
        "degrees": [v.degrees.0, v.degrees.1],
        "candidates_tried": v.candidates_tried,
    });
    Report { text, json }
}
