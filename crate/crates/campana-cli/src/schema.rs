//! JSON schemas for fans, contact orders, certificates and verdicts, plus
//! the conversions between documents and core types.
//!
//! Integers are emitted as JSON numbers while they fit `i64` and as decimal
//! strings beyond that; inputs are desk scale and parsed as `i64`.

use std::fs;
use std::path::Path;

use campana_core::campana::{CampanaOrbifold, Certificate, ContactOrderSet, Marking, Multiplicity};
use campana_core::fan::Fan;
use campana_core::witness::{Verdict, VerdictStatus};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanDoc {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    multiplicities: Option<Vec<MultiplicityDoc>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MultiplicityDoc {
    Finite(u64),
    Keyword(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SigmaDoc {
    markings: Vec<MarkingDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkingDoc {
    ray: usize,
    coeff: i64,
}

fn parse_multiplicity(doc: &MultiplicityDoc, index: usize) -> Result<Multiplicity, String> {
    match doc {
        MultiplicityDoc::Finite(m) => Ok(Multiplicity::Finite(*m)),
        MultiplicityDoc::Keyword(s) if s == "inf" => Ok(Multiplicity::Infinite),
        MultiplicityDoc::Keyword(s) => Err(format!(
            "multiplicities[{index}]: expected a positive integer or \"inf\", got {s:?}"
        )),
    }
}

/// Parse a comma-separated multiplicity list such as `inf,2,inf`.
pub fn parse_multiplicity_list(spec: &str) -> Result<Vec<Multiplicity>, String> {
    spec.split(',')
        .enumerate()
        .map(|(i, item)| {
            let item = item.trim();
            if item == "inf" {
                Ok(Multiplicity::Infinite)
            } else {
                item.parse::<u64>().map(Multiplicity::Finite).map_err(|_| {
                    format!("multiplicities[{i}]: expected integer or \"inf\", got {item:?}")
                })
            }
        })
        .collect()
}

fn read_json<'a, T: Deserialize<'a>>(path: &Path, raw: &'a str) -> Result<T, String> {
    serde_json::from_str(raw).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Load and validate a fan file; returns the orbifold (missing
/// `multiplicities` means absolute) and whether multiplicities were explicit.
pub fn read_orbifold(path: &Path) -> Result<(CampanaOrbifold, bool), String> {
    let raw = read_file(path)?;
    let doc: FanDoc = read_json(path, &raw)?;
    let fan = Fan::new(doc.dim, doc.rays, doc.max_cones)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    match doc.multiplicities {
        None => Ok((CampanaOrbifold::absolute(fan), false)),
        Some(mults) => {
            let mults: Vec<Multiplicity> = mults
                .iter()
                .enumerate()
                .map(|(i, m)| parse_multiplicity(m, i))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let orb =
                CampanaOrbifold::new(fan, mults).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((orb, true))
        }
    }
}

pub fn read_sigma(path: &Path, fan: &Fan) -> Result<ContactOrderSet, String> {
    let raw = read_file(path)?;
    let doc: SigmaDoc = read_json(path, &raw)?;
    let markings: Vec<Marking> = doc
        .markings
        .iter()
        .map(|m| Marking {
            ray: m.ray,
            coeff: BigInt::from(m.coeff),
        })
        .collect();
    let sigma = ContactOrderSet::new(markings).map_err(|e| format!("{}: {e}", path.display()))?;
    sigma
        .check_indices(fan)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(sigma)
}

pub fn bigint_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(n) => json!(n),
        None => json!(v.to_string()),
    }
}

pub fn fan_value(fan: &Fan, multiplicities: Option<&[Multiplicity]>) -> Value {
    let rays: Vec<Value> = fan.rays().iter().map(|r| json!(r.coords())).collect();
    let cones: Vec<Value> = fan.max_cones().iter().map(|c| json!(c.rays())).collect();
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(fan.dim()));
    obj.insert("rays".into(), Value::Array(rays));
    obj.insert("max_cones".into(), Value::Array(cones));
    if let Some(mults) = multiplicities {
        let list: Vec<Value> = mults
            .iter()
            .map(|m| match m {
                Multiplicity::Finite(v) => json!(v),
                Multiplicity::Infinite => json!("inf"),
            })
            .collect();
        obj.insert("multiplicities".into(), Value::Array(list));
    }
    Value::Object(obj)
}

pub fn sigma_value(sigma: &ContactOrderSet) -> Value {
    let markings: Vec<Value> = sigma
        .markings()
        .iter()
        .map(|m| json!({"ray": m.ray, "coeff": bigint_value(&m.coeff)}))
        .collect();
    json!({ "markings": markings })
}

pub fn certificate_value(cert: &Certificate) -> Value {
    json!({
        "rank": cert.rank,
        "elementary_divisors": cert.elementary_divisors.iter().map(bigint_value).collect::<Vec<_>>(),
        "p_torsion_free": cert.p_torsion_free,
        "good_contact_orders": cert.good_contact_orders,
        "balanced": cert.balanced,
        "campana_type": cert.campana_type,
        "certified": cert.certified(),
    })
}

pub fn status_str(status: VerdictStatus) -> &'static str {
    match status {
        VerdictStatus::CertifiedScrc => "certified_scrc",
        VerdictStatus::NotScrc => "not_scrc",
        VerdictStatus::Inconclusive => "inconclusive",
    }
}

pub fn verdict_value(verdict: &Verdict) -> Value {
    let mut obj = Map::new();
    obj.insert("status".into(), json!(status_str(verdict.status)));
    obj.insert("reason".into(), json!(verdict.reason.tag()));
    obj.insert("detail".into(), json!(verdict.reason.describe()));
    if let Some(w) = &verdict.witness {
        obj.insert("witness".into(), sigma_value(w));
    }
    if let Some(c) = &verdict.certificate {
        obj.insert("certificate".into(), certificate_value(c));
    }
    Value::Object(obj)
}
