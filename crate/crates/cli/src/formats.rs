//! On-disk description of a crossed product algebra with involution.
//!
//! Rationals are strings so parse -> serialize -> parse is lossless.
//! NFElem literals are constant-first arrays of rational strings.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use divcode_core::algebra::CocycleTable;
use divcode_core::error::CoreError;
use divcode_core::nf::{NFElem, NumberField};
use divcode_core::poly::Poly;
use divcode_core::rat::parse_rat;
use divcode_core::tower::{Automorphism, Tower};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub default_bits: u32,
    pub max_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescription {
    /// Monic irreducible minimal polynomial of L/Q, constant first.
    pub min_poly: Vec<String>,
    /// Element of L squaring to -d.
    pub sqrt_minus_d: Vec<String>,
    pub d: String,
    /// Every automorphism of L used by the description, name -> image
    /// of the generator. Must contain all of group_G and alpha.
    pub automorphisms: serde_json::Map<String, serde_json::Value>,
    #[serde(rename = "group_G")]
    pub group_g: Vec<String>,
    pub alpha: String,
    /// Cocycle values keyed "sigma,rho"; must cover exactly G x G.
    pub cocycle: serde_json::Map<String, serde_json::Value>,
    /// Approximate complex root of min_poly selecting the embedding,
    /// as a pair of decimal strings (re, im).
    pub embedding_hint: (String, String),
    pub precision: Precision,
}

/// Errors before any mathematics runs: unreadable file, bad JSON,
/// malformed literals, undefined names.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "input error: {}", self.0)
    }
}

impl std::error::Error for InputError {}

pub fn load(path: &Path) -> Result<AlgebraDescription, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("cannot parse {}: {e}", path.display())))
}

pub fn save(path: &Path, desc: &AlgebraDescription) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(desc)
        .map_err(|e| InputError(format!("serialize: {e}")))?;
    fs::write(path, text).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn parse_coeffs(raw: &[String], what: &str) -> Result<Vec<divcode_core::rat::Rat>, InputError> {
    raw.iter()
        .map(|s| parse_rat(s).map_err(|e| InputError(format!("{what}: {e}"))))
        .collect()
}

fn elem_from_value(
    field: &Arc<NumberField>,
    v: &serde_json::Value,
    what: &str,
) -> Result<NFElem, InputError> {
    let arr = v
        .as_array()
        .ok_or_else(|| InputError(format!("{what}: expected an array of rational strings")))?;
    let mut strs = Vec::with_capacity(arr.len());
    for item in arr {
        strs.push(
            item.as_str()
                .ok_or_else(|| InputError(format!("{what}: expected string entries")))?
                .to_owned(),
        );
    }
    let coeffs = parse_coeffs(&strs, what)?;
    if coeffs.len() > field.degree {
        return Err(InputError(format!(
            "{what}: {} coefficients exceed field degree {}",
            coeffs.len(),
            field.degree
        )));
    }
    Ok(field.element(coeffs))
}

/// Builds the number field from the description. Irreducibility and
/// monicity are enforced by the core constructor.
pub fn build_field(desc: &AlgebraDescription) -> Result<Arc<NumberField>, InputError> {
    let coeffs = parse_coeffs(&desc.min_poly, "min_poly")?;
    NumberField::new(Poly::new(coeffs)).map_err(|e| InputError(format!("min_poly: {e}")))
}

/// Assembles the Galois tower without running validate_tower; the
/// caller decides how validation failures map to exit codes.
pub fn build_tower(desc: &AlgebraDescription, field: &Arc<NumberField>) -> Result<Tower, InputError> {
    let mut autos = Vec::with_capacity(desc.automorphisms.len());
    for (name, v) in &desc.automorphisms {
        autos.push(Automorphism {
            name: name.clone(),
            image: elem_from_value(field, v, &format!("automorphism {name}"))?,
        });
    }
    for g in &desc.group_g {
        if !desc.automorphisms.contains_key(g) {
            return Err(InputError(format!("group_G references undefined automorphism {g}")));
        }
    }
    if !desc.automorphisms.contains_key(&desc.alpha) {
        return Err(InputError(format!(
            "alpha references undefined automorphism {}",
            desc.alpha
        )));
    }
    let sqrt_md = elem_from_value(
        field,
        &serde_json::Value::Array(
            desc.sqrt_minus_d
                .iter()
                .map(|s| serde_json::Value::String(s.clone()))
                .collect(),
        ),
        "sqrt_minus_d",
    )?;
    let d_rat = parse_rat(&desc.d).map_err(|e| InputError(format!("d: {e}")))?;
    Ok(Tower {
        field: Arc::clone(field),
        sqrt_md,
        d: field.from_rat(d_rat),
        autos,
        g_names: desc.group_g.clone(),
        alpha_name: desc.alpha.clone(),
    })
}

/// Reads the cocycle table in group_G order; requires exact G x G
/// coverage with no extra keys.
pub fn build_cocycle(
    desc: &AlgebraDescription,
    field: &Arc<NumberField>,
) -> Result<CocycleTable, InputError> {
    let n = desc.group_g.len();
    if desc.cocycle.len() != n * n {
        return Err(InputError(format!(
            "cocycle has {} entries, expected {}",
            desc.cocycle.len(),
            n * n
        )));
    }
    let mut entries = Vec::with_capacity(n);
    for s in &desc.group_g {
        let mut row = Vec::with_capacity(n);
        for r in &desc.group_g {
            let key = format!("{s},{r}");
            let v = desc
                .cocycle
                .get(&key)
                .ok_or_else(|| InputError(format!("cocycle is missing key {key}")))?;
            row.push(elem_from_value(field, v, &format!("cocycle {key}"))?);
        }
        entries.push(row);
    }
    Ok(CocycleTable { entries })
}

/// Exit code mapping shared by every subcommand.
pub fn exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::PrecisionExhausted { .. } => 3,
        CoreError::Inconsistency(_) => 4,
        CoreError::Parameter(_) => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_round_trip_is_lossless() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let tmp = tempfile::tempdir().unwrap();
        let mut seen = 0;
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let desc = load(&path).unwrap();
            let copy = tmp.path().join(path.file_name().unwrap());
            save(&copy, &desc).unwrap();
            let reparsed = load(&copy).unwrap();
            assert_eq!(desc, reparsed, "{} round trip", path.display());
            seen += 1;
        }
        assert!(seen >= 7, "expected the full fixture catalog, found {seen}");
    }

    #[test]
    fn malformed_rational_is_an_input_error() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let mut desc = load(&dir.join("triv.json")).unwrap();
        desc.d = "1/0".to_owned();
        let field = build_field(&desc).unwrap();
        assert!(build_tower(&desc, &field).is_err());
    }
}
