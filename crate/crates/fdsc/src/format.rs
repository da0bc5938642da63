//! JSON file formats for codes, circuits, verification reports and groups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use fdsc_core::css::{build_ghz, build_haah, build_toric, build_xcube, CodeError, CssCode, Family};
use fdsc_core::groups::{Elem, FiniteGroup, GroupError, SolvableSeries};
use fdsc_core::synth::{CircuitMetadata, FdscCircuit, Gate, SubsetS, SynthError};
use fdsc_core::verify::VerifyReport;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} needs parameter {param:?}")]
    MissingParam { family: String, param: &'static str },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Circuit(#[from] SynthError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub version: u32,
    pub n_qubits: usize,
    pub x_stabs: Vec<Vec<usize>>,
    pub z_stabs: Vec<Vec<usize>>,
    #[serde(default = "custom")]
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, usize>,
}

fn custom() -> String {
    "custom".into()
}

/// `(name, params)` as written to files.
pub fn family_tag(family: Family) -> (String, BTreeMap<String, usize>) {
    let mut params = BTreeMap::new();
    match family {
        Family::Ghz { n } => {
            params.insert("n".into(), n);
        }
        Family::Toric { l } | Family::XCube { l } | Family::Haah { l } => {
            params.insert("L".into(), l);
        }
        Family::Custom => {}
    }
    (family.name().into(), params)
}

fn family_from_tag(name: &str, params: &BTreeMap<String, usize>) -> Result<Family, FormatError> {
    let get = |param: &'static str| {
        params.get(param).copied().ok_or_else(|| FormatError::MissingParam {
            family: name.into(),
            param,
        })
    };
    Ok(match name {
        "ghz" => Family::Ghz { n: get("n")? },
        "toric" => Family::Toric { l: get("L")? },
        "xcube" => Family::XCube { l: get("L")? },
        "haah" => Family::Haah { l: get("L")? },
        "custom" => Family::Custom,
        other => return Err(FormatError::UnknownFamily(other.into())),
    })
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(FormatError::Version(v))
    }
}

pub fn code_to_file(code: &CssCode) -> CodeFile {
    let (family, params) = family_tag(code.family());
    CodeFile {
        version: FORMAT_VERSION,
        n_qubits: code.n_qubits(),
        x_stabs: code.x_supports().to_vec(),
        z_stabs: code.z_supports().to_vec(),
        family,
        params,
    }
}

pub fn write_code(code: &CssCode) -> String {
    serde_json::to_string(&code_to_file(code)).expect("code serializes")
}

/// Reads the JSON code format and validates the code (commutation included).
pub fn parse_code(text: &str) -> Result<CssCode, FormatError> {
    let file: CodeFile = serde_json::from_str(text)?;
    check_version(file.version)?;
    let family = family_from_tag(&file.family, &file.params)?;
    Ok(CssCode::new(file.n_qubits, file.x_stabs, file.z_stabs, family)?)
}

/// Builds a built-in family by name, or `None` for an unknown name.
pub fn build_family(name: &str, size: usize) -> Option<Result<CssCode, CodeError>> {
    Some(match name {
        "ghz" => build_ghz(size),
        "toric" => build_toric(size),
        "xcube" => build_xcube(size),
        "haah" => build_haah(size),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitMetadataFile {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, usize>,
    pub strategy: String,
    pub gate_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub version: u32,
    pub n_qubits: usize,
    pub plus_qubits: Vec<usize>,
    pub gates: Vec<[usize; 2]>,
    pub metadata: CircuitMetadataFile,
}

pub fn write_circuit(circ: &FdscCircuit) -> String {
    let (family, params) = family_tag(circ.metadata().family);
    let file = CircuitFile {
        version: FORMAT_VERSION,
        n_qubits: circ.n_qubits(),
        plus_qubits: circ.plus_qubits().as_slice().to_vec(),
        gates: circ.gates().iter().map(|g| [g.control, g.target]).collect(),
        metadata: CircuitMetadataFile {
            family,
            params,
            strategy: circ.metadata().strategy.clone(),
            gate_count: circ.gate_count(),
        },
    };
    serde_json::to_string(&file).expect("circuit serializes")
}

/// Reads a circuit. The recorded `gate_count` is informational; the gate
/// list is authoritative, so an edited file is judged by verification.
pub fn parse_circuit(text: &str) -> Result<FdscCircuit, FormatError> {
    let file: CircuitFile = serde_json::from_str(text)?;
    check_version(file.version)?;
    let family = family_from_tag(&file.metadata.family, &file.metadata.params)?;
    let gates = file
        .gates
        .iter()
        .map(|&[control, target]| Gate { control, target })
        .collect();
    Ok(FdscCircuit::new(
        file.n_qubits,
        SubsetS::new(file.plus_qubits),
        gates,
        CircuitMetadata {
            family,
            strategy: file.metadata.strategy,
        },
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub pass: bool,
    pub failed_x: Vec<usize>,
    pub failed_z: Vec<usize>,
    pub n_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<bool>,
}

pub fn write_report(report: &VerifyReport, oracle: Option<bool>) -> String {
    let file = ReportFile {
        pass: report.pass && oracle != Some(false),
        failed_x: report.failed_x.clone(),
        failed_z: report.failed_z.clone(),
        n_checked: report.n_checked,
        oracle,
    };
    serde_json::to_string(&file).expect("report serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<Elem>>,
    #[serde(default)]
    pub series: Vec<Vec<Elem>>,
}

pub fn write_group(group: &FiniteGroup, series: &SolvableSeries) -> String {
    let file = GroupFile {
        order: group.order(),
        table: group.table_rows(),
        series: series.subgroups().to_vec(),
    };
    serde_json::to_string(&file).expect("group serializes")
}

pub fn parse_group(text: &str) -> Result<(FiniteGroup, SolvableSeries), FormatError> {
    let file: GroupFile = serde_json::from_str(text)?;
    if file.table.len() != file.order {
        return Err(GroupError::InvalidSize(file.table.len()).into());
    }
    let group = FiniteGroup::from_table(file.table)?;
    let series = SolvableSeries::new(&group, file.series)?;
    Ok((group, series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fdsc_core::groups::make_dihedral;
    use fdsc_core::synth::{synthesize, Strategy};

    #[test]
    fn code_round_trip() {
        for code in [build_ghz(3).unwrap(), build_toric(2).unwrap(), build_haah(1).unwrap()] {
            assert_eq!(parse_code(&write_code(&code)).unwrap(), code);
        }
    }

    #[test]
    fn circuit_round_trip() {
        let code = build_toric(3).unwrap();
        let circ = synthesize(&code, &Strategy::ToricComb).unwrap();
        assert_eq!(parse_circuit(&write_circuit(&circ)).unwrap(), circ);
    }

    #[test]
    fn group_round_trip() {
        let (g, s) = make_dihedral(4).unwrap();
        let (g2, s2) = parse_group(&write_group(&g, &s)).unwrap();
        assert_eq!((g2, s2), (g, s));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(parse_code("{"), Err(FormatError::Json(_))));
        let anti = r#"{"version":1,"n_qubits":2,"x_stabs":[[0]],"z_stabs":[[0]],"family":"custom"}"#;
        assert!(matches!(
            parse_code(anti),
            Err(FormatError::Code(CodeError::CommutationViolation { x: 0, z: 0 }))
        ));
        let v2 = r#"{"version":2,"n_qubits":1,"x_stabs":[],"z_stabs":[]}"#;
        assert!(matches!(parse_code(v2), Err(FormatError::Version(2))));
        let toric = r#"{"version":1,"n_qubits":8,"x_stabs":[],"z_stabs":[],"family":"toric"}"#;
        assert!(matches!(parse_code(toric), Err(FormatError::MissingParam { .. })));
    }
}
