//! Output shaping shared by the CLI and tests: JSON document types (field
//! order follows struct order; every scalar is a string, never a float) and
//! the human-readable table / CSV renderers.

use crate::forms::CoeffVector;
use crate::group::GroupTable;
use crate::scalar::GaussianRational;
use crate::spaces::{BasisReport, RelationReport};
use crate::verify::CheckOutcome;
use num::{Signed, Zero};
use serde::Serialize;

#[derive(Serialize)]
pub struct CoeffEntryJson {
    pub pos: usize,
    pub val: String,
}

/// Sparse JSON form of a coefficient vector: nonzero positions, ascending.
#[derive(Serialize)]
pub struct CoeffVectorJson {
    pub f: usize,
    pub coeffs: Vec<CoeffEntryJson>,
}

impl CoeffVectorJson {
    pub fn from_vector(v: &CoeffVector) -> Self {
        CoeffVectorJson {
            f: v.degree(),
            coeffs: v
                .nonzero()
                .map(|(pos, val)| CoeffEntryJson {
                    pos,
                    val: val.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct BasisVectorJson {
    pub label: String,
    pub coeffs: Vec<CoeffEntryJson>,
}

#[derive(Serialize)]
pub struct BasisReportJson {
    pub f: usize,
    pub space: String,
    pub dimension: usize,
    pub vectors: Vec<BasisVectorJson>,
}

impl BasisReportJson {
    pub fn from_report(report: &BasisReport) -> Self {
        BasisReportJson {
            f: report.f,
            space: report.space.to_string(),
            dimension: report.dimension,
            vectors: report
                .labels()
                .into_iter()
                .zip(&report.vectors)
                .map(|(label, v)| BasisVectorJson {
                    label,
                    coeffs: CoeffVectorJson::from_vector(v).coeffs,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct RelationReportJson {
    pub f: usize,
    pub v_basis: BasisReportJson,
    pub w_basis: BasisReportJson,
    pub matrix: Vec<Vec<String>>,
    pub all_even: bool,
    pub extra_invariants: Vec<String>,
}

impl RelationReportJson {
    pub fn from_report(report: &RelationReport) -> Self {
        RelationReportJson {
            f: report.f,
            v_basis: BasisReportJson::from_report(&report.v_basis),
            w_basis: BasisReportJson::from_report(&report.w_basis),
            matrix: report
                .matrix
                .iter()
                .map(|row| row.iter().map(GaussianRational::to_string).collect())
                .collect(),
            all_even: report.all_even,
            extra_invariants: report
                .extra_invariants
                .iter()
                .map(|m| m.to_string())
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct DimsJson {
    pub f: usize,
    #[serde(rename = "dim_V")]
    pub dim_v: usize,
    #[serde(rename = "dim_W")]
    pub dim_w: usize,
}

#[derive(Serialize)]
pub struct GroupJson {
    pub order: usize,
    pub elements: Vec<[[String; 2]; 2]>,
    pub inverse_index: Vec<usize>,
}

impl GroupJson {
    pub fn from_table(g: &GroupTable) -> Self {
        GroupJson {
            order: g.order(),
            elements: g
                .elements()
                .iter()
                .map(|m| {
                    [
                        [m.entry(0, 0).to_string(), m.entry(0, 1).to_string()],
                        [m.entry(1, 0).to_string(), m.entry(1, 1).to_string()],
                    ]
                })
                .collect(),
            inverse_index: g.inverse_index().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct CompletionJson {
    pub f: usize,
    pub extra_invariants: Vec<String>,
    pub final_rank: usize,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub f: usize,
    pub status: String,
    pub checks: Vec<CheckJson>,
}

impl VerifyJson {
    pub fn from_outcomes(f: usize, outcomes: &[CheckOutcome]) -> Self {
        let status = if outcomes.iter().all(|c| c.passed) {
            "pass"
        } else {
            "fail"
        };
        VerifyJson {
            f,
            status: status.into(),
            checks: outcomes
                .iter()
                .map(|c| CheckJson {
                    name: c.name.into(),
                    status: if c.passed { "pass" } else { "fail" }.into(),
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ErrorBodyJson {
    pub kind: String,
    pub message: String,
}

#[derive(Serialize)]
pub struct ErrorJson {
    pub error: ErrorBodyJson,
}

impl ErrorJson {
    pub fn from_error(e: &crate::Error) -> Self {
        ErrorJson {
            error: ErrorBodyJson {
                kind: e.kind().into(),
                message: e.to_string(),
            },
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn dims_table(d: &DimsJson) -> String {
    format!("f      {}\ndim V  {}\ndim W  {}\n", d.f, d.dim_v, d.dim_w)
}

pub fn dims_csv(d: &DimsJson) -> String {
    format!("f,dim_V,dim_W\n{},{},{}\n", d.f, d.dim_v, d.dim_w)
}

pub fn group_table(g: &GroupTable) -> String {
    let mut out = format!("group of order {}\n", g.order());
    for (pos, m) in g.elements().iter().enumerate() {
        out.push_str(&format!(
            "{pos:3}: [[{}, {}], [{}, {}]]  inverse at {}\n",
            m.entry(0, 0),
            m.entry(0, 1),
            m.entry(1, 0),
            m.entry(1, 1),
            g.inverse_index()[pos],
        ));
    }
    out
}

pub fn group_csv(g: &GroupTable) -> String {
    let mut out = String::from("index,e11,e12,e21,e22,inverse_index\n");
    for (pos, m) in g.elements().iter().enumerate() {
        out.push_str(&format!(
            "{pos},{},{},{},{},{}\n",
            m.entry(0, 0),
            m.entry(0, 1),
            m.entry(1, 0),
            m.entry(1, 1),
            g.inverse_index()[pos],
        ));
    }
    out
}

fn basis_symbol(report: &BasisReport) -> &'static str {
    match report.space {
        crate::spaces::SpaceTag::V => "L~",
        crate::spaces::SpaceTag::W => "N_",
    }
}

pub fn basis_table(report: &BasisReport) -> String {
    let mut out = format!(
        "basis of {}_{} (dimension {})\n",
        report.space, report.f, report.dimension
    );
    let symbol = basis_symbol(report);
    for (i, (label, v)) in report.labels().iter().zip(&report.vectors).enumerate() {
        out.push_str(&format!(
            "{symbol}{} <- {label}  ({} nonzero coefficients)\n",
            i + 1,
            v.nonzero().count(),
        ));
    }
    out
}

pub fn basis_csv(report: &BasisReport) -> String {
    let mut out = String::from("index,label,pos,val\n");
    for (i, (label, v)) in report.labels().iter().zip(&report.vectors).enumerate() {
        for (pos, val) in v.nonzero() {
            out.push_str(&format!(
                "{},{},{pos},{}\n",
                i + 1,
                csv_field(label),
                csv_field(&val.to_string())
            ));
        }
    }
    out
}

/// One "N_i = Σ a_j L~j" line, zero terms skipped.
fn relation_line(i: usize, row: &[GaussianRational]) -> String {
    let mut line = format!("N_{} =", i + 1);
    let mut first = true;
    for (j, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // real coefficients print with their sign folded into the connector
        let (negative, magnitude) = if c.im().is_zero() && c.re().is_negative() {
            (true, format!("{}", -c))
        } else if c.im().is_zero() {
            (false, c.to_string())
        } else {
            (false, format!("({c})"))
        };
        let connector = match (first, negative) {
            (true, false) => " ",
            (true, true) => " -",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        line.push_str(&format!("{connector}{magnitude} L~{}", j + 1));
        first = false;
    }
    if first {
        line.push_str(" 0");
    }
    line
}

pub fn relation_table(report: &RelationReport) -> String {
    let mut out = format!(
        "f = {}  dim V = {}  dim W = {}  all coefficients even: {}\n",
        report.f,
        report.v_basis.dimension,
        report.w_basis.dimension,
        if report.all_even { "yes" } else { "no" }
    );
    out.push_str("V basis: ");
    out.push_str(&report.v_basis.labels().join(" "));
    out.push('\n');
    for (i, row) in report.matrix.iter().enumerate() {
        out.push_str(&relation_line(i, row));
        out.push('\n');
    }
    if report.v_basis.dimension > report.w_basis.dimension {
        out.push_str("extra invariants completing W to V: ");
        let labels: Vec<String> = report
            .extra_invariants
            .iter()
            .map(|m| m.to_string())
            .collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

pub fn relation_csv(report: &RelationReport) -> String {
    let dim = report.v_basis.dimension;
    let mut out = String::from("n");
    for j in 1..=dim {
        out.push_str(&format!(",c{j}"));
    }
    out.push('\n');
    for (i, row) in report.matrix.iter().enumerate() {
        out.push_str(&(i + 1).to_string());
        for c in row {
            out.push(',');
            out.push_str(&csv_field(&c.to_string()));
        }
        out.push('\n');
    }
    out
}

pub fn completion_table(c: &CompletionJson) -> String {
    let mut out = format!(
        "f = {}  final rank {}  extra invariants: {}\n",
        c.f,
        c.final_rank,
        c.extra_invariants.len()
    );
    for label in &c.extra_invariants {
        out.push_str(&format!("  {label}\n"));
    }
    out
}

pub fn completion_csv(c: &CompletionJson) -> String {
    let mut out = String::from("row_part,col_part\n");
    for label in &c.extra_invariants {
        out.push_str(label);
        out.push('\n');
    }
    out
}

pub fn verify_table(v: &VerifyJson) -> String {
    let mut out = String::new();
    for check in &v.checks {
        out.push_str(&format!(
            "{:4} {}: {}\n",
            check.status, check.name, check.detail
        ));
    }
    out.push_str(&format!("verify --f {}: {}\n", v.f, v.status));
    out
}

pub fn verify_csv(v: &VerifyJson) -> String {
    let mut out = String::from("name,status,detail\n");
    for check in &v.checks {
        out.push_str(&format!(
            "{},{},{}\n",
            check.name,
            check.status,
            csv_field(&check.detail)
        ));
    }
    out
}
