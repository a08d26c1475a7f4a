//! Operation tables and their text, JSON and CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use ck_steenrod_core::adams::{adams_psi_matrix, chern_class, theta_operator, AdamsContext};
use ck_steenrod_core::connective::{gr_steenrod_matrix, tau_matrix};
use ck_steenrod_core::exactalg::{Matrix, Scalar, F2};
use ck_steenrod_core::steenrod::sq1_coh;
use ck_steenrod_core::varieties::{ChowClass, SplitKClass, Variety};
use ck_steenrod_core::{Error, Result};
use serde::{Deserialize, Serialize};

pub const OPERATIONS: [&str; 7] = ["sq1", "sq1-coh", "psi", "theta", "tau", "gr-sq1", "chern"];

/// A class given on the command line through `--of`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitInput {
    Tangent,
    NegTangent,
    Line(Vec<i64>),
}

impl SplitInput {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tangent" => Ok(SplitInput::Tangent),
            "-tangent" => Ok(SplitInput::NegTangent),
            _ => {
                let inner = s
                    .strip_prefix("O(")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Domain(format!("--of expects tangent, -tangent or O(a,..), got {s:?}")))?;
                let degrees = inner
                    .split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Domain(format!("bad degrees in {s:?}")))?;
                Ok(SplitInput::Line(degrees))
            }
        }
    }

    pub fn resolve(&self, v: &Arc<Variety>) -> Result<SplitKClass> {
        match self {
            SplitInput::Tangent => Ok(SplitKClass::tangent(v)),
            SplitInput::NegTangent => Ok(SplitKClass::tangent(v).neg()),
            SplitInput::Line(d) => SplitKClass::line(v, d, 1),
        }
    }

    fn label(&self) -> String {
        match self {
            SplitInput::Tangent => "tangent".into(),
            SplitInput::NegTangent => "-tangent".into(),
            SplitInput::Line(d) => {
                let parts: Vec<String> = d.iter().map(i64::to_string).collect();
                format!("O({})", parts.join(","))
            }
        }
    }
}

/// The emitted form of a table. `matrix[i][j]` is the coefficient of basis
/// element `i` in the image of column `j`; for `chern`, column `n` is `c_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub variety: String,
    pub operation: String,
    pub parameters: BTreeMap<String, String>,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

fn rows_of<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

fn columns_matrix<S: Scalar>(rows: usize, cols: &[Vec<S>]) -> Matrix<S> {
    Matrix::from_columns(rows, cols)
}

pub fn build(v: &Arc<Variety>, operation: &str, k: i64, of: &SplitInput) -> Result<Table> {
    let mut parameters = BTreeMap::new();
    let ctx = || AdamsContext::new(k);
    let matrix = match operation {
        "sq1" => rows_of(v.sq1_matrix()),
        "sq1-coh" => {
            let cols: Vec<Vec<F2>> =
                (0..v.len()).map(|i| sq1_coh(&ChowClass::basis(v, i)).into_coeffs()).collect();
            rows_of(&columns_matrix(v.len(), &cols))
        }
        "psi" => {
            parameters.insert("k".into(), k.to_string());
            rows_of(&adams_psi_matrix(&ctx()?, v)?)
        }
        "theta" => {
            parameters.insert("k".into(), k.to_string());
            parameters.insert("of".into(), of.label());
            rows_of(&theta_operator(&ctx()?, &of.resolve(v)?)?)
        }
        "tau" => {
            parameters.insert("k".into(), k.to_string());
            rows_of(&tau_matrix(&ctx()?, v)?)
        }
        "gr-sq1" => rows_of(&gr_steenrod_matrix(v)?),
        "chern" => {
            parameters.insert("of".into(), of.label());
            let y = of.resolve(v)?;
            let cols = (0..=v.dimension()).map(|n| Ok(chern_class(n, &y)?.into_coeffs())).collect::<Result<Vec<_>>>()?;
            rows_of(&columns_matrix(v.len(), &cols))
        }
        other => {
            return Err(Error::Domain(format!("unknown operation {other:?}; expected one of {}", OPERATIONS.join(", "))))
        }
    };
    Ok(Table {
        variety: v.descriptor().to_string(),
        operation: operation.to_string(),
        parameters,
        basis: v.names().to_vec(),
        matrix,
    })
}

impl Table {
    fn column_labels(&self) -> Vec<String> {
        if self.operation == "chern" {
            (0..self.matrix.first().map_or(0, Vec::len)).map(|n| format!("c_{n}")).collect()
        } else {
            self.basis.clone()
        }
    }

    fn image(&self, j: usize) -> String {
        let terms: Vec<String> = self
            .matrix
            .iter()
            .zip(&self.basis)
            .filter(|(row, _)| row[j] != "0")
            .map(|(row, name)| format!("{}·{name}", row[j]))
            .collect();
        let mut out = String::new();
        for t in terms {
            match (out.is_empty(), t.strip_prefix('-')) {
                (true, _) => out.push_str(&t),
                (false, Some(rest)) => out.push_str(&format!(" - {rest}")),
                (false, None) => out.push_str(&format!(" + {t}")),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{}", format!("{} on {} {}", self.operation, self.variety, params.join(" ")).trim_end());
        let labels = self.column_labels();
        for (j, label) in labels.iter().enumerate() {
            if self.operation == "chern" {
                let image = self.image(j);
                let reduced: Vec<String> = self
                    .matrix
                    .iter()
                    .zip(&self.basis)
                    .filter(|(row, _)| is_odd(&row[j]))
                    .map(|(_, name)| name.clone())
                    .collect();
                let reduced = if reduced.is_empty() { "0".into() } else { reduced.join(" + ") };
                let _ = writeln!(out, "{label} = {image}   (mod 2: {reduced})");
            } else {
                let _ = writeln!(out, "{}({label}) = {}", self.operation, self.image(j));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize") + "\n"
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "basis,{}", self.column_labels().join(","));
        for (name, row) in self.basis.iter().zip(&self.matrix) {
            let _ = writeln!(out, "{name},{}", row.join(","));
        }
        out
    }
}

fn is_odd(entry: &str) -> bool {
    entry.trim_start_matches('-').bytes().last().is_some_and(|b| (b - b'0') % 2 == 1)
}
