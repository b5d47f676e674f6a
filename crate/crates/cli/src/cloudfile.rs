//! Point-cloud files.
//!
//! Two layouts are accepted:
//!
//! ```text
//! {"dim": 2, "points": [[0, 0], [0, 2]]}
//! ```
//!
//! or one point per line, coordinates separated by commas or whitespace,
//! with the dimension taken from the first row. Blank lines and lines
//! starting with `#` are skipped.

use std::path::Path;

use lipcheb_core::{PointCloud, Vector};
use serde::Deserialize;

use crate::error::CliError;
use crate::output::to_json;

#[derive(Deserialize)]
struct CloudFile {
    dim: usize,
    points: Vec<Vec<f64>>,
}

pub fn read_cloud(path: &Path) -> Result<PointCloud, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_cloud(&text).map_err(|msg| CliError::Input(format!("{}: {msg}", path.display())))
}

pub fn parse_cloud(text: &str) -> Result<PointCloud, String> {
    if text.trim_start().starts_with('{') {
        parse_document(text)
    } else {
        parse_rows(text)
    }
}

fn parse_document(text: &str) -> Result<PointCloud, String> {
    let doc: CloudFile =
        serde_json::from_str(text).map_err(|e| format!("malformed document: {e}"))?;
    if doc.dim == 0 {
        return Err("dim must be positive".into());
    }
    if doc.points.is_empty() {
        return Err("no points".into());
    }
    let points = doc
        .points
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != doc.dim {
                return Err(format!(
                    "row {i}: expected {} coordinates, found {}",
                    doc.dim,
                    row.len()
                ));
            }
            Vector::new(row).map_err(|e| format!("row {i}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PointCloud::new(points).map_err(|e| e.to_string())
}

fn parse_rows(text: &str) -> Result<PointCloud, String> {
    let mut points = Vec::new();
    let mut dim = None;
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = points.len();
        let coords = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| format!("row {row} (line {}): cannot parse `{t}`", line_no + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let expected = *dim.get_or_insert(coords.len());
        if coords.len() != expected {
            return Err(format!(
                "row {row} (line {}): expected {expected} coordinates, found {}",
                line_no + 1,
                coords.len()
            ));
        }
        let v =
            Vector::new(coords).map_err(|e| format!("row {row} (line {}): {e}", line_no + 1))?;
        points.push(v);
    }
    if points.is_empty() {
        return Err("no points".into());
    }
    PointCloud::new(points).map_err(|e| e.to_string())
}

/// Serializes a cloud in the document layout, numbers at 17 significant digits.
pub fn write_cloud(cloud: &PointCloud) -> String {
    to_json(cloud)
}
