//! Report serialization: JSON, CSV tables and plain files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmf::{AirTable, GmfPolynomial, MonotoneReport};
use crate::rational::to_slash;
use crate::symfunc::AlphaTable;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Dot,
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `content` to `path`, creating parent directories.
pub fn write_file(path: &Path, content: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, content)?;
    Ok(())
}

/// Writes to `path`, or to stdout when `path` is `None` or `-`.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => write_file(p, content),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// One row per `(tree, γ, r)` with `c_r` as a `c0;c1;..` cell.
pub fn gmf_csv(polys: &[GmfPolynomial]) -> Result<String> {
    let rows = polys.iter().flat_map(|g| {
        let (basis, lambda) = match &g.gamma {
            crate::gmf::GammaDescriptor::Basis { basis, lambda } => (basis.to_string(), lambda.to_string()),
            crate::gmf::GammaDescriptor::Raw => ("raw".into(), String::new()),
        };
        g.poly.coeff_by_r().iter().enumerate().map(move |(r, c)| {
            vec![g.tree.code().to_string(), basis.clone(), lambda.clone(), r.to_string(), c.to_csv_cell()]
        })
    });
    csv_string(&["tree", "basis", "lambda", "r", "coeff"], rows)
}

pub fn air_csv(tables: &[AirTable]) -> Result<String> {
    let rows = tables.iter().flat_map(|t| {
        t.entries()
            .map(|(i, r, a)| vec![t.tree.code().to_string(), i.to_string(), r.to_string(), a.to_csv_cell()])
    });
    csv_string(&["tree", "i", "r", "value"], rows)
}

pub fn alpha_csv(table: &AlphaTable) -> Result<String> {
    let width = table.n / 2 + 1;
    let header: Vec<String> = std::iter::once("lambda".to_string())
        .chain((0..width).map(|i| format!("alpha_{i}")))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = table.rows.iter().map(|(lambda, a)| {
        std::iter::once(lambda.to_string())
            .chain(a.iter().map(to_slash))
            .collect()
    });
    csv_string(&header, rows)
}

pub fn monotone_csv(reports: &[MonotoneReport]) -> Result<String> {
    let rows = reports.iter().flat_map(|rep| {
        rep.per_r.iter().map(move |c| {
            vec![
                rep.pair.lower.code().to_string(),
                rep.pair.upper.code().to_string(),
                rep.basis.map(|b| b.to_string()).unwrap_or_default(),
                rep.lambda.as_ref().map(|l| l.to_string()).unwrap_or_default(),
                format!("{:?}", rep.mode).to_lowercase(),
                c.r.to_string(),
                c.difference.to_csv_cell(),
                c.pass.to_string(),
            ]
        })
    });
    csv_string(
        &["lower", "upper", "basis", "lambda", "mode", "r", "difference", "pass"],
        rows,
    )
}

/// Fixed-width text rendering of an α table.
pub fn alpha_text(table: &AlphaTable) -> String {
    let width = table.n / 2 + 1;
    let cells: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|(l, a)| std::iter::once(l.to_string()).chain(a.iter().map(|x| x.to_string())).collect())
        .collect();
    let mut header = vec![format!("{}_λ \\ i", table.basis)];
    header.extend((0..width).map(|i| i.to_string()));
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: &[String]| {
        row.iter()
            .zip(&widths)
            .enumerate()
            .map(|(k, (c, w))| if k == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&header);
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}
