//! Deterministic CSV and JSON writers. Floats use 17 significant digits,
//! lines end in LF and JSON object keys are sorted.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gstate::DensityGrid;

/// JSON schemas of every file the command-line tool writes.
pub mod schema {
    pub const DENSITY: &str = include_str!("../schemas/density.schema.json");
    pub const TABLE: &str = include_str!("../schemas/table.schema.json");
    pub const BERRY: &str = include_str!("../schemas/berry.schema.json");
    pub const DECOMPOSE: &str = include_str!("../schemas/decompose.schema.json");
    pub const VERIFY_REPORT: &str = include_str!("../schemas/verify-report.schema.json");
}

/// Fixed 17-significant-digit scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Grid CSV: a `# x_min,x_max,y_min,y_max,nx,ny` row holding the grid
/// values, then `ny` rows of `nx` densities, `y` increasing downwards.
pub fn grid_csv(grid: &DensityGrid) -> String {
    let s = &grid.spec;
    let mut out = format!(
        "# {},{},{},{},{},{}\n",
        fmt_f64(s.x_min),
        fmt_f64(s.x_max),
        fmt_f64(s.y_min),
        fmt_f64(s.y_max),
        s.nx,
        s.ny
    );
    for row in grid.values.chunks(s.nx) {
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses [`grid_csv`] output back into its header and values.
pub fn parse_grid_csv(text: &str) -> Result<DensityGrid> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix("# "))
        .ok_or_else(|| Error::usage("grid CSV lacks its header row"))?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() != 6 {
        return Err(Error::usage("grid CSV header needs six fields"));
    }
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| Error::usage(format!("bad number {s:?}: {e}")))
    };
    let int = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::usage(format!("bad count {s:?}: {e}")))
    };
    let spec = crate::gstate::GridSpec {
        x_min: num(fields[0])?,
        x_max: num(fields[1])?,
        y_min: num(fields[2])?,
        y_max: num(fields[3])?,
        nx: int(fields[4])?,
        ny: int(fields[5])?,
    };
    let mut values = Vec::with_capacity(spec.nx * spec.ny);
    for line in lines {
        for v in line.split(',') {
            values.push(num(v)?);
        }
    }
    if values.len() != spec.nx * spec.ny {
        return Err(Error::usage(format!(
            "grid CSV has {} values, header promises {}",
            values.len(),
            spec.nx * spec.ny
        )));
    }
    Ok(DensityGrid { spec, values })
}

/// Table CSV with a header row.
pub fn table_csv(header: &[&str], rows: &[Vec<f64>]) -> Result<String> {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::usage(format!(
                "table row has {} cells, header has {}",
                row.len(),
                header.len()
            )));
        }
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    Ok(out)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let v = sort_keys(serde_json::to_value(value)?);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Rebuilds every object with its keys in sorted order, independent of the
/// map type serde_json was compiled with.
fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &json_string(value)?)
}
