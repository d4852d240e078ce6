//! Report emission: pretty JSON or RFC-4180 CSV, always to stdout or a
//! file, never interleaved with diagnostics (those go to stderr).

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Serializes a report as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

/// Renders a header row plus data rows as CRLF-terminated CSV.
///
/// Every cell the toolkit emits is a plain number or identifier, so no
/// quoting is ever needed; debug builds assert that stays true.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    push_row(&mut out, header.iter().copied());
    for row in rows {
        debug_assert!(
            row.iter().all(|cell| !cell.contains([',', '"', '\r', '\n'])),
            "CSV cell needs quoting"
        );
        push_row(&mut out, row.iter().map(String::as_str));
    }
    out
}

fn push_row<'a>(out: &mut String, cells: impl Iterator<Item = &'a str>) {
    let mut first = true;
    for cell in cells {
        if !first {
            out.push(',');
        }
        out.push_str(cell);
        first = false;
    }
    out.push_str("\r\n");
}

/// Writes rendered output to a file, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing to stdout")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_are_crlf_terminated_with_a_header() {
        let rows = vec![vec!["1".to_string(), "2.5".to_string()]];
        assert_eq!(to_csv(&["a", "b"], &rows), "a,b\r\n1,2.5\r\n");
    }

    #[test]
    fn json_reports_end_with_a_newline() {
        let text = to_json(&serde_json::json!({"n": 3})).unwrap();
        assert!(text.ends_with('\n'));
        assert!(text.contains("\"n\": 3"));
    }
}
