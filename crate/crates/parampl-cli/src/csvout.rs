//! Deterministic CSV assembly: `#`-prefixed comment lines echoing the
//! resolved run configuration, one header row, then data rows. Floats are
//! printed to 17 significant digits so files round-trip and diff cleanly;
//! nothing time- or machine-dependent is ever written.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// The crate-wide data float format: 17 significant digits, scientific.
/// Infinities print as `inf` / `-inf`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Whole CSV document assembled in memory before anything is written, so a
/// failing computation never leaves a truncated file behind.
#[derive(Default)]
pub struct CsvDoc {
    text: String,
}

impl CsvDoc {
    pub fn new(command: &str) -> Self {
        let mut doc = Self::default();
        let _ = writeln!(doc.text, "# command = {command}");
        doc
    }

    pub fn comment(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "# {key} = {value}");
    }

    pub fn header(&mut self, columns: &[&str]) {
        let _ = writeln!(self.text, "{}", columns.join(","));
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.text, "{}", fields.join(","));
    }

    /// Write the document to `path`, or to stdout when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<()> {
        match path {
            Some(p) => std::fs::write(p, self.text.as_bytes()),
            None => std::io::stdout().lock().write_all(self.text.as_bytes()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_seventeen_significant_digits() {
        assert_eq!(float(1.0), "1.0000000000000000e0");
        assert_eq!(float(-0.015625), "-1.5625000000000000e-2");
        assert_eq!(float(f64::INFINITY), "inf");
    }

    #[test]
    fn document_layout_is_comments_header_rows() {
        let mut doc = CsvDoc::new("demo");
        doc.comment("gain", float(1.5));
        doc.header(&["a", "b"]);
        doc.row(&["1".into(), float(2.0)]);
        assert_eq!(
            doc.text,
            "# command = demo\n# gain = 1.5000000000000000e0\na,b\n1,2.0000000000000000e0\n"
        );
    }
}
