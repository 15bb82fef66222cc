//! CSV and SVG emission. Files are written to a temporary sibling and
//! renamed into place, so readers never see a partial file.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::{CliError, Result};

/// Column-named numeric table; one row per sweep or frequency point.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Rows whose solve failed; their values are NaN.
    pub failures: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            failures: 0,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Fails when more than 1% of rows could not be computed.
    pub fn check_failures(&self) -> Result<()> {
        if self.failures * 100 > self.rows.len() {
            return Err(CliError::SweepFailures {
                failed: self.failures,
                total: self.rows.len(),
            });
        }
        Ok(())
    }

    /// 17 significant digits, LF line endings, header first.
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                if v.is_nan() {
                    s.push_str("NaN");
                } else {
                    let _ = write!(s, "{v:.16e}");
                }
            }
            s.push('\n');
        }
        s
    }

    /// Polyline quick-look of every column against the first one.
    pub fn to_svg(&self) -> String {
        const W: f64 = 800.0;
        const H: f64 = 500.0;
        const PAD: f64 = 50.0;
        const COLORS: [&str; 6] = [
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
        ];

        let x = self.column(&self.header[0]).unwrap_or_default();
        let finite = |v: &f64| v.is_finite();
        let (xmin, xmax) = bounds(x.iter().copied().filter(finite));
        let series: Vec<usize> = (1..self.header.len()).take(COLORS.len()).collect();
        let (ymin, ymax) = bounds(
            series
                .iter()
                .flat_map(|&k| self.rows.iter().map(move |r| r[k]))
                .filter(finite),
        );
        let sx = |v: f64| PAD + (v - xmin) / (xmax - xmin) * (W - 2.0 * PAD);
        let sy = |v: f64| H - PAD - (v - ymin) / (ymax - ymin) * (H - 2.0 * PAD);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            W - 2.0 * PAD,
            H - 2.0 * PAD
        );
        for (n, &k) in series.iter().enumerate() {
            // NaN rows split the line so gaps stay visible.
            let mut segments: Vec<Vec<String>> = vec![Vec::new()];
            for (xi, row) in x.iter().zip(&self.rows) {
                if xi.is_finite() && row[k].is_finite() {
                    segments
                        .last_mut()
                        .unwrap()
                        .push(format!("{:.2},{:.2}", sx(*xi), sy(row[k])));
                } else if !segments.last().unwrap().is_empty() {
                    segments.push(Vec::new());
                }
            }
            for seg in segments.iter().filter(|s| s.len() > 1) {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{}" stroke-width="1" points="{}"/>"#,
                    COLORS[n],
                    seg.join(" ")
                );
            }
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="12" fill="{}">{}</text>"#,
                PAD + 10.0,
                PAD + 15.0 * (n + 1) as f64,
                COLORS[n],
                self.header[k]
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{} [{xmin:.4}, {xmax:.4}]</text>"#,
            W / 2.0,
            H - 15.0,
            self.header[0]
        );
        let _ = writeln!(
            s,
            r#"<text x="10" y="{}" font-size="12">[{ymin:.4e}, {ymax:.4e}]</text>"#,
            PAD - 10.0
        );
        s.push_str("</svg>\n");
        s
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
