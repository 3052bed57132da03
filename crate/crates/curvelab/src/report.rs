//! Deterministic rendering of verification reports: a human-readable
//! text layout and a line-oriented records layout.
//!
//! Records format, one line per report, keys in fixed order:
//!
//! ```text
//! theorem="..." instance="..." claimed="..." computed="..." verdict="..." witness="..."
//! ```
//!
//! Values are double-quoted; embedded quotes and backslashes are
//! escaped with a backslash. The `witness` key is omitted when absent.

use crate::theorem_lab::{failure_count, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

fn quote(value: &str) -> String {
    let mut out = String::with_capacity(value.len() + 2);
    out.push('"');
    for c in value.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn render_one(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut line = format!(
                "[{}] {} on {}: expected {}, got {}",
                report.verdict, report.theorem, report.instance, report.claimed,
                report.computed
            );
            if let Some(witness) = &report.witness {
                line.push_str(&format!(" ({witness})"));
            }
            line
        }
        Format::Records => {
            let mut line = format!(
                "theorem={} instance={} claimed={} computed={} verdict={}",
                quote(report.theorem),
                quote(&report.instance),
                quote(&report.claimed),
                quote(&report.computed),
                quote(&report.verdict.to_string()),
            );
            if let Some(witness) = &report.witness {
                line.push_str(&format!(" witness={}", quote(witness)));
            }
            line
        }
    }
}

/// Renders a report list followed by a one-line summary.
pub fn render(reports: &[VerificationReport], format: Format) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&render_one(report, format));
        out.push('\n');
    }
    let failures = failure_count(reports);
    match format {
        Format::Text => out.push_str(&format!(
            "{} reports, {} failures\n",
            reports.len(),
            failures
        )),
        Format::Records => out.push_str(&format!(
            "summary reports={} failures={}\n",
            reports.len(),
            failures
        )),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorem_lab::VerificationReport;

    fn sample() -> Vec<VerificationReport> {
        vec![
            VerificationReport::pass("bound", "d = 2", "h0 <= 2", "h0 = 2"),
            VerificationReport::fail(
                "bound",
                "d = 3",
                "h0 <= 2",
                "h0 = 3",
                "glue \"special\"",
            ),
        ]
    }

    #[test]
    fn text_layout_is_stable() {
        let out = render(&sample(), Format::Text);
        assert_eq!(
            out,
            "[pass] bound on d = 2: expected h0 <= 2, got h0 = 2\n\
             [fail] bound on d = 3: expected h0 <= 2, got h0 = 3 (glue \"special\")\n\
             2 reports, 1 failures\n"
        );
    }

    #[test]
    fn records_escape_quotes() {
        let out = render(&sample(), Format::Records);
        let last_report = out.lines().nth(1).unwrap();
        assert!(last_report.contains("witness=\"glue \\\"special\\\"\""));
        assert!(out.ends_with("summary reports=2 failures=1\n"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render(&sample(), Format::Records);
        let b = render(&sample(), Format::Records);
        assert_eq!(a, b);
    }
}
