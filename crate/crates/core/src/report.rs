//! Tabulated results and their deterministic serializations.
//!
//! JSON numbers are printed with 17 significant digits (round-trip exact
//! for f64), plain-text tables with 6; identical inputs therefore produce
//! byte-identical output.

use ndarray::Array2;
use num_complex::Complex64;

use crate::states::QuantumNumbers;

/// 17 significant digits; parses back to the identical f64.
pub fn fmt_json(x: f64) -> String {
    format!("{x:.16e}")
}

/// 6 significant digits for human-facing tables.
pub fn fmt_text(x: f64) -> String {
    format!("{x:.5e}")
}

pub fn fmt_complex_text(z: Complex64) -> String {
    format!("({}, {})", fmt_text(z.re), fmt_text(z.im))
}

/// RFC 4180 quoting for fields that may contain commas or quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One block of the splitting tables: a degeneracy group, its secular
/// matrix, and the resulting corrections.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub label: String,
    pub members: Vec<QuantumNumbers>,
    pub degenerate: bool,
    pub e0: f64,
    /// k×k secular matrix in `members` order.
    pub matrix: Array2<Complex64>,
    /// First-order corrections, ascending.
    pub corrections: Vec<f64>,
}

impl TableRow {
    pub fn shifted_min(&self) -> f64 {
        self.e0 + self.corrections.first().copied().unwrap_or(0.0)
    }

    pub fn shifted_max(&self) -> f64 {
        self.e0 + self.corrections.last().copied().unwrap_or(0.0)
    }
}

/// The low-excitation tabulation emitted by `perturbation::paper_tables`.
#[derive(Debug, Clone)]
pub struct TablesReport {
    pub length: f64,
    pub beta: f64,
    /// Canonical text of the profile the table was computed for.
    pub potential: String,
    pub rows: Vec<TableRow>,
}

impl TablesReport {
    /// JSON schema: an array of
    /// `{"pair": [[n_z, n_theta], …], "degenerate": bool,
    ///   "H": [[re, im], …] (row-major), "E1": [real, …], "E0": real}`.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            let pair = row
                .members
                .iter()
                .map(|qn| format!("[{},{}]", qn.n_z(), qn.n_theta()))
                .collect::<Vec<_>>()
                .join(",");
            let h = row
                .matrix
                .iter()
                .map(|z| format!("[{},{}]", fmt_json(z.re), fmt_json(z.im)))
                .collect::<Vec<_>>()
                .join(",");
            let e1 = row
                .corrections
                .iter()
                .map(|&x| fmt_json(x))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "  {{\"pair\":[{pair}],\"degenerate\":{},\"H\":[{h}],\"E1\":[{e1}],\"E0\":{}}}{}\n",
                row.degenerate,
                fmt_json(row.e0),
                if i + 1 < self.rows.len() { "," } else { "" },
            ));
        }
        out.push_str("]\n");
        out
    }

    /// Level-shift rows for plotting: label, E0, E0+E1_min, E0+E1_max.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,E0,E0_plus_E1_minus,E0_plus_E1_plus\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&row.label),
                fmt_json(row.e0),
                fmt_json(row.shifted_min()),
                fmt_json(row.shifted_max()),
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        // Scale of the perturbation, for flagging diagonal-only blocks.
        let scale = self
            .rows
            .iter()
            .flat_map(|row| row.matrix.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max);

        let mut out = String::new();
        out.push_str(&format!(
            "Perturbation analysis at the degenerate aspect ratio R_o = L/pi\n\
             L = {}, beta = {}, V(theta) = {}\n\n",
            fmt_text(self.length),
            fmt_text(self.beta),
            self.potential
        ));

        out.push_str("Secular matrix elements\n");
        out.push_str(&format!(
            "{:<14} {:<12} {}\n",
            "states", "degenerate", "H (row-major)"
        ));
        for row in &self.rows {
            let entries = row
                .matrix
                .iter()
                .map(|&z| fmt_complex_text(z))
                .collect::<Vec<_>>()
                .join(" ");
            let mut note = String::new();
            if row.degenerate {
                let k = row.members.len();
                let off_max = (0..k)
                    .flat_map(|r| (0..k).map(move |c| (r, c)))
                    .filter(|&(r, c)| r != c)
                    .map(|(r, c)| row.matrix[[r, c]].norm())
                    .fold(0.0, f64::max);
                let diag_max = (0..k).map(|r| row.matrix[[r, r]].norm()).fold(0.0, f64::max);
                if diag_max > 1e-10 * scale && off_max <= 1e-12 * diag_max {
                    note = "  [diagonal shift only: no splitting]".to_string();
                }
            }
            out.push_str(&format!(
                "{:<14} {:<12} {}{}\n",
                row.label,
                if row.degenerate { "yes" } else { "no" },
                entries,
                note
            ));
        }

        out.push_str("\nFirst-order corrections\n");
        out.push_str(&format!("{:<14} {}\n", "states", "E1 (ascending)"));
        for row in &self.rows {
            let e1 = row
                .corrections
                .iter()
                .map(|&x| fmt_text(x))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!("{:<14} {}\n", row.label, e1));
        }

        out.push_str("\nLevel shifts\n");
        out.push_str(&format!(
            "{:<14} {:>14} {:>14} {:>14}\n",
            "states", "E0", "E0+E1_minus", "E0+E1_plus"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:<14} {:>14} {:>14} {:>14}\n",
                row.label,
                fmt_text(row.e0),
                fmt_text(row.shifted_min()),
                fmt_text(row.shifted_max()),
            ));
        }
        out
    }
}
