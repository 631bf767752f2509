//! Flat per-knot rows for tabular emission, with CSV encode/parse that
//! carries every rational exactly, and atomic file writes.

use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use twistbound::{BoundReport, Rational, WitnessSource};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: u64,
    pub lower: Rational,
}

/// One bound report flattened to scalar columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub n: u64,
    pub m: u64,
    pub factorization: String,
    pub per_prime: Vec<PrimeEntry>,
    pub best_lower: Rational,
    pub weakened_lower: Rational,
    pub upper_half: bool,
    pub upper_source: String,
}

pub fn source_label(source: Option<WitnessSource>) -> &'static str {
    match source {
        Some(WitnessSource::PellConstruction) => "pell_construction",
        Some(WitnessSource::ExhaustiveSearch) => "exhaustive_search",
        None => "none",
    }
}

impl SurveyRow {
    pub fn from_report(report: &BoundReport) -> SurveyRow {
        SurveyRow {
            n: report.n,
            m: report.m,
            factorization: report.factorization.to_string(),
            per_prime: report
                .per_prime
                .iter()
                .map(|pb| PrimeEntry { p: pb.p, lower: pb.lower.clone() })
                .collect(),
            best_lower: report.best_lower.clone(),
            weakened_lower: report.weakened_lower.clone(),
            upper_half: report.upper.certified,
            upper_source: source_label(report.upper.source).to_string(),
        }
    }
}

pub const CSV_HEADER: &str =
    "n,m,factorization,per_prime,best_lower,weakened_lower,upper_half,upper_source";

/// Joins per-prime bounds as `p:lower` entries separated by `;`, keeping
/// the whole field free of commas.
fn encode_per_prime(entries: &[PrimeEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("{}:{}", e.p, e.lower))
        .collect::<Vec<_>>()
        .join(";")
}

fn decode_per_prime(field: &str) -> Result<Vec<PrimeEntry>, String> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field
        .split(';')
        .map(|entry| {
            let (p, lower) = entry.split_once(':').ok_or_else(|| {
                format!("per-prime entry {entry:?} is not of the form p:bound")
            })?;
            Ok(PrimeEntry {
                p: p.parse().map_err(|e| format!("bad prime in {entry:?}: {e}"))?,
                lower: lower.parse().map_err(|e| format!("bad bound in {entry:?}: {e}"))?,
            })
        })
        .collect()
}

/// CSV with one `#` metadata line, a header, and one row per knot. Content
/// depends only on the inputs, so identical invocations emit identical
/// bytes.
pub fn to_csv(rows: &[SurveyRow], n_start: u64, n_end: u64, search_bound: i64) -> String {
    let mut out =
        format!("# twistbound survey n={n_start}..{n_end} search_bound={search_bound}\n");
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n,
            row.m,
            row.factorization,
            encode_per_prime(&row.per_prime),
            row.best_lower,
            row.weakened_lower,
            row.upper_half,
            row.upper_source,
        ));
    }
    out
}

/// Parses the output of `to_csv`, recovering exact rationals.
pub fn parse_csv(text: &str) -> Result<Vec<SurveyRow>, String> {
    let mut rows = Vec::new();
    let mut saw_header = false;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        if !saw_header {
            if line != CSV_HEADER {
                return Err(format!("line {lineno}: unexpected header {line:?}"));
            }
            saw_header = true;
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let [n, m, factorization, per_prime, best, weakened, upper_half, upper_source] =
            cells.as_slice()
        else {
            return Err(format!("line {lineno}: expected 8 cells, got {}", cells.len()));
        };
        let fail = |what: &str, detail: String| format!("line {lineno}: bad {what}: {detail}");
        rows.push(SurveyRow {
            n: n.parse().map_err(|e| fail("n", format!("{e}")))?,
            m: m.parse().map_err(|e| fail("m", format!("{e}")))?,
            factorization: factorization.to_string(),
            per_prime: decode_per_prime(per_prime).map_err(|e| fail("per_prime", e))?,
            best_lower: best.parse().map_err(|e| fail("best_lower", format!("{e}")))?,
            weakened_lower: weakened
                .parse()
                .map_err(|e| fail("weakened_lower", format!("{e}")))?,
            upper_half: upper_half.parse().map_err(|e| fail("upper_half", format!("{e}")))?,
            upper_source: upper_source.to_string(),
        });
    }
    if !saw_header {
        return Err("missing header".to_string());
    }
    Ok(rows)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use twistbound::{bound_report, ReportOptions, TwistKnot};

    fn report(n: u64) -> BoundReport {
        let k = TwistKnot::new(n).unwrap();
        bound_report(&k, &ReportOptions::default()).unwrap()
    }

    #[test]
    fn flattening_keeps_report_content() {
        let row = SurveyRow::from_report(&report(16));
        assert_eq!(row.n, 16);
        assert_eq!(row.m, 65);
        assert_eq!(row.factorization, "5*13");
        assert_eq!(row.per_prime.len(), 2);
        assert_eq!(row.per_prime[0].p, 5);
        assert_eq!(row.per_prime[0].lower, Rational::new(3, 8));
        assert_eq!(row.per_prime[1].lower, Rational::new(4, 11));
        assert_eq!(row.best_lower, Rational::new(3, 8));
        assert_eq!(row.weakened_lower, Rational::new(9, 26));
        assert!(row.upper_half);
        assert_eq!(row.upper_source, "pell_construction");
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let rows: Vec<SurveyRow> =
            (0..=8).map(|n| SurveyRow::from_report(&report(n))).collect();
        let text = to_csv(&rows, 0, 8, 20);
        let back = parse_csv(&text).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn csv_is_deterministic() {
        let rows: Vec<SurveyRow> =
            (3..=5).map(|n| SurveyRow::from_report(&report(n))).collect();
        assert_eq!(to_csv(&rows, 3, 5, 20), to_csv(&rows, 3, 5, 20));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rows: Vec<SurveyRow> =
            (4..=6).map(|n| SurveyRow::from_report(&report(n))).collect();
        let json = serde_json::to_string_pretty(&rows).unwrap();
        let back: Vec<SurveyRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn parse_rejects_malformed_rows() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("a,b\n").is_err());
        let good = to_csv(&[SurveyRow::from_report(&report(16))], 16, 16, 20);
        let clipped = good.replace(",pell_construction", "");
        assert!(parse_csv(&clipped).is_err());
    }

    #[test]
    fn atomic_write_lands_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        write_atomic(&path, "# probe\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "# probe\n");
        write_atomic(&path, "# replaced\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "# replaced\n");
    }
}
