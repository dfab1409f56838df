//! CSV, JSON, and table renderings of verification records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use serde::Deserialize;

use crate::verifier::{
    Outcome, Params, Status, Summary, TheoremCase, TheoremId, VerificationRecord, AUX_CLASS_NUMBER,
};

/// Column header of the CSV report, fixed byte for byte.
pub const CSV_HEADER: &str = "theorem_id,p,r,k,g,n,predicted,observed,h_neg_p,aux_jacobi,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
    Json,
}

/// A report that could not be parsed; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: u64,
    pub message: String,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `key=value;...` for every aux entry other than `h`.
fn encode_aux(aux: &BTreeMap<String, i64>) -> String {
    aux.iter()
        .filter(|(k, _)| k.as_str() != AUX_CLASS_NUMBER)
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_row(record: &VerificationRecord) -> [String; 11] {
    let ps = &record.case.params;
    // Lerch's multiplier rides in the `g` column
    let g = match record.case.id {
        TheoremId::Lerch => opt(ps.a),
        _ => opt(ps.g),
    };
    [
        record.case.id.to_string(),
        opt(ps.p),
        opt(ps.r),
        opt(ps.k),
        g,
        opt(ps.n),
        record.predicted.to_string(),
        record.observed.to_string(),
        opt(record.class_number()),
        encode_aux(&record.aux),
        record.status.to_string(),
    ]
}

pub fn write_csv<W: Write>(out: W, records: &[VerificationRecord]) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER.split(','))?;
    for record in records {
        writer.write_record(csv_row(record))?;
    }
    writer.flush()
}

pub fn write_json<W: Write>(mut out: W, records: &[VerificationRecord]) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)
}

pub fn write_table<W: Write>(
    mut out: W,
    records: &[VerificationRecord],
    color: bool,
) -> std::io::Result<()> {
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            let case = r.case.to_string();
            let params = case
                .split_once(' ')
                .map_or("", |(_, rest)| rest)
                .to_string();
            [
                r.case.id.to_string(),
                params,
                r.predicted.to_string(),
                r.observed.to_string(),
                opt(r.class_number()),
                r.status.to_string(),
            ]
        })
        .collect();
    let header = [
        "theorem",
        "params",
        "predicted",
        "observed",
        "h(-p)",
        "status",
    ];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{cell:<w$}  ");
            }
        }
        s
    };
    writeln!(out, "{}", line(&header))?;
    for (row, record) in rows.iter().zip(records) {
        let mut cells: Vec<&str> = row.iter().map(String::as_str).collect();
        let status = paint(record.status, color);
        cells[5] = &status;
        writeln!(out, "{}", line(&cells).trim_end())?;
    }
    Ok(())
}

fn paint(status: Status, color: bool) -> String {
    if !color {
        return status.to_string();
    }
    let code = match status {
        Status::Match | Status::ConjectureMatch => "32",
        Status::PaperDiscrepancyNoted => "33",
        Status::Mismatch | Status::ConjectureMismatch => "31",
    };
    format!("\x1b[{code}m{status}\x1b[0m")
}

pub fn write_records<W: Write>(
    out: W,
    records: &[VerificationRecord],
    format: ReportFormat,
    color: bool,
) -> std::io::Result<()> {
    match format {
        ReportFormat::Table => write_table(out, records, color),
        ReportFormat::Csv => write_csv(out, records),
        ReportFormat::Json => write_json(out, records),
    }
}

fn parse_field<T: std::str::FromStr>(
    s: &str,
    column: &str,
    line: u64,
) -> Result<Option<T>, ParseError> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| ParseError {
        line,
        message: format!("bad value `{s}` in column {column}"),
    })
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<VerificationRecord>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(input);
    let mut records = Vec::new();
    let mut rows = reader.records();
    match rows.next() {
        Some(Ok(header)) if header.iter().collect::<Vec<_>>().join(",") == CSV_HEADER => {}
        Some(Err(e)) => {
            return Err(ParseError {
                line: 1,
                message: e.to_string(),
            })
        }
        _ => {
            return Err(ParseError {
                line: 1,
                message: format!("expected header `{CSV_HEADER}`"),
            })
        }
    }
    for row in rows {
        let row = row.map_err(|e| ParseError {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |message: String| ParseError { line, message };
        if row.len() != 11 {
            return Err(bad(format!("expected 11 fields, found {}", row.len())));
        }
        let id: TheoremId = row[0]
            .parse()
            .map_err(|e: crate::Error| bad(e.to_string()))?;
        let mut params = Params {
            p: parse_field(&row[1], "p", line)?,
            r: parse_field(&row[2], "r", line)?,
            k: parse_field(&row[3], "k", line)?,
            g: None,
            n: parse_field(&row[5], "n", line)?,
            a: None,
        };
        if id == TheoremId::Lerch {
            params.a = parse_field(&row[4], "g", line)?;
        } else {
            params.g = parse_field(&row[4], "g", line)?;
        }
        let outcome = |s: &str, column: &str| {
            s.parse::<Outcome>()
                .map_err(|_| bad(format!("bad value `{s}` in column {column}")))
        };
        let predicted = outcome(&row[6], "predicted")?;
        let observed = outcome(&row[7], "observed")?;
        let mut aux = BTreeMap::new();
        if let Some(h) = parse_field::<i64>(&row[8], "h_neg_p", line)? {
            aux.insert(AUX_CLASS_NUMBER.to_string(), h);
        }
        for entry in row[9].split(';').filter(|e| !e.is_empty()) {
            let (key, value) = entry
                .rsplit_once('=')
                .ok_or_else(|| bad(format!("bad aux entry `{entry}`")))?;
            let value = parse_field(value, "aux_jacobi", line)?.unwrap_or_default();
            aux.insert(key.to_string(), value);
        }
        let status: Status = row[10]
            .parse()
            .map_err(|e: crate::Error| bad(e.to_string()))?;
        records.push(VerificationRecord {
            case: TheoremCase::new(id, params),
            predicted,
            observed,
            aux,
            status,
        });
    }
    Ok(records)
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<VerificationRecord>, ParseError> {
    let mut de = serde_json::Deserializer::from_reader(input);
    let records = Vec::<VerificationRecord>::deserialize(&mut de).and_then(|r| de.end().map(|_| r));
    records.map_err(|e| ParseError {
        line: e.line() as u64,
        message: e.to_string(),
    })
}

/// Reads a CSV or JSON report, choosing by extension and then by content.
pub fn read_report(path: &Path, text: &str) -> Result<Vec<VerificationRecord>, ParseError> {
    let is_json = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => true,
        Some("csv") => false,
        _ => text.trim_start().starts_with('['),
    };
    if is_json {
        read_json(text.as_bytes())
    } else {
        read_csv(text.as_bytes())
    }
}

/// One line of counts, e.g. `cases 24, match 24, mismatch 0`.
pub fn summary_line(summary: &Summary) -> String {
    let mut s = format!("cases {}", summary.total);
    for status in Status::ALL {
        let _ = write!(s, ", {status} {}", summary.count(status));
    }
    s
}

/// Per-theorem totals followed by every record whose prediction failed.
pub fn aggregate(records: &[VerificationRecord]) -> String {
    let mut per_theorem: BTreeMap<TheoremId, Summary> = BTreeMap::new();
    for record in records {
        let entry = per_theorem.entry(record.case.id).or_default();
        entry.total += 1;
        *entry.by_status.entry(record.status).or_default() += 1;
    }
    let mut out = String::new();
    for (id, summary) in &per_theorem {
        let _ = writeln!(out, "{id}: {}", summary_line(summary));
    }
    let _ = writeln!(
        out,
        "total: {}",
        summary_line(&Summary::from_records(records))
    );
    let failures: Vec<_> = records.iter().filter(|r| !r.status.agrees()).collect();
    if !failures.is_empty() {
        let _ = writeln!(out, "non-matching records:");
        for r in failures {
            let aux = r
                .aux
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                "  {}: predicted {} observed {} status {} aux [{aux}]",
                r.case, r.predicted, r.observed, r.status
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{sweep, verify, SweepSpec};

    #[test]
    fn csv_header_is_exact() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn csv_rows_render_expected_fields() {
        let r = verify(&TheoremCase::prime(TheoremId::Sigma31, 5)).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "sigma31,5,,,,,+1,+1,,(2/p)=-1;printed=-1,paper-discrepancy-noted"
        );
        let r = verify(&TheoremCase::lerch(9, 2)).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "lerch,,,,2,9,+1,+1,,(a/n)=1,match"
        );
    }

    #[test]
    fn csv_and_json_round_trip() {
        let mut records = sweep(TheoremId::Sigma40, &SweepSpec::primes(3, 200)).unwrap();
        records.extend(sweep(TheoremId::Lerch, &SweepSpec::primes(2, 12)).unwrap());
        records.extend(sweep(TheoremId::PrimrootSplit, &SweepSpec::primes(3, 40)).unwrap());
        records.extend(sweep(TheoremId::VandermondeE, &SweepSpec::primes(3, 60)).unwrap());
        records.extend(sweep(TheoremId::NpParity, &SweepSpec::primes(3, 60)).unwrap());

        let mut csv_buf = Vec::new();
        write_csv(&mut csv_buf, &records).unwrap();
        assert_eq!(read_csv(csv_buf.as_slice()).unwrap(), records);

        let mut json_buf = Vec::new();
        write_json(&mut json_buf, &records).unwrap();
        assert_eq!(read_json(json_buf.as_slice()).unwrap(), records);
    }

    #[test]
    fn malformed_csv_names_line() {
        let text = format!(
            "{CSV_HEADER}\ntau-star,7,,,,,-1,-1,1,(2/p)=1,match\ntau-star,x,,,,,-1,-1,,,match\n"
        );
        let err = read_csv(text.as_bytes()).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(read_csv("nope\n".as_bytes()).is_err());
    }

    #[test]
    fn malformed_json_names_line() {
        let err = read_json("[\n{\"case\": 3}\n]".as_bytes()).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn table_has_one_line_per_record() {
        let records = sweep(TheoremId::TauStar, &SweepSpec::primes(3, 30)).unwrap();
        let mut buf = Vec::new();
        write_table(&mut buf, &records, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), records.len() + 1);
        assert!(!text.contains('\x1b'));
        let mut buf = Vec::new();
        write_table(&mut buf, &records, true).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("\x1b[32m"));
    }
}
