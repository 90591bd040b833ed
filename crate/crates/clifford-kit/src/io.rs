//! Plain-text formats for semigroups, metrics and oracles.
//!
//! Cayley tables: the first line holds the element count `n`, the next `n`
//! lines hold `n` whitespace-separated 0-based indices each, and an optional
//! trailing `# labels:` line carries `n` whitespace-free names. Metrics:
//! a `metric n` header followed by `n` lines of `n` rationals written `p/q`.
//! Oracles: an `oracle n` header (`n` the truncation) followed by an
//! `(n+1) × (n+1)` rational table over `0, 1/1, …, 1/n`.

use crate::error::Error;
use crate::metric::{MetricMatrix, MetricOracle, Ratio};
use crate::semigroup::FiniteSemigroup;
use crate::Result;

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a rational written as `p/q` or a bare integer.
pub fn parse_ratio(text: &str) -> std::result::Result<Ratio, String> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let p: i64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {text:?}"))?;
            let q: i64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {text:?}"))?;
            if q == 0 {
                return Err(format!("zero denominator in {text:?}"));
            }
            Ok(Ratio::new(p, q))
        }
        None => text
            .parse::<i64>()
            .map(Ratio::from_integer)
            .map_err(|_| format!("bad rational {text:?}")),
    }
}

/// Writes a rational as `p/q`, denominator always present.
pub fn format_ratio(r: Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the Cayley-table format, validating the result.
pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    let lines: Vec<&str> = text.lines().collect();
    let mut cursor = 0usize;
    let header = loop {
        match lines.get(cursor) {
            Some(l) if l.trim().is_empty() => cursor += 1,
            Some(l) => break l.trim(),
            None => return Err(parse_error(1, "missing size header")),
        }
    };
    let size: usize = header
        .parse()
        .map_err(|_| parse_error(cursor + 1, format!("expected the element count, got {header:?}")))?;

    let mut table = Vec::with_capacity(size);
    for row in 0..size {
        let line_no = cursor + 2 + row;
        let line = lines
            .get(cursor + 1 + row)
            .ok_or_else(|| parse_error(line_no, "missing table row"))?;
        let entries: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| parse_error(line_no, format!("bad index {tok:?}")))
            })
            .collect::<Result<_>>()?;
        if entries.len() != size {
            return Err(parse_error(
                line_no,
                format!("expected {size} entries, found {}", entries.len()),
            ));
        }
        table.push(entries);
    }

    let mut semigroup = FiniteSemigroup::from_table(table)?;
    for (offset, line) in lines[cursor + 1 + size..].iter().enumerate() {
        let line_no = cursor + 2 + size + offset;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let Some(rest) = trimmed.strip_prefix("# labels:") else {
            return Err(parse_error(
                line_no,
                format!("unexpected trailing content {trimmed:?}"),
            ));
        };
        let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
        if labels.len() != size {
            return Err(parse_error(
                line_no,
                format!("expected {size} labels, found {}", labels.len()),
            ));
        }
        semigroup.set_labels(labels)?;
    }
    Ok(semigroup)
}

/// Serializes in the Cayley-table format; labels are emitted when present
/// and are whitespace-free by construction everywhere in this crate.
pub fn serialize_semigroup(s: &FiniteSemigroup) -> String {
    let mut out = String::new();
    out.push_str(&s.size().to_string());
    out.push('\n');
    for row in s.table() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        debug_assert!(labels.iter().all(|l| !l.chars().any(char::is_whitespace)));
        out.push_str("# labels: ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

fn parse_rational_block(
    lines: &[&str],
    first_line_no: usize,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<Ratio>>> {
    let mut out = Vec::with_capacity(rows);
    for row in 0..rows {
        let line_no = first_line_no + row;
        let line = lines
            .get(row)
            .ok_or_else(|| parse_error(line_no, "missing matrix row"))?;
        let entries: Vec<Ratio> = line
            .split_whitespace()
            .map(|tok| parse_ratio(tok).map_err(|msg| parse_error(line_no, msg)))
            .collect::<Result<_>>()?;
        if entries.len() != cols {
            return Err(parse_error(
                line_no,
                format!("expected {cols} rationals, found {}", entries.len()),
            ));
        }
        out.push(entries);
    }
    Ok(out)
}

/// Parses the `metric n` format into a raw distance table; pair it with a
/// base semigroup through [`MetricMatrix::new`] to validate the axioms.
pub fn parse_metric(text: &str) -> Result<Vec<Vec<Ratio>>> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let header = lines
        .first()
        .ok_or_else(|| parse_error(1, "missing `metric n` header"))?;
    let size: usize = header
        .trim()
        .strip_prefix("metric")
        .map(str::trim)
        .and_then(|rest| rest.parse().ok())
        .ok_or_else(|| parse_error(1, format!("expected `metric n`, got {header:?}")))?;
    parse_rational_block(&lines[1..], 2, size, size)
}

pub fn serialize_metric(m: &MetricMatrix) -> String {
    let mut out = format!("metric {}\n", m.base().size());
    for row in m.entries() {
        let cells: Vec<String> = row.iter().map(|&r| format_ratio(r)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the `oracle n` format; the table is validated as a metric on the
/// truncated carrier.
pub fn parse_oracle(text: &str) -> Result<MetricOracle> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let header = lines
        .first()
        .ok_or_else(|| parse_error(1, "missing `oracle n` header"))?;
    let truncation: usize = header
        .trim()
        .strip_prefix("oracle")
        .map(str::trim)
        .and_then(|rest| rest.parse().ok())
        .ok_or_else(|| parse_error(1, format!("expected `oracle n`, got {header:?}")))?;
    let table = parse_rational_block(&lines[1..], 2, truncation + 1, truncation + 1)?;
    MetricOracle::table(table)
}
