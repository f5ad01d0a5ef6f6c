//! Matrix text files, digraph6, Graphviz dot and JSON report documents.
//!
//! Matrix file layout:
//!
//! ```text
//! # optional comments and blank lines
//! 3 binary
//! 0 1 0
//! 0 0 1
//! 1 0 0
//! ```
//!
//! The alphabet tag is `binary` (entries 0/1) or `signed` (entries −1/0/1).

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Digraph, IntMatrix};
use crate::verify::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alphabet {
    Binary,
    Signed,
}

impl Alphabet {
    fn tag(self) -> &'static str {
        match self {
            Alphabet::Binary => "binary",
            Alphabet::Signed => "signed",
        }
    }

    fn admits(self, x: i64) -> bool {
        match self {
            Alphabet::Binary => x == 0 || x == 1,
            Alphabet::Signed => (-1..=1).contains(&x),
        }
    }

    /// The narrowest alphabet holding every entry of `m`.
    pub fn of(m: &IntMatrix) -> Result<Self> {
        if m.is_binary() {
            Ok(Alphabet::Binary)
        } else if m.is_signed() {
            Ok(Alphabet::Signed)
        } else {
            Err(Error::InvalidArgument(
                "entries outside {-1, 0, 1} have no file alphabet".into(),
            ))
        }
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Lines with content, as `(1-based line number, tokens with 1-based columns)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((body[..s].chars().count() + 1, &body[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_matrix(text: &str) -> Result<(IntMatrix, Alphabet)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing header `<n> <binary|signed>`"))?;
    if header.len() != 2 {
        return Err(parse_error(hline, 1, "header must be `<n> <binary|signed>`"));
    }
    let n: usize = header[0]
        .1
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| parse_error(hline, header[0].0, "order must be a positive integer"))?;
    let alphabet = match header[1].1 {
        "binary" => Alphabet::Binary,
        "signed" => Alphabet::Signed,
        other => {
            return Err(parse_error(
                hline,
                header[1].0,
                format!("unknown alphabet `{other}`"),
            ))
        }
    };
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, tokens) in lines {
        if rows == n {
            return Err(parse_error(line, tokens[0].0, format!("more than {n} rows")));
        }
        if tokens.len() != n {
            let column = tokens.get(n).map_or(tokens.last().map_or(1, |t| t.0), |t| t.0);
            return Err(parse_error(
                line,
                column,
                format!("expected {n} entries, found {}", tokens.len()),
            ));
        }
        for (column, token) in tokens {
            let x: i64 = token
                .parse()
                .map_err(|_| parse_error(line, column, format!("`{token}` is not an integer")))?;
            if !alphabet.admits(x) {
                return Err(parse_error(
                    line,
                    column,
                    format!("{x} is not a {} entry", alphabet.tag()),
                ));
            }
            entries.push(x);
        }
        rows += 1;
    }
    if rows != n {
        return Err(parse_error(
            text.lines().count().max(1),
            1,
            format!("expected {n} rows, found {rows}"),
        ));
    }
    Ok((IntMatrix::new(n, entries)?, alphabet))
}

pub fn format_matrix(m: &IntMatrix) -> Result<String> {
    let alphabet = Alphabet::of(m)?;
    let mut out = format!("{} {}\n", m.order(), alphabet.tag());
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<IntMatrix> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_matrix(&text)?.0)
}

pub fn write_matrix(m: &IntMatrix, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_matrix(m)?)?;
    Ok(())
}

/// Largest order the two-size digraph6 header can hold.
pub const DIGRAPH6_MAX_ORDER: usize = 258_047;

pub fn encode_digraph6(d: &Digraph) -> Result<String> {
    if d.has_loops() {
        return Err(Error::InvalidArgument("digraph6 export does not take loops".into()));
    }
    let n = d.order();
    if n > DIGRAPH6_MAX_ORDER {
        return Err(Error::SizeBound(format!(
            "digraph6 supports n <= {DIGRAPH6_MAX_ORDER}, got {n}"
        )));
    }
    let mut out = String::from("&");
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let bits = d.adjacency().entries();
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            v |= (b as u8) << (5 - i);
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

pub fn decode_digraph6(text: &str) -> Result<Digraph> {
    let bytes = text.trim_end().as_bytes();
    let err = |column: usize, message: &str| parse_error(1, column, message);
    if bytes.first() != Some(&b'&') {
        return Err(err(1, "digraph6 must start with `&`"));
    }
    if let Some(pos) = bytes[1..].iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(err(pos + 2, "byte outside the printable digraph6 range"));
    }
    let (n, body_start) = match bytes.get(1) {
        None => return Err(err(2, "missing order")),
        Some(&126) => {
            if bytes.get(2) == Some(&126) {
                return Err(err(3, "orders above 258047 are not supported"));
            }
            if bytes.len() < 5 {
                return Err(err(bytes.len() + 1, "truncated order"));
            }
            let n = bytes[2..5]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 5)
        }
        Some(&b) => ((b - 63) as usize, 2),
    };
    if n == 0 {
        return Err(err(2, "order must be positive"));
    }
    let body = &bytes[body_start..];
    let need = (n * n).div_ceil(6);
    if body.len() != need {
        return Err(err(
            body_start + 1,
            &format!("expected {need} data bytes, found {}", body.len()),
        ));
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n * n {
        let byte = body[i / 6] - 63;
        entries.push(i64::from((byte >> (5 - i % 6)) & 1));
    }
    let m = IntMatrix::new(n, entries)?;
    if m.diagonal().iter().any(|&x| x != 0) {
        return Err(err(body_start + 1, "loops are not supported"));
    }
    Digraph::simple(m)
}

pub fn to_dot(d: &Digraph) -> String {
    let n = d.order();
    let mut out = String::from("digraph D {\n");
    for v in 0..n {
        let _ = writeln!(out, "  {v};");
    }
    for u in 0..n {
        for v in 0..n {
            if d.has_arc(u, v) {
                let _ = writeln!(out, "  {u} -> {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    Matrix01,
    Digraph6,
    Dot,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix01" => Ok(Self::Matrix01),
            "digraph6" => Ok(Self::Digraph6),
            "dot" => Ok(Self::Dot),
            other => Err(Error::InvalidArgument(format!("unknown format `{other}`"))),
        }
    }
}

pub fn export(d: &Digraph, format: ExportFormat) -> Result<Vec<u8>> {
    Ok(match format {
        ExportFormat::Matrix01 => format_matrix(d.adjacency())?.into_bytes(),
        ExportFormat::Digraph6 => {
            let mut s = encode_digraph6(d)?;
            s.push('\n');
            s.into_bytes()
        }
        ExportFormat::Dot => to_dot(d).into_bytes(),
    })
}

/// Digraph from a matrix01 or digraph6 file, chosen by the leading `&`.
pub fn read_digraph(path: impl AsRef<Path>) -> Result<Digraph> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('&') {
        decode_digraph6(text.trim())
    } else {
        Digraph::from_matrix(parse_matrix(&text)?.0)
    }
}

/// One class per content line, whitespace-separated 0-based vertices.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    content_lines(text)
        .map(|(line, tokens)| {
            tokens
                .into_iter()
                .map(|(column, token)| {
                    token.parse().map_err(|_| {
                        parse_error(line, column, format!("`{token}` is not a vertex index"))
                    })
                })
                .collect()
        })
        .collect()
}

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildFiles {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    #[serde(flatten)]
    pub report: VerificationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub children_files: Option<ChildFiles>,
}

/// JSON document written by `verify`: one entry per requested classifier,
/// or one per successful classifier when none was requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: u32,
    pub source: Option<String>,
    pub verified: bool,
    pub reports: Vec<ReportEntry>,
}

impl ReportDocument {
    pub fn new(source: Option<String>, reports: Vec<VerificationReport>) -> Self {
        let verified = !reports.is_empty() && reports.iter().all(|r| r.is_member());
        Self {
            version: REPORT_VERSION,
            source,
            verified,
            reports: reports
                .into_iter()
                .map(|report| ReportEntry {
                    report,
                    children_files: None,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::circulant;
    use crate::verify::{
        Classification, DezaParams, Fraction, Params, ProductStatistic, TypeIIParams,
    };
    use proptest::prelude::*;

    #[test]
    fn matrix_round_trip_with_comments() {
        let text = "# cycle\n\n3 binary\n0 1 0  # row 0\n0 0 1\n1 0 0\n";
        let (m, alphabet) = parse_matrix(text).unwrap();
        assert_eq!(alphabet, Alphabet::Binary);
        assert_eq!(m, circulant(&[0, 1, 0]).unwrap());
        assert_eq!(parse_matrix(&format_matrix(&m).unwrap()).unwrap().0, m);
        let signed = m.sub(&m.transpose()).unwrap();
        let text = format_matrix(&signed).unwrap();
        assert!(text.starts_with("3 signed\n"));
        assert_eq!(parse_matrix(&text).unwrap().0, signed);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_matrix("2 binary\n0 1\n1 0 1\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse { line: 3, column: 5, message: "expected 2 entries, found 3".into() }
        );
        let e = parse_matrix("2 binary\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 3, .. }));
        let e = parse_matrix("2 binary\n0 -1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(parse_matrix("2 ternary\n"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse_matrix("2 binary\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn digraph6_known_encodings() {
        let empty = Digraph::simple(IntMatrix::zeros(5)).unwrap();
        // 25 zero bits fill five data bytes
        assert_eq!(encode_digraph6(&empty).unwrap(), "&D?????");
        let c3 = Digraph::simple(circulant(&[0, 1, 0]).unwrap()).unwrap();
        // bits 010 001 100 -> 010001 100000
        assert_eq!(encode_digraph6(&c3).unwrap(), "&BP_");
        assert_eq!(decode_digraph6("&BP_").unwrap(), c3);
        let looped = Digraph::new(IntMatrix::identity(2), true).unwrap();
        assert!(encode_digraph6(&looped).is_err());
        assert!(decode_digraph6("&A_").is_err());
        assert!(decode_digraph6("BP_").is_err());
        assert!(decode_digraph6("&BP").is_err());
    }

    #[test]
    fn digraph6_long_header() {
        let n = 70;
        let d = Digraph::simple(circulant(&(0..n).map(|i| i64::from(i == 1)).collect::<Vec<_>>()).unwrap())
            .unwrap();
        let s = encode_digraph6(&d).unwrap();
        assert_eq!(&s.as_bytes()[..5], &[b'&', 126, 63, 64, 63 + 6]);
        assert_eq!(decode_digraph6(&s).unwrap(), d);
    }

    #[test]
    fn dot_lists_arcs_in_row_major_order() {
        let c3 = Digraph::simple(circulant(&[0, 1, 0]).unwrap()).unwrap();
        let dot = to_dot(&c3);
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        assert_eq!(edges, vec!["  0 -> 1;", "  1 -> 2;", "  2 -> 0;"]);
    }

    #[test]
    fn partition_files() {
        assert_eq!(
            parse_partition("0 1\n# comment\n2 3\n").unwrap(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert!(matches!(parse_partition("0 a\n"), Err(Error::Parse { line: 1, column: 3, .. })));
    }

    proptest! {
        #[test]
        fn digraph6_round_trip(n in 1usize..20, bits in proptest::collection::vec(any::<bool>(), 400)) {
            let m = IntMatrix::from_fn(n, |i, j| i64::from(i != j && bits[i * 20 + j]));
            let d = Digraph::simple(m).unwrap();
            prop_assert_eq!(decode_digraph6(&encode_digraph6(&d).unwrap()).unwrap(), d);
        }

        #[test]
        fn matrix_text_round_trip(n in 1usize..12, seed in proptest::collection::vec(-1i64..=1, 144)) {
            let m = IntMatrix::from_fn(n, |i, j| seed[i * 12 + j]);
            prop_assert_eq!(parse_matrix(&format_matrix(&m).unwrap()).unwrap().0, m);
        }

        #[test]
        fn report_document_round_trip(
            member in any::<bool>(),
            n in 1u64..200, k in 0u64..50, b in 0u64..50, a in 0u64..50, t in 0u64..50,
            alpha in proptest::option::of(0u64..100),
            num in -50i64..50, den in 1i64..9,
            type2 in any::<bool>(),
            witness in proptest::option::of("[a-z ]{0,12}"),
            values in proptest::collection::vec(-5i64..20, 0..4),
            files in any::<bool>(),
        ) {
            let mut report = if member {
                let params = if type2 {
                    Params::TypeII(TypeIIParams { n, k, b, a })
                } else {
                    Params::Deza(DezaParams::new(n, k, b, a, t))
                };
                VerificationReport::member(Classification::DezaDigraph, params)
            } else {
                VerificationReport::failure(witness.clone().unwrap_or_default())
            };
            report.alpha = alpha;
            report.alpha_formula = Some(Fraction { numerator: num, denominator: den });
            report.note = witness;
            report.statistics = vec![ProductStatistic {
                name: "gram".into(),
                diagonal: values.first().copied(),
                off_diagonal: values,
                commutes: Some(type2),
                matches: member,
            }];
            let mut doc = ReportDocument::new(Some("input.txt".into()), vec![report]);
            if files {
                doc.reports[0].children_files = Some(ChildFiles { x: "x.txt".into(), y: "y.txt".into() });
            }
            let back = ReportDocument::from_json(&doc.to_json()).unwrap();
            prop_assert_eq!(back, doc);
        }
    }
}
