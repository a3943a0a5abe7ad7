//! The `rdg v1` text format.
//!
//! ```text
//! rdg v1
//! n <N>
//! row <z_rank> <tail_col> <head_col> <+|->
//! ```
//!
//! Rows appear in ascending z-rank, lines end with LF, no trailing
//! whitespace. `serialize` emits exactly this shape, so parse ∘ serialize and
//! serialize ∘ parse are identities on their domains.

use crate::diagram::{validate, HorizArc, RawDiagram, RectDiagram, Sweep, ValidationReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("diagram violates arc-presentation axioms: {0}")]
    Invalid(ValidationReport),
}

/// Canonical serialization: rows ascending by z-rank.
pub fn serialize(d: &RectDiagram) -> String {
    let mut out = String::with_capacity(16 + d.n() * 16);
    out.push_str("rdg v1\n");
    out.push_str(&format!("n {}\n", d.n()));
    for a in d.rows() {
        out.push_str(&format!(
            "row {} {} {} {}\n",
            a.z_rank, a.tail_col, a.head_col, a.sweep
        ));
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, field: &str, tok: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected integer {field}, got {tok:?}")))
}

/// Strict parser for the grammar above. Syntax problems are reported with
/// their line number; axiom violations are surfaced by number.
pub fn parse(text: &str) -> Result<RectDiagram, ParseError> {
    let mut lines = text.split('\n').enumerate();

    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    if header != "rdg v1" {
        return Err(syntax(
            1,
            format!("unknown header {header:?}, expected \"rdg v1\""),
        ));
    }

    let (i, nline) = lines
        .next()
        .ok_or_else(|| syntax(2, "missing \"n <N>\" line"))?;
    let n = match nline.strip_prefix("n ") {
        Some(rest) if !rest.contains(' ') && !rest.is_empty() => parse_usize(i + 1, "n", rest)?,
        _ => return Err(syntax(i + 1, format!("expected \"n <N>\", got {nline:?}"))),
    };
    if n == 0 {
        return Err(syntax(i + 1, "n must be positive"));
    }

    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (i, line) = lines.next().ok_or_else(|| {
            syntax(
                rows.len() + 3,
                format!("expected {n} row lines, got {}", rows.len()),
            )
        })?;
        let lineno = i + 1;
        let toks: Vec<&str> = line.split(' ').collect();
        if toks.len() != 5 || toks[0] != "row" {
            return Err(syntax(
                lineno,
                format!("expected \"row <z> <tail> <head> <+|->\", got {line:?}"),
            ));
        }
        let z_rank = parse_usize(lineno, "z_rank", toks[1])?;
        let tail_col = parse_usize(lineno, "tail_col", toks[2])?;
        let head_col = parse_usize(lineno, "head_col", toks[3])?;
        let sweep = match toks[4] {
            "+" => Sweep::Plus,
            "-" => Sweep::Minus,
            other => {
                return Err(syntax(
                    lineno,
                    format!("expected sweep + or -, got {other:?}"),
                ))
            }
        };
        rows.push(HorizArc {
            z_rank,
            tail_col,
            head_col,
            sweep,
        });
    }

    for (i, rest) in lines {
        if !rest.is_empty() {
            return Err(syntax(
                i + 1,
                format!("unexpected trailing content {rest:?}"),
            ));
        }
    }

    let raw = RawDiagram { rows: rows.clone() };
    let report = validate(&raw);
    if !report.is_ok() {
        return Err(ParseError::Invalid(report));
    }

    // Ordering is part of the grammar; duplicates were already caught above.
    for w in rows.windows(2) {
        if w[0].z_rank > w[1].z_rank {
            return Err(syntax(0, "rows are not in ascending z_rank order"));
        }
    }

    Ok(RectDiagram::from_rows(rows).expect("validated above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_unknot_braided, gen_unknot_rect};

    #[test]
    fn serialize_e1_has_four_lines() {
        let text = serialize(&gen_unknot_rect());
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text, "rdg v1\nn 2\nrow 1 1 2 +\nrow 2 2 1 -\n");
    }

    #[test]
    fn roundtrip_both_unknots() {
        for d in [gen_unknot_rect(), gen_unknot_braided()] {
            assert_eq!(parse(&serialize(&d)).unwrap(), d);
        }
    }

    #[test]
    fn duplicate_z_rank_reports_axiom_4() {
        let text = "rdg v1\nn 2\nrow 1 1 2 +\nrow 1 2 1 -\n";
        match parse(text) {
            Err(ParseError::Invalid(report)) => {
                assert!(report.violations.iter().any(|v| v.axiom == "4"))
            }
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn unknown_version_rejected() {
        assert!(matches!(
            parse("rdg v2\nn 1\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "rdg v1\nn 2\nrow 1 1 2 +\nrow 2 2 x -\n";
        match parse(text) {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
