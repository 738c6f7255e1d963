//! Text formats: the arrangement file grammar and the certificate replay
//! format.
//!
//! An arrangement file holds a field header and one record per line:
//!
//! ```text
//! # a comment
//! field d = -3
//! 1 0 0 0 0 0
//! 0 0 1 0 -1/2 1/2
//! ```
//!
//! Six rationals `a0 b0 a1 b1 a2 b2` mean the line
//! `(a0 + b0 s(d)) x + (a1 + b1 s(d)) y + (a2 + b2 s(d)) z = 0`.
//! A pure-rational file starts with `field rational` instead. `#` starts a
//! comment; blank lines are ignored. Parsing canonicalizes, so a serialize
//! and parse round trip is exact.
//!
//! A chain certificate file uses the same header, then one move per record:
//! `+` or `-`, the line's six rationals, and the claimed exponents after
//! the move:
//!
//! ```text
//! field d = -3
//! + 1 0 0 0 0 0 0 0
//! - 0 1 0 0 0 0 4 4
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::{FieldContext, NumError, QuadScalar, Rational};
use crate::freeness::ExponentTriple;
use crate::geometry::{Arrangement, GeomError, HomogeneousTriple};
use crate::search::{ChainCertificate, ChainStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate arrangement line")]
    DuplicateLine { line: usize },
    #[error("line {line}: bad discriminant: {source}")]
    BadDiscriminant { line: usize, source: NumError },
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, col, msg: msg.into() }
}

/// Parses `p/q` or `p` with an optional sign.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let (numer, denom) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let n: BigInt = numer
        .parse()
        .map_err(|_| format!("`{numer}` is not an integer"))?;
    let d: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| format!("`{d}` is not an integer"))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(n, d))
}

/// A token plus its 1-based starting column.
fn tokens_with_cols(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, ch)) in text.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((s, c)) = start.take() {
                out.push((c, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some((i, col + 1));
        }
    }
    if let Some((s, c)) = start {
        out.push((c, &text[s..]));
    }
    out
}

struct Lines<'a> {
    // (1-based line number, content with comments stripped)
    items: Vec<(usize, &'a str)>,
}

fn content_lines(text: &str) -> Lines<'_> {
    let items = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            (i + 1, stripped)
        })
        .filter(|(_, s)| !s.trim().is_empty())
        .collect();
    Lines { items }
}

type HeaderAndRecords<'a> = (FieldContext, &'a [(usize, &'a str)]);

/// Parses the `field rational` / `field d = <int>` header, returning the
/// context and the remaining records.
fn parse_header<'a>(lines: &'a Lines<'a>) -> Result<HeaderAndRecords<'a>, FormatError> {
    let Some(&(lineno, header)) = lines.items.first() else {
        return Err(syntax(1, 1, "empty input: expected a `field` header"));
    };
    let toks = tokens_with_cols(header);
    match toks.as_slice() {
        [(_, "field"), (_, "rational")] => Ok((FieldContext::rational(), &lines.items[1..])),
        [(_, "field"), (_, "d"), (_, "="), (col, dtok)] => {
            let d: i64 = dtok
                .parse()
                .map_err(|_| syntax(lineno, *col, format!("`{dtok}` is not an integer")))?;
            let ctx = FieldContext::quadratic(d)
                .map_err(|source| FormatError::BadDiscriminant { line: lineno, source })?;
            Ok((ctx, &lines.items[1..]))
        }
        _ => Err(syntax(
            lineno,
            toks.first().map_or(1, |(c, _)| *c),
            "expected `field rational` or `field d = <int>`",
        )),
    }
}

/// Reads six rationals starting at token `from`, building one coefficient
/// triple in `ctx`.
fn parse_line_record(
    ctx: FieldContext,
    lineno: usize,
    toks: &[(usize, &str)],
) -> Result<HomogeneousTriple, FormatError> {
    if toks.len() != 6 {
        let col = toks.last().map_or(1, |(c, t)| c + t.len());
        return Err(syntax(
            lineno,
            col,
            format!("expected six rationals per record, found {}", toks.len()),
        ));
    }
    let mut parts = Vec::with_capacity(6);
    for (col, tok) in toks {
        let r = parse_rational(tok).map_err(|msg| syntax(lineno, *col, msg))?;
        parts.push((*col, r));
    }
    let mut coords = Vec::with_capacity(3);
    for k in 0..3 {
        let (_, a) = parts[2 * k].clone();
        let (bcol, b) = parts[2 * k + 1].clone();
        let scalar = QuadScalar::new(ctx, a, b).map_err(|_| {
            syntax(lineno, bcol, "radical coefficient in a rational field")
        })?;
        coords.push(scalar);
    }
    let [c0, c1, c2]: [QuadScalar; 3] = coords.try_into().unwrap();
    HomogeneousTriple::new(c0, c1, c2)
        .map_err(|_| syntax(lineno, 1, "all six coefficients are zero"))
}

/// Parses an arrangement file; duplicate lines (after canonical
/// normalization) are rejected.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, FormatError> {
    let lines = content_lines(text);
    let (ctx, records) = parse_header(&lines)?;
    let mut parsed: Vec<HomogeneousTriple> = Vec::with_capacity(records.len());
    for &(lineno, record) in records {
        let triple = parse_line_record(ctx, lineno, &tokens_with_cols(record))?;
        if parsed.contains(&triple) {
            return Err(FormatError::DuplicateLine { line: lineno });
        }
        parsed.push(triple);
    }
    Ok(Arrangement::new(ctx, parsed)?)
}

fn header_string(ctx: FieldContext) -> String {
    match ctx.discriminant() {
        None => "field rational".to_string(),
        Some(d) => format!("field d = {d}"),
    }
}

fn record_string(line: &HomogeneousTriple) -> String {
    line.coords()
        .iter()
        .flat_map(|c| [c.rational_part().to_string(), c.radical_part().to_string()])
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serializes an arrangement in the file grammar; output is canonical.
pub fn serialize_arrangement(arr: &Arrangement) -> String {
    let mut out = String::new();
    out.push_str(&header_string(arr.context()));
    out.push('\n');
    for line in arr.lines() {
        out.push_str(&record_string(line));
        out.push('\n');
    }
    out
}

/// Parses a chain certificate file: header, then `+`/`-` move records each
/// carrying six rationals and the claimed exponent pair.
pub fn parse_chain(text: &str) -> Result<ChainCertificate, FormatError> {
    let lines = content_lines(text);
    let (ctx, records) = parse_header(&lines)?;
    let mut steps = Vec::with_capacity(records.len());
    for &(lineno, record) in records {
        let toks = tokens_with_cols(record);
        let Some(&(sign_col, sign)) = toks.first() else {
            continue;
        };
        let add = match sign {
            "+" => true,
            "-" => false,
            other => {
                return Err(syntax(
                    lineno,
                    sign_col,
                    format!("expected `+` or `-`, found `{other}`"),
                ))
            }
        };
        if toks.len() != 9 {
            return Err(syntax(
                lineno,
                sign_col,
                format!(
                    "expected sign, six rationals and two exponents, found {} tokens",
                    toks.len()
                ),
            ));
        }
        let line = parse_line_record(ctx, lineno, &toks[1..7])?;
        let mut exps = [0usize; 2];
        for (k, (col, tok)) in toks[7..9].iter().enumerate() {
            exps[k] = tok
                .parse()
                .map_err(|_| syntax(lineno, *col, format!("`{tok}` is not a nonnegative integer")))?;
        }
        steps.push(ChainStep {
            line,
            add,
            exponents_after: ExponentTriple::new(exps[0], exps[1]),
        });
    }
    Ok(ChainCertificate { ctx, steps })
}

/// Serializes a chain certificate in the replay format.
pub fn serialize_chain(cert: &ChainCertificate) -> String {
    let mut out = String::new();
    out.push_str(&header_string(cert.ctx));
    out.push('\n');
    for step in &cert.steps {
        out.push_str(if step.add { "+ " } else { "- " });
        out.push_str(&record_string(&step.line));
        out.push_str(&format!(
            " {} {}\n",
            step.exponents_after.a, step.exponents_after.b
        ));
    }
    out
}
