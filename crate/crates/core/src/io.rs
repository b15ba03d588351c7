//! Line-based text formats: `complex v1` for complexes, `chain1 v1` for 1-chains.
//!
//! ```text
//! complex v1
//! # comments run to end of line
//! vertex v
//! edge e v v
//! face f +e +e
//! ```

use std::fmt::Write as _;

use crate::chain::{Chain, Ring};
use crate::complex::{parse_signed_token, validate, RawComplex, TwoComplex};
use crate::error::{Error, Result};
use crate::number::{format_rational, parse_rational, Rational};

/// Splits off a trailing comment. A `#` only opens a comment at the start of a
/// line or after whitespace, so ids may still contain `#`.
pub(crate) fn strip_comment(line: &str) -> (&str, Option<&str>) {
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()) {
            return (&line[..i], Some(line[i + 1..].trim()));
        }
    }
    (line, None)
}

/// Non-blank content lines with their 1-based line numbers; full-line comments
/// are collected separately.
fn content_lines(text: &str) -> (Vec<(usize, Vec<&str>)>, Vec<String>) {
    let mut lines = Vec::new();
    let mut comments = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let (body, comment) = strip_comment(raw);
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            if let Some(c) = comment {
                comments.push(c.to_string());
            }
            continue;
        }
        lines.push((i + 1, tokens));
    }
    (lines, comments)
}

pub fn parse_raw_complex(text: &str) -> Result<RawComplex> {
    let (lines, comments) = content_lines(text);
    let mut iter = lines.into_iter();
    match iter.next() {
        Some((_, t)) if t == ["complex", "v1"] => {}
        Some((n, _)) => return Err(Error::parse(n, "expected header `complex v1`")),
        None => return Err(Error::parse(1, "empty input")),
    }
    let mut raw = RawComplex::new();
    raw.comments = comments;
    for (n, t) in iter {
        match t[0] {
            "vertex" if t.len() == 2 => {
                raw.vertex(t[1]);
            }
            "edge" if t.len() == 4 => {
                raw.edge(t[1], t[2], t[3]);
            }
            "face" if t.len() >= 3 => {
                let walk = t[2..]
                    .iter()
                    .map(|tok| {
                        parse_signed_token(tok).ok_or_else(|| {
                            Error::parse(n, format!("walk entry `{tok}` needs a +/- prefix"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                raw.face_signed(t[1], walk);
            }
            other => return Err(Error::parse(n, format!("malformed `{other}` line"))),
        }
    }
    Ok(raw)
}

pub fn parse_complex(text: &str) -> Result<TwoComplex> {
    validate(&parse_raw_complex(text)?)
}

pub fn write_complex(complex: &TwoComplex) -> String {
    write_raw_complex(&complex.to_raw())
}

pub fn write_raw_complex(raw: &RawComplex) -> String {
    let mut out = String::from("complex v1\n");
    for c in &raw.comments {
        let _ = writeln!(out, "# {c}");
    }
    for v in &raw.vertices {
        let _ = writeln!(out, "vertex {v}");
    }
    for (id, t, h) in &raw.edges {
        let _ = writeln!(out, "edge {id} {t} {h}");
    }
    for (id, walk) in &raw.faces {
        let _ = write!(out, "face {id}");
        for (s, e) in walk {
            let _ = write!(out, " {}{e}", s.symbol());
        }
        out.push('\n');
    }
    out
}

/// A 1-chain as written in a `chain1 v1` file, before resolution against a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFile {
    pub ring: Ring,
    pub terms: Vec<(Rational, String)>,
}

impl ChainFile {
    pub fn resolve(&self, complex: &TwoComplex) -> Result<Chain> {
        let terms: Vec<(Rational, &str)> = self
            .terms
            .iter()
            .map(|(c, n)| (c.clone(), n.as_str()))
            .collect();
        complex.chain_from_names(1, self.ring, &terms)
    }

    pub fn from_chain(complex: &TwoComplex, chain: &Chain) -> ChainFile {
        ChainFile {
            ring: chain.ring(),
            terms: chain
                .terms()
                .iter()
                .map(|(&e, c)| (c.clone(), complex.edge(e).id.clone()))
                .collect(),
        }
    }
}

pub fn parse_chain(text: &str) -> Result<ChainFile> {
    let (lines, _) = content_lines(text);
    let mut iter = lines.into_iter();
    let ring = match iter.next() {
        Some((_, t)) if t.len() == 3 && t[0] == "chain1" && t[1] == "v1" => match t[2] {
            "INT" => Ring::Int,
            "RAT" => Ring::Rat,
            other => return Err(Error::parse(1, format!("unknown ring `{other}`"))),
        },
        Some((n, _)) => return Err(Error::parse(n, "expected header `chain1 v1 <INT|RAT>`")),
        None => return Err(Error::parse(1, "empty input")),
    };
    let mut terms = Vec::new();
    for (n, t) in iter {
        if t.len() != 2 {
            return Err(Error::parse(n, "expected `<coefficient> <edge-id>`"));
        }
        let c = parse_rational(t[0])
            .ok_or_else(|| Error::parse(n, format!("bad coefficient `{}`", t[0])))?;
        if ring == Ring::Int && !c.is_integer() {
            return Err(Error::parse(n, "INT chain with a non-integral coefficient"));
        }
        terms.push((c, t[1].to_string()));
    }
    Ok(ChainFile { ring, terms })
}

pub fn write_chain(file: &ChainFile) -> String {
    let mut out = format!("chain1 v1 {}\n", file.ring.tag());
    for (c, e) in &file.terms {
        let _ = writeln!(out, "{} {e}", format_rational(c));
    }
    out
}
