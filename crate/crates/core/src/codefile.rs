//! Plain-text code files:
//!
//! ```text
//! ring: GF(3)
//! k: 2 n: 2
//! 1 0
//! 0 1
//! ```
//!
//! followed by `k` rows of `n` elements in the ring's element notation.

use crate::error::{Error, Result};
use crate::module::Word;
use crate::ring::{build_ring_with_cap, FiniteRing};
use crate::spec::RingSpec;

#[derive(Clone, Debug)]
pub struct CodeFile {
    pub ring: FiniteRing,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Word>,
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn keyed<'a>(line: &'a str, key: &str, lineno: usize, col: usize) -> Result<&'a str> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(':'))
        .ok_or_else(|| Error::parse(lineno, col, format!("expected `{key}:`")))
}

fn count(tok: Option<&(usize, &str)>, line: usize, end: usize, what: &str) -> Result<usize> {
    let &(col, s) = tok.ok_or_else(|| Error::parse(line, end, format!("missing value for {what}")))?;
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::parse(line, col, format!("{what} must be a positive integer, got `{s}`"))),
    }
}

pub fn parse_code_file(text: &str, order_cap: usize) -> Result<CodeFile> {
    let mut it = lines(text);
    let (l1, ring_line) = it.next().ok_or_else(|| Error::parse(1, 1, "empty code file"))?;
    let indent = ring_line.len() - ring_line.trim_start().len();
    let spec_text = keyed(ring_line.trim_start(), "ring", l1, indent + 1)?;
    let offset = ring_line.len() - spec_text.len();
    let lead = spec_text.len() - spec_text.trim_start().len();
    let spec: RingSpec = spec_text.trim().parse().map_err(|e| match e {
        Error::Parse { column, message, .. } => Error::parse(l1, offset + lead + column, message),
        other => other,
    })?;
    let ring = build_ring_with_cap(&spec, order_cap)?;

    let (l2, dims) = it.next().ok_or_else(|| Error::parse(l1 + 1, 1, "missing `k: <int> n: <int>` line"))?;
    // accept `k: 2 n: 3` as well as `k:2 n:3`
    let toks: Vec<(usize, &str)> = tokens(dims)
        .into_iter()
        .flat_map(|(col, t)| match t.find(':') {
            Some(i) if i + 1 < t.len() => vec![(col, &t[..=i]), (col + i + 1, &t[i + 1..])],
            _ => vec![(col, t)],
        })
        .collect();
    let col_of = |i: usize| toks.get(i).map(|t| t.0).unwrap_or(dims.len() + 1);
    if toks.first().map(|t| t.1) != Some("k:") {
        return Err(Error::parse(l2, col_of(0).min(dims.len() + 1), "expected `k:`"));
    }
    let k = count(toks.get(1), l2, dims.len() + 1, "k")?;
    if toks.get(2).map(|t| t.1) != Some("n:") {
        return Err(Error::parse(l2, col_of(2), "expected `n:`"));
    }
    let n = count(toks.get(3), l2, dims.len() + 1, "n")?;
    if let Some(&(col, _)) = toks.get(4) {
        return Err(Error::parse(l2, col, "unexpected text after n"));
    }

    let mut rows = Vec::with_capacity(k);
    let mut last = l2;
    for (lineno, line) in it.by_ref() {
        last = lineno;
        if rows.len() == k {
            return Err(Error::parse(lineno, 1, format!("expected {k} rows, found more")));
        }
        let toks = tokens(line);
        if toks.len() != n {
            let col = toks.get(n).map(|t| t.0).unwrap_or(line.len() + 1);
            return Err(Error::parse(lineno, col, format!("expected {n} entries, found {}", toks.len())));
        }
        let row = toks
            .iter()
            .map(|&(col, t)| ring.parse_elem(t).map_err(|m| Error::parse(lineno, col, m)))
            .collect::<Result<Word>>()?;
        rows.push(row);
    }
    if rows.len() != k {
        return Err(Error::parse(last + 1, 1, format!("expected {k} rows, found {}", rows.len())));
    }
    Ok(CodeFile { ring, k, n, rows })
}

/// The inverse of [`parse_code_file`].
pub fn write_code_file(ring: &FiniteRing, rows: &[Word]) -> String {
    let mut s = format!("ring: {}\n", ring.spec());
    let n = rows.first().map_or(0, Vec::len);
    s.push_str(&format!("k: {} n: {n}\n", rows.len()));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|&x| ring.format_elem(x)).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_ORDER_CAP;

    fn parse(s: &str) -> Result<CodeFile> {
        parse_code_file(s, DEFAULT_ORDER_CAP)
    }

    fn position(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("not a parse error: {other:?}"),
        }
    }

    #[test]
    fn identity_file() {
        let f = parse("ring: GF(3)\nk: 2 n: 2\n1 0\n0 1\n").unwrap();
        assert_eq!((f.k, f.n), (2, 2));
        assert_eq!(f.rows, vec![vec![1, 0], vec![0, 1]]);
        let back = parse(&write_code_file(&f.ring, &f.rows)).unwrap();
        assert_eq!(back.rows, f.rows);
    }

    #[test]
    fn structured_elements() {
        let f = parse("ring: prod(Z2,Z3)\nk:1 n:2\n(1,2) (0,1)\n").unwrap();
        assert_eq!(f.ring.format_elem(f.rows[0][0]), "(1,2)");
        let f = parse("ring: M2(GF(2))\nk: 1 n: 1\n[1,0;0,1]\n").unwrap();
        assert_eq!(f.rows[0][0], f.ring.one());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(position(parse("ring: Z4\nk: 1 n: 2\n1 x\n").unwrap_err()), (3, 3));
        assert_eq!(position(parse("ring: Z4\nk: 1 n: 2\n1\n").unwrap_err()), (3, 2));
        assert_eq!(position(parse("ring: Q7\nk: 1 n: 1\n1\n").unwrap_err()).0, 1);
        assert_eq!(position(parse("ring: Z4\nk: 0 n: 2\n").unwrap_err()), (2, 4));
        assert_eq!(position(parse("ring: Z4\nk: 2 n: 1\n1\n").unwrap_err()), (4, 1));
        assert_eq!(position(parse("rings: Z4\n").unwrap_err()), (1, 1));
        assert_eq!(position(parse("").unwrap_err()), (1, 1));
    }

    #[test]
    fn reducible_polynomial_is_not_a_parse_error() {
        let e = parse("ring: GF(2^2,poly=1,0,1)\nk: 1 n: 1\n1\n").unwrap_err();
        assert!(matches!(e, Error::Reducible { .. }), "{e:?}");
    }
}
