//! Text formats for posets, maps, and normalization traces.
//!
//! ```text
//! poset V
//! elements: 0 a b
//! bottom: 0
//! covers: 0<a 0<b
//! ```
//!
//! ```text
//! map incl : 2 -> 3
//! 0 -> 0
//! 1 -> 2
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::sync::Arc;

use cpokit_core::poset::{validate, FinPoset, RawPoset};
use cpokit_core::quotient::QuotientChainTrace;
use cpokit_core::{Error as CoreError, FinCpoMap};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: CoreError,
    },
    #[error("unexpected end of input: expected {0}")]
    Eof(&'static str),
}

impl FormatError {
    /// Syntax errors are usage errors; `Invalid` means the text parsed but
    /// does not describe a valid object.
    pub fn is_syntax(&self) -> bool {
        !matches!(self, FormatError::Invalid { .. })
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn keyed<'a>(line: Option<(usize, &'a str)>, key: &'static str) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (n, l) = line.ok_or(FormatError::Eof(key))?;
    let rest = l.strip_prefix(key).ok_or_else(|| syntax(n, format!("expected `{key}`, found `{l}`")))?;
    Ok((n, rest.split_whitespace().collect()))
}

pub fn parse_poset(text: &str) -> Result<FinPoset, FormatError> {
    let mut lines = content_lines(text);
    let (l_name, name) = keyed(lines.next(), "poset")?;
    let [name] = name[..] else {
        return Err(syntax(l_name, "expected `poset <name>`"));
    };
    let (l_elems, elements) = keyed(lines.next(), "elements:")?;
    let (l_bottom, bottom) = keyed(lines.next(), "bottom:")?;
    let [bottom] = bottom[..] else {
        return Err(syntax(l_bottom, "expected exactly one bottom label"));
    };
    let (l_covers, cover_tokens) = keyed(lines.next(), "covers:")?;
    if let Some((n, l)) = lines.next() {
        return Err(syntax(n, format!("unexpected line `{l}`")));
    }
    let mut covers = Vec::with_capacity(cover_tokens.len());
    for tok in cover_tokens {
        match tok.split_once('<') {
            Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains('<') => covers.push((a.into(), b.into())),
            _ => return Err(syntax(l_covers, format!("malformed cover `{tok}`, expected `a<b`"))),
        }
    }
    let raw = RawPoset {
        name: name.into(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        bottom: bottom.into(),
        covers,
    };
    validate(&raw).map_err(|e| {
        let line = match &e {
            CoreError::DuplicateElement(_) => l_elems,
            CoreError::NoBottom { .. } => l_bottom,
            CoreError::UnknownElement(l) if *l == raw.bottom => l_bottom,
            CoreError::BoundTooLarge { .. } => l_elems,
            _ => l_covers,
        };
        FormatError::Invalid { line, source: e }
    })
}

pub fn write_poset(p: &FinPoset) -> String {
    write_poset_as(p, p.name())
}

/// Writes `p` under another name.
pub fn write_poset_as(p: &FinPoset, name: &str) -> String {
    let order = p.order();
    let mut out = String::new();
    let _ = writeln!(out, "poset {name}");
    let _ = writeln!(out, "elements: {}", p.labels().join(" "));
    let _ = writeln!(out, "bottom: {}", p.label(p.bottom()));
    out.push_str("covers:");
    for (a, b) in order.covers() {
        let _ = write!(out, " {}<{}", p.label(a), p.label(b));
    }
    out.push('\n');
    out
}

/// Map header: `(name, source name, target name)`.
pub fn map_header(text: &str) -> Result<(String, String, String), FormatError> {
    let (n, l) = content_lines(text).next().ok_or(FormatError::Eof("map"))?;
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["map", name, ":", src, "->", dst] => Ok((name.into(), src.into(), dst.into())),
        _ => Err(syntax(n, "expected `map <name> : <src> -> <dst>`")),
    }
}

/// Parses a map whose endpoints are looked up by name in `posets`.
pub fn parse_map(text: &str, posets: &[Arc<FinPoset>]) -> Result<(String, FinCpoMap), FormatError> {
    let mut lines = content_lines(text);
    let (l_head, _) = lines.next().ok_or(FormatError::Eof("map"))?;
    let (name, src_name, dst_name) = map_header(text)?;
    let find = |n: &str| {
        posets
            .iter()
            .find(|p| p.name() == n)
            .cloned()
            .ok_or_else(|| syntax(l_head, format!("no poset named `{n}` was supplied")))
    };
    let src = find(&src_name)?;
    let dst = find(&dst_name)?;
    let mut table = vec![None; src.len()];
    for (n, l) in lines {
        let (x, y) = match l.split_whitespace().collect::<Vec<_>>()[..] {
            [x, "->", y] => (x, y),
            _ => return Err(syntax(n, format!("expected `<src> -> <dst>`, found `{l}`"))),
        };
        let xi = src
            .index_of(x)
            .ok_or_else(|| FormatError::Invalid { line: n, source: CoreError::UnknownElement(x.into()) })?;
        let yi = dst
            .index_of(y)
            .ok_or_else(|| FormatError::Invalid { line: n, source: CoreError::UnknownElement(y.into()) })?;
        if table[xi].replace(yi).is_some() {
            return Err(syntax(n, format!("`{x}` is mapped twice")));
        }
    }
    let table = table
        .iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| syntax(l_head, format!("no image given for `{}`", src.label(x)))))
        .collect::<Result<Vec<_>, _>>()?;
    let map = FinCpoMap::new(src, dst, table).map_err(|e| FormatError::Invalid { line: l_head, source: e })?;
    Ok((name, map))
}

pub fn write_map(name: &str, f: &FinCpoMap) -> String {
    write_map_as(name, f, f.src().name(), f.dst().name())
}

/// Writes `f` with its endpoints under other names.
pub fn write_map_as(name: &str, f: &FinCpoMap, src: &str, dst: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "map {name} : {src} -> {dst}");
    for (x, &y) in f.table().iter().enumerate() {
        let _ = writeln!(out, "{} -> {}", f.src().label(x), f.dst().label(y));
    }
    out
}

/// Step records in the map format, then a `sizes:` line.
///
/// Stage objects are written as `A0`, `A1`, ..., the target of `e0` as `A`,
/// and the domain of the collapsed pairs as `2`.
pub fn write_trace(t: &QuotientChainTrace) -> String {
    let mut named: Vec<(String, &Arc<FinPoset>)> = (0..t.stages()).map(|k| (format!("A{k}"), t.object(k))).collect();
    named.push(("A".into(), t.e0.dst()));
    if let Some(s) = t.steps.first() {
        named.push(("2".into(), s.pair.0.src()));
    }
    let name_of = |p: &Arc<FinPoset>| -> String {
        named
            .iter()
            .find(|(_, q)| Arc::ptr_eq(p, q))
            .or_else(|| named.iter().find(|(_, q)| **q == *p))
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| p.name().to_string())
    };
    let map = |out: &mut String, name: &str, f: &FinCpoMap| {
        out.push_str(&write_map_as(name, f, &name_of(f.src()), &name_of(f.dst())));
    };
    let mut out = String::new();
    let _ = write!(out, "# normalization kappa={}", t.kappa);
    if let Some(seed) = t.seed {
        let _ = write!(out, " seed={seed}");
    }
    out.push('\n');
    for (n, p) in &named {
        out.push_str(&write_poset_as(p, n));
    }
    map(&mut out, "e0", &t.e0);
    for (a, s) in t.steps.iter().enumerate() {
        map(&mut out, &format!("g{a}"), &s.pair.0);
        map(&mut out, &format!("h{a}"), &s.pair.1);
        map(&mut out, &format!("f{a}_{}", a + 1), &s.step);
        map(&mut out, &format!("e{}", a + 1), &s.induced);
    }
    map(&mut out, "final_iso", &t.final_iso);
    let sizes: Vec<String> = t.sizes.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "sizes: {}", sizes.join(" "));
    out
}

/// A trace read back from its text form.
#[derive(Debug, Clone)]
pub struct TraceRecords {
    pub posets: Vec<Arc<FinPoset>>,
    pub maps: Vec<(String, FinCpoMap)>,
    pub sizes: Vec<usize>,
}

pub fn read_trace(text: &str) -> Result<TraceRecords, FormatError> {
    let mut posets = Vec::new();
    let mut maps = Vec::new();
    let mut sizes = None;
    let mut offset = 0;
    for rec in split_records(text) {
        let shift = |e: FormatError| match e {
            FormatError::Syntax { line, msg } => FormatError::Syntax { line: line + offset, msg },
            FormatError::Invalid { line, source } => FormatError::Invalid { line: line + offset, source },
            other => other,
        };
        let first = content_lines(&rec).next().map(|(_, l)| l.to_string());
        match first {
            Some(l) if l.starts_with("poset ") => posets.push(Arc::new(parse_poset(&rec).map_err(shift)?)),
            Some(l) if l.starts_with("map ") => maps.push(parse_map(&rec, &posets).map_err(shift)?),
            Some(l) if l.starts_with("sizes:") => {
                let parsed = l["sizes:".len()..]
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| syntax(offset + 1, format!("bad size: {e}")))?;
                sizes = Some(parsed);
            }
            Some(l) => return Err(syntax(offset + 1, format!("unexpected line `{l}`"))),
            None => {}
        }
        offset += rec.lines().count();
    }
    let sizes = sizes.ok_or(FormatError::Eof("sizes:"))?;
    Ok(TraceRecords { posets, maps, sizes })
}

/// Splits a multi-record text at every `poset`, `map`, or `sizes:` line.
pub fn split_records(text: &str) -> Vec<String> {
    let mut records: Vec<String> = Vec::new();
    for line in text.lines() {
        let t = line.trim_start();
        if t.starts_with("poset ") || t.starts_with("map ") || t.starts_with("sizes:") || records.is_empty() {
            records.push(String::new());
        }
        let last = records.last_mut().expect("pushed above");
        last.push_str(line);
        last.push('\n');
    }
    records
}
