//! Graph files.
//!
//! Text: a header line `pa <n> <m> <delta> <seed>` followed by one
//! `<newer> <slot> <target>` line per edge in generation order, including
//! the `m` initial edges `2 i 1`.
//!
//! Binary: the magic bytes `PAG1`, then `n: u64`, `m: u64`, `delta: f64`,
//! `seed: u64` and one `(newer, slot, target)` triple of `u32`s per edge, all
//! little-endian.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::EdgeEvent;
use crate::graph::{EdgeTriple, PAGraph};
use crate::params::{Params, RngSeed};

pub const BINARY_MAGIC: &[u8; 4] = b"PAG1";

pub fn write_text<W: Write>(g: &PAGraph, mut w: W) -> Result<()> {
    writeln!(
        w,
        "pa {} {} {} {}",
        g.n(),
        g.m(),
        g.params().delta(),
        g.seed().0
    )?;
    for e in g.edges() {
        writeln!(w, "{} {} {}", e.newer, e.slot, e.target)?;
    }
    w.flush()?;
    Ok(())
}

fn format_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Format {
        line,
        reason: reason.into(),
    }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| format_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| format_err(line, format!("unparsable {what}")))
}

pub fn read_text<R: BufRead>(r: R) -> Result<PAGraph> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(1, "empty file"))??;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("pa") {
        return Err(format_err(1, "header must start with `pa`"));
    }
    let n: u32 = parse_field(tok.next(), 1, "n")?;
    let m: i64 = parse_field(tok.next(), 1, "m")?;
    let delta: f64 = parse_field(tok.next(), 1, "delta")?;
    let seed: u64 = parse_field(tok.next(), 1, "seed")?;
    if tok.next().is_some() {
        return Err(format_err(1, "trailing fields in header"));
    }
    let params = Params::new(m, delta)?;

    let mut triples = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        let lineno = k + 2;
        if line.trim().is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let newer = parse_field(tok.next(), lineno, "newer")?;
        let slot = parse_field(tok.next(), lineno, "slot")?;
        let target = parse_field(tok.next(), lineno, "target")?;
        if tok.next().is_some() {
            return Err(format_err(lineno, "trailing fields"));
        }
        triples.push(EdgeTriple::new(newer, slot, target));
    }
    PAGraph::from_triples(n, params, RngSeed(seed), &triples)
}

pub fn write_binary<W: Write>(g: &PAGraph, mut w: W) -> Result<()> {
    w.write_all(BINARY_MAGIC)?;
    w.write_all(&(g.n() as u64).to_le_bytes())?;
    w.write_all(&(g.m() as u64).to_le_bytes())?;
    w.write_all(&g.params().delta().to_le_bytes())?;
    w.write_all(&g.seed().0.to_le_bytes())?;
    for e in g.edges() {
        w.write_all(&e.newer.to_le_bytes())?;
        w.write_all(&e.slot.to_le_bytes())?;
        w.write_all(&e.target.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)
        .map_err(|e| format_err(0, format!("truncated binary graph: {e}")))?;
    Ok(buf)
}

/// Reads a binary graph. The magic bytes must not have been consumed.
pub fn read_binary<R: Read>(mut r: R) -> Result<PAGraph> {
    if &read_array::<4, _>(&mut r)? != BINARY_MAGIC {
        return Err(format_err(0, "bad magic"));
    }
    let n = u64::from_le_bytes(read_array(&mut r)?);
    let m = u64::from_le_bytes(read_array(&mut r)?);
    let delta = f64::from_le_bytes(read_array(&mut r)?);
    let seed = u64::from_le_bytes(read_array(&mut r)?);
    let n = u32::try_from(n).map_err(|_| Error::TooManyVertices(n))?;
    let m = i64::try_from(m).map_err(|_| format_err(0, "m too large"))?;
    let params = Params::new(m, delta)?;
    let count = (n.max(1) as usize - 1) * params.m() as usize;
    let mut triples = Vec::with_capacity(count);
    for _ in 0..count {
        let raw: [u8; 12] = read_array(&mut r)?;
        let word = |i: usize| u32::from_le_bytes(raw[i * 4..i * 4 + 4].try_into().unwrap());
        triples.push(EdgeTriple::new(word(0), word(1), word(2)));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(format_err(0, "trailing bytes after last triple"));
    }
    PAGraph::from_triples(n, params, RngSeed(seed), &triples)
}

/// Event file: one `<newer> <slot> <target>` triple per line. Blank lines
/// and lines starting with `#` are ignored. Bounds are checked later,
/// against the `n` and `m` of the query.
pub fn read_event<R: BufRead>(r: R) -> Result<EdgeEvent> {
    let mut edges = Vec::new();
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let newer = parse_field(tok.next(), k + 1, "newer")?;
        let slot = parse_field(tok.next(), k + 1, "slot")?;
        let target = parse_field(tok.next(), k + 1, "target")?;
        if tok.next().is_some() {
            return Err(format_err(k + 1, "trailing fields"));
        }
        edges.push(EdgeTriple::new(newer, slot, target));
    }
    Ok(EdgeEvent::new(edges))
}

/// Reads either format, choosing by the leading bytes.
pub fn read_graph_file(path: &Path) -> Result<PAGraph> {
    let mut r = BufReader::new(File::open(path)?);
    let head = r.fill_buf()?;
    if head.starts_with(BINARY_MAGIC) {
        read_binary(r)
    } else {
        read_text(r)
    }
}

pub fn write_graph_file(g: &PAGraph, path: &Path, binary: bool) -> Result<()> {
    let w = BufWriter::new(File::create(path)?);
    if binary {
        write_binary(g, w)
    } else {
        write_text(g, w)
    }
}
