//! Permutation files: header "n", then one permutation per line as space-separated
//! images. Coset specs: header "n", then lines "i j". Blank lines and '#' comments are ignored.

use super::{CosetSpec, Perm, PermFamily};
use crate::error::{Error, Result};
use std::fmt::Write;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, l: &str) -> Result<Vec<u32>> {
    l.split_whitespace().map(|t| t.parse().map_err(|_| perr(line, format!("bad number {t:?}")))).collect()
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<u32> {
    let (hl, h) = lines.next().ok_or_else(|| perr(0, "missing header \"n\""))?;
    match numbers(hl, h)?[..] {
        [n] => Ok(n),
        _ => Err(perr(hl, "header must be a single integer n")),
    }
}

pub fn parse_perms(text: &str) -> Result<PermFamily> {
    let mut lines = content_lines(text);
    let n = header(&mut lines)?;
    let mut members = Vec::new();
    for (ln, l) in lines {
        let img = numbers(ln, l)?;
        if img.len() != n as usize {
            return Err(perr(ln, format!("expected {n} images")));
        }
        members.push(Perm::new(img).map_err(|e| perr(ln, e.to_string()))?);
    }
    PermFamily::new(n, members)
}

pub fn write_perms(f: &PermFamily) -> String {
    let mut out = format!("{}\n", f.n());
    for p in f.members() {
        let parts: Vec<String> = p.image().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    out
}

pub fn parse_spec(text: &str) -> Result<CosetSpec> {
    let mut lines = content_lines(text);
    let n = header(&mut lines)?;
    let mut pts = Vec::new();
    for (ln, l) in lines {
        match numbers(ln, l)?[..] {
            [i, j] => pts.push((i, j)),
            _ => return Err(perr(ln, "expected \"i j\"")),
        }
    }
    CosetSpec::new(n, pts)
}

pub fn write_spec(s: &CosetSpec) -> String {
    let mut out = format!("{}\n", s.n());
    for (i, j) in s.points() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}
