//! Text format: a header line "n k", then one set per line as comma-separated
//! increasing elements. Blank lines and '#' comments are ignored.

use super::{KSet, SetFamily};
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

pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(0, "missing header \"n k\""))?;
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(hl, format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [n, k] = nums[..] else {
        return Err(perr(hl, "header must be \"n k\""));
    };
    let mut members = Vec::new();
    for (ln, l) in lines {
        let elems: Vec<u32> = l
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| perr(ln, format!("bad element {t:?}"))))
            .collect::<Result<_>>()?;
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(perr(ln, "elements must be strictly increasing"));
        }
        if elems.iter().any(|&e| e == 0 || e > n) {
            return Err(perr(ln, format!("element outside [1,{n}]")));
        }
        members.push(KSet::from_elems(&elems));
    }
    SetFamily::new(n, k, members)
}

pub fn write_family(f: &SetFamily) -> String {
    let mut out = format!("{} {}\n", f.n(), f.k());
    for m in f.members() {
        let parts: Vec<String> = m.elems().iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", parts.join(","));
    }
    out
}
