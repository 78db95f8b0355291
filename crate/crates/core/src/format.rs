//! Whitespace-separated text formats with `#` comments.
//!
//! Structure: `p n d`, then `n·n` lines of `d` residues, gram entries in
//! row-major order. Group: a `bilinear` line followed by a structure, or a
//! `table` line, the order, and one row of indices per element. Instance:
//! `r <r>`, `w <residues>`, and `gen <residues> -> <residues>` lines.

use std::fmt::Write as _;

use crate::bilinear::BilinearStructure;
use crate::comprehensive::StarInstance;
use crate::error::{Error, Result};
use crate::fplinalg::{PrimeField, VectorFp};
use crate::groups::TableGroup;

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, tokens: &[&str]) -> Result<Vec<u64>> {
    tokens
        .iter()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {t:?}"))))
        .collect()
}

fn residues(line: usize, tokens: &[&str], p: u32, count: usize) -> Result<Vec<u32>> {
    let values = numbers(line, tokens)?;
    if values.len() != count {
        return Err(parse_err(line, format!("expected {count} residues, found {}", values.len())));
    }
    values
        .into_iter()
        .map(|v| {
            u32::try_from(v)
                .ok()
                .filter(|&v| v < p)
                .ok_or_else(|| parse_err(line, format!("residue {v} is not below {p}")))
        })
        .collect()
}

type Lines<'a> = std::iter::Peekable<Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>>;

fn structure_from_lines(it: &mut Lines<'_>, last_line: usize) -> Result<BilinearStructure> {
    let (line, head) = it.next().ok_or_else(|| parse_err(last_line, "missing header \"p n d\""))?;
    let head = numbers(line, &head)?;
    let [p, n, d] = head[..] else {
        return Err(parse_err(line, "header must be \"p n d\""));
    };
    let p = u32::try_from(p).map_err(|_| parse_err(line, "p too large"))?;
    let field = PrimeField::new(p).map_err(|e| parse_err(line, e.to_string()))?;
    let (n, d) = (n as usize, d as usize);
    if n == 0 || d == 0 || n > 64 || d > 64 {
        return Err(parse_err(line, "n and d must be between 1 and 64"));
    }
    let mut gram = Vec::with_capacity(n * n);
    let mut last = line;
    for _ in 0..n * n {
        let (l, tokens) = it
            .next()
            .ok_or_else(|| parse_err(last, format!("expected {} gram lines, found {}", n * n, gram.len())))?;
        gram.push(VectorFp::new(field, residues(l, &tokens, p, d)?));
        last = l;
    }
    BilinearStructure::new(field, n, d, gram).map_err(|e| parse_err(line, e.to_string()))
}

fn boxed(text: &str) -> Lines<'_> {
    let it: Box<dyn Iterator<Item = (usize, Vec<&str>)>> = Box::new(lines(text));
    it.peekable()
}

fn expect_end(it: &mut Lines<'_>) -> Result<()> {
    match it.next() {
        Some((l, _)) => Err(parse_err(l, "unexpected trailing content")),
        None => Ok(()),
    }
}

pub fn parse_structure(text: &str) -> Result<BilinearStructure> {
    let mut it = boxed(text);
    let s = structure_from_lines(&mut it, 1)?;
    expect_end(&mut it)?;
    Ok(s)
}

pub fn write_structure(s: &BilinearStructure) -> String {
    let mut out = format!("{} {} {}\n", s.field().p(), s.n(), s.d());
    for v in s.gram_entries() {
        let row: Vec<String> = v.coords().iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// A group file: bilinear presentation or explicit table.
#[derive(Clone, Debug)]
pub enum GroupData {
    Bilinear(BilinearStructure),
    Table(TableGroup),
}

pub fn parse_group(text: &str) -> Result<GroupData> {
    let mut it = boxed(text);
    let (line, head) = it.next().ok_or_else(|| parse_err(1, "empty group file"))?;
    match head[..] {
        ["bilinear"] => {
            let s = structure_from_lines(&mut it, line)?;
            expect_end(&mut it)?;
            Ok(GroupData::Bilinear(s))
        }
        ["table"] => {
            let (l, tokens) = it.next().ok_or_else(|| parse_err(line, "missing order"))?;
            let order = match numbers(l, &tokens)?[..] {
                [o] if (1..=1 << 16).contains(&o) => o as usize,
                _ => return Err(parse_err(l, "order must be a single integer in 1..=65536")),
            };
            let mut table = Vec::with_capacity(order * order);
            let mut last = l;
            for _ in 0..order {
                let (l, tokens) = it
                    .next()
                    .ok_or_else(|| parse_err(last, format!("expected {order} table rows")))?;
                let row = numbers(l, &tokens)?;
                if row.len() != order {
                    return Err(parse_err(l, format!("expected {order} entries, found {}", row.len())));
                }
                if let Some(bad) = row.iter().find(|&&x| x >= order as u64) {
                    return Err(parse_err(l, format!("entry {bad} out of range")));
                }
                table.extend(row.into_iter().map(|x| x as u32));
                last = l;
            }
            expect_end(&mut it)?;
            TableGroup::from_table(order, table)
                .map(GroupData::Table)
                .map_err(|e| parse_err(line, e.to_string()))
        }
        _ => Err(parse_err(line, "group header must be \"bilinear\" or \"table\"")),
    }
}

pub fn write_bilinear_group(s: &BilinearStructure) -> String {
    format!("bilinear\n{}", write_structure(s))
}

pub fn write_table_group(g: &TableGroup) -> String {
    use crate::groups::FiniteGroup;
    let n = g.order();
    let table = g.table();
    let mut out = format!("table\n{n}\n");
    for row in table.chunks(n) {
        let mut first = true;
        for x in row {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{x}").expect("string write");
        }
        out.push('\n');
    }
    out
}

pub fn write_group(g: &GroupData) -> String {
    match g {
        GroupData::Bilinear(s) => write_bilinear_group(s),
        GroupData::Table(t) => write_table_group(t),
    }
}

/// Instance lines; `n` and `d` fix the coordinate counts, `p` the range.
pub fn parse_instance(text: &str, p: u32, n: usize, d: usize) -> Result<StarInstance> {
    let mut r = None;
    let mut w = None;
    let mut generators = Vec::new();
    let mut alpha = Vec::new();
    for (line, tokens) in lines(text) {
        match tokens[0] {
            "r" => {
                if r.is_some() {
                    return Err(parse_err(line, "duplicate r"));
                }
                match numbers(line, &tokens[1..])?[..] {
                    [v] if v <= 16 => r = Some(v as u32),
                    _ => return Err(parse_err(line, "r takes one integer ≤ 16")),
                }
            }
            "w" => {
                if w.is_some() {
                    return Err(parse_err(line, "duplicate w"));
                }
                w = Some(residues(line, &tokens[1..], p, n + d)?);
            }
            "gen" => {
                let arrow = tokens
                    .iter()
                    .position(|&t| t == "->")
                    .ok_or_else(|| parse_err(line, "gen needs \"->\""))?;
                generators.push(residues(line, &tokens[1..arrow], p, n)?);
                alpha.push(residues(line, &tokens[arrow + 1..], p, n + d)?);
            }
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        }
    }
    Ok(StarInstance {
        generators,
        alpha,
        w: w.unwrap_or_else(|| vec![0; n + d]),
        r: r.ok_or_else(|| parse_err(1, "missing r record"))?,
    })
}

pub fn write_instance(inst: &StarInstance) -> String {
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("r {}\nw {}\n", inst.r, join(&inst.w));
    for (g, a) in inst.generators.iter().zip(&inst.alpha) {
        writeln!(out, "gen {} -> {}", join(g), join(a)).expect("string write");
    }
    out
}
