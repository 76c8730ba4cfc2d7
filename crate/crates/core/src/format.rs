//! Plain-text graph and voltage files.
//!
//! Graph file:
//!
//! ```text
//! # comment
//! v 3
//! e 0 1
//! e 1 2
//! ```
//!
//! Voltage file over an abelian group `Z_{n1} x Z_{n2} x ...`:
//!
//! ```text
//! group 3
//! w 0 1 1
//! ```
//!
//! or over permutations of a fiber with `d` vertices (one-line notation):
//!
//! ```text
//! perm 3
//! w 0 1 1 2 0
//! ```
//!
//! Arcs without a `w` line carry the identity.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VoltageAssignment};
use crate::group::{AbelianGroup, Permutation, SymmetricGroup, VoltageGroup};

/// A voltage file, either abelian or permutation valued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Voltages {
    Abelian(VoltageAssignment<AbelianGroup>),
    Permutation(VoltageAssignment<SymmetricGroup>),
}

impl Voltages {
    pub fn as_abelian(&self) -> Option<&VoltageAssignment<AbelianGroup>> {
        match self {
            Voltages::Abelian(phi) => Some(phi),
            Voltages::Permutation(_) => None,
        }
    }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((k + 1, words))
    })
}

fn number<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T> {
    word.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{word}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut count: Option<usize> = None;
    let mut edges = BTreeSet::new();
    for (line, words) in lines(text) {
        match words[0] {
            "v" => {
                if count.is_some() {
                    return Err(Error::parse(line, "second `v` line"));
                }
                if words.len() != 2 {
                    return Err(Error::parse(line, "`v` takes one vertex count"));
                }
                count = Some(number(line, words[1], "a vertex count")?);
            }
            "e" => {
                let n = count.ok_or_else(|| Error::parse(line, "`e` before `v`"))?;
                if words.len() != 3 {
                    return Err(Error::parse(line, "`e` takes two endpoints"));
                }
                let a: usize = number(line, words[1], "a vertex")?;
                let b: usize = number(line, words[2], "a vertex")?;
                if a >= n || b >= n {
                    return Err(Error::parse(line, format!("vertex out of range 0..{n}")));
                }
                if a == b {
                    return Err(Error::parse(line, format!("loop at vertex {a}")));
                }
                if !edges.insert((a.min(b), a.max(b))) {
                    return Err(Error::parse(line, format!("repeated edge {a}-{b}")));
                }
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = count.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `v` line"))?;
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    g.to_string()
}

struct Entry<'a> {
    line: usize,
    arc: (usize, usize),
    words: Vec<&'a str>,
}

fn arc_entries<'a>(
    base: &Graph,
    body: impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<Vec<Entry<'a>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (line, words) in body {
        if words[0] != "w" {
            return Err(Error::parse(line, format!("unknown directive `{}`", words[0])));
        }
        if words.len() < 3 {
            return Err(Error::parse(line, "`w` needs two endpoints and a value"));
        }
        let a: usize = number(line, words[1], "a vertex")?;
        let b: usize = number(line, words[2], "a vertex")?;
        if !base.has_edge(a, b) {
            return Err(Error::parse(line, format!("{a}-{b} is not an edge of the base graph")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::parse(line, format!("edge {a}-{b} assigned twice")));
        }
        out.push(Entry {
            line,
            arc: (a, b),
            words: words[3..].to_vec(),
        });
    }
    Ok(out)
}

/// Parses a voltage file for the given base graph.
pub fn parse_voltages(text: &str, base: &Graph) -> Result<Voltages> {
    let mut it = lines(text);
    let (line, header) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `group` or `perm` line"))?;
    match header[0] {
        "group" => {
            if header.len() < 2 {
                return Err(Error::parse(line, "`group` needs at least one order"));
            }
            let orders = header[1..]
                .iter()
                .map(|w| number::<u64>(line, w, "a group order"))
                .collect::<Result<Vec<_>>>()?;
            let group = AbelianGroup::new(orders).map_err(|e| Error::parse(line, e.to_string()))?;
            let mut values = Vec::new();
            for e in arc_entries(base, it)? {
                if e.words.len() != group.orders().len() {
                    return Err(Error::parse(
                        e.line,
                        format!("expected {} group components", group.orders().len()),
                    ));
                }
                let comps = e
                    .words
                    .iter()
                    .map(|w| number::<i64>(e.line, w, "an integer"))
                    .collect::<Result<Vec<_>>>()?;
                let g = group.element(&comps).map_err(|err| Error::parse(e.line, err.to_string()))?;
                values.push((e.arc, g));
            }
            Ok(Voltages::Abelian(VoltageAssignment::new(base, group, values)?))
        }
        "perm" => {
            if header.len() != 2 {
                return Err(Error::parse(line, "`perm` takes the fiber size"));
            }
            let group = SymmetricGroup::new(number(line, header[1], "a fiber size")?);
            let mut values = Vec::new();
            for e in arc_entries(base, it)? {
                let images = e
                    .words
                    .iter()
                    .map(|w| number::<usize>(e.line, w, "a point"))
                    .collect::<Result<Vec<_>>>()?;
                if images.len() != group.degree() {
                    return Err(Error::parse(
                        e.line,
                        format!("expected {} images", group.degree()),
                    ));
                }
                let p = Permutation::new(images).map_err(|err| Error::parse(e.line, err.to_string()))?;
                values.push((e.arc, p));
            }
            Ok(Voltages::Permutation(VoltageAssignment::new(base, group, values)?))
        }
        other => Err(Error::parse(
            line,
            format!("expected `group` or `perm`, found `{other}`"),
        )),
    }
}

/// Writes every non-identity canonical arc.
pub fn write_voltages(v: &Voltages) -> String {
    let mut s = String::new();
    match v {
        Voltages::Abelian(phi) => {
            let orders: Vec<String> = phi.group().orders().iter().map(|o| o.to_string()).collect();
            writeln!(s, "group {}", orders.join(" ")).unwrap();
            for ((a, b), g) in phi.canonical_values() {
                if *g != phi.group().identity() {
                    let comps: Vec<String> = g.components().iter().map(|c| c.to_string()).collect();
                    writeln!(s, "w {a} {b} {}", comps.join(" ")).unwrap();
                }
            }
        }
        Voltages::Permutation(phi) => {
            writeln!(s, "perm {}", phi.group().degree()).unwrap();
            for ((a, b), p) in phi.canonical_values() {
                if *p != VoltageGroup::identity(phi.group()) {
                    let imgs: Vec<String> = p.images().iter().map(|c| c.to_string()).collect();
                    writeln!(s, "w {a} {b} {}", imgs.join(" ")).unwrap();
                }
            }
        }
    }
    s
}
