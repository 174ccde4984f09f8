//! Text format for diagrams and their combinations.
//!
//! ```text
//! support skeleton I I
//! term 1/2
//! internal 1
//! edges 0-3 1-4 2-5
//! vertices 3,4,5
//! attach 0:0.0 1:0.1 2:1.0
//! ```
//!
//! Half-edges are numbered legs first, then three per internal vertex in
//! its cyclic order; `vertices` repeats those triples. `attach` maps each
//! leg to `component.slot` on a skeleton, `colors` maps it to a color for
//! characters. Closed graphs have neither. Lines starting with `#` are
//! ignored.

use std::fmt::Write as _;

use crate::diagram::{Component, Graph, Skeleton, Support};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, parse_scalar};
use crate::Rational;

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub fn write_support(s: &Support) -> String {
    match s {
        Support::Skeleton(k) if k.is_empty() => "support skeleton".into(),
        other => format!("support {other}"),
    }
}

fn parse_support(rest: &str, line: usize) -> Result<Support> {
    let mut it = rest.split_whitespace();
    match it.next() {
        Some("skeleton") => {
            let comps = it
                .map(|t| match t {
                    "I" => Ok(Component::Interval),
                    "O" => Ok(Component::Circle),
                    other => Err(err(line, format!("unknown component tag {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Support::Skeleton(Skeleton(comps)))
        }
        Some("colors") => {
            let n = it
                .next()
                .and_then(|t| t.parse::<u8>().ok())
                .ok_or_else(|| err(line, "colors needs a count"))?;
            Ok(Support::Colored(n))
        }
        Some("closed") => Ok(Support::Closed),
        _ => Err(err(line, "expected skeleton, colors or closed")),
    }
}

fn record(out: &mut String, key: &str, items: &[String]) {
    out.push_str(key);
    for i in items {
        out.push(' ');
        out.push_str(i);
    }
    out.push('\n');
}

/// The term record of one graph (without the `term` line).
pub fn write_graph(g: &Graph, support: &Support) -> String {
    let mut out = String::new();
    let e = g.n_ext();
    writeln!(out, "internal {}", g.n_int()).unwrap();
    let edges: Vec<String> = (0..g.n_half())
        .filter(|&h| h < g.partner(h))
        .map(|h| format!("{h}-{}", g.partner(h)))
        .collect();
    record(&mut out, "edges", &edges);
    let triples: Vec<String> = (0..g.n_int())
        .map(|j| format!("{},{},{}", e + 3 * j, e + 3 * j + 1, e + 3 * j + 2))
        .collect();
    record(&mut out, "vertices", &triples);
    match support {
        Support::Skeleton(_) => {
            let mut seen = std::collections::HashMap::new();
            let items: Vec<String> = g
                .anchors()
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let slot = seen.entry(c).or_insert(0usize);
                    let s = format!("{i}:{c}.{slot}");
                    *slot += 1;
                    s
                })
                .collect();
            record(&mut out, "attach", &items);
        }
        Support::Colored(_) => {
            let items: Vec<String> = g.anchors().iter().enumerate().map(|(i, c)| format!("{i}:{c}")).collect();
            record(&mut out, "colors", &items);
        }
        Support::Closed => {}
    }
    out
}

pub fn write_element(x: &Element) -> String {
    let mut out = write_support(&x.support);
    out.push('\n');
    for (g, c) in x.iter() {
        writeln!(out, "term {}", format_scalar(c)).unwrap();
        out.push_str(&write_graph(g, &x.support));
    }
    out
}

#[derive(Default)]
struct Draft {
    coeff: Option<Rational>,
    internal: Option<usize>,
    edges: Vec<(usize, usize)>,
    triples: Vec<[usize; 3]>,
    anchors: Vec<(usize, u8, Option<usize>)>,
    line: usize,
}

impl Draft {
    fn finish(self, support: &Support) -> Result<(Graph, Rational)> {
        let line = self.line;
        let nint = self.internal.ok_or_else(|| err(line, "term without an internal count"))?;
        let e = self.anchors.len();
        let nh = e + 3 * nint;
        for (j, t) in self.triples.iter().enumerate() {
            if *t != [e + 3 * j, e + 3 * j + 1, e + 3 * j + 2] {
                return Err(err(line, format!("vertex {j} must own half-edges {}..{}", e + 3 * j, e + 3 * j + 2)));
            }
        }
        if self.triples.len() != nint {
            return Err(err(line, format!("{} vertex triples for {nint} internal vertices", self.triples.len())));
        }
        let mut anchors = vec![0u8; e];
        let mut filled = vec![false; e];
        let mut slots: std::collections::HashMap<u8, usize> = Default::default();
        let mut sorted = self.anchors.clone();
        sorted.sort_by_key(|a| a.0);
        for (i, c, slot) in sorted {
            if i >= e || filled[i] {
                return Err(err(line, format!("leg {i} listed twice or out of range")));
            }
            if let Some(s) = slot {
                let next = slots.entry(c).or_insert(0);
                if s != *next {
                    return Err(err(line, format!("leg {i} has slot {s}, expected {next} from the leg order")));
                }
                *next += 1;
            }
            filled[i] = true;
            anchors[i] = c;
        }
        match support {
            Support::Skeleton(k) => {
                if let Some(&c) = anchors.iter().find(|&&c| c as usize >= k.len()) {
                    return Err(err(line, format!("component {c} out of range")));
                }
            }
            Support::Colored(n) => {
                if let Some(&c) = anchors.iter().find(|&&c| c > *n) {
                    return Err(err(line, format!("color {c} above {n}")));
                }
            }
            Support::Closed if e > 0 => return Err(err(line, "closed graphs have no legs")),
            Support::Closed => {}
        }
        let mut partner = vec![u16::MAX; nh];
        for &(a, b) in &self.edges {
            if a >= nh || b >= nh || partner[a] != u16::MAX || partner[b] != u16::MAX {
                return Err(err(line, format!("edge {a}-{b} out of range or repeated")));
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        let g = Graph::new(anchors, partner).map_err(|e| err(line, e))?;
        Ok((g, self.coeff.unwrap()))
    }
}

fn parse_pairs<T>(rest: &str, line: usize, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    rest.split_whitespace()
        .map(|t| f(t).ok_or_else(|| err(line, format!("cannot read {t:?}"))))
        .collect()
}

/// Parses the text format. Terms are canonicalized, so any valid labeling
/// is accepted.
pub fn parse_element(text: &str) -> Result<Element> {
    let mut support: Option<Support> = None;
    let mut terms: Vec<Draft> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        if key == "support" {
            if support.is_some() {
                return Err(err(line, "second support line"));
            }
            support = Some(parse_support(rest, line)?);
            continue;
        }
        if support.is_none() {
            return Err(err(line, "the first record must be the support"));
        }
        if key == "term" {
            let c = parse_scalar::<Rational>(rest.trim()).ok_or_else(|| err(line, format!("bad coefficient {rest:?}")))?;
            terms.push(Draft {
                coeff: Some(c),
                line,
                ..Default::default()
            });
            continue;
        }
        let d = terms.last_mut().ok_or_else(|| err(line, format!("{key} outside a term")))?;
        match key {
            "internal" => d.internal = Some(rest.trim().parse().map_err(|_| err(line, "bad internal count"))?),
            "edges" => {
                d.edges = parse_pairs(rest, line, |t| {
                    let (a, b) = t.split_once('-')?;
                    Some((a.parse().ok()?, b.parse().ok()?))
                })?
            }
            "vertices" => {
                d.triples = parse_pairs(rest, line, |t| {
                    let v: Vec<usize> = t.split(',').map(|x| x.parse().ok()).collect::<Option<_>>()?;
                    <[usize; 3]>::try_from(v).ok()
                })?
            }
            "attach" => {
                d.anchors = parse_pairs(rest, line, |t| {
                    let (i, cs) = t.split_once(':')?;
                    let (c, s) = cs.split_once('.')?;
                    Some((i.parse().ok()?, c.parse().ok()?, Some(s.parse().ok()?)))
                })?
            }
            "colors" => {
                d.anchors = parse_pairs(rest, line, |t| {
                    let (i, c) = t.split_once(':')?;
                    Some((i.parse().ok()?, c.parse().ok()?, None))
                })?
            }
            other => return Err(err(line, format!("unknown record {other:?}"))),
        }
    }
    let support = support.ok_or_else(|| Error::Parse("missing support line".into()))?;
    let attach_kind = matches!(support, Support::Skeleton(_));
    let mut out = Element::zero(support.clone());
    for d in terms {
        if attach_kind && d.anchors.iter().any(|a| a.2.is_none()) {
            return Err(err(d.line, "diagrams on a skeleton use attach, not colors"));
        }
        if !attach_kind && d.anchors.iter().any(|a| a.2.is_some()) {
            return Err(err(d.line, "characters use colors, not attach"));
        }
        let (g, c) = d.finish(&support)?;
        out.push(&g, c)?;
    }
    Ok(out)
}
