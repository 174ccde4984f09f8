//! Framed q-tangles and the combinatorial Kontsevich invariant `Z^`.
//!
//! A tangle is stored as a boundary shape (non-associative words on top and
//! bottom, strands with their endpoints) together with a truncated value in
//! the diagram space over the strands. Values are kept as raw diagrams;
//! relations are only imposed when results are compared.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::associator::AssociatorState;
use crate::bspace::SymComb;
use crate::chi::p_normal_form;
use crate::diagram::{reverse_component, Component, Graph, Skeleton, Support};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::{delta_power, stack_truncated};
use crate::series::{series_inverse, series_log, GradedSeries};
use crate::{Rational, Scalar};

// ---------------------------------------------------------------------------
// words
// ---------------------------------------------------------------------------

/// Orientation of a boundary point: `Plus` when the tangent points down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Element of the free magma on `+` and `-`, with a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Empty,
    Leaf(Sign),
    Pair(Box<Word>, Box<Word>),
}

impl Word {
    /// Magma product; the empty word is a unit.
    pub fn tensor(a: &Word, b: &Word) -> Word {
        match (a, b) {
            (Word::Empty, _) => b.clone(),
            (_, Word::Empty) => a.clone(),
            _ => Word::Pair(Box::new(a.clone()), Box::new(b.clone())),
        }
    }

    pub fn flat(&self) -> Vec<Sign> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Sign>) {
        match self {
            Word::Empty => {}
            Word::Leaf(s) => out.push(*s),
            Word::Pair(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Empty => 0,
            Word::Leaf(_) => 1,
            Word::Pair(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The word with the letter at flat position `pos` flipped.
    pub fn flip_at(&self, pos: usize) -> Word {
        match self {
            Word::Empty => Word::Empty,
            Word::Leaf(s) => Word::Leaf(if pos == 0 { s.flip() } else { *s }),
            Word::Pair(a, b) => {
                let k = a.len();
                if pos < k {
                    Word::Pair(Box::new(a.flip_at(pos)), b.clone())
                } else {
                    Word::Pair(a.clone(), Box::new(b.flip_at(pos - k)))
                }
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Empty => write!(f, "()"),
            Word::Leaf(s) => write!(f, "{}", s.symbol()),
            Word::Pair(a, b) => write!(f, "({a}{b})"),
        }
    }
}

/// Minimal cursor over a token string.
struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, msg: &str) -> Error {
        let text = String::from_utf8_lossy(self.s);
        Error::Parse(format!("{msg} at column {} in `{text}`", self.pos + 1))
    }
}

fn combine<T>(mut items: Vec<T>, pair: impl Fn(T, T) -> T, unit: Option<T>, cur: &Cursor) -> Result<T> {
    match items.len() {
        0 => unit.ok_or_else(|| cur.error("empty group")),
        1 => Ok(items.pop().unwrap()),
        2 => {
            let b = items.pop().unwrap();
            let a = items.pop().unwrap();
            Ok(pair(a, b))
        }
        _ => Err(cur.error("groups must be binary")),
    }
}

fn parse_word_item(cur: &mut Cursor) -> Result<Word> {
    match cur.peek() {
        Some(b'+') => {
            cur.pos += 1;
            Ok(Word::Leaf(Sign::Plus))
        }
        Some(b'-') => {
            cur.pos += 1;
            Ok(Word::Leaf(Sign::Minus))
        }
        Some(b'(') => {
            cur.pos += 1;
            let mut items = Vec::new();
            while cur.peek() != Some(b')') {
                if cur.at_end() {
                    return Err(cur.error("unclosed parenthesis"));
                }
                items.push(parse_word_item(cur)?);
            }
            cur.pos += 1;
            combine(items, |a, b| Word::tensor(&a, &b), Some(Word::Empty), cur)
        }
        _ => Err(cur.error("expected '+', '-' or '('")),
    }
}

fn parse_word_until(cur: &mut Cursor, stops: &[u8]) -> Result<Word> {
    let mut items = Vec::new();
    while let Some(c) = cur.peek() {
        if stops.contains(&c) {
            break;
        }
        items.push(parse_word_item(cur)?);
    }
    combine(items, |a, b| Word::tensor(&a, &b), Some(Word::Empty), cur)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut cur = Cursor::new(s);
        let w = parse_word_until(&mut cur, &[])?;
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(w)
    }
}

// ---------------------------------------------------------------------------
// shapes
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Top(usize),
    Bottom(usize),
}

/// A component with its endpoints; a closed component has neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub start: Option<End>,
    pub end: Option<End>,
}

impl Strand {
    pub fn is_closed(&self) -> bool {
        self.start.is_none()
    }
}

/// A crossing between strands `a` and `b` with its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleShape {
    pub top: Word,
    pub bottom: Word,
    pub strands: Vec<Strand>,
    pub crossings: Vec<Crossing>,
}

impl TangleShape {
    /// Vertical strands along `w`.
    pub fn identity(w: &Word) -> Self {
        let strands = w
            .flat()
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Sign::Plus => Strand {
                    start: Some(End::Top(i)),
                    end: Some(End::Bottom(i)),
                },
                Sign::Minus => Strand {
                    start: Some(End::Bottom(i)),
                    end: Some(End::Top(i)),
                },
            })
            .collect();
        TangleShape {
            top: w.clone(),
            bottom: w.clone(),
            strands,
            crossings: Vec::new(),
        }
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton(
            self.strands
                .iter()
                .map(|s| if s.is_closed() { Component::Circle } else { Component::Interval })
                .collect(),
        )
    }

    pub fn is_closed(&self) -> bool {
        self.top.is_empty() && self.bottom.is_empty()
    }

    /// Every strand runs from top `i` to bottom `i`.
    pub fn is_string_link(&self) -> bool {
        self.top.flat() == self.bottom.flat()
            && self.top.flat().iter().all(|&s| s == Sign::Plus)
            && self.strands.iter().enumerate().all(|(i, s)| {
                s.start == Some(End::Top(i)) && s.end == Some(End::Bottom(i))
            })
    }

    /// Checks that endpoints match the orientations of the boundary words.
    pub fn check(&self) -> Result<()> {
        let top = self.top.flat();
        let bottom = self.bottom.flat();
        let mut seen_top = vec![false; top.len()];
        let mut seen_bottom = vec![false; bottom.len()];
        let mut visit = |e: End, starting: bool| -> Result<()> {
            let (seen, word, i, want) = match e {
                End::Top(i) => (&mut seen_top, &top, i, if starting { Sign::Plus } else { Sign::Minus }),
                End::Bottom(i) => (&mut seen_bottom, &bottom, i, if starting { Sign::Minus } else { Sign::Plus }),
            };
            if i >= word.len() || seen[i] || word[i] != want {
                return Err(Error::Structural(format!("strand endpoint {e:?} does not fit the boundary")));
            }
            seen[i] = true;
            Ok(())
        };
        for s in &self.strands {
            match (s.start, s.end) {
                (Some(a), Some(b)) => {
                    visit(a, true)?;
                    visit(b, false)?;
                }
                (None, None) => {}
                _ => return Err(Error::Structural("strand with one endpoint".into())),
            }
        }
        if seen_top.iter().chain(seen_bottom.iter()).any(|&v| !v) {
            return Err(Error::Structural("unused boundary point".into()));
        }
        Ok(())
    }

    /// Linking numbers off the diagonal and blackboard framings (writhe of
    /// self-crossings) on it.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let l = self.strands.len();
        let mut m = vec![vec![0i64; l]; l];
        for c in &self.crossings {
            let s = c.sign as i64;
            if c.a == c.b {
                m[c.a][c.a] += s;
            } else {
                m[c.a][c.b] += s;
                m[c.b][c.a] += s;
            }
        }
        for i in 0..l {
            for j in 0..l {
                if i != j {
                    if m[i][j] % 2 != 0 {
                        return Err(Error::Precondition(
                            "linking numbers are only defined for closed components".into(),
                        ));
                    }
                    m[i][j] /= 2;
                }
            }
        }
        Ok(m)
    }
}

/// Follows `next` from each start, then collects the remaining cycles.
/// Returns paths of old components and whether each path is closed.
fn assemble(next: &[Option<usize>], starts: &[usize]) -> Result<Vec<(Vec<usize>, bool)>> {
    let n = next.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for &s in starts {
        let mut path = Vec::new();
        let mut cur = Some(s);
        while let Some(c) = cur {
            if used[c] {
                return Err(Error::Composition("strand visited twice".into()));
            }
            used[c] = true;
            path.push(c);
            cur = next[c];
        }
        out.push((path, false));
    }
    for s in 0..n {
        if used[s] {
            continue;
        }
        let mut path = Vec::new();
        let mut cur = s;
        loop {
            used[cur] = true;
            path.push(cur);
            match next[cur] {
                Some(c) if c == s => break,
                Some(c) if !used[c] => cur = c,
                _ => return Err(Error::Composition("open strand without endpoints".into())),
            }
        }
        out.push((path, true));
    }
    Ok(out)
}

/// Owner of each old component: (new component, rank along it).
fn owners(paths: &[(Vec<usize>, bool)], n: usize) -> Vec<(usize, usize)> {
    let mut own = vec![(0, 0); n];
    for (k, (p, _)) in paths.iter().enumerate() {
        for (r, &c) in p.iter().enumerate() {
            own[c] = (k, r);
        }
    }
    own
}

/// Moves legs to their new components, concatenated in path order.
fn regroup(g: &Graph, own: &[(usize, usize)]) -> Graph {
    let anchors = g.anchors();
    let mut order: Vec<usize> = (0..g.n_ext()).collect();
    order.sort_by_key(|&l| (own[anchors[l] as usize], l));
    g.permute_legs(&order).map_anchors(|a| own[a as usize].0 as u8)
}

// ---------------------------------------------------------------------------
// tangles
// ---------------------------------------------------------------------------

/// A tangle shape with a degree-truncated value.
#[derive(Clone, Debug, PartialEq)]
pub struct Tangle {
    pub shape: TangleShape,
    pub value: Element,
    pub max_degree: usize,
}

/// Puts strands in the order: top starts by position, then bottom starts, then circles.
fn normalize_strands(shape: TangleShape, value: Element) -> Result<(TangleShape, Element)> {
    let key = |s: &Strand| s.start.map_or((1, End::Top(0)), |e| (0, e));
    let mut order: Vec<usize> = (0..shape.strands.len()).collect();
    order.sort_by_key(|&c| key(&shape.strands[c]));
    if order.iter().enumerate().all(|(i, &c)| i == c) {
        return Ok((shape, value));
    }
    let mut new_index = vec![0u8; order.len()];
    for (i, &c) in order.iter().enumerate() {
        new_index[c] = i as u8;
    }
    let shape = TangleShape {
        strands: order.iter().map(|&c| shape.strands[c]).collect(),
        crossings: shape
            .crossings
            .iter()
            .map(|x| Crossing {
                a: new_index[x.a] as usize,
                b: new_index[x.b] as usize,
                sign: x.sign,
            })
            .collect(),
        ..shape
    };
    let mut out = Element::zero(Support::Skeleton(shape.skeleton()));
    for (g, c) in value.iter() {
        out.push(&g.map_anchors(|a| new_index[a as usize]).sort_legs_by_anchor(), c.clone())?;
    }
    Ok((shape, out))
}

impl Tangle {
    fn with_value(shape: TangleShape, value: Element, max_degree: usize) -> Result<Tangle> {
        shape.check()?;
        let support = Support::Skeleton(shape.skeleton());
        if value.support != support {
            return Err(Error::Structural(format!(
                "value lives on {} but the shape needs {support}",
                value.support
            )));
        }
        let (shape, value) = normalize_strands(shape, value)?;
        Ok(Tangle {
            shape,
            value: value.truncate(max_degree),
            max_degree,
        })
    }

    pub fn identity(w: &Word, max_degree: usize) -> Tangle {
        let shape = TangleShape::identity(w);
        let value = Element::one(Support::Skeleton(shape.skeleton()));
        Tangle::with_value(shape, value, max_degree).expect("identity tangles are well formed")
    }

    pub fn support(&self) -> Support {
        Support::Skeleton(self.shape.skeleton())
    }

    /// `self` on top of `below`.
    pub fn compose(&self, below: &Tangle) -> Result<Tangle> {
        let (a, b) = (&self.shape, &below.shape);
        if a.bottom != b.top {
            return Err(Error::Composition(format!(
                "bottom word {} does not match top word {}",
                a.bottom, b.top
            )));
        }
        let na = a.strands.len();
        let n = na + b.strands.len();
        let find_b = |e: End| b.strands.iter().position(|s| s.start == Some(e)).map(|i| i + na);
        let find_a = |e: End| a.strands.iter().position(|s| s.start == Some(e));
        let mut next = vec![None; n];
        for (c, s) in a.strands.iter().enumerate() {
            next[c] = match s.end {
                Some(End::Bottom(j)) => Some(find_b(End::Top(j)).ok_or_else(|| broken(j))?),
                Some(End::Top(_)) => None,
                None => Some(c),
            };
        }
        for (c, s) in b.strands.iter().enumerate() {
            next[na + c] = match s.end {
                Some(End::Top(j)) => Some(find_a(End::Bottom(j)).ok_or_else(|| broken(j))?),
                Some(End::Bottom(_)) => None,
                None => Some(na + c),
            };
        }
        let mut starts: Vec<(End, usize)> = Vec::new();
        for (c, s) in a.strands.iter().enumerate() {
            if let Some(e @ End::Top(_)) = s.start {
                starts.push((e, c));
            }
        }
        for (c, s) in b.strands.iter().enumerate() {
            if let Some(e @ End::Bottom(_)) = s.start {
                starts.push((e, na + c));
            }
        }
        starts.sort();
        let starts: Vec<usize> = starts.into_iter().map(|(_, c)| c).collect();
        let paths = assemble(&next, &starts)?;
        let endpoint = |c: usize, start: bool| -> Option<End> {
            let s = if c < na { a.strands[c] } else { b.strands[c - na] };
            let e = if start { s.start } else { s.end };
            match (c < na, e) {
                (true, Some(End::Top(i))) => Some(End::Top(i)),
                (false, Some(End::Bottom(i))) => Some(End::Bottom(i)),
                _ => None,
            }
        };
        let strands = paths
            .iter()
            .map(|(p, closed)| {
                if *closed {
                    Strand { start: None, end: None }
                } else {
                    Strand {
                        start: endpoint(p[0], true),
                        end: endpoint(*p.last().unwrap(), false),
                    }
                }
            })
            .collect();
        let own = owners(&paths, n);
        let crossings = a
            .crossings
            .iter()
            .map(|c| (c.a, c.b, c.sign))
            .chain(b.crossings.iter().map(|c| (c.a + na, c.b + na, c.sign)))
            .map(|(x, y, sign)| Crossing {
                a: own[x].0,
                b: own[y].0,
                sign,
            })
            .collect();
        let shape = TangleShape {
            top: a.top.clone(),
            bottom: b.bottom.clone(),
            strands,
            crossings,
        };
        let max_degree = self.max_degree.min(below.max_degree);
        let mut value = Element::zero(Support::Skeleton(shape.skeleton()));
        for (ga, ca) in self.value.iter() {
            for (gb, cb) in below.value.iter() {
                if ga.degree() + gb.degree() > max_degree {
                    continue;
                }
                let shifted = gb.map_anchors(|x| x + na as u8);
                let g = regroup(&ga.disjoint_union(&shifted), &own);
                value.push(&g, ca.clone() * cb.clone())?;
            }
        }
        Tangle::with_value(shape, value, max_degree)
    }

    /// `self` to the left of `right`.
    pub fn tensor(&self, right: &Tangle) -> Result<Tangle> {
        let (a, b) = (&self.shape, &right.shape);
        let na = a.strands.len();
        let (st, sb) = (a.top.len(), a.bottom.len());
        let shift = |e: Option<End>| match e {
            Some(End::Top(i)) => Some(End::Top(i + st)),
            Some(End::Bottom(i)) => Some(End::Bottom(i + sb)),
            None => None,
        };
        let mut strands = a.strands.clone();
        strands.extend(b.strands.iter().map(|s| Strand {
            start: shift(s.start),
            end: shift(s.end),
        }));
        let mut crossings = a.crossings.clone();
        crossings.extend(b.crossings.iter().map(|c| Crossing {
            a: c.a + na,
            b: c.b + na,
            sign: c.sign,
        }));
        let shape = TangleShape {
            top: Word::tensor(&a.top, &b.top),
            bottom: Word::tensor(&a.bottom, &b.bottom),
            strands,
            crossings,
        };
        let max_degree = self.max_degree.min(right.max_degree);
        let mut value = Element::zero(Support::Skeleton(shape.skeleton()));
        for (ga, ca) in self.value.iter() {
            for (gb, cb) in right.value.iter() {
                if ga.degree() + gb.degree() > max_degree {
                    continue;
                }
                let g = ga.disjoint_union(&gb.map_anchors(|x| x + na as u8)).sort_legs_by_anchor();
                value.push(&g, ca.clone() * cb.clone())?;
            }
        }
        Tangle::with_value(shape, value, max_degree)
    }

    /// Reverses the orientation of strand `c`.
    pub fn reverse(&self, c: usize) -> Result<Tangle> {
        let s = self.shape.strands.get(c).ok_or_else(|| Error::Argument(format!("no strand {c}")))?;
        let mut shape = self.shape.clone();
        shape.strands[c] = Strand {
            start: s.end,
            end: s.start,
        };
        for e in [s.start, s.end].into_iter().flatten() {
            match e {
                End::Top(i) => shape.top = shape.top.flip_at(i),
                End::Bottom(i) => shape.bottom = shape.bottom.flip_at(i),
            }
        }
        for x in shape.crossings.iter_mut() {
            if (x.a == c) != (x.b == c) {
                x.sign = -x.sign;
            }
        }
        let value = reverse_element(&self.value, c)?;
        Tangle::with_value(shape, value, self.max_degree)
    }

    /// Closes a tangle whose top and bottom boundaries agree by joining
    /// bottom point `i` to top point `i` behind the picture.
    pub fn close(&self) -> Result<Tangle> {
        let a = &self.shape;
        if a.top.flat() != a.bottom.flat() {
            return Err(Error::Composition(format!("cannot close {} against {}", a.top, a.bottom)));
        }
        let n = a.strands.len();
        let find = |e: End| a.strands.iter().position(|s| s.start == Some(e));
        let mut next = vec![None; n];
        for (c, s) in a.strands.iter().enumerate() {
            next[c] = match s.end {
                Some(End::Bottom(j)) => Some(find(End::Top(j)).ok_or_else(|| broken(j))?),
                Some(End::Top(j)) => Some(find(End::Bottom(j)).ok_or_else(|| broken(j))?),
                None => Some(c),
            };
        }
        let paths = assemble(&next, &[])?;
        let own = owners(&paths, n);
        let shape = TangleShape {
            top: Word::Empty,
            bottom: Word::Empty,
            strands: vec![Strand { start: None, end: None }; paths.len()],
            crossings: a
                .crossings
                .iter()
                .map(|c| Crossing {
                    a: own[c.a].0,
                    b: own[c.b].0,
                    sign: c.sign,
                })
                .collect(),
        };
        let mut value = Element::zero(Support::Skeleton(shape.skeleton()));
        for (g, c) in self.value.iter() {
            value.push(&regroup(g, &own), c.clone())?;
        }
        Tangle::with_value(shape, value, self.max_degree)
    }

    /// For a closed tangle, a preimage of the value under the closure map
    /// from diagrams on strings (each circle cut at its encoding base point).
    pub fn cut(&self) -> Result<Element> {
        if !self.shape.is_closed() || self.shape.strands.iter().any(|s| !s.is_closed()) {
            return Err(Error::Argument("only closed tangles can be cut".into()));
        }
        let support = Support::strings(self.shape.strands.len());
        let mut out = Element::zero(support);
        for (g, c) in self.value.iter() {
            out.push(g, c.clone())?;
        }
        Ok(out)
    }
}

fn broken(j: usize) -> Error {
    Error::Composition(format!("no strand continues through middle point {j}"))
}

/// `S_c` on every term.
pub fn reverse_element(x: &Element, c: usize) -> Result<Element> {
    let skel = x
        .support
        .skeleton()
        .ok_or_else(|| Error::Argument("reversal needs a skeleton".into()))?
        .clone();
    let mut out = Element::zero(x.support.clone());
    for (g, k) in x.iter() {
        let (h, s) = reverse_component(g, &skel, c)?;
        out.push(&h, k.clone() * Rational::from_int(s as i64))?;
    }
    Ok(out)
}

/// Closes diagrams on strings into diagrams on circles, string `i` to
/// circle `i`.
pub fn pr(x: &Element) -> Result<Element> {
    let n = match &x.support {
        Support::Skeleton(s) if s.all_intervals() => s.len(),
        other => return Err(Error::Argument(format!("pr expects strings, got {other}"))),
    };
    let mut out = Element::zero(Support::circles(n));
    for (g, c) in x.iter() {
        out.push(g, c.clone())?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// words of elementary tangles
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    Strand,
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    Assoc(Word, Word, Word),
    AssocInv(Word, Word, Word),
}

/// An elementary q-tangle, optionally with some strands reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GenKind,
    pub reversed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceExpr {
    Gen(Generator),
    Tensor(Box<SliceExpr>, Box<SliceExpr>),
}

/// A q-tangle as a top-to-bottom sequence of slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTangleWord {
    pub slices: Vec<SliceExpr>,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GenKind::Strand => write!(f, "I")?,
            GenKind::XPlus => write!(f, "X+")?,
            GenKind::XMinus => write!(f, "X-")?,
            GenKind::YPlus => write!(f, "Y+")?,
            GenKind::YMinus => write!(f, "Y-")?,
            GenKind::Assoc(a, b, c) => write!(f, "A[{a}|{b}|{c}]")?,
            GenKind::AssocInv(a, b, c) => write!(f, "A-[{a}|{b}|{c}]")?,
        }
        for k in &self.reversed {
            write!(f, "R<{k}>")?;
        }
        Ok(())
    }
}

impl fmt::Display for SliceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceExpr::Gen(g) => write!(f, "{g}"),
            SliceExpr::Tensor(a, b) => write!(f, "({a} {b})"),
        }
    }
}

impl fmt::Display for QTangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slices {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn parse_generator(cur: &mut Cursor) -> Result<Generator> {
    let c = cur.peek().ok_or_else(|| cur.error("expected a generator"))?;
    cur.pos += 1;
    let rest = &cur.s[cur.pos..];
    let mut reversed = Vec::new();
    let kind = match c {
        b'I' => {
            if rest.first() == Some(&b'-') {
                cur.pos += 1;
                reversed.push(0);
            } else if rest.first() == Some(&b'+') {
                cur.pos += 1;
            }
            GenKind::Strand
        }
        b'X' | b'Y' => {
            let s = rest.first().copied();
            cur.pos += 1;
            match (c, s) {
                (b'X', Some(b'+')) => GenKind::XPlus,
                (b'X', Some(b'-')) => GenKind::XMinus,
                (b'Y', Some(b'+')) => GenKind::YPlus,
                (b'Y', Some(b'-')) => GenKind::YMinus,
                _ => return Err(cur.error("expected '+' or '-' after X/Y")),
            }
        }
        b'A' => {
            let inverse = rest.first() == Some(&b'-');
            if inverse {
                cur.pos += 1;
            }
            if cur.s.get(cur.pos) != Some(&b'[') {
                return Err(cur.error("expected '['"));
            }
            cur.pos += 1;
            let w1 = parse_word_until(cur, b"|")?;
            cur.expect(b'|')?;
            let w2 = parse_word_until(cur, b"|")?;
            cur.expect(b'|')?;
            let w3 = parse_word_until(cur, b"]")?;
            cur.expect(b']')?;
            if w1.is_empty() || w2.is_empty() || w3.is_empty() {
                return Err(cur.error("associator words must be nonempty"));
            }
            if inverse {
                GenKind::AssocInv(w1, w2, w3)
            } else {
                GenKind::Assoc(w1, w2, w3)
            }
        }
        _ => {
            cur.pos -= 1;
            return Err(cur.error("unknown generator"));
        }
    };
    while cur.s.get(cur.pos) == Some(&b'R') {
        cur.pos += 1;
        if cur.s.get(cur.pos) != Some(&b'<') {
            return Err(cur.error("expected '<' after R"));
        }
        cur.pos += 1;
        let start = cur.pos;
        while cur.s.get(cur.pos).is_some_and(|b| b.is_ascii_digit()) {
            cur.pos += 1;
        }
        let k: usize = std::str::from_utf8(&cur.s[start..cur.pos])
            .unwrap()
            .parse()
            .map_err(|_| cur.error("expected a strand index"))?;
        if cur.s.get(cur.pos) != Some(&b'>') {
            return Err(cur.error("expected '>'"));
        }
        cur.pos += 1;
        reversed.push(k);
    }
    Ok(Generator { kind, reversed })
}

fn parse_slice_item(cur: &mut Cursor) -> Result<SliceExpr> {
    if cur.eat(b'(') {
        let mut items = Vec::new();
        while !cur.eat(b')') {
            if cur.at_end() {
                return Err(cur.error("unclosed parenthesis"));
            }
            items.push(parse_slice_item(cur)?);
        }
        combine(items, |a, b| SliceExpr::Tensor(Box::new(a), Box::new(b)), None, cur)
    } else {
        Ok(SliceExpr::Gen(parse_generator(cur)?))
    }
}

impl FromStr for SliceExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<SliceExpr> {
        let mut cur = Cursor::new(s);
        let mut items = Vec::new();
        while !cur.at_end() {
            items.push(parse_slice_item(&mut cur)?);
        }
        combine(items, |a, b| SliceExpr::Tensor(Box::new(a), Box::new(b)), None, &cur)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

impl FromStr for QTangleWord {
    type Err = Error;

    /// One slice per line; `#` starts a comment.
    fn from_str(s: &str) -> Result<QTangleWord> {
        let slices = s
            .lines()
            .map(strip_comment)
            .filter(|l| !l.is_empty())
            .map(SliceExpr::from_str)
            .collect::<Result<Vec<_>>>()?;
        if slices.is_empty() {
            return Err(Error::Parse("a tangle word needs at least one slice".into()));
        }
        Ok(QTangleWord { slices })
    }
}

// ---------------------------------------------------------------------------
// the invariant
// ---------------------------------------------------------------------------

/// `sqrt(x)` by the binomial series, for `x` with constant term 1.
pub fn series_sqrt(x: &GradedSeries<Element>) -> Result<GradedSeries<Element>> {
    use crate::series::GradedAlgebra;
    if x.value.constant() != Rational::from_int(1) {
        return Err(Error::Argument("square root of a series whose constant term is not 1".into()));
    }
    let y = x.sub(&x.one_like())?;
    let mut acc = x.one_like();
    let mut power = x.one_like();
    let mut coeff = Rational::from_int(1);
    let half = Rational::new(1.into(), 2.into());
    for k in 1..=x.max_degree {
        power = power.mul(&y)?;
        if power.is_zero() {
            break;
        }
        // binomial(1/2, k)
        coeff = coeff * (half.clone() - Rational::from_int(k as i64 - 1)) / Rational::from_int(k as i64);
        acc = acc.add(&power.scaled(&coeff))?;
    }
    Ok(acc)
}

/// `exp(c * x)` for a single diagram `x` whose powers are given by `power`.
fn exp_of(support: &Support, c: &Rational, max_degree: usize, power: impl Fn(usize) -> Graph) -> Result<Element> {
    let mut out = Element::zero(support.clone());
    let mut coeff = Rational::from_int(1);
    for k in 0..=max_degree {
        if k > 0 {
            coeff = coeff * c.clone() / Rational::from_int(k as i64);
        }
        let g = power(k);
        if g.degree() > max_degree {
            break;
        }
        out.push(&g, coeff.clone())?;
    }
    Ok(out)
}

/// `exp(k theta / 2)` placed on component `c` of `support`, with `theta`
/// an isolated chord.
pub fn framing_factor(support: &Support, c: usize, k: i64, max_degree: usize) -> Result<Element> {
    let half = Rational::new(k.into(), 2.into());
    exp_of(support, &half, max_degree, |j| Graph::chords(&vec![(c as u8, c as u8); j]))
}

/// Inserts the diagrams of `f` at the start of their component in every
/// term of `x`.
fn insert_at_start(x: &Element, f: &Element) -> Result<Element> {
    let mut out = Element::zero(x.support.clone());
    for (h, a) in f.iter() {
        for (g, b) in x.iter() {
            let u = h.disjoint_union(g).sort_legs_by_anchor();
            out.push(&u, a.clone() * b.clone())?;
        }
    }
    Ok(out)
}

/// Connected sum with `exp(k theta / 2)` along the closed component `c`.
pub fn change_framing(z: &Element, c: usize, k: i64, max_degree: usize) -> Result<Element> {
    let skel = z
        .support
        .skeleton()
        .ok_or_else(|| Error::Argument("framing change needs a skeleton".into()))?;
    if !skel.is_circle(c) {
        return Err(Error::Argument(format!("component {c} is not closed")));
    }
    let f = framing_factor(&z.support, c, k, max_degree)?;
    Ok(insert_at_start(z, &f)?.truncate(max_degree))
}

/// Connected sum with `y` (diagrams on one string) along the closed
/// component `c`.
pub fn connect_sum_string(z: &Element, c: usize, y: &Element, max_degree: usize) -> Result<Element> {
    let skel = z
        .support
        .skeleton()
        .ok_or_else(|| Error::Argument("connected sum needs a skeleton".into()))?;
    if !skel.is_circle(c) {
        return Err(Error::Argument(format!("component {c} is not closed")));
    }
    let mut f = Element::zero(z.support.clone());
    for (g, k) in y.iter() {
        f.push(&g.map_anchors(|_| c as u8), k.clone())?;
    }
    Ok(insert_at_start(z, &f)?.truncate(max_degree))
}

/// Coordinates of `x` in the quotient of its space by the default
/// relations, degree by degree.
pub fn quotient_coordinates(x: &Element, max_degree: usize) -> Result<Vec<Vec<Rational>>> {
    (0..=max_degree)
        .map(|d| {
            let q = crate::relations::default_quotient(&x.support, d)?;
            q.reduce(&x.part(d).terms)
        })
        .collect()
}

/// Places a diagram on one string onto string `i` of `n`.
pub fn on_string(x: &Element, i: usize, n: usize) -> Result<Element> {
    if x.support != Support::strings(1) {
        return Err(Error::Argument("expected diagrams on one string".into()));
    }
    let mut out = Element::zero(Support::strings(n));
    for (g, c) in x.iter() {
        out.push(&g.map_anchors(|_| i as u8), c.clone())?;
    }
    Ok(out)
}

/// The data `Z^` needs: `Phi`, its inverse, `nu` and `sqrt(nu)`.
#[derive(Clone, Debug)]
pub struct ZhatContext {
    pub max_degree: usize,
    pub phi: Element,
    pub phi_inv: Element,
    pub nu: Element,
    pub sqrt_nu: Element,
}

/// The zigzag `(I Y-) . A[+|-|+] . (Y+ I)` whose closure defines `nu`.
pub const ZIGZAG: &str = "(I Y-)\nA[+|-|+]\n(Y+ I)\n";

impl ZhatContext {
    /// Builds the context from an associator solved far enough for
    /// `max_degree` (odd parts of `phi` vanish).
    pub fn new(state: &AssociatorState, max_degree: usize) -> Result<Self> {
        if max_degree > state.solved_through + 1 {
            return Err(Error::Precondition(format!(
                "associator solved through degree {}, need {max_degree}",
                state.solved_through
            )));
        }
        let big = state.big_phi(max_degree)?;
        let inv = series_inverse(&big)?;
        let one = Element::one(Support::strings(1));
        let bare = ZhatContext {
            max_degree,
            phi: big.value.clone(),
            phi_inv: inv.value.clone(),
            nu: one.clone(),
            sqrt_nu: one,
        };
        let zig = bare.zhat(&ZIGZAG.parse()?)?;
        let nu = series_inverse(&GradedSeries::new(zig.value, max_degree))?;
        let sqrt = series_sqrt(&nu)?;
        Ok(ZhatContext {
            nu: nu.value,
            sqrt_nu: sqrt.value,
            ..bare
        })
    }

    fn generator(&self, g: &Generator) -> Result<Tangle> {
        let n = self.max_degree;
        let plus = Word::Leaf(Sign::Plus);
        let minus = Word::Leaf(Sign::Minus);
        let mut t = match &g.kind {
            GenKind::Strand => Tangle::identity(&plus, n),
            GenKind::XPlus | GenKind::XMinus => {
                let sign: i8 = if g.kind == GenKind::XPlus { 1 } else { -1 };
                let w = Word::tensor(&plus, &plus);
                let shape = TangleShape {
                    top: w.clone(),
                    bottom: w,
                    strands: vec![
                        Strand {
                            start: Some(End::Top(0)),
                            end: Some(End::Bottom(1)),
                        },
                        Strand {
                            start: Some(End::Top(1)),
                            end: Some(End::Bottom(0)),
                        },
                    ],
                    crossings: vec![Crossing { a: 0, b: 1, sign }],
                };
                let c = Rational::new((sign as i64).into(), 2.into());
                let value = exp_of(&Support::strings(2), &c, n, |k| {
                    Graph::chords(&vec![(0, 1); k]).sort_legs_by_anchor()
                })?;
                Tangle::with_value(shape, value, n)?
            }
            GenKind::YPlus => {
                let shape = TangleShape {
                    top: Word::tensor(&plus, &minus),
                    bottom: Word::Empty,
                    strands: vec![Strand {
                        start: Some(End::Top(0)),
                        end: Some(End::Top(1)),
                    }],
                    crossings: Vec::new(),
                };
                Tangle::with_value(shape, self.sqrt_nu.clone(), n)?
            }
            GenKind::YMinus => {
                let shape = TangleShape {
                    top: Word::Empty,
                    bottom: Word::tensor(&minus, &plus),
                    strands: vec![Strand {
                        start: Some(End::Bottom(0)),
                        end: Some(End::Bottom(1)),
                    }],
                    crossings: Vec::new(),
                };
                Tangle::with_value(shape, self.sqrt_nu.clone(), n)?
            }
            GenKind::Assoc(w1, w2, w3) => self.associator(w1, w2, w3, false)?,
            GenKind::AssocInv(w1, w2, w3) => self.associator(w1, w2, w3, true)?,
        };
        for &k in &g.reversed {
            t = t.reverse(k)?;
        }
        Ok(t)
    }

    /// `T_{w1,w2,w3}`: top `w1(w2w3)`, bottom `(w1w2)w3`, value the cabled
    /// associator with `S` applied on upward strands. The inverse swaps the
    /// two words and uses `Phi^{-1}`.
    fn associator(&self, w1: &Word, w2: &Word, w3: &Word, inverse: bool) -> Result<Tangle> {
        let right = Word::tensor(w1, &Word::tensor(w2, w3));
        let left = Word::tensor(&Word::tensor(w1, w2), w3);
        let mut shape = TangleShape::identity(&right);
        if inverse {
            shape.top = left;
        } else {
            shape.bottom = left;
        }
        let mut x = if inverse { self.phi_inv.clone() } else { self.phi.clone() };
        x = delta_power(&x, 3, w3.len())?.truncate(self.max_degree);
        x = delta_power(&x, 2, w2.len())?.truncate(self.max_degree);
        x = delta_power(&x, 1, w1.len())?.truncate(self.max_degree);
        for (i, s) in right.flat().iter().enumerate() {
            if *s == Sign::Minus {
                x = reverse_element(&x, i)?;
            }
        }
        Tangle::with_value(shape, x, self.max_degree)
    }

    fn slice(&self, s: &SliceExpr) -> Result<Tangle> {
        match s {
            SliceExpr::Gen(g) => self.generator(g),
            SliceExpr::Tensor(a, b) => self.slice(a)?.tensor(&self.slice(b)?),
        }
    }

    /// Values of the slices, top to bottom.
    pub fn slices(&self, w: &QTangleWord) -> Result<Vec<Tangle>> {
        w.slices.iter().map(|s| self.slice(s)).collect()
    }

    /// `Z^` of a word: slice values composed top to bottom.
    pub fn zhat(&self, w: &QTangleWord) -> Result<Tangle> {
        let mut it = self.slices(w)?.into_iter();
        let mut acc = it.next().ok_or_else(|| Error::Argument("empty tangle word".into()))?;
        for t in it {
            acc = acc.compose(&t)?;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// closed string links
// ---------------------------------------------------------------------------

/// A framed link given as the closure of a string link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    pub word: QTangleWord,
    pub framings: Vec<i64>,
}

impl FromStr for SurgeryPresentation {
    type Err = Error;

    /// A `framing k1 k2 ...` line followed by the slices of the string link.
    fn from_str(s: &str) -> Result<Self> {
        let mut framings = None;
        let mut rest = String::new();
        for line in s.lines() {
            let l = strip_comment(line);
            if let Some(f) = l.strip_prefix("framing") {
                let v = f
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad framing `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                framings = Some(v);
            } else if !l.is_empty() {
                rest.push_str(l);
                rest.push('\n');
            }
        }
        let framings = framings.ok_or_else(|| Error::Parse("missing `framing` line".into()))?;
        Ok(SurgeryPresentation {
            word: rest.parse()?,
            framings,
        })
    }
}

impl fmt::Display for SurgeryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "framing")?;
        for k in &self.framings {
            write!(f, " {k}")?;
        }
        writeln!(f)?;
        write!(f, "{}", self.word)
    }
}

/// `z-check` of a closed string link: the value on strings whose closure is
/// `Z^(L) # nu` on every component, and the linking matrix of `L`.
#[derive(Clone, Debug)]
pub struct CheckZ {
    pub strings: Element,
    pub linking: Vec<Vec<i64>>,
    pub max_degree: usize,
}

impl CheckZ {
    /// The value on circles.
    pub fn closed(&self) -> Result<Element> {
        pr(&self.strings)
    }

    pub fn components(&self) -> usize {
        self.linking.len()
    }
}

impl ZhatContext {
    /// Evaluates a string-link word with the framings changed to the
    /// requested ones.
    pub fn string_link(&self, l: &SurgeryPresentation) -> Result<(Element, Vec<Vec<i64>>)> {
        let t = self.zhat(&l.word)?;
        if !t.shape.is_string_link() {
            return Err(Error::Precondition("surgery words must be string links".into()));
        }
        let k = t.shape.strands.len();
        if l.framings.len() != k {
            return Err(Error::Argument(format!("{} framings for {k} components", l.framings.len())));
        }
        let closed = t.close()?;
        let mut lk = closed.shape.linking_matrix()?;
        // closure keeps strand order for string links
        let mut value = t.value.clone();
        for i in 0..k {
            let shift = l.framings[i] - lk[i][i];
            if shift != 0 {
                let f = framing_factor(&value.support, i, shift, self.max_degree)?;
                value = insert_at_start(&value, &f)?.truncate(self.max_degree);
            }
            lk[i][i] = l.framings[i];
        }
        Ok((value, lk))
    }

    /// `Z^(T) Delta^{(l)}(nu) (nu (x) ... (x) nu)`, whose closure is
    /// `Z^(L)` connected-summed with `nu` on every component.
    pub fn check_z(&self, l: &SurgeryPresentation) -> Result<CheckZ> {
        let (mut value, linking) = self.string_link(l)?;
        let k = linking.len();
        let n = self.max_degree;
        if k > 0 {
            let cabled = delta_power(&self.nu, 1, k)?.truncate(n);
            value = stack_truncated(&value, &cabled, Some(n))?;
            for i in 0..k {
                value = stack_truncated(&value, &on_string(&self.nu, i, k)?, Some(n))?;
            }
        }
        Ok(CheckZ {
            strings: value,
            linking,
            max_degree: n,
        })
    }
}

// ---------------------------------------------------------------------------
// i-filter splitting
// ---------------------------------------------------------------------------

/// Least number of internal vertices over the terms.
pub fn i_filter(x: &Element) -> Option<usize> {
    x.iter().map(|(g, _)| g.n_int()).min()
}

#[derive(Clone, Debug)]
pub struct IFilterSplit {
    /// Homogeneous parts of `log Z^` in normal form.
    pub xi: BTreeMap<usize, SymComb>,
    /// Whether every normal-form monomial of `log Z^` is a single atom.
    pub primitive: bool,
    /// `z_m` as diagrams on strings.
    pub z: BTreeMap<usize, Element>,
}

/// Writes `Z^ = exp(xi_2 + xi_3 + ...)` and groups the terms
/// `x_{n_1}...x_{n_k}/k!` of the expansion by `m = q - 2`, where `q` is the
/// largest of `k, n_1 + 1, ..., n_k + 1`.
pub fn ifilter_split(zhat: &Element, linking: &[Vec<i64>], max_degree: usize) -> Result<IFilterSplit> {
    if linking.iter().flatten().any(|&x| x != 0) {
        return Err(Error::Precondition("the linking matrix is not zero".into()));
    }
    let n = match zhat.support.arity() {
        Some(n) if matches!(zhat.support, Support::Skeleton(_)) => n,
        _ => return Err(Error::Argument("expected diagrams on strings".into())),
    };
    let log = series_log(&GradedSeries::new(zhat.clone(), max_degree))?;
    let mut xi = BTreeMap::new();
    let mut parts = BTreeMap::new();
    let mut primitive = true;
    for d in 1..=max_degree {
        let nf = p_normal_form(&log.part(d))?;
        if nf.iter().any(|(m, _)| m.len() != 1) {
            primitive = false;
        }
        if !nf.is_zero() {
            parts.insert(d, crate::associator::diagrams_of(&nf, n)?);
        }
        xi.insert(d, nf);
    }
    let mut z: BTreeMap<usize, Element> = BTreeMap::new();
    z.insert(0, Element::one(zhat.support.clone()));
    // ordered tuples of degrees with total <= max_degree
    let degrees: Vec<usize> = parts.keys().copied().collect();
    let mut stack: Vec<(Vec<usize>, Element)> = vec![(Vec::new(), Element::one(zhat.support.clone()))];
    while let Some((tuple, prod)) = stack.pop() {
        let total: usize = tuple.iter().sum();
        for &d in &degrees {
            if total + d > max_degree {
                continue;
            }
            let p = stack_truncated(&prod, &parts[&d], Some(max_degree))?;
            let mut t = tuple.clone();
            t.push(d);
            let k = t.len();
            let q = t.iter().map(|&x| x + 1).max().unwrap().max(k);
            let m = q.saturating_sub(2);
            let term = p.scaled(&(Rational::from_int(1) / Rational::from_bigint(crate::scalar::factorial(k as u64))));
            let slot = z.entry(m).or_insert_with(|| Element::zero(zhat.support.clone()));
            *slot = slot.add(&term)?;
            stack.push((t, p));
        }
    }
    z.retain(|_, v| !v.is_zero());
    Ok(IFilterSplit { xi, primitive, z })
}

/// Built-in words. Braids close on one side with nested cups and caps;
/// every crossing is blackboard framed.
pub mod fixtures {
    /// Unknot as one cup and one cap.
    pub const UNKNOT: &str = "Y-\nY+R<0>\n";

    /// Unknot with a zigzag on its right-hand arc.
    pub const UNKNOT_ZIGZAG: &str = "\
Y-
(I- (I Y-))
(I- A[+|-|+])
(I- (Y+ I))
Y+R<0>
";

    /// Closure of the braid `s1^3` on the left (framing 3).
    pub const TREFOIL: &str = "\
Y-
(I- (Y- I))
(I- A-[-|+|+])
(I- (I- X+))
(I- (I- X+))
(I- (I- X+))
(I- A[-|+|+])
(I- (Y+R<0> I))
Y+R<0>
";

    /// Closure of the braid `s1^3` on the right (framing 3).
    pub const TREFOIL_RIGHT: &str = "\
Y-R<0>
((I Y-R<0>) I-)
(A[+|+|-] I-)
((X+ I-) I-)
((X+ I-) I-)
((X+ I-) I-)
(A-[+|+|-] I-)
((I Y+) I-)
Y+
";

    /// Unknot with framing `+1`.
    pub const U_PLUS: &str = "framing 1\nI\n";
    /// Unknot with framing `-1`.
    pub const U_MINUS: &str = "framing -1\nI\n";
    /// Unknot with framing 2.
    pub const UNKNOT_FRAMING_2: &str = "framing 2\nI\n";
    /// Two-component unlink, framing 0.
    pub const UNLINK2: &str = "framing 0 0\n(I I)\n";

    /// Two `+1`-framed unknots, and the result of sliding the second over
    /// the first: a Hopf link with framings 1 and 2.
    pub const HANDLE_SLIDE: (&str, &str) = ("framing 1 1\n(I I)\n", "framing 1 2\nX+\nX+\n");

    /// The commutator of the pure braids `s1^2` and `s2^2`: linking matrix
    /// zero, nontrivial triple linking.
    pub const COMMUTATOR: &str = "\
framing 0 0 0
(X+ I)
(X+ I)
A-[+|+|+]
(I X+)
(I X+)
A[+|+|+]
(X- I)
(X- I)
A-[+|+|+]
(I X-)
(I X-)
A[+|+|+]
";
}
