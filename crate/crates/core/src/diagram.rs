//! Uni-trivalent dashed graphs, their supports and canonical forms.
//!
//! A [`Graph`] stores external (univalent) vertices first and trivalent
//! vertices after them. Half-edge `h < n_ext` is the single half-edge of leg
//! `h`; internal vertex `j` owns half-edges `n_ext + 3j + {0,1,2}` listed in
//! its cyclic order. `partner` is the fixed-point-free involution pairing
//! half-edges into edges. Each leg carries an `anchor`: a skeleton component
//! index for diagrams, or a color for Chinese characters.
//!
//! On a skeleton, legs are listed by component and, within a component, in
//! slot order (the orientation order along the component). Canonical forms
//! relabel internal vertices by breadth-first discovery and normalize each
//! cyclic triple so the port of discovery comes first; a reversed triple is
//! a different graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub const UNPAIRED: u16 = u16::MAX;

/// Default bound on enumerated degree.
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Interval,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Skeleton(pub Vec<Component>);

impl Skeleton {
    pub fn strings(n: usize) -> Self {
        Skeleton(vec![Component::Interval; n])
    }

    pub fn circles(n: usize) -> Self {
        Skeleton(vec![Component::Circle; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_circle(&self, c: usize) -> bool {
        self.0.get(c) == Some(&Component::Circle)
    }

    pub fn all_circles(&self) -> bool {
        self.0.iter().all(|c| *c == Component::Circle)
    }

    pub fn all_intervals(&self) -> bool {
        self.0.iter().all(|c| *c == Component::Interval)
    }

    pub fn tags(&self) -> String {
        self.0
            .iter()
            .map(|c| match c {
                Component::Interval => "I",
                Component::Circle => "O",
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Where the legs of a graph live.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Support {
    /// Diagrams on an ordered one-manifold.
    Skeleton(Skeleton),
    /// Chinese characters with legs colored `0..=n` (color 0 only in the
    /// auxiliary spaces used to invert the symmetrization map).
    Colored(u8),
    /// Closed trivalent graphs (no legs).
    Closed,
}

impl Support {
    pub fn strings(n: usize) -> Self {
        Support::Skeleton(Skeleton::strings(n))
    }

    pub fn circles(n: usize) -> Self {
        Support::Skeleton(Skeleton::circles(n))
    }

    pub fn skeleton(&self) -> Option<&Skeleton> {
        match self {
            Support::Skeleton(s) => Some(s),
            _ => None,
        }
    }

    /// Number of strings for a support made only of intervals.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Support::Skeleton(s) if s.all_intervals() => Some(s.len()),
            Support::Colored(n) => Some(*n as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Skeleton(s) => write!(f, "skeleton {}", s.tags()),
            Support::Colored(n) => write!(f, "colors {n}"),
            Support::Closed => write!(f, "closed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    Leg(usize),
    Internal(usize),
}

/// A vertex-oriented uni-trivalent graph with anchored legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    anchors: Vec<u8>,
    partner: Vec<u16>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            anchors: Vec::new(),
            partner: Vec::new(),
        }
    }

    /// Builds and validates a graph.
    pub fn new(anchors: Vec<u8>, partner: Vec<u16>) -> Result<Self> {
        let g = Graph { anchors, partner };
        g.validate()?;
        Ok(g)
    }

    /// A graph of isolated chords: `chords[k] = (anchor_a, anchor_b)`; legs
    /// are listed in the given order (two per chord).
    pub fn chords(chords: &[(u8, u8)]) -> Self {
        let mut anchors = Vec::with_capacity(2 * chords.len());
        let mut partner = Vec::with_capacity(2 * chords.len());
        for (k, &(a, b)) in chords.iter().enumerate() {
            anchors.push(a);
            anchors.push(b);
            partner.push((2 * k + 1) as u16);
            partner.push((2 * k) as u16);
        }
        Graph { anchors, partner }
    }

    pub fn validate(&self) -> Result<()> {
        let e = self.anchors.len();
        let h = self.partner.len();
        if h < e || (h - e) % 3 != 0 {
            return Err(Error::Structural(format!(
                "half-edge count {h} inconsistent with {e} legs"
            )));
        }
        if h >= UNPAIRED as usize {
            return Err(Error::Structural("graph too large".into()));
        }
        for (i, &p) in self.partner.iter().enumerate() {
            let p = p as usize;
            if p >= h {
                return Err(Error::Structural(format!("dangling half-edge {i}")));
            }
            if p == i {
                return Err(Error::Structural(format!("half-edge {i} paired with itself")));
            }
            if self.partner[p] as usize != i {
                return Err(Error::Structural(format!("pairing not symmetric at {i}")));
            }
        }
        Ok(())
    }

    pub fn anchors(&self) -> &[u8] {
        &self.anchors
    }

    pub fn partners(&self) -> &[u16] {
        &self.partner
    }

    pub fn n_ext(&self) -> usize {
        self.anchors.len()
    }

    pub fn n_int(&self) -> usize {
        (self.partner.len() - self.anchors.len()) / 3
    }

    pub fn n_half(&self) -> usize {
        self.partner.len()
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        (self.n_ext() + self.n_int()) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h] as usize
    }

    pub fn vertex_of(&self, h: usize) -> Vertex {
        let e = self.n_ext();
        if h < e {
            Vertex::Leg(h)
        } else {
            Vertex::Internal((h - e) / 3)
        }
    }

    /// Port index (0..3) of an internal half-edge.
    pub fn port_of(&self, h: usize) -> usize {
        (h - self.n_ext()) % 3
    }

    pub fn port(&self, j: usize, q: usize) -> usize {
        self.n_ext() + 3 * j + q
    }

    /// Per-vertex component ids (legs first, then internal vertices).
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let e = self.n_ext();
        let nv = e + self.n_int();
        let vid = |h: usize| if h < e { h } else { e + (h - e) / 3 };
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for h in 0..self.n_half() {
            let a = find(&mut parent, vid(h));
            let b = find(&mut parent, vid(self.partner(h)));
            if a != b {
                parent[a] = b;
            }
        }
        let mut ids = vec![usize::MAX; nv];
        let mut next = 0;
        let mut root_id = vec![usize::MAX; nv];
        for v in 0..nv {
            let r = find(&mut parent, v);
            if root_id[r] == usize::MAX {
                root_id[r] = next;
                next += 1;
            }
            ids[v] = root_id[r];
        }
        (ids, next)
    }

    pub fn num_components(&self) -> usize {
        self.component_ids().1
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// True when some edge joins two ports of one trivalent vertex. Such a
    /// graph equals its own orientation reversal, so it vanishes modulo AS
    /// (and modulo STU on a skeleton); enumeration never produces one.
    pub fn has_self_loop(&self) -> bool {
        let e = self.n_ext();
        (e..self.n_half()).any(|h| {
            let p = self.partner(h);
            p >= e && (p - e) / 3 == (h - e) / 3
        })
    }

    /// True when every connected component contains a leg.
    pub fn every_component_has_leg(&self) -> bool {
        let (ids, n) = self.component_ids();
        let mut has = vec![false; n];
        for l in 0..self.n_ext() {
            has[ids[l]] = true;
        }
        has.into_iter().all(|b| b)
    }

    /// Legs per anchor value `0..n`.
    pub fn leg_counts(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &a in &self.anchors {
            if (a as usize) < n {
                c[a as usize] += 1;
            }
        }
        c
    }

    /// The subgraph made of the components flagged in `keep` (indexed by the
    /// ids of [`Graph::component_ids`]); legs keep their relative order.
    pub fn restrict(&self, ids: &[usize], keep: &[bool]) -> Graph {
        let e = self.n_ext();
        let legs: Vec<usize> = (0..e).filter(|&l| keep[ids[l]]).collect();
        let ints: Vec<usize> = (0..self.n_int()).filter(|&j| keep[ids[e + j]]).collect();
        let ne = legs.len();
        let mut new_leg = vec![usize::MAX; e];
        for (i, &l) in legs.iter().enumerate() {
            new_leg[l] = i;
        }
        let mut new_int = vec![usize::MAX; self.n_int()];
        for (i, &j) in ints.iter().enumerate() {
            new_int[j] = i;
        }
        let map = |h: usize| {
            if h < e {
                new_leg[h]
            } else {
                ne + 3 * new_int[(h - e) / 3] + (h - e) % 3
            }
        };
        let mut partner = vec![0u16; ne + 3 * ints.len()];
        for &l in &legs {
            partner[map(l)] = map(self.partner(l)) as u16;
        }
        for &j in &ints {
            for q in 0..3 {
                let h = e + 3 * j + q;
                partner[map(h)] = map(self.partner(h)) as u16;
            }
        }
        let anchors = legs.iter().map(|&l| self.anchors[l]).collect();
        Graph { anchors, partner }
    }

    /// Disjoint union; legs of `self` precede legs of `other`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let (e1, e2) = (self.n_ext(), other.n_ext());
        let (i1, i2) = (self.n_int(), other.n_int());
        let e = e1 + e2;
        let map1 = |h: usize| if h < e1 { h } else { e + (h - e1) };
        let map2 = |h: usize| if h < e2 { e1 + h } else { e + 3 * i1 + (h - e2) };
        let mut anchors = Vec::with_capacity(e);
        anchors.extend_from_slice(&self.anchors);
        anchors.extend_from_slice(&other.anchors);
        let mut partner = vec![0u16; e + 3 * (i1 + i2)];
        for h in 0..self.n_half() {
            partner[map1(h)] = map1(self.partner(h)) as u16;
        }
        for h in 0..other.n_half() {
            partner[map2(h)] = map2(other.partner(h)) as u16;
        }
        Graph { anchors, partner }
    }

    /// Reorders legs: new leg `i` is old leg `order[i]`.
    pub fn permute_legs(&self, order: &[usize]) -> Graph {
        let e = self.n_ext();
        debug_assert_eq!(order.len(), e);
        let mut inv = vec![0usize; e];
        for (i, &o) in order.iter().enumerate() {
            inv[o] = i;
        }
        let map = |h: usize| if h < e { inv[h] } else { h };
        let anchors = order.iter().map(|&o| self.anchors[o]).collect();
        let mut partner = vec![0u16; self.n_half()];
        for h in 0..self.n_half() {
            partner[map(h)] = map(self.partner(h)) as u16;
        }
        Graph { anchors, partner }
    }

    /// Stable sort of legs by anchor (slot order inside an anchor is kept).
    pub fn sort_legs_by_anchor(&self) -> Graph {
        let mut order: Vec<usize> = (0..self.n_ext()).collect();
        order.sort_by_key(|&i| self.anchors[i]);
        self.permute_legs(&order)
    }

    pub fn map_anchors(&self, f: impl Fn(u8) -> u8) -> Graph {
        Graph {
            anchors: self.anchors.iter().map(|&a| f(a)).collect(),
            partner: self.partner.clone(),
        }
    }

    pub fn set_anchor(&mut self, leg: usize, a: u8) {
        self.anchors[leg] = a;
    }

    /// Reverses the cyclic orientation at internal vertex `j`.
    pub fn reverse_vertex(&self, j: usize) -> Graph {
        let e = self.n_ext();
        let (p1, p2) = (e + 3 * j + 1, e + 3 * j + 2);
        let swap = |h: usize| {
            if h == p1 {
                p2
            } else if h == p2 {
                p1
            } else {
                h
            }
        };
        let mut partner = vec![0u16; self.n_half()];
        for h in 0..self.n_half() {
            partner[swap(h)] = swap(self.partner(h)) as u16;
        }
        Graph {
            anchors: self.anchors.clone(),
            partner,
        }
    }

    /// Removes the listed legs, which must pair up as `(a, b)`: each pair is
    /// identified into a bivalent point and smoothed away. Returns the
    /// resulting graph and the number of closed loops without vertices
    /// produced by the smoothing.
    pub fn splice_legs(&self, pairs: &[(usize, usize)]) -> (Graph, usize) {
        let e = self.n_ext();
        let mut glued = vec![usize::MAX; e];
        for &(a, b) in pairs {
            glued[a] = b;
            glued[b] = a;
        }
        let removed = |l: usize| glued[l] != usize::MAX;
        // Follow an edge starting at half-edge h (whose partner is examined)
        // through glued legs until reaching a kept half-edge.
        let resolve = |mut h: usize| -> Option<usize> {
            let mut steps = 0;
            loop {
                let p = self.partner(h);
                if p < e && removed(p) {
                    h = glued[p];
                    steps += 1;
                    if steps > e + 1 {
                        return None;
                    }
                } else {
                    return Some(p);
                }
            }
        };
        let kept_legs: Vec<usize> = (0..e).filter(|&l| !removed(l)).collect();
        let ne = kept_legs.len();
        let mut new_leg = vec![usize::MAX; e];
        for (i, &l) in kept_legs.iter().enumerate() {
            new_leg[l] = i;
        }
        let map = |h: usize| if h < e { new_leg[h] } else { ne + (h - e) };
        let mut partner = vec![0u16; ne + 3 * self.n_int()];
        for h in 0..self.n_half() {
            if h < e && removed(h) {
                continue;
            }
            let p = resolve(h).expect("kept half-edge cannot lie on a loop");
            partner[map(h)] = map(p) as u16;
        }
        // Loops: cycles consisting only of removed legs.
        let mut seen = vec![false; e];
        let mut loops = 0;
        for &(a, _) in pairs {
            if seen[a] {
                continue;
            }
            // Walk a -> partner -> glued -> ... ; a loop iff we return to a
            // without hitting a kept half-edge.
            let mut cur = a;
            let mut is_loop = true;
            let mut path = Vec::new();
            loop {
                path.push(cur);
                let p = self.partner(cur);
                if p >= e || !removed(p) {
                    is_loop = false;
                    break;
                }
                path.push(p);
                let next = glued[p];
                if next == a {
                    break;
                }
                cur = next;
                if path.len() > 2 * e + 2 {
                    is_loop = false;
                    break;
                }
            }
            if is_loop {
                loops += 1;
                for l in path {
                    seen[l] = true;
                    seen[glued[l]] = true;
                }
            }
        }
        let anchors = kept_legs.iter().map(|&l| self.anchors[l]).collect();
        (Graph { anchors, partner }, loops)
    }

    /// Byte encoding of the graph (meaningful as a key once canonical).
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.anchors.len() + 2 * self.partner.len());
        out.extend_from_slice(&(self.n_ext() as u16).to_be_bytes());
        out.extend_from_slice(&(self.n_int() as u16).to_be_bytes());
        out.extend_from_slice(&self.anchors);
        for p in &self.partner {
            out.extend_from_slice(&p.to_be_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Graph> {
        let bad = || Error::Structural("truncated key".into());
        if bytes.len() < 4 {
            return Err(bad());
        }
        let e = u16::from_be_bytes([bytes[0], bytes[1]]) as usize;
        let i = u16::from_be_bytes([bytes[2], bytes[3]]) as usize;
        let h = e + 3 * i;
        if bytes.len() != 4 + e + 2 * h {
            return Err(bad());
        }
        let anchors = bytes[4..4 + e].to_vec();
        let partner = bytes[4 + e..]
            .chunks(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]))
            .collect();
        Graph::new(anchors, partner)
    }
}

/// Canonical key: the canonical graph of a diagram or character.
pub type CanonicalKey = Graph;

// ---------------------------------------------------------------------------
// canonical forms
// ---------------------------------------------------------------------------

/// Relabels internal vertices breadth-first from the legs, taken in the given
/// order (which becomes the new leg order). `None` when some internal vertex
/// is unreachable from the legs.
fn relabel_from_legs(g: &Graph, leg_order: &[usize]) -> Option<Graph> {
    let e = g.n_ext();
    let ni = g.n_int();
    let mut new_leg = vec![usize::MAX; e];
    for (i, &l) in leg_order.iter().enumerate() {
        new_leg[l] = i;
    }
    let mut new_int: Vec<Option<(usize, usize)>> = vec![None; ni];
    let mut next_int = 0;
    let mut queue = VecDeque::new();
    let visit = |h: usize,
                     new_int: &mut Vec<Option<(usize, usize)>>,
                     queue: &mut VecDeque<usize>,
                     next_int: &mut usize| {
        let p = g.partner(h);
        if p >= e {
            let j = (p - e) / 3;
            if new_int[j].is_none() {
                new_int[j] = Some((*next_int, (p - e) % 3));
                *next_int += 1;
                queue.push_back(j);
            }
        }
    };
    for &l in leg_order {
        visit(l, &mut new_int, &mut queue, &mut next_int);
        while let Some(j) = queue.pop_front() {
            let rot = new_int[j].unwrap().1;
            for q in 0..3 {
                let h = e + 3 * j + (rot + q) % 3;
                visit(h, &mut new_int, &mut queue, &mut next_int);
            }
        }
    }
    if next_int != ni {
        return None;
    }
    Some(apply_labels(g, &new_leg, &new_int))
}

fn apply_labels(g: &Graph, new_leg: &[usize], new_int: &[Option<(usize, usize)>]) -> Graph {
    let e = g.n_ext();
    let map = |h: usize| -> usize {
        if h < e {
            new_leg[h]
        } else {
            let j = (h - e) / 3;
            let port = (h - e) % 3;
            let (lab, rot) = new_int[j].unwrap();
            e + 3 * lab + (port + 3 - rot) % 3
        }
    };
    let mut anchors = vec![0u8; e];
    for l in 0..e {
        anchors[new_leg[l]] = g.anchors[l];
    }
    let mut partner = vec![0u16; g.n_half()];
    for h in 0..g.n_half() {
        partner[map(h)] = map(g.partner(h)) as u16;
    }
    Graph { anchors, partner }
}

fn canonical_on_skeleton(g: &Graph, skel: &Skeleton) -> Result<Graph> {
    let e = g.n_ext();
    if g.anchors.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Structural("legs are not listed by component".into()));
    }
    if let Some(&a) = g.anchors.last() {
        if a as usize >= skel.len() {
            return Err(Error::Structural(format!("leg on missing component {a}")));
        }
    }
    // Leg ranges per component.
    let mut ranges = Vec::with_capacity(skel.len());
    let mut start = 0;
    for c in 0..skel.len() {
        let mut end = start;
        while end < e && g.anchors[end] as usize == c {
            end += 1;
        }
        ranges.push((start, end));
        start = end;
    }
    let rotatable: Vec<usize> = (0..skel.len())
        .filter(|&c| skel.is_circle(c) && ranges[c].1 - ranges[c].0 > 1)
        .collect();
    let mut rot = vec![0usize; skel.len()];
    let mut best: Option<Graph> = None;
    loop {
        let mut order = Vec::with_capacity(e);
        for c in 0..skel.len() {
            let (s, t) = ranges[c];
            let m = t - s;
            for k in 0..m {
                order.push(s + (k + rot[c]) % m);
            }
        }
        let cand = relabel_from_legs(g, &order).ok_or_else(|| {
            Error::Structural("a dashed component carries no leg".into())
        })?;
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
        // odometer over circle rotations
        let mut advanced = false;
        for &c in &rotatable {
            let m = ranges[c].1 - ranges[c].0;
            rot[c] += 1;
            if rot[c] < m {
                advanced = true;
                break;
            }
            rot[c] = 0;
        }
        if !advanced {
            break;
        }
    }
    Ok(best.unwrap_or_else(Graph::empty))
}

#[derive(Clone, Copy)]
enum Start {
    Leg(usize),
    Port(usize),
}

/// Canonical labeling of the connected component containing `start`,
/// returned as a standalone graph.
fn traverse_component(g: &Graph, start: Start) -> Graph {
    let e = g.n_ext();
    let ni = g.n_int();
    let mut new_leg = vec![usize::MAX; e];
    let mut new_int: Vec<Option<(usize, usize)>> = vec![None; ni];
    let mut legs = Vec::new();
    let mut ints = Vec::new();
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    match start {
        Start::Leg(l) => {
            new_leg[l] = 0;
            legs.push(l);
            queue.push_back(Vertex::Leg(l));
        }
        Start::Port(h) => {
            let j = (h - e) / 3;
            new_int[j] = Some((0, (h - e) % 3));
            ints.push(j);
            queue.push_back(Vertex::Internal(j));
        }
    }
    while let Some(v) = queue.pop_front() {
        let ports: Vec<usize> = match v {
            Vertex::Leg(l) => vec![l],
            Vertex::Internal(j) => {
                let rot = new_int[j].unwrap().1;
                (0..3).map(|q| e + 3 * j + (rot + q) % 3).collect()
            }
        };
        for h in ports {
            let p = g.partner(h);
            if p < e {
                if new_leg[p] == usize::MAX {
                    new_leg[p] = legs.len();
                    legs.push(p);
                    queue.push_back(Vertex::Leg(p));
                }
            } else {
                let j = (p - e) / 3;
                if new_int[j].is_none() {
                    new_int[j] = Some((ints.len(), (p - e) % 3));
                    ints.push(j);
                    queue.push_back(Vertex::Internal(j));
                }
            }
        }
    }
    let ce = legs.len();
    let map = |h: usize| -> usize {
        if h < e {
            new_leg[h]
        } else {
            let j = (h - e) / 3;
            let (lab, rot) = new_int[j].unwrap();
            ce + 3 * lab + ((h - e) % 3 + 3 - rot) % 3
        }
    };
    let anchors: Vec<u8> = legs.iter().map(|&l| g.anchors[l]).collect();
    let mut partner = vec![0u16; ce + 3 * ints.len()];
    for &l in &legs {
        partner[map(l)] = map(g.partner(l)) as u16;
    }
    for &j in &ints {
        for q in 0..3 {
            let h = e + 3 * j + q;
            partner[map(h)] = map(g.partner(h)) as u16;
        }
    }
    Graph { anchors, partner }
}

/// Splits a graph into its connected components, each canonically labeled,
/// sorted.
pub fn canonical_components(g: &Graph) -> Vec<Graph> {
    let e = g.n_ext();
    let (ids, n) = g.component_ids();
    let mut best: Vec<Option<Graph>> = vec![None; n];
    let mut has_leg = vec![false; n];
    for l in 0..e {
        has_leg[ids[l]] = true;
    }
    for l in 0..e {
        let c = ids[l];
        let cand = traverse_component(g, Start::Leg(l));
        if best[c].as_ref().map_or(true, |b| cand < *b) {
            best[c] = Some(cand);
        }
    }
    for h in e..g.n_half() {
        let c = ids[e + (h - e) / 3];
        if has_leg[c] {
            continue;
        }
        let cand = traverse_component(g, Start::Port(h));
        if best[c].as_ref().map_or(true, |b| cand < *b) {
            best[c] = Some(cand);
        }
    }
    let mut comps: Vec<Graph> = best.into_iter().map(|b| b.unwrap()).collect();
    comps.sort();
    comps
}

/// Concatenates graphs: all legs first (in order), then all internals.
pub fn concat_graphs(parts: &[Graph]) -> Graph {
    let e: usize = parts.iter().map(|p| p.n_ext()).sum();
    let mut anchors = Vec::with_capacity(e);
    for p in parts {
        anchors.extend_from_slice(&p.anchors);
    }
    let total_int: usize = parts.iter().map(|p| p.n_int()).sum();
    let mut partner = vec![0u16; e + 3 * total_int];
    let (mut leg_off, mut int_off) = (0usize, 0usize);
    for p in parts {
        let pe = p.n_ext();
        let map = |h: usize| {
            if h < pe {
                leg_off + h
            } else {
                e + 3 * int_off + (h - pe)
            }
        };
        for h in 0..p.n_half() {
            partner[map(h)] = map(p.partner(h)) as u16;
        }
        leg_off += pe;
        int_off += p.n_int();
    }
    Graph { anchors, partner }
}

/// Canonical form of a graph on the given support.
pub fn canonicalize(g: &Graph, support: &Support) -> Result<Graph> {
    match support {
        Support::Skeleton(s) => canonical_on_skeleton(g, s),
        Support::Colored(_) => {
            if !g.every_component_has_leg() {
                return Err(Error::Structural(
                    "a component of a Chinese character carries no leg".into(),
                ));
            }
            Ok(concat_graphs(&canonical_components(g)))
        }
        Support::Closed => {
            if g.n_ext() != 0 {
                return Err(Error::Structural("closed graph with legs".into()));
            }
            Ok(concat_graphs(&canonical_components(g)))
        }
    }
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default)]
pub struct EnumFilter {
    pub g_connected: bool,
    pub non_degenerate: bool,
    pub max_legs_per_component: Option<usize>,
}

struct PairingSearch<'a> {
    e: usize,
    ni: usize,
    anchors: &'a [u8],
    interchangeable: bool,
    connected: bool,
    partner: Vec<u16>,
    touched: Vec<bool>,
    out: Vec<Graph>,
}

impl PairingSearch<'_> {
    fn vertex(&self, h: usize) -> usize {
        if h < self.e {
            h
        } else {
            self.e + (h - self.e) / 3
        }
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.partner[a] = b as u16;
        self.partner[b] = a as u16;
    }

    fn unpair(&mut self, a: usize, b: usize) {
        self.partner[a] = UNPAIRED;
        self.partner[b] = UNPAIRED;
    }

    fn run(&mut self) {
        let nh = self.partner.len();
        let h = (0..nh).find(|&h| self.partner[h] == UNPAIRED && self.touched[self.vertex(h)]);
        let Some(h) = h else {
            if self.touched.iter().all(|&t| t) {
                self.out.push(Graph {
                    anchors: self.anchors.to_vec(),
                    partner: self.partner.clone(),
                });
            } else if !self.connected {
                if let Some(l) = (0..self.e).find(|&l| !self.touched[l]) {
                    self.touched[l] = true;
                    self.run();
                    self.touched[l] = false;
                }
            }
            return;
        };
        for h2 in h + 1..nh {
            if self.partner[h2] == UNPAIRED && self.touched[self.vertex(h2)] {
                self.pair(h, h2);
                self.run();
                self.unpair(h, h2);
            }
        }
        let mut seen = BTreeSet::new();
        for l in 0..self.e {
            if self.touched[l] {
                continue;
            }
            if self.interchangeable && !seen.insert(self.anchors[l]) {
                continue;
            }
            self.touched[l] = true;
            self.pair(h, l);
            self.run();
            self.unpair(h, l);
            self.touched[l] = false;
        }
        if let Some(j) = (0..self.ni).find(|&j| !self.touched[self.e + j]) {
            let p = self.e + 3 * j;
            self.touched[self.e + j] = true;
            self.pair(h, p);
            self.run();
            self.unpair(h, p);
            self.touched[self.e + j] = false;
        }
    }
}

/// Raw pairings of the given legs with `n_int` trivalent vertices; every
/// component contains a leg (or, with no legs, the graph is connected).
fn raw_graphs(anchors: &[u8], n_int: usize, interchangeable: bool, connected: bool) -> Vec<Graph> {
    let e = anchors.len();
    let nh = e + 3 * n_int;
    if nh % 2 == 1 {
        return Vec::new();
    }
    let mut s = PairingSearch {
        e,
        ni: n_int,
        anchors,
        interchangeable,
        connected,
        partner: vec![UNPAIRED; nh],
        touched: vec![false; e + n_int],
        out: Vec::new(),
    };
    if nh == 0 {
        return vec![Graph::empty()];
    }
    if e > 0 {
        s.touched[0] = true;
    } else {
        s.touched[0] = true; // internal vertex 0
    }
    s.run();
    s.out
}

fn compositions(total: usize, parts: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(rem: usize, parts: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in min..=max.min(rem) {
            cur.push(k);
            rec(rem - k, parts, min, max, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, min, max, &mut cur, &mut out);
    out
}

/// All diagrams of the given degree on a skeleton, one per canonical key,
/// sorted by key.
pub fn enumerate(skel: &Skeleton, degree: usize, filter: &EnumFilter, cap: usize) -> Result<Vec<Graph>> {
    if degree > cap {
        return Err(Error::Capacity(format!(
            "degree {degree} exceeds the enumeration cap {cap}"
        )));
    }
    let support = Support::Skeleton(skel.clone());
    let k = skel.len();
    let mut keys = BTreeSet::new();
    if degree == 0 {
        if !(filter.non_degenerate && k > 0) && !filter.g_connected {
            keys.insert(Graph::empty());
        }
        return Ok(keys.into_iter().collect());
    }
    for n_int in 0..=2 * degree {
        let e = 2 * degree - n_int;
        if e == 0 {
            continue;
        }
        if filter.g_connected && e > n_int + 2 {
            continue;
        }
        let min = usize::from(filter.non_degenerate);
        let max = filter.max_legs_per_component.unwrap_or(e);
        for comp in compositions(e, k, min, max) {
            let anchors: Vec<u8> = comp
                .iter()
                .enumerate()
                .flat_map(|(c, &m)| std::iter::repeat(c as u8).take(m))
                .collect();
            for g in raw_graphs(&anchors, n_int, false, filter.g_connected) {
                if g.has_self_loop() || (filter.g_connected && !g.is_connected()) {
                    continue;
                }
                keys.insert(canonicalize(&g, &support)?);
            }
        }
    }
    Ok(keys.into_iter().collect())
}

/// Connected Chinese characters with the given multiset of leg colors.
pub fn enumerate_connected_characters(colors: &[u8], degree: usize) -> Vec<Graph> {
    let mut colors = colors.to_vec();
    colors.sort_unstable();
    let e = colors.len();
    if e == 0 || 2 * degree < e {
        return Vec::new();
    }
    let n_int = 2 * degree - e;
    if e > n_int + 2 {
        return Vec::new();
    }
    let mut keys = BTreeSet::new();
    for g in raw_graphs(&colors, n_int, true, true) {
        if g.is_connected() && !g.has_self_loop() {
            keys.insert(concat_graphs(&canonical_components(&g)));
        }
    }
    keys.into_iter().collect()
}

/// Chinese characters (possibly disconnected) with the given color multiset.
pub fn enumerate_characters(colors: &[u8], degree: usize) -> Vec<Graph> {
    let mut colors = colors.to_vec();
    colors.sort_unstable();
    let e = colors.len();
    if 2 * degree < e {
        return Vec::new();
    }
    let n_int = 2 * degree - e;
    let mut keys = BTreeSet::new();
    for g in raw_graphs(&colors, n_int, true, false) {
        if g.every_component_has_leg() && !g.has_self_loop() {
            keys.insert(concat_graphs(&canonical_components(&g)));
        }
    }
    keys.into_iter().collect()
}

/// Connected closed trivalent graphs with `2 * degree` vertices.
pub fn enumerate_connected_closed(degree: usize) -> Vec<Graph> {
    if degree == 0 {
        return Vec::new();
    }
    let mut keys = BTreeSet::new();
    for g in raw_graphs(&[], 2 * degree, false, true) {
        if g.is_connected() && !g.has_self_loop() {
            keys.insert(concat_graphs(&canonical_components(&g)));
        }
    }
    keys.into_iter().collect()
}

// ---------------------------------------------------------------------------
// single-diagram operations
// ---------------------------------------------------------------------------

/// Reverses the orientation of component `c`; the sign is `(-1)^m` for the
/// `m` legs on `c`. The input must be listed by component.
pub fn reverse_component(g: &Graph, skel: &Skeleton, c: usize) -> Result<(Graph, i32)> {
    if c >= skel.len() {
        return Err(Error::Argument(format!("no component {c}")));
    }
    let mut order: Vec<usize> = (0..g.n_ext()).collect();
    let idx: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&l| g.anchors[l] as usize == c)
        .collect();
    let m = idx.len();
    for (k, &pos) in idx.iter().enumerate() {
        order[pos] = idx[m - 1 - k];
    }
    let out = canonicalize(&g.permute_legs(&order), &Support::Skeleton(skel.clone()))?;
    Ok((out, if m % 2 == 0 { 1 } else { -1 }))
}

/// Connected sum of `d1` (all components circles) and `d2` along components
/// `c1`, `c2`. The merged component keeps position `c1` in `d1`'s skeleton
/// and the type of `c2`; the remaining components of `d2` follow. Legs of
/// `d1` on `c1` come first along the merged component.
pub fn connected_sum(
    d1: &Graph,
    s1: &Skeleton,
    c1: usize,
    d2: &Graph,
    s2: &Skeleton,
    c2: usize,
) -> Result<(Graph, Skeleton)> {
    if !s1.all_circles() {
        return Err(Error::Argument("first support must consist of circles".into()));
    }
    if !s1.is_circle(c1) {
        return Err(Error::Argument(format!("component {c1} is not a circle")));
    }
    if c2 >= s2.len() {
        return Err(Error::Argument(format!("no component {c2}")));
    }
    let mut comps = s1.0.clone();
    comps[c1] = s2.0[c2];
    let others: Vec<usize> = (0..s2.len()).filter(|&c| c != c2).collect();
    comps.extend(others.iter().map(|&c| s2.0[c]));
    let skel = Skeleton(comps);
    let k1 = s1.len() as u8;
    let d2m = d2.map_anchors(|a| {
        if a as usize == c2 {
            c1 as u8
        } else {
            k1 + others.iter().position(|&c| c == a as usize).unwrap() as u8
        }
    });
    let g = d1.disjoint_union(&d2m).sort_legs_by_anchor();
    let g = canonicalize(&g, &Support::Skeleton(skel.clone()))?;
    Ok((g, skel))
}
