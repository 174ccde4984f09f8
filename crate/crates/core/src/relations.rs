//! STU, AS and IHX relations and the quotient spaces they cut out.

use std::fmt;

use crate::diagram::{
    enumerate, enumerate_characters, enumerate_connected_closed, EnumFilter, Graph, Skeleton,
    Support, DEFAULT_ENUMERATION_CAP, UNPAIRED,
};
use crate::element::{canonical_term, Comb};
use crate::error::{Error, Result};
use crate::linear::{GradedBasis, Lattice};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Stu,
    As,
    Ihx,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Stu => "STU",
            RelationKind::As => "AS",
            RelationKind::Ihx => "IHX",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    pub source: Graph,
    pub terms: Comb,
}

#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub generators: Vec<Relation>,
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.generators.iter().filter(|r| r.kind == kind).count()
    }

    pub fn combs(&self) -> Vec<Comb> {
        self.generators.iter().map(|r| r.terms.clone()).collect()
    }
}

fn comb_of(support: &Support, parts: &[(Graph, i64)]) -> Result<Comb> {
    let mut c = Comb::zero();
    for (g, s) in parts {
        if let Some(k) = canonical_term(g, support)? {
            c.add_term(k, Rational::from_int(*s));
        }
    }
    Ok(c)
}

/// Replaces adjacent legs `a` (earlier) and `b` (later) by a single leg
/// attached to a new trivalent vertex with cyclic ports (new leg, partner of
/// `b`, partner of `a`). The new leg takes the position of `a`.
pub fn merge_legs(g: &Graph, a: usize, b: usize) -> Graph {
    let e = g.n_ext();
    let ni = g.n_int();
    let ne = e - 1;
    let mut new_leg = vec![usize::MAX; e];
    let mut anchors = Vec::with_capacity(ne);
    for l in 0..e {
        if l == b {
            continue;
        }
        new_leg[l] = anchors.len();
        anchors.push(g.anchors()[l]);
    }
    let ell = new_leg[a];
    let v = ne + 3 * ni;
    let map = |h: usize| if h < e { new_leg[h] } else { ne + (h - e) };
    let mut partner = vec![UNPAIRED; ne + 3 * (ni + 1)];
    for h in 0..g.n_half() {
        if h == a || h == b {
            continue;
        }
        let p = g.partner(h);
        let target = if p == a {
            v + 2
        } else if p == b {
            v + 1
        } else {
            map(p)
        };
        partner[map(h)] = target as u16;
    }
    let pa = g.partner(a);
    let pb = g.partner(b);
    partner[v + 2] = if pa == b { (v + 1) as u16 } else { map(pa) as u16 };
    partner[v + 1] = if pb == a { (v + 2) as u16 } else { map(pb) as u16 };
    partner[ell] = v as u16;
    partner[v] = ell as u16;
    Graph::new(anchors, partner).expect("merged graph is well formed")
}

/// Adjacent leg pairs `(earlier, later)` on every component, cyclically on
/// circles.
pub fn adjacent_pairs(g: &Graph, skel: &Skeleton) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let anchors = g.anchors();
    let mut start = 0;
    for c in 0..skel.len() {
        let mut end = start;
        while end < anchors.len() && anchors[end] as usize == c {
            end += 1;
        }
        for l in start..end.saturating_sub(1) {
            out.push((l, l + 1));
        }
        if skel.is_circle(c) && end - start >= 2 {
            out.push((end - 1, start));
        }
        start = end;
    }
    out
}

/// One STU generator `Y - D + U` for the adjacent legs `(a, b)` of `g`.
pub fn stu_relation(g: &Graph, skel: &Skeleton, a: usize, b: usize) -> Result<Comb> {
    let support = Support::Skeleton(skel.clone());
    let mut order: Vec<usize> = (0..g.n_ext()).collect();
    order.swap(a, b);
    // On a circle with (a, b) = (last, first) swapping positions is the
    // same as exchanging the two legs along the circle.
    let u = g.permute_legs(&order);
    let y = merge_legs(g, a, b);
    comb_of(&support, &[(y, 1), (g.clone(), -1), (u, 1)])
}

pub fn as_relation(g: &Graph, support: &Support, j: usize) -> Result<Comb> {
    comb_of(support, &[(g.clone(), 1), (g.reverse_vertex(j), 1)])
}

/// Rewires the four outer sockets around the internal edge `(hu, hv)`.
fn ihx_variant(g: &Graph, hu: usize, hv: usize, slots: [usize; 4]) -> Graph {
    let e = g.n_ext();
    let (u, qu) = ((hu - e) / 3, (hu - e) % 3);
    let (v, qv) = ((hv - e) / 3, (hv - e) % 3);
    // sockets a, b at u and c, d at v, in cyclic order after the edge
    let sockets = [
        g.port(u, (qu + 1) % 3),
        g.port(u, (qu + 2) % 3),
        g.port(v, (qv + 1) % 3),
        g.port(v, (qv + 2) % 3),
    ];
    // new positions for the ends a, b, c, d
    let pos: Vec<usize> = slots.iter().map(|&s| sockets[s]).collect();
    let mut partner: Vec<u16> = g.partners().to_vec();
    for (i, &s) in sockets.iter().enumerate() {
        let far = g.partner(s);
        let target = match sockets.iter().position(|&t| t == far) {
            Some(j) => pos[j],
            None => far,
        };
        partner[pos[i]] = target as u16;
        if sockets.iter().all(|&t| t != far) {
            partner[far] = pos[i] as u16;
        }
    }
    Graph::new(g.anchors().to_vec(), partner).expect("IHX rewiring is well formed")
}

/// IHX generators, one per internal edge.
pub fn ihx_relations(g: &Graph, support: &Support) -> Result<Vec<Comb>> {
    let e = g.n_ext();
    let mut out = Vec::new();
    for hu in e..g.n_half() {
        let hv = g.partner(hu);
        if hv < e || hv < hu || (hv - e) / 3 == (hu - e) / 3 {
            continue;
        }
        // ends a, b, c, d go to sockets (u1, u2, v1, v2) given by slots[end]
        let t1 = ihx_variant(g, hu, hv, [0, 1, 2, 3]);
        // u = (e, b, c), v = (e, a, d)
        let t2 = ihx_variant(g, hu, hv, [2, 0, 1, 3]);
        // u = (e, c, a), v = (e, b, d)
        let t3 = ihx_variant(g, hu, hv, [1, 2, 0, 3]);
        out.push(comb_of(support, &[(t1, 1), (t2, 1), (t3, 1)])?);
    }
    Ok(out)
}

/// Relation generators attached to a single diagram.
pub fn relations_of(g: &Graph, support: &Support, kinds: &[RelationKind]) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for &kind in kinds {
        match kind {
            RelationKind::Stu => {
                let skel = support
                    .skeleton()
                    .ok_or_else(|| Error::Argument("STU needs a skeleton support".into()))?;
                for (a, b) in adjacent_pairs(g, skel) {
                    let terms = stu_relation(g, skel, a, b)?;
                    out.push(Relation {
                        kind,
                        source: g.clone(),
                        terms,
                    });
                }
            }
            RelationKind::As => {
                for j in 0..g.n_int() {
                    out.push(Relation {
                        kind,
                        source: g.clone(),
                        terms: as_relation(g, support, j)?,
                    });
                }
            }
            RelationKind::Ihx => {
                for terms in ihx_relations(g, support)? {
                    out.push(Relation {
                        kind,
                        source: g.clone(),
                        terms,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Every canonical generator of a diagram space at one degree.
pub fn space_generators(support: &Support, degree: usize, cap: usize) -> Result<Vec<Graph>> {
    if degree > cap {
        return Err(Error::Capacity(format!(
            "degree {degree} exceeds the enumeration cap {cap}"
        )));
    }
    match support {
        Support::Skeleton(s) => enumerate(s, degree, &EnumFilter::default(), cap),
        Support::Colored(n) => {
            let mut keys = Vec::new();
            for e in 0..=2 * degree {
                for colors in multisets(*n, e) {
                    keys.extend(enumerate_characters(&colors, degree));
                }
            }
            keys.sort();
            Ok(keys)
        }
        Support::Closed => {
            // products of connected closed graphs
            let mut keys = vec![Graph::empty()];
            let mut result = Vec::new();
            let parts: Vec<Vec<Graph>> = (0..=degree).map(enumerate_connected_closed).collect();
            fn rec(
                rem: usize,
                min_deg: usize,
                min_idx: usize,
                cur: &mut Vec<Graph>,
                parts: &[Vec<Graph>],
                out: &mut Vec<Graph>,
            ) {
                if rem == 0 {
                    out.push(crate::diagram::concat_graphs(cur));
                    return;
                }
                for d in min_deg..=rem {
                    let start = if d == min_deg { min_idx } else { 0 };
                    for i in start..parts[d].len() {
                        cur.push(parts[d][i].clone());
                        rec(rem - d, d, i, cur, parts, out);
                        cur.pop();
                    }
                }
            }
            if degree > 0 {
                keys.clear();
                rec(degree, 1, 0, &mut Vec::new(), &parts, &mut result);
                for g in result {
                    keys.push(crate::diagram::canonicalize(&g, &Support::Closed)?);
                }
            }
            keys.sort();
            keys.dedup();
            Ok(keys)
        }
    }
}

/// Sorted color multisets of size `e` over colors `1..=n`.
pub fn multisets(n: u8, e: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    fn rec(n: u8, e: usize, min: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for c in min..=n {
            cur.push(c);
            rec(n, e, c, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        if e == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, e, 1, &mut Vec::new(), &mut out);
    out
}

pub fn default_kinds(support: &Support) -> Vec<RelationKind> {
    match support {
        Support::Skeleton(_) => vec![RelationKind::Stu],
        _ => vec![RelationKind::As, RelationKind::Ihx],
    }
}

/// All relation generators of the requested kinds at one degree.
pub fn generate_relations(support: &Support, degree: usize, kinds: &[RelationKind]) -> Result<RelationSet> {
    if kinds.contains(&RelationKind::Stu) && support.skeleton().is_none() {
        return Err(Error::Argument("STU is not defined on Chinese characters".into()));
    }
    let keys = space_generators(support, degree, DEFAULT_ENUMERATION_CAP)?;
    let mut generators = Vec::new();
    for g in &keys {
        generators.extend(relations_of(g, support, kinds)?);
    }
    Ok(RelationSet { generators })
}

/// The quotient basis of a diagram space at one degree.
pub fn quotient_basis(
    support: &Support,
    degree: usize,
    relations: &RelationSet,
) -> Result<GradedBasis<Graph, Rational>> {
    let keys = space_generators(support, degree, DEFAULT_ENUMERATION_CAP)?;
    let combs = relations.combs();
    GradedBasis::new(degree, keys, &combs)
        .map_err(|_| Error::Argument("relations belong to a different space".into()))
}

/// Convenience: quotient basis with the default relation kinds.
pub fn default_quotient(support: &Support, degree: usize) -> Result<GradedBasis<Graph, Rational>> {
    let rels = generate_relations(support, degree, &default_kinds(support))?;
    quotient_basis(support, degree, &rels)
}

/// A quotient space together with the lattice spanned by the images of
/// its integer diagrams.
pub struct IntegralQuotient {
    pub basis: GradedBasis<Graph, Rational>,
    pub lattice: Lattice,
}

impl IntegralQuotient {
    pub fn build(support: &Support, degree: usize) -> Result<Self> {
        let basis = default_quotient(support, degree)?;
        let gens = basis
            .keys()
            .iter()
            .map(|k| basis.reduce(&crate::linear::LinComb::basis(k.clone())))
            .collect::<Result<Vec<_>>>()?;
        let lattice = Lattice::from_rational_generators(&gens, basis.dim())?;
        Ok(IntegralQuotient { basis, lattice })
    }

    /// Least `N` with `N x` an integer combination of diagrams.
    pub fn denominator(&self, x: &Comb) -> Result<num_bigint::BigInt> {
        let v = self.basis.reduce(x)?;
        self.lattice
            .denominator(&v)
            .ok_or_else(|| Error::Numeric("element outside the span of its lattice".into()))
    }
}
