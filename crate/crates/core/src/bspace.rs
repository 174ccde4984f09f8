//! Normal forms of Chinese characters modulo AS and IHX.
//!
//! The space of characters is the symmetric algebra on connected ones, and
//! both relations act one component at a time. A character therefore reduces
//! to a combination of monomials in basis elements ("atoms") of the connected
//! spaces, one space per degree and color multiset. Closed graphs use the
//! empty color multiset.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::diagram::{
    canonical_components, concat_graphs, enumerate_connected_characters,
    enumerate_connected_closed, Graph, Support,
};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linear::{GradedBasis, LinComb, SparseVec};
use crate::relations::{relations_of, RelationKind};
use crate::Rational;

/// A basis element of a connected space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub degree: u16,
    pub colors: Vec<u8>,
    pub index: u32,
}

/// A sorted product of atoms; the empty monomial is the unit.
pub type Monomial = Vec<Atom>;

pub type SymComb = LinComb<Monomial, Rational>;

type SpaceKey = (usize, Vec<u8>);

static SPACES: Lazy<RwLock<HashMap<SpaceKey, Arc<GradedBasis<Graph, Rational>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

static REDUCED: Lazy<RwLock<HashMap<Graph, Arc<SymComb>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

fn sorted_colors(g: &Graph) -> Vec<u8> {
    let mut c = g.anchors().to_vec();
    c.sort_unstable();
    c
}

fn support_for(colors: &[u8]) -> Support {
    if colors.is_empty() {
        Support::Closed
    } else {
        Support::Colored(colors.iter().copied().max().unwrap_or(0))
    }
}

/// The quotient of connected characters with the given colors and degree.
pub fn connected_space(colors: &[u8], degree: usize) -> Result<Arc<GradedBasis<Graph, Rational>>> {
    let mut colors = colors.to_vec();
    colors.sort_unstable();
    let key = (degree, colors.clone());
    if let Some(b) = SPACES.read().get(&key) {
        return Ok(b.clone());
    }
    let keys = if colors.is_empty() {
        enumerate_connected_closed(degree)
    } else {
        enumerate_connected_characters(&colors, degree)
    };
    let support = support_for(&colors);
    let mut rels = Vec::new();
    for g in &keys {
        for r in relations_of(g, &support, &[RelationKind::As, RelationKind::Ihx])? {
            rels.push(r.terms);
        }
    }
    let basis = Arc::new(GradedBasis::new(degree, keys, &rels)?);
    SPACES.write().insert(key, basis.clone());
    Ok(basis)
}

/// Coordinates of a canonical connected character in its space.
pub fn reduce_connected(g: &Graph) -> Result<(Atom, SparseVec<Rational>)> {
    let colors = sorted_colors(g);
    let degree = g.degree();
    let space = connected_space(&colors, degree)?;
    let coords = space.reduce_sparse(&LinComb::basis(g.clone()))?;
    let proto = Atom {
        degree: degree as u16,
        colors,
        index: 0,
    };
    Ok((proto, coords))
}

/// Product of normal forms (disjoint union).
pub fn multiply(a: &SymComb, b: &SymComb) -> SymComb {
    let mut out = SymComb::zero();
    for (m, x) in a.iter() {
        for (n, y) in b.iter() {
            let mut k = m.clone();
            k.extend(n.iter().cloned());
            k.sort();
            out.add_term(k, x.clone() * y.clone());
        }
    }
    out
}

/// Normal form of a single character (any canonical labeling).
pub fn reduce_graph(g: &Graph) -> Result<Arc<SymComb>> {
    if let Some(r) = REDUCED.read().get(g) {
        return Ok(r.clone());
    }
    if g.has_self_loop() {
        return Ok(Arc::new(SymComb::zero()));
    }
    let mut acc = SymComb::basis(Vec::new());
    for comp in canonical_components(g) {
        let (proto, coords) = reduce_connected(&comp)?;
        if coords.is_empty() {
            acc = SymComb::zero();
            break;
        }
        let factor: SymComb = coords
            .into_iter()
            .map(|(i, c)| {
                let mut a = proto.clone();
                a.index = i as u32;
                (vec![a], c)
            })
            .collect();
        acc = multiply(&acc, &factor);
    }
    let acc = Arc::new(acc);
    REDUCED.write().insert(g.clone(), acc.clone());
    Ok(acc)
}

/// Linear extension of [`reduce_graph`].
pub fn reduce_comb<'a>(terms: impl IntoIterator<Item = (&'a Graph, &'a Rational)>) -> Result<SymComb> {
    let mut out = SymComb::zero();
    for (g, c) in terms {
        out.add_scaled(&*reduce_graph(g)?, c);
    }
    Ok(out)
}

pub fn reduce_element(x: &Element) -> Result<SymComb> {
    match x.support {
        Support::Colored(_) | Support::Closed => reduce_comb(x.iter()),
        Support::Skeleton(_) => Err(Error::Argument(
            "character reduction applied to a diagram on a skeleton".into(),
        )),
    }
}

/// The representative graph of an atom.
pub fn atom_graph(a: &Atom) -> Result<Graph> {
    let space = connected_space(&a.colors, a.degree as usize)?;
    if a.index as usize >= space.dim() {
        return Err(Error::Argument(format!("atom index {} out of range", a.index)));
    }
    Ok(space.representative(a.index as usize).clone())
}

/// The disjoint union of the atoms' representatives.
pub fn monomial_graph(m: &Monomial) -> Result<Graph> {
    let parts = m.iter().map(atom_graph).collect::<Result<Vec<_>>>()?;
    Ok(concat_graphs(&parts))
}

/// Turns a normal form back into a combination of characters.
pub fn sym_to_element(x: &SymComb, support: Support) -> Result<Element> {
    let mut out = Element::zero(support);
    for (m, c) in x.iter() {
        out.push(&monomial_graph(m)?, c.clone())?;
    }
    Ok(out)
}

pub fn monomial_degree(m: &Monomial) -> usize {
    m.iter().map(|a| a.degree as usize).sum()
}

/// Dimension of the connected space.
pub fn connected_dim(colors: &[u8], degree: usize) -> Result<usize> {
    Ok(connected_space(colors, degree)?.dim())
}

/// Unit coefficient helper used by callers building normal forms by hand.
pub fn unit() -> SymComb {
    SymComb::basis(Vec::new())
}
