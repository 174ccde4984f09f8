//! Linear combinations of canonical diagrams on a fixed support.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::diagram::{canonicalize, Graph, Support};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::scalar::format_scalar;
use crate::Rational;

pub type Comb = LinComb<Graph, Rational>;

/// Canonical key of `g`, or `None` for a graph that vanishes identically
/// (one with a self-loop at a trivalent vertex).
pub fn canonical_term(g: &Graph, support: &Support) -> Result<Option<Graph>> {
    if g.has_self_loop() {
        return Ok(None);
    }
    canonicalize(g, support).map(Some)
}

/// An exact combination of canonical diagrams (or characters) on `support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub support: Support,
    pub terms: Comb,
}

impl Element {
    pub fn zero(support: Support) -> Self {
        Element {
            support,
            terms: Comb::zero(),
        }
    }

    /// The empty diagram.
    pub fn one(support: Support) -> Self {
        Element {
            support,
            terms: Comb::basis(Graph::empty()),
        }
    }

    pub fn scalar(support: Support, c: Rational) -> Self {
        Element {
            support,
            terms: Comb::single(Graph::empty(), c),
        }
    }

    /// Canonicalizes `g` and wraps it with coefficient `c`.
    pub fn from_graph(support: Support, g: &Graph, c: Rational) -> Result<Self> {
        let mut e = Element::zero(support);
        e.push(g, c)?;
        Ok(e)
    }

    /// Builds from terms that are already canonical for `support`.
    pub fn from_canonical(support: Support, terms: Comb) -> Self {
        Element { support, terms }
    }

    pub fn push(&mut self, g: &Graph, c: Rational) -> Result<()> {
        if let Some(k) = canonical_term(g, &self.support)? {
            self.terms.add_term(k, c);
        }
        Ok(())
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.support != other.support {
            return Err(Error::Argument(format!(
                "support mismatch: {} vs {}",
                self.support, other.support
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(Element::from_canonical(self.support.clone(), t))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut t = self.terms.clone();
        t.sub_assign(&other.terms);
        Ok(Element::from_canonical(self.support.clone(), t))
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) -> Result<()> {
        self.check_same(other)?;
        self.terms.add_scaled(&other.terms, c);
        Ok(())
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        Element::from_canonical(self.support.clone(), self.terms.scaled(c))
    }

    pub fn neg(&self) -> Element {
        Element::from_canonical(self.support.clone(), self.terms.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Graph, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient lcm on canonical generators.
    pub fn denominator(&self) -> BigInt {
        self.terms.denominator()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|g| g.degree()).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|g| g.degree()).min()
    }

    /// The homogeneous part of the given degree.
    pub fn part(&self, degree: usize) -> Element {
        let t = self
            .terms
            .iter()
            .filter(|(g, _)| g.degree() == degree)
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect();
        Element::from_canonical(self.support.clone(), t)
    }

    /// Splits into homogeneous parts.
    pub fn by_degree(&self) -> BTreeMap<usize, Element> {
        let mut out: BTreeMap<usize, Element> = BTreeMap::new();
        for (g, c) in self.terms.iter() {
            out.entry(g.degree())
                .or_insert_with(|| Element::zero(self.support.clone()))
                .terms
                .add_term(g.clone(), c.clone());
        }
        out
    }

    /// Drops terms above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Element {
        let t = self
            .terms
            .iter()
            .filter(|(g, _)| g.degree() <= max_degree)
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect();
        Element::from_canonical(self.support.clone(), t)
    }

    /// Linear extension of a per-term map producing elements on `target`.
    pub fn map_linear(
        &self,
        target: Support,
        mut f: impl FnMut(&Graph) -> Result<Element>,
    ) -> Result<Element> {
        let mut out = Element::zero(target);
        for (g, c) in self.terms.iter() {
            let img = f(g)?;
            out.add_scaled(&img, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{:?}", format_scalar(c), g.to_bytes())?;
        }
        Ok(())
    }
}
