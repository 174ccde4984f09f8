//! Products, coproducts, string operations and the symmetric-group action.
//!
//! String operations (`delta_i`, `epsilon_i`, insertion of an empty string,
//! permutations) act on diagrams on strings and, through the color
//! description, on Chinese characters. Indices are 1-based as in the usual
//! notation; permutations are in one-line form `[s(1), ..., s(n)]` and move
//! string `k` to string `s(k)`.

use std::collections::BTreeMap;

use crate::diagram::{Graph, Support};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::scalar::{binomial, Scalar};
use crate::Rational;

/// Strings count of a string or color support.
fn arity(x: &Element) -> Result<usize> {
    x.support
        .arity()
        .ok_or_else(|| Error::Argument(format!("{} is not a space of strings or colors", x.support)))
}

fn is_colored(s: &Support) -> bool {
    matches!(s, Support::Colored(_))
}

fn with_arity(s: &Support, n: usize) -> Support {
    if is_colored(s) {
        Support::Colored(n as u8)
    } else {
        Support::strings(n)
    }
}

/// Offset between the string index `k` (0-based) and the anchor value.
fn base(s: &Support) -> u8 {
    u8::from(is_colored(s))
}

// ---------------------------------------------------------------------------
// products
// ---------------------------------------------------------------------------

/// `D1 x D2`: `D1` placed on top of `D2`.
pub fn stack_graphs(top: &Graph, bottom: &Graph) -> Graph {
    top.disjoint_union(bottom).sort_legs_by_anchor()
}

/// Stacking product, keeping only degrees `<= max_degree` when given.
pub fn stack_truncated(x: &Element, y: &Element, max_degree: Option<usize>) -> Result<Element> {
    if x.support != y.support {
        return Err(Error::Argument(format!(
            "cannot stack {} on {}",
            x.support, y.support
        )));
    }
    if x.support.skeleton().map_or(true, |s| !s.all_intervals()) {
        return Err(Error::Argument("stacking needs a support of strings".into()));
    }
    let mut out = Element::zero(x.support.clone());
    for (g, a) in x.iter() {
        for (h, b) in y.iter() {
            if let Some(m) = max_degree {
                if g.degree() + h.degree() > m {
                    continue;
                }
            }
            out.push(&stack_graphs(g, h), a.clone() * b.clone())?;
        }
    }
    Ok(out)
}

pub fn stack(x: &Element, y: &Element) -> Result<Element> {
    stack_truncated(x, y, None)
}

/// Disjoint union product of characters or closed graphs.
pub fn union_product(x: &Element, y: &Element, max_degree: Option<usize>) -> Result<Element> {
    if x.support != y.support {
        return Err(Error::Argument("support mismatch".into()));
    }
    let mut out = Element::zero(x.support.clone());
    for (g, a) in x.iter() {
        for (h, b) in y.iter() {
            if max_degree.map_or(false, |m| g.degree() + h.degree() > m) {
                continue;
            }
            out.push(&g.disjoint_union(h), a.clone() * b.clone())?;
        }
    }
    Ok(out)
}

/// Tensor product: `y`'s strings are placed to the right of `x`'s.
pub fn tensor(x: &Element, y: &Element) -> Result<Element> {
    let (n, m) = (arity(x)?, arity(y)?);
    if is_colored(&x.support) != is_colored(&y.support) {
        return Err(Error::Argument("cannot tensor diagrams with characters".into()));
    }
    let target = with_arity(&x.support, n + m);
    let mut out = Element::zero(target);
    for (g, a) in x.iter() {
        for (h, b) in y.iter() {
            let shifted = h.map_anchors(|c| c + n as u8);
            out.push(&stack_graphs(g, &shifted), a.clone() * b.clone())?;
        }
    }
    Ok(out)
}

/// `1 (x) x`: a new empty first string.
pub fn tensor_left(x: &Element) -> Result<Element> {
    let n = arity(x)?;
    let target = with_arity(&x.support, n + 1);
    x.map_linear(target.clone(), |g| {
        Element::from_graph(target.clone(), &g.map_anchors(|c| c + 1), Rational::from_int(1))
    })
}

/// `x (x) 1`: a new empty last string.
pub fn tensor_right(x: &Element) -> Result<Element> {
    let n = arity(x)?;
    let target = with_arity(&x.support, n + 1);
    x.map_linear(target.clone(), |g| Element::from_graph(target.clone(), g, Rational::from_int(1)))
}

// ---------------------------------------------------------------------------
// string operations
// ---------------------------------------------------------------------------

/// Doubles string `i`, summing over the `2^m` ways to distribute its legs.
pub fn delta_i(x: &Element, i: usize) -> Result<Element> {
    let n = arity(x)?;
    if i == 0 || i > n {
        return Err(Error::Argument(format!("string index {i} out of range 1..={n}")));
    }
    let b = base(&x.support);
    let c = (i - 1) as u8 + b;
    let target = with_arity(&x.support, n + 1);
    x.map_linear(target.clone(), |g| {
        let legs: Vec<usize> = (0..g.n_ext()).filter(|&l| g.anchors()[l] == c).collect();
        let shifted = g.map_anchors(|a| if a > c { a + 1 } else { a });
        let mut out = Element::zero(target.clone());
        for mask in 0u64..(1u64 << legs.len()) {
            let mut h = shifted.clone();
            for (k, &l) in legs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    h.set_anchor(l, c + 1);
                }
            }
            out.push(&h.sort_legs_by_anchor(), Rational::from_int(1))?;
        }
        Ok(out)
    })
}

/// Iterated doubling `Delta^{(k)}` of string `i` into `k` strings (`k >= 1`).
pub fn delta_power(x: &Element, i: usize, k: usize) -> Result<Element> {
    if k == 0 {
        return Err(Error::Argument("cabling into zero strings".into()));
    }
    let mut y = x.clone();
    for _ in 1..k {
        y = delta_i(&y, i)?;
    }
    Ok(y)
}

/// Removes string `i`; diagrams with a leg on it are killed.
pub fn epsilon_i(x: &Element, i: usize) -> Result<Element> {
    let n = arity(x)?;
    if i == 0 || i > n {
        return Err(Error::Argument(format!("string index {i} out of range 1..={n}")));
    }
    let b = base(&x.support);
    let c = (i - 1) as u8 + b;
    let target = with_arity(&x.support, n - 1);
    x.map_linear(target.clone(), |g| {
        if g.anchors().contains(&c) {
            return Ok(Element::zero(target.clone()));
        }
        Element::from_graph(
            target.clone(),
            &g.map_anchors(|a| if a > c { a - 1 } else { a }),
            Rational::from_int(1),
        )
    })
}

/// Permutation acting on strings or colors.
pub type Perm = Vec<u8>;

pub fn is_permutation(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| {
        let v = v as usize;
        v >= 1 && v <= p.len() && !std::mem::replace(&mut seen[v - 1], true)
    })
}

/// Moves string `k` to string `sigma(k)`.
pub fn permute(sigma: &[u8], x: &Element) -> Result<Element> {
    let n = arity(x)?;
    if sigma.len() != n || !is_permutation(sigma) {
        return Err(Error::Argument(format!("{sigma:?} is not a permutation of 1..={n}")));
    }
    let b = base(&x.support);
    x.map_linear(x.support.clone(), |g| {
        let h = g.map_anchors(|a| sigma[(a - b) as usize] - 1 + b);
        Element::from_graph(x.support.clone(), &h.sort_legs_by_anchor(), Rational::from_int(1))
    })
}

/// Coproduct: sum over subsets of dashed components.
pub fn comultiply(x: &Element) -> Result<LinComb<(Graph, Graph), Rational>> {
    let mut out = LinComb::zero();
    for (g, c) in x.iter() {
        let (ids, k) = g.component_ids();
        if k > 20 {
            return Err(Error::Capacity("too many components".into()));
        }
        for mask in 0u32..(1u32 << k) {
            let keep: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            let rest: Vec<bool> = keep.iter().map(|b| !b).collect();
            let a = crate::diagram::canonicalize(&g.restrict(&ids, &keep), &x.support)?;
            let b = crate::diagram::canonicalize(&g.restrict(&ids, &rest), &x.support)?;
            out.add_term((a, b), c.clone());
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// group algebra
// ---------------------------------------------------------------------------

pub fn perm_sign(p: &[u8]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Number of descents `k` with `p(k) > p(k+1)`.
pub fn descents(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// `(s t)(k) = s(t(k))`.
pub fn compose(s: &[u8], t: &[u8]) -> Perm {
    t.iter().map(|&k| s[k as usize - 1]).collect()
}

pub fn inverse(p: &[u8]) -> Perm {
    let mut out = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        out[v as usize - 1] = (i + 1) as u8;
    }
    out
}

pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (1..=n as u8).collect();
    fn heap(k: usize, cur: &mut Perm, out: &mut Vec<Perm>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out
}

/// An element of the rational group algebra of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub n: usize,
    pub terms: LinComb<Perm, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: LinComb::zero(),
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: LinComb::basis((1..=n as u8).collect()),
        }
    }

    pub fn from_perm(p: Perm, c: Rational) -> Self {
        GroupAlgebraElement {
            n: p.len(),
            terms: LinComb::single(p, c),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        GroupAlgebraElement { n: self.n, terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        GroupAlgebraElement { n: self.n, terms: t }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = LinComb::zero();
        for (p, a) in self.terms.iter() {
            for (q, b) in o.terms.iter() {
                t.add_term(compose(p, q), a.clone() * b.clone());
            }
        }
        GroupAlgebraElement { n: self.n, terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// The automorphism `s -> sign(s) s`.
    pub fn sign_twisted(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), c.clone() * Rational::from_int(perm_sign(p))))
            .collect();
        GroupAlgebraElement { n: self.n, terms }
    }

    /// Action on a combination of diagrams on `n` strings: `sigma` puts
    /// string `sigma(k)` in position `k`, i.e. applies `permute` with the
    /// inverse. This is a right action, and it is the one under which the
    /// Eulerian idempotents commute with the cobar differential.
    pub fn act(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero(x.support.clone());
        for (p, c) in self.terms.iter() {
            out.add_scaled(&permute(&inverse(p), x)?, c)?;
        }
        Ok(out)
    }
}

/// `sum (-1)^s s` over the `(p, q)`-shuffles.
pub fn shuffle_sum(p: usize, q: usize) -> Result<GroupAlgebraElement> {
    if p == 0 || q == 0 {
        return Err(Error::Argument("shuffles need p, q >= 1".into()));
    }
    let n = p + q;
    let mut out = GroupAlgebraElement::zero(n);
    for s in all_permutations(n) {
        let first_ok = s[..p].windows(2).all(|w| w[0] < w[1]);
        let second_ok = s[p..].windows(2).all(|w| w[0] < w[1]);
        if first_ok && second_ok {
            out.terms.add_term(s.clone(), Rational::from_int(perm_sign(&s)));
        }
    }
    Ok(out)
}

/// Coefficients of `x^l` in `sum_s binom(x + n - 1 - des(s), n) s`.
fn eulerian_family(n: usize) -> Vec<GroupAlgebraElement> {
    // binom(x + c, n) as a polynomial in x, c = n - 1 - des
    let poly = |c: i64| -> Vec<Rational> {
        // prod_{j=0}^{n-1} (x + c - j) / n!
        let mut coeffs = vec![Rational::from_int(1)];
        for j in 0..n as i64 {
            let mut next = vec![Rational::from_int(0); coeffs.len() + 1];
            for (k, a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] += &(a.clone() * Rational::from_int(c - j));
            }
            coeffs = next;
        }
        let nf = Rational::from_bigint(crate::scalar::factorial(n as u64));
        coeffs.into_iter().map(|a| a / nf.clone()).collect()
    };
    let mut family = vec![GroupAlgebraElement::zero(n); n + 1];
    for s in all_permutations(n) {
        let c = n as i64 - 1 - descents(&s) as i64;
        for (l, a) in poly(c).into_iter().enumerate() {
            if l >= 1 && l <= n {
                family[l].terms.add_term(s.clone(), a);
            }
        }
    }
    family.into_iter().skip(1).map(|e| e.sign_twisted()).collect()
}

/// The Eulerian idempotent `e_n^{(l)}` (signed as in the first-idempotent
/// formula with the factor `(-1)^s`).
pub fn eulerian_idempotent(n: usize, l: usize) -> Result<GroupAlgebraElement> {
    if n == 0 || n > 6 {
        return Err(Error::Argument(format!("n = {n} outside 1..=6")));
    }
    if l == 0 || l > n {
        return Err(Error::Argument(format!("l = {l} outside 1..={n}")));
    }
    Ok(eulerian_family(n).swap_remove(l - 1))
}

/// `e_n^{(1)}` straight from its closed formula.
pub fn first_eulerian_formula(n: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(n);
    for s in all_permutations(n) {
        let r = descents(&s) as u64;
        let sign = if r % 2 == 0 { 1 } else { -1 } * perm_sign(&s);
        let den = Rational::from_bigint(binomial(n as u64 - 1, r)) * Rational::from_int(n as i64);
        out.terms.add_term(s, Rational::from_int(sign) / den);
    }
    out
}

/// The order-reversing permutation `k -> n + 1 - k`.
pub fn reversal(n: usize) -> Perm {
    (1..=n as u8).rev().collect()
}

/// `x + (-1)^{n(n+1)/2} sigma(x)` for the order reversal sigma; `x` is
/// symmetric when this vanishes in the quotient.
pub fn symmetry_defect(x: &Element) -> Result<Element> {
    let n = arity(x)?;
    let s = permute(&reversal(n), x)?;
    let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    x.add(&s.scaled(&Rational::from_int(sign)))
}

/// Splits an element by the number of legs on each string.
pub fn leg_profile(g: &Graph, n: usize, support: &Support) -> Vec<usize> {
    let b = base(support) as usize;
    let mut c = vec![0; n];
    for &a in g.anchors() {
        c[a as usize - b] += 1;
    }
    c
}

/// Groups the terms of an element by a key.
pub fn group_terms<K: Ord>(x: &Element, key: impl Fn(&Graph) -> K) -> BTreeMap<K, Element> {
    let mut out: BTreeMap<K, Element> = BTreeMap::new();
    for (g, c) in x.iter() {
        out.entry(key(g))
            .or_insert_with(|| Element::zero(x.support.clone()))
            .terms
            .add_term(g.clone(), c.clone());
    }
    out
}
