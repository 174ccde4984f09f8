//! The isomorphism between Chinese characters and diagrams on strings.
//!
//! `chi` averages over the orderings of same-colored legs along each string.
//! Its inverse glues the elements `t(m)` (built from the comb characters
//! `T_m` and their shuffle exponential) onto every string.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::bspace::{self, SymComb};
use crate::diagram::{Graph, Support, UNPAIRED};
use crate::element::{Comb, Element};
use crate::error::{Error, Result};
use crate::hopf::{all_permutations, descents};
use crate::linear::LinComb;
use crate::scalar::{binomial, factorial, Scalar};
use crate::Rational;

/// Largest `m` accepted by [`build_tm`].
pub const TM_CAP: usize = 10;

const TOOTH: usize = 2;
const RIGHT: usize = 1;

/// The comb character: spine from `order[0]` to `order[m-1]`, teeth colored
/// `order[1..m-1]` hanging from left to right. Every spine vertex is oriented
/// (left, tooth, right).
pub fn comb_character(order: &[u8]) -> Graph {
    let m = order.len();
    assert!(m >= 2, "a comb needs two ends");
    let k = m - 2;
    let mut partner = vec![UNPAIRED; m + 3 * k];
    let mut link = |a: usize, b: usize| {
        partner[a] = b as u16;
        partner[b] = a as u16;
    };
    if k == 0 {
        link(0, 1);
    } else {
        let v = |j: usize, q: usize| m + 3 * j + q;
        link(0, v(0, 0));
        for j in 0..k {
            link(j + 1, v(j, TOOTH));
            if j + 1 < k {
                link(v(j, RIGHT), v(j + 1, 0));
            }
        }
        link(v(k - 1, RIGHT), m - 1);
    }
    Graph::new(order.to_vec(), partner).expect("comb is well formed")
}

/// A combination of characters with one leg of each color `1..=m`, plus any
/// number of legs of color 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElement {
    pub m: usize,
    pub terms: Comb,
}

impl HElement {
    pub fn zero(m: usize) -> Self {
        HElement { m, terms: Comb::zero() }
    }

    /// The empty character, unit of the shuffle product.
    pub fn unit() -> Self {
        HElement {
            m: 0,
            terms: Comb::basis(Graph::empty()),
        }
    }

    pub fn push(&mut self, g: &Graph, c: Rational) -> Result<()> {
        let k = crate::diagram::canonicalize(g, &Support::Colored(self.m as u8))?;
        self.terms.add_term(k, c);
        Ok(())
    }

    pub fn add_scaled(&mut self, o: &HElement, c: &Rational) -> Result<()> {
        if o.m != self.m {
            return Err(Error::Argument(format!("cannot add H({}) to H({})", o.m, self.m)));
        }
        self.terms.add_scaled(&o.terms, c);
        Ok(())
    }

    pub fn scaled(&self, c: &Rational) -> HElement {
        HElement {
            m: self.m,
            terms: self.terms.scaled(c),
        }
    }

    pub fn denominator(&self) -> num_bigint::BigInt {
        self.terms.denominator()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_element(&self) -> Element {
        Element::from_canonical(Support::Colored(self.m as u8), self.terms.clone())
    }
}

/// `T_m` as a combination of comb characters.
pub fn build_tm(m: usize) -> Result<HElement> {
    if m < 2 {
        return Err(Error::Argument(format!("T_m needs m >= 2, got {m}")));
    }
    if m > TM_CAP {
        return Err(Error::Capacity(format!("T_m above m = {TM_CAP}")));
    }
    let mut out = HElement::zero(m);
    for tau in all_permutations(m - 2) {
        let r = descents(&tau) as u64;
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = Rational::from_int(sign)
            / (Rational::from_int(m as i64 - 1) * Rational::from_bigint(binomial(m as u64 - 2, r)));
        let mut order = vec![1u8];
        order.extend(tau.iter().map(|&t| t + 1));
        order.push(m as u8);
        out.push(&comb_character(&order), c)?;
    }
    Ok(out)
}

/// Colors of `y` shifted past `x`, then summed over all order-preserving
/// interleavings of the two color blocks. Color 0 is left alone.
pub fn shuffle_product(x: &HElement, y: &HElement) -> Result<HElement> {
    let (p, q) = (x.m, y.m);
    let n = p + q;
    let mut out = HElement::zero(n);
    // subsets of positions receiving x's colors
    let subsets = choose(n, p);
    for (g, a) in x.terms.iter() {
        for (h, b) in y.terms.iter() {
            let shifted = h.map_anchors(|c| if c == 0 { 0 } else { c + p as u8 });
            let u = g.disjoint_union(&shifted);
            let c = a.clone() * b.clone();
            for s in &subsets {
                let sigma = shuffle_from_subset(s, n);
                let w = u.map_anchors(|c| if c == 0 { 0 } else { sigma[c as usize - 1] });
                out.push(&w, c.clone())?;
            }
        }
    }
    Ok(out)
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The shuffle sending `1..=p` onto the positions in `s` (0-based) and the
/// rest onto the complement, both in order.
fn shuffle_from_subset(s: &[usize], n: usize) -> Vec<u8> {
    let mut sigma = Vec::with_capacity(n);
    sigma.extend(s.iter().map(|&i| (i + 1) as u8));
    sigma.extend((0..n).filter(|i| !s.contains(i)).map(|i| (i + 1) as u8));
    sigma
}

static T_SMALL: Lazy<RwLock<HashMap<usize, Arc<HElement>>>> = Lazy::new(|| RwLock::new(HashMap::new()));
static T_PARTS: Lazy<RwLock<HashMap<usize, Arc<HElement>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `t_m`: `T_{m+1}` with its last color renamed 0.
pub fn t_small(m: usize) -> Result<Arc<HElement>> {
    if let Some(t) = T_SMALL.read().get(&m) {
        return Ok(t.clone());
    }
    let tm = build_tm(m + 1)?;
    let last = (m + 1) as u8;
    let mut out = HElement::zero(m);
    for (g, c) in tm.terms.iter() {
        out.push(&g.map_anchors(|a| if a == last { 0 } else { a }), c.clone())?;
    }
    let out = Arc::new(out);
    T_SMALL.write().insert(m, out.clone());
    Ok(out)
}

/// The part of the shuffle exponential `e^t` with `m` colored legs.
pub fn t_parts(m: usize) -> Result<Arc<HElement>> {
    if m == 0 {
        return Ok(Arc::new(HElement::unit()));
    }
    if let Some(t) = T_PARTS.read().get(&m) {
        return Ok(t.clone());
    }
    // powers[k][j] = (t^{.k})_j for j <= m
    let mut total = HElement::zero(m);
    let mut prev: Vec<Option<HElement>> = (0..=m).map(|_| None).collect();
    for j in 1..=m {
        prev[j] = Some((*t_small(j)?).clone());
    }
    let mut k = 1;
    loop {
        if let Some(p) = &prev[m] {
            let f = Rational::from_bigint(factorial(k as u64));
            total.add_scaled(&p.scaled(&(Rational::from_int(1) / f)), &Rational::from_int(1))?;
        }
        if k == m {
            break;
        }
        let mut next: Vec<Option<HElement>> = (0..=m).map(|_| None).collect();
        for j in k + 1..=m {
            let mut acc = HElement::zero(j);
            for i in 1..=j - k {
                if let Some(p) = &prev[j - i] {
                    let prod = shuffle_product(p, &*t_small(i)?)?;
                    acc.add_scaled(&prod, &Rational::from_int(1))?;
                }
            }
            next[j] = Some(acc);
        }
        prev = next;
        k += 1;
    }
    let total = Arc::new(total);
    T_PARTS.write().insert(m, total.clone());
    Ok(total)
}

fn string_count(x: &Element) -> Result<usize> {
    match &x.support {
        Support::Skeleton(s) if s.all_intervals() => Ok(s.len()),
        other => Err(Error::Argument(format!("expected diagrams on strings, got {other}"))),
    }
}

/// Every ordering of the same-colored legs, averaged.
pub fn chi(x: &Element) -> Result<Element> {
    let n = match x.support {
        Support::Colored(n) => n as usize,
        _ => return Err(Error::Argument("chi expects colored characters".into())),
    };
    let target = Support::strings(n);
    x.map_linear(target.clone(), |g| {
        let sorted = g.sort_legs_by_anchor();
        let anchors = sorted.anchors();
        if anchors.iter().any(|&a| a == 0 || a as usize > n) {
            return Err(Error::Argument("leg color outside 1..=n".into()));
        }
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        while start < anchors.len() {
            let mut end = start;
            while end < anchors.len() && anchors[end] == anchors[start] {
                end += 1;
            }
            blocks.push((start, end));
            start = end;
        }
        let perms: Vec<Vec<Vec<u8>>> = blocks.iter().map(|(s, e)| all_permutations(e - s)).collect();
        let mut weight = Rational::from_int(1);
        for (s, e) in &blocks {
            weight = weight / Rational::from_bigint(factorial((e - s) as u64));
        }
        let base = sorted.map_anchors(|a| a - 1);
        let mut out = Element::zero(target.clone());
        let mut idx = vec![0usize; blocks.len()];
        loop {
            let mut order = Vec::with_capacity(anchors.len());
            for (b, (s, _)) in blocks.iter().enumerate() {
                for &p in &perms[b][idx[b]] {
                    order.push(s + p as usize - 1);
                }
            }
            out.push(&base.permute_legs(&order), weight.clone())?;
            // odometer
            let mut b = 0;
            while b < blocks.len() {
                idx[b] += 1;
                if idx[b] < perms[b].len() {
                    break;
                }
                idx[b] = 0;
                b += 1;
            }
            if b == blocks.len() {
                break;
            }
        }
        Ok(out)
    })
}

/// Glues `t(m)` onto every string of a single diagram.
pub fn chi_inverse_graph(g: &Graph, n: usize) -> Result<Comb> {
    let g = g.sort_legs_by_anchor();
    let counts = g.leg_counts(n);
    let parts = counts.iter().map(|&m| t_parts(m)).collect::<Result<Vec<_>>>()?;
    let term_lists: Vec<Vec<(&Graph, &Rational)>> = parts.iter().map(|p| p.terms.iter().collect()).collect();
    let mut out = Comb::zero();
    if term_lists.iter().any(|l| l.is_empty()) {
        return Ok(out);
    }
    let offsets: Vec<usize> = counts
        .iter()
        .scan(0, |acc, &c| {
            let o = *acc;
            *acc += c;
            Some(o)
        })
        .collect();
    let support = Support::Colored(n as u8);
    let mut idx = vec![0usize; n];
    loop {
        let mut u = g.map_anchors(|_| 0);
        let mut coeff = Rational::from_int(1);
        let mut pairs = Vec::new();
        let mut legs_so_far = g.n_ext();
        for s in 0..n {
            let (h, c) = term_lists[s][idx[s]];
            coeff = coeff * c.clone();
            let color = (s + 1) as u8;
            // colored leg k of h glues to slot k of string s
            for (l, &a) in h.anchors().iter().enumerate() {
                if a != 0 {
                    pairs.push((offsets[s] + a as usize - 1, legs_so_far + l));
                }
            }
            let piece = h.map_anchors(|a| if a == 0 { color } else { 0 });
            legs_so_far += h.n_ext();
            u = u.disjoint_union(&piece);
        }
        let (glued, loops) = u.splice_legs(&pairs);
        if loops != 0 {
            return Err(Error::Structural("gluing produced a vertex-free loop".into()));
        }
        if let Some(k) = crate::element::canonical_term(&glued, &support)? {
            out.add_term(k, coeff);
        }
        let mut b = 0;
        while b < n {
            idx[b] += 1;
            if idx[b] < term_lists[b].len() {
                break;
            }
            idx[b] = 0;
            b += 1;
        }
        if b == n {
            break;
        }
    }
    Ok(out)
}

/// `chi^{-1}` on diagrams on strings, as unreduced characters.
pub fn chi_inverse(x: &Element) -> Result<Element> {
    let n = string_count(x)?;
    let mut out = Element::zero(Support::Colored(n as u8));
    for (g, c) in x.iter() {
        out.terms.add_scaled(&chi_inverse_graph(g, n)?, c);
    }
    Ok(out)
}

static P_REDUCED: Lazy<RwLock<HashMap<(usize, Graph), Arc<SymComb>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Normal form of a diagram on `n` strings: the AS/IHX normal form of its
/// image under `chi^{-1}`. Two combinations agree modulo STU exactly when
/// their normal forms agree.
pub fn p_normal_graph(g: &Graph, n: usize) -> Result<Arc<SymComb>> {
    let key = (n, g.clone());
    if let Some(r) = P_REDUCED.read().get(&key) {
        return Ok(r.clone());
    }
    let img = chi_inverse_graph(g, n)?;
    let r = Arc::new(bspace::reduce_comb(img.iter())?);
    P_REDUCED.write().insert(key, r.clone());
    Ok(r)
}

pub fn p_normal_form(x: &Element) -> Result<SymComb> {
    let n = string_count(x)?;
    let mut out = SymComb::zero();
    for (g, c) in x.iter() {
        out.add_scaled(&*p_normal_graph(g, n)?, c);
    }
    Ok(out)
}

/// Whether `x` vanishes modulo STU.
pub fn p_is_zero(x: &Element) -> Result<bool> {
    Ok(p_normal_form(x)?.is_zero())
}

/// A diagram on strings representing a normal form.
pub fn p_from_normal(x: &SymComb, n: usize) -> Result<Element> {
    chi(&bspace::sym_to_element(x, Support::Colored(n as u8))?)
}

pub fn comb_denominator(x: &LinComb<Graph, Rational>) -> num_bigint::BigInt {
    x.denominator()
}
