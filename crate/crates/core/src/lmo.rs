//! From link values to closed trivalent graphs: `T^n_m`, the gluing maps
//! `j_n` and `j'_n`, the loop substitution `iota_n` and the normalized
//! invariant `Omega_n`.

use std::collections::BTreeMap;

use crate::bspace::{multiply, reduce_graph, Atom, Monomial, SymComb};
use crate::chi::{build_tm, chi_inverse, shuffle_product, HElement};
use crate::diagram::{canonicalize, Graph, Support};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::relations::multisets;
use crate::scalar::factorial;
use crate::tangle::{SurgeryPresentation, ZhatContext};
use crate::{Rational, Scalar};

/// Closed graphs with a count of vertex-free loops: elements of the space
/// of trivalent graphs where loop components are allowed.
pub type LoopedGraphs = LinComb<(usize, Graph), Rational>;

/// The same, with each graph reduced modulo AS and IHX.
pub type LoopedForms = LinComb<(usize, Monomial), Rational>;

/// Largest `m` for which `T^n_m` is built.
pub const TNM_CAP: usize = 10;

/// `T^n_m`: the part of `T^{.n}/n!` with `m` legs.
pub fn build_tnm(n: usize, m: usize) -> Result<HElement> {
    if n == 0 {
        return Err(Error::Argument("T^n_m needs n >= 1".into()));
    }
    if m > TNM_CAP {
        return Err(Error::Capacity(format!("T^n_m above m = {TNM_CAP}")));
    }
    let mut out = HElement::zero(m);
    if m < 2 * n {
        return Ok(out);
    }
    let mut t = BTreeMap::new();
    for k in 2..=m {
        t.insert(k, build_tm(k)?);
    }
    // compositions m_1 + ... + m_n = m with parts >= 2
    fn rec(n: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = n - cur.len() - 1;
        for k in 2..=rem.saturating_sub(2 * left) {
            cur.push(k);
            rec(n, rem - k, cur, out);
            cur.pop();
        }
    }
    let mut comps = Vec::new();
    rec(n, m, &mut Vec::new(), &mut comps);
    let scale = Rational::from_int(1) / Rational::from_bigint(factorial(n as u64));
    for c in comps {
        let mut acc = HElement::unit();
        for k in c {
            acc = shuffle_product(&acc, &t[&k])?;
        }
        out.add_scaled(&acc, &scale)?;
    }
    Ok(out)
}

/// Relabels colors: color `c` becomes `sigma[c - 1]`.
pub fn permute_colors(x: &HElement, sigma: &[u8]) -> Result<HElement> {
    let mut out = HElement::zero(x.m);
    for (g, c) in x.terms.iter() {
        out.push(&g.map_anchors(|a| if a == 0 { 0 } else { sigma[a as usize - 1] }), c.clone())?;
    }
    Ok(out)
}

/// Grows a `Y` at the leg of color `k`: the leg becomes a trivalent vertex
/// with new legs colored `k` and `k + 1`, colors above `k` move up by one.
/// With `flip` the new vertex gets the opposite cyclic order.
pub fn attach_y(g: &Graph, k: u8, flip: bool) -> Result<Graph> {
    let e = g.n_ext();
    let leg = (0..e)
        .find(|&l| g.anchors()[l] == k)
        .ok_or_else(|| Error::Argument(format!("no leg of color {k}")))?;
    let ne = e + 1;
    let nint = g.n_int() + 1;
    let map = |h: usize| if h < e { h } else { h + 1 };
    let v = ne + 3 * (nint - 1);
    let mut partner = vec![0u16; ne + 3 * nint];
    for h in 0..g.n_half() {
        if h == leg {
            continue;
        }
        let p = g.partner(h);
        partner[map(h)] = if p == leg { v as u16 } else { map(p) as u16 };
    }
    let p = g.partner(leg);
    let (a, b) = if flip { (v + 2, v + 1) } else { (v + 1, v + 2) };
    partner[v] = map(p) as u16;
    partner[a] = leg as u16;
    partner[leg] = a as u16;
    partner[b] = e as u16;
    partner[e] = b as u16;
    let mut anchors: Vec<u8> = g.anchors().iter().map(|&c| if c > k { c + 1 } else { c }).collect();
    anchors.push(k + 1);
    Graph::new(anchors, partner)
}

/// Cyclic orientation of the grown vertex under which
/// `T^n_m - sigma_k T^n_m = T^n_{m-1} *_k Y` holds with our AS convention.
pub const DUAL_STU_FLIP: bool = true;

/// `T^n_{m-1} *_k Y`.
pub fn star_y(x: &HElement, k: u8, flip: bool) -> Result<HElement> {
    let mut out = HElement::zero(x.m + 1);
    for (g, c) in x.terms.iter() {
        out.push(&attach_y(g, k, flip)?, c.clone())?;
    }
    Ok(out)
}

fn push_closed(out: &mut LoopedGraphs, g: &Graph, loops: usize, c: Rational) -> Result<()> {
    if g.has_self_loop() {
        return Ok(());
    }
    let k = canonicalize(g, &Support::Closed)?;
    out.add_term((loops, k), c);
    Ok(())
}

/// `j_n` on diagrams on circles: each circle with `m` legs is replaced by
/// `T^n_m`, its legs glued in the order they appear along the circle.
pub fn jn(x: &Element, n: usize) -> Result<LoopedGraphs> {
    let skel = match &x.support {
        Support::Skeleton(s) if s.all_circles() => s.clone(),
        other => return Err(Error::Argument(format!("j_n expects diagrams on circles, got {other}"))),
    };
    let l = skel.len();
    let mut cache: BTreeMap<usize, HElement> = BTreeMap::new();
    let mut out = LoopedGraphs::zero();
    for (g, c) in x.iter() {
        let legs: Vec<Vec<usize>> = (0..l)
            .map(|k| (0..g.n_ext()).filter(|&i| g.anchors()[i] as usize == k).collect())
            .collect();
        for ls in &legs {
            let m = ls.len();
            if !cache.contains_key(&m) {
                cache.insert(m, build_tnm(n, m)?);
            }
        }
        let factors: Vec<&HElement> = legs.iter().map(|ls| &cache[&ls.len()]).collect();
        if factors.iter().any(|f| f.is_empty()) {
            continue;
        }
        // every choice of one term per circle
        let mut stack: Vec<(usize, Graph, Vec<(usize, usize)>, Rational)> =
            vec![(0, g.clone(), Vec::new(), c.clone())];
        while let Some((k, u, pairs, coef)) = stack.pop() {
            if k == l {
                let (h, loops) = u.splice_legs(&pairs);
                push_closed(&mut out, &h, loops, coef)?;
                continue;
            }
            for (t, a) in factors[k].terms.iter() {
                let offset = u.n_ext();
                let w = u.disjoint_union(t);
                let mut p = pairs.clone();
                for (pos, &leg) in legs[k].iter().enumerate() {
                    let color = (pos + 1) as u8;
                    let tl = (0..t.n_ext()).find(|&i| t.anchors()[i] == color).unwrap();
                    p.push((leg, offset + tl));
                }
                // legs of u keep their indices in the union
                stack.push((k + 1, w, p, coef.clone() * a.clone()));
            }
        }
    }
    Ok(out)
}

/// All perfect matchings of `items`.
fn pairings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, &x)| x).collect();
        for mut p in pairings(&rest) {
            p.push((first, items[i]));
            out.push(p);
        }
    }
    out
}

/// `j'_n` on diagrams on strings (a preimage of the link value under the
/// closure): apply `chi^{-1}` and join the `2n` legs of each color in
/// pairs in every possible way.
pub fn jprime_n(y: &Element, n: usize) -> Result<LoopedGraphs> {
    let l = match &y.support {
        Support::Skeleton(s) if s.all_intervals() => s.len(),
        other => return Err(Error::Argument(format!("j'_n expects diagrams on strings, got {other}"))),
    };
    let chars = chi_inverse(&y.truncate((l + 1) * n))?;
    jprime_characters(&chars, n)
}

/// `j'_n` on colored characters.
pub fn jprime_characters(chars: &Element, n: usize) -> Result<LoopedGraphs> {
    let l = match chars.support {
        Support::Colored(l) => l as usize,
        _ => return Err(Error::Argument("expected colored characters".into())),
    };
    let mut out = LoopedGraphs::zero();
    for (g, c) in chars.iter() {
        if g.degree() > (l + 1) * n {
            continue;
        }
        let mut groups: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for (i, &a) in g.anchors().iter().enumerate() {
            groups.entry(a).or_default().push(i);
        }
        if groups.len() != l || groups.values().any(|v| v.len() != 2 * n) {
            continue;
        }
        let mut choices: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for legs in groups.values() {
            let ps = pairings(legs);
            choices = choices
                .iter()
                .flat_map(|acc| {
                    ps.iter().map(move |p| {
                        let mut a = acc.clone();
                        a.extend_from_slice(p);
                        a
                    })
                })
                .collect();
        }
        for p in choices {
            let (h, loops) = g.splice_legs(&p);
            push_closed(&mut out, &h, loops, c.clone())?;
        }
    }
    Ok(out)
}

/// Reduces every graph modulo AS and IHX, keeping loop counts.
pub fn reduce_looped(x: &LoopedGraphs) -> Result<LoopedForms> {
    let mut out = LoopedForms::zero();
    for ((loops, g), c) in x.iter() {
        for (m, a) in reduce_graph(g)?.iter() {
            out.add_term((*loops, m.clone()), c.clone() * a.clone());
        }
    }
    Ok(out)
}

/// `iota_n`: every loop becomes the scalar `-2n`.
pub fn iota_n(x: &LoopedGraphs, n: usize) -> Result<SymComb> {
    let w = Rational::from_int(-2 * n as i64);
    let mut out = SymComb::zero();
    for ((loops, m), c) in reduce_looped(x)?.iter() {
        let mut f = c.clone();
        for _ in 0..*loops {
            f = f * w.clone();
        }
        out.add_term(m.clone(), f);
    }
    Ok(out)
}

/// Degree of a normal form in the graph algebra (half the vertex count).
pub fn graph_degree(m: &Monomial) -> usize {
    crate::bspace::monomial_degree(m)
}

fn truncate(x: &SymComb, n: usize) -> SymComb {
    x.map_terms(|m, c| (graph_degree(m) <= n).then(|| (m.clone(), c.clone())))
}

/// Product truncated above degree `n`.
pub fn graph_product(a: &SymComb, b: &SymComb, n: usize) -> SymComb {
    truncate(&multiply(a, b), n)
}

/// Inverse in the graph algebra through degree `n`.
pub fn graph_inverse(x: &SymComb, n: usize) -> Result<SymComb> {
    let c0 = x.coeff(&Vec::new());
    if num_traits::Zero::is_zero(&c0) {
        return Err(Error::Numeric("element with zero constant term is not invertible".into()));
    }
    let inv0 = Rational::from_int(1) / c0;
    let unit = SymComb::basis(Vec::new());
    // x / c0 = 1 + y
    let mut y = x.scaled(&inv0);
    y.add_scaled(&unit, &Rational::from_int(-1));
    let neg = y.scaled(&Rational::from_int(-1));
    let mut acc = unit.clone();
    let mut power = unit;
    for _ in 1..=n {
        power = graph_product(&power, &neg, n);
        if power.is_zero() {
            break;
        }
        acc.add_assign(&power);
    }
    Ok(acc.scaled(&inv0))
}

/// Numbers of positive and negative eigenvalues of a symmetric integer
/// matrix, by exact congruence diagonalization.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize) {
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let zero = Rational::from_int(0);
    while !a.is_empty() {
        let k = a.len();
        if let Some(p) = (0..k).find(|&i| a[i][i] != zero) {
            let d = a[p][p].clone();
            if d > zero {
                pos += 1;
            } else {
                neg += 1;
            }
            let keep: Vec<usize> = (0..k).filter(|&i| i != p).collect();
            a = keep
                .iter()
                .map(|&i| {
                    keep.iter()
                        .map(|&j| a[i][j].clone() - a[i][p].clone() * a[p][j].clone() / d.clone())
                        .collect()
                })
                .collect();
            continue;
        }
        match (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| a[i][j] != zero) {
            Some((i, j)) => {
                // row/column i += row/column j
                for r in 0..k {
                    let v = a[r][j].clone();
                    a[r][i] = a[r][i].clone() + v;
                }
                for c in 0..k {
                    let v = a[j][c].clone();
                    a[i][c] = a[i][c].clone() + v;
                }
            }
            None => break,
        }
    }
    (pos, neg)
}

/// Data of one evaluation of `Omega_n`.
#[derive(Clone, Debug)]
pub struct OmegaReport {
    pub iota: SymComb,
    pub linking: Vec<Vec<i64>>,
    pub sigma_plus: usize,
    pub sigma_minus: usize,
    pub omega: SymComb,
}

/// The degree needed from `Z^` for `iota_n` of an `l`-component link.
pub fn required_degree(l: usize, n: usize) -> usize {
    (l + 1) * n
}

/// `iota_n` of a framed link given as a closed string link.
pub fn iota_of_link(ctx: &ZhatContext, l: &SurgeryPresentation, n: usize) -> Result<(SymComb, Vec<Vec<i64>>)> {
    let k = l.framings.len();
    if ctx.max_degree < required_degree(k, n) {
        return Err(Error::Precondition(format!(
            "need Z^ through degree {} for {k} components",
            required_degree(k, n)
        )));
    }
    let z = ctx.check_z(l)?;
    let x = iota_n(&jprime_n(&z.strings, n)?, n)?;
    Ok((truncate(&x, n), z.linking))
}

/// `Omega_n(L) = iota_n(L) / (iota_n(U+)^{sigma+} iota_n(U-)^{sigma-})`.
pub fn omega_n(ctx: &ZhatContext, l: &SurgeryPresentation, n: usize) -> Result<OmegaReport> {
    use crate::tangle::fixtures::{U_MINUS, U_PLUS};
    let (iota, linking) = iota_of_link(ctx, l, n)?;
    let (sp, sm) = signature(&linking);
    let (up, _) = iota_of_link(ctx, &U_PLUS.parse()?, n)?;
    let (um, _) = iota_of_link(ctx, &U_MINUS.parse()?, n)?;
    let mut norm = SymComb::basis(Vec::new());
    for _ in 0..sp {
        norm = graph_product(&norm, &up, n);
    }
    for _ in 0..sm {
        norm = graph_product(&norm, &um, n);
    }
    let omega = graph_product(&iota, &graph_inverse(&norm, n)?, n);
    Ok(OmegaReport {
        iota,
        linking,
        sigma_plus: sp,
        sigma_minus: sm,
        omega,
    })
}

/// Basis of closed trivalent graphs with `2n` vertices (no loop
/// components) modulo AS and IHX, as monomials in connected atoms.
#[derive(Clone, Debug)]
pub struct TrivalentGraphSpace {
    pub degree: usize,
    pub basis: Vec<Monomial>,
}

impl TrivalentGraphSpace {
    pub fn new(degree: usize) -> Result<Self> {
        let mut atoms: Vec<Atom> = Vec::new();
        for d in 1..=degree {
            let dim = crate::bspace::connected_dim(&[], d)?;
            atoms.extend((0..dim).map(|i| Atom {
                degree: d as u16,
                colors: Vec::new(),
                index: i as u32,
            }));
        }
        let mut basis = Vec::new();
        for k in 0..=degree {
            for ms in multisets(atoms.len() as u8, k) {
                let mono: Monomial = ms.iter().map(|&i| atoms[i as usize - 1].clone()).collect();
                if graph_degree(&mono) == degree {
                    basis.push(mono);
                }
            }
        }
        basis.sort();
        basis.dedup();
        Ok(TrivalentGraphSpace { degree, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}
