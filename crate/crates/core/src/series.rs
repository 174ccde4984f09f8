//! Degree-truncated series in graded algebras: exp, log, inverses and the
//! Campbell-Hausdorff series.

use std::collections::BTreeMap;

use crate::diagram::Support;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::{stack_truncated, union_product};
use crate::linear::LinComb;
use crate::scalar::Scalar;
use crate::Rational;
use num_traits::One;

/// A graded algebra whose elements can be multiplied with truncation.
pub trait GradedAlgebra: Clone + PartialEq + std::fmt::Debug {
    type Scalar: Scalar;

    fn zero_like(&self) -> Self;
    fn unit_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Result<Self>;
    fn times(&self, c: &Self::Scalar) -> Self;
    fn product(&self, o: &Self, max_degree: usize) -> Result<Self>;
    fn homogeneous(&self, d: usize) -> Self;
    fn truncated(&self, max_degree: usize) -> Self;
    fn is_zero(&self) -> bool;

    /// The coefficient of the unit in degree 0.
    fn constant(&self) -> Self::Scalar;

    fn minus(&self, o: &Self) -> Result<Self> {
        self.plus(&o.times(&(-Self::Scalar::one())))
    }
}

impl GradedAlgebra for Element {
    type Scalar = Rational;

    fn zero_like(&self) -> Self {
        Element::zero(self.support.clone())
    }

    fn unit_like(&self) -> Self {
        Element::one(self.support.clone())
    }

    fn plus(&self, o: &Self) -> Result<Self> {
        self.add(o)
    }

    fn times(&self, c: &Rational) -> Self {
        self.scaled(c)
    }

    fn product(&self, o: &Self, max_degree: usize) -> Result<Self> {
        match &self.support {
            Support::Skeleton(s) if s.all_intervals() => stack_truncated(self, o, Some(max_degree)),
            Support::Colored(_) | Support::Closed => union_product(self, o, Some(max_degree)),
            other => Err(Error::Argument(format!("no product on {other}"))),
        }
    }

    fn homogeneous(&self, d: usize) -> Self {
        self.part(d)
    }

    fn truncated(&self, max_degree: usize) -> Self {
        self.truncate(max_degree)
    }

    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }

    fn constant(&self) -> Rational {
        self.terms.coeff(&crate::diagram::Graph::empty())
    }
}

/// Noncommutative polynomials in letters `0, 1, ...`, graded by word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAssoc<S: Scalar>(pub LinComb<Vec<u8>, S>);

impl<S: Scalar> FreeAssoc<S> {
    pub fn letter(i: u8) -> Self {
        FreeAssoc(LinComb::basis(vec![i]))
    }

    pub fn one() -> Self {
        FreeAssoc(LinComb::basis(Vec::new()))
    }

    pub fn zero() -> Self {
        FreeAssoc(LinComb::zero())
    }

    /// `[a, b] = ab - ba`.
    pub fn bracket(&self, o: &Self) -> Self {
        let n = usize::MAX;
        let ab = self.product(o, n).unwrap();
        let ba = o.product(self, n).unwrap();
        ab.minus(&ba).unwrap()
    }

    pub fn denominator(&self) -> num_bigint::BigInt {
        self.0.denominator()
    }
}

impl<S: Scalar> GradedAlgebra for FreeAssoc<S> {
    type Scalar = S;

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn unit_like(&self) -> Self {
        Self::one()
    }

    fn plus(&self, o: &Self) -> Result<Self> {
        let mut t = self.0.clone();
        t.add_assign(&o.0);
        Ok(FreeAssoc(t))
    }

    fn times(&self, c: &S) -> Self {
        FreeAssoc(self.0.scaled(c))
    }

    fn product(&self, o: &Self, max_degree: usize) -> Result<Self> {
        let mut t = LinComb::zero();
        for (u, a) in self.0.iter() {
            for (v, b) in o.0.iter() {
                if u.len() + v.len() > max_degree {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                t.add_term(w, a.clone() * b.clone());
            }
        }
        Ok(FreeAssoc(t))
    }

    fn homogeneous(&self, d: usize) -> Self {
        FreeAssoc(self.0.map_terms(|w, c| (w.len() == d).then(|| (w.clone(), c.clone()))))
    }

    fn truncated(&self, max_degree: usize) -> Self {
        FreeAssoc(self.0.map_terms(|w, c| (w.len() <= max_degree).then(|| (w.clone(), c.clone()))))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn constant(&self) -> S {
        self.0.coeff(&Vec::new())
    }
}

/// A series truncated above `max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries<A: GradedAlgebra> {
    pub value: A,
    pub max_degree: usize,
}

impl<A: GradedAlgebra> GradedSeries<A> {
    pub fn new(value: A, max_degree: usize) -> Self {
        GradedSeries {
            value: value.truncated(max_degree),
            max_degree,
        }
    }

    pub fn one_like(&self) -> Self {
        GradedSeries {
            value: self.value.unit_like(),
            max_degree: self.max_degree,
        }
    }

    pub fn part(&self, d: usize) -> A {
        self.value.homogeneous(d)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(GradedSeries::new(self.value.plus(&o.value)?, self.max_degree.min(o.max_degree)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(GradedSeries::new(self.value.minus(&o.value)?, self.max_degree.min(o.max_degree)))
    }

    pub fn scaled(&self, c: &A::Scalar) -> Self {
        GradedSeries {
            value: self.value.times(c),
            max_degree: self.max_degree,
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.max_degree.min(o.max_degree);
        Ok(GradedSeries::new(self.value.product(&o.value, n)?, n))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

fn scalar_inv<S: Scalar>(k: usize) -> S {
    S::one() / S::from_int(k as i64)
}

/// `exp(x)` for `x` without constant term.
pub fn series_exp<A: GradedAlgebra>(x: &GradedSeries<A>) -> Result<GradedSeries<A>> {
    if !num_traits::Zero::is_zero(&x.value.constant()) {
        return Err(Error::Argument("exp of a series with nonzero constant term".into()));
    }
    let n = x.max_degree;
    let mut acc = x.one_like();
    let mut power = x.one_like();
    for k in 1..=n {
        power = power.mul(x)?.scaled(&scalar_inv(k));
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power)?;
    }
    Ok(acc)
}

/// `log(x)` for `x` with constant term 1.
pub fn series_log<A: GradedAlgebra>(x: &GradedSeries<A>) -> Result<GradedSeries<A>> {
    if x.value.constant() != A::Scalar::one() {
        return Err(Error::Argument("log of a series whose constant term is not 1".into()));
    }
    let y = x.sub(&x.one_like())?;
    let n = x.max_degree;
    let mut acc = GradedSeries::new(x.value.zero_like(), n);
    let mut power = x.one_like();
    for k in 1..=n {
        power = power.mul(&y)?;
        if power.is_zero() {
            break;
        }
        let c = if k % 2 == 1 {
            scalar_inv::<A::Scalar>(k)
        } else {
            -scalar_inv::<A::Scalar>(k)
        };
        acc = acc.add(&power.scaled(&c))?;
    }
    Ok(acc)
}

/// `x^{-1} = exp(-log x)`.
pub fn series_inverse<A: GradedAlgebra>(x: &GradedSeries<A>) -> Result<GradedSeries<A>> {
    let l = series_log(x)?;
    series_exp(&l.scaled(&(-A::Scalar::one())))
}

/// `log(exp(x_1) ... exp(x_l))`.
pub fn bch<A: GradedAlgebra>(xs: &[GradedSeries<A>]) -> Result<GradedSeries<A>> {
    let first = xs
        .first()
        .ok_or_else(|| Error::Argument("bch of an empty list".into()))?;
    let mut prod = series_exp(first)?;
    for x in &xs[1..] {
        prod = prod.mul(&series_exp(x)?)?;
    }
    series_log(&prod)
}

/// Right-nested bracket `[w_1, [w_2, ... [w_{k-1}, w_k]]]` of letters.
pub fn nested_bracket<S: Scalar>(word: &[u8]) -> FreeAssoc<S> {
    let mut acc = FreeAssoc::letter(*word.last().expect("nonempty word"));
    for &a in word[..word.len() - 1].iter().rev() {
        acc = FreeAssoc::letter(a).bracket(&acc);
    }
    acc
}

/// Homogeneous parts of the Campbell-Hausdorff series of `letters` free
/// generators from Dynkin's formula, through word length `max_degree`.
pub fn bch_dynkin<S: Scalar>(letters: u8, max_degree: usize) -> BTreeMap<usize, FreeAssoc<S>> {
    // blocks: nonzero exponent vectors (a_1..a_l) with total <= max_degree
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(l: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            if cur.iter().any(|&a| a > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=rem {
            cur.push(a);
            rec(l, rem - a, cur, out);
            cur.pop();
        }
    }
    rec(letters as usize, max_degree, &mut Vec::new(), &mut blocks);
    let fact = |k: usize| -> S { S::from_bigint(crate::scalar::factorial(k as u64)) };
    let mut out: BTreeMap<usize, FreeAssoc<S>> = BTreeMap::new();
    // sequences of n blocks
    fn seqs(
        blocks: &[Vec<usize>],
        rem: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if !cur.is_empty() {
            f(cur);
        }
        for (i, b) in blocks.iter().enumerate() {
            let t: usize = b.iter().sum();
            if t <= rem {
                cur.push(i);
                seqs(blocks, rem - t, cur, f);
                cur.pop();
            }
        }
    }
    seqs(&blocks, max_degree, &mut Vec::new(), &mut |seq| {
        let n = seq.len();
        let mut word = Vec::new();
        let mut denom = S::one();
        for &i in seq {
            for (letter, &a) in blocks[i].iter().enumerate() {
                word.extend(std::iter::repeat(letter as u8).take(a));
                denom = denom * fact(a);
            }
        }
        let total = word.len();
        let sign = if n % 2 == 1 { S::one() } else { -S::one() };
        let c = sign / (S::from_int(n as i64) * S::from_int(total as i64) * denom);
        let term = nested_bracket::<S>(&word).times(&c);
        let slot = out.entry(total).or_insert_with(FreeAssoc::zero);
        *slot = slot.plus(&term).unwrap();
    });
    out.retain(|_, v| !v.is_zero());
    out
}

/// Homogeneous parts of `log(exp(x_0) ... exp(x_{l-1}))` by direct series
/// composition in the free algebra.
pub fn bch_free_direct<S: Scalar>(letters: u8, max_degree: usize) -> Result<BTreeMap<usize, FreeAssoc<S>>> {
    let xs: Vec<_> = (0..letters)
        .map(|i| GradedSeries::new(FreeAssoc::<S>::letter(i), max_degree))
        .collect();
    let b = bch(&xs)?;
    let mut out = BTreeMap::new();
    for k in 1..=max_degree {
        let p = b.part(k);
        if !p.is_zero() {
            out.insert(k, p);
        }
    }
    Ok(out)
}
