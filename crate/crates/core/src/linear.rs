//! Formal linear combinations and exact linear algebra.
//!
//! Rational elimination keeps every row "top-pivoted": a row's pivot is its
//! largest column index. Reduction then only ever walks downwards, so no
//! back-substitution is needed and the surviving (non-pivot) columns are
//! independent of insertion order. Callers sort columns by canonical key,
//! which makes the smallest keys survive as representatives.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, lcm_of_denominators, Scalar};

/// A finite formal combination with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for LinComb<K, S> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> LinComb<K, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: S) -> Self {
        let mut x = Self::zero();
        x.add_term(k, c);
        x
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, S::one())
    }

    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, &S::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled(other, &-S::one());
    }

    pub fn scaled(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<K, S> {
        self.terms
    }

    /// Least `N >= 1` with integer coefficients after multiplying by `N`.
    pub fn denominator(&self) -> BigInt {
        lcm_of_denominators(self.terms.values())
    }

    /// Applies a key map with a signed/scaled result to every term.
    pub fn map_terms<K2: Ord + Clone>(&self, mut f: impl FnMut(&K, &S) -> Option<(K2, S)>) -> LinComb<K2, S> {
        let mut out = LinComb::zero();
        for (k, v) in &self.terms {
            if let Some((k2, c)) = f(k, v) {
                out.add_term(k2, c);
            }
        }
        out
    }

    /// Linear extension of `f`, which maps a key to a combination.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2, S>) -> LinComb<K2, S> {
        let mut out = LinComb::zero();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for LinComb<K, S> {
    fn from_iter<T: IntoIterator<Item = (K, S)>>(iter: T) -> Self {
        let mut x = Self::zero();
        for (k, c) in iter {
            x.add_term(k, c);
        }
        x
    }
}

/// Sparse vector, sorted by index, no zero entries.
pub type SparseVec<S> = Vec<(usize, S)>;

pub fn sparse_from_map<S: Scalar>(m: BTreeMap<usize, S>) -> SparseVec<S> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

// ---------------------------------------------------------------------------
// rational elimination
// ---------------------------------------------------------------------------

/// Incremental echelon form keyed by top pivots.
#[derive(Clone, Debug)]
pub struct Reducer<S> {
    /// pivot column -> row (normalized so the pivot entry is 1; the pivot
    /// itself is the last entry).
    rows: HashMap<usize, SparseVec<S>>,
}

impl<S: Scalar> Default for Reducer<S> {
    fn default() -> Self {
        Reducer { rows: HashMap::new() }
    }
}

impl<S: Scalar> Reducer<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    fn reduce_map(&self, work: &mut BTreeMap<usize, S>) {
        let mut bound = usize::MAX;
        loop {
            let next = work.range(..bound).next_back().map(|(k, _)| *k);
            let Some(c) = next else { break };
            bound = c;
            if let Some(row) = self.rows.get(&c) {
                let coef = work.remove(&c).unwrap();
                for (j, v) in &row[..row.len() - 1] {
                    let e = work.entry(*j).or_insert_with(S::zero);
                    *e -= &(coef.clone() * v.clone());
                    if e.is_zero() {
                        work.remove(j);
                    }
                }
            }
        }
    }

    /// Reduces a vector to its normal form on non-pivot columns.
    pub fn reduce(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut work: BTreeMap<usize, S> = v.iter().cloned().collect();
        self.reduce_map(&mut work);
        sparse_from_map(work)
    }

    /// Adds a row; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[(usize, S)]) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.last().cloned() else {
            return false;
        };
        let inv = S::one() / lead;
        let row: SparseVec<S> = r.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
        self.rows.insert(p, row);
        true
    }
}

/// Solves `sum_j x_j col_j = b` exactly; dependent columns (in the given
/// order) get the value zero. Errors when `b` is not in the span.
pub fn solve_columns<S: Scalar>(cols: &[SparseVec<S>], b: &[(usize, S)]) -> Result<Vec<S>> {
    // Each stored row keeps its expression in terms of the original columns.
    let mut rows: HashMap<usize, (SparseVec<S>, BTreeMap<usize, S>)> = HashMap::new();
    let reduce = |rows: &HashMap<usize, (SparseVec<S>, BTreeMap<usize, S>)>,
                  v: &[(usize, S)],
                  combo: &mut BTreeMap<usize, S>|
     -> BTreeMap<usize, S> {
        let mut work: BTreeMap<usize, S> = v.iter().cloned().collect();
        let mut bound = usize::MAX;
        loop {
            let next = work.range(..bound).next_back().map(|(k, _)| *k);
            let Some(c) = next else { break };
            bound = c;
            if let Some((row, expr)) = rows.get(&c) {
                let coef = work.remove(&c).unwrap();
                for (j, v) in &row[..row.len() - 1] {
                    let e = work.entry(*j).or_insert_with(S::zero);
                    *e -= &(coef.clone() * v.clone());
                    if e.is_zero() {
                        work.remove(j);
                    }
                }
                for (j, v) in expr {
                    let e = combo.entry(*j).or_insert_with(S::zero);
                    *e -= &(coef.clone() * v.clone());
                    if e.is_zero() {
                        combo.remove(j);
                    }
                }
            }
        }
        work
    };
    for (j, col) in cols.iter().enumerate() {
        let mut combo = BTreeMap::new();
        combo.insert(j, S::one());
        let r = reduce(&rows, col, &mut combo);
        if let Some((&p, lead)) = r.iter().next_back() {
            let inv = S::one() / lead.clone();
            let row: SparseVec<S> = r.iter().map(|(k, x)| (*k, x.clone() * inv.clone())).collect();
            let expr = combo.into_iter().map(|(k, x)| (k, x * inv.clone())).collect();
            rows.insert(p, (row, expr));
        }
    }
    let mut combo = BTreeMap::new();
    let residual = reduce(&rows, b, &mut combo);
    if !residual.is_empty() {
        return Err(Error::Solver(format!(
            "right-hand side has a residual with {} nonzero entries",
            residual.len()
        )));
    }
    // b - sum(combo_j col_j) = 0  =>  x = -combo
    let mut x = vec![S::zero(); cols.len()];
    for (j, v) in combo {
        x[j] = -v;
    }
    Ok(x)
}

/// Rank of a set of sparse rows.
pub fn rank_of<S: Scalar>(rows: &[SparseVec<S>]) -> usize {
    let mut r = Reducer::new();
    for row in rows {
        r.insert(row);
    }
    r.rank()
}

/// Basis of the rational kernel of the linear map whose columns are given.
pub fn kernel_columns<S: Scalar>(cols: &[SparseVec<S>]) -> Vec<SparseVec<S>> {
    let mut rows: HashMap<usize, (SparseVec<S>, BTreeMap<usize, S>)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut work: BTreeMap<usize, S> = col.iter().cloned().collect();
        let mut combo: BTreeMap<usize, S> = BTreeMap::new();
        combo.insert(j, S::one());
        let mut bound = usize::MAX;
        loop {
            let next = work.range(..bound).next_back().map(|(k, _)| *k);
            let Some(c) = next else { break };
            bound = c;
            if let Some((row, expr)) = rows.get(&c) {
                let coef = work.remove(&c).unwrap();
                for (i, v) in &row[..row.len() - 1] {
                    let e = work.entry(*i).or_insert_with(S::zero);
                    *e -= &(coef.clone() * v.clone());
                    if e.is_zero() {
                        work.remove(i);
                    }
                }
                for (i, v) in expr {
                    let e = combo.entry(*i).or_insert_with(S::zero);
                    *e -= &(coef.clone() * v.clone());
                    if e.is_zero() {
                        combo.remove(i);
                    }
                }
            }
        }
        match work.iter().next_back() {
            None => kernel.push(sparse_from_map(combo)),
            Some((&p, lead)) => {
                let inv = S::one() / lead.clone();
                let row = work.iter().map(|(k, x)| (*k, x.clone() * inv.clone())).collect();
                let expr = combo.into_iter().map(|(k, x)| (k, x * inv.clone())).collect();
                rows.insert(p, (row, expr));
            }
        }
    }
    kernel
}

// ---------------------------------------------------------------------------
// quotient bases
// ---------------------------------------------------------------------------

/// A quotient of the span of `keys` by a set of relations.
#[derive(Clone, Debug)]
pub struct GradedBasis<K: Ord + Hash + Eq + Clone, S> {
    pub degree: usize,
    keys: Vec<K>,
    index: HashMap<K, usize>,
    reducer: Reducer<S>,
    reps: Vec<usize>,
    rep_pos: HashMap<usize, usize>,
}

impl<K: Ord + Hash + Eq + Clone, S: Scalar> GradedBasis<K, S> {
    /// `keys` are the spanning generators; they are sorted internally.
    pub fn new(degree: usize, mut keys: Vec<K>, relations: &[LinComb<K, S>]) -> Result<Self> {
        keys.sort();
        keys.dedup();
        let index: HashMap<K, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut reducer = Reducer::new();
        for rel in relations {
            let v = Self::to_sparse_with(&index, rel)?;
            reducer.insert(&v);
        }
        let reps: Vec<usize> = (0..keys.len()).filter(|c| !reducer.is_pivot(*c)).collect();
        let rep_pos = reps.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Ok(GradedBasis {
            degree,
            keys,
            index,
            reducer,
            reps,
            rep_pos,
        })
    }

    fn to_sparse_with(index: &HashMap<K, usize>, x: &LinComb<K, S>) -> Result<SparseVec<S>> {
        let mut v: SparseVec<S> = Vec::with_capacity(x.len());
        for (k, c) in x.iter() {
            let i = index
                .get(k)
                .ok_or_else(|| Error::Argument("term outside the spanning set of this space".into()))?;
            v.push((*i, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn generator_count(&self) -> usize {
        self.keys.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.reducer.rank()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn contains_key(&self, k: &K) -> bool {
        self.index.contains_key(k)
    }

    pub fn representatives(&self) -> Vec<K> {
        self.reps.iter().map(|&c| self.keys[c].clone()).collect()
    }

    pub fn representative(&self, i: usize) -> &K {
        &self.keys[self.reps[i]]
    }

    /// Sparse coordinates over the representatives.
    pub fn reduce_sparse(&self, x: &LinComb<K, S>) -> Result<SparseVec<S>> {
        let v = Self::to_sparse_with(&self.index, x)?;
        Ok(self
            .reducer
            .reduce(&v)
            .into_iter()
            .map(|(c, s)| (self.rep_pos[&c], s))
            .collect())
    }

    pub fn reduce(&self, x: &LinComb<K, S>) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); self.dim()];
        for (i, s) in self.reduce_sparse(x)? {
            out[i] = s;
        }
        Ok(out)
    }

    /// Normal form as a combination of representatives.
    pub fn normal_form(&self, x: &LinComb<K, S>) -> Result<LinComb<K, S>> {
        Ok(self
            .reduce_sparse(x)?
            .into_iter()
            .map(|(i, s)| (self.representative(i).clone(), s))
            .collect())
    }

    pub fn from_coords(&self, coords: &[(usize, S)]) -> LinComb<K, S> {
        coords
            .iter()
            .map(|(i, s)| (self.representative(*i).clone(), s.clone()))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// numbers d_n
// ---------------------------------------------------------------------------

/// `d_n = (2! 3! ... n!)^4 (n+1)!`; `d_0 = 1` by convention.
pub fn dn(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Argument("d_n needs n >= 1".into()));
    }
    Ok(dn_ext(n))
}

/// `d_n` extended by `d_0 = 1`.
pub fn dn_ext(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let p = (2..=n).fold(BigInt::one(), |acc, k| acc * factorial(k));
    num_traits::pow(p, 4) * factorial(n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DnDivisibility {
    pub a: bool,
    pub b: bool,
    pub c: Option<bool>,
}

/// The three divisibility statements relating `d_p d_q` to `d_{p+q}`,
/// `d_{p+q-1}` and `d_{p+q-2}`. Part (c) is `None` unless `p, q >= 2`.
pub fn check_dn_divisibility(p: u64, q: u64) -> Result<DnDivisibility> {
    if p == 0 || q == 0 {
        return Err(Error::Argument("p and q must be positive".into()));
    }
    let prod = dn_ext(p) * dn_ext(q);
    let a = (dn_ext(p + q) % (factorial(p + q) * &prod)).is_zero();
    let b = ((BigInt::from(2) * dn_ext(p + q - 1)) % &prod).is_zero();
    let c = if p >= 2 && q >= 2 {
        Some(((BigInt::from(96) * dn_ext(p + q - 2)) % &prod).is_zero())
    } else {
        None
    };
    Ok(DnDivisibility { a, b, c })
}

/// Part (c) on its own, rejecting `p < 2` or `q < 2`.
pub fn check_dn_part_c(p: u64, q: u64) -> Result<bool> {
    check_dn_divisibility(p, q)?
        .c
        .ok_or_else(|| Error::Argument("part (c) needs p, q >= 2".into()))
}

/// `k! d_{n_1} ... d_{n_k}` divides `d_{n_1 + ... + n_k}`.
pub fn check_dn_corollary(parts: &[u64]) -> Result<bool> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Argument("parts must be positive".into()));
    }
    let lhs = parts
        .iter()
        .fold(factorial(parts.len() as u64), |acc, &n| acc * dn_ext(n));
    Ok((dn_ext(parts.iter().sum()) % lhs).is_zero())
}

/// All compositions of `n` into positive parts.
pub fn compositions(n: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// integer normal forms
// ---------------------------------------------------------------------------

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

/// `U A V = D` with `D` diagonal, `d_i | d_{i+1}`, `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct IntegerMatrixNF {
    pub input: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl IntegerMatrixNF {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

/// Smith normal form by elementary operations, pivoting on the entry of
/// minimal absolute value.
pub fn smith_normal_form(a: &IntMatrix, ncols: usize) -> IntegerMatrixNF {
    let m = a.len();
    let n = ncols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // minimal nonzero entry in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                for j in t..n {
                    let x = &q * &d[t][j];
                    d[i][j] -= x;
                }
                for j in 0..m {
                    let x = &q * &u[t][j];
                    u[i][j] -= x;
                }
                if !d[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                for i in t..m {
                    let x = &q * &d[i][t];
                    d[i][j] -= x;
                }
                for i in 0..n {
                    let x = &q * &v[i][t];
                    v[i][j] -= x;
                }
                if !d[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility: every remaining entry must be divisible by the pivot
                let mut fix = None;
                'outer: for i in t + 1..m {
                    for j in t + 1..n {
                        if !(&d[i][j] % &d[t][t]).is_zero() {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    None => break,
                    Some(i) => {
                        // add row i to row t and continue reducing
                        for j in t..n {
                            let x = d[i][j].clone();
                            d[t][j] += x;
                        }
                        for j in 0..m {
                            let x = u[i][j].clone();
                            u[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            // bring the minimal entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..m {
                if !d[i][t].is_zero() && d[i][t].abs() < d[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if !d[t][j].is_zero() && d[t][j].abs() < d[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                d.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                for row in d.iter_mut() {
                    row.swap(t, best.1);
                }
                for row in v.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        if d[t][t].is_negative() {
            for j in t..n {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..m {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    IntegerMatrixNF {
        input: a.clone(),
        diagonal,
        u,
        v,
    }
}

/// Row-style Hermite normal form of the integer span of `gens` (length-`n`
/// vectors): rows with strictly increasing leading columns, positive leading
/// entries, entries above each leading entry reduced modulo it.
pub fn hermite_rows(gens: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let mut rows: IntMatrix = gens.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..n {
        loop {
            let mut piv: Option<usize> = None;
            for i in r..rows.len() {
                if !rows[i][c].is_zero() && piv.map_or(true, |p| rows[i][c].abs() < rows[p][c].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (top, rest) = rows.split_at_mut(i);
                for j in c..n {
                    let x = &q * &top[r][j];
                    rest[0][j] -= x;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for j in c..n {
                    rows[r][j] = -rows[r][j].clone();
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (top, rest) = rows.split_at_mut(r);
                for j in c..n {
                    let x = &q * &rest[0][j];
                    top[i][j] -= x;
                }
            }
            r += 1;
        }
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        if r >= rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Integer kernel of the map `x -> x M` for an `m x n` matrix `M` given by
/// rows: a basis of `{ x in Z^m : x M = 0 }`.
pub fn integer_left_kernel(m_rows: &IntMatrix, n: usize) -> IntMatrix {
    let m = m_rows.len();
    // augmented rows [M_i | e_i]
    let mut aug: IntMatrix = m_rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        loop {
            let mut piv: Option<usize> = None;
            for i in r..aug.len() {
                if !aug[i][c].is_zero() && piv.map_or(true, |p| aug[i][c].abs() < aug[p][c].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            aug.swap(r, p);
            let mut done = true;
            for i in r + 1..aug.len() {
                if aug[i][c].is_zero() {
                    continue;
                }
                let q = aug[i][c].div_floor(&aug[r][c]);
                let (top, rest) = aug.split_at_mut(i);
                for j in c..n + m {
                    let x = &q * &top[r][j];
                    rest[0][j] -= x;
                }
                if !aug[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    let kernel: IntMatrix = aug[r..].iter().map(|row| row[n..].to_vec()).collect();
    hermite_rows(&kernel, m)
}

/// A full-rank sublattice basis (HNF rows) inside `Q^n`.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub n: usize,
    /// HNF basis of `scale` times the lattice.
    pub basis: IntMatrix,
    pub scale: BigInt,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators(gens: &[Vec<BigInt>], n: usize) -> Self {
        let basis = hermite_rows(gens, n);
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        Lattice {
            n,
            basis,
            scale: BigInt::one(),
            pivots,
        }
    }

    /// Lattice spanned by rational generators. They are cleared of
    /// denominators first and the common factor is remembered.
    pub fn from_rational_generators<S: Scalar>(gens: &[Vec<S>], n: usize) -> Result<Self> {
        let mut scale = BigInt::one();
        for g in gens {
            if g.len() != n {
                return Err(Error::Argument("generator of the wrong length".into()));
            }
            scale = scale.lcm(&lcm_of_denominators(g));
        }
        let s = S::from_bigint(scale.clone());
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x.clone() * s.clone()).numer_big()).collect())
            .collect();
        let mut lat = Self::from_generators(&ints, n);
        lat.scale = scale;
        Ok(lat)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the lattice basis, `None` when `x` is outside
    /// the rational span.
    pub fn coordinates<S: Scalar>(&self, x: &[S]) -> Option<Vec<S>> {
        let s = S::from_bigint(self.scale.clone());
        let mut rest: Vec<S> = x.iter().map(|v| v.clone() * s.clone()).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rest[p].clone() / S::from_bigint(row[p].clone());
            if !c.is_zero() {
                for j in p..self.n {
                    if !row[j].is_zero() {
                        rest[j] -= &(c.clone() * S::from_bigint(row[j].clone()));
                    }
                }
            }
            coords.push(c);
        }
        if rest.iter().all(|v| v.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Least `N` with `N x` in the lattice.
    pub fn denominator<S: Scalar>(&self, x: &[S]) -> Option<BigInt> {
        self.coordinates(x).map(|c| lcm_of_denominators(&c))
    }

    pub fn contains<S: Scalar>(&self, x: &[S]) -> bool {
        self.denominator(x).map_or(false, |d| d.is_one())
    }
}

/// Elementary divisors above one of the cokernel of the inclusion of the
/// lattice spanned by `image` (rows) inside the lattice spanned by `ambient`
/// (rows, a basis), both in the same coordinates. Errors when some image
/// vector is not an integer combination of the ambient basis.
pub fn relative_torsion(ambient: &Lattice, image: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let r = ambient.rank();
    let mut rows = Vec::with_capacity(image.len());
    for v in image {
        let xs: Vec<crate::Rational> = v.iter().map(|x| crate::Rational::from_bigint(x.clone())).collect();
        let c = ambient
            .coordinates(&xs)
            .ok_or_else(|| Error::Numeric("image vector outside the ambient span".into()))?;
        let mut row = Vec::with_capacity(r);
        for x in c {
            if !x.is_integer() {
                return Err(Error::Numeric("image vector not integral in the ambient lattice".into()));
            }
            row.push(x.numer_big());
        }
        rows.push(row);
    }
    if rows.is_empty() || r == 0 {
        return Ok(Vec::new());
    }
    Ok(smith_normal_form(&rows, r).torsion())
}
