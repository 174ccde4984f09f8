//! The cobar complex `C^n = P_n` (or `B_n`), its symmetric and Harrison
//! subcomplexes, integral cohomology, and the partition complex `E(k)`.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::associator::{act_normal, characters_of, full_atoms, MonomialIndex};
use crate::bspace::{self, Atom, Monomial, SymComb};
use crate::chi::p_normal_form;
use crate::diagram::{enumerate, EnumFilter, Skeleton, Support, DEFAULT_ENUMERATION_CAP};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::{delta_i, eulerian_idempotent, permute, tensor_left, tensor_right};
use crate::linear::{
    integer_left_kernel, kernel_columns, rank_of, relative_torsion, smith_normal_form, IntMatrix, Lattice,
    LinComb, Reducer, SparseVec,
};
use crate::relations::multisets;
use crate::scalar::{factorial, Scalar};
use crate::Rational;

/// `d x = 1 (x) x - Delta_1 x + ... + (-1)^n Delta_n x + (-1)^{n+1} x (x) 1`.
///
/// Works on diagrams on strings and on colored characters alike.
pub fn differential(x: &Element) -> Result<Element> {
    let n = x
        .support
        .arity()
        .ok_or_else(|| crate::Error::Argument("the cobar differential needs strings or colors".into()))?;
    let mut out = tensor_left(x)?;
    for i in 1..=n {
        let sign = if i % 2 == 1 { -1 } else { 1 };
        out.add_scaled(&delta_i(x, i)?, &Rational::from_int(sign))?;
    }
    let sign = if (n + 1) % 2 == 1 { -1 } else { 1 };
    out.add_scaled(&tensor_right(x)?, &Rational::from_int(sign))?;
    Ok(out)
}

/// Largest arity and degree for which cochain spaces are built.
pub const COBAR_ARITY_CAP: usize = 5;
pub const COBAR_DEGREE_CAP: usize = 5;

/// Which subcomplex of `C^n = P_n` a cochain space describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// All of `P_n`.
    Full,
    /// The lattice spanned by g-connected non-degenerate diagrams.
    Lattice,
    /// `x + (-1)^{n(n+1)/2} sigma(x) = 0` inside `P_n`.
    Sym,
    /// The image of the first Eulerian idempotent.
    Harr,
    /// Integer solutions of the symmetry equation inside the lattice.
    SymLattice,
}

impl Flavor {
    pub fn is_integral(self) -> bool {
        matches!(self, Flavor::Lattice | Flavor::SymLattice)
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Full => "full",
            Flavor::Lattice => "lattice",
            Flavor::Sym => "sym",
            Flavor::Harr => "harr",
            Flavor::SymLattice => "sym-lattice",
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "full" => Flavor::Full,
            "lattice" => Flavor::Lattice,
            "sym" => Flavor::Sym,
            "harr" | "harrison" => Flavor::Harr,
            "sym-lattice" | "sym_lattice" => Flavor::SymLattice,
            other => return Err(Error::Parse(format!("unknown flavor {other:?}"))),
        })
    }
}

/// A subspace (or, for integral flavors, a lattice) of `P_n` in one degree,
/// written in normal-form coordinates.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub n: usize,
    pub degree: usize,
    pub flavor: Flavor,
    /// Ambient monomials; the lattice flavors only use single full atoms.
    pub ambient: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
    /// A basis; for integral flavors a Hermite basis of the lattice.
    pub basis: Vec<SymComb>,
    lattice: Option<Lattice>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Dense ambient coordinates; errors on monomials outside the ambient.
    pub fn ambient_vector(&self, x: &SymComb) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.ambient.len()];
        for (m, c) in x.iter() {
            let i = self
                .position
                .get(m)
                .ok_or_else(|| Error::Argument(format!("monomial {m:?} outside the cochain space")))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// Coordinates in `basis`, `None` outside the rational span. Only
    /// integral flavors carry the triangular structure this needs.
    pub fn lattice_coordinates(&self, x: &SymComb) -> Result<Option<Vec<Rational>>> {
        let lat = self
            .lattice
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{} cochains carry no lattice", self.flavor.name())))?;
        Ok(lat.coordinates(&self.ambient_vector(x)?))
    }

    fn from_parts(n: usize, degree: usize, flavor: Flavor, ambient: Vec<Monomial>) -> Self {
        let position = ambient.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        CochainSpace {
            n,
            degree,
            flavor,
            ambient,
            position,
            basis: Vec::new(),
            lattice: None,
        }
    }

    fn set_lattice(&mut self, gens: &[Vec<Rational>]) -> Result<()> {
        let lat = Lattice::from_rational_generators(gens, self.ambient.len())?;
        let s = Rational::from_bigint(lat.scale.clone());
        self.basis = lat
            .basis
            .iter()
            .map(|row| self.from_dense_ints(row, &s))
            .collect();
        self.lattice = Some(lat);
        Ok(())
    }

    fn from_dense_ints(&self, row: &[BigInt], scale: &Rational) -> SymComb {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.ambient[i].clone(), Rational::from_bigint(c.clone()) / scale.clone()))
            .collect()
    }

    fn from_sparse(&self, v: &SparseVec<Rational>) -> SymComb {
        v.iter().map(|(i, c)| (self.ambient[*i].clone(), c.clone())).collect()
    }

    fn unit_vector(&self, i: usize) -> SymComb {
        SymComb::basis(self.ambient[i].clone())
    }
}

fn check_caps(n: usize, degree: usize) -> Result<()> {
    if n > COBAR_ARITY_CAP || degree > COBAR_DEGREE_CAP {
        return Err(Error::Capacity(format!(
            "cochains are built for n <= {COBAR_ARITY_CAP} and degree <= {COBAR_DEGREE_CAP}"
        )));
    }
    Ok(())
}

/// Atoms of connected characters of degree `1..=degree` with colors in `1..=n`.
fn atoms_up_to(n: usize, degree: usize) -> Result<Vec<Atom>> {
    let mut out = Vec::new();
    for d in 1..=degree {
        for e in 1..=(d + 1).min(2 * d) {
            for colors in multisets(n as u8, e) {
                for index in 0..bspace::connected_dim(&colors, d)? {
                    out.push(Atom {
                        degree: d as u16,
                        colors: colors.clone(),
                        index: index as u32,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Sorted monomials of total degree `degree` in the atoms of `P_n`.
pub fn monomial_basis(n: usize, degree: usize) -> Result<Vec<Monomial>> {
    if n == 0 {
        return Ok(if degree == 0 { vec![Vec::new()] } else { Vec::new() });
    }
    let atoms = atoms_up_to(n, degree)?;
    let mut out = Vec::new();
    fn rec(atoms: &[Atom], start: usize, rem: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..atoms.len() {
            let d = atoms[i].degree as usize;
            if d <= rem {
                cur.push(atoms[i].clone());
                rec(atoms, i, rem - d, cur, out);
                cur.pop();
            }
        }
    }
    rec(&atoms, 0, degree, &mut Vec::new(), &mut out);
    Ok(out)
}

fn lattice_ambient(n: usize, degree: usize) -> Result<Vec<Monomial>> {
    if n == 0 {
        return monomial_basis(0, degree);
    }
    if degree == 0 {
        return Ok(Vec::new());
    }
    Ok(full_atoms(n, degree)?.into_iter().map(|a| vec![a]).collect())
}

/// The cobar differential on normal forms of characters on `n` colors.
pub fn differential_normal(x: &SymComb, n: usize) -> Result<SymComb> {
    if n == 0 || x.is_zero() {
        return Ok(SymComb::zero());
    }
    bspace::reduce_element(&differential(&characters_of(x, n)?)?)
}

/// `x + (-1)^{n(n+1)/2} sigma(x)` for the order reversal `sigma`.
pub fn symmetry_defect_normal(x: &SymComb, n: usize) -> Result<SymComb> {
    if n == 0 {
        return Ok(SymComb::zero());
    }
    let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let rev: Vec<u8> = (1..=n as u8).rev().collect();
    let c = characters_of(x, n)?;
    let img = c.add(&permute(&rev, &c)?.scaled(&Rational::from_int(sign)))?;
    bspace::reduce_element(&img)
}

/// Generators of the lattice `Q^Z_n` in normal form.
pub fn lattice_generators(n: usize, degree: usize) -> Result<Vec<SymComb>> {
    if n == 0 {
        return Ok(if degree == 0 { vec![bspace::unit()] } else { Vec::new() });
    }
    let filter = EnumFilter {
        g_connected: true,
        non_degenerate: true,
        max_legs_per_component: None,
    };
    let gens = enumerate(&Skeleton::strings(n), degree, &filter, DEFAULT_ENUMERATION_CAP)?;
    gens.iter()
        .map(|g| p_normal_form(&Element::from_canonical(Support::strings(n), LinComb::basis(g.clone()))))
        .collect()
}

fn lcm_scale(rows: &[Vec<Rational>]) -> Rational {
    let mut l = BigInt::one();
    for r in rows {
        for x in r {
            l = l.lcm(x.denom());
        }
    }
    Rational::from_bigint(l)
}

fn integer_rows(rows: &[Vec<Rational>]) -> IntMatrix {
    let s = lcm_scale(rows);
    rows.iter()
        .map(|r| r.iter().map(|x| (x * &s).to_integer()).collect())
        .collect()
}

/// Builds `C^n` of the given flavor in one degree.
pub fn subcomplex_basis(n: usize, degree: usize, flavor: Flavor) -> Result<CochainSpace> {
    check_caps(n, degree)?;
    let ambient = if flavor.is_integral() {
        lattice_ambient(n, degree)?
    } else {
        monomial_basis(n, degree)?
    };
    let mut space = CochainSpace::from_parts(n, degree, flavor, ambient);
    let width = space.ambient.len();
    match flavor {
        Flavor::Full => {
            space.basis = (0..width).map(|i| space.unit_vector(i)).collect();
        }
        Flavor::Sym => {
            let mut cols = Vec::with_capacity(width);
            for i in 0..width {
                let img = symmetry_defect_normal(&space.unit_vector(i), n)?;
                cols.push(sparse_of(&space, &img)?);
            }
            space.basis = kernel_columns(&cols).iter().map(|v| space.from_sparse(v)).collect();
        }
        Flavor::Harr => {
            let e = if n == 0 { None } else { Some(eulerian_idempotent(n, 1)?) };
            let mut red = Reducer::new();
            for i in 0..width {
                let x = space.unit_vector(i);
                let img = match &e {
                    Some(e) => act_normal(e, &x, n)?,
                    None => x,
                };
                let v = sparse_of(&space, &img)?;
                if red.insert(&v) {
                    space.basis.push(img);
                }
            }
        }
        Flavor::Lattice => {
            let gens = lattice_generators(n, degree)?
                .iter()
                .map(|g| space.ambient_vector(g))
                .collect::<Result<Vec<_>>>()?;
            space.set_lattice(&gens)?;
        }
        Flavor::SymLattice => {
            let lat = subcomplex_basis(n, degree, Flavor::Lattice)?;
            if lat.is_zero() {
                space.lattice = lat.lattice;
                return Ok(space);
            }
            let images = lat
                .basis
                .iter()
                .map(|b| space.ambient_vector(&symmetry_defect_normal(b, n)?))
                .collect::<Result<Vec<_>>>()?;
            let kernel = integer_left_kernel(&integer_rows(&images), width);
            let gens: Vec<Vec<Rational>> = kernel
                .iter()
                .map(|c| combine(&lat, c))
                .collect::<Result<Vec<_>>>()?;
            if gens.is_empty() {
                space.lattice = Some(Lattice::from_generators(&[], width));
            } else {
                space.set_lattice(&gens)?;
            }
        }
    }
    if flavor.is_integral() && space.lattice.is_none() {
        space.lattice = Some(Lattice::from_generators(&[], width));
    }
    Ok(space)
}

fn combine(space: &CochainSpace, c: &[BigInt]) -> Result<Vec<Rational>> {
    let mut acc = vec![Rational::zero(); space.ambient.len()];
    for (b, k) in space.basis.iter().zip(c) {
        if k.is_zero() {
            continue;
        }
        let k = Rational::from_bigint(k.clone());
        for (x, y) in acc.iter_mut().zip(space.ambient_vector(b)?) {
            *x += y * &k;
        }
    }
    Ok(acc)
}

fn sparse_of(space: &CochainSpace, x: &SymComb) -> Result<SparseVec<Rational>> {
    Ok(space
        .ambient_vector(x)?
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// Images of the basis of `space` under `d`, in a shared coordinate index.
fn differential_rows(space: &CochainSpace, index: &mut MonomialIndex) -> Result<Vec<SparseVec<Rational>>> {
    space
        .basis
        .iter()
        .map(|b| Ok(index.sparse(&differential_normal(b, space.n)?)))
        .collect()
}

/// Rational dimension of `H^n` of the given flavor in one degree.
pub fn cohomology_q(n: usize, degree: usize, flavor: Flavor) -> Result<usize> {
    let here = subcomplex_basis(n, degree, flavor)?;
    if here.is_zero() {
        return Ok(0);
    }
    let out_rank = rank_of(&differential_rows(&here, &mut MonomialIndex::default())?);
    let in_rank = if n == 0 {
        0
    } else {
        let prev = subcomplex_basis(n - 1, degree, flavor)?;
        rank_of(&differential_rows(&prev, &mut MonomialIndex::default())?)
    };
    Ok(here.dim() - out_rank - in_rank)
}

/// `H^n` over the integers: free rank and elementary divisors above one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralCohomology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// `H^n` of an integral flavor: `ker d_n / im d_{n-1}` on the lattices.
pub fn cohomology_integral(n: usize, degree: usize, flavor: Flavor) -> Result<IntegralCohomology> {
    if !flavor.is_integral() {
        return Err(Error::Precondition(format!(
            "torsion needs an integral flavor, got {}",
            flavor.name()
        )));
    }
    let here = subcomplex_basis(n, degree, flavor)?;
    let r = here.dim();
    if r == 0 {
        return Ok(IntegralCohomology {
            rank: 0,
            torsion: Vec::new(),
        });
    }
    let mut index = MonomialIndex::default();
    let sparse = differential_rows(&here, &mut index)?;
    let width = index.keys.len();
    let dense: Vec<Vec<Rational>> = sparse
        .iter()
        .map(|row| {
            let mut v = vec![Rational::zero(); width];
            for (i, c) in row {
                v[*i] = c.clone();
            }
            v
        })
        .collect();
    let kernel = Lattice::from_generators(&integer_left_kernel(&integer_rows(&dense), width), r);
    let mut image = Vec::new();
    if n > 0 {
        let prev = subcomplex_basis(n - 1, degree, flavor)?;
        for b in &prev.basis {
            let img = differential_normal(b, n - 1)?;
            let c = here
                .lattice_coordinates(&img)?
                .ok_or_else(|| Error::Numeric("differential leaves the lattice span".into()))?;
            let mut row = Vec::with_capacity(r);
            for x in c {
                if !x.is_integer() {
                    return Err(Error::Numeric("differential is not integral on the lattice".into()));
                }
                row.push(x.to_integer());
            }
            image.push(row);
        }
    }
    let image_rank = if image.is_empty() {
        0
    } else {
        smith_normal_form(&image, r).rank()
    };
    Ok(IntegralCohomology {
        rank: kernel.rank() - image_rank,
        torsion: relative_torsion(&kernel, &image)?,
    })
}

/// Elementary divisors of the torsion of `H^n`.
pub fn cohomology_torsion(n: usize, degree: usize, flavor: Flavor) -> Result<Vec<BigInt>> {
    Ok(cohomology_integral(n, degree, flavor)?.torsion)
}

/// `2 (m+1)! (m!)^2 [(m-1)!]^2`, the annihilator of `H^4` in degree `m`.
pub fn torsion_bound(m: usize) -> BigInt {
    let m = m as u64;
    let f = factorial(m);
    let g = if m == 0 { BigInt::one() } else { factorial(m - 1) };
    BigInt::from(2) * factorial(m + 1) * &f * &f * &g * &g
}

// ---------------------------------------------------------------------------
// the partition complex E(k)
// ---------------------------------------------------------------------------

/// Ordered `n`-tuples of disjoint nonempty subsets of `{1..k}` covering it,
/// stored as bit masks.
#[derive(Clone, Debug)]
pub struct PartitionChain {
    pub k: usize,
    pub n: usize,
    pub basis: Vec<Vec<u16>>,
}

/// Largest `k` for the partition complex.
pub const EK_CAP: usize = 8;

impl PartitionChain {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k > EK_CAP {
            return Err(Error::Capacity(format!("E(k) is built for k <= {EK_CAP}")));
        }
        let mut basis = Vec::new();
        if n >= 1 && n <= k {
            // every surjection {1..k} -> {1..n}
            let total = n.pow(k as u32);
            for code in 0..total {
                let mut parts = vec![0u16; n];
                let mut c = code;
                for elt in 0..k {
                    parts[c % n] |= 1 << elt;
                    c /= n;
                }
                if parts.iter().all(|p| *p != 0) {
                    basis.push(parts);
                }
            }
            basis.sort();
        }
        Ok(PartitionChain { k, n, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `d(theta_1..theta_n) = sum (-1)^{i-1} (.., d theta_i, ..)` with
/// `d theta` the sum over ordered splittings into two nonempty parts.
pub fn partition_differential(theta: &[u16]) -> LinComb<Vec<u16>, Rational> {
    let mut out = LinComb::zero();
    for (i, &t) in theta.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        // nonempty proper submasks of t
        let mut a = (t - 1) & t;
        while a != 0 {
            let mut next = theta[..i].to_vec();
            next.push(a);
            next.push(t & !a);
            next.extend_from_slice(&theta[i + 1..]);
            out.add_term(next, Rational::from_int(sign));
            a = (a - 1) & t;
        }
    }
    out
}

fn partition_matrix(from: &PartitionChain, to: &PartitionChain) -> IntMatrix {
    let pos: HashMap<&Vec<u16>, usize> = to.basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    from.basis
        .iter()
        .map(|b| {
            let mut row = vec![BigInt::zero(); to.dim()];
            for (t, c) in partition_differential(b).iter() {
                row[pos[t]] += c.to_integer();
            }
            row
        })
        .collect()
}

/// `H^n(E(k))` for `n = 1..=k` over the integers.
pub fn ek_cohomology(k: usize) -> Result<BTreeMap<usize, IntegralCohomology>> {
    let chains = (0..=k + 1)
        .map(|n| PartitionChain::new(k, n))
        .collect::<Result<Vec<_>>>()?;
    let nf = |n: usize| {
        let m = partition_matrix(&chains[n], &chains[n + 1]);
        smith_normal_form(&m, chains[n + 1].dim())
    };
    let forms: Vec<_> = (0..=k).map(nf).collect();
    let mut out = BTreeMap::new();
    for n in 1..=k {
        let rank_out = forms[n].rank();
        let prev = &forms[n - 1];
        out.insert(
            n,
            IntegralCohomology {
                rank: chains[n].dim() - rank_out - prev.rank(),
                torsion: prev.torsion(),
            },
        );
    }
    Ok(out)
}
