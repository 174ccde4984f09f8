//! Perturbative solution of the pentagon and hexagon equations.
//!
//! `phi` is kept as a normal form (a combination of connected character
//! atoms with all three colors) and turned into diagrams on strings with
//! `chi` whenever products are needed. Mistakes are compared in normal form.

use num_bigint::BigInt;

use crate::bspace::{self, Atom, Monomial, SymComb};
use crate::chi::{chi, p_normal_form};
use crate::cobar::differential;
use crate::diagram::{EnumFilter, Graph, Skeleton, Support, DEFAULT_ENUMERATION_CAP};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::{delta_i, eulerian_idempotent, permute, tensor_left, tensor_right, GroupAlgebraElement};
use crate::linear::{dn_ext, solve_columns, kernel_columns, LinComb, Lattice, SparseVec};
use crate::relations::multisets;
use crate::scalar::{factorial, Scalar};
use crate::series::{series_exp, series_inverse, GradedSeries};
use crate::Rational;

pub type Series = GradedSeries<Element>;

/// Largest truncation the solver accepts.
pub const ASSOCIATOR_CAP: usize = 6;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// The chord `r^{ij}` on `n` strings (1-based).
pub fn chord(n: usize, i: usize, j: usize) -> Element {
    let g = Graph::chords(&[((i - 1) as u8, (j - 1) as u8)]);
    Element::from_graph(Support::strings(n), &g, q(1)).expect("chord is well formed")
}

/// `R = exp(r/2)` in `P_2`.
pub fn r_matrix(max_degree: usize) -> Result<Series> {
    series_exp(&Series::new(chord(2, 1, 2).scaled(&Rational::from_ratio(1, 2)), max_degree))
}

fn map_series(s: &Series, f: impl Fn(&Element) -> Result<Element>) -> Result<Series> {
    Ok(Series::new(f(&s.value)?, s.max_degree))
}

pub fn series_delta(s: &Series, i: usize) -> Result<Series> {
    map_series(s, |x| delta_i(x, i))
}

pub fn series_permute(s: &Series, sigma: &[u8]) -> Result<Series> {
    map_series(s, |x| permute(sigma, x))
}

/// `R^{ij}` inside `P_3` (strings `i < j`).
fn r_ij(i: usize, j: usize, max_degree: usize) -> Result<Series> {
    series_exp(&Series::new(chord(3, i, j).scaled(&Rational::from_ratio(1, 2)), max_degree))
}

/// `Phi^{312} R^{13} (Phi^{-1})^{132} R^{23} Phi Delta_1(R^{-1}) - 1`.
pub fn hexagon_mistake(big_phi: &Series) -> Result<Series> {
    let n = big_phi.max_degree;
    let inv = series_inverse(big_phi)?;
    let r_inv = series_inverse(&r_matrix(n)?)?;
    let prod = series_permute(big_phi, &[3, 1, 2])?
        .mul(&r_ij(1, 3, n)?)?
        .mul(&series_permute(&inv, &[1, 3, 2])?)?
        .mul(&r_ij(2, 3, n)?)?
        .mul(big_phi)?
        .mul(&series_delta(&r_inv, 1)?)?;
    prod.sub(&prod.one_like())
}

/// `Delta_1(Phi^{-1}) Delta_3(Phi^{-1}) (1 (x) Phi) Delta_2(Phi) (Phi (x) 1) - 1`.
pub fn pentagon_mistake(big_phi: &Series) -> Result<Series> {
    let inv = series_inverse(big_phi)?;
    let prod = series_delta(&inv, 1)?
        .mul(&series_delta(&inv, 3)?)?
        .mul(&map_series(big_phi, tensor_left)?)?
        .mul(&series_delta(big_phi, 2)?)?
        .mul(&map_series(big_phi, tensor_right)?)?;
    prod.sub(&prod.one_like())
}

/// Degree-by-degree normal forms of a series; only nonzero ones are kept.
pub fn normal_parts(s: &Series) -> Result<Vec<(usize, SymComb)>> {
    let mut out = Vec::new();
    for (d, part) in s.value.by_degree() {
        let nf = p_normal_form(&part)?;
        if !nf.is_zero() {
            out.push((d, nf));
        }
    }
    Ok(out)
}

/// Characters on `n` colors representing a normal form.
pub fn characters_of(x: &SymComb, n: usize) -> Result<Element> {
    bspace::sym_to_element(x, Support::Colored(n as u8))
}

/// Diagrams on `n` strings representing a normal form.
pub fn diagrams_of(x: &SymComb, n: usize) -> Result<Element> {
    chi(&characters_of(x, n)?)
}

/// Atoms of connected characters of the given degree using every color
/// `1..=n` at least once.
pub fn full_atoms(n: usize, degree: usize) -> Result<Vec<Atom>> {
    let mut out = Vec::new();
    for e in n..=degree + 1 {
        for colors in multisets(n as u8, e) {
            if (1..=n as u8).any(|c| !colors.contains(&c)) {
                continue;
            }
            let dim = bspace::connected_dim(&colors, degree)?;
            for index in 0..dim {
                out.push(Atom {
                    degree: degree as u16,
                    colors: colors.clone(),
                    index: index as u32,
                });
            }
        }
    }
    Ok(out)
}

fn atom_element(a: &Atom, n: usize) -> Result<Element> {
    Element::from_graph(Support::Colored(n as u8), &bspace::atom_graph(a)?, q(1))
}

fn combo_of_atoms(atoms: &[Atom], coeffs: &[(usize, Rational)]) -> SymComb {
    coeffs.iter().map(|(i, c)| (vec![atoms[*i].clone()], c.clone())).collect()
}

/// Index of monomials, assigning fresh columns on demand.
#[derive(Default)]
pub struct MonomialIndex {
    pub keys: Vec<Monomial>,
    map: std::collections::HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn sparse(&mut self, x: &SymComb) -> SparseVec<Rational> {
        let mut v: SparseVec<Rational> = x
            .iter()
            .map(|(m, c)| {
                let next = self.keys.len();
                let i = *self.map.entry(m.clone()).or_insert_with(|| {
                    next
                });
                if i == next {
                    self.keys.push(m.clone());
                }
                (i, c.clone())
            })
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }
}

/// Basis (as coordinate vectors over `atoms`) of the symmetric part:
/// `x + (-1)^{n(n+1)/2} sigma(x) = 0` for the order reversal sigma.
pub fn symmetric_slice(atoms: &[Atom], n: usize) -> Result<Vec<SparseVec<Rational>>> {
    let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let rev: Vec<u8> = (1..=n as u8).rev().collect();
    let mut idx = MonomialIndex::default();
    let mut cols = Vec::new();
    for a in atoms {
        let x = atom_element(a, n)?;
        let img = x.add(&permute(&rev, &x)?.scaled(&q(sign)))?;
        cols.push(idx.sparse(&bspace::reduce_element(&img)?));
    }
    Ok(kernel_columns(&cols))
}

/// Group-algebra action on a normal form of characters on `n` colors.
pub fn act_normal(e: &GroupAlgebraElement, x: &SymComb, n: usize) -> Result<SymComb> {
    bspace::reduce_element(&e.act(&characters_of(x, n)?)?)
}

/// Per-degree denominator record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAudit {
    pub degree: usize,
    pub psi_denominator: BigInt,
    pub psi_bound: BigInt,
    pub mu_denominator: BigInt,
    pub mu_bound: BigInt,
    pub phi_denominator: BigInt,
    pub phi_bound: BigInt,
}

impl DegreeAudit {
    pub fn psi_ok(&self) -> bool {
        divides(&self.psi_denominator, &self.psi_bound)
    }
    pub fn mu_ok(&self) -> bool {
        divides(&self.mu_denominator, &self.mu_bound)
    }
    pub fn phi_ok(&self) -> bool {
        divides(&self.phi_denominator, &self.phi_bound)
    }
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    crate::scalar::divides(a, b)
}

#[derive(Clone, Debug)]
pub struct AssociatorState {
    /// `phi` as a normal form over connected three-colored atoms.
    pub phi: SymComb,
    pub solved_through: usize,
    pub audit: Vec<DegreeAudit>,
}

impl AssociatorState {
    pub fn trivial() -> Self {
        AssociatorState {
            phi: SymComb::zero(),
            solved_through: 0,
            audit: Vec::new(),
        }
    }

    /// `phi` as diagrams on three strings.
    pub fn phi_diagrams(&self) -> Result<Element> {
        diagrams_of(&self.phi, 3)
    }

    /// `Phi = exp(phi)` truncated at `max_degree`.
    pub fn big_phi(&self, max_degree: usize) -> Result<Series> {
        series_exp(&Series::new(self.phi_diagrams()?, max_degree))
    }

    pub fn phi_part(&self, d: usize) -> SymComb {
        self.phi
            .map_terms(|m, c| (bspace::monomial_degree(m) == d).then(|| (m.clone(), c.clone())))
    }
}

/// Lattice spanned by the normal forms of the g-connected non-degenerate
/// diagrams of one degree on `n` strings; denominators of elements of
/// `Q_n` are measured against it.
pub struct QLattice {
    pub index: MonomialIndex,
    pub lattice: Lattice,
    pub generators: usize,
}

impl QLattice {
    pub fn build(n: usize, degree: usize) -> Result<Self> {
        let filter = EnumFilter {
            g_connected: true,
            non_degenerate: true,
            max_legs_per_component: None,
        };
        let gens = crate::diagram::enumerate(&Skeleton::strings(n), degree, &filter, DEFAULT_ENUMERATION_CAP)?;
        let mut index = MonomialIndex::default();
        let mut rows = Vec::new();
        for g in &gens {
            let x = Element::from_canonical(Support::strings(n), LinComb::basis(g.clone()));
            rows.push(index.sparse(&p_normal_form(&x)?));
        }
        let width = index.keys.len();
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![q(0); width];
                for (i, c) in r {
                    v[*i] = c.clone();
                }
                v
            })
            .collect();
        let lattice = Lattice::from_rational_generators(&dense, width)?;
        Ok(QLattice {
            index,
            lattice,
            generators: gens.len(),
        })
    }

    /// Least `N` with `N x` in the lattice; `None` if `x` leaves its span.
    pub fn denominator(&mut self, x: &SymComb) -> Option<BigInt> {
        let before = self.index.keys.len();
        let v = self.index.sparse(x);
        if self.index.keys.len() > before {
            return None;
        }
        let mut dense = vec![q(0); before];
        for (i, c) in v {
            dense[i] = c;
        }
        self.lattice.denominator(&dense)
    }
}

/// Bounds: `[(2m+2)!]^2 d_{2m}` for the hexagon mistake and three times that
/// for the pentagon mistake, at degree `2m + 2`.
pub fn mistake_bounds(degree: usize) -> (BigInt, BigInt) {
    let m2 = degree as u64 - 2;
    let f = factorial(degree as u64);
    let psi = &f * &f * dn_ext(m2);
    let mu = &psi * BigInt::from(3);
    (psi, mu)
}

/// Options for [`solve_associator`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub max_degree: usize,
    /// Measure denominators against the integral lattices (slower).
    pub audit: bool,
}

fn lattice_denominator(n: usize, degree: usize, x: &SymComb) -> Result<BigInt> {
    if x.is_zero() {
        return Ok(BigInt::from(1));
    }
    let mut lat = QLattice::build(n, degree)?;
    lat.denominator(x)
        .ok_or_else(|| Error::Numeric(format!("element of degree {degree} outside the lattice of Q_{n}")))
}

/// Solves (A1)-(A4) degree by degree through `max_degree` (even, at most
/// [`ASSOCIATOR_CAP`]).
pub fn solve_associator(opts: &SolveOptions) -> Result<AssociatorState> {
    let n_max = opts.max_degree;
    if n_max > ASSOCIATOR_CAP {
        return Err(Error::Capacity(format!("associator degree {n_max} above {ASSOCIATOR_CAP}")));
    }
    let mut state = AssociatorState::trivial();
    let e3 = eulerian_idempotent(3, 1)?;
    let mut deg = 2;
    while deg <= n_max {
        let step = solve_step(&state, deg, &e3, opts.audit)?;
        state = step;
        deg += 2;
    }
    Ok(state)
}

/// Extends a solution through `deg - 1` to one through `deg`.
pub fn solve_step(
    state: &AssociatorState,
    deg: usize,
    e3: &GroupAlgebraElement,
    audit: bool,
) -> Result<AssociatorState> {
    let big_phi = state.big_phi(deg)?;
    let psi_series = hexagon_mistake(&big_phi)?;
    let psi_parts = normal_parts(&psi_series)?;
    if let Some((d, _)) = psi_parts.iter().find(|(d, _)| *d < deg) {
        return Err(Error::Solver(format!("hexagon mistake nonzero in degree {d} below {deg}")));
    }
    let psi = psi_parts
        .into_iter()
        .find(|(d, _)| *d == deg)
        .map(|(_, x)| x)
        .unwrap_or_else(SymComb::zero);
    let u = psi.scaled(&Rational::from_ratio(-1, 3));
    let mut bar = state.phi.clone();
    bar.add_assign(&u);
    let bar_state = AssociatorState {
        phi: bar.clone(),
        solved_through: state.solved_through,
        audit: Vec::new(),
    };
    let mu_series = pentagon_mistake(&bar_state.big_phi(deg)?)?;
    let mu_parts = normal_parts(&mu_series)?;
    if let Some((d, _)) = mu_parts.iter().find(|(d, _)| *d < deg) {
        return Err(Error::Solver(format!("pentagon mistake nonzero in degree {d} below {deg}")));
    }
    let mu = mu_parts
        .into_iter()
        .find(|(d, _)| *d == deg)
        .map(|(_, x)| x)
        .unwrap_or_else(SymComb::zero);

    // d v' = -mu over the symmetric slice of Q_3
    let atoms = full_atoms(3, deg)?;
    let slice = symmetric_slice(&atoms, 3)?;
    let mut idx = MonomialIndex::default();
    let mut cols = Vec::new();
    let mut slice_elems = Vec::new();
    for b in &slice {
        let v = combo_of_atoms(&atoms, b);
        let dv = bspace::reduce_element(&differential(&characters_of(&v, 3)?)?)?;
        cols.push(idx.sparse(&dv));
        slice_elems.push(v);
    }
    let width_before = idx.keys.len();
    let rhs = idx.sparse(&mu.scaled(&q(-1)));
    if idx.keys.len() > width_before {
        return Err(Error::Solver(format!(
            "pentagon mistake in degree {deg} leaves the image of the differential"
        )));
    }
    let sol = solve_columns(&cols, &rhs).map_err(|e| Error::Solver(format!("degree {deg}: {e}")))?;
    let mut v_prime = SymComb::zero();
    for (c, v) in sol.iter().zip(&slice_elems) {
        if !num_traits::Zero::is_zero(c) {
            v_prime.add_scaled(v, c);
        }
    }
    let v = act_normal(e3, &v_prime, 3)?;
    let mut phi = bar;
    phi.add_assign(&v);

    let mut audit_rows = state.audit.clone();
    if audit {
        let (psi_bound, mu_bound) = mistake_bounds(deg);
        let phi_part = phi.map_terms(|m, c| (bspace::monomial_degree(m) == deg).then(|| (m.clone(), c.clone())));
        audit_rows.push(DegreeAudit {
            degree: deg,
            psi_denominator: lattice_denominator(3, deg, &psi)?,
            psi_bound,
            mu_denominator: lattice_denominator(4, deg, &mu)?,
            mu_bound,
            phi_denominator: lattice_denominator(3, deg, &phi_part)?,
            phi_bound: dn_ext(deg as u64),
        });
    }
    Ok(AssociatorState {
        phi,
        solved_through: deg + 1,
        audit: audit_rows,
    })
}

/// Residuals of (A1)-(A4) for `Phi = exp(phi)` through `max_degree`, as the
/// list of degrees where each fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Residuals {
    pub pentagon: Vec<usize>,
    pub hexagon: Vec<usize>,
    pub inverse_symmetry: Vec<usize>,
    pub counit: Vec<usize>,
}

impl Residuals {
    pub fn all_zero(&self) -> bool {
        self.pentagon.is_empty() && self.hexagon.is_empty() && self.inverse_symmetry.is_empty() && self.counit.is_empty()
    }
}

pub fn residuals(big_phi: &Series) -> Result<Residuals> {
    let degs = |parts: Vec<(usize, SymComb)>| parts.into_iter().map(|(d, _)| d).collect::<Vec<_>>();
    let pentagon = degs(normal_parts(&pentagon_mistake(big_phi)?)?);
    let hexagon = degs(normal_parts(&hexagon_mistake(big_phi)?)?);
    // (A3): Phi^{321} Phi = 1
    let a3 = series_permute(big_phi, &[3, 2, 1])?.mul(big_phi)?;
    let inverse_symmetry = degs(normal_parts(&a3.sub(&a3.one_like())?)?);
    let mut counit = Vec::new();
    for i in 1..=3 {
        let e = crate::hopf::epsilon_i(&big_phi.value, i)?;
        let one = Element::one(e.support.clone());
        for (d, part) in e.sub(&one)?.by_degree() {
            if !p_normal_form(&part)?.is_zero() {
                counit.push(d);
            }
        }
    }
    counit.sort();
    counit.dedup();
    Ok(Residuals {
        pentagon,
        hexagon,
        inverse_symmetry,
        counit,
    })
}

/// `(1 (x) F) Delta_2(F) Phi Delta_1(F^{-1}) (F^{-1} (x) 1)`.
pub fn twist(big_phi: &Series, f: &Series) -> Result<Series> {
    for i in 1..=2 {
        let e = crate::hopf::epsilon_i(&f.value, i)?;
        if !p_normal_form(&e.sub(&Element::one(e.support.clone()))?)?.is_zero() {
            return Err(Error::Argument(format!("twist F violates epsilon_{i}(F) = 1")));
        }
    }
    if !p_normal_form(&crate::hopf::permute(&[2, 1], &f.value)?.sub(&f.value)?)?.is_zero() {
        return Err(Error::Argument("twist F is not symmetric".into()));
    }
    let f_inv = series_inverse(f)?;
    map_series(f, tensor_left)?
        .mul(&series_delta(f, 2)?)?
        .mul(big_phi)?
        .mul(&series_delta(&f_inv, 1)?)?
        .mul(&map_series(&f_inv, tensor_right)?)
}
