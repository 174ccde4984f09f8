//! The acceptance suite: twelve criteria, each a list of exact checks.
//!
//! Reports are deterministic. Timings are kept apart from the rendered
//! text so two runs can be compared byte for byte.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::associator::{act_normal, residuals, solve_associator, AssociatorState, SolveOptions};
use crate::chi::{chi, chi_inverse, p_normal_form};
use crate::cobar::{
    cohomology_integral, differential_normal, ek_cohomology, monomial_basis, subcomplex_basis, symmetry_defect_normal,
    torsion_bound, Flavor,
};
use crate::error::Result;
use crate::hopf::{eulerian_idempotent, GroupAlgebraElement};
use crate::linear::{check_dn_corollary, check_dn_divisibility, compositions, dn, LinComb};
use crate::lmo::{
    build_tnm, iota_of_link, jn, jprime_n, omega_n, permute_colors, reduce_looped, required_degree, star_y,
    TrivalentGraphSpace, DUAL_STU_FLIP,
};
use crate::relations::{default_quotient, generate_relations, IntegralQuotient, RelationKind};
use crate::scalar::{divides, factorial, largest_prime_factor};
use crate::series::{bch_dynkin, bch_free_direct};
use crate::tangle::{fixtures, i_filter, ifilter_split, QTangleWord, ZhatContext};
use crate::{Element, Rational, Support};

pub const TITLES: [&str; 12] = [
    "associator existence and denominators",
    "mistake denominators",
    "cobar torsion bound",
    "E(k) cohomology",
    "Eulerian idempotent axioms",
    "chi round trips and denominators",
    "d_n arithmetic",
    "BCH denominators",
    "Z^ denominators and invariance",
    "i-filter splitting",
    "LMO layer",
    "determinism",
];

/// Runtime limits in seconds.
pub const ASSOCIATOR_TIME_LIMIT: u64 = 600;
pub const COBAR_TIME_LIMIT: u64 = 300;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// The one-line verdict.
    pub fn summary(&self) -> String {
        let v = if self.passed() { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {v} {}", self.id, self.title)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            writeln!(f, "    [{mark}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Deterministic text of a list of reports (no timings).
pub fn render(reports: &[CriterionReport]) -> String {
    reports.iter().map(|r| r.to_string()).collect()
}

struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records an error as a failed check instead of aborting.
    fn run(&mut self, name: &str, f: impl FnOnce(&mut Checks) -> Result<()>) {
        if let Err(e) = f(self) {
            self.push(name, false, format!("error: {e}"));
        }
    }

    fn divides(&mut self, name: impl Into<String>, den: &BigInt, bound: &BigInt) {
        let ok = divides(den, bound);
        let rel = if ok { "divides" } else { "does not divide" };
        self.push(name, ok, format!("denominator {den} {rel} {bound}"));
    }
}

fn q(a: i64) -> Rational {
    Rational::from_integer(a.into())
}

/// Runs criteria and keeps the shared associator solution between them.
#[derive(Default)]
pub struct Suite {
    phi4: Option<AssociatorState>,
    phi4_time: Duration,
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    fn phi4(&mut self) -> Result<&AssociatorState> {
        if self.phi4.is_none() {
            let t = Instant::now();
            let st = solve_associator(&SolveOptions {
                max_degree: 4,
                audit: true,
            })?;
            self.phi4_time = t.elapsed();
            self.phi4 = Some(st);
        }
        Ok(self.phi4.as_ref().unwrap())
    }

    pub fn run(&mut self, id: usize) -> CriterionReport {
        let t = Instant::now();
        let mut c = Checks::new();
        match id {
            1 => self.associator(&mut c),
            2 => self.mistakes(&mut c),
            3 => cobar_torsion(&mut c),
            4 => ek(&mut c),
            5 => eulerian(&mut c),
            6 => chi_checks(&mut c),
            7 => dn_checks(&mut c),
            8 => bch_checks(&mut c),
            9 => self.zhat(&mut c),
            10 => self.ifilter(&mut c),
            11 => self.lmo(&mut c),
            12 => determinism(&mut c),
            _ => c.push("criterion", false, format!("no criterion {id}")),
        }
        CriterionReport {
            id,
            title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
            checks: c.0,
            elapsed: t.elapsed(),
        }
    }

    /// Criteria 1 to 11, the ones that compute something.
    pub fn run_computational(&mut self) -> Vec<CriterionReport> {
        (1..=11).map(|i| self.run(i)).collect()
    }

    /// All twelve; criterion 12 compares this run with a fresh one.
    pub fn run_all(&mut self) -> Vec<CriterionReport> {
        let mut out = self.run_computational();
        let t = Instant::now();
        let mut c = Checks::new();
        compare_runs(&mut c, &render(&out), &render(&Suite::new().run_computational()));
        out.push(CriterionReport {
            id: 12,
            title: TITLES[11],
            checks: c.0,
            elapsed: t.elapsed(),
        });
        out
    }

    fn associator(&mut self, c: &mut Checks) {
        c.run("solve", |c| {
            let st = self.phi4()?.clone();
            c.push(
                "runtime",
                self.phi4_time.as_secs() < ASSOCIATOR_TIME_LIMIT,
                format!("solved through degree 4 within {ASSOCIATOR_TIME_LIMIT} s"),
            );
            let r = residuals(&st.big_phi(4)?)?;
            let show = |v: &[usize]| format!("nonzero in degrees {v:?}");
            c.push("hexagon (A2)", r.hexagon.is_empty(), show(&r.hexagon));
            c.push("pentagon (A1)", r.pentagon.is_empty(), show(&r.pentagon));
            c.push("inverse symmetry (A3)", r.inverse_symmetry.is_empty(), show(&r.inverse_symmetry));
            c.push("counit (A4)", r.counit.is_empty(), show(&r.counit));
            let odd: Vec<usize> = st
                .phi
                .iter()
                .map(|(m, _)| crate::bspace::monomial_degree(m))
                .filter(|d| d % 2 == 1)
                .collect();
            c.push("even", odd.is_empty(), format!("{} odd-degree terms", odd.len()));
            for d in [2, 4] {
                let defect = symmetry_defect_normal(&st.phi_part(d), 3)?;
                c.push(format!("symmetric in degree {d}"), defect.is_zero(), "phi^123 + phi^312 + phi^231 = 0");
            }
            let bad = st
                .phi
                .iter()
                .filter(|(m, _)| m.len() != 1 || (1..=3u8).any(|k| !m[0].colors.contains(&k)))
                .count();
            c.push(
                "support",
                bad == 0,
                format!("{bad} terms outside g-connected non-degenerate diagrams"),
            );
            for row in &st.audit {
                c.divides(format!("phi_{}", row.degree), &row.phi_denominator, &row.phi_bound);
            }
            Ok(())
        });
    }

    fn mistakes(&mut self, c: &mut Checks) {
        c.run("audit", |c| {
            for row in &self.phi4()?.audit {
                c.divides(format!("psi_{}", row.degree), &row.psi_denominator, &row.psi_bound);
                c.divides(format!("mu_{}", row.degree), &row.mu_denominator, &row.mu_bound);
            }
            Ok(())
        });
    }

    fn zhat(&mut self, c: &mut Checks) {
        c.run("zhat", |c| {
            let ctx = ZhatContext::new(self.phi4()?, 4)?;
            let word = |s: &str| s.parse::<QTangleWord>();
            let t = ctx.zhat(&word("X+\nX-")?)?;
            c.push(
                "X+ X- = 1",
                t.value == Element::one(Support::strings(2)),
                "raw value through degree 4",
            );
            let ctx3 = ZhatContext::new(self.phi4()?, 3)?;
            for (name, w) in [("trefoil", fixtures::TREFOIL), ("unknot", fixtures::UNKNOT)] {
                let z = ctx3.zhat(&word(w)?)?;
                for m in 1..=3 {
                    let iq = IntegralQuotient::build(&Support::circles(1), m)?;
                    let den = iq.denominator(&z.value.part(m).terms)?;
                    c.divides(format!("{name} degree {m}"), &den, &dn(m as u64)?);
                }
            }
            let a = ctx.zhat(&word(fixtures::UNKNOT)?)?.cut()?;
            let b = ctx.zhat(&word(fixtures::UNKNOT_ZIGZAG)?)?.cut()?;
            c.push(
                "unknot presentations",
                p_normal_form(&a)? == p_normal_form(&b)?,
                "cap-cup and zigzag agree through degree 4",
            );
            Ok(())
        });
    }

    fn ifilter(&mut self, c: &mut Checks) {
        c.run("split", |c| {
            let ctx = ZhatContext::new(self.phi4()?, 4)?;
            let (z, lk) = ctx.string_link(&fixtures::COMMUTATOR.parse()?)?;
            let zero = lk.iter().flatten().all(|&x| x == 0);
            c.push("linking matrix", zero, format!("{lk:?}"));
            let s = ifilter_split(&z, &lk, 4)?;
            let xi1 = s.xi.get(&1).map_or(true, |x| x.is_zero());
            c.push("xi_1 = 0", xi1, "degree-1 part of log Z^ vanishes");
            for m in 0..=3 {
                let Some(x) = s.z.get(&m) else {
                    c.push(format!("z_{m}"), true, "zero");
                    continue;
                };
                let den = x.denominator();
                let p = largest_prime_factor(&den);
                c.push(
                    format!("z_{m}"),
                    p <= m as u64 + 2,
                    format!("denominator {den}, largest prime {p}, bound {}", m + 2),
                );
                let f = i_filter(x).unwrap_or(usize::MAX);
                c.push(format!("z_{m} i-filter"), f >= m, format!("at least {f} internal vertices"));
            }
            Ok(())
        });
    }

    fn lmo(&mut self, c: &mut Checks) {
        c.run("T^n_m", |c| {
            for n in 1..=3usize {
                let below = (1..2 * n).all(|m| build_tnm(n, m).map(|t| t.is_empty()).unwrap_or(false));
                c.push(format!("T^{n}_m = 0 for m < {}", 2 * n), below, "empty");
                let t = build_tnm(n, 2 * n)?;
                let want = factorial(2 * n as u64) / (factorial(n as u64) * BigInt::from(2u64.pow(n as u32)));
                let ones = t.terms.iter().all(|(_, k)| *k == q(1));
                c.push(
                    format!("T^{n}_{}", 2 * n),
                    BigInt::from(t.len()) == want && ones,
                    format!("{} pairings with coefficient 1, expected {want}", t.len()),
                );
            }
            for m in 2..=4usize {
                let t = build_tnm(1, m)?;
                let mut rot: Vec<u8> = (2..=m as u8).collect();
                rot.push(1);
                let same = reduce(&permute_colors(&t, &rot)?)? == reduce(&t)?;
                c.push(format!("cyclic invariance m = {m}"), same, "T^1_m");
            }
            for m in 3..=4usize {
                let t = build_tnm(1, m)?;
                let t1 = build_tnm(1, m - 1)?;
                let mut ok = true;
                for k in 1..m as u8 {
                    let mut sigma: Vec<u8> = (1..=m as u8).collect();
                    sigma.swap(k as usize - 1, k as usize);
                    let mut lhs = reduce(&t)?;
                    lhs.add_scaled(&reduce(&permute_colors(&t, &sigma)?)?, &q(-1));
                    ok &= lhs == reduce(&star_y(&t1, k, DUAL_STU_FLIP)?)?;
                }
                c.push(format!("dual STU m = {m}"), ok, "T - sigma_k T = T *_k Y for every k");
            }
            Ok(())
        });
        c.run("j_1", |c| {
            for d in 1..=3 {
                let rels = generate_relations(&Support::circles(1), d, &[RelationKind::Stu])?;
                let mut bad = 0;
                for r in rels.combs() {
                    let x = Element::from_canonical(Support::circles(1), r.clone());
                    if !reduce_looped(&jn(&x, 1)?)?.is_zero() {
                        bad += 1;
                    }
                }
                c.push(
                    format!("j_1 kills STU degree {d}"),
                    bad == 0,
                    format!("{bad} of {} generators survive", rels.len()),
                );
            }
            for l in 1..=2 {
                let mut bad = 0;
                let mut total = 0;
                for d in 0..=required_degree(l, 1) {
                    let gens = crate::diagram::enumerate(
                        &crate::Skeleton::circles(l),
                        d,
                        &Default::default(),
                        crate::diagram::DEFAULT_ENUMERATION_CAP,
                    )?;
                    for g in gens {
                        total += 1;
                        let x = Element::from_canonical(Support::circles(l), LinComb::basis(g.clone()));
                        let y = Element::from_canonical(Support::strings(l), LinComb::basis(g));
                        if reduce_looped(&jn(&x, 1)?)? != reduce_looped(&jprime_n(&y, 1)?)? {
                            bad += 1;
                        }
                    }
                }
                c.push(
                    format!("j'_1 = j_1 on {l} components"),
                    bad == 0,
                    format!("{bad} of {total} diagrams differ, degrees up to {}", required_degree(l, 1)),
                );
            }
            Ok(())
        });
        c.run("Omega_1", |c| {
            let ctx = ZhatContext::new(self.phi4()?, 3)?;
            let one = LinComb::basis(Vec::new());
            let up = omega_n(&ctx, &fixtures::U_PLUS.parse()?, 1)?;
            c.push("Omega_1(U+) = 1", up.omega == one, "through degree 1");
            let (a, b) = fixtures::HANDLE_SLIDE;
            let ia = iota_of_link(&ctx, &a.parse()?, 1)?;
            let ib = iota_of_link(&ctx, &b.parse()?, 1)?;
            c.push("handle slide", ia.0 == ib.0, "iota_1 agrees on the fixture pair");
            let u2 = omega_n(&ctx, &fixtures::UNKNOT_FRAMING_2.parse()?, 1)?;
            let theta = TrivalentGraphSpace::new(1)?.basis[0].clone();
            let d1 = u2.omega.coeff(&theta);
            let p = largest_prime_factor(d1.denom());
            c.push(
                "framing-2 unknot",
                p <= 3,
                format!("degree-1 coefficient {d1}, largest prime {p}, bound 3"),
            );
            Ok(())
        });
    }
}

fn reduce(x: &crate::chi::HElement) -> Result<crate::bspace::SymComb> {
    crate::bspace::reduce_comb(x.terms.iter())
}

fn cobar_torsion(c: &mut Checks) {
    let t = Instant::now();
    c.run("H^4", |c| {
        let empty = subcomplex_basis(4, 2, Flavor::SymLattice)?.is_zero();
        c.push("degree 2", empty, "C^4_sym has no elements of degree 2");
        for m in [3, 4] {
            let h = cohomology_integral(4, m, Flavor::SymLattice)?;
            let bound = torsion_bound(m);
            let ok = h.torsion.iter().all(|d| divides(d, &bound));
            let divisors: Vec<String> = h.torsion.iter().map(|d| d.to_string()).collect();
            c.push(
                format!("degree {m}"),
                ok,
                format!("elementary divisors [{}] divide {bound}", divisors.join(", ")),
            );
        }
        Ok(())
    });
    c.push(
        "runtime",
        t.elapsed().as_secs() < COBAR_TIME_LIMIT,
        format!("within {COBAR_TIME_LIMIT} s"),
    );
}

fn ek(c: &mut Checks) {
    c.run("E(k)", |c| {
        for k in 1..=4 {
            let h = ek_cohomology(k)?;
            let ok = h
                .iter()
                .all(|(n, g)| g.torsion.is_empty() && g.rank == usize::from(*n == k));
            let ranks: Vec<String> = h.iter().map(|(n, g)| format!("H^{n} = Z^{}", g.rank)).collect();
            c.push(format!("k = {k}"), ok, ranks.join(", "));
        }
        Ok(())
    });
}

fn eulerian(c: &mut Checks) {
    c.run("axioms", |c| {
        for n in 1..=4 {
            let es: Vec<GroupAlgebraElement> = (1..=n).map(|l| eulerian_idempotent(n, l)).collect::<Result<_>>()?;
            let idem = es.iter().all(|e| e.mul(e) == *e);
            let orth = es
                .iter()
                .enumerate()
                .all(|(i, e)| es.iter().enumerate().all(|(j, f)| i == j || e.mul(f).is_zero()));
            let sum = es.iter().fold(GroupAlgebraElement::zero(n), |a, e| a.add(e));
            c.push(format!("n = {n} idempotent"), idem, "e^2 = e");
            c.push(format!("n = {n} orthogonal"), orth, "e^(l) e^(k) = 0 for l != k");
            c.push(format!("n = {n} sum"), sum == GroupAlgebraElement::identity(n), "sum of e^(l) = 1");
        }
        let e3 = eulerian_idempotent(3, 1)?;
        let e4 = eulerian_idempotent(4, 1)?;
        for m in 0..=3 {
            let mut bad = 0;
            let basis = monomial_basis(3, m)?;
            for mono in &basis {
                let x = LinComb::basis(mono.clone());
                let lhs = act_normal(&e4, &differential_normal(&x, 3)?, 4)?;
                let rhs = differential_normal(&act_normal(&e3, &x, 3)?, 3)?;
                if lhs != rhs {
                    bad += 1;
                }
            }
            c.push(
                format!("e d = d e on C^3 degree {m}"),
                bad == 0,
                format!("{bad} of {} basis elements differ", basis.len()),
            );
        }
        Ok(())
    });
}

fn chi_checks(c: &mut Checks) {
    c.run("chi", |c| {
        for n in 1..=2usize {
            let (mut p_bad, mut b_bad, mut den_bad, mut total) = (0, 0, 0, 0);
            for d in 0..=3usize {
                let ps = Support::strings(n);
                let pb = default_quotient(&ps, d)?;
                for rep in pb.representatives() {
                    total += 1;
                    let x = Element::from_canonical(ps.clone(), LinComb::basis(rep.clone()));
                    let inv = chi_inverse(&x)?;
                    if !pb.reduce_sparse(&chi(&inv)?.sub(&x)?.terms)?.is_empty() {
                        p_bad += 1;
                    }
                    let m = rep.n_ext() as u64;
                    let f = factorial(m.saturating_sub(1));
                    let connected = rep.is_connected() && rep.leg_counts(n).iter().all(|&k| k > 0);
                    if n >= 2 && connected && !divides(&inv.denominator(), &(&f * &f)) {
                        den_bad += 1;
                    }
                }
                let bs = Support::Colored(n as u8);
                let bb = default_quotient(&bs, d)?;
                for rep in bb.representatives() {
                    total += 1;
                    let x = Element::from_canonical(bs.clone(), LinComb::basis(rep.clone()));
                    let fwd = chi(&x)?;
                    if !divides(&fwd.denominator(), &factorial(rep.n_ext() as u64)) {
                        den_bad += 1;
                    }
                    if !bb.reduce_sparse(&chi_inverse(&fwd)?.sub(&x)?.terms)?.is_empty() {
                        b_bad += 1;
                    }
                }
            }
            c.push(format!("chi chi^-1 = id on P_{n}"), p_bad == 0, format!("{p_bad} failures, degrees 0..3"));
            c.push(format!("chi^-1 chi = id on B_{n}"), b_bad == 0, format!("{b_bad} failures, degrees 0..3"));
            c.push(
                format!("denominators n = {n}"),
                den_bad == 0,
                format!("{den_bad} of {total} exceed m! or [(m-1)!]^2"),
            );
        }
        Ok(())
    });
}

fn dn_checks(c: &mut Checks) {
    c.run("d_n", |c| {
        let (mut a, mut b, mut cc) = (0, 0, 0);
        for p in 1..=8 {
            for q in 1..=8 {
                let r = check_dn_divisibility(p, q)?;
                a += usize::from(!r.a);
                b += usize::from(!r.b);
                cc += usize::from(r.c == Some(false));
            }
        }
        c.push("part (a)", a == 0, format!("(p+q)! d_p d_q | d_(p+q): {a} failures for p, q <= 8"));
        c.push("part (b)", b == 0, format!("d_p d_q | 2 d_(p+q-1): {b} failures for p, q <= 8"));
        c.push("part (c)", cc == 0, format!("d_p d_q | 96 d_(p+q-2): {cc} failures for 2 <= p, q <= 8"));
        let mut total = 0;
        let mut bad = 0;
        for n in 1..=8 {
            for comp in compositions(n) {
                total += 1;
                bad += usize::from(!check_dn_corollary(&comp)?);
            }
        }
        c.push(
            "corollary",
            bad == 0,
            format!("k! d_n1...d_nk | d_(n1+...+nk): {bad} of {total} compositions fail"),
        );
        Ok(())
    });
}

fn bch_checks(c: &mut Checks) {
    c.run("bch", |c| {
        let dynkin = bch_dynkin::<Rational>(2, 5);
        let direct = bch_free_direct::<Rational>(2, 5)?;
        c.push("oracle", dynkin == direct, "Dynkin formula equals log(exp x exp y) through degree 5");
        for k in 1..=5usize {
            let f = dynkin.get(&k).map(|f| f.denominator()).unwrap_or_else(|| BigInt::from(1));
            let fk = factorial(k as u64);
            c.divides(format!("f_{k}"), &f, &(&fk * &fk));
        }
        Ok(())
    });
}

fn determinism(c: &mut Checks) {
    let a = render(&Suite::new().run_computational());
    let b = render(&Suite::new().run_computational());
    compare_runs(c, &a, &b);
}

fn compare_runs(c: &mut Checks, a: &str, b: &str) {
    c.push(
        "two runs",
        a == b,
        format!("reports of criteria 1-11 are byte-identical ({} bytes)", a.len()),
    );
}
