mod cache;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use chordal::acceptance::Suite;
use chordal::associator::{residuals, solve_associator, SolveOptions};
use chordal::bspace::SymComb;
use chordal::chi::{build_tm, chi, chi_inverse};
use chordal::cobar::{cohomology_integral, cohomology_q, torsion_bound, Flavor};
use chordal::hopf::{delta_i, epsilon_i, eulerian_idempotent, permute, shuffle_sum};
use chordal::linear::{dn_ext, smith_normal_form};
use chordal::lmo::{build_tnm, omega_n, required_degree};
use chordal::relations::{default_quotient, IntegralQuotient};
use chordal::serial::{parse_element, write_element, write_graph, write_support};
use chordal::tangle::{quotient_coordinates, QTangleWord, SurgeryPresentation, ZhatContext};
use chordal::{Element, Error, Integer, Support};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::{integer, rational, rationals, write_atomic, Report, Verdict};

const EXIT_VERDICT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Exact computations with Jacobi diagrams, associators and LMO-type maps.
#[derive(Parser)]
#[command(name = "chordal", version)]
struct Cli {
    /// Write the JSON report here (atomically) instead of to stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Leave the timing block out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension and representatives of a diagram space in one degree.
    Dims {
        /// P<n> (strings), O<n> (circles), B<n> (colored characters) or C (closed graphs).
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: usize,
    },
    /// Quotient coordinates and denominators of a serialized element.
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Applies a Hopf-algebra or group-algebra operation.
    Apply(ApplyArgs),
    /// The symmetrization map or its inverse.
    Chi {
        #[arg(long, conflicts_with = "inverse", required_unless_present = "inverse")]
        forward: bool,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        input: PathBuf,
    },
    /// T_m, or its shuffle-power part T^n_m.
    Tm {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cohomology of a cobar subcomplex.
    Cobar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        /// full, lattice, sym, harr or sym-lattice.
        #[arg(long)]
        flavor: String,
        #[arg(long, conflicts_with = "torsion", required_unless_present = "torsion")]
        rational: bool,
        #[arg(long)]
        torsion: bool,
    },
    /// Smith normal form of an integer matrix (one row per line).
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Solves for an even rational associator.
    SolveAssociator {
        #[arg(long, value_parser = ["2", "4", "6"])]
        max_degree: String,
        /// Write phi on three strings in the diagram text format.
        #[arg(long)]
        emit_phi: Option<PathBuf>,
        /// Measure the denominators of phi against the integral lattice.
        #[arg(long)]
        audit: bool,
    },
    /// Z^ of a q-tangle word.
    Zhat {
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// For closed words, check lattice denominators against d_m.
        #[arg(long)]
        audit: bool,
    },
    /// Omega_n of a surgery presentation.
    Lmo {
        #[arg(long)]
        surgery: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Denominators of the mistakes and of phi against their bounds.
    AuditDenominators {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Also print the text report to stderr.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Delta,
    Eps,
    Perm,
    Shuffle,
    Euler,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long)]
    input: PathBuf,
    /// String index for delta and eps (1-based).
    #[arg(long)]
    index: Option<usize>,
    /// Permutation for perm, e.g. 2,1,3.
    #[arg(long, value_delimiter = ',')]
    perm: Vec<u8>,
    /// Block sizes for shuffle.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Index of the Eulerian idempotent.
    #[arg(long)]
    l: Option<usize>,
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Argument(_) | Error::Precondition(_) | Error::Capacity(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_element(path: &Path) -> Result<Element, Failure> {
    Ok(parse_element(&read(path)?)?)
}

fn parse_space(s: &str) -> Result<Support, Failure> {
    let bad = || usage(format!("unknown space {s:?}; expected P<n>, O<n>, B<n> or C"));
    if s == "C" {
        return Ok(Support::Closed);
    }
    let (kind, n) = match s.char_indices().nth(1) {
        Some((i, _)) => s.split_at(i),
        None => return Err(bad()),
    };
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "P" => Ok(Support::strings(n)),
        "O" => Ok(Support::circles(n)),
        "B" => u8::try_from(n).map(Support::Colored).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn sym_label(m: &chordal::bspace::Monomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|a| {
            let colors: String = a.colors.iter().map(|c| c.to_string()).collect();
            if colors.is_empty() {
                format!("g{}.{}", a.degree, a.index)
            } else {
                format!("g{}.{}[{colors}]", a.degree, a.index)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn sym_json(x: &SymComb) -> Value {
    Value::Object(x.iter().map(|(m, c)| (sym_label(m), rational(c))).collect())
}

fn degree_summary(x: &Element) -> Value {
    Value::Array(
        x.by_degree()
            .into_iter()
            .map(|(d, part)| json!({"degree": d, "terms": part.len(), "coefficient_denominator": integer(&part.denominator())}))
            .collect(),
    )
}

fn dims(r: &mut Report, space: &str, degree: usize) -> Outcome {
    let support = parse_space(space)?;
    let basis = default_quotient(&support, degree)?;
    let reps: Vec<String> = basis
        .representatives()
        .iter()
        .map(|g| write_graph(g, &support))
        .collect();
    r.set("space", space);
    r.set("support", write_support(&support));
    r.set("degree", degree);
    r.set("dimension", basis.dim());
    r.set("generators", basis.generator_count());
    r.set("relation_rank", basis.relation_rank());
    r.set("representatives", reps);
    Ok(())
}

fn reduce(r: &mut Report, input: &Path) -> Outcome {
    let x = read_element(input)?;
    let mut parts = Vec::new();
    for (d, part) in x.by_degree() {
        let q = IntegralQuotient::build(&x.support, d)?;
        let coords = q.basis.reduce(&part.terms)?;
        parts.push(json!({
            "degree": d,
            "dimension": q.basis.dim(),
            "coordinates": rationals(&coords),
            "lattice_denominator": integer(&q.denominator(&part.terms)?),
        }));
    }
    r.set("support", write_support(&x.support));
    r.set("denominator", integer(&x.denominator()));
    r.set("degrees", parts);
    Ok(())
}

fn apply(r: &mut Report, a: &ApplyArgs) -> Outcome {
    let x = read_element(&a.input)?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("this op needs --{flag}")));
    let arity = x
        .support
        .arity()
        .ok_or_else(|| usage("operations act on diagrams on strings or colored characters"))?;
    let y = match a.op {
        Op::Delta => delta_i(&x, need(a.index, "index")?)?,
        Op::Eps => epsilon_i(&x, need(a.index, "index")?)?,
        Op::Perm => {
            if a.perm.is_empty() {
                return Err(usage("perm needs --perm"));
            }
            permute(&a.perm, &x)?
        }
        Op::Shuffle => shuffle_sum(need(a.p, "p")?, need(a.q, "q")?)?.act(&x)?,
        Op::Euler => eulerian_idempotent(arity, need(a.l, "l")?)?.act(&x)?,
    };
    r.set("support", write_support(&y.support));
    r.set("terms", y.len());
    r.set("element", write_element(&y));
    Ok(())
}

fn chi_cmd(r: &mut Report, forward: bool, input: &Path) -> Outcome {
    let x = read_element(input)?;
    let y = if forward { chi(&x)? } else { chi_inverse(&x)? };
    r.set("direction", if forward { "forward" } else { "inverse" });
    r.set("support", write_support(&y.support));
    r.set("denominator", integer(&y.denominator()));
    r.set("element", write_element(&y));
    Ok(())
}

fn tm(r: &mut Report, m: usize, n: Option<usize>) -> Outcome {
    let t = match n {
        Some(n) => build_tnm(n, m)?,
        None => build_tm(m)?,
    };
    let coeffs: Vec<Value> = t
        .terms
        .iter()
        .map(|(g, c)| json!({"graph": write_graph(g, &Support::Colored(m as u8)), "coefficient": rational(c)}))
        .collect();
    r.set("m", m);
    if let Some(n) = n {
        r.set("n", n);
    }
    r.set("terms", coeffs);
    r.set("denominator", integer(&t.denominator()));
    Ok(())
}

fn cobar(r: &mut Report, n: usize, degree: usize, flavor: &str, torsion: bool) -> Outcome {
    let flavor: Flavor = flavor.parse()?;
    r.set("n", n);
    r.set("degree", degree);
    r.set("flavor", flavor.name());
    if !torsion {
        r.set("dim", cohomology_q(n, degree, flavor)?);
        return Ok(());
    }
    let h = cohomology_integral(n, degree, flavor)?;
    let bound = torsion_bound(degree);
    r.set("rank", h.rank);
    r.set("divisors", h.torsion.iter().map(integer).collect::<Vec<_>>());
    r.set("bound", integer(&bound));
    for t in &h.torsion {
        r.verdicts.push(Verdict::divides(format!("divisor {t}"), t, &bound));
    }
    if h.torsion.is_empty() {
        r.verdicts.push(Verdict::holds("torsion", true, format!("no torsion; bound {bound}")));
    }
    Ok(())
}

fn snf(r: &mut Report, path: &Path) -> Outcome {
    let text = read(path)?;
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let l = line.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let row = l
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Integer>().map_err(|_| usage(format!("line {}: bad entry {t:?}", k + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(usage("rows have different lengths"));
    }
    let nf = smith_normal_form(&rows, ncols);
    r.set("rows", rows.len());
    r.set("columns", ncols);
    r.set("diagonal", nf.diagonal.iter().map(integer).collect::<Vec<_>>());
    r.set("rank", nf.rank());
    r.set("torsion", nf.torsion().iter().map(integer).collect::<Vec<_>>());
    Ok(())
}

fn solve(r: &mut Report, max_degree: usize, emit: Option<&Path>, audit: bool) -> Outcome {
    let state = solve_associator(&SolveOptions { max_degree, audit })?;
    let phi = state.phi_diagrams()?;
    let res = residuals(&state.big_phi(max_degree)?)?;
    r.set("max_degree", max_degree);
    r.set("phi", degree_summary(&phi));
    r.set(
        "residual_degrees",
        json!({
            "pentagon": res.pentagon,
            "hexagon": res.hexagon,
            "inverse_symmetry": res.inverse_symmetry,
            "counit": res.counit,
        }),
    );
    r.verdicts.push(Verdict::holds(
        "axioms",
        res.all_zero(),
        format!("(A1)-(A4) residuals vanish through degree {max_degree}"),
    ));
    let odd: Vec<usize> = phi.by_degree().into_keys().filter(|d| d % 2 == 1).collect();
    r.verdicts.push(Verdict::holds("even", odd.is_empty(), "phi has no odd-degree part"));
    if audit {
        let rows: Vec<Value> = state
            .audit
            .iter()
            .map(|a| {
                json!({
                    "degree": a.degree,
                    "phi_denominator": integer(&a.phi_denominator),
                    "phi_bound": integer(&a.phi_bound),
                    "psi_denominator": integer(&a.psi_denominator),
                    "mu_denominator": integer(&a.mu_denominator),
                })
            })
            .collect();
        r.set("audit", rows);
        for a in &state.audit {
            r.verdicts
                .push(Verdict::divides(format!("phi_{}", a.degree), &a.phi_denominator, &a.phi_bound));
        }
    }
    if let Some(path) = emit {
        write_atomic(path, &write_element(&phi))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        r.set("emitted", path.display().to_string());
    }
    Ok(())
}

fn context(max_degree: usize) -> Result<ZhatContext, Failure> {
    let even = max_degree - max_degree % 2;
    let state = cache::associator(even)?;
    Ok(ZhatContext::new(&state, max_degree)?)
}

fn zhat(r: &mut Report, word: &Path, max_degree: usize, audit: bool) -> Outcome {
    let w: QTangleWord = read(word)?.parse()?;
    let ctx = context(max_degree)?;
    let t = ctx.zhat(&w)?;
    r.set("max_degree", max_degree);
    r.set("skeleton", t.shape.skeleton().tags());
    r.set("degrees", degree_summary(&t.value));
    if t.shape.is_closed() {
        let coords = quotient_coordinates(&t.value, max_degree)?;
        r.set("coordinates", coords.iter().map(|c| rationals(c)).collect::<Vec<_>>());
        if audit {
            for d in 1..=max_degree {
                let q = IntegralQuotient::build(&t.value.support, d)?;
                let den = q.denominator(&t.value.part(d).terms)?;
                r.verdicts.push(Verdict::divides(format!("degree {d}"), &den, &dn_ext(d as u64)));
            }
        }
    } else if audit {
        return Err(usage("--audit needs a closed word"));
    }
    r.set("value", write_element(&t.value));
    Ok(())
}

fn lmo(r: &mut Report, surgery: &Path, n: usize) -> Outcome {
    let l: SurgeryPresentation = read(surgery)?.parse()?;
    let ctx = context(required_degree(l.framings.len(), n))?;
    let om = omega_n(&ctx, &l, n)?;
    r.set("n", n);
    r.set("framings", l.framings.clone());
    r.set("linking", om.linking.clone());
    r.set("signature", json!({"plus": om.sigma_plus, "minus": om.sigma_minus}));
    r.set("iota", sym_json(&om.iota));
    r.set("omega", sym_json(&om.omega));
    r.set("omega_denominator", integer(&om.omega.denominator()));
    Ok(())
}

fn audit_denominators(r: &mut Report, max_degree: usize) -> Outcome {
    if max_degree % 2 == 1 {
        return Err(usage("--max-degree must be even"));
    }
    let state = solve_associator(&SolveOptions { max_degree, audit: true })?;
    let mut rows = Vec::new();
    for a in &state.audit {
        rows.push(json!({
            "degree": a.degree,
            "psi": {"denominator": integer(&a.psi_denominator), "bound": integer(&a.psi_bound)},
            "mu": {"denominator": integer(&a.mu_denominator), "bound": integer(&a.mu_bound)},
            "phi": {"denominator": integer(&a.phi_denominator), "bound": integer(&a.phi_bound)},
        }));
        let d = a.degree;
        r.verdicts.push(Verdict::divides(format!("psi_{d}"), &a.psi_denominator, &a.psi_bound));
        r.verdicts.push(Verdict::divides(format!("mu_{d}"), &a.mu_denominator, &a.mu_bound));
        r.verdicts.push(Verdict::divides(format!("phi_{d}"), &a.phi_denominator, &a.phi_bound));
    }
    r.set("degrees", rows);
    Ok(())
}

fn selftest(r: &mut Report, verbose: bool) -> Outcome {
    let reports = Suite::default().run_all();
    if verbose {
        eprint!("{}", chordal::acceptance::render(&reports));
    }
    let rows: Vec<Value> = reports
        .iter()
        .map(|c| {
            let checks: Vec<Value> = c
                .checks
                .iter()
                .map(|k| json!({"name": k.name, "passed": k.passed, "detail": k.detail}))
                .collect();
            json!({"id": c.id, "title": c.title, "passed": c.passed(), "checks": checks})
        })
        .collect();
    r.set("criteria", rows);
    for c in &reports {
        r.verdicts
            .push(Verdict::holds(format!("criterion {}", c.id), c.passed(), c.title));
    }
    Ok(())
}

fn run(cli: &Cli, r: &mut Report) -> Outcome {
    match &cli.command {
        Command::Dims { space, degree } => dims(r, space, *degree),
        Command::Reduce { input } => reduce(r, input),
        Command::Apply(a) => apply(r, a),
        Command::Chi { forward, input, .. } => chi_cmd(r, *forward, input),
        Command::Tm { m, n } => tm(r, *m, *n),
        Command::Cobar {
            n,
            degree,
            flavor,
            torsion,
            ..
        } => cobar(r, *n, *degree, flavor, *torsion),
        Command::Snf { matrix } => snf(r, matrix),
        Command::SolveAssociator {
            max_degree,
            emit_phi,
            audit,
        } => solve(r, max_degree.parse().expect("checked by clap"), emit_phi.as_deref(), *audit),
        Command::Zhat {
            word,
            max_degree,
            audit,
        } => zhat(r, word, *max_degree, *audit),
        Command::Lmo { surgery, n } => lmo(r, surgery, *n),
        Command::AuditDenominators { max_degree } => audit_denominators(r, *max_degree),
        Command::Selftest { verbose } => selftest(r, *verbose),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut report = Report::new(argv);
    let start = Instant::now();
    if let Err(f) = run(&cli, &mut report) {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_secs_f64());
    let mut text = serde_json::to_string_pretty(&report.to_json(elapsed)).expect("reports serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERDICT)
    }
}
