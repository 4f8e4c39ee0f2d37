//! Command-line front end. [`run`] parses arguments, runs one command and
//! renders a [`RunReport`]; the binary only prints the result and exits.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on a
//! usage error (bad flags or parameters outside a command's preconditions).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclotomic::{
    build_coherent_roots, is_torsion_unit, max_p_subextension_degree, product_census,
    unit_group_structure, unit_order_census,
};
use crate::field::{make_field, parse_element, FFElem, FieldSpec, Poly};
use crate::haar::{self, Event};
use crate::interpretation::{code_extension, galois_matrix, verify_commute, verify_iso_with_direct};
use crate::kummer::{
    artin_schreier_operator_bridge, artin_schreier_solve, build_kummer_chain,
    divisible_p_subgroup_is_trivial, operator_lemma_check, operator_lemma_fuzz, phi_identities,
    phi_map, LemmaMode, OperatorInstance,
};
use crate::numth;
use crate::puiseux::{
    kummer_orbit_order, tau_is_coherent, verify_commutation, verify_tau_automorphism, SeriesRing,
};
use crate::report::{elapsed_ms, Check};
use crate::suite;
use crate::tournament::{
    canonical_omega, mu2n_tournament, p_cycle_obstruction, power_index, vandermonde_kernel_dim,
    verify_p_tournament, verify_square_tournament, TournamentParams,
};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "galois-lab", version, about = "Finite models of Galois-theoretic constructions")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical F_q: modulus, generator, and optionally one element.
    Field(FieldArgs),
    /// Unit groups (Z/p^k)* and coherent p-power roots of unity.
    Cyclo(CycloArgs),
    /// p-tournaments and their relatives.
    #[command(subcommand)]
    Tournament(TournamentCmd),
    /// F_{q^n} coded as F_q-vectors with its Galois matrices.
    Interpret(InterpretArgs),
    /// Kummer chains x^{p^n} = b and the map c -> tau(c)/c.
    Kummer(KummerArgs),
    /// Artin-Schreier equations x^p - x = b.
    #[command(subcommand, name = "artin-schreier")]
    ArtinSchreier(AsCmd),
    /// The commuting-operator lemma.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Puiseux monomials with tau and sigma.
    Puiseux(PuiseuxArgs),
    /// Haar measure of cyclotomic-character events.
    #[command(subcommand)]
    Haar(HaarCmd),
    /// The full acceptance matrix.
    All,
}

#[derive(Args, Debug, Serialize)]
struct FieldArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    /// Element literal such as `[1,2]`.
    #[arg(long)]
    elem: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct CycloArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 3)]
    level: u32,
    /// Base field for a coherent root system.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    /// Report the largest p-power-degree subfield of F_{p^n}.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum TournamentCmd {
    /// Exhaustive exactly-one-rotation scan.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
    },
    /// Binary tournament "x - y is a square" for q ≡ 3 mod 4.
    Square {
        #[arg(long)]
        q: u64,
    },
    /// Binary tournament from mu_{2^n}.
    Mu2n {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// [F*:(F*)^p].
    Index {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
    },
    /// Rank and kernel of (omega^{ij}).
    Vandermonde {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: Option<u64>,
    },
    /// No p-cycle preserves a p-tournament.
    Obstruction {
        #[arg(long)]
        p: usize,
    },
}

#[derive(Args, Debug, Serialize)]
struct InterpretArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Serialize)]
struct KummerArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
    /// Element literal for b.
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 1)]
    depth: u32,
    /// tau = (x -> x^q)^r.
    #[arg(long, default_value_t = 1)]
    r: u64,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum AsCmd {
    /// Roots of x^p - x = b.
    Solve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: String,
    },
    /// Trace criterion and coset structure over all of F_q.
    Check {
        #[arg(long)]
        q: u64,
    },
    /// The operator lemma on F_{q^p} with P = x^p - x.
    Bridge {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum LemmaCmd {
    /// Random instances with per-trial RNG streams.
    Fuzz {
        #[arg(long, default_value_t = suite::FUZZ_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = suite::FUZZ_MAX_GROUP)]
        max_group: u64,
    },
    /// One instance, given as JSON {orders, p, s, t, n_bound}.
    Check {
        #[arg(long)]
        instance: String,
        /// Comma-separated exponent vector.
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args, Debug, Serialize)]
struct PuiseuxArgs {
    #[arg(long, default_value_t = 7)]
    q: u64,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    /// Largest prime-to-p part of exponent denominators.
    #[arg(long, default_value_t = 6)]
    cofactor: u64,
    /// Random series for the randomized checks.
    #[arg(long, default_value_t = suite::PUISEUX_SAMPLES)]
    trials: u64,
    /// A series such as `3*x^(1/2) + x^(2/3)` to transform.
    #[arg(long)]
    series: Option<String>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum HaarCmd {
    /// Monte Carlo estimate, compared with the exact value when enumerable.
    Estimate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = suite::HAAR_TRIALS)]
        trials: u64,
        #[arg(long, default_value = "power-fixes")]
        event: Event,
    },
    /// Exact measure by enumeration.
    Exact {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value = "power-fixes")]
        event: Event,
    },
    /// Exact measures for levels 1..=level.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value = "power-fixes")]
        event: Event,
    },
}

/// The machine-readable result of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Handled = Result<(Vec<Check>, Value), Usage>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return if info {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let result = match cli.threads {
        Some(0) => Err(Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, cli.seed)),
            Err(e) => Err(Usage(e.to_string())),
        },
        None => dispatch(&cli.command, cli.seed),
    };
    let (checks, data) = match result {
        Ok(x) => x,
        Err(Usage(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    let report = RunReport {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command_name(&cli.command),
        parameters: parameters(&cli.command),
        seed: cli.seed,
        pass,
        checks,
        data,
        wall_time_ms: elapsed_ms(start),
    };
    let stdout = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        render_text(&report)
    };
    Outcome {
        code: if pass { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn command_name(cmd: &Command) -> String {
    let sub = |v: Value| v["kind"].as_str().unwrap_or_default().to_string();
    match cmd {
        Command::Field(_) => "field".into(),
        Command::Cyclo(_) => "cyclo".into(),
        Command::Tournament(t) => format!("tournament {}", sub(json!(t))),
        Command::Interpret(_) => "interpret".into(),
        Command::Kummer(_) => "kummer".into(),
        Command::ArtinSchreier(a) => format!("artin-schreier {}", sub(json!(a))),
        Command::Lemma(l) => format!("lemma {}", sub(json!(l))),
        Command::Puiseux(_) => "puiseux".into(),
        Command::Haar(h) => format!("haar {}", sub(json!(h))),
        Command::All => "all".into(),
    }
}

fn parameters(cmd: &Command) -> Value {
    let mut v = match cmd {
        Command::Field(a) => json!(a),
        Command::Cyclo(a) => json!(a),
        Command::Tournament(a) => json!(a),
        Command::Interpret(a) => json!(a),
        Command::Kummer(a) => json!(a),
        Command::ArtinSchreier(a) => json!(a),
        Command::Lemma(a) => json!(a),
        Command::Puiseux(a) => json!(a),
        Command::Haar(a) => json!(a),
        Command::All => json!({}),
    };
    if let Some(map) = v.as_object_mut() {
        map.remove("kind");
        map.retain(|_, x| !x.is_null());
    }
    v
}

fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let params = r
        .parameters
        .as_object()
        .map(|m| {
            m.iter()
                .map(|(k, v)| format!("{k}={}", v.to_string().trim_matches('"')))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default();
    let _ = writeln!(out, "galois-lab {} {params} (seed {})", r.command, r.seed);
    if let Some(map) = r.data.as_object() {
        for (k, v) in map {
            let _ = writeln!(out, "  {k}: {v}");
        }
    }
    for c in &r.checks {
        let counts = c
            .counts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "{} {}  {counts}", if c.pass { "PASS" } else { "FAIL" }, c.name);
        for w in &c.witnesses {
            let _ = writeln!(out, "     witness: {w}");
        }
    }
    let _ = writeln!(
        out,
        "{} ({:.0} ms)",
        if r.pass { "all checks passed" } else { "some checks FAILED" },
        r.wall_time_ms
    );
    out
}

fn field_of_size(q: u64) -> Result<FieldSpec, Usage> {
    let (p, n) = numth::prime_power(q).ok_or_else(|| Usage(format!("{q} is not a prime power")))?;
    Ok(make_field(p, n)?)
}

fn dispatch(cmd: &Command, seed: u64) -> Handled {
    match cmd {
        Command::Field(a) => field_cmd(a),
        Command::Cyclo(a) => cyclo_cmd(a),
        Command::Tournament(t) => tournament_cmd(t),
        Command::Interpret(a) => interpret_cmd(a, seed),
        Command::Kummer(a) => kummer_cmd(a),
        Command::ArtinSchreier(a) => as_cmd(a),
        Command::Lemma(l) => lemma_cmd(l, seed),
        Command::Puiseux(a) => puiseux_cmd(a, seed),
        Command::Haar(h) => haar_cmd(h, seed),
        Command::All => Ok((suite::acceptance(seed), Value::Null)),
    }
}

fn field_cmd(a: &FieldArgs) -> Handled {
    let f = match (a.q, a.p, a.n) {
        (Some(q), None, None) => field_of_size(q)?,
        (None, Some(p), n) => make_field(p, n.unwrap_or(1))?,
        _ => return Err(Usage("give either --q, or --p with optional --n".into())),
    };
    let fp = make_field(f.p(), 1)?;
    let modulus = Poly::new(&fp, f.modulus().iter().map(|&c| fp.from_int(c as i64)).collect());
    let g = f.generator();
    let g_order = g.order()?;
    let mut checks = vec![
        {
            let mut c = Check::new("modulus irreducible");
            c.require(f.n() == 1 || modulus.is_irreducible(), || f.to_string());
            c
        },
        {
            let mut c = Check::new("generator is primitive").count("order", g_order);
            c.require(g_order == f.q() - 1, || g.to_string());
            c
        },
    ];
    let mut data = json!({
        "field": f.to_string(),
        "q": f.q(),
        "generator": g.to_string(),
    });
    if let Some(lit) = &a.elem {
        let x = parse_element(&f, lit)?;
        let orbit: Vec<String> = (0..f.n() as u64).map(|r| x.frobenius(r).to_string()).collect();
        let mut c = Check::new("frobenius^n is the identity");
        c.require(x.frobenius(f.n() as u64 - 1).pow_u(f.p()) == x, || x.to_string());
        checks.push(c);
        data["element"] = json!({
            "value": x.to_string(),
            "order": x.order().ok(),
            "inverse": x.inv().ok().map(|y| y.to_string()),
            "trace": x.trace_to_prime(),
            "frobenius_orbit": orbit,
            "log": x.discrete_log(&g).ok(),
        });
    }
    Ok((checks, data))
}

fn cyclo_cmd(a: &CycloArgs) -> Handled {
    let view = unit_group_structure(a.p, a.level)?;
    let mut census = Check::new("order census matches structure");
    let predicted = product_census(&view.factors());
    let brute = unit_order_census(a.p, a.level);
    census.require(predicted == brute, || format!("{brute:?} vs {predicted:?}"));
    let m = a.p.pow(a.level);
    let torsion = (1..m)
        .filter(|u| u % a.p != 0 && is_torsion_unit(*u, a.p, a.level) == Ok(true))
        .count() as u64;
    let mut tors = Check::new("torsion subgroup has the predicted size").count("torsion", torsion);
    tors.require(torsion == view.q_part, || format!("{torsion} torsion units"));
    let mut checks = vec![census, tors];
    let mut data = json!({
        "factors": view.factors(),
        "order": view.order(),
        "torsion_exponent": view.torsion_exponent(),
        "census": brute,
    });
    if let Some(q) = a.q {
        let base = field_of_size(q)?;
        let sys = build_coherent_roots(a.p, &base, a.depth)?;
        let mut c = Check::new("coherent roots");
        if let Err(e) = sys.verify() {
            c.require(false, || e);
        }
        checks.push(c);
        data["roots"] = json!(sys
            .roots()
            .iter()
            .zip(sys.tower().levels())
            .map(|(w, f)| json!({"field": f.to_string(), "omega": w.to_string()}))
            .collect::<Vec<_>>());
    }
    if let Some(n) = a.n {
        data["max_p_subextension_degree"] = json!(max_p_subextension_degree(a.p, n));
    }
    Ok((checks, data))
}

fn tournament_cmd(t: &TournamentCmd) -> Handled {
    match t {
        TournamentCmd::Verify { q, p } => {
            let params = TournamentParams::canonical(&field_of_size(*q)?, *p)?;
            let r = verify_p_tournament(&params)?;
            let mut c = Check::new(format!("p-tournament q={q} p={p}"));
            c.absorb("scan", &r);
            let data = json!({
                "omega": params.omega().to_string(),
                "representatives": params.reps().iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok((vec![c], data))
        }
        TournamentCmd::Square { q } => {
            let r = verify_square_tournament(&field_of_size(*q)?)?;
            let mut c = Check::new(format!("square tournament q={q}"));
            c.absorb("scan", &r);
            Ok((vec![c], Value::Null))
        }
        TournamentCmd::Mu2n { q, n } => {
            let t = mu2n_tournament(&field_of_size(*q)?, *n)?;
            let mut c = Check::new(format!("mu_2^{n} tournament q={q}"));
            c.absorb("scan", &t.report);
            c.require(t.decomposition_ok, || "coset decomposition fails".into());
            let data = json!({
                "mu": t.mu.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "s": t.s.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "power_subgroup_size": t.power_subgroup_size,
            });
            Ok((vec![c], data))
        }
        TournamentCmd::Index { q, p } => {
            if !numth::is_prime(*p) {
                return Err(Usage(format!("{p} is not prime")));
            }
            let got = power_index(&field_of_size(*q)?, *p);
            let want = if (q - 1) % p == 0 { *p } else { 1 };
            let mut c = Check::new("index is p when p | q-1, else 1").count("index", got);
            c.require(got == want, || format!("expected {want}"));
            Ok((vec![c], Value::Null))
        }
        TournamentCmd::Vandermonde { p, q } => {
            let f = match q {
                Some(q) => field_of_size(*q)?,
                None => {
                    let ell = (p + 1..).step_by(*p as usize).find(|&l| numth::is_prime(l)).unwrap();
                    make_field(ell, 1)?
                }
            };
            let omega = canonical_omega(&f, *p)?;
            let (rank, kernel) = vandermonde_kernel_dim(*p, &omega)?;
            let mut c = Check::new("rank p-1, kernel spanned by (1,...,1)").count("rank", rank as u64);
            c.require(rank as u64 == p - 1, || format!("rank {rank}"));
            c.require(kernel.len() == 1 && kernel[0].iter().all(FFElem::is_one), || {
                format!("kernel {kernel:?}")
            });
            Ok((vec![c], json!({ "field": f.to_string(), "omega": omega.to_string() })))
        }
        TournamentCmd::Obstruction { p } => {
            if *p < 2 {
                return Err(Usage("p must be at least 2".into()));
            }
            let r = p_cycle_obstruction(*p);
            let mut c = Check::new("p-cycle moves every rotation").count("orbit_size", r.orbit_size as u64);
            c.require(r.holds, || format!("{:?}", r.cases));
            Ok((vec![c], json!(r)))
        }
    }
}

fn interpret_cmd(a: &InterpretArgs, seed: u64) -> Handled {
    if a.n == 0 {
        return Err(Usage("--n must be at least 1".into()));
    }
    let ext = code_extension(&field_of_size(a.q)?, a.n)?;
    let iso = verify_iso_with_direct(&ext, seed)?;
    let mut c1 = Check::new("coded multiplication agrees with F_{q^n}").count("pairs", iso.pairs_checked);
    c1.require(iso.ok, || format!("{:?}", iso.witness));
    let n = a.n;
    let g: Vec<_> = (0..n as u64).map(|r| galois_matrix(&ext, r)).collect::<Result<_, _>>()?;
    let g1 = if n > 1 { g[1].clone() } else { g[0].clone() };
    let mut c2 = Check::new("Galois matrices form a cyclic group of order n");
    let order = (1..=n as u64).find(|&d| g1.pow(d) == g[0]);
    c2.require(order == Some(n as u64), || format!("order {order:?}"));
    for (r, gr) in g.iter().enumerate() {
        let ok = verify_commute(&ext, gr).map(|x| x.commute) == Ok(true);
        c2.require(ok, || format!("G_{r} is not an automorphism commuting with σ"));
        for (s, gs) in g.iter().enumerate() {
            c2.require(gr.mul(gs) == g[(r + s) % n], || format!("G_{r} G_{s}"));
        }
    }
    let data = json!({
        "min_poly": ext.min_poly().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "companion": ext.companion().to_rows_literal(),
        "galois_coeffs": ext.galois_coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "galois": g1.to_rows_literal(),
        "alpha_image": iso.alpha_image,
        "exhaustive": iso.exhaustive,
    });
    Ok((vec![c1, c2], data))
}

fn kummer_cmd(a: &KummerArgs) -> Handled {
    let base = field_of_size(a.q)?;
    let b = parse_element(&base, &a.b)?;
    let chain = build_kummer_chain(&base, &b, a.p, a.depth)?;
    let mut c1 = Check::new("p-th powers map each level p-to-1 onto the one below");
    if let Err(e) = chain.check_power_map() {
        c1.require(false, || e);
    }
    let ids = phi_identities(&chain, a.r);
    let mut c2 = Check::new("phi identities").count("tau_fixes_zeta", ids.tau_fixes_zeta);
    c2.require(ids.power_compatible, || "φ(c^p) ≠ φ(c)^p".into());
    c2.require(ids.multiplicative, || "φ not multiplicative on quotients".into());
    c2.require(ids.sigma_commutes, || "σφ ≠ φσ".into());
    c2.require(ids.sigma_fixed, || "σ(φ(c)) ≠ φ(c) although τ fixes σ(c)/c".into());
    c2.require(ids.p_power_orders, || "φ(c) has order prime to p".into());
    let phi = phi_map(&chain, a.r);
    let mut c3 = Check::new("finite p-divisible p-subgroups are trivial");
    for v in &phi.image {
        let d = divisible_p_subgroup_is_trivial(v, a.p)?;
        c3.require(d.holds, || v.to_string());
    }
    let levels: Vec<Value> = (0..=chain.depth())
        .map(|n| {
            json!({
                "field": chain.tower().level(n).to_string(),
                "solutions": chain.level(n).len(),
            })
        })
        .collect();
    let data = json!({
        "levels": levels,
        "delta": chain.delta().map(ToString::to_string),
        "phi_image": phi.image.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok((vec![c1, c2, c3], data))
}

fn as_cmd(a: &AsCmd) -> Handled {
    match a {
        AsCmd::Solve { q, b } => {
            let f = field_of_size(*q)?;
            let b = parse_element(&f, b)?;
            let roots = artin_schreier_solve(&f, &b);
            let mut c = Check::new("solvable iff trace 0; roots form an F_p-coset")
                .count("roots", roots.len() as u64);
            c.require(roots.is_empty() == (b.trace_to_prime() != 0), || b.to_string());
            if let Some(r0) = roots.first() {
                c.require(
                    roots.len() as u64 == f.p() && roots.iter().all(|r| (r - r0).is_prime_subfield()),
                    || format!("{roots:?}"),
                );
            }
            let data = json!({
                "trace": b.trace_to_prime(),
                "roots": roots.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok((vec![c], data))
        }
        AsCmd::Check { q } => {
            field_of_size(*q)?;
            Ok((vec![suite::artin_schreier_fields(&[*q])], Value::Null))
        }
        AsCmd::Bridge { q } => {
            let v = artin_schreier_operator_bridge(*q)?;
            let mut c = Check::new("operator lemma on F_{q^p} with P = x^p - x")
                .count("triples", v.triples)
                .count("violations", v.violations);
            c.require(v.commute, || "P, S, T do not commute".into());
            c.require(v.kernel_is_prime_field, || "ker P ≠ F_p".into());
            for w in &v.witnesses {
                c.require(false, || w.join(", "));
            }
            Ok((vec![c], json!(v)))
        }
    }
}

fn lemma_cmd(l: &LemmaCmd, seed: u64) -> Handled {
    match l {
        LemmaCmd::Fuzz { trials, max_group } => {
            let r = operator_lemma_fuzz(seed, *trials, *max_group);
            let mut c = Check::new("no counterexample among instances satisfying the hypotheses")
                .count("trials", r.trials)
                .count("pairs", r.pairs_checked)
                .count("strict_instances", r.strict_instances)
                .count("relaxed_pairs", r.relaxed_pairs)
                .count("counterexamples", r.counterexamples)
                .count("intermediate_failures", r.intermediate_failures);
            c.require(r.passed(), || format!("{} counterexamples", r.counterexamples));
            Ok((vec![c], json!(r)))
        }
        LemmaCmd::Check { instance, a, depth, strict } => {
            let inst: OperatorInstance = serde_json::from_str(instance)?;
            let a: Vec<u64> = if a.trim().is_empty() {
                Vec::new()
            } else {
                a.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>()?
            };
            let mode = if *strict { LemmaMode::Strict } else { LemmaMode::Relaxed };
            let v = operator_lemma_check(&inst, &a, *depth, mode)?;
            let mut c = Check::new("hypotheses imply the conclusion");
            c.require(v.consistent, || format!("{:?}", v.a));
            if let Some(ok) = v.intermediate_facts {
                c.require(ok, || "T(C_b) ⊄ A_0 ∩ ker P^N".into());
            }
            Ok((vec![c], json!(v)))
        }
    }
}

fn puiseux_cmd(a: &PuiseuxArgs, seed: u64) -> Handled {
    let base = field_of_size(a.q)?;
    let system = build_coherent_roots(a.p, &base, a.depth)?;
    let ring = SeriesRing::new(system, a.cofactor)?;
    let mut c1 = Check::new("sigma tau = tau sigma");
    c1.absorb("series", &verify_commutation(&ring, a.trials, seed));
    let mut c2 = Check::new("tau is a ring automorphism");
    c2.absorb("pairs", &verify_tau_automorphism(&ring, a.trials, seed));
    let mut c3 = Check::new("orbit of x^(1/p) has p elements; tau coherent");
    let mut data = json!({
        "coefficient_field": ring.coeff_field().to_string(),
        "omegas": (0..=ring.depth() as usize).map(|i| ring.system().root(i).to_string()).collect::<Vec<_>>(),
    });
    if a.depth >= 1 {
        let orbit = kummer_orbit_order(&ring)?;
        c3 = c3.count("orbit", orbit);
        c3.require(orbit == a.p, || format!("orbit of size {orbit}"));
    }
    c3.require(tau_is_coherent(&ring)?, || "τ(x^{1/p^{i+1}})^p ≠ τ(x^{1/p^i})".into());
    if let Some(text) = &a.series {
        let s = ring.parse(text)?;
        data["series"] = json!({
            "input": s.to_string(),
            "tau": ring.tau(&s)?.to_string(),
            "sigma": ring.sigma(&s, ring.sigma_power()).to_string(),
        });
    }
    Ok((vec![c1, c2, c3], data))
}

fn haar_cmd(h: &HaarCmd, seed: u64) -> Handled {
    match h {
        HaarCmd::Estimate { p, level, trials, event } => {
            let est = haar::estimate_event_measure(*p, *level, *event, *trials, seed)?;
            let mut c = Check::new(format!("estimate within {} s.e. of exact", suite::HAAR_TOLERANCE))
                .count("hits", est.hits)
                .count("trials", est.trials);
            c.require(est.within(suite::HAAR_TOLERANCE), || format!("z = {:?}", est.z));
            Ok((vec![c], json!(est)))
        }
        HaarCmd::Exact { p, level, event } => {
            let m = haar::exact_event_measure(*p, *level, *event)?;
            Ok((Vec::new(), json!({ "event": event, "measure": m.to_string() })))
        }
        HaarCmd::Table { p, level, event } => {
            let t = haar::decay_table(*p, *level, *event)?;
            let mut checks = Vec::new();
            if *event == Event::PowerFixes {
                let mut c = Check::new("measure divides by p at each level once the decay starts");
                c.require(haar::decay_is_geometric(*p, &t), || format!("{t:?}"));
                checks.push(c);
            }
            let rows: BTreeMap<u32, String> =
                t.iter().enumerate().map(|(i, m)| (i as u32 + 1, m.to_string())).collect();
            Ok((checks, json!({ "event": event, "measures": rows })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(s: &str) -> Outcome {
        run(std::iter::once("galois-lab").chain(s.split_whitespace()))
    }

    #[test]
    fn tournament_verify_json() {
        let o = run_args("tournament verify --q 7 --p 3 --json");
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["checks"][0]["counts"]["scan.tuples"], 210);
        assert_eq!(v["checks"][0]["counts"]["scan.violations"], 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args("tournament verify --q 7 --p 5").code, 2);
        assert_eq!(run_args("tournament verify --q 7 --p 3 --bogus").code, 2);
        assert_eq!(run_args("nonsense").code, 2);
        assert_eq!(run_args("haar exact --p 4 --level 2").code, 2);
        assert_eq!(run_args("field --q 7 --threads 0").code, 2);
        assert_eq!(run_args("--help").code, 0);
    }

    #[test]
    fn text_output() {
        let o = run_args("field --q 9 --elem [1,2]");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("PASS generator is primitive"));
    }
}
