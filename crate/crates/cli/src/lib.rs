//! Command-line front end for `artc-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit code
//! together with everything that should be written to stdout and stderr, so the
//! whole surface can be tested without spawning a process.
//!
//! Exit codes: 0 success, 1 input/parse error, 2 hypothesis violation,
//! 3 resource limit, 4 oracle instability, 5 verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use artc_core::classify::{check_hypothesis, classify_with, ClassifyOptions};
use artc_core::euler::{
    chi_direct_with_bound, chi_recursive_with_bound, DEFAULT_MAX_CLIQUE_VERTICES,
};
use artc_core::fock::{
    build_basis_with_cap, check_relations_with, defect_identity_residual, vacuum_rank_on, word_oracle, Check,
    DEFAULT_FOCK_LENGTH, DEFAULT_MAX_BASIS,
};
use artc_core::graph::{
    join_decompose, parse_graph, removal_step_at, select_removal, GraphFormat, RemovalStep,
};
use artc_core::kgroups::{
    graph_k_theory_with_bound, kgroups_closed_form, kgroups_toeplitz, pv_truncated, results_agree,
    ElementOrder, FGAbelianGroup, KResult, ToeplitzK, DEFAULT_PV_WINDOW,
};
use artc_core::words::{delta_check, omega_enumerate, reduce, DeltaOutcome, ReducedForm, StarWord};
use artc_core::{Error, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_UNSTABLE: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

/// Environment variable overriding the Fock basis size cap.
pub const MAX_BASIS_ENV: &str = "ARTC_MAX_BASIS";

const AFTER_HELP: &str = "\
Exit codes: 0 success, 1 parse error, 2 hypothesis violation (some vertex is adjacent
to every other vertex, or fewer than 2 vertices), 3 resource limit, 4 truncated
oracle unstable, 5 verification failure or disagreement between methods.

Each join factor G_n contributes O_{1+|chi(G_n)|}. O_1 denotes the unital Kirchberg
algebra with K0 = Z generated by the unit and K1 = Z. For infinite graphs chi is
defined to be infinite and the factor is O_inf; inputs here are finite, so that case
cannot occur.

Environment: ARTC_MAX_BASIS overrides the Fock basis cap (default 200000 words).";

#[derive(Parser, Debug)]
#[command(
    name = "artc",
    version,
    about = "Classify boundary quotients of right-angled Artin Toeplitz algebras",
    after_help = AFTER_HELP
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file; reads stdin when omitted or `-`.
    input: Option<PathBuf>,

    /// Input format.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,

    /// Largest graph accepted by clique enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_CLIQUE_VERTICES)]
    max_clique_vertices: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Auto,
    EdgeJson,
    AdjacencyText,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Direct,
    Recursive,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline: join factors, chi, K-groups and the Cuntz-algebra symbol.
    Classify {
        #[command(flatten)]
        graph: GraphInput,
        /// Window of the truncated Pimsner-Voiculescu cross-check.
        #[arg(long, default_value_t = DEFAULT_PV_WINDOW)]
        oracle: usize,
    },
    /// Graph Euler characteristic.
    Chi {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// K-groups from a graph (per join factor) or from an explicit chi.
    Kgroups {
        #[command(flatten)]
        graph: GraphInput,
        /// Use this chi instead of reading a graph.
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
        /// Also run the truncated Pimsner-Voiculescu computation at this window.
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Split the graph into join factors.
    Decompose {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Reduce a word in the generators and adjoints to w1 w2* or zero.
    Reduce {
        #[command(flatten)]
        graph: GraphInput,
        /// JSON array of {"v": label, "star": bool}.
        #[arg(long)]
        word: String,
    },
    /// Words that cannot be commuted past a vertex, up to a length bound.
    Omega {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Check the operator identities on the truncated Fock representation.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// Truncation length L.
        #[arg(long, default_value_t = DEFAULT_FOCK_LENGTH)]
        fock_length: usize,
        /// Length bound for Omega words in the delta checks.
        #[arg(long, default_value_t = 3)]
        omega_len: usize,
        /// Number of random words checked against the representation.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a finished command wants written out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::DuplicateLabel(_)
        | Error::DuplicateEdge(..)
        | Error::SelfLoop(_)
        | Error::UnknownVertex(_)
        | Error::InvalidIndex { .. } => EXIT_PARSE,
        Error::GraphTooSmall(_) | Error::DominatedVertices(_) | Error::Precondition(_) => {
            EXIT_HYPOTHESIS
        }
        Error::ResourceLimit { .. } | Error::Overflow(_) => EXIT_RESOURCE,
        Error::Unstable { .. } => EXIT_UNSTABLE,
        Error::CrossCheck(_) => EXIT_VERIFY,
    }
}

/// A failed command: exit code, message for stderr, optional stdout payload.
struct Failure {
    code: i32,
    message: String,
    stdout: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
            stdout: None,
        }
    }
}

/// Successful output; `code` is nonzero when checks ran but some failed.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            code: EXIT_OK,
            text,
            json,
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

/// Runs one command line. `read_stdin` is called only when the graph comes from stdin.
pub fn run<I, T>(args: I, read_stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let as_json = cli.json;
    let result = match cli.command {
        Command::Classify { graph, oracle } => cmd_classify(&graph, oracle, read_stdin, as_json),
        Command::Chi { graph, method } => cmd_chi(&graph, method, read_stdin),
        Command::Kgroups { graph, chi, oracle } => cmd_kgroups(&graph, chi, oracle, read_stdin),
        Command::Decompose { graph } => cmd_decompose(&graph, read_stdin),
        Command::Reduce { graph, word } => cmd_reduce(&graph, &word, read_stdin),
        Command::Omega {
            graph,
            vertex,
            max_len,
        } => cmd_omega(&graph, &vertex, max_len, read_stdin),
        Command::Verify {
            graph,
            fock_length,
            omega_len,
            samples,
            seed,
        } => cmd_verify(&graph, fock_length, omega_len, samples, seed, read_stdin),
    };
    match result {
        Ok(report) => Outcome {
            code: report.code,
            stdout: if as_json {
                render_json(&report.json)
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: f.stdout.unwrap_or_default(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn load_graph(
    input: &GraphInput,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<Graph, Failure> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("cannot read {}: {e}", p.display()),
            stdout: None,
        })?,
        _ => read_stdin().map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("cannot read stdin: {e}"),
            stdout: None,
        })?,
    };
    let format = match input.format {
        FormatArg::Auto => GraphFormat::detect(&text),
        FormatArg::EdgeJson => GraphFormat::EdgeJson,
        FormatArg::AdjacencyText => GraphFormat::AdjacencyText,
        FormatArg::Dot => GraphFormat::Dot,
    };
    Ok(parse_graph(&text, format)?)
}

fn labels_json(g: &Graph, vs: &[usize]) -> Value {
    json!(vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>())
}

fn group_json(g: &FGAbelianGroup) -> Value {
    let torsion: Vec<Value> = g.torsion.iter().map(bigint_json).collect();
    let mut v = json!({
        "group": g.to_string(),
        "free_rank": g.free_rank,
        "torsion": torsion,
    });
    if let Some(c) = &g.marked_class {
        v["unit_class"] = json!(c.iter().map(bigint_json).collect::<Vec<_>>());
        v["unit_order"] = json!(g.element_order(c).to_string());
    }
    v
}

fn bigint_json(x: &num_bigint::BigInt) -> Value {
    match i64::try_from(x) {
        Ok(n) => json!(n),
        Err(_) => json!(x.to_string()),
    }
}

fn kresult_json(r: &KResult) -> Value {
    json!({ "chi": r.chi, "k0": group_json(&r.k0), "k1": group_json(&r.k1) })
}

fn toeplitz_json(t: &ToeplitzK) -> Value {
    json!({
        "k0": group_json(&t.k0),
        "k1": group_json(&t.k1),
        "extension_multiplier": t.extension_multiplier,
    })
}

fn input_json(g: &Graph) -> Value {
    json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "labels": g.labels() })
}

/// Exit-2 failure carrying the hypothesis diagnostics, in JSON if requested.
fn hypothesis_failure(g: &Graph, as_json: bool) -> Failure {
    let (dominated, message) = match check_hypothesis(g) {
        Ok(h) => {
            let msg = Error::DominatedVertices(h.dominated_vertices.clone()).to_string();
            (h.dominated_vertices, msg)
        }
        Err(e) => (Vec::new(), e.to_string()),
    };
    let stdout = as_json.then(|| {
        render_json(&json!({
            "input": input_json(g),
            "hypothesis": { "satisfied": false, "dominated_vertices": dominated },
            "factors": [],
            "symbol": null,
        }))
    });
    Failure {
        code: EXIT_HYPOTHESIS,
        message,
        stdout,
    }
}

fn describe_group_with_unit(g: &FGAbelianGroup) -> String {
    match g.marked_order() {
        Some(ElementOrder::Infinite) => format!("{g} (unit class has infinite order)"),
        Some(order) if !g.is_trivial() => format!("{g} (unit class has order {order})"),
        _ => g.to_string(),
    }
}

fn cmd_classify(
    input: &GraphInput,
    window: usize,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
    as_json: bool,
) -> CmdResult {
    let g = load_graph(input, read_stdin)?;
    let opts = ClassifyOptions {
        max_clique_vertices: input.max_clique_vertices,
        pv_window: window,
    };
    let report = match classify_with(&g, opts) {
        Ok(r) => r,
        Err(Error::DominatedVertices(_) | Error::GraphTooSmall(_)) => {
            return Err(hypothesis_failure(&g, as_json))
        }
        Err(e) => return Err(e.into()),
    };

    let mut text = format!(
        "graph: {} vertices, {} edges\n",
        g.vertex_count(),
        g.edge_count()
    );
    let mut factors = Vec::new();
    for (i, f) in report.factors.iter().enumerate() {
        let _ = writeln!(
            text,
            "factor {}: {{{}}}  chi = {}  {}",
            i + 1,
            f.vertices.join(", "),
            f.chi,
            f.cuntz_symbol
        );
        if f.chi == 0 {
            let _ = writeln!(
                text,
                "  O_1: unital Kirchberg algebra with K0 = Z generated by [1], K1 = Z"
            );
        }
        let _ = writeln!(
            text,
            "  K0 = {}, K1 = {}",
            describe_group_with_unit(&f.k0),
            f.k1
        );
        let _ = writeln!(
            text,
            "  Toeplitz algebra: K0 = {}, K1 = {}, compacts map to K0 by multiplication by {}",
            f.toeplitz.k0, f.toeplitz.k1, f.toeplitz.extension_multiplier
        );
        factors.push(json!({
            "vertices": f.vertices,
            "chi": f.chi,
            "chi_split": [f.chi_split.0, f.chi_split.1],
            "cuntz_symbol": f.cuntz_symbol,
            "k0": group_json(&f.k0),
            "k1": group_json(&f.k1),
            "toeplitz": toeplitz_json(&f.toeplitz),
        }));
    }
    let _ = writeln!(text, "C*_Q = {}", report.symbol);
    let json = json!({
        "input": input_json(&g),
        "hypothesis": {
            "satisfied": report.hypothesis.satisfied,
            "dominated_vertices": report.hypothesis.dominated_vertices,
        },
        "factors": factors,
        "symbol": report.symbol,
    });
    Ok(Report::ok(text, json))
}

fn cmd_chi(
    input: &GraphInput,
    method: MethodArg,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CmdResult {
    let g = load_graph(input, read_stdin)?;
    let bound = input.max_clique_vertices;
    let mut text = String::new();
    let mut json = json!({ "input": input_json(&g) });
    let mut values = Vec::new();
    if method != MethodArg::Recursive {
        let r = chi_direct_with_bound(&g, bound)?;
        let counts = r.profile.map(|p| p.counts).unwrap_or_default();
        let _ = writeln!(text, "chi (direct) = {}", r.chi);
        json["direct"] = json!({ "chi": r.chi, "clique_counts": counts });
        values.push(r.chi);
    }
    if method != MethodArg::Direct {
        let r = chi_recursive_with_bound(&g, bound)?;
        let _ = writeln!(text, "chi (recursive) = {}", r.chi);
        json["recursive"] = json!({ "chi": r.chi });
        values.push(r.chi);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if method == MethodArg::Both {
        json["agree"] = json!(agree);
    }
    if !agree {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!(
                "methods disagree: direct {} != recursive {}",
                values[0], values[1]
            ),
            stdout: Some(render_json(&json)),
        });
    }
    Ok(Report::ok(text, json))
}

fn oracle_json(window: usize, split: (i64, i64), r: &KResult, agree: bool) -> Value {
    json!({
        "window": window,
        "x": split.0,
        "y": split.1,
        "k0": group_json(&r.k0),
        "k1": group_json(&r.k1),
        "agree": agree,
    })
}

fn cmd_kgroups(
    input: &GraphInput,
    chi: Option<i64>,
    oracle: Option<usize>,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CmdResult {
    if let Some(chi) = chi {
        if input.input.is_some() {
            return Err(Failure {
                code: EXIT_PARSE,
                message: "give either --chi or a graph, not both".into(),
                stdout: None,
            });
        }
        let closed = kgroups_closed_form(chi);
        let toeplitz = kgroups_toeplitz(chi);
        let mut text = format!(
            "chi = {chi}\nK0 = {}, K1 = {}\n",
            describe_group_with_unit(&closed.k0),
            closed.k1
        );
        let _ = writeln!(
            text,
            "Toeplitz algebra: K0 = {}, K1 = {}",
            toeplitz.k0, toeplitz.k1
        );
        let mut json = json!({
            "chi": chi,
            "closed_form": kresult_json(&closed),
            "toeplitz": toeplitz_json(&toeplitz),
        });
        if let Some(window) = oracle {
            // A bare chi is realised by the coefficients (chi, 0).
            let pv = pv_truncated(chi, 0, window)?;
            let agree = results_agree(&closed, &pv);
            let _ = writeln!(
                text,
                "truncated oracle (window {window}): K0 = {}, K1 = {}, {}",
                pv.k0,
                pv.k1,
                if agree { "agrees" } else { "DISAGREES" }
            );
            json["oracle"] = oracle_json(window, (chi, 0), &pv, agree);
            if !agree {
                return Ok(Report {
                    code: EXIT_VERIFY,
                    text,
                    json,
                });
            }
        }
        return Ok(Report::ok(text, json));
    }

    let g = load_graph(input, read_stdin)?;
    let d = join_decompose(&g)?;
    let window = oracle.unwrap_or(DEFAULT_PV_WINDOW);
    let mut text = String::new();
    let mut factors = Vec::new();
    for f in &d.factors {
        let k = graph_k_theory_with_bound(f, window, input.max_clique_vertices)?;
        let _ = writeln!(
            text,
            "factor {{{}}}: chi = {}, K0 = {}, K1 = {}; Toeplitz K0 = {}, K1 = {}",
            f.labels().join(", "),
            k.chi,
            describe_group_with_unit(&k.quotient.k0),
            k.quotient.k1,
            k.toeplitz.k0,
            k.toeplitz.k1
        );
        let mut fj = json!({
            "vertices": f.labels(),
            "chi": k.chi,
            "closed_form": kresult_json(&k.quotient),
            "toeplitz": toeplitz_json(&k.toeplitz),
        });
        if oracle.is_some() {
            let _ = writeln!(
                text,
                "  truncated oracle (window {window}, x = {}, y = {}): K0 = {}, K1 = {}, agrees",
                k.split.0, k.split.1, k.oracle.k0, k.oracle.k1
            );
            fj["oracle"] = oracle_json(window, k.split, &k.oracle, true);
        }
        factors.push(fj);
    }
    Ok(Report::ok(
        text,
        json!({ "input": input_json(&g), "factors": factors }),
    ))
}

fn cmd_decompose(
    input: &GraphInput,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CmdResult {
    let g = load_graph(input, read_stdin)?;
    let d = join_decompose(&g)?;
    let mut text = String::new();
    let mut factors = Vec::new();
    for (f, vs) in d.factors.iter().zip(&d.factor_vertex_sets) {
        let edges: Vec<[&str; 2]> = f.edges().map(|(u, v)| [f.label(u), f.label(v)]).collect();
        let _ = writeln!(text, "{{{}}}: {} edges", f.labels().join(", "), edges.len());
        factors.push(json!({ "vertices": labels_json(&g, vs), "edges": edges }));
    }
    Ok(Report::ok(
        text,
        json!({ "input": input_json(&g), "factors": factors }),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Letter {
    v: String,
    star: bool,
}

fn parse_word(text: &str, g: &Graph) -> Result<StarWord, Error> {
    let letters: Vec<Letter> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("word: {e}"),
    })?;
    let factors = letters
        .into_iter()
        .map(|l| {
            g.index_of(&l.v)
                .map(|i| (i, l.star))
                .ok_or(Error::UnknownVertex(l.v))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StarWord::new(factors))
}

fn cmd_reduce(
    input: &GraphInput,
    word: &str,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CmdResult {
    let g = load_graph(input, read_stdin)?;
    let w = parse_word(word, &g)?;
    Ok(match reduce(&w, &g)? {
        ReducedForm::Zero => Report::ok("ZERO\n".into(), json!({ "zero": true })),
        ReducedForm::Word { w1, w2 } => {
            let l1: Vec<&str> = w1.letters().iter().map(|&v| g.label(v)).collect();
            let l2: Vec<&str> = w2.letters().iter().map(|&v| g.label(v)).collect();
            let text = format!("w1 = [{}]\nw2 = [{}]\n", l1.join(" "), l2.join(" "));
            Report::ok(text, json!({ "zero": false, "w1": l1, "w2": l2 }))
        }
    })
}

fn vertex_index(g: &Graph, label: &str) -> Result<usize, Error> {
    g.index_of(label)
        .ok_or_else(|| Error::UnknownVertex(label.to_string()))
}

fn cmd_omega(
    input: &GraphInput,
    vertex: &str,
    max_len: usize,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CmdResult {
    let g = load_graph(input, read_stdin)?;
    let v = vertex_index(&g, vertex)?;
    let words: Vec<String> = omega_enumerate(&g, v, max_len)?
        .iter()
        .map(|w| w.render(&g))
        .collect();
    let text: String = words.iter().map(|w| format!("{w:?}\n")).collect();
    Ok(Report::ok(
        text,
        json!({ "vertex": vertex, "max_len": max_len, "words": words }),
    ))
}

fn basis_cap() -> Result<usize, Failure> {
    match std::env::var(MAX_BASIS_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Failure {
            code: EXIT_PARSE,
            message: format!("{MAX_BASIS_ENV} must be a nonnegative integer, got {s:?}"),
            stdout: None,
        }),
        Err(_) => Ok(DEFAULT_MAX_BASIS),
    }
}

/// Deletion step used for the defect identity and the Omega checks of one factor.
fn factor_removal(f: &Graph) -> Result<RemovalStep, Error> {
    if f.vertex_count() == 2 {
        removal_step_at(f, 1)
    } else {
        select_removal(f)
    }
}

fn cmd_verify(
    input: &GraphInput,
    fock_length: usize,
    omega_len: usize,
    samples: usize,
    seed: u64,
    read_stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> CmdResult {
    if fock_length < 3 {
        return Err(Failure {
            code: EXIT_PARSE,
            message: format!("--fock-length must be at least 3, got {fock_length}"),
            stdout: None,
        });
    }
    let cap = basis_cap()?;
    let g = load_graph(input, read_stdin)?;
    let d = join_decompose(&g)?;

    let mut checks: Vec<(String, Check)> = Vec::new();
    let all = "graph".to_string();

    let basis = build_basis_with_cap(&g, fock_length, cap)?;
    for c in check_relations_with(&basis, &g) {
        checks.push((all.clone(), c));
    }
    let rank = vacuum_rank_on(&basis);
    checks.push((
        all.clone(),
        Check {
            name: format!("vacuum projection rank = 1 (got {rank})"),
            subspace: format!("words of length <= {fock_length}"),
            residual: rank as i64 - 1,
            pass: rank == 1,
        },
    ));

    for f in &d.factors {
        let name = format!("{{{}}}", f.labels().join(", "));
        let step = factor_removal(f)?;
        let fb = build_basis_with_cap(f, fock_length, cap)?;
        checks.push((
            name.clone(),
            defect_identity_residual(&fb, step.removed_vertex, &step.neighbors),
        ));

        let omega = omega_enumerate(f, step.removed_vertex, omega_len)?;
        let mut failures = 0i64;
        for p in &omega {
            for q in &omega {
                let expected = if p == q {
                    DeltaOutcome::Identity
                } else {
                    DeltaOutcome::Zero
                };
                if delta_check(p, q, f, step.removed_vertex)? != expected {
                    failures += 1;
                }
            }
        }
        checks.push((
            name,
            Check {
                name: format!(
                    "delta identity at vertex {} on {} Omega words",
                    f.label(step.removed_vertex),
                    omega.len()
                ),
                subspace: format!("symbolic, Omega words of length <= {omega_len}"),
                residual: failures,
                pass: failures == 0,
            },
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let max_word = fock_length - 2;
    let mut mismatches = 0i64;
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_word);
        let w = StarWord::new(
            (0..len)
                .map(|_| (rng.gen_range(0..n), rng.gen_bool(0.5)))
                .collect(),
        );
        let r = reduce(&w, &g)?;
        if !word_oracle(&w, &r, &basis)? {
            mismatches += 1;
        }
    }
    checks.push((
        all,
        Check {
            name: format!("{samples} random words agree with their reduced forms"),
            subspace: format!("words of length <= {fock_length} - |w|"),
            residual: mismatches,
            pass: mismatches == 0,
        },
    ));

    let pass = checks.iter().all(|(_, c)| c.pass);
    let mut text = String::new();
    for (scope, c) in &checks {
        let _ = writeln!(
            text,
            "[{}] {scope}: {} ({}, residual {})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.subspace,
            c.residual
        );
    }
    let _ = writeln!(
        text,
        "{}",
        if pass {
            "all checks passed"
        } else {
            "VERIFICATION FAILED"
        }
    );
    let json = json!({
        "input": input_json(&g),
        "fock_length": fock_length,
        "basis_size": basis.len(),
        "checks": checks.iter().map(|(scope, c)| json!({
            "scope": scope,
            "name": c.name,
            "subspace": c.subspace,
            "residual": c.residual,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok(Report {
        code: if pass { EXIT_OK } else { EXIT_VERIFY },
        text,
        json,
    })
}
