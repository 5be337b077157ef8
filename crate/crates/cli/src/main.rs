//! Command-line surface for the group engines.
//!
//! Exit codes: 0 for a positive verdict (trivial / member) or plain success,
//! 1 for a negative verdict, 2 for honest refusals (unsupported bases,
//! inconclusive searches, violated preconditions), 3 for malformed input.
//! Reports go to stdout as JSON (or `--output text`); stderr carries timing
//! and stage-tagged diagnostics, keeping stdout deterministic.

mod coords;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vartin_core::artin::{artin_member_strong, artin_wp, garside_nf, pi_x_star};
use vartin_core::error::{EngineError, Result};
use vartin_core::hatgraph::HatOptions;
use vartin_core::oracles;
use vartin_core::roots::{depth, express_root, root_sign, RootSign};
use vartin_core::vartin::{abelian_certificate, pi_k_star, VaContext};
use vartin_core::{
    ArtinWord, CoxWord, CoxeterGraph, GroupContext, Label, Membership, VaWord, Verdict, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "vartin",
    version,
    about = "Word problems and strong parabolic membership in Coxeter, Artin, and virtual Artin groups"
)]
struct Cli {
    #[command(subcommand)]
    domain: Domain,
}

#[derive(Subcommand)]
enum Domain {
    /// Coxeter-group queries (words over the vertex names)
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Root-system queries
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Artin-group queries (words over `s`, `s^-1`)
    #[command(subcommand)]
    Artin(ArtinCmd),
    /// Virtual-Artin-group queries (words over `sigma:s`, `sigma^-1:s`, `tau:s`)
    #[command(subcommand)]
    Va(VaCmd),
}

#[derive(Subcommand)]
enum CoxeterCmd {
    /// ShortLex reduced word for the element of --word
    Reduce(Common),
    /// Decide whether --word represents the identity
    Wp(Common),
    /// Strong membership of --word in the parabolic subgroup on --subset
    Member(Common),
}

#[derive(Subcommand)]
enum RootsCmd {
    /// Enumerate positive roots up to --depth
    List(RootsListArgs),
    /// Express the root --coords as an image of a simple root
    Express(RootsExpressArgs),
}

#[derive(Args)]
struct RootsListArgs {
    #[command(flatten)]
    common: Common,
    /// Depth bound for the enumeration
    #[arg(long, default_value_t = 6)]
    depth: u32,
}

#[derive(Args)]
struct RootsExpressArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated coordinates in graph order; entries are rationals or
    /// polynomials in `th` (the field generator), e.g. "1,th,-1/2"
    #[arg(long)]
    coords: String,
}

#[derive(Subcommand)]
enum ArtinCmd {
    /// Decide whether --word represents the identity
    Wp(Common),
    /// Retraction of --word onto the parabolic on --subset
    Retract(Common),
    /// Strong membership of --word in the parabolic on --subset
    Member(Common),
    /// Garside normal form of --word (spherical type only)
    Nf(Common),
}

#[derive(Subcommand)]
enum VaCmd {
    /// Decide whether --word represents the identity
    Wp(Common),
    /// Strong membership of --word in the parabolic on --subset
    Member(Common),
    /// Root list, label matrix, and delta word of a kernel word
    Hatgraph(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// Graph file (JSON: {"vertices": [...], "edges": [{"a","b","m"}]})
    #[arg(short, long)]
    graph: PathBuf,
    /// Input word in the command's token grammar
    #[arg(short, long)]
    word: Option<String>,
    /// Comma-separated vertex subset
    #[arg(long)]
    subset: Option<String>,
    /// Extra depth for the pair-label witness search
    #[arg(long, default_value_t = 4)]
    slack: u32,
    /// Error out instead of concluding infinity at the search bound
    #[arg(long)]
    strict: bool,
    /// Cross-check the answer against brute-force oracles where possible
    #[arg(long)]
    verify: bool,
    /// Seed for randomized verification samples
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report format on stdout
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
}

struct Outcome {
    report: Value,
    exit: u8,
}

struct VerifyLog {
    enabled: bool,
    checks: Vec<Value>,
}

impl VerifyLog {
    fn new(enabled: bool) -> Self {
        VerifyLog {
            enabled,
            checks: Vec::new(),
        }
    }

    fn run(&mut self, name: &str, check: impl FnOnce() -> Result<bool>) {
        if !self.enabled {
            return;
        }
        match check() {
            Ok(passed) => self.checks.push(json!({"name": name, "passed": passed})),
            Err(e) => self
                .checks
                .push(json!({"name": name, "passed": false, "error": e.to_string()})),
        }
    }

    fn skip(&mut self, name: &str, reason: &str) {
        if self.enabled {
            self.checks.push(json!({"name": name, "skipped": reason}));
        }
    }

    fn attach(self, report: &mut Value) {
        if !self.enabled {
            return;
        }
        let all = self
            .checks
            .iter()
            .all(|c| c.get("passed").is_none_or(|p| p == &Value::Bool(true)));
        report["verify"] = json!({"checks": self.checks, "all_passed": all});
        if !all {
            eprintln!("verify: at least one cross-check FAILED");
        }
    }
}

fn load_graph(common: &Common) -> Result<CoxeterGraph> {
    let text = std::fs::read_to_string(&common.graph)
        .map_err(|e| EngineError::Parse(format!("cannot read {}: {e}", common.graph.display())))?;
    CoxeterGraph::parse_json(&text)
}

fn need_word(common: &Common) -> Result<&str> {
    common
        .word
        .as_deref()
        .ok_or_else(|| EngineError::Parse("this command needs --word".into()))
}

fn need_subset(graph: &CoxeterGraph, common: &Common) -> Result<VertexSet> {
    let text = common
        .subset
        .as_deref()
        .ok_or_else(|| EngineError::Parse("this command needs --subset".into()))?;
    VertexSet::from_names(graph, text)
}

fn hat_options(common: &Common) -> HatOptions {
    HatOptions {
        slack: common.slack,
        strict: common.strict,
    }
}

fn verdict_fields(report: &mut Value, verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Trivial => {
            report["verdict"] = json!("trivial");
            0
        }
        Verdict::Nontrivial(cert) => {
            report["verdict"] = json!("nontrivial");
            report["certificate"] = serde_json::to_value(cert).expect("certificate serializes");
            1
        }
    }
}

fn label_value(label: Label) -> Value {
    match label {
        Label::Finite(m) => json!(m),
        Label::Infinite => json!("inf"),
    }
}

fn run_coxeter(cmd: &CoxeterCmd) -> Result<Outcome> {
    let common = match cmd {
        CoxeterCmd::Reduce(c) | CoxeterCmd::Wp(c) | CoxeterCmd::Member(c) => c,
    };
    let graph = load_graph(common)?;
    let ctx = GroupContext::new(graph)?;
    let word = CoxWord::parse(ctx.graph(), need_word(common)?)?;
    let mut verify = VerifyLog::new(common.verify);
    let element = ctx.element_of(&word);
    let reduced = ctx.shortlex(&element);

    // Tits rewriting is the independent oracle for everything here.
    if word.len() <= 16 {
        let ctx2 = ctx.clone();
        let word2 = word.clone();
        let reduced2 = reduced.clone();
        verify.run("m-operation-agreement", move || {
            let m_reduced = ctx2.m_reduce(&word2)?;
            Ok(m_reduced.len() == reduced2.len()
                && ctx2.element_of(&m_reduced) == ctx2.element_of(&reduced2))
        });
    } else {
        verify.skip("m-operation-agreement", "word longer than the oracle cap");
    }

    match cmd {
        CoxeterCmd::Reduce(_) => {
            let report = json!({
                "command": "coxeter reduce",
                "input": word.display(ctx.graph()),
                "reduced": reduced.display(ctx.graph()),
                "length": reduced.len(),
            });
            let mut report = report;
            verify.attach(&mut report);
            Ok(Outcome { report, exit: 0 })
        }
        CoxeterCmd::Wp(_) => {
            let trivial = element.is_identity();
            let mut report = json!({
                "command": "coxeter wp",
                "input": word.display(ctx.graph()),
                "verdict": if trivial { "trivial" } else { "nontrivial" },
                "reduced": reduced.display(ctx.graph()),
            });
            verify.attach(&mut report);
            Ok(Outcome {
                report,
                exit: u8::from(!trivial),
            })
        }
        CoxeterCmd::Member(_) => {
            let subset = need_subset(ctx.graph(), common)?;
            let member = ctx.cox_member_strong(&word, &subset);
            let mut report = json!({
                "command": "coxeter member",
                "input": word.display(ctx.graph()),
                "verdict": if member.is_some() { "in" } else { "out" },
            });
            let exit = match &member {
                Some(rewrite) => {
                    report["rewrite"] = json!(rewrite.display(ctx.graph()));
                    let ctx2 = ctx.clone();
                    let rewrite2 = rewrite.clone();
                    verify.run("rewrite-represents-same-element", move || {
                        Ok(ctx2.element_of(&rewrite2) == element)
                    });
                    0
                }
                None => 1,
            };
            verify.attach(&mut report);
            Ok(Outcome { report, exit })
        }
    }
}

fn run_roots(cmd: &RootsCmd) -> Result<Outcome> {
    match cmd {
        RootsCmd::List(args) => {
            let graph = load_graph(&args.common)?;
            let ctx = GroupContext::new(graph)?;
            let mut verify = VerifyLog::new(args.common.verify);
            let roots = oracles::roots_bfs(&ctx, args.depth);
            let listing: Vec<Value> = roots
                .iter()
                .map(|(root, d)| json!({"coords": root.display(&ctx), "depth": d}))
                .collect();
            let ctx2 = ctx.clone();
            let roots2 = roots.clone();
            verify.run("greedy-depth-matches-bfs", move || {
                for (root, d) in &roots2 {
                    if depth(&ctx2, root)? != *d {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            let mut report = json!({
                "command": "roots list",
                "depth": args.depth,
                "count": roots.len(),
                "roots": listing,
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit: 0 })
        }
        RootsCmd::Express(args) => {
            let graph = load_graph(&args.common)?;
            let ctx = GroupContext::new(graph)?;
            let mut verify = VerifyLog::new(args.common.verify);
            let root = coords::parse_root(&ctx, &args.coords)?;
            let subset = match &args.common.subset {
                Some(text) => Some(VertexSet::from_names(ctx.graph(), text)?),
                None => None,
            };
            let expr = express_root(&ctx, &root, subset.as_ref())?;
            let sign = match root_sign(&root)? {
                RootSign::Positive => "positive",
                RootSign::Negative => "negative",
            };
            let ctx2 = ctx.clone();
            let root2 = root.clone();
            let expr2 = expr.clone();
            verify.run("expression-acts-to-root", move || {
                let w = ctx2.element_of(&expr2.eta);
                Ok(ctx2.act_on_simple(&w, expr2.vertex) == root2)
            });
            let mut report = json!({
                "command": "roots express",
                "coords": root.display(&ctx),
                "sign": sign,
                "eta": expr.eta.display(ctx.graph()),
                "vertex": ctx.graph().vertex_name(expr.vertex),
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit: 0 })
        }
    }
}

fn run_artin(cmd: &ArtinCmd) -> Result<Outcome> {
    let common = match cmd {
        ArtinCmd::Wp(c) | ArtinCmd::Retract(c) | ArtinCmd::Member(c) | ArtinCmd::Nf(c) => c,
    };
    let graph = load_graph(common)?;
    let ctx = GroupContext::new(graph)?;
    let word = ArtinWord::parse(ctx.graph(), need_word(common)?)?;
    let mut verify = VerifyLog::new(common.verify);

    match cmd {
        ArtinCmd::Wp(_) => {
            let verdict = artin_wp(&ctx, &word)?;
            let mut report = json!({
                "command": "artin wp",
                "input": word.display(ctx.graph()),
            });
            let exit = verdict_fields(&mut report, &verdict);
            let ctx2 = ctx.clone();
            let word2 = word.clone();
            verify.run("inverse-cancels", move || {
                Ok(artin_wp(&ctx2, &word2.concat(&word2.inverse()))?.is_trivial())
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit })
        }
        ArtinCmd::Retract(_) => {
            let subset = need_subset(ctx.graph(), common)?;
            let retracted = pi_x_star(&ctx, &word, &subset);
            let retracted_len = retracted.len();
            let input_len = word.len();
            verify.run("length-never-grows", move || Ok(retracted_len <= input_len));
            let mut report = json!({
                "command": "artin retract",
                "input": word.display(ctx.graph()),
                "retraction": retracted.display(ctx.graph()),
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit: 0 })
        }
        ArtinCmd::Member(_) => {
            let subset = need_subset(ctx.graph(), common)?;
            let member = artin_member_strong(&ctx, &word, &subset, |nu| artin_wp(&ctx, nu))?;
            let mut report = json!({
                "command": "artin member",
                "input": word.display(ctx.graph()),
                "verdict": if member.is_some() { "in" } else { "out" },
            });
            let exit = match &member {
                Some(rewrite) => {
                    report["rewrite"] = json!(rewrite.display(ctx.graph()));
                    let ctx2 = ctx.clone();
                    let check = word.concat(&rewrite.inverse());
                    verify.run("rewrite-equals-input", move || {
                        Ok(artin_wp(&ctx2, &check)?.is_trivial())
                    });
                    0
                }
                None => 1,
            };
            verify.attach(&mut report);
            Ok(Outcome { report, exit })
        }
        ArtinCmd::Nf(_) => {
            let nf = garside_nf(&ctx, &word)?;
            let factors: Vec<String> = nf
                .factors
                .iter()
                .map(|f| ctx.shortlex(f).display(ctx.graph()))
                .collect();
            let ctx2 = ctx.clone();
            let word2 = word.clone();
            verify.run("inverse-cancels", move || {
                Ok(garside_nf(&ctx2, &word2.concat(&word2.inverse()))?.is_identity())
            });
            let mut report = json!({
                "command": "artin nf",
                "input": word.display(ctx.graph()),
                "delta_power": nf.delta_power,
                "factors": factors,
                "is_identity": nf.is_identity(),
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit: 0 })
        }
    }
}

fn run_va(cmd: &VaCmd) -> Result<Outcome> {
    let common = match cmd {
        VaCmd::Wp(c) | VaCmd::Member(c) | VaCmd::Hatgraph(c) => c,
    };
    let graph = load_graph(common)?;
    let va = VaContext::with_options(graph, hat_options(common))?;
    let word = VaWord::parse(va.graph(), need_word(common)?)?;
    let mut verify = VerifyLog::new(common.verify);

    match cmd {
        VaCmd::Wp(_) => {
            let mut trace = Vec::new();
            let verdict = va.word_problem_traced(&word, &mut trace)?;
            let abelian = abelian_certificate(va.graph(), &word);
            let mut report = json!({
                "command": "va wp",
                "input": word.display(va.graph()),
                "abelian_certificate": abelian,
                "trace": trace,
            });
            let exit = verdict_fields(&mut report, &verdict);
            let nontrivial = exit == 1;
            let abelian2 = abelian_certificate(va.graph(), &word);
            verify.run("abelianization-consistency", move || {
                Ok(abelian2.iter().all(|&v| v == 0) || nontrivial)
            });
            let va2 = va.clone();
            let word2 = word.clone();
            verify.run("coxeter-projection-consistency", move || {
                let image = va2.group().element_of(&pi_k_star(&word2));
                Ok(image.is_identity() || nontrivial)
            });
            let va3 = va.clone();
            let seed = common.seed;
            verify.run("seeded-relator-sample-trivial", move || {
                for fuzzed in oracles::fuzz_relator_words(va3.group(), 5, seed) {
                    if !va3.word_problem(&fuzzed)?.is_trivial() {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit })
        }
        VaCmd::Member(_) => {
            let subset = need_subset(va.graph(), common)?;
            let membership = va.member_strong(&word, &subset)?;
            let mut report = json!({
                "command": "va member",
                "input": word.display(va.graph()),
            });
            let exit = match &membership {
                Membership::In { rewrite } => {
                    report["verdict"] = json!("in");
                    report["rewrite"] = json!(rewrite.display(va.graph()));
                    let va2 = va.clone();
                    let check = word.concat(&rewrite.inverse());
                    verify.run("rewrite-equals-input", move || {
                        Ok(va2.word_problem(&check)?.is_trivial())
                    });
                    0
                }
                Membership::Out { stage } => {
                    report["verdict"] = json!("out");
                    report["stage"] = json!(stage);
                    1
                }
            };
            verify.attach(&mut report);
            Ok(Outcome { report, exit })
        }
        VaCmd::Hatgraph(_) => {
            let (roots, delta) = va.to_delta(&word)?;
            let listing: Vec<Value> = roots
                .roots
                .iter()
                .map(|r| json!(r.display(va.group())))
                .collect();
            let matrix: Vec<Vec<Value>> = roots
                .labels
                .iter()
                .map(|row| row.iter().map(|&l| label_value(l)).collect())
                .collect();
            let va2 = va.clone();
            let word2 = word.clone();
            let roots2 = roots.clone();
            let delta2 = delta.clone();
            verify.run("delta-word-equals-input", move || {
                let mut expansion = VaWord::default();
                for letter in &delta2.0 {
                    let piece = va2.xi(&roots2.roots[letter.root], None)?;
                    expansion = expansion.concat(&if letter.inverse {
                        piece.inverse()
                    } else {
                        piece
                    });
                }
                let check = word2.concat(&expansion.inverse());
                Ok(va2.word_problem(&check)?.is_trivial())
            });
            let mut report = json!({
                "command": "va hatgraph",
                "input": word.display(va.graph()),
                "roots": listing,
                "matrix": matrix,
                "delta_word": delta.display(),
            });
            verify.attach(&mut report);
            Ok(Outcome { report, exit: 0 })
        }
    }
}

fn emit(outcome: &Outcome, output: Output) {
    match output {
        Output::Json => println!("{}", outcome.report),
        Output::Text => {
            if let Value::Object(map) = &outcome.report {
                for (key, value) in map {
                    match value {
                        Value::String(s) => println!("{key}: {s}"),
                        other => println!("{key}: {other}"),
                    }
                }
            }
        }
    }
}

fn common_of(domain: &Domain) -> &Common {
    match domain {
        Domain::Coxeter(CoxeterCmd::Reduce(c))
        | Domain::Coxeter(CoxeterCmd::Wp(c))
        | Domain::Coxeter(CoxeterCmd::Member(c))
        | Domain::Roots(RootsCmd::List(RootsListArgs { common: c, .. }))
        | Domain::Roots(RootsCmd::Express(RootsExpressArgs { common: c, .. }))
        | Domain::Artin(ArtinCmd::Wp(c))
        | Domain::Artin(ArtinCmd::Retract(c))
        | Domain::Artin(ArtinCmd::Member(c))
        | Domain::Artin(ArtinCmd::Nf(c))
        | Domain::Va(VaCmd::Wp(c))
        | Domain::Va(VaCmd::Member(c))
        | Domain::Va(VaCmd::Hatgraph(c)) => c,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(3);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let output = common_of(&cli.domain).output;
    let started = Instant::now();
    let result = match &cli.domain {
        Domain::Coxeter(cmd) => run_coxeter(cmd),
        Domain::Roots(cmd) => run_roots(cmd),
        Domain::Artin(cmd) => run_artin(cmd),
        Domain::Va(cmd) => run_va(cmd),
    };
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    match result {
        Ok(outcome) => {
            emit(&outcome, output);
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("{e}");
            let exit = match &e {
                EngineError::Parse(_) => 3,
                _ => 2,
            };
            let report = json!({"error": e.to_string()});
            match output {
                Output::Json => println!("{report}"),
                Output::Text => println!("error: {e}"),
            }
            ExitCode::from(exit)
        }
    }
}
