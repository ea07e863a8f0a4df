mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use beadgraph::algebra::{parse_element, serialize_element, DiagramElement, Quotient, QuotientOptions, Space};
use beadgraph::beadrings::{edge_ring, flag_ring, h1_ring, RingPresentation};
use beadgraph::contraction::{break_graph, complete_contraction, contraction_sign_audit, parse_scheme, serialize_scheme};
use beadgraph::eqlink::{eq_linking, linking_number, parse_diagram, run_axioms};
use beadgraph::graphs::{parse_graph, TreePolicy};
use beadgraph::hair::hair_map;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "beadgraph", version, about = "Exact computations with beaded trivalent graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Star,
    Phi,
    Lambda,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Star => Space::Star,
            SpaceArg::Phi => Space::Phi,
            SpaceArg::Lambda => Space::Lambda,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Bfs,
    Dfs,
    ReverseBfs,
}

impl From<PolicyArg> for TreePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Bfs => TreePolicy::Bfs,
            PolicyArg::Dfs => TreePolicy::Dfs,
            PolicyArg::ReverseBfs => TreePolicy::ReverseBfs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Flag,
    Edge,
    H1,
}

#[derive(Args, Clone, Copy)]
struct QuotientArgs {
    /// Bead exponents range over [-W, W] (A(Lambda)).
    #[arg(long, default_value_t = 1)]
    bead_window: i64,
    /// Vassiliev degree bound (required for A(*)).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Shuffles the generator order.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Bfs)]
    tree: PolicyArg,
}

impl QuotientArgs {
    fn options(self) -> QuotientOptions {
        QuotientOptions {
            bead_window: self.bead_window,
            max_vassiliev: self.max_degree,
            policy: self.tree.into(),
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an element file and give its coordinates in the quotient.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        q: QuotientArgs,
    },
    /// Dimension of one graded piece of a quotient.
    Dim {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        euler: usize,
        #[command(flatten)]
        q: QuotientArgs,
    },
    /// Hair map of an A(Lambda) element file into A(*).
    Hair {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Complete contraction of a scheme file, or the scheme of a graph file.
    Contract {
        file: PathBuf,
        /// Read a graph file and print its broken scheme.
        #[arg(long)]
        r#break: bool,
        /// Also flip this vortex and check that the result is negated.
        #[arg(long)]
        audit: Option<usize>,
    },
    /// Presentation of a bead ring of a graph file.
    Ring {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RingArg::Flag)]
        kind: RingArg,
        /// Comma separated exponents to put in normal form.
        #[arg(long, allow_hyphen_values = true)]
        monomial: Option<String>,
    },
    /// Linking numbers of a diagram file, or the linking axiom suite.
    Eqlink {
        #[arg(required_unless_present = "axioms")]
        file: Option<PathBuf>,
        #[arg(long, default_value = "a")]
        from: String,
        #[arg(long, default_value = "b")]
        to: String,
        #[arg(long, conflicts_with = "file")]
        axioms: bool,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Every seeded property suite.
    Axioms {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Fixed oracle values.
    Selftest,
}

/// A failed run: message and exit status.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn in_file<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Result of a verb: text output, structured output, and whether every check
/// passed.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

fn element_json(e: &DiagramElement) -> Value {
    json!({ "space": e.space().name(), "terms": e.len(), "element": serialize_element(e) })
}

fn ring_json(r: &RingPresentation) -> Value {
    json!({
        "generators": r.generators(),
        "relations": r.relations(),
        "hermite_basis": r.hermite_basis(),
        "rank": r.rank(),
    })
}

fn run(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Reduce { file, q } => {
            let e = in_file(&file, parse_element(&read(&file)?))?;
            let euler = e.euler_degree().ok_or_else(|| Failure("element is zero or not homogeneous".into()))?;
            let quotient = Quotient::build(e.space(), euler, q.options())?;
            let coords: Vec<String> = quotient.reduce(&e)?.iter().map(|c| c.to_string()).collect();
            let text = format!(
                "space {}\neuler {}\ndimension {}\ncoordinates {}\n",
                e.space(),
                euler,
                quotient.dimension(),
                coords.join(" ")
            );
            let json = json!({
                "space": e.space().name(),
                "euler": euler,
                "dimension": quotient.dimension(),
                "coordinates": coords,
                "normalized": serialize_element(&e),
            });
            Ok(Report::ok(text, json))
        }
        Command::Dim { space, euler, q } => {
            let space: Space = space.into();
            let opts = q.options();
            let quotient = Quotient::build(space, euler, opts)?;
            let mut text = format!(
                "{}\nspace {}\neuler {}\ngenerators {}\nrelations {}\nrank {}\n",
                quotient.dimension(),
                space,
                euler,
                quotient.generator_count(),
                quotient.relation_count(),
                quotient.rank()
            );
            if space == Space::Lambda {
                text.push_str(&format!("bead_window {}\n", opts.bead_window));
            }
            if let Some(m) = opts.max_vassiliev {
                text.push_str(&format!("max_degree {m}\n"));
            }
            let json = json!({
                "dimension": quotient.dimension(),
                "space": space.name(),
                "euler": euler,
                "generators": quotient.generator_count(),
                "relations": quotient.relation_count(),
                "rank": quotient.rank(),
                "bead_window": opts.bead_window,
                "max_degree": opts.max_vassiliev,
            });
            Ok(Report::ok(text, json))
        }
        Command::Hair { file, max_degree } => {
            let e = in_file(&file, parse_element(&read(&file)?))?;
            let h = hair_map(&e, max_degree)?;
            Ok(Report::ok(serialize_element(&h), element_json(&h)))
        }
        Command::Contract { file, r#break, audit } => {
            let text = read(&file)?;
            if r#break {
                let g = in_file(&file, parse_graph(&text))?;
                let s = break_graph(&g)?;
                let out = serialize_scheme(&s);
                return Ok(Report::ok(out.clone(), json!({ "scheme": out })));
            }
            let s = in_file(&file, parse_scheme(&text))?;
            let c = complete_contraction(&s)?;
            let mut report = Report::ok(serialize_element(&c), element_json(&c));
            if let Some(v) = audit {
                if v >= s.vortices().len() {
                    return Err(Failure(format!("no vortex {v}")));
                }
                let a = contraction_sign_audit(&s, v)?;
                report.text.push_str(&format!("# audit vortex {v}: {}\n", if a.passed() { "pass" } else { "FAIL" }));
                report.json["audit"] = json!({ "vortex": v, "negated": a.negated, "involutive": a.involutive });
                report.ok = a.passed();
            }
            Ok(report)
        }
        Command::Ring { file, kind, monomial } => {
            let g = in_file(&file, parse_graph(&read(&file)?))?;
            let r = match kind {
                RingArg::Flag => flag_ring(&g),
                RingArg::Edge => edge_ring(&g)?,
                RingArg::H1 => h1_ring(&g)?,
            };
            let mut text = r.to_string();
            let mut json = ring_json(&r);
            if let Some(m) = monomial {
                let exps = m
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Failure(format!("bad monomial `{m}`: {e}")))?;
                let nf = r.normal_form(&exps)?;
                let s: Vec<String> = nf.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("normal_form {}\n", s.join(" ")));
                json["normal_form"] = json!(nf);
            }
            Ok(Report::ok(text, json))
        }
        Command::Eqlink {
            file,
            from,
            to,
            axioms,
            seed,
            count,
        } => {
            if axioms {
                let r = run_axioms(seed, count);
                let json = json!({
                    "seed": seed,
                    "diagrams": count,
                    "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "failed": c.failed})).collect::<Vec<_>>(),
                    "all_passed": r.all_passed(),
                });
                return Ok(Report {
                    text: r.to_string(),
                    json,
                    ok: r.all_passed(),
                });
            }
            let file = file.expect("clap requires a file");
            let d = in_file(&file, parse_diagram(&read(&file)?))?;
            let v = eq_linking(&d, &from, &to)?;
            let lk = linking_number(&d, &from, &to)?;
            Ok(Report::ok(
                format!("{v}\n"),
                json!({ "from": from, "to": to, "value": v.to_string(), "linking_number": lk }),
            ))
        }
        Command::Axioms { seed, count } => Ok(suites::axioms(seed, count)),
        Command::Selftest => Ok(suites::selftest()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command) {
        Ok(r) => {
            match format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("json values serialize")),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
