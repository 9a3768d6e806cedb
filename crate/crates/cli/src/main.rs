use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fibtree::fib::{sweep_identity, FibSequence, Identity};
use fibtree::graph::{expand, path_tree, ExpandedTree, VertexKind};
use fibtree::mis::{count_mis, side_counts, verify_sanders_sweep, MisCount, MisEnumerator, DEFAULT_ENUMERATION_CAP};
use fibtree::symbolic::{expand_eq3, expand_eq4, matches_printed, solve_meta_system, GLinearForm, EQ3_PRINTED, EQ4_PRINTED};
use fibtree::xk::{check_meta_fib, classify_seeds, xk_table, XkTower};
use fibtree::{fib_int, IdentityReport, Rational};

type CmdResult = Result<Output, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "fibtree", version, about = "Maximal independent sets in expanded trees and Fibonacci identities")]
struct Cli {
    /// Output format on stdout
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,

    /// Largest vertex count the brute-force enumerator accepts (at most 30)
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enum_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Build the expanded tree of a path
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Count or list maximal independent sets
    #[command(subcommand)]
    Mis(MisCmd),
    /// Run verification sweeps
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Iterated-identity tower
    #[command(subcommand)]
    Xk(XkCmd),
    /// Symbolic expansions and the seed system
    #[command(subcommand)]
    Symbolic(SymbolicCmd),
}

#[derive(Subcommand)]
enum TreeCmd {
    Build {
        #[arg(long)]
        n: usize,
        /// Write Graphviz DOT to this file
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the JSON graph to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MisCmd {
    /// Count by dynamic programming, cross-checked by enumeration
    Count {
        #[arg(long)]
        n: usize,
        /// Skip the enumeration cross-check (lifts the size cap)
        #[arg(long)]
        dp_only: bool,
    },
    /// List every maximal independent set
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Side counts l, r and lambda for a central vertex
    Lambda {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Core,
    Leaf,
}

impl From<KindArg> for VertexKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Core => VertexKind::Core,
            KindArg::Leaf => VertexKind::Leaf,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Total count, lambda factorization and closed forms for 3 <= n <= n-max
    Sanders {
        #[arg(long)]
        n_max: usize,
    },
    /// Sweep a Fibonacci identity over 1 <= i <= n <= n-max
    Identity {
        #[arg(long)]
        which: String,
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long, allow_hyphen_values = true)]
        alpha2: Option<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        beta2: Option<Rational>,
        #[arg(long)]
        n_max: i64,
    },
}

#[derive(Args)]
struct Seeds {
    /// G_0, as an integer, fraction or terminating decimal
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    alpha: Rational,
    /// G_1
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    beta: Rational,
}

impl Seeds {
    fn tower(&self) -> XkTower {
        XkTower::from_seeds(self.alpha.clone(), self.beta.clone())
    }
}

#[derive(Subcommand)]
enum XkCmd {
    Value {
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Rows k = -1..=k-max, columns n = 1..=n-max
    Table {
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long)]
        k_max: i64,
        #[arg(long)]
        n_max: i64,
        /// Also write the table as TSV to this file
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
    /// Check X^(k)_n = X^(k-1)_n + X^(k-2)_n for 2 <= k <= k-max
    Meta {
        #[command(flatten)]
        seeds: Seeds,
        #[arg(long)]
        k_max: i64,
        #[arg(long)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum SymbolicCmd {
    Eq3,
    Eq4,
    SolveMeta,
}

struct Output {
    pass: bool,
    json: Value,
    human: String,
    tsv: String,
}

impl Output {
    fn report(report: &IdentityReport) -> Output {
        let ce = report.counterexample.as_ref().map(|c| c.to_string()).unwrap_or_default();
        Output {
            pass: report.pass(),
            json: serde_json::to_value(report).expect("report serializes"),
            human: report.to_string(),
            tsv: format!(
                "identity\tpass\tcases\tcounterexample\n{}\t{}\t{}\t{ce}",
                report.identity,
                report.pass(),
                report.cases
            ),
        }
    }
}

fn corona(n: usize) -> Result<ExpandedTree, Box<dyn Error>> {
    Ok(expand(&path_tree(n)?))
}

fn enumeration_guard(n: usize, cap: usize) -> Result<(), Box<dyn Error>> {
    if 2 * n > cap {
        return Err(format!(
            "n={n} gives {} vertices, above the enumeration cap {cap}; use --dp-only or raise --enum-cap",
            2 * n
        )
        .into());
    }
    Ok(())
}

fn tree_build(n: usize, dot: Option<&PathBuf>, json_path: Option<&PathBuf>) -> CmdResult {
    let e = corona(n)?;
    if let Some(p) = dot {
        fs::write(p, e.to_dot()).map_err(|err| format!("cannot write {}: {err}", p.display()))?;
    }
    if let Some(p) = json_path {
        fs::write(p, e.to_json()).map_err(|err| format!("cannot write {}: {err}", p.display()))?;
    }
    let g = e.graph();
    let tsv = g.edges().map(|(a, b)| format!("{}\t{}", a.0, b.0)).collect::<Vec<_>>().join("\n");
    Ok(Output {
        pass: true,
        json: serde_json::to_value(e.to_json_value())?,
        human: format!(
            "expanded path tree: core size {n}, {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        ),
        tsv: format!("u\tv\n{tsv}"),
    })
}

fn mis_count(n: usize, dp_only: bool, cap: usize) -> CmdResult {
    let enumerator = MisEnumerator::with_cap(cap)?;
    if !dp_only {
        enumeration_guard(n, cap)?;
    }
    let e = corona(n)?;
    let dp = count_mis(e.graph());
    let closed = fib_int(n as i64 + 2);
    let enumerated = if dp_only {
        None
    } else {
        Some(enumerator.enumerate(e.graph())?.len() as u64)
    };
    let pass = dp == closed && enumerated.map_or(true, |c| dp == MisCount::from(c));
    let enum_text = enumerated.map_or("skipped".to_string(), |c| c.to_string());
    Ok(Output {
        pass,
        json: json!({
            "n": n,
            "count": dp.to_string(),
            "fibonacci": closed.to_string(),
            "enumerated": enumerated,
            "pass": pass,
        }),
        human: format!(
            "{} n={n}: dp={dp} F(n+2)={closed} enumeration={enum_text}",
            if pass { "PASS" } else { "FAIL" }
        ),
        tsv: format!("n\tcount\tfibonacci\tenumerated\n{n}\t{dp}\t{closed}\t{enum_text}"),
    })
}

fn mis_enumerate(n: usize, cap: usize) -> CmdResult {
    let enumerator = MisEnumerator::with_cap(cap)?;
    enumeration_guard(n, cap)?;
    let e = corona(n)?;
    let family = enumerator.enumerate(e.graph())?;
    let dp = count_mis(e.graph());
    let pass = dp == MisCount::from(family.len() as u64);
    let sets: Vec<Vec<usize>> = family.sets.iter().map(|s| s.iter().map(|v| v.0).collect()).collect();
    let line = |s: &Vec<usize>, sep: &str| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep);
    let mut human = format!("{} maximal independent sets (dp {dp})", sets.len());
    for s in &sets {
        human.push_str(&format!("\n{{{}}}", line(s, ", ")));
    }
    Ok(Output {
        pass,
        json: json!({ "n": n, "count": sets.len(), "dp_count": dp.to_string(), "sets": sets }),
        human,
        tsv: sets.iter().map(|s| line(s, "\t")).collect::<Vec<_>>().join("\n"),
    })
}

fn mis_lambda(n: usize, label: usize, kind: KindArg) -> CmdResult {
    let e = corona(n)?;
    let vertex = e.central_vertex(label, kind.into())?;
    let sc = side_counts(&e, label, kind.into())?;
    let product = &sc.l * &sc.r;
    let pass = product == sc.lambda;
    let kind_name = match kind {
        KindArg::Core => "core",
        KindArg::Leaf => "leaf",
    };
    Ok(Output {
        pass,
        json: json!({
            "n": n,
            "i": label,
            "kind": kind_name,
            "vertex": vertex.0,
            "l": sc.l.to_string(),
            "r": sc.r.to_string(),
            "lambda": sc.lambda.to_string(),
            "pass": pass,
        }),
        human: format!(
            "{} n={n} i={label} {kind_name} (vertex {}): l={} r={} lambda={}",
            if pass { "PASS" } else { "FAIL" },
            vertex.0,
            sc.l,
            sc.r,
            sc.lambda
        ),
        tsv: format!("n\ti\tkind\tl\tr\tlambda\n{n}\t{label}\t{kind_name}\t{}\t{}\t{}", sc.l, sc.r, sc.lambda),
    })
}

fn verify_identity(
    which: &str,
    seeds: &Seeds,
    alpha2: Option<&Rational>,
    beta2: Option<&Rational>,
    n_max: i64,
) -> CmdResult {
    let which: Identity = which.parse()?;
    let seq = FibSequence::new(seeds.alpha.clone(), seeds.beta.clone());
    let second = match (which, alpha2, beta2) {
        (Identity::TwoSequence, Some(a), Some(b)) => Some(FibSequence::new(a.clone(), b.clone())),
        (Identity::TwoSequence, _, _) => return Err("two-seq needs --alpha2 and --beta2".into()),
        _ => None,
    };
    Ok(Output::report(&sweep_identity(which, &seq, second.as_ref(), n_max)?))
}

fn xk_value(seeds: &Seeds, k: i64, n: i64) -> CmdResult {
    let v = seeds.tower().value(k, n)?;
    Ok(Output {
        pass: true,
        json: json!({ "alpha": seeds.alpha, "beta": seeds.beta, "k": k, "n": n, "value": v }),
        human: format!("X^({k})_{n} = {v}"),
        tsv: format!("k\tn\tvalue\n{k}\t{n}\t{v}"),
    })
}

fn xk_table_cmd(seeds: &Seeds, k_max: i64, n_max: i64, tsv_path: Option<&PathBuf>) -> CmdResult {
    if n_max < 1 {
        return Err(format!("--n-max must be at least 1 (got {n_max})").into());
    }
    let rows = xk_table(&mut seeds.tower(), k_max, n_max)?;
    let cells: Vec<Vec<String>> = rows.iter().map(|(_, vals)| vals.iter().map(|v| v.to_string()).collect()).collect();

    let mut tsv = String::from("k");
    for n in 1..=n_max {
        tsv.push_str(&format!("\tn={n}"));
    }
    for ((k, _), row) in rows.iter().zip(&cells) {
        tsv.push_str(&format!("\n{k}\t{}", row.join("\t")));
    }
    if let Some(p) = tsv_path {
        fs::write(p, format!("{tsv}\n")).map_err(|err| format!("cannot write {}: {err}", p.display()))?;
    }

    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(4);
    let mut human = format!("{:>4}", "k\\n");
    for n in 1..=n_max {
        human.push_str(&format!(" {n:>width$}"));
    }
    for ((k, _), row) in rows.iter().zip(&cells) {
        human.push_str(&format!("\n{k:>4}"));
        for c in row {
            human.push_str(&format!(" {c:>width$}"));
        }
    }

    let json_rows: Vec<Value> = rows
        .iter()
        .zip(&cells)
        .map(|((k, _), row)| json!({ "k": k, "values": row }))
        .collect();
    Ok(Output {
        pass: true,
        json: json!({ "alpha": seeds.alpha, "beta": seeds.beta, "n_max": n_max, "rows": json_rows }),
        human,
        tsv,
    })
}

fn xk_meta(seeds: &Seeds, k_max: i64, n: i64) -> CmdResult {
    let report = check_meta_fib(&mut seeds.tower(), k_max, n)?
        .param("solution_seed", classify_seeds(&seeds.alpha, &seeds.beta));
    Ok(Output::report(&report))
}

fn symbolic_eq(name: &str, form: GLinearForm, printed: &[&str]) -> Output {
    let pass = matches_printed(&form, printed);
    let coeffs: Vec<String> = form.coeffs().iter().map(|c| c.to_string()).collect();
    let term = |j: usize| if j == 0 { "G[n]".to_string() } else { format!("G[n-{j}]") };
    let mut human = format!("{} {name}", if pass { "PASS" } else { "FAIL" });
    let mut tsv = String::from("term\tcoefficient\texpected");
    for (j, c) in coeffs.iter().enumerate() {
        let expected = printed.get(j).copied().unwrap_or("0");
        human.push_str(&format!("\n  {}: {c}   (expected {expected})", term(j)));
        tsv.push_str(&format!("\n{}\t{c}\t{expected}", term(j)));
    }
    Output {
        pass,
        json: json!({ "identity": name, "coefficients": coeffs, "expected": printed, "pass": pass }),
        human,
        tsv,
    }
}

fn symbolic_solve() -> CmdResult {
    let sols = solve_meta_system()?;
    let expected: Vec<(Rational, Rational)> = [(-1, 0), (0, 0), (1, 1)]
        .into_iter()
        .map(|(a, b)| (Rational::from(a), Rational::from(b)))
        .collect();
    let pass = sols.iter().cloned().eq(expected);
    let pairs: Vec<String> = sols.iter().map(|(a, b)| format!("({a}, {b})")).collect();
    Ok(Output {
        pass,
        json: json!({
            "solutions": sols.iter().map(|(a, b)| json!({ "alpha": a, "beta": b })).collect::<Vec<_>>(),
            "pass": pass,
        }),
        human: format!("seed solutions (alpha, beta): {}", pairs.join(", ")),
        tsv: std::iter::once("alpha\tbeta".to_string())
            .chain(sols.iter().map(|(a, b)| format!("{a}\t{b}")))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn run(cli: &Cli) -> CmdResult {
    let cap = cli.enum_cap;
    match &cli.command {
        Command::Tree(TreeCmd::Build { n, dot, json }) => tree_build(*n, dot.as_ref(), json.as_ref()),
        Command::Mis(MisCmd::Count { n, dp_only }) => mis_count(*n, *dp_only, cap),
        Command::Mis(MisCmd::Enumerate { n }) => mis_enumerate(*n, cap),
        Command::Mis(MisCmd::Lambda { n, i, kind }) => mis_lambda(*n, *i, *kind),
        Command::Verify(VerifyCmd::Sanders { n_max }) => Ok(Output::report(&verify_sanders_sweep(*n_max)?)),
        Command::Verify(VerifyCmd::Identity { which, seeds, alpha2, beta2, n_max }) => {
            verify_identity(which, seeds, alpha2.as_ref(), beta2.as_ref(), *n_max)
        }
        Command::Xk(XkCmd::Value { seeds, k, n }) => xk_value(seeds, *k, *n),
        Command::Xk(XkCmd::Table { seeds, k_max, n_max, tsv }) => xk_table_cmd(seeds, *k_max, *n_max, tsv.as_ref()),
        Command::Xk(XkCmd::Meta { seeds, k_max, n }) => xk_meta(seeds, *k_max, *n),
        Command::Symbolic(SymbolicCmd::Eq3) => Ok(symbolic_eq("eq3", expand_eq3(), &EQ3_PRINTED)),
        Command::Symbolic(SymbolicCmd::Eq4) => Ok(symbolic_eq("eq4", expand_eq4(), &EQ4_PRINTED)),
        Command::Symbolic(SymbolicCmd::SolveMeta) => symbolic_solve(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Human => println!("{}", out.human),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json value")),
                Format::Tsv => println!("{}", out.tsv),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
