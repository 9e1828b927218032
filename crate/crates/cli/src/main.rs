use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schurfin::coefficients::{
    decompose_schur_of_sum, decompose_schur_of_tensor, decompose_schur_pair, kronecker_coefficient,
    lr_coefficient, Decomposition,
};
use schurfin::complex::{
    apply_symmetrizer, extension_filtration, ChainComplex, ShortExactSequence,
};
use schurfin::dsl;
use schurfin::error::{Error, Limits};
use schurfin::group_algebra::{young_symmetrizer, GroupAlgebraElement};
use schurfin::motive::{blowup, FinitenessReport, FormalObject, Status};
use schurfin::partition::Partition;
use schurfin::super_linear::{schur_dimension, vanishes_by_rectangle, SuperVectorSpace};
use schurfin::symgroup::{character_value, CharacterTable, CycleType};

#[derive(Parser)]
#[command(
    name = "schurfin",
    version,
    about = "Schur functors, Young symmetrizers and Schur-finiteness checks"
)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest n for which a Young symmetrizer is built.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
    /// Largest explicit tensor-power dimension.
    #[arg(long, global = true, value_name = "DIM")]
    max_dim: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible character values of the symmetric group.
    Char {
        /// Degree of the symmetric group; alone, prints the character table.
        #[arg(long, value_name = "N")]
        n: Option<usize>,
        /// Irreducible, e.g. 2,1
        #[arg(long)]
        lambda: Option<Partition>,
        /// Cycle type of the class; all classes when omitted.
        #[arg(long, requires = "lambda")]
        rho: Option<Partition>,
    },
    /// Littlewood–Richardson and Kronecker coefficients.
    Coeff {
        #[command(subcommand)]
        kind: CoeffKind,
    },
    /// Multiplicity decompositions of Schur functors.
    Decompose {
        #[command(subcommand)]
        kind: DecomposeKind,
    },
    /// The Young symmetrizer c_λ in Q[Σn].
    Symmetrizer {
        #[arg(long)]
        lambda: Partition,
        /// Also verify c_λ² = c_λ.
        #[arg(long)]
        check_idempotent: bool,
    },
    /// Graded dimension of S_λ of a super vector space.
    SchurDim {
        /// Super dimension p|q.
        #[arg(long)]
        space: SuperVectorSpace,
        #[arg(long)]
        lambda: Partition,
    },
    /// Whether S_λ(p|q) = 0.
    Vanishes {
        #[arg(long)]
        space: SuperVectorSpace,
        #[arg(long)]
        lambda: Partition,
        #[arg(long, value_enum, default_value_t = Oracle::Both)]
        oracle: Oracle,
    },
    /// Formal motive calculus.
    Motive {
        #[command(subcommand)]
        cmd: MotiveCmd,
    },
    /// Chain complexes over Q or Q[x].
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Evaluate an expression.
    Eval { expr: String },
}

#[derive(Subcommand)]
enum CoeffKind {
    /// [λ : μ, ν]
    Lr {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
    /// [V_μ ⊗ V_ν : V_λ]
    Kron {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
}

#[derive(Subcommand)]
enum DecomposeKind {
    /// S_λ(X ⊕ Y) into S_μ(X) ⊗ S_ν(Y).
    Sum {
        #[arg(long)]
        lambda: Partition,
    },
    /// S_λ(X ⊗ Y) into S_μ(X) ⊗ S_ν(Y).
    Tensor {
        #[arg(long)]
        lambda: Partition,
    },
    /// S_μ(X) ⊗ S_ν(X) into S_λ(X).
    Pair {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Rank,
    Rectangle,
    Both,
}

#[derive(Subcommand)]
enum MotiveCmd {
    /// Evaluate an expression to a formal object.
    Eval { expr: String },
    /// Schur- and Kimura-finiteness report.
    Report { expr: String },
    /// M(X) ⊕ M(Y)(1) ⊕ … ⊕ M(Y)(r−1) for a blowup.
    Blowup {
        #[arg(long)]
        base: String,
        #[arg(long)]
        center: String,
        #[arg(long)]
        codim: usize,
        /// Print the finiteness report of the result.
        #[arg(long)]
        report: bool,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// S_λ applied to a complex, with its homology.
    Schur {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lambda: Partition,
    },
    /// Homology of a complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
    /// The filtration of X^{⊗n} from 0 → P → X → Q → 0.
    Filtration {
        /// Extension file with sub, total, quotient, inclusion, projection.
        #[arg(long, conflicts_with_all = ["sub", "quotient"])]
        input: Option<PathBuf>,
        /// Sub-complex P of the split extension P ⊕ Q.
        #[arg(long, requires = "quotient")]
        sub: Option<PathBuf>,
        #[arg(long, requires = "sub")]
        quotient: Option<PathBuf>,
        #[arg(short = 'n', long)]
        n: usize,
        /// Also report ranks of c_λ on each level and graded piece.
        #[arg(long)]
        lambda: Option<Partition>,
    },
}

/// What a command produced: text, JSON and whether the verdict is open.
struct Output {
    text: String,
    json: Value,
    inconclusive: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            inconclusive: false,
        }
    }
}

type CliResult = Result<Output, Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut limits = Limits::default();
    if let Some(n) = cli.max_n {
        limits.max_symmetrizer_n = n;
    }
    if let Some(d) = cli.max_dim {
        limits.max_tensor_dim = d;
    }
    match run(cli.command, &limits) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                );
            } else {
                println!("{}", out.text);
            }
            if out.inconclusive {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, limits: &Limits) -> CliResult {
    match command {
        Command::Char { n, lambda, rho } => character(n, lambda, rho, limits),
        Command::Coeff { kind } => coefficient(kind, limits),
        Command::Decompose { kind } => decompose(kind, limits),
        Command::Symmetrizer {
            lambda,
            check_idempotent,
        } => symmetrizer(&lambda, check_idempotent, limits),
        Command::SchurDim { space, lambda } => {
            let d = schur_dimension(&space, &lambda, limits)?;
            Ok(Output::new(
                format!("({}|{})", d.even, d.odd),
                json!({"space": space.to_string(), "partition": lambda, "even": d.even, "odd": d.odd}),
            ))
        }
        Command::Vanishes {
            space,
            lambda,
            oracle,
        } => vanishes(&space, &lambda, oracle, limits),
        Command::Motive { cmd } => motive(cmd, limits),
        Command::Complex { cmd } => complex(cmd, limits),
        Command::Eval { expr } => {
            let e = dsl::evaluate(&dsl::parse(&expr)?, limits)?;
            Ok(Output {
                text: e.to_string(),
                json: serde_json::to_value(&e).expect("serializable"),
                inconclusive: e.is_inconclusive(),
            })
        }
    }
}

fn check_weight(p: &Partition, limits: &Limits) -> Result<(), Error> {
    if p.weight() > limits.max_partition_weight {
        return Err(Error::SizeLimit {
            what: "partition weight",
            requested: p.weight(),
            limit: limits.max_partition_weight,
        });
    }
    Ok(())
}

fn character(
    n: Option<usize>,
    lambda: Option<Partition>,
    class: Option<Partition>,
    limits: &Limits,
) -> CliResult {
    if let (Some(n), Some(l)) = (n, &lambda) {
        if l.weight() != n {
            return Err(Error::Argument(format!("{l} is not a partition of {n}")));
        }
    }
    if let (Some(n), None) = (n, &lambda) {
        check_weight(&Partition::row(n), limits)?;
        let t = CharacterTable::new(n);
        let mut text = format!("classes: {}", join(t.classes.iter()));
        for (l, row) in t.irreps.iter().zip(&t.values) {
            text.push_str(&format!("\n{l}: {}", join(row.iter())));
        }
        return Ok(Output::new(
            text,
            serde_json::to_value(&t).expect("serializable"),
        ));
    }
    let lambda = lambda.ok_or_else(|| Error::Argument("give --n N or --lambda".into()))?;
    check_weight(&lambda, limits)?;
    let classes = match class {
        Some(c) => vec![c],
        None => CharacterTable::new(lambda.weight())
            .classes
            .into_iter()
            .map(|c| c.partition().clone())
            .collect(),
    };
    let mut values = Vec::new();
    for c in &classes {
        values.push(character_value(&lambda, &CycleType::new(c.clone()))?);
    }
    let text = if classes.len() == 1 {
        values[0].to_string()
    } else {
        classes
            .iter()
            .zip(&values)
            .map(|(c, v)| format!("{c}: {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let json = json!({
        "partition": lambda,
        "values": classes.iter().zip(&values).map(|(c, v)| json!({"class": c, "value": v})).collect::<Vec<_>>(),
    });
    Ok(Output::new(text, json))
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn coefficient(kind: CoeffKind, limits: &Limits) -> CliResult {
    let (name, lambda, mu, nu) = match kind {
        CoeffKind::Lr { lambda, mu, nu } => ("lr", lambda, mu, nu),
        CoeffKind::Kron { lambda, mu, nu } => ("kron", lambda, mu, nu),
    };
    check_weight(&lambda, limits)?;
    let v = if name == "lr" {
        lr_coefficient(&lambda, &mu, &nu)?
    } else {
        check_weight(&mu, limits)?;
        kronecker_coefficient(&lambda, &mu, &nu)?
    };
    Ok(Output::new(
        v.to_string(),
        json!({"kind": name, "lambda": lambda, "mu": mu, "nu": nu, "value": v}),
    ))
}

fn decompose(kind: DecomposeKind, limits: &Limits) -> CliResult {
    let d: Decomposition = match kind {
        DecomposeKind::Sum { lambda } => {
            check_weight(&lambda, limits)?;
            decompose_schur_of_sum(&lambda)
        }
        DecomposeKind::Tensor { lambda } => {
            check_weight(&lambda, limits)?;
            decompose_schur_of_tensor(&lambda)
        }
        DecomposeKind::Pair { mu, nu } => {
            check_weight(&Partition::row(mu.weight() + nu.weight()), limits)?;
            decompose_schur_pair(&mu, &nu)
        }
    };
    let text = d
        .terms
        .iter()
        .map(|(k, m)| format!("{k}: {m}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::new(
        text,
        serde_json::to_value(&d).expect("serializable"),
    ))
}

fn element_json(e: &GroupAlgebraElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(p, c)| json!({"permutation": p.to_string(), "coefficient": c.to_string()}))
            .collect(),
    )
}

fn symmetrizer(lambda: &Partition, check: bool, limits: &Limits) -> CliResult {
    let c = young_symmetrizer(lambda, limits)?;
    let mut text = c.to_string();
    let mut json = json!({"partition": lambda, "terms": element_json(&c)});
    if check {
        let idempotent = c.multiply(&c)? == c;
        text.push_str(&format!("\nidempotent: {idempotent}"));
        json["idempotent"] = Value::Bool(idempotent);
    }
    Ok(Output::new(text, json))
}

fn vanishes(
    space: &SuperVectorSpace,
    lambda: &Partition,
    oracle: Oracle,
    limits: &Limits,
) -> CliResult {
    let rank = match oracle {
        Oracle::Rectangle => None,
        _ => Some(schur_dimension(space, lambda, limits)?.is_zero()),
    };
    let rect = match oracle {
        Oracle::Rank => None,
        _ => Some(vanishes_by_rectangle(space, lambda)),
    };
    if let (Some(a), Some(b)) = (rank, rect) {
        if a != b {
            return Err(Error::Argument(format!(
                "oracles disagree on S{lambda}({space}): rank says {a}, rectangle says {b}"
            )));
        }
    }
    let v = rank.or(rect).expect("at least one oracle ran");
    Ok(Output::new(
        v.to_string(),
        json!({"space": space.to_string(), "partition": lambda, "vanishes": v, "rank_oracle": rank, "rectangle_oracle": rect}),
    ))
}

fn parse_object(text: &str, limits: &Limits) -> Result<FormalObject, Error> {
    dsl::object(&dsl::parse(text)?, limits)
}

fn report_output(obj: &FormalObject, r: &FinitenessReport) -> Output {
    let status = serde_json::to_value(r.status).expect("serializable");
    let mut text = format!("{obj}\nstatus: {}", status.as_str().unwrap_or_default());
    if let (Some(p), Some(q)) = (r.p, r.q) {
        text.push_str(&format!("\nkimura split: p = {p}, q = {q}"));
    }
    if r.witnesses.is_empty() {
        text.push_str(&format!(
            "\nno vanishing partition found up to weight {}",
            r.search_bound
        ));
    } else {
        text.push_str(&format!(
            "\nminimal witnesses: {}",
            join(r.witnesses.iter())
        ));
    }
    Output {
        text,
        json: serde_json::to_value(r).expect("serializable"),
        inconclusive: r.status == Status::Inconclusive,
    }
}

fn motive(cmd: MotiveCmd, limits: &Limits) -> CliResult {
    match cmd {
        MotiveCmd::Eval { expr } => {
            let e = dsl::evaluate(&dsl::parse(&expr)?, limits)?;
            Ok(Output {
                text: e.to_string(),
                json: serde_json::to_value(&e).expect("serializable"),
                inconclusive: e.is_inconclusive(),
            })
        }
        MotiveCmd::Report { expr } => {
            let obj = parse_object(&expr, limits)?;
            Ok(report_output(&obj, &obj.finiteness_report(limits)))
        }
        MotiveCmd::Blowup {
            base,
            center,
            codim,
            report,
        } => {
            let x = parse_object(&base, limits)?;
            let y = parse_object(&center, limits)?;
            let b = blowup(&x, &y, codim, limits)?;
            if report {
                return Ok(report_output(&b, &b.finiteness_report(limits)));
            }
            Ok(Output::new(
                b.to_string(),
                json!({"display": b.to_string(), "atoms": b}),
            ))
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_complex(path: &PathBuf, limits: &Limits) -> Result<ChainComplex, Error> {
    ChainComplex::from_json(&read(path)?, limits)
}

fn complex(cmd: ComplexCmd, limits: &Limits) -> CliResult {
    match cmd {
        ComplexCmd::Homology { input } => {
            let c = load_complex(&input, limits)?;
            let h = c.homology();
            Ok(Output::new(
                h.to_string(),
                serde_json::to_value(&h).expect("serializable"),
            ))
        }
        ComplexCmd::Schur { input, lambda } => {
            let c = load_complex(&input, limits)?;
            let s = apply_symmetrizer(&c, &lambda, limits)?;
            let h = s.homology();
            Ok(Output::new(
                format!("{s}\nhomology:\n{h}"),
                json!({"partition": lambda, "complex": s.to_value(), "homology": h}),
            ))
        }
        ComplexCmd::Filtration {
            input,
            sub,
            quotient,
            n,
            lambda,
        } => {
            let ses = match (input, sub, quotient) {
                (Some(path), _, _) => ShortExactSequence::from_json(&read(&path)?, limits)?,
                (None, Some(p), Some(q)) => ShortExactSequence::split(
                    &load_complex(&p, limits)?,
                    &load_complex(&q, limits)?,
                )?,
                _ => {
                    return Err(Error::Argument(
                        "give --input or both --sub and --quotient".into(),
                    ))
                }
            };
            let f = extension_filtration(&ses, n, limits)?;
            let levels = f.summary();
            let mut text = String::new();
            for l in &levels {
                text.push_str(&format!(
                    "F_{}: ranks {:?}, graded {:?}, T_{{{},{}}} {:?}\n",
                    l.i,
                    l.ranks,
                    l.graded_ranks,
                    n - l.i,
                    l.i,
                    l.expected_graded_ranks
                ));
            }
            let mut json = json!({"n": n, "levels": levels});
            if let Some(lambda) = lambda {
                if lambda.weight() != n {
                    return Err(Error::Argument(format!(
                        "{lambda} is not a partition of {n}"
                    )));
                }
                let ranks = f.symmetrizer_ranks(&young_symmetrizer(&lambda, limits)?)?;
                for (i, r) in ranks.iter().enumerate() {
                    text.push_str(&format!(
                        "c{lambda} on F_{i}: {:?}, on gr_{i}: {:?}\n",
                        r.level, r.graded
                    ));
                }
                json["symmetrizer"] = json!({"partition": lambda, "ranks": ranks});
            }
            Ok(Output::new(text.trim_end(), json))
        }
    }
}
