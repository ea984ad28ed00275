use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conc2::classes::{class_tree, enumerate_c2_frobenius, irreducible_c2};
use conc2::export::{
    node_json, render_table, semigroup_table, semigroups_jsonl, tree_dot, tree_jsonl, tree_table,
};
use conc2::oracle;
use conc2::trees::{
    bounded_tree_stats, enumerate_by_genus, tree_stats, walk_tree, TreeNode, TreeStats,
};
use conc2::wilf::{family_records, verify_family, Family};
use conc2::{EnumerationRequest, GeneratorList, NumericalSemigroup, Variant};

#[derive(Parser)]
#[command(
    name = "conc2",
    version,
    about = "Numerical semigroups with concentration 2: invariants, enumeration trees, Frobenius classes and Wilf checks"
)]
struct Cli {
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Cap on worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    /// Dump every semigroup of genus at most GMAX from the brute-force oracle.
    #[arg(long, value_name = "GMAX", hide = true)]
    oracle: Option<u32>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Jsonl,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of the semigroup generated by a list, e.g. `--gens 5,7,9`.
    Info {
        #[arg(long)]
        gens: GeneratorList,
    },
    /// List a family of semigroups with concentration at most 2.
    Enum(EnumArgs),
    /// Print one of the enumeration trees.
    Tree {
        #[arg(value_enum)]
        kind: TreeKind,
        #[arg(short = 'm', long = "multiplicity")]
        multiplicity: Option<u32>,
        /// Root of a class tree (an irreducible semigroup).
        #[arg(long)]
        gens: Option<GeneratorList>,
        #[arg(long)]
        max_genus: Option<u32>,
    },
    /// Check Wilf's inequality over a family.
    Wilf(WilfArgs),
    /// Number of concentration-2 semigroups of multiplicity m.
    Count(StatsArgs),
    /// Height of the multiplicity tree.
    Height(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TreeKind {
    Multiplicity,
    Elementary,
    Class,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(short = 'm', long = "multiplicity")]
    multiplicity: Option<u32>,
    /// Only this genus.
    #[arg(long)]
    genus: Option<u32>,
    /// Only elementary semigroups (F < 2m).
    #[arg(long)]
    elementary: bool,
    /// Concentration-2 semigroups with this Frobenius number, by class.
    #[arg(short = 'F', long = "frobenius", conflicts_with = "multiplicity")]
    frobenius: Option<u32>,
    #[arg(long)]
    max_genus: Option<u32>,
    /// Only the irreducible class roots (with `-F`).
    #[arg(long)]
    irreducible_only: bool,
}

#[derive(Args)]
struct WilfArgs {
    #[arg(short = 'm', long = "multiplicity")]
    multiplicity: Option<u32>,
    #[arg(long)]
    max_genus: Option<u32>,
    #[arg(short = 'F', long = "frobenius", conflicts_with = "multiplicity")]
    frobenius: Option<u32>,
    /// Restrict the multiplicity family to the elementary tree.
    #[arg(long)]
    elementary: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(short = 'm', long = "multiplicity", conflicts_with_all = ["from", "to"])]
    multiplicity: Option<u32>,
    /// First multiplicity of a range.
    #[arg(long, requires = "to")]
    from: Option<u32>,
    /// Last multiplicity of a range.
    #[arg(long, requires = "from")]
    to: Option<u32>,
    #[arg(long)]
    elementary: bool,
    /// Truncate the tree; makes even multiplicities countable.
    #[arg(long)]
    max_genus: Option<u32>,
}

enum Failure {
    Usage(String),
    Wilf(String),
}

impl From<conc2::Error> for Failure {
    fn from(e: conc2::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => run(&cli),
    };
    let (text, code) = match result {
        Ok(text) => (text, 0),
        Err(Failure::Wilf(text)) => (text, 1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(cli.output.as_ref(), &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn emit(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(gmax) = cli.oracle {
        let universe = oracle::all_semigroups_by_genus(gmax)?;
        return semigroup_list(universe.semigroups(), cli.format);
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Usage(
            "no command given; try `conc2 --help`".to_string(),
        ));
    };
    match command {
        Command::Info { gens } => info(gens, cli.format),
        Command::Enum(args) => enumerate(args, cli.format),
        Command::Tree {
            kind,
            multiplicity,
            gens,
            max_genus,
        } => tree(*kind, *multiplicity, gens.as_ref(), *max_genus, cli.format),
        Command::Wilf(args) => wilf(args, cli.format),
        Command::Count(args) => stats(args, cli.format, true),
        Command::Height(args) => stats(args, cli.format, false),
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = format!("{format:?}").to_lowercase();
    Failure::Usage(format!("`{command}` does not support --format {name}"))
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("output always serializes") + "\n"
}

fn info(gens: &GeneratorList, format: Format) -> Outcome {
    let s = NumericalSemigroup::from_generators(gens)?;
    match format {
        Format::Table => Ok(semigroup_table(&[s])),
        Format::Json | Format::Jsonl => Ok(to_json(&s)),
        Format::Dot => Err(unsupported(format, "info")),
    }
}

fn semigroup_list(list: &[NumericalSemigroup], format: Format) -> Outcome {
    match format {
        Format::Table => Ok(semigroup_table(list)),
        Format::Json => Ok(to_json(&list)),
        Format::Jsonl => Ok(semigroups_jsonl(list)),
        Format::Dot => Err(unsupported(format, "enum")),
    }
}

fn enumerate(args: &EnumArgs, format: Format) -> Outcome {
    if let Some(f) = args.frobenius {
        return enumerate_frobenius(f, args, format);
    }
    if args.irreducible_only {
        return Err(Failure::Usage(
            "--irreducible-only needs -F <frobenius>".to_string(),
        ));
    }
    let Some(m) = args.multiplicity else {
        return Err(Failure::Usage(
            "enum needs a family: -m <multiplicity> or -F <frobenius>".to_string(),
        ));
    };
    let list: Vec<NumericalSemigroup> = match (args.genus, args.elementary) {
        (Some(g), false) => enumerate_by_genus(m, g)?,
        (Some(g), true) => walk_tree(&EnumerationRequest::elementary_tree(m).with_max_genus(g))?
            .filter(|n| n.semigroup.genus() == g)
            .map(|n| n.semigroup)
            .collect(),
        (None, elementary) => {
            let mut request = if elementary {
                EnumerationRequest::elementary_tree(m)
            } else {
                EnumerationRequest::multiplicity_tree(m)
            };
            if let Some(b) = args.max_genus {
                request = request.with_max_genus(b);
            }
            walk_tree(&request)?.map(|n| n.semigroup).collect()
        }
    };
    semigroup_list(&list, format)
}

fn enumerate_frobenius(f: u32, args: &EnumArgs, format: Format) -> Outcome {
    let keep = |s: &NumericalSemigroup| {
        args.genus.is_none_or(|g| s.genus() == g)
            && args.max_genus.is_none_or(|g| s.genus() <= g)
            && (!args.elementary || s.is_elementary())
    };
    if args.irreducible_only {
        let roots: Vec<_> = irreducible_c2(f)?.into_iter().filter(|s| keep(s)).collect();
        return semigroup_list(&roots, format);
    }
    let classes = enumerate_c2_frobenius(f)?;
    if format == Format::Json {
        let array: Vec<Value> = classes
            .iter()
            .map(|c| {
                let members: Vec<&NumericalSemigroup> =
                    c.members.iter().filter(|s| keep(s)).collect();
                json!({ "root": c.root, "members": members })
            })
            .collect();
        return Ok(to_json(&array));
    }
    let flat: Vec<NumericalSemigroup> = classes
        .into_iter()
        .flat_map(|c| c.members)
        .filter(|s| keep(s))
        .collect();
    semigroup_list(&flat, format)
}

fn tree(
    kind: TreeKind,
    multiplicity: Option<u32>,
    gens: Option<&GeneratorList>,
    max_genus: Option<u32>,
    format: Format,
) -> Outcome {
    let (name, nodes): (String, Vec<TreeNode>) = match kind {
        TreeKind::Class => {
            let gens = gens.ok_or_else(|| {
                Failure::Usage("`tree class` needs --gens of an irreducible root".to_string())
            })?;
            let root = NumericalSemigroup::from_generators(gens)?;
            let mut nodes = class_tree(&root)?;
            if let Some(b) = max_genus {
                nodes.retain(|n| n.semigroup.genus() <= b);
            }
            (format!("class {root}"), nodes)
        }
        TreeKind::Multiplicity | TreeKind::Elementary => {
            let m = multiplicity
                .ok_or_else(|| Failure::Usage("this tree needs -m <multiplicity>".to_string()))?;
            let mut request = if kind == TreeKind::Elementary {
                EnumerationRequest::elementary_tree(m)
            } else {
                EnumerationRequest::multiplicity_tree(m)
            };
            if let Some(b) = max_genus {
                request = request.with_max_genus(b);
            }
            let label = if kind == TreeKind::Elementary {
                "elementary"
            } else {
                "multiplicity"
            };
            (format!("{label} m={m}"), walk_tree(&request)?.collect())
        }
    };
    Ok(match format {
        Format::Table => tree_table(&nodes),
        Format::Json => {
            let values: Vec<Value> = nodes
                .iter()
                .map(|n| serde_json::from_str(&node_json(n)).expect("valid JSON"))
                .collect();
            to_json(&values)
        }
        Format::Jsonl => tree_jsonl(&nodes),
        Format::Dot => tree_dot(&name, &nodes),
    })
}

fn wilf(args: &WilfArgs, format: Format) -> Outcome {
    let family = match (args.frobenius, args.multiplicity) {
        (Some(f), _) => Family::Frobenius(f),
        (None, Some(m)) => {
            let mut request = if args.elementary {
                EnumerationRequest::elementary_tree(m)
            } else {
                EnumerationRequest::multiplicity_tree(m)
            };
            if let Some(b) = args.max_genus {
                request = request.with_max_genus(b);
            }
            Family::Tree(request)
        }
        (None, None) => {
            return Err(Failure::Usage(
                "wilf needs a family: -m <multiplicity> or -F <frobenius>".to_string(),
            ))
        }
    };
    let report = verify_family(&family)?;
    let text = match format {
        Format::Table => {
            let mut out = format!("{report}\n");
            for s in &report.violations {
                out += &format!("violation: {s:?}\n");
            }
            for s in &report.bound_failures {
                out += &format!("bound failure: {s:?}\n");
            }
            for s in &report.injection_failures {
                out += &format!("injection failure: {s:?}\n");
            }
            out
        }
        Format::Json => to_json(&report),
        Format::Jsonl => family_records(&family)?.iter().map(to_json).collect(),
        Format::Dot => return Err(unsupported(format, "wilf")),
    };
    if report.is_clean() {
        Ok(text)
    } else {
        Err(Failure::Wilf(text))
    }
}

fn stats(args: &StatsArgs, format: Format, count: bool) -> Outcome {
    let variant = if args.elementary {
        Variant::Elementary
    } else {
        Variant::Full
    };
    let one = |m: u32| -> conc2::Result<TreeStats> {
        match args.max_genus {
            Some(b) => bounded_tree_stats(m, variant, b),
            None => tree_stats(m, variant),
        }
    };
    let value = |s: TreeStats| {
        if count {
            s.nodes.saturating_sub(1)
        } else {
            u64::from(s.height)
        }
    };
    let column = if count { "count" } else { "height" };

    if let Some(m) = args.multiplicity {
        let v = value(one(m)?);
        return match format {
            Format::Table => Ok(format!("{v}\n")),
            Format::Json | Format::Jsonl => Ok(to_json(&json!({ "m": m, column: v }))),
            Format::Dot => Err(unsupported(format, column)),
        };
    }
    let (Some(from), Some(to)) = (args.from, args.to) else {
        return Err(Failure::Usage(format!(
            "{column} needs -m <multiplicity> or --from <a> --to <b>"
        )));
    };
    // unbounded even multiplicities have infinite trees and are reported as such
    let rows: Vec<(u32, Option<u64>)> = (from..=to)
        .map(|m| match one(m) {
            Ok(s) => Ok((m, Some(value(s)))),
            Err(conc2::Error::EvenMultiplicityInfinite(_)) => Ok((m, None)),
            Err(e) => Err(e),
        })
        .collect::<conc2::Result<_>>()?;
    match format {
        Format::Table => {
            let cells: Vec<[String; 2]> = rows
                .iter()
                .map(|(m, v)| {
                    [
                        m.to_string(),
                        v.map_or("infinite".to_string(), |v| v.to_string()),
                    ]
                })
                .collect();
            Ok(render_table(&["m".to_string(), column.to_string()], &cells))
        }
        Format::Json => Ok(to_json(
            &rows
                .iter()
                .map(|(m, v)| json!({ "m": m, column: v }))
                .collect::<Vec<_>>(),
        )),
        Format::Jsonl => Ok(rows
            .iter()
            .map(|(m, v)| to_json(&json!({ "m": m, column: v })))
            .collect()),
        Format::Dot => Err(unsupported(format, column)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from([
            "conc2",
            "tree",
            "class",
            "--gens",
            "5,6,7,8",
            "--format",
            "dot",
            "--threads",
            "2",
        ])
        .unwrap();
        assert_eq!(cli.format, Format::Dot);
        assert_eq!(cli.threads, Some(2));
        let Some(Command::Tree { kind, gens, .. }) = cli.command else {
            panic!("expected tree");
        };
        assert_eq!(kind, TreeKind::Class);
        assert_eq!(gens.unwrap().as_slice(), &[5, 6, 7, 8]);
    }

    #[test]
    fn irreducible_only_requires_frobenius() {
        let Some(Command::Enum(args)) =
            Cli::try_parse_from(["conc2", "enum", "-m", "5", "--irreducible-only"])
                .unwrap()
                .command
        else {
            panic!("expected enum");
        };
        assert!(matches!(
            enumerate(&args, Format::Table),
            Err(Failure::Usage(_))
        ));
        assert!(
            Cli::try_parse_from(["conc2", "count", "-m", "5", "--from", "3", "--to", "5"]).is_err()
        );
    }

    #[test]
    fn range_marks_even_multiplicities() {
        let args = StatsArgs {
            multiplicity: None,
            from: Some(2),
            to: Some(3),
            elementary: false,
            max_genus: None,
        };
        let Ok(text) = stats(&args, Format::Jsonl, false) else {
            panic!("stats failed");
        };
        assert_eq!(text, "{\"m\":2,\"height\":null}\n{\"m\":3,\"height\":2}\n");
    }
}
