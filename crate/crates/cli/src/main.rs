use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use twder::derivation::{der_space_generators, dihedral_constraints, extend, inn_space, GeneratorMapJson};
use twder::{CocycleSpec, Extension, FieldCtx, GeneratorMap, Group, GroupSpec, Report, ReportOptions, Setup};

const EXIT_USAGE: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

/// Derivations and first Hochschild cohomology of twisted group rings.
#[derive(Parser, Debug)]
#[command(name = "twder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute dim Der, Inn, center and HH^1 for a configuration.
    Report(ReportArgs),
    /// Write the linear system whose kernel is the derivation space.
    ExportMatrix(ExportArgs),
    /// Decide whether a map on generators extends to a derivation.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// dihedral:N, abelian:m1,m2,... or @file.json
    #[arg(long)]
    group: String,
    /// P or P^M
    #[arg(long)]
    field: String,
    /// trivial, alpha1, alpha2, alpha3 or @file.json
    #[arg(long, default_value = "trivial")]
    cocycle: String,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Also write the report as JSON.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Include bases of Der, the center and HH^1.
    #[arg(long)]
    bases: bool,
    /// Cross-check against the brute-force solver and the closed form.
    #[arg(long)]
    oracle: bool,
    /// Largest group order the brute-force solver accepts.
    #[arg(long, value_name = "N")]
    oracle_bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Generators,
    ClosedForm,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, value_enum, default_value = "generators")]
    which: Which,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// @file.json holding {"f": [{element: coefficient}, ...]}, one entry per generator.
    #[arg(long)]
    map: String,
    /// Print the images of every group element on acceptance.
    #[arg(long)]
    images: bool,
}

fn read_file_arg(arg: &str) -> Result<Option<String>> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("cannot read {path}"))
            .map(Some),
        None => Ok(None),
    }
}

fn parse_group(arg: &str) -> Result<GroupSpec> {
    if let Some(text) = read_file_arg(arg)? {
        return serde_json::from_str(&text).context("malformed group file");
    }
    let (kind, rest) = arg
        .split_once(':')
        .ok_or_else(|| anyhow!("group must be dihedral:N, abelian:m1,m2,... or @file.json"))?;
    match kind {
        "dihedral" => Ok(GroupSpec::Dihedral {
            n: rest.trim().parse().with_context(|| format!("bad dihedral order {rest:?}"))?,
        }),
        "abelian" => {
            let orders = rest
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .with_context(|| format!("bad abelian orders {rest:?}"))?;
            Ok(GroupSpec::Abelian { orders })
        }
        other => bail!("unknown group kind {other:?}"),
    }
}

fn parse_field(arg: &str) -> Result<FieldCtx> {
    let (p, m) = match arg.split_once('^') {
        Some((p, m)) => (p, m),
        None => (arg, "1"),
    };
    let p: u64 = p.trim().parse().with_context(|| format!("bad characteristic {p:?}"))?;
    let m: u32 = m.trim().parse().with_context(|| format!("bad degree {m:?}"))?;
    Ok(FieldCtx::new(p, m, None)?)
}

fn parse_cocycle(arg: &str) -> Result<CocycleSpec> {
    if let Some(text) = read_file_arg(arg)? {
        return serde_json::from_str(&text).context("malformed cocycle file");
    }
    match arg {
        "trivial" => Ok(CocycleSpec::Trivial),
        "alpha1" => Ok(CocycleSpec::DihedralAlpha1),
        "alpha2" => Ok(CocycleSpec::DihedralAlpha2),
        "alpha3" => Ok(CocycleSpec::DihedralAlpha3),
        other => bail!("unknown cocycle {other:?}"),
    }
}

fn setup(args: &ConfigArgs) -> Result<Setup> {
    let group_spec = parse_group(&args.group)?;
    let group = Arc::new(Group::from_spec(&group_spec)?);
    let field = Arc::new(parse_field(&args.field)?);
    let cocycle = parse_cocycle(&args.cocycle)?;
    Ok(Setup::from_parts(group_spec, group, field, &cocycle)?)
}

fn report(args: &ReportArgs) -> Result<u8> {
    let setup = setup(&args.config)?;
    let opts = ReportOptions {
        bases: args.bases,
        oracle: args.oracle,
        oracle_bound: args.oracle_bound,
    };
    let report = Report::build(&setup, opts)?;
    print!("{}", report.to_text());
    if let Some(out) = &args.json {
        let text = serde_json::to_string_pretty(&report)?;
        fs::write(out, text + "\n").with_context(|| format!("cannot write {}", out.display()))?;
    }
    Ok(if report.consistent() { 0 } else { EXIT_DISAGREE })
}

fn export_matrix(args: &ExportArgs) -> Result<u8> {
    let setup = setup(&args.config)?;
    let ring = &setup.ring;
    let matrix = match args.which {
        Which::Generators => der_space_generators(ring).matrix,
        Which::ClosedForm => dihedral_constraints(ring)?,
    };
    let text = match args.format {
        Format::Csv => matrix.to_csv(),
        Format::Json => serde_json::to_string_pretty(&matrix.to_json())? + "\n",
    };
    write(&args.out, &text)?;
    println!(
        "wrote {}x{} matrix to {} (kernel dimension {})",
        matrix.rows(),
        matrix.cols(),
        args.out.display(),
        matrix.kernel_basis().len()
    );
    Ok(0)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Accepts either the field's own serialization or a plain integer.
fn normalize_coefficients(field: &FieldCtx, json: GeneratorMapJson) -> Result<GeneratorMapJson> {
    let f = json
        .f
        .into_iter()
        .map(|image| {
            image
                .into_iter()
                .map(|(name, c)| {
                    if field.parse(&c).is_ok() {
                        return Ok((name, c));
                    }
                    let n: i64 = c.trim().parse().map_err(|_| anyhow!("bad coefficient {c:?} for {name}"))?;
                    Ok((name, field.format(field.from_int(n))))
                })
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorMapJson { f })
}

fn check(args: &CheckArgs) -> Result<u8> {
    let setup = setup(&args.config)?;
    let ring = &setup.ring;
    let text = read_file_arg(&args.map)?.ok_or_else(|| anyhow!("--map expects @file.json"))?;
    let json: GeneratorMapJson = serde_json::from_str(&text).context("malformed map file")?;
    let json = normalize_coefficients(ring.field(), json)?;
    let map = GeneratorMap::from_json(ring, &json)?;
    let group = ring.group();
    for (g, image) in group.generators().iter().zip(map.images()) {
        println!("f({}) = {}", group.name(*g), ring.format(image));
    }
    match extend(ring, &map)? {
        Extension::Rejected { relator, residual } => {
            let word = group.relators()[relator]
                .iter()
                .map(|l| {
                    let name = group.name(group.generators()[l.gen]);
                    if l.inverse {
                        format!("{name}^-1")
                    } else {
                        name.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ");
            println!("rejected: relator {relator} ({word}) leaves residual {}", ring.format(&residual));
            Ok(EXIT_REJECTED)
        }
        Extension::Accepted(d) => {
            let inner = inn_space(ring)?.contains(ring, &d)?;
            println!("accepted");
            println!("inner: {inner}");
            if args.images {
                for g in 0..ring.dim() {
                    println!("  d({}) = {}", group.name(g), ring.format(d.image(g)));
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Report(a) => report(a),
        Command::ExportMatrix(a) => export_matrix(a),
        Command::Check(a) => check(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
