//! `rootblocks` command-line front end. Exit status: 0 on success, 1 when a
//! verification suite reports a failure, 2 on bad input or any other error.

mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rootblocks::invariants::audit_stated_lengths;
use rootblocks::quiver::{block_quiver, parse_generators, parse_group};
use rootblocks::rootsys::is_good_ell;
use rootblocks::strata::{
    build_poset, stream_table, word_label, PropertyResult, TableRecord, TABLE_CAP,
};
use rootblocks::{
    borel_invariants, cayley_graph, stratum_invariants, suites, to_dot, Error, StratumPair,
    WeylGroup,
};

#[derive(Parser)]
#[command(
    name = "rootblocks",
    version,
    about = "Block and simple-module data for reduced quantum algebras at a root of unity"
)]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one stratum of the reduced function algebra.
    Info(InfoArgs),
    /// Invariants of one fiber of the reduced Borel algebra.
    Borel(BorelArgs),
    /// Every stratum of a type, one row per pair (w1, w2).
    Table(TableArgs),
    /// The degeneration poset of strata.
    Poset(PosetArgs),
    /// A Cayley quiver on an abelian vertex group.
    Quiver(QuiverArgs),
    /// Run the cross-checking suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracle,
    Skew,
    Lattice,
    Sweep,
    Sl2,
    All,
}

#[derive(Args)]
struct InfoArgs {
    /// Cartan type such as A2, B3, E6.
    #[arg(value_name = "TYPE")]
    cartan: String,
    #[arg(long)]
    ell: u64,
    /// Word such as `1,2,1`, `w0`, `w0*1` or the empty string.
    #[arg(long, allow_hyphen_values = true)]
    w1: String,
    #[arg(long, allow_hyphen_values = true)]
    w2: String,
    /// Lengths claimed for (w1, w2), compared with the recomputed ones.
    #[arg(long, value_name = "L1,L2")]
    stated_lengths: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BorelArgs {
    #[arg(value_name = "TYPE")]
    cartan: String,
    #[arg(long)]
    ell: u64,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_name = "TYPE")]
    cartan: String,
    #[arg(long)]
    ell: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Largest Weyl group order accepted.
    #[arg(long, env = "ROOTBLOCKS_CAP", default_value_t = TABLE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(value_name = "TYPE")]
    cartan: String,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    #[arg(long, env = "ROOTBLOCKS_CAP", default_value_t = TABLE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct QuiverArgs {
    /// Abstract vertex group such as `Z5^2`.
    #[arg(long, conflicts_with_all = ["cartan", "w1", "w2"])]
    group: Option<String>,
    /// Generators with multiplicities, such as `1,0:1;0,1:2`.
    #[arg(long)]
    gens: Option<String>,
    /// Cartan type, for the block quiver of a stratum.
    #[arg(long = "type", value_name = "TYPE", requires_all = ["ell", "w1", "w2"])]
    cartan: Option<String>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    w1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w2: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long = "type", value_name = "TYPE", default_value = "A2")]
    cartan: String,
    /// Defaults to the smallest good prime the suite can use.
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, default_value_t = 20240607)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, env = "ROOTBLOCKS_CAP", default_value_t = TABLE_CAP)]
    cap: usize,
}

enum Failure {
    Usage(String),
    Engine(Error),
    Io(io::Error),
    /// Verification ran to completion and some property failed.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = Result<(), Failure>;

fn require_format(format: Format, allowed: &[Format], command: &str) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| {
                f.to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
                    .to_string()
            })
            .collect();
        Err(Failure::Usage(format!(
            "`{command}` supports --format {}",
            names.join("|")
        )))
    }
}

fn json_line(out: &mut dyn Write, value: &serde_json::Value) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_stated(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("--stated-lengths expects `L1,L2`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn info(a: &InfoArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Text, Format::Json], "info")?;
    let group = WeylGroup::parse(&a.cartan)?;
    let w1 = group.parse_element(&a.w1)?;
    let w2 = group.parse_element(&a.w2)?;
    let pair = StratumPair::new(&group, w1, w2, a.ell)?;
    let inv = stratum_invariants(&group, &pair);
    let audit = a
        .stated_lengths
        .as_deref()
        .map(parse_stated)
        .transpose()?
        .map(|s| audit_stated_lengths(&group, &pair, s));
    let type_name = group.cartan().cartan_type.to_string();
    let twist_word = word_label(&group.reduced_word(&pair.twist));
    let twist_order = group.order(&pair.twist);
    match a.format {
        Format::Json => json_line(
            out,
            &json!({
                "type": type_name,
                "twist_word": twist_word,
                "twist_order": twist_order,
                "alt_twist_word": word_label(&group.reduced_word(&pair.alt_twist(&group))),
                "invariants": inv,
                "length_audit": audit,
            }),
        ),
        _ => {
            let ctx = render::InfoContext {
                type_name: &type_name,
                twist_word,
                twist_order,
                audit,
            };
            out.write_all(render::info(&inv, &ctx).as_bytes())?;
            Ok(())
        }
    }
}

fn borel(a: &BorelArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Text, Format::Json], "borel")?;
    let group = WeylGroup::parse(&a.cartan)?;
    let w = group.parse_element(&a.w)?;
    let b = borel_invariants(&group, &w, a.ell)?;
    let type_name = group.cartan().cartan_type.to_string();
    match a.format {
        Format::Json => json_line(out, &json!({ "type": type_name, "invariants": b })),
        _ => {
            out.write_all(render::borel(&type_name, &b).as_bytes())?;
            Ok(())
        }
    }
}

fn table(a: &TableArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Csv, Format::Json], "table")?;
    let group = WeylGroup::parse(&a.cartan)?;
    let type_name = group.cartan().cartan_type.to_string();
    // the sink cannot return io errors through the engine's error type, so the first one is kept here
    let mut io_error: Option<Failure> = None;
    match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            stream_table(&group, a.ell, a.cap, |row| {
                if io_error.is_none() {
                    if let Err(e) = w.serialize(TableRecord::new(&type_name, &row)) {
                        io_error = Some(e.into());
                    }
                }
                Ok(())
            })?;
            w.flush()?;
        }
        _ => {
            let mut first = true;
            out.write_all(b"[")?;
            stream_table(&group, a.ell, a.cap, |row| {
                if io_error.is_none() {
                    let sep: &[u8] = if first { b"\n" } else { b",\n" };
                    first = false;
                    let written = out.write_all(sep).map_err(Failure::from).and_then(|()| {
                        serde_json::to_writer(&mut *out, &TableRecord::new(&type_name, &row))
                            .map_err(Failure::from)
                    });
                    io_error = written.err();
                }
                Ok(())
            })?;
            out.write_all(b"\n]\n")?;
        }
    }
    io_error.map_or(Ok(()), Err)
}

fn poset(a: &PosetArgs, out: &mut dyn Write) -> Outcome {
    require_format(
        a.format,
        &[Format::Dot, Format::Json, Format::Text],
        "poset",
    )?;
    let group = WeylGroup::parse(&a.cartan)?;
    let p = build_poset(&group, a.cap)?;
    match a.format {
        Format::Dot => out.write_all(p.to_dot(&group).as_bytes())?,
        Format::Json => {
            let nodes: Vec<_> = (0..p.node_count())
                .map(|i| {
                    let (u, v) = p.node(i);
                    json!({
                        "w1": word_label(&group.reduced_word(u)),
                        "w2": word_label(&group.reduced_word(v)),
                        "rank": p.rank(i),
                    })
                })
                .collect();
            json_line(
                out,
                &json!({
                    "type": group.cartan().cartan_type.to_string(),
                    "nodes": nodes,
                    "covers": p.covers,
                }),
            )?;
        }
        _ => out.write_all(render::poset(&group, &p).as_bytes())?,
    }
    Ok(())
}

fn quiver(a: &QuiverArgs, out: &mut dyn Write) -> Outcome {
    require_format(
        a.format,
        &[Format::Dot, Format::Json, Format::Text],
        "quiver",
    )?;
    let gens = a.gens.as_deref().map(parse_generators).transpose()?;
    if let Some(g) = &a.group {
        let group = parse_group(g)?;
        let gens = gens.ok_or_else(|| Failure::Usage("--group needs --gens".into()))?;
        let graph = cayley_graph(&group, &gens)?;
        match a.format {
            Format::Dot => out.write_all(to_dot(&graph).as_bytes())?,
            Format::Json => json_line(out, &graph.to_json())?,
            _ => out.write_all(render::cayley(&graph).as_bytes())?,
        }
        return Ok(());
    }
    let (Some(cartan), Some(ell), Some(w1), Some(w2)) = (&a.cartan, a.ell, &a.w1, &a.w2) else {
        return Err(Failure::Usage(
            "give either --group with --gens, or --type with --ell, --w1 and --w2".into(),
        ));
    };
    let group = WeylGroup::parse(cartan)?;
    let pair = StratumPair::new(
        &group,
        group.parse_element(w1)?,
        group.parse_element(w2)?,
        ell,
    )?;
    let q = block_quiver(&group, &pair, gens.as_deref())?;
    match a.format {
        Format::Json => json_line(out, &serde_json::to_value(&q)?)?,
        Format::Dot => match &q.arrows {
            rootblocks::quiver::BlockQuiverArrows::Supplied { graph } => {
                out.write_all(to_dot(graph).as_bytes())?
            }
            rootblocks::quiver::BlockQuiverArrows::Undetermined => {
                return Err(Failure::Usage(
                    "the arrows of this block quiver are not determined; pass --gens or use --format text|json".into(),
                ))
            }
        },
        _ => out.write_all(render::block_quiver(&q).as_bytes())?,
    }
    Ok(())
}

fn smallest_good_prime(group: &WeylGroup, from: u64) -> u64 {
    (from..)
        .find(|&p| {
            (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
                && is_good_ell(group.cartan(), p).validated
        })
        .expect("good primes are unbounded")
}

/// Input errors abort the run; anything else a suite raises counts as a failed property.
fn suite_rows(
    name: &str,
    run: rootblocks::Result<Vec<PropertyResult>>,
) -> Result<Vec<(String, PropertyResult)>, Failure> {
    match run {
        Ok(rows) => Ok(rows.into_iter().map(|r| (name.to_string(), r)).collect()),
        Err(
            e @ (Error::BadEll { .. } | Error::InvalidCartanType(_) | Error::CapExceeded { .. }),
        ) => Err(e.into()),
        Err(e) => Ok(vec![(
            name.to_string(),
            PropertyResult {
                name: "suite completed".into(),
                passed: false,
                checked: 1,
                counterexample: Some(e.to_string()),
            },
        )]),
    }
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Text, Format::Json], "verify")?;
    let group = WeylGroup::parse(&a.cartan)?;
    let wants = |s: Suite| a.suite == s || a.suite == Suite::All;
    let mut rows = Vec::new();
    if wants(Suite::Oracle) {
        let ell = a.ell.unwrap_or_else(|| smallest_good_prime(&group, 3));
        rows.extend(suite_rows(
            "oracle",
            suites::fiber_oracle_suite(&group, ell, a.cap),
        )?);
    }
    if wants(Suite::Skew) {
        let ell = a.ell.unwrap_or(3);
        rows.extend(suite_rows(
            "skew",
            suites::skew_oracle_suite(a.seed, a.trials, ell),
        )?);
    }
    if wants(Suite::Lattice) {
        let ell = a.ell.unwrap_or_else(|| smallest_good_prime(&group, 5));
        rows.extend(suite_rows(
            "lattice",
            suites::lattice_suite(&group, ell, a.cap),
        )?);
    }
    if wants(Suite::Sweep) {
        let ell = a.ell.unwrap_or_else(|| smallest_good_prime(&group, 5));
        rows.extend(suite_rows(
            "sweep",
            suites::sweep_suite(&group, ell, a.cap),
        )?);
    }
    if wants(Suite::Sl2) {
        let ell = a.ell.unwrap_or(3);
        rows.extend(suite_rows("sl2", suites::borel_sl2_suite(ell as usize))?);
    }
    let passed = rows.iter().all(|(_, r)| r.passed);
    match a.format {
        Format::Json => {
            let results: Vec<_> = rows
                .iter()
                .map(|(suite, r)| {
                    json!({
                        "suite": suite,
                        "name": r.name,
                        "passed": r.passed,
                        "checked": r.checked,
                        "counterexample": r.counterexample,
                    })
                })
                .collect();
            json_line(out, &json!({ "passed": passed, "results": results }))?;
        }
        _ => out.write_all(render::results(&rows).as_bytes())?,
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn wants_json(cmd: &Command) -> bool {
    let f = match cmd {
        Command::Info(a) => a.format,
        Command::Borel(a) => a.format,
        Command::Table(a) => a.format,
        Command::Poset(a) => a.format,
        Command::Quiver(a) => a.format,
        Command::Verify(a) => a.format,
    };
    f == Format::Json
}

fn run(cli: &Cli) -> Outcome {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = match &cli.command {
        Command::Info(a) => info(a, &mut *out),
        Command::Borel(a) => borel(a, &mut *out),
        Command::Table(a) => table(a, &mut *out),
        Command::Poset(a) => poset(a, &mut *out),
        Command::Quiver(a) => quiver(a, &mut *out),
        Command::Verify(a) => verify(a, &mut *out),
    };
    out.flush()?;
    result
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidCartanType(_) => "invalid_cartan_type",
        Error::BadEll { .. } => "bad_ell",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::NotReduced { .. } => "not_reduced",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::OrderNotCoprime { .. } => "order_not_coprime",
        Error::NotContained => "not_contained",
        Error::Dimension(_) => "dimension",
        Error::NotAzumaya(_) => "not_azumaya",
        Error::Algebra(_) => "algebra",
        Error::NonSplit { .. } => "non_split",
        Error::NotInGroup(_) => "not_in_group",
        Error::Parse { .. } => "parse",
        Error::Json(_) => "json",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = wants_json(&cli.command);
    let (kind, message) = match run(&cli) {
        Ok(()) => return ExitCode::SUCCESS,
        Err(Failure::Verification) => return ExitCode::from(1),
        Err(Failure::Usage(m)) => ("usage", m),
        Err(Failure::Engine(e)) => (error_kind(&e), e.to_string()),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => return ExitCode::SUCCESS,
        Err(Failure::Io(e)) => ("io", e.to_string()),
    };
    if json {
        eprintln!(
            "{}",
            json!({ "error": { "kind": kind, "message": message } })
        );
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(2)
}
