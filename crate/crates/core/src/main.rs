use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use csg::enumeration::{self, EnumSpec};
use csg::error::Error;
use csg::json::{game_to_string, invariants_to_string, parse_input, GameInput};
use csg::roles::{semantic_roles, structural_roles};
use csg::verify::Suite;
use csg::{apply_bijection, apply_inverse, dual, BijectionId, FormulaFamily, Invariants, Role, RoleSet};

#[derive(Parser)]
#[command(name = "csg", version, about = "Complete simple games toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game or invariant object and print its canonical form.
    Validate { input: Option<PathBuf> },
    /// Print the extensional game of invariants.
    Expand { input: Option<PathBuf> },
    /// Print the invariants of a complete game.
    Extract { input: Option<PathBuf> },
    /// Report the distinguished roles of every class and player.
    Classify {
        input: Option<PathBuf>,
        /// Read roles off the invariants instead of the coalitions.
        #[arg(long)]
        structural: bool,
    },
    /// Print the dual, in the same form as the input.
    Dual { input: Option<PathBuf> },
    /// Apply one of the role-class bijections to invariants.
    Map {
        #[arg(long, value_parser = parse_bijection)]
        bijection: BijectionId,
        #[arg(long)]
        inverse: bool,
        input: Option<PathBuf>,
    },
    /// Generate every game with `n` voters and `t` types.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long = "with", value_parser = parse_role)]
        with: Vec<Role>,
        #[arg(long = "without", value_parser = parse_role)]
        without: Vec<Role>,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Print a count table with header `n,t,r,filter,count`.
    Count {
        #[arg(long)]
        n: u32,
        /// Restrict to one type count; all `t` when omitted.
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long = "with", value_parser = parse_role)]
        with: Vec<Role>,
        #[arg(long = "without", value_parser = parse_role)]
        without: Vec<Role>,
        /// Split counts by row count, up to `--max-rows` when given.
        #[arg(long)]
        by_rows: bool,
        #[arg(long)]
        max_rows: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a closed-form family exactly.
    Formula {
        #[arg(long, value_parser = parse_family)]
        family: FormulaFamily,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: Option<u64>,
    },
    /// Run a self-check suite and print its CSV table.
    Verify {
        /// formulas, bijections, duality, oracle, rows, sequences or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

fn parse_role(s: &str) -> Result<Role, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_bijection(s: &str) -> Result<BijectionId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<FormulaFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Error(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Verify(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Error(Error::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(Failure::Error(e)) => {
            let line = e.to_string().replace('\n', " ");
            eprintln!("error: {line}");
            ExitCode::from(match e {
                Error::Capacity(_) => 3,
                _ => 1,
            })
        }
    }
}

fn read_input(path: Option<PathBuf>) -> Result<GameInput, Error> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(&p).map_err(|e| {
            Error::Input(format!("cannot read {}: {e}", p.display()))
        })?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_input(&text)
}

fn filter_set(roles: &[Role]) -> RoleSet {
    roles.iter().copied().collect()
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    match cmd {
        Command::Validate { input } => {
            match read_input(input)? {
                GameInput::Game(g) => {
                    // Extensional games are accepted when complete.
                    Invariants::extract(&g)?;
                    writeln!(out, "{}", game_to_string(&g))?;
                }
                GameInput::Invariants(i) => writeln!(out, "{}", invariants_to_string(&i))?,
            }
        }
        Command::Expand { input } => {
            let g = read_input(input)?.game()?;
            writeln!(out, "{}", game_to_string(&g))?;
        }
        Command::Extract { input } => {
            let i = read_input(input)?.invariants()?;
            writeln!(out, "{}", invariants_to_string(&i))?;
        }
        Command::Classify { input, structural } => {
            let parsed = read_input(input)?;
            let report = if structural {
                structural_roles(&parsed.invariants()?)
            } else {
                semantic_roles(&parsed.game()?)?
            };
            writeln!(out, "{}", serde_json::to_string(&report.to_json()).map_err(Error::from)?)?;
        }
        Command::Dual { input } => match read_input(input)? {
            GameInput::Game(g) => writeln!(out, "{}", game_to_string(&dual(&g)?))?,
            GameInput::Invariants(i) => writeln!(out, "{}", invariants_to_string(&i.dual()?))?,
        },
        Command::Map {
            bijection,
            inverse,
            input,
        } => {
            let i = read_input(input)?.invariants()?;
            let image = if inverse {
                apply_inverse(bijection, &i)?
            } else {
                apply_bijection(bijection, &i)?
            };
            writeln!(out, "{}", invariants_to_string(&image))?;
        }
        Command::Enumerate {
            n,
            t,
            rows,
            with,
            without,
            count_only,
            jobs,
            format,
        } => {
            let mut spec = EnumSpec::new(n, t)
                .require(filter_set(&with))
                .forbid(filter_set(&without));
            spec.rows = rows;
            spec.count_only = count_only;
            match format {
                Format::Csv => {
                    let c = enumeration::count(&spec, jobs)?;
                    let mut w = count_writer(out)?;
                    write_count(&mut w, &spec, &c.to_string())?;
                    w.flush()?;
                }
                Format::Jsonl if count_only => {
                    let c = enumeration::count(&spec, jobs)?;
                    writeln!(out, "{c}")?;
                }
                Format::Jsonl if jobs > 1 => {
                    for g in enumeration::enumerate(&spec, jobs)? {
                        writeln!(out, "{}", invariants_to_string(&g))?;
                    }
                }
                Format::Jsonl => {
                    let mut io_err = None;
                    enumeration::for_each(&spec, |g| {
                        if io_err.is_none() {
                            if let Err(e) = writeln!(out, "{}", invariants_to_string(&g)) {
                                io_err = Some(e);
                            }
                        }
                    })?;
                    if let Some(e) = io_err {
                        return Err(e.into());
                    }
                }
            }
        }
        Command::Count {
            n,
            t,
            rows,
            with,
            without,
            by_rows,
            max_rows,
            jobs,
        } => {
            let mut w = count_writer(out)?;
            if by_rows {
                if !with.is_empty() || !without.is_empty() || rows.is_some() {
                    return Err(Error::Input(
                        "--by-rows does not combine with --rows, --with or --without".into(),
                    )
                    .into());
                }
                for ((ct, r), c) in enumeration::count_by_rows(n, max_rows, jobs)? {
                    if t.is_some_and(|t| t != ct) {
                        continue;
                    }
                    w.write_record([
                        n.to_string(),
                        ct.to_string(),
                        r.to_string(),
                        "all".into(),
                        c.to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            } else {
                let ts: Vec<u32> = match t {
                    Some(t) => vec![t],
                    None => (1..=n).collect(),
                };
                for t in ts {
                    let mut spec = EnumSpec::new(n, t)
                        .require(filter_set(&with))
                        .forbid(filter_set(&without));
                    spec.rows = rows;
                    spec.count_only = true;
                    let c = enumeration::count(&spec, jobs)?;
                    write_count(&mut w, &spec, &c.to_string())?;
                }
            }
            w.flush()?;
        }
        Command::Formula { family, n, t } => {
            writeln!(out, "{}", family.evaluate(n, t)?)?;
        }
        Command::Verify { suite, max_n, jobs } => {
            let suites: Vec<Suite> = if suite.trim().eq_ignore_ascii_case("all") {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut failed = Vec::new();
            for s in suites {
                let report = s.run(max_n.unwrap_or_else(|| s.default_max_n()), jobs)?;
                if suite.trim().eq_ignore_ascii_case("all") {
                    writeln!(out, "# suite {s}")?;
                }
                out.write_all(report.csv.as_bytes())?;
                if !report.ok {
                    failed.push(s.name());
                }
            }
            if !failed.is_empty() {
                out.flush()?;
                return Err(Failure::Verify(format!(
                    "verification failed: {}",
                    failed.join(", ")
                )));
            }
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Error(Error::Input(e.to_string()))
}

fn count_writer<W: Write>(out: W) -> Result<csv::Writer<W>, Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "t", "r", "filter", "count"]).map_err(csv_err)?;
    Ok(w)
}

fn write_count<W: Write>(w: &mut csv::Writer<W>, spec: &EnumSpec, count: &str) -> Result<(), Failure> {
    w.write_record([
        spec.n.to_string(),
        spec.t.to_string(),
        spec.rows.map_or("all".into(), |r| r.to_string()),
        spec.filter_label(),
        count.to_string(),
    ])
    .map_err(csv_err)
}
