use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use superchar::format::{bare_record, read_jsonl, write_jsonl, CountReportJson, FormatError};
use superchar::lattice::to_dot;
use superchar_core::classify::classify;
use superchar_core::enumerate::{all_scts_cp_c2_c2, enumerate, EnumError, TheoryRecord};
use superchar_core::group::{GroupSpec, Subgroup};
use superchar_core::oracle::{brute_force_enumerate, OracleError, OracleOptions};
use superchar_core::theory::{dual, verify};

#[derive(Parser)]
#[command(name = "superchar", version, about = "Supercharacter theories of small abelian groups")]
struct Cli {
    /// Largest prime accepted by `--p`.
    #[arg(long, global = true, default_value_t = 199)]
    max_p: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Cp,
    Klein,
    Cpc2,
    C2cubed,
    Cpc2c2,
}

#[derive(Args)]
struct GroupOpts {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// The odd prime, for the families that have one.
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the enumeration of C_p x C_2 x C_2 with the closed-form counts.
    Count {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        json: bool,
    },
    /// Write every theory of a group as JSONL.
    Enumerate {
        #[command(flatten)]
        group: GroupOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check each theory in a JSONL file (`-` or nothing reads stdin).
    Verify { file: Option<PathBuf> },
    /// Write the dual of each theory.
    Dual {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report which constructions produce each theory.
    Classify { file: PathBuf },
    /// Exhaustive search over set partitions.
    Oracle {
        #[command(flatten)]
        group: GroupOpts,
        /// Cap on search nodes.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the refinement order as a DOT digraph.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        dot: PathBuf,
    },
}

enum Failure {
    Verify(String),
    Count(String),
    BadInput(String),
    Budget(String),
    Output(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Output(_) => 1,
            Failure::Verify(_) => 2,
            Failure::Count(_) => 3,
            Failure::BadInput(_) => 4,
            Failure::Budget(_) => 5,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::BadInput(format!("malformed input: {e}"))
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn check_p(p: u32, max_p: u32) -> Result<()> {
    if p > max_p {
        return Err(Failure::BadInput(format!("p out of bounds: {p} exceeds --max-p {max_p}")));
    }
    Ok(())
}

fn group_spec(opts: &GroupOpts, max_p: u32) -> Result<GroupSpec> {
    let needs_p = matches!(opts.group, GroupArg::Cp | GroupArg::Cpc2 | GroupArg::Cpc2c2);
    let p = match (needs_p, opts.p) {
        (true, None) => return Err(Failure::BadInput("this family needs --p".into())),
        (false, Some(_)) => return Err(Failure::BadInput("this family takes no --p".into())),
        (_, p) => p,
    };
    if let Some(p) = p {
        check_p(p, max_p)?;
    }
    let spec = match opts.group {
        GroupArg::Cp => GroupSpec::cp(p.unwrap()),
        GroupArg::Cpc2 => GroupSpec::cp_c2(p.unwrap()),
        GroupArg::Cpc2c2 => GroupSpec::cp_c2_c2(p.unwrap()),
        GroupArg::Klein => Ok(GroupSpec::klein()),
        GroupArg::C2cubed => Ok(GroupSpec::c2_cubed()),
    };
    spec.map_err(|e| Failure::BadInput(format!("unsupported group: {e}")))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p != Path::new("-") => Box::new(BufWriter::new(File::create(p)?)),
        _ => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(path: Option<&Path>) -> Result<Vec<TheoryRecord>> {
    let reader: Box<dyn BufRead> = match path {
        Some(p) if p != Path::new("-") => Box::new(BufReader::new(
            File::open(p).map_err(|e| Failure::BadInput(format!("cannot open {}: {e}", p.display())))?,
        )),
        _ => Box::new(io::stdin().lock()),
    };
    Ok(read_jsonl(reader)?)
}

fn enum_failure(e: EnumError) -> Failure {
    match e {
        EnumError::CountMismatch { .. } | EnumError::SetMismatch { .. } => Failure::Count(e.to_string()),
        EnumError::Oracle(OracleError::BudgetExhausted { .. }) => Failure::Budget(e.to_string()),
        EnumError::Construct(_) => Failure::Verify(e.to_string()),
        _ => Failure::BadInput(e.to_string()),
    }
}

fn count(p: u32, json: bool) -> Result<()> {
    let (report, err) = match all_scts_cp_c2_c2(p) {
        Ok((_, report)) => (report, None),
        Err(EnumError::CountMismatch { report, fields, .. }) => {
            let msg = format!("count mismatch in {}", fields.join(", "));
            (*report, Some(Failure::Count(msg)))
        }
        Err(e) => return Err(enum_failure(e)),
    };
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer(&mut out, &CountReportJson::from(&report)).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "p = {} = 1 + 2^{} * 3^{} * {}", report.p, report.k, report.l, report.n)?;
        let rows = [
            ("total", report.actual.total, report.predicted.total),
            ("automorphic", report.actual.automorphic, report.predicted.automorphic),
            ("direct", report.actual.direct, report.predicted.direct),
            ("overlap", report.actual.overlap, report.predicted.overlap),
            ("wedge", report.actual.wedge, report.predicted.wedge),
            ("maximal", report.actual.maximal, report.predicted.maximal),
        ];
        for (name, actual, predicted) in rows {
            let mark = if actual == predicted { "" } else { "  MISMATCH" };
            writeln!(out, "{name:<12}{actual:>6}  predicted {predicted}{mark}")?;
        }
    }
    out.flush()?;
    err.map_or(Ok(()), Err)
}

fn verify_file(path: Option<&Path>) -> Result<()> {
    let records = load(path)?;
    let verdicts: Vec<_> = records.par_iter().map(|r| verify(&r.theory)).collect();
    let mut out = io::stdout().lock();
    let mut bad = 0;
    for (r, v) in records.iter().zip(&verdicts) {
        match v {
            Ok(()) => writeln!(out, "ok {}", r.key())?,
            Err(violation) => {
                bad += 1;
                writeln!(out, "FAIL {}: {violation}", r.key())?;
            }
        }
    }
    writeln!(out, "{} theories, {} ok, {} failed", records.len(), records.len() - bad, bad)?;
    out.flush()?;
    if bad > 0 {
        return Err(Failure::Verify(format!("{bad} theories failed verification")));
    }
    Ok(())
}

fn dual_file(path: &Path, out: Option<&Path>) -> Result<()> {
    let records = load(Some(path))?;
    let mut duals = Vec::with_capacity(records.len());
    for r in &records {
        let d = dual(&r.theory).map_err(|e| Failure::Verify(format!("dual of {}: {e}", r.key())))?;
        verify(&d).map_err(|e| Failure::Verify(format!("dual of {}: {e}", r.key())))?;
        duals.push(bare_record(d));
    }
    let mut w = output(out)?;
    write_jsonl(&mut w, &duals)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ClassRow {
    key: String,
    minimal: bool,
    maximal: bool,
    /// Images of the generating units under each stabiliser element.
    automorphic: Option<Vec<Vec<Vec<u32>>>>,
    direct: Vec<[Vec<Vec<u32>>; 2]>,
    wedge: Vec<Vec<Vec<u32>>>,
}

fn classify_file(path: &Path) -> Result<()> {
    let records = load(Some(path))?;
    let rows: Vec<ClassRow> = records
        .par_iter()
        .map(|r| {
            let g = r.theory.group();
            let exps = |x: usize| g.element(x).exps().to_vec();
            let sub = |h: &Subgroup| h.generators().iter().map(|&x| exps(x)).collect::<Vec<_>>();
            let c = classify(&r.theory);
            ClassRow {
                key: r.key().to_string(),
                minimal: c.minimal,
                maximal: c.maximal,
                automorphic: c
                    .automorphic
                    .map(|auts| auts.iter().map(|a| a.images().iter().map(|&x| exps(x)).collect()).collect()),
                direct: c.direct.iter().map(|(a, b)| [sub(a), sub(b)]).collect(),
                wedge: c.wedge.iter().map(sub).collect(),
            }
        })
        .collect();
    let mut out = io::stdout().lock();
    for row in &rows {
        serde_json::to_writer(&mut out, row).map_err(io::Error::from)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn oracle(g: &GroupSpec, budget: Option<u64>, out: Option<&Path>) -> Result<()> {
    let opts = OracleOptions { budget, ..OracleOptions::default() };
    let theories = brute_force_enumerate(g, &opts).map_err(|e| match e {
        OracleError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
        OracleError::Theory(_) => Failure::Verify(e.to_string()),
        _ => Failure::BadInput(e.to_string()),
    })?;
    let records: Vec<_> = theories.into_iter().map(bare_record).collect();
    let mut w = output(out)?;
    write_jsonl(&mut w, &records)?;
    w.flush()?;
    eprintln!("{} theories", records.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count { p, json } => {
            check_p(p, cli.max_p)?;
            count(p, json)
        }
        Command::Enumerate { group, out } => {
            let g = group_spec(&group, cli.max_p)?;
            let records = enumerate(&g).map_err(enum_failure)?;
            let mut w = output(out.as_deref())?;
            write_jsonl(&mut w, &records)?;
            w.flush()?;
            Ok(())
        }
        Command::Verify { file } => verify_file(file.as_deref()),
        Command::Dual { file, out } => dual_file(&file, out.as_deref()),
        Command::Classify { file } => classify_file(&file),
        Command::Oracle { group, budget, out } => {
            let g = group_spec(&group, cli.max_p)?;
            oracle(&g, budget, out.as_deref())
        }
        Command::Lattice { file, dot } => {
            let records = load(Some(&file))?;
            std::fs::write(&dot, to_dot(&records))?;
            Ok(())
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("SUPERCHAR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::BadInput(format!("SUPERCHAR_THREADS must be a positive integer, got {value:?}")))?;
    // Fails only if a pool already exists, which cannot happen this early.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify(m) | Failure::Count(m) | Failure::BadInput(m) | Failure::Budget(m) => {
                    eprintln!("error: {m}")
                }
                Failure::Output(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}
