use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use deza_core::construct::{
    check_field_identities, design_lex_empty, empty_digraph, field_type2, lex_product,
    paley_graph, qr_symmetric_design, siamese_reflexive, skew_hadamard_deza, twin_deza,
    twin_directed, TwinPair,
};
use deza_core::decompose::{decompose_b_eq_t, decompose_type2_b_eq_k, search_deza_digraphs, SearchOptions};
use deza_core::hadamard::{skew_hadamard, sylvester};
use deza_core::io::{
    encode_digraph6, export, parse_partition, read_digraph, read_matrix,
    write_matrix, ChildFiles, ExportFormat, ReportDocument,
};
use deza_core::scheme::paley_tournament;
use deza_core::verify::{
    deza_children, discover_ddd_partition, feasibility, verify_all, verify_ddd,
    verify_deza_digraph, verify_deza_graph, verify_dsrg, verify_reflexive_directed_deza,
    verify_symmetric_design, verify_type2, Classification, DezaParams, Params,
};
use deza_core::{Digraph, Error, FiniteField, HadamardMatrix, VerificationReport};

#[derive(Parser)]
#[command(name = "deza", version, about = "Directed Deza graphs: construct, verify, decompose, search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of one of the construction families.
    Construct(ConstructArgs),
    /// Check a digraph against one classifier, or all of them.
    Verify {
        file: PathBuf,
        #[arg(long = "as", value_enum)]
        kind: Option<Kind>,
        /// Classes for `--as ddd`, one per line.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write the Deza children as PREFIX.x.txt and PREFIX.y.txt.
        #[arg(long)]
        children: Option<PathBuf>,
    },
    /// Write the Deza children X and Y of a directed Deza graph.
    Children {
        file: PathBuf,
        #[arg(long)]
        out_x: PathBuf,
        #[arg(long)]
        out_y: PathBuf,
    },
    /// Recover D₁ from D ≅ D₁[E_m].
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "b-eq-t")]
        mode: Mode,
        #[arg(long)]
        out_quotient: PathBuf,
    },
    /// Evaluate the finite-field block identities for GF(q).
    CheckIdentities {
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive search; prints one digraph6 line per hit.
    Search {
        #[arg(long, value_parser = parse_params)]
        params: DezaParams,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        canonical_dedup: bool,
    },
    /// Closed forms for α, β and the resulting necessary conditions.
    Feasibility {
        #[arg(long, value_parser = parse_params)]
        params: DezaParams,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Deza,
    Deza2,
    Dsrg,
    Ddd,
    DezaGraph,
    Reflexive,
    Design,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    BEqT,
    BEqK,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    LexProduct,
    SkewHadamard,
    Twin,
    TwinDirected,
    Drt,
    FieldType2,
    QrDesign,
    PaleyGraph,
    Empty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Matrix01,
    Digraph6,
    Dot,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Matrix01 => ExportFormat::Matrix01,
            Format::Digraph6 => ExportFormat::Digraph6,
            Format::Dot => ExportFormat::Dot,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    /// Output file; families with several outputs use it as a prefix.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "matrix01")]
    format: Format,
    /// lex-product: outer digraph.
    #[arg(long)]
    first: Option<PathBuf>,
    /// lex-product: inner digraph.
    #[arg(long)]
    second: Option<PathBuf>,
    /// skew-hadamard: Paley skew matrix of order 4u.
    #[arg(long)]
    u: Option<usize>,
    /// skew-hadamard, twin, twin-directed: explicit ±1 matrix.
    #[arg(long)]
    hadamard: Option<PathBuf>,
    /// twin, twin-directed: Sylvester order (a power of two).
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    /// field-type2: index of α in the element order.
    #[arg(long)]
    alpha: Option<usize>,
    /// qr-design: compose with the empty digraph on this many vertices.
    #[arg(long)]
    n2: Option<usize>,
    /// empty: number of vertices.
    #[arg(long)]
    n: Option<usize>,
}

enum Failure {
    Verification(String),
    Usage(String),
    SizeBound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeBound(_) => Failure::SizeBound(e.to_string()),
            Error::Decomposition(_) | Error::Precondition(_) | Error::SchemeAxiom { .. } => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn parse_params(s: &str) -> Result<DezaParams, String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [n, k, b, a, t] => Ok(DezaParams::new(n, k, b, a, t)),
        _ => Err(format!("expected n,k,b,a,t, got {} values", v.len())),
    }
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn write_digraph(d: &Digraph, path: &Path, format: Format) -> Outcome {
    fs::write(path, export(d, format.into())?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn hadamard_input(args: &ConstructArgs) -> Result<HadamardMatrix, Failure> {
    if let Some(path) = &args.hadamard {
        return Ok(HadamardMatrix::new(read_matrix(path)?)?);
    }
    let order = required(args.order, "order")?;
    if !order.is_power_of_two() || order < 2 {
        return Err(Failure::Usage(format!("--order {order} is not a power of two >= 2")));
    }
    Ok(sylvester(order.trailing_zeros())?)
}

fn write_twin(pair: &TwinPair, reflexive: (Digraph, Digraph), args: &ConstructArgs) -> Outcome {
    let signed = with_suffix(&args.out, ".K.txt");
    write_matrix(&pair.signed, &signed)?;
    println!("wrote {}", signed.display());
    let ext = match args.format {
        Format::Matrix01 => "txt",
        Format::Digraph6 => "d6",
        Format::Dot => "dot",
    };
    write_digraph(&pair.positive_part, &with_suffix(&args.out, &format!(".A.{ext}")), args.format)?;
    write_digraph(&pair.negative_part, &with_suffix(&args.out, &format!(".B.{ext}")), args.format)?;
    // reflexive digraphs carry loops, which digraph6 cannot hold
    let fmt = match args.format {
        Format::Digraph6 => Format::Matrix01,
        f => f,
    };
    let ext = if matches!(fmt, Format::Dot) { "dot" } else { "txt" };
    write_digraph(&reflexive.0, &with_suffix(&args.out, &format!(".A-reflexive.{ext}")), fmt)?;
    write_digraph(&reflexive.1, &with_suffix(&args.out, &format!(".B-reflexive.{ext}")), fmt)
}

fn construct(args: ConstructArgs) -> Outcome {
    let d = match args.family {
        Family::LexProduct => {
            let first = read_digraph(args.first.as_ref().ok_or_else(|| Failure::Usage("missing --first".into()))?)?;
            let second = read_digraph(args.second.as_ref().ok_or_else(|| Failure::Usage("missing --second".into()))?)?;
            lex_product(&first, &second)?
        }
        Family::SkewHadamard => {
            let h = match &args.hadamard {
                Some(path) => HadamardMatrix::new(read_matrix(path)?)?,
                None => skew_hadamard(4 * required(args.u, "u")?)?,
            };
            skew_hadamard_deza(&h)?
        }
        Family::Twin => {
            let h = hadamard_input(&args)?;
            let pair = twin_deza(&h)?;
            let reflexive = siamese_reflexive(&pair, &h)?;
            return write_twin(&pair, reflexive, &args);
        }
        Family::TwinDirected => {
            let (pair, reflexive) = twin_directed(&hadamard_input(&args)?)?;
            return write_twin(&pair, reflexive, &args);
        }
        Family::Drt => paley_tournament(required(args.q, "q")?)?,
        Family::FieldType2 => {
            let field = FiniteField::of_order(required(args.q, "q")?)?;
            let alpha = field.element(required(args.alpha, "alpha")?)?;
            field_type2(&field, alpha)?
        }
        Family::QrDesign => {
            let incidence = qr_symmetric_design(required(args.q, "q")?)?;
            match args.n2 {
                Some(n2) => design_lex_empty(&incidence, n2)?,
                None => Digraph::simple(incidence)?,
            }
        }
        Family::PaleyGraph => paley_graph(required(args.q, "q")?)?,
        Family::Empty => empty_digraph(required(args.n, "n")?),
    };
    write_digraph(&d, &args.out, args.format)
}

fn single(kind: Kind, d: &Digraph, partition: Option<&PathBuf>) -> Result<VerificationReport, Failure> {
    Ok(match kind {
        Kind::Deza => verify_deza_digraph(d)?,
        Kind::Deza2 => verify_type2(d)?,
        Kind::Dsrg => verify_dsrg(d)?,
        Kind::Ddd => {
            let classes = match partition {
                Some(path) => parse_partition(&read_text(path)?)?,
                None => match discover_ddd_partition(d) {
                    Some(p) => p,
                    None => return Ok(VerificationReport::failure("no equitable partition found")),
                },
            };
            verify_ddd(d, &classes)?
        }
        Kind::DezaGraph => verify_deza_graph(d, d.has_loops())?,
        Kind::Reflexive if d.is_symmetric() => verify_deza_graph(d, true)?,
        Kind::Reflexive => verify_reflexive_directed_deza(d)?,
        Kind::Design => match verify_symmetric_design(d.adjacency()) {
            Ok(p) => VerificationReport::member(Classification::SymmetricDesign, Params::Design(p)),
            Err(e) => VerificationReport::failure(e.to_string()),
        },
    })
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn describe(r: &VerificationReport) -> String {
    let mut line = r.classification.as_str().to_string();
    match r.params {
        Some(Params::Deza(p)) => line += &format!(" ({},{},{},{},{})", p.n, p.k, p.b, p.a, p.t),
        Some(Params::TypeII(p)) => line += &format!(" ({},{},{},{})", p.n, p.k, p.b, p.a),
        Some(Params::Dsrg(p)) => line += &format!(" ({},{},{},{},{})", p.n, p.k, p.lambda, p.mu, p.t),
        Some(Params::Ddd(p)) => {
            line += &format!(" ({},{},{},{},{},{})", p.v, p.k, p.lambda1, p.lambda2, p.m, p.n_class)
        }
        Some(Params::Design(p)) => line += &format!(" ({},{},{})", p.n, p.k, p.lambda),
        None => {}
    }
    if let (Some(a), Some(b)) = (r.alpha, r.beta) {
        line += &format!(" alpha={a} beta={b}");
    }
    if let Some(by) = &r.realized_by {
        line += &format!(" via {by}");
    }
    if let Some(w) = &r.witness {
        line += &format!(": {w}");
    }
    line
}

fn verify(
    file: &Path,
    kind: Option<Kind>,
    partition: Option<PathBuf>,
    report: Option<PathBuf>,
    children: Option<PathBuf>,
) -> Outcome {
    let d = read_digraph(file)?;
    let reports = match kind {
        Some(kind) => vec![single(kind, &d, partition.as_ref())?],
        None => {
            let hits = verify_all(&d);
            if hits.is_empty() {
                vec![single(if d.has_loops() { Kind::Reflexive } else { Kind::Deza }, &d, None)?]
            } else {
                hits
            }
        }
    };
    let mut doc = ReportDocument::new(Some(file.display().to_string()), reports);
    if let Some(prefix) = children {
        if let Some(entry) = doc.reports.iter_mut().find(|e| e.report.children.is_some()) {
            let (x, y) = deza_children(&entry.report)?;
            let files = ChildFiles {
                x: with_suffix(&prefix, ".x.txt").display().to_string(),
                y: with_suffix(&prefix, ".y.txt").display().to_string(),
            };
            write_matrix(x.adjacency(), &files.x)?;
            write_matrix(y.adjacency(), &files.y)?;
            entry.children_files = Some(files);
        }
    }
    for entry in &doc.reports {
        println!("{}", describe(&entry.report));
    }
    if let Some(path) = report {
        fs::write(&path, doc.to_json()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if doc.verified {
        Ok(())
    } else {
        Err(Failure::Verification("not verified".into()))
    }
}

fn children(file: &Path, out_x: &Path, out_y: &Path) -> Outcome {
    let d = read_digraph(file)?;
    let report = verify_all(&d)
        .into_iter()
        .find(|r| r.children.is_some())
        .ok_or_else(|| Failure::Verification("input is not a Deza digraph or graph".into()))?;
    let (x, y) = deza_children(&report)?;
    write_matrix(x.adjacency(), out_x)?;
    write_matrix(y.adjacency(), out_y)?;
    println!("{}", describe(&report));
    Ok(())
}

fn decompose(file: &Path, mode: Mode, out: &Path) -> Outcome {
    let d = read_digraph(file)?;
    let dec = match mode {
        Mode::BEqT => decompose_b_eq_t(&d)?,
        Mode::BEqK => decompose_type2_b_eq_k(&d)?,
    };
    write_matrix(dec.quotient.adjacency(), out)?;
    let class = match dec.quotient_params {
        Params::Design(_) => Classification::SymmetricDesign,
        _ => Classification::Dsrg,
    };
    let summary = VerificationReport::member(class, dec.quotient_params);
    println!("quotient {} class size {}", describe(&summary), dec.class_size);
    for class in &dec.classes {
        let members: Vec<String> = class.iter().map(usize::to_string).collect();
        println!("{}", members.join(" "));
    }
    Ok(())
}

fn check_identities(q: u64) -> Outcome {
    let report = check_field_identities(&FiniteField::of_order(q)?)?;
    for c in &report.checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        println!("{verdict} {} ({} cases) {}", c.name, c.cases, c.statement);
        if let Some(ce) = &c.counterexample {
            println!("  counterexample: {ce}");
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification("identity check failed".into()))
    }
}

fn search(params: &DezaParams, limit: Option<usize>, canonical_dedup: bool) -> Outcome {
    let options = SearchOptions {
        limit: limit.unwrap_or(usize::MAX),
        canonical_dedup,
    };
    let found = search_deza_digraphs(params, options)?;
    for d in &found {
        println!("{}", encode_digraph6(d)?);
    }
    eprintln!("{} digraphs", found.len());
    Ok(())
}

fn show_feasibility(p: &DezaParams) -> Outcome {
    let f = feasibility(p)?;
    let show = |x: deza_core::verify::Fraction| match x.as_integer() {
        Some(v) => v.to_string(),
        None => format!("{}/{}", x.numerator, x.denominator),
    };
    println!("alpha {}", show(f.alpha));
    println!("beta {}", show(f.beta));
    println!("divisible {}", f.divisible);
    match f.inequality {
        Some(holds) => println!("inequality {holds}"),
        None => println!("inequality not required"),
    }
    println!("feasible {}", f.feasible);
    if f.feasible {
        Ok(())
    } else {
        Err(Failure::Verification("parameters are infeasible".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify { file, kind, partition, report, children } => {
            verify(&file, kind, partition, report, children)
        }
        Command::Children { file, out_x, out_y } => children(&file, &out_x, &out_y),
        Command::Decompose { file, mode, out_quotient } => decompose(&file, mode, &out_quotient),
        Command::CheckIdentities { q } => check_identities(q),
        Command::Search { params, limit, canonical_dedup } => search(&params, limit, canonical_dedup),
        Command::Feasibility { params } => show_feasibility(&params),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("deza: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("deza: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::SizeBound(msg)) => {
            eprintln!("deza: {msg}");
            ExitCode::from(3)
        }
    }
}
