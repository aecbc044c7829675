use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subconstituent::construct::omega;
use subconstituent::gf::{odd_prime_power, Field, DEFAULT_TABLE_CAP};
use subconstituent::projline::format_point;
use subconstituent::report::{self, AnalyzeOptions, ExportedGraph, DEFAULT_Q_LIST};
use subconstituent::{par, Error};

#[derive(Parser)]
#[command(
    version,
    about = "Cross-ratio graphs over GF(q^2) and their strongly regular extensions"
)]
struct Cli {
    /// Largest field order to tabulate.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Odd prime power q; the field is GF(q^2).
    #[arg(long, conflicts_with_all = ["p", "e"])]
    q: Option<u64>,
    /// Odd prime p, used with --e to give q = p^e.
    #[arg(long)]
    p: Option<u64>,
    /// Exponent e (default 1).
    #[arg(long, requires = "p")]
    e: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the field modulus and the Omega generator table.
    Field(FieldArgs),
    /// Analyze G_u for one u or every admissible class.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Element in canonical syntax, e.g. 1+2t.
        #[arg(long)]
        u: Option<String>,
        /// Check strong regularity of G_u + C even when the partition test fails.
        #[arg(long)]
        full_srg: bool,
        /// Write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Analyze several fields and print one summary row per admissible class.
    Sweep {
        /// Comma-separated odd prime powers.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_Q_LIST)]
        q_list: Vec<u64>,
        /// Write q<q>.json reports here.
        #[arg(long)]
        json_dir: Option<PathBuf>,
        /// Check strong regularity of every G_u + C.
        #[arg(long)]
        full_srg: bool,
    },
    /// Write G_u or G_u + C as an edge list or JSON.
    Export {
        /// Odd prime power q.
        #[arg(long)]
        q: u64,
        /// Element, or "auto" for the first admissible class.
        #[arg(long, default_value = "auto")]
        u: String,
        /// Export G_u + C instead of G_u.
        #[arg(long)]
        assembled: bool,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
}

fn build_field(args: &FieldArgs, cap: u64) -> Result<Field, Error> {
    let (p, e) = match (args.q, args.p) {
        (Some(q), _) => odd_prime_power(q)?,
        (None, Some(p)) => (p, args.e.unwrap_or(1)),
        (None, None) => return Err(Error::Format("one of --q or --p is required".into())),
    };
    Ok(Field::with_cap(p, e, cap)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn cmd_field(args: &FieldArgs, cap: u64) -> Result<(), Error> {
    let field = build_field(args, cap)?;
    let q = field.q();
    println!(
        "GF({}) = GF({})[t]/({})",
        field.order(),
        field.p(),
        field.format_modulus()
    );
    println!("q = {q}, k = {}", q * q + 1);
    println!("t has multiplicative order {}", field.group_order());
    let om = omega(&field);
    let rows: Vec<[String; 3]> = om
        .table
        .iter()
        .map(|row| {
            [
                field.format(row.x),
                format_point(&field, row.value),
                format_point(&field, row.inverse),
            ]
        })
        .collect();
    let width = |i: usize, head: &str| {
        rows.iter()
            .map(|r| r[i].len())
            .chain([head.len()])
            .max()
            .unwrap_or(0)
    };
    let (w0, w1) = (width(0, "x"), width(1, "x+x^-1-1"));
    println!(
        "{:>3}  {:<w0$}  {:<w1$}  (x+x^-1-1)^-1",
        "j", "x", "x+x^-1-1"
    );
    for (row, [x, value, inverse]) in om.table.iter().zip(&rows) {
        println!("{:>3}  {x:<w0$}  {value:<w1$}  {inverse}", row.j);
    }
    let members: Vec<String> = om.points.iter().map(|&x| format_point(&field, x)).collect();
    println!("Omega = {{{}}}", members.join(", "));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    let cap = cli.table_cap;
    match cli.command {
        Command::Field(args) => cmd_field(&args, cap),
        Command::Analyze {
            field,
            u,
            full_srg,
            json,
        } => {
            let field = build_field(&field, cap)?;
            let u = u.map(|s| field.parse(&s)).transpose()?;
            let rep = report::analyze(&field, &AnalyzeOptions { u, full_srg })?;
            print!("{}", report::format_report(&rep));
            if let Some(path) = json {
                write_file(&path, &report::to_json(&rep))?;
            }
            Ok(())
        }
        Command::Sweep {
            q_list,
            json_dir,
            full_srg,
        } => {
            let reports = report::sweep(&q_list, cap, full_srg)?;
            print!(
                "{}",
                report::format_summary(&report::summary_rows(&reports))
            );
            if let Some(dir) = json_dir {
                fs::create_dir_all(&dir)
                    .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                for rep in &reports {
                    write_file(&dir.join(format!("q{}.json", rep.q)), &report::to_json(rep))?;
                }
            }
            Ok(())
        }
        Command::Export {
            q,
            u,
            assembled,
            format,
            out,
        } => {
            let field = Field::for_q(q, cap)?;
            let u = match u.as_str() {
                "auto" => None,
                s => Some(field.parse(s)?),
            };
            let g: ExportedGraph = report::export_graph(&field, u, assembled)?;
            let text = match format {
                Format::Edgelist => g.to_edgelist(),
                Format::Json => g.to_json(),
            };
            write_file(&out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads;
    match par::with_threads(threads, || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
