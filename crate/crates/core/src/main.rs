use clap::{Args, Parser, Subcommand, ValueEnum};
use reflinv::error::{Error, Result};
use reflinv::forms::{parse_monomial_list, MonomialIndex};
use reflinv::group::GroupTable;
use reflinv::report::{
    basis_csv, basis_table, completion_csv, completion_table, dims_csv, dims_table, group_csv,
    group_table, relation_csv, relation_table, verify_csv, verify_table, BasisReportJson,
    CompletionJson, DimsJson, ErrorJson, GroupJson, RelationReportJson, VerifyJson,
};
use reflinv::spaces::{build_v_basis, build_w_basis, complete_basis, relate};
use reflinv::verify::run_suite;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact multilinear invariants of the order-96 unitary reflection group:
/// group table, invariant-space dimensions, bases, change-of-basis tables,
/// and basis completions, all in exact Gaussian-rational arithmetic.
#[derive(Parser)]
#[command(name = "reflinv", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the artifact to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DegreeOpts {
    /// Degree f: the number of (row, column) vector pairs
    #[arg(long)]
    f: usize,
    /// Proceed for degrees above 6 despite the 4^f cost
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the 96-element group table with its inverse index
    Group {
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Compute dim V_f and dim W_f and check them against the closed forms
    Dims {
        #[command(flatten)]
        degree: DegreeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build the averaged-monomial basis of V_f
    Vbasis {
        #[command(flatten)]
        degree: DegreeOpts,
        /// File of monomials ("121,112" per line) to average and scan first
        #[arg(long)]
        forced_basis: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build the typical-invariant basis of W_f
    Wbasis {
        #[command(flatten)]
        degree: DegreeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Expand every W_f basis vector over the V_f basis
    Relate {
        #[command(flatten)]
        degree: DegreeOpts,
        /// File of monomials fixing the V basis scan order
        #[arg(long)]
        forced_basis: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Find averaged monomials that extend W_f to the full space V_f
    Complete {
        #[command(flatten)]
        degree: DegreeOpts,
        /// File of candidate monomials to validate instead of a greedy scan
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the full invariant check suite for one degree
    Verify {
        #[command(flatten)]
        degree: DegreeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn check_degree(opts: &DegreeOpts) -> Result<()> {
    if opts.f == 0 {
        return Err(Error::InvalidDegree);
    }
    if opts.f >= 6 {
        if opts.f > 6 && !opts.allow_large {
            return Err(Error::DegreeTooLarge(opts.f));
        }
        eprintln!(
            "warning: degree {} works with 4^{} = {} monomial coordinates; expect long runtimes",
            opts.f,
            opts.f,
            1u128 << (2 * opts.f as u32)
        );
    }
    Ok(())
}

/// One monomial per line as "i_1..i_f,k_1..k_f"; blank lines are skipped.
fn parse_monomial_file(path: &Path, f: usize) -> Result<Vec<MonomialIndex>> {
    let text = std::fs::read_to_string(path)?;
    let out = parse_monomial_list(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match out.first() {
        None => Err(Error::Parse(format!(
            "{}: no monomials found",
            path.display()
        ))),
        Some(first) if first.degree() != f => Err(Error::Parse(format!(
            "{}: monomials have degree {}, expected {f}",
            path.display(),
            first.degree()
        ))),
        Some(_) => Ok(out),
    }
}

fn emit(out: &OutputOpts, rendered: String) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Group { out } => {
            let g = GroupTable::shephard_todd_8();
            let rendered = match out.format {
                Format::Json => json_line(&GroupJson::from_table(&g)),
                Format::Table => group_table(&g),
                Format::Csv => group_csv(&g),
            };
            emit(&out, rendered)?;
        }
        Command::Dims { degree, out } => {
            check_degree(&degree)?;
            let g = GroupTable::shephard_todd_8();
            let v = build_v_basis(degree.f, &g, None)?;
            let w = build_w_basis(degree.f)?;
            let dims = DimsJson {
                f: degree.f,
                dim_v: v.dimension,
                dim_w: w.dimension,
            };
            let rendered = match out.format {
                Format::Json => json_line(&dims),
                Format::Table => dims_table(&dims),
                Format::Csv => dims_csv(&dims),
            };
            emit(&out, rendered)?;
        }
        Command::Vbasis {
            degree,
            forced_basis,
            out,
        } => {
            check_degree(&degree)?;
            let g = GroupTable::shephard_todd_8();
            let forced = forced_basis
                .map(|p| parse_monomial_file(&p, degree.f))
                .transpose()?;
            let v = build_v_basis(degree.f, &g, forced.as_deref())?;
            let rendered = match out.format {
                Format::Json => json_line(&BasisReportJson::from_report(&v)),
                Format::Table => basis_table(&v),
                Format::Csv => basis_csv(&v),
            };
            emit(&out, rendered)?;
        }
        Command::Wbasis { degree, out } => {
            check_degree(&degree)?;
            let w = build_w_basis(degree.f)?;
            let rendered = match out.format {
                Format::Json => json_line(&BasisReportJson::from_report(&w)),
                Format::Table => basis_table(&w),
                Format::Csv => basis_csv(&w),
            };
            emit(&out, rendered)?;
        }
        Command::Relate {
            degree,
            forced_basis,
            out,
        } => {
            check_degree(&degree)?;
            let g = GroupTable::shephard_todd_8();
            let forced = forced_basis
                .map(|p| parse_monomial_file(&p, degree.f))
                .transpose()?;
            let v = build_v_basis(degree.f, &g, forced.as_deref())?;
            let w = build_w_basis(degree.f)?;
            let relation = relate(&g, v, w)?;
            let rendered = match out.format {
                Format::Json => json_line(&RelationReportJson::from_report(&relation)),
                Format::Table => relation_table(&relation),
                Format::Csv => relation_csv(&relation),
            };
            emit(&out, rendered)?;
        }
        Command::Complete {
            degree,
            candidates,
            out,
        } => {
            check_degree(&degree)?;
            let g = GroupTable::shephard_todd_8();
            let v = build_v_basis(degree.f, &g, None)?;
            let w = build_w_basis(degree.f)?;
            let candidate_list = candidates
                .map(|p| parse_monomial_file(&p, degree.f))
                .transpose()?;
            let extras = complete_basis(&g, &v, &w, candidate_list.as_deref())?;
            let completion = CompletionJson {
                f: degree.f,
                extra_invariants: extras.iter().map(|m| m.to_string()).collect(),
                final_rank: v.dimension,
            };
            let rendered = match out.format {
                Format::Json => json_line(&completion),
                Format::Table => completion_table(&completion),
                Format::Csv => completion_csv(&completion),
            };
            emit(&out, rendered)?;
        }
        Command::Verify { degree, out } => {
            check_degree(&degree)?;
            let outcomes = run_suite(degree.f);
            let report = VerifyJson::from_outcomes(degree.f, &outcomes);
            let rendered = match out.format {
                Format::Json => json_line(&report),
                Format::Table => verify_table(&report),
                Format::Csv => verify_csv(&report),
            };
            emit(&out, rendered)?;
            if let Some(failed) = outcomes.iter().find(|c| !c.passed) {
                return Err(Error::CheckFailed(format!(
                    "{}: {}",
                    failed.name, failed.detail
                )));
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::to_string(&ErrorJson::from_error(&e)).expect("error serializes")
            );
            ExitCode::from(1)
        }
    }
}
