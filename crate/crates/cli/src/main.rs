use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ver4_cli::dsl::DslError;
use ver4_cli::report::{Report, RunDocument};
use ver4_cli::suite::{self, Subject};

/// Verification checks for D-algebras in characteristic 2.
///
/// Exit status: 0 when no report failed, 1 when some report is `fail` or
/// `not-a-cover`, 2 on usage, configuration or parse errors.
#[derive(Parser)]
#[command(name = "ver4", version)]
struct Cli {
    /// Print the run document as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse presentation files and check the algebra axioms.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Points of the prime spectrum.
    Spec { file: PathBuf },
    /// Localize at an element of the invariant part.
    Localize {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Morphisms between two algebras.
    Points {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        into: PathBuf,
    },
    /// Run a named check (projaff, ses, glpq, covers, mn-gr).
    Check {
        name: String,
        /// Named catalog; the default catalog is used when no algebra is given.
        #[arg(long)]
        catalog: Option<String>,
        /// Presentation files to check.
        #[arg(long)]
        algebra: Vec<PathBuf>,
        /// For `covers` on a single algebra: a comma-separated family of
        /// invariant elements to test as a cover.
        #[arg(long)]
        cover: Option<String>,
    },
}

fn load(path: &Path) -> Result<Subject, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Subject::from_text(&text).map_err(|e: DslError| format!("{}: {e}", path.display()))
}

fn run(cli: &Cli, seed: u64) -> Result<Vec<(Report, u64)>, String> {
    Ok(match &cli.command {
        Command::Verify { files } => {
            let subjects = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            subjects.iter().flat_map(|s| suite::timed(|| vec![suite::axioms(s)])).collect()
        }
        Command::Spec { file } => {
            let s = load(file)?;
            suite::timed(|| vec![suite::spectrum(&s)])
        }
        Command::Localize { file, at } => {
            let s = load(file)?;
            let r = suite::localize_report(&s, at)?;
            suite::timed(|| vec![r])
        }
        Command::Points { from, into } => {
            let (a, b) = (load(from)?, load(into)?);
            let r = suite::points_report(&a, &b)?;
            suite::timed(|| vec![r])
        }
        Command::Check { name, catalog, algebra, cover } => {
            let mut subjects = algebra.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            if catalog.is_some() || subjects.is_empty() {
                subjects.extend(suite::catalog(catalog.as_deref().unwrap_or("default"))?);
            }
            match cover {
                Some(family) => {
                    if name != "covers" || subjects.len() != 1 || catalog.is_some() {
                        return Err("--cover needs `check covers` with exactly one --algebra".into());
                    }
                    let s = &subjects[0];
                    let fam = family
                        .split(',')
                        .map(|t| s.element(t.trim()).map_err(|e| format!("`{t}`: {e}")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let a = s.table().ok_or_else(|| format!("{}: no finite basis certified", s.name))?;
                    if let Some(bad) = fam.iter().position(|f| !a.in_degree_zero(f)) {
                        return Err(format!("`{}` is not annihilated by D", family.split(',').nth(bad).unwrap_or("").trim()));
                    }
                    let modules = suite::cover_modules(a);
                    suite::timed(|| vec![suite::cover_family_report(s, &fam, &modules)])
                }
                None => suite::run_check(name, &subjects, seed)?,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = ver4_cli::seed_from_env().and_then(|seed| run(&cli, seed).map(|r| RunDocument::new(seed, r)));
    match result {
        Ok(doc) => {
            if cli.json {
                println!("{}", doc.to_json());
            } else {
                print!("{}", doc.to_text());
            }
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
