//! Command line front end over the exact checks: reads the JSON file
//! formats of the library, prints a report, and signals the outcome
//! through the exit code. 0 means every check passed, 1 means some
//! mathematical check failed, 2 means the input could not be read.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use parakahler::catalog::{self, VerificationRun};
use parakahler::json::{
    ClassificationJson, KlsaJson, KSymplecticJson, KxkJson, LowDimJson, MatrixJson, ProductJson,
    RFamilyJson, ReportJson, RunJson, SubspaceJson, TwoFormJson,
};
use parakahler::ksymplectic::{verify_kparakahler, verify_ksymplectic, KSymplecticData};
use parakahler::lie::check_lie;
use parakahler::lowdim::{check_lowdim_jacobi, classify};
use parakahler::lsa::{gelfand, CommAssocAlgebra};
use parakahler::phantom::{build_phantom, check_compatibility};
use parakahler::rmatrix::{check_quasi_sk, check_sk_matrix};
use parakahler::{AxiomReport, Error};

#[derive(Parser)]
#[command(name = "parakahler", version, about = "Exact checks for k-para-Kahler structures")]
struct Cli {
    /// Emit machine-readable JSON instead of the plain report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry and the Jacobi identity of a bracket file.
    VerifyLie { file: PathBuf },
    /// Check the k-symplectic axioms of a bracket with forms.
    VerifyKs { file: PathBuf },
    /// Check the full para-Kahler axioms, including the complement.
    VerifyKpk { file: PathBuf },
    /// Check a family of products for pairwise left symmetry.
    VerifyKlsa { file: PathBuf },
    /// Check a product grid together with its bracket.
    VerifyKxk { file: PathBuf },
    /// Build the double of a compatible pair and emit it as JSON.
    Phantom {
        /// Product grid on the base space.
        #[arg(long)]
        kxk: PathBuf,
        /// Family of products on the dual.
        #[arg(long)]
        klsa: PathBuf,
        /// Write the double here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a symmetric matrix family against a product family.
    VerifySk {
        #[arg(long)]
        klsa: PathBuf,
        #[arg(long)]
        r: PathBuf,
        /// Check the quasi identity instead of the strict one.
        #[arg(long)]
        quasi: bool,
        /// Check the weak form of the quasi identity.
        #[arg(long)]
        quasi_weak: bool,
    },
    /// Build the product family induced by two commuting derivations.
    Gelfand { file: PathBuf },
    /// Classify a covector-and-endomorphism spec in dimension k+1.
    LowdimClassify { file: PathBuf },
    /// Verify a whole catalog table at sampled parameters.
    Catalog {
        #[arg(long)]
        table: u8,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, serde_json::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Parse(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

fn exit_class(e: &CliError) -> u8 {
    match e {
        CliError::Io(..) | CliError::Parse(..) => 2,
        CliError::Core(e) => match e {
            Error::NotAntisymmetric { .. }
            | Error::DegenerateStructure(_)
            | Error::SingularPairing(_)
            | Error::NotADerivation { .. }
            | Error::DerivationsDoNotCommute(..)
            | Error::HypothesisViolation(_)
            | Error::ConstraintViolation { .. } => 1,
            _ => 2,
        },
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(path.into(), e))
}

fn emit<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization of plain data")
}

fn print_report(report: &AxiomReport, json: bool) -> bool {
    if json {
        println!("{}", emit(&ReportJson::from_report(report)));
    } else if report.passed() {
        println!("PASS");
    } else {
        println!("FAIL");
        for f in &report.failures {
            println!("  {} {:?}: {}", f.axiom, f.witness, f.residual);
        }
    }
    report.passed()
}

fn gelfand_products(file: &Path, json: bool) -> Result<bool, CliError> {
    #[derive(serde::Deserialize)]
    struct GelfandJson {
        product: ProductJson,
        derivations: Vec<MatrixJson>,
    }
    let doc: GelfandJson = read_json(file)?;
    if doc.derivations.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "{} derivations listed, the construction takes exactly 2",
            doc.derivations.len()
        ))
        .into());
    }
    let algebra = CommAssocAlgebra::new(doc.product.to_product()?)?;
    let d1 = doc.derivations[0].to_mat()?;
    let d2 = doc.derivations[1].to_mat()?;
    let family = gelfand(&algebra, &[d1, d2])?;
    let report = family.check();
    if json {
        println!("{}", emit(&KlsaJson::from_klsa(&family)));
    } else {
        for (alpha, product) in family.products().iter().enumerate() {
            let terms = ProductJson::from_product(product).terms;
            println!("product {}: {} nonzero terms", alpha + 1, terms.len());
            for (i, j, l, c) in terms {
                println!("  e{} * e{} -> {} e{}", i, j, c, l);
            }
        }
        print_report(&report, false);
    }
    Ok(report.passed())
}

fn phantom_out(kxk: &Path, klsa: &Path, out: Option<&Path>) -> Result<bool, CliError> {
    let matrix = read_json::<KxkJson>(kxk)?.to_kxk()?;
    let family = read_json::<KlsaJson>(klsa)?.to_klsa()?;
    let outcome = check_compatibility(&family, &matrix)?;
    let phantom = build_phantom(&family, &matrix)?;
    let doc = KSymplecticJson {
        k: phantom.k(),
        n: phantom.n(),
        bracket: ProductJson::from_bracket(phantom.bracket()),
        h: SubspaceJson::from_subspace(&phantom.h_subspace()),
        thetas: phantom.rhos().iter().map(TwoFormJson::from_form).collect(),
        p: Some(SubspaceJson::from_subspace(&phantom.p_subspace())),
    };
    match out {
        Some(path) => {
            fs::write(path, emit(&doc)).map_err(|e| CliError::Io(path.into(), e))?;
        }
        None => println!("{}", emit(&doc)),
    }
    if !(outcome.compatible() && outcome.double_jacobi.passed()) {
        let mut report = AxiomReport::ok();
        report.merge(outcome.family_axioms);
        report.merge(outcome.matrix_axioms);
        report.merge(outcome.phi_cocycle);
        report.merge(outcome.psi_cocycle);
        report.merge(outcome.double_jacobi);
        for f in &report.failures {
            eprintln!("{} {:?}: {}", f.axiom, f.witness, f.residual);
        }
        return Ok(false);
    }
    Ok(true)
}

fn lowdim(file: &Path, json: bool) -> Result<bool, CliError> {
    let spec = read_json::<LowDimJson>(file)?.to_spec()?;
    let jacobi = check_lowdim_jacobi(&spec);
    if !jacobi.passed() {
        print_report(&jacobi, json);
        return Ok(false);
    }
    let result = classify(&spec)?;
    if json {
        println!("{}", emit(&ClassificationJson::from_result(&result)));
    } else {
        println!("case {}", result.case_tag);
        for (name, value) in &result.parameters {
            println!("  {} = {}", name, value);
        }
        println!("witness columns (new basis in the original coordinates):");
        for row in MatrixJson::from_mat(&result.witness).rows {
            println!("  [{}]", row.join(", "));
        }
        print_report(&result.verified, false);
    }
    Ok(result.verified.passed())
}

fn catalog_table(table: u8, samples: usize, seed: u64, json: bool) -> Result<bool, CliError> {
    let runs = catalog::run_table(table, samples, seed)?;
    let all = runs.iter().all(VerificationRun::passed);
    if json {
        let out: Vec<RunJson> = runs.iter().map(RunJson::from_run).collect();
        println!("{}", emit(&out));
        return Ok(all);
    }
    for run in &runs {
        let assignment: Vec<String> = run
            .assignment
            .iter()
            .map(|(name, value)| format!("{name} = {value}"))
            .collect();
        let verdict = if run.passed() { "PASS" } else { "FAIL" };
        println!("{verdict} {} sample {} ({})", run.entry, run.sample, assignment.join(", "));
        if let Some(first) = run.report.failures.first() {
            println!("  {} {:?}: {}", first.axiom, first.witness, first.residual);
        }
        if let Some(discrepancy) = &run.discrepancy {
            println!("  {}", discrepancy);
        }
        if let Some(note) = &run.convention_note {
            println!("  note: {}", note);
        }
    }
    let passed = runs.iter().filter(|r| r.passed()).count();
    println!("{} of {} runs passed", passed, runs.len());
    Ok(all)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::VerifyLie { file } => {
            let product = read_json::<ProductJson>(file)?.to_product()?;
            Ok(print_report(&check_lie(&product), cli.json))
        }
        Command::VerifyKs { file } => {
            let data: KSymplecticData = read_json::<KSymplecticJson>(file)?.to_data()?;
            Ok(print_report(&verify_ksymplectic(&data), cli.json))
        }
        Command::VerifyKpk { file } => {
            let data = read_json::<KSymplecticJson>(file)?.to_data()?;
            Ok(print_report(&verify_kparakahler(&data)?, cli.json))
        }
        Command::VerifyKlsa { file } => {
            let family = read_json::<KlsaJson>(file)?.to_klsa()?;
            Ok(print_report(&family.check(), cli.json))
        }
        Command::VerifyKxk { file } => {
            let matrix = read_json::<KxkJson>(file)?.to_kxk()?;
            Ok(print_report(&matrix.check(), cli.json))
        }
        Command::Phantom { kxk, klsa, out } => phantom_out(kxk, klsa, out.as_deref()),
        Command::VerifySk { klsa, r, quasi, quasi_weak } => {
            let family = read_json::<KlsaJson>(klsa)?.to_klsa()?;
            let tensors = read_json::<RFamilyJson>(r)?.to_family()?;
            if tensors.n() != family.dim() || tensors.k() != family.k() {
                return Err(Error::DimensionMismatch(format!(
                    "matrix family is {} forms of size {}, the products need {} of size {}",
                    tensors.k(),
                    tensors.n(),
                    family.k(),
                    family.dim()
                ))
                .into());
            }
            let report = if *quasi_weak {
                check_quasi_sk(&family, &tensors, true)
            } else if *quasi {
                check_quasi_sk(&family, &tensors, false)
            } else {
                check_sk_matrix(&family, &tensors)
            };
            Ok(print_report(&report, cli.json))
        }
        Command::Gelfand { file } => gelfand_products(file, cli.json),
        Command::LowdimClassify { file } => lowdim(file, cli.json),
        Command::Catalog { table, samples, seed } => {
            catalog_table(*table, *samples, *seed, cli.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_class(&e))
        }
    }
}
