//! Command definitions and drivers. Every driver returns its report text and
//! exit code instead of printing, so runs can be compared byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nlie_core::algebra::check_fundamental_identity;
use nlie_core::an_solver::{derive_constraint_space, exhaustive_grid, linearize_compatibility, verify_an_families};
use nlie_core::bialgebra::{check_compatibility_constants, check_compatibility_tensor, dualize, Bialgebra};
use nlie_core::catalog::{
    canonical_algebra, classify, example_bialgebra, example_coalgebra_top, simple_an_any, CanonicalLabel,
};
use nlie_core::coalgebra::{check_coalgebra_dual, check_coalgebra_tensor, rank, tensor_route_size};
use nlie_core::extension::{
    check_ad_invariance, extend_algebra_metric, extend_algebra_trivial, extend_bialgebra, extend_bialgebra_dual,
    extend_form, BilinearForm,
};
use nlie_core::random::{random_bracket, random_comultiplication, rng_for};
use nlie_core::report::ValidationReport;
use nlie_core::Error;

use crate::format::{emit, parse, NlieDocument};

/// Above this many tensor coordinates the tensor coalgebra route is skipped.
pub const TENSOR_ROUTE_CAP: u128 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "nlie", version, about = "Exact checks for n-Lie algebras, coalgebras and bialgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check that applies to the file
    Validate { file: PathBuf },
    /// Print the rank of the comultiplication
    Rank { file: PathBuf },
    /// Write the dual bialgebra
    Dual {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write the two-dimensional extension of arity n+1
    Extend(ExtendArgs),
    /// Print the canonical label of an (n+1)-dimensional n-Lie algebra
    Classify { file: PathBuf },
    /// Write a catalog structure: a canonical label, `an`, `top` or `example`
    Catalog {
        label: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Sample comultiplications of A_n and check which give bialgebras
    SolveAn {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also walk every coefficient matrix with entries in {-1, 0, 1}
        #[arg(long)]
        grid: bool,
    },
    /// Compare the two routes of the coalgebra and compatibility checks on random input
    Fuzz {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    pub file: PathBuf,
    /// Use the zero form
    #[arg(long, conflicts_with = "form")]
    pub trivial: bool,
    /// Read the form from the `form` section of this file
    #[arg(long)]
    pub form: Option<PathBuf>,
    /// Put the form on the dual side instead
    #[arg(long)]
    pub dual: bool,
    #[arg(short)]
    pub o: Option<PathBuf>,
}

/// What a command produced.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Rank { file } => rank_cmd(&file),
        Command::Dual { file, o } => dual(&file, o.as_deref()),
        Command::Extend(args) => extend(&args),
        Command::Classify { file } => classify_cmd(&file),
        Command::Catalog { label, n, o } => catalog(&label, n, o.as_deref()),
        Command::SolveAn { n, trials, seed, grid } => solve_an(n, trials, seed, grid),
        Command::Fuzz { n, m, trials, seed } => fuzz(n, m, trials, seed),
    };
    result.unwrap_or_else(|o| o)
}

type Run = Result<Outcome, Outcome>;

fn load(path: &Path) -> Result<NlieDocument, Outcome> {
    let text = fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn write_doc(doc: &NlieDocument, out: Option<&Path>) -> Run {
    let text = emit(doc);
    match out {
        Some(p) => {
            fs::write(p, &text).map_err(|e| Outcome::usage(format!("{}: {e}", p.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn library_error(e: Error) -> Outcome {
    match e {
        Error::Rejected { what, report } => Outcome {
            code: 1,
            stdout: format!("{report}\n"),
            stderr: format!("error: {what}\n"),
        },
        other => Outcome::usage(other.to_string()),
    }
}

fn validate(path: &Path) -> Run {
    let doc = load(path)?;
    let mut checks: Vec<(&str, Option<ValidationReport>)> = Vec::new();
    let mut stderr = String::new();
    if let Some(mu) = &doc.mu {
        checks.push(("fundamental_identity", Some(check_fundamental_identity(mu))));
        if let Some(form) = &doc.form {
            checks.push(("ad_invariance", Some(check_ad_invariance(mu, form).map_err(library_error)?)));
        }
    }
    if let Some(delta) = &doc.delta {
        checks.push(("coalgebra_dual", Some(check_coalgebra_dual(delta))));
        let size = tensor_route_size(doc.arity, doc.dim);
        if size > TENSOR_ROUTE_CAP {
            stderr += &format!("warning: coalgebra_tensor skipped, {size} coordinates exceed {TENSOR_ROUTE_CAP}\n");
            checks.push(("coalgebra_tensor", None));
        } else {
            checks.push(("coalgebra_tensor", Some(check_coalgebra_tensor(delta))));
        }
    }
    if let (Some(mu), Some(delta)) = (&doc.mu, &doc.delta) {
        let b = Bialgebra::new(mu.clone(), delta.clone()).map_err(library_error)?;
        checks.push(("compatibility_constants", Some(check_compatibility_constants(&b))));
        checks.push(("compatibility_tensor", Some(check_compatibility_tensor(&b))));
    }
    if checks.is_empty() {
        return Err(Outcome::usage("nothing to validate: the file has no mu or delta section"));
    }
    checks.sort_by_key(|c| c.0);
    let mut out = String::new();
    let mut total = 0;
    for (name, report) in &checks {
        match report {
            None => out += &format!("{name}: skipped\n"),
            Some(r) if r.is_empty() => out += &format!("{name}: ok\n"),
            Some(r) => {
                total += r.len();
                out += &format!("{name}: {} violation{}\n", r.len(), if r.len() == 1 { "" } else { "s" });
                for v in r.violations() {
                    out += &format!("  {v}\n");
                }
            }
        }
    }
    out += &if total == 0 { "result: ok\n".to_string() } else { format!("result: {total} violations\n") };
    Ok(Outcome {
        code: i32::from(total > 0),
        stdout: out,
        stderr,
    })
}

fn rank_cmd(path: &Path) -> Run {
    let doc = load(path)?;
    let delta = doc.delta.as_ref().ok_or_else(|| Outcome::usage("the file has no delta section"))?;
    Ok(Outcome::ok(format!("{}\n", rank(delta))))
}

fn dual(path: &Path, out: Option<&Path>) -> Run {
    let doc = load(path)?;
    if doc.mu.is_none() && doc.delta.is_none() {
        return Err(Outcome::usage("the file has no mu or delta section"));
    }
    let b = Bialgebra::new(doc.mu_or_zero(), doc.delta_or_zero()).map_err(library_error)?;
    let d = dualize(&b).map_err(library_error)?;
    let mut res = NlieDocument::new(doc.arity, doc.dim);
    res.name = doc.name.as_ref().map(|n| format!("{n}-dual"));
    res.mu = Some(d.mu().clone());
    res.delta = Some(d.delta().clone());
    write_doc(&res, out)
}

fn extend(args: &ExtendArgs) -> Run {
    let doc = load(&args.file)?;
    let form = if args.trivial {
        None
    } else if let Some(p) = &args.form {
        let f = load(p)?;
        Some(f.form.ok_or_else(|| Outcome::usage(format!("{}: no form section", p.display())))?)
    } else if let Some(f) = &doc.form {
        Some(f.clone())
    } else {
        return Err(Outcome::usage("give --trivial or --form, or put a form section in the file"));
    };
    if let Some(f) = &form {
        if f.dim() != doc.dim {
            return Err(Outcome::usage(format!("form has dimension {}, expected {}", f.dim(), doc.dim)));
        }
    }
    let mut res = NlieDocument::new(doc.arity + 1, doc.dim + 2);
    res.name = doc.name.as_ref().map(|n| format!("{n}-ext"));
    res.comments.push(format!(
        "extended indices: 1 = x_-1, 2 = x_0, i+2 = x_i for i = 1..{}",
        doc.dim
    ));
    let zero = BilinearForm::zero(doc.dim);
    let b = form.as_ref().unwrap_or(&zero);
    if args.dual {
        let mu = doc.mu.as_ref().ok_or_else(|| Outcome::usage("--dual needs a mu section"))?;
        let delta = doc.delta.as_ref().ok_or_else(|| Outcome::usage("--dual needs a delta section"))?;
        let bi = Bialgebra::new(mu.clone(), delta.clone()).map_err(library_error)?;
        let e = extend_bialgebra_dual(&bi, b).map_err(library_error)?;
        res.mu = Some(e.mu().clone());
        res.delta = Some(e.delta().clone());
    } else if let Some(delta) = &doc.delta {
        let bi = Bialgebra::new(doc.mu_or_zero(), delta.clone()).map_err(library_error)?;
        let e = extend_bialgebra(&bi, b).map_err(library_error)?;
        res.mu = Some(e.mu().clone());
        res.delta = Some(e.delta().clone());
        if form.is_some() {
            res.form = Some(extend_form(b, doc.arity));
        }
    } else {
        let mu = doc.mu.as_ref().ok_or_else(|| Outcome::usage("the file has no mu or delta section"))?;
        let fi = check_fundamental_identity(mu);
        if !fi.is_empty() {
            return Err(library_error(Error::Rejected {
                what: "input is not an n-Lie algebra".into(),
                report: fi,
            }));
        }
        res.mu = Some(match &form {
            Some(f) => extend_algebra_metric(mu, f).map_err(library_error)?,
            None => extend_algebra_trivial(mu).map_err(library_error)?,
        });
        if let Some(f) = &form {
            res.form = Some(extend_form(f, doc.arity));
        }
    }
    write_doc(&res, args.o.as_deref())
}

fn classify_cmd(path: &Path) -> Run {
    let doc = load(path)?;
    let mu = doc.mu.as_ref().ok_or_else(|| Outcome::usage("the file has no mu section"))?;
    let c = classify(mu).map_err(library_error)?;
    Ok(Outcome::ok(format!("{c}\n")))
}

fn catalog(label: &str, n: usize, out: Option<&Path>) -> Run {
    let err = |e: Error| Outcome::usage(e.to_string());
    let mut doc = NlieDocument::new(n, n + 1);
    doc.name = Some(label.to_string());
    match label {
        "an" => doc.mu = Some(simple_an_any(n).map_err(err)?),
        "top" => doc.delta = Some(example_coalgebra_top(n).map_err(err)?),
        "example" => {
            let b = example_bialgebra(n).map_err(err)?;
            doc.mu = Some(b.mu().clone());
            doc.delta = Some(b.delta().clone());
        }
        other => {
            let l: CanonicalLabel = other.parse().map_err(err)?;
            doc.mu = Some(canonical_algebra(n, &l).map_err(err)?);
            doc.name = Some(l.to_string());
        }
    }
    write_doc(&doc, out)
}

fn solve_an(n: usize, trials: usize, seed: u64, grid: bool) -> Run {
    let report = verify_an_families(n, trials, seed).map_err(|e| Outcome::usage(e.to_string()))?;
    let mut out = format!("{report}\n");
    let mut ok = report.all_passed();
    if grid {
        let space = derive_constraint_space(n).map_err(|e| Outcome::usage(e.to_string()))?;
        out += &format!(
            "solution space: compatibility {} constraints {} equal {}\n",
            space.compatibility_dim, space.constraint_dim, space.equal
        );
        ok &= space.equal;
        if n == 3 {
            let lin = linearize_compatibility(n).map_err(|e| Outcome::usage(e.to_string()))?;
            let g = exhaustive_grid(&lin);
            out += &format!(
                "grid: {} cases, constraints hold {}, compatible {}, disagreements {}\n",
                g.cases, g.constraints_hold, g.compatible, g.disagreements
            );
            ok &= g.disagreements == 0;
        } else {
            out += "grid: only run at n = 3\n";
        }
    }
    Ok(Outcome {
        code: i32::from(!ok),
        stdout: out,
        stderr: String::new(),
    })
}

fn fuzz(n: usize, m: usize, trials: usize, seed: u64) -> Run {
    if n < 2 || m < 1 {
        return Err(Outcome::usage("needs n >= 2 and m >= 1"));
    }
    let size = tensor_route_size(n, m);
    if size > TENSOR_ROUTE_CAP {
        return Err(Outcome::usage(format!("{size} tensor coordinates exceed {TENSOR_ROUTE_CAP}")));
    }
    let mut out = format!("fuzz n={n} m={m} trials={trials} seed={seed}\n");
    let (mut co_agree, mut co_valid, mut cp_agree, mut cp_valid) = (0, 0, 0, 0);
    let mut failures = Vec::new();
    for t in 0..trials {
        let mut rng = rng_for(seed, t as u64);
        let d = random_comultiplication(&mut rng, n, m);
        let (a, b) = (check_coalgebra_dual(&d).is_empty(), check_coalgebra_tensor(&d).is_empty());
        if a == b {
            co_agree += 1;
            co_valid += usize::from(a);
        } else {
            failures.push(format!("trial {t}: coalgebra dual route {a}, tensor route {b}"));
        }
        let bi = Bialgebra::new(random_bracket(&mut rng, n, m), random_comultiplication(&mut rng, n, m))
            .expect("shapes agree");
        let (a, b) = (check_compatibility_tensor(&bi).is_empty(), check_compatibility_constants(&bi).is_empty());
        if a == b {
            cp_agree += 1;
            cp_valid += usize::from(a);
        } else {
            failures.push(format!("trial {t}: compatibility tensor route {a}, constants route {b}"));
        }
    }
    out += &format!("coalgebra routes: {co_agree}/{trials} agree, {co_valid} valid\n");
    out += &format!("compatibility routes: {cp_agree}/{trials} agree, {cp_valid} valid\n");
    for f in &failures {
        out += &format!("  {f}\n");
    }
    out += if failures.is_empty() { "result: ok\n" } else { "result: FAILED\n" };
    Ok(Outcome {
        code: i32::from(!failures.is_empty()),
        stdout: out,
        stderr: String::new(),
    })
}
