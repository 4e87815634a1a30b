use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use invpoly::enumerate::{self, BBound, EnumerationSpec};
use invpoly::formats::{self, to_json, ClassifyJson, CleaveJson, GorensteinJson, MilnorJson, SymmetryJson, TreeJson};
use invpoly::input::{read_polynomial, Input};
use invpoly::limits::limits_from_env;
use invpoly::{CliError, ExitCode};
use invpoly_core::{
    augment, classify, cleave_step, cokernel_torsion_order, decompose, gamma_structure, gorenstein_reduce,
    milnor_brute, milnor_closed, vgit_lambda, weight_system, Atom, BStrategy, Classification, ExponentMatrix,
    MilnorReport,
};

/// Exceptional collections of invertible polynomials: classification, Milnor
/// numbers, cleaves and their decompositions.
///
/// POLY is either text such as `x1^2*x2 + x2^3`, a JSON exponent matrix
/// `{"monomials": [[2,1],[0,3]]}`, or `-` to read standard input.
///
/// Exit codes: 0 success, 1 verification failure, 2 parse error,
/// 3 not invertible, 4 limits or configuration error.
#[derive(Debug, Parser)]
#[command(name = "invpoly", version)]
struct Cli {
    /// Output format; `dot` is only available for `decompose`.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    /// b = 2 at every cleave.
    Min,
    /// b = a_n, the last exponent of the atom.
    Max,
    /// b = d^T / r_n; only for atoms whose transpose weights divide d^T.
    Gorenstein,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Atoms, weight systems of w and w^T, and the maximal symmetry group.
    Classify { poly: String },
    /// Milnor number of w (or w^T) from the closed forms or the Jacobian ring.
    ///
    /// The Jacobian-ring computation honours INVPOLY_LIMITS, e.g.
    /// `INVPOLY_LIMITS=max_monomials=500000,max_socle=10000`.
    Milnor {
        poly: String,
        /// Compute dim C[x]/<dw> by graded linear algebra and cross-check the closed form.
        #[arg(long)]
        brute: bool,
        /// Use the Berglund–Hübsch transpose w^T.
        #[arg(long)]
        transpose: bool,
    },
    /// Symmetry group, and for an n x (n+1) matrix (or `--b`) the minors,
    /// primitive weights and cokernel torsion.
    Symmetry {
        poly: String,
        /// Augment the selected atom by x_{n+1}^b first.
        #[arg(long)]
        b: Option<u32>,
        /// 1-based atom index for `--b` when the input is a sum.
        #[arg(long, default_value_t = 1)]
        atom: usize,
    },
    /// One cleave of a loop or chain atom with exponent b on the new variable.
    Cleave {
        poly: String,
        #[arg(long)]
        b: u32,
        /// 1-based atom index when the input is a sum.
        #[arg(long, default_value_t = 1)]
        atom: usize,
    },
    /// Recursive cleave decomposition; its length equals mu(w^T).
    Decompose {
        poly: String,
        #[arg(long, value_enum, default_value_t = Strategy::Min)]
        strategy: Strategy,
        /// Use this fixed b at every cleave instead of a strategy.
        #[arg(long, conflicts_with = "strategy")]
        b: Option<u32>,
    },
    /// Gorenstein reduction with b = d^T / r_n down to a Fermat sum.
    Gorenstein { poly: String },
    /// Enumerate atoms, cleaves and small sums and verify identities.
    Enumerate {
        /// Comma-separated subset of fermat,chain,loop (or `all`).
        #[arg(long, default_value = "all")]
        kinds: String,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 2)]
        min_exp: u32,
        #[arg(long, default_value_t = 4)]
        max_exp: u32,
        /// Largest b: an integer, `an` (the atom's last exponent) or `an+K`.
        #[arg(long, default_value = "an+2")]
        b_max: String,
        /// Comma-separated subset of identity,signs,minors,torsion,tree-length,gorenstein,oracle (or `all`).
        #[arg(long, default_value = "all")]
        checks: String,
        /// Also check sums of up to this many atoms (tree-length, gorenstein, oracle).
        #[arg(long, default_value_t = 1)]
        max_atoms: usize,
        /// Skip sums with mu(w) above this bound.
        #[arg(long)]
        max_mu: Option<u64>,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
        /// Print only failed and skipped records, then the summary.
        #[arg(long)]
        quiet: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { ExitCode::LimitsOrConfig } else { ExitCode::Ok };
            process::exit(code as i32);
        }
    };
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    process::exit(code as i32);
}

fn load(poly: &str) -> Result<Input, CliError> {
    let input = read_polynomial(poly)?;
    for w in &input.warnings {
        eprintln!("warning: {w}");
    }
    Ok(input)
}

fn require_format(cli: &Cli, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&cli.format) {
        Ok(())
    } else {
        Err(CliError::Config(format!("--format {:?} is not available for this command", cli.format).to_lowercase()))
    }
}

fn pick_atom(c: &Classification, index: usize) -> Result<&Atom, CliError> {
    index
        .checked_sub(1)
        .and_then(|i| c.atoms.get(i))
        .ok_or_else(|| CliError::Config(format!("--atom {index}: the polynomial has {} atom(s)", c.atoms.len())))
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let text_or_json = [Format::Text, Format::Json];
    match &cli.command {
        Command::Classify { poly } => {
            require_format(cli, &text_or_json)?;
            let m = load(poly)?.matrix;
            let c = classify(&m)?;
            let w = weight_system(&m).map_err(|e| CliError::NotInvertible(e.to_string()))?;
            let wt =
                weight_system(&m.transpose().expect("square")).map_err(|e| CliError::NotInvertible(e.to_string()))?;
            let g = gamma_structure(&m);
            let report = ClassifyJson::new(&m, &c, &w, &wt, &g);
            match cli.format {
                Format::Json => print!("{}", to_json(&report)),
                _ => print!("{}", formats::classify_text(&report, &g)),
            }
        }
        Command::Milnor { poly, brute, transpose } => {
            require_format(cli, &text_or_json)?;
            let m = load(poly)?.matrix;
            return milnor(cli, &m, *brute, *transpose);
        }
        Command::Symmetry { poly, b, atom } => {
            require_format(cli, &text_or_json)?;
            let m = load(poly)?.matrix;
            let w = match b {
                Some(b) => {
                    let c = classify(&m)?;
                    augment(pick_atom(&c, *atom)?, *b).map_err(CliError::from)?
                }
                None => m,
            };
            return symmetry(cli, &w);
        }
        Command::Cleave { poly, b, atom } => {
            require_format(cli, &text_or_json)?;
            let m = load(poly)?.matrix;
            let c = classify(&m)?;
            let step = cleave_step(pick_atom(&c, *atom)?, *b)?;
            match cli.format {
                Format::Json => print!("{}", to_json(&CleaveJson::from(&step))),
                _ => print!("{}", formats::cleave_text(&step)),
            }
        }
        Command::Decompose { poly, strategy, b } => {
            let m = load(poly)?.matrix;
            let strategy = match (b, strategy) {
                (Some(b), _) => BStrategy::Fixed(*b),
                (None, Strategy::Min) => BStrategy::Min,
                (None, Strategy::Max) => BStrategy::Max,
                (None, Strategy::Gorenstein) => BStrategy::Gorenstein,
            };
            let tree = decompose(&m, strategy)?;
            match cli.format {
                Format::Json => print!("{}", to_json(&TreeJson::from(&tree))),
                Format::Dot => print!("{}", formats::tree_dot(&tree)),
                Format::Text => print!("{}", formats::tree_text(&tree)),
            }
        }
        Command::Gorenstein { poly } => {
            require_format(cli, &text_or_json)?;
            let m = load(poly)?.matrix;
            let report = GorensteinJson::new(&m, &gorenstein_reduce(&m)?);
            match cli.format {
                Format::Json => print!("{}", to_json(&report)),
                _ => print!("{}", report.to_text()),
            }
        }
        Command::Enumerate { kinds, max_vars, min_exp, max_exp, b_max, checks, max_atoms, max_mu, jobs, quiet } => {
            require_format(cli, &text_or_json)?;
            let config = |e: enumerate::SpecError| CliError::Config(e.to_string());
            let spec = EnumerationSpec {
                kinds: enumerate::parse_kinds(kinds).map_err(config)?,
                max_vars: *max_vars,
                min_exp: *min_exp,
                max_exp: *max_exp,
                b_max: b_max.parse::<BBound>().map_err(config)?,
                max_atoms: *max_atoms,
                max_mu: *max_mu,
                checks: enumerate::parse_checks(checks).map_err(config)?,
                limits: limits_from_env()?,
            };
            let report = enumerate::run(&spec, *jobs).map_err(config)?;
            for r in report.records.iter().filter(|r| !quiet || r.status != enumerate::Status::Pass) {
                match cli.format {
                    Format::Json => println!("{}", serde_json::to_string(r).expect("records serialize")),
                    _ => println!("{}", r.to_text()),
                }
            }
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::json!({ "summary": &report.summary }))
                }
                _ => print!("{}", report.summary.to_text()),
            }
            if report.summary.total.fail > 0 {
                return Ok(ExitCode::VerificationFailed);
            }
        }
    }
    Ok(ExitCode::Ok)
}

fn milnor(cli: &Cli, m: &ExponentMatrix, brute: bool, transpose: bool) -> Result<ExitCode, CliError> {
    let classified = classify(m);
    let closed = match &classified {
        Ok(c) => Some(milnor_closed(c, transpose)?),
        Err(e) if !brute => return Err(e.clone().into()),
        Err(_) => None,
    };
    let report = if brute {
        let target = if transpose {
            m.transpose().map_err(|e| CliError::NotInvertible(format!("not invertible: {e}")))?
        } else {
            m.clone()
        };
        milnor_brute(&target, &limits_from_env()?)?
    } else {
        MilnorReport::closed(closed.clone().expect("classified"))
    };
    let json = MilnorJson::new(m, transpose, &report);
    match cli.format {
        Format::Json => print!("{}", to_json(&json)),
        _ => print!("{}", json.to_text(&report.value)),
    }
    match closed {
        Some(c) if c != report.value => {
            eprintln!("error: closed form gives {c}, Jacobian ring gives {}", report.value);
            Ok(ExitCode::VerificationFailed)
        }
        _ => Ok(ExitCode::Ok),
    }
}

fn symmetry(cli: &Cli, w: &ExponentMatrix) -> Result<ExitCode, CliError> {
    let g = gamma_structure(w);
    let (vgit, torsion) =
        if w.cols() == w.rows() + 1 { (Some(vgit_lambda(w)?), Some(cokernel_torsion_order(w))) } else { (None, None) };
    match cli.format {
        Format::Json => {
            let json = SymmetryJson {
                polynomial: formats::polynomial(w),
                gamma: (&g).into(),
                vgit: vgit.as_ref().map(Into::into),
                cokernel_torsion: torsion.as_ref().map(Into::into),
            };
            print!("{}", to_json(&json))
        }
        _ => print!("{}", formats::symmetry_text(w, &g, vgit.as_ref(), torsion.as_ref())),
    }
    if let (Some(v), Some(t)) = (&vgit, &torsion) {
        if &v.gcd != t {
            eprintln!("error: gcd of minors {} differs from cokernel torsion {t}", v.gcd);
            return Ok(ExitCode::VerificationFailed);
        }
    }
    Ok(ExitCode::Ok)
}
