use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use matfold_cli::report::to_json;
use matfold_cli::scenarios;
use matfold_core::diffop::builtin::{
    kj_eigenvalue, kj_pq, krall_laguerre_eigenvalue, krall_laguerre_op, laguerre_eigenvalue,
    laguerre_op,
};
use matfold_core::diffop::{fold_operator_2x2, fold_operator_general, ScalarDiffOp};
use matfold_core::eigen::{solve_operator_space, MatFamily, SolveConfig};
use matfold_core::exact::poly::format_poly_csv;
use matfold_core::exact::rational::{format_rational, parse_rational};
use matfold_core::recurrence::{
    family_recurrence, moment_gram, scalar_symmetrize, MomentFunctional,
};
use matfold_core::residue::{fold_family, split};
use matfold_core::{
    DegreeBounds, Error, Family, FamilyKind, FamilySpec, FoldConfig, Poly, Rational,
};

#[derive(Parser)]
#[command(
    name = "matfold",
    version,
    about = "Exact matrix folding of orthogonal polynomial families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Family as "kind:alpha=p/q,beta=p/q,R=p/q".
    #[arg(long, conflicts_with = "kind")]
    family: Option<String>,
    /// laguerre, jacobi, krall-laguerre or krall-jacobi.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, default_value = "0")]
    alpha: String,
    #[arg(long, default_value = "0")]
    beta: String,
    #[arg(long = "r", default_value = "0")]
    r: String,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        if let Some(s) = &self.family {
            return s.parse();
        }
        let kind: FamilyKind = self
            .kind
            .as_deref()
            .ok_or_else(|| Error::Parse("--family or --kind is required".into()))?
            .parse()?;
        let (a, b, r) = (
            parse_rational(&self.alpha)?,
            parse_rational(&self.beta)?,
            parse_rational(&self.r)?,
        );
        let spec = match kind {
            FamilyKind::Laguerre => FamilySpec::laguerre(a),
            FamilyKind::JacobiMonic => FamilySpec::jacobi(a, b),
            FamilyKind::KrallLaguerre => FamilySpec::krall_laguerre(a, r),
            FamilyKind::KrallJacobi => FamilySpec::krall_jacobi(a, b, r),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Clone)]
struct FoldArgs {
    /// Block size N.
    #[arg(long = "n", default_value_t = 2)]
    n: usize,
    /// Shift a: residues are taken in powers of (x - a).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    /// Pre-substitution x -> s x + c.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pre_s: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pre_c: String,
}

impl FoldArgs {
    fn config(&self) -> Result<FoldConfig, Error> {
        FoldConfig::new(self.n)?
            .with_shift(parse_rational(&self.a)?)
            .with_pre(parse_rational(&self.pre_s)?, parse_rational(&self.pre_c)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Residue split of a polynomial.
    Split {
        /// Coefficients low to high, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "n")]
        n: usize,
        /// Only this residue.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        /// Print comma-separated coefficients instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Matrix polynomial P_n of a folded family.
    Fold {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        fold: FoldArgs,
        #[arg(long)]
        index: usize,
    },
    /// Scalar polynomial p_n of a family.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        index: usize,
    },
    /// Applies the family's built-in scalar operator to p_n.
    Apply {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        index: usize,
    },
    /// Folds the family's built-in scalar operator.
    FoldOp {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        fold: FoldArgs,
        /// Degree bound 2k for A_k instead of k.
        #[arg(long)]
        double_bounds: bool,
    },
    /// All operators of order <= m with the folded family as eigenfunctions.
    SolveSpace {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        fold: FoldArgs,
        /// Preset family: kj-generic, kj-shift or krall-laguerre.
        #[arg(long)]
        scenario: Option<String>,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        double_bounds: bool,
        /// Print only the dimension and provenance.
        #[arg(long)]
        summary: bool,
    },
    /// Scalar symmetrization of the family's banded recurrence.
    Symmetrize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
    /// Gram block of P_m and P_n against the square-root Laguerre weight.
    Gram {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long = "n")]
        n: usize,
        /// Add (2/R) delta_0 to the top-left entry.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Runs a named scenario and prints its report.
    Scenario {
        name: String,
        /// Omit timings.
        #[arg(long)]
        comparable: bool,
    },
    /// Lists the registered scenarios.
    ListScenarios,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Eigenvalue = Box<dyn Fn(usize) -> Rational>;

fn builtin_op(spec: &FamilySpec) -> Result<(ScalarDiffOp, Eigenvalue), Error> {
    let (a, b, r) = (spec.alpha.clone(), spec.beta.clone(), spec.r.clone());
    Ok(match spec.kind {
        FamilyKind::Laguerre => (laguerre_op(&a), Box::new(laguerre_eigenvalue)),
        FamilyKind::KrallLaguerre => (
            krall_laguerre_op(&a, &r),
            Box::new(move |n| krall_laguerre_eigenvalue(&r, n)),
        ),
        FamilyKind::KrallJacobi => (
            kj_pq(&a, &b, &r),
            Box::new(move |n| kj_eigenvalue(&a, &b, &r, n)),
        ),
        FamilyKind::JacobiMonic => {
            return Err(Error::InvalidParameter(
                "no built-in operator for jacobi".into(),
            ))
        }
    })
}

fn preset(name: &str) -> Result<FamilySpec, Error> {
    match name {
        "kj-generic" => "krall-jacobi:alpha=3/2,beta=7/8,R=7".parse(),
        "kj-shift" => "krall-jacobi:alpha=1/2,beta=3/2,R=2".parse(),
        "krall-laguerre" => "krall-laguerre:alpha=1,R=2".parse(),
        other => Err(Error::InvalidParameter(format!("unknown preset {other:?}"))),
    }
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Split {
            poly,
            n,
            m,
            a,
            text,
        } => {
            let p = Poly::parse(&poly)?;
            let cfg = FoldConfig::new(n)?.with_shift(parse_rational(&a)?);
            let parts = split(&p, &cfg).0;
            let chosen: Vec<&Poly> = match m {
                Some(m) if m >= n => {
                    return Err(Failure::Usage(format!("m = {m} must be below N = {n}")))
                }
                Some(m) => vec![&parts[m]],
                None => parts.iter().collect(),
            };
            if text {
                for q in chosen {
                    let _ = writeln!(std::io::stdout().lock(), "{}", format_poly_csv(q));
                }
            } else if m.is_some() {
                print(&to_json(chosen[0]));
            } else {
                print(&to_json(&parts));
            }
        }
        Command::Fold {
            family,
            fold,
            index,
        } => {
            let spec = family.spec()?;
            let p = fold_family(&Family::new(spec.clone())?, &fold.config()?, index)?;
            print(
                &json!({ "family": spec, "fold": fold.config()?, "index": index, "p": to_json(&p) }),
            );
        }
        Command::Family { family, index } => {
            let spec = family.spec()?;
            let p = Family::new(spec.clone())?.poly(index)?;
            print(&json!({ "family": spec, "index": index, "p": to_json(&p) }));
        }
        Command::Apply { family, index } => {
            let spec = family.spec()?;
            let (op, lambda) = builtin_op(&spec)?;
            let p = Family::new(spec.clone())?.poly(index)?;
            let lp = op.apply(&p);
            let ev = lambda(index);
            print(&json!({
                "family": spec,
                "index": index,
                "result": to_json(&lp),
                "eigenvalue": format_rational(&ev),
                "is_eigenfunction": lp == p.scale(&ev),
            }));
        }
        Command::FoldOp {
            family,
            fold,
            double_bounds,
        } => {
            let spec = family.spec()?;
            let (op, _) = builtin_op(&spec)?;
            let cfg = fold.config()?;
            let b = if cfg.n == 2
                && cfg.a == Rational::from_integer(0.into())
                && !cfg.has_pre()
                && !double_bounds
            {
                fold_operator_2x2(&op)
            } else {
                let bounds = DegreeBounds::double(op.order());
                fold_operator_general(&op, &cfg, Some(&bounds))?
            };
            print(&json!({ "family": spec, "fold": cfg, "operator": to_json(&b) }));
        }
        Command::SolveSpace {
            family,
            fold,
            scenario,
            max_order,
            double_bounds,
            summary,
        } => {
            let spec = match &scenario {
                Some(name) => preset(name)?,
                None => family.spec()?,
            };
            let cfg = fold.config()?;
            let mut solve = SolveConfig::new(max_order);
            if double_bounds {
                solve = solve.with_bounds(DegreeBounds::double(max_order));
            }
            let fam = if cfg.n == 1 && !cfg.has_pre() && cfg.a == Rational::from_integer(0.into()) {
                MatFamily::scalar(Family::new(spec.clone())?)
            } else {
                MatFamily::folded(Family::new(spec.clone())?, cfg.clone())
            };
            let res = solve_operator_space(&fam, &solve)?;
            if summary {
                print(&json!({
                    "family": spec,
                    "max_order": max_order,
                    "dimension": res.dimension,
                    "provenance": to_json(&res.provenance),
                }));
            } else {
                print(
                    &json!({ "family": spec, "fold": cfg, "max_order": max_order, "result": to_json(&res) }),
                );
            }
        }
        Command::Symmetrize { family, n_max } => {
            let spec = family.spec()?;
            let rec = family_recurrence(&spec, n_max + 3)?;
            let res = scalar_symmetrize(&rec, n_max)?;
            print(&json!({ "family": spec, "n_max": n_max, "result": to_json(&res) }));
        }
        Command::Gram {
            family,
            m,
            n,
            delta,
        } => {
            let spec = family.spec()?;
            let mut w = MomentFunctional::sqrt_laguerre(&spec.alpha)?;
            if let Some(r) = &delta {
                w = w.with_delta0(&parse_rational(r)?)?;
            }
            let f = Family::new(spec.clone())?;
            let cfg = FoldConfig::new(2)?;
            let g = moment_gram(&fold_family(&f, &cfg, m)?, &fold_family(&f, &cfg, n)?, &w)?;
            print(&json!({ "family": spec, "m": m, "n": n, "gram": to_json(&g) }));
        }
        Command::Scenario { name, comparable } => {
            let report = scenarios::run(&name)
                .ok_or_else(|| Failure::Usage(format!("unknown scenario {name:?}")))?;
            if comparable {
                print(&report.comparable());
            } else {
                print(&to_json(&report));
            }
            if !report.pass() {
                return Err(Failure::Checks);
            }
        }
        Command::ListScenarios => {
            for s in scenarios::SCENARIOS {
                let _ = writeln!(std::io::stdout().lock(), "{:<24} {}", s.name, s.summary);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
