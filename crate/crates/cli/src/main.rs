use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lamcat::algebra::Algebra;
use lamcat::clone::Theory;
use lamcat::lambda_theory::{initial_lambda_theory, interpret, lambda_extension_theory};
use lamcat::suite::{run_suite, SuiteConfig, SuiteName};
use lamcat::term::{parse_in, print, NormalizeOutcome, Signature};
use lamcat::{EqVerdict, Error, Reducer, Term};
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_DISTINCT: u8 = 3;

#[derive(Parser)]
#[command(name = "lamcat", version, about = "λ-terms, abstract clones and their check suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Reduction steps allowed per check.
    #[arg(long, default_value_t = lamcat::term::DEFAULT_FUEL, global = true)]
    fuel: usize,
    /// Also contract η-redexes.
    #[arg(long, global = true)]
    eta: bool,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
struct TermArgs {
    /// Free identifiers, outermost first.
    #[arg(long, value_delimiter = ',')]
    context: Vec<String>,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate finite clones instead of sampling them.
    #[arg(long)]
    exhaustive_finite: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a term.
    Norm {
        term: String,
        #[command(flatten)]
        ctx: TermArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Decide β-equality of two terms within the fuel bound.
    Eq {
        left: String,
        right: String,
        #[command(flatten)]
        ctx: TermArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Interpret a term in the initial λ-theory or an extension `lambda-ext:<file>`.
    Interpret {
        term: String,
        #[arg(long, default_value = "lambda")]
        theory: String,
        #[command(flatten)]
        ctx: TermArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run a check suite: paper, clone, lambda, representation, karoubi, fundamental, obstruction or all.
    Suite {
        name: String,
        #[command(flatten)]
        suite: SuiteArgs,
        #[command(flatten)]
        common: Common,
    },
    /// The karoubi suite.
    KaroubiSuite {
        #[command(flatten)]
        suite: SuiteArgs,
        #[command(flatten)]
        common: Common,
    },
    /// The fundamental suite.
    FundamentalSuite {
        #[command(flatten)]
        suite: SuiteArgs,
        #[command(flatten)]
        common: Common,
    },
}

fn reducer(c: &Common) -> Reducer {
    Reducer::with_fuel(c.fuel).with_eta(c.eta)
}

fn usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn verdict_code(v: EqVerdict) -> u8 {
    match v {
        EqVerdict::Equal => EXIT_OK,
        EqVerdict::Distinct => EXIT_DISTINCT,
        EqVerdict::Unknown { .. } => EXIT_INCONCLUSIVE,
    }
}

fn cmd_norm(text: &str, ctx: &TermArgs, common: &Common) -> ExitCode {
    let t = match parse_in(text, &ctx.context, &Signature::standard()) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let out = reducer(common).normalize_full(&t);
    let printed = print(out.term(), &ctx.context);
    let normal = matches!(out, NormalizeOutcome::NormalForm { .. });
    if common.json {
        let status = if normal { "normal_form" } else { "fuel_exhausted" };
        println!("{}", json!({"status": status, "term": printed, "steps": out.steps()}));
    } else if normal {
        println!("{printed}");
    } else {
        println!("fuel exhausted after {} steps: {printed}", out.steps());
    }
    ExitCode::from(if normal { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn cmd_eq(left: &str, right: &str, ctx: &TermArgs, common: &Common) -> ExitCode {
    let sig = Signature::standard();
    let (t, u) = match (parse_in(left, &ctx.context, &sig), parse_in(right, &ctx.context, &sig)) {
        (Ok(t), Ok(u)) => (t, u),
        (Err(e), _) | (_, Err(e)) => return usage(e),
    };
    let (v, steps) = reducer(common).eq_counted(&t, &u);
    let name = match v {
        EqVerdict::Equal => "Equal",
        EqVerdict::Distinct => "Distinct",
        EqVerdict::Unknown { .. } => "Unknown",
    };
    if common.json {
        println!("{}", json!({"verdict": name, "steps": steps}));
    } else {
        println!("{name} ({steps} steps)");
    }
    ExitCode::from(verdict_code(v))
}

fn cmd_interpret(text: &str, theory: &str, ctx: &TermArgs, common: &Common) -> ExitCode {
    let n = ctx.context.len();
    let result = (|| -> Result<(String, Term), Error> {
        let (theory, sig) = match theory.strip_prefix("lambda-ext:") {
            Some(path) => {
                let file = std::fs::read_to_string(PathBuf::from(path))
                    .map_err(|e| Error::AlgebraFile(format!("{path}: {e}")))?;
                let alg = Algebra::from_json(&file)?;
                (lambda_extension_theory(&alg)?, alg.signature())
            }
            None if theory == "lambda" => (initial_lambda_theory(), Signature::standard()),
            None => return Err(Error::AlgebraFile(format!("unknown theory `{theory}`"))),
        };
        let theory = theory.with_reducer(reducer(common));
        let t = parse_in(text, &ctx.context, &sig)?;
        let e = interpret(&t, n, &theory)?;
        let nf = theory.reducer().normalize_full(e.payload());
        Ok((theory.id().to_string(), nf.into_term()))
    })();
    match result {
        Ok((id, t)) => {
            let printed = print(&t, &ctx.context);
            if common.json {
                println!("{}", json!({"theory": id, "arity": n, "element": printed}));
            } else {
                println!("{printed}");
            }
            ExitCode::from(EXIT_OK)
        }
        Err(e) => usage(e),
    }
}

fn cmd_suite(name: SuiteName, suite: &SuiteArgs, common: &Common) -> ExitCode {
    let cfg = SuiteConfig {
        seed: suite.seed,
        fuel: common.fuel,
        eta: common.eta,
        exhaustive_finite: suite.exhaustive_finite,
    };
    let report = match run_suite(name, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::Inconclusive(_)) { EXIT_INCONCLUSIVE } else { EXIT_DISTINCT };
            return ExitCode::from(code);
        }
    };
    if common.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    let code = if report.summary.distinct > 0 {
        EXIT_DISTINCT
    } else if report.summary.unknown > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match &cli.command {
        Command::Norm { term, ctx, common } => cmd_norm(term, ctx, common),
        Command::Eq { left, right, ctx, common } => cmd_eq(left, right, ctx, common),
        Command::Interpret { term, theory, ctx, common } => cmd_interpret(term, theory, ctx, common),
        Command::Suite { name, suite, common } => match name.parse::<SuiteName>() {
            Ok(n) => cmd_suite(n, suite, common),
            Err(e) => usage(e),
        },
        Command::KaroubiSuite { suite, common } => cmd_suite(SuiteName::Karoubi, suite, common),
        Command::FundamentalSuite { suite, common } => cmd_suite(SuiteName::Fundamental, suite, common),
    }
}
