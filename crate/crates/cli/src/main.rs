use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ktg_core::associator::solve_associator;
use ktg_core::evaluator::{Correctors, Evaluator};
use ktg_core::harness::{self, Check, SUITES};
use ktg_core::ops;
use ktg_core::quotient;
use ktg_core::series::Series;
use ktg_core::skeleton::Skeleton;
use ktg_core::word::Word;
use ktg_core::{fixtures, words, KtgError, Rat};

#[derive(Parser)]
#[command(name = "ktg", version, about = "Chord diagrams and a truncated Kontsevich integral for trivalent graphs")]
struct Cli {
    /// Quotient cache directory (overrides KTG_CACHE_DIR; "off" disables).
    #[arg(long, global = true)]
    cache_dir: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quotient dimensions in degrees 0..=N.
    Dim {
        /// Fixture name (circle, theta, dumbbell, tetrahedron, strands3, strands+-, ...) or skeleton file.
        #[arg(long)]
        skeleton: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Also divide by the one-term relation.
        #[arg(long)]
        one_term: bool,
    },
    /// Reduce a series file to normal form.
    NormalForm {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        one_term: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a Morse word.
    Eval {
        /// Word file, or the name of a shipped word (hump, theta, ...).
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Invariant::Z3)]
        invariant: Invariant,
        /// Corrector family parameter, an exact rational p/q.
        #[arg(long, default_value = "1/2")]
        x: Rat,
        /// Write the result as a series file instead of printing terms.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an induced map to a series file.
    Op {
        #[arg(long)]
        series: PathBuf,
        /// switch:e<i>, delete:e<i>, unzip:e<i>, unzip-renormalized:e<i>, or connsum:e<i>:<series file>:e<j>.
        #[arg(long)]
        apply: String,
        /// Family parameter for unzip-renormalized.
        #[arg(long, default_value = "1/2")]
        x: Rat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for the even rational associator.
    SolveAssociator {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run check suites; exits 0 iff every check passes.
    Check {
        /// relations, associator, moves, syzygies, ops, identities, reidemeister, scale, framing or all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Family parameter; defaults to checking 0, 1/2 and 1.
        #[arg(long)]
        x: Option<Rat>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Z2,
    Z3,
}

fn io(e: std::io::Error) -> KtgError {
    KtgError::Io(e.to_string())
}

fn read(p: &Path) -> Result<String, KtgError> {
    std::fs::read_to_string(p).map_err(|e| KtgError::Io(format!("{}: {e}", p.display())))
}

fn resolve_skeleton(s: &str) -> Result<Skeleton, KtgError> {
    if let Some(sk) = fixtures::by_name(s) {
        return Ok(sk);
    }
    Skeleton::parse(&read(Path::new(s))?)
}

fn load_series(p: &Path) -> Result<Series, KtgError> {
    Series::parse(&read(p)?, resolve_skeleton)
}

/// A word file, the same path with `.word` appended, or a shipped word
/// named by the path's last component.
fn load_word(s: &str) -> Result<Word, KtgError> {
    let p = Path::new(s);
    if p.is_file() {
        return Word::parse(&read(p)?);
    }
    let with_ext = PathBuf::from(format!("{s}.word"));
    if with_ext.is_file() {
        return Word::parse(&read(&with_ext)?);
    }
    let stem = p.file_stem().and_then(|x| x.to_str()).unwrap_or(s);
    words::word(stem)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), KtgError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn terms_text(s: &Series) -> String {
    let mut terms: Vec<_> = s.terms.iter().collect();
    terms.sort_by(|a, b| (a.0.degree(), a.0).cmp(&(b.0.degree(), b.0)));
    let mut out = String::new();
    for (d, x) in terms {
        out.push_str(&format!("{x} · {}\n", d.chord_string()));
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out
}

fn edge_arg(s: &str) -> Result<usize, KtgError> {
    let bad = || KtgError::Parse { line: 0, msg: format!("expected e<i>, got '{s}'") };
    let k: usize = s.strip_prefix('e').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    k.checked_sub(1).ok_or_else(bad)
}

fn apply_op(s: &Series, op: &str, x: &Rat) -> Result<Series, KtgError> {
    let parts: Vec<&str> = op.split(':').collect();
    match parts.as_slice() {
        ["switch", e] => ops::switch_map(s, edge_arg(e)?),
        ["delete", e] => ops::delete_map(s, edge_arg(e)?),
        ["unzip", e] => ops::unzip_map(s, edge_arg(e)?),
        ["unzip-renormalized", e] => {
            let corr = Evaluator::new(s.order)?.family(x)?;
            ops::unzip_renormalized(s, edge_arg(e)?, &corr.lam.invert()?, &corr.y.invert()?)
        }
        ["connsum", e, file, f] => {
            let other = load_series(Path::new(file))?;
            ops::connsum_map(s, edge_arg(e)?, &other, edge_arg(f)?)
        }
        _ => Err(KtgError::Parse { line: 0, msg: format!("unknown operation '{op}'") }),
    }
}

fn run(cli: Cli) -> Result<bool, KtgError> {
    match cli.cmd {
        Cmd::Dim { skeleton, degree, one_term } => {
            let sk = resolve_skeleton(&skeleton)?;
            for n in 0..=degree {
                println!("degree {n} dim {}", quotient::quotient(&sk, n, one_term)?.dim());
            }
        }
        Cmd::NormalForm { series, one_term, out } => {
            let s = load_series(&series)?;
            let nf = if one_term {
                let mut c = ktg_core::combo::Combo::new();
                for k in 0..=s.order {
                    let q = quotient::quotient(&s.sk, k, true)?;
                    ktg_core::combo::axpy(&mut c, &Rat::one(), &q.normal_form(&s.degree_part(k))?);
                }
                s.with_terms(c)
            } else {
                s.normal_form()?
            };
            emit(&nf.to_text("inline"), &out)?;
        }
        Cmd::Eval { word, degree, invariant, x, out } => {
            let w = load_word(&word)?;
            let ev = Evaluator::new(degree)?;
            let corr = match invariant {
                Invariant::Z2 => Correctors::trivial(degree),
                Invariant::Z3 => ev.family(&x)?,
            };
            let z = ev.eval(&w, &corr)?.normal_form()?;
            match out {
                Some(_) => emit(&z.to_text("inline"), &out)?,
                None => print!("{}", terms_text(&z)),
            }
        }
        Cmd::Op { series, apply, x, out } => {
            let s = load_series(&series)?;
            emit(&apply_op(&s, &apply, &x)?.to_text("inline"), &out)?;
        }
        Cmd::SolveAssociator { degree, out } => {
            let a = solve_associator(degree)?;
            emit(&a.phi.to_text("strands3"), &out)?;
        }
        Cmd::Check { suite, degree, x } => {
            let names: Vec<&str> = if suite.iter().any(|s| s == "all") {
                SUITES.to_vec()
            } else {
                suite.iter().map(|s| s.as_str()).collect()
            };
            if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
                return Err(KtgError::Parse { line: 0, msg: format!("unknown suite '{bad}'") });
            }
            let xs = match x {
                Some(x) => vec![x],
                None => vec![Rat::zero(), Rat::new(1, 2), Rat::one()],
            };
            let ev = Evaluator::new(degree)?;
            let results: Vec<(&str, Result<Vec<Check>, KtgError>)> =
                names.par_iter().map(|n| (*n, harness::run_suite(n, &ev, &xs))).collect();
            let mut ok = true;
            for (name, r) in results {
                match r {
                    Ok(checks) => {
                        for c in checks {
                            ok &= c.pass;
                            println!("SUITE {name} {} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
                        }
                    }
                    Err(e) => {
                        ok = false;
                        println!("SUITE {name} FAIL error: {e}");
                    }
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(d) = &cli.cache_dir {
        std::env::set_var("KTG_CACHE_DIR", d);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
