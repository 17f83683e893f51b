//! Command dispatch.

use admissible_core::numeric::{binomial, weight};
use admissible_core::perm::enumerate_admissible;
use admissible_core::{Kind, Rule, Session, TameRelation};

use crate::cli::{Command, EvalArgs, Function, RunConfig};
use crate::output::{destination, emit, Cell, Format, Table};
use crate::{bench, converge, verify, walkdata, CliError, Result};

/// Runs one command, writing its output.
pub fn run(config: &RunConfig) -> Result<()> {
    let session = Session::new();
    let (stem, table) = match &config.command {
        Command::Eval(args) => {
            let value = eval(&session, args)?;
            let text = match config.format {
                Format::Plain => format!("{value}\n"),
                f => {
                    let mut t = Table::new(vec!["value"]);
                    t.push(vec![Cell::Text(value)]);
                    t.render(f)
                }
            };
            return emit(config.out.as_deref(), &text);
        }
        Command::Verify { suite, n } => {
            let checks = verify::run(*suite, *n, config.jobs)?;
            let text = match config.format {
                Format::Plain => verify::checks_plain(&checks),
                f => verify::checks_table(&checks).render(f),
            };
            emit(config.out.as_deref(), &text)?;
            let failed: Vec<&str> = checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
            return Ok(());
        }
        Command::Enumerate { n } => ("enumerate", enumerate_table(*n)?),
        Command::Walkdata { n } => ("walkdata", walkdata::walk_table(&session, *n)?),
        Command::Converge { n, x } => ("converge", converge::converge_table(&session, n, x)?),
        Command::Bench { n, rules, samples } => {
            let rules: Vec<Rule> = rules.iter().map(|&r| r.into()).collect();
            let timings = bench::run(&rules, n, *samples, config.seed)?;
            ("bench", bench::bench_table(&timings))
        }
    };
    let dest = destination(
        config.out.as_deref(),
        config.out_dir.as_deref(),
        stem,
        config.format,
    );
    emit(dest.as_deref(), &table.render(config.format))
}

fn need<T: Clone>(v: &Option<T>, name: &str, function: Function) -> Result<T> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("{function:?} needs --{name}")))
}

fn relation(args: &EvalArgs) -> Result<TameRelation> {
    let f = args.function;
    let kind: Kind = need(&args.kind, "kind", f)?.into();
    let n = need(&args.n, "n", f)?;
    let i = need(&args.i, "i", f)?;
    Ok(TameRelation::new(kind, n, i, if kind.is_pair() { Some(need(&args.j, "j", f)?) } else { None })?)
}

/// Evaluates `args.function` as an exact decimal string.
pub fn eval(s: &Session, args: &EvalArgs) -> Result<String> {
    let f = args.function;
    let n = || need(&args.n, "n", f);
    let k = || need(&args.k, "k", f);
    let value: String = match f {
        Function::Binomial => binomial(n()?, need(&args.i, "i", f)?)?.to_string(),
        Function::Sbc => s.sbc(n()?, need(&args.i, "i", f)?)?.to_string(),
        Function::Weight => weight(&k()?).to_string(),
        Function::Istep => s.istep(n()?, &k()?)?.to_string(),
        Function::Walk => s.level(n()?)?.walk_value(&k()?)?.to_string(),
        Function::Quantile => s.level(n()?)?.quantile_value(&k()?)?.to_string(),
        Function::Ew => s.ew(need(&args.j, "j", f)?, &need(&args.t, "t", f)?)?.to_string(),
        Function::Beta => s
            .beta_rank(n()?, need(&args.j, "j", f)?, &need(&args.m, "m", f)?)?
            .to_string(),
        Function::F => s.f(n()?, &k()?)?.to_string(),
        Function::InvF => s.inv_f(n()?, &need(&args.m, "m", f)?)?.to_string(),
        Function::G => s.g(n()?, &k()?)?.to_string(),
        Function::H => s.h(n()?, &k()?)?.to_string(),
        Function::Card => s.card(&relation(args)?, &k()?)?.to_string(),
        Function::Member => s.member(&relation(args)?, &k()?)?.to_string(),
        Function::Size => s.size(&relation(args)?)?.to_string(),
        Function::Enumerate => s
            .enumerate(&relation(args)?, &need(&args.t, "t", f)?)?
            .to_string(),
    };
    Ok(value)
}

/// One row per admissible permutation: its index and images of `0..2^n`.
pub fn enumerate_table(n: u32) -> Result<Table> {
    let mut table = Table::new(vec!["index", "images"]);
    for (idx, pi) in enumerate_admissible(n)?.enumerate() {
        let images: Vec<String> = pi.as_slice().iter().map(|v| v.to_string()).collect();
        table.push(vec![Cell::int(idx), Cell::Text(images.join(" "))]);
    }
    Ok(table)
}

