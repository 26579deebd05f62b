mod report;
mod sweep;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sqtile::certify::ComponentKind;
use sqtile::constructions::{Params, Registry};
use sqtile::realize::{realize_with, Request};
use sqtile::{Error, Stratum};

use report::{Report, CSV_HEADER};

#[derive(Parser)]
#[command(name = "sqtile", version, about = "Square-tiled surfaces and Thurston-Veech degree certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one surface of a named family and certify it.
    Construct {
        /// generic, spin0_multi, spin0_min_deg2, spin0_min, hyp_X, hyp_Y or hyp_staircase_long
        family: String,
        /// Family parameters as key=value
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// Find a surface in a given component with a given trace-field degree.
    Realize {
        #[arg(long)]
        genus: usize,
        /// Zero orders, comma separated
        #[arg(long)]
        stratum: String,
        /// hyp, even, odd, nonhyp, unique or any
        #[arg(long, default_value = "any")]
        component: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 100)]
        y_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// Realize every (stratum, component, degree) cell up to a genus; CSV on stdout.
    VerifyTheorems {
        #[arg(long, default_value_t = 3)]
        g_max: usize,
        #[arg(long, default_value_t = 100)]
        y_budget: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List surfaces along the dispatch routes whose stretch factor has odd degree.
    ExploreOdd {
        #[arg(long, default_value_t = 4)]
        g_max: usize,
        #[arg(long, default_value_t = 30)]
        y_budget: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SearchExhausted(_) | Error::UnreachableCombination(_) => 4,
        Error::InternalInconsistency(_)
        | Error::NonIntegralIntersection(_)
        | Error::NonExactDivision
        | Error::ZeroPolynomial
        | Error::NoRealRoot
        | Error::IntervalAmbiguous => 3,
        _ => 2,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

/// Writes a line to stdout; a closed pipe is not an error worth reporting.
fn out(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit(rep: &Report, fmt: Out, ms: u128) {
    match fmt {
        Out::Json => out(&rep.to_json()),
        Out::Csv => {
            out(CSV_HEADER);
            out(&rep.csv_row(ms));
        }
    }
}

fn construct(family: &str, params: &[String], out: Out) -> Result<(), Error> {
    let t = Instant::now();
    let registry = Registry::standard();
    let p = Params::parse(params.iter().map(|s| s.as_str()))?;
    let o = registry.build(family, &p)?;
    let mut timings = BTreeMap::new();
    timings.insert("build", t.elapsed().as_millis());
    let request = json!({
        "command": "construct",
        "family": family,
        "params": p.iter().collect::<BTreeMap<_, _>>(),
    });
    let rep = Report::build(request, o, None, timings)?;
    emit(&rep, out, t.elapsed().as_millis());
    Ok(())
}

fn realize(genus: usize, stratum: &str, component: &str, degree: usize, y_max: usize, out: Out) -> Result<(), Error> {
    let t = Instant::now();
    let stratum: Stratum = stratum.parse()?;
    let component = match component {
        "any" => None,
        c => Some(c.parse::<ComponentKind>()?),
    };
    let req = Request { genus, stratum, component, degree, y_max };
    let request = json!({
        "command": "realize",
        "genus": genus,
        "stratum": req.stratum,
        "component": component.map(|c| c.as_str()).unwrap_or("any"),
        "degree": degree,
        "y_max": y_max,
    });
    let r = realize_with(&Registry::standard(), &req)?;
    let rep = Report::from_realization(request, r, t.elapsed().as_millis())?;
    emit(&rep, out, t.elapsed().as_millis());
    Ok(())
}

fn verify_theorems(g_max: usize, y_budget: usize, jobs: usize) -> ExitCode {
    if g_max < 2 {
        return fail(&Error::InvalidParam("--g-max must be at least 2".into()));
    }
    let t = Instant::now();
    let results = sweep::verify(g_max, y_budget, jobs);
    out(CSV_HEADER);
    for r in &results {
        out(&r.csv());
    }
    let failed: Vec<_> = results.iter().filter(|r| r.outcome.is_err()).collect();
    eprintln!("{} cells, {} failed, {} ms", results.len(), failed.len(), t.elapsed().as_millis());
    if failed.is_empty() {
        return ExitCode::SUCCESS;
    }
    for r in &failed {
        let c = &r.cell;
        let Err(e) = &r.outcome else { continue };
        eprintln!("failed: g={} stratum={} component={} d={}: {e}", c.genus, c.stratum, c.component, c.degree);
    }
    ExitCode::from(4)
}

fn explore_odd(g_max: usize, y_budget: usize, jobs: usize) -> Result<(), Error> {
    let hits = sweep::explore_odd(g_max, y_budget, jobs)?;
    out("genus,stratum,component,route,value,stretch_degree");
    for h in &hits {
        out(&format!("{},\"{}\",{},{},{},{}", h.genus, h.stratum, h.component, h.route, h.value, h.degree));
    }
    let mut seen: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for h in &hits {
        let v = seen.entry(h.genus).or_default();
        if !v.contains(&h.degree) {
            v.push(h.degree);
        }
    }
    for (g, mut ds) in seen {
        ds.sort_unstable();
        eprintln!("genus {g}: odd stretch degrees observed {ds:?}");
    }
    eprintln!("{} surfaces with odd stretch degree (a sample, not a classification)", hits.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match cli.cmd {
        Cmd::Construct { family, params, out } => construct(&family, &params, out),
        Cmd::Realize { genus, stratum, component, degree, y_max, out } => {
            realize(genus, &stratum, &component, degree, y_max, out)
        }
        Cmd::VerifyTheorems { g_max, y_budget, jobs } => return verify_theorems(g_max, y_budget, jobs),
        Cmd::ExploreOdd { g_max, y_budget, jobs } => explore_odd(g_max, y_budget, jobs),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
