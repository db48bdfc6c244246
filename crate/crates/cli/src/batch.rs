use std::fmt::Write;

use rayon::prelude::*;
use stabhom_core::symplectic::graph_state;
use stabhom_core::{invariant_table, local_invariants, FieldPrime, Graph, GraphFamily};

use crate::report::render_table;
use crate::CliError;

const GOLDEN: &str = include_str!("../tests/golden/tables.txt");

const FULL: &[(GraphFamily, usize)] = &[
    (GraphFamily::Path, 2),
    (GraphFamily::Path, 3),
    (GraphFamily::Star, 4),
    (GraphFamily::Cycle, 4),
    (GraphFamily::Star, 5),
    (GraphFamily::D, 5),
    (GraphFamily::Path, 5),
    (GraphFamily::Cycle, 5),
];

const FIRST_ORDER: &[(GraphFamily, usize)] = &[
    (GraphFamily::Star, 6),
    (GraphFamily::AffineD, 6),
    (GraphFamily::D, 6),
    (GraphFamily::E6, 6),
    (GraphFamily::Path, 6),
    (GraphFamily::Cycle, 6),
    (GraphFamily::Star, 7),
    (GraphFamily::AffineD, 7),
    (GraphFamily::D, 7),
    (GraphFamily::E7, 7),
    (GraphFamily::AffineE6, 7),
    (GraphFamily::Path, 7),
    (GraphFamily::Cycle, 7),
];

enum Job {
    Full(GraphFamily, usize),
    First(GraphFamily, usize),
}

fn run_job(job: &Job) -> Result<String, CliError> {
    let (fam, n) = match *job {
        Job::Full(f, n) | Job::First(f, n) => (f, n),
    };
    let (l, s) = graph_state(&Graph::family(fam, n)?, FieldPrime::TWO)?;
    let mut out = String::new();
    match job {
        Job::Full(..) => {
            writeln!(out, "{} {n}", fam.name()).unwrap();
            out.push_str(&render_table(invariant_table(&l, &s)?.rows(), n));
        }
        Job::First(..) => {
            let row = local_invariants(&l, &s, 1)?;
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(out, "{} {n}: {}", fam.name(), cells.join(" ")).unwrap();
        }
    }
    Ok(out)
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("STABHOM_THREADS") {
        let n = v
            .parse::<usize>()
            .map_err(|_| CliError::Input(format!("STABHOM_THREADS={v:?} is not a number")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Failed(format!("thread pool: {e}")))
}

/// Full tables for the small reference states, first-order rows for the larger ones.
pub fn tables() -> Result<String, CliError> {
    let jobs: Vec<Job> = FULL
        .iter()
        .map(|&(f, n)| Job::Full(f, n))
        .chain(FIRST_ORDER.iter().map(|&(f, n)| Job::First(f, n)))
        .collect();
    let parts = pool()?.install(|| jobs.par_iter().map(run_job).collect::<Result<Vec<_>, _>>())?;
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        // blank line between full tables, first-order rows packed together
        if i > 0 && i <= FULL.len() {
            out.push('\n');
        }
        out.push_str(p);
    }
    Ok(out)
}

pub fn table_one() -> Result<String, CliError> {
    let out = tables()?;
    if out != GOLDEN {
        let first = out
            .lines()
            .zip(GOLDEN.lines())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| out.lines().count().min(GOLDEN.lines().count()));
        return Err(CliError::Failed(format!(
            "{out}\nmismatch against the golden tables at line {}",
            first + 1
        )));
    }
    Ok(out)
}
