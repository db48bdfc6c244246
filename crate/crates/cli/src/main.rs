mod batch;
mod problem;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use stabhom_core::cohomology::{invariant_table_upto, local_invariants};
use stabhom_core::duality::{check_perfect, middle_symplectic};
use stabhom_core::simplicial::codim1_oracle;
use stabhom_core::structure::{coarsen, discard, external_sum, ghz_extraction, internal_sum, SplitStep};
use stabhom_core::symplectic::random_subspace;
use stabhom_core::{local_invariants_rel, Error, Graph, GraphFamily};

use problem::{graph_problem, ProblemFile, State};
use report::{DegreeRank, DualityReport, GhzReport, MiddleFormReport, OracleOutput, Report, Step};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Precondition(String),
    Core(Error),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Failed(_) => 1,
            CliError::Core(e) => match e {
                Error::NotPrime(_)
                | Error::DimensionMismatch { .. }
                | Error::FieldMismatch(..)
                | Error::NotIsotropic(..)
                | Error::InvalidFamilySize { .. }
                | Error::InvalidGraph(_) => 2,
                Error::NotLagrangian | Error::NotContained | Error::DegreeOutOfRange { .. } | Error::Precondition(_) => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Precondition(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "stabhom", version, about = "Homological invariants of multi-party stabilizer states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of invariants h^{kj}.
    Invariants {
        /// Problem file, or `-` for stdin.
        input: Option<String>,
        /// Highest exterior degree to compute.
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Recompute the named reference states and compare with the golden file.
        #[arg(long = "tableI", conflicts_with = "input")]
        table_one: bool,
    },
    /// Duality pairing ranks in every degree.
    Duality {
        input: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Count and split off all-party GHZ summands.
    Ghz {
        input: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Regroup parties; `--map "0,0,1,1"` sends party i to the i-th entry.
    Coarsen {
        input: String,
        #[arg(long)]
        map: String,
    },
    /// Trace out the listed parties.
    Discard {
        input: String,
        #[arg(long)]
        parties: String,
    },
    /// Internal or external sum of two states (external by default).
    Product {
        first: String,
        second: String,
        /// Same parties, qudits placed side by side.
        #[arg(long, conflicts_with = "external")]
        internal: bool,
        /// Disjoint union of the party sets.
        #[arg(long)]
        external: bool,
    },
    /// Emit the problem file of a named graph state.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Compare the sheaf and simplicial computations on a random hyperplane of L.
    Oracle {
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(PathBuf::from(path)).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<(ProblemFile, State), CliError> {
    let pf = ProblemFile::parse(&read_input(path)?)?;
    let st = pf.to_state()?;
    Ok((pf, st))
}

fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CliError::Input(format!("not an index: {t:?}"))))
        .collect()
}

fn report(command: &str, input: ProblemFile, parties: usize) -> Report {
    Report {
        command: command.into(),
        input,
        parties,
        table: None,
        duality: None,
        ghz: None,
        oracle: None,
        timing_ms: 0.0,
    }
}

fn emit(r: &Report, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        Format::Csv => match &r.table {
            Some(t) => report::render_csv(t),
            None => return Err(CliError::Input("csv output is only available for invariant tables".into())),
        },
        Format::Table => r.render_text(),
    })
}

fn emit_problem(st: &State) -> String {
    serde_json::to_string(&st.to_problem()).expect("problems serialize") + "\n"
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&p| mask >> p & 1 == 1).collect()
}

fn run(cli: Cli) -> Result<String, CliError> {
    let start = Instant::now();
    let finish = |mut r: Report, format: Format| {
        r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
        emit(&r, format)
    };
    match cli.command {
        Command::Invariants {
            table_one: true, ..
        } => batch::table_one(),
        Command::Invariants {
            input, kmax, format, ..
        } => {
            let path = input.ok_or_else(|| CliError::Input("an input file (or -) is required".into()))?;
            let (pf, st) = load(&path)?;
            let t = invariant_table_upto(&st.l, &st.structure, kmax.unwrap_or(usize::MAX))?;
            let mut r = report("invariants", pf, st.structure.num_parties());
            r.table = Some(t.rows().to_vec());
            finish(r, format)
        }
        Command::Duality { input, format } => {
            let (pf, st) = load(&input)?;
            let (l, s) = (&st.l, &st.structure);
            if s.num_parties() < 2 {
                return Err(CliError::Precondition("duality needs at least two parties".into()));
            }
            let pr = check_perfect(l, s)?;
            let middle = if s.field().p() == 2 && s.num_parties() % 2 == 0 && s.is_lagrangian(l)? {
                let m = middle_symplectic(l, s)?;
                Some(MiddleFormReport {
                    degree: m.degree,
                    dim: m.dim(),
                    rank: m.rank,
                    alternating: m.is_alternating(),
                })
            } else {
                None
            };
            let mut r = report("duality", pf, s.num_parties());
            r.duality = Some(DualityReport {
                perfect: pr.is_perfect(),
                degrees: pr
                    .degrees
                    .iter()
                    .map(|d| DegreeRank {
                        left_degree: d.left_degree,
                        right_degree: d.right_degree,
                        rows: d.rows,
                        cols: d.cols,
                        rank: d.rank,
                    })
                    .collect(),
                dims: pr.dims,
                middle,
            });
            finish(r, format)
        }
        Command::Ghz { input, format } => {
            let (pf, st) = load(&input)?;
            let d = ghz_extraction(&st.l, &st.structure)?;
            let steps = d
                .steps
                .iter()
                .map(|s| match s {
                    SplitStep::Local { party, dim } => Step::Local {
                        party: *party,
                        dim: *dim,
                    },
                    SplitStep::Ghz { parties, witness } => Step::Ghz {
                        parties: members(*parties),
                        f: witness.f.clone(),
                        h: witness.h.clone(),
                    },
                })
                .collect();
            let mut r = report("ghz", pf, st.structure.num_parties());
            r.ghz = Some(GhzReport {
                count: d.ghz_count(),
                steps,
                remainder_qudits: d.remainder_structure.qudits().to_vec(),
                remainder_first_order: local_invariants(&d.remainder, &d.remainder_structure, 1)?,
            });
            finish(r, format)
        }
        Command::Coarsen { input, map } => {
            let (_, st) = load(&input)?;
            let phi = parse_list(&map)?;
            let target = phi.iter().max().map_or(0, |m| m + 1);
            let (l, s) = coarsen(&st.l, &st.structure, &phi, target)?;
            let names = (0..target)
                .map(|q| {
                    let group: Vec<&str> = (0..phi.len())
                        .filter(|&p| phi[p] == q)
                        .map(|p| st.names[p].as_str())
                        .collect();
                    if group.is_empty() {
                        format!("empty{q}")
                    } else {
                        group.join("+")
                    }
                })
                .collect();
            Ok(emit_problem(&State {
                names,
                structure: s,
                l,
            }))
        }
        Command::Discard { input, parties } => {
            let (_, st) = load(&input)?;
            let drop = parse_list(&parties)?;
            if let Some(&p) = drop.iter().find(|&&p| p >= st.structure.num_parties()) {
                return Err(CliError::Input(format!("no party {p}")));
            }
            let mask = drop.iter().fold(0u32, |m, &p| m | 1 << p);
            let (l, s) = discard(&st.l, &st.structure, mask)?;
            let names = (0..st.names.len())
                .filter(|p| mask >> p & 1 == 0)
                .map(|p| st.names[p].clone())
                .collect();
            Ok(emit_problem(&State {
                names,
                structure: s,
                l,
            }))
        }
        Command::Product {
            first,
            second,
            internal,
            ..
        } => {
            let (_, a) = load(&first)?;
            let (_, b) = load(&second)?;
            let (l, s, names) = if internal {
                let (l, s) = internal_sum(&a.l, &b.l, &a.structure, &b.structure)?;
                (l, s, a.names.clone())
            } else {
                let (l, s) = external_sum(&a.l, &b.l, &a.structure, &b.structure)?;
                let mut names = a.names.clone();
                names.extend(b.names.iter().cloned());
                (l, s, names)
            };
            Ok(emit_problem(&State {
                names,
                structure: s,
                l,
            }))
        }
        Command::Family { name, n, p } => {
            let fam = GraphFamily::from_name(&name)
                .ok_or_else(|| CliError::Input(format!("unknown graph family {name:?}")))?;
            let g = Graph::family(fam, n)?;
            let pf = graph_problem(&g, p);
            pf.to_state()?;
            Ok(serde_json::to_string(&pf).expect("problems serialize") + "\n")
        }
        Command::Oracle { input, seed, format } => {
            let (pf, st) = load(&input)?;
            let (l, s) = (&st.l, &st.structure);
            if l.dim() == 0 {
                return Err(CliError::Precondition("the oracle needs a nonzero subspace".into()));
            }
            let m = random_subspace(l, l.dim() - 1, seed);
            let o = codim1_oracle(l, &m, s)?;
            let sheaf = local_invariants_rel(l, &m, s)?;
            let simplicial = o.local_degrees();
            let mut r = report("oracle", pf, s.num_parties());
            r.oracle = Some(OracleOutput {
                hyperplane: m.basis_vectors().map(<[u32]>::to_vec).collect(),
                gamma_maximal_faces: o.gamma.maximal_faces().into_iter().map(members).collect(),
                agree: simplicial == sheaf,
                simplicial,
                sheaf,
            });
            finish(r, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("stabhom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
