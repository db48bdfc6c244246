use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::problem::ProblemFile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeRank {
    pub left_degree: usize,
    pub right_degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MiddleFormReport {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub alternating: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub degrees: Vec<DegreeRank>,
    /// `(h^j(L), h^{|P|+2-j}(L^⊥))` for `j = 0..=|P|`.
    pub dims: Vec<(usize, usize)>,
    pub perfect: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle: Option<MiddleFormReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    Local { party: usize, dim: usize },
    Ghz { parties: Vec<usize>, f: Vec<Vec<u32>>, h: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhzReport {
    pub count: usize,
    pub steps: Vec<Step>,
    pub remainder_qudits: Vec<usize>,
    pub remainder_first_order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleOutput {
    pub hyperplane: Vec<Vec<u32>>,
    pub gamma_maximal_faces: Vec<Vec<usize>>,
    pub simplicial: Vec<usize>,
    pub sheaf: Vec<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: ProblemFile,
    pub parties: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghz: Option<GhzReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOutput>,
    pub timing_ms: f64,
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn render_table(rows: &[Vec<usize>], parties: usize) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1)
        .max(parties.to_string().len());
    let mut out = String::new();
    write!(out, "k\\j").unwrap();
    for j in 0..=parties {
        write!(out, " {j:>width$}").unwrap();
    }
    out.push('\n');
    for (k, row) in rows.iter().enumerate() {
        write!(out, "{k:>3}").unwrap();
        for x in row {
            write!(out, " {x:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn render_csv(rows: &[Vec<usize>]) -> String {
    let mut out = String::from("k,j,h\n");
    for (k, row) in rows.iter().enumerate() {
        for (j, h) in row.iter().enumerate() {
            writeln!(out, "{k},{j},{h}").unwrap();
        }
    }
    out
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.table {
            out.push_str(&render_table(t, self.parties));
        }
        if let Some(d) = &self.duality {
            writeln!(out, "   i    j  rows  cols  rank").unwrap();
            for g in &d.degrees {
                writeln!(
                    out,
                    "{:>4} {:>4} {:>5} {:>5} {:>5}",
                    g.left_degree, g.right_degree, g.rows, g.cols, g.rank
                )
                .unwrap();
            }
            let l: Vec<usize> = d.dims.iter().map(|x| x.0).collect();
            let r: Vec<usize> = d.dims.iter().map(|x| x.1).collect();
            writeln!(out, "h^j(L)            {}", join(&l, " ")).unwrap();
            writeln!(out, "h^(|P|+2-j)(L^⊥)  {}", join(&r, " ")).unwrap();
            if let Some(m) = &d.middle {
                writeln!(
                    out,
                    "middle degree {}: dim {}, rank {}, {}",
                    m.degree,
                    m.dim,
                    m.rank,
                    if m.alternating { "alternating" } else { "not alternating" }
                )
                .unwrap();
            }
            writeln!(out, "{}", if d.perfect { "perfect" } else { "not perfect" }).unwrap();
        }
        if let Some(g) = &self.ghz {
            writeln!(out, "ghz count: {}", g.count).unwrap();
            for (i, s) in g.steps.iter().enumerate() {
                match s {
                    Step::Local { party, dim } => {
                        writeln!(out, "step {}: local summand of dim {dim} at party {party}", i + 1).unwrap()
                    }
                    Step::Ghz { parties, f, h } => {
                        writeln!(out, "step {}: ghz over parties {}", i + 1, join(parties, ",")).unwrap();
                        for (p, v) in parties.iter().zip(f) {
                            writeln!(out, "  f[{p}] = {}", join(v, " ")).unwrap();
                        }
                        writeln!(out, "  h = {}", join(h, " ")).unwrap();
                    }
                }
            }
            writeln!(out, "remainder qudits: {}", join(&g.remainder_qudits, " ")).unwrap();
            writeln!(out, "remainder first order: {}", join(&g.remainder_first_order, " ")).unwrap();
        }
        if let Some(o) = &self.oracle {
            let faces: Vec<String> = o
                .gamma_maximal_faces
                .iter()
                .map(|f| format!("{{{}}}", join(f, ",")))
                .collect();
            writeln!(out, "gamma maximal faces: {}", faces.join(" ")).unwrap();
            writeln!(out, "simplicial: {}", join(&o.simplicial, " ")).unwrap();
            writeln!(out, "sheaf:      {}", join(&o.sheaf, " ")).unwrap();
            writeln!(out, "{}", if o.agree { "agree" } else { "disagree" }).unwrap();
        }
        out
    }
}
