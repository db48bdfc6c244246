use serde::{Deserialize, Serialize};
use stabhom_core::symplectic::graph_lagrangian;
use stabhom_core::{Error, FieldPrime, Graph, PartyStructure, Subspace};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Party {
    pub name: String,
    pub qudits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub edges: Vec<(usize, usize)>,
}

/// A state description: the field, the parties and exactly one source of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parties: Option<Vec<Party>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paulis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
}

/// A parsed and validated state.
#[derive(Clone, Debug)]
pub struct State {
    pub names: Vec<String>,
    pub structure: PartyStructure,
    pub l: Subspace,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn pauli_row(word: &str, qubits: usize) -> Result<Vec<u32>, CliError> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() != qubits {
        return Err(input(format!("pauli string {word:?} has {} letters, expected {qubits}", chars.len())));
    }
    let mut row = vec![0u32; 2 * qubits];
    for (q, c) in chars.iter().enumerate() {
        let (e, f) = match c.to_ascii_uppercase() {
            'I' => (0, 0),
            'X' => (1, 0),
            'Z' => (0, 1),
            'Y' => (1, 1),
            other => return Err(input(format!("unknown pauli letter {other:?}"))),
        };
        row[2 * q] = e;
        row[2 * q + 1] = f;
    }
    Ok(row)
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| input(format!("malformed problem file: {e}")))
    }

    fn party_list(&self) -> Result<Vec<Party>, CliError> {
        if let Some(ps) = &self.parties {
            return Ok(ps.clone());
        }
        // pauli strings imply one qubit per party
        match &self.paulis {
            Some(words) if !words.is_empty() => Ok((0..words[0].chars().count())
                .map(|i| Party {
                    name: i.to_string(),
                    qudits: 1,
                })
                .collect()),
            _ => Err(input("the parties list is required")),
        }
    }

    pub fn to_state(&self) -> Result<State, CliError> {
        let field = FieldPrime::new(self.p)?;
        let parties = self.party_list()?;
        let structure = PartyStructure::new(parties.iter().map(|p| p.qudits).collect(), field)?;
        let n = structure.ambient_dim();
        let sources = [self.graph.is_some(), self.paulis.is_some(), self.generators.is_some()];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(input("exactly one of graph, paulis, generators must be given"));
        }
        let l = if let Some(g) = &self.graph {
            let graph = Graph::new(n / 2, g.edges.iter().copied())?;
            graph_lagrangian(&graph, &structure)?
        } else {
            let rows: Vec<Vec<u32>> = if let Some(words) = &self.paulis {
                if self.p != 2 {
                    return Err(input("pauli strings need p = 2"));
                }
                words.iter().map(|w| pauli_row(w, n / 2)).collect::<Result<_, _>>()?
            } else {
                self.generators.clone().unwrap_or_default()
            };
            if rows.len() > n / 2 {
                return Err(input(format!("{} generators exceed half the dimension {}", rows.len(), n)));
            }
            for (i, r) in rows.iter().enumerate() {
                if r.len() != n {
                    return Err(input(format!("generator {i} has length {}, expected {n}", r.len())));
                }
            }
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    if structure.omega(&rows[i], &rows[j])? != 0 {
                        return Err(CliError::Core(Error::NotIsotropic(i, j)));
                    }
                }
            }
            Subspace::span(n, &rows, field)?
        };
        Ok(State {
            names: parties.into_iter().map(|p| p.name).collect(),
            structure,
            l,
        })
    }
}

impl State {
    pub fn to_problem(&self) -> ProblemFile {
        ProblemFile {
            p: self.structure.field().p() as u64,
            parties: Some(
                self.names
                    .iter()
                    .zip(self.structure.qudits())
                    .map(|(name, &qudits)| Party {
                        name: name.clone(),
                        qudits,
                    })
                    .collect(),
            ),
            graph: None,
            paulis: None,
            generators: Some(self.l.basis_vectors().map(<[u32]>::to_vec).collect()),
        }
    }
}

/// Problem file of a graph state, one qubit per vertex.
pub fn graph_problem(graph: &Graph, p: u64) -> ProblemFile {
    ProblemFile {
        p,
        parties: Some(
            (0..graph.num_vertices())
                .map(|v| Party {
                    name: v.to_string(),
                    qudits: 1,
                })
                .collect(),
        ),
        graph: Some(GraphSpec {
            edges: graph.edges().collect(),
        }),
        paulis: None,
        generators: None,
    }
}
