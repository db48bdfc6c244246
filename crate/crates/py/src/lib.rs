//! Python bindings. Everything goes through [`State`], a lagrangian (or
//! isotropic subspace) together with its party structure.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stabhom_core::duality::check_perfect;
use stabhom_core::structure::{coarsen, discard, external_sum, ghz_count, internal_sum};
use stabhom_core::symplectic::graph_lagrangian;
use stabhom_core::{
    invariant_table, local_invariants, Error, FieldPrime, Graph, GraphFamily, PartyStructure, Subspace,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, skip_from_py_object, module = "stabhom")]
#[derive(Clone)]
pub struct State {
    structure: PartyStructure,
    l: Subspace,
}

#[pymethods]
impl State {
    /// `State(p, qudits, generators)`: generators are rows of length `2 * sum(qudits)`,
    /// party blocks laid out in order with coordinates `(e_i, f_i)` alternating.
    #[new]
    fn new(p: u64, qudits: Vec<usize>, generators: Vec<Vec<u32>>) -> PyResult<Self> {
        let field = FieldPrime::new(p).map_err(err)?;
        let structure = PartyStructure::new(qudits, field).map_err(err)?;
        let l = Subspace::span(structure.ambient_dim(), &generators, field).map_err(err)?;
        if let Some((i, j)) = structure.isotropy_violation(&l).map_err(err)? {
            return Err(err(Error::NotIsotropic(i, j)));
        }
        Ok(State { structure, l })
    }

    /// Graph state on `n` vertices of a named family, one qudit per party.
    #[staticmethod]
    #[pyo3(signature = (name, n, p = 2))]
    fn family(name: &str, n: usize, p: u64) -> PyResult<Self> {
        let fam = GraphFamily::from_name(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown graph family {name:?}")))?;
        let g = Graph::family(fam, n).map_err(err)?;
        Self::from_graph(&g, p, None)
    }

    /// Graph state from an edge list. `qudits` groups consecutive vertices into parties.
    #[staticmethod]
    #[pyo3(signature = (n, edges, p = 2, qudits = None))]
    fn graph(n: usize, edges: Vec<(usize, usize)>, p: u64, qudits: Option<Vec<usize>>) -> PyResult<Self> {
        let g = Graph::new(n, edges).map_err(err)?;
        Self::from_graph(&g, p, qudits)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.structure.field().p()
    }

    #[getter]
    fn qudits(&self) -> Vec<usize> {
        self.structure.qudits().to_vec()
    }

    #[getter]
    fn num_parties(&self) -> usize {
        self.structure.num_parties()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.l.dim()
    }

    /// Reduced basis of the subspace.
    #[getter]
    fn generators(&self) -> Vec<Vec<u32>> {
        self.l.basis_vectors().map(<[u32]>::to_vec).collect()
    }

    fn is_lagrangian(&self) -> PyResult<bool> {
        self.structure.is_lagrangian(&self.l).map_err(err)
    }

    /// Rows `k = 0..=dim`, columns `j = 0..=num_parties`.
    fn invariant_table(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(invariant_table(&self.l, &self.structure).map_err(err)?.rows().to_vec())
    }

    #[pyo3(signature = (k = 1))]
    fn local_invariants(&self, k: usize) -> PyResult<Vec<usize>> {
        local_invariants(&self.l, &self.structure, k).map_err(err)
    }

    fn ghz_count(&self) -> PyResult<usize> {
        ghz_count(&self.l, &self.structure).map_err(err)
    }

    /// `(perfect, [(h^j(L), h^{|P|+2-j}(L^perp)) ...])`.
    fn check_perfect(&self) -> PyResult<(bool, Vec<(usize, usize)>)> {
        let r = check_perfect(&self.l, &self.structure).map_err(err)?;
        Ok((r.is_perfect(), r.dims))
    }

    /// Regroup parties: party `i` goes to `phi[i]`.
    fn coarsen(&self, phi: Vec<usize>) -> PyResult<Self> {
        let target = phi.iter().max().map_or(0, |m| m + 1);
        let (l, structure) = coarsen(&self.l, &self.structure, &phi, target).map_err(err)?;
        Ok(State { structure, l })
    }

    /// Trace out the listed parties.
    fn discard(&self, parties: Vec<usize>) -> PyResult<Self> {
        let n = self.structure.num_parties();
        if let Some(p) = parties.iter().find(|&&p| p >= n) {
            return Err(PyValueError::new_err(format!("no party {p}")));
        }
        let mask = parties.iter().fold(0u32, |m, &p| m | 1 << p);
        let (l, structure) = discard(&self.l, &self.structure, mask).map_err(err)?;
        Ok(State { structure, l })
    }

    fn internal_sum(&self, other: &State) -> PyResult<Self> {
        let (l, structure) = internal_sum(&self.l, &other.l, &self.structure, &other.structure).map_err(err)?;
        Ok(State { structure, l })
    }

    fn external_sum(&self, other: &State) -> PyResult<Self> {
        let (l, structure) = external_sum(&self.l, &other.l, &self.structure, &other.structure).map_err(err)?;
        Ok(State { structure, l })
    }

    fn __eq__(&self, other: &State) -> bool {
        self.structure == other.structure && self.l == other.l
    }

    fn __repr__(&self) -> String {
        format!(
            "State(p={}, qudits={:?}, dim={})",
            self.structure.field().p(),
            self.structure.qudits(),
            self.l.dim()
        )
    }
}

impl State {
    fn from_graph(g: &Graph, p: u64, qudits: Option<Vec<usize>>) -> PyResult<Self> {
        let field = FieldPrime::new(p).map_err(err)?;
        let qudits = qudits.unwrap_or_else(|| vec![1; g.num_vertices()]);
        let structure = PartyStructure::new(qudits, field).map_err(err)?;
        let l = graph_lagrangian(g, &structure).map_err(err)?;
        Ok(State { structure, l })
    }
}

#[pymodule]
fn stabhom(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<State>()?;
    m.add("FAMILIES", ["path", "star", "cycle", "d", "e6", "e7", "dhat", "e6hat"])?;
    Ok(())
}
