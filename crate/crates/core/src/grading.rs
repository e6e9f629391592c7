//! The presentation-matrix data model: validation of multigradedness through
//! the entry graph, the degree system assigning column degrees `gamma_j` and
//! row degrees `beta_i` with `gamma_j - beta_i = a_ij` per stored entry, the
//! canonical squarefree solution when one exists, and the uniform-rank test.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exponents::ExponentVector;
use crate::linalg::{determinant, Rational, RationalMatrix};
use crate::{Error, Result};

/// A stored entry `c * x^a` of a presentation matrix. Absent entries are
/// zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Entry {
    pub coeff: Rational,
    pub exponent: ExponentVector,
}

/// An `s x l` matrix over `k[x_1..x_n]` whose entries are nonzero scalars
/// times monomials, stored sparsely. Rows and columns are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultigradedMatrix {
    n: usize,
    s: usize,
    l: usize,
    entries: BTreeMap<(usize, usize), Entry>,
}

impl MultigradedMatrix {
    pub fn new(n: usize, s: usize, l: usize) -> Self {
        assert!(
            s >= 1 && l >= 1,
            "matrix must have at least one row and column"
        );
        MultigradedMatrix {
            n,
            s,
            l,
            entries: BTreeMap::new(),
        }
    }

    /// Stores entry `(row, col)`. Rejects zero coefficients, negative
    /// exponents, out-of-range indices and duplicates.
    pub fn set_entry(
        &mut self,
        row: usize,
        col: usize,
        coeff: Rational,
        exponent: ExponentVector,
    ) -> Result<()> {
        if !(1..=self.s).contains(&row) || !(1..=self.l).contains(&col) {
            return Err(Error::Input(format!(
                "entry ({row},{col}) out of range for a {}x{} matrix",
                self.s, self.l
            )));
        }
        if coeff.is_zero() {
            return Err(Error::Input(format!(
                "entry ({row},{col}) has zero coefficient"
            )));
        }
        if exponent.len() != self.n {
            return Err(Error::Input(format!(
                "entry ({row},{col}) exponent has wrong length"
            )));
        }
        if !exponent.is_nonnegative() {
            return Err(Error::Input(format!(
                "entry ({row},{col}) has a negative exponent"
            )));
        }
        if self
            .entries
            .insert((row, col), Entry { coeff, exponent })
            .is_some()
        {
            return Err(Error::Input(format!("duplicate entry ({row},{col})")));
        }
        Ok(())
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    pub fn row_count(&self) -> usize {
        self.s
    }

    pub fn col_count(&self) -> usize {
        self.l
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&Entry> {
        self.entries.get(&(row, col))
    }

    /// Stored entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Entry)> {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// True when some stored entry is a nonzero constant, i.e. the
    /// presentation is not minimal.
    pub fn has_constant_entry(&self) -> bool {
        self.entries.values().any(|e| e.exponent.is_zero())
    }

    pub fn transpose(&self) -> MultigradedMatrix {
        let mut t = MultigradedMatrix::new(self.n, self.l, self.s);
        for ((i, j), e) in &self.entries {
            t.entries.insert((*j, *i), e.clone());
        }
        t
    }

    /// The scalar coefficient matrix with zeros at absent entries.
    pub fn coefficient_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.s, self.l);
        for ((i, j), e) in &self.entries {
            m.set(i - 1, j - 1, e.coeff.clone());
        }
        m
    }

    /// Checks consistency of the degree system by propagating tentative row
    /// and column degrees over a spanning forest of the entry graph and
    /// testing every non-tree edge. A violated edge closes a cycle whose
    /// alternating exponent sum is nonzero; that cycle is the returned
    /// witness.
    pub fn validate_multigraded(&self) -> std::result::Result<(), InconsistencyWitness> {
        self.propagate().map(|_| ())
    }

    /// Solves the degree system: one base assignment per connected component
    /// of the entry graph, each normalized so the per-coordinate minimum over
    /// its members is zero. Every solution is obtained by adding one free
    /// integer-vector translation per component.
    pub fn solve_degrees(&self) -> std::result::Result<GeneralSolution, InconsistencyWitness> {
        let mut assignment = self.propagate()?;
        let node_count = self.s + self.l;
        let mut comp_nodes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for node in 0..node_count {
            comp_nodes
                .entry(assignment.component[node])
                .or_default()
                .push(node);
        }
        // Normalize each component so the coordinatewise minimum is zero.
        for nodes in comp_nodes.values() {
            for k in 0..self.n {
                let min = nodes
                    .iter()
                    .map(|&v| assignment.value[v].get(k + 1))
                    .min()
                    .expect("component is nonempty");
                if min != 0 {
                    for &v in nodes {
                        let mut coords = assignment.value[v].coords().to_vec();
                        coords[k] -= min;
                        assignment.value[v] = ExponentVector::new(coords);
                    }
                }
            }
        }
        let components = comp_nodes
            .into_values()
            .map(|nodes| {
                let mut rows = Vec::new();
                let mut cols = Vec::new();
                let mut row_base = BTreeMap::new();
                let mut col_base = BTreeMap::new();
                for node in nodes {
                    if node < self.s {
                        rows.push(node + 1);
                        row_base.insert(node + 1, assignment.value[node].clone());
                    } else {
                        cols.push(node - self.s + 1);
                        col_base.insert(node - self.s + 1, assignment.value[node].clone());
                    }
                }
                ComponentSolution {
                    rows,
                    cols,
                    row_base,
                    col_base,
                }
            })
            .collect();
        Ok(GeneralSolution { components })
    }

    /// The canonical squarefree solution when one exists: a component admits
    /// one exactly when its normalized base assignment has width at most 1
    /// in every coordinate, and the normalized base is then itself the
    /// canonical choice (minimum translated to zero per coordinate).
    pub fn find_squarefree_solution(
        &self,
    ) -> std::result::Result<Option<GradingSolution>, InconsistencyWitness> {
        let general = self.solve_degrees()?;
        for comp in &general.components {
            let all = comp.row_base.values().chain(comp.col_base.values());
            for v in all {
                if !v.is_squarefree() {
                    return Ok(None);
                }
            }
        }
        Ok(Some(general.to_solution(self)))
    }

    /// True when every entry is stored and every square submatrix of the
    /// coefficient matrix has nonzero determinant. Multigradedness makes
    /// each minor a scalar multiple of a single monomial, so this decides
    /// nonvanishing of all matrix minors.
    pub fn is_uniform_rank(&self) -> bool {
        if self.entries.len() != self.s * self.l {
            return false;
        }
        let coeffs = self.coefficient_matrix();
        let max = self.s.min(self.l);
        for k in 1..=max {
            for rows in subsets_of_len(self.s, k) {
                for cols in subsets_of_len(self.l, k) {
                    if determinant(&coeffs, &rows, &cols).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The join-based solution for a uniform-rank matrix with squarefree
    /// entry exponents: each column degree is the join of its column, each
    /// row degree the difference against column 1. Agrees with the canonical
    /// solution of `find_squarefree_solution` by construction; the agreement
    /// is re-checked and a mismatch reported as an internal error.
    pub fn canonical_uniform_solution(&self) -> Result<GradingSolution> {
        if !self.is_uniform_rank() {
            return Err(Error::Input("matrix is not of uniform rank".into()));
        }
        for (i, j, e) in self.entries() {
            if !e.exponent.is_squarefree() {
                return Err(Error::Input(format!(
                    "entry ({i},{j}) exponent is not squarefree"
                )));
            }
        }
        let col_degrees: Vec<ExponentVector> = (1..=self.l)
            .map(|j| ExponentVector::join((1..=self.s).map(|i| &self.entries[&(i, j)].exponent)))
            .collect();
        let row_degrees: Vec<ExponentVector> = (1..=self.s)
            .map(|i| col_degrees[0].sub(&self.entries[&(i, 1)].exponent))
            .collect();
        let solution = GradingSolution::new(col_degrees, row_degrees)?;
        let canonical = self
            .find_squarefree_solution()
            .map_err(|w| Error::NotMultigraded(w.to_string()))?
            .ok_or_else(|| {
                Error::Internal(
                    "uniform-rank squarefree matrix admits no squarefree solution".into(),
                )
            })?;
        if solution != canonical {
            return Err(Error::Internal(
                "join-based solution disagrees with the canonical squarefree solution".into(),
            ));
        }
        Ok(solution)
    }

    /// Spanning-forest propagation. Returns per-node component ids and
    /// tentative degree values (rows are nodes `0..s`, columns `s..s+l`).
    fn propagate(&self) -> std::result::Result<Assignment, InconsistencyWitness> {
        let node_count = self.s + self.l;
        let mut value: Vec<Option<ExponentVector>> = vec![None; node_count];
        let mut component = vec![usize::MAX; node_count];
        let mut parent: Vec<Option<(usize, (usize, usize))>> = vec![None; node_count];
        let mut adjacency: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); node_count];
        for &(i, j) in self.entries.keys() {
            let row_node = i - 1;
            let col_node = self.s + j - 1;
            adjacency[row_node].push((col_node, (i, j)));
            adjacency[col_node].push((row_node, (i, j)));
        }
        for start in 0..node_count {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = start;
            value[start] = Some(ExponentVector::zero(self.n));
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                let current = value[node].clone().expect("visited node has a value");
                for &(next, edge) in &adjacency[node] {
                    let exponent = &self.entries[&edge].exponent;
                    // gamma(col) - beta(row) = exponent.
                    let expected = if node < self.s {
                        current.add(exponent)
                    } else {
                        current.sub(exponent)
                    };
                    match &value[next] {
                        None => {
                            component[next] = start;
                            value[next] = Some(expected);
                            parent[next] = Some((node, edge));
                            queue.push_back(next);
                        }
                        Some(existing) => {
                            if *existing != expected {
                                return Err(self.build_witness(&parent, node, next, edge));
                            }
                        }
                    }
                }
            }
        }
        Ok(Assignment {
            component,
            value: value
                .into_iter()
                .map(|v| v.expect("all nodes visited"))
                .collect(),
        })
    }

    /// Reconstructs the violating cycle: tree paths from both endpoints of
    /// the bad edge to their common ancestor, plus the edge itself.
    fn build_witness(
        &self,
        parent: &[Option<(usize, (usize, usize))>],
        from: usize,
        to: usize,
        edge: (usize, usize),
    ) -> InconsistencyWitness {
        let path_to_root = |mut node: usize| {
            let mut path = vec![node];
            while let Some((p, _)) = parent[node] {
                node = p;
                path.push(node);
            }
            path
        };
        let a = path_to_root(from);
        let b = path_to_root(to);
        // Trim the shared tail above the least common ancestor.
        let mut ai = a.len();
        let mut bi = b.len();
        while ai > 0 && bi > 0 && a[ai - 1] == b[bi - 1] {
            ai -= 1;
            bi -= 1;
        }
        let mut nodes: Vec<usize> = a[..=ai.min(a.len() - 1)].to_vec();
        let mut tail: Vec<usize> = b[..bi].to_vec();
        tail.reverse();
        nodes.extend(tail);
        // Collect the edges along the cycle, closing with the non-tree edge.
        let mut edges = Vec::new();
        for w in nodes.windows(2) {
            let (x, y) = (w[0], w[1]);
            let e = if parent[x].map(|(p, _)| p) == Some(y) {
                parent[x].unwrap().1
            } else {
                parent[y].unwrap().1
            };
            edges.push(e);
        }
        edges.push(edge);
        // Alternating sum around the cycle.
        let mut sum = ExponentVector::zero(self.n);
        let mut node = *nodes.first().unwrap_or(&from);
        for &e in &edges {
            let exponent = &self.entries[&e].exponent;
            if node < self.s {
                sum = sum.add(exponent);
                node = self.s + e.1 - 1;
            } else {
                sum = sum.sub(exponent);
                node = e.0 - 1;
            }
        }
        InconsistencyWitness {
            cycle: edges,
            alternating_sum: sum,
        }
    }
}

struct Assignment {
    component: Vec<usize>,
    value: Vec<ExponentVector>,
}

/// A cycle in the entry graph whose alternating exponent sum does not
/// vanish, certifying that the matrix is not multigraded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InconsistencyWitness {
    /// Entries (row, col) traversed around the cycle.
    pub cycle: Vec<(usize, usize)>,
    pub alternating_sum: ExponentVector,
}

impl std::fmt::Display for InconsistencyWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycle: Vec<String> = self
            .cycle
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(
            f,
            "cycle through entries {} has alternating degree sum {}",
            cycle.join(", "),
            self.alternating_sum
        )
    }
}

/// The general solution of the degree system: a normalized base assignment
/// per connected component, each extendable by a free translation in `Z^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralSolution {
    pub components: Vec<ComponentSolution>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentSolution {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub row_base: BTreeMap<usize, ExponentVector>,
    pub col_base: BTreeMap<usize, ExponentVector>,
}

impl GeneralSolution {
    /// Flattens the base assignment into a full solution.
    pub fn to_solution(&self, matrix: &MultigradedMatrix) -> GradingSolution {
        let mut col_degrees = vec![ExponentVector::zero(matrix.var_count()); matrix.col_count()];
        let mut row_degrees = vec![ExponentVector::zero(matrix.var_count()); matrix.row_count()];
        for comp in &self.components {
            for (&j, v) in &comp.col_base {
                col_degrees[j - 1] = v.clone();
            }
            for (&i, v) in &comp.row_base {
                row_degrees[i - 1] = v.clone();
            }
        }
        GradingSolution::new(col_degrees, row_degrees).expect("base assignment is well formed")
    }

    /// Applies a translation per component (indexed in component order).
    pub fn translated(
        &self,
        shifts: &[ExponentVector],
        matrix: &MultigradedMatrix,
    ) -> Result<GradingSolution> {
        if shifts.len() != self.components.len() {
            return Err(Error::Input(format!(
                "{} translation vectors supplied for {} components",
                shifts.len(),
                self.components.len()
            )));
        }
        let mut out = self.clone();
        for (comp, t) in out.components.iter_mut().zip(shifts) {
            for v in comp.row_base.values_mut() {
                *v = v.add(t);
            }
            for v in comp.col_base.values_mut() {
                *v = v.add(t);
            }
        }
        Ok(out.to_solution(matrix))
    }
}

/// A particular solution of the degree system: column degrees `gamma_j`, row
/// degrees `beta_i`, and whether all of them are squarefree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingSolution {
    col_degrees: Vec<ExponentVector>,
    row_degrees: Vec<ExponentVector>,
    squarefree: bool,
}

impl GradingSolution {
    pub fn new(col_degrees: Vec<ExponentVector>, row_degrees: Vec<ExponentVector>) -> Result<Self> {
        let squarefree = col_degrees
            .iter()
            .chain(&row_degrees)
            .all(ExponentVector::is_squarefree);
        Ok(GradingSolution {
            col_degrees,
            row_degrees,
            squarefree,
        })
    }

    pub fn col_degree(&self, j: usize) -> &ExponentVector {
        &self.col_degrees[j - 1]
    }

    pub fn row_degree(&self, i: usize) -> &ExponentVector {
        &self.row_degrees[i - 1]
    }

    pub fn col_degrees(&self) -> &[ExponentVector] {
        &self.col_degrees
    }

    pub fn row_degrees(&self) -> &[ExponentVector] {
        &self.row_degrees
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    /// Verifies the defining equations against the stored entries.
    pub fn satisfies(&self, matrix: &MultigradedMatrix) -> bool {
        matrix
            .entries()
            .all(|(i, j, e)| self.col_degrees[j - 1].sub(&self.row_degrees[i - 1]) == e.exponent)
    }
}

fn subsets_of_len(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
