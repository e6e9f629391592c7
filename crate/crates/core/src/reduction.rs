//! The degreewise initial-module engine.
//!
//! For a matrix with a squarefree degree solution, the image of the
//! presentation map is eliminated one multidegree at a time: in degree `d`
//! the ambient space has at most one monomial `x^(d - beta_i)` per row `i`,
//! and the image slice is spanned by the shifted columns. Reduced row
//! echelon form with pivot scan order = descending row priority yields the
//! leading terms, and squarefreeness confines the sweep that determines the
//! row ideals to the `2^n` squarefree degrees. Everything downstream
//! (k-bases, reduction coefficients, annihilator, dimension) reads off these
//! elimination results.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::Zero;

use crate::exponents::{ExponentVector, IndexSet};
use crate::grading::{GradingSolution, MultigradedMatrix};
use crate::linalg::{echelonize_ordered, Echelon, Rational, RationalMatrix};
use crate::simplicial::{stanley_reisner, SimplicialComplex, SquarefreeIdeal};
use crate::{Error, Result};

/// A total priority order on the rows; the position-over-term order compares
/// the row first, then the monomial (which never ties within a multidegree).
/// The default gives the highest priority to the last row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowOrder {
    priority_desc: Vec<usize>,
}

impl RowOrder {
    /// `v_s > ... > v_1`.
    pub fn default_for(s: usize) -> Self {
        RowOrder {
            priority_desc: (1..=s).rev().collect(),
        }
    }

    /// Rows listed from highest to lowest priority; must be a permutation of
    /// `1..=s`.
    pub fn from_priority_list(list: Vec<usize>, s: usize) -> Result<Self> {
        let mut seen = vec![false; s + 1];
        if list.len() != s {
            return Err(Error::Input(format!("row order must list all {s} rows")));
        }
        for &r in &list {
            if !(1..=s).contains(&r) || seen[r] {
                return Err(Error::Input(format!(
                    "row order is not a permutation of 1..={s}"
                )));
            }
            seen[r] = true;
        }
        Ok(RowOrder {
            priority_desc: list,
        })
    }

    pub fn priority_list(&self) -> &[usize] {
        &self.priority_desc
    }

    /// 1-based rank of `row` counted from the top priority.
    pub fn rank_from_top(&self, row: usize) -> usize {
        self.priority_desc
            .iter()
            .position(|&r| r == row)
            .expect("row in order")
            + 1
    }

    /// True when `a` has strictly higher priority than `b`.
    pub fn is_higher(&self, a: usize, b: usize) -> bool {
        self.rank_from_top(a) < self.rank_from_top(b)
    }
}

/// A validated matrix with a squarefree solution and a fixed row order: the
/// inputs the whole reduction pipeline works from.
#[derive(Clone, Debug)]
pub struct SquarefreeModuleData {
    pub matrix: MultigradedMatrix,
    pub solution: GradingSolution,
    pub order: RowOrder,
}

impl SquarefreeModuleData {
    pub fn new(
        matrix: MultigradedMatrix,
        solution: GradingSolution,
        order: RowOrder,
    ) -> Result<Self> {
        if !solution.is_squarefree() {
            return Err(Error::Input(
                "the supplied degree solution is not squarefree".into(),
            ));
        }
        if !solution.satisfies(&matrix) {
            return Err(Error::Input(
                "the supplied degrees do not solve the degree system".into(),
            ));
        }
        if order.priority_list().len() != matrix.row_count() {
            return Err(Error::Input(
                "row order length does not match row count".into(),
            ));
        }
        Ok(SquarefreeModuleData {
            matrix,
            solution,
            order,
        })
    }
}

/// The row ideals of the initial module with their Stanley-Reisner
/// complexes, plus the full squarefree member sets.
#[derive(Clone, Debug)]
pub struct InitialDecomposition {
    pub ideals: Vec<SquarefreeIdeal>,
    pub complexes: Vec<SimplicialComplex>,
    pub members: Vec<Vec<IndexSet>>,
}

impl InitialDecomposition {
    fn from_ideals(ideals: Vec<SquarefreeIdeal>) -> Self {
        let complexes = ideals.iter().map(stanley_reisner).collect();
        let members = ideals
            .iter()
            .map(SquarefreeIdeal::squarefree_members)
            .collect();
        InitialDecomposition {
            ideals,
            complexes,
            members,
        }
    }
}

/// Elimination data for one multidegree: the slice basis (one monomial per
/// eligible row, sorted by descending priority), the image spanning set and
/// its reduced echelon form.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    pub degree: ExponentVector,
    /// Row index per slice coordinate, descending priority.
    pub basis_rows: Vec<usize>,
    /// Columns whose shifted images span the degree slice.
    pub image_cols: Vec<usize>,
    pub echelon: Echelon,
}

impl DegreeSlice {
    pub fn coordinate_of(&self, row: usize) -> Option<usize> {
        self.basis_rows.iter().position(|&r| r == row)
    }

    /// Rows whose slice monomial is a leading term of the image slice.
    pub fn leading_rows(&self) -> Vec<usize> {
        self.echelon
            .pivot_cols
            .iter()
            .map(|&p| self.basis_rows[p])
            .collect()
    }
}

/// The outcome of normal-form reduction of `x^a v_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Reduction {
    /// The monomial is standard (not in the row ideal); nothing to rewrite.
    Standard,
    /// Coefficients on lower-priority standard monomials of the same degree:
    /// `x^a v_i = sum of r * x^(a + beta_i - beta_j) v_j`. Zero coefficients
    /// are omitted; an empty list means the normal form is zero.
    Rewrite(Vec<(usize, Rational)>),
}

/// The central engine: a squarefree module together with its initial
/// decomposition and memoized elimination results. Queries are read-only
/// after construction; the memo tables use interior mutability and the type
/// is intended for single-threaded use.
pub struct SquarefreeModule {
    data: SquarefreeModuleData,
    decomposition: InitialDecomposition,
    slices: RefCell<HashMap<ExponentVector, Rc<DegreeSlice>>>,
    rewrites: RefCell<HashMap<(usize, ExponentVector), Reduction>>,
}

impl SquarefreeModule {
    /// Builds the engine from validated data, sweeping all squarefree
    /// degrees to assemble the row ideals.
    pub fn build(data: SquarefreeModuleData) -> Result<Self> {
        let mut module = SquarefreeModule {
            data,
            decomposition: InitialDecomposition {
                ideals: Vec::new(),
                complexes: Vec::new(),
                members: Vec::new(),
            },
            slices: RefCell::new(HashMap::new()),
            rewrites: RefCell::new(HashMap::new()),
        };
        module.decomposition = module.sweep_squarefree_degrees()?;
        // Slices computed during the sweep skipped the leading-term check
        // against the (then unbuilt) ideals; recompute on demand.
        module.slices.borrow_mut().clear();
        Ok(module)
    }

    /// Convenience path: validates multigradedness, takes the canonical
    /// squarefree solution and the default row order.
    pub fn from_matrix(matrix: MultigradedMatrix) -> Result<Self> {
        let solution = matrix
            .find_squarefree_solution()
            .map_err(|w| Error::NotMultigraded(w.to_string()))?
            .ok_or_else(|| Error::Input("the degree system has no squarefree solution".into()))?;
        let order = RowOrder::default_for(matrix.row_count());
        Self::build(SquarefreeModuleData::new(matrix, solution, order)?)
    }

    pub fn data(&self) -> &SquarefreeModuleData {
        &self.data
    }

    pub fn matrix(&self) -> &MultigradedMatrix {
        &self.data.matrix
    }

    pub fn solution(&self) -> &GradingSolution {
        &self.data.solution
    }

    pub fn order(&self) -> &RowOrder {
        &self.data.order
    }

    pub fn var_count(&self) -> usize {
        self.data.matrix.var_count()
    }

    pub fn row_count(&self) -> usize {
        self.data.matrix.row_count()
    }

    pub fn col_count(&self) -> usize {
        self.data.matrix.col_count()
    }

    pub fn decomposition(&self) -> &InitialDecomposition {
        &self.decomposition
    }

    pub fn ideal(&self, i: usize) -> &SquarefreeIdeal {
        &self.decomposition.ideals[i - 1]
    }

    pub fn complex(&self, i: usize) -> &SimplicialComplex {
        &self.decomposition.complexes[i - 1]
    }

    /// The image of generator `j` under the presentation map, as
    /// `(row, coefficient, exponent)` triples in row order.
    pub fn apply_presentation(&self, j: usize) -> Vec<(usize, Rational, ExponentVector)> {
        assert!(
            (1..=self.col_count()).contains(&j),
            "column {j} out of range"
        );
        (1..=self.row_count())
            .filter_map(|i| {
                self.data
                    .matrix
                    .entry(i, j)
                    .map(|e| (i, e.coeff.clone(), e.exponent.clone()))
            })
            .collect()
    }

    /// Eliminates the image slice in the given (componentwise nonnegative)
    /// degree. Results are memoized.
    pub fn degree_slice(&self, degree: &ExponentVector) -> Result<Rc<DegreeSlice>> {
        if !degree.is_nonnegative() {
            return Err(Error::Input(format!(
                "degree {degree} has a negative coordinate"
            )));
        }
        if let Some(slice) = self.slices.borrow().get(degree) {
            return Ok(Rc::clone(slice));
        }
        let slice = Rc::new(self.eliminate_degree(degree)?);
        self.slices
            .borrow_mut()
            .insert(degree.clone(), Rc::clone(&slice));
        Ok(slice)
    }

    fn eliminate_degree(&self, degree: &ExponentVector) -> Result<DegreeSlice> {
        let sol = &self.data.solution;
        let basis_rows: Vec<usize> = self
            .data
            .order
            .priority_list()
            .iter()
            .copied()
            .filter(|&i| degree.sub(sol.row_degree(i)).is_nonnegative())
            .collect();
        let image_cols: Vec<usize> = (1..=self.col_count())
            .filter(|&j| degree.sub(sol.col_degree(j)).is_nonnegative())
            .collect();
        let mut span = RationalMatrix::zeros(image_cols.len(), basis_rows.len());
        for (r, &j) in image_cols.iter().enumerate() {
            for (c, &i) in basis_rows.iter().enumerate() {
                if let Some(e) = self.data.matrix.entry(i, j) {
                    span.set(r, c, e.coeff.clone());
                }
            }
        }
        span = span.with_labels(
            Some(image_cols.iter().map(|j| format!("w{j}")).collect()),
            Some(basis_rows.iter().map(|i| format!("v{i}")).collect()),
        );
        let order: Vec<usize> = (0..basis_rows.len()).collect();
        let echelon = echelonize_ordered(&span, &order);
        let slice = DegreeSlice {
            degree: degree.clone(),
            basis_rows,
            image_cols,
            echelon,
        };
        self.check_slice_against_ideals(&slice)?;
        Ok(slice)
    }

    /// Leading rows of a slice must be exactly the rows whose slice monomial
    /// lies in the corresponding ideal. During the construction sweep the
    /// ideals are not populated yet and the check is skipped.
    fn check_slice_against_ideals(&self, slice: &DegreeSlice) -> Result<()> {
        if self.decomposition.ideals.len() != self.row_count() {
            return Ok(());
        }
        for (c, &i) in slice.basis_rows.iter().enumerate() {
            let monomial = slice.degree.sub(self.data.solution.row_degree(i));
            let in_ideal = self.ideal(i).contains(monomial.support());
            let is_leading = slice.echelon.is_pivot(c);
            if in_ideal != is_leading {
                return Err(Error::Internal(format!(
                    "degree {}: row {i} monomial {monomial} is {} the row ideal but {} a leading term",
                    slice.degree,
                    if in_ideal { "inside" } else { "outside" },
                    if is_leading { "is" } else { "is not" },
                )));
            }
        }
        Ok(())
    }

    /// Sweeps all squarefree degrees, collecting one generator per leading
    /// term, and minimalizes. Leading terms in arbitrary degrees descend to
    /// squarefree ones, so this determines the ideals completely.
    fn sweep_squarefree_degrees(&self) -> Result<InitialDecomposition> {
        let n = self.var_count();
        let mut gens: Vec<Vec<IndexSet>> = vec![Vec::new(); self.row_count()];
        for support in IndexSet::full(n).subsets() {
            let degree = support.indicator(n);
            let slice = self.degree_slice(&degree)?;
            for row in slice.leading_rows() {
                let monomial = degree.sub(self.data.solution.row_degree(row));
                gens[row - 1].push(monomial.support());
            }
        }
        let ideals = gens
            .into_iter()
            .map(|g| SquarefreeIdeal::from_generators(n, g))
            .collect();
        Ok(InitialDecomposition::from_ideals(ideals))
    }

    /// The lcm-subset ideals of a uniform-rank matrix: the row with priority
    /// rank `r` (from the top) contributes the joins of every `r`-subset of
    /// its entries' exponents.
    pub fn uniform_rank_ideals(&self) -> Result<InitialDecomposition> {
        let m = &self.data.matrix;
        if m.col_count() < m.row_count() {
            return Err(Error::Input(
                "lcm-subset ideals need at least as many columns as rows".into(),
            ));
        }
        if !m.is_uniform_rank() {
            return Err(Error::Input("matrix is not of uniform rank".into()));
        }
        let n = self.var_count();
        let all_cols = IndexSet::full(m.col_count());
        let mut ideals = Vec::with_capacity(m.row_count());
        for i in 1..=m.row_count() {
            let size = self.data.order.rank_from_top(i);
            let gens = all_cols.subsets_of_size(size).into_iter().map(|cols| {
                let join =
                    ExponentVector::join(cols.iter().map(|j| &m.entry(i, j).unwrap().exponent));
                join.support()
            });
            ideals.push(SquarefreeIdeal::from_generators(n, gens));
        }
        Ok(InitialDecomposition::from_ideals(ideals))
    }

    /// Normal form of `x^a v_i` in its degree slice. Memoized per exact
    /// degree; no squarefree shortcut is applied.
    pub fn reduce(&self, i: usize, a: &ExponentVector) -> Result<Reduction> {
        if !a.is_nonnegative() {
            return Err(Error::Input(format!(
                "exponent {a} has a negative coordinate"
            )));
        }
        assert!((1..=self.row_count()).contains(&i), "row {i} out of range");
        let key = (i, a.clone());
        if let Some(r) = self.rewrites.borrow().get(&key) {
            return Ok(r.clone());
        }
        let result = self.compute_reduction(i, a)?;
        self.rewrites.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    fn compute_reduction(&self, i: usize, a: &ExponentVector) -> Result<Reduction> {
        if !self.ideal(i).contains(a.support()) {
            return Ok(Reduction::Standard);
        }
        let degree = a.add(self.data.solution.row_degree(i));
        let slice = self.degree_slice(&degree)?;
        let pos = slice.coordinate_of(i).ok_or_else(|| {
            Error::Internal(format!(
                "row {i} missing from its own degree slice {degree}"
            ))
        })?;
        let mut unit = vec![Rational::zero(); slice.basis_rows.len()];
        unit[pos] = crate::linalg::rat(1);
        let nf = slice.echelon.normal_form(&unit);
        let mut terms = Vec::new();
        for (c, v) in nf.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let j = slice.basis_rows[c];
            if !self.data.order.is_higher(i, j) {
                return Err(Error::Internal(format!(
                    "normal form of x^{a} v_{i} cites row {j} of higher priority"
                )));
            }
            let target = degree.sub(self.data.solution.row_degree(j));
            if !self.complex(j).contains(target.support()) {
                return Err(Error::Internal(format!(
                    "normal form of x^{a} v_{i} cites non-standard monomial x^{target} v_{j}"
                )));
            }
            terms.push((j, v));
        }
        terms.sort_by_key(|&(j, _)| j);
        Ok(Reduction::Rewrite(terms))
    }

    /// The standard monomials of the given degree: `(row, exponent)` pairs
    /// with the exponent's support a face of the row complex.
    pub fn k_basis(&self, degree: &ExponentVector) -> Vec<(usize, ExponentVector)> {
        (1..=self.row_count())
            .filter_map(|i| {
                let b = degree.sub(self.data.solution.row_degree(i));
                (b.is_nonnegative() && self.complex(i).contains(b.support())).then_some((i, b))
            })
            .collect()
    }

    pub fn dim_at(&self, degree: &ExponentVector) -> usize {
        self.k_basis(degree).len()
    }

    /// Whether `x^a` annihilates the module: every `x^a v_i` must reduce to
    /// zero.
    pub fn annihilator_membership(&self, a: &ExponentVector) -> Result<bool> {
        for i in 1..=self.row_count() {
            match self.reduce(i, a)? {
                Reduction::Standard => return Ok(false),
                Reduction::Rewrite(terms) if !terms.is_empty() => return Ok(false),
                Reduction::Rewrite(_) => {}
            }
        }
        Ok(true)
    }

    /// Annihilator by squarefree membership sweep; valid for any squarefree
    /// module since the annihilator is generated by its squarefree members.
    pub fn annihilator_sweep(&self) -> Result<SquarefreeIdeal> {
        let n = self.var_count();
        let mut gens = Vec::new();
        for support in IndexSet::full(n).subsets() {
            if self.annihilator_membership(&support.indicator(n))? {
                gens.push(support);
            }
        }
        Ok(SquarefreeIdeal::from_generators(n, gens))
    }

    /// Radical of the ideal of maximal minors, for uniform-rank matrices
    /// with at least as many columns as rows: one generator per column
    /// selection, the squarefree part of the minor degree.
    pub fn annihilator_fitting_radical(&self) -> Result<SquarefreeIdeal> {
        let m = &self.data.matrix;
        if !m.is_uniform_rank() {
            return Err(Error::Input(
                "Fitting radical path needs a uniform-rank matrix".into(),
            ));
        }
        if m.col_count() < m.row_count() {
            return Err(Error::Input(
                "Fitting radical path needs at least as many columns as rows".into(),
            ));
        }
        let sol = &self.data.solution;
        let n = self.var_count();
        let row_sum =
            (1..=m.row_count()).fold(ExponentVector::zero(n), |acc, i| acc.add(sol.row_degree(i)));
        let gens = IndexSet::full(m.col_count())
            .subsets_of_size(m.row_count())
            .into_iter()
            .map(|cols| {
                let col_sum = cols
                    .iter()
                    .fold(ExponentVector::zero(n), |acc, j| acc.add(sol.col_degree(j)));
                col_sum.sub(&row_sum).squarefree_part().support()
            });
        Ok(SquarefreeIdeal::from_generators(n, gens))
    }

    /// Intersection of the row ideals (uniform rank, columns >= rows).
    pub fn annihilator_intersection(&self) -> Result<SquarefreeIdeal> {
        let m = &self.data.matrix;
        if !m.is_uniform_rank() || m.col_count() < m.row_count() {
            return Err(Error::Input(
                "intersection path needs uniform rank with columns >= rows".into(),
            ));
        }
        let mut it = self.decomposition.ideals.iter();
        let first = it.next().expect("at least one row").clone();
        Ok(it.fold(first, |acc, ideal| acc.intersect(ideal)))
    }

    /// The annihilator. Uniform-rank matrices with fewer columns than rows
    /// have zero annihilator; with enough columns the Fitting-radical and
    /// intersection paths are both computed and must agree; otherwise the
    /// membership sweep decides.
    pub fn annihilator(&self) -> Result<SquarefreeIdeal> {
        let m = &self.data.matrix;
        if m.is_uniform_rank() {
            if m.col_count() < m.row_count() {
                return Ok(SquarefreeIdeal::zero(self.var_count()));
            }
            let fitting = self.annihilator_fitting_radical()?;
            let meet = self.annihilator_intersection()?;
            if fitting != meet {
                return Err(Error::Internal(format!(
                    "annihilator paths disagree: radical {fitting} vs intersection {meet}"
                )));
            }
            return Ok(fitting);
        }
        self.annihilator_sweep()
    }

    /// Krull dimension of the module: the largest facet size over the row
    /// complexes. `None` when the module is zero (every row ideal is the
    /// unit ideal).
    pub fn krull_dimension(&self) -> Option<usize> {
        self.decomposition
            .complexes
            .iter()
            .filter_map(SimplicialComplex::max_face_size)
            .max()
    }

    /// The standard basis elements in one degree keyed by row; used by
    /// reports.
    pub fn standard_basis_slice(&self, degree: &ExponentVector) -> BTreeMap<usize, ExponentVector> {
        self.k_basis(degree).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    fn iset(members: &[usize]) -> IndexSet {
        IndexSet::from_members(members.iter().copied())
    }

    pub(crate) fn worked_module() -> SquarefreeModule {
        let mut m = MultigradedMatrix::new(4, 2, 2);
        m.set_entry(1, 1, rat(1), ev(&[1, 1, 0, 0])).unwrap();
        m.set_entry(2, 1, rat(1), ev(&[0, 1, 0, 1])).unwrap();
        m.set_entry(1, 2, rat(1), ev(&[1, 0, 1, 0])).unwrap();
        m.set_entry(2, 2, rat(2), ev(&[0, 0, 1, 1])).unwrap();
        SquarefreeModule::from_matrix(m).unwrap()
    }

    #[test]
    fn apply_presentation_examples() {
        let module = worked_module();
        assert_eq!(
            module.apply_presentation(1),
            vec![
                (1, rat(1), ev(&[1, 1, 0, 0])),
                (2, rat(1), ev(&[0, 1, 0, 1]))
            ]
        );
        assert_eq!(
            module.apply_presentation(2),
            vec![
                (1, rat(1), ev(&[1, 0, 1, 0])),
                (2, rat(2), ev(&[0, 0, 1, 1]))
            ]
        );
        let mut single = MultigradedMatrix::new(2, 2, 1);
        single.set_entry(2, 1, rat(3), ev(&[1, 0])).unwrap();
        let sm = SquarefreeModule::from_matrix(single).unwrap();
        assert_eq!(sm.apply_presentation(1).len(), 1);
    }

    #[test]
    fn degree_slice_at_first_column_degree() {
        let module = worked_module();
        let slice = module.degree_slice(&ev(&[1, 1, 0, 1])).unwrap();
        assert_eq!(slice.image_cols, vec![1]);
        // Row 2 has higher priority, so the image pivots on it.
        assert_eq!(slice.leading_rows(), vec![2]);
    }

    #[test]
    fn degree_slice_with_empty_image() {
        let module = worked_module();
        let slice = module.degree_slice(&ev(&[0, 0, 0, 1])).unwrap();
        assert!(slice.image_cols.is_empty());
        assert!(slice.leading_rows().is_empty());
    }

    #[test]
    fn degree_slice_with_full_rank_image() {
        let module = worked_module();
        let slice = module.degree_slice(&ev(&[1, 1, 1, 1])).unwrap();
        assert_eq!(slice.image_cols, vec![1, 2]);
        let mut leading = slice.leading_rows();
        leading.sort_unstable();
        assert_eq!(leading, vec![1, 2]);
    }

    #[test]
    fn initial_decomposition_of_worked_matrix() {
        let module = worked_module();
        assert_eq!(module.ideal(1).min_gens(), &[iset(&[1, 2, 3])]);
        assert_eq!(module.ideal(2).min_gens(), &[iset(&[2, 4]), iset(&[3, 4])]);
        assert_eq!(
            module.complex(1).facets(),
            vec![iset(&[1, 2, 4]), iset(&[1, 3, 4]), iset(&[2, 3, 4])]
        );
        assert_eq!(
            module.complex(2).facets(),
            vec![iset(&[1, 2, 3]), iset(&[1, 4])]
        );
    }

    #[test]
    fn single_row_ideal_is_generated_by_the_row() {
        let mut m = MultigradedMatrix::new(3, 1, 2);
        m.set_entry(1, 1, rat(1), ev(&[1, 1, 0])).unwrap();
        m.set_entry(1, 2, rat(5), ev(&[0, 1, 1])).unwrap();
        let module = SquarefreeModule::from_matrix(m).unwrap();
        assert_eq!(module.ideal(1).min_gens(), &[iset(&[1, 2]), iset(&[2, 3])]);
    }

    #[test]
    fn uniform_rank_ideals_match_sweep() {
        let module = worked_module();
        let direct = module.uniform_rank_ideals().unwrap();
        assert_eq!(direct.ideals, module.decomposition().ideals);
    }

    #[test]
    fn member_sets_match_ideal_membership() {
        let module = worked_module();
        let n = module.var_count();
        for (idx, members) in module.decomposition().members.iter().enumerate() {
            for support in IndexSet::full(n).subsets() {
                assert_eq!(
                    members.contains(&support),
                    module.ideal(idx + 1).contains(support)
                );
            }
        }
        assert_eq!(module.decomposition().members[0].len(), 2); // xyz, xyzw
    }

    #[test]
    fn reduce_worked_examples() {
        let module = worked_module();
        assert_eq!(
            module.reduce(2, &ev(&[0, 1, 0, 1])).unwrap(),
            Reduction::Rewrite(vec![(1, rat(-1))])
        );
        assert_eq!(
            module.reduce(2, &ev(&[0, 0, 1, 1])).unwrap(),
            Reduction::Rewrite(vec![(1, ratio(-1, 2))])
        );
        assert_eq!(
            module.reduce(1, &ev(&[1, 1, 1, 0])).unwrap(),
            Reduction::Rewrite(vec![])
        );
    }

    #[test]
    fn reduce_standard_monomial() {
        let module = worked_module();
        assert_eq!(
            module.reduce(2, &ev(&[1, 1, 1, 0])).unwrap(),
            Reduction::Standard
        );
    }

    #[test]
    fn k_basis_examples() {
        let module = worked_module();
        assert_eq!(
            module.k_basis(&ev(&[0, 0, 0, 1])),
            vec![(1, ev(&[0, 0, 0, 0]))]
        );
        assert_eq!(module.dim_at(&ev(&[1, 1, 1, 1])), 0);
    }

    #[test]
    fn dim_is_squarefree_stable() {
        // Every degree bounded by (2,..,2) has the dimension of its
        // squarefree part.
        let module = worked_module();
        let mut degree = vec![0i64; 4];
        loop {
            let d = ev(&degree);
            assert_eq!(
                module.dim_at(&d),
                module.dim_at(&d.squarefree_part()),
                "degree {d}"
            );
            let mut k = 0;
            while k < 4 {
                degree[k] += 1;
                if degree[k] <= 2 {
                    break;
                }
                degree[k] = 0;
                k += 1;
            }
            if k == 4 {
                break;
            }
        }
    }

    #[test]
    fn annihilator_membership_examples() {
        let module = worked_module();
        assert!(module.annihilator_membership(&ev(&[1, 1, 1, 1])).unwrap());
        assert!(!module.annihilator_membership(&ev(&[1, 1, 1, 0])).unwrap());
        assert!(!module.annihilator_membership(&ev(&[0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn annihilator_of_worked_matrix() {
        let module = worked_module();
        let ann = module.annihilator().unwrap();
        assert_eq!(ann.min_gens(), &[iset(&[1, 2, 3, 4])]);
        assert_eq!(module.annihilator_sweep().unwrap(), ann);
    }

    #[test]
    fn annihilator_is_zero_with_fewer_columns() {
        let mut m = MultigradedMatrix::new(2, 2, 1);
        m.set_entry(1, 1, rat(1), ev(&[1, 0])).unwrap();
        m.set_entry(2, 1, rat(1), ev(&[0, 1])).unwrap();
        let module = SquarefreeModule::from_matrix(m).unwrap();
        let ann = module.annihilator().unwrap();
        assert!(ann.is_zero());
        assert_eq!(module.annihilator_sweep().unwrap(), ann);
    }

    #[test]
    fn annihilator_of_cyclic_module_is_the_ideal() {
        let mut m = MultigradedMatrix::new(2, 1, 2);
        m.set_entry(1, 1, rat(1), ev(&[1, 0])).unwrap();
        m.set_entry(1, 2, rat(1), ev(&[0, 1])).unwrap();
        let module = SquarefreeModule::from_matrix(m).unwrap();
        let ann = module.annihilator().unwrap();
        assert_eq!(ann.min_gens(), &[iset(&[1]), iset(&[2])]);
    }

    #[test]
    fn krull_dimension_examples() {
        assert_eq!(worked_module().krull_dimension(), Some(3));

        let mut hyper = MultigradedMatrix::new(3, 1, 1);
        hyper.set_entry(1, 1, rat(1), ev(&[1, 1, 1])).unwrap();
        assert_eq!(
            SquarefreeModule::from_matrix(hyper)
                .unwrap()
                .krull_dimension(),
            Some(2)
        );

        let mut point = MultigradedMatrix::new(2, 1, 2);
        point.set_entry(1, 1, rat(1), ev(&[1, 0])).unwrap();
        point.set_entry(1, 2, rat(1), ev(&[0, 1])).unwrap();
        assert_eq!(
            SquarefreeModule::from_matrix(point)
                .unwrap()
                .krull_dimension(),
            Some(0)
        );
    }

    #[test]
    fn row_order_override_changes_ideals_but_not_dims() {
        let matrix = worked_module().matrix().clone();
        let solution = matrix.find_squarefree_solution().unwrap().unwrap();
        let flipped = RowOrder::from_priority_list(vec![1, 2], 2).unwrap();
        let alt =
            SquarefreeModule::build(SquarefreeModuleData::new(matrix, solution, flipped).unwrap())
                .unwrap();
        let base = worked_module();
        assert_ne!(alt.decomposition().ideals, base.decomposition().ideals);
        for support in IndexSet::full(4).subsets() {
            let d = support.indicator(4);
            assert_eq!(alt.dim_at(&d), base.dim_at(&d));
        }
        // The lcm-subset description follows the order: with the flipped
        // priority, row 1 is on top and contributes single entries.
        let direct = alt.uniform_rank_ideals().unwrap();
        assert_eq!(direct.ideals, alt.decomposition().ideals);
        assert_eq!(alt.ideal(1).min_gens(), &[iset(&[1, 2]), iset(&[1, 3])]);
    }

    /// Leading terms in non-squarefree degrees are determined by the
    /// squarefree sweep: the consistency check inside `degree_slice` errors
    /// on any mismatch with the ideals.
    #[test]
    fn leading_terms_in_deep_degrees_match_ideals() {
        let module = worked_module();
        let n = module.var_count();
        let mut degree = vec![0i64; n];
        loop {
            module.degree_slice(&ev(&degree)).unwrap();
            let mut k = 0;
            while k < n {
                degree[k] += 1;
                if degree[k] <= 2 {
                    break;
                }
                degree[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }

    #[test]
    fn rewrite_targets_satisfy_support_condition() {
        let module = worked_module();
        let n = module.var_count();
        for support in IndexSet::full(n).subsets() {
            for extra in [support.indicator(n), support.indicator(n).scale(2)] {
                for i in 1..=module.row_count() {
                    if let Reduction::Rewrite(terms) = module.reduce(i, &extra).unwrap() {
                        for (j, r) in terms {
                            assert!(!r.is_zero());
                            assert!(module.order().is_higher(i, j));
                            let target = extra
                                .add(module.solution().row_degree(i))
                                .sub(module.solution().row_degree(j));
                            assert!(module.complex(j).contains(target.support()));
                        }
                    }
                }
            }
        }
    }
}
