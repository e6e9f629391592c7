//! Graded local cohomology dimensions through link-type cochain complexes.
//!
//! For a degree `alpha`, each row `i` contributes the cochain complex of the
//! link-type selection of its Stanley-Reisner complex at `alpha - beta_i`,
//! shifted by the negative-support size difference against row 1. The
//! differential extends faces by vertices; blocked extensions are rewritten
//! through the reduction coefficient of the localized monomial, with
//! tail-move sign corrections that reconcile the face orientation with the
//! localization maps.
//!
//! The independent oracle assembles the degree-`alpha` strand of the stable
//! localization complex directly from the presentation: the stage at a
//! variable subset `F` is the quotient of the rows surviving localization at
//! `F` by the columns surviving it, built through fresh elimination per
//! subset with no reliance on the reduction tables.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exponents::{position_sign, transposition_sign, ExponentVector, IndexSet};
use crate::linalg::{echelonize_ordered, rat, Echelon, Rational, RationalMatrix};
use crate::reduction::{Reduction, SquarefreeModule};
use crate::simplicial::{CochainComplex, CochainStages, ComplexAssembler, SimplicialComplex};
use crate::{Error, Result};

/// The assembled link-type complex for one degree.
pub struct LocalCohomologyComplex {
    pub alpha: ExponentVector,
    /// Per row: negative-support size difference against row 1.
    pub shifts: Vec<i64>,
    pub summands: Vec<SimplicialComplex>,
    pub assembled: CochainComplex,
}

fn summand_complexes(
    module: &SquarefreeModule,
    alpha: &ExponentVector,
) -> (Vec<SimplicialComplex>, Vec<i64>) {
    let s = module.row_count();
    let mut summands = Vec::with_capacity(s);
    let mut neg_sizes = Vec::with_capacity(s);
    for i in 1..=s {
        let ai = alpha.sub(module.solution().row_degree(i));
        neg_sizes.push(ai.negative_part().support().cardinality() as i64);
        summands.push(module.complex(i).link_type_complex(&ai));
    }
    let shifts = neg_sizes.iter().map(|&c| c - neg_sizes[0]).collect();
    (summands, shifts)
}

/// Builds the assembled complex for `alpha`. Rewrite targets are asserted to
/// be faces of their target summand; any violation or a differential that
/// fails to square to zero is an internal-consistency error.
pub fn build_l_complex(
    module: &SquarefreeModule,
    alpha: &ExponentVector,
) -> Result<LocalCohomologyComplex> {
    let n = module.var_count();
    let sol = module.solution();
    let (summands, shifts) = summand_complexes(module, alpha);
    let assembler = ComplexAssembler {
        summands: summands.clone(),
        shifts: shifts.clone(),
    };
    let neg_support: Vec<IndexSet> = (1..=module.row_count())
        .map(|i| alpha.sub(sol.row_degree(i)).negative_part().support())
        .collect();
    let pos_part: Vec<ExponentVector> = (1..=module.row_count())
        .map(|i| alpha.sub(sol.row_degree(i)).positive_part())
        .collect();
    let assembled = assembler.assemble(|i, tau| {
        let cx = &assembler.summands[i - 1];
        let (extending, blocking) = cx.partition_vertices(tau);
        let mut terms: Vec<(usize, IndexSet, Rational)> = extending
            .iter()
            .map(|h| (i, tau.with(h), rat(position_sign(h, tau.with(h)))))
            .collect();
        for h in blocking.iter() {
            let tau_h = tau.with(h);
            let localized = tau_h.union(neg_support[i - 1]);
            let exponent = pos_part[i - 1].add(&localized.indicator(n));
            let Reduction::Rewrite(rewrite) = module.reduce(i, &exponent)? else {
                return Err(Error::Internal(format!(
                    "blocked extension {tau_h} of summand {i} in degree {alpha} yields a standard monomial"
                )));
            };
            let from_sign = transposition_sign(neg_support[i - 1], localized);
            for (j, r) in rewrite {
                if !neg_support[j - 1].is_subset_of(localized) {
                    return Err(Error::Internal(format!(
                        "rewrite of {tau_h} from row {i} to row {j} leaves the localized support {localized}"
                    )));
                }
                let target = localized.difference(neg_support[j - 1]);
                if !assembler.summands[j - 1].contains(target) {
                    return Err(Error::Internal(format!(
                        "rewrite target {target} is not a face of summand {j} in degree {alpha}"
                    )));
                }
                let sign = position_sign(h, tau_h) * from_sign * transposition_sign(neg_support[j - 1], localized);
                terms.push((j, target, rat(sign) * r));
            }
        }
        Ok(terms)
    })?;
    Ok(LocalCohomologyComplex {
        alpha: alpha.clone(),
        shifts,
        summands,
        assembled,
    })
}

/// Nonzero local cohomology dimensions by cohomological index.
pub fn local_cohomology_dims(
    module: &SquarefreeModule,
    alpha: &ExponentVector,
) -> Result<BTreeMap<usize, usize>> {
    let complex = build_l_complex(module, alpha)?;
    let anchor = alpha
        .sub(module.solution().row_degree(1))
        .negative_part()
        .support()
        .cardinality() as i64;
    let mut out = BTreeMap::new();
    for (t, dim) in complex.assembled.cohomology_dims() {
        let index = t + anchor + 1;
        if index < 0 {
            return Err(Error::Internal(format!(
                "cohomology in assembled degree {t} reindexes below zero at {alpha}"
            )));
        }
        out.insert(index as usize, dim);
    }
    Ok(out)
}

/// One localized stage of the oracle: the rows and columns surviving
/// inversion of the subset `F`, with the column span eliminated so quotient
/// coordinates can be read off.
struct LocalizedStage {
    rows: Vec<usize>,
    echelon: Echelon,
    /// Positions (into `rows`) of the quotient basis.
    standard: Vec<usize>,
}

fn localized_stage(
    module: &SquarefreeModule,
    alpha: &ExponentVector,
    f: IndexSet,
) -> LocalizedStage {
    let sol = module.solution();
    let rows: Vec<usize> = (1..=module.row_count())
        .filter(|&i| {
            alpha
                .sub(sol.row_degree(i))
                .negative_part()
                .support()
                .is_subset_of(f)
        })
        .collect();
    let cols: Vec<usize> = (1..=module.col_count())
        .filter(|&j| {
            alpha
                .sub(sol.col_degree(j))
                .negative_part()
                .support()
                .is_subset_of(f)
        })
        .collect();
    let mut span = RationalMatrix::zeros(cols.len(), rows.len());
    for (r, &j) in cols.iter().enumerate() {
        for (c, &i) in rows.iter().enumerate() {
            if let Some(e) = module.matrix().entry(i, j) {
                span.set(r, c, e.coeff.clone());
            }
        }
    }
    let order: Vec<usize> = (0..rows.len()).collect();
    let echelon = echelonize_ordered(&span, &order);
    let standard = (0..rows.len()).filter(|&c| !echelon.is_pivot(c)).collect();
    LocalizedStage {
        rows,
        echelon,
        standard,
    }
}

/// The degree-`alpha` strand of the localization complex, assembled from
/// per-subset quotients; stage `r` collects the subsets of size `r`.
pub struct CechStrand {
    pub alpha: ExponentVector,
    /// Labels per stage: `(subset, row)` for each quotient basis element.
    pub labels: Vec<Vec<(IndexSet, usize)>>,
    pub stages: CochainStages,
}

pub fn cech_strand(module: &SquarefreeModule, alpha: &ExponentVector) -> Result<CechStrand> {
    let n = module.var_count();
    let all_subsets = IndexSet::full(n).subsets();
    let mut stage_data: BTreeMap<IndexSet, LocalizedStage> = BTreeMap::new();
    for &f in &all_subsets {
        stage_data.insert(f, localized_stage(module, alpha, f));
    }
    let mut labels: Vec<Vec<(IndexSet, usize)>> = vec![Vec::new(); n + 1];
    let mut offsets: BTreeMap<(IndexSet, usize), usize> = BTreeMap::new();
    for &f in &all_subsets {
        let stage = &stage_data[&f];
        let r = f.cardinality();
        for &c in &stage.standard {
            offsets.insert((f, stage.rows[c]), labels[r].len());
            labels[r].push((f, stage.rows[c]));
        }
    }
    let mut maps = Vec::with_capacity(n);
    for r in 0..n {
        let mut m = RationalMatrix::zeros(labels[r + 1].len(), labels[r].len());
        for (c, &(f, row)) in labels[r].iter().enumerate() {
            for h in IndexSet::full(n).difference(f).iter() {
                let g = f.with(h);
                let sign = rat(position_sign(h, g));
                let target = &stage_data[&g];
                // Image of the representative under localization: the same
                // row label, reduced to quotient coordinates at `g`.
                let mut unit = vec![Rational::zero(); target.rows.len()];
                let pos = target.rows.iter().position(|&i| i == row).ok_or_else(|| {
                    Error::Internal(format!("row {row} vanished when enlarging {f} to {g}"))
                })?;
                unit[pos] = rat(1);
                let nf = target.echelon.normal_form(&unit);
                for (k, v) in nf.into_iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let row_k = target.rows[k];
                    let dest = *offsets.get(&(g, row_k)).ok_or_else(|| {
                        Error::Internal(format!(
                            "quotient coordinate ({g}, {row_k}) missing from stage {}",
                            r + 1
                        ))
                    })?;
                    let acc = m.get(dest, c) + &sign * &v;
                    m.set(dest, c, acc);
                }
            }
        }
        maps.push(m);
    }
    let dims = labels.iter().map(Vec::len).collect();
    let stages = CochainStages::new(dims, maps)?;
    Ok(CechStrand {
        alpha: alpha.clone(),
        labels,
        stages,
    })
}

/// Nonzero local cohomology dimensions at `alpha` from the oracle strand.
pub fn cech_oracle(
    module: &SquarefreeModule,
    alpha: &ExponentVector,
) -> Result<BTreeMap<usize, usize>> {
    let strand = cech_strand(module, alpha)?;
    Ok(strand
        .stages
        .cohomology_dims()
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d > 0)
        .collect())
}

/// Per-stage dimensions of the oracle strand.
pub fn cech_strand_dims(module: &SquarefreeModule, alpha: &ExponentVector) -> Result<Vec<usize>> {
    Ok(cech_strand(module, alpha)?.stages.dims)
}

/// One sign-pattern class: the disjoint positive/negative supports and the
/// local cohomology dimensions shared by every degree in the class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PatternEntry {
    pub plus: IndexSet,
    pub minus: IndexSet,
    pub dims: BTreeMap<usize, usize>,
}

/// Evaluates the local cohomology dimensions at one representative per
/// disjoint support pair (all `3^n` of them), spot-checking constancy of
/// each class at a doubled representative.
pub fn pattern_sweep(module: &SquarefreeModule) -> Result<Vec<PatternEntry>> {
    let n = module.var_count();
    let mut out = Vec::new();
    for plus in IndexSet::full(n).subsets() {
        for minus in IndexSet::full(n).difference(plus).subsets() {
            let alpha = plus.indicator(n).sub(&minus.indicator(n));
            let dims = local_cohomology_dims(module, &alpha)?;
            let doubled = alpha.scale(2);
            let again = local_cohomology_dims(module, &doubled)?;
            if dims != again {
                return Err(Error::Internal(format!(
                    "pattern (+{plus}, -{minus}) is not constant: {dims:?} at {alpha} vs {again:?} at {doubled}"
                )));
            }
            out.push(PatternEntry { plus, minus, dims });
        }
    }
    Ok(out)
}

/// Depth and dimension candidates read off the pattern sweep: the least and
/// greatest cohomological index with a nonzero dimension anywhere. `None`
/// when every class vanishes (the zero module).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DepthDimReport {
    pub min_nonvanishing: Option<usize>,
    pub max_nonvanishing: Option<usize>,
    pub krull_dimension: Option<usize>,
    /// `n - projective dimension`, the homological depth candidate.
    pub depth_from_betti: Option<i64>,
}

pub fn depth_and_dim_report(module: &SquarefreeModule) -> Result<DepthDimReport> {
    let sweep = pattern_sweep(module)?;
    let indices: Vec<usize> = sweep.iter().flat_map(|e| e.dims.keys().copied()).collect();
    let pd = crate::betti::projective_dimension(module)?;
    Ok(DepthDimReport {
        min_nonvanishing: indices.iter().min().copied(),
        max_nonvanishing: indices.iter().max().copied(),
        krull_dimension: module.krull_dimension(),
        depth_from_betti: pd.map(|p| module.var_count() as i64 - p as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::MultigradedMatrix;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    fn iset(members: &[usize]) -> IndexSet {
        IndexSet::from_members(members.iter().copied())
    }

    fn worked_module() -> SquarefreeModule {
        let mut m = MultigradedMatrix::new(4, 2, 2);
        m.set_entry(1, 1, rat(1), ev(&[1, 1, 0, 0])).unwrap();
        m.set_entry(2, 1, rat(1), ev(&[0, 1, 0, 1])).unwrap();
        m.set_entry(1, 2, rat(1), ev(&[1, 0, 1, 0])).unwrap();
        m.set_entry(2, 2, rat(2), ev(&[0, 0, 1, 1])).unwrap();
        SquarefreeModule::from_matrix(m).unwrap()
    }

    #[test]
    fn l_complex_concentrated_in_one_spot() {
        let module = worked_module();
        let complex = build_l_complex(&module, &ev(&[0, -1, -1, 0])).unwrap();
        assert_eq!(complex.assembled.dims(), BTreeMap::from([(-1, 2)]));
        assert_eq!(
            complex.assembled.cohomology_dims(),
            BTreeMap::from([(-1, 2)])
        );
    }

    #[test]
    fn l_complex_at_zero_degree() {
        let module = worked_module();
        let complex = build_l_complex(&module, &ev(&[0, 0, 0, 0])).unwrap();
        assert_eq!(
            complex.assembled.dims(),
            BTreeMap::from([(-1, 2), (0, 6), (1, 4)])
        );
        assert!(complex.assembled.cohomology_dims().is_empty());
    }

    #[test]
    fn l_complex_zero_degree_differential_on_a_vertex() {
        // The vertex {2} of the second summand extends to {2,3} inside its
        // own summand and rewrites through {2,4} into the face {1,2} of the
        // first summand with coefficient +1.
        let module = worked_module();
        let complex = build_l_complex(&module, &ev(&[0, 0, 0, 0])).unwrap();
        let source = complex.assembled.basis_at(0);
        let target = complex.assembled.basis_at(1);
        let d = complex.assembled.differential(0).unwrap();
        let c = source
            .iter()
            .position(|b| b.summand == 2 && b.face == iset(&[2]))
            .unwrap();
        for (r, t) in target.iter().enumerate() {
            let v = d.get(r, c);
            if t.summand == 1 && t.face == iset(&[1, 2]) {
                assert_eq!(*v, rat(1));
            } else if t.summand == 2 && t.face == iset(&[2, 3]) {
                assert_eq!(*v, rat(-1));
            } else {
                assert!(
                    v.is_zero(),
                    "unexpected term at summand {} face {}",
                    t.summand,
                    t.face
                );
            }
        }
    }

    #[test]
    fn local_cohomology_dims_examples() {
        let module = worked_module();
        assert_eq!(
            local_cohomology_dims(&module, &ev(&[0, -1, -1, 0])).unwrap(),
            BTreeMap::from([(3, 2)])
        );
        assert!(local_cohomology_dims(&module, &ev(&[0, 0, 0, 0]))
            .unwrap()
            .is_empty());
        assert!(local_cohomology_dims(&module, &ev(&[1, 1, 1, 1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cech_oracle_matches_on_worked_degrees() {
        let module = worked_module();
        for alpha in [
            ev(&[0, -1, -1, 0]),
            ev(&[0, 0, 0, 0]),
            ev(&[1, 1, 1, 1]),
            ev(&[-1, -1, -1, -1]),
            ev(&[2, 2, 2, 2]),
        ] {
            assert_eq!(
                cech_oracle(&module, &alpha).unwrap(),
                local_cohomology_dims(&module, &alpha).unwrap(),
                "degree {alpha}"
            );
        }
    }

    #[test]
    fn strictly_positive_degrees_stabilize() {
        let module = worked_module();
        assert_eq!(
            cech_oracle(&module, &ev(&[2, 2, 2, 2])).unwrap(),
            cech_oracle(&module, &ev(&[1, 1, 1, 1])).unwrap()
        );
    }

    #[test]
    fn componentwise_dims_match_cech_strand() {
        let module = worked_module();
        for alpha in [ev(&[0, -1, -1, 0]), ev(&[0, 0, 0, 0]), ev(&[-1, 0, 0, -1])] {
            let complex = build_l_complex(&module, &alpha).unwrap();
            let strand = cech_strand_dims(&module, &alpha).unwrap();
            let anchor = alpha
                .sub(module.solution().row_degree(1))
                .negative_part()
                .support()
                .cardinality() as i64;
            for (r, &dim) in strand.iter().enumerate() {
                let t = r as i64 - anchor - 1;
                assert_eq!(complex.assembled.dim_at(t), dim, "stage {r} at {alpha}");
            }
        }
    }

    #[test]
    fn pattern_sweep_of_worked_matrix() {
        let module = worked_module();
        let sweep = pattern_sweep(&module).unwrap();
        assert_eq!(sweep.len(), 81);
        let lookup = |plus: IndexSet, minus: IndexSet| {
            sweep
                .iter()
                .find(|e| e.plus == plus && e.minus == minus)
                .map(|e| e.dims.clone())
                .unwrap()
        };
        assert_eq!(
            lookup(IndexSet::EMPTY, iset(&[2, 3])),
            BTreeMap::from([(3, 2)])
        );
        assert!(lookup(IndexSet::EMPTY, IndexSet::EMPTY).is_empty());
    }

    #[test]
    fn depth_and_dim_of_worked_matrix() {
        let module = worked_module();
        let report = depth_and_dim_report(&module).unwrap();
        assert_eq!(report.min_nonvanishing, Some(3));
        assert_eq!(report.max_nonvanishing, Some(3));
        assert_eq!(report.krull_dimension, Some(3));
        assert_eq!(report.depth_from_betti, Some(3));
    }

    #[test]
    fn depth_and_dim_of_the_residue_field() {
        let mut m = MultigradedMatrix::new(2, 1, 2);
        m.set_entry(1, 1, rat(1), ev(&[1, 0])).unwrap();
        m.set_entry(1, 2, rat(1), ev(&[0, 1])).unwrap();
        let module = SquarefreeModule::from_matrix(m).unwrap();
        let report = depth_and_dim_report(&module).unwrap();
        assert_eq!(report.min_nonvanishing, Some(0));
        assert_eq!(report.max_nonvanishing, Some(0));
        assert_eq!(report.krull_dimension, Some(0));
        assert_eq!(report.depth_from_betti, Some(0));
    }

    #[test]
    fn depth_and_dim_of_the_free_module() {
        // One generator, no relations.
        let m = MultigradedMatrix::new(3, 1, 1);
        // A single empty column: the module is free of rank 1.
        let solution = m.find_squarefree_solution().unwrap().unwrap();
        let data = crate::reduction::SquarefreeModuleData::new(
            m,
            solution,
            crate::reduction::RowOrder::default_for(1),
        )
        .unwrap();
        let module = SquarefreeModule::build(data).unwrap();
        let report = depth_and_dim_report(&module).unwrap();
        assert_eq!(report.min_nonvanishing, Some(3));
        assert_eq!(report.max_nonvanishing, Some(3));
        assert_eq!(report.krull_dimension, Some(3));
        assert_eq!(report.depth_from_betti, Some(3));
    }
}
